//! Extraspecial braces and bilinear forms.
//!
//! A bilinear form `φ` on `V = F_p^d` gives the brace on `V ⊕ C_p` with
//! `(x, k)(y, t) = (x + y, k + t + φ(x, y))`. Elements are encoded as
//! tuples `(x_1, ..., x_d, k)`, first coordinate most significant.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{is_prime, is_strong_nondegenerate, poly_roots, BilinearForm, FpPoly};
use crate::brace::{ElementTupleCodec, FiniteBrace, DEFAULT_MAX_ORDER};
use crate::error::{Error, Result};
use crate::iso::{isomorphism_search, BraceHom, SearchOutcome, DEFAULT_SEARCH_BUDGET};
use crate::mask::SubsetMask;
use crate::substructures::{closure, extend_closure, socle_fix_centre, ClosureKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    E0,
    E1,
    E2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::E0 => "E0",
            Family::E1 => "E1",
            Family::E2 => "E2",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "E0" => Ok(Family::E0),
            "E1" => Ok(Family::E1),
            "E2" => Ok(Family::E2),
            _ => Err(Error::InvalidSpec(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub m: u32,
    pub p: u32,
}

impl FamilySpec {
    /// Checks `0 < m < p` for `E0`, `0 ≤ m < p` otherwise, and that the
    /// brace fits under the default order cap.
    pub fn new(family: Family, m: u32, p: u32) -> Result<FamilySpec> {
        if !is_prime(p) {
            return Err(Error::InvalidSpec(format!("{p} is not prime")));
        }
        if m >= p || (family == Family::E0 && m == 0) {
            return Err(Error::InvalidSpec(format!(
                "m = {m} is out of range for {family} over F_{p}"
            )));
        }
        let spec = FamilySpec { family, m, p };
        let order = (p as usize).checked_pow(spec.dim() as u32 + 1);
        match order {
            Some(n) if n <= DEFAULT_MAX_ORDER => Ok(spec),
            _ => Err(Error::CapExceeded {
                what: "family brace order",
                limit: DEFAULT_MAX_ORDER,
                actual: order.unwrap_or(usize::MAX),
            }),
        }
    }

    /// Every legal spec over `F_p`, in scan order.
    pub fn all(p: u32) -> Vec<FamilySpec> {
        let mut out = Vec::new();
        for family in [Family::E0, Family::E1, Family::E2] {
            for m in 0..p {
                if let Ok(s) = FamilySpec::new(family, m, p) {
                    out.push(s);
                }
            }
        }
        out
    }

    /// Dimension of `V`.
    pub fn dim(&self) -> usize {
        match self.family {
            Family::E0 => 1,
            Family::E1 | Family::E2 => 2,
        }
    }

    pub fn order(&self) -> usize {
        (self.p as usize).pow(self.dim() as u32 + 1)
    }

    /// The form whose brace is this family member.
    pub fn form(&self) -> BilinearForm {
        let m = self.m as i64;
        let matrix = match self.family {
            Family::E0 => vec![vec![m]],
            Family::E1 => vec![vec![m, 0], vec![0, 1]],
            Family::E2 => vec![vec![m, 1], vec![0, 1]],
        };
        BilinearForm::new(self.p, matrix).expect("family forms are well formed")
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.family, self.m, self.p)
    }
}

/// The family brace, built directly from its star formula:
///
/// * `E0`: `(k1,k2) ∗ (t1,t2) = (0, m k1 t1)`
/// * `E1`: `(k1,k2,k) ∗ (t1,t2,t) = (0, 0, m k1 t1 + k2 t2)`
/// * `E2`: `(k1,k2,k) ∗ (t1,t2,t) = (0, 0, m k1 t1 + k1 t2 + k2 t2)`
pub fn family(spec: &FamilySpec) -> FiniteBrace {
    let p = spec.p as usize;
    let m = spec.m as usize;
    let dim = spec.dim();
    let codec = ElementTupleCodec::new(vec![p; dim + 1]);
    let n = codec.size();
    let star_last = |x: &[usize], y: &[usize]| -> usize {
        match spec.family {
            Family::E0 => m * x[0] * y[0],
            Family::E1 => m * x[0] * y[0] + x[1] * y[1],
            Family::E2 => m * x[0] * y[0] + x[0] * y[1] + x[1] * y[1],
        }
    };
    let tuples: Vec<Vec<usize>> = (0..n).map(|id| codec.decode(id)).collect();
    let mut add = vec![0u32; n * n];
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            let sum: Vec<usize> = tuples[a].iter().zip(&tuples[b]).map(|(x, y)| (x + y) % p).collect();
            let mut prod = sum.clone();
            prod[dim] = (prod[dim] + star_last(&tuples[a], &tuples[b])) % p;
            add[a * n + b] = codec.encode(&sum) as u32;
            mul[a * n + b] = codec.encode(&prod) as u32;
        }
    }
    FiniteBrace::from_tables(n, add, mul, codec)
}

/// The brace on `V ⊕ C_p` defined by `φ`.
pub fn brace_from_form(phi: &BilinearForm) -> Result<FiniteBrace> {
    let p = phi.modulus() as usize;
    let d = phi.dim();
    if d == 0 {
        return Err(Error::InvalidSpec("the form must have dimension at least 1".into()));
    }
    let n = p
        .checked_pow(d as u32 + 1)
        .filter(|&n| n <= DEFAULT_MAX_ORDER)
        .ok_or(Error::CapExceeded {
            what: "form brace order",
            limit: DEFAULT_MAX_ORDER,
            actual: p.saturating_pow(d as u32 + 1),
        })?;
    let vdim = p.pow(d as u32);
    let vcodec = ElementTupleCodec::new(vec![p; d]);
    let vecs: Vec<Vec<usize>> = (0..vdim).map(|v| vcodec.decode(v)).collect();
    // φ on every pair of vectors, and vector addition, as tables.
    let mut phi_table = vec![0usize; vdim * vdim];
    let mut vadd = vec![0usize; vdim * vdim];
    for (i, x) in vecs.iter().enumerate() {
        for (j, y) in vecs.iter().enumerate() {
            let mut s = 0;
            for (r, &xr) in x.iter().enumerate() {
                for (c, &yc) in y.iter().enumerate() {
                    s += xr * phi.entry(r, c) as usize * yc;
                }
            }
            phi_table[i * vdim + j] = s % p;
            let sum: Vec<usize> = x.iter().zip(y).map(|(a, b)| (a + b) % p).collect();
            vadd[i * vdim + j] = vcodec.encode(&sum);
        }
    }
    let mut add = vec![0u32; n * n];
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        let (x, k) = (a / p, a % p);
        for b in 0..n {
            let (y, t) = (b / p, b % p);
            let v = vadd[x * vdim + y];
            add[a * n + b] = (v * p + (k + t) % p) as u32;
            mul[a * n + b] = (v * p + (k + t + phi_table[x * vdim + y]) % p) as u32;
        }
    }
    Ok(FiniteBrace::from_tables(n, add, mul, ElementTupleCodec::new(vec![p; d + 1])))
}

/// Evidence that a brace is extraspecial with respect to a central `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtraspecialCertificate {
    pub c: usize,
    /// `⟨c⟩₊`
    pub c_span: SubsetMask,
    pub strong: bool,
    pub p: usize,
}

/// Least `c ∈ ζ(A)` with `A/⟨c⟩₊` abelian and nonzero, if `A` is a
/// non-abelian brace with elementary abelian additive group.
pub fn recognize_extraspecial(a: &FiniteBrace) -> Result<Option<ExtraspecialCertificate>> {
    if a.is_abelian() {
        return Ok(None);
    }
    let Some(p) = a.elementary_abelian_prime() else {
        return Ok(None);
    };
    if a.order() <= p {
        return Ok(None);
    }
    let centre = socle_fix_centre(a)?.centre;
    let n = a.order();
    let stars: Vec<usize> = {
        let mut v: Vec<usize> = (0..n * n).map(|i| a.star(i / n, i % n)).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    for c in centre.iter().filter(|&c| c != 0) {
        let span = closure(a, &SubsetMask::singleton(n, c), ClosureKind::Additive);
        if stars.iter().all(|&s| span.contains(s)) {
            let strong = (0..n).all(|x| span.contains(x) || a.star(x, x) != 0);
            return Ok(Some(ExtraspecialCertificate {
                c,
                c_span: span,
                strong,
                p,
            }));
        }
    }
    Ok(None)
}

fn recheck(a: &FiniteBrace, cert: &ExtraspecialCertificate) -> Result<()> {
    let n = a.order();
    let fresh = recognize_extraspecial(a)?;
    let valid = cert.c_span.universe() == n
        && cert.c_span == closure(a, &SubsetMask::singleton(n, cert.c), ClosureKind::Additive)
        && socle_fix_centre(a)?.centre.contains(cert.c)
        && (0..n).all(|x| (0..n).all(|y| cert.c_span.contains(a.star(x, y))))
        && fresh.is_some();
    if !valid {
        return Err(Error::Precondition("stale extraspecial certificate".into()));
    }
    Ok(())
}

/// Basis of `A/C` as elements of `A`: least ids outside the span so far,
/// taken in reverse order of discovery.
fn quotient_basis(a: &FiniteBrace, c_span: &SubsetMask) -> Vec<usize> {
    let n = a.order();
    let mut span = c_span.clone();
    let mut chosen = Vec::new();
    while !span.is_full() {
        let x = (0..n).find(|&x| !span.contains(x)).expect("span is not full");
        chosen.push(x);
        span = extend_closure(a, &span, [x], ClosureKind::Additive);
    }
    chosen.reverse();
    chosen
}

/// The form `φ(xC, yC) = k` where `x ∗ y = k·c`, in the basis of
/// [`quotient_basis`]. Verifies that `φ` is well defined on cosets and
/// bilinear.
pub fn extract_form(a: &FiniteBrace, cert: &ExtraspecialCertificate) -> Result<BilinearForm> {
    recheck(a, cert)?;
    let p = cert.p;
    let n = a.order();
    let basis = quotient_basis(a, &cert.c_span);
    let d = basis.len();
    // coords[x] = (x_1..x_d, k) with x = Σ x_i b_i + k c.
    let mut coords: Vec<Option<Vec<usize>>> = vec![None; n];
    let codec = ElementTupleCodec::new(vec![p; d + 1]);
    for id in 0..n {
        let t = codec.decode(id);
        let mut x = a.add_multiple(cert.c, t[d]);
        for (i, &b) in basis.iter().enumerate() {
            x = a.add(x, a.add_multiple(b, t[i]));
        }
        if coords[x].replace(t).is_some() {
            return Err(Error::Engine("quotient basis is not independent".into()));
        }
    }
    let coords: Vec<Vec<usize>> = coords.into_iter().map(|c| c.expect("complete")).collect();
    let k_of = |z: usize| -> Result<usize> {
        let t = &coords[z];
        if t[..d].iter().any(|&v| v != 0) {
            return Err(Error::Engine(format!("star value {z} is outside ⟨c⟩₊")));
        }
        Ok(t[d])
    };
    let mut matrix = vec![vec![0i64; d]; d];
    for i in 0..d {
        for j in 0..d {
            matrix[i][j] = k_of(a.star(basis[i], basis[j]))? as i64;
        }
    }
    let form = BilinearForm::new(p as u32, matrix)?;
    for x in 0..n {
        for y in 0..n {
            let k = k_of(a.star(x, y))?;
            let mut expect = 0;
            for i in 0..d {
                for j in 0..d {
                    expect += coords[x][i] * form.entry(i, j) as usize * coords[y][j];
                }
            }
            if k != expect % p {
                return Err(Error::Engine(format!(
                    "extracted form is not bilinear at ({x}, {y})"
                )));
            }
        }
    }
    Ok(form)
}

/// A family member isomorphic to a given brace, with the isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub spec: FamilySpec,
    pub witness: BraceHom,
}

/// Finds the first family member (`E0` by `m`, then `E1`, then `E2`)
/// isomorphic to the strong extraspecial brace `e`.
pub fn classify_strong(e: &FiniteBrace) -> Result<Classification> {
    let cert = recognize_extraspecial(e)?
        .ok_or_else(|| Error::Precondition("brace is not extraspecial".into()))?;
    if !cert.strong {
        return Err(Error::Precondition("extraspecial brace is not strong".into()));
    }
    let p = cert.p;
    let families: &[Family] = if e.order() == p * p {
        &[Family::E0]
    } else if e.order() == p * p * p {
        &[Family::E1, Family::E2]
    } else {
        return Err(Error::Engine(format!(
            "strong extraspecial brace of order {} over F_{p} exceeds p³",
            e.order()
        )));
    };
    for &f in families {
        for m in 0..p as u32 {
            let Ok(spec) = FamilySpec::new(f, m, p as u32) else {
                continue;
            };
            let target = family(&spec);
            match isomorphism_search(e, &target, DEFAULT_SEARCH_BUDGET) {
                SearchOutcome::Found(h) => {
                    let witness = BraceHom::new(e, &target, h.map().to_vec())?;
                    if !witness.is_bijective() {
                        return Err(Error::Engine("classification witness is not bijective".into()));
                    }
                    return Ok(Classification { spec, witness });
                }
                SearchOutcome::NotIsomorphic => {}
                SearchOutcome::BudgetExceeded { nodes } => {
                    return Err(Error::CapExceeded {
                        what: "isomorphism search nodes",
                        limit: DEFAULT_SEARCH_BUDGET as usize,
                        actual: nodes as usize,
                    })
                }
            }
        }
    }
    Err(Error::Engine(format!(
        "no family member matches a strong extraspecial brace of order {}: add {:?} mul {:?}",
        e.order(),
        e.add_table(),
        e.mul_table()
    )))
}

/// `E0` always; `E1` iff `mX² + 1` has no root in `F_p`; `E2` iff
/// `mX² + X + 1` has no root.
///
/// No `m ≠ 0` condition: `E1(0, p)` is `E0(1, p) ⊕ C_p`, which is Dedekind,
/// while for `E2(0, p)` the polynomial `X + 1` has a root anyway.
pub fn dedekind_criterion(spec: &FamilySpec) -> bool {
    let m = spec.m as i64;
    let poly = match spec.family {
        Family::E0 => return true,
        Family::E1 => [1, 0, m],
        Family::E2 => [1, 1, m],
    };
    let f = FpPoly::new(spec.p, &poly).expect("p is prime");
    poly_roots(&f).expect("nonzero polynomial").is_empty()
}

/// Whether the family member is strong, decided on its form.
pub fn family_is_strong(spec: &FamilySpec) -> bool {
    is_strong_nondegenerate(&spec.form()).expect("small forms are searchable")
}
