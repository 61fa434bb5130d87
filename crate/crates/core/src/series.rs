//! The left, right, socle, upper central and fix series, nilpotency, the
//! Dedekind property and the decomposition of Dedekind braces.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::brace::FiniteBrace;
use crate::error::{Error, Result};
use crate::extraspecial::recognize_extraspecial;
use crate::mask::SubsetMask;
use crate::substructures::{
    closure, extend_closure, generated, ideal_violation, left_ideal_violation, socle_fix_centre,
    subset_star, ClosureKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    Left,
    Right,
    Socle,
    Central,
    Fix,
}

impl SeriesKind {
    pub const ALL: [SeriesKind; 5] = [
        SeriesKind::Left,
        SeriesKind::Right,
        SeriesKind::Socle,
        SeriesKind::Central,
        SeriesKind::Fix,
    ];

    pub fn is_ascending(self) -> bool {
        matches!(self, SeriesKind::Socle | SeriesKind::Central | SeriesKind::Fix)
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesKind::Left => "left",
            SeriesKind::Right => "right",
            SeriesKind::Socle => "socle",
            SeriesKind::Central => "central",
            SeriesKind::Fix => "fix",
        })
    }
}

/// Terms of one series up to and including the first stable term.
///
/// Descending series start at `A`, ascending ones at `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesChain {
    pub kind: SeriesKind,
    pub terms: Vec<SubsetMask>,
    /// The last term is `0` (descending) or `A` (ascending).
    pub reached_terminal: bool,
}

impl SeriesChain {
    /// Number of proper steps: `terms.len() - 1`.
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    /// `Some(length)` when the terminal term is reached.
    pub fn level(&self) -> Option<usize> {
        self.reached_terminal.then(|| self.length())
    }

    pub fn last(&self) -> &SubsetMask {
        self.terms.last().expect("a series has at least one term")
    }
}

pub fn compute_series(a: &FiniteBrace, kind: SeriesKind) -> Result<SeriesChain> {
    let n = a.order();
    let full = SubsetMask::full(n);
    let first = if kind.is_ascending() {
        SubsetMask::singleton(n, 0)
    } else {
        full.clone()
    };
    let mut terms = vec![first];
    loop {
        let cur = terms.last().expect("nonempty");
        let next = match kind {
            SeriesKind::Left => subset_star(a, &full, cur),
            SeriesKind::Right => subset_star(a, cur, &full),
            SeriesKind::Socle => pull_back(a, cur, |q| Ok(socle_fix_centre(q)?.soc))?,
            SeriesKind::Central => pull_back(a, cur, |q| Ok(socle_fix_centre(q)?.centre))?,
            SeriesKind::Fix => fix_step(a, cur),
        };
        certify_term(a, kind, &next)?;
        if &next == cur {
            break;
        }
        terms.push(next);
    }
    let last = terms.last().expect("nonempty");
    let reached_terminal = if kind.is_ascending() {
        last.is_full()
    } else {
        last.is_trivial()
    };
    Ok(SeriesChain {
        kind,
        terms,
        reached_terminal,
    })
}

/// Preimage in `a` of `f(a / ideal)`.
fn pull_back(
    a: &FiniteBrace,
    ideal: &SubsetMask,
    f: impl Fn(&FiniteBrace) -> Result<SubsetMask>,
) -> Result<SubsetMask> {
    let (q, proj) = a.quotient_unchecked(ideal);
    let image = f(&q)?;
    Ok(SubsetMask::from_elements(
        a.order(),
        (0..a.order()).filter(|&x| image.contains(proj[x])),
    ))
}

/// `{a : x ∗ a ∈ prev for all x}`
fn fix_step(a: &FiniteBrace, prev: &SubsetMask) -> SubsetMask {
    let n = a.order();
    SubsetMask::from_elements(n, (0..n).filter(|&y| (0..n).all(|x| prev.contains(a.star(x, y)))))
}

fn certify_term(a: &FiniteBrace, kind: SeriesKind, term: &SubsetMask) -> Result<()> {
    match kind {
        SeriesKind::Socle | SeriesKind::Central => {
            if let Some(v) = ideal_violation(a, term)? {
                return Err(Error::Engine(format!("{kind} series term is not an ideal: {v}")));
            }
        }
        SeriesKind::Fix => {
            if let Some(v) = left_ideal_violation(a, term) {
                return Err(Error::Engine(format!("fix series term is not a left ideal: {v}")));
            }
        }
        SeriesKind::Left | SeriesKind::Right => {
            if &closure(a, term, ClosureKind::Additive) != term {
                return Err(Error::Engine(format!("{kind} series term is not a subgroup")));
            }
        }
    }
    Ok(())
}

/// Nilpotency levels; `None` means not nilpotent of that kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilpotencyReport {
    pub left: Option<usize>,
    pub right: Option<usize>,
    pub central: Option<usize>,
    pub multipermutation_level: Option<usize>,
}

impl NilpotencyReport {
    pub fn is_left_nilpotent(&self) -> bool {
        self.left.is_some()
    }

    pub fn is_right_nilpotent(&self) -> bool {
        self.right.is_some()
    }

    pub fn is_centrally_nilpotent(&self) -> bool {
        self.central.is_some()
    }
}

/// All five series of a brace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AllSeries {
    pub left: SeriesChain,
    pub right: SeriesChain,
    pub socle: SeriesChain,
    pub central: SeriesChain,
    pub fix: SeriesChain,
}

impl AllSeries {
    pub fn compute(a: &FiniteBrace) -> Result<AllSeries> {
        Ok(AllSeries {
            left: compute_series(a, SeriesKind::Left)?,
            right: compute_series(a, SeriesKind::Right)?,
            socle: compute_series(a, SeriesKind::Socle)?,
            central: compute_series(a, SeriesKind::Central)?,
            fix: compute_series(a, SeriesKind::Fix)?,
        })
    }

    pub fn get(&self, kind: SeriesKind) -> &SeriesChain {
        match kind {
            SeriesKind::Left => &self.left,
            SeriesKind::Right => &self.right,
            SeriesKind::Socle => &self.socle,
            SeriesKind::Central => &self.central,
            SeriesKind::Fix => &self.fix,
        }
    }

    /// Levels read off the series; disagreeing criteria are an engine error.
    pub fn report(&self) -> Result<NilpotencyReport> {
        let left = self.left.level();
        if left != self.fix.level() {
            return Err(Error::Engine(format!(
                "left series gives {left:?} but fix series gives {:?}",
                self.fix.level()
            )));
        }
        let right = self.right.level();
        if right != self.socle.level() {
            return Err(Error::Engine(format!(
                "right series gives {right:?} but socle series gives {:?}",
                self.socle.level()
            )));
        }
        let central = self.central.level();
        if central.is_some() != (left.is_some() && right.is_some()) {
            return Err(Error::Engine(format!(
                "central series gives {central:?} but left/right give {left:?}/{right:?}"
            )));
        }
        Ok(NilpotencyReport {
            left,
            right,
            central,
            multipermutation_level: self.socle.level(),
        })
    }
}

pub fn nilpotency_report(a: &FiniteBrace) -> Result<NilpotencyReport> {
    AllSeries::compute(a)?.report()
}

/// Outcome of the Dedekind test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DedekindVerdict {
    pub dedekind: bool,
    /// Least non-ideal subbrace (by size, then elements).
    pub witness: Option<SubsetMask>,
}

/// Whether every subbrace is an ideal.
///
/// A subbrace generated by ideals is an ideal, so it is enough to test the
/// one-generated subbraces `⟨x⟩`; the least non-ideal subbrace is always
/// one of them.
pub fn is_dedekind(a: &FiniteBrace, cap: usize) -> Result<DedekindVerdict> {
    let n = a.order();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "Dedekind test order",
            limit: cap,
            actual: n,
        });
    }
    let mut seen: HashSet<SubsetMask> = HashSet::new();
    let mut witness: Option<SubsetMask> = None;
    for x in 0..n {
        let s = generated(a, x);
        if !seen.insert(s.clone()) {
            continue;
        }
        if witness.as_ref().is_some_and(|w| *w <= s) {
            continue;
        }
        if ideal_violation(a, &s)?.is_some() {
            witness = Some(s);
        }
    }
    Ok(DedekindVerdict {
        dedekind: witness.is_none(),
        witness,
    })
}

/// `A = E ⊕ Z` for a Dedekind brace with elementary abelian additive group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DedekindDecomposition {
    pub e: SubsetMask,
    pub z: SubsetMask,
    /// `A ∗ A`
    pub b: SubsetMask,
    pub p: usize,
    /// `E` is strong extraspecial (otherwise it is `0`).
    pub e_strong_extraspecial: bool,
    pub certified: bool,
}

pub fn dedekind_structure_decompose(a: &FiniteBrace, cap: usize) -> Result<DedekindDecomposition> {
    let n = a.order();
    let p = if n == 1 {
        1
    } else {
        a.elementary_abelian_prime().ok_or_else(|| {
            Error::Precondition("additive group is not elementary abelian".into())
        })?
    };
    if !is_dedekind(a, cap)?.dedekind {
        return Err(Error::Precondition("brace is not Dedekind".into()));
    }
    let socle_series = compute_series(a, SeriesKind::Socle)?;
    if !socle_series.reached_terminal {
        return Err(Error::Precondition("socle series does not reach A".into()));
    }

    let full = SubsetMask::full(n);
    let sfc = socle_fix_centre(a)?;
    let soc = sfc.soc;
    let b = subset_star(a, &full, &full);

    let mut span = b.clone();
    let mut z = SubsetMask::singleton(n, 0);
    for x in soc.iter() {
        if !span.contains(x) {
            span = extend_closure(a, &span, [x], ClosureKind::Additive);
            z = extend_closure(a, &z, [x], ClosureKind::Additive);
        }
    }
    let mut span = soc.clone();
    let mut e = b.clone();
    for x in 0..n {
        if !span.contains(x) {
            span = extend_closure(a, &span, [x], ClosureKind::Additive);
            e = extend_closure(a, &e, [x], ClosureKind::Additive);
        }
    }

    let fail = |what: &str| Err(Error::Engine(format!("decomposition certificate failed: {what}")));
    if !e.intersection(&z).is_trivial() || e.len() * z.len() != n {
        return fail("A is not E ⊕ Z");
    }
    if ideal_violation(a, &e)?.is_some() || ideal_violation(a, &z)?.is_some() {
        return fail("E or Z is not an ideal");
    }
    if !b.is_subset(&e) || !(b.len() == 1 || b.len() == p) {
        return fail("A ∗ A is not inside E or has the wrong order");
    }
    if !z.is_subset(&sfc.centre) {
        return fail("Z is not central");
    }
    let (e_brace, _) = a.induced(&e)?;
    let e_strong_extraspecial = if e.is_trivial() {
        false
    } else {
        match recognize_extraspecial(&e_brace)? {
            Some(cert) if cert.strong => true,
            _ => return fail("E is neither trivial nor strong extraspecial"),
        }
    };
    if !e.is_trivial() {
        let ee = subset_star(a, &e, &e);
        let zee = closure(a, &z.union(&ee), ClosureKind::Additive);
        if !z.intersection(&ee).is_trivial()
            || zee != sfc.centre
            || sfc.centre != soc
        {
            return fail("Z ⊕ (E ∗ E) differs from ζ(A) or Soc(A)");
        }
    }
    Ok(DedekindDecomposition {
        e,
        z,
        b,
        p,
        e_strong_extraspecial,
        certified: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extraspecial::{family, Family, FamilySpec};
    use crate::iso::are_isomorphic;
    use crate::substructures::{all_subbraces, SUBBRACE_CAP};

    fn fam(f: Family, m: u32, p: u32) -> FiniteBrace {
        family(&FamilySpec::new(f, m, p).unwrap())
    }

    #[test]
    fn e0_1_3_series() {
        let b = fam(Family::E0, 1, 3);
        let c: SubsetMask = SubsetMask::from_elements(9, [0, 1, 2]);
        let soc = compute_series(&b, SeriesKind::Socle).unwrap();
        assert_eq!(soc.terms, vec![SubsetMask::singleton(9, 0), c.clone(), SubsetMask::full(9)]);
        assert_eq!(soc.length(), 2);
        let left = compute_series(&b, SeriesKind::Left).unwrap();
        assert_eq!(left.terms, vec![SubsetMask::full(9), c, SubsetMask::singleton(9, 0)]);
        let r = nilpotency_report(&b).unwrap();
        assert_eq!(r.central, Some(2));
        assert_eq!(r.multipermutation_level, Some(2));
    }

    #[test]
    fn abelian_and_trivial_levels() {
        let a = FiniteBrace::abelian(&[2, 3]).unwrap();
        let fix = compute_series(&a, SeriesKind::Fix).unwrap();
        assert_eq!(fix.length(), 1);
        let r = nilpotency_report(&a).unwrap();
        assert_eq!((r.left, r.right, r.central), (Some(1), Some(1), Some(1)));
        let t = nilpotency_report(&FiniteBrace::trivial()).unwrap();
        assert_eq!(t.multipermutation_level, Some(0));
    }

    #[test]
    fn dedekind_examples() {
        assert!(is_dedekind(&FiniteBrace::abelian(&[4, 2]).unwrap(), 4096).unwrap().dedekind);
        assert!(is_dedekind(&fam(Family::E0, 1, 3), 4096).unwrap().dedekind);
        let e = fam(Family::E1, 1, 5);
        let v = is_dedekind(&e, 4096).unwrap();
        assert!(!v.dedekind);
        let w = v.witness.unwrap();
        assert_eq!(w.len(), 5);
        assert!(ideal_violation(&e, &w).unwrap().is_some());
        assert!(is_dedekind(&e, 100).unwrap_err().is_cap());
        // ⟨(2,1,0)⟩ is among the non-ideal subbraces of order 5.
        let s = generated(&e, e.codec().encode(&[2, 1, 0]));
        assert!(ideal_violation(&e, &s).unwrap().is_some());
    }

    #[test]
    fn one_generated_route_matches_lattice() {
        for s in FamilySpec::all(2).into_iter().chain(FamilySpec::all(3)) {
            let b = family(&s);
            let fast = is_dedekind(&b, 4096).unwrap();
            let subs = all_subbraces(&b, SUBBRACE_CAP).unwrap();
            let slow = subs.iter().find(|s| !s.ideal).map(|s| s.mask.clone());
            assert_eq!(fast.witness, slow, "{s}");
        }
    }

    #[test]
    fn decompositions() {
        let a = FiniteBrace::abelian(&[3, 3]).unwrap();
        let d = dedekind_structure_decompose(&a, 4096).unwrap();
        assert!(d.e.is_trivial() && d.z.is_full());

        let e = fam(Family::E1, 2, 5);
        let d = dedekind_structure_decompose(&e, 4096).unwrap();
        assert!(d.e.is_full() && d.z.is_trivial() && d.e_strong_extraspecial);

        let e0 = fam(Family::E0, 1, 3);
        let prod = e0.direct_product(&FiniteBrace::abelian(&[3]).unwrap(), 4096).unwrap();
        let d = dedekind_structure_decompose(&prod, 4096).unwrap();
        let (eb, _) = prod.induced(&d.e).unwrap();
        let (zb, _) = prod.induced(&d.z).unwrap();
        assert!(are_isomorphic(&eb, &e0).unwrap());
        assert!(are_isomorphic(&zb, &FiniteBrace::abelian(&[3]).unwrap()).unwrap());

        assert!(matches!(
            dedekind_structure_decompose(&fam(Family::E1, 1, 5), 4096),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            dedekind_structure_decompose(&FiniteBrace::abelian(&[4]).unwrap(), 4096),
            Err(Error::Precondition(_))
        ));
    }
}
