//! Closures, subbrace and ideal predicates, annihilators and the subbrace
//! lattice.

use std::collections::HashSet;
use std::fmt;

use crate::brace::FiniteBrace;
use crate::error::{Error, Result};
use crate::mask::SubsetMask;

/// Default largest order for which [`all_subbraces`] runs.
pub const SUBBRACE_CAP: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureKind {
    Additive,
    Multiplicative,
    Brace,
}

/// The least superset of `s ∪ {0}` closed under the chosen operations.
pub fn closure(a: &FiniteBrace, s: &SubsetMask, kind: ClosureKind) -> SubsetMask {
    extend_closure(a, &SubsetMask::singleton(a.order(), 0), s.iter(), kind)
}

/// Closure of `closed ∪ gens`, where `closed` is already closed under `kind`.
pub fn extend_closure(
    a: &FiniteBrace,
    closed: &SubsetMask,
    gens: impl IntoIterator<Item = usize>,
    kind: ClosureKind,
) -> SubsetMask {
    let mut mask = closed.clone();
    let mut members = closed.elements();
    let mut queue = Vec::new();
    for g in gens {
        if mask.insert(g) {
            members.push(g);
            queue.push(g);
        }
    }
    while let Some(x) = queue.pop() {
        let mut j = 0;
        while j < members.len() {
            let y = members[j];
            j += 1;
            let mut push = |z: usize, mask: &mut SubsetMask, members: &mut Vec<usize>| {
                if mask.insert(z) {
                    members.push(z);
                    queue.push(z);
                }
            };
            if kind != ClosureKind::Multiplicative {
                push(a.add(x, y), &mut mask, &mut members);
            }
            if kind != ClosureKind::Additive {
                push(a.mul(x, y), &mut mask, &mut members);
                push(a.mul(y, x), &mut mask, &mut members);
            }
        }
    }
    mask
}

/// The subbrace generated by one element.
pub fn generated(a: &FiniteBrace, x: usize) -> SubsetMask {
    closure(a, &SubsetMask::singleton(a.order(), x), ClosureKind::Brace)
}

/// `X ∗ Y`: the additive subgroup generated by all `x ∗ y`.
pub fn subset_star(a: &FiniteBrace, x: &SubsetMask, y: &SubsetMask) -> SubsetMask {
    let n = a.order();
    let mut gens = SubsetMask::empty(n);
    let ys = y.elements();
    for u in x.iter() {
        for &v in &ys {
            gens.insert(a.star(u, v));
        }
    }
    closure(a, &gens, ClosureKind::Additive)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    MissingZero,
    /// `a + b ∉ S` for `a, b ∈ S`.
    Sum,
    /// `ab ∉ S` for `a, b ∈ S`.
    Product,
    /// `λ_a(b) ∉ S` for `a ∈ A`, `b ∈ S`.
    Lambda,
    /// `a b a⁻¹ ∉ S` for `a ∈ A`, `b ∈ S`.
    Conjugate,
    /// `a ∗ b ∉ S` for `a ∈ A`, `b ∈ S`.
    LeftStar,
    /// `a ∗ b ∉ S` for `a ∈ S`, `b ∈ A`.
    RightStar,
}

/// A pair witnessing that a subset fails a closure property.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub a: usize,
    pub b: usize,
    pub result: usize,
}

impl Violation {
    pub fn describe(&self, br: &FiniteBrace) -> String {
        let (a, b, r) = (
            br.format_element(self.a),
            br.format_element(self.b),
            br.format_element(self.result),
        );
        match self.kind {
            ViolationKind::MissingZero => "0 is missing".to_string(),
            ViolationKind::Sum => format!("{a} + {b} = {r} is outside"),
            ViolationKind::Product => format!("{a}·{b} = {r} is outside"),
            ViolationKind::Lambda => format!("λ_{a}({b}) = {r} is outside"),
            ViolationKind::Conjugate => format!("{a}·{b}·{a}⁻¹ = {r} is outside"),
            ViolationKind::LeftStar | ViolationKind::RightStar => {
                format!("{a} ∗ {b} = {r} is outside")
            }
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} violation at ({}, {}) giving {}",
            self.kind, self.a, self.b, self.result
        )
    }
}

/// Least pair showing `s` is not a subbrace.
pub fn subbrace_violation(a: &FiniteBrace, s: &SubsetMask) -> Option<Violation> {
    if !s.contains(0) {
        return Some(Violation {
            kind: ViolationKind::MissingZero,
            a: 0,
            b: 0,
            result: 0,
        });
    }
    let elems = s.elements();
    for &x in &elems {
        for &y in &elems {
            let sum = a.add(x, y);
            if !s.contains(sum) {
                return Some(Violation {
                    kind: ViolationKind::Sum,
                    a: x,
                    b: y,
                    result: sum,
                });
            }
            let prod = a.mul(x, y);
            if !s.contains(prod) {
                return Some(Violation {
                    kind: ViolationKind::Product,
                    a: x,
                    b: y,
                    result: prod,
                });
            }
        }
    }
    None
}

pub fn is_subbrace(a: &FiniteBrace, s: &SubsetMask) -> bool {
    subbrace_violation(a, s).is_none()
}

fn lambda_violation(a: &FiniteBrace, s: &SubsetMask) -> Option<Violation> {
    let elems = s.elements();
    for x in 0..a.order() {
        for &y in &elems {
            let r = a.lambda(x, y);
            if !s.contains(r) {
                return Some(Violation {
                    kind: ViolationKind::Lambda,
                    a: x,
                    b: y,
                    result: r,
                });
            }
        }
    }
    None
}

/// Least pair showing `s` is not a left ideal (a λ-invariant subbrace).
pub fn left_ideal_violation(a: &FiniteBrace, s: &SubsetMask) -> Option<Violation> {
    subbrace_violation(a, s).or_else(|| lambda_violation(a, s))
}

pub fn is_left_ideal(a: &FiniteBrace, s: &SubsetMask) -> bool {
    left_ideal_violation(a, s).is_none()
}

/// Definition route: λ-invariant subbrace whose multiplicative group is
/// normal.
fn ideal_by_definition(a: &FiniteBrace, s: &SubsetMask) -> bool {
    if left_ideal_violation(a, s).is_some() {
        return false;
    }
    let elems = s.elements();
    (0..a.order()).all(|x| {
        let xi = a.inv(x);
        elems.iter().all(|&y| s.contains(a.mul(a.mul(x, y), xi)))
    })
}

/// Characterisation route: subbrace with `A ∗ S ⊆ S` and `S ∗ A ⊆ S`.
/// Returns the least pair `(x, y)` over all pairs with `x ∈ S` or `y ∈ S`.
fn ideal_by_star(a: &FiniteBrace, s: &SubsetMask) -> Option<Violation> {
    if let Some(v) = subbrace_violation(a, s) {
        return Some(v);
    }
    let n = a.order();
    for x in 0..n {
        let xin = s.contains(x);
        for y in 0..n {
            let yin = s.contains(y);
            if !xin && !yin {
                continue;
            }
            let r = a.star(x, y);
            if !s.contains(r) {
                let kind = if yin {
                    ViolationKind::LeftStar
                } else {
                    ViolationKind::RightStar
                };
                return Some(Violation {
                    kind,
                    a: x,
                    b: y,
                    result: r,
                });
            }
        }
    }
    None
}

/// Least pair showing `s` is not an ideal, or `None` if it is one.
///
/// Both the normal-subgroup definition and the star characterisation are
/// evaluated; disagreement is reported as [`Error::Engine`].
pub fn ideal_violation(a: &FiniteBrace, s: &SubsetMask) -> Result<Option<Violation>> {
    check_universe(a, s)?;
    let by_star = ideal_by_star(a, s);
    let by_def = ideal_by_definition(a, s);
    if by_star.is_none() != by_def {
        return Err(Error::Engine(format!(
            "ideal criteria disagree on {:?}: definition {by_def}, star {by_star:?}",
            s
        )));
    }
    Ok(by_star)
}

pub fn is_ideal(a: &FiniteBrace, s: &SubsetMask) -> Result<bool> {
    Ok(ideal_violation(a, s)?.is_none())
}

fn check_universe(a: &FiniteBrace, s: &SubsetMask) -> Result<()> {
    if s.universe() != a.order() {
        return Err(Error::SizeMismatch {
            expected: a.order(),
            found: s.universe(),
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Annihilators {
    /// `{a : a ∗ x = 0 for all x ∈ S}`
    pub left: SubsetMask,
    /// `{a : x ∗ a = 0 for all x ∈ S}`
    pub right: SubsetMask,
    /// `{a : ax = a + x = xa for all x ∈ S}`
    pub full: SubsetMask,
}

pub fn annihilators(a: &FiniteBrace, s: &SubsetMask) -> Result<Annihilators> {
    check_universe(a, s)?;
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    let n = a.order();
    let elems = s.elements();
    let mut left = SubsetMask::empty(n);
    let mut right = SubsetMask::empty(n);
    let mut full = SubsetMask::empty(n);
    for x in 0..n {
        let l = elems.iter().all(|&y| a.star(x, y) == 0);
        let r = elems.iter().all(|&y| a.star(y, x) == 0);
        if l {
            left.insert(x);
        }
        if r {
            right.insert(x);
        }
        if l && r && elems.iter().all(|&y| a.mul(x, y) == a.mul(y, x)) {
            full.insert(x);
        }
    }
    Ok(Annihilators { left, right, full })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocFixCentre {
    pub soc: SubsetMask,
    pub fix: SubsetMask,
    pub centre: SubsetMask,
}

/// `Soc(A)`, `Fix(A)` and `ζ(A)`, with socle and centre certified ideals and
/// `Fix(A)` certified a left ideal.
pub fn socle_fix_centre(a: &FiniteBrace) -> Result<SocFixCentre> {
    let ann = annihilators(a, &SubsetMask::full(a.order()))?;
    for (name, m) in [("socle", &ann.left), ("centre", &ann.full)] {
        if let Some(v) = ideal_violation(a, m)? {
            return Err(Error::Engine(format!("{name} is not an ideal: {v}")));
        }
    }
    if let Some(v) = left_ideal_violation(a, &ann.right) {
        return Err(Error::Engine(format!("Fix is not a left ideal: {v}")));
    }
    Ok(SocFixCentre {
        soc: ann.left,
        fix: ann.right,
        centre: ann.full,
    })
}

/// A subbrace together with its λ-invariance and ideal status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subbrace {
    pub mask: SubsetMask,
    pub lambda_invariant: bool,
    pub ideal: bool,
}

impl Subbrace {
    pub fn certify(a: &FiniteBrace, mask: SubsetMask) -> Result<Subbrace> {
        if let Some(v) = subbrace_violation(a, &mask) {
            return Err(Error::Precondition(format!("not a subbrace: {}", v.describe(a))));
        }
        let lambda_invariant = lambda_violation(a, &mask).is_none();
        let ideal = is_ideal(a, &mask)?;
        Ok(Subbrace {
            mask,
            lambda_invariant,
            ideal,
        })
    }

    pub fn order(&self) -> usize {
        self.mask.len()
    }
}

/// Every subbrace of `a`, sorted by size and then by elements.
pub fn all_subbraces(a: &FiniteBrace, cap: usize) -> Result<Vec<Subbrace>> {
    let n = a.order();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "subbrace enumeration order",
            limit: cap,
            actual: n,
        });
    }
    let zero = SubsetMask::singleton(n, 0);
    let mut seen: HashSet<SubsetMask> = HashSet::new();
    seen.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(s) = frontier.pop() {
        for x in 0..n {
            if s.contains(x) {
                continue;
            }
            let t = extend_closure(a, &s, [x], ClosureKind::Brace);
            if seen.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    let mut masks: Vec<SubsetMask> = seen.into_iter().collect();
    masks.sort();
    masks.into_iter().map(|m| Subbrace::certify(a, m)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylowComponent {
    pub prime: usize,
    pub mask: SubsetMask,
    pub is_ideal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylowDecomposition {
    pub components: Vec<SylowComponent>,
    /// Set when every component is an ideal and `A` is their direct sum.
    pub direct_sum: bool,
}

pub fn sylow_decomposition(a: &FiniteBrace) -> Result<SylowDecomposition> {
    let n = a.order();
    let mut components = Vec::new();
    for &p in a.primes() {
        let mut pk = 1;
        while n % (pk * p) == 0 {
            pk *= p;
        }
        let mask = SubsetMask::from_elements(n, (0..n).filter(|&x| pk % a.add_order(x) == 0));
        let is_ideal = is_ideal(a, &mask)?;
        components.push(SylowComponent {
            prime: p,
            mask,
            is_ideal,
        });
    }
    let all_ideal = components.iter().all(|c| c.is_ideal);
    let mut direct_sum = false;
    if all_ideal {
        let product: usize = components.iter().map(|c| c.mask.len()).product();
        let pairwise_trivial = components.iter().enumerate().all(|(i, c)| {
            components[i + 1..]
                .iter()
                .all(|d| c.mask.intersection(&d.mask).is_trivial())
        });
        if product != n || !pairwise_trivial {
            return Err(Error::Engine("Sylow components do not form a direct sum".into()));
        }
        direct_sum = true;
    }
    Ok(SylowDecomposition {
        components,
        direct_sum,
    })
}

/// Whether every subgroup of `(A, ·)` is normal. It suffices to test the
/// cyclic subgroups.
pub fn multiplicative_group_is_dedekind(a: &FiniteBrace) -> bool {
    let n = a.order();
    (0..n).all(|x| {
        let cyc = closure(a, &SubsetMask::singleton(n, x), ClosureKind::Multiplicative);
        (0..n).all(|g| {
            let gi = a.inv(g);
            cyc.iter().all(|y| cyc.contains(a.mul(a.mul(g, y), gi)))
        })
    })
}

/// Whether `(A, ·)` is abelian.
pub fn multiplicative_group_is_abelian(a: &FiniteBrace) -> bool {
    let n = a.order();
    (0..n).all(|x| (0..x).all(|y| a.mul(x, y) == a.mul(y, x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extraspecial::{family, Family, FamilySpec};

    fn fam(f: Family, m: u32, p: u32) -> FiniteBrace {
        family(&FamilySpec::new(f, m, p).unwrap())
    }

    fn mask_of(b: &FiniteBrace, tuples: &[&[usize]]) -> SubsetMask {
        SubsetMask::from_elements(b.order(), tuples.iter().map(|t| b.codec().encode(t)))
    }

    #[test]
    fn closures() {
        let b = fam(Family::E0, 1, 2);
        assert!(closure(&b, &SubsetMask::singleton(4, 0), ClosureKind::Brace).is_trivial());
        let x = b.codec().encode(&[1, 0]);
        assert!(generated(&b, x).is_full());
        assert_eq!(closure(&b, &SubsetMask::singleton(4, x), ClosureKind::Additive).len(), 2);

        let e = fam(Family::E1, 1, 5);
        let g = e.codec().encode(&[2, 1, 0]);
        let s = generated(&e, g);
        assert_eq!(s.len(), 5);
        let expected = SubsetMask::from_elements(125, (0..5).map(|k| e.add_multiple(g, k)));
        assert_eq!(s, expected);
    }

    #[test]
    fn non_ideal_subbrace_in_e1_1_5() {
        let e = fam(Family::E1, 1, 5);
        let c = e.codec().clone();
        let s = generated(&e, c.encode(&[2, 1, 0]));
        assert!(is_subbrace(&e, &s));
        let v = ideal_violation(&e, &s).unwrap().expect("not an ideal");
        assert!(!s.contains(v.result));
        assert_eq!(v.result, e.star(v.a, v.b));
        // The specific pair (2,1,0) ∗ (1,0,0) also escapes.
        let r = e.star(c.encode(&[2, 1, 0]), c.encode(&[1, 0, 0]));
        assert_eq!(c.decode(r), vec![0, 0, 2]);
        assert!(!s.contains(r));
    }

    #[test]
    fn trivial_and_full_are_ideals() {
        for b in [fam(Family::E0, 1, 3), fam(Family::E2, 1, 2)] {
            let n = b.order();
            assert!(is_ideal(&b, &SubsetMask::singleton(n, 0)).unwrap());
            assert!(is_ideal(&b, &SubsetMask::full(n)).unwrap());
        }
    }

    #[test]
    fn annihilator_examples() {
        let b = fam(Family::E0, 1, 3);
        let ann = annihilators(&b, &SubsetMask::singleton(9, 0)).unwrap();
        assert!(ann.left.is_full() && ann.right.is_full() && ann.full.is_full());
        let sfc = socle_fix_centre(&b).unwrap();
        assert_eq!(sfc.fix, mask_of(&b, &[&[0, 0], &[0, 1], &[0, 2]]));
        assert_eq!(sfc.centre, sfc.fix);
        assert!(matches!(
            annihilators(&b, &SubsetMask::empty(9)),
            Err(Error::EmptySubset)
        ));

        let e = fam(Family::E1, 0, 3);
        let sfc = socle_fix_centre(&e).unwrap();
        let c = e.codec();
        let expected = closure(
            &e,
            &SubsetMask::from_elements(27, [c.encode(&[1, 0, 0]), c.encode(&[0, 0, 1])]),
            ClosureKind::Additive,
        );
        assert_eq!(sfc.centre, expected);

        // Strong extraspecial: Ann(Soc(E)) = E.
        let s = fam(Family::E1, 2, 5);
        let soc = socle_fix_centre(&s).unwrap().soc;
        assert!(annihilators(&s, &soc).unwrap().full.is_full());
    }

    #[test]
    fn subbrace_counts() {
        let c5 = FiniteBrace::abelian(&[5]).unwrap();
        assert_eq!(all_subbraces(&c5, SUBBRACE_CAP).unwrap().len(), 2);
        let b = fam(Family::E0, 1, 2);
        let subs = all_subbraces(&b, SUBBRACE_CAP).unwrap();
        assert_eq!(subs.len(), 3);
        assert!(subs.iter().all(|s| s.ideal));
        assert_eq!(subs[1].mask, mask_of(&b, &[&[0, 0], &[0, 1]]));
        assert_eq!(all_subbraces(&fam(Family::E0, 1, 3), SUBBRACE_CAP).unwrap().len(), 3);
        assert!(all_subbraces(&fam(Family::E1, 1, 5), 100).unwrap_err().is_cap());
    }

    #[test]
    fn power_set_agrees_with_lattice_search() {
        for b in [
            fam(Family::E0, 1, 2),
            FiniteBrace::abelian(&[2, 4]).unwrap(),
            fam(Family::E2, 1, 2),
        ] {
            let n = b.order();
            let naive: Vec<SubsetMask> = {
                let mut v: Vec<SubsetMask> = (0u32..1 << n)
                    .map(|bits| SubsetMask::from_elements(n, (0..n).filter(|i| bits >> i & 1 == 1)))
                    .filter(|m| is_subbrace(&b, m))
                    .collect();
                v.sort();
                v
            };
            let found: Vec<SubsetMask> = all_subbraces(&b, SUBBRACE_CAP)
                .unwrap()
                .into_iter()
                .map(|s| s.mask)
                .collect();
            assert_eq!(found, naive);
        }
    }

    #[test]
    fn sylow_components() {
        let c6 = FiniteBrace::abelian(&[6]).unwrap();
        let d = sylow_decomposition(&c6).unwrap();
        assert_eq!(d.components.len(), 2);
        assert_eq!(d.components[0].mask.len(), 2);
        assert_eq!(d.components[1].mask.len(), 3);
        assert!(d.direct_sum);

        let c7 = FiniteBrace::abelian(&[7]).unwrap();
        let d = sylow_decomposition(&c7).unwrap();
        assert_eq!(d.components.len(), 1);
        assert!(d.components[0].mask.is_full() && d.direct_sum);
    }

    #[test]
    fn subset_star_examples() {
        let b = fam(Family::E0, 1, 3);
        let full = SubsetMask::full(9);
        assert!(subset_star(&b, &SubsetMask::singleton(9, 0), &full).is_trivial());
        assert_eq!(subset_star(&b, &full, &full), mask_of(&b, &[&[0, 0], &[0, 1], &[0, 2]]));
        let e = fam(Family::E1, 0, 3);
        assert_eq!(
            subset_star(&e, &SubsetMask::full(27), &SubsetMask::full(27)),
            mask_of(&e, &[&[0, 0, 0], &[0, 0, 1], &[0, 0, 2]])
        );
    }
}
