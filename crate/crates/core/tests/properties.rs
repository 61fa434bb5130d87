use std::sync::OnceLock;

use proptest::prelude::*;

use bracelab_core::algebra::{
    find_isotropic, is_nondegenerate, is_strong_nondegenerate, orthogonal, BilinearForm, FpVector,
    Side, Subspace,
};
use bracelab_core::enumeration::{corpus, EnumerationCaps};
use bracelab_core::extraspecial::{family, FamilySpec};
use bracelab_core::iso::{invariant_profile, isomorphism_search, DEFAULT_SEARCH_BUDGET};
use bracelab_core::substructures::{
    annihilators, closure, generated, ideal_violation, is_ideal, is_left_ideal, subset_star,
    ClosureKind,
};
use bracelab_core::{FiniteBrace, SubsetMask};

/// Braces of order ≤ 16 and the family braces over F2 and F3.
fn braces() -> &'static [FiniteBrace] {
    static C: OnceLock<Vec<FiniteBrace>> = OnceLock::new();
    C.get_or_init(|| {
        let mut v = corpus(16, &EnumerationCaps::default()).unwrap();
        for p in [2, 3] {
            v.extend(FamilySpec::all(p).iter().map(family));
        }
        v
    })
}

fn brace_and_elements(k: usize) -> impl Strategy<Value = (FiniteBrace, Vec<usize>)> {
    (0..braces().len()).prop_flat_map(move |i| {
        let b = braces()[i].clone();
        let n = b.order();
        (Just(b), proptest::collection::vec(0..n, k))
    })
}

fn subset_of(b: &FiniteBrace) -> impl Strategy<Value = SubsetMask> {
    let n = b.order();
    proptest::collection::vec(any::<bool>(), n)
        .prop_map(move |bits| SubsetMask::from_elements(n, (0..n).filter(|&i| bits[i])))
}

fn form(p: u32, dim: usize) -> impl Strategy<Value = BilinearForm> {
    proptest::collection::vec(proptest::collection::vec(0..p as i64, dim), dim)
        .prop_map(move |m| BilinearForm::new(p, m).unwrap())
}

fn form_and_subspace() -> impl Strategy<Value = (BilinearForm, Subspace)> {
    (prop_oneof![Just(2u32), Just(3), Just(5), Just(7)], 1usize..=3).prop_flat_map(|(p, d)| {
        let vecs = proptest::collection::vec(proptest::collection::vec(0..p as i64, d), 0..=d);
        (form(p, d), vecs).prop_map(move |(phi, vs)| {
            let vs: Vec<FpVector> = vs.iter().map(|v| FpVector::new(p, v).unwrap()).collect();
            (phi, Subspace::span(p, d, &vs).unwrap())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn star_distributes_on_the_left((b, e) in brace_and_elements(3)) {
        let (x, y, z) = (e[0], e[1], e[2]);
        prop_assert_eq!(b.star(x, b.add(y, z)), b.add(b.star(x, y), b.star(x, z)));
    }

    #[test]
    fn star_of_a_product((b, e) in brace_and_elements(3)) {
        let (x, y, z) = (e[0], e[1], e[2]);
        let rhs = b.add(b.add(b.star(x, b.star(y, z)), b.star(y, z)), b.star(x, z));
        prop_assert_eq!(b.star(b.mul(x, y), z), rhs);
    }

    #[test]
    fn lambda_is_a_homomorphism((b, e) in brace_and_elements(3)) {
        let (x, y, z) = (e[0], e[1], e[2]);
        prop_assert_eq!(b.lambda(b.mul(x, y), z), b.lambda(x, b.lambda(y, z)));
        prop_assert_eq!(b.lambda(x, b.add(y, z)), b.add(b.lambda(x, y), b.lambda(x, z)));
        prop_assert_eq!(b.mul(x, y), b.add(x, b.lambda(x, y)));
    }

    #[test]
    fn square_zero_elements_generate_cyclic_subbraces((b, e) in brace_and_elements(1)) {
        let a = e[0];
        if b.star(a, a) == 0 {
            for k in 0..=b.add_order(a) {
                prop_assert_eq!(b.mul_power(a, k), b.add_multiple(a, k));
            }
            prop_assert_eq!(b.inv(a), b.neg(a));
            let add = closure(&b, &SubsetMask::singleton(b.order(), a), ClosureKind::Additive);
            prop_assert_eq!(&generated(&b, a), &add);
        }
    }

    #[test]
    fn ideal_routes_agree((b, s) in (0..braces().len()).prop_flat_map(|i| {
        let b = braces()[i].clone();
        let s = subset_of(&b);
        (Just(b), s)
    })) {
        prop_assert!(ideal_violation(&b, &s).is_ok());
    }

    #[test]
    fn annihilator_subgroups((b, e) in brace_and_elements(2)) {
        let s = generated(&b, e[0]);
        let ann = annihilators(&b, &s).unwrap();
        prop_assert_eq!(&closure(&b, &ann.left, ClosureKind::Multiplicative), &ann.left);
        prop_assert_eq!(&closure(&b, &ann.right, ClosureKind::Additive), &ann.right);
        prop_assert_eq!(&closure(&b, &ann.full, ClosureKind::Multiplicative), &ann.full);
        if is_ideal(&b, &s).unwrap() {
            let g = e[1];
            let gi = b.inv(g);
            for x in ann.left.iter() {
                prop_assert!(ann.left.contains(b.mul(b.mul(g, x), gi)));
            }
        }
    }

    #[test]
    fn stars_with_ideals((b, e) in brace_and_elements(2)) {
        let i = closure(&b, &generated(&b, e[0]), ClosureKind::Brace);
        if is_ideal(&b, &i).unwrap() {
            let full = SubsetMask::full(b.order());
            prop_assert!(is_ideal(&b, &subset_star(&b, &i, &full)).unwrap());
            prop_assert!(is_left_ideal(&b, &subset_star(&b, &full, &i)));
            let (q, map) = b.quotient(&i).unwrap();
            prop_assert_eq!(q.order() * i.len(), b.order());
            prop_assert_eq!(map[b.mul(e[0], e[1])], q.mul(map[e[0]], map[e[1]]));
        }
    }

    #[test]
    fn relabelling_preserves_isomorphism_type((b, rest) in (0..braces().len()).prop_flat_map(|i| {
        let b = braces()[i].clone();
        let rest: Vec<usize> = (1..b.order()).collect();
        (Just(b), Just(rest).prop_shuffle())
    })) {
        let perm: Vec<usize> = std::iter::once(0).chain(rest).collect();
        let c = b.relabel(&perm);
        prop_assert_eq!(invariant_profile(&b), invariant_profile(&c));
        prop_assert!(isomorphism_search(&b, &c, DEFAULT_SEARCH_BUDGET).is_found());
        prop_assert!(isomorphism_search(&c, &b, DEFAULT_SEARCH_BUDGET).is_found());
    }

    #[test]
    fn isomorphism_search_is_symmetric(i in 0..braces().len(), j in 0..braces().len()) {
        let (a, b) = (&braces()[i], &braces()[j]);
        let ab = isomorphism_search(a, b, DEFAULT_SEARCH_BUDGET);
        let ba = isomorphism_search(b, a, DEFAULT_SEARCH_BUDGET);
        prop_assert_eq!(ab.is_found(), ba.is_found());
        // The enumerated corpus holds one brace per class.
        if i < 416 && j < 416 {
            prop_assert_eq!(ab.is_found(), i == j);
        }
    }

    #[test]
    fn dimension_identity((phi, u) in form_and_subspace()) {
        let full = Subspace::full(phi.modulus(), phi.dim());
        let v_perp = orthogonal(&phi, &full, Side::Right).unwrap();
        let left = orthogonal(&phi, &u, Side::Left).unwrap();
        prop_assert_eq!(u.dim() + left.dim() - u.intersect(&v_perp).dim(), phi.dim());
    }

    #[test]
    fn strong_nondegeneracy_readings(phi in (prop_oneof![Just(2u32), Just(3), Just(5)], 1usize..=3)
        .prop_flat_map(|(p, d)| form(p, d)))
    {
        let strong = is_strong_nondegenerate(&phi).unwrap();
        prop_assert_eq!(strong, find_isotropic(&phi).unwrap().is_none());
        let every = Subspace::all_subspaces(phi.modulus(), phi.dim())
            .iter()
            .filter(|u| u.dim() > 0)
            .all(|u| is_nondegenerate(&phi, u).unwrap());
        prop_assert_eq!(strong, every);
        if phi.dim() == 3 {
            prop_assert!(!strong);
        }
    }
}
