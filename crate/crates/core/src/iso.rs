//! Homomorphisms, isomorphism invariants and isomorphism search.

use std::collections::HashMap;

use crate::brace::FiniteBrace;
use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::substructures::{subset_star, ClosureKind};

/// Default node budget for [`isomorphism_search`].
pub const DEFAULT_SEARCH_BUDGET: u64 = 5_000_000;

/// A map between braces, checked to preserve both operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraceHom {
    map: Vec<usize>,
    target_order: usize,
}

impl BraceHom {
    pub fn new(source: &FiniteBrace, target: &FiniteBrace, map: Vec<usize>) -> Result<BraceHom> {
        if map.len() != source.order() {
            return Err(Error::SizeMismatch {
                expected: source.order(),
                found: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.order()) {
            return Err(Error::Precondition(format!("image {bad} outside the target")));
        }
        let n = source.order();
        for a in 0..n {
            for b in 0..n {
                if map[source.add(a, b)] != target.add(map[a], map[b])
                    || map[source.mul(a, b)] != target.mul(map[a], map[b])
                {
                    return Err(Error::Precondition(format!(
                        "map does not preserve the operations at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(BraceHom {
            map,
            target_order: target.order(),
        })
    }

    pub fn identity(a: &FiniteBrace) -> BraceHom {
        BraceHom {
            map: (0..a.order()).collect(),
            target_order: a.order(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_bijective(&self) -> bool {
        if self.map.len() != self.target_order {
            return false;
        }
        let mut seen = vec![false; self.target_order];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn kernel(&self) -> SubsetMask {
        SubsetMask::from_elements(self.map.len(), (0..self.map.len()).filter(|&x| self.map[x] == 0))
    }

    pub fn inverse(&self) -> Option<Vec<usize>> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(inv)
    }
}

/// Per-element data preserved by every isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementSignature {
    pub add_order: usize,
    pub mul_order: usize,
    pub lambda_order: usize,
    pub lambda_fixed: usize,
    pub square_star_zero: bool,
    pub in_soc: bool,
    pub in_fix: bool,
    pub in_centre: bool,
    pub left_star_zeros: usize,
    pub right_star_zeros: usize,
}

/// Isomorphism invariants of a whole brace.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InvariantProfile {
    pub order: usize,
    pub additive_shape: Vec<usize>,
    pub star_rank: usize,
    pub signatures: Vec<ElementSignature>,
}

pub fn element_signatures(a: &FiniteBrace) -> Vec<ElementSignature> {
    let n = a.order();
    let mut left_zero = vec![0usize; n];
    let mut right_zero = vec![0usize; n];
    for x in 0..n {
        for y in 0..n {
            if a.star(x, y) == 0 {
                left_zero[x] += 1;
                right_zero[y] += 1;
            }
        }
    }
    let commutes_with_all = |x: usize| (0..n).all(|y| a.mul(x, y) == a.mul(y, x));
    (0..n)
        .map(|x| {
            let lam = a.lambda_map(x);
            let in_soc = left_zero[x] == n;
            let in_fix = right_zero[x] == n;
            ElementSignature {
                add_order: a.add_order(x),
                mul_order: a.mul_order(x),
                lambda_order: permutation_order(&lam),
                lambda_fixed: lam.iter().enumerate().filter(|(i, &y)| *i == y).count(),
                square_star_zero: a.star(x, x) == 0,
                in_soc,
                in_fix,
                in_centre: in_soc && in_fix && commutes_with_all(x),
                left_star_zeros: left_zero[x],
                right_star_zeros: right_zero[x],
            }
        })
        .collect()
}

pub fn invariant_profile(a: &FiniteBrace) -> InvariantProfile {
    let mut signatures = element_signatures(a);
    signatures.sort_unstable();
    let full = SubsetMask::full(a.order());
    InvariantProfile {
        order: a.order(),
        additive_shape: a.additive_shape().to_vec(),
        star_rank: subset_star(a, &full, &full).len(),
        signatures,
    }
}

fn permutation_order(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut order = 1usize;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        order = order / gcd(order, len) * len;
    }
    order
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(BraceHom),
    NotIsomorphic,
    BudgetExceeded { nodes: u64 },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&BraceHom> {
        match self {
            SearchOutcome::Found(h) => Some(h),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

/// Whether `a ≅ b`, treating an exhausted budget as an error.
pub fn are_isomorphic(a: &FiniteBrace, b: &FiniteBrace) -> Result<bool> {
    match isomorphism_search(a, b, DEFAULT_SEARCH_BUDGET) {
        SearchOutcome::Found(_) => Ok(true),
        SearchOutcome::NotIsomorphic => Ok(false),
        SearchOutcome::BudgetExceeded { nodes } => Err(Error::CapExceeded {
            what: "isomorphism search nodes",
            limit: DEFAULT_SEARCH_BUDGET as usize,
            actual: nodes as usize,
        }),
    }
}

/// Backtracking search for an isomorphism `a → b`.
///
/// Images of an additive generating set are tried smallest id first; each
/// partial assignment is extended additively over the span of the
/// generators placed so far and checked for injectivity and for the
/// multiplicative law on every pair it newly determines.
pub fn isomorphism_search(a: &FiniteBrace, b: &FiniteBrace, budget: u64) -> SearchOutcome {
    if a.order() != b.order() || a.additive_shape() != b.additive_shape() {
        return SearchOutcome::NotIsomorphic;
    }
    let sa = element_signatures(a);
    let sb = element_signatures(b);
    let mut sorted_a = sa.clone();
    let mut sorted_b = sb.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return SearchOutcome::NotIsomorphic;
    }
    let full = SubsetMask::full(a.order());
    if subset_star(a, &full, &full).len() != subset_star(b, &full, &full).len() {
        return SearchOutcome::NotIsomorphic;
    }
    Search::new(a, b, sa, sb, budget).run()
}

struct Search<'a> {
    a: &'a FiniteBrace,
    b: &'a FiniteBrace,
    sig_a: Vec<ElementSignature>,
    candidates: HashMap<ElementSignature, Vec<usize>>,
    gens: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

const UNSET: usize = usize::MAX;

impl<'a> Search<'a> {
    fn new(
        a: &'a FiniteBrace,
        b: &'a FiniteBrace,
        sig_a: Vec<ElementSignature>,
        sig_b: Vec<ElementSignature>,
        budget: u64,
    ) -> Self {
        let n = a.order();
        let mut candidates: HashMap<ElementSignature, Vec<usize>> = HashMap::new();
        for (y, s) in sig_b.iter().enumerate() {
            candidates.entry(*s).or_default().push(y);
        }
        // Generators: rarest signature first, then largest additive order,
        // then smallest id; skip anything already in the span.
        let mut freq: HashMap<ElementSignature, usize> = HashMap::new();
        for s in &sig_a {
            *freq.entry(*s).or_default() += 1;
        }
        let mut order: Vec<usize> = (1..n).collect();
        order.sort_by_key(|&x| (freq[&sig_a[x]], std::cmp::Reverse(sig_a[x].add_order), x));
        let mut gens = Vec::new();
        let mut span = SubsetMask::singleton(n, 0);
        for x in order {
            if span.is_full() {
                break;
            }
            if !span.contains(x) {
                gens.push(x);
                span = crate::substructures::extend_closure(a, &span, [x], ClosureKind::Additive);
            }
        }
        let mut map = vec![UNSET; n];
        map[0] = 0;
        let mut used = vec![false; n];
        used[0] = true;
        Search {
            a,
            b,
            sig_a,
            candidates,
            gens,
            map,
            used,
            nodes: 0,
            budget,
        }
    }

    fn run(mut self) -> SearchOutcome {
        let domain = vec![0usize];
        match self.extend(0, domain) {
            Some(true) => {
                let hom = BraceHom::new(self.a, self.b, self.map.clone())
                    .expect("search produced a verified isomorphism");
                SearchOutcome::Found(hom)
            }
            Some(false) => SearchOutcome::NotIsomorphic,
            None => SearchOutcome::BudgetExceeded { nodes: self.nodes },
        }
    }

    /// `Some(true)` on success, `Some(false)` when the subtree is exhausted,
    /// `None` when the budget runs out.
    fn extend(&mut self, level: usize, domain: Vec<usize>) -> Option<bool> {
        if level == self.gens.len() {
            return Some(true);
        }
        let g = self.gens[level];
        let cands = self.candidates[&self.sig_a[g]].clone();
        for h in cands {
            if self.used[h] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            if let Some(added) = self.try_assign(g, h, &domain) {
                let mut next = domain.clone();
                next.extend_from_slice(&added);
                match self.extend(level + 1, next) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
                self.undo(&added);
            }
        }
        Some(false)
    }

    /// Sets `g ↦ h` and extends over `domain + ⟨g⟩`. Returns the newly
    /// mapped elements, or `None` (with nothing changed) on conflict.
    fn try_assign(&mut self, g: usize, h: usize, domain: &[usize]) -> Option<Vec<usize>> {
        let (a, b) = (self.a, self.b);
        let ord = a.add_order(g);
        let mut added: Vec<usize> = Vec::new();
        let mut ok = true;
        let (mut jg, mut jh) = (0usize, 0usize);
        'outer: for _ in 0..ord {
            for &s in domain {
                let x = a.add(s, jg);
                let y = b.add(self.map[s], jh);
                if self.map[x] == UNSET {
                    if self.used[y] {
                        ok = false;
                        break 'outer;
                    }
                    self.map[x] = y;
                    self.used[y] = true;
                    added.push(x);
                } else if self.map[x] != y {
                    ok = false;
                    break 'outer;
                }
            }
            jg = a.add(jg, g);
            jh = b.add(jh, h);
        }
        if ok {
            ok = self.check_products(domain, &added);
        }
        if ok {
            Some(added)
        } else {
            self.undo(&added);
            None
        }
    }

    fn check_products(&self, old: &[usize], added: &[usize]) -> bool {
        let (a, b) = (self.a, self.b);
        let check = |x: usize, y: usize| {
            let xy = a.mul(x, y);
            self.map[xy] == UNSET || self.map[xy] == b.mul(self.map[x], self.map[y])
        };
        for &x in added {
            for &y in old.iter().chain(added) {
                if !check(x, y) || !check(y, x) {
                    return false;
                }
            }
        }
        // Pairs of old elements whose product only now became mapped.
        let is_new = {
            let mut v = vec![false; a.order()];
            for &x in added {
                v[x] = true;
            }
            v
        };
        for &x in old {
            for &y in old {
                if is_new[a.mul(x, y)] && !check(x, y) {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, added: &[usize]) {
        for &x in added {
            self.used[self.map[x]] = false;
            self.map[x] = UNSET;
        }
    }
}
