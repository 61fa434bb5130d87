//! All left braces on a small abelian group.
//!
//! Brace structures on `(G, +)` are the same thing as regular subgroups of
//! the holomorph `G ⋊ Aut(G)`: the subgroup contains exactly one element
//! `(a, λ_a)` for each `a ∈ G`, and `ab = a + λ_a(b)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use crate::brace::{ElementTupleCodec, FiniteBrace};
use crate::error::{Error, Result};
use crate::group::{abelian_groups_of_order, factorize, normalize_cyclic_factors, prime_power_base};
use crate::iso::{invariant_profile, isomorphism_search, SearchOutcome, DEFAULT_SEARCH_BUDGET};

/// A finite abelian group given by its invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbelianGroupSpec {
    factors: Vec<usize>,
}

impl AbelianGroupSpec {
    /// Any list of cyclic orders; normalised to invariant factors.
    pub fn new(cyclic: &[usize]) -> Result<AbelianGroupSpec> {
        if cyclic.contains(&0) {
            return Err(Error::InvalidSpec("cyclic factors must be positive".into()));
        }
        Ok(AbelianGroupSpec {
            factors: normalize_cyclic_factors(cyclic),
        })
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product()
    }

    /// Every abelian group of order `n`, in increasing factor-list order.
    pub fn all_of_order(n: usize) -> Vec<AbelianGroupSpec> {
        abelian_groups_of_order(n)
            .into_iter()
            .map(|factors| AbelianGroupSpec { factors })
            .collect()
    }

    /// The abelian brace on this group, elements encoded with the factors
    /// as radices.
    pub fn trivial_brace(&self) -> FiniteBrace {
        FiniteBrace::abelian(&self.factors).expect("enumeration groups are small")
    }

    fn codec(&self) -> ElementTupleCodec {
        ElementTupleCodec::new(if self.factors.is_empty() {
            vec![1]
        } else {
            self.factors.clone()
        })
    }
}

impl FromStr for AbelianGroupSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return AbelianGroupSpec::new(&[]);
        }
        let parts: std::result::Result<Vec<usize>, _> = s
            .split([',', 'x', '×'])
            .map(|p| p.trim().trim_start_matches(['C', 'c']).parse::<usize>())
            .collect();
        let parts = parts.map_err(|e| Error::InvalidSpec(format!("bad group {s:?}: {e}")))?;
        AbelianGroupSpec::new(&parts)
    }
}

impl fmt::Display for AbelianGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("C1");
        }
        let parts: Vec<String> = self.factors.iter().map(|c| format!("C{c}")).collect();
        f.write_str(&parts.join("×"))
    }
}

/// Size limits for enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationCaps {
    /// Largest group order enumerated.
    pub max_order: usize,
    /// Largest group order for which automorphisms are listed.
    pub max_aut_group_order: usize,
    /// Largest automorphism group listed.
    pub max_automorphisms: u128,
    /// Largest number of braces returned when not reducing up to isomorphism.
    pub max_raw_braces: usize,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        EnumerationCaps {
            max_order: 16,
            max_aut_group_order: 64,
            max_automorphisms: 1_000_000,
            max_raw_braces: 200_000,
        }
    }
}

/// `|Aut(G)|` by the Hillar–Rhea formula, computed per Sylow subgroup.
pub fn automorphism_count(g: &AbelianGroupSpec) -> u128 {
    let mut per_prime: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for &f in g.factors() {
        for (p, e) in factorize(f) {
            per_prime.entry(p).or_default().push(e);
        }
    }
    let mut total: u128 = 1;
    for (p, mut e) in per_prime {
        e.sort_unstable();
        let n = e.len();
        let p = p as u128;
        let mut count: u128 = 1;
        for k in 0..n {
            let d = (0..n).rev().find(|&l| e[l] == e[k]).unwrap() + 1;
            let c = (0..n).find(|&l| e[l] == e[k]).unwrap() + 1;
            count *= p.pow(d as u32) - p.pow(k as u32);
            count *= p.pow(e[k]).pow((n - d) as u32);
            count *= p.pow(e[k] - 1).pow((n - c + 1) as u32);
        }
        total *= count;
    }
    total
}

/// Every automorphism of `G` as a permutation of element ids, identity
/// first, found by choosing images of the standard generators.
pub fn automorphisms(g: &AbelianGroupSpec, caps: &EnumerationCaps) -> Result<Vec<Vec<usize>>> {
    let n = g.order();
    if n > caps.max_aut_group_order {
        return Err(Error::CapExceeded {
            what: "automorphism group order",
            limit: caps.max_aut_group_order,
            actual: n,
        });
    }
    let expected = automorphism_count(g);
    if expected > caps.max_automorphisms {
        return Err(Error::CapExceeded {
            what: "automorphism count",
            limit: caps.max_automorphisms as usize,
            actual: expected.min(usize::MAX as u128) as usize,
        });
    }
    let brace = g.trivial_brace();
    let codec = g.codec();
    let r = g.factors().len();
    let gens: Vec<usize> = (0..r)
        .map(|i| {
            let mut t = vec![0; r];
            t[i] = 1;
            codec.encode(&t)
        })
        .collect();
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; n];
    image[0] = 0;
    let mut domain = vec![0usize];
    aut_search(&brace, g.factors(), &gens, 0, &mut domain, &mut image, &mut out);
    if out.len() as u128 != expected {
        return Err(Error::Engine(format!(
            "found {} automorphisms of {g}, expected {expected}",
            out.len()
        )));
    }
    out.sort();
    Ok(out)
}

fn aut_search(
    g: &FiniteBrace,
    factors: &[usize],
    gens: &[usize],
    level: usize,
    domain: &mut Vec<usize>,
    image: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if level == gens.len() {
        out.push(image.clone());
        return;
    }
    let n = g.order();
    let f = factors[level];
    let gen = gens[level];
    let base_len = domain.len();
    let mut used = vec![false; n];
    for h in 0..n {
        if g.add_order(h) != f {
            continue;
        }
        used.iter_mut().for_each(|u| *u = false);
        for &x in &domain[..base_len] {
            used[image[x]] = true;
        }
        let mut ok = true;
        let (mut kg, mut kh) = (gen, h);
        'fill: for _ in 1..f {
            for i in 0..base_len {
                let x = g.add(domain[i], kg);
                let y = g.add(image[domain[i]], kh);
                if used[y] {
                    ok = false;
                    break 'fill;
                }
                used[y] = true;
                image[x] = y;
                domain.push(x);
            }
            kg = g.add(kg, gen);
            kh = g.add(kh, h);
        }
        if ok {
            aut_search(g, factors, gens, level + 1, domain, image, out);
        }
        for &x in &domain[base_len..] {
            image[x] = usize::MAX;
        }
        domain.truncate(base_len);
    }
}

/// A subgroup of `Aut(G)` held as a list of permutations with a
/// composition cache.
struct AutGroup {
    perms: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    compose_cache: HashMap<(usize, usize), usize>,
}

impl AutGroup {
    fn new(perms: Vec<Vec<usize>>) -> AutGroup {
        let index = perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        AutGroup {
            perms,
            index,
            compose_cache: HashMap::new(),
        }
    }

    /// Index of `perms[a] ∘ perms[b]`.
    fn compose(&mut self, a: usize, b: usize) -> usize {
        if let Some(&c) = self.compose_cache.get(&(a, b)) {
            return c;
        }
        let (pa, pb) = (&self.perms[a], &self.perms[b]);
        let c: Vec<usize> = pb.iter().map(|&x| pa[x]).collect();
        let idx = self.index[&c];
        self.compose_cache.insert((a, b), idx);
        idx
    }

    fn order_of(&mut self, a: usize) -> usize {
        let id = self.identity();
        let mut k = 1;
        let mut x = a;
        while x != id {
            x = self.compose(x, a);
            k += 1;
        }
        k
    }

    fn identity(&self) -> usize {
        let n = self.perms[0].len();
        self.index[&(0..n).collect::<Vec<_>>()]
    }

    fn inverse(&self, a: usize) -> usize {
        let p = &self.perms[a];
        let mut inv = vec![0; p.len()];
        for (x, &y) in p.iter().enumerate() {
            inv[y] = x;
        }
        self.index[&inv]
    }

    /// A Sylow `p`-subgroup: grown from the identity by adjoining
    /// `p`-elements that normalise the current subgroup. A `p`-subgroup
    /// that is not Sylow always has such an element in its normaliser.
    fn sylow(&mut self, p: usize) -> Vec<usize> {
        let id = self.identity();
        let mut members = vec![id];
        let mut inside = vec![false; self.perms.len()];
        inside[id] = true;
        loop {
            let mut grew = false;
            for g in 0..self.perms.len() {
                if inside[g] || prime_power_base(self.order_of(g)) != Some(p) {
                    continue;
                }
                let gi = self.inverse(g);
                let normalises = members.clone().into_iter().all(|x| {
                    let gx = self.compose(g, x);
                    inside[self.compose(gx, gi)]
                });
                if !normalises {
                    continue;
                }
                // ⟨P, g⟩ = P⟨g⟩.
                let mut power = g;
                let mut new = Vec::new();
                while !inside[power] {
                    for &x in &members {
                        let y = self.compose(x, power);
                        if !inside[y] {
                            inside[y] = true;
                            new.push(y);
                        }
                    }
                    power = self.compose(power, g);
                }
                members.extend(new);
                grew = true;
            }
            if !grew {
                break;
            }
        }
        members.sort_unstable();
        members
    }
}

/// The regular-subgroup search.
struct Holomorph<'a> {
    g: &'a FiniteBrace,
    auts: AutGroup,
    allowed: Vec<usize>,
    /// `alpha[t]` is the automorphism paired with translation `t`.
    alpha: Vec<usize>,
    members: Vec<usize>,
    found: Vec<Vec<usize>>,
    limit: usize,
}

const NONE: usize = usize::MAX;

impl<'a> Holomorph<'a> {
    fn run(&mut self) -> Result<()> {
        let n = self.g.order();
        if self.members.len() == n {
            if self.found.len() >= self.limit {
                return Err(Error::CapExceeded {
                    what: "number of enumerated braces",
                    limit: self.limit,
                    actual: self.found.len() + 1,
                });
            }
            self.found.push(self.alpha.clone());
            return Ok(());
        }
        let t = (0..n).find(|&t| self.alpha[t] == NONE).expect("uncovered translation");
        for i in 0..self.allowed.len() {
            let a = self.allowed[i];
            if let Some(added) = self.adjoin(t, a) {
                let r = self.run();
                self.retract(&added);
                r?;
            }
        }
        Ok(())
    }

    /// Closes the current subgroup with `(t, a)`; returns the newly covered
    /// translations, or `None` (state unchanged) on a collision.
    fn adjoin(&mut self, t: usize, a: usize) -> Option<Vec<usize>> {
        let mut added = vec![t];
        self.alpha[t] = a;
        self.members.push(t);
        let mut queue = vec![t];
        while let Some(x) = queue.pop() {
            let mut j = 0;
            while j < self.members.len() {
                let y = self.members[j];
                j += 1;
                for (s, b, u, c) in [
                    (x, self.alpha[x], y, self.alpha[y]),
                    (y, self.alpha[y], x, self.alpha[x]),
                ] {
                    // (s, b)(u, c) = (s + b(u), bc)
                    let tr = self.g.add(s, self.auts.perms[b][u]);
                    let au = self.auts.compose(b, c);
                    if self.alpha[tr] == NONE {
                        self.alpha[tr] = au;
                        self.members.push(tr);
                        added.push(tr);
                        queue.push(tr);
                    } else if self.alpha[tr] != au {
                        self.retract(&added);
                        return None;
                    }
                }
            }
        }
        Some(added)
    }

    fn retract(&mut self, added: &[usize]) {
        for &t in added {
            self.alpha[t] = NONE;
        }
        let keep = self.members.len() - added.len();
        self.members.truncate(keep);
    }
}

fn brace_from_lambdas(g: &AbelianGroupSpec, base: &FiniteBrace, auts: &AutGroup, alpha: &[usize]) -> FiniteBrace {
    let n = base.order();
    let add: Vec<u32> = base.raw_add().to_vec();
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        let lam = &auts.perms[alpha[a]];
        for b in 0..n {
            mul[a * n + b] = base.add(a, lam[b]) as u32;
        }
    }
    FiniteBrace::from_tables(n, add, mul, g.codec())
}

/// Every brace on `G`, or one per isomorphism class when `up_to_iso`.
///
/// Classes are represented by their least multiplication table among the
/// braces found, and the output is sorted by multiplication table. For
/// prime-power orders, the class search only considers λ-maps inside one
/// Sylow subgroup of `Aut(G)`; every class has a member of that form since
/// the λ-image of a `p`-brace is a `p`-group.
pub fn enumerate_braces(
    g: &AbelianGroupSpec,
    up_to_iso: bool,
    caps: &EnumerationCaps,
) -> Result<Vec<FiniteBrace>> {
    let n = g.order();
    if n > caps.max_order {
        return Err(Error::CapExceeded {
            what: "enumeration group order",
            limit: caps.max_order,
            actual: n,
        });
    }
    let base = g.trivial_brace();
    let mut auts = AutGroup::new(automorphisms(g, caps)?);
    let allowed = match prime_power_base(n) {
        Some(p) if up_to_iso => {
            let sylow = auts.sylow(p);
            let p_part = factorize(automorphism_count(g) as usize)
                .into_iter()
                .find(|&(q, _)| q == p)
                .map_or(1, |(q, e)| q.pow(e));
            if sylow.len() != p_part {
                return Err(Error::Engine(format!(
                    "Sylow subgroup of Aut({g}) has order {}, expected {p_part}",
                    sylow.len()
                )));
            }
            sylow
        }
        _ => (0..auts.perms.len()).collect(),
    };
    let id = auts.identity();
    let mut alpha = vec![NONE; n];
    alpha[0] = id;
    let mut search = Holomorph {
        g: &base,
        auts,
        allowed,
        alpha,
        members: vec![0],
        found: Vec::new(),
        limit: if up_to_iso { usize::MAX } else { caps.max_raw_braces },
    };
    search.run()?;
    let Holomorph { auts, found, .. } = search;
    let braces: Vec<FiniteBrace> = found
        .iter()
        .map(|alpha| brace_from_lambdas(g, &base, &auts, alpha))
        .collect();
    let mut out = if up_to_iso { dedup_up_to_iso(braces)? } else { braces };
    out.sort_by(|a, b| a.raw_mul().cmp(b.raw_mul()));
    Ok(out)
}

/// One brace per isomorphism class, the one with the least multiplication
/// table.
pub fn dedup_up_to_iso(braces: Vec<FiniteBrace>) -> Result<Vec<FiniteBrace>> {
    let mut buckets: HashMap<_, Vec<FiniteBrace>> = HashMap::new();
    for b in braces {
        let reps = buckets.entry(invariant_profile(&b)).or_default();
        let mut matched = None;
        for (i, r) in reps.iter().enumerate() {
            match isomorphism_search(&b, r, DEFAULT_SEARCH_BUDGET) {
                SearchOutcome::Found(_) => {
                    matched = Some(i);
                    break;
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
        match matched {
            Some(i) if b.raw_mul() < reps[i].raw_mul() => reps[i] = b,
            Some(_) => {}
            None => reps.push(b),
        }
    }
    Ok(buckets.into_values().flatten().collect())
}

/// Every brace of order `n` up to isomorphism, grouped by additive group.
pub fn braces_of_order(n: usize, caps: &EnumerationCaps) -> Result<Vec<(AbelianGroupSpec, Vec<FiniteBrace>)>> {
    AbelianGroupSpec::all_of_order(n)
        .into_iter()
        .map(|g| {
            let b = cached_braces(&g, caps)?;
            Ok((g, b))
        })
        .collect()
}

/// [`enumerate_braces`] up to isomorphism, memoised for the process.
pub fn cached_braces(g: &AbelianGroupSpec, caps: &EnumerationCaps) -> Result<Vec<FiniteBrace>> {
    static CACHE: OnceLock<Mutex<HashMap<AbelianGroupSpec, Vec<FiniteBrace>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("cache lock").get(g) {
        return Ok(v.clone());
    }
    let v = enumerate_braces(g, true, caps)?;
    cache.lock().expect("cache lock").insert(g.clone(), v.clone());
    Ok(v)
}

/// All braces of order `1..=max_order` up to isomorphism.
pub fn corpus(max_order: usize, caps: &EnumerationCaps) -> Result<Vec<FiniteBrace>> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        for (_, bs) in braces_of_order(n, caps)? {
            out.extend(bs);
        }
    }
    Ok(out)
}
