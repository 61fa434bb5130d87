//! Exhaustive checks of the structural theorems over braces of small order.
//!
//! Each named check walks a deterministic corpus, counts instances, and keeps
//! the first failure it meets as the least counterexample.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{
    find_isotropic, is_nondegenerate, is_prime, is_strong_nondegenerate, orthogonal, BilinearForm,
    Side, Subspace,
};
use crate::brace::{FiniteBrace, DEFAULT_MAX_ORDER};
use crate::enumeration::{braces_of_order, cached_braces, AbelianGroupSpec, EnumerationCaps};
use crate::error::{Error, Result};
use crate::extraspecial::{
    brace_from_form, classify_strong, dedekind_criterion, family, family_is_strong, FamilySpec,
};
use crate::group::invariant_factors_from_orders;
use crate::mask::SubsetMask;
use crate::series::{
    compute_series, dedekind_structure_decompose, is_dedekind, AllSeries, SeriesKind,
};
use crate::substructures::{
    all_subbraces, annihilators, closure, generated, ideal_violation, is_ideal, is_subbrace,
    multiplicative_group_is_abelian, multiplicative_group_is_dedekind, socle_fix_centre,
    sylow_decomposition, ClosureKind, SUBBRACE_CAP,
};
use crate::ybe::{associated_solution, check_solution};

/// Names accepted by [`verify`].
pub const THEOREMS: &[&str] = &[
    "central-nilpotency",
    "soc-equals-zeta",
    "soc2-reaches-A",
    "structure-decomposition",
    "sylow-decomposition",
    "dedekind-criterion",
    "classification",
    "chevalley-bound",
    "ybe-checks",
    "cyclic-dedekind",
    "counterexamples",
    "family-validity",
    "sufficiency",
    "identities",
    "order-p-in-socle",
    "counterexample-c4xc4",
];

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Largest enumerated order; each check has its own default.
    pub max_order: Option<usize>,
    pub caps: EnumerationCaps,
    /// Seed for the sampled part of `chevalley-bound`.
    pub seed: u64,
    /// Random forms drawn per field in `chevalley-bound`.
    pub random_forms: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_order: None,
            caps: EnumerationCaps::default(),
            seed: 0x5eed,
            random_forms: 2000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub name: String,
    pub instances: usize,
    pub passed: usize,
    /// First failing instance in corpus order.
    pub counterexample: Option<String>,
    pub notes: Vec<String>,
}

impl TheoremReport {
    pub fn pass(&self) -> bool {
        self.counterexample.is_none() && self.instances > 0 && self.passed == self.instances
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({}/{} instances)",
            self.name,
            if self.pass() { "pass" } else { "FAIL" },
            self.passed,
            self.instances
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n  least counterexample: {c}")?;
        }
        for n in &self.notes {
            write!(f, "\n  {n}")?;
        }
        Ok(())
    }
}

struct Tally {
    report: TheoremReport,
}

impl Tally {
    fn new(name: &str) -> Tally {
        Tally {
            report: TheoremReport {
                name: name.to_string(),
                instances: 0,
                passed: 0,
                counterexample: None,
                notes: Vec::new(),
            },
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.report.instances += 1;
        if ok {
            self.report.passed += 1;
        } else if self.report.counterexample.is_none() {
            self.report.counterexample = Some(what());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.report.notes.push(s.into());
    }

    fn finish(self) -> TheoremReport {
        self.report
    }
}

pub fn verify(name: &str, opts: &VerifyOptions) -> Result<TheoremReport> {
    let mo = |d: usize| opts.max_order.unwrap_or(d);
    match name {
        "central-nilpotency" => central_nilpotency(mo(8), opts),
        "soc-equals-zeta" => soc_equals_zeta(mo(8), opts),
        "soc2-reaches-A" => soc2_reaches_a(mo(8), opts),
        "structure-decomposition" => structure_decomposition(mo(8), opts),
        "sylow-decomposition" => sylow(mo(16), opts),
        "dedekind-criterion" => dedekind_criterion_check(),
        "classification" => classification(),
        "chevalley-bound" => chevalley(opts),
        "ybe-checks" => ybe_checks(mo(16), opts),
        "cyclic-dedekind" => cyclic_dedekind(mo(16), opts),
        "counterexamples" => counterexamples(opts),
        "family-validity" => family_validity(),
        "sufficiency" => sufficiency(),
        "identities" => identities(mo(16), opts),
        "order-p-in-socle" => order_p_in_socle(mo(16), opts),
        "counterexample-c4xc4" => counterexample_c4xc4(opts),
        _ => Err(Error::InvalidSpec(format!(
            "unknown theorem {name:?}; expected one of {}",
            THEOREMS.join(", ")
        ))),
    }
}

type Labelled = Vec<(String, FiniteBrace)>;

fn enumerated(max_order: usize, caps: &EnumerationCaps) -> Result<Labelled> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        for (g, bs) in braces_of_order(n, caps)? {
            for (i, b) in bs.into_iter().enumerate() {
                out.push((format!("{g} #{i}"), b));
            }
        }
    }
    Ok(out)
}

fn families(max_p: u32) -> Labelled {
    (2..=max_p)
        .filter(|&p| is_prime(p))
        .flat_map(FamilySpec::all)
        .map(|s| (s.to_string(), family(&s)))
        .collect()
}

fn dedekind(b: &FiniteBrace) -> Result<bool> {
    Ok(is_dedekind(b, DEFAULT_MAX_ORDER)?.dedekind)
}

/// Dedekind braces with elementary abelian additive group: the enumeration
/// up to `max_order` followed by the family braces with `p ≤ 7`.
fn elementary_dedekind(max_order: usize, opts: &VerifyOptions) -> Result<Labelled> {
    let mut out = Vec::new();
    for (l, b) in enumerated(max_order, &opts.caps)?.into_iter().chain(families(7)) {
        if b.order() > 1 && b.elementary_abelian_prime().is_some() && dedekind(&b)? {
            out.push((l, b));
        }
    }
    Ok(out)
}

fn central_nilpotency(max_order: usize, opts: &VerifyOptions) -> Result<TheoremReport> {
    let mut t = Tally::new("central-nilpotency");
    let mut total = 0;
    for (l, b) in enumerated(max_order, &opts.caps)? {
        total += 1;
        if dedekind(&b)? {
            let r = AllSeries::compute(&b)?.report()?;
            t.check(r.central.is_some(), || format!("{l} is Dedekind but not centrally nilpotent"));
        }
    }
    t.note(format!(
        "{} of {total} braces of order ≤ {max_order} are Dedekind",
        t.report.instances
    ));
    Ok(t.finish())
}

/// Pads a chain with its last term so chains of different length compare.
fn term(chain: &[SubsetMask], i: usize) -> &SubsetMask {
    &chain[i.min(chain.len() - 1)]
}

fn soc_equals_zeta(max_order: usize, opts: &VerifyOptions) -> Result<TheoremReport> {
    let mut t = Tally::new("soc-equals-zeta");
    for (l, b) in elementary_dedekind(max_order, opts)? {
        let soc = compute_series(&b, SeriesKind::Socle)?.terms;
        let zeta = compute_series(&b, SeriesKind::Central)?.terms;
        let k = soc.len().max(zeta.len());
        let bad = (0..k).find(|&i| term(&soc, i) != term(&zeta, i));
        t.check(bad.is_none(), || {
            let i = bad.unwrap_or(0);
            format!(
                "{l}: Soc_{i} = {:?} but ζ_{i} = {:?}",
                term(&soc, i).elements(),
                term(&zeta, i).elements()
            )
        });
    }
    Ok(t.finish())
}

fn soc2_reaches_a(max_order: usize, opts: &VerifyOptions) -> Result<TheoremReport> {
    let mut t = Tally::new("soc2-reaches-A");
    for (l, b) in elementary_dedekind(max_order, opts)? {
        let soc = compute_series(&b, SeriesKind::Socle)?;
        let r = AllSeries::compute(&b)?.report()?;
        let ok = soc.reached_terminal && soc.length() <= 2 && r.central.is_some_and(|c| c <= 2);
        t.check(ok, || {
            format!(
                "{l}: socle series sizes {:?}, central level {:?}",
                soc.terms.iter().map(SubsetMask::len).collect::<Vec<_>>(),
                r.central
            )
        });
    }
    Ok(t.finish())
}

fn structure_decomposition(max_order: usize, opts: &VerifyOptions) -> Result<TheoremReport> {
    let mut t = Tally::new("structure-decomposition");
    let mut strong = 0;
    for (l, b) in elementary_dedekind(max_order, opts)? {
        match dedekind_structure_decompose(&b, DEFAULT_MAX_ORDER) {
            Ok(d) => {
                strong += usize::from(d.e_strong_extraspecial);
                let ok = d.certified
                    && (d.e_strong_extraspecial || d.e.is_trivial())
                    && (d.b.len() == 1 || d.b.len() == d.p);
                t.check(ok, || format!("{l}: decomposition {d:?}"));
            }
            Err(e) if e.is_cap() => return Err(e),
            Err(e) => t.check(false, || format!("{l}: {e}")),
        }
    }
    t.note(format!("{strong} with a strong extraspecial summand"));
    Ok(t.finish())
}

fn sylow(max_order: usize, opts: &VerifyOptions) -> Result<TheoremReport> {
    let mut t = Tally::new("sylow-decomposition");
    for (l, b) in enumerated(max_order, &opts.caps)?.into_iter().chain(families(5)) {
        if dedekind(&b)? {
            let s = sylow_decomposition(&b)?;
            t.check(s.direct_sum, || {
                let c = s.components.iter().find(|c| !c.is_ideal);
                format!("{l}: Sylow component {:?} is not an ideal", c.map(|c| c.mask.elements()))
            });
        }
    }
    Ok(t.finish())
}

fn order_p_in_socle(max_order: usize, opts: &VerifyOptions) -> Result<TheoremReport> {
    let mut t = Tally::new("order-p-in-socle");
    for (l, b) in enumerated(max_order, &opts.caps)?.into_iter().chain(families(5)) {
        if b.primes().len() != 1 || !dedekind(&b)? {
            continue;
        }
        let p = b.primes()[0];
        let soc = socle_fix_centre(&b)?.soc;
        let bad = (0..b.order()).find(|&x| {
            let s = generated(&b, x);
            s.len() == p && !s.is_subset(&soc)
        });
        t.check(bad.is_none(), || {
            format!("{l}: <{}> has order {p} and is not in Soc", b.format_element(bad.unwrap_or(0)))
        });
    }
    Ok(t.finish())
}

fn dedekind_criterion_check() -> Result<TheoremReport> {
    let mut t = Tally::new("dedekind-criterion");
    for p in [2, 3, 5, 7] {
        let mut yes = Vec::new();
        for spec in FamilySpec::all(p) {
            let d = dedekind(&family(&spec))?;
            let c = dedekind_criterion(&spec);
            if d {
                yes.push(spec.to_string());
            }
            t.check(d == c, || format!("{spec}: Dedekind test {d}, polynomial criterion {c}"));
        }
        t.note(format!("p = {p}: Dedekind {}", yes.join(" ")));
    }
    Ok(t.finish())
}

fn family_validity() -> Result<TheoremReport> {
    let mut t = Tally::new("family-validity");
    for p in [2, 3, 5, 7] {
        for spec in FamilySpec::all(p) {
            let b = family(&spec);
            let (add, mul) = (b.add_table(), b.mul_table());
            let valid = FiniteBrace::validate(&add, &mul);
            let from_form = brace_from_form(&spec.form())?;
            let ok = valid.is_ok() && from_form.mul_table() == mul && from_form.add_table() == add;
            t.check(ok, || match valid {
                Err(e) => format!("{spec}: {e}"),
                Ok(_) => format!("{spec}: tables differ from the form construction"),
            });
        }
    }
    Ok(t.finish())
}

fn sufficiency() -> Result<TheoremReport> {
    let mut t = Tally::new("sufficiency");
    for p in [2u32, 3, 5] {
        let strong: Vec<FamilySpec> = FamilySpec::all(p).into_iter().filter(family_is_strong).collect();
        for spec in &strong {
            let e = family(spec);
            let mut k = 0;
            while (p as usize).pow(k) <= 9 {
                let z = FiniteBrace::abelian(&vec![p as usize; k as usize])?;
                let a = e.direct_product(&z, DEFAULT_MAX_ORDER)?;
                let v = is_dedekind(&a, DEFAULT_MAX_ORDER)?;
                t.check(v.dedekind, || {
                    format!(
                        "{spec} ⊕ C{p}^{k}: subbrace {:?} is not an ideal",
                        v.witness.as_ref().map(SubsetMask::elements)
                    )
                });
                k += 1;
            }
        }
    }
    Ok(t.finish())
}

fn classification() -> Result<TheoremReport> {
    let mut t = Tally::new("classification");
    for p in [2u32, 3, 5] {
        let mut counts = std::collections::BTreeMap::<String, usize>::new();
        for dim in 1..=2 {
            for phi in BilinearForm::all(p, dim) {
                if !is_strong_nondegenerate(&phi)? {
                    continue;
                }
                let e = brace_from_form(&phi)?;
                let bound = e.order() <= (p as usize).pow(3);
                match classify_strong(&e) {
                    Ok(c) => {
                        *counts.entry(c.spec.to_string()).or_default() += 1;
                        t.check(bound && c.witness.is_bijective(), || {
                            format!("form {:?} over F{p}", phi.matrix())
                        });
                    }
                    Err(err) if err.is_cap() => return Err(err),
                    Err(err) => t.check(false, || format!("form {:?} over F{p}: {err}", phi.matrix())),
                }
            }
        }
        // No strong form in dimension 3, so nothing above p³.
        if p <= 3 {
            for phi in BilinearForm::all(p, 3) {
                let strong = is_strong_nondegenerate(&phi)?;
                t.check(!strong, || format!("strong form {:?} of dimension 3 over F{p}", phi.matrix()));
            }
        }
        let summary: Vec<String> = counts.iter().map(|(k, v)| format!("{k}×{v}")).collect();
        t.note(format!("F{p}: {}", summary.join(" ")));
    }
    Ok(t.finish())
}

fn random_form(rng: &mut ChaCha8Rng, p: u32, dim: usize) -> Result<BilinearForm> {
    let m = (0..dim)
        .map(|_| (0..dim).map(|_| rng.gen_range(0..p) as i64).collect())
        .collect();
    Ok(BilinearForm::new(p, m)?)
}

fn chevalley(opts: &VerifyOptions) -> Result<TheoremReport> {
    let mut t = Tally::new("chevalley-bound");
    for phi in BilinearForm::all(2, 3) {
        t.check(find_isotropic(&phi)?.is_some(), || format!("form {:?} over F2", phi.matrix()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for p in [3, 5] {
        for _ in 0..opts.random_forms {
            let phi = random_form(&mut rng, p, 3)?;
            t.check(find_isotropic(&phi)?.is_some(), || format!("form {:?} over F{p}", phi.matrix()));
        }
    }
    Ok(t.finish())
}

fn ybe_checks(max_order: usize, opts: &VerifyOptions) -> Result<TheoremReport> {
    let mut t = Tally::new("ybe-checks");
    for (l, b) in enumerated(max_order, &opts.caps)?.into_iter().chain(families(5)) {
        let rep = check_solution(&associated_solution(&b)?);
        let soc = compute_series(&b, SeriesKind::Socle)?;
        let mpl = AllSeries::compute(&b)?.report()?.multipermutation_level;
        let linked = mpl == soc.reached_terminal.then(|| soc.length());
        t.check(rep.all_pass() && linked, || format!("{l}: {rep:?}, multipermutation level {mpl:?}"));
    }
    Ok(t.finish())
}

fn cyclic_dedekind(max_order: usize, opts: &VerifyOptions) -> Result<TheoremReport> {
    let mut t = Tally::new("cyclic-dedekind");
    for (l, b) in enumerated(max_order, &opts.caps)? {
        if b.is_additively_cyclic() && multiplicative_group_is_dedekind(&b) {
            let v = is_dedekind(&b, DEFAULT_MAX_ORDER)?;
            t.check(v.dedekind, || {
                format!("{l}: subbrace {:?} is not an ideal", v.witness.map(|w| w.elements()))
            });
        }
    }
    Ok(t.finish())
}

fn mul_invariants(b: &FiniteBrace) -> Vec<usize> {
    let orders: Vec<usize> = (0..b.order()).map(|x| b.mul_order(x)).collect();
    invariant_factors_from_orders(&orders)
}

/// Least `x` whose `⟨x⟩` has order `k` and is not an ideal.
fn non_ideal_of_order(b: &FiniteBrace, k: usize) -> Result<Option<usize>> {
    for x in 0..b.order() {
        let s = generated(b, x);
        if s.len() == k && ideal_violation(b, &s)?.is_some() {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

fn counterexamples(opts: &VerifyOptions) -> Result<TheoremReport> {
    let mut t = Tally::new("counterexamples");

    let g: AbelianGroupSpec = "4,2".parse()?;
    let mut found = None;
    for (i, b) in cached_braces(&g, &opts.caps)?.iter().enumerate() {
        if multiplicative_group_is_abelian(b) && mul_invariants(b) == [2, 4] {
            if let Some(x) = non_ideal_of_order(b, 2)? {
                found = Some((i, b.format_element(x)));
                break;
            }
        }
    }
    t.check(found.is_some(), || {
        "no brace on C4×C2 with multiplicative group C4×C2 has a non-ideal subbrace of order 2".into()
    });
    if let Some((i, x)) = found {
        t.note(format!("C2×C4 #{i}: multiplicative group C2×C4, <{x}> of order 2 is not an ideal"));
    }

    let g: AbelianGroupSpec = "6".parse()?;
    let mut found = None;
    for (i, b) in cached_braces(&g, &opts.caps)?.iter().enumerate() {
        let two = SubsetMask::from_elements(6, (0..6).filter(|&x| b.add_order(x) <= 2));
        if !multiplicative_group_is_abelian(b) && is_subbrace(b, &two) && !is_ideal(b, &two)? {
            found = Some(i);
            break;
        }
    }
    t.check(found.is_some(), || {
        "no brace on C6 with non-abelian multiplicative group has a non-ideal order-2 subbrace".into()
    });
    if let Some(i) = found {
        t.note(format!("C6 #{i}: multiplicative group Sym(3), order-2 subgroup is a subbrace but not an ideal"));
    }
    Ok(t.finish())
}

/// Additive group C4×C4, multiplicative group C8×C2, `Soc₂ = A`, and a
/// non-ideal subbrace of order 2.
fn counterexample_c4xc4(opts: &VerifyOptions) -> Result<TheoremReport> {
    let mut t = Tally::new("counterexample-c4xc4");
    let g: AbelianGroupSpec = "4,4".parse()?;
    let braces = cached_braces(&g, &opts.caps)?;
    let mut found = Vec::new();
    for (i, b) in braces.iter().enumerate() {
        if !multiplicative_group_is_abelian(b) || mul_invariants(b) != [2, 8] {
            continue;
        }
        let soc = compute_series(b, SeriesKind::Socle)?;
        if soc.reached_terminal && soc.length() <= 2 {
            if let Some(x) = non_ideal_of_order(b, 2)? {
                found.push(format!("C4×C4 #{i} (<{}>)", b.format_element(x)));
            }
        }
    }
    t.check(!found.is_empty(), || "no brace on C4×C4 has all the listed properties".into());
    if !found.is_empty() {
        t.note(format!("{} of {} braces qualify: {}", found.len(), braces.len(), found.join(", ")));
    }
    Ok(t.finish())
}

fn identities(max_order: usize, opts: &VerifyOptions) -> Result<TheoremReport> {
    let mut t = Tally::new("identities");
    let corpus: Labelled = enumerated(max_order, &opts.caps)?.into_iter().chain(families(5)).collect();
    for (l, b) in &corpus {
        star_identities(&mut t, l, b);
        powers_of_square_zero(&mut t, l, b);
        series_criteria(&mut t, l, b)?;
        if b.order() <= 16 {
            annihilator_statements(&mut t, l, b)?;
        }
        if b.order() <= 8 {
            // Every subset: the two ideal tests must agree or this errors.
            for bits in 1u32..(1 << b.order()) {
                let s = SubsetMask::from_elements(b.order(), (0..b.order()).filter(|i| bits >> i & 1 == 1));
                let r = ideal_violation(b, &s);
                t.check(r.is_ok(), || format!("{l}: {:?}", r.err()));
            }
        }
    }
    form_identities(&mut t)?;
    Ok(t.finish())
}

fn star_identities(t: &mut Tally, l: &str, b: &FiniteBrace) {
    let n = b.order();
    let mut bad = None;
    'outer: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let e1 = b.star(x, b.add(y, z)) == b.add(b.star(x, y), b.star(x, z));
                let rhs = b.add(b.add(b.star(x, b.star(y, z)), b.star(y, z)), b.star(x, z));
                let e2 = b.star(b.mul(x, y), z) == rhs;
                if !(e1 && e2) {
                    bad = Some((x, y, z));
                    break 'outer;
                }
            }
        }
    }
    let hom = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| b.lambda(b.mul(x, y), z) == b.lambda(x, b.lambda(y, z)))));
    t.check(bad.is_none() && hom, || format!("{l}: star identities fail at {bad:?}"));
}

fn powers_of_square_zero(t: &mut Tally, l: &str, b: &FiniteBrace) {
    for a in (0..b.order()).filter(|&a| b.star(a, a) == 0) {
        let k = b.add_order(a);
        let powers = (0..=k).all(|m| b.mul_power(a, m) == b.add_multiple(a, m));
        let n = b.order();
        let add = closure(b, &SubsetMask::singleton(n, a), ClosureKind::Additive);
        let mul = closure(b, &SubsetMask::singleton(n, a), ClosureKind::Multiplicative);
        let gen = generated(b, a);
        let abelian = gen.iter().all(|x| gen.iter().all(|y| b.star(x, y) == 0));
        let ok = powers && b.inv(a) == b.neg(a) && add == mul && mul == gen && abelian;
        t.check(ok, || format!("{l}: a ∗ a = 0 for a = {} but <a> is not cyclic abelian", b.format_element(a)));
    }
}

fn series_criteria(t: &mut Tally, l: &str, b: &FiniteBrace) -> Result<()> {
    let all = AllSeries::compute(b)?;
    let r = all.report()?;
    let reaches = |k: SeriesKind| all.get(k).reached_terminal;
    let level = |k: SeriesKind| reaches(k).then(|| all.get(k).length());
    let ok = level(SeriesKind::Left) == level(SeriesKind::Fix)
        && level(SeriesKind::Right) == level(SeriesKind::Socle)
        && (reaches(SeriesKind::Left) && reaches(SeriesKind::Right)) == reaches(SeriesKind::Central)
        && r.central.is_some() == reaches(SeriesKind::Central);
    t.check(ok, || format!("{l}: series criteria disagree: {r:?}"));
    Ok(())
}

fn is_normal(b: &FiniteBrace, s: &SubsetMask) -> bool {
    (0..b.order()).all(|g| {
        let gi = b.inv(g);
        s.iter().all(|x| s.contains(b.mul(b.mul(g, x), gi)))
    })
}

fn annihilator_statements(t: &mut Tally, l: &str, b: &FiniteBrace) -> Result<()> {
    let n = b.order();
    let subs = all_subbraces(b, SUBBRACE_CAP)?;
    let sfc = socle_fix_centre(b)?;
    let singletons = (0..n).map(|x| (SubsetMask::singleton(n, x), false));
    let subbraces = subs.iter().map(|s| (s.mask.clone(), s.ideal));
    for (s, ideal) in singletons.chain(subbraces) {
        let ann = annihilators(b, &s)?;
        let left_sub = closure(b, &ann.left, ClosureKind::Multiplicative) == ann.left;
        let right_sub = closure(b, &ann.right, ClosureKind::Additive) == ann.right;
        let full_sub = closure(b, &ann.full, ClosureKind::Multiplicative) == ann.full;
        let centralises = ann.full.iter().all(|a| s.iter().all(|x| b.mul(a, x) == b.mul(x, a)));
        let normal = !ideal || (is_normal(b, &ann.left) && is_normal(b, &ann.full));
        t.check(left_sub && right_sub && full_sub && centralises && normal, || {
            format!("{l}: annihilators of {:?} break the subgroup statements", s.elements())
        });
    }
    for s in &subs {
        let abelian = s.mask.iter().all(|x| s.mask.iter().all(|y| b.star(x, y) == 0));
        let in_centre = s.mask.is_subset(&sfc.centre);
        let in_soc = s.mask.is_subset(&sfc.soc);
        let ok = (!in_centre || (s.ideal && abelian)) && (!in_soc || abelian);
        t.check(ok, || format!("{l}: subbrace {:?} of Soc or ζ", s.mask.elements()));
    }
    Ok(())
}

/// `dim U + dim ⊥U − dim(U ∩ V⊥) = dim V`, and three equivalent readings
/// of strong non-degeneracy.
fn form_identities(t: &mut Tally) -> Result<()> {
    for (p, dim) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 2)] {
        let subspaces = Subspace::all_subspaces(p, dim);
        let full = Subspace::full(p, dim);
        for phi in BilinearForm::all(p, dim) {
            let v_perp = orthogonal(&phi, &full, Side::Right)?;
            for u in &subspaces {
                let lhs = u.dim() + orthogonal(&phi, u, Side::Left)?.dim() - u.intersect(&v_perp).dim();
                t.check(lhs == dim, || format!("dimension identity fails for {:?} over F{p}", phi.matrix()));
            }
            let strong = is_strong_nondegenerate(&phi)?;
            let no_isotropic = find_isotropic(&phi)?.is_none();
            let mut every = true;
            for u in subspaces.iter().filter(|u| u.dim() > 0) {
                every &= is_nondegenerate(&phi, u)?;
            }
            t.check(strong == no_isotropic && strong == every, || {
                format!("strong non-degeneracy readings differ for {:?} over F{p}", phi.matrix())
            });
        }
    }
    Ok(())
}
