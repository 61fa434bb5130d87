//! The finite left brace value type.
//!
//! A brace is stored as two full operation tables over element ids
//! `0..n`, where `0` is the common identity. Every other structure in the
//! crate is computed from these tables.

use std::fmt;

use crate::error::{Error, Result, Table, ValidationError};
use crate::group::{element_order, invariant_factors_from_orders, prime_divisors};
use crate::mask::SubsetMask;

/// Largest order any constructor will build unless told otherwise.
pub const DEFAULT_MAX_ORDER: usize = 4096;

/// Bijection between element ids and tuples `(k_1, ..., k_d)` with
/// `0 ≤ k_i < radix_i`, where `k_1` is the most significant digit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementTupleCodec {
    radices: Vec<usize>,
}

impl ElementTupleCodec {
    pub fn new(radices: Vec<usize>) -> Self {
        assert!(radices.iter().all(|&r| r >= 1), "radices must be positive");
        ElementTupleCodec { radices }
    }

    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    pub fn size(&self) -> usize {
        self.radices.iter().product()
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        assert_eq!(tuple.len(), self.radices.len(), "tuple length");
        tuple.iter().zip(&self.radices).fold(0, |acc, (&k, &r)| {
            assert!(k < r, "digit {k} out of range for radix {r}");
            acc * r + k
        })
    }

    pub fn decode(&self, mut id: usize) -> Vec<usize> {
        let mut out = vec![0; self.radices.len()];
        for (slot, &r) in out.iter_mut().zip(&self.radices).rev() {
            *slot = id % r;
            id /= r;
        }
        out
    }

    pub fn concat(&self, other: &ElementTupleCodec) -> ElementTupleCodec {
        let mut radices = self.radices.clone();
        radices.extend_from_slice(&other.radices);
        ElementTupleCodec { radices }
    }

    pub fn format(&self, id: usize) -> String {
        let t = self.decode(id);
        if t.len() == 1 {
            return t[0].to_string();
        }
        let parts: Vec<String> = t.iter().map(ToString::to_string).collect();
        format!("({})", parts.join(","))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteBrace {
    n: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    add_orders: Vec<usize>,
    primes: Vec<usize>,
    additive_shape: Vec<usize>,
    codec: ElementTupleCodec,
}

impl fmt::Debug for FiniteBrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteBrace")
            .field("order", &self.n)
            .field("additive_shape", &self.additive_shape)
            .field("codec", &self.codec.radices)
            .finish_non_exhaustive()
    }
}

impl FiniteBrace {
    /// Checks every axiom and returns the certified brace.
    ///
    /// Both tables must use `0` as identity; tables with another identity
    /// are rejected rather than relabelled.
    pub fn validate(
        add: &[Vec<usize>],
        mul: &[Vec<usize>],
    ) -> std::result::Result<FiniteBrace, ValidationError> {
        let n = add.len();
        if n == 0 {
            return Err(ValidationError::Empty);
        }
        if mul.len() != n {
            return Err(ValidationError::SizeMismatch {
                add: n,
                mul: mul.len(),
            });
        }
        let flat_add = flatten(add, n, Table::Add)?;
        let flat_mul = flatten(mul, n, Table::Mul)?;

        let add_id = find_identity(&flat_add, n).ok_or(ValidationError::NoIdentity { table: Table::Add })?;
        let mul_id = find_identity(&flat_mul, n).ok_or(ValidationError::NoIdentity { table: Table::Mul })?;
        if add_id != mul_id {
            return Err(ValidationError::IdentitiesDiffer {
                add: add_id,
                mul: mul_id,
            });
        }
        if add_id != 0 {
            return Err(ValidationError::IdentityNotZero {
                table: Table::Add,
                identity: add_id,
            });
        }
        check_group(&flat_add, n, Table::Add)?;
        check_group(&flat_mul, n, Table::Mul)?;
        for a in 0..n {
            for b in 0..a {
                if flat_add[a * n + b] != flat_add[b * n + a] {
                    return Err(ValidationError::AddNotAbelian { a: b, b: a });
                }
            }
        }
        let brace = FiniteBrace::from_tables(n, flat_add, flat_mul, ElementTupleCodec::new(vec![n]));
        if let Some((a, b, c)) = brace.brace_law_violation() {
            return Err(ValidationError::BraceLaw { a, b, c });
        }
        Ok(brace)
    }

    /// Builds a brace from tables that are correct by construction.
    pub(crate) fn from_tables(
        n: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
        codec: ElementTupleCodec,
    ) -> FiniteBrace {
        debug_assert_eq!(add.len(), n * n);
        debug_assert_eq!(mul.len(), n * n);
        debug_assert_eq!(codec.size(), n);
        let mut neg = vec![0u32; n];
        let mut inv = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if add[a * n + b] == 0 {
                    neg[a] = b as u32;
                }
                if mul[a * n + b] == 0 {
                    inv[a] = b as u32;
                }
            }
        }
        let add_orders: Vec<usize> = (0..n)
            .map(|x| element_order(x, |a, b| add[a * n + b] as usize))
            .collect();
        let additive_shape = invariant_factors_from_orders(&add_orders);
        FiniteBrace {
            n,
            add,
            mul,
            neg,
            inv,
            add_orders,
            primes: prime_divisors(n),
            additive_shape,
            codec,
        }
    }

    /// The one-element brace.
    pub fn trivial() -> FiniteBrace {
        FiniteBrace::from_tables(1, vec![0], vec![0], ElementTupleCodec::new(vec![1]))
    }

    /// The abelian brace on `Z_{r_1} × ... × Z_{r_k}`, elements encoded as
    /// tuples with `r_1` most significant.
    pub fn abelian(radices: &[usize]) -> Result<FiniteBrace> {
        if radices.iter().any(|&r| r < 1) {
            return Err(Error::InvalidSpec("cyclic factors must be positive".into()));
        }
        let n = radices
            .iter()
            .try_fold(1usize, |acc, &r| acc.checked_mul(r))
            .filter(|&n| n <= DEFAULT_MAX_ORDER)
            .ok_or(Error::CapExceeded {
                what: "abelian brace order",
                limit: DEFAULT_MAX_ORDER,
                actual: usize::MAX,
            })?;
        let codec = ElementTupleCodec::new(if radices.is_empty() {
            vec![1]
        } else {
            radices.to_vec()
        });
        let mut add = vec![0u32; n * n];
        for a in 0..n {
            let ta = codec.decode(a);
            for b in 0..n {
                let tb = codec.decode(b);
                let sum: Vec<usize> = ta
                    .iter()
                    .zip(&tb)
                    .zip(codec.radices())
                    .map(|((x, y), r)| (x + y) % r)
                    .collect();
                add[a * n + b] = codec.encode(&sum) as u32;
            }
        }
        Ok(FiniteBrace::from_tables(n, add.clone(), add, codec))
    }

    /// A brace with the same tables but elements named by `codec`.
    pub fn with_codec(mut self, codec: ElementTupleCodec) -> Result<FiniteBrace> {
        if codec.size() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: codec.size(),
            });
        }
        self.codec = codec;
        Ok(self)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `a ∗ b = ab − a − b`.
    #[inline]
    pub fn star(&self, a: usize, b: usize) -> usize {
        self.sub(self.mul(a, b), self.add(a, b))
    }

    /// `λ_a(b) = ab − a`.
    #[inline]
    pub fn lambda(&self, a: usize, b: usize) -> usize {
        self.sub(self.mul(a, b), a)
    }

    /// `λ_a` as a permutation of the elements.
    pub fn lambda_map(&self, a: usize) -> Vec<usize> {
        (0..self.n).map(|b| self.lambda(a, b)).collect()
    }

    /// `k·a` in the additive group, `k` taken modulo the order of `a`.
    pub fn add_multiple(&self, a: usize, k: usize) -> usize {
        let k = k % self.add_orders[a];
        (0..k).fold(0, |acc, _| self.add(acc, a))
    }

    /// `a^k` in the multiplicative group, `k ≥ 0`.
    pub fn mul_power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn add_order(&self, a: usize) -> usize {
        self.add_orders[a]
    }

    pub fn mul_order(&self, a: usize) -> usize {
        element_order(a, |x, y| self.mul(x, y))
    }

    pub fn is_abelian(&self) -> bool {
        self.add == self.mul
    }

    /// Invariant factors of `(A, +)`, ascending; empty for the trivial brace.
    pub fn additive_shape(&self) -> &[usize] {
        &self.additive_shape
    }

    /// The primes dividing the order.
    pub fn primes(&self) -> &[usize] {
        &self.primes
    }

    /// `Some(p)` when `(A, +)` is an elementary abelian `p`-group.
    pub fn elementary_abelian_prime(&self) -> Option<usize> {
        match self.additive_shape.first() {
            Some(&p) if self.additive_shape.iter().all(|&f| f == p) && self.primes == [p] => Some(p),
            _ => None,
        }
    }

    pub fn is_additively_cyclic(&self) -> bool {
        self.additive_shape.len() <= 1
    }

    pub fn codec(&self) -> &ElementTupleCodec {
        &self.codec
    }

    pub fn format_element(&self, a: usize) -> String {
        self.codec.format(a)
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.n).map(|r| r.iter().map(|&x| x as usize).collect()).collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.n).map(|r| r.iter().map(|&x| x as usize).collect()).collect()
    }

    pub(crate) fn raw_mul(&self) -> &[u32] {
        &self.mul
    }

    pub(crate) fn raw_add(&self) -> &[u32] {
        &self.add
    }

    /// Least triple violating `a(b + c) = ab + ac − a`.
    pub fn brace_law_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    let lhs = self.mul(a, self.add(b, c));
                    let rhs = self.sub(self.add(ab, self.mul(a, c)), a);
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// `A ⊕ B` with componentwise operations; element `(a, b)` has id
    /// `a·|B| + b`.
    pub fn direct_product(&self, other: &FiniteBrace, max_order: usize) -> Result<FiniteBrace> {
        let n = self
            .n
            .checked_mul(other.n)
            .filter(|&n| n <= max_order)
            .ok_or(Error::CapExceeded {
                what: "direct product order",
                limit: max_order,
                actual: self.n.saturating_mul(other.n),
            })?;
        let m = other.n;
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for x in 0..n {
            let (a1, b1) = (x / m, x % m);
            for y in 0..n {
                let (a2, b2) = (y / m, y % m);
                add[x * n + y] = (self.add(a1, a2) * m + other.add(b1, b2)) as u32;
                mul[x * n + y] = (self.mul(a1, a2) * m + other.mul(b1, b2)) as u32;
            }
        }
        Ok(FiniteBrace::from_tables(n, add, mul, self.codec.concat(&other.codec)))
    }

    /// The brace induced on a subbrace, elements relabelled in increasing id
    /// order. Returns the brace and the embedding into `self`.
    pub fn induced(&self, s: &SubsetMask) -> Result<(FiniteBrace, Vec<usize>)> {
        if s.universe() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: s.universe(),
            });
        }
        if let Some(v) = crate::substructures::subbrace_violation(self, s) {
            return Err(Error::Precondition(format!("not a subbrace: {v}")));
        }
        let elems = s.elements();
        let k = elems.len();
        let mut index = vec![usize::MAX; self.n];
        for (i, &e) in elems.iter().enumerate() {
            index[e] = i;
        }
        let mut add = vec![0u32; k * k];
        let mut mul = vec![0u32; k * k];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                add[i * k + j] = index[self.add(a, b)] as u32;
                mul[i * k + j] = index[self.mul(a, b)] as u32;
            }
        }
        Ok((FiniteBrace::from_tables(k, add, mul, ElementTupleCodec::new(vec![k])), elems))
    }

    /// `A / I` for an ideal `I`. Cosets are numbered by their least
    /// representative; the second component maps each element to its coset.
    pub fn quotient(&self, ideal: &SubsetMask) -> Result<(FiniteBrace, Vec<usize>)> {
        if ideal.universe() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: ideal.universe(),
            });
        }
        if let Some(v) = crate::substructures::ideal_violation(self, ideal)? {
            return Err(Error::NotAnIdeal(v.to_string()));
        }
        Ok(self.quotient_unchecked(ideal))
    }

    /// Quotient by a subset already known to be an ideal.
    pub(crate) fn quotient_unchecked(&self, ideal: &SubsetMask) -> (FiniteBrace, Vec<usize>) {
        let n = self.n;
        let mut coset = vec![usize::MAX; n];
        let mut reps = Vec::new();
        let members = ideal.elements();
        for a in 0..n {
            if coset[a] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(a);
            for &i in &members {
                coset[self.add(a, i)] = id;
            }
        }
        let k = reps.len();
        let mut add = vec![0u32; k * k];
        let mut mul = vec![0u32; k * k];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                add[i * k + j] = coset[self.add(a, b)] as u32;
                mul[i * k + j] = coset[self.mul(a, b)] as u32;
            }
        }
        (
            FiniteBrace::from_tables(k, add, mul, ElementTupleCodec::new(vec![k])),
            coset,
        )
    }

    /// Relabels elements by the permutation `perm` (old id → new id), which
    /// must fix 0.
    pub fn relabel(&self, perm: &[usize]) -> FiniteBrace {
        let n = self.n;
        assert_eq!(perm.len(), n);
        assert_eq!(perm[0], 0, "relabelling must fix the identity");
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                add[perm[a] * n + perm[b]] = perm[self.add(a, b)] as u32;
                mul[perm[a] * n + perm[b]] = perm[self.mul(a, b)] as u32;
            }
        }
        FiniteBrace::from_tables(n, add, mul, ElementTupleCodec::new(vec![n]))
    }
}

fn flatten(
    t: &[Vec<usize>],
    n: usize,
    table: Table,
) -> std::result::Result<Vec<u32>, ValidationError> {
    let mut out = Vec::with_capacity(n * n);
    for (row, r) in t.iter().enumerate() {
        if r.len() != n {
            return Err(ValidationError::NotSquare { table });
        }
        for (col, &value) in r.iter().enumerate() {
            if value >= n {
                return Err(ValidationError::EntryOutOfRange {
                    table,
                    row,
                    col,
                    value,
                });
            }
            out.push(value as u32);
        }
    }
    Ok(out)
}

fn find_identity(t: &[u32], n: usize) -> Option<usize> {
    (0..n).find(|&e| (0..n).all(|x| t[e * n + x] as usize == x && t[x * n + e] as usize == x))
}

fn check_group(t: &[u32], n: usize, table: Table) -> std::result::Result<(), ValidationError> {
    let mut seen = vec![false; n];
    for a in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for b in 0..n {
            let v = t[a * n + b] as usize;
            if std::mem::replace(&mut seen[v], true) {
                return Err(ValidationError::NotLatin { table, element: a });
            }
        }
    }
    for b in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for a in 0..n {
            let v = t[a * n + b] as usize;
            if std::mem::replace(&mut seen[v], true) {
                return Err(ValidationError::NotLatin { table, element: b });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = t[a * n + b] as usize;
            for c in 0..n {
                let bc = t[b * n + c] as usize;
                if t[ab * n + c] != t[a * n + bc] {
                    return Err(ValidationError::NotAssociative { table, a, b, c });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extraspecial::{family, Family, FamilySpec};

    fn cyclic(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
    }

    fn e0(m: u32, p: u32) -> FiniteBrace {
        family(&FamilySpec::new(Family::E0, m, p).unwrap())
    }

    #[test]
    fn codec_round_trip() {
        let c = ElementTupleCodec::new(vec![3, 2, 5]);
        for id in 0..30 {
            assert_eq!(c.encode(&c.decode(id)), id);
        }
        assert_eq!(c.encode(&[1, 0, 0]), 10);
        assert_eq!(c.format(10), "(1,0,0)");
    }

    #[test]
    fn cyclic_tables_validate() {
        let c4 = FiniteBrace::validate(&cyclic(4), &cyclic(4)).unwrap();
        assert!(c4.is_abelian());
        assert_eq!(c4.additive_shape(), &[4]);
        assert_eq!(c4.primes(), &[2]);
        assert!(c4.is_additively_cyclic());
    }

    #[test]
    fn validation_errors_are_distinct() {
        assert_eq!(FiniteBrace::validate(&[], &[]), Err(ValidationError::Empty));

        // Non-abelian addition: Sym(3) as both tables.
        let s3 = sym3();
        assert!(matches!(
            FiniteBrace::validate(&s3, &s3),
            Err(ValidationError::AddNotAbelian { .. })
        ));

        // Identity 1 instead of 0.
        let shifted: Vec<Vec<usize>> = (0..3)
            .map(|a| (0..3).map(|b| (a + b + 2) % 3).collect())
            .collect();
        assert!(matches!(
            FiniteBrace::validate(&shifted, &shifted),
            Err(ValidationError::IdentityNotZero { identity: 1, .. })
        ));

        let mut bad = cyclic(3);
        bad[1][1] = 1;
        assert!(matches!(
            FiniteBrace::validate(&cyclic(3), &bad),
            Err(ValidationError::NotLatin { table: Table::Mul, .. })
                | Err(ValidationError::NoIdentity { .. })
        ));

        let mut out_of_range = cyclic(3);
        out_of_range[2][2] = 7;
        assert!(matches!(
            FiniteBrace::validate(&out_of_range, &cyclic(3)),
            Err(ValidationError::EntryOutOfRange { value: 7, .. })
        ));
    }

    #[test]
    fn identities_must_agree() {
        // Multiplication of Z_3 relabelled so its identity is element 1.
        let add = cyclic(3);
        let mul: Vec<Vec<usize>> = (0..3)
            .map(|a| (0..3).map(|b| (a + b + 2) % 3).collect())
            .collect();
        assert_eq!(
            FiniteBrace::validate(&add, &mul),
            Err(ValidationError::IdentitiesDiffer { add: 0, mul: 1 })
        );
    }

    #[test]
    fn brace_law_violation_reports_witness() {
        // C4 relabelled by swapping 1 and 2 is a group, but λ_2 is not
        // additive for the usual C4 addition.
        let pi = [0, 2, 1, 3];
        let mul: Vec<Vec<usize>> = (0..4)
            .map(|a| (0..4).map(|b| pi[(pi[a] + pi[b]) % 4]).collect())
            .collect();
        match FiniteBrace::validate(&cyclic(4), &mul) {
            Err(ValidationError::BraceLaw { a, b, c }) => {
                let lhs = mul[a][(b + c) % 4];
                let rhs = (mul[a][b] + mul[a][c] + 4 - a) % 4;
                assert_ne!(lhs, rhs);
            }
            other => panic!("expected brace-law failure, got {other:?}"),
        }
    }

    #[test]
    fn swapped_entry_in_e0_1_2_is_rejected() {
        let b = e0(1, 2);
        let add = b.add_table();
        let mut mul = b.mul_table();
        let (x, y) = (mul[2][2], mul[2][3]);
        mul[2][2] = y;
        mul[2][3] = x;
        let err = FiniteBrace::validate(&add, &mul).unwrap_err();
        assert!(
            matches!(
                err,
                ValidationError::BraceLaw { .. }
                    | ValidationError::NotLatin { .. }
                    | ValidationError::NotAssociative { .. }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn star_and_lambda() {
        let b = e0(1, 3);
        let c = b.codec().clone();
        for a in 0..b.order() {
            assert_eq!(b.star(a, 0), 0);
        }
        let x = c.encode(&[1, 0]);
        assert_eq!(b.star(x, x), c.encode(&[0, 1]));
        assert_eq!(b.lambda(x, x), c.encode(&[1, 1]));
        assert_eq!(b.lambda_map(0), (0..9).collect::<Vec<_>>());

        let b2 = e0(1, 2);
        let y = b2.codec().encode(&[1, 1]);
        let l = b2.lambda_map(y);
        let twice: Vec<usize> = (0..4).map(|i| l[l[i]]).collect();
        assert_eq!(twice, (0..4).collect::<Vec<_>>());
    }

    #[test]
    fn products_and_quotients() {
        let a = e0(1, 2);
        let t = FiniteBrace::trivial();
        let p = a.direct_product(&t, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(p.add_table(), a.add_table());
        assert_eq!(p.mul_table(), a.mul_table());

        let c3 = FiniteBrace::abelian(&[3]).unwrap();
        let prod = a.direct_product(&c3, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(prod.order(), 12);
        for x in 0..12 {
            for y in 0..12 {
                let s = prod.star(x, y);
                assert_eq!(s / 3, a.star(x / 3, y / 3));
                assert_eq!(s % 3, c3.star(x % 3, y % 3));
            }
        }
        assert!(matches!(
            a.direct_product(&c3, 10),
            Err(Error::CapExceeded { .. })
        ));

        let (q, proj) = a.quotient(&SubsetMask::full(4)).unwrap();
        assert_eq!(q.order(), 1);
        assert!(proj.iter().all(|&c| c == 0));

        let b = e0(1, 3);
        let centre = SubsetMask::from_elements(9, [0, 1, 2]);
        let (q, proj) = b.quotient(&centre).unwrap();
        assert_eq!(q.order(), 3);
        assert!(q.is_abelian());
        for x in 0..9 {
            for y in 0..9 {
                assert_eq!(proj[b.star(x, y)], q.star(proj[x], proj[y]));
            }
        }
        let not_ideal = SubsetMask::from_elements(9, [0, 3, 6]);
        assert!(matches!(b.quotient(&not_ideal), Err(Error::NotAnIdeal(_))));
    }

    fn sym3() -> Vec<Vec<usize>> {
        // Permutations of {0,1,2} in a fixed order, identity first.
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        (0..6)
            .map(|a| {
                (0..6)
                    .map(|b| {
                        let (pa, pb) = (perms[a], perms[b]);
                        idx([pa[pb[0]], pa[pb[1]], pa[pb[2]]])
                    })
                    .collect()
            })
            .collect()
    }
}
