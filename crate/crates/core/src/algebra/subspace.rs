use std::fmt;

use super::fp::FpVector;
use crate::error::AlgebraError;

/// A subspace of `F_p^d`, stored by its reduced row-echelon basis so that
/// equal subspaces have equal representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    p: u32,
    ambient_dim: usize,
    basis: Vec<FpVector>,
}

impl Subspace {
    pub fn zero(p: u32, ambient_dim: usize) -> Self {
        Subspace {
            p,
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(p: u32, ambient_dim: usize) -> Self {
        Subspace {
            p,
            ambient_dim,
            basis: (0..ambient_dim)
                .map(|i| FpVector::unit(p, ambient_dim, i))
                .collect(),
        }
    }

    /// The span of `vectors`, which must all live in `F_p^ambient_dim`.
    pub fn span(p: u32, ambient_dim: usize, vectors: &[FpVector]) -> Result<Self, AlgebraError> {
        for v in vectors {
            if v.modulus() != p {
                return Err(AlgebraError::ModulusMismatch(p, v.modulus()));
            }
            if v.dim() != ambient_dim {
                return Err(AlgebraError::DimensionMismatch {
                    expected: ambient_dim,
                    found: v.dim(),
                });
            }
        }
        let rows: Vec<Vec<u32>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
        let basis = rref(p, rows)
            .into_iter()
            .map(|r| FpVector::from_reduced(p, r))
            .collect();
        Ok(Subspace {
            p,
            ambient_dim,
            basis,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[FpVector] {
        &self.basis
    }

    pub fn contains(&self, v: &FpVector) -> bool {
        let mut rows: Vec<Vec<u32>> = self.basis.iter().map(|b| b.coords().to_vec()).collect();
        rows.push(v.coords().to_vec());
        rref(self.p, rows).len() == self.basis.len()
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // U ∩ W = (U^⊥ + W^⊥)^⊥ for the standard dot product.
        let u_perp = null_space(self.p, self.ambient_dim, &rows_of(self));
        let w_perp = null_space(self.p, self.ambient_dim, &rows_of(other));
        let mut both = u_perp;
        both.extend(w_perp);
        let basis = null_space(self.p, self.ambient_dim, &both)
            .into_iter()
            .map(|r| FpVector::from_reduced(self.p, r))
            .collect::<Vec<_>>();
        Subspace::span(self.p, self.ambient_dim, &basis).expect("same ambient space")
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.p, self.ambient_dim, &all).expect("same ambient space")
    }

    /// Every vector of the subspace, in lexicographic order of coordinates.
    pub fn vectors(&self) -> Vec<FpVector> {
        let mut out: Vec<FpVector> = FpVector::all(self.p, self.dim())
            .map(|coeffs| {
                self.basis
                    .iter()
                    .zip(coeffs.coords())
                    .fold(FpVector::zero(self.p, self.ambient_dim), |acc, (b, &c)| {
                        acc.add(&b.scale(c))
                    })
            })
            .collect();
        out.sort();
        out
    }

    /// Every subspace of `F_p^d`, each exactly once. Exponential; for tests
    /// and exhaustive checks on tiny spaces.
    pub fn all_subspaces(p: u32, d: usize) -> Vec<Subspace> {
        let mut found = vec![Subspace::zero(p, d)];
        let mut frontier = found.clone();
        let vectors: Vec<FpVector> = FpVector::all(p, d).skip(1).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for v in &vectors {
                    if s.contains(v) {
                        continue;
                    }
                    let mut b = s.basis.clone();
                    b.push(v.clone());
                    let t = Subspace::span(p, d, &b).expect("ambient");
                    if !found.contains(&t) {
                        found.push(t.clone());
                        next.push(t);
                    }
                }
            }
            frontier = next;
        }
        found
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b:?}")?;
        }
        write!(f, "⟩ ≤ F_{}^{}", self.p, self.ambient_dim)
    }
}

fn rows_of(s: &Subspace) -> Vec<Vec<u32>> {
    s.basis.iter().map(|b| b.coords().to_vec()).collect()
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Reduced row-echelon form; zero rows are dropped.
pub(crate) fn rref(p: u32, mut rows: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let cols = rows.first().map_or(0, Vec::len);
    let pm = p as u64;
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][col], p) as u64;
        for x in rows[rank].iter_mut() {
            *x = (*x as u64 * inv % pm) as u32;
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col] == 0 {
                continue;
            }
            let factor = rows[r][col] as u64;
            for c in 0..cols {
                let sub = factor * rows[rank][c] as u64 % pm;
                rows[r][c] = ((rows[r][c] as u64 + pm - sub) % pm) as u32;
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// Basis (as raw rows) of `{x : row · x = 0 for every row}` in `F_p^n`.
pub(crate) fn null_space(p: u32, n: usize, rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let reduced = rref(p, rows.to_vec());
    let mut pivots = Vec::with_capacity(reduced.len());
    for r in &reduced {
        pivots.push(r.iter().position(|&x| x != 0).expect("rref rows are nonzero"));
    }
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; n];
        v[free] = 1;
        for (r, &pc) in reduced.iter().zip(&pivots) {
            v[pc] = (p - r[free]) % p;
        }
        out.push(v);
    }
    out
}
