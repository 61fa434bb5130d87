//! Bilinear forms on `F_p^d` given by their Gram matrix.

use serde::{Deserialize, Serialize};

use super::fp::{check_prime, FpScalar, FpVector};
use super::subspace::{null_space, Subspace};
use crate::error::AlgebraError;

/// Which side of the form a complement is taken on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `⊥U = {x : φ(x, u) = 0 for all u ∈ U}`
    Left,
    /// `U⊥ = {x : φ(u, x) = 0 for all u ∈ U}`
    Right,
}

/// Exhaustive searches over `F_p^d` refuse spaces larger than this.
pub const MAX_SEARCH_VECTORS: u64 = 1 << 22;

/// `φ(e_i, e_j)` is `matrix[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BilinearForm {
    p: u32,
    dim: usize,
    matrix: Vec<Vec<u32>>,
}

impl BilinearForm {
    pub fn new(p: u32, matrix: Vec<Vec<i64>>) -> Result<Self, AlgebraError> {
        check_prime(p)?;
        let dim = matrix.len();
        for row in &matrix {
            if row.len() != dim {
                return Err(AlgebraError::NotSquare {
                    rows: dim,
                    cols: row.len(),
                });
            }
        }
        let matrix = matrix
            .into_iter()
            .map(|row| row.into_iter().map(|x| x.rem_euclid(p as i64) as u32).collect())
            .collect();
        Ok(BilinearForm { p, dim, matrix })
    }

    pub fn zero(p: u32, dim: usize) -> Result<Self, AlgebraError> {
        Self::new(p, vec![vec![0; dim]; dim])
    }

    pub fn diagonal(p: u32, entries: &[i64]) -> Result<Self, AlgebraError> {
        let d = entries.len();
        let mut m = vec![vec![0i64; d]; d];
        for (i, &e) in entries.iter().enumerate() {
            m[i][i] = e;
        }
        Self::new(p, m)
    }

    /// Every form on `F_p^dim`, indexed row-major with the first entry most
    /// significant.
    pub fn all(p: u32, dim: usize) -> impl Iterator<Item = BilinearForm> {
        FpVector::all(p, dim * dim).map(move |v| BilinearForm {
            p,
            dim,
            matrix: v.coords().chunks(dim.max(1)).map(<[u32]>::to_vec).take(dim).collect(),
        })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.matrix[i][j]
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|&x| x == 0)
    }

    pub(crate) fn eval_raw(&self, x: &[u32], y: &[u32]) -> u32 {
        let p = self.p as u64;
        let mut acc = 0u64;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let mut row = 0u64;
            for (j, &yj) in y.iter().enumerate() {
                row += self.matrix[i][j] as u64 * yj as u64;
            }
            acc = (acc + xi as u64 * (row % p)) % p;
        }
        acc as u32
    }

    fn check_vector(&self, v: &FpVector) -> Result<(), AlgebraError> {
        if v.modulus() != self.p {
            return Err(AlgebraError::ModulusMismatch(self.p, v.modulus()));
        }
        if v.dim() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        Ok(())
    }

    fn check_subspace(&self, u: &Subspace) -> Result<(), AlgebraError> {
        if u.modulus() != self.p {
            return Err(AlgebraError::ModulusMismatch(self.p, u.modulus()));
        }
        if u.ambient_dim() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: u.ambient_dim(),
            });
        }
        Ok(())
    }

    fn check_search_size(&self) -> Result<(), AlgebraError> {
        let size = (self.p as u64).checked_pow(self.dim as u32);
        match size {
            Some(s) if s <= MAX_SEARCH_VECTORS => Ok(()),
            _ => Err(AlgebraError::SearchTooLarge {
                p: self.p,
                dim: self.dim,
            }),
        }
    }

    /// The matrix of `φ` in the basis `b`: entry `(i, j)` is `φ(b_i, b_j)`.
    pub fn gram(&self, basis: &[FpVector]) -> Vec<Vec<u32>> {
        basis
            .iter()
            .map(|x| basis.iter().map(|y| self.eval_raw(x.coords(), y.coords())).collect())
            .collect()
    }
}

/// `xᵀ M y mod p`.
pub fn form_eval(
    phi: &BilinearForm,
    x: &FpVector,
    y: &FpVector,
) -> Result<FpScalar, AlgebraError> {
    phi.check_vector(x)?;
    phi.check_vector(y)?;
    Ok(FpScalar::reduce(phi.eval_raw(x.coords(), y.coords()) as i64, phi.p))
}

pub fn orthogonal(phi: &BilinearForm, u: &Subspace, side: Side) -> Result<Subspace, AlgebraError> {
    phi.check_subspace(u)?;
    let p = phi.p as u64;
    let d = phi.dim;
    // Each basis vector u contributes one linear equation in x.
    let rows: Vec<Vec<u32>> = u
        .basis()
        .iter()
        .map(|b| {
            let b = b.coords();
            (0..d)
                .map(|k| {
                    let s: u64 = (0..d)
                        .map(|l| match side {
                            Side::Left => phi.matrix[k][l] as u64 * b[l] as u64,
                            Side::Right => b[l] as u64 * phi.matrix[l][k] as u64,
                        })
                        .sum();
                    (s % p) as u32
                })
                .collect()
        })
        .collect();
    let basis: Vec<FpVector> = null_space(phi.p, d, &rows)
        .into_iter()
        .map(|r| FpVector::from_reduced(phi.p, r))
        .collect();
    Subspace::span(phi.p, d, &basis)
}

/// Whether the restriction of `φ` to `U` has trivial radical.
pub fn is_nondegenerate(phi: &BilinearForm, u: &Subspace) -> Result<bool, AlgebraError> {
    phi.check_subspace(u)?;
    let gram = phi.gram(u.basis());
    // The restriction is non-degenerate iff its Gram matrix is invertible.
    let rank = super::subspace::rref(phi.p, gram).len();
    Ok(rank == u.dim())
}

/// `φ(x, x) ≠ 0` for every nonzero `x`. Equivalent to non-degeneracy of
/// every nonzero restriction; the equivalence is exercised in tests.
pub fn is_strong_nondegenerate(phi: &BilinearForm) -> Result<bool, AlgebraError> {
    Ok(find_isotropic(phi)?.is_none())
}

/// The lexicographically least nonzero `x` with `φ(x, x) = 0`.
pub fn find_isotropic(phi: &BilinearForm) -> Result<Option<FpVector>, AlgebraError> {
    phi.check_search_size()?;
    Ok(FpVector::all(phi.p, phi.dim)
        .skip(1)
        .find(|x| phi.eval_raw(x.coords(), x.coords()) == 0))
}

/// A basis `b_1..b_d` with `φ(b_i, b_j) = 0` whenever `i > j`.
///
/// Built by taking the least nonzero vector `u` of the current subspace `W`
/// and recursing into `W ∩ ⊥⟨u⟩`. Fails with the least isotropic vector when
/// `φ(x, x) = 0` for some `x ≠ 0`.
pub fn triangularize(phi: &BilinearForm) -> Result<Vec<FpVector>, AlgebraError> {
    if let Some(x) = find_isotropic(phi)? {
        return Err(AlgebraError::Isotropic(x.coords().to_vec()));
    }
    let mut w = Subspace::full(phi.p, phi.dim);
    let mut basis = Vec::with_capacity(phi.dim);
    while w.dim() > 0 {
        let u = w
            .vectors()
            .into_iter()
            .find(|v| !v.is_zero())
            .expect("nonzero subspace has a nonzero vector");
        let line = Subspace::span(phi.p, phi.dim, std::slice::from_ref(&u))?;
        w = w.intersect(&orthogonal(phi, &line, Side::Left)?);
        basis.push(u);
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(p: u32, c: &[i64]) -> FpVector {
        FpVector::new(p, c).unwrap()
    }

    fn span(p: u32, d: usize, vs: &[&[i64]]) -> Subspace {
        let vs: Vec<FpVector> = vs.iter().map(|c| v(p, c)).collect();
        Subspace::span(p, d, &vs).unwrap()
    }

    #[test]
    fn evaluation() {
        let phi = BilinearForm::new(3, vec![vec![1]]).unwrap();
        assert_eq!(form_eval(&phi, &v(3, &[2]), &v(3, &[2])).unwrap().value(), 1);
        assert_eq!(form_eval(&phi, &v(3, &[0]), &v(3, &[2])).unwrap().value(), 0);
        let phi = BilinearForm::diagonal(5, &[2, 1]).unwrap();
        assert_eq!(
            form_eval(&phi, &v(5, &[1, 1]), &v(5, &[1, 1])).unwrap().value(),
            3
        );
        assert!(matches!(
            form_eval(&phi, &v(5, &[1]), &v(5, &[1, 1])),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            form_eval(&phi, &v(3, &[1, 1]), &v(5, &[1, 1])),
            Err(AlgebraError::ModulusMismatch(5, 3))
        ));
    }

    #[test]
    fn complements() {
        let phi = BilinearForm::diagonal(3, &[1, 0]).unwrap();
        let e1 = span(3, 2, &[&[1, 0]]);
        let e2 = span(3, 2, &[&[0, 1]]);
        assert_eq!(orthogonal(&phi, &e1, Side::Left).unwrap(), e2);
        assert_eq!(
            orthogonal(&phi, &e2, Side::Left).unwrap(),
            Subspace::full(3, 2)
        );
        let nd = BilinearForm::diagonal(5, &[2, 1]).unwrap();
        assert_eq!(
            orthogonal(&nd, &Subspace::full(5, 2), Side::Left).unwrap(),
            Subspace::zero(5, 2)
        );
        // A non-symmetric form separates the two sides.
        let skew = BilinearForm::new(2, vec![vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(orthogonal(&skew, &e1_2(), Side::Left).unwrap(), Subspace::full(2, 2));
        assert_eq!(
            orthogonal(&skew, &e1_2(), Side::Right).unwrap(),
            span(2, 2, &[&[1, 0]])
        );
    }

    fn e1_2() -> Subspace {
        span(2, 2, &[&[1, 0]])
    }

    #[test]
    fn nondegeneracy() {
        let phi = BilinearForm::new(7, vec![vec![3]]).unwrap();
        assert!(is_nondegenerate(&phi, &Subspace::full(7, 1)).unwrap());
        let phi = BilinearForm::diagonal(3, &[1, 0]).unwrap();
        assert!(!is_nondegenerate(&phi, &Subspace::full(3, 2)).unwrap());
        let phi = BilinearForm::diagonal(5, &[2, 1]).unwrap();
        assert!(is_nondegenerate(&phi, &span(5, 2, &[&[1, 1]])).unwrap());
        assert!(is_nondegenerate(&phi, &Subspace::zero(5, 2)).unwrap());
    }

    #[test]
    fn strong_nondegeneracy_and_isotropic_vectors() {
        for m in 1..5 {
            assert!(is_strong_nondegenerate(&BilinearForm::new(5, vec![vec![m]]).unwrap()).unwrap());
        }
        let id2 = BilinearForm::diagonal(2, &[1, 1]).unwrap();
        assert!(!is_strong_nondegenerate(&id2).unwrap());
        assert_eq!(find_isotropic(&id2).unwrap(), Some(v(2, &[1, 1])));
        assert!(is_strong_nondegenerate(&BilinearForm::diagonal(5, &[2, 1]).unwrap()).unwrap());
        assert_eq!(
            find_isotropic(&BilinearForm::new(3, vec![vec![2]]).unwrap()).unwrap(),
            None
        );
    }

    #[test]
    fn triangular_bases() {
        let phi = BilinearForm::new(7, vec![vec![4]]).unwrap();
        assert_eq!(triangularize(&phi).unwrap(), vec![v(7, &[1])]);

        let phi = BilinearForm::diagonal(5, &[2, 1]).unwrap();
        let b = triangularize(&phi).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(Subspace::span(5, 2, &b).unwrap().dim(), 2);
        let g = phi.gram(&b);
        assert_eq!(g[1][0], 0);

        let bad = BilinearForm::new(2, vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(triangularize(&bad), Err(AlgebraError::Isotropic(vec![1, 1])));
    }

    #[test]
    fn malformed_forms_are_rejected() {
        assert!(matches!(
            BilinearForm::new(5, vec![vec![1, 2]]),
            Err(AlgebraError::NotSquare { .. })
        ));
        assert!(matches!(
            BilinearForm::new(6, vec![vec![1]]),
            Err(AlgebraError::NotPrime(6))
        ));
        assert!(matches!(
            find_isotropic(&BilinearForm::zero(2, 30).unwrap()),
            Err(AlgebraError::SearchTooLarge { .. })
        ));
    }

    #[test]
    fn zero_dimensional_space() {
        let phi = BilinearForm::zero(3, 0).unwrap();
        assert!(is_strong_nondegenerate(&phi).unwrap());
        assert!(triangularize(&phi).unwrap().is_empty());
        assert_eq!(
            orthogonal(&phi, &Subspace::full(3, 0), Side::Left).unwrap(),
            Subspace::zero(3, 0)
        );
        assert_eq!(BilinearForm::all(3, 0).count(), 1);
    }

    #[test]
    fn all_forms_count() {
        assert_eq!(BilinearForm::all(2, 2).count(), 16);
        assert_eq!(BilinearForm::all(3, 1).count(), 3);
    }
}
