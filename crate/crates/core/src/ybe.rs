//! The set-theoretic Yang–Baxter solution of a brace and its checks.

use serde::Serialize;

use crate::brace::FiniteBrace;
use crate::error::{Error, Result};

/// A map `r : X × X → X × X` on `X = {0, ..., n-1}`, stored as a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionMap {
    n: usize,
    table: Vec<(u32, u32)>,
}

impl SolutionMap {
    /// Rejects tables with out-of-range entries or that are not bijective.
    pub fn new(n: usize, table: Vec<(usize, usize)>) -> Result<SolutionMap> {
        if table.len() != n * n {
            return Err(Error::SizeMismatch {
                expected: n * n,
                found: table.len(),
            });
        }
        let mut seen = vec![false; n * n];
        for &(u, v) in &table {
            if u >= n || v >= n {
                return Err(Error::InvalidSpec(format!("pair ({u}, {v}) out of range")));
            }
            if std::mem::replace(&mut seen[u * n + v], true) {
                return Err(Error::InvalidSpec(format!("pair ({u}, {v}) is hit twice")));
            }
        }
        Ok(SolutionMap {
            n,
            table: table.into_iter().map(|(u, v)| (u as u32, v as u32)).collect(),
        })
    }

    /// `r(x, y) = (y, x)`.
    pub fn flip(n: usize) -> SolutionMap {
        let table = (0..n * n).map(|i| ((i % n) as u32, (i / n) as u32)).collect();
        SolutionMap { n, table }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        let (u, v) = self.table[x * self.n + y];
        (u as usize, v as usize)
    }

    pub fn entries(&self) -> Vec<(usize, usize)> {
        self.table.iter().map(|&(u, v)| (u as usize, v as usize)).collect()
    }
}

/// `r(x, y) = (λ_x(y), λ_{λ_x(y)}⁻¹(x))`, certified to satisfy
/// `λ_x(y) · λ_{λ_x(y)}⁻¹(x) = xy`.
pub fn associated_solution(a: &FiniteBrace) -> Result<SolutionMap> {
    let n = a.order();
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let u = a.lambda(x, y);
            let v = a.lambda(a.inv(u), x);
            if a.mul(u, v) != a.mul(x, y) {
                return Err(Error::Engine(format!(
                    "associated solution does not preserve the product at ({x}, {y})"
                )));
            }
            table.push((u, v));
        }
    }
    SolutionMap::new(n, table)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Degeneracy {
    /// `y ↦ r(x, y)₁` is not a bijection for this `x`.
    Left(usize),
    /// `x ↦ r(x, y)₂` is not a bijection for this `y`.
    Right(usize),
}

/// Least violations of each property; `None` means the property holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionReport {
    pub braid_witness: Option<(usize, usize, usize)>,
    pub involutive_witness: Option<(usize, usize)>,
    pub degeneracy_witness: Option<Degeneracy>,
}

impl SolutionReport {
    pub fn braid(&self) -> bool {
        self.braid_witness.is_none()
    }

    pub fn involutive(&self) -> bool {
        self.involutive_witness.is_none()
    }

    pub fn nondegenerate(&self) -> bool {
        self.degeneracy_witness.is_none()
    }

    pub fn all_pass(&self) -> bool {
        self.braid() && self.involutive() && self.nondegenerate()
    }
}

pub fn check_solution(r: &SolutionMap) -> SolutionReport {
    SolutionReport {
        braid_witness: braid_violation(r),
        involutive_witness: involutive_violation(r),
        degeneracy_witness: degeneracy(r),
    }
}

fn braid_violation(r: &SolutionMap) -> Option<(usize, usize, usize)> {
    let n = r.n;
    let r12 = |(x, y, z): (usize, usize, usize)| {
        let (u, v) = r.apply(x, y);
        (u, v, z)
    };
    let r23 = |(x, y, z): (usize, usize, usize)| {
        let (u, v) = r.apply(y, z);
        (x, u, v)
    };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let t = (x, y, z);
                if r12(r23(r12(t))) != r23(r12(r23(t))) {
                    return Some(t);
                }
            }
        }
    }
    None
}

fn involutive_violation(r: &SolutionMap) -> Option<(usize, usize)> {
    let n = r.n;
    (0..n * n).map(|i| (i / n, i % n)).find(|&(x, y)| {
        let (u, v) = r.apply(x, y);
        r.apply(u, v) != (x, y)
    })
}

fn degeneracy(r: &SolutionMap) -> Option<Degeneracy> {
    let n = r.n;
    let mut seen = vec![false; n];
    let mut bijective = |f: &dyn Fn(usize) -> usize| {
        seen.iter_mut().for_each(|s| *s = false);
        (0..n).all(|i| !std::mem::replace(&mut seen[f(i)], true))
    };
    for x in 0..n {
        if !bijective(&|y| r.apply(x, y).0) {
            return Some(Degeneracy::Left(x));
        }
    }
    for y in 0..n {
        if !bijective(&|x| r.apply(x, y).1) {
            return Some(Degeneracy::Right(y));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extraspecial::{family, Family, FamilySpec};

    fn fam(f: Family, m: u32, p: u32) -> FiniteBrace {
        family(&FamilySpec::new(f, m, p).unwrap())
    }

    #[test]
    fn abelian_brace_gives_flip() {
        let a = FiniteBrace::abelian(&[2, 3]).unwrap();
        assert_eq!(associated_solution(&a).unwrap(), SolutionMap::flip(6));
        assert!(check_solution(&SolutionMap::flip(5)).all_pass());
    }

    #[test]
    fn e0_1_2_values() {
        let b = fam(Family::E0, 1, 2);
        let c = b.codec();
        let (x, xx) = (c.encode(&[1, 0]), c.encode(&[1, 1]));
        let r = associated_solution(&b).unwrap();
        assert_eq!(r.apply(x, x), (xx, xx));
        assert_eq!(b.mul(x, x), c.encode(&[0, 1]));
        assert_eq!(b.mul(xx, xx), c.encode(&[0, 1]));
    }

    #[test]
    fn e0_1_3_passes_and_a_transposition_breaks_it() {
        let b = fam(Family::E0, 1, 3);
        let r = associated_solution(&b).unwrap();
        assert!(check_solution(&r).all_pass());
        let mut entries = r.entries();
        let (i, j) = (9 + 3, 4 * 9 + 5);
        entries.swap(i, j);
        let broken = SolutionMap::new(9, entries).unwrap();
        let rep = check_solution(&broken);
        assert!(!rep.braid());
        assert!(rep.braid_witness.is_some());
    }

    #[test]
    fn non_bijective_tables_are_rejected() {
        assert!(SolutionMap::new(2, vec![(0, 0); 4]).is_err());
        assert!(SolutionMap::new(2, vec![(0, 0), (0, 1), (1, 0), (1, 5)]).is_err());
    }

    #[test]
    fn identity_map_is_involutive_but_degenerate() {
        let id = SolutionMap::new(3, (0..9).map(|i| (i / 3, i % 3)).collect()).unwrap();
        let rep = check_solution(&id);
        assert!(rep.braid());
        assert!(rep.involutive());
        assert_eq!(rep.degeneracy_witness, Some(Degeneracy::Left(0)));
    }
}
