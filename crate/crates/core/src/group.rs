//! Small helpers for finite groups given by tables and for finite abelian
//! group invariants.

use std::collections::BTreeMap;

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: usize) -> Vec<usize> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// `Some(p)` when `n = p^k` with `k ≥ 1`.
pub fn prime_power_base(n: usize) -> Option<usize> {
    match factorize(n).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

/// Order of `x` under the operation `op` with identity `0`.
pub fn element_order(x: usize, op: impl Fn(usize, usize) -> usize) -> usize {
    let mut k = 1;
    let mut y = x;
    while y != 0 {
        y = op(y, x);
        k += 1;
    }
    k
}

/// Invariant factors `f_1 | f_2 | ... | f_k` (ascending, all ≥ 2) of the
/// finite abelian group whose element orders are `orders`.
pub fn invariant_factors_from_orders(orders: &[usize]) -> Vec<usize> {
    let n = orders.len();
    let mut per_prime: Vec<(usize, Vec<u32>)> = Vec::new();
    for (p, e_total) in factorize(n) {
        // c_k = #{x : ord(x) | p^k} = p^(Σ_i min(k, e_i)).
        let mut logs = vec![0u32];
        let mut pk = 1usize;
        for _ in 0..e_total {
            pk *= p;
            let c = orders.iter().filter(|&&o| pk % o == 0).count();
            logs.push(ilog(c, p));
        }
        // #{i : e_i ≥ k} = logs[k] - logs[k-1]
        let mut exps = Vec::new();
        for k in 1..logs.len() {
            let at_least_k = logs[k] - logs[k - 1];
            let at_least_next = if k + 1 < logs.len() {
                logs[k + 1] - logs[k]
            } else {
                0
            };
            for _ in 0..(at_least_k - at_least_next) {
                exps.push(k as u32);
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push((p, exps));
    }
    let rank = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors: Vec<usize> = (0..rank)
        .map(|j| {
            per_prime
                .iter()
                .map(|(p, e)| e.get(j).map_or(1, |&k| p.pow(k)))
                .product()
        })
        .collect();
    factors.reverse();
    factors
}

fn ilog(mut c: usize, p: usize) -> u32 {
    let mut k = 0;
    while c > 1 {
        debug_assert_eq!(c % p, 0);
        c /= p;
        k += 1;
    }
    k
}

/// Invariant factors of `Z_{c_1} × ... × Z_{c_k}`.
pub fn normalize_cyclic_factors(cyclic: &[usize]) -> Vec<usize> {
    let mut per_prime: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for &c in cyclic {
        for (p, e) in factorize(c) {
            per_prime.entry(p).or_default().push(e);
        }
    }
    for exps in per_prime.values_mut() {
        exps.sort_unstable_by(|a, b| b.cmp(a));
    }
    let rank = per_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors: Vec<usize> = (0..rank)
        .map(|j| {
            per_prime
                .iter()
                .map(|(p, e)| e.get(j).map_or(1, |&k| p.pow(k)))
                .product()
        })
        .collect();
    factors.reverse();
    factors
}

/// All invariant-factor lists of abelian groups of order `n`, each ascending.
pub fn abelian_groups_of_order(n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![]];
    }
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for part in partitions(e) {
            for prev in &out {
                let mut cyc = prev.clone();
                cyc.extend(part.iter().map(|&k| p.pow(k)));
                next.push(cyc);
            }
        }
        out = next;
    }
    let mut groups: Vec<Vec<usize>> = out.iter().map(|c| normalize_cyclic_factors(c)).collect();
    groups.sort();
    groups.dedup();
    groups
}

/// Integer partitions of `n` as non-increasing lists.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_product_orders(radices: &[usize]) -> Vec<usize> {
        let n: usize = radices.iter().product();
        (0..n)
            .map(|mut x| {
                let mut o = 1;
                for &r in radices.iter().rev() {
                    let k = x % r;
                    x /= r;
                    let ok = r / gcd(r, k);
                    o = o / gcd(o, ok) * ok;
                }
                o
            })
            .collect()
    }

    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(prime_power_base(27), Some(3));
        assert_eq!(prime_power_base(12), None);
        assert_eq!(prime_power_base(1), None);
    }

    #[test]
    fn invariant_factors() {
        assert_eq!(invariant_factors_from_orders(&cyclic_product_orders(&[2, 3])), vec![6]);
        assert_eq!(
            invariant_factors_from_orders(&cyclic_product_orders(&[2, 4])),
            vec![2, 4]
        );
        assert_eq!(
            invariant_factors_from_orders(&cyclic_product_orders(&[2, 2, 3])),
            vec![2, 6]
        );
        assert_eq!(invariant_factors_from_orders(&[1]), Vec::<usize>::new());
        assert_eq!(normalize_cyclic_factors(&[6, 4]), vec![2, 12]);
    }

    #[test]
    fn abelian_group_counts() {
        assert_eq!(abelian_groups_of_order(8), vec![vec![2, 2, 2], vec![2, 4], vec![8]]);
        assert_eq!(abelian_groups_of_order(12), vec![vec![12], vec![2, 6]].into_iter().rev().collect::<Vec<_>>());
        assert_eq!(abelian_groups_of_order(16).len(), 5);
        assert_eq!(abelian_groups_of_order(1), vec![Vec::<usize>::new()]);
        assert_eq!(partitions(4).len(), 5);
    }
}
