//! Exact rational helpers shared by the enumeration and cone code.
#![allow(clippy::needless_range_loop)]

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficient ring of a class: arbitrary-precision integers or rationals.
pub trait Scalar:
    Clone + Ord + num_traits::Num + Signed + From<BigInt> + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn to_rational(&self) -> BigRational;
}

impl Scalar for BigInt {
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }
}

impl Scalar for BigRational {
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn ceil(q: &BigRational) -> BigInt {
    q.ceil().to_integer()
}

pub fn floor(q: &BigRational) -> BigInt {
    q.floor().to_integer()
}

/// `floor(sqrt(q))` for `q >= 0`.
pub fn floor_sqrt(q: &BigRational) -> BigInt {
    debug_assert!(!q.is_negative());
    let (n, d) = (q.numer(), q.denom());
    (n * d).sqrt() / d
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn exact_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

/// Integers `x` with `(x - center)^2 <= radius_sq`, as a closed interval.
pub fn integer_window(center: &BigRational, radius_sq: &BigRational) -> Option<(BigInt, BigInt)> {
    if radius_sq.is_negative() {
        return None;
    }
    let s = floor_sqrt(radius_sq);
    let fits = |x: &BigInt| {
        let diff = BigRational::from_integer(x.clone()) - center;
        &(&diff * &diff) <= radius_sq
    };
    let mut hi = floor(center) + &s + 1;
    if !fits(&hi) {
        hi -= 1;
    }
    let mut lo = ceil(center) - &s - 1;
    if !fits(&lo) {
        lo += 1;
    }
    (lo <= hi && fits(&lo)).then_some((lo, hi))
}

/// Solve `a x = b` exactly; `None` when `a` is singular.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let delta = &f * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Rank of a list of row vectors.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        r += 1;
    }
    r
}

/// Basis of the right null space of `rows` (vectors `x` with `row . x = 0`).
pub fn null_space(rows: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pv = m[r][c].clone();
        for v in m[r].iter_mut() {
            *v = &*v / &pv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// Scale a non-zero rational vector to the primitive integer vector on the same ray.
pub fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Counts of positive, negative and zero eigenvalue signs of a symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Sylvester inertia by symmetric Gaussian elimination (congruence), exact.
pub fn signature(gram: &[Vec<BigRational>]) -> Signature {
    let mut m: Vec<Vec<BigRational>> = gram.to_vec();
    let mut n = m.len();
    let mut sig = Signature { positive: 0, negative: 0, zero: 0 };
    while n > 0 {
        let last = n - 1;
        // bring a non-zero diagonal entry to the last position
        if m[last][last].is_zero() {
            if let Some(i) = (0..last).find(|&i| !m[i][i].is_zero()) {
                m.swap(i, last);
                for row in m.iter_mut() {
                    row.swap(i, last);
                }
            } else if let Some(i) = (0..last).find(|&i| !m[i][last].is_zero()) {
                // diagonal is zero but an off-diagonal entry is not: add row/col i
                for j in 0..n {
                    let v = m[i][j].clone();
                    m[last][j] += v;
                }
                for j in 0..n {
                    let v = m[j][i].clone();
                    m[j][last] += v;
                }
            } else {
                sig.zero += 1;
                m.truncate(last);
                for row in m.iter_mut() {
                    row.truncate(last);
                }
                n = last;
                continue;
            }
        }
        let p = m[last][last].clone();
        if p.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        for i in 0..last {
            let f = &m[i][last] / &p;
            for j in 0..last {
                let delta = &f * &m[last][j];
                m[i][j] -= delta;
            }
        }
        m.truncate(last);
        for row in m.iter_mut() {
            row.truncate(last);
        }
        n = last;
    }
    sig
}

/// `Q = L D L^T` for a positive-definite `Q`; returns `(d, l)` with `l` unit lower triangular.
pub fn ldl(q: &[Vec<BigRational>]) -> Option<(Vec<BigRational>, Vec<Vec<BigRational>>)> {
    let n = q.len();
    let mut d = vec![BigRational::zero(); n];
    let mut l = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let mut di = q[i][i].clone();
        for k in 0..i {
            di -= &d[k] * &l[i][k] * &l[i][k];
        }
        if !di.is_positive() {
            return None;
        }
        l[i][i] = BigRational::one();
        for j in i + 1..n {
            let mut v = q[j][i].clone();
            for k in 0..i {
                v -= &d[k] * &l[j][k] * &l[i][k];
            }
            l[j][i] = v / &di;
        }
        d[i] = di;
    }
    Some((d, l))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_matches_scan() {
        for cn in -7..=7 {
            for cd in 1..=4 {
                for rn in -1..=20 {
                    let c = rat(cn, cd);
                    let r = rat(rn, 3);
                    let scan: Vec<i64> = (-20..=20)
                        .filter(|&x| {
                            let diff = rat(x, 1) - &c;
                            &diff * &diff <= r
                        })
                        .collect();
                    let got = integer_window(&c, &r).map(|(lo, hi)| (lo.try_into().unwrap(), hi.try_into().unwrap()));
                    let want = scan.first().map(|&lo| (lo, *scan.last().unwrap()));
                    assert_eq!(got, want, "center {c} radius^2 {r}");
                }
            }
        }
    }

    #[test]
    fn exact_sqrt_of_squares_only() {
        assert_eq!(exact_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(exact_sqrt(&rat(2, 1)), None);
        assert_eq!(exact_sqrt(&rat(-1, 1)), None);
    }

    #[test]
    fn signature_of_lorentzian_forms() {
        let g = |rows: &[&[i64]]| -> Vec<Vec<BigRational>> {
            rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect()
        };
        let hyperbolic = g(&[&[0, 1], &[1, 0]]);
        assert_eq!(signature(&hyperbolic), Signature { positive: 1, negative: 1, zero: 0 });
        let diag = g(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]);
        assert_eq!(signature(&diag), Signature { positive: 1, negative: 2, zero: 0 });
        let degenerate = g(&[&[1, 1], &[1, 1]]);
        assert_eq!(signature(&degenerate), Signature { positive: 1, negative: 0, zero: 1 });
    }

    #[test]
    fn null_space_and_solve() {
        let rows = vec![vec![rat(1, 1), rat(-1, 1), rat(0, 1)]];
        let ns = null_space(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!((&v[0] - &v[1]).is_zero());
        }
        let a = vec![vec![rat(2, 1), rat(1, 1)], vec![rat(1, 1), rat(3, 1)]];
        let x = solve(&a, &[rat(3, 1), rat(4, 1)]).unwrap();
        assert_eq!(x, vec![rat(1, 1), rat(1, 1)]);
        assert_eq!(primitive(&[rat(2, 3), rat(-4, 3)]), vec![int(1), int(-2)]);
    }
}
