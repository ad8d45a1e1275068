//! Integer points in (or on) an ellipsoid `(x - c)^T Q (x - c) <= r`, exactly.
//!
//! Fincke-Pohst traversal on the `L D L^T` factorisation of `Q`: coordinates are fixed from the
//! last one down, each confined to the exact integer window left by the ones already chosen.
#![allow(clippy::needless_range_loop)]

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith::{self, exact_sqrt, integer_window};

use super::EnumError;

/// Whether points strictly inside the ellipsoid are wanted or only those on its surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shell {
    Ball,
    Surface,
}

struct Ellipsoid {
    d: Vec<BigRational>,
    l: Vec<Vec<BigRational>>,
    center: Vec<BigRational>,
    shell: Shell,
}

impl Ellipsoid {
    fn new(q: &[Vec<BigRational>], center: &[BigRational], shell: Shell) -> Result<Self, EnumError> {
        let (d, l) = arith::ldl(q).ok_or(EnumError::NotDefinite)?;
        Ok(Self { d, l, center: center.to_vec(), shell })
    }

    /// Centre of coordinate `i` given the coordinates above it.
    fn center_at(&self, i: usize, x: &[BigInt]) -> BigRational {
        let mut c = self.center[i].clone();
        for j in i + 1..x.len() {
            if !self.l[j][i].is_zero() {
                c -= &self.l[j][i] * (BigRational::from_integer(x[j].clone()) - &self.center[j]);
            }
        }
        c
    }

    /// Depth-first search below level `i`, where `x[i+1..]` are fixed and `rem` is the budget left.
    fn search(&self, i: usize, x: &mut Vec<BigInt>, rem: BigRational, out: &mut Vec<Vec<BigInt>>) {
        let c = self.center_at(i, x);
        if i == 0 && self.shell == Shell::Surface {
            let Some(s) = exact_sqrt(&(&rem / &self.d[0])) else { return };
            let mut roots = vec![&c - &s];
            if !s.is_zero() {
                roots.push(&c + &s);
            }
            for v in roots {
                if v.is_integer() {
                    x[0] = v.to_integer();
                    out.push(x.clone());
                }
            }
            return;
        }
        let Some((lo, hi)) = integer_window(&c, &(&rem / &self.d[i])) else { return };
        let mut v = lo;
        while v <= hi {
            let y = BigRational::from_integer(v.clone()) - &c;
            let next = &rem - &self.d[i] * &y * &y;
            x[i] = v.clone();
            if i == 0 {
                out.push(x.clone());
            } else {
                self.search(i - 1, x, next, out);
            }
            v += 1;
        }
    }

    fn top_values(&self, r: &BigRational) -> Vec<BigInt> {
        let n = self.d.len();
        match integer_window(&self.center[n - 1], &(r / &self.d[n - 1])) {
            Some((lo, hi)) => num_iter(lo, hi),
            None => Vec::new(),
        }
    }

    fn points(&self, r: &BigRational) -> Vec<Vec<BigInt>> {
        let n = self.d.len();
        if n == 0 {
            let hit = match self.shell {
                Shell::Ball => !r.is_negative(),
                Shell::Surface => r.is_zero(),
            };
            return if hit { vec![Vec::new()] } else { Vec::new() };
        }
        if r.is_negative() {
            return Vec::new();
        }
        if n == 1 {
            let mut out = Vec::new();
            self.search(0, &mut vec![BigInt::zero()], r.clone(), &mut out);
            return out;
        }
        let top = n - 1;
        let slice = |v: BigInt| {
            let mut x = vec![BigInt::zero(); n];
            let y = BigRational::from_integer(v.clone()) - &self.center[top];
            let next = r - &self.d[top] * &y * &y;
            x[top] = v;
            let mut out = Vec::new();
            self.search(top - 1, &mut x, next, &mut out);
            out
        };
        let mut pts: Vec<Vec<BigInt>> = super::par_flat_map(self.top_values(r), slice);
        pts.sort();
        pts
    }
}

fn num_iter(lo: BigInt, hi: BigInt) -> Vec<BigInt> {
    let mut v = Vec::new();
    let mut x = lo;
    while x <= hi {
        v.push(x.clone());
        x += 1;
    }
    v
}

/// Integer `x` with `(x - c)^T Q (x - c) <= r` (or `= r` on the surface), sorted.
pub fn ellipsoid_points(
    q: &[Vec<BigRational>],
    center: &[BigRational],
    r: &BigRational,
    shell: Shell,
) -> Result<Vec<Vec<BigInt>>, EnumError> {
    check_square(q, center.len())?;
    Ok(Ellipsoid::new(q, center, shell)?.points(r))
}

/// Integer `x` with `x^T Q x + l.x <= r` (or `= r`) for positive-definite `Q`, sorted.
pub fn quadric_points(
    q: &[Vec<BigRational>],
    l: &[BigRational],
    r: &BigRational,
    shell: Shell,
) -> Result<Vec<Vec<BigInt>>, EnumError> {
    let n = l.len();
    check_square(q, n)?;
    if n == 0 {
        return ellipsoid_points(q, &[], r, shell);
    }
    // complete the square: c = -Q^{-1} l / 2
    let two_q: Vec<Vec<BigRational>> = q.iter().map(|row| row.iter().map(|v| v * BigInt::from(2)).collect()).collect();
    let neg_l: Vec<BigRational> = l.iter().map(|v| -v.clone()).collect();
    let c = arith::solve(&two_q, &neg_l).ok_or(EnumError::NotDefinite)?;
    let mut cqc = BigRational::zero();
    for i in 0..n {
        for j in 0..n {
            cqc += &c[i] * &q[i][j] * &c[j];
        }
    }
    ellipsoid_points(q, &c, &(r + cqc), shell)
}

/// Integer vectors `v` with `v.v >= -bound` for a negative-definite Gram matrix.
pub fn short_vectors(gram: &[Vec<BigRational>], bound: &BigRational) -> Result<Vec<Vec<BigInt>>, EnumError> {
    let n = gram.len();
    check_square(gram, n)?;
    let neg: Vec<Vec<BigRational>> = gram.iter().map(|row| row.iter().map(|v| -v.clone()).collect()).collect();
    if (0..n).any(|i| (0..n).any(|j| gram[i][j] != gram[j][i])) {
        return Err(EnumError::NotSymmetric);
    }
    ellipsoid_points(&neg, &vec![BigRational::zero(); n], bound, Shell::Ball)
}

fn check_square(q: &[Vec<BigRational>], n: usize) -> Result<(), EnumError> {
    if q.len() != n || q.iter().any(|row| row.len() != n) {
        return Err(EnumError::Dimension);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect()
    }

    #[test]
    fn short_vector_examples() {
        let one = short_vectors(&m(&[&[-1]]), &rat(1, 1)).unwrap();
        assert_eq!(one.len(), 3);
        let disk = short_vectors(&m(&[&[-1, 0], &[0, -1]]), &rat(2, 1)).unwrap();
        assert_eq!(disk.len(), 9);
        assert!(matches!(short_vectors(&m(&[&[1]]), &rat(1, 1)), Err(EnumError::NotDefinite)));
        assert!(matches!(short_vectors(&m(&[&[-1, 1], &[0, -1]]), &rat(1, 1)), Err(EnumError::NotSymmetric)));
    }

    #[test]
    fn disk_count_matches_scan() {
        for r in 0..30 {
            let pts = short_vectors(&m(&[&[-1, 0], &[0, -1]]), &rat(r, 1)).unwrap();
            let scan =
                (-6i64..=6).flat_map(|x| (-6i64..=6).map(move |y| (x, y))).filter(|(x, y)| x * x + y * y <= r).count();
            assert_eq!(pts.len(), scan, "radius^2 {r}");
        }
    }

    #[test]
    fn surface_points_on_shifted_sphere() {
        // sum (b - 1/2)^2 = 2 + 3/4 in three variables: b^2 - b summing to 2
        let q = m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let c = vec![rat(1, 2); 3];
        let pts = ellipsoid_points(&q, &c, &rat(11, 4), Shell::Surface).unwrap();
        let scan: Vec<Vec<BigInt>> = {
            let mut v = Vec::new();
            for x in -3i64..=4 {
                for y in -3i64..=4 {
                    for z in -3i64..=4 {
                        if x * x - x + y * y - y + z * z - z == 2 {
                            v.push(vec![BigInt::from(x), BigInt::from(y), BigInt::from(z)]);
                        }
                    }
                }
            }
            v
        };
        assert_eq!(pts, scan);
    }

    #[test]
    fn quadric_with_linear_term() {
        // x^2 + y^2 - 2x <= 0  <=>  (x-1)^2 + y^2 <= 1
        let pts = quadric_points(&m(&[&[1, 0], &[0, 1]]), &[rat(-2, 1), rat(0, 1)], &rat(0, 1), Shell::Ball).unwrap();
        assert_eq!(pts.len(), 5);
        assert_eq!(ellipsoid_points(&[], &[], &rat(0, 1), Shell::Surface).unwrap().len(), 1);
    }
}
