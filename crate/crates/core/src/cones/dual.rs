//! Dual cones under the intersection pairing, by incremental double description.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::ConeError;
use crate::arith;
use crate::lattice::{IntClass, Model};

fn rationals(c: &IntClass) -> Vec<BigRational> {
    c.coeffs().iter().cloned().map(BigRational::from_integer).collect()
}

fn dot(x: &[BigRational], y: &[BigRational]) -> BigRational {
    x.iter().zip(y).fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
}

/// Extreme rays of `{x : A x >= 0}` for a full-rank `A`.
fn extreme_rays(rows: &[Vec<BigRational>], n: usize) -> Result<Vec<Vec<BigRational>>, ConeError> {
    if arith::rank(rows) < n {
        return Err(ConeError::Degenerate);
    }
    // start from n independent rows: the cone is simplicial with rays A_S^{-1} e_i
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        let mut trial: Vec<Vec<BigRational>> = basis.iter().map(|&j| rows[j].clone()).collect();
        trial.push(rows[i].clone());
        if arith::rank(&trial) == trial.len() {
            basis.push(i);
        }
        if basis.len() == n {
            break;
        }
    }
    let a_s: Vec<Vec<BigRational>> = basis.iter().map(|&j| rows[j].clone()).collect();
    let mut rays: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut rhs = alloc::vec![BigRational::zero(); n];
            rhs[i] = BigRational::from_integer(BigInt::from(1));
            arith::solve(&a_s, &rhs).ok_or(ConeError::Degenerate)
        })
        .collect::<Result<_, _>>()?;
    let mut seen: Vec<usize> = basis.clone();
    for (i, a) in rows.iter().enumerate() {
        if basis.contains(&i) {
            continue;
        }
        let vals: Vec<BigRational> = rays.iter().map(|r| dot(a, r)).collect();
        let mut next: Vec<Vec<BigRational>> =
            rays.iter().zip(&vals).filter(|(_, v)| !v.is_negative()).map(|(r, _)| r.clone()).collect();
        for (rp, vp) in rays.iter().zip(&vals).filter(|(_, v)| v.is_positive()) {
            for (rn, vn) in rays.iter().zip(&vals).filter(|(_, v)| v.is_negative()) {
                // adjacent rays share n - 2 independent tight constraints
                let tight: Vec<Vec<BigRational>> = seen
                    .iter()
                    .filter(|&&j| dot(&rows[j], rp).is_zero() && dot(&rows[j], rn).is_zero())
                    .map(|&j| rows[j].clone())
                    .collect();
                if n >= 2 && arith::rank(&tight) != n - 2 {
                    continue;
                }
                next.push(rp.iter().zip(rn).map(|(x, y)| vp * y - vn * x).collect());
            }
        }
        seen.push(i);
        rays = next;
    }
    Ok(rays)
}

fn normalise(model: Model, rays: Vec<Vec<BigRational>>) -> Result<Vec<IntClass>, ConeError> {
    let mut out: Vec<IntClass> = rays
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| IntClass::new(model, arith::primitive(&r)))
        .collect::<Result<_, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Extreme rays of `{x : x.g >= 0 for every generator g}`, as primitive classes.
pub fn dual_cone(gens: &[IntClass]) -> Result<Vec<IntClass>, ConeError> {
    let Some(first) = gens.first() else { return Err(ConeError::Degenerate) };
    let model = first.model();
    for g in gens {
        g.check_model(model)?;
    }
    let n = model.rank();
    let gram = model.gram();
    let rows: Vec<Vec<BigRational>> = gens
        .iter()
        .map(|g| {
            let g = rationals(g);
            (0..n).map(|j| dot(&g, &gram.iter().map(|row| row[j].clone()).collect::<Vec<_>>())).collect()
        })
        .collect();
    let rays = normalise(model, extreme_rays(&rows, n)?)?;
    let as_rows: Vec<Vec<BigRational>> = rays.iter().map(rationals).collect();
    // a non-pointed input cone has a dual without interior
    if arith::rank(&as_rows) < n {
        return Err(ConeError::Degenerate);
    }
    Ok(rays)
}

/// Forward null rays spanning the closed positive cone in rank two.
fn null_rays(model: Model) -> Option<[IntClass; 2]> {
    let c = |v: &[i64]| IntClass::from_i64(model, v).expect("rank two");
    match model {
        Model::SphereBundle => Some([c(&[1, 0]), c(&[0, 1])]),
        Model::Blowup(1) => Some([c(&[1, 1]), c(&[1, -1])]),
        _ => None,
    }
}

/// Coefficients of `x` in the basis `u, v` of a rank-two lattice.
fn coords2(u: &IntClass, v: &IntClass, x: &IntClass) -> Option<(BigRational, BigRational)> {
    let (u, v, x) = (u.coeffs(), v.coeffs(), x.coeffs());
    let det = &u[0] * &v[1] - &u[1] * &v[0];
    if det.is_zero() {
        return None;
    }
    let a = BigRational::new(&x[0] * &v[1] - &x[1] * &v[0], det.clone());
    let b = BigRational::new(&u[0] * &x[1] - &u[1] * &x[0], det);
    Some((a, b))
}

fn in_cone2(u: &IntClass, v: &IntClass, x: &IntClass) -> bool {
    coords2(u, v, x).is_some_and(|(a, b)| !a.is_negative() && !b.is_negative())
}

/// Generators of the dual of the curve cone intersected with the closed positive cone.
///
/// In rank two this intersection is computed exactly. In higher rank the positive cone is round,
/// so the result is only polyhedral when every dual ray already has non-negative square.
pub fn dual_curve_cone(gens: &[IntClass]) -> Result<Vec<IntClass>, ConeError> {
    let dual = dual_cone(gens)?;
    let model = dual[0].model();
    if let Some(nulls) = null_rays(model) {
        let [d1, d2] = [&dual[0], &dual[dual.len() - 1]];
        let candidates: Vec<&IntClass> = dual
            .iter()
            .chain(nulls.iter())
            .filter(|x| in_cone2(d1, d2, x) && in_cone2(&nulls[0], &nulls[1], x))
            .collect();
        // the two candidates spanning all the others
        for (i, u) in candidates.iter().enumerate() {
            for v in &candidates[i + 1..] {
                if u != v && candidates.iter().all(|x| in_cone2(u, v, x)) {
                    let mut out = alloc::vec![(*u).clone(), (*v).clone()];
                    out.sort();
                    return Ok(out);
                }
            }
        }
        return Err(ConeError::Degenerate);
    }
    for r in &dual {
        if !r.is_forward_nonnegative() {
            return Err(ConeError::NotPolyhedral { ray: r.clone() });
        }
    }
    Ok(dual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn s(a: i64, b: i64) -> IntClass {
        IntClass::from_i64(Model::SphereBundle, &[a, b]).unwrap()
    }

    fn b1(a: i64, b: i64) -> IntClass {
        IntClass::from_i64(Model::Blowup(1), &[a, b]).unwrap()
    }

    fn sorted(mut v: Vec<IntClass>) -> Vec<IntClass> {
        v.sort();
        v
    }

    #[test]
    fn bundle_duals() {
        for l in 0..6 {
            let got = dual_curve_cone(&[s(0, 1), s(1, -l)]).unwrap();
            assert_eq!(got, sorted(vec![s(1, l), s(0, 1)]), "l = {l}");
            let back = dual_cone(&got).unwrap();
            assert_eq!(back, sorted(vec![s(0, 1), s(1, -l)]));
        }
    }

    #[test]
    fn blowup_one_duals() {
        for l in 0..6 {
            let got = dual_curve_cone(&[b1(1, 1), b1(-l, -(l + 1))]).unwrap();
            assert_eq!(got, sorted(vec![b1(l + 1, l), b1(1, 1)]), "l = {l}");
            assert_eq!(dual_cone(&got).unwrap(), sorted(vec![b1(1, 1), b1(-l, -(l + 1))]));
        }
    }

    #[test]
    fn degenerate_and_higher_rank() {
        assert!(matches!(dual_cone(&[s(1, 0)]), Err(ConeError::Degenerate)));
        assert!(matches!(dual_cone(&[s(1, 0), s(-1, 0), s(0, 1)]), Err(ConeError::Degenerate)));
        let m = Model::Blowup(2);
        let e = |v: &[i64]| IntClass::from_i64(m, v).unwrap();
        // curve cone of the two-point blow-up: its dual is the nef cone <H, H-E1, H-E2>
        let gens = [e(&[0, -1, 0]), e(&[0, 0, -1]), e(&[1, 1, 1])];
        assert_eq!(dual_curve_cone(&gens).unwrap(), sorted(vec![e(&[1, 0, 0]), e(&[1, 1, 0]), e(&[1, 0, 1])]));
        let cube = [e(&[1, 0, 0]), e(&[0, -1, 0]), e(&[0, 0, -1])];
        assert!(matches!(dual_curve_cone(&cube), Err(ConeError::NotPolyhedral { .. })));
    }
}
