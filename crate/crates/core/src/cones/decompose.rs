//! Writing a point of `P_K` as a positive combination of spherical classes of positive square.
//!
//! The point is bracketed on a line between two points lying on faces `F_E` of the cone. Each face
//! is a copy of the cone one blow-up down, so the two face points decompose by recursion.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{exceptional_basis, in_ck, in_pk, Certificate, Cone, ConeError, Evidence, Verdict};
use crate::arith::{self, floor_sqrt};
use crate::enumerate::is_spherical;
use crate::lattice::{IntClass, Model, RayClass};
use crate::weyl::{self, Root};

type Parts = Vec<(IntClass, BigRational)>;

/// Directions tried per bracketing step before giving up.
const MAX_DIRECTIONS: u64 = 256;
/// Walls added while searching one line before giving up.
const MAX_WALLS: usize = 4096;

/// Strip the last exceptional coordinate of a class on the face `e.E_k = 0`.
pub fn face_restrict(e: &RayClass) -> Result<RayClass, ConeError> {
    let model = e.model();
    let k = match model {
        Model::Blowup(k) if k >= 1 => k as usize,
        _ => return Err(ConeError::NotBlowup(model)),
    };
    let pairing = e.coeffs()[k].clone();
    if !pairing.is_zero() {
        return Err(ConeError::NotOnFace { pairing });
    }
    Ok(e.drop_last())
}

/// Inverse of [`face_restrict`]: append a zero `E_{k+1}` coefficient.
pub fn face_extend(e: &RayClass) -> Result<RayClass, ConeError> {
    match e.model() {
        Model::Blowup(_) => Ok(e.pad()),
        m => Err(ConeError::NotBlowup(m)),
    }
}

/// Decompose an interior point of `P_K`. Points on the boundary or outside are returned with
/// their `P_K` certificate instead.
pub fn decompose_sp(e: &RayClass) -> Result<Certificate, ConeError> {
    let pk = in_pk(e)?;
    if pk.verdict != Verdict::In {
        return Ok(pk);
    }
    let parts = decompose_interior(e)?;
    let mut sum = RayClass::zero(e.model());
    for (c, w) in &parts {
        sum = sum.add_scaled_int(c, w);
    }
    if sum != *e {
        return Err(ConeError::DecompositionFailed { query: e.clone(), reason: "parts do not sum to the query" });
    }
    Ok(Certificate {
        cone: Cone::SkPlus,
        query: e.clone(),
        verdict: Verdict::In,
        evidence: Evidence::Decomposition(parts),
    })
}

fn decompose_interior(e: &RayClass) -> Result<Parts, ConeError> {
    if let Some((p, t)) = e.primitive_ray() {
        if p.square().is_positive() && is_spherical(&p) {
            return Ok(vec_of(p, t));
        }
    }
    let model = e.model();
    let c = e.coeffs();
    match model {
        Model::SphereBundle => {
            // between A_l = H1 + l H2 and B_m = m H1 + H2
            let (x, y) = (&c[0], &c[1]);
            let l = (y / x).floor() + BigRational::one();
            let m = (x / y).floor() + BigRational::one();
            let det = &l * &m - BigRational::one();
            let beta = (x * &l - y) / &det;
            let alpha = (y * &m - x) / &det;
            let a = IntClass::new(model, alloc::vec![BigInt::one(), l.to_integer()])?;
            let b = IntClass::new(model, alloc::vec![m.to_integer(), BigInt::one()])?;
            Ok(merge(alloc::vec![(a, alpha), (b, beta)]))
        }
        Model::Blowup(0) => Ok(vec_of(IntClass::basis(model, 0), c[0].clone())),
        Model::Blowup(1) => {
            // between H and D_s = sH - (s-1)E
            let (x, y) = (&c[0], &c[1]);
            let s = (x / (x - y)).floor() + BigRational::one();
            let beta = y / (&s - BigRational::one());
            let alpha = x - &beta * &s;
            let si = s.to_integer();
            let d = IntClass::new(model, alloc::vec![si.clone(), si - 1])?;
            Ok(merge(alloc::vec![(IntClass::basis(model, 0), alpha), (d, beta)]))
        }
        Model::Blowup(_) => {
            for attempt in 0..MAX_DIRECTIONS {
                let Some(d) = direction(e, attempt) else { continue };
                let Some((tp, pp)) = first_wall(e, &d)? else { continue };
                let Some((tm, pm)) = first_wall(e, &-d.clone())? else { continue };
                let Some(qp) = face_parts(&pp)? else { continue };
                let Some(qm) = face_parts(&pm)? else { continue };
                let total = &tp + &tm;
                let mut parts: Parts = qp.into_iter().map(|(c, w)| (c, w * &tm / &total)).collect();
                parts.extend(qm.into_iter().map(|(c, w)| (c, w * &tp / &total)));
                return Ok(merge(parts));
            }
            Err(ConeError::DecompositionFailed { query: e.clone(), reason: "no admissible direction found" })
        }
    }
}

fn vec_of(c: IntClass, w: BigRational) -> Parts {
    alloc::vec![(c, w)]
}

fn merge(parts: Parts) -> Parts {
    let mut acc: BTreeMap<IntClass, BigRational> = BTreeMap::new();
    for (c, w) in parts {
        let slot = acc.entry(c).or_insert_with(BigRational::zero);
        *slot += w;
    }
    acc.into_iter().collect()
}

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Deterministic integral direction orthogonal to `e` and, from nine blow-ups on, to
/// `V_a = aH - sum Ei` with `e.V_a = 0`, which keeps the line off the `K`-wall.
fn direction(e: &RayClass, attempt: u64) -> Option<RayClass> {
    let model = e.model();
    let n = model.rank();
    let mut state = attempt.wrapping_mul(0x2545_f491_4f6c_dd1d) ^ n as u64;
    let raw: Vec<BigRational> =
        (0..n).map(|_| BigRational::from_integer(BigInt::from((splitmix(&mut state) % 9) as i64 - 4))).collect();
    let mut d = RayClass::new(model, raw).ok()?;
    let mut project = |v: &RayClass| {
        let coef = d.dot(v) / v.square();
        d = &d - &v.scale(&coef);
    };
    project(e);
    if model.blowups() >= 9 {
        let c = e.coeffs();
        let a = c[1..].iter().fold(BigRational::zero(), |acc, x| acc + x) / &c[0];
        let mut v = alloc::vec![BigRational::one(); n];
        v[0] = a;
        project(&RayClass::new(model, v).ok()?);
    }
    if d.is_zero() {
        return None;
    }
    let prim = arith::primitive(d.coeffs());
    RayClass::new(model, prim.into_iter().map(BigRational::from_integer).collect()).ok()
}

/// First point where `e + t d` (t > 0) leaves the open cone, provided it is on a wall `E.p = 0`
/// before the light cone. Walls are collected lazily: a tentative hit point that turns out to be
/// outside returns a violated class whose wall is crossed earlier.
fn first_wall(e: &RayClass, d: &RayClass) -> Result<Option<(BigRational, RayClass)>, ConeError> {
    let model = e.model();
    let mut walls: Vec<IntClass> = (1..=model.blowups()).map(|i| exceptional_basis(model, i)).collect();
    // (e + t d)^2 > 0 exactly for t^2 < light
    let light = -(e.square() / d.square());
    while walls.len() < MAX_WALLS {
        let hit = walls
            .iter()
            .filter_map(|c| {
                let slope = d.dot_int(c);
                slope.is_negative().then(|| e.dot_int(c) / -slope)
            })
            .min();
        let t = match &hit {
            Some(t) if t * t < light => t.clone(),
            _ => {
                // probe just inside the light cone for a wall not yet collected
                let scale = BigInt::one() << 32;
                let scaled = &light * BigRational::from_integer(&scale * &scale);
                let root = floor_sqrt(&scaled);
                if root.is_zero() {
                    return Ok(None);
                }
                BigRational::new(root, scale)
            }
        };
        let p = e + &d.scale(&t);
        let cert = in_ck(&p)?;
        match (cert.verdict, cert.evidence) {
            (Verdict::Boundary, _) if hit.as_ref() == Some(&t) => return Ok(Some((t, p))),
            (Verdict::Out, Evidence::Violation { class, .. }) => {
                if walls.contains(&class) {
                    return Ok(None);
                }
                walls.push(class);
            }
            _ => return Ok(None),
        }
    }
    Ok(None)
}

/// Decompose a point on a single face `F_E` by moving `E` to `E_k`, restricting and recursing.
fn face_parts(p: &RayClass) -> Result<Option<Parts>, ConeError> {
    let model = p.model();
    let k = model.blowups();
    let roots: Vec<Root> = if k >= 3 {
        let w = weyl::reduce(p)?;
        w.roots
    } else {
        // only permutations are available, so the wall must be E1 or E2
        let zeros: Vec<usize> = (1..=k).filter(|&i| p.coeffs()[i].is_zero()).collect();
        match zeros.as_slice() {
            [i] if *i == k => Vec::new(),
            [i] => alloc::vec![Root::transposition(model, *i, k)],
            _ => return Ok(None),
        }
    };
    let mut r = p.clone();
    for root in &roots {
        r = weyl::reflect(&r, root)?;
    }
    let restricted = match face_restrict(&r) {
        Ok(x) => x,
        Err(ConeError::NotOnFace { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    if in_pk(&restricted)?.verdict != Verdict::In {
        return Ok(None);
    }
    let sub = decompose_interior(&restricted)?;
    let mut parts = Parts::with_capacity(sub.len());
    for (q, w) in sub {
        let mut lifted = q.pad();
        for root in roots.iter().rev() {
            lifted = weyl::reflect(&lifted, root)?;
        }
        parts.push((lifted, w));
    }
    Ok(Some(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use alloc::vec;

    fn ray(k: u32, c: &[(i64, i64)]) -> RayClass {
        RayClass::from_ratios(Model::Blowup(k), c).unwrap()
    }

    #[test]
    fn restrict_and_extend() {
        let e = ray(3, &[(3, 1), (1, 1), (1, 1), (0, 1)]);
        let r = face_restrict(&e).unwrap();
        assert_eq!(r, ray(2, &[(3, 1), (1, 1), (1, 1)]));
        assert_eq!(face_extend(&r).unwrap(), e);
        assert!(matches!(face_restrict(&ray(2, &[(3, 1), (1, 1), (1, 2)])), Err(ConeError::NotOnFace { .. })));
        assert!(face_restrict(&ray(0, &[(1, 1)])).is_err());
    }

    #[test]
    fn two_generator_bracket() {
        let cert = decompose_sp(&ray(1, &[(5, 1), (2, 1)])).unwrap();
        let Evidence::Decomposition(parts) = cert.evidence else { panic!("{cert:?}") };
        let h = IntClass::from_i64(Model::Blowup(1), &[1, 0]).unwrap();
        let d2 = IntClass::from_i64(Model::Blowup(1), &[2, 1]).unwrap();
        assert_eq!(parts, vec![(h, rat(1, 1)), (d2, rat(2, 1))]);
    }
}
