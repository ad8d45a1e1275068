use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{decompose_sp, exceptional_basis, simple_roots, Certificate, Cone, ConeError, Evidence, Verdict};
use crate::enumerate::exceptional_classes;
use crate::lattice::{IntClass, Model, RayClass};
use crate::weyl;

/// Forward positive cone, decided against the model's orientation class.
pub fn in_positive_cone(e: &RayClass) -> Certificate {
    let model = e.model();
    let orientation = model.orientation_class();
    let square = e.square();
    let orientation_pairing = e.dot_int(&orientation);
    let verdict = if square.is_positive() && orientation_pairing.is_positive() {
        Verdict::In
    } else if square.is_zero() && e.is_forward_nonnegative() {
        Verdict::Boundary
    } else {
        Verdict::Out
    };
    Certificate {
        cone: Cone::Positive,
        query: e.clone(),
        verdict,
        evidence: Evidence::PositiveCone { square, orientation, orientation_pairing },
    }
}

fn out(cone: Cone, e: &RayClass, class: IntClass, pairing: BigRational) -> Certificate {
    Certificate { cone, query: e.clone(), verdict: Verdict::Out, evidence: Evidence::Violation { class, pairing } }
}

/// `C_K`: forward positive and positive on every exceptional class.
///
/// With three or more blow-ups the query is reduced to the dominant chamber, where `E_k` has
/// the least pairing of all exceptional classes; otherwise the finite exceptional list is checked.
pub fn in_ck(e: &RayClass) -> Result<Certificate, ConeError> {
    let pc = in_positive_cone(e);
    let model = e.model();
    if pc.verdict == Verdict::Out {
        // a violated exceptional class is the more informative witness when the list is short
        if let Model::Blowup(k @ 1..=2) = model {
            let table = exceptional_classes(Model::Blowup(k), 1)?;
            let worst = table.classes.into_iter().map(|c| (e.dot_int(&c), c)).min_by(|x, y| x.0.cmp(&y.0));
            if let Some((p, c)) = worst.filter(|(p, _)| p.is_negative()) {
                return Ok(out(Cone::Ck, e, c, p));
            }
        }
        return Ok(Certificate { cone: Cone::Ck, ..pc });
    }
    let null = pc.verdict == Verdict::Boundary;
    let finite = |word, reduced: RayClass, checked: Vec<(IntClass, BigRational)>| {
        let zero = checked.iter().any(|(c, p)| p.is_zero() && weyl::Root::new(c.clone()).is_err());
        let verdict = if null || zero { Verdict::Boundary } else { Verdict::In };
        Certificate {
            cone: Cone::Ck,
            query: e.clone(),
            verdict,
            evidence: Evidence::FiniteCheck { word, reduced, checked },
        }
    };
    match model {
        Model::SphereBundle => Ok(finite(Vec::new(), e.clone(), Vec::new())),
        Model::Blowup(k) if k <= 2 => {
            let table = exceptional_classes(model, 1)?;
            let checked: Vec<(IntClass, BigRational)> =
                table.classes.into_iter().map(|c| (c.clone(), e.dot_int(&c))).collect();
            if let Some((c, p)) = checked.iter().filter(|(_, p)| p.is_negative()).min_by(|x, y| x.1.cmp(&y.1)) {
                return Ok(out(Cone::Ck, e, c.clone(), p.clone()));
            }
            Ok(finite(Vec::new(), e.clone(), checked))
        }
        Model::Blowup(k) => {
            let w = weyl::reduce(e)?;
            let ek = exceptional_basis(model, k as usize);
            let last = w.end.dot_int(&ek);
            if last.is_negative() {
                let witness = w.pull_back(&ek);
                return Ok(out(Cone::Ck, e, witness, last));
            }
            let mut checked: Vec<(IntClass, BigRational)> =
                simple_roots(model).into_iter().map(|r| (r.class().clone(), w.end.dot_int(r.class()))).collect();
            checked.push((ek, last));
            Ok(finite(w.roots, w.end, checked))
        }
    }
}

/// `P_K`: `C_K` together with `-K.e > 0`.
pub fn in_pk(e: &RayClass) -> Result<Certificate, ConeError> {
    let minus_k = -e.model().canonical_class();
    let mk = e.dot_int(&minus_k);
    if mk.is_negative() {
        return Ok(out(Cone::Pk, e, minus_k, mk));
    }
    let ck = in_ck(e)?;
    match ck.evidence {
        Evidence::FiniteCheck { word, reduced, mut checked } => {
            let verdict = if ck.verdict == Verdict::In && mk.is_positive() { Verdict::In } else { Verdict::Boundary };
            checked.push((minus_k, mk));
            Ok(Certificate {
                cone: Cone::Pk,
                query: e.clone(),
                verdict,
                evidence: Evidence::FiniteCheck { word, reduced, checked },
            })
        }
        evidence => Ok(Certificate { cone: Cone::Pk, evidence, ..ck }),
    }
}

/// The open cone spanned by spherical classes of positive square; `In` carries a decomposition.
pub fn in_sk_plus(e: &RayClass) -> Result<Certificate, ConeError> {
    let pk = in_pk(e)?;
    if pk.verdict != Verdict::In {
        return Ok(Certificate { cone: Cone::SkPlus, ..pk });
    }
    let cert = decompose_sp(e)?;
    Ok(Certificate { cone: Cone::SkPlus, ..cert })
}

/// A chamber of `P_K` given by a standard basis: a corner `x` of square one and orthogonal
/// exceptional classes `a_1..a_k` with `-K = 3x - sum a_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PCell {
    pub model: Model,
    pub corner: IntClass,
    /// `x, a_1, ..., a_k`.
    pub basis: Vec<IntClass>,
    /// The classes `a_i`, and `K` itself once `k >= 9`.
    pub walls: Vec<IntClass>,
}

impl PCell {
    pub fn standard(model: Model) -> Result<Self, ConeError> {
        let Model::Blowup(k) = model else { return Err(ConeError::NotBlowup(model)) };
        let corner = IntClass::basis(model, 0);
        let es: Vec<IntClass> = (1..=k as usize).map(|i| exceptional_basis(model, i)).collect();
        let mut walls = es.clone();
        if k >= 9 {
            walls.push(model.canonical_class());
        }
        let mut basis = vec![corner.clone()];
        basis.extend(es);
        Ok(Self { model, corner, basis, walls })
    }

    /// The cell whose closure holds the forward class `e`, found by Cremona reduction.
    pub fn containing(e: &RayClass) -> Result<Self, ConeError> {
        let w = weyl::reduce(e)?;
        let std = Self::standard(e.model())?;
        let basis: Vec<IntClass> = std.basis.iter().map(|c| w.pull_back(c)).collect();
        let walls = std.walls.iter().map(|c| w.pull_back(c)).collect();
        Ok(Self { model: std.model, corner: basis[0].clone(), basis, walls })
    }

    /// Check the defining relations of an adapted standard basis.
    pub fn is_valid(&self) -> bool {
        let one = BigInt::one();
        if self.corner.square() != one || self.basis.first() != Some(&self.corner) {
            return false;
        }
        for (i, x) in self.basis.iter().enumerate() {
            for (j, y) in self.basis.iter().enumerate().skip(i) {
                let want = match (i, j) {
                    (0, 0) => one.clone(),
                    _ if i == j => -one.clone(),
                    _ => BigInt::zero(),
                };
                if x.dot(y) != want {
                    return false;
                }
            }
        }
        let mut kappa = self.corner.scale(&BigInt::from(3));
        for a in &self.basis[1..] {
            kappa = &kappa - a;
        }
        let k = self.model.canonical_class();
        kappa == -k.clone() && self.walls.iter().all(|w| w.square() == -one.clone() || *w == k)
    }
}
