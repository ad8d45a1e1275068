//! Cone membership with certificates, the decomposition into spherical classes, faces and duals.

mod decompose;
mod dual;
mod membership;

use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub use decompose::{decompose_sp, face_extend, face_restrict};
pub use dual::{dual_cone, dual_curve_cone};
pub use membership::{in_ck, in_pk, in_positive_cone, in_sk_plus, PCell};

use crate::enumerate::{exceptional_classes, is_exceptional, is_spherical, EnumError};
use crate::lattice::{IntClass, LatticeError, Model, RayClass};
use crate::weyl::{reflect, Root, WeylError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cone {
    /// Forward positive cone.
    Positive,
    /// `C_K`: positive classes pairing positively with every exceptional class.
    Ck,
    /// `P_K`: `C_K` cut down by `-K.e > 0`.
    Pk,
    /// Open cone spanned by spherical classes of positive square.
    SkPlus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    In,
    Out,
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// Square and orientation pairing of the query.
    PositiveCone { square: BigRational, orientation: IntClass, orientation_pairing: BigRational },
    /// A class pairing non-positively with the query.
    Violation { class: IntClass, pairing: BigRational },
    /// Spherical classes of positive square with positive weights summing to the query.
    Decomposition(Vec<(IntClass, BigRational)>),
    /// A reduction word taking the query to `reduced`, and the pairings of `reduced` with the
    /// listed classes: simple roots and `E_k` (chamber test), the full exceptional list for
    /// `k <= 2`, and `-K` for `P_K`.
    FiniteCheck { word: Vec<Root>, reduced: RayClass, checked: Vec<(IntClass, BigRational)> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub cone: Cone,
    pub query: RayClass,
    pub verdict: Verdict,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeError {
    Lattice(LatticeError),
    Weyl(WeylError),
    Enum(EnumError),
    NotBlowup(Model),
    NotOnFace {
        pairing: BigRational,
    },
    /// The generators do not span, or their dual has empty interior.
    Degenerate,
    /// The dual cone leaves the positive cone, so its intersection with it is not polyhedral.
    NotPolyhedral {
        ray: IntClass,
    },
    DecompositionFailed {
        query: RayClass,
        reason: &'static str,
    },
}

impl fmt::Display for ConeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Lattice(e) => e.fmt(f),
            Self::Weyl(e) => e.fmt(f),
            Self::Enum(e) => e.fmt(f),
            Self::NotBlowup(m) => write!(f, "operation needs a blow-up model, got {m}"),
            Self::NotOnFace { pairing } => write!(f, "class is not on the face: pairing with E_k is {pairing}"),
            Self::Degenerate => f.write_str("generators span a degenerate (non-pointed or lower-rank) cone"),
            Self::NotPolyhedral { ray } => {
                write!(f, "dual ray {ray} leaves the positive cone; the intersection is not polyhedral")
            }
            Self::DecompositionFailed { query, reason } => write!(f, "could not decompose {query}: {reason}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ConeError {}

impl From<LatticeError> for ConeError {
    fn from(e: LatticeError) -> Self {
        Self::Lattice(e)
    }
}

impl From<WeylError> for ConeError {
    fn from(e: WeylError) -> Self {
        Self::Weyl(e)
    }
}

impl From<EnumError> for ConeError {
    fn from(e: EnumError) -> Self {
        Self::Enum(e)
    }
}

/// Why a certificate failed to replay.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReplayError {
    ModelMismatch,
    PairingMismatch,
    WrongVerdict,
    BadWitness,
    BadWord,
    IncompleteCheck,
    SumMismatch,
    BadPart(IntClass),
}

impl fmt::Display for ReplayError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ModelMismatch => f.write_str("evidence lives on another model"),
            Self::PairingMismatch => f.write_str("a recorded pairing does not match recomputation"),
            Self::WrongVerdict => f.write_str("the evidence does not support the stated verdict"),
            Self::BadWitness => f.write_str("the witness class is not admissible for this cone"),
            Self::BadWord => f.write_str("the reduction word does not replay"),
            Self::IncompleteCheck => f.write_str("the finite check misses required classes"),
            Self::SumMismatch => f.write_str("decomposition does not sum to the query"),
            Self::BadPart(c) => write!(f, "decomposition part {c} is not a positive-square spherical class"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ReplayError {}

fn sign_verdict(x: &BigRational) -> Verdict {
    if x.is_positive() {
        Verdict::In
    } else if x.is_zero() {
        Verdict::Boundary
    } else {
        Verdict::Out
    }
}

/// Exceptional class `E_i` (1-based).
pub(crate) fn exceptional_basis(model: Model, i: usize) -> IntClass {
    -IntClass::basis(model, i)
}

/// Simple roots of the reflection group: `E_i - E_{i+1}` and `H - E1 - E2 - E3`.
pub(crate) fn simple_roots(model: Model) -> Vec<Root> {
    let k = model.blowups();
    let mut v: Vec<Root> = (1..k).map(|i| Root::transposition(model, i, i + 1)).collect();
    if k >= 3 {
        v.push(Root::cremona(model, 1, 2, 3));
    }
    v
}

/// Check a certificate against its query using pairing arithmetic only.
pub fn replay(cert: &Certificate) -> Result<(), ReplayError> {
    let q = &cert.query;
    let model = q.model();
    match &cert.evidence {
        Evidence::PositiveCone { square, orientation, orientation_pairing } => {
            if orientation.model() != model || *orientation != model.orientation_class() {
                return Err(ReplayError::BadWitness);
            }
            if q.square() != *square || q.dot_int(orientation) != *orientation_pairing {
                return Err(ReplayError::PairingMismatch);
            }
            let expected = if square.is_positive() && orientation_pairing.is_positive() {
                Verdict::In
            } else if square.is_zero() && q.is_forward_nonnegative() {
                Verdict::Boundary
            } else {
                Verdict::Out
            };
            // for the smaller cones a null class still needs the wall pairings, so only Out follows
            let ok = match cert.cone {
                Cone::Positive => expected == cert.verdict,
                _ => expected == Verdict::Out && cert.verdict == Verdict::Out,
            };
            ok.then_some(()).ok_or(ReplayError::WrongVerdict)
        }
        Evidence::Violation { class, pairing } => {
            if class.model() != model {
                return Err(ReplayError::ModelMismatch);
            }
            if q.dot_int(class) != *pairing {
                return Err(ReplayError::PairingMismatch);
            }
            let minus_k = -model.canonical_class();
            let admissible = match cert.cone {
                Cone::Positive => false,
                Cone::Ck => is_exceptional(class),
                Cone::Pk | Cone::SkPlus => is_exceptional(class) || *class == minus_k,
            };
            if !admissible {
                return Err(ReplayError::BadWitness);
            }
            // a zero pairing alone cannot show the query is on the boundary rather than outside
            if sign_verdict(pairing) == Verdict::Out && cert.verdict == Verdict::Out {
                Ok(())
            } else {
                Err(ReplayError::WrongVerdict)
            }
        }
        Evidence::Decomposition(parts) => {
            if cert.verdict != Verdict::In || !matches!(cert.cone, Cone::SkPlus | Cone::Pk) {
                return Err(ReplayError::WrongVerdict);
            }
            let mut sum = RayClass::zero(model);
            for (c, w) in parts {
                if c.model() != model {
                    return Err(ReplayError::ModelMismatch);
                }
                if !w.is_positive() || !c.square().is_positive() || !is_spherical(c) {
                    return Err(ReplayError::BadPart(c.clone()));
                }
                sum = sum.add_scaled_int(c, w);
            }
            if sum != *q || parts.is_empty() {
                return Err(ReplayError::SumMismatch);
            }
            Ok(())
        }
        Evidence::FiniteCheck { word, reduced, checked } => replay_finite(cert, word, reduced, checked),
    }
}

fn replay_finite(
    cert: &Certificate,
    word: &[Root],
    reduced: &RayClass,
    checked: &[(IntClass, BigRational)],
) -> Result<(), ReplayError> {
    let q = &cert.query;
    let model = q.model();
    let mut cur = q.clone();
    for r in word {
        if Root::new(r.class().clone()).is_err() {
            return Err(ReplayError::BadWord);
        }
        cur = reflect(&cur, r).map_err(|_| ReplayError::BadWord)?;
    }
    if cur != *reduced {
        return Err(ReplayError::BadWord);
    }
    for (c, p) in checked {
        if c.model() != model {
            return Err(ReplayError::ModelMismatch);
        }
        if reduced.dot_int(c) != *p {
            return Err(ReplayError::PairingMismatch);
        }
    }
    let lookup = |c: &IntClass| checked.iter().find(|(x, _)| x == c).map(|(_, p)| p);
    let null = !q.is_forward_positive();
    if null && !(q.square().is_zero() && q.is_forward_nonnegative()) {
        return Err(ReplayError::WrongVerdict);
    }
    // the decisive pairings; the verdict is In if all are positive, Boundary if one vanishes
    let mut decisive: Vec<&BigRational> = Vec::new();
    match model {
        Model::SphereBundle => {}
        Model::Blowup(k) if k <= 2 => {
            let table = exceptional_classes(model, 1).map_err(|_| ReplayError::IncompleteCheck)?;
            for e in &table.classes {
                decisive.push(lookup(e).ok_or(ReplayError::IncompleteCheck)?);
            }
        }
        Model::Blowup(k) => {
            // chamber test: in the dominant chamber E_k has the least pairing among exceptional classes
            for r in simple_roots(model) {
                let p = lookup(r.class()).ok_or(ReplayError::IncompleteCheck)?;
                if p.is_negative() {
                    return Err(ReplayError::WrongVerdict);
                }
            }
            decisive.push(lookup(&exceptional_basis(model, k as usize)).ok_or(ReplayError::IncompleteCheck)?);
        }
    }
    if matches!(cert.cone, Cone::Pk | Cone::SkPlus) {
        decisive.push(lookup(&-model.canonical_class()).ok_or(ReplayError::IncompleteCheck)?);
    }
    let expected = if decisive.iter().any(|p| p.is_negative()) {
        return Err(ReplayError::WrongVerdict);
    } else if null || decisive.iter().any(|p| p.is_zero()) {
        Verdict::Boundary
    } else {
        Verdict::In
    };
    if cert.cone != Cone::Positive && cert.verdict == expected {
        Ok(())
    } else {
        Err(ReplayError::WrongVerdict)
    }
}
