//! A homological stand-in for a tamed almost complex structure, and what it lets us decide:
//! nefness, vanishing loci, disjointness bookkeeping and the census of reducible curves.

mod census;
mod screen;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub use census::{
    check_dimension_bounds, classify_shape, enumerate_configurations, BoundCheck, Census, Configuration,
    DimensionReport, Part, Shape, SharperBound,
};
pub use screen::{general_screen, ScreenReport};

use crate::cones::{in_ck, ConeError, Verdict};
use crate::enumerate::EnumError;
use crate::lattice::{IntClass, LatticeError, Model};

/// Which negative curve the structure carries in the rank-two models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BundleCase {
    /// `S^2 x S^2` with no curve of negative square.
    I,
    /// `S^2 x S^2` with an irreducible curve in `A_p = H1 + p H2`, `p < 0`.
    II { p: i64 },
    /// `S^2 x S^2` with an irreducible curve in `B_p = p H1 + H2`, `p < 0`.
    III { p: i64 },
    /// One blow-up with an irreducible curve in `sH + (1-s)E`, `s <= 0`.
    Twisted { s: i64 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SpecFlags {
    /// `E_1, ..., E_k` are classes of pairwise disjoint `-1` curves, `k` the number of blow-ups.
    pub disjoint_minus_ones: Option<u32>,
    /// Every curve of negative square is a `-1` curve.
    pub top_stratum: bool,
    /// Top stratum with `-K` represented by a smooth genus one curve.
    pub good: bool,
    pub sphere_bundle_case: Option<BundleCase>,
}

/// The curve data of a tamed structure: its negative curves and structural hypotheses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveConeSpec {
    pub model: Model,
    pub negative_classes: Vec<IntClass>,
    pub flags: SpecFlags,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecError {
    ModelMismatch(IntClass),
    NotNegative(IntClass),
    NegativeGenus(IntClass),
    /// `disjoint_minus_ones` must name every blow-up.
    MinusOnesCount {
        flag: u32,
        blowups: usize,
    },
    /// A negative curve violates `0 <= b_i <= a` forced by the disjoint `-1` curves.
    AdjunctionScreen(IntClass),
    NotMinusOne(IntClass),
    GoodWithoutTop,
    BundleCase(BundleCase),
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ModelMismatch(c) => write!(f, "class {c} belongs to another model"),
            Self::NotNegative(c) => write!(f, "listed class {c} does not have negative square"),
            Self::NegativeGenus(c) => write!(f, "listed class {c} has negative genus"),
            Self::MinusOnesCount { flag, blowups } => {
                write!(f, "disjoint_minus_ones = {flag} but the model has {blowups} blow-ups")
            }
            Self::AdjunctionScreen(c) => write!(f, "curve class {c} is incompatible with the disjoint -1 curves"),
            Self::NotMinusOne(c) => write!(f, "top stratum forbids the negative class {c}"),
            Self::GoodWithoutTop => f.write_str("the good flag needs the top stratum flag"),
            Self::BundleCase(c) => write!(f, "{c:?} does not fit this model"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfigError {
    Lattice(LatticeError),
    Enum(EnumError),
    Cone(ConeError),
    Spec(SpecError),
    Precondition {
        class: IntClass,
        reason: &'static str,
    },
    /// Classes in a shared computation use different specs.
    SpecMismatch,
    /// The locus may miss curves the curve spec does not know about.
    IncompleteLocus(IntClass),
    LociIntersect {
        common: IntClass,
    },
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Lattice(e) => e.fmt(f),
            Self::Enum(e) => e.fmt(f),
            Self::Cone(e) => e.fmt(f),
            Self::Spec(e) => write!(f, "invalid curve spec: {e}"),
            Self::Precondition { class, reason } => write!(f, "{class}: {reason}"),
            Self::SpecMismatch => f.write_str("the inputs do not share one curve spec"),
            Self::IncompleteLocus(c) => write!(f, "the vanishing locus of {c} is not determined by the curve spec"),
            Self::LociIntersect { common } => write!(f, "vanishing loci share the class {common}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ConfigError {}
#[cfg(feature = "std")]
impl std::error::Error for SpecError {}

impl From<LatticeError> for ConfigError {
    fn from(e: LatticeError) -> Self {
        Self::Lattice(e)
    }
}

impl From<EnumError> for ConfigError {
    fn from(e: EnumError) -> Self {
        Self::Enum(e)
    }
}

impl From<ConeError> for ConfigError {
    fn from(e: ConeError) -> Self {
        Self::Cone(e)
    }
}

impl From<SpecError> for ConfigError {
    fn from(e: SpecError) -> Self {
        Self::Spec(e)
    }
}

fn ex(model: Model, i: usize) -> IntClass {
    -IntClass::basis(model, i)
}

impl CurveConeSpec {
    /// No hypotheses beyond the model.
    pub fn bare(model: Model) -> Self {
        Self { model, negative_classes: Vec::new(), flags: SpecFlags::default() }
    }

    pub fn disjoint_minus_ones(k: u32) -> Self {
        let flags = SpecFlags { disjoint_minus_ones: Some(k), ..SpecFlags::default() };
        Self { model: Model::Blowup(k), negative_classes: Vec::new(), flags }
    }

    pub fn top_stratum(model: Model) -> Self {
        Self { model, negative_classes: Vec::new(), flags: SpecFlags { top_stratum: true, ..SpecFlags::default() } }
    }

    pub fn bundle(case: BundleCase) -> Self {
        let model = match case {
            BundleCase::Twisted { .. } => Model::Blowup(1),
            _ => Model::SphereBundle,
        };
        Self {
            model,
            negative_classes: Vec::new(),
            flags: SpecFlags { sphere_bundle_case: Some(case), ..SpecFlags::default() },
        }
    }

    pub fn with_negative(mut self, c: IntClass) -> Self {
        self.negative_classes.push(c);
        self
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        let model = self.model;
        for c in &self.negative_classes {
            if c.model() != model {
                return Err(SpecError::ModelMismatch(c.clone()));
            }
            if !c.square().is_negative() {
                return Err(SpecError::NotNegative(c.clone()));
            }
            if c.j_genus().map_or(true, |g| g.is_negative()) {
                return Err(SpecError::NegativeGenus(c.clone()));
            }
        }
        let f = &self.flags;
        if let Some(k) = f.disjoint_minus_ones {
            if model != Model::Blowup(k) {
                return Err(SpecError::MinusOnesCount { flag: k, blowups: model.blowups() });
            }
            let es: Vec<IntClass> = (1..=k as usize).map(|i| ex(model, i)).collect();
            for c in self.negative_classes.iter().filter(|c| !es.contains(c)) {
                let a = &c.coeffs()[0];
                if !a.is_positive() || c.coeffs()[1..].iter().any(|b| b.is_negative() || b > a) {
                    return Err(SpecError::AdjunctionScreen(c.clone()));
                }
            }
        }
        if f.top_stratum {
            if let Some(c) = self.negative_classes.iter().find(|c| !crate::enumerate::is_exceptional(c)) {
                return Err(SpecError::NotMinusOne(c.clone()));
            }
        }
        if f.good && !f.top_stratum {
            return Err(SpecError::GoodWithoutTop);
        }
        if let Some(case) = f.sphere_bundle_case {
            let ok = match case {
                BundleCase::I => model == Model::SphereBundle,
                BundleCase::II { p } | BundleCase::III { p } => model == Model::SphereBundle && p < 0,
                BundleCase::Twisted { s } => model == Model::Blowup(1) && s <= 0,
            };
            if !ok {
                return Err(SpecError::BundleCase(case));
            }
        }
        Ok(())
    }

    /// The curve classes the curve spec knows about: listed classes, flagged `-1` curves and the
    /// negative curve of a rank-two case, sorted and without repeats.
    pub fn curve_classes(&self) -> Vec<IntClass> {
        let model = self.model;
        let mut out: BTreeSet<IntClass> = self.negative_classes.iter().cloned().collect();
        if let Some(k) = self.flags.disjoint_minus_ones {
            out.extend((1..=k as usize).map(|i| ex(model, i)));
        }
        let c = |v: [i64; 2]| IntClass::from_i64(model, &v).expect("rank two");
        match self.flags.sphere_bundle_case {
            Some(BundleCase::II { p }) => {
                out.insert(c([1, p]));
            }
            Some(BundleCase::III { p }) => {
                out.insert(c([p, 1]));
            }
            Some(BundleCase::Twisted { s }) => {
                // sH + (1-s)E, with E = -(basis vector)
                out.insert(c([s, s - 1]));
            }
            _ => {}
        }
        out.into_iter().collect()
    }

    /// Effective classes beyond the curves: `-K` for good structures.
    fn effective_classes(&self) -> Vec<IntClass> {
        let mut v = self.curve_classes();
        if self.flags.good {
            v.push(-self.model.canonical_class());
        }
        v
    }

    /// Whether every curve of negative square is among [`Self::curve_classes`].
    fn negatives_listed(&self) -> bool {
        self.flags.sphere_bundle_case.is_some() || self.model == Model::Blowup(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NefVerdict {
    Nef,
    NotNef {
        witness: IntClass,
        pairing: BigInt,
    },
    /// Neither a negative pairing nor a covered criterion.
    Unknown,
}

/// Decide nefness of `e` as far as the curve spec allows.
///
/// A negative pairing with a known effective class refutes. Otherwise `e` is certified nef when
/// the curve spec lists every negative curve, or pins them down: the disjoint `-1` curves force
/// `0 <= b_i <= a` on every other curve, so `alpha >= sum beta_i^+` with `beta_i >= 0` suffices for
/// `e = alpha H - sum beta_i E_i`; in the top stratum the exceptional classes are the only negative
/// curves, so non-negative pairing with all of them suffices.
pub fn is_nef(e: &IntClass, spec: &CurveConeSpec) -> Result<NefVerdict, ConfigError> {
    e.check_model(spec.model)?;
    spec.validate()?;
    let witness = spec
        .effective_classes()
        .into_iter()
        .map(|c| (e.dot(&c), c))
        .filter(|(p, _)| p.is_negative())
        .min_by(|x, y| x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1)));
    if let Some((pairing, witness)) = witness {
        return Ok(NefVerdict::NotNef { witness, pairing });
    }
    let model = spec.model;
    let closed_forward = !e.square().is_negative() && e.is_forward_nonnegative();
    // a curve of non-negative square pairs non-negatively with a closed forward class
    if closed_forward && spec.negatives_listed() {
        return Ok(NefVerdict::Nef);
    }
    let c = e.coeffs();
    if model == Model::Blowup(1) && c[0] == c[1] && !c[0].is_negative() {
        return Ok(NefVerdict::Nef);
    }
    if spec.flags.disjoint_minus_ones.is_some() {
        let betas = &c[1..];
        let total = betas.iter().fold(BigInt::zero(), |acc, b| acc + b);
        if betas.iter().all(|b| !b.is_negative()) && c[0] >= total {
            return Ok(NefVerdict::Nef);
        }
    }
    if spec.flags.top_stratum && closed_forward && model.blowups() > 0 {
        if in_ck(&e.to_ray())?.verdict != Verdict::Out {
            return Ok(NefVerdict::Nef);
        }
        return Ok(NefVerdict::Unknown);
    }
    Ok(NefVerdict::Unknown)
}

/// The known curve classes orthogonal to a big nef class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingLocus {
    pub classes: Vec<IntClass>,
    /// No unlisted curve can pair to zero with the class.
    pub complete: bool,
}

impl VanishingLocus {
    /// An empty complete locus means the class is ample.
    pub fn is_ample(&self) -> bool {
        self.complete && self.classes.is_empty()
    }
}

/// Vanishing locus of a big nef class. Orthogonal curves have negative square, so the locus is
/// complete when the curve spec lists every negative curve or excludes unlisted ones from pairing zero.
pub fn vanishing_locus(e: &IntClass, spec: &CurveConeSpec) -> Result<VanishingLocus, ConfigError> {
    if is_nef(e, spec)? != NefVerdict::Nef {
        return Err(ConfigError::Precondition { class: e.clone(), reason: "class is not certified nef" });
    }
    if !e.square().is_positive() {
        return Err(ConfigError::Precondition { class: e.clone(), reason: "class is not big" });
    }
    let classes: Vec<IntClass> = spec.curve_classes().into_iter().filter(|c| e.dot(c).is_zero()).collect();
    let c = e.coeffs();
    let complete = spec.negatives_listed()
        || spec.flags.disjoint_minus_ones.is_some() && {
            // other curves have 0 <= b_i <= a with a > 0, so they pair at least a (alpha - sum beta^+)
            let positive = c[1..].iter().filter(|b| b.is_positive()).fold(BigInt::zero(), |acc, b| acc + b);
            c[0] > positive
        };
    Ok(VanishingLocus { classes, complete })
}

/// The sum of big nef classes whose vanishing loci have empty common intersection.
pub fn taubes_class(inputs: &[(IntClass, CurveConeSpec)]) -> Result<IntClass, ConfigError> {
    let Some((first, spec)) = inputs.first() else {
        return Err(ConfigError::SpecMismatch);
    };
    let mut common: Option<BTreeSet<IntClass>> = None;
    let mut total = IntClass::zero(first.model());
    for (e, s) in inputs {
        if s != spec {
            return Err(ConfigError::SpecMismatch);
        }
        let locus = vanishing_locus(e, s)?;
        if !locus.complete {
            return Err(ConfigError::IncompleteLocus(e.clone()));
        }
        let set: BTreeSet<IntClass> = locus.classes.into_iter().collect();
        common = Some(match common {
            None => set,
            Some(prev) => prev.intersection(&set).cloned().collect(),
        });
        total = &total + e;
    }
    if let Some(c) = common.and_then(|s| s.into_iter().next()) {
        return Err(ConfigError::LociIntersect { common: c });
    }
    Ok(total)
}

#[cfg(test)]
mod tests;
