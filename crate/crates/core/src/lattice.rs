//! Homology lattices of the rational 4-manifolds and the numerical invariants of their classes.
//!
//! A blow-up class `aH - b1 E1 - ... - bk Ek` is stored as `(a; b1, ..., bk)`; a class on
//! `S^2 x S^2` is stored as `(a, b)` meaning `a H1 + b H2`. The sign convention on the `Ei`
//! coefficients is fixed everywhere, including the JSON formats of the front end.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{self, Scalar, Signature};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeError {
    ModelMismatch {
        left: Model,
        right: Model,
    },
    WrongRank {
        model: Model,
        expected: usize,
        found: usize,
    },
    /// `e.e + K.e` is odd, which cannot happen for a characteristic `K`.
    Parity {
        value: BigInt,
    },
    NotIntegral,
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ModelMismatch { left, right } => write!(f, "classes live on different models ({left} vs {right})"),
            Self::WrongRank { model, expected, found } => {
                write!(f, "{model} has rank {expected}, got {found} coefficients")
            }
            Self::Parity { value } => write!(f, "e.e + K.e = {value} is odd; class or model is malformed"),
            Self::NotIntegral => f.write_str("class has non-integral coefficients"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for LatticeError {}

/// Which lattice a class lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Model {
    /// `CP^2 # k (-CP^2)`: pairing `diag(1, -1, ..., -1)`, basis `H, E1..Ek`.
    Blowup(u32),
    /// `S^2 x S^2`: hyperbolic pairing, basis `H1, H2`.
    SphereBundle,
}

impl Model {
    pub fn rank(self) -> usize {
        match self {
            Model::Blowup(k) => k as usize + 1,
            Model::SphereBundle => 2,
        }
    }

    /// Number of exceptional basis classes, zero for `S^2 x S^2`.
    pub fn blowups(self) -> usize {
        match self {
            Model::Blowup(k) => k as usize,
            Model::SphereBundle => 0,
        }
    }

    pub fn basis_labels(self) -> Vec<alloc::string::String> {
        use alloc::format;
        use alloc::string::ToString;
        match self {
            Model::Blowup(k) => core::iter::once("H".to_string()).chain((1..=k).map(|i| format!("E{i}"))).collect(),
            Model::SphereBundle => vec!["H1".to_string(), "H2".to_string()],
        }
    }

    /// Bilinear form on coefficient vectors.
    pub fn form<T: Scalar>(self, x: &[T], y: &[T]) -> T {
        match self {
            Model::Blowup(_) => {
                let mut acc = x[0].clone() * y[0].clone();
                for (a, b) in x[1..].iter().zip(&y[1..]) {
                    acc = acc - a.clone() * b.clone();
                }
                acc
            }
            Model::SphereBundle => x[0].clone() * y[1].clone() + x[1].clone() * y[0].clone(),
        }
    }

    /// Gram matrix of the pairing in the coefficient coordinates.
    pub fn gram(self) -> Vec<Vec<BigRational>> {
        let n = self.rank();
        let mut g = vec![vec![BigRational::zero(); n]; n];
        for (i, row) in g.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                let ei = unit::<BigInt>(n, i);
                let ej = unit::<BigInt>(n, j);
                *v = BigRational::from_integer(self.form(&ei, &ej));
            }
        }
        g
    }

    pub fn signature(self) -> Signature {
        arith::signature(&self.gram())
    }

    /// `K = -3H + sum Ei`, or `-2H1 - 2H2`.
    pub fn canonical_class(self) -> IntClass {
        match self {
            Model::Blowup(k) => {
                let mut c = vec![BigInt::from(-1); k as usize + 1];
                c[0] = BigInt::from(-3);
                Class { model: self, coeffs: c }
            }
            Model::SphereBundle => Class { model: self, coeffs: vec![BigInt::from(-2), BigInt::from(-2)] },
        }
    }

    /// Reference class selecting the forward component of the positive cone.
    pub fn orientation_class(self) -> IntClass {
        match self {
            Model::Blowup(k) if k <= 8 => -self.canonical_class(),
            Model::Blowup(_) => IntClass::basis(self, 0),
            Model::SphereBundle => Class { model: self, coeffs: vec![BigInt::one(), BigInt::one()] },
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Blowup(k) => write!(f, "blowup({k})"),
            Model::SphereBundle => f.write_str("s2xs2"),
        }
    }
}

fn unit<T: Scalar>(n: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    v[i] = T::one();
    v
}

/// A homology class on a fixed model with coefficients in `T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Class<T> {
    model: Model,
    coeffs: Vec<T>,
}

/// Integral class.
pub type IntClass = Class<BigInt>;
/// Exact rational class (cone points).
pub type RayClass = Class<BigRational>;

impl<T: Scalar> Class<T> {
    pub fn new(model: Model, coeffs: Vec<T>) -> Result<Self, LatticeError> {
        if coeffs.len() != model.rank() {
            return Err(LatticeError::WrongRank { model, expected: model.rank(), found: coeffs.len() });
        }
        Ok(Self { model, coeffs })
    }

    pub fn zero(model: Model) -> Self {
        Self { model, coeffs: vec![T::zero(); model.rank()] }
    }

    /// The `i`-th basis vector (`H` is index 0 on blow-ups).
    pub fn basis(model: Model, i: usize) -> Self {
        Self { model, coeffs: unit(model.rank(), i) }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [T] {
        &mut self.coeffs
    }

    /// Intersection pairing; fails on a model mismatch.
    pub fn pair(&self, other: &Self) -> Result<T, LatticeError> {
        self.check_model(other.model)?;
        Ok(self.model.form(&self.coeffs, &other.coeffs))
    }

    /// Intersection pairing for classes already known to share a model.
    ///
    /// Panics on a model mismatch.
    pub fn dot(&self, other: &Self) -> T {
        assert_eq!(self.model, other.model, "pairing classes of different models");
        self.model.form(&self.coeffs, &other.coeffs)
    }

    /// Pairing with an integral class.
    pub fn dot_int(&self, other: &IntClass) -> T {
        assert_eq!(self.model, other.model, "pairing classes of different models");
        let o: Vec<T> = other.coeffs.iter().cloned().map(T::from).collect();
        self.model.form(&self.coeffs, &o)
    }

    pub fn square(&self) -> T {
        self.dot(self)
    }

    /// `K.e`.
    pub fn k_dot(&self) -> T {
        self.dot_int(&self.model.canonical_class())
    }

    pub fn check_model(&self, model: Model) -> Result<(), LatticeError> {
        if self.model == model {
            Ok(())
        } else {
            Err(LatticeError::ModelMismatch { left: self.model, right: model })
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Self { model: self.model, coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect() }
    }

    /// `self + s * other` for an integral `other`.
    pub fn add_scaled_int(&self, other: &IntClass, s: &T) -> Self {
        assert_eq!(self.model, other.model);
        let coeffs =
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + T::from(b.clone()) * s.clone()).collect();
        Self { model: self.model, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `H`-degree `a` on blow-ups (first coefficient on either model).
    pub fn degree(&self) -> &T {
        &self.coeffs[0]
    }

    /// Positive square and positive pairing with the orientation class.
    pub fn is_forward_positive(&self) -> bool {
        self.square().is_positive() && self.dot_int(&self.model.orientation_class()).is_positive()
    }

    /// Non-negative square in the closure of the forward component, excluding zero.
    pub fn is_forward_nonnegative(&self) -> bool {
        if self.is_zero() || self.square().is_negative() {
            return false;
        }
        let o = self.dot_int(&self.model.orientation_class());
        if o.is_positive() {
            return true;
        }
        // null vectors orthogonal to the orientation class only exist when it is null itself
        o.is_zero() && self.dot_int(&IntClass::basis(self.model, 0)).is_positive()
    }
}

impl IntClass {
    pub fn from_i64(model: Model, coeffs: &[i64]) -> Result<Self, LatticeError> {
        Self::new(model, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_ray(&self) -> RayClass {
        Class { model: self.model, coeffs: self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect() }
    }

    /// `(e.e + K.e) / 2 + 1`.
    pub fn j_genus(&self) -> Result<BigInt, LatticeError> {
        let adj = self.adjunction_number();
        let (half, rem) = adj.div_rem(&BigInt::from(2));
        if !rem.is_zero() {
            return Err(LatticeError::Parity { value: adj });
        }
        Ok(half + 1)
    }

    /// `iota_e = (e.e - K.e) / 2`.
    pub fn j_dimension(&self) -> Result<BigInt, LatticeError> {
        let v = self.square() - self.k_dot();
        let (half, rem) = v.div_rem(&BigInt::from(2));
        if !rem.is_zero() {
            return Err(LatticeError::Parity { value: v });
        }
        Ok(half)
    }

    /// `l_e = max(iota_e, 0)`.
    pub fn l_value(&self) -> Result<BigInt, LatticeError> {
        Ok(self.j_dimension()?.max(BigInt::zero()))
    }

    /// `e.e + K.e = 2 g - 2`.
    pub fn adjunction_number(&self) -> BigInt {
        self.square() + self.k_dot()
    }

    /// Divide out the content; the zero class is returned unchanged.
    pub fn primitive(&self) -> (IntClass, BigInt) {
        let g = self.coeffs.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return (self.clone(), BigInt::zero());
        }
        (Class { model: self.model, coeffs: self.coeffs.iter().map(|c| c / &g).collect() }, g)
    }

    /// Coefficients as machine integers, when they fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| i64::try_from(c).ok()).collect()
    }
}

impl RayClass {
    pub fn from_ratios(model: Model, coeffs: &[(i64, i64)]) -> Result<Self, LatticeError> {
        Self::new(model, coeffs.iter().map(|&(n, d)| arith::rat(n, d)).collect())
    }

    /// The integral class, when every denominator is one.
    pub fn to_int(&self) -> Option<IntClass> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(|coeffs| Class { model: self.model, coeffs })
    }

    /// `(primitive integral class p, t > 0)` with `self = t p`; `None` for the zero class.
    pub fn primitive_ray(&self) -> Option<(IntClass, BigRational)> {
        if self.is_zero() {
            return None;
        }
        let p = arith::primitive(&self.coeffs);
        let (i, pi) = p.iter().enumerate().find(|(_, x)| !x.is_zero())?;
        let t = &self.coeffs[i] / BigRational::from_integer(pi.clone());
        Some((Class { model: self.model, coeffs: p }, t))
    }

    /// Drop the last exceptional coordinate (model `Blowup(k)` to `Blowup(k-1)`).
    pub(crate) fn drop_last(&self) -> RayClass {
        let Model::Blowup(k) = self.model else { panic!("drop_last on {}", self.model) };
        Class { model: Model::Blowup(k - 1), coeffs: self.coeffs[..k as usize].to_vec() }
    }
}

impl<T: Scalar> Class<T> {
    /// Append a zero exceptional coordinate (`Blowup(k)` to `Blowup(k+1)`).
    pub fn pad(&self) -> Self {
        let Model::Blowup(k) = self.model else { panic!("pad on {}", self.model) };
        let mut coeffs = self.coeffs.clone();
        coeffs.push(T::zero());
        Class { model: Model::Blowup(k + 1), coeffs }
    }
}

impl<T: Scalar> Add for &Class<T> {
    type Output = Class<T>;
    fn add(self, rhs: Self) -> Class<T> {
        assert_eq!(self.model, rhs.model);
        Class {
            model: self.model,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<T: Scalar> Sub for &Class<T> {
    type Output = Class<T>;
    fn sub(self, rhs: Self) -> Class<T> {
        assert_eq!(self.model, rhs.model);
        Class {
            model: self.model,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<T: Scalar> Neg for Class<T> {
    type Output = Class<T>;
    fn neg(self) -> Class<T> {
        Class { model: self.model, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<T: Scalar> fmt::Display for Class<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.model.basis_labels();
        let mut first = true;
        for (i, (c, label)) in self.coeffs.iter().zip(&labels).enumerate() {
            // stored b_i is the negated E_i coefficient
            let c = match self.model {
                Model::Blowup(_) if i > 0 => -c.clone(),
                _ => c.clone(),
            };
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            if mag.is_one() {
                f.write_str(label)?;
            } else {
                write!(f, "{mag}{label}")?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Every numerical invariant of a class in one record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub genus: BigInt,
    pub iota: BigInt,
    pub l: BigInt,
    pub square: BigInt,
    pub k_dot: BigInt,
    pub adjunction: BigInt,
}

impl IntClass {
    pub fn invariants(&self) -> Result<Invariants, LatticeError> {
        Ok(Invariants {
            genus: self.j_genus()?,
            iota: self.j_dimension()?,
            l: self.l_value()?,
            square: self.square(),
            k_dot: self.k_dot(),
            adjunction: self.adjunction_number(),
        })
    }
}
