//! Enumeration of exceptional and spherical classes, and the partner class `H_e`.

mod ellipsoid;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use ellipsoid::{ellipsoid_points, quadric_points, short_vectors, Shell};

use crate::arith::{floor_sqrt, rat};
use crate::lattice::{IntClass, Model};
use crate::weyl::{self, ListForm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnumError {
    NotDefinite,
    NotSymmetric,
    Dimension,
    NotBlowup(Model),
    Precondition { class: IntClass, reason: &'static str },
    Unclassified { class: IntClass, normal_form: IntClass },
}

impl fmt::Display for EnumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotDefinite => f.write_str("quadratic form is not definite"),
            Self::NotSymmetric => f.write_str("Gram matrix is not symmetric"),
            Self::Dimension => f.write_str("matrix and vector dimensions disagree"),
            Self::NotBlowup(m) => write!(f, "operation needs a blow-up model, got {m}"),
            Self::Precondition { class, reason } => write!(f, "{class}: {reason}"),
            Self::Unclassified { class, normal_form } => {
                write!(f, "{class} reduces to {normal_form}, which is not in the classification list")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for EnumError {}

/// Map over independent search slices, in parallel when the `parallel` feature is on.
/// Output order follows the input order either way.
pub(crate) fn par_flat_map<I, R, F>(items: Vec<I>, f: F) -> Vec<R>
where
    I: Send,
    R: Send,
    F: Fn(I) -> Vec<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.into_par_iter().map(f).collect::<Vec<_>>().into_iter().flatten().collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().flat_map(f).collect()
    }
}

/// Which squares a spherical enumeration keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SquareFilter {
    Positive,
    Zero,
    NonNegative,
    MinusOne,
    Any,
}

impl SquareFilter {
    pub fn admits(self, square: &BigInt) -> bool {
        match self {
            Self::Positive => square.is_positive(),
            Self::Zero => square.is_zero(),
            Self::NonNegative => !square.is_negative(),
            Self::MinusOne => *square == BigInt::from(-1),
            Self::Any => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableTag {
    Exceptional,
    Spherical(SquareFilter),
}

/// A sorted, duplicate-free list of classes cut out by a predicate and a degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassTable {
    pub model: Model,
    pub tag: TableTag,
    /// Largest `H`-degree searched (both coefficients on `S^2 x S^2`).
    pub bound: u64,
    pub classes: Vec<IntClass>,
    /// Every class satisfying the predicate is listed, regardless of degree.
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableDefect {
    WrongModel(usize),
    Unsorted(usize),
    FailsPredicate(usize),
    OutOfBound(usize),
    Incomplete { missing: IntClass },
}

impl fmt::Display for TableDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::WrongModel(i) => write!(f, "entry {i} belongs to another model"),
            Self::Unsorted(i) => write!(f, "entry {i} is out of order or duplicated"),
            Self::FailsPredicate(i) => write!(f, "entry {i} does not satisfy the table predicate"),
            Self::OutOfBound(i) => write!(f, "entry {i} exceeds the degree bound"),
            Self::Incomplete { missing } => write!(f, "table is missing {missing}"),
        }
    }
}

impl ClassTable {
    /// Re-check every entry against the table's defining equations.
    pub fn verify(&self) -> Result<(), TableDefect> {
        for (i, c) in self.classes.iter().enumerate() {
            if c.model() != self.model {
                return Err(TableDefect::WrongModel(i));
            }
            if i > 0 && self.classes[i - 1] >= *c {
                return Err(TableDefect::Unsorted(i));
            }
            let ok = match self.tag {
                TableTag::Exceptional => is_exceptional(c),
                TableTag::Spherical(f) => is_spherical(c) && f.admits(&c.square()),
            };
            if !ok {
                return Err(TableDefect::FailsPredicate(i));
            }
            if !self.complete && !within_bound(c, self.bound) {
                return Err(TableDefect::OutOfBound(i));
            }
        }
        Ok(())
    }

    /// Recompute the table and compare; used to detect silently truncated caches.
    pub fn verify_complete(&self) -> Result<(), TableDefect> {
        self.verify()?;
        let fresh = match self.tag {
            TableTag::Exceptional => exceptional_classes(self.model, self.bound),
            TableTag::Spherical(f) => spherical_classes(self.model, self.bound, f),
        }
        .map_err(|_| TableDefect::WrongModel(0))?;
        if let Some(missing) = fresh.classes.iter().find(|c| self.classes.binary_search(c).is_err()) {
            return Err(TableDefect::Incomplete { missing: missing.clone() });
        }
        if fresh.classes.len() != self.classes.len() {
            return Err(TableDefect::FailsPredicate(0));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

fn within_bound(c: &IntClass, bound: u64) -> bool {
    let b = BigInt::from(bound);
    match c.model() {
        Model::Blowup(_) => !c.coeffs()[0].is_negative() && c.coeffs()[0] <= b,
        Model::SphereBundle => c.coeffs().iter().all(|x| x.abs() <= b),
    }
}

/// Square `-1` and `K.e = -1`.
pub fn is_exceptional(e: &IntClass) -> bool {
    matches!(e.model(), Model::Blowup(_)) && e.square() == BigInt::from(-1) && e.k_dot() == BigInt::from(-1)
}

/// Genus zero, and for non-negative squares carried by an embedded sphere.
///
/// On the blow-ups a class of non-negative square is a sphere class exactly when it has positive
/// degree and its reduction under diffeomorphisms keeps genus zero; `3H + E1` is the smallest
/// genus-zero class that fails. Negative squares are decided by the genus alone. On `S^2 x S^2`
/// every genus-zero class `aH1 + H2` or `H1 + bH2` is the graph of a map and so a sphere.
pub fn is_spherical(e: &IntClass) -> bool {
    if !e.j_genus().is_ok_and(|g| g.is_zero()) {
        return false;
    }
    match e.model() {
        Model::SphereBundle => true,
        Model::Blowup(_) => {
            if e.square().is_negative() {
                return true;
            }
            if !e.coeffs()[0].is_positive() {
                return false;
            }
            weyl::diffeo_reduce(e).is_ok_and(|r| r.j_genus().is_ok_and(|g| g.is_zero()))
        }
    }
}

fn blowup_k(model: Model) -> Result<u32, EnumError> {
    match model {
        Model::Blowup(k) => Ok(k),
        m => Err(EnumError::NotBlowup(m)),
    }
}

fn class_from(model: Model, a: BigInt, b: Vec<BigInt>) -> IntClass {
    let mut c = Vec::with_capacity(b.len() + 1);
    c.push(a);
    c.extend(b);
    IntClass::new(model, c).expect("rank matches by construction")
}

fn identity(n: usize) -> Vec<Vec<BigRational>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { rat(1, 1) } else { rat(0, 1) }).collect()).collect()
}

/// Degree bound for exceptional classes on `k <= 8` blow-ups, from
/// `a = (sum b + 1) / 3` and `sum b^2 = a^2 + 1` with Cauchy-Schwarz.
pub fn exceptional_degree_bound(k: u32) -> Option<u64> {
    if k > 8 {
        return None;
    }
    // (9 - k) a^2 - 6a + (1 - k) <= 0
    let k = i64::from(k);
    let disc = rat(36 - 4 * (9 - k) * (1 - k), 1);
    let hi = (rat(6, 1) + BigRational::from_integer(floor_sqrt(&disc)) + rat(1, 1)) / rat(2 * (9 - k), 1);
    hi.floor().to_integer().to_u64()
}

/// Exceptional classes `e.e = K.e = -1` with `H`-degree in `[0, degree_bound]`.
///
/// For `k <= 8` the set is finite and returned in full whatever the bound. There `a` is
/// eliminated and the `b` vector is a lattice point on a positive-definite quadric.
pub fn exceptional_classes(model: Model, degree_bound: u64) -> Result<ClassTable, EnumError> {
    let k = blowup_k(model)?;
    let n = k as usize;
    if k <= 8 {
        // sum b^2 - (sum b)^2 / 9 - 2 sum b / 9 = 10 / 9
        let q: Vec<Vec<BigRational>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { rat(8, 9) } else { rat(-1, 9) }).collect()).collect();
        let l = vec![rat(-2, 9); n];
        let pts = quadric_points(&q, &l, &rat(10, 9), Shell::Surface)?;
        let mut classes: Vec<IntClass> = pts
            .into_iter()
            .filter_map(|b| {
                let s: BigInt = b.iter().sum::<BigInt>() + 1;
                let (a, r) = s.div_rem(&BigInt::from(3));
                r.is_zero().then(|| class_from(model, a, b))
            })
            .filter(is_exceptional)
            .collect();
        classes.sort();
        let bound = exceptional_degree_bound(k).unwrap_or(0);
        return Ok(ClassTable { model, tag: TableTag::Exceptional, bound, classes, complete: true });
    }
    // per degree: b_k = 3a - 1 - sum_{i<k} b_i and sum b^2 = a^2 + 1
    let degrees: Vec<u64> = (0..=degree_bound).collect();
    let mut classes = par_flat_map(degrees, |a| {
        let a = BigInt::from(a);
        let t = BigInt::from(3) * &a - 1;
        let m = n - 1;
        let q: Vec<Vec<BigRational>> =
            (0..m).map(|i| (0..m).map(|j| if i == j { rat(2, 1) } else { rat(1, 1) }).collect()).collect();
        let l = vec![BigRational::from_integer(-BigInt::from(2) * &t); m];
        let r = BigRational::from_integer(&a * &a + 1 - &t * &t);
        let pts = quadric_points(&q, &l, &r, Shell::Surface).unwrap_or_default();
        pts.into_iter()
            .map(|mut b| {
                let last = &t - b.iter().sum::<BigInt>();
                b.push(last);
                class_from(model, a.clone(), b)
            })
            .filter(is_exceptional)
            .collect()
    });
    classes.sort();
    Ok(ClassTable { model, tag: TableTag::Exceptional, bound: degree_bound, classes, complete: false })
}

/// Spherical classes with `H`-degree in `[0, degree_bound]` whose square passes `filter`.
///
/// On `S^2 x S^2` these are `H1 + lH2` and `lH1 + H2` with `|l| <= degree_bound`.
pub fn spherical_classes(model: Model, degree_bound: u64, filter: SquareFilter) -> Result<ClassTable, EnumError> {
    let mut classes = match model {
        Model::SphereBundle => {
            let b = i64::try_from(degree_bound).unwrap_or(i64::MAX);
            let mut v = Vec::new();
            for l in -b..=b {
                v.push(IntClass::from_i64(model, &[1, l]).expect("rank 2"));
                if l != 1 {
                    v.push(IntClass::from_i64(model, &[l, 1]).expect("rank 2"));
                }
            }
            v
        }
        Model::Blowup(k) => {
            let n = k as usize;
            let degrees: Vec<u64> = (0..=degree_bound).collect();
            par_flat_map(degrees, |a| {
                // sum (b - 1/2)^2 = (a - 1)(a - 2) + k/4
                let a = BigInt::from(a);
                let rhs = BigRational::from_integer((&a - 1) * (&a - 2)) + rat(i64::from(k), 4);
                let pts = ellipsoid_points(&identity(n), &vec![rat(1, 2); n], &rhs, Shell::Surface).unwrap_or_default();
                pts.into_iter().map(|b| class_from(model, a.clone(), b)).collect()
            })
        }
    };
    classes.retain(|c| filter.admits(&c.square()) && is_spherical(c));
    classes.sort();
    classes.dedup();
    Ok(ClassTable { model, tag: TableTag::Spherical(filter), bound: degree_bound, classes, complete: false })
}

/// A spherical class `H_e` of non-negative square with `H_e . e` equal to 1, or to 2 with
/// `H_e` proportional to `e`, for a spherical `e` of positive square.
pub fn select_he(e: &IntClass) -> Result<IntClass, EnumError> {
    if !e.square().is_positive() {
        return Err(EnumError::Precondition { class: e.clone(), reason: "needs positive square" });
    }
    if !is_spherical(e) {
        return Err(EnumError::Precondition { class: e.clone(), reason: "not a spherical class" });
    }
    let model = e.model();
    let c = e.coeffs();
    match model {
        Model::SphereBundle => {
            // A_l = H1 + l H2 pairs once with H2, B_l = l H1 + H2 once with H1
            let i = if c[0].is_one() { 1 } else { 0 };
            Ok(IntClass::basis(model, i))
        }
        Model::Blowup(0) => Ok(IntClass::basis(model, 0)),
        Model::Blowup(1) if c[0] == &c[1] + 1 => Ok(IntClass::from_i64(model, &[1, 1]).expect("rank 2")),
        Model::Blowup(_) => {
            let (nf, word) = weyl::cremona_reduce(e).map_err(|_| EnumError::NotBlowup(model))?;
            let n = model.rank();
            let line = IntClass::basis(model, 0);
            let mut fibre = line.clone();
            if n > 1 {
                let mut v = fibre.into_coeffs();
                v[1] = BigInt::one();
                fibre = IntClass::new(model, v).expect("rank");
            }
            let partner = match weyl::list_form(&nf) {
                Some(ListForm::Line | ListForm::Conic) => line,
                Some(ListForm::Sections(_)) => fibre,
                Some(ListForm::SectionsWithPoint(n)) if n.is_one() => nf.clone(),
                Some(ListForm::SectionsWithPoint(_)) => fibre,
                Some(ListForm::Fibre) | None => {
                    return Err(EnumError::Unclassified { class: e.clone(), normal_form: nf });
                }
            };
            Ok(word.pull_back(&partner))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(k: u32, c: &[i64]) -> IntClass {
        IntClass::from_i64(Model::Blowup(k), c).unwrap()
    }

    #[test]
    fn exceptional_examples() {
        assert_eq!(exceptional_classes(Model::Blowup(1), 5).unwrap().classes, vec![b(1, &[0, -1])]);
        let t2 = exceptional_classes(Model::Blowup(2), 5).unwrap();
        assert_eq!(t2.classes, vec![b(2, &[0, -1, 0]), b(2, &[0, 0, -1]), b(2, &[1, 1, 1])]);
        assert!(t2.complete);
        let counts: Vec<usize> = (0..=8).map(|k| exceptional_classes(Model::Blowup(k), 1).unwrap().len()).collect();
        assert_eq!(counts, vec![0, 1, 3, 6, 10, 16, 27, 56, 240]);
        let t8 = exceptional_classes(Model::Blowup(8), 1).unwrap();
        t8.verify().unwrap();
        assert!(t8.classes.iter().all(|c| c.coeffs()[0] <= BigInt::from(t8.bound)));
    }

    #[test]
    fn exceptional_tables_are_weyl_orbits() {
        for k in 3..=7 {
            let m = Model::Blowup(k);
            let t = exceptional_classes(m, 1).unwrap();
            let ek = -IntClass::basis(m, k as usize);
            let orbit: Vec<IntClass> = weyl::orbit(&ek, 1000).unwrap().unwrap().into_iter().collect();
            assert_eq!(t.classes, orbit);
        }
    }

    #[test]
    fn bounded_exceptional_tables_beyond_eight() {
        let t = exceptional_classes(Model::Blowup(9), 3).unwrap();
        assert!(!t.complete);
        t.verify().unwrap();
        assert!(t.classes.contains(&b(9, &[3, 2, 1, 1, 1, 1, 1, 1, 0, 0])));
        // the orbit of E9 is infinite, but its low-degree part must all be here
        for c in &t.classes {
            assert!(is_exceptional(c));
        }
    }

    #[test]
    fn spherical_examples() {
        let t0 = spherical_classes(Model::Blowup(0), 2, SquareFilter::Any).unwrap();
        assert_eq!(t0.classes, vec![b(0, &[1]), b(0, &[2])]);
        let s = spherical_classes(Model::SphereBundle, 3, SquareFilter::Any).unwrap();
        for c in &s.classes {
            let x = c.coeffs();
            assert!(x[0].is_one() || x[1].is_one());
            assert!(x.iter().all(|v| *v <= BigInt::from(3)));
        }
        // the D_s family sH - (s-1)E, plus the conic 2H and the fibre H - E
        let t1 = spherical_classes(Model::Blowup(1), 3, SquareFilter::NonNegative).unwrap();
        for c in &t1.classes {
            let x = c.coeffs();
            assert!(x[0] == &x[1] + 1 || *c == b(1, &[2, 0]) || *c == b(1, &[1, 1]), "{c}");
        }
        assert_eq!(t1.len(), 5);
        assert!(t1.classes.contains(&b(1, &[3, 2])));
        assert!(!t1.classes.contains(&b(1, &[3, -1])));
    }

    #[test]
    fn spherical_dimension_formula() {
        for k in 0..4 {
            for c in spherical_classes(Model::Blowup(k), 6, SquareFilter::Any).unwrap().classes {
                assert_eq!(c.j_dimension().unwrap(), c.square() + 1);
            }
        }
    }

    #[test]
    fn select_he_examples() {
        let s = Model::SphereBundle;
        for l in 1..5 {
            let a = IntClass::from_i64(s, &[1, l]).unwrap();
            assert_eq!(select_he(&a).unwrap(), IntClass::from_i64(s, &[0, 1]).unwrap());
            let bl = IntClass::from_i64(s, &[l, 1]).unwrap();
            let want = if l == 1 { [0, 1] } else { [1, 0] };
            assert_eq!(select_he(&bl).unwrap(), IntClass::from_i64(s, &want).unwrap());
        }
        for n in 0..5 {
            assert_eq!(select_he(&b(1, &[n + 1, n])).unwrap(), b(1, &[1, 1]));
        }
        assert_eq!(select_he(&b(1, &[2, 0])).unwrap(), b(1, &[1, 0]));
        assert_eq!(select_he(&b(0, &[2])).unwrap(), b(0, &[1]));
        assert_eq!(select_he(&b(3, &[2, 1, 1, 0])).unwrap(), b(3, &[2, 1, 1, 0]));
        assert!(select_he(&b(2, &[1, 1, 0])).is_err());
        assert!(select_he(&b(1, &[3, -1])).is_err());
    }

    #[test]
    fn select_he_contract_on_tables() {
        for k in 2..5 {
            for e in spherical_classes(Model::Blowup(k), 7, SquareFilter::Positive).unwrap().classes {
                let h = select_he(&e).unwrap();
                let p = h.dot(&e);
                assert!(is_spherical(&h) && !h.square().is_negative(), "{e} -> {h}");
                assert!(p.is_one() || (p == BigInt::from(2) && h.scale(&BigInt::from(2)) == e || h == e), "{e} -> {h}");
            }
        }
    }
}
