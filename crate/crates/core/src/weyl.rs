//! Reflections in `(-2)`-roots and Cremona reduction on the blow-up lattices.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::Scalar;
use crate::lattice::{Class, IntClass, LatticeError, Model};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeylError {
    NotARoot { class: IntClass },
    NotBlowup(Model),
    Lattice(LatticeError),
}

impl fmt::Display for WeylError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotARoot { class } => write!(f, "{class} is not a root (needs square -2 and K.r = 0)"),
            Self::NotBlowup(m) => write!(f, "Cremona reduction needs a blow-up model, got {m}"),
            Self::Lattice(e) => e.fmt(f),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for WeylError {}

impl From<LatticeError> for WeylError {
    fn from(e: LatticeError) -> Self {
        Self::Lattice(e)
    }
}

/// A class `r` with `r.r = -2` and `K.r = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    class: IntClass,
}

impl Root {
    pub fn new(class: IntClass) -> Result<Self, WeylError> {
        if class.square() != BigInt::from(-2) || !class.k_dot().is_zero() {
            return Err(WeylError::NotARoot { class });
        }
        Ok(Self { class })
    }

    /// `Ei - Ej` (1-based indices), which swaps `bi` and `bj`.
    pub fn transposition(model: Model, i: usize, j: usize) -> Self {
        assert!(i != j && i >= 1 && j >= 1 && i.max(j) <= model.blowups());
        let mut c = IntClass::zero(model);
        c.coeffs_mut()[i] = BigInt::from(-1);
        c.coeffs_mut()[j] = BigInt::one();
        Self { class: c }
    }

    /// `H - Ei - Ej - El` (1-based, distinct).
    pub fn cremona(model: Model, i: usize, j: usize, l: usize) -> Self {
        assert!(i != j && j != l && i != l && i.max(j).max(l) <= model.blowups() && i.min(j).min(l) >= 1);
        let mut c = IntClass::basis(model, 0);
        for idx in [i, j, l] {
            c.coeffs_mut()[idx] = BigInt::one();
        }
        Self { class: c }
    }

    pub fn class(&self) -> &IntClass {
        &self.class
    }

    pub fn model(&self) -> Model {
        self.class.model()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.class.fmt(f)
    }
}

/// `e + (e.r) r`: the reflection in the hyperplane orthogonal to `r`.
pub fn reflect<T: Scalar>(e: &Class<T>, r: &Root) -> Result<Class<T>, WeylError> {
    e.check_model(r.model())?;
    Ok(reflect_unchecked(e, r))
}

fn reflect_unchecked<T: Scalar>(e: &Class<T>, r: &Root) -> Class<T> {
    let c = e.dot_int(&r.class);
    if c.is_zero() {
        return e.clone();
    }
    e.add_scaled_int(&r.class, &c)
}

/// Target ordering of the exceptional coefficients during reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SortOrder {
    /// Forward classes of non-negative square: `b1 >= b2 >= ...`.
    Descending,
    /// Everything else: `b1 <= b2 <= ...`.
    Ascending,
}

/// A sequence of reflections taking `start` to `end`, applied left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionWord<T> {
    pub start: Class<T>,
    pub end: Class<T>,
    pub roots: Vec<Root>,
    pub order: SortOrder,
}

impl<T: Scalar> ReductionWord<T> {
    /// Apply the word to an arbitrary class of the same model.
    pub fn push_forward<S: Scalar>(&self, c: &Class<S>) -> Class<S> {
        self.roots.iter().fold(c.clone(), |acc, r| reflect_unchecked(&acc, r))
    }

    /// Apply the inverse word; reflections are involutions so this is the reversed word.
    pub fn pull_back<S: Scalar>(&self, c: &Class<S>) -> Class<S> {
        self.roots.iter().rev().fold(c.clone(), |acc, r| reflect_unchecked(&acc, r))
    }

    /// Replay from `start`, checking every root and the descent of the reduction measure.
    pub fn verify(&self) -> bool {
        let mut cur = self.start.clone();
        let mut measure = reduction_measure(&cur, self.order);
        for r in &self.roots {
            if r.model() != cur.model() || Root::new(r.class.clone()).is_err() {
                return false;
            }
            cur = reflect_unchecked(&cur, r);
            let next = reduction_measure(&cur, self.order);
            if next >= measure {
                return false;
            }
            measure = next;
        }
        cur == self.end
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

/// `(|a|, number of out-of-order pairs)`, compared lexicographically.
pub fn reduction_measure<T: Scalar>(e: &Class<T>, order: SortOrder) -> (T, usize) {
    let b = &e.coeffs()[1..];
    let mut inversions = 0;
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            let bad = match order {
                SortOrder::Descending => b[i] < b[j],
                SortOrder::Ascending => b[i] > b[j],
            };
            inversions += usize::from(bad);
        }
    }
    (e.coeffs()[0].abs(), inversions)
}

fn sort_into<T: Scalar>(cur: &mut Class<T>, order: SortOrder, roots: &mut Vec<Root>) {
    let model = cur.model();
    let k = model.blowups();
    // bubble sort: stable, so equal coefficients keep the lower index first
    loop {
        let mut swapped = false;
        for i in 1..k {
            let (x, y) = (&cur.coeffs()[i], &cur.coeffs()[i + 1]);
            let bad = match order {
                SortOrder::Descending => x < y,
                SortOrder::Ascending => x > y,
            };
            if bad {
                let r = Root::transposition(model, i, i + 1);
                *cur = reflect_unchecked(cur, &r);
                roots.push(r);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
}

/// Positions (1-based) of the three largest `b`, lowest index first among ties.
fn three_largest<T: Scalar>(e: &Class<T>) -> [usize; 3] {
    let mut idx: Vec<usize> = (1..=e.model().blowups()).collect();
    idx.sort_by(|&i, &j| e.coeffs()[j].cmp(&e.coeffs()[i]).then(i.cmp(&j)));
    let mut t = [idx[0], idx[1], idx[2]];
    t.sort_unstable();
    t
}

fn is_forward_nonneg<T: Scalar>(e: &Class<T>) -> bool {
    !e.square().is_negative() && e.coeffs()[0].is_positive()
}

/// Reduce `e` under the Weyl group generated by `Ei - Ej` and `H - Ei - Ej - El`.
///
/// Forward classes of non-negative square go to the dominant chamber
/// (`b` descending, `a >= b1 + b2 + b3`). Other classes are sorted ascending and a Cremona
/// reflection is applied only when it lowers `|a|`. With fewer than three blow-ups only
/// the permutations are available.
pub fn reduce<T: Scalar>(e: &Class<T>) -> Result<ReductionWord<T>, WeylError> {
    let model = e.model();
    let Model::Blowup(k) = model else {
        return Err(WeylError::NotBlowup(model));
    };
    let order = if is_forward_nonneg(e) { SortOrder::Descending } else { SortOrder::Ascending };
    let mut cur = e.clone();
    let mut roots = Vec::new();
    sort_into(&mut cur, order, &mut roots);
    if k >= 3 {
        loop {
            let [i, j, l] = three_largest(&cur);
            let r = Root::cremona(model, i, j, l);
            let pairing = cur.dot_int(&r.class);
            let apply = match order {
                SortOrder::Descending => pairing.is_negative(),
                SortOrder::Ascending => {
                    let next = reflect_unchecked(&cur, &r);
                    next.coeffs()[0].abs() < cur.coeffs()[0].abs()
                }
            };
            if !apply {
                break;
            }
            cur = reflect_unchecked(&cur, &r);
            roots.push(r);
            sort_into(&mut cur, order, &mut roots);
        }
    }
    Ok(ReductionWord { start: e.clone(), end: cur, roots, order })
}

/// Normal form and certifying word of an integral class.
pub fn cremona_reduce(e: &IntClass) -> Result<(IntClass, ReductionWord<BigInt>), WeylError> {
    let w = reduce(e)?;
    Ok((w.end.clone(), w))
}

/// Whether two classes share a normal form, with both certifying words.
pub fn is_equivalent(
    e1: &IntClass,
    e2: &IntClass,
) -> Result<(bool, ReductionWord<BigInt>, ReductionWord<BigInt>), WeylError> {
    e1.check_model(e2.model())?;
    let w1 = reduce(e1)?;
    let w2 = reduce(e2)?;
    Ok((w1.end == w2.end, w1, w2))
}

/// The forms a non-negative-square spherical class can reduce to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ListForm {
    Line,
    Conic,
    /// `(n+1)H - nE1`, `n >= 1`.
    Sections(BigInt),
    /// `(n+1)H - nE1 - E2`, `n >= 1`.
    SectionsWithPoint(BigInt),
    /// `H - E1`, the square-zero fibre class.
    Fibre,
}

/// Recognise a reduced class in the classification list, ignoring trailing zeros.
pub fn list_form(nf: &IntClass) -> Option<ListForm> {
    let c = nf.coeffs();
    let a = &c[0];
    let b = &c[1..];
    let nonzero = b.iter().rposition(|x| !x.is_zero()).map_or(0, |p| p + 1);
    let one = BigInt::one();
    match nonzero {
        0 if a.is_one() => Some(ListForm::Line),
        0 if *a == BigInt::from(2) => Some(ListForm::Conic),
        1 if b[0].is_one() && a.is_one() => Some(ListForm::Fibre),
        1 if b[0] >= one && *a == &b[0] + 1 => Some(ListForm::Sections(b[0].clone())),
        2 if b[0] >= one && b[1].is_one() && *a == &b[0] + 1 => Some(ListForm::SectionsWithPoint(b[0].clone())),
        _ => None,
    }
}

/// Reduction under the full group realised by diffeomorphisms: the Weyl group together with
/// sign changes of the `Ei`. Used to decide whether a non-negative-square class of genus zero
/// is carried by an embedded sphere (it is exactly when the reduced form still has genus zero).
///
/// Classes on fewer than three blow-ups are padded with zero coefficients first, so the result
/// lives on `Blowup(max(k, 3))`; padding does not change the minimal genus.
pub fn diffeo_reduce(e: &IntClass) -> Result<IntClass, WeylError> {
    let model = e.model();
    let Model::Blowup(k) = model else {
        return Err(WeylError::NotBlowup(model));
    };
    let k = k.max(3);
    let mut a = e.coeffs()[0].abs();
    let mut b: Vec<BigInt> = e.coeffs()[1..].iter().map(Signed::abs).collect();
    b.resize(k as usize, BigInt::zero());
    loop {
        b.sort_unstable_by(|x, y| y.cmp(x));
        let s = &b[0] + &b[1] + &b[2];
        if a >= s {
            break;
        }
        let d = &a - &s;
        let next = (&a + &d).abs();
        // only happens for negative squares, where degree descent is not guaranteed
        if next >= a {
            break;
        }
        a = next;
        for x in b.iter_mut().take(3) {
            *x = (&*x + &d).abs();
        }
    }
    let mut coeffs = Vec::with_capacity(k as usize + 1);
    coeffs.push(a);
    coeffs.extend(b);
    Ok(IntClass::new(Model::Blowup(k), coeffs)?)
}

/// The orbit of `e` under the reflection group, or `None` once it exceeds `limit` classes.
pub fn orbit(e: &IntClass, limit: usize) -> Result<Option<alloc::collections::BTreeSet<IntClass>>, WeylError> {
    let model = e.model();
    let Model::Blowup(k) = model else {
        return Err(WeylError::NotBlowup(model));
    };
    let k = k as usize;
    let mut gens: Vec<Root> = (1..k).map(|i| Root::transposition(model, i, i + 1)).collect();
    if k >= 3 {
        gens.push(Root::cremona(model, 1, 2, 3));
    }
    let mut seen = alloc::collections::BTreeSet::new();
    let mut queue = alloc::vec![e.clone()];
    seen.insert(e.clone());
    while let Some(c) = queue.pop() {
        for r in &gens {
            let next = reflect_unchecked(&c, r);
            if seen.insert(next.clone()) {
                if seen.len() > limit {
                    return Ok(None);
                }
                queue.push(next);
            }
        }
    }
    Ok(Some(seen))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::RayClass;
    use proptest::prelude::*;

    fn b(k: u32, c: &[i64]) -> IntClass {
        IntClass::from_i64(Model::Blowup(k), c).unwrap()
    }

    #[test]
    fn reflect_examples() {
        let m = Model::Blowup(3);
        let r = Root::cremona(m, 1, 2, 3);
        assert_eq!(reflect(&b(3, &[2, 1, 1, 1]), &r).unwrap(), b(3, &[1, 0, 0, 0]));
        let t = Root::transposition(m, 1, 2);
        assert_eq!(reflect(&b(3, &[0, -1, 0, 0]), &t).unwrap(), b(3, &[0, 0, -1, 0]));
        assert!(Root::new(b(3, &[1, 1, 1, 0])).is_err());
        assert!(Root::new(b(3, &[1, 1, 1, 1])).is_ok());
        assert!(reflect(&b(2, &[1, 0, 0]), &r).is_err());
    }

    #[test]
    fn reduce_examples() {
        let (nf, w) = cremona_reduce(&b(3, &[2, 1, 1, 1])).unwrap();
        assert_eq!(nf, b(3, &[1, 0, 0, 0]));
        assert_eq!(w.len(), 1);
        assert!(w.verify());
        for n in 1..6 {
            let e = b(3, &[n + 1, n, 0, 0]);
            assert_eq!(cremona_reduce(&e).unwrap().0, e);
        }
        assert_eq!(cremona_reduce(&b(2, &[0, 0, -1])).unwrap().0, b(2, &[0, -1, 0]));
        assert!(matches!(
            cremona_reduce(&IntClass::from_i64(Model::SphereBundle, &[1, 1]).unwrap()),
            Err(WeylError::NotBlowup(_))
        ));
    }

    #[test]
    fn equivalence_examples() {
        assert!(is_equivalent(&b(3, &[2, 1, 1, 1]), &b(3, &[1, 0, 0, 0])).unwrap().0);
        assert!(!is_equivalent(&b(3, &[1, 0, 0, 0]), &b(3, &[2, 0, 0, 0])).unwrap().0);
        assert!(is_equivalent(&b(3, &[0, -1, 0, 0]), &b(3, &[0, 0, -1, 0])).unwrap().0);
    }

    #[test]
    fn exceptional_classes_reduce_to_e1() {
        assert_eq!(cremona_reduce(&b(4, &[1, 1, 1, 0, 0])).unwrap().0, b(4, &[0, -1, 0, 0, 0]));
        assert_eq!(cremona_reduce(&b(5, &[2, 1, 1, 1, 1, 1])).unwrap().0, b(5, &[0, -1, 0, 0, 0, 0]));
    }

    #[test]
    fn exceptional_orbits() {
        let sizes = [(3, 6), (4, 10), (5, 16), (6, 27), (7, 56), (8, 240)];
        for (k, n) in sizes {
            let mut e = IntClass::zero(Model::Blowup(k));
            e = &e - &IntClass::basis(Model::Blowup(k), k as usize);
            assert_eq!(orbit(&e, 1000).unwrap().unwrap().len(), n);
        }
        assert!(orbit(&b(9, &[0, 0, 0, 0, 0, 0, 0, 0, 0, -1]), 2000).unwrap().is_none());
    }

    #[test]
    fn list_recognition() {
        assert_eq!(list_form(&b(4, &[1, 0, 0, 0, 0])), Some(ListForm::Line));
        assert_eq!(list_form(&b(4, &[2, 0, 0, 0, 0])), Some(ListForm::Conic));
        assert_eq!(list_form(&b(4, &[4, 3, 0, 0, 0])), Some(ListForm::Sections(BigInt::from(3))));
        assert_eq!(list_form(&b(4, &[4, 3, 1, 0, 0])), Some(ListForm::SectionsWithPoint(BigInt::from(3))));
        assert_eq!(list_form(&b(4, &[1, 1, 0, 0, 0])), Some(ListForm::Fibre));
        assert_eq!(list_form(&b(4, &[3, 1, 1, 1, 1])), None);
    }

    #[test]
    fn diffeo_reduction_detects_non_spheres() {
        // 3H + E1 has genus zero but is carried by a cubic, not a sphere
        assert_eq!(diffeo_reduce(&b(1, &[3, -1])).unwrap(), b(3, &[3, 1, 0, 0]));
        // 5H - 3E1 - 3E2 needs a third blow-up to see the Cremona step down to genus one
        assert_eq!(diffeo_reduce(&b(2, &[5, 3, 3])).unwrap(), b(3, &[3, 1, 1, 0]));
        assert_eq!(diffeo_reduce(&b(3, &[2, 1, 1, 1])).unwrap(), b(3, &[1, 0, 0, 0]));
    }

    #[test]
    fn rational_reduction_reaches_dominant_chamber() {
        let e = RayClass::from_ratios(Model::Blowup(4), &[(6, 1), (3, 1), (1, 3), (5, 2), (2, 1)]).unwrap();
        let w = reduce(&e).unwrap();
        assert!(w.verify());
        let c = w.end.coeffs();
        assert!(c[1] >= c[2] && c[2] >= c[3] && c[3] >= c[4]);
        assert!(c[0] >= &c[1] + &c[2] + &c[3]);
        assert_eq!(w.end.square(), e.square());
        assert_eq!(w.pull_back(&w.end), e);
    }

    /// Model size, a class, a second class and a word of Cremona or transposition steps.
    type Sample = (u32, Vec<i64>, Vec<i64>, Vec<(usize, usize, usize, bool)>);

    fn class_and_word() -> impl Strategy<Value = Sample> {
        (3u32..8).prop_flat_map(|k| {
            let n = k as usize + 1;
            let idx = 1..=k as usize;
            (
                Just(k),
                proptest::collection::vec(-9i64..9, n),
                proptest::collection::vec(-9i64..9, n),
                proptest::collection::vec((idx.clone(), idx.clone(), idx, any::<bool>()), 0..8),
            )
        })
    }

    fn word_roots(m: Model, spec: &[(usize, usize, usize, bool)]) -> Vec<Root> {
        spec.iter()
            .filter_map(|&(i, j, l, cremona)| {
                if cremona && i != j && j != l && i != l {
                    Some(Root::cremona(m, i, j, l))
                } else if i != j {
                    Some(Root::transposition(m, i, j))
                } else {
                    None
                }
            })
            .collect()
    }

    proptest! {
        #[test]
        fn reflections_are_isometric_involutions((k, x, y, spec) in class_and_word()) {
            let m = Model::Blowup(k);
            let e = IntClass::from_i64(m, &x).unwrap();
            let f = IntClass::from_i64(m, &y).unwrap();
            let kk = m.canonical_class();
            let (mut re, mut rf) = (e.clone(), f.clone());
            for r in word_roots(m, &spec) {
                prop_assert_eq!(reflect(&reflect(&re, &r).unwrap(), &r).unwrap(), re.clone());
                re = reflect(&re, &r).unwrap();
                rf = reflect(&rf, &r).unwrap();
                prop_assert_eq!(reflect(&kk, &r).unwrap(), kk.clone());
            }
            prop_assert_eq!(re.dot(&rf), e.dot(&f));
            prop_assert_eq!(re.j_genus().unwrap(), e.j_genus().unwrap());
            prop_assert_eq!(re.j_dimension().unwrap(), e.j_dimension().unwrap());
        }

        #[test]
        fn reduction_is_idempotent_and_replays((k, x, _y, _s) in class_and_word()) {
            let e = IntClass::from_i64(Model::Blowup(k), &x).unwrap();
            let (nf, w) = cremona_reduce(&e).unwrap();
            prop_assert!(w.verify());
            prop_assert_eq!(cremona_reduce(&nf).unwrap().0, nf.clone());
            prop_assert_eq!(w.pull_back(&nf), e.clone());
            prop_assert_eq!(nf.square(), e.square());
            prop_assert_eq!(nf.k_dot(), e.k_dot());
        }
    }
}
