//! Reducible configurations: multisets of spherical classes summing to a class.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{is_nef, ConfigError, CurveConeSpec, NefVerdict};
use crate::enumerate::{exceptional_classes, is_spherical, par_flat_map, spherical_classes, SquareFilter};
use crate::lattice::{IntClass, Model};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Part {
    pub class: IntClass,
    pub multiplicity: u32,
}

/// Curves `C_i` with multiplicities. Equal classes may appear as separate parts when they are
/// distinct curves, which needs square at least zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    pub parts: Vec<Part>,
    pub total: IntClass,
}

impl Configuration {
    /// Parts are put in canonical order; the sum and genus of each part are checked.
    pub fn new(mut parts: Vec<Part>, total: IntClass) -> Result<Self, ConfigError> {
        let model = total.model();
        let mut sum = IntClass::zero(model);
        for p in &parts {
            p.class.check_model(model)?;
            if p.multiplicity == 0 || !p.class.j_genus()?.is_zero() {
                return Err(ConfigError::Precondition {
                    class: p.class.clone(),
                    reason: "parts must be genus zero with positive multiplicity",
                });
            }
            sum = sum.add_scaled_int(&p.class, &BigInt::from(p.multiplicity));
        }
        if sum != total {
            return Err(ConfigError::Precondition { class: total, reason: "parts do not sum to the total" });
        }
        parts.sort();
        Ok(Self { parts, total })
    }

    /// Edges `(i, j, e_i.e_j)` for pairs meeting positively.
    pub fn edges(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out = Vec::new();
        for i in 0..self.parts.len() {
            for j in i + 1..self.parts.len() {
                let w = self.parts[i].class.dot(&self.parts[j].class);
                if w.is_positive() {
                    out.push((i, j, w));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let n = self.parts.len();
        let mut seen = alloc::vec![false; n];
        let mut stack = Vec::from([0]);
        let edges = self.edges();
        while let Some(i) = stack.pop() {
            if core::mem::replace(&mut seen[i], true) {
                continue;
            }
            for (a, b, _) in &edges {
                if *a == i && !seen[*b] {
                    stack.push(*b);
                } else if *b == i && !seen[*a] {
                    stack.push(*a);
                }
            }
        }
        n > 0 && seen.into_iter().all(|s| s)
    }

    /// Number of curves counted with multiplicity.
    pub fn curve_count(&self) -> u32 {
        self.parts.iter().map(|p| p.multiplicity).sum()
    }

    pub fn is_reducible(&self) -> bool {
        self.curve_count() > 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub total: IntClass,
    /// Candidate part classes that passed the curve spec filters.
    pub candidates: usize,
    pub configurations: Vec<Configuration>,
    /// The bounds provably cut the search: the class has larger degree than the part bound, or a
    /// configuration with one curve beyond the part limit exists.
    pub truncated: bool,
}

fn degree_coords(model: Model) -> &'static [usize] {
    match model {
        Model::SphereBundle => &[0, 1],
        Model::Blowup(_) => &[0],
    }
}

fn within_degree(c: &IntClass, bound: &BigInt) -> bool {
    degree_coords(c.model()).iter().all(|&j| c.coeffs()[j].abs() <= *bound)
}

fn candidates(e: &IntClass, spec: &CurveConeSpec, max_degree: u64) -> Result<Vec<IntClass>, ConfigError> {
    let model = spec.model;
    let bound = BigInt::from(max_degree);
    let mut set: BTreeSet<IntClass> = spherical_classes(model, max_degree, SquareFilter::NonNegative)?
        .classes
        .into_iter()
        .filter(|c| c.is_forward_nonnegative())
        .collect();
    let curves = spec.curve_classes();
    set.extend(curves.iter().filter(|c| within_degree(c, &bound)).cloned());
    if spec.flags.top_stratum && model.blowups() > 0 {
        set.extend(exceptional_classes(model, max_degree)?.classes.into_iter().filter(|c| within_degree(c, &bound)));
    }
    let nef = is_nef(e, spec)? == NefVerdict::Nef;
    Ok(set
        .into_iter()
        .filter(is_spherical)
        // distinct irreducible curves meet non-negatively
        .filter(|c| curves.iter().all(|d| d == c || !c.dot(d).is_negative()))
        .filter(|c| !nef || !e.dot(c).is_negative())
        .collect())
}

/// Parts as `(candidate index, multiplicity)`.
type Choice = Vec<(usize, u32)>;

struct Search<'a> {
    cands: &'a [IntClass],
    max_parts: u32,
    /// Per degree coordinate, the least and largest candidate value.
    ranges: Vec<(usize, BigInt, BigInt)>,
}

impl Search<'_> {
    fn feasible(&self, residual: &IntClass, slots: u32) -> bool {
        if residual.is_zero() {
            return true;
        }
        if slots == 0 {
            return false;
        }
        let s = BigInt::from(slots);
        self.ranges.iter().all(|(j, lo, hi)| {
            let x = &residual.coeffs()[*j];
            let lo = if lo.is_negative() { lo * &s } else { lo.clone() };
            let hi = if hi.is_positive() { hi * &s } else { hi.clone() };
            lo <= *x && *x <= hi
        })
    }

    fn compatible(&self, chosen: &[(usize, u32)], i: usize) -> bool {
        let c = &self.cands[i];
        chosen
            .iter()
            .all(|&(j, _)| if j == i { !c.square().is_negative() } else { !c.dot(&self.cands[j]).is_negative() })
    }

    /// Depth-first over parts `(index, multiplicity)` in canonical order: index ascending,
    /// multiplicity descending within an index. `only` pins the first index.
    fn run(
        &self,
        residual: &IntClass,
        chosen: &mut Vec<(usize, u32)>,
        used: u32,
        only: Option<usize>,
        out: &mut Vec<Choice>,
        over: &mut bool,
    ) {
        if residual.is_zero() {
            out.push(chosen.clone());
            return;
        }
        let slots = self.max_parts - used;
        let (start, cap) = match chosen.last() {
            Some(&(j, m)) => (j, m),
            None => (only.unwrap_or(0), u32::MAX),
        };
        let end = only.map_or(self.cands.len(), |i| i + 1);
        for i in start..end {
            if !self.compatible(chosen, i) {
                continue;
            }
            let c = &self.cands[i];
            let top = if i == start && !chosen.is_empty() { cap.min(slots) } else { slots };
            let mut rest = residual.clone();
            for m in 1..=top {
                rest = &rest - c;
                chosen.push((i, m));
                if slots == m && !rest.is_zero() {
                    // one more curve would finish: the part limit cuts a real configuration
                    if let Ok(j) = self.cands.binary_search(&rest) {
                        *over |= j >= i && self.compatible(chosen, j);
                    }
                } else if self.feasible(&rest, slots - m) {
                    self.run(&rest, chosen, used + m, None, out, over);
                }
                chosen.pop();
            }
        }
    }
}

/// All reducible configurations of `e` into spherical curve classes allowed by the spec, with at
/// most `max_parts` curves counted with multiplicity and parts of degree at most `max_degree`.
///
/// Parts pair non-negatively with each other and with the curve spec's curves, and with `e` when `e`
/// is certified nef. Connectedness is not imposed; see [`Configuration::is_connected`]. The total
/// may have positive genus, though the dimension bounds are only claimed for spherical totals.
pub fn enumerate_configurations(
    e: &IntClass,
    spec: &CurveConeSpec,
    max_parts: u32,
    max_degree: u64,
) -> Result<Census, ConfigError> {
    e.check_model(spec.model)?;
    if e.j_genus()?.is_negative() {
        return Err(ConfigError::Precondition { class: e.clone(), reason: "class has negative genus" });
    }
    spec.validate()?;
    let cands = candidates(e, spec, max_degree)?;
    let ranges: Vec<(usize, BigInt, BigInt)> = degree_coords(spec.model)
        .iter()
        .map(|&j| {
            let vals = cands.iter().map(|c| c.coeffs()[j].clone());
            let lo = vals.clone().min().unwrap_or_else(BigInt::zero);
            let hi = vals.max().unwrap_or_else(BigInt::zero);
            (j, lo, hi)
        })
        .collect();
    let search = Search { cands: &cands, max_parts, ranges };
    let firsts: Vec<usize> = (0..cands.len()).collect();
    let results: Vec<(Vec<Choice>, bool)> = par_flat_map(firsts, |i| {
        let mut out = Vec::new();
        let mut over = false;
        search.run(e, &mut Vec::new(), 0, Some(i), &mut out, &mut over);
        alloc::vec![(out, over)]
    });
    let mut truncated = degree_coords(spec.model).iter().any(|&j| e.coeffs()[j].abs() > BigInt::from(max_degree));
    let mut configurations = Vec::new();
    for (found, over) in results {
        truncated |= over;
        for parts in found {
            let parts: Vec<Part> =
                parts.into_iter().map(|(i, m)| Part { class: cands[i].clone(), multiplicity: m }).collect();
            let config = Configuration::new(parts, e.clone())?;
            if config.is_reducible() {
                configurations.push(config);
            }
        }
    }
    configurations.sort();
    configurations.dedup();
    Ok(Census { total: e.clone(), candidates: cands.len(), configurations, truncated })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundCheck {
    /// A single curve of multiplicity one: nothing to bound.
    Irreducible,
    /// The bound is only claimed for connected configurations.
    Disconnected,
    /// `sum m_i l(e_i) <= l(e) - 1`.
    Checked { lhs: BigInt, rhs: BigInt, holds: bool, equality: bool },
}

/// The sharper estimate at a negative part `e_p` meeting the total positively:
/// `sum m_j l(e_j) + m_p (e_p.e) <= l(e) - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharperBound {
    pub part: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub bound: BoundCheck,
    pub sharper: Vec<SharperBound>,
}

impl DimensionReport {
    pub fn holds(&self) -> bool {
        !matches!(self.bound, BoundCheck::Checked { holds: false, .. }) && self.sharper.iter().all(|s| s.holds)
    }

    pub fn is_equality(&self) -> bool {
        matches!(self.bound, BoundCheck::Checked { equality: true, .. })
    }
}

pub fn check_dimension_bounds(c: &Configuration) -> Result<DimensionReport, ConfigError> {
    if !c.is_reducible() {
        return Ok(DimensionReport { bound: BoundCheck::Irreducible, sharper: Vec::new() });
    }
    if !c.is_connected() {
        return Ok(DimensionReport { bound: BoundCheck::Disconnected, sharper: Vec::new() });
    }
    let rhs = c.total.l_value()? - BigInt::one();
    let mut lhs = BigInt::zero();
    for p in &c.parts {
        lhs += p.class.l_value()? * BigInt::from(p.multiplicity);
    }
    let mut sharper = Vec::new();
    for (i, p) in c.parts.iter().enumerate() {
        let meet = p.class.dot(&c.total);
        if p.class.square().is_negative() && meet.is_positive() {
            let s = &lhs + meet * BigInt::from(p.multiplicity);
            sharper.push(SharperBound { part: i, holds: s <= rhs, lhs: s, rhs: rhs.clone() });
        }
    }
    let bound = BoundCheck::Checked { holds: lhs <= rhs, equality: lhs == rhs, lhs, rhs };
    Ok(DimensionReport { bound, sharper })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    /// Two curves of non-negative square meeting once.
    TwoPieceTransverse,
    /// A negative curve of square `1 - n` met once by `n - 1 >= 2` equal fibres of square zero.
    Comb,
    /// Acyclic intersection graph with every intersection number one.
    Tree,
    Other,
}

pub fn classify_shape(c: &Configuration) -> Shape {
    if !c.is_connected() {
        return Shape::Other;
    }
    let n = c.parts.len();
    let simple = c.parts.iter().all(|p| p.multiplicity == 1);
    let one = BigInt::one();
    if n == 2 && simple {
        let (a, b) = (&c.parts[0].class, &c.parts[1].class);
        if a.dot(b) == one && !a.square().is_negative() && !b.square().is_negative() {
            return Shape::TwoPieceTransverse;
        }
    }
    let negatives: Vec<usize> = (0..n).filter(|&i| c.parts[i].class.square().is_negative()).collect();
    if n >= 3 && simple && negatives.len() == 1 {
        let hub = &c.parts[negatives[0]].class;
        let teeth: Vec<&IntClass> = c.parts.iter().map(|p| &p.class).filter(|x| *x != hub).collect();
        let n_i = BigInt::from(n);
        if hub.square() == &one - &n_i
            && teeth.len() == n - 1
            && teeth.iter().all(|t| *t == teeth[0] && t.square().is_zero() && t.dot(hub) == one)
        {
            return Shape::Comb;
        }
    }
    let edges = c.edges();
    if edges.len() + 1 == n && edges.iter().all(|(_, _, w)| *w == one) {
        return Shape::Tree;
    }
    Shape::Other
}
