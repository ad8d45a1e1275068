//! Exhaustive check of the adjunction inequality consequences used for nefness.

use alloc::vec::Vec;

use crate::lattice::{IntClass, Model};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScreenReport {
    /// Classes `aH - sum b_i E_i` with `a > 0` and adjunction number at least `-2` that were visited.
    pub checked: u64,
    /// Those with every `b_i >= 0`.
    pub checked_nonnegative: u64,
    /// Classes with `b_i >= 0` but some `b_i > a`.
    pub degree_violations: Vec<IntClass>,
    /// Classes with `a > 0` pairing negatively with `H - E_1`.
    pub fibre_violations: Vec<IntClass>,
}

impl ScreenReport {
    pub fn passed(&self) -> bool {
        self.degree_violations.is_empty() && self.fibre_violations.is_empty()
    }
}

/// Visit every class on `k` blow-ups with `1 <= a <= max_degree`, `|b_i| <= 2a + 2` and
/// `e.e + K.e >= -2`, and test both `a >= b_i` (for `b >= 0`) and `(H - E_1).e >= 0`.
///
/// With `a` fixed the adjunction number is `a^2 - 3a - sum (b_i^2 - b_i)`, a sum of non-positive
/// integer terms in the `b_i`, so the box is pruned coordinate by coordinate.
pub fn general_screen(k: u32, max_degree: u64) -> ScreenReport {
    let model = Model::Blowup(k);
    let mut report = ScreenReport::default();
    for a in 1..=max_degree as i64 {
        let budget = a * a - 3 * a + 2;
        let w = 2 * a + 2;
        let mut b = alloc::vec![0i64; k as usize];
        visit(model, a, w, budget, 0, &mut b, &mut report);
    }
    report
}

fn visit(model: Model, a: i64, w: i64, budget: i64, i: usize, b: &mut Vec<i64>, report: &mut ScreenReport) {
    if i == b.len() {
        report.checked += 1;
        let mut coeffs = Vec::with_capacity(b.len() + 1);
        coeffs.push(a);
        coeffs.extend(b.iter().copied());
        let class = || IntClass::from_i64(model, &coeffs).expect("rank matches");
        if b.iter().all(|&x| x >= 0) {
            report.checked_nonnegative += 1;
            if b.iter().any(|&x| x > a) {
                report.degree_violations.push(class());
            }
        }
        // (H - E1).e = a - b_1
        if b.first().is_some_and(|&b1| a - b1 < 0) {
            report.fibre_violations.push(class());
        }
        return;
    }
    for x in -w..=w {
        let cost = x * x - x;
        if cost > budget {
            continue;
        }
        b[i] = x;
        visit(model, a, w, budget - cost, i + 1, b, report);
    }
    b[i] = 0;
}
