//! Brute-force reference computations on `i64` coefficient vectors, written without the core
//! enumerators so that the two can be compared. Blow-up vectors are `(a; b1..bk)` for
//! `aH - sum bi Ei`; rational classes are passed as integer numerators over a positive
//! denominator, which does not change any sign below.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    In,
    Out,
    Boundary,
}

pub fn pair(x: &[i64], y: &[i64]) -> i64 {
    x[0] * y[0] - x[1..].iter().zip(&y[1..]).map(|(a, b)| a * b).sum::<i64>()
}

pub fn square(x: &[i64]) -> i64 {
    pair(x, x)
}

/// `K = -3H + sum Ei`.
pub fn canonical(k: usize) -> Vec<i64> {
    let mut v = vec![-1; k + 1];
    v[0] = -3;
    v
}

pub fn k_dot(x: &[i64]) -> i64 {
    -3 * x[0] + x[1..].iter().sum::<i64>()
}

pub fn genus(x: &[i64]) -> i64 {
    (square(x) + k_dot(x)) / 2 + 1
}

/// `l = max((e.e - K.e) / 2, 0)`.
pub fn l_value(x: &[i64]) -> i64 {
    ((square(x) - k_dot(x)) / 2).max(0)
}

fn isqrt(n: i64) -> i64 {
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Exceptional classes on `k <= 8` blow-ups by a box search. `e.e = -1` gives
/// `sum b^2 = a^2 + 1`, so each `|b_i| <= sqrt(a^2 + 1)`; `K.e = -1` gives `sum b = 3a - 1`,
/// and Cauchy-Schwarz `(3a - 1)^2 <= k (a^2 + 1)` bounds `a`.
pub fn exceptional(k: usize) -> Vec<Vec<i64>> {
    assert!(k <= 8, "the exceptional set is infinite beyond eight blow-ups");
    let kk = k as i64;
    let mut out = Vec::new();
    let mut a = 0;
    while a == 0 || (3 * a - 1) * (3 * a - 1) <= kk * (a * a + 1) {
        let norm = a * a + 1;
        let mut b = vec![0; k];
        box_search(&mut b, 0, norm, 3 * a - 1, isqrt(norm), &mut |b| {
            let mut v = vec![a];
            v.extend_from_slice(b);
            out.push(v);
        });
        a += 1;
    }
    out.sort();
    out
}

/// All `b` with `sum b^2 = norm` and `sum b = total`, pruning on the remaining squared norm and,
/// by Cauchy-Schwarz, on the remaining linear sum.
fn box_search(b: &mut [i64], i: usize, norm: i64, total: i64, r: i64, emit: &mut impl FnMut(&[i64])) {
    let n = b.len();
    if i == n {
        if norm == 0 && total == 0 {
            emit(b);
        }
        return;
    }
    let left = (n - i) as i64;
    if total * total > left * norm {
        return;
    }
    for x in -r..=r {
        if x * x > norm {
            continue;
        }
        b[i] = x;
        box_search(b, i + 1, norm - x * x, total - x, r, emit);
    }
    b[i] = 0;
}

/// Genus-zero classes of non-negative square with `1 <= a <= max_degree`. Genus zero reads
/// `sum (b_i^2 - b_i) = a^2 - 3a + 2`, a sum of non-negative terms.
pub fn spherical_nonneg(k: usize, max_degree: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for a in 1..=max_degree {
        let budget = a * a - 3 * a + 2;
        let mut b = vec![0; k];
        adjunction_search(&mut b, 0, budget, &mut |b| {
            if b.iter().map(|x| x * x).sum::<i64>() <= a * a {
                let mut v = vec![a];
                v.extend_from_slice(b);
                out.push(v);
            }
        });
    }
    out.sort();
    out
}

fn adjunction_search(b: &mut [i64], i: usize, budget: i64, emit: &mut impl FnMut(&[i64])) {
    if i == b.len() {
        if budget == 0 {
            emit(b);
        }
        return;
    }
    // x^2 - x <= budget forces |x| <= budget + 1
    for x in -(budget + 1)..=(budget + 1) {
        let cost = x * x - x;
        if cost <= budget {
            b[i] = x;
            adjunction_search(b, i + 1, budget - cost, emit);
        }
    }
    b[i] = 0;
}

/// `C_K` against an explicit list of exceptional classes; forwardness is tested with `H`.
pub fn in_ck(x: &[i64], exceptional: &[Vec<i64>]) -> Side {
    let sq = square(x);
    if sq < 0 || x[0] <= 0 {
        return Side::Out;
    }
    let worst = exceptional.iter().map(|e| pair(x, e)).min();
    match worst {
        Some(p) if p < 0 => Side::Out,
        Some(0) => Side::Boundary,
        _ if sq == 0 => Side::Boundary,
        _ => Side::In,
    }
}

/// `P_K`: `C_K` and `-K.e > 0`.
pub fn in_pk(x: &[i64], exceptional: &[Vec<i64>]) -> Side {
    let mk = -k_dot(x);
    match (in_ck(x, exceptional), mk) {
        (Side::Out, _) => Side::Out,
        (_, m) if m < 0 => Side::Out,
        (Side::In, m) if m > 0 => Side::In,
        _ => Side::Boundary,
    }
}

/// Decide whether a normal form lies in the classification list
/// `H, 2H, (n+1)H - nE1, (n+1)H - nE1 - E2` up to trailing zeros. The last family is also
/// taken at `n = 0`, which after sorting is the fibre `H - E1`.
pub fn in_list(x: &[i64]) -> bool {
    let a = x[0];
    let b: Vec<i64> = {
        let mut v = x[1..].to_vec();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    match b.as_slice() {
        [] => a == 1 || a == 2,
        [1] if a == 1 => true,
        [n] => *n >= 1 && a == n + 1,
        [n, 1] => *n >= 1 && a == n + 1,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(exceptional(0).len(), 0);
        assert_eq!(exceptional(1), vec![vec![0, -1]]);
        assert_eq!(exceptional(2).len(), 3);
        let counts: Vec<usize> = (3..=8).map(|k| exceptional(k).len()).collect();
        assert_eq!(counts, vec![6, 10, 16, 27, 56, 240]);
    }

    #[test]
    fn plane_spheres() {
        assert_eq!(spherical_nonneg(0, 3), vec![vec![1], vec![2]]);
        assert!(spherical_nonneg(1, 3).contains(&vec![3, 2]));
    }

    #[test]
    fn cone_sides() {
        let ex = exceptional(2);
        assert_eq!(in_ck(&[3, 1, 1], &ex), Side::In);
        assert_eq!(in_ck(&[2, 1, 1], &ex), Side::Boundary);
        assert_eq!(in_pk(&[3, 1, 1], &ex), Side::In);
        assert_eq!(
            in_pk(&[3; 11].iter().enumerate().map(|(i, _)| if i == 0 { 3 } else { 1 }).collect::<Vec<_>>(), &[]),
            Side::Out
        );
    }

    #[test]
    fn list_forms() {
        assert!(in_list(&[1, 0, 0]));
        assert!(in_list(&[4, 3, 1]));
        assert!(in_list(&[1, 1, 0]));
        assert!(!in_list(&[2, 1, 1, 1]));
        assert!(!in_list(&[3, 1]));
    }
}
