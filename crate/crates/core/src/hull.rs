//! Exact convex-hull membership via a phase-one simplex over rationals.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Finds `λ ≥ 0` with `Σ λ_j = 1` and `Σ λ_j points[j] = target`, or `None`
/// when `target` is outside the convex hull of `points`.
///
/// All points and the target must share one dimension. Pivoting follows
/// Bland's rule, so the method terminates.
pub fn convex_weights(points: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = points.len();
    if k == 0 {
        return None;
    }
    let d = target.len();
    debug_assert!(points.iter().all(|p| p.len() == d));

    // rows: d coordinate equations plus the simplex constraint
    let m = d + 1;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rational> = Vec::with_capacity(m);
    for i in 0..d {
        rows.push(points.iter().map(|p| p[i].clone()).collect());
        rhs.push(target[i].clone());
    }
    rows.push(vec![Rational::one(); k]);
    rhs.push(Rational::one());
    for (row, b) in rows.iter_mut().zip(rhs.iter_mut()) {
        if b.is_negative() {
            row.iter_mut().for_each(|a| *a = -a.clone());
            *b = -b.clone();
        }
    }

    // tableau columns: k structural, m artificial, then the right-hand side
    let width = k + m + 1;
    let mut tab: Vec<Vec<Rational>> = rows
        .into_iter()
        .zip(rhs)
        .enumerate()
        .map(|(i, (row, b))| {
            let mut full = row;
            full.extend((0..m).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            full.push(b);
            full
        })
        .collect();
    let mut basis: Vec<usize> = (k..k + m).collect();

    // reduced costs of minimising the sum of artificials
    let mut cost = vec![Rational::zero(); width];
    for row in &tab {
        for (c, a) in cost.iter_mut().zip(row) {
            *c -= a;
        }
    }
    for c in cost.iter_mut().skip(k).take(m) {
        *c += Rational::one();
    }

    loop {
        let entering = (0..k + m).find(|&j| cost[j].is_negative());
        let Some(col) = entering else { break };
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in tab.iter().enumerate() {
            if row[col].is_positive() {
                let ratio = &row[width - 1] / &row[col];
                let better = match &leave {
                    None => true,
                    Some((li, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (pivot_row, _) = leave.expect("phase one objective is bounded below");
        pivot(&mut tab, &mut cost, pivot_row, col);
        basis[pivot_row] = col;
    }

    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut weights = vec![Rational::zero(); k];
    for (i, &b) in basis.iter().enumerate() {
        if b < k {
            weights[b] = tab[i][width - 1].clone();
        }
    }
    Some(weights)
}

fn pivot(tab: &mut [Vec<Rational>], cost: &mut [Rational], row: usize, col: usize) {
    let p = tab[row][col].clone();
    tab[row].iter_mut().for_each(|a| *a /= &p);
    let pivot_row = tab[row].clone();
    for (i, other) in tab.iter_mut().enumerate() {
        if i == row || other[col].is_zero() {
            continue;
        }
        let factor = other[col].clone();
        for (a, b) in other.iter_mut().zip(&pivot_row) {
            *a -= &factor * b;
        }
    }
    let factor = cost[col].clone();
    if !factor.is_zero() {
        for (a, b) in cost.iter_mut().zip(&pivot_row) {
            *a -= &factor * b;
        }
    }
}
