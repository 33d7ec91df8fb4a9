//! Exact phase-one simplex: finds `x >= 0` with `A x = b` over the rationals.
//!
//! Dense tableau, Bland's rule for both the entering and the leaving
//! variable, so it terminates without cycling. Sized for the handful of
//! equality constraints the hidden-variable calculus produces.

use num::{BigRational, Signed, Zero};

/// Returns a nonnegative solution of `a x = b`, or `None` when there is none.
///
/// Every row of `a` must have the same length as the number of unknowns.
pub fn nonnegative_solution(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(a.len(), b.len(), "one right-hand side per constraint");
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    assert!(a.iter().all(|row| row.len() == n), "ragged constraint matrix");

    // Columns: n originals, m artificials, then the right-hand side.
    let width = n + m + 1;
    let rhs = n + m;
    let mut tableau: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut t = vec![BigRational::zero(); width];
        for (j, v) in row.iter().enumerate() {
            t[j] = if flip { -v.clone() } else { v.clone() };
        }
        t[n + i] = BigRational::from_integer(1.into());
        t[rhs] = bi.abs();
        tableau.push(t);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs of the phase-one objective (sum of artificials); the last
    // entry holds minus the current objective value.
    let mut cost = vec![BigRational::zero(); width];
    for t in &tableau {
        for j in 0..n {
            cost[j] -= &t[j];
        }
        cost[rhs] -= &t[rhs];
    }

    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, t) in tableau.iter().enumerate() {
            if t[enter].is_positive() {
                let ratio = &t[rhs] / &t[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase one is bounded below by zero, so an entering column always
        // has a positive entry.
        let (row, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut tableau, &mut cost, row, enter);
        basis[row] = enter;
    }

    if !cost[rhs].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            x[var] = tableau[i][rhs].clone();
        }
    }
    Some(x)
}

fn pivot(tableau: &mut [Vec<BigRational>], cost: &mut [BigRational], row: usize, col: usize) {
    let p = tableau[row][col].clone();
    for v in tableau[row].iter_mut() {
        *v /= &p;
    }
    let pivot_row = tableau[row].clone();
    let eliminate = |target: &mut [BigRational]| {
        let factor = target[col].clone();
        if factor.is_zero() {
            return;
        }
        for (t, pv) in target.iter_mut().zip(&pivot_row) {
            *t -= &factor * pv;
        }
    };
    for (i, t) in tableau.iter_mut().enumerate() {
        if i != row {
            eliminate(t);
        }
    }
    eliminate(cost);
}
