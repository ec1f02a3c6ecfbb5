//! Exact rational linear programming via primal simplex with Bland's rule.
//!
//! Only feasibility questions are needed by the cone module, all at desk
//! scale (tens of constraints), so a dense phase-I tableau is sufficient.

use crate::rational::{rat, RMat, RVec, Rat};
use num_traits::{Signed, Zero};

/// Decide feasibility of {x >= 0 | A x = b}. Returns a feasible point if
/// one exists. Exact; terminates by Bland's anticycling rule.
pub fn feasible_point(a: &RMat, b: &[Rat]) -> Option<RVec> {
    let m = a.rows;
    let n = a.cols;
    assert_eq!(b.len(), m);

    // Phase I: minimize the sum of artificial variables s in
    //   A x + I s = b  (rows flipped so b >= 0), x, s >= 0.
    let mut tab = RMat::zeros(m + 1, n + m + 1);
    for i in 0..m {
        let flip = b[i].is_negative();
        for j in 0..n {
            tab[(i, j)] = if flip { -a[(i, j)].clone() } else { a[(i, j)].clone() };
        }
        tab[(i, n + i)] = rat(1);
        tab[(i, n + m)] = if flip { -b[i].clone() } else { b[i].clone() };
    }
    // Objective row: sum of artificial rows (we minimize Σ s_i).
    for j in 0..(n + m + 1) {
        let mut s = Rat::zero();
        for i in 0..m {
            s += tab[(i, j)].clone();
        }
        tab[(m, j)] = s;
    }
    for i in 0..m {
        tab[(m, n + i)] = Rat::zero();
    }

    let mut basis: Vec<usize> = (n..n + m).collect();
    loop {
        // Bland: entering = smallest index with positive reduced cost.
        let mut enter = None;
        for j in 0..(n + m) {
            if tab[(m, j)].is_positive() {
                enter = Some(j);
                break;
            }
        }
        let Some(e) = enter else { break };
        // Ratio test, ties broken by smallest basis index (Bland).
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if tab[(i, e)].is_positive() {
                let ratio = &tab[(i, n + m)] / &tab[(i, e)];
                match &leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < *lr || (ratio == *lr && basis[i] < basis[*li]) {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let Some((l, _)) = leave else {
            // Unbounded phase-I objective cannot happen (bounded below by 0).
            return None;
        };
        pivot(&mut tab, l, e);
        basis[l] = e;
    }

    if !tab[(m, n + m)].is_zero() {
        return None; // optimum of Σ s_i is positive: infeasible
    }
    // Drive out any artificial variable still basic at level zero.
    let mut x = vec![Rat::zero(); n];
    for i in 0..m {
        if basis[i] < n {
            x[basis[i]] = tab[(i, n + m)].clone();
        }
    }
    Some(x)
}

fn pivot(tab: &mut RMat, l: usize, e: usize) {
    let rows = tab.rows;
    let cols = tab.cols;
    let p = tab[(l, e)].clone();
    for j in 0..cols {
        let t = &tab[(l, j)] / &p;
        tab[(l, j)] = t;
    }
    for i in 0..rows {
        if i != l && !tab[(i, e)].is_zero() {
            let f = tab[(i, e)].clone();
            for j in 0..cols {
                let t = &tab[(l, j)] * &f;
                tab[(i, j)] -= t;
            }
        }
    }
}

/// Decide whether there exists x with strict inequalities g_i(x) > 0 for
/// all i in `strict` and equalities h_j(x) = 0 for all j in `zero`
/// (functionals given as coefficient rows over the ambient dimension).
///
/// Everything is homogeneous, so strict feasibility is equivalent to
/// feasibility of {g_i(x) >= 1, h_j(x) = 0} with x free (split into
/// positive and negative parts).
pub fn strict_feasible(dim: usize, strict: &[RVec], zero: &[RVec]) -> Option<RVec> {
    // Variables: x+ (dim), x- (dim), slacks s_i (strict.len()).
    let rows = strict.len() + zero.len();
    let cols = 2 * dim + strict.len();
    let mut a = RMat::zeros(rows, cols);
    let mut b = Vec::with_capacity(rows);
    for (i, g) in strict.iter().enumerate() {
        assert_eq!(g.len(), dim);
        for d in 0..dim {
            a[(i, d)] = g[d].clone();
            a[(i, dim + d)] = -g[d].clone();
        }
        a[(i, 2 * dim + i)] = rat(-1);
        b.push(rat(1)); // g(x) - s = 1, s >= 0  <=>  g(x) >= 1
    }
    for (j, h) in zero.iter().enumerate() {
        assert_eq!(h.len(), dim);
        let r = strict.len() + j;
        for d in 0..dim {
            a[(r, d)] = h[d].clone();
            a[(r, dim + d)] = -h[d].clone();
        }
        b.push(Rat::zero());
    }
    let sol = feasible_point(&a, &b)?;
    let x: RVec = (0..dim).map(|d| &sol[d] - &sol[dim + d]).collect();
    Some(x)
}
