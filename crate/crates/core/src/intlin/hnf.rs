use super::IntMat;
use crate::int::Int;

/// Column Hermite normal form: returns `(h, u)` with `m · u = h`, `u`
/// unimodular, `h` lower staircase. Each pivot is positive, entries to its
/// right in the pivot row are zero and entries to its left lie in
/// `[0, pivot)`.
pub fn hnf(m: &IntMat) -> (IntMat, IntMat) {
    let mut h = m.clone();
    let mut u = IntMat::identity(m.ncols());
    reduce(&mut h, Some(&mut u));
    (h, u)
}

/// Rank via the column echelon form (no transform tracked).
pub fn hnf_rank(m: &IntMat) -> usize {
    let mut h = m.clone();
    reduce(&mut h, None)
}

fn reduce(h: &mut IntMat, mut u: Option<&mut IntMat>) -> usize {
    let (rows, cols) = (h.nrows(), h.ncols());
    let mut pc = 0;
    for i in 0..rows {
        if pc == cols {
            break;
        }
        for j in pc + 1..cols {
            if h[(i, j)].is_zero() {
                continue;
            }
            let a = h[(i, pc)].clone();
            let b = h[(i, j)].clone();
            let (g, x, y) = Int::ext_gcd(&a, &b);
            let c = -b.div_exact(&g);
            let d = a.div_exact(&g);
            h.combine_cols(pc, j, &x, &y, &c, &d);
            if let Some(u) = u.as_deref_mut() {
                u.combine_cols(pc, j, &x, &y, &c, &d);
            }
        }
        if h[(i, pc)].is_zero() {
            continue;
        }
        if h[(i, pc)].is_negative() {
            h.negate_col(pc);
            if let Some(u) = u.as_deref_mut() {
                u.negate_col(pc);
            }
        }
        let pivot = h[(i, pc)].clone();
        for j in 0..pc {
            let q = h[(i, j)].div_floor(&pivot);
            if !q.is_zero() {
                let nq = -q;
                h.add_col_multiple(j, pc, &nq);
                if let Some(u) = u.as_deref_mut() {
                    u.add_col_multiple(j, pc, &nq);
                }
            }
        }
        pc += 1;
    }
    pc
}
