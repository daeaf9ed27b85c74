use super::IntMat;
use crate::int::Int;

/// Smith normal form: returns `(s, u, v)` with `u · m · v = s`, `u`, `v`
/// unimodular and `s` diagonal with `s_1 | s_2 | …`, all non-negative.
pub fn snf(m: &IntMat) -> (IntMat, IntMat, IntMat) {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut s = m.clone();
    let mut u = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if s[(i, j)].is_zero() {
                    continue;
                }
                if best.map_or(true, |(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let a = s[(t, t)].clone();
                let b = s[(i, t)].clone();
                if a.divides(&b) {
                    let q = -b.div_exact(&a);
                    s.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                    continue;
                }
                let (g, x, y) = Int::ext_gcd(&a, &b);
                let c = -b.div_exact(&g);
                let d = a.div_exact(&g);
                s.combine_rows(t, i, &x, &y, &c, &d);
                u.combine_rows(t, i, &x, &y, &c, &d);
                changed = true;
            }
            for j in t + 1..cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let a = s[(t, t)].clone();
                let b = s[(t, j)].clone();
                if a.divides(&b) {
                    let q = -b.div_exact(&a);
                    s.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                    continue;
                }
                let (g, x, y) = Int::ext_gcd(&a, &b);
                let c = -b.div_exact(&g);
                let d = a.div_exact(&g);
                s.combine_cols(t, j, &x, &y, &c, &d);
                v.combine_cols(t, j, &x, &y, &c, &d);
                changed = true;
            }
            if changed {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let p = s[(t, t)].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !p.divides(&s[(i, j)])));
            match bad {
                Some(i) => {
                    s.add_row_multiple(t, i, &Int::one());
                    u.add_row_multiple(t, i, &Int::one());
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    (s, u, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMat, diag: &[i64]) {
        let (s, u, v) = snf(m);
        assert_eq!(u.mul(m).mul(&v), s);
        assert_eq!(u.det().abs(), Int::one());
        assert_eq!(v.det().abs(), Int::one());
        for (k, &e) in diag.iter().enumerate() {
            assert_eq!(s[(k, k)], Int::new(e));
        }
    }

    #[test]
    fn identity() {
        check(&IntMat::identity(2), &[1, 1]);
    }

    #[test]
    fn coprime_diagonal() {
        check(&IntMat::from_i64(&[&[2, 0], &[0, 3]]), &[1, 6]);
    }

    #[test]
    fn already_chained() {
        check(&IntMat::from_i64(&[&[2, 0], &[0, 2]]), &[2, 2]);
    }

    #[test]
    fn rectangular() {
        check(&IntMat::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), &[2, 6, 12]);
    }

    #[test]
    fn pivot_dividing_with_sign_flip() {
        check(&IntMat::from_i64(&[&[2, -2, 4]]), &[2]);
        check(&IntMat::from_i64(&[&[-2, 2], &[2, 0], &[0, 2]]), &[2, 2]);
    }
}
