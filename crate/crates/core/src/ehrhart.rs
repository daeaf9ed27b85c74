//! Lattice-point counts of dilates, h*-vectors, Gorenstein detection by
//! symmetry, and normality.

use std::collections::HashSet;

use serde::Serialize;

use crate::int::Int;
use crate::polytope::{LatticePolytope, SliceEnumerator};
use crate::Result;

/// `|kP ∩ Z^d|` for `k = 0..=kmax`. Products are counted factorwise.
pub fn ehrhart_counts(p: &LatticePolytope, kmax: usize) -> Result<Vec<Int>> {
    if !p.product_factors().is_empty() {
        let mut out = vec![Int::one(); kmax + 1];
        for f in p.product_factors() {
            for (acc, c) in out.iter_mut().zip(ehrhart_counts(f, kmax)?) {
                *acc *= &c;
            }
        }
        return Ok(out);
    }
    let e = SliceEnumerator::new(p)?;
    Ok((0..=kmax).map(|k| Int::from(e.count(k as i64, false))).collect())
}

fn binomial(n: usize, k: usize) -> Int {
    let mut acc = Int::one();
    for i in 0..k {
        acc = (acc * Int::from(n - i)).div_exact(&Int::from(i + 1));
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HStarVector {
    /// `h*_0, …, h*_d`
    pub coeffs: Vec<Int>,
}

impl HStarVector {
    /// Converts counts `L(0), …, L(d)` into the h*-vector.
    pub fn from_counts(counts: &[Int]) -> HStarVector {
        let d = counts.len() - 1;
        let coeffs = (0..=d)
            .map(|i| {
                (0..=i).fold(Int::zero(), |acc, j| {
                    let term = &binomial(d + 1, j) * &counts[i - j];
                    if j % 2 == 0 {
                        acc + term
                    } else {
                        acc - term
                    }
                })
            })
            .collect();
        HStarVector { coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Largest `i` with `h*_i ≠ 0`.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    /// `d + 1 − degree`: the smallest `k` with an interior point in `kP`.
    pub fn codegree(&self) -> usize {
        self.dim() + 1 - self.degree()
    }

    pub fn is_palindromic(&self) -> bool {
        let s = self.degree();
        (0..=s).all(|i| self.coeffs[i] == self.coeffs[s - i])
    }

    /// `Σ h*_i = d!·vol(P)`.
    pub fn normalized_volume(&self) -> Int {
        self.coeffs.iter().sum()
    }

    pub fn as_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(Int::to_i64).collect()
    }
}

pub fn hstar(p: &LatticePolytope) -> Result<HStarVector> {
    Ok(HStarVector::from_counts(&ehrhart_counts(p, p.dim())?))
}

/// The codegree when h* is palindromic, i.e. when `P` is Gorenstein.
pub fn gorenstein_via_symmetry(p: &LatticePolytope) -> Result<Option<usize>> {
    let h = hstar(p)?;
    Ok(h.is_palindromic().then(|| h.codegree()))
}

/// Whether every lattice point of `kP` is a point of `(k−1)P` plus a point
/// of `P`, for `k = 2..=d−1`.
pub fn is_normal(p: &LatticePolytope) -> Result<bool> {
    let d = p.dim();
    if d <= 2 {
        return Ok(true);
    }
    let e = SliceEnumerator::new(p)?;
    let base = e.points_i64(1, false);
    let mut prev: HashSet<Vec<i64>> = base.iter().cloned().collect();
    for k in 2..d as i64 {
        let mut ok = true;
        let mut current = HashSet::new();
        let mut diff = vec![0i64; d];
        e.for_each(k, false, |z| {
            if !ok {
                return;
            }
            let found = base.iter().any(|y| {
                for ((t, a), b) in diff.iter_mut().zip(z).zip(y) {
                    *t = a - b;
                }
                prev.contains(&diff)
            });
            if found {
                current.insert(z.to_vec());
            } else {
                ok = false;
            }
        });
        if !ok {
            return Ok(false);
        }
        prev = current;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{dilate, product, simplex};
    use crate::intlin::{vec_from, IntMat, IntVec};
    use proptest::prelude::*;

    fn ints(xs: &[i64]) -> Vec<Int> {
        xs.iter().map(|&x| Int::new(x)).collect()
    }

    fn square() -> LatticePolytope {
        product(&simplex(1), &simplex(1))
    }

    fn reeve() -> LatticePolytope {
        LatticePolytope::hull_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]).unwrap()
    }

    #[test]
    fn count_examples() {
        assert_eq!(ehrhart_counts(&square(), 2).unwrap(), ints(&[1, 4, 9]));
        assert_eq!(ehrhart_counts(&simplex(2), 3).unwrap(), ints(&[1, 3, 6, 10]));
        assert_eq!(ehrhart_counts(&dilate(&simplex(2), 2), 2).unwrap(), ints(&[1, 6, 15]));
        // factorwise and direct counting agree
        let p = product(&dilate(&simplex(2), 2), &simplex(1));
        let direct = LatticePolytope::hull(p.vertices()).unwrap();
        assert!(direct.product_factors().is_empty());
        assert_eq!(ehrhart_counts(&p, 4).unwrap(), ehrhart_counts(&direct, 4).unwrap());
    }

    #[test]
    fn hstar_examples() {
        for d in 1..=5 {
            let mut want = vec![0; d + 1];
            want[0] = 1;
            assert_eq!(hstar(&simplex(d)).unwrap().coeffs, ints(&want));
            assert_eq!(gorenstein_via_symmetry(&simplex(d)).unwrap(), Some(d + 1));
        }
        let h = hstar(&square()).unwrap();
        assert_eq!(h.coeffs, ints(&[1, 1, 0]));
        assert_eq!(gorenstein_via_symmetry(&square()).unwrap(), Some(2));
        let h = hstar(&dilate(&simplex(2), 2)).unwrap();
        assert_eq!(h.coeffs, ints(&[1, 3, 0]));
        assert_eq!(gorenstein_via_symmetry(&dilate(&simplex(2), 2)).unwrap(), None);
    }

    #[test]
    fn normality_examples() {
        assert!(is_normal(&dilate(&simplex(2), 3)).unwrap());
        assert!(is_normal(&simplex(3)).unwrap());
        assert!(!is_normal(&reeve()).unwrap());
        assert!(is_normal(&product(&simplex(2), &simplex(1))).unwrap());
    }

    fn simplex_volume(vs: &[IntVec]) -> Int {
        let rows: Vec<IntVec> = vs[1..].iter().map(|v| crate::intlin::sub(v, &vs[0])).collect();
        IntMat::from_rows(&rows).det().abs()
    }

    /// Lagrange interpolation of `L` through `(k, counts[k])`, evaluated at `x`.
    fn interpolate(counts: &[Int], x: i64) -> (Int, Int) {
        let n = counts.len() as i64;
        let mut num = Int::zero();
        let mut den = Int::one();
        for i in 0..n {
            let mut a = counts[i as usize].clone();
            let mut b = Int::one();
            for j in (0..n).filter(|&j| j != i) {
                a *= &Int::new(x - j);
                b *= &Int::new(i - j);
            }
            // num/den + a/b
            num = &(&num * &b) + &(&a * &den);
            den = &den * &b;
        }
        (num, den)
    }

    #[test]
    fn volume_matches_determinants() {
        let p = reeve();
        assert_eq!(hstar(&p).unwrap().normalized_volume(), simplex_volume(p.vertices()));
        assert_eq!(hstar(&p).unwrap().coeffs, ints(&[1, 0, 1, 0]));
        let cube = product(&square(), &simplex(1));
        assert_eq!(hstar(&cube).unwrap().normalized_volume(), Int::new(6));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn simplices_volume_and_reciprocity(pts in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 4)) {
            let pts: Vec<IntVec> = pts.iter().map(|p| vec_from(p)).collect();
            let Ok(p) = LatticePolytope::hull(&pts) else { return Ok(()) };
            prop_assume!(p.num_vertices() == 4);
            let h = hstar(&p).unwrap();
            prop_assert!(h.coeffs.iter().all(|c| !c.is_negative()));
            prop_assert_eq!(h.normalized_volume(), simplex_volume(p.vertices()));
            let counts = ehrhart_counts(&p, 3).unwrap();
            let e = SliceEnumerator::new(&p).unwrap();
            for k in 1..=3i64 {
                let (num, den) = interpolate(&counts, -k);
                let interior = Int::from(e.count(k, true));
                // (−1)^d E(−k) with d = 3
                prop_assert_eq!(-num, &interior * &den);
            }
            prop_assert_eq!(gorenstein_via_symmetry(&p).unwrap().is_some(), p.gorenstein_index().is_some());
        }
    }
}
