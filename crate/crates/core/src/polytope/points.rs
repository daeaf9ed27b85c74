//! Lattice-point enumeration by coordinate slicing.
//!
//! For each prefix length `j` the projection of `P` onto the first `j`
//! coordinates is described by its own facets; bounds for coordinate `j`
//! given a fixed prefix come from that projection, so every visited prefix
//! extends to a real point of the polytope. Counting skips the innermost
//! loop entirely.

use super::{hull, LatticePolytope};
use crate::int::Int;
use crate::intlin::IntVec;
use crate::{Error, Result};

type Ineq = (Vec<i64>, i64);

#[derive(Clone, Debug)]
pub struct SliceEnumerator {
    dim: usize,
    /// `levels[j]`: inequalities of the projection onto coordinates `0..=j`
    levels: Vec<Vec<Ineq>>,
}

fn small(x: &Int) -> Result<i64> {
    x.to_i64().ok_or(Error::EnumerationOverflow)
}

impl SliceEnumerator {
    pub fn new(p: &LatticePolytope) -> Result<SliceEnumerator> {
        let d = p.dim();
        let mut levels = Vec::with_capacity(d);
        for j in 1..d {
            let proj: Vec<IntVec> = p.vertices().iter().map(|v| v[..j].to_vec()).collect();
            let h = hull::hull(&proj, j)?;
            let ineqs = h
                .facets
                .iter()
                .map(|(a, b)| Ok((a.iter().map(small).collect::<Result<Vec<_>>>()?, small(b)?)))
                .collect::<Result<Vec<_>>>()?;
            levels.push(ineqs);
        }
        if d > 0 {
            let ineqs = p
                .facets()
                .iter()
                .map(|f| Ok((f.normal.iter().map(small).collect::<Result<Vec<_>>>()?, small(&f.offset)?)))
                .collect::<Result<Vec<_>>>()?;
            levels.push(ineqs);
        }
        Ok(SliceEnumerator { dim: d, levels })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Range of coordinate `j` given the prefix, for `k·P` (strict at the
    /// last level when `interior`).
    #[inline]
    fn range(&self, j: usize, prefix: &[i64], k: i64, interior: bool) -> Option<(i64, i64)> {
        let strict = interior && j + 1 == self.dim;
        let mut lo = i64::MIN;
        let mut hi = i64::MAX;
        for (a, b) in &self.levels[j] {
            // a_j x_j ≥ c
            let mut c: i128 = -(*b as i128) * k as i128;
            if strict {
                c += 1;
            }
            for i in 0..j {
                c -= a[i] as i128 * prefix[i] as i128;
            }
            let aj = a[j] as i128;
            if aj == 0 {
                if c > 0 {
                    return None;
                }
            } else if aj > 0 {
                let v = c.div_euclid(aj) + if c.rem_euclid(aj) != 0 { 1 } else { 0 };
                lo = lo.max(v.clamp(i64::MIN as i128, i64::MAX as i128) as i64);
            } else {
                // x_j ≤ c / aj, floor
                let (n, m) = (-c, -aj);
                let v = n.div_euclid(m);
                hi = hi.min(v.clamp(i64::MIN as i128, i64::MAX as i128) as i64);
            }
        }
        (lo <= hi).then_some((lo, hi))
    }

    /// Number of lattice points of `k·P` (interior points when `interior`).
    pub fn count(&self, k: i64, interior: bool) -> u64 {
        if self.dim == 0 {
            return if interior { 0 } else { 1 };
        }
        let mut prefix = vec![0i64; self.dim];
        self.count_rec(0, &mut prefix, k, interior)
    }

    fn count_rec(&self, j: usize, prefix: &mut [i64], k: i64, interior: bool) -> u64 {
        let Some((lo, hi)) = self.range(j, prefix, k, interior) else { return 0 };
        if j + 1 == self.dim {
            return (hi - lo + 1) as u64;
        }
        let mut total = 0;
        for x in lo..=hi {
            prefix[j] = x;
            total += self.count_rec(j + 1, prefix, k, interior);
        }
        total
    }

    /// Lattice points of `k·P` in lexicographic order.
    pub fn points(&self, k: i64, interior: bool) -> Vec<IntVec> {
        let mut out = Vec::new();
        self.for_each(k, interior, |p| out.push(p.iter().map(|&x| Int::new(x)).collect()));
        out
    }

    pub fn points_i64(&self, k: i64, interior: bool) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        self.for_each(k, interior, |p| out.push(p.to_vec()));
        out
    }

    pub fn for_each(&self, k: i64, interior: bool, mut visit: impl FnMut(&[i64])) {
        if self.dim == 0 {
            if !interior {
                visit(&[]);
            }
            return;
        }
        let mut prefix = vec![0i64; self.dim];
        self.walk(0, &mut prefix, k, interior, &mut visit);
    }

    fn walk(&self, j: usize, prefix: &mut [i64], k: i64, interior: bool, visit: &mut impl FnMut(&[i64])) {
        let Some((lo, hi)) = self.range(j, prefix, k, interior) else { return };
        for x in lo..=hi {
            prefix[j] = x;
            if j + 1 == self.dim {
                visit(prefix);
            } else {
                self.walk(j + 1, prefix, k, interior, visit);
            }
        }
    }

    /// Membership test for `k·P` with the polytope's own facets.
    pub fn contains(&self, x: &[i64], k: i64) -> bool {
        match self.levels.last() {
            None => true,
            Some(ineqs) => ineqs.iter().all(|(a, b)| {
                let s: i128 = a.iter().zip(x).map(|(&ai, &xi)| ai as i128 * xi as i128).sum();
                s + *b as i128 * k as i128 >= 0
            }),
        }
    }
}
