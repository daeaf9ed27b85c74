//! Facet enumeration by incremental double description.
//!
//! Points are homogenized to `(p, 1)`; the facets of `conv(points)` are the
//! extreme rays of the cone `{y : ⟨(p,1), y⟩ ≥ 0}`. Rays are kept primitive
//! and adjacency is decided combinatorially on zero sets.

use crate::bitset::BitSet;
use crate::int::Int;
use crate::intlin::{dot, hnf_rank, make_primitive, IntMat, IntVec};
use crate::{Error, Result};

pub(crate) struct Hull {
    /// indices (into the deduplicated input) of the extreme points
    pub vertices: Vec<usize>,
    /// (normal, offset), jointly primitive, `⟨normal, x⟩ + offset ≥ 0`
    pub facets: Vec<(IntVec, Int)>,
    pub points: Vec<IntVec>,
}

struct Ray {
    v: IntVec,
    zeros: BitSet,
}

#[cfg(test)]
pub(crate) fn affine_rank(points: &[IntVec]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let diffs: Vec<IntVec> =
        points[1..].iter().map(|p| crate::intlin::sub(p, &points[0])).collect();
    hnf_rank(&IntMat::from_rows(&diffs))
}

pub(crate) fn hull(points: &[IntVec], dim: usize) -> Result<Hull> {
    if points.is_empty() {
        return Err(Error::Empty);
    }
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch);
    }
    let mut pts: Vec<IntVec> = points.to_vec();
    pts.sort();
    pts.dedup();
    if dim == 0 {
        return Ok(Hull { vertices: vec![0], facets: Vec::new(), points: pts });
    }
    let n = pts.len();
    let homog: Vec<IntVec> = pts
        .iter()
        .map(|p| {
            let mut h = p.clone();
            h.push(Int::one());
            h
        })
        .collect();

    // greedy affinely independent start
    let mut init: Vec<usize> = Vec::with_capacity(dim + 1);
    for (i, h) in homog.iter().enumerate() {
        let mut rows: Vec<IntVec> = init.iter().map(|&j| homog[j].clone()).collect();
        rows.push(h.clone());
        if hnf_rank(&IntMat::from_rows(&rows)) == rows.len() {
            init.push(i);
            if init.len() == dim + 1 {
                break;
            }
        }
    }
    if init.len() < dim + 1 {
        return Err(Error::LowerDimensional { span: init.len() - 1, ambient: dim });
    }

    let a = IntMat::from_rows(&init.iter().map(|&i| homog[i].clone()).collect::<Vec<_>>());
    let det = a.det();
    let adj = a.adjugate();
    let mut rays: Vec<Ray> = (0..=dim)
        .map(|j| {
            let mut col = adj.col(j);
            if det.is_negative() {
                col = col.into_iter().map(|x| -x).collect();
            }
            let (v, _) = make_primitive(&col).expect("adjugate column of invertible matrix");
            let zeros = BitSet::from_indices(n, init.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &i)| i));
            Ray { v, zeros }
        })
        .collect();

    let in_init = BitSet::from_indices(n, init.iter().copied());
    let cone_dim = dim + 1;
    for k in (0..n).filter(|&k| !in_init.contains(k)) {
        let h = &homog[k];
        let vals: Vec<Int> = rays.iter().map(|r| dot(&r.v, h)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zeros.insert(k);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut new_rays = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.and(&rays[q].zeros);
                if common.len() + 2 < cone_dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == q || !common.is_subset(&r.zeros));
                if !adjacent {
                    continue;
                }
                let vp = &vals[p];
                let vq = -&vals[q];
                let comb: IntVec =
                    rays[q].v.iter().zip(&rays[p].v).map(|(x, y)| &(vp * x) + &(&vq * y)).collect();
                let (v, _) = make_primitive(&comb).expect("combination of independent rays");
                let mut zeros = common;
                zeros.insert(k);
                new_rays.push(Ray { v, zeros });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + new_rays.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            if vals[i].is_zero() {
                r.zeros.insert(k);
            }
            kept.push(r);
        }
        kept.extend(new_rays);
        rays = kept;
    }

    let mut vertices = Vec::new();
    for i in 0..n {
        let mut acc: Option<BitSet> = None;
        for r in rays.iter().filter(|r| r.zeros.contains(i)) {
            match acc.as_mut() {
                None => acc = Some(r.zeros.clone()),
                Some(a) => a.and_assign(&r.zeros),
            }
        }
        if let Some(a) = acc {
            if a.len() == 1 {
                vertices.push(i);
            }
        }
    }
    let facets = rays
        .into_iter()
        .map(|mut r| {
            let b = r.v.pop().expect("homogeneous coordinate");
            (r.v, b)
        })
        .collect();
    Ok(Hull { vertices, facets, points: pts })
}
