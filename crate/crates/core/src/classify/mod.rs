//! Classification of smooth Gorenstein polytopes of a given dimension and
//! minimal index.
//!
//! The search runs on the dual side: it completes unimodular fans around a
//! fixed special facet, producing dual-smooth simplicial reflexive polytopes
//! `Q`. Each `Q*` is then divided by every admissible `r`, and the quotients
//! are verified and deduplicated by canonical form.

mod search;

use std::collections::{BTreeMap, HashSet};

use log::{info, warn};
use serde::Serialize;

use crate::construct::{theorem_applies, theorem_family};
use crate::int::Int;
use crate::intlin::{dot, IntVec};
use crate::par::*;
use crate::polytope::{Facet, LatticePolytope, NormalForm};
use crate::{Error, Result};

use search::{Engine, Leaf, Node, Params, Stats};

/// Version tag written into database manifests.
pub const ENGINE_VERSION: &str = "fan-completion-1";

/// Upper bound on automatic box raising.
const MAX_BOX_RAISES: usize = 8;

#[derive(Clone, Debug)]
pub struct ClassifiedPolytope {
    /// the smooth Gorenstein polytope
    pub polytope: LatticePolytope,
    /// the dual-smooth reflexive polytope `(rP − w)*`
    pub dual_smooth: LatticePolytope,
    pub index: usize,
    pub normal_form: NormalForm,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RunStats {
    pub nodes: u64,
    /// completed fans passing the special-facet test
    pub leaves: u64,
    /// leaves whose `Q` was already known
    pub duplicates: u64,
}

#[derive(Clone, Debug)]
pub struct ClassificationRun {
    pub d: usize,
    pub r_min: usize,
    /// coordinate box of the final pass
    pub box_bound: i64,
    /// every box tried, in order
    pub boxes_tried: Vec<i64>,
    /// sorted by `(index, normal form)`
    pub results: Vec<ClassifiedPolytope>,
    pub stats: RunStats,
    /// some accepted vertex of `Q` touches the boundary of the final box
    pub box_warning: bool,
}

impl ClassificationRun {
    pub fn counts_by_index(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for c in &self.results {
            *out.entry(c.index).or_insert(0) += 1;
        }
        out
    }

    pub fn at_index(&self, r: usize) -> impl Iterator<Item = &ClassifiedPolytope> {
        self.results.iter().filter(move |c| c.index == r)
    }
}

/// Default coordinate box for dimension `d`.
pub fn default_box(d: usize) -> i64 {
    d as i64 + 1
}

/// Classifies with an explicit box, or with the default box raised until
/// no accepted vertex touches its boundary.
pub fn enumerate(d: usize, r_min: usize, b: Option<i64>) -> Result<ClassificationRun> {
    if let Some(b) = b {
        return enumerate_in_box(d, r_min, b);
    }
    let mut b = default_box(d);
    let mut tried = Vec::new();
    for _ in 0..MAX_BOX_RAISES {
        let mut run = enumerate_in_box(d, r_min, b)?;
        tried.push(b);
        if !run.box_warning {
            run.boxes_tried = tried;
            return Ok(run);
        }
        info!("box {b} touched in d={d}, r_min={r_min}; raising");
        b += 1;
    }
    let mut run = enumerate_in_box(d, r_min, b)?;
    tried.push(b);
    run.boxes_tried = tried;
    Ok(run)
}

/// One pass of the search with coordinates confined to `[−b, b]`.
pub fn enumerate_in_box(d: usize, r_min: usize, b: i64) -> Result<ClassificationRun> {
    if d == 0 || d > 100 {
        return Err(Error::OutOfRange(format!("dimension {d} not supported")));
    }
    if r_min == 0 {
        return Err(Error::OutOfRange("minimal index must be positive".into()));
    }
    if b < default_box(d) {
        return Err(Error::OutOfRange(format!("box bound {b} below the default {}", default_box(d))));
    }
    let engine = Engine::new(Params { d, r_min: r_min as i64, b });
    let (leaves, stats) = search_all(&engine)?;

    // the same Q shows up once per special facet and labelling
    let mut seen_exact: HashSet<Vec<Vec<i64>>> = HashSet::new();
    let mut unique: Vec<Leaf> = Vec::new();
    let mut duplicates = 0u64;
    for mut l in leaves {
        l.vertices.sort();
        if seen_exact.insert(l.vertices.clone()) {
            unique.push(l);
        } else {
            duplicates += 1;
        }
    }
    let box_warning = unique.iter().any(|l| l.vertices.iter().flatten().any(|x| x.abs() >= b));
    if box_warning {
        warn!("accepted vertex on the box boundary (d={d}, r_min={r_min}, B={b})");
    }

    let keyed: Vec<(NormalForm, LatticePolytope)> = unique
        .into_par_iter()
        .map(|l| {
            let q = dual_smooth_polytope(d, &l);
            (q.canonical_form(), q)
        })
        .collect();
    let mut by_form: BTreeMap<NormalForm, LatticePolytope> = BTreeMap::new();
    for (nf, q) in keyed {
        if by_form.insert(nf, q).is_some() {
            duplicates += 1;
        }
    }

    let converted: Vec<Vec<ClassifiedPolytope>> =
        by_form.into_values().collect::<Vec<_>>().into_par_iter().map(|q| quotients(&q, r_min)).collect::<Result<_>>()?;
    let mut results: Vec<ClassifiedPolytope> = converted.into_iter().flatten().collect();
    results.sort_by(|a, b| (a.index, &a.normal_form).cmp(&(b.index, &b.normal_form)));

    Ok(ClassificationRun {
        d,
        r_min,
        box_bound: b,
        boxes_tried: vec![b],
        results,
        stats: RunStats { nodes: stats.nodes, leaves: stats.leaves, duplicates },
        box_warning,
    })
}

/// Splits the tree near the root, then completes the subtrees in parallel.
fn search_all(engine: &Engine) -> Result<(Vec<Leaf>, Stats)> {
    let target = 8 * current_num_threads().max(1);
    let mut leaves = Vec::new();
    let mut stats = Stats::default();
    let mut frontier = vec![engine.root()];
    for _ in 0..engine.p.d {
        if frontier.len() >= target {
            break;
        }
        let mut next = Vec::new();
        for mut n in frontier {
            stats.nodes += 1;
            match engine.expand(&mut n)? {
                None => {
                    if let Some(l) = engine.leaf(&n) {
                        stats.leaves += 1;
                        leaves.push(l);
                    }
                }
                Some(children) => next.extend(children),
            }
        }
        frontier = next;
    }
    let parts: Vec<Result<(Vec<Leaf>, Stats)>> = frontier
        .into_par_iter()
        .map(|n: Node| {
            let mut ls = Vec::new();
            let mut st = Stats::default();
            engine.run(n, &mut ls, &mut st)?;
            Ok((ls, st))
        })
        .collect();
    for part in parts {
        let (ls, st) = part?;
        leaves.extend(ls);
        stats.merge(&st);
    }
    Ok((leaves, stats))
}

fn to_ints(v: &[i64]) -> IntVec {
    v.iter().map(|&x| Int::new(x)).collect()
}

/// `Q` with its facets `⟨u, x⟩ + 1 ≥ 0` taken from the search.
fn dual_smooth_polytope(d: usize, l: &Leaf) -> LatticePolytope {
    let vertices = l.vertices.iter().map(|v| to_ints(v)).collect();
    let facets = l.normals.iter().map(|u| Facet { normal: to_ints(u), offset: Int::one() }).collect();
    LatticePolytope::from_parts(d, vertices, facets, Vec::new())
}

/// `Q*` from the facets of a reflexive `Q`, with facets `⟨v, y⟩ + 1 ≥ 0`.
fn reflexive_dual(q: &LatticePolytope) -> Result<LatticePolytope> {
    let mut vertices = Vec::with_capacity(q.num_facets());
    for f in q.facets() {
        if !f.offset.is_one() {
            return Err(Error::InvalidInput("polytope is not reflexive".into()));
        }
        vertices.push(f.normal.clone());
    }
    let facets = q.vertices().iter().map(|v| Facet { normal: v.clone(), offset: Int::one() }).collect();
    Ok(LatticePolytope::from_parts(q.dim(), vertices, facets, Vec::new()))
}

/// All `(Q* − u)/r` with `r ≥ r_min`, verified smooth of index `r`.
fn quotients(q: &LatticePolytope, r_min: usize) -> Result<Vec<ClassifiedPolytope>> {
    let dual = reflexive_dual(q)?;
    let m = dual.max_divisibility().to_i64().ok_or(Error::EnumerationOverflow)? as usize;
    let mut out = Vec::new();
    for r in (r_min..=m).filter(|r| m % r == 0) {
        let p = divide_checked(&dual, r)?;
        out.push(ClassifiedPolytope { normal_form: p.canonical_form(), polytope: p, dual_smooth: q.clone(), index: r });
    }
    Ok(out)
}

fn divide_checked(dual: &LatticePolytope, r: usize) -> Result<LatticePolytope> {
    let base = dual.vertices()[0].clone();
    let p = dual.divide(&base, &Int::from(r))?;
    let index = p.gorenstein_index().map(|g| g.index);
    if index != Some(r) || !p.is_smooth() {
        return Err(Error::InvalidInput(format!(
            "quotient by {r} is not a smooth Gorenstein polytope of index {r} (index {index:?})"
        )));
    }
    Ok(p)
}

/// `P = (Q* − v)/r` for a dual-smooth reflexive `Q` and `r | m(Q*)`.
pub fn to_gorenstein(q: &LatticePolytope, r: usize) -> Result<LatticePolytope> {
    if r == 0 {
        return Err(Error::OutOfRange("index must be positive".into()));
    }
    let dual = q.dual_polytope()?.ok_or_else(|| Error::InvalidInput("polytope is not reflexive".into()))?;
    if !q.is_reflexive()? {
        return Err(Error::InvalidInput("polytope is not reflexive".into()));
    }
    let m = dual.max_divisibility();
    if !Int::from(r).divides(&m) {
        return Err(Error::Divisibility(m, Int::from(r)));
    }
    divide_checked(&dual, r)
}

/// `min ⟨v, u⟩` over vertices `v` of `Q` and facet normals `u` (with
/// `⟨u, x⟩ ≥ −1` on `Q`) such that `v` is off the facet of `u`.
pub fn delta(q: &LatticePolytope) -> Result<i64> {
    if !q.is_reflexive()? || q.facets().iter().any(|f| !f.offset.is_one()) {
        return Err(Error::InvalidInput("delta requires a reflexive polytope containing the origin".into()));
    }
    let mut best: Option<Int> = None;
    for (j, f) in q.facets().iter().enumerate() {
        for (i, v) in q.vertices().iter().enumerate() {
            if q.facet_vertices(j).contains(i) {
                continue;
            }
            let x = dot(&f.normal, v);
            if best.as_ref().map_or(true, |b| &x < b) {
                best = Some(x);
            }
        }
    }
    best.and_then(|b| b.to_i64()).ok_or(Error::EnumerationOverflow)
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossValidation {
    pub d: usize,
    pub r: usize,
    /// family labels with their canonical digests
    pub family: Vec<(String, String)>,
    /// digests of the enumerated classes of index exactly `r`
    pub enumerated: Vec<String>,
    pub missing_from_enumeration: Vec<String>,
    pub missing_from_family: Vec<String>,
}

impl CrossValidation {
    pub fn agrees(&self) -> bool {
        self.missing_from_enumeration.is_empty() && self.missing_from_family.is_empty()
    }
}

/// Compares the enumeration at index exactly `r` with the explicit family.
pub fn cross_validate(d: usize, r: usize) -> Result<CrossValidation> {
    if !theorem_applies(d, r) {
        return Err(Error::OutOfRange(format!("index {r} is not above (d+3)/3 for d = {d}")));
    }
    let run = enumerate(d, r, None)?;
    cross_validate_run(&run, r)
}

/// Cross-validation against an existing run with `r_min ≤ r`.
pub fn cross_validate_run(run: &ClassificationRun, r: usize) -> Result<CrossValidation> {
    let d = run.d;
    if run.r_min > r {
        return Err(Error::InvalidInput(format!("run starts at index {} > {r}", run.r_min)));
    }
    let family: Vec<(String, String)> =
        theorem_family(d, r)?.iter().map(|(s, p)| (s.label(), p.canonical_form().digest_hex())).collect();
    let enumerated: Vec<String> = run.at_index(r).map(|c| c.normal_form.digest_hex()).collect();
    let missing_from_enumeration =
        family.iter().filter(|(_, h)| !enumerated.contains(h)).map(|(l, _)| l.clone()).collect();
    let fam: Vec<&String> = family.iter().map(|(_, h)| h).collect();
    let missing_from_family = enumerated.iter().filter(|h| !fam.contains(h)).cloned().collect();
    Ok(CrossValidation { d, r, family, enumerated, missing_from_enumeration, missing_from_family })
}

/// Histogram of maximal divisibility over the smooth reflexive polytopes of
/// a run that started at index 1.
pub fn fano_index_table(run: &ClassificationRun) -> Result<BTreeMap<u64, usize>> {
    if run.r_min != 1 {
        return Err(Error::InvalidInput("the Fano index table needs a run with minimal index 1".into()));
    }
    let mut out = BTreeMap::new();
    for c in run.at_index(1) {
        let m = c.polytope.max_divisibility().to_i64().ok_or(Error::EnumerationOverflow)? as u64;
        *out.entry(m).or_insert(0) += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
