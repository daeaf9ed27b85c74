//! Fan completion search for dual-smooth simplicial reflexive polytopes.
//!
//! The facet `F0 = conv(e_1, …, e_d)` (normal `u0 = −𝟙`) is fixed. Open
//! ridges are closed one at a time: for a ridge `R = F \ {v}` the new facet
//! is `R ∪ {w}` with `w = −v + Σ_{f∈R} c_f f`, which is forced by
//! unimodularity, and its normal is `u_F + (2 − Σc)·φ_v` where `φ_v` is the
//! dual basis vector of `v` in `F`. Every vertex `y` off a facet `G` must
//! satisfy `⟨u_G, y⟩ ≥ r_min − 1`, all pairings `⟨u, y⟩ + 1` share a common
//! divisor `≥ r_min`, and the vertex sum stays in the cone over `F0`.
//!
//! The neighbours of `F0` are placed first, with coordinate symmetry
//! broken by requiring sorted coordinates inside blocks of still
//! interchangeable indices. Afterwards new vertices come from a finite pool
//! cut out by the facets around `F0`, intersected with the box `[−B, B]^d`.
//! All arithmetic is `i64` with explicit magnitude guards.

use std::collections::VecDeque;
use std::sync::Arc;

use rustc_hash::FxHashMap as HashMap;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub(crate) struct Params {
    pub d: usize,
    pub r_min: i64,
    pub b: i64,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Stats {
    pub nodes: u64,
    pub leaves: u64,
    /// nodes whose special facet still has open ridges
    pub phase1: u64,
    /// nodes with all neighbours of the special facet placed
    pub boundary: u64,
}

impl Stats {
    pub fn merge(&mut self, o: &Stats) {
        self.nodes += o.nodes;
        self.leaves += o.leaves;
        self.phase1 += o.phase1;
        self.boundary += o.boundary;
    }
}

/// A completed fan: vertices and facet normals (`⟨u, x⟩ ≥ −1`).
#[derive(Clone, Debug)]
pub(crate) struct Leaf {
    pub vertices: Vec<Vec<i64>>,
    pub normals: Vec<Vec<i64>>,
}

#[derive(Clone)]
struct Fac {
    mask: u128,
    vids: Vec<u16>,
    normal: Vec<i64>,
    /// row k: dual basis vector of `vids[k]`
    dual: Vec<i64>,
}

#[derive(Clone, Copy)]
struct RidgeInfo {
    facet: u32,
    opposite: u16,
    closed: bool,
}

#[derive(Clone)]
pub(crate) struct Node {
    verts: Vec<i64>,
    /// shared with the parent; facets are only ever appended
    facets: Vec<Arc<Fac>>,
    ridges: HashMap<u128, RidgeInfo>,
    queue: VecDeque<u128>,
    level_sum: i64,
    g: i64,
    blocks: Vec<u32>,
    pool: Option<Vec<i64>>,
}

const MAX_VERTICES: usize = 128;
const MAGNITUDE: i64 = 1 << 40;

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn div_ceil(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    -((-a).div_euclid(b))
}

pub(crate) struct Engine {
    pub p: Params,
    max_vertices: usize,
}

impl Engine {
    pub fn new(p: Params) -> Engine {
        let max_vertices = if p.r_min >= 2 {
            (p.d + p.d / (p.r_min as usize - 1)).min(MAX_VERTICES)
        } else {
            MAX_VERTICES
        };
        Engine { p, max_vertices }
    }

    pub fn root(&self) -> Node {
        let d = self.p.d;
        let mut verts = vec![0i64; d * d];
        let mut dual = vec![0i64; d * d];
        for i in 0..d {
            verts[i * d + i] = 1;
            dual[i * d + i] = 1;
        }
        let mask = (0..d).fold(0u128, |m, i| m | 1 << i);
        let f0 = Fac { mask, vids: (0..d as u16).collect(), normal: vec![-1; d], dual };
        let mut ridges = HashMap::default();
        let mut queue = VecDeque::new();
        for i in 0..d {
            let key = mask & !(1 << i);
            ridges.insert(key, RidgeInfo { facet: 0, opposite: i as u16, closed: false });
            queue.push_back(key);
        }
        Node { verts, facets: vec![Arc::new(f0)], ridges, queue, level_sum: 0, g: 0, blocks: vec![0; d], pool: None }
    }

    fn nv(&self, n: &Node) -> usize {
        n.verts.len() / self.p.d
    }

    fn vert<'a>(&self, n: &'a Node, i: usize) -> &'a [i64] {
        &n.verts[i * self.p.d..(i + 1) * self.p.d]
    }

    /// Children at the most constrained open ridge; `None` when the fan is complete.
    pub fn expand(&self, node: &mut Node) -> Result<Option<Vec<Node>>> {
        while let Some(k) = node.queue.front() {
            if node.ridges[k].closed {
                node.queue.pop_front();
            } else {
                break;
            }
        }
        let Some(&first) = node.queue.front() else { return Ok(None) };
        let d = self.p.d;
        let key = if node.ridges[&first].facet == 0 {
            node.queue.pop_front();
            first
        } else {
            if node.pool.is_none() {
                node.pool = Some(self.pool(node));
            }
            // most constrained open ridge; ties go to the oldest
            let mut best: Option<(usize, u128)> = None;
            for &k in &node.queue {
                if node.ridges[&k].closed {
                    continue;
                }
                let limit = best.map_or(usize::MAX, |(m, _)| m);
                let n = self.count_candidates(node, k, limit);
                if n == 0 {
                    return Ok(Some(Vec::new()));
                }
                if n < limit {
                    best = Some((n, k));
                }
            }
            best.expect("open ridge").1
        };
        let info = node.ridges[&key];
        let fi = info.facet as usize;
        let f = &node.facets[fi];
        let pos = f.vids.iter().position(|&x| x == info.opposite).expect("opposite vertex in facet");
        let phi = f.dual[pos * d..(pos + 1) * d].to_vec();
        let phase1 = fi == 0;
        if !phase1 && node.pool.is_none() {
            node.pool = Some(self.pool(node));
        }

        let mut cands: Vec<(Vec<i64>, Option<usize>)> = Vec::new();
        for y in 0..self.nv(node) {
            if f.mask >> y & 1 == 1 {
                continue;
            }
            let yv = self.vert(node, y);
            if dot(&phi, yv) == -1 && (!phase1 || self.sorted(node, pos, yv)) {
                cands.push((yv.to_vec(), Some(y)));
            }
        }
        if phase1 {
            self.phase1_points(node, pos, &mut cands);
        } else if let Some(pool) = &node.pool {
            for y in pool.chunks_exact(d) {
                if dot(&phi, y) == -1 {
                    cands.push((y.to_vec(), None));
                }
            }
        }

        let mut out = Vec::new();
        for (w, existing) in cands {
            if let Some(child) = self.extend(node, fi, pos, key, &w, existing)? {
                out.push(child);
            }
        }
        Ok(Some(out))
    }

    /// Vertices and pool points that can close ridge `key`, counted up to
    /// `limit`. A new vertex `w` gives the normal `u_F + λφ` with
    /// `λ = 1 + ⟨u_F, w⟩`, and every placed vertex `y ≠ w` needs
    /// `⟨u_F, y⟩ + λ⟨φ, y⟩ ≥ r_min − 1`, which caps `λ`.
    fn count_candidates(&self, node: &Node, key: u128, limit: usize) -> usize {
        let d = self.p.d;
        let r = self.p.r_min.max(1);
        let info = node.ridges[&key];
        let f = &node.facets[info.facet as usize];
        let pos = f.vids.iter().position(|&x| x == info.opposite).expect("opposite vertex in facet");
        let phi = &f.dual[pos * d..(pos + 1) * d];
        let mut cap = i64::MAX;
        // λ of placed vertices pairing to −1 with φ: each caps the others at λ_y − r
        let mut own: Vec<(usize, i64)> = Vec::new();
        for y in 0..self.nv(node) {
            let yv = self.vert(node, y);
            let b = dot(phi, yv);
            if b == -1 {
                own.push((y, 1 + dot(&f.normal, yv)));
            } else if b < -1 {
                cap = cap.min((dot(&f.normal, yv) - (self.p.r_min - 1)).div_euclid(-b));
            }
        }
        let mut n = 0;
        for &(y, lam) in &own {
            let others = own.iter().filter(|&&(z, _)| z != y).map(|&(_, l)| l - r).min().unwrap_or(i64::MAX);
            if f.mask >> y & 1 == 0 && lam >= r && lam <= cap.min(others) {
                n += 1;
                if n >= limit {
                    return n;
                }
            }
        }
        let cap = cap.min(own.iter().map(|&(_, l)| l - r).min().unwrap_or(i64::MAX));
        if let Some(pool) = &node.pool {
            for y in pool.chunks_exact(d) {
                if dot(phi, y) == -1 && (r..=cap).contains(&(1 + dot(&f.normal, y))) {
                    n += 1;
                    if n >= limit {
                        return n;
                    }
                }
            }
        }
        n
    }

    /// Sorted inside the blocks of indices other than `i`.
    fn sorted(&self, node: &Node, i: usize, y: &[i64]) -> bool {
        let mut last: HashMap<u32, i64> = HashMap::default();
        for (j, &yj) in y.iter().enumerate() {
            if j == i {
                continue;
            }
            if let Some(&prev) = last.get(&node.blocks[j]) {
                if yj > prev {
                    return false;
                }
            }
            last.insert(node.blocks[j], yj);
        }
        true
    }

    /// New neighbours of `F0` across the ridge opposite `e_i`:
    /// `y_i = −1`, other coordinates sorted within blocks.
    fn phase1_points(&self, node: &Node, i: usize, out: &mut Vec<(Vec<i64>, Option<usize>)>) {
        let d = self.p.d;
        let r = self.p.r_min;
        let b = self.p.b;
        if self.nv(node) + 1 > self.max_vertices {
            return;
        }
        // λ_j of already placed neighbours G_j (facet index j + 1)
        let lambda: Vec<Option<i64>> = (0..d)
            .map(|j| if j < i { Some(dot(&node.facets[j + 1].normal, &unit(d, j)) + 1) } else { None })
            .collect();
        let budget = d as i64 + node.level_sum;
        let lo_level = (-(d as i64)).max(-budget);
        for level in lo_level..=1 - r {
            let n = r - 1 + level;
            let mut lo = vec![0i64; d];
            let mut hi = vec![0i64; d];
            for j in 0..d {
                if j == i {
                    lo[j] = -1;
                    hi[j] = -1;
                    continue;
                }
                lo[j] = match lambda[j] {
                    Some(lam) => div_ceil(n, lam),
                    // w may still become the apex of the unplaced neighbour G_j
                    None => div_ceil(n, r.max(1)).min(-1),
                }
                .max(-b);
                hi[j] = b;
            }
            let mut y = vec![0i64; d];
            let mut prev: HashMap<u32, i64> = HashMap::default();
            self.compose(node, i, 0, level, &lo, &hi, &mut y, &mut prev, out);
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn compose(
        &self,
        node: &Node,
        i: usize,
        j: usize,
        rem: i64,
        lo: &[i64],
        hi: &[i64],
        y: &mut Vec<i64>,
        prev: &mut HashMap<u32, i64>,
        out: &mut Vec<(Vec<i64>, Option<usize>)>,
    ) {
        let d = self.p.d;
        if j == d {
            if rem == 0 && !(0..self.nv(node)).any(|k| self.vert(node, k) == &y[..]) {
                out.push((y.clone(), None));
            }
            return;
        }
        let rest_lo: i64 = lo[j + 1..].iter().sum();
        let rest_hi: i64 = hi[j + 1..].iter().sum();
        let mut top = hi[j].min(rem - rest_lo);
        let bot = lo[j].max(rem - rest_hi);
        if j != i {
            if let Some(&p) = prev.get(&node.blocks[j]) {
                top = top.min(p);
            }
        }
        for x in bot..=top {
            y[j] = x;
            let saved = if j != i { prev.insert(node.blocks[j], x) } else { None };
            self.compose(node, i, j + 1, rem - x, lo, hi, y, prev, out);
            if j != i {
                match saved {
                    Some(s) => prev.insert(node.blocks[j], s),
                    None => prev.remove(&node.blocks[j]),
                };
            }
        }
    }

    /// Candidate pool after the neighbours of `F0` are fixed.
    fn pool(&self, node: &Node) -> Vec<i64> {
        let d = self.p.d;
        let r = self.p.r_min;
        let b = self.p.b;
        let mut out = Vec::new();
        if self.nv(node) + 1 > self.max_vertices {
            return out;
        }
        let lambda: Vec<i64> = (0..d).map(|j| dot(&node.facets[j + 1].normal, &unit(d, j)) + 1).collect();
        let budget = d as i64 + node.level_sum;
        for level in (-(d as i64)).max(-budget)..=1 - r {
            let n = r - 1 + level;
            let lo: Vec<i64> = lambda.iter().map(|&l| div_ceil(n, l).max(-b)).collect();
            let hi = vec![b; d];
            let mut y = vec![0i64; d];
            enumerate_sum(0, level, &lo, &hi, &mut y, &mut |y| {
                let ok = node.facets.iter().all(|h| dot(&h.normal, y) >= r - 1)
                    && !(0..self.nv(node)).any(|k| self.vert(node, k) == y);
                if ok {
                    out.extend_from_slice(y);
                }
            });
        }
        out
    }

    fn extend(
        &self,
        node: &Node,
        fi: usize,
        pos: usize,
        key: u128,
        w: &[i64],
        existing: Option<usize>,
    ) -> Result<Option<Node>> {
        let d = self.p.d;
        let r = self.p.r_min;
        let f = &node.facets[fi];
        let phi = &f.dual[pos * d..(pos + 1) * d];
        let c: Vec<i64> = (0..d).map(|k| if k == pos { -1 } else { dot(&f.dual[k * d..(k + 1) * d], w) }).collect();
        let csum: i64 = c.iter().enumerate().filter(|&(k, _)| k != pos).map(|(_, x)| x).sum();
        let lambda = 2 - csum;
        if lambda < r.max(1) {
            return Ok(None);
        }
        let mut normal = Vec::with_capacity(d);
        for (a, p) in f.normal.iter().zip(phi) {
            let v = p.checked_mul(lambda).and_then(|x| x.checked_add(*a)).ok_or(Error::EnumerationOverflow)?;
            if v.abs() > MAGNITUDE {
                return Err(Error::EnumerationOverflow);
            }
            normal.push(v);
        }
        let nv = self.nv(node);
        let wid = existing.unwrap_or(nv);
        if existing.is_none() && nv + 1 > self.max_vertices {
            return Ok(None);
        }
        let v = f.vids[pos] as usize;
        let mask = (f.mask & !(1u128 << v)) | 1u128 << wid;

        let mut g = node.g;
        for y in 0..nv {
            let val = dot(&normal, self.vert(node, y));
            if mask >> y & 1 == 1 {
                debug_assert_eq!(val, -1);
                continue;
            }
            if val < r - 1 {
                return Ok(None);
            }
            g = gcd(g, val + 1);
        }
        let mut level_sum = node.level_sum;
        if existing.is_none() {
            for h in &node.facets {
                let val = dot(&h.normal, w);
                if val < r - 1 {
                    return Ok(None);
                }
                g = gcd(g, val + 1);
            }
            level_sum += w.iter().sum::<i64>();
            if d as i64 + level_sum < 0 {
                return Ok(None);
            }
        }
        if r >= 2 && g != 0 && g < r {
            return Ok(None);
        }

        // dual basis of the new facet
        let mut dual = f.dual.clone();
        for k in 0..d {
            if k == pos {
                continue;
            }
            for t in 0..d {
                let x = phi[t]
                    .checked_mul(c[k])
                    .and_then(|x| x.checked_add(f.dual[k * d + t]))
                    .ok_or(Error::EnumerationOverflow)?;
                dual[k * d + t] = x;
            }
        }
        for t in 0..d {
            dual[pos * d + t] = -phi[t];
        }
        let mut vids = f.vids.clone();
        vids[pos] = wid as u16;

        let mut child = node.clone();
        let gi = child.facets.len() as u32;
        child.ridges.get_mut(&key).expect("ridge").closed = true;
        for (k, &vid) in vids.iter().enumerate() {
            if k == pos {
                continue;
            }
            let rk = mask & !(1u128 << vid);
            match child.ridges.get_mut(&rk) {
                Some(info) if info.closed => return Ok(None),
                Some(info) => info.closed = true,
                None => {
                    child.ridges.insert(rk, RidgeInfo { facet: gi, opposite: vid, closed: false });
                    child.queue.push_back(rk);
                }
            }
        }
        if existing.is_none() {
            child.verts.extend_from_slice(w);
        }
        if let Some(pool) = &mut child.pool {
            let budget = d as i64 + level_sum;
            let mut kept = Vec::with_capacity(pool.len());
            for y in pool.chunks_exact(d) {
                if y != w && dot(&normal, y) >= r - 1 && -y.iter().sum::<i64>() <= budget {
                    kept.extend_from_slice(y);
                }
            }
            *pool = kept;
        }
        if fi == 0 {
            // refine the symmetry blocks by the coordinates of w
            let mut ids: HashMap<(u32, i64), u32> = HashMap::default();
            let mut next = 0;
            for j in 0..d {
                let k = if j == pos { (u32::MAX, j as i64) } else { (node.blocks[j], w[j]) };
                let id = *ids.entry(k).or_insert_with(|| {
                    next += 1;
                    next - 1
                });
                child.blocks[j] = id;
            }
        }
        child.facets.push(Arc::new(Fac { mask, vids, normal, dual }));
        child.level_sum = level_sum;
        child.g = g;
        Ok(Some(child))
    }

    pub fn leaf(&self, node: &Node) -> Option<Leaf> {
        let d = self.p.d;
        let nv = self.nv(node);
        let ok = (0..d).all(|j| (0..nv).map(|i| node.verts[i * d + j]).sum::<i64>() >= 0);
        ok.then(|| Leaf {
            vertices: node.verts.chunks_exact(d).map(<[i64]>::to_vec).collect(),
            normals: node.facets.iter().map(|f| f.normal.clone()).collect(),
        })
    }

    /// Depth-first completion of `node`.
    pub fn run(&self, node: Node, leaves: &mut Vec<Leaf>, stats: &mut Stats) -> Result<()> {
        let mut stack = vec![node];
        while let Some(mut n) = stack.pop() {
            stats.nodes += 1;
            let nf = n.facets.len();
            if nf <= self.p.d {
                stats.phase1 += 1;
            } else if nf == self.p.d + 1 {
                stats.boundary += 1;
            }
            match self.expand(&mut n)? {
                None => {
                    if let Some(l) = self.leaf(&n) {
                        stats.leaves += 1;
                        leaves.push(l);
                    }
                }
                Some(children) => stack.extend(children.into_iter().rev()),
            }
        }
        Ok(())
    }
}

fn unit(d: usize, j: usize) -> Vec<i64> {
    let mut e = vec![0; d];
    e[j] = 1;
    e
}

fn enumerate_sum(j: usize, rem: i64, lo: &[i64], hi: &[i64], y: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
    let d = lo.len();
    if j == d {
        if rem == 0 {
            f(y);
        }
        return;
    }
    let rest_lo: i64 = lo[j + 1..].iter().sum();
    let rest_hi: i64 = hi[j + 1..].iter().sum();
    for x in lo[j].max(rem - rest_hi)..=hi[j].min(rem - rest_lo) {
        y[j] = x;
        enumerate_sum(j + 1, rem - x, lo, hi, y, f);
    }
}
