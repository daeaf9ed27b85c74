//! Canonical form under unimodular equivalence up to translation.
//!
//! Vertices are ordered one at a time. For a partial order the key of the
//! next vertex is
//!
//! 1. its row of the vertex–facet pairing matrix, read through the column
//!    blocks induced by the rows already chosen (descending inside each
//!    block), larger is better; then
//! 2. its row in the column Hermite normal form of the translated vertex
//!    matrix `[v_σ(i) − v_σ(0)]`, smaller is better.
//!
//! Both parts depend only on the chosen prefix and are invariant under
//! lattice automorphisms, and the HNF of the full matrix determines the
//! polytope up to a unimodular map, so the optimal key sequence is a complete
//! invariant. The search is depth-first over tied prefixes; two complete
//! orders with equal matrices differ by a lattice automorphism, which is
//! recorded and used to skip equivalent siblings.

use std::cmp::Ordering;

use sha2::{Digest, Sha256};

use super::LatticePolytope;
use crate::int::Int;
use crate::intlin::{IntMat, IntVec};

#[derive(Clone)]
pub struct NormalForm {
    dim: usize,
    /// vertices in canonical order, in column Hermite normal form
    matrix: IntMat,
    /// a canonical vertex order of the source polytope (not part of identity)
    order: Vec<usize>,
}

impl NormalForm {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &IntMat {
        &self.matrix
    }

    /// Indices into the source polytope's vertex list, in canonical order.
    pub fn vertex_order(&self) -> &[usize] {
        &self.order
    }

    pub fn digest(&self) -> [u8; 32] {
        let mut bytes = Vec::new();
        bytes.extend_from_slice(&(self.dim as u64).to_be_bytes());
        bytes.extend_from_slice(&(self.matrix.nrows() as u64).to_be_bytes());
        for x in self.matrix.data() {
            x.write_bytes(&mut bytes);
        }
        Sha256::digest(&bytes).into()
    }

    pub fn digest_hex(&self) -> String {
        hex::encode(self.digest())
    }
}

impl std::fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NormalForm").field("dim", &self.dim).field("matrix", &self.matrix).finish()
    }
}

// identity ignores the witness order
impl PartialEq for NormalForm {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.matrix == other.matrix
    }
}

impl Eq for NormalForm {}

impl std::hash::Hash for NormalForm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.matrix.hash(state);
    }
}

impl Ord for NormalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.dim, self.matrix.nrows(), self.matrix.data()).cmp(&(other.dim, other.matrix.nrows(), other.matrix.data()))
    }
}

impl PartialOrd for NormalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone)]
struct State {
    order: Vec<usize>,
    used: Vec<bool>,
    blocks: Vec<Vec<usize>>,
    transform: IntMat,
    pivots: usize,
}

/// Key of one level: pairing row through the blocks (larger wins), then the
/// HNF row (smaller wins).
type Key = (Vec<Int>, IntVec);

fn key_cmp(a: &Key, b: &Key) -> Ordering {
    a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1))
}

struct Search<'a> {
    pairing: IntMat,
    verts: &'a [IntVec],
    best: Vec<Key>,
    best_order: Vec<usize>,
    /// vertex permutations induced by lattice automorphisms found so far
    autos: Vec<Vec<usize>>,
}

pub(super) fn normal_form(p: &LatticePolytope) -> NormalForm {
    let d = p.dim();
    let nv = p.num_vertices();
    let mut search =
        Search { pairing: p.pairing_matrix(), verts: p.vertices(), best: Vec::new(), best_order: Vec::new(), autos: Vec::new() };
    let root = State {
        order: Vec::new(),
        used: vec![false; nv],
        blocks: if p.num_facets() > 0 { vec![(0..p.num_facets()).collect()] } else { Vec::new() },
        transform: IntMat::identity(d),
        pivots: 0,
    };
    let mut keys = Vec::with_capacity(nv);
    search.dfs(root, &mut keys);
    let rows: Vec<IntVec> = search.best.into_iter().map(|k| k.1).collect();
    NormalForm { dim: d, matrix: IntMat::from_rows_with_cols(&rows, d), order: search.best_order }
}

impl Search<'_> {
    /// Depth-first search for the lexicographically best key sequence.
    /// Children related by a known automorphism fixing the current prefix
    /// have identical subtrees, so only one per orbit is explored.
    fn dfs(&mut self, s: State, keys: &mut Vec<Key>) {
        let level = s.order.len();
        if level == s.used.len() {
            match self.compare_prefix(keys) {
                Ordering::Greater => {
                    self.best = keys.clone();
                    self.best_order = s.order;
                }
                Ordering::Equal => {
                    let mut g = vec![0; self.best_order.len()];
                    for (&a, &b) in self.best_order.iter().zip(&s.order) {
                        g[a] = b;
                    }
                    if g.iter().enumerate().any(|(i, &x)| i != x) {
                        self.autos.push(g);
                    }
                }
                Ordering::Less => {}
            }
            return;
        }

        let mut top: Option<Vec<Int>> = None;
        let mut cands: Vec<usize> = Vec::new();
        for v in (0..s.used.len()).filter(|&v| !s.used[v]) {
            let row = block_row(&self.pairing, v, &s.blocks);
            match top.as_ref().map(|t| row.cmp(t)) {
                None | Some(Ordering::Greater) => {
                    top = Some(row);
                    cands.clear();
                    cands.push(v);
                }
                Some(Ordering::Equal) => cands.push(v),
                Some(Ordering::Less) => {}
            }
        }
        let top = top.expect("unused vertex");
        let mut best_h: Option<IntVec> = None;
        let mut children: Vec<(usize, IntMat, usize)> = Vec::new();
        for v in cands {
            let base = s.order.first().copied().unwrap_or(v);
            let diff: IntVec = self.verts[v].iter().zip(&self.verts[base]).map(|(a, b)| a - b).collect();
            let mut transform = s.transform.clone();
            let mut pivots = s.pivots;
            let h = extend_hnf(&diff, &mut transform, &mut pivots);
            match best_h.as_ref().map(|b| h.cmp(b)) {
                Some(Ordering::Greater) => continue,
                Some(Ordering::Equal) => {}
                _ => {
                    best_h = Some(h);
                    children.clear();
                }
            }
            children.push((v, transform, pivots));
        }
        keys.push((top, best_h.expect("candidate")));
        if self.compare_prefix(keys) == Ordering::Less {
            keys.pop();
            return;
        }

        let mut explored: Vec<usize> = Vec::new();
        for (v, transform, pivots) in children {
            if !explored.is_empty() && self.same_orbit(&s.order, v, &explored) {
                continue;
            }
            explored.push(v);
            let mut order = s.order.clone();
            order.push(v);
            let mut used = s.used.clone();
            used[v] = true;
            let blocks = split_blocks(&self.pairing, v, &s.blocks);
            self.dfs(State { order, used, blocks, transform, pivots }, keys);
            // a better leaf elsewhere may have made this prefix losing
            if self.compare_prefix(keys) == Ordering::Less {
                break;
            }
        }
        keys.pop();
    }

    /// Compares a prefix of keys with the same prefix of the best sequence.
    fn compare_prefix(&self, keys: &[Key]) -> Ordering {
        if self.best.is_empty() {
            return Ordering::Greater;
        }
        for (a, b) in keys.iter().zip(&self.best) {
            match key_cmp(a, b) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Whether `v` is mapped onto an explored vertex by the group generated
    /// by the known automorphisms that fix `prefix` pointwise.
    fn same_orbit(&self, prefix: &[usize], v: usize, explored: &[usize]) -> bool {
        let gens: Vec<&Vec<usize>> = self.autos.iter().filter(|g| prefix.iter().all(|&x| g[x] == x)).collect();
        if gens.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.verts.len()];
        seen[v] = true;
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            if explored.contains(&x) {
                return true;
            }
            for g in &gens {
                let y = g[x];
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }
}

fn block_row(m: &IntMat, v: usize, blocks: &[Vec<usize>]) -> Vec<Int> {
    let mut out = Vec::with_capacity(m.ncols());
    for b in blocks {
        let start = out.len();
        out.extend(b.iter().map(|&c| m[(v, c)].clone()));
        out[start..].sort_unstable_by(|a, b| b.cmp(a));
    }
    out
}

fn split_blocks(m: &IntMat, v: usize, blocks: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(blocks.len());
    for b in blocks {
        let mut cols = b.clone();
        cols.sort_by(|&x, &y| m[(v, y)].cmp(&m[(v, x)]));
        let mut cur: Vec<usize> = Vec::new();
        for c in cols {
            if let Some(&last) = cur.last() {
                if m[(v, last)] != m[(v, c)] {
                    out.push(std::mem::take(&mut cur));
                }
            }
            cur.push(c);
        }
        if !cur.is_empty() {
            out.push(cur);
        }
    }
    out
}

/// Appends a row to an incrementally maintained column HNF. `transform`
/// is the accumulated column transform; returns the new HNF row.
fn extend_hnf(row: &[Int], transform: &mut IntMat, pivots: &mut usize) -> IntVec {
    let d = row.len();
    let mut r: IntVec = (0..d).map(|j| (0..d).map(|k| &row[k] * &transform[(k, j)]).sum()).collect();
    let pc = *pivots;
    if pc == d {
        return r;
    }
    for j in pc + 1..d {
        if r[j].is_zero() {
            continue;
        }
        let a = r[pc].clone();
        let b = r[j].clone();
        let (g, x, y) = Int::ext_gcd(&a, &b);
        let c = -b.div_exact(&g);
        let dd = a.div_exact(&g);
        transform.combine_cols(pc, j, &x, &y, &c, &dd);
        r[pc] = g;
        r[j] = Int::zero();
    }
    if r[pc].is_zero() {
        return r;
    }
    if r[pc].is_negative() {
        transform.negate_col(pc);
        r[pc] = -&r[pc];
    }
    let pivot = r[pc].clone();
    for j in 0..pc {
        let q = r[j].div_floor(&pivot);
        if !q.is_zero() {
            transform.add_col_multiple(j, pc, &(-&q));
            r[j] = &r[j] - &(&q * &pivot);
        }
    }
    *pivots += 1;
    r
}
