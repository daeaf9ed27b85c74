use std::collections::HashMap;

use super::LatticePolytope;
use crate::bitset::BitSet;

#[derive(Clone, Debug)]
pub struct Face {
    pub vertices: BitSet,
    /// facets of the polytope containing this face
    pub facets: BitSet,
    /// −1 for the empty face
    pub dim: i32,
}

/// All faces of a polytope, ordered by dimension (empty face first, the
/// polytope itself last), with cover relations.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    faces: Vec<Face>,
    down: Vec<Vec<usize>>,
    up: Vec<Vec<usize>>,
    index: HashMap<BitSet, usize>,
    dim: usize,
}

impl FaceLattice {
    pub fn new(p: &LatticePolytope) -> FaceLattice {
        let d = p.dim();
        let nv = p.num_vertices();
        let nf = p.num_facets();
        // generate top-down: levels[k] holds faces of dimension d − k
        let mut levels: Vec<Vec<BitSet>> = vec![vec![BitSet::full(nv)]];
        let mut children: HashMap<BitSet, Vec<BitSet>> = HashMap::new();
        if d > 0 {
            let facets: Vec<BitSet> = (0..nf).map(|j| p.facet_vertices(j).clone()).collect();
            children.insert(BitSet::full(nv), facets.clone());
            levels.push(facets);
            for _ in (1..d).rev() {
                let current = levels.last().unwrap().clone();
                let mut next: Vec<BitSet> = Vec::new();
                let mut seen: HashMap<BitSet, ()> = HashMap::new();
                for f in &current {
                    let cands: Vec<BitSet> = (0..nf)
                        .map(|j| f.and(p.facet_vertices(j)))
                        .filter(|c| c != f && !c.is_empty())
                        .collect();
                    let mut maximal: Vec<BitSet> = Vec::new();
                    for c in &cands {
                        if cands.iter().any(|o| o != c && c.is_subset(o)) {
                            continue;
                        }
                        if !maximal.contains(c) {
                            maximal.push(c.clone());
                        }
                    }
                    for m in &maximal {
                        if seen.insert(m.clone(), ()).is_none() {
                            next.push(m.clone());
                        }
                    }
                    children.insert(f.clone(), maximal);
                }
                next.sort();
                levels.push(next);
            }
        }
        // vertices cover the empty face
        let empty = BitSet::new(nv);
        for v in levels.last().unwrap() {
            children.insert(v.clone(), vec![empty.clone()]);
        }
        levels.push(vec![empty.clone()]);

        let mut faces = Vec::new();
        let mut index = HashMap::new();
        for (k, level) in levels.iter().enumerate().rev() {
            let dim = d as i32 - k as i32;
            for vs in level {
                let facets = if vs.is_empty() {
                    BitSet::full(nf)
                } else {
                    let mut acc = BitSet::full(nf);
                    for i in vs.iter() {
                        acc.and_assign(p.vertex_facets(i));
                    }
                    acc
                };
                index.insert(vs.clone(), faces.len());
                faces.push(Face { vertices: vs.clone(), facets, dim });
            }
        }
        let mut down = vec![Vec::new(); faces.len()];
        let mut up = vec![Vec::new(); faces.len()];
        for (vs, ch) in &children {
            let i = index[vs];
            for c in ch {
                let j = index[c];
                down[i].push(j);
                up[j].push(i);
            }
        }
        for l in down.iter_mut().chain(up.iter_mut()) {
            l.sort_unstable();
            l.dedup();
        }
        FaceLattice { faces, down, up, index, dim: d }
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, i: usize) -> &Face {
        &self.faces[i]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn find(&self, vertices: &BitSet) -> Option<usize> {
        self.index.get(vertices).copied()
    }

    /// Faces covered by face `i`.
    pub fn covers_down(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    pub fn covers_up(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.faces[a].vertices.is_subset(&self.faces[b].vertices)
    }

    /// f-vector `(f_0, …, f_{d−1})`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim];
        for face in &self.faces {
            if face.dim >= 0 && (face.dim as usize) < self.dim {
                f[face.dim as usize] += 1;
            }
        }
        f
    }

    /// All faces `z` with `lo ≤ z ≤ hi`, `hi` first.
    pub fn interval(&self, lo: usize, hi: usize) -> Vec<usize> {
        let lo_set = &self.faces[lo].vertices;
        let mut out = vec![hi];
        let mut seen = std::collections::HashSet::from([hi]);
        let mut k = 0;
        while k < out.len() {
            let z = out[k];
            k += 1;
            for &c in &self.down[z] {
                if lo_set.is_subset(&self.faces[c].vertices) && seen.insert(c) {
                    out.push(c);
                }
            }
        }
        out
    }

    /// Möbius function value μ(lo, hi) computed by the defining recursion.
    pub fn mobius(&self, lo: usize, hi: usize) -> i64 {
        let mut members = self.interval(lo, hi);
        members.sort_by_key(|&z| self.faces[z].dim);
        let mut mu: HashMap<usize, i64> = HashMap::new();
        for &z in &members {
            if z == lo {
                mu.insert(z, 1);
                continue;
            }
            let s: i64 = members
                .iter()
                .filter(|&&w| w != z && self.faces[w].dim < self.faces[z].dim && self.leq(w, z))
                .map(|w| mu[w])
                .sum();
            mu.insert(z, -s);
        }
        mu[&hi]
    }
}
