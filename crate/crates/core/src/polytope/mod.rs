//! Lattice polytopes: hulls, facets, faces, reflexivity, smoothness,
//! Gorenstein index, divisibility and canonical forms.

mod faces;
mod hull;
pub mod io;
mod normal_form;
mod points;

use std::sync::Arc;

use crate::bitset::BitSet;
use crate::int::Int;
use crate::intlin::{self, dot, hnf, hnf_rank, is_lattice_basis, make_primitive, AffineUnimodularMap, IntMat, IntVec};
use crate::{Error, Result};

pub use faces::{Face, FaceLattice};
pub use normal_form::NormalForm;
pub use points::SliceEnumerator;

/// Inner normal description of a facet: `⟨normal, x⟩ + offset ≥ 0`, with
/// `(normal, offset)` jointly primitive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: IntVec,
    pub offset: Int,
}

impl Facet {
    pub fn eval(&self, x: &[Int]) -> Int {
        &dot(&self.normal, x) + &self.offset
    }
}

#[derive(Debug)]
struct Inner {
    dim: usize,
    vertices: Vec<IntVec>,
    facets: Vec<Facet>,
    facet_vertices: Vec<BitSet>,
    vertex_facets: Vec<BitSet>,
    /// set when the polytope was built as a product; enables factorwise counting
    factors: Vec<LatticePolytope>,
}

/// A full-dimensional lattice polytope with its facet description. Cheap to
/// clone; immutable after construction.
#[derive(Clone, Debug)]
pub struct LatticePolytope {
    inner: Arc<Inner>,
}

/// Data certifying that `r·P − w` is reflexive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinData {
    pub index: usize,
    pub interior_point: IntVec,
}

impl GorensteinData {
    /// Calabi–Yau dimension `d + 1 − 2r`.
    pub fn cy_dim(&self, d: usize) -> i64 {
        d as i64 + 1 - 2 * self.index as i64
    }
}

/// Re-coordinatization of an affine sublattice `p0 + Λ` of `Z^d`:
/// `back_map` sends `(y, 0, …, 0)` to the original point.
#[derive(Clone, Debug)]
pub struct SpanEmbedding {
    pub span_dim: usize,
    pub back_map: AffineUnimodularMap,
    forward: AffineUnimodularMap,
}

impl SpanEmbedding {
    /// Coordinates of an ambient point of the affine span.
    pub fn project(&self, x: &[Int]) -> IntVec {
        let mut y = self.forward.apply(x);
        debug_assert!(y[self.span_dim..].iter().all(Int::is_zero), "point outside the affine span");
        y.truncate(self.span_dim);
        y
    }

    pub fn embed(&self, y: &[Int]) -> IntVec {
        let mut full = y.to_vec();
        full.resize(self.back_map.dim(), Int::zero());
        self.back_map.apply(&full)
    }
}

/// The dual of a polytope containing the origin in its interior: vertices
/// `a_F / b_F` as (numerator, positive denominator).
#[derive(Clone, Debug)]
pub struct DualDescription {
    pub vertices: Vec<(IntVec, Int)>,
}

impl DualDescription {
    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(|(_, den)| den.is_one())
    }

    pub fn lattice_vertices(&self) -> Option<Vec<IntVec>> {
        self.is_lattice().then(|| self.vertices.iter().map(|(v, _)| v.clone()).collect())
    }
}

impl LatticePolytope {
    /// Convex hull of lattice points; fails if they do not span the ambient space.
    pub fn hull(points: &[IntVec]) -> Result<LatticePolytope> {
        let dim = points.first().ok_or(Error::Empty)?.len();
        let h = hull::hull(points, dim)?;
        let vertices: Vec<IntVec> = h.vertices.iter().map(|&i| h.points[i].clone()).collect();
        let facets = h.facets.into_iter().map(|(normal, offset)| Facet { normal, offset }).collect();
        Ok(LatticePolytope::from_parts(dim, vertices, facets, Vec::new()))
    }

    pub fn hull_i64(points: &[&[i64]]) -> Result<LatticePolytope> {
        let pts: Vec<IntVec> = points.iter().map(|p| intlin::vec_from(p)).collect();
        LatticePolytope::hull(&pts)
    }

    /// Assembles a polytope from a known vertex and facet description.
    pub(crate) fn from_parts(
        dim: usize,
        mut vertices: Vec<IntVec>,
        mut facets: Vec<Facet>,
        factors: Vec<LatticePolytope>,
    ) -> LatticePolytope {
        vertices.sort();
        facets.sort();
        let nv = vertices.len();
        let nf = facets.len();
        let mut facet_vertices = vec![BitSet::new(nv); nf];
        let mut vertex_facets = vec![BitSet::new(nf); nv];
        for (j, f) in facets.iter().enumerate() {
            for (i, v) in vertices.iter().enumerate() {
                let val = f.eval(v);
                debug_assert!(!val.is_negative(), "vertex violates facet inequality");
                if val.is_zero() {
                    facet_vertices[j].insert(i);
                    vertex_facets[i].insert(j);
                }
            }
        }
        LatticePolytope { inner: Arc::new(Inner { dim, vertices, facets, facet_vertices, vertex_facets, factors }) }
    }

    /// Hull of points in their own affine lattice `aff(points) ∩ Z^d`.
    pub fn restrict_to_span(points: &[IntVec]) -> Result<(LatticePolytope, SpanEmbedding)> {
        let emb = span_embedding(points)?;
        let local: Vec<IntVec> = points.iter().map(|p| emb.project(p)).collect();
        let poly = if emb.span_dim == 0 {
            LatticePolytope::from_parts(0, vec![Vec::new()], Vec::new(), Vec::new())
        } else {
            LatticePolytope::hull(&local)?
        };
        Ok((poly, emb))
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn vertices(&self) -> &[IntVec] {
        &self.inner.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.inner.vertices.len()
    }

    pub fn facets(&self) -> &[Facet] {
        &self.inner.facets
    }

    pub fn num_facets(&self) -> usize {
        self.inner.facets.len()
    }

    /// Vertices lying on facet `j`.
    pub fn facet_vertices(&self, j: usize) -> &BitSet {
        &self.inner.facet_vertices[j]
    }

    /// Facets containing vertex `i`.
    pub fn vertex_facets(&self, i: usize) -> &BitSet {
        &self.inner.vertex_facets[i]
    }

    pub fn product_factors(&self) -> &[LatticePolytope] {
        &self.inner.factors
    }

    /// Vertex–facet pairing matrix `⟨a_F, v⟩ + b_F` (vertices × facets).
    pub fn pairing_matrix(&self) -> IntMat {
        let rows: Vec<IntVec> =
            self.vertices().iter().map(|v| self.facets().iter().map(|f| f.eval(v)).collect()).collect();
        IntMat::from_rows_with_cols(&rows, self.num_facets())
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.facets().iter().all(|f| !f.eval(x).is_negative())
    }

    pub fn contains_interior(&self, x: &[Int]) -> bool {
        self.facets().iter().all(|f| f.eval(x).is_positive())
    }

    /// Image under an affine unimodular map.
    pub fn map(&self, m: &AffineUnimodularMap) -> LatticePolytope {
        assert_eq!(m.dim(), self.dim());
        let vertices: Vec<IntVec> = self.vertices().iter().map(|v| m.apply(v)).collect();
        // facet (a, b) pulls back to (a·L^{-1}, b − a·L^{-1}·t)
        let inv = m.linear().unimodular_inverse().expect("unimodular");
        let facets = self
            .facets()
            .iter()
            .map(|f| {
                let normal = inv.transpose().mul_vec(&f.normal);
                let offset = &f.offset - &dot(&normal, m.translation());
                Facet { normal, offset }
            })
            .collect();
        LatticePolytope::from_parts(self.dim(), vertices, facets, Vec::new())
    }

    pub fn translate(&self, t: &[Int]) -> LatticePolytope {
        self.map(&AffineUnimodularMap::translation_by(t.to_vec()))
    }

    /// `k·P` for `k ≥ 1`.
    pub fn dilate(&self, k: &Int) -> LatticePolytope {
        assert!(k.is_positive(), "dilation factor must be positive");
        let vertices = self.vertices().iter().map(|v| intlin::scale(v, k)).collect();
        let facets = self.facets().iter().map(|f| Facet { normal: f.normal.clone(), offset: &f.offset * k }).collect();
        let factors = self.product_factors().iter().map(|p| p.dilate(k)).collect();
        LatticePolytope::from_parts(self.dim(), vertices, facets, factors)
    }

    /// Divides all vertices by `k` after translating `v0` to the origin.
    pub fn divide(&self, v0: &[Int], k: &Int) -> Result<LatticePolytope> {
        let mut verts = Vec::with_capacity(self.num_vertices());
        for v in self.vertices() {
            let diff = intlin::sub(v, v0);
            if let Some(bad) = diff.iter().find(|x| !k.divides(x)) {
                return Err(Error::Divisibility(bad.clone(), k.clone()));
            }
            verts.push(diff.iter().map(|x| x.div_exact(k)).collect());
        }
        // ⟨a, kx' + v0⟩ + b ≥ 0  ⇔  ⟨a, x'⟩ + (⟨a, v0⟩ + b)/k ≥ 0
        let facets = self
            .facets()
            .iter()
            .map(|f| Facet { normal: f.normal.clone(), offset: f.eval(v0).div_exact(k) })
            .collect();
        Ok(LatticePolytope::from_parts(self.dim(), verts, facets, Vec::new()))
    }

    pub fn lattice_points(&self) -> Result<Vec<IntVec>> {
        Ok(SliceEnumerator::new(self)?.points(1, false))
    }

    pub fn interior_lattice_points(&self) -> Result<Vec<IntVec>> {
        Ok(SliceEnumerator::new(self)?.points(1, true))
    }

    pub fn num_lattice_points(&self) -> Result<u64> {
        Ok(SliceEnumerator::new(self)?.count(1, false))
    }

    /// Reflexive iff there is exactly one interior lattice point `w` and
    /// every facet satisfies `⟨a_F, w⟩ + b_F = 1`.
    pub fn is_reflexive(&self) -> Result<bool> {
        let interior = self.interior_lattice_points()?;
        if interior.len() != 1 {
            return Ok(false);
        }
        let w = &interior[0];
        Ok(self.facets().iter().all(|f| f.eval(w).is_one()))
    }

    /// Dual polytope; requires the origin in the interior.
    pub fn dual(&self) -> Result<DualDescription> {
        if self.facets().iter().any(|f| !f.offset.is_positive()) {
            return Err(Error::NoInteriorPoint);
        }
        let vertices = self
            .facets()
            .iter()
            .map(|f| {
                let g = intlin::content(&f.normal).gcd(&f.offset);
                (f.normal.iter().map(|x| x.div_exact(&g)).collect(), f.offset.div_exact(&g))
            })
            .collect();
        Ok(DualDescription { vertices })
    }

    /// Polar dual as a lattice polytope, when it is one.
    pub fn dual_polytope(&self) -> Result<Option<LatticePolytope>> {
        match self.dual()?.lattice_vertices() {
            Some(vs) => Ok(Some(LatticePolytope::hull(&vs)?)),
            None => Ok(None),
        }
    }

    pub fn is_simple(&self) -> bool {
        let d = self.dim();
        (0..self.num_vertices()).all(|i| self.vertex_facets(i).len() == d)
    }

    /// Vertices adjacent to vertex `i` along edges.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        let d = self.dim();
        let fi = self.vertex_facets(i);
        (0..self.num_vertices())
            .filter(|&j| j != i)
            .filter(|&j| {
                let common = fi.and(self.vertex_facets(j));
                if common.len() + 1 < d {
                    return false;
                }
                // common facets cut out exactly the segment [v_i, v_j]
                let mut verts = BitSet::full(self.num_vertices());
                for f in common.iter() {
                    verts.and_assign(self.facet_vertices(f));
                }
                verts.len() == 2
            })
            .collect()
    }

    /// Simple, and at every vertex the primitive edge directions form a lattice basis.
    pub fn is_smooth(&self) -> bool {
        if !self.is_simple() {
            return false;
        }
        (0..self.num_vertices()).all(|i| {
            let v = &self.vertices()[i];
            let dirs: Vec<IntVec> = self
                .neighbors(i)
                .into_iter()
                .map(|j| make_primitive(&intlin::sub(&self.vertices()[j], v)).expect("distinct vertices").0)
                .collect();
            dirs.len() == self.dim() && is_lattice_basis(&dirs)
        })
    }

    /// Lattice point `w` with `⟨a_F, w⟩ + r·b_F = 1` for all facets, i.e.
    /// `rP − w` reflexive.
    pub fn reflexive_witness(&self, r: usize) -> Option<IntVec> {
        let d = self.dim();
        let r = Int::from(r);
        if d == 0 {
            return None;
        }
        let mut chosen: Vec<usize> = Vec::new();
        for j in 0..self.num_facets() {
            let mut rows: Vec<IntVec> = chosen.iter().map(|&k| self.facets()[k].normal.clone()).collect();
            rows.push(self.facets()[j].normal.clone());
            if hnf_rank(&IntMat::from_rows(&rows)) == rows.len() {
                chosen.push(j);
                if chosen.len() == d {
                    break;
                }
            }
        }
        let a = IntMat::from_rows(&chosen.iter().map(|&k| self.facets()[k].normal.clone()).collect::<Vec<_>>());
        let rhs: IntVec = chosen.iter().map(|&k| &Int::one() - &(&r * &self.facets()[k].offset)).collect();
        let (num, den) = a.solve_rational(&rhs)?;
        if !num.iter().all(|x| den.divides(x)) {
            return None;
        }
        let w: IntVec = num.iter().map(|x| x.div_exact(&den)).collect();
        self.facets().iter().all(|f| (&dot(&f.normal, &w) + &(&r * &f.offset)).is_one()).then_some(w)
    }

    /// Smallest `r ≥ 1` with `rP` reflexive up to a lattice translation.
    pub fn gorenstein_index(&self) -> Option<GorensteinData> {
        (1..=self.dim() + 1).find_map(|r| {
            self.reflexive_witness(r).map(|w| GorensteinData { index: r, interior_point: w })
        })
    }

    /// Largest `m` such that `(P − v0)/m` is a lattice polytope.
    pub fn max_divisibility(&self) -> Int {
        let v0 = &self.vertices()[0];
        let mut g = Int::zero();
        for v in &self.vertices()[1..] {
            for (x, y) in v.iter().zip(v0) {
                g = g.gcd(&(x - y));
            }
        }
        g
    }

    pub fn canonical_form(&self) -> NormalForm {
        normal_form::normal_form(self)
    }

    pub fn is_isomorphic(&self, other: &LatticePolytope) -> bool {
        self.dim() == other.dim()
            && self.num_vertices() == other.num_vertices()
            && self.num_facets() == other.num_facets()
            && self.canonical_form() == other.canonical_form()
    }

    pub fn face_lattice(&self) -> FaceLattice {
        FaceLattice::new(self)
    }

    /// Vertices of a face given as a vertex bitset.
    pub fn face_points(&self, face: &BitSet) -> Vec<IntVec> {
        face.iter().map(|i| self.vertices()[i].clone()).collect()
    }
}

/// Saturated re-coordinatization of `aff(points)`.
pub fn span_embedding(points: &[IntVec]) -> Result<SpanEmbedding> {
    let p0 = points.first().ok_or(Error::Empty)?;
    let d = p0.len();
    let diffs: Vec<IntVec> = points[1..].iter().map(|p| intlin::sub(p, p0)).collect();
    let dt = IntMat::from_rows_with_cols(&diffs, d);
    // dt · u = h; nonzero columns of h come first, so (x − p0)ᵀ·u vanishes
    // beyond the rank for every point of the span
    let (h, u) = hnf(&dt);
    let span_dim = (0..d).filter(|&j| (0..h.nrows()).any(|i| !h[(i, j)].is_zero())).count();
    let ut = u.transpose();
    let forward_t: IntVec = ut.mul_vec(p0).into_iter().map(|x| -x).collect();
    let forward = AffineUnimodularMap::new(ut, forward_t)?;
    let back_map = forward.inverse();
    Ok(SpanEmbedding { span_dim, back_map, forward })
}

#[cfg(test)]
mod tests;
