//! Dual Gorenstein polytopes and stringy E-polynomials.
//!
//! For a Gorenstein polytope `P` of index `r` with `rP − w` reflexive, the
//! cone over `P × {1}` has facet normals `η_F = (a_F, b_F)`, all pairing to 1
//! with `(w, r)`. Their convex hull, re-coordinatized in its own affine
//! lattice, is the dual Gorenstein polytope `P^×`; the face `F` corresponds
//! to `F^× = conv{η_G : G ⊇ F}`.
//!
//! With `S̃(F; t) = Σ_{F' ⪯ F} (−1)^{dim F − dim F'} h*_{F'}(t) g([F', F]^*; t)`
//! (empty face included, `h*_∅ = 1`) the stringy E-polynomial is
//! `(uv)^{−r} Σ_F (−u)^{dim F + 1} S̃(F; u^{−1}v) S̃(F^×; uv)`.

mod poly;

use std::collections::HashMap;
use std::sync::Mutex;

use serde::Serialize;

pub use poly::{BivariateLaurent, UniPoly};

use crate::bitset::BitSet;
use crate::construct::cayley_of_simplices;
use crate::ehrhart::{ehrhart_counts, hstar, HStarVector};
use crate::int::Int;
use crate::intlin::{self, dot, IntMat, IntVec};
use crate::par::*;
use crate::polytope::{Face, FaceLattice, GorensteinData, LatticePolytope, SpanEmbedding};
use crate::{Error, Result};

/// The cone over `P × {1}` with its Gorenstein point `(w, r)`.
#[derive(Clone, Debug)]
pub struct GorensteinCone {
    pub base: LatticePolytope,
    pub point: IntVec,
    /// `(a_F, b_F)` in the order of `base.facets()`
    pub normals: Vec<IntVec>,
}

impl GorensteinCone {
    pub fn new(p: &LatticePolytope, data: &GorensteinData) -> Result<GorensteinCone> {
        let mut point = data.interior_point.clone();
        point.push(Int::from(data.index));
        let mut normals = Vec::with_capacity(p.num_facets());
        for f in p.facets() {
            let mut eta = f.normal.clone();
            eta.push(f.offset.clone());
            let value = dot(&eta, &point);
            if !value.is_one() {
                return Err(Error::GorensteinConditionViolated { value });
            }
            normals.push(eta);
        }
        Ok(GorensteinCone { base: p.clone(), point, normals })
    }
}

/// `P`, its dual Gorenstein polytope, and the inclusion-reversing face
/// bijection between them.
#[derive(Clone, Debug)]
pub struct DualPair {
    pub p: LatticePolytope,
    pub p_dual: LatticePolytope,
    pub index: usize,
    pub lattice: FaceLattice,
    pub dual_lattice: FaceLattice,
    /// `face_match[i]`: index in `dual_lattice` of the dual of face `i`
    pub face_match: Vec<usize>,
    /// vertex of `p_dual` for each facet of `p`
    pub facet_to_vertex: Vec<usize>,
    pub embedding: SpanEmbedding,
}

impl DualPair {
    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    /// Calabi–Yau dimension `d + 1 − 2r`.
    pub fn cy_dim(&self) -> i64 {
        self.dim() as i64 + 1 - 2 * self.index as i64
    }

    /// The same pair seen from `P^×`.
    pub fn swapped(&self) -> DualPair {
        let mut inverse = vec![0; self.face_match.len()];
        for (i, &j) in self.face_match.iter().enumerate() {
            inverse[j] = i;
        }
        // facets of P^× correspond to vertices of P; recover them by incidence
        let mut facet_to_vertex = vec![0; self.p_dual.num_facets()];
        for (j, slot) in facet_to_vertex.iter_mut().enumerate() {
            let verts = self.p_dual.facet_vertices(j);
            let face = self.dual_lattice.find(verts).expect("facet in lattice");
            let primal = &self.lattice.face(inverse[face]).vertices;
            *slot = primal.iter().next().expect("vertex");
        }
        DualPair {
            p: self.p_dual.clone(),
            p_dual: self.p.clone(),
            index: self.index,
            lattice: self.dual_lattice.clone(),
            dual_lattice: self.lattice.clone(),
            face_match: inverse,
            facet_to_vertex,
            embedding: self.embedding.clone(),
        }
    }
}

/// Builds `P^×` and matches faces by incidence.
pub fn dual_gorenstein(p: &LatticePolytope, data: &GorensteinData) -> Result<DualPair> {
    let cone = GorensteinCone::new(p, data)?;
    let (p_dual, embedding) = LatticePolytope::restrict_to_span(&cone.normals)?;
    let facet_to_vertex: Vec<usize> = cone
        .normals
        .iter()
        .map(|eta| {
            let y = embedding.project(eta);
            p_dual.vertices().binary_search(&y).map_err(|_| Error::InvalidInput("facet normal is not a vertex".into()))
        })
        .collect::<Result<_>>()?;
    let lattice = p.face_lattice();
    let dual_lattice = p_dual.face_lattice();
    let face_match = lattice
        .faces()
        .iter()
        .map(|f| {
            let verts = BitSet::from_indices(p_dual.num_vertices(), f.facets.iter().map(|j| facet_to_vertex[j]));
            dual_lattice.find(&verts).ok_or_else(|| Error::InvalidInput("dual face not found".into()))
        })
        .collect::<Result<_>>()?;
    Ok(DualPair { p: p.clone(), p_dual, index: data.index, lattice, dual_lattice, face_match, facet_to_vertex, embedding })
}

/// Memoized toric g-polynomials of intervals of one face lattice.
pub struct GPolynomials<'a> {
    lattice: &'a FaceLattice,
    dual: bool,
    memo: Mutex<HashMap<(usize, usize), UniPoly>>,
}

impl<'a> GPolynomials<'a> {
    /// `dual` selects the intervals `[lo, hi]^*` with reversed order.
    pub fn new(lattice: &'a FaceLattice, dual: bool) -> GPolynomials<'a> {
        GPolynomials { lattice, dual, memo: Mutex::new(HashMap::new()) }
    }

    fn rank(&self, lo: usize, hi: usize) -> usize {
        (self.lattice.face(hi).dim - self.lattice.face(lo).dim) as usize
    }

    /// Intervals whose atoms or coatoms number the rank are Boolean.
    fn is_boolean(&self, lo: usize, hi: usize, m: usize) -> Result<bool> {
        let lat = self.lattice;
        if m <= 1 {
            return Ok(true);
        }
        let coatoms = lat.covers_down(hi).iter().filter(|&&c| lat.leq(lo, c)).count();
        if m == 2 {
            if coatoms != 2 {
                return Err(Error::NonEulerian);
            }
            return Ok(true);
        }
        let atoms = || lat.covers_up(lo).iter().filter(|&&c| lat.leq(c, hi)).count();
        Ok(coatoms == m || atoms() == m)
    }

    pub fn get(&self, lo: usize, hi: usize) -> Result<UniPoly> {
        if !self.lattice.leq(lo, hi) {
            return Err(Error::InvalidInput("not an interval".into()));
        }
        let m = self.rank(lo, hi);
        if self.is_boolean(lo, hi, m)? {
            return Ok(UniPoly::one());
        }
        if let Some(g) = self.memo.lock().expect("memo lock").get(&(lo, hi)) {
            return Ok(g.clone());
        }
        // h = Σ_{z < top} g([bottom, z]) (t − 1)^{m − 1 − ρ(z)}
        let mut h = UniPoly::zero();
        for z in self.lattice.interval(lo, hi) {
            let (g, rho) = if self.dual {
                if z == lo {
                    continue;
                }
                (self.get(z, hi)?, self.rank(z, hi))
            } else {
                if z == hi {
                    continue;
                }
                (self.get(lo, z)?, self.rank(lo, z))
            };
            h.add_scaled(&g.mul(&UniPoly::t_minus_one_pow(m - 1 - rho)), &Int::one());
        }
        let mut g = Vec::new();
        for i in 0..=(m - 1) / 2 {
            let prev = if i == 0 { Int::zero() } else { h.coeff(i - 1) };
            g.push(&h.coeff(i) - &prev);
        }
        let g = UniPoly::new(g);
        self.memo.lock().expect("memo lock").insert((lo, hi), g.clone());
        Ok(g)
    }
}

/// g-polynomial of `[lo, hi]`, or of its dual when `dual` is set.
pub fn g_polynomial(lattice: &FaceLattice, lo: usize, hi: usize, dual: bool) -> Result<UniPoly> {
    GPolynomials::new(lattice, dual).get(lo, hi)
}

fn hstar_poly(h: &HStarVector) -> UniPoly {
    UniPoly::new(h.coeffs.clone())
}

/// Edge vectors of a simplex that form a basis of their saturated span.
fn is_unimodular_simplex(edges: &[IntVec]) -> bool {
    let (s, _, _) = intlin::snf(&IntMat::from_rows(edges));
    (0..edges.len()).all(|i| s.row(i)[i].is_one())
}

/// h* of a face in its own affine lattice.
fn face_hstar(p: &LatticePolytope, face: &Face, cache: &Mutex<HashMap<(usize, Vec<IntVec>), Vec<Int>>>) -> Result<UniPoly> {
    if face.dim <= 0 {
        return Ok(UniPoly::one());
    }
    let k = face.dim as usize;
    let pts = p.face_points(&face.vertices);
    if pts.len() == k + 1 {
        let rows: Vec<IntVec> = pts[1..].iter().map(|v| intlin::sub(v, &pts[0])).collect();
        if is_unimodular_simplex(&rows) {
            return Ok(UniPoly::one());
        }
    }
    if p.product_factors().is_empty() {
        let (local, _) = LatticePolytope::restrict_to_span(&pts)?;
        return Ok(hstar_poly(&hstar(&local)?));
    }
    // a face of a product is the product of its projections
    let mut counts = vec![Int::one(); k + 1];
    let mut offset = 0;
    for (fi, factor) in p.product_factors().iter().enumerate() {
        let dim = factor.dim();
        let mut proj: Vec<IntVec> = pts.iter().map(|v| v[offset..offset + dim].to_vec()).collect();
        proj.sort();
        proj.dedup();
        offset += dim;
        let key = (fi, proj);
        let cached = cache.lock().expect("cache lock").get(&key).cloned();
        let c = match cached {
            Some(c) => c,
            None => {
                let (local, _) = LatticePolytope::restrict_to_span(&key.1)?;
                // full length so entries can be shared across face dimensions
                let c = if local.dim() == 0 { vec![Int::one(); p.dim() + 1] } else { ehrhart_counts(&local, p.dim())? };
                cache.lock().expect("cache lock").insert(key, c.clone());
                c
            }
        };
        for (acc, x) in counts.iter_mut().zip(&c) {
            *acc *= x;
        }
    }
    Ok(hstar_poly(&HStarVector::from_counts(&counts)))
}

/// `S̃(F)` for every face of `p`, indexed like `lattice`.
pub fn s_tilde_all(p: &LatticePolytope, lattice: &FaceLattice) -> Result<Vec<UniPoly>> {
    let cache = Mutex::new(HashMap::new());
    let hs: Vec<UniPoly> =
        lattice.faces().par_iter().map(|f| face_hstar(p, f, &cache)).collect::<Result<_>>()?;
    let g = GPolynomials::new(lattice, true);
    (0..lattice.len())
        .into_par_iter()
        .map(|i| {
            let dim_f = lattice.face(i).dim;
            let mut s = UniPoly::zero();
            for j in lattice.interval(lattice.bottom(), i) {
                let sign = if (dim_f - lattice.face(j).dim) % 2 == 0 { Int::one() } else { Int::new(-1) };
                s.add_scaled(&hs[j].mul(&g.get(j, i)?), &sign);
            }
            Ok(s)
        })
        .collect()
}

/// `S̃(F)` for a single face (vertex bitset of `p`).
pub fn s_tilde(p: &LatticePolytope, face: &BitSet) -> Result<UniPoly> {
    let (local, _) = if face.is_empty() {
        return Ok(UniPoly::one());
    } else {
        LatticePolytope::restrict_to_span(&p.face_points(face))?
    };
    if local.dim() == 0 {
        return Ok(UniPoly::zero());
    }
    let lattice = local.face_lattice();
    Ok(s_tilde_all(&local, &lattice)?.pop().expect("top face"))
}

/// Stringy E-polynomials of `P` and of `P^×`.
#[derive(Clone, Debug, Serialize)]
pub struct StringyPair {
    pub e: BivariateLaurent,
    pub e_dual: BivariateLaurent,
    pub cy_dim: i64,
}

fn assemble(
    lattice: &FaceLattice,
    face_match: &[usize],
    st: &[UniPoly],
    st_dual: &[UniPoly],
    r: i64,
    n: i64,
) -> Result<BivariateLaurent> {
    let mut e = BivariateLaurent::zero();
    for (i, face) in lattice.faces().iter().enumerate() {
        let a = &st[i];
        let b = &st_dual[face_match[i]];
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let k = face.dim as i64 + 1;
        let sign = if k % 2 == 0 { Int::one() } else { Int::new(-1) };
        for (x, ca) in a.coeffs().iter().enumerate() {
            for (y, cb) in b.coeffs().iter().enumerate() {
                let (x, y) = (x as i64, y as i64);
                e.add_term(k - x + y - r, x + y - r, &(&(ca * cb) * &sign));
            }
        }
    }
    if let Some((p, q, _)) = e.terms().find(|&(p, q, _)| !(0..=n).contains(&p) || !(0..=n).contains(&q)) {
        return Err(Error::ExponentRangeViolation { p, q, n });
    }
    Ok(e)
}

pub fn stringy_pair(pair: &DualPair) -> Result<StringyPair> {
    let st = s_tilde_all(&pair.p, &pair.lattice)?;
    let st_dual = s_tilde_all(&pair.p_dual, &pair.dual_lattice)?;
    let r = pair.index as i64;
    let n = pair.cy_dim();
    let e = assemble(&pair.lattice, &pair.face_match, &st, &st_dual, r, n)?;
    let mut inverse = vec![0; pair.face_match.len()];
    for (i, &j) in pair.face_match.iter().enumerate() {
        inverse[j] = i;
    }
    let e_dual = assemble(&pair.dual_lattice, &inverse, &st_dual, &st, r, n)?;
    Ok(StringyPair { e, e_dual, cy_dim: n })
}

#[allow(non_snake_case)]
pub fn stringy_E(pair: &DualPair) -> Result<BivariateLaurent> {
    Ok(stringy_pair(pair)?.e)
}

/// Dual pair of a Gorenstein polytope, computing its index.
pub fn dual_pair_of(p: &LatticePolytope) -> Result<DualPair> {
    let data = p.gorenstein_index().ok_or(Error::NotGorenstein)?;
    dual_gorenstein(p, &data)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeTable {
    pub n: i64,
    /// `entries[p][q] = h^{p,q}`
    pub entries: Vec<Vec<Int>>,
}

impl HodgeTable {
    pub fn get(&self, p: usize, q: usize) -> Int {
        self.entries.get(p).and_then(|row| row.get(q)).cloned().unwrap_or_default()
    }

    /// `(h^{1,1}, h^{1,2})` when `n = 3`.
    pub fn pair(&self) -> Option<(Int, Int)> {
        (self.n == 3).then(|| (self.get(1, 1), self.get(1, 2)))
    }

    pub fn has_negative_entries(&self) -> bool {
        self.entries.iter().flatten().any(Int::is_negative)
    }

    /// Aligned text rendering, `p` down and `q` across.
    pub fn to_text(&self) -> String {
        let width = self.entries.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
        let mut out = String::new();
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

/// `h^{p,q} = (−1)^{p+q} [u^p v^q] E`.
pub fn hodge_table(e: &BivariateLaurent, n: i64) -> Result<HodgeTable> {
    if let Some((p, q, _)) = e.terms().find(|&(p, q, _)| !(0..=n).contains(&p) || !(0..=n).contains(&q)) {
        return Err(Error::ExponentRangeViolation { p, q, n });
    }
    let size = (n + 1).max(0) as usize;
    let entries = (0..size)
        .map(|p| {
            (0..size)
                .map(|q| {
                    let c = e.coeff(p as i64, q as i64);
                    if (p + q) % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                })
                .collect()
        })
        .collect();
    Ok(HodgeTable { n, entries })
}

/// `E(P; u, v) = (−u)^n E(P^×; u^{−1}, v)`.
pub fn mirror_check(pair: &DualPair) -> Result<bool> {
    let s = stringy_pair(pair)?;
    Ok(s.e == s.e_dual.mirror(s.cy_dim))
}

/// Compares `E(S_s * b_2 S_s * ⋯)` with `E(b_2 S_{s−1} * ⋯)`.
pub fn reduction_check(s: usize, b: &[u64]) -> Result<bool> {
    if s < 2 || b.is_empty() || b.contains(&0) || b.iter().sum::<u64>() != s as u64 {
        return Err(Error::InvalidInput("need s ≥ 2 and positive b_i summing to s".into()));
    }
    let mut dil = vec![1];
    dil.extend_from_slice(b);
    let lhs = stringy_E(&dual_pair_of(&cayley_of_simplices(s, &dil))?)?;
    let rhs = stringy_E(&dual_pair_of(&cayley_of_simplices(s - 1, b))?)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests;
