//! Builders: simplices, dilates, products, free sums, Minkowski sums, Cayley
//! polytopes, Kleinschmidt polytopes and the large-index families.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::int::Int;
use crate::intlin::{self, IntVec};
use crate::polytope::{Facet, LatticePolytope};
use crate::{Error, Result};

fn unit(d: usize, i: usize) -> IntVec {
    let mut e = vec![Int::zero(); d];
    e[i] = Int::one();
    e
}

/// `S_d = conv(0, e_1, …, e_d)`.
pub fn simplex(d: usize) -> LatticePolytope {
    cayley_of_simplices(d, &[1])
}

/// `k·P`.
pub fn dilate(p: &LatticePolytope, k: u64) -> LatticePolytope {
    p.dilate(&Int::from(k))
}

pub fn product(p: &LatticePolytope, q: &LatticePolytope) -> LatticePolytope {
    let (dp, dq) = (p.dim(), q.dim());
    let mut vertices = Vec::with_capacity(p.num_vertices() * q.num_vertices());
    for v in p.vertices() {
        for w in q.vertices() {
            let mut x = v.clone();
            x.extend_from_slice(w);
            vertices.push(x);
        }
    }
    let mut facets = Vec::with_capacity(p.num_facets() + q.num_facets());
    for f in p.facets() {
        let mut normal = f.normal.clone();
        normal.resize(dp + dq, Int::zero());
        facets.push(Facet { normal, offset: f.offset.clone() });
    }
    for f in q.facets() {
        let mut normal = vec![Int::zero(); dp];
        normal.extend_from_slice(&f.normal);
        facets.push(Facet { normal, offset: f.offset.clone() });
    }
    let mut factors = Vec::new();
    for x in [p, q] {
        if x.product_factors().is_empty() {
            factors.push(x.clone());
        } else {
            factors.extend_from_slice(x.product_factors());
        }
    }
    LatticePolytope::from_parts(dp + dq, vertices, facets, factors)
}

/// `conv(P × 0, 0 × Q)`; both summands must contain the origin.
pub fn free_sum(p: &LatticePolytope, q: &LatticePolytope) -> Result<LatticePolytope> {
    let (dp, dq) = (p.dim(), q.dim());
    if !p.contains(&vec![Int::zero(); dp]) || !q.contains(&vec![Int::zero(); dq]) {
        return Err(Error::InvalidInput("free sum requires the origin in both summands".into()));
    }
    let mut pts: Vec<IntVec> = Vec::new();
    for v in p.vertices() {
        let mut x = v.clone();
        x.resize(dp + dq, Int::zero());
        pts.push(x);
    }
    for w in q.vertices() {
        let mut x = vec![Int::zero(); dp];
        x.extend_from_slice(w);
        pts.push(x);
    }
    LatticePolytope::hull(&pts)
}

pub fn minkowski_sum(p: &LatticePolytope, q: &LatticePolytope) -> Result<LatticePolytope> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch);
    }
    let pts: Vec<IntVec> =
        p.vertices().iter().flat_map(|v| q.vertices().iter().map(move |w| intlin::add(v, w))).collect();
    LatticePolytope::hull(&pts)
}

/// `P_0 * ⋯ * P_k = conv(P_0 × 0, P_1 × e_1, …, P_k × e_k)` in `R^{s+k}`.
pub fn cayley(factors: &[LatticePolytope]) -> Result<LatticePolytope> {
    let s = factors.first().ok_or(Error::Empty)?.dim();
    if factors.iter().any(|f| f.dim() != s) {
        return Err(Error::DimensionMismatch);
    }
    let k = factors.len() - 1;
    if k == 0 {
        return Ok(factors[0].clone());
    }
    let mut pts = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        for v in f.vertices() {
            let mut x = v.clone();
            x.resize(s + k, Int::zero());
            if i > 0 {
                x[s + i - 1] = Int::one();
            }
            pts.push(x);
        }
    }
    LatticePolytope::hull(&pts)
}

/// `b_0 S_s * ⋯ * b_k S_s` with its facets written down directly: for
/// `(x, y) ∈ R^s × R^k` they are `x_j ≥ 0`, `y_i ≥ 0`, `Σ y ≤ 1` and
/// `Σ x ≤ b_0 + Σ (b_i − b_0) y_i`.
pub fn cayley_of_simplices(s: usize, dilations: &[u64]) -> LatticePolytope {
    assert!(!dilations.is_empty() && dilations.iter().all(|&b| b > 0));
    let k = dilations.len() - 1;
    let n = s + k;
    let b: Vec<Int> = dilations.iter().map(|&x| Int::from(x)).collect();
    let mut vertices = Vec::new();
    for (i, bi) in b.iter().enumerate() {
        let mut base = vec![Int::zero(); n];
        if i > 0 {
            base[s + i - 1] = Int::one();
        }
        vertices.push(base.clone());
        for j in 0..s {
            let mut v = base.clone();
            v[j] = bi.clone();
            vertices.push(v);
        }
    }
    let mut facets = Vec::new();
    for j in 0..n {
        facets.push(Facet { normal: unit(n, j), offset: Int::zero() });
    }
    if k > 0 {
        let mut normal = vec![Int::zero(); n];
        for y in &mut normal[s..] {
            *y = Int::new(-1);
        }
        facets.push(Facet { normal, offset: Int::one() });
    }
    if s > 0 {
        let mut normal = vec![Int::new(-1); s];
        normal.extend(b[1..].iter().map(|bi| bi - &b[0]));
        facets.push(Facet { normal, offset: b[0].clone() });
    }
    LatticePolytope::from_parts(n, vertices, facets, Vec::new())
}

/// Integer partition with parts stored weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    pub fn new(mut parts: Vec<u64>) -> Result<Partition> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn total(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u64::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Partitions of `n` into at most `max_parts` parts, largest first part first.
pub fn partitions(n: u64, max_parts: usize) -> Vec<Partition> {
    fn rec(n: u64, cap: u64, slots: usize, cur: &mut Vec<u64>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=cap.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, max_parts, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyCase {
    Simplex,
    TwiceSimplex,
    ProductOfSimplices,
    CayleyFamily,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub d: usize,
    pub r: usize,
    pub case: FamilyCase,
    /// nonzero `a_i` of the Cayley factors `(a_i + 1) S_{d+1−r}`
    pub partition: Option<Partition>,
}

impl FamilySpec {
    pub fn simplex(d: usize) -> FamilySpec {
        FamilySpec { d, r: d + 1, case: FamilyCase::Simplex, partition: None }
    }

    pub fn twice_simplex(d: usize) -> Result<FamilySpec> {
        if d % 2 == 0 {
            return Err(Error::InvalidInput(format!("2S_d needs odd d, got {d}")));
        }
        Ok(FamilySpec { d, r: (d + 1) / 2, case: FamilyCase::TwiceSimplex, partition: None })
    }

    pub fn product_of_simplices(d: usize) -> Result<FamilySpec> {
        if d % 2 == 1 || d == 0 {
            return Err(Error::InvalidInput(format!("S_(d/2) x S_(d/2) needs positive even d, got {d}")));
        }
        Ok(FamilySpec { d, r: (d + 2) / 2, case: FamilyCase::ProductOfSimplices, partition: None })
    }

    /// `(a_1+1)S * ⋯ * (a_t+1)S * S * ⋯ * S` with `r` factors `S = S_{d+1−r}`.
    pub fn cayley(d: usize, r: usize, partition: Partition) -> Result<FamilySpec> {
        if r == 0 || r > d + 1 {
            return Err(Error::InvalidInput(format!("index {r} impossible in dimension {d}")));
        }
        if partition.total() as i64 != d as i64 + 2 - 2 * r as i64 || partition.len() > r {
            return Err(Error::InvalidInput(format!(
                "partition {partition} must have at most {r} parts summing to d+2-2r"
            )));
        }
        Ok(FamilySpec { d, r, case: FamilyCase::CayleyFamily, partition: Some(partition) })
    }

    pub fn cy_dim(&self) -> i64 {
        self.d as i64 + 1 - 2 * self.r as i64
    }

    /// Dilation factors of the Cayley factors, one per factor.
    pub fn dilations(&self) -> Vec<u64> {
        match self.case {
            FamilyCase::CayleyFamily => {
                let parts = self.partition.as_ref().map_or(&[][..], |p| p.parts());
                let mut b: Vec<u64> = parts.iter().map(|a| a + 1).collect();
                b.resize(self.r, 1);
                b
            }
            _ => Vec::new(),
        }
    }

    pub fn build(&self) -> LatticePolytope {
        match self.case {
            FamilyCase::Simplex => simplex(self.d),
            FamilyCase::TwiceSimplex => dilate(&simplex(self.d), 2),
            FamilyCase::ProductOfSimplices => product(&simplex(self.d / 2), &simplex(self.d / 2)),
            FamilyCase::CayleyFamily => cayley_of_simplices(self.d + 1 - self.r, &self.dilations()),
        }
    }

    pub fn label(&self) -> String {
        match self.case {
            FamilyCase::Simplex => format!("S_{}", self.d),
            FamilyCase::TwiceSimplex => format!("2S_{}", self.d),
            FamilyCase::ProductOfSimplices => format!("S_{0} x S_{0}", self.d / 2),
            FamilyCase::CayleyFamily => {
                let s = self.d + 1 - self.r;
                let f: Vec<String> = self
                    .dilations()
                    .iter()
                    .map(|&b| if b == 1 { format!("S_{s}") } else { format!("{b}S_{s}") })
                    .collect();
                f.join(" * ")
            }
        }
    }
}

/// Whether the large-index classification applies: `3r > d + 3`.
pub fn theorem_applies(d: usize, r: usize) -> bool {
    3 * r > d + 3 && r <= d + 1
}

/// The smooth Gorenstein polytopes of dimension `d` and index `r` when
/// `r > (d+3)/3`, in a fixed order.
pub fn theorem_family_specs(d: usize, r: usize) -> Result<Vec<FamilySpec>> {
    if !theorem_applies(d, r) {
        return Err(Error::OutOfRange(format!(
            "the large-index families cover r > (d+3)/3 and r <= d+1; (d={d}, r={r}) needs classify"
        )));
    }
    let mut out = Vec::new();
    if r == d + 1 {
        out.push(FamilySpec::simplex(d));
    }
    if d % 2 == 1 && d >= 5 && 2 * r == d + 1 {
        out.push(FamilySpec::twice_simplex(d)?);
    }
    if d % 2 == 0 && 2 * r == d + 2 {
        out.push(FamilySpec::product_of_simplices(d)?);
    }
    if 2 * r <= d + 1 {
        for p in partitions((d + 2 - 2 * r) as u64, r) {
            out.push(FamilySpec::cayley(d, r, p)?);
        }
    }
    Ok(out)
}

pub fn theorem_family(d: usize, r: usize) -> Result<Vec<(FamilySpec, LatticePolytope)>> {
    Ok(theorem_family_specs(d, r)?.into_iter().map(|s| {
        let p = s.build();
        (s, p)
    }).collect())
}

/// `conv(e_1, …, e_d, −e_1 − ⋯ − e_k, a_1e_1 + ⋯ + a_ke_k − e_{k+1} − ⋯ − e_d)`.
pub fn kleinschmidt_polytope(d: usize, k: usize, a: &[u64]) -> Result<LatticePolytope> {
    if k == 0 || k >= d || a.len() != k || a.iter().sum::<u64>() > (d - k) as u64 {
        return Err(Error::InvalidInput(format!(
            "need 1 <= k <= d-1 and k coefficients summing to at most d-k (d={d}, k={k}, a={a:?})"
        )));
    }
    let mut pts: Vec<IntVec> = (0..d).map(|i| unit(d, i)).collect();
    let v1: IntVec = (0..d).map(|i| if i < k { Int::new(-1) } else { Int::zero() }).collect();
    let v2: IntVec = (0..d).map(|i| if i < k { Int::from(a[i]) } else { Int::new(-1) }).collect();
    pts.push(v1);
    pts.push(v2);
    LatticePolytope::hull(&pts)
}

/// `S_{n+1} × S_{n+1} × S_{n+1}`.
pub fn triple_product(n: usize) -> LatticePolytope {
    let s = simplex(n + 1);
    product(&product(&s, &s), &s)
}

/// Degree data of the complete intersection attached to a family member:
/// `(s̃, degrees)` with `Σ degrees = s̃ + 1`.
pub fn ci_degrees(spec: &FamilySpec) -> Result<(usize, Vec<u64>)> {
    if spec.cy_dim() < 0 {
        return Err(Error::OutOfRange(format!("Calabi-Yau dimension {} is negative", spec.cy_dim())));
    }
    match spec.case {
        FamilyCase::TwiceSimplex => Ok((1, vec![2])),
        FamilyCase::CayleyFamily => {
            let b = spec.dilations();
            let zeros = b.iter().filter(|&&x| x == 1).count();
            let degrees: Vec<u64> = b.into_iter().filter(|&x| x > 1).collect();
            Ok((spec.d + 1 - spec.r - zeros, degrees))
        }
        _ => Err(Error::InvalidInput("degree data is defined for Cayley families and 2S_d".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::vec_from;

    fn pts(p: &LatticePolytope) -> Vec<IntVec> {
        p.vertices().to_vec()
    }

    #[test]
    fn basic_builders() {
        assert_eq!(pts(&simplex(2)), vec![vec_from(&[0, 0]), vec_from(&[0, 1]), vec_from(&[1, 0])]);
        let s1 = simplex(1);
        assert_eq!(pts(&minkowski_sum(&s1, &s1).unwrap()), pts(&dilate(&s1, 2)));
        let sq = product(&s1, &s1);
        assert_eq!(pts(&sq), pts(&LatticePolytope::hull_i64(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap()));
        assert_eq!(sq.product_factors().len(), 2);
        let seg = LatticePolytope::hull_i64(&[&[-1], &[1]]).unwrap();
        let cross = free_sum(&seg, &seg).unwrap();
        assert_eq!(cross.num_vertices(), 4);
        assert!(cross.is_reflexive().unwrap());
        assert!(free_sum(&s1.translate(&vec_from(&[1])), &s1).is_err());
    }

    #[test]
    fn direct_facets_match_hull() {
        for (s, b) in [(1usize, vec![1u64]), (2, vec![2, 1]), (3, vec![3, 1, 2]), (2, vec![1, 1, 1, 4])] {
            let direct = cayley_of_simplices(s, &b);
            let factors: Vec<LatticePolytope> = b.iter().map(|&k| dilate(&simplex(s), k)).collect();
            let hulled = cayley(&factors).unwrap();
            assert_eq!(direct.vertices(), hulled.vertices());
            assert_eq!(direct.facets(), hulled.facets());
        }
        let sq = product(&simplex(2), &simplex(1));
        let hulled = LatticePolytope::hull(sq.vertices()).unwrap();
        assert_eq!(sq.facets(), hulled.facets());
    }

    #[test]
    fn cayley_examples() {
        let s1 = simplex(1);
        let c = cayley(&[s1.clone(), s1.clone()]).unwrap();
        assert!(c.is_isomorphic(&product(&s1, &s1)));
        assert!(cayley(&[s1.clone()]).unwrap().is_isomorphic(&s1));
        // r copies of S_{d+1-r} form S_{d+1-r} x S_{r-1}, Gorenstein when d = 2r - 2
        for (d, r) in [(2usize, 2usize), (4, 3), (6, 4)] {
            let p = cayley_of_simplices(d + 1 - r, &vec![1; r]);
            assert_eq!(p.dim(), d);
            assert!(p.is_smooth());
            assert_eq!(p.gorenstein_index().unwrap().index, r);
        }
        assert!(cayley(&[s1, simplex(2)]).is_err());
    }

    fn brute_partitions(n: u64, max_parts: usize, cap: u64) -> usize {
        if n == 0 {
            return 1;
        }
        if max_parts == 0 {
            return 0;
        }
        (1..=cap.min(n)).map(|p| brute_partitions(n - p, max_parts - 1, p)).sum()
    }

    #[test]
    fn partition_lists() {
        let p: Vec<Vec<u64>> = partitions(4, 9).iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(p, vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(partitions(0, 3), vec![Partition::new(vec![]).unwrap()]);
        assert_eq!(partitions(6, 8).len(), 11);
        for n in 0..12 {
            for k in 1..8 {
                assert_eq!(partitions(n, k).len(), brute_partitions(n, k, n));
            }
        }
    }

    #[test]
    fn family_examples() {
        assert_eq!(theorem_family_specs(20, 8).unwrap().len(), 11);
        assert_eq!(theorem_family_specs(14, 6).unwrap().len(), 5);
        let f = theorem_family(4, 5).unwrap();
        assert_eq!(f.len(), 1);
        assert!(f[0].1.is_isomorphic(&simplex(4)));
        assert!(matches!(theorem_family_specs(6, 3), Err(Error::OutOfRange(_))));
        assert!(matches!(theorem_family_specs(4, 6), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn family_members_are_smooth_with_predicted_index() {
        for d in 1..=7 {
            for r in 1..=d + 1 {
                let Ok(fam) = theorem_family(d, r) else { continue };
                for (i, (spec, p)) in fam.iter().enumerate() {
                    assert_eq!(p.dim(), d);
                    assert!(p.is_smooth(), "{}", spec.label());
                    let g = p.gorenstein_index().unwrap();
                    assert_eq!(g.index, r, "{}", spec.label());
                    assert_eq!(g.cy_dim(d), spec.cy_dim());
                    for (_, q) in &fam[..i] {
                        assert!(!p.is_isomorphic(q));
                    }
                }
            }
        }
    }

    #[test]
    fn kleinschmidt_examples() {
        let p = kleinschmidt_polytope(2, 1, &[0]).unwrap();
        assert_eq!(pts(&p), pts(&LatticePolytope::hull_i64(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]).unwrap()));
        let p = kleinschmidt_polytope(2, 1, &[1]).unwrap();
        assert_eq!(pts(&p), pts(&LatticePolytope::hull_i64(&[&[1, 0], &[0, 1], &[-1, 0], &[1, -1]]).unwrap()));
        let p = kleinschmidt_polytope(3, 1, &[2]).unwrap();
        assert_eq!(p.num_vertices(), 5);
        assert!(p.is_reflexive().unwrap());
        assert!((0..p.num_facets()).all(|j| p.facet_vertices(j).len() == 3));
        assert!(p.facets().iter().all(|f| f.offset.is_one()));
        assert!(kleinschmidt_polytope(3, 1, &[3]).is_err());
        assert!(kleinschmidt_polytope(3, 3, &[0, 0, 0]).is_err());
    }

    #[test]
    fn triple_products() {
        let c = triple_product(0);
        assert_eq!(c.dim(), 3);
        assert_eq!(c.gorenstein_index().unwrap().index, 2);
        let p = triple_product(1);
        assert_eq!(p.dim(), 6);
        assert_eq!(p.gorenstein_index().unwrap().index, 3);
        assert_eq!(p.product_factors().len(), 3);
        let p = triple_product(3);
        assert_eq!(p.dim(), 12);
        let g = p.gorenstein_index().unwrap();
        assert_eq!(g.index, 5);
        // (rP)* has d + 3 vertices, one per facet of P
        assert_eq!(p.num_facets(), 15);
    }

    #[test]
    fn degree_data() {
        let spec = FamilySpec::cayley(5, 3, Partition::new(vec![1]).unwrap()).unwrap();
        assert_eq!(ci_degrees(&spec).unwrap(), (1, vec![2]));
        let quintic = FamilySpec::cayley(4, 1, Partition::new(vec![4]).unwrap()).unwrap();
        assert_eq!(ci_degrees(&quintic).unwrap(), (4, vec![5]));
        assert_eq!(ci_degrees(&FamilySpec::twice_simplex(7).unwrap()).unwrap(), (1, vec![2]));
        assert!(ci_degrees(&FamilySpec::simplex(3)).is_err());
        for d in 4..=20 {
            for r in 1..=d + 1 {
                let Ok(specs) = theorem_family_specs(d, r) else { continue };
                for s in specs.iter().filter(|s| s.case == FamilyCase::CayleyFamily && s.cy_dim() >= 0) {
                    let (st, deg) = ci_degrees(s).unwrap();
                    assert_eq!(deg.iter().sum::<u64>(), st as u64 + 1);
                    assert!(st as i64 <= 2 * s.cy_dim() + 1);
                }
            }
        }
    }
}
