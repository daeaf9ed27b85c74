use proptest::prelude::*;

use super::*;
use crate::intlin::vec_from;

fn poly(points: &[&[i64]]) -> LatticePolytope {
    LatticePolytope::hull_i64(points).unwrap()
}

fn simplex(d: usize) -> LatticePolytope {
    let mut pts = vec![vec![Int::zero(); d]];
    for i in 0..d {
        let mut e = vec![Int::zero(); d];
        e[i] = Int::one();
        pts.push(e);
    }
    LatticePolytope::hull(&pts).unwrap()
}

fn cross2() -> LatticePolytope {
    poly(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]])
}

fn square() -> LatticePolytope {
    poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
}

#[test]
fn hull_square() {
    let p = square();
    assert_eq!(p.num_vertices(), 4);
    assert_eq!(p.num_facets(), 4);
    for f in p.facets() {
        let mut all = f.normal.clone();
        all.push(f.offset.clone());
        assert!(intlin::content(&all).is_one());
    }
}

#[test]
fn hull_drops_interior_points() {
    let p = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1], &[2, 2]]);
    let want: Vec<IntVec> = vec![vec_from(&[0, 0]), vec_from(&[0, 1]), vec_from(&[1, 0]), vec_from(&[2, 2])];
    assert_eq!(p.vertices(), &want[..]);
    assert_eq!(p.num_facets(), 4);
}

#[test]
fn hull_rejects_collinear() {
    let err = LatticePolytope::hull_i64(&[&[0, 0], &[1, 0], &[2, 0]]).unwrap_err();
    assert!(matches!(err, Error::LowerDimensional { span: 1, ambient: 2 }));
}

#[test]
fn facets_span_hyperplanes() {
    let p = poly(&[&[0, 0, 0], &[3, 0, 1], &[0, 2, 0], &[1, 1, 4], &[-2, 1, 1], &[1, -1, -1]]);
    for j in 0..p.num_facets() {
        let pts = p.face_points(p.facet_vertices(j));
        assert_eq!(hull::affine_rank(&pts), p.dim() - 1);
    }
}

#[test]
fn span_restriction() {
    let (p, emb) = LatticePolytope::restrict_to_span(&[vec_from(&[0, 0]), vec_from(&[2, 0])]).unwrap();
    assert_eq!(p.dim(), 1);
    assert_eq!(p.num_lattice_points().unwrap(), 3);
    assert_eq!(emb.span_dim, 1);

    let pts = [vec_from(&[0, 0]), vec_from(&[2, 4])];
    let (p, emb) = LatticePolytope::restrict_to_span(&pts).unwrap();
    assert_eq!(p.dim(), 1);
    assert_eq!(p.num_lattice_points().unwrap(), 3);
    let xs: Vec<IntVec> = p.lattice_points().unwrap().iter().map(|y| emb.embed(y)).collect();
    assert!(xs.contains(&vec_from(&[1, 2])));
    for q in &pts {
        assert_eq!(&emb.embed(&emb.project(q)), q);
    }

    let (p, _) = LatticePolytope::restrict_to_span(&[vec_from(&[3, -1])]).unwrap();
    assert_eq!(p.dim(), 0);
    assert_eq!(p.num_lattice_points().unwrap(), 1);
}

#[test]
fn reflexive_examples() {
    assert!(cross2().is_reflexive().unwrap());
    let dual = cross2().dual_polytope().unwrap().unwrap();
    let want = poly(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]);
    assert_eq!(dual.vertices(), want.vertices());
    assert!(!simplex(2).is_reflexive().unwrap());
    let p = simplex(2).dilate(&Int::new(3)).translate(&vec_from(&[-1, -1]));
    assert!(p.is_reflexive().unwrap());
}

#[test]
fn dual_involution() {
    let p = simplex(3).dilate(&Int::new(4)).translate(&vec_from(&[-1, -1, -1]));
    let dd = p.dual_polytope().unwrap().unwrap().dual_polytope().unwrap().unwrap();
    assert_eq!(dd.vertices(), p.vertices());
    assert!(matches!(simplex(2).dual(), Err(Error::NoInteriorPoint)));
}

#[test]
fn smoothness() {
    for d in 1..=4 {
        assert!(simplex(d).is_smooth());
    }
    assert!(simplex(2).dilate(&Int::new(2)).is_smooth());
    assert!(!poly(&[&[0, 0], &[2, 0], &[0, 1]]).is_smooth());
    assert!(!poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]).is_smooth());
    assert!(cross2().dual_polytope().unwrap().unwrap().is_smooth());
}

#[test]
fn gorenstein_indices() {
    for d in 1..=5 {
        let g = simplex(d).gorenstein_index().unwrap();
        assert_eq!(g.index, d + 1);
        assert_eq!(g.cy_dim(d), -(d as i64) - 1);
    }
    let g = square().gorenstein_index().unwrap();
    assert_eq!(g.index, 2);
    assert_eq!(g.interior_point, vec_from(&[1, 1]));
    assert!(simplex(2).dilate(&Int::new(2)).gorenstein_index().is_none());
}

fn birkhoff3() -> LatticePolytope {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let pts: Vec<IntVec> = perms
        .iter()
        .map(|s| {
            let mut m = vec![Int::zero(); 9];
            for (i, &j) in s.iter().enumerate() {
                m[3 * i + j] = Int::one();
            }
            m
        })
        .collect();
    LatticePolytope::restrict_to_span(&pts).unwrap().0
}

#[test]
fn birkhoff_index() {
    let b = birkhoff3();
    assert_eq!(b.dim(), 4);
    assert_eq!(b.gorenstein_index().unwrap().index, 3);
}

#[test]
fn divisibility() {
    let q = simplex(3).dilate(&Int::new(4)).translate(&vec_from(&[-1, -1, -1]));
    assert_eq!(q.max_divisibility(), Int::new(4));
    // e1 − e2 is a vertex difference of the cross-polytope; its dual square is even
    assert_eq!(cross2().max_divisibility(), Int::new(1));
    assert_eq!(cross2().dual_polytope().unwrap().unwrap().max_divisibility(), Int::new(2));
    let q = simplex(2).dilate(&Int::new(3)).translate(&vec_from(&[-1, -1]));
    assert_eq!(q.max_divisibility(), Int::new(3));
    let m = q.max_divisibility();
    for r in 1..=3i64 {
        let r = Int::new(r);
        assert_eq!(q.divide(&q.vertices()[0], &r).is_ok(), r.divides(&m));
    }
}

#[test]
fn face_counts() {
    assert_eq!(simplex(2).face_lattice().len(), 8);
    assert_eq!(square().face_lattice().len(), 10);
    let cube = poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]);
    let fl = cube.face_lattice();
    assert_eq!(fl.len(), 28);
    assert_eq!(fl.f_vector(), vec![8, 12, 6]);
}

#[test]
fn face_lattice_is_eulerian() {
    let p = birkhoff3();
    let fl = p.face_lattice();
    let f = fl.f_vector();
    let euler: i64 = f.iter().enumerate().map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) }).sum();
    assert_eq!(euler, 1 - (-1i64).pow(p.dim() as u32));
    for a in 0..fl.len() {
        for &b in fl.covers_up(a) {
            for &c in fl.covers_up(b) {
                assert_eq!(fl.mobius(a, c), 1);
            }
        }
    }
    assert_eq!(fl.mobius(fl.bottom(), fl.top()), (-1i64).pow(p.dim() as u32 + 1));
}

#[test]
fn lattice_point_counts() {
    assert_eq!(square().lattice_points().unwrap().len(), 4);
    assert_eq!(square().interior_lattice_points().unwrap().len(), 0);
    let p = simplex(2).dilate(&Int::new(3));
    assert_eq!(p.lattice_points().unwrap().len(), 10);
    assert_eq!(p.interior_lattice_points().unwrap(), vec![vec_from(&[1, 1])]);
    assert_eq!(cross2().lattice_points().unwrap().len(), 5);
    assert_eq!(cross2().interior_lattice_points().unwrap().len(), 1);
}

#[test]
fn lattice_points_match_box_filter() {
    let p = poly(&[&[0, 0, 0], &[3, 0, 1], &[0, 2, 0], &[1, 1, 4], &[-2, 1, 1], &[1, -1, -1]]);
    let mut want = Vec::new();
    for x in -3..=4 {
        for y in -2..=3 {
            for z in -2..=5 {
                let v = vec_from(&[x, y, z]);
                if p.contains(&v) {
                    want.push(v);
                }
            }
        }
    }
    assert_eq!(p.lattice_points().unwrap(), want);
}

#[test]
fn isomorphism_examples() {
    let a = simplex(2);
    assert!(a.is_isomorphic(&poly(&[&[0, 0], &[-1, 0], &[0, -1]])));
    assert!(a.is_isomorphic(&poly(&[&[0, 0], &[1, 0], &[3, 1]])));
    // edge vectors e1, e1 + 3e2 span an index-3 sublattice
    assert!(!a.is_isomorphic(&poly(&[&[0, 0], &[1, 0], &[1, 3]])));
    assert!(!a.is_isomorphic(&a.dilate(&Int::new(2))));
    assert_ne!(a.canonical_form().digest(), a.dilate(&Int::new(2)).canonical_form().digest());
    assert!(!square().is_isomorphic(&poly(&[&[0, 0], &[1, 0], &[0, 1], &[2, 2]])));
}

#[test]
fn document_round_trip() {
    let p = poly(&[&[0, 0, 0], &[3, 0, 1], &[0, 2, 0], &[1, 1, 4], &[-2, 1, 1]]);
    let text = io::to_json(&p);
    let q = io::read_polytope(&text).unwrap();
    assert_eq!(q.canonical_form().digest(), p.canonical_form().digest());
    assert_eq!(io::to_json(&q), text);
    assert!(io::read_polytope("{\"lattice_dim\": 2, \"vertices\": [[0,0],[1]]}").is_err());
}

fn unimodular(seed: &[i64], d: usize) -> IntMat {
    // product of elementary matrices driven by the seed
    let mut m = IntMat::identity(d);
    for (k, &s) in seed.iter().enumerate() {
        let i = k % d;
        let j = (k / d + 1 + i) % d;
        if i != j {
            m.add_row_multiple(i, j, &Int::new(s));
        }
        if s % 3 == 0 {
            m.swap_rows(i, (i + 1) % d);
        }
    }
    m
}

fn fixtures() -> Vec<LatticePolytope> {
    vec![
        simplex(3),
        square(),
        cross2(),
        birkhoff3(),
        poly(&[&[0, 0, 0], &[3, 0, 1], &[0, 2, 0], &[1, 1, 4], &[-2, 1, 1], &[1, -1, -1]]),
        poly(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
        poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn canonical_form_invariance(seed in prop::collection::vec(-3i64..=3, 12), t in prop::collection::vec(-5i64..=5, 4)) {
        for p in fixtures() {
            let d = p.dim();
            let map = AffineUnimodularMap::new(unimodular(&seed, d), vec_from(&t[..d])).unwrap();
            let q = p.map(&map);
            prop_assert_eq!(q.canonical_form(), p.canonical_form());
            prop_assert_eq!(q.canonical_form().digest(), p.canonical_form().digest());
            // the image rebuilt from scratch agrees with the mapped facets
            let rebuilt = LatticePolytope::hull(q.vertices()).unwrap();
            prop_assert_eq!(rebuilt.facets(), q.facets());
        }
    }

    #[test]
    fn hull_vertices_are_extreme(pts in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 5..12)) {
        let pts: Vec<IntVec> = pts.iter().map(|p| vec_from(p)).collect();
        if let Ok(p) = LatticePolytope::hull(&pts) {
            for q in &pts {
                prop_assert!(p.contains(q));
            }
            for (i, v) in p.vertices().iter().enumerate() {
                prop_assert!(p.vertex_facets(i).len() >= p.dim());
                let others: Vec<IntVec> = p.vertices().iter().filter(|w| *w != v).cloned().collect();
                if let Ok(h) = LatticePolytope::hull(&others) {
                    prop_assert!(!h.contains(v));
                }
            }
        }
    }
}
