use super::*;
use crate::construct::{dilate, product, simplex};
use crate::intlin::vec_from;

fn segment() -> LatticePolytope {
    LatticePolytope::hull_i64(&[&[-1], &[1]]).unwrap()
}

fn ints(xs: &[i64]) -> Vec<Int> {
    xs.iter().map(|&x| Int::new(x)).collect()
}

#[test]
fn polynomial_basics() {
    assert_eq!(UniPoly::t_minus_one_pow(2), UniPoly::from_i64(&[1, -2, 1]));
    assert_eq!(UniPoly::t_minus_one_pow(0), UniPoly::one());
    let a = UniPoly::from_i64(&[1, 1]);
    assert_eq!(a.mul(&a), UniPoly::from_i64(&[1, 2, 1]));
    let mut z = a.clone();
    z.add_scaled(&a, &Int::new(-1));
    assert!(z.is_zero());
}

#[test]
fn g_of_boolean_and_polygons() {
    let tri = simplex(2).face_lattice();
    for dual in [false, true] {
        assert!(g_polynomial(&tri, tri.bottom(), tri.top(), dual).unwrap().is_one());
    }
    let cube = product(&product(&simplex(1), &simplex(1)), &simplex(1));
    let fl = cube.face_lattice();
    // a vertex to the cube is Boolean of rank 3
    let v = fl.faces().iter().position(|f| f.dim == 0).unwrap();
    assert!(g_polynomial(&fl, v, fl.top(), false).unwrap().is_one());
    for m in [4usize, 5, 6] {
        let pts: Vec<IntVec> = match m {
            4 => vec![vec_from(&[0, 0]), vec_from(&[1, 0]), vec_from(&[0, 1]), vec_from(&[1, 1])],
            5 => vec![vec_from(&[0, 0]), vec_from(&[2, 0]), vec_from(&[0, 2]), vec_from(&[2, 1]), vec_from(&[1, 2])],
            _ => vec![
                vec_from(&[1, 0]),
                vec_from(&[0, 1]),
                vec_from(&[-1, 1]),
                vec_from(&[-1, 0]),
                vec_from(&[0, -1]),
                vec_from(&[1, -1]),
            ],
        };
        let p = LatticePolytope::hull(&pts).unwrap();
        assert_eq!(p.num_vertices(), m);
        let fl = p.face_lattice();
        let want = UniPoly::from_i64(&[1, m as i64 - 3]);
        assert_eq!(g_polynomial(&fl, fl.bottom(), fl.top(), true).unwrap(), want);
        assert_eq!(g_polynomial(&fl, fl.bottom(), fl.top(), false).unwrap(), want);
    }
    let fl = segment().face_lattice();
    assert!(g_polynomial(&fl, 1, 1, true).unwrap().is_one());
}

#[test]
fn s_tilde_examples() {
    let seg = segment();
    let all = BitSet::full(2);
    assert_eq!(s_tilde(&seg, &all).unwrap(), UniPoly::from_i64(&[0, 1]));
    assert!(s_tilde(&seg, &BitSet::from_indices(2, [0])).unwrap().is_zero());
    assert!(s_tilde(&seg, &BitSet::new(2)).unwrap().is_one());
    for d in 1..=3 {
        let s = simplex(d);
        assert!(s_tilde(&s, &BitSet::full(d + 1)).unwrap().is_zero());
    }
}

#[test]
fn segment_and_simplices() {
    let pair = dual_pair_of(&segment()).unwrap();
    assert_eq!(stringy_E(&pair).unwrap(), BivariateLaurent::constant(Int::new(2)));
    assert!(mirror_check(&pair).unwrap());
    let h = hodge_table(&stringy_E(&pair).unwrap(), 0).unwrap();
    assert_eq!(h.entries, vec![ints(&[2])]);
    let pair = dual_pair_of(&dilate(&simplex(3), 2)).unwrap();
    assert_eq!(stringy_E(&pair).unwrap(), BivariateLaurent::constant(Int::new(2)));
    for d in 1..=4 {
        let pair = dual_pair_of(&simplex(d)).unwrap();
        assert!(stringy_E(&pair).unwrap().is_zero());
        assert!(pair.p_dual.is_isomorphic(&simplex(d)));
    }
}

#[test]
fn classical_duals() {
    let cross = LatticePolytope::hull_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]).unwrap();
    let square = LatticePolytope::hull_i64(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]).unwrap();
    let pair = dual_pair_of(&cross).unwrap();
    assert!(pair.p_dual.is_isomorphic(&square));
    for (i, f) in pair.lattice.faces().iter().enumerate() {
        assert_eq!(f.dim + pair.dual_lattice.face(pair.face_match[i]).dim, 1);
    }
    let back = dual_pair_of(&pair.p_dual).unwrap();
    assert!(back.p_dual.is_isomorphic(&cross));
}

#[test]
fn quintic() {
    let p = dilate(&simplex(4), 5).translate(&vec_from(&[-1, -1, -1, -1]));
    let pair = dual_pair_of(&p).unwrap();
    let s = stringy_pair(&pair).unwrap();
    let h = hodge_table(&s.e, 3).unwrap();
    assert_eq!(h.pair(), Some((Int::new(1), Int::new(101))));
    let hd = hodge_table(&s.e_dual, 3).unwrap();
    assert_eq!(hd.pair(), Some((Int::new(101), Int::new(1))));
    assert_eq!(s.e, s.e.swap_variables());
    assert_eq!(s.e, s.e_dual.mirror(3));
}

#[test]
fn swapped_pair_is_consistent() {
    let p = product(&simplex(2), &simplex(2));
    let pair = dual_pair_of(&p).unwrap();
    let sw = pair.swapped();
    let a = stringy_pair(&pair).unwrap();
    let b = stringy_pair(&sw).unwrap();
    assert!(a.e.is_zero());
    assert_eq!(a.e, b.e_dual);
    assert_eq!(a.e_dual, b.e);
}

#[test]
fn reductions() {
    assert!(reduction_check(2, &[2]).unwrap());
    assert!(reduction_check(3, &[3]).unwrap());
    assert!(reduction_check(4, &[2, 2]).unwrap());
}

#[test]
fn condition_violation_is_reported() {
    let p = simplex(2);
    let bad = GorensteinData { index: 2, interior_point: vec_from(&[0, 0]) };
    assert!(matches!(dual_gorenstein(&p, &bad), Err(Error::GorensteinConditionViolated { .. })));
}
