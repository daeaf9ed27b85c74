use super::*;
use crate::construct::{dilate, product, simplex};
use crate::ehrhart::gorenstein_via_symmetry;
use crate::intlin::vec_from;

fn cross2() -> LatticePolytope {
    LatticePolytope::hull_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]).unwrap()
}

fn counts(run: &ClassificationRun) -> Vec<(usize, usize)> {
    run.counts_by_index().into_iter().collect()
}

#[test]
fn dimension_two() {
    let run = enumerate(2, 1, None).unwrap();
    assert_eq!(counts(&run), vec![(1, 5), (2, 1), (3, 1)]);
    assert!(!run.box_warning);
    let table = fano_index_table(&run).unwrap();
    assert_eq!(table.into_iter().collect::<Vec<_>>(), vec![(1, 3), (2, 1), (3, 1)]);
    for c in &run.results {
        assert!(c.polytope.is_smooth());
        assert_eq!(gorenstein_via_symmetry(&c.polytope).unwrap(), Some(c.index));
    }
}

#[test]
fn dimension_three() {
    let run = enumerate(3, 1, None).unwrap();
    assert_eq!(counts(&run), vec![(1, 18), (2, 3), (4, 1)]);
    let table = fano_index_table(&run).unwrap();
    assert_eq!(table.into_iter().collect::<Vec<_>>(), vec![(1, 15), (2, 2), (4, 1)]);
}

#[test]
fn pruned_runs_are_filtered_full_runs() {
    let full = enumerate(3, 1, None).unwrap();
    let pruned = enumerate(3, 2, None).unwrap();
    let a: Vec<&NormalForm> = full.results.iter().filter(|c| c.index >= 2).map(|c| &c.normal_form).collect();
    let b: Vec<&NormalForm> = pruned.results.iter().map(|c| &c.normal_form).collect();
    assert_eq!(a, b);
}

#[test]
fn box_stability() {
    let a = enumerate_in_box(3, 1, 4).unwrap();
    let b = enumerate_in_box(3, 1, 5).unwrap();
    assert_eq!(counts(&a), counts(&b));
}

#[test]
fn square_from_cross_polytope() {
    let p = to_gorenstein(&cross2(), 2).unwrap();
    assert!(p.is_isomorphic(&product(&simplex(1), &simplex(1))));
    assert!(matches!(to_gorenstein(&cross2(), 3), Err(Error::Divisibility(..))));
    let p1 = to_gorenstein(&cross2(), 1).unwrap();
    assert!(p1.is_isomorphic(&cross2().dual_polytope().unwrap().unwrap()));
}

#[test]
fn simplex_from_its_reflexive_dilate() {
    for d in 2..=4 {
        let w = vec_from(&vec![-1; d]);
        let big = dilate(&simplex(d), d as u64 + 1).translate(&w);
        let q = big.dual_polytope().unwrap().unwrap();
        assert!(to_gorenstein(&q, d + 1).unwrap().is_isomorphic(&simplex(d)));
    }
}

#[test]
fn delta_values() {
    // the cross-polytope is (2·[0,1]²)*, so δ ≥ 1; every off-facet pairing is 1
    assert_eq!(delta(&cross2()).unwrap(), 1);
    let hexagon = LatticePolytope::hull_i64(&[&[1, 0], &[0, 1], &[-1, 1], &[-1, 0], &[0, -1], &[1, -1]]).unwrap();
    assert_eq!(delta(&hexagon).unwrap(), 0);
    for c in &enumerate(3, 1, None).unwrap().results {
        let dl = delta(&c.dual_smooth).unwrap();
        assert!(dl >= c.index as i64 - 1);
        if dl > 0 {
            assert!(c.dual_smooth.num_vertices() as i64 * dl <= 3 * dl + 3);
        }
    }
}

#[test]
fn large_index_agrees_with_families() {
    for (d, r) in [(4, 3), (4, 5), (5, 3), (5, 6)] {
        let v = cross_validate(d, r).unwrap();
        assert!(v.agrees(), "{v:?}");
    }
}
