//! Reference data embedded in the binary: isomorphism-class counts by
//! dimension and index, Fano index histograms, and stringy Hodge pairs of
//! dual polytopes in Calabi–Yau dimension three.
//!
//! Every record carries an anchor string used in mismatch messages.

use std::collections::BTreeMap;

/// `(d, r, count)`; cells absent here were not computed and are never used.
const CELLS: &[(usize, usize, u64)] = &[
    (20, 13, 0),
    (20, 12, 0),
    (20, 11, 1),
    (20, 10, 2),
    (20, 9, 5),
    (20, 8, 11),
    (19, 13, 0),
    (19, 12, 0),
    (19, 11, 0),
    (19, 10, 2),
    (19, 9, 3),
    (19, 8, 7),
    (18, 13, 0),
    (18, 12, 0),
    (18, 11, 0),
    (18, 10, 1),
    (18, 9, 2),
    (18, 8, 5),
    (17, 13, 0),
    (17, 12, 0),
    (17, 11, 0),
    (17, 10, 0),
    (17, 9, 2),
    (17, 8, 3),
    (17, 7, 7),
    (16, 13, 0),
    (16, 12, 0),
    (16, 11, 0),
    (16, 10, 0),
    (16, 9, 1),
    (16, 8, 2),
    (16, 7, 5),
    (15, 13, 0),
    (15, 12, 0),
    (15, 11, 0),
    (15, 10, 0),
    (15, 9, 0),
    (15, 8, 2),
    (15, 7, 3),
    (14, 13, 0),
    (14, 12, 0),
    (14, 11, 0),
    (14, 10, 0),
    (14, 9, 0),
    (14, 8, 1),
    (14, 7, 2),
    (14, 6, 5),
    (13, 13, 0),
    (13, 12, 0),
    (13, 11, 0),
    (13, 10, 0),
    (13, 9, 0),
    (13, 8, 0),
    (13, 7, 2),
    (13, 6, 3),
    (12, 13, 1),
    (12, 12, 0),
    (12, 11, 0),
    (12, 10, 0),
    (12, 9, 0),
    (12, 8, 0),
    (12, 7, 1),
    (12, 6, 2),
    (12, 5, 6),
    (11, 12, 1),
    (11, 11, 0),
    (11, 10, 0),
    (11, 9, 0),
    (11, 8, 0),
    (11, 7, 0),
    (11, 6, 2),
    (11, 5, 3),
    (11, 4, 14),
    (10, 11, 1),
    (10, 10, 0),
    (10, 9, 0),
    (10, 8, 0),
    (10, 7, 0),
    (10, 6, 1),
    (10, 5, 2),
    (10, 4, 6),
    (10, 3, 64),
    (9, 10, 1),
    (9, 9, 0),
    (9, 8, 0),
    (9, 7, 0),
    (9, 6, 0),
    (9, 5, 2),
    (9, 4, 4),
    (9, 3, 23),
    (9, 2, 896),
    (9, 1, 8229721),
    (8, 9, 1),
    (8, 8, 0),
    (8, 7, 0),
    (8, 6, 0),
    (8, 5, 1),
    (8, 4, 2),
    (8, 3, 13),
    (8, 2, 258),
    (8, 1, 749892),
    (7, 8, 1),
    (7, 7, 0),
    (7, 6, 0),
    (7, 5, 0),
    (7, 4, 2),
    (7, 3, 4),
    (7, 2, 85),
    (7, 1, 72256),
    (6, 7, 1),
    (6, 6, 0),
    (6, 5, 0),
    (6, 4, 1),
    (6, 3, 3),
    (6, 2, 28),
    (6, 1, 7622),
    (5, 6, 1),
    (5, 5, 0),
    (5, 4, 0),
    (5, 3, 2),
    (5, 2, 12),
    (5, 1, 866),
    (4, 5, 1),
    (4, 4, 0),
    (4, 3, 1),
    (4, 2, 4),
    (4, 1, 124),
    (3, 4, 1),
    (3, 3, 0),
    (3, 2, 3),
    (3, 1, 18),
    (2, 3, 1),
    (2, 2, 1),
    (2, 1, 5),
    (1, 2, 1),
    (1, 1, 1),
    (0, 1, 1),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountCell {
    pub d: usize,
    pub r: usize,
    pub count: u64,
}

impl CountCell {
    pub fn anchor(&self) -> String {
        format!("smooth Gorenstein count table, d={} r={}", self.d, self.r)
    }
}

pub fn count_cells() -> impl Iterator<Item = CountCell> {
    CELLS.iter().map(|&(d, r, count)| CountCell { d, r, count })
}

/// Known count of smooth Gorenstein polytopes of dimension `d` and index `r`.
pub fn count(d: usize, r: usize) -> Option<u64> {
    CELLS.iter().find(|c| c.0 == d && c.1 == r).map(|c| c.2)
}

/// All known cells of dimension `d`, keyed by index.
pub fn count_row(d: usize) -> BTreeMap<usize, u64> {
    CELLS.iter().filter(|c| c.0 == d).map(|c| (c.1, c.2)).collect()
}

/// `(d, i_X, count)`: smooth toric Fano manifolds of dimension `d` whose
/// anticanonical class has maximal divisibility `i_X`.
const FANO: &[(usize, u64, u64)] = &[
    (2, 2, 1),
    (2, 1, 3),
    (3, 2, 2),
    (4, 3, 1),
    (3, 1, 15),
    (4, 2, 4),
    (5, 3, 1),
    (6, 4, 1),
    (4, 1, 118),
    (5, 2, 11),
    (6, 3, 3),
    (7, 4, 1),
    (8, 5, 1),
    (5, 1, 853),
    (6, 2, 27),
    (7, 3, 4),
    (8, 4, 2),
    (9, 5, 1),
    (10, 6, 1),
    (6, 1, 7590),
    (7, 2, 83),
    (8, 3, 12),
    (9, 4, 4),
    (10, 5, 2),
    (11, 6, 1),
    (12, 7, 1),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FanoCell {
    pub d: usize,
    pub index: u64,
    pub count: u64,
}

impl FanoCell {
    pub fn anchor(&self) -> String {
        format!("Fano index histogram, d={} i={}", self.d, self.index)
    }
}

pub fn fano_cells() -> impl Iterator<Item = FanoCell> {
    FANO.iter().map(|&(d, index, count)| FanoCell { d, index, count })
}

/// Known histogram entries for dimension `d`, with projective space
/// (index `d + 1`) added.
pub fn fano_row(d: usize) -> BTreeMap<u64, u64> {
    let mut row: BTreeMap<u64, u64> = FANO.iter().filter(|c| c.0 == d).map(|c| (c.1, c.2)).collect();
    row.insert(d as u64 + 1, 1);
    row
}

const HODGE_4_1: &[(i64, i64)] = &[
    (99, 3), (67, 4), (87, 3), (91, 4), (67, 5), (81, 4), (79, 4), (95, 3), (93, 3), (69, 4),
    (82, 4), (73, 4), (91, 3), (73, 4), (70, 4), (61, 4), (76, 3), (83, 3), (71, 3), (95, 2),
    (57, 5), (66, 4), (68, 4), (57, 5), (46, 6), (75, 3), (61, 4), (84, 4), (65, 5), (76, 4),
    (72, 4), (91, 3), (72, 4), (59, 5), (58, 5), (61, 4), (50, 5), (60, 4), (66, 4), (68, 4),
    (73, 3), (72, 3), (79, 3), (64, 4), (75, 3), (86, 2), (75, 5), (58, 6), (69, 5), (80, 4),
    (78, 4), (61, 5), (70, 5), (56, 6), (70, 5), (56, 6), (66, 5), (62, 5), (76, 4), (60, 5),
    (52, 6), (64, 5), (60, 5), (65, 5), (54, 6), (50, 6), (63, 5), (57, 5), (71, 4), (68, 4),
    (72, 4), (64, 4), (81, 3), (55, 6), (49, 7), (44, 8), (60, 5), (54, 6), (61, 5), (65, 4),
    (74, 4), (68, 4), (56, 5), (64, 4), (72, 3), (65, 4), (69, 4), (68, 4), (68, 4), (70, 4),
    (59, 5), (63, 4), (78, 3), (76, 4), (61, 5), (72, 4), (61, 5), (54, 6), (59, 5), (66, 4),
    (67, 4), (66, 4), (75, 3), (83, 3), (83, 3), (79, 3), (81, 3), (71, 3), (68, 4), (64, 4),
    (75, 3), (75, 3), (71, 3), (86, 2), (102, 2), (77, 3), (86, 2), (68, 4), (75, 3), (90, 2),
    (86, 2), (83, 2), (101, 1), (122, 2),
];

const HODGE_6_2: &[(i64, i64)] = &[
    (101, 1), (86, 2), (78, 2), (77, 2), (83, 2), (77, 2), (63, 3), (59, 2), (85, 1), (76, 2),
    (70, 2), (58, 2), (59, 3), (62, 2), (73, 1), (60, 3), (56, 3), (58, 3), (50, 4), (51, 3),
    (62, 2), (62, 2), (45, 5), (55, 3), (66, 2), (89, 1), (73, 1), (69, 1),
];

const HODGE_8_3: &[(i64, i64)] = &[
    (101, 1), (89, 1), (73, 1), (68, 2), (58, 2), (62, 2), (66, 2), (55, 2), (63, 2), (69, 1),
    (48, 3), (84, 0),
];

const HODGE_10_4: &[(i64, i64)] = &[
    (101, 1), (89, 1), (73, 1), (65, 1), (56, 2),
];

const HODGE_12_5: &[(i64, i64)] = &[
    (101, 1), (89, 1), (73, 1), (65, 1), (52, 2),
];

/// Stringy Hodge pairs `(h^{1,1}, h^{1,2})` of the duals of the smooth
/// Gorenstein polytopes of one `(d, r)` with `d + 1 − 2r = 3`, as a multiset.
#[derive(Clone, Copy, Debug)]
pub struct HodgeFixture {
    pub d: usize,
    pub r: usize,
    pub pairs: &'static [(i64, i64)],
    /// Whether `pairs` has one entry per polytope. The larger lists only
    /// record distinct pairs.
    pub complete: bool,
}

impl HodgeFixture {
    pub fn anchor(&self) -> String {
        format!("dual stringy Hodge pairs, d={} r={}", self.d, self.r)
    }

    pub fn multiset(&self) -> BTreeMap<(i64, i64), usize> {
        let mut m = BTreeMap::new();
        for &p in self.pairs {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }
}

pub fn hodge_fixtures() -> [HodgeFixture; 5] {
    [
        HodgeFixture { d: 4, r: 1, pairs: HODGE_4_1, complete: true },
        HodgeFixture { d: 6, r: 2, pairs: HODGE_6_2, complete: true },
        HodgeFixture { d: 8, r: 3, pairs: HODGE_8_3, complete: false },
        HodgeFixture { d: 10, r: 4, pairs: HODGE_10_4, complete: false },
        HodgeFixture { d: 12, r: 5, pairs: HODGE_12_5, complete: false },
    ]
}

pub fn hodge_fixture(d: usize, r: usize) -> Option<HodgeFixture> {
    hodge_fixtures().into_iter().find(|h| h.d == d && h.r == r)
}
