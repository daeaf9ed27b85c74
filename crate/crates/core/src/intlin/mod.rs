//! Exact integer linear algebra: matrices over [`Int`], Hermite and Smith
//! normal forms, saturated kernels and affine unimodular maps.
//!
//! Conventions: matrices are row-major. The Hermite normal form is the
//! *column* form (`m · u = h`, column operations only), lower staircase with
//! positive pivots; canonical forms of polytopes depend on this bit-exactly.

mod hnf;
mod snf;

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::int::Int;

pub use hnf::{hnf, hnf_rank};
pub use snf::snf;

pub type IntVec = Vec<Int>;

pub fn vec_from(xs: &[i64]) -> IntVec {
    xs.iter().map(|&x| Int::new(x)).collect()
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Int::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc += &(x * y);
    }
    acc
}

pub fn add(a: &[Int], b: &[Int]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Int], b: &[Int]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Int], k: &Int) -> IntVec {
    a.iter().map(|x| x * k).collect()
}

pub fn is_zero_vec(a: &[Int]) -> bool {
    a.iter().all(Int::is_zero)
}

/// gcd of all entries (0 for the zero vector).
pub fn content(v: &[Int]) -> Int {
    let mut g = Int::zero();
    for x in v {
        if g.is_one() {
            break;
        }
        g = g.gcd(x);
    }
    g
}

/// Splits a nonzero vector as `g · p` with `p` primitive and `g > 0`.
pub fn make_primitive(v: &[Int]) -> Result<(IntVec, Int), crate::Error> {
    let g = content(v);
    if g.is_zero() {
        return Err(crate::Error::ZeroVector);
    }
    Ok((v.iter().map(|x| x.div_exact(&g)).collect(), g))
}

/// Row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> IntMat {
        IntMat { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMat {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: &[IntVec]) -> IntMat {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMat { rows: rows.len(), cols, data: rows.iter().flatten().cloned().collect() }
    }

    /// Builds a matrix with explicit shape, so that `0 × n` is representable.
    pub fn from_rows_with_cols(rows: &[IntVec], cols: usize) -> IntMat {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMat { rows: rows.len(), cols, data: rows.iter().flatten().cloned().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> IntMat {
        let rows: Vec<IntVec> = rows.iter().map(|r| vec_from(r)).collect();
        IntMat::from_rows(&rows)
    }

    pub fn from_cols(cols: &[IntVec]) -> IntMat {
        IntMat::from_rows(cols).transpose()
    }

    pub fn diag(entries: &[Int]) -> IntMat {
        let mut m = IntMat::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> IntVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn rows_vec(&self) -> Vec<IntVec> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn cols_vec(&self) -> Vec<IntVec> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn data(&self) -> &[Int] {
        &self.data
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> IntVec {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Int::is_zero)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            self[(i, j)] = -&self[(i, j)];
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -&self[(i, j)];
        }
    }

    /// col[dst] += k · col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self[(i, src)];
            if !s.is_zero() {
                let v = s * k;
                self[(i, dst)] += &v;
            }
        }
    }

    /// row[dst] += k · row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self[(src, j)];
            if !s.is_zero() {
                let v = s * k;
                self[(dst, j)] += &v;
            }
        }
    }

    /// Applies the 2×2 transform [[a, b], [c, d]] to columns (i, j):
    /// col_i ← a·col_i + b·col_j, col_j ← c·col_i + d·col_j.
    pub fn combine_cols(&mut self, i: usize, j: usize, a: &Int, b: &Int, c: &Int, d: &Int) {
        for r in 0..self.rows {
            let x = self[(r, i)].clone();
            let y = self[(r, j)].clone();
            self[(r, i)] = &(a * &x) + &(b * &y);
            self[(r, j)] = &(c * &x) + &(d * &y);
        }
    }

    pub fn combine_rows(&mut self, i: usize, j: usize, a: &Int, b: &Int, c: &Int, d: &Int) {
        for col in 0..self.cols {
            let x = self[(i, col)].clone();
            let y = self[(j, col)].clone();
            self[(i, col)] = &(a * &x) + &(b * &y);
            self[(j, col)] = &(c * &x) + &(d * &y);
        }
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = 1i64;
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&m[(i, j)] * &m[(k, k)]) - &(&m[(i, k)] * &m[(k, j)]);
                    m[(i, j)] = v.div_exact(&prev);
                }
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    pub fn rank(&self) -> usize {
        hnf_rank(self)
    }

    /// Adjugate matrix, so that `self · adj = det · I`.
    pub fn adjugate(&self) -> IntMat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut adj = IntMat::zeros(n, n);
        if n == 1 {
            adj[(0, 0)] = Int::one();
            return adj;
        }
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j);
                let c = minor.det();
                adj[(j, i)] = if (i + j) % 2 == 0 { c } else { -c };
            }
        }
        adj
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> IntMat {
        let mut out = IntMat::zeros(self.rows - 1, self.cols - 1);
        let mut ri = 0;
        for i in 0..self.rows {
            if i == skip_r {
                continue;
            }
            let mut ci = 0;
            for j in 0..self.cols {
                if j == skip_c {
                    continue;
                }
                out[(ri, ci)] = self[(i, j)].clone();
                ci += 1;
            }
            ri += 1;
        }
        out
    }

    /// Inverse of a unimodular matrix, or `None` if `|det| ≠ 1`.
    pub fn unimodular_inverse(&self) -> Option<IntMat> {
        if self.rows != self.cols {
            return None;
        }
        // Gauss–Jordan over the integers via column HNF: self · u = h, and
        // h is the identity exactly when self is unimodular.
        let (h, u) = hnf(self);
        if h == IntMat::identity(self.rows) {
            Some(u)
        } else {
            None
        }
    }

    /// Solves `self · x = b` over the rationals; returns `(numerators, denominator)`
    /// with positive denominator, or `None` if `self` is singular.
    pub fn solve_rational(&self, b: &[Int]) -> Option<(IntVec, Int)> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        let x = self.adjugate().mul_vec(b);
        if det.is_negative() {
            Some((x.iter().map(|v| -v).collect(), -det))
        } else {
            Some((x, det))
        }
    }

    pub fn submatrix_cols(&self, cols: &[usize]) -> IntMat {
        let mut out = IntMat::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                out[(i, k)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn submatrix_rows(&self, rows: &[usize]) -> IntMat {
        let r: Vec<IntVec> = rows.iter().map(|&i| self.row(i).to_vec()).collect();
        IntMat::from_rows_with_cols(&r, self.cols)
    }
}

impl Index<(usize, usize)> for IntMat {
    type Output = Int;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Lattice basis of `{x ∈ Z^n : m·x = 0}`, saturated.
pub fn kernel_basis(m: &IntMat) -> Vec<IntVec> {
    let (h, u) = hnf(m);
    (0..h.ncols()).filter(|&j| (0..h.nrows()).all(|i| h[(i, j)].is_zero())).map(|j| u.col(j)).collect()
}

/// True iff the `d` vectors of length `d` form a basis of `Z^d`.
pub fn is_lattice_basis(vs: &[IntVec]) -> bool {
    let d = vs.len();
    if vs.iter().any(|v| v.len() != d) {
        return false;
    }
    let det = IntMat::from_rows_with_cols(vs, d).det();
    det == 1 || det == -1
}

/// `x ↦ linear · x + translation` with `|det linear| = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineUnimodularMap {
    linear: IntMat,
    translation: IntVec,
}

impl AffineUnimodularMap {
    pub fn new(linear: IntMat, translation: IntVec) -> Result<Self, crate::Error> {
        if linear.nrows() != linear.ncols() || translation.len() != linear.nrows() {
            return Err(crate::Error::DimensionMismatch);
        }
        let det = linear.det();
        if !(det == 1 || det == -1) {
            return Err(crate::Error::NotUnimodular);
        }
        Ok(AffineUnimodularMap { linear, translation })
    }

    pub fn identity(d: usize) -> Self {
        AffineUnimodularMap { linear: IntMat::identity(d), translation: vec![Int::zero(); d] }
    }

    pub fn translation_by(t: IntVec) -> Self {
        AffineUnimodularMap { linear: IntMat::identity(t.len()), translation: t }
    }

    pub fn linear(&self) -> &IntMat {
        &self.linear
    }

    pub fn translation(&self) -> &[Int] {
        &self.translation
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn apply(&self, x: &[Int]) -> IntVec {
        add(&self.linear.mul_vec(x), &self.translation)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &AffineUnimodularMap) -> AffineUnimodularMap {
        AffineUnimodularMap {
            linear: self.linear.mul(&other.linear),
            translation: self.apply(&other.translation),
        }
    }

    pub fn inverse(&self) -> AffineUnimodularMap {
        let inv = self.linear.unimodular_inverse().expect("linear part is unimodular by construction");
        let t = inv.mul_vec(&self.translation).into_iter().map(|x| -x).collect();
        AffineUnimodularMap { linear: inv, translation: t }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_single_row() {
        let k = kernel_basis(&IntMat::from_i64(&[&[1, 1]]));
        assert_eq!(k.len(), 1);
        assert!(k[0] == vec_from(&[1, -1]) || k[0] == vec_from(&[-1, 1]));
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(kernel_basis(&IntMat::identity(2)).is_empty());
    }

    #[test]
    fn kernel_of_zero_matrix_is_full_lattice() {
        let k = kernel_basis(&IntMat::zeros(1, 2));
        assert_eq!(k.len(), 2);
        assert!(is_lattice_basis(&k));
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x + 4y = 0 has kernel generated by (2, -1), not (4, -2)
        let k = kernel_basis(&IntMat::from_i64(&[&[2, 4]]));
        assert_eq!(k.len(), 1);
        assert_eq!(content(&k[0]), Int::one());
    }

    #[test]
    fn lattice_basis_checks() {
        assert!(is_lattice_basis(&[vec_from(&[1, 0]), vec_from(&[0, 1])]));
        assert!(!is_lattice_basis(&[vec_from(&[1, 0]), vec_from(&[0, 2])]));
        assert!(is_lattice_basis(&[vec_from(&[2, 1]), vec_from(&[1, 1])]));
        assert!(!is_lattice_basis(&[vec_from(&[1, 0])]));
    }

    #[test]
    fn primitive_parts() {
        assert_eq!(make_primitive(&vec_from(&[2, 4])).unwrap(), (vec_from(&[1, 2]), Int::new(2)));
        assert_eq!(make_primitive(&vec_from(&[0, -3])).unwrap(), (vec_from(&[0, -1]), Int::new(3)));
        assert_eq!(make_primitive(&vec_from(&[1, 0, 0])).unwrap(), (vec_from(&[1, 0, 0]), Int::one()));
        assert!(make_primitive(&vec_from(&[0, 0])).is_err());
    }

    #[test]
    fn determinant_and_adjugate() {
        let m = IntMat::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det(), Int::new(18));
        let adj = m.adjugate();
        assert_eq!(m.mul(&adj), IntMat::diag(&vec![Int::new(18); 3]));
        assert_eq!(IntMat::from_i64(&[&[0, 1], &[1, 0]]).det(), Int::new(-1));
    }

    #[test]
    fn affine_map_inverse_and_compose() {
        let a = AffineUnimodularMap::new(IntMat::from_i64(&[&[2, 1], &[1, 1]]), vec_from(&[3, -1])).unwrap();
        let x = vec_from(&[5, 7]);
        assert_eq!(a.inverse().apply(&a.apply(&x)), x);
        assert_eq!(a.compose(&a.inverse()), AffineUnimodularMap::identity(2));
        assert!(AffineUnimodularMap::new(IntMat::from_i64(&[&[2, 0], &[0, 1]]), vec_from(&[0, 0])).is_err());
    }
}
