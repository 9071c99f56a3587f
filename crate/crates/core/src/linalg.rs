//! Exact vectors, matrices, and linear solving over the rationals.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rat::{clear_denominators, lcm_denominators, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    /// Operand shapes do not line up (got, expected).
    DimensionMismatch { got: usize, expected: usize },
    /// Operation requires a square matrix.
    NotSquare { rows: usize, cols: usize },
    /// Operation requires a symmetric matrix.
    NotSymmetric,
}

impl fmt::Display for LinAlgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinAlgError::DimensionMismatch { got, expected } => {
                write!(f, "dimension mismatch: got {got}, expected {expected}")
            }
            LinAlgError::NotSquare { rows, cols } => {
                write!(f, "matrix is {rows}x{cols}, expected square")
            }
            LinAlgError::NotSymmetric => write!(f, "matrix is not symmetric"),
        }
    }
}

impl core::error::Error for LinAlgError {}

/// A vector with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QVector {
    coords: Vec<Rational>,
}

impl QVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        QVector { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        QVector {
            coords: vec![Rational::zero(); dim],
        }
    }

    /// Standard basis vector `e_i`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.coords[i] = Rational::one();
        v
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        QVector {
            coords: coords.iter().map(|&c| crate::rat::rat_int(c)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &QVector) -> Rational {
        assert_eq!(self.dim(), other.dim(), "dot of mismatched dimensions");
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn scale(&self, c: &Rational) -> QVector {
        QVector {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    /// Least common multiple of coordinate denominators.
    pub fn lcm_denominator(&self) -> BigInt {
        lcm_denominators(&self.coords)
    }
}

impl Index<usize> for QVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.coords[i]
    }
}

impl Add for &QVector {
    type Output = QVector;
    fn add(self, rhs: &QVector) -> QVector {
        assert_eq!(self.dim(), rhs.dim());
        QVector {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &QVector {
    type Output = QVector;
    fn sub(self, rhs: &QVector) -> QVector {
        assert_eq!(self.dim(), rhs.dim());
        QVector {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &QVector {
    type Output = QVector;
    fn neg(self) -> QVector {
        QVector {
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Outcome of solving `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    /// The unique solution.
    Unique(QVector),
    /// Infinitely many solutions; carries one particular solution
    /// (free variables set to zero).
    Degenerate(QVector),
    NoSolution,
}

/// A dense matrix with exact rational entries, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        QMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: &[QVector]) -> Self {
        let cols = rows.first().map_or(0, QVector::dim);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.dim(), cols, "ragged rows");
            data.extend(r.coords().iter().cloned());
        }
        QMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let vecs: Vec<QVector> = rows.iter().map(|r| QVector::from_ints(r)).collect();
        Self::from_rows(&vecs)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> QVector {
        QVector::new(self.row(i).to_vec())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &QVector) -> QVector {
        assert_eq!(v.dim(), self.cols, "matrix-vector dimension mismatch");
        QVector::new(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(v.coords())
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect(),
        )
    }

    /// Submatrix selecting the given rows and columns, in order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> QMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        QMatrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination on the
    /// denominator-cleared integer matrix.
    pub fn det_exact(&self) -> Result<Rational, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        // Clear denominators row by row; det scales by the product.
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let (ints, den) = clear_denominators(self.row(i));
            scale *= den;
            m.push(ints);
        }
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(Rational::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    // Bareiss: this division is exact.
                    m[i][j] = num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let mut det = m[n - 1][n - 1].clone();
        if sign < 0 {
            det = -det;
        }
        Ok(Rational::new(det, scale))
    }

    /// Solve `A x = b` exactly.
    pub fn solve_linear(&self, b: &QVector) -> Result<LinearSolution, LinAlgError> {
        if b.dim() != self.rows {
            return Err(LinAlgError::DimensionMismatch {
                got: b.dim(),
                expected: self.rows,
            });
        }
        // Gauss-Jordan on the augmented matrix.
        let n = self.rows;
        let m = self.cols;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.push(b[i].clone());
                row
            })
            .collect();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut r = 0;
        for c in 0..m {
            let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].clone();
            for x in a[r].iter_mut() {
                *x = &*x / &inv;
            }
            for i in 0..n {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..=m {
                        let sub = &f * &a[r][j];
                        a[i][j] = &a[i][j] - &sub;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
            if r == n {
                break;
            }
        }
        // Inconsistent row: 0 = nonzero.
        for row in a.iter().skip(r) {
            if !row[m].is_zero() {
                return Ok(LinearSolution::NoSolution);
            }
        }
        let mut x = vec![Rational::zero(); m];
        for (rank_row, &c) in pivot_cols.iter().enumerate() {
            x[c] = a[rank_row][m].clone();
        }
        let x = QVector::new(x);
        if pivot_cols.len() == m {
            Ok(LinearSolution::Unique(x))
        } else {
            Ok(LinearSolution::Degenerate(x))
        }
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<Rational>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].clone();
            for x in a[r].iter_mut() {
                *x = &*x / &inv;
            }
            for i in r + 1..self.rows {
                if !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..self.cols {
                        let sub = &f * &a[r][j];
                        a[i][j] = &a[i][j] - &sub;
                    }
                }
            }
            r += 1;
            if r == self.rows {
                break;
            }
        }
        r
    }

    /// Basis of the right kernel `{x : A x = 0}`.
    pub fn null_space(&self) -> Vec<QVector> {
        let n = self.rows;
        let m = self.cols;
        let mut a: Vec<Vec<Rational>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut r = 0;
        for c in 0..m {
            let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].clone();
            for x in a[r].iter_mut() {
                *x = &*x / &inv;
            }
            for i in 0..n {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..m {
                        let sub = &f * &a[r][j];
                        a[i][j] = &a[i][j] - &sub;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
            if r == n {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in 0..m {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![Rational::zero(); m];
            v[free] = Rational::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -a[row][free].clone();
            }
            basis.push(QVector::new(v));
        }
        basis
    }

    /// Exact inverse, or `None` if singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&i| !a[i][c].is_zero())?;
            a.swap(c, p);
            let inv = a[c][c].clone();
            for x in a[c].iter_mut() {
                *x = &*x / &inv;
            }
            for i in 0..n {
                if i != c && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..2 * n {
                        let sub = &f * &a[c][j];
                        a[i][j] = &a[i][j] - &sub;
                    }
                }
            }
        }
        let mut data = Vec::with_capacity(n * n);
        for row in &a {
            data.extend(row[n..].iter().cloned());
        }
        Some(QMatrix {
            rows: n,
            cols: n,
            data,
        })
    }

    /// Inertia `(positive, negative, zero)` of a symmetric matrix, computed
    /// by congruence diagonalization.
    pub fn signature(&self) -> Result<(usize, usize, usize), LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if !self.is_symmetric() {
            return Err(LinAlgError::NotSymmetric);
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
        for k in 0..n {
            if a[k][k].is_zero() {
                if let Some(l) = (k + 1..n).find(|&l| !a[l][l].is_zero()) {
                    // Symmetric swap of rows/columns k and l.
                    a.swap(k, l);
                    for row in a.iter_mut() {
                        row.swap(k, l);
                    }
                } else if let Some(l) = (k + 1..n).find(|&l| !a[k][l].is_zero()) {
                    // All later diagonal entries vanish; fold row/column l
                    // into k so the pivot 2*a[k][l] appears.
                    for j in 0..n {
                        let add = a[l][j].clone();
                        a[k][j] = &a[k][j] + &add;
                    }
                    for row in a.iter_mut() {
                        let add = row[l].clone();
                        row[k] = &row[k] + &add;
                    }
                } else {
                    zero += 1;
                    continue;
                }
            }
            let pivot = a[k][k].clone();
            if pivot.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &pivot;
                for j in 0..n {
                    let sub = &f * &a[k][j];
                    a[i][j] = &a[i][j] - &sub;
                }
                for row in a.iter_mut() {
                    let sub = &f * &row[k];
                    row[i] = &row[i] - &sub;
                }
            }
        }
        Ok((pos, neg, zero))
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Affine dimension of a point set: -1 for empty, 0 for one point, etc.
pub fn affine_dim(points: &[QVector]) -> isize {
    if points.is_empty() {
        return -1;
    }
    let base = &points[0];
    let diffs: Vec<QVector> = points[1..].iter().map(|p| p - base).collect();
    if diffs.is_empty() {
        return 0;
    }
    QMatrix::from_rows(&diffs).rank() as isize
}

/// Hyperplane through a point set whose affine hull has codimension one:
/// returns `(normal, offset)` with integer primitive normal such that
/// `normal . p = offset` for every input point. `None` if the affine hull
/// is not a hyperplane.
pub fn hyperplane_through(points: &[QVector]) -> Option<(Vec<BigInt>, BigInt)> {
    let dim = points.first()?.dim();
    let base = &points[0];
    let diffs: Vec<QVector> = points[1..].iter().map(|p| p - base).collect();
    let kernel = if diffs.is_empty() {
        if dim != 1 {
            return None;
        }
        vec![QVector::basis(1, 0)]
    } else {
        QMatrix::from_rows(&diffs).null_space()
    };
    if kernel.len() != 1 {
        return None;
    }
    let normal = crate::rat::primitive_direction(kernel[0].coords());
    let normal_q = QVector::new(normal.iter().map(|x| Rational::from_integer(x.clone())).collect());
    let offset = normal_q.dot(base);
    if !offset.is_integer() {
        // Points with rational coordinates: scale the hyperplane so both the
        // normal and the offset are integers.
        let den = offset.denom().clone();
        let scaled: Vec<BigInt> = normal.iter().map(|x| x * &den).collect();
        return Some((scaled, offset.numer().clone()));
    }
    Some((normal, offset.to_integer()))
}

/// Render a rational as `num/den`, always including the denominator.
pub fn rational_string(r: &Rational) -> String {
    use alloc::format;
    format!("{}/{}", r.numer(), r.denom())
}

/// Canonical key for the affine hull of a point set: the reduced row echelon
/// form of the equality system `n . x = n . base` over all hull normals, each
/// row cleared to primitive integers. Two point sets get equal keys exactly
/// when they span the same affine subspace.
pub fn affine_hull_key(points: &[QVector]) -> Vec<Vec<BigInt>> {
    assert!(!points.is_empty());
    let base = &points[0];
    let dim = base.dim();
    let diffs: Vec<QVector> = points[1..].iter().map(|p| p - base).collect();
    let normals = if diffs.is_empty() {
        (0..dim).map(|i| QVector::basis(dim, i)).collect()
    } else {
        QMatrix::from_rows(&diffs).null_space()
    };
    let mut rows: Vec<Vec<Rational>> = normals
        .into_iter()
        .map(|n| {
            let offset = n.dot(base);
            let mut row = n.into_coords();
            row.push(offset);
            row
        })
        .collect();
    // Reduced row echelon form: unique for the row space.
    let width = dim + 1;
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..width {
                    let sub = &f * &rows[r][j];
                    rows[i][j] = &rows[i][j] - &sub;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows.iter()
        .map(|row| {
            let (mut ints, _) = crate::rat::clear_denominators(row);
            crate::rat::reduce_by_gcd(&mut ints);
            ints
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    /// Independent determinant oracle: recursive cofactor expansion.
    fn det_cofactor(m: &QMatrix) -> Rational {
        let n = m.rows();
        assert!(m.is_square());
        if n == 0 {
            return Rational::one();
        }
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = det_cofactor(&m.submatrix(&rows, &cols));
            let term = m.get(0, j) * &minor;
            if j % 2 == 0 {
                acc = &acc + &term;
            } else {
                acc = &acc - &term;
            }
        }
        acc
    }

    #[test]
    fn det_of_identity_is_one() {
        assert_eq!(QMatrix::identity(3).det_exact().unwrap(), rat_int(1));
    }

    #[test]
    fn det_two_by_two() {
        let m = QMatrix::from_int_rows(&[&[2, 3], &[1, 0]]);
        assert_eq!(m.det_exact().unwrap(), rat_int(-3));
        assert_eq!(det_cofactor(&m), rat_int(-3));
    }

    #[test]
    fn det_of_singular_matrix_is_zero() {
        let m = QMatrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.det_exact().unwrap(), rat_int(0));
    }

    #[test]
    fn det_with_rational_entries() {
        let m = QMatrix::new(2, 2, vec![rat(1, 2), rat(1, 3), rat(1, 5), rat(1, 7)]);
        assert_eq!(m.det_exact().unwrap(), det_cofactor(&m));
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let b = QVector::new(vec![rat(1, 2), rat(1, 3)]);
        assert_eq!(
            QMatrix::identity(2).solve_linear(&b).unwrap(),
            LinearSolution::Unique(b)
        );
    }

    #[test]
    fn solve_small_system() {
        let m = QMatrix::from_int_rows(&[&[2, 3], &[1, 0]]);
        let b = QVector::from_ints(&[1, 0]);
        assert_eq!(
            m.solve_linear(&b).unwrap(),
            LinearSolution::Unique(QVector::new(vec![rat_int(0), rat(1, 3)]))
        );
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = QMatrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        let b = QVector::from_ints(&[1, 3]);
        assert_eq!(m.solve_linear(&b).unwrap(), LinearSolution::NoSolution);
    }

    #[test]
    fn solve_detects_degeneracy_with_particular_solution() {
        let m = QMatrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        let b = QVector::from_ints(&[1, 2]);
        match m.solve_linear(&b).unwrap() {
            LinearSolution::Degenerate(x) => {
                assert_eq!(m.mul_vec(&x), b);
            }
            other => panic!("expected degenerate solution, got {other:?}"),
        }
    }

    #[test]
    fn rank_and_null_space() {
        let m = QMatrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.null_space();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).is_zero());
        assert!(!ns[0].is_zero());
    }

    #[test]
    fn inverse_round_trips() {
        let m = QMatrix::from_int_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        let mut prod = QMatrix::zeros(2, 2);
        for i in 0..2 {
            let col = inv.mul_vec(&m.row_vector(i));
            for j in 0..2 {
                prod.set(i, j, col[j].clone());
            }
        }
        assert_eq!(prod, QMatrix::identity(2));
        assert!(QMatrix::from_int_rows(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn signature_of_diagonal_and_hyperbolic_forms() {
        let d = QMatrix::from_int_rows(&[&[2, 0], &[0, -1]]);
        assert_eq!(d.signature().unwrap(), (1, 1, 0));
        let h = QMatrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(h.signature().unwrap(), (1, 1, 0));
        let ruled = QMatrix::from_int_rows(&[&[0, 1], &[1, -8]]);
        assert_eq!(ruled.signature().unwrap(), (1, 1, 0));
        let z = QMatrix::from_int_rows(&[&[0, 0], &[0, 3]]);
        assert_eq!(z.signature().unwrap(), (1, 0, 1));
        let neg = QMatrix::from_int_rows(&[&[-2, 1], &[1, -2]]);
        assert_eq!(neg.signature().unwrap(), (0, 2, 0));
        let not_neg = QMatrix::from_int_rows(&[&[-1, 2], &[2, -1]]);
        assert_eq!(not_neg.signature().unwrap(), (1, 1, 0));
    }

    #[test]
    fn affine_dim_of_point_sets() {
        let pts = [
            QVector::from_ints(&[0, 0]),
            QVector::from_ints(&[1, 0]),
            QVector::from_ints(&[0, 1]),
        ];
        assert_eq!(affine_dim(&pts), 2);
        assert_eq!(affine_dim(&pts[..2]), 1);
        assert_eq!(affine_dim(&pts[..1]), 0);
        assert_eq!(affine_dim(&[]), -1);
    }

    #[test]
    fn hyperplane_through_two_points_in_plane() {
        let pts = [QVector::from_ints(&[1, 0]), QVector::from_ints(&[0, 1])];
        let (n, c) = hyperplane_through(&pts).unwrap();
        // x + y = 1 up to sign normalization.
        assert_eq!(n, vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(c, BigInt::from(1));
        // A full-dimensional set has no hyperplane.
        let tri = [
            QVector::from_ints(&[0, 0]),
            QVector::from_ints(&[1, 0]),
            QVector::from_ints(&[0, 1]),
        ];
        assert!(hyperplane_through(&tri).is_none());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn bareiss_matches_cofactor_expansion(
                n in 1usize..=4,
                ints in proptest::collection::vec(-3i64..=3, 16)
            ) {
                let m = QMatrix::new(n, n, ints[..n * n].iter().map(|&x| rat_int(x)).collect());
                prop_assert_eq!(m.det_exact().unwrap(), det_cofactor(&m));
            }

            #[test]
            fn solving_reproduces_known_solutions(
                ints in proptest::collection::vec(-3i64..=3, 9),
                xs in proptest::collection::vec(-3i64..=3, 3)
            ) {
                let m = QMatrix::new(3, 3, ints.into_iter().map(rat_int).collect());
                let x = QVector::from_ints(&xs);
                let b = m.mul_vec(&x);
                match m.solve_linear(&b).unwrap() {
                    LinearSolution::Unique(sol) => {
                        prop_assert_eq!(&sol, &x);
                        // Cramer: solution denominators divide the determinant
                        // of the (integer) matrix.
                        let det = m.det_exact().unwrap();
                        prop_assert!(!det.numer().is_zero());
                        for c in sol.coords() {
                            prop_assert!((det.numer() % c.denom()).is_zero());
                        }
                    }
                    LinearSolution::Degenerate(sol) => {
                        prop_assert_eq!(m.mul_vec(&sol), b);
                        prop_assert_eq!(m.det_exact().unwrap(), Rational::zero());
                    }
                    LinearSolution::NoSolution => prop_assert!(false, "b is in the image"),
                }
            }

            #[test]
            fn signature_counts_add_to_rank(ints in proptest::collection::vec(-3i64..=3, 9)) {
                let mut m = QMatrix::new(3, 3, ints.into_iter().map(rat_int).collect());
                // Symmetrize.
                for i in 0..3 {
                    for j in 0..i {
                        m.set(i, j, m.get(j, i).clone());
                    }
                }
                let (p, n, z) = m.signature().unwrap();
                prop_assert_eq!(p + n + z, 3);
                prop_assert_eq!(p + n, m.rank());
            }
        }
    }
}
