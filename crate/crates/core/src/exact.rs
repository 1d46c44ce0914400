//! Exact rational scalars, sparse matrices, and cochain complexes.
//!
//! All linear algebra in this crate happens over the rationals with
//! arbitrary-precision integers, so every rank, kernel dimension, and Betti
//! number is exact. Matrices are stored sparsely as maps from positions to
//! nonzero entries; elimination is plain Gauss-Jordan with exact pivots,
//! which is fast enough at the scales the verification drivers use.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational scalar. The underlying rational type keeps the canonical
/// form: reduced fraction, positive denominator.
pub type Scalar = BigRational;

/// The scalar `n`.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// The scalar `n/d`. Panics when `d = 0`.
pub fn frac(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `n!` as a scalar.
pub fn factorial(n: usize) -> Scalar {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    BigRational::from_integer(acc)
}

/// `x^e` for a nonzero base and any integer exponent.
pub fn scalar_pow(x: &Scalar, e: i32) -> Scalar {
    x.pow(e)
}

/// Renders a scalar as `p` or `p/q`.
pub fn scalar_to_string(x: &Scalar) -> String {
    x.to_string()
}

/// Parses `p` or `p/q`.
pub fn scalar_from_str(s: &str) -> Result<Scalar, ExactError> {
    BigRational::from_str(s).map_err(|_| ExactError::BadScalar(s.to_string()))
}

/// Errors from matrix or complex construction and deserialization.
#[derive(Debug, thiserror::Error)]
pub enum ExactError {
    #[error("cannot parse scalar from {0:?}")]
    BadScalar(String),
    #[error("entry ({0}, {1}) lies outside a {2}x{3} matrix")]
    OutOfBounds(usize, usize, usize, usize),
    #[error("complex has {dims} dimensions, {labels} label lists, {diffs} differentials")]
    PieceCount {
        dims: usize,
        labels: usize,
        diffs: usize,
    },
    #[error("degree {0} carries {1} labels for dimension {2}")]
    LabelCount(i64, usize, usize),
    #[error("differential out of degree {degree} is {got_rows}x{got_cols}, expected {want_rows}x{want_cols}")]
    DifferentialShape {
        degree: i64,
        got_rows: usize,
        got_cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("composite of the differentials out of degrees {0} and {1} is nonzero")]
    NotAComplex(i64, i64),
}

/// Sparse matrix over [`Scalar`], acting on column vectors.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl Matrix {
    /// Zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Matrix from dense rows, which must all have the same length.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zero(rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Matrix from dense columns of length `rows`.
    pub fn from_cols(rows: usize, cols: Vec<Vec<Scalar>>) -> Self {
        let mut m = Matrix::zero(rows, cols.len());
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged columns");
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Matrix from dense integer rows; mostly a test convenience.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| int(n)).collect())
                .collect(),
        )
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// True when every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry at `(r, c)`, zero when absent.
    pub fn get(&self, r: usize, c: usize) -> Scalar {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Sets the entry at `(r, c)`; explicit zeros are dropped.
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    /// Adds `v` into the entry at `(r, c)`.
    pub fn add_to(&mut self, r: usize, c: usize, v: &Scalar) {
        let sum = self.get(r, c) + v;
        self.set(r, c, sum);
    }

    /// Iterates the stored `(row, col, value)` triplets in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    /// Column `j` as a dense vector.
    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// The transpose.
    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for (r, c, v) in self.iter() {
            t.set(c, r, v.clone());
        }
        t
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut rhs_rows: Vec<Vec<(usize, &Scalar)>> = vec![Vec::new(); rhs.rows];
        for (r, c, v) in rhs.iter() {
            rhs_rows[r].push((c, v));
        }
        let mut out = Matrix::zero(self.rows, rhs.cols);
        for (i, k, v) in self.iter() {
            for &(j, w) in &rhs_rows[k] {
                out.add_to(i, j, &(v * w));
            }
        }
        out
    }

    /// Entrywise sum.
    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch in sum"
        );
        let mut out = self.clone();
        for (r, c, v) in rhs.iter() {
            out.add_to(r, c, v);
        }
        out
    }

    /// Every entry multiplied by `c`.
    pub fn scale(&self, c: &Scalar) -> Matrix {
        let mut out = Matrix::zero(self.rows, self.cols);
        for (r, j, v) in self.iter() {
            out.set(r, j, v * c);
        }
        out
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hconcat(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "row mismatch in concatenation");
        let mut out = Matrix::zero(self.rows, self.cols + rhs.cols);
        for (r, c, v) in self.iter() {
            out.set(r, c, v.clone());
        }
        for (r, c, v) in rhs.iter() {
            out.set(r, self.cols + c, v.clone());
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut a: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let pivot = a[r][c].clone();
            for v in a[r].iter_mut().skip(c) {
                *v /= &pivot;
            }
            let lead = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (v, u) in row.iter_mut().zip(&lead).skip(c) {
                        *v -= u * &f;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let mut out = Matrix::zero(self.rows, self.cols);
        for (i, row) in a.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        (out, pivots)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel as matrix columns; the column count is
    /// `cols − rank`.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut out = Matrix::zero(self.cols, free.len());
        for (idx, &f) in free.iter().enumerate() {
            out.set(f, idx, Scalar::one());
            for (i, &p) in pivots.iter().enumerate() {
                out.set(p, idx, -r.get(i, f));
            }
        }
        out
    }

    /// Solves `self * X = rhs` exactly, returning `None` when any column of
    /// `rhs` lies outside the column span. Free variables are set to zero.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "row mismatch in solve");
        let (red, pivots) = self.hconcat(rhs).rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zero(self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, red.get(i, self.cols + j));
            }
        }
        Some(x)
    }

    /// True when the columns of `self` and `other` span the same subspace.
    pub fn same_column_span(&self, other: &Matrix) -> bool {
        if self.rows != other.rows {
            return false;
        }
        let ra = self.rank();
        ra == other.rank() && self.hconcat(other).rank() == ra
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, String)>,
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let repr = MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .iter()
                .map(|(r, c, v)| (r, c, scalar_to_string(v)))
                .collect(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(d)?;
        let mut m = Matrix::zero(repr.rows, repr.cols);
        for (r, c, s) in repr.entries {
            if r >= repr.rows || c >= repr.cols {
                return Err(D::Error::custom(ExactError::OutOfBounds(
                    r, c, repr.rows, repr.cols,
                )));
            }
            m.set(r, c, scalar_from_str(&s).map_err(D::Error::custom)?);
        }
        Ok(m)
    }
}

/// A finite cochain complex of rational vector spaces with labeled bases.
///
/// Degrees run over the contiguous range starting at `min_degree`; the
/// differential out of degree `l` is a `dim(l+1) × dim(l)` matrix acting on
/// column vectors. Construction verifies shapes, label counts, and
/// `d∘d = 0`, all exactly.
#[derive(Clone, PartialEq)]
pub struct CochainComplex {
    min_degree: i64,
    dims: Vec<usize>,
    labels: Vec<Vec<String>>,
    differentials: Vec<Matrix>,
}

impl CochainComplex {
    /// Builds and validates a complex from its per-degree pieces.
    ///
    /// `differentials[i]` maps degree `min_degree + i` to the next degree, so
    /// its length must be one less than `dims` (a single-degree complex has
    /// none).
    pub fn new(
        min_degree: i64,
        dims: Vec<usize>,
        labels: Vec<Vec<String>>,
        differentials: Vec<Matrix>,
    ) -> Result<Self, ExactError> {
        if labels.len() != dims.len() || differentials.len() + 1 != dims.len().max(1) {
            return Err(ExactError::PieceCount {
                dims: dims.len(),
                labels: labels.len(),
                diffs: differentials.len(),
            });
        }
        for (i, lab) in labels.iter().enumerate() {
            if lab.len() != dims[i] {
                return Err(ExactError::LabelCount(
                    min_degree + i as i64,
                    lab.len(),
                    dims[i],
                ));
            }
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.rows() != dims[i + 1] || d.cols() != dims[i] {
                return Err(ExactError::DifferentialShape {
                    degree: min_degree + i as i64,
                    got_rows: d.rows(),
                    got_cols: d.cols(),
                    want_rows: dims[i + 1],
                    want_cols: dims[i],
                });
            }
        }
        for i in 0..differentials.len().saturating_sub(1) {
            if !differentials[i + 1].mul(&differentials[i]).is_zero() {
                return Err(ExactError::NotAComplex(
                    min_degree + i as i64,
                    min_degree + i as i64 + 1,
                ));
            }
        }
        Ok(CochainComplex {
            min_degree,
            dims,
            labels,
            differentials,
        })
    }

    /// Lowest degree carrying a (possibly zero) space.
    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    /// Highest degree carrying a space.
    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.dims.len() as i64 - 1
    }

    /// The degree range of the complex.
    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.min_degree..self.min_degree + self.dims.len() as i64
    }

    /// Dimension in a degree, zero outside the stored range.
    pub fn dim(&self, degree: i64) -> usize {
        self.index(degree).map_or(0, |i| self.dims[i])
    }

    /// Basis labels in a degree, empty outside the stored range.
    pub fn labels(&self, degree: i64) -> &[String] {
        self.index(degree).map_or(&[], |i| &self.labels[i])
    }

    /// The differential out of a degree as a `dim(l+1) × dim(l)` matrix,
    /// zero-shaped outside the stored range.
    pub fn differential(&self, degree: i64) -> Matrix {
        match self.index(degree) {
            Some(i) if i < self.differentials.len() => self.differentials[i].clone(),
            _ => Matrix::zero(self.dim(degree + 1), self.dim(degree)),
        }
    }

    fn index(&self, degree: i64) -> Option<usize> {
        if degree < self.min_degree {
            return None;
        }
        let i = (degree - self.min_degree) as usize;
        (i < self.dims.len()).then_some(i)
    }

    /// Kernel, incoming image, and cohomology dimensions in every degree.
    pub fn betti(&self) -> BettiTable {
        let rows: Vec<BettiRow> = self
            .degrees()
            .map(|l| {
                let dim = self.dim(l);
                let dim_kernel = dim - self.differential(l).rank();
                let dim_image_incoming = self.differential(l - 1).rank();
                BettiRow {
                    degree: l,
                    dim,
                    dim_kernel,
                    dim_image_incoming,
                    betti: dim_kernel - dim_image_incoming,
                }
            })
            .collect();
        let table = BettiTable { rows };
        debug_assert_eq!(
            table.euler_characteristic(),
            table
                .rows
                .iter()
                .map(|r| (1 - (r.degree.rem_euclid(2)) * 2) * r.betti as i64)
                .sum::<i64>()
        );
        table
    }
}

impl fmt::Debug for CochainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CochainComplex {{ degrees {}..={}, dims {:?} }}",
            self.min_degree,
            self.max_degree(),
            self.dims
        )
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    min_degree: i64,
    dims: Vec<usize>,
    labels: Vec<Vec<String>>,
    differentials: Vec<Matrix>,
}

impl Serialize for CochainComplex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let repr = ComplexRepr {
            min_degree: self.min_degree,
            dims: self.dims.clone(),
            labels: self.labels.clone(),
            differentials: self.differentials.clone(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CochainComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ComplexRepr::deserialize(d)?;
        CochainComplex::new(repr.min_degree, repr.dims, repr.labels, repr.differentials)
            .map_err(D::Error::custom)
    }
}

/// One degree of a [`BettiTable`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiRow {
    /// Cohomological degree.
    pub degree: i64,
    /// Dimension of the cochain space.
    pub dim: usize,
    /// Dimension of the kernel of the outgoing differential.
    pub dim_kernel: usize,
    /// Rank of the incoming differential.
    pub dim_image_incoming: usize,
    /// Cohomology dimension, `dim_kernel − dim_image_incoming`.
    pub betti: usize,
}

/// Per-degree cohomology dimensions of a cochain complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    /// Rows in increasing degree order.
    pub rows: Vec<BettiRow>,
}

impl BettiTable {
    /// Betti number in a degree, zero for degrees outside the table.
    pub fn betti(&self, degree: i64) -> usize {
        self.rows
            .iter()
            .find(|r| r.degree == degree)
            .map_or(0, |r| r.betti)
    }

    /// The Betti numbers in increasing degree order.
    pub fn betti_vector(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.betti).collect()
    }

    /// Alternating sum of the cochain dimensions.
    pub fn euler_characteristic(&self) -> i64 {
        self.rows
            .iter()
            .map(|r| (1 - r.degree.rem_euclid(2) * 2) * r.dim as i64)
            .sum()
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>7} {:>6} {:>7} {:>6} {:>6}",
            "degree", "dim", "kernel", "image", "betti"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:>7} {:>6} {:>7} {:>6} {:>6}",
                r.degree, r.dim, r.dim_kernel, r.dim_image_incoming, r.betti
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        frac(n, d)
    }

    #[test]
    fn rank_identity_zero_and_dependent_rows() {
        assert_eq!(Matrix::identity(2).rank(), 2);
        assert_eq!(Matrix::zero(3, 5).rank(), 0);
        assert_eq!(Matrix::from_int_rows(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let k = Matrix::identity(4).kernel_basis();
        assert_eq!((k.rows(), k.cols()), (4, 0));
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let k = Matrix::zero(2, 3).kernel_basis();
        assert_eq!((k.rows(), k.cols()), (3, 3));
        assert_eq!(k.rank(), 3);
    }

    #[test]
    fn kernel_of_single_row() {
        let m = Matrix::from_int_rows(&[&[1, 1, 0]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 2);
        assert_eq!(k.rank(), 2);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn solve_inside_and_outside_span() {
        let a = Matrix::from_int_rows(&[&[1, 0], &[0, 0]]);
        let inside = Matrix::from_int_rows(&[&[3], &[0]]);
        let x = a.solve(&inside).unwrap();
        assert_eq!(a.mul(&x), inside);
        let outside = Matrix::from_int_rows(&[&[0], &[1]]);
        assert!(a.solve(&outside).is_none());
    }

    #[test]
    fn column_span_comparison_ignores_scaling_and_order() {
        let a = Matrix::from_int_rows(&[&[1, 0], &[0, 1], &[1, 1]]);
        let b = Matrix::from_int_rows(&[&[0, 2], &[3, 0], &[3, 2]]);
        assert!(a.same_column_span(&b));
        let c = Matrix::from_int_rows(&[&[1], &[0], &[0]]);
        assert!(!a.same_column_span(&c));
    }

    #[test]
    fn betti_of_identity_complex_vanishes() {
        let c = CochainComplex::new(
            0,
            vec![1, 1],
            vec![vec!["a".into()], vec!["b".into()]],
            vec![Matrix::identity(1)],
        )
        .unwrap();
        assert_eq!(c.betti().betti_vector(), vec![0, 0]);
    }

    #[test]
    fn betti_of_single_line() {
        let c = CochainComplex::new(3, vec![1], vec![vec!["x".into()]], vec![]).unwrap();
        assert_eq!(c.betti().betti_vector(), vec![1]);
        assert_eq!(c.betti().betti(3), 1);
        assert_eq!(c.betti().betti(2), 0);
    }

    #[test]
    fn betti_of_rank_one_surjection() {
        let c = CochainComplex::new(
            0,
            vec![2, 1],
            vec![vec!["x".into(), "y".into()], vec!["z".into()]],
            vec![Matrix::from_int_rows(&[&[1, 1]])],
        )
        .unwrap();
        assert_eq!(c.betti().betti_vector(), vec![1, 0]);
        assert_eq!(c.betti().euler_characteristic(), 1);
    }

    #[test]
    fn non_complex_is_rejected() {
        let err = CochainComplex::new(
            0,
            vec![1, 1, 1],
            vec![vec!["a".into()], vec!["b".into()], vec!["c".into()]],
            vec![Matrix::identity(1), Matrix::identity(1)],
        )
        .unwrap_err();
        assert!(matches!(err, ExactError::NotAComplex(0, 1)));
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let err = CochainComplex::new(
            0,
            vec![2, 1],
            vec![vec!["x".into(), "y".into()], vec!["z".into()]],
            vec![Matrix::identity(2)],
        )
        .unwrap_err();
        assert!(matches!(
            err,
            ExactError::DifferentialShape { degree: 0, .. }
        ));
    }

    #[test]
    fn scalar_strings_round_trip() {
        for s in ["0", "7", "-3/4", "22/7"] {
            let x = scalar_from_str(s).unwrap();
            assert_eq!(scalar_to_string(&x), s);
        }
        assert!(scalar_from_str("1/0").is_err());
        assert!(scalar_from_str("pi").is_err());
    }

    #[test]
    fn matrix_json_round_trips() {
        let mut m = Matrix::zero(2, 3);
        m.set(0, 1, q(-3, 4));
        m.set(1, 2, int(5));
        let json = serde_json::to_string(&m).unwrap();
        let back: Matrix = serde_json::from_str(&json).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn complex_json_round_trips_and_validates() {
        let c = CochainComplex::new(
            -1,
            vec![2, 1],
            vec![vec!["u".into(), "v".into()], vec!["w".into()]],
            vec![Matrix::from_int_rows(&[&[1, -1]])],
        )
        .unwrap();
        let json = serde_json::to_string(&c).unwrap();
        let back: CochainComplex = serde_json::from_str(&json).unwrap();
        assert_eq!(c, back);

        let bad = r#"{"min_degree":0,"dims":[1,1,1],
            "labels":[["a"],["b"],["c"]],
            "differentials":[
              {"rows":1,"cols":1,"entries":[[0,0,"1"]]},
              {"rows":1,"cols":1,"entries":[[0,0,"1"]]}]}"#;
        assert!(serde_json::from_str::<CochainComplex>(bad).is_err());
    }

    #[test]
    fn factorial_and_pow() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(5), int(120));
        assert_eq!(scalar_pow(&q(2, 3), -2), q(9, 4));
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-4i64..5, r * c).prop_map(move |vals| {
                let rows: Vec<Vec<Scalar>> = vals
                    .chunks(c)
                    .map(|ch| ch.iter().map(|&n| int(n)).collect())
                    .collect();
                Matrix::from_rows(rows)
            })
        })
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(m in small_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_nullity_and_kernel_annihilation(m in small_matrix()) {
            let k = m.kernel_basis();
            prop_assert_eq!(k.cols() + m.rank(), m.cols());
            prop_assert_eq!(k.rank(), k.cols());
            prop_assert!(m.mul(&k).is_zero());
        }

        #[test]
        fn matrix_serde_round_trip(m in small_matrix()) {
            let json = serde_json::to_string(&m).unwrap();
            let back: Matrix = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(m, back);
        }
    }
}
