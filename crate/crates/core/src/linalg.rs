//! Exact linear algebra over `Q(ζ_N)` with row-sparse matrices.
//!
//! Tensor index convention, used everywhere in the crate: in `A ⊗ B` the left
//! factor is the major index, so basis vector `(i, j)` sits at `i * dim_B + j`.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{CycNumber, ScalarError};

pub type SparseVec = Vec<(usize, CycNumber)>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("matrix is singular")]
    Singular,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A matrix stored as sorted sparse rows; explicit zeros are never stored,
/// which keeps `==` meaningful.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    modulus: u32,
    data: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, modulus: u32) -> Self {
        Matrix {
            rows,
            cols,
            modulus,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize, modulus: u32) -> Self {
        Self::scalar(n, &CycNumber::one(modulus))
    }

    pub fn scalar(n: usize, c: &CycNumber) -> Self {
        let mut m = Self::zeros(n, n, c.modulus());
        if !c.is_zero() {
            for i in 0..n {
                m.data[i].push((i, c.clone()));
            }
        }
        m
    }

    pub fn from_dense(modulus: u32, rows: &[Vec<CycNumber>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), ncols, modulus);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (j, x) in row.iter().enumerate() {
                assert_eq!(x.modulus(), modulus, "entry modulus differs from matrix modulus");
                if !x.is_zero() {
                    m.data[i].push((j, x.clone()));
                }
            }
        }
        m
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, modulus: u32, columns: &[Vec<CycNumber>]) -> Self {
        let mut m = Self::zeros(rows, columns.len(), modulus);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                if !x.is_zero() {
                    m.data[i].push((j, x.clone()));
                }
            }
        }
        m
    }

    pub fn from_sparse_columns(rows: usize, modulus: u32, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len(), modulus);
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col {
                if !x.is_zero() {
                    m.data[*i].push((j, x.clone()));
                }
            }
        }
        m
    }

    pub fn from_sparse_rows(cols: usize, modulus: u32, rows: Vec<SparseVec>) -> Self {
        let data = rows
            .into_iter()
            .map(|mut r| {
                r.retain(|(_, x)| !x.is_zero());
                r.sort_by_key(|(j, _)| *j);
                debug_assert!(r.windows(2).all(|w| w[0].0 < w[1].0));
                r
            })
            .collect::<Vec<_>>();
        Matrix {
            rows: data.len(),
            cols,
            modulus,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn row(&self, i: usize) -> &[(usize, CycNumber)] {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> CycNumber {
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => CycNumber::zero(self.modulus),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, x: CycNumber) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => {
                if x.is_zero() {
                    row.remove(k);
                } else {
                    row[k].1 = x;
                }
            }
            Err(k) => {
                if !x.is_zero() {
                    row.insert(k, (j, x));
                }
            }
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<CycNumber>> {
        let mut out = vec![vec![CycNumber::zero(self.modulus); self.cols]; self.rows];
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row {
                out[i][*j] = x.clone();
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<CycNumber> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .data
                .iter()
                .enumerate()
                .all(|(i, r)| r.len() == 1 && r[0].0 == i && r[0].1.is_one())
    }

    /// Positions where `self` and `other` differ, in row-major order.
    pub fn diff_positions(&self, other: &Matrix) -> Vec<(usize, usize)> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = Vec::new();
        for i in 0..self.rows {
            let d = sparse_axpy(&self.data[i], &other.data[i], &-CycNumber::one(self.modulus));
            out.extend(d.into_iter().map(|(j, _)| (i, j)));
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.cols, self.rows, self.modulus);
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row {
                t.data[*j].push((i, x.clone()));
            }
        }
        t
    }

    pub fn try_mul(&self, other: impl AsRef<Matrix>) -> Result<Matrix, LinalgError> {
        let other = other.as_ref();
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.modulus != other.modulus {
            return Err(ScalarError::ModulusMismatch(self.modulus, other.modulus).into());
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, CycNumber> = BTreeMap::new();
                for (k, a) in row {
                    for (j, b) in &other.data[*k] {
                        let p = a * b;
                        acc.entry(*j)
                            .and_modify(|v| *v += &p)
                            .or_insert(p);
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            modulus: self.modulus,
            data,
        })
    }

    pub fn mul(&self, other: impl AsRef<Matrix>) -> Matrix {
        self.try_mul(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn mul_vec(&self, v: &[CycNumber]) -> Vec<CycNumber> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        self.data
            .iter()
            .map(|row| {
                let mut s = CycNumber::zero(self.modulus);
                for (j, a) in row {
                    if !v[*j].is_zero() {
                        s += &(a * &v[*j]);
                    }
                }
                s
            })
            .collect()
    }

    /// `M v` for a sparse `v`.
    pub fn apply_sparse(&self, v: &[(usize, CycNumber)]) -> SparseVec {
        let mut out = Vec::new();
        for (i, row) in self.data.iter().enumerate() {
            let d = sparse_dot(row, v);
            if !d.is_zero() {
                out.push((i, d));
            }
        }
        out
    }

    /// The columns as sparse vectors.
    pub fn sparse_columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.axpy(other, &CycNumber::one(self.modulus))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.axpy(other, &-CycNumber::one(self.modulus))
    }

    /// `self + c * other`.
    pub fn axpy(&self, other: &Matrix, c: &CycNumber) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| sparse_axpy(a, b, c))
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            modulus: self.modulus,
            data,
        }
    }

    pub fn scale(&self, c: &CycNumber) -> Matrix {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols, self.modulus);
        }
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|(j, x)| (*j, x * c)).collect())
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            modulus: self.modulus,
            data,
        }
    }

    /// Kronecker product; row `(i_A, i_B)` is `i_A * rows_B + i_B`.
    pub fn kron(&self, other: impl AsRef<Matrix>) -> Matrix {
        let other = other.as_ref();
        assert_eq!(self.modulus, other.modulus, "modulus mismatch in kron");
        let mut m = Self::zeros(self.rows * other.rows, self.cols * other.cols, self.modulus);
        for (ia, ra) in self.data.iter().enumerate() {
            for (ib, rb) in other.data.iter().enumerate() {
                let row = &mut m.data[ia * other.rows + ib];
                for (ja, a) in ra {
                    for (jb, b) in rb {
                        row.push((ja * other.cols + jb, a * b));
                    }
                }
            }
        }
        m
    }

    pub fn trace(&self) -> CycNumber {
        let mut s = CycNumber::zero(self.modulus);
        for i in 0..self.rows.min(self.cols) {
            if let Ok(k) = self.data[i].binary_search_by_key(&i, |(c, _)| *c) {
                s += &self.data[i][k].1;
            }
        }
        s
    }

    /// Basis of `{v : M v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<CycNumber>> {
        let ech = Echelon::build(self.cols, self.modulus, self.data.iter().cloned());
        ech.kernel_basis()
    }

    pub fn rank(&self) -> usize {
        Echelon::build(self.cols, self.modulus, self.data.iter().cloned())
            .pivots
            .len()
    }

    /// Some solution of `M x = b`.
    pub fn solve(&self, b: &[CycNumber]) -> Result<Vec<CycNumber>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "rhs of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let n = self.cols;
        let rows = self.data.iter().zip(b).map(|(r, bi)| {
            let mut r = r.clone();
            if !bi.is_zero() {
                r.push((n, bi.clone()));
            }
            r
        });
        let ech = Echelon::build(n + 1, self.modulus, rows);
        if ech.pivots.contains_key(&n) {
            return Err(LinalgError::NoSolution);
        }
        // Free variables set to zero; the augmented column plays the role of -1.
        let mut x = vec![CycNumber::zero(self.modulus); n + 1];
        x[n] = -CycNumber::one(self.modulus);
        ech.back_substitute(&mut x);
        x.truncate(n);
        Ok(x)
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Result<CycNumber, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::ShapeMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let zero = CycNumber::zero(self.modulus);
        if n == 0 {
            return Ok(CycNumber::one(self.modulus));
        }
        let mut a = self.to_dense();
        let mut prev = CycNumber::one(self.modulus);
        let mut negate = false;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        negate = !negate;
                    }
                    None => return Ok(zero),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = t.try_div(&prev)?;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![CycNumber::zero(self.modulus); n];
            e[j] = CycNumber::one(self.modulus);
            match self.solve(&e) {
                Ok(x) => cols.push(x),
                Err(LinalgError::NoSolution) => return Err(LinalgError::Singular),
                Err(e) => return Err(e),
            }
        }
        Ok(Matrix::from_columns(n, self.modulus, &cols))
    }
}

impl AsRef<Matrix> for Matrix {
    fn as_ref(&self) -> &Matrix {
        self
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over Q(zeta_{})", self.rows, self.cols, self.modulus)?;
        for (i, row) in self.data.iter().enumerate() {
            if !row.is_empty() {
                write!(f, "  {i}:")?;
                for (j, x) in row {
                    write!(f, " [{j}]={x}")?;
                }
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// `a + c * b` on sorted sparse vectors.
pub fn sparse_axpy(a: &[(usize, CycNumber)], b: &[(usize, CycNumber)], c: &CycNumber) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ka = a.get(i).map_or(usize::MAX, |x| x.0);
        let kb = b.get(j).map_or(usize::MAX, |x| x.0);
        if ka < kb {
            out.push(a[i].clone());
            i += 1;
        } else if kb < ka {
            let v = &b[j].1 * c;
            if !v.is_zero() {
                out.push((kb, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 + &(&b[j].1 * c);
            if !v.is_zero() {
                out.push((ka, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_dot(a: &[(usize, CycNumber)], b: &[(usize, CycNumber)]) -> CycNumber {
    let modulus = match (a.first(), b.first()) {
        (Some((_, x)), Some(_)) => x.modulus(),
        _ => return CycNumber::zero(a.first().or(b.first()).map_or(1, |(_, x)| x.modulus())),
    };
    let mut s = CycNumber::zero(modulus);
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                s += &(&a[i].1 * &b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    s
}

pub fn to_sparse(v: &[CycNumber]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(v: &[(usize, CycNumber)], len: usize, modulus: u32) -> Vec<CycNumber> {
    let mut out = vec![CycNumber::zero(modulus); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Row echelon form with unit pivots; pivot rows keyed by leading column.
struct Echelon {
    cols: usize,
    modulus: u32,
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    fn build(cols: usize, modulus: u32, rows: impl Iterator<Item = SparseVec>) -> Self {
        let mut rows: Vec<SparseVec> = rows.filter(|r| !r.is_empty()).collect();
        // Sparse rows first keeps fill-in down.
        rows.sort_by_key(Vec::len);
        let mut pivots: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for mut row in rows {
            while let Some((lead, x)) = row.first().cloned() {
                match pivots.get(&lead) {
                    Some(p) => row = sparse_axpy(&row, p, &-x),
                    None => {
                        let inv = x.inv().expect("nonzero pivot");
                        let row: SparseVec = row.into_iter().map(|(j, v)| (j, &v * &inv)).collect();
                        pivots.insert(lead, row);
                        break;
                    }
                }
            }
        }
        Echelon {
            cols,
            modulus,
            pivots,
        }
    }

    // Fills pivot coordinates of `x` from the already-set free coordinates.
    fn back_substitute(&self, x: &mut [CycNumber]) {
        for (&c, row) in self.pivots.iter().rev() {
            let mut s = CycNumber::zero(self.modulus);
            for (j, a) in &row[1..] {
                if !x[*j].is_zero() {
                    s += &(a * &x[*j]);
                }
            }
            x[c] = -s;
        }
    }

    fn kernel_basis(&self) -> Vec<Vec<CycNumber>> {
        (0..self.cols)
            .filter(|c| !self.pivots.contains_key(c))
            .map(|free| {
                let mut x = vec![CycNumber::zero(self.modulus); self.cols];
                x[free] = CycNumber::one(self.modulus);
                self.back_substitute(&mut x);
                x
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::make_root_of_unity;

    fn int(n: i64) -> CycNumber {
        CycNumber::from_integer(4, n)
    }

    #[test]
    fn nullspace_basics() {
        assert!(Matrix::identity(3, 4).nullspace().is_empty());
        assert_eq!(Matrix::zeros(2, 2, 4).nullspace().len(), 2);
        let i = make_root_of_unity(4, 1);
        let m = Matrix::from_dense(4, &[vec![int(1), i.clone()], vec![-&i, int(1)]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(CycNumber::is_zero));
        // proportional to (i, -1)
        let v = &ns[0];
        assert!((&(&v[0] * &int(-1)) - &(&v[1] * &i)).is_zero());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn solve_cases() {
        let b = vec![int(3), int(-2)];
        assert_eq!(Matrix::identity(2, 4).solve(&b).unwrap(), b);
        let m = Matrix::from_dense(4, &[vec![int(1), int(1)], vec![int(2), int(2)]]);
        assert_eq!(m.solve(&[int(1), int(3)]).unwrap_err(), LinalgError::NoSolution);
    }

    #[test]
    fn vandermonde_interpolation() {
        let w = make_root_of_unity(3, 1);
        let nodes = [CycNumber::one(3), w.clone(), &w * &w];
        let rows: Vec<Vec<CycNumber>> = nodes
            .iter()
            .map(|x| vec![CycNumber::one(3), x.clone(), x * x])
            .collect();
        let m = Matrix::from_dense(3, &rows);
        let e1 = vec![CycNumber::one(3), CycNumber::zero(3), CycNumber::zero(3)];
        let x = m.solve(&e1).unwrap();
        // Discrete Fourier inversion: the polynomial equal to 1 at 1 and 0 at w, w^2
        // is (1 + t + t^2)/3.
        let third = CycNumber::from_rational(3, &crate::scalar::rational(1, 3));
        assert_eq!(x, vec![third.clone(), third.clone(), third]);
        assert_eq!(m.mul_vec(&x), e1);
    }

    #[test]
    fn kron_cases() {
        assert!(Matrix::identity(2, 4).kron(Matrix::identity(3, 4)).is_identity());
        let a = Matrix::from_dense(4, &[vec![int(0), int(1)], vec![int(0), int(0)]]);
        let c = Matrix::scalar(1, &int(2));
        assert_eq!(a.kron(&c), a.scale(&int(2)));
        assert_eq!(
            a.kron(&c),
            Matrix::from_dense(4, &[vec![int(0), int(2)], vec![int(0), int(0)]])
        );
    }

    #[test]
    fn det_and_inverse() {
        let i = make_root_of_unity(4, 1);
        let m = Matrix::from_dense(4, &[vec![int(0), int(2)], vec![i.clone(), int(1)]]);
        assert_eq!(m.det().unwrap(), &int(-2) * &i);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let s = Matrix::from_dense(4, &[vec![int(1), int(2)], vec![int(2), int(4)]]);
        assert!(s.det().unwrap().is_zero());
        assert_eq!(s.inverse().unwrap_err(), LinalgError::Singular);
    }
}
