//! Dense exact linear algebra over Q(i, sqrt(d)).
//!
//! Everything here is plain Gaussian elimination; the scalar field is exact,
//! so rank, solvability and nullspaces are decided, not estimated.

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c));
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn conj_transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).conj());
            }
        }
        m
    }

    pub fn is_hermitian(&self) -> bool {
        self.rows == self.cols && *self == self.conj_transpose()
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut m = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Scalar::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.get(r, k) * other.get(k, c));
                }
                m.set(r, c, acc);
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for c in 0..self.cols {
                    acc = &acc + &(self.get(r, c) * &v[c]);
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form; returns the pivot column list.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    self.data.swap(p * self.cols + c, row * self.cols + c);
                }
            }
            let inv = self.get(row, col).inv();
            for c in col..self.cols {
                let v = self.get(row, c) * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && !self.get(r, col).is_zero() {
                    let f = self.get(r, col).clone();
                    for c in col..self.cols {
                        let v = self.get(r, c) - &(self.get(row, c) * &f);
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// One solution of `A x = b`, if any.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = aug.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Basis of the right nullspace.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![Scalar::zero(); self.cols];
            v[f] = Scalar::one();
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = -m.get(row, f);
            }
            basis.push(v);
        }
        basis
    }

    /// A functional `f` with `f A = 0` and `f . b != 0`, certifying that `b`
    /// is outside the column space. `None` when `b` is inside.
    pub fn outside_certificate(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let left_null = self.transpose().nullspace();
        for f in left_null {
            let mut acc = Scalar::zero();
            for (fi, bi) in f.iter().zip(b.iter()) {
                acc = &acc + &(fi * bi);
            }
            if !acc.is_zero() {
                return Some(f);
            }
        }
        None
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Scalar::one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c).clone());
            }
        }
        Some(inv)
    }

    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Scalar::zero();
            };
            if p != col {
                for c in 0..n {
                    m.data.swap(p * n + c, col * n + c);
                }
                det = -det;
            }
            let piv = m.get(col, col).clone();
            det = &det * &piv;
            let inv = piv.inv();
            for r in col + 1..n {
                if !m.get(r, col).is_zero() {
                    let f = m.get(r, col) * &inv;
                    for c in col..n {
                        let v = m.get(r, c) - &(m.get(col, c) * &f);
                        m.set(r, c, v);
                    }
                }
            }
        }
        det
    }

    /// Exact positive-definiteness of a Hermitian matrix via leading
    /// principal minors.
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_hermitian() {
            return false;
        }
        for k in 1..=self.rows {
            let mut sub = Matrix::zeros(k, k);
            for r in 0..k {
                for c in 0..k {
                    sub.set(r, c, self.get(r, c).clone());
                }
            }
            let d = sub.determinant();
            if !d.is_real() || d.sign() <= 0 {
                return false;
            }
        }
        true
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}\t", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
