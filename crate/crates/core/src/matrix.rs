//! Dense matrices over a field and determinants over commutative rings.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// Commutative ring operations needed by division-free determinants.
pub trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

impl Ring for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero(self.field())
    }
    fn one_like(&self) -> Self {
        Scalar::one(self.field())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

/// Determinant of a square matrix over a commutative ring: cofactor expansion
/// up to size 4, Berkowitz's division-free algorithm above that.
pub fn det<T: Ring>(m: &[Vec<T>]) -> Result<T> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare(n, m.first().map_or(0, |r| r.len())));
    }
    if n == 0 {
        return Err(Error::InvalidInput("empty matrix has no ring context".into()));
    }
    if n <= 4 {
        Ok(det_cofactor(m))
    } else {
        Ok(det_berkowitz(m))
    }
}

pub fn det_cofactor<T: Ring>(m: &[Vec<T>]) -> T {
    let n = m.len();
    let cols: Vec<usize> = (0..n).collect();
    cofactor_rec(m, 0, &cols)
}

fn cofactor_rec<T: Ring>(m: &[Vec<T>], row: usize, cols: &[usize]) -> T {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = m[row][cols[0]].zero_like();
    for (k, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero_elem() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = m[row][c].mul_ref(&cofactor_rec(m, row + 1, &rest));
        acc = if k % 2 == 0 { acc.add_ref(&term) } else { acc.sub_ref(&term) };
    }
    acc
}

pub fn det_berkowitz<T: Ring>(m: &[Vec<T>]) -> T {
    let n = m.len();
    let zero = m[0][0].zero_like();
    let one = m[0][0].one_like();
    // characteristic polynomial coefficients of the leading principal minors
    let mut v = vec![one.clone(), m[0][0].neg_ref()];
    for r in 1..n {
        let a = &m[r][r];
        let row: Vec<T> = (0..r).map(|j| m[r][j].clone()).collect();
        let mut col: Vec<T> = (0..r).map(|i| m[i][r].clone()).collect();
        let mut t = vec![one.clone(), a.neg_ref()];
        for _ in 0..r {
            let rc = row.iter().zip(&col).fold(zero.clone(), |s, (x, y)| s.add_ref(&x.mul_ref(y)));
            t.push(rc.neg_ref());
            col = (0..r).map(|i| (0..r).fold(zero.clone(), |s, j| s.add_ref(&m[i][j].mul_ref(&col[j])))).collect();
        }
        let mut next = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut s = zero.clone();
            for j in 0..=i.min(r) {
                if i - j < t.len() {
                    s = s.add_ref(&t[i - j].mul_ref(&v[j]));
                }
            }
            next.push(s);
        }
        v = next;
    }
    let c = v.pop().unwrap();
    if n.is_multiple_of(2) {
        c
    } else {
        c.neg_ref()
    }
}

/// A dense row-major matrix over one field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![Scalar::zero(field); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    /// Builds from rows, rejecting ragged input and mixed fields.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::InvalidInput("ragged matrix rows".into()));
            }
            for x in row {
                if x.field() != field {
                    return Err(Error::FieldMismatch(field, x.field()));
                }
                data.push(x);
            }
        }
        Ok(Matrix { field, rows: r, cols: c, data })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::DegreeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        if self.field != o.field {
            return Err(Error::FieldMismatch(self.field, o.field));
        }
        let mut m = Matrix::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = m.get(i, j) + &(a * b);
                        m.set(i, j, v);
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(Scalar::zero(self.field), |s, (a, b)| s + a * b))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Rank: fraction-free elimination over Q, plain elimination over F_p.
    pub fn rank(&self) -> usize {
        match self.field {
            Field::Rational => bareiss_rank(self),
            Field::Prime { .. } => self.rref().1.len(),
        }
    }

    /// Reduced row echelon form and pivot columns, pivoting on the first nonzero entry.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        match self.field {
            Field::Rational => fraction_free_rref(self),
            Field::Prime { .. } => self.rref_by_division(),
        }
    }

    fn rref_by_division(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().unwrap();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let rj = m.get(r, j);
                    if rj.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * rj);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Basis of the right null space, one vector per free column in increasing order.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(self.field); self.cols];
            v[f] = Scalar::one(self.field);
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, f);
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(self.field); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Determinant by elimination.
    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let mut m = self.clone();
        let mut d = Scalar::one(self.field);
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Scalar::zero(self.field));
            };
            if p != c {
                m.swap_rows(p, c);
                d = -d;
            }
            let piv = m.get(c, c).clone();
            d = &d * &piv;
            let inv = piv.inv().unwrap();
            for i in c + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(d)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one(self.field));
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }
}

/// Rows scaled to integers by their denominators' lcm.
fn integer_rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|r| {
            let row = m.row(r);
            let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.as_rational().unwrap().denom()));
            row.iter()
                .map(|x| {
                    let q = x.as_rational().unwrap();
                    q.numer() * (&l / q.denom())
                })
                .collect()
        })
        .collect()
}

/// Fraction-free Gauss-Jordan over Z followed by one division per pivot row.
fn fraction_free_rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = integer_rows(m);
    let rows = m.rows;
    let cols = m.cols;
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    for c in 0..cols {
        let r = pivots.len();
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..cols {
                if j == c {
                    continue;
                }
                let v = &a[i][j] * &piv - &f * &a[r][j];
                debug_assert!((&v % &prev).is_zero());
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = piv;
        pivots.push(c);
    }
    let mut out = Matrix::zeros(m.field, rows, cols);
    for (i, &c) in pivots.iter().enumerate() {
        let piv = a[i][c].clone();
        for j in 0..cols {
            if !a[i][j].is_zero() {
                let q = num_rational::BigRational::new(a[i][j].clone(), piv.clone());
                out.set(i, j, Scalar::from_rational(m.field, &q).unwrap());
            }
        }
    }
    (out, pivots)
}

fn bareiss_rank(m: &Matrix) -> usize {
    let mut a = integer_rows(m);
    let rows = m.rows;
    let cols = m.cols;
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let v = &a[i][j] * &a[rank][c] - &a[i][c] * &a[rank][j];
                debug_assert!((&v % &prev).is_zero());
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}
