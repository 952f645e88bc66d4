//! Binary forms, biforms and plane curves in P(S_2).
//!
//! A binary form of degree n stores `f_i` for `f = sum f_i s^(n-i) t^i`.
//! A biform of bidegree (m, n) stores the grid coefficient of
//! `s^(m-i) t^i u^(n-j) v^j` at `[i][j]`. A plane curve of degree k stores the
//! coefficients of `e0^a e1^b e2^c` in graded-lex order (`a` descending, then `b`).
//! A point pair `{p, q}` of P^1 has coordinates `(p0 q0, p0 q1 + p1 q0, p1 q1)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::poly::{MPoly, UniPoly};

/// A point `(s : t)` of P^1 with a nonzero representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct P1Point {
    pub s: Scalar,
    pub t: Scalar,
}

impl P1Point {
    pub fn new(s: Scalar, t: Scalar) -> Result<P1Point> {
        if s.field() != t.field() {
            return Err(Error::FieldMismatch(s.field(), t.field()));
        }
        if s.is_zero() && t.is_zero() {
            return Err(Error::ZeroPoint);
        }
        Ok(P1Point { s, t })
    }

    pub fn ints(field: Field, s: i64, t: i64) -> Result<P1Point> {
        P1Point::new(field.int(s), field.int(t))
    }

    pub fn field(&self) -> Field {
        self.s.field()
    }

    /// Representative with the last nonzero coordinate equal to 1.
    pub fn normalized(&self) -> P1Point {
        if self.t.is_zero() {
            P1Point { s: Scalar::one(self.field()), t: self.t.clone() }
        } else {
            P1Point { s: &self.s / &self.t, t: Scalar::one(self.field()) }
        }
    }

    pub fn same_point(&self, o: &P1Point) -> bool {
        (&self.s * &o.t - &self.t * &o.s).is_zero()
    }

    /// All points of P^1 over a prime field: `(x : 1)` for each residue, then `(1 : 0)`.
    pub fn all_over(field: Field) -> Result<Vec<P1Point>> {
        let Field::Prime { p } = field else {
            return Err(Error::InvalidInput("point enumeration needs a prime field".into()));
        };
        let mut v: Vec<P1Point> = (0..p).map(|x| P1Point { s: field.int(x as i64), t: field.one() }).collect();
        v.push(P1Point { s: field.one(), t: field.zero() });
        Ok(v)
    }

    /// The linear form `t0 s - s0 t` vanishing at this point.
    pub fn linear_form(&self) -> BinaryForm {
        BinaryForm::new(vec![self.t.clone(), -&self.s]).unwrap()
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.s, self.t)
    }
}

/// A 2x2 matrix acting on `(s, t)` by substitution `(s, t) -> (a s + b t, c s + d t)`.
pub type Mat2 = [[Scalar; 2]; 2];

fn binomial_row(n: usize) -> Vec<u64> {
    let mut row = vec![1u64; n + 1];
    for i in 1..n {
        row[i] = row[i - 1] * (n - i + 1) as u64 / i as u64;
    }
    row
}

fn falling(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64)
}

/// A homogeneous polynomial in (s, t).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<Scalar>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Scalar>) -> Result<BinaryForm> {
        let Some(first) = coeffs.first() else {
            return Err(Error::InvalidInput("binary form needs at least one coefficient".into()));
        };
        let f = first.field();
        if let Some(x) = coeffs.iter().find(|x| x.field() != f) {
            return Err(Error::FieldMismatch(f, x.field()));
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn from_ints(field: Field, c: &[i64]) -> BinaryForm {
        BinaryForm::new(c.iter().map(|&x| field.int(x)).collect()).unwrap()
    }

    pub fn zero(field: Field, n: usize) -> BinaryForm {
        BinaryForm { coeffs: vec![Scalar::zero(field); n + 1] }
    }

    pub fn constant(c: Scalar) -> BinaryForm {
        BinaryForm { coeffs: vec![c] }
    }

    /// The monomial `s^(n-i) t^i`.
    pub fn monomial(field: Field, n: usize, i: usize) -> BinaryForm {
        let mut f = BinaryForm::zero(field, n);
        f.coeffs[i] = Scalar::one(field);
        f
    }

    pub fn field(&self) -> Field {
        self.coeffs[0].field()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, o: &BinaryForm) -> Result<BinaryForm> {
        self.check_same_degree(o)?;
        Ok(BinaryForm { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, o: &BinaryForm) -> Result<BinaryForm> {
        self.check_same_degree(o)?;
        Ok(BinaryForm { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() })
    }

    fn check_same_degree(&self, o: &BinaryForm) -> Result<()> {
        if self.degree() != o.degree() {
            return Err(Error::DegreeMismatch(format!("degrees {} and {}", self.degree(), o.degree())));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> BinaryForm {
        BinaryForm { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, o: &BinaryForm) -> BinaryForm {
        let mut c = vec![Scalar::zero(self.field()); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += &(a * b);
            }
        }
        BinaryForm { coeffs: c }
    }

    pub fn pow(&self, e: usize) -> BinaryForm {
        (0..e).fold(BinaryForm::constant(Scalar::one(self.field())), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, s: &Scalar, t: &Scalar) -> Scalar {
        let n = self.degree();
        let mut acc = Scalar::zero(self.field());
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += &(c * &s.pow((n - i) as u32) * t.pow(i as u32));
            }
        }
        acc
    }

    pub fn eval_at(&self, p: &P1Point) -> Scalar {
        self.eval(&p.s, &p.t)
    }

    /// `f(a s + b t, c s + d t)`.
    pub fn substitute(&self, h: &Mat2) -> BinaryForm {
        let field = self.field();
        let n = self.degree();
        let l1 = BinaryForm { coeffs: vec![h[0][0].clone(), h[0][1].clone()] };
        let l2 = BinaryForm { coeffs: vec![h[1][0].clone(), h[1][1].clone()] };
        let p1: Vec<BinaryForm> = powers(&l1, n);
        let p2: Vec<BinaryForm> = powers(&l2, n);
        let mut out = BinaryForm::zero(field, n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = p1[n - i].mul(&p2[i]).scale(c);
            out = out.add(&term).unwrap();
        }
        out
    }

    pub fn derivative_s(&self) -> BinaryForm {
        let n = self.degree();
        if n == 0 {
            return BinaryForm::zero(self.field(), 0);
        }
        BinaryForm {
            coeffs: (0..n).map(|i| &self.coeffs[i] * Scalar::from_i64(self.field(), (n - i) as i64)).collect(),
        }
    }

    pub fn derivative_t(&self) -> BinaryForm {
        let n = self.degree();
        if n == 0 {
            return BinaryForm::zero(self.field(), 0);
        }
        BinaryForm {
            coeffs: (0..n).map(|i| &self.coeffs[i + 1] * Scalar::from_i64(self.field(), (i + 1) as i64)).collect(),
        }
    }

    /// Dehomogenization at `t = 1`: the polynomial `sum f_i x^(n-i)`.
    pub fn to_uni(&self) -> UniPoly {
        let n = self.degree();
        UniPoly::new(self.field(), (0..=n).map(|k| self.coeffs[n - k].clone()).collect())
    }

    /// Homogenizes a univariate polynomial to a form of degree `n`.
    pub fn from_uni(p: &UniPoly, n: usize) -> Result<BinaryForm> {
        if p.degree().unwrap_or(0) > n {
            return Err(Error::DegreeMismatch(format!("polynomial of degree {:?} exceeds {n}", p.degree())));
        }
        Ok(BinaryForm { coeffs: (0..=n).map(|i| p.coeff(n - i)).collect() })
    }

    /// Multiplicity of the root `(1 : 0)`, i.e. the power of `t` dividing the form.
    pub fn t_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Scales so the first nonzero coefficient is 1; the zero form is returned unchanged.
    pub fn normalized(&self) -> BinaryForm {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            None => self.clone(),
            Some(c) => self.scale(&c.inv().unwrap()),
        }
    }

    /// Normalized gcd of two forms; fails when both vanish.
    pub fn gcd(&self, o: &BinaryForm) -> Result<BinaryForm> {
        if self.field() != o.field() {
            return Err(Error::FieldMismatch(self.field(), o.field()));
        }
        match (self.is_zero(), o.is_zero()) {
            (true, true) => return Err(Error::ZeroInput("gcd of two zero forms".into())),
            (true, false) => return Ok(o.normalized()),
            (false, true) => return Ok(self.normalized()),
            _ => {}
        }
        let k = self.t_order().min(o.t_order());
        let g = self.to_uni().gcd(&o.to_uni());
        let dg = g.degree().unwrap();
        let base = BinaryForm::from_uni(&g, dg)?;
        let tk = BinaryForm::monomial(self.field(), k, k);
        Ok(base.mul(&tk).normalized())
    }

    /// Exact quotient `self / d`.
    pub fn div_exact(&self, d: &BinaryForm) -> Result<BinaryForm> {
        if d.is_zero() {
            return Err(Error::ZeroInput("division by the zero form".into()));
        }
        if d.degree() > self.degree() {
            return Err(Error::InexactDivision("divisor degree exceeds dividend degree".into()));
        }
        let n = self.degree() - d.degree();
        if self.is_zero() {
            return Ok(BinaryForm::zero(self.field(), n));
        }
        let (q, r) = self.to_uni().div_rem(&d.to_uni())?;
        if !r.is_zero() || q.degree().unwrap_or(0) > n {
            return Err(Error::InexactDivision("binary form not divisible".into()));
        }
        let q = BinaryForm::from_uni(&q, n)?;
        if &q.mul(d) != self {
            return Err(Error::InexactDivision("binary form not divisible".into()));
        }
        Ok(q)
    }

    /// `Some(c)` with `self = c * o` when the forms are proportional and nonzero.
    pub fn proportional(&self, o: &BinaryForm) -> Option<Scalar> {
        proportional_vec(&self.coeffs, &o.coeffs)
    }

    /// Squarefree part (product of the distinct linear factors), normalized.
    pub fn squarefree_part(&self) -> Result<BinaryForm> {
        let ds = self.derivative_s();
        let dt = self.derivative_t();
        let g = match ds.gcd(&dt) {
            Ok(g) => self.gcd(&g)?,
            Err(_) => return Ok(self.normalized()),
        };
        self.div_exact(&g).map(|f| f.normalized())
    }

    /// Roots in P^1 over a prime field, by exhaustive evaluation.
    pub fn rational_roots(&self) -> Result<Vec<P1Point>> {
        Ok(P1Point::all_over(self.field())?.into_iter().filter(|p| self.eval_at(p).is_zero()).collect())
    }
}

fn powers(l: &BinaryForm, n: usize) -> Vec<BinaryForm> {
    let mut v = vec![BinaryForm::constant(Scalar::one(l.field()))];
    for k in 1..=n {
        let next = v[k - 1].mul(l);
        v.push(next);
    }
    v
}

/// `Some(c)` with `a = c * b` when both are nonzero and proportional.
pub fn proportional_vec(a: &[Scalar], b: &[Scalar]) -> Option<Scalar> {
    if a.len() != b.len() {
        return None;
    }
    let k = b.iter().position(|x| !x.is_zero())?;
    let c = &a[k] / &b[k];
    if c.is_zero() {
        return None;
    }
    a.iter().zip(b).all(|(x, y)| *x == &c * y).then_some(c)
}

/// Gcd of two binary forms, normalized.
pub fn poly_gcd(f: &BinaryForm, g: &BinaryForm) -> Result<BinaryForm> {
    f.gcd(g)
}

/// A bihomogeneous form in (s, t; u, v).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiForm {
    grid: Vec<Vec<Scalar>>,
}

impl BiForm {
    pub fn zero(field: Field, m: usize, n: usize) -> BiForm {
        BiForm { grid: vec![vec![Scalar::zero(field); n + 1]; m + 1] }
    }

    pub fn from_grid(grid: Vec<Vec<Scalar>>) -> Result<BiForm> {
        let n = grid.first().map(|r| r.len()).unwrap_or(0);
        if n == 0 || grid.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("malformed biform grid".into()));
        }
        Ok(BiForm { grid })
    }

    pub fn from_ints(field: Field, rows: &[&[i64]]) -> BiForm {
        BiForm::from_grid(rows.iter().map(|r| r.iter().map(|&x| field.int(x)).collect()).collect()).unwrap()
    }

    /// `f(s, t) g(u, v)`.
    pub fn outer(f: &BinaryForm, g: &BinaryForm) -> BiForm {
        BiForm { grid: f.coeffs.iter().map(|a| g.coeffs.iter().map(|b| a * b).collect()).collect() }
    }

    pub fn field(&self) -> Field {
        self.grid[0][0].field()
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.grid.len() - 1, self.grid[0].len() - 1)
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.grid[i][j]
    }

    pub fn grid(&self) -> &[Vec<Scalar>] {
        &self.grid
    }

    pub fn is_zero(&self) -> bool {
        self.grid.iter().flatten().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        let (m, n) = self.bidegree();
        m == n && (0..=m).all(|i| (0..i).all(|j| self.grid[i][j] == self.grid[j][i]))
    }

    pub fn add(&self, o: &BiForm) -> Result<BiForm> {
        if self.bidegree() != o.bidegree() {
            return Err(Error::DegreeMismatch("biform bidegrees differ".into()));
        }
        Ok(BiForm {
            grid: self.grid.iter().zip(&o.grid).map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + b).collect()).collect(),
        })
    }

    pub fn sub(&self, o: &BiForm) -> Result<BiForm> {
        self.add(&o.scale(&-Scalar::one(o.field())))
    }

    pub fn scale(&self, c: &Scalar) -> BiForm {
        BiForm { grid: self.grid.iter().map(|r| r.iter().map(|x| x * c).collect()).collect() }
    }

    pub fn mul(&self, o: &BiForm) -> BiForm {
        let (m1, n1) = self.bidegree();
        let (m2, n2) = o.bidegree();
        let mut out = BiForm::zero(self.field(), m1 + m2, n1 + n2);
        for i1 in 0..=m1 {
            for j1 in 0..=n1 {
                let a = &self.grid[i1][j1];
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=m2 {
                    for j2 in 0..=n2 {
                        let b = &o.grid[i2][j2];
                        if !b.is_zero() {
                            out.grid[i1 + i2][j1 + j2] += &(a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn eval(&self, p: &P1Point, q: &P1Point) -> Scalar {
        let (m, n) = self.bidegree();
        let mut acc = Scalar::zero(self.field());
        for i in 0..=m {
            let a = p.s.pow((m - i) as u32) * p.t.pow(i as u32);
            for j in 0..=n {
                let c = &self.grid[i][j];
                if !c.is_zero() {
                    acc += &(c * &a * q.s.pow((n - j) as u32) * q.t.pow(j as u32));
                }
            }
        }
        acc
    }

    /// The binary form in (u, v) obtained by fixing the first point.
    pub fn specialize_first(&self, p: &P1Point) -> BinaryForm {
        let (m, n) = self.bidegree();
        let w: Vec<Scalar> = (0..=m).map(|i| p.s.pow((m - i) as u32) * p.t.pow(i as u32)).collect();
        BinaryForm {
            coeffs: (0..=n)
                .map(|j| (0..=m).fold(Scalar::zero(self.field()), |acc, i| acc + &w[i] * &self.grid[i][j]))
                .collect(),
        }
    }

    /// `F(s, t; s, t)` as a binary form of degree m + n.
    pub fn restrict_diagonal(&self) -> BinaryForm {
        let (m, n) = self.bidegree();
        let mut f = BinaryForm::zero(self.field(), m + n);
        for i in 0..=m {
            for j in 0..=n {
                f.coeffs[i + j] += &self.grid[i][j];
            }
        }
        f
    }

    /// The bidegree (1,1) form `sv - tu`.
    pub fn diagonal(field: Field) -> BiForm {
        BiForm::from_ints(field, &[&[0, 1], &[-1, 0]])
    }

    /// Exact quotient by `sv - tu`.
    pub fn divide_diagonal(&self) -> Result<BiForm> {
        let (m, n) = self.bidegree();
        if m == 0 || n == 0 {
            if self.is_zero() {
                return Err(Error::InexactDivision("zero biform of bidegree with a zero part".into()));
            }
            return Err(Error::InexactDivision("bidegree too small for division by sv - tu".into()));
        }
        let field = self.field();
        let mut h = BiForm::zero(field, m - 1, n - 1);
        for i in 0..m {
            for j in 1..=n {
                let mut v = self.grid[i][j].clone();
                if i > 0 && j < n {
                    v += &h.grid[i - 1][j];
                }
                h.grid[i][j - 1] = v;
            }
        }
        if h.mul(&BiForm::diagonal(field)) != *self {
            return Err(Error::InexactDivision("biform not divisible by sv - tu".into()));
        }
        Ok(h)
    }

    /// Substitutes `h` in both variable pairs.
    pub fn substitute(&self, h: &Mat2) -> BiForm {
        let (m, n) = self.bidegree();
        let field = self.field();
        let l1 = BinaryForm { coeffs: vec![h[0][0].clone(), h[0][1].clone()] };
        let l2 = BinaryForm { coeffs: vec![h[1][0].clone(), h[1][1].clone()] };
        let k = m.max(n);
        let p1 = powers(&l1, k);
        let p2 = powers(&l2, k);
        let mut out = BiForm::zero(field, m, n);
        for i in 0..=m {
            let fi = p1[m - i].mul(&p2[i]);
            for j in 0..=n {
                let c = &self.grid[i][j];
                if c.is_zero() {
                    continue;
                }
                let gj = p2[j].mul(&p1[n - j]);
                let term = BiForm::outer(&fi.scale(c), &gj);
                out = out.add(&term).unwrap();
            }
        }
        out
    }
}

/// Exact quotient `F / (sv - tu)^2` of a symmetric biform vanishing on the diagonal.
pub fn divide_diagonal_sq(f: &BiForm) -> Result<BiForm> {
    if !f.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    f.divide_diagonal()?.divide_diagonal()
}

/// Exponent triples of degree k in graded-lex order.
pub fn curve_monomials(k: usize) -> Vec<[u32; 3]> {
    let k = k as u32;
    let mut v = Vec::with_capacity(((k + 1) * (k + 2) / 2) as usize);
    for a in (0..=k).rev() {
        for b in (0..=k - a).rev() {
            v.push([a, b, k - a - b]);
        }
    }
    v
}

/// A ternary form in (e0, e1, e2).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlaneCurve {
    degree: usize,
    coeffs: Vec<Scalar>,
}

impl PlaneCurve {
    pub fn new(degree: usize, coeffs: Vec<Scalar>) -> Result<PlaneCurve> {
        if coeffs.len() != (degree + 1) * (degree + 2) / 2 {
            return Err(Error::InvalidInput(format!(
                "a degree {degree} curve needs {} coefficients, got {}",
                (degree + 1) * (degree + 2) / 2,
                coeffs.len()
            )));
        }
        let f = coeffs[0].field();
        if let Some(x) = coeffs.iter().find(|x| x.field() != f) {
            return Err(Error::FieldMismatch(f, x.field()));
        }
        Ok(PlaneCurve { degree, coeffs })
    }

    pub fn from_ints(field: Field, degree: usize, c: &[i64]) -> PlaneCurve {
        PlaneCurve::new(degree, c.iter().map(|&x| field.int(x)).collect()).unwrap()
    }

    pub fn constant(c: Scalar) -> PlaneCurve {
        PlaneCurve { degree: 0, coeffs: vec![c] }
    }

    /// The coordinate `e_i` as a linear form.
    pub fn coordinate(field: Field, i: usize) -> PlaneCurve {
        let mut c = vec![field.zero(); 3];
        c[i] = field.one();
        PlaneCurve { degree: 1, coeffs: c }
    }

    /// The conic `e1^2 - 4 e0 e2` of double points.
    pub fn veronese_conic(field: Field) -> PlaneCurve {
        // order: e0^2, e0e1, e0e2, e1^2, e1e2, e2^2
        PlaneCurve::from_ints(field, 2, &[0, 0, -4, 1, 0, 0])
    }

    pub fn field(&self) -> Field {
        self.coeffs[0].field()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn to_mpoly(&self) -> MPoly {
        let mut p = MPoly::zero(self.field(), 3);
        for (e, c) in curve_monomials(self.degree).into_iter().zip(&self.coeffs) {
            p.add_term(e.to_vec(), c.clone());
        }
        p
    }

    /// Converts a homogeneous ternary polynomial of the given degree.
    pub fn from_mpoly(p: &MPoly, degree: usize) -> Result<PlaneCurve> {
        if p.nvars() != 3 {
            return Err(Error::InvalidInput("plane curves need three variables".into()));
        }
        if p.terms().any(|(e, _)| e.iter().sum::<u32>() as usize != degree) {
            return Err(Error::DegreeMismatch(format!("polynomial is not homogeneous of degree {degree}")));
        }
        let coeffs = curve_monomials(degree).iter().map(|e| p.coeff(e)).collect();
        PlaneCurve::new(degree, coeffs)
    }

    pub fn mul(&self, o: &PlaneCurve) -> PlaneCurve {
        PlaneCurve::from_mpoly(&(&self.to_mpoly() * &o.to_mpoly()), self.degree + o.degree).unwrap()
    }

    pub fn pow(&self, e: usize) -> PlaneCurve {
        (0..e).fold(PlaneCurve::constant(Scalar::one(self.field())), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &Scalar) -> PlaneCurve {
        PlaneCurve { degree: self.degree, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn eval(&self, e: &[Scalar; 3]) -> Scalar {
        self.to_mpoly().eval(e)
    }

    /// First nonzero coefficient scaled to 1.
    pub fn normalized(&self) -> PlaneCurve {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            None => self.clone(),
            Some(c) => self.scale(&c.inv().unwrap()),
        }
    }

    /// `Some(c)` with `self = c * o`.
    pub fn proportional(&self, o: &PlaneCurve) -> Option<Scalar> {
        if self.degree != o.degree {
            return None;
        }
        proportional_vec(&self.coeffs, &o.coeffs)
    }

    /// `G(su, sv + tu, tv)`.
    pub fn lift(&self) -> BiForm {
        let field = self.field();
        let k = self.degree;
        let x0 = BiForm::from_ints(field, &[&[1, 0], &[0, 0]]);
        let x1 = BiForm::from_ints(field, &[&[0, 1], &[1, 0]]);
        let x2 = BiForm::from_ints(field, &[&[0, 0], &[0, 1]]);
        let pw = |b: &BiForm| -> Vec<BiForm> {
            let mut v = vec![BiForm::from_grid(vec![vec![Scalar::one(field)]]).unwrap()];
            for i in 1..=k {
                let next = v[i - 1].mul(b);
                v.push(next);
            }
            v
        };
        let (p0, p1, p2) = (pw(&x0), pw(&x1), pw(&x2));
        let mut out = BiForm::zero(field, k, k);
        for (e, c) in curve_monomials(k).into_iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let m = p0[e[0] as usize].mul(&p1[e[1] as usize]).mul(&p2[e[2] as usize]);
            out = out.add(&m.scale(c)).unwrap();
        }
        out
    }

    /// The unique curve whose lift is the given symmetric biform.
    pub fn descend(f: &BiForm) -> Result<PlaneCurve> {
        if !f.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let field = f.field();
        let k = f.bidegree().0;
        let monos = curve_monomials(k);
        let rows = (k + 1) * (k + 1);
        let mut a = Matrix::zeros(field, rows, monos.len());
        for (col, _) in monos.iter().enumerate() {
            let mut c = vec![field.zero(); monos.len()];
            c[col] = field.one();
            let lifted = PlaneCurve { degree: k, coeffs: c }.lift();
            for i in 0..=k {
                for j in 0..=k {
                    a.set(i * (k + 1) + j, col, lifted.grid[i][j].clone());
                }
            }
        }
        let b: Vec<Scalar> = f.grid.iter().flatten().cloned().collect();
        let x =
            a.solve(&b).ok_or_else(|| Error::Internal("descent system inconsistent for a symmetric biform".into()))?;
        PlaneCurve::new(k, x)
    }

    /// Value at the point pair `{p, q}`.
    pub fn eval_at_pair(&self, p: &P1Point, q: &P1Point) -> Scalar {
        let e = [&p.s * &q.s, &p.s * &q.t + &p.t * &q.s, &p.t * &q.t];
        self.eval(&e)
    }

    /// `G(p0^2, 2 p0 p1, p1^2)` as a binary form of degree 2k.
    pub fn restrict_to_conic(&self) -> BinaryForm {
        let field = self.field();
        let x0 = BinaryForm::from_ints(field, &[1, 0, 0]);
        let x1 = BinaryForm::from_ints(field, &[0, 2, 0]);
        let x2 = BinaryForm::from_ints(field, &[0, 0, 1]);
        let mut out = BinaryForm::zero(field, 2 * self.degree);
        for (e, c) in curve_monomials(self.degree).into_iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let m = x0.pow(e[0] as usize).mul(&x1.pow(e[1] as usize)).mul(&x2.pow(e[2] as usize));
            out = out.add(&m.scale(c)).unwrap();
        }
        out
    }

    /// `Some(G / C0)` when the Veronese conic divides the curve.
    pub fn conic_quotient(&self) -> Option<PlaneCurve> {
        if self.degree < 2 {
            return None;
        }
        let c0 = PlaneCurve::veronese_conic(self.field()).to_mpoly();
        let (q, r) = self.to_mpoly().div_monic_in(&c0, 1).ok()?;
        if !r.is_zero() {
            return None;
        }
        PlaneCurve::from_mpoly(&q, self.degree - 2).ok()
    }

    /// Reduction of a curve over Q modulo a prime.
    pub fn reduce_mod(&self, p: u64) -> Result<PlaneCurve> {
        let field = Field::prime(p)?;
        let c: Result<Vec<Scalar>> =
            self.coeffs.iter().map(|x| Scalar::from_rational(field, &x.to_bigrational_lift())).collect();
        PlaneCurve::new(self.degree, c?)
    }

    /// The curve of pairs `{p, q}` with `{h p, h q}` on this curve.
    pub fn substitute_pgl2(&self, h: &Mat2) -> Result<PlaneCurve> {
        PlaneCurve::descend(&self.lift().substitute(h))
    }
}

impl fmt::Display for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (e, c) in curve_monomials(self.degree).into_iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let mut m = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => m.push(format!("e{i}")),
                    _ => m.push(format!("e{i}^{k}")),
                }
            }
            let mono = m.join("*");
            parts.push(match (mono.is_empty(), c.is_one()) {
                (true, _) => c.to_string(),
                (false, true) => mono,
                (false, false) => format!("{c}*{mono}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Biform of the curve `G(su, sv + tu, tv)`.
pub fn lift_curve(g: &PlaneCurve) -> BiForm {
    g.lift()
}

/// Unique plane curve lifting to the symmetric biform `f`.
pub fn descend_biform(f: &BiForm) -> Result<PlaneCurve> {
    PlaneCurve::descend(f)
}

/// The SL2-equivariant contraction `S_(m+k) x S_k -> S_m`, `d_h(a) = h(d/dt, -d/ds) a`,
/// i.e. `sum_j (-1)^j h_j d^k a / (dt^(k-j) ds^j)`.
pub fn apolar_contract(a: &BinaryForm, h: &BinaryForm) -> Result<BinaryForm> {
    if a.field() != h.field() {
        return Err(Error::FieldMismatch(a.field(), h.field()));
    }
    let big = a.degree();
    let k = h.degree();
    if k > big {
        return Err(Error::DegreeMismatch(format!("cannot contract degree {big} by degree {k}")));
    }
    let m = big - k;
    let field = a.field();
    let mut out = BinaryForm::zero(field, m);
    for l in 0..=m {
        let mut acc = Scalar::zero(field);
        for j in 0..=k {
            let hj = &h.coeffs[j];
            if hj.is_zero() {
                continue;
            }
            let i = l + k - j;
            let ai = &a.coeffs[i];
            if ai.is_zero() {
                continue;
            }
            // d_s^j d_t^(k-j) of s^(big-i) t^i
            let c = falling(big - i, j) * falling(i, k - j);
            let sign = if j % 2 == 0 { 1 } else { -1 };
            acc += &(hj * ai * Scalar::from_i64(field, sign * c));
        }
        out.coeffs[l] = acc;
    }
    Ok(out)
}

/// Value of a plane curve at the pair `{p, q}`.
pub fn eval_curve_at_pair(g: &PlaneCurve, p: &P1Point, q: &P1Point) -> Scalar {
    g.eval_at_pair(p, q)
}

/// The line of pairs containing `p`: `a^2 e2 - a b e1 + b^2 e0` for `p = (a : b)`.
pub fn tangent_line(p: &P1Point) -> PlaneCurve {
    let (a, b) = (&p.s, &p.t);
    PlaneCurve { degree: 1, coeffs: vec![b * b, -(a * b), a * a] }
}

/// `Some(G / C0)` if the Veronese conic divides `g`.
pub fn conic_divisibility(g: &PlaneCurve) -> Option<PlaneCurve> {
    g.conic_quotient()
}

pub fn restrict_to_conic(g: &PlaneCurve) -> BinaryForm {
    g.restrict_to_conic()
}

/// The binomial coefficients of degree n as scalars.
pub fn binomials(field: Field, n: usize) -> Vec<Scalar> {
    binomial_row(n).into_iter().map(|b| field.int(b as i64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn descend_examples() {
        let f = BiForm::from_ints(q(), &[&[0, 1], &[1, 0]]);
        assert_eq!(descend_biform(&f).unwrap(), PlaneCurve::coordinate(q(), 1));
        let d = BiForm::diagonal(q());
        let c0 = descend_biform(&d.mul(&d)).unwrap();
        assert_eq!(c0, PlaneCurve::veronese_conic(q()));
        let su = BiForm::from_ints(q(), &[&[1, 0], &[0, 0]]);
        assert_eq!(descend_biform(&su).unwrap(), PlaneCurve::coordinate(q(), 0));
        let asym = BiForm::from_ints(q(), &[&[0, 1], &[0, 0]]);
        assert_eq!(descend_biform(&asym), Err(Error::NotSymmetric));
    }

    #[test]
    fn lift_examples() {
        assert_eq!(PlaneCurve::coordinate(q(), 0).lift(), BiForm::from_ints(q(), &[&[1, 0], &[0, 0]]));
        let d = BiForm::diagonal(q());
        assert_eq!(PlaneCurve::veronese_conic(q()).lift(), d.mul(&d));
    }

    #[test]
    fn divide_diagonal_examples() {
        let d = BiForm::diagonal(q());
        let d2 = d.mul(&d);
        assert_eq!(divide_diagonal_sq(&d2).unwrap(), BiForm::from_ints(q(), &[&[1]]));
        // -s^2 t v^3 - t^3 u^2 v + 2 s t^2 u v^2
        let mut g = BiForm::zero(q(), 3, 3);
        g.grid[1][3] = q().int(-1);
        g.grid[3][1] = q().int(-1);
        g.grid[2][2] = q().int(2);
        let tv = BiForm::from_ints(q(), &[&[0, 0], &[0, -1]]);
        assert_eq!(divide_diagonal_sq(&g).unwrap(), tv);
        let su_tv = BiForm::from_ints(q(), &[&[1, 0], &[0, 1]]);
        assert_eq!(divide_diagonal_sq(&d2.mul(&su_tv)).unwrap(), su_tv);
        assert!(matches!(divide_diagonal_sq(&su_tv), Err(Error::InexactDivision(_))));
    }

    #[test]
    fn contraction_examples() {
        let st = BinaryForm::from_ints(q(), &[0, 1, 0]);
        let s = BinaryForm::from_ints(q(), &[1, 0]);
        let t = BinaryForm::from_ints(q(), &[0, 1]);
        assert!(apolar_contract(&st, &s).unwrap().proportional(&s).is_some());
        assert!(apolar_contract(&st, &t).unwrap().proportional(&t).is_some());
        let a = BinaryForm::monomial(q(), 5, 0);
        let h = BinaryForm::monomial(q(), 3, 3);
        let r = apolar_contract(&a, &h).unwrap();
        assert!(r.proportional(&BinaryForm::monomial(q(), 2, 0)).is_some());
        assert!(apolar_contract(&s, &st).is_err());
    }

    #[test]
    fn pair_evaluation_examples() {
        let one = P1Point::ints(q(), 1, 0).unwrap();
        let zero = P1Point::ints(q(), 0, 1).unwrap();
        assert_eq!(eval_curve_at_pair(&PlaneCurve::coordinate(q(), 1), &one, &zero), q().int(1));
        let p = P1Point::ints(q(), 3, -2).unwrap();
        assert!(eval_curve_at_pair(&PlaneCurve::veronese_conic(q()), &p, &p).is_zero());
        assert!(eval_curve_at_pair(&PlaneCurve::coordinate(q(), 2), &one, &p).is_zero());
        assert_eq!(P1Point::ints(q(), 0, 0), Err(Error::ZeroPoint));
    }

    #[test]
    fn tangent_line_examples() {
        assert_eq!(tangent_line(&P1Point::ints(q(), 0, 1).unwrap()), PlaneCurve::coordinate(q(), 0));
        assert_eq!(tangent_line(&P1Point::ints(q(), 1, 0).unwrap()), PlaneCurve::coordinate(q(), 2));
        assert_eq!(tangent_line(&P1Point::ints(q(), 1, 1).unwrap()), PlaneCurve::from_ints(q(), 1, &[1, -1, 1]));
    }

    #[test]
    fn conic_divisibility_examples() {
        let c0 = PlaneCurve::veronese_conic(q());
        assert_eq!(conic_divisibility(&c0), Some(PlaneCurve::constant(q().one())));
        let e0 = PlaneCurve::coordinate(q(), 0);
        assert_eq!(conic_divisibility(&c0.mul(&e0)), Some(e0.clone()));
        let e0e2 = e0.mul(&PlaneCurve::coordinate(q(), 2));
        assert_eq!(conic_divisibility(&e0e2), None);
    }

    #[test]
    fn restriction_examples() {
        assert!(restrict_to_conic(&PlaneCurve::veronese_conic(q())).is_zero());
        assert_eq!(restrict_to_conic(&PlaneCurve::coordinate(q(), 1)), BinaryForm::from_ints(q(), &[0, 2, 0]));
        let e0e2 = PlaneCurve::from_ints(q(), 1, &[1, 0, 1]);
        assert_eq!(restrict_to_conic(&e0e2), BinaryForm::from_ints(q(), &[1, 0, 1]));
    }

    #[test]
    fn gcd_examples() {
        let s2 = BinaryForm::from_ints(q(), &[1, 0, 0]);
        let st = BinaryForm::from_ints(q(), &[0, 1, 0]);
        assert_eq!(poly_gcd(&s2, &st).unwrap(), BinaryForm::from_ints(q(), &[1, 0]));
        let s3 = BinaryForm::monomial(q(), 3, 0);
        let t3 = BinaryForm::monomial(q(), 3, 3);
        assert_eq!(poly_gcd(&s3, &t3).unwrap(), BinaryForm::from_ints(q(), &[1]));
        let smt = BinaryForm::from_ints(q(), &[1, -1]);
        let spt = BinaryForm::from_ints(q(), &[1, 1]);
        let t = BinaryForm::from_ints(q(), &[0, 1]);
        let f = smt.mul(&smt).mul(&spt);
        let g = smt.mul(&t);
        assert_eq!(poly_gcd(&f, &g).unwrap(), smt);
        let z = BinaryForm::zero(q(), 2);
        assert!(poly_gcd(&z, &z).is_err());
        let t2 = BinaryForm::monomial(q(), 2, 2);
        assert_eq!(poly_gcd(&t2, &t.mul(&smt)).unwrap(), t);
    }

    #[test]
    fn substitution_swaps_coordinates() {
        let swap: Mat2 = [[q().zero(), q().one()], [q().one(), q().zero()]];
        let f = BinaryForm::from_ints(q(), &[1, 2, 3]);
        assert_eq!(f.substitute(&swap), BinaryForm::from_ints(q(), &[3, 2, 1]));
        let e0 = PlaneCurve::coordinate(q(), 0);
        assert_eq!(e0.substitute_pgl2(&swap).unwrap(), PlaneCurve::coordinate(q(), 2));
    }

    #[test]
    fn squarefree_part_strips_multiplicity() {
        let smt = BinaryForm::from_ints(q(), &[1, -1]);
        let t = BinaryForm::from_ints(q(), &[0, 1]);
        let f = smt.pow(3).mul(&t.pow(2));
        assert_eq!(f.squarefree_part().unwrap(), smt.mul(&t).normalized());
    }
}
