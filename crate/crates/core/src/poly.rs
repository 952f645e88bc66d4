//! Sparse multivariate and dense univariate polynomials over a field.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Ring;

/// Sparse polynomial in a fixed number of variables; exponent vectors as keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MPoly {
    pub fn zero(field: Field, nvars: usize) -> MPoly {
        MPoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar, nvars: usize) -> MPoly {
        let mut p = MPoly::zero(c.field(), nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(field: Field, nvars: usize, i: usize) -> MPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = MPoly::zero(field, nvars);
        p.add_term(e, Scalar::one(field));
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Scalar) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.field, self.nvars);
        }
        MPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        let mut s = Scalar::zero(self.field);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t *= &xi.pow(k);
                }
            }
            s += &t;
        }
        s
    }

    /// Exact quotient by a polynomial that is monic of degree `deg` in variable `v`
    /// (the coefficient of `x_v^deg` is 1 and no term has higher degree in `x_v`).
    pub fn div_monic_in(&self, divisor: &MPoly, v: usize) -> Result<(MPoly, MPoly)> {
        let deg = divisor.terms.keys().map(|e| e[v]).max().ok_or(Error::ZeroInput("divisor".into()))?;
        let lead: Vec<(Vec<u32>, Scalar)> =
            divisor.terms.iter().filter(|(e, _)| e[v] == deg).map(|(e, c)| (e.clone(), c.clone())).collect();
        let mut unit = vec![0; self.nvars];
        unit[v] = deg;
        if lead.len() != 1 || lead[0].0 != unit || !lead[0].1.is_one() {
            return Err(Error::InvalidInput("divisor is not monic in the chosen variable".into()));
        }
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.field, self.nvars);
        loop {
            let top = rem
                .terms
                .iter()
                .filter(|(e, _)| e[v] >= deg)
                .max_by_key(|(e, _)| e[v])
                .map(|(e, c)| (e.clone(), c.clone()));
            let Some((e, c)) = top else { break };
            let mut qe = e.clone();
            qe[v] -= deg;
            let mut mono = MPoly::zero(self.field, self.nvars);
            mono.add_term(qe.clone(), c.clone());
            quot.add_term(qe, c);
            rem = &rem - &(&mono * divisor);
        }
        Ok((quot, rem))
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { field: self.field, nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let mut r = MPoly::zero(self.field, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }
}

impl Ring for MPoly {
    fn zero_like(&self) -> Self {
        MPoly::zero(self.field, self.nvars)
    }
    fn one_like(&self) -> Self {
        MPoly::constant(Scalar::one(self.field), self.nvars)
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

/// Dense univariate polynomial, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> UniPoly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: Field) -> UniPoly {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(self.field), |acc, c| acc * x + c)
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().unwrap();
                UniPoly::new(self.field, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new(self.field, (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new(self.field, (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut c = vec![Scalar::zero(self.field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += &(a * b);
            }
        }
        UniPoly::new(self.field, c)
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        UniPoly::new(self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = d.degree().ok_or(Error::ZeroInput("division by the zero polynomial".into()))?;
        let inv = d.lead().unwrap().inv().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((UniPoly::zero(self.field), self.clone()));
        }
        let mut q = vec![Scalar::zero(self.field); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &(&c * dj);
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((UniPoly::new(self.field, q), UniPoly::new(self.field, r)))
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.field,
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Scalar::from_i64(self.field, i as i64)).collect(),
        )
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).unwrap();
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Newton interpolation through the given nodes (distinct abscissae).
    pub fn interpolate(field: Field, xs: &[Scalar], ys: &[Scalar]) -> Result<UniPoly> {
        let n = xs.len();
        if ys.len() != n {
            return Err(Error::InvalidInput("interpolation data length mismatch".into()));
        }
        let mut dd = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let den = &xs[i] - &xs[i - j];
                let inv = den.inv().ok_or_else(|| Error::InvalidInput("repeated interpolation node".into()))?;
                dd[i] = (&dd[i] - &dd[i - 1]) * inv;
            }
        }
        let mut p = UniPoly::zero(field);
        for i in (0..n).rev() {
            let lin = UniPoly::new(field, vec![-&xs[i], Scalar::one(field)]);
            p = p.mul(&lin).add(&UniPoly::new(field, vec![dd[i].clone()]));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monic_division_in_a_variable() {
        let q = Field::Rational;
        let x = MPoly::var(q, 2, 0);
        let y = MPoly::var(q, 2, 1);
        let d = &(&x * &x) - &y;
        let f = &(&d * &(&x + &y)) + &y;
        let (quot, rem) = f.div_monic_in(&d, 0).unwrap();
        assert_eq!(quot, &x + &y);
        assert_eq!(rem, y);
    }

    #[test]
    fn univariate_gcd_and_division() {
        let q = Field::Rational;
        let p = |c: &[i64]| UniPoly::new(q, c.iter().map(|&x| q.int(x)).collect());
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        let (qq, r) = p(&[1, 0, 0, 1]).div_rem(&p(&[1, 1])).unwrap();
        assert_eq!(qq, p(&[1, -1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = Field::prime(101).unwrap();
        let poly = UniPoly::new(f, (0..7).map(|i| f.int(3 * i + 1)).collect());
        let xs: Vec<Scalar> = (0..7).map(|i| f.int(i)).collect();
        let ys: Vec<Scalar> = xs.iter().map(|x| poly.eval(x)).collect();
        assert_eq!(UniPoly::interpolate(f, &xs, &ys).unwrap(), poly);
    }
}
