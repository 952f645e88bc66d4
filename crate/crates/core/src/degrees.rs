//! Degrees of symmetric determinantal loci and of the strata images.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn exact_div(num: BigInt, den: BigInt, what: &str) -> Result<BigInt> {
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::Internal(format!("{what}: product is not an integer")));
    }
    Ok(q)
}

/// `prod_(j=0)^(n-r-1) C(n+j, n-r-j) / C(2j+1, j)`: degree of the locus of symmetric
/// forms of rank at most r on an n-dimensional space.
pub fn harris_tu_symmetric(n: usize, r: usize) -> Result<BigInt> {
    if r == 0 || r > n {
        return Err(Error::InvalidInput(format!("Harris-Tu needs 0 < r <= n, got n = {n}, r = {r}")));
    }
    let (n, r) = (n as i64, r as i64);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..n - r {
        num *= binomial(n + j, n - r - j);
        den *= binomial(2 * j + 1, j);
    }
    exact_div(num, den, "Harris-Tu")
}

/// `prod_(k=0)^(d-c) C(d+1+k, d-c+1-k) / C(2k+1, k)`, the shape shared by i, j, k, p.
fn printed_product(d: usize, c: i64) -> Result<BigInt> {
    let d = d as i64;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let mut k = 0;
    while k <= d - c {
        num *= binomial(d + 1 + k, d - c + 1 - k);
        den *= binomial(2 * k + 1, k);
        k += 1;
    }
    exact_div(num, den, "degree table")
}

/// Degrees of the loci where Φ has rank at most 6, 5, 4, 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeTable {
    pub d: usize,
    pub i: BigInt,
    pub j: BigInt,
    pub k: BigInt,
    pub p: BigInt,
}

pub fn degree_table(d: usize) -> Result<DegreeTable> {
    if d < 3 {
        return Err(Error::InvalidInput(format!("degree table needs d >= 3, got {d}")));
    }
    Ok(DegreeTable {
        d,
        i: printed_product(d, 6)?,
        j: printed_product(d, 5)?,
        k: printed_product(d, 4)?,
        p: printed_product(d, 3)?,
    })
}

impl DegreeTable {
    /// Entries agree with Harris-Tu wherever the rank bound does not exceed d + 1.
    pub fn matches_harris_tu(&self) -> Result<bool> {
        let n = self.d + 1;
        for (r, v) in [(6, &self.i), (5, &self.j), (4, &self.k), (3, &self.p)] {
            if r <= n && &harris_tu_symmetric(n, r)? != v {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "d": self.d,
            "i": json_int(&self.i),
            "j": json_int(&self.j),
            "k": json_int(&self.k),
            "p": json_int(&self.p),
        })
    }
}

/// `l(n) = C(2n+1, n+1) / (2n+1)`, the degree of the variety of Poncelet curves of degree n.
pub fn poncelet_degree(n: usize) -> BigInt {
    let n = n as i64;
    exact_div(binomial(2 * n + 1, n + 1), BigInt::from(2 * n + 1), "l(n)").unwrap()
}

/// `C(2d-4, 2a-2) l(a-1) l(d-a-1)`, halved when `a = d/2`.
pub fn m_degree(a: usize, d: usize) -> Result<BigInt> {
    if d < 3 || a == 0 || a >= d {
        return Err(Error::InvalidInput(format!("m(a, d) needs d >= 3 and 1 <= a <= d-1, got a = {a}, d = {d}")));
    }
    let v = binomial(2 * d as i64 - 4, 2 * a as i64 - 2) * poncelet_degree(a - 1) * poncelet_degree(d - a - 1);
    if 2 * a == d {
        exact_div(v, BigInt::from(2), "m(d/2, d)")
    } else {
        Ok(v)
    }
}

/// `2^(d-2a) l(a-1)`: degree of the image of the rank-3 stratum of type a.
pub fn rank3_degree(a: usize, d: usize) -> Result<BigInt> {
    if a == 0 || 2 * a > d {
        return Err(Error::InvalidInput(format!("rank-3 degree needs 1 <= a <= d/2, got a = {a}, d = {d}")));
    }
    Ok(BigInt::from(2).pow((d - 2 * a) as u32) * poncelet_degree(a - 1))
}

/// Degree of the image of the boundary piece `R_(d') x P(S_(d-d'))`:
/// `2^(d-d') C(d+3d'-11, d-d') i(d')` for `d >= 5, d' >= 4`, and 6 for `(4, 3)`.
pub fn boundary_degree(d: usize, d_prime: usize) -> Result<BigInt> {
    if (d, d_prime) == (4, 3) {
        return Ok(BigInt::from(6));
    }
    if d < 5 || d_prime < 4 || d_prime >= d {
        return Err(Error::InvalidInput(format!(
            "boundary degree needs d >= 5 and 4 <= d' < d, got d = {d}, d' = {d_prime}"
        )));
    }
    let (di, dpi) = (d as i64, d_prime as i64);
    let i = printed_product(d_prime, 6)?;
    Ok(BigInt::from(2).pow((d - d_prime) as u32) * binomial(di + 3 * dpi - 11, di - dpi) * i)
}

fn json_int(x: &BigInt) -> serde_json::Value {
    serde_json::Value::Number(x.to_string().parse().expect("integers are valid JSON numbers"))
}

/// The table at `d` with `l(d-2)`, `m(a, d)` for `1 <= a <= d-1` and the defined
/// boundary degrees keyed by `d'`.
pub fn degree_summary(d: usize) -> Result<serde_json::Value> {
    let mut v = degree_table(d)?.to_json();
    v["l"] = json_int(&poncelet_degree(d - 2));
    v["m"] = serde_json::Value::Array((1..d).map(|a| m_degree(a, d).map(|x| json_int(&x))).collect::<Result<_>>()?);
    let boundary: serde_json::Map<String, serde_json::Value> =
        (3..d).filter_map(|dp| boundary_degree(d, dp).ok().map(|b| (dp.to_string(), json_int(&b)))).collect();
    v["boundary"] = serde_json::Value::Object(boundary);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn harris_tu_examples() {
        assert_eq!(harris_tu_symmetric(3, 2).unwrap(), b(3));
        assert_eq!(harris_tu_symmetric(5, 5).unwrap(), b(1));
        assert_eq!(harris_tu_symmetric(4, 3).unwrap(), b(4));
        // quadrics of rank <= 1 on k^3: the Veronese surface
        assert_eq!(harris_tu_symmetric(3, 1).unwrap(), b(4));
        assert!(harris_tu_symmetric(3, 0).is_err());
    }

    #[test]
    fn table_examples() {
        assert_eq!(degree_table(6).unwrap().i, b(7));
        assert_eq!(degree_table(5).unwrap().j, b(6));
        assert_eq!(degree_table(3).unwrap().p, b(4));
    }

    #[test]
    fn small_degrees() {
        assert_eq!([2, 3, 4].map(poncelet_degree), [b(2), b(5), b(14)]);
        assert_eq!(m_degree(2, 5).unwrap(), b(30));
        assert_eq!(boundary_degree(4, 3).unwrap(), b(6));
        assert_eq!(boundary_degree(5, 4).unwrap(), b(12));
        assert!(boundary_degree(5, 3).is_err());
        assert_eq!(rank3_degree(2, 6).unwrap(), b(4));
        assert_eq!(rank3_degree(3, 6).unwrap(), b(2));
    }

    #[test]
    fn table_matches_harris_tu() {
        for d in 3..=30 {
            assert!(degree_table(d).unwrap().matches_harris_tu().unwrap(), "d = {d}");
        }
    }

    #[test]
    fn catalan_and_symmetry() {
        let mut cat = vec![b(1)];
        for n in 1..=20usize {
            let next: BigInt = (0..n).map(|i| &cat[i] * &cat[n - 1 - i]).sum();
            cat.push(next);
        }
        for (n, c) in cat.iter().enumerate() {
            assert_eq!(&poncelet_degree(n), c);
        }
        for d in 3..15 {
            for a in 1..d {
                assert_eq!(m_degree(a, d).unwrap(), m_degree(d - a, d).unwrap());
            }
        }
    }

    #[test]
    fn degree_five_triple() {
        assert_eq!(poncelet_degree(3), b(5));
        assert_eq!(m_degree(2, 5).unwrap(), b(30));
        assert_eq!(boundary_degree(5, 4).unwrap(), b(12));
        assert_eq!(degree_table(6).unwrap().to_json()["i"], serde_json::json!(7));
    }
}
