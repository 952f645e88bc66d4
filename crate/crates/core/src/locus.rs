//! The quadratic form Φ(ψ) on S_d and the singular-locus curve Ψ(ψ) in P(S_2).
//!
//! Ψ is computed twice: from the pairing of two generator lines (a biform divided by
//! the square of the diagonal and descended to P(S_2)) and as the determinant of the
//! multiplication-by-quadric map into the quotient of the sections of the quotient
//! bundle by V. Their proportionality is checked rather than assumed.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::forms::{divide_diagonal_sq, BiForm, BinaryForm, PlaneCurve};
use crate::grassmann::{pairing_matrix, SurfaceMap};
use crate::matrix::{det, Matrix};
use crate::poly::MPoly;

/// `M = A Q6 A^T` for the coefficient matrix `A`.
pub fn phi(psi: &SurfaceMap) -> Matrix {
    let a = psi.coefficient_matrix();
    a.mul(&pairing_matrix(psi.field())).unwrap().mul(&a.transpose()).unwrap()
}

pub fn phi_rank(psi: &SurfaceMap) -> usize {
    phi(psi).rank()
}

/// `v(t)^T M v(t)` for `v(t) = (s^d, ..., t^d)`, a form of degree 2d.
pub fn phi_on_normal_curve(m: &Matrix) -> BinaryForm {
    let d = m.rows() - 1;
    let field = m.field();
    let mut c = vec![field.zero(); 2 * d + 1];
    for i in 0..=d {
        for j in 0..=d {
            c[i + j] += m.get(i, j);
        }
    }
    BinaryForm::new(c).unwrap()
}

/// `F(s,t;u,v) = pairing(omega(s,t), omega(u,v))`.
pub fn pairing_biform(psi: &SurfaceMap) -> BiForm {
    let f = psi.forms();
    let field = psi.field();
    let d = psi.degree();
    let mut out = BiForm::zero(field, d, d);
    for (i, j, sign) in [(0, 5, 1), (5, 0, 1), (1, 4, -1), (4, 1, -1), (2, 3, 1), (3, 2, 1)] {
        let term = BiForm::outer(&f[i], &f[j]).scale(&field.int(sign));
        out = out.add(&term).unwrap();
    }
    out
}

/// Ψ through the pairing biform.
pub fn psi_biform(psi: &SurfaceMap) -> Result<PlaneCurve> {
    if !psi.is_decomposable() {
        return Err(Error::InvalidInput("map is not decomposable".into()));
    }
    let f = pairing_biform(psi);
    if f.is_zero() {
        return Err(Error::Degenerate("all generator lines meet: surface or dual is a cone".into()));
    }
    let g = PlaneCurve::descend(&divide_diagonal_sq(&f)?)?;
    if g.is_zero() {
        return Err(Error::Internal("nonzero biform descended to the zero curve".into()));
    }
    Ok(g)
}

/// The universal quadric `e2 s^2 - e1 s t + e0 t^2`, whose roots are the pair
/// `{p, q}` at `e = (p0 q0, p0 q1 + p1 q0, p1 q1)`.
pub fn universal_quadric(field: Field) -> [MPoly; 3] {
    let v = |i| MPoly::var(field, 3, i);
    [v(2), -&v(1), v(0)]
}

/// Ψ as the determinant of `S_(a-2) + S_(d-a-2) -> (S_a + S_(d-a)) / V`, multiplication
/// by the universal quadric.
pub fn psi_determinantal(psi: &SurfaceMap) -> Result<PlaneCurve> {
    let field = psi.field();
    let d = psi.degree();
    let sq = psi.split_quotient()?;
    let a = sq.a;
    let width = d + 2;
    let rows: Vec<Vec<Scalar>> =
        (0..4).map(|j| sq.g1[j].coeffs().iter().chain(sq.g2[j].coeffs()).cloned().collect()).collect();
    let b = Matrix::from_rows(field, rows)?;
    if b.rank() != 4 {
        return Err(Error::Degenerate("V does not inject into the sections of the quotient".into()));
    }
    let p = b.kernel();
    debug_assert_eq!(p.len(), d - 2);
    if d == 2 {
        return Ok(PlaneCurve::constant(field.one()));
    }
    let q = universal_quadric(field);
    // columns: Q_e times the monomials of each block
    let mut cols: Vec<Vec<MPoly>> = Vec::with_capacity(d - 2);
    for (offset, n) in [(0usize, a), (a + 1, d - a)] {
        if n < 2 {
            continue;
        }
        for l in 0..=n - 2 {
            let mut col = vec![MPoly::zero(field, 3); width];
            for (k, qk) in q.iter().enumerate() {
                col[offset + l + k] = qk.clone();
            }
            cols.push(col);
        }
    }
    let m: Vec<Vec<MPoly>> = p
        .iter()
        .map(|y| {
            cols.iter()
                .map(|col| {
                    let mut acc = MPoly::zero(field, 3);
                    for (yi, ci) in y.iter().zip(col) {
                        if !yi.is_zero() && !ci.is_zero() {
                            acc = &acc + &ci.scale(yi);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let g = PlaneCurve::from_mpoly(&det(&m)?, d - 2)?;
    if g.is_zero() {
        return Err(Error::Degenerate("determinant vanishes identically".into()));
    }
    Ok(g)
}

/// Proportionality scalar `c` with `psi_determinantal = c * psi_biform`, if any.
pub fn check_main_theorem(psi: &SurfaceMap) -> Result<Option<Scalar>> {
    let det = psi_determinantal(psi)?;
    let bi = psi_biform(psi)?;
    Ok(det.proportional(&bi))
}

/// Pinch parameters: Ψ restricted to the Veronese conic, a form of degree 2(d - 2).
pub fn pinch_points(psi: &SurfaceMap) -> Result<BinaryForm> {
    let g = psi_biform(psi)?;
    let r = g.restrict_to_conic();
    if r.is_zero() {
        return Err(Error::Degenerate("Ψ contains the Veronese conic: the surface is developable".into()));
    }
    Ok(r)
}

/// Whether the Veronese conic divides Ψ.
pub fn is_developable(psi: &SurfaceMap) -> Result<bool> {
    Ok(psi_biform(psi)?.conic_quotient().is_some())
}

/// The product of the tangent lines at the roots of `xi`, computed as the resultant
/// of `xi` with the universal quadric (so `xi` need not split).
pub fn tangent_product(xi: &BinaryForm) -> Result<PlaneCurve> {
    let field = xi.field();
    let n = xi.degree();
    if xi.is_zero() {
        return Err(Error::ZeroInput("tangent product of the zero form".into()));
    }
    if n == 0 {
        return Ok(PlaneCurve::constant(field.one()));
    }
    let q = universal_quadric(field);
    let size = n + 2;
    let mut m = vec![vec![MPoly::zero(field, 3); size]; size];
    for r in 0..n {
        for (k, qk) in q.iter().enumerate() {
            m[r][r + k] = qk.clone();
        }
    }
    for r in 0..2 {
        for (k, c) in xi.coeffs().iter().enumerate() {
            m[n + r][r + k] = MPoly::constant(c.clone(), 3);
        }
    }
    PlaneCurve::from_mpoly(&det(&m)?, n)
}

/// Ψ(xi * base) against Ψ(base) times the tangent lines at the roots of `xi`.
pub fn boundary_factorization_check(base: &SurfaceMap, xi: &BinaryForm) -> Result<bool> {
    let composed = base.times(xi)?;
    let lhs = psi_biform(&composed)?;
    let rhs = psi_biform(base)?.mul(&tangent_product(xi)?);
    Ok(lhs.proportional(&rhs).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{tangent_line, P1Point};
    use crate::grassmann::worked_example;

    #[test]
    fn worked_phi() {
        let f = Field::Rational;
        let m = phi(&worked_example(f));
        for i in 0..4 {
            for j in 0..4 {
                let want = match (i, j) {
                    (1, 3) | (3, 1) => -1,
                    (2, 2) => 2,
                    _ => 0,
                };
                assert_eq!(m.get(i, j), &f.int(want), "entry ({i},{j})");
            }
        }
        assert_eq!(m.rank(), 3);
        assert!(phi_on_normal_curve(&m).is_zero());
    }

    #[test]
    fn worked_psi() {
        let f = Field::Rational;
        let w = worked_example(f);
        let e2 = PlaneCurve::coordinate(f, 2);
        let bi = psi_biform(&w).unwrap();
        assert!(bi.proportional(&e2).is_some());
        assert_eq!(bi, e2.scale(&f.int(-1)));
        let det = psi_determinantal(&w).unwrap();
        assert!(det.proportional(&e2).is_some());
        assert!(check_main_theorem(&w).unwrap().is_some());
        assert_eq!(pinch_points(&w).unwrap(), BinaryForm::from_ints(f, &[0, 0, -1]));
    }

    #[test]
    fn tangent_product_matches_lines() {
        let f = Field::Rational;
        let pts = [P1Point::ints(f, 1, 2).unwrap(), P1Point::ints(f, 0, 1).unwrap(), P1Point::ints(f, 3, -1).unwrap()];
        let xi = pts.iter().fold(BinaryForm::constant(f.one()), |acc, p| acc.mul(&p.linear_form()));
        let direct = pts.iter().fold(PlaneCurve::constant(f.one()), |acc, p| acc.mul(&tangent_line(p)));
        assert!(tangent_product(&xi).unwrap().proportional(&direct).is_some());
    }

    #[test]
    fn boundary_examples() {
        let f = Field::Rational;
        let w = worked_example(f);
        for xi in
            [BinaryForm::from_ints(f, &[1, 0]), BinaryForm::from_ints(f, &[0, 1, 0]), BinaryForm::constant(f.int(3))]
        {
            assert!(boundary_factorization_check(&w, &xi).unwrap());
        }
    }
}
