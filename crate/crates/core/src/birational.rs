//! Even-degree surfaces from rank-4 extension data and the explicit apolarity determinant.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::forms::{apolar_contract, BinaryForm, PlaneCurve};
use crate::generate::{random_form, rng_for};
use crate::grassmann::SurfaceMap;
use crate::matrix::{det, Matrix};
use crate::poly::MPoly;

/// A 2x2 matrix `(a_ij)` of forms of degree `2n - 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionDatum {
    pub n: usize,
    pub a: [[BinaryForm; 2]; 2],
}

impl ExtensionDatum {
    pub fn new(a: [[BinaryForm; 2]; 2]) -> Result<ExtensionDatum> {
        let field = a[0][0].field();
        let deg = a[0][0].degree();
        if !deg.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!("entries must have even degree d - 2, got {deg}")));
        }
        for x in a.iter().flatten() {
            if x.field() != field {
                return Err(Error::FieldMismatch(field, x.field()));
            }
            if x.degree() != deg {
                return Err(Error::DegreeMismatch("extension entries differ in degree".into()));
            }
        }
        if a.iter().flatten().all(|x| x.is_zero()) {
            return Err(Error::ZeroInput("extension datum".into()));
        }
        Ok(ExtensionDatum { n: deg / 2 + 1, a })
    }

    pub fn field(&self) -> Field {
        self.a[0][0].field()
    }

    /// Degree `d = 2n` of the associated surface.
    pub fn surface_degree(&self) -> usize {
        2 * self.n
    }

    /// `(h1, h2) -> (sum_j d_(h_j) a_1j, sum_j d_(h_j) a_2j)` on `S_m + S_m`.
    fn contraction_matrix(&self, m: usize) -> Result<Matrix> {
        let field = self.field();
        let out_deg = 2 * self.n - 2 - m;
        let width = m + 1;
        let mut mat = Matrix::zeros(field, 2 * (out_deg + 1), 2 * width);
        for j in 0..2 {
            for l in 0..width {
                let h = BinaryForm::monomial(field, m, l);
                for i in 0..2 {
                    let c = apolar_contract(&self.a[i][j], &h)?;
                    for (k, v) in c.coeffs().iter().enumerate() {
                        mat.set(i * (out_deg + 1) + k, j * width + l, v.clone());
                    }
                }
            }
        }
        Ok(mat)
    }

    /// Randomly transformed by `GL(U) x GL(W)`: `a -> g a h`.
    pub fn transform(&self, g: &[[Scalar; 2]; 2], h: &[[Scalar; 2]; 2]) -> Result<ExtensionDatum> {
        let field = self.field();
        let deg = 2 * self.n - 2;
        let mut out: [[BinaryForm; 2]; 2] =
            std::array::from_fn(|_| std::array::from_fn(|_| BinaryForm::zero(field, deg)));
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                for k in 0..2 {
                    for l in 0..2 {
                        let c = &g[i][k] * &h[l][j];
                        *entry = entry.add(&self.a[k][l].scale(&c))?;
                    }
                }
            }
        }
        ExtensionDatum::new(out)
    }
}

pub fn random_extension(field: Field, n: usize, seed: u64) -> Result<ExtensionDatum> {
    if n == 0 {
        return Err(Error::InvalidInput("extension needs n >= 1".into()));
    }
    let mut rng = rng_for(seed, "extension", &[n]);
    let a = std::array::from_fn(|_| std::array::from_fn(|_| random_form(field, 2 * n - 2, &mut rng)));
    ExtensionDatum::new(a)
}

/// Whether `W x S_(n-1) -> U x S_(n-1)` is an isomorphism.
pub fn extension_is_trivializable(e: &ExtensionDatum) -> Result<bool> {
    let m = e.contraction_matrix(e.n - 1)?;
    Ok(m.rank() == 2 * e.n)
}

/// The surface of degree `2n` whose sections span the 4-dimensional kernel of
/// `S_n + S_n -> S_(n-2) + S_(n-2)`.
pub fn extension_to_surface(e: &ExtensionDatum) -> Result<SurfaceMap> {
    if !extension_is_trivializable(e)? {
        return Err(Error::Degenerate("extension is not trivializable".into()));
    }
    let field = e.field();
    let n = e.n;
    let kernel =
        if n >= 2 { e.contraction_matrix(n)?.kernel() } else { Matrix::identity(field, 2 * (n + 1)).to_rows() };
    if kernel.len() != 4 {
        return Err(Error::Degenerate(format!("kernel has dimension {}, expected 4", kernel.len())));
    }
    let split = |v: &Vec<Scalar>, half: usize| BinaryForm::new(v[half * (n + 1)..(half + 1) * (n + 1)].to_vec());
    let g1: [BinaryForm; 4] = std::array::from_fn(|k| split(&kernel[k], 0).unwrap());
    let g2: [BinaryForm; 4] = std::array::from_fn(|k| split(&kernel[k], 1).unwrap());
    let psi = SurfaceMap::from_rows(&g1, &g2)?;
    if psi.forms().iter().all(|f| f.is_zero()) {
        return Err(Error::Internal("reconstructed surface is zero".into()));
    }
    Ok(psi)
}

/// Determinant of the composite `W x S_(n-2) x S_2 -> W x S_n -> U x S_(n-2)`, as a
/// `2(n-1) x 2(n-1)` matrix of linear forms in `(e0, e1, e2)`.
pub fn calcexp_curve(e: &ExtensionDatum) -> Result<PlaneCurve> {
    let n = e.n;
    if n < 2 {
        return Err(Error::InvalidInput("the explicit determinant needs n >= 2".into()));
    }
    let field = e.field();
    let size = n - 1;
    // the universal quadric e2 s^2 - e1 s t + e0 t^2, as (monomial index, variable, sign)
    let quadric = [(0usize, 2usize, 1i64), (1, 1, -1), (2, 0, 1)];
    let mut m = vec![vec![MPoly::zero(field, 3); 2 * size]; 2 * size];
    for j in 0..2 {
        for l in 0..size {
            for &(q, var, sign) in &quadric {
                let h = BinaryForm::monomial(field, n, l + q);
                let x = MPoly::var(field, 3, var).scale(&field.int(sign));
                for i in 0..2 {
                    let c = apolar_contract(&e.a[i][j], &h)?;
                    for (k, v) in c.coeffs().iter().enumerate() {
                        if !v.is_zero() {
                            let cell = &mut m[i * size + k][j * size + l];
                            *cell = &*cell + &x.scale(v);
                        }
                    }
                }
            }
        }
    }
    PlaneCurve::from_mpoly(&det(&m)?, 2 * n - 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::locus::psi_biform;

    #[test]
    fn diagonal_monomials_are_not_trivializable() {
        let f = Field::Rational;
        for n in 2..5 {
            let s = BinaryForm::monomial(f, 2 * n - 2, 0);
            let z = BinaryForm::zero(f, 2 * n - 2);
            let e = ExtensionDatum::new([[s.clone(), z.clone()], [z, s]]).unwrap();
            assert!(!extension_is_trivializable(&e).unwrap());
            assert!(extension_to_surface(&e).is_err());
        }
    }

    #[test]
    fn odd_degree_rejected() {
        let f = Field::Rational;
        let x = BinaryForm::from_ints(f, &[1, 2, 3, 4]);
        assert!(ExtensionDatum::new([[x.clone(), x.clone()], [x.clone(), x]]).is_err());
    }

    #[test]
    fn chain_agrees() {
        for field in [Field::Rational, Field::prime(10007).unwrap()] {
            for n in 2..=3 {
                for seed in 0..4 {
                    let e = random_extension(field, n, seed).unwrap();
                    assert!(extension_is_trivializable(&e).unwrap());
                    let psi = extension_to_surface(&e).unwrap();
                    assert!(psi.validate().in_r_d);
                    let st = psi.splitting_type().unwrap();
                    assert_eq!((st.a_q, st.b_k), (n, n));
                    let x = calcexp_curve(&e).unwrap();
                    assert!(!x.is_zero());
                    assert!(x.proportional(&psi_biform(&psi).unwrap()).is_some(), "n = {n}, seed = {seed}");
                }
            }
        }
    }

    #[test]
    fn invariant_under_basis_changes() {
        let f = Field::prime(10007).unwrap();
        let e = random_extension(f, 4, 11).unwrap();
        let g = [[f.int(2), f.int(5)], [f.int(-1), f.int(3)]];
        let h = [[f.int(1), f.int(7)], [f.int(4), f.int(-2)]];
        let moved = e.transform(&g, &h).unwrap();
        let x = calcexp_curve(&e).unwrap();
        assert!(x.proportional(&calcexp_curve(&moved).unwrap()).is_some());
        assert!(x.proportional(&psi_biform(&extension_to_surface(&moved).unwrap()).unwrap()).is_some());
    }
}
