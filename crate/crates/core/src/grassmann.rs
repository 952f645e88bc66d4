//! Lines in P3 through Plücker coordinates and maps from P1 to the Grassmannian.
//!
//! Bivectors are stored in the basis `e12, e13, e14, e23, e24, e34`. A decomposable
//! bivector `a ^ b` stands for the line spanned by `a` and `b` in `k^4`.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::forms::{BinaryForm, Mat2, P1Point};
use crate::matrix::Matrix;

/// Prime for the modular dimension bounds: 2^61 - 1.
const CHECK_PRIME: u64 = 2_305_843_009_213_693_951;

#[derive(Clone, Copy)]
enum Module {
    Quotient,
    Kernel,
}

/// Index pairs of the six Plücker coordinates.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Position of `e_i ^ e_j` (i < j) in the coordinate order.
pub fn pair_index(i: usize, j: usize) -> usize {
    PAIRS.iter().position(|&p| p == (i, j)).expect("valid index pair")
}

/// `x12 y34 + x34 y12 - x13 y24 - x24 y13 + x14 y23 + x23 y14`.
pub fn plucker_pairing(x: &[Scalar], y: &[Scalar]) -> Scalar {
    &x[0] * &y[5] + &x[5] * &y[0] - &x[1] * &y[4] - &x[4] * &y[1] + &x[2] * &y[3] + &x[3] * &y[2]
}

/// Half the pairing of a bivector with itself: `x12 x34 - x13 x24 + x14 x23`.
pub fn plucker_quadric(x: &[Scalar]) -> Scalar {
    &x[0] * &x[5] - &x[1] * &x[4] + &x[2] * &x[3]
}

/// Gram matrix of the pairing.
pub fn pairing_matrix(field: Field) -> Matrix {
    let mut m = Matrix::zeros(field, 6, 6);
    for (i, j, v) in [(0, 5, 1), (5, 0, 1), (1, 4, -1), (4, 1, -1), (2, 3, 1), (3, 2, 1)] {
        m.set(i, j, field.int(v));
    }
    m
}

/// Hodge star `(p12,p13,p14,p23,p24,p34) -> (p34,-p24,p23,p14,-p13,p12)`.
pub fn hodge_star(x: &[Scalar]) -> Vec<Scalar> {
    vec![x[5].clone(), -&x[4], x[3].clone(), x[2].clone(), -&x[1], x[0].clone()]
}

/// `u ^ w` for vectors of `k^4`.
pub fn wedge(u: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
    PAIRS.iter().map(|&(i, j)| &u[i] * &w[j] - &u[j] * &w[i]).collect()
}

/// The antisymmetric entry `x_ij` of a bivector, for any `i, j`.
fn entry(x: &[Scalar], i: usize, j: usize) -> Scalar {
    use std::cmp::Ordering::*;
    match i.cmp(&j) {
        Less => x[pair_index(i, j)].clone(),
        Greater => -&x[pair_index(j, i)],
        Equal => Scalar::zero(x[0].field()),
    }
}

/// `e_i^* contracted with x`, a vector of `k^4`.
fn contract_basis(x: &[Scalar], i: usize) -> Vec<Scalar> {
    (0..4).map(|j| entry(x, i, j)).collect()
}

/// Two vectors spanning the line of a nonzero decomposable bivector.
pub fn line_basis(x: &[Scalar]) -> Result<[Vec<Scalar>; 2]> {
    let field = x[0].field();
    if x.iter().all(Scalar::is_zero) {
        return Err(Error::Degenerate("zero bivector has no line".into()));
    }
    if !plucker_quadric(x).is_zero() {
        return Err(Error::InvalidInput("bivector is not decomposable".into()));
    }
    let rows: Vec<Vec<Scalar>> = (0..4).map(|i| contract_basis(x, i)).collect();
    let m = Matrix::from_rows(field, rows.clone())?;
    let (r, pivots) = m.rref();
    if pivots.len() != 2 {
        return Err(Error::Internal("contraction image of a decomposable bivector is not 2-dimensional".into()));
    }
    Ok([r.row(0).to_vec(), r.row(1).to_vec()])
}

/// A morphism from P1 to the Grassmannian of lines, given by six forms of degree d.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceMap {
    forms: [BinaryForm; 6],
}

/// Validity flags of a surface map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    pub decomposable: bool,
    pub base_point_free: bool,
    pub in_r_d: bool,
    pub boundary_factor: Option<BinaryForm>,
}

/// Splitting types: `f*Q = O(a) + O(d-a)` and `f*K = O(-b) + O(-(d-b))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplittingType {
    pub a_q: usize,
    pub b_k: usize,
}

/// Witness of instability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeWitness {
    /// Every line passes through this point.
    Point(Vec<Scalar>),
    /// Every line lies in the plane annihilated by this covector.
    Plane(Vec<Scalar>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilityClass {
    Stable,
    /// `kernel_dim` is the dimension of the space of bivectors orthogonal to every
    /// coefficient of the map; `witness` is an isotropic vector in it when one exists
    /// over the base field.
    StrictlySemistable {
        kernel_dim: usize,
        witness: Option<Vec<Scalar>>,
    },
    Unstable(ConeWitness),
}

impl StabilityClass {
    pub fn name(&self) -> &'static str {
        match self {
            StabilityClass::Stable => "Stable",
            StabilityClass::StrictlySemistable { .. } => "StrictlySemistable",
            StabilityClass::Unstable(_) => "Unstable",
        }
    }
}

/// Generators of `f*Q` as sections: `g1` of degree `a`, `g2` of degree `d - a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitQuotient {
    pub a: usize,
    pub g1: [BinaryForm; 4],
    pub g2: [BinaryForm; 4],
    /// `g1 ^ g2 = scalar * omega`.
    pub scalar: Scalar,
}

impl SurfaceMap {
    pub fn new(forms: [BinaryForm; 6]) -> Result<SurfaceMap> {
        let d = forms[0].degree();
        let field = forms[0].field();
        for f in &forms {
            if f.degree() != d {
                return Err(Error::DegreeMismatch("the six forms must share one degree".into()));
            }
            if f.field() != field {
                return Err(Error::FieldMismatch(field, f.field()));
            }
        }
        if forms.iter().all(BinaryForm::is_zero) {
            return Err(Error::ZeroInput("all six Plücker forms vanish".into()));
        }
        Ok(SurfaceMap { forms })
    }

    pub fn from_vec(forms: Vec<BinaryForm>) -> Result<SurfaceMap> {
        let arr: [BinaryForm; 6] =
            forms.try_into().map_err(|_| Error::InvalidInput("a surface map needs exactly six forms".into()))?;
        SurfaceMap::new(arr)
    }

    /// The surface of lines spanned by the rows `g1(t), g2(t)`: the 2x2 minors.
    pub fn from_rows(g1: &[BinaryForm; 4], g2: &[BinaryForm; 4]) -> Result<SurfaceMap> {
        let forms: Vec<BinaryForm> =
            PAIRS.iter().map(|&(i, j)| g1[i].mul(&g2[j]).sub(&g1[j].mul(&g2[i])).unwrap()).collect();
        SurfaceMap::from_vec(forms)
    }

    pub fn degree(&self) -> usize {
        self.forms[0].degree()
    }

    pub fn field(&self) -> Field {
        self.forms[0].field()
    }

    pub fn forms(&self) -> &[BinaryForm; 6] {
        &self.forms
    }

    /// Coefficient bivector of `s^(d-k) t^k`.
    pub fn coefficient(&self, k: usize) -> Vec<Scalar> {
        self.forms.iter().map(|f| f.coeff(k).clone()).collect()
    }

    /// The (d+1) x 6 coefficient matrix.
    pub fn coefficient_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field(), (0..=self.degree()).map(|k| self.coefficient(k)).collect()).unwrap()
    }

    pub fn eval(&self, p: &P1Point) -> Vec<Scalar> {
        self.forms.iter().map(|f| f.eval_at(p)).collect()
    }

    /// `w12 w34 - w13 w24 + w14 w23`, a form of degree 2d.
    pub fn isotropy_form(&self) -> BinaryForm {
        let f = &self.forms;
        f[0].mul(&f[5]).sub(&f[1].mul(&f[4])).unwrap().add(&f[2].mul(&f[3])).unwrap()
    }

    pub fn is_decomposable(&self) -> bool {
        self.isotropy_form().is_zero()
    }

    /// Normalized gcd of the six forms.
    pub fn content(&self) -> BinaryForm {
        let mut g = self.forms[0].clone();
        for f in &self.forms[1..] {
            g = match g.gcd(f) {
                Ok(x) => x,
                Err(_) => g,
            };
        }
        g.normalized()
    }

    pub fn validate(&self) -> ValidityReport {
        let decomposable = self.is_decomposable();
        let g = self.content();
        let base_point_free = g.degree() == 0;
        let in_r_d = decomposable && base_point_free && !matches!(self.stability(), StabilityClass::Unstable(_));
        ValidityReport { decomposable, base_point_free, in_r_d, boundary_factor: (!base_point_free).then_some(g) }
    }

    fn require_in_r_d(&self) -> Result<()> {
        let v = self.validate();
        if !v.decomposable {
            return Err(Error::InvalidInput("map is not decomposable".into()));
        }
        if !v.base_point_free {
            return Err(Error::Degenerate("map has base points".into()));
        }
        if !v.in_r_d {
            return Err(Error::Degenerate("surface or its dual is a cone".into()));
        }
        Ok(())
    }

    /// Basis of the line at `t0`.
    pub fn generator_line(&self, t0: &P1Point) -> Result<[Vec<Scalar>; 2]> {
        let w = self.eval(t0);
        if w.iter().all(Scalar::is_zero) {
            return Err(Error::Degenerate(format!("base point at {t0}")));
        }
        line_basis(&w)
    }

    /// Whether the lines at `s0` and `t0` meet.
    pub fn lines_meet(&self, s0: &P1Point, t0: &P1Point) -> Result<bool> {
        let a = self.eval(s0);
        let b = self.eval(t0);
        if a.iter().all(Scalar::is_zero) || b.iter().all(Scalar::is_zero) {
            return Err(Error::Degenerate("base point".into()));
        }
        Ok(plucker_pairing(&a, &b).is_zero())
    }

    /// The same predicate through the determinant of the four spanning vectors.
    pub fn lines_meet_by_determinant(&self, s0: &P1Point, t0: &P1Point) -> Result<bool> {
        let [a, b] = self.generator_line(s0)?;
        let [c, d] = self.generator_line(t0)?;
        let m = Matrix::from_rows(self.field(), vec![a, b, c, d])?;
        Ok(m.det()?.is_zero())
    }

    pub fn dual(&self) -> SurfaceMap {
        let f = &self.forms;
        let neg = |x: &BinaryForm| x.scale(&-Scalar::one(x.field()));
        SurfaceMap { forms: [f[5].clone(), neg(&f[4]), f[3].clone(), f[2].clone(), neg(&f[1]), f[0].clone()] }
    }

    /// Applies the second exterior power of an invertible 4x4 matrix.
    pub fn act_pgl4(&self, g: &Matrix) -> Result<SurfaceMap> {
        if g.rows() != 4 || g.cols() != 4 {
            return Err(Error::InvalidInput("PGL4 element must be 4x4".into()));
        }
        if g.field() != self.field() {
            return Err(Error::FieldMismatch(self.field(), g.field()));
        }
        if g.det()?.is_zero() {
            return Err(Error::Singular);
        }
        let field = self.field();
        let d = self.degree();
        let mut out: Vec<BinaryForm> = Vec::with_capacity(6);
        for &(a, b) in &PAIRS {
            let mut f = BinaryForm::zero(field, d);
            for (k, &(c, e)) in PAIRS.iter().enumerate() {
                let minor = g.get(a, c) * g.get(b, e) - g.get(a, e) * g.get(b, c);
                if !minor.is_zero() {
                    f = f.add(&self.forms[k].scale(&minor))?;
                }
            }
            out.push(f);
        }
        SurfaceMap::from_vec(out)
    }

    /// Substitutes `(s, t) -> h (s, t)` in all six forms.
    pub fn act_pgl2(&self, h: &Mat2) -> Result<SurfaceMap> {
        let det = &h[0][0] * &h[1][1] - &h[0][1] * &h[1][0];
        if det.is_zero() {
            return Err(Error::Singular);
        }
        SurfaceMap::from_vec(self.forms.iter().map(|f| f.substitute(h)).collect())
    }

    /// Multiplies all six forms by `xi`.
    pub fn times(&self, xi: &BinaryForm) -> Result<SurfaceMap> {
        if xi.is_zero() {
            return Err(Error::ZeroInput("boundary factor".into()));
        }
        SurfaceMap::from_vec(self.forms.iter().map(|f| f.mul(xi)).collect())
    }

    fn quotient_components(&self) -> Vec<Vec<(usize, Scalar, usize)>> {
        let one = Scalar::one(self.field());
        [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
            .iter()
            .map(|&(a, b, c)| {
                vec![
                    (a, one.clone(), pair_index(b, c)),
                    (b, -&one, pair_index(a, c)),
                    (c, one.clone(), pair_index(a, b)),
                ]
            })
            .collect()
    }

    fn kernel_components(&self) -> Vec<Vec<(usize, Scalar, usize)>> {
        let one = Scalar::one(self.field());
        (0..4)
            .map(|j| {
                (0..4)
                    .filter(|&i| i != j)
                    .map(|i| if i < j { (i, one.clone(), pair_index(i, j)) } else { (i, -&one, pair_index(j, i)) })
                    .collect()
            })
            .collect()
    }

    /// Polynomial vectors `u` of degree m with `u ^ omega = 0` (rows of the quotient).
    pub fn quotient_sections(&self, m: usize) -> Vec<[BinaryForm; 4]> {
        split_vectors(self.graded_matrix(m, &self.quotient_components()).kernel(), m)
    }

    /// Polynomial covectors `x` of degree m with `x contracted into omega = 0`.
    pub fn kernel_sections(&self, m: usize) -> Vec<[BinaryForm; 4]> {
        split_vectors(self.graded_matrix(m, &self.kernel_components()).kernel(), m)
    }

    /// Matrix of `u -> (sum sign * u_var * omega_idx)` on vectors of forms of degree m.
    fn graded_matrix(&self, m: usize, comps: &[Vec<(usize, Scalar, usize)>]) -> Matrix {
        let field = self.field();
        let d = self.degree();
        let out_len = m + d + 1;
        let mut a = Matrix::zeros(field, comps.len() * out_len, 4 * (m + 1));
        for (ci, comp) in comps.iter().enumerate() {
            for (var, sign, idx) in comp {
                let w = &self.forms[*idx];
                for c in 0..=m {
                    for (k, wk) in w.coeffs().iter().enumerate() {
                        if wk.is_zero() {
                            continue;
                        }
                        let r = ci * out_len + c + k;
                        let col = var * (m + 1) + c;
                        let v = a.get(r, col) + &(sign * wk);
                        a.set(r, col, v);
                    }
                }
            }
        }
        a
    }

    fn graded_dim(&self, m: usize, comps: &[Vec<(usize, Scalar, usize)>]) -> usize {
        4 * (m + 1) - self.graded_matrix(m, comps).rank()
    }

    /// Reduction of a map over Q modulo a prime.
    pub fn reduce_mod(&self, p: u64) -> Result<SurfaceMap> {
        let field = Field::prime(p)?;
        let forms: Result<Vec<BinaryForm>> = self
            .forms
            .iter()
            .map(|f| {
                let c: Result<Vec<Scalar>> =
                    f.coeffs().iter().map(|x| Scalar::from_rational(field, &x.to_bigrational_lift())).collect();
                BinaryForm::new(c?)
            })
            .collect();
        SurfaceMap::from_vec(forms?)
    }

    fn components(&self, module: Module) -> Vec<Vec<(usize, Scalar, usize)>> {
        match module {
            Module::Quotient => self.quotient_components(),
            Module::Kernel => self.kernel_components(),
        }
    }

    fn graded_dims(&self, module: Module) -> Vec<usize> {
        let comps = self.components(module);
        (0..=self.degree()).map(|m| self.graded_dim(m, &comps)).collect()
    }

    /// Least degree with a section, after checking the dimensions against the
    /// two-summand model.
    fn type_from_dims(&self, dims: &[usize]) -> Result<usize> {
        let d = self.degree();
        let a = dims.iter().position(|&x| x > 0).ok_or_else(|| Error::Internal("no section up to degree d".into()))?;
        let model = |m: usize| (m + 1).saturating_sub(a) + (m + 1).saturating_sub(d - a);
        match (0..=d).find(|&m| dims[m] != model(m)) {
            Some(m) => Err(Error::Internal(format!("Hilbert function mismatch in degree {m}"))),
            None => Ok(a),
        }
    }

    /// Sections of degree `lo` and `d - lo` whose wedge is not identically zero.
    fn generators(&self, lo: usize, module: Module) -> Option<([BinaryForm; 4], [BinaryForm; 4])> {
        let d = self.degree();
        let comps = self.components(module);
        let low = split_vectors(self.graded_matrix(lo, &comps).kernel(), lo);
        let independent = |x: &[BinaryForm; 4], y: &[BinaryForm; 4]| SurfaceMap::from_rows(x, y).is_ok();
        if 2 * lo == d {
            return (low.len() == 2 && independent(&low[0], &low[1])).then(|| (low[0].clone(), low[1].clone()));
        }
        let g1 = low.into_iter().next()?;
        let high = split_vectors(self.graded_matrix(d - lo, &comps).kernel(), d - lo);
        let g2 = high.into_iter().find(|h| independent(&g1, h))?;
        Some((g1, g2))
    }

    /// Splitting degree and generators of a rank-2 graded module.
    ///
    /// Dimensions mod a prime bound the true ones from above; two generators with a
    /// nonzero wedge span submodules whose dimensions meet the bound from below.
    fn split_module(&self, module: Module) -> Result<(usize, [BinaryForm; 4], [BinaryForm; 4])> {
        let modular = match self.field() {
            Field::Rational => {
                self.reduce_mod(CHECK_PRIME).ok().and_then(|r| r.type_from_dims(&r.graded_dims(module)).ok())
            }
            Field::Prime { .. } => Some(self.type_from_dims(&self.graded_dims(module))?),
        };
        if let Some(a) = modular {
            if let Some((g1, g2)) = self.generators(a, module) {
                return Ok((a, g1, g2));
            }
        }
        let a = self.type_from_dims(&self.graded_dims(module))?;
        let (g1, g2) = self.generators(a, module).ok_or_else(|| Error::Internal("generators not found".into()))?;
        Ok((a, g1, g2))
    }

    pub fn splitting_type(&self) -> Result<SplittingType> {
        self.require_in_r_d()?;
        let (a_q, _, _) = self.split_module(Module::Quotient)?;
        let (b_k, _, _) = self.split_module(Module::Kernel)?;
        Ok(SplittingType { a_q, b_k })
    }

    /// Splitting type from the full Hilbert functions, without the modular shortcut.
    pub fn splitting_type_exact(&self) -> Result<SplittingType> {
        self.require_in_r_d()?;
        Ok(SplittingType {
            a_q: self.type_from_dims(&self.graded_dims(Module::Quotient))?,
            b_k: self.type_from_dims(&self.graded_dims(Module::Kernel))?,
        })
    }

    pub fn split_quotient(&self) -> Result<SplitQuotient> {
        self.require_in_r_d()?;
        let (a, g1, g2) = self.split_module(Module::Quotient)?;
        let chi = SurfaceMap::from_rows(&g1, &g2)?;
        let scalar = proportional_maps(&chi, self)
            .ok_or_else(|| Error::Internal("minors of the generators are not proportional to the map".into()))?;
        Ok(SplitQuotient { a, g1, g2, scalar })
    }

    /// Bivectors orthogonal to every coefficient of the map.
    pub fn orthogonal_kernel(&self) -> Vec<Vec<Scalar>> {
        let q6 = pairing_matrix(self.field());
        self.coefficient_matrix().mul(&q6).unwrap().kernel()
    }

    fn cone_point(&self) -> Option<Vec<Scalar>> {
        let field = self.field();
        let d = self.degree();
        let mut rows = Vec::new();
        for k in 0..=d {
            let c = self.coefficient(k);
            for i in 0..4 {
                rows.push(
                    (0..4)
                        .map(|l| {
                            let mut v = vec![field.zero(); 4];
                            let mut e = vec![field.zero(); 4];
                            v[l] = field.one();
                            e[i] = field.one();
                            plucker_pairing(&c, &wedge(&v, &e))
                        })
                        .collect(),
                );
            }
        }
        Matrix::from_rows(field, rows).unwrap().kernel().into_iter().next()
    }

    pub fn stability(&self) -> StabilityClass {
        if let Some(v) = self.cone_point() {
            return StabilityClass::Unstable(ConeWitness::Point(v));
        }
        if let Some(v) = self.dual().cone_point() {
            return StabilityClass::Unstable(ConeWitness::Plane(v));
        }
        let ker = self.orthogonal_kernel();
        match ker.len() {
            0 => StabilityClass::Stable,
            1 => {
                if plucker_quadric(&ker[0]).is_zero() {
                    StabilityClass::StrictlySemistable { kernel_dim: 1, witness: Some(ker[0].clone()) }
                } else {
                    StabilityClass::Stable
                }
            }
            k => StabilityClass::StrictlySemistable { kernel_dim: k, witness: isotropic_vector(&ker) },
        }
    }

    /// Whether the map is proportional to another (same field and degree).
    pub fn proportional(&self, o: &SurfaceMap) -> Option<Scalar> {
        proportional_maps(self, o)
    }
}

fn split_vectors(vs: Vec<Vec<Scalar>>, m: usize) -> Vec<[BinaryForm; 4]> {
    vs.into_iter()
        .map(|v| std::array::from_fn(|i| BinaryForm::new(v[i * (m + 1)..(i + 1) * (m + 1)].to_vec()).unwrap()))
        .collect()
}

fn proportional_maps(a: &SurfaceMap, b: &SurfaceMap) -> Option<Scalar> {
    if a.degree() != b.degree() {
        return None;
    }
    let x: Vec<Scalar> = a.forms.iter().flat_map(|f| f.coeffs().iter().cloned()).collect();
    let y: Vec<Scalar> = b.forms.iter().flat_map(|f| f.coeffs().iter().cloned()).collect();
    crate::forms::proportional_vec(&x, &y)
}

/// A nonzero isotropic vector in the span of `basis`, when one exists over the base field.
pub fn isotropic_vector(basis: &[Vec<Scalar>]) -> Option<Vec<Scalar>> {
    if let Some(v) = basis.iter().find(|v| plucker_quadric(v).is_zero()) {
        return Some(v.clone());
    }
    let field = basis.first()?[0].field();
    // a radical vector of the restricted form is isotropic
    let gram: Vec<Vec<Scalar>> = basis.iter().map(|x| basis.iter().map(|y| plucker_pairing(x, y)).collect()).collect();
    let g = Matrix::from_rows(field, gram).ok()?;
    if let Some(c) = g.kernel().into_iter().next() {
        return Some(combine(basis, &c));
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (x, y) = (&basis[i], &basis[j]);
            let qx = plucker_quadric(x);
            let qy = plucker_quadric(y);
            let b = plucker_pairing(x, y);
            // q(x + l y) = qx + l b + l^2 qy
            let disc = &b * &b - Scalar::from_i64(field, 4) * &qx * &qy;
            if let Some(r) = disc.sqrt() {
                let l = (-&b + r) / (Scalar::from_i64(field, 2) * &qy);
                let v: Vec<Scalar> = x.iter().zip(y).map(|(a, c)| a + &l * c).collect();
                if plucker_quadric(&v).is_zero() && !v.iter().all(Scalar::is_zero) {
                    return Some(v);
                }
            }
        }
    }
    None
}

fn combine(basis: &[Vec<Scalar>], c: &[Scalar]) -> Vec<Scalar> {
    let field = basis[0][0].field();
    let mut v = vec![field.zero(); basis[0].len()];
    for (b, ci) in basis.iter().zip(c) {
        for (x, y) in v.iter_mut().zip(b) {
            *x += &(ci * y);
        }
    }
    v
}

/// The map `(s^3, s^2 t, s t^2, s t^2, t^3, 0)`.
pub fn worked_example(field: Field) -> SurfaceMap {
    let m = |i| BinaryForm::monomial(field, 3, i);
    SurfaceMap::new([m(0), m(1), m(2), m(2), m(3), BinaryForm::zero(field, 3)]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn unit(i: usize) -> Vec<Scalar> {
        let mut v = vec![q().zero(); 6];
        v[i] = q().one();
        v
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(plucker_pairing(&unit(0), &unit(5)), q().int(1));
        assert_eq!(plucker_pairing(&unit(1), &unit(4)), q().int(-1));
        assert_eq!(plucker_pairing(&unit(0), &unit(0)), q().int(0));
    }

    #[test]
    fn worked_example_validity() {
        let w = worked_example(q());
        let v = w.validate();
        assert!(v.decomposable && v.base_point_free && v.in_r_d);
        assert_eq!(v.boundary_factor, None);
        assert_eq!(w.splitting_type().unwrap().a_q, 1);
        let one_zero = P1Point::ints(q(), 1, 0).unwrap();
        let [a, b] = w.generator_line(&one_zero).unwrap();
        let span = Matrix::from_rows(q(), vec![a, b]).unwrap().rref().0;
        assert_eq!(span.row(0), &[q().one(), q().zero(), q().zero(), q().zero()]);
        assert_eq!(span.row(1), &[q().zero(), q().one(), q().zero(), q().zero()]);
    }

    #[test]
    fn worked_example_stability() {
        match worked_example(q()).stability() {
            StabilityClass::StrictlySemistable { kernel_dim, witness } => {
                assert_eq!(kernel_dim, 2);
                assert!(plucker_quadric(&witness.unwrap()).is_zero());
            }
            other => panic!("unexpected {other:?}"),
        }
        let lit = worked_example(q()).coefficient_matrix().kernel();
        let span = Matrix::from_rows(q(), lit).unwrap().rref().0;
        // span{e34, e14 - e23}
        assert_eq!(span.rows(), 2);
        assert_eq!(span.row(0), &[q().zero(), q().zero(), q().one(), q().int(-1), q().zero(), q().zero()]);
        assert_eq!(span.row(1), &unit(5)[..]);
    }

    #[test]
    fn point_cone_is_unstable() {
        let f = q();
        let v0 = BinaryForm::constant(f.one());
        let z = BinaryForm::constant(f.zero());
        let w = [
            BinaryForm::from_ints(f, &[1, 0, 2]),
            BinaryForm::from_ints(f, &[0, 1, 0]),
            BinaryForm::from_ints(f, &[1, 1, 0]),
            BinaryForm::from_ints(f, &[0, 0, 1]),
        ];
        let map = SurfaceMap::from_rows(&[v0, z.clone(), z.clone(), z], &w).unwrap();
        let v = map.validate();
        assert!(v.decomposable && !v.in_r_d);
        match map.stability() {
            StabilityClass::Unstable(ConeWitness::Point(p)) => {
                assert!(!p[0].is_zero());
                assert!(p[1..].iter().all(Scalar::is_zero));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn boundary_factor_reported() {
        let s = BinaryForm::from_ints(q(), &[1, 0]);
        let v = worked_example(q()).times(&s).unwrap().validate();
        assert!(!v.base_point_free && !v.in_r_d);
        assert_eq!(v.boundary_factor, Some(s));
    }

    #[test]
    fn meets_examples() {
        let f = q();
        let p = P1Point::ints(f, 2, 3).unwrap();
        let w = worked_example(f);
        assert!(w.lines_meet(&p, &p).unwrap());
        assert!(w.lines_meet_by_determinant(&p, &p).unwrap());
        let [a, b] = line_basis(&unit(0)).unwrap();
        let [c, d] = line_basis(&unit(5)).unwrap();
        assert!(!Matrix::from_rows(f, vec![a.clone(), b.clone(), c, d]).unwrap().det().unwrap().is_zero());
        let [c, d] = line_basis(&unit(1)).unwrap();
        assert!(Matrix::from_rows(f, vec![a, b, c, d]).unwrap().det().unwrap().is_zero());
        let mut bad = unit(0);
        bad[5] = f.one();
        assert!(line_basis(&bad).is_err());
    }

    #[test]
    fn dual_and_actions() {
        let f = q();
        let w = worked_example(f);
        assert_eq!(w.dual().dual(), w);
        let e12 = SurfaceMap::new([
            BinaryForm::constant(f.one()),
            BinaryForm::constant(f.zero()),
            BinaryForm::constant(f.zero()),
            BinaryForm::constant(f.zero()),
            BinaryForm::constant(f.zero()),
            BinaryForm::constant(f.zero()),
        ])
        .unwrap();
        assert_eq!(e12.dual().forms()[5], BinaryForm::constant(f.one()));
        assert_eq!(w.act_pgl4(&Matrix::identity(f, 4)).unwrap(), w);
        let mut g = Matrix::identity(f, 4);
        g.set(3, 3, f.int(5));
        let h = w.act_pgl4(&g).unwrap();
        assert_eq!(h.forms()[0], w.forms()[0]);
        assert_eq!(h.forms()[2], w.forms()[2].scale(&f.int(5)));
        assert_eq!(w.act_pgl4(&Matrix::zeros(f, 4, 4)), Err(Error::Singular));
        let swap: Mat2 = [[f.zero(), f.one()], [f.one(), f.zero()]];
        let sw = w.act_pgl2(&swap).unwrap();
        assert_eq!(sw.forms()[0], BinaryForm::monomial(f, 3, 3));
    }

    #[test]
    fn split_quotient_reconstructs() {
        let w = worked_example(q());
        let sq = w.split_quotient().unwrap();
        assert_eq!(sq.a, 1);
        assert_eq!(w.splitting_type().unwrap(), w.splitting_type_exact().unwrap());
        let chi = SurfaceMap::from_rows(&sq.g1, &sq.g2).unwrap();
        assert_eq!(chi, w.scale_for_test(&sq.scalar));
    }

    impl SurfaceMap {
        fn scale_for_test(&self, c: &Scalar) -> SurfaceMap {
            SurfaceMap::from_vec(self.forms.iter().map(|f| f.scale(c)).collect()).unwrap()
        }
    }
}
