//! Seeded random surfaces for every stratum, with the data used to build them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::forms::{BinaryForm, P1Point};
use crate::grassmann::{wedge, SurfaceMap};
use crate::matrix::Matrix;

/// Number of draws before a generator gives up.
pub const RETRY_BUDGET: usize = 32;

/// A generated surface together with its construction data.
#[derive(Clone, Debug)]
pub struct Generated {
    pub surface: SurfaceMap,
    pub record: Record,
    /// Index of the accepted draw; 0 means the first draw was valid.
    pub attempts: usize,
}

#[derive(Clone, Debug)]
pub enum Record {
    /// `omega = g1 ^ g2` with `g1` of degree a and `g2` of degree d - a.
    Rows { a: usize, g1: [BinaryForm; 4], g2: [BinaryForm; 4] },
    /// Rows `v`, `w` with `sigma(v, w) = 0` for the standard symplectic form.
    Symplectic { v: [BinaryForm; 4], w: [BinaryForm; 4] },
    /// `omega = alpha e12 + e (u e1 + v e2) ^ (u e3 + v e4)`, `e` the product of the
    /// linear forms vanishing at `e_roots`.
    Rank3 { alpha: BinaryForm, e: BinaryForm, e_roots: Vec<P1Point>, u: BinaryForm, v: BinaryForm },
    /// Tangent lines of the rational curve `c`.
    Developable { curve: [BinaryForm; 4] },
    /// `omega = xi * base`, `xi` the product of the linear forms vanishing at `xi_roots`.
    Boundary { base: SurfaceMap, xi: BinaryForm, xi_roots: Vec<P1Point> },
    /// All lines pass through `vertex`.
    PointCone { vertex: Vec<Scalar> },
    /// All lines lie in the plane with this covector.
    PlaneCone { plane: Vec<Scalar> },
}

/// Deterministic generator stream for a construction tag and its parameters.
pub fn rng_for(seed: u64, tag: &str, params: &[usize]) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in tag.bytes().chain(params.iter().flat_map(|p| (*p as u64).to_le_bytes())) {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// Small integers in `[-9, 9]` over Q, uniform residues over a prime field.
pub fn random_scalar<R: Rng>(field: Field, rng: &mut R) -> Scalar {
    match field {
        Field::Rational => field.int(rng.gen_range(-9..=9)),
        Field::Prime { p } => field.int(rng.gen_range(0..p) as i64),
    }
}

pub fn random_nonzero_scalar<R: Rng>(field: Field, rng: &mut R) -> Scalar {
    loop {
        let c = random_scalar(field, rng);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn random_form<R: Rng>(field: Field, n: usize, rng: &mut R) -> BinaryForm {
    BinaryForm::new((0..=n).map(|_| random_scalar(field, rng)).collect()).unwrap()
}

pub fn random_row<R: Rng>(field: Field, n: usize, rng: &mut R) -> [BinaryForm; 4] {
    std::array::from_fn(|_| random_form(field, n, rng))
}

pub fn random_point<R: Rng>(field: Field, rng: &mut R) -> P1Point {
    loop {
        if let Ok(p) = P1Point::new(random_scalar(field, rng), random_scalar(field, rng)) {
            return p.normalized();
        }
    }
}

/// `n` random points and the product of the linear forms vanishing at them.
pub fn random_split_form<R: Rng>(field: Field, n: usize, rng: &mut R) -> (BinaryForm, Vec<P1Point>) {
    let roots: Vec<P1Point> = (0..n).map(|_| random_point(field, rng)).collect();
    (split_form(field, &roots), roots)
}

/// Product of the linear forms vanishing at the given points.
pub fn split_form(field: Field, roots: &[P1Point]) -> BinaryForm {
    roots.iter().fold(BinaryForm::constant(field.one()), |acc, p| acc.mul(&p.linear_form()))
}

/// An invertible 4x4 matrix.
pub fn random_pgl4<R: Rng>(field: Field, rng: &mut R) -> Matrix {
    loop {
        let rows = (0..4).map(|_| (0..4).map(|_| random_scalar(field, rng)).collect()).collect();
        let m = Matrix::from_rows(field, rows).unwrap();
        if !m.det().unwrap().is_zero() {
            return m;
        }
    }
}

/// An invertible 2x2 matrix.
pub fn random_pgl2<R: Rng>(field: Field, rng: &mut R) -> crate::forms::Mat2 {
    loop {
        let h = [
            [random_scalar(field, rng), random_scalar(field, rng)],
            [random_scalar(field, rng), random_scalar(field, rng)],
        ];
        if !(&h[0][0] * &h[1][1] - &h[0][1] * &h[1][0]).is_zero() {
            return h;
        }
    }
}

fn retry<F>(mut draw: F) -> Result<Generated>
where
    F: FnMut() -> Option<(SurfaceMap, Record)>,
{
    for attempts in 0..RETRY_BUDGET {
        if let Some((surface, record)) = draw() {
            return Ok(Generated { surface, record, attempts });
        }
    }
    Err(Error::RetryBudget(RETRY_BUDGET))
}

fn is_valid(s: &SurfaceMap) -> bool {
    s.validate().in_r_d
}

/// A surface of splitting type `a`, `1 <= a <= d / 2`.
pub fn gen_type_a(field: Field, d: usize, a: usize, seed: u64) -> Result<Generated> {
    if a == 0 || 2 * a > d {
        return Err(Error::InvalidInput(format!("type a = {a} needs 1 <= a <= d/2 for d = {d}")));
    }
    let mut rng = rng_for(seed, "type-a", &[d, a]);
    retry(|| {
        let g1 = random_row(field, a, &mut rng);
        let g2 = random_row(field, d - a, &mut rng);
        let s = SurfaceMap::from_rows(&g1, &g2).ok()?;
        (is_valid(&s) && s.splitting_type().ok()?.a_q == a).then_some((s, Record::Rows { a, g1, g2 }))
    })
}

/// A surface all of whose lines meet the line spanned by `e1, e2`: `g1` has only
/// its first two entries nonzero. Allows `1 <= a <= d - 1`.
pub fn gen_cone(field: Field, d: usize, a: usize, seed: u64) -> Result<Generated> {
    if a == 0 || a >= d {
        return Err(Error::InvalidInput(format!("cone needs 1 <= a <= d-1, got a = {a}, d = {d}")));
    }
    let mut rng = rng_for(seed, "cone", &[d, a]);
    retry(|| {
        let mut g1 = random_row(field, a, &mut rng);
        g1[2] = BinaryForm::zero(field, a);
        g1[3] = BinaryForm::zero(field, a);
        let g2 = random_row(field, d - a, &mut rng);
        let s = SurfaceMap::from_rows(&g1, &g2).ok()?;
        is_valid(&s).then_some((s, Record::Rows { a, g1, g2 }))
    })
}

/// `sigma(x, y) = x1 y2 - x2 y1 + x3 y4 - x4 y3`.
fn symplectic(x: &[BinaryForm; 4], y: &[BinaryForm; 4]) -> BinaryForm {
    let p = |i: usize, j: usize| x[i].mul(&y[j]).sub(&x[j].mul(&y[i])).unwrap();
    p(0, 1).add(&p(2, 3)).unwrap()
}

/// A surface whose lines are isotropic for a symplectic form: the coefficients
/// satisfy `omega12 + omega34 = 0`.
pub fn gen_rank5(field: Field, d: usize, seed: u64) -> Result<Generated> {
    if d < 2 {
        return Err(Error::InvalidInput("rank-5 generator needs d >= 2".into()));
    }
    let k = d / 2;
    let m = d - k;
    let mut rng = rng_for(seed, "rank5", &[d]);
    retry(|| {
        let v = random_row(field, k, &mut rng);
        // w -> sigma(v, w) as a (d+1) x 4(m+1) matrix
        let mut a = Matrix::zeros(field, d + 1, 4 * (m + 1));
        for i in 0..4 {
            for c in 0..=m {
                let mut e: [BinaryForm; 4] = std::array::from_fn(|_| BinaryForm::zero(field, m));
                e[i] = BinaryForm::monomial(field, m, c);
                let img = symplectic(&v, &e);
                for (r, x) in img.coeffs().iter().enumerate() {
                    a.set(r, i * (m + 1) + c, x.clone());
                }
            }
        }
        let ker = a.kernel();
        let mut flat = vec![field.zero(); 4 * (m + 1)];
        for b in &ker {
            let c = random_scalar(field, &mut rng);
            for (x, y) in flat.iter_mut().zip(b) {
                *x += &(&c * y);
            }
        }
        let w: [BinaryForm; 4] =
            std::array::from_fn(|i| BinaryForm::new(flat[i * (m + 1)..(i + 1) * (m + 1)].to_vec()).unwrap());
        let s = SurfaceMap::from_rows(&v, &w).ok()?;
        is_valid(&s).then_some((s, Record::Symplectic { v, w }))
    })
}

/// `omega = alpha e12 + e (u^2 e13 + uv (e14 + e23) + v^2 e24)` with `deg e = d - 2a`.
pub fn gen_rank3(field: Field, d: usize, a: usize, seed: u64) -> Result<Generated> {
    if a == 0 || 2 * a > d {
        return Err(Error::InvalidInput(format!("rank-3 generator needs 1 <= a <= d/2, got a = {a}, d = {d}")));
    }
    let mut rng = rng_for(seed, "rank3", &[d, a]);
    retry(|| {
        let alpha = random_form(field, d, &mut rng);
        let (e, e_roots) = random_split_form(field, d - 2 * a, &mut rng);
        let e = e.scale(&random_nonzero_scalar(field, &mut rng));
        let u = random_form(field, a, &mut rng);
        let v = random_form(field, a, &mut rng);
        let uv = e.mul(&u).mul(&v);
        let forms = vec![alpha.clone(), e.mul(&u.pow(2)), uv.clone(), uv, e.mul(&v.pow(2)), BinaryForm::zero(field, d)];
        let s = SurfaceMap::from_vec(forms).ok()?;
        is_valid(&s).then_some((s, Record::Rank3 { alpha, e, e_roots, u, v }))
    })
}

/// Tangent developable of a random rational curve of degree `e`; degree `2e - 2`.
pub fn gen_developable(field: Field, e: usize, seed: u64) -> Result<Generated> {
    if e < 2 {
        return Err(Error::InvalidInput("developable generator needs curve degree e >= 2".into()));
    }
    let mut rng = rng_for(seed, "developable", &[e]);
    retry(|| {
        let c = random_row(field, e, &mut rng);
        let ds: [BinaryForm; 4] = std::array::from_fn(|i| c[i].derivative_s());
        let dt: [BinaryForm; 4] = std::array::from_fn(|i| c[i].derivative_t());
        let s = SurfaceMap::from_rows(&ds, &dt).ok()?;
        is_valid(&s).then_some((s, Record::Developable { curve: c }))
    })
}

/// Multiplies the six forms of `base` by `xi`.
pub fn boundary_compose(base: &SurfaceMap, xi: &BinaryForm) -> Result<SurfaceMap> {
    base.times(xi)
}

/// `xi * base` with `base` of type `a` and degree `d0`, `xi` split of degree `k`.
pub fn gen_boundary(field: Field, d0: usize, a: usize, k: usize, seed: u64) -> Result<Generated> {
    let base = gen_type_a(field, d0, a, seed)?.surface;
    let mut rng = rng_for(seed, "boundary", &[d0, a, k]);
    let (xi, xi_roots) = random_split_form(field, k, &mut rng);
    let surface = base.times(&xi)?;
    Ok(Generated { surface, record: Record::Boundary { base, xi, xi_roots }, attempts: 0 })
}

/// All lines through a random point.
pub fn gen_point_cone(field: Field, d: usize, seed: u64) -> Result<Generated> {
    let mut rng = rng_for(seed, "point-cone", &[d]);
    retry(|| {
        let vertex: Vec<Scalar> = (0..4).map(|_| random_scalar(field, &mut rng)).collect();
        if vertex.iter().all(Scalar::is_zero) {
            return None;
        }
        let w = random_row(field, d, &mut rng);
        let v: [BinaryForm; 4] = std::array::from_fn(|i| BinaryForm::constant(vertex[i].clone()));
        let s = SurfaceMap::from_rows(&v, &w).ok()?;
        let v = s.validate();
        (v.decomposable && v.base_point_free).then_some((s, Record::PointCone { vertex }))
    })
}

/// All lines in a random plane: the dual of a point cone.
pub fn gen_plane_cone(field: Field, d: usize, seed: u64) -> Result<Generated> {
    let g = gen_point_cone(field, d, seed)?;
    let Record::PointCone { vertex } = g.record else { unreachable!() };
    Ok(Generated { surface: g.surface.dual(), record: Record::PlaneCone { plane: vertex }, attempts: g.attempts })
}

/// `v ^ w` coordinates of two constant vectors, for tests of line incidence.
pub fn constant_line(u: &[Scalar], w: &[Scalar]) -> Result<SurfaceMap> {
    SurfaceMap::from_vec(wedge(u, w).into_iter().map(BinaryForm::constant).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{plucker_quadric, ConeWitness, StabilityClass};

    #[test]
    fn type_a_has_requested_type() {
        for (d, a) in [(3, 1), (4, 2), (6, 3), (5, 2)] {
            let g = gen_type_a(Field::Rational, d, a, 1).unwrap();
            assert_eq!(g.surface.splitting_type().unwrap().a_q, a);
        }
        assert!(gen_type_a(Field::Rational, 5, 3, 1).is_err());
    }

    #[test]
    fn cone_is_semistable_with_e12() {
        let g = gen_cone(Field::Rational, 5, 2, 3).unwrap();
        match g.surface.stability() {
            StabilityClass::StrictlySemistable { kernel_dim, witness } => {
                assert_eq!(kernel_dim, 1);
                let z = witness.unwrap();
                assert!(plucker_quadric(&z).is_zero());
                assert!(z[1..].iter().all(Scalar::is_zero));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rank5_is_stable() {
        let g = gen_rank5(Field::Rational, 7, 2).unwrap();
        assert_eq!(g.surface.stability(), StabilityClass::Stable);
        let ker = g.surface.orthogonal_kernel();
        assert_eq!(ker.len(), 1);
    }

    #[test]
    fn cones_are_unstable() {
        let g = gen_point_cone(Field::Rational, 3, 5).unwrap();
        assert!(matches!(g.surface.stability(), StabilityClass::Unstable(ConeWitness::Point(_))));
        let g = gen_plane_cone(Field::Rational, 3, 5).unwrap();
        assert!(matches!(g.surface.stability(), StabilityClass::Unstable(ConeWitness::Plane(_))));
    }

    #[test]
    fn deterministic_by_seed() {
        let a = gen_type_a(Field::prime(10007).unwrap(), 6, 2, 9).unwrap().surface;
        let b = gen_type_a(Field::prime(10007).unwrap(), 6, 2, 9).unwrap().surface;
        assert_eq!(a, b);
    }

    #[test]
    fn other_generators_are_valid() {
        let f = Field::Rational;
        assert!(gen_rank3(f, 6, 2, 1).unwrap().surface.validate().in_r_d);
        assert!(gen_developable(f, 3, 1).unwrap().surface.validate().in_r_d);
        let b = gen_boundary(f, 4, 2, 2, 1).unwrap();
        assert_eq!(b.surface.degree(), 6);
        assert!(!b.surface.validate().base_point_free);
    }
}
