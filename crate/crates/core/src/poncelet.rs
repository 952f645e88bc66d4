//! Poncelet curves of pencils of binary forms, factorization checks for the cone
//! strata, and Poncelet triangles of plane cubics.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::forms::{tangent_line, BiForm, BinaryForm, P1Point, PlaneCurve};
use crate::generate::{random_point, random_scalar, rng_for, Generated, Record};
use crate::grassmann::SurfaceMap;
use crate::locus::{phi_rank, psi_biform, tangent_product};
use crate::matrix::Matrix;
use crate::poly::UniPoly;

/// Two independent binary forms of degree n + 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    f: BinaryForm,
    g: BinaryForm,
}

impl Pencil {
    pub fn new(f: BinaryForm, g: BinaryForm) -> Result<Pencil> {
        if f.degree() != g.degree() {
            return Err(Error::DegreeMismatch("pencil members must share one degree".into()));
        }
        if f.field() != g.field() {
            return Err(Error::FieldMismatch(f.field(), g.field()));
        }
        if f.degree() == 0 {
            return Err(Error::InvalidInput("pencil members must have positive degree".into()));
        }
        let m = Matrix::from_rows(f.field(), vec![f.coeffs().to_vec(), g.coeffs().to_vec()])?;
        if m.rank() < 2 {
            return Err(Error::Degenerate("pencil members are dependent".into()));
        }
        Ok(Pencil { f, g })
    }

    pub fn members(&self) -> (&BinaryForm, &BinaryForm) {
        (&self.f, &self.g)
    }

    /// Degree of the Poncelet curve.
    pub fn n(&self) -> usize {
        self.f.degree() - 1
    }
}

/// `(f(s,t) g(u,v) - f(u,v) g(s,t)) / (sv - tu)`, descended to P(S_2).
pub fn poncelet_curve(p: &Pencil) -> Result<PlaneCurve> {
    let b = BiForm::outer(&p.f, &p.g).sub(&BiForm::outer(&p.g, &p.f))?;
    let q = b.divide_diagonal().map_err(|_| Error::Internal("Bezoutian not divisible by the diagonal".into()))?;
    PlaneCurve::descend(&q)
}

/// Ψ of a cone against the product of the Poncelet curves of the pencils
/// `{g1_1, g1_2}` and `{g2_3, g2_4}`.
pub fn cone_factorization_check(psi: &SurfaceMap, record: &Record) -> Result<bool> {
    let Record::Rows { g1, g2, .. } = record else {
        return Err(Error::InvalidInput("cone factorization needs recorded rows".into()));
    };
    if !(g1[2].is_zero() && g1[3].is_zero()) {
        return Err(Error::InvalidInput("first row must vanish on e3 and e4".into()));
    }
    let left = poncelet_curve(&Pencil::new(g1[0].clone(), g1[1].clone())?)?;
    let right = poncelet_curve(&Pencil::new(g2[2].clone(), g2[3].clone())?)?;
    Ok(psi_biform(psi)?.proportional(&left.mul(&right)).is_some())
}

/// Ψ of a rank-3 surface against the tangent lines at the roots of `e` times the
/// square of the Poncelet curve of `{u, v}`.
pub fn rank3_factorization_check(psi: &SurfaceMap, record: &Record) -> Result<bool> {
    let Record::Rank3 { e, e_roots, u, v, .. } = record else {
        return Err(Error::InvalidInput("rank-3 factorization needs recorded data".into()));
    };
    let field = psi.field();
    let lines = if e_roots.len() == e.degree() {
        e_roots.iter().fold(PlaneCurve::constant(field.one()), |acc, p| acc.mul(&tangent_line(p)))
    } else {
        tangent_product(e)?
    };
    let conic = poncelet_curve(&Pencil::new(u.clone(), v.clone())?)?;
    Ok(psi_biform(psi)?.proportional(&lines.mul(&conic.pow(2))).is_some())
}

/// Convenience wrapper dispatching on the record of a generated surface.
pub fn factorization_check(g: &Generated) -> Result<bool> {
    match &g.record {
        Record::Rows { .. } => cone_factorization_check(&g.surface, &g.record),
        Record::Rank3 { .. } => rank3_factorization_check(&g.surface, &g.record),
        _ => Err(Error::InvalidInput("no factorization prediction for this construction".into())),
    }
}

fn require_cubic(x: &PlaneCurve) -> Result<()> {
    if x.degree() != 3 {
        return Err(Error::DegreeMismatch(format!("triangles need a cubic, got degree {}", x.degree())));
    }
    if x.is_zero() {
        return Err(Error::ZeroInput("zero curve".into()));
    }
    Ok(())
}

/// All triangles `{p1, p2, p3}` of distinct points of P1(F_p) whose three pairs lie on X.
pub fn find_triangles_bruteforce(x: &PlaneCurve) -> Result<Vec<[P1Point; 3]>> {
    require_cubic(x)?;
    let Field::Prime { p } = x.field() else {
        return Err(Error::InvalidInput("brute force needs a prime field".into()));
    };
    if p > 257 {
        return Err(Error::InvalidInput(format!("brute force is limited to p <= 257, got {p}")));
    }
    let pts = P1Point::all_over(x.field())?;
    let lift = x.lift();
    let rows: Vec<Vec<bool>> = pts
        .par_iter()
        .map(|a| {
            let fa = lift.specialize_first(a);
            pts.iter().map(|b| fa.eval_at(b).is_zero()).collect()
        })
        .collect();
    let n = pts.len();
    let mut out: Vec<[usize; 3]> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let rows = &rows;
            (i + 1..n)
                .filter(move |&j| rows[i][j])
                .flat_map(move |j| (j + 1..n).filter(move |&k| rows[i][k] && rows[j][k]).map(move |k| [i, j, k]))
        })
        .collect();
    out.sort();
    Ok(out.into_iter().map(|t| t.map(|i| pts[i].clone())).collect())
}

/// Whether the three pairs of `t` lie on X and the points are distinct.
pub fn is_triangle(x: &PlaneCurve, t: &[P1Point; 3]) -> bool {
    let distinct = !t[0].same_point(&t[1]) && !t[0].same_point(&t[2]) && !t[1].same_point(&t[2]);
    distinct
        && x.eval_at_pair(&t[0], &t[1]).is_zero()
        && x.eval_at_pair(&t[0], &t[2]).is_zero()
        && x.eval_at_pair(&t[1], &t[2]).is_zero()
}

/// Number of Poncelet triangles over the algebraic closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriangleCount {
    Finite(usize),
    Infinite,
    Indeterminate(String),
}

/// Intermediate eliminants of the exact counter.
#[derive(Clone, Debug)]
pub struct Elimination {
    /// `Res_z(F(x;z), F(y;z))` with all diagonal factors removed.
    pub r_stripped: BiForm,
    pub diagonal_power: usize,
    /// `Res_y(F(x;y), r_stripped(x;y))`.
    pub r2: BinaryForm,
    /// What remains of `r2` after removing the factors shared with `F(x;x)` and
    /// `Res_y(F(x;y), F(y;y))`.
    pub stripped: BinaryForm,
    /// Squarefree part of `stripped`: one root per triangle vertex.
    pub vertices: BinaryForm,
    pub count: TriangleCount,
}

/// Homogeneous resultant of two binary forms of the given formal degrees.
pub fn resultant(f: &BinaryForm, g: &BinaryForm) -> Scalar {
    let field = f.field();
    let (m, n) = (f.degree(), g.degree());
    if m + n == 0 {
        return field.one();
    }
    let size = m + n;
    let mut a = Matrix::zeros(field, size, size);
    for r in 0..n {
        for (k, c) in f.coeffs().iter().enumerate() {
            a.set(r, r + k, c.clone());
        }
    }
    for r in 0..m {
        for (k, c) in g.coeffs().iter().enumerate() {
            a.set(n + r, r + k, c.clone());
        }
    }
    a.det().unwrap()
}

fn sample_points(field: Field, count: usize) -> Result<Vec<Scalar>> {
    if let Field::Prime { p } = field {
        if (p as usize) < count {
            return Err(Error::InvalidInput(format!("F_{p} has too few points to interpolate {count} values")));
        }
    }
    Ok((0..count).map(|i| field.int(i as i64)).collect())
}

/// The form of degree n with the given values at `(x : 1)`.
pub fn interpolate_form<F: Fn(&Scalar) -> Scalar + Sync>(field: Field, n: usize, f: F) -> Result<BinaryForm> {
    let xs = sample_points(field, n + 1)?;
    let ys: Vec<Scalar> = xs.par_iter().map(&f).collect();
    BinaryForm::from_uni(&UniPoly::interpolate(field, &xs, &ys)?, n)
}

/// The biform of bidegree (m, n) with the given values at `((x : 1), (y : 1))`.
pub fn interpolate_biform<F: Fn(&Scalar, &Scalar) -> Scalar + Sync>(
    field: Field,
    m: usize,
    n: usize,
    f: F,
) -> Result<BiForm> {
    let xs = sample_points(field, m + 1)?;
    let ys = sample_points(field, n + 1)?;
    let rows: Vec<Result<UniPoly>> = xs
        .par_iter()
        .map(|x| {
            let vals: Vec<Scalar> = ys.iter().map(|y| f(x, y)).collect();
            UniPoly::interpolate(field, &ys, &vals)
        })
        .collect();
    let rows: Vec<UniPoly> = rows.into_iter().collect::<Result<_>>()?;
    let mut grid = vec![vec![field.zero(); n + 1]; m + 1];
    for q in 0..=n {
        let vals: Vec<Scalar> = rows.iter().map(|r| r.coeff(q)).collect();
        let col = UniPoly::interpolate(field, &xs, &vals)?;
        for pw in 0..=m {
            grid[m - pw][n - q] = col.coeff(pw);
        }
    }
    BiForm::from_grid(grid)
}

fn affine(x: &Scalar) -> P1Point {
    P1Point { s: x.clone(), t: Scalar::one(x.field()) }
}

/// Runs the elimination; `Err` carries a non-finite verdict.
pub fn eliminate_triangles(x: &PlaneCurve) -> Result<std::result::Result<Elimination, TriangleCount>> {
    require_cubic(x)?;
    let field = x.field();
    let lift = x.lift();
    let diag = lift.restrict_diagonal();
    if diag.is_zero() {
        return Ok(Err(TriangleCount::Indeterminate("the curve contains the Veronese conic".into())));
    }
    let r = interpolate_biform(field, 9, 9, |a, b| {
        resultant(&lift.specialize_first(&affine(a)), &lift.specialize_first(&affine(b)))
    })?;
    if r.is_zero() {
        return Ok(Err(TriangleCount::Infinite));
    }
    let mut r_stripped = r;
    let mut k = 0;
    while let Ok(q) = r_stripped.divide_diagonal() {
        r_stripped = q;
        k += 1;
    }
    let n2 = r_stripped.bidegree().1;
    let r2 = interpolate_form(field, 6 * n2, |a| {
        let p = affine(a);
        resultant(&lift.specialize_first(&p), &r_stripped.specialize_first(&p))
    })?;
    if r2.is_zero() {
        return Ok(Err(TriangleCount::Infinite));
    }
    let e = interpolate_form(field, 18, |a| resultant(&lift.specialize_first(&affine(a)), &diag))?;
    let spurious = diag.mul(&e);
    let mut g = r2.clone();
    if !spurious.is_zero() {
        loop {
            let c = g.gcd(&spurious)?;
            if c.degree() == 0 {
                break;
            }
            g = g.div_exact(&c)?;
        }
    }
    let h = g.squarefree_part()?;
    let count = if h.degree() == 0 {
        TriangleCount::Finite(0)
    } else {
        let m = g.degree() / h.degree();
        if g.degree() % h.degree() != 0 || g.proportional(&h.pow(m)).is_none() {
            TriangleCount::Indeterminate(format!(
                "vertex eliminant is not a pure power (degree {}, radical degree {})",
                g.degree(),
                h.degree()
            ))
        } else if h.degree() % 3 != 0 {
            TriangleCount::Indeterminate(format!("radical degree {} is not a multiple of 3", h.degree()))
        } else {
            TriangleCount::Finite(h.degree() / 3)
        }
    };
    Ok(Ok(Elimination { r_stripped, diagonal_power: k, r2, stripped: g, vertices: h, count }))
}

/// Number of Poncelet triangles of a cubic over the algebraic closure.
pub fn count_triangles_exact(x: &PlaneCurve) -> Result<TriangleCount> {
    Ok(match eliminate_triangles(x)? {
        Ok(e) => e.count,
        Err(c) => c,
    })
}

/// Triangles with vertices over a prime field, recovered from the eliminants.
pub fn triangles_from_elimination(x: &PlaneCurve, e: &Elimination) -> Result<Vec<[P1Point; 3]>> {
    let lift = x.lift();
    let mut found: Vec<[P1Point; 3]> = Vec::new();
    for x0 in e.vertices.rational_roots()? {
        let fx = lift.specialize_first(&x0);
        let partners = match fx.gcd(&e.r_stripped.specialize_first(&x0)) {
            Ok(g) => g.rational_roots()?,
            Err(_) => continue,
        };
        for y0 in partners.into_iter().filter(|y| !y.same_point(&x0)) {
            let third = fx.gcd(&lift.specialize_first(&y0))?.rational_roots()?;
            for z0 in third.into_iter().filter(|z| !z.same_point(&x0) && !z.same_point(&y0)) {
                let mut t = [x0.normalized(), y0.normalized(), z0.normalized()];
                t.sort_by_key(point_key);
                if is_triangle(x, &t) && !found.contains(&t) {
                    found.push(t);
                }
            }
        }
    }
    found.sort_by(|a, b| a.iter().map(point_key).cmp(b.iter().map(point_key)));
    Ok(found)
}

/// Order of a normalized point in `P1Point::all_over`.
fn point_key(p: &P1Point) -> u64 {
    let q = p.normalized();
    if q.t.is_zero() {
        u64::MAX
    } else {
        q.s.residue().unwrap_or(0)
    }
}

/// Outcome of comparing the exact counter with brute force on one cubic.
#[derive(Clone, Debug)]
pub struct CalibrationCase {
    pub curve: PlaneCurve,
    pub count: TriangleCount,
    pub brute_force: usize,
    /// The counter did not return a finite count.
    pub degenerate: bool,
    /// Triangles recovered from the eliminants equal the brute-force list and every
    /// brute-force vertex is a root of the vertex eliminant.
    pub agrees: bool,
}

/// A random cubic over F_p; with `forced`, one with a triangle at random points.
pub fn random_cubic(field: Field, seed: u64, forced: bool) -> PlaneCurve {
    let mut rng = rng_for(seed, "cubic", &[forced as usize]);
    loop {
        let c: Vec<Scalar> = (0..10).map(|_| random_scalar(field, &mut rng)).collect();
        let x = PlaneCurve::new(3, c).unwrap();
        let x = if forced {
            let t = [random_point(field, &mut rng), random_point(field, &mut rng), random_point(field, &mut rng)];
            if t[0].same_point(&t[1]) || t[0].same_point(&t[2]) || t[1].same_point(&t[2]) {
                continue;
            }
            let pairs = [(0, 1), (0, 2), (1, 2)];
            let basis: Vec<PlaneCurve> = (0..10)
                .map(|i| {
                    let mut v = vec![field.zero(); 10];
                    v[i] = field.one();
                    PlaneCurve::new(3, v).unwrap()
                })
                .collect();
            let rows: Vec<Vec<Scalar>> =
                pairs.iter().map(|&(i, j)| basis.iter().map(|b| b.eval_at_pair(&t[i], &t[j])).collect()).collect();
            let ker = Matrix::from_rows(field, rows).unwrap().kernel();
            let mut v = vec![field.zero(); 10];
            for k in &ker {
                let c = random_scalar(field, &mut rng);
                for (a, b) in v.iter_mut().zip(k) {
                    *a += &(&c * b);
                }
            }
            PlaneCurve::new(3, v).unwrap()
        } else {
            x
        };
        if !x.is_zero() {
            return x;
        }
    }
}

/// Compares the exact counter with brute force on one cubic over F_p.
pub fn calibrate_one(x: &PlaneCurve) -> Result<CalibrationCase> {
    let bf = find_triangles_bruteforce(x)?;
    let (count, agrees) = match eliminate_triangles(x)? {
        Err(c) => (c, false),
        Ok(e) => {
            let ex = triangles_from_elimination(x, &e)?;
            let on_vertices = bf.iter().flatten().all(|p| e.vertices.eval_at(p).is_zero());
            (e.count.clone(), ex == bf && on_vertices)
        }
    };
    let degenerate = !matches!(count, TriangleCount::Finite(_));
    Ok(CalibrationCase { curve: x.clone(), count, brute_force: bf.len(), degenerate, agrees })
}

/// Calibration over F_p on `n` cubics, half of them forced to carry a triangle.
pub fn calibrate(p: u64, n: usize, seed: u64) -> Result<Vec<CalibrationCase>> {
    let field = Field::prime(p)?;
    (0..n).map(|i| calibrate_one(&random_cubic(field, seed + i as u64, i % 2 == 0))).collect()
}

/// Triangle data of a quintic surface.
#[derive(Clone, Debug)]
pub struct QuinticProbe {
    pub curve: PlaneCurve,
    pub phi_rank: usize,
    pub count: TriangleCount,
}

pub fn quintic_fiber_probe(psi: &SurfaceMap) -> Result<QuinticProbe> {
    if psi.degree() != 5 {
        return Err(Error::InvalidInput("the fiber probe needs a quintic surface".into()));
    }
    let curve = psi_biform(psi)?;
    let count = count_triangles_exact(&curve)?;
    Ok(QuinticProbe { curve, phi_rank: phi_rank(psi), count })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn pencil_examples() {
        let f = q();
        let e1 = PlaneCurve::coordinate(f, 1);
        let p = Pencil::new(BinaryForm::from_ints(f, &[1, 0, 0]), BinaryForm::from_ints(f, &[0, 0, 1])).unwrap();
        assert_eq!(poncelet_curve(&p).unwrap(), e1);
        let p = Pencil::new(BinaryForm::from_ints(f, &[1, 0, 0]), BinaryForm::from_ints(f, &[0, 1, 0])).unwrap();
        let c = poncelet_curve(&p).unwrap();
        assert!(c.proportional(&PlaneCurve::coordinate(f, 0)).is_some());
        assert!(c.proportional(&tangent_line(&P1Point::ints(f, 0, 1).unwrap())).is_some());
        let dep = Pencil::new(BinaryForm::from_ints(f, &[1, 2]), BinaryForm::from_ints(f, &[2, 4]));
        assert!(dep.is_err());
    }

    #[test]
    fn resultant_examples() {
        let f = q();
        let a = BinaryForm::from_ints(f, &[1, 0, -1]);
        let b = BinaryForm::from_ints(f, &[1, -1]);
        assert!(resultant(&a, &b).is_zero());
        let c = BinaryForm::from_ints(f, &[1, 2]);
        assert!(!resultant(&a, &c).is_zero());
        // both vanish at (1:0)
        let d = BinaryForm::from_ints(f, &[0, 1, 1]);
        let e = BinaryForm::from_ints(f, &[0, 1]);
        assert!(resultant(&d, &e).is_zero());
    }

    #[test]
    fn brute_force_finds_tangent_triangle() {
        let f = Field::prime(31).unwrap();
        let pts = [P1Point::ints(f, 1, 0).unwrap(), P1Point::ints(f, 0, 1).unwrap(), P1Point::ints(f, 3, 1).unwrap()];
        let x = pts.iter().fold(PlaneCurve::constant(f.one()), |acc, p| acc.mul(&tangent_line(p)));
        let tri = find_triangles_bruteforce(&x).unwrap();
        assert!(tri.iter().all(|t| is_triangle(&x, t)));
        let mut want = pts.clone().map(|p| p.normalized());
        want.sort_by_key(point_key);
        assert!(tri.contains(&want));
        assert_eq!(count_triangles_exact(&x).unwrap(), TriangleCount::Infinite);
    }

    #[test]
    fn interpolation_round_trip() {
        let f = Field::prime(101).unwrap();
        let b = BiForm::from_ints(f, &[&[1, 2, 3], &[4, 5, 6]]);
        let c = interpolate_biform(f, 1, 2, |x, y| b.eval(&affine(x), &affine(y))).unwrap();
        assert_eq!(b, c);
    }
}
