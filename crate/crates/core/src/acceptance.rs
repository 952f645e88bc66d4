//! The twelve acceptance criteria as runnable checks.
//!
//! Each criterion reports pass or fail with a one-line detail. A quick run uses a
//! fifth of the seeds and is meant for smoke tests; the full run meets the stated
//! sample sizes.

use std::fmt;
use std::time::{Duration, Instant};

use rand::Rng;

use crate::birational::{calcexp_curve, extension_is_trivializable, extension_to_surface, random_extension};
use crate::degrees::{boundary_degree, degree_table, m_degree, poncelet_degree};
use crate::error::Result;
use crate::field::Field;
use crate::forms::{tangent_line, PlaneCurve};
use crate::generate::{
    gen_boundary, gen_cone, gen_developable, gen_plane_cone, gen_point_cone, gen_rank3, gen_rank5, gen_type_a,
    random_pgl2, random_pgl4, random_point, rng_for, Generated,
};
use crate::grassmann::{plucker_pairing, plucker_quadric, worked_example, StabilityClass};
use crate::locus::{boundary_factorization_check, phi, phi_rank, psi_biform, psi_determinantal};
use crate::poncelet::{
    calibrate, cone_factorization_check, quintic_fiber_probe, rank3_factorization_check, TriangleCount,
};

pub const CRITERIA: [&str; 12] = [
    "main theorem",
    "invariance",
    "worked example",
    "stratum ranks",
    "Poncelet factorizations",
    "boundary lemma",
    "developable criterion",
    "degree-5 triangles",
    "degree table",
    "birational chain",
    "stability classification",
    "meet oracle",
];

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: usize,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        CRITERIA[self.id - 1]
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {}: {} ({:.1} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name(),
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

/// Counts trials and keeps the first failure.
#[derive(Default)]
struct Tally {
    trials: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn check(&mut self, r: Result<bool>, what: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.record(ok, what),
            Err(e) => {
                let w = what();
                self.record(false, || format!("{w}: {e}"));
            }
        }
    }

    fn passed(&self) -> bool {
        self.failures == 0 && self.trials > 0
    }

    fn summary(&self) -> String {
        match &self.first {
            None => format!("{} trials, 0 failures", self.trials),
            Some(w) => format!("{} trials, {} failures, first: {w}", self.trials, self.failures),
        }
    }
}

fn fields() -> [Field; 2] {
    [Field::Rational, Field::Prime { p: 10007 }]
}

fn seeds(full: usize, quick: bool) -> u64 {
    (if quick { full.div_ceil(5) } else { full }) as u64
}

/// A surface from a generator family chosen by the seed, for degree `d`.
pub fn family_surface(field: Field, d: usize, seed: u64) -> Result<Generated> {
    let s = seed as usize;
    let half = d / 2;
    match s % 5 {
        0 => gen_type_a(field, d, 1 + (s / 5) % half, seed),
        1 => gen_rank5(field, d, seed),
        2 => gen_cone(field, d, 1 + (s / 5) % (d - 1), seed),
        3 => gen_rank3(field, d, 1 + (s / 5) % half, seed),
        _ if d.is_multiple_of(2) => gen_developable(field, d / 2 + 1, seed),
        _ => gen_type_a(field, d, half, seed),
    }
}

fn same_curve(a: &PlaneCurve, b: &PlaneCurve) -> bool {
    !a.is_zero() && !b.is_zero() && a.normalized() == b.normalized()
}

fn c1_main_theorem(quick: bool) -> Result<(bool, String)> {
    let start = Instant::now();
    let mut t = Tally::default();
    for field in fields() {
        for d in 3..=8 {
            for seed in 0..seeds(100, quick) {
                let g = family_surface(field, d, seed)?;
                let r = (|| Ok(same_curve(&psi_determinantal(&g.surface)?, &psi_biform(&g.surface)?)))();
                t.check(r, || format!("{field} d = {d} seed {seed}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let fast = secs < 60.0;
    Ok((t.passed() && fast, format!("{}; {secs:.1} s of the 60 s budget", t.summary())))
}

fn c2_invariance(quick: bool) -> Result<(bool, String)> {
    let mut t = Tally::default();
    let n = seeds(500, quick);
    for trial in 0..n {
        let field = fields()[(trial % 2) as usize];
        let mut rng = rng_for(trial, "invariance", &[]);
        let d = rng.gen_range(3..=6);
        let g = family_surface(field, d, trial)?;
        let psi = &g.surface;
        let base = psi_biform(psi)?;
        let rank = phi_rank(psi);
        let what = |op: &str| format!("{op} on {field} d = {d} trial {trial}");
        let dual = psi.dual();
        t.check(Ok(same_curve(&psi_biform(&dual)?, &base) && phi_rank(&dual) == rank), || what("dual"));
        let moved = psi.act_pgl4(&random_pgl4(field, &mut rng))?;
        t.check(Ok(same_curve(&psi_biform(&moved)?, &base) && phi_rank(&moved) == rank), || what("PGL4"));
        let h = random_pgl2(field, &mut rng);
        let re = psi.act_pgl2(&h)?;
        let ok = same_curve(&psi_biform(&re)?, &base.substitute_pgl2(&h)?) && phi_rank(&re) == rank;
        t.check(Ok(ok), || what("PGL2"));
    }
    Ok((t.passed(), t.summary()))
}

fn c3_worked_example() -> Result<(bool, String)> {
    let f = Field::Rational;
    let w = worked_example(f);
    let m = phi(&w);
    let mut entries_ok = true;
    for i in 1..=4 {
        for j in 1..=4 {
            let want = match (i, j) {
                (2, 4) | (4, 2) => -1,
                (3, 3) => 2,
                _ => 0,
            };
            entries_ok &= m.get(i - 1, j - 1) == &f.int(want);
        }
    }
    let e2 = PlaneCurve::coordinate(f, 2);
    let bi = psi_biform(&w)?;
    let det = psi_determinantal(&w)?;
    let ok = entries_ok && m.rank() == 3 && same_curve(&bi, &e2) && same_curve(&det, &e2);
    Ok((
        ok,
        format!(
            "Phi entries {entries_ok}, rank {}, Psi = {}, det route = {}",
            m.rank(),
            bi.normalized(),
            det.normalized()
        ),
    ))
}

fn c4_stratum_ranks(quick: bool) -> Result<(bool, String)> {
    let mut t = Tally::default();
    let mut retried = 0;
    let field = Field::Prime { p: 10007 };
    for d in 5..=7 {
        for seed in 0..seeds(20, quick) {
            let a = 1 + seed as usize % (d / 2);
            // type-1 surfaces have rank 4
            let generic = 2 + seed as usize % (d / 2 - 1);
            let cases = [
                ("type-a", gen_type_a(field, d, generic, seed)?, 6),
                ("rank5", gen_rank5(field, d, seed)?, 5),
                ("cone", gen_cone(field, d, 1 + seed as usize % (d - 1), seed)?, 4),
                ("rank3", gen_rank3(field, d, a, seed)?, 3),
            ];
            for (kind, g, want) in cases {
                retried += (g.attempts > 0) as usize;
                let got = phi_rank(&g.surface);
                t.record(got == want, || format!("{kind} d = {d} seed {seed}: rank {got}, expected {want}"));
            }
        }
    }
    Ok((t.passed(), format!("{}; {retried} draws needed a retry", t.summary())))
}

fn c5_poncelet(quick: bool) -> Result<(bool, String)> {
    let mut t = Tally::default();
    for d in 3..=8 {
        for seed in 0..seeds(10, quick) {
            let field = fields()[(seed % 2) as usize];
            for a in 1..d {
                let g = gen_cone(field, d, a, seed)?;
                t.check(cone_factorization_check(&g.surface, &g.record), || {
                    format!("cone d = {d} a = {a} seed {seed}")
                });
            }
            for a in 1..=d / 2 {
                let g = gen_rank3(field, d, a, seed)?;
                t.check(rank3_factorization_check(&g.surface, &g.record), || {
                    format!("rank3 d = {d} a = {a} seed {seed}")
                });
            }
        }
    }
    Ok((t.passed(), t.summary()))
}

fn c6_boundary(quick: bool) -> Result<(bool, String)> {
    let mut t = Tally::default();
    for d0 in 3..=5 {
        for k in 1..=3 {
            for seed in 0..seeds(10, quick) {
                let field = fields()[(seed % 2) as usize];
                let a = 1 + seed as usize % (d0 / 2);
                let g = gen_boundary(field, d0, a, k, seed)?;
                let crate::generate::Record::Boundary { base, xi, xi_roots } = &g.record else { unreachable!() };
                // the direct product of tangent lines at the roots, independent of the resultant
                let lines = xi_roots.iter().fold(PlaneCurve::constant(field.one()), |acc, p| acc.mul(&tangent_line(p)));
                let direct = psi_biform(&g.surface).and_then(|l| Ok(same_curve(&l, &psi_biform(base)?.mul(&lines))));
                let r = boundary_factorization_check(base, xi).and_then(|ok| Ok(ok && direct?));
                t.check(r, || format!("d' = {d0} deg xi = {k} seed {seed}"));
            }
        }
    }
    Ok((t.passed(), t.summary()))
}

fn c7_developable(quick: bool) -> Result<(bool, String)> {
    let mut t = Tally::default();
    for seed in 0..seeds(10, quick) {
        for field in fields() {
            let c0 = PlaneCurve::veronese_conic(field);
            let g = gen_developable(field, 3, seed)?;
            t.check(psi_biform(&g.surface).map(|x| same_curve(&x, &c0)), || format!("e = 3 {field} seed {seed}"));
            let g = gen_developable(field, 4, seed)?;
            t.check(psi_biform(&g.surface).map(|x| x.conic_quotient().is_some()), || {
                format!("e = 4 {field} seed {seed}")
            });
        }
    }
    Ok((t.passed(), t.summary()))
}

fn c8_triangles(quick: bool) -> Result<(bool, String)> {
    let cases = calibrate(101, if quick { 20 } else { 24 }, 1)?;
    let usable: Vec<_> = cases.iter().filter(|c| !c.degenerate).collect();
    let agree = usable.iter().filter(|c| c.agrees).count();
    let calibrated = agree == usable.len() && usable.len() >= 20;
    let mut t = Tally::default();
    for seed in 0..seeds(10, quick).max(10) {
        let g = gen_type_a(Field::Rational, 5, 2, seed)?;
        let probe = quintic_fiber_probe(&g.surface)?;
        t.record(probe.count == TriangleCount::Finite(2), || format!("quintic seed {seed}: {:?}", probe.count));
    }
    let cone = quintic_fiber_probe(&gen_cone(Field::Rational, 5, 2, 0)?.surface)?;
    let infinite = cone.count == TriangleCount::Infinite;
    let ok = calibrated && t.passed() && infinite;
    Ok((
        ok,
        format!(
            "calibration {agree}/{} non-degenerate cubics over F101 agree ({} degenerate); generic quintics: {}; cone: {:?}",
            usable.len(),
            cases.len() - usable.len(),
            t.summary(),
            cone.count
        ),
    ))
}

fn c9_degrees() -> Result<(bool, String)> {
    let mut t = Tally::default();
    for d in 3..=30 {
        t.check(degree_table(d)?.matches_harris_tu(), || format!("table at d = {d}"));
    }
    let mut catalan = vec![num_bigint::BigInt::from(1)];
    for n in 1..=20usize {
        let next = (0..n).map(|i| &catalan[i] * &catalan[n - 1 - i]).sum();
        catalan.push(next);
    }
    for (n, c) in catalan.iter().enumerate() {
        t.record(&poncelet_degree(n) == c, || format!("l({n})"));
    }
    let triple = [poncelet_degree(3), m_degree(2, 5)?, boundary_degree(5, 4)?];
    t.record(triple.iter().map(|x| x.to_string()).collect::<Vec<_>>() == ["5", "30", "12"], || {
        format!("degree-5 triple {triple:?}")
    });
    let special = boundary_degree(4, 3)?;
    t.record(special == 6.into(), || format!("d = 4 boundary degree {special}"));
    Ok((
        t.passed(),
        format!("{}; triple ({}, {}, {}), d = 4 boundary {special}", t.summary(), triple[0], triple[1], triple[2]),
    ))
}

fn c10_birational(quick: bool) -> Result<(bool, String)> {
    let mut t = Tally::default();
    let mut skipped = 0;
    for field in fields() {
        for n in [2, 3, 4] {
            for seed in 0..seeds(50, quick) {
                let e = random_extension(field, n, seed)?;
                if !extension_is_trivializable(&e)? {
                    skipped += 1;
                    continue;
                }
                let r = (|| Ok(same_curve(&calcexp_curve(&e)?, &psi_biform(&extension_to_surface(&e)?)?)))();
                t.check(r, || format!("{field} d = {} seed {seed}", 2 * n));
            }
        }
    }
    Ok((t.passed(), format!("{}; {skipped} non-trivializable draws skipped", t.summary())))
}

fn c11_stability(quick: bool) -> Result<(bool, String)> {
    let mut t = Tally::default();
    let mut rank5_isotropic = 0;
    let e12 = |field: Field| {
        let mut z = vec![field.zero(); 6];
        z[0] = field.one();
        z
    };
    for seed in 0..seeds(100, quick) {
        let field = fields()[(seed % 2) as usize];
        let d = 3 + seed as usize % 6;
        for g in [gen_point_cone(field, d, seed)?, gen_plane_cone(field, d, seed)?] {
            let c = g.surface.stability();
            t.record(matches!(c, StabilityClass::Unstable(_)), || {
                format!("cone construction d = {d} seed {seed}: {}", c.name())
            });
        }
        let cone = gen_cone(field, d, 1 + seed as usize % (d - 1), seed)?.surface;
        let z = e12(field);
        let z_in_kernel = cone.coefficient_matrix().to_rows().iter().all(|c| plucker_pairing(c, &z).is_zero());
        let ok = match cone.stability() {
            StabilityClass::StrictlySemistable { witness: Some(w), .. } => plucker_quadric(&w).is_zero() && z_in_kernel,
            _ => false,
        };
        t.record(ok, || format!("gen_cone d = {d} seed {seed}: {}", cone.stability().name()));
        let d5 = 4 + seed as usize % 5;
        let r5 = gen_rank5(field, d5, seed)?.surface;
        let ker = r5.orthogonal_kernel();
        if ker.len() == 1 && !plucker_quadric(&ker[0]).is_zero() {
            let c = r5.stability();
            t.record(c == StabilityClass::Stable, || format!("gen_rank5 d = {d5} seed {seed}: {}", c.name()));
        } else {
            rank5_isotropic += 1;
        }
        let cubic = family_surface(field, 3, seed)?.surface;
        let ok = match cubic.stability() {
            StabilityClass::Stable => false,
            StabilityClass::StrictlySemistable { kernel_dim, .. } => kernel_dim >= 2,
            StabilityClass::Unstable(_) => true,
        };
        t.record(ok, || format!("d = 3 seed {seed}: {:?}", cubic.stability()));
    }
    Ok((
        t.passed(),
        format!("{}; {rank5_isotropic} rank-5 draws without a non-isotropic kernel generator", t.summary()),
    ))
}

fn c12_meet_oracle(quick: bool) -> Result<(bool, String)> {
    let mut t = Tally::default();
    let mut meeting = 0;
    let field = Field::Prime { p: 10007 };
    let n = seeds(1000, quick);
    let mut rng = rng_for(0, "meet-oracle", &[]);
    let mut surface_seed = 0;
    while (t.trials as u64) < n {
        let d = 3 + surface_seed as usize % 4;
        let g = family_surface(field, d, surface_seed)?;
        surface_seed += 1;
        let psi = &g.surface;
        let curve = psi_biform(psi)?;
        let lift = curve.lift();
        for _ in 0..10 {
            let p = random_point(field, &mut rng);
            let mut qs = vec![random_point(field, &mut rng)];
            // partners of p on the curve, where the lines do meet
            qs.extend(lift.specialize_first(&p).rational_roots().unwrap_or_default());
            for q in qs {
                if p.same_point(&q) {
                    continue;
                }
                let on_curve = curve.eval_at_pair(&p, &q).is_zero();
                meeting += on_curve as usize;
                let r =
                    (|| Ok(psi.lines_meet(&p, &q)? == on_curve && psi.lines_meet_by_determinant(&p, &q)? == on_curve))(
                    );
                t.check(r, || format!("d = {d} pair ({p}, {q})"));
            }
        }
    }
    Ok((t.passed(), format!("{}; {meeting} pairs with meeting lines", t.summary())))
}

/// Runs criterion `id` (1-based).
pub fn run(id: usize, quick: bool) -> Outcome {
    let start = Instant::now();
    let r = match id {
        1 => c1_main_theorem(quick),
        2 => c2_invariance(quick),
        3 => c3_worked_example(),
        4 => c4_stratum_ranks(quick),
        5 => c5_poncelet(quick),
        6 => c6_boundary(quick),
        7 => c7_developable(quick),
        8 => c8_triangles(quick),
        9 => c9_degrees(),
        10 => c10_birational(quick),
        11 => c11_stability(quick),
        12 => c12_meet_oracle(quick),
        _ => panic!("no criterion {id}"),
    };
    let (passed, detail) = r.unwrap_or_else(|e| (false, format!("error: {e}")));
    Outcome { id, passed, detail, elapsed: start.elapsed() }
}

pub fn run_all(quick: bool) -> Vec<Outcome> {
    (1..=CRITERIA.len()).map(|id| run(id, quick)).collect()
}
