//! The full invariant suite of one surface, as a JSON-ready report.

use std::time::Instant;

use serde_json::{json, Value};

use crate::doc::{curve_to_json, form_to_json, scalar_to_json};
use crate::error::Error;
use crate::field::Scalar;
use crate::forms::{BinaryForm, PlaneCurve};
use crate::grassmann::{ConeWitness, SplittingType, StabilityClass, SurfaceMap, ValidityReport};
use crate::locus::{check_main_theorem, phi_rank, pinch_points, psi_biform};
use crate::poncelet::{count_triangles_exact, TriangleCount};

#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub degree: usize,
    pub validity: ValidityReport,
    pub splitting: Option<SplittingType>,
    pub stability: StabilityClass,
    pub phi_rank: usize,
    pub psi: Option<PlaneCurve>,
    pub pinch: Option<BinaryForm>,
    pub developable: Option<bool>,
    /// `c` with `psi_determinantal = c * psi_biform`.
    pub theorem_scalar: Option<Scalar>,
    pub triangles: Option<TriangleCount>,
    /// Steps that could not be carried out, with the reason.
    pub skipped: Vec<(String, Error)>,
    pub elapsed_ms: u128,
}

impl AnalysisReport {
    /// Whether a step failed because the input is degenerate rather than malformed.
    pub fn has_degeneracy(&self) -> bool {
        !self.validity.in_r_d || self.skipped.iter().any(|(_, e)| e.is_degeneracy())
    }

    pub fn to_json(&self) -> Value {
        let stability = match &self.stability {
            StabilityClass::Stable => json!({ "class": "Stable" }),
            StabilityClass::StrictlySemistable { kernel_dim, witness } => json!({
                "class": "StrictlySemistable",
                "kernel_dim": kernel_dim,
                "witness": witness.as_ref().map(|w| w.iter().map(scalar_to_json).collect::<Vec<_>>()),
            }),
            StabilityClass::Unstable(w) => {
                let (kind, v) = match w {
                    ConeWitness::Point(v) => ("point", v),
                    ConeWitness::Plane(v) => ("plane", v),
                };
                json!({ "class": "Unstable", "cone": kind, "witness": v.iter().map(scalar_to_json).collect::<Vec<_>>() })
            }
        };
        json!({
            "d": self.degree,
            "validity": {
                "decomposable": self.validity.decomposable,
                "base_point_free": self.validity.base_point_free,
                "in_R_d": self.validity.in_r_d,
                "boundary_factor": self.validity.boundary_factor.as_ref().map(form_to_json),
            },
            "splitting_type": self.splitting.map(|s| json!({ "a_Q": s.a_q, "b_K": s.b_k })),
            "stability": stability,
            "phi_rank": self.phi_rank,
            "psi": self.psi.as_ref().map(curve_to_json),
            "pinch": self.pinch.as_ref().map(form_to_json),
            "developable": self.developable,
            "theorem_scalar": self.theorem_scalar.as_ref().map(scalar_to_json),
            "triangles": self.triangles.as_ref().map(triangle_count_to_json),
            "skipped": self.skipped.iter().map(|(step, e)| json!({ "step": step, "reason": e.to_string() })).collect::<Vec<_>>(),
            "elapsed_ms": self.elapsed_ms as u64,
        })
    }
}

pub fn triangle_count_to_json(c: &TriangleCount) -> Value {
    match c {
        TriangleCount::Finite(n) => json!({ "kind": "finite", "count": n }),
        TriangleCount::Infinite => json!({ "kind": "infinite" }),
        TriangleCount::Indeterminate(why) => json!({ "kind": "indeterminate", "reason": why }),
    }
}

pub fn analyze(psi: &SurfaceMap) -> AnalysisReport {
    let start = Instant::now();
    let mut skipped = Vec::new();
    fn keep<T>(skipped: &mut Vec<(String, Error)>, step: &str, r: crate::Result<T>) -> Option<T> {
        r.map_err(|e| skipped.push((step.to_string(), e))).ok()
    }
    let validity = psi.validate();
    let stability = psi.stability();
    let rank = phi_rank(psi);
    let splitting = keep(&mut skipped, "splitting_type", psi.splitting_type());
    let curve = keep(&mut skipped, "psi", psi_biform(psi));
    let pinch = if curve.is_some() { keep(&mut skipped, "pinch", pinch_points(psi)) } else { None };
    let developable = curve.as_ref().map(|g| g.conic_quotient().is_some());
    let theorem_scalar = if validity.in_r_d {
        keep(&mut skipped, "main_theorem", check_main_theorem(psi)).and_then(|c| {
            if c.is_none() {
                skipped.push(("main_theorem".into(), Error::Internal("the two constructions disagree".into())));
            }
            c
        })
    } else {
        None
    };
    let triangles = match (&curve, psi.degree()) {
        (Some(g), 5) => keep(&mut skipped, "triangles", count_triangles_exact(g)),
        _ => None,
    };
    AnalysisReport {
        degree: psi.degree(),
        validity,
        splitting,
        stability,
        phi_rank: rank,
        psi: curve,
        pinch,
        developable,
        theorem_scalar,
        triangles,
        skipped,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::generate::{gen_cone, gen_type_a};
    use crate::grassmann::worked_example;

    #[test]
    fn worked_report() {
        let r = analyze(&worked_example(Field::Rational));
        assert!(r.validity.in_r_d);
        assert_eq!(r.phi_rank, 3);
        assert_eq!(r.splitting.unwrap().a_q, 1);
        assert!(r.theorem_scalar.is_some());
        assert_eq!(r.developable, Some(false));
        let v = r.to_json();
        assert_eq!(v["psi"]["coeffs"], json!(["0", "0", "1"]));
        assert!(r.triangles.is_none());
    }

    #[test]
    fn quintic_report_counts_triangles() {
        let f = Field::prime(10007).unwrap();
        let r = analyze(&gen_type_a(f, 5, 2, 3).unwrap().surface);
        assert_eq!(r.triangles, Some(TriangleCount::Finite(2)));
        let c = analyze(&gen_cone(f, 5, 2, 3).unwrap().surface);
        assert_eq!(c.triangles, Some(TriangleCount::Infinite));
    }
}
