//! Report assembly for the three computing commands.

use std::collections::BTreeMap;

use serde::Serialize;

use super::curvefile::CurveEntry;
use super::CliError;
use crate::arrgeo::{
    combinatorial_intersection, intersection_count_resultant, ordinary_counts, point_strings, singular_points,
    ArrError, Curve, IntersectionReport, SingularPoint,
};
use crate::invariants::{
    addition_rhs, betti_poly, dpw_freeness, euler_number, euler_rhs, poincare_poly, union_milnor_rhs, FreenessReport,
    QuadraticPoly,
};
use crate::lattice::{build_lattice, deletion_restriction_check, pi_poly, DeletionRestriction, Flat, LineArrangement};
use crate::milnor::{syzygy_profile, total_tjurina, MilnorError};

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub seed: u64,
    pub shear_trials: usize,
    pub assume_quasi_homogeneous: bool,
}

/// An identity verdict with both evaluated sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    /// False when the identity is reported for information only.
    pub hypotheses_met: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, lhs: impl ToString, rhs: impl ToString) -> Check {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        Check {
            name: name.into(),
            holds: lhs == rhs,
            lhs,
            rhs,
            hypotheses_met: true,
            note: None,
        }
    }

    fn informational(mut self, note: impl Into<String>) -> Check {
        self.hypotheses_met = false;
        self.note = Some(note.into());
        self
    }

    pub fn is_violation(&self) -> bool {
        self.hypotheses_met && !self.holds
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TauReport {
    pub value: u64,
    pub method: &'static str,
    pub hilbert: Vec<(u32, u64)>,
    pub stabilization_degree: u32,
    /// `Σ τ_p` over classified points, when every point is supported.
    pub combinatorial: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MuSource {
    /// Milnor's formula at every (rational) singular point.
    Combinatorial,
    /// `μ := τ`, on the user's assertion that all singularities are quasi-homogeneous.
    AssumedQuasiHomogeneous,
}

#[derive(Clone, Debug, Serialize)]
pub struct MuReport {
    pub value: u64,
    pub source: MuSource,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveReport {
    pub name: String,
    pub components: Vec<String>,
    pub d: u32,
    pub e: Option<u32>,
    pub tau: TauReport,
    pub mu: Option<MuReport>,
    pub mdr: u32,
    pub ar_dims: Vec<(u32, u64)>,
    pub poincare: QuadraticPoly,
    pub poincare_text: String,
    pub betti: Option<QuadraticPoly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti_note: Option<String>,
    pub freeness: FreenessReport,
    pub singular_points: Option<Vec<SingularPoint>>,
    pub ordinary_counts: Option<BTreeMap<usize, usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub combinatorial_note: Option<String>,
    pub checks: Vec<Check>,
}

impl CurveReport {
    pub fn all_supported(&self) -> bool {
        self.singular_points
            .as_ref()
            .is_some_and(|ps| ps.iter().all(|p| p.is_supported()))
    }
}

fn arr_error(e: ArrError) -> CliError {
    match e {
        ArrError::Poly(p) => CliError::Math(p.to_string()),
        other => CliError::Math(other.to_string()),
    }
}

fn milnor_error(e: MilnorError) -> CliError {
    match e {
        MilnorError::NoPlateau { .. } => CliError::Oracle(e.to_string()),
        other => CliError::Math(other.to_string()),
    }
}

pub fn build_curve(entry: &CurveEntry) -> Result<Curve, CliError> {
    Curve::new(entry.components.clone()).map_err(|e| CliError::Math(format!("curve {}: {e}", entry.name)))
}

pub fn curve_report(entry: &CurveEntry, opts: &Options) -> Result<(CurveReport, Curve), CliError> {
    let curve = build_curve(entry)?;
    let report = report_for(entry, &curve, opts)?;
    Ok((report, curve))
}

fn report_for(entry: &CurveEntry, curve: &Curve, opts: &Options) -> Result<CurveReport, CliError> {
    let f = curve.defining_poly();
    let d = curve.degree_d();
    let e = if entry.raw {
        entry.e_override
    } else {
        Some(entry.e_override.unwrap_or(curve.num_components_e() as u32))
    };

    let profile = total_tjurina(f).map_err(milnor_error)?;
    let syz = syzygy_profile(f).map_err(milnor_error)?;
    let mut checks = Vec::new();

    let (points, note) = match singular_points(curve) {
        Ok(p) => (Some(p), None),
        Err(err) => (None, Some(format!("combinatorial path unavailable: {err}"))),
    };
    let tau_comb = points
        .as_ref()
        .filter(|ps| ps.iter().all(|p| p.is_supported()))
        .map(|ps| ps.iter().filter_map(|p| p.local_tjurina).sum::<u64>());
    if let Some(t) = tau_comb {
        checks.push(Check::new("tau_hilbert_equals_tau_combinatorial", profile.tau, t));
    }

    let mu = match &points {
        Some(ps) => Some(MuReport {
            value: ps.iter().map(|p| p.local_milnor).sum(),
            source: MuSource::Combinatorial,
        }),
        None if opts.assume_quasi_homogeneous || entry.assert_quasi_homogeneous => Some(MuReport {
            value: profile.tau,
            source: MuSource::AssumedQuasiHomogeneous,
        }),
        None => None,
    };
    if let (Some(m), Some(_)) = (&mu, tau_comb) {
        // supported points are quasi-homogeneous: μ = τ
        checks.push(Check::new("mu_equals_tau_quasi_homogeneous", m.value, profile.tau));
    }

    let poincare = poincare_poly(d, profile.tau).map_err(|err| CliError::Oracle(err.to_string()))?;
    let (betti, betti_note) = match (e, &mu) {
        _ if d < 3 => (None, Some("Betti polynomial needs d >= 3".to_string())),
        (None, _) => (
            None,
            Some("number of components e unknown for raw input; pass --e".to_string()),
        ),
        (_, None) => (
            None,
            Some("mu unavailable; pass --assume-quasi-homogeneous to use mu = tau".to_string()),
        ),
        (Some(e), Some(m)) => match betti_poly(d, e, m.value) {
            Ok(b) => (Some(b), None),
            Err(err) => (None, Some(err.to_string())),
        },
    };

    let freeness = dpw_freeness(d, profile.tau, syz.mdr);
    if freeness.is_free {
        let ex = freeness.exponents.map(|(a, b)| (a as i64, b as i64));
        checks.push(Check::new(
            "free_implies_split_by_exponents",
            fmt_pair(freeness.split_factors),
            fmt_pair(ex),
        ));
    }
    if curve.is_line_arrangement() {
        if let (Some(b), Some(m)) = (&betti, &mu) {
            if m.value == profile.tau {
                checks.push(Check::new("line_arrangement_poincare_equals_betti", &poincare, b));
            }
        }
    }

    let counts = points.as_ref().map(|ps| ordinary_counts(ps));
    Ok(CurveReport {
        name: entry.name.clone(),
        components: curve.components().iter().map(|c| c.to_string()).collect(),
        d,
        e,
        tau: TauReport {
            value: profile.tau,
            method: "hilbert",
            hilbert: profile.hilbert,
            stabilization_degree: profile.stabilization_degree,
            combinatorial: tau_comb,
        },
        mu,
        mdr: syz.mdr,
        ar_dims: syz.ar_dims,
        poincare_text: poincare.to_string(),
        poincare,
        betti,
        betti_note,
        freeness,
        singular_points: points,
        ordinary_counts: counts,
        combinatorial_note: note,
        checks,
    })
}

fn fmt_pair(p: Option<(i64, i64)>) -> String {
    p.map_or("none".to_string(), |(a, b)| format!("({a}, {b})"))
}

#[derive(Clone, Debug, Serialize)]
pub struct UnionReport {
    pub first: CurveReport,
    pub second: CurveReport,
    pub union: CurveReport,
    pub r: usize,
    pub intersection_resultant: IntersectionReport,
    pub intersection_combinatorial: Option<IntersectionReport>,
    pub checks: Vec<Check>,
    /// Identities that could not be evaluated, and why.
    pub notes: Vec<String>,
}

pub fn union_report(a: &CurveEntry, b: &CurveEntry, opts: &Options) -> Result<UnionReport, CliError> {
    let (first, c1) = curve_report(a, opts)?;
    let (second, c2) = curve_report(b, opts)?;
    let cu = c1.union(&c2).map_err(arr_error)?;
    let ue = CurveEntry {
        name: format!("{} + {}", a.name, b.name),
        components: cu.components().to_vec(),
        assert_quasi_homogeneous: a.assert_quasi_homogeneous && b.assert_quasi_homogeneous,
        e_override: match (first.e, second.e) {
            (Some(x), Some(y)) => Some(x + y),
            _ => None,
        },
        raw: a.raw || b.raw,
    };
    let union = report_for(&ue, &cu, opts)?;

    let res = intersection_count_resultant(&c1, &c2, opts.seed, opts.shear_trials).map_err(|e| match e {
        ArrError::GenericityFailure { .. } => CliError::Oracle(e.to_string()),
        other => arr_error(other),
    })?;
    let mut notes = Vec::new();
    let comb = match combinatorial_intersection(&c1, &c2) {
        Ok(c) => Some(c),
        Err(e) => {
            notes.push(format!("combinatorial intersection unavailable: {e}"));
            None
        }
    };
    let r = res.r_distinct_points;
    let (d1, d2) = (c1.degree_d(), c2.degree_d());

    let mut checks = Vec::new();
    checks.push(Check::new(
        "bezout_resultant",
        res.per_point_multiplicities.iter().sum::<usize>(),
        d1 as usize * d2 as usize,
    ));
    if let Some(c) = &comb {
        checks.push(Check::new("r_resultant_equals_r_combinatorial", r, c.r_distinct_points));
        checks.push(Check::new(
            "intersection_indices_agree",
            format!("{:?}", res.per_point_multiplicities),
            format!("{:?}", c.per_point_multiplicities),
        ));
    }

    let ri = r as i64;
    let p_check = Check::new(
        "addition_poincare",
        &union.poincare,
        addition_rhs(&first.poincare, &second.poincare, ri),
    );
    let qh = union.all_supported() || (opts.assume_quasi_homogeneous || ue.assert_quasi_homogeneous);
    checks.push(if qh {
        p_check
    } else {
        p_check.informational("union has singularities outside the quasi-homogeneous vocabulary")
    });

    match (&first.betti, &second.betti, &union.betti) {
        (Some(b1), Some(b2), Some(bu)) => {
            checks.push(Check::new("addition_betti", bu, addition_rhs(b1, b2, ri)));
            let (e1, e2, eu) = (euler_number(b1), euler_number(b2), euler_number(bu));
            checks.push(Check::new("euler_addition", eu, euler_rhs(e1, e2, ri)));
            checks.push(Check::new(
                "euler_from_betti_addition",
                bu.eval(-1),
                addition_rhs(b1, b2, ri).eval(-1),
            ));
        }
        _ => {
            for part in [&first, &second, &union] {
                if let Some(n) = &part.betti_note {
                    notes.push(format!("addition_betti and euler_addition skipped: {}: {n}", part.name));
                }
            }
        }
    }
    if let (Some(m1), Some(m2), Some(mu)) = (&first.mu, &second.mu, &union.mu) {
        checks.push(Check::new(
            "union_milnor",
            mu.value,
            union_milnor_rhs(m1.value, m2.value, d1, d2, r as u64),
        ));
    } else {
        notes.push("union_milnor skipped: mu unavailable".to_string());
    }
    checks.extend(per_point_checks(&first, &second, &union, c1.num_components_e()));

    Ok(UnionReport {
        first,
        second,
        union,
        r,
        intersection_resultant: res,
        intersection_combinatorial: comb,
        checks,
        notes,
    })
}

/// `μ(C₁ ∪ C₂, p) = μ(C₁, p) + μ(C₂, p) + 2 i_p(C₁, C₂) - 1` at every shared
/// point where all three germs are classified, using the tabulated `μ = τ`
/// of ordinary points and tacnodes.
fn per_point_checks(first: &CurveReport, second: &CurveReport, union: &CurveReport, n1: usize) -> Vec<Check> {
    let (Some(pu), Some(p1), Some(p2)) = (&union.singular_points, &first.singular_points, &second.singular_points)
    else {
        return Vec::new();
    };
    let table = |ps: &Vec<SingularPoint>, at: &SingularPoint| -> Option<u64> {
        match ps.iter().find(|p| p.coords == at.coords) {
            Some(p) => p.local_tjurina,
            None => Some(0),
        }
    };
    let mut out = Vec::new();
    for p in pu {
        let i_p = p.index_between(|b| b < n1, |b| b >= n1);
        if i_p == 0 {
            continue;
        }
        let (Some(mu_u), Some(mu1), Some(mu2)) = (p.local_tjurina, table(p1, p), table(p2, p)) else {
            continue;
        };
        out.push(Check::new(
            format!("per_point_union_milnor [{}]", point_strings(&p.coords).join(" : ")),
            mu_u,
            mu1 + mu2 + 2 * i_p as u64 - 1,
        ));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeReport {
    pub curve: CurveReport,
    pub flats: Vec<Flat>,
    pub pi: QuadraticPoly,
    pub pi_text: String,
    pub deletion_restriction: Vec<DeletionRestriction>,
    pub checks: Vec<Check>,
}

pub fn lattice_report(entry: &CurveEntry, opts: &Options) -> Result<LatticeReport, CliError> {
    let (curve_rep, curve) = curve_report(entry, opts)?;
    let arr = LineArrangement::from_curve(&curve).map_err(|e| CliError::Math(format!("curve {}: {e}", entry.name)))?;
    let flats = build_lattice(&arr);
    let pi = pi_poly(&arr);
    let dr: Vec<DeletionRestriction> = if arr.len() >= 2 {
        (0..arr.len())
            .map(|h| deletion_restriction_check(&arr, h).expect("at least two lines"))
            .collect()
    } else {
        Vec::new()
    };
    let mut checks = Vec::new();
    checks.push(Check::new(
        "pi_coefficients_nonnegative",
        pi.coeffs().iter().all(|&c| c >= 0),
        true,
    ));
    for x in &dr {
        checks.push(Check::new(format!("deletion_restriction H0={}", x.h0), &x.pi, &x.rhs));
    }
    let one_plus_t = QuadraticPoly::new(&[1, 1]);
    checks.push(Check::new(
        "pi_equals_(1+t)_poincare",
        &pi,
        &one_plus_t * &curve_rep.poincare,
    ));
    if let Some(b) = &curve_rep.betti {
        checks.push(Check::new("pi_equals_(1+t)_betti", &pi, &one_plus_t * b));
    }
    Ok(LatticeReport {
        curve: curve_rep,
        flats,
        pi_text: pi.to_string(),
        pi,
        deletion_restriction: dr,
        checks,
    })
}
