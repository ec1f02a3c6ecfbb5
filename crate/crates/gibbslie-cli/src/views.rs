//! Serializable views of the core analysis types.

use gibbslie_core::algebra::{LieAlgebra, Subspace};
use gibbslie_core::cones::{GibbsBranch, GibbsDecision};
use gibbslie_core::hwmods::{TraceResult, TraceValue};
use gibbslie_core::rational::RVec;
use gibbslie_core::roots::{PositiveSystem, Root, RootDatum};
use gibbslie_core::spectral::{CompactEmbeddingReport, EllipticityReport};
use gibbslie_core::Complex64;
use serde::Serialize;

pub fn rvec_strings(v: &[gibbslie_core::rational::Rat]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn basis_strings(b: &[RVec]) -> Vec<Vec<String>> {
    b.iter().map(|v| rvec_strings(v)).collect()
}

pub fn complex_pair(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

#[derive(Serialize)]
pub struct EllipticityView {
    pub eigenvalues: Vec<[f64; 2]>,
    pub max_real_part: f64,
    pub diagonalizable: bool,
    pub clusters: Vec<ClusterView>,
    pub verdict: bool,
}

#[derive(Serialize)]
pub struct ClusterView {
    pub center: [f64; 2],
    pub multiplicity: usize,
    pub shifted_rank: usize,
    pub semisimple: bool,
}

impl EllipticityView {
    pub fn from(r: &EllipticityReport) -> Self {
        EllipticityView {
            eigenvalues: r.eigenvalues.iter().map(|e| [e.re, e.im]).collect(),
            max_real_part: r.max_real_part,
            diagonalizable: r.diagonalizable,
            clusters: r
                .clusters
                .iter()
                .map(|c| ClusterView {
                    center: [c.center.re, c.center.im],
                    multiplicity: c.multiplicity,
                    shifted_rank: c.shifted_rank,
                    semisimple: c.semisimple,
                })
                .collect(),
            verdict: r.verdict,
        }
    }
}

#[derive(Serialize)]
pub struct CompactEmbedView {
    pub subalgebra_dim: usize,
    pub verdict: bool,
    pub inconclusive: bool,
    pub residual: f64,
    pub obstruction: Option<String>,
    pub invariant_metric: Option<Vec<Vec<String>>>,
}

impl CompactEmbedView {
    pub fn from(r: &CompactEmbeddingReport) -> Self {
        CompactEmbedView {
            subalgebra_dim: r.subalgebra_dim,
            verdict: r.verdict,
            inconclusive: r.inconclusive,
            residual: r.residual,
            obstruction: r.obstruction.clone(),
            invariant_metric: r.invariant_metric.as_ref().map(|m| {
                (0..m.rows)
                    .map(|i| (0..m.cols).map(|j| m[(i, j)].to_string()).collect())
                    .collect()
            }),
        }
    }
}

#[derive(Serialize)]
pub struct SubspaceView {
    pub dim: usize,
    pub basis: Vec<Vec<String>>,
}

impl SubspaceView {
    pub fn from(s: &Subspace) -> Self {
        SubspaceView { dim: s.dim(), basis: basis_strings(&s.basis) }
    }
}

#[derive(Serialize)]
pub struct RootView {
    pub sigma: Vec<String>,
    pub space_dim: usize,
    pub root_type: gibbslie_core::roots::RootType,
    pub compact: bool,
    pub semisimple: bool,
}

impl RootView {
    pub fn from(r: &Root) -> Self {
        RootView {
            sigma: rvec_strings(&r.sigma),
            space_dim: r.dim(),
            root_type: r.root_type,
            compact: r.compact,
            semisimple: r.semisimple,
        }
    }
}

#[derive(Serialize)]
pub struct PositiveSystemView {
    pub regular_element_t_coords: Vec<String>,
    pub positive_sigmas: Vec<Vec<String>>,
    pub adapted: bool,
    /// Noncompact positive roots (Delta_p^+).
    pub noncompact_positive: Vec<Vec<String>>,
    /// Compact positive roots (Delta_k^+).
    pub compact_positive: Vec<Vec<String>>,
    /// Noncompact semisimple positive roots (Delta_{p,s}^+).
    pub noncompact_semisimple_positive: Vec<Vec<String>>,
    /// Solvable positive roots Delta^+ \ Delta_s (types N and A).
    pub solvable_positive: Vec<Vec<String>>,
}

impl PositiveSystemView {
    pub fn from(datum: &RootDatum, sys: &PositiveSystem) -> Self {
        let sig = |i: &usize| rvec_strings(&datum.roots[*i].sigma);
        PositiveSystemView {
            regular_element_t_coords: rvec_strings(&sys.regular_t_coords),
            positive_sigmas: sys.positive.iter().map(|i| sig(i)).collect(),
            adapted: sys.adapted,
            noncompact_positive: sys.delta_p_plus(datum).map(|i| sig(&i)).collect(),
            compact_positive: sys.delta_k_plus(datum).map(|i| sig(&i)).collect(),
            noncompact_semisimple_positive: sys.delta_ps_plus(datum).map(|i| sig(&i)).collect(),
            solvable_positive: sys.delta_r_plus(datum).map(|i| sig(&i)).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct TraceView {
    pub value: Option<[f64; 2]>,
    pub divergent: bool,
    pub closed_form: Option<[f64; 2]>,
    pub converged: bool,
    pub ratio: Option<f64>,
    pub last_step: Option<f64>,
    pub partial_sums_tail: Vec<[f64; 2]>,
    pub partial_sum_count: usize,
}

impl TraceView {
    pub fn from(t: &TraceResult) -> Self {
        let tail: Vec<[f64; 2]> = t
            .partial_sums
            .iter()
            .rev()
            .take(8)
            .rev()
            .map(|c| complex_pair(*c))
            .collect();
        TraceView {
            value: match t.value {
                TraceValue::Finite(v) => Some(complex_pair(v)),
                TraceValue::Divergent => None,
            },
            divergent: matches!(t.value, TraceValue::Divergent),
            closed_form: t.closed_form.map(complex_pair),
            converged: t.converged,
            ratio: t.certificate.as_ref().map(|c| c.ratio),
            last_step: t.certificate.as_ref().map(|c| c.last_step),
            partial_sums_tail: tail,
            partial_sum_count: t.partial_sums.len(),
        }
    }
}

#[derive(Serialize)]
pub struct GibbsDecisionView {
    pub verdict: bool,
    pub inconclusive: bool,
    pub failed_stage: Option<String>,
    pub witness: Option<GibbsWitnessView>,
}

#[derive(Serialize)]
pub struct GibbsWitnessView {
    pub branch: String,
    pub quotient_ideal: Option<SubspaceView>,
    pub cartan_t_basis: Option<Vec<Vec<String>>>,
    pub admissible_system: Option<PositiveSystemView>,
}

impl GibbsDecisionView {
    pub fn from(d: &GibbsDecision) -> Self {
        let witness = d.witness.as_ref().map(|w| match w {
            GibbsBranch::CompactAlgebra => GibbsWitnessView {
                branch: "compact_algebra_invariant_ball".into(),
                quotient_ideal: None,
                cartan_t_basis: None,
                admissible_system: None,
            },
            GibbsBranch::AdmissibleQuotient { ideal, datum, system } => GibbsWitnessView {
                branch: "admissible_quotient".into(),
                quotient_ideal: Some(SubspaceView::from(ideal)),
                cartan_t_basis: Some(basis_strings(&datum.cartan.basis)),
                admissible_system: Some(PositiveSystemView::from(datum, system)),
            },
        });
        GibbsDecisionView {
            verdict: d.verdict,
            inconclusive: d.inconclusive,
            failed_stage: d.failed_stage.clone(),
            witness,
        }
    }
}

#[derive(Serialize)]
pub struct AlgebraView {
    pub dim: usize,
    pub basis: Vec<String>,
}

impl AlgebraView {
    pub fn from(a: &LieAlgebra) -> Self {
        AlgebraView { dim: a.dim, basis: a.basis_names.clone() }
    }
}

