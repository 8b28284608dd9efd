//! Separability criteria as `(lhs, bound, margin, verdict)` reports.
//!
//! Every criterion here is a necessary condition for separability of the form
//! `lhs ≤ bound`. A margin `lhs - bound` above [`VERDICT_EPS`] proves
//! entanglement; anything else is inconclusive (PPT on 2×2 and 2×3 is the one
//! exception, where positivity of the partial transpose is also sufficient).
//!
//! Witness bounds come from the norm of pure-state Bloch vectors: for a fully
//! separable state every local factor has `‖x‖ = √((d-1)/(2d))` and augmented
//! norm `‖x̃‖ = √((d²-d+2)/(2d²))`, so `|Σ w·T| ≤ Π_k ‖x_k‖ · σ_max(w_n)` for
//! every mode-n unfolding `w_n` of the witness.

use nalgebra::DMatrix;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bloch::{augmented_tensor, correlation_tensor, BlochVector};
use crate::catalog;
use crate::error::{Error, Result};
use crate::matcore::{hermitian_eigenvalues, trace_norm, DensityMatrix};
use crate::tensor::RealTensor;

/// A criterion reports entanglement only when `lhs - bound` exceeds this.
pub const VERDICT_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Entangled,
    Inconclusive,
    SeparableProven,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub criterion: String,
    pub lhs: f64,
    pub bound: f64,
    pub margin: f64,
    pub verdict: Verdict,
    pub detail: Value,
}

impl CriterionReport {
    pub fn new(criterion: impl Into<String>, lhs: f64, bound: f64, detail: Value) -> Self {
        let margin = lhs - bound;
        let verdict = if margin > VERDICT_EPS {
            Verdict::Entangled
        } else {
            Verdict::Inconclusive
        };
        Self {
            criterion: criterion.into(),
            lhs,
            bound,
            margin,
            verdict,
            detail,
        }
    }

    pub fn is_entangled(&self) -> bool {
        self.verdict == Verdict::Entangled
    }
}

/// `Π_k √((d_k-1)/(2 d_k))`: the bound for witnesses on `T`.
pub fn body_constant(dims: &[usize]) -> f64 {
    dims.iter().map(|&d| BlochVector::pure_norm(d)).product()
}

/// `Π_k √((d_k²-d_k+2)/(2 d_k²))`: the bound for witnesses on `T̃`.
pub fn augmented_constant(dims: &[usize]) -> f64 {
    dims.iter()
        .map(|&d| BlochVector::pure_augmented_norm(d))
        .product()
}

/// Which Bloch tensor a witness is paired with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WitnessKind {
    /// Contracted against `T` (mode sizes `d_k² - 1`).
    Correlation,
    /// Contracted against `T̃` (mode sizes `d_k²`).
    Augmented,
}

impl WitnessKind {
    pub fn mode_sizes(self, dims: &[usize]) -> Vec<usize> {
        match self {
            WitnessKind::Correlation => dims.iter().map(|d| d * d - 1).collect(),
            WitnessKind::Augmented => dims.iter().map(|d| d * d).collect(),
        }
    }

    pub fn constant(self, dims: &[usize]) -> f64 {
        match self {
            WitnessKind::Correlation => body_constant(dims),
            WitnessKind::Augmented => augmented_constant(dims),
        }
    }

    fn tensor_of(self, rho: &DensityMatrix) -> RealTensor {
        match self {
            WitnessKind::Correlation => correlation_tensor(rho).tensor,
            WitnessKind::Augmented => augmented_tensor(rho).tensor,
        }
    }
}

/// Real witness matrix (order 2) or tensor, with its largest singular value
/// over all unfoldings cached.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    kind: WitnessKind,
    entries: RealTensor,
    sigma_max: f64,
    construction_mode: Option<usize>,
}

impl Witness {
    pub fn new(kind: WitnessKind, entries: RealTensor) -> Self {
        let sigma_max = entries.sigma_max();
        Self {
            kind,
            entries,
            sigma_max,
            construction_mode: None,
        }
    }

    pub fn from_matrix(kind: WitnessKind, m: &DMatrix<f64>) -> Self {
        Self::new(kind, RealTensor::from_matrix(m))
    }

    pub fn kind(&self) -> WitnessKind {
        self.kind
    }

    pub fn entries(&self) -> &RealTensor {
        &self.entries
    }

    /// Cached max over modes of the largest unfolding singular value.
    pub fn sigma_max(&self) -> f64 {
        self.sigma_max
    }

    pub fn recompute_sigma_max(&self) -> f64 {
        self.entries.sigma_max()
    }

    pub fn sigma_max_mode(&self, mode: usize) -> Result<f64> {
        self.entries.spectral_norm_mode(mode)
    }

    /// Unfolding the witness was built on, for witnesses from [`optimal_witness`].
    pub fn construction_mode(&self) -> Option<usize> {
        self.construction_mode
    }

    fn check_shape(&self, dims: &[usize]) -> Result<()> {
        let expected = self.kind.mode_sizes(dims);
        if self.entries.shape() != expected.as_slice() {
            return Err(Error::ShapeMismatch {
                expected,
                got: self.entries.shape().to_vec(),
            });
        }
        Ok(())
    }
}

fn kind_label(kind: WitnessKind) -> &'static str {
    match kind {
        WitnessKind::Correlation => "correlation",
        WitnessKind::Augmented => "augmented",
    }
}

/// PPT test for every single-party-vs-rest cut. Two-party states get one
/// report (both partial transposes share a spectrum). `lhs = -λ_min(ρ^{T_k})`.
pub fn ppt(rho: &DensityMatrix) -> Vec<CriterionReport> {
    let parties: Vec<usize> = if rho.parties() == 2 {
        vec![1]
    } else {
        (0..rho.parties()).collect()
    };
    let sufficient = matches!(rho.dims(), [2, 2] | [2, 3] | [3, 2]);
    parties
        .into_iter()
        .map(|party| {
            let pt = rho.partial_transpose(party).expect("party in range");
            let min_eig = hermitian_eigenvalues(&pt)[0];
            let mut report = CriterionReport::new("ppt", -min_eig, 0.0, json!({ "party": party }));
            if sufficient && !report.is_entangled() {
                report.verdict = Verdict::SeparableProven;
            }
            report
        })
        .collect()
}

/// The PPT report with the largest margin over all cuts.
pub fn ppt_headline(rho: &DensityMatrix) -> CriterionReport {
    ppt(rho)
        .into_iter()
        .reduce(|a, b| if b.margin > a.margin { b } else { a })
        .expect("at least one party")
}

/// Realignment: `‖R(ρ)‖_tr ≤ 1` for separable two-party states.
pub fn realignment_criterion(rho: &DensityMatrix) -> Result<CriterionReport> {
    let r = rho.realign()?;
    Ok(CriterionReport::new(
        "realignment",
        trace_norm(&r),
        1.0,
        Value::Null,
    ))
}

fn require_bipartite(rho: &DensityMatrix) -> Result<()> {
    if rho.parties() == 2 {
        Ok(())
    } else {
        Err(Error::NotBipartite(rho.parties()))
    }
}

/// Correlation matrix criterion: `‖T‖_tr ≤ √((d1-1)(d2-1)/(4 d1 d2))`.
pub fn cm_bipartite(rho: &DensityMatrix) -> Result<CriterionReport> {
    require_bipartite(rho)?;
    let t = correlation_tensor(rho).tensor.to_matrix()?;
    let lhs = crate::matcore::real_trace_norm(&t);
    Ok(CriterionReport::new(
        "cm",
        lhs,
        body_constant(rho.dims()),
        Value::Null,
    ))
}

/// Bordered correlation matrix criterion:
/// `‖T̃‖_tr ≤ √((d1²-d1+2)(d2²-d2+2)) / (2 d1 d2)`.
pub fn augmented_cm_bipartite(rho: &DensityMatrix) -> Result<CriterionReport> {
    require_bipartite(rho)?;
    let t = augmented_tensor(rho).tensor.to_matrix()?;
    let lhs = crate::matcore::real_trace_norm(&t);
    Ok(CriterionReport::new(
        "augmented-cm",
        lhs,
        augmented_constant(rho.dims()),
        Value::Null,
    ))
}

/// Two-party witness bound `|Σ w_kl X_kl| ≤ c · σ_max(w)` with `X = T̃` or `T`.
pub fn theorem1_eval(rho: &DensityMatrix, w: &Witness) -> Result<CriterionReport> {
    require_bipartite(rho)?;
    w.check_shape(rho.dims())?;
    let lhs = w.entries.contract(&w.kind.tensor_of(rho))?.abs();
    let bound = w.kind.constant(rho.dims()) * w.sigma_max;
    Ok(CriterionReport::new(
        "theorem1",
        lhs,
        bound,
        json!({ "kind": kind_label(w.kind), "sigma_max": w.sigma_max }),
    ))
}

fn require_parties(rho: &DensityMatrix) -> Result<()> {
    if rho.parties() < 2 {
        return Err(Error::InvalidArgument(
            "multipartite criteria need at least two parties".into(),
        ));
    }
    Ok(())
}

fn ky_fan_report(name: &str, t: &RealTensor, bound: f64) -> CriterionReport {
    let norms = t.mode_kf_norms();
    let (lhs, mode) = t.kf_norm();
    CriterionReport::new(
        name,
        lhs,
        bound,
        json!({ "mode": mode, "mode_norms": norms }),
    )
}

/// Generalized correlation matrix criterion: `‖T‖_KF ≤ Π_k √((d_k-1)/(2d_k))`.
pub fn gcm_multipartite(rho: &DensityMatrix) -> Result<CriterionReport> {
    require_parties(rho)?;
    Ok(ky_fan_report(
        "gcm",
        &correlation_tensor(rho).tensor,
        body_constant(rho.dims()),
    ))
}

/// Augmented version: `‖T̃‖_KF ≤ Π_k √((d_k²-d_k+2)/(2d_k²))`.
pub fn augmented_gcm_multipartite(rho: &DensityMatrix) -> Result<CriterionReport> {
    require_parties(rho)?;
    Ok(ky_fan_report(
        "augmented-gcm",
        &augmented_tensor(rho).tensor,
        augmented_constant(rho.dims()),
    ))
}

/// N-party witness bound on one unfolding:
/// `|Σ w·X| ≤ c · σ_max(w_mode)`, X = `T` or `T̃` by witness kind.
pub fn theorem2_eval(rho: &DensityMatrix, w: &Witness, mode: usize) -> Result<CriterionReport> {
    w.check_shape(rho.dims())?;
    let sigma = w.sigma_max_mode(mode)?;
    let lhs = w.entries.contract(&w.kind.tensor_of(rho))?.abs();
    let bound = w.kind.constant(rho.dims()) * sigma;
    Ok(CriterionReport::new(
        "theorem2",
        lhs,
        bound,
        json!({ "kind": kind_label(w.kind), "mode": mode, "sigma_mode": sigma }),
    ))
}

/// Headline N-party witness report. The bound uses the largest σ_max over all
/// unfoldings (the most conservative reading); per-mode margins and the
/// tightest (min over modes) margin are listed in `detail`.
pub fn theorem2_eval_all(rho: &DensityMatrix, w: &Witness) -> Result<CriterionReport> {
    w.check_shape(rho.dims())?;
    let lhs = w.entries.contract(&w.kind.tensor_of(rho))?.abs();
    let c = w.kind.constant(rho.dims());
    let sigmas: Vec<f64> = (0..w.entries.order())
        .map(|n| w.sigma_max_mode(n))
        .collect::<Result<_>>()?;
    let margins: Vec<f64> = sigmas.iter().map(|s| lhs - c * s).collect();
    let tightest = margins.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(CriterionReport::new(
        "theorem2",
        lhs,
        c * w.sigma_max,
        json!({
            "kind": kind_label(w.kind),
            "sigma_modes": sigmas,
            "mode_margins": margins,
            "tightest_margin": tightest,
        }),
    ))
}

/// Witness saturating the Ky Fan norm of `t`: on the unfolding that attains
/// `‖t‖_KF`, with thin SVD `t_n = U Σ Vᵗ`, the witness unfolding is `U Vᵗ`.
/// Then `Σ w·t = Tr Σ = ‖t‖_KF` and every singular value of `w_n` is 1.
///
/// For order 2 this is also σ_max over both unfoldings. For higher orders the
/// other unfoldings of the folded witness can have larger singular values.
pub fn optimal_witness(t: &RealTensor, kind: WitnessKind) -> Witness {
    let (_, mode) = t.kf_norm();
    let unfolding = t.unfold(mode).expect("kf_norm mode is valid");
    let svd = unfolding.svd(true, true);
    let u = svd.u.expect("left singular vectors requested");
    let v_t = svd.v_t.expect("right singular vectors requested");
    let w_n = u * v_t;
    let entries = RealTensor::fold(t.shape(), mode, &w_n).expect("unfolding shape round-trips");
    let mut w = Witness::new(kind, entries);
    w.construction_mode = Some(mode);
    w
}

/// Criteria that can be selected by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CriterionId {
    Ppt,
    Realignment,
    Cm,
    AugmentedCm,
    /// Two-party witness bound with the printed 9×9 tiles-state witness.
    WitnessM,
    Gcm,
    AugmentedGcm,
}

impl CriterionId {
    pub const ALL: [CriterionId; 7] = [
        CriterionId::Ppt,
        CriterionId::Realignment,
        CriterionId::Cm,
        CriterionId::AugmentedCm,
        CriterionId::WitnessM,
        CriterionId::Gcm,
        CriterionId::AugmentedGcm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CriterionId::Ppt => "ppt",
            CriterionId::Realignment => "realignment",
            CriterionId::Cm => "cm",
            CriterionId::AugmentedCm => "augmented-cm",
            CriterionId::WitnessM => "witness-m",
            CriterionId::Gcm => "gcm",
            CriterionId::AugmentedGcm => "augmented-gcm",
        }
    }

    /// Headline report. PPT gives the worst cut.
    pub fn evaluate(self, rho: &DensityMatrix) -> Result<CriterionReport> {
        match self {
            CriterionId::Ppt => Ok(ppt_headline(rho)),
            CriterionId::Realignment => realignment_criterion(rho),
            CriterionId::Cm => cm_bipartite(rho),
            CriterionId::AugmentedCm => augmented_cm_bipartite(rho),
            CriterionId::WitnessM => {
                let mut r = theorem1_eval(rho, &catalog::published_witness())?;
                r.criterion = self.name().to_string();
                Ok(r)
            }
            CriterionId::Gcm => gcm_multipartite(rho),
            CriterionId::AugmentedGcm => augmented_gcm_multipartite(rho),
        }
    }

    /// Whether the criterion accepts states with this party structure.
    pub fn applies_to(self, dims: &[usize]) -> bool {
        match self {
            CriterionId::Realignment | CriterionId::Cm | CriterionId::AugmentedCm => {
                dims.len() == 2
            }
            CriterionId::WitnessM => dims == [3, 3],
            CriterionId::Ppt | CriterionId::Gcm | CriterionId::AugmentedGcm => dims.len() >= 2,
        }
    }
}

impl std::fmt::Display for CriterionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for CriterionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CriterionId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let valid: Vec<&str> = CriterionId::ALL.iter().map(|c| c.name()).collect();
                Error::InvalidArgument(format!(
                    "unknown criterion '{s}', expected one of {}",
                    valid.join(", ")
                ))
            })
    }
}

/// All closed-form criteria applicable to the state's party structure:
/// two parties get ppt, realignment, cm, augmented-cm; more parties get
/// one ppt report per cut, then gcm and augmented-gcm.
pub fn battery(rho: &DensityMatrix) -> Vec<CriterionReport> {
    let mut out = ppt(rho);
    let ids: &[CriterionId] = if rho.parties() == 2 {
        &[
            CriterionId::Realignment,
            CriterionId::Cm,
            CriterionId::AugmentedCm,
        ]
    } else {
        &[CriterionId::Gcm, CriterionId::AugmentedGcm]
    };
    out.extend(ids.iter().map(|id| {
        id.evaluate(rho)
            .expect("criterion applies to this structure")
    }));
    out
}
