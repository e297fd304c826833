//! Exterior derivative, Dolbeault operators, codifferential and Laplacian
//! on the flat local model.

use serde::Serialize;

use crate::error::Result;
use crate::form::Form;
use crate::metric::HermitianMetric;
use crate::poly::Variable;
use crate::scalar::GaussianRational;
use crate::star::{hodge_star, StarConvention};

fn derivative_part(a: &Form, holomorphic: bool) -> Form {
    let n = a.ambient_n();
    let mut out = Form::zero(n);
    for j in 1..=n {
        let (var, dv) = if holomorphic {
            (Variable::Z(j), Form::dz(n, j))
        } else {
            (Variable::Zbar(j), Form::dzbar(n, j))
        };
        let partial = a.map_coefficients(|c| c.derivative(var).expect("index in range"));
        if partial.is_zero() {
            continue;
        }
        out = out.add(&dv.wedge(&partial).expect("same dimension"));
    }
    out
}

/// `∂a = sum_j dz^j ^ ∂a/∂z^j`.
pub fn dolbeault_del(a: &Form) -> Form {
    derivative_part(a, true)
}

/// `∂̄a = sum_j dzb^j ^ ∂a/∂zb^j`.
pub fn dolbeault_delbar(a: &Form) -> Form {
    derivative_part(a, false)
}

/// `d = ∂ + ∂̄`.
pub fn exterior_d(a: &Form) -> Form {
    dolbeault_del(a).add(&dolbeault_delbar(a))
}

/// Sign of `δ = (-1)^{n(k+1)+1} * d *` with `n` the complex dimension.
pub fn codifferential_sign(n: usize, k: usize) -> GaussianRational {
    GaussianRational::sign((n * (k + 1) + 1) as i64)
}

/// `δa = (-1)^{n(k+1)+1} (*d*) a` for `a` of total degree `k`.
pub fn codifferential(a: &Form, metric: &HermitianMetric, conv: StarConvention) -> Result<Form> {
    let Some(k) = a.total_degree()? else {
        return Ok(Form::zero(a.ambient_n()));
    };
    let inner = exterior_d(&hodge_star(a, metric, conv)?);
    let outer = hodge_star(&inner, metric, conv)?;
    Ok(outer.scale(&codifferential_sign(a.ambient_n(), k)))
}

/// `Δ = dδ + δd`.
pub fn laplacian(a: &Form, metric: &HermitianMetric, conv: StarConvention) -> Result<Form> {
    let d_delta = exterior_d(&codifferential(a, metric, conv)?);
    let delta_d = codifferential(&exterior_d(a), metric, conv)?;
    Ok(d_delta.add(&delta_d))
}

/// Flat-model harmonicity: `dψ = 0` and `δψ = 0`. No compactness is
/// assumed or checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicReport {
    pub d_vanishes: bool,
    pub delta_vanishes: bool,
    pub d_residual: Form,
    pub delta_residual: Form,
    pub convention: StarConvention,
}

impl HarmonicReport {
    pub fn harmonic(&self) -> bool {
        self.d_vanishes && self.delta_vanishes
    }

    pub fn summary(&self) -> HarmonicSummary {
        HarmonicSummary {
            convention: self.convention.label().to_string(),
            d_vanishes: self.d_vanishes,
            delta_vanishes: self.delta_vanishes,
            harmonic: self.harmonic(),
            d_residual: self.d_residual.to_string(),
            delta_residual: self.delta_residual.to_string(),
            note: HARMONIC_NOTE.to_string(),
        }
    }
}

pub const HARMONIC_NOTE: &str =
    "harmonic means d=0 and delta=0 on the flat local model; no compactness claim is made";

/// Serializable view of a [`HarmonicReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarmonicSummary {
    pub convention: String,
    pub d_vanishes: bool,
    pub delta_vanishes: bool,
    pub harmonic: bool,
    pub d_residual: String,
    pub delta_residual: String,
    pub note: String,
}

pub fn harmonic_check(a: &Form, metric: &HermitianMetric, conv: StarConvention) -> Result<HarmonicReport> {
    let d_residual = exterior_d(a);
    let delta_residual = codifferential(a, metric, conv)?;
    Ok(HarmonicReport {
        d_vanishes: d_residual.is_zero(),
        delta_vanishes: delta_residual.is_zero(),
        d_residual,
        delta_residual,
        convention: conv,
    })
}
