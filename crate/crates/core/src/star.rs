//! The Hodge star on complex forms.
//!
//! For a term `c dz^A ^ dzb^B` of bidegree `(p,q)` the star emits
//!
//! `i^n (-1)^{n(n-1)/2 + (n-p)q} sgn(A,A^c) sgn(B,B^c) det(g) psi^{AB}`
//!
//! where `psi^{AB}` is the raised, conjugated coefficient and `sgn(X,X^c)` is
//! the parity of the sequence `X` followed by its increasing complement.
//! The output basis depends on [`IndexPlacement`]: `dz^{A^c} ^ dzb^{B^c}`
//! (the default, which satisfies `phi ^ *psi = (phi,psi) vol`) or the
//! alternative placement `dz^{B^c} ^ dzb^{A^c}`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::form::{merge_sign, Form, MultiIndex};
use crate::metric::HermitianMetric;
use crate::scalar::GaussianRational;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjugationMode {
    /// One net conjugation of the coefficients.
    #[default]
    Single,
    /// The raised coefficient is conjugated once more.
    Double,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexPlacement {
    /// `dz^{A^c} ^ dzb^{B^c}`.
    #[default]
    SameTypeComplement,
    /// `dz^{B^c} ^ dzb^{A^c}`.
    Swapped,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct StarConvention {
    pub conjugation: ConjugationMode,
    pub output_index: IndexPlacement,
}

impl StarConvention {
    pub const DEFAULT: Self = Self {
        conjugation: ConjugationMode::Single,
        output_index: IndexPlacement::SameTypeComplement,
    };

    /// Double conjugation with swapped output indices.
    pub const LITERAL: Self = Self {
        conjugation: ConjugationMode::Double,
        output_index: IndexPlacement::Swapped,
    };

    pub fn label(&self) -> &'static str {
        match (self.conjugation, self.output_index) {
            (ConjugationMode::Single, IndexPlacement::SameTypeComplement) => "default",
            (ConjugationMode::Double, IndexPlacement::Swapped) => "literal",
            (ConjugationMode::Single, IndexPlacement::Swapped) => "single+swapped",
            (ConjugationMode::Double, IndexPlacement::SameTypeComplement) => "double+complement",
        }
    }
}

impl fmt::Display for StarConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Parity of `(X, X^c)` as a permutation of `1..=n`.
fn complement_parity(x: &MultiIndex, n: usize) -> bool {
    merge_sign(x.as_slice(), x.complement(n).as_slice())
        .expect("disjoint")
        .0
}

/// The scalar factor `i^n (-1)^{n(n-1)/2 + (n-p)q} sgn(A) sgn(B)`.
pub fn star_sign_factor(n: usize, a: &MultiIndex, b: &MultiIndex) -> GaussianRational {
    let (p, q) = (a.len(), b.len());
    let exponent = n * (n - 1) / 2 + (n - p) * q;
    let parity = complement_parity(a, n) ^ complement_parity(b, n);
    let s = GaussianRational::i_pow(n as i64) * GaussianRational::sign(exponent as i64);
    if parity {
        -s
    } else {
        s
    }
}

/// Star of a form of a single bidegree; other input is an error.
pub fn hodge_star_homogeneous(psi: &Form, metric: &HermitianMetric, conv: StarConvention) -> Result<Form> {
    let n = psi.ambient_n();
    if metric.n() != n {
        return Err(Error::DimensionMismatch {
            left: metric.n(),
            right: n,
        });
    }
    let raised = metric.raise_indices(psi)?;
    let mut out = Form::zero(n);
    for ((a, b), c) in raised {
        let c = match conv.conjugation {
            ConjugationMode::Single => c,
            ConjugationMode::Double => c.conj(),
        };
        let k = &star_sign_factor(n, &a, &b) * metric.determinant();
        let (ac, bc) = (a.complement(n), b.complement(n));
        let (dz, dzb) = match conv.output_index {
            IndexPlacement::SameTypeComplement => (ac, bc),
            IndexPlacement::Swapped => (bc, ac),
        };
        out.add_term((dz, dzb), c.scale(&k));
    }
    Ok(out)
}

/// Star applied per bidegree component.
pub fn hodge_star(psi: &Form, metric: &HermitianMetric, conv: StarConvention) -> Result<Form> {
    let mut out = Form::zero(psi.ambient_n());
    for component in psi.components().values() {
        out = out.checked_add(&hodge_star_homogeneous(component, metric, conv)?)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    /// `phi ^ *psi`
    pub lhs: Form,
    /// `(phi, psi) vol`
    pub rhs: Form,
    pub residual: Form,
}

/// Checks `phi ^ *psi = (phi, psi) omega^n/n!` exactly.
pub fn defining_identity_check(
    phi: &Form,
    psi: &Form,
    metric: &HermitianMetric,
    conv: StarConvention,
) -> Result<IdentityCheck> {
    let lhs = phi.wedge(&hodge_star(psi, metric, conv)?)?;
    let inner = if phi.is_zero() || psi.is_zero() {
        crate::poly::WirtingerPolynomial::zero(phi.ambient_n())
    } else {
        metric.pointwise_inner(phi, psi)?
    };
    let rhs = metric.volume_form().mul_poly(&inner)?;
    let residual = lhs.checked_sub(&rhs)?;
    Ok(IdentityCheck {
        holds: residual.is_zero(),
        lhs,
        rhs,
        residual,
    })
}
