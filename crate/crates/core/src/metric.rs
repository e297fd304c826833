//! Constant Hermitian metrics and the structures they induce on forms:
//! the associated (1,1)-form, the volume form, raised coefficients and the
//! pointwise inner product.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::form::{Basis, Form, MultiIndex};
use crate::poly::WirtingerPolynomial;
use crate::scalar::{is_positive_real, GaussianRational};

pub type Matrix = Vec<Vec<GaussianRational>>;

/// Exact determinant by Gaussian elimination over ℚ(i).
pub fn determinant(m: &Matrix) -> GaussianRational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = GaussianRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return GaussianRational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let inv = a[col][col].inv().expect("nonzero pivot");
        det = &det * &a[col][col];
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..n {
                let sub = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &sub;
            }
        }
    }
    det
}

/// Exact inverse by Gauss-Jordan elimination.
pub fn inverse(m: &Matrix) -> Result<Matrix> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut row = row.clone();
            row.extend((0..n).map(|c| {
                if c == r {
                    GaussianRational::one()
                } else {
                    GaussianRational::zero()
                }
            }));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
        a.swap(pivot, col);
        let inv = a[col][col].inv()?;
        for c in 0..2 * n {
            a[col][c] = &a[col][c] * &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..2 * n {
                let sub = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &sub;
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant of the submatrix with the given (1-based) rows and columns.
pub fn minor(m: &Matrix, rows: &MultiIndex, cols: &MultiIndex) -> GaussianRational {
    let sub: Matrix = rows
        .as_slice()
        .iter()
        .map(|&r| cols.as_slice().iter().map(|&c| m[r - 1][c - 1].clone()).collect())
        .collect();
    determinant(&sub)
}

fn is_identity(m: &Matrix) -> bool {
    m.iter().enumerate().all(|(r, row)| {
        row.iter()
            .enumerate()
            .all(|(c, v)| if r == c { v.is_one() } else { v.is_zero() })
    })
}

/// Constant Hermitian matrix `g_{a b̄}` with cached inverse and determinant.
///
/// Construction enforces Hermitian symmetry and invertibility;
/// positive-definiteness is reported by [`HermitianMetric::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianMetric {
    entries: Matrix,
    inverse: Matrix,
    det: GaussianRational,
    identity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetricValidation {
    pub hermitian: bool,
    pub invertible: bool,
    pub positive_definite: bool,
    pub determinant: String,
    pub leading_minors: Vec<String>,
}

impl MetricValidation {
    pub fn is_valid(&self) -> bool {
        self.hermitian && self.invertible && self.positive_definite
    }
}

fn check_square(entries: &Matrix) -> Result<()> {
    if entries.is_empty() {
        return Err(Error::ZeroDimension);
    }
    for (row, r) in entries.iter().enumerate() {
        if r.len() != entries.len() {
            return Err(Error::NonSquare {
                rows: entries.len(),
                row,
                len: r.len(),
            });
        }
    }
    Ok(())
}

fn hermitian_violations(entries: &Matrix) -> Vec<String> {
    let n = entries.len();
    let mut out = Vec::new();
    for r in 0..n {
        for c in r..n {
            let expected = entries[c][r].conj();
            if entries[r][c] != expected {
                out.push(format!(
                    "[{}][{}] = {} but conj([{}][{}]) = {}",
                    r + 1,
                    c + 1,
                    entries[r][c],
                    c + 1,
                    r + 1,
                    expected
                ));
            }
        }
    }
    out
}

/// Checks a raw matrix without constructing a metric.
pub fn validate_matrix(entries: &Matrix) -> Result<MetricValidation> {
    check_square(entries)?;
    let n = entries.len();
    let hermitian = hermitian_violations(entries).is_empty();
    let det = determinant(entries);
    let leading: Vec<GaussianRational> = (1..=n)
        .map(|k| {
            let idx = MultiIndex::from(&(1..=k).collect::<Vec<_>>()[..]);
            minor(entries, &idx, &idx)
        })
        .collect();
    Ok(MetricValidation {
        hermitian,
        invertible: !det.is_zero(),
        positive_definite: hermitian && leading.iter().all(is_positive_real),
        determinant: det.to_string(),
        leading_minors: leading.iter().map(ToString::to_string).collect(),
    })
}

impl HermitianMetric {
    pub fn new(entries: Matrix) -> Result<Self> {
        check_square(&entries)?;
        let violations = hermitian_violations(&entries);
        if !violations.is_empty() {
            return Err(Error::NotHermitian(violations.join("; ")));
        }
        let det = determinant(&entries);
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let inverse = inverse(&entries)?;
        let identity = is_identity(&entries);
        Ok(Self {
            entries,
            inverse,
            det,
            identity,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1; n])
    }

    pub fn diagonal(diag: &[i64]) -> Self {
        let n = diag.len();
        let entries = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        if r == c {
                            GaussianRational::from(diag[r])
                        } else {
                            GaussianRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(entries).expect("diagonal metric with nonzero entries")
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    /// `H = G^{-1}`, so that `sum_b g_{a b̄} H[b][c] = δ_{ac}`.
    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }

    pub fn determinant(&self) -> &GaussianRational {
        &self.det
    }

    pub fn is_identity(&self) -> bool {
        self.identity
    }

    pub fn validate(&self) -> MetricValidation {
        validate_matrix(&self.entries).expect("square by construction")
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if self.n() != n {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: n,
            });
        }
        Ok(())
    }

    /// `omega = i sum g_{a b̄} dz^a ^ dzb^b`.
    pub fn associated_omega(&self) -> Form {
        let n = self.n();
        let mut out = Form::zero(n);
        for a in 1..=n {
            for b in 1..=n {
                let c = &GaussianRational::i() * &self.entries[a - 1][b - 1];
                if c.is_zero() {
                    continue;
                }
                let term = Form::monomial(n, &[a], &[b], WirtingerPolynomial::constant(n, c))
                    .expect("indices in range");
                out = out.add(&term);
            }
        }
        out
    }

    /// `omega^n / n!`, computed as an explicit wedge power.
    pub fn volume_form(&self) -> Form {
        let n = self.n();
        let omega = self.associated_omega();
        let mut power = Form::one(n);
        let mut factorial = 1i64;
        for k in 1..=n {
            power = power.wedge(&omega).expect("same dimension");
            factorial *= k as i64;
        }
        power.scale(&GaussianRational::from(crate::scalar::rational(1, factorial)))
    }

    /// Raised, conjugated coefficients of a homogeneous `(p,q)`-form:
    ///
    /// `psi^{A B} = sum_{L,M} det H[L,A] · det H[B,M] · conj(psi_{L M})`
    ///
    /// over increasing multi-indices, with `H = G^{-1}`. For the identity
    /// metric this is coefficient-wise conjugation.
    pub fn raise_indices(&self, psi: &Form) -> Result<BTreeMap<Basis, WirtingerPolynomial>> {
        self.check_dim(psi.ambient_n())?;
        let Some((p, q)) = psi.require_bidegree()? else {
            return Ok(BTreeMap::new());
        };
        if self.identity {
            return Ok(psi.terms().map(|(b, c)| (b.clone(), c.conj())).collect());
        }
        let n = self.n();
        let h = &self.inverse;
        let mut out = BTreeMap::new();
        for a in MultiIndex::all_of_size(n, p) {
            for b in MultiIndex::all_of_size(n, q) {
                let mut acc = WirtingerPolynomial::zero(n);
                for ((l, m), c) in psi.terms() {
                    let w = &minor(h, l, &a) * &minor(h, &b, m);
                    if !w.is_zero() {
                        acc = &acc + &c.conj().scale(&w);
                    }
                }
                if !acc.is_zero() {
                    out.insert((a.clone(), b.clone()), acc);
                }
            }
        }
        Ok(out)
    }

    /// Pointwise inner product `(phi, psi) = sum phi_{AB} psi^{AB}` over
    /// increasing multi-indices.
    pub fn pointwise_inner(&self, phi: &Form, psi: &Form) -> Result<WirtingerPolynomial> {
        let n = self.n();
        if phi.ambient_n() != psi.ambient_n() {
            return Err(Error::DimensionMismatch {
                left: phi.ambient_n(),
                right: psi.ambient_n(),
            });
        }
        self.check_dim(phi.ambient_n())?;
        let bp = phi.require_bidegree()?;
        let bq = psi.require_bidegree()?;
        if let (Some(a), Some(b)) = (bp, bq) {
            if a != b {
                return Err(Error::BidegreeMismatch(a.0, a.1, b.0, b.1));
            }
        }
        let raised = self.raise_indices(psi)?;
        let mut acc = WirtingerPolynomial::zero(n);
        for (basis, c) in phi.terms() {
            if let Some(r) = raised.get(basis) {
                acc = &acc + &(c * r);
            }
        }
        Ok(acc)
    }
}

/// Volume-form prefactor: the wedge-power value next to the closed form
/// `(-1)^{n(n-1)/2} g` that omits `i^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VolumePrefactor {
    pub n: usize,
    pub computed: String,
    pub without_i_power: String,
    pub agree: bool,
}

pub fn volume_prefactor_comparison(m: &HermitianMetric) -> VolumePrefactor {
    let n = m.n();
    let top: Vec<usize> = (1..=n).collect();
    let computed = m
        .volume_form()
        .coefficient(&top, &top)
        .constant_value()
        .expect("constant metric gives constant volume coefficient");
    let printed = &GaussianRational::sign((n * (n - 1) / 2) as i64) * m.determinant();
    VolumePrefactor {
        n,
        agree: computed == printed,
        computed: computed.to_string(),
        without_i_power: printed.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    #[test]
    fn validation_examples() {
        let id = HermitianMetric::identity(4).validate();
        assert!(id.is_valid());
        assert_eq!(id.determinant, "1");
        let d = HermitianMetric::diagonal(&[2, 1]).validate();
        assert!(d.is_valid());
        assert_eq!(d.determinant, "2");
        let swap = HermitianMetric::new(vec![vec![g(0, 0), g(1, 0)], vec![g(1, 0), g(0, 0)]]).unwrap();
        let v = swap.validate();
        assert!(v.hermitian && v.invertible && !v.positive_definite);
        assert_eq!(v.leading_minors[0], "0");
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(matches!(
            validate_matrix(&vec![vec![g(1, 0), g(0, 0)], vec![g(0, 0)]]),
            Err(Error::NonSquare { .. })
        ));
        let e = HermitianMetric::new(vec![vec![g(1, 0), g(0, 1)], vec![g(0, 1), g(1, 0)]]).unwrap_err();
        assert!(matches!(e, Error::NotHermitian(ref s) if s.contains("[1][2]")));
        assert_eq!(
            HermitianMetric::new(vec![vec![g(1, 0), g(1, 0)], vec![g(1, 0), g(1, 0)]]),
            Err(Error::Singular)
        );
    }

    #[test]
    fn inverse_and_determinant() {
        let m = HermitianMetric::new(vec![vec![g(2, 0), g(0, 1)], vec![g(0, -1), g(2, 0)]]).unwrap();
        assert_eq!(m.determinant(), &g(3, 0));
        let h = m.inverse();
        for r in 0..2 {
            for c in 0..2 {
                let mut acc = GaussianRational::zero();
                for k in 0..2 {
                    acc += &(&m.entries()[r][k] * &h[k][c]);
                }
                assert_eq!(acc, if r == c { g(1, 0) } else { g(0, 0) });
            }
        }
    }

    #[test]
    fn omega_examples() {
        let i = || WirtingerPolynomial::constant(2, GaussianRational::i());
        assert_eq!(
            HermitianMetric::identity(1).associated_omega(),
            Form::monomial(
                1,
                &[1],
                &[1],
                WirtingerPolynomial::constant(1, GaussianRational::i())
            )
            .unwrap()
        );
        let id2 = Form::monomial(2, &[1], &[1], i())
            .unwrap()
            .add(&Form::monomial(2, &[2], &[2], i()).unwrap());
        assert_eq!(HermitianMetric::identity(2).associated_omega(), id2);
        let d = Form::monomial(2, &[1], &[1], i().scale(&2.into()))
            .unwrap()
            .add(&Form::monomial(2, &[2], &[2], i()).unwrap());
        assert_eq!(HermitianMetric::diagonal(&[2, 1]).associated_omega(), d);
    }

    #[test]
    fn volume_examples() {
        let v1 = HermitianMetric::identity(1).volume_form();
        assert_eq!(v1.to_string(), "i*dz1^dzb1");
        let v2 = HermitianMetric::identity(2).volume_form();
        assert_eq!(v2.to_string(), "dz1^dz2^dzb1^dzb2");
        // i^4 (-1)^6 = 1; the closed form without i^n also gives 1 here
        let v4 = HermitianMetric::identity(4).volume_form();
        assert_eq!(v4.to_string(), "dz1^dz2^dz3^dz4^dzb1^dzb2^dzb3^dzb4");
        let cmp = volume_prefactor_comparison(&HermitianMetric::identity(4));
        assert!(cmp.agree);
        let cmp1 = volume_prefactor_comparison(&HermitianMetric::identity(1));
        assert_eq!(
            (cmp1.computed.as_str(), cmp1.without_i_power.as_str(), cmp1.agree),
            ("i", "1", false)
        );
        let cmp2 = volume_prefactor_comparison(&HermitianMetric::identity(2));
        assert_eq!(
            (cmp2.computed.as_str(), cmp2.without_i_power.as_str()),
            ("1", "-1")
        );
    }

    #[test]
    fn raising_examples() {
        let n = 4;
        let f = WirtingerPolynomial::z(n, 1);
        let psi = Form::monomial(n, &[1, 2], &[3, 4], f.scale(&4.into())).unwrap();
        let raised = HermitianMetric::identity(n).raise_indices(&psi).unwrap();
        assert_eq!(raised.len(), 1);
        assert_eq!(raised.values().next().unwrap(), &f.conj().scale(&4.into()));

        let m = HermitianMetric::diagonal(&[2, 1]);
        let psi = Form::monomial(2, &[1], &[2], WirtingerPolynomial::one(2)).unwrap();
        let raised = m.raise_indices(&psi).unwrap();
        assert_eq!(
            raised.values().next().unwrap(),
            &WirtingerPolynomial::constant(2, rational(1, 2).into())
        );
        assert!(m.raise_indices(&Form::zero(2)).unwrap().is_empty());
        let mixed = Form::dz(2, 1).add(&Form::dzbar(2, 1));
        assert!(matches!(m.raise_indices(&mixed), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn inner_product_examples() {
        let id1 = HermitianMetric::identity(1);
        assert_eq!(
            id1.pointwise_inner(&Form::dz(1, 1), &Form::dz(1, 1)).unwrap(),
            WirtingerPolynomial::one(1)
        );
        let a = Form::monomial(1, &[1], &[1], WirtingerPolynomial::one(1)).unwrap();
        assert_eq!(id1.pointwise_inner(&a, &a).unwrap(), WirtingerPolynomial::one(1));

        let n = 4;
        let f = &(&WirtingerPolynomial::z(n, 1) * &WirtingerPolynomial::zbar(n, 4))
            + &WirtingerPolynomial::constant(n, 3.into());
        let psi = Form::monomial(n, &[1, 2], &[3, 4], f.clone()).unwrap();
        assert_eq!(
            HermitianMetric::identity(n).pointwise_inner(&psi, &psi).unwrap(),
            &f * &f.conj()
        );
        assert!(matches!(
            id1.pointwise_inner(&Form::dz(1, 1), &Form::dzbar(1, 1)),
            Err(Error::BidegreeMismatch(1, 0, 0, 1))
        ));
    }

    #[test]
    fn nondiagonal_inner_product_is_positive() {
        let m = HermitianMetric::new(vec![vec![g(2, 0), g(0, 1)], vec![g(0, -1), g(2, 0)]]).unwrap();
        for psi in [
            Form::dz(2, 1),
            Form::dzbar(2, 2),
            Form::dz(2, 1).add(&Form::dz(2, 2).scale(&g(0, 1))),
        ] {
            let v = m.pointwise_inner(&psi, &psi).unwrap().constant_value().unwrap();
            assert!(is_positive_real(&v), "{v}");
        }
    }
}
