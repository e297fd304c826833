//! Projection functionals `Pr+` / `Pr-`, the obstruction `Pr+ - Pr-`,
//! real orthogonal frame changes, paired class normal forms and the
//! K3×K3 product form.
//!
//! `Pr_v(dz^s)` and `Pr_v(dzb^s)` are both read as `c_s`: the value of the
//! differential on the real vector `v = sum c_j ∂/∂x^j`. Under this reading
//! paired forms `dz^s ^ dzb^s` give zero and `dz1^dz2^dzb3^dzb4` gives
//! `c1 + c2 - c3 - c4`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::form::{Form, MultiIndex};
use crate::poly::{Variable, WirtingerPolynomial};
use crate::scalar::{GaussianRational, Rational};

use num_traits::{One, Zero};

/// Real direction `v = sum c_j x^j`, not all `c_j` zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction {
    components: Vec<Rational>,
}

impl Direction {
    pub fn new(components: Vec<Rational>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if components.iter().all(Zero::is_zero) {
            return Err(Error::ZeroDirection);
        }
        Ok(Self { components })
    }

    pub fn from_ints(c: &[i64]) -> Result<Self> {
        Self::new(c.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    /// Unit vector `e_j`.
    pub fn basis(n: usize, j: usize) -> Self {
        let mut c = vec![Rational::zero(); n];
        c[j - 1] = Rational::one();
        Self { components: c }
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Rational] {
        &self.components
    }

    /// Components in a primed frame `z = A z'`, i.e. `c' = A^T c`.
    pub fn in_frame(&self, a: &RealOrthogonalMatrix) -> Result<Self> {
        if a.n() != self.n() {
            return Err(Error::DimensionMismatch {
                left: a.n(),
                right: self.n(),
            });
        }
        let n = self.n();
        let c = (0..n)
            .map(|m| (0..n).map(|j| &a.entries[j][m] * &self.components[j]).sum())
            .collect();
        Self::new(c)
    }

    /// Parses `"1,0,-1/2,3"`.
    pub fn parse(src: &str) -> Result<Self> {
        let comps = src
            .split(',')
            .map(|s| {
                let v: GaussianRational = s.trim().parse()?;
                if !v.is_real() {
                    return Err(Error::InvalidScalar(s.to_string()));
                }
                Ok(v.re().clone())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(comps)
    }
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| GaussianRational::from(c.clone()).to_string())
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Exact rational matrix with `A^T A = I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealOrthogonalMatrix {
    entries: Vec<Vec<Rational>>,
}

impl RealOrthogonalMatrix {
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        for (row, r) in entries.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NonSquare {
                    rows: n,
                    row,
                    len: r.len(),
                });
            }
        }
        let mut bad = Vec::new();
        for r in 0..n {
            for c in 0..n {
                let dot: Rational = (0..n).map(|k| &entries[k][r] * &entries[k][c]).sum();
                let expected = if r == c { Rational::one() } else { Rational::zero() };
                if dot != expected {
                    bad.push(format!(
                        "(A^T A)[{}][{}] = {}",
                        r + 1,
                        c + 1,
                        GaussianRational::from(dot)
                    ));
                }
            }
        }
        if !bad.is_empty() {
            return Err(Error::NotOrthogonal(bad.join("; ")));
        }
        Ok(Self { entries })
    }

    pub fn identity(n: usize) -> Self {
        Self::permutation(&(0..n).collect::<Vec<_>>()).expect("identity permutation")
    }

    /// Matrix sending basis vector `perm[j]` to `j` (rows are unit vectors).
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let entries = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        if perm[r] == c {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(entries)
    }

    /// Rotation by `(cos, sin) = (a/c, b/c)` in the `(i, j)` plane
    /// (1-based), for a Pythagorean triple `a² + b² = c²`.
    pub fn rotation(n: usize, i: usize, j: usize, a: i64, b: i64, c: i64) -> Result<Self> {
        let mut entries: Vec<Vec<Rational>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|k| if r == k { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        let cos = crate::scalar::rational(a, c);
        let sin = crate::scalar::rational(b, c);
        entries[i - 1][i - 1] = cos.clone();
        entries[i - 1][j - 1] = sin.clone();
        entries[j - 1][i - 1] = -sin;
        entries[j - 1][j - 1] = cos;
        Self::new(entries)
    }

    pub fn sign_flip(n: usize, j: usize) -> Self {
        let mut entries: Vec<Vec<Rational>> = Self::identity(n).entries;
        entries[j - 1][j - 1] = -Rational::one();
        Self { entries }
    }

    pub fn product(&self, rhs: &Self) -> Result<Self> {
        if self.n() != rhs.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: rhs.n(),
            });
        }
        let n = self.n();
        let entries = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| (0..n).map(|k| &self.entries[r][k] * &rhs.entries[k][c]).sum())
                    .collect()
            })
            .collect();
        Self::new(entries)
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }
}

fn check_dim(a: &Form, n: usize) -> Result<()> {
    if a.ambient_n() != n {
        return Err(Error::DimensionMismatch {
            left: a.ambient_n(),
            right: n,
        });
    }
    Ok(())
}

/// Symbolic `Pr+` / `Pr-`: entry `s-1` is the polynomial multiplying `c_s`.
pub fn projection_coefficients(a: &Form) -> (Vec<WirtingerPolynomial>, Vec<WirtingerPolynomial>) {
    let n = a.ambient_n();
    let mut plus = vec![WirtingerPolynomial::zero(n); n];
    let mut minus = vec![WirtingerPolynomial::zero(n); n];
    for ((i, j), c) in a.terms() {
        for &s in i.as_slice() {
            plus[s - 1] = &plus[s - 1] + c;
        }
        for &s in j.as_slice() {
            minus[s - 1] = &minus[s - 1] + c;
        }
    }
    (plus, minus)
}

fn evaluate(coeffs: &[WirtingerPolynomial], v: &Direction) -> WirtingerPolynomial {
    let n = coeffs.first().map_or(0, WirtingerPolynomial::ambient_n);
    coeffs
        .iter()
        .zip(v.components())
        .fold(WirtingerPolynomial::zero(n), |acc, (p, c)| {
            &acc + &p.scale(&GaussianRational::from(c.clone()))
        })
}

/// `Pr+,v(a) = sum_terms coeff * sum_{s in I} c_s`.
pub fn pr_plus(a: &Form, v: &Direction) -> Result<WirtingerPolynomial> {
    check_dim(a, v.n())?;
    Ok(evaluate(&projection_coefficients(a).0, v))
}

/// `Pr-,v(a) = sum_terms coeff * sum_{s in J} c_s`.
pub fn pr_minus(a: &Form, v: &Direction) -> Result<WirtingerPolynomial> {
    check_dim(a, v.n())?;
    Ok(evaluate(&projection_coefficients(a).1, v))
}

/// `Pr+,v(a) - Pr-,v(a)`.
pub fn obstruction(a: &Form, v: &Direction) -> Result<WirtingerPolynomial> {
    Ok(&pr_plus(a, v)? - &pr_minus(a, v)?)
}

/// Obstruction as a linear form in `c_1..c_n`: entry `s-1` multiplies `c_s`.
pub fn obstruction_symbolic(a: &Form) -> Vec<WirtingerPolynomial> {
    let (plus, minus) = projection_coefficients(a);
    plus.iter().zip(&minus).map(|(p, m)| p - m).collect()
}

/// Renders the symbolic obstruction, e.g. `c1+c2-c3-c4`.
pub fn render_symbolic(coeffs: &[WirtingerPolynomial]) -> String {
    let mut out = String::new();
    for (s, p) in coeffs.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let term = match p.constant_value() {
            Some(v) if v.is_one() => format!("c{}", s + 1),
            Some(v) if (-&v).is_one() => format!("-c{}", s + 1),
            _ => format!("({p})*c{}", s + 1),
        };
        if !out.is_empty() && !term.starts_with('-') {
            out.push('+');
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

/// `coeff * prod_{s in S} (dz^s ^ dzb^s)`, canonicalized.
pub fn paired_class_form(n: usize, s: &MultiIndex, coeff: WirtingerPolynomial) -> Result<Form> {
    if s.is_empty() {
        return Err(Error::NotHomogeneous(
            "paired class needs a nonempty index set".into(),
        ));
    }
    if let Some(m) = s.largest() {
        if m > n {
            return Err(Error::IndexOutOfRange { index: m, n });
        }
    }
    let mut out = Form::from_poly(coeff);
    for &k in s.as_slice() {
        let pair = Form::dz(n, k).wedge(&Form::dzbar(n, k))?;
        out = out.wedge(&pair)?;
    }
    Ok(out)
}

/// Substitutes `dz^j -> sum_m a_{jm} dz'^m`, `dzb^j -> sum_m a_{jm} dzb'^m`
/// and the coordinates likewise; the result is written in the primed frame.
pub fn transform_form(a: &Form, m: &RealOrthogonalMatrix) -> Result<Form> {
    let n = a.ambient_n();
    if m.n() != n {
        return Err(Error::DimensionMismatch {
            left: m.n(),
            right: n,
        });
    }
    let row = |j: usize| -> Vec<GaussianRational> {
        m.entries()[j - 1]
            .iter()
            .map(|r| GaussianRational::from(r.clone()))
            .collect()
    };
    let lin_poly = |j: usize, var: fn(usize, usize) -> WirtingerPolynomial| {
        row(j)
            .iter()
            .enumerate()
            .fold(WirtingerPolynomial::zero(n), |acc, (k, c)| {
                &acc + &var(n, k + 1).scale(c)
            })
    };
    let lin_form = |j: usize, d: fn(usize, usize) -> Form| {
        row(j)
            .iter()
            .enumerate()
            .fold(Form::zero(n), |acc, (k, c)| acc.add(&d(n, k + 1).scale(c)))
    };
    let z_img: Vec<_> = (1..=n).map(|j| lin_poly(j, WirtingerPolynomial::z)).collect();
    let zb_img: Vec<_> = (1..=n).map(|j| lin_poly(j, WirtingerPolynomial::zbar)).collect();
    let dz_img: Vec<_> = (1..=n).map(|j| lin_form(j, Form::dz)).collect();
    let dzb_img: Vec<_> = (1..=n).map(|j| lin_form(j, Form::dzbar)).collect();
    let mut out = Form::zero(n);
    for ((i, j), c) in a.terms() {
        let mut term = Form::from_poly(c.substitute(&z_img, &zb_img));
        for &k in i.as_slice() {
            term = term.wedge(&dz_img[k - 1])?;
        }
        for &k in j.as_slice() {
            term = term.wedge(&dzb_img[k - 1])?;
        }
        out = out.add(&term);
    }
    Ok(out)
}

fn require_independent(p: &WirtingerPolynomial, vars: &[Variable]) -> Result<()> {
    for &v in vars {
        if p.depends_on(v)? {
            return Err(Error::NotHolomorphic {
                variable: v.to_string(),
            });
        }
    }
    Ok(())
}

/// `(f1 dz1^dz2) ^ conj(f2 dz3^dz4)` on the four-dimensional product chart.
///
/// `f1` may depend only on `z1, z2` and `f2` only on `z3, z4`.
pub fn k3_product_form(f1: &WirtingerPolynomial, f2: &WirtingerPolynomial) -> Result<Form> {
    const N: usize = 4;
    for f in [f1, f2] {
        if f.ambient_n() != N {
            return Err(Error::DimensionMismatch {
                left: N,
                right: f.ambient_n(),
            });
        }
    }
    let bars: Vec<Variable> = (1..=N).map(Variable::Zbar).collect();
    require_independent(f1, &[Variable::Z(3), Variable::Z(4)])?;
    require_independent(f1, &bars)?;
    require_independent(f2, &[Variable::Z(1), Variable::Z(2)])?;
    require_independent(f2, &bars)?;
    let lambda1 = Form::monomial(N, &[1, 2], &[], f1.clone())?;
    let lambda2 = Form::monomial(N, &[3, 4], &[], f2.clone())?;
    lambda1.wedge(&lambda2.conjugate())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectionVerdict {
    pub direction: String,
    pub value: String,
    pub zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrameVerdict {
    pub frame: String,
    pub form: String,
    /// Obstruction as a linear form in the primed components `c'_s`.
    pub symbolic: String,
    pub symbolic_zero: bool,
    pub directions: Vec<DirectionVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma34Report {
    pub input: String,
    pub frames: Vec<FrameVerdict>,
    pub all_zero: bool,
    pub notes: Vec<String>,
}

pub const OUT_OF_SCOPE_NOTE: &str =
    "only the algebraic functionals are evaluated; cohomological conclusions are out of engine scope";

/// Evaluates the obstruction in the standard frame and in each transformed
/// frame. `directions` are given in standard components and mapped into each
/// frame by `c' = A^T c`.
pub fn lemma34_scenario(
    a: &Form,
    directions: &[Direction],
    transforms: &[RealOrthogonalMatrix],
) -> Result<Lemma34Report> {
    let n = a.ambient_n();
    let mut frames = Vec::new();
    let identity = RealOrthogonalMatrix::identity(n);
    let all = std::iter::once(("standard".to_string(), &identity)).chain(
        transforms
            .iter()
            .enumerate()
            .map(|(k, m)| (format!("transform {}", k + 1), m)),
    );
    for (label, m) in all {
        let form = transform_form(a, m)?;
        let symbolic = obstruction_symbolic(&form);
        let mut verdicts = Vec::new();
        for v in directions {
            let primed = v.in_frame(m)?;
            let value = obstruction(&form, &primed)?;
            verdicts.push(DirectionVerdict {
                direction: v.to_string(),
                zero: value.is_zero(),
                value: value.to_string(),
            });
        }
        frames.push(FrameVerdict {
            frame: label,
            form: form.to_string(),
            symbolic_zero: symbolic.iter().all(WirtingerPolynomial::is_zero),
            symbolic: render_symbolic(&symbolic),
            directions: verdicts,
        });
    }
    let all_zero = frames
        .iter()
        .all(|f| f.symbolic_zero && f.directions.iter().all(|d| d.zero));
    Ok(Lemma34Report {
        input: a.to_string(),
        frames,
        all_zero,
        notes: vec![OUT_OF_SCOPE_NOTE.to_string()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn psi12_34() -> Form {
        Form::monomial(4, &[1, 2], &[3, 4], WirtingerPolynomial::one(4)).unwrap()
    }

    #[test]
    fn projections() {
        let v = Direction::from_ints(&[5, 7]).unwrap();
        let a = Form::monomial(2, &[1], &[1], WirtingerPolynomial::one(2)).unwrap();
        assert_eq!(
            pr_plus(&a, &v).unwrap(),
            WirtingerPolynomial::constant(2, 5.into())
        );
        assert_eq!(
            pr_minus(&a, &v).unwrap(),
            WirtingerPolynomial::constant(2, 5.into())
        );
        let f = &WirtingerPolynomial::z(4, 1) + &WirtingerPolynomial::zbar(4, 3);
        let b = Form::monomial(4, &[1, 2], &[3, 4], f.clone()).unwrap();
        let w = Direction::from_ints(&[2, 3, 5, 7]).unwrap();
        assert_eq!(pr_plus(&b, &w).unwrap(), f.scale(&5.into()));
        assert!(pr_plus(&Form::zero(4), &w).unwrap().is_zero());
        assert!(pr_plus(&b, &v).is_err());
    }

    #[test]
    fn obstruction_examples() {
        let v = Direction::from_ints(&[2, -1, 3, 4]).unwrap();
        let paired = Form::dz(4, 1)
            .wedge(&Form::dzbar(4, 1))
            .unwrap()
            .wedge(&Form::dz(4, 2).wedge(&Form::dzbar(4, 2)).unwrap())
            .unwrap();
        assert!(obstruction(&paired, &v).unwrap().is_zero());
        assert_eq!(
            obstruction(&psi12_34(), &Direction::basis(4, 1)).unwrap(),
            WirtingerPolynomial::one(4)
        );
        assert_eq!(render_symbolic(&obstruction_symbolic(&psi12_34())), "c1+c2-c3-c4");
    }

    #[test]
    fn paired_class_examples() {
        let s = MultiIndex::from(&[3, 4][..]);
        let a = paired_class_form(4, &s, WirtingerPolynomial::one(4)).unwrap();
        let expected = Form::dz(4, 3)
            .wedge(&Form::dzbar(4, 3))
            .unwrap()
            .wedge(&Form::dz(4, 4))
            .unwrap()
            .wedge(&Form::dzbar(4, 4))
            .unwrap();
        assert_eq!(a, expected);
        assert_eq!(a.to_string(), "-dz3^dz4^dzb3^dzb4");
        assert!(obstruction_symbolic(&a).iter().all(WirtingerPolynomial::is_zero));
        let one = paired_class_form(1, &MultiIndex::from(&[1][..]), WirtingerPolynomial::one(1)).unwrap();
        assert_eq!(one.to_string(), "dz1^dzb1");
        assert!(paired_class_form(2, &MultiIndex::from(&[3][..]), WirtingerPolynomial::one(2)).is_err());
    }

    #[test]
    fn transforms() {
        let a = psi12_34();
        assert_eq!(transform_form(&a, &RealOrthogonalMatrix::identity(4)).unwrap(), a);
        let r = RealOrthogonalMatrix::rotation(2, 1, 2, 3, 4, 5).unwrap();
        let img = transform_form(&Form::dz(2, 1), &r).unwrap();
        let expected = Form::dz(2, 1)
            .scale(&rational(3, 5).into())
            .add(&Form::dz(2, 2).scale(&rational(4, 5).into()));
        assert_eq!(img, expected);
        let kahler = Form::dz(2, 1)
            .wedge(&Form::dzbar(2, 1))
            .unwrap()
            .add(&Form::dz(2, 2).wedge(&Form::dzbar(2, 2)).unwrap());
        assert_eq!(transform_form(&kahler, &r).unwrap(), kahler);
        assert!(RealOrthogonalMatrix::new(vec![
            vec![rational(1, 1), rational(1, 1)],
            vec![rational(0, 1), rational(1, 1)]
        ])
        .is_err());
    }

    #[test]
    fn k3_examples() {
        let one = WirtingerPolynomial::one(4);
        assert_eq!(k3_product_form(&one, &one).unwrap(), psi12_34());
        let a = k3_product_form(&WirtingerPolynomial::z(4, 1), &WirtingerPolynomial::z(4, 3)).unwrap();
        let expected = Form::monomial(
            4,
            &[1, 2],
            &[3, 4],
            &WirtingerPolynomial::z(4, 1) * &WirtingerPolynomial::zbar(4, 3),
        )
        .unwrap();
        assert_eq!(a, expected);
        assert_eq!(
            k3_product_form(&WirtingerPolynomial::zbar(4, 1), &one),
            Err(Error::NotHolomorphic {
                variable: "zb1".into()
            })
        );
        assert_eq!(
            k3_product_form(&one, &WirtingerPolynomial::z(4, 2)),
            Err(Error::NotHolomorphic {
                variable: "z2".into()
            })
        );
    }

    #[test]
    fn scenario_examples() {
        let s = MultiIndex::from(&[1, 2][..]);
        let a = paired_class_form(4, &s, WirtingerPolynomial::one(4)).unwrap();
        let dirs = vec![
            Direction::basis(4, 1),
            Direction::from_ints(&[1, 2, 3, 4]).unwrap(),
        ];
        let frames = vec![
            RealOrthogonalMatrix::rotation(4, 1, 3, 3, 4, 5).unwrap(),
            RealOrthogonalMatrix::permutation(&[2, 0, 3, 1]).unwrap(),
        ];
        let r = lemma34_scenario(&a, &dirs, &frames).unwrap();
        assert_eq!(r.frames.len(), 3);
        assert!(r.all_zero);
        let r = lemma34_scenario(&psi12_34(), &dirs[..1], &[]).unwrap();
        assert!(!r.frames[0].directions[0].zero);
        assert!(lemma34_scenario(&Form::zero(4), &dirs, &frames).unwrap().all_zero);
    }

    #[test]
    fn direction_parsing() {
        let v = Direction::parse("1, 0, -1/2,3").unwrap();
        assert_eq!(v.components()[2], rational(-1, 2));
        assert_eq!(Direction::parse("0,0"), Err(Error::ZeroDirection));
        assert!(Direction::parse("i,1").is_err());
    }
}
