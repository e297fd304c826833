use super::parser::{parse, Expr};
use super::ParseError;
use crate::error::{Error, Result};
use crate::form::Form;
use crate::poly::WirtingerPolynomial;
use crate::scalar::GaussianRational;

/// Evaluates a parsed expression to a canonical form in dimension `n`.
pub fn evaluate(e: &Expr, n: usize) -> Result<Form> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    Ok(match e {
        Expr::Num(r) => Form::constant(n, GaussianRational::from(r.clone())),
        Expr::I => Form::constant(n, GaussianRational::i()),
        Expr::Var(v) => Form::from_poly(WirtingerPolynomial::variable(n, *v)?),
        Expr::Diff(d) => Form::canonicalize_term(n, &[*d], WirtingerPolynomial::one(n))?,
        Expr::Neg(a) => evaluate(a, n)?.neg(),
        Expr::Add(a, b) => evaluate(a, n)?.add(&evaluate(b, n)?),
        Expr::Sub(a, b) => evaluate(a, n)?.sub(&evaluate(b, n)?),
        // a scalar factor commutes, so both products reduce to the wedge
        Expr::Mul(a, b) | Expr::Wedge(a, b) => evaluate(a, n)?.wedge(&evaluate(b, n)?)?,
        Expr::Pow(a, k) => {
            let base = evaluate(a, n)?;
            let mut out = Form::one(n);
            for _ in 0..*k {
                out = out.wedge(&base)?;
            }
            out
        }
        Expr::Group(a) => evaluate(a, n)?,
    })
}

pub fn parse_form(src: &str, n: usize) -> Result<Form> {
    evaluate(&parse(src, n)?, n)
}

/// Parses an expression that must be free of differentials.
pub fn parse_polynomial(src: &str, n: usize) -> Result<WirtingerPolynomial> {
    let e = parse(src, n)?;
    if e.has_differentials() {
        return Err(Error::Parse(ParseError {
            line: 1,
            column: 1,
            message: "expected a polynomial without differentials".into(),
            expected: Vec::new(),
        }));
    }
    let f = evaluate(&e, n)?;
    Ok(f.coefficient(&[], &[]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let a = parse_form("dz1^dz2", 2).unwrap();
        assert_eq!(
            a,
            Form::monomial(2, &[1, 2], &[], WirtingerPolynomial::one(2)).unwrap()
        );

        let f = &(&WirtingerPolynomial::z(4, 1) * &WirtingerPolynomial::zbar(4, 4))
            + &WirtingerPolynomial::constant(4, 3.into());
        let b = parse_form("(z1*zb4+3)*dz1^dz2^dzb3^dzb4", 4).unwrap();
        assert_eq!(b, Form::monomial(4, &[1, 2], &[3, 4], f).unwrap());

        let c = parse_form("dzb1^dz1", 1).unwrap();
        assert_eq!(
            c.coefficient(&[1], &[1]),
            WirtingerPolynomial::constant(1, (-1).into())
        );
    }

    #[test]
    fn polynomials() {
        let p = parse_polynomial("(z1+zb2)*(z1-zb2)", 2).unwrap();
        assert_eq!(p.to_string(), "z1**2-zb2**2");
        assert!(parse_polynomial("z1*dz1", 1).is_err());
        assert_eq!(
            parse_polynomial("1/2*i", 1)
                .unwrap()
                .constant_value()
                .unwrap()
                .to_string(),
            "1/2*i"
        );
    }

    #[test]
    fn printed_forms_reparse() {
        for src in [
            "i*dz2^dzb1",
            "3+(z1+1)*dz1",
            "(1+2*i)*dz1^dzb2",
            "-1/2*z2**2*dzb1",
            "z4*zb1+3",
        ] {
            let f = parse_form(src, 4).unwrap();
            assert_eq!(f.to_string(), src);
        }
    }
}
