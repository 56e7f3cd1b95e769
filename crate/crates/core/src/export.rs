//! Serializable documents for polynomials, reports and convergent tables.
//!
//! Exact coefficients are written as two lists of rational strings, the
//! numerator and denominator of a rational function in `Z`, constant term
//! first. Parsing them back yields values equal to the originals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jfrac::JFraction;
use crate::qcore::QContext;
use crate::qpoly::Poly;
use crate::scalar::{parse_rational, rational_to_string, Backend, Real, ZRat};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContextRecord {
    pub q: String,
    pub a: String,
    pub lambda: String,
    pub mu: String,
    pub j: usize,
    pub backend: Backend,
}

impl ContextRecord {
    pub fn from_ctx(ctx: &QContext) -> Self {
        ContextRecord {
            q: rational_to_string(&ctx.q),
            a: rational_to_string(&ctx.a),
            lambda: rational_to_string(&ctx.lambda),
            mu: rational_to_string(&ctx.mu),
            j: ctx.j,
            backend: ctx.backend,
        }
    }

    pub fn to_ctx(&self) -> Result<QContext> {
        Ok(QContext::parse(&self.q, &self.a, &self.lambda, &self.mu, self.j)?.with_backend(self.backend))
    }
}

/// One exact coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffRecord {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

impl CoeffRecord {
    pub fn from_zrat(v: &ZRat) -> Self {
        let list = |s: &[_]| s.iter().map(rational_to_string).collect();
        CoeffRecord { num: list(v.numer()), den: list(v.denom()) }
    }

    pub fn to_zrat(&self) -> Result<ZRat> {
        let parse = |s: &[String]| s.iter().map(|t| parse_rational(t)).collect::<Result<Vec<_>>>();
        ZRat::from_parts(parse(&self.num)?, parse(&self.den)?)
    }
}

/// A polynomial with exact coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyDocument {
    pub context: ContextRecord,
    pub family: String,
    pub n: usize,
    pub coefficients: Vec<CoeffRecord>,
}

impl PolyDocument {
    pub fn new(ctx: &QContext, family: &str, n: usize, p: &Poly<ZRat>) -> Self {
        PolyDocument {
            context: ContextRecord::from_ctx(ctx),
            family: family.to_string(),
            n,
            coefficients: p.coeffs().iter().map(CoeffRecord::from_zrat).collect(),
        }
    }

    pub fn to_poly(&self) -> Result<Poly<ZRat>> {
        Ok(Poly::new(self.coefficients.iter().map(CoeffRecord::to_zrat).collect::<Result<_>>()?))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// A polynomial with decimal coefficients from the approximate backend.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxPolyDocument {
    pub context: ContextRecord,
    pub family: String,
    pub n: usize,
    pub z: String,
    pub coefficients: Vec<String>,
}

impl ApproxPolyDocument {
    pub fn new(ctx: &QContext, family: &str, n: usize, z: &Real, p: &Poly<Real>, digits: usize) -> Self {
        ApproxPolyDocument {
            context: ContextRecord::from_ctx(ctx),
            family: family.to_string(),
            n,
            z: z.to_decimal_string(digits),
            coefficients: p.coeffs().iter().map(|c| c.to_decimal_string(digits)).collect(),
        }
    }
}

/// One row of a convergent table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergentRecord {
    pub n: usize,
    pub ell: i8,
    pub form: String,
    pub numerator: String,
    pub denominator: String,
    pub cf_value: String,
    pub equal: bool,
}

/// Both convergent forms at every depth of `jf`.
pub fn convergent_table(jf: &JFraction<ZRat>) -> Result<Vec<ConvergentRecord>> {
    let mut out = Vec::new();
    for n in 0..=jf.n_max() {
        for (form, pair) in [("hat", jf.convergent_hat(n)?), ("tilde", jf.convergent_tilde(n)?)] {
            out.push(ConvergentRecord {
                n,
                ell: jf.ell.sign(),
                form: form.to_string(),
                numerator: pair.numerator.to_string(),
                denominator: pair.denominator.to_string(),
                cf_value: pair.cf_value.to_string(),
                equal: pair.agrees()?,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sobolev::SobolevFamily;

    #[test]
    fn json_round_trip() {
        let ctx = QContext::parse("1/3", "-2", "1/2", "2", 2).unwrap();
        let p = SobolevFamily::<ZRat>::new(&ctx).unwrap().sobolev_poly(3).unwrap();
        let doc = PolyDocument::new(&ctx, "sobolev", 3, &p);
        let back = PolyDocument::from_json(&doc.to_json().unwrap()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_poly().unwrap(), p);
        assert_eq!(back.context.to_ctx().unwrap(), ctx);
    }
}
