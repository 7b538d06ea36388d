use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{BivarPoly, LaurentPoly, RingError, UniPoly, VarContext};

/// Serialized polynomial: variable list (Laurent variables listed again in
/// `laurent`) and terms in canonical order with decimal-string coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub laurent: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exp: Vec<i32>,
}

impl From<&LaurentPoly> for PolyJson {
    fn from(p: &LaurentPoly) -> Self {
        let ctx = p.ctx();
        PolyJson {
            vars: ctx.names().to_vec(),
            laurent: (0..ctx.len())
                .filter(|&i| ctx.is_laurent(i))
                .map(|i| ctx.name(i).to_owned())
                .collect(),
            terms: p
                .canonical_terms()
                .into_iter()
                .map(|(e, c)| TermJson {
                    coeff: c.to_string(),
                    exp: e.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&PolyJson> for LaurentPoly {
    type Error = RingError;

    fn try_from(j: &PolyJson) -> Result<Self, RingError> {
        let vars: Vec<(&str, bool)> = j
            .vars
            .iter()
            .map(|v| (v.as_str(), j.laurent.contains(v)))
            .collect();
        let ctx: Arc<VarContext> = VarContext::new(&vars);
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            let c: BigInt = t.coeff.parse().map_err(|_| RingError::Parse {
                pos: 0,
                msg: format!("bad coefficient `{}`", t.coeff),
            })?;
            terms.push((t.exp.clone(), c));
        }
        LaurentPoly::from_terms(&ctx, terms)
    }
}

impl From<&UniPoly> for PolyJson {
    fn from(p: &UniPoly) -> Self {
        PolyJson {
            vars: vec![p.var().to_string()],
            laurent: Vec::new(),
            terms: p
                .coeffs()
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(i, c)| TermJson {
                    coeff: c.to_string(),
                    exp: vec![i as i32],
                })
                .collect(),
        }
    }
}

impl TryFrom<&PolyJson> for UniPoly {
    type Error = RingError;

    fn try_from(j: &PolyJson) -> Result<Self, RingError> {
        let mut chars = match j.vars.as_slice() {
            [v] => v.chars(),
            _ => return Err(RingError::NotUnivariate(j.vars.join(", "))),
        };
        let (Some(var), None) = (chars.next(), chars.next()) else {
            return Err(RingError::NotUnivariate(j.vars[0].clone()));
        };
        let lp = LaurentPoly::try_from(j)?;
        let mut coeffs = Vec::new();
        for (e, c) in lp.terms() {
            let d = usize::try_from(e[0]).map_err(|_| RingError::NegativeExponent(j.vars[0].clone()))?;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, BigInt::from(0));
            }
            coeffs[d] = c.clone();
        }
        Ok(UniPoly::new(var, coeffs))
    }
}

macro_rules! serde_via_json {
    ($t:ty, $self_:ident => $view:expr) => {
        impl Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let $self_ = self;
                PolyJson::from($view).serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let j = PolyJson::deserialize(d)?;
                <$t>::try_from(&j).map_err(serde::de::Error::custom)
            }
        }
    };
}

serde_via_json!(LaurentPoly, p => p);
serde_via_json!(UniPoly, p => p);
serde_via_json!(BivarPoly, p => p.as_laurent());

impl TryFrom<&PolyJson> for BivarPoly {
    type Error = RingError;

    fn try_from(j: &PolyJson) -> Result<Self, RingError> {
        let lp = LaurentPoly::try_from(j)?;
        if **lp.ctx() != *super::ctx_xz() {
            return Err(RingError::ContextMismatch {
                left: lp.ctx().to_string(),
                right: super::ctx_xz().to_string(),
            });
        }
        let terms = lp.terms().map(|(e, c)| (e.clone(), c.clone()));
        BivarPoly::from_laurent(LaurentPoly::from_terms(&super::ctx_xz(), terms)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{ctx_mq, parse_poly};

    #[test]
    fn json_round_trip_is_byte_identical() {
        let p = parse_poly("m^2 + m^-2 - q - 1", &ctx_mq()).unwrap();
        let s = serde_json::to_string(&PolyJson::from(&p)).unwrap();
        assert_eq!(
            s,
            r#"{"vars":["m","q"],"laurent":["m"],"terms":[{"coeff":"1","exp":[2,0]},{"coeff":"1","exp":[-2,0]},{"coeff":"-1","exp":[0,1]},{"coeff":"-1","exp":[0,0]}]}"#
        );
        let back: PolyJson = serde_json::from_str(&s).unwrap();
        let q = LaurentPoly::try_from(&back).unwrap();
        assert_eq!(q, p);
        assert_eq!(serde_json::to_string(&PolyJson::from(&q)).unwrap(), s);
    }

    #[test]
    fn univariate_and_bivariate_serde() {
        let u = UniPoly::from_i64('q', &[1, 0, -2]);
        let s = serde_json::to_string(&u).unwrap();
        assert_eq!(s, r#"{"vars":["q"],"terms":[{"coeff":"-2","exp":[2]},{"coeff":"1","exp":[0]}]}"#);
        assert_eq!(serde_json::from_str::<UniPoly>(&s).unwrap(), u);
        let b = BivarPoly::parse("3 + 2x - 3z - xz + z^2").unwrap();
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(serde_json::from_str::<BivarPoly>(&s).unwrap(), b);
        let bad = r#"{"vars":["q"],"terms":[{"coeff":"1","exp":[-1]}]}"#;
        assert!(serde_json::from_str::<UniPoly>(bad).is_err());
    }
}
