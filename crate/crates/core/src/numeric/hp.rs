//! Fixed-point complex numbers with [`FRAC_BITS`] fractional bits, used to
//! rerun evaluations whose double-precision residuals are not conclusive.
//!
//! Values are `(re + i im) / 2^FRAC_BITS` with arbitrary-size integer parts,
//! so only absolute precision is bounded.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Float, Signed, ToPrimitive, Zero};

use crate::matword::Scalar;

pub const FRAC_BITS: u64 = 256;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HpComplex {
    re: BigInt,
    im: BigInt,
}

fn fixed_from_f64(x: f64) -> BigInt {
    if x == 0.0 || !x.is_finite() {
        return BigInt::zero();
    }
    let (mant, exp, sign) = x.integer_decode();
    let m = BigInt::from(mant) * sign;
    let shift = exp as i64 + FRAC_BITS as i64;
    if shift >= 0 { m << shift as u64 } else { m >> (-shift) as u64 }
}

fn fixed_to_f64(v: &BigInt) -> f64 {
    // keep 64 significant bits before converting
    let bits = v.bits();
    if bits > 64 {
        let drop = bits - 64;
        (v >> drop).to_f64().unwrap() * 2f64.powi(drop as i32 - FRAC_BITS as i32)
    } else {
        v.to_f64().unwrap() * 2f64.powi(-(FRAC_BITS as i32))
    }
}

impl HpComplex {
    pub fn zero() -> Self {
        HpComplex {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    pub fn from_int(n: &BigInt) -> Self {
        HpComplex {
            re: n << FRAC_BITS,
            im: BigInt::zero(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(&BigInt::from(1))
    }

    pub fn from_c64(z: Complex64) -> Self {
        HpComplex {
            re: fixed_from_f64(z.re),
            im: fixed_from_f64(z.im),
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(fixed_to_f64(&self.re), fixed_to_f64(&self.im))
    }

    /// Exact value as scaled integers: `(re, im, FRAC_BITS)`.
    pub fn raw(&self) -> (&BigInt, &BigInt, u64) {
        (&self.re, &self.im, FRAC_BITS)
    }

    pub fn add(&self, o: &Self) -> Self {
        HpComplex {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        HpComplex {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        HpComplex {
            re: (&self.re * &o.re - &self.im * &o.im) >> FRAC_BITS,
            im: (&self.re * &o.im + &self.im * &o.re) >> FRAC_BITS,
        }
    }

    pub fn neg(&self) -> Self {
        HpComplex {
            re: -&self.re,
            im: -&self.im,
        }
    }

    /// `None` when `o` is zero at this precision.
    pub fn div(&self, o: &Self) -> Option<Self> {
        let den = &o.re * &o.re + &o.im * &o.im;
        if den.is_zero() {
            return None;
        }
        let nre = &self.re * &o.re + &self.im * &o.im;
        let nim = &self.im * &o.re - &self.re * &o.im;
        Some(HpComplex {
            re: (nre << FRAC_BITS) / &den,
            im: (nim << FRAC_BITS) / &den,
        })
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        HpComplex {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }

    /// `log2 |z|` estimate; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        let b = self.re.abs().max(self.im.abs());
        if b.is_zero() {
            return f64::NEG_INFINITY;
        }
        b.bits() as f64 - FRAC_BITS as f64
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct HpRepr {
    re: String,
    im: String,
    frac_bits: u64,
}

/// Serialized as decimal scaled integers plus the scale, so values survive
/// a JSON round trip exactly.
impl serde::Serialize for HpComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        HpRepr {
            re: self.re.to_string(),
            im: self.im.to_string(),
            frac_bits: FRAC_BITS,
        }
        .serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for HpComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = HpRepr::deserialize(d)?;
        if r.frac_bits != FRAC_BITS {
            return Err(D::Error::custom(format!("expected frac_bits {FRAC_BITS}, got {}", r.frac_bits)));
        }
        let parse = |t: &str| t.parse::<BigInt>().map_err(D::Error::custom);
        Ok(HpComplex {
            re: parse(&r.re)?,
            im: parse(&r.im)?,
        })
    }
}

/// Unit test tolerance for [`Scalar::is_one_elem`]: `2^-128`.
const ONE_TOL_BITS: u64 = FRAC_BITS - 128;

impl Scalar for HpComplex {
    fn zero_like(&self) -> Self {
        HpComplex::zero()
    }
    fn one_like(&self) -> Self {
        HpComplex::one()
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn is_zero_elem(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn is_one_elem(&self) -> bool {
        let d = self.sub(&HpComplex::one());
        d.re.abs().bits() <= ONE_TOL_BITS && d.im.abs().bits() <= ONE_TOL_BITS
    }
}
