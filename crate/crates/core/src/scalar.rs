//! Exact scalars: rationals for storage, plus a small `Field` abstraction so the
//! linear algebra can also run over a prime field.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The coefficient type of every series and matrix in the crate.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Field operations needed by the elimination routines.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; callers never pass zero.
    fn inv(&self) -> Self;
    /// Image of an exact rational; `None` when the denominator vanishes.
    fn from_rational(r: &Rational) -> Option<Self>;
    fn to_rational(&self) -> Rational;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        Some(r.clone())
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
}

/// Element of GF(p) for a prime `p < 2^31`. The modulus travels with the value
/// so that no global state is needed.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    pub v: u64,
    pub p: u64,
}

/// Default prime for GF(p) mode.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

thread_local! {
    static PRIME: std::cell::Cell<u64> = const { std::cell::Cell::new(DEFAULT_PRIME) };
}

/// Runs `f` with the GF(p) modulus set to `p` on the current thread.
pub fn with_prime<R>(p: u64, f: impl FnOnce() -> R) -> R {
    let old = PRIME.with(|c| c.replace(p));
    let out = f();
    PRIME.with(|c| c.set(old));
    out
}

fn current_prime() -> u64 {
    PRIME.with(|c| c.get())
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Fp {
        let m = v.rem_euclid(p as i64) as u64;
        Fp { v: m, p }
    }

    fn pow(&self, mut e: u64) -> Fp {
        let mut base = self.v;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        Fp { v: acc, p: self.p }
    }
}

impl Field for Fp {
    fn zero() -> Self {
        Fp { v: 0, p: current_prime() }
    }
    fn one() -> Self {
        Fp { v: 1, p: current_prime() }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp { v: (self.v + o.v) % self.p, p: self.p }
    }
    fn sub(&self, o: &Self) -> Self {
        Fp { v: (self.v + self.p - o.v) % self.p, p: self.p }
    }
    fn mul(&self, o: &Self) -> Self {
        Fp { v: self.v * o.v % self.p, p: self.p }
    }
    fn neg(&self) -> Self {
        Fp { v: (self.p - self.v) % self.p, p: self.p }
    }
    fn inv(&self) -> Self {
        self.pow(self.p - 2)
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        let p = current_prime();
        let pm = BigInt::from(p);
        let num = (r.numer() % &pm + &pm) % &pm;
        let den = (r.denom() % &pm + &pm) % &pm;
        let den = den.to_u64()?;
        if den == 0 {
            return None;
        }
        let n = Fp { v: num.to_u64()?, p };
        Some(n.mul(&Fp { v: den, p }.inv()))
    }
    fn to_rational(&self) -> Rational {
        // symmetric representative
        let v = if self.v > self.p / 2 { self.v as i64 - self.p as i64 } else { self.v as i64 };
        rat(v)
    }
}

/// Which field the linear algebra runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldChoice {
    Rational,
    Prime(u64),
}

impl Default for FieldChoice {
    fn default() -> Self {
        FieldChoice::Rational
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Rational => write!(f, "QQ"),
            FieldChoice::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl std::str::FromStr for FieldChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("qq") || t.eq_ignore_ascii_case("rational") || t == "0" {
            return Ok(FieldChoice::Rational);
        }
        let digits = t
            .trim_start_matches("GF(")
            .trim_start_matches("gf(")
            .trim_end_matches(')');
        let p: u64 = digits.parse().map_err(|_| format!("unrecognised field `{s}`"))?;
        if !is_prime(p) || p >= (1 << 31) {
            return Err(format!("{p} is not a prime below 2^31"));
        }
        Ok(FieldChoice::Prime(p))
    }
}

/// Prints a rational as `n` or `n/d`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse() {
        with_prime(101, || {
            let a = Fp::new(7, 101);
            assert_eq!(a.mul(&a.inv()), Fp::one());
            let h = Fp::from_rational(&rat_frac(1, 2)).unwrap();
            assert_eq!(h.add(&h), Fp::one());
        });
    }

    #[test]
    fn field_choice_parse() {
        assert_eq!("QQ".parse::<FieldChoice>().unwrap(), FieldChoice::Rational);
        assert_eq!("GF(101)".parse::<FieldChoice>().unwrap(), FieldChoice::Prime(101));
        assert!("GF(100)".parse::<FieldChoice>().is_err());
    }
}
