//! Exact scalars over the rationals or a prime field.
//!
//! Every scalar knows its field, so arithmetic can check coherence.
//! Rational values are arbitrary-precision normalized fractions;
//! prime-field values are canonical residues in `0..p`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest accepted prime modulus. Residue products then fit in u128
/// without overflow and stay cheap to reduce.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::PrimeField(p) => {
                if *p >= MAX_PRIME {
                    return Err(Error::InvalidInput(format!(
                        "prime modulus {p} exceeds supported bound {MAX_PRIME}"
                    )));
                }
                if !is_prime(*p) {
                    return Err(Error::InvalidInput(format!("{p} is not prime")));
                }
                Ok(())
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::PrimeField(p) => Scalar::Fp { residue: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
            FieldSpec::PrimeField(p) => Scalar::Fp { residue: 1 % *p, modulus: *p },
        }
    }

    pub fn integer(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
            FieldSpec::PrimeField(p) => {
                let p_i = *p as i128;
                let r = ((n as i128 % p_i) + p_i) % p_i;
                Scalar::Fp { residue: r as u64, modulus: *p }
            }
        }
    }

    /// Inverse of a positive integer, e.g. 1/|G| for Haar weights.
    /// Fails in characteristic p when p divides n.
    pub fn inv_integer(&self, n: u64) -> Result<Scalar> {
        self.integer(n as i64).inv()
    }

    /// Parses "5", "-3/7" style scalar strings. Over a prime field the
    /// fraction is evaluated via a modular inverse.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let (num_str, den_str) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (text, None),
        };
        let num = BigInt::from_str(num_str)
            .map_err(|_| Error::Parse(format!("bad scalar {text:?}")))?;
        let den = match den_str {
            Some(d) => BigInt::from_str(d).map_err(|_| Error::Parse(format!("bad scalar {text:?}")))?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rat(BigRational::new(num, den))),
            FieldSpec::PrimeField(p) => {
                let n = bigint_mod(&num, *p);
                let d = bigint_mod(&den, *p);
                let s = Scalar::Fp { residue: n, modulus: *p };
                let t = Scalar::Fp { residue: d, modulus: *p };
                let t_inv = t.inv().map_err(|_| {
                    Error::Parse(format!("denominator of {text:?} is 0 mod {p}"))
                })?;
                Ok(&s * &t_inv)
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let p_big = BigInt::from(p);
    let mut r = n % &p_big;
    if r.is_negative() {
        r += &p_big;
    }
    let digits = r.to_u64_digits().1;
    digits.first().copied().unwrap_or(0)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { residue: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Fp { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { residue, modulus } => *residue == 1 % *modulus,
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Fp { residue, modulus } => Scalar::Fp {
                residue: if *residue == 0 { 0 } else { modulus - residue },
                modulus: *modulus,
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::InvalidInput("division by zero".into()));
        }
        match self {
            Scalar::Rat(r) => Ok(Scalar::Rat(r.recip())),
            Scalar::Fp { residue, modulus } => {
                Ok(Scalar::Fp { residue: mod_inverse(*residue, *modulus), modulus: *modulus })
            }
        }
    }

    fn expect_same_field(&self, other: &Scalar) {
        debug_assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across fields is a construction bug"
        );
    }
}

/// Extended Euclid; `a` must be a nonzero residue mod prime `p`.
fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    let p_i = p as i128;
    (((old_s % p_i) + p_i) % p_i) as u64
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.expect_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { residue: a, modulus: p }, Scalar::Fp { residue: b, .. }) => {
                Scalar::Fp { residue: (a + b) % p, modulus: *p }
            }
            _ => unreachable!("mixed-field scalars"),
        }
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &rhs.neg()
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.expect_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { residue: a, modulus: p }, Scalar::Fp { residue: b, .. }) => {
                let prod = (*a as u128 * *b as u128) % (*p as u128);
                Scalar::Fp { residue: prod as u64, modulus: *p }
            }
            _ => unreachable!("mixed-field scalars"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { residue, .. } => write!(f, "{residue}"),
        }
    }
}
