//! Exact scalar arithmetic over the two supported ground fields: the
//! rationals (arbitrary precision) and prime fields `F_p` for `p < 2^32`.
//!
//! Every scalar knows its field. The matrix layer refuses to combine
//! scalars from different fields (`Error::FieldMismatch`); field-level
//! arithmetic on mismatched scalars is therefore unreachable through the
//! public API and panics if forced.
//!
//! Rationals are kept in lowest terms with positive denominator (the
//! backing `BigRational` normalizes on construction); modular residues are
//! kept in `0..p`. There is no floating point anywhere in this crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// Ground field tag. `Prime(p)` requires `p` prime; this is asserted when a
/// field is first constructed via [`Field::prime`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Prime field of order `p`. Panics if `p` is not prime or exceeds
    /// `2^32 - 1` (the bound keeps products inside `u128` comfortably and
    /// far exceeds any modulus the engine is used with).
    pub fn prime(p: u64) -> Field {
        assert!(p >= 2 && p < (1 << 32), "modulus out of range: {p}");
        assert!(is_prime(p), "modulus {p} is not prime");
        Field::Prime(p)
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Modular { value: 0, prime: p },
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::one()),
            Field::Prime(p) => Scalar::Modular { value: 1 % p, prime: p },
        }
    }

    /// Image of the integer `n` in the field.
    pub fn from_integer(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Modular { value: r, prime: p }
            }
        }
    }

    /// Image of the fraction `num/den` in the field. `None` when `den`
    /// maps to zero (only possible in `F_p`).
    pub fn from_fraction(self, num: i64, den: i64) -> Option<Scalar> {
        if den == 0 {
            return None;
        }
        let d = self.from_integer(den);
        d.inverse().map(|di| self.from_integer(num).mul(&di))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact field element. Comparison and hashing are structural, which is
/// sound because both representations are canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, prime: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Modular { prime, .. } => Field::Prime(*prime),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, prime } => *value == 1 % *prime,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, prime: p }, Scalar::Modular { value: b, prime: q }) => {
                assert_eq!(p, q, "mixed moduli");
                Scalar::Modular { value: (a + b) % p, prime: *p }
            }
            _ => panic!("mixed-field scalar arithmetic"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, prime } => {
                Scalar::Modular { value: (prime - value) % prime, prime: *prime }
            }
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, prime: p }, Scalar::Modular { value: b, prime: q }) => {
                assert_eq!(p, q, "mixed moduli");
                let prod = (*a as u128 * *b as u128) % (*p as u128);
                Scalar::Modular { value: prod as u64, prime: *p }
            }
            _ => panic!("mixed-field scalar arithmetic"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Modular { value, prime } => {
                // Fermat: value^(p-2) mod p.
                let mut acc: u128 = 1;
                let mut base = *value as u128;
                let mut exp = prime - 2;
                let p = *prime as u128;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    exp >>= 1;
                }
                Scalar::Modular { value: acc as u64, prime: *prime }
            }
        })
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inverse().map(|inv| self.mul(&inv))
    }

    /// Exact rational payload, if this scalar lives over the rationals.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Parse `"a"`, `"-a"`, or `"a/b"` into the given field. Used by the
    /// fixture loader; denominators that vanish in `F_p` are rejected.
    pub fn parse(text: &str, field: Field) -> Result<Scalar, String> {
        let text = text.trim();
        let (num_text, den_text) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (text, None),
        };
        let num: i64 = num_text
            .parse()
            .map_err(|_| format!("bad numerator in scalar {text:?}"))?;
        let den: i64 = match den_text {
            Some(d) => d.parse().map_err(|_| format!("bad denominator in scalar {text:?}"))?,
            None => 1,
        };
        if den == 0 {
            return Err(format!("zero denominator in scalar {text:?}"));
        }
        field
            .from_fraction(num, den)
            .ok_or_else(|| format!("denominator of {text:?} vanishes in {field:?}"))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(_) => write!(f, "{self}"),
            Scalar::Modular { prime, .. } => write!(f, "{self} (mod {prime})"),
        }
    }
}
