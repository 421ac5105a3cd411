//! Extended non-negative scalars: exact rationals followed by a finite tower of alephs.
//!
//! Values are totally ordered with every rational below `aleph0 < aleph1 < ...`.
//! Addition and multiplication follow cardinal arithmetic once an aleph is involved:
//! the larger infinite value absorbs everything, except that `0 * aleph = 0`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Default height of the aleph tower (`aleph0 ..= aleph3`).
pub const DEFAULT_ALEPH_TOWER: u8 = 3;

pub type Rational = Ratio<i128>;

/// A multiplicity: a non-negative rational or `aleph_k`.
///
/// The derived ordering is the intended total order because `Finite` is declared first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtScalar {
    Finite(Rational),
    Aleph(u8),
}

impl ExtScalar {
    pub const ZERO: ExtScalar = ExtScalar::Finite(Ratio::new_raw(0, 1));
    pub const ONE: ExtScalar = ExtScalar::Finite(Ratio::new_raw(1, 1));
    pub const ALEPH0: ExtScalar = ExtScalar::Aleph(0);

    pub fn int(n: i128) -> Self {
        assert!(n >= 0, "negative multiplicity");
        ExtScalar::Finite(Ratio::from_integer(n))
    }

    /// `num/den` in lowest terms. Panics on a negative value or zero denominator.
    pub fn frac(num: i128, den: i128) -> Self {
        Self::try_frac(num, den).expect("invalid rational")
    }

    pub fn try_frac(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::input("zero denominator"));
        }
        let r = Ratio::new(num, den);
        if r < Ratio::zero() {
            return Err(Error::input("negative multiplicity"));
        }
        Ok(ExtScalar::Finite(r))
    }

    pub fn aleph(k: u8) -> Self {
        ExtScalar::Aleph(k)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtScalar::Finite(r) if r.is_zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtScalar::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    /// True for non-negative integers and alephs, i.e. genuine cardinals.
    pub fn is_cardinal(&self) -> bool {
        match self {
            ExtScalar::Finite(r) => r.is_integer(),
            ExtScalar::Aleph(_) => true,
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            ExtScalar::Finite(r) => Some(*r),
            ExtScalar::Aleph(_) => None,
        }
    }

    /// Reject alephs above the configured tower.
    pub fn check_tower(&self, k: u8) -> Result<()> {
        match self {
            ExtScalar::Aleph(i) if *i > k => {
                Err(Error::input(format!("aleph{i} exceeds the configured tower aleph{k}")))
            }
            _ => Ok(()),
        }
    }

    fn cardinal_add(self, other: Self) -> Self {
        use ExtScalar::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a + b),
            (Aleph(i), Aleph(j)) => Aleph(i.max(j)),
            (Aleph(i), Finite(_)) | (Finite(_), Aleph(i)) => Aleph(i),
        }
    }

    fn cardinal_mul(self, other: Self) -> Self {
        use ExtScalar::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a * b),
            (Aleph(i), Aleph(j)) => Aleph(i.max(j)),
            (Aleph(i), Finite(r)) | (Finite(r), Aleph(i)) => {
                if r.is_zero() {
                    Self::ZERO
                } else {
                    Aleph(i)
                }
            }
        }
    }

    /// Minimal complement `b - a`: the least `x` with `a + x = b`.
    ///
    /// For an infinite `b` this is `b` itself unless `a == b`, where `0` already works.
    pub fn sub_delta(b: Self, a: Self) -> Result<Self> {
        use ExtScalar::*;
        if a > b {
            return Err(Error::input(format!("sub_delta requires {a} <= {b}")));
        }
        Ok(match (b, a) {
            (Finite(x), Finite(y)) => Finite(x - y),
            (Aleph(_), _) if a == b => Self::ZERO,
            (Aleph(_), _) => b,
            (Finite(_), Aleph(_)) => unreachable!("an aleph never lies below a rational"),
        })
    }

    pub fn to_json(&self) -> Value {
        match self {
            ExtScalar::Finite(r) => json!({"type": "rational", "num": *r.numer() as i64, "den": *r.denom() as i64}),
            ExtScalar::Aleph(k) => json!({"type": "aleph", "index": k}),
        }
    }

    /// Accepts the tagged object form, a bare integer, or a string such as `"3/2"` or `"aleph0"`.
    pub fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => s.parse(),
            Value::Number(n) => n
                .as_i64()
                .filter(|&x| x >= 0)
                .map(|x| ExtScalar::int(x as i128))
                .ok_or_else(|| Error::input(format!("invalid scalar {n}"))),
            Value::Object(m) => match m.get("type").and_then(Value::as_str) {
                Some("rational") => {
                    let num = m.get("num").and_then(Value::as_i64);
                    let den = m.get("den").and_then(Value::as_i64).or(Some(1));
                    match (num, den) {
                        (Some(n), Some(d)) => ExtScalar::try_frac(n as i128, d as i128),
                        _ => Err(Error::input("rational scalar needs integer num/den")),
                    }
                }
                Some("aleph") => m
                    .get("index")
                    .and_then(Value::as_u64)
                    .filter(|&k| k <= u8::MAX as u64)
                    .map(|k| ExtScalar::Aleph(k as u8))
                    .ok_or_else(|| Error::input("aleph scalar needs a small integer index")),
                _ => Err(Error::input("scalar object needs type rational or aleph")),
            },
            _ => Err(Error::input(format!("invalid scalar {v}"))),
        }
    }
}

impl Add for ExtScalar {
    type Output = ExtScalar;
    fn add(self, rhs: Self) -> Self {
        self.cardinal_add(rhs)
    }
}

impl Mul for ExtScalar {
    type Output = ExtScalar;
    fn mul(self, rhs: Self) -> Self {
        self.cardinal_mul(rhs)
    }
}

impl Default for ExtScalar {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<Rational> for ExtScalar {
    fn from(r: Rational) -> Self {
        assert!(r >= Ratio::zero(), "negative multiplicity");
        ExtScalar::Finite(r)
    }
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtScalar::Finite(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            ExtScalar::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            ExtScalar::Aleph(k) => write!(f, "aleph{k}"),
        }
    }
}

impl FromStr for ExtScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        for prefix in ["aleph", "ℵ", "ℵ_"] {
            if let Some(rest) = t.strip_prefix(prefix) {
                let rest = rest.trim_start_matches('_');
                return rest
                    .parse::<u8>()
                    .map(ExtScalar::Aleph)
                    .map_err(|_| Error::input(format!("bad aleph index in {s:?}")));
            }
        }
        let parse = |x: &str| x.trim().parse::<i128>().map_err(|_| Error::input(format!("bad scalar {s:?}")));
        match t.split_once('/') {
            Some((n, d)) => ExtScalar::try_frac(parse(n)?, parse(d)?),
            None => ExtScalar::try_frac(parse(t)?, 1),
        }
    }
}

/// Compare helper used by sorting code that wants an explicit `Ordering`.
pub fn cmp(a: &ExtScalar, b: &ExtScalar) -> Ordering {
    a.cmp(b)
}
