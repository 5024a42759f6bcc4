//! Exact rational arithmetic helpers.
//!
//! Every objective value, statistic and metric is carried as a [`Rational`].
//! Decimal strings only appear at the reporting boundary.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

pub fn int(v: i128) -> Rational {
    Rational::from_integer(v)
}

/// Parses `p/q`, an integer, or a plain decimal such as `-0.125`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidParameter(format!("cannot parse `{s}` as a rational"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: i128 = p.trim().parse().map_err(|_| bad())?;
        let q: i128 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole
        .chars()
        .chain(frac.chars())
        .all(|c| c.is_ascii_digit())
        || frac.len() > 30
    {
        return Err(bad());
    }
    let whole: i128 = if whole.is_empty() {
        0
    } else {
        whole.parse().map_err(|_| bad())?
    };
    let mut value = int(whole);
    if !frac.is_empty() {
        let digits: i128 = frac.parse().map_err(|_| bad())?;
        value += Rational::new(digits, 10i128.pow(frac.len() as u32));
    }
    Ok(if neg { -value } else { value })
}

/// Rounds half away from zero to `places` decimals, exactly.
pub fn format_decimal(r: &Rational, places: u32) -> String {
    let scale = 10i128.pow(places);
    let num = r.numer().abs() * scale;
    let den = *r.denom();
    let (q, rem) = num.div_rem(&den);
    let rounded = if rem * 2 >= den { q + 1 } else { q };
    let sign = if r.is_negative() && rounded != 0 {
        "-"
    } else {
        ""
    };
    if places == 0 {
        return format!("{sign}{rounded}");
    }
    let (ip, fp) = rounded.div_rem(&scale);
    format!("{sign}{ip}.{fp:0width$}", width = places as usize)
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `p/q` in lowest terms, or just `p` for integers.
pub fn fraction_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact decimal expansion when the denominator has no prime factors other
/// than 2 and 5.
pub fn terminating_decimal(r: &Rational) -> Option<String> {
    let mut d = *r.denom();
    let (mut twos, mut fives) = (0u32, 0u32);
    while d % 2 == 0 {
        d /= 2;
        twos += 1;
    }
    while d % 5 == 0 {
        d /= 5;
        fives += 1;
    }
    if d != 1 {
        return None;
    }
    let places = twos.max(fives);
    if places > 30 {
        return None;
    }
    let s = format_decimal(r, places);
    Some(match s.contains('.') {
        true => s.trim_end_matches('0').trim_end_matches('.').to_string(),
        false => s,
    })
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> i128 {
    values.into_iter().fold(1i128, |acc, r| acc.lcm(r.denom()))
}

/// Serializable exact value: fraction string plus a decimal for humans.
#[derive(Debug, Clone, PartialEq)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Exact", 2)?;
        st.serialize_field("fraction", &fraction_string(&self.0))?;
        st.serialize_field("decimal", &to_f64(&self.0))?;
        st.end()
    }
}

impl From<Rational> for Exact {
    fn from(r: Rational) -> Self {
        Exact(r)
    }
}

pub fn is_unit_interval(r: &Rational) -> bool {
    !r.is_negative() && *r <= int(1)
}

pub fn zero() -> Rational {
    Rational::zero()
}
