//! Exact rationals for rates and the counting identities.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use crate::error::{invalid, Error};

/// A reduced fraction with positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(into = "alloc::string::String", try_from = "alloc::string::String"))]
pub struct Ratio {
    num: i128,
    den: i128,
}

const fn gcd(mut a: i128, mut b: i128) -> i128 {
    if a < 0 {
        a = -a;
    }
    if b < 0 {
        b = -b;
    }
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Ratio {
    pub const ZERO: Ratio = Ratio { num: 0, den: 1 };
    pub const ONE: Ratio = Ratio { num: 1, den: 1 };

    /// Panics if `den` is zero.
    pub const fn new(num: i128, den: i128) -> Ratio {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den);
        let (mut num, mut den) = if g == 0 { (0, 1) } else { (num / g, den / g) };
        if den < 0 {
            num = -num;
            den = -den;
        }
        Ratio { num, den }
    }

    pub const fn from_int(v: i128) -> Ratio {
        Ratio { num: v, den: 1 }
    }

    pub const fn numer(&self) -> i128 {
        self.num
    }

    pub const fn denom(&self) -> i128 {
        self.den
    }

    pub const fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn floor(&self) -> i128 {
        self.num.div_euclid(self.den)
    }

    pub fn ceil(&self) -> i128 {
        -(-self.num).div_euclid(self.den)
    }

    pub fn to_integer(&self) -> Option<i128> {
        self.is_integer().then_some(self.num)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl From<i128> for Ratio {
    fn from(v: i128) -> Self {
        Ratio::from_int(v)
    }
}

impl Add for Ratio {
    type Output = Ratio;
    fn add(self, o: Ratio) -> Ratio {
        Ratio::new(self.num * o.den + o.num * self.den, self.den * o.den)
    }
}

impl Sub for Ratio {
    type Output = Ratio;
    fn sub(self, o: Ratio) -> Ratio {
        Ratio::new(self.num * o.den - o.num * self.den, self.den * o.den)
    }
}

impl Mul for Ratio {
    type Output = Ratio;
    fn mul(self, o: Ratio) -> Ratio {
        Ratio::new(self.num * o.num, self.den * o.den)
    }
}

impl Div for Ratio {
    type Output = Ratio;
    fn div(self, o: Ratio) -> Ratio {
        Ratio::new(self.num * o.den, self.den * o.num)
    }
}

impl Neg for Ratio {
    type Output = Ratio;
    fn neg(self) -> Ratio {
        Ratio { num: -self.num, den: self.den }
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Accepts `a/b`, integers and finite decimals such as `0.6`.
impl FromStr for Ratio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let parse = |t: &str| t.trim().parse::<i128>().map_err(|_| invalid!("cannot parse rational `{s}`"));
        if let Some((a, b)) = s.split_once('/') {
            let den = parse(b)?;
            if den == 0 {
                return Err(invalid!("zero denominator in `{s}`"));
            }
            return Ok(Ratio::new(parse(a)?, den));
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(invalid!("cannot parse rational `{s}`"));
            }
            let negative = int.trim_start().starts_with('-');
            let whole = if int.is_empty() || int == "-" { 0 } else { parse(int)?.abs() };
            let scale = 10i128.pow(frac.len() as u32);
            let value = Ratio::new(whole * scale + parse(frac)?, scale);
            return Ok(if negative { -value } else { value });
        }
        Ok(Ratio::from_int(parse(s)?))
    }
}

impl From<Ratio> for alloc::string::String {
    fn from(r: Ratio) -> Self {
        alloc::format!("{r}")
    }
}

impl TryFrom<alloc::string::String> for Ratio {
    type Error = Error;
    fn try_from(s: alloc::string::String) -> Result<Self, Error> {
        s.parse()
    }
}
