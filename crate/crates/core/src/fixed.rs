//! Decimal fixed-point logarithms on big integers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::algebra::Rational;

const GUARD: usize = 10;

/// `scaled / 10^scale`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decimal {
    scaled: BigInt,
    scale: usize,
}

fn ten_pow(e: usize) -> BigInt {
    Pow::pow(BigInt::from(10u32), e)
}

/// Rounds `x / 10^drop` to the nearest integer, ties away from zero.
fn round_shift(x: &BigInt, drop: usize) -> BigInt {
    if drop == 0 {
        return x.clone();
    }
    let p = ten_pow(drop);
    let (q, r) = x.abs().div_rem(&p);
    let q = if r * 2 >= p { q + 1 } else { q };
    if x.is_negative() {
        -q
    } else {
        q
    }
}

impl Decimal {
    pub fn zero(scale: usize) -> Self {
        Decimal { scaled: BigInt::zero(), scale }
    }

    pub fn from_integer(n: &BigInt, scale: usize) -> Self {
        Decimal { scaled: n * ten_pow(scale), scale }
    }

    pub fn scale(&self) -> usize {
        self.scale
    }

    /// Same value rounded to `scale` digits.
    pub fn rescale(&self, scale: usize) -> Self {
        let scaled = if scale >= self.scale {
            &self.scaled * ten_pow(scale - self.scale)
        } else {
            round_shift(&self.scaled, self.scale - scale)
        };
        Decimal { scaled, scale }
    }

    pub fn add(&self, other: &Decimal) -> Decimal {
        let s = self.scale.max(other.scale);
        Decimal { scaled: self.rescale(s).scaled + other.rescale(s).scaled, scale: s }
    }

    pub fn sub(&self, other: &Decimal) -> Decimal {
        let s = self.scale.max(other.scale);
        Decimal { scaled: self.rescale(s).scaled - other.rescale(s).scaled, scale: s }
    }

    pub fn abs(&self) -> Decimal {
        Decimal { scaled: self.scaled.abs(), scale: self.scale }
    }

    pub fn div_int(&self, d: &BigInt) -> Decimal {
        let scaled = (&self.scaled * 2 + d) / (d * 2);
        Decimal { scaled, scale: self.scale }
    }

    pub fn floor(&self) -> BigInt {
        self.scaled.div_floor(&ten_pow(self.scale))
    }

    /// Distance from the nearest integer, as a multiple of `10^-scale`.
    fn frac_distance(&self) -> BigInt {
        let p = ten_pow(self.scale);
        let r = self.scaled.mod_floor(&p);
        let other = &p - &r;
        r.min(other)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_string().parse().unwrap_or(f64::NAN)
    }
}

impl PartialOrd for Decimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Decimal {
    fn cmp(&self, other: &Self) -> Ordering {
        let s = self.scale.max(other.scale);
        self.rescale(s).scaled.cmp(&other.rescale(s).scaled)
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(self.scale);
        let v = self.rescale(digits);
        let p = ten_pow(digits);
        let (int_part, frac) = v.scaled.abs().div_rem(&p);
        let sign = if v.scaled.sign() == Sign::Minus { "-" } else { "" };
        if digits == 0 {
            write!(f, "{sign}{int_part}")
        } else {
            write!(f, "{sign}{int_part}.{frac:0>digits$}")
        }
    }
}

/// `sum x^(2j+1)/(2j+1)` for `x = num/den`, `|x| < 1`, scaled by `10^scale`.
fn atanh_scaled(num: &BigInt, den: &BigInt, scale: usize) -> BigInt {
    let one = ten_pow(scale);
    let mut power = &one * num / den;
    let x2_num = num * num;
    let x2_den = den * den;
    let mut sum = BigInt::zero();
    let mut j = 0u64;
    while !power.is_zero() {
        sum += &power / BigInt::from(2 * j + 1);
        power = &power * &x2_num / &x2_den;
        j += 1;
    }
    sum
}

fn ln2_scaled(scale: usize) -> BigInt {
    atanh_scaled(&BigInt::one(), &BigInt::from(3), scale) * 2
}

/// `ln n` for `n >= 1`, scaled by `10^scale` (truncation error below one unit
/// per ten guard digits).
fn ln_scaled(n: &BigUint, scale: usize) -> BigInt {
    assert!(!n.is_zero(), "ln of zero");
    let work = scale + GUARD;
    let a = n.bits() - 1;
    // n = 2^a * r with 1 <= r < 2; ln r = 2 atanh((n - 2^a) / (n + 2^a))
    let pow2 = BigInt::one() << a;
    let n = BigInt::from(n.clone());
    let r = atanh_scaled(&(&n - &pow2), &(&n + &pow2), work) * 2;
    let total = ln2_scaled(work) * BigInt::from(a) + r;
    round_shift(&total, GUARD)
}

pub fn ln(n: &BigUint, scale: usize) -> Decimal {
    Decimal { scaled: ln_scaled(n, scale), scale }
}

pub fn ln_rational(r: &Rational, scale: usize) -> Decimal {
    assert!(r.is_positive(), "ln of a non-positive number");
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    Decimal { scaled: ln_scaled(num, scale) - ln_scaled(den, scale), scale }
}

/// `(sum e_p ln p) / divisor` to `scale` digits, with working precision
/// widened by the size of the exponents.
pub fn log_sum(terms: &[(BigUint, BigInt)], divisor: &BigInt, scale: usize) -> Decimal {
    let widest = terms.iter().map(|(_, e)| e.abs().to_string().len()).max().unwrap_or(0);
    let work = scale + widest + GUARD;
    let mut acc = BigInt::zero();
    for (p, e) in terms {
        acc += ln_scaled(p, work) * e;
    }
    let d = Decimal { scaled: acc, scale: work }.div_int(divisor);
    d.rescale(scale)
}

/// Number of decimal digits of `prod p^e_p` (all `e_p >= 0`).
pub fn digit_count(terms: &[(BigUint, BigInt)]) -> BigInt {
    if terms.iter().all(|(_, e)| e.is_zero()) {
        return BigInt::one();
    }
    let two = BigUint::from(2u32);
    let five = BigUint::from(5u32);
    let exp = |q: &BigUint| terms.iter().find(|(p, _)| p == q).map(|(_, e)| e.clone()).unwrap_or_default();
    let only_2_5 = terms.iter().all(|(p, e)| e.is_zero() || *p == two || *p == five);
    if only_2_5 && exp(&two) == exp(&five) {
        return exp(&two) + 1;
    }
    let mut scale = 20;
    loop {
        let l = log_sum(terms, &BigInt::one(), scale);
        let t = l.div_ln10();
        if t.frac_distance() > BigInt::from(1000) {
            return t.floor() + 1;
        }
        scale *= 2;
    }
}

impl Decimal {
    fn div_ln10(&self) -> Decimal {
        let ln10 = ln_scaled(&BigUint::from(10u32), self.scale + GUARD);
        let scaled = &self.scaled * ten_pow(self.scale + GUARD) / ln10;
        Decimal { scaled, scale: self.scale }
    }
}
