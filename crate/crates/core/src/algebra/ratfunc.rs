//! Reduced quotients of polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Polynomial, Rational};
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

/// Cancels common factors and normalizes the denominator to be monic.
pub fn reduce(num: Polynomial, den: Polynomial) -> Result<RationalFunction> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if num.is_zero() {
        return Ok(RationalFunction::zero());
    }
    let g = num.gcd(&den);
    let num = num.exact_div(&g)?;
    let den = den.exact_div(&g)?;
    let lc = den.leading();
    let inv = lc.recip();
    Ok(RationalFunction {
        num: num.scale(&inv),
        den: den.scale(&inv),
    })
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// `max(deg num, deg den)`
    pub fn degree(&self) -> usize {
        self.num.deg().max(self.den.deg())
    }

    /// `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let d = &self.den * &self.den;
        reduce(n, d).expect("nonzero denominator")
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(s),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        reduce(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        reduce(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.den.is_constant() {
            return self.num.to_string_in(var);
        }
        format!("({}) / ({})", self.num.to_string_in(var), self.den.to_string_in(var))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("z"))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return reduce(&self.num + &rhs.num, self.den.clone()).expect("nonzero denominator");
        }
        reduce(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominator")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        reduce(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

/// Panics on division by the zero function; use [`RationalFunction::checked_div`]
/// when the divisor may vanish.
impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by zero function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn reduce_cancels_common_factor() {
        let f = reduce(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(f.num(), &p(&[1, 1]));
        assert_eq!(f.den(), &p(&[1]));
    }

    #[test]
    fn reduce_zero_numerator() {
        let f = reduce(Polynomial::zero(), p(&[1, 3])).unwrap();
        assert!(f.is_zero());
        assert_eq!(f.den(), &Polynomial::one());
    }

    #[test]
    fn reduce_rejects_zero_denominator() {
        assert!(reduce(p(&[1]), Polynomial::zero()).is_err());
    }

    #[test]
    fn denominator_is_monic() {
        let f = reduce(p(&[1]), p(&[1, 2])).unwrap();
        assert_eq!(f.den(), &Polynomial::new(vec![rat(1, 2), rat(1, 1)]));
        assert_eq!(f.num(), &Polynomial::constant(rat(1, 2)));
        assert_eq!(f.eval(&rat(1, 1)), Some(rat(1, 3)));
        assert_eq!(f.eval(&rat(-1, 2)), None);
    }

    #[test]
    fn field_operations() {
        let a = reduce(p(&[1]), p(&[0, 1])).unwrap();
        let b = reduce(p(&[1]), p(&[1, 1])).unwrap();
        // 1/z - 1/(z+1) = 1/(z(z+1))
        let d = &a - &b;
        assert_eq!(d.num(), &p(&[1]));
        assert_eq!(d.den(), &p(&[0, 1, 1]));
        assert_eq!(&(&d / &a) * &a, d);
    }

    #[test]
    fn derivative_of_quotient() {
        // d/dz z/(z-1) = -1/(z-1)^2
        let f = reduce(p(&[0, 1]), p(&[-1, 1])).unwrap();
        let df = f.derivative();
        assert_eq!(df.num(), &p(&[-1]));
        assert_eq!(df.den(), &p(&[1, -2, 1]));
    }
}
