//! Conjugate classes of algebraic numbers and the resultant machinery used
//! to push them through rational maps.

use std::fmt;

use num_traits::Zero;


use super::roots::class_label;
use super::{int, Polynomial, Rational};
use crate::error::{Error, Result};

/// The full set of roots of a monic squarefree polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AlgebraicClass {
    minpoly: Polynomial,
    label: String,
}

impl AlgebraicClass {
    pub fn new(p: Polynomial) -> Result<Self> {
        if p.is_constant() {
            return Err(Error::InvalidClass(format!("constant polynomial {p}")));
        }
        let minpoly = p.monic();
        if !minpoly.is_squarefree() {
            return Err(Error::InvalidClass(format!("{minpoly} is not squarefree")));
        }
        let label = class_label(&minpoly);
        Ok(AlgebraicClass { minpoly, label })
    }

    pub fn rational(r: &Rational) -> Self {
        Self::new(Polynomial::linear_root(r)).expect("linear polynomial")
    }

    pub fn minpoly(&self) -> &Polynomial {
        &self.minpoly
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        (self.degree() == 1).then(|| -self.minpoly.coeff(0))
    }

    pub fn is_zero_class(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_zero())
    }

    /// Every root of `self` is a root of `p`.
    pub fn divides(&self, p: &Polynomial) -> bool {
        self.minpoly.divides(p)
    }

    /// Order of vanishing of `p` along the class (for irreducible classes the
    /// common multiplicity of every root).
    pub fn order_in(&self, p: &Polynomial) -> usize {
        p.multiplicity_of(&self.minpoly)
    }

    pub fn shares_root_with(&self, p: &Polynomial) -> bool {
        !p.is_zero() && !self.minpoly.gcd(p).is_constant()
    }
}

impl fmt::Display for AlgebraicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Product of all roots of the class.
pub fn class_norm_product(c: &AlgebraicClass) -> Rational {
    let c0 = c.minpoly.coeff(0);
    if c.degree().is_multiple_of(2) {
        c0
    } else {
        -c0
    }
}

/// Resultant of two nonzero polynomials, `lc(p)^deg q * prod q(a)` over the
/// roots `a` of `p`.
pub fn resultant(p: &Polynomial, q: &Polynomial) -> Result<Rational> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() && q.is_constant() {
        return Err(Error::ConstantResultant);
    }
    Ok(resultant_rec(p, q))
}

fn resultant_rec(a: &Polynomial, b: &Polynomial) -> Rational {
    let m = a.deg();
    let n = b.deg();
    if n == 0 {
        return b.leading().pow(m as i32);
    }
    if m == 0 {
        return a.leading().pow(n as i32);
    }
    if m > n {
        let r = resultant_rec(b, a);
        return if (m * n) % 2 == 1 { -r } else { r };
    }
    let r = b.rem(a).expect("nonzero divisor");
    if r.is_zero() {
        return Rational::zero();
    }
    let k = r.deg();
    a.leading().pow((n - k) as i32) * resultant_rec(a, &r)
}

/// `Res_z(p(z), num(z) - y den(z))` as a polynomial in `y`. Its roots are
/// the values `num/den` at the roots of `p` where `den` does not vanish.
pub fn eliminate(p: &Polynomial, num: &Polynomial, den: &Polynomial) -> Result<Polynomial> {
    if p.is_constant() {
        return Err(Error::ConstantResultant);
    }
    let formal = num.deg().max(den.deg());
    let lead_at = |y: &Rational| num.coeff(formal) - y * den.coeff(formal);
    let needed = p.deg() + 1;
    let mut xs = Vec::with_capacity(needed);
    let mut ys = Vec::with_capacity(needed);
    let mut t = 0i64;
    while xs.len() < needed {
        let y = int(t);
        t += 1;
        if lead_at(&y).is_zero() {
            continue;
        }
        let q = num - &den.scale(&y);
        ys.push(if q.is_constant() {
            q.leading().pow(p.deg() as i32)
        } else {
            resultant_rec(p, &q)
        });
        xs.push(y);
    }
    Ok(interpolate(&xs, &ys))
}

/// Newton interpolation through distinct nodes.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Polynomial {
    let n = xs.len();
    let mut table = ys.to_vec();
    let mut coef = Vec::with_capacity(n);
    for level in 0..n {
        coef.push(table[0].clone());
        table = (0..table.len().saturating_sub(1))
            .map(|i| (&table[i + 1] - &table[i]) / (&xs[i + level + 1] - &xs[i]))
            .collect();
    }
    let mut acc = Polynomial::zero();
    for k in (0..n).rev() {
        acc = &(&acc * &Polynomial::linear_root(&xs[k])) + &Polynomial::constant(coef[k].clone());
    }
    acc
}

/// `den^g * q(num/den)` for `g = deg q`: the polynomial whose roots are the
/// preimages of the roots of `q` under `num/den` (coprime inputs).
pub fn preimage_polynomial(q: &Polynomial, num: &Polynomial, den: &Polynomial) -> Polynomial {
    let g = q.deg();
    let mut num_pows = vec![Polynomial::one()];
    for i in 1..=g {
        num_pows.push(&num_pows[i - 1] * num);
    }
    let mut den_pows = vec![Polynomial::one()];
    for i in 1..=g {
        den_pows.push(&den_pows[i - 1] * den);
    }
    let mut acc = Polynomial::zero();
    for (i, a) in q.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let term = (&num_pows[i] * &den_pows[g - i]).scale(a);
        acc = &acc + &term;
    }
    acc
}

/// The class of the image `num/den` of `c`, or `None` if `den` vanishes on it.
pub fn image_class(c: &AlgebraicClass, num: &Polynomial, den: &Polynomial) -> Result<Option<AlgebraicClass>> {
    if c.shares_root_with(den) {
        return Ok(None);
    }
    let e = eliminate(c.minpoly(), num, den)?;
    if e.is_constant() {
        return Ok(None);
    }
    Ok(Some(AlgebraicClass::new(e.squarefree_part())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p(&[-2, 1]), &p(&[-3, 1])).unwrap(), rat(-1, 1));
        assert_eq!(resultant(&p(&[-2, 0, 1]), &p(&[-1, 1])).unwrap(), rat(-1, 1));
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[-1, 0, 1])).unwrap(), rat(0, 1));
        assert!(matches!(resultant(&p(&[2]), &p(&[3])), Err(Error::ConstantResultant)));
    }

    #[test]
    fn resultant_matches_sylvester_definition() {
        // Res(a, b) = lc(a)^deg b * prod b(roots of a), a = 2(z-1)(z-3)
        let a = p(&[6, -8, 2]);
        let b = p(&[1, 0, 1]);
        let expected = rat(4, 1) * rat(2, 1) * rat(10, 1);
        assert_eq!(resultant(&a, &b).unwrap(), expected);
        // symmetry sign (-1)^(deg a deg b)
        assert_eq!(resultant(&b, &a).unwrap(), expected);
    }

    #[test]
    fn norms() {
        assert_eq!(class_norm_product(&AlgebraicClass::rational(&rat(3, 4))), rat(3, 4));
        let c = AlgebraicClass::new(Polynomial::new(vec![rat(7, 16), rat(-3, 2), rat(1, 1)])).unwrap();
        assert_eq!(class_norm_product(&c), rat(7, 16));
        let c = AlgebraicClass::new(p(&[-2, 0, 1])).unwrap();
        assert_eq!(class_norm_product(&c), rat(-2, 1));
    }

    #[test]
    fn image_under_polynomial_map() {
        // R(z) = z(5 - 4z); R(3/4) = 3/2
        let num = p(&[0, 5, -4]);
        let img = image_class(&AlgebraicClass::rational(&rat(3, 4)), &num, &p(&[1])).unwrap().unwrap();
        assert_eq!(img.as_rational(), Some(rat(3, 2)));
    }

    #[test]
    fn image_of_conjugate_pair_under_hexagasket_map() {
        let num = &(&p(&[0, 2]) * &p(&[-1, 1])) * &p(&[7, -24, 16]);
        let den = p(&[-1, 2]);
        let pair = AlgebraicClass::new(p(&[7, -24, 16])).unwrap();
        let img = image_class(&pair, &num, &den).unwrap().unwrap();
        assert!(img.is_zero_class());
        let other = AlgebraicClass::new(p(&[1, -6, 4])).unwrap();
        let img = image_class(&other, &num, &den).unwrap().unwrap();
        // R((3±√5)/4) = 3/2 on both conjugates
        assert_eq!(img.as_rational(), Some(rat(3, 2)));
    }

    #[test]
    fn pole_has_no_image() {
        let num = p(&[0, 1]);
        let den = p(&[-1, 2]);
        assert!(image_class(&AlgebraicClass::rational(&rat(1, 2)), &num, &den).unwrap().is_none());
    }

    #[test]
    fn preimages_of_class() {
        // R(z) = 2z(2 - z): R(z) = 2 iff (z - 1)^2 = 0
        let num = p(&[0, 4, -2]);
        let q = p(&[-2, 1]);
        let pre = preimage_polynomial(&q, &num, &p(&[1]));
        assert_eq!(pre.monic(), p(&[1, -2, 1]));
    }

    #[test]
    fn invalid_classes_rejected() {
        assert!(AlgebraicClass::new(p(&[3])).is_err());
        assert!(AlgebraicClass::new(p(&[1, -2, 1])).is_err());
    }
}
