//! Rational roots, real-root counting and splitting into conjugate classes.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::{int, AlgebraicClass, Polynomial, Rational};
use crate::arith;
use crate::error::{Error, Result};

/// Rational roots with multiplicity, ascending.
pub fn rational_roots(p: &Polynomial) -> Result<Vec<(Rational, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    let mut rest = p.clone();
    let zero_mult = rest.multiplicity_of(&Polynomial::x());
    if zero_mult > 0 {
        out.push((Rational::zero(), zero_mult));
        rest = rest.exact_div(&Polynomial::x().pow(zero_mult))?;
    }
    let sqf = rest.squarefree_part();
    if sqf.is_constant() {
        return Ok(out);
    }
    let (ints, _) = sqf.primitive_integer();
    let lead = ints.last().expect("nonconstant").magnitude().clone();
    let cons = ints[0].magnitude().clone();
    let nums = arith::divisors(&cons)?;
    let dens = arith::divisors(&lead)?;
    let mut seen = Vec::new();
    for a in &nums {
        for b in &dens {
            for sign in [1i32, -1] {
                let mut r = Rational::new(BigInt::from(a.clone()), BigInt::from(b.clone()));
                if sign < 0 {
                    r = -r;
                }
                if seen.contains(&r) {
                    continue;
                }
                seen.push(r.clone());
                if sqf.eval(&r).is_zero() {
                    let m = rest.multiplicity_of(&Polynomial::linear_root(&r));
                    out.push((r, m));
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

fn sturm_sequence(p: &Polynomial) -> Vec<Polynomial> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]).expect("nonzero");
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn sign_changes(seq: &[Polynomial], x: &Rational) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for q in seq {
        let v = q.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots in the closed interval `[lo, hi]`.
pub fn count_real_roots(p: &Polynomial, lo: &Rational, hi: &Rational) -> usize {
    if p.is_constant() {
        return 0;
    }
    let sqf = p.squarefree_part();
    let seq = sturm_sequence(&sqf);
    let inner = sign_changes(&seq, lo) - sign_changes(&seq, hi);
    inner + usize::from(sqf.eval(lo).is_zero())
}

/// True iff every root of the squarefree part of `p` is real and lies in `[lo, hi]`.
pub fn all_roots_in(p: &Polynomial, lo: &Rational, hi: &Rational) -> bool {
    let sqf = p.squarefree_part();
    count_real_roots(&sqf, lo, hi) == sqf.deg()
}

/// Splits a squarefree polynomial into classes: one per rational root,
/// quadratic factors of quartics, and the remaining factor as one class.
pub fn split_classes(p: &Polynomial) -> Result<Vec<AlgebraicClass>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    let mut rest = p.monic();
    for (r, _) in rational_roots(&rest)? {
        let lin = Polynomial::linear_root(&r);
        rest = rest.exact_div(&lin)?;
        out.push(AlgebraicClass::new(lin)?);
    }
    if rest.is_constant() {
        return Ok(out);
    }
    if rest.deg() == 4 {
        if let Some((a, b)) = split_quartic(&rest)? {
            out.push(AlgebraicClass::new(a)?);
            out.push(AlgebraicClass::new(b)?);
            return Ok(out);
        }
    }
    out.push(AlgebraicClass::new(rest)?);
    Ok(out)
}

/// Squarefree decomposition followed by class splitting of each part.
pub fn squarefree_classes(p: &Polynomial) -> Result<Vec<(AlgebraicClass, usize)>> {
    let mut out = Vec::new();
    for (f, mult) in p.squarefree_decomposition() {
        for c in split_classes(&f)? {
            out.push((c, mult));
        }
    }
    out.sort_by(|a, b| a.0.minpoly().cmp(b.0.minpoly()));
    Ok(out)
}

/// Factors a quartic without rational roots into two rational quadratics
/// when possible.
fn split_quartic(f: &Polynomial) -> Result<Option<(Polynomial, Polynomial)>> {
    let (ints, _) = f.primitive_integer();
    let a4 = ints[4].clone();
    // g(y) = a4^3 f(y / a4) is monic with integer coefficients
    let coeff = |i: usize| &ints[i] * a4.pow(3 - i as u32);
    let (b, c, d, e) = (coeff(3), coeff(2), coeff(1), coeff(0));
    if e.is_zero() {
        return Ok(None);
    }
    for q in arith::divisors(e.magnitude())? {
        for sign in [1i32, -1] {
            let q = if sign > 0 { BigInt::from(q.clone()) } else { -BigInt::from(q.clone()) };
            let s = &e / &q;
            let pr = &c - &q - &s;
            // p + r = b, p r = pr
            let disc = &b * &b - BigInt::from(4) * &pr;
            let Some(root) = arith::is_perfect_square(&disc) else {
                continue;
            };
            if (&b + &root) % 2 != BigInt::zero() {
                continue;
            }
            for p in [(&b + &root) / 2, (&b - &root) / 2] {
                let r = &b - &p;
                if &p * &s + &q * &r == d {
                    let a = int(a4.clone());
                    let quad = |lin: &BigInt, con: &BigInt| {
                        Polynomial::new(vec![int(con.clone()) / (&a * &a), int(lin.clone()) / &a, Rational::one()])
                    };
                    return Ok(Some((quad(&p, &q), quad(&r, &s))));
                }
            }
        }
    }
    Ok(None)
}

/// Human-readable label: the rational value, `(a±b√w)/c` for real
/// quadratics, otherwise the minimal polynomial.
pub fn class_label(minpoly: &Polynomial) -> String {
    match minpoly.deg() {
        1 => (-minpoly.coeff(0)).to_string(),
        2 => quadratic_label(minpoly).unwrap_or_else(|| format!("root of {minpoly}")),
        _ => format!("roots of {minpoly}"),
    }
}

fn quadratic_label(f: &Polynomial) -> Option<String> {
    let b = f.coeff(1);
    let c = f.coeff(0);
    // roots -b/2 ± sqrt(disc)/2
    let disc = &b * &b - int(4) * &c;
    let negative = disc.is_negative();
    let dn = disc.numer().magnitude() * disc.denom().magnitude();
    let (s, w) = arith::square_split(&dn).ok()?;
    let centre = -b / int(2);
    let spread = Rational::new(BigInt::from(s), BigInt::from(2) * disc.denom());
    let l = num_integer::Integer::lcm(centre.denom(), spread.denom());
    let a = (&centre * int(l.clone())).to_integer();
    let k = (&spread * int(l.clone())).to_integer();
    let radical = match (negative, w == BigUint::one()) {
        (false, true) => return None,
        (false, false) => format!("√{w}"),
        (true, true) => "i".to_string(),
        (true, false) => format!("√{w}i"),
    };
    let term = if k.is_one() { radical } else { format!("{k}{radical}") };
    let body = if a.is_zero() { format!("±{term}") } else { format!("{a}±{term}") };
    Some(if l.is_one() { body } else { format!("({body})/{l}") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // x (3/2 - x)^2
        let f = &p(&[0, 1]) * &Polynomial::new(vec![rat(3, 2), rat(-1, 1)]).pow(2);
        assert_eq!(rational_roots(&f).unwrap(), vec![(rat(0, 1), 1), (rat(3, 2), 2)]);
    }

    #[test]
    fn preimage_quadratic_product_by_vieta() {
        let f = Polynomial::new(vec![rat(3, 4), rat(-5, 1), rat(4, 1)]);
        assert!(rational_roots(&f).unwrap().is_empty());
        let classes = split_classes(&f).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(crate::algebra::class_norm_product(&classes[0]), rat(3, 16));
    }

    #[test]
    fn irrational_quadratic_stays_one_class() {
        let f = p(&[7, -24, 16]);
        assert!(rational_roots(&f).unwrap().is_empty());
        let classes = split_classes(&f).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].label(), "(3±√2)/4");
    }

    #[test]
    fn quartic_splits_into_quadratics() {
        let f = &p(&[7, -24, 16]) * &p(&[1, -6, 4]);
        let classes = split_classes(&f).unwrap();
        let mut labels: Vec<&str> = classes.iter().map(|c| c.label()).collect();
        labels.sort();
        assert_eq!(labels, vec!["(3±√2)/4", "(3±√5)/4"]);
    }

    #[test]
    fn irreducible_quartic_is_lumped() {
        let f = p(&[-2, 0, 0, 0, 1]);
        assert_eq!(split_classes(&f).unwrap().len(), 1);
    }

    #[test]
    fn sturm_counts_roots() {
        let f = p(&[7, -24, 16]);
        assert_eq!(count_real_roots(&f, &rat(0, 1), &rat(2, 1)), 2);
        assert_eq!(count_real_roots(&f, &rat(0, 1), &rat(1, 2)), 1);
        assert!(all_roots_in(&f, &rat(0, 1), &rat(2, 1)));
        assert!(!all_roots_in(&p(&[1, 0, 1]), &rat(-5, 1), &rat(5, 1)));
        // closed endpoints
        assert_eq!(count_real_roots(&p(&[0, -2, 1]), &rat(0, 1), &rat(2, 1)), 2);
    }
}
