//! Integer factorization for the modest integers that show up in degree
//! products, class norms and rational-root candidates.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u32 = 10_000;
const RHO_ITERATIONS: usize = 2_000_000;

/// Prime factorization of `n > 0` as a map prime -> exponent.
pub fn factor(n: &BigUint) -> Result<BTreeMap<BigUint, u64>> {
    let mut out = BTreeMap::new();
    if n.is_zero() {
        return Err(Error::Factorization("0".into()));
    }
    let mut rest = n.clone();
    for p in small_primes(TRIAL_LIMIT) {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            *out.entry(bp.clone()).or_insert(0) += 1;
        }
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let d = pollard_brent(&m).ok_or_else(|| Error::Factorization(m.to_string()))?;
        stack.push(&m / &d);
        stack.push(d);
    }
    Ok(out)
}

pub fn factor_u64(n: u64) -> Result<BTreeMap<BigUint, u64>> {
    factor(&BigUint::from(n))
}

/// Factors the absolute value of a signed integer.
pub fn factor_abs(n: &BigInt) -> Result<BTreeMap<BigUint, u64>> {
    factor(n.magnitude())
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: &BigUint) -> Result<Vec<BigUint>> {
    let f = factor(n)?;
    let mut divs = vec![BigUint::one()];
    for (p, e) in f {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..e {
                pk *= &p;
                next.push(pk.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

/// Writes `n > 0` as `s^2 * w` with `w` squarefree; returns `(s, w)`.
pub fn square_split(n: &BigUint) -> Result<(BigUint, BigUint)> {
    let mut s = BigUint::one();
    let mut w = BigUint::one();
    for (p, e) in factor(n)? {
        s *= p.pow((e / 2) as u32);
        if e % 2 == 1 {
            w *= p;
        }
    }
    Ok((s, w))
}

pub fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn small_primes(limit: u32) -> impl Iterator<Item = u32> {
    let mut sieve = vec![true; limit as usize + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2usize;
    while i * i <= limit as usize {
        if sieve[i] {
            let mut j = i * i;
            while j <= limit as usize {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .into_iter()
        .enumerate()
        .filter_map(|(i, p)| p.then_some(i as u32))
}

/// Deterministic for n < 3.3e24, probabilistic beyond.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
            if small == p {
                return true;
            }
            if small % p == 0 {
                return false;
            }
        }
    } else if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let a = BigUint::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    for c in 1u32..20 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1usize;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut steps = 0usize;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..(r - k).min(128) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
            steps += r;
            if steps > RHO_ITERATIONS {
                break;
            }
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && &g != n {
            return Some(g);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fact(n: u64) -> Vec<(u64, u64)> {
        factor_u64(n)
            .unwrap()
            .into_iter()
            .map(|(p, e)| (p.to_u64().unwrap(), e))
            .collect()
    }

    #[test]
    fn small_factorizations() {
        assert_eq!(fact(1), vec![]);
        assert_eq!(fact(54), vec![(2, 1), (3, 3)]);
        assert_eq!(fact(2700), vec![(2, 2), (3, 3), (5, 2)]);
        assert_eq!(fact(2916), vec![(2, 2), (3, 6)]);
        assert_eq!(fact(999_983), vec![(999_983, 1)]);
    }

    #[test]
    fn pollard_splits_semiprime() {
        let n = 1_000_000_007u64 * 998_244_353u64;
        assert_eq!(fact(n), vec![(998_244_353, 1), (1_000_000_007, 1)]);
    }

    #[test]
    fn divisors_and_square_split() {
        let d: Vec<u64> = divisors(&BigUint::from(12u32))
            .unwrap()
            .iter()
            .map(|x| x.to_u64().unwrap())
            .collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
        let (s, w) = square_split(&BigUint::from(72u32)).unwrap();
        assert_eq!((s, w), (BigUint::from(6u32), BigUint::from(2u32)));
    }

    #[test]
    fn zero_is_rejected() {
        assert!(factor(&BigUint::zero()).is_err());
    }
}
