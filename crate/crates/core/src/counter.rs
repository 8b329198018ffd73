//! Spanning-tree counts in prime-factored form, assembled from the spectrum
//! of the walk Laplacian and the degree statistics of `Gn`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use serde_json::json;

use crate::algebra::{class_norm_product, AlgebraicClass, Rational};
use crate::arith;
use crate::decimation::{derive, spectrum_levels, DecimationData, SpectrumTable};
use crate::error::{Error, Result};
use crate::fixed;
use crate::fractal::{degree_stats, SelfSimilarStructure};

/// `sign * prod p^e` with nonzero signed exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredRational {
    pub negative: bool,
    pub factors: BTreeMap<BigUint, BigInt>,
}

impl FactoredRational {
    pub fn one() -> Self {
        FactoredRational { negative: false, factors: BTreeMap::new() }
    }

    pub fn from_rational(r: &Rational) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let mut out = FactoredRational { negative: r.is_negative(), factors: BTreeMap::new() };
        for (p, e) in arith::factor_abs(r.numer())? {
            out.add_exponent(&p, &BigInt::from(e));
        }
        for (p, e) in arith::factor_abs(r.denom())? {
            out.add_exponent(&p, &-BigInt::from(e));
        }
        Ok(out)
    }

    pub fn from_biguint(n: &BigUint) -> Result<Self> {
        Self::from_rational(&Rational::from_integer(BigInt::from(n.clone())))
    }

    fn add_exponent(&mut self, p: &BigUint, e: &BigInt) {
        if e.is_zero() {
            return;
        }
        let slot = self.factors.entry(p.clone()).or_insert_with(BigInt::zero);
        *slot += e;
        if slot.is_zero() {
            self.factors.remove(p);
        }
    }

    /// `self *= other^e`
    pub fn mul_pow(&mut self, other: &FactoredRational, e: &BigInt) {
        if other.negative && e.is_odd() {
            self.negative = !self.negative;
        }
        for (p, x) in &other.factors {
            self.add_exponent(p, &(x * e));
        }
    }

    pub fn mul(&self, other: &FactoredRational) -> FactoredRational {
        let mut out = self.clone();
        out.mul_pow(other, &BigInt::one());
        out
    }

    pub fn pow(&self, e: &BigInt) -> FactoredRational {
        let mut out = FactoredRational::one();
        out.mul_pow(self, e);
        out
    }

    pub fn abs(&self) -> FactoredRational {
        FactoredRational { negative: false, factors: self.factors.clone() }
    }

    pub fn is_positive_integer(&self) -> bool {
        !self.negative && self.factors.values().all(|e| e.is_positive())
    }

    /// Materializes the value; only sensible for small exponents.
    pub fn to_rational(&self) -> Rational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (p, e) in &self.factors {
            let exp = u32::try_from(e.magnitude()).expect("exponent fits in u32");
            let term: BigInt = Pow::pow(BigInt::from(p.clone()), exp);
            if e.is_positive() {
                num *= term;
            } else {
                den *= term;
            }
        }
        let v = Rational::new(num, den);
        if self.negative {
            -v
        } else {
            v
        }
    }
}

/// A positive integer `prod p^e`, `e >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredInteger {
    pub factors: BTreeMap<BigUint, BigInt>,
}

impl FactoredInteger {
    pub fn one() -> Self {
        FactoredInteger { factors: BTreeMap::new() }
    }

    pub fn exponent(&self, p: u64) -> BigInt {
        self.factors.get(&BigUint::from(p)).cloned().unwrap_or_default()
    }

    pub fn primes(&self) -> Vec<BigUint> {
        self.factors.keys().cloned().collect()
    }

    fn terms(&self) -> Vec<(BigUint, BigInt)> {
        self.factors.iter().map(|(p, e)| (p.clone(), e.clone())).collect()
    }

    pub fn digits(&self) -> BigInt {
        fixed::digit_count(&self.terms())
    }

    pub fn ln(&self, scale: usize) -> fixed::Decimal {
        fixed::log_sum(&self.terms(), &BigInt::one(), scale)
    }

    /// Materializes the value. Callers keep the exponents small.
    pub fn value(&self) -> BigInt {
        FactoredRational { negative: false, factors: self.factors.clone() }.to_rational().to_integer()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let factors: serde_json::Map<String, serde_json::Value> =
            self.factors.iter().map(|(p, e)| (p.to_string(), json!(e.to_string()))).collect();
        json!({ "factors": factors, "digits": self.digits().to_string() })
    }
}

impl TryFrom<FactoredRational> for FactoredInteger {
    type Error = Error;

    fn try_from(f: FactoredRational) -> Result<Self> {
        if !f.is_positive_integer() {
            let mut shown = FactoredInteger { factors: f.factors.clone() }.to_string();
            if f.negative {
                shown = format!("-({shown})");
            }
            return Err(Error::AssemblyMismatch(format!("assembled value {shown} is not a positive integer")));
        }
        Ok(FactoredInteger { factors: f.factors })
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(|(p, e)| format!("{p}^{e}")).collect();
        f.write_str(&parts.join(" * "))
    }
}

/// `(d^k - 1) / (d - 1)`, or `k` when `d = 1`.
fn geometric(d: usize, k: usize) -> BigInt {
    if d == 1 {
        return BigInt::from(k);
    }
    (Pow::pow(BigInt::from(d), k) - 1) / BigInt::from(d - 1)
}

/// Product of all points of `R^{-k}(base)` over every root of `base`.
pub fn preiterate_product(dd: &DecimationData, base: &AlgebraicClass, k: usize) -> Result<FactoredRational> {
    if base.is_zero_class() && k >= 1 {
        return Err(Error::InvalidArgument("preimages of 0 contain 0".into()));
    }
    let mut out = FactoredRational::from_rational(&class_norm_product(base))?;
    let rho = FactoredRational::from_rational(&dd.rho)?;
    out.mul_pow(&rho, &(BigInt::from(base.degree()) * geometric(dd.d, k)));
    Ok(out)
}

struct Assembler<'a> {
    dd: &'a DecimationData,
    rho: FactoredRational,
    norms: BTreeMap<String, FactoredRational>,
}

impl<'a> Assembler<'a> {
    fn new(dd: &'a DecimationData) -> Result<Self> {
        Ok(Assembler { dd, rho: FactoredRational::from_rational(&dd.rho)?, norms: BTreeMap::new() })
    }

    fn assemble(&mut self, s: &SelfSimilarStructure, table: &SpectrumTable) -> Result<FactoredInteger> {
        let n = table.level;
        let mut acc = FactoredRational::one();
        let stats = degree_stats(s, n);
        for (deg, count) in stats.histogram() {
            acc.mul_pow(&FactoredRational::from_biguint(&deg)?, &BigInt::from(count));
        }
        let k = s.v0_size;
        let degree_sum: BigUint = Pow::pow(BigUint::from(s.m), n) * BigUint::from(k * (k - 1));
        acc.mul_pow(&FactoredRational::from_biguint(&degree_sum)?, &BigInt::from(-1));
        for e in &table.entries {
            let key = e.class.minpoly().to_string();
            if !self.norms.contains_key(&key) {
                self.norms.insert(key.clone(), FactoredRational::from_rational(&class_norm_product(&e.class))?);
            }
            acc.mul_pow(&self.norms[&key], &e.mult);
            let rho_exp = BigInt::from(e.class.degree()) * geometric(self.dd.d, e.depth) * &e.mult;
            acc.mul_pow(&self.rho, &rho_exp);
        }
        FactoredInteger::try_from(acc).map_err(|err| match err {
            Error::AssemblyMismatch(msg) => Error::AssemblyMismatch(format!("{} at level {n}: {msg}", s.name)),
            other => other,
        })
    }
}

/// `(k^(k-2))^(m^n)`: every `Gn` is a tree of `m^n` copies of `K_k`.
pub fn tau_by_wedge(s: &SelfSimilarStructure, n: usize) -> Result<FactoredInteger> {
    let k = s.v0_size as u64;
    if k < 2 {
        return Err(Error::InvalidArgument("fewer than two boundary vertices".into()));
    }
    let cayley = FactoredRational::from_rational(&Rational::from_integer(Pow::pow(BigInt::from(k), k - 2)))?;
    FactoredInteger::try_from(cayley.pow(&Pow::pow(BigInt::from(s.m), n)))
}

fn cayley(s: &SelfSimilarStructure) -> Result<FactoredInteger> {
    tau_by_wedge(s, 0)
}

/// Counts for levels `0..=n_max`.
pub fn tau_levels(s: &SelfSimilarStructure, n_max: usize) -> Result<Vec<FactoredInteger>> {
    if s.is_tree_like() {
        return (0..=n_max).map(|n| tau_by_wedge(s, n)).collect();
    }
    let dd = derive(s).map_err(|e| Error::DecimationUnavailable { name: s.name.clone(), reason: e.to_string() })?;
    let tables = spectrum_levels(&dd, s, n_max)?;
    let mut asm = Assembler::new(&dd)?;
    let mut out = vec![cayley(s)?];
    for t in &tables[1..] {
        out.push(asm.assemble(s, t)?);
    }
    Ok(out)
}

pub fn tau(s: &SelfSimilarStructure, n: usize) -> Result<FactoredInteger> {
    Ok(tau_levels(s, n)?.pop().expect("nonempty"))
}

/// Exponent of each prime across levels `0..=n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentTable {
    pub primes: Vec<BigUint>,
    /// `rows[n][i]` is the exponent of `primes[i]` at level `n`.
    pub rows: Vec<Vec<BigInt>>,
}

impl ExponentTable {
    pub fn exponent(&self, n: usize, p: u64) -> BigInt {
        let p = BigUint::from(p);
        self.primes
            .iter()
            .position(|q| *q == p)
            .map(|i| self.rows[n][i].clone())
            .unwrap_or_default()
    }
}

pub fn exponent_table(s: &SelfSimilarStructure, n_max: usize) -> Result<ExponentTable> {
    let levels = tau_levels(s, n_max)?;
    let mut primes: Vec<BigUint> = levels.iter().flat_map(|t| t.primes()).collect();
    primes.sort();
    primes.dedup();
    let rows = levels
        .iter()
        .map(|t| primes.iter().map(|p| t.factors.get(p).cloned().unwrap_or_default()).collect())
        .collect();
    Ok(ExponentTable { primes, rows })
}
