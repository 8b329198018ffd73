use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Signed, Zero};

use super::{classify, CaseRecord, DecimationData};
use crate::algebra::{
    all_roots_in, charpoly, image_class, int, preimage_polynomial, split_classes, AlgebraicClass, Polynomial,
    Rational,
};
use crate::error::{Error, Result};
use crate::fractal::{build_level, vertex_count, SelfSimilarStructure};

/// Eigenvalues `R^{-depth}(class)` of `Pn`, each with multiplicity `mult`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub class: AlgebraicClass,
    pub depth: usize,
    pub mult: BigInt,
}

/// The spectrum of `Pn` apart from the simple eigenvalue `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumTable {
    pub level: usize,
    pub d: usize,
    pub entries: Vec<SpectrumEntry>,
}

impl SpectrumTable {
    pub fn mult_of(&self, class: &AlgebraicClass, depth: usize) -> BigInt {
        self.entries
            .iter()
            .find(|e| e.depth == depth && e.class.minpoly() == class.minpoly())
            .map(|e| e.mult.clone())
            .unwrap_or_else(BigInt::zero)
    }

    /// Number of eigenvalues counted with multiplicity, including `0`.
    pub fn eigenvalue_count(&self) -> BigInt {
        let d = BigInt::from(self.d);
        let mut total = BigInt::one();
        for e in &self.entries {
            total += &e.mult * BigInt::from(e.class.degree()) * Pow::pow(&d, e.depth);
        }
        total
    }
}

impl fmt::Display for SpectrumTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "level {}: 0 (x1)", self.level)?;
        for e in &self.entries {
            if e.depth == 0 {
                writeln!(f, "  {} (x{})", e.class, e.mult)?;
            } else {
                writeln!(f, "  R^-{}({}) (x{} each)", e.depth, e.class, e.mult)?;
            }
        }
        Ok(())
    }
}

/// Forward orbit `R(e), R^2(e), ...`, truncated once it leaves `[0, 2]`,
/// hits `0` or a pole, or closes a cycle.
struct Orbit {
    points: Vec<AlgebraicClass>,
    cycle_start: Option<usize>,
    done: bool,
    seed: AlgebraicClass,
}

impl Orbit {
    fn new(seed: AlgebraicClass) -> Self {
        Orbit { points: Vec::new(), cycle_start: None, done: false, seed }
    }

    fn extend_to(&mut self, len: usize, dd: &DecimationData) -> Result<()> {
        let (lo, hi) = (Rational::zero(), int(2));
        while !self.done && self.points.len() < len {
            let prev = self.points.last().unwrap_or(&self.seed);
            if !self.points.is_empty() && (prev.is_zero_class() || !all_roots_in(prev.minpoly(), &lo, &hi)) {
                self.done = true;
                break;
            }
            match image_class(prev, dd.r.num(), dd.r.den())? {
                None => self.done = true,
                Some(next) => {
                    if let Some(i) = self.points.iter().position(|p| p == &next) {
                        self.cycle_start = Some(i);
                        self.done = true;
                    } else {
                        self.points.push(next);
                    }
                }
            }
        }
        Ok(())
    }

    /// `R^{j+1}(seed)` if the orbit is still tracked at that index.
    fn get(&self, j: usize) -> Option<&AlgebraicClass> {
        let p = self.points.get(j).or_else(|| {
            let start = self.cycle_start?;
            let period = self.points.len() - start;
            self.points.get(start + (j - start) % period)
        })?;
        let tail_ok = j < self.points.len() || self.cycle_start.is_some();
        (tail_ok && !p.is_zero_class() && all_roots_in(p.minpoly(), &Rational::zero(), &int(2))).then_some(p)
    }
}

struct Engine<'a> {
    dd: &'a DecimationData,
    m: usize,
    records: Vec<(CaseRecord, Orbit)>,
    /// Critical points that are not exceptional.
    critical: Vec<Orbit>,
    exceptional_product: Polynomial,
}

impl<'a> Engine<'a> {
    fn new(dd: &'a DecimationData, s: &SelfSimilarStructure) -> Result<Self> {
        let mut records = Vec::new();
        let mut exceptional_product = Polynomial::one();
        for v in &dd.exceptional {
            exceptional_product = &exceptional_product * v.minpoly();
            if !v.is_zero_class() {
                records.push((classify(dd, v)?, Orbit::new(v.clone())));
            }
        }
        let critical = dd.critical.iter().cloned().map(Orbit::new).collect();
        Ok(Engine { dd, m: s.m, records, critical, exceptional_product })
    }

    fn sources_mut(&mut self) -> impl Iterator<Item = &mut Orbit> {
        self.records.iter_mut().map(|(_, o)| o).chain(self.critical.iter_mut())
    }

    fn sources(&self) -> impl Iterator<Item = &Orbit> {
        self.records.iter().map(|(_, o)| o).chain(self.critical.iter())
    }

    fn blocked(&self, c: &AlgebraicClass) -> bool {
        c.is_zero_class() || self.sources().any(|o| o.points.first().is_some_and(|p| c.shares_root_with(p.minpoly())))
    }

    /// Preimage classes of `c`, without exceptional values and `0`.
    fn expand(&self, c: &AlgebraicClass) -> Result<Vec<AlgebraicClass>> {
        let mut pre = preimage_polynomial(c.minpoly(), self.dd.r.num(), self.dd.r.den()).squarefree_part();
        let common = pre.gcd(&self.exceptional_product);
        if !common.is_constant() {
            pre = pre.exact_div(&common)?;
        }
        if pre.coeff(0).is_zero() {
            pre = pre.exact_div(&Polynomial::x())?;
        }
        if pre.is_constant() {
            return Ok(Vec::new());
        }
        split_classes(&pre)
    }

    fn step(&mut self, prev: &SpectrumTable, v_prev: &BigInt, v_n: &BigInt) -> Result<SpectrumTable> {
        let n = prev.level + 1;
        let dd = self.dd;
        for o in self.sources_mut() {
            o.extend_to(n, dd)?;
        }
        let mut next: BTreeMap<(usize, Polynomial), (AlgebraicClass, BigInt)> = BTreeMap::new();
        let mut add = |c: AlgebraicClass, depth: usize, mult: &BigInt| {
            next.entry((depth, c.minpoly().clone()))
                .or_insert_with(|| (c, BigInt::zero()))
                .1 += mult;
        };
        let zero = AlgebraicClass::rational(&Rational::zero());
        for c in self.expand(&zero)? {
            add(c, 0, &BigInt::one());
        }
        for e in &prev.entries {
            if e.depth == 0 && self.blocked(&e.class) {
                for c in self.expand(&e.class)? {
                    add(c, 0, &e.mult);
                }
                continue;
            }
            if e.depth >= 1 {
                if let Some(src) = self.sources().find(|o| o.get(e.depth).is_some_and(|p| e.class.shares_root_with(p.minpoly()))) {
                    return Err(Error::Unsupported(format!(
                        "a preimage of depth {} of {} meets the hole source {} at level {n}",
                        e.depth + 1,
                        e.class,
                        src.seed
                    )));
                }
            }
            add(e.class.clone(), e.depth + 1, &e.mult);
        }
        for (rec, orbit) in &self.records {
            let prev_mult = match &rec.image {
                None => BigInt::zero(),
                Some(w) if w.is_zero_class() => BigInt::one(),
                Some(_) => lookup(prev, orbit),
            };
            let mult = rec.multiplicity(self.m, n, v_prev, &prev_mult);
            if mult.is_negative() {
                return Err(Error::InconsistentInduction {
                    level: n,
                    detail: format!("negative multiplicity {mult} for {} (case {})", rec.value, rec.case_id),
                });
            }
            if !mult.is_zero() {
                add(rec.value.clone(), 0, &mult);
            }
        }
        let mut entries: Vec<SpectrumEntry> = next
            .into_iter()
            .filter(|(_, (_, mult))| !mult.is_zero())
            .map(|((depth, _), (class, mult))| SpectrumEntry { class, depth, mult })
            .collect();
        entries.sort_by(|a, b| {
            (a.depth, a.class.degree(), a.class.as_rational(), a.class.minpoly()).cmp(&(
                b.depth,
                b.class.degree(),
                b.class.as_rational(),
                b.class.minpoly(),
            ))
        });
        let table = SpectrumTable { level: n, d: dd.d, entries };
        let total = table.eigenvalue_count();
        if &total != v_n {
            return Err(Error::InconsistentInduction {
                level: n,
                detail: format!("{total} eigenvalues counted, {v_n} expected"),
            });
        }
        Ok(table)
    }
}

/// Level `n - 1` multiplicity of `R(v)`, where `orbit` is the orbit of `v`.
fn lookup(prev: &SpectrumTable, orbit: &Orbit) -> BigInt {
    let mut total = BigInt::zero();
    for e in &prev.entries {
        if let Some(p) = orbit.get(e.depth) {
            if e.class.shares_root_with(p.minpoly()) {
                total += &e.mult;
            }
        }
    }
    total
}

fn level0(s: &SelfSimilarStructure, d: usize) -> SpectrumTable {
    let k = s.v0_size as i64;
    SpectrumTable {
        level: 0,
        d,
        entries: vec![SpectrumEntry {
            class: AlgebraicClass::rational(&Rational::new(BigInt::from(k), BigInt::from(k - 1))),
            depth: 0,
            mult: BigInt::from(k - 1),
        }],
    }
}

fn to_int(u: BigUint) -> BigInt {
    BigInt::from(u)
}

/// Spectra of `P0, ..., Pn`, each checked against `|Vn|`.
pub fn spectrum_levels(dd: &DecimationData, s: &SelfSimilarStructure, n: usize) -> Result<Vec<SpectrumTable>> {
    let mut engine = Engine::new(dd, s)?;
    let mut tables = vec![level0(s, dd.d)];
    for level in 1..=n {
        let v_prev = to_int(vertex_count(s, level - 1));
        let v_n = to_int(vertex_count(s, level));
        let t = engine.step(tables.last().expect("nonempty"), &v_prev, &v_n)?;
        tables.push(t);
    }
    Ok(tables)
}

pub fn spectrum(dd: &DecimationData, s: &SelfSimilarStructure, n: usize) -> Result<SpectrumTable> {
    Ok(spectrum_levels(dd, s, n)?.pop().expect("nonempty"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub level: usize,
    pub degree: usize,
    pub holds: bool,
}

/// `x * prod (preimage polynomials)^mult`, made monic.
pub fn predicted_charpoly(dd: &DecimationData, table: &SpectrumTable) -> Result<Polynomial> {
    let mut acc = Polynomial::x();
    for e in &table.entries {
        let mut p = e.class.minpoly().clone();
        for _ in 0..e.depth {
            p = preimage_polynomial(&p, dd.r.num(), dd.r.den());
        }
        let mult = usize::try_from(&e.mult)
            .map_err(|_| Error::Dimension(format!("multiplicity {} too large to expand", e.mult)))?;
        acc = &acc * &p.pow(mult);
    }
    Ok(acc.monic())
}

/// Compares the predicted spectrum with the characteristic polynomial of the
/// explicitly built `Pn`.
pub fn crosscheck_spectrum(dd: &DecimationData, s: &SelfSimilarStructure, n: usize) -> Result<CrosscheckReport> {
    let table = spectrum(dd, s, n)?;
    let g = build_level(s, n)?;
    let actual = charpoly(&g.graph.probabilistic_laplacian()?)?.monic();
    let predicted = predicted_charpoly(dd, &table)?;
    Ok(CrosscheckReport { level: n, degree: actual.deg(), holds: actual == predicted })
}
