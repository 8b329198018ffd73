//! The asymptotic complexity constant `lim ln tau(Gn) / |Vn|`.

use num_bigint::{BigInt, BigUint};
use serde_json::json;

use crate::algebra::Rational;
use crate::counter::{tau_by_wedge, tau_levels, FactoredInteger};
use crate::error::{Error, Result};
use crate::fixed::{self, Decimal};
use crate::fractal::{builtin, vertex_count, SelfSimilarStructure};

const GUARD: usize = 10;

#[derive(Clone, Debug)]
pub struct Bounds {
    pub lower: Decimal,
    pub upper: Option<Decimal>,
    pub applicable: bool,
}

#[derive(Clone, Debug)]
pub struct EntropyReport {
    pub name: String,
    pub precision: usize,
    /// `(n, c_n)` for `2 <= n <= n_max`
    pub values: Vec<(usize, Decimal)>,
    pub extrapolated: Decimal,
    pub bounds: Bounds,
    /// `|c_(n+1) - c_n|` is non-increasing over the last five levels.
    pub converging: bool,
}

fn c_n(t: &FactoredInteger, vertices: &BigUint, scale: usize) -> Decimal {
    let terms: Vec<(BigUint, BigInt)> = t.factors.iter().map(|(p, e)| (p.clone(), e.clone())).collect();
    fixed::log_sum(&terms, &BigInt::from(vertices.clone()), scale)
}

/// Differences of consecutive values are non-increasing over the last
/// `window` steps.
fn differences_shrink(values: &[(usize, Decimal)], window: usize) -> bool {
    let diffs: Vec<Decimal> = values.windows(2).map(|w| w[1].1.sub(&w[0].1).abs()).collect();
    let tail = &diffs[diffs.len().saturating_sub(window)..];
    tail.windows(2).all(|w| w[1] <= w[0])
}

pub fn bounds(s: &SelfSimilarStructure, precision: usize) -> Bounds {
    let k = s.v0_size as i64;
    let lower = fixed::ln(&BigUint::from(3u32), precision + GUARD).div_int(&BigInt::from(2)).rescale(precision);
    let applicable = k > 2 && !s.g1().is_tree();
    let upper = applicable.then(|| {
        let ratio = Rational::new(
            BigInt::from((s.m as i64 - 1) * k * (k - 1)),
            BigInt::from(s.v1_size as i64 - k),
        );
        fixed::ln_rational(&ratio, precision)
    });
    Bounds { lower, upper, applicable }
}

pub fn entropy(s: &SelfSimilarStructure, n_max: usize, precision: usize) -> Result<EntropyReport> {
    if n_max < 2 {
        return Err(Error::InvalidArgument(format!("entropy needs n_max >= 2, got {n_max}")));
    }
    let levels = tau_levels(s, n_max)?;
    let work = precision + GUARD;
    let values: Vec<(usize, Decimal)> = (2..=n_max).map(|n| (n, c_n(&levels[n], &vertex_count(s, n), work))).collect();
    let converging = differences_shrink(&values, 5);
    let extrapolated = values.last().expect("n_max >= 2").1.rescale(precision);
    Ok(EntropyReport {
        name: s.name.clone(),
        precision,
        values: values.into_iter().map(|(n, c)| (n, c.rescale(precision))).collect(),
        extrapolated,
        bounds: bounds(s, precision),
        converging,
    })
}

impl EntropyReport {
    pub fn within_bounds(&self) -> Option<bool> {
        let upper = self.bounds.upper.as_ref()?;
        Some(self.bounds.lower <= self.extrapolated && self.extrapolated <= *upper)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("entropy of {} (natural log, {} digits)\n", self.name, self.precision);
        out.push_str(&format!("{:>4}  {}\n", "n", "c_n"));
        for (n, c) in &self.values {
            out.push_str(&format!("{n:>4}  {c}\n"));
        }
        out.push_str(&format!("limit estimate: {}\n", self.extrapolated));
        out.push_str(&format!("converging: {}\n", self.converging));
        match (&self.bounds.upper, self.bounds.applicable) {
            (Some(upper), true) => out.push_str(&format!(
                "bounds: {} <= c <= {} ({})\n",
                self.bounds.lower,
                upper,
                if self.within_bounds() == Some(true) { "holds" } else { "VIOLATED" }
            )),
            _ => out.push_str("bounds: not applicable (|V0| = 2 or G1 is a tree)\n"),
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let values: Vec<serde_json::Value> =
            self.values.iter().map(|(n, c)| json!({"n": n, "c": c.to_string()})).collect();
        json!({
            "schema": "1",
            "fractal": self.name,
            "log_base": "e",
            "precision": self.precision,
            "values": values,
            "extrapolated": self.extrapolated.to_string(),
            "converging": self.converging,
            "bounds": {
                "applicable": self.bounds.applicable,
                "lower": self.bounds.lower.to_string(),
                "upper": self.bounds.upper.as_ref().map(|u| u.to_string()),
                "holds": self.within_bounds(),
            },
        })
    }
}

#[derive(Clone, Debug)]
pub struct SharpnessReport {
    pub values: Vec<(usize, Decimal)>,
    pub target: Decimal,
    pub monotone: bool,
    pub final_gap: Decimal,
}

/// `c_n` for the tree of triangles, which increases to the lower bound
/// `ln 3 / 2`.
pub fn tree_entropy_sharpness_demo(n_max: usize, precision: usize) -> Result<SharpnessReport> {
    let s = builtin("tree3")?;
    let work = precision + GUARD;
    let mut values = Vec::new();
    for n in 1..=n_max {
        let t = tau_by_wedge(&s, n)?;
        values.push((n, c_n(&t, &vertex_count(&s, n), work)));
    }
    let monotone = values.windows(2).all(|w| w[0].1 < w[1].1);
    let target = bounds(&s, work).lower;
    let final_gap = target.sub(&values.last().map(|v| v.1.clone()).unwrap_or(Decimal::zero(work))).abs();
    Ok(SharpnessReport {
        values: values.into_iter().map(|(n, c)| (n, c.rescale(precision))).collect(),
        target: target.rescale(precision),
        monotone,
        final_gap: final_gap.rescale(precision),
    })
}
