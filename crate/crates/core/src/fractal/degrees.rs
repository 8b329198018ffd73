use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};

use super::SelfSimilarStructure;

/// Degree data of `Gn` without building it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeStats {
    pub level: usize,
    pub corner_degrees: Vec<BigUint>,
    /// degree -> number of non-corner vertices with that degree
    pub interior_histogram: BTreeMap<BigUint, BigUint>,
}

impl DegreeStats {
    pub fn vertex_count(&self) -> BigUint {
        self.interior_histogram.values().sum::<BigUint>() + BigUint::from(self.corner_degrees.len())
    }

    pub fn degree_sum(&self) -> BigUint {
        let interior: BigUint = self.interior_histogram.iter().map(|(d, c)| d * c).sum();
        interior + self.corner_degrees.iter().sum::<BigUint>()
    }

    /// Full histogram including the corners.
    pub fn histogram(&self) -> BTreeMap<BigUint, BigUint> {
        let mut h = self.interior_histogram.clone();
        for d in &self.corner_degrees {
            *h.entry(d.clone()).or_insert_with(BigUint::zero) += 1u32;
        }
        h
    }
}

/// Corner degrees multiply by `kappa_j`; each gluing site of `G1` spawns one
/// new interior vertex per copy of the whole structure.
pub fn degree_stats(s: &SelfSimilarStructure, n: usize) -> DegreeStats {
    let k = s.v0_size;
    let base = BigUint::from(k - 1);
    if n == 0 {
        return DegreeStats {
            level: 0,
            corner_degrees: vec![base; k],
            interior_histogram: BTreeMap::new(),
        };
    }
    let g1 = s.g1().degrees();
    let kappa = s.kappa();
    let sites = s.sites();
    let mut corners: Vec<BigUint> = s.boundary.iter().map(|&b| BigUint::from(g1[b])).collect();
    let mut hist: BTreeMap<BigUint, BigUint> = BTreeMap::new();
    for &x in sites.keys() {
        *hist.entry(BigUint::from(g1[x])).or_insert_with(BigUint::zero) += 1u32;
    }
    let m = BigUint::from(s.m);
    for _ in 2..=n {
        let mut next: BTreeMap<BigUint, BigUint> = hist.into_iter().map(|(d, c)| (d, c * &m)).collect();
        for glued in sites.values() {
            let d: BigUint = glued.iter().map(|&(_, y)| &corners[y]).sum();
            *next.entry(d).or_insert_with(BigUint::zero) += 1u32;
        }
        hist = next;
        corners = corners
            .iter()
            .zip(&kappa)
            .map(|(c, &kj)| c * BigUint::from(kj))
            .collect();
    }
    DegreeStats {
        level: n,
        corner_degrees: corners,
        interior_histogram: hist,
    }
}

/// `(m^n (|V1| - |V0|) + m |V0| - |V1|) / (m - 1)`
pub fn vertex_count(s: &SelfSimilarStructure, n: usize) -> BigUint {
    let m = BigUint::from(s.m);
    let k = BigUint::from(s.v0_size);
    let v1 = BigUint::from(s.v1_size);
    if n == 0 {
        return k;
    }
    let mn: BigUint = Pow::pow(&m, n);
    (mn * (&v1 - &k) + &m * &k - &v1) / (&m - BigUint::one())
}

/// `m^n |V0|(|V0| - 1) / 2`, counted with multiplicity.
pub fn edge_count(s: &SelfSimilarStructure, n: usize) -> BigUint {
    let mn: BigUint = Pow::pow(BigUint::from(s.m), n);
    mn * BigUint::from(s.v0_size * (s.v0_size - 1) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fractal::{build_level, builtin, builtin_names};

    fn u(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn built_histogram(name: &str, n: usize) -> BTreeMap<BigUint, BigUint> {
        let g = build_level(&builtin(name).unwrap(), n).unwrap();
        let mut h = BTreeMap::new();
        for d in g.graph.degrees() {
            *h.entry(u(d)).or_insert_with(BigUint::zero) += 1u32;
        }
        h
    }

    #[test]
    fn recursion_matches_construction() {
        for name in builtin_names() {
            let s = builtin(name).unwrap();
            for n in 0..=3 {
                let stats = degree_stats(&s, n);
                assert_eq!(stats.histogram(), built_histogram(name, n), "{name} n={n}");
                assert_eq!(stats.vertex_count(), vertex_count(&s, n), "{name} n={n}");
                assert_eq!(stats.degree_sum(), edge_count(&s, n) * 2u32, "{name} n={n}");
            }
        }
    }

    #[test]
    fn sierpinski_corners_and_interior() {
        let s = builtin("sierpinski").unwrap();
        for n in 1..6 {
            let st = degree_stats(&s, n);
            assert_eq!(st.corner_degrees, vec![u(2); 3]);
            let interior = (3u64.pow(n as u32 + 1) - 3) / 2;
            assert_eq!(st.interior_histogram, BTreeMap::from([(u(4), u(interior))]));
        }
    }

    #[test]
    fn nonpcf_level_two() {
        let st = degree_stats(&builtin("nonpcf_sg").unwrap(), 2);
        assert_eq!(st.corner_degrees, vec![u(8); 3]);
        let expected = BTreeMap::from([(u(24), u(1)), (u(12), u(6)), (u(8), u(3)), (u(4), u(18))]);
        assert_eq!(st.interior_histogram, expected);
    }

    #[test]
    fn hexagasket_level_one() {
        let st = degree_stats(&builtin("hexagasket").unwrap(), 1);
        assert_eq!(st.histogram(), BTreeMap::from([(u(2), u(6)), (u(4), u(6))]));
    }
}
