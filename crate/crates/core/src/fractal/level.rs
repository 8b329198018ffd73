use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::json;

use super::SelfSimilarStructure;
use crate::error::{Error, Result};
use crate::graph::Multigraph;

/// The approximating graph `Gn` with its global corners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelGraph {
    pub n: usize,
    pub graph: Multigraph,
    pub corners: Vec<usize>,
}

impl LevelGraph {
    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller representative so labels follow construction order
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Glues `m` copies of `G(n-1)` along the cell maps, starting from the
/// complete graph on the boundary.
pub fn build_level(s: &SelfSimilarStructure, n: usize) -> Result<LevelGraph> {
    let k = s.v0_size;
    let mut cur = LevelGraph {
        n: 0,
        graph: Multigraph::complete(k),
        corners: (0..k).collect(),
    };
    let mut glued: Vec<Vec<(usize, usize)>> = vec![Vec::new(); s.v1_size];
    for (i, cell) in s.cell_maps.iter().enumerate() {
        for (j, &x) in cell.iter().enumerate() {
            glued[x].push((i, j));
        }
    }
    for level in 1..=n {
        let v = cur.vertex_count();
        let mut uf = UnionFind::new(s.m * v);
        for group in &glued {
            if let Some(&(i0, j0)) = group.first() {
                for &(i, j) in &group[1..] {
                    uf.union(i0 * v + cur.corners[j0], i * v + cur.corners[j]);
                }
            }
        }
        let mut ids = vec![usize::MAX; s.m * v];
        let mut next = 0;
        let mut corners = Vec::with_capacity(k);
        for j in 0..k {
            let (i, _) = glued[s.boundary[j]][0];
            let root = uf.find(i * v + cur.corners[j]);
            ids[root] = next;
            corners.push(next);
            next += 1;
        }
        for x in 0..s.m * v {
            let root = uf.find(x);
            if ids[root] == usize::MAX {
                ids[root] = next;
                next += 1;
            }
        }
        let mut graph = Multigraph::new(next);
        for i in 0..s.m {
            for (a, b, mult) in cur.graph.edges() {
                let ua = ids[uf.find(i * v + a)];
                let ub = ids[uf.find(i * v + b)];
                if ua == ub {
                    return Err(Error::LoopCreated { level });
                }
                graph.add_edge(ua, ub, mult)?;
            }
        }
        cur = LevelGraph { n: level, graph, corners };
    }
    Ok(cur)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

pub fn export(g: &LevelGraph, format: ExportFormat) -> String {
    match format {
        ExportFormat::Dot => {
            let mut out = String::new();
            writeln!(out, "graph G{} {{", g.n).unwrap();
            for v in 0..g.vertex_count() {
                if g.corners.contains(&v) {
                    writeln!(out, "  {v} [shape=box];").unwrap();
                } else {
                    writeln!(out, "  {v};").unwrap();
                }
            }
            for (u, v, m) in g.graph.edges() {
                for _ in 0..m {
                    writeln!(out, "  {u} -- {v};").unwrap();
                }
            }
            out.push_str("}\n");
            out
        }
        ExportFormat::Json => {
            let edges: Vec<[u64; 3]> = g.graph.edges().map(|(u, v, m)| [u as u64, v as u64, m]).collect();
            let doc = json!({
                "schema": "1",
                "level": g.n,
                "vertices": g.vertex_count(),
                "corners": g.corners,
                "edges": edges,
            });
            let mut s = serde_json::to_string(&doc).expect("serializable");
            s.push('\n');
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fractal::builtin;

    #[test]
    fn level_sizes() {
        let sg = builtin("sierpinski").unwrap();
        assert_eq!(build_level(&sg, 0).unwrap().vertex_count(), 3);
        assert_eq!(build_level(&sg, 1).unwrap().vertex_count(), 6);
        assert_eq!(build_level(&sg, 2).unwrap().vertex_count(), 15);
        let d = builtin("diamond").unwrap();
        assert_eq!(build_level(&d, 2).unwrap().vertex_count(), 12);
    }

    #[test]
    fn level_one_matches_g1_degrees() {
        for name in crate::fractal::builtin_names() {
            let s = builtin(name).unwrap();
            let mut built = build_level(&s, 1).unwrap().graph.degrees();
            let mut direct = s.g1().degrees();
            built.sort_unstable();
            direct.sort_unstable();
            assert_eq!(built, direct, "{name}");
        }
    }

    #[test]
    fn corners_come_first() {
        let g = build_level(&builtin("hexagasket").unwrap(), 2).unwrap();
        assert_eq!(g.corners, vec![0, 1, 2]);
        assert_eq!(g.graph.degrees()[..3], [2, 2, 2]);
    }

    #[test]
    fn exports() {
        let d1 = build_level(&builtin("diamond").unwrap(), 1).unwrap();
        let dot = export(&d1, ExportFormat::Dot);
        assert_eq!(dot.matches(" -- ").count(), 4);
        assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with(';') && !l.contains("--")).count(), 4);
        let s0 = build_level(&builtin("sierpinski").unwrap(), 0).unwrap();
        let v: serde_json::Value = serde_json::from_str(&export(&s0, ExportFormat::Json)).unwrap();
        assert_eq!(v["vertices"], 3);
        assert_eq!(v["edges"].as_array().unwrap().len(), 3);
        assert_eq!(v["schema"], "1");
        assert!("svg".parse::<ExportFormat>().is_err());
    }
}
