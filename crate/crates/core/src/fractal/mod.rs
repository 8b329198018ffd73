//! Combinatorial description of finitely ramified self-similar structures.

mod builtins;
mod degrees;
mod level;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Multigraph;

pub use builtins::{builtin, builtin_names, reference_exponents, BUILTINS};
pub use degrees::{degree_stats, edge_count, vertex_count, DegreeStats};
pub use level::{build_level, export, ExportFormat, LevelGraph};

/// `m` cells, the level-one graph `G1` on `v1_size` vertices, the boundary
/// (the `v0_size` corners of `G1`) and, for each cell, the `G1` vertices
/// occupied by its copies of the corners.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "StructureFile", into = "StructureFile")]
pub struct SelfSimilarStructure {
    pub name: String,
    pub m: usize,
    pub v0_size: usize,
    pub v1_size: usize,
    pub edges1: Vec<(usize, usize, u64)>,
    pub boundary: Vec<usize>,
    pub cell_maps: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct StructureFile {
    name: String,
    cells: usize,
    boundary_size: usize,
    v1_size: usize,
    edges: Vec<Vec<u64>>,
    boundary: Vec<usize>,
    cell_maps: Vec<Vec<usize>>,
}

impl TryFrom<StructureFile> for SelfSimilarStructure {
    type Error = String;

    fn try_from(f: StructureFile) -> std::result::Result<Self, String> {
        let mut edges1 = Vec::with_capacity(f.edges.len());
        for e in &f.edges {
            match e.as_slice() {
                [u, v] => edges1.push((*u as usize, *v as usize, 1)),
                [u, v, m] => edges1.push((*u as usize, *v as usize, *m)),
                _ => return Err(format!("edge {e:?} must be [u, v] or [u, v, mult]")),
            }
        }
        Ok(SelfSimilarStructure {
            name: f.name,
            m: f.cells,
            v0_size: f.boundary_size,
            v1_size: f.v1_size,
            edges1,
            boundary: f.boundary,
            cell_maps: f.cell_maps,
        })
    }
}

impl From<SelfSimilarStructure> for StructureFile {
    fn from(s: SelfSimilarStructure) -> Self {
        StructureFile {
            name: s.name,
            cells: s.m,
            boundary_size: s.v0_size,
            v1_size: s.v1_size,
            edges: s
                .edges1
                .iter()
                .map(|&(u, v, m)| if m == 1 { vec![u as u64, v as u64] } else { vec![u as u64, v as u64, m] })
                .collect(),
            boundary: s.boundary,
            cell_maps: s.cell_maps,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TooFewCells(usize),
    TooFewBoundaryVertices(usize),
    BoundarySize { expected: usize, found: usize },
    CellCount { expected: usize, found: usize },
    CellArity { cell: usize, found: usize },
    VertexOutOfRange(usize),
    DuplicateBoundary(usize),
    ZeroMultiplicity(usize, usize),
    Loop(usize),
    Disconnected,
    NonInjectiveCell(usize),
    FixedPoint { cell: usize, corner: usize, boundary: usize },
    BoundaryEdge(usize, usize),
    UncoveredVertex(usize),
    CellEdgeMismatch,
}

impl Violation {
    /// Stable short name of the violated condition.
    pub fn name(&self) -> &'static str {
        match self {
            Violation::TooFewCells(_) => "too few cells",
            Violation::TooFewBoundaryVertices(_) => "too few boundary vertices",
            Violation::BoundarySize { .. } => "boundary size",
            Violation::CellCount { .. } => "cell count",
            Violation::CellArity { .. } => "cell arity",
            Violation::VertexOutOfRange(_) => "vertex out of range",
            Violation::DuplicateBoundary(_) => "duplicate boundary vertex",
            Violation::ZeroMultiplicity(..) => "zero multiplicity",
            Violation::Loop(_) => "loop",
            Violation::Disconnected => "disconnected",
            Violation::NonInjectiveCell(_) => "non-injective cell map",
            Violation::FixedPoint { .. } => "fixed-point condition",
            Violation::BoundaryEdge(..) => "boundary-boundary edge",
            Violation::UncoveredVertex(_) => "uncovered vertex",
            Violation::CellEdgeMismatch => "cell-edge mismatch",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.name();
        match self {
            Violation::TooFewCells(m) => write!(f, "{name}: m = {m}, need at least 2"),
            Violation::TooFewBoundaryVertices(k) => write!(f, "{name}: |V0| = {k}, need at least 2"),
            Violation::BoundarySize { expected, found } => {
                write!(f, "{name}: expected {expected} boundary vertices, found {found}")
            }
            Violation::CellCount { expected, found } => write!(f, "{name}: expected {expected} cells, found {found}"),
            Violation::CellArity { cell, found } => write!(f, "{name}: cell {cell} lists {found} vertices"),
            Violation::VertexOutOfRange(v) => write!(f, "{name}: {v}"),
            Violation::DuplicateBoundary(v) => write!(f, "{name}: {v}"),
            Violation::ZeroMultiplicity(u, v) => write!(f, "{name}: edge ({u}, {v})"),
            Violation::Loop(v) => write!(f, "{name} at vertex {v}"),
            Violation::Disconnected => write!(f, "{name}: G1 is not connected"),
            Violation::NonInjectiveCell(c) => write!(f, "{name}: cell {c} repeats a vertex"),
            Violation::FixedPoint { cell, corner, boundary } => write!(
                f,
                "{name}: cell {cell} puts corner {corner} on boundary vertex {boundary}"
            ),
            Violation::BoundaryEdge(u, v) => write!(f, "{name}: ({u}, {v})"),
            Violation::UncoveredVertex(v) => write!(f, "{name}: {v} is not a corner image of any cell"),
            Violation::CellEdgeMismatch => write!(f, "{name}: G1 edges differ from the union of cell images of G0"),
        }
    }
}

impl SelfSimilarStructure {
    /// Every violated structural condition, in a fixed order.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let k = self.v0_size;
        let n = self.v1_size;
        if self.m < 2 {
            out.push(Violation::TooFewCells(self.m));
        }
        if k < 2 {
            out.push(Violation::TooFewBoundaryVertices(k));
        }
        if self.boundary.len() != k {
            out.push(Violation::BoundarySize { expected: k, found: self.boundary.len() });
        }
        if self.cell_maps.len() != self.m {
            out.push(Violation::CellCount { expected: self.m, found: self.cell_maps.len() });
        }
        for (i, cell) in self.cell_maps.iter().enumerate() {
            if cell.len() != k {
                out.push(Violation::CellArity { cell: i, found: cell.len() });
            }
        }
        let mut bad_ids: Vec<usize> = self
            .edges1
            .iter()
            .flat_map(|&(u, v, _)| [u, v])
            .chain(self.boundary.iter().copied())
            .chain(self.cell_maps.iter().flatten().copied())
            .filter(|&v| v >= n)
            .collect();
        bad_ids.sort_unstable();
        bad_ids.dedup();
        out.extend(bad_ids.iter().map(|&v| Violation::VertexOutOfRange(v)));
        if !out.is_empty() {
            return out;
        }

        let mut seen = vec![false; n];
        for &b in &self.boundary {
            if seen[b] {
                out.push(Violation::DuplicateBoundary(b));
            }
            seen[b] = true;
        }
        let is_boundary = seen;

        let mut g = Multigraph::new(n);
        for &(u, v, m) in &self.edges1 {
            if m == 0 {
                out.push(Violation::ZeroMultiplicity(u, v));
            }
            if u == v {
                out.push(Violation::Loop(u));
                continue;
            }
            g.add_edge(u, v, m).expect("checked ids");
            if is_boundary[u] && is_boundary[v] {
                out.push(Violation::BoundaryEdge(u.min(v), u.max(v)));
            }
        }
        if !g.is_connected() {
            out.push(Violation::Disconnected);
        }

        for (i, cell) in self.cell_maps.iter().enumerate() {
            let mut sorted = cell.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != cell.len() {
                out.push(Violation::NonInjectiveCell(i));
            }
            for (corner, &x) in cell.iter().enumerate() {
                if let Some(j) = self.boundary.iter().position(|&b| b == x) {
                    if j != corner {
                        out.push(Violation::FixedPoint { cell: i, corner, boundary: j });
                    }
                }
            }
        }

        let mut covered = vec![false; n];
        for &x in self.cell_maps.iter().flatten() {
            covered[x] = true;
        }
        out.extend((0..n).filter(|&v| !covered[v]).map(Violation::UncoveredVertex));

        if !out.iter().any(|v| matches!(v, Violation::NonInjectiveCell(_))) {
            let mut expected = Multigraph::new(n);
            for cell in &self.cell_maps {
                for a in 0..k {
                    for b in a + 1..k {
                        expected.add_edge(cell[a], cell[b], 1).expect("distinct in-range ids");
                    }
                }
            }
            if expected != g {
                out.push(Violation::CellEdgeMismatch);
            }
        }
        out
    }

    pub fn validated(self) -> Result<Self> {
        let v = self.validate();
        if v.is_empty() {
            Ok(self)
        } else {
            Err(Error::Validation(v))
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: SelfSimilarStructure = serde_json::from_str(text)?;
        s.validated()
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn g1(&self) -> Multigraph {
        let mut g = Multigraph::new(self.v1_size);
        for &(u, v, m) in &self.edges1 {
            g.add_edge(u, v, m).expect("validated structure");
        }
        g
    }

    /// Number of cells whose copy of corner `j` sits on global corner `j`.
    pub fn kappa(&self) -> Vec<usize> {
        (0..self.v0_size)
            .map(|j| self.cell_maps.iter().filter(|c| c[j] == self.boundary[j]).count())
            .collect()
    }

    /// Non-boundary vertices of `G1` with the `(cell, corner)` pairs glued there.
    pub fn sites(&self) -> BTreeMap<usize, Vec<(usize, usize)>> {
        let mut out: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (i, cell) in self.cell_maps.iter().enumerate() {
            for (y, &x) in cell.iter().enumerate() {
                if !self.boundary.contains(&x) {
                    out.entry(x).or_default().push((i, y));
                }
            }
        }
        out
    }

    /// True when the cell/site incidence graph has no cycle, so every `Gn` is
    /// a tree of complete graphs glued at single vertices.
    pub fn is_tree_like(&self) -> bool {
        let sites = self.sites();
        let nodes = self.m + sites.len();
        let incidences: usize = sites.values().map(Vec::len).sum();
        // connected bipartite incidence graph is a tree iff |E| = |V| - 1
        incidences + 1 == nodes && self.g1().is_connected()
    }
}
