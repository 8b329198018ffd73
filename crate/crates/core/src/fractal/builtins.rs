use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use super::SelfSimilarStructure;
use crate::error::{Error, Result};

pub const BUILTINS: [&str; 6] = ["sierpinski", "nonpcf_sg", "diamond", "hexagasket", "interval", "tree3"];

pub fn builtin_names() -> &'static [&'static str] {
    &BUILTINS
}

/// Structure with `G1` the union of the complete graphs on each cell.
fn from_cells(name: &str, k: usize, n: usize, cells: &[&[usize]]) -> SelfSimilarStructure {
    let mut edges: Vec<(usize, usize, u64)> = Vec::new();
    for cell in cells {
        for a in 0..k {
            for b in a + 1..k {
                let (u, v) = (cell[a].min(cell[b]), cell[a].max(cell[b]));
                match edges.iter_mut().find(|e| e.0 == u && e.1 == v) {
                    Some(e) => e.2 += 1,
                    None => edges.push((u, v, 1)),
                }
            }
        }
    }
    SelfSimilarStructure {
        name: name.to_string(),
        m: cells.len(),
        v0_size: k,
        v1_size: n,
        edges1: edges,
        boundary: (0..k).collect(),
        cell_maps: cells.iter().map(|c| c.to_vec()).collect(),
    }
}

pub fn builtin(name: &str) -> Result<SelfSimilarStructure> {
    let s = match name {
        // corners 0,1,2; midpoints 3 (01), 4 (12), 5 (02)
        "sierpinski" => from_cells(name, 3, 6, &[&[0, 3, 5], &[3, 1, 4], &[5, 4, 2]]),
        // corners 0,1,2; midpoints 3 (01), 4 (12), 5 (02); centre 6
        "nonpcf_sg" => from_cells(
            name,
            3,
            7,
            &[&[0, 3, 6], &[0, 6, 5], &[3, 1, 6], &[6, 1, 4], &[5, 6, 2], &[6, 4, 2]],
        ),
        // the 4-cycle 0-2-1-3
        "diamond" => from_cells(name, 2, 4, &[&[0, 2], &[2, 1], &[0, 3], &[3, 1]]),
        // a ring of six triangles; 9, 10, 11 are the free outer vertices
        "hexagasket" => from_cells(
            name,
            3,
            12,
            &[&[0, 3, 8], &[4, 1, 5], &[7, 6, 2], &[3, 4, 9], &[10, 5, 6], &[8, 11, 7]],
        ),
        "interval" => from_cells(name, 2, 3, &[&[0, 2], &[2, 1]]),
        // three triangles sharing the vertex 3
        "tree3" => from_cells(name, 3, 7, &[&[0, 3, 4], &[5, 1, 3], &[3, 6, 2]]),
        _ => {
            return Err(Error::UnknownBuiltin {
                name: name.to_string(),
                available: BUILTINS.join(", "),
            })
        }
    };
    s.validated()
}

fn pw(b: u64, e: usize) -> BigInt {
    Pow::pow(BigInt::from(b), e)
}

/// Closed-form prime exponents of the spanning-tree count at level `n`, for
/// builtins that have one.
pub fn reference_exponents(name: &str, n: usize) -> Option<Vec<(u64, BigInt)>> {
    let nn = BigInt::from(n);
    let v = match name {
        "sierpinski" => vec![
            (2, (pw(3, n) - 1) / 2),
            (3, (pw(3, n + 1) + 2 * &nn + 1) / 4),
            (5, (pw(3, n) - 2 * &nn - 1) / 4),
        ],
        "nonpcf_sg" => vec![
            (2, 2 * (11 * pw(6, n) - 30 * &nn - 11) / 25),
            (3, (2 * pw(6, n) + 3) / 5),
            (5, (4 * pw(6, n) + 30 * &nn - 4) / 25),
        ],
        "diamond" => vec![(2, 2 * (pw(4, n) - 1) / 3)],
        "hexagasket" => vec![
            (2, 2 * (pw(6, n) - 1) / 5),
            (3, (4 * pw(6, n + 1) + 5 * &nn + 1) / 25),
            (7, (pw(6, n) - 5 * &nn - 1) / 25),
        ],
        "tree3" => vec![(3, pw(3, n))],
        "interval" => vec![],
        _ => return None,
    };
    Some(v.into_iter().filter(|(_, e)| !e.is_zero()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_name_lists_available() {
        let err = builtin("koch").unwrap_err().to_string();
        assert!(err.contains("sierpinski") && err.contains("tree3"), "{err}");
    }

    #[test]
    fn sizes() {
        let s = builtin("sierpinski").unwrap();
        assert_eq!((s.m, s.v0_size, s.v1_size, s.edges1.len()), (3, 3, 6, 9));
        let h = builtin("hexagasket").unwrap();
        assert_eq!((h.m, h.v0_size, h.v1_size), (6, 3, 12));
        let d = builtin("diamond").unwrap();
        assert_eq!((d.m, d.v0_size, d.v1_size, d.edges1.len()), (4, 2, 4, 4));
    }

    #[test]
    fn nonpcf_centre_edges_are_doubled() {
        let s = builtin("nonpcf_sg").unwrap();
        assert_eq!(s.g1().degrees(), vec![4, 4, 4, 4, 4, 4, 12]);
        assert_eq!(s.g1().multiplicity(0, 6), 2);
    }

    #[test]
    fn reference_exponents_at_level_two() {
        let e = |name, n| -> Vec<i64> {
            reference_exponents(name, n)
                .unwrap()
                .into_iter()
                .map(|(_, x)| i64::try_from(x).unwrap())
                .collect()
        };
        assert_eq!(e("sierpinski", 2), vec![4, 8, 1]);
        assert_eq!(e("nonpcf_sg", 2), vec![26, 15, 8]);
        assert_eq!(e("hexagasket", 2), vec![14, 35, 1]);
        assert_eq!(e("hexagasket", 3), vec![86, 208, 8]);
        assert_eq!(e("diamond", 3), vec![42]);
    }
}
