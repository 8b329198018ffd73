//! Test-side reference computations shared by the integration targets.
#![allow(dead_code)]

use decimation_trees::algebra::{Rational, RationalMatrix};
use decimation_trees::fractal::SelfSimilarStructure;
use decimation_trees::graph::Multigraph;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

/// Reference spanning-tree count: plain Gaussian elimination over the
/// rationals on the reduced Laplacian.
pub fn kirchhoff_reference(g: &Multigraph) -> BigInt {
    let n = g.vertex_count();
    let l = g.laplacian();
    let mut a: Vec<Vec<Rational>> = (1..n)
        .map(|i| (1..n).map(|j| Rational::from_integer(l[i * n + j].clone())).collect())
        .collect();
    let m = n - 1;
    let mut det = Rational::one();
    for c in 0..m {
        let Some(p) = (c..m).find(|&r| !a[r][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for r in c + 1..m {
            let f = &a[r][c] / &a[c][c];
            for k in c..m {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det.to_integer()
}

/// Random connected multigraph: a random spanning tree plus extra edges.
pub fn random_connected_graph(rng: &mut impl Rng, max_n: usize) -> Multigraph {
    let n = rng.gen_range(2..=max_n);
    let mut g = Multigraph::new(n);
    for i in 1..n {
        let p = rng.gen_range(0..i);
        g.add_edge(i, p, 1).unwrap();
    }
    for _ in 0..rng.gen_range(0..2 * n) {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            g.add_edge(u, v, rng.gen_range(1..=3)).unwrap();
        }
    }
    g
}

fn sub(m: &RationalMatrix, rows: &[usize], cols: &[usize]) -> Vec<Vec<Rational>> {
    rows.iter().map(|&i| cols.iter().map(|&j| m.get(i, j).clone()).collect()).collect()
}

/// Solves `a x = b` by Gauss-Jordan; `None` if `a` is singular.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Vec<Rational>>) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        b.swap(p, c);
        let inv = Rational::one() / &a[c][c];
        for x in a[c].iter_mut().chain(b[c].iter_mut()) {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                }
                for k in 0..b[r].len() {
                    let t = &f * &b[c][k];
                    b[r][k] -= t;
                }
            }
        }
    }
    Some(b)
}

/// `S(z) = (A - z) - B (D - z)^-1 C` evaluated at a rational point.
pub fn schur_at(s: &SelfSimilarStructure, z: &Rational) -> Option<Vec<Vec<Rational>>> {
    let p = s.g1().probabilistic_laplacian().unwrap();
    let bnd = s.boundary.clone();
    let int: Vec<usize> = (0..s.v1_size).filter(|v| !bnd.contains(v)).collect();
    let mut d = sub(&p, &int, &int);
    for (i, row) in d.iter_mut().enumerate() {
        row[i] -= z;
    }
    let x = solve(d, sub(&p, &int, &bnd))?;
    let b = sub(&p, &bnd, &int);
    let mut out = sub(&p, &bnd, &bnd);
    for i in 0..bnd.len() {
        out[i][i] -= z;
        for j in 0..bnd.len() {
            let t: Rational = (0..int.len()).map(|k| &b[i][k] * &x[k][j]).sum();
            out[i][j] -= t;
        }
    }
    Some(out)
}

/// Entry of `P0`, the probabilistic Laplacian of the complete graph on `k`
/// vertices.
pub fn p0(k: usize, i: usize, j: usize) -> Rational {
    if i == j {
        Rational::one()
    } else {
        -Rational::one() / Rational::from_integer(BigInt::from(k - 1))
    }
}

/// `|Vn|` from `|V(n+1)| = m |Vn| - (m |V0| - |V1|)`.
pub fn vertices(s: &SelfSimilarStructure, n: usize) -> BigInt {
    let (m, k, v1) = (BigInt::from(s.m), BigInt::from(s.v0_size), BigInt::from(s.v1_size));
    let mut v = k.clone();
    for _ in 0..n {
        v = &m * &v - (&m * &k - &v1);
    }
    v
}
