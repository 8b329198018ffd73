//! Brute-force spanning-tree counts on explicit graphs.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algebra::{bareiss_determinant, charpoly, Rational};
use crate::error::{Error, Result};
use crate::graph::Multigraph;

fn check_connected(g: &Multigraph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

/// Number of spanning trees: the Laplacian cofactor obtained by deleting
/// row and column `skip`.
pub fn tau_cofactor(g: &Multigraph, skip: usize) -> Result<BigInt> {
    check_connected(g)?;
    let n = g.vertex_count();
    if skip >= n {
        return Err(Error::InvalidVertex { id: skip, count: n });
    }
    let l = g.laplacian();
    let keep: Vec<usize> = (0..n).filter(|&i| i != skip).collect();
    let mut minor = Vec::with_capacity((n - 1) * (n - 1));
    for &i in &keep {
        for &j in &keep {
            minor.push(l[i * n + j].clone());
        }
    }
    Ok(bareiss_determinant(minor, n - 1))
}

pub fn tau_bruteforce(g: &Multigraph) -> Result<BigInt> {
    tau_cofactor(g, g.vertex_count().saturating_sub(1))
}

/// Product of the nonzero eigenvalues of `D^{-1}(D - A)`, read off the
/// linear coefficient of its characteristic polynomial.
pub fn det_star_p(g: &Multigraph) -> Result<Rational> {
    check_connected(g)?;
    let chi = charpoly(&g.probabilistic_laplacian()?)?;
    if !chi.coeff(0).is_zero() || chi.coeff(1).is_zero() {
        return Err(Error::Disconnected);
    }
    Ok(chi.coeff(1).abs())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixTreeCheck {
    pub tau: BigInt,
    pub degree_product: BigInt,
    pub degree_sum: BigInt,
    pub det_star: Rational,
    /// `(prod d / sum d) * det* P`
    pub rhs: Rational,
    pub holds: bool,
}

pub fn verify_matrix_tree(g: &Multigraph) -> Result<MatrixTreeCheck> {
    let tau = tau_bruteforce(g)?;
    let det_star = det_star_p(g)?;
    let degree_product = g.degree_product();
    let degree_sum = BigInt::from(2 * g.edge_count());
    let rhs = Rational::new(degree_product.clone(), degree_sum.clone()) * &det_star;
    let holds = rhs == Rational::from_integer(tau.clone());
    Ok(MatrixTreeCheck { tau, degree_product, degree_sum, det_star, rhs, holds })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeCheck {
    pub wedge: BigInt,
    pub product: BigInt,
    pub holds: bool,
}

/// Compares the count on the one-point union with the product of counts.
pub fn wedge_check(g1: &Multigraph, g2: &Multigraph, x1: usize, x2: usize) -> Result<WedgeCheck> {
    let w = g1.wedge(x1, g2, x2)?;
    let wedge = tau_bruteforce(&w)?;
    let product = tau_bruteforce(g1)? * tau_bruteforce(g2)?;
    let holds = wedge == product;
    Ok(WedgeCheck { wedge, product, holds })
}
