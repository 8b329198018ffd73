//! Spectral decimation: the maps `phi` and `R` from the level-one walk
//! Laplacian, classification of exceptional values, and the eigenvalue
//! multiplicity induction.

mod classify;
mod spectrum;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{
    charpoly, int, rat, split_classes, squarefree_classes, AlgebraicClass, FunctionMatrix, Polynomial,
    Rational, RationalFunction, RationalMatrix,
};
use crate::error::{Error, Result};
use crate::fractal::SelfSimilarStructure;

pub use classify::{classify, CaseRecord, Predicates};
pub use spectrum::{crosscheck_spectrum, spectrum, spectrum_levels, CrosscheckReport, SpectrumEntry, SpectrumTable};

#[derive(Clone, Debug)]
pub struct DecimationData {
    pub name: String,
    pub m: usize,
    pub v0_size: usize,
    pub v1_size: usize,
    /// `S(z)` on the boundary, `v0_size x v0_size`.
    pub schur: FunctionMatrix,
    pub phi: RationalFunction,
    pub r: RationalFunction,
    /// `R = 1 - S11/phi` before cancellation.
    pub r_raw: (Polynomial, Polynomial),
    pub phi_r: RationalFunction,
    pub dr: RationalFunction,
    pub d: usize,
    /// Constant term of the denominator and leading coefficient of the
    /// numerator of `R`, both taken from the integer-primitive form.
    pub q0: BigInt,
    pub pd: BigInt,
    /// Product of the `d` roots of `R(z) = w`, divided by `w`.
    pub rho: Rational,
    /// `det(D - zI)`
    pub char_d: Polynomial,
    pub sigma_d: Vec<(AlgebraicClass, usize)>,
    pub exceptional: Vec<AlgebraicClass>,
    /// Classes of critical points of `R` that are not exceptional.
    pub critical: Vec<AlgebraicClass>,
}

fn p0_entry(k: usize, i: usize, j: usize) -> Rational {
    if i == j {
        Rational::one()
    } else {
        rat(-1, k as i64 - 1)
    }
}

/// Derives the decimation data from `G1`.
pub fn derive(s: &SelfSimilarStructure) -> Result<DecimationData> {
    let k = s.v0_size;
    let p1 = s.g1().probabilistic_laplacian()?;
    let bnd = s.boundary.clone();
    let interior: Vec<usize> = (0..s.v1_size).filter(|v| !bnd.contains(v)).collect();
    if interior.is_empty() {
        return Err(Error::NotFullySymmetric("G1 has no interior vertices".into()));
    }
    let a = p1.select(&bnd, &bnd);
    if a != RationalMatrix::identity(k) {
        return Err(Error::BoundaryAdjacency);
    }
    let b = FunctionMatrix::from_rational(&p1.select(&bnd, &interior));
    let c = FunctionMatrix::from_rational(&p1.select(&interior, &bnd));
    let dmat = p1.select(&interior, &interior);
    let resolvent_c = FunctionMatrix::shifted(&dmat)?.solve(&c)?;
    let schur = FunctionMatrix::shifted(&a)?.sub(&b.mul(&resolvent_c)?)?;

    let phi = schur.get(0, 1).scale(&int(-(k as i64 - 1)));
    if phi.is_zero() {
        return Err(Error::NotFullySymmetric("phi vanishes identically".into()));
    }
    let s11 = schur.get(0, 0).clone();
    let r = &RationalFunction::one() - &s11.checked_div(&phi)?;

    for i in 0..k {
        for j in 0..k {
            let mut target = RationalFunction::constant(p0_entry(k, i, j));
            if i == j {
                target = &target - &r;
            }
            if *schur.get(i, j) != &phi * &target {
                return Err(Error::NotFullySymmetric(format!(
                    "S({i},{j}) = {} is not phi * (P0 - R)",
                    schur.get(i, j)
                )));
            }
        }
    }

    if !r.eval(&Rational::zero()).is_some_and(|v| v.is_zero()) {
        return Err(Error::NotFullySymmetric(format!("R(0) != 0 for R = {r}")));
    }
    if r.num().deg() <= r.den().deg() {
        return Err(Error::NotFullySymmetric(format!("deg num <= deg den for R = {r}")));
    }

    // raw pair: S11 = sa/sb, phi = pc/pe
    let (sa, sb) = (s11.num(), s11.den());
    let (pc, pe) = (phi.num(), phi.den());
    let raw_num = &(&(pc * sb) - &(sa * pe)) * pe;
    let raw_den = &(pe * sb) * pc;

    let (q0, pd) = primitive_normal_form(&r);
    let d = r.num().deg();
    let sign = if d % 2 == 1 { Rational::one() } else { -Rational::one() };
    let rho = sign * Rational::new(q0.clone(), pd.clone());

    let char_d = charpoly(&dmat)?;
    let sigma_d = squarefree_classes(&char_d)?;
    let combined = &char_d.squarefree_part() * &phi.num().squarefree_part();
    let exceptional = split_classes(&combined.squarefree_part())?;
    let dr = r.derivative();
    let mut critical = Vec::new();
    if !dr.num().is_constant() {
        for c in split_classes(&dr.num().squarefree_part())? {
            if !exceptional.iter().any(|e| e.minpoly() == c.minpoly()) {
                critical.push(c);
            }
        }
    }
    let phi_r = &phi * &r;

    Ok(DecimationData {
        name: s.name.clone(),
        m: s.m,
        v0_size: k,
        v1_size: s.v1_size,
        schur,
        phi,
        r,
        r_raw: (raw_num, raw_den),
        phi_r,
        dr,
        d,
        q0,
        pd,
        rho,
        char_d,
        sigma_d,
        exceptional,
        critical,
    })
}

/// `(Q(0), P_d)` with `P` and `Q` scaled jointly to coprime integer
/// coefficients and `Q` having positive leading coefficient.
fn primitive_normal_form(r: &RationalFunction) -> (BigInt, BigInt) {
    let all: Vec<&Rational> = r.num().coeffs().iter().chain(r.den().coeffs()).collect();
    let l = all.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scale = |c: &Rational| (c * int(l.clone())).to_integer();
    let nums: Vec<BigInt> = r.num().coeffs().iter().map(scale).collect();
    let dens: Vec<BigInt> = r.den().coeffs().iter().map(scale).collect();
    let g = nums.iter().chain(&dens).fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut q0 = &dens[0] / &g;
    let mut pd = nums.last().expect("nonzero numerator") / &g;
    if dens.last().expect("nonzero denominator").is_negative() {
        q0 = -q0;
        pd = -pd;
    }
    (q0, pd)
}

impl DecimationData {
    /// `R` with numerator and denominator in the integer-primitive form used
    /// for `Q(0)` and `P_d`, rendered as text.
    pub fn r_display(&self) -> String {
        factored_display(&self.r)
    }

    pub fn phi_display(&self) -> String {
        factored_display(&self.phi)
    }

    pub fn exceptional_records(&self) -> Result<Vec<CaseRecord>> {
        self.exceptional
            .iter()
            .filter(|c| !c.is_zero_class())
            .map(|c| classify(self, c))
            .collect()
    }
}

/// `c * prod (primitive integer factors)`. A negative constant in front of
/// a polynomial is absorbed into its last linear factor, as in `z(5 - 4z)`.
fn factored_display(f: &RationalFunction) -> String {
    let (content, mut num_factors) = primitive_factors(f.num());
    let (dcontent, den_factors) = primitive_factors(f.den());
    let mut c = content / dcontent;
    let mut flipped = None;
    if c.is_negative() && den_factors.is_empty() {
        if let Some(i) = num_factors.iter().rposition(|p| p.deg() == 1 && *p != Polynomial::x()) {
            c = -c;
            flipped = Some(i);
            num_factors[i] = -&num_factors[i];
        }
    }
    let mut top = String::new();
    if num_factors.is_empty() || !c.abs().is_one() {
        top.push_str(&c.to_string());
    } else if c.is_negative() {
        top.push('-');
    }
    for (i, fac) in num_factors.iter().enumerate() {
        top.push_str(&factor_text(fac, flipped == Some(i)));
    }
    if den_factors.is_empty() {
        top
    } else {
        let den: Vec<String> = den_factors.iter().map(|p| factor_text(p, false)).collect();
        format!("{top} / ({})", den.concat())
    }
}

fn factor_text(p: &Polynomial, constant_first: bool) -> String {
    if *p == Polynomial::x() {
        return "z".into();
    }
    if constant_first {
        // a z + b with a < 0
        let a = -p.coeff(1);
        let b = p.coeff(0);
        let lin = if a.is_one() { "z".to_string() } else { format!("{a}z") };
        return format!("({b} - {lin})");
    }
    format!("({p})")
}

/// Content and integer-primitive irreducible factors, with multiplicity.
fn primitive_factors(p: &Polynomial) -> (Rational, Vec<Polynomial>) {
    let mut factors = Vec::new();
    for (f, mult) in p.squarefree_decomposition() {
        for class in split_classes(&f).unwrap_or_default() {
            let (ints, _) = class.minpoly().primitive_integer();
            let prim = Polynomial::new(ints.iter().map(|c| int(c.clone())).collect());
            for _ in 0..mult {
                factors.push(prim.clone());
            }
        }
    }
    let prod = factors.iter().fold(Polynomial::one(), |acc, f| &acc * f);
    let content = if p.is_zero() { Rational::zero() } else { p.leading() / prod.leading() };
    (content, factors)
}
