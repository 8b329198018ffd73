use num_bigint::BigInt;
use num_traits::Pow;
use serde::Serialize;

use super::DecimationData;
use crate::algebra::{image_class, AlgebraicClass};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Predicates {
    pub in_sigma_d: bool,
    pub phi_zero: bool,
    pub phi_pole: bool,
    pub phi_r_pole: bool,
    pub r_removable: bool,
    pub r_pole: bool,
    pub r_zero: bool,
    pub dr_nonzero: bool,
}

/// How the multiplicity of an exceptional value at level `n` is obtained
/// from level `n - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseRecord {
    pub value: AlgebraicClass,
    pub predicates: Predicates,
    pub case_id: u8,
    /// Multiplicity as an eigenvalue of `D`.
    pub mult_d: usize,
    /// Class of `R(value)`; `None` at a pole.
    pub image: Option<AlgebraicClass>,
}

impl CaseRecord {
    /// Multiplicity at level `n >= 1` given `|V(n-1)|` and the level `n - 1`
    /// multiplicity `prev` of `R(value)`.
    pub fn multiplicity(&self, m: usize, n: usize, v_prev: &BigInt, prev: &BigInt) -> BigInt {
        let cells: BigInt = Pow::pow(BigInt::from(m), n - 1) * BigInt::from(self.mult_d);
        match self.case_id {
            1 => prev.clone(),
            2 => v_prev.clone(),
            3 => cells - v_prev + prev,
            4 => cells + prev,
            5 => cells + v_prev + prev,
            6 => cells - v_prev + 2 * prev,
            7 => BigInt::from(0),
            8 => cells,
            _ => unreachable!("case ids are 1..=8"),
        }
    }

    pub fn formula(&self) -> &'static str {
        match self.case_id {
            1 => "mult(R(z))",
            2 => "|V(n-1)|",
            3 => "m^(n-1) mult_D(z) - |V(n-1)| + mult(R(z))",
            4 => "m^(n-1) mult_D(z) + mult(R(z))",
            5 => "m^(n-1) mult_D(z) + |V(n-1)| + mult(R(z))",
            6 => "m^(n-1) mult_D(z) - |V(n-1)| + 2 mult(R(z))",
            7 => "0",
            8 => "m^(n-1) mult_D(z)",
            _ => "?",
        }
    }
}

pub fn classify(dd: &DecimationData, v: &AlgebraicClass) -> Result<CaseRecord> {
    let (raw_num, raw_den) = &dd.r_raw;
    let raw_removable = v.divides(raw_den) && v.order_in(raw_num) >= v.order_in(raw_den);
    let p = Predicates {
        in_sigma_d: v.divides(&dd.char_d),
        phi_zero: v.divides(dd.phi.num()),
        phi_pole: v.divides(dd.phi.den()),
        phi_r_pole: v.divides(dd.phi_r.den()),
        r_removable: raw_removable,
        r_pole: v.divides(dd.r.den()),
        r_zero: v.divides(dd.r.num()),
        dr_nonzero: !v.divides(dd.dr.num()),
    };
    let case_id = if !p.in_sigma_d {
        match (p.phi_zero, p.r_pole) {
            (true, false) => 2,
            (true, true) => 7,
            (false, _) => 1,
        }
    } else if p.phi_pole {
        if !p.r_pole && (p.phi_r_pole || p.r_zero) && p.r_removable {
            if p.dr_nonzero {
                3
            } else {
                6
            }
        } else {
            return Err(Error::Unclassifiable(format!("{v}: {p:?}")));
        }
    } else if !p.phi_zero && !p.phi_r_pole {
        4
    } else if p.phi_zero && !p.r_pole {
        5
    } else if p.phi_zero {
        8
    } else {
        return Err(Error::Unclassifiable(format!("{v}: {p:?}")));
    };
    let image = image_class(v, dd.r.num(), dd.r.den())?;
    Ok(CaseRecord {
        value: v.clone(),
        predicates: p,
        case_id,
        mult_d: v.order_in(&dd.char_d),
        image,
    })
}
