use num_traits::Zero;

use super::{ClaimError, ClaimId};
use crate::hyperkernel::{eval_rational, SeriesSpec};
use crate::padic::{reduce, PadicContext, Residue};
use crate::pgamma::gamma_p;
use crate::rationals::{int, ratio, BigRational};

/// The truncated sum `Σ_{k<p}` on the left of each family.
pub fn lhs_spec(claim: ClaimId, p: u64, r: i64) -> SeriesSpec<BigRational> {
    let (param, copies, weight) = match claim {
        ClaimId::Lr3 => (ratio(1, 2), 3, None),
        ClaimId::D2 => (ratio(1, 3), 6, Some((6, 1))),
        ClaimId::A1 => (ratio(-1, 3), 6, Some((6, -1))),
        ClaimId::Thm1 => (ratio(r, 5), 5, Some((10, r))),
        ClaimId::Thm2 | ClaimId::Conj1 | ClaimId::Conj3 => (ratio(r, 3), 6, Some((6, r))),
    };
    SeriesSpec {
        upper: vec![param; copies],
        lower: vec![],
        argument: int(1),
        terms: p,
        weight,
        factorial_power: copies as u32,
    }
}

pub fn lhs_value(claim: ClaimId, p: u64, r: i64) -> BigRational {
    eval_rational(&lhs_spec(claim, p, r)).expect("left-hand sums have no lower parameters")
}

/// `Σ_{k=0}^{1-r} (r-1)_k (r/3)_k³ / ((1)_k (2r/3)_k³)`.
pub fn finite_gamma_sum(r: i64) -> BigRational {
    let third = ratio(r, 3);
    let spec = SeriesSpec::hypergeometric(
        vec![int(r - 1), third.clone(), third.clone(), third],
        vec![ratio(2 * r, 3); 3],
        int(1),
        (2 - r).max(0) as u64,
    );
    eval_rational(&spec).expect("2r/3 is never a nonpositive integer for 3 ∤ r")
}

/// A right-hand side of the form `coefficient · ∏ Γ_p(xᵢ)^{eᵢ}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForm {
    pub coefficient: BigRational,
    pub gammas: Vec<(BigRational, i32)>,
    pub case_label: String,
}

fn sign(e: i64) -> BigRational {
    if e.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

fn p_pow(p: u64, e: i32) -> BigRational {
    int(p as i64).pow(e)
}

fn thm2_gammas(r: i64) -> Vec<(BigRational, i32)> {
    vec![
        (ratio(3 + r, 3), 2),
        (ratio(3 + 2 * r, 3), -3),
        (ratio(3 - r, 3), -4),
    ]
}

/// The closed form on the right, with the case selected by `p`.
pub fn rhs_form(claim: ClaimId, p: u64, r: i64) -> ClosedForm {
    let form = |coefficient, gammas, case_label: &str| ClosedForm {
        coefficient,
        gammas,
        case_label: case_label.to_string(),
    };
    match claim {
        ClaimId::Lr3 => {
            let g = vec![(ratio(1, 4), 4)];
            if p % 4 == 1 {
                form(int(-1), g, "p=1 mod 4")
            } else {
                form(-p_pow(p, 2) / int(16), g, "p=3 mod 4")
            }
        }
        ClaimId::D2 => {
            let g = vec![(ratio(1, 3), 9)];
            if p % 6 == 1 {
                form(-p_pow(p, 1), g, "p=1 mod 6")
            } else {
                form(-ratio(10, 27) * p_pow(p, 4), g, "p=5 mod 6")
            }
        }
        ClaimId::A1 => {
            let g = vec![(ratio(2, 3), 9)];
            if p % 6 == 1 {
                form(int(140) * p_pow(p, 4), g, "p=1 mod 6")
            } else {
                form(int(378) * p_pow(p, 1), g, "p=5 mod 6")
            }
        }
        ClaimId::Thm1 => form(BigRational::zero(), vec![], "zero"),
        ClaimId::Thm2 | ClaimId::Conj1 => form(
            sign(r + 1) * ratio(80 * r, 81) * p_pow(p, 4) * finite_gamma_sum(r),
            thm2_gammas(r),
            "p=-r mod 3",
        ),
        ClaimId::Conj3 => form(
            sign(r) * ratio(8 * r, 3) * p_pow(p, 1) * finite_gamma_sum(r),
            thm2_gammas(r),
            "p=r mod 3",
        ),
    }
}

impl ClosedForm {
    /// Residue mod `p^k`; the coefficient must be a p-adic integer.
    pub fn residue(&self, ctx: &PadicContext) -> Result<Residue, ClaimError> {
        let mut acc = reduce(&self.coefficient, ctx)?;
        if acc.is_zero() {
            return Ok(acc);
        }
        for (x, e) in &self.gammas {
            let g = gamma_p(x, ctx)?;
            let g = if *e < 0 {
                g.inverse().expect("Γ_p values are units")
            } else {
                g
            };
            acc = acc.mul(&g.pow(e.unsigned_abs() as u64));
        }
        Ok(acc)
    }
}

pub fn rhs_residue(claim: ClaimId, p: u64, r: i64, ctx: &PadicContext) -> Result<Residue, ClaimError> {
    rhs_form(claim, p, r).residue(ctx)
}
