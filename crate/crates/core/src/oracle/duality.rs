//! Degree-d dimension identities for the classical dualities. Each side is
//! computed separately: the left as a symmetric-power dimension, the right
//! as a sum of Weyl dimensions.

use serde::{Deserialize, Serialize};

use super::character::weyl_dimension;
use super::group::GroupSpec;
use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DualityKind {
    /// S(Cⁿ ⊗ Cᵖ) under GLₙ × GLₚ.
    CauchyGl { n: usize, p: usize },
    /// S(S²Cᵏ) = ⊕ F^{2δ}.
    SymSquare { k: usize },
    /// S(∧²Cᵏ) = ⊕ F^{(2δ)′}.
    WedgeSquare { k: usize },
    /// S(Cⁿ ⊗ Cᵏ) under Oₙ × GLₖ, n ≥ 2k+1.
    ODuality { n: usize, k: usize },
    /// S(C²ⁿ ⊗ Cᵏ) under Sp₂ₙ × GLₖ, n ≥ k.
    SpDuality { n: usize, k: usize },
}

fn binomial(n: u128, k: u128) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i).ok_or(Error::Overflow("binomial"))? / (i + 1);
    }
    Ok(acc)
}

/// dim Sʲ(W) for dim W = w.
fn sym_power_dim(w: usize, j: usize) -> Result<u128> {
    if w == 0 {
        return Ok(u128::from(j == 0));
    }
    binomial((w + j - 1) as u128, j as u128)
}

fn gl_dim(k: usize, p: &Partition) -> Result<u128> {
    if p.len() > k {
        return Ok(0);
    }
    let w: Vec<i32> = p.padded(k).into_iter().map(|x| x as i32).collect();
    weyl_dimension(GroupSpec::gl(k), &w)
}

fn padded_dim(g: GroupSpec, p: &Partition) -> Result<u128> {
    let w: Vec<i32> = p.padded(g.rank()).into_iter().map(|x| x as i32).collect();
    weyl_dimension(g, &w)
}

/// (left, right) sides of the degree-d identity.
pub fn duality_sides(kind: DualityKind, degree: usize) -> Result<(u128, u128)> {
    let d = degree;
    match kind {
        DualityKind::CauchyGl { n, p } => {
            let left = sym_power_dim(n * p, d)?;
            let mut right = 0u128;
            for lam in Partition::all_of_size(d) {
                right += gl_dim(n, &lam)? * gl_dim(p, &lam)?;
            }
            Ok((left, right))
        }
        DualityKind::SymSquare { k } => {
            let left = sym_power_dim(k * (k + 1) / 2, d)?;
            let mut right = 0u128;
            for delta in Partition::all_of_size(d) {
                right += gl_dim(k, &delta.double_rows())?;
            }
            Ok((left, right))
        }
        DualityKind::WedgeSquare { k } => {
            let left = sym_power_dim(k * k.saturating_sub(1) / 2, d)?;
            let mut right = 0u128;
            for delta in Partition::all_of_size(d) {
                right += gl_dim(k, &delta.double_columns())?;
            }
            Ok((left, right))
        }
        DualityKind::ODuality { n, k } => {
            if n < 2 * k + 1 {
                return Err(Error::stable("o-duality", format!("n ≥ 2k+1 fails: {n} < {}", 2 * k + 1)));
            }
            let left = sym_power_dim(n * k, d)?;
            let mut right = 0u128;
            for lam in Partition::all_up_to(d) {
                if lam.len() > k || (d - lam.size()) % 2 != 0 {
                    continue;
                }
                right += padded_dim(GroupSpec::so(n), &lam)?
                    * gl_dim(k, &lam)?
                    * sym_power_dim(k * (k + 1) / 2, (d - lam.size()) / 2)?;
            }
            Ok((left, right))
        }
        DualityKind::SpDuality { n, k } => {
            if n < k {
                return Err(Error::stable("sp-duality", format!("n ≥ k fails: {n} < {k}")));
            }
            let left = sym_power_dim(2 * n * k, d)?;
            let mut right = 0u128;
            for lam in Partition::all_up_to(d) {
                if lam.len() > k || (d - lam.size()) % 2 != 0 {
                    continue;
                }
                right += padded_dim(GroupSpec::sp(n), &lam)?
                    * gl_dim(k, &lam)?
                    * sym_power_dim(k * k.saturating_sub(1) / 2, (d - lam.size()) / 2)?;
            }
            Ok((left, right))
        }
    }
}

/// True when both sides of the degree-d identity agree.
pub fn duality_dim_check(kind: DualityKind, degree: usize) -> Result<bool> {
    let (left, right) = duality_sides(kind, degree)?;
    Ok(left == right)
}
