//! The ten stable branching formulas and the two Littlewood restriction
//! rules, as sums of products of LR coefficients.
//!
//! Every sum is formally over all partitions. It is made finite by walking
//! the LR support outward from one summation variable: each further
//! variable is drawn from a `skew_expand` or `tensor_expand` map, so only
//! tuples with every factor nonzero are ever visited.

use crate::error::{Error, Result};
use crate::lr::{lr_coeff, skew_expand, tensor_expand};
use crate::partition::Partition;

/// Which even shapes a sum runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvenShape {
    /// 2δ
    Rows,
    /// (2δ)′
    Columns,
}

impl EvenShape {
    fn admits(self, p: &Partition) -> bool {
        match self {
            EvenShape::Rows => p.is_even_rows(),
            EvenShape::Columns => p.is_even_columns(),
        }
    }
}

fn add_product(acc: &mut u64, factors: &[u64]) -> Result<()> {
    let mut prod = 1u64;
    for &f in factors {
        prod = prod.checked_mul(f).ok_or(Error::Overflow("LR product"))?;
    }
    *acc = acc.checked_add(prod).ok_or(Error::Overflow("LR sum"))?;
    Ok(())
}

/// Σ_η c^λ_{μ η} over even shapes η.
pub fn even_skew_sum(outer: &Partition, inner: &Partition, shape: EvenShape) -> Result<u64> {
    let mut total = 0u64;
    for (eta, c) in skew_expand(outer, inner).iter() {
        if shape.admits(eta) {
            add_product(&mut total, &[c])?;
        }
    }
    Ok(total)
}

/// Evaluation order for the six-fold `GL` diagonal sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SixFoldOrder {
    /// Fix α₁ ⊆ λ⁺ ∩ μ⁺ first and walk γ₁ → β₂ → β₁ → γ₂.
    FromAlpha,
    /// Fix β₁ ⊆ λ⁻ ∩ μ⁻ first and walk γ₂ → α₂ → α₁ → γ₁.
    FromBeta,
}

/// [F^{μ} ⊗ F^{ν}, F^{λ}] for `GLₙ ⊂ GLₙ × GLₙ`:
/// Σ c^{λ⁺}_{α₂α₁} c^{μ⁺}_{α₁γ₁} c^{ν⁻}_{γ₁β₂} c^{λ⁻}_{β₂β₁} c^{μ⁻}_{β₁γ₂} c^{ν⁺}_{γ₂α₂}.
#[allow(clippy::too_many_arguments)]
pub fn diagonal_gl_sum(
    lam_plus: &Partition,
    lam_minus: &Partition,
    mu_plus: &Partition,
    mu_minus: &Partition,
    nu_plus: &Partition,
    nu_minus: &Partition,
    order: SixFoldOrder,
) -> Result<u64> {
    let mut total = 0u64;
    match order {
        SixFoldOrder::FromAlpha => {
            for a1 in mu_plus.subpartitions().iter().filter(|a| lam_plus.contains(a)) {
                let a2_map = skew_expand(lam_plus, a1);
                for (g1, c_mu_plus) in skew_expand(mu_plus, a1).iter() {
                    for (b2, c_nu_minus) in skew_expand(nu_minus, g1).iter() {
                        for (b1, c_lam_minus) in skew_expand(lam_minus, b2).iter() {
                            for (g2, c_mu_minus) in skew_expand(mu_minus, b1).iter() {
                                for (a2, c_lam_plus) in a2_map.iter() {
                                    let c_nu_plus = lr_coeff(nu_plus, g2, a2);
                                    if c_nu_plus > 0 {
                                        add_product(
                                            &mut total,
                                            &[c_lam_plus, c_mu_plus, c_nu_minus, c_lam_minus, c_mu_minus, c_nu_plus],
                                        )?;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        SixFoldOrder::FromBeta => {
            for b1 in mu_minus.subpartitions().iter().filter(|b| lam_minus.contains(b)) {
                let b2_map = skew_expand(lam_minus, b1);
                for (g2, c_mu_minus) in skew_expand(mu_minus, b1).iter() {
                    for (a2, c_nu_plus) in skew_expand(nu_plus, g2).iter() {
                        for (a1, c_lam_plus) in skew_expand(lam_plus, a2).iter() {
                            for (g1, c_mu_plus) in skew_expand(mu_plus, a1).iter() {
                                for (b2, c_lam_minus) in b2_map.iter() {
                                    let c_nu_minus = lr_coeff(nu_minus, g1, b2);
                                    if c_nu_minus > 0 {
                                        add_product(
                                            &mut total,
                                            &[c_lam_plus, c_mu_plus, c_nu_minus, c_lam_minus, c_mu_minus, c_nu_plus],
                                        )?;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(total)
}

/// Σ_{α,β,γ} c^λ_{αβ} c^μ_{αγ} c^ν_{βγ}; the orthogonal and symplectic
/// diagonal rules share this sum.
pub fn diagonal_classical_sum(lam: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    // |α|+|β| = |λ|, |α|+|γ| = |μ|, |β|+|γ| = |ν|
    let twice_alpha = (lam.size() + mu.size()) as i64 - nu.size() as i64;
    if twice_alpha < 0 || twice_alpha % 2 != 0 {
        return Ok(0);
    }
    let alpha_size = (twice_alpha / 2) as usize;
    let mut total = 0u64;
    for alpha in mu.subpartitions_of_size(alpha_size) {
        if !lam.contains(&alpha) {
            continue;
        }
        let betas = skew_expand(lam, &alpha);
        for (gamma, c_mu) in skew_expand(mu, &alpha).iter() {
            for (beta, c_lam) in betas.iter() {
                let c_nu = lr_coeff(nu, beta, gamma);
                if c_nu > 0 {
                    add_product(&mut total, &[c_lam, c_mu, c_nu])?;
                }
            }
        }
    }
    Ok(total)
}

/// [F^{λ}, F^{μ} ⊗ F^{ν}] for `GLₙ × GLₘ ⊂ GLₙ₊ₘ`:
/// Σ c^{γ⁺}_{μ⁺ν⁺} c^{γ⁻}_{μ⁻ν⁻} c^{λ⁺}_{γ⁺δ} c^{λ⁻}_{γ⁻δ}.
pub fn direct_sum_gl_sum(
    lam_plus: &Partition,
    lam_minus: &Partition,
    mu_plus: &Partition,
    mu_minus: &Partition,
    nu_plus: &Partition,
    nu_minus: &Partition,
) -> Result<u64> {
    let plus = tensor_expand(mu_plus, nu_plus, Some(lam_plus.len()));
    let minus = tensor_expand(mu_minus, nu_minus, Some(lam_minus.len()));
    let mut total = 0u64;
    for (g_plus, c1) in plus.iter() {
        let deltas = skew_expand(lam_plus, g_plus);
        for (g_minus, c2) in minus.iter() {
            for (delta, c3) in deltas.iter() {
                let c4 = lr_coeff(lam_minus, g_minus, delta);
                if c4 > 0 {
                    add_product(&mut total, &[c1, c2, c3, c4])?;
                }
            }
        }
    }
    Ok(total)
}

/// Σ_{γ,δ} c^γ_{μν} c^λ_{γ η(δ)} with η(δ) = 2δ (orthogonal) or (2δ)′
/// (symplectic). Shared by the direct-sum and polarization rules, which
/// differ only in which even shape goes with which group.
pub fn product_then_even_sum(lam: &Partition, mu: &Partition, nu: &Partition, shape: EvenShape) -> Result<u64> {
    let mut total = 0u64;
    for (gamma, c) in tensor_expand(mu, nu, Some(lam.len())).iter() {
        let inner = even_skew_sum(lam, gamma, shape)?;
        if inner > 0 {
            add_product(&mut total, &[c, inner])?;
        }
    }
    Ok(total)
}

/// [F^{(λ⁺,λ⁻)}, E^μ or V^μ] for the bilinear-form pairs:
/// Σ c^μ_{αβ} c^{λ⁺}_{α η(γ)} c^{λ⁻}_{β η(δ)}.
pub fn bilinear_sum(lam_plus: &Partition, lam_minus: &Partition, mu: &Partition, shape: EvenShape) -> Result<u64> {
    let mut total = 0u64;
    for alpha in mu.subpartitions() {
        if !lam_plus.contains(&alpha) {
            continue;
        }
        let plus_side = even_skew_sum(lam_plus, &alpha, shape)?;
        if plus_side == 0 {
            continue;
        }
        for (beta, c_mu) in skew_expand(mu, &alpha).iter() {
            let minus_side = even_skew_sum(lam_minus, beta, shape)?;
            if minus_side > 0 {
                add_product(&mut total, &[c_mu, plus_side, minus_side])?;
            }
        }
    }
    Ok(total)
}
