//! Irreducible characters of the connected classical groups.
//!
//! Two independent routes:
//!
//! * the Weyl quotient, A_{λ+ρ} / A_ρ with exact Laurent division, used when
//!   the Weyl group is small enough to enumerate;
//! * Freudenthal's recursion for dominant multiplicities followed by orbit
//!   expansion, used above that size.
//!
//! Tests check that both agree wherever the quotient is affordable.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;

use super::group::GroupSpec;
use super::laurent::{LaurentPoly, Weight};
use crate::error::{Error, Result};

/// Largest Weyl group the quotient route will enumerate.
pub const QUOTIENT_WEYL_LIMIT: u128 = 1_000;

/// Dominant weight ↦ weight multiplicity.
pub type DominantMultiplicities = BTreeMap<Weight, u64>;

type Key = (GroupSpec, Weight);

fn multiplicity_cache() -> &'static RwLock<HashMap<Key, Arc<DominantMultiplicities>>> {
    static CACHE: OnceLock<RwLock<HashMap<Key, Arc<DominantMultiplicities>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn character_cache() -> &'static RwLock<HashMap<Key, Arc<LaurentPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<Key, Arc<LaurentPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The character of the irreducible representation of `g` with highest
/// weight `weight`.
pub fn irreducible_character(g: GroupSpec, weight: &[i32]) -> Result<LaurentPoly> {
    Ok((*cached_character(g, weight)?).clone())
}

pub(crate) fn cached_character(g: GroupSpec, weight: &[i32]) -> Result<Arc<LaurentPoly>> {
    g.check_dominant(weight)?;
    let key = (g, weight.to_vec());
    if let Some(chi) = character_cache().read().unwrap().get(&key) {
        return Ok(Arc::clone(chi));
    }
    let chi = if g.weyl_order() <= QUOTIENT_WEYL_LIMIT {
        weyl_quotient_character(g, weight)?
    } else {
        orbit_character(g, weight)?
    };
    let chi = Arc::new(chi);
    character_cache().write().unwrap().insert(key, Arc::clone(&chi));
    Ok(chi)
}

/// Σ_w sgn(w) x^{w(λ+ρ)} divided by x^ρ Π_{α>0} (1 − x^{−α}).
///
/// Runs in doubled coordinates so ρ is integral for every family; the
/// quotient is halved back at the end.
pub fn weyl_quotient_character(g: GroupSpec, weight: &[i32]) -> Result<LaurentPoly> {
    g.check_dominant(weight)?;
    let k = g.rank();
    let rho2 = g.rho_doubled();
    let shifted: Weight = weight.iter().zip(&rho2).map(|(w, r)| 2 * w + r).collect();
    let mut numerator = LaurentPoly::zero(k);
    g.for_each_weyl_image(&shifted, |sign, img| numerator.add_term(img, sign));
    let neg_rho: Weight = rho2.iter().map(|r| -r).collect();
    let mut q = numerator.shift(&neg_rho);
    for root in g.positive_roots() {
        let beta: Weight = root.iter().map(|x| -2 * x).collect();
        q = q.div_one_minus_monomial(&beta)?;
    }
    let mut out = LaurentPoly::zero(k);
    for (e, c) in q.terms() {
        if e.iter().any(|x| x % 2 != 0) {
            return Err(Error::InexactDivision(format!("odd exponent {e:?} in quotient")));
        }
        out.add_term(e.iter().map(|x| x / 2).collect(), c);
    }
    Ok(out)
}

/// Character assembled from Freudenthal multiplicities and Weyl orbits.
pub fn orbit_character(g: GroupSpec, weight: &[i32]) -> Result<LaurentPoly> {
    let mults = dominant_multiplicities(g, weight)?;
    let mut out = LaurentPoly::zero(g.rank());
    for (mu, &m) in mults.iter() {
        for img in g.orbit(mu) {
            out.add_term(img, m as i64);
        }
    }
    Ok(out)
}

/// Multiplicities of the dominant weights of the irreducible with highest
/// weight λ, by Freudenthal's formula:
///
/// (|λ+ρ|² − |μ+ρ|²)·m(μ) = 2 Σ_{α>0} Σ_{j≥1} m(μ+jα)·(μ+jα, α).
pub fn dominant_multiplicities(g: GroupSpec, weight: &[i32]) -> Result<Arc<DominantMultiplicities>> {
    let key = (g, weight.to_vec());
    if let Some(m) = multiplicity_cache().read().unwrap().get(&key) {
        return Ok(Arc::clone(m));
    }
    let m = Arc::new(freudenthal(g, weight)?);
    multiplicity_cache().write().unwrap().insert(key, Arc::clone(&m));
    Ok(m)
}

fn freudenthal(g: GroupSpec, weight: &[i32]) -> Result<DominantMultiplicities> {
    let dominant = g.dominant_weights_below(weight)?;
    let rho2 = g.rho_doubled();
    let roots = g.positive_roots();
    // |2(μ+ρ)|², so everything stays integral
    let norm = |mu: &[i32]| -> i64 {
        mu.iter()
            .zip(&rho2)
            .map(|(m, r)| {
                let v = (2 * m + r) as i64;
                v * v
            })
            .sum()
    };
    let top = norm(weight);
    let mut order: Vec<&Weight> = dominant.iter().collect();
    order.sort_by_key(|mu| std::cmp::Reverse(norm(mu)));

    let mut mult: DominantMultiplicities = BTreeMap::new();
    mult.insert(weight.to_vec(), 1);
    for mu in order {
        if mu.as_slice() == weight {
            continue;
        }
        // 4·2·Σ m(μ+jα)(μ+jα, α) = Σ m · 2·(2(μ+jα), 2α)
        let mut rhs: i64 = 0;
        for alpha in &roots {
            let mut j = 1;
            loop {
                let shifted: Weight = mu.iter().zip(alpha).map(|(m, a)| m + j * a).collect();
                let dom = g.dominant_rep(&shifted);
                let Some(&m) = mult.get(&dom) else {
                    if dominant.contains(&dom) {
                        return Err(Error::InexactDivision(format!(
                            "Freudenthal order visited {mu:?} before {dom:?}"
                        )));
                    }
                    break;
                };
                let ip: i64 = shifted.iter().zip(alpha).map(|(s, a)| (4 * s * a) as i64).sum();
                rhs += 2 * m as i64 * ip;
                j += 1;
            }
        }
        let lhs = top - norm(mu);
        if lhs <= 0 || rhs % lhs != 0 || rhs < 0 {
            return Err(Error::InexactDivision(format!(
                "Freudenthal step at {mu:?} for {g}: {rhs}/{lhs}"
            )));
        }
        mult.insert(mu.clone(), (rhs / lhs) as u64);
    }
    mult.retain(|_, m| *m > 0);
    Ok(mult)
}

/// Weyl dimension formula Π_{α>0} (λ+ρ, α)/(ρ, α), reduced factor by factor.
pub fn weyl_dimension(g: GroupSpec, weight: &[i32]) -> Result<u128> {
    g.check_dominant(weight)?;
    let rho2 = g.rho_doubled();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for alpha in g.positive_roots() {
        let top: i64 = weight
            .iter()
            .zip(&rho2)
            .zip(&alpha)
            .map(|((w, r), a)| ((2 * w + r) * a) as i64)
            .sum();
        let bottom: i64 = rho2.iter().zip(&alpha).map(|(r, a)| (r * a) as i64).sum();
        debug_assert!(top > 0 && bottom > 0);
        num = num.checked_mul(top as u128).ok_or(Error::Overflow("Weyl dimension"))?;
        den = den.checked_mul(bottom as u128).ok_or(Error::Overflow("Weyl dimension"))?;
        let g = num.gcd(&den);
        num /= g;
        den /= g;
    }
    if den != 1 {
        return Err(Error::InexactDivision(format!("Weyl dimension {num}/{den}")));
    }
    Ok(num)
}

#[cfg(test)]
pub(crate) mod tests_support {
    use super::*;

    /// Dominant weights with Σ|w_i| ≤ size, including negative GL entries
    /// and both signs for the last SO(2k) entry.
    pub fn dominant_weights(g: GroupSpec, size: i32) -> Vec<Weight> {
        let k = g.rank();
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(g: GroupSpec, k: usize, budget: i32, current: &mut Weight, out: &mut Vec<Weight>) {
            if current.len() == k {
                if g.is_dominant(current) {
                    out.push(current.clone());
                }
                return;
            }
            for v in -budget..=budget {
                current.push(v);
                rec(g, k, budget - v.abs(), current, out);
                current.pop();
            }
        }
        rec(g, k, size, &mut current, &mut out);
        out
    }
}
