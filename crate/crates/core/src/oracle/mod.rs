//! Brute-force branching multiplicities from characters on a maximal torus.
//!
//! Nothing here touches LR coefficients. A query is answered by computing
//! the character of the `G` representation, substituting `H`'s torus, and
//! peeling off irreducible `H` characters by highest weight.
//!
//! Orthogonal groups are handled through `SOₙ`. This is exact only in a
//! safe regime: every O label must have ℓ(λ) < n/2, and the pair of labels
//! {λ, λ̃} (λ̃ swaps the first column length ℓ for n − ℓ) that share one
//! `SOₙ` restriction must not both be able to occur. The second condition
//! is checked by degree: a constituent of a tensor-degree-d representation
//! has size at most d, and |λ̃| = |λ| + n − 2ℓ(λ).

mod character;
mod decompose;
mod duality;
mod group;
mod laurent;
mod restrict;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

pub use character::{
    dominant_multiplicities, irreducible_character, orbit_character, weyl_dimension, weyl_quotient_character,
    DominantMultiplicities, QUOTIENT_WEYL_LIMIT,
};
pub use decompose::{decompose_character, decompose_product_character, WeightDecomposition};
pub use duality::{duality_dim_check, duality_sides, DualityKind};
pub use group::{GroupFamily, GroupSpec};
pub use laurent::{LaurentPoly, Weight};
pub use restrict::{pair_groups, restrict_character, slot_group};

use crate::branching::{BranchingQuery, Family, Label, Pair, PairKind, Ranks, RepLabel};
use crate::error::{Error, Result};
use character::cached_character;
use decompose::{decompose_dominant, is_dominant_product};

/// The connected group and highest weight that stand for a label.
pub fn label_weight(label: &RepLabel) -> Result<(GroupSpec, Weight)> {
    let g = slot_group(label.family, label.rank);
    let pad = |p: &crate::partition::Partition| -> Weight {
        p.padded(g.rank()).into_iter().map(|x| x as i32).collect()
    };
    let w = match (&label.family, &label.data) {
        (Family::Gl, Label::Gl(l)) => l.weight(label.rank),
        (Family::Sp, Label::Part(p)) => pad(p),
        (Family::O, Label::Part(p)) => {
            if 2 * p.len() >= label.rank {
                return Err(Error::OutOfSafeRegime(format!(
                    "O{} label {p}: need ℓ(λ) < n/2",
                    label.rank
                )));
            }
            pad(p)
        }
        _ => return Err(Error::InvalidLabel(format!("{} for {}", label.data, label.family))),
    };
    g.check_dominant(&w)?;
    Ok((g, w))
}

/// Dimension of the irreducible named by `label`, by the Weyl dimension
/// formula on GLₙ, Sp₂ₙ or SOₙ.
pub fn dim_irrep(label: &RepLabel) -> Result<u128> {
    label.validate()?;
    let (g, w) = label_weight(label)?;
    weyl_dimension(g, &w)
}

fn partition_of(l: &RepLabel) -> &crate::partition::Partition {
    l.data.as_partition().expect("O label")
}

/// Checks that SO characters give the O multiplicity for this query.
pub fn check_oracle_safe(q: &BranchingQuery) -> Result<()> {
    for label in q.big.iter().chain(&q.small) {
        label_weight(label)?;
    }
    let collision = |what: String| Err(Error::OutOfSafeRegime(format!("{}: {what}", q.pair)));
    let n = q.ranks.n as i64;
    let size = |l: &RepLabel| l.data.size() as i64;
    match q.pair {
        Pair::ODiag => {
            let lam = partition_of(&q.small[0]);
            let partner = n - 2 * lam.len() as i64 + lam.size() as i64;
            let degree = size(&q.big[0]) + size(&q.big[1]);
            if partner <= degree {
                return collision(format!("associate of {lam} has size {partner} ≤ {degree}"));
            }
        }
        Pair::OSum => {
            let m = q.ranks.m.unwrap_or(0) as i64;
            let (mu, nu) = (partition_of(&q.small[0]), partition_of(&q.small[1]));
            let degree = size(&q.big[0]);
            let mu_partner = n - 2 * mu.len() as i64 + mu.size() as i64 + nu.size() as i64;
            let nu_partner = m - 2 * nu.len() as i64 + nu.size() as i64 + mu.size() as i64;
            if mu_partner <= degree || nu_partner <= degree {
                return collision(format!("associate pair has size {} ≤ {degree}", mu_partner.min(nu_partner)));
            }
        }
        Pair::OInGl => {
            let mu = partition_of(&q.small[0]);
            let partner = n - 2 * mu.len() as i64 + mu.size() as i64;
            let degree = size(&q.big[0]);
            if partner <= degree {
                return collision(format!("associate of {mu} has size {partner} ≤ {degree}"));
            }
        }
        _ => {}
    }
    Ok(())
}

type DecompKey = (Pair, Ranks, Vec<RepLabel>);

fn decomposition_cache() -> &'static RwLock<HashMap<DecompKey, Arc<WeightDecomposition>>> {
    static CACHE: OnceLock<RwLock<HashMap<DecompKey, Arc<WeightDecomposition>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Decomposition of the restriction of the `G` representation `big` into
/// irreducible `H` characters, keyed by concatenated `H` highest weights.
pub fn oracle_decomposition(pair: Pair, ranks: Ranks, big: &[RepLabel]) -> Result<Arc<WeightDecomposition>> {
    let key = (pair, ranks, big.to_vec());
    if let Some(d) = decomposition_cache().read().unwrap().get(&key) {
        return Ok(Arc::clone(d));
    }
    let (_, h) = pair_groups(pair, ranks);
    let weights: Vec<(GroupSpec, Weight)> = big.iter().map(label_weight).collect::<Result<_>>()?;
    let mut residue: BTreeMap<Weight, i64> = BTreeMap::new();
    if pair.kind() == PairKind::Diagonal {
        // Only the dominant coefficients of χ_μ·χ_ν are needed, and each
        // dominant weight of the product lies below μ + ν.
        let g = h[0];
        let (mu, nu) = (&weights[0].1, &weights[1].1);
        let chi_mu = cached_character(g, mu)?;
        let chi_nu = cached_character(g, nu)?;
        let top: Weight = mu.iter().zip(nu).map(|(a, b)| a + b).collect();
        for kappa in g.dominant_weights_below(&top)? {
            let mut c = 0i64;
            for (t, a) in chi_mu.terms() {
                let rest: Weight = kappa.iter().zip(t).map(|(k, t)| k - t).collect();
                c += a * chi_nu.coeff(&rest);
            }
            if c != 0 {
                residue.insert(kappa, c);
            }
        }
    } else {
        let (g, w) = &weights[0];
        let chi = cached_character(*g, w)?;
        let map = restrict::torus_map(pair, ranks)?;
        for (e, c) in chi.terms() {
            let image = map(e);
            if is_dominant_product(&image, &h) {
                *residue.entry(image).or_insert(0) += c;
            }
        }
        residue.retain(|_, c| *c != 0);
    }
    let d = Arc::new(decompose_dominant(residue, &h)?);
    decomposition_cache().write().unwrap().insert(key, Arc::clone(&d));
    Ok(d)
}

/// The multiplicity of `q.small` in `q.big` restricted to `H`, computed
/// from characters alone.
pub fn oracle_multiplicity(q: &BranchingQuery) -> Result<u64> {
    check_oracle_safe(q)?;
    let d = oracle_decomposition(q.pair, q.ranks, &q.big)?;
    let mut target = Weight::new();
    for label in &q.small {
        target.extend(label_weight(label)?.1);
    }
    Ok(d.get(&target).copied().unwrap_or(0))
}
