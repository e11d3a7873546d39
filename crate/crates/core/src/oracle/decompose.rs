use std::collections::{BTreeMap, HashMap};

use super::character::dominant_multiplicities;
use super::group::GroupSpec;
use super::laurent::{LaurentPoly, Weight};
use crate::error::{Error, Result};

/// Highest weight ↦ multiplicity.
pub type WeightDecomposition = BTreeMap<Weight, u64>;

/// Splits a concatenated weight into per-factor blocks.
pub(crate) fn split<'a>(w: &'a [i32], factors: &[GroupSpec]) -> Vec<&'a [i32]> {
    let mut out = Vec::with_capacity(factors.len());
    let mut at = 0;
    for g in factors {
        out.push(&w[at..at + g.rank()]);
        at += g.rank();
    }
    out
}

pub(crate) fn is_dominant_product(w: &[i32], factors: &[GroupSpec]) -> bool {
    split(w, factors).iter().zip(factors).all(|(b, g)| g.is_dominant(b))
}

fn dominant_rep_product(w: &[i32], factors: &[GroupSpec]) -> Weight {
    split(w, factors)
        .iter()
        .zip(factors)
        .flat_map(|(b, g)| g.dominant_rep(b))
        .collect()
}

/// Writes a character of `g` as a sum of irreducible characters.
pub fn decompose_character(chi: &LaurentPoly, g: GroupSpec) -> Result<WeightDecomposition> {
    decompose_product_character(chi, &[g])
}

/// The same for a product group; weights are concatenated factor weights.
pub fn decompose_product_character(chi: &LaurentPoly, factors: &[GroupSpec]) -> Result<WeightDecomposition> {
    let rank: usize = factors.iter().map(GroupSpec::rank).sum();
    if chi.nvars() != rank {
        return Err(Error::NotACharacter(format!(
            "{} variables for a torus of rank {rank}",
            chi.nvars()
        )));
    }
    let mut dominant = BTreeMap::new();
    let mut seen: HashMap<Weight, u128> = HashMap::new();
    for (e, c) in chi.terms() {
        let rep = dominant_rep_product(e, factors);
        if chi.coeff(&rep) != c {
            return Err(Error::NotACharacter(format!(
                "coefficient of {e:?} is {c} but its dominant image {rep:?} has {}",
                chi.coeff(&rep)
            )));
        }
        *seen.entry(rep.clone()).or_insert(0) += 1;
        if &rep == e {
            dominant.insert(e.clone(), c);
        }
    }
    for (rep, count) in seen {
        let orbit: u128 = split(&rep, factors).iter().zip(factors).map(|(b, g)| g.orbit_size(b)).product();
        if count != orbit {
            return Err(Error::NotACharacter(format!(
                "only {count} of the {orbit} Weyl images of {rep:?} occur"
            )));
        }
    }
    decompose_dominant(dominant, factors)
}

/// Greedy highest-weight subtraction on the dominant part of a character.
///
/// The lexicographically greatest surviving weight is always a highest
/// weight: every positive root has its first nonzero coordinate positive,
/// so lex order refines the dominance order.
pub(crate) fn decompose_dominant(
    mut residue: BTreeMap<Weight, i64>,
    factors: &[GroupSpec],
) -> Result<WeightDecomposition> {
    let mut out = WeightDecomposition::new();
    while let Some((top, &c)) = residue.last_key_value() {
        let top = top.clone();
        if c < 0 {
            return Err(Error::NotACharacter(format!("negative multiplicity {c} at {top:?}")));
        }
        let blocks = split(&top, factors);
        let mut part: Vec<(Weight, u64)> = vec![(Vec::new(), 1)];
        for (b, g) in blocks.iter().zip(factors) {
            let mults = dominant_multiplicities(*g, b)?;
            part = part
                .iter()
                .flat_map(|(prefix, m)| {
                    mults.iter().map(move |(w, k)| {
                        let mut v = prefix.clone();
                        v.extend_from_slice(w);
                        (v, m * k)
                    })
                })
                .collect();
        }
        for (w, m) in part {
            let v = residue.get(&w).copied().unwrap_or(0) - c * m as i64;
            if v == 0 {
                residue.remove(&w);
            } else {
                residue.insert(w, v);
            }
        }
        out.insert(top, c as u64);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::oracle::character::irreducible_character;

    fn x(e: &[i32]) -> LaurentPoly {
        LaurentPoly::monomial(e.to_vec(), 1)
    }

    #[test]
    fn documented_decompositions() {
        let mut s1 = x(&[1, 0]);
        s1.add_scaled(&x(&[0, 1]), 1);
        let d = decompose_character(&s1.mul(&s1), GroupSpec::gl(2)).unwrap();
        assert_eq!(d, BTreeMap::from([(vec![2, 0], 1), (vec![1, 1], 1)]));

        let v = irreducible_character(GroupSpec::sp(2), &[1, 0]).unwrap();
        let d = decompose_character(&v.mul(&v), GroupSpec::sp(2)).unwrap();
        assert_eq!(d, BTreeMap::from([(vec![2, 0], 1), (vec![1, 1], 1), (vec![0, 0], 1)]));

        assert!(decompose_character(&LaurentPoly::zero(3), GroupSpec::gl(3)).unwrap().is_empty());
    }

    #[test]
    fn rejects_non_characters() {
        // not symmetric
        assert!(matches!(
            decompose_character(&x(&[1, 0]), GroupSpec::gl(2)),
            Err(Error::NotACharacter(_))
        ));
        // symmetric but a virtual character: s(1,1) − s(2)... written out
        let mut p = x(&[1, 1]);
        p.add_scaled(&x(&[2, 0]), -1);
        p.add_scaled(&x(&[0, 2]), -1);
        assert!(matches!(
            decompose_character(&p, GroupSpec::gl(2)),
            Err(Error::NotACharacter(_))
        ));
    }

    #[test]
    fn irreducibles_decompose_to_point_masses() {
        for g in [GroupSpec::gl(3), GroupSpec::sp(3), GroupSpec::so(7), GroupSpec::so(6), GroupSpec::so(4)] {
            for w in crate::oracle::character::tests_support::dominant_weights(g, 4) {
                let chi = irreducible_character(g, &w).unwrap();
                let d = decompose_character(&chi, g).unwrap();
                assert_eq!(d, BTreeMap::from([(w.clone(), 1)]), "{g} {w:?}");
            }
        }
    }

    #[test]
    fn random_combinations_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in [
            GroupSpec::gl(2),
            GroupSpec::gl(3),
            GroupSpec::sp(2),
            GroupSpec::sp(3),
            GroupSpec::so(5),
            GroupSpec::so(6),
            GroupSpec::so(7),
        ] {
            let pool = crate::oracle::character::tests_support::dominant_weights(g, 3);
            for _ in 0..20 {
                let mut expect = WeightDecomposition::new();
                let mut chi = LaurentPoly::zero(g.rank());
                for w in &pool {
                    if rng.gen_bool(0.3) {
                        let m = rng.gen_range(1..=3);
                        expect.insert(w.clone(), m);
                        chi.add_scaled(&irreducible_character(g, w).unwrap(), m as i64);
                    }
                }
                assert_eq!(decompose_character(&chi, g).unwrap(), expect, "{g}");
            }
        }
    }

    #[test]
    fn product_groups() {
        let a = irreducible_character(GroupSpec::gl(2), &[1, 0]).unwrap();
        let b = irreducible_character(GroupSpec::sp(1), &[2]).unwrap();
        let chi = a.outer(&b);
        let d = decompose_product_character(&chi, &[GroupSpec::gl(2), GroupSpec::sp(1)]).unwrap();
        assert_eq!(d, BTreeMap::from([(vec![1, 0, 2], 1)]));
    }
}
