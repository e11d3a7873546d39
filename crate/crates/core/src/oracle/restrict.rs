use super::group::GroupSpec;
use super::laurent::{LaurentPoly, Weight};
use crate::branching::{Family, Pair, PairKind, Ranks};
use crate::error::{Error, Result};

/// The connected group standing in for a (family, rank) slot: GLₙ, Sp₂ₙ,
/// or SOₙ for Oₙ.
pub fn slot_group(family: Family, rank: usize) -> GroupSpec {
    match family {
        Family::Gl => GroupSpec::gl(rank),
        Family::Sp => GroupSpec::sp(rank),
        Family::O => GroupSpec::so(rank),
    }
}

/// Factor groups of G and of H for a pair at the given ranks.
pub fn pair_groups(pair: Pair, ranks: Ranks) -> (Vec<GroupSpec>, Vec<GroupSpec>) {
    let (g, h) = pair.slots(ranks);
    let conv = |slots: Vec<(Family, usize)>| slots.into_iter().map(|(f, r)| slot_group(f, r)).collect();
    (conv(g), conv(h))
}

/// Maps an exponent vector on G's torus to one on H's torus.
pub(crate) fn torus_map(pair: Pair, ranks: Ranks) -> Result<Box<dyn Fn(&[i32]) -> Weight + Send + Sync>> {
    let (g, h) = pair_groups(pair, ranks);
    let h_rank: usize = h.iter().map(GroupSpec::rank).sum();
    Ok(match pair.kind() {
        PairKind::Diagonal => {
            let k = h_rank;
            Box::new(move |e: &[i32]| (0..k).map(|i| e[i] + e[k + i]).collect())
        }
        PairKind::DirectSum | PairKind::Polarization => {
            // a leftover coordinate (SO(odd) × SO(odd)) is set to 1
            Box::new(move |e: &[i32]| e[..h_rank].to_vec())
        }
        PairKind::Bilinear => {
            let n = g[0].rank();
            Box::new(move |e: &[i32]| (0..h_rank).map(|i| e[i] - e[n - 1 - i]).collect())
        }
    })
}

/// Restricts a character of G to H by substituting H's torus into G's.
pub fn restrict_character(chi: &LaurentPoly, pair: Pair, ranks: Ranks) -> Result<LaurentPoly> {
    let (g, h) = pair_groups(pair, ranks);
    let g_rank: usize = g.iter().map(GroupSpec::rank).sum();
    let h_rank: usize = h.iter().map(GroupSpec::rank).sum();
    if chi.nvars() != g_rank {
        return Err(Error::InvalidQuery(format!(
            "{pair}: character has {} variables, G has torus rank {g_rank}",
            chi.nvars()
        )));
    }
    let map = torus_map(pair, ranks)?;
    Ok(chi.map_exponents(h_rank, |e| map(e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::character::irreducible_character;

    fn x(e: &[i32]) -> LaurentPoly {
        LaurentPoly::monomial(e.to_vec(), 1)
    }

    fn sum(terms: &[&[i32]]) -> LaurentPoly {
        let mut p = LaurentPoly::zero(terms[0].len());
        for t in terms {
            p.add_term(t.to_vec(), 1);
        }
        p
    }

    #[test]
    fn documented_substitutions() {
        let s1 = sum(&[&[1, 0], &[0, 1]]);
        let chi = s1.outer(&s1);
        let r = restrict_character(&chi, Pair::GlDiag, Ranks::single(2)).unwrap();
        let mut expect = x(&[2, 0]);
        expect.add_term(vec![1, 1], 2);
        expect.add_term(vec![0, 2], 1);
        assert_eq!(r, expect);

        let r = restrict_character(&s1, Pair::OInGl, Ranks::single(2)).unwrap();
        assert_eq!(r, sum(&[&[1], &[-1]]));

        let v = irreducible_character(GroupSpec::sp(2), &[1, 0]).unwrap();
        let r = restrict_character(&v, Pair::GlInSp, Ranks::single(2)).unwrap();
        assert_eq!(r, v);
    }

    #[test]
    fn standard_representations_restrict_as_expected() {
        // C^{2n} → Cⁿ ⊕ (Cⁿ)* for Sp₂ₙ ⊂ GL₂ₙ
        let std = irreducible_character(GroupSpec::gl(4), &[1, 0, 0, 0]).unwrap();
        let r = restrict_character(&std, Pair::SpInGl, Ranks::single(2)).unwrap();
        assert_eq!(r, irreducible_character(GroupSpec::sp(2), &[1, 0]).unwrap());
        // C⁵ → the standard SO₅ character
        let std = irreducible_character(GroupSpec::gl(5), &[1, 0, 0, 0, 0]).unwrap();
        let r = restrict_character(&std, Pair::OInGl, Ranks::single(5)).unwrap();
        assert_eq!(r, irreducible_character(GroupSpec::so(5), &[1, 0]).unwrap());
        // C^{3+3} → C³ ⊕ C³ for O₃ × O₃ ⊂ O₆: the SO₆ torus has one extra coordinate
        let std = irreducible_character(GroupSpec::so(6), &[1, 0, 0]).unwrap();
        let r = restrict_character(&std, Pair::OSum, Ranks::pair(3, 3)).unwrap();
        let mut expect = irreducible_character(GroupSpec::so(3), &[1]).unwrap().outer(&LaurentPoly::one(1));
        expect.add_scaled(&LaurentPoly::one(1).outer(&irreducible_character(GroupSpec::so(3), &[1]).unwrap()), 1);
        assert_eq!(r, expect);
    }

    #[test]
    fn wrong_torus_is_rejected() {
        assert!(restrict_character(&x(&[1, 0, 0]), Pair::GlDiag, Ranks::single(2)).is_err());
    }
}
