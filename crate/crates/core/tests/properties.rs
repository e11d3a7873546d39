use branchkit::oracle::{dim_irrep, irreducible_character, GroupSpec};
use branchkit::verify::{big_labels, conservation_ranks, dimension_conservation};
use branchkit::{
    branch_decompose_run, lr_coeff, multiplicity_unchecked, skew_expand, tensor_expand, BranchingQuery, Family,
    GlLabel, Label, Pair, Partition, Ranks, RepLabel,
};
use proptest::prelude::*;
use rayon::prelude::*;

fn partition(max_len: usize, max_part: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max_part, 0..=max_len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn gl_dim(n: usize, p: &Partition) -> u128 {
    if p.len() > n {
        return 0;
    }
    let rep = RepLabel::new(Family::Gl, n, Label::Gl(GlLabel::polynomial(p.clone()))).unwrap();
    dim_irrep(&rep).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_is_an_involution(p in partition(8, 8)) {
        prop_assert_eq!(p.conjugate().conjugate(), p.clone());
        prop_assert_eq!(p.conjugate().size(), p.size());
    }

    #[test]
    fn lr_symmetries_beyond_the_exhaustive_range(mu in partition(4, 4), nu in partition(4, 4)) {
        for (lam, c) in tensor_expand(&mu, &nu, None).iter() {
            prop_assert_eq!(lr_coeff(lam, &nu, &mu), c);
            prop_assert_eq!(lr_coeff(&lam.conjugate(), &mu.conjugate(), &nu.conjugate()), c);
            prop_assert_eq!(skew_expand(lam, &mu).get(&nu), c);
        }
    }

    #[test]
    fn tensor_dimensions_add_up(mu in partition(3, 3), nu in partition(3, 3), n in 1usize..=4) {
        let total: u128 = tensor_expand(&mu, &nu, Some(n)).iter().map(|(l, c)| u128::from(c) * gl_dim(n, l)).sum();
        prop_assert_eq!(total, gl_dim(n, &mu) * gl_dim(n, &nu));
    }

    #[test]
    fn characters_evaluate_to_dimensions(w in prop::collection::vec(0i32..=3, 2)) {
        let mut w = w;
        w.sort_unstable_by(|a, b| b.cmp(a));
        let g = GroupSpec::sp(2);
        let chi = irreducible_character(g, &w).unwrap();
        let p = Partition::new(w.iter().map(|&x| x as usize).collect()).unwrap();
        let rep = RepLabel::new(Family::Sp, 2, Label::Part(p)).unwrap();
        prop_assert_eq!(chi.eval_at_ones() as u128, dim_irrep(&rep).unwrap());
    }
}

#[test]
fn dimension_conservation_up_to_size_five() {
    let mut jobs = Vec::new();
    for pair in Pair::ALL {
        // each diagonal tensor factor up to 5 would mean total size 10; keep
        // the G side at total size 5
        for big in big_labels(pair, 5) {
            if big.iter().map(Label::size).sum::<usize>() <= 5 {
                jobs.push((pair, big));
            }
        }
    }
    let failures: Vec<String> = jobs
        .par_iter()
        .filter_map(|(pair, big)| {
            let ranks = conservation_ranks(*pair, big);
            match dimension_conservation(*pair, ranks, big) {
                Ok((a, b)) if a == b => None,
                other => Some(format!("{pair} {ranks:?} {big:?}: {other:?}")),
            }
        })
        .collect();
    assert!(failures.is_empty(), "{} failures, first {}", failures.len(), failures[0]);
}

#[test]
fn unchecked_decomposition_flags_out_of_range_entries() {
    let mu = Label::Part(Partition::new(vec![1]).unwrap());
    let checked = branch_decompose_run(Pair::ODiag, Ranks::single(3), vec![mu.clone(), mu.clone()], None, true);
    assert!(checked.is_err());
    let run = branch_decompose_run(Pair::ODiag, Ranks::single(3), vec![mu.clone(), mu.clone()], None, false).unwrap();
    assert!(run.out_of_range > 0);
    for (small, m) in &run.entries {
        let q = BranchingQuery::new(Pair::ODiag, Ranks::single(3), vec![mu.clone(), mu.clone()], small.clone()).unwrap();
        assert_eq!(multiplicity_unchecked(&q).unwrap(), *m);
    }
    let run = branch_decompose_run(Pair::ODiag, Ranks::single(4), vec![mu.clone(), mu], None, true).unwrap();
    assert_eq!(run.out_of_range, 0);
    assert_eq!(run.entries.len(), 3);
}
