//! Formula-versus-oracle sweeps and the other exhaustive checks.
//!
//! Each grid case gets the smallest ranks at which the query is both inside
//! the stable range and safe for the character oracle. Cases with no such
//! ranks (for instance `GL` diagonal queries whose λ is too long for the
//! lengths of μ and ν) are counted as skipped.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::branching::{
    branch_decompose, minimal_six_fold_params, multiplicity, validate_six_fold, validate_stable_range,
    BranchingQuery, Family, Label, Pair, Ranks, RepLabel, SixFoldParams,
};
use crate::error::Result;
use crate::oracle::{check_oracle_safe, dim_irrep, duality_sides, oracle_multiplicity, DualityKind};
use crate::partition::{GlLabel, Partition};

/// Largest rank tried when looking for a usable rank.
const RANK_CAP: usize = 48;

#[derive(Clone, Debug)]
pub struct Mismatch {
    pub query: BranchingQuery,
    pub formula: u64,
    pub oracle: u64,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = &self.query;
        let labels = |v: &[RepLabel]| v.iter().map(|l| l.data.to_string()).collect::<Vec<_>>().join(" ⊗ ");
        write!(
            f,
            "{} n={}{} G=[{}] H=[{}]: formula {} vs oracle {}",
            q.pair,
            q.ranks.n,
            q.ranks.m.map(|m| format!(" m={m}")).unwrap_or_default(),
            labels(&q.big),
            labels(&q.small),
            self.formula,
            self.oracle
        )
    }
}

#[derive(Clone, Debug)]
pub struct GridReport {
    pub pair: Pair,
    pub max_size: usize,
    /// Cases compared.
    pub cases: usize,
    /// Cases with a nonzero multiplicity.
    pub nonzero: usize,
    /// Label combinations with no usable ranks.
    pub skipped: usize,
    pub mismatches: Vec<Mismatch>,
}

impl GridReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn summary_line(&self) -> String {
        format!("{}: {} cases, {} mismatches", self.pair, self.cases, self.mismatches.len())
    }
}

fn labels_for(family: Family, max_size: usize) -> Vec<Label> {
    match family {
        Family::Gl => GlLabel::all_up_to(max_size).into_iter().map(Label::Gl).collect(),
        _ => Partition::all_up_to(max_size).into_iter().map(Label::Part).collect(),
    }
}

/// Every (G labels, H labels) combination with each label of size at most
/// `max_size`.
pub fn grid_labels(pair: Pair, max_size: usize) -> Vec<(Vec<Label>, Vec<Label>)> {
    let (g, h) = pair.slots(Ranks::pair(1, 1));
    let big_sets: Vec<Vec<Label>> = g.iter().map(|s| labels_for(s.0, max_size)).collect();
    let small_sets: Vec<Vec<Label>> = h.iter().map(|s| labels_for(s.0, max_size)).collect();
    let bigs = label_product(&big_sets);
    let smalls = label_product(&small_sets);
    let mut out = Vec::with_capacity(bigs.len() * smalls.len());
    for b in &bigs {
        for s in &smalls {
            out.push((b.clone(), s.clone()));
        }
    }
    out
}

fn usable(pair: Pair, ranks: Ranks, big: &[Label], small: &[Label]) -> Option<BranchingQuery> {
    let q = BranchingQuery::new(pair, ranks, big.to_vec(), small.to_vec()).ok()?;
    (validate_stable_range(&q).is_ok() && check_oracle_safe(&q).is_ok()).then_some(q)
}

/// The query at the smallest ranks that are in the stable range and safe
/// for the oracle. For the direct-sum pairs the conditions on n and on m
/// are independent, so the componentwise minimum exists and is found by
/// shrinking each rank in turn from the smallest usable n = m.
pub fn minimal_query(pair: Pair, big: &[Label], small: &[Label]) -> Option<BranchingQuery> {
    if !pair.takes_second_rank() {
        return (1..=RANK_CAP).find_map(|n| usable(pair, Ranks::single(n), big, small));
    }
    let t = (1..=RANK_CAP).find(|&t| usable(pair, Ranks::pair(t, t), big, small).is_some())?;
    let n = (1..=t).find(|&n| usable(pair, Ranks::pair(n, t), big, small).is_some())?;
    let m = (1..=t).find(|&m| usable(pair, Ranks::pair(n, m), big, small).is_some())?;
    usable(pair, Ranks::pair(n, m), big, small)
}

fn compare(queries: Vec<BranchingQuery>) -> Result<(usize, Vec<Mismatch>)> {
    let results: Vec<Result<(u64, Option<Mismatch>)>> = queries
        .into_par_iter()
        .map(|q| {
            let formula = multiplicity(&q)?;
            let oracle = oracle_multiplicity(&q)?;
            let bad = (formula != oracle).then(|| Mismatch { query: q, formula, oracle });
            Ok((formula, bad))
        })
        .collect();
    let mut nonzero = 0;
    let mut mismatches = Vec::new();
    for r in results {
        let (formula, bad) = r?;
        if formula > 0 {
            nonzero += 1;
        }
        mismatches.extend(bad);
    }
    mismatches.sort_by(|a, b| {
        (a.query.ranks, &a.query.big, &a.query.small).cmp(&(b.query.ranks, &b.query.big, &b.query.small))
    });
    Ok((nonzero, mismatches))
}

fn run_grid(pair: Pair, max_size: usize, cases: Vec<(Vec<Label>, Vec<Label>)>) -> Result<GridReport> {
    let total = cases.len();
    let queries: Vec<BranchingQuery> = cases
        .into_par_iter()
        .filter_map(|(big, small)| minimal_query(pair, &big, &small))
        .collect();
    let compared = queries.len();
    let (nonzero, mismatches) = compare(queries)?;
    Ok(GridReport {
        pair,
        max_size,
        cases: compared,
        nonzero,
        skipped: total - compared,
        mismatches,
    })
}

/// Formula against oracle on the full grid for one pair.
pub fn verify_pair(pair: Pair, max_size: usize) -> Result<GridReport> {
    run_grid(pair, max_size, grid_labels(pair, max_size))
}

/// The same on `samples` grid cases drawn with a seeded generator.
pub fn verify_pair_sampled(pair: Pair, max_size: usize, seed: u64, samples: usize) -> Result<GridReport> {
    let mut cases = grid_labels(pair, max_size);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    cases.shuffle(&mut rng);
    cases.truncate(samples);
    run_grid(pair, max_size, cases)
}

/// Outcome of evaluating `GL` diagonal cases at padded (p, q, r, s).
#[derive(Clone, Debug, Default)]
pub struct PaddingReport {
    pub cases: usize,
    /// Cases where the value at padded parameters differs from the value at
    /// minimal ones, or from the oracle at the padded rank.
    pub deviations: Vec<String>,
}

/// Pads each of p, q, r, s by one (so n grows by four) and checks that the
/// formula still agrees with the value at minimal parameters and with the
/// oracle at the larger rank.
pub fn padding_probe(max_size: usize) -> Result<PaddingReport> {
    let cases: Vec<BranchingQuery> = grid_labels(Pair::GlDiag, max_size)
        .into_par_iter()
        .filter_map(|(big, small)| minimal_query(Pair::GlDiag, &big, &small))
        .collect();
    let results: Vec<Result<Option<String>>> = cases
        .into_par_iter()
        .map(|q| {
            let base = multiplicity(&q)?;
            let SixFoldParams { p, q: qq, r, s } = minimal_six_fold_params(&q);
            let padded = SixFoldParams { p: p + 1, q: qq + 1, r: r + 1, s: s + 1 };
            let n = q.ranks.n + 4;
            let labels = |v: &[RepLabel]| v.iter().map(|l| l.data.clone()).collect::<Vec<_>>();
            let wide = BranchingQuery::new(Pair::GlDiag, Ranks::single(n), labels(&q.big), labels(&q.small))?;
            validate_six_fold(&wide, padded)?;
            let value = multiplicity(&wide)?;
            let oracle = oracle_multiplicity(&wide)?;
            Ok((value != base || value != oracle).then(|| {
                format!(
                    "G=[{} ⊗ {}] H=[{}]: minimal {base}, padded {value}, oracle at n={n} {oracle}",
                    q.big[0].data, q.big[1].data, q.small[0].data
                )
            }))
        })
        .collect();
    let mut report = PaddingReport::default();
    for r in results {
        report.cases += 1;
        report.deviations.extend(r?);
    }
    report.deviations.sort();
    Ok(report)
}

/// One evaluated duality identity.
#[derive(Clone, Debug)]
pub struct DualityOutcome {
    pub kind: DualityKind,
    pub degree: usize,
    pub left: u128,
    pub right: u128,
}

impl DualityOutcome {
    pub fn holds(&self) -> bool {
        self.left == self.right
    }
}

/// The duality identities over the standard sweep of ranks and degrees.
pub fn duality_sweep() -> Result<Vec<DualityOutcome>> {
    let mut jobs = Vec::new();
    for n in 1..=4 {
        for p in 1..=4 {
            jobs.extend((0..=8).map(|d| (DualityKind::CauchyGl { n, p }, d)));
        }
    }
    for k in 1..=4 {
        jobs.extend((0..=8).map(|d| (DualityKind::SymSquare { k }, d)));
        jobs.extend((0..=8).map(|d| (DualityKind::WedgeSquare { k }, d)));
    }
    for k in 1..=2 {
        for n in 2 * k + 1..=2 * k + 3 {
            jobs.extend((0..=6).map(|d| (DualityKind::ODuality { n, k }, d)));
        }
        for n in k..=k + 2 {
            jobs.extend((0..=6).map(|d| (DualityKind::SpDuality { n, k }, d)));
        }
    }
    jobs.into_par_iter()
        .map(|(kind, degree)| {
            let (left, right) = duality_sides(kind, degree)?;
            Ok(DualityOutcome { kind, degree, left, right })
        })
        .collect()
}

/// Ranks at which every constituent of `big` restricted to `H` is inside
/// the stable range and has an oracle-safe dimension.
pub fn conservation_ranks(pair: Pair, big: &[Label]) -> Ranks {
    let len_pm = |l: &Label| l.as_gl().map_or(0, |g| g.plus.len() + g.minus.len());
    let len = |l: &Label| l.as_partition().map_or(0, Partition::len);
    match pair {
        Pair::GlDiag => Ranks::single((len_pm(&big[0]) + len_pm(&big[1])).max(1)),
        Pair::ODiag => Ranks::single(2 * (len(&big[0]) + len(&big[1])) + 1),
        Pair::SpDiag => Ranks::single((len(&big[0]) + len(&big[1])).max(1)),
        Pair::GlSum => {
            let t = len_pm(&big[0]).max(1);
            Ranks::pair(t, t)
        }
        Pair::OSum => {
            let t = 2 * len(&big[0]) + 1;
            Ranks::pair(t, t)
        }
        Pair::SpSum => {
            let t = len(&big[0]).max(1);
            Ranks::pair(t, t)
        }
        Pair::GlInO | Pair::GlInSp => Ranks::single((2 * len(&big[0])).max(1)),
        Pair::OInGl => Ranks::single(2 * len_pm(&big[0]) + 1),
        Pair::SpInGl => Ranks::single(len_pm(&big[0]).max(1)),
    }
}

/// (dim of the G representation, Σ multiplicity × dim over the H
/// constituents found by `branch_decompose`).
pub fn dimension_conservation(pair: Pair, ranks: Ranks, big: &[Label]) -> Result<(u128, u128)> {
    let (g_slots, h_slots) = pair.slots(ranks);
    let mut dim_big = 1u128;
    for (label, (f, r)) in big.iter().zip(&g_slots) {
        dim_big *= dim_irrep(&RepLabel::new(*f, *r, label.clone())?)?;
    }
    let decomposition = branch_decompose(pair, ranks, big.to_vec(), None)?;
    let mut total = 0u128;
    for (small, mult) in decomposition {
        let mut d = u128::from(mult);
        for (label, (f, r)) in small.iter().zip(&h_slots) {
            d *= dim_irrep(&RepLabel::new(*f, *r, label.clone())?)?;
        }
        total += d;
    }
    Ok((dim_big, total))
}

/// Every `G` label combination of size at most `max_size` for a pair.
pub fn big_labels(pair: Pair, max_size: usize) -> Vec<Vec<Label>> {
    let (g, _) = pair.slots(Ranks::pair(1, 1));
    let sets: Vec<Vec<Label>> = g.iter().map(|s| labels_for(s.0, max_size)).collect();
    label_product(&sets)
}

fn label_product(sets: &[Vec<Label>]) -> Vec<Vec<Label>> {
    let mut out = vec![Vec::new()];
    for set in sets {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Label>| {
                set.iter().map(move |l| {
                    let mut v = prefix.clone();
                    v.push(l.clone());
                    v
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::part;

    #[test]
    fn grid_sizes() {
        assert_eq!(grid_labels(Pair::ODiag, 5).len(), 19 * 19 * 19);
        assert_eq!(grid_labels(Pair::GlDiag, 4).len(), 38 * 38 * 38);
        assert_eq!(grid_labels(Pair::OInGl, 5).len(), 74 * 19);
    }

    #[test]
    fn minimal_ranks_are_minimal() {
        let p = |x: &[usize]| Label::Part(part(x));
        // o-diag: ℓμ+ℓν ≤ n/2 gives n ≥ 4; the associate of () has size n > 2
        let q = minimal_query(Pair::ODiag, &[p(&[1]), p(&[1])], &[p(&[])]).unwrap();
        assert_eq!(q.ranks, Ranks::single(4));
        let q = minimal_query(Pair::SpSum, &[p(&[1, 1])], &[p(&[1]), p(&[])]).unwrap();
        assert_eq!(q.ranks, Ranks::pair(2, 2));
        let q = minimal_query(Pair::OSum, &[p(&[1])], &[p(&[1]), p(&[])]).unwrap();
        assert_eq!((q.ranks.n, q.ranks.m), (3, Some(2)));
    }

    #[test]
    fn small_grids_agree() {
        for pair in Pair::ALL {
            let report = verify_pair(pair, 2).unwrap();
            assert!(report.passed(), "{}: {:?}", report.summary_line(), report.mismatches.first());
            assert!(report.cases > 0);
        }
    }
}
