//! Integer partitions and rational `GL` labels.
//!
//! A [`Partition`] is kept in canonical form: weakly decreasing, no zero
//! parts. Everything downstream (memo keys, label equality, JSON output)
//! relies on that single representative.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// The empty partition.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from a weakly decreasing sequence. Zero parts are
    /// dropped; an increasing adjacent pair is rejected.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let parts: Vec<usize> = parts.into_iter().filter(|&p| p > 0).collect();
        if let Some(w) = parts.windows(2).find(|w| w[0] < w[1]) {
            return Err(Error::NotAPartition(format!(
                "parts {} < {} are increasing",
                w[0], w[1]
            )));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from parts already known to be canonical.
    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// ℓ(λ), the number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// |λ|, the number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// First part, or 0 for the empty partition.
    pub fn first(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// λ′ with (λ′)ᵢ = #{j : λⱼ ≥ i}.
    pub fn conjugate(&self) -> Partition {
        let width = self.first();
        let parts = (1..=width)
            .map(|i| self.parts.iter().take_while(|&&p| p >= i).count())
            .collect();
        Partition { parts }
    }

    /// 2δ: every row doubled.
    pub fn double_rows(&self) -> Partition {
        Partition {
            parts: self.parts.iter().map(|p| 2 * p).collect(),
        }
    }

    /// (2δ)′: every column doubled, i.e. each row repeated twice.
    pub fn double_columns(&self) -> Partition {
        Partition {
            parts: self.parts.iter().flat_map(|&p| [p, p]).collect(),
        }
    }

    /// True iff every row length is even.
    pub fn is_even_rows(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 0)
    }

    /// True iff every column length is even (equivalently the rows come in
    /// equal adjacent pairs).
    pub fn is_even_columns(&self) -> bool {
        self.parts.len() % 2 == 0 && self.parts.chunks(2).all(|c| c[0] == c[1])
    }

    /// μ ⊆ λ as Young diagrams.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(m, l)| m <= l)
    }

    /// Sum of the first two columns, (λ′)₁ + (λ′)₂.
    pub fn first_two_columns(&self) -> usize {
        self.len() + self.parts.iter().filter(|&&p| p >= 2).count()
    }

    /// The parts padded with zeros to length `n` (truncating is a bug).
    pub fn padded(&self, n: usize) -> Vec<usize> {
        debug_assert!(self.len() <= n);
        let mut v = self.parts.clone();
        v.resize(n, 0);
        v
    }

    /// All partitions of exactly `n`, in reverse lexicographic order.
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fill_partitions(n, n, usize::MAX, &mut current, &mut out);
        out
    }

    /// All partitions with at most `max_size` boxes, ordered by size.
    pub fn all_up_to(max_size: usize) -> Vec<Partition> {
        (0..=max_size).flat_map(Partition::all_of_size).collect()
    }

    /// All partitions of `n` with at most `max_len` parts.
    pub fn all_of_size_bounded(n: usize, max_len: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fill_partitions(n, n, max_len, &mut current, &mut out);
        out
    }

    /// Every partition contained in `self` (including ∅ and `self`).
    pub fn subpartitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fill_subpartitions(&self.parts, 0, usize::MAX, &mut current, &mut out);
        out
    }

    /// Partitions μ ⊆ `self` with |μ| = `size`.
    pub fn subpartitions_of_size(&self, size: usize) -> Vec<Partition> {
        self.subpartitions()
            .into_iter()
            .filter(|p| p.size() == size)
            .collect()
    }
}

fn fill_partitions(
    remaining: usize,
    max_part: usize,
    max_len: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition::from_sorted(current.clone()));
        return;
    }
    if current.len() == max_len {
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        fill_partitions(remaining - part, part, max_len, current, out);
        current.pop();
    }
}

fn fill_subpartitions(
    outer: &[usize],
    row: usize,
    max_part: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    out.push(Partition::from_sorted(current.clone()));
    if row == outer.len() {
        return;
    }
    for part in 1..=outer[row].min(max_part) {
        current.push(part);
        fill_subpartitions(outer, row + 1, part, current, out);
        current.pop();
    }
}

impl Index<usize> for Partition {
    type Output = usize;

    /// Missing parts read as 0.
    fn index(&self, index: usize) -> &usize {
        self.parts.get(index).unwrap_or(&0)
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts.cmp(&other.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_partition(s)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// Parses `"[3,2,1]"`, `"3,2,1"` or `"[]"`. Zeros are accepted and dropped.
pub fn parse_partition(text: &str) -> Result<Partition> {
    let trimmed = text.trim();
    let inner = match (trimmed.strip_prefix('['), trimmed.strip_suffix(']')) {
        (Some(_), Some(_)) if trimmed.len() >= 2 => &trimmed[1..trimmed.len() - 1],
        (None, None) => trimmed,
        _ => return Err(Error::Parse(format!("unbalanced brackets in {text:?}"))),
    };
    let inner = inner.trim();
    if inner.is_empty() {
        return Ok(Partition::empty());
    }
    let parts = inner
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad part {tok:?} in {text:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Partition::new(parts)
}

/// Convenience constructor for tests and examples; panics on bad input.
pub fn part(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).expect("not a partition")
}

/// A rational `GLₙ` highest weight (λ⁺, λ⁻), i.e.
/// (λ⁺₁, …, λ⁺ₚ, 0, …, 0, −λ⁻_q, …, −λ⁻₁).
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GlLabel {
    pub plus: Partition,
    pub minus: Partition,
}

impl GlLabel {
    pub fn new(plus: Partition, minus: Partition) -> Self {
        GlLabel { plus, minus }
    }

    /// A polynomial label (λ, ∅).
    pub fn polynomial(plus: Partition) -> Self {
        GlLabel {
            plus,
            minus: Partition::empty(),
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.minus.is_empty()
    }

    /// |λ⁺| + |λ⁻|.
    pub fn size(&self) -> usize {
        self.plus.size() + self.minus.size()
    }

    /// ℓ(λ⁺) + ℓ(λ⁻), the least `n` for which the label is a `GLₙ` weight.
    pub fn depth(&self) -> usize {
        self.plus.len() + self.minus.len()
    }

    /// The highest weight as an `n`-tuple. Requires `depth() <= n`.
    pub fn weight(&self, n: usize) -> Vec<i32> {
        debug_assert!(self.depth() <= n);
        let mut w = vec![0i32; n];
        for (i, &p) in self.plus.parts().iter().enumerate() {
            w[i] = p as i32;
        }
        for (i, &p) in self.minus.parts().iter().enumerate() {
            w[n - 1 - i] = -(p as i32);
        }
        w
    }

    /// All labels with |λ⁺| + |λ⁻| ≤ `max_size`.
    pub fn all_up_to(max_size: usize) -> Vec<GlLabel> {
        let mut out = Vec::new();
        for total in 0..=max_size {
            for a in 0..=total {
                for plus in Partition::all_of_size(a) {
                    for minus in Partition::all_of_size(total - a) {
                        out.push(GlLabel::new(plus.clone(), minus));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for GlLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.plus, self.minus)
    }
}

impl fmt::Debug for GlLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for GlLabel {
    type Err = Error;

    /// `"plus/minus"`; the `"/minus"` half is optional.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('/') {
            Some((plus, minus)) => Ok(GlLabel::new(plus.parse()?, minus.parse()?)),
            None => Ok(GlLabel::polynomial(s.parse()?)),
        }
    }
}
