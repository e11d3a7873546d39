use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::laurent::Weight;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupFamily {
    /// GL(k)
    Gl,
    /// Sp(2k)
    SpRank,
    /// SO(2k+1)
    SoOdd,
    /// SO(2k)
    SoEven,
}

/// A connected classical group, identified by family and torus rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: GroupFamily,
    pub torus_rank: usize,
}

impl GroupSpec {
    pub fn gl(n: usize) -> Self {
        GroupSpec { family: GroupFamily::Gl, torus_rank: n }
    }

    pub fn sp(k: usize) -> Self {
        GroupSpec { family: GroupFamily::SpRank, torus_rank: k }
    }

    /// SO(n) for either parity.
    pub fn so(n: usize) -> Self {
        let family = if n % 2 == 1 { GroupFamily::SoOdd } else { GroupFamily::SoEven };
        GroupSpec { family, torus_rank: n / 2 }
    }

    pub fn rank(&self) -> usize {
        self.torus_rank
    }

    /// True when every character is invariant under x ↦ x⁻¹, i.e. when −1
    /// is in the Weyl group. SO(2k) with k odd is the exception among the
    /// orthogonal groups.
    pub fn is_self_dual(&self) -> bool {
        match self.family {
            GroupFamily::Gl => false,
            GroupFamily::SoEven => self.torus_rank % 2 == 0,
            _ => true,
        }
    }

    pub fn weyl_order(&self) -> u128 {
        let k = self.torus_rank as u128;
        let fact: u128 = (1..=k).product();
        match self.family {
            GroupFamily::Gl => fact,
            GroupFamily::SpRank | GroupFamily::SoOdd => fact << k,
            GroupFamily::SoEven if k == 0 => 1,
            GroupFamily::SoEven => fact << (k - 1),
        }
    }

    /// Positive roots in ordinary coordinates.
    pub fn positive_roots(&self) -> Vec<Weight> {
        let k = self.torus_rank;
        let unit = |i: usize| {
            let mut v = vec![0; k];
            v[i] = 1;
            v
        };
        let mut roots = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let mut minus = unit(i);
                minus[j] = -1;
                roots.push(minus);
                if self.family != GroupFamily::Gl {
                    let mut plus = unit(i);
                    plus[j] = 1;
                    roots.push(plus);
                }
            }
            match self.family {
                GroupFamily::SpRank => roots.push(unit(i).iter().map(|x| 2 * x).collect()),
                GroupFamily::SoOdd => roots.push(unit(i)),
                _ => {}
            }
        }
        roots
    }

    /// 2ρ. Doubling keeps the half-integral ρ of SO(2k+1) integral.
    pub fn rho_doubled(&self) -> Weight {
        let k = self.torus_rank as i32;
        (0..k)
            .map(|i| match self.family {
                GroupFamily::Gl | GroupFamily::SoEven => 2 * (k - 1 - i),
                GroupFamily::SpRank => 2 * (k - i),
                GroupFamily::SoOdd => 2 * (k - i) - 1,
            })
            .collect()
    }

    pub fn is_dominant(&self, w: &[i32]) -> bool {
        if w.len() != self.torus_rank {
            return false;
        }
        let k = w.len();
        match self.family {
            GroupFamily::Gl => w.windows(2).all(|p| p[0] >= p[1]),
            GroupFamily::SpRank | GroupFamily::SoOdd => {
                w.windows(2).all(|p| p[0] >= p[1]) && w.last().map_or(true, |&x| x >= 0)
            }
            GroupFamily::SoEven => {
                if k < 2 {
                    return true;
                }
                w[..k - 1].windows(2).all(|p| p[0] >= p[1]) && w[k - 2] >= w[k - 1].abs()
            }
        }
    }

    pub fn check_dominant(&self, w: &[i32]) -> Result<()> {
        if self.is_dominant(w) {
            Ok(())
        } else {
            Err(Error::NotDominant(format!("{w:?} for {self}")))
        }
    }

    /// The dominant element of the Weyl orbit of `w`.
    pub fn dominant_rep(&self, w: &[i32]) -> Weight {
        let mut v: Weight = match self.family {
            GroupFamily::Gl => w.to_vec(),
            _ => w.iter().map(|x| x.abs()).collect(),
        };
        v.sort_unstable_by(|a, b| b.cmp(a));
        if self.family == GroupFamily::SoEven && !w.contains(&0) {
            let negatives = w.iter().filter(|&&x| x < 0).count();
            if negatives % 2 == 1 {
                if let Some(last) = v.last_mut() {
                    *last = -*last;
                }
            }
        }
        v
    }

    /// Number of distinct images of `w` under the Weyl group.
    pub fn orbit_size(&self, w: &[i32]) -> u128 {
        let mut values: Vec<i32> = match self.family {
            GroupFamily::Gl => w.to_vec(),
            _ => w.iter().map(|x| x.abs()).collect(),
        };
        values.sort_unstable();
        let mut size: u128 = (1..=values.len() as u128).product();
        for run in values.chunk_by(|a, b| a == b) {
            size /= (1..=run.len() as u128).product::<u128>();
        }
        if self.family != GroupFamily::Gl {
            let nonzero = values.iter().filter(|&&x| x != 0).count() as u32;
            size <<= nonzero;
            if self.dominant_parity(w).is_some() {
                size /= 2;
            }
        }
        size
    }

    /// Every distinct image of `w` under the Weyl group.
    pub fn orbit(&self, w: &[i32]) -> Vec<Weight> {
        let mut values: Vec<i32> = match self.family {
            GroupFamily::Gl => w.to_vec(),
            _ => w.iter().map(|x| x.abs()).collect(),
        };
        values.sort_unstable();
        let parity = self.dominant_parity(w);
        let mut out = Vec::new();
        let mut perms = Vec::new();
        distinct_permutations(&mut values, 0, &mut perms);
        for p in perms {
            match self.family {
                GroupFamily::Gl => out.push(p),
                _ => {
                    let nonzero: Vec<usize> = (0..p.len()).filter(|&i| p[i] != 0).collect();
                    for mask in 0u64..(1u64 << nonzero.len()) {
                        if let Some(required) = parity {
                            if mask.count_ones() % 2 != required {
                                continue;
                            }
                        }
                        let mut img = p.clone();
                        for (bit, &i) in nonzero.iter().enumerate() {
                            if mask >> bit & 1 == 1 {
                                img[i] = -img[i];
                            }
                        }
                        out.push(img);
                    }
                }
            }
        }
        out
    }

    /// For SO(2k) with no zero coordinate, orbits keep the parity of the
    /// number of negative entries; `None` means unconstrained.
    fn dominant_parity(&self, w: &[i32]) -> Option<u32> {
        if self.family == GroupFamily::SoEven && !w.contains(&0) {
            Some((w.iter().filter(|&&x| x < 0).count() % 2) as u32)
        } else {
            None
        }
    }

    /// Applies every Weyl group element to `v`, yielding (sign, image).
    /// Elements are signed permutations; the sign is sgn(perm)·(−1)^flips,
    /// with flips even for SO(2k) (so the sign there is sgn(perm)).
    pub fn for_each_weyl_image(&self, v: &[i32], mut visit: impl FnMut(i64, Weight)) {
        let k = self.torus_rank;
        for (p, psign) in all_permutations(k) {
            let base: Weight = p.iter().map(|&i| v[i]).collect();
            match self.family {
                GroupFamily::Gl => visit(psign, base),
                _ => {
                    for mask in 0u64..(1u64 << k) {
                        let flips = mask.count_ones();
                        let sign = match self.family {
                            GroupFamily::SoEven if flips % 2 == 1 => continue,
                            GroupFamily::SoEven => psign,
                            _ if flips % 2 == 1 => -psign,
                            _ => psign,
                        };
                        let img = base
                            .iter()
                            .enumerate()
                            .map(|(i, &x)| if mask >> i & 1 == 1 { -x } else { x })
                            .collect();
                        visit(sign, img);
                    }
                }
            }
        }
    }

    /// Dominant weights μ ≤ λ (λ − μ a sum of positive roots), found by
    /// repeatedly subtracting positive roots and keeping dominant results.
    pub fn dominant_weights_below(&self, top: &[i32]) -> Result<BTreeSet<Weight>> {
        self.check_dominant(top)?;
        let roots = self.positive_roots();
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(top.to_vec());
        queue.push_back(top.to_vec());
        while let Some(w) = queue.pop_front() {
            for r in &roots {
                let next: Weight = w.iter().zip(r).map(|(a, b)| a - b).collect();
                if self.is_dominant(&next) && !seen.contains(&next) {
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.torus_rank;
        match self.family {
            GroupFamily::Gl => write!(f, "GL({k})"),
            GroupFamily::SpRank => write!(f, "Sp({})", 2 * k),
            GroupFamily::SoOdd => write!(f, "SO({})", 2 * k + 1),
            GroupFamily::SoEven => write!(f, "SO({})", 2 * k),
        }
    }
}

fn distinct_permutations(values: &mut Vec<i32>, start: usize, out: &mut Vec<Weight>) {
    if start == values.len() {
        out.push(values.clone());
        return;
    }
    let mut used = HashSet::new();
    for i in start..values.len() {
        if !used.insert(values[i]) {
            continue;
        }
        values.swap(start, i);
        distinct_permutations(values, start + 1, out);
        values.swap(start, i);
    }
}

/// All permutations of 0..k with their signs.
fn all_permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(m: usize, perm: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, i64)>) {
        if m <= 1 {
            out.push((perm.clone(), permutation_sign(perm)));
            return;
        }
        for i in 0..m {
            go(m - 1, perm, out);
            if i + 1 < m {
                if m % 2 == 0 {
                    perm.swap(i, m - 1);
                } else {
                    perm.swap(0, m - 1);
                }
            }
        }
    }
    let mut perm: Vec<usize> = (0..k).collect();
    let mut out = Vec::new();
    go(k, &mut perm, &mut out);
    out
}

fn permutation_sign(p: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 { 1 } else { -1 }
}
