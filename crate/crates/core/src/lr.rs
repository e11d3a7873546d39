//! Littlewood-Richardson coefficients.
//!
//! c^λ_{μν} is the number of LR tableaux of skew shape λ/μ and content ν:
//! fillings that are weakly increasing along rows, strictly increasing down
//! columns, and whose reverse reading word (rows right to left, top to
//! bottom) is a lattice word. The filler walks the cells in exactly that
//! reading order, so the lattice condition is checked as each entry is
//! placed and dead branches are cut immediately.
//!
//! Results are memoized in an [`LrEngine`]. The engine is `Sync`; a
//! process-wide instance is available through [`LrEngine::global`] and the
//! free functions of this module.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Cache key for c^λ_{μν}; `left <= right` so both argument orders share
/// one entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LrKey {
    pub outer: Partition,
    pub left: Partition,
    pub right: Partition,
}

impl LrKey {
    pub fn new(outer: &Partition, left: &Partition, right: &Partition) -> Self {
        let (left, right) = if left <= right { (left, right) } else { (right, left) };
        LrKey {
            outer: outer.clone(),
            left: left.clone(),
            right: right.clone(),
        }
    }
}

/// A finite map partition → positive multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpansionMap {
    entries: BTreeMap<Partition, u64>,
}

impl ExpansionMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `mult` to the entry for `key`; zero multiplicities are ignored.
    pub fn add(&mut self, key: Partition, mult: u64) {
        if mult > 0 {
            *self.entries.entry(key).or_insert(0) += mult;
        }
    }

    pub fn get(&self, key: &Partition) -> u64 {
        self.entries.get(key).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, u64)> {
        self.entries.iter().map(|(k, &v)| (k, v))
    }

    pub fn as_map(&self) -> &BTreeMap<Partition, u64> {
        &self.entries
    }
}

impl FromIterator<(Partition, u64)> for ExpansionMap {
    fn from_iter<T: IntoIterator<Item = (Partition, u64)>>(iter: T) -> Self {
        let mut map = ExpansionMap::new();
        for (k, v) in iter {
            map.add(k, v);
        }
        map
    }
}

/// Memoizing LR coefficient engine.
#[derive(Default)]
pub struct LrEngine {
    coeffs: RwLock<HashMap<LrKey, u64>>,
    skews: RwLock<HashMap<(Partition, Partition), Arc<ExpansionMap>>>,
}

impl LrEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// The process-wide engine used by the free functions.
    pub fn global() -> &'static LrEngine {
        static ENGINE: OnceLock<LrEngine> = OnceLock::new();
        ENGINE.get_or_init(LrEngine::new)
    }

    /// c^λ_{μν}.
    pub fn coeff(&self, outer: &Partition, left: &Partition, right: &Partition) -> u64 {
        if outer.size() != left.size() + right.size()
            || !outer.contains(left)
            || !outer.contains(right)
        {
            return 0;
        }
        if left.is_empty() || right.is_empty() {
            return 1;
        }
        let key = LrKey::new(outer, left, right);
        if let Some(&c) = self.coeffs.read().unwrap().get(&key) {
            return c;
        }
        // Fill the smaller-content side: fewer distinct values, less search.
        let c = count_lr_tableaux(&key.outer, &key.right, &key.left);
        self.coeffs.write().unwrap().insert(key, c);
        c
    }

    /// {ν ↦ c^λ_{μν} : c > 0}; empty when μ ⊄ λ.
    pub fn skew(&self, outer: &Partition, inner: &Partition) -> Arc<ExpansionMap> {
        let key = (outer.clone(), inner.clone());
        if let Some(map) = self.skews.read().unwrap().get(&key) {
            return Arc::clone(map);
        }
        let map = if outer.contains(inner) {
            Arc::new(lr_fillings(outer, inner, None).1)
        } else {
            Arc::new(ExpansionMap::new())
        };
        self.skews
            .write()
            .unwrap()
            .entry(key)
            .or_insert_with(|| Arc::clone(&map));
        map
    }

    /// {λ ↦ c^λ_{μν} : c > 0, ℓ(λ) ≤ max_length}.
    pub fn tensor(&self, left: &Partition, right: &Partition, max_length: Option<usize>) -> ExpansionMap {
        let size = left.size() + right.size();
        let max_len = max_length
            .unwrap_or(usize::MAX)
            .min(left.len() + right.len());
        let floor: Vec<usize> = (0..max_len).map(|i| left[i].max(right[i])).collect();
        if left.len().max(right.len()) > max_len {
            return ExpansionMap::new();
        }
        let mut out = ExpansionMap::new();
        let mut current = Vec::new();
        let cap = left.first() + right.first();
        candidate_shapes(&floor, size, cap, &mut current, &mut |lam| {
            let c = self.coeff(lam, left, right);
            out.add(lam.clone(), c);
        });
        out
    }

    pub fn cached_coefficients(&self) -> usize {
        self.coeffs.read().unwrap().len()
    }

    /// Loads `outer;left;right;value` lines into the coefficient cache.
    pub fn load(&self, path: &Path) -> Result<usize> {
        let file = fs::File::open(path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        let mut loaded = 0;
        let mut cache = self.coeffs.write().unwrap();
        for (lineno, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| Error::Cache(e.to_string()))?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(';').collect();
            let bad = || Error::Cache(format!("{}:{}: malformed entry", path.display(), lineno + 1));
            if fields.len() != 4 {
                return Err(bad());
            }
            let outer: Partition = fields[0].parse().map_err(|_| bad())?;
            let left: Partition = fields[1].parse().map_err(|_| bad())?;
            let right: Partition = fields[2].parse().map_err(|_| bad())?;
            let value: u64 = fields[3].parse().map_err(|_| bad())?;
            cache.insert(LrKey::new(&outer, &left, &right), value);
            loaded += 1;
        }
        Ok(loaded)
    }

    /// Writes the coefficient cache in the format read by [`LrEngine::load`],
    /// sorted by key so the file is deterministic.
    pub fn save(&self, path: &Path) -> Result<()> {
        let cache = self.coeffs.read().unwrap();
        let mut entries: Vec<(&LrKey, &u64)> = cache.iter().collect();
        entries.sort();
        let file = fs::File::create(path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        let mut w = BufWriter::new(file);
        let join = |p: &Partition| {
            p.parts().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        };
        for (k, v) in entries {
            writeln!(w, "{};{};{};{}", join(&k.outer), join(&k.left), join(&k.right), v)
                .map_err(|e| Error::Cache(e.to_string()))?;
        }
        w.flush().map_err(|e| Error::Cache(e.to_string()))
    }
}

/// Shapes λ of the given size with λᵢ ≥ floor[i], ℓ(λ) ≤ floor.len() and
/// λ₁ ≤ cap.
fn candidate_shapes(
    floor: &[usize],
    remaining: usize,
    max_part: usize,
    current: &mut Vec<usize>,
    visit: &mut dyn FnMut(&Partition),
) {
    let row = current.len();
    if remaining == 0 {
        if floor[row..].iter().all(|&f| f == 0) {
            visit(&Partition::from_sorted(current.clone()));
        }
        return;
    }
    if row == floor.len() {
        return;
    }
    let still_needed: usize = floor[row + 1..].iter().sum();
    for part in floor[row].max(1)..=max_part.min(remaining) {
        if remaining - part < still_needed {
            break;
        }
        current.push(part);
        candidate_shapes(floor, remaining - part, part, current, visit);
        current.pop();
    }
}

/// c^λ_{μν} by direct tableau count (no cache).
pub fn count_lr_tableaux(outer: &Partition, inner: &Partition, content: &Partition) -> u64 {
    if outer.size() != inner.size() + content.size() || !outer.contains(inner) || !outer.contains(content) {
        return 0;
    }
    lr_fillings(outer, inner, Some(content)).0
}

struct Filler<'a> {
    outer: &'a Partition,
    inner: &'a Partition,
    content: Option<&'a Partition>,
    cells: Vec<(usize, usize)>,
    grid: Vec<Vec<usize>>,
    counts: Vec<usize>,
    total: u64,
    found: ExpansionMap,
}

/// Counts LR fillings of λ/μ. With a fixed content, returns the count; with
/// none, the count plus the tally of contents that occur.
fn lr_fillings(outer: &Partition, inner: &Partition, content: Option<&Partition>) -> (u64, ExpansionMap) {
    let mut cells = Vec::with_capacity(outer.size() - inner.size());
    for i in 0..outer.len() {
        for j in (inner[i]..outer[i]).rev() {
            cells.push((i, j));
        }
    }
    let grid = outer.parts().iter().map(|&p| vec![0; p]).collect();
    let max_value = content.map_or(outer.len(), |c| c.len());
    let mut filler = Filler {
        outer,
        inner,
        content,
        cells,
        grid,
        counts: vec![0; max_value + 2],
        total: 0,
        found: ExpansionMap::new(),
    };
    filler.fill(0);
    (filler.total, filler.found)
}

impl Filler<'_> {
    fn fill(&mut self, k: usize) {
        if k == self.cells.len() {
            self.total += 1;
            if self.content.is_none() {
                let parts: Vec<usize> = self.counts[1..].iter().copied().take_while(|&c| c > 0).collect();
                self.found.add(Partition::from_sorted(parts), 1);
            }
            return;
        }
        let (i, j) = self.cells[k];
        // row-weak: no larger than the entry to the right
        let mut hi = if j + 1 < self.outer[i] { self.grid[i][j + 1] } else { i + 1 };
        hi = hi.min(i + 1);
        if let Some(c) = self.content {
            hi = hi.min(c.len());
        }
        // column-strict: larger than the entry above, if that cell is skew
        let lo = if i > 0 && j >= self.inner[i - 1] { self.grid[i - 1][j] + 1 } else { 1 };
        for v in lo..=hi {
            if v > 1 && self.counts[v] >= self.counts[v - 1] {
                continue;
            }
            if let Some(c) = self.content {
                if self.counts[v] >= c[v - 1] {
                    continue;
                }
            }
            self.counts[v] += 1;
            self.grid[i][j] = v;
            self.fill(k + 1);
            self.grid[i][j] = 0;
            self.counts[v] -= 1;
        }
    }
}

/// c^λ_{μν} via the global engine.
pub fn lr_coeff(outer: &Partition, left: &Partition, right: &Partition) -> u64 {
    LrEngine::global().coeff(outer, left, right)
}

/// {λ ↦ c^λ_{μν}} via the global engine.
pub fn tensor_expand(left: &Partition, right: &Partition, max_length: Option<usize>) -> ExpansionMap {
    LrEngine::global().tensor(left, right, max_length)
}

/// {ν ↦ c^λ_{μν}} via the global engine.
pub fn skew_expand(outer: &Partition, inner: &Partition) -> Arc<ExpansionMap> {
    LrEngine::global().skew(outer, inner)
}
