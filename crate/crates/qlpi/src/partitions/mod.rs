//! Partition classes under difference-at-a-distance themes: declarative
//! specifications, membership tests, brute-force enumeration (the oracle
//! every later stage is checked against), tails and linking sets.

mod config;
mod presets;

pub use config::parse_spec_config;
pub use presets::{preset, preset_names, Preset};

use std::collections::BTreeMap;
use std::fmt;

/// A partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition::default()
    }

    /// Build from parts in any order.
    pub fn new(mut parts: Vec<usize>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Sum of all parts, `|lambda|`.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts, `#(lambda)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of occurrences of `k`.
    pub fn multiplicity(&self, k: usize) -> usize {
        self.parts.iter().filter(|&&p| p == k).count()
    }

    /// The sub-multiset of parts of size at most `m`.
    pub fn tail(&self, m: usize) -> Partition {
        Partition {
            parts: self.parts.iter().copied().filter(|&p| p <= m).collect(),
        }
    }

    /// Parts of size greater than `m`.
    pub fn head(&self, m: usize) -> Partition {
        Partition {
            parts: self.parts.iter().copied().filter(|&p| p > m).collect(),
        }
    }

    /// Add `s` to every part (the map `phi^s`); the empty partition is fixed.
    pub fn shift_up(&self, s: usize) -> Partition {
        Partition {
            parts: self.parts.iter().map(|&p| p + s).collect(),
        }
    }

    /// Subtract `s` from every part; `None` if some part would drop to zero
    /// or below.
    pub fn shift_down(&self, s: usize) -> Option<Partition> {
        if self.parts.iter().any(|&p| p <= s) {
            return None;
        }
        Some(Partition {
            parts: self.parts.iter().map(|&p| p - s).collect(),
        })
    }

    /// Merge parts with another partition in weakly decreasing order.
    pub fn merge(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            if self.parts[i] >= other.parts[j] {
                parts.push(self.parts[i]);
                i += 1;
            } else {
                parts.push(other.parts[j]);
                j += 1;
            }
        }
        parts.extend_from_slice(&self.parts[i..]);
        parts.extend_from_slice(&other.parts[j..]);
        Partition { parts }
    }

    /// Remove one occurrence of the part at `index`.
    pub fn delete_part(&self, index: usize) -> Partition {
        let mut parts = self.parts.clone();
        parts.remove(index);
        Partition { parts }
    }

    /// Text form "3+2+1"; the empty partition is the empty string.
    pub fn text(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Parse "3+2+1" (or "" for the empty partition).
    pub fn parse(text: &str) -> Option<Partition> {
        let t = text.trim();
        if t.is_empty() {
            return Some(Partition::empty());
        }
        let mut parts = Vec::new();
        for piece in t.split('+') {
            let p: usize = piece.trim().parse().ok()?;
            if p == 0 {
                return None;
            }
            parts.push(p);
        }
        Some(Partition::new(parts))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "empty")
        } else {
            write!(f, "{}", self.text())
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// Declarative class specifications
// ---------------------------------------------------------------------------

/// `lambda_i - lambda_(i+k) >= d` for all valid `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistanceRule {
    pub distance: usize,
    pub min_diff: usize,
}

/// If `lambda_i - lambda_(i+window) <= gap`, the sum of the window's parts
/// must be congruent to `residue` mod `modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JunctionRule {
    pub window: usize,
    pub gap: usize,
    pub modulus: usize,
    pub residue: usize,
}

/// A filter on top of the base class; never relaxes membership.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Restriction {
    /// Smallest allowed part (1 means unrestricted).
    pub min_part: usize,
    /// A value that may appear at most once.
    pub at_most_once: Option<usize>,
}

impl Restriction {
    pub fn none() -> Self {
        Restriction { min_part: 1, at_most_once: None }
    }

    pub fn min_part(s: usize) -> Self {
        Restriction { min_part: s, at_most_once: None }
    }

    pub fn at_most_once(v: usize) -> Self {
        Restriction { min_part: 1, at_most_once: Some(v) }
    }

    pub fn is_none(&self) -> bool {
        self.min_part <= 1 && self.at_most_once.is_none()
    }

    pub fn allows(&self, p: &Partition) -> bool {
        if let Some(&smallest) = p.parts().last() {
            if smallest < self.min_part {
                return false;
            }
        }
        if let Some(v) = self.at_most_once {
            if p.multiplicity(v) > 1 {
                return false;
            }
        }
        true
    }
}

/// Declarative description of a partition class with modular junction rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSpec {
    pub distance_rules: Vec<DistanceRule>,
    pub junction_rules: Vec<JunctionRule>,
    /// The tail modulus `m`.
    pub modulus: usize,
    pub restriction: Restriction,
}

/// Errors from tail and linking-set computation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("tail set is not finite (no distance rule with positive minimum difference, or bound {0} exceeded)")]
    TailSetInfinite(usize),
    #[error("linking sets are not two-block local: chain counts disagree with enumeration first at n = {n} (chain {chain} vs enumerated {enumerated})")]
    LocalityViolation { n: usize, chain: u64, enumerated: u64 },
}

impl IdealSpec {
    pub fn new(
        distance_rules: Vec<DistanceRule>,
        junction_rules: Vec<JunctionRule>,
        modulus: usize,
    ) -> Self {
        assert!(modulus >= 1, "modulus must be at least 1");
        IdealSpec {
            distance_rules,
            junction_rules,
            modulus,
            restriction: Restriction::none(),
        }
    }

    pub fn with_restriction(&self, r: Restriction) -> Self {
        let mut s = self.clone();
        s.restriction = r;
        s
    }

    /// Membership test for the full class (rules plus restriction).
    pub fn is_member(&self, p: &Partition) -> bool {
        self.satisfies_rules(p.parts()) && self.restriction.allows(p)
    }

    fn satisfies_rules(&self, parts: &[usize]) -> bool {
        for rule in &self.distance_rules {
            let k = rule.distance;
            if parts.len() > k {
                for i in 0..parts.len() - k {
                    if parts[i] - parts[i + k] < rule.min_diff {
                        return false;
                    }
                }
            }
        }
        for rule in &self.junction_rules {
            let w = rule.window;
            if parts.len() > w {
                for i in 0..parts.len() - w {
                    if parts[i] - parts[i + w] <= rule.gap {
                        let sum: usize = parts[i..=i + w].iter().sum();
                        if sum % rule.modulus != rule.residue {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Incremental check when `parts[last]` has just been appended: only
    /// rule windows ending at `last` need review.
    fn extension_ok(&self, parts: &[usize]) -> bool {
        let last = parts.len() - 1;
        for rule in &self.distance_rules {
            let k = rule.distance;
            if last >= k && parts[last - k] - parts[last] < rule.min_diff {
                return false;
            }
        }
        for rule in &self.junction_rules {
            let w = rule.window;
            if last >= w && parts[last - w] - parts[last] <= rule.gap {
                let sum: usize = parts[last - w..=last].iter().sum();
                if sum % rule.modulus != rule.residue {
                    return false;
                }
            }
        }
        true
    }

    /// Table `c(m, n)` of member counts with `m` parts and weight `n <= n_max`,
    /// honoring the restriction. `c(0, 0) = 1` (the empty partition).
    pub fn enumerate(&self, n_max: usize) -> CountTable {
        let mut table = CountTable::new(n_max);
        table.record(0, 0); // empty partition is always a member
        let mut parts: Vec<usize> = Vec::new();
        self.enumerate_rec(&mut parts, n_max, n_max, &mut table);
        table
    }

    fn enumerate_rec(
        &self,
        parts: &mut Vec<usize>,
        budget: usize,
        max_next: usize,
        table: &mut CountTable,
    ) {
        let hi = budget.min(max_next);
        let lo = self.restriction.min_part.max(1);
        for p in (lo..=hi).rev() {
            parts.push(p);
            if self.extension_ok(parts) && self.restriction_extension_ok(parts) {
                table.record(parts.len(), parts.iter().sum());
                self.enumerate_rec(parts, budget - p, p, table);
            }
            parts.pop();
        }
    }

    fn restriction_extension_ok(&self, parts: &[usize]) -> bool {
        // min_part is enforced by the loop bound; only multiplicity remains.
        if let Some(v) = self.restriction.at_most_once {
            let last = parts[parts.len() - 1];
            if last == v && parts.len() >= 2 && parts[parts.len() - 2] == v {
                return false;
            }
        }
        true
    }

    /// All members of the unrestricted class whose members are partitions,
    /// listed exhaustively up to weight `n_max` (used by the property tests).
    pub fn members_up_to(&self, n_max: usize) -> Vec<Partition> {
        let base = self.with_restriction(Restriction::none());
        let mut acc = vec![Partition::empty()];
        let mut parts: Vec<usize> = Vec::new();
        base.collect_rec(&mut parts, n_max, n_max, &mut acc);
        acc.sort();
        acc
    }

    fn collect_rec(
        &self,
        parts: &mut Vec<usize>,
        budget: usize,
        max_next: usize,
        acc: &mut Vec<Partition>,
    ) {
        let hi = budget.min(max_next);
        for p in (1..=hi).rev() {
            parts.push(p);
            if self.extension_ok(parts) {
                acc.push(Partition::new(parts.clone()));
                self.collect_rec(parts, budget - p, p, acc);
            }
            parts.pop();
        }
    }

    /// Members with largest part at most the modulus, in (weight, length,
    /// lexicographic) order.
    pub fn compute_tails(&self) -> Result<Vec<Partition>, PartitionError> {
        const TAIL_BOUND: usize = 10_000;
        if !self.distance_rules.iter().any(|r| r.min_diff >= 1) {
            return Err(PartitionError::TailSetInfinite(TAIL_BOUND));
        }
        let base = self.with_restriction(Restriction::none());
        let mut tails = vec![Partition::empty()];
        let mut parts: Vec<usize> = Vec::new();
        base.tails_rec(&mut parts, self.modulus, &mut tails)?;
        tails.sort_by(tail_order);
        Ok(tails)
    }

    fn tails_rec(
        &self,
        parts: &mut Vec<usize>,
        max_next: usize,
        acc: &mut Vec<Partition>,
    ) -> Result<(), PartitionError> {
        const TAIL_BOUND: usize = 10_000;
        for p in (1..=max_next).rev() {
            parts.push(p);
            if self.extension_ok(parts) {
                if acc.len() >= TAIL_BOUND {
                    parts.pop();
                    return Err(PartitionError::TailSetInfinite(TAIL_BOUND));
                }
                acc.push(Partition::new(parts.clone()));
                self.tails_rec(parts, p, acc)?;
            }
            parts.pop();
        }
        Ok(())
    }

    /// Tails, linking sets, and spans, cross-validated against enumeration.
    pub fn compute_linking(&self) -> Result<TailTable, PartitionError> {
        self.compute_linking_checked(DEFAULT_CROSS_CHECK_BOUND)
    }

    /// As [`compute_linking`](Self::compute_linking) with an explicit
    /// cross-validation weight bound.
    pub fn compute_linking_checked(&self, check_bound: usize) -> Result<TailTable, PartitionError> {
        let tails = self.compute_tails()?;
        let base = self.with_restriction(Restriction::none());
        let m = self.modulus;
        let mut linking = Vec::with_capacity(tails.len());
        for pi in &tails {
            let mut set = Vec::new();
            for (j, omega) in tails.iter().enumerate() {
                let composed = pi.merge(&omega.shift_up(m));
                if base.is_member(&composed) {
                    set.push(j);
                }
            }
            linking.push(set);
        }
        let table = TailTable {
            modulus: m,
            tails,
            linking,
            spans: None,
        };
        // The pairwise test assumes constraints never span more than two
        // blocks; the chain-count comparison turns that into a checked
        // contract.
        let chain = table.chain_counts(check_bound, None);
        let oracle = base.enumerate(check_bound);
        for n in 0..=check_bound {
            let c: u64 = chain.total(n);
            let o: u64 = oracle.total(n);
            if c != o {
                return Err(PartitionError::LocalityViolation {
                    n,
                    chain: c,
                    enumerated: o,
                });
            }
        }
        Ok(table)
    }
}

const DEFAULT_CROSS_CHECK_BOUND: usize = 30;

/// Order tails by (weight, length, lexicographic parts).
pub fn tail_order(a: &Partition, b: &Partition) -> std::cmp::Ordering {
    a.weight()
        .cmp(&b.weight())
        .then(a.len().cmp(&b.len()))
        .then(a.parts().cmp(b.parts()))
}

// ---------------------------------------------------------------------------
// Count tables
// ---------------------------------------------------------------------------

/// Counts `c(m, n)` of members with `m` parts and weight `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    n_max: usize,
    /// counts[m][n]; ragged in m (rows appended as needed).
    counts: Vec<Vec<u64>>,
}

impl CountTable {
    pub fn new(n_max: usize) -> Self {
        CountTable { n_max, counts: Vec::new() }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn record(&mut self, m: usize, n: usize) {
        self.add(m, n, 1);
    }

    pub fn add(&mut self, m: usize, n: usize, v: u64) {
        if n > self.n_max {
            return;
        }
        while self.counts.len() <= m {
            self.counts.push(vec![0; self.n_max + 1]);
        }
        self.counts[m][n] += v;
    }

    pub fn count(&self, m: usize, n: usize) -> u64 {
        self.counts
            .get(m)
            .and_then(|row| row.get(n))
            .copied()
            .unwrap_or(0)
    }

    /// Total members of weight `n` over all part counts.
    pub fn total(&self, n: usize) -> u64 {
        self.counts.iter().map(|row| row.get(n).copied().unwrap_or(0)).sum()
    }

    pub fn max_parts(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }
}

// ---------------------------------------------------------------------------
// Tail tables
// ---------------------------------------------------------------------------

/// Tails with their linking sets and spans.
///
/// Spans are uniformly 1 here (every instance in scope has span 1); the
/// field stays optional per-tail as the extension point for larger spans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailTable {
    pub modulus: usize,
    pub tails: Vec<Partition>,
    /// linking[i] = sorted indices of tails allowed to follow tails[i].
    pub linking: Vec<Vec<usize>>,
    /// Per-tail spans when any differs from 1.
    pub spans: Option<Vec<usize>>,
}

impl TailTable {
    pub fn span(&self, i: usize) -> usize {
        self.spans.as_ref().map_or(1, |s| s[i])
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.tails.iter().position(|t| t == p)
    }

    /// Linking set of a tail as partitions.
    pub fn linking_set(&self, i: usize) -> Vec<&Partition> {
        self.linking[i].iter().map(|&j| &self.tails[j]).collect()
    }

    /// Count members by composing linked chains of shifted tails; the
    /// independent route to the same numbers as direct enumeration.
    ///
    /// `first_block` restricts the level-0 block to the given tail indices
    /// (used to cross-check restricted targets); `None` allows every tail.
    pub fn chain_counts(&self, n_max: usize, first_block: Option<&[usize]>) -> CountTable {
        let m = self.modulus;
        let k = self.tails.len();
        let empty_idx = self
            .tails
            .iter()
            .position(|t| t.is_empty())
            .expect("tail set contains the empty partition");
        // levels beyond this cannot host a nonempty block within the budget
        let max_level = n_max / m + 1;

        // suffix[j][i] = counts of chains at levels >= j whose block at
        // level j-1 was tails[i] (so level-j choices range over linking[i]).
        let zero = || CountTable::new(n_max);
        let empty_self_links = self.linking[empty_idx].contains(&empty_idx);
        let mut next: Vec<CountTable> = (0..k)
            .map(|i| {
                let mut t = zero();
                // all-empty continuation is legal only when the chain can
                // keep linking through the empty tail
                if empty_self_links && self.linking[i].contains(&empty_idx) {
                    t.record(0, 0);
                }
                t
            })
            .collect();
        for j in (1..=max_level).rev() {
            let mut cur: Vec<CountTable> = Vec::with_capacity(k);
            for i in 0..k {
                let mut acc = zero();
                for &c in &self.linking[i] {
                    let block = &self.tails[c];
                    let w = block.weight() + j * m * block.len();
                    if w > n_max {
                        continue;
                    }
                    let suffix = &next[c];
                    for mm in 0..=suffix.max_parts() {
                        for nn in 0..=n_max.saturating_sub(w) {
                            let v = suffix.count(mm, nn);
                            if v > 0 {
                                acc.add(mm + block.len(), nn + w, v);
                            }
                        }
                    }
                }
                cur.push(acc);
            }
            next = cur;
        }
        // level 0: first block ranges over `first_block` or all tails.
        let mut total = zero();
        let allowed: Vec<usize> = match first_block {
            Some(list) => list.to_vec(),
            None => (0..k).collect(),
        };
        for &c in &allowed {
            let block = &self.tails[c];
            let w = block.weight();
            if w > n_max {
                continue;
            }
            let suffix = &next[c];
            for mm in 0..=suffix.max_parts() {
                for nn in 0..=n_max - w {
                    let v = suffix.count(mm, nn);
                    if v > 0 {
                        total.add(mm + block.len(), nn + w, v);
                    }
                }
            }
        }
        total
    }
}

#[cfg(test)]
mod tests;
