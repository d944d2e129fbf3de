//! Brute-force partition enumeration and per-partition statistics.
//!
//! This is the independent oracle for the generating-function side: every
//! distribution and aggregate here is computed by walking the partitions
//! themselves.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::Statistic;

/// Largest `n` accepted by the enumerators (`p(80)` is about 1.6e7).
pub const ENUMERATION_CAP: usize = 80;

/// A partition stored with its parts in weakly decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
    n: u32,
}

impl Partition {
    /// Builds a partition from parts in any order; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Domain("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let n = parts.iter().sum();
        Ok(Partition { parts, n })
    }

    pub fn empty() -> Self {
        Partition {
            parts: Vec::new(),
            n: 0,
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.n
    }

    pub fn largest(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of times `v` occurs as a part.
    pub fn multiplicity(&self, v: u32) -> usize {
        // parts are decreasing, so count the block equal to v
        let start = self.parts.partition_point(|&p| p > v);
        let end = self.parts.partition_point(|&p| p >= v);
        end - start
    }

    fn contains(&self, v: u32) -> bool {
        self.multiplicity(v) > 0
    }

    /// Dyson's rank: largest part minus number of parts.
    pub fn rank(&self) -> i64 {
        self.largest() as i64 - self.len() as i64
    }

    /// Andrews-Garvan crank. With `o` ones and `mu` parts larger than `o`:
    /// the largest part if `o = 0`, otherwise `mu - o`.
    pub fn crank(&self) -> i64 {
        let ones = self.multiplicity(1);
        if ones == 0 {
            self.largest() as i64
        } else {
            let larger = self.parts.iter().filter(|&&p| p as usize > ones).count();
            larger as i64 - ones as i64
        }
    }

    /// Side of the Durfee square: the largest `k` with `parts[k-1] >= k`.
    pub fn durfee(&self) -> u32 {
        self.parts
            .iter()
            .enumerate()
            .take_while(|&(i, &p)| p as usize > i)
            .count() as u32
    }

    /// Number of appearances of the smallest part (0 for the empty partition).
    pub fn smallest_part_count(&self) -> u32 {
        match self.parts.last() {
            Some(&s) => self.multiplicity(s) as u32,
            None => 0,
        }
    }

    /// Length of the run of consecutive parts starting at `start`.
    fn run_length(&self, start: u32) -> u32 {
        let mut len = 0;
        while self.contains(start + len) {
            len += 1;
        }
        len
    }

    /// Total number of odd and even strings.
    ///
    /// A run starting at a part value `s` has length `L` when
    /// `s, ..., s+L-1` all occur and `s+L` does not. It is an odd string when
    /// `s = 2k+1` occurs exactly once and `L >= 2k+1`; an even string when
    /// `s = 2k`, `2k-1` is not a part, and `L` is odd with `L >= 2k-1`.
    pub fn string_count(&self) -> u32 {
        let mut distinct = self.parts.clone();
        distinct.dedup();
        let mut count = 0;
        for &s in &distinct {
            let len = self.run_length(s);
            let is_string = if s % 2 == 1 {
                self.multiplicity(s) == 1 && len >= s
            } else {
                !self.contains(s - 1) && len % 2 == 1 && len + 1 >= s
            };
            if is_string {
                count += 1;
            }
        }
        count
    }

    pub fn stats(&self) -> PartitionStats {
        stats_of(self)
    }
}

/// All statistics of one partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PartitionStats {
    pub rank: i64,
    pub crank: i64,
    pub durfee: u32,
    pub smallest_part_count: u32,
    pub string_count: u32,
}

/// Rank, crank, Durfee square, smallest-part count and string count.
/// The empty partition gets all zeros.
pub fn stats_of(lambda: &Partition) -> PartitionStats {
    PartitionStats {
        rank: lambda.rank(),
        crank: lambda.crank(),
        durfee: lambda.durfee(),
        smallest_part_count: lambda.smallest_part_count(),
        string_count: lambda.string_count(),
    }
}

pub fn string_count(lambda: &Partition) -> u32 {
    lambda.string_count()
}

/// Iterator over the partitions of `n` in descending lexicographic order,
/// from `(n)` down to `(1, ..., 1)`.
#[derive(Debug, Clone)]
pub struct Partitions {
    next: Option<Vec<u32>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        // Successor: decrement the last part > 1 and refill greedily with
        // parts no larger than the decremented value.
        if let Some(i) = current.iter().rposition(|&p| p > 1) {
            let mut succ = current[..=i].to_vec();
            succ[i] -= 1;
            let cap = succ[i];
            let mut rest: u32 = current[i + 1..].iter().sum::<u32>() + 1;
            while rest > 0 {
                let part = cap.min(rest);
                succ.push(part);
                rest -= part;
            }
            self.next = Some(succ);
        }
        let n = current.iter().sum();
        Some(Partition { parts: current, n })
    }
}

fn check_cap(n: usize) -> Result<()> {
    if n > ENUMERATION_CAP {
        return Err(Error::Resource(format!(
            "enumeration of partitions of {n} exceeds the cap {ENUMERATION_CAP}"
        )));
    }
    Ok(())
}

pub fn partitions_of(n: usize) -> Result<Partitions> {
    check_cap(n)?;
    let first = if n == 0 { Vec::new() } else { vec![n as u32] };
    Ok(Partitions { next: Some(first) })
}

/// Histogram `m -> #{lambda |- n : stat(lambda) = m}` of the raw statistic.
///
/// For the crank at `n = 1` this is `{-1: 1}`, the value the combinatorial
/// definition gives for the partition `(1)`.
pub fn brute_distribution(n: usize, kind: Statistic) -> Result<BTreeMap<i64, u64>> {
    let mut hist = BTreeMap::new();
    for lambda in partitions_of(n)? {
        let m = match kind {
            Statistic::Crank => lambda.crank(),
            Statistic::Rank => lambda.rank(),
        };
        *hist.entry(m).or_insert(0) += 1;
    }
    Ok(hist)
}

/// Sums of per-partition statistics over all partitions of `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Aggregates {
    pub n: usize,
    pub spt: u64,
    pub ospt_strings: u64,
    pub durfee_sum: u64,
    pub p: u64,
}

pub fn brute_aggregates(n: usize) -> Result<Aggregates> {
    let mut agg = Aggregates {
        n,
        spt: 0,
        ospt_strings: 0,
        durfee_sum: 0,
        p: 0,
    };
    for lambda in partitions_of(n)? {
        let s = stats_of(&lambda);
        agg.spt += s.smallest_part_count as u64;
        agg.ospt_strings += s.string_count as u64;
        agg.durfee_sum += s.durfee as u64;
        agg.p += 1;
    }
    Ok(agg)
}

/// Writes `N,spt,ospt_strings,durfee_sum,p` rows.
pub fn write_aggregates_csv<W: Write>(rows: &[Aggregates], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["N", "spt", "ospt_strings", "durfee_sum", "p"])?;
    for a in rows {
        w.write_record([
            a.n.to_string(),
            a.spt.to_string(),
            a.ospt_strings.to_string(),
            a.durfee_sum.to_string(),
            a.p.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
