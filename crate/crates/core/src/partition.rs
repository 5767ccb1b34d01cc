//! Ordered (ranked) and unordered set partitions of `{0, .., n-1}`.
//!
//! An [`OrderedPartition`] lists its blocks by rank: block 0 is the set of
//! items tied at the largest latent time, block 1 at the next largest, and so
//! on. With block sizes `d_j`, the at-risk counts are `r_0 = 0`,
//! `r_j = r_{j-1} + d_j`, ending at `r_k = n`.
//!
//! A [`Partition`] is kept in canonical form: items sorted inside each block,
//! blocks sorted by their least element. Equality, ordering and hashing are
//! therefore structural.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

pub const DEFAULT_ENUMERATION_CAP: usize = 8;

fn validate(n: usize, blocks: &[Vec<usize>]) -> Result<()> {
    let mut seen = vec![false; n];
    let mut count = 0;
    for block in blocks {
        if block.is_empty() {
            return Err(Error::InvalidPartition("empty block"));
        }
        for &i in block {
            if i >= n {
                return Err(Error::InvalidPartition("item out of range"));
            }
            if seen[i] {
                return Err(Error::InvalidPartition("item appears twice"));
            }
            seen[i] = true;
            count += 1;
        }
    }
    if count != n {
        return Err(Error::InvalidPartition("blocks do not cover all items"));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        validate(n, &blocks)?;
        blocks.iter_mut().for_each(|b| b.sort_unstable());
        Ok(Self { n, blocks })
    }

    pub fn empty() -> Self {
        Self {
            n: 0,
            blocks: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Block sizes `d_1..d_k` in rank order.
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// At-risk counts `r_1..r_k` (cumulative block sizes).
    pub fn at_risk(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .scan(0, |acc, b| {
                *acc += b.len();
                Some(*acc)
            })
            .collect()
    }

    /// Rank of the block holding `item`.
    pub fn rank_of(&self, item: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&item))
    }

    /// Adds item `n` to the block of rank `rank`.
    pub fn join(&mut self, rank: usize, item: usize) {
        debug_assert_eq!(item, self.n);
        self.blocks[rank].push(item);
        self.n += 1;
    }

    /// Adds item `n` as a new singleton inserted at rank `rank`, pushing
    /// blocks at `rank..` one rank down.
    pub fn insert_new(&mut self, rank: usize, item: usize) {
        debug_assert_eq!(item, self.n);
        self.blocks.insert(rank, vec![item]);
        self.n += 1;
    }

    /// The ordered partition induced on the first `k` items, dropping blocks
    /// left empty.
    pub fn restrict(&self, k: usize) -> OrderedPartition {
        let k = k.min(self.n);
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().copied().filter(|&i| i < k).collect::<Vec<_>>())
            .filter(|b| !b.is_empty())
            .collect();
        OrderedPartition { n: k, blocks }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        validate(n, &blocks)?;
        blocks.iter_mut().for_each(|b| b.sort_unstable());
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self { n, blocks })
    }

    /// Partition from per-item labels; items sharing a label share a block.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut blocks: Vec<(usize, Vec<usize>)> = Vec::new();
        for (item, &label) in labels.iter().enumerate() {
            match blocks.iter_mut().find(|(l, _)| *l == label) {
                Some((_, b)) => b.push(item),
                None => blocks.push((label, vec![item])),
            }
        }
        // First-appearance order is already least-element order.
        Partition {
            n: labels.len(),
            blocks: blocks.into_iter().map(|(_, b)| b).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }
}

pub fn forget_order(m: &OrderedPartition) -> Partition {
    let mut blocks = m.blocks.clone();
    blocks.sort_unstable_by_key(|b| b[0]);
    Partition { n: m.n, blocks }
}

/// Advances `p` to its lexicographic successor; `false` once exhausted.
fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All `k!` rank assignments of the blocks of `p`, in lexicographic order of
/// the block permutation.
pub fn orderings_of(p: &Partition) -> Orderings<'_> {
    Orderings {
        partition: p,
        perm: (0..p.num_blocks()).collect(),
        done: false,
    }
}

pub struct Orderings<'a> {
    partition: &'a Partition,
    perm: Vec<usize>,
    done: bool,
}

impl Iterator for Orderings<'_> {
    type Item = OrderedPartition;

    fn next(&mut self) -> Option<OrderedPartition> {
        if self.done {
            return None;
        }
        let blocks = self
            .perm
            .iter()
            .map(|&i| self.partition.blocks[i].clone())
            .collect();
        self.done = !next_permutation(&mut self.perm);
        Some(OrderedPartition {
            n: self.partition.n,
            blocks,
        })
    }
}

/// Restricted-growth strings of length `n` in lexicographic order.
struct RestrictedGrowth {
    labels: Vec<usize>,
    started: bool,
}

impl RestrictedGrowth {
    fn new(n: usize) -> Self {
        Self {
            labels: vec![0; n],
            started: false,
        }
    }

    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            return true;
        }
        let n = self.labels.len();
        // prefix_max[i] = max(labels[..i])
        let mut prefix_max = vec![0; n];
        for i in 1..n {
            prefix_max[i] = prefix_max[i - 1].max(self.labels[i - 1]);
        }
        for i in (1..n).rev() {
            if self.labels[i] <= prefix_max[i] {
                self.labels[i] += 1;
                self.labels[i + 1..].iter_mut().for_each(|l| *l = 0);
                return true;
            }
        }
        false
    }

    fn partition(&self) -> Partition {
        Partition::from_labels(&self.labels)
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { requested: n, cap })
    } else {
        Ok(())
    }
}

/// Every unordered partition of `{0..n}`, in lexicographic order of the
/// restricted-growth string.
pub fn enumerate_partitions(n: usize, cap: usize) -> Result<Partitions> {
    check_cap(n, cap)?;
    Ok(Partitions {
        rgs: RestrictedGrowth::new(n),
    })
}

pub struct Partitions {
    rgs: RestrictedGrowth,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.rgs.advance() {
            Some(self.rgs.partition())
        } else {
            None
        }
    }
}

/// Every ordered partition of `{0..n}`: restricted-growth strings in
/// lexicographic order, each followed by all permutations of its blocks.
/// For `n = 0` the single empty partition is produced.
pub fn enumerate_ordered(n: usize) -> Result<OrderedPartitions> {
    enumerate_ordered_with_cap(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_ordered_with_cap(n: usize, cap: usize) -> Result<OrderedPartitions> {
    check_cap(n, cap)?;
    Ok(OrderedPartitions {
        rgs: RestrictedGrowth::new(n),
        current: None,
        perm: Vec::new(),
    })
}

pub struct OrderedPartitions {
    rgs: RestrictedGrowth,
    current: Option<Partition>,
    perm: Vec<usize>,
}

impl Iterator for OrderedPartitions {
    type Item = OrderedPartition;

    fn next(&mut self) -> Option<OrderedPartition> {
        let advance = match &self.current {
            None => true,
            Some(_) => !next_permutation(&mut self.perm),
        };
        if advance {
            if !self.rgs.advance() {
                self.current = None;
                return None;
            }
            let p = self.rgs.partition();
            self.perm = (0..p.num_blocks()).collect();
            self.current = Some(p);
        }
        let p = self.current.as_ref()?;
        let blocks = self.perm.iter().map(|&i| p.blocks[i].clone()).collect();
        Some(OrderedPartition { n: p.n, blocks })
    }
}

/// One seating move: join the block at a rank, or open a new block at a rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Seat {
    Join(usize),
    New(usize),
}

/// The moves that build `m` by seating items `0, 1, .., n-1` in order.
pub fn seating_path(m: &OrderedPartition) -> Vec<Seat> {
    (0..m.n)
        .map(|item| {
            let before = m.restrict(item);
            let rank = m.rank_of(item).expect("item is covered");
            // Rank among blocks that already hold an earlier item.
            let nonempty_above = m.blocks[..rank].iter().filter(|b| b[0] < item).count();
            if m.blocks[rank][0] < item {
                Seat::Join(nonempty_above)
            } else {
                debug_assert!(nonempty_above <= before.num_blocks());
                Seat::New(nonempty_above)
            }
        })
        .collect()
}
