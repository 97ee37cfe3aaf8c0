//! Set partitions of exponent positions whose every block sum is divisible by
//! the group exponent.
//!
//! Two independent enumerators are provided. [`valid_partitions`] recurses on
//! the block containing a fixed position: a valid partition of `X` is
//! `{X \ Y} ∪ Z` where `Y` ranges over the subsets of `X` minus the fixed
//! position with divisible sum and `Z` over the valid partitions of `Y`
//! (`Y = ∅` gives `{X}`). [`naive_valid_partitions`] walks every set partition
//! as a restricted growth string and filters.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{chi, ExponentMultiset, SymsumError, MAX_MASK_LEN};

/// A set partition of `{0, .., k-1}` in canonical form: every block sorted,
/// blocks ordered by their smallest element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        Self { blocks }
    }

    fn from_masks(masks: &[u32]) -> Self {
        Self::new(
            masks
                .iter()
                .map(|&mask| (0..32).filter(|i| mask >> i & 1 == 1).collect())
                .collect(),
        )
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// `prod chi(P)` over the blocks.
    pub fn weight(&self, n: u64) -> BigInt {
        self.blocks
            .iter()
            .map(|b| chi(b.len(), n))
            .fold(BigInt::one(), |acc, c| acc * c)
    }
}

impl fmt::Display for Partition {
    /// 1-based, e.g. `{1,2}{3,4}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            let items: Vec<String> = b.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        Ok(())
    }
}

/// A collection of partitions, kept sorted so that two families compare equal
/// exactly when they contain the same partitions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartitionFamily {
    partitions: Vec<Partition>,
}

impl PartitionFamily {
    pub fn new(mut partitions: Vec<Partition>) -> Self {
        partitions.sort();
        partitions.dedup();
        Self { partitions }
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    /// `sum over partitions of prod chi(P)`.
    pub fn total_weight(&self, n: u64) -> BigInt {
        self.partitions
            .iter()
            .map(|p| p.weight(n))
            .fold(BigInt::zero(), |acc, w| acc + w)
    }
}

/// Residue mod lambda of every subset sum, indexed by bitmask.
pub(crate) fn mask_sums(a: &ExponentMultiset, lambda: u64) -> Vec<u64> {
    let residues = a.residues(lambda);
    let k = residues.len();
    let mut sums = vec![0u64; 1 << k];
    for mask in 1usize..(1 << k) {
        let low = mask.trailing_zeros() as usize;
        let prev = sums[mask & (mask - 1)] as u128;
        sums[mask] = ((prev + residues[low] as u128) % lambda as u128) as u64;
    }
    sums
}

fn check_inputs(a: &ExponentMultiset, lambda: u64) -> Result<(), SymsumError> {
    if lambda == 0 {
        return Err(SymsumError::ZeroLambda);
    }
    if a.len() > MAX_MASK_LEN {
        return Err(SymsumError::TooLarge {
            k: a.len(),
            max: MAX_MASK_LEN,
        });
    }
    Ok(())
}

/// All partitions of the positions of `a` with `lambda | s(P)` for every block,
/// by recursion on the block holding the smallest remaining position.
pub fn valid_partitions(a: &ExponentMultiset, lambda: u64) -> Result<PartitionFamily, SymsumError> {
    check_inputs(a, lambda)?;
    let sums = mask_sums(a, lambda);
    let full = ((1u64 << a.len()) - 1) as u32;
    let mut memo = HashMap::new();
    let found = recurse(full, &sums, &mut memo);
    Ok(PartitionFamily::new(
        found
            .iter()
            .map(|masks| Partition::from_masks(masks))
            .collect(),
    ))
}

fn recurse(set: u32, sums: &[u64], memo: &mut HashMap<u32, Vec<Vec<u32>>>) -> Vec<Vec<u32>> {
    if set == 0 {
        return vec![Vec::new()];
    }
    if sums[set as usize] != 0 {
        return Vec::new();
    }
    if let Some(hit) = memo.get(&set) {
        return hit.clone();
    }
    let fixed = set & set.wrapping_neg();
    let rest = set ^ fixed;
    let mut out = Vec::new();
    // Y runs over all subsets of `rest`, the empty one included
    let mut y = rest;
    loop {
        if sums[y as usize] == 0 {
            for mut z in recurse(y, sums, memo) {
                z.push(set ^ y);
                out.push(z);
            }
        }
        if y == 0 {
            break;
        }
        y = (y - 1) & rest;
    }
    memo.insert(set, out.clone());
    out
}

/// Every set partition of `{0, .., k-1}`, as restricted growth strings in
/// lexicographic order.
pub fn all_set_partitions(k: usize) -> Vec<Partition> {
    if k == 0 {
        return vec![Partition::new(Vec::new())];
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; k];
    loop {
        let blocks = rgs.iter().max().unwrap() + 1;
        let mut parts = vec![Vec::new(); blocks];
        for (i, &b) in rgs.iter().enumerate() {
            parts[b].push(i);
        }
        out.push(Partition::new(parts));

        // next string: bump the rightmost position that may still grow
        let mut i = k - 1;
        loop {
            if i == 0 {
                return out;
            }
            let prefix_max = rgs[..i].iter().copied().max().unwrap();
            if rgs[i] <= prefix_max {
                rgs[i] += 1;
                for r in &mut rgs[i + 1..] {
                    *r = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// Enumerate-and-filter reference for [`valid_partitions`].
pub fn naive_valid_partitions(
    a: &ExponentMultiset,
    lambda: u64,
) -> Result<PartitionFamily, SymsumError> {
    check_inputs(a, lambda)?;
    let residues = a.residues(lambda);
    let kept = all_set_partitions(a.len())
        .into_iter()
        .filter(|p| {
            p.blocks()
                .iter()
                .all(|b| b.iter().map(|&i| residues[i] as u128).sum::<u128>() % lambda as u128 == 0)
        })
        .collect();
    Ok(PartitionFamily::new(kept))
}
