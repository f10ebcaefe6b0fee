//! Greedy construction of avoidable sequences in `T_h` and `H_h`.
//!
//! Each step picks the least height (from the policy's base upwards) at which
//! the current prefix is still realizable, then appends the shortest block that
//! makes the prefix impossible there. Carlson blocks are `M^e F`, Hunts blocks
//! `(FM)^e M`. Every prefix is impossible at every height from the base up to
//! the height it was built for.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::represent::{least_nonrepresentable, Scale};
use super::search::HeightProber;
use super::SearchError;
use crate::generators::{FamilyKind, GrowthFunction, LayeredFamily};
use crate::population::Gender;
use crate::sequence::Word;

/// Default hard cap on block lengths and sieve limits.
pub const DEFAULT_CAP: u64 = 1_000_000;

/// Heights scanned past the previous target before giving up.
const HEIGHT_SCAN: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HeightPolicy {
    /// Heights `1, 2, ...`
    #[serde(rename = "k")]
    K,
    /// Heights `2, 3, ...`
    #[serde(rename = "k+1")]
    KPlusOne,
}

impl HeightPolicy {
    pub fn base(self) -> u64 {
        match self {
            HeightPolicy::K => 1,
            HeightPolicy::KPlusOne => 2,
        }
    }
}

impl fmt::Display for HeightPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HeightPolicy::K => "k",
            HeightPolicy::KPlusOne => "k+1",
        })
    }
}

impl FromStr for HeightPolicy {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "k" => Ok(HeightPolicy::K),
            "k+1" => Ok(HeightPolicy::KPlusOne),
            _ => Err(SearchError::InvalidInput(format!("unknown height policy {s:?}"))),
        }
    }
}

/// The block appended for block parameter `e`.
pub fn block(kind: FamilyKind, e: u64) -> Word {
    let mut w = Vec::new();
    match kind {
        FamilyKind::Carlson => {
            w.extend(std::iter::repeat_n(Gender::M, e as usize));
            w.push(Gender::F);
        }
        FamilyKind::Hunts => {
            for _ in 0..e {
                w.extend([Gender::F, Gender::M]);
            }
            w.push(Gender::M);
        }
    }
    Word(w)
}

fn scale(kind: FamilyKind) -> Scale {
    match kind {
        FamilyKind::Carlson => Scale::Unit,
        FamilyKind::Hunts => Scale::Half,
    }
}

fn check_growth(family: &LayeredFamily) -> Result<(), SearchError> {
    family.h.require_divergent()?;
    if family.kind == FamilyKind::Hunts {
        family.h.require_even()?;
    }
    Ok(())
}

/// Least `e > 0` with `prefix ⌢ block(e)` impossible at height `k`.
///
/// The search runs up to the constructive bound (the least non-representable
/// value for `u = |prefix| + k`) when that bound is at most `cap`; running past
/// it is reported as [`SearchError::BoundViolated`]. Otherwise it runs up to
/// `cap` and reports [`SearchError::CapExceeded`].
pub fn minimal_block(prober: &mut HeightProber, prefix: &Word, k: u64, cap: u64) -> Result<u64, SearchError> {
    let family = prober.family().clone();
    check_growth(&family)?;
    let u = prefix.len() as u64 + k;
    let bound = match least_nonrepresentable(u, &family.h, scale(family.kind), cap) {
        Ok(e) if e <= cap => Some(e),
        Ok(_) | Err(SearchError::CapExceeded { .. }) => None,
        Err(other) => return Err(other),
    };
    let limit = bound.unwrap_or(cap);
    for e in 1..=limit {
        if prober.impossible(&prefix.concat(&block(family.kind, e)), k)? {
            return Ok(e);
        }
    }
    match bound {
        Some(bound) => Err(SearchError::BoundViolated { bound, k }),
        None => Err(SearchError::CapExceeded { cap }),
    }
}

pub fn minimal_block_carlson(prefix: &Word, k: u64, h: &GrowthFunction) -> Result<u64, SearchError> {
    minimal_block(&mut HeightProber::new(LayeredFamily::carlson(h.clone())), prefix, k, DEFAULT_CAP)
}

pub fn minimal_block_hunts(prefix: &Word, k: u64, h: &GrowthFunction) -> Result<u64, SearchError> {
    minimal_block(&mut HeightProber::new(LayeredFamily::hunts(h.clone())), prefix, k, DEFAULT_CAP)
}

/// An avoidable-sequence prefix with the data that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSequence {
    pub family: FamilyKind,
    pub h: GrowthFunction,
    pub policy: HeightPolicy,
    pub word: Word,
    /// Block parameter chosen at each step.
    pub e_values: Vec<u64>,
    /// Height each step targeted; prefix `j` is impossible at heights
    /// `base..=heights[j]`.
    pub heights: Vec<u64>,
    /// Length of the word after each step.
    pub prefix_lengths: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct BlockJson {
    gender: String,
    len: usize,
}

#[derive(Serialize, Deserialize)]
struct BlockSequenceJson {
    family: FamilyKind,
    h: GrowthFunction,
    policy: HeightPolicy,
    blocks: Vec<BlockJson>,
    e_values: Vec<u64>,
    heights_verified: Vec<u64>,
    text: String,
}

impl BlockSequence {
    /// Maximal runs of the flattened word.
    pub fn blocks(&self) -> Vec<(Gender, usize)> {
        self.word.runs()
    }

    /// Compact form, e.g. `M^3 F M^5 F`.
    pub fn text(&self) -> String {
        self.word.to_string()
    }

    /// Prefix emitted by step `j` (0-based).
    pub fn prefix(&self, j: usize) -> Word {
        Word(self.word[..self.prefix_lengths[j]].to_vec())
    }

    pub fn to_json(&self) -> String {
        let j = BlockSequenceJson {
            family: self.family,
            h: self.h.clone(),
            policy: self.policy,
            blocks: self.blocks().into_iter().map(|(g, len)| BlockJson { gender: g.to_string(), len }).collect(),
            e_values: self.e_values.clone(),
            heights_verified: self.heights.clone(),
            text: self.text(),
        };
        serde_json::to_string_pretty(&j).expect("serializable")
    }

    /// Re-checks, by fresh exhaustive search, that prefix `j` is impossible at
    /// every height from the base through `heights[j]`.
    pub fn verify(&self) -> Result<(), SearchError> {
        let mut prober = HeightProber::new(LayeredFamily { kind: self.family, h: self.h.clone() });
        for (j, &top) in self.heights.iter().enumerate() {
            let prefix = self.prefix(j);
            for k in self.policy.base()..=top {
                if !prober.impossible(&prefix, k)? {
                    return Err(SearchError::Unverified { prefix: prefix.to_string(), k });
                }
            }
        }
        Ok(())
    }
}

/// `n_blocks` greedy steps from the empty prefix.
pub fn avoidable_sequence(
    family: &LayeredFamily,
    n_blocks: usize,
    policy: HeightPolicy,
    cap: u64,
) -> Result<BlockSequence, SearchError> {
    check_growth(family)?;
    let mut prober = HeightProber::new(family.clone());
    let mut word = Word::default();
    let mut seq = BlockSequence {
        family: family.kind,
        h: family.h.clone(),
        policy,
        word: Word::default(),
        e_values: Vec::with_capacity(n_blocks),
        heights: Vec::with_capacity(n_blocks),
        prefix_lengths: Vec::with_capacity(n_blocks),
    };
    let mut k = policy.base();
    for _ in 0..n_blocks {
        let from = k;
        while !word.is_empty() && prober.impossible(&word, k)? {
            k += 1;
            if k - from > HEIGHT_SCAN {
                return Err(SearchError::HeightScan { from, limit: HEIGHT_SCAN });
            }
        }
        let e = minimal_block(&mut prober, &word, k, cap)?;
        word = word.concat(&block(family.kind, e));
        seq.e_values.push(e);
        seq.heights.push(k);
        seq.prefix_lengths.push(word.len());
        k += 1;
    }
    seq.word = word;
    if family.kind == FamilyKind::Hunts && seq.word.max_run() > 2 {
        return Err(SearchError::RunTooLong { run: seq.word.max_run() });
    }
    Ok(seq)
}

pub fn avoidable_sequence_carlson(
    h: &GrowthFunction,
    n_blocks: usize,
    policy: HeightPolicy,
) -> Result<BlockSequence, SearchError> {
    avoidable_sequence(&LayeredFamily::carlson(h.clone()), n_blocks, policy, DEFAULT_CAP)
}

pub fn avoidable_sequence_hunts(h: &GrowthFunction, n_blocks: usize) -> Result<BlockSequence, SearchError> {
    avoidable_sequence(&LayeredFamily::hunts(h.clone()), n_blocks, HeightPolicy::K, DEFAULT_CAP)
}
