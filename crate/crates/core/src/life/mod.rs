//! Life-like cellular automata on the unbounded square lattice.
//!
//! Coordinates: `x` grows east, `y` grows north. Cells order by `(y, x)`.

pub mod lifeline;
pub mod patterns;
pub mod rle;

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use lifeline::{
    extract_lifeline, gameplay_population, measure_speed, speeds, Direction, ForbiddenPair,
    Lifeline, Speeds,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LifeError {
    #[error("bad ruleset {0:?}: expected the form B3/S23")]
    BadRuleset(String),
    #[error("rulesets with B0 give birth to infinitely many cells")]
    BirthOnZero,
    #[error(transparent)]
    Hypothesis(#[from] HypothesisViolation),
    #[error("forbidden directions must be distinct, got {0} twice")]
    SameDirection(Direction),
    #[error("unknown direction {0:?}")]
    BadDirection(String),
    #[error("no allowed male parent for the birth at {cell} in generation {generation}")]
    NoMaleParent { cell: Cell, generation: usize },
    #[error("survivor at {cell} in generation {generation} has no female parent")]
    NoFemaleParent { cell: Cell, generation: usize },
    #[error("generation {0} is empty")]
    EmptyGeneration(usize),
    #[error("speed needs at least two generations")]
    TooShort,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(i64, i64)", into = "(i64, i64)")]
pub struct Cell {
    pub x: i64,
    pub y: i64,
}

impl Cell {
    pub fn new(x: i64, y: i64) -> Self {
        Cell { x, y }
    }

    /// The eight Moore neighbours.
    pub fn neighbors(self) -> impl Iterator<Item = Cell> {
        (-1..=1)
            .flat_map(move |dy| (-1..=1).map(move |dx| (dx, dy)))
            .filter(|&d| d != (0, 0))
            .map(move |(dx, dy)| Cell::new(self.x + dx, self.y + dy))
    }

    pub fn is_adjacent(self, other: Cell) -> bool {
        self != other && (self.x - other.x).abs() <= 1 && (self.y - other.y).abs() <= 1
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<(i64, i64)> for Cell {
    fn from((x, y): (i64, i64)) -> Self {
        Cell { x, y }
    }
}

impl From<Cell> for (i64, i64) {
    fn from(c: Cell) -> Self {
        (c.x, c.y)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A B/S rule over Moore-neighbourhood counts `0..=8`, stored as bitmasks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ruleset {
    birth: u16,
    survival: u16,
}

impl Ruleset {
    pub const CONWAY: Ruleset = Ruleset { birth: 1 << 3, survival: (1 << 2) | (1 << 3) };

    pub fn new(birth: &[u8], survival: &[u8]) -> Result<Self, LifeError> {
        let mask = |xs: &[u8]| -> Result<u16, LifeError> {
            xs.iter().try_fold(0u16, |m, &k| {
                if k > 8 {
                    Err(LifeError::BadRuleset(format!("neighbour count {k}")))
                } else {
                    Ok(m | 1 << k)
                }
            })
        };
        let r = Ruleset { birth: mask(birth)?, survival: mask(survival)? };
        if r.births(0) {
            return Err(LifeError::BirthOnZero);
        }
        Ok(r)
    }

    pub fn births(&self, count: u8) -> bool {
        self.birth >> count & 1 == 1
    }

    pub fn survives(&self, count: u8) -> bool {
        self.survival >> count & 1 == 1
    }

    pub fn birth_counts(&self) -> Vec<u8> {
        (0..=8).filter(|&k| self.births(k)).collect()
    }

    pub fn survival_counts(&self) -> Vec<u8> {
        (0..=8).filter(|&k| self.survives(k)).collect()
    }

    /// Birth needs at least 3 neighbours and survival at least 1, i.e. the rule
    /// is a sub-rule of B345678/S12345678.
    pub fn is_compliant(&self) -> bool {
        self.birth & 0b111 == 0 && self.survival & 1 == 0
    }
}

impl fmt::Display for Ruleset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = |xs: Vec<u8>| xs.iter().map(|k| k.to_string()).collect::<String>();
        write!(f, "B{}/S{}", digits(self.birth_counts()), digits(self.survival_counts()))
    }
}

impl FromStr for Ruleset {
    type Err = LifeError;

    /// Accepts `B3/S23` in either letter case.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LifeError::BadRuleset(s.to_owned());
        let (b, rest) = s.trim().split_once('/').ok_or_else(bad)?;
        let parse = |part: &str, letter: char| -> Result<Vec<u8>, LifeError> {
            let mut chars = part.chars();
            if !chars.next().is_some_and(|c| c.eq_ignore_ascii_case(&letter)) {
                return Err(bad());
            }
            chars.map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad)).collect()
        };
        Ruleset::new(&parse(b, 'B')?, &parse(rest, 'S')?)
    }
}

impl Serialize for Ruleset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ruleset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// A finite set of live cells.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CellConfig {
    pub live: BTreeSet<Cell>,
}

impl CellConfig {
    pub fn new(cells: impl IntoIterator<Item = Cell>) -> Self {
        CellConfig { live: cells.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.live.len()
    }

    pub fn is_empty(&self) -> bool {
        self.live.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.live.contains(&c)
    }

    pub fn iter(&self) -> impl Iterator<Item = Cell> + '_ {
        self.live.iter().copied()
    }

    /// `(min_x, min_y, max_x, max_y)`, or `None` when empty.
    pub fn bounding_box(&self) -> Option<(i64, i64, i64, i64)> {
        let first = self.live.iter().next()?;
        Some(self.live.iter().fold((first.x, first.y, first.x, first.y), |(a, b, c, d), p| {
            (a.min(p.x), b.min(p.y), c.max(p.x), d.max(p.y))
        }))
    }

    pub fn translate(&self, dx: i64, dy: i64) -> CellConfig {
        CellConfig::new(self.iter().map(|c| Cell::new(c.x + dx, c.y + dy)))
    }

    pub fn live_neighbors(&self, c: Cell) -> u8 {
        c.neighbors().filter(|&n| self.contains(n)).count() as u8
    }
}

/// One synchronous update under `r`.
pub fn step(c: &CellConfig, r: &Ruleset) -> CellConfig {
    let mut counts: HashMap<Cell, u8> = HashMap::new();
    for cell in c.iter() {
        for n in cell.neighbors() {
            *counts.entry(n).or_default() += 1;
        }
    }
    let mut next = BTreeSet::new();
    for cell in c.iter() {
        if r.survives(counts.get(&cell).copied().unwrap_or(0)) {
            next.insert(cell);
        }
    }
    for (cell, k) in counts {
        if !c.contains(cell) && r.births(k) {
            next.insert(cell);
        }
    }
    CellConfig { live: next }
}

/// Which hypothesis of the two-forbidden-directions argument fails.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypothesisViolation {
    #[error("condition 1: the history has no initial configuration")]
    NoInitial,
    #[error("condition 2: generation {0} has no live cell")]
    EmptyGeneration(usize),
    #[error("condition 3: {0} is not a sub-rule of B345678/S12345678")]
    Ruleset(Ruleset),
}

impl HypothesisViolation {
    pub fn condition(&self) -> u8 {
        match self {
            HypothesisViolation::NoInitial => 1,
            HypothesisViolation::EmptyGeneration(_) => 2,
            HypothesisViolation::Ruleset(_) => 3,
        }
    }
}

/// Generations `1..=T` of a game; `generation(i)` is the configuration at time `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameHistory {
    pub ruleset: Ruleset,
    pub generations: Vec<CellConfig>,
}

impl GameHistory {
    /// `initial` followed by `steps` updates, `steps + 1` generations in all.
    pub fn simulate(initial: CellConfig, ruleset: Ruleset, steps: usize) -> Self {
        let mut generations = Vec::with_capacity(steps + 1);
        generations.push(initial);
        for _ in 0..steps {
            let next = step(generations.last().expect("nonempty"), &ruleset);
            generations.push(next);
        }
        GameHistory { ruleset, generations }
    }

    /// The number of generations `T`.
    pub fn len(&self) -> usize {
        self.generations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generations.is_empty()
    }

    /// 1-based.
    pub fn generation(&self, i: usize) -> &CellConfig {
        &self.generations[i - 1]
    }

    /// Generations `1..=t` (all of them if `t` is larger).
    pub fn prefix(&self, t: usize) -> GameHistory {
        GameHistory {
            ruleset: self.ruleset,
            generations: self.generations[..t.min(self.len())].to_vec(),
        }
    }

    /// Conditions 1 to 3, reporting the first failure.
    pub fn check_hypotheses(&self) -> Result<(), HypothesisViolation> {
        if self.generations.is_empty() {
            return Err(HypothesisViolation::NoInitial);
        }
        if let Some(i) = self.generations.iter().position(|g| g.is_empty()) {
            return Err(HypothesisViolation::EmptyGeneration(i + 1));
        }
        if !self.ruleset.is_compliant() {
            return Err(HypothesisViolation::Ruleset(self.ruleset));
        }
        Ok(())
    }

    /// `[[[x, y], ...], ...]`, one sorted array per generation.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.generations).expect("serializable")
    }
}

pub fn check_hypotheses(hist: &GameHistory) -> Result<(), HypothesisViolation> {
    hist.check_hypotheses()
}
