//! The two layered population families: the Carlson family `T_h` and the
//! Hunts family `H_h`.
//!
//! Generation `n` holds males `m{n}_1..m{n}_{h(n)}` and females
//! `f{n}_1..f{n}_{h(n)}`. Birthdates follow (generation, pair index, male
//! first), so the vertex index of a truncation is also its birth order.

pub mod structure;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::life::{gameplay_population, ForbiddenPair, GameHistory};
use crate::population::{Gender, Population, PopulationBuilder, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrowthError {
    #[error("h(n) must be at least 1 for every n >= 1")]
    NotPositive,
    #[error("growth function does not diverge")]
    NotDivergent,
    #[error("growth function is not even everywhere")]
    NotEven,
}

/// A map `h: N+ -> N+`, the per-generation pair count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GrowthFunction {
    /// `n -> n`
    Identity,
    /// `n -> 2n`
    Double,
    /// `n -> a*n + b`
    Linear { a: u64, b: i64 },
    /// `values[n-1]` for `n <= values.len()`, `tail(n)` afterwards.
    Table { values: Vec<u64>, tail: Box<GrowthFunction> },
}

impl GrowthFunction {
    pub fn linear(a: u64, b: i64) -> Result<Self, GrowthError> {
        let h = GrowthFunction::Linear { a, b };
        h.check()?;
        Ok(h)
    }

    pub fn table(values: Vec<u64>, tail: GrowthFunction) -> Result<Self, GrowthError> {
        let h = GrowthFunction::Table { values, tail: Box::new(tail) };
        h.check()?;
        Ok(h)
    }

    /// Checks `h(n) >= 1` for all `n >= 1`.
    pub fn check(&self) -> Result<(), GrowthError> {
        let ok = match self {
            GrowthFunction::Identity | GrowthFunction::Double => true,
            // a*n + b is nondecreasing, so n = 1 is the minimum.
            GrowthFunction::Linear { a, b } => (*a as i64).checked_add(*b).is_some_and(|v| v >= 1),
            GrowthFunction::Table { values, tail } => {
                tail.check()?;
                values.iter().all(|&v| v >= 1)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(GrowthError::NotPositive)
        }
    }

    /// `h(n)` for `n >= 1`.
    pub fn eval(&self, n: u64) -> u64 {
        debug_assert!(n >= 1);
        match self {
            GrowthFunction::Identity => n,
            GrowthFunction::Double => 2 * n,
            GrowthFunction::Linear { a, b } => (*a as i64 * n as i64 + b) as u64,
            GrowthFunction::Table { values, tail } => match values.get(n as usize - 1) {
                Some(&v) => v,
                None => tail.eval(n),
            },
        }
    }

    /// Whether `h(n) -> infinity`.
    pub fn diverges(&self) -> bool {
        match self {
            GrowthFunction::Identity | GrowthFunction::Double => true,
            GrowthFunction::Linear { a, .. } => *a > 0,
            GrowthFunction::Table { tail, .. } => tail.diverges(),
        }
    }

    /// Whether `h(n)` is even for every `n`.
    pub fn is_even(&self) -> bool {
        match self {
            GrowthFunction::Identity => false,
            GrowthFunction::Double => true,
            GrowthFunction::Linear { a, b } => a % 2 == 0 && b % 2 == 0,
            GrowthFunction::Table { values, tail } => {
                values.iter().all(|v| v % 2 == 0) && tail.is_even()
            }
        }
    }

    pub fn require_divergent(&self) -> Result<(), GrowthError> {
        if self.diverges() {
            Ok(())
        } else {
            Err(GrowthError::NotDivergent)
        }
    }

    pub fn require_even(&self) -> Result<(), GrowthError> {
        if self.is_even() {
            Ok(())
        } else {
            Err(GrowthError::NotEven)
        }
    }
}

impl fmt::Display for GrowthFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthFunction::Identity => f.write_str("n->n"),
            GrowthFunction::Double => f.write_str("n->2n"),
            GrowthFunction::Linear { a, b } => write!(f, "n->{a}n{b:+}"),
            GrowthFunction::Table { values, tail } => write!(f, "{values:?} then {tail}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Carlson,
    Hunts,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Carlson => "carlson",
            FamilyKind::Hunts => "hunts",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sex {
    Male,
    Female,
}

impl Sex {
    pub fn gender(self) -> Gender {
        match self {
            Sex::Male => Gender::M,
            Sex::Female => Gender::F,
        }
    }

    pub fn from_gender(g: Gender) -> Option<Sex> {
        match g {
            Gender::M => Some(Sex::Male),
            Gender::F => Some(Sex::Female),
            _ => None,
        }
    }
}

/// Position of a vertex in a layered family: `m{generation}_{index}` or `f...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slot {
    pub sex: Sex,
    pub generation: u32,
    pub index: u64,
}

impl Slot {
    pub fn male(generation: u32, index: u64) -> Self {
        Slot { sex: Sex::Male, generation, index }
    }

    pub fn female(generation: u32, index: u64) -> Self {
        Slot { sex: Sex::Female, generation, index }
    }

    pub fn name(&self) -> String {
        let c = match self.sex {
            Sex::Male => 'm',
            Sex::Female => 'f',
        };
        format!("{c}{}_{}", self.generation, self.index)
    }
}

/// The pair `H_i = {m̂_i, f̂_i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Height {
    pub index: u64,
    pub generation: u32,
    /// Index of the pair inside its generation.
    pub position: u64,
}

impl Height {
    pub fn male(&self) -> Slot {
        Slot::male(self.generation, self.position)
    }

    pub fn female(&self) -> Slot {
        Slot::female(self.generation, self.position)
    }

    pub fn slot(&self, sex: Sex) -> Slot {
        Slot { sex, generation: self.generation, index: self.position }
    }
}

/// `T_h` or `H_h` for a fixed growth function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayeredFamily {
    pub kind: FamilyKind,
    pub h: GrowthFunction,
}

impl LayeredFamily {
    pub fn carlson(h: GrowthFunction) -> Self {
        LayeredFamily { kind: FamilyKind::Carlson, h }
    }

    pub fn hunts(h: GrowthFunction) -> Self {
        LayeredFamily { kind: FamilyKind::Hunts, h }
    }

    /// Number of pairs in generations `1..=generation`.
    pub fn pairs_through(&self, generation: u32) -> u64 {
        (1..=generation as u64).map(|n| self.h.eval(n)).sum()
    }

    /// Id of `slot` in any truncation of depth at least `slot.generation`.
    pub fn vertex_id(&self, slot: Slot) -> VertexId {
        let pair = self.pairs_through(slot.generation - 1) + slot.index - 1;
        let offset = match slot.sex {
            Sex::Male => 0,
            Sex::Female => 1,
        };
        VertexId((2 * pair + offset) as u32)
    }

    /// The height `H_i`: the generation is the least `n` whose cumulative pair
    /// count reaches `i`.
    pub fn height(&self, i: u64) -> Height {
        assert!(i >= 1, "heights are indexed from 1");
        let mut generation = 1u32;
        let mut before = 0u64;
        loop {
            let here = self.h.eval(generation as u64);
            if before + here >= i {
                return Height { index: i, generation, position: i - before };
            }
            before += here;
            generation += 1;
        }
    }

    /// Truncation holding generations `1..=depth`; the last generation is the boundary.
    pub fn expand(&self, depth: u32) -> Population {
        assert!(depth >= 1, "depth must be positive");
        let sizes: Vec<u64> = (1..=depth as u64).map(|n| self.h.eval(n)).collect();
        let total: u64 = sizes.iter().sum();
        let mut b = PopulationBuilder::with_capacity(2, 2 * total as usize, 4 * total as usize);
        let mut birthdate = 0i64;
        for (g, &size) in sizes.iter().enumerate() {
            let generation = g as u32 + 1;
            for i in 1..=size {
                for slot in [Slot::male(generation, i), Slot::female(generation, i)] {
                    birthdate += 1;
                    b.vertex(slot.name(), birthdate, Some(slot.sex.gender()), Some(generation))
                        .expect("slot names are unique");
                }
            }
        }
        let id = |s: Slot| self.vertex_id(s);
        for (g, &size) in sizes.iter().enumerate() {
            let n = g as u32 + 1;
            if n > 1 {
                let prev = sizes[g - 1];
                let (m_parents, f_parents) = match self.kind {
                    FamilyKind::Carlson => (
                        [Slot::male(n - 1, prev), Slot::female(n - 1, 1)],
                        [Slot::female(n - 1, prev), Slot::male(n - 1, 1)],
                    ),
                    FamilyKind::Hunts => (
                        [Slot::male(n - 1, 1), Slot::female(n - 1, prev)],
                        [Slot::male(n - 1, prev), Slot::female(n - 1, prev)],
                    ),
                };
                for p in m_parents {
                    b.vertex_gendered_edge(id(p), id(Slot::male(n, 1)));
                }
                for p in f_parents {
                    b.vertex_gendered_edge(id(p), id(Slot::female(n, 1)));
                }
            }
            for i in 1..size {
                let (m_parents, f_parents) = match self.kind {
                    FamilyKind::Carlson => (
                        [Slot::male(n, i), Slot::female(n, 1)],
                        [Slot::female(n, i), Slot::male(n, 1)],
                    ),
                    FamilyKind::Hunts => (
                        [Slot::male(n, 1), Slot::female(n, i)],
                        [Slot::female(n, i), Slot::male(n, i)],
                    ),
                };
                for p in m_parents {
                    b.vertex_gendered_edge(id(p), id(Slot::male(n, i + 1)));
                }
                for p in f_parents {
                    b.vertex_gendered_edge(id(p), id(Slot::female(n, i + 1)));
                }
            }
        }
        let first_boundary = self.vertex_id(Slot::male(depth, 1)).0;
        for k in first_boundary..(2 * total) as u32 {
            b.boundary(VertexId(k));
        }
        b.build().expect("family truncations are well-formed")
    }
}

/// Anything that can be expanded into deeper and deeper truncations.
#[derive(Clone, Debug)]
pub enum PopulationFamily {
    Layered(LayeredFamily),
    /// The gendered population of a recorded Life-like game.
    Gameplay { history: Arc<GameHistory>, forbidden: ForbiddenPair },
}

impl PopulationFamily {
    /// Generations `1..=depth`. Gameplay families are capped at the recorded length.
    pub fn expand(&self, depth: u32) -> Result<Population, crate::Error> {
        match self {
            PopulationFamily::Layered(f) => Ok(f.expand(depth)),
            PopulationFamily::Gameplay { history, forbidden } => {
                let prefix = history.prefix(depth as usize);
                Ok(gameplay_population(&prefix, *forbidden)?)
            }
        }
    }
}

/// CLI-facing family descriptor, e.g.
/// `{"kind":"carlson","h":{"kind":"identity"},"depth":4}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub kind: FamilyKind,
    pub h: GrowthFunction,
    pub depth: u32,
}

impl FamilyDescriptor {
    pub fn family(&self) -> LayeredFamily {
        LayeredFamily { kind: self.kind, h: self.h.clone() }
    }
}

pub fn carlson_population(h: &GrowthFunction, depth: u32) -> Population {
    LayeredFamily::carlson(h.clone()).expand(depth)
}

pub fn hunts_population(h: &GrowthFunction, depth: u32) -> Population {
    LayeredFamily::hunts(h.clone()).expand(depth)
}
