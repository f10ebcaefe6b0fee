//! The population of a game, lifelines with two forbidden directions, and
//! spaceship speeds.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use super::{Cell, GameHistory, LifeError};
use crate::population::{Gender, Population, PopulationBuilder, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    N,
    NE,
    E,
    SE,
    S,
    SW,
    W,
    NW,
}

impl Direction {
    pub const ALL: [Direction; 8] = [
        Direction::N,
        Direction::NE,
        Direction::E,
        Direction::SE,
        Direction::S,
        Direction::SW,
        Direction::W,
        Direction::NW,
    ];

    /// `(dx, dy)` with north as `+y`.
    pub fn vector(self) -> (i64, i64) {
        match self {
            Direction::N => (0, 1),
            Direction::NE => (1, 1),
            Direction::E => (1, 0),
            Direction::SE => (1, -1),
            Direction::S => (0, -1),
            Direction::SW => (-1, -1),
            Direction::W => (-1, 0),
            Direction::NW => (-1, 1),
        }
    }

    pub fn from_vector(v: (i64, i64)) -> Option<Direction> {
        Direction::ALL.into_iter().find(|d| d.vector() == v)
    }

    /// The direction of `to` as seen from `from`, if they are adjacent.
    pub fn between(from: Cell, to: Cell) -> Option<Direction> {
        Direction::from_vector((to.x - from.x, to.y - from.y))
    }

    pub fn is_diagonal(self) -> bool {
        let (dx, dy) = self.vector();
        dx != 0 && dy != 0
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Direction {
    type Err = LifeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Direction::ALL
            .into_iter()
            .find(|d| d.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| LifeError::BadDirection(s.to_owned()))
    }
}

/// Two distinct compass directions a lifeline must never step in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ForbiddenPair {
    first: Direction,
    second: Direction,
}

impl ForbiddenPair {
    pub fn new(first: Direction, second: Direction) -> Result<Self, LifeError> {
        if first == second {
            return Err(LifeError::SameDirection(first));
        }
        Ok(ForbiddenPair { first, second })
    }

    pub fn directions(&self) -> (Direction, Direction) {
        (self.first, self.second)
    }

    pub fn forbids(&self, d: Direction) -> bool {
        d == self.first || d == self.second
    }

    /// The 28 unordered pairs.
    pub fn all() -> Vec<ForbiddenPair> {
        let mut out = Vec::new();
        for (i, &a) in Direction::ALL.iter().enumerate() {
            for &b in &Direction::ALL[i + 1..] {
                out.push(ForbiddenPair { first: a, second: b });
            }
        }
        out
    }
}

impl fmt::Display for ForbiddenPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.first, self.second)
    }
}

impl FromStr for ForbiddenPair {
    type Err = LifeError;

    /// `N,NE`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s.split_once(',').ok_or_else(|| LifeError::BadDirection(s.to_owned()))?;
        ForbiddenPair::new(a.parse()?, b.parse()?)
    }
}

/// The gameplay population plus the `(cell, generation)` behind each vertex.
struct Gameplay {
    population: Population,
    sites: Vec<(Cell, usize)>,
    index: HashMap<(Cell, usize), VertexId>,
}

fn build(hist: &GameHistory, forbidden: ForbiddenPair) -> Result<Gameplay, LifeError> {
    hist.check_hypotheses()?;
    let t = hist.len();
    let mut b = PopulationBuilder::new(2);
    let mut sites = Vec::new();
    let mut index = HashMap::new();
    for i in 1..=t {
        for c in hist.generation(i).iter() {
            let id = b
                .vertex(format!("{c}@{i}"), i as i64, None, Some(i as u32))
                .expect("cells of one generation are distinct");
            sites.push((c, i));
            index.insert((c, i), id);
            if i == t {
                b.boundary(id);
            }
        }
    }
    for i in 1..t {
        let before = hist.generation(i);
        for d in hist.generation(i + 1).iter() {
            let mut parents: Vec<Cell> = d.neighbors().filter(|&c| before.contains(c)).collect();
            parents.sort();
            let survivor = before.contains(d);
            let male = if survivor {
                if parents.is_empty() {
                    return Err(LifeError::NoFemaleParent { cell: d, generation: i + 1 });
                }
                d
            } else {
                let male = parents
                    .iter()
                    .copied()
                    .find(|&c| !forbidden.forbids(Direction::between(c, d).expect("adjacent")))
                    .ok_or(LifeError::NoMaleParent { cell: d, generation: i + 1 })?;
                if parents.len() < 2 {
                    return Err(LifeError::NoFemaleParent { cell: d, generation: i + 1 });
                }
                male
            };
            let dst = index[&(d, i + 1)];
            b.edge(index[&(male, i)], dst, Gender::M);
            for c in parents.into_iter().filter(|&c| c != male) {
                b.edge(index[&(c, i)], dst, Gender::F);
            }
        }
    }
    let population = b.build().expect("gameplay edges join existing vertices");
    Ok(Gameplay { population, sites, index })
}

/// Vertices `(c, i)` for live cells, birthdate `i`, edges between equal or
/// adjacent cells of consecutive generations. A survivor's self-edge is male;
/// a newborn's male edge comes from its least parent that does not see it in a
/// forbidden direction. Every other edge is female. The last generation is the
/// boundary.
pub fn gameplay_population(hist: &GameHistory, forbidden: ForbiddenPair) -> Result<Population, LifeError> {
    Ok(build(hist, forbidden)?.population)
}

/// Lifeline obtained by tracing male parents back from the least live cell of
/// the last generation.
pub fn extract_lifeline(hist: &GameHistory, forbidden: ForbiddenPair) -> Result<Lifeline, LifeError> {
    let g = build(hist, forbidden)?;
    let t = hist.len();
    let last = hist.generation(t).iter().next().ok_or(LifeError::EmptyGeneration(t))?;
    let mut v = g.index[&(last, t)];
    let mut cells = vec![last];
    while !g.population.is_root(v) {
        v = g.population.gendered_parent(v, Gender::M).expect("every non-root has a male parent");
        cells.push(g.sites[v.index()].0);
    }
    cells.reverse();
    Ok(Lifeline { cells })
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LifelineDefect {
    #[error("lifeline has {got} cells for {expected} generations")]
    Length { got: usize, expected: usize },
    #[error("cell {cell} is dead in generation {generation}")]
    Dead { cell: Cell, generation: usize },
    #[error("step into generation {generation} is not to an equal or adjacent cell")]
    Jump { generation: usize },
    #[error("step into generation {generation} goes {direction}")]
    Forbidden { generation: usize, direction: Direction },
}

/// Cells `c_1..c_T`, one per generation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lifeline {
    pub cells: Vec<Cell>,
}

impl Lifeline {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `None` for a stay, else the step direction.
    pub fn steps(&self) -> Vec<Option<Direction>> {
        self.cells.windows(2).map(|w| Direction::between(w[0], w[1])).collect()
    }

    /// Liveness, adjacency and avoidance of both forbidden directions.
    pub fn check(&self, hist: &GameHistory, forbidden: ForbiddenPair) -> Result<(), LifelineDefect> {
        if self.len() != hist.len() {
            return Err(LifelineDefect::Length { got: self.len(), expected: hist.len() });
        }
        for (i, &c) in self.cells.iter().enumerate() {
            if !hist.generation(i + 1).contains(c) {
                return Err(LifelineDefect::Dead { cell: c, generation: i + 1 });
            }
        }
        for (i, w) in self.cells.windows(2).enumerate() {
            if w[0] == w[1] {
                continue;
            }
            match Direction::between(w[0], w[1]) {
                None => return Err(LifelineDefect::Jump { generation: i + 2 }),
                Some(d) if forbidden.forbids(d) => {
                    return Err(LifelineDefect::Forbidden { generation: i + 2, direction: d })
                }
                Some(_) => {}
            }
        }
        Ok(())
    }

    /// `c_T - c_1`.
    pub fn displacement(&self) -> (i64, i64) {
        match (self.cells.first(), self.cells.last()) {
            (Some(a), Some(b)) => (b.x - a.x, b.y - a.y),
            _ => (0, 0),
        }
    }

    /// Counting bound: with `w` the sum of the two forbidden vectors, each
    /// allowed step changes `w · position` by at most `per_step`, so
    /// `w · displacement <= per_step * (T - 1)`. Returns `(w · displacement, per_step * (T - 1))`.
    pub fn counting_bound(&self, forbidden: ForbiddenPair) -> (i64, i64) {
        let (a, b) = forbidden.directions();
        let w = (a.vector().0 + b.vector().0, a.vector().1 + b.vector().1);
        let dot = |v: (i64, i64)| w.0 * v.0 + w.1 * v.1;
        let per_step = Direction::ALL
            .into_iter()
            .filter(|&d| !forbidden.forbids(d))
            .map(|d| dot(d.vector()))
            .fold(0, i64::max);
        (dot(self.displacement()), per_step * self.len().saturating_sub(1) as i64)
    }

    /// `[[x, y, generation], ...]`
    pub fn to_json(&self) -> String {
        let rows: Vec<(i64, i64, usize)> =
            self.cells.iter().enumerate().map(|(i, c)| (c.x, c.y, i + 1)).collect();
        serde_json::to_string(&rows).expect("serializable")
    }
}

/// Displacement of the bounding-box edge facing `d`, or for a diagonal the
/// smaller of its two orthogonal components, per generation.
pub fn measure_speed(hist: &GameHistory, d: Direction) -> Result<Ratio<i64>, LifeError> {
    let t = hist.len();
    if t < 2 {
        return Err(LifeError::TooShort);
    }
    let boxes = |i: usize| hist.generation(i).bounding_box().ok_or(LifeError::EmptyGeneration(i));
    let (first, last) = (boxes(1)?, boxes(t)?);
    let advance = |o: Direction| match o {
        Direction::E => last.2 - first.2,
        Direction::W => first.0 - last.0,
        Direction::N => last.3 - first.3,
        Direction::S => first.1 - last.1,
        _ => unreachable!("orthogonal"),
    };
    let (dx, dy) = d.vector();
    let horizontal = match dx {
        1 => Some(advance(Direction::E)),
        -1 => Some(advance(Direction::W)),
        _ => None,
    };
    let vertical = match dy {
        1 => Some(advance(Direction::N)),
        -1 => Some(advance(Direction::S)),
        _ => None,
    };
    let cells = match (horizontal, vertical) {
        (Some(h), Some(v)) => h.min(v),
        (Some(h), None) => h,
        (None, Some(v)) => v,
        (None, None) => unreachable!("nonzero vector"),
    };
    Ok(Ratio::new(cells, t as i64 - 1))
}

/// Fastest orthogonal and fastest diagonal heading.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Speeds {
    pub orthogonal: (Direction, Ratio<i64>),
    pub diagonal: (Direction, Ratio<i64>),
}

pub fn speeds(hist: &GameHistory) -> Result<Speeds, LifeError> {
    let mut best: [Option<(Direction, Ratio<i64>)>; 2] = [None, None];
    for d in Direction::ALL {
        let v = measure_speed(hist, d)?;
        let slot = &mut best[d.is_diagonal() as usize];
        if slot.is_none_or(|(_, b)| v > b) {
            *slot = Some((d, v));
        }
    }
    Ok(Speeds { orthogonal: best[0].expect("four headings"), diagonal: best[1].expect("four headings") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::life::{CellConfig, Ruleset};

    fn cells(v: &[(i64, i64)]) -> CellConfig {
        CellConfig::new(v.iter().map(|&p| Cell::from(p)))
    }

    fn n_ne() -> ForbiddenPair {
        ForbiddenPair::new(Direction::N, Direction::NE).unwrap()
    }

    #[test]
    fn block_has_only_self_male_edges() {
        let block = cells(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        let hist = GameHistory::simulate(block, Ruleset::CONWAY, 4);
        let p = gameplay_population(&hist, n_ne()).unwrap();
        assert!(p.validate().is_valid());
        for e in p.edges() {
            let same = p.name(e.src).split('@').next() == p.name(e.dst).split('@').next();
            assert_eq!(e.gender == Gender::M, same);
        }
        let lifeline = extract_lifeline(&hist.prefix(5), n_ne()).unwrap();
        assert!(lifeline.cells.iter().all(|&c| c == lifeline.cells[0]));
    }

    #[test]
    fn male_parent_skips_forbidden_directions() {
        // Birth at (0,0) from (-1,1), (0,1), (1,1): seen from them it lies SE, S, SW.
        let hist = GameHistory::simulate(cells(&[(-1, 1), (0, 1), (1, 1)]), Ruleset::CONWAY, 1);
        let forbidden = ForbiddenPair::new(Direction::SE, Direction::S).unwrap();
        let p = gameplay_population(&hist, forbidden).unwrap();
        let child = p.id("(0,0)@2").unwrap();
        let male = p.gendered_parent(child, Gender::M).unwrap();
        assert_eq!(p.name(male), "(1,1)@1");
    }

    #[test]
    fn male_parent_is_least_allowed_candidate() {
        // Parents lie NW, N, NE of the birth; with N, NE forbidden the NW one
        // still sees the child to its SE and is the least candidate anyway.
        let hist = GameHistory::simulate(cells(&[(-1, 1), (0, 1), (1, 1)]), Ruleset::CONWAY, 1);
        let p = gameplay_population(&hist, n_ne()).unwrap();
        let male = p.gendered_parent(p.id("(0,0)@2").unwrap(), Gender::M).unwrap();
        assert_eq!(p.name(male), "(-1,1)@1");
    }

    #[test]
    fn noncompliant_rule_is_refused() {
        let r: Ruleset = "B2/S23".parse().unwrap();
        let hist = GameHistory::simulate(cells(&[(0, 0), (1, 0)]), r, 2);
        assert!(matches!(gameplay_population(&hist, n_ne()), Err(LifeError::Hypothesis(_))));
    }

    #[test]
    fn pairs_and_parsing() {
        assert_eq!(ForbiddenPair::all().len(), 28);
        assert_eq!("n,ne".parse::<ForbiddenPair>().unwrap(), n_ne());
        assert_eq!("N,N".parse::<ForbiddenPair>(), Err(LifeError::SameDirection(Direction::N)));
        assert_eq!(Direction::between(Cell::new(0, 0), Cell::new(1, -1)), Some(Direction::SE));
    }

    #[test]
    fn still_life_speed_is_zero() {
        let block = cells(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        let hist = GameHistory::simulate(block, Ruleset::CONWAY, 10);
        for d in Direction::ALL {
            assert_eq!(measure_speed(&hist, d).unwrap(), Ratio::from_integer(0));
        }
        assert_eq!(measure_speed(&hist.prefix(1), Direction::N), Err(LifeError::TooShort));
    }
}
