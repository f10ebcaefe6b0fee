//! Finite truncations of infinite n-gendered populations.
//!
//! A [`Population`] is a DAG with birthdates on vertices and genders on edges.
//! Truncations of the layered families keep every ancestor of every vertex but
//! cut off descendants; the cut layer is recorded as the *boundary*, and checks
//! that need complete children (forward searches, the gendered-parent axiom on
//! boundary vertices) treat it specially.

mod io;
mod path;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use io::{to_dot, PopulationJson};
pub use path::DirectedPath;

use crate::sequence::GenderSequence;

/// An edge (or vertex) gender, `1..=n`. For two genders `M = 1` and `F = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Gender(u8);

impl Gender {
    pub const M: Gender = Gender(1);
    pub const F: Gender = Gender(2);

    pub fn new(value: u8) -> Option<Self> {
        (value >= 1).then_some(Gender(value))
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Swaps `M` and `F`; other genders are returned unchanged.
    pub fn opposite(self) -> Self {
        match self {
            Gender::M => Gender::F,
            Gender::F => Gender::M,
            g => g,
        }
    }
}

impl TryFrom<u8> for Gender {
    type Error = String;

    fn try_from(value: u8) -> Result<Self, Self::Error> {
        Gender::new(value).ok_or_else(|| "gender must be at least 1".to_owned())
    }
}

impl From<Gender> for u8 {
    fn from(g: Gender) -> u8 {
        g.0
    }
}

impl fmt::Display for Gender {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gender::M => f.write_str("M"),
            Gender::F => f.write_str("F"),
            Gender(g) => write!(f, "{g}"),
        }
    }
}

/// Index of a vertex inside its [`Population`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
    pub birthdate: i64,
    /// Set for vertex-gendered populations.
    pub gender: Option<Gender>,
    /// Layer index for layered families and gameplay populations.
    pub generation: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub src: VertexId,
    pub dst: VertexId,
    pub gender: Gender,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PopulationError {
    #[error("gender count must be positive")]
    NoGenders,
    #[error("duplicate vertex name {0:?}")]
    DuplicateVertex(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("vertex id {0} out of range")]
    BadVertexId(u32),
    #[error("gender {gender} out of range 1..={n}")]
    GenderOutOfRange { gender: u8, n: u8 },
    #[error("duplicate edge {src} -> {dst}")]
    DuplicateEdge { src: String, dst: String },
    #[error("{0} is a root and has no parents")]
    IsRoot(String),
    #[error("{vertex} has no parent of gender {gender}")]
    NoParentOfGender { vertex: String, gender: Gender },
    #[error("depth-{depth} neighbourhood of the roots reaches boundary vertex {vertex}; expand deeper")]
    DepthInsufficient { depth: usize, vertex: String },
    #[error("sequence is not purely periodic")]
    NotPeriodic,
    #[error("cannot restrict a {from}-gendered population to {to} genders")]
    BadRestriction { from: u8, to: u8 },
    #[error("{0} and {1} are not joined by an edge")]
    NotAnEdge(String, String),
}

/// Which axiom a [`Violation`] breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// Finitely many roots.
    A1,
    /// Finitely many children per vertex.
    A2,
    /// Finite sublevel sets and `t(u) < t(v)` along edges.
    A3,
    /// Every non-root has a parent of each gender.
    NGendered,
    /// In vertex-gendered populations an edge carries its initial vertex's gender.
    VertexGendering,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    BirthOrder { src: VertexId, dst: VertexId },
    MissingParent { vertex: VertexId, gender: Gender },
    EdgeGenderMismatch { src: VertexId, dst: VertexId },
}

impl Violation {
    pub fn axiom(&self) -> Axiom {
        match self {
            Violation::BirthOrder { .. } => Axiom::A3,
            Violation::MissingParent { .. } => Axiom::NGendered,
            Violation::EdgeGenderMismatch { .. } => Axiom::VertexGendering,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Incremental constructor for [`Population`].
#[derive(Clone, Debug)]
pub struct PopulationBuilder {
    n: u8,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    boundary: Vec<VertexId>,
    by_name: HashMap<String, VertexId>,
}

impl PopulationBuilder {
    pub fn new(n: u8) -> Self {
        PopulationBuilder {
            n,
            vertices: Vec::new(),
            edges: Vec::new(),
            boundary: Vec::new(),
            by_name: HashMap::new(),
        }
    }

    pub fn with_capacity(n: u8, vertices: usize, edges: usize) -> Self {
        let mut b = Self::new(n);
        b.vertices.reserve(vertices);
        b.edges.reserve(edges);
        b.by_name.reserve(vertices);
        b
    }

    pub fn vertex(
        &mut self,
        name: impl Into<String>,
        birthdate: i64,
        gender: Option<Gender>,
        generation: Option<u32>,
    ) -> Result<VertexId, PopulationError> {
        let name = name.into();
        let id = VertexId(self.vertices.len() as u32);
        if self.by_name.insert(name.clone(), id).is_some() {
            return Err(PopulationError::DuplicateVertex(name));
        }
        self.vertices.push(Vertex { name, birthdate, gender, generation });
        Ok(id)
    }

    pub fn id(&self, name: &str) -> Result<VertexId, PopulationError> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| PopulationError::UnknownVertex(name.to_owned()))
    }

    pub fn edge(&mut self, src: VertexId, dst: VertexId, gender: Gender) -> &mut Self {
        self.edges.push(Edge { src, dst, gender });
        self
    }

    /// Adds an edge whose gender is the source vertex's gender.
    pub fn vertex_gendered_edge(&mut self, src: VertexId, dst: VertexId) -> &mut Self {
        let gender = self.vertices[src.index()].gender.expect("source vertex has a gender");
        self.edge(src, dst, gender)
    }

    pub fn boundary(&mut self, id: VertexId) -> &mut Self {
        self.boundary.push(id);
        self
    }

    pub fn build(self) -> Result<Population, PopulationError> {
        if self.n == 0 {
            return Err(PopulationError::NoGenders);
        }
        let nv = self.vertices.len();
        let check_id = |id: VertexId| {
            if id.index() < nv {
                Ok(())
            } else {
                Err(PopulationError::BadVertexId(id.0))
            }
        };
        let check_gender = |g: Gender| {
            if g.get() <= self.n {
                Ok(())
            } else {
                Err(PopulationError::GenderOutOfRange { gender: g.get(), n: self.n })
            }
        };
        for v in &self.vertices {
            if let Some(g) = v.gender {
                check_gender(g)?;
            }
        }
        let mut parents = vec![Vec::new(); nv];
        let mut children = vec![Vec::new(); nv];
        let mut seen = std::collections::HashSet::with_capacity(self.edges.len());
        for (k, e) in self.edges.iter().enumerate() {
            check_id(e.src)?;
            check_id(e.dst)?;
            check_gender(e.gender)?;
            if !seen.insert((e.src, e.dst)) {
                return Err(PopulationError::DuplicateEdge {
                    src: self.vertices[e.src.index()].name.clone(),
                    dst: self.vertices[e.dst.index()].name.clone(),
                });
            }
            parents[e.dst.index()].push(k as u32);
            children[e.src.index()].push(k as u32);
        }
        // Parent lists in birthdate order so choice functions can take the first match.
        for list in &mut parents {
            list.sort_by_key(|&k| {
                let src = self.edges[k as usize].src;
                (self.vertices[src.index()].birthdate, src)
            });
        }
        let mut boundary = vec![false; nv];
        for id in self.boundary {
            check_id(id)?;
            boundary[id.index()] = true;
        }
        Ok(Population {
            n: self.n,
            vertices: self.vertices,
            edges: self.edges,
            boundary,
            parents,
            children,
            by_name: self.by_name,
        })
    }
}

/// A finite, immutable truncation of an n-gendered population.
#[derive(Clone, Debug)]
pub struct Population {
    n: u8,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    boundary: Vec<bool>,
    parents: Vec<Vec<u32>>,
    children: Vec<Vec<u32>>,
    by_name: HashMap<String, VertexId>,
}

impl Population {
    pub fn gender_count(&self) -> u8 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn vertex(&self, id: VertexId) -> &Vertex {
        &self.vertices[id.index()]
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn name(&self, id: VertexId) -> &str {
        &self.vertices[id.index()].name
    }

    pub fn id(&self, name: &str) -> Result<VertexId, PopulationError> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| PopulationError::UnknownVertex(name.to_owned()))
    }

    pub fn gender_of(&self, id: VertexId) -> Option<Gender> {
        self.vertices[id.index()].gender
    }

    pub fn is_vertex_gendered(&self) -> bool {
        self.vertices.iter().all(|v| v.gender.is_some())
    }

    pub fn is_boundary(&self, id: VertexId) -> bool {
        self.boundary[id.index()]
    }

    pub fn boundary(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.ids().filter(|&id| self.is_boundary(id))
    }

    /// Deepest generation present, or `None` for a complete (hand-built) population.
    pub fn truncation_depth(&self) -> Option<u32> {
        if self.boundary.iter().any(|&b| b) {
            self.vertices.iter().filter_map(|v| v.generation).max()
        } else {
            None
        }
    }

    pub fn parent_edges(&self, id: VertexId) -> impl Iterator<Item = &Edge> + '_ {
        self.parents[id.index()].iter().map(move |&k| &self.edges[k as usize])
    }

    pub fn child_edges(&self, id: VertexId) -> impl Iterator<Item = &Edge> + '_ {
        self.children[id.index()].iter().map(move |&k| &self.edges[k as usize])
    }

    pub fn parents(&self, id: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.parent_edges(id).map(|e| e.src)
    }

    pub fn children(&self, id: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.child_edges(id).map(|e| e.dst)
    }

    pub fn edge_between(&self, src: VertexId, dst: VertexId) -> Option<&Edge> {
        self.child_edges(src).find(|e| e.dst == dst)
    }

    pub fn is_root(&self, id: VertexId) -> bool {
        self.parents[id.index()].is_empty()
    }

    /// The parentless vertices.
    pub fn roots(&self) -> Vec<VertexId> {
        self.ids().filter(|&id| self.is_root(id)).collect()
    }

    /// Checks the population axioms that a finite truncation can violate.
    ///
    /// A1 and A2 hold for every finite graph. A3 reduces to the birth order
    /// along edges. The n-Gendered axiom is checked on every non-root outside
    /// the boundary.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for e in &self.edges {
            if self.vertex(e.src).birthdate >= self.vertex(e.dst).birthdate {
                violations.push(Violation::BirthOrder { src: e.src, dst: e.dst });
            }
            if let Some(g) = self.vertex(e.src).gender {
                if g != e.gender {
                    violations.push(Violation::EdgeGenderMismatch { src: e.src, dst: e.dst });
                }
            }
        }
        for id in self.ids() {
            if self.is_root(id) || self.is_boundary(id) {
                continue;
            }
            for g in 1..=self.n {
                let gender = Gender(g);
                if !self.parent_edges(id).any(|e| e.gender == gender) {
                    violations.push(Violation::MissingParent { vertex: id, gender });
                }
            }
        }
        ValidationReport { violations }
    }

    /// The set `V_i`: vertices at distance at most `i` from some root.
    ///
    /// Fails if the search would need children of a boundary vertex, since those
    /// may be missing from the truncation.
    pub fn depth_set(&self, i: usize) -> Result<Vec<VertexId>, PopulationError> {
        let mut dist = vec![usize::MAX; self.len()];
        let mut queue = VecDeque::new();
        for r in self.roots() {
            dist[r.index()] = 0;
            queue.push_back(r);
        }
        while let Some(v) = queue.pop_front() {
            let d = dist[v.index()];
            if d == i {
                continue;
            }
            if self.is_boundary(v) {
                return Err(PopulationError::DepthInsufficient {
                    depth: i,
                    vertex: self.name(v).to_owned(),
                });
            }
            for c in self.children(v) {
                if dist[c.index()] == usize::MAX {
                    dist[c.index()] = d + 1;
                    queue.push_back(c);
                }
            }
        }
        Ok(self.ids().filter(|id| dist[id.index()] <= i).collect())
    }

    /// Membership in `V_i`, decided through ancestors only, so it is exact for
    /// any truncation that keeps ancestry complete.
    pub fn in_depth_set(&self, u: VertexId, i: usize) -> bool {
        let mut frontier = vec![u];
        let mut seen = vec![false; self.len()];
        seen[u.index()] = true;
        for step in 0..=i {
            if frontier.iter().any(|&v| self.is_root(v)) {
                return true;
            }
            if step == i {
                break;
            }
            let mut next = Vec::new();
            for v in frontier {
                for p in self.parents(v) {
                    if !seen[p.index()] {
                        seen[p.index()] = true;
                        next.push(p);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        false
    }

    /// The choice map `i*`: the gender-`gender` parent of `u` with least birthdate.
    pub fn gendered_parent(&self, u: VertexId, gender: Gender) -> Result<VertexId, PopulationError> {
        if self.is_root(u) {
            return Err(PopulationError::IsRoot(self.name(u).to_owned()));
        }
        self.parent_edges(u)
            .find(|e| e.gender == gender)
            .map(|e| e.src)
            .ok_or_else(|| PopulationError::NoParentOfGender {
                vertex: self.name(u).to_owned(),
                gender,
            })
    }

    /// The s-path to `u` for a periodic sequence `s`.
    ///
    /// Walks backwards from `u` through the gendered-parent maps, applying the
    /// period in reverse, for as many whole periods as stay defined, then reverses.
    pub fn star_path(&self, s: &GenderSequence, u: VertexId) -> Result<DirectedPath, PopulationError> {
        let chain = self.star_chain(s, u, true)?;
        Ok(DirectedPath::from_vertices_unchecked(self, chain))
    }

    /// Shared by [`Population::star_path`] and the realization search. With
    /// `strict` unset a missing gendered parent just ends the walk.
    pub(crate) fn star_chain(
        &self,
        s: &GenderSequence,
        u: VertexId,
        strict: bool,
    ) -> Result<Vec<VertexId>, PopulationError> {
        if !s.is_periodic() {
            return Err(PopulationError::NotPeriodic);
        }
        let period = s.period();
        let p = period.len();
        if self.in_depth_set(u, p - 1) {
            return Ok(vec![u]);
        }
        let mut chain = vec![u];
        let mut cur = u;
        // Birthdates strictly decrease along the walk in a valid population; the
        // length bound only matters for invalid input.
        while chain.len() <= self.len() {
            let gender = period[(p - 1) - (chain.len() - 1) % p];
            if self.is_root(cur) {
                break;
            }
            match self.gendered_parent(cur, gender) {
                Ok(v) => {
                    chain.push(v);
                    cur = v;
                }
                Err(e) if strict => return Err(e),
                Err(_) => break,
            }
        }
        let steps = chain.len() - 1;
        chain.truncate((steps / p) * p + 1);
        chain.reverse();
        Ok(chain)
    }

    /// Disjoint union of the population with a copy, plus cross edges of the new
    /// gender `n + 1` for every edge of gender `n`: `(v', u)` and `(v, u')`.
    pub fn gender_lift(&self) -> Population {
        let n = self.n;
        let lifted = Gender(n + 1);
        let nv = self.len() as u32;
        let mut b = PopulationBuilder::with_capacity(n + 1, 2 * self.len(), 4 * self.edges.len());
        for copy in 0..2 {
            for v in &self.vertices {
                let name = if copy == 0 { v.name.clone() } else { format!("{}'", v.name) };
                b.vertex(name, 2 * v.birthdate + copy, None, v.generation)
                    .expect("copy names are distinct");
            }
        }
        let prime = |v: VertexId| VertexId(v.0 + nv);
        for e in &self.edges {
            b.edge(e.src, e.dst, e.gender);
            b.edge(prime(e.src), prime(e.dst), e.gender);
        }
        for e in self.edges.iter().filter(|e| e.gender == Gender(n)) {
            b.edge(prime(e.src), e.dst, lifted);
            b.edge(e.src, prime(e.dst), lifted);
        }
        for id in self.boundary() {
            b.boundary(id);
            b.boundary(prime(id));
        }
        b.build().expect("lift of a well-formed population is well-formed")
    }

    /// Deletes every edge of gender greater than `n`.
    pub fn gender_restrict(&self, n: u8) -> Result<Population, PopulationError> {
        if n == 0 || n > self.n {
            return Err(PopulationError::BadRestriction { from: self.n, to: n });
        }
        let mut b = PopulationBuilder::with_capacity(n, self.len(), self.edges.len());
        for v in &self.vertices {
            let gender = v.gender.filter(|g| g.get() <= n);
            b.vertex(v.name.clone(), v.birthdate, gender, v.generation)
                .expect("names are unique");
        }
        for e in self.edges.iter().filter(|e| e.gender.get() <= n) {
            b.edge(e.src, e.dst, e.gender);
        }
        for id in self.boundary() {
            b.boundary(id);
        }
        b.build()
    }

    /// Induced sub-population on the vertices not in `removed`, together with the
    /// map from new ids to old ids.
    pub fn without(&self, removed: &[VertexId]) -> (Population, Vec<VertexId>) {
        let mut drop = vec![false; self.len()];
        for id in removed {
            drop[id.index()] = true;
        }
        let mut new_id = vec![None; self.len()];
        let mut old = Vec::new();
        let mut b = PopulationBuilder::new(self.n);
        for id in self.ids().filter(|id| !drop[id.index()]) {
            let v = self.vertex(id);
            new_id[id.index()] =
                Some(b.vertex(v.name.clone(), v.birthdate, v.gender, v.generation).expect("unique"));
            old.push(id);
        }
        for e in &self.edges {
            if let (Some(s), Some(d)) = (new_id[e.src.index()], new_id[e.dst.index()]) {
                b.edge(s, d, e.gender);
            }
        }
        for id in self.boundary() {
            if let Some(n) = new_id[id.index()] {
                b.boundary(n);
            }
        }
        (b.build().expect("induced sub-population is well-formed"), old)
    }
}
