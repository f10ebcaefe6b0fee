//! Exact path search on truncations, memoized on `(vertex, position)`.

use std::collections::HashSet;

use super::SearchError;
use crate::generators::LayeredFamily;
use crate::population::{DirectedPath, Edge, Gender, Population, VertexId};

/// What a path must spell.
#[derive(Clone, Copy, Debug)]
pub enum Labels<'a> {
    /// `g(v_i) = w_i` for every vertex; the path has `|w|` vertices.
    Vertex(&'a [Gender]),
    /// `g(v_i, v_{i+1}) = w_i` for every edge; the path has `|w| + 1` vertices.
    Edge(&'a [Gender]),
}

impl Labels<'_> {
    fn vertex_count(&self) -> usize {
        match self {
            Labels::Vertex(w) => w.len(),
            Labels::Edge(w) => w.len() + 1,
        }
    }

    fn accepts_start(&self, p: &Population, v: VertexId) -> bool {
        match self {
            Labels::Vertex(w) => p.gender_of(v) == Some(w[0]),
            Labels::Edge(_) => true,
        }
    }

    fn accepts_step(&self, p: &Population, pos: usize, e: &Edge) -> bool {
        match self {
            Labels::Vertex(w) => p.gender_of(e.dst) == Some(w[pos + 1]),
            Labels::Edge(w) => e.gender == w[pos],
        }
    }
}

/// Result of a search: the first path found, and whether the search had to
/// give up on some boundary vertex whose children may be missing.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub path: Option<Vec<VertexId>>,
    pub touched_boundary: bool,
}

impl Outcome {
    /// A found path, `None` when absence is proven, or an error when the
    /// truncation was too shallow to decide.
    pub fn exact(self, p: &Population) -> Result<Option<Vec<VertexId>>, SearchError> {
        match self.path {
            Some(path) => Ok(Some(path)),
            None if self.touched_boundary => Err(SearchError::DepthInsufficient {
                depth: p.truncation_depth().unwrap_or(0),
            }),
            None => Ok(None),
        }
    }
}

/// Depth-first search from `starts` in order. States `(v, pos)` that failed
/// are never revisited, so the cost is `O(|V| * len)` edges at most.
pub fn search(p: &Population, starts: &[VertexId], labels: Labels<'_>) -> Outcome {
    let len = labels.vertex_count();
    let mut out = Outcome::default();
    if len == 0 {
        return out;
    }
    let mut dead: HashSet<(VertexId, usize)> = HashSet::new();
    for &s in starts {
        if !labels.accepts_start(p, s) || dead.contains(&(s, 0)) {
            continue;
        }
        // (vertex, position, next child edge to try)
        let mut stack: Vec<(VertexId, usize, usize)> = vec![(s, 0, 0)];
        while let Some(&mut (v, pos, next)) = stack.last_mut() {
            if pos + 1 == len {
                out.path = Some(stack.iter().map(|t| t.0).collect());
                return out;
            }
            if next == 0 && p.is_boundary(v) {
                out.touched_boundary = true;
                dead.insert((v, pos));
                stack.pop();
                continue;
            }
            match p.child_edges(v).nth(next) {
                Some(e) => {
                    stack.last_mut().expect("nonempty").2 += 1;
                    if labels.accepts_step(p, pos, e) && !dead.contains(&(e.dst, pos + 1)) {
                        stack.push((e.dst, pos + 1, 0));
                    }
                }
                None => {
                    dead.insert((v, pos));
                    stack.pop();
                }
            }
        }
    }
    out
}

/// A path starting in `start` whose vertex genders spell `word`, or `None` if
/// the truncation provably has none.
pub fn find_realizing_path(
    p: &Population,
    word: &[Gender],
    start: &[VertexId],
) -> Result<Option<DirectedPath>, SearchError> {
    let found = search(p, start, Labels::Vertex(word)).exact(p)?;
    Ok(found.map(|v| DirectedPath::from_vertices_unchecked(p, v)))
}

/// Truncation depth at which height-`k` queries for words of length `len` are exact.
pub fn query_depth(family: &LayeredFamily, len: usize, k: u64) -> u32 {
    family.height(k).generation + len as u32
}

/// Whether no path of `|word|` vertices gendered by `word` starts in `H_k`.
pub fn impossible_at_height(family: &LayeredFamily, word: &[Gender], k: u64) -> Result<bool, SearchError> {
    HeightProber::new(family.clone()).impossible(word, k)
}

/// Answers height queries against one family, reusing the deepest truncation
/// built so far.
#[derive(Clone, Debug)]
pub struct HeightProber {
    family: LayeredFamily,
    population: Population,
    depth: u32,
}

impl HeightProber {
    pub fn new(family: LayeredFamily) -> Self {
        let population = family.expand(1);
        HeightProber { family, population, depth: 1 }
    }

    pub fn family(&self) -> &LayeredFamily {
        &self.family
    }

    /// The current truncation; paths returned by [`HeightProber::realizing_path`] live here.
    pub fn population(&self) -> &Population {
        &self.population
    }

    fn ensure(&mut self, depth: u32) {
        if depth > self.depth {
            let target = depth.max(self.depth + self.depth / 2);
            self.population = self.family.expand(target);
            self.depth = target;
        }
    }

    /// Both vertices of `H_k`.
    pub fn height_vertices(&self, k: u64) -> Vec<VertexId> {
        let h = self.family.height(k);
        vec![self.family.vertex_id(h.male()), self.family.vertex_id(h.female())]
    }

    pub fn realizing_path(&mut self, word: &[Gender], k: u64) -> Result<Option<DirectedPath>, SearchError> {
        if word.is_empty() {
            return Err(SearchError::EmptyWord);
        }
        if k == 0 {
            return Err(SearchError::InvalidInput("heights start at 1".into()));
        }
        self.ensure(query_depth(&self.family, word.len(), k));
        let starts = self.height_vertices(k);
        find_realizing_path(&self.population, word, &starts)
    }

    pub fn impossible(&mut self, word: &[Gender], k: u64) -> Result<bool, SearchError> {
        Ok(self.realizing_path(word, k)?.is_none())
    }
}
