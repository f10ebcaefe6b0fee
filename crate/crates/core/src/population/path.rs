use super::{Gender, Population, PopulationError, VertexId};

/// A directed path together with the genders of its edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedPath {
    pub vertices: Vec<VertexId>,
    /// `genders[i]` is the gender of the edge `vertices[i] -> vertices[i + 1]`.
    pub genders: Vec<Gender>,
}

impl DirectedPath {
    pub fn new(p: &Population, vertices: Vec<VertexId>) -> Result<Self, PopulationError> {
        let mut genders = Vec::with_capacity(vertices.len().saturating_sub(1));
        for w in vertices.windows(2) {
            let e = p.edge_between(w[0], w[1]).ok_or_else(|| {
                PopulationError::NotAnEdge(p.name(w[0]).to_owned(), p.name(w[1]).to_owned())
            })?;
            genders.push(e.gender);
        }
        Ok(DirectedPath { vertices, genders })
    }

    pub(crate) fn from_vertices_unchecked(p: &Population, vertices: Vec<VertexId>) -> Self {
        Self::new(p, vertices).expect("consecutive vertices are joined by edges")
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn first(&self) -> Option<VertexId> {
        self.vertices.first().copied()
    }

    pub fn last(&self) -> Option<VertexId> {
        self.vertices.last().copied()
    }

    /// Vertex genders along the path; `None` if some vertex is ungendered.
    pub fn vertex_genders(&self, p: &Population) -> Option<Vec<Gender>> {
        self.vertices.iter().map(|&v| p.gender_of(v)).collect()
    }

    pub fn names<'a>(&self, p: &'a Population) -> Vec<&'a str> {
        self.vertices.iter().map(|&v| p.name(v)).collect()
    }

    pub fn display(&self, p: &Population) -> String {
        self.names(p).join(" -> ")
    }
}
