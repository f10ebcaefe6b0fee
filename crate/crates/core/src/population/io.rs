//! JSON and DOT forms of a population.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Gender, Population, PopulationBuilder, PopulationError, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: String,
    pub birthdate: i64,
    pub gender: Option<Gender>,
    pub generation: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub src: String,
    pub dst: String,
    pub gender: Gender,
}

/// Serialized population. Vertices are ordered by birthdate and edges by the
/// positions of their endpoints in that order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PopulationJson {
    pub n: u8,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
    #[serde(default)]
    pub boundary: Vec<String>,
}

impl From<&Population> for PopulationJson {
    fn from(p: &Population) -> Self {
        let mut order: Vec<VertexId> = p.ids().collect();
        order.sort_by_key(|&id| (p.vertex(id).birthdate, id));
        let mut rank = vec![0usize; p.len()];
        for (r, id) in order.iter().enumerate() {
            rank[id.index()] = r;
        }
        let vertices = order
            .iter()
            .map(|&id| {
                let v = p.vertex(id);
                VertexJson {
                    id: v.name.clone(),
                    birthdate: v.birthdate,
                    gender: v.gender,
                    generation: v.generation,
                }
            })
            .collect();
        let mut edges: Vec<_> = p.edges().to_vec();
        edges.sort_by_key(|e| (rank[e.src.index()], rank[e.dst.index()]));
        let edges = edges
            .iter()
            .map(|e| EdgeJson {
                src: p.name(e.src).to_owned(),
                dst: p.name(e.dst).to_owned(),
                gender: e.gender,
            })
            .collect();
        let boundary = order
            .iter()
            .filter(|&&id| p.is_boundary(id))
            .map(|&id| p.name(id).to_owned())
            .collect();
        PopulationJson { n: p.gender_count(), vertices, edges, boundary }
    }
}

impl TryFrom<PopulationJson> for Population {
    type Error = PopulationError;

    fn try_from(j: PopulationJson) -> Result<Self, Self::Error> {
        let mut b = PopulationBuilder::with_capacity(j.n, j.vertices.len(), j.edges.len());
        for v in j.vertices {
            b.vertex(v.id, v.birthdate, v.gender, v.generation)?;
        }
        for e in &j.edges {
            let (s, d) = (b.id(&e.src)?, b.id(&e.dst)?);
            b.edge(s, d, e.gender);
        }
        for name in &j.boundary {
            let id = b.id(name)?;
            b.boundary(id);
        }
        b.build()
    }
}

impl Population {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PopulationJson::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Population, crate::Error> {
        let j: PopulationJson = serde_json::from_str(text)?;
        Ok(Population::try_from(j)?)
    }
}

const EDGE_COLORS: [&str; 6] = ["blue", "red", "darkgreen", "orange", "purple", "brown"];

/// Graphviz rendering: one rank per generation, boxes for `M`, ellipses for
/// `F`, edges coloured by gender.
pub fn to_dot(p: &Population) -> String {
    let mut out = String::from("digraph population {\n  rankdir=TB;\n");
    let mut ranks: BTreeMap<u32, Vec<VertexId>> = BTreeMap::new();
    for id in p.ids() {
        let v = p.vertex(id);
        let shape = match v.gender {
            Some(Gender::M) => "box",
            Some(Gender::F) => "ellipse",
            _ => "circle",
        };
        let _ = writeln!(out, "  \"{}\" [label=\"{}\", shape={}];", v.name, v.name, shape);
        if let Some(g) = v.generation {
            ranks.entry(g).or_default().push(id);
        }
    }
    for (g, ids) in &ranks {
        let _ = write!(out, "  {{ rank=same; /* generation {g} */");
        for id in ids {
            let _ = write!(out, " \"{}\";", p.name(*id));
        }
        out.push_str(" }\n");
    }
    for e in p.edges() {
        let color = EDGE_COLORS[(e.gender.get() as usize - 1) % EDGE_COLORS.len()];
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [color={}, label=\"{}\"];",
            p.name(e.src),
            p.name(e.dst),
            color,
            e.gender
        );
    }
    out.push_str("}\n");
    out
}
