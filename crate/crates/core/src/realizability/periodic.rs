//! Constructive realization of periodic and eventually periodic sequences.

use std::collections::HashMap;

use super::search::{search, Labels};
use super::SearchError;
use crate::population::{DirectedPath, Population, VertexId};
use crate::sequence::GenderSequence;

/// A path of `target_len` vertices spelling `s` on its edges and starting in
/// `V_{p-1}`, `p` the period.
///
/// Candidates are the s-paths to every vertex, cut to `target_len`. Among them
/// the path is chosen one vertex at a time by majority, which is the finite
/// shadow of the pigeonhole argument. If no s-path is long enough, a memoized
/// search from `V_{p-1}` decides.
pub fn realize_periodic(p: &Population, s: &GenderSequence, target_len: usize) -> Result<DirectedPath, SearchError> {
    if !s.is_periodic() {
        return Err(SearchError::NotPeriodic);
    }
    if target_len == 0 {
        return Err(SearchError::InvalidInput("target length must be positive".into()));
    }
    let period = s.period().len();
    let chains: Vec<Vec<VertexId>> = p
        .ids()
        .filter_map(|u| p.star_chain(s, u, false).ok())
        .filter(|c| c.len() >= target_len && p.in_depth_set(c[0], period - 1))
        .map(|mut c| {
            c.truncate(target_len);
            c
        })
        .collect();
    if let Some(path) = majority_path(&chains, target_len) {
        return Ok(DirectedPath::from_vertices_unchecked(p, path));
    }
    let starts: Vec<VertexId> = p.ids().filter(|&v| p.in_depth_set(v, period - 1)).collect();
    search_tail(p, s, &starts, target_len)
}

fn search_tail(
    p: &Population,
    s: &GenderSequence,
    starts: &[VertexId],
    target_len: usize,
) -> Result<DirectedPath, SearchError> {
    let word = s.take(target_len - 1);
    match search(p, starts, Labels::Edge(&word)).path {
        Some(path) => Ok(DirectedPath::from_vertices_unchecked(p, path)),
        None => Err(SearchError::NotFoundAtDepth {
            target_len,
            depth: p.truncation_depth().unwrap_or(0),
        }),
    }
}

/// Follows, position by position, the vertex shared by the most surviving
/// candidates (ties to the smaller id), dropping candidates that disagree.
fn majority_path(chains: &[Vec<VertexId>], len: usize) -> Option<Vec<VertexId>> {
    let mut alive: Vec<&Vec<VertexId>> = chains.iter().collect();
    let mut path = Vec::with_capacity(len);
    for pos in 0..len {
        let mut counts: HashMap<VertexId, usize> = HashMap::new();
        for c in &alive {
            *counts.entry(c[pos]).or_default() += 1;
        }
        let (&v, _) = counts.iter().max_by_key(|&(&v, &n)| (n, std::cmp::Reverse(v)))?;
        alive.retain(|c| c[pos] == v);
        path.push(v);
    }
    Some(path)
}

/// A path of `target_len` vertices spelling `t ⌢ t' t' ...` on its edges.
///
/// With `k = |t|`, the tail is realized in the population with `V_{k-1}`
/// removed, starting at some `u_1`; then `k` gendered-parent steps
/// `t_k, ..., t_1` back from `u_1` prepend the prefix. Every vertex outside
/// `V_{k-1}` has such an ancestry, so the back-extension is always defined.
pub fn realize_eventually_periodic(
    p: &Population,
    s: &GenderSequence,
    target_len: usize,
) -> Result<DirectedPath, SearchError> {
    let tail = s.tail().ok_or(SearchError::NotPeriodic)?;
    let prefix = s.prefix();
    let k = prefix.len();
    if k == 0 {
        return realize_periodic(p, &tail, target_len);
    }
    if target_len <= k {
        return Err(SearchError::InvalidInput(format!(
            "target length {target_len} does not reach past the prefix of length {k}"
        )));
    }
    let removed: Vec<VertexId> = p.ids().filter(|&v| p.in_depth_set(v, k - 1)).collect();
    let (sub, old) = p.without(&removed);
    let tail_len = target_len - k;
    let tail_path = match realize_periodic(&sub, &tail, tail_len) {
        Ok(path) => path,
        Err(SearchError::NotFoundAtDepth { .. }) => {
            let all: Vec<VertexId> = sub.ids().collect();
            search_tail(&sub, &tail, &all, tail_len).map_err(|_| SearchError::NotFoundAtDepth {
                target_len,
                depth: p.truncation_depth().unwrap_or(0),
            })?
        }
        Err(e) => return Err(e),
    };
    let mut back = Vec::with_capacity(target_len);
    let mut cur = old[tail_path.vertices[0].index()];
    for &g in prefix.iter().rev() {
        cur = p.gendered_parent(cur, g)?;
        back.push(cur);
    }
    back.reverse();
    back.extend(tail_path.vertices.iter().map(|v| old[v.index()]));
    Ok(DirectedPath::from_vertices_unchecked(p, back))
}
