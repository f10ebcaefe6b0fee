//! Independent oracles shared by the integration tests. Nothing here calls the
//! library's search or sieve code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use unav_core::population::{Gender, Population, PopulationBuilder, VertexId};
use unav_core::{GrowthFunction, LayeredFamily};

pub const M: Gender = Gender::M;
pub const F: Gender = Gender::F;

/// Every word over {M, F} of length `1..=max_len`.
pub fn all_words(max_len: usize) -> Vec<Vec<Gender>> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for bits in 0u32..(1 << len) {
            out.push((0..len).map(|i| if bits >> i & 1 == 1 { F } else { M }).collect());
        }
    }
    out
}

/// Naive enumeration: does some path from `v` have vertex genders `word`?
/// Explores every path with no memo.
pub fn naive_vertex_path(p: &Population, v: VertexId, word: &[Gender]) -> bool {
    if p.gender_of(v) != Some(word[0]) {
        return false;
    }
    if word.len() == 1 {
        return true;
    }
    p.children(v).any(|c| naive_vertex_path(p, c, &word[1..]))
}

/// Naive impossibility at height `k`, on a truncation built deep enough that
/// no path of `|word|` vertices from `H_k` can reach the missing layers.
pub fn naive_impossible(family: &LayeredFamily, word: &[Gender], k: u64) -> bool {
    let mut before = 0u64;
    let mut generation = 1u32;
    while before + family.h.eval(generation as u64) < k {
        before += family.h.eval(generation as u64);
        generation += 1;
    }
    let position = k - before;
    let p = family.expand(generation + word.len() as u32 + 1);
    let male = p.id(&format!("m{generation}_{position}")).unwrap();
    let female = p.id(&format!("f{generation}_{position}")).unwrap();
    !naive_vertex_path(&p, male, word) && !naive_vertex_path(&p, female, word)
}

/// All edge-gender words of directed paths with at least one edge, restricted
/// to genders `<= max_gender`.
pub fn edge_words(p: &Population, max_gender: u8) -> BTreeSet<Vec<u8>> {
    fn walk(p: &Population, v: VertexId, max: u8, word: &mut Vec<u8>, out: &mut BTreeSet<Vec<u8>>) {
        for e in p.child_edges(v) {
            if e.gender.get() > max {
                continue;
            }
            word.push(e.gender.get());
            out.insert(word.clone());
            walk(p, e.dst, max, word, out);
            word.pop();
        }
    }
    let mut out = BTreeSet::new();
    for v in p.ids() {
        walk(p, v, max_gender, &mut Vec::new(), &mut out);
    }
    out
}

/// Least `e >= 1` such that `e - 1` is not `a + h'(c+1) + ... + h'(c+b)` with
/// `c <= u` and `a <= max h'(1..=u)`, by listing every such sum below `limit`.
pub fn brute_least_nonrepresentable(u: u64, h: impl Fn(u64) -> u64, limit: u64) -> Option<u64> {
    let a_max = (1..=u).map(&h).max().unwrap_or(0);
    let mut seen = vec![false; limit as usize];
    for a in 0..=a_max {
        for c in 0..=u {
            let mut sum = 0;
            let mut b = 0;
            loop {
                if a + sum >= limit {
                    break;
                }
                seen[(a + sum) as usize] = true;
                b += 1;
                sum += h(c + b);
            }
        }
    }
    seen.iter().position(|&s| !s).map(|x| x as u64 + 1)
}

pub fn identity() -> GrowthFunction {
    GrowthFunction::Identity
}

pub fn double() -> GrowthFunction {
    GrowthFunction::Double
}

/// Compact hand-built population: vertices `name:birthdate[:gender]`, edges
/// `src>dst:gender`, boundary names after `|`.
pub fn hand_built(n: u8, vertices: &str, edges: &str, boundary: &str) -> Population {
    let mut b = PopulationBuilder::new(n);
    for v in vertices.split_whitespace() {
        let parts: Vec<&str> = v.split(':').collect();
        let gender = parts.get(2).map(|g| gender(g));
        b.vertex(parts[0], parts[1].parse().unwrap(), gender, None).unwrap();
    }
    for e in edges.split_whitespace() {
        let (ends, g) = e.split_once(':').unwrap();
        let (s, d) = ends.split_once('>').unwrap();
        let (s, d) = (b.id(s).unwrap(), b.id(d).unwrap());
        b.edge(s, d, gender(g));
    }
    for name in boundary.split_whitespace() {
        let id = b.id(name).unwrap();
        b.boundary(id);
    }
    b.build().unwrap()
}

fn gender(g: &str) -> Gender {
    match g {
        "M" => M,
        "F" => F,
        other => Gender::new(other.parse().unwrap()).unwrap(),
    }
}

/// Five small valid 2-gendered populations, at most 20 vertices each.
pub fn small_populations() -> Vec<(&'static str, Population)> {
    vec![
        (
            "two roots, two children",
            hand_built(2, "m:1:M f:2:F a:3:M b:4:F", "m>a:M f>a:F m>b:M f>b:F", ""),
        ),
        (
            "three generations",
            hand_built(
                2,
                "m:1:M f:2:F a:3:M b:4:F c:5:M d:6:F e:7:M",
                "m>a:M f>a:F m>b:M f>b:F a>c:M b>c:F a>d:M b>d:F c>e:M d>e:F b>e:F",
                "",
            ),
        ),
        (
            "edge-gendered, shared parents",
            hand_built(
                2,
                "r1:1 r2:2 r3:3 x:4 y:5 z:6 w:7",
                "r1>x:M r2>x:F r3>x:M r2>y:M r3>y:F r1>z:F x>z:M y>z:F x>w:F y>w:M z>w:M",
                "",
            ),
        ),
        (
            "first Carlson generations, hand-copied",
            hand_built(
                2,
                "m1_1:1:M f1_1:2:F m2_1:3:M f2_1:4:F m2_2:5:M f2_2:6:F \
                 m3_1:7:M f3_1:8:F m3_2:9:M f3_2:10:F m3_3:11:M f3_3:12:F",
                "m1_1>m2_1:M f1_1>m2_1:F f1_1>f2_1:F m1_1>f2_1:M \
                 m2_1>m2_2:M f2_1>m2_2:F f2_1>f2_2:F m2_1>f2_2:M \
                 m2_2>m3_1:M f2_1>m3_1:F f2_2>f3_1:F m2_1>f3_1:M \
                 m3_1>m3_2:M f3_1>m3_2:F f3_1>f3_2:F m3_1>f3_2:M \
                 m3_2>m3_3:M f3_1>m3_3:F f3_2>f3_3:F m3_1>f3_3:M",
                "m3_1 f3_1 m3_2 f3_2 m3_3 f3_3",
            ),
        ),
        (
            "wide layer with a boundary",
            hand_built(
                2,
                "a:1:M b:2:F c:3:M d:4:F e:5:M f:6:F g:7:M h:8:F i:9:M j:10:F \
                 k:11:M l:12:F m:13:M n:14:F o:15:M p:16:F q:17:M r:18:F s:19:M t:20:F",
                "a>c:M b>c:F a>d:M b>d:F c>e:M d>e:F c>f:M d>f:F a>f:M \
                 e>g:M f>g:F e>h:M f>h:F c>i:M f>i:F d>i:F e>j:M d>j:F \
                 g>k:M h>k:F g>l:M h>l:F i>m:M j>m:F i>n:M j>n:F \
                 k>o:M l>o:F m>p:M n>p:F k>q:M n>q:F m>r:M l>r:F o>s:M p>s:F q>t:M r>t:F",
                "o p q r s t",
            ),
        ),
    ]
}
