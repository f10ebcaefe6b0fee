//! Executable checks of the structural properties of `T_h` and `H_h`
//! truncations. Each check is exhaustive over the given truncation.

use std::fmt;

use super::{FamilyKind, LayeredFamily, Sex, Slot};
use crate::population::{Gender, Population, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureViolation {
    pub part: u8,
    pub detail: String,
}

impl fmt::Display for StructureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "part {}: {}", self.part, self.detail)
    }
}

fn fail(part: u8, detail: String) -> Result<(), StructureViolation> {
    Err(StructureViolation { part, detail })
}

impl LayeredFamily {
    /// Slot of every vertex of a truncation produced by [`LayeredFamily::expand`].
    pub fn slots(&self, p: &Population) -> Vec<Slot> {
        let mut out = Vec::with_capacity(p.len());
        let mut generation = 1u32;
        while out.len() < p.len() {
            for i in 1..=self.h.eval(generation as u64) {
                out.push(Slot::male(generation, i));
                out.push(Slot::female(generation, i));
            }
            generation += 1;
        }
        out.truncate(p.len());
        out
    }
}

/// Part 1: the truncation is a valid 2-gendered population with roots `m1_1`, `f1_1`.
pub fn check_population(family: &LayeredFamily, p: &Population) -> Result<(), StructureViolation> {
    let report = p.validate();
    if !report.is_valid() {
        return fail(1, format!("{} axiom violations, first {:?}", report.violations.len(), report.violations[0]));
    }
    let roots = p.roots();
    let expected = vec![family.vertex_id(Slot::male(1, 1)), family.vertex_id(Slot::female(1, 1))];
    if roots != expected {
        return fail(1, format!("roots are {:?}", roots.iter().map(|&r| p.name(r)).collect::<Vec<_>>()));
    }
    Ok(())
}

/// Part 2. Carlson: a male with a daughter or a female with a son has index 1.
/// Hunts: a male with a son has index 1.
pub fn check_cross_parents(family: &LayeredFamily, p: &Population) -> Result<(), StructureViolation> {
    let slots = family.slots(p);
    for e in p.edges() {
        let (src, dst) = (slots[e.src.index()], slots[e.dst.index()]);
        let constrained = match family.kind {
            FamilyKind::Carlson => src.sex != dst.sex,
            FamilyKind::Hunts => src.sex == Sex::Male && dst.sex == Sex::Male,
        };
        if constrained && src.index != 1 {
            return fail(2, format!("{} is a parent of {}", src.name(), dst.name()));
        }
    }
    Ok(())
}

/// Part 3: every edge stays in its generation or moves to the next one.
pub fn check_no_skips(family: &LayeredFamily, p: &Population) -> Result<(), StructureViolation> {
    let slots = family.slots(p);
    for e in p.edges() {
        let (src, dst) = (slots[e.src.index()], slots[e.dst.index()]);
        if dst.generation != src.generation && dst.generation != src.generation + 1 {
            return fail(3, format!("edge {} -> {} skips a generation", src.name(), dst.name()));
        }
    }
    Ok(())
}

/// Part 4, by enumerating every path of the relevant kind. Carlson: all-male
/// paths contain every male of each strictly intermediate generation. Hunts:
/// gender-alternating paths contain exactly one of `m{p}_k`, `f{p}_k` for every
/// strictly intermediate generation `p` and every `k`.
pub fn check_sweeps(family: &LayeredFamily, p: &Population) -> Result<(), StructureViolation> {
    let slots = family.slots(p);
    let mut walker = Sweep { family, p, slots: &slots, path: Vec::new(), hits: vec![0; p.len()] };
    for start in p.ids() {
        if family.kind == FamilyKind::Carlson && p.gender_of(start) != Some(Gender::M) {
            continue;
        }
        walker.extend(start)?;
    }
    Ok(())
}

struct Sweep<'a> {
    family: &'a LayeredFamily,
    p: &'a Population,
    slots: &'a [Slot],
    path: Vec<VertexId>,
    /// Occurrences of each vertex on the current path.
    hits: Vec<u32>,
}

impl Sweep<'_> {
    fn extend(&mut self, v: VertexId) -> Result<(), StructureViolation> {
        if let Some(&last) = self.path.last() {
            let (from, to) = (self.slots[last.index()].generation, self.slots[v.index()].generation);
            let first = self.slots[self.path[0].index()].generation;
            // Generation `from` is now complete and strictly intermediate.
            if to > from && from > first {
                self.check_generation(from)?;
            }
        }
        self.path.push(v);
        self.hits[v.index()] += 1;
        let next: Vec<VertexId> = self
            .p
            .children(v)
            .filter(|&c| match self.family.kind {
                FamilyKind::Carlson => self.p.gender_of(c) == Some(Gender::M),
                FamilyKind::Hunts => self.p.gender_of(c) != self.p.gender_of(v),
            })
            .collect();
        for c in next {
            self.extend(c)?;
        }
        self.hits[v.index()] -= 1;
        self.path.pop();
        Ok(())
    }

    fn check_generation(&self, g: u32) -> Result<(), StructureViolation> {
        for k in 1..=self.family.h.eval(g as u64) {
            let m = self.hits[self.family.vertex_id(Slot::male(g, k)).index()];
            let f = self.hits[self.family.vertex_id(Slot::female(g, k)).index()];
            let ok = match self.family.kind {
                FamilyKind::Carlson => m == 1,
                FamilyKind::Hunts => m + f == 1,
            };
            if !ok {
                let path: Vec<&str> = self.path.iter().map(|&v| self.p.name(v)).collect();
                return fail(4, format!("generation {g}, pair {k} on path {}", path.join(" ")));
            }
        }
        Ok(())
    }
}

/// All four parts in order.
pub fn check_all(family: &LayeredFamily, p: &Population) -> Result<(), StructureViolation> {
    check_population(family, p)?;
    check_cross_parents(family, p)?;
    check_no_skips(family, p)?;
    check_sweeps(family, p)
}
