//! Worked examples, each checked against a hand trace or an independent oracle
//! from `common`.

mod common;

use std::collections::BTreeSet;

use unav_core::life::{
    extract_lifeline, gameplay_population, measure_speed, patterns, speeds, Cell, CellConfig,
    Direction, ForbiddenPair, GameHistory, HypothesisViolation, Ruleset,
};
use unav_core::life::rle::{parse_rle, write_rle};
use unav_core::population::{Gender, Population, PopulationError, VertexId};
use unav_core::realizability::{
    avoidable_sequence_carlson, avoidable_sequence_hunts, block, find_realizing_path, impossible_at_height,
    least_nonrepresentable, minimal_block_carlson, realize_eventually_periodic, realize_periodic, representable,
    HeightPolicy, RepresentabilityQuery, Scale, Witness,
};
use unav_core::{FamilyKind, GenderSequence, LayeredFamily, Word};

use common::*;

fn names(p: &Population, ids: impl IntoIterator<Item = VertexId>) -> BTreeSet<String> {
    ids.into_iter().map(|v| p.name(v).to_owned()).collect()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn parents(p: &Population, v: &str) -> BTreeSet<String> {
    names(p, p.parents(p.id(v).unwrap()))
}

fn word(text: &str) -> Word {
    text.parse().unwrap()
}

fn carlson() -> LayeredFamily {
    LayeredFamily::carlson(identity())
}

fn hunts() -> LayeredFamily {
    LayeredFamily::hunts(double())
}

#[test]
fn roots_of_both_families() {
    for f in [carlson(), hunts()] {
        let p = f.expand(4);
        assert_eq!(names(&p, p.roots()), set(&["m1_1", "f1_1"]), "{}", f.kind);
    }
}

#[test]
fn first_depth_sets_of_carlson_identity() {
    let p = carlson().expand(5);
    assert_eq!(names(&p, p.depth_set(0).unwrap()), set(&["m1_1", "f1_1"]));
    assert_eq!(names(&p, p.depth_set(1).unwrap()), set(&["m1_1", "f1_1", "m2_1", "f2_1"]));
}

#[test]
fn carlson_identity_parents_at_depth_three() {
    let p = carlson().expand(3);
    assert_eq!(parents(&p, "m3_1"), set(&["m2_2", "f2_1"]));
    assert_eq!(parents(&p, "f3_1"), set(&["f2_2", "m2_1"]));
    assert_eq!(parents(&p, "m2_2"), set(&["m2_1", "f2_1"]));
    let id = |n: &str| p.id(n).unwrap();
    assert_eq!(p.gendered_parent(id("m3_1"), Gender::M).unwrap(), id("m2_2"));
    assert_eq!(p.gendered_parent(id("m3_1"), Gender::F).unwrap(), id("f2_1"));
    assert!(matches!(p.gendered_parent(id("m1_1"), Gender::M), Err(PopulationError::IsRoot(_))));
}

#[test]
fn depth_one_is_the_root_pair() {
    let p = carlson().expand(1);
    assert_eq!(names(&p, p.ids()), set(&["m1_1", "f1_1"]));
    assert!(p.edges().is_empty());
}

#[test]
fn vertex_count_is_twice_the_cumulative_growth() {
    for f in [carlson(), hunts(), LayeredFamily::carlson(double())] {
        for d in 1..=8u32 {
            let expected: u64 = (1..=d as u64).map(|n| 2 * f.h.eval(n)).sum();
            assert_eq!(f.expand(d).len() as u64, expected);
        }
    }
}

#[test]
fn hunts_double_first_generations() {
    let p = hunts().expand(2);
    let gen1: BTreeSet<String> =
        p.ids().filter(|&v| p.vertex(v).generation == Some(1)).map(|v| p.name(v).to_owned()).collect();
    assert_eq!(gen1, set(&["m1_1", "m1_2", "f1_1", "f1_2"]));
    assert_eq!(parents(&p, "m1_2"), set(&["m1_1", "f1_1"]));
    assert_eq!(parents(&p, "f1_2"), set(&["f1_1", "m1_1"]));
    assert_eq!(parents(&p, "m2_1"), set(&["m1_1", "f1_2"]));
    assert_eq!(parents(&p, "f2_1"), set(&["m1_2", "f1_2"]));
}

#[test]
fn heights_follow_cumulative_sums() {
    let f = carlson();
    for (i, generation, position) in [(1, 1, 1), (2, 2, 1), (3, 2, 2), (4, 3, 1), (6, 3, 3), (7, 4, 1)] {
        let h = f.height(i);
        assert_eq!((h.generation, h.position), (generation, position), "height {i}");
    }
    assert_eq!(f.height(4).male().name(), "m3_1");
    assert_eq!(f.height(4).female().name(), "f3_1");
}

#[test]
fn all_male_star_path_to_m3_1() {
    let p = carlson().expand(4);
    let s = GenderSequence::periodic(word("M"));
    let path = p.star_path(&s, p.id("m3_1").unwrap()).unwrap();
    assert_eq!(path.names(&p), ["m1_1", "m2_1", "m2_2", "m3_1"]);
}

#[test]
fn star_path_is_trivial_inside_the_depth_set() {
    let p = carlson().expand(5);
    let s = GenderSequence::periodic(word("MF"));
    for u in p.depth_set(1).unwrap() {
        assert_eq!(p.star_path(&s, u).unwrap().vertices, [u]);
    }
}

#[test]
fn mother_mother_father_star_paths_start_in_v2() {
    let p = carlson().expand(8);
    let s = GenderSequence::periodic(word("MFF"));
    for u in p.ids() {
        let path = p.star_path(&s, u).unwrap();
        assert_eq!(path.last(), Some(u));
        assert!(p.in_depth_set(path.first().unwrap(), 2));
        assert_eq!(path.genders, s.take(path.genders.len()).0);
    }
}

#[test]
fn lift_edge_count_and_restriction() {
    for (name, p) in small_populations() {
        let lift = p.gender_lift();
        let top = p.edges().iter().filter(|e| e.gender.get() == 2).count();
        assert_eq!(lift.len(), 2 * p.len(), "{name}");
        assert_eq!(lift.edges().len(), 2 * p.edges().len() + 2 * top, "{name}");

        // Restricting back to two genders leaves two copies of the original.
        let back = lift.gender_restrict(2).unwrap();
        let n = p.len();
        let mut expected = BTreeSet::new();
        for e in p.edges() {
            for shift in [0, n] {
                expected.insert((e.src.index() + shift, e.dst.index() + shift, e.gender.get()));
            }
        }
        let got: BTreeSet<_> = back.edges().iter().map(|e| (e.src.index(), e.dst.index(), e.gender.get())).collect();
        assert_eq!(got, expected, "{name}");
        assert!(back.validate().is_valid());

        assert_eq!(p.gender_restrict(2).unwrap().edges(), p.edges());
        assert!(p.gender_restrict(3).is_err());
    }
}

#[test]
fn lift_preserves_edge_words_both_ways() {
    for (name, p) in small_populations() {
        assert_eq!(edge_words(&p, 2), edge_words(&p.gender_lift(), 2), "{name}");
    }
}

#[test]
fn realizing_paths_on_small_words() {
    let p = carlson().expand(6);
    let start = [p.id("m1_1").unwrap()];
    let path = find_realizing_path(&p, &word("M").0, &start).unwrap().unwrap();
    assert_eq!(path.names(&p), ["m1_1"]);
    let path = find_realizing_path(&p, &word("MMF").0, &start).unwrap().unwrap();
    assert_eq!(path.vertex_genders(&p).unwrap(), word("MMF").0);
    // The hand-traced witness exists.
    assert!(naive_vertex_path(&p, p.id("m1_1").unwrap(), &word("MMF")));
    assert!(find_realizing_path(&p, &word("MF").0, &[]).unwrap().is_none());
}

#[test]
fn single_male_is_never_impossible() {
    for k in 1..=6 {
        assert!(!impossible_at_height(&carlson(), &word("M"), k).unwrap());
        assert!(!impossible_at_height(&hunts(), &word("M"), k).unwrap());
    }
}

#[test]
fn two_five_eight_prefix_is_impossible_at_height_two() {
    let w = word("M^2F M^5F M^8F");
    assert!(impossible_at_height(&carlson(), &w, 2).unwrap());
    assert!(naive_impossible(&carlson(), &w, 2));
}

/// The first `k+1` prefix, checked at height 1 with the naive oracle: it is
/// realizable, by `m1_1 -> m2_1 -> f2_2`.
#[test]
fn two_male_prefix_is_realizable_at_height_one() {
    let p = carlson().expand(4);
    let w = word("M^2F");
    assert!(!naive_impossible(&carlson(), &w, 1));
    let path = unav_core::population::DirectedPath::new(
        &p,
        ["m1_1", "m2_1", "f2_2"].iter().map(|n| p.id(n).unwrap()).collect(),
    )
    .unwrap();
    assert_eq!(path.vertex_genders(&p).unwrap(), w.0);
    assert!(!impossible_at_height(&carlson(), &w, 1).unwrap());
}

#[test]
fn representability_examples() {
    let q = |e, u| RepresentabilityQuery { e, u, h: identity(), scale: Scale::Unit };
    assert_eq!(representable(&q(3, 0)).unwrap(), None);
    assert_eq!(representable(&q(2, 0)).unwrap(), Some(Witness { a: 0, b: 1, c: 0 }));
    for u in 0..5 {
        assert_eq!(representable(&q(1, u)).unwrap(), Some(Witness { a: 0, b: 0, c: 0 }));
    }
    assert_eq!(least_nonrepresentable(0, &identity(), Scale::Unit, 1000).unwrap(), 3);
}

#[test]
fn witnesses_add_up() {
    for h in [identity(), double()] {
        for u in 0..6 {
            for e in 1..200 {
                let q = RepresentabilityQuery { e, u, h: h.clone(), scale: Scale::Unit };
                if let Some(Witness { a, b, c }) = representable(&q).unwrap() {
                    assert!(c <= u);
                    assert!(a <= (1..=u).map(|n| h.eval(n)).max().unwrap_or(0));
                    assert_eq!(a + (1..=b).map(|p| h.eval(c + p)).sum::<u64>(), e - 1);
                }
            }
        }
    }
}

#[test]
fn sieve_agrees_with_brute_force_beyond_ten() {
    for u in [12, 15, 20] {
        let fast = least_nonrepresentable(u, &identity(), Scale::Unit, 1 << 24).unwrap();
        assert_eq!(Some(fast), brute_least_nonrepresentable(u, |n| n, 1 << 16));
    }
    for u in 0..=10 {
        let fast = least_nonrepresentable(u, &double(), Scale::Half, 1 << 24).unwrap();
        assert_eq!(Some(fast), brute_least_nonrepresentable(u, |n| n, 1 << 16), "half of 2n is n");
    }
}

#[test]
fn half_scale_needs_even_h() {
    let q = RepresentabilityQuery { e: 5, u: 2, h: identity(), scale: Scale::Half };
    assert!(representable(&q).is_err());
    assert!(least_nonrepresentable(2, &identity(), Scale::Half, 1000).is_err());
}

#[test]
fn carlson_height_k_blocks_are_minimal() {
    let s = avoidable_sequence_carlson(&identity(), 4, HeightPolicy::K).unwrap();
    assert_eq!(s.e_values, [3, 5, 8, 11]);
    assert_eq!(s.heights, [1, 2, 5, 9]);
    assert_eq!(s.text(), "M^3 F M^5 F M^8 F M^11 F");
    let family = carlson();
    for (j, &e) in s.e_values.iter().enumerate() {
        let before = if j == 0 { Word::default() } else { s.prefix(j - 1) };
        let k = s.heights[j];
        for shorter in 1..e {
            let w = before.concat(&block(FamilyKind::Carlson, shorter));
            assert!(!naive_impossible(&family, &w, k), "block {j}: e = {shorter} already impossible");
        }
        assert!(naive_impossible(&family, &before.concat(&block(FamilyKind::Carlson, e)), k));
    }
}

#[test]
fn carlson_height_k_plus_one_blocks() {
    let s = avoidable_sequence_carlson(&identity(), 3, HeightPolicy::KPlusOne).unwrap();
    assert_eq!(s.e_values, [2, 5, 8]);
    assert_eq!(s.text(), "M^2 F M^5 F M^8 F");
    s.verify().unwrap();
}

#[test]
fn minimal_block_from_empty_prefix() {
    assert_eq!(minimal_block_carlson(&Word::default(), 1, &identity()).unwrap(), 3);
    assert_eq!(minimal_block_carlson(&Word::default(), 2, &identity()).unwrap(), 2);
}

#[test]
fn hunts_double_blocks_are_frozen_by_the_naive_oracle() {
    let s = avoidable_sequence_hunts(&double(), 3).unwrap();
    assert_eq!(s.e_values, [1, 2, 4]);
    assert_eq!(s.heights, [1, 2, 6]);
    assert_eq!(s.word.flat(), "FMMFMFMMFMFMFMFMM");
    assert!(s.word.max_run() <= 2);
    let family = hunts();
    for (j, &e) in s.e_values.iter().enumerate() {
        let before = if j == 0 { Word::default() } else { s.prefix(j - 1) };
        let k = s.heights[j];
        for shorter in 1..e {
            assert!(!naive_impossible(&family, &before.concat(&block(FamilyKind::Hunts, shorter)), k));
        }
        assert!(naive_impossible(&family, &before.concat(&block(FamilyKind::Hunts, e)), k));
    }
}

#[test]
fn hunts_rejects_odd_growth() {
    assert!(avoidable_sequence_hunts(&identity(), 2).is_err());
}

#[test]
fn all_male_spine_from_the_root() {
    let p = carlson().expand(12);
    let s = GenderSequence::periodic(word("M"));
    let path = realize_periodic(&p, &s, 10).unwrap();
    assert_eq!(path.names(&p)[0], "m1_1");
    assert!(path.vertex_genders(&p).unwrap().iter().all(|&g| g == Gender::M));
}

#[test]
fn alternating_sequence_starts_in_v1() {
    let p = carlson().expand(12);
    let s = GenderSequence::periodic(word("MF"));
    let path = realize_periodic(&p, &s, 8).unwrap();
    assert_eq!(path.len(), 8);
    assert!(p.in_depth_set(path.vertices[0], 1));
    assert_eq!(path.genders, s.take(7).0);
}

#[test]
fn female_then_all_male() {
    let p = carlson().expand(12);
    let s = GenderSequence::eventually_periodic(word("F"), word("M"));
    let path = realize_eventually_periodic(&p, &s, 8).unwrap();
    assert_eq!(path.len(), 8);
    assert_eq!(path.genders, word("FM^6").0);
    assert!(!p.in_depth_set(path.vertices[1], 0));
}

#[test]
fn empty_prefix_matches_periodic_realization() {
    let p = carlson().expand(12);
    let periodic = GenderSequence::periodic(word("MF"));
    let eventual = GenderSequence::eventually_periodic(Word::default(), word("MF"));
    assert_eq!(
        realize_eventually_periodic(&p, &eventual, 8).unwrap(),
        realize_periodic(&p, &periodic, 8).unwrap()
    );
}

fn cells(list: &[(i64, i64)]) -> CellConfig {
    CellConfig::new(list.iter().map(|&c| Cell::from(c)))
}

fn glider() -> CellConfig {
    patterns::pattern("glider").unwrap().cells
}

fn n_ne() -> ForbiddenPair {
    ForbiddenPair::new(Direction::N, Direction::NE).unwrap()
}

#[test]
fn blinker_and_block_steps() {
    let blinker = cells(&[(-1, 0), (0, 0), (1, 0)]);
    let next = unav_core::life::step(&blinker, &Ruleset::CONWAY);
    assert_eq!(next, cells(&[(0, -1), (0, 0), (0, 1)]));
    let block = cells(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
    assert_eq!(unav_core::life::step(&block, &Ruleset::CONWAY), block);
    assert!(unav_core::life::step(&CellConfig::default(), &Ruleset::CONWAY).is_empty());
}

#[test]
fn glider_history_meets_the_hypotheses() {
    let hist = GameHistory::simulate(glider(), Ruleset::CONWAY, 49);
    assert_eq!(hist.len(), 50);
    hist.check_hypotheses().unwrap();
}

#[test]
fn hypothesis_failures() {
    // A lone cell dies at once.
    let hist = GameHistory::simulate(cells(&[(0, 0)]), Ruleset::CONWAY, 3);
    assert_eq!(hist.check_hypotheses(), Err(HypothesisViolation::EmptyGeneration(2)));
    assert_eq!(HypothesisViolation::EmptyGeneration(2).condition(), 2);
    let b2s0: Ruleset = "B2/S0".parse().unwrap();
    let hist = GameHistory::simulate(glider(), b2s0, 2);
    assert_eq!(hist.check_hypotheses().unwrap_err().condition(), 3);
}

#[test]
fn glider_gameplay_population_has_unique_male_parents() {
    let hist = GameHistory::simulate(glider(), Ruleset::CONWAY, 7);
    let p = gameplay_population(&hist, n_ne()).unwrap();
    assert!(p.validate().is_valid());
    for v in p.ids().filter(|&v| !p.is_root(v)) {
        let males = p.parent_edges(v).filter(|e| e.gender == Gender::M).count();
        let females = p.parent_edges(v).filter(|e| e.gender == Gender::F).count();
        assert_eq!(males, 1, "{}", p.name(v));
        assert!(females >= 1, "{}", p.name(v));
    }
}

#[test]
fn block_gameplay_male_edges_are_self_edges() {
    let block = patterns::pattern("block").unwrap().cells;
    let hist = GameHistory::simulate(block, Ruleset::CONWAY, 4);
    let p = gameplay_population(&hist, n_ne()).unwrap();
    for e in p.edges() {
        let same_cell = p.name(e.src).split('@').next() == p.name(e.dst).split('@').next();
        assert_eq!(e.gender == Gender::M, same_cell);
    }
}

#[test]
fn birth_from_three_cells_above_takes_the_north_west_father() {
    let hist = GameHistory::simulate(cells(&[(-1, 1), (0, 1), (1, 1)]), Ruleset::CONWAY, 1);
    let p = gameplay_population(&hist, n_ne()).unwrap();
    let child = p.id("(0,0)@2").unwrap();
    let father = p.gendered_parent(child, Gender::M).unwrap();
    assert_eq!(p.name(father), "(-1,1)@1");
}

#[test]
fn block_lifeline_is_constant() {
    let block = patterns::pattern("block").unwrap().cells;
    let hist = GameHistory::simulate(block, Ruleset::CONWAY, 9);
    let lifeline = extract_lifeline(&hist, n_ne()).unwrap();
    assert_eq!(lifeline.len(), 10);
    assert!(lifeline.cells.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn glider_lifeline_avoids_north_and_north_east() {
    let hist = GameHistory::simulate(glider(), Ruleset::CONWAY, 39);
    let lifeline = extract_lifeline(&hist, n_ne()).unwrap();
    assert_eq!(lifeline.len(), 40);
    lifeline.check(&hist, n_ne()).unwrap();
    for w in lifeline.cells.windows(2) {
        let step = (w[1].x - w[0].x, w[1].y - w[0].y);
        assert!(step != (0, 1) && step != (1, 1));
    }
}

#[test]
fn blinker_lifeline_avoids_east_and_west() {
    let blinker = patterns::pattern("blinker").unwrap().cells;
    let hist = GameHistory::simulate(blinker, Ruleset::CONWAY, 8);
    let forbidden = ForbiddenPair::new(Direction::E, Direction::W).unwrap();
    let lifeline = extract_lifeline(&hist, forbidden).unwrap();
    assert_eq!(lifeline.len(), 9);
    lifeline.check(&hist, forbidden).unwrap();
    assert!(lifeline.steps().into_iter().flatten().all(|d| d != Direction::E && d != Direction::W));
}

#[test]
fn spaceship_speeds() {
    use num_rational::Ratio;
    let run = |name: &str| GameHistory::simulate(patterns::pattern(name).unwrap().cells, Ruleset::CONWAY, 40);
    assert_eq!(measure_speed(&run("glider"), Direction::SE).unwrap(), Ratio::new(1, 4));
    let lwss = speeds(&run("lwss")).unwrap();
    assert_eq!(lwss.orthogonal.1, Ratio::new(1, 2));
    for d in Direction::ALL {
        assert_eq!(measure_speed(&run("block"), d).unwrap(), Ratio::from_integer(0));
    }
}

#[test]
fn glider_rle_round_trip() {
    let text = patterns::GLIDER;
    let pattern = parse_rle(text).unwrap();
    assert_eq!(pattern.cells, cells(&[(1, 0), (2, -1), (0, -2), (1, -2), (2, -2)]));
    assert_eq!(write_rle(&pattern), text);
}
