//! `unav`: population generation, impossibility checks, avoidable sequences,
//! periodic realization, the representability oracle and Life-like lifelines.
//!
//! Exit codes: 0 computed (whatever the verdict), 1 I/O failure, 2 user error,
//! 3 search cap or depth exceeded.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::json;
use unav_core::life::rle::parse_pattern;
use unav_core::life::{extract_lifeline, patterns, speeds, ForbiddenPair, GameHistory, Ruleset};
use unav_core::population::to_dot;
use unav_core::realizability::{
    avoidable_sequence, least_nonrepresentable, realize_eventually_periodic, realize_periodic, representable,
    HeightPolicy, HeightProber, RepresentabilityQuery, Scale, SearchError, DEFAULT_CAP,
};
use unav_core::{FamilyKind, GenderSequence, GrowthFunction, LayeredFamily, Word};

#[derive(Parser)]
#[command(name = "unav", version, about = "Gendered populations and avoidable gender sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Carlson,
    Hunts,
}

impl From<Kind> for FamilyKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Carlson => FamilyKind::Carlson,
            Kind::Hunts => FamilyKind::Hunts,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Unit,
    Half,
}

#[derive(clap::Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Kind,
    /// identity, double, or linear:A:B for n -> A*n + B
    #[arg(long, default_value = "identity", value_parser = parse_growth)]
    h: GrowthFunction,
}

impl FamilyArgs {
    fn family(&self) -> LayeredFamily {
        LayeredFamily { kind: self.family.into(), h: self.h.clone() }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a truncation of a layered family.
    Generate {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        depth: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Decide whether a word is impossible at a height.
    Check {
        #[command(flatten)]
        family: FamilyArgs,
        /// Vertex genders, e.g. MMF or M^2F(MF)^3
        #[arg(long, value_parser = parse_word)]
        word: Word,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        height: u64,
    },
    /// Build an avoidable sequence block by block.
    Avoidable {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        blocks: u64,
        /// k or k+1
        #[arg(long, default_value = "k", value_parser = parse_policy)]
        policy: HeightPolicy,
        #[arg(long, env = "UNAV_CAP", default_value_t = DEFAULT_CAP, value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
        /// Also write the sequence as JSON.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Realize a periodic or eventually periodic sequence on edge genders.
    Realize {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        depth: u32,
        #[arg(long, value_parser = parse_word)]
        period: Word,
        /// Finite prefix before the periodic part.
        #[arg(long, value_parser = parse_word)]
        prefix: Option<Word>,
        /// Number of vertices on the path.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        length: u64,
    },
    /// Representability of e - 1 as a + h(c+1) + ... + h(c+b).
    Represent {
        #[arg(long, default_value = "identity", value_parser = parse_growth)]
        h: GrowthFunction,
        #[arg(long)]
        u: u64,
        /// Decide this e; without it, print the least non-representable e.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        e: Option<u64>,
        #[arg(long, value_enum, default_value = "unit")]
        scale: ScaleArg,
        #[arg(long, env = "UNAV_CAP", default_value_t = DEFAULT_CAP, value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
    },
    /// Run a Life-like pattern, measure its speeds and extract a lifeline.
    Ca {
        /// RLE or plaintext file, or a bundled name (glider, lwss, mwss, hwss, block, blinker).
        pattern: String,
        /// Overrides the pattern's rule; B3/S23 if neither is given.
        #[arg(long)]
        rule: Option<Ruleset>,
        /// Number of updates; the history holds one more configuration.
        #[arg(long, default_value_t = 40)]
        generations: usize,
        #[arg(long, default_value = "N,NE")]
        forbidden: ForbiddenPair,
        /// Write the lifeline as JSON; requires a compliant ruleset.
        #[arg(long)]
        lifeline: Option<PathBuf>,
        /// Write the history as JSON.
        #[arg(long)]
        history: Option<PathBuf>,
    },
}

fn parse_growth(s: &str) -> Result<GrowthFunction, String> {
    match s {
        "identity" | "n" => Ok(GrowthFunction::Identity),
        "double" | "2n" => Ok(GrowthFunction::Double),
        _ => {
            let rest = s.strip_prefix("linear:").ok_or(format!("unknown growth function {s:?}"))?;
            let (a, b) = rest.split_once(':').ok_or("expected linear:A:B")?;
            let a = a.parse().map_err(|_| format!("bad slope {a:?}"))?;
            let b = b.parse().map_err(|_| format!("bad offset {b:?}"))?;
            GrowthFunction::linear(a, b).map_err(|e| e.to_string())
        }
    }
}

fn parse_word(s: &str) -> Result<Word, String> {
    let w: Word = s.parse().map_err(|e: unav_core::sequence::WordError| e.to_string())?;
    if w.is_empty() {
        return Err("word is empty".into());
    }
    Ok(w)
}

fn parse_policy(s: &str) -> Result<HeightPolicy, String> {
    s.parse().map_err(|e: SearchError| e.to_string())
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn generate(family: &FamilyArgs, depth: u32, format: GraphFormat, output: Option<&Path>) -> Result<()> {
    let p = family.family().expand(depth);
    let mut text = match format {
        GraphFormat::Json => p.to_json(),
        GraphFormat::Dot => to_dot(&p),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    emit(output, &text)
}

fn check(family: &FamilyArgs, word: &Word, height: u64) -> Result<()> {
    let mut prober = HeightProber::new(family.family());
    match prober.realizing_path(word, height)? {
        Some(path) => println!("REALIZABLE {}", path.display(prober.population())),
        None => println!("IMPOSSIBLE"),
    }
    Ok(())
}

fn avoidable(family: &FamilyArgs, blocks: u64, policy: HeightPolicy, cap: u64, output: Option<&Path>) -> Result<()> {
    let s = avoidable_sequence(&family.family(), blocks as usize, policy, cap)?;
    println!("{}", s.text());
    println!("e: {:?}", s.e_values);
    println!("heights: {:?}", s.heights);
    if let Some(path) = output {
        write_file(path, &(s.to_json() + "\n"))?;
    }
    Ok(())
}

fn realize(family: &FamilyArgs, depth: u32, period: Word, prefix: Option<Word>, length: u64) -> Result<()> {
    let p = family.family().expand(depth);
    let path = match prefix {
        Some(prefix) => {
            let s = GenderSequence::eventually_periodic(prefix, period);
            realize_eventually_periodic(&p, &s, length as usize)?
        }
        None => realize_periodic(&p, &GenderSequence::periodic(period), length as usize)?,
    };
    println!("{}", path.display(&p));
    println!("edges: {}", Word(path.genders).flat());
    Ok(())
}

fn represent(h: GrowthFunction, u: u64, e: Option<u64>, scale: ScaleArg, cap: u64) -> Result<()> {
    let scale = match scale {
        ScaleArg::Unit => Scale::Unit,
        ScaleArg::Half => Scale::Half,
    };
    match e {
        Some(e) => match representable(&RepresentabilityQuery { e, u, h, scale })? {
            Some(w) => println!("{}", json!({"e": e, "representable": true, "a": w.a, "b": w.b, "c": w.c})),
            None => println!("{}", json!({"e": e, "representable": false})),
        },
        None => {
            h.require_divergent()?;
            let e = least_nonrepresentable(u, &h, scale, cap)?;
            println!("{}", json!({"u": u, "least_nonrepresentable": e}));
        }
    }
    Ok(())
}

fn load_pattern(source: &str) -> Result<unav_core::life::rle::Pattern> {
    let path = Path::new(source);
    if !path.exists() {
        if let Some(p) = patterns::pattern(source) {
            return Ok(p);
        }
    }
    let text = fs::read_to_string(path).with_context(|| format!("reading {source}"))?;
    Ok(parse_pattern(&text)?)
}

fn verdict(speed: Ratio<i64>, bound: Ratio<i64>) -> String {
    let ok = if speed <= bound { "PASS" } else { "FAIL" };
    format!("{speed} ≤ {bound}: {ok}")
}

fn ca(
    source: &str,
    rule: Option<Ruleset>,
    generations: usize,
    forbidden: ForbiddenPair,
    lifeline: Option<&Path>,
    history: Option<&Path>,
) -> Result<()> {
    let pattern = load_pattern(source)?;
    let rules = rule.or(pattern.rule).unwrap_or(Ruleset::CONWAY);
    let hist = GameHistory::simulate(pattern.cells, rules, generations);
    println!("rule: {rules}");
    println!("configurations: {}", hist.len());
    if let Some(path) = history {
        write_file(path, &(hist.to_json() + "\n"))?;
    }
    if let Some(path) = lifeline {
        hist.check_hypotheses().map_err(|v| anyhow::anyhow!("hypothesis fails, {v}"))?;
        let line = extract_lifeline(&hist, forbidden)?;
        line.check(&hist, forbidden)?;
        let (dx, dy) = line.displacement();
        println!("lifeline: {} cells, forbidden {forbidden}, displacement ({dx},{dy})", line.len());
        write_file(path, &(line.to_json() + "\n"))?;
    }
    let s = speeds(&hist)?;
    println!("orthogonal_heading: {}", s.orthogonal.0);
    println!("orthogonal_speed: {}", verdict(s.orthogonal.1, Ratio::new(1, 2)));
    println!("diagonal_heading: {}", s.diagonal.0);
    println!("diagonal_speed: {}", verdict(s.diagonal.1, Ratio::new(1, 3)));
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate { family, depth, format, output } => generate(&family, depth, format, output.as_deref()),
        Command::Check { family, word, height } => check(&family, &word, height),
        Command::Avoidable { family, blocks, policy, cap, output } => {
            avoidable(&family, blocks, policy, cap, output.as_deref())
        }
        Command::Realize { family, depth, period, prefix, length } => realize(&family, depth, period, prefix, length),
        Command::Represent { h, u, e, scale, cap } => represent(h, u, e, scale, cap),
        Command::Ca { pattern, rule, generations, forbidden, lifeline, history } => {
            if generations == 0 {
                bail!("--generations must be at least 1");
            }
            ca(&pattern, rule, generations, forbidden, lifeline.as_deref(), history.as_deref())
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.downcast_ref::<io::Error>().is_some() {
            return 1;
        }
        let search = cause
            .downcast_ref::<SearchError>()
            .or_else(|| match cause.downcast_ref::<unav_core::Error>() {
                Some(unav_core::Error::Search(e)) => Some(e),
                _ => None,
            });
        if let Some(
            SearchError::CapExceeded { .. }
            | SearchError::HeightScan { .. }
            | SearchError::DepthInsufficient { .. }
            | SearchError::NotFoundAtDepth { .. },
        ) = search
        {
            return 3;
        }
    }
    2
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn growth_names() {
        assert_eq!(parse_growth("identity"), Ok(GrowthFunction::Identity));
        assert_eq!(parse_growth("2n"), Ok(GrowthFunction::Double));
        assert_eq!(parse_growth("linear:3:-1"), Ok(GrowthFunction::Linear { a: 3, b: -1 }));
        assert!(parse_growth("linear:1:-1").is_err());
        assert!(parse_growth("square").is_err());
    }

    #[test]
    fn words_must_be_nonempty() {
        assert_eq!(parse_word("M^2F").unwrap().flat(), "MMF");
        assert!(parse_word("").is_err());
        assert!(parse_word("MFX").is_err());
    }

    #[test]
    fn exit_codes_by_cause() {
        let io = anyhow::Error::from(io::Error::from(io::ErrorKind::NotFound)).context("reading x");
        assert_eq!(exit_code(&io), 1);
        assert_eq!(exit_code(&anyhow::Error::from(SearchError::CapExceeded { cap: 3 })), 3);
        let wrapped = unav_core::Error::from(SearchError::NotFoundAtDepth { target_len: 4, depth: 2 });
        assert_eq!(exit_code(&anyhow::Error::from(wrapped)), 3);
        assert_eq!(exit_code(&anyhow::Error::from(SearchError::EmptyWord)), 2);
    }

    #[test]
    fn speed_verdicts() {
        assert_eq!(verdict(Ratio::new(1, 2), Ratio::new(1, 2)), "1/2 ≤ 1/2: PASS");
        assert_eq!(verdict(Ratio::new(2, 3), Ratio::new(1, 2)), "2/3 ≤ 1/2: FAIL");
    }
}
