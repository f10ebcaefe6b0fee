//! Finite gender words and (eventually) periodic gender sequences.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use thiserror::Error;

use crate::population::Gender;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("unexpected character {0:?} at offset {1}")]
    Unexpected(char, usize),
    #[error("missing exponent after '^' at offset {0}")]
    MissingExponent(usize),
    #[error("unbalanced parentheses")]
    Unbalanced,
    #[error("word is too long")]
    TooLong,
}

/// A finite word over the genders.
///
/// Parses from strings such as `MMF`, `M^3F`, `M^3 F M^5 F` or `(FM)^2M`.
/// Displays in the compact run form `M^3 F M^5 F`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Gender>);

impl Word {
    pub fn new(symbols: Vec<Gender>) -> Self {
        Word(symbols)
    }

    pub fn repeat(g: Gender, count: usize) -> Self {
        Word(vec![g; count])
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Maximal runs of equal symbols.
    pub fn runs(&self) -> Vec<(Gender, usize)> {
        let mut runs: Vec<(Gender, usize)> = Vec::new();
        for &g in &self.0 {
            match runs.last_mut() {
                Some((last, n)) if *last == g => *n += 1,
                _ => runs.push((g, 1)),
            }
        }
        runs
    }

    pub fn max_run(&self) -> usize {
        self.runs().iter().map(|r| r.1).max().unwrap_or(0)
    }

    /// The word spelled out symbol by symbol, e.g. `MMMF`.
    pub fn flat(&self) -> String {
        self.0.iter().map(|g| g.to_string()).collect()
    }
}

impl Deref for Word {
    type Target = [Gender];

    fn deref(&self) -> &[Gender] {
        &self.0
    }
}

impl From<Vec<Gender>> for Word {
    fn from(v: Vec<Gender>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (g, n)) in self.runs().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if n == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{n}")?;
            }
        }
        Ok(())
    }
}

const MAX_WORD: usize = 1 << 24;

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser {
    fn peek(&mut self) -> Option<(usize, char)> {
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if c.is_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.chars.get(self.pos).copied()
    }

    fn sequence(&mut self, depth: usize) -> Result<Vec<Gender>, WordError> {
        let mut out = Vec::new();
        while let Some((off, c)) = self.peek() {
            let item = match c {
                'M' | 'm' => {
                    self.pos += 1;
                    vec![Gender::M]
                }
                'F' | 'f' => {
                    self.pos += 1;
                    vec![Gender::F]
                }
                '(' => {
                    self.pos += 1;
                    let inner = self.sequence(depth + 1)?;
                    match self.peek() {
                        Some((_, ')')) => self.pos += 1,
                        _ => return Err(WordError::Unbalanced),
                    }
                    inner
                }
                ')' if depth > 0 => return Ok(out),
                ')' => return Err(WordError::Unbalanced),
                _ => return Err(WordError::Unexpected(c, off)),
            };
            let times = self.exponent()?;
            if out.len() + item.len().saturating_mul(times) > MAX_WORD {
                return Err(WordError::TooLong);
            }
            for _ in 0..times {
                out.extend_from_slice(&item);
            }
        }
        if depth > 0 {
            return Err(WordError::Unbalanced);
        }
        Ok(out)
    }

    fn exponent(&mut self) -> Result<usize, WordError> {
        match self.peek() {
            Some((off, '^')) => {
                self.pos += 1;
                let _ = self.peek();
                let start = self.pos;
                while matches!(self.chars.get(self.pos), Some((_, c)) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
                if start == self.pos {
                    return Err(WordError::MissingExponent(off));
                }
                let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
                digits.parse().map_err(|_| WordError::TooLong)
            }
            _ => Ok(1),
        }
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { chars: s.char_indices().collect(), pos: 0 };
        p.sequence(0).map(Word)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceKind {
    Finite,
    Periodic,
    EventuallyPeriodic,
}

/// `prefix` followed by `period` repeated forever (or just `prefix` when the
/// period is empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenderSequence {
    prefix: Word,
    period: Word,
}

impl GenderSequence {
    pub fn finite(word: Word) -> Self {
        GenderSequence { prefix: word, period: Word::default() }
    }

    /// Panics if `period` is empty.
    pub fn periodic(period: Word) -> Self {
        assert!(!period.is_empty(), "period must be nonempty");
        GenderSequence { prefix: Word::default(), period }
    }

    /// Panics if `period` is empty.
    pub fn eventually_periodic(prefix: Word, period: Word) -> Self {
        assert!(!period.is_empty(), "period must be nonempty");
        GenderSequence { prefix, period }
    }

    pub fn kind(&self) -> SequenceKind {
        match (self.prefix.is_empty(), self.period.is_empty()) {
            (_, true) => SequenceKind::Finite,
            (true, false) => SequenceKind::Periodic,
            (false, false) => SequenceKind::EventuallyPeriodic,
        }
    }

    pub fn is_periodic(&self) -> bool {
        self.kind() == SequenceKind::Periodic
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    /// Symbol at 1-based position `i`, if the sequence is that long.
    pub fn symbol(&self, i: usize) -> Option<Gender> {
        let i = i.checked_sub(1)?;
        if i < self.prefix.len() {
            return Some(self.prefix[i]);
        }
        if self.period.is_empty() {
            return None;
        }
        Some(self.period[(i - self.prefix.len()) % self.period.len()])
    }

    /// The first `len` symbols (fewer for a short finite sequence).
    pub fn take(&self, len: usize) -> Word {
        Word((1..=len).map_while(|i| self.symbol(i)).collect())
    }

    /// The periodic tail as a sequence of its own.
    pub fn tail(&self) -> Option<GenderSequence> {
        (!self.period.is_empty()).then(|| GenderSequence::periodic(self.period.clone()))
    }
}
