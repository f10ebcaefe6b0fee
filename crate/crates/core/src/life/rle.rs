//! RLE and plaintext pattern files.
//!
//! Row `r` of a pattern (counting from the top, from 0) holds cells with
//! `y = -r`; column `c` is `x = c`.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Cell, CellConfig, LifeError, Ruleset};

const LINE_WIDTH: usize = 70;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RleError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("state {0:?} is not a two-state cell")]
    UnsupportedState(char),
    #[error("missing '!' terminator")]
    Unterminated,
    #[error(transparent)]
    Rule(#[from] LifeError),
}

/// A pattern with its comment lines and optional rule.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Pattern {
    /// Comment lines without their leading marker (`#C ...` keeps `C ...`).
    pub comments: Vec<String>,
    pub rule: Option<Ruleset>,
    pub cells: CellConfig,
}

impl Pattern {
    pub fn new(cells: CellConfig) -> Self {
        Pattern { cells, ..Pattern::default() }
    }
}

pub fn parse_rle(text: &str) -> Result<Pattern, RleError> {
    let mut pattern = Pattern::default();
    let mut body = String::new();
    let mut body_start = None;
    for (n, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if body_start.is_none() {
            if let Some(c) = line.trim_start().strip_prefix('#') {
                pattern.comments.push(c.trim_end_matches('\r').to_owned());
                continue;
            }
            if trimmed.is_empty() {
                continue;
            }
            if trimmed.starts_with('x') {
                pattern.rule = parse_header(trimmed, n + 1)?;
                body_start = Some(n + 1);
                continue;
            }
            body_start = Some(n);
        }
        body.push_str(trimmed);
        if trimmed.contains('!') {
            break;
        }
    }
    pattern.cells = parse_body(&body, body_start.unwrap_or(0) + 1)?;
    Ok(pattern)
}

fn parse_header(line: &str, n: usize) -> Result<Option<Ruleset>, RleError> {
    let mut rule = None;
    for field in line.split(',') {
        let (key, value) = field.split_once('=').ok_or_else(|| RleError::Syntax {
            line: n,
            message: format!("header field {field:?} has no '='"),
        })?;
        match key.trim() {
            "x" | "y" => {
                value.trim().parse::<u64>().map_err(|_| RleError::Syntax {
                    line: n,
                    message: format!("bad size {:?}", value.trim()),
                })?;
            }
            "rule" => rule = Some(value.trim().parse()?),
            _ => {}
        }
    }
    Ok(rule)
}

fn parse_body(body: &str, line: usize) -> Result<CellConfig, RleError> {
    let mut live = Vec::new();
    let (mut row, mut col) = (0i64, 0i64);
    let mut count: Option<i64> = None;
    for c in body.chars() {
        match c {
            '0'..='9' => {
                let d = c.to_digit(10).expect("digit") as i64;
                count = Some(count.unwrap_or(0).checked_mul(10).and_then(|v| v.checked_add(d)).ok_or(
                    RleError::Syntax { line, message: "run count overflows".to_owned() },
                )?);
            }
            'b' | '.' => col += count.take().unwrap_or(1),
            'o' | 'A' => {
                let k = count.take().unwrap_or(1);
                live.extend((col..col + k).map(|x| Cell::new(x, -row)));
                col += k;
            }
            '$' => {
                row += count.take().unwrap_or(1);
                col = 0;
            }
            '!' => return Ok(CellConfig::new(live)),
            c if c.is_whitespace() => {}
            c if c.is_ascii_alphabetic() => return Err(RleError::UnsupportedState(c)),
            c => {
                return Err(RleError::Syntax { line, message: format!("unexpected {c:?} in body") })
            }
        }
    }
    Err(RleError::Unterminated)
}

/// Rows of a pattern as `(row, columns)`, normalised so the bounding box starts
/// at row 0, column 0.
fn rows(cells: &CellConfig) -> (i64, i64, Vec<Vec<i64>>) {
    let Some((min_x, min_y, max_x, max_y)) = cells.bounding_box() else {
        return (0, 0, Vec::new());
    };
    let height = max_y - min_y + 1;
    let mut out = vec![Vec::new(); height as usize];
    for c in cells.iter() {
        out[(max_y - c.y) as usize].push(c.x - min_x);
    }
    for r in &mut out {
        r.sort_unstable();
    }
    (max_x - min_x + 1, height, out)
}

fn run(n: i64, tag: char) -> String {
    if n == 1 {
        tag.to_string()
    } else {
        format!("{n}{tag}")
    }
}

/// Canonical RLE: comments, header, then the body with trailing dead cells
/// dropped, blank rows merged into one `n$`, and lines of at most 70 characters.
pub fn write_rle(pattern: &Pattern) -> String {
    let (width, height, rows) = rows(&pattern.cells);
    let mut tokens = Vec::new();
    let mut pending_rows = 0i64;
    for cols in &rows {
        if cols.is_empty() {
            pending_rows += 1;
            continue;
        }
        if pending_rows > 0 || !tokens.is_empty() {
            tokens.push(run(pending_rows + 1, '$'));
        }
        pending_rows = 0;
        let mut x = 0;
        let mut i = 0;
        while i < cols.len() {
            if cols[i] > x {
                tokens.push(run(cols[i] - x, 'b'));
            }
            let start = cols[i];
            while i + 1 < cols.len() && cols[i + 1] == cols[i] + 1 {
                i += 1;
            }
            tokens.push(run(cols[i] - start + 1, 'o'));
            x = cols[i] + 1;
            i += 1;
        }
    }
    tokens.push("!".to_owned());

    let mut out = String::new();
    for c in &pattern.comments {
        let _ = writeln!(out, "#{c}");
    }
    let _ = write!(out, "x = {width}, y = {height}");
    if let Some(r) = pattern.rule {
        let _ = write!(out, ", rule = {r}");
    }
    out.push('\n');
    let mut line = String::new();
    for t in tokens {
        if line.len() + t.len() > LINE_WIDTH {
            out.push_str(&line);
            out.push('\n');
            line.clear();
        }
        line.push_str(&t);
    }
    out.push_str(&line);
    out.push('\n');
    out
}

/// Plaintext: `!` comment lines, then rows of `.` and `O` (`*` also reads as live).
pub fn parse_plaintext(text: &str) -> Result<Pattern, RleError> {
    let mut pattern = Pattern::default();
    let mut row = 0i64;
    let mut live = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if let Some(c) = line.strip_prefix('!') {
            pattern.comments.push(c.to_owned());
            continue;
        }
        for (col, ch) in line.trim_end().chars().enumerate() {
            match ch {
                '.' => {}
                'O' | '*' => live.push(Cell::new(col as i64, -row)),
                c => {
                    return Err(RleError::Syntax { line: n + 1, message: format!("unexpected {c:?}") })
                }
            }
        }
        row += 1;
    }
    pattern.cells = CellConfig::new(live);
    Ok(pattern)
}

pub fn write_plaintext(pattern: &Pattern) -> String {
    let (width, _, rows) = rows(&pattern.cells);
    let mut out = String::new();
    for c in &pattern.comments {
        let _ = writeln!(out, "!{c}");
    }
    for cols in rows {
        let mut line = vec!['.'; width as usize];
        for x in cols {
            line[x as usize] = 'O';
        }
        out.extend(line);
        out.push('\n');
    }
    out
}

/// RLE if the text has an RLE header or terminator, plaintext otherwise.
pub fn parse_pattern(text: &str) -> Result<Pattern, RleError> {
    let looks_rle = text
        .lines()
        .map(str::trim)
        .any(|l| l.starts_with('x') || l.starts_with('#') || l.ends_with('!'));
    if looks_rle {
        parse_rle(text)
    } else {
        parse_plaintext(text)
    }
}
