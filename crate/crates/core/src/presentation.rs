//! Finite group presentations and their text format.
//!
//! ```text
//! # symmetric group on five letters
//! generators: a, b
//! relators: a^5; b^2; (a^-1 b)^4; (a^2 b a^-2 b)^2
//! ```
//!
//! Relators are separated by `;` or by newlines outside brackets. A factor is
//! an identifier, a parenthesised word, or a commutator `[u, v]` (meaning
//! `u⁻¹ v⁻¹ u v`), optionally followed by `^n`. `#` starts a comment.

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::word::{Letter, Word};

/// Longest relator the parser will expand powers into.
pub const DEFAULT_MAX_EXPANDED_LEN: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unknown generator `{name}`")]
    UnknownGenerator { line: usize, col: usize, name: String },
    #[error("{line}:{col}: duplicate generator `{name}`")]
    DuplicateGenerator { line: usize, col: usize, name: String },
    #[error("{line}:{col}: expanded word would exceed {cap} letters")]
    ExpansionCap { line: usize, col: usize, cap: usize },
}

/// A finitely presented group `⟨generators | relators⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("relator {index} uses generator {gen} but only {n_gens} exist")]
    RelatorOutOfRange { index: usize, gen: usize, n_gens: usize },
    #[error("relator index {0} out of range")]
    SelectionOutOfRange(usize),
    #[error("relator index {0} selected twice")]
    SelectionDuplicate(usize),
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Presentation {
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut seen = HashSet::new();
        for name in &generator_names {
            if !is_identifier(name) {
                return Err(PresentationError::InvalidName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(PresentationError::DuplicateName(name.clone()));
            }
        }
        let n = generator_names.len();
        for (index, r) in relators.iter().enumerate() {
            if r.generator_bound() > n {
                return Err(PresentationError::RelatorOutOfRange {
                    index,
                    gen: r.generator_bound() - 1,
                    n_gens: n,
                });
            }
        }
        Ok(Presentation { generator_names, relators })
    }

    /// Presentation with generators named `a, b, c, …` (then `g26, g27, …`).
    pub fn with_default_names(n_gens: usize, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let names = (0..n_gens)
            .map(|i| {
                if i < 26 {
                    ((b'a' + i as u8) as char).to_string()
                } else {
                    format!("g{i}")
                }
            })
            .collect();
        Presentation::new(names, relators)
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse_presentation(text)
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn n_generators(&self) -> usize {
        self.generator_names.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn n_relators(&self) -> usize {
        self.relators.len()
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    /// Same generators, different relators.
    pub fn with_relators(&self, relators: Vec<Word>) -> Presentation {
        debug_assert!(relators.iter().all(|r| r.generator_bound() <= self.n_generators()));
        Presentation { generator_names: self.generator_names.clone(), relators }
    }

    pub fn display_word<'a>(&'a self, w: &'a Word) -> crate::word::WordDisplay<'a> {
        w.display_with(&self.generator_names)
    }

    /// Parses a single word over this presentation's generators.
    pub fn parse_word(&self, text: &str) -> Result<Word, ParseError> {
        let index: HashMap<&str, usize> =
            self.generator_names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let mut p = WordParser::new(text, 1, 1, &index, DEFAULT_MAX_EXPANDED_LEN);
        p.skip_ws(false);
        let w = p.word()?;
        p.skip_ws(true);
        if let Some(c) = p.peek() {
            return Err(p.err(format!("unexpected `{c}`")));
        }
        Ok(w)
    }

    /// `[g, r]` for every generator `g` and relator `r`, generator-major.
    pub fn generator_relator_commutators(&self) -> Vec<Word> {
        (0..self.n_generators())
            .flat_map(|g| {
                let gw = Word::generator(g);
                self.relators.iter().map(move |r| Word::commutator(&gw, r))
            })
            .collect()
    }

    /// Every relator raised to the `k`-th power, in relator order.
    pub fn power_relators(&self, k: u64) -> Vec<Word> {
        self.relators.iter().map(|r| r.power(k as i64)).collect()
    }

    /// `[gᵢ, gⱼ]` for all ordered pairs `(i, j)`, row-major, including `i = j`.
    pub fn generator_pair_commutators(&self) -> Vec<Word> {
        let n = self.n_generators();
        (0..n)
            .flat_map(|i| {
                (0..n).map(move |j| Word::commutator(&Word::generator(i), &Word::generator(j)))
            })
            .collect()
    }

    pub fn tietze_simplify(&self, max_rounds: usize) -> Presentation {
        crate::tietze::simplify(self, max_rounds)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators: {}", self.generator_names.join(", "))?;
        writeln!(f, "relators:")?;
        for r in &self.relators {
            if r.is_empty() && self.generator_names.is_empty() {
                // not expressible without a generator; the identity is implied
                continue;
            }
            writeln!(f, "  {}", self.display_word(r))?;
        }
        Ok(())
    }
}

/// An ordered subset of a presentation's relator positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RelatorSelection {
    indices: Vec<usize>,
}

impl RelatorSelection {
    pub fn new(indices: Vec<usize>, n_relators: usize) -> Result<Self, PresentationError> {
        let mut seen = HashSet::new();
        for &i in &indices {
            if i >= n_relators {
                return Err(PresentationError::SelectionOutOfRange(i));
            }
            if !seen.insert(i) {
                return Err(PresentationError::SelectionDuplicate(i));
            }
        }
        Ok(RelatorSelection { indices })
    }

    pub fn all(p: &Presentation) -> Self {
        RelatorSelection { indices: (0..p.n_relators()).collect() }
    }

    pub fn empty() -> Self {
        RelatorSelection::default()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn without(&self, index: usize) -> RelatorSelection {
        RelatorSelection { indices: self.indices.iter().copied().filter(|&i| i != index).collect() }
    }

    pub fn words<'a>(&'a self, p: &'a Presentation) -> impl Iterator<Item = &'a Word> + 'a {
        self.indices.iter().map(move |&i| &p.relators()[i])
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    parse_presentation_with_cap(text, DEFAULT_MAX_EXPANDED_LEN)
}

pub fn parse_presentation_with_cap(text: &str, max_len: usize) -> Result<Presentation, ParseError> {
    // Strip comments, keeping column positions intact.
    let lines: Vec<String> = text
        .lines()
        .map(|l| match l.find('#') {
            Some(i) => l[..i].to_string(),
            None => l.to_string(),
        })
        .collect();

    let mut gens_start = None;
    let mut rels_start = None;
    for (i, l) in lines.iter().enumerate() {
        let t = l.trim_start();
        let col = l.len() - t.len();
        if t.is_empty() {
            continue;
        }
        if let Some(rest) = t.strip_prefix("generators:") {
            if gens_start.is_some() {
                return Err(ParseError::Syntax {
                    line: i + 1,
                    col: col + 1,
                    msg: "second `generators:` section".into(),
                });
            }
            if rels_start.is_some() {
                return Err(ParseError::Syntax {
                    line: i + 1,
                    col: col + 1,
                    msg: "`generators:` must come before `relators:`".into(),
                });
            }
            gens_start = Some((i, col + "generators:".len(), rest.len()));
        } else if t.starts_with("relators:") {
            if rels_start.is_some() {
                return Err(ParseError::Syntax {
                    line: i + 1,
                    col: col + 1,
                    msg: "second `relators:` section".into(),
                });
            }
            rels_start = Some((i, col + "relators:".len()));
        } else if gens_start.is_none() {
            return Err(ParseError::Syntax {
                line: i + 1,
                col: col + 1,
                msg: "expected `generators:`".into(),
            });
        }
    }
    let (g_line, g_col, _) = gens_start.ok_or(ParseError::Syntax {
        line: 1,
        col: 1,
        msg: "missing `generators:` section".into(),
    })?;
    let g_end = rels_start.map(|(l, _)| l).unwrap_or(lines.len());

    // Generator list: comma separated, may continue over several lines.
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut expect_name = true;
    let mut saw_any = false;
    for li in g_line..g_end {
        let line = &lines[li];
        let start = if li == g_line { g_col } else { 0 };
        let bytes = line.as_bytes();
        let mut j = start;
        while j < bytes.len() {
            let c = bytes[j] as char;
            if c.is_whitespace() {
                j += 1;
            } else if c == ',' {
                if expect_name {
                    return Err(ParseError::Syntax { line: li + 1, col: j + 1, msg: "expected generator name".into() });
                }
                expect_name = true;
                j += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                if !expect_name {
                    return Err(ParseError::Syntax { line: li + 1, col: j + 1, msg: "expected `,`".into() });
                }
                let s = j;
                while j < bytes.len() && ((bytes[j] as char).is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                let name = &line[s..j];
                if index.insert(name.to_string(), names.len()).is_some() {
                    return Err(ParseError::DuplicateGenerator { line: li + 1, col: s + 1, name: name.into() });
                }
                names.push(name.to_string());
                expect_name = false;
                saw_any = true;
            } else {
                return Err(ParseError::Syntax {
                    line: li + 1,
                    col: j + 1,
                    msg: format!("unexpected `{c}` in generator list"),
                });
            }
        }
    }
    if saw_any && expect_name {
        return Err(ParseError::Syntax { line: g_line + 1, col: g_col + 1, msg: "trailing `,` in generator list".into() });
    }

    let mut relators = Vec::new();
    if let Some((r_line, r_col)) = rels_start {
        let idx: HashMap<&str, usize> = index.iter().map(|(k, &v)| (k.as_str(), v)).collect();
        // Join the section into one buffer and keep a map back to (line, col).
        let mut buf = String::new();
        let mut pos: Vec<(usize, usize)> = Vec::new();
        for (li, line) in lines.iter().enumerate().skip(r_line) {
            let start = if li == r_line { r_col } else { 0 };
            for (ci, ch) in line.char_indices().filter(|&(ci, _)| ci >= start) {
                buf.push(ch);
                for _ in 0..ch.len_utf8() {
                    pos.push((li + 1, ci + 1));
                }
            }
            buf.push('\n');
            pos.push((li + 1, line.len() + 1));
        }
        let mut p = WordParser::with_positions(&buf, pos, &idx, max_len);
        loop {
            p.skip_ws(false);
            match p.peek() {
                None => break,
                Some(';') | Some('\n') => {
                    p.bump();
                    continue;
                }
                Some(_) => {}
            }
            let w = p.word()?;
            relators.push(w);
            p.skip_ws(false);
            match p.peek() {
                None => break,
                Some(';') | Some('\n') => {
                    p.bump();
                }
                Some(c) => return Err(p.err(format!("unexpected `{c}` after relator"))),
            }
        }
    }
    Ok(Presentation { generator_names: names, relators })
}

struct WordParser<'a> {
    chars: Vec<char>,
    pos: Vec<(usize, usize)>,
    at: usize,
    depth: usize,
    index: &'a HashMap<&'a str, usize>,
    max_len: usize,
}

impl<'a> WordParser<'a> {
    fn new(text: &str, line: usize, col: usize, index: &'a HashMap<&'a str, usize>, max_len: usize) -> Self {
        let pos = text.chars().enumerate().map(|(i, _)| (line, col + i)).collect();
        Self::with_positions_chars(text.chars().collect(), pos, index, max_len)
    }

    fn with_positions(text: &str, byte_pos: Vec<(usize, usize)>, index: &'a HashMap<&'a str, usize>, max_len: usize) -> Self {
        let mut pos = Vec::new();
        let mut chars = Vec::new();
        for (bi, ch) in text.char_indices() {
            chars.push(ch);
            pos.push(byte_pos[bi]);
        }
        Self::with_positions_chars(chars, pos, index, max_len)
    }

    fn with_positions_chars(chars: Vec<char>, pos: Vec<(usize, usize)>, index: &'a HashMap<&'a str, usize>, max_len: usize) -> Self {
        WordParser { chars, pos, at: 0, depth: 0, index, max_len }
    }

    fn here(&self) -> (usize, usize) {
        self.pos
            .get(self.at)
            .copied()
            .or_else(|| self.pos.last().map(|&(l, c)| (l, c + 1)))
            .unwrap_or((1, 1))
    }

    fn err(&self, msg: String) -> ParseError {
        let (line, col) = self.here();
        ParseError::Syntax { line, col, msg }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).copied()
    }

    fn bump(&mut self) {
        self.at += 1;
    }

    /// Skips blanks; newlines are skipped only inside brackets or when asked.
    fn skip_ws(&mut self, newlines: bool) {
        while let Some(c) = self.peek() {
            if c == '\n' && !(newlines || self.depth > 0) {
                break;
            }
            if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut acc = Word::identity();
        let mut any = false;
        loop {
            self.skip_ws(false);
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() || c == '_' || c == '(' || c == '[' => {
                    let f = self.factor()?;
                    acc = acc.multiply(&f);
                    if acc.len() > self.max_len {
                        let (line, col) = self.here();
                        return Err(ParseError::ExpansionCap { line, col, cap: self.max_len });
                    }
                    any = true;
                }
                _ => break,
            }
        }
        if !any {
            return Err(match self.peek() {
                Some(c) => self.err(format!("expected a word, found `{c}`")),
                None => self.err("expected a word".into()),
            });
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Word, ParseError> {
        let start = self.here();
        let atom = self.atom()?;
        self.skip_ws(false);
        if self.peek() == Some('^') {
            self.bump();
            self.skip_ws(false);
            let n = self.sint()?;
            return atom.checked_power(n, self.max_len).ok_or(ParseError::ExpansionCap {
                line: start.0,
                col: start.1,
                cap: self.max_len,
            });
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Word, ParseError> {
        match self.peek() {
            Some('(') => {
                self.bump();
                self.depth += 1;
                let w = self.word()?;
                self.skip_ws(false);
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`".into()));
                }
                self.bump();
                self.depth -= 1;
                Ok(w)
            }
            Some('[') => {
                self.bump();
                self.depth += 1;
                let u = self.word()?;
                self.skip_ws(false);
                if self.peek() != Some(',') {
                    return Err(self.err("expected `,` in commutator".into()));
                }
                self.bump();
                let v = self.word()?;
                self.skip_ws(false);
                if self.peek() != Some(']') {
                    return Err(self.err("expected `]`".into()));
                }
                self.bump();
                self.depth -= 1;
                Ok(Word::commutator(&u, &v))
            }
            _ => {
                let (line, col) = self.here();
                let s = self.at;
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        self.bump();
                    } else {
                        break;
                    }
                }
                let name: String = self.chars[s..self.at].iter().collect();
                match self.index.get(name.as_str()) {
                    Some(&g) => Ok(Word::from_letters([Letter::pos(g)])),
                    None => Err(ParseError::UnknownGenerator { line, col, name }),
                }
            }
        }
    }

    fn sint(&mut self) -> Result<i64, ParseError> {
        let (line, col) = self.here();
        let mut s = String::new();
        if self.peek() == Some('-') {
            s.push('-');
            self.bump();
        }
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        s.parse::<i64>().map_err(|_| ParseError::Syntax {
            line,
            col,
            msg: if s.trim_start_matches('-').is_empty() {
                "expected an integer exponent".into()
            } else {
                format!("exponent `{s}` out of range")
            },
        })
    }
}
