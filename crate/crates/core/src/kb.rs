//! Knuth–Bendix completion for group presentations viewed as string
//! rewriting systems.
//!
//! Words live over the doubled alphabet `g₀ < g₀⁻¹ < g₁ < g₁⁻¹ < …`, encoded
//! as `2·g + inverse`. Rules are oriented by shortlex, so reduction always
//! terminates. Completion may stop early on resource caps; the result is then
//! still sound (every rule is a consequence of the input) but not known to be
//! confluent, and a word that fails to reduce to the identity may still be
//! trivial in the group.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::Presentation;
use crate::word::{format_letters, Letter, Word};

/// Resource limits for [`complete`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KbConfig {
    /// Stop with [`CompletionStatus::Capped`] once the system holds more rules.
    pub max_equations: usize,
    /// Full interreduction after this many new rules.
    pub tidy_interval: usize,
    pub max_seconds: Option<f64>,
    /// Equations whose larger side exceeds this length are dropped; a run that
    /// drops anything cannot be reported confluent.
    pub max_rule_length: Option<usize>,
}

impl Default for KbConfig {
    fn default() -> Self {
        KbConfig { max_equations: 500_000, tidy_interval: 100, max_seconds: None, max_rule_length: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KbError {
    #[error("max_equations must be at least 1")]
    ZeroMaxEquations,
    #[error("tidy_interval must be at least 1")]
    ZeroTidyInterval,
    #[error("line {line}: {msg}")]
    Dump { line: usize, msg: String },
}

impl KbConfig {
    pub fn validate(&self) -> Result<(), KbError> {
        if self.max_equations == 0 {
            return Err(KbError::ZeroMaxEquations);
        }
        if self.tidy_interval == 0 {
            return Err(KbError::ZeroTidyInterval);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompletionStatus {
    Confluent,
    Capped,
    /// Wall-clock budget exhausted or cancelled from outside.
    TimedOut,
}

impl CompletionStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CompletionStatus::Confluent => "confluent",
            CompletionStatus::Capped => "capped",
            CompletionStatus::TimedOut => "timed_out",
        }
    }
}

impl fmt::Display for CompletionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Shortlex order on letter codes: length first, then lexicographic.
pub fn shortlex_cmp(u: &[u32], v: &[u32]) -> Ordering {
    u.len().cmp(&v.len()).then_with(|| u.cmp(v))
}

pub fn word_codes(w: &Word) -> Vec<u32> {
    w.letters().iter().map(|l| l.code()).collect()
}

pub fn codes_to_letters(codes: &[u32]) -> Vec<Letter> {
    codes.iter().map(|&c| Letter::from_code(c)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Vec<u32>,
    pub rhs: Vec<u32>,
}

impl RewriteRule {
    pub fn lhs_letters(&self) -> Vec<Letter> {
        codes_to_letters(&self.lhs)
    }

    pub fn rhs_letters(&self) -> Vec<Letter> {
        codes_to_letters(&self.rhs)
    }
}

/// Equations handed to [`complete`]: free cancellation plus one per relator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialRules {
    pub n_generators: usize,
    pub equations: Vec<(Vec<u32>, Vec<u32>)>,
}

pub fn build_monoid_presentation(p: &Presentation) -> InitialRules {
    let n = p.n_generators();
    let mut equations = Vec::with_capacity(2 * n + p.n_relators());
    for g in 0..n as u32 {
        equations.push((vec![2 * g, 2 * g + 1], vec![]));
        equations.push((vec![2 * g + 1, 2 * g], vec![]));
    }
    for r in p.relators() {
        if !r.is_empty() {
            equations.push((word_codes(r), vec![]));
        }
    }
    InitialRules { n_generators: n, equations }
}

/// Index over reversed left-hand sides, so the rule matching a suffix of the
/// current output is found by walking backwards from its end.
#[derive(Debug, Clone)]
struct SuffixTrie {
    alpha: usize,
    next: Vec<u32>,
    rule: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl SuffixTrie {
    fn new(alpha: usize) -> Self {
        SuffixTrie { alpha, next: vec![NONE; alpha.max(1)], rule: vec![NONE] }
    }

    fn insert(&mut self, lhs: &[u32], id: u32) {
        let mut node = 0usize;
        for &c in lhs.iter().rev() {
            let slot = node * self.alpha + c as usize;
            let child = self.next[slot];
            node = if child == NONE {
                let new = self.rule.len();
                self.rule.push(NONE);
                self.next.extend(std::iter::repeat(NONE).take(self.alpha));
                self.next[slot] = new as u32;
                new
            } else {
                child as usize
            };
        }
        self.rule[node] = id;
    }

    fn remove(&mut self, lhs: &[u32]) {
        if let Some(node) = self.node_for(lhs) {
            self.rule[node] = NONE;
        }
    }

    fn node_for(&self, lhs: &[u32]) -> Option<usize> {
        let mut node = 0usize;
        for &c in lhs.iter().rev() {
            let child = self.next[node * self.alpha + c as usize];
            if child == NONE {
                return None;
            }
            node = child as usize;
        }
        Some(node)
    }

    /// Shortest rule whose left-hand side is a suffix of `s`.
    #[inline]
    fn match_suffix(&self, s: &[u32]) -> Option<u32> {
        let mut node = 0usize;
        for &c in s.iter().rev() {
            let child = self.next[node * self.alpha + c as usize];
            if child == NONE {
                return None;
            }
            node = child as usize;
            if self.rule[node] != NONE {
                return Some(self.rule[node]);
            }
        }
        None
    }

    /// Any rule other than `skip` whose left-hand side is a suffix of `s`.
    fn match_suffix_except(&self, s: &[u32], skip: u32) -> Option<u32> {
        let mut node = 0usize;
        for &c in s.iter().rev() {
            let child = self.next[node * self.alpha + c as usize];
            if child == NONE {
                return None;
            }
            node = child as usize;
            let r = self.rule[node];
            if r != NONE && r != skip {
                return Some(r);
            }
        }
        None
    }
}

fn reduce_with(trie: &SuffixTrie, rules: &[RewriteRule], input: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = Vec::with_capacity(input.len());
    let mut pending: Vec<u32> = input.iter().rev().copied().collect();
    while let Some(c) = pending.pop() {
        out.push(c);
        if let Some(id) = trie.match_suffix(&out) {
            let rule = &rules[id as usize];
            out.truncate(out.len() - rule.lhs.len());
            pending.extend(rule.rhs.iter().rev());
        }
    }
    out
}

/// Snapshot emitted while completion runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progress {
    pub equations_processed: u64,
    pub rules: usize,
    pub pending: usize,
}

/// How often (in processed equations) progress is reported.
const PROGRESS_EVERY: u64 = 1000;

/// A finished (possibly incomplete) rewriting system.
#[derive(Debug, Clone)]
pub struct RewritingSystem {
    n_generators: usize,
    rules: Vec<RewriteRule>,
    trie: SuffixTrie,
    status: CompletionStatus,
    equations_processed: u64,
}

impl RewritingSystem {
    fn from_rules(
        n_generators: usize,
        rules: Vec<RewriteRule>,
        status: CompletionStatus,
        equations_processed: u64,
    ) -> Self {
        let mut trie = SuffixTrie::new(2 * n_generators);
        for (i, r) in rules.iter().enumerate() {
            trie.insert(&r.lhs, i as u32);
        }
        RewritingSystem { n_generators, rules, trie, status, equations_processed }
    }

    pub fn status(&self) -> CompletionStatus {
        self.status
    }

    pub fn is_confluent(&self) -> bool {
        self.status == CompletionStatus::Confluent
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn n_generators(&self) -> usize {
        self.n_generators
    }

    pub fn equations_processed(&self) -> u64 {
        self.equations_processed
    }

    pub fn reduce_codes(&self, codes: &[u32]) -> Vec<u32> {
        reduce_with(&self.trie, &self.rules, codes)
    }

    /// Leftmost-innermost rewriting to an irreducible word.
    pub fn reduce(&self, w: &Word) -> Word {
        assert!(
            w.generator_bound() <= self.n_generators,
            "word uses generators outside the rewriting system"
        );
        let out = self.reduce_codes(&word_codes(w));
        Word::from_letters(codes_to_letters(&out))
    }

    pub fn is_irreducible(&self, codes: &[u32]) -> bool {
        (1..=codes.len()).all(|end| self.trie.match_suffix(&codes[..end]).is_none())
    }

    /// Breadth-first listing of irreducible words, in shortlex order.
    pub fn enumerate_normal_forms(&self, max_count: usize) -> NormalForms {
        let alpha = 2 * self.n_generators as u32;
        let mut found: Vec<Vec<u32>> = Vec::new();
        let mut queue: VecDeque<Vec<u32>> = VecDeque::new();
        queue.push_back(Vec::new());
        while let Some(w) = queue.pop_front() {
            found.push(w.clone());
            if found.len() >= max_count {
                return NormalForms::Overflow;
            }
            for c in 0..alpha {
                let mut next = w.clone();
                next.push(c);
                // `w` is irreducible, so only suffixes can match
                if self.trie.match_suffix(&next).is_none() {
                    queue.push_back(next);
                }
            }
        }
        NormalForms::Complete(
            found.iter().map(|c| Word::from_letters(codes_to_letters(c))).collect(),
        )
    }

    /// Checks every overlap of every rule pair directly. Quadratic in the
    /// number of rules; meant for verification of small systems.
    pub fn check_confluence(&self) -> bool {
        for (i, a) in self.rules.iter().enumerate() {
            for b in &self.rules[i..] {
                for (x, y) in critical_pairs(a, b).chain(critical_pairs(b, a)) {
                    if self.reduce_codes(&x) != self.reduce_codes(&y) {
                        return false;
                    }
                }
                for (x, y) in inclusion_pairs(a, b).chain(inclusion_pairs(b, a)) {
                    if self.reduce_codes(&x) != self.reduce_codes(&y) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// One `lhs -> rhs` per line in the presentation word grammar, preceded by
    /// comment lines recording the generators and completion status.
    pub fn dump(&self, names: &[String]) -> String {
        let mut out = String::new();
        out.push_str(&format!("# generators: {}\n", names.join(", ")));
        out.push_str(&format!("# status: {}\n", self.status));
        out.push_str(&format!("# equations_processed: {}\n", self.equations_processed));
        for r in &self.rules {
            out.push_str(&format_letters(&r.lhs_letters(), names));
            out.push_str(" -> ");
            out.push_str(&format_letters(&r.rhs_letters(), names));
            out.push('\n');
        }
        out
    }

    /// Reads a [`RewritingSystem::dump`] back, resolving names against `names`.
    pub fn load(text: &str, names: &[String]) -> Result<Self, KbError> {
        let mut status = CompletionStatus::Capped;
        let mut processed = 0;
        let mut rules = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let t = raw.trim();
            if let Some(c) = t.strip_prefix('#') {
                let c = c.trim();
                if let Some(s) = c.strip_prefix("status:") {
                    status = match s.trim() {
                        "confluent" => CompletionStatus::Confluent,
                        "capped" => CompletionStatus::Capped,
                        "timed_out" => CompletionStatus::TimedOut,
                        other => return Err(KbError::Dump { line, msg: format!("unknown status `{other}`") }),
                    };
                } else if let Some(s) = c.strip_prefix("equations_processed:") {
                    processed = s.trim().parse().map_err(|_| KbError::Dump {
                        line,
                        msg: "bad equations_processed".into(),
                    })?;
                } else if let Some(s) = c.strip_prefix("generators:") {
                    let listed: Vec<&str> =
                        s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect();
                    if listed != names.iter().map(String::as_str).collect::<Vec<_>>() {
                        return Err(KbError::Dump {
                            line,
                            msg: "generator list does not match the presentation".into(),
                        });
                    }
                }
                continue;
            }
            if t.is_empty() {
                continue;
            }
            let (l, r) = t.split_once("->").ok_or(KbError::Dump { line, msg: "expected `lhs -> rhs`".into() })?;
            let lhs = parse_raw(l, names).map_err(|msg| KbError::Dump { line, msg })?;
            let rhs = parse_raw(r, names).map_err(|msg| KbError::Dump { line, msg })?;
            if shortlex_cmp(&lhs, &rhs) != Ordering::Greater {
                return Err(KbError::Dump { line, msg: "rule is not shortlex-decreasing".into() });
            }
            rules.push(RewriteRule { lhs, rhs });
        }
        Ok(RewritingSystem::from_rules(names.len(), rules, status, processed))
    }
}

/// Parses `a^2 b^-1 a` into letter codes without free reduction.
fn parse_raw(s: &str, names: &[String]) -> Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for tok in s.split_whitespace() {
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => (n, e.parse::<i64>().map_err(|_| format!("bad exponent in `{tok}`"))?),
            None => (tok, 1),
        };
        let g = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| format!("unknown generator `{name}`"))?;
        let code = Letter::new(g, exp < 0).code();
        out.extend(std::iter::repeat(code).take(exp.unsigned_abs() as usize));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalForms {
    Complete(Vec<Word>),
    Overflow,
}

impl NormalForms {
    pub fn count(&self) -> Option<usize> {
        match self {
            NormalForms::Complete(v) => Some(v.len()),
            NormalForms::Overflow => None,
        }
    }
}

/// Overlaps where a proper suffix of `a.lhs` is a proper prefix of `b.lhs`.
fn critical_pairs<'a>(
    a: &'a RewriteRule,
    b: &'a RewriteRule,
) -> impl Iterator<Item = (Vec<u32>, Vec<u32>)> + 'a {
    let max = a.lhs.len().min(b.lhs.len());
    (1..max).filter_map(move |k| {
        if a.lhs[a.lhs.len() - k..] != b.lhs[..k] {
            return None;
        }
        // a.lhs = u·v, b.lhs = v·w
        let mut x = a.rhs.clone();
        x.extend_from_slice(&b.lhs[k..]);
        let mut y = a.lhs[..a.lhs.len() - k].to_vec();
        y.extend_from_slice(&b.rhs);
        Some((x, y))
    })
}

/// Positions where `b.lhs` occurs inside `a.lhs` (other than `a == b`).
fn inclusion_pairs<'a>(
    a: &'a RewriteRule,
    b: &'a RewriteRule,
) -> impl Iterator<Item = (Vec<u32>, Vec<u32>)> + 'a {
    let n = b.lhs.len();
    let same = std::ptr::eq(a, b);
    (0..=a.lhs.len().saturating_sub(n)).filter_map(move |i| {
        if same || n > a.lhs.len() || a.lhs[i..i + n] != b.lhs[..] {
            return None;
        }
        let mut y = a.lhs[..i].to_vec();
        y.extend_from_slice(&b.rhs);
        y.extend_from_slice(&a.lhs[i + n..]);
        Some((a.rhs.clone(), y))
    })
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct Pending {
    size: usize,
    seq: u64,
    lhs: Vec<u32>,
    rhs: Vec<u32>,
}

struct Completer<'a> {
    cfg: &'a KbConfig,
    n_generators: usize,
    rules: Vec<RewriteRule>,
    alive: Vec<bool>,
    n_alive: usize,
    trie: SuffixTrie,
    queue: BinaryHeap<Reverse<Pending>>,
    seq: u64,
    next_overlap: usize,
    added_since_tidy: usize,
    /// Rules added since the last tidy.
    fresh: Vec<usize>,
    /// Rule ids bucketed by left-hand side length.
    by_len: Vec<Vec<u32>>,
    dropped_long: bool,
    processed: u64,
}

impl<'a> Completer<'a> {
    fn new(n_generators: usize, cfg: &'a KbConfig) -> Self {
        Completer {
            cfg,
            n_generators,
            rules: Vec::new(),
            alive: Vec::new(),
            n_alive: 0,
            trie: SuffixTrie::new(2 * n_generators),
            queue: BinaryHeap::new(),
            seq: 0,
            next_overlap: 0,
            added_since_tidy: 0,
            fresh: Vec::new(),
            by_len: Vec::new(),
            dropped_long: false,
            processed: 0,
        }
    }

    fn reduce(&self, w: &[u32]) -> Vec<u32> {
        reduce_with(&self.trie, &self.rules, w)
    }

    fn push(&mut self, lhs: Vec<u32>, rhs: Vec<u32>) {
        self.seq += 1;
        self.queue.push(Reverse(Pending { size: lhs.len() + rhs.len(), seq: self.seq, lhs, rhs }));
    }

    /// Reduces both sides and, if they differ, pushes them for processing.
    fn consider(&mut self, x: &[u32], y: &[u32]) {
        let rx = self.reduce(x);
        let ry = self.reduce(y);
        if rx != ry {
            self.push(rx, ry);
        }
    }

    fn add_rule(&mut self, lhs: Vec<u32>, rhs: Vec<u32>) {
        let id = self.rules.len() as u32;
        self.trie.insert(&lhs, id);
        self.rules.push(RewriteRule { lhs, rhs });
        self.alive.push(true);
        self.fresh.push(id as usize);
        let len = self.rules[id as usize].lhs.len();
        if self.by_len.len() <= len {
            self.by_len.resize_with(len + 1, Vec::new);
        }
        self.by_len[len].push(id);
        self.n_alive += 1;
        self.added_since_tidy += 1;
    }

    /// Orients and adds one queued equation. Returns whether a rule was added.
    fn process(&mut self, p: Pending) -> bool {
        self.processed += 1;
        let a = self.reduce(&p.lhs);
        let b = self.reduce(&p.rhs);
        let (lhs, rhs) = match shortlex_cmp(&a, &b) {
            Ordering::Equal => return false,
            Ordering::Greater => (a, b),
            Ordering::Less => (b, a),
        };
        if self.cfg.max_rule_length.is_some_and(|m| lhs.len() > m) {
            self.dropped_long = true;
            return false;
        }
        self.add_rule(lhs, rhs);
        true
    }

    fn kill(&mut self, id: usize) {
        self.alive[id] = false;
        self.n_alive -= 1;
        self.trie.remove(&self.rules[id].lhs);
        let r = self.rules[id].clone();
        self.push(r.lhs, r.rhs);
    }

    /// Interreduction: drop rules whose left side contains another rule's left
    /// side (re-queueing them), normalize right sides, and discard queued
    /// equations that have become joinable. Returns whether any rule was dropped.
    ///
    /// A left side is irreducible when its rule is added, so only rules added
    /// since the previous tidy can make anything reducible; the scan uses an
    /// index over just those.
    fn tidy(&mut self) -> bool {
        self.added_since_tidy = 0;
        let fresh_ids = std::mem::take(&mut self.fresh);
        let mut fresh = SuffixTrie::new(2 * self.n_generators);
        let mut any = false;
        for &id in &fresh_ids {
            if self.alive[id] {
                fresh.insert(&self.rules[id].lhs, id as u32);
                any = true;
            }
        }
        if !any {
            return false;
        }
        let min_len = fresh_ids.iter().map(|&id| self.rules[id].lhs.len()).min().unwrap_or(0);
        let hits = |s: &[u32], skip: u32| {
            s.len() >= min_len && (min_len..=s.len()).any(|end| fresh.match_suffix_except(&s[..end], skip).is_some())
        };
        let mut killed = false;
        // |rhs| ≤ |lhs|, so rules with shorter left sides cannot be affected
        let candidates: Vec<usize> = self.by_len.iter().skip(min_len).flatten().map(|&id| id as usize).collect();
        for id in candidates {
            if !self.alive[id] {
                continue;
            }
            if hits(&self.rules[id].lhs, id as u32) {
                self.kill(id);
                killed = true;
            } else if hits(&self.rules[id].rhs, NONE) {
                let rhs = self.reduce(&self.rules[id].rhs);
                self.rules[id].rhs = rhs;
            }
        }
        for bucket in &mut self.by_len {
            bucket.retain(|&id| self.alive[id as usize]);
        }
        if killed {
            self.compact_trie();
        }
        let old = std::mem::take(&mut self.queue);
        for Reverse(p) in old.into_vec() {
            if hits(&p.lhs, NONE) || hits(&p.rhs, NONE) {
                self.consider(&p.lhs, &p.rhs);
            } else {
                self.queue.push(Reverse(p));
            }
        }
        killed
    }

    /// Rebuilds the index once removed rules account for most of its nodes.
    fn compact_trie(&mut self) {
        let live: usize = self.by_len.iter().enumerate().map(|(len, b)| len * b.len()).sum();
        if self.trie.rule.len() > 2 * live + 1024 {
            let mut trie = SuffixTrie::new(2 * self.n_generators);
            for (id, r) in self.rules.iter().enumerate() {
                if self.alive[id] {
                    trie.insert(&r.lhs, id as u32);
                }
            }
            self.trie = trie;
        }
    }

    fn overlaps_for(&mut self, i: usize) {
        for j in 0..=i {
            if !self.alive[j] || !self.alive[i] {
                continue;
            }
            let pairs: Vec<(Vec<u32>, Vec<u32>)> = if i == j {
                critical_pairs(&self.rules[i], &self.rules[i]).collect()
            } else {
                critical_pairs(&self.rules[i], &self.rules[j])
                    .chain(critical_pairs(&self.rules[j], &self.rules[i]))
                    .collect()
            };
            for (x, y) in pairs {
                self.consider(&x, &y);
            }
        }
    }

    fn finish(self, status: CompletionStatus) -> RewritingSystem {
        let rules: Vec<RewriteRule> = self
            .rules
            .into_iter()
            .zip(self.alive)
            .filter_map(|(r, a)| a.then_some(r))
            .collect();
        RewritingSystem::from_rules(self.n_generators, rules, status, self.processed)
    }
}

/// [`complete_with`] without cancellation or progress reporting.
pub fn complete(initial: &InitialRules, cfg: &KbConfig) -> RewritingSystem {
    let never = AtomicBool::new(false);
    complete_with(initial, cfg, &never, |_| {})
}

/// Runs completion under shortlex. The shortest pending equation is always
/// processed first; overlaps of one rule at a time are added to the queue
/// once it drains. `cancel` is polled once per processed equation.
pub fn complete_with(
    initial: &InitialRules,
    cfg: &KbConfig,
    cancel: &AtomicBool,
    mut on_progress: impl FnMut(Progress),
) -> RewritingSystem {
    let mut c = Completer::new(initial.n_generators, cfg);
    let deadline = cfg.max_seconds.map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0)));
    for (l, r) in &initial.equations {
        c.push(l.clone(), r.clone());
    }
    let report = |c: &Completer, f: &mut dyn FnMut(Progress)| {
        f(Progress { equations_processed: c.processed, rules: c.n_alive, pending: c.queue.len() })
    };
    loop {
        if cancel.load(AtomicOrdering::Relaxed) || deadline.is_some_and(|d| Instant::now() >= d) {
            report(&c, &mut on_progress);
            return c.finish(CompletionStatus::TimedOut);
        }
        if let Some(Reverse(p)) = c.queue.pop() {
            c.process(p);
            if c.processed % PROGRESS_EVERY == 0 {
                report(&c, &mut on_progress);
            }
            if c.n_alive > cfg.max_equations {
                report(&c, &mut on_progress);
                return c.finish(CompletionStatus::Capped);
            }
            if c.added_since_tidy >= cfg.tidy_interval {
                c.tidy();
            }
            continue;
        }
        if let Some(i) = (c.next_overlap..c.rules.len()).find(|&i| c.alive[i]) {
            c.next_overlap = i + 1;
            c.overlaps_for(i);
            continue;
        }
        c.next_overlap = c.rules.len();
        if c.tidy() || !c.queue.is_empty() {
            continue;
        }
        report(&c, &mut on_progress);
        let status = if c.dropped_long { CompletionStatus::Capped } else { CompletionStatus::Confluent };
        return c.finish(status);
    }
}
