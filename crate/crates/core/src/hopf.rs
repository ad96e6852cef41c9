//! Upper bound on `dim H₂(G; 𝔽_p)` from Hopf's formula.
//!
//! With `G = F/R`, the bound is `d = a + b − c + e` where
//!
//! * `a = dim Tor(H₁(G), 𝔽_p)`,
//! * `b` is the `p`-primary rank of `F/R[F,F]`,
//! * `c` is the `p`-primary rank of `F/Rᵖ[F,F]`,
//! * `e` is the size of a generating set of `[F,R]RᵖR′ / [F,R]Rᵖ` found by
//!   discarding relators that rewrite to the identity modulo the others.
//!
//! When every Knuth–Bendix run is confluent, the surviving relators form a
//! basis and `d` is exact.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::AtomicBool;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::abelian::{prime_primary_rank, tor_dimension, PrimeField};
use crate::kb::{build_monoid_presentation, complete_with, CompletionStatus, KbConfig, Progress, RewritingSystem};
use crate::presentation::{Presentation, RelatorSelection};
use crate::word::Word;

/// `F / [F,R] Rᵖ R′` for a base presentation `F/R`.
#[derive(Debug, Clone)]
pub struct HopfQuotient {
    pub base: Presentation,
    pub prime: PrimeField,
    pub sublist: RelatorSelection,
    pub derived: Presentation,
}

impl HopfQuotient {
    /// Relators are `[g, r]` for all generators and relators, then every `rᵖ`,
    /// then the selected relators, in that order.
    pub fn new(base: &Presentation, prime: PrimeField, sublist: &RelatorSelection) -> Self {
        let mut relators = base.generator_relator_commutators();
        relators.extend(base.power_relators(prime.p()));
        relators.extend(sublist.words(base).cloned());
        HopfQuotient {
            base: base.clone(),
            prime,
            sublist: sublist.clone(),
            derived: base.with_relators(relators),
        }
    }

    pub fn complete(&self, cfg: &KbConfig, cancel: &AtomicBool, on_progress: impl FnMut(Progress)) -> RewritingSystem {
        complete_with(&build_monoid_presentation(&self.derived), cfg, cancel, on_progress)
    }
}

/// Reduces `z` in `F / [F,R] Rᵖ R′`, returning the irreducible word and the
/// status of the completion that produced it.
pub fn reduce_word(
    base: &Presentation,
    z: &Word,
    sublist: &RelatorSelection,
    k: PrimeField,
    cfg: &KbConfig,
) -> (Word, CompletionStatus) {
    let never = AtomicBool::new(false);
    let rs = HopfQuotient::new(base, k, sublist).complete(cfg, &never, |_| {});
    (rs.reduce(z), rs.status())
}

/// Hooks into a running bound computation. All methods default to no-ops.
pub trait HopfObserver {
    fn pass_started(&mut self, _pass: usize, _selection: &RelatorSelection) {}
    fn candidate_tested(&mut self, _pass: usize, _relator: usize, _removed: bool, _status: CompletionStatus) {}
    fn completion_progress(&mut self, _progress: Progress) {}
}

/// Observer that ignores everything.
pub struct Silent;

impl HopfObserver for Silent {}

/// A relator dropped because it rewrote to the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Removal {
    pub pass: usize,
    pub relator: usize,
    /// The relators kept in the quotient while testing.
    pub sublist: Vec<usize>,
    pub status: CompletionStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FindBasisResult {
    pub survivors: RelatorSelection,
    pub e: usize,
    pub all_confluent: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HopfReport {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub e: usize,
    pub d: i64,
    /// `e` after each pass of the refinement loop.
    pub pass_history: Vec<usize>,
    pub all_confluent: bool,
    /// Whether the last pass removed nothing.
    pub stabilized: bool,
    /// One entry per completion actually run (cache hits are not repeated).
    pub statuses: Vec<CompletionStatus>,
    pub survivors: Vec<usize>,
    pub removals: Vec<Removal>,
    pub wall_times: BTreeMap<String, Duration>,
}

impl HopfReport {
    /// `d` equals `dim H₂(G; 𝔽_p)` rather than bounding it.
    pub fn exact(&self) -> bool {
        self.all_confluent && self.stabilized
    }

    pub fn reached_cap(&self) -> bool {
        !self.all_confluent
    }

    /// Internal consistency of the reported numbers.
    pub fn check(&self) -> Result<(), String> {
        let expected = self.a as i64 + self.b as i64 - self.c as i64 + self.e as i64;
        if self.d != expected {
            return Err(format!("d = {} but a + b - c + e = {expected}", self.d));
        }
        if self.pass_history.windows(2).any(|w| w[1] > w[0]) {
            return Err(format!("pass history {:?} increases", self.pass_history));
        }
        if self.pass_history.last().is_some_and(|&e| e != self.e) || self.survivors.len() != self.e {
            return Err("e disagrees with the survivors".into());
        }
        let confluent = self.statuses.iter().all(|s| *s == CompletionStatus::Confluent);
        if confluent != self.all_confluent {
            return Err("all_confluent disagrees with statuses".into());
        }
        Ok(())
    }
}

/// Runs the refinement loop over one base presentation, caching completed
/// systems by the set of selected relators.
pub struct HopfBound<'a> {
    base: &'a Presentation,
    k: PrimeField,
    cfg: &'a KbConfig,
    cancel: &'a AtomicBool,
    cache: HashMap<Vec<usize>, Arc<RewritingSystem>>,
    statuses: Vec<CompletionStatus>,
    removals: Vec<Removal>,
}

impl<'a> HopfBound<'a> {
    pub fn new(base: &'a Presentation, k: PrimeField, cfg: &'a KbConfig, cancel: &'a AtomicBool) -> Self {
        HopfBound { base, k, cfg, cancel, cache: HashMap::new(), statuses: Vec::new(), removals: Vec::new() }
    }

    fn system(&mut self, sublist: &RelatorSelection, obs: &mut dyn HopfObserver) -> Arc<RewritingSystem> {
        let mut key = sublist.indices().to_vec();
        key.sort_unstable();
        if let Some(rs) = self.cache.get(&key) {
            return Arc::clone(rs);
        }
        let q = HopfQuotient::new(self.base, self.k, sublist);
        let rs = Arc::new(q.complete(self.cfg, self.cancel, |p| obs.completion_progress(p)));
        self.statuses.push(rs.status());
        self.cache.insert(key, Arc::clone(&rs));
        rs
    }

    /// Completed systems keyed by the sorted selected relator indices.
    pub fn systems(&self) -> impl Iterator<Item = (&[usize], &RewritingSystem)> {
        self.cache.iter().map(|(k, rs)| (k.as_slice(), rs.as_ref()))
    }

    /// One pass: test each selected relator against the others, dropping it
    /// at once when it rewrites to the identity.
    pub fn find_basis_pass(
        &mut self,
        pass: usize,
        selection: &RelatorSelection,
        obs: &mut dyn HopfObserver,
    ) -> FindBasisResult {
        obs.pass_started(pass, selection);
        let mut current = selection.clone();
        let mut all_confluent = true;
        for &x in selection.indices() {
            let rest = current.without(x);
            let rs = self.system(&rest, obs);
            all_confluent &= rs.is_confluent();
            let removed = rs.reduce(&self.base.relators()[x]).is_identity();
            obs.candidate_tested(pass, x, removed, rs.status());
            if removed {
                self.removals.push(Removal {
                    pass,
                    relator: x,
                    sublist: rest.indices().to_vec(),
                    status: rs.status(),
                });
                current = rest;
            }
        }
        let e = current.len();
        FindBasisResult { survivors: current, e, all_confluent }
    }

    pub fn run(&mut self, initial: &RelatorSelection, max_passes: usize, obs: &mut dyn HopfObserver) -> HopfReport {
        let start = Instant::now();
        let mut wall_times = BTreeMap::new();

        let t = Instant::now();
        let a = tor_dimension(self.base, self.k);
        let pairs = self.base.generator_pair_commutators();
        let mut with_r = self.base.relators().to_vec();
        with_r.extend(pairs.iter().cloned());
        let b = prime_primary_rank(&self.base.with_relators(with_r), self.k) as usize;
        let mut with_rp = self.base.power_relators(self.k.p());
        with_rp.extend(pairs);
        let c = prime_primary_rank(&self.base.with_relators(with_rp), self.k) as usize;
        wall_times.insert("abelian".to_string(), t.elapsed());

        let mut selection = initial.clone();
        let mut history = Vec::new();
        let mut all_confluent = true;
        let mut stabilized = false;
        for pass in 1..=max_passes.max(1) {
            let t = Instant::now();
            let res = self.find_basis_pass(pass, &selection, obs);
            wall_times.insert(format!("pass_{pass}"), t.elapsed());
            all_confluent &= res.all_confluent;
            history.push(res.e);
            let unchanged = res.survivors == selection;
            selection = res.survivors;
            if unchanged {
                stabilized = true;
                break;
            }
        }
        wall_times.insert("total".to_string(), start.elapsed());

        let e = selection.len();
        HopfReport {
            a,
            b,
            c,
            e,
            d: a as i64 + b as i64 - c as i64 + e as i64,
            pass_history: history,
            all_confluent,
            stabilized,
            statuses: std::mem::take(&mut self.statuses),
            survivors: selection.indices().to_vec(),
            removals: std::mem::take(&mut self.removals),
            wall_times,
        }
    }
}

/// A single `FindBasis` pass from a fresh cache.
pub fn find_basis(base: &Presentation, k: PrimeField, initial: &RelatorSelection, cfg: &KbConfig) -> FindBasisResult {
    let never = AtomicBool::new(false);
    HopfBound::new(base, k, cfg, &never).find_basis_pass(1, initial, &mut Silent)
}

/// `d = a + b − c + e`, repeating `FindBasis` until the survivors stop
/// changing or `max_passes` is reached.
pub fn second_homology_bound(
    base: &Presentation,
    k: PrimeField,
    initial: &RelatorSelection,
    cfg: &KbConfig,
    max_passes: usize,
) -> HopfReport {
    let never = AtomicBool::new(false);
    HopfBound::new(base, k, cfg, &never).run(initial, max_passes, &mut Silent)
}
