//! Completion of a finite set to a Gröbner Σ-basis.
//!
//! Pairs are taken smallest first by `(ord(lcm), lcm, age)`. Three drivers
//! share one loop: plain (bounded only by a pair budget), truncated at a
//! fixed order, and adaptive, which raises the order bound to twice the
//! largest leading-monomial order until it stops moving and then certifies
//! the result with the finite Σ-criterion.

mod minimal;
mod pairs;
mod verify;

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ordering::OrderingSpec;
use crate::reduction::{Reducers, ShiftPolicy};
use crate::ring::{OrdValue, Poly, Ring};
use crate::shift::Shift;

pub use minimal::{interreduce, minimalize, sigma_divides};
pub use pairs::{critical_pairs, critical_pairs_counted, CriticalPair, PairCounts};
pub use verify::{check_finite_membership, verify_sigma_gbasis, FailingPair, VerifyReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Plain,
    /// Only pairs and reducers of order at most `d`. Negative `d` is
    /// rejected.
    Truncated(i64),
    Adaptive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionOptions {
    pub mode: Mode,
    pub chain_criterion: bool,
    /// Maximum number of S-polynomial reductions.
    pub max_pairs: u64,
    /// Adaptive mode gives up once the order bound would exceed this.
    pub max_order: u64,
}

impl Default for CompletionOptions {
    fn default() -> Self {
        CompletionOptions {
            mode: Mode::Plain,
            chain_criterion: true,
            max_pairs: 100_000,
            max_order: 64,
        }
    }
}

impl CompletionOptions {
    pub fn with_mode(mode: Mode) -> Self {
        CompletionOptions {
            mode,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "order", rename_all = "snake_case")]
pub enum Status {
    Complete,
    CompleteUpToOrder(u64),
    BudgetExhausted,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Status::Complete => f.write_str("complete"),
            Status::CompleteUpToOrder(d) => write!(f, "complete_up_to_order({d})"),
            Status::BudgetExhausted => f.write_str("budget_exhausted"),
        }
    }
}

/// Pair bookkeeping. `product` counts element pairs whose leading
/// monomials share no symbol; `sigma` counts candidates merged into an
/// existing pair, trivial self-pairs and mirrored self-pairs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub generated: u64,
    pub product: u64,
    pub sigma: u64,
    pub chain: u64,
    pub truncated: u64,
    pub reduced: u64,
    pub zero: u64,
    pub new_elements: u64,
}

#[derive(Clone, Debug)]
pub struct SigmaBasis {
    pub ring: Ring,
    pub elements: Vec<Poly>,
    pub status: Status,
    pub stats: Stats,
}

impl SigmaBasis {
    pub fn leading_monomials(&self) -> Vec<crate::ring::Monomial> {
        self.elements.iter().filter_map(|g| g.lm().cloned()).collect()
    }
}

struct Queued {
    pair: CriticalPair,
    age: u64,
    order: Arc<OrderingSpec>,
}

impl Queued {
    fn key_cmp(&self, other: &Self) -> Ordering {
        self.pair
            .ord_bound
            .cmp(&other.pair.ord_bound)
            .then_with(|| self.order.compare_monomials(&self.pair.lcm, &other.pair.lcm))
            .then_with(|| self.age.cmp(&other.age))
    }
}

impl PartialEq for Queued {
    fn eq(&self, other: &Self) -> bool {
        self.key_cmp(other) == Ordering::Equal
    }
}

impl Eq for Queued {}

impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Queued {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key_cmp(other)
    }
}

type PairKey = (usize, Shift, usize, Shift);

struct Engine<'a> {
    ring: &'a Ring,
    order: Arc<OrderingSpec>,
    opts: &'a CompletionOptions,
    basis: Reducers,
    queue: BinaryHeap<Reverse<Queued>>,
    deferred: Vec<CriticalPair>,
    processed: HashSet<PairKey>,
    age: u64,
    stats: Stats,
    /// Pairs above this order are held back; reducers are limited to it.
    bound: Option<u64>,
    /// Truncated mode discards what adaptive mode defers.
    discard_above_bound: bool,
}

impl<'a> Engine<'a> {
    fn new(ring: &'a Ring, opts: &'a CompletionOptions) -> Self {
        Engine {
            ring,
            order: Arc::new(ring.ordering().clone()),
            opts,
            basis: Reducers::default(),
            queue: BinaryHeap::new(),
            deferred: Vec::new(),
            processed: HashSet::new(),
            age: 0,
            stats: Stats::default(),
            bound: None,
            discard_above_bound: false,
        }
    }

    fn policy(&self) -> ShiftPolicy {
        match self.bound {
            Some(d) => ShiftPolicy::MaxOrd(d),
            None => ShiftPolicy::Unbounded,
        }
    }

    fn enqueue(&mut self, pair: CriticalPair) {
        if let Some(d) = self.bound {
            if pair.ord_bound > OrdValue::Fin(d) {
                if self.discard_above_bound {
                    self.stats.truncated += 1;
                } else {
                    self.deferred.push(pair);
                }
                return;
            }
        }
        self.age += 1;
        self.queue.push(Reverse(Queued {
            pair,
            age: self.age,
            order: Arc::clone(&self.order),
        }));
    }

    /// Add a monic element and pair it with everything already present,
    /// itself included.
    fn add(&mut self, g: Poly) {
        let k = self.basis.push(self.ring, g);
        for i in 0..=k {
            let (gi, gk) = (self.basis.get(i), self.basis.get(k));
            let (li, lk) = (gi.lm().expect("nonzero"), gk.lm().expect("nonzero"));
            let shares_symbol = li
                .factors()
                .iter()
                .any(|(a, _)| lk.factors().iter().any(|(b, _)| a.symbol == b.symbol));
            if !shares_symbol {
                self.stats.product += 1;
                continue;
            }
            let (pairs, counts) = critical_pairs_counted(i, gi, k, gk).expect("nonzero");
            self.stats.generated += counts.candidates;
            self.stats.sigma += counts.merged;
            for p in pairs {
                // keep one orientation of each self-pair
                if i == k && self.order.compare_shift(&p.left_shift, &p.right_shift) == Ordering::Less {
                    self.stats.sigma += 1;
                    continue;
                }
                self.enqueue(p);
            }
        }
    }

    fn key(left: usize, ls: &Shift, right: usize, rs: &Shift) -> PairKey {
        if (left, ls) <= (right, rs) {
            (left, ls.clone(), right, rs.clone())
        } else {
            (right, rs.clone(), left, ls.clone())
        }
    }

    /// Whether the S-polynomial of `σ·G[a]` and `ν·G[c]` is already known
    /// to have a standard representation.
    fn settled(&self, a: usize, sa: &Shift, c: usize, sc: &Shift) -> bool {
        let la = self.basis.get(a).lm().expect("nonzero").shifted(sa);
        let lc = self.basis.get(c).lm().expect("nonzero").shifted(sc);
        if la.is_coprime(&lc) {
            return true;
        }
        let delta = sa.gcd(sc).expect("same rank");
        let (sa, sc) = (sa.div(&delta).expect("gcd"), sc.div(&delta).expect("gcd"));
        if a == c && sa == sc {
            return true;
        }
        self.processed.contains(&Self::key(a, &sa, c, &sc))
    }

    /// Buchberger's chain criterion over shifted basis elements.
    fn chain_kills(&self, p: &CriticalPair) -> bool {
        for k in 0..self.basis.len() {
            for nu in self.basis.divisor_shifts(self.ring, k, &p.lcm, ShiftPolicy::Unbounded) {
                if (k == p.left && nu == p.left_shift) || (k == p.right && nu == p.right_shift) {
                    continue;
                }
                if self.settled(p.left, &p.left_shift, k, &nu) && self.settled(k, &nu, p.right, &p.right_shift) {
                    return true;
                }
            }
        }
        false
    }

    /// Drain the queue. Returns false when the pair budget ran out.
    fn run(&mut self) -> bool {
        while let Some(Reverse(q)) = self.queue.pop() {
            let p = q.pair;
            if self.opts.chain_criterion && self.chain_kills(&p) {
                self.stats.chain += 1;
                continue;
            }
            if self.stats.reduced >= self.opts.max_pairs {
                self.queue.push(Reverse(Queued {
                    pair: p,
                    age: q.age,
                    order: q.order,
                }));
                return false;
            }
            self.stats.reduced += 1;
            let s = p.spoly(self.ring, self.basis.elements());
            let h = self.basis.reduce_full(self.ring, &s, self.policy(), None);
            self.processed
                .insert(Self::key(p.left, &p.left_shift, p.right, &p.right_shift));
            if h.is_zero() {
                self.stats.zero += 1;
            } else {
                self.stats.new_elements += 1;
                self.add(h.monic().expect("nonzero"));
            }
        }
        true
    }

    fn max_lm_ord(&self) -> OrdValue {
        self.basis
            .elements()
            .iter()
            .filter_map(|g| g.lm().map(|m| m.ord()))
            .max()
            .unwrap_or(OrdValue::NegInf)
    }

    fn finish(self, status: Status) -> SigmaBasis {
        SigmaBasis {
            ring: self.ring.clone(),
            elements: self.basis.elements().to_vec(),
            status,
            stats: self.stats,
        }
    }
}

fn prepare(ring: &Ring, generators: &[Poly]) -> Result<Vec<Poly>> {
    let mut out: Vec<Poly> = Vec::new();
    for g in generators {
        ring.check_poly(g)?;
        if g.is_zero() {
            continue;
        }
        let g = g.monic()?;
        if !out.contains(&g) {
            out.push(g);
        }
    }
    Ok(out)
}

/// Complete `generators` to a Gröbner Σ-basis of the Σ-ideal they generate.
pub fn sigma_gbasis(ring: &Ring, generators: &[Poly], opts: &CompletionOptions) -> Result<SigmaBasis> {
    match opts.mode {
        Mode::Plain => plain(ring, generators, opts),
        Mode::Truncated(d) => truncated(ring, generators, d, opts),
        Mode::Adaptive => adaptive(ring, generators, opts),
    }
}

fn plain(ring: &Ring, generators: &[Poly], opts: &CompletionOptions) -> Result<SigmaBasis> {
    let mut e = Engine::new(ring, opts);
    for g in prepare(ring, generators)? {
        e.add(g);
    }
    let status = if e.run() {
        Status::Complete
    } else {
        Status::BudgetExhausted
    };
    Ok(e.finish(status))
}

/// The `d`-truncated run: generators of order above `d` are dropped, and
/// only pairs and shifted reducers of order at most `d` are used.
pub fn sigma_gbasis_truncated(ring: &Ring, generators: &[Poly], d: i64) -> Result<SigmaBasis> {
    let opts = CompletionOptions::with_mode(Mode::Truncated(d));
    truncated(ring, generators, d, &opts)
}

fn truncated(ring: &Ring, generators: &[Poly], d: i64, opts: &CompletionOptions) -> Result<SigmaBasis> {
    if d < 0 {
        return Err(Error::NegativeTruncation);
    }
    let d = d as u64;
    let mut e = Engine::new(ring, opts);
    e.bound = Some(d);
    e.discard_above_bound = true;
    for g in prepare(ring, generators)? {
        if g.ord() <= OrdValue::Fin(d) {
            e.add(g);
        }
    }
    let status = if e.run() {
        Status::CompleteUpToOrder(d)
    } else {
        Status::BudgetExhausted
    };
    Ok(e.finish(status))
}

/// Bounded runs with the bound raised to `2·max ord(lm)` until it is
/// stable, then certified by [`verify_sigma_gbasis`].
pub fn sigma_gbasis_adaptive(ring: &Ring, generators: &[Poly], opts: &CompletionOptions) -> Result<SigmaBasis> {
    adaptive(ring, generators, opts)
}

fn adaptive(ring: &Ring, generators: &[Poly], opts: &CompletionOptions) -> Result<SigmaBasis> {
    if !ring.ordering().is_ord_compatible() {
        return Err(Error::NotOrdCompatible);
    }
    let mut e = Engine::new(ring, opts);
    let gens = prepare(ring, generators)?;
    let start = gens
        .iter()
        .filter_map(|g| g.lm().and_then(|m| m.ord().finite()))
        .max()
        .unwrap_or(0);
    e.bound = Some(2 * start);
    for g in gens {
        e.add(g);
    }
    loop {
        if !e.run() {
            return Ok(e.finish(Status::BudgetExhausted));
        }
        let target = 2 * e.max_lm_ord().finite().unwrap_or(0);
        let current = e.bound.expect("adaptive runs are bounded");
        if target <= current && e.deferred.iter().all(|p| p.ord_bound > OrdValue::Fin(target)) {
            break;
        }
        let next = target.max(current + 1);
        if next > opts.max_order {
            return Ok(e.finish(Status::BudgetExhausted));
        }
        e.bound = Some(next);
        for p in std::mem::take(&mut e.deferred) {
            e.enqueue(p);
        }
    }
    let report = verify_sigma_gbasis(ring, e.basis.elements())?;
    let status = if report.is_basis {
        Status::Complete
    } else {
        Status::BudgetExhausted
    };
    Ok(e.finish(status))
}
