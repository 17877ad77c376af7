//! Periodic rebuilding of a static structure that answers queries about
//! k-substrings, with the rebuild spread over the following edits so that no
//! single edit pays for a whole construction.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::ksub::EditOp;

/// A construction split into steps of roughly equal cost.
pub trait StagedBuild {
    type Output;
    /// Steps left before [`StagedBuild::finish`] may be called.
    fn remaining(&self) -> usize;
    fn step(&mut self) -> Result<()>;
    fn finish(self) -> Result<Self::Output>;
}

/// A structure over frozen base strings plus the edits applied since.
pub trait Rebuild: Sized {
    type Builder: StagedBuild<Output = Self>;
    fn apply(&mut self, e: &EditOp) -> Result<()>;
    /// Staged construction over the current strings.
    fn rebuild(&self) -> Self::Builder;
    /// Largest fragment count among the edited strings.
    fn fragment_count(&self) -> usize;
}

/// Cost profile of a k-substring structure over a text of length `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryProfile {
    /// construction `n log^2 n`, queries `k log^2 n`
    Linear,
    /// construction `n log n`, queries `k^2 log n`
    Quadratic,
}

impl QueryProfile {
    pub fn build_cost(self, n: usize) -> f64 {
        let l = log2(n);
        match self {
            QueryProfile::Linear => n as f64 * l * l,
            QueryProfile::Quadratic => n as f64 * l,
        }
    }

    pub fn query_cost(self, n: usize, k: f64) -> f64 {
        let l = log2(n);
        match self {
            QueryProfile::Linear => k * l * l,
            QueryProfile::Quadratic => k * k * l,
        }
    }

    /// Real `kappa` with `q(kappa) = (t + n) / kappa`.
    pub fn kappa(self, n: usize) -> f64 {
        balance_kappa(n, self.build_cost(n), |k| self.query_cost(n, k))
    }

    /// `ceil(kappa)`, at least 1.
    pub fn kappa_int(self, n: usize) -> usize {
        (self.kappa(n).ceil() as usize).max(1)
    }
}

fn log2(n: usize) -> f64 {
    (n.max(2) as f64).log2()
}

/// Solves `q(k) * k = t + n` for `k >= 1` by bisection; `q` must be non-decreasing.
pub fn balance_kappa(n: usize, t: f64, q: impl Fn(f64) -> f64) -> f64 {
    let target = t + n as f64;
    let f = |k: f64| q(k) * k - target;
    if f(1.0) >= 0.0 {
        return 1.0;
    }
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    while f(hi) < 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..100 {
        let mid = (lo + hi) / 2.0;
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SliceMode {
    /// rebuild in slices over the next `kappa` edits
    WorstCase,
    /// rebuild at once every `kappa` edits
    Amortized,
}

/// Counters for checking the rebuild schedule.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SliceStats {
    pub edits: usize,
    pub rebuilds: usize,
    /// most edits the live structure has ever been behind
    pub max_lag: usize,
    pub max_fragments: usize,
    /// most build steps or replayed edits done during one edit
    pub max_work: usize,
}

struct Pending<D: Rebuild> {
    builder: Option<D::Builder>,
    built: Option<D>,
    /// edits made after the rebuild started and not yet replayed
    queue: VecDeque<EditOp>,
    behind: usize,
}

/// A [`Rebuild`] structure kept at most `2 kappa` edits behind its input.
pub struct TimeSliced<D: Rebuild> {
    live: D,
    pending: Option<Pending<D>>,
    kappa: usize,
    mode: SliceMode,
    counter: usize,
    lag: usize,
    stats: SliceStats,
}

impl<D: Rebuild> TimeSliced<D> {
    pub fn new(live: D, kappa: usize, mode: SliceMode) -> Result<Self> {
        if kappa == 0 {
            return Err(Error::BadParameter("kappa must be positive".into()));
        }
        Ok(TimeSliced {
            live,
            pending: None,
            kappa,
            mode,
            counter: 0,
            lag: 0,
            stats: SliceStats::default(),
        })
    }

    pub fn live(&self) -> &D {
        &self.live
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn stats(&self) -> SliceStats {
        self.stats
    }

    /// Edits since the base strings of the live structure were frozen.
    pub fn lag(&self) -> usize {
        self.lag
    }

    pub fn rebuilding(&self) -> bool {
        self.pending.is_some()
    }

    pub fn edit(&mut self, e: &EditOp) -> Result<()> {
        self.live.apply(e)?;
        self.counter += 1;
        self.lag += 1;
        self.stats.edits += 1;
        let mut work = 0;
        match self.mode {
            SliceMode::Amortized => {
                if self.counter == self.kappa {
                    let mut b = self.live.rebuild();
                    while b.remaining() > 0 {
                        b.step()?;
                        work += 1;
                    }
                    self.live = b.finish()?;
                    self.counter = 0;
                    self.lag = 0;
                    self.stats.rebuilds += 1;
                }
            }
            SliceMode::WorstCase => {
                if let Some(p) = self.pending.as_mut() {
                    p.queue.push_back(*e);
                    p.behind += 1;
                }
                if self.counter == self.kappa && self.pending.is_none() {
                    self.start();
                } else if self.pending.is_some() {
                    work = self.advance(false)?;
                }
                if self.counter == 2 * self.kappa {
                    work += self.advance(true)?;
                    let p = self.pending.take().expect("rebuild running");
                    self.live = p.built.expect("finished");
                    self.lag = p.behind;
                    self.counter = self.kappa;
                    self.stats.rebuilds += 1;
                    self.start();
                }
            }
        }
        self.stats.max_work = self.stats.max_work.max(work);
        self.stats.max_lag = self.stats.max_lag.max(self.lag);
        self.stats.max_fragments = self.stats.max_fragments.max(self.live.fragment_count());
        Ok(())
    }

    fn start(&mut self) {
        self.pending = Some(Pending {
            builder: Some(self.live.rebuild()),
            built: None,
            queue: VecDeque::new(),
            behind: 0,
        });
    }

    /// Spend this edit's share of the rebuild, or all of it when `force`.
    fn advance(&mut self, force: bool) -> Result<usize> {
        let kappa = self.kappa;
        let p = self.pending.as_mut().expect("rebuild running");
        let steps = p.builder.as_ref().map_or(0, |b| b.remaining());
        // build steps spread over kappa edits, plus two replays per edit to
        // outrun the one new edit that arrives each time
        let mut budget = if force { usize::MAX } else { steps.div_ceil(kappa) + 2 };
        let mut done = 0;
        while budget > 0 {
            if let Some(b) = p.builder.as_mut() {
                if b.remaining() > 0 {
                    b.step()?;
                } else {
                    p.built = Some(p.builder.take().unwrap().finish()?);
                }
            } else if let Some(e) = p.queue.pop_front() {
                p.built.as_mut().unwrap().apply(&e)?;
            } else {
                break;
            }
            budget -= 1;
            done += 1;
        }
        Ok(done)
    }
}
