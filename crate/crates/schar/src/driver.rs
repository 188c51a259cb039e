//! Parallel enumeration and search on top of the core enumerator.
//!
//! Work is split into the subtrees below short prefixes of the search order.
//! Subtrees are independent; their results are merged and sorted, so the
//! output does not depend on the number of threads.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use schar_core::lattice::{Outcome, Visitor};
use schar_core::schar::SearchPlan;
use schar_core::{CharacterTable, Enumerator, Error, SCharacter, SearchOptions, SearchReport};

#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    /// Worker threads; `None` uses rayon's default.
    pub threads: Option<usize>,
    /// Abort with [`Error::LimitExceeded`] after this many lattice points.
    pub limit: Option<u64>,
    /// Abort with [`Error::Interrupted`] after this long.
    pub timeout: Option<Duration>,
}

struct Shared {
    stop: AtomicBool,
    points: AtomicU64,
    limit: Option<u64>,
    deadline: Option<Instant>,
    limit_hit: AtomicBool,
}

impl Shared {
    fn new(cfg: &RunConfig) -> Shared {
        Shared {
            stop: AtomicBool::new(false),
            points: AtomicU64::new(0),
            limit: cfg.limit,
            deadline: cfg.timeout.map(|t| Instant::now() + t),
            limit_hit: AtomicBool::new(false),
        }
    }
}

struct Worker<'a, F> {
    shared: &'a Shared,
    on_point: F,
}

impl<F: FnMut(&[i64]) -> ControlFlow<()>> Visitor for Worker<'_, F> {
    fn visit(&mut self, x: &[i64]) -> ControlFlow<()> {
        let seen = self.shared.points.fetch_add(1, Ordering::Relaxed) + 1;
        if self.shared.limit.is_some_and(|l| seen > l) {
            self.shared.limit_hit.store(true, Ordering::Relaxed);
            self.shared.stop.store(true, Ordering::Relaxed);
            return ControlFlow::Break(());
        }
        if self.shared.stop.load(Ordering::Relaxed) {
            return ControlFlow::Break(());
        }
        (self.on_point)(x)
    }

    fn interrupted(&self) -> bool {
        if self.shared.stop.load(Ordering::Relaxed) {
            return true;
        }
        if self.shared.deadline.is_some_and(|d| Instant::now() >= d) {
            self.shared.stop.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }
}

fn pool(cfg: &RunConfig) -> Result<rayon::ThreadPool, Error> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.threads {
        b = b.num_threads(n.max(1));
    }
    b.build().map_err(|e| Error::Internal(e.to_string()))
}

/// Prefixes to split on: deep enough to give every thread several subtrees.
fn work_items(e: &Enumerator, threads: usize) -> Result<Vec<Vec<i64>>, Error> {
    let mut depth = 1.min(e.dim());
    let mut items = e.prefixes(depth)?;
    while depth < e.dim().min(3) && items.len() < 8 * threads {
        depth += 1;
        items = e.prefixes(depth)?;
    }
    Ok(items)
}

/// Walks every subtree in parallel, handing each point to `make()`'s closure.
/// Returns the per-subtree results in prefix order.
fn run<T, M, F>(e: &Enumerator, cfg: &RunConfig, make: M) -> Result<(Vec<T>, Outcome), Error>
where
    T: Send,
    M: Fn() -> (T, F) + Sync,
    F: FnMut(&mut T, &[i64]) -> Result<(), Error>,
{
    let pool = pool(cfg)?;
    let shared = Shared::new(cfg);
    let failure: Mutex<Option<Error>> = Mutex::new(None);
    let results: Vec<Result<(T, Outcome), Error>> = pool.install(|| {
        let items = work_items(e, rayon::current_num_threads())?;
        Ok::<_, Error>(
            items
                .par_iter()
                .map(|prefix| {
                    let (mut acc, mut f) = make();
                    let outcome = {
                        let mut worker = Worker {
                            shared: &shared,
                            on_point: |x: &[i64]| match f(&mut acc, x) {
                                Ok(()) => ControlFlow::Continue(()),
                                Err(err) => {
                                    failure.lock().unwrap().get_or_insert(err);
                                    shared.stop.store(true, Ordering::Relaxed);
                                    ControlFlow::Break(())
                                }
                            },
                        };
                        e.walk_prefix(prefix, &mut worker)?
                    };
                    Ok((acc, outcome))
                })
                .collect(),
        )
    })?;
    if let Some(err) = failure.into_inner().unwrap() {
        return Err(err);
    }
    if shared.limit_hit.load(Ordering::Relaxed) {
        return Err(Error::LimitExceeded(cfg.limit.unwrap_or(0)));
    }
    let mut total = Outcome::default();
    let mut out = Vec::with_capacity(results.len());
    for r in results {
        let (acc, o) = r?;
        total.merge(o);
        out.push(acc);
    }
    if shared.stop.load(Ordering::Relaxed) {
        return Err(Error::Interrupted);
    }
    Ok((out, total))
}

/// All lattice points, sorted lexicographically.
pub fn enumerate(e: &Enumerator, cfg: &RunConfig) -> Result<Vec<Vec<i64>>, Error> {
    let (chunks, _) = run(e, cfg, || (Vec::new(), |acc: &mut Vec<Vec<i64>>, x: &[i64]| {
        acc.push(x.to_vec());
        Ok(())
    }))?;
    let mut points: Vec<Vec<i64>> = chunks.into_iter().flatten().collect();
    points.sort_unstable();
    Ok(points)
}

/// Number of lattice points without storing them.
pub fn count(e: &Enumerator, cfg: &RunConfig) -> Result<u64, Error> {
    let (_, outcome) = run(e, cfg, || ((), |_: &mut (), _: &[i64]| Ok(())))?;
    Ok(outcome.points)
}

/// Phase timings are recorded into the report.
pub fn search(t: &CharacterTable, options: &SearchOptions, cfg: &RunConfig) -> Result<SearchReport, Error> {
    let start = Instant::now();
    let plan = SearchPlan::new(t, options)?;
    let prepared = start.elapsed();
    let (chunks, outcome) = run(&plan.enumerator, cfg, || {
        (Vec::new(), |acc: &mut Vec<SCharacter>, x: &[i64]| {
            if let Some(s) = plan.accept(x)? {
                acc.push(s);
            }
            Ok(())
        })
    })?;
    let searched = start.elapsed() - prepared;
    let mut report = plan.report(t, chunks.into_iter().flatten().collect(), Some(outcome.points));
    report.timings = vec![("prepare".to_string(), prepared.as_millis() as u64), ("enumerate".to_string(), searched.as_millis() as u64)];
    Ok(report)
}
