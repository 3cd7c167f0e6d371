//! Isomorph-free generation of commutative monoids and AG-monoids.
//!
//! Both searches fill the free cells of a table in a fixed row-major order,
//! test the governing law on every triple whose last missing product was
//! just assigned, and keep a completed table only if it is its own canonical
//! form. The search tree is cut at a shallow depth into independent
//! prefixes which are distributed over a rayon pool; the merged output is
//! sorted, so the result does not depend on the worker count.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::automorphisms::automorphism_group;
use crate::canon::Canonizer;
use crate::error::Error;
use crate::perm::Permutation;
use crate::storage::TableDatabase;
use crate::table::{CayleyTable, StructureKind};
use crate::twist::{twist, TwistPair};

/// Largest order any enumerator accepts.
pub const MAX_ORDER: usize = 9;

const UNSET: u8 = u8::MAX;

/// Canonical tables of one order and kind, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationResult {
    pub order: usize,
    pub kind: StructureKind,
    pub tables: Vec<CayleyTable>,
}

impl EnumerationResult {
    pub fn count(&self) -> usize {
        self.tables.len()
    }

    pub fn into_database(self) -> Result<TableDatabase, Error> {
        TableDatabase::new(self.order, self.kind, self.tables)
    }
}

/// Snapshot of search counters passed to a progress hook.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Progress {
    pub nodes_visited: u64,
    pub tables_found: u64,
    pub prefixes_done: u64,
    pub prefixes_total: u64,
}

pub type ProgressHook<'a> = &'a (dyn Fn(Progress) + Sync);

#[derive(Clone, Copy, Default)]
pub struct EnumerationOptions<'a> {
    /// Worker threads; 0 uses the available parallelism.
    pub workers: usize,
    /// Called after each search-tree partition finishes.
    pub progress: Option<ProgressHook<'a>>,
}

impl<'a> EnumerationOptions<'a> {
    pub fn with_workers(workers: usize) -> Self {
        Self {
            workers,
            progress: None,
        }
    }

    fn worker_count(&self) -> usize {
        if self.workers > 0 {
            self.workers
        } else {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        }
    }

    fn run<R: Send>(&self, job: impl FnOnce() -> R + Send) -> Result<R, Error> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.worker_count())
            .build()
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
        Ok(pool.install(job))
    }
}

fn check_order(n: usize, max: usize) -> Result<(), Error> {
    if (1..=max).contains(&n) {
        Ok(())
    } else {
        Err(Error::OrderOutOfRange {
            order: n,
            min: 1,
            max,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Law {
    /// `(xy)z = x(yz)` on a table with two-sided identity 0, filled symmetrically.
    CommutativeAssociative,
    /// `(xy)z = (zy)x` on a table with left identity 0.
    LeftInvertive,
}

/// Backtracking over the free cells of an order-`n` table.
struct CellSearch {
    n: usize,
    law: Law,
    free: Vec<(usize, usize)>,
    start: Vec<u8>,
}

impl CellSearch {
    fn new(n: usize, law: Law) -> Self {
        let mut start = vec![UNSET; n * n];
        for x in 0..n {
            start[x] = x as u8;
            if law == Law::CommutativeAssociative {
                start[x * n] = x as u8;
            }
        }
        let free = match law {
            Law::CommutativeAssociative => {
                (1..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect()
            }
            Law::LeftInvertive => (1..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect(),
        };
        Self {
            n,
            law,
            free,
            start,
        }
    }

    #[inline]
    fn eval(&self, t: &[u8], x: usize, y: usize, z: usize) -> bool {
        let n = self.n;
        let xy = t[x * n + y];
        if xy == UNSET {
            return true;
        }
        let lhs = t[xy as usize * n + z];
        if lhs == UNSET {
            return true;
        }
        let rhs = match self.law {
            Law::CommutativeAssociative => {
                let yz = t[y * n + z];
                if yz == UNSET {
                    return true;
                }
                t[x * n + yz as usize]
            }
            Law::LeftInvertive => {
                let zy = t[z * n + y];
                if zy == UNSET {
                    return true;
                }
                t[zy as usize * n + x]
            }
        };
        rhs == UNSET || lhs == rhs
    }

    /// Tests every triple in which cell `(a, b)` is one of the products used.
    fn consistent_at(&self, t: &[u8], a: usize, b: usize) -> bool {
        let n = self.n;
        match self.law {
            Law::CommutativeAssociative => {
                // triples containing the identity hold automatically
                for z in 1..n {
                    if !self.eval(t, a, b, z) || !self.eval(t, z, a, b) {
                        return false;
                    }
                }
                for x in 1..n {
                    for y in 1..n {
                        let xy = t[x * n + y] as usize;
                        if xy == a && !self.eval(t, x, y, b) {
                            return false;
                        }
                        if xy == b && !self.eval(t, a, x, y) {
                            return false;
                        }
                    }
                }
                true
            }
            Law::LeftInvertive => {
                // the law is symmetric in x and z, so the positions (z,y) and
                // ((zy),x) are covered by these two loops
                for z in 0..n {
                    if !self.eval(t, a, b, z) {
                        return false;
                    }
                }
                for x in 0..n {
                    for y in 0..n {
                        if t[x * n + y] as usize == a && !self.eval(t, x, y, b) {
                            return false;
                        }
                    }
                }
                true
            }
        }
    }

    fn assign(&self, t: &mut [u8], idx: usize, v: u8) -> bool {
        let (a, b) = self.free[idx];
        let n = self.n;
        t[a * n + b] = v;
        if self.law == Law::CommutativeAssociative {
            t[b * n + a] = v;
            self.consistent_at(t, a, b) && (a == b || self.consistent_at(t, b, a))
        } else {
            self.consistent_at(t, a, b)
        }
    }

    fn clear(&self, t: &mut [u8], idx: usize) {
        let (a, b) = self.free[idx];
        let n = self.n;
        t[a * n + b] = UNSET;
        if self.law == Law::CommutativeAssociative {
            t[b * n + a] = UNSET;
        }
    }

    /// Consistent partial tables with the first `depth` free cells assigned.
    fn prefixes(&self, depth: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut t = self.start.clone();
        self.collect_prefixes(&mut t, 0, depth, &mut out);
        out
    }

    fn collect_prefixes(&self, t: &mut [u8], idx: usize, depth: usize, out: &mut Vec<Vec<u8>>) {
        if idx == depth {
            out.push(t.to_vec());
            return;
        }
        for v in 0..self.n as u8 {
            if self.assign(t, idx, v) {
                self.collect_prefixes(t, idx + 1, depth, out);
            }
            self.clear(t, idx);
        }
    }

    fn complete(&self, t: &mut [u8], idx: usize, w: &mut Worker) {
        w.nodes += 1;
        if idx == self.free.len() {
            if w.canon.is_canonical_raw(t) {
                w.found.push(CayleyTable::from_raw(self.n, t.to_vec()));
            }
            return;
        }
        for v in 0..self.n as u8 {
            if self.assign(t, idx, v) {
                self.complete(t, idx + 1, w);
            }
            self.clear(t, idx);
        }
    }

    /// Runs the whole search, split at the shallowest depth giving at least
    /// eight partitions per worker.
    fn run(&self, opts: &EnumerationOptions<'_>) -> Result<Vec<CayleyTable>, Error> {
        let target = 8 * opts.worker_count();
        let mut depth = 0;
        let mut prefixes = self.prefixes(0);
        while prefixes.len() < target && depth < self.free.len() {
            depth += 1;
            prefixes = self.prefixes(depth);
        }
        let nodes = AtomicU64::new(0);
        let found = AtomicU64::new(0);
        let done = AtomicU64::new(0);
        let total = prefixes.len() as u64;
        let mut tables = opts.run(|| {
            prefixes
                .into_par_iter()
                .map_init(
                    || Worker::new(self.n),
                    |w, mut t| {
                        w.nodes = 0;
                        self.complete(&mut t, depth, w);
                        let out = std::mem::take(&mut w.found);
                        nodes.fetch_add(w.nodes, Ordering::Relaxed);
                        found.fetch_add(out.len() as u64, Ordering::Relaxed);
                        let finished = done.fetch_add(1, Ordering::Relaxed) + 1;
                        if let Some(hook) = opts.progress {
                            hook(Progress {
                                nodes_visited: nodes.load(Ordering::Relaxed),
                                tables_found: found.load(Ordering::Relaxed),
                                prefixes_done: finished,
                                prefixes_total: total,
                            });
                        }
                        out
                    },
                )
                .flatten()
                .collect::<Vec<_>>()
        })?;
        tables.sort_unstable();
        Ok(tables)
    }
}

struct Worker {
    canon: Canonizer,
    found: Vec<CayleyTable>,
    nodes: u64,
}

impl Worker {
    fn new(n: usize) -> Self {
        Self {
            canon: Canonizer::new(n, 0),
            found: Vec::new(),
            nodes: 0,
        }
    }
}

/// All commutative monoids of order `n` up to isomorphism, identity at 0.
pub fn enumerate_commutative_monoids(n: usize) -> Result<EnumerationResult, Error> {
    enumerate_commutative_monoids_with(n, &EnumerationOptions::default())
}

pub fn enumerate_commutative_monoids_with(
    n: usize,
    opts: &EnumerationOptions<'_>,
) -> Result<EnumerationResult, Error> {
    check_order(n, MAX_ORDER)?;
    let tables = CellSearch::new(n, Law::CommutativeAssociative).run(opts)?;
    Ok(EnumerationResult {
        order: n,
        kind: StructureKind::CommutativeMonoid,
        tables,
    })
}

fn twists_of(m: &CayleyTable, include_associative: bool) -> Result<Vec<CayleyTable>, Error> {
    let skip = usize::from(!include_associative);
    Ok(twist_pairs_of(m)?.iter().skip(skip).map(twist).collect())
}

/// AG-monoids of order `n` obtained by twisting every commutative monoid.
pub fn enumerate_ag_monoids_via_construction(
    n: usize,
    include_associative: bool,
) -> Result<EnumerationResult, Error> {
    enumerate_ag_monoids_via_construction_with(
        n,
        include_associative,
        &EnumerationOptions::default(),
    )
}

pub fn enumerate_ag_monoids_via_construction_with(
    n: usize,
    include_associative: bool,
    opts: &EnumerationOptions<'_>,
) -> Result<EnumerationResult, Error> {
    let monoids = enumerate_commutative_monoids_with(n, opts)?.tables;
    let mut tables = opts
        .run(|| {
            monoids
                .par_iter()
                .map_init(
                    || Canonizer::new(n, 0),
                    |canon, m| -> Result<Vec<CayleyTable>, Error> {
                        Ok(twists_of(m, include_associative)?
                            .iter()
                            .map(|t| canon.canonical_form(t))
                            .collect())
                    },
                )
                .collect::<Result<Vec<_>, _>>()
        })??
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    tables.sort_unstable();
    tables.dedup();
    Ok(EnumerationResult {
        order: n,
        kind: StructureKind::AgMonoid,
        tables,
    })
}

/// AG-monoids with left identity 0 found by direct search over tables,
/// independent of the twist construction.
pub fn enumerate_ag_monoids_bruteforce(n: usize) -> Result<EnumerationResult, Error> {
    enumerate_ag_monoids_bruteforce_with(n, &EnumerationOptions::default())
}

pub fn enumerate_ag_monoids_bruteforce_with(
    n: usize,
    opts: &EnumerationOptions<'_>,
) -> Result<EnumerationResult, Error> {
    check_order(n, MAX_ORDER)?;
    let tables = CellSearch::new(n, Law::LeftInvertive).run(opts)?;
    Ok(EnumerationResult {
        order: n,
        kind: StructureKind::AgMonoid,
        tables,
    })
}

/// Counts of commutative monoids, non-associative AG-monoids, and all
/// AG-monoids of one order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Table1Row {
    pub order: usize,
    pub commutative_monoids: usize,
    pub nonassociative_ag: usize,
    pub total: usize,
}

pub fn table1_row(n: usize) -> Result<Table1Row, Error> {
    table1_row_with(n, &EnumerationOptions::default())
}

pub fn table1_row_with(n: usize, opts: &EnumerationOptions<'_>) -> Result<Table1Row, Error> {
    let monoids = enumerate_commutative_monoids_with(n, opts)?.tables;
    let nonassociative_ag = opts.run(|| {
        monoids
            .par_iter()
            .map(|m| {
                Ok(automorphism_group(m)?
                    .conjugacy_classes_of_involutions()
                    .len())
            })
            .sum::<Result<usize, Error>>()
    })??;
    Ok(Table1Row {
        order: n,
        commutative_monoids: monoids.len(),
        nonassociative_ag,
        total: monoids.len() + nonassociative_ag,
    })
}

/// Every pair over `m` up to isomorphism of its twist: `α = 1` first, then
/// one representative per conjugacy class of involutions.
pub fn twist_pairs_of(m: &CayleyTable) -> Result<Vec<TwistPair>, Error> {
    let group = automorphism_group(m)?;
    let classes = group.conjugacy_classes_of_involutions();
    Ok(std::iter::once(Permutation::identity(m.order()))
        .chain(classes.representatives().cloned())
        .map(|a| TwistPair::new_unchecked(m.clone(), a))
        .collect())
}
