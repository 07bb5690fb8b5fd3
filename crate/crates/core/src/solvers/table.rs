use std::cell::RefCell;
use std::collections::HashMap;
use std::hash::Hash;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;

use crate::error::{Error, Result};

/// Transposition table with insert-if-absent semantics.
pub(crate) trait Table<K, V> {
    fn get(&self, k: &K) -> Option<V>;
    /// Stores `v` unless an entry exists already.
    fn insert(&self, k: K, v: V);
    fn len(&self) -> usize;
}

impl<K: Hash + Eq, V: Clone> Table<K, V> for RefCell<HashMap<K, V>> {
    fn get(&self, k: &K) -> Option<V> {
        self.borrow().get(k).cloned()
    }

    fn insert(&self, k: K, v: V) {
        self.borrow_mut().entry(k).or_insert(v);
    }

    fn len(&self) -> usize {
        self.borrow().len()
    }
}

impl<K: Hash + Eq, V: Clone> Table<K, V> for Mutex<HashMap<K, V>> {
    fn get(&self, k: &K) -> Option<V> {
        self.lock().unwrap().get(k).cloned()
    }

    fn insert(&self, k: K, v: V) {
        self.lock().unwrap().entry(k).or_insert(v);
    }

    fn len(&self) -> usize {
        self.lock().unwrap().len()
    }
}

#[cfg(feature = "parallel")]
impl<K: Hash + Eq, V: Clone> Table<K, V> for dashmap::DashMap<K, V> {
    fn get(&self, k: &K) -> Option<V> {
        dashmap::DashMap::get(self, k).map(|r| r.value().clone())
    }

    fn insert(&self, k: K, v: V) {
        self.entry(k).or_insert(v);
    }

    fn len(&self) -> usize {
        dashmap::DashMap::len(self)
    }
}

/// Node counter with an optional budget, shared between workers.
pub(crate) struct Counter {
    nodes: AtomicU64,
    budget: Option<u64>,
    stop: AtomicBool,
}

impl Counter {
    pub(crate) fn new(budget: Option<u64>) -> Self {
        Counter { nodes: AtomicU64::new(0), budget, stop: AtomicBool::new(false) }
    }

    pub(crate) fn tick(&self) -> Result<()> {
        if self.stop.load(Ordering::Relaxed) {
            return Err(Error::Cancelled);
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        match self.budget {
            Some(b) if n > b => Err(Error::BudgetExhausted { budget: b }),
            _ => Ok(()),
        }
    }

    pub(crate) fn get(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }
}

/// Evaluates root children in parallel and returns a value accepted by
/// `decisive`, if any. Searches still running when one is found are cancelled.
#[cfg(feature = "parallel")]
pub(crate) fn race<V: Copy + Send>(
    counter: &Counter,
    children: &[usize],
    eval: impl Fn(usize) -> Result<V> + Sync,
    decisive: impl Fn(V) -> bool + Sync,
) -> Result<Option<V>> {
    use rayon::prelude::*;
    let hit = children
        .par_iter()
        .map(|&v| {
            let r = eval(v);
            if matches!(r, Ok(x) if decisive(x)) {
                counter.stop.store(true, Ordering::Relaxed);
            }
            r
        })
        .find_any(|r| match r {
            Ok(x) => decisive(*x),
            Err(Error::Cancelled) => false,
            Err(_) => true,
        });
    counter.stop.store(false, Ordering::Relaxed);
    hit.transpose()
}

/// Runs `f` on a pool of `workers` threads.
#[cfg(feature = "parallel")]
pub(crate) fn with_pool<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}
