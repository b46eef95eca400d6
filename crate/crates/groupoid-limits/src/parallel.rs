//! Deterministic fan-out of independent pure computations.
//!
//! Results are returned in input order regardless of scheduling, so callers
//! that reduce sequentially get bitwise-reproducible output. The worker
//! count honors the `GROUPOID_LIMITS_THREADS` environment variable.

use std::sync::atomic::{AtomicUsize, Ordering};

pub const THREADS_ENV: &str = "GROUPOID_LIMITS_THREADS";

fn parse_budget(raw: Option<&str>) -> Option<usize> {
    raw.and_then(|v| v.trim().parse::<usize>().ok()).filter(|&n| n >= 1)
}

/// Worker threads to use: the environment cap when set, otherwise the
/// machine's available parallelism.
pub fn thread_budget() -> usize {
    let env = std::env::var(THREADS_ENV).ok();
    parse_budget(env.as_deref())
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Applies a pure function to every item on a scoped thread pool and
/// collects the results in input order.
pub fn map_ordered<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let n = items.len();
    let budget = thread_budget().min(n);
    if budget <= 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let mut chunks: Vec<Vec<(usize, R)>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..budget)
            .map(|_| {
                scope.spawn(|| {
                    let mut done = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= n {
                            break;
                        }
                        done.push((i, f(&items[i])));
                    }
                    done
                })
            })
            .collect();
        chunks = handles.into_iter().map(|h| h.join().expect("worker panicked")).collect();
    });
    let mut slots: Vec<Option<R>> = (0..n).map(|_| None).collect();
    for (i, r) in chunks.into_iter().flatten() {
        slots[i] = Some(r);
    }
    slots.into_iter().map(|s| s.expect("every index is claimed exactly once")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_input_order() {
        let items: Vec<usize> = (0..257).collect();
        let out = map_ordered(&items, |&i| i * i);
        assert_eq!(out, items.iter().map(|&i| i * i).collect::<Vec<_>>());
        let empty: Vec<usize> = Vec::new();
        assert!(map_ordered(&empty, |&i: &usize| i).is_empty());
    }

    #[test]
    fn budget_parsing() {
        assert_eq!(parse_budget(Some("4")), Some(4));
        assert_eq!(parse_budget(Some(" 2 ")), Some(2));
        assert_eq!(parse_budget(Some("0")), None);
        assert_eq!(parse_budget(Some("many")), None);
        assert_eq!(parse_budget(None), None);
        assert!(thread_budget() >= 1);
    }
}
