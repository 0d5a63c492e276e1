//! Minimal deterministic fork-join helper.
//!
//! Independent work items (radial mode problems, oracle column solves) are
//! split into contiguous chunks across scoped threads; results are spliced
//! back in input order, so output never depends on scheduling. The
//! `ANNULUS_LAB_THREADS` environment variable caps the worker count.

pub const THREADS_ENV: &str = "ANNULUS_LAB_THREADS";

/// Worker-thread cap: `ANNULUS_LAB_THREADS` when it parses to a positive
/// integer, otherwise the machine's available parallelism.
pub fn thread_cap() -> usize {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n >= 1 {
                return n;
            }
        }
    }
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Apply `f` to every index `0..len`, preserving order in the output.
pub fn parallel_map<R, F>(len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync,
{
    let workers = thread_cap().min(len.max(1));
    if workers <= 1 || len <= 1 {
        return (0..len).map(f).collect();
    }
    let chunk = len.div_ceil(workers);
    let mut chunks: Vec<Vec<R>> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..workers {
            let lo = w * chunk;
            let hi = ((w + 1) * chunk).min(len);
            if lo >= hi {
                break;
            }
            let f = &f;
            handles.push(scope.spawn(move || (lo..hi).map(f).collect::<Vec<R>>()));
        }
        for h in handles {
            chunks.push(h.join().expect("worker thread panicked"));
        }
    });
    let mut out = Vec::with_capacity(len);
    for c in chunks {
        out.extend(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_input_order() {
        let out = parallel_map(1000, |i| i * i);
        for (i, v) in out.iter().enumerate() {
            assert_eq!(*v, i * i);
        }
    }

    #[test]
    fn handles_empty_and_single() {
        assert!(parallel_map(0, |i| i).is_empty());
        assert_eq!(parallel_map(1, |i| i + 7), vec![7]);
    }

    #[test]
    fn cap_is_at_least_one() {
        assert!(thread_cap() >= 1);
    }
}
