//! Data-parallel helpers. With the `parallel` feature these fan out over rayon; without it,
//! or after [`set_sequential`]`(true)`, everything runs on the calling thread. Reductions
//! are exact and commutative, so results do not depend on the schedule.

use std::sync::atomic::{AtomicBool, Ordering};

static FORCE_SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Forces the sequential code path at runtime (used by the benches to compare both).
pub fn set_sequential(on: bool) {
    FORCE_SEQUENTIAL.store(on, Ordering::SeqCst);
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && !FORCE_SEQUENTIAL.load(Ordering::Relaxed)
}

/// Ordered map over a slice.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Folds `0..n` in chunks: `fold` accumulates one index into a chunk-local state,
/// `merge` combines states.
#[cfg_attr(not(feature = "parallel"), allow(unused_variables))]
pub fn fold_range<S, I, F, M>(n: u64, init: I, fold: F, merge: M) -> S
where
    S: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, u64) + Sync + Send,
    M: Fn(S, S) -> S + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() && n >= 1 << 10 {
        use rayon::prelude::*;
        const CHUNK: u64 = 1 << 10;
        let chunks = n.div_ceil(CHUNK);
        return (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut s = init();
                for i in c * CHUNK..((c + 1) * CHUNK).min(n) {
                    fold(&mut s, i);
                }
                s
            })
            .reduce(&init, &merge);
    }
    let mut s = init();
    for i in 0..n {
        fold(&mut s, i);
    }
    s
}

/// Runs two closures, potentially in parallel.
pub fn join<A, B, RA, RB>(a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return rayon::join(a, b);
    }
    (a(), b())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fold_range_matches_closed_form() {
        let s = fold_range(5000, || 0u64, |s, i| *s += i, |a, b| a + b);
        assert_eq!(s, 5000 * 4999 / 2);
    }

    #[test]
    fn map_keeps_order() {
        let v: Vec<u32> = (0..100).collect();
        assert_eq!(map(&v, |x| x * 2), (0..100).map(|x| x * 2).collect::<Vec<_>>());
    }
}
