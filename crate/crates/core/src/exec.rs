//! Data-parallel helpers. With the `parallel` feature these fan out over rayon's
//! global pool; without it they are plain sequential loops. Callers only combine
//! results with associative, commutative reductions, so both paths agree.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map every index in `0..n` and fold the results with `reduce`, starting from `identity`.
pub fn map_reduce<T, M, R>(n: usize, identity: T, map: M, reduce: R) -> T
where
    T: Send + Sync + Clone,
    M: Fn(usize) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .map(map)
            .reduce(|| identity.clone(), reduce)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(map).fold(identity, reduce)
    }
}

/// Like [`map_reduce`] but each worker gets a scratch value built by `init`,
/// reused across the indices it processes.
pub fn map_init_reduce<S, T, I, M, R>(n: usize, init: I, identity: T, map: M, reduce: R) -> T
where
    T: Send + Sync + Clone,
    I: Fn() -> S + Sync + Send,
    M: Fn(&mut S, usize) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .map_init(init, map)
            .reduce(|| identity.clone(), reduce)
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut scratch = init();
        (0..n).map(|i| map(&mut scratch, i)).fold(identity, reduce)
    }
}

/// Order-preserving parallel map.
pub fn map_collect<T, M>(n: usize, map: M) -> Vec<T>
where
    T: Send,
    M: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(map).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(map).collect()
    }
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
