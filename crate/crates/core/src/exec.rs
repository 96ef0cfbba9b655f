//! Sequential/parallel execution strategy. The sequential path is always
//! compiled; the rayon path only exists behind the `parallel` feature, and
//! requesting it without the feature silently degrades to sequential. Both
//! paths produce results in input order, so callers reduce deterministically.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    Parallel,
}

impl Parallelism {
    /// The best strategy this build supports.
    pub fn available() -> Parallelism {
        #[cfg(feature = "parallel")]
        {
            Parallelism::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            Parallelism::Sequential
        }
    }

    /// What actually runs: `Parallel` degrades to `Sequential` when the
    /// feature is off.
    pub fn effective(self) -> Parallelism {
        match self {
            Parallelism::Sequential => Parallelism::Sequential,
            Parallelism::Parallel => Parallelism::available(),
        }
    }
}

impl Default for Parallelism {
    fn default() -> Self {
        Parallelism::available()
    }
}

/// Apply `f` to every element, returning results in input order.
pub fn map_indexed<T, R, F>(mode: Parallelism, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> R + Sync,
{
    match mode.effective() {
        Parallelism::Sequential => items.iter().enumerate().map(|(i, t)| f(i, t)).collect(),
        #[cfg(feature = "parallel")]
        Parallelism::Parallel => {
            use rayon::prelude::*;
            items
                .par_iter()
                .enumerate()
                .map(|(i, t)| f(i, t))
                .collect()
        }
        #[cfg(not(feature = "parallel"))]
        Parallelism::Parallel => unreachable!("effective() removed this case"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_preserve_order() {
        let items: Vec<u32> = (0..100).collect();
        let seq = map_indexed(Parallelism::Sequential, &items, |i, &x| (i, x * 2));
        let par = map_indexed(Parallelism::Parallel, &items, |i, &x| (i, x * 2));
        assert_eq!(seq, par);
        assert_eq!(seq[3], (3, 6));
    }
}
