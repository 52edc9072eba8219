//! Range-parallel evaluation with order-preserving collection.
//!
//! Work is split into fixed-size blocks and mapped in parallel, but results
//! are always gathered back in index order and reduced sequentially, so the
//! floating-point output does not depend on the thread count or schedule.

use rayon::prelude::*;

/// Block size used when the caller does not pick one.
pub const DEFAULT_BLOCK_SIZE: usize = 1 << 16;

/// `f(lo), f(lo + 1), ..., f(hi)` in order, evaluated block-parallel.
pub fn map_range<T, F>(lo: u64, hi: u64, block_size: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync,
{
    if hi < lo {
        return Vec::new();
    }
    let block = block_size.max(1) as u64;
    let blocks = (hi - lo) / block + 1;
    let parts: Vec<Vec<T>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let start = lo + b * block;
            let end = (start + block - 1).min(hi);
            (start..=end).map(&f).collect()
        })
        .collect();
    parts.into_iter().flatten().collect()
}

/// `Σ f(p)` over `items`, parallel per block, summed in item order.
pub fn ordered_sum<F>(items: &[u32], block_size: usize, f: F) -> f64
where
    F: Fn(u64) -> f64 + Sync,
{
    let terms: Vec<f64> = items
        .par_chunks(block_size.max(1))
        .flat_map_iter(|chunk| chunk.iter().map(|&p| f(u64::from(p))).collect::<Vec<_>>())
        .collect();
    terms.iter().fold(0.0, |acc, t| acc + t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_range_keeps_order() {
        let v = map_range(3, 1000, 7, |n| n * n);
        assert_eq!(v.len(), 998);
        assert!(v.iter().zip(3u64..).all(|(&s, n)| s == n * n));
        assert!(map_range(5, 4, 7, |n| n).is_empty());
        assert_eq!(map_range(5, 5, 1, |n| n), vec![5]);
    }

    #[test]
    fn ordered_sum_is_partition_independent() {
        let items: Vec<u32> = (1..50_000).collect();
        let f = |p: u64| 1.0 / (p as f64).sqrt();
        let a = ordered_sum(&items, 1, f);
        let b = ordered_sum(&items, 4096, f);
        let c = ordered_sum(&items, 1 << 20, f);
        assert_eq!(a.to_bits(), b.to_bits());
        assert_eq!(b.to_bits(), c.to_bits());
        assert!(ordered_sum(&[], 8, f).is_sign_positive());
    }
}
