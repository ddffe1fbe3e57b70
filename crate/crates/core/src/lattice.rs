//! Enumeration of integer points in axis-aligned boxes `[0, upper_i]`.

use std::collections::BTreeMap;

use rayon::prelude::*;

/// Visits every point of the box, splitting the first coordinate across the
/// rayon pool; `fold` results are combined with `merge`.
pub(crate) fn par_fold<T, F, M>(upper: &[u32], init: impl Fn() -> T + Sync, fold: F, merge: M) -> T
where
    T: Send,
    F: Fn(&mut T, &[u32]) + Sync,
    M: Fn(T, T) -> T + Sync,
{
    if upper.is_empty() {
        let mut acc = init();
        fold(&mut acc, &[]);
        return acc;
    }
    (0..=upper[0])
        .into_par_iter()
        .map(|first| {
            let mut acc = init();
            let mut point = vec![0u32; upper.len()];
            point[0] = first;
            let rest = &upper[1..];
            loop {
                fold(&mut acc, &point);
                // advance the tail odometer
                let mut i = rest.len();
                let mut advanced = false;
                while i > 0 {
                    i -= 1;
                    if point[i + 1] < rest[i] {
                        point[i + 1] += 1;
                        for c in &mut point[i + 2..] {
                            *c = 0;
                        }
                        advanced = true;
                        break;
                    }
                }
                if !advanced {
                    break;
                }
            }
            acc
        })
        .reduce(&init, &merge)
}

/// Histogram of `key(v)` over the box, skipping points where `key` is `None`.
pub(crate) fn par_histogram<K>(upper: &[u32], key: K) -> BTreeMap<i64, i64>
where
    K: Fn(&[u32]) -> Option<i64> + Sync,
{
    par_fold(
        upper,
        BTreeMap::new,
        |acc: &mut BTreeMap<i64, i64>, v| {
            if let Some(k) = key(v) {
                *acc.entry(k).or_insert(0) += 1;
            }
        },
        |mut a, b| {
            for (k, c) in b {
                *a.entry(k).or_insert(0) += c;
            }
            a
        },
    )
}

/// Points of the box accepted by `filter`, in lexicographic order.
pub(crate) fn par_collect<F>(upper: &[u32], filter: F) -> Vec<Vec<u32>>
where
    F: Fn(&[u32]) -> bool + Sync,
{
    let mut out = par_fold(
        upper,
        Vec::new,
        |acc: &mut Vec<Vec<u32>>, v| {
            if filter(v) {
                acc.push(v.to_vec());
            }
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    );
    out.sort();
    out
}
