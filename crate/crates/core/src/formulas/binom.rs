//! Exact binomial coefficients with a shared, lazily grown Pascal-row cache.

use crate::rational::BigCount;
use num_traits::{One, Zero};
use std::sync::{Arc, OnceLock, RwLock};

/// Rows up to this index are memoized; larger `n` use the product formula.
const ROW_CAP: usize = 1024;

type Row = Arc<Vec<BigCount>>;

fn cache() -> &'static RwLock<Vec<Row>> {
    static CACHE: OnceLock<RwLock<Vec<Row>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![Arc::new(vec![BigCount::one()])]))
}

fn row(n: usize) -> Row {
    {
        let rows = cache().read().expect("binomial cache poisoned");
        if let Some(r) = rows.get(n) {
            return r.clone();
        }
    }
    let mut rows = cache().write().expect("binomial cache poisoned");
    while rows.len() <= n {
        let prev = rows.last().unwrap().clone();
        let mut next = Vec::with_capacity(prev.len() + 1);
        next.push(BigCount::one());
        for w in prev.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigCount::one());
        rows.push(Arc::new(next));
    }
    rows[n].clone()
}

/// `C(n, k)`, zero whenever `k < 0`, `n < 0` or `k > n`.
pub fn binom(n: i64, k: i64) -> BigCount {
    if n < 0 || k < 0 || k > n {
        return BigCount::zero();
    }
    let (n, k) = (n as usize, k as usize);
    let k = k.min(n - k);
    if n <= ROW_CAP {
        return row(n)[k].clone();
    }
    let mut acc = BigCount::one();
    for i in 0..k {
        acc *= BigCount::from(n - i);
        acc /= BigCount::from(i + 1);
    }
    acc
}

/// `C(n, k)` as `u64` when it fits.
pub fn binom_u64(n: i64, k: i64) -> Option<u64> {
    use num_traits::ToPrimitive;
    binom(n, k).to_u64()
}
