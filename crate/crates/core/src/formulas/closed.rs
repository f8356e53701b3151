//! Closed-form sizes, degrees and diversities of the named families.
//!
//! Where a published maximum-degree formula silently assumes the maximum is
//! attained on the family's core, the `*_delta` function returns that formula
//! and `*_delta_exact` takes the maximum over every vertex orbit, which is
//! correct for all parameters. `*_core_dominates` says when the two agree.

use super::binom::binom;
use crate::rational::{BigCount, Rational};

fn b(n: i64, k: i64) -> BigCount {
    binom(n, k)
}

fn r(v: &BigCount) -> Rational {
    Rational::from_count(v)
}

pub fn star_size(n: i64, k: i64) -> BigCount {
    b(n - 1, k - 1)
}

/// `|F_i| = C(n-1,k-1) - C(n-i,k-1) + C(n-i,k-i+1)`.
pub fn fi_size(n: i64, k: i64, i: i64) -> BigCount {
    b(n - 1, k - 1) - b(n - i, k - 1) + b(n - i, k - i + 1)
}

/// Degree of the first point of `F_i`.
pub fn fi_delta(n: i64, k: i64, i: i64) -> BigCount {
    b(n - 1, k - 1) - b(n - i, k - 1)
}

/// `|F_i(1̄)| = C(n-i, k-i+1)`.
pub fn fi_avoiding_center(n: i64, k: i64, i: i64) -> BigCount {
    b(n - i, k - i + 1)
}

pub fn fi_delta_exact(n: i64, k: i64, i: i64) -> BigCount {
    let center = fi_delta(n, k, i);
    let block_point = b(n - 2, k - 2) + b(n - i, k - i + 1);
    let outside = if n > i {
        b(n - 2, k - 2) - b(n - i - 1, k - 2) + b(n - i - 1, k - i)
    } else {
        BigCount::default()
    };
    center.max(block_point).max(outside)
}

/// Right side of the Hilton–Milner bound, `|F_{k+1}|`.
pub fn hm_bound(n: i64, k: i64) -> BigCount {
    b(n - 1, k - 1) - b(n - k - 1, k - 1) + BigCount::from(1u8)
}

pub fn triangle_size(n: i64, k: i64) -> BigCount {
    BigCount::from(3u8) * b(n - 3, k - 2)
}

pub fn triangle_delta(n: i64, k: i64) -> BigCount {
    BigCount::from(2u8) * b(n - 3, k - 2)
}

pub fn triangle_delta_exact(n: i64, k: i64) -> BigCount {
    triangle_delta(n, k).max(BigCount::from(3u8) * b(n - 4, k - 3))
}

/// `γ_C(F_△) = (3 - 2C)·C(n-3, k-2)`.
pub fn triangle_c_diversity(n: i64, k: i64, c: &Rational) -> Rational {
    (Rational::from(3) - Rational::from(2) * c.clone()) * r(&b(n - 3, k - 2))
}

pub fn uvw_star_size(n: i64, k: i64) -> BigCount {
    triangle_size(n, k) + b(n - 3, k - 3)
}

pub fn uvw_star_delta(n: i64, k: i64) -> BigCount {
    triangle_delta(n, k) + b(n - 3, k - 3)
}

pub fn uvw_star_delta_exact(n: i64, k: i64) -> BigCount {
    uvw_star_delta(n, k).max(BigCount::from(3u8) * b(n - 4, k - 3) + b(n - 4, k - 4))
}

pub fn fano_l_size(n: i64, k: i64) -> BigCount {
    BigCount::from(7u8) * b(n - 7, k - 3)
}

pub fn fano_l_delta(n: i64, k: i64) -> BigCount {
    BigCount::from(3u8) * b(n - 7, k - 3)
}

pub fn fano_l_delta_exact(n: i64, k: i64) -> BigCount {
    fano_l_delta(n, k).max(BigCount::from(7u8) * b(n - 8, k - 4))
}

pub fn fano_lplus_size(n: i64, k: i64) -> BigCount {
    fano_l_size(n, k) + BigCount::from(28u8) * b(n - 7, k - 4)
}

pub fn fano_lplus_delta(n: i64, k: i64) -> BigCount {
    fano_l_delta(n, k) + BigCount::from(16u8) * b(n - 7, k - 4)
}

pub fn fano_lplus_delta_exact(n: i64, k: i64) -> BigCount {
    let outside = BigCount::from(7u8) * b(n - 8, k - 4) + BigCount::from(28u8) * b(n - 8, k - 5);
    fano_lplus_delta(n, k).max(outside)
}

/// `(7 - 3C)·C(n-7, k-3)`.
pub fn fano_l_c_diversity(n: i64, k: i64, c: &Rational) -> Rational {
    (Rational::from(7) - Rational::from(3) * c.clone()) * r(&b(n - 7, k - 3))
}

/// `(7 - 3C)·C(n-7, k-3) + (28 - 16C)·C(n-7, k-4)`.
pub fn fano_lplus_c_diversity(n: i64, k: i64, c: &Rational) -> Rational {
    fano_l_c_diversity(n, k, c) + (Rational::from(28) - Rational::from(16) * c.clone()) * r(&b(n - 7, k - 4))
}

/// Size of the kernel family for kernel sizes `ls`.
pub fn kernel_size(n: i64, k: i64, ls: [i64; 3]) -> BigCount {
    ls.iter()
        .map(|&l| b(n - 3, k - 2) - b(n - 3 - l, k - 2) + b(n - 3 - l, k - l - 1))
        .sum()
}

/// `|T \ F*_123| = Σ C(n-3-ℓ_i, k-ℓ_i-1)`.
pub fn kernel_outside(n: i64, k: i64, ls: [i64; 3]) -> BigCount {
    ls.iter().map(|&l| b(n - 3 - l, k - l - 1)).sum()
}

/// `|F_123 \ T| = Σ C(n-3-ℓ_i, k-2)`.
pub fn kernel_missing(n: i64, k: i64, ls: [i64; 3]) -> BigCount {
    ls.iter().map(|&l| b(n - 3 - l, k - 2)).sum()
}

/// The displayed diversity `C(n-3,k-2) - C(n-3-ℓ,k-2) + 2·C(n-3-ℓ,k-ℓ-1)`,
/// valid when the maximum degree sits on `{1,2,3}`.
pub fn kernel_gamma(n: i64, k: i64, l: i64) -> BigCount {
    b(n - 3, k - 2) - b(n - 3 - l, k - 2) + BigCount::from(2u8) * b(n - 3 - l, k - l - 1)
}

/// Degree of a point of `{1,2,3}` in the kernel family with equal kernel sizes.
pub fn kernel_core_degree(n: i64, k: i64, l: i64) -> BigCount {
    BigCount::from(2u8) * (b(n - 3, k - 2) - b(n - 3 - l, k - 2)) + b(n - 3 - l, k - l - 1)
}

/// Exact maximum degree when `A_1 = A_2 = A_3` with `|A| = ℓ`.
pub fn kernel_delta_identical(n: i64, k: i64, l: i64) -> BigCount {
    let three = BigCount::from(3u8);
    let core = kernel_core_degree(n, k, l);
    let kernel_point = &three * b(n - 4, k - 3) + &three * b(n - 3 - l, k - l - 1);
    let other = if n > 3 + l {
        &three * (b(n - 4, k - 3) - b(n - 4 - l, k - 3)) + &three * b(n - 4 - l, k - l - 2)
    } else {
        BigCount::default()
    };
    core.max(kernel_point).max(other)
}

/// Whether the core-degree formulas give the true maximum degree.
pub fn fano_l_core_dominates(n: i64, k: i64) -> bool {
    fano_l_delta(n, k) == fano_l_delta_exact(n, k)
}

pub fn kernel_core_dominates(n: i64, k: i64, l: i64) -> bool {
    kernel_core_degree(n, k, l) == kernel_delta_identical(n, k, l)
}
