//! Theorem and lemma inequalities as exact, decidable predicates.

use super::binom::binom;
use super::closed;
use crate::canon::canonical_form;
use crate::constructions::family_triangle;
use crate::error::{invalid, Error, Result};
use crate::family::Family;
use crate::rational::{ratio, BigCount, Rational};
use crate::search::stability::triangle_sandwich;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Le,
    Lt,
    Ge,
    Gt,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
        }
    }
}

/// Outcome of classifying an extremal family when a bound is attained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityCase {
    pub class: String,
    pub matches: bool,
    /// 1-indexed triple realizing the class, when one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triple: Option<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundVerdict {
    pub name: String,
    pub hypotheses_hold: bool,
    pub lhs: Rational,
    pub rhs: Rational,
    pub relation: Relation,
    pub satisfied: bool,
    pub tight: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equality_case: Option<EqualityCase>,
}

impl BoundVerdict {
    pub fn new(name: impl Into<String>, hypotheses_hold: bool, lhs: Rational, rhs: Rational, relation: Relation) -> Self {
        let satisfied = relation.holds(&lhs, &rhs);
        let tight = lhs == rhs;
        BoundVerdict { name: name.into(), hypotheses_hold, lhs, rhs, relation, satisfied, tight, equality_case: None }
    }

    /// A genuine counterexample: hypotheses hold and the inequality fails.
    pub fn is_violation(&self) -> bool {
        self.hypotheses_hold && !self.satisfied
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Theorem {
    Ekr,
    HiltonMilner,
    Frankl(usize),
    Diversity(usize),
    Fw2,
    Fw3,
    /// `γ(F) ≤ C(n-3,k-2)` for `n > 4k`; open below `n > 36k`.
    DiversityConjecture,
    Main(Rational),
    RhoLower,
}

impl Theorem {
    /// Builds a theorem from its CLI name plus the optional `i` and `C` arguments.
    pub fn parse(name: &str, i: Option<usize>, c: Option<Rational>) -> Result<Theorem> {
        let need_i = || i.ok_or_else(|| Error::InvalidParameter(format!("theorem {name} needs --i")));
        Ok(match name {
            "ekr" => Theorem::Ekr,
            "hm" => Theorem::HiltonMilner,
            "frankl" => Theorem::Frankl(need_i()?),
            "diversity" => Theorem::Diversity(need_i()?),
            "fw2" => Theorem::Fw2,
            "fw3" => Theorem::Fw3,
            "diversity-conj" => Theorem::DiversityConjecture,
            "main" => Theorem::Main(c.ok_or_else(|| Error::InvalidParameter("theorem main needs --c".into()))?),
            "rho-lower" => Theorem::RhoLower,
            other => return invalid(format!("unknown theorem {other:?}")),
        })
    }
}

impl Theorem {
    /// The upper bound on `max γ_C` at `(n, k)` that a search result can be
    /// checked against, if any.
    pub fn governing(n: i64, k: i64, c: &Rational) -> Option<Theorem> {
        if c == &Rational::one() {
            Some(if n > 36 * k { Theorem::Fw2 } else { Theorem::DiversityConjecture })
        } else if c > &Rational::one() && c < &ratio(3, 2) {
            Some(Theorem::Main(c.clone()))
        } else {
            None
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theorem::Ekr => write!(f, "ekr"),
            Theorem::HiltonMilner => write!(f, "hm"),
            Theorem::Frankl(i) => write!(f, "frankl({i})"),
            Theorem::Diversity(i) => write!(f, "diversity({i})"),
            Theorem::Fw2 => write!(f, "fw2"),
            Theorem::Fw3 => write!(f, "fw3"),
            Theorem::DiversityConjecture => write!(f, "diversity-conj"),
            Theorem::Main(c) => write!(f, "main({c})"),
            Theorem::RhoLower => write!(f, "rho-lower"),
        }
    }
}

impl FromStr for Theorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Theorem> {
        Theorem::parse(s, None, None)
    }
}

fn q(v: &BigCount) -> Rational {
    Rational::from_count(v)
}

fn qi(v: impl Into<i64>) -> Rational {
    Rational::from(v.into())
}

/// Evaluates one theorem on an intersecting family.
pub fn check_theorem(f: &Family, which: &Theorem) -> Result<BoundVerdict> {
    if !f.is_intersecting() {
        return Err(Error::NotIntersecting);
    }
    let (n, k) = (f.n() as i64, f.k() as i64);
    let size = qi(f.len() as i64);
    let name = which.to_string();
    let basic = n > 2 * k && 2 * k >= 4;
    Ok(match which {
        Theorem::Ekr => {
            BoundVerdict::new(name, n >= 2 * k && k > 0, size, q(&binom(n - 1, k - 1)), Relation::Le)
        }
        Theorem::HiltonMilner => {
            let hyp = basic && !f.is_star();
            BoundVerdict::new(name, hyp, size, q(&closed::hm_bound(n, k)), Relation::Le)
        }
        Theorem::Frankl(i) => {
            let i = *i as i64;
            let in_range = (3..=k + 1).contains(&i);
            let hyp = basic && in_range && BigCount::from(f.delta()) <= closed::fi_delta_exact(n, k, i);
            BoundVerdict::new(name, hyp, size, q(&closed::fi_size(n, k, i)), Relation::Le)
        }
        Theorem::Diversity(i) => {
            let i = *i as i64;
            let in_range = (3..=k + 1).contains(&i);
            let gamma_fi = closed::fi_size(n, k, i) - closed::fi_delta_exact(n, k, i).min(closed::fi_size(n, k, i));
            let hyp = basic && in_range && BigCount::from(f.diversity()) >= gamma_fi;
            BoundVerdict::new(name, hyp, size, q(&closed::fi_size(n, k, i)), Relation::Le)
        }
        Theorem::Fw2 => {
            let mut v = BoundVerdict::new(name, n > 36 * k, qi(f.diversity() as i64), q(&binom(n - 3, k - 2)), Relation::Le);
            if v.tight && !f.is_empty() {
                let t = triangle_sandwich(f);
                v.equality_case = Some(EqualityCase {
                    class: "triangle-sandwich".into(),
                    matches: t.is_some(),
                    triple: t.map(|t| [t[0] + 1, t[1] + 1, t[2] + 1]),
                });
            }
            v
        }
        Theorem::DiversityConjecture => {
            BoundVerdict::new(name, n > 4 * k, qi(f.diversity() as i64), q(&binom(n - 3, k - 2)), Relation::Le)
        }
        Theorem::Fw3 => {
            let hyp = !f.is_empty() && size >= qi(36) * q(&binom(n - 3, k - 3)) && n >= 24 * k;
            let rho = if f.is_empty() { Rational::zero() } else { f.rho()? };
            BoundVerdict::new(name, hyp, rho, ratio(2, 3) - ratio(k, n), Relation::Gt)
        }
        Theorem::Main(c) => {
            let in_range = c > &Rational::one() && c < &ratio(3, 2);
            let three_minus = qi(3) - qi(2) * c.clone();
            let hyp = in_range && k >= 3 && qi(n) * three_minus.clone() >= qi(42 * k);
            let mut v = BoundVerdict::new(name, hyp, f.c_diversity(c), three_minus * q(&binom(n - 3, k - 2)), Relation::Le);
            if v.tight && k >= 2 && n >= 3 {
                let tri = family_triangle(f.n(), f.k())?;
                v.equality_case = Some(EqualityCase {
                    class: "triangle".into(),
                    matches: f.len() == tri.len() && canonical_form(f) == canonical_form(&tri),
                    triple: None,
                });
            }
            v
        }
        Theorem::RhoLower => {
            let hyp = n > 36 * k && BigCount::from(f.len()) > closed::fi_size(n, k, 3);
            let rho = if f.is_empty() { Rational::zero() } else { f.rho()? };
            let m = (k + 4).max(40);
            BoundVerdict::new(name, hyp, rho, Rational::one() - ratio(m * k, 3 * n), Relation::Gt)
        }
    })
}

fn check_c_range(c: &Rational, lo: Rational, lo_incl: bool, hi: Rational, what: &str) -> Result<()> {
    let above = if lo_incl { c >= &lo } else { c > &lo };
    if above && c < &hi {
        Ok(())
    } else {
        invalid(format!("C = {c} outside the range of {what}"))
    }
}

/// Returns `(42k/(3-2C), (3-2C)·C(n-3,k-2))` for `1 < C < 3/2`.
pub fn main_bound(c: &Rational, n: i64, k: i64) -> Result<(Rational, Rational)> {
    check_c_range(c, Rational::one(), false, ratio(3, 2), "main_bound")?;
    let eps = qi(3) - qi(2) * c.clone();
    let threshold = qi(42 * k) / eps.clone();
    Ok((threshold, eps * q(&binom(n - 3, k - 2))))
}

/// Piecewise upper bound on `γ_C` for `3/2 ≤ C < 7/3`.
pub fn mpw_bound(c: &Rational, n: i64, k: i64) -> Result<Rational> {
    check_c_range(c, ratio(3, 2), true, ratio(7, 3), "mpw_bound")?;
    if c < &ratio(7, 4) {
        Ok(closed::fano_lplus_c_diversity(n, k, c))
    } else {
        Ok(closed::fano_l_c_diversity(n, k, c))
    }
}

/// `2(k-2)/(3-2C)`: below this `n`, the Fano family can beat the triangle.
pub fn fano_lower_threshold(c: &Rational, k: i64) -> Result<Rational> {
    check_c_range(c, Rational::one(), false, ratio(3, 2), "fano_lower_threshold")?;
    Ok(qi(2 * (k - 2)) / (qi(3) - qi(2) * c.clone()))
}

/// Whether `γ_C(F_L) > (3-2C)·C(n-3,k-2)`.
pub fn fano_beats_triangle(c: &Rational, n: i64, k: i64) -> Result<bool> {
    check_c_range(c, Rational::one(), false, ratio(3, 2), "fano_beats_triangle")?;
    Ok(closed::fano_l_c_diversity(n, k, c) > closed::triangle_c_diversity(n, k, c))
}

/// Verdicts for the cross-intersecting size trade-offs: the bound on `|B|`
/// when `A` contains everything meeting `[d]`, the weighted sum bound under the
/// same hypothesis, and the normalized sum bound.
pub fn cross_lemma_bounds(
    n: i64,
    a: i64,
    b: i64,
    d: i64,
    size_a: &BigCount,
    size_b: &BigCount,
) -> Result<(BoundVerdict, BoundVerdict, BoundVerdict)> {
    if a < 1 || b < 1 || n < a + b {
        return invalid(format!("need 1 <= a, b and n >= a + b (n={n}, a={a}, b={b})"));
    }
    if d < 1 || d >= b {
        return invalid(format!("need 1 <= d < b (d={d}, b={b})"));
    }
    if size_a > &binom(n, a) || size_b > &binom(n, b) {
        return invalid("family size exceeds the number of available sets");
    }
    let need: BigCount = (1..=d).map(|j| binom(n - j, a - 1)).sum();
    let hyp = size_a >= &need;
    let (sa, sb) = (q(size_a), q(size_b));
    let key0 = BoundVerdict::new("cross-key0", hyp, sb.clone(), q(&binom(n - d, b - d)), Relation::Le);
    let weight = q(&binom(n - d, a)) / q(&binom(n - d, b - d));
    let key = BoundVerdict::new("cross-key", hyp, sa.clone() + weight * sb.clone(), q(&binom(n, a)), Relation::Le);
    let sum = BoundVerdict::new(
        "cross-sum",
        true,
        sa / q(&binom(n, a)) + sb / q(&binom(n, b)),
        Rational::one(),
        Relation::Le,
    );
    Ok((key0, key, sum))
}

/// `C(n-i,k) ≥ (n-ik)/n · C(n,k)` for `n > ik`.
pub fn prop_binom_ratio(n: i64, k: i64, i: i64) -> Result<BoundVerdict> {
    if n <= i * k || i < 0 || k < 0 {
        return invalid(format!("need n > ik (n={n}, k={k}, i={i})"));
    }
    let lhs = q(&binom(n - i, k));
    let rhs = ratio(n - i * k, n) * q(&binom(n, k));
    Ok(BoundVerdict::new("prop-binom-ratio", true, lhs, rhs, Relation::Ge))
}

/// Shadow bound `|∂^ℓ F| / C(n,ℓ) ≥ |F| / C(n,k)`.
pub fn sperner(f: &Family, l: usize) -> Result<BoundVerdict> {
    let sh = f.shadow(l)?;
    let (n, k) = (f.n() as i64, f.k() as i64);
    let lhs = qi(sh.len() as i64) / q(&binom(n, l as i64));
    let rhs = qi(f.len() as i64) / q(&binom(n, k));
    Ok(BoundVerdict::new("sperner", true, lhs, rhs, Relation::Ge))
}

/// `|F| ≤ ν(F)·C(n-1,k-1)`.
/// `|F| ≤ ν(F)·C(n-1,k-1)`, claimed for `n ≥ (ν+1)k`; all of `C([5],3)` shows it fails below that.
pub fn matching_bound(f: &Family) -> BoundVerdict {
    let nu = f.matching_number() as i64;
    let (n, k) = (f.n() as i64, f.k() as i64);
    let rhs = qi(nu) * q(&binom(n - 1, k - 1));
    BoundVerdict::new("matching", n >= (nu + 1) * k, qi(f.len() as i64), rhs, Relation::Le)
}

/// Right sides of the stability inequalities for `(n, k, d, α)`:
/// `(dα/2)·C(n-d+3,k-d+3)` and `3α·C(n-3,k-2) + (3dα/2)·C(n-d+3,k-d+3)`.
pub fn stability_bounds(n: i64, k: i64, d: i64, alpha: &Rational) -> (Rational, Rational) {
    let tail = q(&binom(n - d + 3, k - d + 3));
    let outside = ratio(d, 2) * alpha.clone() * tail.clone();
    let missing = qi(3) * alpha.clone() * q(&binom(n - 3, k - 2)) + ratio(3 * d, 2) * alpha.clone() * tail;
    (outside, missing)
}

/// Hypothesis `0 ≤ α < 1`, `d ≥ 36` and `n ≥ dk/(1-α)`.
pub fn stability_hypotheses(n: i64, k: i64, d: i64, alpha: &Rational) -> bool {
    !alpha.is_negative() && alpha < &Rational::one() && d >= 36 && qi(n) * (Rational::one() - alpha.clone()) >= qi(d * k)
}
