//! Closed-form bounds: weak coloring numbers of sparse classes, coloring
//! graph powers, coloring squares, and the ratio of power bounds to the
//! complete-tree lower bound.
//!
//! Everything is exact integer or rational arithmetic with overflow
//! checking; the one square root is floored with an integer square root.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_integer::Roots;
use num_traits::{CheckedAdd, CheckedMul};

use crate::report::Value;
use crate::{Error, Rational, Result};

fn invalid(msg: &str) -> Error {
    Error::InvalidParameter(msg.to_string())
}

fn as_int(x: usize) -> i128 {
    x as i128
}

fn pow(base: i128, exp: usize, what: &'static str) -> Result<i128> {
    let mut acc: i128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base).ok_or(Error::Overflow(what))?;
    }
    Ok(acc)
}

/// `C(n, r)` in exact arithmetic.
pub fn binomial(n: usize, r: usize) -> Result<i128> {
    if r > n {
        return Ok(0);
    }
    let r = r.min(n - r);
    let mut acc: i128 = 1;
    for i in 0..r {
        acc = acc.checked_mul(as_int(n - i)).ok_or(Error::Overflow("binomial"))? / as_int(i + 1);
    }
    Ok(acc)
}

/// Graph classes with a known `wcol_k` upper bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WcolClass {
    /// Tree-width at most `t`; the bound is sharp.
    TreeWidth {
        t: usize,
    },
    /// No `K_t` minor, `t ≥ 4`.
    NoCompleteMinor {
        t: usize,
    },
    /// Genus `g`.
    Genus {
        g: usize,
    },
    Planar,
    /// No `K*_{s,t}` minor, the join of `K_s` with `t` independent vertices.
    NoJoinMinor {
        s: usize,
        t: usize,
    },
}

/// Upper bound on `wcol_k` for graphs in `class`.
pub fn wcol_bound(class: WcolClass, k: usize) -> Result<i128> {
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    let k_ = as_int(k);
    let odd = 2 * k_ + 1;
    let planar_core = || -> Result<i128> { binomial(k + 2, 2) };
    match class {
        WcolClass::TreeWidth { t } => binomial(k + t, t),
        WcolClass::NoCompleteMinor { t } => {
            if t < 4 {
                return Err(invalid("the K_t-minor-free bound needs t >= 4"));
            }
            let t3 = as_int(t - 3);
            Ok(binomial(k + t - 2, t - 2)? * t3 * odd - k_ * t3)
        }
        WcolClass::Genus { g } => Ok((2 * as_int(g) + planar_core()?) * odd - k_),
        WcolClass::Planar => Ok(planar_core()? * odd - k_),
        WcolClass::NoJoinMinor { s, t } => {
            if s == 0 || t == 0 {
                return Err(invalid("the K*_{s,t}-minor-free bound needs s, t >= 1"));
            }
            Ok(as_int(s) * as_int(t - 1) * binomial(k + s, s)? * odd)
        }
    }
}

/// One evaluated bound with the hypothesis it is valid under.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BoundExpression {
    pub name: &'static str,
    /// The quantity bounded, e.g. `"col(G^p)"`.
    pub bounds: &'static str,
    pub hypothesis: String,
    pub params: Vec<(&'static str, i128)>,
    pub value: Value,
}

/// `L = (Δ(Δ−1)^⌊p/2⌋ − 2)/(Δ−2)`, the order of the largest tree of height
/// `⌊p/2⌋` and maximum degree `Δ`; its `p`-th power is complete.
pub fn tree_lower_bound(delta: usize, p: usize) -> Result<i128> {
    if delta < 3 {
        return Err(invalid("the tree lower bound needs delta >= 3"));
    }
    let d = as_int(delta);
    let top = d.checked_mul(pow(d - 1, p / 2, "tree lower bound")?).ok_or(Error::Overflow("tree lower bound"))?;
    Ok((top - 2) / (d - 2))
}

/// `2^{p+1} · arb^{⌈p/2⌉} · Δ^{⌊p/2⌋}`, bounding `arb(G^p)`.
pub fn arb_power_bound(delta: usize, p: usize, arb: usize) -> Result<i128> {
    let what = "arboricity power bound";
    pow(2, p + 1, what)?
        .checked_mul(pow(as_int(arb), p.div_ceil(2), what)?)
        .and_then(|x| x.checked_mul(pow(as_int(delta), p / 2, what).ok()?))
        .ok_or(Error::Overflow(what))
}

/// `⌊√((91p−118)/384) · (Δ+1)^{(p+1)/2}⌋ + Δ + 1`, bounding `col(G^p)` for
/// chordal `G`. Needs `91p ≥ 118`, i.e. `p ≥ 2`, and `Δ ≥ 2`.
///
/// The floor is taken as `⌊√⌊x⌋⌋` with `x = (91p−118)(Δ+1)^{p+1}/384`,
/// which equals `⌊√x⌋` for every nonnegative real `x`.
pub fn chordal_power_bound(delta: usize, p: usize) -> Result<i128> {
    if delta < 2 {
        return Err(invalid("the chordal power bound needs delta >= 2"));
    }
    if 91 * p < 118 {
        return Err(invalid("the chordal power bound needs 91p >= 118"));
    }
    let what = "chordal power bound";
    let x = as_int(91 * p - 118).checked_mul(pow(as_int(delta) + 1, p + 1, what)?).ok_or(Error::Overflow(what))?;
    Ok((x / 384).sqrt() + as_int(delta) + 1)
}

fn wcol_power_core(delta: usize, p: usize, q: usize) -> Result<Rational> {
    if delta < 3 {
        return Err(invalid("the weak-coloring power bound needs delta >= 3"));
    }
    if p == 0 {
        return Err(invalid("p must be at least 1"));
    }
    let d = as_int(delta);
    let what = "weak-coloring power bound";
    let num = d
        .checked_mul(as_int(p.div_ceil(2)))
        .and_then(|x| x.checked_mul(as_int(q)))
        .and_then(|x| x.checked_mul(pow(d - 1, p / 2, what).ok()?))
        .ok_or(Error::Overflow(what))?;
    Ok(Rational::new(num, d - 2))
}

/// `(Δ/(Δ−2)) · ⌊(p+1)/2⌋ · q · (Δ−1)^{⌊p/2⌋}`: the maximum out-weight bound
/// for the weighted orientation of `G^p`, with `q` the weak
/// `⌈p/2⌉`-coloring number of the ordering used.
pub fn wcol_power_outweight_bound(delta: usize, p: usize, q: usize) -> Result<Rational> {
    wcol_power_core(delta, p, q)
}

/// Twice [`wcol_power_outweight_bound`], bounding `mad(G^p)`.
pub fn wcol_power_mad_bound(delta: usize, p: usize, q: usize) -> Result<Rational> {
    Ok(wcol_power_core(delta, p, q)? * Rational::from_integer(2))
}

/// The counting sum before it is closed up:
/// `½·q·Σ_{j≤P}(Δ−1)^j + Σ_{h=1..P} Δ(Δ−1)^{h−1}·q·Σ_{j≤P−h}(Δ−1)^j`
/// with `P = ⌊p/2⌋`.
pub fn power_outweight_intermediate(delta: usize, p: usize, q: usize) -> Result<Rational> {
    if delta < 3 {
        return Err(invalid("the weak-coloring power bound needs delta >= 3"));
    }
    let what = "intermediate power sum";
    let d = as_int(delta);
    let q = as_int(q);
    let big_p = p / 2;
    let geometric = |top: usize| -> Result<i128> {
        (0..=top).try_fold(0i128, |acc, j| acc.checked_add(pow(d - 1, j, what)?).ok_or(Error::Overflow(what)))
    };
    let mut total = Rational::new(q * geometric(big_p)?, 2);
    for h in 1..=big_p {
        let term = d
            .checked_mul(pow(d - 1, h - 1, what)?)
            .and_then(|x| x.checked_mul(q))
            .and_then(|x| x.checked_mul(geometric(big_p - h).ok()?))
            .ok_or(Error::Overflow(what))?;
        total = total.checked_add(&Rational::from_integer(term)).ok_or(Error::Overflow(what))?;
    }
    Ok(total)
}

/// Every power bound applicable to `(Δ, p)`. The arboricity bound needs
/// `arb`, the weak-coloring bound needs `q`; missing inputs skip them.
pub fn power_bounds(delta: usize, p: usize, arb: Option<usize>, q: Option<usize>) -> Result<Vec<BoundExpression>> {
    if p == 0 {
        return Err(invalid("p must be at least 1"));
    }
    let base = [("delta", as_int(delta)), ("p", as_int(p))];
    let mut out = Vec::new();
    if let Some(arb) = arb {
        let mut params = base.to_vec();
        params.push(("arb", as_int(arb)));
        out.push(BoundExpression {
            name: "arb-power",
            bounds: "arb(G^p)",
            hypothesis: "max degree <= delta".into(),
            params,
            value: arb_power_bound(delta, p, arb)?.into(),
        });
    }
    if delta >= 2 && 91 * p >= 118 {
        out.push(BoundExpression {
            name: "chordal-power",
            bounds: "col(G^p)",
            hypothesis: "G chordal, max degree <= delta, delta >= 2".into(),
            params: base.to_vec(),
            value: chordal_power_bound(delta, p)?.into(),
        });
    }
    if delta >= 3 {
        if let Some(q) = q {
            let mut params = base.to_vec();
            params.push(("q", as_int(q)));
            out.push(BoundExpression {
                name: "wcol-power",
                bounds: "mad(G^p)",
                hypothesis: "max degree <= delta, delta >= 3, wcol_{ceil(p/2)}(G) <= q".into(),
                params,
                value: wcol_power_mad_bound(delta, p, q)?.into(),
            });
        }
        out.push(BoundExpression {
            name: "tree-lower",
            bounds: "chi(T^p) for the maximum tree T of height floor(p/2)",
            hypothesis: "delta >= 3".into(),
            params: base.to_vec(),
            value: tree_lower_bound(delta, p)?.into(),
        });
    }
    Ok(out)
}

/// `max{(2k−1)Δ−k²+k+1, (2k−2)Δ+2k³+k²+2, (k−1)Δ+k⁴+2k³+2}`, bounding
/// `χ(G²)` when `mad(G) < 2k`.
pub fn square_chromatic_bound(k: usize, delta: usize) -> i128 {
    let (k, d) = (as_int(k), as_int(delta));
    let a = (2 * k - 1) * d - k * k + k + 1;
    let b = (2 * k - 2) * d + 2 * k * k * k + k * k + 2;
    let c = (k - 1) * d + k * k * k * k + 2 * k * k * k + 2;
    a.max(b).max(c)
}

/// `(3k−2)Δ − k² + 4k + 2`, bounding `col(G²)` when `mad(G) ≤ 2k` and
/// `Δ ≥ 2k − 2`.
pub fn square_col_game_bound(k: usize, delta: usize) -> i128 {
    let (k, d) = (as_int(k), as_int(delta));
    (3 * k - 2) * d - k * k + 4 * k + 2
}

/// `(2k−1)Δ + 2k + 1`, bounding `col(G²)` when `2k−2 < mad(G) ≤ 2k`.
pub fn square_col_bound(k: usize, delta: usize) -> i128 {
    let (k, d) = (as_int(k), as_int(delta));
    (2 * k - 1) * d + 2 * k + 1
}

/// The four square comparators. The list-coloring entry is included only
/// when `c` is given.
pub fn square_bounds(k: usize, delta: usize, c: Option<usize>) -> Result<Vec<BoundExpression>> {
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    let base = [("k", as_int(k)), ("delta", as_int(delta))];
    let mut out = vec_with("square-chi", "chi(G^2)", "mad(G) < 2k".into(), &base, square_chromatic_bound(k, delta));
    if let Some(c) = c {
        if c < 2 {
            return Err(invalid("the list-coloring bound needs c >= 2"));
        }
        let mut params = base.to_vec();
        params.push(("c", as_int(c)));
        out.push(BoundExpression {
            name: "square-list",
            bounds: "chi_l(G^2)",
            hypothesis: alloc::format!("mad(G) < 4 - 1/{c}, delta >= {}", 14 * c - 7),
            params,
            value: (2 * as_int(delta)).into(),
        });
    }
    out.extend(vec_with(
        "square-col-game",
        "col(G^2)",
        "mad(G) <= 2k, delta >= 2k - 2".into(),
        &base,
        square_col_game_bound(k, delta),
    ));
    out.extend(vec_with("square-col", "col(G^2)", "2k - 2 < mad(G) <= 2k".into(), &base, square_col_bound(k, delta)));
    Ok(out)
}

fn vec_with(
    name: &'static str,
    bounds: &'static str,
    hypothesis: String,
    params: &[(&'static str, i128)],
    value: i128,
) -> Vec<BoundExpression> {
    alloc::vec![BoundExpression { name, bounds, hypothesis, params: params.to_vec(), value: value.into() }]
}

/// One row of [`ratio_table`].
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RatioRow {
    pub p: usize,
    pub tree_lower: i128,
    /// chordal bound / L; `None` outside `91p ≥ 118`.
    pub chordal_ratio: Option<Value>,
    /// weak-coloring bound / L, when a `q` was supplied for this `p`.
    pub wcol_ratio: Option<Value>,
    pub q: Option<usize>,
    /// Square of `√((91p−118)/384)·((Δ−2)/Δ)·(1+2/(Δ−1))^{p/2}`, the
    /// exponential lower estimate of the chordal ratio; kept squared so it
    /// stays rational.
    pub chordal_estimate_sq: Option<Value>,
}

/// Squared lower estimate of the chordal-bound-to-`L` ratio.
pub fn chordal_ratio_estimate_sq(delta: usize, p: usize) -> Result<Option<Rational>> {
    if delta < 3 {
        return Err(invalid("the ratio table needs delta >= 3"));
    }
    if 91 * p < 118 {
        return Ok(None);
    }
    let d = as_int(delta);
    let what = "ratio estimate";
    let growth = Rational::new(pow(d + 1, p, what)?, pow(d - 1, p, what)?);
    let shrink = Rational::new((d - 2) * (d - 2), d * d);
    let root = Rational::new(as_int(91 * p - 118), 384);
    root.checked_mul(&shrink).and_then(|x| x.checked_mul(&growth)).map(Some).ok_or(Error::Overflow(what))
}

/// For each `p`, the chordal and weak-coloring power bounds divided by `L`,
/// plus the chordal ratio's lower estimate. `q(p)` supplies the weak
/// `⌈p/2⌉`-coloring value to use, if any.
pub fn ratio_table<F>(delta: usize, ps: impl IntoIterator<Item = usize>, q: F) -> Result<Vec<RatioRow>>
where
    F: Fn(usize) -> Option<usize>,
{
    if delta < 3 {
        return Err(invalid("the ratio table needs delta >= 3"));
    }
    let mut rows = Vec::new();
    for p in ps {
        if p == 0 {
            return Err(invalid("p must be at least 1"));
        }
        let l = tree_lower_bound(delta, p)?;
        let l_r = Rational::from_integer(l);
        let chordal_ratio = if 91 * p >= 118 {
            Some(Value::Rational(Rational::from_integer(chordal_power_bound(delta, p)?) / l_r))
        } else {
            None
        };
        let qp = q(p);
        let wcol_ratio = match qp {
            Some(qv) => Some(Value::Rational(wcol_power_mad_bound(delta, p, qv)? / l_r)),
            None => None,
        };
        rows.push(RatioRow {
            p,
            tree_lower: l,
            chordal_ratio,
            wcol_ratio,
            q: qp,
            chordal_estimate_sq: chordal_ratio_estimate_sq(delta, p)?.map(Value::Rational),
        });
    }
    Ok(rows)
}

/// Exact `Rational` out of a [`Value`], for callers that know the variant.
pub fn value_as_rational(v: &Value) -> Option<Rational> {
    match v {
        Value::Int(i) => Some(Rational::from_integer(*i)),
        Value::Rational(r) => Some(*r),
        _ => None,
    }
}

/// Returns `a <= b` for rationals, `false` if either side is missing.
pub fn rational_le(a: Option<Rational>, b: Option<Rational>) -> bool {
    matches!((a, b), (Some(a), Some(b)) if a <= b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2).unwrap(), 10);
        assert_eq!(binomial(4, 0).unwrap(), 1);
        assert_eq!(binomial(2, 3).unwrap(), 0);
        assert_eq!(binomial(60, 30).unwrap(), 118264581564861424);
    }

    #[test]
    fn wcol_bounds() {
        assert_eq!(wcol_bound(WcolClass::TreeWidth { t: 1 }, 3).unwrap(), 4);
        assert_eq!(wcol_bound(WcolClass::Planar, 1).unwrap(), 8);
        assert_eq!(wcol_bound(WcolClass::Genus { g: 0 }, 1).unwrap(), 8);
        // C(k+2, 2)·1·(2k+1) − k at t = 4 is the planar formula
        for k in 1..6 {
            assert_eq!(
                wcol_bound(WcolClass::NoCompleteMinor { t: 4 }, k).unwrap(),
                wcol_bound(WcolClass::Planar, k).unwrap()
            );
        }
        assert!(wcol_bound(WcolClass::NoCompleteMinor { t: 3 }, 1).is_err());
        assert!(wcol_bound(WcolClass::Planar, 0).is_err());
        // s=1, t=3, k=1: 1·2·2·3
        assert_eq!(wcol_bound(WcolClass::NoJoinMinor { s: 1, t: 3 }, 1).unwrap(), 12);
    }

    #[test]
    fn power_formula_values() {
        assert_eq!(tree_lower_bound(3, 4).unwrap(), 10);
        assert_eq!(tree_lower_bound(3, 2).unwrap(), 4);
        assert_eq!(tree_lower_bound(4, 4).unwrap(), 17);
        assert_eq!(tree_lower_bound(5, 1).unwrap(), 1);
        assert_eq!(arb_power_bound(3, 2, 1).unwrap(), 24);
        assert!(chordal_power_bound(3, 1).is_err());
        // p=2, Δ=3: ⌊√(64·64/384)⌋ + 4 = ⌊√10.67⌋ + 4 = 7
        assert_eq!(chordal_power_bound(3, 2).unwrap(), 7);
        assert_eq!(wcol_power_mad_bound(3, 2, 1).unwrap(), ratio(12, 1));
        assert_eq!(wcol_power_outweight_bound(3, 2, 1).unwrap(), ratio(6, 1));
        assert!(wcol_power_mad_bound(2, 2, 1).is_err());
    }

    #[test]
    fn intermediate_sum_small_cases() {
        // p = 1: only the half term with j = 0
        assert_eq!(power_outweight_intermediate(3, 1, 4).unwrap(), ratio(2, 1));
        // p = 2, Δ = 3, q = 1: ½(1 + 2) + 3 = 9/2
        assert_eq!(power_outweight_intermediate(3, 2, 1).unwrap(), ratio(9, 2));
    }

    #[test]
    fn square_values() {
        assert_eq!(square_col_bound(1, 10), 13);
        assert_eq!(square_col_bound(2, 100), 305);
        assert_eq!(square_col_game_bound(2, 100), 406);
        assert_eq!(square_chromatic_bound(2, 100), 299);
        let all = square_bounds(2, 100, Some(2)).unwrap();
        assert_eq!(all.len(), 4);
        assert!(square_bounds(2, 100, Some(1)).is_err());
    }

    #[test]
    fn ratio_rows() {
        let rows = ratio_table(3, 1..=3, |p| Some(if p == 2 { 1 } else { 2 })).unwrap();
        assert_eq!(rows[0].chordal_ratio, None);
        assert_eq!(rows[1].tree_lower, 4);
        assert_eq!(rows[1].wcol_ratio, Some(Value::Rational(ratio(3, 1))));
        assert!(rows[1].chordal_ratio.is_some());
    }
}
