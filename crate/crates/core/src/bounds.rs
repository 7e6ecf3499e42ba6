//! Closed-form bounds, parameter optimization and limitation certificates.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::cuts::NamedCut;
use crate::error::{invalid, Result};
use crate::instances::{combine_on, GapParams, WeightMap};
use crate::lattice::SimplexGraph;
use crate::rational::{from_f64_decimal, int, min_rational, rat, to_f64, Rational};
use crate::regions::red_side;

/// Whether a bound is evaluated as `n → ∞` or at a concrete `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    Asymptotic,
    Finite(u32),
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Asymptotic => f.write_str("asymptotic"),
            Regime::Finite(n) => write!(f, "n={n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem2Bound {
    pub term_i: Rational,
    pub term_ii: Rational,
    pub bound: Rational,
    pub regime: Regime,
    /// False for finite `n < 10` or when `c·n` is not an integer.
    pub in_regime: bool,
}

fn lambda(params: &GapParams) -> (&Rational, &Rational, &Rational, &Rational) {
    let l = &params.lambda;
    (&l[0], &l[1], &l[2], &l[3])
}

/// `min(0.4αλ₁ + 3(1/2 − α)λ₄)` over `α ∈ [0, 1/2]`, attained at an endpoint.
pub fn inner_i(params: &GapParams) -> Rational {
    let (l1, _, _, l4) = lambda(params);
    min_rational(l1 * rat(1, 5), l4 * rat(3, 2))
}

/// `min(2λ₃/(9c), min_α 0.4αλ₁ + 3(c²/2 − α)λ₄)` over `α ∈ [0, c²/2]`.
pub fn inner_ii(params: &GapParams) -> Rational {
    let (l1, _, l3, l4) = lambda(params);
    let c = &params.c;
    let c2 = c * c;
    let red = l3 * int(2) / (int(9) * c);
    min_rational(red, min_rational(&c2 * l1 * rat(1, 5), &c2 * l4 * rat(3, 2)))
}

/// Same inner minima over an evenly spaced α-grid with `points` points
/// (endpoints included).
pub fn inner_grid(params: &GapParams, points: u32) -> (Rational, Rational) {
    let (l1, _, l3, l4) = lambda(params);
    let c2 = &params.c * &params.c;
    let steps = int(points.max(2) as i64 - 1);
    let grid = |top: &Rational| -> Rational {
        (0..points.max(2))
            .map(|s| {
                let a = top * int(s as i64) / &steps;
                &a * l1 * rat(2, 5) + (top - &a) * l4 * int(3)
            })
            .min()
            .expect("non-empty grid")
    };
    let i = grid(&rat(1, 2));
    let red = l3 * int(2) / (int(9) * &params.c);
    let ii = min_rational(red, grid(&(&c2 / int(2))));
    (i, ii)
}

pub fn theorem2_bound(params: &GapParams, regime: Regime) -> Result<Theorem2Bound> {
    params.validate()?;
    let (l1, l2, _, _) = lambda(params);
    let (slack_i, slack_ii, in_regime) = match regime {
        Regime::Asymptotic => (Rational::zero(), Rational::zero(), true),
        Regime::Finite(n) => {
            if n == 0 {
                return Err(invalid("n must be positive"));
            }
            let nn = int(n as i64);
            let integral = (&params.c * &nn).is_integer();
            (nn.recip(), rat(5, 2) / &nn, n >= 10 && integral)
        }
    };
    let term_i = l2 + (rat(6, 5) - slack_i) * l1 + inner_i(params);
    let term_ii = l2 * int(2) + (rat(6, 5) - slack_ii) * l1 + inner_ii(params) * int(3);
    let bound = min_rational(term_i.clone(), term_ii.clone());
    Ok(Theorem2Bound { term_i, term_ii, bound, regime, in_regime })
}

/// The five linear pieces of the asymptotic bound as coefficient rows over
/// `(λ₁, λ₂, λ₃, λ₄)`: two from term (i), three from term (ii).
fn bound_pieces(c: f64) -> [[f64; 4]; 5] {
    [
        [1.4, 1.0, 0.0, 0.0],
        [1.2, 1.0, 0.0, 1.5],
        [1.2, 2.0, 2.0 / (3.0 * c), 0.0],
        [1.2 + 0.6 * c * c, 2.0, 0.0, 0.0],
        [1.2, 2.0, 0.0, 4.5 * c * c],
    ]
}

/// Pieces of the limitation minimum; the third applies only for `c < 1/9`.
fn limitation_pieces(c: f64) -> Vec<[f64; 4]> {
    let mut rows = vec![[1.2, 1.0, 0.0, 1.5], [1.2, 2.0, 6.0 / (9.0 * c), 0.0]];
    if c < 1.0 / 9.0 {
        rows.push([1.2, 2.0, 0.0, 4.5 * c * c]);
    }
    rows
}

fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let m = b.len();
    for col in 0..m {
        let piv = (col..m).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[piv][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        let pivot = a[col].clone();
        for r in 0..m {
            if r != col {
                let f = a[r][col] / pivot[col];
                if f != 0.0 {
                    for (x, p) in a[r][col..].iter_mut().zip(&pivot[col..]) {
                        *x -= f * p;
                    }
                    b[r] -= f * b[col];
                }
            }
        }
    }
    Some((0..m).map(|i| b[i] / a[i][i]).collect())
}

/// `max_λ min_j rows[j]·λ` over the probability simplex (optionally with
/// `λ₃ = 0`), by enumerating vertices of the epigraph LP.
pub fn max_min_linear(rows: &[[f64; 4]], lambda3_zero: bool) -> (f64, [f64; 4]) {
    // Variables (λ₁, λ₂, λ₃, λ₄, t). Inequalities as (coeffs, rhs) with a·x ≤ rhs.
    let mut ineq: Vec<[f64; 5]> = rows.iter().map(|r| [-r[0], -r[1], -r[2], -r[3], 1.0]).collect();
    for i in 0..4 {
        if !(lambda3_zero && i == 2) {
            let mut a = [0.0; 5];
            a[i] = -1.0;
            ineq.push(a);
        }
    }
    let mut eq: Vec<[f64; 5]> = vec![[1.0, 1.0, 1.0, 1.0, 0.0]];
    let mut eq_rhs = vec![1.0];
    if lambda3_zero {
        eq.push([0.0, 0.0, 1.0, 0.0, 0.0]);
        eq_rhs.push(0.0);
    }
    let pick = 5 - eq.len();
    let m = ineq.len();
    let mut best = (f64::NEG_INFINITY, [0.0; 4]);
    let mut idx: Vec<usize> = (0..pick).collect();
    loop {
        let mut a: Vec<Vec<f64>> = eq.iter().map(|r| r.to_vec()).collect();
        let mut b = eq_rhs.clone();
        for &i in &idx {
            a.push(ineq[i].to_vec());
            b.push(0.0);
        }
        if let Some(x) = solve(a, b) {
            let feasible = ineq.iter().all(|r| r.iter().zip(&x).map(|(p, q)| p * q).sum::<f64>() <= 1e-12);
            if feasible && x[4] > best.0 + 1e-15 {
                best = (x[4], [x[0], x[1], x[2], x[3]]);
            }
        }
        // next combination
        let mut i = pick;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if idx[i] < m - pick + i {
                idx[i] += 1;
                for j in i + 1..pick {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Best asymptotic bound at a fixed `c` and the multipliers achieving it.
pub fn best_lambda_at(c: f64, lambda3_zero: bool) -> (f64, [f64; 4]) {
    max_min_linear(&bound_pieces(c), lambda3_zero)
}

#[derive(Clone, Debug, PartialEq)]
pub enum OptimizeMode {
    /// Grid over `c` with local zoom refinement.
    Search { c_min: f64, c_max: f64, c_steps: u32, refine_rounds: u32, lambda3_zero: bool },
    /// Evaluate the given parameter sets only.
    Candidates(Vec<GapParams>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimizeConfig {
    pub mode: OptimizeMode,
    /// Decimal places kept when rounding the float optimum to exact params.
    pub decimals: usize,
}

impl Default for OptimizeConfig {
    fn default() -> Self {
        OptimizeConfig {
            mode: OptimizeMode::Search {
                c_min: 0.0005,
                c_max: 0.4995,
                c_steps: 999,
                refine_rounds: 8,
                lambda3_zero: false,
            },
            decimals: 6,
        }
    }
}

impl OptimizeConfig {
    pub fn lambda3_zero() -> Self {
        let mut cfg = OptimizeConfig::default();
        if let OptimizeMode::Search { lambda3_zero, .. } = &mut cfg.mode {
            *lambda3_zero = true;
        }
        cfg
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimizeResult {
    pub params: GapParams,
    /// Exact asymptotic bound of `params`.
    pub bound: Rational,
    /// Float optimum before rounding.
    pub raw_c: f64,
    pub raw_lambda: [f64; 4],
    pub raw_bound: f64,
}

fn round_params(lambda: [f64; 4], c: f64, decimals: usize) -> Result<GapParams> {
    let tail: Vec<Rational> = lambda[1..].iter().map(|&x| from_f64_decimal(x.max(0.0), decimals)).collect();
    let rest = tail.iter().fold(Rational::zero(), |a, x| a + x);
    let l1 = int(1) - rest;
    if l1.is_negative() {
        return Err(invalid("rounded multipliers leave the simplex"));
    }
    GapParams::new([l1, tail[0].clone(), tail[1].clone(), tail[2].clone()], from_f64_decimal(c, decimals))
}

/// Maximizes the asymptotic bound over `c` and the multipliers.
pub fn optimize_params(cfg: &OptimizeConfig) -> Result<OptimizeResult> {
    match &cfg.mode {
        OptimizeMode::Candidates(list) => {
            let mut best: Option<(Rational, &GapParams)> = None;
            for p in list {
                let b = theorem2_bound(p, Regime::Asymptotic)?.bound;
                if best.as_ref().map_or(true, |(cur, _)| b > *cur) {
                    best = Some((b, p));
                }
            }
            let (bound, p) = best.ok_or_else(|| invalid("no candidate parameters"))?;
            let raw_lambda = std::array::from_fn(|i| to_f64(&p.lambda[i]));
            Ok(OptimizeResult {
                params: p.clone(),
                raw_c: to_f64(&p.c),
                raw_lambda,
                raw_bound: to_f64(&bound),
                bound,
            })
        }
        &OptimizeMode::Search { c_min, c_max, c_steps, refine_rounds, lambda3_zero } => {
            if !(0.0 < c_min && c_min <= c_max && c_max < 0.5) {
                return Err(invalid("c range must lie inside (0, 1/2)"));
            }
            let steps = c_steps.max(1);
            let eval = |c: f64| best_lambda_at(c, lambda3_zero);
            let mut step = if steps > 1 { (c_max - c_min) / f64::from(steps - 1) } else { 0.0 };
            let mut best_c = c_min;
            let mut best = eval(c_min);
            for s in 1..steps {
                let c = c_min + step * f64::from(s);
                let v = eval(c);
                if v.0 > best.0 {
                    best = v;
                    best_c = c;
                }
            }
            for _ in 0..refine_rounds {
                let lo = (best_c - step).max(c_min);
                let hi = (best_c + step).min(c_max);
                let sub = 20;
                step = (hi - lo) / f64::from(sub);
                for s in 0..=sub {
                    let c = lo + step * f64::from(s);
                    let v = eval(c);
                    if v.0 > best.0 {
                        best = v;
                        best_c = c;
                    }
                }
            }
            let params = round_params(best.1, best_c, cfg.decimals)?;
            let bound = theorem2_bound(&params, Regime::Asymptotic)?.bound;
            Ok(OptimizeResult { params, bound, raw_c: best_c, raw_lambda: best.1, raw_bound: best.0 })
        }
    }
}

/// Reduced one-variable objective after eliminating the multipliers.
pub fn reduced_objective(c: f64) -> f64 {
    (1.6 - 0.6 * c * c) / (4.0 / 3.0 - 0.6 * c * c + 0.9 * c * c * c)
}

/// Closed-form limitation minimum in the `n → ∞` regime.
pub fn limitation_formula(params: &GapParams) -> Result<Vec<(NamedCut, Rational)>> {
    params.validate()?;
    let (l1, l2, l3, l4) = lambda(params);
    let c = &params.c;
    let base = l1 * rat(6, 5);
    let mut out = vec![
        (NamedCut::PExt, &base + l2 + l4 * rat(3, 2)),
        (NamedCut::PPrime, &base + l2 * int(2) + l3 * int(6) / (int(9) * c)),
    ];
    if *c < rat(1, 9) {
        out.push((NamedCut::P3, &base + l2 * int(2) + l4 * c * c * rat(9, 2)));
    }
    Ok(out)
}

/// Exact finite-`n` excess of each limitation cut over its formula value.
pub fn limitation_correction(params: &GapParams, cut: &NamedCut, n: u32) -> Rational {
    let (l1, _, _, l4) = lambda(params);
    let nn = int(n as i64);
    let n2 = &nn * &nn;
    match cut {
        NamedCut::PExt => l1 * rat(3, 5) / &nn + l4 * (rat(7, 2) / &nn + n2.recip()),
        NamedCut::PPrime => l4 * int(12) / &n2,
        NamedCut::P3 => l4 * (&params.c * rat(27, 2) / &nn + int(12) / &n2),
        _ => Rational::zero(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitationRow {
    pub cut: NamedCut,
    pub formula: Rational,
    /// Directly evaluated cost on `combine(params, n)` (finite regime only).
    pub actual: Option<Rational>,
    pub correction: Rational,
}

impl LimitationRow {
    /// Whether the evaluated cost equals formula plus correction.
    pub fn consistent(&self) -> bool {
        self.actual.as_ref().map_or(true, |a| *a == &self.formula + &self.correction)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limitation {
    pub rows: Vec<LimitationRow>,
    pub value: Rational,
    pub regime: Regime,
}

/// Minimum cost among the limitation cuts. At finite `n` this uses the
/// evaluated cut costs.
pub fn limitation_min(params: &GapParams, regime: Regime) -> Result<Limitation> {
    let formula = limitation_formula(params)?;
    let mut rows = Vec::new();
    match regime {
        Regime::Asymptotic => {
            for (cut, f) in formula {
                rows.push(LimitationRow { cut, formula: f, actual: None, correction: Rational::zero() });
            }
        }
        Regime::Finite(n) => {
            red_side(&params.c, n)?;
            let g = std::sync::Arc::new(SimplexGraph::new(4, n)?);
            let w = combine_on(&g, params)?;
            for (cut, f) in formula {
                let p = cut.build_on(&g, Some(&params.c))?;
                let actual = p.cost(&w)?;
                let correction = limitation_correction(params, &cut, n);
                rows.push(LimitationRow { cut, formula: f, actual: Some(actual), correction });
            }
        }
    }
    let value = rows
        .iter()
        .map(|r| r.actual.clone().unwrap_or_else(|| r.formula.clone()))
        .min()
        .expect("at least two cuts");
    Ok(Limitation { rows, value, regime })
}

/// Float version of the asymptotic limitation minimum for large sweeps.
pub fn limitation_min_f64(lambda: [f64; 4], c: f64) -> f64 {
    limitation_pieces(c)
        .iter()
        .map(|r| r.iter().zip(&lambda).map(|(a, b)| a * b).sum::<f64>())
        .fold(f64::INFINITY, f64::min)
}

/// Best limitation value at fixed `c` over the multipliers, optionally
/// with `λ₃ = 0`.
pub fn limitation_max_at(c: f64, lambda3_zero: bool) -> f64 {
    max_min_linear(&limitation_pieces(c), lambda3_zero).0
}

/// `(3 − 9c²/2)/(5/2 − 9c²/2 + 27c³/4)`.
pub fn beta(c: f64) -> f64 {
    (3.0 - 4.5 * c * c) / (2.5 - 4.5 * c * c + 6.75 * c * c * c)
}

pub fn beta_exact(c: &Rational) -> Rational {
    let c2 = c * c;
    let c3 = &c2 * c;
    (int(3) - &c2 * rat(9, 2)) / (rat(5, 2) - &c2 * rat(9, 2) + c3 * rat(27, 4))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BetaMax {
    pub c: f64,
    pub beta: f64,
}

/// Maximum of [`beta`] over `[0, 1/9)` with `steps` grid points and zoom
/// refinement.
pub fn beta_max_with(steps: u32) -> BetaMax {
    let hi = 1.0 / 9.0;
    let steps = steps.max(2);
    let mut step = hi / f64::from(steps);
    let mut best = BetaMax { c: 0.0, beta: beta(0.0) };
    for s in 1..steps {
        let c = step * f64::from(s);
        if beta(c) > best.beta {
            best = BetaMax { c, beta: beta(c) };
        }
    }
    for _ in 0..30 {
        let lo = (best.c - step).max(0.0);
        let top = (best.c + step).min(hi * (1.0 - 1e-12));
        step = (top - lo) / 20.0;
        for s in 0..=20 {
            let c = lo + step * f64::from(s);
            if beta(c) > best.beta {
                best = BetaMax { c, beta: beta(c) };
            }
        }
    }
    best
}

pub fn beta_max() -> BetaMax {
    beta_max_with(10_000)
}

/// `min_cost · n / total`: the gap certified by a weighted instance whose
/// non-opposite cuts all cost at least `min_cost`.
pub fn prop1_gap(total_weight: &Rational, min_cost: &Rational, n: u32) -> Result<Rational> {
    if !total_weight.is_positive() {
        return Err(invalid("total weight must be positive"));
    }
    Ok(min_cost * int(n as i64) / total_weight)
}

/// Objective of the identity embedding: every edge has L1 length `2/n`.
pub fn lp_identity_value(w: &WeightMap) -> Rational {
    let n = int(w.graph().n() as i64);
    w.iter().fold(Rational::zero(), |acc, (_, x)| acc + x) / n
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub params: GapParams,
    pub n: u32,
    pub term_i: Rational,
    pub term_ii: Rational,
    pub bound: Rational,
    pub in_regime: bool,
    pub total_weight: Rational,
    pub lp_value: Rational,
    pub certified_cuts: Vec<(NamedCut, Rational)>,
    pub gap_estimate: Rational,
}

/// Finite-`n` report on `combine(params, n)`.
pub fn gap_report(params: &GapParams, n: u32) -> Result<GapReport> {
    let t = theorem2_bound(params, Regime::Finite(n))?;
    let g = std::sync::Arc::new(SimplexGraph::new(4, n)?);
    let w = combine_on(&g, params)?;
    let total = w.total_weight();
    let mut certified_cuts = Vec::new();
    for cut in [NamedCut::PExt, NamedCut::PPrime, NamedCut::P3] {
        if let Ok(p) = cut.build_on(&g, Some(&params.c)) {
            certified_cuts.push((cut, p.cost(&w)?));
        }
    }
    Ok(GapReport {
        params: params.clone(),
        n,
        gap_estimate: prop1_gap(&total, &t.bound, n)?,
        lp_value: lp_identity_value(&w),
        total_weight: total,
        term_i: t.term_i,
        term_ii: t.term_ii,
        bound: t.bound,
        in_regime: t.in_regime,
        certified_cuts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{build_amm_j, build_component, Component};
    use crate::rational::to_f64;
    use proptest::prelude::*;

    fn params(l: [f64; 4], c: f64) -> GapParams {
        round_params(l, c, 6).unwrap()
    }

    #[test]
    fn unit_vectors() {
        let p = GapParams::new([int(1), int(0), int(0), int(0)], rat(1, 10)).unwrap();
        let b = theorem2_bound(&p, Regime::Asymptotic).unwrap();
        assert_eq!((b.term_i.clone(), b.term_ii.clone(), b.bound), (rat(6, 5), rat(6, 5), rat(6, 5)));
        let p = GapParams::new([int(0), int(1), int(0), int(0)], rat(1, 10)).unwrap();
        let b = theorem2_bound(&p, Regime::Asymptotic).unwrap();
        assert_eq!((b.term_i, b.term_ii, b.bound), (int(1), int(2), int(1)));
    }

    #[test]
    fn reference_params() {
        let p = GapParams::reference();
        let b = theorem2_bound(&p, Regime::Asymptotic).unwrap();
        assert!((to_f64(&b.bound) - 1.20016).abs() < 1e-5);
        let f = theorem2_bound(&p, Regime::Finite(3)).unwrap();
        assert!(!f.in_regime);
        assert!(f.bound < b.bound);
        let lim = limitation_min(&p, Regime::Asymptotic).unwrap().value;
        assert!(lim >= b.bound);
        assert!(to_f64(&lim) <= 1.20067);
    }

    #[test]
    fn optimizer_matches_reference() {
        let r = optimize_params(&OptimizeConfig::default()).unwrap();
        let reference = GapParams::reference();
        assert!((to_f64(&r.bound) - 1.20016).abs() < 1e-5, "{}", to_f64(&r.bound));
        assert!((to_f64(&r.params.c) - 0.074125).abs() < 1e-3);
        for i in 0..4 {
            assert!((to_f64(&r.params.lambda[i]) - to_f64(&reference.lambda[i])).abs() < 1e-3);
        }
        assert_eq!(r, optimize_params(&OptimizeConfig::default()).unwrap());
    }

    #[test]
    fn stationarity_relations_hold_at_optimum() {
        let r = optimize_params(&OptimizeConfig::default()).unwrap();
        let [l1, l2, l3, l4] = r.raw_lambda;
        let c = r.raw_c;
        assert!((l4 - 0.4 * l1 / 3.0).abs() < 1e-6);
        assert!((l3 - 0.9 * c * c * c * l1).abs() < 1e-6);
        assert!((l2 - (0.2 - 0.6 * c * c) * l1).abs() < 1e-6);
        assert!((r.raw_bound - reduced_objective(c)).abs() < 1e-9);
    }

    #[test]
    fn lp_agrees_with_simplex_grid() {
        let c = 0.074125;
        let (lp, _) = best_lambda_at(c, false);
        let rows = bound_pieces(c);
        let steps = 60;
        let mut grid_best = f64::NEG_INFINITY;
        for a in 0..=steps {
            for b in 0..=steps - a {
                for d in 0..=steps - a - b {
                    let l = [a as f64, b as f64, d as f64, (steps - a - b - d) as f64].map(|x| x / steps as f64);
                    let v = rows.iter().map(|r| r.iter().zip(&l).map(|(x, y)| x * y).sum::<f64>()).fold(f64::INFINITY, f64::min);
                    grid_best = grid_best.max(v);
                }
            }
        }
        assert!(grid_best <= lp + 1e-12);
        assert!(lp - grid_best < 5e-3);
    }

    #[test]
    fn lambda3_zero_caps_at_six_fifths() {
        let r = optimize_params(&OptimizeConfig::lambda3_zero()).unwrap();
        assert!(r.raw_bound <= 1.2 + 1e-9);
        assert!(to_f64(&r.bound) <= 1.2 + 1e-9);
    }

    #[test]
    fn one_point_candidates_are_fixed() {
        let p = GapParams::reference();
        let cfg = OptimizeConfig { mode: OptimizeMode::Candidates(vec![p.clone()]), decimals: 6 };
        assert_eq!(optimize_params(&cfg).unwrap().params, p);
    }

    #[test]
    fn beta_values() {
        assert!((beta(0.0) - 1.2).abs() < 1e-15);
        let b = beta_max();
        assert!(b.beta >= 1.2 && b.beta <= 1.20067);
        assert!((b.beta - 1.20067).abs() < 1e-5);
        let mut prev = beta_max_with(50).beta;
        for s in [100, 200, 400, 800] {
            let next = beta_max_with(s).beta;
            assert!(next >= prev - 1e-9);
            prev = next;
        }
        assert!((limitation_max_at(b.c, false) - b.beta).abs() < 1e-9);
    }

    #[test]
    fn limitation_caps() {
        for c in [0.12, 0.2, 0.4] {
            assert!(limitation_max_at(c, false) <= 1.2 + 1e-9);
        }
        for c in [0.01, 0.05, 0.074279, 0.1] {
            assert!(limitation_max_at(c, false) <= 1.20067 + 1e-9);
            assert!(limitation_max_at(c, true) <= 1.2 + 1e-9);
        }
    }

    #[test]
    fn finite_limitation_matches_corrections() {
        let p = GapParams::reference();
        for (n, c) in [(39u32, rat(3, 39)), (81, rat(6, 81))] {
            let q = p.with_c(c);
            let lim = limitation_min(&q, Regime::Finite(n)).unwrap();
            assert_eq!(lim.rows.len(), 3);
            for row in &lim.rows {
                assert!(row.consistent(), "n = {n}, {}: {:?}", row.cut, row);
            }
        }
    }

    #[test]
    fn gap_accounting() {
        assert_eq!(prop1_gap(&int(7), &rat(6, 5), 7).unwrap(), rat(6, 5));
        assert!(prop1_gap(&int(0), &int(1), 3).is_err());
        let i4 = build_component(Component::I4, 10, None).unwrap();
        assert_eq!(lp_identity_value(&i4), rat(66, 50));
        assert_eq!(lp_identity_value(&build_amm_j(9).unwrap()), int(1));
        let r = gap_report(&GapParams::reference().with_c(rat(3, 39)), 39).unwrap();
        assert!(r.in_regime);
        assert_eq!(r.gap_estimate, &r.bound * int(39) / &r.total_weight);
        assert_eq!(r.certified_cuts.len(), 3);
    }

    proptest! {
        #[test]
        fn inner_minimum_matches_grid(a in 0u32..1000, b in 0u32..1000, d in 0u32..1000, e in 1u32..1000, c in 1u32..499) {
            let s = a + b + d + e;
            let l = [rat(a as i64, s as i64), rat(b as i64, s as i64), rat(d as i64, s as i64), rat(e as i64, s as i64)];
            let p = GapParams::new(l, rat(c as i64, 1000)).unwrap();
            let (gi, gii) = inner_grid(&p, 201);
            prop_assert_eq!(gi, inner_i(&p));
            prop_assert_eq!(gii, inner_ii(&p));
        }

        #[test]
        fn lower_bound_below_limitation(a in 0.0f64..1.0, b in 0.0f64..1.0, d in 0.0f64..0.01, e in 0.0f64..1.0, c in 0.001f64..0.499) {
            let s = a + b + d + e + 1e-9;
            let p = params([a / s, b / s, d / s, e / s], c);
            let t = theorem2_bound(&p, Regime::Asymptotic).unwrap().bound;
            let l = limitation_min(&p, Regime::Asymptotic).unwrap().value;
            prop_assert!(to_f64(&t) <= to_f64(&l) + 1e-12);
        }
    }
}
