use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use argmin::core::{
    CostFunction, Error as ArgminError, Executor, State, TerminationReason, TerminationStatus,
};
use argmin::solver::neldermead::NelderMead;
use rayon::prelude::*;
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::Error;

/// Samples smaller than this are not fitted.
pub const MIN_SAMPLE: usize = 8;

const SHAPE_EPS: f64 = 1e-9;
// Below this shape the gen-Pareto and GEV likelihoods are unbounded at the
// upper end point.
const MIN_SHAPE: f64 = -1.0;
const LN_TOL: f64 = 1e-8;
const MAX_ITERS: u64 = 5000;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Distribution {
    #[serde(rename = "gen-pareto")]
    GenPareto,
    #[serde(rename = "gev")]
    Gev,
    #[serde(rename = "gamma")]
    Gamma,
    #[serde(rename = "exponential")]
    Exponential,
    #[serde(rename = "lognormal")]
    Lognormal,
    #[serde(rename = "normal")]
    Normal,
}

impl Distribution {
    pub const ALL: [Distribution; 6] = [
        Distribution::GenPareto,
        Distribution::Gev,
        Distribution::Gamma,
        Distribution::Exponential,
        Distribution::Lognormal,
        Distribution::Normal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Distribution::GenPareto => "gen-pareto",
            Distribution::Gev => "gev",
            Distribution::Gamma => "gamma",
            Distribution::Exponential => "exponential",
            Distribution::Lognormal => "lognormal",
            Distribution::Normal => "normal",
        }
    }

    /// Names of the estimated parameters, in `FitResult::params` order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Distribution::GenPareto | Distribution::Gev => &["k", "sigma"],
            Distribution::Gamma => &["a", "b"],
            Distribution::Exponential => &["mean"],
            Distribution::Lognormal | Distribution::Normal => &["mu", "sigma"],
        }
    }

    pub fn param_count(self) -> usize {
        self.param_names().len()
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Distribution::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown distribution {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum FitStatus {
    Ok,
    /// Fewer than `MIN_SAMPLE` values.
    Insufficient,
    Failed(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub distribution: Distribution,
    pub params: Vec<f64>,
    /// Fixed location (threshold) for gen-Pareto and GEV.
    pub location: Option<f64>,
    /// Added to every value before fitting, for positive-support families.
    pub shift: f64,
    pub n: usize,
    pub ln_likelihood: f64,
    pub aic: f64,
    pub bic: f64,
    pub status: FitStatus,
    /// 1-based AIC rank, set by model selection.
    pub rank: Option<usize>,
}

impl FitResult {
    fn new(distribution: Distribution, n: usize, status: FitStatus) -> Self {
        Self {
            distribution,
            params: Vec::new(),
            location: None,
            shift: 0.0,
            n,
            ln_likelihood: f64::NAN,
            aic: f64::NAN,
            bic: f64::NAN,
            status,
            rank: None,
        }
    }

    fn succeed(mut self, params: Vec<f64>, ln_likelihood: f64) -> Self {
        let k = self.distribution.param_count() as f64;
        self.params = params;
        self.ln_likelihood = ln_likelihood;
        self.aic = 2.0 * k - 2.0 * ln_likelihood;
        self.bic = k * (self.n as f64).ln() - 2.0 * ln_likelihood;
        self.status = FitStatus::Ok;
        self
    }

    fn fail(mut self, reason: impl Into<String>) -> Self {
        self.status = FitStatus::Failed(reason.into());
        self
    }

    pub fn is_ok(&self) -> bool {
        self.status == FitStatus::Ok
    }

    pub fn param_count(&self) -> usize {
        self.distribution.param_count()
    }
}

/// Maximum-likelihood fit of one family.
pub fn fit_mle(sample: &[f64], distribution: Distribution) -> FitResult {
    let n = sample.len();
    let result = FitResult::new(distribution, n, FitStatus::Insufficient);
    if n < MIN_SAMPLE {
        return result;
    }
    if sample.iter().any(|x| !x.is_finite()) {
        return result.fail("non-finite value in sample");
    }
    match distribution {
        Distribution::Exponential => fit_exponential(sample, result),
        Distribution::Normal => fit_normal(sample, result),
        Distribution::Lognormal => fit_lognormal(sample, result),
        Distribution::Gamma => fit_gamma(sample, result),
        Distribution::GenPareto => fit_gen_pareto(sample, result),
        Distribution::Gev => fit_gev(sample, result),
    }
}

/// Fits every family in `families` in parallel, preserving order.
pub fn fit_all(sample: &[f64], families: &[Distribution]) -> Vec<FitResult> {
    families.par_iter().map(|&d| fit_mle(sample, d)).collect()
}

fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var)
}

fn min(xs: &[f64]) -> f64 {
    xs.iter().copied().fold(f64::INFINITY, f64::min)
}

fn fit_exponential(xs: &[f64], r: FitResult) -> FitResult {
    if min(xs) < 0.0 {
        return r.fail("negative value outside support");
    }
    let (mean, _) = mean_var(xs);
    if mean <= 0.0 {
        return r.fail("degenerate sample (all zero)");
    }
    let n = xs.len() as f64;
    r.succeed(vec![mean], -n * mean.ln() - n)
}

fn fit_normal(xs: &[f64], r: FitResult) -> FitResult {
    let (mean, var) = mean_var(xs);
    if var <= 0.0 {
        return r.fail("degenerate sample (zero variance)");
    }
    let n = xs.len() as f64;
    let sd = var.sqrt();
    r.succeed(vec![mean, sd], -n * (HALF_LN_2PI + sd.ln() + 0.5))
}

/// Shift applied to positive-support families: +0.5 when the sample has zeros.
fn positive_shift(xs: &[f64]) -> Option<f64> {
    let m = min(xs);
    if m < 0.0 {
        None
    } else if m == 0.0 {
        Some(0.5)
    } else {
        Some(0.0)
    }
}

fn fit_lognormal(xs: &[f64], mut r: FitResult) -> FitResult {
    let Some(shift) = positive_shift(xs) else {
        return r.fail("negative value outside support");
    };
    r.shift = shift;
    let logs: Vec<f64> = xs.iter().map(|x| (x + shift).ln()).collect();
    let (mu, var) = mean_var(&logs);
    if var <= 0.0 {
        return r.fail("degenerate sample (zero variance)");
    }
    let n = xs.len() as f64;
    let sd = var.sqrt();
    let sum_log: f64 = logs.iter().sum();
    r.succeed(vec![mu, sd], -sum_log - n * (HALF_LN_2PI + sd.ln() + 0.5))
}

fn gamma_ln_likelihood(ys: &[f64], a: f64, b: f64) -> f64 {
    let n = ys.len() as f64;
    let (sum, sum_log) = ys.iter().fold((0.0, 0.0), |(s, l), &y| (s + y, l + y.ln()));
    (a - 1.0) * sum_log - sum / b - n * (a * b.ln() + ln_gamma(a))
}

fn fit_gamma(xs: &[f64], mut r: FitResult) -> FitResult {
    let Some(shift) = positive_shift(xs) else {
        return r.fail("negative value outside support");
    };
    r.shift = shift;
    let ys: Vec<f64> = xs.iter().map(|x| x + shift).collect();
    let (mean, var) = mean_var(&ys);
    if var <= 0.0 {
        return r.fail("degenerate sample (zero variance)");
    }
    let (a0, b0) = (mean * mean / var, var / mean);
    let nll = |p: &[f64]| -gamma_ln_likelihood(&ys, p[0].exp(), p[1].exp());
    let starts = [
        vec![a0.ln(), b0.ln()],
        vec![(2.0 * a0).ln(), (b0 / 2.0).ln()],
        vec![(a0 / 2.0).ln(), (2.0 * b0).ln()],
    ];
    match minimize(nll, &starts) {
        Some((p, cost)) => r.succeed(vec![p[0].exp(), p[1].exp()], -cost),
        None => r.fail("optimizer did not converge"),
    }
}

fn gen_pareto_ln_likelihood(ys: &[f64], k: f64, sigma: f64) -> f64 {
    let n = ys.len() as f64;
    if k <= MIN_SHAPE {
        return f64::NEG_INFINITY;
    }
    if k.abs() < SHAPE_EPS {
        return -n * sigma.ln() - ys.iter().sum::<f64>() / sigma;
    }
    let mut acc = 0.0;
    for &y in ys {
        let t = 1.0 + k * y / sigma;
        if t <= 0.0 {
            return f64::NEG_INFINITY;
        }
        acc += t.ln();
    }
    -n * sigma.ln() - (1.0 + 1.0 / k) * acc
}

/// Location fixed below the sample minimum by half the lattice spacing:
/// half a unit for integer data such as degrees, zero for continuous data.
fn fixed_location(xs: &[f64]) -> f64 {
    let integral = xs.iter().all(|x| x.fract() == 0.0);
    min(xs) - if integral { 0.5 } else { 0.0 }
}

fn fit_gen_pareto(xs: &[f64], mut r: FitResult) -> FitResult {
    let theta = fixed_location(xs);
    r.location = Some(theta);
    let ys: Vec<f64> = xs.iter().map(|x| x - theta).collect();
    let (mean, var) = mean_var(&ys);
    // Moment estimates, clamped to the region where the moments exist.
    let k0 = (0.5 * (1.0 - mean * mean / var.max(f64::MIN_POSITIVE))).clamp(-0.5, 0.45);
    let s0 = (mean * (1.0 - k0)).max(1e-3);
    let nll = |p: &[f64]| -gen_pareto_ln_likelihood(&ys, p[0], p[1].exp());
    let starts = [
        vec![k0, s0.ln()],
        vec![0.0, mean.ln()],
        vec![k0 + 0.5, (s0 * 0.5).ln()],
    ];
    match minimize(nll, &starts) {
        Some((p, cost)) => r.succeed(vec![p[0], p[1].exp()], -cost),
        None => r.fail("optimizer did not converge"),
    }
}

fn gev_ln_likelihood(xs: &[f64], mu: f64, k: f64, sigma: f64) -> f64 {
    let n = xs.len() as f64;
    if k <= MIN_SHAPE {
        return f64::NEG_INFINITY;
    }
    let mut acc = 0.0;
    if k.abs() < SHAPE_EPS {
        for &x in xs {
            let z = (x - mu) / sigma;
            acc += z + (-z).exp();
        }
    } else {
        for &x in xs {
            let t = 1.0 + k * (x - mu) / sigma;
            if t <= 0.0 {
                return f64::NEG_INFINITY;
            }
            let lt = t.ln();
            acc += (-lt / k).exp() + (1.0 + 1.0 / k) * lt;
        }
    }
    -n * sigma.ln() - acc
}

fn fit_gev(xs: &[f64], mut r: FitResult) -> FitResult {
    let mu = fixed_location(xs);
    r.location = Some(mu);
    let (mean, var) = mean_var(xs);
    if var <= 0.0 {
        return r.fail("degenerate sample (zero variance)");
    }
    // Gumbel moment scale as the starting point.
    let s0 = (6.0 * var).sqrt() / PI;
    let nll = |p: &[f64]| -gev_ln_likelihood(xs, mu, p[0], p[1].exp());
    let starts = [
        vec![0.1, s0.ln()],
        vec![0.5, (mean - mu).max(1e-3).ln()],
        vec![1.0, s0.ln()],
    ];
    match minimize(nll, &starts) {
        Some((p, cost)) => r.succeed(vec![p[0], p[1].exp()], -cost),
        None => r.fail("optimizer did not converge"),
    }
}

struct Objective<F>(F);

impl<F: Fn(&[f64]) -> f64> CostFunction for Objective<F> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, p: &Self::Param) -> Result<f64, ArgminError> {
        let c = (self.0)(p);
        Ok(if c.is_finite() { c } else { f64::INFINITY })
    }
}

/// Nelder-Mead from each start; returns the best converged minimum.
fn minimize<F: Fn(&[f64]) -> f64>(f: F, starts: &[Vec<f64>]) -> Option<(Vec<f64>, f64)> {
    let objective = Objective(f);
    let mut best: Option<(Vec<f64>, f64)> = None;
    for start in starts {
        if !objective.cost(&start.clone()).is_ok_and(f64::is_finite) {
            continue;
        }
        let Some((p, c)) = run_nelder_mead(&objective, start) else {
            continue;
        };
        if best.as_ref().is_none_or(|(_, bc)| c < *bc) {
            best = Some((p, c));
        }
    }
    best.filter(|(_, c)| c.is_finite())
}

fn run_nelder_mead<F: Fn(&[f64]) -> f64>(
    objective: &Objective<F>,
    start: &[f64],
) -> Option<(Vec<f64>, f64)> {
    let mut simplex = vec![start.to_vec()];
    for i in 0..start.len() {
        let mut v = start.to_vec();
        v[i] += 0.25 * v[i].abs().max(1.0);
        simplex.push(v);
    }
    let solver = NelderMead::new(simplex).with_sd_tolerance(LN_TOL).ok()?;
    let res = Executor::new(Objective(&objective.0), solver)
        .configure(|s| s.max_iters(MAX_ITERS))
        .run()
        .ok()?;
    let converged = matches!(
        res.state.get_termination_status(),
        TerminationStatus::Terminated(TerminationReason::SolverConverged)
    );
    if !converged {
        log::debug!(
            "Nelder-Mead stopped without converging: {:?}",
            res.state.get_termination_status()
        );
        return None;
    }
    let cost = res.state.get_best_cost();
    res.state.get_best_param().map(|p| (p.clone(), cost))
}
