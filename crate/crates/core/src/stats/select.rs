use std::fmt;

use serde::Serialize;

use super::fit::{Distribution, FitResult};

/// Relative likelihood below which the AIC leader is accepted outright.
const DELTA_AIC_DECISIVE: f64 = 0.01;

/// Outcome of the selection rules. BIC bands follow Kass and Raftery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// The AIC leader is separated from the runner-up.
    Decisive,
    /// BIC difference above 10.
    VeryStrong,
    /// BIC difference in [6, 10].
    Strong,
    /// BIC difference in [2, 6).
    Positive,
    /// Neither rule separates the top two, or fewer than two fits succeeded.
    Undecided,
}

impl Verdict {
    /// Suffix appended to the winner in tables: none, `*` or `**`.
    pub fn marker(self) -> &'static str {
        match self {
            Verdict::Decisive => "",
            Verdict::VeryStrong | Verdict::Strong => "*",
            Verdict::Positive => "**",
            Verdict::Undecided => "NA",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Verdict::Decisive => "AIC criterion",
            Verdict::VeryStrong => "BIC criterion indicates a very strong differentiation",
            Verdict::Strong => "BIC criterion indicates only a strong differentiation",
            Verdict::Positive => "BIC criterion indicates only a positive differentiation",
            Verdict::Undecided => "not significant",
        }
    }

    fn from_bic_gap(gap: f64) -> Self {
        if gap > 10.0 {
            Verdict::VeryStrong
        } else if gap >= 6.0 {
            Verdict::Strong
        } else if gap >= 2.0 {
            Verdict::Positive
        } else {
            Verdict::Undecided
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelSelection {
    /// Successful fits in ascending AIC order, with ranks set.
    pub ranked: Vec<FitResult>,
    /// `exp((AIC_min - AIC_i) / 2)` for each ranked fit.
    pub delta_aic: Vec<f64>,
    /// BIC of the runner-up minus BIC of the leader, when BIC was consulted.
    pub delta_bic: Option<f64>,
    pub winner: Option<Distribution>,
    pub verdict: Verdict,
}

impl ModelSelection {
    /// Table label such as `gen-pareto`, `gev*` or `NA`.
    pub fn label(&self) -> String {
        match self.winner {
            Some(w) => format!("{}{}", w, self.verdict.marker()),
            None => "NA".to_string(),
        }
    }
}

impl fmt::Display for ModelSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Ranks successful fits by AIC and applies the ΔAIC and BIC rules.
pub fn select_model(fits: &[FitResult]) -> ModelSelection {
    let mut ranked: Vec<FitResult> = fits.iter().filter(|f| f.is_ok()).cloned().collect();
    ranked.sort_by(|a, b| a.aic.total_cmp(&b.aic));
    for (i, f) in ranked.iter_mut().enumerate() {
        f.rank = Some(i + 1);
    }
    let aic_min = ranked.first().map_or(f64::NAN, |f| f.aic);
    let delta_aic: Vec<f64> = ranked
        .iter()
        .map(|f| ((aic_min - f.aic) / 2.0).exp())
        .collect();

    let mut selection = ModelSelection {
        ranked,
        delta_aic,
        delta_bic: None,
        winner: None,
        verdict: Verdict::Undecided,
    };
    if selection.ranked.len() < 2 {
        return selection;
    }
    if selection.delta_aic[1] < DELTA_AIC_DECISIVE {
        selection.winner = Some(selection.ranked[0].distribution);
        selection.verdict = Verdict::Decisive;
        return selection;
    }
    let (a, b) = (&selection.ranked[0], &selection.ranked[1]);
    let gap = b.bic - a.bic;
    selection.delta_bic = Some(gap);
    let verdict = Verdict::from_bic_gap(gap.abs());
    if verdict != Verdict::Undecided {
        selection.winner = Some(if gap >= 0.0 {
            a.distribution
        } else {
            b.distribution
        });
    }
    selection.verdict = verdict;
    selection
}
