//! Parameter sweeps over the model and detectors for features of the
//! resulting curves: derivative kinks, temperature regrowth and the isolated
//! zero of discord at the isotropic critical point.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::discord::{discord_with_concurrence, CorrelationReport, OptimizerConfig};
use crate::entanglement::concurrence_x;
use crate::error::{Error, Result};
use crate::model::{thermal_state_closed_form, to_density_matrix, ModelParams};

pub const KINK_FACTOR: f64 = 10.0;
pub const REGROWTH_MIN_POINTS: usize = 20;
/// Discord at the valley floor must exceed this to count as regrowth rather than revival.
pub const REGROWTH_FLOOR: f64 = 1e-4;
pub const REGROWTH_REBOUND: f64 = 1e-3;
pub const REGROWTH_DESCENT: f64 = 1e-6;
pub const QPT_ZERO: f64 = 1e-9;
pub const QPT_NEIGHBOR: f64 = 1e-4;

/// Model parameter driven by a sweep axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SweepParam {
    #[serde(rename = "jx")]
    Jx,
    #[serde(rename = "jy")]
    Jy,
    #[serde(rename = "jz")]
    Jz,
    /// `Jx = Jy = value`.
    #[serde(rename = "j")]
    J,
    /// `Jx = Jy = Jz = value`.
    #[serde(rename = "jxyz")]
    Jxyz,
    /// `Jx = (Σ + value)/2`, `Jy = (Σ - value)/2` with `Σ` from the base point.
    #[serde(rename = "delta")]
    Delta,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "kT")]
    Kt,
}

impl SweepParam {
    pub const ALL: [SweepParam; 8] = [
        SweepParam::Jx,
        SweepParam::Jy,
        SweepParam::Jz,
        SweepParam::J,
        SweepParam::Jxyz,
        SweepParam::Delta,
        SweepParam::B,
        SweepParam::Kt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Jx => "jx",
            SweepParam::Jy => "jy",
            SweepParam::Jz => "jz",
            SweepParam::J => "j",
            SweepParam::Jxyz => "jxyz",
            SweepParam::Delta => "delta",
            SweepParam::B => "b",
            SweepParam::Kt => "kT",
        }
    }

    pub fn apply(self, p: &mut ModelParams, value: f64) {
        match self {
            SweepParam::Jx => p.jx = value,
            SweepParam::Jy => p.jy = value,
            SweepParam::Jz => p.jz = value,
            SweepParam::J => {
                p.jx = value;
                p.jy = value;
            }
            SweepParam::Jxyz => {
                p.jx = value;
                p.jy = value;
                p.jz = value;
            }
            SweepParam::Delta => {
                let sigma = p.jx + p.jy;
                p.jx = 0.5 * (sigma + value);
                p.jy = 0.5 * (sigma - value);
            }
            SweepParam::B => p.b = value,
            SweepParam::Kt => p.kt = value,
        }
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("kt") {
            return Ok(SweepParam::Kt);
        }
        SweepParam::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = SweepParam::ALL.iter().map(|p| p.name()).collect();
                Error::InvalidSweep(format!("unknown parameter `{s}` (expected one of {})", names.join(", ")))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepAxis {
    pub param: SweepParam,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl SweepAxis {
    pub fn new(param: SweepParam, start: f64, stop: f64, count: usize) -> Self {
        SweepAxis {
            param,
            start,
            stop,
            count,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::InvalidSweep(format!("{}: count {} < 2", self.param, self.count)));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) || self.start >= self.stop {
            return Err(Error::InvalidSweep(format!(
                "{}: need finite start < stop, got [{}, {}]",
                self.param, self.start, self.stop
            )));
        }
        Ok(())
    }

    /// Grid point `i`, interpolated symmetrically so that a midpoint of a
    /// symmetric range is exactly zero.
    pub fn value(&self, i: usize) -> f64 {
        let t = i as f64 / (self.count - 1) as f64;
        if i == self.count - 1 {
            self.stop
        } else {
            self.start * (1.0 - t) + self.stop * t
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.value(i)).collect()
    }

    pub fn step(&self) -> f64 {
        (self.stop - self.start) / (self.count - 1) as f64
    }
}

/// Scalar columns of a [`CorrelationReport`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Discord,
    Classical,
    Mutual,
    Concurrence,
    Eof,
}

impl Quantity {
    pub const ALL: [Quantity; 5] = [
        Quantity::Discord,
        Quantity::Classical,
        Quantity::Mutual,
        Quantity::Concurrence,
        Quantity::Eof,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Discord => "discord",
            Quantity::Classical => "classical",
            Quantity::Mutual => "mutual",
            Quantity::Concurrence => "concurrence",
            Quantity::Eof => "eof",
        }
    }

    pub fn of(self, r: &CorrelationReport) -> f64 {
        match self {
            Quantity::Discord => r.discord,
            Quantity::Classical => r.classical_corr,
            Quantity::Mutual => r.mutual_info,
            Quantity::Concurrence => r.concurrence,
            Quantity::Eof => r.eof,
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.name() == s)
            .ok_or_else(|| Error::InvalidSweep(format!("unknown quantity `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub base: ModelParams,
    pub axis1: SweepAxis,
    pub axis2: Option<SweepAxis>,
    pub quantities: Vec<Quantity>,
    #[serde(default)]
    pub optimizer: OptimizerConfig,
}

impl SweepSpec {
    pub fn new(base: ModelParams, axis1: SweepAxis) -> Self {
        SweepSpec {
            base,
            axis1,
            axis2: None,
            quantities: vec![Quantity::Discord],
            optimizer: OptimizerConfig::default(),
        }
    }

    pub fn with_axis2(mut self, axis2: SweepAxis) -> Self {
        self.axis2 = Some(axis2);
        self
    }

    pub fn with_quantities(mut self, quantities: Vec<Quantity>) -> Self {
        self.quantities = quantities;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.axis1.validate()?;
        if let Some(axis2) = &self.axis2 {
            axis2.validate()?;
            if axis2.param == self.axis1.param {
                return Err(Error::InvalidSweep(format!("both axes sweep {}", axis2.param)));
            }
        }
        // Base kT may be a placeholder when kT is swept; everything else must be valid.
        let mut probe = self.base;
        if let Some(kt) = self.kt_axis_start() {
            probe.kt = kt;
        }
        probe.validate()
    }

    fn kt_axis_start(&self) -> Option<f64> {
        [Some(self.axis1), self.axis2]
            .into_iter()
            .flatten()
            .find(|a| a.param == SweepParam::Kt)
            .map(|a| a.start)
    }

    /// Grid points in lexicographic order (axis 1 outer).
    pub fn points(&self) -> Vec<(f64, Option<f64>, ModelParams)> {
        let mut out = Vec::new();
        for v1 in self.axis1.values() {
            match &self.axis2 {
                None => {
                    let mut p = self.base;
                    self.axis1.param.apply(&mut p, v1);
                    out.push((v1, None, p));
                }
                Some(axis2) => {
                    for v2 in axis2.values() {
                        let mut p = self.base;
                        self.axis1.param.apply(&mut p, v1);
                        axis2.param.apply(&mut p, v2);
                        out.push((v1, Some(v2), p));
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub axis1: f64,
    pub axis2: Option<f64>,
    pub params: ModelParams,
    pub report: CorrelationReport,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub axis1: SweepAxis,
    pub axis2: Option<SweepAxis>,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn series(&self, quantity: Quantity) -> Vec<f64> {
        self.rows.iter().map(|r| quantity.of(&r.report)).collect()
    }

    pub fn axis_values(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.axis1).collect()
    }

    fn require_single_axis(&self) -> Result<()> {
        if self.axis2.is_some() {
            return Err(Error::InvalidSweep("detector needs a single-axis sweep".into()));
        }
        Ok(())
    }
}

/// Correlation report of the thermal state at `p`.
pub fn evaluate_point(p: &ModelParams, cfg: &OptimizerConfig) -> Result<CorrelationReport> {
    let x = thermal_state_closed_form(p)?;
    let rho = to_density_matrix(&x);
    discord_with_concurrence(&rho, cfg, concurrence_x(&x).concurrence)
}

fn describe(p: &ModelParams) -> String {
    format!("jx={} jy={} jz={} b={} kT={}", p.jx, p.jy, p.jz, p.b, p.kt)
}

/// Evaluates every grid point on the current rayon pool; row order is fixed by the spec.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let rows = spec
        .points()
        .into_par_iter()
        .map(|(axis1, axis2, params)| {
            let report = evaluate_point(&params, &spec.optimizer).map_err(|e| Error::Evaluation {
                point: describe(&params),
                source: Box::new(e),
            })?;
            Ok(SweepRow {
                axis1,
                axis2,
                params,
                report,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        axis1: spec.axis1,
        axis2: spec.axis2,
        rows,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KinkReport {
    pub location: f64,
    pub left_slope: f64,
    pub right_slope: f64,
    pub strength: f64,
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Kinks in a uniformly sampled series, strongest first.
///
/// A point is flagged when the jump between its one-sided slopes exceeds
/// `KINK_FACTOR` times the median jump; runs of adjacent flags collapse onto
/// their strongest member.
pub fn find_kinks(x: &[f64], y: &[f64]) -> Result<Vec<KinkReport>> {
    let n = y.len();
    if n < 5 {
        return Err(Error::TooFewPoints { needed: 5, found: n });
    }
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    let h = (x[n - 1] - x[0]) / (n - 1) as f64;
    let slopes: Vec<f64> = y.windows(2).map(|w| (w[1] - w[0]) / h).collect();
    let jumps: Vec<f64> = slopes.windows(2).map(|s| (s[1] - s[0]).abs()).collect();
    let slope_scale = slopes.iter().fold(0.0f64, |m, s| m.max(s.abs()));
    let threshold = KINK_FACTOR * median(&jumps).max(1e-9 * (1.0 + slope_scale));

    let mut kinks = Vec::new();
    let mut k = 0;
    while k < jumps.len() {
        if jumps[k] <= threshold {
            k += 1;
            continue;
        }
        let mut strongest = k;
        while k < jumps.len() && jumps[k] > threshold {
            if jumps[k] > jumps[strongest] {
                strongest = k;
            }
            k += 1;
        }
        kinks.push(KinkReport {
            location: x[strongest + 1],
            left_slope: slopes[strongest],
            right_slope: slopes[strongest + 1],
            strength: jumps[strongest],
        });
    }
    kinks.sort_by(|a, b| b.strength.total_cmp(&a.strength));
    Ok(kinks)
}

pub fn detect_kinks(series: &SweepResult, quantity: Quantity) -> Result<Vec<KinkReport>> {
    series.require_single_axis()?;
    find_kinks(&series.axis_values(), &series.series(quantity))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegrowthReport {
    pub t_min: f64,
    pub d_min: f64,
    pub rebound: f64,
}

/// Finds a valley in `d(t)` with a strictly positive floor: an interior local
/// minimum reached by decreasing and followed by a rise of more than
/// [`REGROWTH_REBOUND`]. The deepest valley wins.
pub fn find_regrowth(t: &[f64], d: &[f64]) -> Option<RegrowthReport> {
    let n = d.len();
    if n < 3 {
        return None;
    }
    let mut prefix_max = vec![f64::NEG_INFINITY; n];
    let mut suffix_max = vec![f64::NEG_INFINITY; n];
    for i in 1..n {
        prefix_max[i] = prefix_max[i - 1].max(d[i - 1]);
    }
    for i in (0..n - 1).rev() {
        suffix_max[i] = suffix_max[i + 1].max(d[i + 1]);
    }
    let mut best: Option<(f64, RegrowthReport)> = None;
    for i in 1..n - 1 {
        if d[i] > d[i - 1] || d[i] > d[i + 1] || d[i] <= REGROWTH_FLOOR {
            continue;
        }
        let descent = prefix_max[i] - d[i];
        let rebound = suffix_max[i] - d[i];
        if descent <= REGROWTH_DESCENT || rebound <= REGROWTH_REBOUND {
            continue;
        }
        let depth = descent.min(rebound);
        if best.as_ref().is_none_or(|(b, _)| depth > *b) {
            best = Some((
                depth,
                RegrowthReport {
                    t_min: t[i],
                    d_min: d[i],
                    rebound,
                },
            ));
        }
    }
    best.map(|(_, r)| r)
}

pub fn detect_regrowth(series: &SweepResult, quantity: Quantity) -> Result<Option<RegrowthReport>> {
    series.require_single_axis()?;
    if series.axis1.param != SweepParam::Kt {
        return Err(Error::InvalidSweep(format!(
            "regrowth needs a kT sweep, got {}",
            series.axis1.param
        )));
    }
    if series.rows.len() < REGROWTH_MIN_POINTS {
        return Err(Error::TooFewPoints {
            needed: REGROWTH_MIN_POINTS,
            found: series.rows.len(),
        });
    }
    Ok(find_regrowth(&series.axis_values(), &series.series(quantity)))
}

/// The single axis value where the series vanishes while both neighbours do not.
pub fn find_isolated_zero(x: &[f64], y: &[f64]) -> Result<f64> {
    let zeros: Vec<usize> = (0..y.len()).filter(|&i| y[i] < QPT_ZERO).collect();
    match zeros.as_slice() {
        [] => Err(Error::SignatureNotFound("series never vanishes".into())),
        &[i] => {
            if i == 0 || i + 1 == y.len() {
                return Err(Error::SignatureNotFound(format!("zero at sweep boundary {}", x[i])));
            }
            if y[i - 1] > QPT_NEIGHBOR && y[i + 1] > QPT_NEIGHBOR {
                Ok(x[i])
            } else {
                Err(Error::SignatureNotFound(format!(
                    "neighbours of the zero at {} are below {QPT_NEIGHBOR:e}",
                    x[i]
                )))
            }
        }
        many => Err(Error::SignatureNotFound(format!(
            "vanishes at {} points ({} .. {})",
            many.len(),
            x[many[0]],
            x[many[many.len() - 1]]
        ))),
    }
}

pub fn qpt_signature(series: &SweepResult, quantity: Quantity) -> Result<f64> {
    series.require_single_axis()?;
    find_isolated_zero(&series.axis_values(), &series.series(quantity))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xxx_j_sweep(kt: f64, count: usize) -> SweepResult {
        let base = ModelParams::xxx(0.0, 0.0, kt).unwrap();
        run_sweep(&SweepSpec::new(base, SweepAxis::new(SweepParam::Jxyz, -1.0, 1.0, count))).unwrap()
    }

    #[test]
    fn axis_validation() {
        assert!(SweepAxis::new(SweepParam::Kt, 0.1, 1.0, 1).validate().is_err());
        assert!(SweepAxis::new(SweepParam::Kt, 1.0, 0.1, 5).validate().is_err());
        assert!(SweepAxis::new(SweepParam::Kt, 0.1, f64::NAN, 5).validate().is_err());
        assert!(SweepAxis::new(SweepParam::Kt, 0.1, 1.0, 2).validate().is_ok());
    }

    #[test]
    fn symmetric_axis_hits_zero_exactly() {
        let axis = SweepAxis::new(SweepParam::Jxyz, -2.0, 2.0, 161);
        assert_eq!(axis.value(80), 0.0);
        assert_eq!(axis.value(160), 2.0);
        let axis = SweepAxis::new(SweepParam::Delta, -4.0, 4.0, 161);
        assert_eq!(axis.value(80), 0.0);
    }

    #[test]
    fn param_names_round_trip() {
        for p in SweepParam::ALL {
            assert_eq!(p.name().parse::<SweepParam>().unwrap(), p);
        }
        assert_eq!("kt".parse::<SweepParam>().unwrap(), SweepParam::Kt);
        assert!("gamma".parse::<SweepParam>().is_err());
        for q in Quantity::ALL {
            assert_eq!(q.name().parse::<Quantity>().unwrap(), q);
        }
    }

    #[test]
    fn delta_keeps_sigma() {
        let mut p = ModelParams::new(1.5, 0.5, 1.0, 0.0, 1.0).unwrap();
        SweepParam::Delta.apply(&mut p, -1.0);
        assert_eq!((p.jx, p.jy), (0.5, 1.5));
    }

    #[test]
    fn spec_rejects_duplicate_axes_and_bad_base() {
        let base = ModelParams::xxx(1.0, 0.0, 1.0).unwrap();
        let axis = SweepAxis::new(SweepParam::B, 0.0, 1.0, 3);
        assert!(SweepSpec::new(base, axis).with_axis2(axis).validate().is_err());
        let mut hot = base;
        hot.kt = 0.0;
        assert!(SweepSpec::new(hot, axis).validate().is_err());
        assert!(SweepSpec::new(hot, SweepAxis::new(SweepParam::Kt, 0.1, 1.0, 3)).validate().is_ok());
    }

    #[test]
    fn xxz_temperature_sweep_has_no_entanglement() {
        let base = ModelParams::xxz(0.4, -0.5, 0.0, 1.0).unwrap();
        let spec = SweepSpec::new(base, SweepAxis::new(SweepParam::Kt, 0.01, 2.0, 50));
        let result = run_sweep(&spec).unwrap();
        assert_eq!(result.rows.len(), 50);
        assert!(result.series(Quantity::Eof).iter().all(|&e| e == 0.0));
    }

    #[test]
    fn xxx_sweep_vanishes_at_zero_coupling() {
        let result = xxx_j_sweep(0.5, 41);
        let row = &result.rows[20];
        assert_eq!(row.axis1, 0.0);
        assert_eq!(row.report.discord, 0.0);
    }

    #[test]
    fn two_axis_grid_shape() {
        let base = ModelParams::ising(1.0, 0.0, 1.0).unwrap();
        let spec = SweepSpec::new(base, SweepAxis::new(SweepParam::B, 0.0, 3.0, 4))
            .with_axis2(SweepAxis::new(SweepParam::Kt, 0.01, 2.0, 3));
        let result = run_sweep(&spec).unwrap();
        assert_eq!(result.rows.len(), 12);
        assert_eq!((result.rows[0].axis1, result.rows[0].axis2), (0.0, Some(0.01)));
        assert_eq!((result.rows[1].axis1, result.rows[1].axis2), (0.0, Some(1.005)));
        assert_eq!((result.rows[3].axis1, result.rows[3].axis2), (1.0, Some(0.01)));
        assert_eq!(result.rows[11].params.b, 3.0);
        assert!(detect_kinks(&result, Quantity::Discord).is_err());
    }

    #[test]
    fn sweep_is_deterministic() {
        let base = ModelParams::xy(1.3, 0.7, 1.1, 1.0).unwrap();
        let spec = SweepSpec::new(base, SweepAxis::new(SweepParam::Kt, 0.05, 1.0, 12));
        let a = run_sweep(&spec).unwrap();
        let b = run_sweep(&spec).unwrap();
        assert_eq!(a, b);
        let single: Vec<_> = spec
            .points()
            .iter()
            .map(|(_, _, p)| evaluate_point(p, &spec.optimizer).unwrap())
            .collect();
        assert!(a.rows.iter().zip(&single).all(|(r, s)| r.report == *s));
    }

    #[test]
    fn linear_series_has_no_kinks() {
        let x: Vec<f64> = (0..50).map(|i| i as f64 * 0.1).collect();
        let y: Vec<f64> = x.iter().map(|v| 3.0 * v - 1.0).collect();
        assert!(find_kinks(&x, &y).unwrap().is_empty());
        let flat = vec![0.0; 50];
        assert!(find_kinks(&x, &flat).unwrap().is_empty());
    }

    #[test]
    fn abs_value_has_one_kink() {
        let x: Vec<f64> = (0..41).map(|i| -1.0 + i as f64 * 0.05).collect();
        let y: Vec<f64> = x.iter().map(|v| v.abs() + 0.3 * v * v).collect();
        let kinks = find_kinks(&x, &y).unwrap();
        assert_eq!(kinks.len(), 1);
        assert!(kinks[0].location.abs() < 1e-12);
        assert!((kinks[0].left_slope + 1.0).abs() < 0.1 && (kinks[0].right_slope - 1.0).abs() < 0.1);
    }

    #[test]
    fn off_grid_kink_collapses_to_one_report() {
        let x: Vec<f64> = (0..40).map(|i| -1.0 + i as f64 * (2.0 / 39.0)).collect();
        let y: Vec<f64> = x.iter().map(|v| v.abs()).collect();
        let kinks = find_kinks(&x, &y).unwrap();
        assert_eq!(kinks.len(), 1);
        assert!(kinks[0].location.abs() <= 2.0 / 39.0);
    }

    #[test]
    fn kinks_need_five_points() {
        assert!(matches!(
            find_kinks(&[0.0, 1.0, 2.0, 3.0], &[0.0; 4]),
            Err(Error::TooFewPoints { needed: 5, found: 4 })
        ));
    }

    #[test]
    fn regrowth_on_synthetic_valley() {
        let t: Vec<f64> = (0..30).map(|i| 0.1 * i as f64).collect();
        let d: Vec<f64> = t.iter().map(|x| 0.05 + 0.01 * (x - 1.2) * (x - 1.2)).collect();
        let r = find_regrowth(&t, &d).unwrap();
        assert!((r.t_min - 1.2).abs() < 1e-9);
        assert!((r.d_min - 0.05).abs() < 1e-12);
        assert!(r.rebound > REGROWTH_REBOUND);

        // Same valley floored at zero is a revival, not regrowth.
        let revived: Vec<f64> = t.iter().map(|x| (0.01 * (x - 1.2) * (x - 1.2) - 0.005).max(0.0)).collect();
        assert!(find_regrowth(&t, &revived).is_none());

        assert!(find_regrowth(&t, &vec![0.3; 30]).is_none());
    }

    #[test]
    fn regrowth_requires_kt_axis_and_points() {
        let base = ModelParams::xxx(1.0, 0.0, 1.0).unwrap();
        let short = run_sweep(&SweepSpec::new(base, SweepAxis::new(SweepParam::Kt, 0.1, 1.0, 10))).unwrap();
        assert!(matches!(
            detect_regrowth(&short, Quantity::Discord),
            Err(Error::TooFewPoints { .. })
        ));
        let wrong = run_sweep(&SweepSpec::new(base, SweepAxis::new(SweepParam::B, 0.0, 1.0, 20))).unwrap();
        assert!(detect_regrowth(&wrong, Quantity::Discord).is_err());
    }

    #[test]
    fn xxx_antiferromagnet_decays_without_regrowth() {
        let base = ModelParams::xxx(1.0, 0.0, 1.0).unwrap();
        let spec = SweepSpec::new(base, SweepAxis::new(SweepParam::Kt, 0.01, 3.0, 60));
        let result = run_sweep(&spec).unwrap();
        assert!(detect_regrowth(&result, Quantity::Discord).unwrap().is_none());
        let tail: Vec<f64> = result
            .rows
            .iter()
            .filter(|r| r.axis1 > 0.5)
            .map(|r| r.report.discord)
            .collect();
        assert!(tail.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn isolated_zero() {
        let x = [-2.0, -1.0, 0.0, 1.0, 2.0];
        assert_eq!(find_isolated_zero(&x, &[1.0, 0.5, 0.0, 0.5, 1.0]).unwrap(), 0.0);
        assert!(find_isolated_zero(&x, &[1.0, 0.0, 0.0, 0.5, 1.0]).is_err());
        assert!(find_isolated_zero(&x, &[1.0, 1.0, 1.0, 1.0, 1.0]).is_err());
        assert!(find_isolated_zero(&x, &[0.0, 1.0, 1.0, 1.0, 1.0]).is_err());
        assert!(find_isolated_zero(&x, &[1.0, 1e-5, 0.0, 0.5, 1.0]).is_err());
    }

    #[test]
    fn qpt_on_xxx_sweep() {
        let result = xxx_j_sweep(0.5, 21);
        assert_eq!(qpt_signature(&result, Quantity::Discord).unwrap(), 0.0);
        assert!(matches!(
            qpt_signature(&result, Quantity::Eof),
            Err(Error::SignatureNotFound(_))
        ));
    }
}
