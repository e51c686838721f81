//! Named sweep presets reproducing the standard figures.

use serde::Serialize;

use crate::analysis::{Quantity, SweepAxis, SweepParam, SweepSpec};
use crate::model::ModelParams;

pub const PRESET_NAMES: [&str; 8] = [
    "xxz-rise",
    "xxz-classical",
    "xxx-map",
    "sudden-change-delta",
    "sudden-change-jz",
    "ising-map",
    "xy-regrowth-iso",
    "xy-regrowth-aniso",
];

const TEMPERATURE_POINTS: usize = 200;
const COUPLING_POINTS: usize = 161;
const MAP_POINTS: usize = 101;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Curve {
    pub label: String,
    pub spec: SweepSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FigurePreset {
    pub name: &'static str,
    pub description: &'static str,
    pub curves: Vec<Curve>,
}

impl FigurePreset {
    pub fn file_name(&self, curve: &Curve) -> String {
        format!("{}_{}.csv", self.name, curve.label)
    }
}

fn params(jx: f64, jy: f64, jz: f64, b: f64, kt: f64) -> ModelParams {
    ModelParams::new(jx, jy, jz, b, kt).expect("preset parameters are valid")
}

fn kt_axis(stop: f64, count: usize) -> SweepAxis {
    SweepAxis::new(SweepParam::Kt, 0.01, stop, count)
}

fn label(prefix: &str, v: f64) -> String {
    format!("{prefix}{v}")
}

pub fn preset(name: &str) -> Option<FigurePreset> {
    use Quantity::*;
    let (description, curves): (&'static str, Vec<Curve>) = match name {
        "xxz-rise" => (
            "XXZ, Jz = -0.5, B = 0: discord and EoF against kT for several J",
            [0.1, 0.2, 0.3, 0.4]
                .into_iter()
                .map(|j| Curve {
                    label: label("J", j),
                    spec: SweepSpec::new(params(j, j, -0.5, 0.0, 0.01), kt_axis(2.0, TEMPERATURE_POINTS))
                        .with_quantities(vec![Discord, Eof]),
                })
                .collect(),
        ),
        "xxz-classical" => (
            "XXZ, J = 0.4, Jz = -0.5: discord and classical correlation against kT",
            vec![Curve {
                label: "J0.4_Jz-0.5".into(),
                spec: SweepSpec::new(params(0.4, 0.4, -0.5, 0.0, 0.01), kt_axis(2.0, TEMPERATURE_POINTS))
                    .with_quantities(vec![Discord, Classical]),
            }],
        ),
        "xxx-map" => (
            "XXX, B = 0: EoF and discord over (kT, J)",
            vec![Curve {
                label: "map".into(),
                spec: SweepSpec::new(params(0.0, 0.0, 0.0, 0.0, 0.01), kt_axis(2.0, MAP_POINTS))
                    .with_axis2(SweepAxis::new(SweepParam::Jxyz, -2.0, 2.0, MAP_POINTS))
                    .with_quantities(vec![Eof, Discord]),
            }],
        ),
        "sudden-change-delta" => (
            "Sigma = 2, Jz = 1, B = 0: discord and EoF against Delta at several kT",
            [0.01, 0.1, 0.6, 1.0]
                .into_iter()
                .map(|kt| Curve {
                    label: label("kT", kt),
                    spec: SweepSpec::new(
                        params(1.0, 1.0, 1.0, 0.0, kt),
                        SweepAxis::new(SweepParam::Delta, -4.0, 4.0, COUPLING_POINTS),
                    )
                    .with_quantities(vec![Discord, Eof]),
                })
                .collect(),
        ),
        "sudden-change-jz" => (
            "Jx = 4, Jy = -3, B = 0: discord and EoF against Jz at several kT",
            [0.01, 0.1, 0.6, 1.0]
                .into_iter()
                .map(|kt| Curve {
                    label: label("kT", kt),
                    spec: SweepSpec::new(
                        params(4.0, -3.0, 0.0, 0.0, kt),
                        SweepAxis::new(SweepParam::Jz, -2.0, 8.0, COUPLING_POINTS),
                    )
                    .with_quantities(vec![Discord, Eof]),
                })
                .collect(),
        ),
        "ising-map" => (
            "Ising, J = 1: discord over (B, kT)",
            vec![Curve {
                label: "map".into(),
                spec: SweepSpec::new(
                    params(1.0, 0.0, 0.0, 0.0, 0.01),
                    SweepAxis::new(SweepParam::B, 0.0, 3.0, MAP_POINTS),
                )
                .with_axis2(kt_axis(2.0, MAP_POINTS))
                .with_quantities(vec![Discord]),
            }],
        ),
        "xy-regrowth-iso" => ("XX, Jx = Jy = 1: discord and EoF against kT at several B", xy_curves(1.0, 1.0)),
        "xy-regrowth-aniso" => (
            "XY, Jx = 1.3, Jy = 0.7: discord and EoF against kT at several B",
            xy_curves(1.3, 0.7),
        ),
        _ => return None,
    };
    let name = PRESET_NAMES.into_iter().find(|n| *n == name)?;
    Some(FigurePreset {
        name,
        description,
        curves,
    })
}

fn xy_curves(jx: f64, jy: f64) -> Vec<Curve> {
    [1.1, 2.0, 2.5]
        .into_iter()
        .map(|b| Curve {
            label: label("B", b),
            spec: SweepSpec::new(params(jx, jy, 0.0, b, 0.01), kt_axis(3.0, TEMPERATURE_POINTS))
                .with_quantities(vec![Quantity::Discord, Quantity::Eof]),
        })
        .collect()
}

pub fn all_presets() -> Vec<FigurePreset> {
    PRESET_NAMES
        .iter()
        .map(|n| preset(n).expect("listed preset exists"))
        .collect()
}

/// Pretty JSON of every preset, used to pin preset definitions.
pub fn presets_json() -> String {
    serde_json::to_string_pretty(&all_presets()).expect("presets serialize")
}
