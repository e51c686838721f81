//! CSV, JSON and gnuplot writers.

use std::io::{self, Write};

use serde::Serialize;

use crate::analysis::{KinkReport, RegrowthReport, SweepResult};
use crate::discord::CorrelationReport;
use crate::model::ModelParams;

pub const SIGNIFICANT_DIGITS: usize = 12;

pub const REPORT_COLUMNS: [&str; 7] = [
    "mutual_info",
    "classical_corr",
    "discord",
    "concurrence",
    "eof",
    "theta_opt",
    "phi_opt",
];

/// Formats `x` with [`SIGNIFICANT_DIGITS`] significant digits, `%g` style.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exponent) = sci.split_once('e').expect("scientific format");
    let exponent: i32 = exponent.parse().expect("exponent");
    if (-5..SIGNIFICANT_DIGITS as i32).contains(&exponent) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exponent).max(0) as usize;
        trim_fraction(&format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_fraction(mantissa), exponent)
    }
}

fn trim_fraction(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

pub fn report_values(r: &CorrelationReport) -> [f64; 7] {
    [
        r.mutual_info,
        r.classical_corr,
        r.discord,
        r.concurrence,
        r.eof,
        r.optimal_basis.theta,
        r.optimal_basis.phi,
    ]
}

pub fn csv_header(result: &SweepResult) -> String {
    let mut cols = vec![result.axis1.param.name().to_string()];
    if let Some(a2) = &result.axis2 {
        cols.push(a2.param.name().to_string());
    }
    cols.extend(REPORT_COLUMNS.iter().map(|s| s.to_string()));
    cols.join(",")
}

fn params_line(p: &ModelParams) -> String {
    format!(
        "jx={} jy={} jz={} b={} kT={}",
        format_number(p.jx),
        format_number(p.jy),
        format_number(p.jz),
        format_number(p.b),
        format_number(p.kt)
    )
}

/// Writes `#` metadata, the header and one row per grid point.
pub fn write_csv<W: Write>(out: &mut W, result: &SweepResult, base: &ModelParams) -> io::Result<()> {
    writeln!(out, "# {} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION"))?;
    writeln!(out, "# base {}", params_line(base))?;
    for (name, axis) in [("axis1", Some(result.axis1)), ("axis2", result.axis2)] {
        if let Some(a) = axis {
            writeln!(
                out,
                "# {name} {} from {} to {} points {}",
                a.param,
                format_number(a.start),
                format_number(a.stop),
                a.count
            )?;
        }
    }
    writeln!(out, "{}", csv_header(result))?;
    for row in &result.rows {
        let mut fields = vec![format_number(row.axis1)];
        if let Some(v) = row.axis2 {
            fields.push(format_number(v));
        }
        fields.extend(report_values(&row.report).iter().map(|&v| format_number(v)));
        writeln!(out, "{}", fields.join(","))?;
    }
    Ok(())
}

pub fn write_kinks<W: Write>(out: &mut W, quantity: &str, kinks: &[KinkReport]) -> io::Result<()> {
    writeln!(out, "# kinks {quantity}: {}", kinks.len())?;
    for k in kinks {
        writeln!(
            out,
            "# kink {quantity} location={} left_slope={} right_slope={} strength={}",
            format_number(k.location),
            format_number(k.left_slope),
            format_number(k.right_slope),
            format_number(k.strength)
        )?;
    }
    Ok(())
}

pub fn write_regrowth<W: Write>(out: &mut W, quantity: &str, r: Option<&RegrowthReport>) -> io::Result<()> {
    match r {
        Some(r) => writeln!(
            out,
            "# regrowth {quantity}: t_min={} d_min={} rebound={}",
            format_number(r.t_min),
            format_number(r.d_min),
            format_number(r.rebound)
        ),
        None => writeln!(out, "# regrowth {quantity}: none"),
    }
}

pub fn write_qpt<W: Write>(out: &mut W, quantity: &str, axis: &str, r: &crate::Result<f64>) -> io::Result<()> {
    match r {
        Ok(v) => writeln!(out, "# qpt {quantity}: {axis}={}", format_number(*v)),
        Err(e) => writeln!(out, "# qpt {quantity}: not found ({e})"),
    }
}

#[derive(Serialize)]
pub struct PointOutput {
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
    pub b: f64,
    #[serde(rename = "kT")]
    pub kt: f64,
    pub mutual_info: f64,
    pub classical_corr: f64,
    pub discord: f64,
    pub concurrence: f64,
    pub eof: f64,
    pub theta_opt: f64,
    pub phi_opt: f64,
}

impl PointOutput {
    pub fn new(p: &ModelParams, r: &CorrelationReport) -> Self {
        PointOutput {
            jx: p.jx,
            jy: p.jy,
            jz: p.jz,
            b: p.b,
            kt: p.kt,
            mutual_info: r.mutual_info,
            classical_corr: r.classical_corr,
            discord: r.discord,
            concurrence: r.concurrence,
            eof: r.eof,
            theta_opt: r.optimal_basis.theta,
            phi_opt: r.optimal_basis.phi,
        }
    }
}

/// Column index (1-based, gnuplot convention) of a report column.
fn column_index(two_axis: bool, name: &str) -> usize {
    let offset = if two_axis { 2 } else { 1 };
    offset + 1 + REPORT_COLUMNS.iter().position(|c| *c == name).expect("known column")
}

/// Gnuplot script plotting each `quantity` column from the given CSV files.
pub fn gnuplot_script(
    title: &str,
    files: &[(String, String)],
    columns: &[&str],
    axis1: &str,
    axis2: Option<&str>,
) -> String {
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set datafile commentschars '#'\n");
    s.push_str(&format!("set terminal pngcairo size {},480\n", 640 * columns.len().max(1)));
    s.push_str(&format!("set output '{title}.png'\n"));
    s.push_str(&format!("set multiplot layout 1,{} title '{title}'\n", columns.len().max(1)));
    for col in columns {
        match axis2 {
            None => {
                let idx = column_index(false, col);
                s.push_str(&format!("set xlabel '{axis1}'\nset ylabel '{col}'\n"));
                let plots: Vec<String> = files
                    .iter()
                    .map(|(file, label)| format!("'{file}' every ::1 using 1:{idx} with lines title '{label}'"))
                    .collect();
                s.push_str(&format!("plot {}\n", plots.join(", \\\n     ")));
            }
            Some(axis2) => {
                let idx = column_index(true, col);
                s.push_str(&format!(
                    "set xlabel '{axis1}'\nset ylabel '{axis2}'\nset title '{col}'\n"
                ));
                for (file, _) in files {
                    s.push_str(&format!("plot '{file}' every ::1 using 1:2:{idx} with image notitle\n"));
                }
            }
        }
    }
    s.push_str("unset multiplot\n");
    s
}
