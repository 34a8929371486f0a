//! Regeneration of the growth-constant grid and the Jacobian tables.
//!
//! Output is deterministic: no timings, fixed ordering, fixed formatting.

use std::fmt::Write as _;

use ijac_core::asymptotics::mahler_constant;
use ijac_core::jacobian::jacobian_via_companion;
use ijac_core::{normalize, Error, MpFloat, Real, DEFAULT_PRECISION_BITS};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Constants,
    Jac23,
    Jac34,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Largest step in the constants grid.
pub const GRID_MAX: i64 = 9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantRow {
    pub k: i64,
    pub l: i64,
    /// Rounded to four decimals.
    pub a: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JacobianRow {
    pub n: u64,
    pub torsion: Vec<String>,
    pub tau: String,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn constant_rows() -> Result<Vec<ConstantRow>, Error> {
    let pairs: Vec<(i64, i64)> = (1..=GRID_MAX)
        .flat_map(|k| (k..=GRID_MAX).map(move |l| (k, l)))
        .filter(|&(k, l)| gcd(k, l) == 1)
        .collect();
    pairs
        .into_par_iter()
        .map(|(k, l)| {
            let a = mahler_constant::<MpFloat>(k, l, DEFAULT_PRECISION_BITS)?;
            Ok(ConstantRow {
                k,
                l,
                a: a.value.to_decimal_string(4),
            })
        })
        .collect()
}

pub fn jacobian_rows(k: i64, l: i64, first: u64, last: u64) -> Result<Vec<JacobianRow>, Error> {
    (first..=last)
        .into_par_iter()
        .map(|n| {
            let p = normalize(n as i64, k, l)?;
            let g = jacobian_via_companion(&p)?;
            let tau: BigInt = g.order();
            Ok(JacobianRow {
                n,
                torsion: g.torsion.iter().map(|d| d.to_string()).collect(),
                tau: tau.to_string(),
            })
        })
        .collect()
}

fn constants_text(rows: &[ConstantRow]) -> String {
    let mut out = String::new();
    let width = 7;
    let _ = write!(out, "{:>3} |", "k\\l");
    for l in 1..=GRID_MAX {
        let _ = write!(out, " {l:>width$}");
    }
    out.push('\n');
    out.push_str(&"-".repeat(5 + (width + 1) * GRID_MAX as usize));
    out.push('\n');
    for k in 1..GRID_MAX {
        let _ = write!(out, "{k:>3} |");
        for l in 1..=GRID_MAX {
            let cell = if l < k {
                String::new()
            } else if gcd(k, l) != 1 {
                "-".to_string()
            } else {
                rows.iter()
                    .find(|r| r.k == k && r.l == l)
                    .map(|r| r.a.clone())
                    .unwrap_or_default()
            };
            let _ = write!(out, " {cell:>width$}");
        }
        let trimmed = out.trim_end_matches(' ').len();
        out.truncate(trimmed);
        out.push('\n');
    }
    out
}

fn jacobian_text(k: i64, l: i64, rows: &[JacobianRow]) -> String {
    let mut out = format!("{:>4}  {:<60}  {}\n", "n", format!("Jac(I(n,{k},{l}))"), "tau");
    for r in rows {
        let group: Vec<String> = r.torsion.iter().map(|d| format!("Z_{d}")).collect();
        let _ = writeln!(out, "{:>4}  {:<60}  {}", r.n, group.join(" + "), r.tau);
    }
    out
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct JacobianCsvRow<'a> {
    n: u64,
    torsion: String,
    tau: &'a str,
}

fn json_lines<T: Serialize>(rows: &[T]) -> String {
    let mut out = String::new();
    for r in rows {
        out.push_str(&serde_json::to_string(r).expect("rows serialize"));
        out.push('\n');
    }
    out
}

/// Rendered table for `which` in `format`.
pub fn render(which: Which, format: Format) -> Result<String, String> {
    match which {
        Which::Constants => {
            let rows = constant_rows().map_err(|e| e.to_string())?;
            match format {
                Format::Text => Ok(constants_text(&rows)),
                Format::Json => Ok(json_lines(&rows)),
                Format::Csv => to_csv(&rows),
            }
        }
        Which::Jac23 | Which::Jac34 => {
            let (k, l, first, last) = if which == Which::Jac23 { (2, 3, 4, 35) } else { (3, 4, 5, 25) };
            let rows = jacobian_rows(k, l, first, last).map_err(|e| e.to_string())?;
            match format {
                Format::Text => Ok(jacobian_text(k, l, &rows)),
                Format::Json => Ok(json_lines(&rows)),
                Format::Csv => {
                    let flat: Vec<JacobianCsvRow> = rows
                        .iter()
                        .map(|r| JacobianCsvRow {
                            n: r.n,
                            torsion: r.torsion.join(" "),
                            tau: &r.tau,
                        })
                        .collect();
                    to_csv(&flat)
                }
            }
        }
    }
}
