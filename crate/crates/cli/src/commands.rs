use std::time::Instant;

use ijac_core::asymptotics::{asymptotic_ratio, mahler_constant, mahler_integral};
use ijac_core::jacobian::{rank_bounds_report, JacobianMethod};
use ijac_core::treecount::{
    check_divisible, check_lower_bound, decompose, observed_multiplier, supported_labeling,
    tau_chebyshev_detailed, tau_kirchhoff, tau_resultant, ChebyshevForm, TreeCount, TreeMethod,
};
use ijac_core::{normalize, Error, GraphParams, MpFloat, Real};
use rayon::prelude::*;
use serde::Serialize;

use crate::record::{Checks, OutputRecord, Params};

/// Inclusive range of `n` values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub start: i64,
    pub end: i64,
}

impl NRange {
    pub fn values(&self) -> Vec<i64> {
        (self.start..=self.end).collect()
    }
}

pub fn parse_range(s: &str) -> Result<NRange, String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| format!("expected an integer or a range a..b, got {s:?}"))
    };
    let r = match s.split_once("..") {
        Some((a, b)) => NRange {
            start: parse(a)?,
            end: parse(b.strip_prefix('=').unwrap_or(b))?,
        },
        None => {
            let v = parse(s)?;
            NRange { start: v, end: v }
        }
    };
    if r.start > r.end {
        return Err(format!("empty range {s:?}"));
    }
    Ok(r)
}

/// Outcome classes, mapped to process exit codes.
#[derive(Debug, Default, Clone, Copy)]
pub struct Status {
    pub inconsistent: bool,
    pub precision: bool,
    pub valid_records: usize,
    pub invalid_records: usize,
}

impl Status {
    pub fn exit_code(&self) -> i32 {
        if self.inconsistent {
            1
        } else if self.precision {
            3
        } else if self.valid_records == 0 && self.invalid_records > 0 {
            2
        } else {
            0
        }
    }

    fn absorb(&mut self, r: &OutputRecord, err: Option<&Error>) {
        match err {
            Some(Error::PrecisionExhausted { .. })
            | Some(Error::ClassificationFailure { .. })
            | Some(Error::ConvergenceFailure { .. })
            | Some(Error::QuadratureFailure(_)) => self.precision = true,
            Some(Error::InvalidParams(_)) | Some(Error::Loop { .. }) | Some(Error::Disconnected { .. }) => {
                self.invalid_records += 1;
                return;
            }
            Some(_) => self.inconsistent = true,
            None => {}
        }
        if !r.consistent() {
            self.inconsistent = true;
        }
        self.valid_records += 1;
    }
}

fn ms(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

fn base_record(n: i64, k: i64, l: i64) -> (OutputRecord, Result<GraphParams, Error>) {
    let mut r = OutputRecord::new(Params { n, k, l });
    let p = normalize(n, k, l);
    if let Ok(p) = &p {
        if p.was_normalized() {
            r.canonical = Some(Params {
                n: p.n() as i64,
                k: p.k() as i64,
                l: p.l() as i64,
            });
        }
    }
    (r, p)
}

fn error_text(e: &Error) -> String {
    match e {
        Error::Disconnected { .. } => format!("DisconnectedError: {e}"),
        Error::PrecisionExhausted { bits, .. } => {
            format!("{e} (e.g. --precision {})", (*bits).max(64) * 2)
        }
        _ => e.to_string(),
    }
}

fn emit(records: &[(OutputRecord, Option<Error>)], json: bool) -> Status {
    let mut status = Status::default();
    for (r, e) in records {
        if json {
            println!("{}", r.to_json());
        } else {
            println!("{}", r.to_text());
        }
        if let (Some(Error::PrecisionExhausted { .. }), Some(msg)) = (e, &r.error) {
            eprintln!("error: {msg}");
        }
        status.absorb(r, e.as_ref());
    }
    status
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JacobianChoice {
    Auto,
    Companion,
    Laplacian,
    Both,
}

fn jacobian_record(n: i64, k: i64, l: i64, choice: JacobianChoice) -> (OutputRecord, Option<Error>) {
    let (mut r, p) = base_record(n, k, l);
    let p = match p {
        Ok(p) => p,
        Err(e) => {
            r.error = Some(error_text(&e));
            return (r, Some(e));
        }
    };
    let methods = match choice {
        JacobianChoice::Auto => vec![JacobianMethod::default_for(p.n())],
        JacobianChoice::Companion => vec![JacobianMethod::Companion],
        JacobianChoice::Laplacian => vec![JacobianMethod::Laplacian],
        JacobianChoice::Both => vec![JacobianMethod::Companion, JacobianMethod::Laplacian],
    };
    let mut groups = Vec::new();
    for m in &methods {
        let t = Instant::now();
        match m.compute(&p) {
            Ok(g) => groups.push(g),
            Err(e) => {
                r.error = Some(error_text(&e));
                return (r, Some(e));
            }
        }
        r.timings_ms.insert(m.name().into(), ms(t));
        r.methods_used.push(m.name().into());
    }
    let g = &groups[0];
    let order = g.order();
    let report = rank_bounds_report(&p, g);
    let tc = TreeCount {
        tau: order.clone(),
        method: TreeMethod::Kirchhoff,
    };
    r.torsion = Some(g.torsion.iter().map(|d| d.to_string()).collect());
    r.free_rank = Some(g.free_rank);
    r.tau = Some(order.to_string());
    r.checks = Some(Checks {
        divisible_by_n: Some(check_divisible(&p, &tc)),
        cube_bound: Some(check_lower_bound(&p, &tc)),
        rank_lower: Some(report.lower_ok),
        rank_upper: Some(report.upper_ok),
        methods_agree: (groups.len() > 1).then(|| groups.windows(2).all(|w| w[0] == w[1])),
        square: None,
    });
    (r, None)
}

pub fn jacobian_records(range: NRange, k: i64, l: i64, choice: JacobianChoice) -> Vec<(OutputRecord, Option<Error>)> {
    range
        .values()
        .into_par_iter()
        .map(|n| jacobian_record(n, k, l, choice))
        .collect()
}

pub fn cmd_jacobian(range: NRange, k: i64, l: i64, choice: JacobianChoice, json: bool) -> Status {
    emit(&jacobian_records(range, k, l, choice), json)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeChoice {
    Auto,
    Kirchhoff,
    Resultant,
    Chebyshev,
    All,
}

fn tree_record(n: i64, k: i64, l: i64, choice: TreeChoice, bits: u32) -> (OutputRecord, Option<Error>) {
    let (mut r, p) = base_record(n, k, l);
    let p = match p {
        Ok(p) => p,
        Err(e) => {
            r.error = Some(error_text(&e));
            return (r, Some(e));
        }
    };
    let methods = match choice {
        TreeChoice::Auto => vec![TreeMethod::default_for(p.n())],
        TreeChoice::Kirchhoff => vec![TreeMethod::Kirchhoff],
        TreeChoice::Resultant => vec![TreeMethod::Resultant],
        TreeChoice::Chebyshev => vec![TreeMethod::Chebyshev],
        TreeChoice::All => vec![TreeMethod::Kirchhoff, TreeMethod::Resultant, TreeMethod::Chebyshev],
    };
    let mut counts = Vec::new();
    for m in &methods {
        let t = Instant::now();
        let res = match m {
            TreeMethod::Kirchhoff => tau_kirchhoff(&p),
            TreeMethod::Resultant => tau_resultant(&p),
            TreeMethod::Chebyshev => {
                tau_chebyshev_detailed::<MpFloat>(&p, bits, ChebyshevForm::FirstKind).map(|ev| {
                    r.chebyshev_distance = Some(ev.distance);
                    ev.count
                })
            }
        };
        match res {
            Ok(c) => counts.push(c),
            Err(e) => {
                r.error = Some(error_text(&e));
                return (r, Some(e));
            }
        }
        r.timings_ms.insert(m.name().into(), ms(t));
        r.methods_used.push(m.name().into());
    }
    let t = &counts[0];
    let mut checks = Checks {
        divisible_by_n: Some(check_divisible(&p, t)),
        cube_bound: Some(check_lower_bound(&p, t)),
        methods_agree: (counts.len() > 1).then(|| counts.iter().all(|c| c.tau == t.tau)),
        ..Checks::default()
    };
    r.tau = Some(t.tau.to_string());
    match decompose(&p, t) {
        Ok(d) => {
            r.a = Some(d.a.to_string());
            r.multiplier = Some(d.multiplier);
            checks.square = Some(true);
        }
        Err(_) => checks.square = Some(false),
    }
    if p.n() % 2 == 0 {
        if let Some(m) = observed_multiplier(p.n(), &t.tau) {
            r.labeling = Some(supported_labeling(&p, m).name().into());
        }
    }
    r.checks = Some(checks);
    (r, None)
}

pub fn cmd_trees(range: NRange, k: i64, l: i64, choice: TreeChoice, bits: u32, json: bool) -> Status {
    let records: Vec<_> = range
        .values()
        .into_par_iter()
        .map(|n| tree_record(n, k, l, choice, bits))
        .collect();
    emit(&records, json)
}

#[derive(Debug, Serialize)]
struct RatioReport {
    n: u64,
    tau: String,
    ratio: String,
    error_bound: f64,
}

#[derive(Debug, Serialize)]
struct AsymptoticReport {
    k: i64,
    l: i64,
    precision_bits: u32,
    root_product: String,
    root_product_error: f64,
    integral: String,
    integral_error: f64,
    agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio: Option<RatioReport>,
}

pub fn cmd_asymptotic(k: i64, l: i64, bits: u32, ratio_at: Option<i64>, json: bool) -> Status {
    let mut status = Status::default();
    let fail = |e: &Error, status: &mut Status| {
        eprintln!("error: {e}");
        match e {
            Error::InvalidParams(_) | Error::Loop { .. } | Error::Disconnected { .. } => {
                status.invalid_records += 1
            }
            Error::ClassificationFailure { .. }
            | Error::ConvergenceFailure { .. }
            | Error::QuadratureFailure(_)
            | Error::PrecisionExhausted { .. } => status.precision = true,
            _ => status.inconsistent = true,
        }
    };
    let a = match mahler_constant::<MpFloat>(k, l, bits) {
        Ok(a) => a,
        Err(e) => {
            fail(&e, &mut status);
            return status;
        }
    };
    let b = match mahler_integral(k, l) {
        Ok(b) => b,
        Err(e) => {
            fail(&e, &mut status);
            return status;
        }
    };
    let agree = (Real::to_f64(&a.value) - b.value).abs() <= a.error_bound + b.error_bound;
    let digits = ((bits as f64 * std::f64::consts::LOG10_2) as usize).saturating_sub(6).clamp(4, 40);
    let mut report = AsymptoticReport {
        k,
        l,
        precision_bits: a.precision_bits,
        root_product: a.value.to_decimal_string(digits),
        root_product_error: a.error_bound,
        integral: format!("{:.14}", b.value),
        integral_error: b.error_bound,
        agree,
        ratio: None,
    };
    if let Some(n) = ratio_at {
        let p = match normalize(n, k, l) {
            Ok(p) => p,
            Err(e) => {
                fail(&e, &mut status);
                return status;
            }
        };
        if (p.k() as i64, p.l() as i64) != (k.min(l), k.max(l)) {
            eprintln!("error: --ratio-at {n} changes the steps to {p}; pick another n");
            status.invalid_records += 1;
            return status;
        }
        let t = match tau_resultant(&p) {
            Ok(t) => t,
            Err(e) => {
                fail(&e, &mut status);
                return status;
            }
        };
        let r = asymptotic_ratio(&p, &t, &a);
        report.ratio = Some(RatioReport {
            n: p.n(),
            tau: t.tau.to_string(),
            ratio: r.value.to_decimal_string(digits.min(30)),
            error_bound: r.error_bound,
        });
    }
    if json {
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    } else {
        println!("A_{{{k},{l}}}");
        println!("  root product  {}  (+/- {:.1e})", report.root_product, report.root_product_error);
        println!("  integral      {}  (+/- {:.1e})", report.integral, report.integral_error);
        println!("  agree         {}", if agree { "yes" } else { "NO" });
        if let Some(r) = &report.ratio {
            println!("  ratio at n={}  {}  (+/- {:.1e})", r.n, r.ratio, r.error_bound);
        }
    }
    if !agree {
        status.inconsistent = true;
    }
    status.valid_records += 1;
    status
}
