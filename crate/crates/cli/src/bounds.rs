
use rayon::prelude::*;
use rug::Float;

use qlogcert::ball::Ball;
use qlogcert::bounds::{
    continued_fraction_eval, gauss_ratio, gauss_ratio_bound, kummer_envelope, logderiv_envelope, ratio_two_sided,
    turan_1f1, turanian_two_sided, BoundTriple, CfSpec, TailMode,
};
use qlogcert::families::{CoefficientSequence, Family};
use qlogcert::rational::Rational;

use crate::grid::{parse_grid, rational};
use crate::{open_output, BoundsArgs, BoundsKind, CliError};

const DIGITS: usize = 25;

struct Row {
    x: Rational,
    lower: Option<Ball>,
    reference: Option<Ball>,
    upper: Option<Ball>,
    flag: String,
}

fn show(b: &Option<Ball>) -> String {
    match b {
        Some(b) => format!("{:.*e}", DIGITS, b.mid()),
        None => String::new(),
    }
}

fn margin(low: &Option<Ball>, high: &Option<Ball>) -> String {
    match (low, high) {
        (Some(l), Some(h)) => format!("{:.*e}", DIGITS, h.sub(l).mid()),
        _ => String::new(),
    }
}

fn from_triple(t: BoundTriple) -> Row {
    let flag = if t.brackets_strictly() { "ok" } else { "violated" };
    Row {
        x: t.x.clone(),
        flag: flag.to_string(),
        lower: t.lower,
        reference: Some(t.reference),
        upper: t.upper,
    }
}

fn failed(x: &Rational, e: impl std::fmt::Display) -> Row {
    Row {
        x: x.clone(),
        lower: None,
        reference: None,
        upper: None,
        flag: format!("error: {e}"),
    }
}

fn nan_or(s: String, failed: bool) -> String {
    if failed {
        "NaN".into()
    } else {
        s
    }
}

pub fn run(args: &BoundsArgs) -> Result<u8, CliError> {
    let xs = parse_grid(&args.x)?;
    let a = rational(&args.a)?;
    let c = rational(&args.c)?;
    let b = args.b.as_deref().map(rational).transpose()?;
    let mu = rational(&args.mu)?;
    let nu: usize = args.nu;
    let family = match &args.family {
        Some(f) => Some(f.parse::<Family>()?),
        None => None,
    };
    let sequence: CoefficientSequence = args.sequence.parse()?;
    let prec = args.precision;
    let need_b = || b.clone().ok_or_else(|| CliError::Config("--b is required for this table".into()));
    let need_family = || family.ok_or_else(|| CliError::Config("--family is required for this table".into()));
    let kind = args.kind;
    let tail = match (args.depth, args.periodic) {
        (Some(d), None) => TailMode::FullEuler { depth: d },
        (None, Some(n)) => TailMode::PeriodicFrom(n),
        (None, None) => TailMode::FullEuler { depth: 60 },
        _ => return Err(CliError::Config("give at most one of --depth and --periodic".into())),
    };
    let b = match kind {
        BoundsKind::Gaussratio | BoundsKind::Cf => Some(need_b()?),
        _ => b,
    };
    let family = match kind {
        BoundsKind::Turanian | BoundsKind::Ratio => Some(need_family()?),
        _ => family,
    };

    let row = |x: &Rational| -> Row {
        let r = match kind {
            BoundsKind::Turan1f1 => turan_1f1(&a, &c, x, prec).map(from_triple),
            BoundsKind::Logderiv => logderiv_envelope(&a, &c, x, prec).map(from_triple),
            BoundsKind::Envelope => kummer_envelope(&a, &c, x, prec).map(|e| from_triple(e.triple())),
            BoundsKind::Gaussratio => {
                let b = b.as_ref().unwrap();
                gauss_ratio_bound(&a, b, &c, x, prec)
                    .and_then(|g| Ok(from_triple(g.triple(x, gauss_ratio(&a, b, &c, x, prec)?))))
            }
            BoundsKind::Cf => {
                let b = b.as_ref().unwrap();
                let spec = CfSpec::euler(a.clone(), b.clone(), c.clone(), x.clone(), tail);
                continued_fraction_eval(&spec, prec).and_then(|approx| {
                    let reference = gauss_ratio(&a, b, &c, x, prec)?;
                    Ok(Row {
                        x: x.clone(),
                        lower: Some(approx.clone()),
                        reference: Some(reference),
                        upper: Some(approx),
                        flag: "approximant".into(),
                    })
                })
            }
            BoundsKind::Turanian => {
                turanian_two_sided(family.unwrap(), &a, &c, nu, x, &sequence, prec).map(from_triple)
            }
            BoundsKind::Ratio => {
                let nu = Rational::from_integer(nu.into());
                ratio_two_sided(family.unwrap(), &a, &c, &mu, &nu, x, &sequence, prec).map(|r| {
                    let flag = if r.brackets() { "ok" } else { "violated" };
                    Row {
                        x: x.clone(),
                        lower: Some(Ball::from_rational(prec, &r.lower)),
                        reference: Some(r.ratio),
                        upper: Some(Ball::from_rational(prec, &r.upper)),
                        flag: flag.into(),
                    }
                })
            }
        };
        r.unwrap_or_else(|e| failed(x, e))
    };
    let rows: Vec<Row> = xs.par_iter().map(row).collect();

    let mut w = csv::Writer::from_writer(open_output(args.output.as_deref())?);
    let header = ["x", "lower", "reference", "upper", "margin_low", "margin_high", "flag"];
    w.write_record(header).map_err(CliError::io)?;
    let mut violated = false;
    for r in &rows {
        let err = r.flag.starts_with("error");
        violated |= r.flag == "violated";
        let x = Float::with_val(prec, qlogcert::rational::to_rug(&r.x));
        w.write_record([
            format!("{:.*e}", DIGITS, x),
            nan_or(show(&r.lower), err),
            nan_or(show(&r.reference), err),
            nan_or(show(&r.upper), err),
            nan_or(margin(&r.lower, &r.reference), err),
            nan_or(margin(&r.reference, &r.upper), err),
            r.flag.clone(),
        ])
        .map_err(CliError::io)?;
    }
    w.flush().map_err(CliError::io)?;
    Ok(if violated { 2 } else { 0 })
}
