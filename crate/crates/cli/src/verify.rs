use std::io::Write;

use qlogcert::families::{CoefficientSequence, Family, FamilySpec};
use qlogcert::verifier::{explore_conjecture, verify_theorem_with_precision, CertificationReport, TheoremId};

use crate::grid::{parse_grid, product, rational};
use crate::{open_output, timestamp, CliError, Format, VerifyArgs};

pub fn run(args: &VerifyArgs) -> Result<u8, CliError> {
    let (id, conjecture) = match (&args.theorem, &args.conjecture) {
        (Some(t), None) => (t.parse::<TheoremId>()?, false),
        (None, Some(c)) => (c.parse::<TheoremId>()?, true),
        _ => return Err(CliError::Config("give exactly one of --theorem and --conjecture".into())),
    };
    if id.is_conjecture() != conjecture {
        let hint = if conjecture { "--theorem" } else { "--conjecture" };
        return Err(CliError::Config(format!("{id} belongs under {hint}")));
    }
    let family = match &args.family {
        Some(f) => f.parse::<Family>()?,
        None => id.family(),
    };
    let sequence: CoefficientSequence = args.sequence.parse()?;
    let spec = FamilySpec::new(family, rational(&args.a)?, rational(&args.c)?, sequence)?;
    let grid = product(&parse_grid(&args.mu)?, &parse_grid(&args.nu)?);
    let report = if conjecture {
        explore_conjecture(id, &spec, &grid, args.order, args.precision)?
    } else {
        verify_theorem_with_precision(id, &spec, &grid, args.order, args.precision)?
    };
    write_report(&report, args)?;
    Ok(exit_code(&report))
}

fn write_report(report: &CertificationReport, args: &VerifyArgs) -> Result<(), CliError> {
    let mut out = open_output(args.output.as_deref())?;
    match args.format {
        Format::Json => {
            let stamp = (!args.no_timestamp).then(timestamp);
            let text = report.to_json(stamp.as_deref())?;
            writeln!(out, "{text}").map_err(CliError::io)?;
        }
        Format::Csv => report.write_csv(&mut out)?,
    }
    out.flush().map_err(CliError::io)
}

/// 0 when every point is certified, 2 on any violation, 3 otherwise.
pub fn exit_code(report: &CertificationReport) -> u8 {
    if report.any_violation() {
        2
    } else if report.all_certified() {
        0
    } else {
        3
    }
}
