use qlogcert::hyper::{contiguous_residual_1f1, kummer_identity_relations};
use qlogcert::verifier::{check_gosper_antidifference, check_kummer_identity};

use crate::grid::rational;
use crate::{CliError, IdentityArgs, IdentityKind};

pub fn run(args: &IdentityArgs) -> Result<u8, CliError> {
    let a = rational(&args.a)?;
    let mu = rational(&args.mu)?;
    let holds = match args.kind {
        IdentityKind::Kummer => {
            let c = rational(args.c.as_deref().ok_or_else(|| missing("--c"))?)?;
            let residual = check_kummer_identity(&a, &c, &mu, args.order)?;
            let zero = residual.is_zero();
            println!("kummer a={a} c={c} mu={mu}: residual {} through order {}", if zero { "zero" } else { "NONZERO" }, args.order);
            zero
        }
        IdentityKind::Gosper => {
            let b = rational(args.b.as_deref().ok_or_else(|| missing("--b"))?)?;
            let ok = check_gosper_antidifference(&a, &b, &mu, args.m)?;
            println!("gosper a={a} b={b} mu={mu} m={}: {}", args.m, if ok { "telescopes" } else { "FAILS" });
            ok
        }
        IdentityKind::Contiguous => {
            let c = rational(args.c.as_deref().ok_or_else(|| missing("--c"))?)?;
            let x = rational(args.x.as_deref().ok_or_else(|| missing("--x"))?)?;
            let mut all = true;
            let first = contiguous_residual_1f1(&a, &c, &x, args.precision)?;
            let rest = kummer_identity_relations(&a, &c, &mu, &x, args.precision)?;
            for (i, r) in std::iter::once(&first).chain(rest.iter()).enumerate() {
                let ok = r.vanishes();
                all &= ok;
                println!(
                    "relation {}: |residual| {} bound {} {}",
                    i + 1,
                    format!("{:.6e}", r.value),
                    format!("{:.6e}", r.error_bound),
                    if ok { "ok" } else { "EXCEEDS" }
                );
            }
            all
        }
    };
    Ok(if holds { 0 } else { 2 })
}

fn missing(flag: &str) -> CliError {
    CliError::Config(format!("{flag} is required"))
}
