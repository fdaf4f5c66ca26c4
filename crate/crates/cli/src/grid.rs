//! Grid literals: `lo..hi` (integers, end excluded), `lo..=hi`,
//! `start:stop:step` (rational, stop included when hit), or comma lists.

use num_traits::{Signed, Zero};
use qlogcert::rational::{parse_rational, Rational};

pub fn parse_grid(text: &str) -> Result<Vec<Rational>, String> {
    let s = text.trim();
    let values = if let Some((lo, hi)) = s.split_once("..") {
        let (hi, inclusive) = match hi.strip_prefix('=') {
            Some(h) => (h, true),
            None => (hi, false),
        };
        let lo: i64 = lo.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
        let hi: i64 = hi.trim().parse().map_err(|_| format!("bad range end in {s:?}"))?;
        let end = if inclusive { hi + 1 } else { hi };
        (lo..end).map(|k| Rational::from_integer(k.into())).collect()
    } else if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, step] = parts.as_slice() else {
            return Err(format!("expected start:stop:step, got {s:?}"));
        };
        let (start, stop, step) = (rational(start)?, rational(stop)?, rational(step)?);
        if !step.is_positive() {
            return Err(format!("step must be positive in {s:?}"));
        }
        let mut out = Vec::new();
        let mut k = Rational::zero();
        loop {
            let v = &start + &k * &step;
            if v > stop {
                break;
            }
            out.push(v);
            k += Rational::from_integer(1.into());
        }
        out
    } else {
        s.split(',').map(rational).collect::<Result<_, _>>()?
    };
    if values.is_empty() {
        return Err(format!("grid {s:?} is empty"));
    }
    Ok(values)
}

pub fn rational(text: &str) -> Result<Rational, String> {
    parse_rational(text.trim()).map_err(|e| e.to_string())
}

pub fn product(mus: &[Rational], nus: &[Rational]) -> Vec<(Rational, Rational)> {
    mus.iter()
        .flat_map(|m| nus.iter().map(move |n| (m.clone(), n.clone())))
        .collect()
}
