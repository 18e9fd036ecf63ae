//! Text formats accepted on the command line: angles, complex numbers, coin and initial-state specs.

use std::f64::consts::PI;
use std::fs;

use num_complex::Complex64;
use qwalk_core::{Coin, SquareMatrix, WaveWindow};

use crate::CliError;

/// A decimal literal or a multiple of pi: `pi`, `-pi/2`, `3pi/4`, `3*pi/4`.
pub fn angle(text: &str) -> Result<f64, CliError> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_lowercase();
    let Some(at) = t.find("pi") else {
        return t.parse().map_err(|_| CliError::invalid(format!("cannot read angle '{text}'")));
    };
    let head = t[..at].trim_end_matches('*');
    let coeff = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().map_err(|_| CliError::invalid(format!("cannot read angle '{text}'")))?,
    };
    let tail = &t[at + 2..];
    let denom = match tail {
        "" => 1.0,
        d if d.starts_with('/') => {
            d[1..].parse::<f64>().map_err(|_| CliError::invalid(format!("cannot read angle '{text}'")))?
        }
        _ => return Err(CliError::invalid(format!("cannot read angle '{text}'"))),
    };
    Ok(coeff * PI / denom)
}

/// `a`, `a+bi`, `a-bi`, `bi`, `i`, `-i` (`j` is accepted for `i`).
pub fn complex(text: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::invalid(format!("cannot read complex number '{text}'"));
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return Ok(Complex64::new(t.parse().map_err(|_| bad())?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (body[..k].parse().map_err(|_| bad())?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => s.parse().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

/// Comma-separated complex numbers.
pub fn complex_list(text: &str) -> Result<Vec<Complex64>, CliError> {
    text.split(',').map(complex).collect()
}

/// `theta:ANGLE`, `hadamard`, `a0:ETA,XI`, `b0:ETA,XI`, `grover:N`,
/// `explicit:ROW;ROW;...` (rows of comma-separated complex entries) or `file:PATH` (JSON).
pub fn coin(text: &str) -> Result<Coin, CliError> {
    let (kind, rest) = text.split_once(':').unwrap_or((text, ""));
    let pair = |s: &str| -> Result<(f64, f64), CliError> {
        let (a, b) = s.split_once(',').ok_or_else(|| CliError::invalid(format!("expected ETA,XI in '{text}'")))?;
        Ok((angle(a)?, angle(b)?))
    };
    match kind {
        "hadamard" => Ok(Coin::from_theta(PI / 4.0)),
        "theta" => Ok(Coin::from_theta(angle(rest)?)),
        "a0" => pair(rest).map(|(eta, xi)| Coin::a_zero(eta, xi)),
        "b0" => pair(rest).map(|(eta, xi)| Coin::b_zero(eta, xi)),
        "grover" => {
            let n = rest.parse().map_err(|_| CliError::invalid(format!("cannot read Grover size in '{text}'")))?;
            Ok(Coin::grover(n)?)
        }
        "explicit" => {
            let rows = rest.split(';').map(complex_list).collect::<Result<Vec<_>, _>>()?;
            Ok(Coin::explicit(SquareMatrix::from_rows(rows)?)?)
        }
        "file" => {
            let body = fs::read_to_string(rest).map_err(|e| CliError::invalid(format!("{rest}: {e}")))?;
            serde_json::from_str(&body).map_err(|e| CliError::invalid(format!("{rest}: {e}")))
        }
        _ => Err(CliError::invalid(format!("unknown coin spec '{text}'"))),
    }
}

/// `origin:C1,C2[,...]` (a delta state at 0) or `file:PATH` (JSON state).
pub fn initial_state(text: &str) -> Result<WaveWindow, CliError> {
    match text.split_once(':') {
        Some(("origin", rest)) => Ok(WaveWindow::delta(&complex_list(rest)?)?),
        Some(("file", path)) => {
            let body = fs::read_to_string(path).map_err(|e| CliError::invalid(format!("{path}: {e}")))?;
            Ok(WaveWindow::from_json(&body)?)
        }
        _ => Err(CliError::invalid(format!("unknown initial state '{text}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles() {
        assert_eq!(angle("pi/4").unwrap(), PI / 4.0);
        assert_eq!(angle("-pi").unwrap(), -PI);
        assert_eq!(angle("3pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(angle("3*pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(angle("0.5").unwrap(), 0.5);
        assert!(angle("pi/x").is_err());
        assert!(angle("half").is_err());
    }

    #[test]
    fn complexes() {
        let c = Complex64::new;
        assert_eq!(complex("1").unwrap(), c(1.0, 0.0));
        assert_eq!(complex("-2.5").unwrap(), c(-2.5, 0.0));
        assert_eq!(complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(complex("0.5-0.25i").unwrap(), c(0.5, -0.25));
        assert_eq!(complex("1e-3+2e-3j").unwrap(), c(1e-3, 2e-3));
        assert_eq!(complex("-1e+2-i").unwrap(), c(-100.0, -1.0));
        assert_eq!(complex("3i").unwrap(), c(0.0, 3.0));
        assert!(complex("").is_err());
        assert!(complex("1+").is_err());
        assert!(complex("x").is_err());
    }

    #[test]
    fn coins_and_states() {
        assert_eq!(coin("grover:3").unwrap().size(), 3);
        assert!(coin("grover:1").is_err());
        assert!(coin("theta:pi/4").unwrap().is_unitary(1e-15));
        assert!(coin("explicit:0,1;1,0").is_ok());
        assert!(coin("explicit:1,1;1,0").is_err());
        assert!(coin("bogus").is_err());
        let psi = initial_state("origin:1,0,i").unwrap();
        assert_eq!(psi.chirality_dim(), 3);
        assert!(initial_state("somewhere:1").is_err());
    }
}
