//! Builds a coin and one of its closed-form eigenpairs from `--case` and its parameters.

use std::f64::consts::PI;

use clap::Args;
use num_complex::Complex64;
use qwalk_core::stationary::{
    eigen_a_zero, eigen_b_zero, eigen_generic, eigen_generic_k, eigen_grover3, eigen_grover_n_trivial, Eigenpair,
    Grover3Case, Sign,
};
use qwalk_core::Coin;

use crate::parse;
use crate::CliError;

#[derive(Args, Debug, Clone)]
pub struct CaseArgs {
    /// a0[-plus|-minus], b0, generic[-K], grover3-plus, grover3-minus, grover3-neg1, grover3-pos1, groverN
    #[arg(long)]
    pub case: String,
    /// Coin angle for the generic case (U(theta)); overridden by --coin.
    #[arg(long)]
    pub theta: Option<String>,
    /// Two-state coin for the generic case.
    #[arg(long)]
    pub coin: Option<String>,
    /// Which double-root eigenvalue (1..=4) for the generic case.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Eigenvalue for the generic case, instead of --k.
    #[arg(long)]
    pub lambda: Option<String>,
    /// Amplitude A of the generic case.
    #[arg(long = "A", default_value = "1")]
    pub amplitude: String,
    #[arg(long, default_value = "0")]
    pub eta: String,
    #[arg(long, default_value = "0")]
    pub xi: String,
    /// Sign of lambda = +-i sqrt(det U) for the a0 case.
    #[arg(long, default_value = "plus")]
    pub sign: String,
    #[arg(long, default_value = "1")]
    pub alpha: String,
    #[arg(long, default_value = "1")]
    pub beta: String,
    #[arg(long, default_value = "1")]
    pub psi0: String,
    #[arg(long, default_value = "1")]
    pub psi: String,
    #[arg(long, default_value = "1")]
    pub left: String,
    #[arg(long, default_value = "0")]
    pub right: String,
    /// Number of chirality states for groverN.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
}

fn normalize(case: &str) -> String {
    case.trim().to_ascii_lowercase().replace('-', "_")
}

fn parse_sign(text: &str) -> Result<Sign, CliError> {
    match text {
        "plus" | "+" => Ok(Sign::Plus),
        "minus" | "-" => Ok(Sign::Minus),
        _ => Err(CliError::invalid(format!("sign must be plus or minus, got '{text}'"))),
    }
}

pub fn build(args: &CaseArgs) -> Result<(Coin, Eigenpair), CliError> {
    let case = normalize(&args.case);
    let eta = || parse::angle(&args.eta);
    let xi = || parse::angle(&args.xi);
    let c = parse::complex;
    let a_zero = |sign: Sign| -> Result<(Coin, Eigenpair), CliError> {
        let (eta, xi) = (eta()?, xi()?);
        Ok((Coin::a_zero(eta, xi), eigen_a_zero(eta, xi, sign, c(&args.alpha)?, c(&args.beta)?)?))
    };
    let grover3 = |g: Grover3Case| -> Result<(Coin, Eigenpair), CliError> { Ok((Coin::grover(3)?, eigen_grover3(g)?)) };
    match case.as_str() {
        "a0" | "a_zero" => a_zero(parse_sign(&args.sign)?),
        "a0_plus" | "a_zero_plus" => a_zero(Sign::Plus),
        "a0_minus" | "a_zero_minus" => a_zero(Sign::Minus),
        "b0" | "b_zero" => {
            let (eta, xi) = (eta()?, xi()?);
            let lambda = c(args.lambda.as_deref().unwrap_or("1"))?;
            Ok((Coin::b_zero(eta, xi), eigen_b_zero(eta, xi, lambda, c(&args.alpha)?, c(&args.beta)?)?))
        }
        "grover3_plus" => grover3(Grover3Case::Plus { psi0: c(&args.psi0)? }),
        "grover3_minus" => grover3(Grover3Case::Minus { psi0: c(&args.psi0)? }),
        "grover3_neg1" => grover3(Grover3Case::Neg1 { left: c(&args.left)?, right: c(&args.right)? }),
        "grover3_pos1" => grover3(Grover3Case::Pos1 { psi: c(&args.psi)? }),
        "grovern" | "grovern_trivial" => Ok((Coin::grover(args.n)?, eigen_grover_n_trivial(args.n, c(&args.psi)?)?)),
        g if g == "generic" || g.starts_with("generic_") => {
            let coin = match (&args.coin, &args.theta) {
                (Some(spec), _) => parse::coin(spec)?,
                (None, Some(t)) => Coin::from_theta(parse::angle(t)?),
                (None, None) => Coin::from_theta(PI / 4.0),
            };
            let amplitude: Complex64 = c(&args.amplitude)?;
            let ep = match (g.strip_prefix("generic_"), &args.lambda) {
                (Some(k), _) => {
                    let k = k.parse().map_err(|_| CliError::invalid(format!("unknown case '{}'", args.case)))?;
                    eigen_generic_k(&coin, k, amplitude)?
                }
                (None, Some(l)) => eigen_generic(&coin, c(l)?, amplitude)?,
                (None, None) => eigen_generic_k(&coin, args.k, amplitude)?,
            };
            Ok((coin, ep))
        }
        _ => Err(CliError::invalid(format!("unknown case '{}'", args.case))),
    }
}
