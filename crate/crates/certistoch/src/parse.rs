//! Parsers for the compact textual argument syntax of the CLI.
//!
//! Families are written `name:param[,param]`, e.g. `power:0.5`,
//! `exppower:1,0.5`, `pareto:1,1`; choices with an optional value are
//! written `optimize` or `fixed:0.3`.  All parse failures are reported as
//! domain errors, which the CLI maps to the usage exit code.

use certistoch_core::dvw::{TailFamily, ThetaChoice};
use certistoch_core::error::{Error, Result};
use certistoch_core::mc::OrliczU;
use certistoch_core::process::PChoice;
use certistoch_core::psi::PsiFamily;
use certistoch_core::subgauss::GeometricBasis;

fn split_spec(spec: &str) -> (&str, Vec<&str>) {
    match spec.split_once(':') {
        Some((name, rest)) => (name, rest.split(',').collect()),
        None => (spec, Vec::new()),
    }
}

fn params(spec: &str, parts: &[&str], want: usize) -> Result<Vec<f64>> {
    if parts.len() != want {
        return Err(Error::domain(format!(
            "`{spec}` needs {want} numeric parameter(s) after `:`"
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::domain(format!("`{p}` in `{spec}` is not a number")))
        })
        .collect()
}

/// Parses a ψ-family spec: `power:<alpha>`, `exppower:<a>,<beta>`,
/// `logpower:<lambda>`.
pub fn psi_family(spec: &str) -> Result<PsiFamily> {
    let (name, parts) = split_spec(spec);
    let family = match name {
        "power" => PsiFamily::Power { alpha: params(spec, &parts, 1)?[0] },
        "exppower" => {
            let p = params(spec, &parts, 2)?;
            PsiFamily::ExpPower { a: p[0], beta: p[1] }
        }
        "logpower" => PsiFamily::LogPower { lambda: params(spec, &parts, 1)?[0] },
        _ => {
            return Err(Error::domain(format!(
                "unknown psi family `{name}` (expected power, exppower or logpower)"
            )))
        }
    };
    family.validate()?;
    Ok(family)
}

/// Parses a tail-family spec: `pareto:<c>,<scale>`, `cauchy:<gamma>,<scale>`,
/// `gaussian:<sigma>,<scale>`.
pub fn tail_family(spec: &str) -> Result<TailFamily> {
    let (name, parts) = split_spec(spec);
    let p = params(spec, &parts, 2)?;
    let family = match name {
        "pareto" => TailFamily::Pareto { c: p[0], scale: p[1] },
        "cauchy" => TailFamily::Cauchy { gamma: p[0], scale: p[1] },
        "gaussian" => TailFamily::Gaussian { sigma: p[0], scale: p[1] },
        _ => {
            return Err(Error::domain(format!(
                "unknown tail family `{name}` (expected pareto, cauchy or gaussian)"
            )))
        }
    };
    Ok(family)
}

/// Parses an Orlicz U-family spec: `power:<p>` or `expalpha:<alpha>`.
pub fn orlicz_u(spec: &str) -> Result<OrliczU> {
    let (name, parts) = split_spec(spec);
    let p = params(spec, &parts, 1)?;
    let u = match name {
        "power" => OrliczU::Power { p: p[0] },
        "expalpha" => OrliczU::ExpAlpha { alpha: p[0] },
        _ => {
            return Err(Error::domain(format!(
                "unknown Orlicz family `{name}` (expected power or expalpha)"
            )))
        }
    };
    u.validate()?;
    Ok(u)
}

/// Parses an orthogonal-basis spec: `hermite-geometric`, `chebyshev-t`,
/// `chebyshev-u`, `legendre`, `laguerre:<alpha>`, `gegenbauer:<alpha>`.
pub fn basis(spec: &str) -> Result<GeometricBasis> {
    let (name, parts) = split_spec(spec);
    let b = match name {
        "hermite-geometric" => GeometricBasis::HermiteGeometric,
        "chebyshev-t" => GeometricBasis::ChebyshevT,
        "chebyshev-u" => GeometricBasis::ChebyshevU,
        "legendre" => GeometricBasis::Legendre,
        "laguerre" => GeometricBasis::Laguerre { alpha: params(spec, &parts, 1)?[0] },
        "gegenbauer" => GeometricBasis::Gegenbauer { alpha: params(spec, &parts, 1)?[0] },
        _ => return Err(Error::domain(format!("unknown basis `{name}`"))),
    };
    if parts.is_empty() || matches!(b, GeometricBasis::Laguerre { .. } | GeometricBasis::Gegenbauer { .. })
    {
        Ok(b)
    } else {
        Err(Error::domain(format!("basis `{name}` takes no parameters")))
    }
}

/// Parses a chaining-parameter choice: `optimize` or `fixed:<p>`.
pub fn p_choice(spec: &str) -> Result<PChoice> {
    let (name, parts) = split_spec(spec);
    match name {
        "optimize" if parts.is_empty() => Ok(PChoice::Optimize),
        "fixed" => Ok(PChoice::Fixed(params(spec, &parts, 1)?[0])),
        _ => Err(Error::domain(format!(
            "unknown p choice `{spec}` (expected optimize or fixed:<p>)"
        ))),
    }
}

/// Parses a θ choice for the model-reliability condition: `optimize` or
/// `fixed:<theta>`.
pub fn theta_choice(spec: &str) -> Result<ThetaChoice> {
    let (name, parts) = split_spec(spec);
    match name {
        "optimize" if parts.is_empty() => Ok(ThetaChoice::Optimize),
        "fixed" => Ok(ThetaChoice::Fixed(params(spec, &parts, 1)?[0])),
        _ => Err(Error::domain(format!(
            "unknown theta choice `{spec}` (expected optimize or fixed:<theta>)"
        ))),
    }
}

/// Parses a comma-separated list of floats, e.g. `3,4,5`.
pub fn float_list(spec: &str) -> Result<Vec<f64>> {
    spec.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::domain(format!("`{p}` is not a number")))
        })
        .collect()
}

/// Parses a comma-separated list of unsigned integers, e.g. `1,10,100`.
pub fn int_list(spec: &str) -> Result<Vec<u64>> {
    spec.split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| Error::domain(format!("`{p}` is not an integer")))
        })
        .collect()
}
