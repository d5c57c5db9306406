//! Argument parsers shared by the subcommands.

use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context};
use clap::Args;
use hlmax_core::exactnum::rational::{format_rational, int, parse_rational, Rational};
use hlmax_core::experiments;
use hlmax_core::holder::VariableExponent;
use hlmax_core::io;
use hlmax_core::PeriodicPiecewiseLinear;
use num_traits::Signed;

pub fn rational(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

/// `start:end:count`, rationals for the ends, `count >= 2`.
#[derive(Clone, Debug)]
pub struct GridSpec {
    pub start: Rational,
    pub end: Rational,
    pub count: usize,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let parts: Vec<&str> = text.split(':').collect();
        let [start, end, count] = parts.as_slice() else {
            return Err(format!("grid must be start:end:count, got {text:?}"));
        };
        let start = rational(start)?;
        let end = rational(end)?;
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| format!("grid count {count:?} is not a non-negative integer"))?;
        if count < 2 {
            return Err("grid count must be at least 2".into());
        }
        if end < start {
            return Err("grid end precedes its start".into());
        }
        Ok(GridSpec { start, end, count })
    }
}

impl GridSpec {
    pub fn points(&self) -> Vec<Rational> {
        experiments::uniform_grid(&self.start, &self.end, self.count).expect("validated at parse time")
    }
}

/// `a:b` with integers `a <= b`.
#[derive(Clone, Copy, Debug)]
pub struct IntRange {
    pub lo: u64,
    pub hi: u64,
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let (lo, hi) = text
            .split_once(':')
            .ok_or_else(|| format!("range must be a:b, got {text:?}"))?;
        let parse = |s: &str| s.trim().parse::<u64>().map_err(|_| format!("{s:?} is not a non-negative integer"));
        let (lo, hi) = (parse(lo)?, parse(hi)?);
        if lo > hi {
            return Err("range start exceeds its end".into());
        }
        Ok(IntRange { lo, hi })
    }
}

#[derive(Args, Clone, Debug)]
pub struct FunctionArgs {
    /// Function: `hat` (2-periodic |x|), `hat-minus` (hat - 1/n, needs --n),
    /// `const` (needs --c, optional --period), or a path to a function JSON
    /// file {"period":"2/1","points":[["-1/1","1/1"],["0/1","0/1"]]}.
    #[arg(long = "fn", value_name = "FUNCTION", default_value = "hat")]
    pub function: String,
    /// n for `hat-minus`, at least 3.
    #[arg(long)]
    pub n: Option<u64>,
    /// Value for `const`, a rational such as 1/2 or 0.25.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub c: Option<Rational>,
    /// Period for `const` (default 1).
    #[arg(long, value_parser = rational)]
    pub period: Option<Rational>,
}

impl FunctionArgs {
    pub fn load(&self) -> anyhow::Result<PeriodicPiecewiseLinear> {
        match self.function.as_str() {
            "hat" => Ok(PeriodicPiecewiseLinear::hat()),
            "hat-minus" => {
                let n = self.n.context("hat-minus needs --n")?;
                Ok(experiments::counterexample_sequence(n)?)
            }
            "const" => {
                let c = self.c.clone().context("const needs --c")?;
                let period = self.period.clone().unwrap_or_else(|| int(1));
                Ok(PeriodicPiecewiseLinear::constant(c, period)?)
            }
            path => {
                let path = PathBuf::from(path);
                io::read_function_file(&path).with_context(|| format!("reading function from {}", path.display()))
            }
        }
    }
}

/// Exponent source: a constant in [0, 1], `ramp` (0 at the first grid point
/// rising linearly to 1 at the last), `tent` (0 at both ends, 1 in the
/// middle), or a CSV file with one exponent per grid point.
#[derive(Clone, Debug)]
pub enum AlphaSpec {
    Constant(Rational),
    Ramp,
    Tent,
    File(PathBuf),
}

impl FromStr for AlphaSpec {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        match text {
            "ramp" => Ok(AlphaSpec::Ramp),
            "tent" => Ok(AlphaSpec::Tent),
            _ => match parse_rational(text) {
                Ok(v) => Ok(AlphaSpec::Constant(v)),
                Err(_) => Ok(AlphaSpec::File(PathBuf::from(text))),
            },
        }
    }
}

impl AlphaSpec {
    pub fn describe(&self) -> String {
        match self {
            AlphaSpec::Constant(v) => format_rational(v),
            AlphaSpec::Ramp => "ramp".into(),
            AlphaSpec::Tent => "tent".into(),
            AlphaSpec::File(p) => p.display().to_string(),
        }
    }

    pub fn exponent(&self, count: usize) -> anyhow::Result<VariableExponent> {
        let last = Rational::from_integer((count.max(2) - 1).into());
        let position = |i: usize| Rational::from_integer(i.into()) / &last;
        let e = match self {
            AlphaSpec::Constant(v) => VariableExponent::constant(v.clone())?,
            AlphaSpec::Ramp => VariableExponent::per_point((0..count).map(position).collect())?,
            AlphaSpec::Tent => VariableExponent::per_point(
                (0..count)
                    .map(|i| int(1) - (position(i) * int(2) - int(1)).abs())
                    .collect(),
            )?,
            AlphaSpec::File(path) => {
                let file = std::fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
                let values = io::read_vector(file, &path.display().to_string())?;
                if values.len() != count {
                    bail!("{}: {} exponents for {count} grid points", path.display(), values.len());
                }
                VariableExponent::per_point(values)?
            }
        };
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hlmax_core::exactnum::rational::rat;

    #[test]
    fn grid_spec_parses() {
        let g: GridSpec = "-1/2:1:5".parse().unwrap();
        assert_eq!(g.points(), vec![rat(-1, 2), rat(-1, 8), rat(1, 4), rat(5, 8), int(1)]);
        assert!("0:1:1".parse::<GridSpec>().is_err());
        assert!("0:1".parse::<GridSpec>().is_err());
        assert!("1:0:3".parse::<GridSpec>().is_err());
    }

    #[test]
    fn alpha_keywords() {
        let tent: AlphaSpec = "tent".parse().unwrap();
        let e = tent.exponent(5).unwrap();
        assert_eq!(e.at(0), &int(0));
        assert_eq!(e.at(2), &int(1));
        assert_eq!(e.at(3), &rat(1, 2));
        assert!(matches!("1/2".parse::<AlphaSpec>().unwrap(), AlphaSpec::Constant(_)));
        assert!("3/2".parse::<AlphaSpec>().unwrap().exponent(3).is_err());
    }
}
