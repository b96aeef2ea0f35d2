//! Line-oriented problem-instance files.
//!
//! Format: one key per line, `#` starts a comment, blank lines are ignored.
//!
//! ```text
//! variant 1|2|3
//! c <ints>                  # item weights
//! target <int>              # variant 1
//! bounds <int> <int>        # variant 2
//! w <ints>                  # variant 3
//! budget <int>              # variant 3
//! ```

use std::fmt;

use qod_core::knapsack::{KnapsackError, KnapsackInstance};

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    /// 1-based line number; 0 for file-level semantic errors.
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "line {}: {}", self.line, self.message)
        } else {
            write!(f, "{}", self.message)
        }
    }
}

impl std::error::Error for ParseError {}

impl From<KnapsackError> for ParseError {
    fn from(e: KnapsackError) -> Self {
        ParseError::at(0, e.to_string())
    }
}

fn parse_u64(token: &str, line: usize) -> Result<u64, ParseError> {
    if token.starts_with('-') {
        return Err(ParseError::at(line, format!("negative value `{token}`")));
    }
    token
        .parse::<u64>()
        .map_err(|_| ParseError::at(line, format!("invalid integer `{token}`")))
}

fn parse_list(tokens: &[&str], line: usize) -> Result<Vec<u64>, ParseError> {
    tokens.iter().map(|t| parse_u64(t, line)).collect()
}

pub fn parse_instance(source: &str) -> Result<KnapsackInstance, ParseError> {
    let mut variant: Option<(u8, usize)> = None;
    let mut weights: Option<Vec<u64>> = None;
    let mut profits: Option<Vec<u64>> = None;
    let mut target: Option<u64> = None;
    let mut bounds: Option<(u64, u64)> = None;
    let mut budget: Option<u64> = None;

    for (idx, raw) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let (key, args) = (tokens[0], &tokens[1..]);
        let arity = |want: usize| -> Result<(), ParseError> {
            if args.len() != want {
                return Err(ParseError::at(
                    line_no,
                    format!("`{key}` expects {want} value(s), got {}", args.len()),
                ));
            }
            Ok(())
        };
        let fresh = |taken: bool| -> Result<(), ParseError> {
            if taken {
                return Err(ParseError::at(line_no, format!("duplicate key `{key}`")));
            }
            Ok(())
        };
        match key {
            "variant" => {
                fresh(variant.is_some())?;
                arity(1)?;
                let v = parse_u64(args[0], line_no)?;
                if !(1..=3).contains(&v) {
                    return Err(ParseError::at(line_no, format!("unknown variant `{v}`")));
                }
                variant = Some((v as u8, line_no));
            }
            "c" => {
                fresh(weights.is_some())?;
                weights = Some(parse_list(args, line_no)?);
            }
            "w" => {
                fresh(profits.is_some())?;
                profits = Some(parse_list(args, line_no)?);
            }
            "target" => {
                fresh(target.is_some())?;
                arity(1)?;
                target = Some(parse_u64(args[0], line_no)?);
            }
            "bounds" => {
                fresh(bounds.is_some())?;
                arity(2)?;
                let lo = parse_u64(args[0], line_no)?;
                let hi = parse_u64(args[1], line_no)?;
                if lo >= hi {
                    return Err(ParseError::at(line_no, "bounds not increasing"));
                }
                bounds = Some((lo, hi));
            }
            "budget" => {
                fresh(budget.is_some())?;
                arity(1)?;
                budget = Some(parse_u64(args[0], line_no)?);
            }
            other => {
                return Err(ParseError::at(line_no, format!("unknown key `{other}`")));
            }
        }
    }

    let (variant, _) = variant.ok_or_else(|| ParseError::at(0, "missing `variant` line"))?;
    let weights = weights.ok_or_else(|| ParseError::at(0, "missing `c` line"))?;
    let forbid = |present: bool, key: &str| -> Result<(), ParseError> {
        if present {
            return Err(ParseError::at(
                0,
                format!("key `{key}` does not apply to variant {variant}"),
            ));
        }
        Ok(())
    };
    match variant {
        1 => {
            forbid(profits.is_some(), "w")?;
            forbid(bounds.is_some(), "bounds")?;
            forbid(budget.is_some(), "budget")?;
            let target = target.ok_or_else(|| ParseError::at(0, "missing `target` line"))?;
            Ok(KnapsackInstance::exact_sum(weights, target)?)
        }
        2 => {
            forbid(profits.is_some(), "w")?;
            forbid(target.is_some(), "target")?;
            forbid(budget.is_some(), "budget")?;
            let (lo, hi) = bounds.ok_or_else(|| ParseError::at(0, "missing `bounds` line"))?;
            Ok(KnapsackInstance::interval_sum(weights, lo, hi)?)
        }
        3 => {
            forbid(target.is_some(), "target")?;
            forbid(bounds.is_some(), "bounds")?;
            let profits = profits.ok_or_else(|| ParseError::at(0, "missing `w` line"))?;
            let budget = budget.ok_or_else(|| ParseError::at(0, "missing `budget` line"))?;
            Ok(KnapsackInstance::optimization(weights, profits, budget)?)
        }
        _ => unreachable!(),
    }
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Canonical text form; `parse_instance(emit_instance(i)) == i`.
pub fn emit_instance(inst: &KnapsackInstance) -> String {
    match inst {
        KnapsackInstance::ExactSum { weights, target } => {
            format!("variant 1\nc {}\ntarget {}\n", join(weights), target)
        }
        KnapsackInstance::IntervalSum {
            weights,
            bound_lo,
            bound_hi,
        } => format!(
            "variant 2\nc {}\nbounds {} {}\n",
            join(weights),
            bound_lo,
            bound_hi
        ),
        KnapsackInstance::Optimization {
            weights,
            profits,
            bound_hi,
        } => format!(
            "variant 3\nc {}\nw {}\nbudget {}\n",
            join(weights),
            join(profits),
            bound_hi
        ),
    }
}
