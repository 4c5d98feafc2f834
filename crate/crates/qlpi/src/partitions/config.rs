//! Key-value config format for partition class specifications.
//!
//! ```text
//! # difference at least 3 at distance 2
//! modulus = 3
//! distance = (2,3)
//! junction = (1,1,3,0)
//! min_part = 2
//! at_most_once = 1
//! ```
//!
//! A `preset = <name>` line loads a built-in class first; subsequent lines
//! override or extend it. Multiple `distance` / `junction` lines accumulate.

use super::{DistanceRule, IdealSpec, JunctionRule, Restriction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("line {0}: expected `key = value`")]
    BadLine(usize),
    #[error("line {0}: {1}")]
    BadValue(usize, String),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("spec is missing a modulus")]
    MissingModulus,
}

/// Parse a spec config document.
pub fn parse_spec_config(text: &str) -> Result<IdealSpec, ConfigError> {
    let mut modulus: Option<usize> = None;
    let mut distance_rules: Vec<DistanceRule> = Vec::new();
    let mut junction_rules: Vec<JunctionRule> = Vec::new();
    let mut restriction = Restriction::none();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or(ConfigError::BadLine(line_no))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "preset" => {
                let p = super::preset(value)
                    .ok_or_else(|| ConfigError::UnknownPreset(value.to_string()))?;
                modulus = Some(p.spec.modulus);
                distance_rules = p.spec.distance_rules;
                junction_rules = p.spec.junction_rules;
                restriction = p.spec.restriction;
            }
            "modulus" => {
                let m = parse_usize(value, line_no)?;
                if m == 0 {
                    return Err(ConfigError::BadValue(line_no, "modulus must be >= 1".into()));
                }
                modulus = Some(m);
            }
            "distance" => {
                let nums = parse_tuple(value, 2, line_no)?;
                distance_rules.push(DistanceRule { distance: nums[0], min_diff: nums[1] });
            }
            "junction" => {
                let nums = parse_tuple(value, 4, line_no)?;
                junction_rules.push(JunctionRule {
                    window: nums[0],
                    gap: nums[1],
                    modulus: nums[2],
                    residue: nums[3],
                });
            }
            "min_part" => {
                restriction.min_part = parse_usize(value, line_no)?;
            }
            "at_most_once" => {
                restriction.at_most_once = Some(parse_usize(value, line_no)?);
            }
            other => {
                return Err(ConfigError::BadValue(line_no, format!("unknown key {other:?}")));
            }
        }
    }

    let modulus = modulus.ok_or(ConfigError::MissingModulus)?;
    let mut spec = IdealSpec::new(distance_rules, junction_rules, modulus);
    spec.restriction = restriction;
    Ok(spec)
}

fn parse_usize(value: &str, line_no: usize) -> Result<usize, ConfigError> {
    value
        .parse()
        .map_err(|_| ConfigError::BadValue(line_no, format!("expected integer, got {value:?}")))
}

fn parse_tuple(value: &str, arity: usize, line_no: usize) -> Result<Vec<usize>, ConfigError> {
    let inner = value
        .trim()
        .strip_prefix('(')
        .and_then(|v| v.strip_suffix(')'))
        .ok_or_else(|| ConfigError::BadValue(line_no, format!("expected (..), got {value:?}")))?;
    let nums: Result<Vec<usize>, _> = inner.split(',').map(|s| s.trim().parse()).collect();
    let nums =
        nums.map_err(|_| ConfigError::BadValue(line_no, format!("bad tuple {value:?}")))?;
    if nums.len() != arity {
        return Err(ConfigError::BadValue(
            line_no,
            format!("expected {arity} entries in {value:?}"),
        ));
    }
    Ok(nums)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_spec() {
        let spec = parse_spec_config(
            "# type I\nmodulus = 3\ndistance = (2,3)\njunction = (1,1,3,0)\n",
        )
        .unwrap();
        assert_eq!(spec, super::super::preset("type-i").unwrap().spec);
    }

    #[test]
    fn preset_with_restriction_override() {
        let spec = parse_spec_config("preset = type-iv\nmin_part = 2\nat_most_once = 2\n").unwrap();
        assert_eq!(spec.modulus, 3);
        assert_eq!(spec.restriction.min_part, 2);
        assert_eq!(spec.restriction.at_most_once, Some(2));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_spec_config("modulus three").is_err());
        assert!(parse_spec_config("distance = (2,3)").is_err()); // no modulus
        assert!(parse_spec_config("modulus = 2\nwhatever = 1").is_err());
    }
}
