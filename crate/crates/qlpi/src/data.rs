//! Embedded reference data: published compact systems, q-difference
//! coefficient tables, recurrences, and the multi-sum specifications.
//!
//! Everything here is plain JSON shipped with the crate (see `data/`), so
//! the same files serve the golden regression tests, the CLI `--golden`
//! mode, and the examples.

/// Names of the twelve class/target pairs whose q-difference equations and
/// multi-sum forms are tracked end to end.
pub const IDENTITY_NAMES: [&str; 12] = [
    "type-i-min1",
    "type-i-min2",
    "type-i-min3",
    "type-ii-min1",
    "type-ii-min2",
    "type-ii-a",
    "type-iii-min1",
    "type-iii-min2",
    "type-iii-a",
    "type-iv-min1",
    "type-iv-a",
    "type-iv-b",
];

/// Split an identity name into its preset and target parts.
pub fn split_identity(name: &str) -> Option<(&str, &str)> {
    for target in ["min1", "min2", "min3", "a", "b"] {
        if let Some(preset) = name.strip_suffix(target).and_then(|p| p.strip_suffix('-')) {
            return Some((preset, target));
        }
    }
    None
}

macro_rules! embed {
    ($dir:literal, $($name:literal),+ $(,)?) => {
        &[$(($name, include_str!(concat!("../data/", $dir, "/", $name, ".json")))),+]
    };
}

/// Reference q-difference equations (coefficients as published).
pub const QDIFF_GOLDEN: &[(&str, &str)] = embed!(
    "golden/qdiff",
    "type-i-min1",
    "type-i-min2",
    "type-i-min3",
    "type-ii-min1",
    "type-ii-min2",
    "type-ii-a",
    "type-iii-min1",
    "type-iii-min2",
    "type-iii-a",
    "type-iv-min1",
    "type-iv-a",
    "type-iv-b",
);

/// Reference compact (merged) transfer systems.
pub const SYSTEM_GOLDEN: &[(&str, &str)] =
    embed!("golden/system", "type-i", "type-ii", "type-iii", "type-iv");

/// Reference coefficient recurrences for the first identity: the one derived
/// from its q-difference equation and the one satisfied by its multi-sum.
pub const RECURRENCE_GOLDEN: &[(&str, &str)] = embed!(
    "golden/recurrence",
    "type-i-min1-g",
    "type-i-min1-gt",
);

/// Multi-sum specifications (the Andrews-form data).
pub const ANDREWS_SPECS: &[(&str, &str)] = embed!(
    "andrews",
    "type-i-min1",
    "type-i-min2",
    "type-i-min3",
    "type-ii-min1",
    "type-ii-min2",
    "type-ii-a",
    "type-iii-min1",
    "type-iii-min2",
    "type-iii-a",
    "type-iv-min1",
    "type-iv-a",
    "type-iv-b",
    "rogers-ramanujan-min1",
    "rogers-ramanujan-min2",
    "gordon-3-min1",
    "gollnitz-gordon-min1",
);

fn lookup(table: &[(&str, &str)], name: &str) -> Option<serde_json::Value> {
    table
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| serde_json::from_str(text).expect("embedded data is valid JSON"))
}

pub fn qdiff_golden(name: &str) -> Option<serde_json::Value> {
    lookup(QDIFF_GOLDEN, name)
}

pub fn system_golden(name: &str) -> Option<serde_json::Value> {
    lookup(SYSTEM_GOLDEN, name)
}

pub fn recurrence_golden(name: &str) -> Option<serde_json::Value> {
    lookup(RECURRENCE_GOLDEN, name)
}

pub fn andrews_spec_json(name: &str) -> Option<serde_json::Value> {
    lookup(ANDREWS_SPECS, name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_names_split() {
        assert_eq!(split_identity("type-i-min1"), Some(("type-i", "min1")));
        assert_eq!(split_identity("type-iv-b"), Some(("type-iv", "b")));
        assert_eq!(split_identity("nonsense"), None);
    }

    #[test]
    fn embedded_data_parses() {
        for name in IDENTITY_NAMES {
            assert!(qdiff_golden(name).is_some(), "missing qdiff golden {name}");
            assert!(andrews_spec_json(name).is_some(), "missing andrews spec {name}");
        }
        for name in ["type-i", "type-ii", "type-iii", "type-iv"] {
            assert!(system_golden(name).is_some());
        }
    }
}
