//! Built-in partition classes and their named restricted targets.

use super::{DistanceRule, IdealSpec, JunctionRule, Restriction};

/// A named class together with the restricted subsets whose generating
/// functions the pipeline tracks.
#[derive(Clone, Debug)]
pub struct Preset {
    pub name: &'static str,
    pub spec: IdealSpec,
    /// (target name, restriction) pairs; "min1" is the unrestricted class.
    pub targets: Vec<(&'static str, Restriction)>,
}

fn distance(k: usize, d: usize) -> DistanceRule {
    DistanceRule { distance: k, min_diff: d }
}

fn junction(w: usize, gap: usize, modulus: usize, residue: usize) -> JunctionRule {
    JunctionRule { window: w, gap, modulus, residue }
}

fn min2_amo2() -> Restriction {
    Restriction { min_part: 2, at_most_once: Some(2) }
}

/// Look up a preset by name ("type-i".."type-iv", "rogers-ramanujan",
/// "distinct", "gordon-3", "gollnitz-gordon").
pub fn preset(name: &str) -> Option<Preset> {
    let p = match name {
        // Difference at least 3 at distance 2; consecutive parts differing
        // by at most 1 must sum to 0 mod 3.
        "type-i" => Preset {
            name: "type-i",
            spec: IdealSpec::new(vec![distance(2, 3)], vec![junction(1, 1, 3, 0)], 3),
            targets: vec![
                ("min1", Restriction::min_part(1)),
                ("min2", Restriction::min_part(2)),
                ("min3", Restriction::min_part(3)),
            ],
        },
        // As type I with the junction sum congruent to 2 mod 3.
        "type-ii" => Preset {
            name: "type-ii",
            spec: IdealSpec::new(vec![distance(2, 3)], vec![junction(1, 1, 3, 2)], 3),
            targets: vec![
                ("min1", Restriction::min_part(1)),
                ("min2", Restriction::min_part(2)),
                ("a", Restriction::at_most_once(1)),
            ],
        },
        // Difference at least 3 at distance 3; parts at distance 2 differing
        // by at most 1 force the three-part sum to 1 mod 3.
        "type-iii" => Preset {
            name: "type-iii",
            spec: IdealSpec::new(vec![distance(3, 3)], vec![junction(2, 1, 3, 1)], 3),
            targets: vec![
                ("min1", Restriction::min_part(1)),
                ("min2", Restriction::min_part(2)),
                ("a", Restriction::at_most_once(1)),
            ],
        },
        // As type III with the sum congruent to 2 mod 3.
        "type-iv" => Preset {
            name: "type-iv",
            spec: IdealSpec::new(vec![distance(3, 3)], vec![junction(2, 1, 3, 2)], 3),
            targets: vec![
                ("min1", Restriction::min_part(1)),
                ("a", Restriction::at_most_once(1)),
                ("b", min2_amo2()),
            ],
        },
        // Consecutive parts differ by at least 2.
        "rogers-ramanujan" => Preset {
            name: "rogers-ramanujan",
            spec: IdealSpec::new(vec![distance(1, 2)], vec![], 2),
            targets: vec![
                ("min1", Restriction::min_part(1)),
                ("min2", Restriction::min_part(2)),
            ],
        },
        // Distinct parts.
        "distinct" => Preset {
            name: "distinct",
            spec: IdealSpec::new(vec![distance(1, 1)], vec![], 1),
            targets: vec![("min1", Restriction::min_part(1))],
        },
        // Gordon's theme at k = 3: difference at least 2 at distance 2.
        "gordon-3" => Preset {
            name: "gordon-3",
            spec: IdealSpec::new(vec![distance(2, 2)], vec![], 2),
            targets: vec![("min1", Restriction::min_part(1))],
        },
        // First Gollnitz-Gordon theme: consecutive difference at least 2,
        // and a difference of exactly 2 only between odd parts. A repeated
        // or gap-2 window has an even sum; requiring it to be 0 mod 4 says
        // the two parts are odd.
        "gollnitz-gordon" => Preset {
            name: "gollnitz-gordon",
            spec: IdealSpec::new(vec![distance(1, 2)], vec![junction(1, 2, 4, 0)], 2),
            targets: vec![("min1", Restriction::min_part(1))],
        },
        _ => return None,
    };
    Some(p)
}

/// Gordon's difference condition at general `k`: difference at least 2 at
/// distance `k - 1`.
pub fn gordon(k: usize) -> IdealSpec {
    assert!(k >= 2);
    IdealSpec::new(vec![distance(k - 1, 2)], vec![], 2)
}

pub fn preset_names() -> &'static [&'static str] {
    &[
        "type-i",
        "type-ii",
        "type-iii",
        "type-iv",
        "rogers-ramanujan",
        "distinct",
        "gordon-3",
        "gollnitz-gordon",
    ]
}
