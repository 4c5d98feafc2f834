//! Regression against the published reference tables: compact systems and
//! all twelve q-difference equations, compared entry-for-entry in canonical
//! text form.

use qlpi::data;
use qlpi::elim::{eliminate, rebase_to_target};
use qlpi::partitions::preset;
use qlpi::qalg::text::birat_text;
use qlpi::transfer::{build_system, merge_proportional, QDiffSystem};

fn merged(name: &str) -> QDiffSystem {
    let p = preset(name).unwrap();
    let table = p.spec.compute_linking().unwrap();
    merge_proportional(&build_system(&table, &p.spec, &p.targets).unwrap())
}

#[test]
fn merged_systems_match_published_tables() {
    for (name, _) in data::SYSTEM_GOLDEN {
        let golden = data::system_golden(name).unwrap();
        let sys = merged(name);
        let rows = golden["rows"].as_object().unwrap();
        assert_eq!(golden["m"].as_u64().unwrap() as usize, sys.m, "{name}: m");
        assert_eq!(rows.len(), sys.labels.len(), "{name}: state count");
        for (i, row_label) in sys.labels.iter().enumerate() {
            let grow = rows[row_label].as_object().unwrap_or_else(|| {
                panic!("{name}: state {row_label:?} missing from the reference table")
            });
            for (j, col_label) in sys.labels.iter().enumerate() {
                let text = birat_text(&sys.matrix[i][j], "x");
                match grow.get(col_label) {
                    Some(v) => assert_eq!(
                        v.as_str().unwrap(),
                        text,
                        "{name}: entry ({row_label}, {col_label})"
                    ),
                    None => assert_eq!(text, "0", "{name}: entry ({row_label}, {col_label})"),
                }
            }
        }
    }
}

#[test]
fn twelve_equations_match_published_coefficients() {
    for name in data::IDENTITY_NAMES {
        let golden = data::qdiff_golden(name).unwrap();
        let (preset_name, target) = data::split_identity(name).unwrap();
        let sys = merged(preset_name);
        let t = &sys.targets[target];
        let eq = eliminate(&sys, t.state).unwrap();
        let g = rebase_to_target(&eq, &t.prefactor, -(sys.m as i64)).unwrap();
        let expect: Vec<&str> = golden["coeffs"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c.as_str().unwrap())
            .collect();
        assert_eq!(g.coeffs.len(), expect.len(), "{name}: order");
        for (i, (c, e)) in g.coeffs.iter().zip(&expect).enumerate() {
            assert_eq!(
                qlpi::qalg::text::bipoly_text(c, "x"),
                **e,
                "{name}: coefficient p_{}",
                i * g.m
            );
        }
    }
}
