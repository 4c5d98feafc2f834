use super::*;

fn part(text: &str) -> Partition {
    Partition::parse(text).unwrap()
}

fn tails_of(name: &str) -> Vec<String> {
    preset(name)
        .unwrap()
        .spec
        .compute_tails()
        .unwrap()
        .iter()
        .map(|t| t.text())
        .collect()
}

#[test]
fn membership_examples() {
    let t1 = preset("type-i").unwrap().spec;
    assert!(t1.is_member(&part("3+3")));
    assert!(!t1.is_member(&part("2+2")));
    let rr = preset("rogers-ramanujan").unwrap().spec;
    assert!(rr.is_member(&part("5+3+1")));
    assert!(!rr.is_member(&part("5+4+1")));
    // the empty partition is always a member
    assert!(t1.is_member(&Partition::empty()));
}

#[test]
fn tail_examples() {
    assert_eq!(part("3+3+2+1+1+1").tail(2), part("2+1+1+1"));
    assert_eq!(part("5+4").tail(3), Partition::empty());
    assert_eq!(Partition::empty().tail(3), Partition::empty());
}

#[test]
fn tail_sets_match_published_lists() {
    assert_eq!(tails_of("distinct"), vec!["", "1"]);
    assert_eq!(tails_of("rogers-ramanujan"), vec!["", "1", "2"]);
    // Type I: {empty, 1, 2+1, 3+1, 2, 3, 3+3} in the crate's
    // (weight, length, lex) order.
    assert_eq!(
        tails_of("type-i"),
        vec!["", "1", "2", "3", "2+1", "3+1", "3+3"]
    );
    // Type II: {empty, 1, 1+1, 3+1, 2, 3+2, 3}
    assert_eq!(
        tails_of("type-ii"),
        vec!["", "1", "2", "1+1", "3", "3+1", "3+2"]
    );
    // Type III has 15 tails closing with 3+2+2, 3+3, 3+3+1.
    let t3 = tails_of("type-iii");
    assert_eq!(t3.len(), 15);
    for expected in [
        "", "1", "1+1", "2", "2+1", "2+1+1", "2+2", "3", "3+1", "3+1+1", "3+2", "3+2+1",
        "3+2+2", "3+3", "3+3+1",
    ] {
        assert!(t3.iter().any(|t| t == expected), "missing tail {expected}");
    }
    // Type IV swaps in 2+2+1 and 3+3+2 relative to type III.
    let t4 = tails_of("type-iv");
    assert_eq!(t4.len(), 15);
    assert!(t4.iter().any(|t| t == "2+2+1"));
    assert!(t4.iter().any(|t| t == "3+3+2"));
    assert!(!t4.iter().any(|t| t == "2+1+1"));
}

#[test]
fn linking_examples() {
    // distinct: L(1) = {empty, 1}
    let d = preset("distinct").unwrap().spec.compute_linking().unwrap();
    let one = d.index_of(&part("1")).unwrap();
    let set: Vec<String> = d.linking_set(one).iter().map(|p| p.text()).collect();
    assert_eq!(set, vec!["", "1"]);

    // type I: linking set of 3+3 is {empty, 3, 3+3}
    let t1 = preset("type-i").unwrap().spec.compute_linking().unwrap();
    let i = t1.index_of(&part("3+3")).unwrap();
    let set: Vec<String> = t1.linking_set(i).iter().map(|p| p.text()).collect();
    assert_eq!(set, vec!["", "3", "3+3"]);

    // type II: linking set of 2 excludes 1+1 but keeps the other six
    let t2 = preset("type-ii").unwrap().spec.compute_linking().unwrap();
    let i = t2.index_of(&part("2")).unwrap();
    let set: Vec<String> = t2.linking_set(i).iter().map(|p| p.text()).collect();
    assert_eq!(set, vec!["", "1", "2", "3", "3+1", "3+2"]);
    assert_eq!(t2.span(i), 1);
}

#[test]
fn enumeration_examples() {
    let t1 = preset("type-i").unwrap().spec;
    let counts = t1.enumerate(3);
    assert_eq!(counts.total(3), 2); // 3 and 2+1
    assert_eq!(counts.total(0), 1);
    assert_eq!(counts.count(0, 0), 1);

    let rr = preset("rogers-ramanujan").unwrap().spec;
    let counts = rr.enumerate(4);
    assert_eq!(counts.total(4), 2); // 4 and 3+1
}

#[test]
fn restricted_enumeration() {
    // type IV target b: smallest part >= 2 and 2 at most once
    let p = preset("type-iv").unwrap();
    let (_, restr) = p.targets.iter().find(|(n, _)| *n == "b").unwrap();
    let spec = p.spec.with_restriction(*restr);
    assert!(spec.is_member(&part("3")));
    assert!(spec.is_member(&part("2")));
    assert!(!spec.is_member(&part("2+2")));
    assert!(!spec.is_member(&part("3+1")));
}

// ---------------------------------------------------------------------------
// Structural properties (exhaustive at small weight)
// ---------------------------------------------------------------------------

const PROPERTY_PRESETS: [&str; 8] = [
    "type-i",
    "type-ii",
    "type-iii",
    "type-iv",
    "rogers-ramanujan",
    "distinct",
    "gordon-3",
    "gollnitz-gordon",
];

#[test]
fn deletion_closure() {
    // Deleting any single part of a member leaves a member.
    for name in PROPERTY_PRESETS {
        let spec = preset(name).unwrap().spec;
        for member in spec.members_up_to(25) {
            for i in 0..member.len() {
                let smaller = member.delete_part(i);
                assert!(
                    spec.is_member(&smaller),
                    "{name}: deleting part {i} of {member} left the class"
                );
            }
        }
    }
}

#[test]
fn modulus_property() {
    // Members with all parts > m shift down by m to members, and members
    // shift up by m to members with all parts > m.
    for name in PROPERTY_PRESETS {
        let spec = preset(name).unwrap().spec;
        let m = spec.modulus;
        for member in spec.members_up_to(25) {
            let up = member.shift_up(m);
            assert!(spec.is_member(&up), "{name}: phi^{m} {member} not a member");
            if member.tail(m).is_empty() {
                let down = member.shift_down(m).expect("all parts > m");
                assert!(
                    spec.is_member(&down),
                    "{name}: phi^-{m} {member} not a member"
                );
            }
        }
    }
}

#[test]
fn unique_block_decomposition() {
    // Every member factors as b0 + phi^m b1 + phi^2m b2 + ... with every
    // block a tail; recomposition gives the member back.
    for name in PROPERTY_PRESETS {
        let spec = preset(name).unwrap().spec;
        let m = spec.modulus;
        let tails = spec.compute_tails().unwrap();
        for member in spec.members_up_to(25) {
            let mut rest = member.clone();
            let mut blocks: Vec<Partition> = Vec::new();
            while !rest.is_empty() {
                let block = rest.tail(m);
                blocks.push(block.clone());
                rest = rest.head(m).shift_down(m).expect("head parts exceed m");
            }
            for b in &blocks {
                assert!(tails.contains(b), "{name}: block {b} of {member} is not a tail");
            }
            let mut recomposed = Partition::empty();
            for (j, b) in blocks.iter().enumerate() {
                recomposed = recomposed.merge(&b.shift_up(j * m));
            }
            assert_eq!(recomposed, member, "{name}: decomposition does not recompose");
        }
    }
}

#[test]
fn chain_counts_match_enumeration() {
    // The operational content of the linking sets: transfer-style chain
    // counting reproduces brute-force enumeration (bivariate counts).
    for name in PROPERTY_PRESETS {
        let spec = preset(name).unwrap().spec;
        let table = spec.compute_linking().unwrap();
        let chain = table.chain_counts(25, None);
        let oracle = spec.enumerate(25);
        for n in 0..=25 {
            for mm in 0..=chain.max_parts().max(oracle.max_parts()) {
                assert_eq!(
                    chain.count(mm, n),
                    oracle.count(mm, n),
                    "{name}: c({mm},{n}) mismatch"
                );
            }
        }
    }
}

#[test]
fn infinite_tail_set_is_detected() {
    // No distance rule with positive minimum difference: tails unbounded.
    let spec = IdealSpec::new(vec![], vec![], 2);
    assert!(matches!(
        spec.compute_tails(),
        Err(PartitionError::TailSetInfinite(_))
    ));
}

#[test]
fn partition_text_roundtrip() {
    for text in ["", "1", "3+2+1", "10+10+4"] {
        assert_eq!(part(text).text(), text);
    }
    assert_eq!(Partition::parse("3+0"), None);
}
