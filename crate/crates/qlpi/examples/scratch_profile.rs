use qlpi::partitions::preset;
use qlpi::transfer::{build_system, merge_proportional};
use std::time::Instant;

fn main() {
    for name in ["type-iii"] {
        let p = preset(name).unwrap();
        let table = p.spec.compute_linking().unwrap();
        let sys = merge_proportional(&build_system(&table, &p.spec, &p.targets).unwrap());
        println!("{name}: {} states", sys.labels.len());
        let t0 = Instant::now();
        let eq = qlpi::elim::eliminate(&sys, 0).unwrap();
        println!("eliminate: {:?}, order {}", t0.elapsed(), eq.order());
        for (i, c) in eq.coeffs.iter().enumerate() {
            println!(
                "  p_{}: xdeg {:?} qdeg {:?} terms {}",
                3 * i,
                c.x_degree(),
                c.q_degree(),
                c.num_terms()
            );
        }
    }
}
