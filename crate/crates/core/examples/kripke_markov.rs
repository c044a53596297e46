//! The two-node Kripke model in which Markov's principle fails at the root.

use eg_core::kripke::{check_ef_axioms, mp_counterexample};

fn main() {
    let r = mp_counterexample();
    println!("witness {}", r.witness);
    println!("root forces ~~P(x): {}", r.double_negation_forced_m0);
    println!("root forces P(x): {}", r.p_forced_m0);
    println!("top forces P(x): {}", r.p_forced_m1);
    println!("counterexample: {}", r.is_counterexample());
    let ef = check_ef_axioms(50, 7);
    println!("field axioms on {} instances, {} failures", ef.instances.len(), ef.failures().count());
}
