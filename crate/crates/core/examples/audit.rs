//! A small seeded audit of every axiom and theorem in both field modes.

use eg_core::audit::audit_run;
use eg_core::field::FieldMode;

fn main() {
    for mode in [FieldMode::Constructible, FieldMode::NonArchimedean] {
        let r = audit_run(mode, 20, 3, 1);
        print!("{}", r.summary());
    }
}
