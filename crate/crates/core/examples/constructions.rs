//! Ruler-and-compass constructions with a recorded trace: equilateral
//! apex, the midpoint without collapsing compass, and a 150 degree tiling.

use eg_core::construct::{AngleKind, Constructor, PerpMode};
use eg_core::geometry::Pt;

fn main() {
    let mut k = Constructor::classical();
    let (a, b) = (Pt::int(0, 0), Pt::int(4, 0));
    let c = k.equilateral(&a, &b, None).unwrap();
    println!("equilateral apex {}", c.render());
    let m = k.midpoint_gupta(&a, &b).unwrap();
    println!("midpoint {}", m.render());
    let f = k.perpendicular(PerpMode::Drop, &c, &a, &b, None).unwrap();
    println!("foot of c on ab {}", f.foot.render());
    let t = k.named_angle_tiling(AngleKind::Deg150, &a, &b, None).unwrap();
    println!("150 degree tiling: {} points, all relations hold: {}", t.points.len(), t.failing(&k.plane).is_none());
    println!("{} trace steps", k.trace().len());
    for s in k.trace().iter().filter(|s| s.depth == 0) {
        println!("  {}", s.op);
    }
}
