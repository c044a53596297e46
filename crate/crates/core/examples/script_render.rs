//! Parse and run a construction script, then render it as SVG.

use eg_core::dsl::{parse_script, render_svg, run_script, RenderOptions};
use eg_core::field::Rational;
use eg_core::geometry::Node;

const SRC: &str = "
point a 0 0;
point b 4 0;
let c = equilateral(a, b);
let m = midpoint(a, b);
assert between(a, m, b);
assert cong(a, c, b, c);
render \"equilateral triangle\";
";

fn main() {
    let script = parse_script(SRC).unwrap();
    print!("{script}");
    let env = run_script::<Rational>(&script, Node::Classical);
    print!("{}", env.report());
    let svg = render_svg(&env, &RenderOptions::default()).unwrap();
    println!("{} bytes of SVG", svg.len());
}
