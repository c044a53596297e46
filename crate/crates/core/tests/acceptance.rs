//! Acceptance checks, one printed line per criterion. Exact throughout.

use std::collections::BTreeMap;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use eg_core::arith::{AxisPoint, CoordinateFrame};
use eg_core::audit::gen::Gen;
use eg_core::audit::{audit_run, AuditReport, AxiomId, TheoremId};
use eg_core::construct::{AngleKind, Constructor, ErrorKind};
use eg_core::dsl::{parse_script, render_svg, run_script, RenderOptions};
use eg_core::field::{Constructible as C, FieldMode, NaNumber, Rational};
use eg_core::geometry::{NaPt, Node, Plane, Pt};
use eg_core::kripke::{check_ef_axioms, mp_counterexample, na_classify};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

const AUDIT_BUDGET: Duration = Duration::from_secs(60);

fn criterion_1(r: &AuditReport) -> Outcome {
    let t = r.tallies();
    for id in AxiomId::ALL {
        let x = t.get(id.name()).ok_or(format!("{id} missing"))?;
        ensure(x.count == 1000, format!("{id}: {} instances", x.count))?;
        ensure(x.fail == 0, format!("{id}: {} failures", x.fail))?;
        ensure(x.pass + x.refused == x.count, format!("{id}: counts inconsistent"))?;
    }
    ensure(r.runtime < AUDIT_BUDGET, format!("runtime {:.1}s", r.runtime.as_secs_f64()))?;
    Ok(format!("{} axioms x 1000 instances, 0 failures, {:.1}s", AxiomId::ALL.len(), r.runtime.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let mp = mp_counterexample();
    ensure(mp.witness == "1*eps", format!("witness {}", mp.witness))?;
    ensure(mp.double_negation_forced_m0, "~~P(eps) not forced at the root")?;
    ensure(!mp.p_forced_m0, "P(eps) forced at the root")?;
    ensure(mp.is_counterexample(), format!("{mp:?}"))?;
    let ef = check_ef_axioms(200, 42);
    let failures = ef.failures().count();
    ensure(failures == 0, format!("{failures} EF failures"))?;
    let mut per_axiom: BTreeMap<&str, usize> = BTreeMap::new();
    for i in &ef.instances {
        *per_axiom.entry(i.axiom.as_str()).or_default() += 1;
    }
    ensure(per_axiom.len() == 6 && per_axiom.values().all(|&n| n >= 200), format!("{per_axiom:?}"))?;
    let unbounded = ef.instances.iter().filter(|i| !i.root_domain).count();
    let forced_in_domain = ef.instances.iter().filter(|i| i.root_domain).all(|i| i.forced_m0);
    ensure(unbounded > 0 && forced_in_domain, "root forcing or unbounded probes missing")?;
    let infinitesimal = ef
        .instances
        .iter()
        .filter(|i| i.env.values().any(|v| v.contains("eps") && !v.contains("/eps") && !v.contains("eps^-")))
        .count();
    ensure(infinitesimal > 0, "no infinitesimal environments")?;
    let e = NaNumber::eps().unwrap();
    ensure(na_classify(&e).infinitesimal && !na_classify(&e.inv().unwrap()).finitely_bounded, "ε classification")?;
    Ok(format!(
        "witness eps: ~~P forced, P not forced at root; EF0-EF5 forced on {} environments ({unbounded} unbounded probes)",
        ef.instances.len()
    ))
}

fn criterion_3() -> Outcome {
    let half = C::ratio(1, 2);
    for i in 0..100 {
        let mut g = Gen::<Rational>::new(3, 9001, i);
        let a = g.point();
        let b = g.distinct_from(&a);
        let m = Constructor::<Rational>::classical().midpoint_gupta(&a, &b).map_err(|e| format!("#{i}: {e}"))?;
        let oracle = Pt::new((&a.x + &b.x) * &half, (&a.y + &b.y) * &half);
        ensure(m == oracle, format!("#{i}: {} != {}", m.render(), oracle.render()))?;
    }
    Ok("100 random segments, midpoint_gupta = (a+b)/2 componentwise".into())
}

fn signed(g: &mut Gen<Rational>, sign: i32) -> C {
    let mut x = g.q().abs();
    if x.is_zero() {
        x = C::one();
    }
    match sign {
        0 => C::zero(),
        s if s < 0 => -x,
        _ => x,
    }
}

fn criterion_4() -> Outcome {
    let f = CoordinateFrame::<Rational>::default();
    let ax = |x: &C| AxisPoint::new(x.clone());
    let mut combos = std::collections::BTreeSet::new();
    for i in 0..100u64 {
        let mut g = Gen::<Rational>::new(4, 9002, i);
        let (sa, sb) = ((i % 3) as i32 - 1, ((i / 3) % 3) as i32 - 1);
        combos.insert((sa, sb));
        let (a, b) = (signed(&mut g, sa), signed(&mut g, sb));
        let mut k = Constructor::<Rational>::classical();
        let s = k.geo_add(&f, &ax(&a), &ax(&b)).map_err(|e| format!("add #{i}: {e}"))?;
        ensure(*s.value() == &a + &b, format!("add #{i}"))?;
        let p = k.geo_mul(&f, &ax(&a), &ax(&b)).map_err(|e| format!("mul #{i}: {e}"))?;
        ensure(*p.value() == &a * &b, format!("mul #{i}"))?;
        let c = signed(&mut g, if i % 2 == 0 { 1 } else { -1 });
        let r = k.geo_inv(&f, &ax(&c)).map_err(|e| format!("inv #{i}: {e}"))?;
        ensure(*r.value() == c.inv().unwrap(), format!("inv #{i}"))?;
        let d = signed(&mut g, if i % 10 == 0 { 0 } else { 1 });
        let q = k.geo_sqrt(&f, &ax(&d), false).map_err(|e| format!("sqrt #{i}: {e}"))?;
        ensure(*q.value() == d.sqrt_nonneg().unwrap(), format!("sqrt #{i}"))?;
    }
    ensure(combos.len() == 9, "sign combinations not covered")?;
    Ok("add, mul, inv, sqrt on 100 rationals each, all 9 sign combinations, exact".into())
}

fn criterion_5() -> Outcome {
    let eps = NaNumber::eps().unwrap();
    let a = NaPt::int(0, 0);
    let b = NaPt::int(2, 0);
    let c = NaPt::new(NaNumber::one(), eps);
    let (p, q) = (a.midpoint(&c), b.midpoint(&c));
    let err = Constructor::at(Node::Root).inner_pasch(&a, &p, &c, &b, &q).err().ok_or("root constructed the point")?;
    ensure(err.kind == ErrorKind::AngleNotPositive, format!("root error {err}"))?;
    let x = Constructor::at(Node::Classical).inner_pasch(&a, &p, &c, &b, &q).map_err(|e| format!("node 1: {e}"))?;
    let top = Plane::<eg_core::field::RatFunc>::classical();
    ensure(top.between(&p, &x, &b) && top.between(&q, &x, &a), "node 1 conclusion")?;
    ensure(top.proper_angle(&a, &c, &b), "node 1 guard")?;
    Ok(format!("apex (1,eps): root refuses with AngleNotPositive, node 1 gives x = {}", x.render()))
}

fn criterion_6() -> Outcome {
    let p = |x, y| Pt::int(x, y);
    let a = Pt::new(C::ratio(1, 2), C::ratio(-1, 2));
    let e = Constructor::<Rational>::classical()
        .euclid5(&p(0, 1), &p(0, -1), &p(1, 0), &p(-1, 0), &p(0, 0), &a)
        .map_err(|e| e.to_string())?;
    ensure(e == p(1, -2), format!("e = {}", e.render()))?;
    Ok("e = (1, -2)".into())
}

fn criterion_7() -> Outcome {
    for i in 0..50 {
        let mut g = Gen::<Rational>::new(7, 9007, i);
        let a = g.point();
        let b = g.distinct_from(&a);
        let mut k = Constructor::<Rational>::classical();
        let pl = k.plane;
        let t = k.named_angle_tiling(AngleKind::Deg120, &a, &b, None).map_err(|e| format!("deg120 #{i}: {e}"))?;
        ensure(pl.between(t.get("a"), t.get("x"), t.get("g")), format!("deg120 #{i}: B(a,x,g)"))?;
        let t = k.named_angle_tiling(AngleKind::Deg150, &a, &b, None).map_err(|e| format!("deg150 #{i}: {e}"))?;
        ensure(pl.between(t.get("a"), t.get("c"), t.get("e")), format!("deg150 #{i}: B(a,c,e)"))?;
        ensure(t.failing(&pl).is_none(), format!("deg150 #{i}: {:?}", t.failing(&pl)))?;
    }
    Ok("50 segments: deg120 B(a,x,g) and deg150 B(a,c,e) hold".into())
}

fn criterion_8(r: &AuditReport) -> Outcome {
    let t = r.tallies();
    for id in TheoremId::ALL {
        let x = t.get(id.name()).ok_or(format!("{id} missing"))?;
        ensure(x.count == 50 && x.pass == 50, format!("{id}: {}/{} pass", x.pass, x.count))?;
    }
    Ok(format!("{} theorems x 50 instances, all pass", TheoremId::ALL.len()))
}

fn normalize(v: &str) -> String {
    v.split([' ', ','])
        .map(|tok| match tok.parse::<f64>() {
            Ok(x) if x == 0.0 => "0".to_string(),
            Ok(x) => format!("{x:.9e}"),
            Err(_) => tok.to_string(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Multiset of elements, each with its attributes and text, numbers
/// normalized so only decimal formatting differences are ignored.
fn svg_elements(svg: &str) -> Result<BTreeMap<String, usize>, String> {
    let doc = roxmltree::Document::parse(svg).map_err(|e| e.to_string())?;
    let mut m = BTreeMap::new();
    for n in doc.descendants().filter(|n| n.is_element()) {
        let mut attrs: Vec<String> = n.attributes().map(|a| format!("{}={}", a.name(), normalize(a.value()))).collect();
        attrs.sort();
        let text = if n.tag_name().name() == "text" || n.tag_name().name() == "title" { n.text().unwrap_or("") } else { "" };
        *m.entry(format!("{} [{}] {}", n.tag_name().name(), attrs.join(" "), text)).or_default() += 1;
    }
    Ok(m)
}

fn figures() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("figures");
    let mut v: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "geo"))
        .collect();
    v.sort();
    v
}

fn criterion_9() -> Outcome {
    let files = figures();
    ensure(files.len() >= 10, format!("only {} scripts", files.len()))?;
    for f in &files {
        let name = f.file_name().unwrap().to_string_lossy();
        let src = fs::read_to_string(f).map_err(|e| e.to_string())?;
        let s = parse_script(&src).map_err(|e| format!("{name}: {e}"))?;
        let printed = s.to_string();
        let again = parse_script(&printed).map_err(|e| format!("{name} reprint: {e}"))?;
        ensure(again == s && again.to_string() == printed, format!("{name}: round trip"))?;
        let env = run_script::<Rational>(&s, Node::Classical);
        ensure(env.failures().count() == 0, format!("{name}: {:?}", env.failures().collect::<Vec<_>>()))?;
        env.replay().map_err(|e| format!("{name}: {e}"))?;
        let svg = render_svg(&env, &RenderOptions::default()).map_err(|e| format!("{name}: {e}"))?;
        let reference = fs::read_to_string(f.with_extension("svg")).map_err(|e| format!("{name}: {e}"))?;
        ensure(svg_elements(&svg)? == svg_elements(&reference)?, format!("{name}: SVG differs from reference"))?;
    }
    Ok(format!("{} scripts: parse/print identity, replay exact, SVG matches reference", files.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let report = audit_run(FieldMode::Constructible, 1000, 50, 42);
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("axiom audit", Box::new(|| criterion_1(&report))),
        ("Kripke MP independence", Box::new(criterion_2)),
        ("Gupta midpoint", Box::new(criterion_3)),
        ("geometric arithmetic", Box::new(criterion_4)),
        ("guard demonstration", Box::new(criterion_5)),
        ("Euclid 5 worked instance", Box::new(criterion_6)),
        ("tiling witnesses", Box::new(criterion_7)),
        ("theorem suite", Box::new(|| criterion_8(&report))),
        ("DSL round trip and rendering", Box::new(criterion_9)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let r = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match r {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass ({:.1}s)", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
