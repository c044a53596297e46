//! Script interpreter over either field.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{Call, Script, Stmt};
use crate::arith::{AxisPoint, CoordinateFrame};
use crate::construct::{AngleKind, ConstructionError, Constructor, ErrorKind, PerpMode, PrimitiveKind, ReflectDatum, Step};
use crate::field::{Base, FieldMode, RatFunc, Rational};
use crate::geometry::{Node, Plane, Point, PredicateKind};

/// Given points are declared by coordinates; asserted points are produced
/// by a construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointRole {
    Given,
    Asserted,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Binding<B: Base> {
    pub name: String,
    pub point: Point<B>,
    pub role: PointRole,
}

/// A top-level operation call with its exact inputs and outputs.
#[derive(Clone, Debug, PartialEq)]
pub struct CallRecord<B: Base> {
    pub stmt: usize,
    pub op: String,
    pub inputs: Vec<Point<B>>,
    pub outputs: Vec<Point<B>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum Status {
    Bound,
    Holds,
    AssertFailed,
    Rendered,
    Error(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StmtResult {
    pub index: usize,
    pub line: usize,
    pub column: usize,
    pub text: String,
    #[serde(flatten)]
    pub status: Status,
}

impl StmtResult {
    pub fn is_failure(&self) -> bool {
        matches!(self.status, Status::AssertFailed | Status::Error(_))
    }
}

impl fmt::Display for StmtResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match &self.status {
            Status::Bound => "ok".to_string(),
            Status::Holds => "holds".to_string(),
            Status::Rendered => "render".to_string(),
            Status::AssertFailed => "FAILED".to_string(),
            Status::Error(e) => format!("ERROR {e}"),
        };
        write!(f, "{}:{}: {}  {}", self.line, self.column, self.text, s)
    }
}

/// State after running a script, returned even when statements fail.
#[derive(Clone, Debug)]
pub struct Env<B: Base> {
    pub node: Node,
    pub bindings: Vec<Binding<B>>,
    pub trace: Vec<Step<B>>,
    pub calls: Vec<CallRecord<B>>,
    pub results: Vec<StmtResult>,
    pub renders: Vec<String>,
}

impl<B: Base> Env<B> {
    pub fn mode(&self) -> FieldMode {
        B::MODE
    }

    pub fn get(&self, name: &str) -> Option<&Point<B>> {
        self.bindings.iter().find(|b| b.name == name).map(|b| &b.point)
    }

    pub fn failures(&self) -> impl Iterator<Item = &StmtResult> {
        self.results.iter().filter(|r| r.is_failure())
    }

    /// Re-executes every recorded call on its recorded inputs and checks
    /// that the outputs are reproduced exactly.
    pub fn replay(&self) -> Result<(), String> {
        for c in &self.calls {
            let mut k = Constructor::new(Plane::at(self.node));
            let out = apply_op(&mut k, &c.op, &c.inputs).map_err(|e| format!("{}: {e}", c.op))?;
            if out != c.outputs {
                return Err(format!("statement {}: {} changed on replay", c.stmt, c.op));
            }
        }
        Ok(())
    }

    /// One line per statement followed by the final bindings.
    pub fn report(&self) -> String {
        let mut s = String::new();
        for r in &self.results {
            s += &format!("{r}\n");
        }
        for b in &self.bindings {
            s += &format!("{} = {}\n", b.name, b.point.render());
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OpError {
    #[error("unknown operation {0}")]
    Unknown(String),
    #[error("{op} takes {expected} points, got {got}")]
    Arity { op: String, expected: String, got: usize },
    #[error("{0}")]
    Construction(#[from] ConstructionError),
}

/// Accepted argument counts and the number of outputs of an operation.
pub fn signature(op: &str) -> Option<(&'static [usize], usize)> {
    if let Ok(k) = PrimitiveKind::from_str(op) {
        let n: &'static [usize] = match k.params().len() {
            4 => &[4],
            5 => &[5],
            6 => &[6],
            7 => &[7],
            _ => &[11],
        };
        return Some((n, k.outputs()));
    }
    if let Ok(k) = AngleKind::from_str(op) {
        let n = match k {
            AngleKind::Deg60 | AngleKind::Deg120 => 5,
            AngleKind::Deg30 => 2,
            AngleKind::Deg150 => 7,
        };
        return Some((&[2, 3], n));
    }
    Some(match op {
        "lay_off" => (&[4], 1),
        "equilateral" => (&[2, 3], 1),
        "midpoint" => (&[2], 1),
        "perp_erect" | "perp_drop" | "perp_uniform" => (&[3, 4], 2),
        "reflect" => (&[2], 1),
        "reflect_line" => (&[3], 1),
        "angle_copy" => (&[6], 2),
        "bisect" => (&[3], 1),
        "crossbar" => (&[6], 1),
        "geo_add" | "geo_mul" => (&[2], 1),
        "geo_inv" | "geo_sqrt" => (&[1], 1),
        "coords" => (&[1], 2),
        "from_coords" => (&[2], 1),
        _ => return None,
    })
}

/// Runs a named construction. Arithmetic operations use the standard
/// frame `(0,0), (1,0), (0,1)`.
pub fn apply_op<B: Base>(k: &mut Constructor<B>, op: &str, a: &[Point<B>]) -> Result<Vec<Point<B>>, OpError> {
    let (arities, _) = signature(op).ok_or_else(|| OpError::Unknown(op.to_string()))?;
    if !arities.contains(&a.len()) {
        let expected = arities.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" or ");
        return Err(OpError::Arity { op: op.to_string(), expected, got: a.len() });
    }
    if let Ok(kind) = PrimitiveKind::from_str(op) {
        return Ok(k.primitive(kind, a)?);
    }
    if let Ok(kind) = AngleKind::from_str(op) {
        let t = k.named_angle_tiling(kind, &a[0], &a[1], a.get(2))?;
        return Ok(t.points.into_iter().skip(2).map(|(_, p)| p).collect());
    }
    let f = CoordinateFrame::<B>::default();
    let axis = |p: &Point<B>| match p.y.is_zero() {
        true => Ok(AxisPoint::new(p.x.clone())),
        false => Err(ConstructionError::new(ErrorKind::NotOnLine, "axis", "arithmetic operands lie on the x-axis")),
    };
    let perp = |k: &mut Constructor<B>, mode| {
        k.perpendicular(mode, &a[0], &a[1], &a[2], a.get(3)).map(|r| vec![r.foot, r.tip])
    };
    Ok(match op {
        "lay_off" => vec![k.lay_off(&a[0], &a[1], &a[2], &a[3])?],
        "equilateral" => vec![k.equilateral(&a[0], &a[1], a.get(2))?],
        "midpoint" => vec![k.midpoint_gupta(&a[0], &a[1])?],
        "perp_erect" => perp(k, PerpMode::Erect)?,
        "perp_drop" => perp(k, PerpMode::Drop)?,
        "perp_uniform" => perp(k, PerpMode::Uniform)?,
        "reflect" => vec![k.reflect(&a[0], &ReflectDatum::Point(a[1].clone()))?],
        "reflect_line" => vec![k.reflect(&a[0], &ReflectDatum::Line(a[1].clone(), a[2].clone()))?],
        "angle_copy" => {
            let (x, y) = k.angle_copy(&a[0], &a[1], &a[2], &a[3], &a[4], &a[5])?;
            vec![x, y]
        }
        "bisect" => vec![k.angle_bisect(&a[0], &a[1], &a[2])?],
        "crossbar" => vec![k.crossbar_point(&a[0], &a[1], &a[2], &a[3], &a[4], &a[5])?],
        "geo_add" => vec![k.geo_add(&f, &axis(&a[0])?, &axis(&a[1])?)?.p],
        "geo_mul" => vec![k.geo_mul(&f, &axis(&a[0])?, &axis(&a[1])?)?.p],
        "geo_inv" => vec![k.geo_inv(&f, &axis(&a[0])?)?.p],
        "geo_sqrt" => vec![k.geo_sqrt(&f, &axis(&a[0])?, false)?.p],
        "coords" => {
            let (x, y) = k.coordinates(&f, &a[0])?;
            vec![x.p, y.p]
        }
        "from_coords" => vec![k.point_from_coords(&f, &axis(&a[0])?, &axis(&a[1])?)?],
        _ => unreachable!("signature covers every operation"),
    })
}

/// Evaluates an assertion; `eq` is exact point equality.
fn predicate<B: Base>(plane: &Plane<B>, call: &Call, args: &[Point<B>]) -> Result<bool, String> {
    if call.op == "eq" {
        return match args {
            [p, q] => Ok(p == q),
            _ => Err(format!("eq takes 2 points, got {}", args.len())),
        };
    }
    let kind = PredicateKind::from_str(&call.op).map_err(|_| format!("unknown predicate {}", call.op))?;
    plane.eval(kind, args).map(|o| o.holds()).map_err(|e| e.to_string())
}

fn lookup<B: Base>(bindings: &[Binding<B>], names: &[String]) -> Result<Vec<Point<B>>, String> {
    names
        .iter()
        .map(|n| bindings.iter().find(|b| &b.name == n).map(|b| b.point.clone()).ok_or_else(|| format!("unbound name {n}")))
        .collect()
}

fn bind<B: Base>(bindings: &mut Vec<Binding<B>>, name: &str, point: Point<B>, role: PointRole) -> Result<(), String> {
    if name == "_" {
        return Ok(());
    }
    if bindings.iter().any(|b| b.name == name) {
        return Err(format!("{name} is already bound"));
    }
    bindings.push(Binding { name: name.to_string(), point, role });
    Ok(())
}

/// Runs every statement in order at `node`; failures are recorded and
/// execution continues.
pub fn run_script<B: Base>(script: &Script, node: Node) -> Env<B> {
    let mut k = Constructor::<B>::new(Plane::at(node));
    let mut env = Env { node, bindings: Vec::new(), trace: Vec::new(), calls: Vec::new(), results: Vec::new(), renders: Vec::new() };
    for (i, stmt) in script.stmts.iter().enumerate() {
        let status = match exec(&mut k, &mut env, i, stmt) {
            Ok(s) => s,
            Err(e) => Status::Error(e),
        };
        let (line, column) = script.positions.get(i).copied().unwrap_or((0, 0));
        env.results.push(StmtResult { index: i, line, column, text: stmt.to_string(), status });
    }
    env.trace = k.take_trace();
    env
}

fn exec<B: Base>(k: &mut Constructor<B>, env: &mut Env<B>, i: usize, stmt: &Stmt) -> Result<Status, String> {
    match stmt {
        Stmt::Point { name, x, y } => {
            let x = x.eval::<B>().map_err(|e| e.to_string())?;
            let y = y.eval::<B>().map_err(|e| e.to_string())?;
            bind(&mut env.bindings, name, Point::new(x, y), PointRole::Given)?;
            Ok(Status::Bound)
        }
        Stmt::Let { names, call } => {
            let (_, outputs) = signature(&call.op).ok_or_else(|| format!("unknown operation {}", call.op))?;
            if names.len() != outputs {
                return Err(format!("{} yields {outputs} points, {} names given", call.op, names.len()));
            }
            let inputs = lookup(&env.bindings, &call.args)?;
            let out = apply_op(k, &call.op, &inputs).map_err(|e| e.to_string())?;
            for (n, p) in names.iter().zip(&out) {
                bind(&mut env.bindings, n, p.clone(), PointRole::Asserted)?;
            }
            env.calls.push(CallRecord { stmt: i, op: call.op.clone(), inputs, outputs: out });
            Ok(Status::Bound)
        }
        Stmt::Assert(call) => {
            let args = lookup(&env.bindings, &call.args)?;
            Ok(if predicate(&k.plane, call, &args)? { Status::Holds } else { Status::AssertFailed })
        }
        Stmt::Render(s) => {
            env.renders.push(s.clone());
            Ok(Status::Rendered)
        }
    }
}

/// Result of running a script in either field.
#[derive(Clone, Debug)]
pub enum RunOutput {
    Constructible(Env<Rational>),
    NonArch(Env<RatFunc>),
}

/// Constructible scripts run at the classical node; non-Archimedean
/// scripts run at the root, where guards refuse infinitesimal quantities.
pub fn run_script_mode(script: &Script, mode: FieldMode) -> RunOutput {
    match mode {
        FieldMode::Constructible => RunOutput::Constructible(run_script(script, Node::Classical)),
        FieldMode::NonArchimedean => RunOutput::NonArch(run_script(script, Node::Root)),
    }
}

impl RunOutput {
    pub fn results(&self) -> &[StmtResult] {
        match self {
            RunOutput::Constructible(e) => &e.results,
            RunOutput::NonArch(e) => &e.results,
        }
    }

    pub fn failure_count(&self) -> usize {
        self.results().iter().filter(|r| r.is_failure()).count()
    }

    pub fn report(&self) -> String {
        match self {
            RunOutput::Constructible(e) => e.report(),
            RunOutput::NonArch(e) => e.report(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_script;
    use crate::field::Constructible as C;
    use crate::geometry::Pt;

    fn run(src: &str) -> Env<Rational> {
        run_script(&parse_script(src).unwrap(), Node::Classical)
    }

    #[test]
    fn equilateral_script() {
        let env = run("point a 0 0; point b 1 0; let c = equilateral(a,b); assert distinct(a,c);");
        assert_eq!(env.failures().count(), 0);
        let c = env.get("c").unwrap();
        assert_eq!(*c, Pt::new(C::ratio(1, 2), C::from_int(3).sqrt_nonneg().unwrap() / C::from_int(2)));
        assert_eq!(env.results[3].status, Status::Holds);
        env.replay().unwrap();
    }

    #[test]
    fn gupta_script() {
        let env = run("point a 0 0; point b 2 0; let m = midpoint(a,b); point e 1 0; assert eq(m,e);");
        assert_eq!(env.failures().count(), 0);
        assert!(env.trace.len() > 10);
        assert!(env.trace.iter().any(|s| s.depth > 0));
    }

    #[test]
    fn infinitesimal_guard_recorded() {
        let s = parse_script(
            "point a 0 0; point p 1/2 eps/2; point c 1 eps; point b 2 0; point q 3/2 eps/2;\nlet x = inner_pasch(a,p,c,b,q);",
        )
        .unwrap();
        let RunOutput::NonArch(env) = run_script_mode(&s, FieldMode::NonArchimedean) else { panic!() };
        let Status::Error(e) = &env.results[5].status else { panic!("{:?}", env.results[5]) };
        assert!(e.starts_with(&format!("{:?}", ErrorKind::AngleNotPositive)), "{e}");
        assert_eq!(env.results[5].line, 2);
        assert!(env.get("x").is_none());
        let RunOutput::Constructible(env) = run_script_mode(&s, FieldMode::Constructible) else { panic!() };
        assert!(matches!(&env.results[2].status, Status::Error(e) if e.contains("eps")));
    }

    #[test]
    fn errors_are_partial() {
        let env = run("point a 0 0; let c = equilateral(a,z); point b 1 0; assert between(a,b,a); point e eps 0;");
        let st: Vec<_> = env.results.iter().map(|r| r.is_failure()).collect();
        assert_eq!(st, [false, true, false, true, true]);
        assert!(env.get("b").is_some());
    }

    #[test]
    fn arity_checked() {
        let env = run("point a 0 0; point b 1 0; let c, d = equilateral(a,b); let e = ext(a,b);");
        assert!(matches!(&env.results[2].status, Status::Error(e) if e.contains("yields 1")));
        assert!(matches!(&env.results[3].status, Status::Error(e) if e.contains("takes 4")));
    }
}
