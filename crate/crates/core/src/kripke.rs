//! The two-node Kripke model over a non-Archimedean field: the root `M0`
//! has the finitely bounded elements as domain and reads `P(x)` as "positive
//! and not infinitesimal"; `M1` is the whole field read classically.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::construct::{Constructor, ErrorKind};
use crate::field::{Base, NaNumber, RatFunc, Rational};
use crate::geometry::{NaPt, Node, Plane};

/// Nodes of the frame, `M0 ≤ M1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum KNode {
    M0,
    M1,
}

impl KNode {
    /// The nodes at or above this one.
    pub fn above(self) -> &'static [KNode] {
        match self {
            KNode::M0 => &[KNode::M0, KNode::M1],
            KNode::M1 => &[KNode::M1],
        }
    }

    /// The matching node of the geometric model.
    pub fn geometry_node(self) -> Node {
        match self {
            KNode::M0 => Node::Root,
            KNode::M1 => Node::Classical,
        }
    }
}

impl fmt::Display for KNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KNode::M0 => "M0",
            KNode::M1 => "M1",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Order-theoretic class of a non-Archimedean element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NaClass {
    pub sign: Sign,
    pub infinitesimal: bool,
    pub finitely_bounded: bool,
}

pub fn na_classify(x: &NaNumber) -> NaClass {
    match x.leading_term() {
        None => NaClass { sign: Sign::Zero, infinitesimal: false, finitely_bounded: true },
        Some(lt) => {
            let zero = Rational::from_integer(0.into());
            NaClass {
                sign: if lt.coeff.is_positive() { Sign::Positive } else { Sign::Negative },
                infinitesimal: lt.valuation > zero,
                finitely_bounded: lt.valuation >= zero,
            }
        }
    }
}

/// Field terms over variables.
#[derive(Clone, Debug, PartialEq)]
pub enum Term {
    Var(&'static str),
    Const(NaNumber),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Neg(Box<Term>),
    Inv(Box<Term>),
    Sqrt(Box<Term>),
}

/// Formulas with every existential Skolemized by a witness term.
#[derive(Clone, Debug, PartialEq)]
pub enum Formula {
    Pos(Term),
    Eq(Term, Term),
    And(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
    Exists { var: &'static str, witness: Term, body: Box<Formula> },
}

pub mod build {
    //! Short constructors for terms and formulas.
    use super::{Formula, Term};
    use crate::field::NaNumber;

    pub fn var(n: &'static str) -> Term {
        Term::Var(n)
    }
    pub fn int(n: i64) -> Term {
        Term::Const(NaNumber::from_int(n))
    }
    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }
    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }
    pub fn inv(a: Term) -> Term {
        Term::Inv(Box::new(a))
    }
    pub fn sqrt(a: Term) -> Term {
        Term::Sqrt(Box::new(a))
    }
    pub fn pos(t: Term) -> Formula {
        Formula::Pos(t)
    }
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }
    pub fn exists(var: &'static str, witness: Term, body: Formula) -> Formula {
        Formula::Exists { var, witness, body: Box::new(body) }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Const(c) => write!(f, "{c}"),
            Term::Add(a, b) => write!(f, "({a} + {b})"),
            Term::Mul(a, b) => write!(f, "{a}·{b}"),
            Term::Neg(a) => write!(f, "-{a}"),
            Term::Inv(a) => write!(f, "1/{a}"),
            Term::Sqrt(a) => write!(f, "√{a}"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Pos(t) => write!(f, "P({t})"),
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::And(a, b) => write!(f, "({a} ∧ {b})"),
            Formula::Implies(a, b) => write!(f, "({a} → {b})"),
            Formula::Not(a) => write!(f, "¬{a}"),
            Formula::Exists { var, witness, body } => write!(f, "∃{var}:={witness} {body}"),
        }
    }
}

pub type Env = BTreeMap<&'static str, NaNumber>;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum KripkeError {
    #[error("{var} is not in the domain of {node}")]
    DomainViolation { var: String, node: KNode },
    #[error("unbound variable {0}")]
    Unbound(String),
}

/// `None` when the term is undefined (division by zero, root of a negative).
pub fn eval_term(t: &Term, env: &Env) -> Result<Option<NaNumber>, KripkeError> {
    let go = |t: &Term| eval_term(t, env);
    Ok(match t {
        Term::Var(v) => Some(env.get(v).cloned().ok_or_else(|| KripkeError::Unbound(v.to_string()))?),
        Term::Const(c) => Some(c.clone()),
        Term::Add(a, b) => go(a)?.zip(go(b)?).map(|(x, y)| x + y),
        Term::Mul(a, b) => go(a)?.zip(go(b)?).map(|(x, y)| x * y),
        Term::Neg(a) => go(a)?.map(|x| -x),
        Term::Inv(a) => go(a)?.and_then(|x| x.inv().ok()),
        Term::Sqrt(a) => go(a)?.and_then(|x| x.sqrt_nonneg().ok()),
    })
}

fn in_domain(node: KNode, x: &NaNumber) -> bool {
    node == KNode::M1 || na_classify(x).finitely_bounded
}

fn atom_pos(node: KNode, x: &NaNumber) -> bool {
    match node {
        KNode::M0 => RatFunc::positive_at_root(x),
        KNode::M1 => x.is_positive(),
    }
}

/// Kripke forcing `node ⊩ phi` under `env`.
pub fn forces(node: KNode, phi: &Formula, env: &Env) -> Result<bool, KripkeError> {
    for (v, x) in env {
        if !in_domain(node, x) {
            return Err(KripkeError::DomainViolation { var: v.to_string(), node });
        }
    }
    force(node, phi, env)
}

fn force(node: KNode, phi: &Formula, env: &Env) -> Result<bool, KripkeError> {
    Ok(match phi {
        Formula::Pos(t) => eval_term(t, env)?.is_some_and(|x| atom_pos(node, &x)),
        Formula::Eq(a, b) => match (eval_term(a, env)?, eval_term(b, env)?) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        },
        Formula::And(a, b) => force(node, a, env)? && force(node, b, env)?,
        Formula::Implies(a, b) => {
            let mut ok = true;
            for &n in node.above() {
                ok &= !force(n, a, env)? || force(n, b, env)?;
            }
            ok
        }
        Formula::Not(a) => {
            let mut ok = true;
            for &n in node.above() {
                ok &= !force(n, a, env)?;
            }
            ok
        }
        Formula::Exists { var, witness, body } => match eval_term(witness, env)? {
            Some(w) if in_domain(node, &w) => {
                let mut env2 = env.clone();
                env2.insert(var, w);
                force(node, body, &env2)?
            }
            _ => false,
        },
    })
}

/// Plain two-valued truth in the field.
pub fn classical_eval(phi: &Formula, env: &Env) -> Result<bool, KripkeError> {
    Ok(match phi {
        Formula::Pos(t) => eval_term(t, env)?.is_some_and(|x| x.is_positive()),
        Formula::Eq(a, b) => {
            let (x, y) = (eval_term(a, env)?, eval_term(b, env)?);
            x.is_some() && x == y
        }
        Formula::And(a, b) => classical_eval(a, env)? && classical_eval(b, env)?,
        Formula::Implies(a, b) => !classical_eval(a, env)? || classical_eval(b, env)?,
        Formula::Not(a) => !classical_eval(a, env)?,
        Formula::Exists { var, witness, body } => match eval_term(witness, env)? {
            Some(w) => {
                let mut env2 = env.clone();
                env2.insert(var, w);
                classical_eval(body, &env2)?
            }
            None => false,
        },
    })
}

/// The Euclidean field axioms with Skolem witnesses `1/x` and `√x`.
pub fn ef_axioms() -> Vec<(&'static str, Formula)> {
    use build::*;
    let (x, y) = (|| var("x"), || var("y"));
    let sum_zero = || eq(add(x(), y()), int(0));
    vec![
        ("EF0", and(not(eq(int(0), int(1))), implies(not(not(eq(x(), y()))), eq(x(), y())))),
        ("EF1", implies(pos(x()), exists("y'", inv(x()), and(eq(mul(x(), var("y'")), int(1)), pos(var("y'")))))),
        ("EF2", implies(and(pos(x()), pos(y())), and(pos(add(x(), y())), pos(mul(x(), y()))))),
        ("EF3", implies(sum_zero(), not(and(pos(x()), pos(y()))))),
        ("EF4", implies(and(sum_zero(), and(not(pos(x())), not(pos(y())))), eq(x(), int(0)))),
        ("EF5", implies(and(sum_zero(), not(pos(y()))), exists("z", sqrt(x()), eq(mul(var("z"), var("z")), x())))),
    ]
}

/// Markov's principle for `P`.
pub fn markov() -> Formula {
    use build::*;
    implies(not(not(pos(var("x")))), pos(var("x")))
}

/// One evaluated axiom instance.
#[derive(Clone, Debug, Serialize)]
pub struct KripkeInstance {
    pub axiom: String,
    pub formula: String,
    pub env: BTreeMap<String, String>,
    /// Every environment value lies in the root domain `F0`.
    pub root_domain: bool,
    /// `false` when outside the root domain.
    pub forced_m0: bool,
    pub forced_m1: bool,
    pub classical: bool,
}

impl KripkeInstance {
    /// Forced at the root, monotone, and the top node agrees with classical
    /// truth. Probes outside the root domain only need the top node.
    pub fn ok(&self) -> bool {
        (self.forced_m0 || !self.root_domain) && self.forced_m1 && self.forced_m1 == self.classical
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EfReport {
    pub seed: u64,
    pub instances: Vec<KripkeInstance>,
}

impl EfReport {
    pub fn failures(&self) -> impl Iterator<Item = &KripkeInstance> {
        self.instances.iter().filter(|i| !i.ok())
    }
}

/// A finitely bounded sample mixing constants, infinitesimals and sums.
pub fn sample_f0(rng: &mut ChaCha8Rng) -> NaNumber {
    let eps = NaNumber::eps().expect("non-Archimedean base");
    let c = NaNumber::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4));
    let k = NaNumber::from_int(rng.gen_range(-5..=5));
    let eps2 = &eps * &eps;
    match rng.gen_range(0..6) {
        0 => NaNumber::zero(),
        1 => c,
        2 => k * eps,
        3 => c + k * eps,
        4 => c + k * eps2,
        _ => {
            let d = NaNumber::from_int(rng.gen_range(1..=3));
            (c + eps.clone()) / (d + eps)
        }
    }
}

/// An unbounded sample `c + k/ε` or `k/ε²`, outside `F0`.
pub fn sample_unbounded(rng: &mut ChaCha8Rng) -> NaNumber {
    let inv_eps = NaNumber::eps().expect("non-Archimedean base").inv().expect("ε is nonzero");
    let k = NaNumber::from_int(*[-3, -2, -1, 1, 2, 3].choose(rng).unwrap());
    match rng.gen_range(0..3) {
        0 => k * inv_eps,
        1 => NaNumber::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4)) + k * inv_eps,
        _ => k * &inv_eps * &inv_eps,
    }
}

pub fn instance(axiom: &str, phi: &Formula, env: &Env) -> Result<KripkeInstance, KripkeError> {
    let (root_domain, forced_m0) = match forces(KNode::M0, phi, env) {
        Ok(f) => (true, f),
        Err(KripkeError::DomainViolation { .. }) => (false, false),
        Err(e) => return Err(e),
    };
    Ok(KripkeInstance {
        axiom: axiom.to_string(),
        formula: phi.to_string(),
        env: env.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
        root_domain,
        forced_m0,
        forced_m1: forces(KNode::M1, phi, env)?,
        classical: classical_eval(phi, env)?,
    })
}

/// Checks EF0–EF5 at the root on `samples` environments per axiom. Every
/// fifth environment carries an unbounded probe, which the root must refuse
/// as outside its domain.
pub fn check_ef_axioms(samples: usize, seed: u64) -> EfReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instances = Vec::new();
    for (name, phi) in ef_axioms() {
        for i in 0..samples {
            let x = if i % 5 == 4 { sample_unbounded(&mut rng) } else { sample_f0(&mut rng) };
            let y = match rng.gen_range(0..3) {
                0 => sample_f0(&mut rng),
                1 => -x.clone(),
                _ => x.clone(),
            };
            let env = Env::from([("x", x), ("y", y)]);
            instances.push(instance(name, &phi, &env).expect("environment binds x and y"));
        }
    }
    EfReport { seed, instances }
}

/// Markov's principle refuted at the root by an infinitesimal.
#[derive(Clone, Debug, Serialize)]
pub struct MpReport {
    pub witness: String,
    pub double_negation_forced_m0: bool,
    pub p_forced_m0: bool,
    pub p_forced_m1: bool,
    pub mp_forced_m0: bool,
    /// `(0,0) # (ε,0)` at the root and at the top node.
    pub distinct_root: bool,
    pub distinct_classical: bool,
    /// `P(1)` at both nodes.
    pub one_positive_m0: bool,
    pub one_positive_m1: bool,
    /// Inner Pasch on a triangle with an infinitesimal angle: refused at
    /// the root with this error, constructed at the top node.
    pub pasch_root_error: Option<ErrorKind>,
    pub pasch_classical_point: Option<String>,
}

impl MpReport {
    pub fn is_counterexample(&self) -> bool {
        self.double_negation_forced_m0
            && !self.p_forced_m0
            && self.p_forced_m1
            && !self.mp_forced_m0
            && !self.distinct_root
            && self.distinct_classical
            && self.one_positive_m0
            && self.one_positive_m1
            && self.pasch_root_error == Some(ErrorKind::AngleNotPositive)
            && self.pasch_classical_point.is_some()
    }
}

pub fn mp_counterexample() -> MpReport {
    use build::*;
    let eps = NaNumber::eps().expect("non-Archimedean base");
    let env = Env::from([("x", eps.clone())]);
    let one = Env::from([("x", NaNumber::one())]);
    let px = pos(var("x"));
    let f = |n, phi: &Formula, e: &Env| forces(n, phi, e).expect("in domain");
    let root = Plane::<RatFunc>::root();
    let top = Plane::<RatFunc>::classical();
    let (o, e) = (NaPt::int(0, 0), NaPt::new(eps.clone(), NaNumber::zero()));
    let a = NaPt::int(0, 0);
    let b = NaPt::int(2, 0);
    let c = NaPt::new(NaNumber::one(), eps.clone());
    let (p, q) = (a.midpoint(&c), b.midpoint(&c));
    let pasch_root_error = Constructor::new(root).inner_pasch(&a, &p, &c, &b, &q).err().map(|e| e.kind);
    let pasch_classical_point = Constructor::new(top).inner_pasch(&a, &p, &c, &b, &q).ok().map(|x| x.render());
    MpReport {
        witness: eps.to_string(),
        double_negation_forced_m0: f(KNode::M0, &not(not(px.clone())), &env),
        p_forced_m0: f(KNode::M0, &px, &env),
        p_forced_m1: f(KNode::M1, &px, &env),
        mp_forced_m0: f(KNode::M0, &markov(), &env),
        distinct_root: root.distinct(&o, &e),
        distinct_classical: top.distinct(&o, &e),
        one_positive_m0: f(KNode::M0, &px, &one),
        one_positive_m1: f(KNode::M1, &px, &one),
        pasch_root_error,
        pasch_classical_point,
    }
}

#[cfg(test)]
mod tests {
    use super::build::*;
    use super::*;

    fn eps() -> NaNumber {
        NaNumber::eps().unwrap()
    }

    #[test]
    fn classify_examples() {
        let c = na_classify(&eps());
        assert_eq!(c, NaClass { sign: Sign::Positive, infinitesimal: true, finitely_bounded: true });
        let c = na_classify(&eps().inv().unwrap());
        assert_eq!((c.sign, c.finitely_bounded), (Sign::Positive, false));
        let c = na_classify(&(NaNumber::from_int(3) + eps()));
        assert_eq!(c, NaClass { sign: Sign::Positive, infinitesimal: false, finitely_bounded: true });
        let c = na_classify(&-(eps().sqrt_nonneg().unwrap()));
        assert_eq!(c, NaClass { sign: Sign::Negative, infinitesimal: true, finitely_bounded: true });
    }

    #[test]
    fn forcing_examples() {
        let env = Env::from([("x", eps())]);
        assert!(!forces(KNode::M0, &pos(var("x")), &env).unwrap());
        assert!(forces(KNode::M1, &pos(var("x")), &env).unwrap());
        assert!(forces(KNode::M0, &not(not(pos(var("x")))), &env).unwrap());
        let big = Env::from([("x", eps().inv().unwrap())]);
        assert!(matches!(forces(KNode::M0, &pos(var("x")), &big), Err(KripkeError::DomainViolation { .. })));
    }

    #[test]
    fn ef_examples() {
        let ax: BTreeMap<_, _> = ef_axioms().into_iter().collect();
        let x = NaNumber::from_int(3) + eps();
        let i = instance("EF1", &ax["EF1"], &Env::from([("x", x), ("y", NaNumber::one())])).unwrap();
        assert!(i.ok());
        let i = instance("EF2", &ax["EF2"], &Env::from([("x", eps()), ("y", NaNumber::one())])).unwrap();
        assert!(i.ok());
        let x = NaNumber::from_int(4) + eps();
        let env = Env::from([("x", x.clone()), ("y", -x.clone())]);
        let i = instance("EF5", &ax["EF5"], &env).unwrap();
        assert!(i.ok());
        let z = x.sqrt_nonneg().unwrap();
        assert_eq!(&z * &z, x);
    }

    #[test]
    fn ef_sampled() {
        let r = check_ef_axioms(40, 7);
        assert_eq!(r.instances.len(), 240);
        assert_eq!(r.failures().count(), 0);
        let outside = r.instances.iter().filter(|i| !i.root_domain).count();
        assert_eq!(outside, 48);
        assert!(r.instances.iter().filter(|i| i.root_domain).all(|i| i.forced_m0));
    }

    #[test]
    fn markov_fails() {
        let r = mp_counterexample();
        assert!(r.is_counterexample(), "{r:?}");
        assert_eq!(r.witness, "1*eps");
    }
}
