//! Sampled, exactly checked verification of the axioms and of the named
//! theorems on constructed instances.

mod axioms;
pub mod gen;
mod theorems;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::field::{Base, FieldMode, RatFunc, Rational};
use crate::geometry::{Node, Point};
use gen::Gen;

pub use theorems::exterior_angle;

macro_rules! named_enum {
    ($(#[$m:meta])* $name:ident { $($v:ident => $s:literal),* $(,)? }) => {
        $(#[$m])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
        pub enum $name { $($v),* }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$v),*];

            pub fn name(self) -> &'static str {
                match self { $($name::$v => $s),* }
            }

            fn ordinal(self) -> u64 {
                Self::ALL.iter().position(|&x| x == self).unwrap() as u64
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $name {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                Self::ALL.iter().copied().find(|x| x.name() == s).ok_or_else(|| format!("unknown name {s}"))
            }
        }
    };
}

named_enum!(
    /// The axioms of the geometry.
    AxiomId {
        A4i1 => "A4-i1",
        A4i2 => "A4-i2",
        A5 => "A5-i",
        A6 => "A6-i",
        A14 => "A14-i",
        A15 => "A15-i",
        A17 => "A17-i",
        A7i1 => "A7-i1",
        A7i2 => "A7-i2",
        LcStrict => "LC-strict",
        LcNonstrict => "LC-nonstrict",
        Cc => "CC",
        Euclid5 => "Euclid5",
        LowerDim => "LowerDim",
    }
);

named_enum!(
    /// Theorems checked on constructed instances.
    TheoremId {
        VerticalAngles => "vertical-angles",
        OuterTransitivity => "outer-transitivity",
        DistinctCongruence => "distinct-congruence",
        Crossbar => "crossbar",
        ExteriorAngle => "exterior-angle",
        LegLtHypotenuse => "leg-lt-hypotenuse",
        TriangleInequality => "triangle-inequality",
        AllRightAnglesCongruent => "all-right-angles-congruent",
        SaccheriHelper => "saccheri-helper",
        ParallelogramSides => "parallelogram-sides",
        ParallelogramDiagonals => "parallelogram-diagonals",
        LambertRectangle => "lambert-rectangle",
        PositiveHypotenuse => "positive-hypotenuse",
        PositiveImpliesApex => "positive-implies-apex",
        AngleBisection => "angle-bisection",
        TwoSidesExpressibility => "two-sides-expressibility",
    }
);

impl AxiomId {
    /// Existential axioms have a degenerate probe the guard must refuse.
    pub fn has_probe(self) -> bool {
        matches!(self, AxiomId::A4i1 | AxiomId::A4i2 | AxiomId::LcStrict | AxiomId::LcNonstrict)
    }
}

/// Every tenth instance (offset 5) of a probed axiom is a degenerate probe;
/// every tenth (offset 9) uses a tiny gap: `2^-32`, or ε in the
/// non-Archimedean field.
pub fn schedule(id: AxiomId, index: u64) -> (bool, bool) {
    (id.has_probe() && index % 10 == 5, index % 10 == 9)
}

/// A generated axiom instance: named points satisfying the hypotheses.
#[derive(Clone, Debug)]
pub struct Instance<B: Base> {
    pub id: AxiomId,
    pub index: u64,
    pub points: Vec<(&'static str, Point<B>)>,
    /// A degenerate configuration the guard is expected to refuse.
    pub probe: bool,
    pub tiny: bool,
}

impl<B: Base> Instance<B> {
    pub fn get(&self, name: &str) -> &Point<B> {
        &self.points.iter().find(|(n, _)| *n == name).unwrap_or_else(|| panic!("no point {name}")).1
    }
}

pub fn gen_instance<B: Base>(id: AxiomId, seed: u64, index: u64) -> Instance<B> {
    let (probe, tiny) = schedule(id, index);
    let mut g = Gen::<B>::new(seed, id.ordinal(), index);
    let points = axioms::generate(id, &mut g, probe, tiny);
    Instance { id, index, points, probe, tiny }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    /// Refused by a guard: an expected probe refusal, or at the root node
    /// an instance that holds classically.
    Refused(String),
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }
}

pub fn check_axiom<B: Base>(inst: &Instance<B>, node: Node) -> Verdict {
    axioms::check(inst.id, inst, node)
}

const THEOREM_STREAM: u64 = 1000;

pub fn check_theorem<B: Base>(id: TheoremId, seed: u64, index: u64, node: Node) -> Verdict {
    let stream = THEOREM_STREAM + id.ordinal();
    let attempt = |n: Node| theorems::run(id, &mut Gen::<B>::new(seed, stream, index), n);
    match attempt(node) {
        Err(what) => Verdict::Fail(format!("conclusion {what} fails")),
        Ok(Ok(())) => Verdict::Pass,
        Ok(Err(e)) if node == Node::Root => match attempt(Node::Classical) {
            Ok(Ok(())) => Verdict::Refused(format!("root: {e}; classical: holds")),
            _ => Verdict::Fail(format!("root: {e}; classical fails too")),
        },
        Ok(Err(e)) => Verdict::Fail(e.to_string()),
    }
}

/// One line of the JSON report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub axiom_id: String,
    pub instance_index: u64,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub seed: u64,
}

impl Entry {
    fn new(id: &str, index: u64, seed: u64, v: Verdict) -> Self {
        let (verdict, detail) = match v {
            Verdict::Pass => ("pass", None),
            Verdict::Fail(d) => ("fail", Some(d)),
            Verdict::Refused(d) => ("refused", Some(d)),
        };
        Entry { axiom_id: id.to_string(), instance_index: index, verdict, detail, seed }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub count: usize,
    pub pass: usize,
    pub fail: usize,
    pub refused: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub mode: FieldMode,
    pub seed: u64,
    pub samples: usize,
    pub theorem_samples: usize,
    pub entries: Vec<Entry>,
    /// Wall-clock time; not serialized so equal seeds give equal JSON.
    #[serde(skip)]
    pub runtime: Duration,
}

impl AuditReport {
    pub fn tallies(&self) -> BTreeMap<&str, Tally> {
        let mut m: BTreeMap<&str, Tally> = BTreeMap::new();
        for e in &self.entries {
            let t = m.entry(e.axiom_id.as_str()).or_default();
            t.count += 1;
            match e.verdict {
                "pass" => t.pass += 1,
                "fail" => t.fail += 1,
                _ => t.refused += 1,
            }
        }
        m
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.verdict == "fail")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable per-name summary.
    pub fn summary(&self) -> String {
        let mut s = format!("audit mode={} seed={} samples={}\n", self.mode, self.seed, self.samples);
        for (name, t) in self.tallies() {
            s += &format!("{name:<28} count={:<5} pass={:<5} refused={:<4} fail={}\n", t.count, t.pass, t.refused, t.fail);
        }
        s += &format!("failures: {}  runtime: {:.2}s\n", self.failures().count(), self.runtime.as_secs_f64());
        s
    }
}

fn run_mode<B: Base>(node: Node, samples: usize, theorem_samples: usize, seed: u64) -> Vec<Entry> {
    let mut jobs: Vec<(Option<AxiomId>, Option<TheoremId>, u64)> = Vec::new();
    for &id in AxiomId::ALL {
        jobs.extend((0..samples as u64).map(|i| (Some(id), None, i)));
    }
    for &id in TheoremId::ALL {
        jobs.extend((0..theorem_samples as u64).map(|i| (None, Some(id), i)));
    }
    jobs.into_par_iter()
        .map(|(ax, th, i)| match (ax, th) {
            (Some(id), _) => Entry::new(id.name(), i, seed, check_axiom(&gen_instance::<B>(id, seed, i), node)),
            (_, Some(id)) => Entry::new(id.name(), i, seed, check_theorem::<B>(id, seed, i, node)),
            _ => unreachable!(),
        })
        .collect()
}

/// Runs every axiom `samples` times and every theorem `theorem_samples`
/// times. Constructible mode checks at the classical node, the
/// non-Archimedean mode at the root.
pub fn audit_run(mode: FieldMode, samples: usize, theorem_samples: usize, seed: u64) -> AuditReport {
    let start = Instant::now();
    let entries = match mode {
        FieldMode::Constructible => run_mode::<Rational>(Node::Classical, samples, theorem_samples, seed),
        FieldMode::NonArchimedean => run_mode::<RatFunc>(Node::Root, samples, theorem_samples, seed),
    };
    AuditReport { mode, seed, samples, theorem_samples, entries, runtime: start.elapsed() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for &id in AxiomId::ALL {
            assert_eq!(id.name().parse::<AxiomId>().unwrap(), id);
        }
        assert_eq!(AxiomId::ALL.len(), 14);
        assert_eq!(TheoremId::ALL.len(), 16);
    }

    #[test]
    fn small_constructible_audit() {
        let r = audit_run(FieldMode::Constructible, 20, 4, 42);
        let fails: Vec<_> = r.failures().collect();
        assert!(fails.is_empty(), "{fails:#?}");
        let t = r.tallies();
        assert_eq!(t["A4-i1"].refused, 2);
        assert_eq!(t["A7-i1"].refused, 0);
    }

    #[test]
    fn small_nonarch_audit() {
        let r = audit_run(FieldMode::NonArchimedean, 20, 2, 7);
        let fails: Vec<_> = r.failures().collect();
        assert!(fails.is_empty(), "{fails:#?}");
        assert!(r.tallies()["A7-i1"].refused > 0);
    }

    #[test]
    fn deterministic_json() {
        let a = audit_run(FieldMode::Constructible, 6, 1, 3).to_json();
        let b = audit_run(FieldMode::Constructible, 6, 1, 3).to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_audit() {
        assert!(audit_run(FieldMode::Constructible, 0, 0, 1).entries.is_empty());
    }
}
