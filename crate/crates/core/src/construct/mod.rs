//! Guarded ruler-and-compass constructions. Every operation checks the
//! hypotheses of the axiom it realizes, computes the asserted point exactly,
//! and re-checks the conclusion before returning it.

mod derived;
mod primitives;
mod tiling;

use std::fmt;

use serde::Serialize;

use crate::field::Base;
use crate::geometry::{Node, Plane, Point};

pub use derived::{PerpMode, Perpendicular, ReflectDatum};
pub use primitives::PrimitiveKind;
pub use tiling::{AngleKind, Tiling};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ErrorKind {
    NotDistinct,
    AngleNotPositive,
    AngleNotLtPi,
    NotInside,
    CirclesSeparated,
    NotOnLine,
    NotOffLine,
    Negative,
    PreconditionViolated,
    /// The computed point failed its own conclusion; indicates a defect.
    PostconditionFailed,
}

/// A refused or failed construction, naming the operation (axiom id for
/// primitives) and the hypothesis that did not hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
pub struct ConstructionError {
    pub kind: ErrorKind,
    pub op: &'static str,
    pub hypothesis: String,
}

impl fmt::Display for ConstructionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} in {}: {}", self.kind, self.op, self.hypothesis)
    }
}

impl ConstructionError {
    pub fn new(kind: ErrorKind, op: &'static str, hypothesis: impl Into<String>) -> Self {
        ConstructionError { kind, op, hypothesis: hypothesis.into() }
    }
}

pub type CResult<T> = Result<T, ConstructionError>;

pub(crate) fn require(cond: bool, kind: ErrorKind, op: &'static str, hyp: &str) -> CResult<()> {
    if cond {
        Ok(())
    } else {
        Err(ConstructionError::new(kind, op, hyp))
    }
}

/// Circle given by its center and a radius segment `pq`.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleSpec<B: Base> {
    pub center: Point<B>,
    pub p: Point<B>,
    pub q: Point<B>,
}

impl<B: Base> CircleSpec<B> {
    pub fn new(center: Point<B>, p: Point<B>, q: Point<B>) -> Self {
        CircleSpec { center, p, q }
    }

    /// Circle about `center` through `through`.
    pub fn through(center: &Point<B>, through: &Point<B>) -> Self {
        CircleSpec::new(center.clone(), center.clone(), through.clone())
    }
}

/// Drawing hint attached to a trace step.
#[derive(Clone, Debug, PartialEq)]
pub enum Mark<B: Base> {
    Segment(Point<B>, Point<B>),
    Circle { center: Point<B>, through: Point<B> },
    /// Shaded triangle of a Pasch configuration.
    Shade(Vec<Point<B>>),
}

/// One recorded construction call.
#[derive(Clone, Debug, PartialEq)]
pub struct Step<B: Base> {
    pub op: &'static str,
    /// Nesting depth: 0 for calls made directly by the user.
    pub depth: usize,
    pub inputs: Vec<Point<B>>,
    pub outputs: Vec<Point<B>>,
    pub marks: Vec<Mark<B>>,
}

/// Serializable view of a step with canonical text coordinates.
#[derive(Clone, Debug, Serialize)]
pub struct StepRecord {
    pub op: String,
    pub depth: usize,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

impl<B: Base> Step<B> {
    pub fn record(&self) -> StepRecord {
        StepRecord {
            op: self.op.to_string(),
            depth: self.depth,
            inputs: self.inputs.iter().map(Point::render).collect(),
            outputs: self.outputs.iter().map(Point::render).collect(),
        }
    }
}

/// Runs constructions at one node and records a trace of every call.
#[derive(Clone, Debug)]
pub struct Constructor<B: Base> {
    pub plane: Plane<B>,
    trace: Vec<Step<B>>,
    depth: usize,
}

impl<B: Base> Default for Constructor<B> {
    fn default() -> Self {
        Constructor::new(Plane::classical())
    }
}

impl<B: Base> Constructor<B> {
    pub fn new(plane: Plane<B>) -> Self {
        Constructor { plane, trace: Vec::new(), depth: 0 }
    }

    pub fn classical() -> Self {
        Constructor::new(Plane::classical())
    }

    pub fn at(node: Node) -> Self {
        Constructor::new(Plane::at(node))
    }

    pub fn trace(&self) -> &[Step<B>] {
        &self.trace
    }

    pub fn take_trace(&mut self) -> Vec<Step<B>> {
        std::mem::take(&mut self.trace)
    }

    fn record(&mut self, op: &'static str, inputs: &[&Point<B>], outputs: &[&Point<B>], marks: Vec<Mark<B>>) {
        self.trace.push(Step {
            op,
            depth: self.depth,
            inputs: inputs.iter().map(|p| (*p).clone()).collect(),
            outputs: outputs.iter().map(|p| (*p).clone()).collect(),
            marks,
        });
    }

    /// Runs a derived construction one level deeper in the trace.
    fn nested<T>(&mut self, f: impl FnOnce(&mut Self) -> CResult<T>) -> CResult<T> {
        self.depth += 1;
        let r = f(self);
        self.depth -= 1;
        r
    }
}
