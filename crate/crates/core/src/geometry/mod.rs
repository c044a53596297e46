//! Points of F² and the analytic reading of the geometric relations,
//! evaluated at a node of the two-node Kripke frame.

mod point;
mod predicates;

use std::marker::PhantomData;

use serde::{Deserialize, Serialize};

use crate::field::{Base, FieldElement};

pub use point::{line_intersection, NaPt, Point, Pt};
pub use predicates::{
    AngleWitness, DistinctClause, DistinctWitness, GeometryError, Outcome, PredicateKind, Vertex, Witness,
};

/// Node of the Kripke frame at which positivity is read.
///
/// `Classical` is the top node (plain order of the field); `Root` reads
/// positivity as "positive and not infinitesimal". Over the rationals the
/// two coincide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Node {
    Root,
    Classical,
}

/// The plane F² seen from one node.
#[derive(Debug)]
pub struct Plane<B: Base> {
    node: Node,
    _base: PhantomData<fn() -> B>,
}

impl<B: Base> Clone for Plane<B> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<B: Base> Copy for Plane<B> {}

impl<B: Base> Default for Plane<B> {
    fn default() -> Self {
        Plane::classical()
    }
}

impl<B: Base> Plane<B> {
    pub fn at(node: Node) -> Self {
        Plane { node, _base: PhantomData }
    }

    pub fn classical() -> Self {
        Plane::at(Node::Classical)
    }

    pub fn root() -> Self {
        Plane::at(Node::Root)
    }

    pub fn node(&self) -> Node {
        self.node
    }

    /// The positivity predicate P at this node.
    pub fn pos(&self, x: &FieldElement<B>) -> bool {
        match self.node {
            Node::Classical => x.is_positive(),
            Node::Root => B::positive_at_root(x),
        }
    }
}
