use thiserror::Error;

use crate::graph::Vertex;

/// Errors raised while building or inspecting graphs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({u}, {v}): vertex {bad} out of range for n = {n}")]
    EndpointOutOfRange {
        u: Vertex,
        v: Vertex,
        bad: Vertex,
        n: usize,
    },
    #[error("edge ({v}, {v}): self-loops are not allowed")]
    SelfLoop { v: Vertex },
    #[error("canonicalization refused: n = {n} exceeds the bound {bound}")]
    CanonBound { n: usize, bound: usize },
}

/// Errors raised by k-tree construction and editing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KTreeError {
    #[error("k must be positive")]
    ZeroK,
    #[error("n = {n} is smaller than k = {k}")]
    TooFewVertices { k: usize, n: usize },
    #[error("attachment set {set:?} is not a {k}-clique")]
    NotAClique { set: Vec<Vertex>, k: usize },
    #[error("graph is not a {k}-tree: {residue_vertices} vertices remain irreducible")]
    NotAKTree { k: usize, residue_vertices: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Errors raised by index evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("exponent c must be positive, got {0}")]
    NonPositiveExponent(String),
    #[error("exact mode needs an integer exponent, got {0}")]
    NonIntegerExact(String),
    #[error("log-domain value undefined: vertex {0} has degree 0")]
    ZeroDegree(Vertex),
    #[error("closed form needs n >= k + 1 (k = {k}, n = {n})")]
    Domain { k: usize, n: usize },
}

/// Errors raised by census operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("labeled census exceeds the bound of {bound} graphs")]
    LabeledBound { bound: usize },
    #[error("filter scan needs {needed} candidates, above the budget of {budget}")]
    FilterBudget { needed: u128, budget: u128 },
    #[error(transparent)]
    KTree(#[from] KTreeError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Index(#[from] IndexError),
}

/// Errors raised while parsing the edge-list text format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: vertex {vertex} out of range")]
    OutOfRange { line: usize, vertex: usize },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("missing header line \"n k\"")]
    MissingHeader,
}

/// Errors raised when a rewiring move is applied.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("move does not apply: {0}")]
    Inapplicable(String),
    #[error("rewired graph is not a {k}-tree: {residue_vertices} vertices remain irreducible")]
    Rejected {
        k: usize,
        residue_vertices: usize,
        /// Edges of the irreducible residue, the certificate of failure.
        residue_edges: Vec<crate::graph::Edge>,
    },
}
