use core::fmt;

use crate::graph::NodeId;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter was outside its domain.
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },
    /// A behavior set violated its construction invariants.
    InvalidBehaviors(&'static str),
    /// Influence weight requested for a node without neighbors.
    IsolatedNode(NodeId),
    NodeOutOfRange { node: NodeId, node_count: usize },
    /// A seed holds behaviors whose combined cost exceeds its resource.
    SeedUnaffordable {
        node: NodeId,
        cost: f64,
        resource: f64,
    },
    /// Too many signaled behaviors for exact enumeration; use Monte Carlo instead.
    EnumerationCap { signaled: usize, cap: usize },
    /// The operation is only defined for sticky adoption.
    RequiresSticky,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter { name, reason } => write!(f, "invalid `{name}`: {reason}"),
            Error::InvalidBehaviors(reason) => write!(f, "invalid behavior set: {reason}"),
            Error::IsolatedNode(v) => write!(f, "node {v} has no neighbors"),
            Error::NodeOutOfRange { node, node_count } => {
                write!(f, "node {node} out of range for graph with {node_count} nodes")
            }
            Error::SeedUnaffordable {
                node,
                cost,
                resource,
            } => write!(
                f,
                "seed {node} holds behaviors costing {cost} but has resource {resource}"
            ),
            Error::EnumerationCap { signaled, cap } => write!(
                f,
                "{signaled} signaled behaviors exceed the exact enumeration cap of {cap}; \
                 estimate by Monte Carlo instead"
            ),
            Error::RequiresSticky => f.write_str("operation requires sticky adoption"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn invalid(name: &'static str, reason: &'static str) -> Error {
    Error::InvalidParameter { name, reason }
}
