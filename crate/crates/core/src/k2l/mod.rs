//! Logarithmic `K_{2,L}` groups and their decompositions.

mod decomposition;
mod group;

pub use group::K2LGroup;
pub use decomposition::{inverse_of, naturality, tensor_ring_map, Decomposition, K2LSide};
