pub mod arith;
pub mod error;
pub mod group;
mod lattice;
pub mod cover;
pub mod equations;
pub mod divisor;
pub mod enumerate;
pub mod differentials;
pub mod jacobian;
