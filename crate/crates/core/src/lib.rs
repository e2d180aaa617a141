pub mod actions;
pub mod configuration;
pub mod knot;
pub mod presentation;
pub mod report;
pub mod scenario;
pub mod surgery;
pub mod sw;
pub(crate) mod util;

pub use util::{extended_gcd, gcd, lcm};
