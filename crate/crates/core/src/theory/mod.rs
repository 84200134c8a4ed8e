//! Closed-form predictions, mirror strategies, and the harness that checks both against the solver.

pub mod classify;
pub mod involution;
pub mod verify;

pub use classify::{classify_family, classify_multipartite, Predicted, Prediction, Rule};
pub use involution::{find_near_involution, find_pairing_involution, product_involution, Involution};
pub use verify::{automorphism_soundness, verify, Counterexample, Suite, VerificationReport};
