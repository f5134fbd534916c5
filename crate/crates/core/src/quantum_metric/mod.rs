//! Quantum-metric structure on truncated Toeplitz algebras: Lip-norms, the
//! ζ-tail constants γ_α = ζ(α+2) − 1, the bridge seminorm connecting the
//! operator side to C(S^{2d−1}), states and their distance LP, and
//! Hausdorff estimates between state nets with the certified 2γ envelope.

pub mod bridge;
pub mod gamma;
pub mod hausdorff;
pub mod lemma;
pub mod lip;
pub mod lp;
pub mod state;

pub use bridge::{bridge_n, combined_lip, BridgeConfig};
pub use gamma::{gamma, qgh_upper_bound};
pub use hausdorff::{hausdorff_estimate, HausdorffReport};
pub use lemma::{lemma_bound_check, lemma_bound_check_seq, LemmaReport};
pub use lip::{lip_compact_norm, pi_of, LipCompactOperator, LipElement};
pub use lp::{rho_distance_lp, HarmonicBasis, RhoFamily, RhoSolution, RhoSolver};
pub use state::{evaluate_state, DensityMatrix, State};
