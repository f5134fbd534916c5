pub mod commutator;
pub mod gamma;
pub mod harmonic;
pub mod kernel;
pub mod lemma;
pub mod qgh;
pub mod rho;
pub mod toeplitz;
pub mod udiff;
pub mod weights;
