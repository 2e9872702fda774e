//! Quantum expanders from Cayley graphs of finite groups.
//!
//! Given a generator multiset `Γ` of a finite group `G` and an irreducible
//! unitary representation `r_λ`, the channel
//! `ℰ(ρ) = (1/|Γ|) Σ_{γ∈Γ} r_λ(γ) ρ r_λ(γ)†` is a unital quantum channel. Its
//! second singular value `λ₂(ℰ)` (the norm on the complement of the
//! maximally mixed state) never exceeds that of the classical Cayley walk
//! `W_Γ`. This crate builds both operators and compares the two numbers.
//!
//! ```
//! use qexpander::{verify_gap_inequality, GapOptions, GeneratorSet, GroupSpec, IrrepHandle};
//!
//! let s3 = GroupSpec::symmetric(3);
//! let gens = GeneratorSet::parse(s3.clone(), &["(1 2)", "(1 2 3)"]).unwrap();
//! let std = IrrepHandle::parse(&s3, "(2,1)").unwrap();
//! let report = verify_gap_inequality(&s3, &gens, &std, &GapOptions::default()).unwrap();
//! assert_eq!(report.inequality_holds, Some(true));
//! ```

pub mod cayley;
pub mod channel;
pub mod error;
pub mod group;
pub mod rep;
pub mod spectral;
pub mod standard;

pub use cayley::{build_walk, classical_lambda2, Lambda2, Method, WalkOperator};
pub use channel::{
    build_channel, quantum_lambda2_dense, quantum_lambda2_iterative, superoperator, verify_gap_inequality, ChannelMap,
    DensityMatrix, ExpanderChannel, GapOptions, MethodChoice, SpectralReport,
};
pub use error::{Error, Result};
pub use group::{closure, GeneratorSet, GroupElement, GroupSpec, Permutation, DEFAULT_ELEMENT_CAP};
pub use rep::{list_irreps, IrrepHandle, IrrepLabel, Partition};
pub use spectral::{NormEstimate, PowerOptions};
pub use standard::{standard_channel_lambda2, ExplicitPermutations, PermutationOracle, StandardRepChannel};
