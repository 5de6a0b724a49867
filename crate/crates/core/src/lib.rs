//! Construction and verification of integer relative Heffter arrays
//! `H_t(m, n; s, k)`.
//!
//! [`construct`] dispatches on `(s mod 4, k mod 4)` and always re-verifies its
//! output with [`verify_full`], which shares no code with the builders.

pub mod array;
pub mod assemble;
pub mod build;
pub mod catalog;
pub mod error;
pub mod io;
pub mod oracle;
pub mod params;
pub mod sequence;
pub mod support;
pub mod sweep;
pub mod verify;

pub use array::{juxtapose, Block, PFArray, Shift};
pub use assemble::{
    assemble_diagonal, assemble_p, assemble_s2, assemble_s2_transposed, assemble_sk2, construct,
    Construction,
};
pub use build::{
    build_f_rho, build_g_tail, build_seq_8p, build_seq_b, build_seq_b_old, build_seq_non8p,
    xset_k4, Claim, Flavor, XSet, XVariant,
};
pub use error::{Error, Location, Result};
pub use params::{target_support, Parameters};
pub use sequence::{BlockSequence, Contract};
pub use support::SupportSet;
pub use verify::{
    check_necessary, is_shiftable, verify_full, Mode, Necessary, NecessaryRule,
    VerificationReport,
};
