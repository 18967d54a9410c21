//! Finite approximations of inner ultrahomogeneous groups.
//!
//! The crate has three layers:
//!
//! - a permutation-group engine (`perm`, `perm_group`, `centralizer`) with
//!   stabilizer chains, membership, centralizers, normalizers and
//!   conjugacy search;
//! - constructive machinery (`finite_group`, `abelian`, `partial_aut`,
//!   `witness`, `amalgam`, `eppa`, `commuting`, `tower`) that builds
//!   conjugation witnesses, permutational products and the ascending
//!   tower `S_3 <= Sym(6) <= Sym(720)`, each construction returning a
//!   certificate whose equations are verified exactly;
//! - verifier suites (`theoremlab`) that map group-theoretic identities
//!   and counting facts to executable checks with machine-readable
//!   reports.

pub mod abelian;
pub mod amalgam;
pub mod aut_families;
pub mod centralizer;
pub mod commuting;
pub mod config;
pub mod corpus;
pub mod eppa;
pub mod error;
pub mod finite_group;
pub mod homomorphism;
pub mod partial_aut;
pub mod perm;
pub mod perm_group;
pub mod report;
pub mod smith;
pub mod theoremlab;
pub mod tower;
pub mod witness;

pub use config::{Config, OutputMode};
pub use error::{Error, Result};
pub use perm::Permutation;
pub use perm_group::PermGroup;

#[cfg(test)]
mod thread_safety {
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn core_types_are_shareable() {
        assert_send_sync::<crate::perm::Permutation>();
        assert_send_sync::<crate::perm_group::PermGroup>();
        assert_send_sync::<crate::finite_group::FiniteGroup>();
        assert_send_sync::<crate::abelian::AbelianGroup>();
        assert_send_sync::<crate::witness::WitnessCertificate>();
        assert_send_sync::<crate::amalgam::AmalgamResult>();
        assert_send_sync::<crate::tower::Tower>();
        assert_send_sync::<crate::report::VerificationReport>();
    }
}
