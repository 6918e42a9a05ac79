//! Invariants and census tools for Brieskorn–Pham and weighted-homogeneous
//! hypersurface links: homology type, Alexander data, signatures, exotic-sphere
//! classes and Kähler–Einstein sufficiency certificates.

pub mod alexander;
pub mod arith;
pub mod census;
pub mod error;
pub mod graph;
pub mod ke;
pub mod link;
pub mod serde_str;
pub mod signature;

pub use alexander::{
    betti, brute_force_charpoly, charpoly_bp, delta_at_one, milnor_orlik_divisor, CharPoly,
    DeltaAtOne,
};
pub use census::{enumerate_ke_links, CensusResult, CensusSpec, Predicate};
pub use error::{Error, Result};
pub use graph::{classify_homology, is_homotopy_sphere, BrieskornGraph, HomologyClass};
pub use ke::{ke_check, ke_check_with, positivity, KEReport, PairRule};
pub use link::{ExponentVector, WeightedHypersurface};
pub use signature::{
    bp_order, kervaire_type, km_class, signature_combinatorial, signature_zagier, SignatureResult,
};

/// Runs `f` on a dedicated pool of `jobs` worker threads.
///
/// Every parallel routine in this crate reduces deterministically, so results
/// do not depend on `jobs`.
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}
