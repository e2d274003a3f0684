//! The two-step estimator: coarse block selection by energy, then a
//! per-hypothesis method-of-moments fit and generalized log-likelihood-ratio
//! change detection over the correlator outputs, wrapped in the noise-only
//! and all-signal guard tests.

mod coarse;
mod fine;
mod gllr;
mod guards;
mod moments;
mod pipeline;

pub use coarse::{argmax_earliest, coarse_step};
pub use fine::{fine_step, FineStep};
pub use gllr::{gllr_score, ln_nu1, GllrModel};
pub use guards::{all_signal_test, guard_threshold, noise_only_test};
pub use moments::{mm_estimate, mm_from_moments, MmFit, SuffixMoments};
pub use pipeline::{estimate_toa, estimate_toa_with, Observer, SyntheticObserver, ToaEstimate};
