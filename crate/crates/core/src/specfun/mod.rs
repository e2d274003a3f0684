//! Special functions and random variates used by the channel model and the
//! likelihood-ratio densities: log-gamma, the log of Kummer's confluent
//! hypergeometric function `1F1(a; b; x)`, and Nakagami-m moments/sampling.

mod gamma;
mod kummer;
mod nakagami;

pub use gamma::log_gamma;
pub use kummer::log_kummer;
pub use nakagami::{nakagami_moment, sample_gamma, sample_nakagami, NakagamiParams};

pub(crate) use kummer::ln_kummer_scaled;
