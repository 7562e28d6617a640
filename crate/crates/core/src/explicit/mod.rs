//! Zero-sum main terms, rigorous truncation tails, and residual records for
//! the numbered identities.

mod residual;
mod zero_sum;

pub use residual::{residual, Identity, ResidualInputs, ResidualRecord};
pub use zero_sum::{tail_bound, zero_sum, zero_sum_real, ZeroSumKind};
