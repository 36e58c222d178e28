//! Truncated exact formal series.

mod bi;
mod fixed_point;
mod graded;
mod weighted;
mod wick;

pub use bi::{BiSeries, BiWindow};
pub use fixed_point::{residual, solve_fixed_point};
pub use graded::{graded_exp, graded_log, GradedCoeff, TruncPoly};
pub use weighted::{slot_moment, SlotMono, SlotPoly, WeightedSeries};
pub use wick::{gaussian_moment, wick_single};
