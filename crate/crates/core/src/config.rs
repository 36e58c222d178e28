use serde::{Deserialize, Serialize};

/// Truncation windows shared by every series computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Windows {
    /// Highest power of `x` kept in `(x, ħ)` series.
    pub xmax: usize,
    /// Highest power of `ħ` kept in `(x, ħ)` series.
    pub hmax: usize,
    /// Highest power of `λ` kept in weighted series.
    pub lmax: usize,
    /// Highest power of `y` kept in weighted series.
    pub ymax: usize,
}

impl Default for Windows {
    fn default() -> Self {
        Windows { xmax: 10, hmax: 6, lmax: 12, ymax: 8 }
    }
}
