use serde::{Deserialize, Serialize};

/// Check-node update used by the SC family of decoders.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kernel {
    /// `2 atanh(tanh(a/2) tanh(b/2))`, evaluated in a stable log form.
    #[default]
    Exact,
    /// `sign(a) sign(b) min(|a|, |b|)`.
    #[serde(alias = "min_sum", alias = "min-sum")]
    MinSum,
}

impl Kernel {
    #[inline]
    pub fn f(self, a: f64, b: f64) -> f64 {
        match self {
            Kernel::Exact => boxplus(a, b),
            Kernel::MinSum => min_sum(a, b),
        }
    }
}

impl std::str::FromStr for Kernel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(Kernel::Exact),
            "minsum" | "min-sum" | "min_sum" => Ok(Kernel::MinSum),
            other => Err(format!("unknown kernel {other:?} (expected exact or minsum)")),
        }
    }
}

#[inline]
fn min_sum(a: f64, b: f64) -> f64 {
    a.signum() * b.signum() * a.abs().min(b.abs())
}

#[inline]
fn boxplus(a: f64, b: f64) -> f64 {
    if a.is_infinite() || b.is_infinite() {
        return min_sum(a, b);
    }
    // symmetric in (a, b) and odd in each argument, bit for bit
    let correction = (-(a + b).abs()).exp().ln_1p() - (-(a - b).abs()).exp().ln_1p();
    min_sum(a, b) + correction
}

/// Variable-node update given the partial-sum bit of the left branch.
#[inline]
pub fn g(left: f64, right: f64, bit: u8) -> f64 {
    if bit == 0 {
        right + left
    } else {
        right - left
    }
}

/// Hard decision; a zero LLR decides 0.
#[inline]
pub fn hard(llr: f64) -> u8 {
    u8::from(llr < 0.0)
}
