//! Real-argument Airy functions Ai, Bi and their first derivatives.
//!
//! `|x| ≤ 9` uses the Maclaurin series summed in double-double precision;
//! beyond that the standard asymptotic expansions (exponential for x > 0,
//! modulus/phase form for x < 0). Arguments beyond `|x| = 80` are rejected
//! with [`Error::AiryOverflow`].

mod asymptotic;
mod dd;
pub mod oracle;
mod series;

use serde::Serialize;

use crate::error::{Error, Result};

pub use oracle::airy_oracle;

/// Largest accepted |x|.
pub const AIRY_LIMIT: f64 = 80.0;

/// Switch from the power series to the asymptotic expansions.
const SERIES_LIMIT: f64 = 9.0;

/// `Ai, Bi, Ai′, Bi′` at one argument.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AiryQuad {
    pub ai: f64,
    pub bi: f64,
    pub aip: f64,
    pub bip: f64,
}

impl AiryQuad {
    /// `Ai·Bi′ − Ai′·Bi`, identically 1/π.
    pub fn wronskian(&self) -> f64 {
        self.ai * self.bip - self.aip * self.bi
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.ai, self.bi, self.aip, self.bip]
    }

    /// `sqrt(Ai² + Bi²)`; the natural scale for relative errors where Ai
    /// and Bi oscillate.
    pub fn modulus(&self) -> f64 {
        self.ai.hypot(self.bi)
    }

    /// `sqrt(Ai′² + Bi′²)`.
    pub fn derivative_modulus(&self) -> f64 {
        self.aip.hypot(self.bip)
    }
}

pub fn airy_eval(x: f64) -> Result<AiryQuad> {
    if x.is_nan() {
        return Err(Error::Domain("Airy argument is NaN".into()));
    }
    if x.abs() > AIRY_LIMIT {
        return Err(Error::AiryOverflow {
            x,
            limit: AIRY_LIMIT,
        });
    }
    Ok(if x.abs() <= SERIES_LIMIT {
        series::maclaurin(x)
    } else if x > 0.0 {
        asymptotic::positive(x)
    } else {
        asymptotic::negative(x)
    })
}
