use crate::error::{Error, Result};

/// Cap on exhaustive enumerations, as a base-2 exponent.
///
/// Every exact solver enumerates an affine space of `2^k` vectors; the guard
/// rejects the call with [`Error::TooLarge`] when `k` exceeds the cap instead
/// of running for hours.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guard(usize);

impl Guard {
    pub const DEFAULT_EXPONENT: usize = 26;
    /// Hard ceiling for overrides; the enumeration counters are `u64`.
    pub const MAX_EXPONENT: usize = 40;

    pub fn new(exponent: usize) -> Result<Self> {
        if exponent > Self::MAX_EXPONENT {
            return Err(Error::TooLarge { exponent, guard: Self::MAX_EXPONENT });
        }
        Ok(Self(exponent))
    }

    pub fn exponent(&self) -> usize {
        self.0
    }

    pub fn check(&self, exponent: usize) -> Result<()> {
        if exponent > self.0 {
            Err(Error::TooLarge { exponent, guard: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for Guard {
    fn default() -> Self {
        Self(Self::DEFAULT_EXPONENT)
    }
}
