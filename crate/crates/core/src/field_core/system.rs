//! Charge configurations on the x-axis.

use num_traits::{One, Signed, Zero};

use crate::exact_arith::Rational;

use super::FieldError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Charge {
    pub position: Rational,
    pub amplitude: Rational,
}

impl Charge {
    pub fn new(position: Rational, amplitude: Rational) -> Self {
        Self {
            position,
            amplitude,
        }
    }
}

/// Charges at `0 < x_1 < ... < x_M` with nonzero amplitudes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeSystem {
    charges: Vec<Charge>,
}

impl ChargeSystem {
    /// Validates an already canonical configuration.
    pub fn new(charges: Vec<Charge>) -> Result<Self, FieldError> {
        if charges.is_empty() {
            return Err(FieldError::EmptySystem);
        }
        for (i, c) in charges.iter().enumerate() {
            if c.amplitude.is_zero() {
                return Err(FieldError::ZeroAmplitude { index: i });
            }
            if !c.position.is_positive() {
                return Err(FieldError::NonPositivePosition { index: i });
            }
        }
        for (i, w) in charges.windows(2).enumerate() {
            if w[0].position == w[1].position {
                return Err(FieldError::DuplicatePosition { index: i + 1 });
            }
            if w[0].position > w[1].position {
                return Err(FieldError::NotIncreasing { index: i + 1 });
            }
        }
        Ok(Self { charges })
    }

    /// Sorts by position and, if the smallest position is not positive,
    /// translates so it becomes 1. Returns the system and the shift applied.
    pub fn normalized(mut charges: Vec<Charge>) -> Result<(Self, Rational), FieldError> {
        if charges.is_empty() {
            return Err(FieldError::EmptySystem);
        }
        charges.sort_by(|a, b| a.position.cmp(&b.position));
        for (i, w) in charges.windows(2).enumerate() {
            if w[0].position == w[1].position {
                return Err(FieldError::DuplicatePosition { index: i + 1 });
            }
        }
        let min = charges[0].position.clone();
        let shift = if min.is_positive() {
            Rational::zero()
        } else {
            Rational::one() - min
        };
        for c in &mut charges {
            c.position += &shift;
        }
        Ok((Self::new(charges)?, shift))
    }

    /// Convenience constructor from `(position, amplitude)` pairs, normalized.
    pub fn from_pairs(pairs: &[(Rational, Rational)]) -> Result<(Self, Rational), FieldError> {
        Self::normalized(
            pairs
                .iter()
                .map(|(x, a)| Charge::new(x.clone(), a.clone()))
                .collect(),
        )
    }

    pub fn charges(&self) -> &[Charge] {
        &self.charges
    }

    pub fn len(&self) -> usize {
        self.charges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.charges.is_empty()
    }

    pub fn positions(&self) -> impl Iterator<Item = &Rational> {
        self.charges.iter().map(|c| &c.position)
    }

    pub fn amplitudes(&self) -> impl Iterator<Item = &Rational> {
        self.charges.iter().map(|c| &c.amplitude)
    }

    /// Same positions, amplitudes multiplied by `c`.
    pub fn scaled(&self, c: &Rational) -> Result<Self, FieldError> {
        Self::new(
            self.charges
                .iter()
                .map(|q| Charge::new(q.position.clone(), &q.amplitude * c))
                .collect(),
        )
    }

    /// Index of the charge at `(x, 0)`, if any.
    pub fn charge_at(&self, x: &Rational) -> Option<usize> {
        self.charges.iter().position(|c| &c.position == x)
    }

    pub fn max_position(&self) -> &Rational {
        &self.charges[self.charges.len() - 1].position
    }

    pub fn min_position(&self) -> &Rational {
        &self.charges[0].position
    }
}
