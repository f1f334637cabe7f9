use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(bit: u32) -> Self {
        if bit.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Cohomological degree together with the ℤ₂ spinor parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub degree: u32,
    pub parity: Parity,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree {
        degree: 0,
        parity: Parity::Even,
    };

    pub fn new(degree: u32, parity: Parity) -> Self {
        Bidegree { degree, parity }
    }

    pub fn even(degree: u32) -> Self {
        Self::new(degree, Parity::Even)
    }

    pub fn odd(degree: u32) -> Self {
        Self::new(degree, Parity::Odd)
    }

    /// Exponent of -1 picked up when swapping two homogeneous factors.
    pub fn koszul(self, other: Bidegree) -> u32 {
        (self.degree * other.degree + self.parity.bit() * other.parity.bit()) % 2
    }

    /// `x·x = 0` for every `x` of this bidegree.
    pub fn squares_to_zero(self) -> bool {
        (self.degree + self.parity.bit()) % 2 == 1
    }

    /// Bidegree of a product.
    pub fn plus(self, other: Bidegree) -> Bidegree {
        Bidegree::new(
            self.degree + other.degree,
            Parity::from_bit(self.parity.bit() + other.parity.bit()),
        )
    }

    pub fn times(self, k: u32) -> Bidegree {
        Bidegree::new(self.degree * k, Parity::from_bit(self.parity.bit() * k))
    }

    /// Shift the cohomological degree by `delta`, keeping parity.
    pub fn shifted(self, delta: i32) -> Option<Bidegree> {
        let degree = self.degree as i64 + delta as i64;
        (degree >= 0).then(|| Bidegree::new(degree as u32, self.parity))
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = match self.parity {
            Parity::Even => "even",
            Parity::Odd => "odd",
        };
        write!(f, "({},{})", self.degree, p)
    }
}
