//! Physical constants and a lightly dimension-tagged scalar.
//!
//! Everything inside the crate is SI. Electric dipoles quoted in `e·m` are
//! converted at the boundary with [`dipole_e_m_to_si`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// CODATA 2018 values (the exact SI-defining constants are exact here too).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    /// Newtonian gravitational constant, m³ kg⁻¹ s⁻².
    pub g: f64,
    /// Reduced Planck constant, J s.
    pub hbar: f64,
    /// Speed of light, m/s.
    pub c: f64,
    /// Vacuum permittivity, F/m.
    pub eps0: f64,
    /// Vacuum permeability, H/m.
    pub mu0: f64,
    /// Elementary charge, C.
    pub e_charge: f64,
}

pub const CODATA_2018: Constants = Constants {
    g: 6.674_30e-11,
    hbar: 1.054_571_817e-34,
    c: 299_792_458.0,
    eps0: 8.854_187_812_8e-12,
    mu0: 1.256_637_062_12e-6,
    e_charge: 1.602_176_634e-19,
};

/// Shorthand for the constant set used throughout the crate.
pub const SI: Constants = CODATA_2018;

impl Constants {
    /// Coulomb prefactor `1/(4π ε₀)`.
    pub fn coulomb(&self) -> f64 {
        1.0 / (4.0 * std::f64::consts::PI * self.eps0)
    }

    /// `G m₁ m₂ / ħ`, the coupling that turns `1/r` into an angular rate.
    pub fn gravity_rate_coupling(&self, m1: f64, m2: f64) -> f64 {
        self.g * m1 * m2 / self.hbar
    }
}

impl Default for Constants {
    fn default() -> Self {
        CODATA_2018
    }
}

/// Converts a dipole moment quoted in units of `e·m` into `C·m`.
pub fn dipole_e_m_to_si(d_e_m: f64) -> Result<f64> {
    if !(d_e_m >= 0.0) {
        return Err(Error::invalid("dipole", format!("must be >= 0 e·m, got {d_e_m}")));
    }
    Ok(d_e_m * SI.e_charge)
}

/// Inverse of [`dipole_e_m_to_si`].
pub fn dipole_si_to_e_m(d_si: f64) -> Result<f64> {
    if !(d_si >= 0.0) {
        return Err(Error::invalid("dipole", format!("must be >= 0 C·m, got {d_si}")));
    }
    Ok(d_si / SI.e_charge)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dimension {
    Length,
    Mass,
    Time,
    Energy,
    Force,
    BField,
    BGradient,
    Dipole,
    Dimensionless,
}

impl Dimension {
    pub fn unit(self) -> &'static str {
        match self {
            Dimension::Length => "m",
            Dimension::Mass => "kg",
            Dimension::Time => "s",
            Dimension::Energy => "J",
            Dimension::Force => "N",
            Dimension::BField => "T",
            Dimension::BGradient => "T/m",
            Dimension::Dipole => "C m",
            Dimension::Dimensionless => "1",
        }
    }
}

/// A scalar carrying a dimension tag.
///
/// `try_add`/`try_sub` always check the tag. The operator impls only check
/// it with debug assertions on, so sweeps compiled in release pay nothing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    pub value: f64,
    pub dimension: Dimension,
}

impl Quantity {
    pub const fn new(value: f64, dimension: Dimension) -> Self {
        Quantity { value, dimension }
    }

    pub fn try_add(self, rhs: Quantity) -> Result<Quantity> {
        self.same_dimension(rhs)?;
        Ok(Quantity::new(self.value + rhs.value, self.dimension))
    }

    pub fn try_sub(self, rhs: Quantity) -> Result<Quantity> {
        self.same_dimension(rhs)?;
        Ok(Quantity::new(self.value - rhs.value, self.dimension))
    }

    /// Returns the raw value if the tag matches `expected`.
    pub fn value_as(self, expected: Dimension) -> Result<f64> {
        if self.dimension != expected {
            return Err(Error::DimensionMismatch { left: self.dimension, right: expected });
        }
        Ok(self.value)
    }

    fn same_dimension(self, rhs: Quantity) -> Result<()> {
        if self.dimension == rhs.dimension {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.dimension, right: rhs.dimension })
        }
    }
}

impl Add for Quantity {
    type Output = Quantity;

    fn add(self, rhs: Quantity) -> Quantity {
        debug_assert_eq!(self.dimension, rhs.dimension, "adding mismatched dimensions");
        Quantity::new(self.value + rhs.value, self.dimension)
    }
}

impl Sub for Quantity {
    type Output = Quantity;

    fn sub(self, rhs: Quantity) -> Quantity {
        debug_assert_eq!(self.dimension, rhs.dimension, "subtracting mismatched dimensions");
        Quantity::new(self.value - rhs.value, self.dimension)
    }
}

impl Neg for Quantity {
    type Output = Quantity;

    fn neg(self) -> Quantity {
        Quantity::new(-self.value, self.dimension)
    }
}

impl Mul<f64> for Quantity {
    type Output = Quantity;

    fn mul(self, rhs: f64) -> Quantity {
        Quantity::new(self.value * rhs, self.dimension)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.dimension.unit())
    }
}
