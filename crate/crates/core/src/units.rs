//! Physical constants, unit systems and SI ↔ natural-unit conversion.
//!
//! Natural units here mean `ħ = c = 1` with the meter kept as base length,
//! so every quantity collapses to a power of meters: a time `t` becomes the
//! length `c·t`, a mass `m` becomes the inverse length `m·c/ħ`.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Div, Mul};
use thiserror::Error;

/// Reduced Planck constant (J·s), CODATA 2018 exact.
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// Speed of light (m/s), exact.
pub const C_SI: f64 = 299_792_458.0;

/// Largest exponent accepted in a dimension tuple.
pub const MAX_EXPONENT: i32 = 24;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum UnitError {
    #[error("malformed dimension {0}: exponents must lie in [-{MAX_EXPONENT}, {MAX_EXPONENT}]")]
    Malformed(Dimension),
    #[error("dimension mismatch: {left} vs {right}")]
    Mismatch { left: Dimension, right: Dimension },
    #[error("unit system mismatch: {0:?} vs {1:?}")]
    SystemMismatch(UnitMode, UnitMode),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UnitMode {
    Natural,
    SI,
}

/// A unit system: the values of `ħ` and `c` in that system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitSystem {
    pub mode: UnitMode,
    pub hbar: f64,
    pub c: f64,
}

impl UnitSystem {
    pub const fn natural() -> Self {
        Self { mode: UnitMode::Natural, hbar: 1.0, c: 1.0 }
    }

    pub const fn si() -> Self {
        Self { mode: UnitMode::SI, hbar: HBAR_SI, c: C_SI }
    }

    /// `ħc` in this system (J·m in SI, 1 in natural units).
    pub fn hbar_c(&self) -> f64 {
        self.hbar * self.c
    }
}

/// Exponents over (length, time, mass).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Dimension {
    pub length: i32,
    pub time: i32,
    pub mass: i32,
}

impl Dimension {
    pub const DIMENSIONLESS: Dimension = Dimension::new(0, 0, 0);
    pub const LENGTH: Dimension = Dimension::new(1, 0, 0);
    pub const INVERSE_LENGTH: Dimension = Dimension::new(-1, 0, 0);
    pub const AREA: Dimension = Dimension::new(2, 0, 0);
    pub const TIME: Dimension = Dimension::new(0, 1, 0);
    pub const FREQUENCY: Dimension = Dimension::new(0, -1, 0);
    pub const VELOCITY: Dimension = Dimension::new(1, -1, 0);
    pub const MASS: Dimension = Dimension::new(0, 0, 1);
    pub const FORCE: Dimension = Dimension::new(1, -2, 1);
    pub const ENERGY: Dimension = Dimension::new(2, -2, 1);
    /// Energy per area, also surface tension (J/m² = N/m).
    pub const ENERGY_PER_AREA: Dimension = Dimension::new(0, -2, 1);
    pub const MASS_PER_AREA: Dimension = Dimension::new(-2, 0, 1);
    pub const MASS_DENSITY: Dimension = Dimension::new(-3, 0, 1);
    /// Mass per time, the unit of the effective viscosity coefficient.
    pub const MASS_RATE: Dimension = Dimension::new(0, -1, 1);
    pub const POWER: Dimension = Dimension::new(2, -3, 1);

    pub const fn new(length: i32, time: i32, mass: i32) -> Self {
        Self { length, time, mass }
    }

    pub fn is_well_formed(&self) -> bool {
        [self.length, self.time, self.mass]
            .iter()
            .all(|e| e.abs() <= MAX_EXPONENT)
    }

    pub fn is_dimensionless(&self) -> bool {
        *self == Self::DIMENSIONLESS
    }

    /// Power of meters left once `ħ = c = 1`.
    pub fn natural_length_power(&self) -> i32 {
        self.length + self.time - self.mass
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L^{} T^{} M^{}", self.length, self.time, self.mass)
    }
}

impl Mul for Dimension {
    type Output = Dimension;
    fn mul(self, rhs: Dimension) -> Dimension {
        Dimension::new(
            self.length + rhs.length,
            self.time + rhs.time,
            self.mass + rhs.mass,
        )
    }
}

impl Div for Dimension {
    type Output = Dimension;
    fn div(self, rhs: Dimension) -> Dimension {
        Dimension::new(
            self.length - rhs.length,
            self.time - rhs.time,
            self.mass - rhs.mass,
        )
    }
}

/// A value tagged with its SI dimension and the unit system its number is
/// expressed in. In natural mode the number is in meters raised to
/// [`Dimension::natural_length_power`]; the SI dimension is kept so the
/// conversion back is unambiguous.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub value: f64,
    pub dim: Dimension,
    pub mode: UnitMode,
}

impl Quantity {
    pub fn si(value: f64, dim: Dimension) -> Self {
        Self { value, dim, mode: UnitMode::SI }
    }

    pub fn natural(value: f64, dim: Dimension) -> Self {
        Self { value, dim, mode: UnitMode::Natural }
    }

    pub fn dimensionless(value: f64) -> Self {
        Self::si(value, Dimension::DIMENSIONLESS)
    }

    fn check(&self, other: &Quantity) -> Result<(), UnitError> {
        if self.mode != other.mode {
            return Err(UnitError::SystemMismatch(self.mode, other.mode));
        }
        if self.dim != other.dim {
            return Err(UnitError::Mismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    pub fn try_add(self, other: Quantity) -> Result<Quantity, UnitError> {
        self.check(&other)?;
        Ok(Quantity { value: self.value + other.value, ..self })
    }

    pub fn try_sub(self, other: Quantity) -> Result<Quantity, UnitError> {
        self.check(&other)?;
        Ok(Quantity { value: self.value - other.value, ..self })
    }

    pub fn try_mul(self, other: Quantity) -> Result<Quantity, UnitError> {
        if self.mode != other.mode {
            return Err(UnitError::SystemMismatch(self.mode, other.mode));
        }
        Ok(Quantity {
            value: self.value * other.value,
            dim: self.dim * other.dim,
            mode: self.mode,
        })
    }

    pub fn try_div(self, other: Quantity) -> Result<Quantity, UnitError> {
        if self.mode != other.mode {
            return Err(UnitError::SystemMismatch(self.mode, other.mode));
        }
        Ok(Quantity {
            value: self.value / other.value,
            dim: self.dim / other.dim,
            mode: self.mode,
        })
    }

    pub fn scale(self, factor: f64) -> Quantity {
        Quantity { value: self.value * factor, ..self }
    }
}

// Factor taking an SI number to natural units: c^time · (c/ħ)^mass.
fn natural_factor(dim: Dimension, u: &UnitSystem) -> f64 {
    u.c.powi(dim.time) * (u.c / u.hbar).powi(dim.mass)
}

/// Express `x` with `ħ = c = 1`, the constants taken from `u`.
///
/// A quantity already in natural mode is returned unchanged.
pub fn to_natural(x: Quantity, u: &UnitSystem) -> Result<Quantity, UnitError> {
    if !x.dim.is_well_formed() {
        return Err(UnitError::Malformed(x.dim));
    }
    match x.mode {
        UnitMode::Natural => Ok(x),
        UnitMode::SI => Ok(Quantity::natural(x.value * natural_factor(x.dim, u), x.dim)),
    }
}

/// Inverse of [`to_natural`].
pub fn from_natural(x: Quantity, u: &UnitSystem) -> Result<Quantity, UnitError> {
    if !x.dim.is_well_formed() {
        return Err(UnitError::Malformed(x.dim));
    }
    match x.mode {
        UnitMode::SI => Ok(x),
        UnitMode::Natural => Ok(Quantity::si(x.value / natural_factor(x.dim, u), x.dim)),
    }
}

/// Unit label for a dimension in the given mode (`"m^-3"` in natural mode).
pub fn unit_label(dim: Dimension, mode: UnitMode) -> String {
    match mode {
        UnitMode::Natural => match dim.natural_length_power() {
            0 => "1".to_string(),
            1 => "m".to_string(),
            p => format!("m^{p}"),
        },
        UnitMode::SI => {
            if dim.is_dimensionless() {
                return "1".to_string();
            }
            let mut parts = Vec::new();
            for (sym, e) in [("kg", dim.mass), ("m", dim.length), ("s", dim.time)] {
                match e {
                    0 => {}
                    1 => parts.push(sym.to_string()),
                    _ => parts.push(format!("{sym}^{e}")),
                }
            }
            parts.join(" ")
        }
    }
}
