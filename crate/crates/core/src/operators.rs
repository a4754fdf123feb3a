//! Named operator and state presets: spin-j angular momentum components,
//! spin basis states, the spin-1 `cosθ|+⟩ + sinθ|−⟩` family, and a truncated
//! harmonic-oscillator position/momentum pair.
//!
//! Spin matrices use the `|j,m⟩` basis ordered `m = +j, j−1, …, −j`, so the
//! spin-1 basis reads `(|+⟩, |0⟩, |−⟩)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hilbert::{HermitianOperator, Ket, StateVector, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            "z" => Ok(Axis::Z),
            other => Err(Error::InvalidSpin(format!("unknown component `{other}`"))),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// A half-integer stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HalfInt(i32);

impl HalfInt {
    pub fn from_doubled(doubled: i32) -> Self {
        HalfInt(doubled)
    }

    /// Accepts values whose double is an integer (within 1e-9).
    pub fn from_f64(value: f64) -> Result<Self> {
        let doubled = 2.0 * value;
        let rounded = doubled.round();
        if !value.is_finite() || (doubled - rounded).abs() > 1e-9 {
            return Err(Error::InvalidSpin(format!("{value} is not a half-integer")));
        }
        Ok(HalfInt(rounded as i32))
    }

    pub fn doubled(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinLabel {
    pub j: HalfInt,
    pub component: Axis,
    pub hbar: f64,
}

impl SpinLabel {
    pub fn new(j: f64, component: Axis, hbar: f64) -> Result<Self> {
        let j = HalfInt::from_f64(j)?;
        if j.doubled() < 1 {
            return Err(Error::InvalidSpin(format!("j = {} must be ≥ 1/2", j.value())));
        }
        check_hbar(hbar)?;
        Ok(SpinLabel { j, component, hbar })
    }

    pub fn dim(&self) -> usize {
        self.j.doubled() as usize + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quadrature {
    Position,
    Momentum,
}

impl FromStr for Quadrature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" => Ok(Quadrature::Position),
            "p" => Ok(Quadrature::Momentum),
            other => Err(Error::InvalidConfig(format!(
                "unknown oscillator component `{other}` (expected x or p)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorLabel {
    pub dim: usize,
    pub component: Quadrature,
    pub hbar: f64,
}

impl OscillatorLabel {
    pub fn new(dim: usize, component: Quadrature, hbar: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall { min: 2, found: dim });
        }
        check_hbar(hbar)?;
        Ok(OscillatorLabel {
            dim,
            component,
            hbar,
        })
    }
}

fn check_hbar(hbar: f64) -> Result<()> {
    if !(hbar.is_finite() && hbar > 0.0) {
        return Err(Error::InvalidConfig(format!("hbar must be positive, got {hbar}")));
    }
    Ok(())
}

/// Raising-operator matrix element `⟨j,m+1|J₊|j,m⟩ / ħ = √(j(j+1) − m(m+1))`.
fn raising_element(j: f64, m: f64) -> f64 {
    (j * (j + 1.0) - m * (m + 1.0)).max(0.0).sqrt()
}

/// `J_x`, `J_y` or `J_z` for spin `j`, built from `J± = J_x ± iJ_y`.
pub fn spin_operator(label: SpinLabel) -> HermitianOperator {
    let d = label.dim();
    let j = label.j.value();
    let hbar = label.hbar;
    let mut entries = vec![C64::new(0.0, 0.0); d * d];
    // index k holds m = j − k; J₊ maps column k to row k − 1
    for k in 0..d {
        let m = j - k as f64;
        match label.component {
            Axis::Z => entries[k * d + k] = C64::new(hbar * m, 0.0),
            Axis::X | Axis::Y => {
                if k == 0 {
                    continue;
                }
                let up = hbar * raising_element(j, m);
                // J₊ at (k−1, k), J₋ = J₊† at (k, k−1)
                let (upper, lower) = match label.component {
                    Axis::X => (C64::new(up / 2.0, 0.0), C64::new(up / 2.0, 0.0)),
                    _ => (C64::new(0.0, -up / 2.0), C64::new(0.0, up / 2.0)),
                };
                entries[(k - 1) * d + k] = upper;
                entries[k * d + (k - 1)] = lower;
            }
        }
    }
    HermitianOperator::new(d, entries).expect("spin matrices are Hermitian by construction")
}

/// `|j,m⟩` as a unit vector at index `j − m`.
pub fn spin_basis_state(j: f64, m: f64) -> Result<StateVector> {
    let j = HalfInt::from_f64(j)?;
    let m = HalfInt::from_f64(m)?;
    if j.doubled() < 1 {
        return Err(Error::InvalidSpin(format!("j = {} must be ≥ 1/2", j.value())));
    }
    if m.doubled().abs() > j.doubled() || (j.doubled() - m.doubled()) % 2 != 0 {
        return Err(Error::InvalidSpin(format!(
            "m = {} is not in -j..=j for j = {}",
            m.value(),
            j.value()
        )));
    }
    let dim = j.doubled() as usize + 1;
    let index = ((j.doubled() - m.doubled()) / 2) as usize;
    Ok(StateVector::basis(dim, index))
}

/// `cosθ|+⟩ + sinθ|−⟩` in the spin-1 basis.
pub fn spin1_theta_state(theta: f64) -> StateVector {
    let (s, c) = theta.sin_cos();
    StateVector::normalize(
        Ket::new(vec![C64::new(c, 0.0), C64::new(0.0, 0.0), C64::new(s, 0.0)])
            .expect("finite amplitudes"),
    )
    .expect("unit norm")
}

/// Truncated oscillator quadratures (unit mass and frequency):
/// `x = √(ħ/2)(a† + a)`, `p = i√(ħ/2)(a† − a)` with `a|n⟩ = √n|n−1⟩`.
///
/// At finite dimension `[x, p] ≠ iħ·I`; only the last diagonal entry differs.
pub fn oscillator_operator(label: OscillatorLabel) -> HermitianOperator {
    let d = label.dim;
    let amp = (label.hbar / 2.0).sqrt();
    let mut entries = vec![C64::new(0.0, 0.0); d * d];
    for n in 1..d {
        let root = (n as f64).sqrt() * amp;
        // a at (n−1, n), a† at (n, n−1)
        let (upper, lower) = match label.component {
            Quadrature::Position => (C64::new(root, 0.0), C64::new(root, 0.0)),
            Quadrature::Momentum => (C64::new(0.0, -root), C64::new(0.0, root)),
        };
        entries[(n - 1) * d + n] = upper;
        entries[n * d + (n - 1)] = lower;
    }
    HermitianOperator::new(d, entries).expect("quadratures are Hermitian by construction")
}
