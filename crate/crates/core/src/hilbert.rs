//! Dense complex vectors and Hermitian matrices, and the expectation-value
//! statistics every bound is assembled from.
//!
//! Inner products follow the bra-ket convention: conjugate-linear in the
//! first argument.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);

/// A complex vector of any norm (including zero).
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    amps: Vec<C64>,
}

impl Ket {
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::DimensionTooSmall { min: 1, found: 0 });
        }
        if amps.iter().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Ket { amps })
    }

    pub fn zeros(dim: usize) -> Self {
        Ket {
            amps: vec![ZERO; dim],
        }
    }

    /// Standard basis vector `e_index`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amps = vec![ZERO; dim];
        amps[index] = C64::new(1.0, 0.0);
        Ket { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scaled(&self, c: C64) -> Ket {
        Ket {
            amps: self.amps.iter().map(|z| c * z).collect(),
        }
    }

    /// `self + c·other`.
    pub fn plus_scaled(&self, c: C64, other: &Ket) -> Result<Ket> {
        check_dims(self.dim(), other.dim())?;
        Ok(Ket {
            amps: self
                .amps
                .iter()
                .zip(&other.amps)
                .map(|(x, y)| x + c * y)
                .collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.amps.iter().all(|z| *z == ZERO)
    }
}

/// A unit-norm ket.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    ket: Ket,
}

impl StateVector {
    /// Accepts a ket whose norm is within [`tol::NORMALIZATION`] of one and
    /// renormalizes it exactly.
    pub fn new(ket: Ket) -> Result<Self> {
        let norm = ket.norm();
        if (norm - 1.0).abs() > tol::NORMALIZATION {
            return Err(Error::NotNormalized { norm });
        }
        Ok(StateVector {
            ket: ket.scaled(C64::new(1.0 / norm, 0.0)),
        })
    }

    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        Self::new(Ket::new(amps)?)
    }

    /// Rescales any nonzero ket to unit norm.
    pub fn normalize(ket: Ket) -> Result<Self> {
        let norm = ket.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        Ok(StateVector {
            ket: ket.scaled(C64::new(1.0 / norm, 0.0)),
        })
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        StateVector {
            ket: Ket::basis(dim, index),
        }
    }

    pub fn ket(&self) -> &Ket {
        &self.ket
    }

    pub fn dim(&self) -> usize {
        self.ket.dim()
    }

    pub fn amplitudes(&self) -> &[C64] {
        self.ket.amplitudes()
    }

    /// Multiplies by the global phase `e^{iφ}`.
    pub fn with_phase(&self, phi: f64) -> StateVector {
        StateVector {
            ket: self.ket.scaled(C64::from_polar(1.0, phi)),
        }
    }
}

/// A dense Hermitian matrix, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    dim: usize,
    entries: Vec<C64>,
}

impl HermitianOperator {
    /// Validates Hermiticity against [`tol::HERMITIAN`] relative to the
    /// largest entry, then stores the exact Hermitian part `(M + M†)/2`.
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionTooSmall { min: 1, found: 0 });
        }
        if entries.len() != dim * dim {
            return Err(Error::NotSquare {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        if entries.iter().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite);
        }
        let max_abs = entries.iter().fold(0.0_f64, |m, z| m.max(z.norm()));
        let mut deviation = 0.0_f64;
        for i in 0..dim {
            for j in 0..dim {
                let d = (entries[i * dim + j] - entries[j * dim + i].conj()).norm();
                deviation = deviation.max(d);
            }
        }
        let tolerance = tol::HERMITIAN * max_abs;
        if deviation > tolerance {
            return Err(Error::NotHermitian {
                deviation,
                tolerance,
            });
        }
        let mut herm = entries.clone();
        for i in 0..dim {
            for j in 0..dim {
                herm[i * dim + j] = (entries[i * dim + j] + entries[j * dim + i].conj()) * 0.5;
            }
        }
        Ok(HermitianOperator { dim, entries: herm })
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::NotSquare {
                    expected: dim,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Self::new(dim, entries)
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = C64::new(1.0, 0.0);
        }
        HermitianOperator { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<C64>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn scaled(&self, c: f64) -> HermitianOperator {
        HermitianOperator {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * c).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0_f64, |m, z| m.max(z.norm()))
    }

    /// Magnitude used to scale rounding tolerances: `max(1, dim · max|O_ij|)`.
    pub fn scale(&self) -> f64 {
        (self.dim as f64 * self.max_abs()).max(1.0)
    }

    pub fn apply(&self, x: &Ket) -> Result<Ket> {
        check_dims(self.dim, x.dim())?;
        let amps = self
            .entries
            .chunks(self.dim)
            .map(|row| row.iter().zip(x.amplitudes()).map(|(a, b)| a * b).sum())
            .collect();
        Ok(Ket { amps })
    }

    /// Entrywise product `self · other` as a plain row-major matrix.
    pub fn matmul(&self, other: &HermitianOperator) -> Result<Vec<C64>> {
        check_dims(self.dim, other.dim)?;
        let d = self.dim;
        let mut out = vec![ZERO; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                for j in 0..d {
                    out[i * d + j] += a * other.entries[k * d + j];
                }
            }
        }
        Ok(out)
    }
}

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `⟨x|y⟩`, conjugate-linear in `x`.
pub fn inner(x: &Ket, y: &Ket) -> Result<C64> {
    check_dims(x.dim(), y.dim())?;
    Ok(x
        .amplitudes()
        .iter()
        .zip(y.amplitudes())
        .map(|(a, b)| a.conj() * b)
        .sum())
}

pub fn apply(op: &HermitianOperator, x: &Ket) -> Result<Ket> {
    op.apply(x)
}

/// `⟨ψ|O|ψ⟩`, verified real.
pub fn expectation(op: &HermitianOperator, psi: &StateVector) -> Result<f64> {
    let value = inner(psi.ket(), &op.apply(psi.ket())?)?;
    let residue = value.im.abs();
    if residue > tol::EXPECTATION_RESIDUE * op.scale() {
        return Err(Error::ImaginaryExpectation { residue });
    }
    Ok(value.re)
}

/// `⟨O²⟩ − ⟨O⟩²`, with tiny negative rounding clamped to zero.
pub fn variance(op: &HermitianOperator, psi: &StateVector) -> Result<f64> {
    let o_psi = op.apply(psi.ket())?;
    let mean = expectation(op, psi)?;
    // ⟨ψ|O·O|ψ⟩ = ‖Oψ‖² for Hermitian O
    let second = o_psi.norm_sqr();
    let value = second - mean * mean;
    if value >= 0.0 {
        Ok(value)
    } else if value >= -tol::VARIANCE_CLAMP * second.max(1.0) {
        Ok(0.0)
    } else {
        Err(Error::NegativeVariance { value })
    }
}

/// `(O − ⟨O⟩)|ψ⟩`.
pub fn deviation_vector(op: &HermitianOperator, psi: &StateVector) -> Result<Ket> {
    let mean = expectation(op, psi)?;
    op.apply(psi.ket())?
        .plus_scaled(C64::new(-mean, 0.0), psi.ket())
}

/// `⟨ψ|AB − BA|ψ⟩`, evaluated by applying the operators in both orders.
pub fn commutator_expectation(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
) -> Result<C64> {
    let (ab, ba) = ordered_products(a, b, psi)?;
    Ok(ab - ba)
}

/// `⟨ψ|AB + BA|ψ⟩`, verified real.
pub fn anticommutator_expectation(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
) -> Result<f64> {
    let (ab, ba) = ordered_products(a, b, psi)?;
    let value = ab + ba;
    let residue = value.im.abs();
    if residue > tol::EXPECTATION_RESIDUE * a.scale() * b.scale() {
        return Err(Error::ImaginaryExpectation { residue });
    }
    Ok(value.re)
}

fn ordered_products(
    a: &HermitianOperator,
    b: &HermitianOperator,
    psi: &StateVector,
) -> Result<(C64, C64)> {
    check_dims(a.dim(), b.dim())?;
    let ab = inner(psi.ket(), &a.apply(&b.apply(psi.ket())?)?)?;
    let ba = inner(psi.ket(), &b.apply(&a.apply(psi.ket())?)?)?;
    Ok((ab, ba))
}

/// An orthonormal basis of the complement of `psi`.
///
/// Built from the Householder reflector `H = I − 2vv†/‖v‖²` with
/// `v = ψ + e^{iφ}e₀`, `e^{iφ} = ψ₀/|ψ₀|`. `H` is unitary and maps `e₀` onto
/// a multiple of `ψ`, so its remaining columns span the complement. `|v₀| ≥ 1`
/// avoids cancellation.
pub fn orthonormal_complement_basis(psi: &StateVector) -> Vec<StateVector> {
    let d = psi.dim();
    let amps = psi.amplitudes();
    let phase = if amps[0].norm() > 0.0 {
        amps[0] / amps[0].norm()
    } else {
        C64::new(1.0, 0.0)
    };
    let mut v = amps.to_vec();
    v[0] += phase;
    let v_norm_sqr: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    (1..d)
        .map(|k| {
            let coeff = v[k].conj() * (2.0 / v_norm_sqr);
            let mut col: Vec<C64> = v.iter().map(|vi| -vi * coeff).collect();
            col[k] += C64::new(1.0, 0.0);
            StateVector { ket: Ket { amps: col } }
        })
        .collect()
}
