//! Gaussian-beam geometry of the optical gate array.
//!
//! Ties the problem scale to physical dimensions: beam divergence, diffractive
//! broadening over the gate chain, the minimal admissible shift unit, and the
//! mirror size needed so no shifted beam leaves the aperture. All lengths are
//! in meters, times in seconds.

use alloc::vec::Vec;
use core::fmt;

/// Default CCD pixel size, meters.
pub const DEFAULT_PIXEL_SIZE: f64 = 1e-7;
/// Default amplifier relaxation time, seconds.
pub const DEFAULT_RELAXATION_TIME: f64 = 1e-8;
/// Default small-signal amplifier gain; restores the 50% splitter loss.
pub const DEFAULT_GAIN: f64 = 2.0;
/// Default normalized saturation intensity.
pub const DEFAULT_SATURATION: f64 = 1.0;

/// Full physical description of one device build.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviceParameters {
    /// Laser wavelength, meters.
    pub wavelength: f64,
    /// Beam diameter at the source, meters.
    pub beam_diameter: f64,
    /// Distance between consecutive gates, meters.
    pub gate_spacing: f64,
    /// Number of splitter/plate/amplifier stages.
    pub n_gates: u32,
    /// Transverse size of the mirrors and amplifiers, meters.
    pub mirror_size: f64,
    /// Minimal shift unit: one integer unit of weight in meters.
    pub shift_unit: f64,
    /// CCD pixel size, meters.
    pub pixel_size: f64,
    /// Amplifier saturation intensity, normalized units.
    pub saturation_intensity: f64,
    /// Small-signal amplifier gain.
    pub gain: f64,
    /// Amplifier relaxation time, seconds.
    pub relaxation_time: f64,
    /// Standard deviation of the per-passage phase error, radians.
    pub phase_jitter: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum OpticsError {
    NonPositive(&'static str),
    GainBelowOne(f64),
    NegativeJitter(f64),
    DivergenceTooLarge(f64),
}

impl fmt::Display for OpticsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpticsError::NonPositive(name) => write!(f, "{name} must be positive"),
            OpticsError::GainBelowOne(g) => write!(f, "gain must be at least 1, got {g}"),
            OpticsError::NegativeJitter(j) => {
                write!(f, "phase jitter must be non-negative, got {j}")
            }
            OpticsError::DivergenceTooLarge(a) => {
                write!(f, "divergence angle {a} rad is not below pi/2")
            }
        }
    }
}

fn require_positive(value: f64, name: &'static str) -> Result<(), OpticsError> {
    if !(value > 0.0) {
        return Err(OpticsError::NonPositive(name));
    }
    Ok(())
}

impl DeviceParameters {
    pub fn validate(&self) -> Result<(), OpticsError> {
        require_positive(self.wavelength, "lambda")?;
        require_positive(self.beam_diameter, "d_b")?;
        require_positive(self.gate_spacing, "L")?;
        require_positive(self.mirror_size, "R_M")?;
        require_positive(self.shift_unit, "kappa")?;
        require_positive(self.pixel_size, "delta_p")?;
        require_positive(self.saturation_intensity, "I_sat")?;
        require_positive(self.relaxation_time, "T_atom")?;
        if self.gain < 1.0 {
            return Err(OpticsError::GainBelowOne(self.gain));
        }
        if self.phase_jitter < 0.0 {
            return Err(OpticsError::NegativeJitter(self.phase_jitter));
        }
        Ok(())
    }

    /// Divergence angle of this device's source beam, radians.
    pub fn divergence_angle(&self) -> Result<f64, OpticsError> {
        divergence(self.wavelength, self.beam_diameter)
    }
}

/// Angular divergence of a Gaussian beam: `1.2 * lambda / d_b`.
pub fn divergence(wavelength: f64, beam_diameter: f64) -> Result<f64, OpticsError> {
    require_positive(wavelength, "lambda")?;
    require_positive(beam_diameter, "d_b")?;
    Ok(1.2 * wavelength / beam_diameter)
}

/// Output beam diameter after `n` gate passages:
/// `n * L * sin(alpha) + d_b`.
pub fn final_diameter(
    n: u32,
    gate_spacing: f64,
    alpha: f64,
    beam_diameter: f64,
) -> Result<f64, OpticsError> {
    require_positive(gate_spacing, "L")?;
    require_positive(beam_diameter, "d_b")?;
    if alpha < 0.0 {
        return Err(OpticsError::NonPositive("alpha"));
    }
    if alpha >= core::f64::consts::FRAC_PI_2 {
        return Err(OpticsError::DivergenceTooLarge(alpha));
    }
    Ok(n as f64 * gate_spacing * libm::sin(alpha) + beam_diameter)
}

/// Beam diameter minimizing the output diameter: `sqrt(n * L * lambda)`.
pub fn optimal_beam_diameter(
    n: u32,
    gate_spacing: f64,
    wavelength: f64,
) -> Result<f64, OpticsError> {
    if n == 0 {
        return Err(OpticsError::NonPositive("n"));
    }
    require_positive(gate_spacing, "L")?;
    require_positive(wavelength, "lambda")?;
    Ok(libm::sqrt(n as f64 * gate_spacing * wavelength))
}

/// Which geometric constraint a device build violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// Shift unit below the broadened beam diameter: neighbors overlap.
    BeamSeparation,
    /// Mirror smaller than the maximal accumulated shift plus one beam.
    MirrorSize,
    /// The required maximal sum does not fit below `R_M / kappa`.
    BoundRange,
    /// The detection span `kappa * max_sum + d_final` exceeds the mirror.
    DetectionSpan,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BeamSeparation => write!(f, "beam separation"),
            Violation::MirrorSize => write!(f, "mirror size"),
            Violation::BoundRange => write!(f, "bound range"),
            Violation::DetectionSpan => write!(f, "detection span"),
        }
    }
}

/// Derived geometry of a device build, plus its constraint check.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometryReport {
    /// Divergence angle, radians.
    pub alpha: f64,
    /// Output beam diameter after all gates, meters.
    pub d_final: f64,
    /// Minimal admissible shift unit (= `d_final`), meters.
    pub kappa_min: f64,
    /// Minimal mirror size (exclusive bound `kappa * n + d_b`), meters.
    pub r_m_min: f64,
    /// Largest representable integer sum, `floor(R_M / kappa) - 1`.
    pub b_plus_max: u64,
    pub feasible: bool,
    pub violations: Vec<Violation>,
}

/// Checks a device against every geometric constraint for a problem whose
/// largest representable sum is `max_sum`.
pub fn feasibility_check(
    dev: &DeviceParameters,
    max_sum: u64,
) -> Result<GeometryReport, OpticsError> {
    dev.validate()?;
    let alpha = dev.divergence_angle()?;
    let d_final = final_diameter(dev.n_gates, dev.gate_spacing, alpha, dev.beam_diameter)?;
    let mut violations = Vec::new();
    if dev.shift_unit < d_final {
        violations.push(Violation::BeamSeparation);
    }
    if !(dev.mirror_size > dev.shift_unit * dev.n_gates as f64 + dev.beam_diameter) {
        violations.push(Violation::MirrorSize);
    }
    let ratio = dev.mirror_size / dev.shift_unit;
    if !((max_sum as f64) < ratio) {
        violations.push(Violation::BoundRange);
    }
    if dev.shift_unit * max_sum as f64 + d_final > dev.mirror_size {
        violations.push(Violation::DetectionSpan);
    }
    let b_plus_max = if libm::floor(ratio) >= 1.0 {
        libm::floor(ratio) as u64 - 1
    } else {
        0
    };
    Ok(GeometryReport {
        alpha,
        d_final,
        kappa_min: d_final,
        r_m_min: dev.shift_unit * dev.n_gates as f64 + dev.beam_diameter,
        b_plus_max,
        feasible: violations.is_empty(),
        violations,
    })
}

/// Produces the smallest device build passing [`feasibility_check`] for `n`
/// gates and a maximal representable sum `max_sum`.
///
/// The beam diameter follows the diffraction optimum, the shift unit sits at
/// the separation limit, and the mirror gets one shift unit plus one output
/// beam of margin beyond the largest accumulated shift.
pub fn size_device(
    n: u32,
    max_sum: u64,
    wavelength: f64,
    gate_spacing: f64,
) -> Result<DeviceParameters, OpticsError> {
    require_positive(wavelength, "lambda")?;
    require_positive(gate_spacing, "L")?;
    let d_b = optimal_beam_diameter(n.max(1), gate_spacing, wavelength)?;
    let alpha = divergence(wavelength, d_b)?;
    let d_final = final_diameter(n, gate_spacing, alpha, d_b)?;
    let kappa = if 2.0 * d_b > d_final { 2.0 * d_b } else { d_final };
    let span = n.max(1) as f64;
    let reach = if (max_sum as f64) > span {
        max_sum as f64
    } else {
        span
    };
    let mirror = kappa * reach + kappa + d_final;
    let dev = DeviceParameters {
        wavelength,
        beam_diameter: d_b,
        gate_spacing,
        n_gates: n,
        mirror_size: mirror,
        shift_unit: kappa,
        pixel_size: DEFAULT_PIXEL_SIZE,
        saturation_intensity: DEFAULT_SATURATION,
        gain: DEFAULT_GAIN,
        relaxation_time: DEFAULT_RELAXATION_TIME,
        phase_jitter: 0.0,
    };
    debug_assert!(feasibility_check(&dev, max_sum)
        .map(|r| r.feasible)
        .unwrap_or(false));
    Ok(dev)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The worked device build: R_M = nL = 10 m, d_b = 2 mm, lambda = 500 nm,
    /// kappa = 5 mm, 30 gates.
    pub(crate) fn reference_device() -> DeviceParameters {
        DeviceParameters {
            wavelength: 5e-7,
            beam_diameter: 2e-3,
            gate_spacing: 10.0 / 30.0,
            n_gates: 30,
            mirror_size: 10.0,
            shift_unit: 5e-3,
            pixel_size: DEFAULT_PIXEL_SIZE,
            saturation_intensity: DEFAULT_SATURATION,
            gain: DEFAULT_GAIN,
            relaxation_time: DEFAULT_RELAXATION_TIME,
            phase_jitter: 0.0,
        }
    }

    #[test]
    fn divergence_reference_values() {
        let a = divergence(5e-7, 2e-3).unwrap();
        assert!((a - 3.0e-4).abs() < 1e-12);
        assert!((divergence(1.0, 1.0).unwrap() - 1.2).abs() < 1e-15);
        // doubling the beam diameter halves the angle
        let half = divergence(5e-7, 4e-3).unwrap();
        assert!((a / half - 2.0).abs() < 1e-12);
    }

    #[test]
    fn divergence_rejects_nonpositive() {
        assert!(divergence(0.0, 1.0).is_err());
        assert!(divergence(1.0, -1.0).is_err());
    }

    #[test]
    fn final_diameter_no_divergence() {
        let d = final_diameter(30, 0.5, 0.0, 2e-3).unwrap();
        assert_eq!(d, 2e-3);
    }

    #[test]
    fn final_diameter_reference() {
        let d = final_diameter(30, 1.0 / 3.0, 3e-4, 2e-3).unwrap();
        assert!((d - 5.0e-3).abs() < 1e-9);
    }

    #[test]
    fn optimal_diameter_reference() {
        // n*L = 10 m, lambda = 5e-7 m
        let d = optimal_beam_diameter(30, 1.0 / 3.0, 5e-7).unwrap();
        assert!((d - 2.236e-3).abs() < 1e-6);
        // within 12% of the quoted 2 mm
        assert!((d - 2e-3).abs() / 2e-3 < 0.12);
        assert_eq!(optimal_beam_diameter(1, 1.0, 1.0).unwrap(), 1.0);
        // quadrupling n*L doubles the diameter
        let d4 = optimal_beam_diameter(120, 1.0 / 3.0, 5e-7).unwrap();
        assert!((d4 / d - 2.0).abs() < 1e-12);
    }

    #[test]
    fn reference_device_feasibility() {
        let dev = reference_device();
        let rep = feasibility_check(&dev, 200).unwrap();
        assert!(rep.feasible, "violations: {:?}", rep.violations);
        // kappa >= 2 d_b holds: 5 mm vs 4 mm
        assert!(dev.shift_unit >= 2.0 * dev.beam_diameter);
        // R_M / kappa = 2000, so the largest representable bound is 1999
        assert_eq!(rep.b_plus_max, 1999);
        assert!((rep.alpha - 3.0e-4).abs() < 1e-5);
    }

    #[test]
    fn undersized_shift_unit_is_flagged() {
        let mut dev = reference_device();
        let rep = feasibility_check(&dev, 200).unwrap();
        dev.shift_unit = rep.d_final / 2.0;
        let rep = feasibility_check(&dev, 200).unwrap();
        assert!(!rep.feasible);
        assert!(rep.violations.contains(&Violation::BeamSeparation));
    }

    #[test]
    fn undersized_mirror_is_flagged() {
        let mut dev = reference_device();
        dev.mirror_size = dev.shift_unit * dev.n_gates as f64 + dev.beam_diameter / 2.0;
        let rep = feasibility_check(&dev, 10).unwrap();
        assert!(!rep.feasible);
        assert!(rep.violations.contains(&Violation::MirrorSize));
    }

    #[test]
    fn sized_device_is_feasible() {
        let dev = size_device(30, 200, 5e-7, 1.0 / 3.0).unwrap();
        let rep = feasibility_check(&dev, 200).unwrap();
        assert!(rep.feasible, "violations: {:?}", rep.violations);
    }

    #[test]
    fn sized_device_for_trivial_problem() {
        let dev = size_device(1, 0, 5e-7, 1.0).unwrap();
        assert!(feasibility_check(&dev, 0).unwrap().feasible);
    }

    #[test]
    fn sized_device_is_tight() {
        let mut dev = size_device(30, 200, 5e-7, 1.0 / 3.0).unwrap();
        dev.shift_unit /= 2.0;
        let rep = feasibility_check(&dev, 200).unwrap();
        assert!(!rep.feasible);
    }

    #[test]
    fn validate_rejects_bad_fields() {
        let mut dev = reference_device();
        dev.gain = 0.5;
        assert!(matches!(dev.validate(), Err(OpticsError::GainBelowOne(_))));
        let mut dev = reference_device();
        dev.phase_jitter = -0.1;
        assert!(matches!(dev.validate(), Err(OpticsError::NegativeJitter(_))));
        let mut dev = reference_device();
        dev.shift_unit = 0.0;
        assert!(matches!(dev.validate(), Err(OpticsError::NonPositive(_))));
    }
}
