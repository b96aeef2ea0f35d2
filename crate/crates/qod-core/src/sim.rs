//! Stage-by-stage simulation of the optical gate array.
//!
//! Each gate splits every beam 50/50, shifts one copy by the stage's weight
//! (and, for the optimization variant, by its profit along the second axis),
//! amplifies with saturation, aligns phases up to an optional jitter, and
//! merges coincident beams coherently. The final plane is read out through a
//! pixel-binned CCD and turned into the variant's answer.
//!
//! Shifts are exact integer multiples of the shift unit internally; physical
//! meters only appear at CCD binning, so the core combinatorics carries no
//! float drift.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::knapsack::{Answer, KnapsackInstance};
use crate::optics::{feasibility_check, DeviceParameters, OpticsError};

/// Hard cap on merged-beam keys; aborts runaway ensembles.
pub const MAX_ENSEMBLE_KEYS: usize = 10_000_000;

/// Fraction of the saturation intensity below which the CCD reports nothing.
pub const DETECTION_THRESHOLD_FRACTION: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub enum SimError {
    Optics(OpticsError),
    /// More gates applied than the instance has items.
    StageOverflow {
        stage: u32,
        n: usize,
    },
    /// An accumulated shift exceeded 64-bit range.
    ShiftOverflow,
    /// The merged ensemble outgrew [`MAX_ENSEMBLE_KEYS`].
    EnsembleTooLarge(usize),
    /// The reading was taken before the final stage.
    IncompleteReading {
        stage: u32,
        n: usize,
    },
}

impl fmt::Display for SimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimError::Optics(e) => write!(f, "{e}"),
            SimError::StageOverflow { stage, n } => {
                write!(f, "gate applied at stage {stage} of an {n}-item run")
            }
            SimError::ShiftOverflow => write!(f, "accumulated shift overflows 64 bits"),
            SimError::EnsembleTooLarge(n) => {
                write!(f, "ensemble of {n} beams exceeds the merge-key cap")
            }
            SimError::IncompleteReading { stage, n } => {
                write!(f, "CCD read at stage {stage}, before the final stage {n}")
            }
        }
    }
}

impl From<OpticsError> for SimError {
    fn from(e: OpticsError) -> Self {
        SimError::Optics(e)
    }
}

/// One merged beam on the integer shift lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct Beam {
    /// Accumulated weight sum, in shift units.
    pub z_units: u64,
    /// Accumulated profit sum, in shift units (0 for the decision variants).
    pub y_units: u64,
    /// Normalized field amplitude; intensity is the square.
    pub amplitude: f64,
    /// Current beam diameter, meters.
    pub width: f64,
    /// Field phase, radians.
    pub phase: f64,
}

impl Beam {
    pub fn intensity(&self) -> f64 {
        self.amplitude * self.amplitude
    }
}

/// The set of beams after some number of gates, merged per lattice site.
#[derive(Debug, Clone)]
pub struct BeamEnsemble {
    stage: u32,
    beams: BTreeMap<(u64, u64), Beam>,
    counts: Vec<usize>,
}

impl BeamEnsemble {
    /// A fresh ensemble holding the single source beam at the origin.
    pub fn new(dev: &DeviceParameters) -> BeamEnsemble {
        let mut beams = BTreeMap::new();
        beams.insert(
            (0, 0),
            Beam {
                z_units: 0,
                y_units: 0,
                amplitude: 1.0,
                width: dev.beam_diameter,
                phase: 0.0,
            },
        );
        BeamEnsemble {
            stage: 0,
            beams,
            counts: Vec::from([1]),
        }
    }

    pub fn stage(&self) -> u32 {
        self.stage
    }

    pub fn beams(&self) -> impl Iterator<Item = &Beam> {
        self.beams.values()
    }

    pub fn len(&self) -> usize {
        self.beams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beams.is_empty()
    }

    /// Merged-beam count after each stage, starting at stage 0.
    pub fn count_history(&self) -> &[usize] {
        &self.counts
    }

    pub fn total_intensity(&self) -> f64 {
        self.beams.values().map(Beam::intensity).sum()
    }

    /// Runs one gate: split, shift by (`z_shift`, `y_shift`), amplify with
    /// saturation, jitter phases, merge coincident beams coherently.
    pub fn apply_gate(
        &mut self,
        z_shift: u64,
        y_shift: u64,
        dev: &DeviceParameters,
        rng: &mut ChaCha8Rng,
    ) -> Result<(), SimError> {
        let alpha = dev.divergence_angle()?;
        let spread = dev.gate_spacing * libm::sin(alpha);
        let split = 1.0 / libm::sqrt(2.0);

        // Children from all parents, grouped per target site. Within one
        // gate the unshifted children stay pairwise distinct and so do the
        // shifted ones, so every site receives at most two contributions.
        // A zero shift recombines both halves on the same trajectory, which
        // under ideal phase alignment is the identity: keep one child at full
        // amplitude instead of summing a beam with itself.
        let passthrough = z_shift == 0 && y_shift == 0;
        let mut arrivals: BTreeMap<(u64, u64), Vec<(f64, f64, f64)>> = BTreeMap::new();
        for beam in self.beams.values() {
            let width = beam.width + spread;
            let shifted_key = (
                beam.z_units.checked_add(z_shift).ok_or(SimError::ShiftOverflow)?,
                beam.y_units.checked_add(y_shift).ok_or(SimError::ShiftOverflow)?,
            );
            let keys: &[(u64, u64)] = if passthrough {
                &[(beam.z_units, beam.y_units)]
            } else {
                &[(beam.z_units, beam.y_units), shifted_key]
            };
            for &key in keys {
                let mut amplitude = if passthrough {
                    beam.amplitude
                } else {
                    beam.amplitude * split
                };
                // saturating amplifier, per arriving beam
                let boosted = dev.gain * amplitude * amplitude;
                let intensity = if boosted > dev.saturation_intensity {
                    dev.saturation_intensity
                } else {
                    boosted
                };
                amplitude = libm::sqrt(intensity);
                let phase = beam.phase + sample_jitter(dev.phase_jitter, rng);
                arrivals.entry(key).or_default().push((amplitude, phase, width));
            }
        }
        if arrivals.len() > MAX_ENSEMBLE_KEYS {
            return Err(SimError::EnsembleTooLarge(arrivals.len()));
        }

        let mut merged = BTreeMap::new();
        for (key, parts) in arrivals {
            let beam = merge_coherent(key, &parts, dev.saturation_intensity);
            merged.insert(key, beam);
        }
        self.beams = merged;
        self.stage += 1;
        self.counts.push(self.beams.len());
        Ok(())
    }
}

/// Coherent combination of the arriving fields, clamped at saturation.
///
/// Modeled as the bright port of a lossless combiner: the complex field sum
/// scaled by `1/sqrt(k)` for `k` inputs, the dark port being discarded. Fully
/// aligned inputs of equal strength then deliver their entire energy to the
/// bright port, opposed phases cancel, and the total can never exceed the sum
/// of the arriving intensities.
fn merge_coherent(key: (u64, u64), parts: &[(f64, f64, f64)], i_sat: f64) -> Beam {
    if parts.len() == 1 {
        let (amplitude, phase, width) = parts[0];
        return Beam {
            z_units: key.0,
            y_units: key.1,
            amplitude,
            width,
            phase,
        };
    }
    let mut re = 0.0;
    let mut im = 0.0;
    let mut width = 0.0f64;
    for &(a, p, w) in parts {
        re += a * libm::cos(p);
        im += a * libm::sin(p);
        width = width.max(w);
    }
    let norm = parts.len() as f64;
    let mut intensity = (re * re + im * im) / norm;
    if intensity > i_sat {
        intensity = i_sat;
    }
    Beam {
        z_units: key.0,
        y_units: key.1,
        amplitude: libm::sqrt(intensity),
        width,
        phase: libm::atan2(im, re),
    }
}

/// Box-Muller normal draw with the configured deviation. A zero deviation
/// short-circuits to exactly zero so the ideal path stays bit-deterministic.
fn sample_jitter(sigma: f64, rng: &mut ChaCha8Rng) -> f64 {
    if sigma == 0.0 {
        return 0.0;
    }
    let u1 = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    let u2 = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    let u1 = if u1 <= f64::MIN_POSITIVE { f64::MIN_POSITIVE } else { u1 };
    sigma * libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * core::f64::consts::PI * u2)
}

/// Runs the full gate chain for an instance, one gate per item. For the
/// decision variants the profit shift is zero at every gate.
pub fn propagate(
    inst: &KnapsackInstance,
    dev: &DeviceParameters,
    seed: u64,
) -> Result<BeamEnsemble, SimError> {
    propagate_observed(inst, dev, seed, &mut |_| {})
}

/// As [`propagate`], invoking `observer` on the ensemble after every stage
/// (including the initial one).
pub fn propagate_observed(
    inst: &KnapsackInstance,
    dev: &DeviceParameters,
    seed: u64,
    observer: &mut dyn FnMut(&BeamEnsemble),
) -> Result<BeamEnsemble, SimError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ens = BeamEnsemble::new(dev);
    observer(&ens);
    let weights = inst.weights();
    let profits = inst.profits();
    for i in 0..inst.n() {
        let y = profits.map_or(0, |p| p[i]);
        ens.apply_gate(weights[i], y, dev, &mut rng)?;
        observer(&ens);
    }
    Ok(ens)
}

/// Pixel-binned intensity map at the output plane.
#[derive(Debug, Clone)]
pub struct CcdReading {
    /// Pixel size, meters.
    pub pixel_size: f64,
    /// Intensity per (z, y) pixel index; below-threshold entries dropped.
    pub intensity: BTreeMap<(u64, u64), f64>,
    /// Detection floor applied to beam intensities.
    pub threshold: f64,
    /// Surviving beam centers in meters, (z, y).
    pub centers: Vec<(f64, f64)>,
    /// Center pairs closer than the broadened beam diameter.
    pub unresolved_pairs: usize,
}

/// Bins the final ensemble onto the CCD pixel lattice. Beams dimmer than the
/// detection threshold are dropped; surviving centers closer than the output
/// beam diameter are counted as unresolved.
pub fn ccd_read(ens: &BeamEnsemble, dev: &DeviceParameters) -> Result<CcdReading, SimError> {
    let alpha = dev.divergence_angle()?;
    let d_final = crate::optics::final_diameter(
        dev.n_gates.max(ens.stage),
        dev.gate_spacing,
        alpha,
        dev.beam_diameter,
    )?;
    let threshold = dev.saturation_intensity * DETECTION_THRESHOLD_FRACTION;
    let mut intensity: BTreeMap<(u64, u64), f64> = BTreeMap::new();
    let mut centers = Vec::new();
    for beam in ens.beams() {
        if beam.intensity() < threshold {
            continue;
        }
        let z = beam.z_units as f64 * dev.shift_unit;
        let y = beam.y_units as f64 * dev.shift_unit;
        let pixel = (
            libm::floor(z / dev.pixel_size) as u64,
            libm::floor(y / dev.pixel_size) as u64,
        );
        *intensity.entry(pixel).or_insert(0.0) += beam.intensity();
        centers.push((z, y));
    }
    let unresolved_pairs = count_unresolved(&centers, d_final);
    Ok(CcdReading {
        pixel_size: dev.pixel_size,
        intensity,
        threshold,
        centers,
        unresolved_pairs,
    })
}

/// Counts center pairs with Euclidean distance below `d_final`. Centers come
/// sorted lexicographically from the ensemble's key order, so the scan can
/// stop once the z gap alone exceeds the diameter.
fn count_unresolved(centers: &[(f64, f64)], d_final: f64) -> usize {
    let mut pairs = 0;
    for (i, &(zi, yi)) in centers.iter().enumerate() {
        for &(zj, yj) in &centers[i + 1..] {
            if zj - zi >= d_final {
                break;
            }
            let dz = zj - zi;
            let dy = yj - yi;
            if dz * dz + dy * dy < d_final * d_final {
                pairs += 1;
            }
        }
    }
    pairs
}

#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    GeometryInfeasible(Vec<crate::optics::Violation>),
    UnresolvedBeams(usize),
    DroppedItems(usize),
    NoBeamDetected,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::GeometryInfeasible(vs) => {
                let mut names: Vec<String> = Vec::new();
                for v in vs {
                    names.push(format!("{v}"));
                }
                write!(f, "geometry infeasible: {}", names.join(", "))
            }
            Warning::UnresolvedBeams(n) => write!(f, "{n} unresolved beam pairs"),
            Warning::DroppedItems(n) => write!(f, "{n} oversized items dropped"),
            Warning::NoBeamDetected => write!(f, "no beam above the detection threshold"),
        }
    }
}

/// What the device answered, with enough telemetry to audit the run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult {
    pub answer: Answer,
    /// Detected beam centers in meters, (z, y).
    pub detected_offsets: Vec<(f64, f64)>,
    /// Merged-beam counts per stage, starting at stage 0.
    pub beam_count_history: Vec<usize>,
    pub warnings: Vec<Warning>,
}

/// Physical detection window for a run, in meters.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionWindow {
    pub y_min: f64,
    pub y_max: f64,
    /// Maximal admissible z offset for the optimization readout.
    pub z_budget: Option<f64>,
}

/// The window the CCD watches for a given instance and shift unit.
pub fn detection_window(inst: &KnapsackInstance, dev: &DeviceParameters) -> DetectionWindow {
    let kappa = dev.shift_unit;
    match inst {
        KnapsackInstance::ExactSum { target, .. } => DetectionWindow {
            y_min: *target as f64 * kappa - kappa / 2.0,
            y_max: *target as f64 * kappa + kappa / 2.0,
            z_budget: None,
        },
        KnapsackInstance::IntervalSum {
            bound_lo, bound_hi, ..
        } => DetectionWindow {
            y_min: *bound_lo as f64 * kappa,
            y_max: *bound_hi as f64 * kappa,
            z_budget: None,
        },
        KnapsackInstance::Optimization { bound_hi, .. } => DetectionWindow {
            y_min: 0.0,
            y_max: f64::INFINITY,
            z_budget: Some(*bound_hi as f64 * kappa - dev.pixel_size),
        },
    }
}

/// Turns a CCD reading into the variant's answer.
///
/// The physical readout resolves positions to half a shift unit, so detected
/// centers are snapped to the nearest integer unit before the decision
/// comparisons; the exact-sum check additionally demands the center lie
/// within one pixel of the target offset.
pub fn decide(
    reading: &CcdReading,
    inst: &KnapsackInstance,
    dev: &DeviceParameters,
) -> Result<SimulationResult, SimError> {
    let kappa = dev.shift_unit;
    let mut warnings = Vec::new();
    if reading.unresolved_pairs > 0 {
        warnings.push(Warning::UnresolvedBeams(reading.unresolved_pairs));
    }
    let answer = match inst {
        KnapsackInstance::ExactSum { target, .. } => {
            let z_target = *target as f64 * kappa;
            let hit = reading
                .centers
                .iter()
                .any(|&(z, _)| libm::fabs(z - z_target) <= reading.pixel_size);
            if hit {
                Answer::Yes
            } else {
                Answer::No
            }
        }
        KnapsackInstance::IntervalSum {
            bound_lo, bound_hi, ..
        } => {
            let hit = reading.centers.iter().any(|&(z, _)| {
                let units = libm::round(z / kappa) as u64;
                *bound_lo < units && units < *bound_hi
            });
            if hit {
                Answer::Yes
            } else {
                Answer::No
            }
        }
        KnapsackInstance::Optimization { bound_hi, .. } => {
            let z_budget = *bound_hi as f64 * kappa - reading.pixel_size;
            let best = reading
                .centers
                .iter()
                .filter(|&&(z, _)| z < z_budget)
                .map(|&(_, y)| y)
                .fold(None, |acc: Option<f64>, y| {
                    Some(match acc {
                        Some(a) if a >= y => a,
                        _ => y,
                    })
                });
            match best {
                Some(y) => Answer::Optimum(libm::round(y / kappa) as u64),
                None => {
                    warnings.push(Warning::NoBeamDetected);
                    Answer::Optimum(0)
                }
            }
        }
    };
    Ok(SimulationResult {
        answer,
        detected_offsets: reading.centers.clone(),
        beam_count_history: Vec::new(),
        warnings,
    })
}

/// Full pipeline: feasibility check, gate chain, CCD readout, decision.
/// Infeasible geometry downgrades to a warning rather than refusing the run.
pub fn simulate(
    inst: &KnapsackInstance,
    dev: &DeviceParameters,
    seed: u64,
) -> Result<SimulationResult, SimError> {
    simulate_observed(inst, dev, seed, &mut |_| {})
}

pub fn simulate_observed(
    inst: &KnapsackInstance,
    dev: &DeviceParameters,
    seed: u64,
    observer: &mut dyn FnMut(&BeamEnsemble),
) -> Result<SimulationResult, SimError> {
    let geometry = feasibility_check(dev, inst.cap())?;
    let mut warnings = Vec::new();
    if !geometry.feasible {
        warnings.push(Warning::GeometryInfeasible(geometry.violations.clone()));
    }
    let (reduced, keep) = inst.normalized();
    let dropped = inst.n() - keep.len();
    if dropped > 0 {
        warnings.push(Warning::DroppedItems(dropped));
    }
    let ens = propagate_observed(&reduced, dev, seed, observer)?;
    let reading = ccd_read(&ens, dev)?;
    let mut result = decide(&reading, &reduced, dev)?;
    result.beam_count_history = ens.count_history().to_vec();
    warnings.append(&mut result.warnings);
    result.warnings = warnings;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knapsack::{dp_reachable_sums, KnapsackInstance};
    use crate::optics::{size_device, DeviceParameters};

    fn ideal_device(n: u32, max_sum: u64) -> DeviceParameters {
        size_device(n, max_sum, 5e-7, 10.0 / n.max(1) as f64).unwrap()
    }

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(0)
    }

    #[test]
    fn gate_split_restores_intensity() {
        let dev = ideal_device(1, 3);
        let mut ens = BeamEnsemble::new(&dev);
        ens.apply_gate(3, 0, &dev, &mut rng()).unwrap();
        assert_eq!(ens.len(), 2);
        for beam in ens.beams() {
            assert!((beam.intensity() - 1.0).abs() < 1e-12);
        }
        let keys: Vec<u64> = ens.beams().map(|b| b.z_units).collect();
        assert_eq!(keys, vec![0, 3]);
    }

    #[test]
    fn aligned_merge_is_constructive() {
        // Two parents one shift apart; the gate maps both onto z=5.
        let mut dev = ideal_device(1, 10);
        dev.gain = 1.0;
        dev.saturation_intensity = f64::INFINITY;
        let mut ens = BeamEnsemble::new(&dev);
        ens.beams.clear();
        for z in [2u64, 5] {
            ens.beams.insert(
                (z, 0),
                Beam {
                    z_units: z,
                    y_units: 0,
                    amplitude: 1.0,
                    width: dev.beam_diameter,
                    phase: 0.0,
                },
            );
        }
        ens.apply_gate(3, 0, &dev, &mut rng()).unwrap();
        let merged = &ens.beams[&(5, 0)];
        // Aligned equal inputs: the bright port collects both arriving
        // half-intensities in full.
        let arriving = 1.0 / 2.0f64.sqrt();
        assert!((merged.intensity() - 2.0 * arriving.powi(2)).abs() < 1e-12);
    }

    #[test]
    fn opposed_phases_cancel() {
        let mut dev = ideal_device(1, 10);
        dev.gain = 1.0;
        dev.saturation_intensity = f64::INFINITY;
        let mut ens = BeamEnsemble::new(&dev);
        ens.beams.clear();
        for (z, phase) in [(2u64, 0.0), (5, core::f64::consts::PI)] {
            ens.beams.insert(
                (z, 0),
                Beam {
                    z_units: z,
                    y_units: 0,
                    amplitude: 1.0,
                    width: dev.beam_diameter,
                    phase,
                },
            );
        }
        ens.apply_gate(3, 0, &dev, &mut rng()).unwrap();
        assert!(ens.beams[&(5, 0)].intensity() < 1e-12);
    }

    #[test]
    fn saturation_clamps_merges() {
        let dev = ideal_device(2, 10);
        let mut ens = BeamEnsemble::new(&dev);
        // all paths coincide at z=0
        ens.apply_gate(0, 0, &dev, &mut rng()).unwrap();
        ens.apply_gate(0, 0, &dev, &mut rng()).unwrap();
        assert_eq!(ens.len(), 1);
        let beam = ens.beams().next().unwrap();
        assert!((beam.intensity() - dev.saturation_intensity).abs() < 1e-12);
    }

    #[test]
    fn propagate_yields_subset_sums() {
        let inst = KnapsackInstance::exact_sum(vec![1, 2], 3).unwrap();
        let dev = ideal_device(2, 3);
        let ens = propagate(&inst, &dev, 0).unwrap();
        let keys: Vec<u64> = ens.beams().map(|b| b.z_units).collect();
        assert_eq!(keys, vec![0, 1, 2, 3]);
    }

    #[test]
    fn propagate_two_axis_pairs() {
        let inst = KnapsackInstance::optimization(vec![2, 3, 4], vec![3, 4, 5], 10).unwrap();
        let dev = ideal_device(3, 12);
        let ens = propagate(&inst, &dev, 0).unwrap();
        let mut expected = alloc::collections::BTreeSet::new();
        for mask in 0u32..8 {
            let mut z = 0;
            let mut y = 0;
            for i in 0..3 {
                if mask & (1 << i) != 0 {
                    z += inst.weights()[i];
                    y += inst.profits().unwrap()[i];
                }
            }
            expected.insert((z, y));
        }
        let got: alloc::collections::BTreeSet<(u64, u64)> =
            ens.beams().map(|b| (b.z_units, b.y_units)).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn ccd_pixel_binning() {
        let mut dev = ideal_device(1, 5);
        dev.shift_unit = 5e-3;
        dev.pixel_size = 1e-7;
        let mut ens = BeamEnsemble::new(&dev);
        ens.beams.clear();
        ens.beams.insert(
            (3, 0),
            Beam {
                z_units: 3,
                y_units: 0,
                amplitude: 1.0,
                width: dev.beam_diameter,
                phase: 0.0,
            },
        );
        let reading = ccd_read(&ens, &dev).unwrap();
        assert!(reading.intensity.contains_key(&(150_000, 0)));
    }

    #[test]
    fn ccd_empty_ensemble() {
        let dev = ideal_device(1, 5);
        let mut ens = BeamEnsemble::new(&dev);
        ens.beams.clear();
        let reading = ccd_read(&ens, &dev).unwrap();
        assert!(reading.intensity.is_empty());
        assert_eq!(reading.unresolved_pairs, 0);
    }

    #[test]
    fn separated_beams_resolve() {
        let dev = ideal_device(2, 5);
        let inst = KnapsackInstance::exact_sum(vec![1], 1).unwrap();
        let ens = propagate(&inst, &dev, 0).unwrap();
        let reading = ccd_read(&ens, &dev).unwrap();
        assert_eq!(reading.centers.len(), 2);
        assert_eq!(reading.unresolved_pairs, 0);
    }

    #[test]
    fn simulate_matches_dp_exact_sum() {
        let inst = KnapsackInstance::exact_sum(vec![3, 5, 7], 8).unwrap();
        let dev = ideal_device(3, 8);
        let res = simulate(&inst, &dev, 0).unwrap();
        assert_eq!(res.answer, Answer::Yes);
    }

    #[test]
    fn simulate_interval_out_of_reach() {
        let inst = KnapsackInstance::interval_sum(vec![3, 5, 7], 16, 20).unwrap();
        let dev = ideal_device(3, 20);
        let res = simulate(&inst, &dev, 0).unwrap();
        assert_eq!(res.answer, Answer::No);
    }

    #[test]
    fn simulate_measures_optimum() {
        let inst = KnapsackInstance::optimization(vec![2, 3, 4], vec![3, 4, 5], 6).unwrap();
        let dev = ideal_device(3, 12);
        let res = simulate(&inst, &dev, 0).unwrap();
        assert_eq!(res.answer, Answer::Optimum(7));
    }

    #[test]
    fn simulate_is_deterministic() {
        let inst = KnapsackInstance::exact_sum(vec![3, 5, 7], 8).unwrap();
        let mut dev = ideal_device(3, 8);
        dev.phase_jitter = 0.3;
        let a = simulate(&inst, &dev, 42).unwrap();
        let b = simulate(&inst, &dev, 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn undersized_shift_warns_unresolved() {
        let inst = KnapsackInstance::exact_sum(vec![1, 2], 3).unwrap();
        let mut dev = ideal_device(2, 3);
        dev.shift_unit = feasibility_check(&dev, 3).unwrap().d_final / 4.0;
        let res = simulate(&inst, &dev, 0).unwrap();
        assert!(res
            .warnings
            .iter()
            .any(|w| matches!(w, Warning::GeometryInfeasible(_))));
        assert!(res
            .warnings
            .iter()
            .any(|w| matches!(w, Warning::UnresolvedBeams(_))));
    }

    #[test]
    fn beam_counts_track_subsum_sets() {
        let weights = vec![2u64, 3, 4, 3];
        let cap = 12u64;
        let inst = KnapsackInstance::exact_sum(weights.clone(), cap).unwrap();
        let dev = ideal_device(4, cap);
        let ens = propagate(&inst, &dev, 0).unwrap();
        let stages = crate::knapsack::dp_stages(&weights, cap).unwrap();
        let counts: Vec<usize> = stages.iter().map(|s| s.len()).collect();
        assert_eq!(ens.count_history(), counts.as_slice());
        let final_set = dp_reachable_sums(&weights, cap).unwrap();
        assert_eq!(ens.len(), final_set.len());
    }
}
