//! Implementation, energy, and time estimates for the optical device and a
//! deterministic processor.
//!
//! Every reported quantity carries a trace entry naming the formula and the
//! inputs it was evaluated with, so reports can be audited and recomputed
//! bit-exactly. All asymptotic constants are fixed at 1 and visible in the
//! trace; energies are abstract cost units unless `unit_energy` is changed.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::knapsack::Variant;
use crate::optics::DeviceParameters;

/// Vacuum light speed, m/s.
pub const LIGHT_SPEED: f64 = 2.997_924_58e8;

/// Shared constants behind every cost estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct CostAssumptions {
    /// Deterministic processor rate, operations per second.
    pub op_rate: f64,
    /// Number of repeated runs over different inputs.
    pub repetitions: u64,
    /// Optical run-time constant, seconds per unit of (n + K).
    pub c1: f64,
    /// Preprocessing constant, seconds per unit of K*n.
    pub c2: f64,
    /// Amplifier relaxation time, seconds.
    pub relaxation_time: f64,
    /// Light speed used in flight-time estimates, m/s.
    pub light_speed: f64,
    /// Joules (or abstract units) per elementary energy cost unit.
    pub unit_energy: f64,
}

impl Default for CostAssumptions {
    fn default() -> Self {
        CostAssumptions {
            op_rate: 1e10,
            repetitions: 1,
            c1: 1.0 / LIGHT_SPEED,
            // one second of preprocessing per 1e6 units of K*n
            c2: 1e-6,
            relaxation_time: 1e-8,
            light_speed: LIGHT_SPEED,
            unit_energy: 1.0,
        }
    }
}

impl CostAssumptions {
    fn validate(&self) -> Result<(), CostError> {
        for (value, name) in [
            (self.op_rate, "op_rate"),
            (self.c1, "c1"),
            (self.c2, "c2"),
            (self.relaxation_time, "relaxation_time"),
            (self.light_speed, "light_speed"),
            (self.unit_energy, "unit_energy"),
        ] {
            if !(value > 0.0) {
                return Err(CostError::NonPositiveAssumption(name));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Machine {
    Optical,
    Deterministic,
}

impl fmt::Display for Machine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Machine::Optical => write!(f, "optical"),
            Machine::Deterministic => write!(f, "deterministic"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CostError {
    NonPositiveAssumption(&'static str),
    EpsilonOutOfRange(f64),
    /// Approximation estimates only exist for the optimization variant.
    EpsilonUnsupported(Variant),
    /// Compared reports must describe the same problem.
    VariantMismatch(Variant, Variant),
}

impl fmt::Display for CostError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CostError::NonPositiveAssumption(name) => write!(f, "{name} must be positive"),
            CostError::EpsilonOutOfRange(e) => write!(f, "epsilon {e} outside (0, 1)"),
            CostError::EpsilonUnsupported(v) => {
                write!(f, "approximation costs do not apply to the {v} variant")
            }
            CostError::VariantMismatch(a, b) => {
                write!(f, "cannot compare reports for {a} and {b}")
            }
        }
    }
}

/// Identifier of one closed-form estimate. `eval` recomputes the quantity
/// from named inputs, so a trace entry is self-contained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formula {
    /// k * n — build cost, one-axis device.
    OpticalBuildCost,
    /// k^2 * n — build cost, two-axis device.
    OpticalBuildCostTwoAxis,
    /// k_eff^2 * n — build cost at relative precision eps.
    OpticalBuildCostApprox,
    /// u * k * n * (n + k) * m — energy, one-axis device.
    OpticalEnergy,
    /// u * k^2 * n * (n + k) * m — energy, two-axis device.
    OpticalEnergyTwoAxis,
    /// u * k_eff^2 * n * (n + k_eff) * m — energy at precision eps.
    OpticalEnergyApprox,
    /// c1 * (n + k) * m — abstract run time.
    OpticalRunTime,
    /// c1 * (n + k_eff) * m — abstract run time at precision eps.
    OpticalRunTimeApprox,
    /// c2 * k * n — preprocessing (implementation) time.
    OpticalPreprocessTime,
    /// m * ((n*l + r_m)/c + n*t_atom) — physical flight + amplifier time.
    OpticalFlightTime,
    /// u * k * n * m — deterministic energy.
    DeterministicEnergy,
    /// n * k * m / v — deterministic DP time.
    DeterministicTime,
    /// n^4 * m / (v * eps) — deterministic approximation time.
    DeterministicTimeApprox,
}

fn input(inputs: &[(&'static str, f64)], name: &str) -> f64 {
    inputs
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, v)| *v)
        .unwrap_or(f64::NAN)
}

impl Formula {
    pub fn eval(&self, inputs: &[(&'static str, f64)]) -> f64 {
        let get = |name| input(inputs, name);
        match self {
            Formula::OpticalBuildCost => get("k") * get("n"),
            Formula::OpticalBuildCostTwoAxis => get("k") * get("k") * get("n"),
            Formula::OpticalBuildCostApprox => get("k_eff") * get("k_eff") * get("n"),
            Formula::OpticalEnergy => {
                get("u") * get("k") * get("n") * (get("n") + get("k")) * get("m")
            }
            Formula::OpticalEnergyTwoAxis => {
                get("u") * get("k") * get("k") * get("n") * (get("n") + get("k")) * get("m")
            }
            Formula::OpticalEnergyApprox => {
                get("u")
                    * get("k_eff")
                    * get("k_eff")
                    * get("n")
                    * (get("n") + get("k_eff"))
                    * get("m")
            }
            Formula::OpticalRunTime => get("c1") * (get("n") + get("k")) * get("m"),
            Formula::OpticalRunTimeApprox => get("c1") * (get("n") + get("k_eff")) * get("m"),
            Formula::OpticalPreprocessTime => get("c2") * get("k") * get("n"),
            Formula::OpticalFlightTime => {
                get("m")
                    * ((get("n") * get("l") + get("r_m")) / get("c")
                        + get("n") * get("t_atom"))
            }
            Formula::DeterministicEnergy => get("u") * get("k") * get("n") * get("m"),
            Formula::DeterministicTime => get("n") * get("k") * get("m") / get("v"),
            Formula::DeterministicTimeApprox => {
                get("n") * get("n") * get("n") * get("n") * get("m") / (get("v") * get("eps"))
            }
        }
    }
}

/// One audited quantity: what was computed, from which formula and inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceEntry {
    pub quantity: &'static str,
    pub formula: Formula,
    pub inputs: Vec<(&'static str, f64)>,
    pub value: f64,
}

fn traced(
    quantity: &'static str,
    formula: Formula,
    inputs: Vec<(&'static str, f64)>,
) -> TraceEntry {
    let value = formula.eval(&inputs);
    TraceEntry {
        quantity,
        formula,
        inputs,
        value,
    }
}

/// Cost estimate for one machine solving one problem `repetitions` times.
#[derive(Debug, Clone, PartialEq)]
pub struct CostReport {
    pub machine: Machine,
    pub variant: Variant,
    pub repetitions: u64,
    /// One-off build cost, abstract units.
    pub implementation_cost: f64,
    /// Total running energy, abstract units.
    pub energy_cost: f64,
    /// Total running time, seconds.
    pub time_total: f64,
    /// One-off preprocessing time, seconds.
    pub time_preprocessing: f64,
    pub formula_trace: Vec<TraceEntry>,
}

/// Deterministic DP time for a problem of `n` items and bound `bound`:
/// `M * n * bound / V`.
pub fn deterministic_time(n: u32, bound: u64, assum: &CostAssumptions) -> f64 {
    assum.repetitions as f64 * n as f64 * bound as f64 / assum.op_rate
}

/// Physical optical run time: flight over the gate chain and mirror plus the
/// amplifier dwell, `M * ((n*L + R_M)/c + n*T_atom)`.
pub fn qod_time(
    n: u32,
    gate_spacing: f64,
    mirror_size: f64,
    assum: &CostAssumptions,
) -> f64 {
    assum.repetitions as f64
        * ((n as f64 * gate_spacing + mirror_size) / assum.light_speed
            + n as f64 * assum.relaxation_time)
}

/// Builds the paired cost reports for one problem: the optical device and
/// the deterministic baseline.
///
/// `cap` is the bound the device must represent (K or B+). For the
/// optimization variant the mirror area scales as `cap^2`; when `approx_eps`
/// is given the effective scale becomes `delta_p / (eps * kappa)` and the
/// deterministic side uses the approximation runtime. A device, when
/// supplied, replaces the abstract optical run time with the physical flight
/// time.
#[allow(clippy::too_many_arguments)]
pub fn cost_report(
    variant: Variant,
    n: u32,
    cap: u64,
    assum: &CostAssumptions,
    approx_eps: Option<f64>,
    pixel_size: f64,
    shift_unit: f64,
    device: Option<&DeviceParameters>,
) -> Result<(CostReport, CostReport), CostError> {
    assum.validate()?;
    if let Some(eps) = approx_eps {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(CostError::EpsilonOutOfRange(eps));
        }
        if variant != Variant::Optimization {
            return Err(CostError::EpsilonUnsupported(variant));
        }
    }
    let nf = n as f64;
    let kf = cap as f64;
    let mf = assum.repetitions as f64;
    let base: Vec<(&'static str, f64)> = vec![
        ("n", nf),
        ("k", kf),
        ("m", mf),
        ("u", assum.unit_energy),
        ("c1", assum.c1),
        ("c2", assum.c2),
        ("v", assum.op_rate),
    ];

    let mut optical_trace = Vec::new();
    let (build, energy, run_time) = match (variant, approx_eps) {
        (Variant::Optimization, Some(eps)) => {
            let k_eff = pixel_size / (eps * shift_unit);
            let mut inputs = base.clone();
            inputs.push(("k_eff", k_eff));
            inputs.push(("eps", eps));
            let build = traced("CI", Formula::OpticalBuildCostApprox, inputs.clone());
            let energy = traced("CE", Formula::OpticalEnergyApprox, inputs.clone());
            let time = traced("Time", Formula::OpticalRunTimeApprox, inputs);
            (build, energy, time)
        }
        (Variant::Optimization, None) => {
            let build = traced("CI", Formula::OpticalBuildCostTwoAxis, base.clone());
            let energy = traced("CE", Formula::OpticalEnergyTwoAxis, base.clone());
            let time = traced("Time", Formula::OpticalRunTime, base.clone());
            (build, energy, time)
        }
        _ => {
            let build = traced("CI", Formula::OpticalBuildCost, base.clone());
            let energy = traced("CE", Formula::OpticalEnergy, base.clone());
            let time = traced("Time", Formula::OpticalRunTime, base.clone());
            (build, energy, time)
        }
    };
    let preprocess = traced("Time_pre", Formula::OpticalPreprocessTime, base.clone());

    let mut time_total = run_time.value;
    optical_trace.push(build.clone());
    optical_trace.push(energy.clone());
    optical_trace.push(run_time);
    optical_trace.push(preprocess.clone());
    if let Some(dev) = device {
        let inputs = vec![
            ("m", mf),
            ("n", nf),
            ("l", dev.gate_spacing),
            ("r_m", dev.mirror_size),
            ("c", assum.light_speed),
            ("t_atom", assum.relaxation_time),
        ];
        let flight = traced("Time_physical", Formula::OpticalFlightTime, inputs);
        time_total = flight.value;
        optical_trace.push(flight);
    }

    let optical = CostReport {
        machine: Machine::Optical,
        variant,
        repetitions: assum.repetitions,
        implementation_cost: build.value,
        energy_cost: energy.value,
        time_total,
        time_preprocessing: preprocess.value,
        formula_trace: optical_trace,
    };

    let det_energy = traced("CE", Formula::DeterministicEnergy, base.clone());
    let det_time = match approx_eps {
        Some(eps) => {
            let mut inputs = base.clone();
            inputs.push(("eps", eps));
            traced("Time", Formula::DeterministicTimeApprox, inputs)
        }
        None => traced("Time", Formula::DeterministicTime, base),
    };
    let deterministic = CostReport {
        machine: Machine::Deterministic,
        variant,
        repetitions: assum.repetitions,
        implementation_cost: 0.0,
        energy_cost: det_energy.value,
        time_total: det_time.value,
        time_preprocessing: 0.0,
        formula_trace: vec![det_energy, det_time.clone()],
    };
    Ok((optical, deterministic))
}

/// Head-to-head comparison of two cost reports.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    /// Deterministic-to-optical running-time ratio; infinite when the
    /// optical time is zero.
    pub time_ratio: f64,
    /// Deterministic-to-optical energy ratio.
    pub energy_ratio: f64,
    /// Smallest repetition count at which the optical machine, including its
    /// preprocessing, beats the deterministic one; `None` when it never does.
    pub crossover_repetitions: Option<u64>,
    /// Energy-time products, reported without asserting any tradeoff bound.
    pub energy_time_optical: f64,
    pub energy_time_deterministic: f64,
}

fn ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        f64::INFINITY
    } else {
        num / den
    }
}

pub fn compare(optical: &CostReport, deterministic: &CostReport) -> Result<Comparison, CostError> {
    if optical.variant != deterministic.variant {
        return Err(CostError::VariantMismatch(
            optical.variant,
            deterministic.variant,
        ));
    }
    let m = optical.repetitions.max(1) as f64;
    let per_optical = optical.time_total / m;
    let per_det = deterministic.time_total / deterministic.repetitions.max(1) as f64;
    let crossover = if per_det > per_optical {
        let runs = optical.time_preprocessing / (per_det - per_optical);
        Some(libm::floor(runs) as u64 + 1)
    } else {
        None
    };
    Ok(Comparison {
        time_ratio: ratio(deterministic.time_total, optical.time_total),
        energy_ratio: ratio(deterministic.energy_cost, optical.energy_cost),
        crossover_repetitions: crossover,
        energy_time_optical: optical.energy_cost * optical.time_total,
        energy_time_deterministic: deterministic.energy_cost * deterministic.time_total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optics::DeviceParameters;

    fn reference_device() -> DeviceParameters {
        DeviceParameters {
            wavelength: 5e-7,
            beam_diameter: 2e-3,
            gate_spacing: 10.0 / 30.0,
            n_gates: 30,
            mirror_size: 10.0,
            shift_unit: 5e-3,
            pixel_size: 1e-7,
            saturation_intensity: 1.0,
            gain: 2.0,
            relaxation_time: 1e-8,
            phase_jitter: 0.0,
        }
    }

    #[test]
    fn deterministic_time_reference() {
        let assum = CostAssumptions::default();
        let t = deterministic_time(30, 200, &assum);
        assert!((t - 6e-7).abs() < 1e-12);
        // order-of-magnitude agreement with the quoted ~1e-6 s
        assert!(t > 3e-7 && t < 2e-6);
    }

    #[test]
    fn deterministic_time_scales_linearly() {
        let mut assum = CostAssumptions::default();
        let t1 = deterministic_time(30, 200, &assum);
        assum.repetitions = 10;
        assert!((deterministic_time(30, 200, &assum) - 10.0 * t1).abs() < 1e-18);
        assert_eq!(deterministic_time(30, 0, &assum), 0.0);
    }

    #[test]
    fn optical_time_reference() {
        let assum = CostAssumptions::default();
        let t = qod_time(30, 1.0 / 3.0, 10.0, &assum);
        // (10 + 10)/c + 30e-8 ~ 3.67e-7 s
        assert!(t > 1e-7 && t < 2e-6);
        let mut assum2 = assum.clone();
        assum2.repetitions = 2;
        assert!((qod_time(30, 1.0 / 3.0, 10.0, &assum2) - 2.0 * t).abs() < 1e-18);
    }

    #[test]
    fn flight_time_degenerates_to_pure_flight() {
        let mut assum = CostAssumptions::default();
        assum.relaxation_time = f64::MIN_POSITIVE;
        let t = qod_time(30, 1.0 / 3.0, 1e-300, &assum);
        assert!((t - 10.0 / assum.light_speed).abs() < 1e-12);
    }

    #[test]
    fn report_variant2_reference() {
        let assum = CostAssumptions::default();
        let (optical, det) =
            cost_report(Variant::IntervalSum, 30, 200, &assum, None, 1e-7, 5e-3, None).unwrap();
        assert_eq!(optical.implementation_cost, 6000.0);
        assert!((optical.time_total - assum.c1 * 230.0).abs() < 1e-15);
        assert!(det.time_total > 0.0);
        assert!(!optical.formula_trace.is_empty());
    }

    #[test]
    fn report_variant3_quadratic_mirror() {
        let assum = CostAssumptions::default();
        let (optical, _) =
            cost_report(Variant::Optimization, 30, 200, &assum, None, 1e-7, 5e-3, None).unwrap();
        assert_eq!(optical.implementation_cost, 1.2e6);
    }

    #[test]
    fn zero_repetitions_zero_running_costs() {
        let mut assum = CostAssumptions::default();
        assum.repetitions = 0;
        let (optical, det) =
            cost_report(Variant::IntervalSum, 30, 200, &assum, None, 1e-7, 5e-3, None).unwrap();
        assert_eq!(optical.energy_cost, 0.0);
        assert_eq!(optical.time_total, 0.0);
        assert_eq!(det.time_total, 0.0);
        // build cost is input-independent
        assert_eq!(optical.implementation_cost, 6000.0);
    }

    #[test]
    fn trace_recomputes_bit_exactly() {
        let assum = CostAssumptions::default();
        let dev = reference_device();
        let (optical, det) = cost_report(
            Variant::Optimization,
            30,
            200,
            &assum,
            Some(2.5e-4),
            dev.pixel_size,
            dev.shift_unit,
            Some(&dev),
        )
        .unwrap();
        for entry in optical.formula_trace.iter().chain(det.formula_trace.iter()) {
            assert_eq!(entry.formula.eval(&entry.inputs), entry.value);
        }
    }

    #[test]
    fn acceleration_scenario() {
        // eps = (kappa/2)/R_M for the reference build
        let dev = reference_device();
        let eps = (dev.shift_unit / 2.0) / dev.mirror_size;
        assert!((eps - 2.5e-4).abs() < 1e-12);
        let assum = CostAssumptions::default();
        let (optical, det) = cost_report(
            Variant::Optimization,
            30,
            200,
            &assum,
            Some(eps),
            dev.pixel_size,
            dev.shift_unit,
            Some(&dev),
        )
        .unwrap();
        let cmp = compare(&optical, &det).unwrap();
        assert!(cmp.time_ratio >= 1e5 && cmp.time_ratio <= 1e7, "{}", cmp.time_ratio);
    }

    #[test]
    fn identical_reports_compare_to_unity() {
        let assum = CostAssumptions::default();
        let (optical, _) =
            cost_report(Variant::IntervalSum, 30, 200, &assum, None, 1e-7, 5e-3, None).unwrap();
        let cmp = compare(&optical, &optical).unwrap();
        assert_eq!(cmp.time_ratio, 1.0);
        assert_eq!(cmp.energy_ratio, 1.0);
    }

    #[test]
    fn zero_optical_time_reports_infinite_ratio() {
        let assum = CostAssumptions::default();
        let (mut optical, det) =
            cost_report(Variant::IntervalSum, 30, 200, &assum, None, 1e-7, 5e-3, None).unwrap();
        optical.time_total = 0.0;
        let cmp = compare(&optical, &det).unwrap();
        assert!(cmp.time_ratio.is_infinite());
    }

    #[test]
    fn epsilon_validation() {
        let assum = CostAssumptions::default();
        assert!(matches!(
            cost_report(Variant::Optimization, 3, 5, &assum, Some(1.5), 1e-7, 5e-3, None),
            Err(CostError::EpsilonOutOfRange(_))
        ));
        assert!(matches!(
            cost_report(Variant::ExactSum, 3, 5, &assum, Some(0.5), 1e-7, 5e-3, None),
            Err(CostError::EpsilonUnsupported(_))
        ));
    }

    #[test]
    fn crossover_repetitions() {
        // optical per-run faster than deterministic, nonzero preprocessing
        let assum = CostAssumptions::default();
        let dev = reference_device();
        let (optical, det) = cost_report(
            Variant::IntervalSum,
            30,
            200,
            &assum,
            None,
            dev.pixel_size,
            dev.shift_unit,
            Some(&dev),
        )
        .unwrap();
        let cmp = compare(&optical, &det).unwrap();
        let m = cmp.crossover_repetitions.expect("optical wins eventually");
        let per_opt = optical.time_total;
        let per_det = det.time_total;
        assert!(m as f64 * per_det >= (m as f64) * per_opt);
        assert!(
            m as f64 * per_det + 0.0 >= optical.time_preprocessing + m as f64 * per_opt
                || (m as f64 - 1.0) * per_det
                    < optical.time_preprocessing + (m as f64 - 1.0) * per_opt
        );
    }
}
