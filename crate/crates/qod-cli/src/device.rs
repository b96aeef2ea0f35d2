//! `key=value` device-parameter files, SI units.
//!
//! Required keys: `lambda`, `d_b`, `L`, `n_gates`, `R_M`, `kappa`. Optional
//! with defaults: `delta_p` (1e-7), `T_atom` (1e-8), `gain` (2), `I_sat` (1),
//! `phase_jitter` (0).

use qod_core::optics::{
    DeviceParameters, DEFAULT_GAIN, DEFAULT_PIXEL_SIZE, DEFAULT_RELAXATION_TIME,
    DEFAULT_SATURATION,
};

use crate::instance::ParseError;

pub fn parse_device(source: &str) -> Result<DeviceParameters, ParseError> {
    let mut dev = DeviceParameters {
        wavelength: 0.0,
        beam_diameter: 0.0,
        gate_spacing: 0.0,
        n_gates: 0,
        mirror_size: 0.0,
        shift_unit: 0.0,
        pixel_size: DEFAULT_PIXEL_SIZE,
        saturation_intensity: DEFAULT_SATURATION,
        gain: DEFAULT_GAIN,
        relaxation_time: DEFAULT_RELAXATION_TIME,
        phase_jitter: 0.0,
    };
    let mut seen = Vec::new();
    for (idx, raw) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| ParseError {
            line: line_no,
            message: format!("expected key=value, got `{line}`"),
        })?;
        let key = key.trim();
        let value = value.trim();
        if seen.contains(&key.to_string()) {
            return Err(ParseError {
                line: line_no,
                message: format!("duplicate key `{key}`"),
            });
        }
        seen.push(key.to_string());
        let number = |v: &str| -> Result<f64, ParseError> {
            v.parse::<f64>().map_err(|_| ParseError {
                line: line_no,
                message: format!("invalid number `{v}`"),
            })
        };
        match key {
            "lambda" => dev.wavelength = number(value)?,
            "d_b" => dev.beam_diameter = number(value)?,
            "L" => dev.gate_spacing = number(value)?,
            "n_gates" => {
                dev.n_gates = value.parse::<u32>().map_err(|_| ParseError {
                    line: line_no,
                    message: format!("invalid gate count `{value}`"),
                })?
            }
            "R_M" => dev.mirror_size = number(value)?,
            "kappa" => dev.shift_unit = number(value)?,
            "delta_p" => dev.pixel_size = number(value)?,
            "T_atom" => dev.relaxation_time = number(value)?,
            "gain" => dev.gain = number(value)?,
            "I_sat" => dev.saturation_intensity = number(value)?,
            "phase_jitter" => dev.phase_jitter = number(value)?,
            other => {
                return Err(ParseError {
                    line: line_no,
                    message: format!("unknown key `{other}`"),
                })
            }
        }
    }
    for required in ["lambda", "d_b", "L", "n_gates", "R_M", "kappa"] {
        if !seen.contains(&required.to_string()) {
            return Err(ParseError {
                line: 0,
                message: format!("missing required key `{required}`"),
            });
        }
    }
    dev.validate().map_err(|e| ParseError {
        line: 0,
        message: e.to_string(),
    })?;
    Ok(dev)
}

pub fn emit_device(dev: &DeviceParameters) -> String {
    format!(
        "lambda={}\nd_b={}\nL={}\nn_gates={}\nR_M={}\nkappa={}\ndelta_p={}\nT_atom={}\ngain={}\nI_sat={}\nphase_jitter={}\n",
        dev.wavelength,
        dev.beam_diameter,
        dev.gate_spacing,
        dev.n_gates,
        dev.mirror_size,
        dev.shift_unit,
        dev.pixel_size,
        dev.relaxation_time,
        dev.gain,
        dev.saturation_intensity,
        dev.phase_jitter,
    )
}
