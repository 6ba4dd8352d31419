pub use num_complex::Complex64;

/// Sine and cosine of an angle in degrees.
///
/// Exact multiples of 90 degrees return exact `0.0`/`±1.0`, so a phase of
/// 90 degrees contributes no interference at all rather than `6e-17`.
pub fn sincos_deg(deg: f64) -> (f64, f64) {
    let quarter = deg / 90.0;
    if quarter == libm::trunc(quarter) && quarter.is_finite() {
        return match libm::fmod(quarter, 4.0) as i64 {
            0 => (0.0, 1.0),
            1 | -3 => (1.0, 0.0),
            2 | -2 => (0.0, -1.0),
            _ => (-1.0, 0.0),
        };
    }
    libm::sincos(deg.to_radians())
}

pub(crate) fn acos_deg(x: f64) -> f64 {
    libm::acos(x.clamp(-1.0, 1.0)).to_degrees()
}

pub(crate) fn unit_phase(deg: f64) -> Complex64 {
    let (s, c) = sincos_deg(deg);
    Complex64::new(c, s)
}
