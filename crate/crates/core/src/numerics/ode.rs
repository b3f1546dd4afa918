use crate::error::{Error, Result};

/// Number of equal steps covering `t_end` with steps no longer than `max_step`.
pub fn steps_for(t_end: f64, max_step: f64) -> usize {
    if t_end <= 0.0 {
        0
    } else {
        (t_end / max_step).ceil().max(1.0) as usize
    }
}

/// Classical fourth-order Runge-Kutta from `t = 0` to `t_end` with a step no
/// longer than `dt`. The step is shortened so that the last one lands exactly
/// on `t_end`.
///
/// `rhs(y, dy)` writes the time derivative of the (autonomous) state `y`.
pub fn integrate_ode<F>(rhs: F, y0: &[f64], t_end: f64, dt: f64) -> Result<Vec<f64>>
where
    F: FnMut(&[f64], &mut [f64]),
{
    if !(dt > 0.0) {
        return Err(Error::InvalidParameter { name: "dt", reason: format!("must be > 0, got {dt}") });
    }
    if !(t_end >= 0.0) {
        return Err(Error::NegativeTime(t_end));
    }
    integrate_ode_steps(rhs, y0, t_end, steps_for(t_end, dt))
}

/// Fixed-count variant of [`integrate_ode`]: exactly `steps` RK4 steps.
pub fn integrate_ode_steps<F>(mut rhs: F, y0: &[f64], t_end: f64, steps: usize) -> Result<Vec<f64>>
where
    F: FnMut(&[f64], &mut [f64]),
{
    let mut y = y0.to_vec();
    if steps == 0 || t_end == 0.0 {
        return Ok(y);
    }
    let n = y.len();
    let h = t_end / steps as f64;
    let (mut k1, mut k2, mut k3, mut k4) = (vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    let mut tmp = vec![0.0; n];

    for step in 0..steps {
        rhs(&y, &mut k1);
        for i in 0..n {
            tmp[i] = y[i] + 0.5 * h * k1[i];
        }
        rhs(&tmp, &mut k2);
        for i in 0..n {
            tmp[i] = y[i] + 0.5 * h * k2[i];
        }
        rhs(&tmp, &mut k3);
        for i in 0..n {
            tmp[i] = y[i] + h * k3[i];
        }
        rhs(&tmp, &mut k4);
        for i in 0..n {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteState { time: h * (step + 1) as f64 });
        }
    }
    Ok(y)
}
