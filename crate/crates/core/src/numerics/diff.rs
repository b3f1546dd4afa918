use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Derivative {
    First,
    Second,
}

fn check_step(x: f64, h: f64) -> Result<()> {
    if !(h > 0.0) || h < 1e3 * f64::EPSILON * x.abs() {
        Err(Error::StepTooSmall { step: h, x })
    } else {
        Ok(())
    }
}

/// Central difference at steps `h` and `h/2` combined by one Richardson
/// extrapolation, leaving an O(h⁴) truncation error.
pub fn central_diff<F>(f: F, x: f64, h: f64, order: Derivative) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    central_diff_with(|t| Ok(vec![f(t)]), x, h, order).map(|d| d[0])
}

/// Component-wise [`central_diff`] for fallible, vector-valued functions.
pub fn central_diff_with<F>(mut f: F, x: f64, h: f64, order: Derivative) -> Result<Vec<f64>>
where
    F: FnMut(f64) -> Result<Vec<f64>>,
{
    check_step(x, h)?;
    let half = 0.5 * h;
    let plus = f(x + h)?;
    let minus = f(x - h)?;
    let plus_half = f(x + half)?;
    let minus_half = f(x - half)?;
    match order {
        Derivative::First => Ok((0..plus.len())
            .map(|i| {
                let coarse = (plus[i] - minus[i]) / (2.0 * h);
                let fine = (plus_half[i] - minus_half[i]) / h;
                (4.0 * fine - coarse) / 3.0
            })
            .collect()),
        Derivative::Second => {
            let center = f(x)?;
            Ok((0..plus.len())
                .map(|i| {
                    let coarse = (plus[i] - 2.0 * center[i] + minus[i]) / (h * h);
                    let fine = (plus_half[i] - 2.0 * center[i] + minus_half[i]) / (half * half);
                    (4.0 * fine - coarse) / 3.0
                })
                .collect())
        }
    }
}
