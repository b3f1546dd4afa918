use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 200;

/// Root of a scalar function together with the final bracket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketedRoot {
    pub lo: f64,
    pub hi: f64,
    pub root: f64,
    pub residual: f64,
    pub iterations: usize,
}

impl BracketedRoot {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Brent's method: bisection safeguarding secant and inverse quadratic
/// interpolation steps.
///
/// Terminates once `|f(root)| <= tol` and the sign-change bracket is no wider
/// than `tol`. If the bracket collapses to a few ulps first, the residual
/// test alone decides between success and [`Error::NoConvergence`].
pub fn find_root<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<BracketedRoot>
where
    F: Fn(f64) -> f64,
{
    if !(tol > 0.0) || !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::InvalidParameter {
            name: "bracket",
            reason: format!("need finite lo < hi and tol > 0, got [{lo}, {hi}], tol {tol}"),
        });
    }
    let (mut x_pre, mut x_cur) = (lo, hi);
    let (mut f_pre, mut f_cur) = (f(x_pre), f(x_cur));
    let done = |x: f64, fx: f64, iterations| BracketedRoot { lo: x, hi: x, root: x, residual: fx, iterations };
    if f_pre == 0.0 {
        return Ok(done(x_pre, f_pre, 0));
    }
    if f_cur == 0.0 {
        return Ok(done(x_cur, f_cur, 0));
    }
    if !(f_pre * f_cur < 0.0) {
        return Err(Error::NoSignChange { lo, hi, f_lo: f_pre, f_hi: f_cur });
    }

    let (mut x_blk, mut f_blk) = (0.0, 0.0);
    let (mut s_pre, mut s_cur) = (0.0, 0.0);

    for iteration in 1..=MAX_ITERATIONS {
        if f_pre != 0.0 && f_cur != 0.0 && f_pre.is_sign_negative() != f_cur.is_sign_negative() {
            x_blk = x_pre;
            f_blk = f_pre;
            s_pre = x_cur - x_pre;
            s_cur = s_pre;
        }
        if f_blk.abs() < f_cur.abs() {
            x_pre = x_cur;
            x_cur = x_blk;
            x_blk = x_pre;
            f_pre = f_cur;
            f_cur = f_blk;
            f_blk = f_pre;
        }

        let floor = 2.0 * f64::EPSILON * x_cur.abs() + f64::MIN_POSITIVE;
        let residual_ok = f_cur.abs() <= tol;
        // Keep shrinking at ulp scale until the residual test passes.
        let delta = if residual_ok { 0.5 * tol + floor } else { floor };
        let s_bis = 0.5 * (x_blk - x_cur);

        if f_cur == 0.0 || (residual_ok && (x_blk - x_cur).abs() <= tol) {
            let (a, b) = if x_cur < x_blk { (x_cur, x_blk) } else { (x_blk, x_cur) };
            return Ok(BracketedRoot { lo: a, hi: b, root: x_cur, residual: f_cur, iterations: iteration });
        }
        if s_bis.abs() <= floor {
            return Err(Error::NoConvergence { iterations: iteration, residual: f_cur });
        }

        if s_pre.abs() > delta && f_cur.abs() < f_pre.abs() {
            let s_try = if x_pre == x_blk {
                -f_cur * (x_cur - x_pre) / (f_cur - f_pre)
            } else {
                let d_pre = (f_pre - f_cur) / (x_pre - x_cur);
                let d_blk = (f_blk - f_cur) / (x_blk - x_cur);
                -f_cur * (f_blk * d_blk - f_pre * d_pre) / (d_blk * d_pre * (f_blk - f_pre))
            };
            if 2.0 * s_try.abs() < s_pre.abs().min(3.0 * s_bis.abs() - delta) {
                s_pre = s_cur;
                s_cur = s_try;
            } else {
                s_pre = s_bis;
                s_cur = s_bis;
            }
        } else {
            s_pre = s_bis;
            s_cur = s_bis;
        }

        x_pre = x_cur;
        f_pre = f_cur;
        if s_cur.abs() > delta {
            x_cur += s_cur;
        } else {
            x_cur += delta.copysign(s_bis);
        }
        f_cur = f(x_cur);
        if !f_cur.is_finite() {
            return Err(Error::NoConvergence { iterations: iteration, residual: f_cur });
        }
    }
    Err(Error::NoConvergence { iterations: MAX_ITERATIONS, residual: f_cur })
}
