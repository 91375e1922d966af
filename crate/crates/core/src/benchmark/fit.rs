//! Least-squares fit of `y = A + B r^(m - offset)`.

use nalgebra::{Matrix3, Vector3};
use serde::Serialize;

use crate::error::{Error, Result};

/// Mean and spread of the sequence outcomes at one length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayPoint {
    pub m: usize,
    pub mean: f64,
    pub stddev: f64,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayFit {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub rate: f64,
    /// Standard error of `rate` from the residual covariance; `NaN` when
    /// there are too few points.
    pub rate_stderr: f64,
    /// Root-mean-square residual.
    pub residual: f64,
    #[serde(skip)]
    pub points: Vec<DecayPoint>,
}

const MAX_ITERATIONS: usize = 500;
const INITIAL_OFFSET_GUESS: f64 = 0.5;

fn model(a: f64, b: f64, r: f64, x: f64) -> f64 {
    a + b * r.powf(x)
}

fn sum_squares(points: &[(f64, f64)], p: &Vector3<f64>) -> f64 {
    points.iter().map(|&(x, y)| (model(p[0], p[1], p[2], x) - y).powi(2)).sum()
}

/// Starting point: `A = B = 0.5` and the rate from a log-linear regression
/// of `y - A`. When some `y` sit below the guessed asymptote the regression
/// uses `A = 0` instead.
fn initial_guess(points: &[(f64, f64)]) -> Vector3<f64> {
    let a = if points.iter().all(|&(_, y)| y > INITIAL_OFFSET_GUESS) { INITIAL_OFFSET_GUESS } else { 0.0 };
    let logs: Vec<(f64, f64)> = points.iter().filter(|&&(_, y)| y - a > 1e-12).map(|&(x, y)| (x, (y - a).ln())).collect();
    let rate = if logs.len() >= 2 {
        let n = logs.len() as f64;
        let (sx, sy) = logs.iter().fold((0.0, 0.0), |(sx, sy), &(x, y)| (sx + x, sy + y));
        let (mx, my) = (sx / n, sy / n);
        let (sxy, sxx) = logs.iter().fold((0.0, 0.0), |(sxy, sxx), &(x, y)| (sxy + (x - mx) * (y - my), sxx + (x - mx).powi(2)));
        if sxx > 0.0 { (sxy / sxx).exp() } else { 1.0 }
    } else {
        1.0
    };
    Vector3::new(a, 0.5, rate.clamp(1e-6, 1.0))
}

/// Levenberg-Marquardt fit of `A + B r^(m - offset)` to the point means,
/// with `r` kept in `(0, 1]`.
pub fn fit_decay(points: &[DecayPoint], offset: i32) -> Result<DecayFit> {
    if points.is_empty() {
        return Err(Error::InvalidSetup("no decay points to fit".into()));
    }
    let data: Vec<(f64, f64)> = points.iter().map(|p| (p.m as f64 - offset as f64, p.mean)).collect();
    let mut p = initial_guess(&data);
    let mut cost = sum_squares(&data, &p);
    let mut lambda = 1e-3;
    for _ in 0..MAX_ITERATIONS {
        let mut jtj = Matrix3::zeros();
        let mut jtr = Vector3::zeros();
        for &(x, y) in &data {
            let rx = p[2].powf(x);
            let j = Vector3::new(1.0, rx, if x == 0.0 { 0.0 } else { p[1] * x * p[2].powf(x - 1.0) });
            let res = model(p[0], p[1], p[2], x) - y;
            jtj += j * j.transpose();
            jtr += j * res;
        }
        let mut improved = false;
        while lambda < 1e12 {
            let mut damped = jtj;
            for k in 0..3 {
                damped[(k, k)] += lambda * jtj[(k, k)].max(1e-12);
            }
            let Some(step) = damped.lu().solve(&-jtr) else {
                lambda *= 10.0;
                continue;
            };
            let mut trial = p + step;
            trial[2] = trial[2].clamp(1e-12, 1.0);
            let trial_cost = sum_squares(&data, &trial);
            if trial_cost <= cost {
                let converged = (cost - trial_cost) <= 1e-15 * cost.max(1e-300) || step.norm() < 1e-14;
                p = trial;
                cost = trial_cost;
                lambda = (lambda / 10.0).max(1e-12);
                improved = !converged;
                break;
            }
            lambda *= 10.0;
        }
        if !improved {
            break;
        }
    }
    if !p.iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidSetup("decay fit diverged".into()));
    }

    let n = data.len();
    let rate_stderr = if n > 3 {
        let jtj = data.iter().fold(Matrix3::zeros(), |acc, &(x, _)| {
            let j = Vector3::new(1.0, p[2].powf(x), if x == 0.0 { 0.0 } else { p[1] * x * p[2].powf(x - 1.0) });
            acc + j * j.transpose()
        });
        let s2 = cost / (n - 3) as f64;
        jtj.try_inverse().map_or(f64::NAN, |inv| (s2 * inv[(2, 2)]).max(0.0).sqrt())
    } else {
        f64::NAN
    };
    Ok(DecayFit { a: p[0], b: p[1], rate: p[2], rate_stderr, residual: (cost / n as f64).sqrt(), points: points.to_vec() })
}
