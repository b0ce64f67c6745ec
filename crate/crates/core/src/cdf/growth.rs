//! Empirical growth of semantic images across a formula family.
//!
//! Two models are fitted by ordinary least squares on `log2 |image|`:
//! exponential (against `n`) and polynomial (against `log2 n`). Whichever
//! leaves the smaller residual sum of squares is preferred; a tie goes to
//! the polynomial model. These are finite-sample fits, not asymptotic
//! statements.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::formula::CnfFormula;
use crate::semantic::{enumerate_count, product_count, ImageError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountRoute {
    /// Exhaustive enumeration of all assignments.
    Enumeration,
    /// `prod(2^k_i - 1) * 2^free` over variable-disjoint clauses.
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GrowthSample {
    pub n: usize,
    pub image_size: u128,
    pub log_image_bits: f64,
    pub route: CountRoute,
}

impl GrowthSample {
    /// # Panics
    ///
    /// Panics if `image_size` is zero.
    pub fn new(n: usize, image_size: u128, route: CountRoute) -> Self {
        assert!(image_size >= 1, "growth samples need a non-empty image");
        GrowthSample {
            n,
            image_size,
            log_image_bits: log2_u128(image_size),
            route,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthModel {
    Exponential,
    Polynomial,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GrowthFit {
    pub samples: Vec<GrowthSample>,
    /// Fitted bits per variable.
    pub exponential_rate: f64,
    pub exponential_intercept: f64,
    pub exponential_residual: f64,
    /// Fitted slope of `log2 |image|` against `log2 n`.
    pub polynomial_degree: f64,
    pub polynomial_intercept: f64,
    pub polynomial_residual: f64,
    pub preferred_model: GrowthModel,
    /// `2^exponential_rate`.
    pub implied_base: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GrowthError {
    #[error("need at least 3 samples, got {0}")]
    TooFewSamples(usize),
    #[error("variable counts must be strictly increasing and positive")]
    NotIncreasing,
    #[error("family member at n = {n} is unsatisfiable; its image has no logarithm")]
    EmptyImage { n: usize, completed: Vec<GrowthSample> },
    #[error("family member at n = {n} exceeds the enumeration cap of {cap} and is not variable-disjoint")]
    Intractable {
        n: usize,
        cap: usize,
        completed: Vec<GrowthSample>,
    },
    #[error("could not build family member at n = {n}: {message}")]
    Family { n: usize, message: String },
    #[error("model count at n = {n} overflows 128 bits")]
    Overflow { n: usize },
}

/// Fits both growth models to recorded samples.
pub fn fit_growth(samples: Vec<GrowthSample>) -> Result<GrowthFit, GrowthError> {
    if samples.len() < 3 {
        return Err(GrowthError::TooFewSamples(samples.len()));
    }
    if samples[0].n == 0 || samples.windows(2).any(|w| w[0].n >= w[1].n) {
        return Err(GrowthError::NotIncreasing);
    }
    let ys: Vec<f64> = samples.iter().map(|s| s.log_image_bits).collect();
    let exp_x: Vec<f64> = samples.iter().map(|s| s.n as f64).collect();
    let poly_x: Vec<f64> = samples.iter().map(|s| (s.n as f64).log2()).collect();
    let exp = least_squares(&exp_x, &ys);
    let poly = least_squares(&poly_x, &ys);
    let preferred_model = if exp.residual < poly.residual {
        GrowthModel::Exponential
    } else {
        GrowthModel::Polynomial
    };
    Ok(GrowthFit {
        samples,
        exponential_rate: exp.slope,
        exponential_intercept: exp.intercept,
        exponential_residual: exp.residual,
        polynomial_degree: poly.slope,
        polynomial_intercept: poly.intercept,
        polynomial_residual: poly.residual,
        preferred_model,
        implied_base: exp.slope.exp2(),
    })
}

/// Counts the image of `family(n)` for each `n` and fits both models.
///
/// Variable-disjoint members are counted with the product rule; the rest
/// are enumerated when `n <= enumeration_cap`. Members are evaluated in
/// parallel; the first failure in `n` order is reported together with the
/// samples completed before it.
pub fn measure_growth<F, E>(family: F, n_values: &[usize], enumeration_cap: usize) -> Result<GrowthFit, GrowthError>
where
    F: Fn(usize) -> Result<CnfFormula, E> + Sync,
    E: std::fmt::Display,
{
    if n_values.len() < 3 {
        return Err(GrowthError::TooFewSamples(n_values.len()));
    }
    if n_values[0] == 0 || n_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(GrowthError::NotIncreasing);
    }
    let outcomes: Vec<Result<GrowthSample, GrowthError>> = n_values
        .par_iter()
        .map(|&n| {
            let formula = family(n).map_err(|e| GrowthError::Family {
                n,
                message: e.to_string(),
            })?;
            sample(&formula, n, enumeration_cap)
        })
        .collect();
    let mut samples = Vec::with_capacity(outcomes.len());
    for outcome in outcomes {
        match outcome {
            Ok(s) => samples.push(s),
            Err(GrowthError::Intractable { n, cap, .. }) => {
                return Err(GrowthError::Intractable {
                    n,
                    cap,
                    completed: samples,
                })
            }
            Err(GrowthError::EmptyImage { n, .. }) => return Err(GrowthError::EmptyImage { n, completed: samples }),
            Err(e) => return Err(e),
        }
    }
    fit_growth(samples)
}

fn sample(formula: &CnfFormula, n: usize, cap: usize) -> Result<GrowthSample, GrowthError> {
    let (count, route) = match product_count(formula) {
        Some(Ok(count)) => (count, CountRoute::Product),
        Some(Err(ImageError::CountOverflow { .. })) => return Err(GrowthError::Overflow { n }),
        Some(Err(ImageError::Intractable { .. })) => unreachable!("product route never reports intractable"),
        None if formula.variable_count() <= cap.min(63) => (enumerate_count(formula), CountRoute::Enumeration),
        None => {
            return Err(GrowthError::Intractable {
                n,
                cap,
                completed: Vec::new(),
            })
        }
    };
    if count == 0 {
        return Err(GrowthError::EmptyImage {
            n,
            completed: Vec::new(),
        });
    }
    Ok(GrowthSample::new(n, count, route))
}

struct LineFit {
    slope: f64,
    intercept: f64,
    residual: f64,
}

fn least_squares(xs: &[f64], ys: &[f64]) -> LineFit {
    let len = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / len;
    let mean_y = ys.iter().sum::<f64>() / len;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let residual = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - (intercept + slope * x)).powi(2))
        .sum();
    LineFit {
        slope,
        intercept,
        residual,
    }
}

/// `log2` of a 128-bit count without losing precision to a float cast of
/// the whole value.
fn log2_u128(value: u128) -> f64 {
    let bits = 128 - value.leading_zeros();
    if bits <= 53 {
        return (value as f64).log2();
    }
    let shift = bits - 53;
    ((value >> shift) as f64).log2() + f64::from(shift)
}
