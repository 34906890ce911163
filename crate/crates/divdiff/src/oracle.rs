//! Brute-force references: explicit divided-difference sums, naive Lagrange
//! evaluation, exact polynomial calculus, the reference test function and the
//! checked-in golden data.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num::{One, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::scalar::{rat, Rational, Scalar};

fn check_distinct(nodes: &[Rational]) -> Result<()> {
    for i in 0..nodes.len() {
        for j in 0..i {
            if nodes[i] == nodes[j] {
                return Err(Error::CoincidentNodes(j, i));
            }
        }
    }
    Ok(())
}

/// f[x_0..x_k] = Σ_i f_i / Π_{j≠i} (x_i − x_j).
pub fn oracle_divided_difference(nodes: &[Rational], values: &[Rational]) -> Result<Rational> {
    if nodes.is_empty() {
        return Err(Error::EmptyIndices);
    }
    if nodes.len() != values.len() {
        return Err(Error::LengthMismatch { nodes: nodes.len(), values: values.len() });
    }
    check_distinct(nodes)?;
    let mut total = Rational::zero();
    for (i, (xi, fi)) in nodes.iter().zip(values).enumerate() {
        let mut den = Rational::one();
        for (j, xj) in nodes.iter().enumerate() {
            if i != j {
                den *= xi - xj;
            }
        }
        total += fi / den;
    }
    Ok(total)
}

/// Direct Lagrange sum, recomputing every basis product for every call.
pub fn oracle_interpolate(nodes: &[Rational], values: &[Rational], x: &Rational) -> Result<Rational> {
    if nodes.is_empty() {
        return Err(Error::EmptySamples);
    }
    if nodes.len() != values.len() {
        return Err(Error::LengthMismatch { nodes: nodes.len(), values: values.len() });
    }
    check_distinct(nodes)?;
    let mut total = Rational::zero();
    for (i, fi) in values.iter().enumerate() {
        let mut term = fi.clone();
        for (j, xj) in nodes.iter().enumerate() {
            if i != j {
                term = term * (x - xj) / (&nodes[i] - xj);
            }
        }
        total += term;
    }
    Ok(total)
}

/// Exact polynomial, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c, 1)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    /// k-th derivative.
    pub fn derivative(&self, k: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(k)
            .map(|(i, c)| c * crate::scalar::falling(&Rational::from_usize(i), k))
            .collect();
        Self::new(coeffs)
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let coeffs = std::iter::once(Rational::zero())
            .chain(self.coeffs.iter().enumerate().map(|(i, c)| c / Rational::from_usize(i + 1)))
            .collect();
        Self::new(coeffs)
    }

    pub fn integral(&self, lo: &Rational, hi: &Rational) -> Rational {
        let anti = self.antiderivative();
        anti.eval(hi) - anti.eval(lo)
    }
}

/// e^x (1 + x) + x sin x, the reference function of the interpolation tables.
pub fn table5_function(x: f64) -> f64 {
    x.exp() * (1.0 + x) + x * x.sin()
}

/// Classical weights stored as exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct GoldenStencil {
    pub name: String,
    pub offsets: Vec<i64>,
    pub weights: Vec<Rational>,
    /// Derivative order; 0 for integration rules.
    pub t: usize,
}

#[derive(Deserialize)]
struct GoldenRecord {
    name: String,
    offsets: Vec<i64>,
    num: Vec<i64>,
    den: i64,
    t: usize,
}

#[derive(Deserialize)]
struct GoldenFile {
    stencils: Vec<GoldenRecord>,
    quadrature: Vec<GoldenRecord>,
}

const GOLDEN_JSON: &str = include_str!("../fixtures/golden_stencils.json");
const REFERENCE_JSON: &str = include_str!("../fixtures/reference_tables.json");

/// The seven golden records: five second-derivative stencils and two closed
/// integration rules.
pub fn known_stencils() -> &'static [GoldenStencil] {
    static CATALOG: OnceLock<Vec<GoldenStencil>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let file: GoldenFile = serde_json::from_str(GOLDEN_JSON).expect("golden fixture is valid JSON");
        file.stencils
            .into_iter()
            .chain(file.quadrature)
            .map(|r| GoldenStencil {
                name: r.name,
                offsets: r.offsets,
                weights: r.num.iter().map(|&p| rat(p, r.den)).collect(),
                t: r.t,
            })
            .collect()
    })
}

pub fn golden(name: &str) -> Option<&'static GoldenStencil> {
    known_stencils().iter().find(|g| g.name == name)
}

/// A value as printed, keeping its text so the last printed digit is known.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(transparent)]
pub struct Printed(pub String);

impl Printed {
    pub fn value(&self) -> f64 {
        self.0.parse().expect("printed values are numeric")
    }

    /// Size of one unit in the last printed digit.
    pub fn unit(&self) -> f64 {
        let s = self.0.trim();
        let (mantissa, exp) = match s.find(['e', 'E']) {
            Some(p) => (&s[..p], s[p + 1..].parse::<i32>().expect("exponent")),
            None => (s, 0),
        };
        let decimals = mantissa.split_once('.').map_or(0, |(_, f)| f.len()) as i32;
        let p = exp - decimals;
        if p < 0 {
            1.0 / 10f64.powi(-p)
        } else {
            10f64.powi(p)
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct FunctionTable {
    pub note: String,
    pub x: Vec<Printed>,
    pub y: Vec<Printed>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ErrorTable {
    pub note: String,
    pub x: Vec<Printed>,
    pub columns: BTreeMap<String, Vec<Printed>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PrintedTail {
    pub origin: f64,
    pub step: f64,
    /// Ascending powers of s.
    pub coeffs: Vec<Printed>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PrintedPoly {
    pub origin: f64,
    pub coeffs: Vec<Printed>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PrintedPolynomials {
    pub forward: PrintedPoly,
    pub backward: PrintedPoly,
    pub central_forward: PrintedPoly,
    pub stirling_linear: Printed,
}

/// Reference data for the interpolation comparisons.
#[derive(Debug, Clone, Deserialize)]
pub struct ReferenceTables {
    pub function: FunctionTable,
    pub error_convention: String,
    pub classical_errors: ErrorTable,
    pub modified_errors: ErrorTable,
    pub printed_theta: BTreeMap<String, PrintedTail>,
    pub printed_polynomials: PrintedPolynomials,
}

impl ReferenceTables {
    pub fn nodes(&self) -> Vec<f64> {
        self.function.x.iter().map(Printed::value).collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.function.y.iter().map(Printed::value).collect()
    }
}

pub fn reference_tables() -> &'static ReferenceTables {
    static DATA: OnceLock<ReferenceTables> = OnceLock::new();
    DATA.get_or_init(|| serde_json::from_str(REFERENCE_JSON).expect("reference fixture is valid JSON"))
}
