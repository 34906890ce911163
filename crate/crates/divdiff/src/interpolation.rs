//! Split interpolation: a Newton prefix over the first `r` nodes followed by a
//! Lagrange tail over the remaining nodes, with its barycentric, evenly spaced
//! and central forms, and the least-squares tail replacement.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opcount::OpCounts;
use crate::par::{map_slice, Exec};
use crate::samples::{central_order, central_order_forward, SampleSet, TwoSided};
use crate::scalar::{binomial, factorial, falling, rising, Scalar};
use crate::tables::{barycentric_weights, build_new_table, dd_of, lagrange_sum};

/// Split interpolant prepared once and evaluated at many points.
#[derive(Debug, Clone, PartialEq)]
pub struct Interpolant<T> {
    prefix_nodes: Vec<T>,
    prefix_coeffs: Vec<T>,
    tail_nodes: Vec<T>,
    tail_values: Vec<T>,
    nodes: Vec<T>,
    values: Vec<T>,
}

impl<T: Scalar> Interpolant<T> {
    pub fn new(samples: &SampleSet<T>, r: usize) -> Result<Self> {
        let table = build_new_table(samples, r)?;
        Ok(Self {
            nodes: samples.nodes().to_vec(),
            values: samples.values().to_vec(),
            prefix_nodes: samples.nodes()[..r].to_vec(),
            prefix_coeffs: table.heads()[..r].to_vec(),
            tail_nodes: samples.nodes()[r..].to_vec(),
            tail_values: table.columns()[r].clone(),
        })
    }

    /// f[x_0..x_i] for i < r.
    pub fn prefix_coeffs(&self) -> &[T] {
        &self.prefix_coeffs
    }

    /// f[x_i, x_0, …, x_{r−1}] for i = r..n.
    pub fn tail_values(&self) -> &[T] {
        &self.tail_values
    }

    /// Value at `x`; sample values are returned unchanged at the nodes.
    pub fn eval(&self, x: &T) -> T {
        if let Some(i) = self.nodes.iter().position(|xi| xi == x) {
            return self.values[i].clone();
        }
        let tail = lagrange_sum(&self.tail_nodes, &self.tail_values, x);
        horner_prefix(&self.prefix_nodes, &self.prefix_coeffs, x, tail)
    }
}

/// c_0 + (x − x_0)(c_1 + (x − x_1)(… (c_{r−1} + (x − x_{r−1})·inner)))
fn horner_prefix<T: Scalar>(nodes: &[T], coeffs: &[T], x: &T, inner: T) -> T {
    nodes.iter().zip(coeffs).rev().fold(inner, |acc, (xi, ci)| ci.clone() + (x.clone() - xi.clone()) * acc)
}

/// Value at `x` of the polynomial interpolating all samples, computed with a
/// Newton prefix of length `r` and a Lagrange tail.
pub fn interpolate_general<T: Scalar>(samples: &SampleSet<T>, r: usize, x: &T) -> Result<T> {
    Ok(Interpolant::new(samples, r)?.eval(x))
}

/// Evaluate at every point of `xs`, in order.
pub fn interpolate_many<T: Scalar>(samples: &SampleSet<T>, r: usize, xs: &[T], exec: Exec) -> Result<Vec<T>> {
    let interp = Interpolant::new(samples, r)?;
    Ok(map_slice(exec, xs, |x| interp.eval(x)))
}

/// Largest deviation over all splits r and all points from the r = 0 value,
/// relative to 1 + |value|.
pub fn r_sweep_deviation(samples: &SampleSet<f64>, xs: &[f64], exec: Exec) -> Result<f64> {
    let base = interpolate_many(samples, 0, xs, exec)?;
    let mut worst = 0.0f64;
    for r in 1..=samples.n() {
        let vals = interpolate_many(samples, r, xs, exec)?;
        for (v, b) in vals.iter().zip(&base) {
            worst = worst.max((v - b).abs() / (1.0 + b.abs()));
        }
    }
    Ok(worst)
}

/// Term-by-term evaluation of the split formula, tallying every operation.
///
/// Builds the fixed-prefix table up to column r, evaluates each prefix term
/// with its own product, and each tail term as f·Π(x − x_j)/Π(x_i − x_j).
pub fn interpolate_general_counted<T: Scalar>(
    samples: &SampleSet<T>,
    r: usize,
    x: &T,
    ops: &mut OpCounts,
) -> Result<T> {
    let n = samples.n();
    if r > n {
        return Err(Error::SplitOutOfRange { r, n });
    }
    let xs = samples.nodes();
    let mut columns = vec![samples.values().to_vec()];
    for i in 1..=r {
        let prev = &columns[i - 1];
        let mut col = Vec::with_capacity(n - i + 1);
        for j in 0..=n - i {
            let num = ops.sub(prev[j + 1].clone(), prev[0].clone());
            let den = ops.sub(xs[i + j].clone(), xs[i - 1].clone());
            col.push(ops.div(num, den));
        }
        columns.push(col);
    }

    let mut prefix_terms = Vec::with_capacity(r);
    for i in 0..r {
        let coeff = columns[i][0].clone();
        if i == 0 {
            prefix_terms.push(coeff);
            continue;
        }
        let factors: Vec<T> = (0..i).map(|j| ops.sub(x.clone(), xs[j].clone())).collect();
        let prod = ops.product(factors).expect("i >= 1 factors");
        prefix_terms.push(ops.mul(coeff, prod));
    }

    let mut tail_terms = Vec::with_capacity(n - r + 1);
    for i in r..=n {
        let f = columns[r][i - r].clone();
        if r == n {
            tail_terms.push(f);
            continue;
        }
        let others: Vec<usize> = (r..=n).filter(|&j| j != i).collect();
        let nums: Vec<T> = others.iter().map(|&j| ops.sub(x.clone(), xs[j].clone())).collect();
        let dens: Vec<T> = others.iter().map(|&j| ops.sub(xs[i].clone(), xs[j].clone())).collect();
        let num = ops.product(nums).expect("non-empty");
        let den = ops.product(dens).expect("non-empty");
        let scaled = ops.mul(f, num);
        tail_terms.push(ops.div(scaled, den));
    }
    let tail = ops.sum(tail_terms);
    if r == 0 {
        return Ok(tail);
    }
    let prefix = ops.sum(prefix_terms);
    let factors: Vec<T> = (0..r).map(|j| ops.sub(x.clone(), xs[j].clone())).collect();
    let prod = ops.product(factors).expect("r >= 1 factors");
    let scaled = ops.mul(prod, tail);
    Ok(ops.add(prefix, scaled))
}

/// Weights w_i = Π_{j=r..n, j≠i} 1/(x_i − x_j) of the tail nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct BarycentricWeights<T> {
    r: usize,
    weights: Vec<T>,
}

impl<T: Scalar> BarycentricWeights<T> {
    pub fn new(samples: &SampleSet<T>, r: usize) -> Result<Self> {
        let n = samples.n();
        if r > n {
            return Err(Error::SplitOutOfRange { r, n });
        }
        Ok(Self { r, weights: barycentric_weights(&samples.nodes()[r..]) })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }
}

/// Split formula with the tail in barycentric form.
///
/// At a tail node the tail sum is replaced by its nodal value.
pub fn interpolate_barycentric<T: Scalar>(samples: &SampleSet<T>, r: usize, x: &T) -> Result<T> {
    let w = BarycentricWeights::new(samples, r)?;
    let interp = Interpolant::new(samples, r)?;
    let tail_nodes = &samples.nodes()[r..];
    let tail = match tail_nodes.iter().position(|xi| xi == x) {
        Some(i) => interp.tail_values[i].clone(),
        None => {
            let mut num = T::zero();
            let mut den = T::zero();
            for ((xi, fi), wi) in tail_nodes.iter().zip(&interp.tail_values).zip(&w.weights) {
                let c = wi.clone() / (x.clone() - xi.clone());
                num = num + c.clone() * fi.clone();
                den = den + c;
            }
            num / den
        }
    };
    Ok(horner_prefix(&interp.prefix_nodes, &interp.prefix_coeffs, x, tail))
}

fn integer_samples<T: Scalar>(positions: &[i64], values: Vec<T>) -> Result<SampleSet<T>> {
    SampleSet::new(positions.iter().map(|&p| T::from_i64(p)).collect(), values)
}

/// Forward form on positions 0..n: the prefix uses Δ^i f_0/i! with falling
/// factorials, the tail the integer-argument divided differences f_I[i, 0..r−1].
pub fn interpolate_forward_even<T: Scalar>(values: &[T], r: usize, s: &T) -> Result<T> {
    let positions: Vec<i64> = (0..values.len() as i64).collect();
    let samples = integer_samples(&positions, values.to_vec())?;
    let n = samples.n();
    if r > n {
        return Err(Error::SplitOutOfRange { r, n });
    }
    let mut total = values[0].clone();
    for i in 1..r {
        total = total + forward_difference(values, i, 0) / factorial::<T>(i) * falling(s, i);
    }
    let table = build_new_table(&samples, r)?;
    let tail = lagrange_sum(&samples.nodes()[r..], &table.columns()[r], s);
    Ok(if r == 0 { tail } else { total + falling(s, r) * tail })
}

/// Backward form on positions 0, −1, …, −n (values listed in that order):
/// ∇^i f_0/i! with rising factorials in the prefix.
pub fn interpolate_backward_even<T: Scalar>(values: &[T], r: usize, s: &T) -> Result<T> {
    let positions: Vec<i64> = (0..values.len() as i64).map(|p| -p).collect();
    let samples = integer_samples(&positions, values.to_vec())?;
    let n = samples.n();
    if r > n {
        return Err(Error::SplitOutOfRange { r, n });
    }
    let mut total = values[0].clone();
    for i in 1..r {
        let nabla = (0..=i).fold(T::zero(), |acc, k| {
            let term = binomial::<T>(i, k) * values[k].clone();
            if k % 2 == 0 {
                acc + term
            } else {
                acc - term
            }
        });
        total = total + nabla / factorial::<T>(i) * rising(s, i);
    }
    let table = build_new_table(&samples, r)?;
    let tail = lagrange_sum(&samples.nodes()[r..], &table.columns()[r], s);
    Ok(if r == 0 { tail } else { total + rising(s, r) * tail })
}

/// Δ^k f_j over a plain slice indexed from position 0.
fn forward_difference<T: Scalar>(values: &[T], k: usize, j: usize) -> T {
    (0..=k).fold(T::zero(), |acc, l| {
        let term = binomial::<T>(k, l) * values[j + l].clone();
        if (k - l).is_multiple_of(2) {
            acc + term
        } else {
            acc - term
        }
    })
}

/// Central-difference arrangements of the prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CentralVariant {
    /// Prefix order 0, 1, −1, 2, −2, …
    NewForward,
    /// Prefix order 0, −1, 1, −2, 2, …
    NewBackward,
    Stirling,
    Bessel,
    Everett,
    Steffensen,
}

impl CentralVariant {
    pub const ALL: [CentralVariant; 6] = [
        CentralVariant::NewForward,
        CentralVariant::NewBackward,
        CentralVariant::Stirling,
        CentralVariant::Bessel,
        CentralVariant::Everett,
        CentralVariant::Steffensen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CentralVariant::NewForward => "new-forward",
            CentralVariant::NewBackward => "new-backward",
            CentralVariant::Stirling => "stirling",
            CentralVariant::Bessel => "bessel",
            CentralVariant::Everett => "everett",
            CentralVariant::Steffensen => "steffensen",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.name() == name)
    }
}

/// Δ^k f(j) = Σ_l (−1)^{k−l} C(k, l) f(j + l) on two-sided data.
fn delta<T: Scalar>(values: &TwoSided<T>, k: usize, j: i64) -> T {
    (0..=k).fold(T::zero(), |acc, l| {
        let term = binomial::<T>(k, l) * values.at(j + l as i64).clone();
        if (k - l).is_multiple_of(2) {
            acc + term
        } else {
            acc - term
        }
    })
}

/// Tail positions r+1, −(r+1), r+2, −(r+2), … within −m..=n.
fn central_tail_order(r: usize, backward: usize, forward: usize) -> Vec<i64> {
    let (lo, hi) = (-(backward as i64), forward as i64);
    let mut out = Vec::new();
    for k in (r as i64 + 1)..=lo.abs().max(hi) {
        out.extend([k, -k].into_iter().filter(|p| *p >= lo && *p <= hi));
    }
    out
}

/// Θ(s) = Π_{k=−r..r}(s − k) · Σ_{i∈tail} f_I[i, prefix] Π_{j∈tail, j≠i}(s − j)/(i − j).
fn central_theta<T: Scalar>(values: &TwoSided<T>, r: usize, s: &T) -> Result<T> {
    let tail = central_tail_order(r, values.backward(), values.forward());
    if tail.is_empty() {
        return Ok(T::zero());
    }
    let mut order = central_order(r, r);
    order.extend(&tail);
    let samples = integer_samples(&order, order.iter().map(|&p| values.at(p).clone()).collect())?;
    let split = 2 * r + 1;
    let table = build_new_table(&samples, split)?;
    let sum = lagrange_sum(&samples.nodes()[split..], &table.columns()[split], s);
    let prod = (-(r as i64)..=r as i64).fold(T::one(), |acc, k| acc * (s.clone() - T::from_i64(k)));
    Ok(prod * sum)
}

fn newton_prefix_on<T: Scalar>(values: &TwoSided<T>, order: &[i64], s: &T) -> T {
    let nodes: Vec<T> = order.iter().map(|&p| T::from_i64(p)).collect();
    let vals: Vec<T> = order.iter().map(|&p| values.at(p).clone()).collect();
    let coeffs: Vec<T> = (0..order.len()).map(|i| dd_of(&nodes[..=i], &vals[..=i])).collect();
    horner_prefix(&nodes, &coeffs, s, T::zero())
}

/// Central interpolation at offset `s` (in steps) around position 0.
///
/// Every variant writes the same degree-2r interpolant on −r..r in its own
/// difference arrangement; Θ(s) then carries the remaining nodes.
pub fn interpolate_central<T: Scalar>(values: &TwoSided<T>, r: usize, s: &T, variant: CentralVariant) -> Result<T> {
    if r > values.backward() || r > values.forward() {
        return Err(Error::InsufficientSupport(format!(
            "r = {r} needs positions -{r}..={r}, data covers -{}..={}",
            values.backward(),
            values.forward()
        )));
    }
    let classical = !matches!(variant, CentralVariant::NewForward | CentralVariant::NewBackward);
    if classical && r == 0 {
        return Err(Error::InvalidArgument(format!("{} needs r >= 1", variant.name())));
    }
    let half = T::ratio(1, 2);
    let f = |k: usize, j: i64| delta(values, k, j);
    let prefix = match variant {
        CentralVariant::NewForward => newton_prefix_on(values, &central_order_forward(r, r), s),
        CentralVariant::NewBackward => newton_prefix_on(values, &central_order(r, r), s),
        CentralVariant::Stirling => {
            let mut acc = values.at(0).clone();
            for k in 1..=r {
                let ki = k as i64;
                let base = falling(&(s.clone() + T::from_i64(ki - 1)), 2 * k - 1);
                let mean = (f(2 * k - 1, 1 - ki) + f(2 * k - 1, -ki)) * half.clone();
                acc = acc + mean * base.clone() / factorial::<T>(2 * k - 1);
                acc = acc + f(2 * k, -ki) * s.clone() * base / factorial::<T>(2 * k);
            }
            acc
        }
        CentralVariant::Bessel => {
            let mut acc = (values.at(0).clone() + values.at(1).clone()) * half.clone();
            let centre = s.clone() - half.clone();
            for k in 0..r {
                let ki = k as i64;
                let base = falling(&(s.clone() + T::from_i64(ki - 1)), 2 * k);
                acc = acc + centre.clone() * base / factorial::<T>(2 * k + 1) * f(2 * k + 1, -ki);
            }
            for k in 1..r {
                let ki = k as i64;
                let base = falling(&(s.clone() + T::from_i64(ki - 1)), 2 * k);
                acc = acc + base / factorial::<T>(2 * k) * (f(2 * k, -ki) + f(2 * k, 1 - ki)) * half.clone();
            }
            let ri = r as i64;
            let base = falling(&(s.clone() + T::from_i64(ri - 1)), 2 * r) / factorial::<T>(2 * r);
            // The mean of the two order-2r differences minus half the order-(2r+1)
            // difference equals Δ^{2r} f(−r); the expanded form needs f(r + 1).
            let last = if values.contains(ri + 1) {
                (f(2 * r, -ri) + f(2 * r, 1 - ri)) * half.clone() - f(2 * r + 1, -ri) * half.clone()
            } else {
                f(2 * r, -ri)
            };
            acc + base * last
        }
        CentralVariant::Everett => {
            let t = T::one() - s.clone();
            let mut acc = T::zero();
            for k in 0..r {
                let ki = k as i64;
                let fact = factorial::<T>(2 * k + 1);
                acc = acc + falling(&(t.clone() + T::from_i64(ki)), 2 * k + 1) / fact.clone() * f(2 * k, -ki);
                acc = acc + falling(&(s.clone() + T::from_i64(ki)), 2 * k + 1) / fact * f(2 * k, 1 - ki);
            }
            let ri = r as i64;
            acc + falling(&(s.clone() + T::from_i64(ri - 1)), 2 * r) / factorial::<T>(2 * r) * f(2 * r, -ri)
        }
        CentralVariant::Steffensen => {
            let mut acc = values.at(0).clone();
            for k in 1..=r {
                let ki = k as i64;
                let fact = factorial::<T>(2 * k);
                acc = acc + falling(&(s.clone() + T::from_i64(ki)), 2 * k) / fact.clone() * f(2 * k - 1, 1 - ki);
                acc = acc - falling(&(s.clone() + T::from_i64(ki - 1)), 2 * k) / fact * f(2 * k - 1, -ki);
            }
            acc
        }
    };
    Ok(prefix + central_theta(values, r, s)?)
}

/// Coordinate system of a tail model: u = (x − origin)/step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailBasis {
    /// Raw abscissa (origin 0, step 1).
    Argument,
    /// Grid position s.
    Position,
}

/// Low-degree polynomial standing in for the order-r divided-difference
/// function in f(x) = N(x) + (x − x_0)…(x − x_{r−1})·Π(x).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailModel {
    pub r: usize,
    pub basis: TailBasis,
    #[serde(default)]
    pub origin: f64,
    #[serde(default = "unit_step")]
    pub step: f64,
    /// Ascending powers of the coordinate.
    pub coeffs: Vec<f64>,
    #[serde(default)]
    pub residual: f64,
}

fn unit_step() -> f64 {
    1.0
}

impl TailModel {
    /// Model in raw x.
    pub fn in_argument(r: usize, coeffs: Vec<f64>) -> Self {
        Self { r, basis: TailBasis::Argument, origin: 0.0, step: 1.0, coeffs, residual: 0.0 }
    }

    /// Model in grid position s = (x − origin)/step.
    pub fn in_position(r: usize, origin: f64, step: f64, coeffs: Vec<f64>) -> Self {
        Self { r, basis: TailBasis::Position, origin, step, coeffs, residual: 0.0 }
    }

    pub fn coordinate(&self, x: f64) -> f64 {
        (x - self.origin) / self.step
    }

    pub fn eval_coordinate(&self, u: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * u + c)
    }
}

/// Least-squares fit of the order-r column of the fixed-prefix table against
/// the coordinate of each entry's trailing node.
pub fn fit_tail(
    samples: &SampleSet<f64>,
    r: usize,
    degree: usize,
    basis: TailBasis,
    origin: f64,
    step: f64,
) -> Result<TailModel> {
    let mut model = match basis {
        TailBasis::Argument => TailModel::in_argument(r, Vec::new()),
        TailBasis::Position => TailModel::in_position(r, origin, step, Vec::new()),
    };
    if step == 0.0 || !step.is_finite() {
        return Err(Error::InvalidArgument("tail step must be finite and nonzero".into()));
    }
    let coords: Vec<f64> = samples.nodes().iter().map(|&x| model.coordinate(x)).collect();
    let mapped = SampleSet::new(coords.clone(), samples.values().to_vec())?;
    let table = build_new_table(&mapped, r)?;
    let ys = &table.columns()[r];
    let us = &coords[r..];
    if ys.len() < degree + 1 {
        return Err(Error::Underdetermined { have: ys.len(), degree });
    }
    let design = DMatrix::from_fn(ys.len(), degree + 1, |i, k| us[i].powi(k as i32));
    let rhs = DVector::from_column_slice(ys);
    let svd = design.clone().svd(true, true);
    let coeffs =
        svd.solve(&rhs, 1e-14).map_err(|e| Error::InvalidArgument(format!("least-squares solve failed: {e}")))?;
    let residual = (&design * &coeffs - &rhs).norm();
    model.coeffs = coeffs.iter().copied().collect();
    model.residual = residual;
    Ok(model)
}

/// Newton prefix over the first `tail.r` samples plus the prefix product times
/// the fitted tail, all in the model's coordinate.
pub fn interpolate_with_tail(samples: &SampleSet<f64>, tail: &TailModel, x: f64) -> Result<f64> {
    let r = tail.r;
    if r == 0 || r > samples.len() {
        return Err(Error::SplitOutOfRange { r, n: samples.len() });
    }
    let coords: Vec<f64> = samples.nodes()[..r].iter().map(|&xi| tail.coordinate(xi)).collect();
    let vals = &samples.values()[..r];
    let coeffs: Vec<f64> = (0..r).map(|i| dd_of(&coords[..=i], &vals[..=i])).collect();
    let u = tail.coordinate(x);
    Ok(horner_prefix(&coords, &coeffs, &u, tail.eval_coordinate(u)))
}
