//! Arbitrary-order numerical derivatives.
//!
//! Three families: the recursive ρ-coefficient solve (off-node on arbitrary
//! nodes, or its grid limits with U/W/V moments), the all-subsets linear
//! combination of divided differences, and the truncated alternating series.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opcount::OpCounts;
use crate::samples::{SampleSet, TwoSided};
use crate::scalar::{binomial, factorial, over_common_denominator, Rational, Scalar};
use crate::tables::dd_of;

/// L_i(x) = Π_{j≠i} (x − x_j)/(x_i − x_j) for every node.
pub fn lagrange_basis_at<T: Scalar>(nodes: &[T], x: &T) -> Vec<T> {
    (0..nodes.len())
        .map(|i| {
            let mut num = T::one();
            let mut den = T::one();
            for (j, xj) in nodes.iter().enumerate() {
                if j != i {
                    num = num * (x.clone() - xj.clone());
                    den = den * (nodes[i].clone() - xj.clone());
                }
            }
            num / den
        })
        .collect()
}

fn check_off_node<T: Scalar>(nodes: &[T], x: &T) -> Result<()> {
    match nodes.iter().position(|xi| xi == x) {
        Some(i) => Err(Error::AtNode(i)),
        None => Ok(()),
    }
}

/// ρ_m(x) = Σ_i L_i(x)/(x_i − x)^m, stored from ρ_0 = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct RhoSet<T> {
    values: Vec<T>,
}

impl<T: Scalar> RhoSet<T> {
    pub fn get(&self, m: usize) -> &T {
        &self.values[m]
    }

    /// ρ_0..ρ_kmax.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn kmax(&self) -> usize {
        self.values.len() - 1
    }
}

pub fn rho_coeffs<T: Scalar>(samples: &SampleSet<T>, x: &T, kmax: usize) -> Result<RhoSet<T>> {
    check_off_node(samples.nodes(), x)?;
    let basis = lagrange_basis_at(samples.nodes(), x);
    let gaps: Vec<T> = samples.nodes().iter().map(|xi| xi.clone() - x.clone()).collect();
    let mut powers = vec![T::one(); gaps.len()];
    let mut values = vec![T::one()];
    for _ in 1..=kmax {
        let mut total = T::zero();
        for ((p, g), l) in powers.iter_mut().zip(&gaps).zip(&basis) {
            *p = p.clone() * g.clone();
            total = total + l.clone() / p.clone();
        }
        values.push(total);
    }
    Ok(RhoSet { values })
}

/// a_0 = 1, a_k = −(μ_k a_0 + μ_{k−1} a_1 + … + μ_1 a_{k−1}) for a moment
/// sequence μ (index 0 ignored).
pub fn recursive_coeffs<T: Scalar>(moments: &[T], t: usize) -> Vec<T> {
    let mut a = vec![T::one()];
    for k in 1..=t {
        let s = (1..=k).fold(T::zero(), |acc, l| acc + moments[l].clone() * a[k - l].clone());
        a.push(-s);
    }
    a
}

fn check_order(t: usize, max: usize) -> Result<()> {
    if t == 0 || t > max {
        return Err(Error::OrderOutOfRange { order: t, max });
    }
    Ok(())
}

/// e_0..e_t of the given values.
fn elementary<'a, T: Scalar>(values: impl Iterator<Item = &'a T>, t: usize) -> Vec<T> {
    let mut e = vec![T::zero(); t + 1];
    e[0] = T::one();
    for v in values {
        for k in (1..=t).rev() {
            e[k] = e[k].clone() + v.clone() * e[k - 1].clone();
        }
    }
    e
}

/// t-th derivative at an off-node `x` from arbitrary nodes.
///
/// With `fx` the constant term uses the known f(x); otherwise it uses the
/// interpolated value Σ f_i L_i(x).
///
/// The a_k generated by the ρ moments are the coefficients of
/// Π_j (1 − z/g_j) with g_j = x_j − x, so the per-node bracket
/// Σ_{j≤t} a_j/g_i^{t−j} telescopes to (−1)^t e_t(1/g_j : j ≠ i). That form is
/// used here; summing the a_j directly cancels badly when x is near a node.
/// [`derivative_uneven_counted`] keeps the term-by-term evaluation.
pub fn derivative_uneven<T: Scalar>(samples: &SampleSet<T>, x: &T, t: usize, fx: Option<&T>) -> Result<T> {
    check_order(t, samples.n())?;
    check_off_node(samples.nodes(), x)?;
    let basis = lagrange_basis_at(samples.nodes(), x);
    let recips: Vec<T> = samples.nodes().iter().map(|xi| T::one() / (xi.clone() - x.clone())).collect();
    let mut total = T::zero();
    for (i, (fi, li)) in samples.values().iter().zip(&basis).enumerate() {
        let others = recips.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v);
        let e = elementary(others, t);
        let bracket = match fx {
            None => e[t].clone(),
            // Σ_{j<t} a_j/g_i^{t−j} = (−1)^{t−1} e_{t−1}(others)/g_i
            Some(_) => -(e[t - 1].clone() * recips[i].clone()),
        };
        total = total + fi.clone() * li.clone() * bracket;
    }
    let sign = if t.is_multiple_of(2) { T::one() } else { -T::one() };
    let mut scaled = sign.clone() * total;
    if let Some(fx) = fx {
        scaled = scaled + sign * elementary(recips.iter(), t)[t].clone() * fx.clone();
    }
    Ok(scaled * factorial::<T>(t))
}

/// f^{(t)}(x)/t! evaluated term by term with every operation tallied.
///
/// Each power (x_i − x)^m is rebuilt from fresh subtractions, as in a direct
/// reading of the formula. `t` may exceed the node count here.
pub fn derivative_uneven_counted<T: Scalar>(samples: &SampleSet<T>, x: &T, t: usize, ops: &mut OpCounts) -> Result<T> {
    if t == 0 {
        return Err(Error::OrderOutOfRange { order: 0, max: samples.n() });
    }
    if samples.n() == 0 {
        return Err(Error::InsufficientSupport("counted path needs at least two nodes".into()));
    }
    check_off_node(samples.nodes(), x)?;
    let xs = samples.nodes();
    let len = xs.len();

    let mut basis = Vec::with_capacity(len);
    for i in 0..len {
        let nums: Vec<T> = (0..len).filter(|&j| j != i).map(|j| ops.sub(x.clone(), xs[j].clone())).collect();
        let dens: Vec<T> = (0..len).filter(|&j| j != i).map(|j| ops.sub(xs[i].clone(), xs[j].clone())).collect();
        let num = ops.product(nums).expect("two or more nodes");
        let den = ops.product(dens).expect("two or more nodes");
        basis.push(ops.div(num, den));
    }

    let fresh_power = |ops: &mut OpCounts, i: usize, m: usize| -> T {
        let factors: Vec<T> = (0..m).map(|_| ops.sub(xs[i].clone(), x.clone())).collect();
        ops.product(factors).expect("m >= 1")
    };

    let mut rho = vec![T::one()];
    for m in 1..=t {
        let terms: Vec<T> = (0..len)
            .map(|i| {
                let p = fresh_power(ops, i, m);
                ops.div(basis[i].clone(), p)
            })
            .collect();
        rho.push(ops.sum(terms));
    }

    let mut a = vec![T::one()];
    for k in 1..=t {
        let products: Vec<T> = (1..=k).map(|l| ops.mul(rho[l].clone(), a[k - l].clone())).collect();
        a.push(-ops.sum(products));
    }

    let mut node_terms = Vec::with_capacity(len);
    for i in 0..len {
        let mut terms: Vec<T> = (0..t)
            .map(|j| {
                let p = fresh_power(ops, i, t - j);
                ops.div(a[j].clone(), p)
            })
            .collect();
        terms.push(a[t].clone());
        let bracket = ops.sum(terms);
        let scaled = ops.mul(bracket, samples.value(i).clone());
        node_terms.push(ops.mul(scaled, basis[i].clone()));
    }
    Ok(ops.sum(node_terms))
}

/// A_1 = n/(m+1), A_{i+1} = −A_i (n−i)/(m+i+1) for i < n.
fn side_coeffs<T: Scalar>(near: usize, far: usize) -> Vec<T> {
    let mut out: Vec<T> = Vec::with_capacity(far);
    for i in 0..far {
        let next = match out.last() {
            None => T::ratio(far as i64, near as i64 + 1),
            Some(prev) => -prev.clone() * T::ratio((far - i) as i64, (near + i + 1) as i64),
        };
        out.push(next);
    }
    out
}

fn inv_pow<T: Scalar>(i: usize, e: usize) -> T {
    T::one() / T::from_usize(i).powu(e as u32)
}

/// Forward-grid moments U_m = Σ_{i=1}^n (−1)^{i−1} C(n, i)/i^m and the
/// coefficients â they generate.
#[derive(Debug, Clone, PartialEq)]
pub struct ForwardCoeffs<T> {
    pub n: usize,
    /// U_0..U_t (U_0 unused).
    pub u: Vec<T>,
    pub a_hat: Vec<T>,
}

impl<T: Scalar> ForwardCoeffs<T> {
    pub fn new(n: usize, t: usize) -> Self {
        let signed: Vec<T> =
            (1..=n).map(|i| if i % 2 == 1 { binomial::<T>(n, i) } else { -binomial::<T>(n, i) }).collect();
        let mut u = vec![T::one()];
        for m in 1..=t {
            u.push(signed.iter().enumerate().fold(T::zero(), |acc, (k, c)| acc + c.clone() * inv_pow(k + 1, m)));
        }
        let a_hat = recursive_coeffs(&u, t);
        Self { n, u, a_hat }
    }
}

/// Two-sided grid −m..n: A_{±i}, W_r = (−1)^r Σ A_{−i}/i^r + Σ A_i/i^r, and â.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoSidedCoeffs<T> {
    pub m: usize,
    pub n: usize,
    /// A_{−1}..A_{−m}.
    pub a_back: Vec<T>,
    /// A_1..A_n.
    pub a_fwd: Vec<T>,
    /// W_0..W_t (W_0 unused).
    pub w: Vec<T>,
    pub a_hat: Vec<T>,
}

impl<T: Scalar> TwoSidedCoeffs<T> {
    pub fn new(m: usize, n: usize, t: usize) -> Self {
        let a_back: Vec<T> = side_coeffs(n, m);
        let a_fwd: Vec<T> = side_coeffs(m, n);
        let mut w = vec![T::one()];
        for r in 1..=t {
            let back = a_back.iter().enumerate().fold(T::zero(), |acc, (k, c)| acc + c.clone() * inv_pow(k + 1, r));
            let fwd = a_fwd.iter().enumerate().fold(T::zero(), |acc, (k, c)| acc + c.clone() * inv_pow(k + 1, r));
            w.push(if r % 2 == 0 { fwd + back } else { fwd - back });
        }
        let a_hat = recursive_coeffs(&w, t);
        Self { m, n, a_back, a_fwd, w, a_hat }
    }
}

/// Symmetric grid −n..n: A_i, V_m = Σ A_i/i^m (even m), and ã with
/// ã_k = −2(V_2 ã_{k−2} + … + V_k ã_0), odd entries zero.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralCoeffs<T> {
    pub n: usize,
    /// A_1..A_n.
    pub a: Vec<T>,
    /// V_0..V_t; odd entries are zero.
    pub v: Vec<T>,
    pub a_tilde: Vec<T>,
}

impl<T: Scalar> CentralCoeffs<T> {
    pub fn new(n: usize, t: usize) -> Self {
        let a: Vec<T> = side_coeffs(n, n);
        let mut v = vec![T::one()];
        for m in 1..=t {
            v.push(if m % 2 == 0 {
                a.iter().enumerate().fold(T::zero(), |acc, (k, c)| acc + c.clone() * inv_pow(k + 1, m))
            } else {
                T::zero()
            });
        }
        let mut a_tilde = vec![T::one()];
        for k in 1..=t {
            if k % 2 == 1 {
                a_tilde.push(T::zero());
                continue;
            }
            let s = (2..=k).step_by(2).fold(T::zero(), |acc, l| acc + v[l].clone() * a_tilde[k - l].clone());
            a_tilde.push(-(T::from_i64(2) * s));
        }
        Self { n, a, v, a_tilde }
    }
}

/// Dimensionless weights c_i with f^{(t)}(a) ≈ Σ c_i f(a + ih)/h^t.
#[derive(Debug, Clone, PartialEq)]
pub struct StencilWeights<T> {
    pub offsets: Vec<i64>,
    pub weights: Vec<T>,
    pub t: usize,
    /// Nominal power of h in the truncation error.
    pub accuracy_order: usize,
}

impl<T: Scalar> StencilWeights<T> {
    pub fn backward(&self) -> usize {
        (-self.offsets[0]) as usize
    }

    pub fn forward(&self) -> usize {
        *self.offsets.last().expect("non-empty") as usize
    }

    /// Σ c_i f(a + ih)/h^t; the data must cover the stencil's offsets.
    pub fn apply(&self, values: &TwoSided<T>, h: &T) -> Result<T> {
        if !values.contains(self.offsets[0]) || !values.contains(*self.offsets.last().expect("non-empty")) {
            return Err(Error::InsufficientSupport("data do not cover the stencil".into()));
        }
        let s = self
            .offsets
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&i, c)| acc + c.clone() * values.at(i).clone());
        Ok(s / h.powu(self.t as u32))
    }

    /// Σ c_i i^j for the given power.
    pub fn moment(&self, j: u32) -> T {
        self.offsets.iter().zip(&self.weights).fold(T::zero(), |acc, (&i, c)| acc + c.clone() * T::from_i64(i).powu(j))
    }
}

/// Serialized stencil: integer numerators over one denominator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StencilJson {
    pub offsets: Vec<i64>,
    pub num: Vec<i64>,
    pub den: i64,
    pub t: usize,
    pub order: usize,
}

pub(crate) fn to_i64(v: &num::BigInt) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::InvalidArgument(format!("{v} does not fit in 64 bits")))
}

impl StencilWeights<Rational> {
    pub fn to_json(&self) -> Result<StencilJson> {
        let (nums, den) = over_common_denominator(&self.weights);
        Ok(StencilJson {
            offsets: self.offsets.clone(),
            num: nums.iter().map(to_i64).collect::<Result<_>>()?,
            den: to_i64(&den)?,
            t: self.t,
            order: self.accuracy_order,
        })
    }

    pub fn to_f64(&self) -> StencilWeights<f64> {
        StencilWeights {
            offsets: self.offsets.clone(),
            weights: self.weights.iter().map(Scalar::to_f64).collect(),
            t: self.t,
            accuracy_order: self.accuracy_order,
        }
    }
}

impl StencilJson {
    pub fn weights(&self) -> Vec<Rational> {
        self.num.iter().map(|&p| crate::scalar::rat(p, self.den)).collect()
    }
}

fn accuracy_order(m: usize, n: usize, t: usize) -> usize {
    m + n + 1 - t + usize::from(m == n && t.is_multiple_of(2))
}

/// Per-node weights of the two-sided grid derivative over offsets −m..n.
pub fn stencil_weights<T: Scalar>(m: usize, n: usize, t: usize) -> Result<StencilWeights<T>> {
    check_order(t, m + n)?;
    let c = TwoSidedCoeffs::<T>::new(m, n, t);
    let tfact = factorial::<T>(t);
    let side = |coef: &T, i: usize, negative: bool| -> T {
        let s = (0..t).fold(T::zero(), |acc, j| {
            let term = c.a_hat[j].clone() * inv_pow(i, t - j);
            if negative && (t - j) % 2 == 1 {
                acc - term
            } else {
                acc + term
            }
        });
        tfact.clone() * coef.clone() * s
    };
    let mut offsets = Vec::with_capacity(m + n + 1);
    let mut weights = Vec::with_capacity(m + n + 1);
    for i in (1..=m).rev() {
        offsets.push(-(i as i64));
        weights.push(side(&c.a_back[i - 1], i, true));
    }
    offsets.push(0);
    weights.push(tfact.clone() * c.a_hat[t].clone());
    for i in 1..=n {
        offsets.push(i as i64);
        weights.push(side(&c.a_fwd[i - 1], i, false));
    }
    Ok(StencilWeights { offsets, weights, t, accuracy_order: accuracy_order(m, n, t) })
}

/// t-th derivative at position 0 from values on −m..n spaced `h`.
pub fn twosided_derivative<T: Scalar>(values: &TwoSided<T>, h: &T, t: usize) -> Result<T> {
    stencil_weights::<T>(values.backward(), values.forward(), t)?.apply(values, h)
}

/// t-th derivative at the first of the evenly spaced values f(a), …, f(a + nh).
pub fn forward_derivative<T: Scalar>(values: &[T], h: &T, t: usize) -> Result<T> {
    if values.is_empty() {
        return Err(Error::EmptySamples);
    }
    let n = values.len() - 1;
    check_order(t, n)?;
    let c = ForwardCoeffs::<T>::new(n, t);
    let mut total = c.a_hat[t].clone() * values[0].clone();
    for i in 1..=n {
        let inner = (0..t).fold(T::zero(), |acc, j| acc + c.a_hat[j].clone() * inv_pow(i, t - j));
        let term = binomial::<T>(n, i) * values[i].clone() * inner;
        total = if i % 2 == 1 { total + term } else { total - term };
    }
    Ok(total * factorial::<T>(t) / h.powu(t as u32))
}

/// t-th derivative at the centre of symmetric data, using only the even or odd
/// combinations f(a + ih) ± f(a − ih) selected by the parity of t.
pub fn central_derivative<T: Scalar>(values: &TwoSided<T>, h: &T, t: usize) -> Result<T> {
    if !values.is_symmetric() || values.forward() == 0 {
        return Err(Error::InsufficientSupport("central derivative needs symmetric data over -n..=n, n >= 1".into()));
    }
    let n = values.forward();
    check_order(t, 2 * n)?;
    let c = CentralCoeffs::<T>::new(n, t);
    let mut total = c.a_tilde[t].clone() * values.at(0).clone();
    for i in 1..=n {
        let ii = i as i64;
        let pair = if t.is_multiple_of(2) {
            values.at(ii).clone() + values.at(-ii).clone()
        } else {
            values.at(ii).clone() - values.at(-ii).clone()
        };
        let inner = (0..t).step_by(2).fold(T::zero(), |acc, j| acc + c.a_tilde[j].clone() * inv_pow(i, t - j));
        total = total + c.a[i - 1].clone() * pair * inner;
    }
    Ok(total * factorial::<T>(t) / h.powu(t as u32))
}

/// Largest number of subsets the linear-combination paths will enumerate.
pub const SUBSET_LIMIT: u128 = 1_000_000;

fn subset_count(items: usize, size: usize) -> u128 {
    if size > items {
        return 0;
    }
    (0..size as u128).fold(1u128, |acc, i| acc * (items as u128 - i) / (i + 1))
}

fn guard_subsets(items: usize, size: usize) -> Result<()> {
    let count = subset_count(items, size);
    if count > SUBSET_LIMIT {
        return Err(Error::TooManySubsets { count, limit: SUBSET_LIMIT });
    }
    Ok(())
}

/// Π_{j∉S} (x − x_j)^e / Π_{s∈S} (x_s − x_j).
fn subset_coefficient<T: Scalar>(nodes: &[T], subset: &[usize], x: &T, e: u32) -> T {
    let mut coef = T::one();
    for (j, xj) in nodes.iter().enumerate() {
        if subset.contains(&j) {
            continue;
        }
        let den = subset.iter().fold(T::one(), |acc, &s| acc * (nodes[s].clone() - xj.clone()));
        coef = coef * (x.clone() - xj.clone()).powu(e) / den;
    }
    coef
}

/// k-th derivative as a weighted sum of divided differences over node subsets.
///
/// Without `fx` the sum runs over (k+1)-subsets with exponent k+1; with `fx`
/// over k-subsets, each divided difference gaining the argument x, with
/// exponent k.
pub fn derivative_lincomb<T: Scalar>(samples: &SampleSet<T>, x: &T, k: usize, fx: Option<&T>) -> Result<T> {
    let nodes = samples.nodes();
    let values = samples.values();
    let len = nodes.len();
    let total = match fx {
        None => {
            check_order(k, samples.n())?;
            guard_subsets(len, k + 1)?;
            (0..len).combinations(k + 1).fold(T::zero(), |acc, subset| {
                let xs: Vec<T> = subset.iter().map(|&i| nodes[i].clone()).collect();
                let fs: Vec<T> = subset.iter().map(|&i| values[i].clone()).collect();
                acc + subset_coefficient(nodes, &subset, x, k as u32 + 1) * dd_of(&xs, &fs)
            })
        }
        Some(fx) => {
            check_order(k, len)?;
            check_off_node(nodes, x)?;
            guard_subsets(len, k)?;
            (0..len).combinations(k).fold(T::zero(), |acc, subset| {
                let xs: Vec<T> = std::iter::once(x.clone()).chain(subset.iter().map(|&i| nodes[i].clone())).collect();
                let fs: Vec<T> = std::iter::once(fx.clone()).chain(subset.iter().map(|&i| values[i].clone())).collect();
                acc + subset_coefficient(nodes, &subset, x, k as u32) * dd_of(&xs, &fs)
            })
        }
    };
    Ok(total * factorial::<T>(k))
}

/// Sum of the subset coefficients used by [`derivative_lincomb`]; equals one.
pub fn subset_coefficient_sum<T: Scalar>(nodes: &[T], x: &T, k: usize, fx_known: bool) -> Result<T> {
    let (size, e) = if fx_known { (k, k as u32) } else { (k + 1, k as u32 + 1) };
    if size == 0 || size > nodes.len() {
        return Err(Error::OrderOutOfRange { order: k, max: nodes.len() });
    }
    guard_subsets(nodes.len(), size)?;
    Ok((0..nodes.len()).combinations(size).fold(T::zero(), |acc, s| acc + subset_coefficient(nodes, &s, x, e)))
}

/// Integer-grid coefficient for the subset {i_1, …, i_k} of 1..n:
/// (−1)^{Σi − k} Π C(n, i_z) Π π_z / (Π i_z)^{k−1}, π_z = Π_{z'≠z} (i_z − i_z').
pub fn grid_subset_coefficient<T: Scalar>(n: usize, subset: &[usize], k: usize) -> T {
    let mut coef = T::one();
    let mut index_product = T::one();
    for &i in subset {
        coef = coef * binomial::<T>(n, i);
        index_product = index_product * T::from_usize(i);
        for &j in subset {
            if j != i {
                coef = coef * (T::from_usize(i) - T::from_usize(j));
            }
        }
    }
    coef = coef / index_product.powu(k as u32 - 1);
    let sign_exp = subset.iter().sum::<usize>() + k;
    if sign_exp % 2 == 1 {
        -coef
    } else {
        coef
    }
}

/// k-th derivative at a from f(a), f(a + h), …, f(a + nh) through the
/// integer-grid subset coefficients and the known value f(a).
pub fn derivative_lincomb_grid<T: Scalar>(values: &[T], h: &T, k: usize) -> Result<T> {
    if values.is_empty() {
        return Err(Error::EmptySamples);
    }
    let n = values.len() - 1;
    check_order(k, n)?;
    guard_subsets(n, k)?;
    let node = |i: usize| T::from_usize(i) * h.clone();
    let total = (1..=n).combinations(k).fold(T::zero(), |acc, subset| {
        let xs: Vec<T> = std::iter::once(T::zero()).chain(subset.iter().map(|&i| node(i))).collect();
        let fs: Vec<T> = std::iter::once(values[0].clone()).chain(subset.iter().map(|&i| values[i].clone())).collect();
        acc + grid_subset_coefficient::<T>(n, &subset, k) * dd_of(&xs, &fs)
    });
    Ok(total * factorial::<T>(k))
}

/// Sum of [`grid_subset_coefficient`] over all k-subsets of 1..n; equals one.
pub fn grid_subset_coefficient_sum<T: Scalar>(n: usize, k: usize) -> Result<T> {
    check_order(k, n)?;
    guard_subsets(n, k)?;
    Ok((1..=n).combinations(k).fold(T::zero(), |acc, s| acc + grid_subset_coefficient::<T>(n, &s, k)))
}

const ZETA_TERMS: u32 = 64;

/// ζ(m) for m ≥ 2 from a fixed partial sum plus an Euler–Maclaurin tail.
pub fn zeta(m: u32) -> f64 {
    assert!(m >= 2, "zeta diverges at m = {m}");
    let s = f64::from(m);
    let partial: f64 = (1..ZETA_TERMS).map(|i| f64::from(i).powf(-s)).sum();
    let n = f64::from(ZETA_TERMS);
    let tail = n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s) + s * n.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * n.powf(-s - 3.0) / 720.0;
    partial + tail
}

/// σ_m = 1 − 2^{−m} + 3^{−m} − … = (1 − 2^{1−m}) ζ(m).
pub fn sigma(m: u32) -> f64 {
    (1.0 - 2f64.powi(1 - m as i32)) * zeta(m)
}

/// σ_2, σ_4, … up to σ_{2·count}.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaConstants {
    pub even: Vec<f64>,
}

impl EtaConstants {
    pub fn new(count: usize) -> Self {
        Self { even: (1..=count as u32).map(|l| sigma(2 * l)).collect() }
    }

    /// σ_{2l}.
    pub fn get(&self, l: usize) -> f64 {
        self.even[l - 1]
    }
}

/// k-th derivative at `a` from the alternating two-sided series truncated to
/// `terms` terms. Lower orders of the same parity are resolved by the same
/// truncated series; the order-0 term is f(a) itself.
pub fn series_derivative(f: impl Fn(f64) -> f64, a: f64, h: f64, k: usize, terms: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::OrderOutOfRange { order: 0, max: usize::MAX });
    }
    if terms == 0 {
        return Err(Error::InvalidArgument("series needs at least one term".into()));
    }
    if h == 0.0 || !h.is_finite() || h.abs() >= 1.0 {
        return Err(Error::InvalidArgument(format!("series step must satisfy 0 < |h| < 1, got {h}")));
    }
    let eta = EtaConstants::new(k / 2);
    let plus: Vec<f64> = (1..=terms).map(|i| f(a + i as f64 * h)).collect();
    let minus: Vec<f64> = (1..=terms).map(|i| f(a - i as f64 * h)).collect();
    // scaled[j] = f^{(j)}(a) h^j / j!
    let mut scaled = vec![f(a)];
    for order in 1..=k {
        let data: f64 = (1..=terms)
            .map(|i| {
                let pair = if order % 2 == 0 { plus[i - 1] + minus[i - 1] } else { plus[i - 1] - minus[i - 1] };
                let term = pair / (i as f64).powi(order as i32);
                if i % 2 == 1 {
                    term
                } else {
                    -term
                }
            })
            .sum();
        let lower: f64 = (1..=order / 2).map(|l| eta.get(l) * scaled[order - 2 * l]).sum();
        scaled.push(data - 2.0 * lower);
    }
    Ok(scaled[k] * factorial::<f64>(k) / h.powi(k as i32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn weights_over(num: &[i64], den: i64) -> Vec<Rational> {
        num.iter().map(|&p| rat(p, den)).collect()
    }

    #[test]
    fn rho_examples() {
        let s = SampleSet::from_fn(vec![rat(0, 1), rat(1, 1), rat(2, 1)], |x| x.clone()).unwrap();
        let rho = rho_coeffs(&s, &rat(1, 1), 2);
        assert_eq!(rho.unwrap_err(), Error::AtNode(1));
        let sym = SampleSet::from_fn(vec![rat(-1, 2), rat(1, 2)], |x| x.clone()).unwrap();
        assert_eq!(*rho_coeffs(&sym, &rat(0, 1), 1).unwrap().get(1), rat(0, 1));
        let one = SampleSet::from_fn(vec![rat(3, 1)], |x| x.clone()).unwrap();
        assert_eq!(*rho_coeffs(&one, &rat(1, 1), 2).unwrap().get(2), rat(1, 4));
    }

    #[test]
    fn uneven_exact_on_cubic() {
        let nodes = vec![rat(1, 10), rat(9, 10), rat(17, 10), rat(23, 10)];
        let s = SampleSet::from_fn(nodes, |x| x * x * x).unwrap();
        assert_eq!(derivative_uneven(&s, &rat(1, 1), 2, None).unwrap(), rat(6, 1));
        assert_eq!(derivative_uneven(&s, &rat(1, 1), 1, Some(&rat(1, 1))).unwrap(), rat(3, 1));
        assert!(derivative_uneven(&s, &rat(1, 1), 4, None).is_err());
    }

    #[test]
    fn counted_path_agrees() {
        let s = SampleSet::from_fn(vec![0.0, 0.4, 1.1, 1.5], |x| x.exp()).unwrap();
        for t in 1..=3 {
            let mut ops = OpCounts::default();
            let v = derivative_uneven_counted(&s, &0.7, t, &mut ops).unwrap() * factorial::<f64>(t);
            let w = derivative_uneven(&s, &0.7, t, None).unwrap();
            assert!((v - w).abs() < 1e-9 * (1.0 + w.abs()));
            assert_eq!(ops, crate::opcount::diff_op_counts(3, t).unwrap());
        }
    }

    #[test]
    fn classical_stencils() {
        let s = stencil_weights::<Rational>(0, 2, 1).unwrap();
        assert_eq!(s.weights, weights_over(&[-3, 4, -1], 2));
        let c = stencil_weights::<Rational>(2, 2, 2).unwrap();
        assert_eq!(c.weights, weights_over(&[-1, 16, -30, 16, -1], 12));
        assert_eq!(c.accuracy_order, 4);
        let b = stencil_weights::<Rational>(4, 0, 2).unwrap();
        assert_eq!(b.weights, weights_over(&[11, -56, 114, -104, 35], 12));
        assert!(stencil_weights::<Rational>(1, 0, 2).is_err());
    }

    #[test]
    fn grid_paths_match_stencils() {
        let vals: Vec<Rational> = (-2..=2).map(|i| rat(i * i * i * i - 3 * i, 1)).collect();
        let data = TwoSided::symmetric(vals.clone()).unwrap();
        let h = rat(1, 1);
        for t in 1..=4 {
            let a = twosided_derivative(&data, &h, t).unwrap();
            let b = central_derivative(&data, &h, t).unwrap();
            assert_eq!(a, b, "t={t}");
        }
        let fwd: Vec<Rational> = (0..5).map(|i| rat(i * i * i, 1)).collect();
        let one_sided = TwoSided::new(0, 4, fwd.clone()).unwrap();
        for t in 1..=4 {
            assert_eq!(forward_derivative(&fwd, &h, t).unwrap(), twosided_derivative(&one_sided, &h, t).unwrap());
        }
    }

    #[test]
    fn central_parity_and_limits() {
        let c = CentralCoeffs::<Rational>::new(3, 5);
        for k in [1, 3, 5] {
            assert_eq!(c.a_tilde[k], rat(0, 1));
        }
        // A_i → (−1)^{i−1} for fixed i; the gap is about i²/n
        let big = CentralCoeffs::<f64>::new(1000, 0);
        for (i, a) in big.a.iter().take(3).enumerate() {
            let target = if i % 2 == 0 { 1.0 } else { -1.0 };
            assert!((a - target).abs() < 1e-2);
        }
        let u = ForwardCoeffs::<f64>::new(20, 1);
        let harmonic: f64 = (1..=20).map(|i| 1.0 / i as f64).sum();
        assert!((u.u[1] - harmonic).abs() < 1e-12 * harmonic);
    }

    #[test]
    fn lincomb_small_cases() {
        let s = SampleSet::from_fn(vec![rat(0, 1), rat(1, 1), rat(2, 1)], |x| x * x).unwrap();
        assert_eq!(derivative_lincomb(&s, &rat(1, 2), 2, None).unwrap(), rat(2, 1));
        assert_eq!(derivative_lincomb(&s, &rat(1, 2), 1, None).unwrap(), rat(1, 1));
        assert_eq!(derivative_lincomb(&s, &rat(1, 2), 1, Some(&rat(1, 4))).unwrap(), rat(1, 1));
        let nodes = vec![rat(1, 3), rat(1, 1), rat(7, 4), rat(5, 2)];
        for k in 1..=3 {
            assert_eq!(subset_coefficient_sum(&nodes, &rat(6, 5), k, false).unwrap(), rat(1, 1));
            assert_eq!(subset_coefficient_sum(&nodes, &rat(6, 5), k, true).unwrap(), rat(1, 1));
            assert_eq!(grid_subset_coefficient_sum::<Rational>(5, k).unwrap(), rat(1, 1));
        }
    }

    #[test]
    fn grid_lincomb_equals_general_known_value() {
        let h = rat(1, 5);
        let vals: Vec<Rational> = (0..5).map(|i| rat(i * i, 25) * rat(i, 1) + rat(1, 1)).collect();
        let s = SampleSet::new((1..5).map(|i| rat(i, 5)).collect(), vals[1..].to_vec()).unwrap();
        for k in 1..=3 {
            let g = derivative_lincomb_grid(&vals, &h, k).unwrap();
            let u = derivative_lincomb(&s, &rat(0, 1), k, Some(&vals[0])).unwrap();
            assert_eq!(g, u, "k={k}");
        }
    }

    #[test]
    fn subset_guard() {
        let nodes: Vec<f64> = (0..60).map(f64::from).collect();
        assert!(matches!(subset_coefficient_sum(&nodes, &0.5, 5, false), Err(Error::TooManySubsets { .. })));
    }

    #[test]
    fn eta_values() {
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        assert!((sigma(2) - pi2 / 12.0).abs() < 1e-14);
        assert!((sigma(4) - 7.0 * pi2 * pi2 / 720.0).abs() < 1e-14);
    }

    #[test]
    fn series_parity() {
        // odd function about a with even order: the data sum vanishes
        let v = series_derivative(|x| x.powi(3), 0.0, 0.5, 2, 40).unwrap();
        assert_eq!(v, 0.0);
        assert!(series_derivative(f64::sin, 0.0, 0.5, 0, 10).is_err());
    }
}
