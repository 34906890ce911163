//! Integration weights built from a Taylor expansion whose derivatives come
//! from the recursive coefficient solve: off-node on arbitrary nodes, closed
//! forward grids, symmetric grids, and a composite driver.

use serde::{Deserialize, Serialize};

use crate::differentiation::{
    lagrange_basis_at, recursive_coeffs, rho_coeffs, to_i64, CentralCoeffs, ForwardCoeffs, RhoSet,
};
use crate::error::{Error, Result};
use crate::par::{map_range, Exec};
use crate::samples::{SampleSet, TwoSided};
use crate::scalar::{binomial, over_common_denominator, Rational, Scalar};

/// Weights for ∫_x^{x+h} f from samples at arbitrary nodes, x off-node.
#[derive(Debug, Clone, PartialEq)]
pub struct UnevenQuadPlan<T> {
    pub x: T,
    pub h: T,
    pub rho: RhoSet<T>,
    pub a_coeffs: Vec<T>,
    /// γ_k = Σ_{j=0}^{n−k} a_j h^{k+j+1}/(k+j+1).
    pub gamma: Vec<T>,
    /// L_i(x) Σ_k γ_k/(x_i − x)^k.
    pub node_weights: Vec<T>,
}

impl<T: Scalar> UnevenQuadPlan<T> {
    pub fn new(samples: &SampleSet<T>, x: &T, h: &T) -> Result<Self> {
        let n = samples.n();
        let rho = rho_coeffs(samples, x, n)?;
        let a = recursive_coeffs(rho.values(), n);
        let gamma: Vec<T> = (0..=n)
            .map(|k| {
                (0..=n - k).fold(T::zero(), |acc, j| {
                    let p = k + j + 1;
                    acc + a[j].clone() * h.powu(p as u32) / T::from_usize(p)
                })
            })
            .collect();
        let basis = lagrange_basis_at(samples.nodes(), x);
        let node_weights = samples
            .nodes()
            .iter()
            .zip(&basis)
            .map(|(xi, li)| {
                let gap = xi.clone() - x.clone();
                let inner = gamma.iter().rev().fold(T::zero(), |acc, g| acc / gap.clone() + g.clone());
                li.clone() * inner
            })
            .collect();
        Ok(Self { x: x.clone(), h: h.clone(), rho, a_coeffs: a, gamma, node_weights })
    }

    pub fn apply(&self, values: &[T]) -> T {
        self.node_weights.iter().zip(values).fold(T::zero(), |acc, (w, f)| acc + w.clone() * f.clone())
    }
}

/// ∫_x^{x+h} f estimated from the samples.
pub fn quad_uneven<T: Scalar>(samples: &SampleSet<T>, x: &T, h: &T) -> Result<T> {
    Ok(UnevenQuadPlan::new(samples, x, h)?.apply(samples.values()))
}

/// Closed rule over offsets 0..n, weights in units of h.
#[derive(Debug, Clone, PartialEq)]
pub struct EvenQuadPlan<T> {
    pub n: usize,
    pub coeffs: ForwardCoeffs<T>,
    /// ξ_k = Σ_{j=0}^{n−k} â_j n^{k+j+1}/(k+j+1).
    pub xi: Vec<T>,
    pub weights: Vec<T>,
}

/// Serialized rule: integer numerators over one denominator, in units of h.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadPlanJson {
    pub n: usize,
    pub weights_num: Vec<i64>,
    pub weights_den: i64,
}

impl QuadPlanJson {
    pub fn weights(&self) -> Vec<Rational> {
        self.weights_num.iter().map(|&p| crate::scalar::rat(p, self.weights_den)).collect()
    }

    /// `h/D·(w_0, w_1, …)` display form.
    pub fn display(&self) -> String {
        let nums: Vec<String> = self.weights_num.iter().map(i64::to_string).collect();
        format!("h/{}·({})", self.weights_den, nums.join(", "))
    }
}

fn weights_json(n: usize, weights: &[Rational]) -> Result<QuadPlanJson> {
    let (nums, den) = over_common_denominator(weights);
    Ok(QuadPlanJson { n, weights_num: nums.iter().map(to_i64).collect::<Result<_>>()?, weights_den: to_i64(&den)? })
}

impl EvenQuadPlan<Rational> {
    pub fn to_json(&self) -> Result<QuadPlanJson> {
        weights_json(self.n, &self.weights)
    }
}

pub fn even_quad_weights<T: Scalar>(n: usize) -> Result<EvenQuadPlan<T>> {
    if n == 0 {
        return Err(Error::InsufficientSupport("a closed rule needs n >= 1".into()));
    }
    let coeffs = ForwardCoeffs::<T>::new(n, n);
    let nn = T::from_usize(n);
    let xi: Vec<T> = (0..=n)
        .map(|k| {
            (0..=n - k).fold(T::zero(), |acc, j| {
                let p = k + j + 1;
                acc + coeffs.a_hat[j].clone() * nn.powu(p as u32) / T::from_usize(p)
            })
        })
        .collect();
    let mut weights = vec![xi[0].clone()];
    for i in 1..=n {
        let ii = T::from_usize(i);
        let inner = (1..=n).fold(T::zero(), |acc, k| acc + xi[k].clone() / ii.powu(k as u32));
        let w = binomial::<T>(n, i) * inner;
        weights.push(if i % 2 == 1 { w } else { -w });
    }
    Ok(EvenQuadPlan { n, coeffs, xi, weights })
}

/// Exact rational weights converted to the working type.
fn even_weights_as<T: Scalar>(n: usize) -> Result<Vec<T>> {
    Ok(even_quad_weights::<Rational>(n)?.weights.iter().map(T::from_rational).collect())
}

/// ∫_a^{a+nh} f from f(a), …, f(a + nh).
pub fn quad_even<T: Scalar>(values: &[T], h: &T) -> Result<T> {
    if values.len() < 2 {
        return Err(Error::InsufficientSupport("need at least two values".into()));
    }
    let w = even_weights_as::<T>(values.len() - 1)?;
    Ok(w.iter().zip(values).fold(T::zero(), |acc, (w, f)| acc + w.clone() * f.clone()) * h.clone())
}

/// Symmetric rule over offsets −n..n, weights in units of h.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralQuadPlan<T> {
    pub n: usize,
    pub coeffs: CentralCoeffs<T>,
    /// ξ_0, ξ_2, …, ξ_{2n}.
    pub xi_even: Vec<T>,
    /// Weights for offsets −n..=n.
    pub weights: Vec<T>,
}

impl CentralQuadPlan<Rational> {
    pub fn to_json(&self) -> Result<QuadPlanJson> {
        weights_json(2 * self.n, &self.weights)
    }
}

impl<T: Scalar> CentralQuadPlan<T> {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InsufficientSupport("a symmetric rule needs n >= 1".into()));
        }
        let coeffs = CentralCoeffs::<T>::new(n, 2 * n);
        let nn = T::from_usize(n);
        let xi_even: Vec<T> = (0..=n)
            .map(|k| {
                (0..=n - k).fold(T::zero(), |acc, j| {
                    let p = 2 * k + 2 * j + 1;
                    acc + coeffs.a_tilde[2 * j].clone() * nn.powu(p as u32) / T::from_usize(p)
                })
            })
            .collect();
        let two = T::from_i64(2);
        let side: Vec<T> = (1..=n)
            .map(|i| {
                let ii = T::from_usize(i);
                let inner = (1..=n).fold(T::zero(), |acc, k| acc + xi_even[k].clone() / ii.powu(2 * k as u32));
                two.clone() * coeffs.a[i - 1].clone() * inner
            })
            .collect();
        let weights = side
            .iter()
            .rev()
            .cloned()
            .chain(std::iter::once(two * xi_even[0].clone()))
            .chain(side.iter().cloned())
            .collect();
        Ok(Self { n, coeffs, xi_even, weights })
    }
}

/// ∫_{a−nh}^{a+nh} f from symmetric data.
pub fn quad_central<T: Scalar>(values: &TwoSided<T>, h: &T) -> Result<T> {
    if !values.is_symmetric() {
        return Err(Error::InsufficientSupport("symmetric rule needs data over -n..=n".into()));
    }
    let plan = CentralQuadPlan::<Rational>::new(values.forward())?;
    let total =
        plan.weights.iter().zip(values.values()).fold(T::zero(), |acc, (w, f)| acc + T::from_rational(w) * f.clone());
    Ok(total * h.clone())
}

/// Apply the closed n-point-interval rule on each of `panels` equal panels of
/// [p, q] and sum the panel results in order.
pub fn quad_composite(
    f: impl Fn(f64) -> f64 + Sync + Send,
    p: f64,
    q: f64,
    panels: usize,
    n: usize,
    exec: Exec,
) -> Result<f64> {
    if !(p < q) || !p.is_finite() || !q.is_finite() {
        return Err(Error::InvalidArgument(format!("interval [{p}, {q}] must satisfy p < q")));
    }
    if panels == 0 {
        return Err(Error::InvalidArgument("need at least one panel".into()));
    }
    let w = even_weights_as::<f64>(n)?;
    let width = (q - p) / panels as f64;
    let h = width / n as f64;
    let per_panel = map_range(exec, panels, |k| {
        let a = p + k as f64 * width;
        w.iter().enumerate().map(|(i, wi)| wi * f(a + i as f64 * h)).sum::<f64>() * h
    });
    Ok(per_panel.iter().sum())
}
