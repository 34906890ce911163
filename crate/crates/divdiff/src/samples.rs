//! Sample containers: arbitrary node sets, uniform grids and two-sided grid data.

use num::rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Ordered, pairwise-distinct nodes with their function values.
///
/// Order is significant: the first `r` nodes form the prefix of the split
/// formulas.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet<T> {
    nodes: Vec<T>,
    values: Vec<T>,
}

impl<T: Scalar> SampleSet<T> {
    pub fn new(nodes: Vec<T>, values: Vec<T>) -> Result<Self> {
        if nodes.len() != values.len() {
            return Err(Error::LengthMismatch { nodes: nodes.len(), values: values.len() });
        }
        if nodes.is_empty() {
            return Err(Error::EmptySamples);
        }
        for (i, (x, y)) in nodes.iter().zip(&values).enumerate() {
            if !x.finite() || !y.finite() {
                return Err(Error::NonFinite(i));
            }
        }
        let mut order: Vec<usize> = (0..nodes.len()).collect();
        order.sort_by(|&a, &b| nodes[a].partial_cmp(&nodes[b]).expect("finite nodes are ordered"));
        for w in order.windows(2) {
            if nodes[w[0]] == nodes[w[1]] {
                let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
                return Err(Error::CoincidentNodes(a, b));
            }
        }
        Ok(Self { nodes, values })
    }

    pub fn from_fn(nodes: Vec<T>, f: impl Fn(&T) -> T) -> Result<Self> {
        let values = nodes.iter().map(f).collect();
        Self::new(nodes, values)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Highest index, i.e. count minus one.
    pub fn n(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn node(&self, i: usize) -> &T {
        &self.nodes[i]
    }

    pub fn value(&self, i: usize) -> &T {
        &self.values[i]
    }

    /// New sample set made of the given indices, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        for &i in indices {
            if i >= self.len() {
                return Err(Error::IndexOutOfRange { index: i, len: self.len() });
            }
        }
        Self::new(
            indices.iter().map(|&i| self.nodes[i].clone()).collect(),
            indices.iter().map(|&i| self.values[i].clone()).collect(),
        )
    }

    /// Copy sorted by ascending node, with the permutation that was applied.
    pub fn sorted(&self) -> (Self, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.nodes[a].partial_cmp(&self.nodes[b]).expect("finite nodes"));
        let sorted = Self {
            nodes: order.iter().map(|&i| self.nodes[i].clone()).collect(),
            values: order.iter().map(|&i| self.values[i].clone()).collect(),
        };
        (sorted, order)
    }

    /// Index of the node equal to `x`, if any.
    pub fn position_of(&self, x: &T) -> Option<usize> {
        self.nodes.iter().position(|xi| xi == x)
    }

    pub fn to_f64(&self) -> SampleSet<f64> {
        SampleSet {
            nodes: self.nodes.iter().map(Scalar::to_f64).collect(),
            values: self.values.iter().map(Scalar::to_f64).collect(),
        }
    }

    /// Uniform spacing h when consecutive gaps agree to `1e-12·|h|`.
    pub fn uniform_step(&self) -> Option<T> {
        if self.len() < 2 {
            return None;
        }
        let h = self.nodes[1].clone() - self.nodes[0].clone();
        let tol = h.abs().to_f64() * 1e-12;
        self.nodes.windows(2).all(|w| ((w[1].clone() - w[0].clone()) - h.clone()).abs().to_f64() <= tol).then_some(h)
    }
}

impl SampleSet<f64> {
    /// Exact rational copy of floating-point samples.
    pub fn to_rational(&self) -> SampleSet<BigRational> {
        SampleSet {
            nodes: self.nodes.iter().map(|&x| BigRational::from_float(x).expect("finite")).collect(),
            values: self.values.iter().map(|&y| BigRational::from_float(y).expect("finite")).collect(),
        }
    }
}

/// Uniform grid a + i·h for i in −m..=n.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec<T> {
    pub origin: T,
    pub step: T,
    pub backward: usize,
    pub forward: usize,
}

impl<T: Scalar> GridSpec<T> {
    pub fn new(origin: T, step: T, backward: usize, forward: usize) -> Result<Self> {
        if step.is_zero() || !step.finite() || !origin.finite() {
            return Err(Error::InvalidArgument("grid step must be finite and nonzero".into()));
        }
        Ok(Self { origin, step, backward, forward })
    }

    pub fn node(&self, i: i64) -> T {
        self.origin.clone() + self.step.clone() * T::from_i64(i)
    }

    pub fn offsets(&self) -> impl Iterator<Item = i64> {
        -(self.backward as i64)..=(self.forward as i64)
    }

    pub fn sample(&self, f: impl Fn(&T) -> T) -> TwoSided<T> {
        TwoSided {
            backward: self.backward,
            forward: self.forward,
            values: self.offsets().map(|i| f(&self.node(i))).collect(),
        }
    }

    pub fn to_samples(&self, f: impl Fn(&T) -> T) -> Result<SampleSet<T>> {
        SampleSet::from_fn(self.offsets().map(|i| self.node(i)).collect(), f)
    }
}

/// Values on integer positions −m..=n, stored in ascending position order.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoSided<T> {
    backward: usize,
    forward: usize,
    values: Vec<T>,
}

impl<T: Scalar> TwoSided<T> {
    pub fn new(backward: usize, forward: usize, values: Vec<T>) -> Result<Self> {
        if values.len() != backward + forward + 1 {
            return Err(Error::LengthMismatch { nodes: backward + forward + 1, values: values.len() });
        }
        if let Some(i) = values.iter().position(|v| !v.finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { backward, forward, values })
    }

    /// Symmetric data over −n..=n.
    pub fn symmetric(values: Vec<T>) -> Result<Self> {
        if values.len().is_multiple_of(2) {
            return Err(Error::InvalidArgument("symmetric data needs an odd number of values".into()));
        }
        let n = values.len() / 2;
        Self::new(n, n, values)
    }

    pub fn backward(&self) -> usize {
        self.backward
    }

    pub fn forward(&self) -> usize {
        self.forward
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn contains(&self, i: i64) -> bool {
        i >= -(self.backward as i64) && i <= self.forward as i64
    }

    /// Value at integer position `i`; panics outside −m..=n.
    pub fn at(&self, i: i64) -> &T {
        assert!(self.contains(i), "position {i} outside -{}..={}", self.backward, self.forward);
        &self.values[(i + self.backward as i64) as usize]
    }

    pub fn is_symmetric(&self) -> bool {
        self.backward == self.forward
    }
}

/// Positions 0, −1, 1, −2, 2, … restricted to −m..=n.
pub fn central_order(backward: usize, forward: usize) -> Vec<i64> {
    central_order_from(0, backward, forward, false)
}

/// Positions 0, 1, −1, 2, −2, … restricted to −m..=n.
pub fn central_order_forward(backward: usize, forward: usize) -> Vec<i64> {
    central_order_from(0, backward, forward, true)
}

fn central_order_from(start: i64, backward: usize, forward: usize, positive_first: bool) -> Vec<i64> {
    let (lo, hi) = (-(backward as i64), forward as i64);
    let mut out = vec![start];
    let reach = lo.abs().max(hi);
    for k in 1..=reach {
        let pair = if positive_first { [k, -k] } else { [-k, k] };
        out.extend(pair.into_iter().filter(|p| *p >= lo && *p <= hi));
    }
    out
}
