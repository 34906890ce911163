//! Divided differences and the four table schemes: Newton's sliding window,
//! the fixed-prefix table, the combined table and the integer-argument table.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::samples::{central_order, SampleSet};
use crate::scalar::{factorial, Scalar};

/// Divided difference f[x_{i_0}, …, x_{i_k}] over the selected nodes.
pub fn divided_difference<T: Scalar>(samples: &SampleSet<T>, indices: &[usize]) -> Result<T> {
    if indices.is_empty() {
        return Err(Error::EmptyIndices);
    }
    for (a, &i) in indices.iter().enumerate() {
        if i >= samples.len() {
            return Err(Error::IndexOutOfRange { index: i, len: samples.len() });
        }
        if let Some(b) = indices[..a].iter().position(|&j| j == i) {
            return Err(Error::CoincidentNodes(indices[b], i));
        }
    }
    let nodes: Vec<T> = indices.iter().map(|&i| samples.node(i).clone()).collect();
    let values: Vec<T> = indices.iter().map(|&i| samples.value(i).clone()).collect();
    Ok(dd_of(&nodes, &values))
}

/// Divided difference over explicit (distinct) nodes by the triangular recurrence.
pub(crate) fn dd_of<T: Scalar>(nodes: &[T], values: &[T]) -> T {
    let mut d = values.to_vec();
    let k = d.len();
    for level in 1..k {
        for j in 0..k - level {
            d[j] = (d[j + 1].clone() - d[j].clone()) / (nodes[j + level].clone() - nodes[j].clone());
        }
    }
    d.swap_remove(0)
}

/// w_i = Π_{j≠i} 1/(x_i − x_j).
pub(crate) fn barycentric_weights<T: Scalar>(nodes: &[T]) -> Vec<T> {
    (0..nodes.len())
        .map(|i| {
            let prod = (0..nodes.len())
                .filter(|&j| j != i)
                .fold(T::one(), |acc, j| acc * (nodes[i].clone() - nodes[j].clone()));
            T::one() / prod
        })
        .collect()
}

/// Σ_i F_i Π_{j≠i} (x − x_j)/(x_i − x_j); exact at nodes.
pub(crate) fn lagrange_sum<T: Scalar>(nodes: &[T], values: &[T], x: &T) -> T {
    let mut total = T::zero();
    for (i, (xi, fi)) in nodes.iter().zip(values).enumerate() {
        let mut num = T::one();
        let mut den = T::one();
        for (j, xj) in nodes.iter().enumerate() {
            if j != i {
                num = num * (x.clone() - xj.clone());
                den = den * (xi.clone() - xj.clone());
            }
        }
        total = total + fi.clone() * num / den;
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Newton,
    New,
    Combined,
    Integer,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Newton => "newton",
            Scheme::New => "new",
            Scheme::Combined => "combined",
            Scheme::Integer => "integer",
        }
    }
}

/// Which recurrence produced a table entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Newton,
    New,
}

/// Newton's table: `entry(i, j) = f[x_j, …, x_{j+i}]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularTable<T> {
    columns: Vec<Vec<T>>,
}

impl<T: Scalar> TriangularTable<T> {
    pub fn entry(&self, i: usize, j: usize) -> &T {
        &self.columns[i][j]
    }

    pub fn columns(&self) -> &[Vec<T>] {
        &self.columns
    }

    /// f[x_0..x_i] for i = 0..n.
    pub fn top_diagonal(&self) -> Vec<T> {
        self.columns.iter().map(|c| c[0].clone()).collect()
    }

    pub fn index_set(&self, i: usize, j: usize) -> Vec<usize> {
        (j..=j + i).collect()
    }
}

pub fn build_newton_table<T: Scalar>(samples: &SampleSet<T>) -> TriangularTable<T> {
    let x = samples.nodes();
    let mut columns = vec![samples.values().to_vec()];
    for i in 1..samples.len() {
        let prev = &columns[i - 1];
        let col = (0..prev.len() - 1)
            .map(|j| (prev[j + 1].clone() - prev[j].clone()) / (x[j + i].clone() - x[j].clone()))
            .collect();
        columns.push(col);
    }
    TriangularTable { columns }
}

/// Fixed-prefix table: `entry(i, j) = f[x_0, …, x_{i−1}, x_{i+j}]` for columns 1..=r.
#[derive(Debug, Clone, PartialEq)]
pub struct NewDDTable<T> {
    r: usize,
    columns: Vec<Vec<T>>,
}

impl<T: Scalar> NewDDTable<T> {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn entry(&self, i: usize, j: usize) -> &T {
        &self.columns[i][j]
    }

    pub fn columns(&self) -> &[Vec<T>] {
        &self.columns
    }

    /// f[x_0..x_i] for i = 0..=r.
    pub fn heads(&self) -> Vec<T> {
        self.columns.iter().map(|c| c[0].clone()).collect()
    }

    pub fn index_set(&self, i: usize, j: usize) -> Vec<usize> {
        if i == 0 {
            return vec![j];
        }
        (0..i).chain(std::iter::once(i + j)).collect()
    }
}

pub fn build_new_table<T: Scalar>(samples: &SampleSet<T>, r: usize) -> Result<NewDDTable<T>> {
    let n = samples.n();
    if r > n {
        return Err(Error::SplitOutOfRange { r, n });
    }
    let x = samples.nodes();
    let mut columns = vec![samples.values().to_vec()];
    for i in 1..=r {
        let prev = &columns[i - 1];
        let head = prev[0].clone();
        let col =
            (0..=n - i).map(|j| (prev[j + 1].clone() - head.clone()) / (x[i + j].clone() - x[i - 1].clone())).collect();
        columns.push(col);
    }
    Ok(NewDDTable { r, columns })
}

/// Combined table over columns 1..=n: entries with `j < r − i + 1` follow the
/// sliding-window recurrence, the rest the fixed-prefix recurrence.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinedTable<T> {
    r: usize,
    columns: Vec<Vec<T>>,
}

impl<T: Scalar> CombinedTable<T> {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn entry(&self, i: usize, j: usize) -> &T {
        &self.columns[i][j]
    }

    pub fn columns(&self) -> &[Vec<T>] {
        &self.columns
    }

    pub fn part(&self, i: usize, j: usize) -> Part {
        if j + i < self.r + 1 {
            Part::Newton
        } else {
            Part::New
        }
    }

    pub fn index_set(&self, i: usize, j: usize) -> Vec<usize> {
        match self.part(i, j) {
            Part::Newton => (j..=j + i).collect(),
            Part::New => (0..i).chain(std::iter::once(i + j)).collect(),
        }
    }
}

pub fn build_combined_table<T: Scalar>(samples: &SampleSet<T>, r: usize) -> Result<CombinedTable<T>> {
    let n = samples.n();
    if r > n {
        return Err(Error::SplitOutOfRange { r, n });
    }
    let x = samples.nodes();
    let mut columns = vec![samples.values().to_vec()];
    for i in 1..=n {
        let prev = &columns[i - 1];
        let col = (0..=n - i)
            .map(|j| {
                if j + i < r + 1 {
                    (prev[j + 1].clone() - prev[j].clone()) / (x[j + i].clone() - x[j].clone())
                } else {
                    (prev[j + 1].clone() - prev[0].clone()) / (x[i + j].clone() - x[i - 1].clone())
                }
            })
            .collect();
        columns.push(col);
    }
    Ok(CombinedTable { r, columns })
}

/// Provenance of one integer-table entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryLabel {
    pub part: Part,
    /// Integer arguments: a contiguous ascending window for the difference
    /// part, `p_0, …, p_{i−1}, k` for the divided part.
    pub args: Vec<i64>,
}

/// Table over integer arguments.
///
/// The difference part holds plain differences Δ^i over contiguous windows of
/// the prefix range; the divided part holds f_I[p_0, …, p_{i−1}, k] where p is
/// the prefix ordering (0, 1, 2, … or 0, −1, 1, −2, 2, … for signed ranges).
#[derive(Debug, Clone, PartialEq)]
pub struct IntegerDDTable<T> {
    r: usize,
    positions: Vec<i64>,
    order: Vec<i64>,
    columns: Vec<Vec<T>>,
    labels: Vec<Vec<EntryLabel>>,
    heads: Vec<T>,
}

impl<T: Scalar> IntegerDDTable<T> {
    pub fn r(&self) -> usize {
        self.r
    }

    /// Ascending integer arguments of row 0.
    pub fn positions(&self) -> &[i64] {
        &self.positions
    }

    /// Prefix ordering p_0, p_1, ….
    pub fn order(&self) -> &[i64] {
        &self.order
    }

    pub fn columns(&self) -> &[Vec<T>] {
        &self.columns
    }

    pub fn labels(&self) -> &[Vec<EntryLabel>] {
        &self.labels
    }

    /// f_I[p_0, …, p_i]; for unsigned tables Δ^i f_0 / i!.
    pub fn column_heads(&self) -> &[T] {
        &self.heads
    }

    /// Entry value as a divided difference over its integer arguments.
    pub fn divided_entry(&self, i: usize, j: usize) -> T {
        let v = self.columns[i][j].clone();
        match self.labels[i][j].part {
            Part::Newton => v / factorial::<T>(i),
            Part::New => v,
        }
    }

    /// Columns as displayed: the head of each difference column divided by i!.
    pub fn display_columns(&self) -> Vec<Vec<T>> {
        let mut out = self.columns.clone();
        for (i, col) in out.iter_mut().enumerate().skip(1) {
            let head_args = head_window(&self.order, i);
            if let Some(j) = self.labels[i].iter().position(|l| l.part == Part::Newton && l.args == head_args) {
                col[j] = col[j].clone() / factorial::<T>(i);
            }
        }
        out
    }
}

fn head_window(order: &[i64], i: usize) -> Vec<i64> {
    let lo = *order[..=i].iter().min().expect("non-empty");
    (lo..=lo + i as i64).collect()
}

/// Integer-argument table over positions 0..n, or −m..n when `signed_range`
/// is given (values then listed in ascending position order).
pub fn build_integer_table<T: Scalar>(
    values: &[T],
    r: usize,
    signed_range: Option<(usize, usize)>,
) -> Result<IntegerDDTable<T>> {
    let (positions, order) = match signed_range {
        Some((m, n)) => {
            if values.len() != m + n + 1 {
                return Err(Error::LengthMismatch { nodes: m + n + 1, values: values.len() });
            }
            ((-(m as i64)..=n as i64).collect::<Vec<_>>(), central_order(m, n))
        }
        None => {
            let p: Vec<i64> = (0..values.len() as i64).collect();
            (p.clone(), p)
        }
    };
    if values.is_empty() {
        return Err(Error::EmptySamples);
    }
    if let Some(i) = values.iter().position(|v| !v.finite()) {
        return Err(Error::NonFinite(i));
    }
    let depth = values.len() - 1;
    integer_table_with_order(values, &positions, order, r, depth)
}

pub(crate) fn integer_table_with_order<T: Scalar>(
    values: &[T],
    positions: &[i64],
    order: Vec<i64>,
    r: usize,
    depth: usize,
) -> Result<IntegerDDTable<T>> {
    let n = values.len() - 1;
    if r > n {
        return Err(Error::SplitOutOfRange { r, n });
    }
    let lo_pos = positions[0];
    let value_at = |p: i64| values[(p - lo_pos) as usize].clone();
    let window_lo = *order[..=r].iter().min().expect("non-empty");

    let mut columns = vec![values.to_vec()];
    let mut labels =
        vec![positions.iter().map(|&p| EntryLabel { part: Part::Newton, args: vec![p] }).collect::<Vec<_>>()];
    let mut heads = vec![value_at(order[0])];

    let mut diffs: Vec<T> = (0..=r as i64).map(|k| value_at(window_lo + k)).collect();
    let mut divided: Vec<(i64, T)> = order[(r + 1).min(order.len())..].iter().map(|&k| (k, value_at(k))).collect();

    for i in 1..=depth.min(n) {
        let mut col = Vec::new();
        let mut lab = Vec::new();
        let prev_head = heads[i - 1].clone();
        let prev_arg = order[i - 1];
        let prefix: Vec<i64> = order[..i].to_vec();

        if i <= r {
            diffs = diffs.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
            for (j, d) in diffs.iter().enumerate() {
                let start = window_lo + j as i64;
                col.push(d.clone());
                lab.push(EntryLabel { part: Part::Newton, args: (start..=start + i as i64).collect() });
            }
        }
        if i > r + 1 {
            divided.retain(|(k, _)| *k != prev_arg);
        }
        divided = divided
            .into_iter()
            .map(|(k, v)| {
                let d = (v - prev_head.clone()) / T::from_i64(k - prev_arg);
                (k, d)
            })
            .collect();
        for (k, v) in &divided {
            col.push(v.clone());
            let mut args = prefix.clone();
            args.push(*k);
            lab.push(EntryLabel { part: Part::New, args });
        }

        let head = if i <= r {
            let head_start = *order[..=i].iter().min().expect("non-empty");
            diffs[(head_start - window_lo) as usize].clone() / factorial::<T>(i)
        } else {
            divided
                .iter()
                .find(|(k, _)| *k == order[i])
                .map(|(_, v)| v.clone())
                .expect("p_i is in the divided part past the split")
        };
        heads.push(head);
        columns.push(col);
        labels.push(lab);
    }

    Ok(IntegerDDTable { r, positions: positions.to_vec(), order, columns, labels, heads })
}

/// Direct or barycentric evaluation of the extended divided difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DdForm {
    Direct,
    Barycentric,
}

/// Approximation of f[x, x_0, …, x_{r−1}] from the order-r column of the
/// fixed-prefix table, interpolated over x_r..x_n.
pub fn extended_dd_eval<T: Scalar>(samples: &SampleSet<T>, r: usize, x: &T, form: DdForm) -> Result<T> {
    let table = build_new_table(samples, r)?;
    let tail_nodes = &samples.nodes()[r..];
    let tail_values = &table.columns[r];
    if let Some(i) = tail_nodes.iter().position(|xi| xi == x) {
        return Ok(tail_values[i].clone());
    }
    Ok(match form {
        DdForm::Direct => lagrange_sum(tail_nodes, tail_values, x),
        DdForm::Barycentric => {
            let w = barycentric_weights(tail_nodes);
            let mut num = T::zero();
            let mut den = T::zero();
            for ((xi, fi), wi) in tail_nodes.iter().zip(tail_values).zip(&w) {
                let c = wi.clone() / (x.clone() - xi.clone());
                num = num + c.clone() * fi.clone();
                den = den + c;
            }
            num / den
        }
    })
}

/// Serializable form of any table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableJson {
    pub scheme: Scheme,
    pub r: usize,
    pub columns: Vec<Vec<Value>>,
}

impl TableJson {
    pub fn parse_columns<T: Scalar>(&self) -> Result<Vec<Vec<T>>> {
        self.columns
            .iter()
            .map(|col| {
                col.iter()
                    .map(|v| T::from_json(v).ok_or_else(|| Error::InvalidArgument(format!("bad table entry {v}"))))
                    .collect()
            })
            .collect()
    }
}

/// A table ready for display: row labels plus its columns.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderedTable<T> {
    pub scheme: Scheme,
    pub r: usize,
    pub labels: Vec<String>,
    pub columns: Vec<Vec<T>>,
}

impl<T: Scalar> RenderedTable<T> {
    pub fn to_json(&self) -> TableJson {
        TableJson {
            scheme: self.scheme,
            r: self.r,
            columns: self.columns.iter().map(|c| c.iter().map(Scalar::to_json).collect()).collect(),
        }
    }

    /// Aligned text: one row per node, column i top-aligned.
    pub fn to_text(&self) -> String {
        let mut cells: Vec<Vec<String>> = Vec::new();
        let mut header = vec!["x".to_string(), "f".to_string()];
        header.extend((1..self.columns.len()).map(|i| match self.scheme {
            // Integer arguments: order-i quotients are scaled differences.
            Scheme::Integer => format!("Δ^{i}f/{i}!"),
            _ => format!("d{i}"),
        }));
        cells.push(header);
        for (row, label) in self.labels.iter().enumerate() {
            let mut line = vec![label.clone()];
            for col in &self.columns {
                line.push(col.get(row).map(|v| v.to_string()).unwrap_or_default());
            }
            cells.push(line);
        }
        let width = cells.iter().map(Vec::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..width)
            .map(|c| cells.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &cells {
            let line: Vec<String> = row.iter().enumerate().map(|(c, s)| format!("{s:>w$}", w = widths[c])).collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        out
    }
}

impl<T: Scalar> TriangularTable<T> {
    pub fn render(&self, samples: &SampleSet<T>) -> RenderedTable<T> {
        RenderedTable {
            scheme: Scheme::Newton,
            r: samples.n(),
            labels: samples.nodes().iter().map(|x| x.to_string()).collect(),
            columns: self.columns.clone(),
        }
    }
}

impl<T: Scalar> NewDDTable<T> {
    pub fn render(&self, samples: &SampleSet<T>) -> RenderedTable<T> {
        RenderedTable {
            scheme: Scheme::New,
            r: self.r,
            labels: samples.nodes().iter().map(|x| x.to_string()).collect(),
            columns: self.columns.clone(),
        }
    }
}

impl<T: Scalar> CombinedTable<T> {
    pub fn render(&self, samples: &SampleSet<T>) -> RenderedTable<T> {
        RenderedTable {
            scheme: Scheme::Combined,
            r: self.r,
            labels: samples.nodes().iter().map(|x| x.to_string()).collect(),
            columns: self.columns.clone(),
        }
    }
}

impl<T: Scalar> IntegerDDTable<T> {
    pub fn render(&self) -> RenderedTable<T> {
        RenderedTable {
            scheme: Scheme::Integer,
            r: self.r,
            labels: self.positions.iter().map(|p| p.to_string()).collect(),
            columns: self.display_columns(),
        }
    }
}
