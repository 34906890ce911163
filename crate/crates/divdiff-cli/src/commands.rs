//! `table`, `interp`, `diff`, `quad` and `stencil`.

use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use divdiff::differentiation::{
    derivative_lincomb, derivative_lincomb_grid, derivative_uneven, derivative_uneven_counted, series_derivative,
    stencil_weights, twosided_derivative,
};
use divdiff::interpolation::{
    fit_tail, interpolate_central, interpolate_many, interpolate_with_tail, CentralVariant, TailBasis, TailModel,
};
use divdiff::quadrature::{
    even_quad_weights, quad_central, quad_composite, quad_even, quad_uneven, CentralQuadPlan, QuadPlanJson,
};
use divdiff::tables::{
    build_combined_table, build_integer_table, build_new_table, build_newton_table, RenderedTable, TableJson,
};
use divdiff::{diff_op_counts, Exec, GridSpec, OpCounts, Rational, SampleSet, Scalar, TwoSided};
use serde_json::{json, Value};

use crate::data::{self, DataFile};
use crate::funcs::{self, Reference};
use crate::{
    DiffArgs, Global, InterpArgs, MethodArg, OrderArg, QuadArgs, SchemeArg, Status, StencilArgs, TableArgs, VariantArg,
};

fn parse_value<T: Scalar>(text: &str, what: &str) -> anyhow::Result<T> {
    T::parse_text(text).filter(Scalar::finite).ok_or_else(|| anyhow!("cannot parse {what} '{text}'"))
}

fn parse_count(text: &str, what: &str) -> anyhow::Result<usize> {
    text.trim().parse().map_err(|_| anyhow!("{what} must be a non-negative integer, got '{text}'"))
}

fn write_json(out: &mut dyn Write, value: &Value) -> anyhow::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn counts_json(c: &OpCounts) -> Value {
    json!({
        "additions": c.additions,
        "subtractions": c.subtractions,
        "multiplications": c.multiplications,
        "divisions": c.divisions,
    })
}

fn counts_text(c: &OpCounts) -> String {
    format!(
        "additions={} subtractions={} multiplications={} divisions={}",
        c.additions, c.subtractions, c.multiplications, c.divisions
    )
}

// ---- table ----

fn is_json_file(path: &Path) -> anyhow::Result<bool> {
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        return Ok(true);
    }
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(text.trim_start().starts_with('{'))
}

pub fn table(g: &Global, a: &TableArgs, out: &mut dyn Write) -> anyhow::Result<Status> {
    if is_json_file(&a.input)? {
        return if g.rational { table_from_json::<Rational>(g, a, out) } else { table_from_json::<f64>(g, a, out) };
    }
    if g.rational {
        table_with::<Rational>(g, a, out)
    } else {
        table_with::<f64>(g, a, out)
    }
}

fn table_with<T: Scalar>(g: &Global, a: &TableArgs, out: &mut dyn Write) -> anyhow::Result<Status> {
    let DataFile { samples: s, .. } = data::load::<T>(&a.input)?;
    let r = a.r.unwrap_or(s.n());
    if a.signed.is_some() && a.scheme != SchemeArg::Integer {
        bail!("--signed applies to the integer scheme only");
    }
    let rendered = match a.scheme {
        SchemeArg::Newton => build_newton_table(&s).render(&s),
        SchemeArg::New => build_new_table(&s, r)?.render(&s),
        SchemeArg::Combined => build_combined_table(&s, r)?.render(&s),
        SchemeArg::Integer => {
            if s.len() > 1 && s.uniform_step().is_none() {
                eprintln!("warning: nodes are not evenly spaced; the integer scheme uses row positions only");
            }
            let range = match &a.signed {
                Some(text) => {
                    let parts: Vec<&str> = text.split(',').collect();
                    if parts.len() != 2 {
                        bail!("--signed needs M,N");
                    }
                    Some((parse_count(parts[0], "M")?, parse_count(parts[1], "N")?))
                }
                None => None,
            };
            build_integer_table(s.values(), r, range)?.render()
        }
    };
    emit_table(g, &rendered, out)
}

fn table_from_json<T: Scalar>(g: &Global, a: &TableArgs, out: &mut dyn Write) -> anyhow::Result<Status> {
    let text = std::fs::read_to_string(&a.input).with_context(|| format!("cannot read {}", a.input.display()))?;
    let parsed: TableJson =
        serde_json::from_str(&text).with_context(|| format!("{} is not a table in JSON form", a.input.display()))?;
    let columns = parsed.parse_columns::<T>()?;
    let rows = columns.first().map_or(0, Vec::len);
    let rendered = RenderedTable {
        scheme: parsed.scheme,
        r: parsed.r,
        labels: (0..rows).map(|i| i.to_string()).collect(),
        columns,
    };
    emit_table(g, &rendered, out)
}

fn emit_table<T: Scalar>(g: &Global, rendered: &RenderedTable<T>, out: &mut dyn Write) -> anyhow::Result<Status> {
    if g.json {
        write_json(out, &serde_json::to_value(rendered.to_json())?)?;
    } else {
        write!(out, "{}", rendered.to_text())?;
    }
    Ok(Status::Success)
}

// ---- interp ----

fn slice_rows<T: Scalar>(s: &SampleSet<T>, rows: &Option<String>) -> anyhow::Result<SampleSet<T>> {
    let Some(text) = rows else { return Ok(s.clone()) };
    let (lo, hi) = text.split_once(':').ok_or_else(|| anyhow!("--rows needs START:END"))?;
    let lo = if lo.is_empty() { 0 } else { parse_count(lo, "row start")? };
    let hi = if hi.is_empty() { s.len() } else { parse_count(hi, "row end")? };
    if lo >= hi || hi > s.len() {
        bail!("--rows {text} is outside 0..{}", s.len());
    }
    Ok(s.select(&(lo..hi).collect::<Vec<_>>())?)
}

fn centre_index<T: Scalar>(s: &SampleSet<T>, centre: &Option<String>) -> anyhow::Result<usize> {
    match centre {
        Some(text) => {
            let c: T = parse_value(text, "centre")?;
            s.position_of(&c).ok_or_else(|| anyhow!("centre {text} is not a node"))
        }
        None => Ok(s.len() / 2),
    }
}

/// Indices c, c+1, c−1, c+2, c−2, … within 0..len.
fn central_indices(c: usize, len: usize) -> Vec<usize> {
    let mut out = vec![c];
    for k in 1..len {
        if c + k < len {
            out.push(c + k);
        }
        if k <= c {
            out.push(c - k);
        }
    }
    out
}

pub fn interp(g: &Global, a: &InterpArgs, out: &mut dyn Write) -> anyhow::Result<Status> {
    if g.rational {
        interp_with::<Rational>(g, a, out)
    } else {
        interp_with::<f64>(g, a, out)
    }
}

fn variant_of(v: VariantArg) -> CentralVariant {
    match v {
        VariantArg::NewForward => CentralVariant::NewForward,
        VariantArg::NewBackward => CentralVariant::NewBackward,
        VariantArg::Stirling => CentralVariant::Stirling,
        VariantArg::Bessel => CentralVariant::Bessel,
        VariantArg::Everett => CentralVariant::Everett,
        VariantArg::Steffensen => CentralVariant::Steffensen,
    }
}

struct Row {
    x: Value,
    x_text: String,
    x64: f64,
    value: Value,
    value_text: String,
    value64: f64,
}

fn interp_with<T: Scalar>(g: &Global, a: &InterpArgs, out: &mut dyn Write) -> anyhow::Result<Status> {
    let file = data::load::<T>(&a.input)?;
    let sorted = slice_rows(&file.samples, &a.rows)?;
    let xs: Vec<T> = a.x.iter().map(|x| parse_value(x, "x")).collect::<anyhow::Result<_>>()?;
    let reference = g.reference.as_deref().map(Reference::resolve).transpose()?;
    let tail_requested = a.tail.is_some() || a.tail_coeffs.is_some();
    if a.variant.is_some() && tail_requested {
        bail!("--variant and --tail are separate formulas; choose one");
    }

    let lo = sorted.node(0).to_f64();
    let hi = sorted.node(sorted.n()).to_f64();
    for x in &xs {
        let v = x.to_f64();
        if v < lo || v > hi {
            eprintln!("warning: x = {x} lies outside the node hull [{lo}, {hi}]");
        }
    }

    let ordered = match a.order {
        OrderArg::Ascending => sorted.clone(),
        OrderArg::Descending => sorted.select(&(0..sorted.len()).rev().collect::<Vec<_>>())?,
        OrderArg::Central => sorted.select(&central_indices(centre_index(&sorted, &a.center)?, sorted.len()))?,
    };

    let mut comments = Vec::new();
    let mut extra = Value::Null;
    let values: Vec<(Value, String, f64)> = if let Some(v) = a.variant {
        let h = sorted.uniform_step().ok_or_else(|| anyhow!("--variant needs evenly spaced nodes"))?;
        let c = centre_index(&sorted, &a.center)?;
        let data = TwoSided::new(c, sorted.len() - 1 - c, sorted.values().to_vec())?;
        let centre = sorted.node(c).clone();
        xs.iter()
            .map(|x| {
                let s = (x.clone() - centre.clone()) / h.clone();
                let v = interpolate_central(&data, a.r, &s, variant_of(v))?;
                Ok((v.to_json(), v.to_string(), v.to_f64()))
            })
            .collect::<anyhow::Result<_>>()?
    } else if tail_requested {
        if g.rational {
            bail!("tail models are fitted in double precision; drop --rational");
        }
        let s64 = ordered.to_f64();
        let step = a.tail_step.or_else(|| {
            sorted.uniform_step().map(|h| {
                let h = h.to_f64();
                if a.order == OrderArg::Descending {
                    -h
                } else {
                    h
                }
            })
        });
        let origin = a.tail_origin.unwrap_or(*s64.node(0));
        let (basis, origin, step) = match step {
            Some(step) => (TailBasis::Position, origin, step),
            None => (TailBasis::Argument, 0.0, 1.0),
        };
        let model = match (&a.tail_coeffs, a.tail) {
            (Some(coeffs), _) => match basis {
                TailBasis::Position => TailModel::in_position(a.r, origin, step, coeffs.clone()),
                TailBasis::Argument => TailModel::in_argument(a.r, coeffs.clone()),
            },
            (None, Some(degree)) => fit_tail(&s64, a.r, degree, basis, origin, step)?,
            (None, None) => unreachable!("tail_requested"),
        };
        comments.push(format!(
            "tail r={} basis={:?} origin={} step={} coeffs={:?} residual={:.3e}",
            model.r, model.basis, model.origin, model.step, model.coeffs, model.residual
        ));
        extra = serde_json::to_value(&model)?;
        xs.iter()
            .map(|x| {
                let v = interpolate_with_tail(&s64, &model, x.to_f64())?;
                Ok((v.to_json(), v.to_string(), v))
            })
            .collect::<anyhow::Result<_>>()?
    } else {
        interpolate_many(&ordered, a.r, &xs, Exec::default())?
            .into_iter()
            .map(|v| (v.to_json(), v.to_string(), v.to_f64()))
            .collect()
    };

    let rows: Vec<Row> = xs
        .iter()
        .zip(values)
        .map(|(x, (value, value_text, value64))| Row {
            x: x.to_json(),
            x_text: x.to_string(),
            x64: x.to_f64(),
            value,
            value_text,
            value64,
        })
        .collect();
    let errors: Vec<Option<f64>> = rows
        .iter()
        .map(|row| reference.as_ref().map(|r| r.value(row.x64).map(|truth| row.value64 - truth)).transpose())
        .collect::<anyhow::Result<_>>()?;

    if g.json {
        let points: Vec<Value> = rows
            .iter()
            .zip(&errors)
            .map(|(row, err)| {
                let mut o = json!({ "x": row.x, "value": row.value });
                if let Some(e) = err {
                    o["error"] = json!(e);
                }
                o
            })
            .collect();
        let mut doc = json!({ "r": a.r, "points": points });
        if !extra.is_null() {
            doc["tail"] = extra;
        }
        write_json(out, &doc)?;
    } else {
        for c in comments {
            writeln!(out, "# {c}")?;
        }
        writeln!(out, "{}", if reference.is_some() { "x,value,error" } else { "x,value" })?;
        for (row, err) in rows.iter().zip(&errors) {
            match err {
                Some(e) => writeln!(out, "{},{},{e:.6e}", row.x_text, row.value_text)?,
                None => writeln!(out, "{},{}", row.x_text, row.value_text)?,
            }
        }
    }
    Ok(Status::Success)
}

// ---- diff ----

struct DiffReport {
    value: Value,
    value_text: String,
    method: &'static str,
    note: Option<String>,
    order: Option<usize>,
    ops: Option<(OpCounts, Option<OpCounts>)>,
}

pub fn diff(g: &Global, a: &DiffArgs, out: &mut dyn Write) -> anyhow::Result<Status> {
    let report = match (&a.input, &a.grid) {
        (Some(path), None) => {
            if g.rational {
                diff_data::<Rational>(path, a)?
            } else {
                diff_data::<f64>(path, a)?
            }
        }
        (None, Some(grid)) => {
            if g.rational {
                bail!("--func is evaluated in double precision; drop --rational");
            }
            diff_grid(grid, a)?
        }
        _ => bail!("give either an input file or --grid with --func"),
    };
    if g.json {
        let mut doc = json!({ "t": a.t, "value": report.value, "method": report.method });
        if let Some(note) = &report.note {
            doc["route"] = json!(note);
        }
        if let Some(order) = report.order {
            doc["order"] = json!(order);
        }
        if let Some((closed, counted)) = &report.ops {
            doc["ops"] = json!({ "closed_form": counts_json(closed), "counted": counted.as_ref().map(counts_json) });
        }
        write_json(out, &doc)?;
    } else {
        writeln!(out, "value: {}", report.value_text)?;
        writeln!(out, "method: {}", report.method)?;
        if let Some(note) = &report.note {
            writeln!(out, "route: {note}")?;
        }
        if let Some(order) = report.order {
            writeln!(out, "order: {order}")?;
        }
        if let Some((closed, counted)) = &report.ops {
            writeln!(out, "ops closed form: {}", counts_text(closed))?;
            if let Some(c) = counted {
                writeln!(out, "ops counted: {}", counts_text(c))?;
            }
        }
    }
    Ok(Status::Success)
}

fn diff_data<T: Scalar>(path: &Path, a: &DiffArgs) -> anyhow::Result<DiffReport> {
    let s = data::load::<T>(path)?.samples;
    let x: T = parse_value(a.at.as_deref().ok_or_else(|| anyhow!("--at is required with an input file"))?, "--at")?;
    let fx: Option<T> = a.fx.as_deref().map(|v| parse_value(v, "--fx")).transpose()?;
    let nominal = (s.n() + 1).checked_sub(a.t);
    let ops = if a.ops {
        let closed = diff_op_counts(s.n(), a.t)?;
        let mut counted = OpCounts::default();
        let counted = derivative_uneven_counted(&s, &x, a.t, &mut counted).ok().map(|_| counted);
        Some((closed, counted))
    } else {
        None
    };
    let (value, method, note, order) = match a.method {
        MethodArg::Series => bail!("the series method samples a function; use --grid A,H,M,N with --func"),
        MethodArg::Lincomb => (derivative_lincomb(&s, &x, a.t, fx.as_ref())?, "lincomb", None, nominal),
        MethodArg::Recursive => match s.position_of(&x) {
            None => (derivative_uneven(&s, &x, a.t, fx.as_ref())?, "recursive", None, nominal),
            Some(i) => match s.uniform_step() {
                Some(h) => {
                    let (m, n) = (i, s.len() - 1 - i);
                    let data = TwoSided::new(m, n, s.values().to_vec())?;
                    let w = stencil_weights::<T>(m, n, a.t)?;
                    let note = format!("x is a node of an even grid; used the stencil over offsets -{m}..{n}");
                    (twosided_derivative(&data, &h, a.t)?, "grid-stencil", Some(note), Some(w.accuracy_order))
                }
                None => {
                    let note = "x is a node; used the subset (lincomb) formula".to_string();
                    (derivative_lincomb(&s, &x, a.t, None)?, "lincomb", Some(note), nominal)
                }
            },
        },
    };
    Ok(DiffReport { value: value.to_json(), value_text: value.to_string(), method, note, order, ops })
}

fn diff_grid(grid: &str, a: &DiffArgs) -> anyhow::Result<DiffReport> {
    let parts: Vec<&str> = grid.split(',').collect();
    if parts.len() != 4 {
        bail!("--grid needs A,H,M,N");
    }
    let origin: f64 = parse_value(parts[0], "A")?;
    let h: f64 = parse_value(parts[1], "H")?;
    let (m, n) = (parse_count(parts[2], "M")?, parse_count(parts[3], "N")?);
    if let Some(at) = &a.at {
        let at: f64 = parse_value(at, "--at")?;
        if at != origin {
            bail!("grid derivatives are taken at A = {origin}; shift the grid instead of --at");
        }
    }
    let f = funcs::lookup(a.func.as_deref().ok_or_else(|| anyhow!("--grid needs --func"))?)?;
    let spec = GridSpec::new(origin, h, m, n)?;
    let values = spec.sample(|x| f(*x));
    let (value, method, order) = match a.method {
        MethodArg::Recursive => {
            let w = stencil_weights::<f64>(m, n, a.t)?;
            (twosided_derivative(&values, &h, a.t)?, "grid-stencil", Some(w.accuracy_order))
        }
        MethodArg::Lincomb if m == 0 => (derivative_lincomb_grid(values.values(), &h, a.t)?, "lincomb-grid", None),
        MethodArg::Lincomb => (derivative_lincomb(&spec.to_samples(|x| f(*x))?, &origin, a.t, None)?, "lincomb", None),
        MethodArg::Series => (series_derivative(f, origin, h, a.t, a.terms)?, "series", None),
    };
    let ops = a.ops.then(|| diff_op_counts(m + n, a.t).map(|c| (c, None))).transpose()?;
    Ok(DiffReport { value: value.to_json(), value_text: value.to_string(), method, note: None, order, ops })
}

// ---- quad ----

struct QuadReport {
    value: Value,
    value_text: String,
    rule: String,
    weights: Option<QuadPlanJson>,
    node_weights: Option<Vec<Value>>,
}

pub fn quad(g: &Global, a: &QuadArgs, out: &mut dyn Write) -> anyhow::Result<Status> {
    let report = match (&a.input, &a.grid) {
        (Some(path), None) => {
            if g.rational {
                quad_data::<Rational>(path, a)?
            } else {
                quad_data::<f64>(path, a)?
            }
        }
        (None, Some(grid)) => {
            if g.rational {
                bail!("--func is evaluated in double precision; drop --rational");
            }
            quad_grid(grid, a)?
        }
        _ => bail!("give either an input file or --grid with --func"),
    };
    if g.json {
        let mut doc = json!({ "value": report.value, "rule": report.rule });
        if let Some(w) = &report.weights {
            doc["weights"] = serde_json::to_value(w)?;
        }
        if let Some(w) = report.node_weights {
            doc["node_weights"] = Value::Array(w);
        }
        write_json(out, &doc)?;
    } else {
        writeln!(out, "value: {}", report.value_text)?;
        writeln!(out, "rule: {}", report.rule)?;
        if let Some(w) = &report.weights {
            writeln!(out, "weights: {}", w.display())?;
        }
        if let Some(w) = &report.node_weights {
            let text: Vec<String> = w.iter().map(Value::to_string).collect();
            writeln!(out, "node weights: {}", text.join(", "))?;
        }
    }
    Ok(Status::Success)
}

fn even_display(n: usize) -> anyhow::Result<QuadPlanJson> {
    Ok(even_quad_weights::<Rational>(n)?.to_json()?)
}

fn central_display(n: usize) -> anyhow::Result<QuadPlanJson> {
    Ok(CentralQuadPlan::<Rational>::new(n)?.to_json()?)
}

fn quad_data<T: Scalar>(path: &Path, a: &QuadArgs) -> anyhow::Result<QuadReport> {
    let s = data::load::<T>(path)?.samples;
    if a.panels.is_some() {
        bail!("--panels resamples a function; use --grid with --func");
    }
    if let Some(from) = &a.from {
        let x: T = parse_value(from, "--from")?;
        let width: T = match &a.width {
            Some(w) => parse_value(w, "--width")?,
            None => {
                let k = s.nodes().iter().position(|xi| *xi > x).filter(|&k| k > 0);
                let k = k.ok_or_else(|| anyhow!("--from lies outside the nodes; give --width"))?;
                s.node(k).clone() - s.node(k - 1).clone()
            }
        };
        let plan = divdiff::quadrature::UnevenQuadPlan::new(&s, &x, &width)?;
        let value = quad_uneven(&s, &x, &width)?;
        return Ok(QuadReport {
            value: value.to_json(),
            value_text: value.to_string(),
            rule: format!("uneven from {x} over width {width}"),
            weights: None,
            node_weights: Some(plan.node_weights.iter().map(Scalar::to_json).collect()),
        });
    }
    let h = s.uniform_step().ok_or_else(|| anyhow!("nodes are not evenly spaced; give --from and --width"))?;
    if a.central {
        let data = TwoSided::symmetric(s.values().to_vec())?;
        let value = quad_central(&data, &h)?;
        let n = data.forward();
        Ok(QuadReport {
            value: value.to_json(),
            value_text: value.to_string(),
            rule: format!("symmetric, n = {n}"),
            weights: Some(central_display(n)?),
            node_weights: None,
        })
    } else {
        let value = quad_even(s.values(), &h)?;
        let n = s.n();
        Ok(QuadReport {
            value: value.to_json(),
            value_text: value.to_string(),
            rule: format!("closed, n = {n}"),
            weights: Some(even_display(n)?),
            node_weights: None,
        })
    }
}

fn quad_grid(grid: &str, a: &QuadArgs) -> anyhow::Result<QuadReport> {
    let parts: Vec<&str> = grid.split(',').collect();
    if parts.len() != 3 {
        bail!("--grid needs A,H,N");
    }
    let origin: f64 = parse_value(parts[0], "A")?;
    let h: f64 = parse_value(parts[1], "H")?;
    let n = parse_count(parts[2], "N")?;
    let f = funcs::lookup(a.func.as_deref().ok_or_else(|| anyhow!("--grid needs --func"))?)?;
    let (value, rule, weights) = match (a.panels, a.central) {
        (Some(_), true) => bail!("--panels composes the closed rule; drop --central"),
        (Some(panels), false) => {
            let end = origin + (panels * n) as f64 * h;
            let v = quad_composite(f, origin, end, panels, n, Exec::default())?;
            (v, format!("composite, {panels} panels of n = {n} over [{origin}, {end}]"), even_display(n)?)
        }
        (None, true) => {
            let data = GridSpec::new(origin, h, n, n)?.sample(|x| f(*x));
            (quad_central(&data, &h)?, format!("symmetric, n = {n}"), central_display(n)?)
        }
        (None, false) => {
            let values: Vec<f64> = (0..=n).map(|i| f(origin + i as f64 * h)).collect();
            (quad_even(&values, &h)?, format!("closed, n = {n}"), even_display(n)?)
        }
    };
    Ok(QuadReport {
        value: value.to_json(),
        value_text: value.to_string(),
        rule,
        weights: Some(weights),
        node_weights: None,
    })
}

// ---- stencil ----

pub fn stencil(g: &Global, a: &StencilArgs, out: &mut dyn Write) -> anyhow::Result<Status> {
    let w = stencil_weights::<Rational>(a.m, a.n, a.t)?;
    let j = w.to_json()?;
    if g.json {
        write_json(out, &serde_json::to_value(&j)?)?;
        return Ok(Status::Success);
    }
    let offsets: Vec<String> = j.offsets.iter().map(i64::to_string).collect();
    writeln!(out, "offsets: {}", offsets.join(", "))?;
    if g.rational {
        let exact: Vec<String> = w.weights.iter().map(ToString::to_string).collect();
        writeln!(out, "weights: {}", exact.join(", "))?;
    } else {
        let nums: Vec<String> = j.num.iter().map(i64::to_string).collect();
        writeln!(out, "weights: ({})/{} · h^-{}", nums.join(", "), j.den, j.t)?;
    }
    writeln!(out, "order: {}", j.order)?;
    Ok(Status::Success)
}
