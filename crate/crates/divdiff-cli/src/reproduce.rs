//! Recomputes the reference tables and reports each entry against its printed value.

use std::io::Write;

use divdiff::differentiation::{derivative_uneven_counted, stencil_weights};
use divdiff::interpolation::{
    interpolate_backward_even, interpolate_central, interpolate_forward_even, interpolate_general_counted,
    interpolate_with_tail, CentralVariant, TailModel,
};
use divdiff::oracle::{golden, reference_tables, table5_function, ErrorTable, Printed};
use divdiff::quadrature::even_quad_weights;
use divdiff::{count_ops, diff_op_counts, lagrange_counts, OpCounts, Rational, SampleSet, TwoSided};
use serde::Serialize;

use crate::{Global, Status, Which};

#[derive(Debug, Clone, Serialize)]
struct Case {
    id: String,
    what: String,
    expected: String,
    computed: String,
    abs_dev: f64,
    rel_dev: f64,
    pass: bool,
}

fn numeric(id: String, what: &str, expected: f64, computed: f64, tol: f64) -> Case {
    let abs_dev = (computed - expected).abs();
    let rel_dev = if expected == 0.0 { abs_dev } else { abs_dev / expected.abs() };
    Case {
        id,
        what: what.to_string(),
        expected: format!("{expected:e}"),
        computed: format!("{computed:e}"),
        abs_dev,
        rel_dev,
        pass: abs_dev <= tol,
    }
}

fn exact(id: String, what: &str, expected: String, computed: String) -> Case {
    let pass = expected == computed;
    let dev = if pass { 0.0 } else { 1.0 };
    Case { id, what: what.to_string(), expected, computed, abs_dev: dev, rel_dev: dev, pass }
}

fn node_values(xs: &[f64]) -> Vec<f64> {
    xs.iter().map(|&x| table5_function(x)).collect()
}

fn table5() -> Vec<Case> {
    let r = reference_tables();
    r.function
        .x
        .iter()
        .zip(&r.function.y)
        .map(|(x, y)| numeric(format!("table5 x={}", x.0), "f(x)", y.value(), table5_function(x.value()), 5e-7))
        .collect()
}

/// Error columns: interpolated minus actual, within two units of the last printed digit.
fn error_column(
    table: &str,
    column: &str,
    t: &ErrorTable,
    eval: impl Fn(f64) -> anyhow::Result<f64>,
) -> anyhow::Result<Vec<Case>> {
    t.x.iter()
        .zip(&t.columns[column])
        .map(|(x, p): (&Printed, &Printed)| {
            let xv = x.value();
            let err = eval(xv)? - table5_function(xv);
            Ok(numeric(format!("{table} {column} x={}", x.0), "error", p.value(), err, 2.0 * p.unit()))
        })
        .collect()
}

fn table6() -> anyhow::Result<Vec<Case>> {
    let r = reference_tables();
    let nodes = r.nodes();
    let t = &r.classical_errors;
    let first = node_values(&nodes[..5]);
    let last: Vec<f64> = node_values(&nodes[4..]).into_iter().rev().collect();
    let centre = TwoSided::symmetric(node_values(&nodes[2..7]))?;
    let mut cases =
        error_column("table6", "forward", t, |x| Ok(interpolate_forward_even(&first, 4, &((x - 1.0) / 0.25))?))?;
    cases.extend(error_column("table6", "backward", t, |x| {
        Ok(interpolate_backward_even(&last, 4, &((x - 3.0) / 0.25))?)
    })?);
    cases.extend(error_column("table6", "stirling", t, |x| {
        Ok(interpolate_central(&centre, 2, &((x - 2.0) / 0.25), CentralVariant::Stirling)?)
    })?);
    Ok(cases)
}

fn table7() -> anyhow::Result<Vec<Case>> {
    let r = reference_tables();
    let nodes = r.nodes();
    let t = &r.modified_errors;
    let pick = |idx: &[usize]| {
        let xs: Vec<f64> = idx.iter().map(|&i| nodes[i]).collect();
        SampleSet::new(xs.clone(), node_values(&xs))
    };
    let model = |name: &str| {
        let p = &r.printed_theta[name];
        TailModel::in_position(3, p.origin, p.step, p.coeffs.iter().map(Printed::value).collect())
    };
    let (forward, fwd_model) = (pick(&[0, 1, 2])?, model("forward"));
    let (central, mid_model) = (pick(&[4, 5, 3])?, model("central"));
    let mut cases = error_column("table7", "forward", t, |x| Ok(interpolate_with_tail(&forward, &fwd_model, x)?))?;
    cases.extend(error_column("table7", "stirling", t, |x| Ok(interpolate_with_tail(&central, &mid_model, x)?))?);
    Ok(cases)
}

/// Fixed, unevenly spaced nodes on [0, 1].
fn sample_set(n: usize) -> anyhow::Result<SampleSet<f64>> {
    let nodes: Vec<f64> = (0..=n).map(|i| (i as f64 + 0.3 * ((i * i) as f64).sin()) / n as f64).collect();
    let values: Vec<f64> = nodes.iter().map(|x| (3.0 * x).cos()).collect();
    Ok(SampleSet::new(nodes, values)?)
}

fn counts(c: &OpCounts) -> String {
    format!("{}+ {}- {}* {}/", c.additions, c.subtractions, c.multiplications, c.divisions)
}

fn table8() -> anyhow::Result<Vec<Case>> {
    let mut cases = Vec::new();
    for n in 4..=8usize {
        let s = sample_set(n)?;
        for r in 0..=n {
            let mut ops = OpCounts::default();
            interpolate_general_counted(&s, r, &0.123_456_7, &mut ops)?;
            let printed = count_ops(n, r)?;
            // The r = n column trades one division for one multiplication.
            let expected = if r == n { printed + OpCounts::new(0, 0, 1, -1) } else { printed };
            let what = if r == n { "operation count (split column +1 mul, -1 div)" } else { "operation count" };
            cases.push(exact(format!("table8 n={n} r={r}"), what, counts(&expected), counts(&ops)));
            if r == 0 {
                cases.push(exact(
                    format!("table8 n={n} lagrange"),
                    "operation count",
                    counts(&lagrange_counts(n)),
                    counts(&ops),
                ));
            }
        }
    }
    Ok(cases)
}

fn table9() -> anyhow::Result<Vec<Case>> {
    let mut cases = Vec::new();
    for n in 2..=6usize {
        let s = sample_set(n)?;
        for k in 1..=3 {
            let mut ops = OpCounts::default();
            derivative_uneven_counted(&s, &1.5, k, &mut ops)?;
            cases.push(exact(
                format!("table9 n={n} k={k}"),
                "operation count",
                counts(&diff_op_counts(n, k)?),
                counts(&ops),
            ));
        }
    }
    Ok(cases)
}

fn weights_text(w: &[Rational]) -> String {
    w.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn stencils() -> anyhow::Result<Vec<Case>> {
    let cases = [
        ((4, 0), "backward-5pt-d2"),
        ((3, 1), "skew-back-5pt-d2"),
        ((2, 2), "central-5pt-d2"),
        ((1, 3), "skew-fwd-5pt-d2"),
        ((0, 4), "forward-5pt-d2"),
    ];
    cases
        .iter()
        .map(|&((m, n), name)| {
            let s = stencil_weights::<Rational>(m, n, 2)?;
            let g = golden(name).ok_or_else(|| anyhow::anyhow!("missing golden stencil {name}"))?;
            Ok(exact(
                format!("stencil {name}"),
                "second-derivative weights",
                format!("{:?}: {}", g.offsets, weights_text(&g.weights)),
                format!("{:?}: {}", s.offsets, weights_text(&s.weights)),
            ))
        })
        .collect()
}

fn quadweights() -> anyhow::Result<Vec<Case>> {
    [(2, "simpson"), (6, "nc7")]
        .iter()
        .map(|&(n, name)| {
            let w = even_quad_weights::<Rational>(n)?.weights;
            let g = golden(name).ok_or_else(|| anyhow::anyhow!("missing golden rule {name}"))?;
            Ok(exact(format!("quadweights {name}"), "closed rule weights", weights_text(&g.weights), weights_text(&w)))
        })
        .collect()
}

fn collect(which: Which) -> anyhow::Result<Vec<Case>> {
    Ok(match which {
        Which::Table5 => table5(),
        Which::Table6 => table6()?,
        Which::Table7 => table7()?,
        Which::Table8 => table8()?,
        Which::Table9 => table9()?,
        Which::Stencils => stencils()?,
        Which::Quadweights => quadweights()?,
        Which::All => {
            let mut all = Vec::new();
            for w in [
                Which::Table5,
                Which::Table6,
                Which::Table7,
                Which::Table8,
                Which::Table9,
                Which::Stencils,
                Which::Quadweights,
            ] {
                all.extend(collect(w)?);
            }
            all
        }
    })
}

pub fn run(g: &Global, which: Which, out: &mut dyn Write) -> anyhow::Result<Status> {
    let cases = collect(which)?;
    let failed = cases.iter().filter(|c| !c.pass).count();
    if g.json {
        let doc = serde_json::json!({ "cases": cases, "total": cases.len(), "failed": failed });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    } else {
        for c in &cases {
            writeln!(
                out,
                "{} {}: {} expected {} computed {} (abs {:.2e}, rel {:.2e})",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                c.what,
                c.expected,
                c.computed,
                c.abs_dev,
                c.rel_dev
            )?;
        }
        writeln!(out, "{} of {} cases passed", cases.len() - failed, cases.len())?;
    }
    Ok(if failed == 0 { Status::Success } else { Status::CasesFailed })
}
