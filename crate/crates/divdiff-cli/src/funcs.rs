//! Named test functions for `--func` and `--reference`.

use std::path::Path;

use divdiff::oracle::table5_function;

pub type Func = fn(f64) -> f64;

const NAMED: [(&str, Func); 7] = [
    ("sin", f64::sin),
    ("cos", f64::cos),
    ("tan", f64::tan),
    ("exp", f64::exp),
    ("ln", f64::ln),
    ("sqrt", f64::sqrt),
    ("table5", table5_function),
];

pub fn names() -> Vec<&'static str> {
    NAMED.iter().map(|(n, _)| *n).collect()
}

pub fn lookup(name: &str) -> anyhow::Result<Func> {
    NAMED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, f)| *f)
        .ok_or_else(|| anyhow::anyhow!("unknown function '{name}' (known: {})", names().join(", ")))
}

/// True values for error columns: a named function or a table of exact points.
#[derive(Debug, Clone)]
pub enum Reference {
    Function(&'static str, Func),
    Points(Vec<(f64, f64)>),
}

impl Reference {
    pub fn resolve(spec: &str) -> anyhow::Result<Self> {
        if let Ok(f) = lookup(spec) {
            let name = NAMED.iter().find(|(n, _)| *n == spec).map(|(n, _)| *n).unwrap_or("function");
            return Ok(Reference::Function(name, f));
        }
        let path = Path::new(spec);
        if !path.exists() {
            anyhow::bail!("reference '{spec}' is neither a known function ({}) nor a file", names().join(", "));
        }
        let data = crate::data::load::<f64>(path)?;
        Ok(Reference::Points(data.samples.nodes().iter().copied().zip(data.samples.values().iter().copied()).collect()))
    }

    pub fn value(&self, x: f64) -> anyhow::Result<f64> {
        match self {
            Reference::Function(_, f) => Ok(f(x)),
            Reference::Points(points) => points
                .iter()
                .find(|(px, _)| *px == x)
                .map(|(_, y)| *y)
                .ok_or_else(|| anyhow::anyhow!("reference file has no value at x = {x}")),
        }
    }
}
