//! CSV sample files: `x,y` rows, `#` comments, an optional one-line header.

use std::fmt;
use std::path::Path;

use divdiff::{Error as CoreError, SampleSet, Scalar};

/// Parse failure with its 1-based location in the file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub line: u64,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for InputError {}

/// Samples sorted by x, with the file order kept alongside.
#[derive(Debug, Clone)]
pub struct DataFile<T> {
    pub samples: SampleSet<T>,
    /// `original_order[k]` is the file row (0-based, data rows only) of sorted sample k.
    pub original_order: Vec<usize>,
    pub header: Option<Vec<String>>,
}

pub fn load<T: Scalar>(path: &Path) -> anyhow::Result<DataFile<T>> {
    let text = std::fs::read_to_string(path).map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
    parse(&text).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
}

pub fn parse<T: Scalar>(text: &str) -> Result<DataFile<T>, InputError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut header = None;
    let mut nodes = Vec::new();
    let mut values = Vec::new();
    let mut lines = Vec::new();
    for (k, record) in reader.records().enumerate() {
        let record = record.map_err(|e| InputError {
            line: e.position().map_or(0, |p| p.line()),
            column: 1,
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() < 2 {
            return Err(InputError { line, column: record.len() + 1, message: "expected two fields: x,y".into() });
        }
        let x = T::parse_text(&record[0]);
        if k == 0 && x.is_none() {
            header = Some(record.iter().map(str::to_string).collect());
            continue;
        }
        let x =
            x.ok_or_else(|| InputError { line, column: 1, message: format!("cannot parse x value '{}'", &record[0]) })?;
        let y = T::parse_text(&record[1]).ok_or_else(|| InputError {
            line,
            column: 2,
            message: format!("cannot parse y value '{}'", &record[1]),
        })?;
        if !x.finite() || !y.finite() {
            let column = if x.finite() { 2 } else { 1 };
            return Err(InputError { line, column, message: "value is not finite".into() });
        }
        nodes.push(x);
        values.push(y);
        lines.push(line);
    }
    let samples = SampleSet::new(nodes, values).map_err(|e| match e {
        CoreError::CoincidentNodes(i, j) => {
            InputError { line: lines[j], column: 1, message: format!("x repeats the value on line {}", lines[i]) }
        }
        CoreError::EmptySamples => InputError { line: 0, column: 0, message: "no data rows".into() },
        other => InputError { line: 0, column: 0, message: other.to_string() },
    })?;
    let (samples, original_order) = samples.sorted();
    Ok(DataFile { samples, original_order, header })
}
