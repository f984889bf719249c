//! Tables of named real and complex columns, written as CSV or JSON.
//!
//! Floats are printed in scientific notation with 17 significant digits, so
//! every binary64 value round-trips and output is byte-stable across runs.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde_json::{Map, Number, Value};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (expected csv or json)")),
        }
    }
}

/// `{:.16e}`: 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Real(f64),
    Complex(Complex64),
}

impl Cell {
    fn is_finite(&self) -> bool {
        match self {
            Cell::Real(x) => x.is_finite(),
            Cell::Complex(z) => z.re.is_finite() && z.im.is_finite(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub n: usize,
    pub values: Vec<Cell>,
}

/// Column names plus rows; `params` is echoed into JSON output.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    params: Vec<(String, f64)>,
    columns: Vec<String>,
    rows: Vec<TableRow>,
}

impl Table {
    pub fn new(params: Vec<(String, f64)>, columns: Vec<String>) -> Self {
        Table {
            params,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: TableRow) -> CliResult<()> {
        if row.values.len() != self.columns.len() {
            return Err(CliError::Usage(format!(
                "row {} has {} values for {} columns",
                row.n,
                row.values.len(),
                self.columns.len()
            )));
        }
        if !row.values.iter().all(Cell::is_finite) {
            return Err(jacobi_flow::Error::NonFinite("table entry").into());
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn rows(&self) -> &[TableRow] {
        &self.rows
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    /// Header row then one line per row; complex columns split into
    /// `name_re,name_im`. Lines end in `\n`.
    pub fn to_csv(&self) -> String {
        let mut header = vec!["n".to_string()];
        let first = self.rows.first();
        for (i, name) in self.columns.iter().enumerate() {
            match first.map(|r| r.values[i]) {
                Some(Cell::Complex(_)) => {
                    header.push(format!("{name}_re"));
                    header.push(format!("{name}_im"));
                }
                _ => header.push(name.clone()),
            }
        }
        let mut out = header.join(",");
        out.push('\n');
        for row in &self.rows {
            let mut fields = vec![row.n.to_string()];
            for cell in &row.values {
                match cell {
                    Cell::Real(x) => fields.push(fmt_float(*x)),
                    Cell::Complex(z) => {
                        fields.push(fmt_float(z.re));
                        fields.push(fmt_float(z.im));
                    }
                }
            }
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    /// `{"params":{..},"rows":[{"n":..,<column>:..}],"version":1}`; complex
    /// entries become `{"re":..,"im":..}`.
    pub fn to_json(&self) -> String {
        let mut params = Map::new();
        for (k, v) in &self.params {
            params.insert(k.clone(), float_value(*v));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                obj.insert("n".into(), Value::from(row.n));
                for (name, cell) in self.columns.iter().zip(&row.values) {
                    let v = match cell {
                        Cell::Real(x) => float_value(*x),
                        Cell::Complex(z) => {
                            let mut c = Map::new();
                            c.insert("re".into(), float_value(z.re));
                            c.insert("im".into(), float_value(z.im));
                            Value::Object(c)
                        }
                    };
                    obj.insert(name.clone(), v);
                }
                Value::Object(obj)
            })
            .collect();
        let mut root = Map::new();
        root.insert("params".into(), Value::Object(params));
        root.insert("rows".into(), Value::Array(rows));
        root.insert("version".into(), Value::from(1));
        let mut out =
            serde_json::to_string_pretty(&Value::Object(root)).expect("JSON values are plain data");
        out.push('\n');
        out
    }
}

// arbitrary_precision keeps the formatted digits verbatim
fn float_value(x: f64) -> Value {
    let n: Number = fmt_float(x)
        .parse()
        .expect("formatted float is a JSON number");
    Value::Number(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(
            vec![("kappa".into(), 0.5), ("t".into(), 1.0)],
            vec!["x".into(), "z".into()],
        );
        t.push(TableRow {
            n: 1,
            values: vec![Cell::Real(0.1), Cell::Complex(Complex64::new(-2.0, 0.25))],
        })
        .unwrap();
        t
    }

    #[test]
    fn float_format_round_trips() {
        for x in [0.1, -1.0 / 3.0, 6.02e23, 5e-324, 0.0] {
            let s = fmt_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_float(0.1), "1.0000000000000001e-1");
    }

    #[test]
    fn csv_layout() {
        assert_eq!(
            sample().to_csv(),
            "n,x,z_re,z_im\n1,1.0000000000000001e-1,-2.0000000000000000e0,2.5000000000000000e-1\n"
        );
    }

    #[test]
    fn json_keeps_digits_and_key_order() {
        let s = sample().to_json();
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["version"], 1);
        assert!(s.contains("\"x\": 1.0000000000000001e-1"));
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["params", "rows", "version"]);
    }

    #[test]
    fn rejects_non_finite_and_ragged_rows() {
        let mut t = Table::new(vec![], vec!["x".into()]);
        assert!(t
            .push(TableRow {
                n: 1,
                values: vec![Cell::Real(f64::NAN)]
            })
            .is_err());
        assert!(t
            .push(TableRow {
                n: 1,
                values: vec![]
            })
            .is_err());
    }
}
