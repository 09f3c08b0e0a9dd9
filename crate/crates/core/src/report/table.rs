//! Flat tables of cusps, constant terms and cuspidal orders.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::SCHEMA_VERSION;
use crate::arith::{euler_phi, QuadExt};
use crate::cusps::{enumerate_cusps, rep_to_cusp, LevelShape};
use crate::eisenstein::{constant_term_table, cuspidal_order, enumerate_h, order_nml, EisIndex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    Cusps,
    Constants,
    Orders,
}

impl FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cusps" => Ok(Self::Cusps),
            "constants" => Ok(Self::Constants),
            "orders" => Ok(Self::Orders),
            _ => Err(Error::Unsupported(format!("unknown table kind '{s}'"))),
        }
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Cusps => "cusps",
            Self::Constants => "constants",
            Self::Orders => "orders",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            _ => Err(Error::Unsupported(format!("unknown format '{s}'"))),
        }
    }
}

/// Rows are arrays in `columns` order. Exact integers that can grow without
/// bound (QuadExt parts, orders) are decimal strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub schema_version: u32,
    pub kind: TableKind,
    pub shape: LevelShape,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Lossy view: list cells are joined with `;`.
    pub fn to_csv(&self) -> Result<String> {
        csv_document(&self.columns, &self.rows)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

/// CSV with a header row; strings are written bare, lists joined with `;`.
pub fn csv_document(columns: &[String], rows: &[Vec<Value>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(columns).map_err(csv_err)?;
    for row in rows {
        w.write_record(row.iter().map(cell)).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(cell).collect::<Vec<_>>().join(";"),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// `[rat_num, rat_den, irr_num, irr_den, disc]` as JSON cells.
pub fn quad_cells(q: &QuadExt) -> Vec<Value> {
    let mut out: Vec<Value> = q.parts().into_iter().map(Value::String).collect();
    out.push(json!(q.disc));
    out
}

const QUAD_COLUMNS: [&str; 5] = ["rat_num", "rat_den", "irr_num", "irr_den", "disc"];

fn columns(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Builds a table. `index` restricts the constants table to one `(M, L, ψ)`;
/// without it every quadratic index of the shape is listed.
pub fn emit_table(kind: TableKind, shape: &LevelShape, index: Option<&EisIndex>) -> Result<Table> {
    if let Some(i) = index {
        if i.shape != *shape {
            return Err(Error::Unsupported(format!("index {i} does not live on {shape}")));
        }
    }
    let (cols, rows) = match kind {
        TableKind::Cusps => {
            let rows = enumerate_cusps(shape)
                .into_iter()
                .map(|rep| {
                    let c = rep_to_cusp(&rep, shape);
                    vec![
                        json!(rep.r),
                        json!(rep.s),
                        json!(rep.t),
                        json!(rep.x),
                        json!(c.a),
                        json!(c.c),
                        json!(rep.width()),
                        json!(euler_phi(rep.t)),
                    ]
                })
                .collect();
            let cols = ["r", "s", "t", "x", "numerator", "denominator", "width", "orbit_size"];
            (columns(&cols), rows)
        }
        TableKind::Constants => {
            let indices = match index {
                Some(i) => vec![*i],
                None => enumerate_h(shape),
            };
            let mut rows = Vec::new();
            for i in indices {
                for (rep, v) in constant_term_table(&i)?.entries {
                    let mut row = vec![
                        json!(i.m),
                        json!(i.l),
                        json!(i.f()),
                        json!(rep.r),
                        json!(rep.s),
                        json!(rep.t),
                        json!(rep.x),
                        json!(rep.width()),
                    ];
                    row.extend(quad_cells(&v));
                    rows.push(row);
                }
            }
            let mut cols = columns(&["M", "L", "f", "r", "s", "t", "x", "width"]);
            cols.extend(columns(&QUAD_COLUMNS));
            (cols, rows)
        }
        TableKind::Orders => {
            let mut rows = Vec::new();
            for i in enumerate_h(shape) {
                let o = cuspidal_order(&i)?;
                let nml = if i.psi.is_trivial() {
                    order_nml(i.m, i.l, shape).ok().map(|n| n.to_string())
                } else {
                    None
                };
                rows.push(vec![
                    json!(i.m),
                    json!(i.l),
                    json!(i.f()),
                    json!(o.order.to_string()),
                    json!(o.inverted),
                    json!(nml),
                ]);
            }
            (columns(&["M", "L", "f", "order", "inverted", "n_ml"]), rows)
        }
    };
    Ok(Table {
        schema_version: SCHEMA_VERSION,
        kind,
        shape: *shape,
        columns: cols,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::quad_char;

    fn shape(d: u64, c: u64) -> LevelShape {
        LevelShape::new(d, c).unwrap()
    }

    #[test]
    fn cusps_at_six() {
        let t = emit_table(TableKind::Cusps, &shape(6, 1), None).unwrap();
        assert_eq!(t.rows.len(), 4);
        let csv = t.to_csv().unwrap();
        assert_eq!(csv.lines().count(), 5);
        assert!(csv.starts_with("r,s,t,x,numerator,denominator,width,orbit_size\n"));
        assert!(t.rows.iter().all(|r| r[7] == json!(1)));
        // level 9: the two cusps with t = 3 form one orbit of size 2
        let t = emit_table(TableKind::Cusps, &shape(3, 3), None).unwrap();
        let sizes: Vec<_> = t.rows.iter().map(|r| r[7].as_u64().unwrap()).collect();
        assert_eq!(sizes.iter().filter(|&&n| n == 2).count(), 2);
        assert_eq!(sizes.len(), 4);
    }

    #[test]
    fn orders_at_eleven() {
        let t = emit_table(TableKind::Orders, &shape(11, 1), None).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0][3], json!("5"));
        assert_eq!(t.rows[0][4], json!([2]));
        assert!(t.to_csv().unwrap().contains(",5,2,5"));
    }

    #[test]
    fn constants_galois_pair() {
        let sh = shape(3, 3);
        let i = EisIndex::new(sh, 3, 3, quad_char(3).unwrap()).unwrap();
        let t = emit_table(TableKind::Constants, &sh, Some(&i)).unwrap();
        assert_eq!(t.rows.len(), 4);
        assert_eq!(t.columns.len(), 13);
        // the two cusps of width 1 over t = 3 carry opposite multiples of g
        let irr = |r: &Vec<Value>| (r[10].clone(), r[11].clone());
        let (n2, d2) = irr(&t.rows[2]);
        let (n3, d3) = irr(&t.rows[3]);
        assert_eq!(d2, d3);
        assert_ne!(n2, json!("0"));
        let num = |v: &Value| v.as_str().unwrap().parse::<i64>().unwrap();
        assert_eq!(num(&n2), -num(&n3));
        let back: Table = serde_json::from_str(&t.to_json().unwrap()).unwrap();
        assert_eq!(back, t);
        let other = EisIndex::new(shape(6, 1), 6, 1, quad_char(1).unwrap()).unwrap();
        assert!(emit_table(TableKind::Constants, &sh, Some(&other)).is_err());
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("orders".parse::<TableKind>().unwrap(), TableKind::Orders);
        assert!("eigen".parse::<TableKind>().is_err());
        assert!("xml".parse::<Format>().is_err());
    }
}
