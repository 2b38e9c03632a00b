use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::json::matrix_to_strings;
use crate::matrix::{Int, IntMatrix};
use crate::normal_form::smith_normal_form;

fn parse_entry(v: &serde_json::Value, i: usize, j: usize) -> Result<Int> {
    let text = match v {
        serde_json::Value::Number(n) => n.to_string(),
        serde_json::Value::String(s) => s.trim().to_string(),
        _ => return Err(Error::Parse(format!("entry ({i}, {j}) is not an integer"))),
    };
    text.parse::<Int>().map_err(|_| Error::Parse(format!("entry ({i}, {j}) = {text:?} is not an integer")))
}

fn from_rows(rows: Vec<Vec<Int>>) -> Result<IntMatrix> {
    let cols = rows.first().map_or(0, |r| r.len());
    if let Some(i) = rows.iter().position(|r| r.len() != cols) {
        return Err(Error::Parse(format!("row {i} has {} entries, expected {cols}", rows[i].len())));
    }
    Ok(IntMatrix::from_rows(cols, rows))
}

/// A JSON array of rows (numbers or decimal strings), or CSV with one row per
/// line. Blank input is the empty matrix.
pub fn parse_matrix(src: &str) -> Result<IntMatrix> {
    let body = src.trim();
    if body.is_empty() {
        return Ok(IntMatrix::zeros(0, 0));
    }
    if body.starts_with('[') {
        let v: serde_json::Value = serde_json::from_str(body).map_err(|e| Error::Parse(e.to_string()))?;
        let rows = v.as_array().ok_or_else(|| Error::Parse("expected an array of rows".into()))?;
        let rows = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let r = r.as_array().ok_or_else(|| Error::Parse(format!("row {i} is not an array")))?;
                r.iter().enumerate().map(|(j, x)| parse_entry(x, i, j)).collect()
            })
            .collect::<Result<Vec<Vec<Int>>>>()?;
        return from_rows(rows);
    }
    let rows = body
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.split(',')
                .enumerate()
                .map(|(j, x)| {
                    x.trim().parse::<Int>().map_err(|_| Error::Parse(format!("line {}, field {}: {:?}", i + 1, j + 1, x.trim())))
                })
                .collect()
        })
        .collect::<Result<Vec<Vec<Int>>>>()?;
    from_rows(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnfJson {
    pub u: Vec<Vec<String>>,
    pub s: Vec<Vec<String>>,
    pub v: Vec<Vec<String>>,
    pub invariant_factors: Vec<String>,
}

/// `u m v = s`; `None` for the empty matrix.
pub fn snf_result(m: &IntMatrix) -> Option<SnfJson> {
    if m.rows() == 0 || m.cols() == 0 {
        return None;
    }
    let (u, s, v) = smith_normal_form(m);
    let factors = (0..s.rows().min(s.cols()))
        .map(|i| s[(i, i)].abs())
        .filter(|d| !d.is_zero())
        .map(|d| d.to_string())
        .collect();
    Some(SnfJson { u: matrix_to_strings(&u), s: matrix_to_strings(&s), v: matrix_to_strings(&v), invariant_factors: factors })
}

fn block(out: &mut String, name: &str, rows: &[Vec<String>]) {
    let width = rows.iter().flatten().map(|x| x.len()).max().unwrap_or(1);
    let _ = writeln!(out, "{name} =");
    for r in rows {
        let cells: Vec<String> = r.iter().map(|x| format!("{x:>width$}")).collect();
        let _ = writeln!(out, "  [{}]", cells.join(" "));
    }
}

pub fn render_snf_text(r: &SnfJson) -> String {
    let mut out = String::new();
    block(&mut out, "U", &r.u);
    block(&mut out, "S", &r.s);
    block(&mut out, "V", &r.v);
    let _ = writeln!(out, "invariant factors: {}", r.invariant_factors.join(" "));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_agree() {
        let a = parse_matrix("[[2, 4], [\"6\", 8]]").unwrap();
        let b = parse_matrix("2,4\n6, 8\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(snf_result(&a).unwrap().invariant_factors, vec!["2", "4"]);
    }

    #[test]
    fn identity_and_empty() {
        let r = snf_result(&parse_matrix("[[1,0],[0,1]]").unwrap()).unwrap();
        assert_eq!(r.s, vec![vec!["1", "0"], vec!["0", "1"]]);
        assert!(snf_result(&parse_matrix("[]").unwrap()).is_none());
        assert!(snf_result(&parse_matrix("").unwrap()).is_none());
    }

    #[test]
    fn parse_errors() {
        assert!(parse_matrix("[[1, 2], [3]]").is_err());
        assert!(parse_matrix("1,x").is_err());
        assert!(parse_matrix("[[1.5]]").is_err());
    }
}
