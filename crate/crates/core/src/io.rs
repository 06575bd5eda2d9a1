//! Text and JSON formats for ideals, matrices and semigroups.
//!
//! Ideal files look like
//!
//! ```text
//! # elliptic curve
//! vars: x,y,z
//! grading: 1,1,1
//! y^2*z - x^3 + x*z^2
//! ```
//!
//! `grading:` is optional; blank lines and `#` comments are ignored.

use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::groebner::{GroebnerError, Ideal};
use crate::intlat::IntMatrix;
use crate::polycore::{parse_polynomial, Grading, PolyError, VarList};
use crate::toric::Semigroup;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn list(rest: &str) -> Vec<String> {
    rest.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

/// Parses the line-based ideal format.
pub fn parse_ideal_text(text: &str) -> Result<Ideal, IoError> {
    let mut vars: Option<VarList> = None;
    let mut grading: Option<Grading> = None;
    let mut gens = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |message: String| IoError::Syntax {
            line: line_no,
            message,
        };
        if let Some(rest) = line.strip_prefix("vars:") {
            if vars.is_some() {
                return Err(syntax("duplicate vars header".into()));
            }
            let names = list(rest);
            let mut sorted = names.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != names.len() {
                return Err(syntax("repeated variable name".into()));
            }
            vars = Some(VarList::new(names));
        } else if let Some(rest) = line.strip_prefix("grading:") {
            let w = list(rest)
                .iter()
                .map(|s| s.parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| syntax(format!("bad grading: {e}")))?;
            grading = Some(Grading::new(w)?);
        } else {
            let v = vars.as_ref().ok_or_else(|| syntax("polynomial before vars header".into()))?;
            let p = parse_polynomial(line, v).map_err(|e| syntax(e.to_string()))?;
            gens.push(p);
        }
    }
    let vars = vars.ok_or(IoError::Syntax {
        line: 0,
        message: "missing vars header".into(),
    })?;
    Ok(Ideal::new(&vars, gens)?.with_grading(grading)?)
}

/// Line-based rendering; inverse of [`parse_ideal_text`].
pub fn format_ideal_text(ideal: &Ideal) -> String {
    let mut out = format!("vars: {}\n", ideal.vars().join(","));
    if let Some(g) = ideal.grading() {
        let w: Vec<String> = g.weights().iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("grading: {}\n", w.join(",")));
    }
    for g in ideal.gens() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

#[derive(Deserialize)]
struct IdealJson {
    vars: Vec<String>,
    gens: Vec<String>,
    #[serde(default)]
    grading: Option<Vec<i64>>,
}

pub fn parse_ideal_json(text: &str) -> Result<Ideal, IoError> {
    let raw: IdealJson = serde_json::from_str(text)?;
    let vars = VarList::new(raw.vars);
    let gens = raw
        .gens
        .iter()
        .map(|g| parse_polynomial(g, &vars))
        .collect::<Result<Vec<_>, _>>()?;
    let grading = raw.grading.map(Grading::new).transpose()?;
    Ok(Ideal::new(&vars, gens)?.with_grading(grading)?)
}

/// Either format, chosen by whether the text starts with `{`.
pub fn parse_ideal(text: &str) -> Result<Ideal, IoError> {
    if text.trim_start().starts_with('{') {
        parse_ideal_json(text)
    } else {
        parse_ideal_text(text)
    }
}

pub fn read_ideal(path: &Path) -> Result<Ideal, IoError> {
    parse_ideal(&std::fs::read_to_string(path)?)
}

/// Row-major JSON array of integer arrays.
pub fn parse_matrix_json(text: &str) -> Result<IntMatrix, IoError> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_matrix(path: &Path) -> Result<IntMatrix, IoError> {
    parse_matrix_json(&std::fs::read_to_string(path)?)
}

pub fn parse_semigroup_json(text: &str) -> Result<Semigroup, IoError> {
    Ok(serde_json::from_str(text)?)
}
