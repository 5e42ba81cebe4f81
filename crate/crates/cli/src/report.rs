//! Rendering of command results as JSON, CSV or aligned text.

use std::collections::BTreeMap;
use std::fmt::Write;

use goeritz_core::io::{matrix_to_csv, MatrixJson};
use goeritz_core::reconstruct::ReconstructionResult;
use goeritz_core::{DiagramAnalysis, IntMatrix};
use num_bigint::{BigInt, BigUint};
use serde::Serialize;
use serde_json::{json, Value};

use crate::Format;

pub const SKIPPED: &str = "skipped: not prime";

pub enum Output {
    Regions(DiagramAnalysis),
    Dehn(DiagramAnalysis),
    Goeritz(DiagramAnalysis),
    Det(DiagramAnalysis),
    Reconstruct(DiagramAnalysis, &'static str, ReconstructionResult),
    Colorable(Colorability),
    Check(DiagramAnalysis, Box<Verdicts>),
}

#[derive(Debug, Serialize)]
pub struct Colorability {
    pub modulus: u64,
    pub colorable: bool,
    /// Number of Dehn colorings mod the modulus.
    pub colorings: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_dimension: Option<usize>,
    pub determinant: String,
    /// `modulus | det` for a prime modulus, `gcd(modulus, det) > 1` otherwise.
    pub determinant_agrees: bool,
}

impl Colorability {
    pub fn new(
        modulus: u64,
        colorable: bool,
        colorings: BigUint,
        det: &BigInt,
        kernel_dimension: Option<usize>,
    ) -> Self {
        use num_integer::Integer;
        let shares = det.gcd(&BigInt::from(modulus)) != BigInt::from(1);
        Self {
            modulus,
            colorable,
            colorings: colorings.to_string(),
            kernel_dimension,
            determinant: det.to_string(),
            determinant_agrees: shares == colorable,
        }
    }
}

pub enum Thm2Outcome {
    Skipped,
    Failed(String),
    Done(ReconstructionResult),
}

pub struct Verdicts {
    pub thm1: ReconstructionResult,
    pub thm2: Thm2Outcome,
    pub thm1_exact_match: bool,
    /// `None` when the diagram is not prime.
    pub thm2_match_up_to_sign: Option<bool>,
    pub right_block_zero: bool,
    pub goeritz_well_formed: bool,
    pub dehn_rows_valid: bool,
    pub reduced_determinants_agree: bool,
}

impl Verdicts {
    pub fn compute(
        a: &DiagramAnalysis,
    ) -> Result<Self, goeritz_core::reconstruct::ReconstructError> {
        let g = &a.goeritz.matrix;
        let thm1 = a.thm1()?;
        let thm2 = if !a.prime {
            Thm2Outcome::Skipped
        } else {
            match a.thm2(&BTreeMap::new()) {
                Ok(r) => Thm2Outcome::Done(r),
                Err(e) => Thm2Outcome::Failed(e.to_string()),
            }
        };
        let thm2_match_up_to_sign = match &thm2 {
            Thm2Outcome::Skipped => None,
            Thm2Outcome::Failed(_) => Some(false),
            Thm2Outcome::Done(r) => Some(r.left == *g || r.left == g.neg()),
        };
        let right_block_zero = thm1.right_block_zero()
            && match &thm2 {
                Thm2Outcome::Done(r) => r.right_block_zero(),
                _ => true,
            };
        let det = a.knot_determinant();
        Ok(Self {
            thm1_exact_match: thm1.left == *g,
            thm2_match_up_to_sign,
            right_block_zero,
            goeritz_well_formed: a.goeritz.is_well_formed() && g.det().is_ok_and(|d| d == 0.into()),
            dehn_rows_valid: a.dehn.validate().is_ok(),
            reduced_determinants_agree: a.goeritz.reduced_determinants().iter().all(|d| *d == det),
            thm1,
            thm2,
        })
    }

    pub fn all_hold(&self) -> bool {
        self.thm1_exact_match
            && self.thm2_match_up_to_sign != Some(false)
            && self.right_block_zero
            && self.goeritz_well_formed
            && self.dehn_rows_valid
            && self.reduced_determinants_agree
    }

    fn table(&self) -> Vec<(&'static str, String)> {
        vec![
            ("thm1_exact_match", self.thm1_exact_match.to_string()),
            (
                "thm2_match_up_to_sign",
                self.thm2_match_up_to_sign
                    .map_or(SKIPPED.to_string(), |b| b.to_string()),
            ),
            ("right_block_zero", self.right_block_zero.to_string()),
            ("goeritz_well_formed", self.goeritz_well_formed.to_string()),
            ("dehn_rows_valid", self.dehn_rows_valid.to_string()),
            (
                "reduced_determinants_agree",
                self.reduced_determinants_agree.to_string(),
            ),
        ]
    }

    fn to_json(&self) -> Value {
        let mut v = serde_json::Map::new();
        for (k, val) in self.table() {
            let val = match val.as_str() {
                "true" => Value::Bool(true),
                "false" => Value::Bool(false),
                _ => Value::String(val),
            };
            v.insert(k.to_string(), val);
        }
        Value::Object(v)
    }
}

fn dehn_json(a: &DiagramAnalysis) -> Value {
    let mut v = serde_json::to_value(
        MatrixJson::new(&a.dehn.matrix)
            .with_labels(a.dehn.col_region.clone(), a.dehn.row_crossing.clone()),
    )
    .expect("matrix serializes");
    v["shaded_count"] = json!(a.dehn.shaded_count);
    v
}

fn goeritz_json(a: &DiagramAnalysis) -> Value {
    let mut m = MatrixJson::new(&a.goeritz.matrix);
    m.col_region = Some(a.goeritz.shaded_labels.clone());
    let mut v = serde_json::to_value(m).expect("matrix serializes");
    v["determinant"] = json!(a.knot_determinant().to_string());
    v
}

fn reconstruction_json(method: &str, a: &DiagramAnalysis, r: &ReconstructionResult) -> Value {
    let g = &a.goeritz.matrix;
    json!({
        "method": method,
        "full": r.full,
        "left": r.left,
        "right_block_zero": r.right_block_zero(),
        "sign_fixed": r.sign_fixed,
        "exact_match": r.left == *g,
        "match_up_to_sign": r.left == *g || r.left == g.neg(),
        "row_signs": r.row_signs,
        "unnormalized": r.unnormalized,
        "assignments": r.assignments,
    })
}

fn regions_json(a: &DiagramAnalysis) -> Value {
    let faces: Vec<Value> = a
        .regions
        .regions()
        .iter()
        .enumerate()
        .map(|(i, corners)| {
            json!({
                "region": i,
                "shaded": a.checkerboard.is_shaded(i),
                "corners": corners.iter().map(|c| [c.crossing, c.position]).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "name": a.diagram.name(),
        "crossings": a.diagram.crossing_count(),
        "m": a.regions.region_count(),
        "b": a.checkerboard.shaded_count(),
        "shaded": a.checkerboard.shaded_regions(),
        "unshaded": a.checkerboard.unshaded_regions(),
        "prime": a.prime,
        "goeritz_index": a.indices.index.iter().map(|s| s.to_i64()).collect::<Vec<_>>(),
        "regions": faces,
    })
}

fn to_pretty_json(v: &Value) -> Result<String, String> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| e.to_string())
}

fn csv(m: &IntMatrix) -> Result<String, String> {
    matrix_to_csv(m).map_err(|e| e.to_string())
}

fn key_values(pairs: &[(&str, String)]) -> String {
    let mut s = String::from("key,value\n");
    for (k, v) in pairs {
        let _ = writeln!(s, "{k},{v}");
    }
    s
}

/// Right-aligned table with column and row labels and a bar after `split`
/// columns.
fn grid(m: &IntMatrix, cols: &[String], rows: &[String], split: usize) -> String {
    let cells: Vec<Vec<String>> = m
        .row_iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .chain(cols)
        .map(String::len)
        .max()
        .unwrap_or(1);
    let lead = rows.iter().map(String::len).max().unwrap_or(0);
    let line = |label: &str, items: &[String]| {
        let mut s = format!("{label:>lead$}");
        for (j, x) in items.iter().enumerate() {
            if j == split && split > 0 && split < items.len() {
                s.push_str(" |");
            }
            let _ = write!(s, " {x:>width$}");
        }
        s.push('\n');
        s
    };
    let mut out = line("", cols);
    for (label, r) in rows.iter().zip(&cells) {
        out.push_str(&line(label, r));
    }
    out
}

fn region_labels(regions: &[usize]) -> Vec<String> {
    regions.iter().map(|r| format!("r{r}")).collect()
}

fn dehn_pretty(a: &DiagramAnalysis) -> String {
    let md = &a.dehn;
    let rows: Vec<String> = md.row_crossing.iter().map(|c| format!("c{c}")).collect();
    format!(
        "Dehn matrix, {} x {}, {} shaded columns\n{}",
        md.rows(),
        md.cols(),
        md.shaded_count,
        grid(
            &md.matrix,
            &region_labels(&md.col_region),
            &rows,
            md.shaded_count
        )
    )
}

fn goeritz_pretty(a: &DiagramAnalysis) -> String {
    let labels = region_labels(&a.goeritz.shaded_labels);
    format!(
        "Goeritz matrix, {0} x {0}\n{1}determinant {2}\n",
        a.goeritz.size(),
        grid(&a.goeritz.matrix, &labels, &labels, 0),
        a.knot_determinant()
    )
}

fn reconstruction_pretty(method: &str, a: &DiagramAnalysis, r: &ReconstructionResult) -> String {
    let md = &a.dehn;
    let rows = region_labels(&md.col_region[..md.shaded_count]);
    let g = &a.goeritz.matrix;
    let mut s = format!(
        "{method} reconstruction\n{}",
        grid(
            &r.full,
            &region_labels(&md.col_region),
            &rows,
            md.shaded_count
        )
    );
    let _ = writeln!(s, "right block zero: {}", r.right_block_zero());
    let _ = writeln!(s, "equals Goeritz matrix: {}", r.left == *g);
    if !r.sign_fixed {
        let _ = writeln!(
            s,
            "equals up to sign: {}",
            r.left == *g || r.left == g.neg()
        );
    }
    s
}

fn regions_pretty(a: &DiagramAnalysis) -> String {
    let cb = &a.checkerboard;
    let join = |xs: &[usize]| {
        xs.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut s = String::new();
    if let Some(name) = a.diagram.name() {
        let _ = writeln!(s, "diagram {name}");
    }
    let _ = writeln!(s, "crossings {}", a.diagram.crossing_count());
    let _ = writeln!(s, "regions {}", a.regions.region_count());
    let _ = writeln!(
        s,
        "shaded ({}): {}",
        cb.shaded_count(),
        join(cb.shaded_regions())
    );
    let _ = writeln!(
        s,
        "unshaded ({}): {}",
        cb.region_count() - cb.shaded_count(),
        join(cb.unshaded_regions())
    );
    let _ = writeln!(s, "prime {}", a.prime);
    for (i, corners) in a.regions.regions().iter().enumerate() {
        let cs: Vec<String> = corners
            .iter()
            .map(|c| format!("{}.{}", c.crossing, c.position))
            .collect();
        let mark = if cb.is_shaded(i) { '*' } else { ' ' };
        let _ = writeln!(s, "{mark}r{i}: {}", cs.join(" "));
    }
    s
}

impl Output {
    pub fn render(&self, format: Format) -> Result<String, String> {
        match (self, format) {
            (Output::Regions(a), Format::Json) => to_pretty_json(&regions_json(a)),
            (Output::Regions(a), Format::Csv) => {
                let mut s = String::from("region,shaded,corners\n");
                for (i, corners) in a.regions.regions().iter().enumerate() {
                    let _ = writeln!(s, "{i},{},{}", a.checkerboard.is_shaded(i), corners.len());
                }
                Ok(s)
            }
            (Output::Regions(a), Format::Pretty) => Ok(regions_pretty(a)),

            (Output::Dehn(a), Format::Json) => to_pretty_json(&dehn_json(a)),
            (Output::Dehn(a), Format::Csv) => csv(&a.dehn.matrix),
            (Output::Dehn(a), Format::Pretty) => Ok(dehn_pretty(a)),

            (Output::Goeritz(a), Format::Json) => to_pretty_json(&goeritz_json(a)),
            (Output::Goeritz(a), Format::Csv) => csv(&a.goeritz.matrix),
            (Output::Goeritz(a), Format::Pretty) => Ok(goeritz_pretty(a)),

            (Output::Det(a), Format::Json) => to_pretty_json(&json!({
                "determinant": a.knot_determinant().to_string(),
                "reduced_determinants": a
                    .goeritz
                    .reduced_determinants()
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>(),
            })),
            (Output::Det(a), Format::Csv) => Ok(format!("determinant\n{}\n", a.knot_determinant())),
            (Output::Det(a), Format::Pretty) => Ok(format!("{}\n", a.knot_determinant())),

            (Output::Reconstruct(a, m, r), Format::Json) => {
                to_pretty_json(&reconstruction_json(m, a, r))
            }
            (Output::Reconstruct(_, _, r), Format::Csv) => csv(&r.full),
            (Output::Reconstruct(a, m, r), Format::Pretty) => Ok(reconstruction_pretty(m, a, r)),

            (Output::Colorable(c), Format::Json) => {
                to_pretty_json(&serde_json::to_value(c).map_err(|e| e.to_string())?)
            }
            (Output::Colorable(c), Format::Csv) => {
                let mut pairs = vec![
                    ("modulus", c.modulus.to_string()),
                    ("colorable", c.colorable.to_string()),
                    ("colorings", c.colorings.clone()),
                ];
                if let Some(k) = c.kernel_dimension {
                    pairs.push(("kernel_dimension", k.to_string()));
                }
                pairs.push(("determinant", c.determinant.clone()));
                pairs.push(("determinant_agrees", c.determinant_agrees.to_string()));
                Ok(key_values(&pairs))
            }
            (Output::Colorable(c), Format::Pretty) => {
                let mut s = format!(
                    "colorable mod {}: {}\ncolorings: {}\n",
                    c.modulus, c.colorable, c.colorings
                );
                if let Some(k) = c.kernel_dimension {
                    let _ = writeln!(s, "kernel dimension: {k}");
                }
                let _ = writeln!(
                    s,
                    "determinant: {} (agrees: {})",
                    c.determinant, c.determinant_agrees
                );
                Ok(s)
            }

            (Output::Check(a, v), Format::Json) => {
                let thm2 = match &v.thm2 {
                    Thm2Outcome::Skipped => json!(SKIPPED),
                    Thm2Outcome::Failed(e) => json!({ "error": e }),
                    Thm2Outcome::Done(r) => reconstruction_json("thm2", a, r),
                };
                to_pretty_json(&json!({
                    "name": a.diagram.name(),
                    "crossings": a.diagram.crossing_count(),
                    "prime": a.prime,
                    "determinant": a.knot_determinant().to_string(),
                    "dehn": dehn_json(a),
                    "goeritz": goeritz_json(a),
                    "thm1": reconstruction_json("thm1", a, &v.thm1),
                    "thm2": thm2,
                    "verdicts": v.to_json(),
                }))
            }
            (Output::Check(_, v), Format::Csv) => Ok(key_values(&v.table())),
            (Output::Check(a, v), Format::Pretty) => {
                let mut s = dehn_pretty(a);
                s.push('\n');
                s.push_str(&goeritz_pretty(a));
                s.push('\n');
                s.push_str(&reconstruction_pretty("thm1", a, &v.thm1));
                s.push('\n');
                match &v.thm2 {
                    Thm2Outcome::Skipped => {
                        let _ = writeln!(s, "thm2 {SKIPPED}");
                    }
                    Thm2Outcome::Failed(e) => {
                        let _ = writeln!(s, "thm2 failed: {e}");
                    }
                    Thm2Outcome::Done(r) => s.push_str(&reconstruction_pretty("thm2", a, r)),
                }
                s.push('\n');
                for (k, val) in v.table() {
                    let _ = writeln!(s, "{k}: {val}");
                }
                Ok(s)
            }
        }
    }
}
