//! Bundled worked examples with their expected values.
//!
//! Each fixture is an ideal file plus a JSON description of which
//! computations to run and what they must produce. Expected values carry a
//! [`Provenance`] recording where they come from.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degeneration::{
    embed_value_semigroup, family_ideal, fiber, hilbert_witness, projection_limit, valuation_pipeline, DegenOptions,
};
use crate::groebner::{graded_dimensions, ring_map_kernel, Ideal};
use crate::intlat::{homogenize_matrix, IntMatrix};
use crate::io::{parse_ideal_text, IoError};
use crate::momentmap::{image_vs_polytope, sample_moment_image};
use crate::polycore::{integer, parse_polynomial, Coeff, Convention, Exponent, Polynomial, VarList};
use crate::toric::{toric_ideal, PolytopeQ};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated in the worked example.
    Paper,
    /// Forced by definitions.
    Trivial,
    /// Computed once, cross-checked independently, then frozen.
    Derived,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Paper => "paper",
            Provenance::Trivial => "trivial",
            Provenance::Derived => "derived",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expected {
    /// Equal as ideals.
    Ideal(Vec<String>),
    /// Each polynomial lies in the ideal.
    Contains(Vec<String>),
    /// Equal as lists of polynomials, up to order and scalar factors.
    Polys(Vec<String>),
    Strings(Vec<String>),
    Bool(bool),
    Int(i64),
    AtMost(f64),
    AtLeast(f64),
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expected::Ideal(g) => write!(f, "({})", g.join(", ")),
            Expected::Contains(g) => write!(f, "contains {}", g.join(", ")),
            Expected::Polys(g) | Expected::Strings(g) => write!(f, "[{}]", g.join(", ")),
            Expected::Bool(b) => write!(f, "{b}"),
            Expected::Int(n) => write!(f, "{n}"),
            Expected::AtMost(x) => write!(f, "<= {x}"),
            Expected::AtLeast(x) => write!(f, ">= {x}"),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub key: String,
    pub expect: Expected,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MomentConfig {
    pub matrix: IntMatrix,
    pub samples: usize,
    pub seed: u64,
    pub eps: f64,
}

/// Monomial map `source_j ↦ base · coords^{value_j}` whose kernel is compared
/// with the toric ideal of the lifted value semigroup.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LiftConfig {
    pub base: String,
    pub coords: Vec<String>,
    pub source: Vec<String>,
}

#[derive(Deserialize)]
struct FixtureSpec {
    name: String,
    summary: String,
    #[serde(default)]
    matrix: Option<IntMatrix>,
    #[serde(default)]
    convention: Convention,
    #[serde(default)]
    embed: bool,
    #[serde(default)]
    degree_bound: Option<i64>,
    #[serde(default)]
    kept: Option<Vec<String>>,
    #[serde(default)]
    witness_degrees: Option<Vec<i64>>,
    #[serde(default)]
    moment: Option<MomentConfig>,
    #[serde(default)]
    lift: Option<LiftConfig>,
    checks: Vec<Check>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub summary: String,
    pub ideal: Ideal,
    /// The bundled ideal file, verbatim.
    pub ideal_text: &'static str,
    pub matrix: Option<IntMatrix>,
    pub convention: Convention,
    pub embed: bool,
    pub degree_bound: i64,
    pub kept: Option<Vec<String>>,
    pub witness_degrees: Option<Vec<i64>>,
    pub moment: Option<MomentConfig>,
    pub lift: Option<LiftConfig>,
    pub checks: Vec<Check>,
}

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("unknown fixture `{0}`")]
    Unknown(String),
    #[error("fixture {name}: {message}")]
    Malformed { name: String, message: String },
    #[error(transparent)]
    Io(#[from] IoError),
}

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        &[$(($name,
            include_str!(concat!("../fixtures/", $name, ".ideal")),
            include_str!(concat!("../fixtures/", $name, ".json")))),*]
    };
}

static BUNDLED: &[(&str, &str, &str)] = bundled!(
    "gr24_gvector",
    "gr24_plabic",
    "gr25_family",
    "elliptic",
    "twisted_cubic",
    "hyperbola",
    "elliptic_projection",
);

pub fn names() -> Vec<&'static str> {
    BUNDLED.iter().map(|b| b.0).collect()
}

pub fn load(name: &str) -> Result<Fixture, FixtureError> {
    let &(_, ideal_text, json) = BUNDLED
        .iter()
        .find(|b| b.0 == name)
        .ok_or_else(|| FixtureError::Unknown(name.to_string()))?;
    let malformed = |message: String| FixtureError::Malformed {
        name: name.to_string(),
        message,
    };
    let spec: FixtureSpec = serde_json::from_str(json).map_err(|e| malformed(e.to_string()))?;
    if spec.name != name {
        return Err(malformed(format!("declares name {}", spec.name)));
    }
    let ideal = parse_ideal_text(ideal_text)?;
    if let Some(kept) = &spec.kept {
        if let Some(bad) = kept.iter().find(|k| ideal.vars().index_of(k).is_none()) {
            return Err(malformed(format!("kept variable {bad} is not a variable of the ideal")));
        }
    }
    Ok(Fixture {
        name: spec.name,
        summary: spec.summary,
        ideal,
        ideal_text,
        matrix: spec.matrix,
        convention: spec.convention,
        embed: spec.embed,
        degree_bound: spec.degree_bound.unwrap_or(6),
        kept: spec.kept,
        witness_degrees: spec.witness_degrees,
        moment: spec.moment,
        lift: spec.lift,
        checks: spec.checks,
    })
}

pub fn load_all() -> Result<Vec<Fixture>, FixtureError> {
    names().into_iter().map(load).collect()
}

/// A computed value, compared against an [`Expected`].
#[derive(Clone, Debug)]
pub enum Actual {
    Ideal(Ideal),
    Polys(Vec<Polynomial>),
    Strings(Vec<String>),
    Bool(bool),
    Int(i64),
    Float(f64),
}

impl fmt::Display for Actual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Actual::Ideal(i) => write!(f, "{i}"),
            Actual::Polys(ps) => {
                let s: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "[{}]", s.join(", "))
            }
            Actual::Strings(s) => write!(f, "[{}]", s.join(", ")),
            Actual::Bool(b) => write!(f, "{b}"),
            Actual::Int(n) => write!(f, "{n}"),
            Actual::Float(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub fixture: String,
    pub key: String,
    pub provenance: Provenance,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

/// Every value the fixture's configuration allows computing, plus the
/// errors of sections that failed.
#[derive(Debug, Default)]
pub struct Evaluation {
    pub values: BTreeMap<String, Actual>,
    pub errors: Vec<String>,
}

impl Evaluation {
    fn put(&mut self, key: &str, v: Actual) {
        self.values.insert(key.to_string(), v);
    }

    fn section(&mut self, name: &str, r: Result<(), String>) {
        if let Err(e) = r {
            self.errors.push(format!("{name}: {e}"));
        }
    }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn evaluate(f: &Fixture) -> Evaluation {
    let mut ev = Evaluation::default();
    let opts = DegenOptions {
        convention: f.convention,
        degree_bound: f.degree_bound,
        cancel: None,
    };
    let mut weight: Option<Vec<i64>> = None;
    if let Some(m) = &f.matrix {
        let r = (|| -> Result<(), String> {
            let p = valuation_pipeline(&f.ideal, m, &opts).map_err(err)?;
            ev.put("w", Actual::Strings(p.w.iter().map(|x| x.to_string()).collect()));
            ev.put("binomial_prime", Actual::Bool(p.binomial_prime));
            let hom = homogenize_matrix(m).map_err(err)?;
            let toric = toric_ideal(&hom, f.ideal.vars()).map_err(err)?;
            ev.put("init_is_toric_of_homogenized", Actual::Bool(toric.gens() == p.init.gens()));
            ev.put("init", Actual::Ideal(p.init));
            weight = Some(p.w);
            ev.put("all_vertices", Actual::Bool(all_vertices(m)));
            Ok(())
        })();
        ev.section("pipeline", r);
    }
    if let Some(w) = &weight {
        let r = family_section(f, w, &mut ev);
        ev.section("family", r);
    }
    if f.embed {
        if let Some(m) = &f.matrix {
            let r = (|| -> Result<(), String> {
                let e = embed_value_semigroup(&f.ideal, m, &opts).map_err(err)?;
                ev.put("images", Actual::Strings(e.images.iter().map(|i| i.monomial.clone()).collect()));
                let mut sg: Vec<String> = e
                    .image_semigroup
                    .gens()
                    .iter()
                    .map(|g| format!("({})", g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                    .collect();
                sg.sort();
                ev.put("image_semigroup", Actual::Strings(sg));
                ev.put("N", Actual::Int(e.n));
                ev.put("kernel", Actual::Ideal(e.kernel_check));
                ev.put("kernel_matches", Actual::Bool(e.kernel_matches));
                ev.put(
                    "dims_equal",
                    Actual::Bool(e.dims_checked.iter().all(|d| d.dim_r == d.dim_semigroup)),
                );
                ev.put("integral", Actual::Bool(e.integral));
                ev.put("independent", Actual::Strings(e.independent_names));
                Ok(())
            })();
            ev.section("embed", r);
        }
    }
    if let (Some(lift), Some(m)) = (&f.lift, &f.matrix) {
        let r = lift_section(f, lift, m, &mut ev);
        ev.section("lift", r);
    }
    if let Some(kept) = &f.kept {
        let r = projection_section(f, kept, &mut ev);
        ev.section("projection", r);
    }
    if let Some(mc) = &f.moment {
        let r = (|| -> Result<(), String> {
            let samples = sample_moment_image(&mc.matrix, mc.samples, mc.seed).map_err(err)?;
            let poly = value_polytope(&mc.matrix);
            let cmp = image_vs_polytope(&samples, &poly, mc.eps).map_err(err)?;
            ev.put("moment_inside_fraction", Actual::Float(cmp.inside_fraction));
            ev.put("moment_coverage_gap", Actual::Float(cmp.coverage_gap));
            let first: Vec<f64> = samples.iter().map(|s| s.value[0]).collect();
            ev.put("moment_min", Actual::Float(first.iter().copied().fold(f64::INFINITY, f64::min)));
            ev.put("moment_max", Actual::Float(first.iter().copied().fold(f64::NEG_INFINITY, f64::max)));
            Ok(())
        })();
        ev.section("moment", r);
    }
    ev
}

fn family_section(f: &Fixture, w: &[i64], ev: &mut Evaluation) -> Result<(), String> {
    let fam = family_ideal(&f.ideal, w, f.convention).map_err(err)?;
    let f0 = fiber(&fam, &integer(0)).map_err(err)?;
    let f1 = fiber(&fam, &integer(1)).map_err(err)?;
    let d0 = graded_dimensions(&f0, 6).map_err(err)?;
    let d1 = graded_dimensions(&f1, 6).map_err(err)?;
    ev.put("flat", Actual::Bool(d0 == d1));
    ev.put("family_len", Actual::Int(fam.gens.len() as i64));
    ev.put("family_trinomials", Actual::Bool(fam.gens.iter().all(|g| g.len() == 3)));
    ev.put("family", Actual::Polys(fam.gens.clone()));
    ev.put("fiber0", Actual::Ideal(f0));
    ev.put("fiber1", Actual::Ideal(f1));
    Ok(())
}

fn lift_section(f: &Fixture, lift: &LiftConfig, m: &IntMatrix, ev: &mut Evaluation) -> Result<(), String> {
    let n = f.ideal.nvars();
    if lift.source.len() != n || m.rows() != lift.coords.len() {
        return Err("lift does not match the matrix shape".into());
    }
    let mut target_names = vec![lift.base.clone()];
    target_names.extend(lift.coords.iter().cloned());
    let target = Ideal::zero(&VarList::new(target_names));
    let rows = m.to_i64_rows().map_err(err)?;
    let grading = f.ideal.effective_grading();
    let mut images = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![grading.weights()[j] as u32];
        for row in &rows {
            e.push(u32::try_from(row[j]).map_err(|_| "negative value in lift".to_string())?);
        }
        images.push(Polynomial::monomial(target.vars(), integer(1), Exponent::new(e)));
    }
    let source = VarList::new(lift.source.iter().cloned());
    let kernel = ring_map_kernel(&source, &images, &target).map_err(err)?;
    let mut lifted_rows = vec![grading.weights().to_vec()];
    lifted_rows.extend(rows);
    let lifted = IntMatrix::from_rows(&lifted_rows).map_err(err)?;
    let toric = toric_ideal(&lifted, &source).map_err(err)?;
    ev.put("lifted_kernel_is_toric", Actual::Bool(toric.gens() == kernel.gens()));
    ev.put("lifted_kernel", Actual::Ideal(kernel));
    Ok(())
}

fn projection_section(f: &Fixture, kept: &[String], ev: &mut Evaluation) -> Result<(), String> {
    let vars = f.ideal.vars();
    let idx: Vec<usize> = kept.iter().filter_map(|k| vars.index_of(k)).collect();
    let r = projection_limit(&f.ideal, &idx).map_err(err)?;
    if let Some(degrees) = &f.witness_degrees {
        // the projected variety inside the full space: closure plus dropped variables
        let mut gens: Vec<Polynomial> = r.closure.gens().iter().map(|g| g.remap(vars, &sorted(&idx))).collect();
        gens.extend((0..vars.len()).filter(|v| !idx.contains(v)).map(|v| Polynomial::var(vars, v)));
        let w_ideal = Ideal::new(vars, gens).map_err(err)?;
        let rows = hilbert_witness(&r.limit, &w_ideal, degrees).map_err(err)?;
        ev.put("hilbert_differs", Actual::Bool(rows.iter().any(|(_, a, b)| a != b)));
        ev.put(
            "witness",
            Actual::Strings(rows.iter().map(|(m, a, b)| format!("{m}:{a}/{b}")).collect()),
        );
    }
    ev.put("scheme_check", Actual::Bool(r.scheme_check));
    ev.put("base_locus_empty", Actual::Bool(r.base_locus_empty));
    if let Some(s) = r.setwise_check {
        ev.put("setwise_check", Actual::Bool(s));
    }
    ev.put("limit", Actual::Ideal(r.limit));
    ev.put("cone_part", Actual::Ideal(r.cone_part));
    ev.put("closure", Actual::Ideal(r.closure));
    Ok(())
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

/// Convex hull of the columns of `m`.
pub fn value_polytope(m: &IntMatrix) -> PolytopeQ {
    let pts: Vec<Vec<Coeff>> = (0..m.cols())
        .map(|j| m.column(j).iter().map(|x| Coeff::from_integer(x.clone())).collect())
        .collect();
    PolytopeQ::hull(pts, m.rows())
}

fn all_vertices(m: &IntMatrix) -> bool {
    let p = value_polytope(m);
    (0..m.cols()).all(|j| {
        let c: Vec<Coeff> = m.column(j).iter().map(|x| Coeff::from_integer(x.clone())).collect();
        p.is_vertex(&c)
    })
}

fn compare(expect: &Expected, actual: &Actual) -> Result<bool, String> {
    let parse_all = |gens: &[String], vars: &VarList| -> Result<Vec<Polynomial>, String> {
        gens.iter().map(|g| parse_polynomial(g, vars).map_err(err)).collect()
    };
    Ok(match (expect, actual) {
        (Expected::Ideal(gens), Actual::Ideal(i)) => {
            let e = Ideal::new(i.vars(), parse_all(gens, i.vars())?).map_err(err)?;
            e.same_ideal(i).map_err(err)?
        }
        (Expected::Contains(gens), Actual::Ideal(i)) => {
            let mut ok = true;
            for p in parse_all(gens, i.vars())? {
                ok &= i.contains(&p).map_err(err)?;
            }
            ok
        }
        (Expected::Polys(gens), Actual::Polys(ps)) => {
            let Some(first) = ps.first() else {
                return Ok(gens.is_empty());
            };
            let mut e: Vec<Polynomial> = parse_all(gens, first.vars())?.iter().map(|p| p.monic()).collect();
            let mut a: Vec<Polynomial> = ps.iter().map(|p| p.monic()).collect();
            let key = |p: &Polynomial| p.to_string();
            e.sort_by_key(key);
            a.sort_by_key(key);
            e == a
        }
        (Expected::Strings(s), Actual::Strings(a)) => s == a,
        (Expected::Bool(b), Actual::Bool(a)) => b == a,
        (Expected::Int(n), Actual::Int(a)) => n == a,
        (Expected::AtMost(x), Actual::Float(a)) => a <= x,
        (Expected::AtLeast(x), Actual::Float(a)) => a >= x,
        (Expected::AtMost(x), Actual::Int(a)) => (*a as f64) <= *x,
        (Expected::AtLeast(x), Actual::Int(a)) => (*a as f64) >= *x,
        _ => return Err("expected and computed values have different kinds".into()),
    })
}

/// Runs every check of the fixture.
pub fn run(f: &Fixture) -> Vec<Outcome> {
    let ev = evaluate(f);
    f.checks
        .iter()
        .map(|c| {
            let (passed, actual) = match ev.values.get(&c.key) {
                Some(a) => match compare(&c.expect, a) {
                    Ok(p) => (p, a.to_string()),
                    Err(e) => (false, format!("{a} ({e})")),
                },
                None if ev.errors.is_empty() => (false, "not computed".to_string()),
                None => (false, format!("not computed: {}", ev.errors.join("; "))),
            };
            Outcome {
                fixture: f.name.clone(),
                key: c.key.clone(),
                provenance: c.provenance,
                passed,
                expected: c.expect.to_string(),
                actual,
            }
        })
        .collect()
}
