//! JSON problem files: schema parsing, dispatch to the computations and
//! byte-stable reports. Shared by the command line front-end and the C API.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{MixvolError, Result};
use crate::explain::{Explained, Term};
use crate::invariants::{self, PairFunction, PairPolynomial, ResEgMode};
use crate::lattice;
use crate::mixed::{self, Method, PolyhedronPair};
use crate::polyhedron::{self, Polyhedron};
use crate::rational::Rational;
use crate::resultant::{self, PointConfiguration, SupportConvention};

/// Every operation reachable from a problem file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Volume,
    MixedVolume,
    PairVolume,
    PairMixedVolume,
    Stable,
    LatticeCount,
    PrismMv,
    EvalPairFn,
    Milnor,
    GzIndex,
    DetMult,
    CollectionMult,
    ResultantalMult,
    EulerChar,
    RadialIndex,
    ChiFaces,
    ResultantSupport,
    Essential,
    Codim,
}

impl Command {
    pub const ALL: [Command; 19] = [
        Command::Volume,
        Command::MixedVolume,
        Command::PairVolume,
        Command::PairMixedVolume,
        Command::Stable,
        Command::LatticeCount,
        Command::PrismMv,
        Command::EvalPairFn,
        Command::Milnor,
        Command::GzIndex,
        Command::DetMult,
        Command::CollectionMult,
        Command::ResultantalMult,
        Command::EulerChar,
        Command::RadialIndex,
        Command::ChiFaces,
        Command::ResultantSupport,
        Command::Essential,
        Command::Codim,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Volume => "volume",
            Command::MixedVolume => "mixed-volume",
            Command::PairVolume => "pair-volume",
            Command::PairMixedVolume => "pair-mixed-volume",
            Command::Stable => "stable",
            Command::LatticeCount => "lattice-count",
            Command::PrismMv => "prism-mv",
            Command::EvalPairFn => "eval-pair-fn",
            Command::Milnor => "milnor",
            Command::GzIndex => "gz-index",
            Command::DetMult => "det-mult",
            Command::CollectionMult => "collection-mult",
            Command::ResultantalMult => "resultantal-mult",
            Command::EulerChar => "euler-char",
            Command::RadialIndex => "radial-index",
            Command::ChiFaces => "chi-faces",
            Command::ResultantSupport => "resultant-support",
            Command::Essential => "essential",
            Command::Codim => "codim",
        }
    }
}

impl FromStr for Command {
    type Err = MixvolError;
    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| MixvolError::Schema(format!("unknown command `{s}`")))
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How `prism-mv` evaluates the column prisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PrismRoute {
    /// Signed lattice point counts.
    #[default]
    Lattice,
    /// Mixed volume of the prisms themselves.
    Direct,
}

impl FromStr for PrismRoute {
    type Err = MixvolError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lattice" => Ok(PrismRoute::Lattice),
            "direct" => Ok(PrismRoute::Direct),
            other => Err(MixvolError::Schema(format!("unknown route `{other}`"))),
        }
    }
}

/// Flags that modify a command. Unused flags are ignored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub method: Method,
    pub via: PrismRoute,
    pub mode: ResEgMode,
    pub convention: SupportConvention,
    pub gamma0: Option<Vec<i64>>,
    pub explain: bool,
}

impl Options {
    /// Reads `{"method", "via", "mode", "convention", "gamma0", "explain"}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = object(v, "options")?;
        let mut out = Options::default();
        for (key, value) in obj {
            match key.as_str() {
                "method" => out.method = string(value, key)?.parse()?,
                "via" => out.via = string(value, key)?.parse()?,
                "mode" => out.mode = string(value, key)?.parse()?,
                "convention" => out.convention = string(value, key)?.parse()?,
                "gamma0" => out.gamma0 = Some(typed(value, key)?),
                "explain" => out.explain = typed(value, key)?,
                other => return schema(format!("unknown option `{other}`")),
            }
        }
        Ok(out)
    }
}

/// A parsed problem file.
#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    pub command: Command,
    pub payload: Value,
    pub options: Options,
}

impl Problem {
    /// Reads `{"command", "payload", "options"}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = object(v, "problem")?;
        if let Some(k) = obj.keys().find(|k| !matches!(k.as_str(), "command" | "payload" | "options")) {
            return schema(format!("unknown field `{k}` in problem"));
        }
        let command = string(field(obj, "command", "problem")?, "command")?.parse()?;
        let payload = field(obj, "payload", "problem")?.clone();
        let options = obj.get("options").map(Options::from_json).transpose()?.unwrap_or_default();
        Ok(Problem { command, payload, options })
    }

    pub fn run(&self) -> Result<Report> {
        run(self.command, &self.payload, &self.options)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermReport {
    pub label: String,
    pub value: Rational,
}

/// Successful result. Extra keys are emitted in sorted order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub value: Value,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermReport>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Report {
    fn rational(e: Explained, explain: bool) -> Self {
        let terms = explain.then(|| e.terms.into_iter().map(|Term { label, value }| TermReport { label, value }).collect());
        Report { value: Value::String(e.value.to_string()), extra: Map::new(), terms, warnings: e.warnings }
    }

    /// The value as a rational, when it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        self.value.as_str()?.parse().ok()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// Process exit status for an error.
pub fn exit_code(e: &MixvolError) -> i32 {
    if e.is_schema() {
        3
    } else {
        2
    }
}

/// `{"error": {"code", "message"}}`.
pub fn error_json(e: &MixvolError) -> String {
    #[derive(Serialize)]
    struct Body<'a> {
        code: &'a str,
        message: String,
    }
    #[derive(Serialize)]
    struct Wrapper<'a> {
        error: Body<'a>,
    }
    serde_json::to_string(&Wrapper { error: Body { code: e.code(), message: e.to_string() } }).expect("errors serialize")
}

/// Dispatches one command on its payload.
pub fn run(command: Command, payload: &Value, options: &Options) -> Result<Report> {
    let p = object(payload, "payload")?;
    let explain = options.explain;
    let rational = |e: Explained| Ok(Report::rational(e, explain));
    match command {
        Command::Volume => rational(Explained::bare(polyhedron::lattice_volume(&poly(field(p, "polyhedron", "payload")?)?)?)),
        Command::MixedVolume => {
            let ps = polys(field(p, "polyhedra", "payload")?)?;
            rational(Explained::bare(mixed::mixed_volume(&ps)?))
        }
        Command::PairVolume => rational(Explained::bare(mixed::pair_volume(&pair(field(p, "pair", "payload")?)?)?)),
        Command::PairMixedVolume => {
            let pairs = pairs(field(p, "pairs", "payload")?)?;
            if explain && options.method == Method::FaceFormula {
                rational(mixed::scaled_mixed_volume_pairs(&pairs, &Rational::one())?)
            } else {
                rational(Explained::bare(mixed::mixed_volume_pairs(&pairs, options.method)?))
            }
        }
        Command::Stable => {
            let raw = array(field(p, "pairs", "payload")?, "pairs")?;
            let (supports, sections): (Vec<_>, Vec<_>) = raw.iter().map(pair_components).collect::<Result<Vec<_>>>()?.into_iter().unzip();
            let gamma0 = match (&options.gamma0, p.get("gamma0")) {
                (Some(g), _) => Some(g.clone()),
                (None, Some(v)) => Some(typed::<Vec<i64>>(v, "gamma0")?),
                (None, None) => None,
            };
            rational(Explained::bare(mixed::stable_mixed_volume_pairs(&supports, &sections, gamma0.as_deref())?))
        }
        Command::LatticeCount => {
            let count = match (p.get("polyhedron"), p.get("pair")) {
                (Some(v), None) => Rational::from_int(i64::try_from(lattice::count_points(&poly(v)?)?).map_err(|_| MixvolError::Overflow)?),
                (None, Some(v)) => Rational::from_int(lattice::count_points_pair(&pair(v)?)?),
                _ => return schema("lattice-count needs exactly one of `polyhedron` and `pair`"),
            };
            rational(Explained::bare(count))
        }
        Command::PrismMv => prism_mv(field(p, "grid", "payload")?, options.via, explain),
        Command::EvalPairFn => {
            let f = pair_function(field(p, "function", "payload")?)?;
            let bindings = pairs(field(p, "bindings", "payload")?)?;
            let n = match p.get("dim") {
                Some(v) => typed(v, "dim")?,
                None => bindings.first().map_or(0, |b| b.dim()),
            };
            let terms = invariants::eval_pair_terms(&f, &bindings, n)?;
            let value = terms.iter().map(|t| &t.coefficient * &t.mixed_volume).sum();
            let terms = terms
                .into_iter()
                .map(|t| Term::new(format!("monomial {:?} coefficient {}", t.exponents, t.coefficient), &t.coefficient * &t.mixed_volume))
                .collect();
            rational(Explained::new(value, terms))
        }
        Command::Milnor => rational(invariants::milnor_number_explained(&polys(field(p, "equations", "payload")?)?)?),
        Command::GzIndex => {
            let eqs = polys(field(p, "equations", "payload")?)?;
            let coeffs = polys(field(p, "coefficients", "payload")?)?;
            rational(invariants::gz_index_explained(&eqs, &coeffs, options.mode)?)
        }
        Command::DetMult => {
            let rows = typed(field(p, "rows", "payload")?, "rows")?;
            rational(invariants::det_multiplicity_explained(rows, &polys(field(p, "columns", "payload")?)?)?)
        }
        Command::CollectionMult => {
            let blocks = array(field(p, "matrices", "payload")?, "matrices")?
                .iter()
                .map(|m| array(m, "matrix")?.iter().map(polys).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            rational(invariants::collection_multiplicity_explained(&blocks)?)
        }
        Command::ResultantalMult => {
            let cs = configurations(p)?;
            let components = array(field(p, "components", "payload")?, "components")?.iter().map(polys).collect::<Result<Vec<_>>>()?;
            rational(invariants::resultantal_multiplicity_explained(&cs, &components)?)
        }
        Command::EulerChar | Command::RadialIndex => {
            let rows = typed(field(p, "rows", "payload")?, "rows")?;
            let f = poly(field(p, "function", "payload")?)?;
            let cols = polys(field(p, "columns", "payload")?)?;
            let e = invariants::euler_char_det_explained(rows, &f, &cols)?;
            if command == Command::EulerChar {
                rational(e)
            } else {
                rational(Explained::new(Rational::one() - e.value, e.terms))
            }
        }
        Command::ChiFaces => {
            let supports = polys(field(p, "supports", "payload")?)?;
            let sections = polys(field(p, "sections", "payload")?)?;
            rational(invariants::chi_compatible_faces_explained(&supports, &sections)?)
        }
        Command::ResultantSupport => {
            let cs = configurations(p)?;
            let gamma: Vec<Vec<i64>> = typed(field(p, "gamma", "payload")?, "gamma")?;
            rational(resultant::resultant_support_explained(&cs, &gamma, options.convention)?)
        }
        Command::Essential => {
            let cs = configurations(p)?;
            let subset = resultant::essential_subcollection(&cs)?;
            let mut extra = Map::new();
            extra.insert("codim".into(), Value::from(resultant::resultantal_codim(&cs)?));
            Ok(Report {
                value: Value::from(subset.into_iter().map(|i| i + 1).collect::<Vec<_>>()),
                extra,
                terms: None,
                warnings: Vec::new(),
            })
        }
        Command::Codim => {
            let cs = configurations(p)?;
            let mut extra = Map::new();
            extra.insert("resultantal".into(), Value::from(resultant::resultantal_codim(&cs)?));
            Ok(Report { value: Value::from(resultant::codim_config(&cs)?), extra, terms: None, warnings: Vec::new() })
        }
    }
}

fn prism_mv(grid: &Value, via: PrismRoute, explain: bool) -> Result<Report> {
    let rows = array(grid, "grid")?;
    let entries: Vec<Vec<&Value>> = rows.iter().map(|r| Ok(array(r, "grid row")?.iter().collect())).collect::<Result<_>>()?;
    let filled: Vec<&Value> = entries.iter().flatten().copied().filter(|v| !v.is_null()).collect();
    let pair_grid = filled.iter().all(|v| v.get("A").is_some());
    if !pair_grid && filled.iter().any(|v| v.get("A").is_some()) {
        return schema("grid entries must be all pairs or all polyhedra");
    }
    let report = |e: Explained| Ok(Report::rational(e, explain));
    if pair_grid {
        let grid: Vec<Vec<Option<PolyhedronPair>>> =
            entries.iter().map(|r| r.iter().map(|v| (!v.is_null()).then(|| pair(v)).transpose()).collect()).collect::<Result<_>>()?;
        match via {
            PrismRoute::Lattice => {
                let terms = lattice::prism_lattice_terms(&grid)?;
                let value = lattice::prism_mixed_volume_lattice(&grid)?;
                let terms = terms
                    .into_iter()
                    .map(|t| {
                        let cols: Vec<usize> = t.columns.iter().map(|j| j + 1).collect();
                        Term::new(format!("columns {cols:?} rows {:?}", t.row_sizes), t.signed_count)
                    })
                    .collect();
                report(Explained::new(value, terms))
            }
            PrismRoute::Direct => {
                let columns = transpose(&grid)?;
                let prisms: Vec<PolyhedronPair> = columns
                    .iter()
                    .map(|col| {
                        let a: Vec<Polyhedron> = col.iter().map(|e| e.as_ref().map_or_else(|| empty_like(&grid), |p| p.first().clone())).collect();
                        let b: Vec<Polyhedron> = col.iter().map(|e| e.as_ref().map_or_else(|| empty_like(&grid), |p| p.second().clone())).collect();
                        PolyhedronPair::new(mixed::prism(&a)?, mixed::prism(&b)?)
                    })
                    .collect::<Result<_>>()?;
                report(mixed::scaled_mixed_volume_pairs(&prisms, &Rational::one())?)
            }
        }
    } else {
        let grid: Vec<Vec<Option<Polyhedron>>> =
            entries.iter().map(|r| r.iter().map(|v| (!v.is_null()).then(|| poly(v)).transpose()).collect()).collect::<Result<_>>()?;
        match via {
            PrismRoute::Lattice => report(Explained::bare(lattice::prism_mixed_volume_lattice_polytopes(&grid)?)),
            PrismRoute::Direct => {
                let dim = grid.iter().flatten().flatten().next().map_or(0, |p| p.dim());
                let columns = transpose(&grid)?;
                let prisms: Vec<Polyhedron> = columns
                    .iter()
                    .map(|col| mixed::prism(&col.iter().map(|e| e.clone().unwrap_or_else(|| Polyhedron::empty(dim))).collect::<Vec<_>>()))
                    .collect::<Result<_>>()?;
                report(Explained::bare(mixed::mixed_volume(&prisms)?))
            }
        }
    }
}

fn empty_like(grid: &[Vec<Option<PolyhedronPair>>]) -> Polyhedron {
    Polyhedron::empty(grid.iter().flatten().flatten().next().map_or(0, |p| p.dim()))
}

fn transpose<T: Clone>(grid: &[Vec<Option<T>>]) -> Result<Vec<Vec<Option<T>>>> {
    let k = grid.first().map_or(0, |r| r.len());
    if grid.is_empty() || k == 0 || grid.iter().any(|r| r.len() != k) {
        return Err(MixvolError::Precondition("the grid must be a nonempty rectangle".into()));
    }
    Ok((0..k).map(|j| grid.iter().map(|r| r[j].clone()).collect()).collect())
}

// ---- schema helpers ----

fn schema<T>(msg: impl Into<String>) -> Result<T> {
    Err(MixvolError::Schema(msg.into()))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| MixvolError::Schema(format!("{what} must be a JSON object")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| MixvolError::Schema(format!("`{what}` must be an array")))
}

fn string<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| MixvolError::Schema(format!("`{what}` must be a string")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| MixvolError::Schema(format!("missing field `{key}` in {what}")))
}

fn typed<T: serde::de::DeserializeOwned>(v: &Value, what: &str) -> Result<T> {
    T::deserialize(v).map_err(|e| MixvolError::Schema(format!("`{what}`: {e}")))
}

fn only_keys(obj: &Map<String, Value>, allowed: &[&str], what: &str) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => schema(format!("unknown field `{k}` in {what}")),
        None => Ok(()),
    }
}

/// A polyhedron literal or the `newton` shorthand.
pub fn poly(v: &Value) -> Result<Polyhedron> {
    let obj = object(v, "polyhedron")?;
    if let Some(n) = obj.get("newton") {
        only_keys(obj, &["newton"], "polyhedron")?;
        let inner = object(n, "newton")?;
        only_keys(inner, &["dim", "exponents"], "newton")?;
        let exps: Vec<Vec<i64>> = typed(field(inner, "exponents", "newton")?, "exponents")?;
        let dim = match inner.get("dim") {
            Some(d) => typed(d, "dim")?,
            None => exps.first().map(|e| e.len()).ok_or_else(|| MixvolError::Schema("`newton` needs `dim` or exponents".into()))?,
        };
        if let Some(e) = exps.iter().find(|e| e.len() != dim) {
            return Err(MixvolError::DimensionMismatch { expected: dim, found: e.len() });
        }
        return Polyhedron::newton(dim, &exps);
    }
    only_keys(obj, &["dim", "vertices", "rays"], "polyhedron")?;
    let dim: usize = typed(field(obj, "dim", "polyhedron")?, "dim")?;
    let vertices: Vec<Vec<Rational>> = typed(field(obj, "vertices", "polyhedron")?, "vertices")?;
    let rays: Vec<Vec<i64>> = obj.get("rays").map(|r| typed(r, "rays")).transpose()?.unwrap_or_default();
    if let Some(bad) = vertices.iter().map(Vec::len).chain(rays.iter().map(Vec::len)).find(|&l| l != dim) {
        return Err(MixvolError::DimensionMismatch { expected: dim, found: bad });
    }
    Polyhedron::new(dim, vertices, rays)
}

fn polys(v: &Value) -> Result<Vec<Polyhedron>> {
    array(v, "polyhedra")?.iter().map(poly).collect()
}

fn pair_components(v: &Value) -> Result<(Polyhedron, Polyhedron)> {
    let obj = object(v, "pair")?;
    only_keys(obj, &["A", "B"], "pair")?;
    Ok((poly(field(obj, "A", "pair")?)?, poly(field(obj, "B", "pair")?)?))
}

/// A pair literal `{"A": .., "B": ..}`.
pub fn pair(v: &Value) -> Result<PolyhedronPair> {
    let (a, b) = pair_components(v)?;
    PolyhedronPair::new(a, b)
}

fn pairs(v: &Value) -> Result<Vec<PolyhedronPair>> {
    array(v, "pairs")?.iter().map(pair).collect()
}

/// `{"N": n, "sigmas": [[[int]]]}`, read from the payload itself.
fn configurations(p: &Map<String, Value>) -> Result<Vec<PointConfiguration>> {
    let n: usize = typed(field(p, "N", "payload")?, "N")?;
    let sigmas: Vec<Vec<Vec<i64>>> = typed(field(p, "sigmas", "payload")?, "sigmas")?;
    if let Some(bad) = sigmas.iter().flatten().map(Vec::len).find(|&l| l != n) {
        return Err(MixvolError::DimensionMismatch { expected: n, found: bad });
    }
    sigmas.into_iter().map(PointConfiguration::new).collect()
}

/// `{"vars": k, "numerator": [[exponents, coefficient]], "denominator": [..]}`.
fn pair_function(v: &Value) -> Result<PairFunction> {
    let obj = object(v, "function")?;
    only_keys(obj, &["vars", "numerator", "denominator"], "function")?;
    let vars: usize = typed(field(obj, "vars", "function")?, "vars")?;
    let polynomial = |v: &Value, what: &str| -> Result<PairPolynomial> {
        let terms: Vec<(Vec<u32>, Rational)> = typed(v, what)?;
        if let Some((e, _)) = terms.iter().find(|(e, _)| e.len() != vars) {
            return Err(MixvolError::DimensionMismatch { expected: vars, found: e.len() });
        }
        PairPolynomial::from_terms(vars, terms)
    };
    Ok(PairFunction {
        numerator: polynomial(field(obj, "numerator", "function")?, "numerator")?,
        denominator: obj.get("denominator").map(|d| polynomial(d, "denominator")).transpose()?,
    })
}
