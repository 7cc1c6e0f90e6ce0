//! Scenario files: schema, validation and resolution into computable inputs.

use std::collections::BTreeSet;
use std::fmt;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use eala::autoroot::{quantum_sl_roots, reversal_flip, RootAutomorphism, Verdict};
use eala::coords::QuantumTorus;
use eala::ears::{RootDatum, RootDatumJson};
use eala::exactnum::json::{from_json_vec, JsonRational};
use eala::exactnum::RatMatrix;
use eala::gcm::{affine_catalog, affine_root_datum, DiagramAutomorphism, Gcm};
use eala::liealg::{quantum_sl_build, sl_loop, toroidal_build, AnyScenario, AutomorphismSpec};
use eala::rootsys::TypeLabel;

/// An input problem with a JSON-pointer-like location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

fn input_err(path: impl Into<String>, message: impl fmt::Display) -> InputError {
    InputError {
        path: path.into(),
        message: message.to_string(),
    }
}

fn decode<T: DeserializeOwned>(value: &Value, prefix: &str) -> Result<T, InputError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let inner = e.path().to_string();
        let path = match (prefix.is_empty(), inner == ".") {
            (_, true) => prefix.to_string(),
            (true, false) => inner,
            (false, false) => format!("{prefix}.{inner}"),
        };
        input_err(path, e.into_inner())
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    Structure,
    EaAxioms,
    EquivalenceConditions,
    CoreIdentity,
    Tameness,
    RootAgreement,
    Affinization,
    ProjectedNonisotropic,
    ConditionIv,
    PrimePeriod,
    NondegeneracyTransfer,
    Ea5b,
    DiagramVerdict,
    Expect,
}

impl CheckName {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Structure => "structure",
            CheckName::EaAxioms => "ea_axioms",
            CheckName::EquivalenceConditions => "equivalence_conditions",
            CheckName::CoreIdentity => "core_identity",
            CheckName::Tameness => "tameness",
            CheckName::RootAgreement => "root_agreement",
            CheckName::Affinization => "affinization",
            CheckName::ProjectedNonisotropic => "projected_nonisotropic",
            CheckName::ConditionIv => "condition_iv",
            CheckName::PrimePeriod => "prime_period",
            CheckName::NondegeneracyTransfer => "nondegeneracy_transfer",
            CheckName::Ea5b => "ea5b",
            CheckName::DiagramVerdict => "diagram_verdict",
            CheckName::Expect => "expect",
        }
    }

    /// Checks that need the algebra itself rather than its roots.
    pub fn needs_algebra(self) -> bool {
        matches!(
            self,
            CheckName::Structure
                | CheckName::EaAxioms
                | CheckName::EquivalenceConditions
                | CheckName::CoreIdentity
                | CheckName::Tameness
                | CheckName::RootAgreement
        )
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusSpec {
    pub nu: usize,
    /// Sign matrix `q_ij = ±1`; omitted means commutative.
    #[serde(default)]
    pub q: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraSpec {
    RootDatum {
        datum: RootDatumJson,
    },
    AffineGcm {
        #[serde(default)]
        name: Option<String>,
        #[serde(default)]
        gcm: Option<Vec<Vec<i64>>>,
        #[serde(default)]
        bound: Option<i64>,
    },
    Toroidal {
        n: usize,
        nu: usize,
    },
    QuantumSl {
        ell: usize,
        torus: TorusSpec,
    },
    #[serde(alias = "sl")]
    SlLoop {
        n: usize,
    },
}

impl AlgebraSpec {
    pub fn source(&self) -> &'static str {
        match self {
            AlgebraSpec::RootDatum { .. } => "root_datum",
            AlgebraSpec::AffineGcm { .. } => "affine_gcm",
            AlgebraSpec::Toroidal { .. } => "toroidal",
            AlgebraSpec::QuantumSl { .. } => "quantum_sl",
            AlgebraSpec::SlLoop { .. } => "sl_loop",
        }
    }

    fn has_algebra(&self) -> bool {
        matches!(
            self,
            AlgebraSpec::Toroidal { .. }
                | AlgebraSpec::QuantumSl { .. }
                | AlgebraSpec::SlLoop { .. }
        )
    }
}

/// Expected values, compared by the `expect` check.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    #[serde(default)]
    pub verdict: Option<Verdict>,
    #[serde(default, rename = "type")]
    pub type_label: Option<TypeLabel>,
    #[serde(default)]
    pub nullity: Option<usize>,
    #[serde(default)]
    pub tame: Option<bool>,
    #[serde(default)]
    pub ea_axioms: Option<bool>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub id: String,
    pub algebra: AlgebraSpec,
    #[serde(default)]
    pub automorphism: Option<Value>,
    #[serde(default)]
    pub window: Option<i64>,
    pub checks: Vec<CheckName>,
    #[serde(default)]
    pub expect: Option<Expectation>,
}

pub const DEFAULT_WINDOW: i64 = 2;

/// Parses a file holding one scenario or an array of them.
pub fn parse_file(text: &str) -> Result<Vec<(String, Scenario)>, InputError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| input_err("", format!("invalid JSON: {e}")))?;
    let items: Vec<(String, &Value)> = match &value {
        Value::Array(xs) => xs
            .iter()
            .enumerate()
            .map(|(i, x)| (format!("[{i}]"), x))
            .collect(),
        Value::Object(_) => vec![(String::new(), &value)],
        _ => {
            return Err(input_err(
                "",
                "expected a scenario object or an array of scenarios",
            ))
        }
    };
    let mut out = Vec::new();
    let mut ids = BTreeSet::new();
    for (prefix, item) in items {
        let s: Scenario = decode(item, &prefix)?;
        validate(&s, &prefix)?;
        if !ids.insert(s.id.clone()) {
            return Err(input_err(
                format!("{prefix}.id"),
                format!("duplicate scenario id {:?}", s.id),
            ));
        }
        out.push((prefix, s));
    }
    Ok(out)
}

fn validate(s: &Scenario, prefix: &str) -> Result<(), InputError> {
    let at = |field: &str| {
        if prefix.is_empty() {
            field.to_string()
        } else {
            format!("{prefix}.{field}")
        }
    };
    if s.checks.is_empty() {
        return Err(input_err(at("checks"), "no checks requested"));
    }
    let mut seen = BTreeSet::new();
    for (i, c) in s.checks.iter().enumerate() {
        let path = at(&format!("checks[{i}]"));
        if !seen.insert(*c) {
            return Err(input_err(
                path,
                format!("check {} requested twice", c.as_str()),
            ));
        }
        if c.needs_algebra() && !s.algebra.has_algebra() {
            return Err(input_err(
                path,
                format!(
                    "{} needs an algebra-backed source, got {}",
                    c.as_str(),
                    s.algebra.source()
                ),
            ));
        }
        if *c == CheckName::DiagramVerdict && !matches!(s.algebra, AlgebraSpec::AffineGcm { .. }) {
            return Err(input_err(
                path,
                "diagram_verdict needs an affine_gcm source",
            ));
        }
        if *c == CheckName::Expect && s.expect.is_none() {
            return Err(input_err(path, "the expect check needs an expect object"));
        }
    }
    if let Some(w) = s.window {
        if w < 1 {
            return Err(input_err(at("window"), "window must be at least 1"));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixSpec {
    matrix: Vec<Vec<JsonRational>>,
    period: u64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramSpec {
    diagram_perm: Vec<usize>,
}

/// A root datum with an automorphism, plus the diagram data for affine
/// sources.
#[derive(Debug, Clone)]
pub struct RootLevel {
    pub datum: RootDatum,
    pub sigma: RootAutomorphism,
    pub diagram: Option<(Gcm, DiagramAutomorphism)>,
}

/// A scenario ready to run.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub scenario: Scenario,
    pub window: Option<i64>,
    pub algebra: Option<AnyScenario>,
    pub roots: Result<RootLevel, String>,
}

fn root_automorphism(
    d: &RootDatum,
    spec: Option<&Value>,
    gcm: Option<&Gcm>,
    path: &str,
) -> Result<(RootAutomorphism, Option<DiagramAutomorphism>), InputError> {
    let bad = |e: &dyn fmt::Display| input_err(path, e);
    let Some(v) = spec else {
        return Err(input_err(path, "missing automorphism"));
    };
    let obj = v
        .as_object()
        .ok_or_else(|| input_err(path, "expected an object"))?;
    if obj.contains_key("kind") {
        let a: AutomorphismSpec = decode(v, path)?;
        if a != AutomorphismSpec::Identity {
            return Err(input_err(
                path,
                "root-level sources take identity, matrix or diagram_perm automorphisms",
            ));
        }
        let s = RootAutomorphism::identity(d).map_err(|e| bad(&e))?;
        return Ok((s, gcm.map(|g| DiagramAutomorphism::identity(g.size()))));
    }
    if obj.contains_key("diagram_perm") {
        let g = gcm.ok_or_else(|| input_err(path, "diagram_perm needs an affine_gcm source"))?;
        let spec: DiagramSpec = decode(v, path)?;
        let sigma = DiagramAutomorphism::new(g, spec.diagram_perm).map_err(|e| bad(&e))?;
        let s = RootAutomorphism::from_diagram(d, &sigma).map_err(|e| bad(&e))?;
        return Ok((s, Some(sigma)));
    }
    let spec: MatrixSpec = decode(v, path)?;
    let rows = spec.matrix.iter().map(|r| from_json_vec(r)).collect();
    let m = RatMatrix::from_rows(rows).map_err(|e| bad(&e))?;
    let s = RootAutomorphism::new(d, m, spec.period).map_err(|e| bad(&e))?;
    Ok((s, None))
}

fn torus(spec: &TorusSpec, path: &str) -> Result<QuantumTorus, InputError> {
    match &spec.q {
        None => Ok(QuantumTorus::commutative(spec.nu)),
        Some(q) => {
            if q.len() != spec.nu || q.iter().any(|r| r.len() != spec.nu) {
                return Err(input_err(
                    format!("{path}.q"),
                    format!("expected a {0}x{0} matrix", spec.nu),
                ));
            }
            QuantumTorus::signs(q).map_err(|e| input_err(format!("{path}.q"), e))
        }
    }
}

/// Builds the algebra and root data a scenario asks for. Failures here are
/// input errors; `window` overrides the scenario's window.
pub fn prepare(s: &Scenario, prefix: &str, window: Option<i64>) -> Result<Prepared, InputError> {
    let at = |field: &str| {
        if prefix.is_empty() {
            field.to_string()
        } else {
            format!("{prefix}.{field}")
        }
    };
    let aut_path = at("automorphism");
    let needs_algebra = s.checks.iter().any(|c| c.needs_algebra());
    let win = window.or(s.window).unwrap_or(DEFAULT_WINDOW);
    let alg_spec = |path: &str| -> Result<AutomorphismSpec, InputError> {
        match &s.automorphism {
            None => Err(input_err(path, "missing automorphism")),
            Some(v) => decode(v, path),
        }
    };
    let (algebra, roots) = match &s.algebra {
        AlgebraSpec::RootDatum { datum } => {
            let d = datum
                .build()
                .map_err(|e| input_err(at("algebra.datum"), e))?;
            let (sigma, _) = root_automorphism(&d, s.automorphism.as_ref(), None, &aut_path)?;
            (
                None,
                Ok(RootLevel {
                    datum: d,
                    sigma,
                    diagram: None,
                }),
            )
        }
        AlgebraSpec::AffineGcm { name, gcm, bound } => {
            let g = match (name, gcm) {
                (Some(n), None) => affine_catalog(8)
                    .into_iter()
                    .find(|e| &e.name == n)
                    .map(|e| e.gcm)
                    .ok_or_else(|| {
                        input_err(at("algebra.name"), format!("unknown affine matrix {n:?}"))
                    })?,
                (None, Some(rows)) => {
                    Gcm::new(rows.clone()).map_err(|e| input_err(at("algebra.gcm"), e))?
                }
                _ => return Err(input_err(at("algebra"), "give exactly one of name and gcm")),
            };
            g.validate_affine()
                .map_err(|e| input_err(at("algebra.gcm"), e))?;
            let d = affine_root_datum(&g, bound.unwrap_or(3))
                .map_err(|e| input_err(at("algebra"), e))?;
            let (sigma, diagram) =
                root_automorphism(&d, s.automorphism.as_ref(), Some(&g), &aut_path)?;
            let diagram = diagram.map(|p| (g, p));
            (
                None,
                Ok(RootLevel {
                    datum: d,
                    sigma,
                    diagram,
                }),
            )
        }
        AlgebraSpec::Toroidal { n, nu } => {
            let spec = alg_spec(&aut_path)?;
            let a = toroidal_build(*n, *nu, &spec, win).map_err(|e| input_err(&aut_path, e))?;
            let roots = from_algebra(&a);
            (Some(a), roots)
        }
        AlgebraSpec::SlLoop { n } => {
            let spec = alg_spec(&aut_path)?;
            let a = sl_loop(*n, &spec, win).map_err(|e| input_err(&aut_path, e))?;
            let roots = from_algebra(&a);
            (Some(a), roots)
        }
        AlgebraSpec::QuantumSl { ell, torus: t } => {
            if let Some(v) = &s.automorphism {
                if decode::<AutomorphismSpec>(v, &aut_path)? != AutomorphismSpec::NegStar {
                    return Err(input_err(&aut_path, "quantum_sl supports only neg_star"));
                }
            }
            if *ell == 0 {
                return Err(input_err(at("algebra.ell"), "ell must be positive"));
            }
            let qt = torus(t, &at("algebra.torus"))?;
            if !qt.is_signs() {
                return Err(input_err(at("algebra.torus.q"), "reversal needs q_ij = ±1"));
            }
            let d = quantum_sl_roots(*ell, t.nu).map_err(|e| input_err(at("algebra"), e))?;
            let sigma = reversal_flip(&d, *ell, t.nu).map_err(|e| input_err(at("algebra"), e))?;
            let algebra = if needs_algebra {
                Some(quantum_sl_build(*ell, qt, win).map_err(|e| input_err(at("algebra"), e))?)
            } else {
                None
            };
            (
                algebra,
                Ok(RootLevel {
                    datum: d,
                    sigma,
                    diagram: None,
                }),
            )
        }
    };
    let window = algebra.as_ref().map(AnyScenario::window);
    Ok(Prepared {
        scenario: s.clone(),
        window,
        algebra,
        roots,
    })
}

fn from_algebra(a: &AnyScenario) -> Result<RootLevel, String> {
    a.root_automorphism()
        .map(|(datum, sigma)| RootLevel {
            datum,
            sigma,
            diagram: None,
        })
        .map_err(|e| e.to_string())
}
