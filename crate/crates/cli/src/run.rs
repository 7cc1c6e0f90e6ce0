//! The check registry: one scenario in, one report out.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use eala::autoroot::{
    affinization_report, affinized_root_datum, condition_iv, nondegeneracy_transfer,
    prime_period_verdict, projected_nonisotropic, AffinizationReport, AutoRootError,
    ResidueAssignment, Verdict, Witnessed,
};
use eala::exactnum::vec_to_string;
use eala::gcm::diagram_verdict;
use eala::liealg::{AlgebraReport, CheckResult, StructureReport};

use crate::scenario::{CheckName, Expectation, Prepared, RootLevel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Undetermined,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: CheckName,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub detail: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub id: String,
    pub source: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<i64>,
    pub checks: Vec<CheckOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub affinization: Option<AffinizationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, u128>>,
}

impl Report {
    pub fn count(&self, o: Outcome) -> usize {
        self.checks.iter().filter(|c| c.outcome == o).count()
    }
}

fn outcome(holds: bool) -> Outcome {
    if holds {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn check(name: CheckName, holds: bool, witness: Option<String>, detail: Value) -> CheckOutcome {
    CheckOutcome {
        name,
        outcome: outcome(holds),
        witness: if holds { None } else { witness },
        detail,
    }
}

fn undetermined(name: CheckName, why: impl ToString) -> CheckOutcome {
    CheckOutcome {
        name,
        outcome: Outcome::Undetermined,
        witness: Some(why.to_string()),
        detail: Value::Null,
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn first_witness<'a>(rs: impl IntoIterator<Item = (&'a str, &'a CheckResult)>) -> Option<String> {
    rs.into_iter()
        .find(|(_, r)| !r.holds)
        .map(|(n, r)| format!("{n}: {}", r.witness.clone().unwrap_or_default()))
}

fn structure_witness(label: &str, s: &StructureReport) -> Option<String> {
    first_witness([
        ("antisymmetry", &s.antisymmetry),
        ("jacobi", &s.jacobi),
        ("grading", &s.grading),
        ("form_symmetric", &s.form_symmetric),
        ("form_invariant", &s.form_invariant),
        ("degree_pairing", &s.degree_pairing),
    ])
    .map(|w| format!("{label} {w}"))
}

fn witnessed(name: CheckName, w: &Witnessed) -> CheckOutcome {
    let shown = w.witness.as_ref().map(|v| vec_to_string(v));
    let detail = json!({ "holds": w.holds, "witness": shown });
    check(
        name,
        w.holds,
        shown.clone().map(|v| format!("root {v}")),
        detail,
    )
}

/// Lazily computed pieces shared by several checks.
struct Context<'a> {
    prepared: &'a Prepared,
    analysis: Option<Result<AlgebraReport, String>>,
    affinization: Option<Result<AffinizationReport, String>>,
}

impl Context<'_> {
    fn analysis(&mut self) -> Result<&AlgebraReport, String> {
        let p = self.prepared;
        let a = self.analysis.get_or_insert_with(|| match &p.algebra {
            Some(a) => a.analyze().map_err(|e| e.to_string()),
            None => Err("no algebra was built for this scenario".into()),
        });
        a.as_ref().map_err(Clone::clone)
    }

    fn roots(&self) -> Result<&RootLevel, String> {
        self.prepared.roots.as_ref().map_err(Clone::clone)
    }

    fn affinization(&mut self) -> Result<&AffinizationReport, String> {
        let p = self.prepared;
        let a = self.affinization.get_or_insert_with(|| {
            let r = p.roots.as_ref().map_err(Clone::clone)?;
            affinization_report(&r.sigma, &r.datum).map_err(|e| e.to_string())
        });
        a.as_ref().map_err(Clone::clone)
    }

    fn run(&mut self, name: CheckName) -> CheckOutcome {
        match self.run_inner(name) {
            Ok(c) => c,
            Err(e) => undetermined(name, e),
        }
    }

    fn run_inner(&mut self, name: CheckName) -> Result<CheckOutcome, String> {
        Ok(match name {
            CheckName::Structure => {
                let a = self.analysis()?;
                let holds = a.base_structure.all_hold() && a.affinized_structure.all_hold();
                let witness = structure_witness("base", &a.base_structure)
                    .or_else(|| structure_witness("affinized", &a.affinized_structure));
                let detail = json!({
                    "base_dim": a.base_dim,
                    "affinized_dim": a.affinized_dim,
                    "base": a.base_structure,
                    "affinized": a.affinized_structure,
                });
                check(name, holds, witness, detail)
            }
            CheckName::EaAxioms => {
                let a = self.analysis()?;
                let r = a.affinized_axioms.as_ref().map_err(Clone::clone)?;
                let witness = first_witness([
                    ("EA1", &r.ea1),
                    ("EA2", &r.ea2),
                    ("EA3", &r.ea3),
                    ("EA4", &r.ea4),
                ])
                .or_else(|| r.datum_error.clone())
                .or_else(|| (!r.ea5a).then(|| "EA5a fails".into()))
                .or_else(|| (!r.ea5b).then(|| "EA5b fails".into()));
                check(name, r.all_hold(), witness, to_value(r))
            }
            CheckName::EquivalenceConditions => {
                let r = &self.analysis()?.equivalence_conditions;
                let witness = Some(format!(
                    "(i)={} (ii)={} (iii)={} (iv)={}",
                    r.i, r.ii, r.iii, r.iv
                ));
                check(name, r.consistent(), witness, to_value(r))
            }
            CheckName::CoreIdentity => {
                let r = self.analysis()?.core.as_ref().map_err(Clone::clone)?;
                let holds = r.core_matches
                    && r.generated_by_projected
                    && r.c_in_core
                    && r.c_via_commutator
                    && r.quotient_dims_agree;
                let witness = r
                    .mismatch
                    .clone()
                    .or_else(|| Some("core identity fails".into()));
                check(name, holds, witness, to_value(r))
            }
            CheckName::Tameness => {
                let r = self.analysis()?.core.as_ref().map_err(Clone::clone)?;
                check(
                    name,
                    r.tame,
                    Some("the centralizer of the core leaves the core".into()),
                    json!({ "tame": r.tame }),
                )
            }
            CheckName::RootAgreement => {
                let r = self
                    .analysis()?
                    .root_agreement
                    .as_ref()
                    .map_err(Clone::clone)?;
                check(name, r.agree, r.witness.clone(), to_value(r))
            }
            CheckName::Affinization => {
                let r = self.affinization()?;
                check(name, true, None, json!({ "verdict": r.verdict }))
            }
            CheckName::ProjectedNonisotropic => {
                let r = self.roots()?;
                witnessed(name, &projected_nonisotropic(&r.sigma, &r.datum))
            }
            CheckName::ConditionIv => {
                let r = self.roots()?;
                witnessed(name, &condition_iv(&r.sigma, &r.datum))
            }
            CheckName::PrimePeriod => {
                let r = self.roots()?;
                let v = prime_period_verdict(&r.sigma, &r.datum);
                let detail = to_value(&v);
                match (v.sufficient, v.necessary_given_prime) {
                    (true, _) => check(name, true, None, detail),
                    (false, Some(_)) => check(
                        name,
                        false,
                        Some("not a tame EALA with nonisotropic roots".into()),
                        detail,
                    ),
                    (false, None) => CheckOutcome {
                        name,
                        outcome: Outcome::Undetermined,
                        witness: Some(format!(
                            "sufficient conditions fail and m = {} is not prime",
                            r.sigma.period()
                        )),
                        detail,
                    },
                }
            }
            CheckName::NondegeneracyTransfer => {
                let r = self.roots()?;
                match nondegeneracy_transfer(&r.sigma, &r.datum) {
                    Ok(b) => check(
                        name,
                        b,
                        Some("radical of the affinization differs".into()),
                        Value::Null,
                    ),
                    Err(AutoRootError::Degenerate) => {
                        undetermined(name, "input datum is degenerate")
                    }
                    Err(e) => return Err(e.to_string()),
                }
            }
            CheckName::Ea5b => {
                let datum = match &self.prepared.algebra {
                    Some(a) => a.affinized_datum().map_err(|e| e.to_string())?.2.datum,
                    None => {
                        let r = self.roots()?;
                        let res = ResidueAssignment::orbit_rule(&r.sigma, &r.datum)
                            .map_err(|e| e.to_string())?;
                        affinized_root_datum(&r.sigma, &r.datum, &res)
                            .map_err(|e| e.to_string())?
                            .datum
                    }
                };
                let r = datum.check_ea5b();
                let witness = r
                    .failing_delta()
                    .map(|d| format!("isotropic root {} has no partner", vec_to_string(d)));
                check(name, r.ok, witness, json!({ "failing": r.failing.len() }))
            }
            CheckName::DiagramVerdict => {
                let (g, perm) = self
                    .roots()?
                    .diagram
                    .clone()
                    .ok_or("no diagram automorphism")?;
                let predicted = diagram_verdict(&g, &perm).map_err(|e| e.to_string())?;
                let r = self.affinization()?;
                let computed_empty = r.verdict == Verdict::EmptyNonisotropic;
                let holds = predicted.empty_nonisotropic == computed_empty
                    && predicted.tame_eala == !computed_empty
                    && predicted.nullity == r.nullity;
                let detail = json!({
                    "transitive": perm.is_transitive(),
                    "predicted": predicted,
                    "computed": { "verdict": r.verdict, "nullity": r.nullity },
                });
                check(
                    name,
                    holds,
                    Some("computed verdict differs from the diagram prediction".into()),
                    detail,
                )
            }
            CheckName::Expect => {
                let e = self.prepared.scenario.expect.clone().unwrap_or_default();
                let mismatches = self.expectations(&e)?;
                let witness = mismatches.first().cloned();
                check(
                    name,
                    mismatches.is_empty(),
                    witness,
                    json!({ "mismatches": mismatches }),
                )
            }
        })
    }

    fn expectations(&mut self, e: &Expectation) -> Result<Vec<String>, String> {
        let mut out = Vec::new();
        if e.verdict.is_some() || e.type_label.is_some() || e.nullity.is_some() {
            let r = self.affinization()?.clone();
            if let Some(v) = e.verdict {
                if v != r.verdict {
                    out.push(format!("verdict {:?}, expected {v:?}", r.verdict));
                }
            }
            if let Some(t) = e.type_label {
                if !r.type_label.is_some_and(|x| x.same_class(t)) {
                    out.push(format!(
                        "type {}, expected {t}",
                        r.type_label.map_or("none".into(), |x| x.to_string())
                    ));
                }
            }
            if let Some(n) = e.nullity {
                if r.nullity != Some(n) {
                    out.push(format!("nullity {:?}, expected {n}", r.nullity));
                }
            }
        }
        if let Some(t) = e.tame {
            let tame = if self.prepared.algebra.is_some() {
                self.analysis()?.core.as_ref().map_err(Clone::clone)?.tame
            } else {
                self.affinization()?.verdict == Verdict::TameEala
            };
            if tame != t {
                out.push(format!("tame {tame}, expected {t}"));
            }
        }
        if let Some(x) = e.ea_axioms {
            let a = self.analysis()?;
            let holds = a.affinized_axioms.as_ref().is_ok_and(|r| r.all_hold());
            if holds != x {
                out.push(format!("ea_axioms {holds}, expected {x}"));
            }
        }
        Ok(out)
    }
}

/// Runs every requested check, in request order.
pub fn run_scenario(p: &Prepared, timing: bool) -> Report {
    let start = Instant::now();
    let mut ctx = Context {
        prepared: p,
        analysis: None,
        affinization: None,
    };
    let mut times = BTreeMap::new();
    let mut checks = Vec::new();
    for &name in &p.scenario.checks {
        let t = Instant::now();
        checks.push(ctx.run(name));
        times.insert(name.as_str().to_string(), t.elapsed().as_millis());
    }
    let wants_roots = p.scenario.checks.iter().any(|c| !c.needs_algebra());
    let affinization = if wants_roots {
        ctx.affinization().ok().cloned()
    } else {
        None
    };
    times.insert("total".into(), start.elapsed().as_millis());
    Report {
        id: p.scenario.id.clone(),
        source: p.scenario.algebra.source(),
        window: p.window,
        checks,
        affinization,
        timing_ms: timing.then_some(times),
    }
}
