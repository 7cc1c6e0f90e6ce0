//! Verdicts for every affine matrix and diagram automorphism up to a rank.

use rayon::prelude::*;
use serde::Serialize;

use eala::autoroot::{affinization_report, RootAutomorphism, Verdict};
use eala::gcm::{
    affine_catalog, affine_root_datum, diagram_automorphisms, diagram_verdict, DiagramVerdict,
};
use eala::rootsys::TypeLabel;

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub matrix: String,
    pub nodes: usize,
    pub perm: Vec<usize>,
    pub period: u64,
    pub transitive: bool,
    pub predicted: DiagramVerdict,
    pub verdict: Option<Verdict>,
    #[serde(rename = "type")]
    pub type_label: Option<TypeLabel>,
    pub nullity: Option<usize>,
    pub agrees: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// One row per pair, catalog order then automorphism order.
pub fn diagram_table(max_rank: usize) -> Vec<Row> {
    let entries = affine_catalog(max_rank);
    entries
        .par_iter()
        .flat_map_iter(|e| {
            let datum = affine_root_datum(&e.gcm, 3);
            diagram_automorphisms(&e.gcm).into_iter().map(move |sigma| {
                let predicted =
                    diagram_verdict(&e.gcm, &sigma).expect("catalog matrices are affine");
                let computed = datum.as_ref().map_err(|err| err.to_string()).and_then(|d| {
                    let s =
                        RootAutomorphism::from_diagram(d, &sigma).map_err(|err| err.to_string())?;
                    affinization_report(&s, d).map_err(|err| err.to_string())
                });
                let (verdict, type_label, nullity, error) = match &computed {
                    Ok(r) => (Some(r.verdict), r.type_label, r.nullity, None),
                    Err(err) => (None, None, None, Some(err.clone())),
                };
                let agrees = verdict.is_some_and(|v| {
                    (v == Verdict::EmptyNonisotropic) == predicted.empty_nonisotropic
                        && (v == Verdict::TameEala) == predicted.tame_eala
                        && nullity == predicted.nullity
                });
                Row {
                    matrix: e.name.clone(),
                    nodes: e.gcm.size(),
                    transitive: sigma.is_transitive(),
                    period: sigma.period,
                    perm: sigma.perm,
                    predicted,
                    verdict,
                    type_label,
                    nullity,
                    agrees,
                    error,
                }
            })
        })
        .collect()
}
