//! Machine-readable run reports.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::carter::{
    CarterCertificate, CarterOutcome, ConditionEReport, Method, NilpotentEnumeration, Status,
    Witness,
};
use crate::group::PermGroup;
use crate::series::{ChiefSeriesData, SimpleTypeLabel};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    /// Canonical rendering of the input construction.
    pub input: Option<String>,
    pub seed: u64,
    pub outcome: Outcome,
    /// Milliseconds per phase.
    pub timings: BTreeMap<String, f64>,
    pub limits_hit: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str, input: Option<String>, seed: u64, outcome: Outcome) -> Self {
        RunReport {
            schema: SCHEMA,
            command: command.to_string(),
            input,
            seed,
            outcome,
            timings: BTreeMap::new(),
            limits_hit: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with the timings object removed, for reproducibility checks.
    pub fn to_stable_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("timings");
        }
        serde_json::to_string_pretty(&v).expect("value serializes")
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Carter(CarterView),
    Exists {
        status: Status,
        witness: Option<WitnessView>,
    },
    Brute {
        complete: bool,
        nilpotent_classes: Vec<ClassView>,
        carter_classes: Vec<SubgroupView>,
    },
    ChiefSeries(SeriesView),
    ConditionE(ConditionEView),
    PaperExample(Box<PaperView>),
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupView {
    pub order: u64,
    pub generators: Vec<String>,
}

impl SubgroupView {
    pub fn of(g: &PermGroup) -> Self {
        SubgroupView {
            order: g.order(),
            generators: g.gens().iter().map(|x| x.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassView {
    pub order: u64,
    pub normalizer_order: u64,
    pub self_normalizing: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessView {
    pub level: Option<usize>,
    pub factor: Option<usize>,
    pub label: SimpleTypeLabel,
    pub group: SubgroupView,
    pub path: Vec<String>,
}

impl WitnessView {
    pub fn of(w: &Witness) -> Self {
        WitnessView {
            level: w.level,
            factor: w.factor,
            label: w.label.clone(),
            group: SubgroupView::of(&w.group),
            path: w.path.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CarterView {
    pub status: Status,
    pub subgroup: Option<SubgroupView>,
    pub witness: Option<WitnessView>,
    pub certificate: Option<CarterCertificate>,
}

impl CarterView {
    pub fn of(o: &CarterOutcome) -> Self {
        CarterView {
            status: o.status,
            subgroup: o.subgroup.as_ref().map(SubgroupView::of),
            witness: o.witness.as_ref().map(WitnessView::of),
            certificate: o.certificate.clone(),
        }
    }
}

impl ClassView {
    pub fn list(e: &NilpotentEnumeration) -> Vec<ClassView> {
        e.classes
            .iter()
            .map(|c| ClassView {
                order: c.group.order(),
                normalizer_order: c.normalizer_order,
                self_normalizing: c.self_normalizing(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorView {
    pub order: u64,
    pub label: SimpleTypeLabel,
    pub abelian: bool,
    pub k: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesView {
    pub term_orders: Vec<u64>,
    pub factors: Vec<FactorView>,
}

impl SeriesView {
    pub fn of(s: &ChiefSeriesData) -> Self {
        SeriesView {
            term_orders: s.terms.iter().map(|t| t.order()).collect(),
            factors: s
                .factors
                .iter()
                .zip(s.factor_orders())
                .map(|(f, order)| FactorView {
                    order,
                    label: f.label.clone(),
                    abelian: f.abelian,
                    k: f.k(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CellView {
    pub level: usize,
    pub factor: usize,
    pub label: SimpleTypeLabel,
    pub carter_order: Option<u64>,
    pub aut_order: Option<u64>,
    pub aut_degree: Option<usize>,
    pub has_carter: bool,
    pub method: Method,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionEView {
    pub satisfied: bool,
    pub levels: usize,
    pub cells: Vec<CellView>,
    pub witness: Option<WitnessView>,
}

impl ConditionEView {
    pub fn of(r: &ConditionEReport) -> Self {
        ConditionEView {
            satisfied: r.satisfied,
            levels: r.levels,
            cells: r
                .cells
                .iter()
                .map(|c| CellView {
                    level: c.level,
                    factor: c.factor,
                    label: c.label.clone(),
                    carter_order: c.carter_order,
                    aut_order: c.aut_group.as_ref().map(PermGroup::order),
                    aut_degree: c.aut_group.as_ref().map(PermGroup::degree),
                    has_carter: c.has_carter,
                    method: c.method,
                })
                .collect(),
            witness: r.witness.as_ref().map(WitnessView::of),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StatementView {
    pub number: u32,
    pub claim: String,
    pub pass: bool,
    pub checks: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PaperView {
    pub group_order: u64,
    pub degree: usize,
    pub statements: Vec<StatementView>,
    pub carter: CarterView,
    pub condition_e: ConditionEView,
}
