use serde::Serialize;
use tww_core::{Trigraph, WidthProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct InstanceStats {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub vertices: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub black_edges: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub red_edges: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WidthSummary {
    pub max: usize,
    pub argmax_step: usize,
    pub steps: usize,
    pub bound: usize,
    pub within_bound: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Verdicts {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub satisfiable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colorable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colors: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chromatic_number: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twin_width: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
}

/// One JSON document per invocation. Everything but `wall_time_ms` is a
/// function of the inputs.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    pub instance: InstanceStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub width: Option<WidthSummary>,
    pub verdicts: Verdicts,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub budget: u64,
    pub wall_time_ms: f64,
}

impl RunReport {
    pub fn new(command: Vec<String>, budget: u64) -> Self {
        RunReport {
            command,
            status: Status::Pass,
            failure: None,
            instance: InstanceStats::default(),
            width: None,
            verdicts: Verdicts::default(),
            checks: Vec::new(),
            notes: Vec::new(),
            seed: None,
            budget,
            wall_time_ms: 0.0,
        }
    }

    /// Records a named invariant; the first failing one is the reported failure.
    pub fn check(&mut self, name: &str, ok: bool) -> bool {
        self.checks.push(Check { name: name.to_string(), ok });
        if !ok {
            self.status = Status::Fail;
            self.failure.get_or_insert_with(|| name.to_string());
        }
        ok
    }

    pub fn skip(&mut self, note: String) {
        if self.status == Status::Pass {
            self.status = Status::Skip;
        }
        self.notes.push(format!("skipped: {note}"));
    }

    pub fn graph_stats(&mut self, g: &Trigraph) {
        self.instance.vertices = Some(g.n());
        self.instance.black_edges = Some(g.num_black_edges());
        self.instance.red_edges = Some(g.num_red_edges());
    }

    pub fn width_profile(&mut self, profile: &WidthProfile, steps: usize, bound: usize) {
        let max = profile.overall_width();
        self.width = Some(WidthSummary {
            max,
            argmax_step: profile.argmax_step(),
            steps,
            bound,
            within_bound: max <= bound,
        });
        self.verdicts.sequence_ok = Some(max <= bound);
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Fail => 1,
            Status::Pass | Status::Skip => 0,
        }
    }
}
