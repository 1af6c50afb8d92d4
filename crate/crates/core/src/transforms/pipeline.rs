//! Chains of transforms, with every stage checked against the axiom set its
//! construction promises.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use super::*;
use crate::axioms::{matching_rb, op_axiom_set, report, Verdict};

/// A named transform step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// Operator family to `{≺, ≻}`.
    Dend,
    /// Operator family to `{≺, ≻, ·}`.
    Tridend,
    /// Operator family to `∗ = [P(x), y]` (weight zero only).
    Rblie,
    /// Operator family to `∗ = P(x)y - yP(x) - λyx`.
    Rbpre,
    /// Operator family to `{⋆ = λxy, ∘ = [P(x), y]}`.
    Rbpostlie,
    /// `{≺, ≻}` to `∗`.
    Prelie,
    /// `{≺, ≻, ·}` to `{⋆, ∘}`.
    Postlie,
    /// `{≺, ≻[, ·]}` to `•`.
    Assoc,
    /// `∗`, `•` or `⋆` to `[,]`.
    Antisym,
}

impl Step {
    pub const ALL: [Step; 9] = [
        Step::Dend,
        Step::Tridend,
        Step::Rblie,
        Step::Rbpre,
        Step::Rbpostlie,
        Step::Prelie,
        Step::Postlie,
        Step::Assoc,
        Step::Antisym,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Step::Dend => "dend",
            Step::Tridend => "tridend",
            Step::Rblie => "rblie",
            Step::Rbpre => "rbpre",
            Step::Rbpostlie => "rbpostlie",
            Step::Prelie => "prelie",
            Step::Postlie => "postlie",
            Step::Assoc => "assoc",
            Step::Antisym => "antisym",
        }
    }

    fn on_family(self) -> bool {
        matches!(self, Step::Dend | Step::Tridend | Step::Rblie | Step::Rbpre | Step::Rbpostlie)
    }

    /// Parses a comma-separated list; the empty string is the empty list.
    pub fn parse_list(s: &str) -> Result<Vec<Step>> {
        s.split(',').map(str::trim).filter(|p| !p.is_empty()).map(str::parse).collect()
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Step {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Step::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Unknown(format!("step `{s}`")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StageReport {
    /// `source` for the input structure.
    pub step: String,
    pub structure: String,
    pub axiom_set: String,
    pub provenance: Vec<String>,
    pub check: Value,
    #[serde(skip)]
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub source: String,
    pub steps: Vec<String>,
    pub stages: Vec<StageReport>,
    pub passed: bool,
}

impl PipelineReport {
    fn push(&mut self, stage: StageReport) -> bool {
        let ok = stage.verdict.passed;
        self.stages.push(stage);
        self.passed &= ok;
        ok
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn stage_of<C: Carrier>(step: &str, s: &OpStructure<C>, set_name: &str, sampling: &Sampling<C>) -> Result<StageReport> {
    let set = op_axiom_set::<C>(set_name)?;
    let verdict = check(s, &set, sampling)?;
    Ok(StageReport {
        step: step.to_string(),
        structure: s.describe(),
        axiom_set: set.name.to_string(),
        provenance: s.provenance().to_vec(),
        check: report(s, &set, sampling, &verdict),
        verdict,
    })
}

/// Applies one structure-level step without checking its input; returns the
/// output and the name of the axiom set it is declared to satisfy.
pub fn op_step<C: Carrier>(step: Step, s: &OpStructure<C>) -> Result<(OpStructure<C>, &'static str)> {
    let pre = Precheck::Trusted;
    let invalid = |stage: &str| Error::InvalidStep { step: step.to_string(), stage: stage.to_string() };
    match step {
        Step::Prelie if s.has_op(OpName::Dot) => Err(invalid("tridendriform")),
        Step::Prelie => Ok((dendriform_to_prelie(s, &pre)?, "matching-prelie")),
        Step::Postlie => Ok((tridendriform_to_postlie(s, &pre)?, "matching-assoc-postlie")),
        Step::Assoc => Ok((split_to_assoc(s, &pre)?, "compatible-associative")),
        Step::Antisym => {
            if s.has_op(OpName::Star) {
                Ok((antisymmetrize(s, OpName::Star, &pre)?, "compatible-lie"))
            } else if s.has_op(OpName::Bullet) {
                Ok((antisymmetrize(s, OpName::Bullet, &pre)?, "compatible-lie"))
            } else if s.has_op(OpName::AssocStar) {
                Ok((antisymmetrize(s, OpName::AssocStar, &pre)?, "matching-postlie"))
            } else {
                Err(invalid(&s.describe()))
            }
        }
        _ => Err(invalid(&s.describe())),
    }
}

/// Applies one family-level step (`dend`, `tridend`, `rblie`, `rbpre`,
/// `rbpostlie`); returns the output and its declared axiom set.
pub fn family_step<A: Algebra>(fam: &RBFamily<A>, step: Step) -> Result<(OpStructure<A>, &'static str)> {
    Ok(match step {
        Step::Dend => (rb_to_dendriform(fam), "matching-dendriform"),
        Step::Tridend => (rb_to_tridendriform(fam), "matching-tridendriform"),
        Step::Rblie => (rblie_to_prelie(fam, RbPreLieForm::Lie)?, "matching-prelie"),
        Step::Rbpre => (rblie_to_prelie(fam, RbPreLieForm::Weighted)?, "matching-prelie"),
        Step::Rbpostlie => (rb_to_postlie(fam), "matching-assoc-postlie"),
        other => {
            let stage = crate::axioms::Structure::describe(fam);
            return Err(Error::InvalidStep { step: other.to_string(), stage });
        }
    })
}

/// Runs `steps` starting from an operation structure declared to satisfy
/// `source_set`. Stops after the first failing stage.
pub fn run_ops_pipeline<C: Carrier>(
    source: OpStructure<C>,
    source_set: &str,
    steps: &[Step],
    sampling: &Sampling<C>,
) -> Result<PipelineReport> {
    let mut out = PipelineReport {
        source: source.describe(),
        steps: steps.iter().map(|s| s.to_string()).collect(),
        stages: Vec::new(),
        passed: true,
    };
    if !out.push(stage_of("source", &source, source_set, sampling)?) {
        return Ok(out);
    }
    let mut cur = source;
    for &step in steps {
        let (next, set) = op_step(step, &cur)?;
        if !out.push(stage_of(step.as_str(), &next, set, sampling)?) {
            break;
        }
        cur = next;
    }
    Ok(out)
}

/// Runs `steps` starting from an operator family. The first step must be one
/// of `dend`, `tridend`, `rblie`, `rbpre`, `rbpostlie`.
pub fn run_family_pipeline<A: Algebra>(
    fam: &RBFamily<A>,
    steps: &[Step],
    sampling: &Sampling<A>,
) -> Result<PipelineReport> {
    let describe = crate::axioms::Structure::describe(fam);
    let mut out = PipelineReport {
        source: describe.clone(),
        steps: steps.iter().map(|s| s.to_string()).collect(),
        stages: Vec::new(),
        passed: true,
    };
    let set = matching_rb::<A>();
    let verdict = check(fam, &set, sampling)?;
    let ok = out.push(StageReport {
        step: "source".into(),
        structure: describe.clone(),
        axiom_set: set.name.to_string(),
        provenance: Vec::new(),
        check: report(fam, &set, sampling, &verdict),
        verdict,
    });
    let Some((&first, rest)) = steps.split_first() else { return Ok(out) };
    if !ok {
        return Ok(out);
    }
    let (mut cur, set) = family_step(fam, first)?;
    cur = cur.inherit_provenance(&[format!("source: {describe}")]);
    if !out.push(stage_of(first.as_str(), &cur, set, sampling)?) {
        return Ok(out);
    }
    for &step in rest {
        if step.on_family() {
            return Err(Error::InvalidStep { step: step.to_string(), stage: cur.describe() });
        }
        let (next, set) = op_step(step, &cur)?;
        if !out.push(stage_of(step.as_str(), &next, set, sampling)?) {
            break;
        }
        cur = next;
    }
    Ok(out)
}
