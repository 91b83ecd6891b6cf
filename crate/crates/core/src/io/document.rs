//! JSON documents for refutations and models. Terms and literals are stored in their
//! printed form and parsed back, so a document reproduces its source value exactly.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::tptp::{parse_literal, parse_term};
use super::ParseError;
use crate::engine::{DeductionStep, ParentLink, Proof};
use crate::fol::{FolModel, Interpretation, InterpretationSketch, PredicateValue, WitnessCase, MAX_EVALUATIONS};
use crate::logic::{sym, Clause, ClauseId, ClauseSet, Literal, Substitution};
use crate::prop::Model;

pub const PROOF_FORMAT: &str = "csep-proof/1";
pub const MODEL_FORMAT: &str = "csep-model/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParentDocument {
    pub source: u32,
    pub substitution: BTreeMap<String, String>,
    pub main: Option<String>,
    pub secondary: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDocument {
    pub id: u32,
    /// Literals of the derived clause; empty for the empty clause.
    pub clause: Vec<String>,
    pub parents: Vec<ParentDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofDocument {
    pub format: String,
    pub problem: String,
    pub status: String,
    pub conclusion: u32,
    pub steps: Vec<StepDocument>,
}

fn check_format(found: &str, expected: &str) -> Result<(), ParseError> {
    if found == expected {
        Ok(())
    } else {
        Err(ParseError::Document(format!("format `{found}`, expected `{expected}`")))
    }
}

fn json_error(e: serde_json::Error) -> ParseError {
    ParseError::Document(e.to_string())
}

fn parse_clause(lits: &[String]) -> Result<Clause, ParseError> {
    Ok(Clause::new(lits.iter().map(|l| parse_literal(l)).collect::<Result<_, _>>()?))
}

impl ProofDocument {
    pub fn from_proof(problem: &str, proof: &Proof) -> ProofDocument {
        let steps = proof
            .steps
            .iter()
            .map(|s| StepDocument {
                id: s.id.0,
                clause: s.csc.iter().map(ToString::to_string).collect(),
                parents: s
                    .parents
                    .iter()
                    .map(|p| ParentDocument {
                        source: p.source.0,
                        substitution: p.substitution.iter().map(|(v, t)| (v.to_string(), t.to_string())).collect(),
                        main: p.extended.as_ref().map(ToString::to_string),
                        secondary: p.secondary.as_ref().map(ToString::to_string),
                    })
                    .collect(),
            })
            .collect();
        ProofDocument {
            format: PROOF_FORMAT.into(),
            problem: problem.into(),
            status: "Unsatisfiable".into(),
            conclusion: proof.conclusion.0,
            steps,
        }
    }

    pub fn to_proof(&self) -> Result<Proof, ParseError> {
        check_format(&self.format, PROOF_FORMAT)?;
        let mut steps = Vec::with_capacity(self.steps.len());
        for s in &self.steps {
            let mut parents = Vec::with_capacity(s.parents.len());
            for p in &s.parents {
                let pairs = p
                    .substitution
                    .iter()
                    .map(|(v, t)| Ok((sym(v), parse_term(t)?)))
                    .collect::<Result<Vec<_>, ParseError>>()?;
                parents.push(ParentLink {
                    source: ClauseId(p.source),
                    substitution: Substitution::from_pairs(pairs)?,
                    extended: p.main.as_deref().map(parse_literal).transpose()?,
                    secondary: p.secondary.as_deref().map(parse_literal).transpose()?,
                });
            }
            steps.push(DeductionStep { id: ClauseId(s.id), csc: parse_clause(&s.clause)?, parents });
        }
        Ok(Proof { steps, conclusion: ClauseId(self.conclusion) })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(text: &str) -> Result<ProofDocument, ParseError> {
        serde_json::from_str(text).map_err(json_error)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PredicateDocument {
    Constant(bool),
    TrueOn { true_on: Vec<Vec<String>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectedDocument {
    pub clause: u32,
    pub literal: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModelBody {
    Propositional {
        assignment: BTreeMap<String, bool>,
    },
    FirstOrder {
        case: String,
        selected: Vec<SelectedDocument>,
        domain: Vec<String>,
        predicates: BTreeMap<String, PredicateDocument>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDocument {
    pub format: String,
    pub problem: String,
    pub status: String,
    #[serde(flatten)]
    pub body: ModelBody,
}

fn case_name(c: WitnessCase) -> &'static str {
    match c {
        WitnessCase::SinglePolarity => "single-polarity",
        WitnessCase::DistinctGroundInstances => "distinct-ground-instances",
    }
}

impl ModelDocument {
    fn new(problem: &str, body: ModelBody) -> ModelDocument {
        ModelDocument { format: MODEL_FORMAT.into(), problem: problem.into(), status: "Satisfiable".into(), body }
    }

    pub fn from_model(problem: &str, model: &Model) -> ModelDocument {
        let assignment = model.literals().iter().map(|l| (l.predicate.to_string(), l.positive)).collect();
        ModelDocument::new(problem, ModelBody::Propositional { assignment })
    }

    pub fn from_fol(problem: &str, model: &FolModel) -> ModelDocument {
        let predicates = model
            .interpretation
            .predicates()
            .iter()
            .map(|(p, v)| {
                let doc = match v {
                    PredicateValue::True => PredicateDocument::Constant(true),
                    PredicateValue::False => PredicateDocument::Constant(false),
                    PredicateValue::TrueOn(tuples) => PredicateDocument::TrueOn {
                        true_on: tuples.iter().map(|t| t.iter().map(ToString::to_string).collect()).collect(),
                    },
                };
                (p.to_string(), doc)
            })
            .collect();
        ModelDocument::new(
            problem,
            ModelBody::FirstOrder {
                case: case_name(model.sketch.domain_note).into(),
                selected: model
                    .sketch
                    .selected_literals
                    .iter()
                    .map(|(id, l)| SelectedDocument { clause: id.0, literal: l.to_string() })
                    .collect(),
                domain: model.interpretation.domain().iter().map(ToString::to_string).collect(),
                predicates,
            },
        )
    }

    pub fn to_model(&self) -> Result<Model, ParseError> {
        check_format(&self.format, MODEL_FORMAT)?;
        match &self.body {
            ModelBody::Propositional { assignment } => {
                let mut m = Model::default();
                for (atom, value) in assignment {
                    m.assign(sym(atom), *value);
                }
                Ok(m)
            }
            ModelBody::FirstOrder { .. } => {
                Err(ParseError::Document("a first-order model is not an assignment".into()))
            }
        }
    }

    pub fn to_fol(&self) -> Result<FolModel, ParseError> {
        check_format(&self.format, MODEL_FORMAT)?;
        let ModelBody::FirstOrder { case, selected, domain, predicates } = &self.body else {
            return Err(ParseError::Document("a propositional model is not an interpretation".into()));
        };
        let domain_note = match case.as_str() {
            "single-polarity" => WitnessCase::SinglePolarity,
            "distinct-ground-instances" => WitnessCase::DistinctGroundInstances,
            other => return Err(ParseError::Document(format!("unknown case `{other}`"))),
        };
        let mut truth_assignment = BTreeMap::new();
        for (p, v) in predicates {
            let value = match v {
                PredicateDocument::Constant(true) => PredicateValue::True,
                PredicateDocument::Constant(false) => PredicateValue::False,
                PredicateDocument::TrueOn { true_on } => PredicateValue::TrueOn(
                    true_on
                        .iter()
                        .map(|t| t.iter().map(|a| parse_term(a)).collect::<Result<Vec<_>, _>>())
                        .collect::<Result<BTreeSet<_>, _>>()?,
                ),
            };
            truth_assignment.insert(sym(p), value);
        }
        let selected_literals = selected
            .iter()
            .map(|s| Ok((ClauseId(s.clause), parse_literal(&s.literal)?)))
            .collect::<Result<Vec<(ClauseId, Literal)>, ParseError>>()?;
        let domain = domain.iter().map(|t| parse_term(t)).collect::<Result<BTreeSet<_>, _>>()?;
        Ok(FolModel {
            interpretation: Interpretation::from_parts(domain, truth_assignment.clone()),
            sketch: InterpretationSketch { selected_literals, domain_note, truth_assignment },
        })
    }

    /// Every clause of `problem` holds in the described model.
    pub fn satisfies(&self, problem: &ClauseSet) -> Result<bool, ParseError> {
        match &self.body {
            ModelBody::Propositional { .. } => Ok(self.to_model()?.satisfies_all(problem)),
            ModelBody::FirstOrder { .. } => {
                let model = self.to_fol()?;
                let mut budget = MAX_EVALUATIONS;
                for c in problem {
                    match model.interpretation.satisfies(c, &mut budget) {
                        Some(true) => {}
                        Some(false) => return Ok(false),
                        None => return Err(ParseError::Document("model too large to evaluate".into())),
                    }
                }
                Ok(true)
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(text: &str) -> Result<ModelDocument, ParseError> {
        serde_json::from_str(text).map_err(json_error)
    }
}
