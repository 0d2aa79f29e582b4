//! Sites where the text supports two situations, and the two-stage choice
//! between them: first keep readings that account for the accident, then
//! prefer the one where the writer behaved correctly.

use serde::{Deserialize, Serialize};

use crate::coref::Partition;
use crate::corpus::{Clause, Report, Span};
use crate::events::{Aspect, Event, ImpactFinding, ImpactStatus};
use crate::knowledge::{KnowledgeBase, WordClass, WriterBehavior};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AmbiguityKind {
    Lexical,
    PluperfectReference,
    IntentionVsAction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reading {
    pub label: String,
    pub writer_behavior: WriterBehavior,
    pub explains_accident: bool,
    pub chosen: bool,
}

impl Reading {
    fn new(label: &str, writer_behavior: WriterBehavior, explains_accident: bool) -> Self {
        Reading {
            label: label.to_string(),
            writer_behavior,
            explains_accident,
            chosen: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbiguitySite {
    pub kind: AmbiguityKind,
    pub clause: usize,
    pub span: Span,
    pub readings: Vec<Reading>,
    #[serde(default)]
    pub note: String,
}

impl AmbiguitySite {
    pub fn chosen(&self) -> Option<&Reading> {
        self.readings.iter().find(|r| r.chosen)
    }
}

fn writer_or_unknown(entities: &Partition, agent: Option<usize>) -> bool {
    agent.is_none_or(|a| entities.entities.get(a).is_some_and(|e| e.is_writer_party))
}

/// Lexical sites from the ambiguity table for the report language, a
/// pluperfect signalling by the writer (which moment does it refer to?),
/// and an intention to move by the writer (had the action started?).
pub fn detect_ambiguity_sites(
    report: &Report,
    clauses: &[Clause],
    events: &[Event],
    entities: &Partition,
    kb: &KnowledgeBase,
) -> Vec<AmbiguitySite> {
    let mut sites = Vec::new();
    for clause in clauses {
        for t in &clause.tokens {
            let table = kb.ambiguous_readings(report.language, &t.lemma);
            if table.len() < 2 {
                continue;
            }
            sites.push(AmbiguitySite {
                kind: AmbiguityKind::Lexical,
                clause: clause.clause_index,
                span: t.span,
                readings: table
                    .iter()
                    .map(|r| Reading::new(&r.label, r.writer_behavior, r.explains_accident))
                    .collect(),
                note: format!("`{}` has {} readings", t.surface, table.len()),
            });
        }
    }
    for e in events {
        let span = e.aspect_marker.map_or(e.span, |m| Span::cover(m, e.span));
        match e.aspect {
            Aspect::Pluperfect
                if e.predicate_class == WordClass::SignalVerb
                    && writer_or_unknown(entities, e.agent) =>
            {
                sites.push(AmbiguitySite {
                    kind: AmbiguityKind::PluperfectReference,
                    clause: e.clause,
                    span,
                    readings: vec![
                        Reading::new(
                            "accident-reference/left-blinker",
                            WriterBehavior::Correct,
                            true,
                        ),
                        Reading::new(
                            "stop-reference/right-blinker",
                            WriterBehavior::Neutral,
                            true,
                        ),
                    ],
                    note: String::new(),
                });
            }
            Aspect::Intentional
                if e.predicate_class == WordClass::MotionVerb
                    && writer_or_unknown(entities, e.agent) =>
            {
                sites.push(AmbiguitySite {
                    kind: AmbiguityKind::IntentionVsAction,
                    clause: e.clause,
                    span,
                    readings: vec![
                        Reading::new("purely-intentional", WriterBehavior::Correct, false),
                        Reading::new("action-started", WriterBehavior::AtFault, true),
                    ],
                    note: String::new(),
                });
            }
            _ => {}
        }
    }
    sites.sort_by_key(|s| (s.span.start, s.kind));
    sites
}

/// Marks exactly one reading chosen.
///
/// Stage 1: if the accident needs explaining, drop readings that do not
/// explain it, provided one does. Stage 2: prefer correct behaviour, then
/// neutral, then the first remaining reading.
pub fn resolve_ambiguity(site: &AmbiguitySite, impact: &ImpactFinding) -> AmbiguitySite {
    let mut out = site.clone();
    for r in &mut out.readings {
        r.chosen = false;
    }
    let mut survivors: Vec<usize> = (0..out.readings.len()).collect();
    let mut stage1 = false;
    if impact.status != ImpactStatus::Absent && out.readings.iter().any(|r| r.explains_accident) {
        let before = survivors.len();
        survivors.retain(|&i| out.readings[i].explains_accident);
        stage1 = survivors.len() < before;
    }
    let pick = |b: WriterBehavior| {
        survivors
            .iter()
            .copied()
            .find(|&i| out.readings[i].writer_behavior == b)
    };
    let (chosen, how) = if let Some(i) = pick(WriterBehavior::Correct) {
        (Some(i), "correct behaviour preferred")
    } else if let Some(i) = pick(WriterBehavior::Neutral) {
        (Some(i), "neutral reading preferred")
    } else {
        (survivors.first().copied(), "first remaining reading")
    };
    if let Some(i) = chosen {
        out.readings[i].chosen = true;
    }
    out.note = if stage1 {
        format!("stage 1: readings not explaining the accident discarded; stage 2: {how}")
    } else {
        format!("stage 2: {how}")
    };
    out
}
