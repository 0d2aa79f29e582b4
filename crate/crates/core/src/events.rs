//! Clause events with polarity, modality and aspect, and the impact that
//! every accident report is taken to narrate.

use serde::{Deserialize, Serialize};

use crate::coref::Partition;
use crate::corpus::{Clause, Span};
use crate::knowledge::{KnowledgeBase, Language, WordClass};
use crate::lexeme::{match_lexemes, ClauseLexemes};
use crate::mentions::ClauseFrame;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Polarity {
    Positive,
    Negated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Modality {
    None,
    Ability,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Aspect {
    Simple,
    Pluperfect,
    Progressive,
    Intentional,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Event {
    pub clause: usize,
    /// Character span of the predicate lexeme.
    pub span: Span,
    pub predicate_lemma: String,
    pub predicate_class: WordClass,
    pub polarity: Polarity,
    pub modality: Modality,
    pub aspect: Aspect,
    /// Auxiliary or governing verb behind the aspect (`had`, `wanting`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aspect_marker: Option<Span>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agent: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub patient: Option<usize>,
}

impl Event {
    pub fn is_collision(&self) -> bool {
        matches!(
            self.predicate_class,
            WordClass::CollisionVerb | WordClass::ImpactNoun
        )
    }
}

/// One event per clause with a known predicate. Negation counts only
/// between clause start and the predicate; the ability modal likewise.
pub fn extract_events(
    clauses: &[Clause],
    frames: &[ClauseFrame],
    entities: &Partition,
    kb: &KnowledgeBase,
    lang: Language,
) -> Vec<Event> {
    let entity_of = |m: Option<usize>| m.and_then(|id| entities.entity_of(id)).map(|e| e.id);
    clauses
        .iter()
        .zip(frames)
        .filter_map(|(clause, frame)| {
            let p = frame.predicate.as_ref()?;
            let lex = ClauseLexemes::new(clause, lang, kb);
            let tokens = &clause.tokens;
            let polarity = if lex.has_before(WordClass::NegationMarker, p.start) {
                Polarity::Negated
            } else {
                Polarity::Positive
            };
            let modality = if lex.has_before(WordClass::AbilityModal, p.start) {
                Modality::Ability
            } else {
                Modality::None
            };
            let head = &tokens[p.start];
            let before = &tokens[..p.start];
            let (aspect, marker) = if let Some((s, e)) = p.intention {
                (
                    Aspect::Intentional,
                    Some(Span::cover(tokens[s].span, tokens[e - 1].span)),
                )
            } else if let Some(had) = before
                .iter()
                .rev()
                .find(|t| t.lemma == "have" && t.surface.eq_ignore_ascii_case("had"))
                .filter(|_| head.is_participle())
            {
                (Aspect::Pluperfect, Some(had.span))
            } else if let Some(be) = before
                .iter()
                .rev()
                .find(|t| t.lemma == "be")
                .filter(|_| head.is_ing())
            {
                (Aspect::Progressive, Some(be.span))
            } else {
                (Aspect::Simple, None)
            };
            Some(Event {
                clause: clause.clause_index,
                span: Span::cover(head.span, tokens[p.end - 1].span),
                predicate_lemma: p.lemma.clone(),
                predicate_class: p.class,
                polarity,
                modality,
                aspect,
                aspect_marker: marker,
                agent: entity_of(frame.subject),
                patient: entity_of(frame.object),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ImpactStatus {
    Explicit,
    Inferred,
    Absent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvidenceKind {
    CollisionLexeme,
    NegAbilityAvoidance,
    NegAbilityStop,
    ParameterCDefault,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImpactEvidence {
    pub kind: EvidenceKind,
    /// Absent for the default assumption, which rests on no clause.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clause: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span: Option<Span>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImpactFinding {
    pub status: ImpactStatus,
    pub evidence: Vec<ImpactEvidence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub participants: Option<(usize, usize)>,
}

/// The first positive collision verb or impact noun, if any.
pub fn detect_explicit_impact(events: &[Event]) -> Option<ImpactFinding> {
    let e = events
        .iter()
        .find(|e| e.is_collision() && e.polarity == Polarity::Positive)?;
    let participants = match (e.agent, e.patient) {
        (Some(a), Some(p)) if a != p => Some((a, p)),
        _ => None,
    };
    Some(ImpactFinding {
        status: ImpactStatus::Explicit,
        evidence: vec![ImpactEvidence {
            kind: EvidenceKind::CollisionLexeme,
            clause: Some(e.clause),
            span: Some(e.span),
        }],
        participants,
    })
}

/// Neg-ability clue carried by an event: `could not avoid`, `wasn't able
/// to stop`.
pub fn neg_ability_clue(e: &Event) -> Option<EvidenceKind> {
    if e.polarity != Polarity::Negated || e.modality != Modality::Ability {
        return None;
    }
    match e.predicate_class {
        WordClass::AvoidanceVerb => Some(EvidenceKind::NegAbilityAvoidance),
        WordClass::StopVerb => Some(EvidenceKind::NegAbilityStop),
        _ => None,
    }
}

/// The writer's party and the other entity with most mentions.
fn principal_pair(entities: &Partition) -> Option<(usize, usize)> {
    let writer = entities.writer()?;
    let other = entities
        .entities
        .iter()
        .filter(|e| !e.is_writer_party)
        .max_by_key(|e| (e.mentions.len(), std::cmp::Reverse(e.id)))?;
    Some((writer.id, other.id))
}

/// Reconstructs an impact the text does not state: from neg-ability clues,
/// or else from the assumption that every report narrates an accident.
pub fn infer_impact(events: &[Event], entities: &Partition) -> ImpactFinding {
    let mut evidence: Vec<ImpactEvidence> = events
        .iter()
        .filter_map(|e| {
            neg_ability_clue(e).map(|kind| ImpactEvidence {
                kind,
                clause: Some(e.clause),
                span: Some(e.span),
            })
        })
        .collect();
    if evidence.is_empty() {
        evidence.push(ImpactEvidence {
            kind: EvidenceKind::ParameterCDefault,
            clause: None,
            span: None,
        });
    }
    ImpactFinding {
        status: ImpactStatus::Inferred,
        evidence,
        participants: principal_pair(entities),
    }
}

/// Explicit impact if stated, otherwise inferred. With `assume_accident`
/// off, a text without explicit impact or clue reports the impact absent.
pub fn find_impact(events: &[Event], entities: &Partition, assume_accident: bool) -> ImpactFinding {
    if let Some(found) = detect_explicit_impact(events) {
        return found;
    }
    let inferred = infer_impact(events, entities);
    let defaulted = inferred
        .evidence
        .iter()
        .all(|e| e.kind == EvidenceKind::ParameterCDefault);
    if defaulted && !assume_accident {
        return ImpactFinding {
            status: ImpactStatus::Absent,
            evidence: Vec::new(),
            participants: None,
        };
    }
    inferred
}

/// A neg-ability evidence is well formed when its clause really holds a
/// negation marker, an ability modal and a verb of the claimed class.
pub fn evidence_well_formed(
    ev: &ImpactEvidence,
    clauses: &[Clause],
    kb: &KnowledgeBase,
    lang: Language,
) -> bool {
    let class = match ev.kind {
        EvidenceKind::NegAbilityAvoidance => WordClass::AvoidanceVerb,
        EvidenceKind::NegAbilityStop => WordClass::StopVerb,
        EvidenceKind::CollisionLexeme | EvidenceKind::ParameterCDefault => return true,
    };
    let Some(clause) = ev
        .clause
        .and_then(|c| clauses.iter().find(|cl| cl.clause_index == c))
    else {
        return false;
    };
    let m = match_lexemes(&clause.tokens, lang, kb);
    [WordClass::NegationMarker, WordClass::AbilityModal, class]
        .iter()
        .all(|&c| m.iter().any(|x| x.has(c)))
}
