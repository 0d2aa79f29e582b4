//! Pattern rules for argumentative devices.

use super::{ArgDevice, DeviceKind, Strategy};
use crate::coref::Partition;
use crate::corpus::{Clause, Span};
use crate::events::{Event, Modality, Polarity};
use crate::knowledge::{KnowledgeBase, Language, WordClass};
use crate::lexeme::{contains_lemmas, ClauseLexemes};
use crate::mentions::{holder_before, Facet, Mention, VehicleLabel};

/// Who the holder of a marker is, as far as blame goes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Party {
    None,
    Writer,
    Other,
}

struct Ctx<'a> {
    clause: &'a Clause,
    lex: ClauseLexemes<'a>,
    mentions: &'a [Mention],
    entities: &'a Partition,
    kb: &'a KnowledgeBase,
    out: &'a mut Vec<ArgDevice>,
}

impl Ctx<'_> {
    fn span(&self, start: usize, end: usize) -> Span {
        let t = &self.clause.tokens;
        Span::cover(t[start].span, t[end - 1].span)
    }

    fn party_before(&self, at: usize) -> Party {
        let Some(m) = holder_before(self.clause, self.mentions, at) else {
            return Party::None;
        };
        let writer = m.first_person
            || m.label == Some(VehicleLabel::A)
            || self
                .entities
                .entity_of(m.id)
                .is_some_and(|e| e.is_writer_party);
        if writer {
            Party::Writer
        } else {
            Party::Other
        }
    }

    fn emit(
        &mut self,
        kind: DeviceKind,
        (start, end): (usize, usize),
        rule: Option<&str>,
        note: impl Into<String>,
    ) {
        let span = self.span(start, end);
        if self.out.iter().any(|d| d.kind == kind && d.span == span) {
            return;
        }
        let rule = rule
            .filter(|r| self.kb.rule(r).is_some())
            .map(str::to_string);
        self.out.push(ArgDevice {
            strategy: kind.strategy().unwrap_or(Strategy::B),
            kind,
            clause: self.clause.clause_index,
            span,
            rule,
            note: note.into(),
            self_exculpatory: kind == DeviceKind::CorrectBehaviorAssertion,
        });
    }

    fn rule_for(&self, pattern: &str) -> Option<String> {
        self.kb.rule_for_pattern(pattern).map(|r| r.id.clone())
    }
}

/// Tags strategy A and B devices clause by clause, in textual order.
pub fn tag_devices(
    clauses: &[Clause],
    mentions: &[Mention],
    entities: &Partition,
    events: &[Event],
    kb: &KnowledgeBase,
    lang: Language,
) -> Vec<ArgDevice> {
    let mentions_marking = clauses
        .iter()
        .flat_map(|c| &c.tokens)
        .any(|t| t.lemma.starts_with("marking"));
    let mut out = Vec::new();
    for clause in clauses {
        let mut cx = Ctx {
            clause,
            lex: ClauseLexemes::new(clause, lang, kb),
            mentions,
            entities,
            kb,
            out: &mut out,
        };
        let event = events.iter().find(|e| e.clause == clause.clause_index);
        blame_lexemes(&mut cx, mentions_marking);
        excessive_speed(&mut cx);
        rule_violations(&mut cx, mentions_marking);
        surprise_and_suddenness(&mut cx);
        if let Some(e) = event {
            neg_ability(&mut cx, e);
        }
        agent_suppression(&mut cx);
        conformity(&mut cx);
    }
    out.sort_by_key(|d| (d.span.start, d.span.end, d.kind));
    out
}

/// Words that name the other party's fault outright.
fn blame_lexemes(cx: &mut Ctx<'_>, mentions_marking: bool) {
    let hits: Vec<(usize, usize, String)> = cx
        .lex
        .with_class(WordClass::BlameLexeme)
        .map(|m| (m.start, m.end, m.lemma.clone()))
        .collect();
    for (start, end, lemma) in hits {
        let rule = match lemma.as_str() {
            "deny" if contains_lemmas(&cx.clause.tokens, "right-of-way").is_some() => {
                Some("priority-to-right")
            }
            "blind" => Some("headlights-dipped"),
            "cut back" if mentions_marking => Some("obey-lane-markings"),
            _ => None,
        };
        cx.emit(
            DeviceKind::ExplicitBlameLexeme,
            (start, end),
            rule,
            format!("blame lexeme `{lemma}`"),
        );
    }
}

/// Speed intensifiers predicated of the other party.
fn excessive_speed(cx: &mut Ctx<'_>) {
    let hits: Vec<(usize, usize)> = cx
        .lex
        .with_class(WordClass::SpeedIntensifier)
        .map(|m| (m.start, m.end))
        .collect();
    for (start, end) in hits {
        if cx.party_before(start) == Party::Other {
            let rule = cx.rule_for("great-speed");
            cx.emit(
                DeviceKind::ExcessiveSpeed,
                (start, end),
                rule.as_deref(),
                "speed of the other party",
            );
        }
    }
}

/// Descriptions of manoeuvres that break a rule without saying so.
fn rule_violations(cx: &mut Ctx<'_>, mentions_marking: bool) {
    let tokens = &cx.clause.tokens;
    if let Some(p) = cx.lex.predicate.clone() {
        if p.lemma == "pass" {
            if let Some((s, e)) = contains_lemmas(&tokens[p.end..], "on the right") {
                if cx.party_before(p.start) != Party::Writer {
                    let rule = cx.rule_for("pass-on-right");
                    cx.emit(
                        DeviceKind::ImplicitRuleViolation,
                        (p.end + s, p.end + e),
                        rule.as_deref(),
                        "passing on the right",
                    );
                }
            }
        }
    }
    if mentions_marking {
        let cut: Vec<(usize, usize)> = cx
            .lex
            .matches
            .iter()
            .filter(|m| m.lemma == "cut back")
            .map(|m| (m.start, m.end))
            .collect();
        for (s, e) in cut {
            if cx.party_before(s) != Party::Writer {
                let rule = cx.rule_for("cut-back-across-markings");
                cx.emit(
                    DeviceKind::ImplicitRuleViolation,
                    (s, e),
                    rule.as_deref(),
                    "cutting across lane markings",
                );
            }
        }
    }
    if let Some((s, e)) = contains_lemmas(tokens, "come out of") {
        if tokens.iter().any(|t| t.lemma == "private") && cx.party_before(s) != Party::Writer {
            let rule = cx.rule_for("exit-private-property");
            cx.emit(
                DeviceKind::ImplicitRuleViolation,
                (s, e),
                rule.as_deref(),
                "leaving private property",
            );
        }
    }
}

fn surprise_and_suddenness(cx: &mut Ctx<'_>) {
    let hits: Vec<(usize, usize, String, bool)> = cx
        .lex
        .matches
        .iter()
        .filter(|m| m.has(WordClass::SurpriseLexeme) || m.has(WordClass::SuddennessAdverb))
        .map(|m| {
            (
                m.start,
                m.end,
                m.lemma.clone(),
                m.has(WordClass::SurpriseLexeme),
            )
        })
        .collect();
    for (s, e, lemma, surprise) in hits {
        if lemma == "yet" {
            cx.emit(
                DeviceKind::UnexpectednessAdverb,
                (s, e),
                None,
                "adverb of unexpectedness",
            );
            continue;
        }
        if cx.party_before(s) == Party::Other {
            continue;
        }
        if surprise {
            cx.emit(
                DeviceKind::SurpriseLexeme,
                (s, e),
                None,
                format!("surprise lexeme `{lemma}`"),
            );
        } else {
            cx.emit(
                DeviceKind::Suddenness,
                (s, e),
                None,
                format!("suddenness adverb `{lemma}`"),
            );
        }
    }
}

/// `could not`, `wasn't able to`: what should have happened did not.
fn neg_ability(cx: &mut Ctx<'_>, event: &Event) {
    if event.polarity != Polarity::Negated || event.modality != Modality::Ability {
        return;
    }
    let Some(p) = &cx.lex.predicate else { return };
    let markers: Vec<(usize, usize)> = cx
        .lex
        .matches
        .iter()
        .filter(|m| m.end <= p.start)
        .filter(|m| m.has(WordClass::NegationMarker) || m.has(WordClass::AbilityModal))
        .map(|m| (m.start, m.end))
        .collect();
    let (Some(first), Some(last)) = (markers.first(), markers.last()) else {
        return;
    };
    // a contracted host (`was` + `n't`) belongs to the marker
    let tokens = &cx.clause.tokens;
    let start = if first.0 > 0 && tokens[first.0 - 1].span.end == tokens[first.0].span.start {
        first.0 - 1
    } else {
        first.0
    };
    cx.emit(
        DeviceKind::NegAbilityContrast,
        (start, last.1),
        None,
        format!("negated ability to {}", event.predicate_lemma),
    );
}

fn is_adverb(lemma: &str) -> bool {
    lemma.len() > 3 && lemma.ends_with("ly")
}

/// Passive voice on a motion or collision verb, or a reflexive motion verb
/// whose subject is the writer's vehicle.
fn agent_suppression(cx: &mut Ctx<'_>) {
    let tokens = &cx.clause.tokens;
    let mut found = Vec::new();
    for (i, t) in tokens.iter().enumerate() {
        if t.lemma != "be" {
            continue;
        }
        let mut j = i + 1;
        while tokens.get(j).is_some_and(|t| is_adverb(&t.lemma)) {
            j += 1;
        }
        let Some(part) = tokens.get(j).filter(|t| t.is_participle()) else {
            continue;
        };
        let Some(m) = cx.lex.matches.iter().find(|m| m.start == j) else {
            continue;
        };
        let motion = m.has(WordClass::MotionVerb)
            || m.has(WordClass::ReflexiveMotionVerb)
            || m.has(WordClass::CollisionVerb);
        if motion {
            found.push(((i, m.end), format!("passive `{}`", part.surface)));
        }
    }
    if let Some(p) = cx
        .lex
        .predicate
        .as_ref()
        .filter(|p| p.class == WordClass::ReflexiveMotionVerb)
    {
        let subject = cx
            .mentions
            .iter()
            .filter(|m| m.clause == cx.clause.clause_index)
            .find(|m| m.grammatical_role == crate::mentions::GrammaticalRole::Subject);
        if let Some(m) = subject {
            let writer = cx
                .entities
                .entity_of(m.id)
                .is_some_and(|e| e.is_writer_party);
            let passive_here = found
                .iter()
                .any(|((s, e), _)| *s <= p.start && p.start < *e);
            if writer && m.facet == Facet::Vehicle && !passive_here {
                found.push((
                    (p.start, p.end),
                    format!("`{}` with the vehicle as subject", p.lemma),
                ));
            }
        }
    }
    for (range, note) in found {
        cx.emit(DeviceKind::AgentSuppression, range, None, note);
    }
}

/// Assertions of conformity the background knowledge already guarantees.
fn conformity(cx: &mut Ctx<'_>) {
    let tokens = &cx.clause.tokens;
    let Some(p) = cx.lex.predicate.clone() else {
        if let Some(r) = contains_lemmas(tokens, "moderate speed") {
            cx.emit(
                DeviceKind::CorrectBehaviorAssertion,
                r,
                Some("speed-limit"),
                "moderate speed",
            );
        }
        return;
    };
    if cx.party_before(p.start) == Party::Other {
        return;
    }
    if p.lemma == "drive" {
        for pat in ["on the right", "in the right lane", "right hand side"] {
            if let Some((_, e)) = contains_lemmas(&tokens[p.end..], pat) {
                cx.emit(
                    DeviceKind::CorrectBehaviorAssertion,
                    (p.start, p.end + e),
                    Some("drive-on-right"),
                    "driving on the right",
                );
                break;
            }
        }
    }
    if let Some(r) = contains_lemmas(tokens, "moderate speed") {
        cx.emit(
            DeviceKind::CorrectBehaviorAssertion,
            r,
            Some("speed-limit"),
            "moderate speed",
        );
    }
    if p.class == WordClass::SignalVerb && tokens.iter().any(|t| t.lemma == "blinker") {
        cx.emit(
            DeviceKind::CorrectBehaviorAssertion,
            (p.start, p.end),
            None,
            "blinker on",
        );
    }
    if p.class == WordClass::StopVerb {
        if let Some(i) = tokens.iter().position(|t| t.lemma == "immediately") {
            cx.emit(
                DeviceKind::CorrectBehaviorAssertion,
                (i.min(p.start), (i + 1).max(p.end)),
                None,
                "immediate braking",
            );
        }
    }
}
