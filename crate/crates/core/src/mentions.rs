//! Referring expressions: extraction, definiteness, grammatical role and
//! metonymic facet coercion between a vehicle, its driver and its parts.

use serde::{Deserialize, Serialize};

use crate::corpus::{Clause, Span, Token};
use crate::knowledge::{ConceptId, KnowledgeBase, Language, LexiconEntry, Selectional, WordClass};
use crate::lexeme::{ClauseLexemes, Predicate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Definiteness {
    #[serde(rename = "indefinite")]
    Indefinite,
    #[serde(rename = "definite")]
    Definite,
    #[serde(rename = "possessive")]
    Possessive,
    #[serde(rename = "pronoun-1st")]
    Pronoun1st,
    #[serde(rename = "pronoun-3rd")]
    Pronoun3rd,
    #[serde(rename = "label")]
    Label,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Facet {
    Vehicle,
    Driver,
    PassengerGroup,
    Part,
    Unresolved,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrammaticalRole {
    Subject,
    Object,
    Oblique,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VehicleLabel {
    A,
    B,
}

/// Half-open range into the report token stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TokenRange {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mention {
    pub id: usize,
    pub clause: usize,
    pub tokens: TokenRange,
    pub span: Span,
    pub text: String,
    pub head_lemma: String,
    pub definiteness: Definiteness,
    pub concept: ConceptId,
    pub facet: Facet,
    pub grammatical_role: GrammaticalRole,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<VehicleLabel>,
    /// `I`, `we`, `my X`, `our X`.
    pub first_person: bool,
    pub reflexive: bool,
    /// Vehicle concept modifying a person head (`the truck driver`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vehicle_hint: Option<ConceptId>,
}

impl Mention {
    pub fn is_part(&self, kb: &KnowledgeBase) -> bool {
        self.facet == Facet::Part || kb.hierarchy.is_part(&self.concept)
    }

    fn is_accusative(&self) -> bool {
        self.definiteness.is_pronoun()
            && matches!(
                self.head_lemma.as_str(),
                "me" | "us" | "him" | "them" | "her"
            )
    }
}

impl Definiteness {
    pub fn is_pronoun(self) -> bool {
        matches!(self, Definiteness::Pronoun1st | Definiteness::Pronoun3rd)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoercionRecord {
    pub mention: usize,
    pub from_facet: Facet,
    pub to_facet: Facet,
    pub trigger: Selectional,
    pub predicate_lemma: String,
}

const PREPOSITIONS: &[&str] = &[
    "of",
    "in",
    "on",
    "at",
    "to",
    "from",
    "with",
    "by",
    "into",
    "between",
    "through",
    "around",
    "behind",
    "for",
    "before",
    "after",
    "than",
    "about",
    "across",
    "along",
    "toward",
    "towards",
    "onto",
    "off",
    "under",
    "over",
    "near",
    "according",
];
const NP_STOP: &[&str] = &[
    "and", "but", "or", "when", "while", "as", "whence", "where", "which", "who", "whom", "that",
    "then", "not", "would", "could", "can", "will", "should", "yet", "so",
];
const FIRST_PERSON: &[&str] = &["i", "me", "we", "us", "myself", "ourselves"];
const FIRST_PERSON_POSSESSIVE: &[&str] = &["my", "our"];
const REFLEXIVE: &[&str] = &[
    "myself",
    "ourselves",
    "himself",
    "herself",
    "itself",
    "themselves",
];
const POSSESSIVE: &[&str] = &["my", "his", "her", "its", "our", "their", "your", "'s"];

/// Definiteness of the tokens of an extracted mention.
pub fn classify_definiteness(tokens: &[Token]) -> Definiteness {
    let is_label = |t: &Token| t.surface == "A" || t.surface == "B";
    let words: Vec<&Token> = tokens
        .iter()
        .filter(|t| t.is_word() || t.lemma == "'s")
        .collect();
    if words.len() == 1 && is_label(words[0]) {
        return Definiteness::Label;
    }
    if words
        .windows(2)
        .any(|w| matches!(w[0].lemma.as_str(), "vehicle" | "car") && is_label(w[1]))
    {
        return Definiteness::Label;
    }
    let Some(first) = words.first() else {
        return Definiteness::Indefinite;
    };
    let lemma = first.lemma.as_str();
    match lemma {
        "a" | "an" => Definiteness::Indefinite,
        "the" => Definiteness::Definite,
        _ if POSSESSIVE.contains(&lemma) && words.len() > 1 => Definiteness::Possessive,
        _ if words.iter().any(|t| t.lemma == "'s") => Definiteness::Possessive,
        _ if FIRST_PERSON.contains(&lemma) => Definiteness::Pronoun1st,
        "it" | "he" | "she" | "they" | "him" | "her" | "them" | "itself" | "himself"
        | "herself" | "themselves" => Definiteness::Pronoun3rd,
        _ => Definiteness::Indefinite,
    }
}

/// Facet a mention has before any coercion.
fn default_facet(definiteness: Definiteness, class: WordClass) -> Facet {
    match (definiteness, class) {
        (Definiteness::Pronoun1st, _) => Facet::Driver,
        (Definiteness::Pronoun3rd, _) => Facet::Unresolved,
        (_, WordClass::VehicleNoun) => Facet::Vehicle,
        (_, WordClass::PersonNoun) => Facet::Driver,
        (_, WordClass::PartNoun) => Facet::Part,
        _ => Facet::Unresolved,
    }
}

/// Stateful extractor: bare `A`/`B` labels are only recognised once the
/// `vehicle A|B` convention has been used in the report.
pub struct MentionExtractor<'kb> {
    kb: &'kb KnowledgeBase,
    lang: Language,
    convention_seen: bool,
    next_id: usize,
}

/// start, head, end, label, vehicle hint, forced definiteness
type Candidate = (
    usize,
    usize,
    usize,
    Option<VehicleLabel>,
    Option<ConceptId>,
    Option<Definiteness>,
);

struct NounPhrase {
    head: usize,
    end: usize,
    label: Option<VehicleLabel>,
    vehicle_hint: Option<ConceptId>,
}

impl<'kb> MentionExtractor<'kb> {
    pub fn new(kb: &'kb KnowledgeBase, lang: Language) -> Self {
        MentionExtractor {
            kb,
            lang,
            convention_seen: false,
            next_id: 0,
        }
    }

    fn entries(&self, lemma: &str) -> Vec<&'kb LexiconEntry> {
        self.kb.lexicon.get(self.lang, lemma)
    }

    fn has_class(&self, tok: &Token, class: WordClass) -> bool {
        self.entries(&tok.lemma)
            .iter()
            .any(|e| e.word_class == class)
    }

    fn noun_entry(&self, tok: &Token) -> Option<&'kb LexiconEntry> {
        self.entries(&tok.lemma).into_iter().find(|e| {
            e.word_class.is_noun() || (e.word_class == WordClass::Pronoun && e.lemma == "latter")
        })
    }

    fn is_verbish(&self, tok: &Token) -> bool {
        matches!(tok.lemma.as_str(), "be" | "have" | "do")
            || self.entries(&tok.lemma).iter().any(|e| {
                e.word_class.is_verb()
                    || matches!(
                        e.word_class,
                        WordClass::AbilityModal | WordClass::NegationMarker
                    )
            })
    }

    fn label_of(tok: &Token) -> Option<VehicleLabel> {
        match tok.surface.as_str() {
            "A" => Some(VehicleLabel::A),
            "B" => Some(VehicleLabel::B),
            _ => None,
        }
    }

    /// Noun run starting at `from`; the head is the last concept noun.
    fn noun_phrase(&self, tokens: &[Token], from: usize) -> Option<NounPhrase> {
        let mut head = None;
        let mut j = from;
        while j < tokens.len() && j - from < 6 {
            let t = &tokens[j];
            let stop = !t.is_word()
                || PREPOSITIONS.contains(&t.lemma.as_str())
                || NP_STOP.contains(&t.lemma.as_str())
                || self.is_verbish(t)
                || self.has_class(t, WordClass::Determiner)
                || (self.has_class(t, WordClass::Pronoun) && t.lemma != "latter");
            if stop && Self::label_of(t).is_none() {
                break;
            }
            if self.noun_entry(t).is_some() {
                head = Some(j);
            }
            j += 1;
        }
        let head = head?;
        let concept = self.noun_entry(&tokens[head])?.concept.clone()?;
        let mut end = head + 1;
        let mut label = None;
        if let Some(l) = tokens.get(head + 1).and_then(Self::label_of) {
            if self.kb.hierarchy.subsumes(&"vehicle".into(), &concept) {
                label = Some(l);
                end = head + 2;
            }
        }
        let vehicle_hint = if self.noun_entry(&tokens[head]).map(|e| e.word_class)
            == Some(WordClass::PersonNoun)
        {
            tokens[from..head]
                .iter()
                .filter_map(|t| self.noun_entry(t))
                .rfind(|e| e.word_class == WordClass::VehicleNoun)
                .and_then(|e| e.concept.clone())
        } else {
            None
        };
        Some(NounPhrase {
            head,
            end,
            label,
            vehicle_hint,
        })
    }

    /// `of (the)? vehicle A|B` right after a noun phrase.
    fn of_label(&self, tokens: &[Token], at: usize) -> Option<(usize, VehicleLabel)> {
        if tokens.get(at)?.lemma != "of" {
            return None;
        }
        let mut k = at + 1;
        if tokens.get(k)?.lemma == "the" {
            k += 1;
        }
        let np = self.noun_phrase(tokens, k)?;
        Some((np.end, np.label?))
    }

    pub fn extract(&mut self, clause: &Clause) -> Vec<Mention> {
        let lex = ClauseLexemes::new(clause, self.lang, self.kb);
        let tokens = &clause.tokens;
        let mut found: Vec<Candidate> = Vec::new();
        let mut i = 0;
        while i < tokens.len() {
            let t = &tokens[i];
            if t.lemma == "one" && tokens.get(i + 1).is_some_and(|n| n.lemma == "of") {
                let from = if tokens
                    .get(i + 2)
                    .is_some_and(|n| self.has_class(n, WordClass::Determiner))
                {
                    i + 3
                } else {
                    i + 2
                };
                if let Some(np) = self.noun_phrase(tokens, from) {
                    found.push((
                        i,
                        np.head,
                        np.end,
                        np.label,
                        np.vehicle_hint,
                        Some(Definiteness::Indefinite),
                    ));
                    i = np.end;
                    continue;
                }
            }
            if !t.is_word() && t.lemma != "'s" {
                i += 1;
                continue;
            }
            let determiner = self.has_class(t, WordClass::Determiner);
            let pronoun = self.has_class(t, WordClass::Pronoun) && t.lemma != "latter";
            if determiner {
                match self.noun_phrase(tokens, i + 1) {
                    Some(np) if tokens[np.head].tag != Some(crate::knowledge::FormTag::Plural) => {
                        let start = if t.lemma == "'s"
                            && i > 0
                            && tokens[i - 1]
                                .surface
                                .chars()
                                .next()
                                .is_some_and(char::is_uppercase)
                        {
                            i - 1
                        } else {
                            i
                        };
                        found.push((start, np.head, np.end, np.label, np.vehicle_hint, None));
                        i = np.end;
                        continue;
                    }
                    Some(np) => {
                        i = np.end;
                        continue;
                    }
                    None if pronoun => {}
                    None => {
                        i += 1;
                        continue;
                    }
                }
            }
            if pronoun {
                found.push((i, i, i + 1, None, None, None));
                i += 1;
                continue;
            }
            if self.noun_entry(t).is_some() {
                if let Some(np) = self.noun_phrase(tokens, i) {
                    if tokens[np.head].tag != Some(crate::knowledge::FormTag::Plural) {
                        found.push((i, np.head, np.end, np.label, np.vehicle_hint, None));
                    }
                    i = np.end;
                    continue;
                }
            }
            if let Some(label) = Self::label_of(t) {
                let next_continues = tokens
                    .get(i + 1)
                    .is_some_and(|n| n.is_word() && !self.is_verbish(n));
                if self.convention_seen && !next_continues {
                    found.push((i, i, i + 1, Some(label), None, Some(Definiteness::Label)));
                }
            }
            i += 1;
        }

        let mut mentions: Vec<Mention> = Vec::new();
        let mut consumed = 0;
        for (start, head, mut end, mut label, vehicle_hint, forced) in found {
            if start < consumed {
                continue;
            }
            let mut head_is_person_with_label = false;
            if label.is_none() {
                if let Some((e, l)) = self.of_label(tokens, end) {
                    end = e;
                    label = Some(l);
                    head_is_person_with_label = true;
                }
            }
            consumed = end;
            let slice = &tokens[start..end];
            let definiteness = if label.is_some() {
                Definiteness::Label
            } else {
                forced.unwrap_or_else(|| classify_definiteness(slice))
            };
            let head_tok = &tokens[head];
            let entry = self.noun_entry(head_tok).or_else(|| {
                self.entries(&head_tok.lemma)
                    .into_iter()
                    .find(|e| e.word_class == WordClass::Pronoun)
            });
            let class = entry
                .map(|e| e.word_class)
                .unwrap_or(WordClass::VehicleNoun);
            let mut concept = entry
                .and_then(|e| e.concept.clone())
                .unwrap_or_else(|| ConceptId::new("vehicle"));
            let mut facet = default_facet(definiteness, class);
            if label.is_some() {
                self.convention_seen = true;
                if !head_is_person_with_label && class != WordClass::PersonNoun {
                    facet = Facet::Vehicle;
                }
                concept = ConceptId::new("vehicle");
            }
            let first_lemma = slice[0].lemma.as_str();
            let first_person = definiteness == Definiteness::Pronoun1st
                || FIRST_PERSON_POSSESSIVE.contains(&first_lemma);
            let span = Span::cover(slice[0].span, slice[slice.len() - 1].span);
            mentions.push(Mention {
                id: self.next_id,
                clause: clause.clause_index,
                tokens: TokenRange {
                    start: clause.token_offset + start,
                    end: clause.token_offset + end,
                },
                span,
                text: join_surface(slice),
                head_lemma: head_tok.lemma.clone(),
                definiteness,
                concept,
                facet,
                grammatical_role: GrammaticalRole::Unknown,
                label,
                first_person,
                reflexive: REFLEXIVE.contains(&head_tok.lemma.as_str()),
                vehicle_hint,
            });
            self.next_id += 1;
        }
        assign_roles(clause, lex.predicate.as_ref(), &mut mentions);
        mentions
    }
}

fn join_surface(tokens: &[Token]) -> String {
    let mut out = String::new();
    let mut prev_end = None;
    for t in tokens {
        if prev_end.is_some_and(|e| e < t.span.start) {
            out.push(' ');
        }
        out.push_str(&t.surface);
        prev_end = Some(t.span.end);
    }
    out
}

/// Extracts the mentions of a single clause with a fresh extractor.
pub fn extract_mentions(clause: &Clause, kb: &KnowledgeBase) -> Vec<Mention> {
    MentionExtractor::new(kb, Language::En).extract(clause)
}

/// Extracts mentions from every clause of a report, in textual order.
pub fn extract_all(clauses: &[Clause], kb: &KnowledgeBase, lang: Language) -> Vec<Mention> {
    let mut ex = MentionExtractor::new(kb, lang);
    clauses.iter().flat_map(|c| ex.extract(c)).collect()
}

fn local(clause: &Clause, m: &Mention) -> (usize, usize) {
    (
        m.tokens.start - clause.token_offset,
        m.tokens.end - clause.token_offset,
    )
}

fn prep_governed(clause: &Clause, m: &Mention) -> bool {
    let (start, _) = local(clause, m);
    start > 0 && PREPOSITIONS.contains(&clause.tokens[start - 1].lemma.as_str())
}

fn is_subject_candidate(clause: &Clause, m: &Mention) -> bool {
    !m.is_accusative() && !m.reflexive && !prep_governed(clause, m)
}

/// Clause starts with a participle (`Wanting to ...`, `Not having ...`).
pub fn fronted_participial(clause: &Clause) -> bool {
    let mut words = clause.tokens.iter().filter(|t| t.is_word());
    match words.next() {
        Some(t) if t.lemma == "not" => words.next().is_some_and(Token::is_ing),
        Some(t) => t.is_ing(),
        None => false,
    }
}

/// Positional roles: the last eligible mention before the predicate is the
/// subject, the first post-verbal mention not under a locative or
/// instrumental preposition is the object, everything else is oblique.
fn assign_roles(clause: &Clause, predicate: Option<&Predicate>, mentions: &mut [Mention]) {
    let Some(p) = predicate.filter(|_| !fronted_participial(clause)) else {
        return;
    };
    let subject = mentions
        .iter()
        .filter(|m| local(clause, m).1 <= p.start && is_subject_candidate(clause, m))
        .map(|m| m.id)
        .next_back();
    let object = mentions
        .iter()
        .filter(|m| local(clause, m).0 >= p.end)
        .find(|m| {
            let (start, _) = local(clause, m);
            start == 0 || clause.tokens[start - 1].lemma == "to" || !prep_governed(clause, m)
        })
        .map(|m| m.id);
    for m in mentions.iter_mut() {
        m.grammatical_role = if Some(m.id) == subject {
            GrammaticalRole::Subject
        } else if Some(m.id) == object {
            GrammaticalRole::Object
        } else {
            GrammaticalRole::Oblique
        };
    }
}

/// The mention a marker at clause token `at` is predicated of: the last
/// subject-like mention ending before it.
pub fn holder_before<'m>(
    clause: &Clause,
    mentions: &'m [Mention],
    at: usize,
) -> Option<&'m Mention> {
    mentions
        .iter()
        .filter(|m| m.clause == clause.clause_index)
        .rfind(|m| local(clause, m).1 <= at && is_subject_candidate(clause, m))
}

/// Predicate and core arguments of a clause. A conjunct without its own
/// subject (`... and damaged the side`) shares the previous clause's
/// subject, and its object too when it has none.
#[derive(Debug, Clone)]
pub struct ClauseFrame {
    pub clause: usize,
    pub predicate: Option<Predicate>,
    pub subject: Option<usize>,
    pub object: Option<usize>,
    pub subject_inherited: bool,
    pub object_inherited: bool,
}

pub fn clause_frames(
    clauses: &[Clause],
    mentions: &[Mention],
    kb: &KnowledgeBase,
    lang: Language,
) -> Vec<ClauseFrame> {
    let mut frames: Vec<ClauseFrame> = Vec::with_capacity(clauses.len());
    for clause in clauses {
        let lex = ClauseLexemes::new(clause, lang, kb);
        let own = |role| {
            mentions
                .iter()
                .find(|m| m.clause == clause.clause_index && m.grammatical_role == role)
                .map(|m| m.id)
        };
        let mut frame = ClauseFrame {
            clause: clause.clause_index,
            predicate: lex.predicate,
            subject: own(GrammaticalRole::Subject),
            object: own(GrammaticalRole::Object),
            subject_inherited: false,
            object_inherited: false,
        };
        let conjunct = clause
            .tokens
            .first()
            .is_some_and(|t| matches!(t.lemma.as_str(), "and" | "but"));
        let pre_verbal_mention = frame.predicate.as_ref().is_some_and(|p| {
            mentions
                .iter()
                .any(|m| m.clause == clause.clause_index && local(clause, m).1 <= p.start)
        });
        if conjunct && frame.predicate.is_some() && frame.subject.is_none() && !pre_verbal_mention {
            if let Some(prev) = frames.last() {
                frame.subject = prev.subject;
                frame.subject_inherited = prev.subject.is_some();
                if frame.object.is_none() {
                    frame.object = prev.object;
                    frame.object_inherited = prev.object.is_some();
                }
            }
        }
        frames.push(frame);
    }
    frames
}

/// Facet of `mention` as an argument of `predicate` in `role`.
///
/// * a vehicle-typed subject of a predicate requiring an agent is its driver;
/// * a first-person object of a predicate requiring a physical object is the
///   writer's vehicle;
/// * a part noun stays a part;
/// * otherwise the facet follows the concept and nothing is recorded.
pub fn coerce_facet(
    mention: &Mention,
    predicate: &LexiconEntry,
    role: GrammaticalRole,
    kb: &KnowledgeBase,
) -> (Facet, Option<CoercionRecord>) {
    let record = |to: Facet, trigger: Selectional| {
        (mention.facet != to).then(|| CoercionRecord {
            mention: mention.id,
            from_facet: mention.facet,
            to_facet: to,
            trigger,
            predicate_lemma: predicate.lemma.clone(),
        })
    };
    if kb.hierarchy.is_part(&mention.concept) {
        return (Facet::Part, None);
    }
    let vehicle = ConceptId::new("vehicle");
    match (predicate.selectional, role) {
        (Some(Selectional::RequiresAgent), GrammaticalRole::Subject)
            if kb.hierarchy.subsumes(&vehicle, &mention.concept) =>
        {
            (
                Facet::Driver,
                record(Facet::Driver, Selectional::RequiresAgent),
            )
        }
        (Some(Selectional::RequiresPhysicalObject), GrammaticalRole::Object)
            if mention.definiteness == Definiteness::Pronoun1st =>
        {
            (
                Facet::Vehicle,
                record(Facet::Vehicle, Selectional::RequiresPhysicalObject),
            )
        }
        _ => (mention.facet, None),
    }
}

/// Runs facet coercion over every clause frame, updating mention facets in
/// place. An agentive predicate whose object is a door makes its vehicle
/// subject stand for the passengers.
pub fn coerce_all(
    frames: &[ClauseFrame],
    mentions: &mut [Mention],
    kb: &KnowledgeBase,
    lang: Language,
) -> Vec<CoercionRecord> {
    let mut records = Vec::new();
    for frame in frames {
        let Some(pred) = &frame.predicate else {
            continue;
        };
        let Some(entry) = pred.entry(kb, lang) else {
            continue;
        };
        if entry.selectional.is_none() {
            continue;
        }
        let door_object = frame
            .object
            .is_some_and(|o| mentions[o].concept.as_str() == "door");
        for (id, role) in [
            (frame.subject, GrammaticalRole::Subject),
            (frame.object, GrammaticalRole::Object),
        ] {
            let Some(id) = id else { continue };
            let (mut facet, mut record) = coerce_facet(&mentions[id], entry, role, kb);
            if door_object && role == GrammaticalRole::Subject && facet == Facet::Driver {
                facet = Facet::PassengerGroup;
                record = Some(CoercionRecord {
                    mention: id,
                    from_facet: mentions[id].facet,
                    to_facet: Facet::PassengerGroup,
                    trigger: Selectional::RequiresAgent,
                    predicate_lemma: entry.lemma.clone(),
                });
            }
            mentions[id].facet = facet;
            records.extend(record);
        }
    }
    records
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{segment, tokenize, Report};

    fn kb() -> KnowledgeBase {
        KnowledgeBase::seed()
    }

    fn mentions_of(body: &str) -> Vec<Mention> {
        let kb = kb();
        let clauses = segment(&Report::new("t", Language::En, body), &kb);
        extract_all(&clauses, &kb, Language::En)
    }

    fn toks(text: &str) -> Vec<Token> {
        tokenize(text, &kb().morphology)
    }

    #[test]
    fn definiteness_examples() {
        assert_eq!(
            classify_definiteness(&toks("the car")),
            Definiteness::Definite
        );
        assert_eq!(classify_definiteness(&toks("I")), Definiteness::Pronoun1st);
        assert_eq!(
            classify_definiteness(&toks("my bumper")),
            Definiteness::Possessive
        );
        assert_eq!(
            classify_definiteness(&toks("a vehicle")),
            Definiteness::Indefinite
        );
        assert_eq!(
            classify_definiteness(&toks("vehicle B")),
            Definiteness::Label
        );
        assert_eq!(classify_definiteness(&toks("it")), Definiteness::Pronoun3rd);
        assert_eq!(
            classify_definiteness(&toks("them")),
            Definiteness::Pronoun3rd
        );
        assert_eq!(
            classify_definiteness(&toks("car")),
            Definiteness::Indefinite
        );
    }

    #[test]
    fn label_subject() {
        let m = mentions_of("Vehicle A stopped");
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].definiteness, Definiteness::Label);
        assert_eq!(m[0].label, Some(VehicleLabel::A));
        assert_eq!(m[0].concept.as_str(), "vehicle");
        assert_eq!(m[0].grammatical_role, GrammaticalRole::Subject);
    }

    #[test]
    fn no_referring_expressions() {
        assert!(mentions_of("hello world").is_empty());
    }

    #[test]
    fn indefinite_vehicle_and_first_person() {
        let m = mentions_of("a vehicle arriving in front of me in the curve");
        let d: Vec<_> = m
            .iter()
            .map(|m| (m.text.as_str(), m.definiteness))
            .collect();
        assert_eq!(
            d,
            [
                ("a vehicle", Definiteness::Indefinite),
                ("me", Definiteness::Pronoun1st)
            ]
        );
    }

    #[test]
    fn possessive_part() {
        let m = mentions_of("my bumper");
        assert_eq!(m[0].definiteness, Definiteness::Possessive);
        assert_eq!(m[0].facet, Facet::Part);
        assert!(m[0].first_person);
    }

    #[test]
    fn driver_of_label_is_one_mention() {
        let m = mentions_of("The driver of vehicle B passed me on the right.");
        assert_eq!(m[0].text, "The driver of vehicle B");
        assert_eq!(m[0].label, Some(VehicleLabel::B));
        assert_eq!(m[0].facet, Facet::Driver);
        assert_eq!(m[1].grammatical_role, GrammaticalRole::Object);
    }

    #[test]
    fn compound_driver_keeps_vehicle_hint() {
        let m = mentions_of("The truck driver had indeed switched on his left blinker");
        assert_eq!(m[0].head_lemma, "driver");
        assert_eq!(
            m[0].vehicle_hint.as_ref().map(ConceptId::as_str),
            Some("truck")
        );
        assert_eq!(m[1].text, "his left blinker");
    }

    #[test]
    fn bare_plurals_are_not_mentions() {
        let m = mentions_of("cars were parked on both sides");
        assert!(m.is_empty());
        let m = mentions_of("One of the cars in front of me opened its right front door");
        assert_eq!(m[0].text, "One of the cars");
        assert_eq!(m[0].definiteness, Definiteness::Indefinite);
    }

    #[test]
    fn bare_label_after_convention() {
        let m = mentions_of("Vehicle B stopped. Then B hit me.");
        assert_eq!(
            m.iter()
                .filter(|m| m.label == Some(VehicleLabel::B))
                .count(),
            2
        );
        let m = mentions_of("A vehicle hit me.");
        assert_eq!(m[0].definiteness, Definiteness::Indefinite);
    }

    #[test]
    fn spans_do_not_overlap() {
        let m = mentions_of("Having left my car to call a mechanic, I came back to find it with the right back door bashed in");
        for w in m.windows(2) {
            assert!(w[0].tokens.end <= w[1].tokens.start);
        }
        assert!(m.iter().any(|m| m.text == "the right back door"));
    }

    fn entry(kb: &KnowledgeBase, lemma: &str) -> LexiconEntry {
        kb.lookup(lemma)
            .into_iter()
            .find(|e| e.word_class.is_verb())
            .cloned()
            .unwrap()
    }

    #[test]
    fn coerce_vehicle_subject_of_agentive_predicate() {
        let kb = kb();
        let m = &mentions_of("Vehicle B squeezed")[0];
        let (facet, rec) = coerce_facet(m, &entry(&kb, "squeeze"), GrammaticalRole::Subject, &kb);
        assert_eq!(facet, Facet::Driver);
        let rec = rec.unwrap();
        assert_eq!(rec.trigger, Selectional::RequiresAgent);
        assert_eq!(rec.from_facet, Facet::Vehicle);
    }

    #[test]
    fn coerce_first_person_object_of_damage() {
        let kb = kb();
        let m = &mentions_of("me")[0];
        let (facet, rec) = coerce_facet(m, &entry(&kb, "damage"), GrammaticalRole::Object, &kb);
        assert_eq!(facet, Facet::Vehicle);
        assert_eq!(rec.unwrap().trigger, Selectional::RequiresPhysicalObject);
    }

    #[test]
    fn no_coercion_for_driver_seeing() {
        let kb = kb();
        let m = &mentions_of("the driver")[0];
        let (facet, rec) = coerce_facet(m, &entry(&kb, "see"), GrammaticalRole::Subject, &kb);
        assert_eq!(facet, Facet::Driver);
        assert!(rec.is_none());
    }

    #[test]
    fn conjunct_shares_object_for_coercion() {
        let kb = kb();
        let body = "Vehicle B coming from my left squeezed too close to me and damaged the whole left front side.";
        let clauses = segment(&Report::new("t", Language::En, body), &kb);
        let mut mentions = extract_all(&clauses, &kb, Language::En);
        let frames = clause_frames(&clauses, &mentions, &kb, Language::En);
        assert!(frames[1].subject_inherited && frames[1].object_inherited);
        let records = coerce_all(&frames, &mut mentions, &kb, Language::En);
        let pairs: Vec<_> = records
            .iter()
            .map(|r| {
                (
                    mentions[r.mention].text.as_str(),
                    r.to_facet,
                    r.predicate_lemma.as_str(),
                )
            })
            .collect();
        assert_eq!(
            pairs,
            [
                ("Vehicle B", Facet::Driver, "squeeze"),
                ("me", Facet::Vehicle, "damage")
            ]
        );
    }

    #[test]
    fn door_opening_makes_passenger_group() {
        let kb = kb();
        let body = "One of the cars in front of me opened its right front door";
        let clauses = segment(&Report::new("t", Language::En, body), &kb);
        let mut mentions = extract_all(&clauses, &kb, Language::En);
        let frames = clause_frames(&clauses, &mentions, &kb, Language::En);
        let records = coerce_all(&frames, &mut mentions, &kb, Language::En);
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].to_facet, Facet::PassengerGroup);
        assert_eq!(mentions[0].facet, Facet::PassengerGroup);
    }

    #[test]
    fn fronted_participial_roles_unknown() {
        let m = mentions_of("Wanting to pass a hauler with its right blinker on");
        assert!(m
            .iter()
            .all(|m| m.grammatical_role == GrammaticalRole::Unknown));
    }
}
