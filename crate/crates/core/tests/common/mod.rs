//! Shared fixtures for integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use claimreader::corpus::{load_report, Report, Span};
use claimreader::knowledge::{ConceptId, KnowledgeBase};
use claimreader::mentions::{
    Definiteness, Facet, GrammaticalRole, Mention, TokenRange, VehicleLabel,
};
use rand::seq::SliceRandom;
use rand::Rng;

pub const FULL_TEXTS: [&str; 7] = ["T2", "T5", "T7", "T8", "T12", "T14", "T15"];
pub const ALL_TEXTS: [&str; 13] = [
    "T1", "T2", "T3", "T4", "T5", "T7", "T8", "T9", "T10", "T11", "T12", "T14", "T15",
];

pub fn data(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(sub)
}

pub fn report(id: &str) -> Report {
    load_report(data("corpus").join(format!("{id}.en.txt"))).unwrap()
}

pub fn text_of(r: &Report, span: Span) -> String {
    r.body
        .chars()
        .skip(span.start)
        .take(span.end - span.start)
        .collect()
}

const DETS: [Definiteness; 6] = [
    Definiteness::Indefinite,
    Definiteness::Definite,
    Definiteness::Possessive,
    Definiteness::Pronoun1st,
    Definiteness::Pronoun3rd,
    Definiteness::Label,
];

/// Random mention list in textual order, ids equal to positions.
pub fn synthetic_mentions(rng: &mut impl Rng, kb: &KnowledgeBase, n: usize) -> Vec<Mention> {
    let concepts: Vec<ConceptId> = kb.hierarchy.concepts().cloned().collect();
    let vehicles = ["vehicle", "car", "truck", "motorcycle", "hauler"];
    let roles = [
        GrammaticalRole::Subject,
        GrammaticalRole::Object,
        GrammaticalRole::Oblique,
        GrammaticalRole::Unknown,
    ];
    let mut clause = 0;
    (0..n)
        .map(|i| {
            clause += usize::from(rng.gen_bool(0.5));
            let det = *DETS.choose(rng).unwrap();
            let concept = match det {
                Definiteness::Pronoun1st => ConceptId::new("person"),
                Definiteness::Label => ConceptId::new("vehicle"),
                _ => concepts.choose(rng).unwrap().clone(),
            };
            let label = (det == Definiteness::Label).then(|| {
                if rng.gen_bool(0.5) {
                    VehicleLabel::A
                } else {
                    VehicleLabel::B
                }
            });
            let first_person = det == Definiteness::Pronoun1st
                || (det == Definiteness::Possessive && rng.gen_bool(0.5));
            Mention {
                id: i,
                clause,
                tokens: TokenRange {
                    start: i * 4,
                    end: i * 4 + 2,
                },
                span: Span::new(i * 20, i * 20 + 8),
                text: format!("m{i}"),
                head_lemma: concept.as_str().to_string(),
                definiteness: det,
                concept,
                facet: *[
                    Facet::Vehicle,
                    Facet::Driver,
                    Facet::Part,
                    Facet::Unresolved,
                ]
                .choose(rng)
                .unwrap(),
                grammatical_role: *roles.choose(rng).unwrap(),
                label,
                first_person,
                reflexive: rng.gen_bool(0.1),
                vehicle_hint: rng
                    .gen_bool(0.1)
                    .then(|| ConceptId::new(*vehicles.choose(rng).unwrap())),
            }
        })
        .collect()
}
