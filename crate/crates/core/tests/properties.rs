mod common;

use claimreader::analyze;
use claimreader::argumentation::{resolve_ambiguity, DeviceKind, Strategy};
use claimreader::coref::{compatible, resolve};
use claimreader::corpus::{Report, Span};
use claimreader::events::ImpactStatus;
use claimreader::knowledge::{KnowledgeBase, Language};
use claimreader::mentions::{Definiteness, Mention};
use claimreader::report::{parse_json, render_json};
use common::{report, synthetic_mentions, ALL_TEXTS};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn mentions_from_seed(seed: u64, n: usize) -> Vec<Mention> {
    let kb = KnowledgeBase::seed();
    synthetic_mentions(&mut ChaCha8Rng::seed_from_u64(seed), &kb, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn removing_a_mention_never_raises_cost(seed in any::<u64>(), n in 1usize..12, k in any::<prop::sample::Index>()) {
        let kb = KnowledgeBase::seed();
        let full = mentions_from_seed(seed, n);
        let cost = resolve(&full, &kb).unwrap().cost;
        let mut fewer = full.clone();
        fewer.remove(k.index(n));
        prop_assert!(resolve(&fewer, &kb).unwrap().cost <= cost);
    }

    #[test]
    fn compatible_definite_mention_adds_no_entity(seed in any::<u64>(), n in 1usize..10, k in any::<prop::sample::Index>()) {
        let kb = KnowledgeBase::seed();
        let ms = mentions_from_seed(seed, n);
        let p = resolve(&ms, &kb).unwrap();
        let mut extra = ms[k.index(n)].clone();
        extra.id = n;
        extra.clause = ms.last().unwrap().clause + 1;
        extra.tokens.start += 1000;
        extra.tokens.end += 1000;
        extra.span = Span::new(extra.span.start + 5000, extra.span.end + 5000);
        if extra.definiteness == Definiteness::Indefinite {
            extra.definiteness = Definiteness::Definite;
        }
        let fits = p.entities.iter().any(|e| e.mentions.iter().all(|m| compatible(m, &extra, &kb)));
        let mut more = ms.clone();
        more.push(extra);
        let cost = resolve(&more, &kb).unwrap().cost;
        if fits {
            prop_assert_eq!(cost, p.cost);
        } else {
            prop_assert!(cost <= p.cost + 1);
        }
    }

    #[test]
    fn compatibility_is_symmetric(seed in any::<u64>()) {
        let kb = KnowledgeBase::seed();
        let ms = mentions_from_seed(seed, 6);
        for a in &ms {
            for b in &ms {
                prop_assert_eq!(compatible(a, b, &kb), compatible(b, a, &kb));
            }
        }
    }

    #[test]
    fn partition_blocks_are_pairwise_compatible(seed in any::<u64>(), n in 0usize..16) {
        let kb = KnowledgeBase::seed();
        let ms = mentions_from_seed(seed, n);
        let p = resolve(&ms, &kb).unwrap();
        prop_assert_eq!(p.assignment.len(), n);
        prop_assert_eq!(p.entities.iter().map(|e| e.mentions.len()).sum::<usize>(), n);
        for e in &p.entities {
            for a in &e.mentions {
                for b in &e.mentions {
                    prop_assert!(a.id == b.id || compatible(a, b, &kb));
                }
            }
        }
    }

    #[test]
    fn arbitrary_text_analyzes_and_round_trips(words in prop::collection::vec(prop::sample::select(vec![
        "I", "me", "my", "vehicle", "B", "A", "car", "the", "a", "hit", "was", "wasn't", "able", "to",
        "avoid", "stop", "couldn't", "suddenly", "surprised", "with", "great", "speed", "had",
        "switched", "blinker", "wanting", "pass", "on", "right", ",", ".", "and", "driver", "of",
        "it", "door", "opened", "skids", "denies", "right-of-way", "thrown", "off", "course", "é",
    ]), 0..40)) {
        let kb = KnowledgeBase::seed();
        let body = words.join(" ");
        let r = Report::new("P", Language::En, body.clone());
        let a = analyze(&r, &kb).unwrap();
        let json = render_json(&a);
        prop_assert_eq!(&parse_json(&json).unwrap(), &a);
        prop_assert_eq!(render_json(&analyze(&r, &kb).unwrap()), json);
        let len = body.chars().count();
        for d in &a.devices {
            prop_assert!(d.span.start < d.span.end && d.span.end <= len);
            if let Some(s) = d.kind.strategy() {
                prop_assert_eq!(s, d.strategy);
            }
        }
        for s in &a.ambiguity_sites {
            prop_assert_eq!(s.readings.iter().filter(|r| r.chosen).count(), 1);
        }
        if !body.trim().is_empty() {
            prop_assert!(a.impact.is_some());
        }
    }
}

#[test]
fn third_definite_mention_attaches_in_t8() {
    let kb = KnowledgeBase::seed();
    let mut r = report("T8");
    r.body.push_str(" Then the vehicle stopped.");
    let a = analyze(&r, &kb).unwrap();
    assert_eq!(a.entities.len(), 2);
    assert!(a
        .entities
        .iter()
        .any(|e| e.mentions.iter().any(|m| m.text == "the vehicle")));
}

#[test]
fn negating_the_collision_moves_impact_to_inferred() {
    let kb = KnowledgeBase::seed();
    let r = report("T10");
    assert_eq!(
        analyze(&r, &kb).unwrap().impact.unwrap().status,
        ImpactStatus::Explicit
    );
    let negated = Report::new(
        "T10n",
        Language::En,
        r.body.replace("struck us", "didn't strike us"),
    );
    assert_eq!(
        analyze(&negated, &kb).unwrap().impact.unwrap().status,
        ImpactStatus::Inferred
    );
}

#[test]
fn neutral_driving_clause_has_no_device() {
    let kb = KnowledgeBase::seed();
    let a = analyze(&Report::new("N", Language::En, "I was driving."), &kb).unwrap();
    assert!(a.devices.is_empty());
}

#[test]
fn clauses_without_ambiguity_have_no_sites() {
    let kb = KnowledgeBase::seed();
    for id in ["T8", "T15", "T11"] {
        assert!(
            analyze(&report(id), &kb)
                .unwrap()
                .ambiguity_sites
                .is_empty(),
            "{id}"
        );
    }
}

#[test]
fn device_spans_cover_their_trigger_lexeme() {
    let kb = KnowledgeBase::seed();
    for id in ALL_TEXTS {
        let r = report(id);
        let a = analyze(&r, &kb).unwrap();
        for d in &a.devices {
            let text = common::text_of(&r, d.span).to_lowercase();
            let ok = match d.kind {
                DeviceKind::ExcessiveSpeed => text.contains("speed"),
                DeviceKind::NegAbilityContrast => text.contains("n't") || text.contains("not"),
                DeviceKind::SurpriseLexeme => text.contains("surprise") || text.contains("expect"),
                DeviceKind::UnexpectednessAdverb | DeviceKind::Suddenness => {
                    text.ends_with("ly") || text == "yet"
                }
                _ => !text.trim().is_empty(),
            };
            assert!(ok, "{id}: {} at `{text}`", d.kind);
            assert_eq!(
                d.strategy == Strategy::A,
                d.kind.strategy() == Some(Strategy::A)
            );
        }
    }
}

#[test]
fn writer_favourable_rule_is_deterministic_and_lexical_site_resolves() {
    let kb = KnowledgeBase::seed();
    let r = claimreader::corpus::load_report(common::data("samples").join("T8.fr.txt")).unwrap();
    assert_eq!(r.language, Language::Fr);
    let a = analyze(&r, &kb).unwrap();
    assert!(!a.ambiguity_sites.is_empty());
    let impact = a.impact.clone().unwrap();
    for site in &a.ambiguity_sites {
        assert_eq!(site.chosen().unwrap().label, "right");
        assert_eq!(
            resolve_ambiguity(site, &impact),
            resolve_ambiguity(site, &impact)
        );
    }
}
