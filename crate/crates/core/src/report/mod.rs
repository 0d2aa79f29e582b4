//! End-to-end analysis of a report, JSON rendering and corpus runs.

mod gold;

use serde::{Deserialize, Serialize};

use crate::argumentation::{
    detect_ambiguity_sites, resolve_ambiguity, summarize_strategies, tag_devices, AmbiguitySite,
    ArgDevice, StrategySummary,
};
use crate::coref::{resolve_with_cap, DiscourseEntity, DEFAULT_CAP};
use crate::corpus::{segment, Report};
use crate::error::Result;
use crate::events::{extract_events, find_impact, Event, ImpactFinding};
use crate::knowledge::{ConceptId, KnowledgeBase};
use crate::mentions::{clause_frames, coerce_all, extract_all};

pub use gold::{
    compare_gold, load_gold, run_corpus, CorpusRow, CorpusRun, ExpectedDevice, ExpectedReading,
    GoldAnnotation, GoldOutcome,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Warning {
    MissingSecondParticipant,
    EmptyBody,
    Fragment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub report_id: String,
    pub entities: Vec<DiscourseEntity>,
    pub events: Vec<Event>,
    pub impact: Option<ImpactFinding>,
    pub devices: Vec<ArgDevice>,
    pub ambiguity_sites: Vec<AmbiguitySite>,
    pub warnings: Vec<Warning>,
}

impl AnalysisReport {
    pub fn summary(&self) -> StrategySummary {
        summarize_strategies(&self.devices)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalyzeOptions {
    /// Assume the text narrates an accident even without any clue.
    pub assume_accident: bool,
    pub mention_cap: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            assume_accident: true,
            mention_cap: DEFAULT_CAP,
        }
    }
}

pub fn analyze(report: &Report, kb: &KnowledgeBase) -> Result<AnalysisReport> {
    analyze_with(report, kb, AnalyzeOptions::default())
}

pub fn analyze_with(
    report: &Report,
    kb: &KnowledgeBase,
    opts: AnalyzeOptions,
) -> Result<AnalysisReport> {
    let mut out = AnalysisReport {
        report_id: report.id.clone(),
        entities: Vec::new(),
        events: Vec::new(),
        impact: None,
        devices: Vec::new(),
        ambiguity_sites: Vec::new(),
        warnings: Vec::new(),
    };
    if report.body.trim().is_empty() {
        out.warnings.push(Warning::EmptyBody);
        return Ok(out);
    }
    let lang = report.language;
    let clauses = segment(report, kb);
    let mut mentions = extract_all(&clauses, kb, lang);
    let frames = clause_frames(&clauses, &mentions, kb, lang);
    let coercions = coerce_all(&frames, &mut mentions, kb, lang);
    let mut partition = resolve_with_cap(&mentions, kb, opts.mention_cap)?;
    partition.attach_coercions(&coercions);
    let events = extract_events(&clauses, &frames, &partition, kb, lang);
    let impact = find_impact(&events, &partition, opts.assume_accident);
    let devices = tag_devices(&clauses, &mentions, &partition, &events, kb, lang);
    let sites = detect_ambiguity_sites(report, &clauses, &events, &partition, kb)
        .iter()
        .map(|s| resolve_ambiguity(s, &impact))
        .collect();

    let participants = partition
        .entities
        .iter()
        .filter(|e| {
            e.mentions.iter().any(|m| {
                ["vehicle", "person"]
                    .iter()
                    .any(|c| kb.hierarchy.subsumes(&ConceptId::new(*c), &m.concept))
            })
        })
        .count();
    if participants < 2 {
        out.warnings.push(Warning::MissingSecondParticipant);
    }
    let body = report.body.trim();
    let starts_lower = body.chars().next().is_some_and(char::is_lowercase);
    let terminated = body.ends_with(['.', '!', '?']);
    if starts_lower || !terminated {
        out.warnings.push(Warning::Fragment);
    }

    out.entities = partition.entities;
    out.events = events;
    out.impact = Some(impact);
    out.devices = devices;
    out.ambiguity_sites = sites;
    Ok(out)
}

/// Pretty JSON with fields in declaration order.
pub fn render_json(analysis: &AnalysisReport) -> String {
    serde_json::to_string_pretty(analysis).expect("analysis is always serializable")
}

pub fn render_json_compact(analysis: &AnalysisReport) -> String {
    serde_json::to_string(analysis).expect("analysis is always serializable")
}

pub fn parse_json(text: &str) -> Result<AnalysisReport> {
    Ok(serde_json::from_str(text)?)
}

/// Short human-readable digest.
pub fn render_text(analysis: &AnalysisReport) -> String {
    use std::fmt::Write;
    let mut s = String::new();
    let _ = writeln!(s, "report {}", analysis.report_id);
    for e in &analysis.entities {
        let texts: Vec<&str> = e.mentions.iter().map(|m| m.text.as_str()).collect();
        let party = if e.is_writer_party { " (writer)" } else { "" };
        let _ = writeln!(
            s,
            "  entity {}{party} [{}]: {}",
            e.id,
            e.unit_concept.as_str(),
            texts.join(", ")
        );
    }
    if let Some(i) = &analysis.impact {
        let kinds: Vec<String> = i
            .evidence
            .iter()
            .map(|e| {
                serde_json::to_value(e.kind)
                    .unwrap()
                    .as_str()
                    .unwrap_or_default()
                    .to_string()
            })
            .collect();
        let status = serde_json::to_value(i.status).unwrap();
        let _ = writeln!(
            s,
            "  impact: {} ({})",
            status.as_str().unwrap_or_default(),
            kinds.join(", ")
        );
    }
    let sum = analysis.summary();
    let _ = writeln!(s, "  devices: {} A, {} B", sum.a_count, sum.b_count);
    for d in &analysis.devices {
        let rule = d
            .rule
            .as_deref()
            .map(|r| format!(" rule={r}"))
            .unwrap_or_default();
        let _ = writeln!(
            s,
            "    {:?} {} {}..{}{rule}: {}",
            d.strategy, d.kind, d.span.start, d.span.end, d.note
        );
    }
    for site in &analysis.ambiguity_sites {
        let chosen = site.chosen().map_or("-", |r| r.label.as_str());
        let _ = writeln!(
            s,
            "  ambiguity {:?} at {}..{}: {chosen}",
            site.kind, site.span.start, site.span.end
        );
    }
    if !analysis.warnings.is_empty() {
        let w: Vec<String> = analysis
            .warnings
            .iter()
            .map(|w| {
                serde_json::to_value(w)
                    .unwrap()
                    .as_str()
                    .unwrap_or_default()
                    .to_string()
            })
            .collect();
        let _ = writeln!(s, "  warnings: {}", w.join(", "));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knowledge::Language;

    #[test]
    fn empty_body_is_warning_only() {
        let kb = KnowledgeBase::seed();
        let a = analyze(&Report::new("E", Language::En, "  \n"), &kb).unwrap();
        assert_eq!(a.warnings, [Warning::EmptyBody]);
        assert!(a.impact.is_none() && a.entities.is_empty());
    }

    #[test]
    fn top_level_keys_in_order() {
        let kb = KnowledgeBase::seed();
        let a = analyze(&Report::new("X", Language::En, "Vehicle B hit me."), &kb).unwrap();
        let json = render_json_compact(&a);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        let expected = [
            "report_id",
            "entities",
            "events",
            "impact",
            "devices",
            "ambiguity_sites",
            "warnings",
        ];
        assert_eq!(v.as_object().unwrap().len(), expected.len());
        let positions: Vec<usize> = expected
            .iter()
            .map(|k| json.find(&format!("\"{k}\":")).unwrap())
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        assert!(json.starts_with("{\"report_id\":"));
    }

    #[test]
    fn round_trip() {
        let kb = KnowledgeBase::seed();
        let a = analyze(
            &Report::new(
                "X",
                Language::En,
                "I was driving on the right. Vehicle B hit me.",
            ),
            &kb,
        )
        .unwrap();
        let once = render_json(&a);
        let back = parse_json(&once).unwrap();
        assert_eq!(back, a);
        assert_eq!(render_json(&back), once);
    }

    #[test]
    fn single_party_fragment_warns() {
        let kb = KnowledgeBase::seed();
        let a = analyze(&Report::new("X", Language::En, "my vehicle skids"), &kb).unwrap();
        assert!(a.warnings.contains(&Warning::MissingSecondParticipant));
        assert!(a.warnings.contains(&Warning::Fragment));
    }
}
