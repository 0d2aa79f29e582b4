//! The writer's argumentation: devices that shift blame onto the other
//! party (strategy A) or onto circumstances (strategy B), and resolution of
//! readings the text leaves open.

mod ambiguity;
mod devices;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corpus::Span;

pub use ambiguity::{
    detect_ambiguity_sites, resolve_ambiguity, AmbiguityKind, AmbiguitySite, Reading,
};
pub use devices::tag_devices;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Strategy {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeviceKind {
    ImplicitRuleViolation,
    ExplicitBlameLexeme,
    ExcessiveSpeed,
    SurpriseLexeme,
    Suddenness,
    NegAbilityContrast,
    AgentSuppression,
    UnexpectednessAdverb,
    CorrectBehaviorAssertion,
}

impl DeviceKind {
    pub const ALL: [DeviceKind; 9] = [
        DeviceKind::ImplicitRuleViolation,
        DeviceKind::ExplicitBlameLexeme,
        DeviceKind::ExcessiveSpeed,
        DeviceKind::SurpriseLexeme,
        DeviceKind::Suddenness,
        DeviceKind::NegAbilityContrast,
        DeviceKind::AgentSuppression,
        DeviceKind::UnexpectednessAdverb,
        DeviceKind::CorrectBehaviorAssertion,
    ];

    /// Strategy implied by the kind. Correct-behaviour assertions have none
    /// of their own and default to B in context.
    pub fn strategy(self) -> Option<Strategy> {
        use DeviceKind::*;
        match self {
            ImplicitRuleViolation | ExplicitBlameLexeme | ExcessiveSpeed => Some(Strategy::A),
            SurpriseLexeme | Suddenness | NegAbilityContrast | AgentSuppression
            | UnexpectednessAdverb => Some(Strategy::B),
            CorrectBehaviorAssertion => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        use DeviceKind::*;
        match self {
            ImplicitRuleViolation => "implicit-rule-violation",
            ExplicitBlameLexeme => "explicit-blame-lexeme",
            ExcessiveSpeed => "excessive-speed",
            SurpriseLexeme => "surprise-lexeme",
            Suddenness => "suddenness",
            NegAbilityContrast => "neg-ability-contrast",
            AgentSuppression => "agent-suppression",
            UnexpectednessAdverb => "unexpectedness-adverb",
            CorrectBehaviorAssertion => "correct-behavior-assertion",
        }
    }
}

impl std::fmt::Display for DeviceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArgDevice {
    pub strategy: Strategy,
    pub kind: DeviceKind,
    pub clause: usize,
    /// Character span of the triggering tokens.
    pub span: Span,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
    pub note: String,
    pub self_exculpatory: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategySummary {
    pub a_count: usize,
    pub b_count: usize,
    pub by_kind: BTreeMap<DeviceKind, usize>,
    /// Devices in span order.
    pub spans: Vec<(DeviceKind, Span)>,
}

pub fn summarize_strategies(devices: &[ArgDevice]) -> StrategySummary {
    let mut s = StrategySummary::default();
    for d in devices {
        match d.strategy {
            Strategy::A => s.a_count += 1,
            Strategy::B => s.b_count += 1,
        }
        *s.by_kind.entry(d.kind).or_default() += 1;
        s.spans.push((d.kind, d.span));
    }
    s.spans.sort_by_key(|(k, sp)| (sp.start, sp.end, *k));
    s
}
