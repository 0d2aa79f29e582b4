//! Background knowledge: the concept taxonomy, the traffic-rule registry and
//! the language-convention lexicon, plus the fixed morphology tables.
//!
//! Everything is loaded from line-oriented TSV files. A bundled copy of the
//! seed files is compiled in and available through [`KnowledgeBase::seed`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Name of the taxonomy root every concept must reach.
pub const ROOT_CONCEPT: &str = "entity";

const SEED_HIERARCHY: &str = include_str!("../data/kb/hierarchy.tsv");
const SEED_RULES: &str = include_str!("../data/kb/rules.tsv");
const SEED_LEXICON: &str = include_str!("../data/kb/lexicon.tsv");
const SEED_IRREGULAR: &str = include_str!("../data/kb/irregular.tsv");
const SEED_CONTRACTIONS: &str = include_str!("../data/kb/contractions.tsv");
const SEED_AMBIGUOUS: &str = include_str!("../data/kb/ambiguous.tsv");

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConceptId(String);

impl ConceptId {
    pub fn new(name: impl Into<String>) -> Self {
        ConceptId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn root() -> Self {
        ConceptId::new(ROOT_CONCEPT)
    }
}

impl fmt::Display for ConceptId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ConceptId {
    fn from(s: &str) -> Self {
        ConceptId::new(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Language {
    En,
    Fr,
}

impl Language {
    pub fn as_str(self) -> &'static str {
        match self {
            Language::En => "en",
            Language::Fr => "fr",
        }
    }
}

impl FromStr for Language {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "en" => Ok(Language::En),
            "fr" => Ok(Language::Fr),
            other => Err(format!("unknown language tag `{other}`")),
        }
    }
}

/// Subtype and part-of links with a precomputed reflexive-transitive closure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeHierarchy {
    edges: BTreeSet<(ConceptId, ConceptId)>,
    partof: BTreeSet<(ConceptId, ConceptId)>,
    #[serde(skip)]
    ancestors: BTreeMap<ConceptId, BTreeSet<ConceptId>>,
}

impl TypeHierarchy {
    pub fn new(
        edges: impl IntoIterator<Item = (ConceptId, ConceptId)>,
        partof: impl IntoIterator<Item = (ConceptId, ConceptId)>,
    ) -> Result<Self> {
        let edges: BTreeSet<_> = edges.into_iter().collect();
        let partof: BTreeSet<_> = partof.into_iter().collect();

        let mut parents: BTreeMap<ConceptId, BTreeSet<ConceptId>> = BTreeMap::new();
        parents.entry(ConceptId::root()).or_default();
        for (child, parent) in &edges {
            parents
                .entry(child.clone())
                .or_default()
                .insert(parent.clone());
            parents.entry(parent.clone()).or_default();
        }
        for (part, whole) in &partof {
            for c in [part, whole] {
                if !parents.contains_key(c) {
                    return Err(Error::UnknownConcept(c.to_string()));
                }
            }
        }

        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Active,
            Done,
        }

        fn visit(
            c: &ConceptId,
            parents: &BTreeMap<ConceptId, BTreeSet<ConceptId>>,
            marks: &mut BTreeMap<ConceptId, Mark>,
            out: &mut BTreeMap<ConceptId, BTreeSet<ConceptId>>,
        ) -> Result<()> {
            match marks.get(c) {
                Some(Mark::Done) => return Ok(()),
                Some(Mark::Active) => return Err(Error::Cycle(c.to_string())),
                None => {}
            }
            marks.insert(c.clone(), Mark::Active);
            let mut set = BTreeSet::from([c.clone()]);
            for p in &parents[c] {
                visit(p, parents, marks, out)?;
                set.extend(out[p].iter().cloned());
            }
            marks.insert(c.clone(), Mark::Done);
            out.insert(c.clone(), set);
            Ok(())
        }

        let mut marks = BTreeMap::new();
        let mut ancestors = BTreeMap::new();
        for c in parents.keys() {
            visit(c, &parents, &mut marks, &mut ancestors)?;
        }
        let root = ConceptId::root();
        if let Some((c, _)) = ancestors.iter().find(|(_, a)| !a.contains(&root)) {
            return Err(Error::Unrooted(c.to_string()));
        }

        Ok(TypeHierarchy {
            edges,
            partof,
            ancestors,
        })
    }

    pub fn contains(&self, c: &ConceptId) -> bool {
        self.ancestors.contains_key(c)
    }

    pub fn concepts(&self) -> impl Iterator<Item = &ConceptId> {
        self.ancestors.keys()
    }

    pub fn edges(&self) -> &BTreeSet<(ConceptId, ConceptId)> {
        &self.edges
    }

    /// True iff `a == b` or `a` is a transitive subtype of `b`.
    pub fn is_subtype(&self, a: &ConceptId, b: &ConceptId) -> Result<bool> {
        let anc = self
            .ancestors
            .get(a)
            .ok_or_else(|| Error::UnknownConcept(a.to_string()))?;
        if !self.contains(b) {
            return Err(Error::UnknownConcept(b.to_string()));
        }
        Ok(anc.contains(b))
    }

    /// Subsumption test for concepts already known to exist.
    pub(crate) fn subsumes(&self, general: &ConceptId, specific: &ConceptId) -> bool {
        self.ancestors
            .get(specific)
            .is_some_and(|a| a.contains(general))
    }

    pub fn ancestors(&self, c: &ConceptId) -> Option<&BTreeSet<ConceptId>> {
        self.ancestors.get(c)
    }

    /// The whole a part concept belongs to (first in sorted order when the
    /// part has several).
    pub fn whole_of(&self, part: &ConceptId) -> Option<&ConceptId> {
        self.partof
            .iter()
            .find(|(p, _)| p == part)
            .map(|(_, whole)| whole)
    }

    pub fn is_part(&self, c: &ConceptId) -> bool {
        self.whole_of(c).is_some()
    }

    /// Most specific concept subsuming every input; the root for an empty input.
    pub fn least_common_subsumer<'a>(
        &self,
        concepts: impl IntoIterator<Item = &'a ConceptId>,
    ) -> ConceptId {
        let mut common: Option<BTreeSet<ConceptId>> = None;
        for c in concepts {
            let anc = self.ancestors.get(c).cloned().unwrap_or_default();
            common = Some(match common {
                None => anc,
                Some(prev) => prev.intersection(&anc).cloned().collect(),
            });
        }
        let common = match common {
            Some(c) if !c.is_empty() => c,
            _ => return ConceptId::root(),
        };
        // The most specific candidate is the one with the most ancestors.
        common
            .iter()
            .max_by_key(|c| (self.ancestors[*c].len(), std::cmp::Reverse((*c).clone())))
            .cloned()
            .unwrap_or_else(ConceptId::root)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrafficRule {
    pub id: String,
    pub description: String,
    pub violation_patterns: Vec<String>,
}

macro_rules! word_classes {
    ($($variant:ident => $name:literal),* $(,)?) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub enum WordClass {
            $(#[serde(rename = $name)] $variant,)*
        }

        impl WordClass {
            pub const ALL: &'static [WordClass] = &[$(WordClass::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(WordClass::$variant => $name,)*
                }
            }
        }

        impl FromStr for WordClass {
            type Err = String;

            fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
                match s {
                    $($name => Ok(WordClass::$variant),)*
                    other => Err(format!("unknown word class `{other}`")),
                }
            }
        }
    };
}

word_classes! {
    CollisionVerb => "collision-verb",
    MotionVerb => "motion-verb",
    StopVerb => "stop-verb",
    AvoidanceVerb => "avoidance-verb",
    IntentionVerb => "intention-verb",
    SignalVerb => "signal-verb",
    PerceptionVerb => "perception-verb",
    AbilityModal => "ability-modal",
    NegationMarker => "negation-marker",
    SpeedIntensifier => "speed-intensifier",
    SurpriseLexeme => "surprise-lexeme",
    SuddennessAdverb => "suddenness-adverb",
    BlameLexeme => "blame-lexeme",
    PassiveMarker => "passive-marker",
    ReflexiveMotionVerb => "reflexive-motion-verb",
    ImpactNoun => "impact-noun",
    VehicleNoun => "vehicle-noun",
    PersonNoun => "person-noun",
    PartNoun => "part-noun",
    Determiner => "determiner",
    Pronoun => "pronoun",
}

impl WordClass {
    pub fn is_verb(self) -> bool {
        matches!(
            self,
            WordClass::CollisionVerb
                | WordClass::MotionVerb
                | WordClass::StopVerb
                | WordClass::AvoidanceVerb
                | WordClass::IntentionVerb
                | WordClass::SignalVerb
                | WordClass::PerceptionVerb
                | WordClass::ReflexiveMotionVerb
        )
    }

    pub fn is_noun(self) -> bool {
        matches!(
            self,
            WordClass::VehicleNoun | WordClass::PersonNoun | WordClass::PartNoun
        )
    }
}

impl fmt::Display for WordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Selectional {
    RequiresAgent,
    RequiresPhysicalObject,
    Neutral,
}

impl Selectional {
    pub fn as_str(self) -> &'static str {
        match self {
            Selectional::RequiresAgent => "requires-agent",
            Selectional::RequiresPhysicalObject => "requires-physical-object",
            Selectional::Neutral => "neutral",
        }
    }
}

impl FromStr for Selectional {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "requires-agent" => Ok(Selectional::RequiresAgent),
            "requires-physical-object" => Ok(Selectional::RequiresPhysicalObject),
            "neutral" => Ok(Selectional::Neutral),
            other => Err(format!("unknown selectional value `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexiconEntry {
    pub lang: Language,
    pub lemma: String,
    pub word_class: WordClass,
    pub concept: Option<ConceptId>,
    pub selectional: Option<Selectional>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Lexicon {
    entries: Vec<LexiconEntry>,
    #[serde(skip)]
    index: BTreeMap<(Language, String), Vec<usize>>,
    #[serde(skip)]
    max_words: usize,
}

impl Lexicon {
    fn new(entries: Vec<LexiconEntry>) -> Self {
        let mut index: BTreeMap<(Language, String), Vec<usize>> = BTreeMap::new();
        let mut max_words = 1;
        for (i, e) in entries.iter().enumerate() {
            index.entry((e.lang, e.lemma.clone())).or_default().push(i);
            max_words = max_words.max(e.lemma.split(' ').count());
        }
        Lexicon {
            entries,
            index,
            max_words,
        }
    }

    pub fn entries(&self) -> &[LexiconEntry] {
        &self.entries
    }

    /// Longest multi-word lemma, in words.
    pub fn max_words(&self) -> usize {
        self.max_words
    }

    pub fn get(&self, lang: Language, lemma: &str) -> Vec<&LexiconEntry> {
        self.index
            .get(&(lang, lemma.to_string()))
            .map(|ix| ix.iter().map(|&i| &self.entries[i]).collect())
            .unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormTag {
    Past,
    Pp,
    Ing,
    #[serde(rename = "3sg")]
    ThirdSingular,
    Plural,
}

impl FromStr for FormTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "past" => Ok(FormTag::Past),
            "pp" => Ok(FormTag::Pp),
            "ing" => Ok(FormTag::Ing),
            "3sg" => Ok(FormTag::ThirdSingular),
            "plural" => Ok(FormTag::Plural),
            other => Err(format!("unknown form tag `{other}`")),
        }
    }
}

/// Irregular-form and contraction tables. The only morphology performed.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Morphology {
    forms: BTreeMap<String, (String, FormTag)>,
    contractions: BTreeMap<String, Vec<(String, String)>>,
}

impl Morphology {
    /// Lemma and inflection tag for a surface form.
    pub fn lemmatize(&self, surface: &str) -> (String, Option<FormTag>) {
        let folded = surface.to_lowercase();
        match self.forms.get(&folded) {
            Some((lemma, tag)) => (lemma.clone(), Some(*tag)),
            None => (folded, None),
        }
    }

    /// `(piece, lemma)` pairs for a contracted word form, if listed.
    pub fn contraction(&self, surface: &str) -> Option<&[(String, String)]> {
        let folded = surface.to_lowercase().replace('\u{2019}', "'");
        self.contractions.get(&folded).map(Vec::as_slice)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WriterBehavior {
    Correct,
    AtFault,
    Neutral,
}

impl FromStr for WriterBehavior {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "correct" => Ok(WriterBehavior::Correct),
            "at-fault" => Ok(WriterBehavior::AtFault),
            "neutral" => Ok(WriterBehavior::Neutral),
            other => Err(format!("unknown writer behavior `{other}`")),
        }
    }
}

/// One reading of a lexically ambiguous token.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbiguousReading {
    pub lang: Language,
    pub lemma: String,
    pub label: String,
    pub writer_behavior: WriterBehavior,
    pub explains_accident: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KnowledgeBase {
    pub hierarchy: TypeHierarchy,
    pub rules: Vec<TrafficRule>,
    pub lexicon: Lexicon,
    pub morphology: Morphology,
    pub ambiguous: Vec<AmbiguousReading>,
}

impl KnowledgeBase {
    /// Knowledge base built from the bundled seed files.
    pub fn seed() -> Self {
        Self::from_sources(
            ("hierarchy.tsv", SEED_HIERARCHY),
            ("rules.tsv", SEED_RULES),
            ("lexicon.tsv", SEED_LEXICON),
            ("irregular.tsv", SEED_IRREGULAR),
            ("contractions.tsv", SEED_CONTRACTIONS),
            ("ambiguous.tsv", SEED_AMBIGUOUS),
        )
        .expect("bundled knowledge files are valid")
    }

    /// Loads a knowledge directory. `hierarchy.tsv`, `rules.tsv` and
    /// `lexicon.tsv` are required; the morphology and ambiguity tables fall
    /// back to the bundled copies when absent.
    pub fn load_dir(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let read = |name: &str| read_file(&dir.join(name));
        let optional = |name: &str, fallback: &'static str| -> Result<String> {
            let path = dir.join(name);
            if path.exists() {
                read_file(&path)
            } else {
                Ok(fallback.to_string())
            }
        };
        let hierarchy = read("hierarchy.tsv")?;
        let rules = read("rules.tsv")?;
        let lexicon = read("lexicon.tsv")?;
        let irregular = optional("irregular.tsv", SEED_IRREGULAR)?;
        let contractions = optional("contractions.tsv", SEED_CONTRACTIONS)?;
        let ambiguous = optional("ambiguous.tsv", SEED_AMBIGUOUS)?;
        Self::from_sources(
            ("hierarchy.tsv", &hierarchy),
            ("rules.tsv", &rules),
            ("lexicon.tsv", &lexicon),
            ("irregular.tsv", &irregular),
            ("contractions.tsv", &contractions),
            ("ambiguous.tsv", &ambiguous),
        )
    }

    fn from_sources(
        hierarchy: (&str, &str),
        rules: (&str, &str),
        lexicon: (&str, &str),
        irregular: (&str, &str),
        contractions: (&str, &str),
        ambiguous: (&str, &str),
    ) -> Result<Self> {
        let hierarchy = parse_hierarchy(hierarchy.0, hierarchy.1)?;
        let rules = parse_rules(rules.0, rules.1)?;
        let lexicon = parse_lexicon(lexicon.0, lexicon.1, &hierarchy)?;
        let morphology = Morphology {
            forms: parse_irregular(irregular.0, irregular.1)?,
            contractions: parse_contractions(contractions.0, contractions.1)?,
        };
        let ambiguous = parse_ambiguous(ambiguous.0, ambiguous.1)?;
        Ok(KnowledgeBase {
            hierarchy,
            rules,
            lexicon,
            morphology,
            ambiguous,
        })
    }

    pub fn is_subtype(&self, a: &ConceptId, b: &ConceptId) -> Result<bool> {
        self.hierarchy.is_subtype(a, b)
    }

    /// All entries for a lemma in any language, after lowercase folding and
    /// irregular-form lemmatization.
    pub fn lookup(&self, lemma: &str) -> Vec<&LexiconEntry> {
        let folded = lemma.trim().to_lowercase();
        let (base, _) = self.morphology.lemmatize(&folded);
        let mut out: Vec<&LexiconEntry> = Vec::new();
        for key in [folded.as_str(), base.as_str()] {
            for e in self.lexicon.entries.iter().filter(|e| e.lemma == key) {
                if !out.contains(&e) {
                    out.push(e);
                }
            }
        }
        out
    }

    pub fn rule(&self, id: &str) -> Option<&TrafficRule> {
        self.rules.iter().find(|r| r.id == id)
    }

    /// Rule whose violation patterns include `pattern`.
    pub fn rule_for_pattern(&self, pattern: &str) -> Option<&TrafficRule> {
        self.rules
            .iter()
            .find(|r| r.violation_patterns.iter().any(|p| p == pattern))
    }

    pub fn ambiguous_readings(&self, lang: Language, lemma: &str) -> Vec<&AmbiguousReading> {
        self.ambiguous
            .iter()
            .filter(|r| r.lang == lang && r.lemma == lemma)
            .collect()
    }
}

/// Loads a knowledge base from the three primary files, using the bundled
/// morphology and ambiguity tables.
pub fn load_knowledge(
    hierarchy_file: impl AsRef<Path>,
    rules_file: impl AsRef<Path>,
    lexicon_file: impl AsRef<Path>,
) -> Result<KnowledgeBase> {
    let name = |p: &Path| p.display().to_string();
    let (h, r, l) = (
        hierarchy_file.as_ref(),
        rules_file.as_ref(),
        lexicon_file.as_ref(),
    );
    let (hs, rs, ls) = (read_file(h)?, read_file(r)?, read_file(l)?);
    KnowledgeBase::from_sources(
        (&name(h), &hs),
        (&name(r), &rs),
        (&name(l), &ls),
        ("irregular.tsv", SEED_IRREGULAR),
        ("contractions.tsv", SEED_CONTRACTIONS),
        ("ambiguous.tsv", SEED_AMBIGUOUS),
    )
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Non-comment lines split on tabs, with 1-based line numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let trimmed = line.trim_end_matches('\r');
        if trimmed.trim().is_empty() || trimmed.trim_start().starts_with('#') {
            None
        } else {
            Some((i + 1, trimmed.split('\t').map(str::trim).collect()))
        }
    })
}

fn optional_field(fields: &[&str], i: usize) -> Option<String> {
    fields
        .get(i)
        .filter(|f| !f.is_empty() && **f != "-")
        .map(|f| f.to_string())
}

fn parse_hierarchy(file: &str, text: &str) -> Result<TypeHierarchy> {
    let mut edges = Vec::new();
    let mut partof = Vec::new();
    for (line, f) in records(text) {
        match f.as_slice() {
            [child, "isa", parent] => {
                edges.push((ConceptId::from(*child), ConceptId::from(*parent)))
            }
            [part, "partof", whole] => {
                partof.push((ConceptId::from(*part), ConceptId::from(*whole)))
            }
            _ => {
                return Err(Error::parse(
                    file,
                    line,
                    "expected `child<TAB>isa<TAB>parent` or `part<TAB>partof<TAB>whole`",
                ))
            }
        }
    }
    TypeHierarchy::new(edges, partof)
}

fn parse_rules(file: &str, text: &str) -> Result<Vec<TrafficRule>> {
    let mut rules: Vec<TrafficRule> = Vec::new();
    for (line, f) in records(text) {
        if f.len() < 2 || f.len() > 3 || f[0].is_empty() {
            return Err(Error::parse(
                file,
                line,
                "expected `rule-id<TAB>description[<TAB>patterns]`",
            ));
        }
        if rules.iter().any(|r| r.id == f[0]) {
            return Err(Error::Duplicate {
                what: "traffic rule",
                key: f[0].to_string(),
            });
        }
        let violation_patterns = optional_field(&f, 2)
            .map(|p| {
                p.split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(String::from)
                    .collect()
            })
            .unwrap_or_default();
        rules.push(TrafficRule {
            id: f[0].to_string(),
            description: f[1].to_string(),
            violation_patterns,
        });
    }
    Ok(rules)
}

fn parse_lexicon(file: &str, text: &str, hierarchy: &TypeHierarchy) -> Result<Lexicon> {
    let mut seen = BTreeSet::new();
    let mut entries = Vec::new();
    for (line, f) in records(text) {
        if f.len() < 3 || f.len() > 5 {
            return Err(Error::parse(
                file,
                line,
                "expected `lang<TAB>lemma<TAB>word_class[<TAB>concept[<TAB>selectional]]`",
            ));
        }
        let lang: Language = f[0].parse().map_err(|m| Error::parse(file, line, m))?;
        let lemma = f[1].to_lowercase();
        if lemma.is_empty() {
            return Err(Error::parse(file, line, "empty lemma"));
        }
        let word_class: WordClass = f[2].parse().map_err(|m| Error::parse(file, line, m))?;
        let concept = optional_field(&f, 3).map(ConceptId::new);
        let selectional = optional_field(&f, 4)
            .map(|s| s.parse::<Selectional>())
            .transpose()
            .map_err(|m| Error::parse(file, line, m))?;

        match &concept {
            Some(c) if !hierarchy.contains(c) => return Err(Error::UnknownConcept(c.to_string())),
            None if word_class.is_noun() => {
                return Err(Error::parse(
                    file,
                    line,
                    format!("{word_class} entry `{lemma}` needs a concept"),
                ))
            }
            _ => {}
        }
        if !seen.insert((lang, lemma.clone(), word_class)) {
            return Err(Error::Duplicate {
                what: "lexicon entry",
                key: format!("{lemma}/{word_class}"),
            });
        }
        entries.push(LexiconEntry {
            lang,
            lemma,
            word_class,
            concept,
            selectional,
        });
    }
    Ok(Lexicon::new(entries))
}

fn parse_irregular(file: &str, text: &str) -> Result<BTreeMap<String, (String, FormTag)>> {
    let mut forms = BTreeMap::new();
    for (line, f) in records(text) {
        let [form, lemma, tag] = f.as_slice() else {
            return Err(Error::parse(
                file,
                line,
                "expected `form<TAB>lemma<TAB>tag`",
            ));
        };
        let tag: FormTag = tag.parse().map_err(|m| Error::parse(file, line, m))?;
        if forms
            .insert(form.to_lowercase(), (lemma.to_lowercase(), tag))
            .is_some()
        {
            return Err(Error::Duplicate {
                what: "irregular form",
                key: form.to_string(),
            });
        }
    }
    Ok(forms)
}

fn parse_contractions(file: &str, text: &str) -> Result<BTreeMap<String, Vec<(String, String)>>> {
    let mut out = BTreeMap::new();
    for (line, f) in records(text) {
        let [form, pieces, lemmas] = f.as_slice() else {
            return Err(Error::parse(
                file,
                line,
                "expected `form<TAB>pieces<TAB>lemmas`",
            ));
        };
        let pieces: Vec<&str> = pieces.split(' ').collect();
        let lemmas: Vec<&str> = lemmas.split(' ').collect();
        if pieces.len() != lemmas.len() || pieces.concat() != form.to_lowercase() {
            return Err(Error::parse(
                file,
                line,
                "pieces must concatenate to the form and pair with lemmas",
            ));
        }
        let pairs = pieces
            .into_iter()
            .zip(lemmas)
            .map(|(p, l)| (p.to_string(), l.to_string()))
            .collect();
        out.insert(form.to_lowercase(), pairs);
    }
    Ok(out)
}

fn parse_ambiguous(file: &str, text: &str) -> Result<Vec<AmbiguousReading>> {
    let mut out = Vec::new();
    for (line, f) in records(text) {
        let [lang, lemma, label, behavior, explains] = f.as_slice() else {
            return Err(Error::parse(
                file,
                line,
                "expected `lang<TAB>lemma<TAB>label<TAB>writer_behavior<TAB>explains_accident`",
            ));
        };
        out.push(AmbiguousReading {
            lang: lang.parse().map_err(|m| Error::parse(file, line, m))?,
            lemma: lemma.to_lowercase(),
            label: label.to_string(),
            writer_behavior: behavior.parse().map_err(|m| Error::parse(file, line, m))?,
            explains_accident: explains
                .parse()
                .map_err(|_| Error::parse(file, line, "explains_accident must be true|false"))?,
        });
    }
    Ok(out)
}
