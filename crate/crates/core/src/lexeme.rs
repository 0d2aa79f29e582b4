//! Lexicon matching over clause tokens and main-predicate selection.

use crate::corpus::{Clause, Span, Token};
use crate::knowledge::{KnowledgeBase, Language, LexiconEntry, Selectional, WordClass};

/// A lexicon lemma (possibly multi-word) found at `tokens[start..end]` of a
/// clause.
#[derive(Debug, Clone)]
pub struct LexemeMatch<'kb> {
    pub start: usize,
    pub end: usize,
    pub lemma: String,
    pub entries: Vec<&'kb LexiconEntry>,
}

impl<'kb> LexemeMatch<'kb> {
    pub fn has(&self, class: WordClass) -> bool {
        self.entries.iter().any(|e| e.word_class == class)
    }

    pub fn entry(&self, class: WordClass) -> Option<&'kb LexiconEntry> {
        self.entries.iter().copied().find(|e| e.word_class == class)
    }

    /// First verb-class entry.
    pub fn verb(&self) -> Option<&'kb LexiconEntry> {
        self.entries
            .iter()
            .copied()
            .find(|e| e.word_class.is_verb())
    }

    pub fn span(&self, tokens: &[Token]) -> Span {
        Span::cover(tokens[self.start].span, tokens[self.end - 1].span)
    }
}

/// Greedy longest-first matching of lexicon lemmas against token lemma
/// n-grams. Matches never overlap and never cross punctuation.
pub fn match_lexemes<'kb>(
    tokens: &[Token],
    lang: Language,
    kb: &'kb KnowledgeBase,
) -> Vec<LexemeMatch<'kb>> {
    let max = kb.lexicon.max_words();
    let mut out = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        if !tokens[i].is_word() && tokens[i].lemma != "'s" {
            i += 1;
            continue;
        }
        let mut found = None;
        for n in (1..=max.min(tokens.len() - i)).rev() {
            let window = &tokens[i..i + n];
            if n > 1 && window.iter().any(|t| !t.is_word()) {
                continue;
            }
            let lemma = window
                .iter()
                .map(|t| t.lemma.as_str())
                .collect::<Vec<_>>()
                .join(" ");
            let entries = kb.lexicon.get(lang, &lemma);
            if !entries.is_empty() {
                found = Some(LexemeMatch {
                    start: i,
                    end: i + n,
                    lemma,
                    entries,
                });
                break;
            }
        }
        match found {
            Some(m) => {
                i = m.end;
                out.push(m);
            }
            None => i += 1,
        }
    }
    out
}

/// The predicate chosen for a clause.
#[derive(Debug, Clone, PartialEq)]
pub struct Predicate {
    /// Token range of the predicate lexeme within the clause.
    pub start: usize,
    pub end: usize,
    pub lemma: String,
    pub class: WordClass,
    pub selectional: Option<Selectional>,
    /// Token range of a governing intention verb (`want to V`).
    pub intention: Option<(usize, usize)>,
}

impl Predicate {
    fn from_match(m: &LexemeMatch<'_>, class: WordClass) -> Self {
        let entry = m.entry(class);
        Predicate {
            start: m.start,
            end: m.end,
            lemma: m.lemma.clone(),
            class,
            selectional: entry.and_then(|e| e.selectional),
            intention: None,
        }
    }

    pub fn entry<'kb>(&self, kb: &'kb KnowledgeBase, lang: Language) -> Option<&'kb LexiconEntry> {
        kb.lexicon
            .get(lang, &self.lemma)
            .into_iter()
            .find(|e| e.word_class == self.class)
    }
}

/// Picks the clause predicate, in priority order: a verb governed by an
/// intention verb through `to`; the first collision verb; the first impact
/// noun; the first verb not in `-ing` form; the first verb.
pub fn find_predicate(tokens: &[Token], matches: &[LexemeMatch<'_>]) -> Option<Predicate> {
    for (k, m) in matches.iter().enumerate() {
        if !m.has(WordClass::IntentionVerb) {
            continue;
        }
        let to = m.end;
        if tokens.get(to).is_some_and(|t| t.lemma == "to") {
            if let Some(next) = matches[k + 1..].iter().find(|n| n.start == to + 1) {
                if let Some(v) = next
                    .verb()
                    .filter(|v| v.word_class != WordClass::IntentionVerb)
                {
                    let mut p = Predicate::from_match(next, v.word_class);
                    p.intention = Some((m.start, m.end));
                    return Some(p);
                }
            }
        }
    }
    if let Some(m) = matches.iter().find(|m| m.has(WordClass::CollisionVerb)) {
        return Some(Predicate::from_match(m, WordClass::CollisionVerb));
    }
    if let Some(m) = matches.iter().find(|m| m.has(WordClass::ImpactNoun)) {
        return Some(Predicate::from_match(m, WordClass::ImpactNoun));
    }
    let verbs: Vec<_> = matches.iter().filter(|m| m.verb().is_some()).collect();
    let m = verbs
        .iter()
        .find(|m| !tokens[m.start].is_ing())
        .or_else(|| verbs.first())?;
    Some(Predicate::from_match(m, m.verb()?.word_class))
}

/// Lexeme matches and predicate of one clause.
#[derive(Debug, Clone)]
pub struct ClauseLexemes<'kb> {
    pub matches: Vec<LexemeMatch<'kb>>,
    pub predicate: Option<Predicate>,
}

impl<'kb> ClauseLexemes<'kb> {
    pub fn new(clause: &Clause, lang: Language, kb: &'kb KnowledgeBase) -> Self {
        let matches = match_lexemes(&clause.tokens, lang, kb);
        let predicate = find_predicate(&clause.tokens, &matches);
        ClauseLexemes { matches, predicate }
    }

    pub fn with_class(&self, class: WordClass) -> impl Iterator<Item = &LexemeMatch<'kb>> {
        self.matches.iter().filter(move |m| m.has(class))
    }

    /// True when some token before `end` carries `class`.
    pub fn has_before(&self, class: WordClass, end: usize) -> bool {
        self.with_class(class).any(|m| m.start < end)
    }
}

/// True when the clause contains the space-separated lemma sequence.
pub fn contains_lemmas(tokens: &[Token], seq: &str) -> Option<(usize, usize)> {
    let want: Vec<&str> = seq.split(' ').collect();
    tokens
        .windows(want.len())
        .position(|w| w.iter().zip(&want).all(|(t, l)| t.lemma == *l))
        .map(|i| (i, i + want.len()))
}
