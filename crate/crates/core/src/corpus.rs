//! Report loading, tokenization and sentence/clause segmentation.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::knowledge::{FormTag, KnowledgeBase, Language, Morphology, WordClass};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub id: String,
    pub language: Language,
    pub body: String,
}

impl Report {
    pub fn new(id: impl Into<String>, language: Language, body: impl Into<String>) -> Self {
        Report {
            id: id.into(),
            language,
            body: body.into(),
        }
    }
}

/// Half-open character offsets into a report body.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn cover(a: Span, b: Span) -> Span {
        Span::new(a.start.min(b.start), a.end.max(b.end))
    }

    pub fn contains(&self, other: Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn overlaps(&self, other: Span) -> bool {
        self.start < other.end && other.start < self.end
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub lemma: String,
    pub span: Span,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<FormTag>,
}

impl Token {
    pub fn is_word(&self) -> bool {
        self.surface
            .chars()
            .next()
            .is_some_and(char::is_alphanumeric)
    }

    pub fn is_punct(&self, c: char) -> bool {
        self.surface.len() == c.len_utf8() && self.surface.starts_with(c)
    }

    /// Present participle or gerund, from the form table or the suffix.
    pub fn is_ing(&self) -> bool {
        self.tag == Some(FormTag::Ing)
            || (self.tag.is_none() && self.surface.len() > 4 && self.lemma.ends_with("ing"))
    }

    pub fn is_participle(&self) -> bool {
        self.tag == Some(FormTag::Pp)
            || (self.tag.is_none()
                && self.surface.len() > 4
                && self.lemma.ends_with("ed")
                && !self.lemma.ends_with("eed"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub tokens: Vec<Token>,
    pub sentence_index: usize,
    /// Position of the clause in the whole report.
    pub clause_index: usize,
    /// Index of the clause's first token in the report token stream.
    pub token_offset: usize,
}

impl Clause {
    pub fn span(&self) -> Span {
        match (self.tokens.first(), self.tokens.last()) {
            (Some(a), Some(b)) => Span::cover(a.span, b.span),
            _ => Span::new(0, 0),
        }
    }

    pub fn text<'a>(&self, body: &'a str) -> &'a str {
        slice_chars(body, self.span())
    }
}

/// Substring of `text` covered by a character span.
pub fn slice_chars(text: &str, span: Span) -> &str {
    let mut it = text
        .char_indices()
        .map(|(b, _)| b)
        .chain(std::iter::once(text.len()));
    let start = it.by_ref().nth(span.start).unwrap_or(text.len());
    let len = span.end.saturating_sub(span.start);
    let end = if len == 0 {
        start
    } else {
        it.nth(len - 1).unwrap_or(text.len())
    };
    &text[start..end]
}

/// Loads `<ID>.<lang>.txt`; the language defaults to English when the file
/// name carries no tag.
pub fn load_report(path: impl AsRef<Path>) -> Result<Report> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let body = String::from_utf8(bytes).map_err(|_| Error::Encoding(path.to_path_buf()))?;
    let name = path
        .file_name()
        .and_then(|n| n.to_str())
        .unwrap_or_default();
    let mut parts = name.split('.');
    let id = parts.next().unwrap_or_default().to_string();
    let language = parts
        .next()
        .and_then(|tag| tag.parse().ok())
        .unwrap_or(Language::En);
    Ok(Report {
        id,
        language,
        body: body.trim_end().to_string(),
    })
}

/// Splits text into word and punctuation tokens with exact character
/// offsets. Contractions in the table become several tokens.
pub fn tokenize(text: &str, morphology: &Morphology) -> Vec<Token> {
    let chars: Vec<char> = text.chars().collect();
    let joiner = |c: char| matches!(c, '-' | '\'' | '\u{2019}');
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if !c.is_alphanumeric() {
            push_piece(&mut tokens, morphology, c.to_string(), i, None);
            i += 1;
            continue;
        }
        let start = i;
        while i < chars.len()
            && (chars[i].is_alphanumeric()
                || (joiner(chars[i])
                    && i + 1 < chars.len()
                    && chars[i + 1].is_alphanumeric()
                    && i > start))
        {
            i += 1;
        }
        let word: String = chars[start..i].iter().collect();
        push_word(&mut tokens, morphology, &word, start);
    }
    tokens
}

fn push_word(tokens: &mut Vec<Token>, morphology: &Morphology, word: &str, start: usize) {
    if let Some(pieces) = morphology.contraction(word) {
        let mut offset = start;
        for (piece, lemma) in pieces {
            let n = piece.chars().count();
            let surface: String = word.chars().skip(offset - start).take(n).collect();
            push_piece(tokens, morphology, surface, offset, Some(lemma.clone()));
            offset += n;
        }
        return;
    }
    let lower = word.to_lowercase().replace('\u{2019}', "'");
    if lower.len() > 2 && lower.ends_with("'s") {
        let n = word.chars().count();
        let stem: String = word.chars().take(n - 2).collect();
        let clitic: String = word.chars().skip(n - 2).collect();
        push_piece(tokens, morphology, stem, start, None);
        push_piece(tokens, morphology, clitic, start + n - 2, Some("'s".into()));
        return;
    }
    push_piece(tokens, morphology, word.to_string(), start, None);
}

fn push_piece(
    tokens: &mut Vec<Token>,
    morphology: &Morphology,
    surface: String,
    start: usize,
    lemma: Option<String>,
) {
    let n = surface.chars().count();
    let (lemma, tag) = match lemma {
        Some(l) => {
            let (_, tag) = morphology.lemmatize(&surface);
            (l, tag)
        }
        None => morphology.lemmatize(&surface),
    };
    tokens.push(Token {
        surface,
        lemma,
        span: Span::new(start, start + n),
        tag,
    });
}

const SENTENCE_END: &[char] = &['.', '?', '!', ';'];
const SUBJECT_STARTERS: &[&str] = &["i", "we", "he", "she", "they", "it", "there", "vehicle"];

/// Segments a report body into clauses.
///
/// Sentences end at `. ? ! ;` followed by whitespace (or the end of text)
/// and at line breaks. Inside a sentence a clause starts at a coordinating
/// conjunction (`and`, `but`, `when`, finite `for`) and after a comma that
/// introduces a subject, a participle or a finite verb region.
pub fn segment(report: &Report, kb: &KnowledgeBase) -> Vec<Clause> {
    let tokens = tokenize(&report.body, &kb.morphology);
    let body: Vec<char> = report.body.chars().collect();

    let mut sentences: Vec<Vec<Token>> = Vec::new();
    let mut current: Vec<Token> = Vec::new();
    for (i, tok) in tokens.iter().enumerate() {
        if let Some(prev) = current.last() {
            let gap = &body[prev.span.end..tok.span.start];
            if gap.contains(&'\n') {
                sentences.push(std::mem::take(&mut current));
            }
        }
        current.push(tok.clone());
        let ends = tok.surface.len() == 1
            && tok.surface.chars().all(|c| SENTENCE_END.contains(&c))
            && body.get(tok.span.end).is_none_or(|c| c.is_whitespace());
        if ends && i + 1 < tokens.len() {
            sentences.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        sentences.push(current);
    }

    let mut clauses = Vec::new();
    let mut offset = 0;
    for (sentence_index, sentence) in sentences.into_iter().enumerate() {
        let mut start = 0;
        for i in 1..sentence.len() {
            if starts_clause(&sentence, i, kb) {
                push_clause(
                    &mut clauses,
                    &sentence[start..i],
                    sentence_index,
                    &mut offset,
                );
                start = i;
            }
        }
        push_clause(
            &mut clauses,
            &sentence[start..],
            sentence_index,
            &mut offset,
        );
    }
    clauses
}

fn push_clause(out: &mut Vec<Clause>, tokens: &[Token], sentence_index: usize, offset: &mut usize) {
    if tokens.is_empty() {
        return;
    }
    out.push(Clause {
        tokens: tokens.to_vec(),
        sentence_index,
        clause_index: out.len(),
        token_offset: *offset,
    });
    *offset += tokens.len();
}

fn starts_clause(sentence: &[Token], i: usize, kb: &KnowledgeBase) -> bool {
    let tok = &sentence[i];
    match tok.lemma.as_str() {
        "and" | "but" | "when" => return true,
        "for" => {
            return sentence
                .get(i + 1)
                .is_some_and(|t| SUBJECT_STARTERS.contains(&t.lemma.as_str()) && t.lemma != "it")
        }
        _ => {}
    }
    if !sentence[i - 1].is_punct(',') {
        return false;
    }
    if SUBJECT_STARTERS.contains(&tok.lemma.as_str()) || tok.is_ing() || is_determiner(tok, kb) {
        return true;
    }
    sentence[i..]
        .iter()
        .take_while(|t| !t.is_punct(','))
        .any(|t| is_finite_marker(t, kb))
}

fn is_determiner(tok: &Token, kb: &KnowledgeBase) -> bool {
    kb.lexicon
        .get(Language::En, &tok.lemma)
        .iter()
        .any(|e| e.word_class == WordClass::Determiner)
}

fn is_finite_marker(tok: &Token, kb: &KnowledgeBase) -> bool {
    matches!(
        tok.lemma.as_str(),
        "be" | "have" | "do" | "could" | "can" | "would" | "will"
    ) || kb
        .lexicon
        .get(Language::En, &tok.lemma)
        .iter()
        .any(|e| e.word_class.is_verb())
}
