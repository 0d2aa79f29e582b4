//! Coreference under the minimality assumption: mentions are grouped into
//! the fewest discourse entities whose members are pairwise compatible.

mod oracle;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::knowledge::{ConceptId, KnowledgeBase};
use crate::mentions::{
    CoercionRecord, Definiteness, Facet, GrammaticalRole, Mention, VehicleLabel,
};

pub use oracle::{brute_force_min_partition, ORACLE_MAX};

/// Default upper bound on the number of mentions `resolve` accepts.
pub const DEFAULT_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscourseEntity {
    pub id: usize,
    pub mentions: Vec<Mention>,
    pub unit_concept: ConceptId,
    pub facets_seen: BTreeSet<Facet>,
    pub is_writer_party: bool,
    #[serde(default)]
    pub coercions: Vec<CoercionRecord>,
}

impl DiscourseEntity {
    pub fn mention_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.mentions.iter().map(|m| m.id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub entities: Vec<DiscourseEntity>,
    pub cost: usize,
    /// Entity index of each input mention, in input order.
    pub assignment: Vec<usize>,
}

impl Partition {
    /// Entity containing the mention with the given id.
    pub fn entity_of(&self, mention_id: usize) -> Option<&DiscourseEntity> {
        self.entities
            .iter()
            .find(|e| e.mentions.iter().any(|m| m.id == mention_id))
    }

    pub fn writer(&self) -> Option<&DiscourseEntity> {
        self.entities.iter().find(|e| e.is_writer_party)
    }

    /// Files each coercion record under the entity of its mention.
    pub fn attach_coercions(&mut self, records: &[CoercionRecord]) {
        for r in records {
            if let Some(e) = self
                .entities
                .iter_mut()
                .find(|e| e.mentions.iter().any(|m| m.id == r.mention))
            {
                e.coercions.push(r.clone());
            }
        }
    }
}

/// Concept that two mentions must agree on: drivers, parts and the vehicle
/// itself all stand for one vehicle unit.
fn unit(m: &Mention, kb: &KnowledgeBase) -> ConceptId {
    if let Some(hint) = &m.vehicle_hint {
        return hint.clone();
    }
    if let Some(whole) = kb.hierarchy.whole_of(&m.concept) {
        return whole.clone();
    }
    if kb.hierarchy.subsumes(&"person".into(), &m.concept) {
        return ConceptId::new("vehicle");
    }
    m.concept.clone()
}

fn order_key(m: &Mention) -> (usize, usize) {
    (m.tokens.start, m.id)
}

/// Mention that by its form denotes someone other than the writer: any
/// indefinite, a possessive with a third-party possessor, or a person
/// described in the third person.
fn third_party(m: &Mention, kb: &KnowledgeBase) -> bool {
    !m.first_person
        && (m.definiteness == Definiteness::Indefinite
            || m.definiteness == Definiteness::Possessive
            || m.label == Some(VehicleLabel::B)
            || kb.hierarchy.subsumes(&"person".into(), &m.concept))
}

/// Pairwise compatibility of two mentions.
///
/// Both units unify by subsumption; the later mention is not indefinite;
/// different `A`/`B` labels never corefer; a first-person mention never
/// corefers with a third-party one; the subject and object of one clause
/// are distinct unless one is reflexive, possessive or a part.
pub fn compatible(a: &Mention, b: &Mention, kb: &KnowledgeBase) -> bool {
    let later = if order_key(a) <= order_key(b) { b } else { a };
    let (ua, ub) = (unit(a, kb), unit(b, kb));
    if !kb.hierarchy.subsumes(&ua, &ub) && !kb.hierarchy.subsumes(&ub, &ua) {
        return false;
    }
    if later.definiteness == Definiteness::Indefinite {
        return false;
    }
    if let (Some(la), Some(lb)) = (a.label, b.label) {
        if la != lb {
            return false;
        }
    }
    if (a.first_person && third_party(b, kb)) || (b.first_person && third_party(a, kb)) {
        return false;
    }
    let core = |m: &Mention| {
        matches!(
            m.grammatical_role,
            GrammaticalRole::Subject | GrammaticalRole::Object
        )
    };
    let exempt =
        |m: &Mention| m.definiteness == Definiteness::Possessive || m.reflexive || m.is_part(kb);
    if a.clause == b.clause
        && core(a)
        && core(b)
        && a.grammatical_role != b.grammatical_role
        && !(exempt(a) || exempt(b))
    {
        return false;
    }
    true
}

pub(crate) fn compat_matrix(mentions: &[Mention], kb: &KnowledgeBase) -> Vec<Vec<bool>> {
    mentions
        .iter()
        .map(|a| mentions.iter().map(|b| compatible(a, b, kb)).collect())
        .collect()
}

/// Latest earlier mention in the same block, for the tie-break vector.
pub(crate) fn antecedents(assignment: &[usize]) -> Vec<isize> {
    (0..assignment.len())
        .map(|i| {
            (0..i)
                .rev()
                .find(|&j| assignment[j] == assignment[i])
                .map_or(-1, |j| j as isize)
        })
        .collect()
}

/// Minimal-cost partition with the nearest-antecedent tie-break, using the
/// default cap.
pub fn resolve(mentions: &[Mention], kb: &KnowledgeBase) -> Result<Partition> {
    resolve_with_cap(mentions, kb, DEFAULT_CAP)
}

pub fn resolve_with_cap(mentions: &[Mention], kb: &KnowledgeBase, cap: usize) -> Result<Partition> {
    if mentions.len() > cap {
        return Err(Error::CapExceeded {
            found: mentions.len(),
            cap,
        });
    }
    let compat = compat_matrix(mentions, kb);
    let n = mentions.len();
    let mut k = clique_bound(&compat).max(usize::from(n > 0));
    loop {
        let mut search = Search {
            compat: &compat,
            k,
            blocks: Vec::new(),
            assignment: vec![0; n],
        };
        if search.place(0) {
            return Ok(build_partition(mentions, &search.assignment, kb));
        }
        k += 1;
        debug_assert!(k <= n);
    }
}

/// Size of a greedily built set of pairwise incompatible mentions.
fn clique_bound(compat: &[Vec<bool>]) -> usize {
    let mut chosen: Vec<usize> = Vec::new();
    for (i, row) in compat.iter().enumerate() {
        if chosen.iter().all(|&j| !row[j]) {
            chosen.push(i);
        }
    }
    chosen.len()
}

struct Search<'a> {
    compat: &'a [Vec<bool>],
    k: usize,
    /// Member indices of each open block, in insertion order.
    blocks: Vec<Vec<usize>>,
    assignment: Vec<usize>,
}

impl Search<'_> {
    /// Depth-first placement in textual order. Existing blocks are tried by
    /// most recent member first and a new block last, so the first complete
    /// assignment maximises the antecedent vector lexicographically.
    fn place(&mut self, i: usize) -> bool {
        if i == self.assignment.len() {
            return true;
        }
        let mut order: Vec<usize> = (0..self.blocks.len()).collect();
        order.sort_by_key(|&b| std::cmp::Reverse(*self.blocks[b].last().unwrap()));
        for b in order {
            if self.blocks[b].iter().all(|&j| self.compat[i][j]) {
                self.blocks[b].push(i);
                self.assignment[i] = b;
                if self.place(i + 1) {
                    return true;
                }
                self.blocks[b].pop();
            }
        }
        if self.blocks.len() < self.k {
            self.blocks.push(vec![i]);
            self.assignment[i] = self.blocks.len() - 1;
            if self.place(i + 1) {
                return true;
            }
            self.blocks.pop();
        }
        false
    }
}

/// Builds entities from a block assignment; entities are numbered by first
/// mention.
pub fn build_partition(
    mentions: &[Mention],
    assignment: &[usize],
    kb: &KnowledgeBase,
) -> Partition {
    let mut renumber: Vec<Option<usize>> = vec![None; assignment.len()];
    let mut canonical = Vec::with_capacity(assignment.len());
    let mut next = 0;
    for &b in assignment {
        let id = *renumber[b].get_or_insert_with(|| {
            next += 1;
            next - 1
        });
        canonical.push(id);
    }
    let entities: Vec<DiscourseEntity> = (0..next)
        .map(|id| {
            let members: Vec<Mention> = mentions
                .iter()
                .zip(&canonical)
                .filter(|(_, &b)| b == id)
                .map(|(m, _)| m.clone())
                .collect();
            entity(id, members, kb)
        })
        .collect();
    Partition {
        cost: entities.len(),
        entities,
        assignment: canonical,
    }
}

fn entity(id: usize, mentions: Vec<Mention>, kb: &KnowledgeBase) -> DiscourseEntity {
    let whole: Vec<&Mention> = mentions.iter().filter(|m| !m.is_part(kb)).collect();
    let unit_concept = if whole.is_empty() {
        kb.hierarchy.least_common_subsumer(
            mentions
                .iter()
                .map(|m| unit(m, kb))
                .collect::<Vec<_>>()
                .iter(),
        )
    } else {
        kb.hierarchy
            .least_common_subsumer(whole.iter().map(|m| &m.concept))
    };
    DiscourseEntity {
        id,
        facets_seen: mentions.iter().map(|m| m.facet).collect(),
        is_writer_party: mentions.iter().any(|m| {
            m.definiteness == Definiteness::Pronoun1st || m.label == Some(VehicleLabel::A)
        }),
        unit_concept,
        mentions,
        coercions: Vec::new(),
    }
}


#[cfg(test)]
mod tests {
    use super::testing::mention;
    use super::*;
    use Definiteness::*;

    #[test]
    fn indefinite_then_definite_subtype() {
        let kb = KnowledgeBase::seed();
        let a = mention(0, 0, "vehicle", Indefinite);
        let b = mention(1, 1, "car", Definite);
        assert!(compatible(&a, &b, &kb));
        assert!(compatible(&b, &a, &kb));
    }

    #[test]
    fn later_indefinite_is_not_licensed() {
        let kb = KnowledgeBase::seed();
        let a = mention(0, 0, "car", Definite);
        let b = mention(1, 1, "vehicle", Indefinite);
        assert!(!compatible(&a, &b, &kb));
    }

    #[test]
    fn labels_and_parties_separate() {
        let kb = KnowledgeBase::seed();
        let mut a = mention(0, 0, "vehicle", Label);
        a.label = Some(VehicleLabel::A);
        let mut b = mention(1, 1, "vehicle", Label);
        b.label = Some(VehicleLabel::B);
        assert!(!compatible(&a, &b, &kb));
        let mut i = mention(2, 2, "person", Pronoun1st);
        i.facet = Facet::Driver;
        assert!(!compatible(&i, &b, &kb));
        assert!(compatible(&a, &i, &kb));
        let he = mention(3, 3, "person", Pronoun3rd);
        assert!(!compatible(&i, &he, &kb));
        let their_car = mention(4, 4, "car", Possessive);
        assert!(!compatible(&i, &their_car, &kb));
    }

    #[test]
    fn parts_unify_with_their_whole() {
        let kb = KnowledgeBase::seed();
        let car = mention(0, 0, "car", Definite);
        let door = mention(1, 0, "door", Possessive);
        assert!(compatible(&car, &door, &kb));
        let trailer = mention(2, 1, "trailer", Definite);
        assert!(!compatible(&car, &trailer, &kb));
    }

    #[test]
    fn same_clause_arguments_are_distinct() {
        let kb = KnowledgeBase::seed();
        let mut a = mention(0, 0, "vehicle", Definite);
        let mut b = mention(1, 0, "car", Definite);
        assert!(compatible(&a, &b, &kb));
        a.grammatical_role = GrammaticalRole::Subject;
        b.grammatical_role = GrammaticalRole::Object;
        assert!(!compatible(&a, &b, &kb));
    }

    #[test]
    fn single_and_empty() {
        let kb = KnowledgeBase::seed();
        assert_eq!(resolve(&[], &kb).unwrap().cost, 0);
        let p = resolve(&[mention(0, 0, "car", Definite)], &kb).unwrap();
        assert_eq!(p.cost, 1);
        assert_eq!(p.assignment, [0]);
    }

    #[test]
    fn pairwise_incompatible_are_singletons() {
        let kb = KnowledgeBase::seed();
        let ms: Vec<_> = (0..3).map(|i| mention(i, i, "car", Indefinite)).collect();
        assert_eq!(resolve(&ms, &kb).unwrap().cost, 3);
    }

    #[test]
    fn nearest_antecedent_tie_break() {
        let kb = KnowledgeBase::seed();
        // two incompatible indefinites, then a definite compatible with both
        let ms = vec![
            mention(0, 0, "car", Indefinite),
            mention(1, 1, "truck", Indefinite),
            mention(2, 2, "vehicle", Definite),
        ];
        let p = resolve(&ms, &kb).unwrap();
        assert_eq!(p.cost, 2);
        assert_eq!(p.assignment, [0, 1, 1]);
        assert_eq!(antecedents(&p.assignment), [-1, -1, 1]);
    }

    #[test]
    fn cap_is_enforced() {
        let kb = KnowledgeBase::seed();
        let ms: Vec<_> = (0..5).map(|i| mention(i, i, "car", Definite)).collect();
        assert!(matches!(
            resolve_with_cap(&ms, &kb, 4),
            Err(Error::CapExceeded { found: 5, cap: 4 })
        ));
    }

    #[test]
    fn unit_concept_ignores_parts() {
        let kb = KnowledgeBase::seed();
        let ms = vec![
            mention(0, 0, "vehicle", Indefinite),
            mention(1, 1, "car", Definite),
            mention(2, 1, "bumper", Possessive),
        ];
        let p = resolve(&ms, &kb).unwrap();
        assert_eq!(p.cost, 1);
        assert_eq!(p.entities[0].unit_concept.as_str(), "vehicle");
    }
}
