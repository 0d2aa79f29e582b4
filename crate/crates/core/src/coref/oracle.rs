//! Exhaustive reference solver used to check `resolve`.

use super::{antecedents, build_partition, compat_matrix, Partition};
use crate::error::{Error, Result};
use crate::knowledge::KnowledgeBase;
use crate::mentions::Mention;

/// Largest input the oracle accepts (Bell(10) = 115975 partitions).
pub const ORACLE_MAX: usize = 10;

/// Enumerates every set partition as a restricted growth string, keeps the
/// pairwise-compatible ones, and returns the cheapest, breaking ties by the
/// lexicographically greatest antecedent vector.
pub fn brute_force_min_partition(mentions: &[Mention], kb: &KnowledgeBase) -> Result<Partition> {
    if mentions.len() > ORACLE_MAX {
        return Err(Error::OracleTooLarge {
            found: mentions.len(),
            max: ORACLE_MAX,
        });
    }
    let compat = compat_matrix(mentions, kb);
    let mut best: Option<(usize, Vec<isize>, Vec<usize>)> = None;
    let mut rgs = Vec::with_capacity(mentions.len());
    enumerate(&compat, &mut rgs, 0, &mut |assignment, blocks| {
        let key = antecedents(assignment);
        let better = match &best {
            None => true,
            Some((cost, a, _)) => blocks < *cost || (blocks == *cost && key > *a),
        };
        if better {
            best = Some((blocks, key, assignment.to_vec()));
        }
    });
    let (_, _, assignment) = best.unwrap_or_default();
    Ok(build_partition(mentions, &assignment, kb))
}

fn enumerate(
    compat: &[Vec<bool>],
    rgs: &mut Vec<usize>,
    blocks: usize,
    visit: &mut dyn FnMut(&[usize], usize),
) {
    let i = rgs.len();
    if i == compat.len() {
        visit(rgs, blocks);
        return;
    }
    for b in 0..=blocks {
        if (0..i).any(|j| rgs[j] == b && !compat[i][j]) {
            continue;
        }
        rgs.push(b);
        enumerate(compat, rgs, blocks.max(b + 1), visit);
        rgs.pop();
    }
}
