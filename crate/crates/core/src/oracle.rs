//! Congruence-closure oracle for `S(G)`.
//!
//! Enumerates every composable generator word up to a length bound and merges
//! words related by one of the defining relations applied inside a context:
//!
//! - `[s⁻¹][s][t] = [s⁻¹][st]`
//! - `[s][t][t⁻¹] = [st][t⁻¹]`
//! - `[r(s)][s] = [s] = [s][d(s)]`
//!
//! Every instance relates a word to a strictly shorter one, so scanning each
//! word for left-hand sides visits every relation instance that fits inside
//! the working bound. Derivations are allowed to pass through words somewhat
//! longer than the reported ones (see [`DERIVATION_SLACK`]). The result does not use [`ExelSemigroupoid::multiply`]; it is the
//! reference the closed-form product is checked against.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::groupoid::{ElementId, FiniteGroupoid};
use crate::semigroupoid::ExelSemigroupoid;

/// Upper bound on the number of words the oracle will materialize.
pub const WORD_BUDGET: usize = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("class count still changing at length {max_len}: {before} -> {after}")]
    BudgetExceeded { max_len: usize, before: usize, after: usize },
    #[error("more than {WORD_BUDGET} words up to length {0}")]
    TooManyWords(usize),
    #[error("maximum word length must be at least 2")]
    LengthTooSmall,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            // smaller index wins so representatives are the shortest words
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi] = lo;
        }
    }
}

/// Words of length `<= max_len`, partitioned into congruence classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordPartition {
    pub max_len: usize,
    /// Longest intermediate word a derivation was allowed to pass through.
    pub work_len: usize,
    /// Words ordered by length, then generation order.
    pub words: Vec<Vec<ElementId>>,
    /// Class index of each word; classes are numbered by first occurrence.
    pub class_of: Vec<usize>,
    pub class_count: usize,
}

impl WordPartition {
    /// The first (shortest) word of each class.
    pub fn representatives(&self) -> Vec<&[ElementId]> {
        let mut reps = vec![None; self.class_count];
        for (w, &c) in self.words.iter().zip(&self.class_of) {
            reps[c].get_or_insert(w.as_slice());
        }
        reps.into_iter().map(|r| r.expect("every class is non-empty")).collect()
    }

    /// The same partition restricted to words of length `<= len`.
    pub fn restrict(&self, len: usize) -> WordPartition {
        let keep = self.words.iter().take_while(|w| w.len() <= len).count();
        let (class_of, class_count) = renumber(self.class_of[..keep].iter().copied());
        WordPartition {
            max_len: len.min(self.max_len),
            work_len: self.work_len,
            words: self.words[..keep].to_vec(),
            class_of,
            class_count,
        }
    }
}

fn renumber(roots: impl Iterator<Item = usize>) -> (Vec<usize>, usize) {
    let mut numbering: HashMap<usize, usize> = HashMap::new();
    let class_of = roots
        .map(|root| {
            let next = numbering.len();
            *numbering.entry(root).or_insert(next)
        })
        .collect();
    (class_of, numbering.len())
}

fn composable_words(g: &FiniteGroupoid, max_len: usize) -> Result<Vec<Vec<ElementId>>, OracleError> {
    let mut words: Vec<Vec<ElementId>> = g.elements().map(|x| vec![x]).collect();
    let mut start = 0;
    for _ in 1..max_len {
        let end = words.len();
        for i in start..end {
            let last = *words[i].last().expect("non-empty");
            for x in g.elements() {
                if g.composable(last, x) {
                    let mut w = words[i].clone();
                    w.push(x);
                    words.push(w);
                    if words.len() > WORD_BUDGET {
                        return Err(OracleError::TooManyWords(max_len));
                    }
                }
            }
        }
        start = end;
    }
    Ok(words)
}

/// Closure over all words of length `<= work_len`, reported on words of
/// length `<= max_len`. No saturation check.
pub fn partition_words(g: &FiniteGroupoid, max_len: usize, work_len: usize) -> Result<WordPartition, OracleError> {
    let work_len = work_len.max(max_len);
    let words = composable_words(g, work_len)?;
    let index: HashMap<&[ElementId], usize> = words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let mut uf = UnionFind::new(words.len());

    let rewrite = |uf: &mut UnionFind, i: usize, w: &[ElementId], at: usize, width: usize, with: &[ElementId]| {
        let mut shorter = Vec::with_capacity(w.len() - width + with.len());
        shorter.extend_from_slice(&w[..at]);
        shorter.extend_from_slice(with);
        shorter.extend_from_slice(&w[at + width..]);
        uf.union(i, index[shorter.as_slice()]);
    };

    for (i, w) in words.iter().enumerate() {
        for at in 0..w.len() {
            if at + 1 < w.len() {
                let (s, t) = (w[at], w[at + 1]);
                if s == g.range(t) {
                    rewrite(&mut uf, i, w, at, 2, &[t]);
                }
                if t == g.source(s) {
                    rewrite(&mut uf, i, w, at, 2, &[s]);
                }
            }
            if at + 2 < w.len() {
                let (a, b, c) = (w[at], w[at + 1], w[at + 2]);
                if a == g.inverse(b) {
                    let bc = g.mul(b, c).expect("word is composable");
                    rewrite(&mut uf, i, w, at, 3, &[a, bc]);
                }
                if c == g.inverse(b) {
                    let ab = g.mul(a, b).expect("word is composable");
                    rewrite(&mut uf, i, w, at, 3, &[ab, c]);
                }
            }
        }
    }

    let roots: Vec<usize> = (0..words.len()).map(|i| uf.find(i)).collect();
    let (class_of, class_count) = renumber(roots.into_iter());
    let full = WordPartition { max_len: work_len, work_len, words, class_of, class_count };
    Ok(full.restrict(max_len))
}

/// Extra letters a derivation may use beyond `max_len` in [`congruence_classes`].
///
/// Some equalities between short words only follow through longer words:
/// in Z3, `[a]^6 = [a]^3` has no relation instance inside length 6.
pub const DERIVATION_SLACK: usize = 2;

/// Saturated partition of words up to `max_len`.
///
/// Fails with [`OracleError::BudgetExceeded`] unless the class count is the
/// same at `max_len - 1` and `max_len`, and the partition does not change when
/// the derivation bound grows from `max_len + DERIVATION_SLACK - 1` to
/// `max_len + DERIVATION_SLACK`.
pub fn congruence_classes(g: &FiniteGroupoid, max_len: usize) -> Result<WordPartition, OracleError> {
    if max_len < 2 {
        return Err(OracleError::LengthTooSmall);
    }
    let work = max_len + DERIVATION_SLACK;
    let part = partition_words(g, max_len, work)?;
    let coarser = partition_words(g, max_len, work - 1)?;
    if coarser.class_of != part.class_of {
        return Err(OracleError::BudgetExceeded { max_len, before: coarser.class_count, after: part.class_count });
    }
    let before = part.restrict(max_len - 1).class_count;
    if part.class_count != before {
        return Err(OracleError::BudgetExceeded { max_len, before, after: part.class_count });
    }
    Ok(part)
}

/// Outcome of comparing word normalization with an oracle partition.
#[derive(Debug, Clone, Serialize)]
pub struct OracleAgreement {
    pub max_len: usize,
    pub words: usize,
    pub classes: usize,
    pub distinct_normal_forms: usize,
    pub sg_size: usize,
    pub agrees: bool,
    /// Pairs of words that disagree, as label strings.
    pub witnesses: Vec<String>,
}

/// Checks that two words share an oracle class iff they have the same normal
/// form, and that the classes cover `S(G)`.
pub fn compare_with_normalizer(sg: &ExelSemigroupoid, part: &WordPartition) -> OracleAgreement {
    let g = sg.groupoid();
    let show = |w: &[ElementId]| w.iter().map(|&x| format!("[{}]", g.label(x))).collect::<String>();
    let mut form_of_class = BTreeMap::new();
    let mut class_of_form = BTreeMap::new();
    let mut witnesses = Vec::new();
    for (w, &c) in part.words.iter().zip(&part.class_of) {
        let nf = sg.normalize_word(w).expect("oracle words are composable");
        match form_of_class.get(&c) {
            None => {
                form_of_class.insert(c, (nf.clone(), w.clone()));
            }
            Some((other, ow)) if *other != nf && witnesses.len() < 8 => {
                witnesses.push(format!("{} ~ {} but normal forms differ", show(w), show(ow)));
            }
            _ => {}
        }
        match class_of_form.get(&nf) {
            None => {
                class_of_form.insert(nf, (c, w.clone()));
            }
            Some((other, ow)) if *other != c && witnesses.len() < 8 => {
                witnesses.push(format!("{} and {} share a normal form but not a class", show(w), show(ow)));
            }
            _ => {}
        }
    }
    let sg_size = sg.enumerate().len();
    let agrees = witnesses.is_empty() && class_of_form.len() == part.class_count && sg_size == part.class_count;
    OracleAgreement {
        max_len: part.max_len,
        words: part.words.len(),
        classes: part.class_count,
        distinct_normal_forms: class_of_form.len(),
        sg_size,
        agrees,
        witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::arrow_groupoid;

    #[test]
    fn z2_has_three_classes() {
        let g = FiniteGroupoid::cyclic(2);
        let part = congruence_classes(&g, 6).unwrap();
        assert_eq!(part.class_count, 3);
        assert_eq!(partition_words(&g, 5, 7).unwrap().class_count, 3);
    }

    #[test]
    fn trivial_groupoid_has_one_class() {
        let part = congruence_classes(&FiniteGroupoid::cyclic(1), 4).unwrap();
        assert_eq!(part.class_count, 1);
    }

    #[test]
    fn arrow_groupoid_has_six_classes() {
        let part = congruence_classes(&arrow_groupoid(), 6).unwrap();
        assert_eq!(part.class_count, 6);
    }

    #[test]
    fn oracle_fixes_the_inverse_chain_example() {
        // [g⁻¹][g][g⁻¹] lands in the class of [g⁻¹].
        let g = arrow_groupoid();
        let part = partition_words(&g, 4, 4).unwrap();
        let id = |l: &str| g.id(l).unwrap();
        let find = |w: &[ElementId]| part.class_of[part.words.iter().position(|x| x == w).unwrap()];
        assert_eq!(find(&[id("gi"), id("g"), id("gi")]), find(&[id("gi")]));
    }

    #[test]
    fn normalizer_agrees_on_small_groupoids() {
        for g in [FiniteGroupoid::cyclic(2), FiniteGroupoid::cyclic(3), arrow_groupoid()] {
            let sg = ExelSemigroupoid::new(g.clone());
            let part = congruence_classes(&g, 6).unwrap();
            let report = compare_with_normalizer(&sg, &part);
            assert!(report.agrees, "{report:?}");
        }
    }

    #[test]
    fn short_bound_is_reported() {
        assert_eq!(congruence_classes(&FiniteGroupoid::cyclic(2), 1).unwrap_err(), OracleError::LengthTooSmall);
        // Z3 words of length 2 cannot yet reach the class of [a]^3 = ε_a ε_{a²}.
        let err = congruence_classes(&FiniteGroupoid::cyclic(3), 2).unwrap_err();
        assert!(matches!(err, OracleError::BudgetExceeded { .. }), "{err:?}");
    }

    #[test]
    fn derivations_need_longer_words() {
        let g = FiniteGroupoid::cyclic(3);
        assert_eq!(partition_words(&g, 6, 6).unwrap().class_count, 10);
        assert_eq!(partition_words(&g, 6, 7).unwrap().class_count, 8);
        assert_eq!(congruence_classes(&g, 6).unwrap().class_count, 8);
    }
}
