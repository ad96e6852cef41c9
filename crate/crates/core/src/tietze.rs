//! Length-reducing Tietze transformations.

use std::collections::HashSet;

use crate::presentation::Presentation;
use crate::word::{Letter, Word};

/// Key identifying a relator up to cyclic permutation and inversion.
fn cyclic_key(w: &Word) -> Vec<u32> {
    let c = w.cyclically_reduced();
    let mut best: Option<Vec<u32>> = None;
    for cand in [c.clone(), c.inverse()] {
        let codes: Vec<u32> = cand.letters().iter().map(|l| l.code()).collect();
        for k in 0..codes.len().max(1) {
            let rot: Vec<u32> = codes[k..].iter().chain(&codes[..k]).copied().collect();
            if best.as_ref().map_or(true, |b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

/// Cyclically reduces, drops trivial relators and duplicates up to rotation
/// and inversion. Keeps the first copy of each relator.
fn normalize(relators: &[Word]) -> Vec<Word> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for r in relators {
        let c = r.cyclically_reduced();
        if c.is_empty() {
            continue;
        }
        if seen.insert(cyclic_key(&c)) {
            out.push(c);
        }
    }
    out
}

struct Elimination {
    gen: usize,
    relator: usize,
    image: Word,
    new_total: usize,
}

/// Rotates a cyclically reduced `r` so that position `at` comes first.
fn rotate(r: &Word, at: usize) -> Vec<Letter> {
    let l = r.letters();
    l[at..].iter().chain(&l[..at]).copied().collect()
}

fn best_elimination(n_gens: usize, relators: &[Word]) -> Option<Elimination> {
    let current: usize = relators.iter().map(Word::len).sum();
    let mut best: Option<Elimination> = None;
    for gen in 0..n_gens {
        for (ri, r) in relators.iter().enumerate() {
            if r.occurrences(gen) != 1 {
                continue;
            }
            let at = r.letters().iter().position(|l| l.gen.0 == gen).unwrap();
            let rotated = rotate(r, at);
            // g^ε w = 1  ⇒  g = w⁻¹ (ε = 1) or g = w (ε = -1)
            let rest = Word::from_letters(rotated[1..].iter().copied());
            let image = if rotated[0].inverse { rest } else { rest.inverse() };
            let new_total: usize = relators
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != ri)
                .map(|(_, s)| {
                    if s.contains_generator(gen) {
                        s.eliminate_generator(gen, &image).cyclically_reduced().len()
                    } else {
                        s.len()
                    }
                })
                .sum();
            if new_total > current {
                continue;
            }
            // strict `<` keeps the lowest generator, then lowest relator, on ties
            if best.as_ref().map_or(true, |b| new_total < b.new_total) {
                best = Some(Elimination { gen, relator: ri, image, new_total });
            }
        }
    }
    best
}

/// Removes trivial and duplicate relators and eliminates generators that occur
/// exactly once in some relator, as long as the total relator length does not
/// grow. Each round performs at most one elimination.
pub fn simplify(p: &Presentation, max_rounds: usize) -> Presentation {
    if max_rounds == 0 {
        return p.clone();
    }
    let mut names = p.generator_names().to_vec();
    let mut relators = normalize(p.relators());
    for _ in 0..max_rounds {
        let Some(elim) = best_elimination(names.len(), &relators) else {
            break;
        };
        let rest: Vec<Word> = relators
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != elim.relator)
            .map(|(_, s)| s.eliminate_generator(elim.gen, &elim.image))
            .collect();
        names.remove(elim.gen);
        relators = normalize(&rest);
    }
    Presentation::new(names, relators).expect("elimination keeps names and indices consistent")
}
