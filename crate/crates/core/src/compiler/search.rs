//! Exhaustive search over canonical braid words.
//!
//! Canonical words alternate generators and use powers `+-1..=+-4`, so there
//! are `16 * 8^(L-1)` of them with `L` letters. The search splits every word
//! into a first-applied part `A` and a second part `B` and matches them in
//! the middle: all `B` up to `floor(L/2)` letters go into KD-trees of unit
//! quaternions, and every `A` up to `ceil(L/2)` letters asks for the `B`
//! nearest to `T A^dag`. Right multiplication by `A` is an isometry of the
//! quaternion sphere, so the match distance is the exact gate distance of
//! the combined word.

use rayon::prelude::*;
use serde::Serialize;

use super::kdtree::KdTree;
use super::{distance_up_to_phase, evaluate, BraidWord, Letter, Su2};
use crate::braid_space::{BraidSpace, Generator, Space};
use crate::error::Result;
use crate::linalg::{ensure_square, ensure_unitary, CMatrix};

const POWERS: [i32; 8] = [-4, -3, -2, -1, 1, 2, 3, 4];

/// Cap on the number of word evaluations (table entries plus queries).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    pub max_evaluations: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_evaluations: 10_000_000 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub word: BraidWord,
    /// Exact distance up to phase of the returned word to the target.
    pub distance: f64,
    /// True when the limits were binding: the evaluation budget forced a
    /// shorter word length than requested, or no letters were allowed for a
    /// target the empty word does not reach.
    pub exhausted: bool,
    /// Longest word length that was covered exhaustively.
    pub searched_letters: usize,
    pub evaluations: u64,
}

/// Number of canonical words with at most `max_letters` letters, including
/// the empty word.
pub fn canonical_word_count(max_letters: usize) -> u64 {
    let mut total = 1u64;
    let mut layer = 16u64;
    for _ in 0..max_letters {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(8);
    }
    total
}

fn split(letters: usize) -> (usize, usize) {
    (letters.div_ceil(2), letters / 2)
}

fn cost(letters: usize) -> u64 {
    let (a, b) = split(letters);
    canonical_word_count(a).saturating_add(canonical_word_count(b))
}

/// Compact encoding of a canonical word: the first generator and one
/// base-8 digit per letter indexing [`POWERS`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Code {
    len: u8,
    first: u8,
    digits: u64,
}

impl Code {
    const EMPTY: Code = Code { len: 0, first: 0, digits: 0 };

    fn push(self, generator: Generator, digit: usize) -> Code {
        let first = if self.len == 0 { generator_bit(generator) } else { self.first };
        Code { len: self.len + 1, first, digits: self.digits | (digit as u64) << (3 * self.len as u64) }
    }

    fn letters(self) -> Vec<Letter> {
        let mut generator = if self.first == 0 { Generator::S12 } else { Generator::S23 };
        (0..self.len)
            .map(|i| {
                let digit = (self.digits >> (3 * i as u64)) & 7;
                let letter = Letter { generator, power: POWERS[digit as usize] };
                generator = generator.other();
                letter
            })
            .collect()
    }
}

fn generator_bit(g: Generator) -> u8 {
    match g {
        Generator::S12 => 0,
        Generator::S23 => 1,
    }
}

struct Alphabet {
    // [generator][digit]
    letters: [[Su2; 8]; 2],
}

impl Alphabet {
    fn new(braids: &BraidSpace) -> Self {
        let row = |g: Generator| POWERS.map(|p| Su2::from_unitary(&braids.power(Space::Logical, g, p)));
        Alphabet { letters: [row(Generator::S12), row(Generator::S23)] }
    }

    fn get(&self, g: Generator, digit: usize) -> Su2 {
        self.letters[generator_bit(g) as usize][digit]
    }
}

/// Visit every canonical word of at most `max_len` letters that extends
/// `code`, with `u` the SU(2) image of `code`.
fn enumerate<F: FnMut(Su2, Code, Option<Generator>)>(
    alphabet: &Alphabet,
    u: Su2,
    code: Code,
    last: Option<Generator>,
    max_len: usize,
    visit: &mut F,
) {
    visit(u, code, last);
    if code.len as usize >= max_len {
        return;
    }
    for g in Generator::ALL {
        if Some(g) == last {
            continue;
        }
        for digit in 0..POWERS.len() {
            enumerate(alphabet, alphabet.get(g, digit).mul(u), code.push(g, digit), Some(g), max_len, visit);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
struct Candidate {
    dist2: f64,
    len: u8,
    a: Code,
    b: u32,
}

fn better(x: Option<Candidate>, y: Option<Candidate>) -> Option<Candidate> {
    match (x, y) {
        (Some(p), Some(q)) => Some(if q.partial_cmp(&p) == Some(std::cmp::Ordering::Less) { q } else { p }),
        (p, None) => p,
        (None, q) => q,
    }
}

/// Best canonical word of at most `max_letters` letters for a 2x2 target,
/// evaluated on the logical qubit.
pub fn search_word(target: &CMatrix, max_letters: usize, budget: SearchBudget, braids: &BraidSpace) -> Result<SearchResult> {
    ensure_square(target, 2)?;
    ensure_unitary(target, 1e-8)?;

    let mut letters = max_letters;
    while letters > 0 && cost(letters) > budget.max_evaluations {
        letters -= 1;
    }
    let (a_len, b_len) = split(letters);
    let alphabet = Alphabet::new(braids);
    let t = Su2::from_unitary(target);

    // B-part tables, one per generator of the first applied letter. The
    // empty word goes in both.
    let mut codes = Vec::new();
    let mut points: [Vec<([f64; 4], u32)>; 2] = [Vec::new(), Vec::new()];
    enumerate(&alphabet, Su2::IDENTITY, Code::EMPTY, None, b_len, &mut |u, code, _| {
        let idx = codes.len() as u32;
        codes.push(code);
        match code.len {
            0 => {
                points[0].push((u.coords(), idx));
                points[1].push((u.coords(), idx));
            }
            _ => points[code.first as usize].push((u.coords(), idx)),
        }
    });
    let [p12, p23] = points;
    let trees = [KdTree::new(p12), KdTree::new(p23)];

    let query = |u_a: Su2, code: Code, last: Option<Generator>, best: &mut Option<Candidate>| {
        let goal = t.mul(u_a.adjoint());
        let tree_ids: &[usize] = match last {
            None => &[0, 1],
            Some(Generator::S12) => &[1],
            Some(Generator::S23) => &[0],
        };
        for &tree_id in tree_ids {
            for q in [goal, goal.neg()] {
                let bound = best.map_or(f64::INFINITY, |b| b.dist2);
                // Allow equal distances through so shorter words can win ties.
                let bound = if bound.is_finite() { bound * (1.0 + 1e-12) + 1e-300 } else { bound };
                if let Some((dist2, b)) = trees[tree_id].nearest(&q.coords(), bound) {
                    let len = code.len + codes[b as usize].len;
                    *best = better(*best, Some(Candidate { dist2, len, a: code, b }));
                }
            }
        }
    };

    // The empty A-part, then one parallel task per first letter.
    let mut best = None;
    query(Su2::IDENTITY, Code::EMPTY, None, &mut best);
    let mut evaluations = codes.len() as u64 + 1;
    if a_len > 0 {
        let starts: Vec<(Generator, usize)> =
            Generator::ALL.iter().flat_map(|&g| (0..POWERS.len()).map(move |d| (g, d))).collect();
        let results: Vec<(Option<Candidate>, u64)> = starts
            .par_iter()
            .map(|&(g, digit)| {
                let mut local = best;
                let mut count = 0u64;
                enumerate(&alphabet, alphabet.get(g, digit), Code::EMPTY.push(g, digit), Some(g), a_len, &mut |u, code, last| {
                    count += 1;
                    query(u, code, last, &mut local);
                });
                (local, count)
            })
            .collect();
        for (candidate, count) in results {
            best = better(best, candidate);
            evaluations += count;
        }
    }

    let best = best.expect("the empty word is always a candidate");
    let mut word_letters = best.a.letters();
    word_letters.extend(codes[best.b as usize].letters());
    let word = BraidWord::from_letters(word_letters)?;
    let distance = distance_up_to_phase(&evaluate(&word, Space::Logical, braids), target)?;
    let exhausted = letters < max_letters || (letters == 0 && distance > 1e-12);
    Ok(SearchResult { word, distance, exhausted, searched_letters: letters, evaluations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::identity;

    #[test]
    fn word_counts() {
        assert_eq!(canonical_word_count(0), 1);
        assert_eq!(canonical_word_count(1), 17);
        assert_eq!(canonical_word_count(2), 1 + 16 + 128);
    }

    #[test]
    fn code_round_trip() {
        let code = Code::EMPTY.push(Generator::S23, 0).push(Generator::S12, 7).push(Generator::S23, 3);
        let letters = code.letters();
        assert_eq!(letters[0], Letter { generator: Generator::S23, power: -4 });
        assert_eq!(letters[1], Letter { generator: Generator::S12, power: 4 });
        assert_eq!(letters[2], Letter { generator: Generator::S23, power: -1 });
    }

    #[test]
    fn identity_compiles_to_empty_word() {
        let braids = BraidSpace::fibonacci();
        let r = search_word(&identity(2), 4, SearchBudget::default(), &braids).unwrap();
        assert!(r.word.is_empty());
        assert_eq!(r.distance, 0.0);
    }

    #[test]
    fn budget_limits_length() {
        let braids = BraidSpace::fibonacci();
        let target = crate::reference::hadamard();
        let r = search_word(&target, 8, SearchBudget { max_evaluations: 100 }, &braids).unwrap();
        assert!(r.exhausted);
        assert_eq!(r.searched_letters, 2);
        assert!(r.word.len() <= 2);
    }
}
