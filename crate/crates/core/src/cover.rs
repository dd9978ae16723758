//! Word problem through the orientation double cover.
//!
//! The kernel of the orientation character of `π1(N_g)` is the fundamental group of the
//! closed orientable surface of genus `g - 1`. With Schreier transversal `{1, x1}` its
//! generators are `A_i = x_i x1^{-1}` (`i >= 2`) and `B_i = x1 x_i`; eliminating
//! `B_1 = (A_2 B_2 ... A_g B_g)^{-1}` leaves the single relator
//!
//! ```text
//! B_2 A_2 B_3 A_3 ... B_g A_g · (A_2 B_2 ... A_g B_g)^{-1}
//! ```
//!
//! of length `4(g-1)` whose pieces have length one. That presentation is C'(1/7) already
//! for `g = 3`, where the crosscap presentation itself is not C'(1/6).

use crate::dehn::DehnEngine;
use crate::word::{Letter, Word};

#[derive(Clone, Debug)]
pub struct OrientationCover {
    genus: usize,
    engine: DehnEngine,
}

impl OrientationCover {
    pub fn new(genus: usize) -> OrientationCover {
        let relator = cover_relator(genus);
        OrientationCover {
            genus,
            engine: DehnEngine::new(relator),
        }
    }

    pub fn engine(&self) -> &DehnEngine {
        &self.engine
    }

    fn a(&self, i: usize) -> Letter {
        Letter::pos(i - 1)
    }

    fn b(&self, i: usize) -> Letter {
        Letter::pos(self.genus + i - 2)
    }

    fn push_b(&self, out: &mut Vec<Letter>, i: usize, positive: bool) {
        if i > 1 {
            let l = self.b(i);
            out.push(if positive { l } else { l.inverse() });
            return;
        }
        // B_1 = (A_2 B_2 ... A_g B_g)^{-1}
        let mut prod: Vec<Letter> = Vec::with_capacity(2 * self.genus);
        for j in 2..=self.genus {
            prod.push(self.a(j));
            prod.push(self.b(j));
        }
        if positive {
            out.extend(prod.iter().rev().map(|l| l.inverse()));
        } else {
            out.extend(prod);
        }
    }

    /// Rewrites a word of even length in the cover generators; `None` for odd length.
    pub fn rewrite(&self, w: &Word) -> Option<Word> {
        if !w.is_two_sided() {
            return None;
        }
        let mut out = Vec::with_capacity(2 * w.len());
        let mut in_x1_coset = false;
        for &l in w.letters() {
            let i = l.index();
            match (in_x1_coset, l.is_positive()) {
                (false, true) => {
                    if i > 1 {
                        out.push(self.a(i));
                    }
                }
                (true, true) => self.push_b(&mut out, i, true),
                (false, false) => self.push_b(&mut out, i, false),
                (true, false) => {
                    if i > 1 {
                        out.push(self.a(i).inverse());
                    }
                }
            }
            in_x1_coset = !in_x1_coset;
        }
        debug_assert!(!in_x1_coset);
        Some(Word::from_letters(out))
    }

    pub fn is_trivial(&self, w: &Word) -> bool {
        match self.rewrite(w) {
            None => false,
            Some(v) => self.engine.reduce(&v).is_empty(),
        }
    }
}

fn cover_relator(genus: usize) -> Word {
    let a = |i: usize| Letter::pos(i - 1);
    let b = |i: usize| Letter::pos(genus + i - 2);
    let mut left = Vec::new();
    let mut right = Vec::new();
    for i in 2..=genus {
        left.push(b(i));
        left.push(a(i));
        right.push(a(i));
        right.push(b(i));
    }
    left.extend(right.iter().rev().map(|l| l.inverse()));
    Word::from_letters(left)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relator_shape() {
        for g in 3..=8 {
            let c = OrientationCover::new(g);
            assert_eq!(c.engine().relator_len(), 4 * (g - 1));
            assert_eq!(c.engine().max_piece_len(), 1);
        }
    }

    #[test]
    fn surface_relator_is_trivial_in_cover() {
        for g in 3..=6 {
            let c = OrientationCover::new(g);
            let codes: Vec<i16> = (1..=g as i16).flat_map(|i| [i, i]).collect();
            let r = Word::from_codes(&codes);
            assert!(c.is_trivial(&r));
            assert!(c.is_trivial(&r.conjugate_by(&Word::from_codes(&[2, -3]))));
            assert!(c.is_trivial(&r.conjugate_by(&Word::from_codes(&[1]))));
            assert!(!c.is_trivial(&Word::from_codes(&[1, 2])));
            assert!(!c.is_trivial(&Word::from_codes(&[1])));
        }
    }
}
