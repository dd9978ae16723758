//! The `2g`-gon model of `N_g` and Dehn twists read off from it.
//!
//! Sides `0..2g` run counterclockwise; sides `2(m-1)` and `2(m-1)+1` are glued in the same
//! direction and crossing the first copy is the letter `x_m`. Reading the vertex link gives
//! `x1 x1 ... xg xg`, so the dual generators coincide with the crosscap generators.
//!
//! A curve is recorded by the sequence of sides it exits through, together with the position
//! (`slot`) of each crossing along its side. The image of each generator under the twist is the
//! dual loop with a copy of the curve spliced in at every crossing.

use crate::automorphism::Automorphism;
use crate::error::{McgError, Result};
use crate::word::{free_reduce, Letter, Word};

/// One crossing of the curve with the polygon boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Passage {
    /// Letter read when crossing.
    pub letter: Letter,
    /// Position along the side; larger is further counterclockwise.
    pub slot: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonCurve {
    genus: usize,
    passages: Vec<Passage>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Direction {
    RightToLeft,
    LeftToRight,
}

impl Direction {
    fn flip(self) -> Direction {
        match self {
            Direction::RightToLeft => Direction::LeftToRight,
            Direction::LeftToRight => Direction::RightToLeft,
        }
    }
}

fn exit_side(l: Letter) -> usize {
    2 * (l.index() - 1) + usize::from(!l.is_positive())
}

impl PolygonCurve {
    pub fn new(genus: usize, passages: Vec<Passage>) -> Result<PolygonCurve> {
        if passages.is_empty() {
            return Err(McgError::InvalidSpec("curve has no passages".into()));
        }
        if let Some(p) = passages.iter().find(|p| p.letter.index() > genus) {
            return Err(McgError::InvalidIndex {
                index: p.letter.index(),
                genus,
            });
        }
        Ok(PolygonCurve { genus, passages })
    }

    /// A curve through the crosscaps in the given order, entering each one once, all at slot 0.
    pub fn chain(genus: usize, crosscaps: &[usize]) -> Result<PolygonCurve> {
        let n = crosscaps.len();
        let passages = (0..n)
            .map(|j| Passage {
                letter: Letter::pos(crosscaps[(j + 1) % n]),
                slot: 0,
            })
            .collect();
        PolygonCurve::new(genus, passages)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn passages(&self) -> &[Passage] {
        &self.passages
    }

    /// The free homotopy class as a cyclic word.
    pub fn word(&self) -> Word {
        Word::from_letters(self.passages.iter().map(|p| p.letter).collect())
    }

    fn slot_span(&self) -> u64 {
        2 * u64::from(self.passages.iter().map(|p| p.slot).max().unwrap_or(0)) + 4
    }

    fn key(&self, side: usize, slot: u32) -> u64 {
        side as u64 * self.slot_span() + 2 * u64::from(slot) + 2
    }

    /// Position of the dual arc's crossing on `side`: after every curve endpoint.
    fn dual_key(&self, side: usize) -> u64 {
        side as u64 * self.slot_span() + self.slot_span() - 1
    }

    /// Chord `k` as `(start key, end key)`.
    fn chords(&self) -> Vec<(u64, u64)> {
        let n = self.passages.len();
        (0..n)
            .map(|k| {
                let prev = self.passages[(k + n - 1) % n];
                let cur = self.passages[k];
                (
                    self.key(exit_side(prev.letter) ^ 1, prev.slot),
                    self.key(exit_side(cur.letter), cur.slot),
                )
            })
            .collect()
    }

    /// Chords are pairwise non-crossing and use distinct boundary points.
    pub fn is_simple(&self) -> bool {
        let chords = self.chords();
        let mut points: Vec<u64> = chords.iter().flat_map(|&(a, b)| [a, b]).collect();
        points.sort_unstable();
        if points.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        for (i, &(a1, b1)) in chords.iter().enumerate() {
            let (lo1, hi1) = (a1.min(b1), a1.max(b1));
            for &(a2, b2) in &chords[i + 1..] {
                let inside = |x: u64| lo1 < x && x < hi1;
                if inside(a2) != inside(b2) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_two_sided(&self) -> bool {
        self.passages.len() % 2 == 0
    }

    /// The Dehn twist about this curve as an automorphism; `sign = -1` gives the inverse twist.
    pub fn twist(&self, sign: i8) -> Result<Automorphism> {
        if !self.is_simple() {
            return Err(McgError::InvalidSpec(format!("curve {} is not simple", self.word())));
        }
        if !self.is_two_sided() {
            return Err(McgError::InvalidSpec(format!("curve {} is one-sided", self.word())));
        }
        let n = self.passages.len();
        let ends: Vec<Letter> = self.passages.iter().map(|p| p.letter).collect();
        let chords = self.chords();
        let in_arc = |p: u64, q: u64, x: u64| if p < q { p < x && x < q } else { x > p || x < q };

        // Chords separating the base point (key 0) from the dual point, nearest first.
        let crossings = |target: u64| {
            let mut out: Vec<(u64, usize, Direction)> = chords
                .iter()
                .enumerate()
                .filter(|&(_, &(p, q))| in_arc(p, q, 0) != in_arc(p, q, target))
                .map(|(k, &(p, q))| {
                    let near = if p < target { p } else { q };
                    let dir = if in_arc(p, q, 0) {
                        Direction::RightToLeft
                    } else {
                        Direction::LeftToRight
                    };
                    (near, k, dir)
                })
                .collect();
            out.sort_unstable();
            out
        };
        let splice = |k: usize, dir: Direction, out: &mut Vec<Letter>| {
            let parity: i8 = if k % 2 == 0 { 1 } else { -1 };
            let dir = if parity * sign < 0 { dir.flip() } else { dir };
            match dir {
                Direction::RightToLeft => out.extend((0..n).map(|j| ends[(k + j) % n])),
                Direction::LeftToRight => out.extend((0..n).map(|j| ends[(k + 2 * n - 1 - j) % n].inverse())),
            }
        };

        let mut images = Vec::with_capacity(self.genus);
        for m in 1..=self.genus {
            let mut w = Vec::new();
            for &(_, k, dir) in &crossings(self.dual_key(2 * (m - 1))) {
                splice(k, dir, &mut w);
            }
            w.push(Letter::pos(m));
            for &(_, k, dir) in crossings(self.dual_key(2 * (m - 1) + 1)).iter().rev() {
                splice(k, dir.flip(), &mut w);
            }
            images.push(free_reduce(&Word::from_letters(w)));
        }
        Automorphism::new(self.genus, images)
    }
}

/// The curve `α_i` through crosscaps `i` and `i + 1`.
pub fn alpha_curve(genus: usize, i: usize) -> Result<PolygonCurve> {
    PolygonCurve::chain(genus, &[i, i + 1])
}
