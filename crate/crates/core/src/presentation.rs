//! The surface group `π1(N_g) = <x1, ..., xg | x1 x1 x2 x2 ... xg xg>`.
//!
//! `x_i` is the one-sided loop through the `i`-th crosscap of the sphere-with-crosscaps
//! model, crosscaps ordered left to right. Every generator formula in this crate is
//! written against this convention; a different crosscap ordering changes them all
//! coherently.

use std::fmt;

use crate::cover::OrientationCover;
use crate::dehn::DehnEngine;
use crate::error::{McgError, Result};
use crate::word::{free_reduce, Word};

/// Upper bound on the number of same-length cyclic representatives explored per class.
const ORBIT_CAP: usize = 4096;

#[derive(Clone, Debug)]
pub struct SurfacePresentation {
    genus: usize,
    engine: DehnEngine,
    cover: OrientationCover,
}

/// A conjugacy-class representative: cyclically reduced, stored as its least rotation so that
/// equality is equality up to rotation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CyclicWord {
    representative: Word,
}

impl CyclicWord {
    pub fn new(cyclically_reduced: Word) -> CyclicWord {
        CyclicWord {
            representative: cyclically_reduced.least_rotation(),
        }
    }

    pub fn representative(&self) -> &Word {
        &self.representative
    }

    pub fn len(&self) -> usize {
        self.representative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representative.is_empty()
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.representative)
    }
}

/// All minimal-length cyclic representatives reachable from a word, with conjugators.
struct MinimalOrbit {
    /// `(k, e)`: the original word equals `k e k^{-1}` in the group.
    entries: Vec<(Word, Word)>,
}

impl SurfacePresentation {
    pub fn new(genus: usize) -> Result<SurfacePresentation> {
        if genus < 3 {
            return Err(McgError::UnsupportedGenus(genus));
        }
        let codes: Vec<i16> = (1..=genus as i16).flat_map(|i| [i, i]).collect();
        Ok(SurfacePresentation {
            genus,
            engine: DehnEngine::new(Word::from_codes(&codes)),
            cover: OrientationCover::new(genus),
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn relator(&self) -> &Word {
        self.engine.relator()
    }

    pub fn relator_shifts(&self) -> Vec<Word> {
        self.engine.relator_shifts()
    }

    pub fn engine(&self) -> &DehnEngine {
        &self.engine
    }

    pub fn cover(&self) -> &OrientationCover {
        &self.cover
    }

    /// Dehn reduction. In genus 3 the crosscap relator is not C'(1/6), so a nonempty result is
    /// checked once more in the orientation cover and collapsed to the empty word when trivial.
    pub fn dehn_reduce(&self, w: &Word) -> Word {
        let r = self.engine.reduce(w);
        if self.genus == 3 && !r.is_empty() && self.cover.is_trivial(&r) {
            return Word::empty();
        }
        r
    }

    pub fn is_trivial(&self, w: &Word) -> bool {
        let trivial = if self.genus >= 4 {
            self.engine.reduce(w).is_empty()
        } else {
            self.cover.is_trivial(w)
        };
        debug_assert!(!trivial || abelianization_vanishes(self.genus, w));
        trivial
    }

    /// `a =_G b`
    pub fn equal(&self, a: &Word, b: &Word) -> bool {
        self.is_trivial(&a.concat(&b.inverse()))
    }

    /// Cyclically Dehn-reduced representative of the conjugacy class of `w`.
    /// The least entry of the minimal orbit is returned, so the result is a class invariant.
    pub fn cyclic_reduce(&self, w: &Word) -> CyclicWord {
        let orbit = self.minimal_orbit(w);
        let least = orbit.entries.into_iter().map(|(_, e)| e).min().unwrap_or_default();
        CyclicWord::new(least)
    }

    /// `(c, q)` with `w = c q c^{-1}` and `q` cyclically reduced.
    pub fn cyclic_reduce_with_conjugator(&self, w: &Word) -> (Word, Word) {
        self.engine.cyclic_reduce(w)
    }

    fn minimal_orbit(&self, w: &Word) -> MinimalOrbit {
        let (mut k, mut q) = self.engine.cyclic_reduce(w);
        loop {
            match self.engine.orbit(&q, ORBIT_CAP, self.genus >= 4) {
                Ok(entries) => {
                    let entries = entries
                        .into_iter()
                        .map(|(c, e)| (free_reduce(&k.concat(&c)), e))
                        .collect();
                    return MinimalOrbit { entries };
                }
                Err((c, shorter)) => {
                    k = free_reduce(&k.concat(&c));
                    q = shorter;
                }
            }
        }
    }

    /// A word `c` with `c a c^{-1} = b` in the group, or `None` when the cyclic forms differ.
    pub fn conjugator(&self, a: &Word, b: &Word) -> Option<Word> {
        let oa = self.minimal_orbit(a);
        let ob = self.minimal_orbit(b);
        let (kb, eb) = &ob.entries[0];
        let (ka, _) = oa.entries.iter().find(|(_, e)| e == eb)?;
        let c = free_reduce(&kb.concat(&ka.inverse()));
        debug_assert!(self.is_trivial(&a.conjugate_by(&c).concat(&b.inverse())));
        Some(c)
    }

    pub fn is_conjugate(&self, a: &Word, b: &Word) -> bool {
        if !same_homology_class(self.genus, a, b) {
            return false;
        }
        self.conjugator(a, b).is_some()
    }

    /// Candidate conjugators `c0 · z^k`, `|k| <= bound`, where `c0 a c0^{-1} = b` and `z` is the
    /// primitive root of `a`. Ordered `k = 0, 1, -1, 2, -2, ...`.
    pub fn find_conjugators(&self, a: &Word, b: &Word, bound: usize) -> Result<Vec<Word>> {
        let c0 = self
            .conjugator(a, b)
            .ok_or_else(|| McgError::ConjugacyMismatch(a.to_string(), b.to_string()))?;
        let z = self.primitive_root(a);
        let mut out = vec![c0.clone()];
        if z.is_empty() {
            return Ok(out);
        }
        for k in 1..=bound as i64 {
            out.push(c0.mul(&z.pow(k)));
            out.push(c0.mul(&z.pow(-k)));
        }
        Ok(out)
    }

    /// Root `z` of `a` with `a = z^m`, `m` maximal among visible powers of the cyclic form.
    pub fn primitive_root(&self, a: &Word) -> Word {
        let (k, q) = self.engine.cyclic_reduce(a);
        let n = q.len();
        if n == 0 {
            return Word::empty();
        }
        let period = (1..=n)
            .find(|&d| n % d == 0 && (d..n).all(|j| q.letters()[j] == q.letters()[j - d]))
            .unwrap_or(n);
        q.prefix(period).conjugate_by(&k)
    }
}

/// The image of `w` in `H1(N_g; Z) = Z^g / (2(x1 + ... + xg))` is zero.
pub fn abelianization_vanishes(genus: usize, w: &Word) -> bool {
    let v = w.exponent_vector(genus);
    let first = v[0];
    first % 2 == 0 && v.iter().all(|&e| e == first)
}

/// Equal images in `H1(N_g; Z)`.
pub fn same_homology_class(genus: usize, a: &Word, b: &Word) -> bool {
    abelianization_vanishes(genus, &a.concat(&b.inverse()))
}
