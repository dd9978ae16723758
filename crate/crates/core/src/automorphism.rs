//! Automorphisms of `π1(N_g)` given by the images of the generators.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{McgError, Result};
use crate::presentation::SurfacePresentation;
use crate::word::{Letter, Word};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Automorphism {
    genus: usize,
    #[serde(with = "word_codes")]
    images: Vec<Word>,
}

impl Automorphism {
    pub fn new(genus: usize, images: Vec<Word>) -> Result<Automorphism> {
        if images.len() != genus {
            return Err(McgError::GenusMismatch(genus, images.len()));
        }
        if let Some(bad) = images.iter().map(|w| w.max_index()).find(|&m| m > genus) {
            return Err(McgError::InvalidIndex { index: bad, genus });
        }
        Ok(Automorphism { genus, images })
    }

    pub fn identity(genus: usize) -> Automorphism {
        Automorphism {
            genus,
            images: (1..=genus).map(Word::letter).collect(),
        }
    }

    /// Conjugation `x ↦ c x c^{-1}`.
    pub fn inner(genus: usize, c: &Word) -> Automorphism {
        Automorphism {
            genus,
            images: (1..=genus).map(|i| Word::letter(i).conjugate_by(c)).collect(),
        }
    }

    /// Identity except on the listed generators.
    pub fn with_images(genus: usize, changes: &[(usize, Word)]) -> Automorphism {
        let mut a = Automorphism::identity(genus);
        for (i, w) in changes {
            a.images[i - 1] = w.clone();
        }
        a
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Image of `x_i` (1-based).
    pub fn image(&self, i: usize) -> &Word {
        &self.images[i - 1]
    }

    fn letter_image(&self, l: Letter) -> Word {
        let w = &self.images[l.index() - 1];
        if l.is_positive() {
            w.clone()
        } else {
            w.inverse()
        }
    }

    /// Substitutes the images into `w` (free reduction only).
    pub fn apply_free(&self, w: &Word) -> Word {
        let mut out = Vec::new();
        for &l in w.letters() {
            out.extend_from_slice(self.letter_image(l).letters());
        }
        crate::word::free_reduce(&Word::from_letters(out))
    }

    /// Substitutes the images into `w` and Dehn-reduces.
    pub fn apply(&self, p: &SurfacePresentation, w: &Word) -> Word {
        p.dehn_reduce(&self.apply_free(w))
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Automorphism, p: &SurfacePresentation) -> Result<Automorphism> {
        if self.genus != other.genus {
            return Err(McgError::GenusMismatch(self.genus, other.genus));
        }
        if self.genus != p.genus() {
            return Err(McgError::GenusMismatch(self.genus, p.genus()));
        }
        Ok(Automorphism {
            genus: self.genus,
            images: other.images.iter().map(|w| self.apply(p, w)).collect(),
        })
    }

    /// Reduces every image.
    pub fn reduced(&self, p: &SurfacePresentation) -> Automorphism {
        Automorphism {
            genus: self.genus,
            images: self.images.iter().map(|w| p.dehn_reduce(w)).collect(),
        }
    }

    pub fn pow(&self, n: usize, p: &SurfacePresentation) -> Result<Automorphism> {
        let mut acc = Automorphism::identity(self.genus);
        for _ in 0..n {
            acc = self.compose(&acc, p)?;
        }
        Ok(acc)
    }

    /// Image of the relator `x1 x1 ... xg xg`.
    pub fn relator_image(&self, p: &SurfacePresentation) -> Word {
        self.apply(p, p.relator())
    }

    /// Validity certificate: the relator is sent to a conjugate of itself or its inverse.
    pub fn preserves_relator(&self, p: &SurfacePresentation) -> bool {
        let r = p.relator();
        let img = self.relator_image(p);
        img.is_empty() || p.is_conjugate(&img, r) || p.is_conjugate(&img, &r.inverse())
    }

    /// Total length of all images.
    pub fn size(&self) -> usize {
        self.images.iter().map(|w| w.len()).sum()
    }
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Automorphism[")?;
        for (i, w) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "x{} -> {}", i + 1, w)?;
        }
        write!(f, "]")
    }
}

mod word_codes {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::word::Word;

    pub fn serialize<S: Serializer>(images: &[Word], s: S) -> Result<S::Ok, S::Error> {
        let codes: Vec<Vec<i16>> = images.iter().map(|w| w.codes()).collect();
        codes.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Word>, D::Error> {
        let codes: Vec<Vec<i16>> = Vec::deserialize(d)?;
        if codes.iter().flatten().any(|&c| c == 0) {
            return Err(serde::de::Error::custom("letter code 0"));
        }
        Ok(codes.iter().map(|c| Word::from_codes(c)).collect())
    }
}
