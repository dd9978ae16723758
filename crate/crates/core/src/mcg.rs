//! Deciding mapping-class questions through `Out(π1(N_g))`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automorphism::Automorphism;
use crate::catalog::{GeneratorCatalog, MappingClassWord};
use crate::error::Result;
use crate::presentation::{same_homology_class, CyclicWord, SurfacePresentation};
use crate::word::{free_reduce, Word};

pub const DEFAULT_CONJUGATOR_BOUND: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InnerVerdict {
    /// `a(x) = w x w⁻¹` for every generator.
    Inner(Word),
    NotInner,
    /// No conjugator `c0 · x1^k` with `|k| <= bound` works.
    Inconclusive(usize),
}

impl InnerVerdict {
    pub fn is_inner(&self) -> bool {
        matches!(self, InnerVerdict::Inner(_))
    }
}

/// Decides whether `a` is conjugation by a group element.
///
/// Any inner witness `w` satisfies `w x1 w⁻¹ = a(x1)`, so `w = c0 · x1^k` where `c0` is one such
/// conjugator and `x1^k` ranges over the centralizer of `x1`; likewise `w = d0 · x2^m`. Only
/// `|k| <= bound` is searched. When the presentation is C'(1/6) (genus at least 4) the equation
/// `x1^k x2^-m = c0⁻¹ d0` caps `|k|` by a multiple of the reduced length of `c0⁻¹ d0`, and an
/// exhausted search within that cap is a proof of `NotInner`.
pub fn is_inner(p: &SurfacePresentation, a: &Automorphism, bound: usize) -> InnerVerdict {
    let g = p.genus();
    for i in 1..=g {
        if !same_homology_class(g, a.image(i), &Word::letter(i)) {
            return InnerVerdict::NotInner;
        }
    }
    let candidates = match p.find_conjugators(&Word::letter(1), a.image(1), bound) {
        Ok(c) => c,
        Err(_) => return InnerVerdict::NotInner,
    };
    let Some(d0) = p.conjugator(&Word::letter(2), a.image(2)) else {
        return InnerVerdict::NotInner;
    };
    for c in &candidates {
        let ok = (1..=g).all(|i| {
            let lhs = Word::letter(i).conjugate_by(c);
            p.equal(&lhs, a.image(i))
        });
        if ok {
            return InnerVerdict::Inner(p.dehn_reduce(&free_reduce(c)));
        }
    }
    match power_cap(p, &candidates[0], &d0) {
        Some(cap) if cap <= bound => InnerVerdict::NotInner,
        _ => InnerVerdict::Inconclusive(bound),
    }
}

/// Upper bound on `|k|` in `x1^k x2^-m = c0⁻¹ d0`, when the presentation admits one.
///
/// `x1^k x2^-m` is Dehn reduced, and two Dehn-reduced words equal in a C'(1/6) group bound a
/// thin diagram whose cells have at most `n/2` letters on one side and at least `n/2 - 2P` on
/// the other (`n` the relator length, `P` the piece length).
fn power_cap(p: &SurfacePresentation, c0: &Word, d0: &Word) -> Option<usize> {
    let e = p.engine();
    let half = e.relator_len() / 2;
    let piece = e.max_piece_len();
    if p.genus() < 4 || half <= 2 * piece {
        return None;
    }
    let h = p.dehn_reduce(&free_reduce(&c0.inverse().concat(d0)));
    Some((h.len() * half).div_ceil(half - 2 * piece))
}

/// `w1 = w2` in the mapping class group.
pub fn mcg_equal(
    cat: &GeneratorCatalog,
    w1: &MappingClassWord,
    w2: &MappingClassWord,
    bound: usize,
) -> Result<InnerVerdict> {
    let a = cat.evaluate(&(w1.clone() * w2.inverse()))?;
    Ok(is_inner(cat.presentation(), &a, bound))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderVerdict {
    /// Least `n` with an inner power, and the conjugator realising `w^n`.
    Finite { order: usize, witness: Word },
    /// No power up to `max` is inner.
    NotFoundWithin(usize),
    /// Some power that could be the order was undecided within the conjugator bound.
    Inconclusive { power: usize, bound: usize },
}

impl fmt::Display for OrderVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderVerdict::Finite { order, .. } => write!(f, "{order}"),
            OrderVerdict::NotFoundWithin(max) => write!(f, "> {max}"),
            OrderVerdict::Inconclusive { power, bound } => {
                write!(f, "inconclusive at power {power} (conjugator bound {bound})")
            }
        }
    }
}

/// Order of an automorphism's outer class.
pub fn automorphism_order(p: &SurfacePresentation, a: &Automorphism, max: usize, bound: usize) -> Result<OrderVerdict> {
    let mut verdicts: Vec<InnerVerdict> = Vec::with_capacity(max);
    let mut acc = a.reduced(p);
    for n in 1..=max {
        if n > 1 {
            acc = a.compose(&acc, p)?;
        }
        let v = is_inner(p, &acc, bound);
        if let InnerVerdict::Inner(witness) = &v {
            if let Some(d) = (1..n).find(|&d| n % d == 0 && matches!(verdicts[d - 1], InnerVerdict::Inconclusive(_))) {
                return Ok(OrderVerdict::Inconclusive { power: d, bound });
            }
            return Ok(OrderVerdict::Finite {
                order: n,
                witness: witness.clone(),
            });
        }
        verdicts.push(v);
    }
    if let Some(d) = verdicts.iter().position(|v| matches!(v, InnerVerdict::Inconclusive(_))) {
        return Ok(OrderVerdict::Inconclusive { power: d + 1, bound });
    }
    Ok(OrderVerdict::NotFoundWithin(max))
}

pub fn order_of(cat: &GeneratorCatalog, w: &MappingClassWord, max: usize, bound: usize) -> Result<OrderVerdict> {
    let a = cat.evaluate(w)?;
    automorphism_order(cat.presentation(), &a, max, bound)
}

/// Unoriented isotopy class of a closed curve, carried by a conjugacy class of `π1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveClass {
    cyclic: CyclicWord,
}

impl CurveClass {
    pub fn new(p: &SurfacePresentation, w: &Word) -> CurveClass {
        let fwd = p.cyclic_reduce(w);
        let back = p.cyclic_reduce(&w.inverse());
        CurveClass {
            cyclic: fwd.min(back),
        }
    }

    pub fn cyclic(&self) -> &CyclicWord {
        &self.cyclic
    }

    pub fn word(&self) -> &Word {
        self.cyclic.representative()
    }

    pub fn unoriented(&self) -> bool {
        true
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cyclic)
    }
}

pub fn curve_image(cat: &GeneratorCatalog, w: &MappingClassWord, c: &CurveClass) -> Result<CurveClass> {
    let a = cat.evaluate(w)?;
    let p = cat.presentation();
    Ok(CurveClass::new(p, &a.apply(p, c.word())))
}

/// Conjugate, allowing one side to be inverted.
pub fn curves_equal(p: &SurfacePresentation, a: &CurveClass, b: &CurveClass) -> bool {
    a == b || p.is_conjugate(a.word(), b.word()) || p.is_conjugate(a.word(), &b.word().inverse())
}
