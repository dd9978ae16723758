//! Named generators of `M(N_g)` and their action on `π1(N_g)`.
//!
//! With `a = x_i`, `b = x_{i+1}` and every other generator fixed:
//!
//! ```text
//! t_{α_i}:      a ↦ a a b,            b ↦ b⁻¹ a⁻¹ b
//! t_{α_i}⁻¹:    a ↦ a b⁻¹ a⁻¹,        b ↦ a b b
//! u_i:          a ↦ a a b a⁻¹ a⁻¹,    b ↦ a
//! u_i⁻¹:        a ↦ b,                b ↦ b⁻¹ b⁻¹ a b b
//! ```
//!
//! `α_i` is the curve `x_i x_{i+1}`. The twist about `β` (through crosscaps 1–4) is read off
//! the polygon model. `ε` is the curve `y⁻¹(α_{g-2})`, so `t_ε = y⁻¹ t_{α_{g-2}} y`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::automorphism::Automorphism;
use crate::error::{McgError, Result};
use crate::mcg::InnerVerdict;
use crate::model::PolygonCurve;
use crate::presentation::SurfacePresentation;
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeneratorKind {
    TwistAlpha(usize),
    TwistBeta,
    TwistEpsilon,
    CrosscapTransposition(usize),
    CrosscapSlideY,
}

impl GeneratorKind {
    pub fn is_twist(self) -> bool {
        matches!(
            self,
            GeneratorKind::TwistAlpha(_) | GeneratorKind::TwistBeta | GeneratorKind::TwistEpsilon
        )
    }

    fn check(self, genus: usize) -> Result<()> {
        match self {
            GeneratorKind::TwistAlpha(i) | GeneratorKind::CrosscapTransposition(i) => {
                if i == 0 || i >= genus {
                    return Err(McgError::InvalidIndex { index: i, genus });
                }
            }
            GeneratorKind::TwistBeta if genus < 4 => {
                return Err(McgError::InvalidIndex { index: 4, genus });
            }
            _ => {}
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorSymbol {
    pub kind: GeneratorKind,
    pub inverse: bool,
}

impl GeneratorSymbol {
    pub fn new(kind: GeneratorKind) -> GeneratorSymbol {
        GeneratorSymbol { kind, inverse: false }
    }

    pub fn inv(self) -> GeneratorSymbol {
        GeneratorSymbol {
            kind: self.kind,
            inverse: !self.inverse,
        }
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GeneratorKind::TwistAlpha(i) => write!(f, "a{i}")?,
            GeneratorKind::TwistBeta => write!(f, "b")?,
            GeneratorKind::TwistEpsilon => write!(f, "e")?,
            GeneratorKind::CrosscapTransposition(i) => write!(f, "u{i}")?,
            GeneratorKind::CrosscapSlideY => write!(f, "y")?,
        }
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

/// A product of catalog generators, evaluated left to right as a composition of maps:
/// `w1 w2` acts as `w1 ∘ w2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct MappingClassWord {
    symbols: Vec<GeneratorSymbol>,
}

impl MappingClassWord {
    pub fn identity() -> MappingClassWord {
        MappingClassWord::default()
    }

    pub fn from_symbols(symbols: Vec<GeneratorSymbol>) -> MappingClassWord {
        MappingClassWord { symbols }
    }

    pub fn generator(kind: GeneratorKind) -> MappingClassWord {
        MappingClassWord {
            symbols: vec![GeneratorSymbol::new(kind)],
        }
    }

    pub fn alpha(i: usize) -> MappingClassWord {
        MappingClassWord::generator(GeneratorKind::TwistAlpha(i))
    }

    pub fn beta() -> MappingClassWord {
        MappingClassWord::generator(GeneratorKind::TwistBeta)
    }

    pub fn epsilon() -> MappingClassWord {
        MappingClassWord::generator(GeneratorKind::TwistEpsilon)
    }

    pub fn u(i: usize) -> MappingClassWord {
        MappingClassWord::generator(GeneratorKind::CrosscapTransposition(i))
    }

    pub fn y() -> MappingClassWord {
        MappingClassWord::generator(GeneratorKind::CrosscapSlideY)
    }

    /// `s = t_{α1} t_{α2} ⋯ t_{α_{g-1}}`
    pub fn s(genus: usize) -> MappingClassWord {
        (1..genus).map(MappingClassWord::alpha).product()
    }

    /// `s' = t_{α1}² t_{α2} ⋯ t_{α_{g-1}}`
    pub fn s_prime(genus: usize) -> MappingClassWord {
        MappingClassWord::alpha(1) * MappingClassWord::s(genus)
    }

    /// `r = u1 u2 ⋯ u_{g-1}`
    pub fn r(genus: usize) -> MappingClassWord {
        (1..genus).map(MappingClassWord::u).product()
    }

    /// `r' = u2 ⋯ u_{g-1}`
    pub fn r_prime(genus: usize) -> MappingClassWord {
        (2..genus).map(MappingClassWord::u).product()
    }

    /// `y = t_{α_{g-1}} u_{g-1}`, expanded.
    pub fn y_expanded(genus: usize) -> MappingClassWord {
        MappingClassWord::alpha(genus - 1) * MappingClassWord::u(genus - 1)
    }

    /// `x = y⁻¹ t_{α2} t_{α3} t_{α4} t_β` for `g = 6`, `t_{α_{g-1}} u_{g-2} t_{α2} t_{α3} t_{α4} t_β`
    /// for `g >= 7`.
    pub fn x(genus: usize) -> Result<MappingClassWord> {
        let tail = MappingClassWord::alpha(2)
            * MappingClassWord::alpha(3)
            * MappingClassWord::alpha(4)
            * MappingClassWord::beta();
        match genus {
            6 => Ok(MappingClassWord::y().inverse() * tail),
            g if g >= 7 => Ok(MappingClassWord::alpha(g - 1) * MappingClassWord::u(g - 2) * tail),
            g => Err(McgError::UnsupportedGenus(g)),
        }
    }

    pub fn symbols(&self) -> &[GeneratorSymbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn inverse(&self) -> MappingClassWord {
        MappingClassWord {
            symbols: self.symbols.iter().rev().map(|s| s.inv()).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> MappingClassWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).map(|_| base.clone()).product()
    }

    /// `self · other · self⁻¹`
    pub fn conjugate(&self, other: &MappingClassWord) -> MappingClassWord {
        self.clone() * other.clone() * self.inverse()
    }

    /// Number of `u` and `y` symbols.
    pub fn orientation_reversals(&self) -> usize {
        self.symbols.iter().filter(|s| !s.kind.is_twist()).count()
    }

    pub fn check_genus(&self, genus: usize) -> Result<()> {
        self.symbols.iter().try_for_each(|s| s.kind.check(genus))
    }
}

impl std::ops::Mul for MappingClassWord {
    type Output = MappingClassWord;

    fn mul(mut self, rhs: MappingClassWord) -> MappingClassWord {
        self.symbols.extend(rhs.symbols);
        self
    }
}

impl std::iter::Product for MappingClassWord {
    fn product<I: Iterator<Item = MappingClassWord>>(iter: I) -> MappingClassWord {
        iter.fold(MappingClassWord::identity(), |a, b| a * b)
    }
}

impl fmt::Display for MappingClassWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            return write!(f, "1");
        }
        for (k, s) in self.symbols.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for MappingClassWord {
    type Err = McgError;

    /// Whitespace-separated tokens `a<i>`, `b`, `e`, `u<i>`, `y`, each optionally followed by
    /// `^<n>`; `1` is the empty word.
    fn from_str(s: &str) -> Result<MappingClassWord> {
        let mut out = MappingClassWord::identity();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<i64>()
                        .map_err(|_| McgError::Parse(format!("bad exponent in `{tok}`")))?,
                ),
                None => (tok, 1),
            };
            let index = |rest: &str| {
                rest.parse::<usize>()
                    .map_err(|_| McgError::Parse(format!("bad index in `{tok}`")))
            };
            let kind = match name.chars().next() {
                Some('a') => GeneratorKind::TwistAlpha(index(&name[1..])?),
                Some('u') => GeneratorKind::CrosscapTransposition(index(&name[1..])?),
                Some('b') if name == "b" => GeneratorKind::TwistBeta,
                Some('e') if name == "e" => GeneratorKind::TwistEpsilon,
                Some('y') if name == "y" => GeneratorKind::CrosscapSlideY,
                _ => return Err(McgError::Parse(format!("unknown generator `{tok}`"))),
            };
            out = out * MappingClassWord::generator(kind).pow(exp);
        }
        Ok(out)
    }
}

/// A named curve of the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NamedCurve {
    Alpha(usize),
    Beta,
    Epsilon,
}

impl fmt::Display for NamedCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedCurve::Alpha(i) => write!(f, "alpha{i}"),
            NamedCurve::Beta => write!(f, "beta"),
            NamedCurve::Epsilon => write!(f, "epsilon"),
        }
    }
}

fn x(i: usize) -> Word {
    Word::letter(i)
}

fn xi(i: usize) -> Word {
    Word::letter(i).inverse()
}

fn cat(parts: &[Word]) -> Word {
    parts.iter().fold(Word::empty(), |acc, w| acc.concat(w))
}

pub fn twist_alpha(genus: usize, i: usize) -> Automorphism {
    let (a, b) = (i, i + 1);
    Automorphism::with_images(
        genus,
        &[(a, cat(&[x(a), x(a), x(b)])), (b, cat(&[xi(b), xi(a), x(b)]))],
    )
}

pub fn twist_alpha_inverse(genus: usize, i: usize) -> Automorphism {
    let (a, b) = (i, i + 1);
    Automorphism::with_images(
        genus,
        &[(a, cat(&[x(a), xi(b), xi(a)])), (b, cat(&[x(a), x(b), x(b)]))],
    )
}

pub fn crosscap_transposition(genus: usize, i: usize) -> Automorphism {
    let (a, b) = (i, i + 1);
    Automorphism::with_images(genus, &[(a, cat(&[x(a), x(a), x(b), xi(a), xi(a)])), (b, x(a))])
}

pub fn crosscap_transposition_inverse(genus: usize, i: usize) -> Automorphism {
    let (a, b) = (i, i + 1);
    Automorphism::with_images(genus, &[(a, x(b)), (b, cat(&[xi(b), xi(b), x(a), x(b), x(b)]))])
}

/// Per-genus table of generator automorphisms, their inverses and the named curves.
#[derive(Clone, Debug)]
pub struct GeneratorCatalog {
    presentation: SurfacePresentation,
    maps: HashMap<GeneratorSymbol, Automorphism>,
    curves: HashMap<NamedCurve, Word>,
}

impl GeneratorCatalog {
    /// Builds the catalog and runs the validation suite (see [`GeneratorCatalog::validate`]).
    pub fn build(genus: usize) -> Result<GeneratorCatalog> {
        let cat = GeneratorCatalog::build_unchecked(genus)?;
        cat.validate()?;
        Ok(cat)
    }

    /// Builds the catalog without validation.
    pub fn build_unchecked(genus: usize) -> Result<GeneratorCatalog> {
        let p = SurfacePresentation::new(genus)?;
        let g = genus;
        let mut maps = HashMap::new();
        let mut curves = HashMap::new();
        let mut put = |kind: GeneratorKind, fwd: Automorphism, inv: Automorphism| {
            maps.insert(GeneratorSymbol::new(kind), fwd);
            maps.insert(GeneratorSymbol::new(kind).inv(), inv);
        };
        for i in 1..g {
            put(GeneratorKind::TwistAlpha(i), twist_alpha(g, i), twist_alpha_inverse(g, i));
            put(
                GeneratorKind::CrosscapTransposition(i),
                crosscap_transposition(g, i),
                crosscap_transposition_inverse(g, i),
            );
            curves.insert(NamedCurve::Alpha(i), x(i).concat(&x(i + 1)));
        }
        let y = twist_alpha(g, g - 1).compose(&crosscap_transposition(g, g - 1), &p)?;
        let y_inv = crosscap_transposition_inverse(g, g - 1).compose(&twist_alpha_inverse(g, g - 1), &p)?;
        put(GeneratorKind::CrosscapSlideY, y.clone(), y_inv.clone());

        let alpha = &curves[&NamedCurve::Alpha(g - 2)];
        let eps = p.cyclic_reduce(&y_inv.apply(&p, alpha)).representative().clone();
        curves.insert(NamedCurve::Epsilon, eps);
        let t_eps = y_inv.compose(&twist_alpha(g, g - 2).compose(&y, &p)?, &p)?;
        let t_eps_inv = y_inv.compose(&twist_alpha_inverse(g, g - 2).compose(&y, &p)?, &p)?;
        put(GeneratorKind::TwistEpsilon, t_eps, t_eps_inv);

        if g >= 4 {
            let beta = PolygonCurve::chain(g, &[1, 2, 3, 4])?;
            put(GeneratorKind::TwistBeta, beta.twist(1)?, beta.twist(-1)?);
            curves.insert(NamedCurve::Beta, Word::from_codes(&[1, 2, 3, 4]));
        }
        Ok(GeneratorCatalog {
            presentation: p,
            maps,
            curves,
        })
    }

    pub fn genus(&self) -> usize {
        self.presentation.genus()
    }

    pub fn presentation(&self) -> &SurfacePresentation {
        &self.presentation
    }

    pub fn automorphism(&self, sym: GeneratorSymbol) -> Result<&Automorphism> {
        sym.kind.check(self.genus())?;
        Ok(&self.maps[&sym])
    }

    pub fn generators(&self) -> Vec<GeneratorKind> {
        let mut kinds: Vec<GeneratorKind> = self.maps.keys().filter(|s| !s.inverse).map(|s| s.kind).collect();
        kinds.sort();
        kinds
    }

    pub fn curve_word(&self, c: NamedCurve) -> Result<&Word> {
        self.curves.get(&c).ok_or(match c {
            NamedCurve::Alpha(i) => McgError::InvalidIndex {
                index: i,
                genus: self.genus(),
            },
            _ => McgError::InvalidIndex {
                index: 4,
                genus: self.genus(),
            },
        })
    }

    /// The named curve's unoriented class.
    pub fn curve(&self, c: NamedCurve) -> Result<crate::mcg::CurveClass> {
        Ok(crate::mcg::CurveClass::new(&self.presentation, self.curve_word(c)?))
    }

    /// Left-to-right composition of the symbols' automorphisms.
    pub fn evaluate(&self, w: &MappingClassWord) -> Result<Automorphism> {
        w.check_genus(self.genus())?;
        let p = &self.presentation;
        let mut acc = Automorphism::identity(self.genus());
        for &sym in w.symbols() {
            acc = acc.compose(&self.maps[&sym], p)?;
        }
        Ok(acc)
    }

    /// Validation suite. Every failure names the relation that broke.
    pub fn validate(&self) -> Result<()> {
        let g = self.genus();
        let p = &self.presentation;
        let fail = |what: String| Err(McgError::ValidationFailure(what));
        let id = Automorphism::identity(g);

        let mut syms: Vec<&GeneratorSymbol> = self.maps.keys().collect();
        syms.sort();
        for &sym in &syms {
            let a = &self.maps[sym];
            if !a.preserves_relator(p) {
                return fail(format!("{sym} does not preserve the relator"));
            }
            let back = a.compose(&self.maps[&sym.inv()], p)?;
            if back != id {
                return fail(format!("{sym} composed with its stored inverse is not the identity"));
            }
            let support: Vec<usize> = match sym.kind {
                GeneratorKind::TwistAlpha(i) | GeneratorKind::CrosscapTransposition(i) => vec![i, i + 1],
                GeneratorKind::TwistBeta => vec![1, 2, 3, 4],
                _ => (1..=g).collect(),
            };
            if let Some(j) = (1..=g).find(|j| !support.contains(j) && a.image(*j) != &Word::letter(*j)) {
                return fail(format!("{sym} moves x{j} outside its support"));
            }
        }

        for (c, w) in &self.curves {
            if !w.is_two_sided() {
                return fail(format!("curve {c} is one-sided"));
            }
        }
        // Each twist fixes its own curve.
        let mut twist_curves = vec![(GeneratorKind::TwistEpsilon, NamedCurve::Epsilon)];
        twist_curves.extend((1..g).map(|i| (GeneratorKind::TwistAlpha(i), NamedCurve::Alpha(i))));
        if g >= 4 {
            twist_curves.push((GeneratorKind::TwistBeta, NamedCurve::Beta));
        }
        for &(kind, c) in &twist_curves {
            let w = &self.curves[&c];
            let img = self.maps[&GeneratorSymbol::new(kind)].apply(p, w);
            if !p.is_conjugate(&img, w) {
                return fail(format!("twist about {c} moves {c}"));
            }
        }

        let check = |lhs: MappingClassWord, rhs: MappingClassWord, what: String| -> Result<()> {
            match crate::mcg::mcg_equal(self, &lhs, &rhs, crate::mcg::DEFAULT_CONJUGATOR_BOUND)? {
                InnerVerdict::Inner(_) => Ok(()),
                _ => Err(McgError::ValidationFailure(what)),
            }
        };
        let a = MappingClassWord::alpha;
        for i in 1..g {
            for j in i + 1..g {
                if j == i + 1 {
                    check(a(i) * a(j) * a(i), a(j) * a(i) * a(j), format!("braid a{i} a{j}"))?;
                } else {
                    check(a(i) * a(j), a(j) * a(i), format!("commutation a{i} a{j}"))?;
                }
            }
        }
        if g >= 5 {
            let b = MappingClassWord::beta;
            for i in 1..g {
                if i == 4 {
                    check(b() * a(4) * b(), a(4) * b() * a(4), "braid b a4".into())?;
                } else {
                    check(b() * a(i), a(i) * b(), format!("commutation b a{i}"))?;
                }
            }
        }
        check(
            MappingClassWord::y(),
            MappingClassWord::y_expanded(g),
            "y = a_{g-1} u_{g-1}".into(),
        )?;
        Ok(())
    }
}
