//! The catalog of checkable claims and the batch runner.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::automorphism::Automorphism;
use crate::catalog::{GeneratorCatalog, GeneratorKind, MappingClassWord, NamedCurve};
use crate::error::{McgError, Result};
use crate::homology::{
    abelianize, build_eg_rotation, decompose_genus, decomposition_threshold, in_twist_subgroup, EgRotationSpec,
};
use crate::lantern::{self, RuleSet, SearchConfig};
use crate::mcg::{automorphism_order, is_inner, CurveClass, InnerVerdict, OrderVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClaimKind {
    Order,
    Identity,
    CurveImage,
    Determinant,
    EgDeterminant,
    Decomposition,
    LanternProof,
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated in the source argument.
    Published,
    /// Follows by direct computation from stated facts.
    Derived,
    /// Holds by construction.
    Trivial,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Published => "published",
            Provenance::Derived => "derived",
            Provenance::Trivial => "trivial",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Check {
    Order {
        genus: usize,
        word: MappingClassWord,
        order: usize,
    },
    Identity {
        genus: usize,
        lhs: MappingClassWord,
        rhs: MappingClassWord,
    },
    Curve {
        genus: usize,
        word: MappingClassWord,
        from: NamedCurve,
        to: NamedCurve,
    },
    Determinant {
        genus: usize,
        word: MappingClassWord,
        det: i8,
    },
    EgDeterminant {
        spec: EgRotationSpec,
        det: i8,
    },
    EgPower {
        spec: EgRotationSpec,
    },
    Decomposition {
        g: u64,
        k: u64,
    },
    Lantern {
        rules: LanternVariant,
        expect_proof: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum LanternVariant {
    Canonical,
    Without(String),
    ReversedLantern,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub id: String,
    pub kind: ClaimKind,
    pub statement: String,
    pub location: String,
    pub provenance: Provenance,
    pub expected: String,
    check: Check,
}

impl Claim {
    /// Genus the claim lives in, when it is a mapping-class claim.
    pub fn genus(&self) -> Option<usize> {
        match &self.check {
            Check::Order { genus, .. }
            | Check::Identity { genus, .. }
            | Check::Curve { genus, .. }
            | Check::Determinant { genus, .. } => Some(*genus),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// Search bounds; `order = None` means `4g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub conjugator: usize,
    pub order: Option<usize>,
    pub rewrite: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds {
            conjugator: crate::mcg::DEFAULT_CONJUGATOR_BOUND,
            order: None,
            rewrite: lantern::DEFAULT_BUDGET,
        }
    }
}

/// Bounds as actually applied to one claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppliedBounds {
    pub conjugator: usize,
    pub order: usize,
    pub rewrite: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub id: String,
    pub status: Status,
    pub expected: String,
    pub observed: String,
    pub witness: String,
    pub millis: u64,
    pub bounds: AppliedBounds,
}

/// Which part of the inventory to enumerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    pub genus: RangeInclusive<usize>,
    pub k: RangeInclusive<usize>,
    pub p: RangeInclusive<usize>,
    pub q: RangeInclusive<usize>,
}

impl Default for Selection {
    fn default() -> Selection {
        Selection {
            genus: 3..=9,
            k: 2..=16,
            p: 1..=3,
            q: 0..=2,
        }
    }
}

const LOC_ORDERS: &str = "main theorem, proof: orders of the torsion elements s, s', r, r'";
const LOC_GENUS3: &str = "main theorem, proof: genus 3 generators of orders 6, 4 and 2";
const LOC_GENUS5: &str = "main theorem, proof: genus 5 case";
const LOC_IDENTITY: &str = "main theorem, proof: braid relation consequences";
const LOC_ORBIT: &str = "main theorem, proof: the curves alpha_i form one orbit";
const LOC_X: &str = "main theorem, proof: properties of x for g >= 6";
const LOC_EVEN: &str = "main theorem, proof: even genus, G = <s, s', x r x^-1>";
const LOC_ODD: &str = "main theorem, proof: odd genus, G = <s, s', x r' x^-1>";
const LOC_TWIST_VARIANT: &str = "main theorem, proof: twist subgroup variant with s in place of r";
const LOC_TWIST_CRITERION: &str = "twist subgroup criterion: det(f_*) = 1 iff f is in the twist subgroup";
const LOC_NOT_TWIST: &str = "main theorem, proof: r (even g) and r' (odd g) are not in the twist subgroup";
const LOC_EG: &str = "rotation lemma for E_g: det(r_*) = (-1)^p";
const LOC_EG_ORDER: &str = "rotation lemma for E_g: the rotation has order k";
const LOC_COR: &str = "three conjugate generators corollary: n = m(k-1) + r";
const LOC_LANTERN: &str = "lantern lemma: t_alpha1 as a product of f, g, h and a conjugate of f";

fn mw(s: &str) -> MappingClassWord {
    s.parse().expect("static word")
}

struct Inventory {
    claims: Vec<Claim>,
}

impl Inventory {
    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        id: String,
        kind: ClaimKind,
        statement: String,
        location: &str,
        provenance: Provenance,
        expected: String,
        check: Check,
    ) {
        self.claims.push(Claim {
            id,
            kind,
            statement,
            location: location.to_string(),
            provenance,
            expected,
            check,
        });
    }

    fn order(&mut self, id: String, name: &str, genus: usize, word: MappingClassWord, order: usize, loc: &str, prov: Provenance) {
        self.push(
            id,
            ClaimKind::Order,
            format!("{name} has order {order} in genus {genus}"),
            loc,
            prov,
            order.to_string(),
            Check::Order { genus, word, order },
        );
    }

    fn identity(&mut self, id: String, genus: usize, text: &str, lhs: MappingClassWord, rhs: MappingClassWord, loc: &str, prov: Provenance) {
        self.push(
            id,
            ClaimKind::Identity,
            format!("{text} in genus {genus}"),
            loc,
            prov,
            "equal".into(),
            Check::Identity { genus, lhs, rhs },
        );
    }

    #[allow(clippy::too_many_arguments)]
    fn curve(
        &mut self,
        id: String,
        genus: usize,
        name: &str,
        word: MappingClassWord,
        from: NamedCurve,
        to: NamedCurve,
        loc: &str,
        prov: Provenance,
    ) {
        self.push(
            id,
            ClaimKind::CurveImage,
            format!("{name}({from}) = {to} in genus {genus}"),
            loc,
            prov,
            to.to_string(),
            Check::Curve { genus, word, from, to },
        );
    }

    fn det(&mut self, id: String, genus: usize, name: &str, word: MappingClassWord, det: i8, loc: &str, prov: Provenance) {
        self.push(
            id,
            ClaimKind::Determinant,
            format!("det of the homology action of {name} is {det} in genus {genus}"),
            loc,
            prov,
            det.to_string(),
            Check::Determinant { genus, word, det },
        );
    }

    fn mapping_class_claims(&mut self, g: usize) {
        use MappingClassWord as W;
        use NamedCurve::{Alpha, Beta, Epsilon};
        use Provenance::*;
        let gi = g as i64;

        if g == 3 {
            self.order("thm1.order.t1t2.g3".into(), "t_a1 t_a2", 3, mw("a1 a2"), 6, LOC_GENUS3, Published);
            self.order("thm1.order.t1sq-t2.g3".into(), "t_a1^2 t_a2", 3, mw("a1^2 a2"), 4, LOC_GENUS3, Published);
            self.order("thm1.order.u2.g3".into(), "u2", 3, mw("u2"), 2, LOC_GENUS3, Published);
        }
        if g >= 4 {
            let odd = g % 2 == 1;
            let (os, osp) = if odd { (2 * g, 2 * (g - 1)) } else { (g, g - 1) };
            self.order(format!("thm1.order.s.g{g}"), "s", g, W::s(g), os, LOC_ORDERS, Published);
            self.order(format!("thm1.order.s-prime.g{g}"), "s'", g, W::s_prime(g), osp, LOC_ORDERS, Published);
            self.order(format!("thm1.order.r.g{g}"), "r", g, W::r(g), g, LOC_ORDERS, Published);
            self.order(format!("thm1.order.r-prime.g{g}"), "r'", g, W::r_prime(g), g - 1, LOC_ORDERS, Published);

            self.identity(
                format!("thm1.identity.sprime-power.g{g}"),
                g,
                "(s')^(g-1) = s^g",
                W::s_prime(g).pow(gi - 1),
                W::s(g).pow(gi),
                LOC_IDENTITY,
                Published,
            );
            self.curve_orbits(g);
        }
        if g >= 5 {
            self.identity(
                format!("thm1.identity.t1.g{g}"),
                g,
                "t_a1 = s' s^-1",
                W::alpha(1),
                W::s_prime(g) * W::s(g).inverse(),
                LOC_IDENTITY,
                Published,
            );
        }
        if g == 5 {
            let stb = W::s(5) * W::beta();
            self.order("thm1.order.st-beta.g5".into(), "s t_b", 5, stb.clone(), 6, LOC_GENUS5, Published);
            self.identity(
                "thm1.identity.t4-beta.g5".into(),
                5,
                "t_a4 = (s t_b)^-1 t_b (s t_b)",
                W::alpha(4),
                stb.inverse() * W::beta() * stb,
                LOC_GENUS5,
                Published,
            );
            let y = W::y();
            let yry = y.inverse() * W::r_prime(5) * y.clone();
            self.curve("thm1.curve.y-fixes-a2.g5".into(), 5, "y", y.clone(), Alpha(2), Alpha(2), LOC_GENUS5, Published);
            self.curve("thm1.curve.rprime-a2.g5".into(), 5, "r'", W::r_prime(5), Alpha(2), Alpha(3), LOC_GENUS5, Published);
            self.curve("thm1.curve.yinv-a3.g5".into(), 5, "y^-1", y.inverse(), Alpha(3), Epsilon, LOC_GENUS5, Published);
            self.curve("thm1.curve.eps.g5".into(), 5, "y^-1 r' y", yry.clone(), Alpha(2), Epsilon, LOC_GENUS5, Published);
            self.det("thm1.det.conj-r-prime.g5".into(), 5, "y^-1 r' y", yry, -1, LOC_GENUS5, Published);
            let ysy = y.inverse() * W::s(5) * y;
            self.curve("thm1.twist.eps.g5".into(), 5, "y^-1 s y", ysy, Alpha(2), Epsilon, LOC_TWIST_VARIANT, Derived);
        }
        if g >= 6 {
            let x = W::x(g).expect("g >= 6");
            self.curve(format!("thm1.curve.x-a4.g{g}"), g, "x", x.clone(), Alpha(4), Beta, LOC_X, Published);
            self.curve(format!("thm1.curve.x-a2.g{g}"), g, "x", x.clone(), Alpha(2), Alpha(3), LOC_X, Published);
            if g == 6 {
                self.curve("thm1.curve.x-a3.g6".into(), 6, "x", x.clone(), Alpha(3), Epsilon, LOC_X, Published);
            } else {
                self.curve(format!("thm1.curve.x-alast.g{g}"), g, "x", x.clone(), Alpha(g - 1), Epsilon, LOC_X, Published);
            }
            // Even genus uses r, odd genus r'; the twist-subgroup variant uses s. The r-based
            // chain is also checked for odd g >= 7, where it holds verbatim.
            let mut rotations: Vec<(&str, MappingClassWord, &str, Provenance)> = vec![("r", W::r(g), LOC_EVEN, Published)];
            if g % 2 == 1 {
                rotations.push(("r-prime", W::r_prime(g), LOC_ODD, Published));
            }
            rotations.push(("s", W::s(g), LOC_TWIST_VARIANT, Derived));
            for (name, rot, loc, prov) in rotations {
                let shown = name.replace("-prime", "'");
                self.curve(
                    format!("thm1.curve.x{name}2x-a3.g{g}"),
                    g,
                    &format!("x {shown}^2 x^-1"),
                    x.conjugate(&rot.pow(2)),
                    Alpha(3),
                    Beta,
                    loc,
                    prov,
                );
                if g == 6 {
                    self.curve(
                        format!("thm1.curve.x{name}x-a3.g6"),
                        6,
                        &format!("x {shown} x^-1"),
                        x.conjugate(&rot),
                        Alpha(3),
                        Epsilon,
                        loc,
                        prov,
                    );
                } else {
                    self.curve(
                        format!("thm1.curve.x{name}{}x-a3.g{g}", g - 3),
                        g,
                        &format!("x {shown}^{} x^-1", g - 3),
                        x.conjugate(&rot.pow(gi - 3)),
                        Alpha(3),
                        Epsilon,
                        loc,
                        prov,
                    );
                }
            }
            let rot = if g % 2 == 0 { W::r(g) } else { W::r_prime(g) };
            let name = if g % 2 == 0 { "x r x^-1" } else { "x r' x^-1" };
            self.det(format!("thm1.det.conj-rotation.g{g}"), g, name, x.conjugate(&rot), -1, if g % 2 == 0 { LOC_EVEN } else { LOC_ODD }, Published);
        }
        self.determinants(g);
    }

    fn curve_orbits(&mut self, g: usize) {
        use MappingClassWord as W;
        for i in 1..g - 1 {
            for (name, w) in [("s", W::s(g)), ("r", W::r(g))] {
                self.curve(
                    format!("thm1.curve.{name}-shift.a{i}.g{g}"),
                    g,
                    name,
                    w,
                    NamedCurve::Alpha(i),
                    NamedCurve::Alpha(i + 1),
                    LOC_ORBIT,
                    Provenance::Published,
                );
            }
        }
    }

    fn determinants(&mut self, g: usize) {
        use MappingClassWord as W;
        use Provenance::*;
        for i in 1..g {
            self.det(format!("det.twist.a{i}.g{g}"), g, &format!("t_a{i}"), W::alpha(i), 1, LOC_TWIST_CRITERION, Published);
            self.det(format!("det.u{i}.g{g}"), g, &format!("u{i}"), W::u(i), -1, LOC_TWIST_CRITERION, Published);
        }
        if g >= 4 {
            self.det(format!("det.twist.b.g{g}"), g, "t_b", W::beta(), 1, LOC_TWIST_CRITERION, Published);
        }
        self.det(format!("det.twist.e.g{g}"), g, "t_e", W::epsilon(), 1, LOC_TWIST_CRITERION, Published);
        self.det(format!("det.y.g{g}"), g, "y", W::y(), -1, LOC_TWIST_CRITERION, Derived);
        if g % 2 == 0 {
            self.det(format!("thm1.det.r.g{g}"), g, "r", W::r(g), -1, LOC_NOT_TWIST, Published);
        } else {
            self.det(format!("thm1.det.r-prime.g{g}"), g, "r'", W::r_prime(g), -1, LOC_NOT_TWIST, Published);
        }
    }

    fn eg_claims(&mut self, sel: &Selection) {
        for k in sel.k.clone().filter(|&k| k >= 2) {
            for p in sel.p.clone().filter(|&p| p >= 1) {
                for q in sel.q.clone() {
                    for extra in [false, true] {
                        let spec = EgRotationSpec {
                            k,
                            p,
                            q,
                            extra_crosscap: extra,
                        };
                        let tag = format!("k{k}.p{p}.q{q}.{}", if extra { "odd" } else { "even" });
                        let det: i8 = if k % 2 == 0 && p % 2 == 1 { -1 } else { 1 };
                        let (prov, why) = if k % 2 == 0 {
                            (Provenance::Published, "(-1)^p")
                        } else {
                            (Provenance::Trivial, "+1 since det^k = 1 with k odd")
                        };
                        self.push(
                            format!("lemma-embed.det.{tag}"),
                            ClaimKind::EgDeterminant,
                            format!("rotation of E_{} (k={k}, p={p}, q={q}) has det {why} = {det}", spec.genus()),
                            LOC_EG,
                            prov,
                            det.to_string(),
                            Check::EgDeterminant { spec, det },
                        );
                        self.push(
                            format!("lemma-embed.order.{tag}"),
                            ClaimKind::EgDeterminant,
                            format!("rotation matrix of E_{} (k={k}, p={p}, q={q}) satisfies M^{k} = I", spec.genus()),
                            LOC_EG_ORDER,
                            Provenance::Published,
                            "M^k = I".into(),
                            Check::EgPower { spec },
                        );
                    }
                }
            }
        }
    }

    fn decomposition_claims(&mut self, sel: &Selection) {
        let mut seen = BTreeSet::new();
        let mut add = |inv: &mut Inventory, g: u64, k: u64, prov: Provenance| {
            if !seen.insert((g, k)) {
                return;
            }
            inv.push(
                format!("cor4.decomp.g{g}.k{k}"),
                ClaimKind::Decomposition,
                format!("g = {g} decomposes as p k + 2 q (k-1) (+1) with p odd, q >= 0, for k = {k}"),
                LOC_COR,
                prov,
                "p odd, q >= 0, exact reconstruction".into(),
                Check::Decomposition { g, k },
            );
        };
        for k in [12u64, 14, 16] {
            if !sel.k.contains(&(k as usize)) {
                continue;
            }
            if k == 12 {
                add(self, 12, 12, Provenance::Published);
                add(self, 13, 12, Provenance::Published);
            }
            let lo = decomposition_threshold(k, false);
            for g in lo..=lo + 200 {
                add(self, g, k, Provenance::Derived);
            }
        }
    }

    fn lantern_claims(&mut self) {
        self.push(
            "lemma1.proof".into(),
            ClaimKind::LanternProof,
            "t_a1 = product of f, g, h and a conjugate of f, using the canonical rule set".into(),
            LOC_LANTERN,
            Provenance::Published,
            "proof verifies".into(),
            Check::Lantern {
                rules: LanternVariant::Canonical,
                expect_proof: true,
            },
        );
        for rule in RuleSet::canonical().rules() {
            self.push(
                format!("lemma1.ablation.{}", rule.label),
                ClaimKind::LanternProof,
                format!("without rule `{}` the derivation breaks", rule.label),
                LOC_LANTERN,
                Provenance::Derived,
                "proof fails or budget exhausted".into(),
                Check::Lantern {
                    rules: LanternVariant::Without(rule.label.clone()),
                    expect_proof: false,
                },
            );
        }
        self.push(
            "lemma1.ablation.lantern-reversed".into(),
            ClaimKind::LanternProof,
            "with the lantern relation's right-hand side reordered to t_a3 t_d2 t_d1 the derivation breaks".into(),
            LOC_LANTERN,
            Provenance::Derived,
            "proof fails or budget exhausted".into(),
            Check::Lantern {
                rules: LanternVariant::ReversedLantern,
                expect_proof: false,
            },
        );
    }
}

/// Every claim for the selection, sorted by id.
pub fn inventory(sel: &Selection) -> Vec<Claim> {
    let mut inv = Inventory { claims: Vec::new() };
    for g in sel.genus.clone().filter(|&g| g >= 3) {
        inv.mapping_class_claims(g);
    }
    inv.eg_claims(sel);
    inv.decomposition_claims(sel);
    inv.lantern_claims();
    let mut claims = inv.claims;
    claims.sort_by(|a, b| a.id.cmp(&b.id));
    debug_assert!(claims.windows(2).all(|w| w[0].id != w[1].id), "claim ids are unique");
    claims
}

/// Shared per-genus state: the catalog and memoized evaluations.
pub struct GenusContext {
    catalog: GeneratorCatalog,
    memo: Mutex<HashMap<MappingClassWord, Automorphism>>,
}

impl GenusContext {
    pub fn new(genus: usize) -> Result<GenusContext> {
        Ok(GenusContext {
            catalog: GeneratorCatalog::build(genus)?,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn catalog(&self) -> &GeneratorCatalog {
        &self.catalog
    }

    pub fn evaluate(&self, w: &MappingClassWord) -> Result<Automorphism> {
        if let Some(a) = self.memo.lock().expect("memo lock").get(w) {
            return Ok(a.clone());
        }
        let a = self.catalog.evaluate(w)?;
        self.memo.lock().expect("memo lock").insert(w.clone(), a.clone());
        Ok(a)
    }

    /// Memoized evaluations, for persisting between runs.
    pub fn export_memo(&self) -> Vec<(MappingClassWord, Automorphism)> {
        let memo = self.memo.lock().expect("memo lock");
        let mut out: Vec<_> = memo.iter().map(|(w, a)| (w.clone(), a.clone())).collect();
        out.sort_by_key(|(w, _)| w.to_string());
        out
    }

    /// Seeds the memo. Entries for another genus or that do not preserve the surface relator up
    /// to conjugacy are rejected; returns the number accepted.
    pub fn import_memo(&self, entries: Vec<(MappingClassWord, Automorphism)>) -> usize {
        let p = self.catalog.presentation();
        let mut memo = self.memo.lock().expect("memo lock");
        let mut accepted = 0;
        for (w, a) in entries {
            if a.genus() == p.genus() && w.check_genus(p.genus()).is_ok() && a.preserves_relator(p) {
                memo.insert(w, a);
                accepted += 1;
            }
        }
        accepted
    }
}

/// Catalogs shared by the claims of one run.
#[derive(Default)]
pub struct RunContext {
    genera: Mutex<BTreeMap<usize, Arc<GenusContext>>>,
}

impl RunContext {
    pub fn new() -> RunContext {
        RunContext::default()
    }

    pub fn genus(&self, g: usize) -> Result<Arc<GenusContext>> {
        if let Some(c) = self.genera.lock().expect("context lock").get(&g) {
            return Ok(c.clone());
        }
        let c = Arc::new(GenusContext::new(g)?);
        Ok(self.genera.lock().expect("context lock").entry(g).or_insert(c).clone())
    }

    pub fn genera(&self) -> Vec<(usize, Arc<GenusContext>)> {
        self.genera
            .lock()
            .expect("context lock")
            .iter()
            .map(|(g, c)| (*g, c.clone()))
            .collect()
    }
}

struct Outcome {
    status: Status,
    observed: String,
    witness: String,
}

fn inner_outcome(v: InnerVerdict, expected_inner: bool, bound: usize) -> Outcome {
    match v {
        InnerVerdict::Inner(w) => Outcome {
            status: if expected_inner { Status::Pass } else { Status::Fail },
            observed: "equal".into(),
            witness: format!("conjugator {w}"),
        },
        InnerVerdict::NotInner => Outcome {
            status: if expected_inner { Status::Fail } else { Status::Pass },
            observed: "not equal".into(),
            witness: "outer classes differ".into(),
        },
        InnerVerdict::Inconclusive(b) => Outcome {
            status: Status::Inconclusive,
            observed: "undecided".into(),
            witness: format!("no conjugator c0 x1^k with |k| <= {b} (bound {bound})"),
        },
    }
}

fn evaluate_claim(claim: &Claim, ctx: &RunContext, bounds: &Bounds) -> Result<(Outcome, AppliedBounds)> {
    let order_bound = |g: usize| bounds.order.unwrap_or(4 * g);
    let mut applied = AppliedBounds {
        conjugator: bounds.conjugator,
        order: bounds.order.unwrap_or(0),
        rewrite: bounds.rewrite,
    };
    let outcome = match &claim.check {
        Check::Order { genus, word, order } => {
            let gc = ctx.genus(*genus)?;
            let a = gc.evaluate(word)?;
            applied.order = order_bound(*genus);
            match automorphism_order(gc.catalog().presentation(), &a, applied.order, bounds.conjugator)? {
                OrderVerdict::Finite { order: n, witness } => Outcome {
                    status: if n == *order { Status::Pass } else { Status::Fail },
                    observed: n.to_string(),
                    witness: format!("w^{n} is conjugation by {witness}; every proper divisor power is outer-nontrivial"),
                },
                OrderVerdict::NotFoundWithin(m) => Outcome {
                    status: if m < *order { Status::Inconclusive } else { Status::Fail },
                    observed: format!("> {m}"),
                    witness: format!("no power up to {m} is inner"),
                },
                OrderVerdict::Inconclusive { power, bound } => Outcome {
                    status: Status::Inconclusive,
                    observed: "undecided".into(),
                    witness: format!("power {power} undecided within conjugator bound {bound}"),
                },
            }
        }
        Check::Identity { genus, lhs, rhs } => {
            let gc = ctx.genus(*genus)?;
            let p = gc.catalog().presentation();
            let a = gc.evaluate(lhs)?.compose(&gc.evaluate(&rhs.inverse())?, p)?;
            inner_outcome(is_inner(p, &a, bounds.conjugator), true, bounds.conjugator)
        }
        Check::Curve { genus, word, from, to } => {
            let gc = ctx.genus(*genus)?;
            let cat = gc.catalog();
            let p = cat.presentation();
            let a = gc.evaluate(word)?;
            let start = cat.curve(*from)?;
            let target = cat.curve(*to)?;
            let image = CurveClass::new(p, &a.apply(p, start.word()));
            let ok = crate::mcg::curves_equal(p, &image, &target);
            let observed = [NamedCurve::Beta, NamedCurve::Epsilon]
                .into_iter()
                .chain((1..*genus).map(NamedCurve::Alpha))
                .find(|c| cat.curve(*c).map(|cc| crate::mcg::curves_equal(p, &image, &cc)).unwrap_or(false))
                .map(|c| c.to_string())
                .unwrap_or_else(|| image.to_string());
            Outcome {
                status: if ok { Status::Pass } else { Status::Fail },
                observed,
                witness: format!("image class {image}, target class {target}"),
            }
        }
        Check::Determinant { genus, word, det } => {
            let gc = ctx.genus(*genus)?;
            let m = abelianize(&gc.evaluate(word)?);
            let d = m.det();
            let in_t = in_twist_subgroup(&m)?;
            let observed = d.to_string();
            Outcome {
                status: if observed == det.to_string() && in_t == (*det == 1) {
                    Status::Pass
                } else {
                    Status::Fail
                },
                observed,
                witness: format!("det = {d} ({}in the twist subgroup)", if in_t { "" } else { "not " }),
            }
        }
        Check::EgDeterminant { spec, det } => {
            let rot = build_eg_rotation(spec)?;
            let d = rot.matrix.det();
            Outcome {
                status: if d.to_string() == det.to_string() {
                    Status::Pass
                } else {
                    Status::Fail
                },
                observed: d.to_string(),
                witness: format!(
                    "{}x{} matrix, dropped basis label {}",
                    rot.matrix.dim(),
                    rot.matrix.dim(),
                    rot.basis.dropped
                ),
            }
        }
        Check::EgPower { spec } => {
            let rot = build_eg_rotation(spec)?;
            let powers: Vec<usize> = (1..=spec.k)
                .filter(|d| spec.k % d == 0)
                .filter(|&d| rot.matrix.pow(d as u64).is_identity())
                .collect();
            let ok = powers.first() == Some(&spec.k);
            Outcome {
                status: if ok { Status::Pass } else { Status::Fail },
                observed: match powers.first() {
                    Some(&d) if d == spec.k => "M^k = I".into(),
                    Some(&d) => format!("M^{d} = I"),
                    None => "M^k != I".into(),
                },
                witness: format!(
                    "least divisor d of k with M^d = I: {}",
                    powers.first().map(|d| d.to_string()).unwrap_or_else(|| "none".into())
                ),
            }
        }
        Check::Decomposition { g, k } => match decompose_genus(*g, *k) {
            Ok(d) => {
                let ok = d.p % 2 == 1 && d.genus(*k) == *g;
                Outcome {
                    status: if ok { Status::Pass } else { Status::Fail },
                    observed: format!("p = {}, q = {}, plus_one = {}", d.p, d.q, d.plus_one),
                    witness: format!(
                        "n = {}, m = {}, r = {}; {}·{} + 2·{}·{}{} = {}",
                        d.n,
                        d.m,
                        d.r,
                        d.p,
                        k,
                        d.q,
                        k - 1,
                        if d.plus_one { " + 1" } else { "" },
                        d.genus(*k)
                    ),
                }
            }
            Err(e) => Outcome {
                status: Status::Fail,
                observed: "no decomposition".into(),
                witness: e.to_string(),
            },
        },
        Check::Lantern { rules, expect_proof } => {
            let canonical = RuleSet::canonical();
            let set = match rules {
                LanternVariant::Canonical => canonical,
                LanternVariant::Without(label) => canonical.without(label),
                LanternVariant::ReversedLantern => canonical.replacing(
                    "lantern",
                    "ta1 tb tc ta5".parse()?,
                    "ta3 td2 td1".parse()?,
                ),
            };
            let cfg = SearchConfig {
                budget: bounds.rewrite,
                ..SearchConfig::default()
            };
            match lantern::replay_lemma1(&set, cfg) {
                Ok(report) => {
                    let trace: Vec<String> = report
                        .steps
                        .iter()
                        .map(|s| format!("[{}] {} = {}", if s.verified { "ok" } else { "no" }, s.from, s.to))
                        .collect();
                    let proved = report.passed();
                    Outcome {
                        status: if proved == *expect_proof { Status::Pass } else { Status::Fail },
                        observed: if proved { "proof verifies" } else { "proof fails" }.into(),
                        witness: trace.join("; "),
                    }
                }
                // An ablated rule set is expected to fail or to exhaust the budget; for the
                // canonical set an exhausted budget decides nothing.
                Err(McgError::BudgetExceeded(b)) => Outcome {
                    status: if *expect_proof { Status::Inconclusive } else { Status::Pass },
                    observed: "budget exhausted".into(),
                    witness: format!("rewriting budget of {b} expansions exhausted"),
                },
                Err(e) => return Err(e),
            }
        }
    };
    Ok((outcome, applied))
}

/// Evaluates one claim.
pub fn run_claim(claim: &Claim, ctx: &RunContext, bounds: &Bounds) -> ClaimReport {
    let start = Instant::now();
    let (outcome, applied) = match evaluate_claim(claim, ctx, bounds) {
        Ok(r) => r,
        Err(e) => (
            Outcome {
                status: Status::Fail,
                observed: "error".into(),
                witness: e.to_string(),
            },
            AppliedBounds {
                conjugator: bounds.conjugator,
                order: bounds.order.unwrap_or(0),
                rewrite: bounds.rewrite,
            },
        ),
    };
    ClaimReport {
        id: claim.id.clone(),
        status: outcome.status,
        expected: claim.expected.clone(),
        observed: outcome.observed,
        witness: outcome.witness,
        millis: start.elapsed().as_millis() as u64,
        bounds: applied,
    }
}

/// Glob matching with `*` and `?`.
pub fn glob_match(pattern: &str, text: &str) -> bool {
    let p: Vec<char> = pattern.chars().collect();
    let t: Vec<char> = text.chars().collect();
    let (mut pi, mut ti) = (0, 0);
    let mut star: Option<(usize, usize)> = None;
    while ti < t.len() {
        if pi < p.len() && (p[pi] == '?' || p[pi] == t[ti]) {
            pi += 1;
            ti += 1;
        } else if pi < p.len() && p[pi] == '*' {
            star = Some((pi, ti));
            pi += 1;
        } else if let Some((sp, st)) = star {
            pi = sp + 1;
            ti = st + 1;
            star = Some((sp, st + 1));
        } else {
            return false;
        }
    }
    p[pi..].iter().all(|&c| c == '*')
}

/// Runs every selected claim whose id matches `filter`, in parallel on `jobs` threads
/// (`0` = all cores). Reports are ordered by claim id.
pub fn run_claims(filter: &str, sel: &Selection, jobs: usize, bounds: &Bounds, ctx: &RunContext) -> Result<Vec<ClaimReport>> {
    if *sel.genus.start() < 3 && !sel.genus.is_empty() {
        return Err(McgError::UnsupportedGenus(*sel.genus.start()));
    }
    let claims: Vec<Claim> = inventory(sel).into_iter().filter(|c| glob_match(filter, &c.id)).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| McgError::InvalidSpec(e.to_string()))?;
    let mut reports: Vec<ClaimReport> = pool.install(|| claims.par_iter().map(|c| run_claim(c, ctx, bounds)).collect());
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(reports)
}

/// Exit code for a batch: 0 all pass, 2 any failure, 3 inconclusive without failures.
pub fn exit_code(reports: &[ClaimReport]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        2
    } else if reports.iter().any(|r| r.status == Status::Inconclusive) {
        3
    } else {
        0
    }
}

/// Looks a claim up in the broadest inventory.
pub fn find_claim(id: &str) -> Result<Claim> {
    let sel = Selection {
        genus: 3..=16,
        k: 2..=16,
        p: 1..=3,
        q: 0..=2,
    };
    inventory(&sel)
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| McgError::UnknownClaim(id.to_string()))
}

/// Human-readable description of a claim.
pub fn explain(id: &str) -> Result<String> {
    let c = find_claim(id)?;
    let mut out = format!(
        "{}\n  statement:  {}\n  location:   {}\n  kind:       {:?}\n  expected:   {}\n  provenance: {}\n",
        c.id, c.statement, c.location, c.kind, c.expected, c.provenance
    );
    match &c.check {
        Check::Decomposition { g, k } => {
            let odd = g % 2 == 1;
            out.push_str(&format!(
                "  arithmetic: n = (g - k{})/2, m = floor(n/(k-1)), r = n mod (k-1), p = 2r+1, q = m-r\n",
                if odd { " - 1" } else { "" }
            ));
            if let Ok(d) = decompose_genus(*g, *k) {
                out.push_str(&format!(
                    "              n = {}, m = {}, r = {} -> p = {}, q = {}, plus_one = {}; {}·{} + 2·{}·{}{} = {}\n",
                    d.n,
                    d.m,
                    d.r,
                    d.p,
                    d.q,
                    d.plus_one,
                    d.p,
                    k,
                    d.q,
                    k - 1,
                    if d.plus_one { " + 1" } else { "" },
                    d.genus(*k)
                ));
            }
        }
        Check::Order { word, .. } | Check::Identity { lhs: word, .. } | Check::Curve { word, .. } | Check::Determinant { word, .. } => {
            out.push_str(&format!("  word:       {word}\n"));
        }
        _ => {}
    }
    Ok(out)
}

/// Names used by the catalog for the generator kinds, for listings.
pub fn generator_name(kind: GeneratorKind) -> String {
    crate::catalog::GeneratorSymbol::new(kind).to_string()
}
