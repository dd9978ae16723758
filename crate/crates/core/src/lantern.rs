//! Symbolic replay of the lantern lemma: `t_{α1}` as a product of `f`, `g`, `h`, a conjugate
//! of `f`, and their inverses.
//!
//! Expressions are free-group words over a fixed alphabet of twists and three opaque mapping
//! classes. Rules are group relations; two expressions are equal when a bounded bidirectional
//! breadth-first search connects them.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{McgError, Result};

pub const DEFAULT_BUDGET: usize = 100_000;
pub const CANONICAL_RULES: &str = include_str!("../rules/lantern.rules");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    TAlpha1,
    TBeta,
    TGamma,
    TAlpha5,
    TAlpha3,
    TDelta1,
    TDelta2,
    F,
    G,
    H,
}

const ATOMS: [(Atom, &str); 10] = [
    (Atom::TAlpha1, "ta1"),
    (Atom::TBeta, "tb"),
    (Atom::TGamma, "tc"),
    (Atom::TAlpha5, "ta5"),
    (Atom::TAlpha3, "ta3"),
    (Atom::TDelta1, "td1"),
    (Atom::TDelta2, "td2"),
    (Atom::F, "f"),
    (Atom::G, "g"),
    (Atom::H, "h"),
];

impl Atom {
    pub fn name(self) -> &'static str {
        ATOMS[self as usize].1
    }

    pub fn is_twist(self) -> bool {
        !matches!(self, Atom::F | Atom::G | Atom::H)
    }

    fn code(self) -> i8 {
        self as i8 + 1
    }

    fn from_code(c: i8) -> Atom {
        ATOMS[(c.unsigned_abs() - 1) as usize].0
    }
}

impl FromStr for Atom {
    type Err = McgError;

    fn from_str(s: &str) -> Result<Atom> {
        ATOMS
            .iter()
            .find(|(_, n)| *n == s)
            .map(|(a, _)| *a)
            .ok_or_else(|| McgError::Parse(format!("unknown atom `{s}`")))
    }
}

/// A freely reduced word over the atoms; a negative code is an inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroupExpr(Vec<i8>);

fn reduce(letters: impl IntoIterator<Item = i8>) -> Vec<i8> {
    let mut out: Vec<i8> = Vec::new();
    for l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

impl GroupExpr {
    pub fn identity() -> GroupExpr {
        GroupExpr(Vec::new())
    }

    pub fn atom(a: Atom) -> GroupExpr {
        GroupExpr(vec![a.code()])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = (Atom, bool)> + '_ {
        self.0.iter().map(|&c| (Atom::from_code(c), c > 0))
    }

    pub fn inverse(&self) -> GroupExpr {
        GroupExpr(self.0.iter().rev().map(|&c| -c).collect())
    }

    pub fn concat(&self, other: &GroupExpr) -> GroupExpr {
        GroupExpr(reduce(self.0.iter().chain(other.0.iter()).copied()))
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (a, pos)) in self.atoms().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", a.name(), if pos { "" } else { "^-1" })?;
        }
        Ok(())
    }
}

impl FromStr for GroupExpr {
    type Err = McgError;

    /// Space-separated atoms with optional `^-1`; parentheses are ignored; `1` is the identity.
    fn from_str(s: &str) -> Result<GroupExpr> {
        let cleaned = s.replace(['(', ')'], " ");
        let mut codes = Vec::new();
        for tok in cleaned.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, inv) = match tok.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (tok, false),
            };
            let c = name.parse::<Atom>()?.code();
            codes.push(if inv { -c } else { c });
        }
        Ok(GroupExpr(reduce(codes)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub label: String,
    pub lhs: GroupExpr,
    pub rhs: GroupExpr,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {}", self.label, self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleSet {
    rules: Vec<Rule>,
}

impl RuleSet {
    pub fn canonical() -> RuleSet {
        CANONICAL_RULES.parse().expect("shipped rule file parses")
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn get(&self, label: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.label == label)
    }

    /// The rule set with one rule removed.
    pub fn without(&self, label: &str) -> RuleSet {
        RuleSet {
            rules: self.rules.iter().filter(|r| r.label != label).cloned().collect(),
        }
    }

    /// The rule set with one rule replaced.
    pub fn replacing(&self, label: &str, lhs: GroupExpr, rhs: GroupExpr) -> RuleSet {
        RuleSet {
            rules: self
                .rules
                .iter()
                .map(|r| {
                    if r.label == label {
                        Rule {
                            label: r.label.clone(),
                            lhs: lhs.clone(),
                            rhs: rhs.clone(),
                        }
                    } else {
                        r.clone()
                    }
                })
                .collect(),
        }
    }

    /// Every way to trade a nonempty piece `u` of a cyclic permutation `u v` of a relator
    /// `lhs · rhs⁻¹` (or its inverse) for `v⁻¹`, indexed by the first letter of `u`.
    fn instances(&self) -> HashMap<i8, Vec<(Vec<i8>, Vec<i8>)>> {
        let mut seen: HashSet<(Vec<i8>, Vec<i8>)> = HashSet::new();
        let mut out: HashMap<i8, Vec<(Vec<i8>, Vec<i8>)>> = HashMap::new();
        for rule in &self.rules {
            let rel = rule.lhs.concat(&rule.rhs.inverse());
            for r in [rel.clone(), rel.inverse()] {
                let n = r.0.len();
                for start in 0..n {
                    let rot: Vec<i8> = (0..n).map(|j| r.0[(start + j) % n]).collect();
                    for cut in 1..=n {
                        let u = rot[..cut].to_vec();
                        let v: Vec<i8> = rot[cut..].iter().rev().map(|&c| -c).collect();
                        if seen.insert((u.clone(), v.clone())) {
                            out.entry(u[0]).or_default().push((u, v));
                        }
                    }
                }
            }
        }
        out
    }
}

impl FromStr for RuleSet {
    type Err = McgError;

    fn from_str(text: &str) -> Result<RuleSet> {
        let mut rules = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (label, body) = match line.split_once(':') {
                Some((l, b)) => (l.trim().to_string(), b),
                None => (format!("rule{}", rules.len() + 1), line),
            };
            let (lhs, rhs) = body
                .split_once("->")
                .ok_or_else(|| McgError::Parse(format!("line {}: missing `->`", lineno + 1)))?;
            rules.push(Rule {
                label,
                lhs: lhs.parse()?,
                rhs: rhs.parse()?,
            });
        }
        Ok(RuleSet { rules })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of expanded nodes.
    pub budget: usize,
    /// Intermediate expressions may exceed the longer endpoint by this many atoms.
    pub slack: usize,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            slack: 4,
        }
    }
}

/// `lhs` and `rhs` are joinable. `Ok(false)` means the bounded search space was exhausted.
pub fn verify_step(rules: &RuleSet, lhs: &GroupExpr, rhs: &GroupExpr, cfg: SearchConfig) -> Result<bool> {
    if lhs == rhs {
        return Ok(true);
    }
    let cap = lhs.len().max(rhs.len()) + cfg.slack;
    let instances = rules.instances();
    let neighbours = |w: &[i8]| -> Vec<Vec<i8>> {
        let mut out = Vec::new();
        for i in 0..w.len() {
            let Some(cands) = instances.get(&w[i]) else { continue };
            for (u, v) in cands {
                if w.len() - i < u.len() || w[i..i + u.len()] != u[..] {
                    continue;
                }
                let next = reduce(w[..i].iter().chain(v.iter()).chain(w[i + u.len()..].iter()).copied());
                if next.len() <= cap {
                    out.push(next);
                }
            }
        }
        out
    };

    let mut seen = [HashSet::from([lhs.0.clone()]), HashSet::from([rhs.0.clone()])];
    let mut frontier = [vec![lhs.0.clone()], vec![rhs.0.clone()]];
    let mut expanded = 0usize;
    while !frontier[0].is_empty() || !frontier[1].is_empty() {
        let side = if frontier[1].is_empty() || (!frontier[0].is_empty() && frontier[0].len() <= frontier[1].len()) {
            0
        } else {
            1
        };
        let layer = std::mem::take(&mut frontier[side]);
        let mut next_layer = Vec::new();
        for w in layer {
            expanded += 1;
            if expanded > cfg.budget {
                return Err(McgError::BudgetExceeded(cfg.budget));
            }
            for n in neighbours(&w) {
                if seen[1 - side].contains(&n) {
                    return Ok(true);
                }
                if seen[side].insert(n.clone()) {
                    next_layer.push(n);
                }
            }
        }
        frontier[side] = next_layer;
    }
    Ok(false)
}

/// The displayed chain of the proof, in order.
pub fn lemma1_chain() -> Vec<GroupExpr> {
    [
        "ta1",
        "(ta3 ta5^-1) (td1 tc^-1) (td2 tb^-1)",
        "(ta3 ta5^-1) (g^-1 (ta3 ta5^-1) g) (h^-1 (ta3 ta5^-1) h)",
        "((f^-1 ta5 f) ta5^-1) (g^-1 (f^-1 ta5 f) ta5^-1 g) (h^-1 (f^-1 ta5 f) ta5^-1 h)",
        "(f^-1 (ta5 f ta5^-1)) (g^-1 f^-1 (ta5 f ta5^-1) g) (h^-1 f^-1 (ta5 f ta5^-1) h)",
    ]
    .iter()
    .map(|s| s.parse().expect("static expression"))
    .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepOutcome {
    pub from: GroupExpr,
    pub to: GroupExpr,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma1Report {
    pub steps: Vec<StepOutcome>,
    /// The final expression uses only `f`, `g`, `h` and the conjugate `ta5 f ta5^-1` of `f`.
    pub final_form_ok: bool,
}

impl Lemma1Report {
    pub fn passed(&self) -> bool {
        self.final_form_ok && self.steps.iter().all(|s| s.verified)
    }
}

/// The final form, read as a word in `f`, `g`, `h` and `k = ta5 f ta5^-1`, contains no other
/// twist occurrences.
fn final_form_ok(e: &GroupExpr) -> bool {
    let k: Vec<i8> = "ta5 f ta5^-1".parse::<GroupExpr>().expect("static").0;
    let kinv: Vec<i8> = GroupExpr(k.clone()).inverse().0;
    let w = &e.0;
    let mut i = 0;
    while i < w.len() {
        if w[i..].starts_with(&k) || w[i..].starts_with(&kinv) {
            i += k.len();
        } else if Atom::from_code(w[i]).is_twist() {
            return false;
        } else {
            i += 1;
        }
    }
    true
}

pub fn replay_lemma1(rules: &RuleSet, cfg: SearchConfig) -> Result<Lemma1Report> {
    let chain = lemma1_chain();
    let mut steps = Vec::new();
    for pair in chain.windows(2) {
        let verified = verify_step(rules, &pair[0], &pair[1], cfg)?;
        steps.push(StepOutcome {
            from: pair[0].clone(),
            to: pair[1].clone(),
            verified,
        });
        if !verified {
            break;
        }
    }
    Ok(Lemma1Report {
        steps,
        final_form_ok: final_form_ok(chain.last().expect("nonempty chain")),
    })
}

pub fn verify_lemma1(rules: &RuleSet, cfg: SearchConfig) -> Result<bool> {
    Ok(replay_lemma1(rules, cfg)?.passed())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let e: GroupExpr = "(ta3 ta5^-1) (g^-1 g) td1".parse().unwrap();
        assert_eq!(e.to_string(), "ta3 ta5^-1 td1");
        assert!("tz".parse::<GroupExpr>().is_err());
        let rs = RuleSet::canonical();
        assert_eq!(rs.rules().len(), 9);
        assert_eq!(rs.get("lantern").unwrap().to_string(), "lantern: ta1 tb tc ta5 -> ta3 td1 td2");
        assert!("a -> ".parse::<RuleSet>().is_err());
        assert!("ta1 tb".parse::<RuleSet>().is_err());
    }

    #[test]
    fn final_form_shape() {
        let chain = lemma1_chain();
        assert!(final_form_ok(chain.last().unwrap()));
        assert!(!final_form_ok(&chain[2]));
    }

    #[test]
    fn trivial_steps() {
        let rs = RuleSet::canonical();
        let id = GroupExpr::identity();
        assert!(verify_step(&rs, &id, &id, SearchConfig::default()).unwrap());
        let e: GroupExpr = "ta1 ta3".parse().unwrap();
        assert!(verify_step(&rs, &e, &e, SearchConfig::default()).unwrap());
    }
}
