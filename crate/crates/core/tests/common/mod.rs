//! Independent oracles shared by the integration tests. Nothing here calls into the
//! reduction machinery of the crate; words are plain `Vec<i8>` of signed generator indices.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use mcg_core::Word;
use rand::Rng;

pub type Raw = Vec<i8>;

pub fn to_word(w: &[i8]) -> Word {
    Word::from_codes(&w.iter().map(|&c| c as i16).collect::<Vec<_>>())
}

pub fn from_word(w: &Word) -> Raw {
    w.codes().into_iter().map(|c| c as i8).collect()
}

/// Stack-based free reduction.
pub fn free_reduce(w: &[i8]) -> Raw {
    let mut out: Raw = Vec::with_capacity(w.len());
    for &c in w {
        if out.last() == Some(&-c) {
            out.pop();
        } else {
            out.push(c);
        }
    }
    out
}

pub fn cyclic_free_reduce(w: &[i8]) -> Raw {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.remove(0);
        w.pop();
    }
    w
}

pub fn inverse(w: &[i8]) -> Raw {
    w.iter().rev().map(|&c| -c).collect()
}

pub fn least_rotation(w: &[i8]) -> Raw {
    (0..w.len().max(1))
        .map(|i| {
            let mut r = w[i.min(w.len())..].to_vec();
            r.extend_from_slice(&w[..i.min(w.len())]);
            r
        })
        .min()
        .unwrap_or_default()
}

/// `x1^2 x2^2 ... xg^2`.
pub fn relator(genus: usize) -> Raw {
    (1..=genus as i8).flat_map(|i| [i, i]).collect()
}

/// Exponent-sum image in `Z^g / <(2, ..., 2)>`, as `(e_i - e_g)_{i<g}` and `e_g mod 2`.
pub fn homology(genus: usize, w: &[i8]) -> Vec<i64> {
    let mut e = vec![0i64; genus];
    for &c in w {
        e[c.unsigned_abs() as usize - 1] += c.signum() as i64;
    }
    let last = e[genus - 1];
    let mut out: Vec<i64> = e[..genus - 1].iter().map(|x| x - last).collect();
    out.push(last.rem_euclid(2));
    out
}

/// All freely reduced words of length at most `n` over `genus` generators.
pub fn all_reduced_words(genus: usize, n: usize) -> Vec<Raw> {
    let letters: Vec<i8> = (1..=genus as i8).flat_map(|i| [i, -i]).collect();
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            for &c in &letters {
                if w.last() != Some(&-c) {
                    let mut v: Raw = w.clone();
                    v.push(c);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn random_word<R: Rng>(rng: &mut R, genus: usize, len: usize) -> Raw {
    (0..len)
        .map(|_| {
            let i = rng.gen_range(1..=genus as i8);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect()
}

/// The finite group `GL(n, p)` with matrices coded as base-`p` integers (row-major).
pub struct GlGroup {
    pub n: usize,
    pub p: u32,
    class: Vec<u32>,
    sqrt: Vec<u32>,
    elements: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl GlGroup {
    fn decode(&self, mut c: u32) -> Vec<u32> {
        let mut out = vec![0; self.n * self.n];
        for e in out.iter_mut() {
            *e = c % self.p;
            c /= self.p;
        }
        out
    }

    fn encode(&self, m: &[u32]) -> u32 {
        m.iter().rev().fold(0, |acc, &e| acc * self.p + e)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let (a, b, n, p) = (self.decode(a), self.decode(b), self.n, self.p);
        let mut c = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                c[i * n + j] = (0..n).map(|k| a[i * n + k] * b[k * n + j]).sum::<u32>() % p;
            }
        }
        self.encode(&c)
    }

    pub fn identity(&self) -> u32 {
        let mut m = vec![0; self.n * self.n];
        for i in 0..self.n {
            m[i * self.n + i] = 1;
        }
        self.encode(&m)
    }

    fn invertible(&self, c: u32) -> bool {
        let (n, p) = (self.n, self.p as i64);
        let mut m: Vec<i64> = self.decode(c).into_iter().map(i64::from).collect();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| m[r * n + col] != 0) else {
                return false;
            };
            for k in 0..n {
                m.swap(col * n + k, piv * n + k);
            }
            let inv = (1..p).find(|x| x * m[col * n + col] % p == 1).unwrap();
            for r in col + 1..n {
                let f = m[r * n + col] * inv % p;
                for k in 0..n {
                    m[r * n + k] = (m[r * n + k] - f * m[col * n + k]).rem_euclid(p);
                }
            }
        }
        true
    }

    pub fn inverse(&self, a: u32) -> u32 {
        let order_bound = self.elements.len();
        let mut acc = a;
        let mut prev = self.identity();
        for _ in 0..order_bound {
            if acc == self.identity() {
                return prev;
            }
            prev = acc;
            acc = self.mul(acc, a);
        }
        unreachable!("element order exceeds group order")
    }

    /// Builds the element list, a square-root table and conjugacy-class labels.
    pub fn new<R: Rng>(rng: &mut R, n: usize, p: u32) -> GlGroup {
        let size = p.pow((n * n) as u32);
        let mut g = GlGroup {
            n,
            p,
            class: Vec::new(),
            sqrt: vec![NONE; size as usize],
            elements: Vec::new(),
        };
        g.elements = (0..size).filter(|&c| g.invertible(c)).collect();
        for &m in &g.elements {
            let s = g.mul(m, m) as usize;
            if g.sqrt[s] == NONE {
                g.sqrt[s] = m;
            }
        }
        // Conjugation orbits under a generating set are exactly the conjugacy classes.
        let gens: Vec<u32> = loop {
            let gens: Vec<u32> = (0..3).map(|_| g.elements[rng.gen_range(0..g.elements.len())]).collect();
            if g.generated_size(&gens) == g.elements.len() {
                break gens;
            }
        };
        let inv: Vec<u32> = gens.iter().map(|&x| g.inverse(x)).collect();
        let mut class = vec![NONE; size as usize];
        let mut next = 0;
        for &m in &g.elements {
            if class[m as usize] != NONE {
                continue;
            }
            class[m as usize] = next;
            let mut stack = vec![m];
            while let Some(x) = stack.pop() {
                for (h, hi) in gens.iter().zip(&inv) {
                    let y = g.mul(g.mul(*h, x), *hi);
                    if class[y as usize] == NONE {
                        class[y as usize] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        g.class = class;
        g
    }

    fn generated_size(&self, gens: &[u32]) -> usize {
        let mut seen = std::collections::HashSet::from([self.identity()]);
        let mut stack = vec![self.identity()];
        while let Some(x) = stack.pop() {
            for &h in gens {
                let y = self.mul(x, h);
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen.len()
    }

    pub fn class_of(&self, a: u32) -> u32 {
        self.class[a as usize]
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// A homomorphism `pi1(N_g) -> GL(n, p)`.
pub struct MatRep<'a> {
    group: &'a GlGroup,
    images: Vec<u32>,
    inverses: Vec<u32>,
}

impl<'a> MatRep<'a> {
    /// `x1..x_{g-1}` uniform, `x_g` a square root of `(x1^2 ... x_{g-1}^2)^{-1}`.
    pub fn random<R: Rng>(rng: &mut R, group: &'a GlGroup, genus: usize) -> MatRep<'a> {
        loop {
            let mut images = Vec::new();
            let mut acc = group.identity();
            for _ in 1..genus {
                let x = group.elements[rng.gen_range(0..group.order())];
                acc = group.mul(acc, group.mul(x, x));
                images.push(x);
            }
            let root = group.sqrt[group.inverse(acc) as usize];
            if root != NONE {
                images.push(root);
                let inverses = images.iter().map(|&x| group.inverse(x)).collect();
                let rep = MatRep { group, images, inverses };
                assert_eq!(rep.image(&relator(genus)), group.identity());
                return rep;
            }
        }
    }

    pub fn image(&self, w: &[i8]) -> u32 {
        w.iter().fold(self.group.identity(), |acc, &c| {
            let i = c.unsigned_abs() as usize - 1;
            self.group.mul(acc, if c > 0 { self.images[i] } else { self.inverses[i] })
        })
    }

    pub fn class(&self, w: &[i8]) -> u32 {
        self.group.class_of(self.image(w))
    }
}

/// Conjugacy classes of short words, computed without any word-problem solver.
///
/// Cyclic words are linked by replacing a subword `u` with `v^-1` whenever `uv` is a cyclic
/// permutation of the relator or its inverse, followed by cyclic free reduction; intermediate
/// words may grow up to `cap`. Linked words are conjugate; non-conjugacy is certified
/// separately through [`MatRep`] class labels.
pub struct ConjugacyOracle {
    pub genus: usize,
    pub cap: usize,
    index: HashMap<Raw, usize>,
    parent: Vec<usize>,
}

impl ConjugacyOracle {
    pub fn new(genus: usize, cap: usize) -> ConjugacyOracle {
        ConjugacyOracle {
            genus,
            cap,
            index: HashMap::new(),
            parent: Vec::new(),
        }
    }

    fn id(&mut self, key: Raw) -> (usize, bool) {
        if let Some(&i) = self.index.get(&key) {
            return (i, false);
        }
        let i = self.parent.len();
        self.parent.push(i);
        self.index.insert(key, i);
        (i, true)
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn moves(&self, w: &[i8]) -> Vec<Raw> {
        let r = relator(self.genus);
        let mut shifts: Vec<Raw> = Vec::new();
        for base in [r.clone(), inverse(&r)] {
            for i in 0..base.len() {
                let mut s = base[i..].to_vec();
                s.extend_from_slice(&base[..i]);
                shifts.push(s);
            }
        }
        let n = w.len();
        let mut out = Vec::new();
        for start in 0..n {
            let rot: Raw = w[start..].iter().chain(&w[..start]).copied().collect();
            for s in &shifts {
                for k in 1..=s.len().min(n) {
                    if rot[..k] == s[..k] {
                        let mut next = inverse(&s[k..]);
                        next.extend_from_slice(&rot[k..]);
                        let next = cyclic_free_reduce(&next);
                        if next.len() <= self.cap {
                            out.push(least_rotation(&next));
                        }
                    } else {
                        break;
                    }
                }
            }
        }
        // Insertion of a whole relator shift in front, for short words.
        if n + r.len() <= self.cap {
            for s in &shifts {
                let mut next = s.clone();
                next.extend_from_slice(w);
                out.push(least_rotation(&cyclic_free_reduce(&next)));
            }
        }
        out
    }

    /// Component of the cyclic class of `w`, exploring from it if needed.
    pub fn class_of(&mut self, w: &[i8]) -> usize {
        let key = least_rotation(&cyclic_free_reduce(w));
        let (start, fresh) = self.id(key.clone());
        if fresh {
            let mut queue = VecDeque::from([(key, start)]);
            while let Some((word, id)) = queue.pop_front() {
                for next in self.moves(&word) {
                    let (j, new) = self.id(next.clone());
                    self.union(id, j);
                    if new {
                        queue.push_back((next, j));
                    }
                }
            }
        }
        self.find(start)
    }

    pub fn root(&mut self, i: usize) -> usize {
        self.find(i)
    }

    pub fn explored(&self) -> usize {
        self.parent.len()
    }
}

/// Outcome of comparing the library's conjugacy test with the oracle on every pair of
/// freely reduced words of length at most `max_len`.
#[derive(Debug, Default)]
pub struct ConjugacyAudit {
    pub words: usize,
    pub classes: usize,
    /// Pairs the oracle links but the library separates.
    pub missed: usize,
    /// Pairs the library links that the oracle certifies as non-conjugate.
    pub false_links: usize,
    /// Library classes whose separation from another class is not certified.
    pub uncertified: usize,
    /// Direct `is_conjugate` calls that disagreed with the partition.
    pub direct_mismatches: usize,
}

impl ConjugacyAudit {
    pub fn agrees(&self) -> bool {
        self.missed == 0 && self.false_links == 0 && self.uncertified == 0 && self.direct_mismatches == 0
    }
}

/// Pairwise agreement is checked through partitions: the library's classes (keyed by its
/// cyclic normal form) must coincide with the oracle's move-graph components, and distinct
/// classes must carry distinct invariants (homology plus conjugacy classes in several random
/// finite matrix quotients), which certifies that they really are distinct.
pub fn conjugacy_audit(genus: usize, max_len: usize, cap: usize, seed: u64) -> ConjugacyAudit {
    use mcg_core::{CyclicWord, SurfacePresentation};
    use rand::SeedableRng;

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let groups = [
        GlGroup::new(&mut rng, 3, 3),
        GlGroup::new(&mut rng, 2, 7),
        GlGroup::new(&mut rng, 4, 2),
        GlGroup::new(&mut rng, 3, 5),
    ];
    let reps: Vec<MatRep> = groups
        .iter()
        .flat_map(|g| (0..4).map(|_| MatRep::random(&mut rng, g, genus)).collect::<Vec<_>>())
        .collect();
    let p = SurfacePresentation::new(genus).unwrap();
    let words = all_reduced_words(genus, max_len);
    let keys: Vec<CyclicWord> = words.iter().map(|w| p.cyclic_reduce(&to_word(w))).collect();
    let mut oracle = ConjugacyOracle::new(genus, cap);
    let nodes: Vec<usize> = words.iter().map(|w| oracle.class_of(w)).collect();
    let comps: Vec<usize> = nodes.into_iter().map(|i| oracle.root(i)).collect();

    let mut audit = ConjugacyAudit {
        words: words.len(),
        ..Default::default()
    };
    let mut class_index: HashMap<&CyclicWord, usize> = HashMap::new();
    for (i, k) in keys.iter().enumerate() {
        class_index.entry(k).or_insert(i);
    }
    audit.classes = class_index.len();
    let mut comp_first: HashMap<usize, usize> = HashMap::new();
    for (i, &c) in comps.iter().enumerate() {
        let first = *comp_first.entry(c).or_insert(i);
        if keys[first] != keys[i] {
            audit.missed += 1;
        }
        let rep = class_index[&keys[i]];
        if comps[rep] != c {
            // Linked by the library but not by the oracle: certified wrong if invariants differ.
            let inv = |w: &[i8]| -> (Vec<i64>, Vec<u32>) { (homology(genus, w), reps.iter().map(|r| r.class(w)).collect()) };
            if inv(&words[rep]) != inv(&words[i]) {
                audit.false_links += 1;
            } else {
                audit.uncertified += 1;
            }
        }
        if !p.is_conjugate(&to_word(&words[i]), &to_word(&words[rep])) {
            audit.direct_mismatches += 1;
        }
    }
    let mut invariants: HashMap<(Vec<i64>, Vec<u32>), usize> = HashMap::new();
    for &i in class_index.values() {
        let w = &words[i];
        let key = (homology(genus, w), reps.iter().map(|r| r.class(w)).collect());
        if let Some(&j) = invariants.get(&key) {
            audit.uncertified += 1;
            if p.is_conjugate(&to_word(w), &to_word(&words[j])) {
                audit.direct_mismatches += 1;
            }
        } else {
            invariants.insert(key, i);
        }
    }
    let reps_of_classes: Vec<usize> = class_index.values().copied().collect();
    for _ in 0..10_000 {
        let a = reps_of_classes[rng.gen_range(0..reps_of_classes.len())];
        let b = reps_of_classes[rng.gen_range(0..reps_of_classes.len())];
        if a != b && p.is_conjugate(&to_word(&words[a]), &to_word(&words[b])) {
            audit.direct_mismatches += 1;
        }
    }
    audit
}

/// A random product of conjugates of relator shifts: trivial in the group by construction.
pub fn random_trivial_word<R: Rng>(rng: &mut R, genus: usize, factors: usize, conj_len: usize) -> Raw {
    let mut out = Vec::new();
    for _ in 0..factors {
        let mut r = relator(genus);
        if rng.gen_bool(0.5) {
            r = inverse(&r);
        }
        let shift = rng.gen_range(0..r.len());
        r.rotate_left(shift);
        let clen = rng.gen_range(0..=conj_len);
        let c = random_word(rng, genus, clen);
        out.extend(&c);
        out.extend(r);
        out.extend(inverse(&c));
    }
    free_reduce(&out)
}

/// Free and Dehn reduction: idempotent, never longer, and unchanged in the abelianization.
pub fn reduction_suite(samples: usize, seed: u64) -> Result<(), String> {
    use mcg_core::SurfacePresentation;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let genus = 3 + i % 6;
        let p = SurfacePresentation::new(genus).unwrap();
        let len = rng.gen_range(0..=60);
        let w = random_word(&mut rng, genus, len);
        let word = to_word(&w);
        let f = mcg_core::free_reduce(&word);
        if from_word(&f) != free_reduce(&w) {
            return Err(format!("free_reduce disagrees with the stack oracle on {w:?}"));
        }
        if mcg_core::free_reduce(&f) != f || f.len() > word.len() {
            return Err(format!("free_reduce not idempotent/monotone on {w:?}"));
        }
        let d = p.dehn_reduce(&word);
        if p.dehn_reduce(&d) != d || d.len() > f.len() {
            return Err(format!("dehn_reduce not idempotent/monotone on {w:?} (genus {genus})"));
        }
        if homology(genus, &from_word(&d)) != homology(genus, &w) {
            return Err(format!("dehn_reduce changed the homology class of {w:?}"));
        }
    }
    Ok(())
}

/// Triviality against oracles: nothing is declared trivial unless its abelianization and its
/// images in random finite quotients vanish, and constructed trivial words are recognised.
pub fn triviality_suite(samples: usize, seed: u64) -> Result<(), String> {
    use mcg_core::SurfacePresentation;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let group = GlGroup::new(&mut rng, 3, 3);
    for genus in 3..=6 {
        let p = SurfacePresentation::new(genus).unwrap();
        let reps: Vec<MatRep> = (0..4).map(|_| MatRep::random(&mut rng, &group, genus)).collect();
        for i in 0..samples / 4 {
            let w = if i % 2 == 0 {
                let len = rng.gen_range(0..=30);
                random_word(&mut rng, genus, len)
            } else {
                // Homologically trivial words are the interesting case for false positives.
                let len = rng.gen_range(0..=12);
                let a = random_word(&mut rng, genus, len);
                let b = random_word(&mut rng, genus, len);
                let mut w = a.clone();
                w.extend(&b);
                w.extend(inverse(&a));
                w.extend(inverse(&b));
                w
            };
            let claimed = p.is_trivial(&to_word(&w));
            let hom_zero = homology(genus, &w).iter().all(|&x| x == 0);
            let images_trivial = reps.iter().all(|r| r.image(&w) == group.identity());
            if claimed && !(hom_zero && images_trivial) {
                return Err(format!("false trivial in genus {genus}: {w:?}"));
            }
            if !free_reduce(&w).is_empty() && claimed != p.equal(&to_word(&w), &mcg_core::Word::empty()) {
                return Err(format!("is_trivial and equal disagree on {w:?}"));
            }
            let t = random_trivial_word(&mut rng, genus, 1 + i % 3, 5);
            if !p.is_trivial(&to_word(&t)) {
                return Err(format!("missed trivial word in genus {genus}: {t:?}"));
            }
        }
    }
    Ok(())
}

/// `abelianize(a ∘ b) = abelianize(a) · abelianize(b)` on random catalog words.
pub fn functoriality_suite(samples: usize, seed: u64) -> Result<(), String> {
    use mcg_core::homology::abelianize;
    use mcg_core::{GeneratorCatalog, GeneratorSymbol, MappingClassWord};
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let catalogs: Vec<GeneratorCatalog> = (3..=7).map(|g| GeneratorCatalog::build(g).unwrap()).collect();
    for i in 0..samples {
        let cat = &catalogs[i % catalogs.len()];
        let kinds = cat.generators();
        let word = |rng: &mut rand_chacha::ChaCha8Rng| {
            let len = rng.gen_range(0..=6);
            MappingClassWord::from_symbols(
                (0..len)
                    .map(|_| {
                        let s = GeneratorSymbol::new(kinds[rng.gen_range(0..kinds.len())]);
                        if rng.gen_bool(0.5) {
                            s
                        } else {
                            s.inv()
                        }
                    })
                    .collect(),
            )
        };
        let (w1, w2) = (word(&mut rng), word(&mut rng));
        let a = cat.evaluate(&w1).unwrap();
        let b = cat.evaluate(&w2).unwrap();
        let ab = cat.evaluate(&(w1.clone() * w2.clone())).unwrap();
        let lhs = abelianize(&ab);
        let rhs = abelianize(&a).mul(&abelianize(&b));
        if lhs != rhs {
            return Err(format!("abelianize not multiplicative on ({w1}, {w2}) in genus {}", cat.genus()));
        }
        let det = lhs.det();
        let parity = if (w1.orientation_reversals() + w2.orientation_reversals()) % 2 == 0 { 1 } else { -1 };
        if det != parity.into() {
            return Err(format!("det {det} != {parity} for ({w1}, {w2})"));
        }
    }
    Ok(())
}
