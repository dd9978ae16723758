//! Dehn's algorithm for a one-relator presentation.
//!
//! The engine rewrites any subword that is strictly longer than half of a cyclic
//! permutation of `r` or `r^{-1}` into the shorter complementary word. For
//! presentations satisfying C'(1/6) the result is empty exactly when the input is
//! trivial in the group.

use std::collections::HashMap;

use crate::word::{free_reduce, Letter, Word};

#[derive(Clone, Debug)]
pub struct DehnEngine {
    relator: Word,
    /// `cyclic[0]` is the relator, `cyclic[1]` its inverse.
    cyclic: [Vec<Letter>; 2],
    /// For each letter, every `(cyclic word, position)` where it occurs.
    occurrences: HashMap<Letter, Vec<(usize, usize)>>,
    /// Longest piece.
    piece: usize,
}

/// Search-node budget for one call of [`DehnEngine::layer_images`].
const LAYER_BUDGET: usize = 1 << 16;

/// A cyclic window of a relator word: `start` and `len` index into `cyclic[word]`.
#[derive(Clone, Copy, Debug)]
struct RelatorWindow {
    word: usize,
    start: usize,
    len: usize,
}

impl DehnEngine {
    pub fn new(relator: Word) -> DehnEngine {
        assert!(!relator.is_empty(), "relator must be nonempty");
        let cyclic = [relator.letters().to_vec(), relator.inverse().into_letters()];
        let mut occurrences: HashMap<Letter, Vec<(usize, usize)>> = HashMap::new();
        for (w, letters) in cyclic.iter().enumerate() {
            for (p, &l) in letters.iter().enumerate() {
                occurrences.entry(l).or_default().push((w, p));
            }
        }
        let piece = DehnEngine::compute_piece_len(&cyclic);
        DehnEngine {
            relator,
            cyclic,
            occurrences,
            piece,
        }
    }

    pub fn relator(&self) -> &Word {
        &self.relator
    }

    pub fn relator_len(&self) -> usize {
        self.cyclic[0].len()
    }

    /// All cyclic permutations of the relator and of its inverse.
    pub fn relator_shifts(&self) -> Vec<Word> {
        let mut out = Vec::with_capacity(2 * self.relator_len());
        for letters in &self.cyclic {
            let w = Word::from_letters(letters.clone());
            for k in 0..letters.len() {
                out.push(w.rotate(k));
            }
        }
        out
    }

    /// Longest suffix of `stack` (ending at its top letter) that is a cyclic subword of a relator.
    fn longest_suffix_match(&self, stack: &[Letter]) -> Option<RelatorWindow> {
        let top = *stack.last()?;
        let n = self.relator_len();
        let mut best: Option<RelatorWindow> = None;
        for &(w, pos) in self.occurrences.get(&top).map(|v| v.as_slice()).unwrap_or(&[]) {
            let rel = &self.cyclic[w];
            let mut m = 0;
            while m < n && m < stack.len() && stack[stack.len() - 1 - m] == rel[(pos + n - m) % n] {
                m += 1;
            }
            if best.map_or(true, |b| m > b.len) {
                best = Some(RelatorWindow {
                    word: w,
                    start: (pos + n + 1 - m) % n,
                    len: m,
                });
            }
        }
        best
    }

    /// Complement of a window: the word `v` with `window · v = relator rotation`, returned as `v^{-1}`.
    fn replacement(&self, win: RelatorWindow) -> Vec<Letter> {
        let rel = &self.cyclic[win.word];
        let n = rel.len();
        (0..n - win.len)
            .map(|j| rel[(win.start + win.len + j) % n])
            .rev()
            .map(|l| l.inverse())
            .collect()
    }

    /// Free reduction plus Dehn rewriting until no long relator piece remains.
    pub fn reduce(&self, w: &Word) -> Word {
        let n = self.relator_len();
        let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
        let mut pending: Vec<Letter> = w.letters().iter().rev().copied().collect();
        while let Some(l) = pending.pop() {
            if stack.last() == Some(&l.inverse()) {
                stack.pop();
                continue;
            }
            stack.push(l);
            if let Some(win) = self.longest_suffix_match(&stack) {
                if 2 * win.len > n {
                    stack.truncate(stack.len() - win.len);
                    pending.extend(self.replacement(win).into_iter().rev());
                }
            }
        }
        Word::from_letters(stack)
    }

    /// Finds a cyclic window of `q` (read cyclically) of length `> n/2`, or of exactly `n/2`
    /// when `allow_half` is set. Returns `(offset in q, window)`.
    fn find_cyclic_window(&self, q: &[Letter], allow_half: bool, skip: usize) -> Option<(usize, RelatorWindow)> {
        let n = self.relator_len();
        let len = q.len();
        let mut seen = 0;
        for a in 0..len {
            for &(w, pos) in self.occurrences.get(&q[a]).map(|v| v.as_slice()).unwrap_or(&[]) {
                let rel = &self.cyclic[w];
                let mut m = 0;
                while m < n && m < len && q[(a + m) % len] == rel[(pos + m) % n] {
                    m += 1;
                }
                let hit = if allow_half { 2 * m == n } else { 2 * m > n };
                if hit {
                    let m = if allow_half { n / 2 } else { m };
                    if seen == skip {
                        return Some((
                            a,
                            RelatorWindow {
                                word: w,
                                start: pos,
                                len: m,
                            },
                        ));
                    }
                    seen += 1;
                }
            }
        }
        None
    }

    /// Cyclic Dehn reduction with conjugator tracking: returns `(c, q)` with `w = c q c^{-1}`
    /// in the group and `q` freely and Dehn reduced as a cyclic word.
    pub fn cyclic_reduce(&self, w: &Word) -> (Word, Word) {
        let mut c: Vec<Letter> = Vec::new();
        let mut q = self.reduce(w).into_letters();
        loop {
            let mut lo = 0;
            let mut hi = q.len();
            while hi - lo >= 2 && q[lo] == q[hi - 1].inverse() {
                c.push(q[lo]);
                lo += 1;
                hi -= 1;
            }
            q = q[lo..hi].to_vec();
            match self.find_cyclic_window(&q, false, 0) {
                None => return (free_reduce(&Word::from_letters(c)), Word::from_letters(q)),
                Some((a, _)) => {
                    c.extend_from_slice(&q[..a]);
                    q.rotate_left(a);
                    q = self.reduce(&Word::from_letters(q)).into_letters();
                }
            }
        }
    }

    /// Cyclic words of the same length reachable from a cyclically reduced `q` by swapping a half
    /// relator for the other half and, when `layers` is set, by pushing the word across a single
    /// annular layer of relator cells (see [`DehnEngine::layer_images`]). Each entry carries a
    /// conjugator `c` with `q = c · entry · c^{-1}`. If some move shortens the word, the shorter
    /// word is returned as `Err` and the caller should restart from it.
    pub fn orbit(&self, q: &Word, cap: usize, layers: bool) -> Result<Vec<(Word, Word)>, (Word, Word)> {
        use std::collections::HashSet;
        let n = self.relator_len();
        let mut seen: HashSet<Word> = HashSet::new();
        let mut out: Vec<(Word, Word)> = Vec::new();
        let start = q.least_rotation();
        let k0 = (0..q.len().max(1)).find(|&k| q.rotate(k) == start).unwrap_or(0);
        let c0 = q.prefix(k0);
        seen.insert(start.clone());
        out.push((c0, start));
        let mut idx = 0;
        if n % 2 != 0 {
            return Ok(out);
        }
        while idx < out.len() && out.len() < cap {
            let (c, cur) = out[idx].clone();
            idx += 1;
            let letters = cur.letters().to_vec();
            let mut skip = 0;
            while let Some((a, win)) = self.find_cyclic_window(&letters, true, skip) {
                skip += 1;
                let mut rot = letters.clone();
                rot.rotate_left(a);
                let conj = c.concat(&cur.prefix(a));
                let mut next: Vec<Letter> = self.replacement(win);
                next.extend_from_slice(&rot[win.len..]);
                let (c2, q2) = self.cyclic_reduce(&Word::from_letters(next));
                let conj = free_reduce(&conj.concat(&c2));
                if q2.len() < cur.len() {
                    return Err((conj, q2));
                }
                let canon = q2.least_rotation();
                if seen.insert(canon.clone()) {
                    let k = (0..q2.len().max(1)).find(|&k| q2.rotate(k) == canon).unwrap_or(0);
                    out.push((free_reduce(&conj.concat(&q2.prefix(k))), canon));
                }
            }
            if !layers {
                continue;
            }
            for (e, inner) in self.layer_images(&letters) {
                let (c2, q2) = self.cyclic_reduce(&Word::from_letters(inner));
                let conj = free_reduce(&c.concat(&e).concat(&c2));
                if q2.len() < cur.len() {
                    return Err((conj, q2));
                }
                if q2.len() > cur.len() {
                    continue;
                }
                let canon = q2.least_rotation();
                if seen.insert(canon.clone()) {
                    let k = (0..q2.len().max(1)).find(|&k| q2.rotate(k) == canon).unwrap_or(0);
                    out.push((free_reduce(&conj.concat(&q2.prefix(k))), canon));
                }
            }
        }
        Ok(out)
    }

    /// Inner boundary labels of one-layer annular diagrams whose outer boundary reads the cyclic
    /// word `q`.
    ///
    /// Going around the annulus, `q` splits into letters shared by both boundaries and outer
    /// sides `o` of relator cells. A cell reads `o · e' · n^{-1} · e^{-1}` for a relator
    /// permutation, where `e`, `e'` are the edges (pieces, possibly empty) it shares with its
    /// neighbours and `n` is its inner side; consecutive cells agree on the edge between them.
    /// Both `o` and `n` are at most half a relator, so only cells with outer side of length at
    /// least `n/2 - 2·piece` are tried. Each result `(c, v)` satisfies `q = c v c^{-1}` with `v`
    /// freely reduced and no longer than `q`.
    pub fn layer_images(&self, q: &[Letter]) -> Vec<(Word, Vec<Letter>)> {
        let n = self.relator_len();
        let len = q.len();
        let mut out = Vec::new();
        if len == 0 || n % 2 != 0 {
            return out;
        }
        let half = n / 2;
        let lo = half.saturating_sub(2 * self.piece).max(1);
        let mut budget = LAYER_BUDGET;
        for s in 0..len {
            let rot: Vec<Letter> = q[s..].iter().chain(&q[..s]).copied().collect();
            let mut search = LayerSearch {
                engine: self,
                rot: &rot,
                half,
                lo,
                inner: Vec::with_capacity(len),
                e0: Vec::new(),
                results: Vec::new(),
                budget: &mut budget,
            };
            search.region(0, None);
            for (e0, inner) in search.results {
                let c = free_reduce(&Word::from_letters(q[..s].to_vec()).concat(&Word::from_letters(e0)));
                out.push((c, inner));
            }
        }
        out
    }

    /// Longest common subword between two distinct cyclic positions of `r^{±1}`: the piece length.
    pub fn max_piece_len(&self) -> usize {
        self.piece
    }

    fn compute_piece_len(cyclic: &[Vec<Letter>; 2]) -> usize {
        let n = cyclic[0].len();
        let mut best = 0;
        let starts: Vec<(usize, usize)> = (0..2).flat_map(|w| (0..n).map(move |p| (w, p))).collect();
        for (i, &(w1, p1)) in starts.iter().enumerate() {
            for &(w2, p2) in &starts[i + 1..] {
                let mut m = 0;
                while m < n && cyclic[w1][(p1 + m) % n] == cyclic[w2][(p2 + m) % n] {
                    m += 1;
                }
                best = best.max(m);
            }
        }
        best
    }
}

struct LayerSearch<'a> {
    engine: &'a DehnEngine,
    rot: &'a [Letter],
    half: usize,
    lo: usize,
    inner: Vec<Letter>,
    /// Edge crossing the annulus at position 0, fixed by the first cell.
    e0: Vec<Letter>,
    results: Vec<(Vec<Letter>, Vec<Letter>)>,
    budget: &'a mut usize,
}

impl LayerSearch<'_> {
    fn push_inner(&mut self, letters: &[Letter]) -> Option<usize> {
        let mark = self.inner.len();
        for &l in letters {
            if self.inner.last() == Some(&l.inverse()) || self.inner.len() >= self.rot.len() {
                self.inner.truncate(mark);
                return None;
            }
            self.inner.push(l);
        }
        Some(mark)
    }

    /// Cell starting at `pos`; `e_prev` is the edge entering it (`None` for the first cell).
    fn region(&mut self, pos: usize, e_prev: Option<&[Letter]>) {
        let (n, len) = (self.engine.relator_len(), self.rot.len());
        let piece = self.engine.piece;
        let Some(occ) = self.engine.occurrences.get(&self.rot[pos]) else {
            return;
        };
        for &(w, p) in occ {
            let rel = &self.engine.cyclic[w];
            let mut m = 0;
            while m < self.half && pos + m < len && self.rot[pos + m] == rel[(p + m) % n] {
                m += 1;
            }
            for a in self.lo..=m {
                let rest: Vec<Letter> = (a..n).map(|j| rel[(p + j) % n]).collect();
                let li_range: Vec<usize> = match e_prev {
                    Some(e) => vec![e.len()],
                    None => (0..=piece).collect(),
                };
                for li in li_range {
                    if li > rest.len() {
                        continue;
                    }
                    let tail = &rest[rest.len() - li..];
                    let e_in: Vec<Letter> = tail.iter().rev().map(|l| l.inverse()).collect();
                    if let Some(e) = e_prev {
                        if e != e_in.as_slice() {
                            continue;
                        }
                    }
                    for le in 0..=piece.min(rest.len() - li) {
                        if *self.budget == 0 {
                            return;
                        }
                        *self.budget -= 1;
                        let middle = &rest[le..rest.len() - li];
                        if middle.len() > self.half {
                            continue;
                        }
                        let n_side: Vec<Letter> = middle.iter().rev().map(|l| l.inverse()).collect();
                        let Some(mark) = self.push_inner(&n_side) else {
                            continue;
                        };
                        let saved = std::mem::take(&mut self.e0);
                        self.e0 = if e_prev.is_none() { e_in.clone() } else { saved.clone() };
                        self.next(pos + a, &rest[..le]);
                        self.e0 = saved;
                        self.inner.truncate(mark);
                    }
                }
            }
        }
    }

    /// Continues after a cell or shared letter ending at `pos`, with `e` the edge leaving it.
    fn next(&mut self, pos: usize, e: &[Letter]) {
        if pos == self.rot.len() {
            let closes = e == self.e0.as_slice();
            let cyclic_ok = match (self.inner.first(), self.inner.last()) {
                (Some(&f), Some(&l)) => self.inner.len() < 2 || f != l.inverse(),
                _ => true,
            };
            if closes && cyclic_ok && self.inner.as_slice() != self.rot {
                self.results.push((self.e0.clone(), self.inner.clone()));
            }
            return;
        }
        self.region(pos, Some(e));
        if e.is_empty() {
            if let Some(mark) = self.push_inner(&[self.rot[pos]]) {
                self.next(pos + 1, &[]);
                self.inner.truncate(mark);
            }
        }
    }
}
