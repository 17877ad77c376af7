//! Longest repeat (longest substring with two distinct occurrences, overlaps
//! allowed) of an edited string.
//!
//! The LCS machinery is run on two copies of the edited string `S'`. An answer
//! whose occurrences both lie inside fragments comes from [`DecrementalRepeat`];
//! one occurrence crossing a fragment boundary uses Three Substrings LCS inside
//! the base; both crossing uses the aligned prefix-suffix search of the LCS
//! case, skipping the alignment that puts both occurrences at the same start.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::core_index::{LceIndex, Piece, Side as Affix, Text};
use crate::decremental::{default_bound, two_string_families_lcp, BoundedState, DifferenceCover};
use crate::dynamic_lcs::{
    best_aligned, first_sym, last_sym, run, Arm, EditedOracle, Occurrences, QueryProfile, Rebuild, SliceMode, StagedBuild, TimeSliced,
};
use crate::error::{Error, Result};
use crate::hia::{HiaPair, ThreeAnswer};
use crate::internal_queries::{ArithmeticProgression, Sub};
use crate::ksub::{BaseText, EditKind, EditOp, Fragment, Hasher, KSubstring, Target, DEFAULT_SEED};
use crate::Sym;

/// Where the two occurrences of a repeat lie relative to fragment boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RepeatCase {
    NoBoundary,
    OneCrossing,
    BothCrossing,
    Unit,
}

/// A repeat of length `len` starting at `first < second` (both 0 when `len = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepeatAnswer {
    pub len: usize,
    pub first: usize,
    pub second: usize,
    pub case: RepeatCase,
}

impl Default for RepeatAnswer {
    fn default() -> Self {
        RepeatAnswer { len: 0, first: 0, second: 0, case: RepeatCase::NoBoundary }
    }
}

impl RepeatAnswer {
    fn new(len: usize, a: usize, b: usize, case: RepeatCase) -> Self {
        RepeatAnswer { len, first: a.min(b), second: a.max(b), case }
    }
}

fn keep(best: &mut Option<RepeatAnswer>, cand: RepeatAnswer) {
    if cand.len > 0 && cand.first != cand.second && best.is_none_or(|b| cand.len > b.len) {
        *best = Some(cand);
    }
}

// ---------------------------------------------------------------------------
// decremental

/// Whether `floor(x / 2^j)` is odd.
fn odd_block(x: usize, j: u32) -> bool {
    (x >> j) & 1 == 1
}

/// Number of levels `j` needed so that any two distinct positions below `n`
/// fall on different sides at some level.
fn split_levels(n: usize) -> u32 {
    (usize::BITS - n.leading_zeros()).max(1)
}

/// Decremental longest repeat under character blocks and separators.
#[derive(Debug, Clone)]
pub struct DecrementalRepeat {
    bounded: BoundedState,
    cover: DifferenceCover,
    /// LCE over `S #, S^R #`
    families: LceIndex,
    starts: Vec<usize>,
    len: usize,
}

impl DecrementalRepeat {
    pub fn new(s: &[Sym], d: Option<usize>) -> Result<Self> {
        let n = s.len().max(1);
        let d = d.unwrap_or_else(|| default_bound(n));
        let bounded = BoundedState::new(&[s], &[2], d)?;
        let cover = DifferenceCover::new(d, n)?;
        let rs: Vec<Sym> = s.iter().rev().copied().collect();
        let text = Text::from_components(&[s, &rs])?;
        Ok(DecrementalRepeat {
            bounded,
            cover,
            families: LceIndex::new(&text.syms),
            starts: text.starts,
            len: s.len(),
        })
    }

    pub fn bounded(&self) -> &BoundedState {
        &self.bounded
    }

    pub fn d(&self) -> usize {
        self.bounded.d()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `S[pos] := #` (0-based) and the new answer.
    pub fn replace(&mut self, pos: usize) -> Result<RepeatAnswer> {
        self.invalidate(pos)?;
        Ok(self.current())
    }

    /// Separator between `boundary - 1` and `boundary`, and the new answer.
    pub fn separate(&mut self, boundary: usize) -> Result<RepeatAnswer> {
        self.split(boundary)?;
        Ok(self.current())
    }

    pub fn invalidate(&mut self, pos: usize) -> Result<()> {
        if pos >= self.len {
            return Err(Error::OutOfRange { pos, len: self.len });
        }
        if self.bounded.is_blocked(0, pos) {
            return Err(Error::AlreadyReplaced(pos));
        }
        self.bounded.block(0, pos, pos + 1)?;
        Ok(())
    }

    pub fn split(&mut self, boundary: usize) -> Result<()> {
        if boundary > self.len {
            return Err(Error::OutOfRange { pos: boundary, len: self.len });
        }
        if boundary > 0 && boundary < self.len {
            self.bounded.block(0, boundary - 1, boundary + 1)?;
        }
        Ok(())
    }

    /// Longest repeat among occurrences avoiding every block.
    pub fn current(&self) -> RepeatAnswer {
        let b = self.bounded.answer();
        let short = if b.len == 0 {
            RepeatAnswer::default()
        } else {
            RepeatAnswer::new(b.len, b.witnesses[0].1, b.witnesses[1].1, RepeatCase::NoBoundary)
        };
        if b.len < self.d() {
            return short;
        }
        match self.long_case() {
            Some(long) if long.len > short.len => long,
            _ => short,
        }
    }

    /// (reversed left part, right part) around each cover member, and the member.
    fn pairs(&self) -> Vec<((Piece, Piece), usize)> {
        let len = self.len;
        let mut out = Vec::new();
        for &i in self.cover.members() {
            let x = i - 1;
            if x >= len {
                break;
            }
            let (lo, hi) = self.bounded.valid_window(0, x);
            let hi = hi.max(x);
            let left = Piece { pos: self.starts[1] + len - x, len: x - lo };
            let right = Piece { pos: self.starts[0] + x, len: hi - x };
            out.push(((left, right), x));
        }
        out
    }

    /// Two anchors of distinct occurrences differ in some bit, so splitting
    /// the anchors by each bit and taking the best split finds the repeat.
    fn long_case(&self) -> Option<RepeatAnswer> {
        let all = self.pairs();
        let mut best: Option<RepeatAnswer> = None;
        for j in 0..split_levels(self.len) {
            let (even, odd): (Vec<&((Piece, Piece), usize)>, Vec<_>) = all.iter().partition(|(_, x)| !odd_block(*x, j));
            let p: Vec<(Piece, Piece)> = even.iter().map(|e| e.0).collect();
            let q: Vec<(Piece, Piece)> = odd.iter().map(|e| e.0).collect();
            if let Some(r) = two_string_families_lcp(&self.families, &p, &q) {
                let cand = RepeatAnswer::new(r.value, even[r.p].1 - r.first, odd[r.q].1 - r.first, RepeatCase::NoBoundary);
                keep(&mut best, cand);
            }
        }
        best
    }
}

// ---------------------------------------------------------------------------
// static index

/// Static structures over a base string.
#[derive(Debug)]
pub struct RepeatIndex {
    s: Arc<BaseText>,
    s_rev: Arc<BaseText>,
    hia: HiaPair,
    occ: Occurrences,
}

/// [`RepeatIndex`] construction in two steps.
#[derive(Debug)]
pub struct RepeatIndexBuilder {
    s: Vec<Sym>,
    seed: u64,
    hia: Option<HiaPair>,
    occ: Option<Occurrences>,
}

impl RepeatIndexBuilder {
    pub fn new(s: Vec<Sym>, seed: u64) -> Self {
        RepeatIndexBuilder { s, seed, hia: None, occ: None }
    }
}

impl StagedBuild for RepeatIndexBuilder {
    type Output = RepeatIndex;

    fn remaining(&self) -> usize {
        usize::from(self.hia.is_none()) + usize::from(self.occ.is_none())
    }

    fn step(&mut self) -> Result<()> {
        if self.hia.is_none() {
            self.hia = Some(HiaPair::new(&self.s)?);
        } else if self.occ.is_none() {
            self.occ = Some(Occurrences::new(&self.s));
        }
        Ok(())
    }

    fn finish(self) -> Result<RepeatIndex> {
        let (Some(hia), Some(occ)) = (self.hia, self.occ) else {
            return Err(Error::BadParameter("construction not finished".into()));
        };
        let hasher = Arc::new(Hasher::new(self.seed, self.s.len() + 1));
        let s = BaseText::new(self.s, hasher);
        Ok(RepeatIndex { s_rev: s.reversed(), s, hia, occ })
    }
}

impl RepeatIndex {
    pub fn new(s: &[Sym]) -> Result<Self> {
        run(RepeatIndexBuilder::new(s.to_vec(), DEFAULT_SEED))
    }

    pub fn base(&self) -> &Arc<BaseText> {
        &self.s
    }

    pub fn whole(&self) -> KSubstring {
        KSubstring::whole(self.s.clone())
    }

    fn pieces(&self, ks: &KSubstring) -> Vec<Option<Piece>> {
        ks.fragments()
            .iter()
            .map(|f| match *f {
                Fragment::Ref { start, len } => Some(Piece { pos: start, len }),
                Fragment::Char(c) => self.occ.first(c).map(|p| Piece { pos: p, len: 1 }),
            })
            .collect()
    }

    fn affix(&self, pieces: &[Option<Piece>], side: Affix) -> Piece {
        let run: Vec<Piece> = match side {
            Affix::Prefix => pieces.iter().map_while(|p| *p).collect(),
            Affix::Suffix => {
                let mut v: Vec<Piece> = pieces.iter().rev().map_while(|p| *p).collect();
                v.reverse();
                v
            }
        };
        let (len, pos) = self.hia.t2.longest_affix(&run, 0, side);
        Piece { pos: if len == 0 { 0 } else { pos }, len }
    }

    /// Longest repeat with one occurrence crossing a fragment boundary of `sp`
    /// and the other inside a fragment of length at least 2.
    ///
    /// A fragment next to the boundary could hold the crossing candidate
    /// itself when `X` or `Y` is empty, so for those the window drops the
    /// symbol at the boundary and the occurrences ending or starting exactly
    /// there are searched separately with `X`, resp. `Y`, nonempty.
    pub fn cross_one(&self, sp: &KSubstring) -> Option<RepeatAnswer> {
        let frags = sp.fragments();
        let windows: Vec<(usize, Piece)> = frags
            .iter()
            .enumerate()
            .filter_map(|(g, f)| match *f {
                Fragment::Ref { start, len } if len >= 2 => Some((g, Piece { pos: start, len })),
                _ => None,
            })
            .collect();
        if windows.is_empty() {
            return None;
        }
        let pieces = self.pieces(sp);
        let mut best = None;
        for f in 1..pieces.len() {
            let at = sp.frag_start(f);
            let u = self.affix(&pieces[..f], Affix::Suffix);
            let v = self.affix(&pieces[f..], Affix::Prefix);
            if u.len == 0 || v.len == 0 {
                continue;
            }
            for &(g, w) in &windows {
                let off = sp.frag_start(g);
                let mut found = |a: Option<ThreeAnswer>, w: Piece, off: usize| {
                    if let Some(a) = a.filter(|a| a.len > 0) {
                        keep(&mut best, RepeatAnswer::new(a.len, at - a.x_len, off + a.start - w.pos, RepeatCase::OneCrossing));
                    }
                };
                if g == f {
                    let inner = Piece { pos: w.pos + 1, len: w.len - 1 };
                    found(self.hia.three_substrings_lcs(u, v, inner).ok(), inner, off + 1);
                    found(self.hia.cut_at_start(u, v, w, 1), w, off);
                } else if g + 1 == f {
                    let inner = Piece { pos: w.pos, len: w.len - 1 };
                    found(self.hia.three_substrings_lcs(u, v, inner).ok(), inner, off);
                    found(self.hia.cut_at_end(u, v, w, 1), w, off);
                } else {
                    found(self.hia.three_substrings_lcs(u, v, w).ok(), w, off);
                }
            }
        }
        best
    }

    /// Lengths `l` such that the first `l` symbols of fragment `fy` equal the
    /// last `l` of fragment `fz`, as progressions (without 0).
    fn prefix_suffix_lengths(&self, ks: &KSubstring, fy: usize, fz: usize) -> Vec<ArithmeticProgression> {
        let mut out = Vec::new();
        match (ks.fragments()[fy], ks.fragments()[fz]) {
            (Fragment::Ref { start: ys, len: yl }, Fragment::Ref { start: zs, len: zl }) => {
                let (yp, zp) = (Piece { pos: ys, len: yl }, Piece { pos: zs, len: zl });
                let mut d = 1;
                while d <= yl.min(zl) {
                    let ap = self.hia.prefix_suffix_query(yp, zp, d);
                    if !ap.is_empty() {
                        out.push(ap);
                    }
                    d *= 2;
                }
            }
            _ => {
                if first_sym(ks, fy) == last_sym(ks, fz) {
                    out.push(ArithmeticProgression::single(1));
                }
            }
        }
        out
    }

    /// Longest repeat whose two occurrences both cross fragment boundaries.
    pub fn cross_both(&self, sp: &KSubstring) -> Option<RepeatAnswer> {
        let k = sp.fragments().len();
        if k < 2 {
            return None;
        }
        let srev = sp.reversed(&self.s_rev);
        let n = sp.len();
        let o = EditedOracle { strs: [sp, sp, &srev, &srev], stride: n + 1 };
        let mut best = None;
        for f in 1..k {
            let bs = sp.frag_start(f);
            for g in 1..k {
                let bt = sp.frag_start(g);
                // copy 2 at [bt - l, bt) against a prefix of fragment f in copy 1;
                // starts coincide when l = bt - bs
                let right = Arm { base: o.at(0, bs), end: o.at(0, n), y: Sub { at: o.at(1, bt), len: n - bt } };
                let left = Arm { base: o.at(3, n - bt), end: o.at(3, n), y: Sub { at: o.at(2, n - bs), len: bs } };
                let mut aps = vec![ArithmeticProgression::single(0)];
                aps.extend(self.prefix_suffix_lengths(sp, f, g - 1));
                for ap in aps {
                    for part in excluding(ap, bt.checked_sub(bs)) {
                        if let Some((len, l, lv)) = best_aligned(&o, part, right, left) {
                            let e = lv - l;
                            keep(&mut best, RepeatAnswer::new(len, bs - e, bt - l - e, RepeatCase::BothCrossing));
                        }
                    }
                }
                // copy 1 at [bs - l, bs) against a prefix of fragment g in copy 2
                let right = Arm { base: o.at(1, bt), end: o.at(1, n), y: Sub { at: o.at(0, bs), len: n - bs } };
                let left = Arm { base: o.at(2, n - bs), end: o.at(2, n), y: Sub { at: o.at(3, n - bt), len: bt } };
                for ap in self.prefix_suffix_lengths(sp, g, f - 1) {
                    for part in excluding(ap, bs.checked_sub(bt)) {
                        if let Some((len, l, lv)) = best_aligned(&o, part, right, left) {
                            let e = lv - l;
                            keep(&mut best, RepeatAnswer::new(len, bs - l - e, bt - e, RepeatCase::BothCrossing));
                        }
                    }
                }
            }
        }
        best
    }
}

fn excluding(ap: ArithmeticProgression, x: Option<usize>) -> [ArithmeticProgression; 2] {
    match x {
        Some(x) => ap.without(x),
        None => [ap, ArithmeticProgression::default()],
    }
}

/// Two positions of `c` in `ks`, if it occurs twice.
fn two_positions(ks: &KSubstring, occ: &Occurrences, c: Sym) -> Option<(usize, usize)> {
    let mut found = Vec::with_capacity(2);
    for (f, frag) in ks.fragments().iter().enumerate() {
        match *frag {
            Fragment::Char(x) if x == c => found.push(ks.frag_start(f)),
            Fragment::Ref { start, len } => {
                let mut lo = start;
                while found.len() < 2 {
                    let Some(p) = occ.within(c, lo, start + len) else { break };
                    found.push(ks.frag_start(f) + p - start);
                    lo = p + 1;
                }
            }
            _ => {}
        }
        if found.len() >= 2 {
            return Some((found[0], found[1]));
        }
    }
    None
}

/// Symbol counts and the symbols occurring at least twice.
#[derive(Debug, Clone, Default)]
struct SymbolCounts {
    counts: HashMap<Sym, usize>,
    repeated: BTreeSet<Sym>,
}

impl SymbolCounts {
    fn new(s: &[Sym]) -> Self {
        let mut sc = SymbolCounts::default();
        for &c in s {
            sc.add(c);
        }
        sc
    }

    fn add(&mut self, c: Sym) {
        let e = self.counts.entry(c).or_default();
        *e += 1;
        if *e >= 2 {
            self.repeated.insert(c);
        }
    }

    fn remove(&mut self, c: Sym) {
        let e = self.counts.get_mut(&c).expect("symbol counted");
        *e -= 1;
        if *e < 2 {
            self.repeated.remove(&c);
        }
    }
}

// ---------------------------------------------------------------------------
// dynamic

/// Edited string `S'` over a [`RepeatIndex`], answering the longest repeat.
#[derive(Debug, Clone)]
pub struct DynamicRepeat {
    index: Arc<RepeatIndex>,
    s: KSubstring,
    decremental: DecrementalRepeat,
    removed: Vec<bool>,
    separated: Vec<bool>,
    counts: SymbolCounts,
}

impl DynamicRepeat {
    pub fn new(s: &[Sym]) -> Result<Self> {
        run(DynamicRepeatBuilder::new(s.to_vec()))
    }

    fn from_parts(index: RepeatIndex, decremental: DecrementalRepeat) -> Self {
        let n = index.s.len();
        let counts = SymbolCounts::new(&index.s.syms);
        let index = Arc::new(index);
        DynamicRepeat {
            s: index.whole(),
            index,
            decremental,
            removed: vec![false; n],
            separated: vec![false; n + 1],
            counts,
        }
    }

    pub fn index(&self) -> &RepeatIndex {
        &self.index
    }

    pub fn s(&self) -> &KSubstring {
        &self.s
    }

    pub fn decremental(&self) -> &DecrementalRepeat {
        &self.decremental
    }

    /// Invalidate base positions no fragment uses and separate contiguous
    /// fragments with inserted symbols between them.
    fn sync(&mut self) -> Result<()> {
        let n = self.index.s.len();
        let mut prev_end = 0;
        let mut between = false;
        let mut first = true;
        let frags: Vec<Fragment> = self.s.fragments().to_vec();
        for f in frags {
            match f {
                Fragment::Char(_) => between = true,
                Fragment::Ref { start, len } => {
                    for p in prev_end..start {
                        if !self.removed[p] {
                            self.removed[p] = true;
                            self.decremental.invalidate(p)?;
                        }
                    }
                    if !first && start == prev_end && between && !self.separated[start] {
                        self.separated[start] = true;
                        self.decremental.split(start)?;
                    }
                    prev_end = start + len;
                    between = false;
                    first = false;
                }
            }
        }
        for p in prev_end..n {
            if !self.removed[p] {
                self.removed[p] = true;
                self.decremental.invalidate(p)?;
            }
        }
        Ok(())
    }

    fn to_current(&self, p: usize, len: usize) -> usize {
        for (f, frag) in self.s.fragments().iter().enumerate() {
            if let Fragment::Ref { start, len: fl } = *frag {
                if start <= p && p + len <= start + fl {
                    return self.s.frag_start(f) + p - start;
                }
            }
        }
        unreachable!("decremental answers avoid removed positions")
    }

    /// The best answer of each case that has one.
    pub fn case_answers(&self) -> Vec<RepeatAnswer> {
        let mut out = Vec::new();
        let d = self.decremental.current();
        if d.len > 0 {
            let (a, b) = (self.to_current(d.first, d.len), self.to_current(d.second, d.len));
            out.push(RepeatAnswer::new(d.len, a, b, RepeatCase::NoBoundary));
        }
        out.extend(self.index.cross_one(&self.s));
        out.extend(self.index.cross_both(&self.s));
        if let Some(&c) = self.counts.repeated.first() {
            let (a, b) = two_positions(&self.s, &self.index.occ, c).expect("counted twice");
            out.push(RepeatAnswer::new(1, a, b, RepeatCase::Unit));
        }
        out
    }

    pub fn answer(&self) -> RepeatAnswer {
        let mut best = None;
        for c in self.case_answers() {
            keep(&mut best, c);
        }
        best.unwrap_or_default()
    }

    /// Apply one edit to `S` (1-based position) and return the new answer.
    pub fn edit(&mut self, e: &EditOp) -> Result<RepeatAnswer> {
        self.apply(e)?;
        Ok(self.answer())
    }
}

impl Rebuild for DynamicRepeat {
    type Builder = DynamicRepeatBuilder;

    fn apply(&mut self, e: &EditOp) -> Result<()> {
        if e.target != Target::S {
            return Err(Error::BadParameter("only S may be edited".into()));
        }
        let next = self.s.apply_edit(e)?;
        if e.kind != EditKind::Ins {
            self.counts.remove(self.s.char_at(e.pos - 1)?);
        }
        if e.kind != EditKind::Del {
            self.counts.add(next.char_at(e.pos - 1)?);
        }
        self.s = next;
        self.sync()
    }

    fn rebuild(&self) -> DynamicRepeatBuilder {
        DynamicRepeatBuilder::with_seed(self.s.materialize(), self.s.base().hasher.seed())
    }

    fn fragment_count(&self) -> usize {
        self.s.fragments().len()
    }
}

/// [`DynamicRepeat`] construction: the index steps, then the decremental structure.
#[derive(Debug)]
pub struct DynamicRepeatBuilder {
    index: RepeatIndexBuilder,
    decremental: Option<DecrementalRepeat>,
}

impl DynamicRepeatBuilder {
    pub fn new(s: Vec<Sym>) -> Self {
        Self::with_seed(s, DEFAULT_SEED)
    }

    pub fn with_seed(s: Vec<Sym>, seed: u64) -> Self {
        DynamicRepeatBuilder { index: RepeatIndexBuilder::new(s, seed), decremental: None }
    }
}

impl StagedBuild for DynamicRepeatBuilder {
    type Output = DynamicRepeat;

    fn remaining(&self) -> usize {
        self.index.remaining() + usize::from(self.decremental.is_none())
    }

    fn step(&mut self) -> Result<()> {
        if self.index.remaining() > 0 {
            return self.index.step();
        }
        if self.decremental.is_none() {
            self.decremental = Some(DecrementalRepeat::new(&self.index.s, None)?);
        }
        Ok(())
    }

    fn finish(self) -> Result<DynamicRepeat> {
        let decremental = self.decremental.ok_or_else(|| Error::BadParameter("construction not finished".into()))?;
        Ok(DynamicRepeat::from_parts(self.index.finish()?, decremental))
    }
}

/// Fully dynamic longest repeat with worst-case rebuilding.
pub struct RepeatSession {
    inner: TimeSliced<DynamicRepeat>,
}

impl RepeatSession {
    /// `kappa` defaults to the balance point of the quadratic query profile.
    pub fn new(s: &[Sym], kappa: Option<usize>, mode: SliceMode) -> Result<Self> {
        Self::with_seed(s, kappa, mode, DEFAULT_SEED)
    }

    pub fn with_seed(s: &[Sym], kappa: Option<usize>, mode: SliceMode, seed: u64) -> Result<Self> {
        let kappa = kappa.unwrap_or_else(|| QueryProfile::Quadratic.kappa_int(s.len()));
        let live = run(DynamicRepeatBuilder::with_seed(s.to_vec(), seed))?;
        Ok(RepeatSession { inner: TimeSliced::new(live, kappa, mode)? })
    }

    pub fn answer(&self) -> RepeatAnswer {
        self.inner.live().answer()
    }

    pub fn edit(&mut self, e: &EditOp) -> Result<RepeatAnswer> {
        self.inner.edit(e)?;
        Ok(self.answer())
    }

    pub fn current(&self) -> &DynamicRepeat {
        self.inner.live()
    }

    pub fn slicing(&self) -> &TimeSliced<DynamicRepeat> {
        &self.inner
    }
}

#[cfg(test)]
mod tests;
