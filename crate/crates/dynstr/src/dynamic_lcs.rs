//! Longest common substring of edited strings.
//!
//! The static [`LcsIndex`] over a pair of base strings answers LCS queries for
//! strings given as fragment lists over those bases ([`KSubstring`]). An answer
//! either lies inside fragments on both sides, or crosses fragment boundaries
//! on one side, or on both; each case has its own routine. [`DynamicLcs`]
//! keeps the edited strings and a decremental structure for the first case,
//! and [`TimeSliced`] rebuilds it over fresh bases as edits accumulate.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::core_index::{Piece, Side as Affix};
use crate::decremental::{DecrementalLcs, Side};
use crate::error::{Error, Result};
use crate::hia::HiaPair;
use crate::internal_queries::{lcp_power_prefix, ArithmeticProgression, Cut, InternalIndex, LceOracle, LcsAnswer, Sub};
use crate::ksub::{lce_ksub, BaseText, EditKind, EditOp, Fragment, Hasher, KSubstring, Target, DEFAULT_SEED};
use crate::Sym;

pub mod slicing;

pub use slicing::{balance_kappa, QueryProfile, Rebuild, SliceMode, SliceStats, StagedBuild, TimeSliced};

/// Which boundaries an answer's occurrences cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    NoBoundary,
    OneSidedS,
    OneSidedT,
    TwoSided,
    Unit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseAnswer {
    pub len: usize,
    pub pos_s: usize,
    pub pos_t: usize,
    pub case: CaseTag,
}

impl CaseAnswer {
    pub fn lcs(&self) -> LcsAnswer {
        LcsAnswer { len: self.len, pos_s: self.pos_s, pos_t: self.pos_t }
    }
}

impl Default for CaseAnswer {
    fn default() -> Self {
        CaseAnswer { len: 0, pos_s: 0, pos_t: 0, case: CaseTag::NoBoundary }
    }
}

pub(crate) fn keep(best: &mut Option<CaseAnswer>, cand: CaseAnswer) {
    if cand.len > 0 && best.is_none_or(|b| cand.len > b.len) {
        *best = Some(cand);
    }
}

/// Sorted positions of each symbol.
#[derive(Debug, Clone, Default)]
pub(crate) struct Occurrences(HashMap<Sym, Vec<usize>>);

impl Occurrences {
    pub(crate) fn new(t: &[Sym]) -> Self {
        let mut m: HashMap<Sym, Vec<usize>> = HashMap::new();
        for (i, &c) in t.iter().enumerate() {
            m.entry(c).or_default().push(i);
        }
        Occurrences(m)
    }

    pub(crate) fn first(&self, c: Sym) -> Option<usize> {
        self.0.get(&c).map(|v| v[0])
    }

    pub(crate) fn within(&self, c: Sym, lo: usize, hi: usize) -> Option<usize> {
        let v = self.0.get(&c)?;
        let k = v.partition_point(|&p| p < lo);
        v.get(k).copied().filter(|&p| p < hi)
    }
}

/// Some position of `c` in `ks`, whose base has occurrence lists `occ`.
pub(crate) fn find_in(ks: &KSubstring, occ: &Occurrences, c: Sym) -> Option<usize> {
    for (f, frag) in ks.fragments().iter().enumerate() {
        match *frag {
            Fragment::Char(x) if x == c => return Some(ks.frag_start(f)),
            Fragment::Ref { start, len } => {
                if let Some(p) = occ.within(c, start, start + len) {
                    return Some(ks.frag_start(f) + p - start);
                }
            }
            _ => {}
        }
    }
    None
}

pub(crate) fn first_sym(ks: &KSubstring, f: usize) -> Sym {
    match ks.fragments()[f] {
        Fragment::Ref { start, .. } => ks.base().syms[start],
        Fragment::Char(c) => c,
    }
}

pub(crate) fn last_sym(ks: &KSubstring, f: usize) -> Sym {
    match ks.fragments()[f] {
        Fragment::Ref { start, len } => ks.base().syms[start + len - 1],
        Fragment::Char(c) => c,
    }
}

/// LCE across `S'`, `T'`, `S'^R`, `T'^R`; string `k` position `p` is `k * stride + p`.
pub(crate) struct EditedOracle<'a> {
    pub(crate) strs: [&'a KSubstring; 4],
    pub(crate) stride: usize,
}

impl EditedOracle<'_> {
    pub(crate) fn at(&self, k: usize, p: usize) -> usize {
        k * self.stride + p
    }
}

impl LceOracle for EditedOracle<'_> {
    type Loc = usize;
    fn lce(&self, a: usize, b: usize) -> usize {
        let s = self.stride;
        lce_ksub(self.strs[a / s], a % s, self.strs[b / s], b % s)
    }
    fn shift(&self, a: usize, k: usize) -> usize {
        a + k
    }
}

/// `l -> l + lcp(y, text[base + l..end))`
#[derive(Debug, Clone, Copy)]
pub(crate) struct Arm {
    pub(crate) base: usize,
    pub(crate) end: usize,
    pub(crate) y: Sub<usize>,
}

impl Arm {
    pub(crate) fn direct<O: LceOracle<Loc = usize>>(&self, o: &O, l: usize) -> usize {
        l + o.lce(self.y.at, self.base + l).min(self.y.len).min(self.end - self.base - l)
    }
}

/// Maximum over `l` in `ap` of `right(l) + left(l) - l`, with the `l` attaining
/// it and `left(l)`. Both texts must have period `ap.diff` over the lengths
/// spanned by `ap`.
pub(crate) fn best_aligned<O: LceOracle<Loc = usize>>(o: &O, ap: ArithmeticProgression, right: Arm, left: Arm) -> Option<(usize, usize, usize)> {
    let eval = |l: usize| {
        let lv = left.direct(o, l);
        (right.direct(o, l) + lv - l, l, lv)
    };
    if ap.count == 0 {
        return None;
    }
    if ap.count <= 2 {
        return ap.iter().map(eval).max();
    }
    let p = ap.diff;
    let k_max = ap.count - 1;
    let last = ap.first + k_max * p;
    let closed = |arm: Arm| {
        lcp_power_prefix(
            o,
            Sub { at: arm.base + ap.first, len: p },
            Sub { at: arm.base + last, len: arm.end - arm.base - last },
            arm.y,
        )
        .expect("period is positive")
    };
    let (fr, fl) = (closed(right), closed(left));
    // with w copies of the period in front, l = first + (k_max - w) p
    let mut ws = vec![0, k_max];
    for f in [fr, fl] {
        if f.b >= f.a {
            let w = (f.b - f.a) / p;
            ws.extend([w.saturating_sub(1), w, w + 1]);
        }
    }
    ws.into_iter()
        .filter(|&w| w <= k_max)
        .map(|w| {
            let l = ap.first + (k_max - w) * p;
            let lv = l + fl.eval(w);
            (l + fr.eval(w) + lv - l, l, lv)
        })
        .max()
}

/// Static structures over a base pair `(S, T)`.
#[derive(Debug)]
pub struct LcsIndex {
    s: Arc<BaseText>,
    t: Arc<BaseText>,
    s_rev: Arc<BaseText>,
    t_rev: Arc<BaseText>,
    /// internal queries over `S # T #`
    pairs: InternalIndex,
    /// Three Substrings LCS inside `S`, resp. `T`
    hia: [HiaPair; 2],
    occ: [Occurrences; 2],
}

/// [`LcsIndex`] construction in four steps.
#[derive(Debug)]
pub struct LcsIndexBuilder {
    s: Vec<Sym>,
    t: Vec<Sym>,
    seed: u64,
    pairs: Option<InternalIndex>,
    hia_s: Option<HiaPair>,
    hia_t: Option<HiaPair>,
    occ: Option<[Occurrences; 2]>,
}

impl LcsIndexBuilder {
    pub fn new(s: Vec<Sym>, t: Vec<Sym>, seed: u64) -> Self {
        LcsIndexBuilder { s, t, seed, pairs: None, hia_s: None, hia_t: None, occ: None }
    }
}

impl StagedBuild for LcsIndexBuilder {
    type Output = LcsIndex;

    fn remaining(&self) -> usize {
        [self.pairs.is_none(), self.hia_s.is_none(), self.hia_t.is_none(), self.occ.is_none()]
            .iter()
            .filter(|&&x| x)
            .count()
    }

    fn step(&mut self) -> Result<()> {
        if self.pairs.is_none() {
            self.pairs = Some(InternalIndex::new(&self.s, &self.t)?);
        } else if self.hia_s.is_none() {
            self.hia_s = Some(HiaPair::new(&self.s)?);
        } else if self.hia_t.is_none() {
            self.hia_t = Some(HiaPair::new(&self.t)?);
        } else if self.occ.is_none() {
            self.occ = Some([Occurrences::new(&self.s), Occurrences::new(&self.t)]);
        }
        Ok(())
    }

    fn finish(self) -> Result<LcsIndex> {
        if self.remaining() > 0 {
            return Err(Error::BadParameter("construction not finished".into()));
        }
        let hasher = Arc::new(Hasher::new(self.seed, self.s.len().max(self.t.len()) + 1));
        let s = BaseText::new(self.s, hasher.clone());
        let t = BaseText::new(self.t, hasher);
        Ok(LcsIndex {
            s_rev: s.reversed(),
            t_rev: t.reversed(),
            s,
            t,
            pairs: self.pairs.unwrap(),
            hia: [self.hia_s.unwrap(), self.hia_t.unwrap()],
            occ: self.occ.unwrap(),
        })
    }
}

pub(crate) fn run<B: StagedBuild>(mut b: B) -> Result<B::Output> {
    while b.remaining() > 0 {
        b.step()?;
    }
    b.finish()
}

impl LcsIndex {
    pub fn new(s: &[Sym], t: &[Sym]) -> Result<Self> {
        run(LcsIndexBuilder::new(s.to_vec(), t.to_vec(), DEFAULT_SEED))
    }

    pub fn s_base(&self) -> &Arc<BaseText> {
        &self.s
    }

    pub fn t_base(&self) -> &Arc<BaseText> {
        &self.t
    }

    pub fn whole_s(&self) -> KSubstring {
        KSubstring::whole(self.s.clone())
    }

    pub fn whole_t(&self) -> KSubstring {
        KSubstring::whole(self.t.clone())
    }

    fn base(&self, side: usize) -> &Arc<BaseText> {
        if side == 0 {
            &self.s
        } else {
            &self.t
        }
    }

    /// Pieces of `S # T #` spelling the fragments of `ks` (over base `side`);
    /// `None` for an inserted symbol that does not occur in base `target`.
    fn pieces(&self, ks: &KSubstring, side: usize, target: usize) -> Vec<Option<Piece>> {
        let starts = &self.pairs.gst.text.starts;
        ks.fragments()
            .iter()
            .map(|f| match *f {
                Fragment::Ref { start, len } => Some(Piece { pos: starts[side] + start, len }),
                Fragment::Char(c) => self.occ[target].first(c).map(|p| Piece { pos: starts[target] + p, len: 1 }),
            })
            .collect()
    }

    /// Longest prefix (or suffix) of the concatenation occurring in base
    /// `target`, as a piece of that base.
    fn affix(&self, pieces: &[Option<Piece>], target: usize, side: Affix) -> Piece {
        let run: Vec<Piece> = match side {
            Affix::Prefix => pieces.iter().map_while(|p| *p).collect(),
            Affix::Suffix => {
                let mut v: Vec<Piece> = pieces.iter().rev().map_while(|p| *p).collect();
                v.reverse();
                v
            }
        };
        let g = &self.pairs.gst;
        let (len, pos) = g.longest_affix(&run, target, side);
        if len == 0 {
            return Piece { pos: 0, len: 0 };
        }
        Piece { pos: pos - g.text.starts[target], len }
    }

    /// Longest common substring whose occurrence in `a` (edited from base
    /// `side`) crosses a fragment boundary and whose occurrence in `b` lies in
    /// one fragment of length at least 2. Returns `(len, pos in a, pos in b)`.
    fn cross_raw(&self, a: &KSubstring, side: usize, b: &KSubstring) -> Option<(usize, usize, usize)> {
        let other = 1 - side;
        let windows: Vec<(Piece, usize)> = b
            .fragments()
            .iter()
            .enumerate()
            .filter_map(|(g, f)| match *f {
                Fragment::Ref { start, len } if len >= 2 => Some((Piece { pos: start, len }, b.frag_start(g))),
                _ => None,
            })
            .collect();
        if windows.is_empty() {
            return None;
        }
        let pieces = self.pieces(a, side, other);
        let hia = &self.hia[other];
        let mut best: Option<(usize, usize, usize)> = None;
        for f in 1..pieces.len() {
            let at = a.frag_start(f);
            let u = self.affix(&pieces[..f], other, Affix::Suffix);
            let v = self.affix(&pieces[f..], other, Affix::Prefix);
            if u.len == 0 || v.len == 0 {
                continue;
            }
            for &(w, off) in &windows {
                let ans = hia.three_substrings_lcs(u, v, w).expect("pieces inside the base");
                if ans.len > best.map_or(0, |x| x.0) {
                    best = Some((ans.len, at - ans.x_len, off + ans.start - w.pos));
                }
            }
        }
        best
    }

    /// LCS crossing a boundary of `S'` (`side = S`) or of `T'` (`side = T`),
    /// with the other occurrence inside a fragment of length at least 2.
    pub fn cross_one_sided(&self, sp: &KSubstring, tp: &KSubstring, side: Target) -> Option<CaseAnswer> {
        match side {
            Target::S => self.cross_raw(sp, 0, tp).map(|(len, pos_s, pos_t)| CaseAnswer {
                len,
                pos_s,
                pos_t,
                case: CaseTag::OneSidedS,
            }),
            Target::T => self.cross_raw(tp, 1, sp).map(|(len, pos_t, pos_s)| CaseAnswer {
                len,
                pos_s,
                pos_t,
                case: CaseTag::OneSidedT,
            }),
        }
    }

    /// Lengths `l` with fragment `fy` of `y`'s first `l` symbols equal to the
    /// last `l` of fragment `fz` of `z`, as progressions; `0` is included.
    fn prefix_suffix_lengths(&self, y: &KSubstring, y_side: usize, fy: usize, z: &KSubstring, z_side: usize, fz: usize) -> Vec<ArithmeticProgression> {
        let mut out = Vec::new();
        let starts = &self.pairs.gst.text.starts;
        match (y.fragments()[fy], z.fragments()[fz]) {
            (Fragment::Ref { start: ys, len: yl }, Fragment::Ref { start: zs, len: zl }) => {
                let yp = Piece { pos: starts[y_side] + ys, len: yl };
                let zp = Piece { pos: starts[z_side] + zs, len: zl };
                let mut d = 1;
                while d <= yl.min(zl) {
                    let ap = self.pairs.prefix_suffix_query(yp, zp, d);
                    if !ap.is_empty() {
                        out.push(ap);
                    }
                    d *= 2;
                }
            }
            _ => {
                if first_sym(y, fy) == last_sym(z, fz) {
                    out.push(ArithmeticProgression::single(1));
                }
            }
        }
        out
    }

    /// LCS whose occurrences cross a fragment boundary in both `S'` and `T'`.
    pub fn cross_two_sided(&self, sp: &KSubstring, tp: &KSubstring) -> Option<CaseAnswer> {
        let (k1, k2) = (sp.fragments().len(), tp.fragments().len());
        if k1 < 2 || k2 < 2 {
            return None;
        }
        let srev = sp.reversed(&self.s_rev);
        let trev = tp.reversed(&self.t_rev);
        let (ns, nt) = (sp.len(), tp.len());
        let o = EditedOracle { strs: [sp, tp, &srev, &trev], stride: ns.max(nt) + 1 };
        let mut best = None;
        for f in 1..k1 {
            let bs = sp.frag_start(f);
            for g in 1..k2 {
                let bt = tp.frag_start(g);
                // the occurrences align T'[bt - l..bt) with a prefix of fragment f of S'
                let right = Arm { base: o.at(0, bs), end: o.at(0, ns), y: Sub { at: o.at(1, bt), len: nt - bt } };
                let left = Arm { base: o.at(3, nt - bt), end: o.at(3, nt), y: Sub { at: o.at(2, ns - bs), len: bs } };
                let mut aps = vec![ArithmeticProgression::single(0)];
                aps.extend(self.prefix_suffix_lengths(sp, 0, f, tp, 1, g - 1));
                for ap in aps {
                    if let Some((len, l, lv)) = best_aligned(&o, ap, right, left) {
                        let e = lv - l;
                        keep(&mut best, CaseAnswer { len, pos_s: bs - e, pos_t: bt - l - e, case: CaseTag::TwoSided });
                    }
                }
                // and S'[bs - l..bs) with a prefix of fragment g of T'
                let right = Arm { base: o.at(1, bt), end: o.at(1, nt), y: Sub { at: o.at(0, bs), len: ns - bs } };
                let left = Arm { base: o.at(2, ns - bs), end: o.at(2, ns), y: Sub { at: o.at(3, nt - bt), len: bt } };
                for ap in self.prefix_suffix_lengths(tp, 1, g, sp, 0, f - 1) {
                    if let Some((len, l, lv)) = best_aligned(&o, ap, right, left) {
                        let e = lv - l;
                        keep(&mut best, CaseAnswer { len, pos_s: bs - l - e, pos_t: bt - e, case: CaseTag::TwoSided });
                    }
                }
            }
        }
        best
    }

    /// LCS of `S` with `S[i] := alpha` and `T` with `T[j] := beta` (0-based).
    pub fn lcs_one_sub_per_string(&self, i: usize, alpha: Sym, j: usize, beta: Sym) -> Result<CaseAnswer> {
        let sp = self.whole_s().edit(EditKind::Sub, i, alpha)?;
        let tp = self.whole_t().edit(EditKind::Sub, j, beta)?;
        let mut best = None;
        for (cs, ct) in [
            (Cut::Prefix(i), Cut::Prefix(j)),
            (Cut::Prefix(i), Cut::Suffix(j + 1)),
            (Cut::Suffix(i + 1), Cut::Prefix(j)),
            (Cut::Suffix(i + 1), Cut::Suffix(j + 1)),
        ] {
            let a = self.pairs.lcs_prefsuf(cs, ct)?;
            keep(&mut best, CaseAnswer { len: a.len, pos_s: a.pos_s, pos_t: a.pos_t, case: CaseTag::NoBoundary });
        }
        for c in [self.cross_one_sided(&sp, &tp, Target::S), self.cross_one_sided(&sp, &tp, Target::T), self.cross_two_sided(&sp, &tp)]
            .into_iter()
            .flatten()
        {
            keep(&mut best, c);
        }
        if let Some(q) = find_in(&tp, &self.occ[1], alpha) {
            keep(&mut best, CaseAnswer { len: 1, pos_s: i, pos_t: q, case: CaseTag::Unit });
        }
        if let Some(p) = find_in(&sp, &self.occ[0], beta) {
            keep(&mut best, CaseAnswer { len: 1, pos_s: p, pos_t: j, case: CaseTag::Unit });
        }
        Ok(best.unwrap_or_default())
    }

    /// LCS of an edited `S'` and the unedited `T`.
    pub fn k_substring_lcs(&self, sp: &KSubstring) -> LcsAnswer {
        let mut best = None;
        for (f, frag) in sp.fragments().iter().enumerate() {
            let at = sp.frag_start(f);
            match *frag {
                Fragment::Ref { start, len } => {
                    let a = self.pairs.lcs_substring_vs_t(start, start + len - 1).expect("fragment inside S");
                    if a.len == 0 {
                        continue;
                    }
                    keep(&mut best, CaseAnswer { len: a.len, pos_s: at + a.pos_s - start, pos_t: a.pos_t, case: CaseTag::NoBoundary });
                }
                Fragment::Char(c) => {
                    if let Some(q) = self.occ[1].first(c) {
                        keep(&mut best, CaseAnswer { len: 1, pos_s: at, pos_t: q, case: CaseTag::Unit });
                    }
                }
            }
        }
        if let Some(c) = self.cross_one_sided(sp, &self.whole_t(), Target::S) {
            keep(&mut best, c);
        }
        best.unwrap_or_default().lcs()
    }
}

/// Symbol counts of both strings and the symbols they share.
#[derive(Debug, Clone, Default)]
struct CharCounts {
    counts: HashMap<Sym, [usize; 2]>,
    shared: BTreeSet<Sym>,
}

impl CharCounts {
    fn new(s: &[Sym], t: &[Sym]) -> Self {
        let mut cc = CharCounts::default();
        for (side, text) in [s, t].into_iter().enumerate() {
            for &c in text {
                cc.add(side, c);
            }
        }
        cc
    }

    fn add(&mut self, side: usize, c: Sym) {
        let e = self.counts.entry(c).or_default();
        e[side] += 1;
        if e[0] > 0 && e[1] > 0 {
            self.shared.insert(c);
        }
    }

    fn remove(&mut self, side: usize, c: Sym) {
        let e = self.counts.get_mut(&c).expect("symbol counted");
        e[side] -= 1;
        if e[side] == 0 {
            self.shared.remove(&c);
        }
    }

    fn any_shared(&self) -> Option<Sym> {
        self.shared.first().copied()
    }
}

/// Edited pair `(S', T')` over an [`LcsIndex`], answering LCS after each edit.
#[derive(Debug, Clone)]
pub struct DynamicLcs {
    index: Arc<LcsIndex>,
    strings: [KSubstring; 2],
    decremental: DecrementalLcs,
    /// base positions already invalidated in the decremental structure
    removed: [Vec<bool>; 2],
    /// base boundaries already separated
    separated: [Vec<bool>; 2],
    counts: CharCounts,
}

impl DynamicLcs {
    pub fn new(s: &[Sym], t: &[Sym]) -> Result<Self> {
        Self::with_seed(s, t, DEFAULT_SEED)
    }

    /// Fingerprints drawn from `seed`; later rebuilds keep it.
    pub fn with_seed(s: &[Sym], t: &[Sym], seed: u64) -> Result<Self> {
        run(DynamicLcsBuilder::with_seed(s.to_vec(), t.to_vec(), seed))
    }

    fn from_parts(index: LcsIndex, decremental: DecrementalLcs) -> Self {
        let (ls, lt) = (index.s.len(), index.t.len());
        let counts = CharCounts::new(&index.s.syms, &index.t.syms);
        let index = Arc::new(index);
        DynamicLcs {
            strings: [index.whole_s(), index.whole_t()],
            index,
            decremental,
            removed: [vec![false; ls], vec![false; lt]],
            separated: [vec![false; ls + 1], vec![false; lt + 1]],
            counts,
        }
    }

    pub fn index(&self) -> &LcsIndex {
        &self.index
    }

    pub fn s(&self) -> &KSubstring {
        &self.strings[0]
    }

    pub fn t(&self) -> &KSubstring {
        &self.strings[1]
    }

    pub fn decremental(&self) -> &DecrementalLcs {
        &self.decremental
    }

    /// Bring the decremental structure in line with the fragments of one string.
    fn sync(&mut self, side: usize) -> Result<()> {
        let which = if side == 0 { Side::S } else { Side::T };
        let n = self.index.base(side).len();
        let mut prev_end = 0;
        let mut between = false;
        let mut first = true;
        let frags: Vec<Fragment> = self.strings[side].fragments().to_vec();
        for f in frags {
            match f {
                Fragment::Char(_) => between = true,
                Fragment::Ref { start, len } => {
                    for p in prev_end..start {
                        if !self.removed[side][p] {
                            self.removed[side][p] = true;
                            self.decremental.invalidate(which, p)?;
                        }
                    }
                    if !first && start == prev_end && between && !self.separated[side][start] {
                        self.separated[side][start] = true;
                        self.decremental.split(which, start)?;
                    }
                    prev_end = start + len;
                    between = false;
                    first = false;
                }
            }
        }
        for p in prev_end..n {
            if !self.removed[side][p] {
                self.removed[side][p] = true;
                self.decremental.invalidate(which, p)?;
            }
        }
        Ok(())
    }

    /// Position in `ks` of base occurrence `[p, p + len)`, which lies in one fragment.
    fn to_current(ks: &KSubstring, p: usize, len: usize) -> usize {
        for (f, frag) in ks.fragments().iter().enumerate() {
            if let Fragment::Ref { start, len: fl } = *frag {
                if start <= p && p + len <= start + fl {
                    return ks.frag_start(f) + p - start;
                }
            }
        }
        unreachable!("decremental answers avoid removed positions")
    }

    /// The best answer of each case that has one.
    pub fn case_answers(&self) -> Vec<CaseAnswer> {
        let (sp, tp) = (&self.strings[0], &self.strings[1]);
        let mut out = Vec::new();
        let d = self.decremental.current();
        if d.len > 0 {
            out.push(CaseAnswer {
                len: d.len,
                pos_s: Self::to_current(sp, d.pos_s, d.len),
                pos_t: Self::to_current(tp, d.pos_t, d.len),
                case: CaseTag::NoBoundary,
            });
        }
        out.extend(self.index.cross_one_sided(sp, tp, Target::S));
        out.extend(self.index.cross_one_sided(sp, tp, Target::T));
        out.extend(self.index.cross_two_sided(sp, tp));
        if let Some(c) = self.counts.any_shared() {
            let p = find_in(sp, &self.index.occ[0], c).expect("counted in S'");
            let q = find_in(tp, &self.index.occ[1], c).expect("counted in T'");
            out.push(CaseAnswer { len: 1, pos_s: p, pos_t: q, case: CaseTag::Unit });
        }
        out
    }

    pub fn answer(&self) -> CaseAnswer {
        let mut best = None;
        for c in self.case_answers() {
            keep(&mut best, c);
        }
        best.unwrap_or_default()
    }

    /// Apply one edit; `e.pos` is 1-based.
    pub fn edit(&mut self, e: &EditOp) -> Result<CaseAnswer> {
        self.apply(e)?;
        Ok(self.answer())
    }
}

impl Rebuild for DynamicLcs {
    type Builder = DynamicLcsBuilder;

    fn apply(&mut self, e: &EditOp) -> Result<()> {
        let side = match e.target {
            Target::S => 0,
            Target::T => 1,
        };
        let ks = &self.strings[side];
        let next = ks.apply_edit(e)?;
        if e.kind != EditKind::Ins {
            let old = ks.char_at(e.pos - 1)?;
            self.counts.remove(side, old);
        }
        if e.kind != EditKind::Del {
            self.counts.add(side, next.char_at(e.pos - 1)?);
        }
        self.strings[side] = next;
        self.sync(side)
    }

    fn rebuild(&self) -> DynamicLcsBuilder {
        let seed = self.index.s.hasher.seed();
        DynamicLcsBuilder::with_seed(self.strings[0].materialize(), self.strings[1].materialize(), seed)
    }

    fn fragment_count(&self) -> usize {
        self.strings[0].fragments().len().max(self.strings[1].fragments().len())
    }
}

/// [`DynamicLcs`] construction: the index steps, then the decremental structure.
#[derive(Debug)]
pub struct DynamicLcsBuilder {
    index: LcsIndexBuilder,
    decremental: Option<DecrementalLcs>,
}

impl DynamicLcsBuilder {
    pub fn new(s: Vec<Sym>, t: Vec<Sym>) -> Self {
        Self::with_seed(s, t, DEFAULT_SEED)
    }

    pub fn with_seed(s: Vec<Sym>, t: Vec<Sym>, seed: u64) -> Self {
        DynamicLcsBuilder { index: LcsIndexBuilder::new(s, t, seed), decremental: None }
    }
}

impl StagedBuild for DynamicLcsBuilder {
    type Output = DynamicLcs;

    fn remaining(&self) -> usize {
        self.index.remaining() + usize::from(self.decremental.is_none())
    }

    fn step(&mut self) -> Result<()> {
        if self.index.remaining() > 0 {
            return self.index.step();
        }
        if self.decremental.is_none() {
            self.decremental = Some(DecrementalLcs::new(&self.index.s, &self.index.t, None)?);
        }
        Ok(())
    }

    fn finish(self) -> Result<DynamicLcs> {
        let decremental = self.decremental.ok_or_else(|| Error::BadParameter("construction not finished".into()))?;
        Ok(DynamicLcs::from_parts(self.index.finish()?, decremental))
    }
}

/// Edited `S'` against a fixed `T`.
#[derive(Debug, Clone)]
pub struct OneSidedLcs {
    index: Arc<LcsIndex>,
    s: KSubstring,
}

impl OneSidedLcs {
    pub fn new(s: &[Sym], t: &[Sym]) -> Result<Self> {
        run(OneSidedBuilder(LcsIndexBuilder::new(s.to_vec(), t.to_vec(), DEFAULT_SEED)))
    }

    pub fn s(&self) -> &KSubstring {
        &self.s
    }

    pub fn answer(&self) -> LcsAnswer {
        self.index.k_substring_lcs(&self.s)
    }
}

impl Rebuild for OneSidedLcs {
    type Builder = OneSidedBuilder;

    fn apply(&mut self, e: &EditOp) -> Result<()> {
        if e.target != Target::S {
            return Err(Error::BadParameter("only S may be edited".into()));
        }
        self.s = self.s.apply_edit(e)?;
        Ok(())
    }

    fn rebuild(&self) -> OneSidedBuilder {
        OneSidedBuilder(LcsIndexBuilder::new(self.s.materialize(), self.index.t.syms.clone(), self.index.s.hasher.seed()))
    }

    fn fragment_count(&self) -> usize {
        self.s.fragments().len()
    }
}

#[derive(Debug)]
pub struct OneSidedBuilder(LcsIndexBuilder);

impl StagedBuild for OneSidedBuilder {
    type Output = OneSidedLcs;

    fn remaining(&self) -> usize {
        self.0.remaining()
    }

    fn step(&mut self) -> Result<()> {
        self.0.step()
    }

    fn finish(self) -> Result<OneSidedLcs> {
        let index = Arc::new(self.0.finish()?);
        Ok(OneSidedLcs { s: index.whole_s(), index })
    }
}

/// Fully dynamic LCS with worst-case rebuilding.
pub struct DynamicLcsSession {
    inner: TimeSliced<DynamicLcs>,
}

impl DynamicLcsSession {
    /// `kappa` defaults to the balance point of the quadratic query profile.
    pub fn new(s: &[Sym], t: &[Sym], kappa: Option<usize>, mode: SliceMode) -> Result<Self> {
        Self::with_seed(s, t, kappa, mode, DEFAULT_SEED)
    }

    pub fn with_seed(s: &[Sym], t: &[Sym], kappa: Option<usize>, mode: SliceMode, seed: u64) -> Result<Self> {
        let n = s.len().max(t.len());
        let kappa = kappa.unwrap_or_else(|| QueryProfile::Quadratic.kappa_int(n));
        Ok(DynamicLcsSession { inner: TimeSliced::new(DynamicLcs::with_seed(s, t, seed)?, kappa, mode)? })
    }

    pub fn answer(&self) -> CaseAnswer {
        self.inner.live().answer()
    }

    pub fn edit(&mut self, e: &EditOp) -> Result<CaseAnswer> {
        self.inner.edit(e)?;
        Ok(self.answer())
    }

    pub fn current(&self) -> &DynamicLcs {
        self.inner.live()
    }

    pub fn slicing(&self) -> &TimeSliced<DynamicLcs> {
        &self.inner
    }
}

/// LCS with edits in `S` only.
pub struct OneSidedSession {
    inner: TimeSliced<OneSidedLcs>,
}

impl OneSidedSession {
    pub fn new(s: &[Sym], t: &[Sym], kappa: Option<usize>, mode: SliceMode) -> Result<Self> {
        let n = s.len().max(t.len());
        let kappa = kappa.unwrap_or_else(|| QueryProfile::Linear.kappa_int(n));
        Ok(OneSidedSession { inner: TimeSliced::new(OneSidedLcs::new(s, t)?, kappa, mode)? })
    }

    pub fn answer(&self) -> LcsAnswer {
        self.inner.live().answer()
    }

    pub fn edit(&mut self, e: &EditOp) -> Result<LcsAnswer> {
        self.inner.edit(e)?;
        Ok(self.answer())
    }

    pub fn slicing(&self) -> &TimeSliced<OneSidedLcs> {
        &self.inner
    }
}

#[cfg(test)]
mod tests;
