//! Longest palindromic substring of an edited string.
//!
//! Maximal palindromes of the base (one per center) are stored in three point
//! grids, which answer the longest palindrome of any base substring and its
//! longest prefix and suffix palindromes. For an edited string, a palindrome
//! either lies inside one fragment or has its center near a fragment boundary;
//! in the latter case its part inside the fragment is a prefix (or suffix)
//! palindrome of that fragment, and those are the borders of the longest one.

use std::sync::Arc;

use crate::core_index::{Gst, Piece};
use crate::dynamic_lcs::{run, EditedOracle, QueryProfile, Rebuild, SliceMode, StagedBuild, TimeSliced};
use crate::error::{Error, Result};
use crate::internal_queries::{lcp_power_prefix, ArithmeticProgression, LceOracle, PrefixSuffixIndex, Sub};
use crate::ksub::{BaseText, EditOp, Fragment, Hasher, KSubstring, Target, DEFAULT_SEED};
use crate::range_structures::PointGridRmq;
use crate::Sym;

/// A palindrome: `len` symbols from `start` (`start` is 0 when `len = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PalAnswer {
    pub len: usize,
    pub start: usize,
}

fn keep(best: &mut PalAnswer, cand: PalAnswer) {
    if cand.len > best.len {
        *best = cand;
    }
}

/// Maximal palindrome at one center: `s[start..start + len)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mps {
    pub start: usize,
    pub len: usize,
}

/// Maximal palindromes by doubled center: entry `c` is centered at `c / 2`,
/// so `start + end = c` for a nonempty one spanning `[start, end]`. Even
/// centers between two different symbols hold an empty palindrome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MpsSet {
    pub by_center: Vec<Mps>,
}

/// Manacher's algorithm.
pub fn compute_mps(s: &[Sym]) -> Result<MpsSet> {
    let n = s.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    // odd[i]: radius r with s[i - r + 1..=i + r - 1] the longest odd palindrome
    let mut odd = vec![0usize; n];
    let (mut l, mut r) = (0usize, 0usize);
    for i in 0..n {
        let mut k = if i < r { odd[l + r - i - 1].min(r - i) } else { 1 };
        while i + k < n && i >= k && s[i + k] == s[i - k] {
            k += 1;
        }
        odd[i] = k;
        if i + k > r {
            l = i + 1 - k;
            r = i + k;
        }
    }
    // even[i]: half length of the longest even palindrome centered just before i
    let mut even = vec![0usize; n];
    let (mut l, mut r) = (0usize, 0usize);
    for i in 0..n {
        let mut k = if i < r { even[l + r - i].min(r - i) } else { 0 };
        while i + k < n && i > k && s[i + k] == s[i - k - 1] {
            k += 1;
        }
        even[i] = k;
        if i + k > r {
            l = i - k;
            r = i + k;
        }
    }
    let mut by_center = Vec::with_capacity(2 * n - 1);
    for c in 0..2 * n - 1 {
        let m = if c % 2 == 0 {
            let i = c / 2;
            Mps { start: i + 1 - odd[i], len: 2 * odd[i] - 1 }
        } else {
            let i = c / 2 + 1;
            Mps { start: i - even[i], len: 2 * even[i] }
        };
        by_center.push(m);
    }
    Ok(MpsSet { by_center })
}

/// Point grids over the maximal palindromes; payloads are doubled centers.
#[derive(Debug, Clone)]
pub struct PalGrids {
    /// `(start, end)` weighted by length
    containment: PointGridRmq,
    /// `(start, start + end)` weighted by `start + end`
    prefix: PointGridRmq,
    /// `(end, start + end)` weighted by `-(start + end)`
    suffix: PointGridRmq,
}

impl PalGrids {
    pub fn new(m: &MpsSet) -> Self {
        let mut cont = Vec::new();
        let mut pre = Vec::new();
        let mut suf = Vec::new();
        for (c, p) in m.by_center.iter().enumerate() {
            if p.len == 0 {
                continue;
            }
            let (a, b) = (p.start as i64, (p.start + p.len - 1) as i64);
            cont.push((a, b, p.len as i64, c as u64));
            pre.push((a, a + b, a + b, c as u64));
            suf.push((b, a + b, -(a + b), c as u64));
        }
        PalGrids {
            containment: PointGridRmq::new(&cont),
            prefix: PointGridRmq::new(&pre),
            suffix: PointGridRmq::new(&suf),
        }
    }
}

/// What [`PalIndex::internal_lspal`] looks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PalMode {
    Any,
    Prefix,
    Suffix,
}

/// Static structures over a base string.
#[derive(Debug)]
pub struct PalIndex {
    s: Arc<BaseText>,
    s_rev: Arc<BaseText>,
    mps: MpsSet,
    grids: PalGrids,
    gst: Gst,
    periods: PrefixSuffixIndex,
}

/// [`PalIndex`] construction: palindromes and grids, then the border index.
#[derive(Debug)]
pub struct PalIndexBuilder {
    s: Vec<Sym>,
    seed: u64,
    pals: Option<(MpsSet, PalGrids)>,
    borders: Option<(Gst, PrefixSuffixIndex)>,
}

impl PalIndexBuilder {
    pub fn new(s: Vec<Sym>, seed: u64) -> Self {
        PalIndexBuilder { s, seed, pals: None, borders: None }
    }
}

impl StagedBuild for PalIndexBuilder {
    type Output = PalIndex;

    fn remaining(&self) -> usize {
        usize::from(self.pals.is_none()) + usize::from(self.borders.is_none())
    }

    fn step(&mut self) -> Result<()> {
        if self.pals.is_none() {
            // an empty base (everything deleted) has no palindromes
            let mps = if self.s.is_empty() { MpsSet { by_center: Vec::new() } } else { compute_mps(&self.s)? };
            let grids = PalGrids::new(&mps);
            self.pals = Some((mps, grids));
        } else if self.borders.is_none() {
            let gst = Gst::new(&[&self.s])?;
            let periods = PrefixSuffixIndex::new(&gst);
            self.borders = Some((gst, periods));
        }
        Ok(())
    }

    fn finish(self) -> Result<PalIndex> {
        let (Some((mps, grids)), Some((gst, periods))) = (self.pals, self.borders) else {
            return Err(Error::BadParameter("construction not finished".into()));
        };
        let hasher = Arc::new(Hasher::new(self.seed, self.s.len() + 1));
        let s = BaseText::new(self.s, hasher);
        Ok(PalIndex { s_rev: s.reversed(), s, mps, grids, gst, periods })
    }
}

impl PalIndex {
    pub fn new(s: &[Sym]) -> Result<Self> {
        run(PalIndexBuilder::new(s.to_vec(), DEFAULT_SEED))
    }

    pub fn base(&self) -> &Arc<BaseText> {
        &self.s
    }

    pub fn whole(&self) -> KSubstring {
        KSubstring::whole(self.s.clone())
    }

    pub fn mps(&self) -> &MpsSet {
        &self.mps
    }

    /// Longest palindrome inside `s[i..=j]`, or its longest prefix or suffix
    /// palindrome.
    pub fn internal_lspal(&self, i: usize, j: usize, mode: PalMode) -> Result<PalAnswer> {
        let n = self.s.len();
        if i > j || j >= n {
            return Err(Error::InvalidInterval { lo: i as i64, hi: j as i64 });
        }
        let (ii, jj) = (i as i64, j as i64);
        let prefix = || {
            // rightmost center among palindromes starting at or before i
            let c = self.grids.prefix.query((i64::MIN, ii), (i64::MIN, ii + jj)).expect("s[i] itself").payload as usize;
            PalAnswer { len: c + 1 - 2 * i, start: i }
        };
        let suffix = || {
            let c = self.grids.suffix.query((jj, i64::MAX), (ii + jj, i64::MAX)).expect("s[j] itself").payload as usize;
            PalAnswer { len: 2 * j + 1 - c, start: c - j }
        };
        Ok(match mode {
            PalMode::Prefix => prefix(),
            PalMode::Suffix => suffix(),
            PalMode::Any => {
                let mut best = prefix();
                keep(&mut best, suffix());
                if let Some(p) = self.grids.containment.query((ii, i64::MAX), (i64::MIN, jj)) {
                    let m = self.mps.by_center[p.payload as usize];
                    keep(&mut best, PalAnswer { len: m.len, start: m.start });
                }
                best
            }
        })
    }

    /// Lengths of the palindromes that are prefixes of `[pos, pos + len)`
    /// when that is the longest one: its borders, itself, and 0.
    fn prefix_palindromes(&self, u: Piece) -> Vec<ArithmeticProgression> {
        let mut out = vec![ArithmeticProgression::single(0), ArithmeticProgression::single(u.len)];
        out.extend(self.periods.borders_progressions(&self.gst, u).into_iter().filter(|ap| !ap.is_empty()));
        out
    }

    /// Longest palindrome of `S'`.
    pub fn k_substring_lspal(&self, sp: &KSubstring) -> PalAnswer {
        let n = sp.len();
        let mut best = PalAnswer::default();
        if n == 0 {
            return best;
        }
        let frags = sp.fragments();
        for (f, frag) in frags.iter().enumerate() {
            let at = sp.frag_start(f);
            match *frag {
                Fragment::Ref { start, len } => {
                    let a = self.internal_lspal(start, start + len - 1, PalMode::Any).expect("fragment inside the base");
                    keep(&mut best, PalAnswer { len: a.len, start: at + a.start - start });
                }
                Fragment::Char(_) => keep(&mut best, PalAnswer { len: 1, start: at }),
            }
        }
        if frags.len() < 2 {
            return best;
        }
        let srev = sp.reversed(&self.s_rev);
        let o = EditedOracle { strs: [sp, &srev, sp, &srev], stride: n + 1 };
        for f in 1..frags.len() {
            let b = sp.frag_start(f);
            // center at or right of the boundary: a prefix palindrome of fragment f
            let aps = match frags[f] {
                Fragment::Ref { start, len } => {
                    let u0 = self.internal_lspal(start, start + len - 1, PalMode::Prefix).expect("fragment inside the base").len;
                    self.prefix_palindromes(Piece { pos: start, len: u0 })
                }
                Fragment::Char(_) => vec![ArithmeticProgression::single(0), ArithmeticProgression::single(1)],
            };
            for ap in aps {
                if let Some(p) = around_boundary(&o, 0, 1, n, b, ap) {
                    keep(&mut best, p);
                }
            }
            // center left of it: a suffix palindrome of fragment f - 1, seen from S'^R
            let aps = match frags[f - 1] {
                Fragment::Ref { start, len } => {
                    let v0 = self.internal_lspal(start, start + len - 1, PalMode::Suffix).expect("fragment inside the base").len;
                    self.prefix_palindromes(Piece { pos: start + len - v0, len: v0 })
                }
                Fragment::Char(_) => vec![ArithmeticProgression::single(1)],
            };
            for ap in aps {
                if let Some(p) = around_boundary(&o, 1, 0, n, n - b, ap) {
                    keep(&mut best, PalAnswer { len: p.len, start: n - p.start - p.len });
                }
            }
        }
        best
    }
}

/// Longest palindrome of string `fwd` (reverse `rev`, both of length `n`)
/// whose part right of boundary `b` starts with a palindrome of length `u` in
/// `ap`, all such `u` being prefix palindromes with a common period: the
/// palindrome is `[b - e, b + u + e)` with `e = lcp(fwd[b + u..], rev[n - b..])`.
fn around_boundary(o: &EditedOracle<'_>, fwd: usize, rev: usize, n: usize, b: usize, ap: ArithmeticProgression) -> Option<PalAnswer> {
    let y = Sub { at: o.at(rev, n - b), len: b };
    let arm = |u: usize| o.lce(o.at(fwd, b + u), y.at).min(n - b - u).min(b);
    let make = |u: usize, e: usize| PalAnswer { len: u + 2 * e, start: b - e };
    if ap.count == 0 {
        return None;
    }
    if ap.count <= 2 {
        return ap.iter().map(|u| make(u, arm(u))).max_by_key(|p| p.len);
    }
    let p = ap.diff;
    let k_max = ap.count - 1;
    let top = ap.first + k_max * p;
    // u = top - w p meets fwd[b + u..] = P^w X
    let f = lcp_power_prefix(
        o,
        Sub { at: o.at(fwd, b + top - p), len: p },
        Sub { at: o.at(fwd, b + top), len: n - b - top },
        y,
    )
    .expect("period is positive");
    let mut ws = vec![0, k_max];
    if f.b >= f.a {
        let w = (f.b - f.a) / p;
        ws.extend([w.saturating_sub(1), w, w + 1]);
    }
    ws.into_iter()
        .filter(|&w| w <= k_max)
        .map(|w| {
            let u = top - w * p;
            make(u, f.eval(w).min(b))
        })
        .max_by_key(|p| p.len)
}

/// Edited string over a [`PalIndex`].
#[derive(Debug, Clone)]
pub struct DynamicPalindrome {
    index: Arc<PalIndex>,
    s: KSubstring,
}

impl DynamicPalindrome {
    pub fn new(s: &[Sym]) -> Result<Self> {
        Self::with_seed(s, DEFAULT_SEED)
    }

    /// Fingerprints drawn from `seed`; later rebuilds keep it.
    pub fn with_seed(s: &[Sym], seed: u64) -> Result<Self> {
        run(DynamicPalindromeBuilder(PalIndexBuilder::new(s.to_vec(), seed)))
    }

    pub fn index(&self) -> &PalIndex {
        &self.index
    }

    pub fn s(&self) -> &KSubstring {
        &self.s
    }

    pub fn answer(&self) -> PalAnswer {
        self.index.k_substring_lspal(&self.s)
    }
}

impl Rebuild for DynamicPalindrome {
    type Builder = DynamicPalindromeBuilder;

    fn apply(&mut self, e: &EditOp) -> Result<()> {
        if e.target != Target::S {
            return Err(Error::BadParameter("only S may be edited".into()));
        }
        self.s = self.s.apply_edit(e)?;
        Ok(())
    }

    fn rebuild(&self) -> DynamicPalindromeBuilder {
        DynamicPalindromeBuilder(PalIndexBuilder::new(self.s.materialize(), self.s.base().hasher.seed()))
    }

    fn fragment_count(&self) -> usize {
        self.s.fragments().len()
    }
}

#[derive(Debug)]
pub struct DynamicPalindromeBuilder(PalIndexBuilder);

impl StagedBuild for DynamicPalindromeBuilder {
    type Output = DynamicPalindrome;

    fn remaining(&self) -> usize {
        self.0.remaining()
    }

    fn step(&mut self) -> Result<()> {
        self.0.step()
    }

    fn finish(self) -> Result<DynamicPalindrome> {
        let index = Arc::new(self.0.finish()?);
        Ok(DynamicPalindrome { s: index.whole(), index })
    }
}

/// Fully dynamic longest palindrome with worst-case rebuilding.
pub struct PalindromeSession {
    inner: TimeSliced<DynamicPalindrome>,
}

impl PalindromeSession {
    /// `kappa` defaults to the balance point of the linear query profile.
    pub fn new(s: &[Sym], kappa: Option<usize>, mode: SliceMode) -> Result<Self> {
        Self::with_seed(s, kappa, mode, DEFAULT_SEED)
    }

    pub fn with_seed(s: &[Sym], kappa: Option<usize>, mode: SliceMode, seed: u64) -> Result<Self> {
        let kappa = kappa.unwrap_or_else(|| QueryProfile::Linear.kappa_int(s.len()));
        Ok(PalindromeSession { inner: TimeSliced::new(DynamicPalindrome::with_seed(s, seed)?, kappa, mode)? })
    }

    pub fn answer(&self) -> PalAnswer {
        self.inner.live().answer()
    }

    pub fn edit(&mut self, e: &EditOp) -> Result<PalAnswer> {
        self.inner.edit(e)?;
        Ok(self.answer())
    }

    pub fn current(&self) -> &DynamicPalindrome {
        self.inner.live()
    }

    pub fn slicing(&self) -> &TimeSliced<DynamicPalindrome> {
        &self.inner
    }
}
