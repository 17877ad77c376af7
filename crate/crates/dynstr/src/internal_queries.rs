//! Queries about substrings of a static pair `(S, T)`: LCS of a prefix or suffix
//! of `S` with a prefix or suffix of `T`, LCS of a substring of `S` with `T`,
//! prefix-suffix queries, borders, periods and `lcp(P^w X, Y)` in closed form.

use crate::core_index::{Gst, Piece, PositionTree, SparseMax};
use crate::error::{Error, Result};
use crate::range_structures::PointGridRmq;
use crate::Sym;

/// `first, first + diff, ..., first + (count - 1) * diff`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ArithmeticProgression {
    pub first: usize,
    pub diff: usize,
    pub count: usize,
}

impl ArithmeticProgression {
    pub fn single(x: usize) -> Self {
        ArithmeticProgression { first: x, diff: 0, count: 1 }
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn last(&self) -> Option<usize> {
        (self.count > 0).then(|| self.first + (self.count - 1) * self.diff)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..self.count).map(move |k| self.first + k * self.diff)
    }

    /// The elements `>= min`.
    pub fn at_least(self, min: usize) -> Self {
        if self.count == 0 || self.first >= min {
            return self;
        }
        if self.diff == 0 {
            return ArithmeticProgression { count: 0, ..self };
        }
        let skip = (min - self.first).div_ceil(self.diff).min(self.count);
        ArithmeticProgression { first: self.first + skip * self.diff, diff: self.diff, count: self.count - skip }
    }

    /// The elements other than `x`, as the parts before and after it.
    pub fn without(self, x: usize) -> [Self; 2] {
        let empty = ArithmeticProgression { count: 0, ..self };
        let hit = self.count > 0
            && x >= self.first
            && if self.diff == 0 { x == self.first } else { (x - self.first) % self.diff == 0 && (x - self.first) / self.diff < self.count };
        if !hit {
            return [self, empty];
        }
        if self.diff == 0 {
            return [empty, empty];
        }
        let k = (x - self.first) / self.diff;
        [
            ArithmeticProgression { count: k, ..self },
            ArithmeticProgression { first: x + self.diff, diff: self.diff, count: self.count - k - 1 },
        ]
    }
}

/// A common substring: its length and a start in each string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LcsAnswer {
    pub len: usize,
    pub pos_s: usize,
    pub pos_t: usize,
}

/// A prefix `[..i]` or suffix `[i..]` of a string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cut {
    Prefix(usize),
    Suffix(usize),
}

/// LCE oracle over some family of strings addressed by `Loc`.
pub trait LceOracle {
    type Loc: Copy;
    /// Common prefix length of the strings starting at `a` and `b`; callers cap it.
    fn lce(&self, a: Self::Loc, b: Self::Loc) -> usize;
    fn shift(&self, a: Self::Loc, k: usize) -> Self::Loc;
}

impl LceOracle for Gst {
    type Loc = usize;
    fn lce(&self, a: usize, b: usize) -> usize {
        self.lce_raw(a, b)
    }
    fn shift(&self, a: usize, k: usize) -> usize {
        a + k
    }
}

/// A string given by its start in an [`LceOracle`] and its length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sub<L> {
    pub at: L,
    pub len: usize,
}

/// `w -> lcp(P^w X, Y)`: linear with slope `|P|`, then constant, with a single
/// special value where the two meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PiecewiseLinearLcp {
    /// `lcp(P^inf, X)`
    pub a: usize,
    /// `lcp(P^inf, Y)`
    pub b: usize,
    pub p: usize,
    /// `(w, value)` at the `w` with `a + w|P| = b`, if it is an integer
    pub meet: Option<(usize, usize)>,
}

impl PiecewiseLinearLcp {
    pub fn eval(&self, w: usize) -> usize {
        let reach = w * self.p + self.a;
        match reach.cmp(&self.b) {
            std::cmp::Ordering::Less => reach,
            std::cmp::Ordering::Greater => self.b,
            std::cmp::Ordering::Equal => self.meet.expect("meeting point exists").1,
        }
    }

    /// Maximum over `w` in `[lo, hi]`, with the smallest `w` attaining it.
    pub fn max_in(&self, lo: usize, hi: usize) -> Option<(usize, usize)> {
        if lo > hi {
            return None;
        }
        let mut cands = vec![lo, hi];
        if self.b >= self.a {
            let w = (self.b - self.a) / self.p;
            cands.extend([w.saturating_sub(1), w, w + 1]);
        }
        cands
            .into_iter()
            .filter(|&w| lo <= w && w <= hi)
            .map(|w| (self.eval(w), w))
            .max_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)))
    }
}

fn lcp_with_power<O: LceOracle>(o: &O, p: Sub<O::Loc>, x: Sub<O::Loc>) -> usize {
    let l = o.lce(p.at, x.at).min(p.len).min(x.len);
    if l < p.len {
        return l;
    }
    (p.len + o.lce(x.at, o.shift(x.at, p.len))).min(x.len)
}

/// Closed form of `w -> lcp(P^w X, Y)` from five LCE queries.
pub fn lcp_power_prefix<O: LceOracle>(o: &O, p: Sub<O::Loc>, x: Sub<O::Loc>, y: Sub<O::Loc>) -> Result<PiecewiseLinearLcp> {
    if p.len == 0 {
        return Err(Error::EmptyInput);
    }
    let a = lcp_with_power(o, p, x);
    let b = lcp_with_power(o, p, y);
    let meet = (b >= a && (b - a) % p.len == 0).then(|| {
        let wp = b - a;
        let tail = if x.len == 0 || wp >= y.len {
            0
        } else {
            o.lce(x.at, o.shift(y.at, wp)).min(x.len).min(y.len - wp)
        };
        (wp / p.len, wp + tail)
    });
    Ok(PiecewiseLinearLcp { a, b, p: p.len, meet })
}

#[derive(Debug, Clone)]
struct Grids {
    /// `(maxPos_S, maxPos_T)` weighted by depth
    suf_suf: PointGridRmq,
    /// `(minPos_S + D, maxPos_T)` weighted by depth
    pre_full: PointGridRmq,
    /// `(minPos_S + D, maxPos_T)` weighted by `-minPos_S`
    pre_part: PointGridRmq,
    min_s: Vec<usize>,
    max_s: Vec<usize>,
    max_t: Vec<usize>,
}

impl Grids {
    fn new(g: &Gst) -> Self {
        let m = g.node_count();
        let (ls, lt) = (g.text.lens[0], g.text.lens[1]);
        let mut min_s = vec![usize::MAX; m];
        let mut max_s = vec![0usize; m];
        let mut has_s = vec![false; m];
        let mut max_t = vec![0usize; m];
        let mut has_t = vec![false; m];
        let (mut a, mut b, mut c) = (Vec::new(), Vec::new(), Vec::new());
        for v in g.postorder() {
            if g.is_leaf(v) {
                let (k, p) = g.leaf_local(v);
                if k == 0 && p < ls {
                    min_s[v] = p;
                    max_s[v] = p;
                    has_s[v] = true;
                } else if k == 1 && p < lt {
                    max_t[v] = p;
                    has_t[v] = true;
                }
                continue;
            }
            for &ch in g.children(v) {
                let ch = ch as usize;
                if has_s[ch] {
                    min_s[v] = min_s[v].min(min_s[ch]);
                    max_s[v] = max_s[v].max(max_s[ch]);
                    has_s[v] = true;
                }
                if has_t[ch] {
                    max_t[v] = max_t[v].max(max_t[ch]);
                    has_t[v] = true;
                }
            }
            let d = g.depth(v);
            if d > 0 && has_s[v] && has_t[v] {
                let id = v as u64;
                a.push((max_s[v] as i64, max_t[v] as i64, d as i64, id));
                b.push(((min_s[v] + d) as i64, max_t[v] as i64, d as i64, id));
                c.push(((min_s[v] + d) as i64, max_t[v] as i64, -(min_s[v] as i64), id));
            }
        }
        Grids {
            suf_suf: PointGridRmq::new(&a),
            pre_full: PointGridRmq::new(&b),
            pre_part: PointGridRmq::new(&c),
            min_s,
            max_s,
            max_t,
        }
    }

    /// LCS of `S[i..]` and `T[j..]`.
    fn suf_suf(&self, g: &Gst, i: usize, j: usize) -> LcsAnswer {
        match self.suf_suf.query((i as i64, i64::MAX), (j as i64, i64::MAX)) {
            Some(pt) => {
                let v = pt.payload as usize;
                LcsAnswer {
                    len: g.depth(v),
                    pos_s: self.max_s[v],
                    pos_t: self.max_t[v],
                }
            }
            None => LcsAnswer::default(),
        }
    }

    /// LCS of `S[..a]` and `T[b..]`.
    fn pre_suf(&self, g: &Gst, a: usize, b: usize) -> LcsAnswer {
        let mut best = LcsAnswer::default();
        if let Some(pt) = self.pre_full.query((i64::MIN, a as i64), (b as i64, i64::MAX)) {
            let v = pt.payload as usize;
            best = LcsAnswer {
                len: g.depth(v),
                pos_s: self.min_s[v],
                pos_t: self.max_t[v],
            };
        }
        if let Some(pt) = self.pre_part.query((a as i64, i64::MAX), (b as i64, i64::MAX)) {
            let v = pt.payload as usize;
            let p = self.min_s[v];
            if p < a && a - p > best.len {
                best = LcsAnswer {
                    len: a - p,
                    pos_s: p,
                    pos_t: self.max_t[v],
                };
            }
        }
        best
    }
}

/// Prefix-suffix, border and period queries over substrings of an indexed text.
#[derive(Debug, Clone)]
pub struct PrefixSuffixIndex {
    occ: PositionTree,
}

impl PrefixSuffixIndex {
    pub fn new(g: &Gst) -> Self {
        PrefixSuffixIndex {
            occ: PositionTree::new(&g.idx.sa),
        }
    }

    /// Largest `l` in `[d, hi]` (`hi < 2d`) with `Y[..l]` a suffix of `Z`.
    fn band_largest(&self, g: &Gst, y: Piece, z: Piece, d: usize, hi: usize) -> Option<usize> {
        let hi = hi.min(y.len).min(z.len);
        if d == 0 || d > hi {
            return None;
        }
        debug_assert!(hi < 2 * d);
        let zend = z.pos + z.len;
        let (ws, we) = (zend - hi, zend - d);
        let r = g.sa_range(g.locus_at(y.pos, d));
        let valid = |s: usize| g.lce_raw(y.pos, s).min(zend - s) >= zend - s;
        let s0 = self.occ.succ(r.lo, r.hi, ws).filter(|&s| s <= we)?;
        if valid(s0) {
            return Some(zend - s0);
        }
        let s1 = self.occ.succ(r.lo, r.hi, s0 + 1).filter(|&s| s <= we)?;
        let p = s1 - s0;
        // Z is p-periodic from s0 up to e, Y up to ye
        let e = (s0 + p + g.lce_raw(s0, s0 + p)).min(zend);
        let ye = (p + g.lce_raw(y.pos, y.pos + p)).min(y.len);
        let cand = if e >= zend {
            let lo = (s0 + p).max(zend.saturating_sub(ye));
            s0 + (lo - s0).div_ceil(p) * p
        } else {
            let s = e.checked_sub(ye)?;
            if s < s0 + p || (s - s0) % p != 0 {
                return None;
            }
            s
        };
        (cand <= we && valid(cand)).then(|| zend - cand)
    }

    /// Largest `l` in `[lo, hi]` with `Y[..l]` a suffix of `Z`.
    pub fn largest_prefix_suffix(&self, g: &Gst, y: Piece, z: Piece, lo: usize, hi: usize) -> Option<usize> {
        let hi = hi.min(y.len).min(z.len);
        let lo = lo.max(1);
        if lo > hi {
            return None;
        }
        let mut top = hi;
        loop {
            let d = (top / 2 + 1).max(lo);
            if let Some(l) = self.band_largest(g, y, z, d, top) {
                return Some(l);
            }
            if d == lo {
                return None;
            }
            top = d - 1;
        }
    }

    /// Lengths in `[d, 2d)` of prefixes of `Y` that are suffixes of `Z`.
    pub fn prefix_suffix_query(&self, g: &Gst, y: Piece, z: Piece, d: usize) -> ArithmeticProgression {
        self.prefix_suffix_band(g, y, z, d, 2 * d - 1)
    }

    fn prefix_suffix_band(&self, g: &Gst, y: Piece, z: Piece, d: usize, hi: usize) -> ArithmeticProgression {
        if d == 0 {
            return ArithmeticProgression::default();
        }
        let Some(l1) = self.band_largest(g, y, z, d, hi) else {
            return ArithmeticProgression::default();
        };
        // the others are the borders of Y[..l1] longer than d, i.e. l1 - k*per
        let per = self.shortest_period(g, Piece { pos: y.pos, len: l1 }).expect("nonempty");
        let count = (l1 - d) / per + 1;
        ArithmeticProgression {
            first: l1 - (count - 1) * per,
            diff: if count > 1 { per } else { 0 },
            count,
        }
    }

    /// Border lengths of `u` in `[2^r, 2^(r+1))` for `r = 0..=floor(log2 |u|)`.
    pub fn borders_progressions(&self, g: &Gst, u: Piece) -> Vec<ArithmeticProgression> {
        if u.len == 0 {
            return Vec::new();
        }
        (0..=u.len.ilog2())
            .map(|r| {
                let d = 1usize << r;
                self.prefix_suffix_band(g, u, u, d, (2 * d - 1).min(u.len - 1))
            })
            .collect()
    }

    pub fn shortest_period(&self, g: &Gst, u: Piece) -> Result<usize> {
        if u.len == 0 {
            return Err(Error::EmptyInput);
        }
        Ok(u.len - self.largest_prefix_suffix(g, u, u, 1, u.len - 1).unwrap_or(0))
    }

}

/// Internal-query index over a static pair `(S, T)`.
#[derive(Debug, Clone)]
pub struct InternalIndex {
    /// index of `S #0 T #1`
    pub gst: Gst,
    /// index of `S^R #0 T^R #1`
    pub gst_rev: Gst,
    grids: Grids,
    grids_rev: Grids,
    /// `ms[k]`: longest prefix of `S[k..]` occurring in `T`, and where
    ms: Vec<(usize, usize)>,
    ms_max: SparseMax,
    pub periods: PrefixSuffixIndex,
}

impl InternalIndex {
    pub fn new(s: &[Sym], t: &[Sym]) -> Result<Self> {
        let gst = Gst::new(&[s, t])?;
        let rs: Vec<Sym> = s.iter().rev().copied().collect();
        let rt: Vec<Sym> = t.iter().rev().copied().collect();
        let gst_rev = Gst::new(&[&rs, &rt])?;
        let grids = Grids::new(&gst);
        let grids_rev = Grids::new(&gst_rev);
        let t_start = gst.text.starts[1];
        let ranks = gst.comp_ranks(1);
        let ms: Vec<(usize, usize)> = (0..s.len())
            .map(|k| {
                let r = gst.idx.isa[k];
                let i = ranks.partition_point(|&x| x < r);
                let mut best = (0, 0);
                for q in [i.checked_sub(1), Some(i)].into_iter().flatten() {
                    if let Some(&rq) = ranks.get(q) {
                        let p = gst.idx.sa[rq as usize] as usize;
                        let l = gst.lce_raw(k, p);
                        if l > best.0 {
                            best = (l, p - t_start);
                        }
                    }
                }
                best
            })
            .collect();
        let ms_max = SparseMax::new(ms.iter().map(|&(l, _)| l as i64).collect());
        let periods = PrefixSuffixIndex::new(&gst);
        Ok(InternalIndex {
            gst,
            gst_rev,
            grids,
            grids_rev,
            ms,
            ms_max,
            periods,
        })
    }

    pub fn s_len(&self) -> usize {
        self.gst.text.lens[0]
    }

    pub fn t_len(&self) -> usize {
        self.gst.text.lens[1]
    }

    /// Position of `T[j]` in the indexed text.
    pub fn t_pos(&self, j: usize) -> usize {
        self.gst.text.starts[1] + j
    }

    /// LCS of a prefix or suffix of `S` with a prefix or suffix of `T`.
    pub fn lcs_prefsuf(&self, s: Cut, t: Cut) -> Result<LcsAnswer> {
        let (ls, lt) = (self.s_len(), self.t_len());
        let (Cut::Prefix(i) | Cut::Suffix(i)) = s;
        let (Cut::Prefix(j) | Cut::Suffix(j)) = t;
        if i > ls {
            return Err(Error::OutOfRange { pos: i, len: ls });
        }
        if j > lt {
            return Err(Error::OutOfRange { pos: j, len: lt });
        }
        let unrev = |a: LcsAnswer| LcsAnswer {
            len: a.len,
            pos_s: if a.len == 0 { 0 } else { ls - a.pos_s - a.len },
            pos_t: if a.len == 0 { 0 } else { lt - a.pos_t - a.len },
        };
        Ok(match (s, t) {
            (Cut::Suffix(i), Cut::Suffix(j)) => self.grids.suf_suf(&self.gst, i, j),
            (Cut::Prefix(a), Cut::Suffix(b)) => self.grids.pre_suf(&self.gst, a, b),
            (Cut::Suffix(i), Cut::Prefix(j)) => unrev(self.grids_rev.pre_suf(&self.gst_rev, ls - i, lt - j)),
            (Cut::Prefix(a), Cut::Prefix(b)) => unrev(self.grids_rev.suf_suf(&self.gst_rev, ls - a, lt - b)),
        })
    }

    /// LCS of `S[a..=b]` and `T`.
    pub fn lcs_substring_vs_t(&self, a: usize, b: usize) -> Result<LcsAnswer> {
        if a > b {
            return Err(Error::InvalidInterval { lo: a as i64, hi: b as i64 });
        }
        if b >= self.s_len() {
            return Err(Error::OutOfRange { pos: b, len: self.s_len() });
        }
        // ms[k] + k is non-decreasing: find the first k whose match reaches past b
        let (mut k0, mut hi) = (a, b + 1);
        while k0 < hi {
            let m = (k0 + hi) / 2;
            if self.ms[m].0 + m > b {
                hi = m;
            } else {
                k0 = m + 1;
            }
        }
        let mut best = LcsAnswer::default();
        if k0 <= b {
            best = LcsAnswer {
                len: b - k0 + 1,
                pos_s: k0,
                pos_t: self.ms[k0].1,
            };
        }
        if k0 > a {
            let k = self.ms_max.argmax(a, k0 - 1);
            let (l, q) = self.ms[k];
            if l > best.len {
                best = LcsAnswer { len: l, pos_s: k, pos_t: q };
            }
        }
        Ok(best)
    }

    pub fn largest_prefix_suffix(&self, y: Piece, z: Piece, lo: usize, hi: usize) -> Option<usize> {
        self.periods.largest_prefix_suffix(&self.gst, y, z, lo, hi)
    }

    /// Lengths in `[d, 2d)` of prefixes of `Y` that are suffixes of `Z`.
    pub fn prefix_suffix_query(&self, y: Piece, z: Piece, d: usize) -> ArithmeticProgression {
        self.periods.prefix_suffix_query(&self.gst, y, z, d)
    }

    /// Border lengths of `u` in `[2^r, 2^(r+1))` for `r = 0..=floor(log2 |u|)`.
    pub fn borders_progressions(&self, u: Piece) -> Vec<ArithmeticProgression> {
        self.periods.borders_progressions(&self.gst, u)
    }

    pub fn shortest_period(&self, u: Piece) -> Result<usize> {
        self.periods.shortest_period(&self.gst, u)
    }

    /// [`lcp_power_prefix`] over substrings of the indexed text.
    pub fn lcp_power_prefix(&self, p: Piece, x: Piece, y: Piece) -> Result<PiecewiseLinearLcp> {
        let s = |q: Piece| Sub { at: q.pos, len: q.len };
        lcp_power_prefix(&self.gst, s(p), s(x), s(y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_index::encode;
    use crate::oracle;
    use proptest::prelude::*;

    fn index(s: &[u8], t: &[u8]) -> InternalIndex {
        InternalIndex::new(&encode(s), &encode(t)).unwrap()
    }

    fn check_answer(s: &[u8], t: &[u8], a: LcsAnswer) {
        assert_eq!(&s[a.pos_s..a.pos_s + a.len], &t[a.pos_t..a.pos_t + a.len]);
    }

    #[test]
    fn progression_trimming() {
        for first in 0..6 {
            for diff in 0..4 {
                for count in 0..5 {
                    let ap = ArithmeticProgression { first, diff, count };
                    let all: Vec<usize> = ap.iter().collect();
                    for x in 0..20 {
                        let want: Vec<usize> = all.iter().copied().filter(|&v| v >= x).collect();
                        assert_eq!(ap.at_least(x).iter().collect::<Vec<_>>(), want);
                        let [a, b] = ap.without(x);
                        let got: Vec<usize> = a.iter().chain(b.iter()).collect();
                        let want: Vec<usize> = all.iter().copied().filter(|&v| v != x).collect();
                        assert_eq!(got, want);
                    }
                }
            }
        }
    }

    #[test]
    fn prefsuf_examples() {
        let ix = index(b"caabaaa", b"aaaaaab");
        assert_eq!(ix.lcs_prefsuf(Cut::Prefix(7), Cut::Prefix(7)).unwrap().len, 3);
        assert_eq!(ix.lcs_prefsuf(Cut::Suffix(0), Cut::Suffix(0)).unwrap().len, 3);
        assert_eq!(ix.lcs_prefsuf(Cut::Prefix(0), Cut::Suffix(0)).unwrap().len, 0);
        assert!(ix.lcs_prefsuf(Cut::Prefix(8), Cut::Suffix(0)).is_err());
    }

    #[test]
    fn substring_vs_t_examples() {
        let ix = index(b"caabaaa", b"aaaaaab");
        assert_eq!(ix.lcs_substring_vs_t(0, 6).unwrap().len, 3);
        assert_eq!(ix.lcs_substring_vs_t(4, 6).unwrap().len, 3);
        assert_eq!(ix.lcs_substring_vs_t(3, 3).unwrap().len, 1);
        assert!(ix.lcs_substring_vs_t(3, 2).is_err());
    }

    #[test]
    fn prefix_suffix_examples() {
        let ix = index(b"aaaa", b"abaab");
        let u = Piece { pos: 0, len: 4 };
        assert_eq!(ix.prefix_suffix_query(u, u, 2), ArithmeticProgression { first: 2, diff: 1, count: 2 });
        assert!(ix.prefix_suffix_query(u, Piece { pos: 0, len: 1 }, 2).is_empty());
        let bp = ix.borders_progressions(u);
        assert_eq!(bp[0], ArithmeticProgression::single(1));
        assert_eq!(bp[1], ArithmeticProgression { first: 2, diff: 1, count: 2 });
        let ix = index(b"aabaa", b"ab");
        let bp = ix.borders_progressions(Piece { pos: 0, len: 5 });
        assert_eq!(bp.len(), 3);
        assert_eq!(bp[0].iter().collect::<Vec<_>>(), vec![1]);
        assert_eq!(bp[1].iter().collect::<Vec<_>>(), vec![2]);
        assert!(bp[2].is_empty());
        let bp = ix.borders_progressions(Piece { pos: 6, len: 2 });
        assert!(bp.iter().all(|a| a.is_empty()));
    }

    #[test]
    fn period_examples() {
        let ix = index(b"aaaa", b"aabaab");
        assert_eq!(ix.shortest_period(Piece { pos: 0, len: 4 }).unwrap(), 1);
        assert_eq!(ix.shortest_period(Piece { pos: 5, len: 6 }).unwrap(), 3);
        assert_eq!(ix.shortest_period(Piece { pos: 6, len: 2 }).unwrap(), 2);
        assert!(ix.shortest_period(Piece { pos: 0, len: 0 }).is_err());
    }

    #[test]
    fn lcp_power_examples() {
        // P = "ab", X = "aa", Y = "abababaa"
        let ix = index(b"abaaabababaa", b"");
        let f = ix
            .lcp_power_prefix(Piece { pos: 0, len: 2 }, Piece { pos: 2, len: 2 }, Piece { pos: 4, len: 8 })
            .unwrap();
        let got: Vec<usize> = (0..6).map(|w| f.eval(w)).collect();
        assert_eq!(got, vec![1, 3, 5, 8, 7, 7]);
        assert_eq!(f.max_in(0, 10), Some((8, 3)));
        let f = ix
            .lcp_power_prefix(Piece { pos: 0, len: 2 }, Piece { pos: 2, len: 2 }, Piece { pos: 4, len: 0 })
            .unwrap();
        assert!((0..10).all(|w| f.eval(w) == 0));
        assert!(ix
            .lcp_power_prefix(Piece { pos: 0, len: 0 }, Piece { pos: 2, len: 2 }, Piece { pos: 4, len: 1 })
            .is_err());
    }

    fn ab(max: usize) -> impl Strategy<Value = Vec<u8>> {
        proptest::collection::vec(prop_oneof![Just(b'a'), Just(b'b')], 1..max)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn prefsuf_matches_naive(s in ab(40), t in ab(40), cuts in proptest::collection::vec((0usize..50, 0usize..50, 0u8..4), 20)) {
            let ix = index(&s, &t);
            for (i, j, kind) in cuts {
                let (i, j) = (i % (s.len() + 1), j % (t.len() + 1));
                let (cs, ss) = if kind & 1 == 0 { (Cut::Prefix(i), &s[..i]) } else { (Cut::Suffix(i), &s[i..]) };
                let (ct, tt) = if kind & 2 == 0 { (Cut::Prefix(j), &t[..j]) } else { (Cut::Suffix(j), &t[j..]) };
                let got = ix.lcs_prefsuf(cs, ct).unwrap();
                prop_assert_eq!(got.len, oracle::naive_lcs(ss, tt).unwrap().0);
                check_answer(&s, &t, got);
                if got.len > 0 {
                    let (okl, okr) = match cs { Cut::Prefix(i) => (got.pos_s + got.len <= i, true), Cut::Suffix(i) => (got.pos_s >= i, true) };
                    prop_assert!(okl && okr);
                    match ct { Cut::Prefix(j) => prop_assert!(got.pos_t + got.len <= j), Cut::Suffix(j) => prop_assert!(got.pos_t >= j) }
                }
            }
        }

        #[test]
        fn substring_vs_t_matches_naive(s in ab(40), t in ab(30), q in proptest::collection::vec((0usize..50, 0usize..50), 20)) {
            let ix = index(&s, &t);
            for (a, b) in q {
                let a = a % s.len();
                let b = a + b % (s.len() - a);
                let got = ix.lcs_substring_vs_t(a, b).unwrap();
                prop_assert_eq!(got.len, oracle::naive_lcs(&s[a..=b], &t).unwrap().0);
                check_answer(&s, &t, got);
                prop_assert!(got.len == 0 || (a <= got.pos_s && got.pos_s + got.len <= b + 1));
            }
        }

        #[test]
        fn borders_match_naive(u in proptest::collection::vec(prop_oneof![Just(b'a'), Just(b'b')], 1..300), cut in 0usize..300) {
            let ix = index(&u, b"ab");
            let len = 1 + cut % u.len();
            let piece = Piece { pos: 0, len };
            let bp = ix.borders_progressions(piece);
            let mut flat: Vec<usize> = bp.iter().flat_map(|a| a.iter().collect::<Vec<_>>()).collect();
            flat.sort_unstable();
            prop_assert_eq!(&flat, &oracle::naive_borders(&u[..len]).unwrap());
            for a in &bp {
                if a.count >= 3 {
                    let per = ix.shortest_period(Piece { pos: 0, len: a.first }).unwrap();
                    prop_assert_eq!(a.diff, per);
                }
            }
            prop_assert_eq!(ix.shortest_period(piece).unwrap(), oracle::naive_period(&u[..len]).unwrap());
        }

        #[test]
        fn prefix_suffix_matches_naive(y in ab(30), z in ab(30), d in 1usize..20) {
            let mut s = y.clone();
            s.extend_from_slice(&z);
            let ix = index(&s, b"a");
            let got = ix.prefix_suffix_query(Piece { pos: 0, len: y.len() }, Piece { pos: y.len(), len: z.len() }, d);
            let want = oracle::naive_prefix_suffix(&y, &z, d, 2 * d - 1).unwrap();
            prop_assert_eq!(got.iter().collect::<Vec<_>>(), want);
        }

        #[test]
        fn lcp_power_matches_naive(s in ab(40), pp in (0usize..40, 1usize..6), xx in (0usize..40, 0usize..10), yy in (0usize..40, 0usize..30)) {
            let ix = index(&s, b"b");
            let n = s.len();
            let cut = |(a, l): (usize, usize), min: usize| { let a = a % n; let l = (l.max(min)).min(n - a); (a, l) };
            let (p0, pl) = cut(pp, 1);
            let (x0, xl) = cut(xx, 0);
            let (y0, yl) = cut(yy, 0);
            let f = ix.lcp_power_prefix(Piece { pos: p0, len: pl }, Piece { pos: x0, len: xl }, Piece { pos: y0, len: yl }).unwrap();
            let limit = 4 * (yl / pl + 2);
            let mut best = (0, 0);
            for w in 0..=limit {
                let want = oracle::naive_lcp_power(&s[p0..p0 + pl], &s[x0..x0 + xl], &s[y0..y0 + yl], w);
                prop_assert_eq!(f.eval(w), want, "w = {}", w);
                if want > best.0 { best = (want, w); }
            }
            prop_assert_eq!(f.max_in(0, limit).unwrap().0, best.0);
        }
    }
}
