//! Heaviest induced ancestors over the suffix trees of `T^R` and `T`, with the
//! window-restricted variant, and the Three Substrings LCS query built on them.
//!
//! Leaf `c` (for `c` in `0..=|T|`) stands for the split of `T` into the prefix
//! `T[..c]` (a leaf of the tree of `T^R`) and the suffix `T[c..]` (a leaf of the
//! tree of `T`). A node pair is induced by `c` when both nodes are ancestors of
//! leaf `c`.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::core_index::{Gst, NodeHandle, PathFragment, Piece, ROOT};
use crate::error::{Error, Result};
use crate::internal_queries::{lcp_power_prefix, ArithmeticProgression, LceOracle, PrefixSuffixIndex, Sub};
use crate::range_structures::{MultiDimRmq, Span, WeightedPoint};
use crate::Sym;

/// Which query node, if any, must be its own answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixed {
    Neither,
    First,
    Second,
}

/// A heaviest induced pair: `u1` in the tree of `T^R`, `u2` in the tree of `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HiaAnswer {
    pub u1: NodeHandle,
    pub u2: NodeHandle,
    /// the inducing split `c`
    pub leaf: usize,
}

impl HiaAnswer {
    pub fn d1(&self) -> usize {
        self.u1.depth
    }

    pub fn d2(&self) -> usize {
        self.u2.depth
    }

    pub fn total(&self) -> usize {
        self.u1.depth + self.u2.depth
    }
}

/// Answer to a Three Substrings LCS query: `XY` of length `len` starts at
/// `start` in `T`, and `|X| = x_len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ThreeAnswer {
    pub len: usize,
    pub x_len: usize,
    pub start: usize,
}

// the four point collections, by which of u1, u2 is the bottom of its fragment
const BOTH_INSIDE: usize = 0;
const FIRST_BOTTOM: usize = 1;
const SECOND_BOTTOM: usize = 2;
const BOTH_BOTTOM: usize = 3;


/// Static HIA structure over `T`.
/// Groups up to this size are scanned instead of indexed.
const SCAN_GROUP: usize = 64;

/// Coordinates, weight and payload of a group point in collection `kind`.
fn mapped(kind: usize, [d1, d2, c]: [u32; 3]) -> ([i64; 4], i64, u64) {
    let (d1, d2, c) = (d1 as i64, d2 as i64, c as i64);
    let (x3, x4, weight) = match kind {
        BOTH_INSIDE => (c - d1, c + d2, d1 + d2),
        FIRST_BOTTOM => (c, c + d2, d2),
        SECOND_BOTTOM => (c - d1, c, d1),
        _ => (c, c, 0),
    };
    ([d1, d2, x3, x4], weight, ((d1 as u64) << 32) | c as u64)
}

#[derive(Debug)]
pub struct HiaPair {
    /// suffix tree of `T^R`
    pub t1: Gst,
    /// suffix tree of `T`
    pub t2: Gst,
    n: usize,
    periods: PrefixSuffixIndex,
    groups: HashMap<(u32, u32), usize>,
    /// `(d1, d2, c)` of every group, stored group after group
    points: Vec<[u32; 3]>,
    /// group `g` owns `points[starts[g]..starts[g + 1]]`
    starts: Vec<u32>,
    /// built on first use, four per group
    rmq: Vec<OnceLock<Box<MultiDimRmq>>>,
    min_depth: (usize, usize),
}

fn fragments(t: &Gst, v: usize) -> Vec<PathFragment> {
    if v == ROOT {
        let path = t.path_of(ROOT);
        return vec![PathFragment { path, top: ROOT, bottom: ROOT }];
    }
    t.heavy_decomp_to_root(v)
}

/// Deepest ancestor of `h` (itself included) with depth at most `d`.
fn ancestor_at_most(t: &Gst, h: NodeHandle, d: usize) -> NodeHandle {
    if d >= h.depth {
        return h;
    }
    let mut v = t.parent(h.node).expect("depth above zero");
    loop {
        if t.depth(v) <= d {
            return NodeHandle { node: v, depth: t.depth(v) };
        }
        let pid = t.path_of(v);
        let top = t.path_top(pid);
        if t.depth(top) <= d {
            let nodes = t.path_nodes(pid);
            let k = nodes.partition_point(|&u| t.depth(u as usize) <= d);
            let u = nodes[k - 1] as usize;
            return NodeHandle { node: u, depth: t.depth(u) };
        }
        v = t.parent(top).expect("root has depth zero");
    }
}

/// Larger total wins, then smaller `d1`, then smaller split.
fn better(x: &HiaAnswer, y: &HiaAnswer) -> bool {
    (x.total(), y.d1(), y.leaf) > (y.total(), x.d1(), x.leaf)
}

fn node_at_depth(t: &Gst, path: usize, d: usize) -> usize {
    let nodes = t.path_nodes(path);
    let k = nodes.partition_point(|&u| t.depth(u as usize) < d);
    debug_assert_eq!(t.depth(nodes[k] as usize), d);
    nodes[k] as usize
}

impl HiaPair {
    pub fn new(t: &[Sym]) -> Result<Self> {
        Self::with_min_depth(t, (0, 0))
    }

    /// Only pairs with `d1 >= min.0` and `d2 >= min.1` are reported.
    pub fn with_min_depth(t: &[Sym], min_depth: (usize, usize)) -> Result<Self> {
        let rt: Vec<Sym> = t.iter().rev().copied().collect();
        let t1 = Gst::new(&[&rt])?;
        let t2 = Gst::new(&[t])?;
        let n = t.len();
        let mut groups: HashMap<(u32, u32), usize> = HashMap::new();
        let mut tagged: Vec<(u32, [u32; 3])> = Vec::new();
        for c in 0..=n {
            let f1 = t1.heavy_decomp_to_root(t1.leaf(n - c));
            let f2 = t2.heavy_decomp_to_root(t2.leaf(c));
            for a in &f1 {
                for b in &f2 {
                    let key = (a.path as u32, b.path as u32);
                    let next = groups.len();
                    let g = *groups.entry(key).or_insert(next);
                    tagged.push((g as u32, [t1.depth(a.bottom) as u32, t2.depth(b.bottom) as u32, c as u32]));
                }
            }
        }
        // counting sort by group, keeping the order of `c` inside each group
        let mut starts = vec![0u32; groups.len() + 1];
        for &(g, _) in &tagged {
            starts[g as usize + 1] += 1;
        }
        for g in 0..groups.len() {
            starts[g + 1] += starts[g];
        }
        let mut fill = starts.clone();
        let mut points = vec![[0u32; 3]; tagged.len()];
        for (g, p) in tagged {
            points[fill[g as usize] as usize] = p;
            fill[g as usize] += 1;
        }
        let rmq = (0..4 * groups.len()).map(|_| OnceLock::new()).collect();
        let periods = PrefixSuffixIndex::new(&t2);
        Ok(HiaPair {
            t1,
            t2,
            n,
            periods,
            groups,
            points,
            starts,
            rmq,
            min_depth,
        })
    }

    pub fn text_len(&self) -> usize {
        self.n
    }

    /// Total number of stored points per collection.
    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    fn group(&self, g: usize) -> &[[u32; 3]] {
        &self.points[self.starts[g] as usize..self.starts[g + 1] as usize]
    }

    /// Heaviest point of group `g` in the box, as `(d1, d2, c)`. Small groups
    /// are scanned; larger ones get a range structure on first use.
    fn best_in_group(&self, g: usize, kind: usize, bx: &[Span; 4]) -> Option<[u32; 3]> {
        let pts = self.group(g);
        if pts.len() <= SCAN_GROUP {
            let mut best: Option<(i64, u64, [u32; 3])> = None;
            for &p in pts {
                let (coords, weight, payload) = mapped(kind, p);
                if coords.iter().zip(bx).all(|(&c, &(lo, hi))| lo <= c && c <= hi)
                    && best.is_none_or(|(w, pl, _)| weight > w || (weight == w && payload < pl))
                {
                    best = Some((weight, payload, p));
                }
            }
            return best.map(|b| b.2);
        }
        let rmq = self.rmq[4 * g + kind].get_or_init(|| {
            let wp = pts
                .iter()
                .map(|&p| {
                    let (coords, weight, payload) = mapped(kind, p);
                    WeightedPoint { coords: coords.to_vec(), weight, payload }
                })
                .collect();
            Box::new(MultiDimRmq::new(4, wp).expect("four coordinates"))
        });
        rmq.query_index(bx).map(|i| pts[i])
    }

    fn check_handle(t: &Gst, h: NodeHandle) -> Result<()> {
        if h.node >= t.node_count() {
            return Err(Error::OutOfRange { pos: h.node, len: t.node_count() });
        }
        let lo = t.parent(h.node).map_or(0, |p| t.depth(p) + 1);
        if h.node == ROOT && h.depth == 0 || (lo <= h.depth && h.depth <= t.depth(h.node)) {
            Ok(())
        } else {
            Err(Error::BadParameter(format!("depth {} not on the edge into node {}", h.depth, h.node)))
        }
    }

    /// Heaviest induced pair of ancestors of `v1` and `v2`.
    pub fn hia_query(&self, v1: NodeHandle, v2: NodeHandle, fixed: Fixed) -> Result<Option<HiaAnswer>> {
        Self::check_handle(&self.t1, v1)?;
        Self::check_handle(&self.t2, v2)?;
        Ok(self.run(v1, v2, 0, self.n, fixed))
    }

    /// Heaviest induced pair whose occurrence `L(u1)^R L(u2)` fits in `T[a..=b]`.
    ///
    /// The query nodes may be implicit; an implicit node then counts as an
    /// ancestor of itself with its own depth.
    pub fn extended_hia_query(
        &self,
        v1: NodeHandle,
        v2: NodeHandle,
        a: usize,
        b: usize,
        fixed: Fixed,
    ) -> Result<Option<HiaAnswer>> {
        if a > b || b >= self.n {
            return Err(Error::InvalidInterval { lo: a as i64, hi: b as i64 });
        }
        Self::check_handle(&self.t1, v1)?;
        Self::check_handle(&self.t2, v2)?;
        let mut best = self.run(v1, v2, a, b + 1, fixed);
        if a > 0 || b + 1 < self.n {
            self.cut_by_window(v1, v2, a, b + 1, fixed, &mut best);
        }
        Ok(best)
    }

    /// Pairs where the deepest fitting ancestor on one side sits above the
    /// natural one because the window cuts the occurrence. The grids only see
    /// natural depths, so such a side touches the window end: `L(u1)^R` starts at
    /// `a` (or `L(u2)` ends at `end`), and the split ranges over the prefix-suffix
    /// lengths of `W` against the query label.
    fn cut_by_window(
        &self,
        v1: NodeHandle,
        v2: NodeHandle,
        a: usize,
        end: usize,
        fixed: Fixed,
        best: &mut Option<HiaAnswer>,
    ) {
        let n = self.n;
        let p1 = self.t1.label_pos(v1.node);
        let len1 = v1.depth.min(n - p1);
        let u = Piece { pos: n - p1 - len1, len: len1 };
        let q2 = self.t2.label_pos(v2.node);
        let len2 = v2.depth.min(n - q2);
        let v = Piece { pos: q2, len: len2 };
        let w = Piece { pos: a, len: end - a };
        let mut offer = |ans: HiaAnswer| {
            if best.as_ref().is_none_or(|b| better(&ans, b)) {
                *best = Some(ans);
            }
        };
        if fixed != Fixed::First {
            let bands = (0..).map(|r| 1usize << r).take_while(|&d| d <= w.len.min(u.len));
            let lens = bands.flat_map(|d| self.periods.prefix_suffix_query(&self.t2, w, u, d).iter());
            for l in std::iter::once(0).chain(lens) {
                {
                    let c = a + l;
                    let u1 = ancestor_at_most(&self.t1, v1, l);
                    let m2 = self.t2.lce_raw(q2, c).min(len2).min(end - c);
                    let u2 = match fixed {
                        Fixed::Second if m2 < v2.depth => continue,
                        Fixed::Second => v2,
                        _ => ancestor_at_most(&self.t2, v2, m2),
                    };
                    offer(HiaAnswer { u1, u2, leaf: c });
                }
            }
        }
        if fixed != Fixed::Second {
            let bands = (0..).map(|r| 1usize << r).take_while(|&d| d <= w.len.min(v.len));
            let lens = bands.flat_map(|d| self.periods.prefix_suffix_query(&self.t2, v, w, d).iter());
            for l in std::iter::once(0).chain(lens) {
                {
                    let c = end - l;
                    let u2 = ancestor_at_most(&self.t2, v2, l);
                    let m1 = self.t1.lce_raw(p1, n - c).min(len1).min(c - a);
                    let u1 = match fixed {
                        Fixed::First if m1 < v1.depth => continue,
                        Fixed::First => v1,
                        _ => ancestor_at_most(&self.t1, v1, m1),
                    };
                    offer(HiaAnswer { u1, u2, leaf: c });
                }
            }
        }
    }

    /// Window is `T[a..end)`.
    fn run(&self, v1: NodeHandle, v2: NodeHandle, a: usize, end: usize, fixed: Fixed) -> Option<HiaAnswer> {
        let (m1, m2) = self.min_depth;
        let f1 = fragments(&self.t1, v1.node);
        let f2 = fragments(&self.t2, v2.node);
        let from1 = if fixed == Fixed::First { f1.len() - 1 } else { 0 };
        let from2 = if fixed == Fixed::Second { f2.len() - 1 } else { 0 };
        let kinds: &[usize] = match fixed {
            Fixed::Neither => &[BOTH_INSIDE, FIRST_BOTTOM, SECOND_BOTTOM, BOTH_BOTTOM],
            Fixed::First => &[FIRST_BOTTOM, BOTH_BOTTOM],
            Fixed::Second => &[SECOND_BOTTOM, BOTH_BOTTOM],
        };
        let (a, end) = (a as i64, end as i64);
        let mut best: Option<HiaAnswer> = None;
        for (i1, p1) in f1.iter().enumerate().skip(from1) {
            let y1 = self.t1.depth(p1.bottom);
            let eff1 = if i1 + 1 == f1.len() { v1.depth } else { y1 };
            let x1 = self.t1.depth(p1.top);
            for (i2, p2) in f2.iter().enumerate().skip(from2) {
                let Some(&g) = self.groups.get(&(p1.path as u32, p2.path as u32)) else {
                    continue;
                };
                let y2 = self.t2.depth(p2.bottom);
                let eff2 = if i2 + 1 == f2.len() { v2.depth } else { y2 };
                let x2 = self.t2.depth(p2.top);
                for &kind in kinds {
                    let first_inside = kind == BOTH_INSIDE || kind == SECOND_BOTTOM;
                    let second_inside = kind == BOTH_INSIDE || kind == FIRST_BOTTOM;
                    if (!first_inside && eff1 < m1) || (!second_inside && eff2 < m2) {
                        continue;
                    }
                    let s1: Span = if first_inside {
                        (x1.max(m1) as i64, y1 as i64 - 1)
                    } else {
                        (y1 as i64, i64::MAX)
                    };
                    let s2: Span = if second_inside {
                        (x2.max(m2) as i64, y2 as i64 - 1)
                    } else {
                        (y2 as i64, i64::MAX)
                    };
                    let s3: Span = if first_inside { (a, i64::MAX) } else { (a + eff1 as i64, i64::MAX) };
                    let s4: Span = if second_inside {
                        (i64::MIN, end)
                    } else {
                        (i64::MIN, end - eff2 as i64)
                    };
                    if s1.0 > s1.1 || s2.0 > s2.1 {
                        continue;
                    }
                    let Some([d1, d2, c]) = self.best_in_group(g, kind, &[s1, s2, s3, s4]) else {
                        continue;
                    };
                    let (d1, d2, c) = (d1 as usize, d2 as usize, c as usize);
                    let u1 = if first_inside {
                        NodeHandle { node: node_at_depth(&self.t1, p1.path, d1), depth: d1 }
                    } else {
                        NodeHandle { node: p1.bottom, depth: eff1 }
                    };
                    let u2 = if second_inside {
                        NodeHandle { node: node_at_depth(&self.t2, p2.path, d2), depth: d2 }
                    } else {
                        NodeHandle { node: p2.bottom, depth: eff2 }
                    };
                    let ans = HiaAnswer { u1, u2, leaf: c };
                    if best.as_ref().is_none_or(|b| better(&ans, b)) {
                        best = Some(ans);
                    }
                }
            }
        }
        best
    }

    /// Longest `XY` with `X` a suffix of `U`, `Y` a prefix of `V` and `XY` a
    /// substring of `W`, where `U`, `V`, `W` are substrings of `T` given as
    /// `(start, len)` in `T`.
    pub fn three_substrings_lcs(&self, u: Piece, v: Piece, w: Piece) -> Result<ThreeAnswer> {
        let n = self.n;
        for p in [u, v, w] {
            if p.pos + p.len > n {
                return Err(Error::OutOfRange { pos: p.pos + p.len, len: n });
            }
        }
        if w.len == 0 {
            return Ok(ThreeAnswer { len: 0, x_len: 0, start: w.pos });
        }
        let h1 = self.t1.locus_at(n - u.pos - u.len, u.len);
        let h2 = self.t2.locus_at(v.pos, v.len);
        let end = w.pos + w.len;
        let mut best = ThreeAnswer { len: 0, x_len: 0, start: w.pos };
        if let Some(ans) = self.run(h1, h2, w.pos, end, Fixed::Neither) {
            best = ThreeAnswer {
                len: ans.total(),
                x_len: ans.d1(),
                start: ans.leaf - ans.d1(),
            };
        }
        if w.pos == 0 && w.len == n {
            return Ok(best);
        }
        for cut in [self.cut_at_start(u, v, w, 0), self.cut_at_end(u, v, w, 0)].into_iter().flatten() {
            if cut.len > best.len {
                best = cut;
            }
        }
        Ok(best)
    }
}

impl HiaPair {
    /// Lengths in `[d, 2d)` of prefixes of `y` that are suffixes of `z`.
    pub(crate) fn prefix_suffix_query(&self, y: Piece, z: Piece, d: usize) -> ArithmeticProgression {
        self.periods.prefix_suffix_query(&self.t2, y, z, d)
    }

    /// Best `XY` starting exactly at the start of `W`, with `X = W[..l]` a
    /// suffix of `U`, `Y` a prefix of `V` and `l >= min_x`.
    pub(crate) fn cut_at_start(&self, u: Piece, v: Piece, w: Piece, min_x: usize) -> Option<ThreeAnswer> {
        let n = self.n;
        let mut aps: Vec<ArithmeticProgression> = Vec::new();
        if min_x == 0 {
            aps.push(ArithmeticProgression::single(0));
        }
        aps.extend(bands(w.len.min(u.len)).map(|d| self.periods.prefix_suffix_query(&self.t2, w, u, d)));
        let y = Sub { at: v.pos, len: v.len };
        let mut best: Option<ThreeAnswer> = None;
        for ap in aps {
            let ap = ap.at_least(min_x);
            if let Some((val, l)) = best_in_progression(&self.t2, ap, w.pos, n, y) {
                let len = val.min(w.len);
                if best.is_none_or(|b| len > b.len) {
                    best = Some(ThreeAnswer { len, x_len: l, start: w.pos });
                }
            }
        }
        best
    }

    /// Best `XY` ending exactly at the end of `W`, with `Y = V[..l]` a suffix
    /// of `W`, `X` a suffix of `U` and `l >= min_y`.
    pub(crate) fn cut_at_end(&self, u: Piece, v: Piece, w: Piece, min_y: usize) -> Option<ThreeAnswer> {
        let n = self.n;
        let end = w.pos + w.len;
        let mut aps: Vec<ArithmeticProgression> = Vec::new();
        if min_y == 0 {
            aps.push(ArithmeticProgression::single(0));
        }
        aps.extend(bands(w.len.min(v.len)).map(|d| self.periods.prefix_suffix_query(&self.t2, v, w, d)));
        let y = Sub { at: n - u.pos - u.len, len: u.len };
        let mut best: Option<ThreeAnswer> = None;
        for ap in aps {
            let ap = ap.at_least(min_y);
            if let Some((val, l)) = best_in_progression(&self.t1, ap, n - end, n, y) {
                let len = val.min(w.len);
                if best.is_none_or(|b| len > b.len) {
                    best = Some(ThreeAnswer { len, x_len: len - l, start: end - len });
                }
            }
        }
        best
    }
}

fn bands(len: usize) -> impl Iterator<Item = usize> {
    (0..).map(|r| 1usize << r).take_while(move |&d| d <= len)
}

/// Maximum over `l` in `ap` of `l + lcp(Y, text[base + l..end))`, where
/// `text[base + first..base + last)` is periodic with period `ap.diff`.
/// Returns the value and the `l` attaining it.
pub fn best_in_progression<O: LceOracle<Loc = usize>>(
    o: &O,
    ap: ArithmeticProgression,
    base: usize,
    end: usize,
    y: Sub<usize>,
) -> Option<(usize, usize)> {
    let direct = |l: usize| l + o.lce(y.at, base + l).min(y.len).min(end - base - l);
    if ap.count == 0 {
        return None;
    }
    if ap.count <= 2 {
        return ap.iter().map(|l| (direct(l), l)).max();
    }
    let p = ap.diff;
    let k_max = ap.count - 1;
    let last = ap.first + k_max * p;
    let f = lcp_power_prefix(
        o,
        Sub { at: base + ap.first, len: p },
        Sub { at: base + last, len: end - base - last },
        y,
    )
    .expect("period is positive");
    // l_k = first + k p meets text = P^(K-k) X
    let mut ws = vec![0, k_max];
    if f.b >= f.a {
        let w = (f.b - f.a) / p;
        ws.extend([w.saturating_sub(1), w, w + 1]);
    }
    ws.into_iter()
        .filter(|&w| w <= k_max)
        .map(|w| {
            let l = ap.first + (k_max - w) * p;
            (l + f.eval(w), l)
        })
        .max()
}
