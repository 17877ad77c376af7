//! Longest Lyndon substring and Lyndon factorization of an edited string.
//!
//! The base string gets a Lyndon tree (over `$S` when `S` itself is not
//! Lyndon). The factorization of a suffix is the list of right uncles of a
//! leaf, and that of any substring is a run of right uncles followed by the
//! factorization of a trimmed node, which is a prefix of a Lyndon string and
//! therefore a power of its shortest period plus a shorter such prefix.
//! Uncles are read off heavy paths in runs, so a representation has
//! O(log n) parts however many factors it holds.
//!
//! For an edited string the factorizations of its fragments are merged left
//! to right; each merge keeps a prefix of the left factors and a suffix of the
//! right ones and puts a single new factor between them, located with
//! O(log) suffix comparisons.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::core_index::sa::suffix_array;
use crate::core_index::{Gst, Piece, SparseMax, SparseMin};
use crate::dynamic_lcs::{run, QueryProfile, Rebuild, SliceMode, StagedBuild, TimeSliced};
use crate::error::{Error, Result};
use crate::internal_queries::PrefixSuffixIndex;
use crate::ksub::{lce_ksub, BaseText, EditOp, Fragment, Hasher, KSubstring, Target, DEFAULT_SEED};
use crate::Sym;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Node {
    start: u32,
    len: u32,
    left: u32,
    right: u32,
    parent: u32,
}

#[derive(Debug, Clone)]
struct HeavyPath {
    /// top to bottom
    nodes: Vec<u32>,
    /// path indices of the nodes whose right child leaves the path, bottom-up
    uncle_idx: Vec<u32>,
    /// those right children
    uncles: Vec<u32>,
    uncle_len: SparseMax,
}

/// Lyndon tree of `S` (or of `$S`, `$` below every symbol, when `S` is not a
/// Lyndon string). Positions are in the tree string unless noted otherwise.
#[derive(Debug, Clone)]
pub struct LyndonTree {
    offset: usize,
    nodes: Vec<Node>,
    leaf: Vec<u32>,
    depth: Vec<u32>,
    heavy: Vec<u32>,
    path_of: Vec<u32>,
    idx_in_path: Vec<u32>,
    paths: Vec<HeavyPath>,
}

impl LyndonTree {
    pub fn new(s: &[Sym]) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::EmptyInput);
        }
        let sa = suffix_array(s);
        let offset = usize::from(sa[0] != 0);
        let n = s.len() + offset;
        // the sentinel suffix is the smallest; the rest keep their order
        let mut rank = vec![0u32; n];
        for (r, &p) in sa.iter().enumerate() {
            rank[p as usize + offset] = (r + offset) as u32;
        }
        let mins = SparseMin::new(rank);

        let mut nodes = vec![Node { start: 0, len: n as u32, left: NONE, right: NONE, parent: NONE }];
        let mut leaf = vec![NONE; n];
        let mut stack = vec![0u32];
        while let Some(v) = stack.pop() {
            let Node { start, len, .. } = nodes[v as usize];
            let (a, len) = (start as usize, len as usize);
            if len == 1 {
                leaf[a] = v;
                continue;
            }
            // right child: the smallest proper suffix
            let m = mins.argmin(a + 1, a + len - 1);
            let l = nodes.len() as u32;
            nodes.push(Node { start: a as u32, len: (m - a) as u32, left: NONE, right: NONE, parent: v });
            nodes.push(Node { start: m as u32, len: (a + len - m) as u32, left: NONE, right: NONE, parent: v });
            nodes[v as usize].left = l;
            nodes[v as usize].right = l + 1;
            stack.push(l);
            stack.push(l + 1);
        }

        // parents precede children in `nodes`
        let cnt = nodes.len();
        let mut depth = vec![0u32; cnt];
        let mut heavy = vec![NONE; cnt];
        for v in 0..cnt {
            let nd = nodes[v];
            if nd.parent != NONE {
                depth[v] = depth[nd.parent as usize] + 1;
            }
            if nd.left != NONE {
                let (l, r) = (nd.left as usize, nd.right as usize);
                heavy[v] = if nodes[r].len > nodes[l].len { nd.right } else { nd.left };
            }
        }
        let mut path_of = vec![NONE; cnt];
        let mut idx_in_path = vec![0u32; cnt];
        let mut paths = Vec::new();
        for v in 0..cnt {
            let p = nodes[v].parent;
            if p != NONE && heavy[p as usize] == v as u32 {
                continue;
            }
            let pid = paths.len() as u32;
            let mut path_nodes = Vec::new();
            let mut cur = v as u32;
            while cur != NONE {
                path_of[cur as usize] = pid;
                idx_in_path[cur as usize] = path_nodes.len() as u32;
                path_nodes.push(cur);
                cur = heavy[cur as usize];
            }
            let mut uncle_idx = Vec::new();
            let mut uncles = Vec::new();
            for (i, &x) in path_nodes.iter().enumerate().rev() {
                let nd = nodes[x as usize];
                if nd.left != NONE && heavy[x as usize] == nd.left {
                    uncle_idx.push(i as u32);
                    uncles.push(nd.right);
                }
            }
            let uncle_len = SparseMax::new(uncles.iter().map(|&u| nodes[u as usize].len as i64).collect());
            paths.push(HeavyPath { nodes: path_nodes, uncle_idx, uncles, uncle_len });
        }
        Ok(LyndonTree { offset, nodes, leaf, depth, heavy, path_of, idx_in_path, paths })
    }

    /// 1 when a sentinel was prepended, else 0.
    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// `(start, len)` of a node's label in the tree string.
    pub fn interval(&self, v: usize) -> (usize, usize) {
        let nd = self.nodes[v];
        (nd.start as usize, nd.len as usize)
    }

    /// `(left, right)` children of an internal node.
    pub fn children(&self, v: usize) -> Option<(usize, usize)> {
        let nd = self.nodes[v];
        (nd.left != NONE).then_some((nd.left as usize, nd.right as usize))
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        let p = self.nodes[v].parent;
        (p != NONE).then_some(p as usize)
    }

    /// Leaf of tree position `p`.
    pub fn leaf(&self, p: usize) -> usize {
        self.leaf[p] as usize
    }

    /// Length of the right child when it is off the node's heavy path.
    pub fn rc(&self, v: usize) -> Option<usize> {
        let nd = self.nodes[v];
        (nd.left != NONE && self.heavy[v] == nd.left).then_some(self.nodes[nd.right as usize].len as usize)
    }

    pub fn lca(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a as u32, b as u32);
        loop {
            let (pa, pb) = (self.path_of[a as usize], self.path_of[b as usize]);
            if pa == pb {
                return if self.idx_in_path[a as usize] <= self.idx_in_path[b as usize] { a as usize } else { b as usize };
            }
            let ha = self.paths[pa as usize].nodes[0] as usize;
            let hb = self.paths[pb as usize].nodes[0] as usize;
            if self.depth[ha] >= self.depth[hb] {
                a = self.nodes[ha].parent;
            } else {
                b = self.nodes[hb].parent;
            }
        }
    }

    /// Right uncles of `v` from its parent up to `top` (an ancestor of `v`,
    /// inclusive), bottom-up, as O(log n) parts.
    fn uncle_parts(&self, v: usize, top: usize) -> Vec<Part> {
        let mut parts = Vec::new();
        let mut cur = v;
        while cur != top {
            let p = self.nodes[cur].parent as usize;
            if self.heavy[p] != cur as u32 {
                if self.nodes[p].left == cur as u32 {
                    parts.push(Part::Single(self.nodes[p].right));
                }
                cur = p;
                continue;
            }
            let pid = self.path_of[cur] as usize;
            let path = &self.paths[pid];
            let stop = if self.path_of[top] as usize == pid { self.idx_in_path[top] } else { 0 };
            let hi = self.idx_in_path[p];
            let from = path.uncle_idx.partition_point(|&i| i > hi);
            let to = path.uncle_idx.partition_point(|&i| i >= stop);
            if from < to {
                parts.push(Part::Run { path: pid as u32, from: from as u32, to: to as u32 });
            }
            cur = path.nodes[stop as usize] as usize;
        }
        parts
    }

    fn part_count(&self, p: Part) -> usize {
        match p {
            Part::Single(_) => 1,
            Part::Run { from, to, .. } => (to - from) as usize,
        }
    }

    fn part_longest(&self, p: Part) -> usize {
        match p {
            Part::Single(u) => self.nodes[u as usize].len as usize,
            Part::Run { path, from, to } => self.paths[path as usize].uncle_len.max(from as usize, to as usize - 1) as usize,
        }
    }

    /// Node of the `i`-th factor of a part (0-based).
    fn part_node(&self, p: Part, i: usize) -> usize {
        match p {
            Part::Single(u) => u as usize,
            Part::Run { path, from, .. } => self.paths[path as usize].uncles[from as usize + i] as usize,
        }
    }

    /// Index of a longest factor of a part.
    fn part_argmax(&self, p: Part) -> usize {
        match p {
            Part::Single(_) => 0,
            Part::Run { path, from, to } => self.paths[path as usize].uncle_len.argmax(from as usize, to as usize - 1) - from as usize,
        }
    }
}

/// A slice of the right-uncle list: one uncle, or a run of uncles on a heavy
/// path (`from..to` in that path's bottom-up uncle list).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Part {
    Single(u32),
    Run { path: u32, from: u32, to: u32 },
}

/// A factor: `len` symbols from `start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Factor {
    pub start: usize,
    pub len: usize,
}

#[derive(Debug, Clone)]
enum Body {
    /// copies of `[start, start + len)`, as many as the element's count
    Power { start: usize, len: usize },
    /// uncles of a tree, positions shifted by `shift`
    Uncles { tree: Arc<LyndonTree>, parts: Vec<Part>, shift: isize },
}

#[derive(Debug, Clone)]
struct Element {
    body: Body,
    count: usize,
    longest: usize,
}

impl Element {
    fn power(start: usize, len: usize, reps: usize) -> Self {
        Element { body: Body::Power { start, len }, count: reps, longest: if reps > 0 { len } else { 0 } }
    }

    fn uncles(tree: Arc<LyndonTree>, parts: Vec<Part>, shift: isize) -> Self {
        let count = parts.iter().map(|&p| tree.part_count(p)).sum();
        let longest = parts.iter().map(|&p| tree.part_longest(p)).max().unwrap_or(0);
        Element { body: Body::Uncles { tree, parts, shift }, count, longest }
    }

    fn factor(&self, mut i: usize) -> Factor {
        match &self.body {
            Body::Power { start, len, .. } => Factor { start: start + i * len, len: *len },
            Body::Uncles { tree, parts, shift } => {
                for &p in parts {
                    let c = tree.part_count(p);
                    if i < c {
                        let (a, l) = tree.interval(tree.part_node(p, i));
                        return Factor { start: (a as isize + shift) as usize, len: l };
                    }
                    i -= c;
                }
                unreachable!("factor index checked by the caller")
            }
        }
    }

    fn longest_index(&self) -> usize {
        match &self.body {
            Body::Power { .. } => 0,
            Body::Uncles { tree, parts, .. } => {
                let mut before = 0;
                for &p in parts {
                    if tree.part_longest(p) == self.longest {
                        return before + tree.part_argmax(p);
                    }
                    before += tree.part_count(p);
                }
                unreachable!("some part holds the maximum")
            }
        }
    }

    /// The factors in `from..to`.
    fn slice(&self, from: usize, to: usize) -> Element {
        match &self.body {
            Body::Power { start, len, .. } => Element::power(start + from * len, *len, to - from),
            Body::Uncles { tree, parts, shift } => {
                let mut out = Vec::new();
                let mut at = 0;
                for &p in parts {
                    let c = tree.part_count(p);
                    let (lo, hi) = (from.max(at), to.min(at + c));
                    if lo < hi {
                        out.push(match p {
                            Part::Single(_) => p,
                            Part::Run { path, from: f, .. } => Part::Run { path, from: f + (lo - at) as u32, to: f + (hi - at) as u32 },
                        });
                    }
                    at += c;
                }
                Element::uncles(tree.clone(), out, *shift)
            }
        }
    }

    fn shifted(mut self, d: isize) -> Self {
        match &mut self.body {
            Body::Power { start, .. } => *start = (*start as isize + d) as usize,
            Body::Uncles { shift, .. } => *shift += d,
        }
        self
    }
}

/// Representation of a Lyndon factorization: a sequence of powers and runs of
/// tree uncles, with factor counts and maxima kept per prefix of elements.
#[derive(Debug, Clone, Default)]
pub struct Lfr {
    elems: Vec<Element>,
    /// factors in elements `0..=e`
    ends: Vec<usize>,
    /// longest factor in elements `0..=e`
    best: Vec<usize>,
}

impl Lfr {
    /// A single factor.
    pub fn single(start: usize, len: usize) -> Self {
        let mut r = Lfr::default();
        r.push(Element::power(start, len, 1));
        r
    }

    fn push(&mut self, e: Element) {
        if e.count == 0 {
            return;
        }
        self.ends.push(self.count() + e.count);
        self.best.push(self.longest().max(e.longest));
        self.elems.push(e);
    }

    pub fn count(&self) -> usize {
        self.ends.last().copied().unwrap_or(0)
    }

    pub fn longest(&self) -> usize {
        self.best.last().copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn element_count(&self) -> usize {
        self.elems.len()
    }

    /// Element holding factor `i` (0-based) and the index within it.
    fn locate(&self, i: usize) -> (usize, usize) {
        let e = self.ends.partition_point(|&x| x <= i);
        (e, i - if e == 0 { 0 } else { self.ends[e - 1] })
    }

    fn get(&self, i: usize) -> Factor {
        let (e, k) = self.locate(i);
        self.elems[e].factor(k)
    }

    /// The `i`-th factor, 1-based.
    pub fn select(&self, i: usize) -> Result<Factor> {
        if i == 0 || i > self.count() {
            return Err(Error::OutOfRange { pos: i, len: self.count() });
        }
        Ok(self.get(i - 1))
    }

    /// The leftmost longest factor.
    pub fn longest_factor(&self) -> Option<Factor> {
        let e = self.best.iter().position(|&b| b == self.longest())?;
        Some(self.elems[e].factor(self.elems[e].longest_index()))
    }

    /// All factors left to right.
    pub fn factors(&self) -> Vec<Factor> {
        (0..self.count()).map(|i| self.get(i)).collect()
    }

    /// Keep the first `k` factors.
    fn truncate(&mut self, k: usize) {
        if k >= self.count() {
            return;
        }
        let (e, within) = self.locate(k);
        let last = (within > 0).then(|| self.elems[e].slice(0, within));
        self.elems.truncate(e);
        self.ends.truncate(e);
        self.best.truncate(e);
        if let Some(x) = last {
            self.push(x);
        }
    }

    /// Append the factors of `other` from index `k` on.
    fn extend_from(&mut self, other: &Lfr, k: usize) {
        if k >= other.count() {
            return;
        }
        let (e, within) = other.locate(k);
        let first = &other.elems[e];
        self.push(if within > 0 { first.slice(within, first.count) } else { first.clone() });
        for x in &other.elems[e + 1..] {
            self.push(x.clone());
        }
    }

    /// The same factors moved by `d` positions.
    pub fn shifted(self, d: isize) -> Self {
        let mut r = Lfr::default();
        for e in self.elems {
            r.push(e.shifted(d));
        }
        r
    }
}

fn lce(t: &KSubstring, a: usize, b: usize) -> usize {
    if cfg!(test) {
        crate::ksub::lce_ksub_verified(t, a, t, b)
    } else {
        lce_ksub(t, a, t, b)
    }
}

/// Order of the suffixes of `t[..end]` starting at `a` and `b`.
fn cmp_suffixes(t: &KSubstring, a: usize, b: usize, end: usize) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let far = a.max(b);
    let l = lce(t, a, b).min(end - far);
    if far + l == end {
        // the later one is a prefix of the earlier
        return if a > b { Ordering::Less } else { Ordering::Greater };
    }
    t.sym(a + l).cmp(&t.sym(b + l))
}

/// Factorization of `UV` from those of `U` and `V`, adjacent pieces of `text`
/// with `V` ending at `end`.
///
/// The factors of `UV` are a prefix of those of `U`, one new factor, and a
/// suffix of those of `V`. The new factor starts at the smallest suffix of
/// `UV` starting in `U`, which is found among the factors of `U` that form its
/// longest pre-Lyndon tail (a power per factor length, and the best of a power
/// is at one of its ends). The factors of `V` whose suffixes are smaller stay.
pub fn merge_lfr(mut u: Lfr, v: &Lfr, text: &KSubstring, end: usize) -> Lfr {
    if v.is_empty() {
        return u;
    }
    if u.is_empty() {
        return v.clone();
    }
    let m = u.count();
    let nu = v.get(0).start;
    // first factor of the pre-Lyndon tail: P_i = U_i...U_m has period |U_i|
    let periodic = |i: usize| {
        let f = u.get(i);
        f.start + f.len >= nu || lce(text, f.start, f.start + f.len) >= nu - f.start - f.len
    };
    let (mut lo, mut hi) = (0, m - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if periodic(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    // candidates: both ends of each run of equal factor lengths
    let mut cands = Vec::new();
    let mut g = lo;
    while g < m {
        let len = u.get(g).len;
        let (mut a, mut b) = (g, m - 1);
        while a < b {
            let mid = (a + b).div_ceil(2);
            if u.get(mid).len == len {
                a = mid;
            } else {
                b = mid - 1;
            }
        }
        cands.push(g);
        if a != g {
            cands.push(a);
        }
        g = a + 1;
    }
    let mut best = cands[0];
    for &c in &cands[1..] {
        if cmp_suffixes(text, u.get(c).start, u.get(best).start, end) == Ordering::Less {
            best = c;
        }
    }
    let z = u.get(best).start;
    // first factor of V whose suffix is below the new one
    let (mut lo, mut hi) = (0, v.count());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if cmp_suffixes(text, v.get(mid).start, z, end) == Ordering::Less {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let z_end = if lo < v.count() { v.get(lo).start } else { end };
    u.truncate(best);
    u.push(Element::power(z, z_end - z, 1));
    u.extend_from(v, lo);
    u
}

#[derive(Debug)]
struct Static {
    tree: Arc<LyndonTree>,
    gst: Gst,
    periods: PrefixSuffixIndex,
}

/// Static structures over a base string.
#[derive(Debug)]
pub struct LyndonIndex {
    s: Arc<BaseText>,
    /// absent for an empty base
    st: Option<Static>,
}

/// [`LyndonIndex`] construction: the tree, then the period index.
#[derive(Debug)]
pub struct LyndonIndexBuilder {
    s: Vec<Sym>,
    seed: u64,
    tree: Option<LyndonTree>,
    periods: Option<(Gst, PrefixSuffixIndex)>,
}

impl LyndonIndexBuilder {
    pub fn new(s: Vec<Sym>, seed: u64) -> Self {
        LyndonIndexBuilder { s, seed, tree: None, periods: None }
    }
}

impl StagedBuild for LyndonIndexBuilder {
    type Output = LyndonIndex;

    fn remaining(&self) -> usize {
        if self.s.is_empty() {
            return 0;
        }
        usize::from(self.tree.is_none()) + usize::from(self.periods.is_none())
    }

    fn step(&mut self) -> Result<()> {
        if self.tree.is_none() {
            self.tree = Some(LyndonTree::new(&self.s)?);
        } else if self.periods.is_none() {
            let gst = Gst::new(&[&self.s])?;
            let periods = PrefixSuffixIndex::new(&gst);
            self.periods = Some((gst, periods));
        }
        Ok(())
    }

    fn finish(self) -> Result<LyndonIndex> {
        let st = match (self.tree, self.periods) {
            (Some(tree), Some((gst, periods))) => Some(Static { tree: Arc::new(tree), gst, periods }),
            _ if self.s.is_empty() => None,
            _ => return Err(Error::BadParameter("construction not finished".into())),
        };
        let hasher = Arc::new(Hasher::new(self.seed, self.s.len() + 1));
        Ok(LyndonIndex { s: BaseText::new(self.s, hasher), st })
    }
}

impl LyndonIndex {
    pub fn new(s: &[Sym]) -> Result<Self> {
        run(LyndonIndexBuilder::new(s.to_vec(), DEFAULT_SEED))
    }

    pub fn base(&self) -> &Arc<BaseText> {
        &self.s
    }

    pub fn whole(&self) -> KSubstring {
        KSubstring::whole(self.s.clone())
    }

    pub fn tree(&self) -> Option<&LyndonTree> {
        self.st.as_ref().map(|st| &*st.tree)
    }

    fn check(&self, i: usize, j: usize) -> Result<&Static> {
        match &self.st {
            Some(st) if i <= j && j < self.s.len() => Ok(st),
            _ => Err(Error::InvalidInterval { lo: i as i64, hi: j as i64 }),
        }
    }

    /// Factorization of the pre-Lyndon string `s[i..=j]` as powers
    /// `(X, k)`: `X^k X'` with `X` of the shortest period, then `X'` likewise.
    pub fn pre_lyndon_factorize(&self, i: usize, j: usize) -> Result<Vec<(Factor, usize)>> {
        let st = self.check(i, j)?;
        let (mut a, mut len) = (i, j + 1 - i);
        let mut out = Vec::new();
        while len > 0 {
            let p = st.periods.shortest_period(&st.gst, Piece { pos: a, len })?;
            let k = len / p;
            out.push((Factor { start: a, len: p }, k));
            a += k * p;
            len -= k * p;
        }
        Ok(out)
    }

    /// Factorization of `s[i..=j]`.
    pub fn internal_lfr(&self, i: usize, j: usize) -> Result<Lfr> {
        let st = self.check(i, j)?;
        let tree = &st.tree;
        let off = tree.offset;
        let (ti, tj) = (i + off, j + off);
        let mut r = Lfr::default();
        // the factorization ends with a prefix of the node `from`
        let from = if ti == 0 {
            tree.root()
        } else {
            let (v1, v2) = (tree.leaf(ti - 1), tree.leaf(tj));
            let w = tree.lca(v1, v2);
            let (wl, wr) = tree.children(w).expect("two leaves below");
            let parts = tree.uncle_parts(v1, wl);
            r.push(Element::uncles(st.tree.clone(), parts, -(off as isize)));
            wr
        };
        let a = tree.interval(from).0 - off;
        for (x, k) in self.pre_lyndon_factorize(a, j)? {
            r.push(Element::power(x.start, x.len, k));
        }
        Ok(r)
    }

    /// Factorization of an edited string `S'`, positions in `S'`.
    pub fn k_substring_lfr(&self, sp: &KSubstring) -> Lfr {
        let mut acc = Lfr::default();
        for (f, frag) in sp.fragments().iter().enumerate() {
            let at = sp.frag_start(f);
            let (part, len) = match *frag {
                Fragment::Ref { start, len } => {
                    let r = self.internal_lfr(start, start + len - 1).expect("fragment inside the base");
                    (r.shifted(at as isize - start as isize), len)
                }
                Fragment::Char(_) => (Lfr::single(at, 1), 1),
            };
            acc = merge_lfr(acc, &part, sp, at + len);
        }
        acc
    }
}

/// Longest Lyndon substring (leftmost longest factor) and the factor count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LyndonAnswer {
    pub longest: usize,
    pub start: usize,
    pub count: usize,
}

impl LyndonAnswer {
    fn of(r: &Lfr) -> Self {
        let f = r.longest_factor().unwrap_or_default();
        LyndonAnswer { longest: f.len, start: f.start, count: r.count() }
    }
}

/// Edited string over a [`LyndonIndex`].
#[derive(Debug, Clone)]
pub struct DynamicLyndon {
    index: Arc<LyndonIndex>,
    s: KSubstring,
}

impl DynamicLyndon {
    pub fn new(s: &[Sym]) -> Result<Self> {
        Self::with_seed(s, DEFAULT_SEED)
    }

    /// Fingerprints drawn from `seed`; later rebuilds keep it.
    pub fn with_seed(s: &[Sym], seed: u64) -> Result<Self> {
        run(DynamicLyndonBuilder(LyndonIndexBuilder::new(s.to_vec(), seed)))
    }

    pub fn index(&self) -> &LyndonIndex {
        &self.index
    }

    pub fn s(&self) -> &KSubstring {
        &self.s
    }

    pub fn lfr(&self) -> Lfr {
        self.index.k_substring_lfr(&self.s)
    }

    pub fn answer(&self) -> LyndonAnswer {
        LyndonAnswer::of(&self.lfr())
    }
}

impl Rebuild for DynamicLyndon {
    type Builder = DynamicLyndonBuilder;

    fn apply(&mut self, e: &EditOp) -> Result<()> {
        if e.target != Target::S {
            return Err(Error::BadParameter("only S may be edited".into()));
        }
        self.s = self.s.apply_edit(e)?;
        Ok(())
    }

    fn rebuild(&self) -> DynamicLyndonBuilder {
        DynamicLyndonBuilder(LyndonIndexBuilder::new(self.s.materialize(), self.s.base().hasher.seed()))
    }

    fn fragment_count(&self) -> usize {
        self.s.fragments().len()
    }
}

#[derive(Debug)]
pub struct DynamicLyndonBuilder(LyndonIndexBuilder);

impl StagedBuild for DynamicLyndonBuilder {
    type Output = DynamicLyndon;

    fn remaining(&self) -> usize {
        self.0.remaining()
    }

    fn step(&mut self) -> Result<()> {
        self.0.step()
    }

    fn finish(self) -> Result<DynamicLyndon> {
        let index = Arc::new(self.0.finish()?);
        Ok(DynamicLyndon { s: index.whole(), index })
    }
}

/// Fully dynamic Lyndon factorization with worst-case rebuilding.
pub struct LyndonSession {
    inner: TimeSliced<DynamicLyndon>,
}

impl LyndonSession {
    /// `kappa` defaults to the balance point of the linear query profile.
    pub fn new(s: &[Sym], kappa: Option<usize>, mode: SliceMode) -> Result<Self> {
        Self::with_seed(s, kappa, mode, DEFAULT_SEED)
    }

    pub fn with_seed(s: &[Sym], kappa: Option<usize>, mode: SliceMode, seed: u64) -> Result<Self> {
        let kappa = kappa.unwrap_or_else(|| QueryProfile::Linear.kappa_int(s.len()));
        Ok(LyndonSession { inner: TimeSliced::new(DynamicLyndon::with_seed(s, seed)?, kappa, mode)? })
    }

    pub fn lfr(&self) -> Lfr {
        self.inner.live().lfr()
    }

    pub fn answer(&self) -> LyndonAnswer {
        self.inner.live().answer()
    }

    pub fn edit(&mut self, e: &EditOp) -> Result<LyndonAnswer> {
        self.inner.edit(e)?;
        Ok(self.answer())
    }

    pub fn current(&self) -> &DynamicLyndon {
        self.inner.live()
    }

    pub fn slicing(&self) -> &TimeSliced<DynamicLyndon> {
        &self.inner
    }
}

/// Duval's algorithm: the Lyndon factorization as `(start, len)` factors.
pub fn duval_lf(s: &[Sym]) -> Vec<Factor> {
    let n = s.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let (mut j, mut k) = (i + 1, i);
        while j < n && s[k] <= s[j] {
            k = if s[k] < s[j] { i } else { k + 1 };
            j += 1;
        }
        while i <= k {
            out.push(Factor { start: i, len: j - k });
            i += j - k;
        }
    }
    out
}
