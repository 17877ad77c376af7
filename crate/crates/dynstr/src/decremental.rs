//! Decremental LCS. Characters of `S` and `T` are blocked one at a time (or
//! separators are placed between positions) and the longest common substring
//! avoiding every block is reported after each step.
//!
//! Lengths up to a bound `d` are tracked exactly by [`BoundedState`]: one
//! counter per length, kept up to date with per-heavy-path interval trees. For
//! longer answers a difference cover reduces the question to a
//! [`two_string_families_lcp`] instance.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::core_index::{Gst, LceIndex, Piece, Text};
use crate::error::{Error, Result};
use crate::internal_queries::LcsAnswer;
use crate::range_structures::IntervalTree;
use crate::Sym;

/// Which of the two strings an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    S,
    T,
}

impl Side {
    fn index(self) -> usize {
        match self {
            Side::S => 0,
            Side::T => 1,
        }
    }
}

// ---------------------------------------------------------------------------
// difference cover

/// A `d`-cover restricted to `[1, n]`: positions whose 0-based offset modulo
/// `d` falls in a difference cover of `Z_d`.
#[derive(Debug, Clone)]
pub struct DifferenceCover {
    d: usize,
    n: usize,
    residues: Vec<usize>,
    is_residue: Vec<bool>,
    /// for `k = (x - y) mod d`, a residue `r` with `r` and `r - k` in the cover
    shift_for: Vec<usize>,
    members: Vec<usize>,
}

fn covers_all(d: usize, set: &[usize]) -> bool {
    let mut seen = vec![false; d];
    for &x in set {
        for &y in set {
            seen[(x + d - y) % d] = true;
        }
    }
    seen.iter().all(|&b| b)
}

/// Smallest cover for small moduli; candidates are tried in lexicographic order
/// of the residue list `1, 2, .., d-1, 0`.
fn minimal_cover(d: usize) -> Vec<usize> {
    let order: Vec<usize> = (1..=d).map(|r| r % d).collect();
    for size in 1..=d {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let set: Vec<usize> = idx.iter().map(|&i| order[i]).collect();
            if covers_all(d, &set) {
                return set;
            }
            // advance to the next combination, if any
            let Some(k) = (0..size).rev().find(|&k| idx[k] < d - size + k) else {
                break;
            };
            idx[k] += 1;
            for m in k + 1..size {
                idx[m] = idx[m - 1] + 1;
            }
        }
    }
    (0..d).collect()
}

const SEARCH_LIMIT: usize = 24;

impl DifferenceCover {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::BadParameter("cover modulus must be positive".into()));
        }
        let mut residues = if d <= SEARCH_LIMIT {
            minimal_cover(d)
        } else {
            // {0..v-1} plus the multiples of v: k = qv + r is ((q+1)v) - (v-r)
            let v = (d as f64).sqrt().ceil() as usize;
            let mut r: Vec<usize> = (0..v).collect();
            r.extend((1..=d.div_ceil(v)).map(|t| (t * v) % d));
            r
        };
        residues.sort_unstable();
        residues.dedup();
        let mut is_residue = vec![false; d];
        for &r in &residues {
            is_residue[r] = true;
        }
        let mut shift_for = vec![usize::MAX; d];
        for &x in &residues {
            for &y in &residues {
                let k = (x + d - y) % d;
                if shift_for[k] == usize::MAX {
                    shift_for[k] = x;
                }
            }
        }
        debug_assert!(shift_for.iter().all(|&x| x != usize::MAX));
        let members = (1..=n).filter(|&i| is_residue[(i - 1) % d]).collect();
        Ok(DifferenceCover {
            d,
            n,
            residues,
            is_residue,
            shift_for,
            members,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Residues (of 0-based offsets) forming the cover of `Z_d`.
    pub fn residues(&self) -> &[usize] {
        &self.residues
    }

    /// Sorted 1-based members in `[1, n]`.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && self.is_residue[(i - 1) % self.d]
    }

    /// `h` with `0 <= h < d` and `i + h`, `j + h` both in the cover (1-based).
    pub fn h(&self, i: usize, j: usize) -> usize {
        let d = self.d;
        let (x, y) = ((i - 1) % d, (j - 1) % d);
        let r = self.shift_for[(x + d - y) % d];
        (r + d - x) % d
    }
}

// ---------------------------------------------------------------------------
// two string families

fn piece_lcp(lce: &LceIndex, a: Piece, b: Piece) -> usize {
    if a.len == 0 || b.len == 0 {
        return 0;
    }
    lce.lce(a.pos, b.pos).min(a.len).min(b.len)
}

fn piece_cmp(lce: &LceIndex, a: Piece, b: Piece) -> std::cmp::Ordering {
    let l = piece_lcp(lce, a, b);
    if l == a.len || l == b.len {
        a.len.cmp(&b.len)
    } else {
        lce.isa[a.pos].cmp(&lce.isa[b.pos])
    }
}

#[derive(Debug, Clone)]
pub struct TrieNode {
    pub depth: usize,
    pub children: Vec<usize>,
    /// ids of the family strings spelled by this node
    pub strings: Vec<usize>,
}

/// Compact trie of a family of strings, each given as a piece of a text indexed
/// by an [`LceIndex`].
#[derive(Debug, Clone)]
pub struct FamilyTrie {
    pub nodes: Vec<TrieNode>,
    /// node of each string
    pub node_of: Vec<usize>,
}

impl FamilyTrie {
    pub fn new(lce: &LceIndex, strings: &[Piece]) -> Self {
        let mut order: Vec<usize> = (0..strings.len()).collect();
        order.sort_by(|&a, &b| piece_cmp(lce, strings[a], strings[b]));
        let mut nodes = vec![TrieNode { depth: 0, children: Vec::new(), strings: Vec::new() }];
        let mut node_of = vec![0; strings.len()];
        let mut stack = vec![0usize];
        let mut prev: Option<Piece> = None;
        for &id in &order {
            let s = strings[id];
            let l = prev.map_or(0, |p| piece_lcp(lce, p, s));
            let mut last = None;
            while nodes[*stack.last().unwrap()].depth > l {
                last = stack.pop();
            }
            let top = *stack.last().unwrap();
            if nodes[top].depth < l {
                // split: a new node at depth l takes over the last popped subtree
                let mid = nodes.len();
                let child = last.expect("something deeper was popped");
                nodes.push(TrieNode { depth: l, children: vec![child], strings: Vec::new() });
                let pos = nodes[top].children.iter().position(|&c| c == child).unwrap();
                nodes[top].children[pos] = mid;
                stack.push(mid);
            }
            let top = *stack.last().unwrap();
            if s.len > nodes[top].depth {
                let leaf = nodes.len();
                nodes.push(TrieNode { depth: s.len, children: Vec::new(), strings: vec![id] });
                nodes[top].children.push(leaf);
                stack.push(leaf);
                node_of[id] = leaf;
            } else {
                nodes[top].strings.push(id);
                node_of[id] = top;
            }
            prev = Some(s);
        }
        FamilyTrie { nodes, node_of }
    }
}

/// Best pair found by [`two_string_families_lcp`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairLcp {
    pub value: usize,
    /// index into `P`
    pub p: usize,
    /// index into `Q`
    pub q: usize,
    /// `lcp(P_1, Q_1)`
    pub first: usize,
    /// `lcp(P_2, Q_2)`
    pub second: usize,
}

/// `max lcp(P_1, Q_1) + lcp(P_2, Q_2)` over `(P_1, P_2)` in `p` and
/// `(Q_1, Q_2)` in `q`. Works bottom-up over the trie of first components,
/// merging smaller sets of second components into larger ones and checking each
/// moved element against its neighbours in the other family.
pub fn two_string_families_lcp(lce: &LceIndex, p: &[(Piece, Piece)], q: &[(Piece, Piece)]) -> Option<PairLcp> {
    two_string_families_lcp_filtered(lce, p, q, |_, _| true)
}

/// As [`two_string_families_lcp`], ignoring pairs `(i, j)` rejected by `allowed`.
/// The filter is applied to neighbour candidates only, so it must reject a
/// sparse set (such as pairs built from the same position).
pub(crate) fn two_string_families_lcp_filtered(
    lce: &LceIndex,
    p: &[(Piece, Piece)],
    q: &[(Piece, Piece)],
    allowed: impl Fn(usize, usize) -> bool,
) -> Option<PairLcp> {
    if p.is_empty() || q.is_empty() {
        return None;
    }
    let firsts: Vec<Piece> = p.iter().chain(q).map(|x| x.0).collect();
    let seconds: Vec<Piece> = p.iter().chain(q).map(|x| x.1).collect();
    let trie = FamilyTrie::new(lce, &firsts);
    let mut order: Vec<usize> = (0..seconds.len()).collect();
    order.sort_by(|&a, &b| piece_cmp(lce, seconds[a], seconds[b]));
    let mut rank2 = vec![0usize; seconds.len()];
    for (r, &id) in order.iter().enumerate() {
        rank2[id] = r;
    }
    let np = p.len();
    let mut best: Option<PairLcp> = None;

    // sets[side] holds (rank of second component, element id)
    type Sets = [BTreeSet<(usize, usize)>; 2];
    let side = |id: usize| usize::from(id >= np);

    // neighbours of `id` among the other side, skipping rejected pairs
    let probe = |sets: &Sets, id: usize, depth: usize, best: &mut Option<PairLcp>| {
        let other = &sets[1 - side(id)];
        let key = (rank2[id], id);
        let mut check = |o: usize| {
            let (pi, qi) = if side(id) == 0 { (id, o - np) } else { (o, id - np) };
            if !allowed(pi, qi) {
                return false;
            }
            let second = piece_lcp(lce, seconds[id], seconds[o]);
            let val = depth + second;
            if best.is_none_or(|b| val > b.value) {
                *best = Some(PairLcp { value: val, p: pi, q: qi, first: depth, second });
            }
            true
        };
        for &(_, o) in other.range(..key).rev() {
            if check(o) {
                break;
            }
        }
        for &(_, o) in other.range(key..) {
            if check(o) {
                break;
            }
        }
    };

    // iterative post-order over the trie
    let mut sets_of: Vec<Option<Sets>> = vec![None; trie.nodes.len()];
    let mut stack = vec![(0usize, false)];
    while let Some((v, done)) = stack.pop() {
        if !done {
            stack.push((v, true));
            for &c in &trie.nodes[v].children {
                stack.push((c, false));
            }
            continue;
        }
        let depth = trie.nodes[v].depth;
        let mut groups: Vec<Sets> = trie.nodes[v]
            .children
            .iter()
            .map(|&c| sets_of[c].take().expect("child done"))
            .collect();
        // strings ending here are singletons, so equal first components still meet
        for &id in &trie.nodes[v].strings {
            let mut g: Sets = Default::default();
            g[side(id)].insert((rank2[id], id));
            groups.push(g);
        }
        groups.sort_by_key(|s| std::cmp::Reverse(s[0].len() + s[1].len()));
        let mut it = groups.into_iter();
        let mut acc = it.next().unwrap_or_default();
        for g in it {
            for part in &g {
                for &(_, id) in part {
                    probe(&acc, id, depth, &mut best);
                }
            }
            for (dst, src) in acc.iter_mut().zip(g) {
                dst.extend(src);
            }
        }
        sets_of[v] = Some(acc);
    }
    best
}

// ---------------------------------------------------------------------------
// bounded-length counters

/// Max segment tree over SA ranks, ties to the smallest rank.
#[derive(Debug, Clone)]
pub(crate) struct MaxTree {
    size: usize,
    t: Vec<(i32, u32)>,
}

impl MaxTree {
    fn new(vals: &[i32]) -> Self {
        let size = vals.len().next_power_of_two().max(1);
        let mut t = vec![(i32::MIN, u32::MAX); 2 * size];
        for (i, &v) in vals.iter().enumerate() {
            t[size + i] = (v, i as u32);
        }
        for i in (1..size).rev() {
            t[i] = Self::pick(t[2 * i], t[2 * i + 1]);
        }
        MaxTree { size, t }
    }

    fn pick(a: (i32, u32), b: (i32, u32)) -> (i32, u32) {
        if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
            b
        } else {
            a
        }
    }

    fn set(&mut self, i: usize, v: i32) {
        let mut k = self.size + i;
        self.t[k].0 = v;
        while k > 1 {
            k /= 2;
            self.t[k] = Self::pick(self.t[2 * k], self.t[2 * k + 1]);
        }
    }

    fn get(&self, i: usize) -> i32 {
        self.t[self.size + i].0
    }

    /// `(value, index)` of the maximum over `[lo, hi]`.
    fn max(&self, lo: usize, hi: usize) -> (i32, usize) {
        let mut best = (i32::MIN, u32::MAX);
        let (mut l, mut r) = (lo + self.size, hi + self.size + 1);
        while l < r {
            if l & 1 == 1 {
                best = Self::pick(best, self.t[l]);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                best = Self::pick(best, self.t[r]);
            }
            l /= 2;
            r /= 2;
        }
        (best.0, best.1 as usize)
    }
}

#[derive(Debug, Clone, Copy)]
struct PathSpan {
    /// smallest depth with a point on the path (the light edge above the top counts)
    start: usize,
    /// largest depth considered: below the leaf's sentinel and at most `d`
    end: usize,
}

/// Answer of a bounded-length query: `len <= d` and one valid occurrence start
/// per requested occurrence (positions local to their component).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedAnswer {
    pub len: usize,
    /// `(component, local start)` of each witness occurrence
    pub witnesses: Vec<(usize, usize)>,
}

/// Per-length counters of distinct strings of length `<= d` that still have
/// enough valid occurrences in every component (`need[c]` in component `c`).
///
/// With components `[S, T]` and `need = [1, 1]` this is the bounded-length
/// decremental LCS; with `[S]` and `need = [2]` it counts repeats.
#[derive(Debug, Clone)]
pub struct BoundedState {
    gst: Gst,
    d: usize,
    need: Vec<usize>,
    spans: Vec<PathSpan>,
    /// `counts[c][v]`: occurrences of `L(v)` in component `c`
    counts: Vec<Vec<u32>>,
    /// `inv[c][path]`: smallest depth on the path whose string has too few valid
    /// occurrences in component `c` (`end + 1` if none)
    inv: Vec<Vec<usize>>,
    /// per component and path: invalidated occurrences, as depth intervals
    cut_depths: Vec<HashMap<usize, IntervalTree>>,
    /// per component: block start -> block end (see [`BoundedState::block`])
    blocks: Vec<BTreeMap<usize, usize>>,
    /// `counts_by_len[i]`: the array `A`
    counts_by_len: Vec<usize>,
    /// paths keyed by the deepest depth they still contribute
    by_key: Vec<BTreeSet<usize>>,
    key: Vec<Option<usize>>,
    /// per component, over SA ranks: longest valid length starting there (<= d)
    valid_len: Vec<MaxTree>,
}

impl BoundedState {
    pub fn new(comps: &[&[Sym]], need: &[usize], d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::BadParameter("length bound must be positive".into()));
        }
        if need.len() != comps.len() || need.contains(&0) {
            return Err(Error::BadParameter("one positive threshold per component".into()));
        }
        let gst = Gst::new(comps)?;
        let k = comps.len();
        let nodes = gst.node_count();
        let counts: Vec<Vec<u32>> = (0..k)
            .map(|c| (0..nodes).map(|v| gst.count_in(c, v) as u32).collect())
            .collect();
        let spans: Vec<PathSpan> = (0..gst.path_count())
            .map(|pid| {
                let nodes = gst.path_nodes(pid);
                let top = nodes[0] as usize;
                let bottom = *nodes.last().unwrap() as usize;
                let start = gst.parent(top).map_or(1, |p| gst.depth(p) + 1);
                let below = if gst.is_leaf(bottom) { gst.depth(bottom) - 1 } else { gst.depth(bottom) };
                PathSpan { start, end: below.min(d) }
            })
            .collect();
        let mut st = BoundedState {
            d,
            need: need.to_vec(),
            counts,
            inv: vec![vec![0; spans.len()]; k],
            cut_depths: vec![HashMap::new(); k],
            blocks: vec![BTreeMap::new(); k],
            counts_by_len: Vec::new(),
            by_key: vec![BTreeSet::new(); d + 1],
            key: vec![None; spans.len()],
            valid_len: Vec::new(),
            spans,
            gst,
        };
        for pid in 0..st.spans.len() {
            for c in 0..k {
                let PathSpan { start, end } = st.spans[pid];
                st.inv[c][pid] = st.first_short(c, pid, start, end + 1);
            }
            st.key[pid] = st.compute_key(pid);
            if let Some(kk) = st.key[pid] {
                st.by_key[kk].insert(pid);
            }
        }
        st.counts_by_len = st.initial_counts();
        let text = &st.gst.text;
        let sa = &st.gst.idx.sa;
        st.valid_len = (0..k)
            .map(|c| {
                let vals: Vec<i32> = sa
                    .iter()
                    .map(|&p| {
                        let p = p as usize;
                        let (s, e) = (text.starts[c], text.end(c));
                        if p >= s && p < e {
                            (e - p).min(d) as i32
                        } else {
                            -1
                        }
                    })
                    .collect();
                MaxTree::new(&vals)
            })
            .collect();
        Ok(st)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn gst(&self) -> &Gst {
        &self.gst
    }

    /// The array `A`: `A[i]` distinct strings of length `i` with enough valid
    /// occurrences everywhere, for `i` in `0..=d`.
    pub fn counts_by_len(&self) -> &[usize] {
        &self.counts_by_len
    }

    /// Same array recomputed from the per-path state; equals
    /// [`BoundedState::counts_by_len`] at all times.
    pub fn counts_from_paths(&self) -> Vec<usize> {
        let mut diff = vec![0i64; self.d + 2];
        diff[0] += 1;
        diff[1] -= 1;
        for (pid, k) in self.key.iter().enumerate() {
            if let Some(k) = *k {
                diff[self.spans[pid].start] += 1;
                diff[k + 1] -= 1;
            }
        }
        let mut acc = 0i64;
        diff[..=self.d]
            .iter()
            .map(|&x| {
                acc += x;
                acc as usize
            })
            .collect()
    }

    /// Initial `A` from the pruned tree: `A[i] = A[i-1] - L[i-1] + sum (j - 1)`
    /// over out-degrees `j` of pruned internal nodes at depth `i - 1`.
    fn initial_counts(&self) -> Vec<usize> {
        let g = &self.gst;
        let d = self.d;
        let kept = |v: usize| (0..self.need.len()).all(|c| self.counts[c][v] as usize >= self.need[c]);
        let mut leaves_at = vec![0i64; d + 1];
        let mut extra_at = vec![0i64; d + 1];
        let mut stack = vec![crate::core_index::ROOT];
        while let Some(v) = stack.pop() {
            let dep = g.depth(v);
            if dep > d {
                continue;
            }
            let kids: Vec<usize> = g.children(v).iter().map(|&c| c as usize).filter(|&c| kept(c)).collect();
            if kids.is_empty() {
                leaves_at[dep] += 1;
            } else {
                extra_at[dep] += kids.len() as i64 - 1;
            }
            stack.extend(kids);
        }
        let mut a = vec![0usize; d + 1];
        a[0] = 1;
        for i in 1..=d {
            a[i] = (a[i - 1] as i64 - leaves_at[i - 1] + extra_at[i - 1]) as usize;
        }
        a
    }

    fn node_at(&self, pid: usize, depth: usize) -> usize {
        let nodes = self.gst.path_nodes(pid);
        let k = nodes.partition_point(|&u| self.gst.depth(u as usize) < depth);
        nodes[k] as usize
    }

    /// Valid occurrences in component `c` of the point at `depth` on the path.
    fn valid_count(&self, c: usize, pid: usize, depth: usize) -> usize {
        let v = self.node_at(pid, depth);
        let gone = self.cut_depths[c].get(&pid).map_or(0, |t| t.count(depth as i64));
        self.counts[c][v] as usize - gone
    }

    /// Smallest depth in `[lo, hi)` with too few valid occurrences, or `hi`.
    fn first_short(&self, c: usize, pid: usize, lo: usize, hi: usize) -> usize {
        let (mut lo, mut hi) = (lo, hi);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.valid_count(c, pid, mid) < self.need[c] {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lo
    }

    fn compute_key(&self, pid: usize) -> Option<usize> {
        let span = self.spans[pid];
        let first_bad = (0..self.need.len()).map(|c| self.inv[c][pid]).min().unwrap();
        let k = (first_bad - 1).min(span.end);
        (span.start <= span.end && k >= span.start).then_some(k)
    }

    /// Largest valid end (exclusive) of an occurrence starting at `a`.
    fn max_end(&self, c: usize, a: usize) -> usize {
        self.blocks[c]
            .range(a..)
            .next()
            .map_or(self.gst.text.lens[c], |(_, &r)| r - 1)
    }

    pub fn is_blocked(&self, c: usize, pos: usize) -> bool {
        self.max_end(c, pos) <= pos
    }

    /// Largest valid exclusive end and smallest valid start for occurrences
    /// through `x` in component `c`.
    pub fn valid_window(&self, c: usize, x: usize) -> (usize, usize) {
        let start = self.blocks[c].range(..x).next_back().map_or(0, |(&l, _)| l + 1);
        (start, self.max_end(c, x))
    }

    /// Invalidate every occurrence `[a, e)` of component `c` with `a <= l` and
    /// `e >= r`. Returns `false` when nothing new is invalidated.
    pub fn block(&mut self, c: usize, l: usize, r: usize) -> Result<bool> {
        let len = self.gst.text.lens[c];
        if l >= len || r <= l || r > len {
            return Err(Error::OutOfRange { pos: l, len });
        }
        if self.max_end(c, l) < r {
            return Ok(false);
        }
        let start_c = self.gst.text.starts[c];
        let d = self.d;
        let mut touched = BTreeSet::new();
        let mut old_end = self.max_end(c, l);
        let lowest = r.saturating_sub(d);
        let mut a = l + 1;
        while a > lowest {
            a -= 1;
            if let Some(&rr) = self.blocks[c].get(&a) {
                old_end = old_end.min(rr - 1);
            }
            if old_end < r {
                break;
            }
            // lengths [r - a, old_end - a] become invalid
            let (lo, hi) = (r - a, (old_end - a).min(d));
            let leaf = self.gst.leaf(start_c + a);
            for f in self.gst.heavy_decomp_to_root(leaf) {
                let top_lo = self.gst.parent(f.top).map_or(0, |p| self.gst.depth(p) + 1);
                let (x, y) = (lo.max(top_lo), hi.min(self.gst.depth(f.bottom)));
                let span = self.spans[f.path];
                let (x, y) = (x.max(span.start), y.min(span.end));
                if x <= y {
                    self.cut_depths[c]
                        .entry(f.path)
                        .or_insert_with(|| IntervalTree::new(span.start as i64, span.end as i64))
                        .insert(x as i64, y as i64)?;
                    touched.insert(f.path);
                }
            }
            let rank = self.gst.idx.isa[start_c + a] as usize;
            let v = ((r - 1 - a).min(d)) as i32;
            if self.valid_len[c].get(rank) > v {
                self.valid_len[c].set(rank, v);
            }
        }
        self.blocks[c].insert(l, r);
        let mut drop_len = IntervalTree::new(1, d as i64);
        for pid in touched {
            let old = self.inv[c][pid];
            let span = self.spans[pid];
            let new = self.first_short(c, pid, span.start, old);
            if new == old {
                continue;
            }
            let old_key = self.key[pid];
            self.inv[c][pid] = new;
            let new_key = self.compute_key(pid);
            if let Some(ok) = old_key {
                let from = new_key.map_or(span.start, |k| k + 1);
                if from <= ok {
                    drop_len.insert(from as i64, ok as i64)?;
                }
                self.by_key[ok].remove(&pid);
            }
            if let Some(nk) = new_key {
                self.by_key[nk].insert(pid);
            }
            self.key[pid] = new_key;
        }
        for i in 1..=d {
            self.counts_by_len[i] -= drop_len.count(i as i64);
        }
        Ok(true)
    }

    /// Largest length with a nonzero counter and its witnesses: one occurrence
    /// per component, or `need[c]` distinct ones.
    pub fn answer(&self) -> BoundedAnswer {
        let m = (0..=self.d).rev().find(|&i| self.counts_by_len[i] > 0).unwrap_or(0);
        if m == 0 {
            return BoundedAnswer { len: 0, witnesses: Vec::new() };
        }
        let pid = *self.by_key[m].first().expect("some path ends at the longest length");
        let v = self.node_at(pid, m);
        let range = self.gst.node_range(v);
        let mut witnesses = Vec::new();
        for c in 0..self.need.len() {
            let mut taken: Vec<usize> = Vec::new();
            for _ in 0..self.need[c] {
                // best rank outside the already taken ones
                let mut best = (i32::MIN, usize::MAX);
                let mut lo = range.lo;
                let mut bounds = taken.clone();
                bounds.sort_unstable();
                for hi in bounds.iter().map(|&t| t as isize - 1).chain([range.hi as isize]) {
                    if hi >= lo as isize {
                        let got = self.valid_len[c].max(lo, hi as usize);
                        if got.0 > best.0 {
                            best = got;
                        }
                    }
                    lo = (hi + 2) as usize;
                }
                debug_assert!(best.0 >= m as i32);
                taken.push(best.1);
                let p = self.gst.idx.sa[best.1] as usize;
                witnesses.push((c, p - self.gst.text.starts[c]));
            }
        }
        BoundedAnswer { len: m, witnesses }
    }
}

// ---------------------------------------------------------------------------
// full decremental LCS

/// Default length bound `floor(n^(2/3))`, at least 1.
pub fn default_bound(n: usize) -> usize {
    ((n as f64).powf(2.0 / 3.0).floor() as usize).max(1)
}

/// Decremental LCS of `S` and `T` under character blocks and separators.
#[derive(Debug, Clone)]
pub struct DecrementalLcs {
    bounded: BoundedState,
    cover: DifferenceCover,
    /// LCE over `S #, T #, S^R #, T^R #`
    families: LceIndex,
    starts: Vec<usize>,
    lens: [usize; 2],
}

impl DecrementalLcs {
    pub fn new(s: &[Sym], t: &[Sym], d: Option<usize>) -> Result<Self> {
        let n = s.len().max(t.len()).max(1);
        let d = d.unwrap_or_else(|| default_bound(n));
        let bounded = BoundedState::new(&[s, t], &[1, 1], d)?;
        let cover = DifferenceCover::new(d, n)?;
        let rs: Vec<Sym> = s.iter().rev().copied().collect();
        let rt: Vec<Sym> = t.iter().rev().copied().collect();
        let text = Text::from_components(&[s, t, &rs, &rt])?;
        Ok(DecrementalLcs {
            bounded,
            cover,
            families: LceIndex::new(&text.syms),
            starts: text.starts,
            lens: [s.len(), t.len()],
        })
    }

    pub fn bounded(&self) -> &BoundedState {
        &self.bounded
    }

    pub fn d(&self) -> usize {
        self.bounded.d()
    }

    /// `S[pos] := #` (or `T[pos] := $`), 0-based.
    pub fn replace(&mut self, side: Side, pos: usize) -> Result<LcsAnswer> {
        self.invalidate(side, pos)?;
        Ok(self.current())
    }

    /// Separator between positions `boundary - 1` and `boundary`; no effect at
    /// the string ends or where a block already separates them.
    pub fn separate(&mut self, side: Side, boundary: usize) -> Result<LcsAnswer> {
        self.split(side, boundary)?;
        Ok(self.current())
    }

    /// [`Self::replace`] without computing the answer.
    pub fn invalidate(&mut self, side: Side, pos: usize) -> Result<()> {
        let c = side.index();
        if pos >= self.lens[c] {
            return Err(Error::OutOfRange { pos, len: self.lens[c] });
        }
        if self.bounded.is_blocked(c, pos) {
            return Err(Error::AlreadyReplaced(pos));
        }
        self.bounded.block(c, pos, pos + 1)?;
        Ok(())
    }

    /// [`Self::separate`] without computing the answer.
    pub fn split(&mut self, side: Side, boundary: usize) -> Result<()> {
        let c = side.index();
        if boundary > self.lens[c] {
            return Err(Error::OutOfRange { pos: boundary, len: self.lens[c] });
        }
        if boundary > 0 && boundary < self.lens[c] {
            self.bounded.block(c, boundary - 1, boundary + 1)?;
        }
        Ok(())
    }

    pub fn len(&self, side: Side) -> usize {
        self.lens[side.index()]
    }

    /// Current LCS among occurrences avoiding every block.
    pub fn current(&self) -> LcsAnswer {
        let b = self.bounded.answer();
        let short = if b.len == 0 {
            LcsAnswer::default()
        } else {
            LcsAnswer { len: b.len, pos_s: b.witnesses[0].1, pos_t: b.witnesses[1].1 }
        };
        if b.len < self.d() {
            return short;
        }
        match self.long_case() {
            Some(long) if long.len > short.len => long,
            _ => short,
        }
    }

    /// Pairs (reversed left part, right part) around each cover member.
    fn pairs(&self, c: usize) -> (Vec<(Piece, Piece)>, Vec<usize>) {
        let len = self.lens[c];
        let mut out = Vec::new();
        let mut at = Vec::new();
        for &i in self.cover.members() {
            let x = i - 1;
            if x >= len {
                break;
            }
            let (lo, hi) = self.bounded.valid_window(c, x);
            let hi = hi.max(x);
            let left = Piece { pos: self.starts[c + 2] + len - x, len: x - lo };
            let right = Piece { pos: self.starts[c] + x, len: hi - x };
            out.push((left, right));
            at.push(x);
        }
        (out, at)
    }

    /// Exact whenever the answer is at least `d`.
    fn long_case(&self) -> Option<LcsAnswer> {
        let (p, ps) = self.pairs(0);
        let (q, qs) = self.pairs(1);
        let best = two_string_families_lcp(&self.families, &p, &q)?;
        (best.value > 0).then(|| LcsAnswer {
            len: best.value,
            pos_s: ps[best.p] - best.first,
            pos_t: qs[best.q] - best.first,
        })
    }
}

#[cfg(test)]
mod tests;
