//! Static indexes over frozen texts: generalized suffix array and tree, LCE in
//! both directions, loci of substrings, heavy paths and SA-range arithmetic.
//!
//! A text is a list of components `X = S_0 #_0 S_1 #_1 ...` where every `#_k`
//! is a distinct sentinel smaller than all real symbols. All positions are
//! 0-based offsets into `X`.

pub mod occ;
pub mod sa;

pub use occ::PositionTree;
pub use sa::{LceIndex, SparseMax, SparseMin};

use crate::error::{Error, Result};
use crate::Sym;

/// Input bytes are shifted by this amount so that sentinels fit below them.
pub const SYM_OFFSET: Sym = 64;

/// Map bytes into the symbol alphabet.
pub fn encode(bytes: &[u8]) -> Vec<Sym> {
    bytes.iter().map(|&b| b as Sym + SYM_OFFSET).collect()
}

/// Sentinel closing component `k`.
pub fn sentinel(k: usize) -> Sym {
    debug_assert!((k as Sym) + 1 < SYM_OFFSET);
    k as Sym + 1
}

/// The concatenated text with component boundaries.
#[derive(Debug, Clone)]
pub struct Text {
    pub syms: Vec<Sym>,
    /// start offset of each component
    pub starts: Vec<usize>,
    /// length of each component (without its sentinel)
    pub lens: Vec<usize>,
}

impl Text {
    pub fn from_components(comps: &[&[Sym]]) -> Result<Self> {
        if comps.len() as Sym + 1 >= SYM_OFFSET {
            return Err(Error::TooLarge {
                len: comps.len(),
                limit: SYM_OFFSET as usize - 2,
            });
        }
        let mut syms = Vec::with_capacity(comps.iter().map(|c| c.len() + 1).sum());
        let mut starts = Vec::new();
        let mut lens = Vec::new();
        for (k, c) in comps.iter().enumerate() {
            if let Some(&bad) = c.iter().find(|&&x| x < SYM_OFFSET) {
                return Err(Error::BadParameter(format!("symbol {bad} collides with sentinels")));
            }
            starts.push(syms.len());
            lens.push(c.len());
            syms.extend_from_slice(c);
            syms.push(sentinel(k));
        }
        Ok(Text { syms, starts, lens })
    }

    pub fn len(&self) -> usize {
        self.syms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    pub fn components(&self) -> usize {
        self.starts.len()
    }

    /// Position of the sentinel that closes component `k`.
    pub fn end(&self, k: usize) -> usize {
        self.starts[k] + self.lens[k]
    }

    /// Component containing position `p` (a sentinel belongs to the component it closes).
    pub fn component_of(&self, p: usize) -> usize {
        self.starts.partition_point(|&s| s <= p) - 1
    }

    pub fn component(&self, k: usize) -> &[Sym] {
        &self.syms[self.starts[k]..self.end(k)]
    }
}

/// Inclusive interval of suffix-array ranks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SaRange {
    pub lo: usize,
    pub hi: usize,
}

impl SaRange {
    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A possibly implicit node: it lies on the edge entering `node`, at string depth `depth`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeHandle {
    pub node: usize,
    pub depth: usize,
}

/// Prefix of a heavy path from its top down to `bottom`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathFragment {
    pub path: usize,
    pub top: usize,
    pub bottom: usize,
}

/// A substring of the indexed text given by one of its occurrences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Piece {
    pub pos: usize,
    pub len: usize,
}

/// Which end of a concatenation `longest_affix` grows from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Prefix,
    Suffix,
}

pub const ROOT: usize = 0;

/// Generalized suffix array and suffix tree over a [`Text`].
#[derive(Debug, Clone)]
pub struct Gst {
    pub text: Text,
    pub idx: LceIndex,
    /// LCE index over the reversed symbol sequence
    pub rev: LceIndex,
    parent: Vec<u32>,
    depth: Vec<u32>,
    lo: Vec<u32>,
    hi: Vec<u32>,
    child_start: Vec<u32>,
    child_list: Vec<u32>,
    leaf_of_pos: Vec<u32>,
    path_of: Vec<u32>,
    pos_in_path: Vec<u32>,
    paths: Vec<Vec<u32>>,
    path_level: Vec<u8>,
    /// `comp_prefix[k][r]`: suffixes of component `k` among ranks `< r`
    comp_prefix: Vec<Vec<u32>>,
    /// sorted ranks of the suffixes of each component
    comp_ranks: Vec<Vec<u32>>,
}

/// Build the index of `s` (and `t`, if given) as byte strings.
pub fn build_gst(s: &[u8], t: Option<&[u8]>) -> Result<Gst> {
    if s.len() + t.map_or(0, |t| t.len()) == 0 {
        return Err(Error::EmptyInput);
    }
    let es = encode(s);
    match t {
        Some(t) => Gst::new(&[&es, &encode(t)]),
        None => Gst::new(&[&es]),
    }
}

impl Gst {
    pub fn new(comps: &[&[Sym]]) -> Result<Self> {
        let text = Text::from_components(comps)?;
        if text.is_empty() {
            return Err(Error::EmptyInput);
        }
        let idx = LceIndex::new(&text.syms);
        let rsyms: Vec<Sym> = text.syms.iter().rev().copied().collect();
        let rev = LceIndex::new(&rsyms);
        let mut g = Gst {
            text,
            idx,
            rev,
            parent: Vec::new(),
            depth: Vec::new(),
            lo: Vec::new(),
            hi: Vec::new(),
            child_start: Vec::new(),
            child_list: Vec::new(),
            leaf_of_pos: Vec::new(),
            path_of: Vec::new(),
            pos_in_path: Vec::new(),
            paths: Vec::new(),
            path_level: Vec::new(),
            comp_prefix: Vec::new(),
            comp_ranks: Vec::new(),
        };
        g.build_tree();
        g.build_heavy_paths();
        g.build_component_counts();
        Ok(g)
    }

    fn build_tree(&mut self) {
        let n = self.text.len();
        let lcp = self.idx.lcp.values();
        let mut parent = vec![u32::MAX];
        let mut depth = vec![0u32];
        let mut children: Vec<Vec<u32>> = vec![Vec::new()];
        let mut leaf_of_pos = vec![0u32; n];
        let mut stack: Vec<u32> = vec![ROOT as u32];
        for r in 0..n {
            let p = self.idx.sa[r] as usize;
            let l = if r == 0 { 0 } else { lcp[r] };
            let mut last = None;
            while depth[*stack.last().unwrap() as usize] > l {
                last = stack.pop();
            }
            let top = *stack.last().unwrap() as usize;
            if depth[top] < l {
                let child = last.expect("a deeper node was popped");
                let u = depth.len() as u32;
                depth.push(l);
                parent.push(top as u32);
                children.push(vec![child]);
                parent[child as usize] = u;
                *children[top].last_mut().unwrap() = u;
                stack.push(u);
            }
            let top = *stack.last().unwrap() as usize;
            let leaf = depth.len() as u32;
            let k = self.text.component_of(p);
            depth.push((self.text.end(k) - p + 1) as u32);
            parent.push(top as u32);
            children.push(Vec::new());
            children[top].push(leaf);
            leaf_of_pos[p] = leaf;
            stack.push(leaf);
        }
        let m = depth.len();
        let mut lo = vec![0u32; m];
        let mut hi = vec![0u32; m];
        for (p, &leaf) in leaf_of_pos.iter().enumerate() {
            let r = self.idx.isa[p];
            lo[leaf as usize] = r;
            hi[leaf as usize] = r;
        }
        // internal nodes were created after their first child and before the rest,
        // so settle ranges by an explicit post-order walk
        let mut order = Vec::with_capacity(m);
        let mut st = vec![ROOT as u32];
        while let Some(u) = st.pop() {
            order.push(u);
            st.extend(children[u as usize].iter().copied());
        }
        for &u in order.iter().rev() {
            let ch = &children[u as usize];
            if let (Some(&f), Some(&l)) = (ch.first(), ch.last()) {
                lo[u as usize] = lo[f as usize];
                hi[u as usize] = hi[l as usize];
            }
        }
        let mut child_start = Vec::with_capacity(m + 1);
        let mut child_list = Vec::with_capacity(m);
        for ch in &children {
            child_start.push(child_list.len() as u32);
            child_list.extend_from_slice(ch);
        }
        child_start.push(child_list.len() as u32);
        self.parent = parent;
        self.depth = depth;
        self.lo = lo;
        self.hi = hi;
        self.child_start = child_start;
        self.child_list = child_list;
        self.leaf_of_pos = leaf_of_pos;
    }

    fn build_heavy_paths(&mut self) {
        let m = self.node_count();
        self.path_of = vec![0; m];
        self.pos_in_path = vec![0; m];
        let mut st = vec![ROOT];
        while let Some(top) = st.pop() {
            let pid = self.paths.len();
            let mut path = Vec::new();
            let mut v = top;
            loop {
                self.path_of[v] = pid as u32;
                self.pos_in_path[v] = path.len() as u32;
                path.push(v as u32);
                let heavy = self
                    .children(v)
                    .iter()
                    .copied()
                    .max_by_key(|&c| (self.leaves(c as usize), std::cmp::Reverse(c)));
                match heavy {
                    Some(h) => {
                        for &c in self.children(v) {
                            if c != h {
                                st.push(c as usize);
                            }
                        }
                        v = h as usize;
                    }
                    None => break,
                }
            }
            self.path_level.push(self.leaves(top).ilog2() as u8);
            self.paths.push(path);
        }
    }

    fn build_component_counts(&mut self) {
        let n = self.text.len();
        let kc = self.text.components();
        self.comp_prefix = vec![vec![0u32; n + 1]; kc];
        self.comp_ranks = vec![Vec::new(); kc];
        for r in 0..n {
            let k = self.text.component_of(self.idx.sa[r] as usize);
            for (j, pre) in self.comp_prefix.iter_mut().enumerate() {
                pre[r + 1] = pre[r] + (j == k) as u32;
            }
            self.comp_ranks[k].push(r as u32);
        }
    }

    // ---- tree accessors ----

    pub fn node_count(&self) -> usize {
        self.depth.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        (v != ROOT).then(|| self.parent[v] as usize)
    }

    /// String depth `D(v)`.
    pub fn depth(&self, v: usize) -> usize {
        self.depth[v] as usize
    }

    pub fn children(&self, v: usize) -> &[u32] {
        &self.child_list[self.child_start[v] as usize..self.child_start[v + 1] as usize]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.child_start[v] == self.child_start[v + 1]
    }

    /// Number of leaves below `v`.
    pub fn leaves(&self, v: usize) -> usize {
        (self.hi[v] - self.lo[v] + 1) as usize
    }

    /// Leaf of the suffix starting at `p`.
    pub fn leaf(&self, p: usize) -> usize {
        self.leaf_of_pos[p] as usize
    }

    /// Start position of the suffix at leaf `v`.
    pub fn leaf_pos(&self, v: usize) -> usize {
        self.idx.sa[self.lo[v] as usize] as usize
    }

    /// Some text position where the label of `v` occurs.
    pub fn label_pos(&self, v: usize) -> usize {
        self.idx.sa[self.lo[v] as usize] as usize
    }

    /// First symbol of the edge entering `v`.
    pub fn edge_char(&self, v: usize) -> Sym {
        let d = self.parent(v).map_or(0, |p| self.depth(p));
        self.text.syms[self.label_pos(v) + d]
    }

    /// Child of `v` whose edge starts with `c`.
    pub fn child_by_char(&self, v: usize, c: Sym) -> Option<usize> {
        let ch = self.children(v);
        let i = ch.partition_point(|&w| self.edge_char(w as usize) < c);
        (i < ch.len() && self.edge_char(ch[i] as usize) == c).then(|| ch[i] as usize)
    }

    /// Occurrences of the label of `v` that start in component `k`.
    pub fn count_in(&self, k: usize, v: usize) -> usize {
        self.range_count(k, self.node_range(v))
    }

    pub fn node_range(&self, v: usize) -> SaRange {
        SaRange {
            lo: self.lo[v] as usize,
            hi: self.hi[v] as usize,
        }
    }

    /// All nodes, children before parents.
    pub fn postorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.node_count());
        let mut st = vec![ROOT];
        while let Some(u) = st.pop() {
            order.push(u);
            st.extend(self.children(u).iter().map(|&c| c as usize));
        }
        order.reverse();
        order
    }

    /// Start of the suffix at leaf `v` relative to its component, with the component.
    pub fn leaf_local(&self, v: usize) -> (usize, usize) {
        let p = self.leaf_pos(v);
        let k = self.text.component_of(p);
        (k, p - self.text.starts[k])
    }

    pub fn root_handle(&self) -> NodeHandle {
        NodeHandle { node: ROOT, depth: 0 }
    }

    // ---- heavy paths ----

    pub fn path_of(&self, v: usize) -> usize {
        self.path_of[v] as usize
    }

    pub fn path_nodes(&self, pid: usize) -> &[u32] {
        &self.paths[pid]
    }

    pub fn path_count(&self) -> usize {
        self.paths.len()
    }

    pub fn path_top(&self, pid: usize) -> usize {
        self.paths[pid][0] as usize
    }

    /// `floor(log2(leaves under the top))`.
    pub fn path_level(&self, pid: usize) -> u32 {
        self.path_level[pid] as u32
    }

    pub fn pos_in_path(&self, v: usize) -> usize {
        self.pos_in_path[v] as usize
    }

    /// Root-to-`v` path as heavy-path prefixes, ordered from the root down.
    pub fn heavy_decomp_to_root(&self, v: usize) -> Vec<PathFragment> {
        let mut out = Vec::new();
        if v == ROOT {
            return out;
        }
        let mut v = v;
        loop {
            let pid = self.path_of(v);
            let top = self.path_top(pid);
            out.push(PathFragment { path: pid, top, bottom: v });
            match self.parent(top) {
                Some(p) => v = p,
                None => break,
            }
        }
        out.reverse();
        out
    }

    // ---- LCE ----

    fn check_pos(&self, p: usize) -> Result<()> {
        if p >= self.text.len() {
            return Err(Error::OutOfRange { pos: p, len: self.text.len() });
        }
        Ok(())
    }

    /// Longest common prefix of the suffixes starting at `i` and `j`.
    pub fn lce(&self, i: usize, j: usize) -> Result<usize> {
        self.check_pos(i)?;
        self.check_pos(j)?;
        Ok(self.idx.lce(i, j))
    }

    /// Unchecked LCE; positions equal to the text length stand for the empty suffix.
    pub fn lce_raw(&self, i: usize, j: usize) -> usize {
        self.idx.lce(i, j)
    }

    /// Longest common suffix of the prefixes `X[..i]` and `X[..j]`.
    pub fn lce_reverse(&self, i: usize, j: usize) -> Result<usize> {
        let n = self.text.len();
        if i > n || j > n {
            return Err(Error::OutOfRange { pos: i.max(j), len: n });
        }
        Ok(self.lce_reverse_raw(i, j))
    }

    pub fn lce_reverse_raw(&self, i: usize, j: usize) -> usize {
        if i == j {
            return i;
        }
        let n = self.text.len();
        self.rev.lce(n - i, n - j)
    }

    // ---- loci and ranges ----

    /// Locus of `X[i..=j]`.
    pub fn locus(&self, i: usize, j: usize) -> Result<NodeHandle> {
        if i > j {
            return Err(Error::InvalidInterval { lo: i as i64, hi: j as i64 });
        }
        self.check_pos(j)?;
        Ok(self.locus_at(i, j - i + 1))
    }

    /// Locus of the substring of length `len` starting at `p`; `len` must not
    /// run past the sentinel closing the component of `p`.
    pub fn locus_at(&self, p: usize, len: usize) -> NodeHandle {
        if len == 0 {
            return self.root_handle();
        }
        let mut v = self.leaf(p);
        debug_assert!(self.depth(v) >= len);
        loop {
            let pid = self.path_of(v);
            let path = &self.paths[pid];
            let top = path[0] as usize;
            if self.depth(top) >= len {
                let p = self.parent[top] as usize;
                if top != ROOT && self.depth(p) >= len {
                    v = p;
                    continue;
                }
                return NodeHandle { node: top, depth: len };
            }
            let upto = self.pos_in_path(v);
            let k = path[..=upto].partition_point(|&u| self.depth(u as usize) < len);
            return NodeHandle {
                node: path[k] as usize,
                depth: len,
            };
        }
    }

    pub fn sa_range(&self, h: NodeHandle) -> SaRange {
        self.node_range(h.node)
    }

    /// SA range of the single symbol `c`, if it occurs.
    pub fn char_range(&self, c: Sym) -> Option<SaRange> {
        let sa = &self.idx.sa;
        let s = &self.text.syms;
        let lo = sa.partition_point(|&p| s[p as usize] < c);
        let hi = sa.partition_point(|&p| s[p as usize] <= c);
        (lo < hi).then(|| SaRange { lo, hi: hi - 1 })
    }

    /// Range of `UV` from the ranges of `U` and `V`.
    pub fn concat_ranges(&self, ru: SaRange, len_u: usize, rv: SaRange, len_v: usize) -> Option<SaRange> {
        if len_v == 0 {
            return Some(ru);
        }
        let n = self.text.len();
        let key = |k: usize| -> usize {
            let p = self.idx.sa[k] as usize + len_u;
            if p >= n {
                0
            } else {
                self.idx.isa[p] as usize
            }
        };
        let (mut a, mut b) = (ru.lo, ru.hi + 1);
        while a < b {
            let m = (a + b) / 2;
            if key(m) < rv.lo {
                a = m + 1;
            } else {
                b = m;
            }
        }
        let lo = a;
        let mut b = ru.hi + 1;
        while a < b {
            let m = (a + b) / 2;
            if key(m) <= rv.hi {
                a = m + 1;
            } else {
                b = m;
            }
        }
        (lo < a).then(|| SaRange { lo, hi: a - 1 })
    }

    /// Suffixes of component `k` inside the range.
    pub fn range_count(&self, k: usize, r: SaRange) -> usize {
        (self.comp_prefix[k][r.hi + 1] - self.comp_prefix[k][r.lo]) as usize
    }

    pub fn range_hits(&self, k: usize, r: SaRange) -> bool {
        self.range_count(k, r) > 0
    }

    /// Whether the range contains a suffix of the second component.
    #[allow(non_snake_case)]
    pub fn range_hits_T(&self, r: SaRange) -> bool {
        self.text.components() > 1 && self.range_hits(1, r)
    }

    /// Start of some suffix of component `k` inside the range.
    pub fn witness_in(&self, k: usize, r: SaRange) -> Option<usize> {
        let ranks = &self.comp_ranks[k];
        let i = ranks.partition_point(|&x| (x as usize) < r.lo);
        (i < ranks.len() && ranks[i] as usize <= r.hi).then(|| self.idx.sa[ranks[i] as usize] as usize)
    }

    /// Sorted ranks of the suffixes of component `k`.
    pub fn comp_ranks(&self, k: usize) -> &[u32] {
        &self.comp_ranks[k]
    }

    fn piece_range(&self, p: Piece) -> SaRange {
        self.sa_range(self.locus_at(p.pos, p.len))
    }

    /// Longest prefix (or suffix) of the concatenation of `pieces` that occurs in
    /// component `k`. Returns its length and the start of one occurrence.
    pub fn longest_affix(&self, pieces: &[Piece], k: usize, side: Side) -> (usize, usize) {
        let full = self.node_range(ROOT);
        let mut cur = full;
        let mut cur_len = 0usize;
        let default = self.text.starts[k];
        let ordered: Vec<Piece> = match side {
            Side::Prefix => pieces.to_vec(),
            Side::Suffix => pieces.iter().rev().copied().collect(),
        };
        let join = |cur: SaRange, cur_len: usize, p: Piece, l: usize| -> Option<SaRange> {
            let r = match side {
                Side::Prefix => {
                    let pr = self.piece_range(Piece { pos: p.pos, len: l });
                    self.concat_ranges(cur, cur_len, pr, l)
                }
                Side::Suffix => {
                    let pr = self.piece_range(Piece { pos: p.pos + p.len - l, len: l });
                    self.concat_ranges(pr, l, cur, cur_len)
                }
            }?;
            self.range_hits(k, r).then_some(r)
        };
        for p in ordered {
            if p.len == 0 {
                continue;
            }
            if let Some(r) = join(cur, cur_len, p, p.len) {
                cur = r;
                cur_len += p.len;
                continue;
            }
            // largest l < p.len that still occurs
            let (mut a, mut b) = (0usize, p.len - 1);
            while a < b {
                let m = (a + b).div_ceil(2);
                if join(cur, cur_len, p, m).is_some() {
                    a = m;
                } else {
                    b = m - 1;
                }
            }
            if a > 0 {
                cur = join(cur, cur_len, p, a).unwrap();
                cur_len += a;
            }
            break;
        }
        if cur_len == 0 {
            return (0, default);
        }
        (cur_len, self.witness_in(k, cur).unwrap())
    }

    /// Longest prefix or suffix of `UV` occurring in the second component.
    #[allow(non_snake_case)]
    pub fn longest_affix_in_T(&self, u: Piece, v: Piece, side: Side) -> (usize, usize) {
        self.longest_affix(&[u, v], 1, side)
    }
}
