//! Orthogonal range-maximum over weighted points and a counting interval tree.

use crate::error::{Error, Result};

/// A point with an integer weight and an opaque payload used to recover answers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPoint {
    pub coords: Vec<i64>,
    pub weight: i64,
    pub payload: u64,
}

/// Inclusive interval on one axis; use `i64::MIN`/`i64::MAX` for open sides.
pub type Span = (i64, i64);

const BUCKET: usize = 256;
const LAST_BLOCK: usize = 8;

// Levels hold point ids sorted by their own axis; coordinates are looked up
// in the flat array instead of being copied into every level.
#[derive(Debug, Clone)]
enum Level {
    Brute(Vec<u32>),
    Tree {
        ids: Vec<u32>,
        root: Node,
    },
    /// sorted ids, with a bottom-up segment tree over the best id of each
    /// block of `LAST_BLOCK` (leaves at `seg[blocks..]`)
    Last {
        ids: Vec<u32>,
        seg: Vec<u32>,
    },
}

#[derive(Debug, Clone)]
struct Node {
    lo: u32,
    hi: u32,
    sub: Box<Level>,
    kids: Option<Box<(Node, Node)>>,
}

/// Layered range tree answering maximum-weight queries over axis-aligned boxes.
#[derive(Debug, Clone)]
pub struct MultiDimRmq {
    dims: usize,
    /// `coords[i * dims + d]`
    coords: Vec<i64>,
    weights: Vec<i64>,
    payloads: Vec<u64>,
    top: Option<Level>,
}

const NONE: u32 = u32::MAX;

impl MultiDimRmq {
    pub fn new(dims: usize, points: Vec<WeightedPoint>) -> Result<Self> {
        if dims == 0 || dims > 6 {
            return Err(Error::BadParameter(format!("dimension {dims} not in 1..=6")));
        }
        if let Some(p) = points.iter().find(|p| p.coords.len() != dims) {
            return Err(Error::BadParameter(format!(
                "point with {} coordinates in a {dims}-dimensional structure",
                p.coords.len()
            )));
        }
        let mut m = MultiDimRmq {
            dims,
            coords: points.iter().flat_map(|p| p.coords.iter().copied()).collect(),
            weights: points.iter().map(|p| p.weight).collect(),
            payloads: points.iter().map(|p| p.payload).collect(),
            top: None,
        };
        drop(points);
        if !m.weights.is_empty() {
            let ids: Vec<u32> = (0..m.weights.len() as u32).collect();
            m.top = Some(m.build(0, ids));
        }
        Ok(m)
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn point(&self, i: usize) -> WeightedPoint {
        WeightedPoint {
            coords: self.coords[i * self.dims..(i + 1) * self.dims].to_vec(),
            weight: self.weights[i],
            payload: self.payloads[i],
        }
    }

    pub fn payload(&self, i: usize) -> u64 {
        self.payloads[i]
    }

    fn coord(&self, i: u32, dim: usize) -> i64 {
        self.coords[i as usize * self.dims + dim]
    }

    fn better(&self, a: u32, b: u32) -> u32 {
        if a == NONE {
            return b;
        }
        if b == NONE {
            return a;
        }
        let (wa, wb) = (self.weights[a as usize], self.weights[b as usize]);
        if wb > wa || (wb == wa && self.payloads[b as usize] < self.payloads[a as usize]) {
            b
        } else {
            a
        }
    }

    fn build(&self, dim: usize, mut ids: Vec<u32>) -> Level {
        if dim + 1 < self.dims && ids.len() <= BUCKET {
            return Level::Brute(ids);
        }
        ids.sort_by_key(|&i| self.coord(i, dim));
        if dim + 1 == self.dims {
            let blocks = ids.len().div_ceil(LAST_BLOCK);
            let mut seg = vec![NONE; blocks];
            seg.extend(ids.chunks(LAST_BLOCK).map(|c| c.iter().fold(NONE, |acc, &i| self.better(acc, i))));
            for i in (1..blocks).rev() {
                seg[i] = self.better(seg[2 * i], seg[2 * i + 1]);
            }
            return Level::Last { ids, seg };
        }
        let root = self.build_node(dim, &ids, 0, ids.len());
        Level::Tree { ids, root }
    }

    fn build_node(&self, dim: usize, ids: &[u32], lo: usize, hi: usize) -> Node {
        let sub = Box::new(self.build(dim + 1, ids[lo..hi].to_vec()));
        let kids = (hi - lo > BUCKET).then(|| {
            let mid = (lo + hi) / 2;
            Box::new((self.build_node(dim, ids, lo, mid), self.build_node(dim, ids, mid, hi)))
        });
        Node {
            lo: lo as u32,
            hi: hi as u32,
            sub,
            kids,
        }
    }

    fn inside(&self, i: u32, dim: usize, bx: &[Span]) -> bool {
        (dim..self.dims).all(|d| {
            let c = self.coord(i, d);
            bx[d].0 <= c && c <= bx[d].1
        })
    }

    /// Range of `sorted` (ids ordered by axis `dim`) inside the box on that axis.
    fn span_of(&self, sorted: &[u32], dim: usize, bx: &[Span]) -> (usize, usize) {
        let l = sorted.partition_point(|&i| self.coord(i, dim) < bx[dim].0);
        let r = sorted.partition_point(|&i| self.coord(i, dim) <= bx[dim].1);
        (l, r)
    }

    fn query_level(&self, lv: &Level, dim: usize, bx: &[Span]) -> u32 {
        match lv {
            Level::Brute(ids) => ids
                .iter()
                .filter(|&&i| self.inside(i, dim, bx))
                .fold(NONE, |acc, &i| self.better(acc, i)),
            Level::Last { ids, seg } => {
                let (l, r) = self.span_of(ids, dim, bx);
                if l >= r {
                    return NONE;
                }
                // partial blocks at both ends, whole blocks through the tree
                let (bl, br) = (l.div_ceil(LAST_BLOCK), r / LAST_BLOCK);
                let fold = |acc, range: std::ops::Range<usize>| ids[range].iter().fold(acc, |a, &i| self.better(a, i));
                if bl > br {
                    return fold(NONE, l..r);
                }
                let mut best = fold(NONE, l..bl * LAST_BLOCK);
                best = fold(best, br * LAST_BLOCK..r);
                let blocks = seg.len() / 2;
                let (mut l, mut r) = (bl + blocks, br + blocks);
                while l < r {
                    if l & 1 == 1 {
                        best = self.better(best, seg[l]);
                        l += 1;
                    }
                    if r & 1 == 1 {
                        r -= 1;
                        best = self.better(best, seg[r]);
                    }
                    l /= 2;
                    r /= 2;
                }
                best
            }
            Level::Tree { ids, root } => {
                let (l, r) = self.span_of(ids, dim, bx);
                if l >= r {
                    return NONE;
                }
                self.query_node(root, l as u32, r as u32, dim, bx)
            }
        }
    }

    fn query_node(&self, node: &Node, l: u32, r: u32, dim: usize, bx: &[Span]) -> u32 {
        if r <= node.lo || node.hi <= l {
            return NONE;
        }
        if l <= node.lo && node.hi <= r {
            return self.query_level(&node.sub, dim + 1, bx);
        }
        match &node.kids {
            Some(k) => {
                let a = self.query_node(&k.0, l, r, dim, bx);
                let b = self.query_node(&k.1, l, r, dim, bx);
                self.better(a, b)
            }
            // small node: scan its points on every remaining axis
            None => self.scan_node(node, dim, bx),
        }
    }

    fn scan_node(&self, node: &Node, dim: usize, bx: &[Span]) -> u32 {
        let mut best = NONE;
        collect_ids(&node.sub, &mut |i| {
            if self.inside(i, dim, bx) {
                best = self.better(best, i);
            }
        });
        best
    }

    /// Index of the heaviest point inside `bx` (ties: smallest payload).
    pub fn query_index(&self, bx: &[Span]) -> Option<usize> {
        assert_eq!(bx.len(), self.dims, "box dimension mismatch");
        if bx.iter().any(|&(a, b)| a > b) {
            return None;
        }
        let top = self.top.as_ref()?;
        let i = self.query_level(top, 0, bx);
        (i != NONE).then_some(i as usize)
    }

    /// Heaviest point inside `bx`.
    pub fn query(&self, bx: &[Span]) -> Option<WeightedPoint> {
        self.query_index(bx).map(|i| self.point(i))
    }
}

fn collect_ids(lv: &Level, f: &mut impl FnMut(u32)) {
    match lv {
        Level::Brute(ids) => ids.iter().for_each(|&i| f(i)),
        Level::Last { ids, .. } => ids.iter().for_each(|&i| f(i)),
        Level::Tree { root, .. } => collect_ids(&root.sub, f),
    }
}

/// Two-dimensional instance of [`MultiDimRmq`].
#[derive(Debug, Clone)]
pub struct PointGridRmq {
    inner: MultiDimRmq,
}

impl PointGridRmq {
    /// Points as `(x, y, weight, payload)`.
    pub fn new(points: &[(i64, i64, i64, u64)]) -> Self {
        let pts = points
            .iter()
            .map(|&(x, y, weight, payload)| WeightedPoint {
                coords: vec![x, y],
                weight,
                payload,
            })
            .collect();
        PointGridRmq {
            inner: MultiDimRmq::new(2, pts).expect("two coordinates per point"),
        }
    }

    pub fn query(&self, x: Span, y: Span) -> Option<WeightedPoint> {
        self.inner.query(&[x, y])
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }
}

/// Counts how many inserted intervals cover a point; coordinates live in a
/// fixed range chosen at construction.
#[derive(Debug, Clone)]
pub struct IntervalTree {
    lo: i64,
    fen: Vec<i32>,
}

impl IntervalTree {
    pub fn new(lo: i64, hi: i64) -> Self {
        let n = (hi - lo + 2).max(1) as usize;
        IntervalTree { lo, fen: vec![0; n + 1] }
    }

    fn add(&mut self, x: i64, v: i32) {
        if x < self.lo {
            return;
        }
        let mut i = (x - self.lo) as usize + 1;
        while i < self.fen.len() {
            self.fen[i] += v;
            i += i & i.wrapping_neg();
        }
    }

    pub fn insert(&mut self, p: i64, q: i64) -> Result<()> {
        if p > q {
            return Err(Error::InvalidInterval { lo: p, hi: q });
        }
        let p = p.max(self.lo);
        if p > q {
            return Ok(());
        }
        self.add(p, 1);
        self.add(q + 1, -1);
        Ok(())
    }

    /// Number of inserted intervals containing `r`.
    pub fn count(&self, r: i64) -> usize {
        if r < self.lo {
            return 0;
        }
        let mut i = ((r - self.lo) as usize + 1).min(self.fen.len() - 1);
        let mut s = 0i64;
        while i > 0 {
            s += self.fen[i] as i64;
            i &= i - 1;
        }
        s as usize
    }
}
