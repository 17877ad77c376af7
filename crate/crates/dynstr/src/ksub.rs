//! Strings after a few edits, stored as fragment lists over a frozen base text,
//! with fingerprint-based LCE between them and exact LCE under substitutions.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::core_index::Gst;
use crate::error::{Error, Result};
use crate::Sym;

const MODS: [u64; 2] = [(1 << 61) - 1, (1 << 61) - 31];

/// Default seed for the hash bases; tests and the CLI pin it.
pub const DEFAULT_SEED: u64 = 0x5eed_1234_abcd_0001;

type Fp = [u64; 2];

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Two polynomial hash functions with random bases, shared by all texts that
/// need comparable fingerprints.
#[derive(Debug)]
pub struct Hasher {
    seed: u64,
    base: Fp,
    pow: Vec<Fp>,
}

impl Hasher {
    pub fn new(seed: u64, max_len: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = [rng.gen_range(1 << 20..MODS[0] - 1), rng.gen_range(1 << 20..MODS[1] - 1)];
        let mut pow = Vec::with_capacity(max_len + 1);
        pow.push([1, 1]);
        for i in 0..max_len {
            let p: Fp = pow[i];
            pow.push([mulmod(p[0], base[0], MODS[0]), mulmod(p[1], base[1], MODS[1])]);
        }
        Hasher { seed, base, pow }
    }

    /// Seed the bases were drawn from; rebuilt indexes reuse it.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn pow(&self, e: usize) -> Fp {
        if let Some(p) = self.pow.get(e) {
            return *p;
        }
        let mut out = [1u64, 1];
        for h in 0..2 {
            let (mut b, mut e) = (self.base[h], e);
            while e > 0 {
                if e & 1 == 1 {
                    out[h] = mulmod(out[h], b, MODS[h]);
                }
                b = mulmod(b, b, MODS[h]);
                e >>= 1;
            }
        }
        out
    }

    /// Fingerprint of `a` followed by a string of length `len_b` with fingerprint `b`.
    fn concat(&self, a: Fp, b: Fp, len_b: usize) -> Fp {
        let p = self.pow(len_b);
        [0, 1].map(|h| (mulmod(a[h], p[h], MODS[h]) + b[h]) % MODS[h])
    }

    /// Fingerprint of the suffix of length `len_b` of a string with fingerprint
    /// `whole`, whose prefix has fingerprint `pre`.
    fn strip(&self, whole: Fp, pre: Fp, len_b: usize) -> Fp {
        let p = self.pow(len_b);
        [0, 1].map(|h| (whole[h] + MODS[h] - mulmod(pre[h], p[h], MODS[h])) % MODS[h])
    }

    fn single(&self, c: Sym) -> Fp {
        [c as u64 % MODS[0], c as u64 % MODS[1]]
    }
}

/// A frozen text with prefix fingerprints.
#[derive(Debug)]
pub struct BaseText {
    pub syms: Vec<Sym>,
    pre: Vec<Fp>,
    pub hasher: Arc<Hasher>,
}

impl BaseText {
    pub fn new(syms: Vec<Sym>, hasher: Arc<Hasher>) -> Arc<Self> {
        let mut pre = Vec::with_capacity(syms.len() + 1);
        pre.push([0, 0]);
        for &c in &syms {
            let last = *pre.last().unwrap();
            pre.push(hasher.concat(last, hasher.single(c), 1));
        }
        Arc::new(BaseText { syms, pre, hasher })
    }

    /// The same text read backwards, hashed with the same functions.
    pub fn reversed(&self) -> Arc<Self> {
        BaseText::new(self.syms.iter().rev().copied().collect(), self.hasher.clone())
    }

    pub fn len(&self) -> usize {
        self.syms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    fn range(&self, start: usize, len: usize) -> Fp {
        self.hasher.strip(self.pre[start + len], self.pre[start], len)
    }
}

/// A piece of a k-substring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fragment {
    /// `base[start..start + len]`
    Ref { start: usize, len: usize },
    /// one symbol not taken from the base
    Char(Sym),
}

impl Fragment {
    pub fn len(&self) -> usize {
        match *self {
            Fragment::Ref { len, .. } => len,
            Fragment::Char(_) => 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EditKind {
    Sub,
    Ins,
    Del,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    S,
    T,
}

/// One edit of a script; `pos` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EditOp {
    pub target: Target,
    pub kind: EditKind,
    pub pos: usize,
    pub ch: u8,
}

/// Concatenation of fragments over a base text.
#[derive(Debug, Clone)]
pub struct KSubstring {
    base: Arc<BaseText>,
    frags: Vec<Fragment>,
    /// `ends[f]`: total length of fragments `0..=f`
    ends: Vec<usize>,
    /// `fh[f]`: fingerprint of fragments `0..f`
    fh: Vec<Fp>,
}

impl KSubstring {
    /// The whole base text as a single fragment.
    pub fn whole(base: Arc<BaseText>) -> Self {
        let n = base.len();
        Self::from_fragments(base, vec![Fragment::Ref { start: 0, len: n }])
    }

    /// `base[start..start + len]` as a single fragment.
    pub fn slice(base: Arc<BaseText>, start: usize, len: usize) -> Self {
        Self::from_fragments(base, vec![Fragment::Ref { start, len }])
    }

    pub fn from_fragments(base: Arc<BaseText>, frags: Vec<Fragment>) -> Self {
        let frags: Vec<Fragment> = frags.into_iter().filter(|f| !f.is_empty()).collect();
        let mut ends = Vec::with_capacity(frags.len());
        let mut fh = Vec::with_capacity(frags.len() + 1);
        fh.push([0, 0]);
        let mut total = 0;
        for f in &frags {
            debug_assert!(match *f {
                Fragment::Ref { start, len } => start + len <= base.len(),
                Fragment::Char(_) => true,
            });
            total += f.len();
            ends.push(total);
            let h = Self::frag_hash(&base, f, 0, f.len());
            let last = *fh.last().unwrap();
            fh.push(base.hasher.concat(last, h, f.len()));
        }
        KSubstring { base, frags, ends, fh }
    }

    fn frag_hash(base: &BaseText, f: &Fragment, off: usize, len: usize) -> Fp {
        match *f {
            Fragment::Ref { start, .. } => base.range(start + off, len),
            Fragment::Char(c) => {
                if len == 0 {
                    [0, 0]
                } else {
                    base.hasher.single(c)
                }
            }
        }
    }

    pub fn base(&self) -> &Arc<BaseText> {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.ends.last().copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn fragments(&self) -> &[Fragment] {
        &self.frags
    }

    /// Start offset of fragment `f`.
    pub fn frag_start(&self, f: usize) -> usize {
        if f == 0 {
            0
        } else {
            self.ends[f - 1]
        }
    }

    /// Fragment containing position `p` and the offset inside it.
    pub fn locate(&self, p: usize) -> (usize, usize) {
        let f = self.ends.partition_point(|&e| e <= p);
        (f, p - self.frag_start(f))
    }

    fn check(&self, p: usize) -> Result<()> {
        if p >= self.len() {
            return Err(Error::OutOfRange { pos: p, len: self.len() });
        }
        Ok(())
    }

    /// Symbol at 0-based position `p`.
    pub fn char_at(&self, p: usize) -> Result<Sym> {
        self.check(p)?;
        Ok(self.sym(p))
    }

    pub(crate) fn sym(&self, p: usize) -> Sym {
        let (f, o) = self.locate(p);
        match self.frags[f] {
            Fragment::Ref { start, .. } => self.base.syms[start + o],
            Fragment::Char(c) => c,
        }
    }

    pub fn materialize(&self) -> Vec<Sym> {
        let mut out = Vec::with_capacity(self.len());
        for f in &self.frags {
            match *f {
                Fragment::Ref { start, len } => out.extend_from_slice(&self.base.syms[start..start + len]),
                Fragment::Char(c) => out.push(c),
            }
        }
        out
    }

    /// Fingerprint of `self[i..i + len]`.
    pub fn fingerprint(&self, i: usize, len: usize) -> [u64; 2] {
        if len == 0 {
            return [0, 0];
        }
        let hs = &self.base.hasher;
        let (f1, o1) = self.locate(i);
        let (f2, o2) = self.locate(i + len - 1);
        if f1 == f2 {
            return Self::frag_hash(&self.base, &self.frags[f1], o1, len);
        }
        let l1 = self.frags[f1].len() - o1;
        let head = Self::frag_hash(&self.base, &self.frags[f1], o1, l1);
        let mid_len = self.frag_start(f2) - self.ends[f1];
        let mid = hs.strip(self.fh[f2], self.fh[f1 + 1], mid_len);
        let tail = Self::frag_hash(&self.base, &self.frags[f2], 0, o2 + 1);
        hs.concat(hs.concat(head, mid, mid_len), tail, o2 + 1)
    }

    /// Apply an edit at 0-based position `p`; `c` is ignored for deletions.
    pub fn edit(&self, kind: EditKind, p: usize, c: Sym) -> Result<KSubstring> {
        let n = self.len();
        let limit = if kind == EditKind::Ins { n + 1 } else { n };
        if p >= limit {
            return Err(Error::OutOfRange { pos: p, len: n });
        }
        let mut frags = Vec::with_capacity(self.frags.len() + 2);
        if kind == EditKind::Ins && p == n {
            frags.extend_from_slice(&self.frags);
            frags.push(Fragment::Char(c));
            return Ok(Self::from_fragments(self.base.clone(), frags));
        }
        let (f, o) = self.locate(p);
        frags.extend_from_slice(&self.frags[..f]);
        match (self.frags[f], kind) {
            (Fragment::Char(_), EditKind::Sub) => frags.push(Fragment::Char(c)),
            (Fragment::Char(_), EditKind::Del) => {}
            (old @ Fragment::Char(_), EditKind::Ins) => {
                frags.push(Fragment::Char(c));
                frags.push(old);
            }
            (Fragment::Ref { start, len }, kind) => {
                frags.push(Fragment::Ref { start, len: o });
                let rest = match kind {
                    EditKind::Sub => {
                        frags.push(Fragment::Char(c));
                        o + 1
                    }
                    EditKind::Del => o + 1,
                    EditKind::Ins => {
                        frags.push(Fragment::Char(c));
                        o
                    }
                };
                frags.push(Fragment::Ref {
                    start: start + rest,
                    len: len - rest,
                });
            }
        }
        frags.extend_from_slice(&self.frags[f + 1..]);
        Ok(Self::from_fragments(self.base.clone(), frags))
    }

    /// Apply a script edit (1-based position); the target field is not consulted.
    pub fn apply_edit(&self, e: &EditOp) -> Result<KSubstring> {
        if e.pos == 0 {
            return Err(Error::OutOfRange { pos: 0, len: self.len() });
        }
        self.edit(e.kind, e.pos - 1, crate::core_index::encode(&[e.ch])[0])
    }

    /// The reversed string over `rev_base`, which must be the reversal of this base.
    pub fn reversed(&self, rev_base: &Arc<BaseText>) -> KSubstring {
        debug_assert_eq!(rev_base.len(), self.base.len());
        let n = self.base.len();
        let frags = self
            .frags
            .iter()
            .rev()
            .map(|f| match *f {
                Fragment::Ref { start, len } => Fragment::Ref {
                    start: n - start - len,
                    len,
                },
                c => c,
            })
            .collect();
        Self::from_fragments(rev_base.clone(), frags)
    }
}

/// Longest common prefix of `a[i..]` and `b[j..]` by binary search on
/// fingerprints. The answer is checked by one symbol comparison at the
/// mismatch; a failed check (a hash collision) falls back to a direct scan.
pub fn lce_ksub(a: &KSubstring, i: usize, b: &KSubstring, j: usize) -> usize {
    if i >= a.len() || j >= b.len() {
        return 0;
    }
    let cap = (a.len() - i).min(b.len() - j);
    // gallop first so short answers stay cheap
    let mut lo = 0usize;
    let mut step = 1usize;
    let mut hi = cap;
    while lo < cap {
        let probe = (lo + step).min(cap);
        if a.fingerprint(i, probe) == b.fingerprint(j, probe) {
            lo = probe;
            step *= 2;
        } else {
            hi = probe - 1;
            break;
        }
    }
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if a.fingerprint(i, mid) == b.fingerprint(j, mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    if lo < cap && a.sym(i + lo) == b.sym(j + lo) {
        return scan_lce(a, i, b, j);
    }
    lo
}

/// Direct symbol-by-symbol LCE, used for verification.
pub fn scan_lce(a: &KSubstring, i: usize, b: &KSubstring, j: usize) -> usize {
    let mut l = 0;
    while i + l < a.len() && j + l < b.len() && a.sym(i + l) == b.sym(j + l) {
        l += 1;
    }
    l
}

/// [`lce_ksub`] followed by a full direct check.
pub fn lce_ksub_verified(a: &KSubstring, i: usize, b: &KSubstring, j: usize) -> usize {
    let l = lce_ksub(a, i, b, j);
    let s = scan_lce(a, i, b, j);
    assert_eq!(l, s, "fingerprint collision");
    l
}

/// LCE in the indexed text after the given substitutions (sorted by position,
/// positions distinct), with one static LCE per substitution passed.
pub fn kangaroo_lce(g: &Gst, subs: &[(usize, Sym)], i: usize, j: usize) -> Result<usize> {
    if subs.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(Error::Unsorted);
    }
    let n = g.text.len();
    if i > n || j > n {
        return Err(Error::OutOfRange { pos: i.max(j), len: n });
    }
    let sym = |p: usize| -> Sym {
        match subs.binary_search_by_key(&p, |s| s.0) {
            Ok(k) => subs[k].1,
            Err(_) => g.text.syms[p],
        }
    };
    let next = |p: usize| -> usize {
        let k = subs.partition_point(|s| s.0 < p);
        subs.get(k).map_or(usize::MAX, |s| s.0)
    };
    if i == j {
        return Ok(n - i);
    }
    let mut acc = 0usize;
    loop {
        let (x, y) = (i + acc, j + acc);
        if x >= n || y >= n {
            return Ok(acc);
        }
        let gap = (next(x) - x).min(next(y) - y);
        let l = g.lce_raw(x, y);
        if l < gap {
            return Ok(acc + l);
        }
        acc += gap;
        let (x, y) = (i + acc, j + acc);
        if x >= n || y >= n || sym(x) != sym(y) {
            return Ok(acc);
        }
        acc += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_index::{build_gst, encode};
    use proptest::prelude::*;
    use rand::Rng;

    fn base(s: &[u8]) -> Arc<BaseText> {
        BaseText::new(encode(s), Arc::new(Hasher::new(DEFAULT_SEED, 1000)))
    }

    fn naive_edit(s: &mut Vec<Sym>, kind: EditKind, p: usize, c: Sym) {
        match kind {
            EditKind::Sub => s[p] = c,
            EditKind::Ins => s.insert(p, c),
            EditKind::Del => {
                s.remove(p);
            }
        }
    }

    fn sym(c: u8) -> Sym {
        encode(&[c])[0]
    }

    #[test]
    fn split_rules() {
        let b = base(b"abcdefghij");
        let k = KSubstring::whole(b.clone());
        let e = EditOp { target: Target::S, kind: EditKind::Ins, pos: 4, ch: b'x' };
        let k2 = k.apply_edit(&e).unwrap();
        assert_eq!(
            k2.fragments(),
            &[
                Fragment::Ref { start: 0, len: 3 },
                Fragment::Char(sym(b'x')),
                Fragment::Ref { start: 3, len: 7 }
            ]
        );
        let k3 = k2.edit(EditKind::Sub, 3, sym(b'y')).unwrap();
        assert_eq!(k3.fragments().len(), 3);
        assert_eq!(k3.fragments()[1], Fragment::Char(sym(b'y')));
        let k4 = k3.edit(EditKind::Del, 3, 0).unwrap();
        assert_eq!(k4.fragments().len(), 2);
        assert_eq!(k4.materialize(), encode(b"abcdefghij"));
        assert!(k4.edit(EditKind::Sub, 10, 0).is_err());
        assert!(k4.edit(EditKind::Ins, 10, sym(b'z')).is_ok());
    }

    #[test]
    fn example_substitution() {
        let k = KSubstring::whole(base(b"caabaaa"));
        let e = EditOp { target: Target::S, kind: EditKind::Sub, pos: 4, ch: b'a' };
        let k = k.apply_edit(&e).unwrap();
        assert_eq!(k.materialize(), encode(b"caaaaaa"));
        assert_eq!(k.char_at(3).unwrap(), sym(b'a'));
        assert!(k.char_at(7).is_err());
        let s = KSubstring::slice(base(b"xcaabaaax"), 1, 7);
        assert_eq!(s.materialize(), encode(b"caabaaa"));
    }

    #[test]
    fn example_lce() {
        let hs = Arc::new(Hasher::new(DEFAULT_SEED, 100));
        let s = BaseText::new(encode(b"caabaaa"), hs.clone());
        let t = BaseText::new(encode(b"aaaaaab"), hs);
        let s2 = KSubstring::whole(s).edit(EditKind::Sub, 3, sym(b'a')).unwrap();
        assert_eq!(s2.fragments().len(), 3);
        let t2 = KSubstring::whole(t);
        assert_eq!(lce_ksub_verified(&s2, 1, &t2, 0), 6);
        assert_eq!(lce_ksub(&s2, 2, &s2, 2), 5);
    }

    #[test]
    fn kangaroo_examples() {
        let g = build_gst(b"aaaaaaaa", None).unwrap();
        assert_eq!(kangaroo_lce(&g, &[], 0, 2).unwrap(), g.lce(0, 2).unwrap());
        let subs = [(4usize, sym(b'b'))];
        // aaaabaaa#: suffixes at 0 and 1 agree for 3 symbols
        assert_eq!(kangaroo_lce(&g, &subs, 0, 1).unwrap(), 3);
        assert_eq!(kangaroo_lce(&g, &subs, 0, 5).unwrap(), 3);
        assert!(kangaroo_lce(&g, &[(3, 70), (1, 70)], 0, 1).is_err());
    }

    #[test]
    fn kangaroo_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let s: Vec<u8> = (0..80).map(|_| b"ab"[rng.gen_range(0..2)]).collect();
            let g = build_gst(&s, None).unwrap();
            let mut pos: Vec<usize> = (0..5).map(|_| rng.gen_range(0..s.len())).collect();
            pos.sort_unstable();
            pos.dedup();
            let subs: Vec<(usize, Sym)> = pos.iter().map(|&p| (p, sym(b"ab"[rng.gen_range(0..2)]))).collect();
            let mut x = g.text.syms.clone();
            for &(p, c) in &subs {
                x[p] = c;
            }
            for _ in 0..50 {
                let i = rng.gen_range(0..x.len());
                let j = rng.gen_range(0..x.len());
                let direct = x[i..].iter().zip(&x[j..]).take_while(|(a, b)| a == b).count();
                assert_eq!(kangaroo_lce(&g, &subs, i, j).unwrap(), direct);
            }
        }
    }

    fn edit_strategy() -> impl Strategy<Value = Vec<(u8, usize, u8)>> {
        proptest::collection::vec((0u8..3, 0usize..1000, prop_oneof![Just(b'a'), Just(b'b'), Just(b'c')]), 0..25)
    }

    proptest! {
        #[test]
        fn edits_match_naive(s in "[abc]{0,30}", ops in edit_strategy()) {
            let b = base(s.as_bytes());
            let mut k = KSubstring::whole(b);
            let mut naive = encode(s.as_bytes());
            let mut applied = 0;
            for (kind, p, c) in ops {
                let kind = [EditKind::Sub, EditKind::Ins, EditKind::Del][kind as usize];
                let limit = naive.len() + (kind == EditKind::Ins) as usize;
                if limit == 0 { continue; }
                let p = p % limit;
                k = k.edit(kind, p, sym(c)).unwrap();
                naive_edit(&mut naive, kind, p, sym(c));
                applied += 1;
                prop_assert_eq!(k.materialize(), naive.clone());
                prop_assert!(k.fragments().len() <= 2 * applied + 1);
            }
        }

        #[test]
        fn lce_matches_naive(s in "[ab]{1,40}", t in "[ab]{1,40}", ops in edit_strategy(), q in proptest::collection::vec((0usize..100, 0usize..100), 30)) {
            let hs = Arc::new(Hasher::new(DEFAULT_SEED, 10));
            let bs = BaseText::new(encode(s.as_bytes()), hs.clone());
            let bt = BaseText::new(encode(t.as_bytes()), hs);
            let mut a = KSubstring::whole(bs);
            let b = KSubstring::whole(bt.clone()).edit(EditKind::Ins, 0, sym(b'b')).unwrap();
            for (kind, p, c) in ops {
                let kind = [EditKind::Sub, EditKind::Ins, EditKind::Del][kind as usize];
                let limit = a.len() + (kind == EditKind::Ins) as usize;
                if limit == 0 { continue; }
                a = a.edit(kind, p % limit, sym(c)).unwrap();
            }
            let (xa, xb) = (a.materialize(), b.materialize());
            for (i, j) in q {
                let i = i % (xa.len() + 1);
                let j = j % (xb.len() + 1);
                let direct = xa[i.min(xa.len())..].iter().zip(&xb[j..]).take_while(|(x, y)| x == y).count();
                prop_assert_eq!(lce_ksub(&a, i, &b, j), direct);
            }
            let ra = a.reversed(&a.base().reversed());
            let mut rev = xa.clone();
            rev.reverse();
            prop_assert_eq!(ra.materialize(), rev);
        }
    }
}
