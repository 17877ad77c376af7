//! Suffix array by prefix doubling, Kasai's LCP array and a sparse table for
//! range minima over it.

use crate::Sym;

/// Suffix array of `s` by prefix doubling with two counting-sort passes per round.
pub fn suffix_array(s: &[Sym]) -> Vec<u32> {
    let n = s.len();
    if n == 0 {
        return Vec::new();
    }
    // compress symbols to 0..sigma
    let mut alphabet: Vec<Sym> = s.to_vec();
    alphabet.sort_unstable();
    alphabet.dedup();
    let mut rank: Vec<u32> = s
        .iter()
        .map(|c| alphabet.binary_search(c).unwrap() as u32)
        .collect();
    let mut sa: Vec<u32> = (0..n as u32).collect();
    sa.sort_unstable_by_key(|&i| rank[i as usize]);
    let mut tmp = vec![0u32; n];
    let mut sa2 = vec![0u32; n];
    let mut classes = alphabet.len();
    let mut k = 1usize;
    while classes < n {
        // second key: rank[i + k] (absent sorts first); order suffixes by it
        let mut p = 0;
        for i in (n - k.min(n))..n {
            sa2[p] = i as u32;
            p += 1;
        }
        for &i in &sa {
            if i as usize >= k {
                sa2[p] = i - k as u32;
                p += 1;
            }
        }
        // stable counting sort by first key
        let mut cnt = vec![0usize; classes + 1];
        for &r in &rank {
            cnt[r as usize + 1] += 1;
        }
        for c in 1..=classes {
            cnt[c] += cnt[c - 1];
        }
        for &i in &sa2 {
            let r = rank[i as usize] as usize;
            sa[cnt[r]] = i;
            cnt[r] += 1;
        }
        tmp[sa[0] as usize] = 0;
        let mut c = 0u32;
        for w in 1..n {
            let (a, b) = (sa[w - 1] as usize, sa[w] as usize);
            let ka = (rank[a], if a + k < n { rank[a + k] as i64 } else { -1 });
            let kb = (rank[b], if b + k < n { rank[b + k] as i64 } else { -1 });
            if ka != kb {
                c += 1;
            }
            tmp[b] = c;
        }
        std::mem::swap(&mut rank, &mut tmp);
        classes = c as usize + 1;
        k *= 2;
    }
    sa
}

/// `lcp[r]` = longest common prefix of the suffixes at ranks `r-1` and `r`; `lcp[0] = 0`.
pub fn lcp_array(s: &[Sym], sa: &[u32], isa: &[u32]) -> Vec<u32> {
    let n = s.len();
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = isa[i] as usize;
        if r > 0 {
            let j = sa[r - 1] as usize;
            while i + h < n && j + h < n && s[i + h] == s[j + h] {
                h += 1;
            }
            lcp[r] = h as u32;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}

/// Sparse table answering range minimum (value and leftmost position) in O(1).
#[derive(Debug, Clone)]
pub struct SparseMin {
    levels: Vec<Vec<u32>>, // positions of minima
    vals: Vec<u32>,
}

impl SparseMin {
    pub fn new(vals: Vec<u32>) -> Self {
        let n = vals.len();
        let mut levels = vec![(0..n as u32).collect::<Vec<u32>>()];
        let mut len = 1;
        while 2 * len <= n {
            let prev = levels.last().unwrap();
            let mut cur = Vec::with_capacity(n - 2 * len + 1);
            for i in 0..=n - 2 * len {
                let (a, b) = (prev[i], prev[i + len]);
                cur.push(if vals[b as usize] < vals[a as usize] { b } else { a });
            }
            levels.push(cur);
            len *= 2;
        }
        SparseMin { levels, vals }
    }

    /// Position of the leftmost minimum in `[l, r]` (inclusive, `l <= r`).
    pub fn argmin(&self, l: usize, r: usize) -> usize {
        debug_assert!(l <= r && r < self.vals.len());
        let k = usize::BITS as usize - 1 - (r - l + 1).leading_zeros() as usize;
        let a = self.levels[k][l];
        let b = self.levels[k][r + 1 - (1 << k)];
        if self.vals[b as usize] < self.vals[a as usize] {
            b as usize
        } else {
            a as usize
        }
    }

    pub fn min(&self, l: usize, r: usize) -> u32 {
        self.vals[self.argmin(l, r)]
    }

    pub fn values(&self) -> &[u32] {
        &self.vals
    }
}

/// Sparse table for range maxima over `i64` values (leftmost maximum).
#[derive(Debug, Clone)]
pub struct SparseMax {
    levels: Vec<Vec<u32>>,
    vals: Vec<i64>,
}

impl SparseMax {
    pub fn new(vals: Vec<i64>) -> Self {
        let n = vals.len();
        let mut levels = vec![(0..n as u32).collect::<Vec<u32>>()];
        let mut len = 1;
        while 2 * len <= n {
            let prev = levels.last().unwrap();
            let mut cur = Vec::with_capacity(n - 2 * len + 1);
            for i in 0..=n - 2 * len {
                let (a, b) = (prev[i], prev[i + len]);
                cur.push(if vals[b as usize] > vals[a as usize] { b } else { a });
            }
            levels.push(cur);
            len *= 2;
        }
        SparseMax { levels, vals }
    }

    pub fn argmax(&self, l: usize, r: usize) -> usize {
        debug_assert!(l <= r && r < self.vals.len());
        let k = usize::BITS as usize - 1 - (r - l + 1).leading_zeros() as usize;
        let a = self.levels[k][l];
        let b = self.levels[k][r + 1 - (1 << k)];
        if self.vals[b as usize] > self.vals[a as usize] {
            b as usize
        } else {
            a as usize
        }
    }

    pub fn max(&self, l: usize, r: usize) -> i64 {
        self.vals[self.argmax(l, r)]
    }
}

/// Suffix array, inverse, LCP and O(1) longest-common-extension queries.
#[derive(Debug, Clone)]
pub struct LceIndex {
    pub sa: Vec<u32>,
    pub isa: Vec<u32>,
    pub lcp: SparseMin,
    n: usize,
}

impl LceIndex {
    pub fn new(s: &[Sym]) -> Self {
        let sa = suffix_array(s);
        let mut isa = vec![0u32; s.len()];
        for (r, &p) in sa.iter().enumerate() {
            isa[p as usize] = r as u32;
        }
        let lcp = lcp_array(s, &sa, &isa);
        LceIndex {
            sa,
            isa,
            lcp: SparseMin::new(lcp),
            n: s.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Longest common prefix of the suffixes at `i` and `j`; a position equal to
    /// the text length denotes the empty suffix.
    pub fn lce(&self, i: usize, j: usize) -> usize {
        if i == j {
            return self.n - i;
        }
        if i >= self.n || j >= self.n {
            return 0;
        }
        let (a, b) = (self.isa[i] as usize, self.isa[j] as usize);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.lcp.min(lo + 1, hi) as usize
    }

    /// Minimum LCP value over ranks `(lo, hi]`, i.e. the common prefix length of
    /// all suffixes with ranks in `[lo, hi]`.
    pub fn range_lcp(&self, lo: usize, hi: usize) -> usize {
        if lo >= hi {
            return self.n - self.sa[lo] as usize;
        }
        self.lcp.min(lo + 1, hi) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_sa(s: &[Sym]) -> Vec<u32> {
        let mut v: Vec<u32> = (0..s.len() as u32).collect();
        v.sort_by(|&a, &b| s[a as usize..].cmp(&s[b as usize..]));
        v
    }

    #[test]
    fn sa_matches_naive_sort() {
        let mut seed = 7u64;
        for len in 0..60 {
            for sigma in [1u32, 2, 3, 26] {
                let s: Vec<Sym> = (0..len)
                    .map(|_| {
                        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        ((seed >> 33) as u32) % sigma
                    })
                    .collect();
                assert_eq!(suffix_array(&s), naive_sa(&s));
            }
        }
    }

    #[test]
    fn lce_matches_direct_comparison() {
        let s: Vec<Sym> = b"caabaaacaabaaab".iter().map(|&c| c as Sym).collect();
        let idx = LceIndex::new(&s);
        for i in 0..s.len() {
            for j in 0..s.len() {
                let direct = s[i..].iter().zip(&s[j..]).take_while(|(a, b)| a == b).count();
                assert_eq!(idx.lce(i, j), direct);
            }
        }
    }
}
