//! Brute-force reference implementations.
//!
//! Every function here works on plain byte strings and follows the definition of
//! the quantity it computes. None of them use the indexes of this crate. Inputs
//! longer than [`LIMIT`] are rejected so that a stray call on a large input fails
//! fast instead of running for minutes.

use crate::error::{Error, Result};
use std::collections::HashSet;

/// Largest input length accepted by the oracles.
pub const LIMIT: usize = 2000;

fn guard(len: usize) -> Result<()> {
    if len > LIMIT {
        Err(Error::TooLarge { len, limit: LIMIT })
    } else {
        Ok(())
    }
}

/// Longest common substring: `(length, start in s, start in t)`, 0-based.
/// For length 0 both starts are 0.
pub fn naive_lcs(s: &[u8], t: &[u8]) -> Result<(usize, usize, usize)> {
    guard(s.len().max(t.len()))?;
    // cur[j] = length of the longest common suffix of s[..i] and t[..j]
    let mut prev = vec![0usize; t.len() + 1];
    let mut cur = vec![0usize; t.len() + 1];
    let mut best = (0, 0, 0);
    for i in 1..=s.len() {
        for j in 1..=t.len() {
            cur[j] = if s[i - 1] == t[j - 1] { prev[j - 1] + 1 } else { 0 };
            if cur[j] > best.0 {
                best = (cur[j], i - cur[j], j - cur[j]);
            }
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(best)
}

/// Longest substring occurring at two distinct starting positions (overlaps
/// allowed): `(length, first start, second start)`.
pub fn naive_repeat(s: &[u8]) -> Result<(usize, usize, usize)> {
    guard(s.len())?;
    let n = s.len();
    // row[j] = lcp of suffixes i and j, for j > i, computed from the row of i+1
    let mut next = vec![0usize; n + 2];
    let mut row = vec![0usize; n + 2];
    let mut best = (0, 0, 0);
    for i in (0..n).rev() {
        for j in (i + 1..n).rev() {
            row[j] = if s[i] == s[j] { next[j + 1] + 1 } else { 0 };
            if row[j] > best.0 {
                best = (row[j], i, j);
            }
        }
        std::mem::swap(&mut next, &mut row);
    }
    Ok(best)
}

/// Longest palindromic substring: `(length, start)`. Empty input gives `(0, 0)`.
pub fn naive_lspal(s: &[u8]) -> Result<(usize, usize)> {
    guard(s.len())?;
    let n = s.len() as i64;
    let mut best = (0usize, 0usize);
    // centers c in 0..2n-1; c even -> odd palindrome around c/2
    for c in 0..(2 * n - 1).max(0) {
        let (mut l, mut r) = (c / 2, (c + 1) / 2);
        while l >= 0 && r < n && s[l as usize] == s[r as usize] {
            l -= 1;
            r += 1;
        }
        let len = (r - l - 1) as usize;
        if len > best.0 {
            best = (len, (l + 1) as usize);
        }
    }
    Ok(best)
}

/// True iff `w` is strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Lyndon factorization as `(start, length)` pairs.
///
/// A factor starts exactly where the suffix is smaller than every suffix that
/// starts earlier; the factors are then the pieces between consecutive starts.
pub fn naive_lf(s: &[u8]) -> Result<Vec<(usize, usize)>> {
    guard(s.len())?;
    let mut starts = Vec::new();
    let mut min_start: Option<usize> = None;
    for i in 0..s.len() {
        let smaller = match min_start {
            None => true,
            Some(m) => s[i..] < s[m..],
        };
        if smaller {
            starts.push(i);
            min_start = Some(i);
        }
    }
    let mut out = Vec::with_capacity(starts.len());
    for (k, &st) in starts.iter().enumerate() {
        let end = starts.get(k + 1).copied().unwrap_or(s.len());
        out.push((st, end - st));
    }
    Ok(out)
}

/// Longest Lyndon substring by exhaustive search: `(length, start)`.
pub fn naive_longest_lyndon(s: &[u8]) -> Result<(usize, usize)> {
    guard(s.len())?;
    let mut best = (0, 0);
    for i in 0..s.len() {
        for j in (i + best.0 + 1)..=s.len() {
            if is_lyndon(&s[i..j]) {
                best = (j - i, i);
            }
        }
    }
    Ok(best)
}

/// Longest `XY` occurring in `w` with `X` a suffix of `u` and `Y` a prefix of `v`.
/// Returns `(|XY|, |X|, start of the occurrence in w)`; among equal lengths the
/// smallest `|X|` is reported.
pub fn naive_three_substrings(u: &[u8], v: &[u8], w: &[u8]) -> Result<(usize, usize, usize)> {
    guard(u.len().max(v.len()).max(w.len()))?;
    let mut best = (0usize, 0usize, 0usize);
    // the split point q separates X = w[q-x..q] from Y = w[q..q+y]
    for q in 0..=w.len() {
        let mut x = 0;
        while x < u.len() && x < q && u[u.len() - 1 - x] == w[q - 1 - x] {
            x += 1;
        }
        let mut y = 0;
        while y < v.len() && q + y < w.len() && v[y] == w[q + y] {
            y += 1;
        }
        for xl in 0..=x {
            // any shorter X is allowed too; keep the smallest |X| at the best total
            let total = xl + y;
            if total > best.0 || (total == best.0 && xl < best.1) {
                best = (total, xl, q - xl);
            }
        }
    }
    Ok(best)
}

fn lcp(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// `max lcp(p1, q1) + lcp(p2, q2)` over all pairs; `None` when a family is empty.
/// Returns the value and the indices of a maximizing pair.
pub fn naive_max_pair_lcp(
    p: &[(Vec<u8>, Vec<u8>)],
    q: &[(Vec<u8>, Vec<u8>)],
) -> Result<Option<(usize, usize, usize)>> {
    let total: usize = p.iter().chain(q).map(|(a, b)| a.len() + b.len()).sum();
    guard(total.min(LIMIT + 1).max(p.len().max(q.len())))?;
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, (p1, p2)) in p.iter().enumerate() {
        for (j, (q1, q2)) in q.iter().enumerate() {
            let val = lcp(p1, q1) + lcp(p2, q2);
            if best.map_or(true, |b| val > b.0) {
                best = Some((val, i, j));
            }
        }
    }
    Ok(best)
}

/// All border lengths of `u` (proper, nonempty), increasing.
pub fn naive_borders(u: &[u8]) -> Result<Vec<usize>> {
    guard(u.len())?;
    Ok((1..u.len()).filter(|&b| u[..b] == u[u.len() - b..]).collect())
}

/// Smallest `p >= 1` with `u[i] == u[i + p]` for all valid `i`.
pub fn naive_period(u: &[u8]) -> Result<usize> {
    guard(u.len())?;
    if u.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok((1..=u.len())
        .find(|&p| (0..u.len() - p).all(|i| u[i] == u[i + p]))
        .unwrap())
}

/// Lengths `l` in `[lo, hi]` such that the length-`l` prefix of `y` is a suffix of `z`.
pub fn naive_prefix_suffix(y: &[u8], z: &[u8], lo: usize, hi: usize) -> Result<Vec<usize>> {
    guard(y.len().max(z.len()))?;
    let top = hi.min(y.len()).min(z.len());
    Ok((lo.max(1)..=top).filter(|&l| y[..l] == z[z.len() - l..]).collect())
}

/// `lcp(p^w x, y)` by building the string.
pub fn naive_lcp_power(p: &[u8], x: &[u8], y: &[u8], w: usize) -> usize {
    let mut s = Vec::with_capacity(p.len() * w + x.len());
    for _ in 0..w {
        s.extend_from_slice(p);
        if s.len() > y.len() {
            break;
        }
    }
    s.extend_from_slice(x);
    lcp(&s, y)
}

/// Reference for heaviest-induced-ancestor queries over the suffix trees of
/// `t^R` and `t` (each with an end marker).
///
/// A node of either tree is identified with its path label. A string is an
/// explicit internal node iff it is empty or is followed by at least two distinct
/// symbols (the end marker counts as a symbol) among its occurrences.
pub struct NaiveHia {
    t: Vec<u8>,
    branching_fwd: HashSet<Vec<u8>>,
    branching_rev: HashSet<Vec<u8>>,
}

fn branching_set(s: &[u8]) -> HashSet<Vec<u8>> {
    let n = s.len();
    let mut set = HashSet::new();
    set.insert(Vec::new());
    for len in 1..=n {
        let mut follow: std::collections::HashMap<&[u8], HashSet<Option<u8>>> =
            std::collections::HashMap::new();
        for st in 0..=n - len {
            follow
                .entry(&s[st..st + len])
                .or_default()
                .insert(s.get(st + len).copied());
        }
        for (k, f) in follow {
            if f.len() >= 2 {
                set.insert(k.to_vec());
            }
        }
    }
    set
}

/// Answer of [`NaiveHia::query`]: depths of the two ancestors and the inducing
/// label (1-based, in `1..=|t|+1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NaiveHiaAnswer {
    pub d1: usize,
    pub d2: usize,
    pub leaf: usize,
}

impl NaiveHia {
    pub fn new(t: &[u8]) -> Result<Self> {
        guard(t.len())?;
        let rev: Vec<u8> = t.iter().rev().copied().collect();
        Ok(NaiveHia {
            branching_fwd: branching_set(t),
            branching_rev: branching_set(&rev),
            t: t.to_vec(),
        })
    }

    /// `a_label` is the label of a node of the tree of `t^R`, `b_label` of the tree
    /// of `t`. The window `[a, b]` is 1-based inclusive. `fixed` forces the first
    /// (1) or second (2) ancestor to be the query node itself, with its depth
    /// taken as the label length.
    pub fn query(
        &self,
        a_label: &[u8],
        b_label: &[u8],
        a: usize,
        b: usize,
        fixed: u8,
    ) -> Option<NaiveHiaAnswer> {
        let n = self.t.len();
        let ok1: Vec<usize> = (0..=a_label.len())
            .filter(|&d| {
                (fixed == 1 && d == a_label.len())
                    || (fixed != 1 && self.branching_rev.contains(&a_label[..d]))
            })
            .collect();
        let ok2: Vec<usize> = (0..=b_label.len())
            .filter(|&d| {
                (fixed == 2 && d == b_label.len())
                    || (fixed != 2 && self.branching_fwd.contains(&b_label[..d]))
            })
            .collect();
        let mut best: Option<NaiveHiaAnswer> = None;
        for i in 1..=n + 1 {
            // the prefix t[1..i-1] read backwards must start with a_label[..d1]
            let mut c1 = 0;
            while c1 < a_label.len() && c1 + 1 < i && self.t[i - 2 - c1] == a_label[c1] {
                c1 += 1;
            }
            let mut c2 = 0;
            while c2 < b_label.len() && i - 1 + c2 < n && self.t[i - 1 + c2] == b_label[c2] {
                c2 += 1;
            }
            let cap1 = c1.min(i.saturating_sub(a));
            if i < a {
                continue;
            }
            if i > b + 1 {
                continue;
            }
            let cap2 = c2.min(b + 1 - i);
            let d1 = ok1.iter().rev().find(|&&d| d <= cap1);
            let d2 = ok2.iter().rev().find(|&&d| d <= cap2);
            if let (Some(&d1), Some(&d2)) = (d1, d2) {
                let cand = NaiveHiaAnswer { d1, d2, leaf: i };
                let better = match best {
                    None => true,
                    Some(bb) => {
                        d1 + d2 > bb.d1 + bb.d2 || (d1 + d2 == bb.d1 + bb.d2 && d1 < bb.d1)
                    }
                };
                if better {
                    best = Some(cand);
                }
            }
        }
        best
    }
}

/// Convenience wrapper around [`NaiveHia`] for a single query.
pub fn naive_hia(
    t: &[u8],
    a_label: &[u8],
    b_label: &[u8],
    window: (usize, usize),
    fixed: u8,
) -> Result<Option<NaiveHiaAnswer>> {
    Ok(NaiveHia::new(t)?.query(a_label, b_label, window.0, window.1, fixed))
}

/// Number of distinct strings of each length `0..=d` occurring in both lists of
/// segments (each segment is a maximal valid piece of the respective string).
pub fn naive_common_counts(s_segs: &[&[u8]], t_segs: &[&[u8]], d: usize) -> Result<Vec<usize>> {
    let mut out = vec![0usize; d + 1];
    out[0] = 1;
    for len in 1..=d {
        let collect = |segs: &[&[u8]]| -> HashSet<Vec<u8>> {
            let mut set = HashSet::new();
            for seg in segs {
                if seg.len() >= len {
                    for st in 0..=seg.len() - len {
                        set.insert(seg[st..st + len].to_vec());
                    }
                }
            }
            set
        };
        let a = collect(s_segs);
        let b = collect(t_segs);
        out[len] = a.intersection(&b).count();
    }
    Ok(out)
}

/// Number of distinct strings of each length `0..=d` with at least two
/// occurrences in the segments (occurrences in different segments count).
pub fn naive_repeat_counts(segs: &[&[u8]], d: usize) -> Result<Vec<usize>> {
    let mut out = vec![0usize; d + 1];
    let total: usize = segs.iter().map(|s| s.len()).sum();
    out[0] = if total + 1 >= 2 { 1 } else { 0 };
    for len in 1..=d {
        let mut seen: std::collections::HashMap<&[u8], usize> = std::collections::HashMap::new();
        for seg in segs {
            if seg.len() >= len {
                for st in 0..=seg.len() - len {
                    *seen.entry(&seg[st..st + len]).or_default() += 1;
                }
            }
        }
        out[len] = seen.values().filter(|&&c| c >= 2).count();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcs_examples() {
        assert_eq!(naive_lcs(b"caabaaa", b"aaaaaab").unwrap().0, 3);
        assert_eq!(naive_lcs(b"xyz", b"xyz").unwrap().0, 3);
        assert_eq!(naive_lcs(b"ab", b"cd").unwrap().0, 0);
    }

    #[test]
    fn repeat_palindrome_lf_examples() {
        assert_eq!(naive_repeat(b"banana").unwrap().0, 3);
        assert_eq!(naive_lspal(b"baca").unwrap().0, 3);
        let f = naive_lf(b"ccbcebcdbc").unwrap();
        let words: Vec<&[u8]> = f.iter().map(|&(s, l)| &b"ccbcebcdbc"[s..s + l]).collect();
        assert_eq!(words, vec![&b"c"[..], b"c", b"bce", b"bcd", b"bc"]);
    }

    #[test]
    fn lf_factors_are_lyndon_and_non_increasing() {
        let s = b"abaabbabaabbaab";
        let f = naive_lf(s).unwrap();
        for w in f.windows(2) {
            assert!(s[w[0].0..w[0].0 + w[0].1] >= s[w[1].0..w[1].0 + w[1].1]);
        }
        assert!(f.iter().all(|&(st, l)| is_lyndon(&s[st..st + l])));
    }

    #[test]
    fn guard_rejects_large_inputs() {
        let big = vec![b'a'; LIMIT + 1];
        assert!(naive_lcs(&big, b"a").is_err());
    }

    #[test]
    fn three_substrings_examples() {
        assert_eq!(naive_three_substrings(b"ban", b"ana", b"banana").unwrap().0, 6);
        assert_eq!(naive_three_substrings(b"nan", b"nas", b"banana").unwrap().0, 3);
    }

    #[test]
    fn borders_and_period() {
        assert_eq!(naive_borders(b"aabaa").unwrap(), vec![1, 2]);
        assert_eq!(naive_period(b"aabaab").unwrap(), 3);
        assert_eq!(naive_period(b"aaaa").unwrap(), 1);
    }

    #[test]
    fn lcp_power_example() {
        let got: Vec<usize> = (0..6).map(|w| naive_lcp_power(b"ab", b"aa", b"abababaa", w)).collect();
        assert_eq!(got, vec![1, 3, 5, 8, 7, 7]);
    }
}
