use super::*;
use crate::core_index::encode;
use crate::oracle;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn six_cover_of_twenty() {
    let dc = DifferenceCover::new(6, 20).unwrap();
    assert_eq!(dc.members(), &[2, 3, 5, 8, 9, 11, 14, 15, 17, 20]);
    assert_eq!(dc.h(4, 11), 4);
}

#[test]
fn unit_cover_takes_everything() {
    let dc = DifferenceCover::new(1, 9).unwrap();
    assert_eq!(dc.members(), &(1..=9).collect::<Vec<_>>()[..]);
    assert_eq!(dc.h(3, 7), 0);
    assert!(DifferenceCover::new(0, 5).is_err());
}

#[test]
fn cover_property_everywhere() {
    let n = 1000;
    for d in [1, 2, 4, 8, 16, 32, 64, 100] {
        let dc = DifferenceCover::new(d, n).unwrap();
        let bound = 2.0 * (d as f64).sqrt() + 2.0;
        assert!((dc.residues().len() as f64) <= bound, "d={d}");
        for i in 1..=n - d {
            for j in 1..=n - d {
                let h = dc.h(i, j);
                assert!(h < d);
                assert!(dc.contains(i + h) && dc.contains(j + h), "d={d} i={i} j={j}");
            }
        }
    }
}

/// Text holding the given strings, and a piece per string.
fn family_text(strings: &[Vec<u8>]) -> (LceIndex, Vec<Piece>) {
    let comps: Vec<Vec<Sym>> = strings.iter().map(|s| encode(s)).collect();
    let refs: Vec<&[Sym]> = comps.iter().map(|c| &c[..]).collect();
    let text = Text::from_components(&refs).unwrap();
    let pieces = (0..strings.len()).map(|k| Piece { pos: text.starts[k], len: text.lens[k] }).collect();
    (LceIndex::new(&text.syms), pieces)
}

fn families(p: &[(&[u8], &[u8])], q: &[(&[u8], &[u8])]) -> Option<PairLcp> {
    let all: Vec<Vec<u8>> = p.iter().chain(q).flat_map(|(a, b)| [a.to_vec(), b.to_vec()]).collect();
    let (lce, pieces) = family_text(&all);
    let pp: Vec<(Piece, Piece)> = (0..p.len()).map(|i| (pieces[2 * i], pieces[2 * i + 1])).collect();
    let off = 2 * p.len();
    let qq: Vec<(Piece, Piece)> = (0..q.len()).map(|i| (pieces[off + 2 * i], pieces[off + 2 * i + 1])).collect();
    two_string_families_lcp(&lce, &pp, &qq)
}

#[test]
fn family_examples() {
    assert_eq!(families(&[(b"a", b"b")], &[(b"a", b"b")]).unwrap().value, 2);
    assert_eq!(families(&[(b"ab", b"b")], &[(b"a", b"ab")]).unwrap().value, 1);
    assert_eq!(families(&[], &[(b"a", b"ab")]), None);
}

#[test]
fn trie_depths_are_lcps() {
    let strings: Vec<Vec<u8>> = ["abab", "aba", "ab", "b", "abc", "", "ab", "bba"].iter().map(|s| s.as_bytes().to_vec()).collect();
    let (lce, pieces) = family_text(&strings);
    let trie = FamilyTrie::new(&lce, &pieces);
    let mut parent = vec![usize::MAX; trie.nodes.len()];
    for (v, n) in trie.nodes.iter().enumerate() {
        for &c in &n.children {
            parent[c] = v;
            assert!(trie.nodes[c].depth > n.depth);
        }
    }
    let ancestors = |mut v: usize| {
        let mut out = vec![v];
        while parent[v] != usize::MAX {
            v = parent[v];
            out.push(v);
        }
        out
    };
    for (i, a) in strings.iter().enumerate() {
        assert_eq!(trie.nodes[trie.node_of[i]].depth, a.len());
        for (j, b) in strings.iter().enumerate() {
            let l = a.iter().zip(b).take_while(|(x, y)| x == y).count();
            let up = ancestors(trie.node_of[j]);
            let lca = ancestors(trie.node_of[i]).into_iter().find(|v| up.contains(v)).unwrap();
            assert_eq!(trie.nodes[lca].depth, l);
        }
    }
}

fn counts_of(s: &[u8], t: &[u8], d: usize) -> Vec<usize> {
    BoundedState::new(&[&encode(s), &encode(t)], &[1, 1], d).unwrap().counts_by_len().to_vec()
}

#[test]
fn initial_counts_examples() {
    assert_eq!(counts_of(b"ab", b"ab", 2), vec![1, 2, 1]);
    assert_eq!(counts_of(b"abc", b"xyz", 3), vec![1, 0, 0, 0]);
}

#[test]
fn replacement_examples() {
    let mut st = DecrementalLcs::new(&encode(b"abab"), &encode(b"abab"), Some(2)).unwrap();
    // the bounded answer is capped by d; the full answer sees "bab"
    assert_eq!(st.replace(Side::S, 0).unwrap().len, 3);
    assert_eq!(st.bounded().answer().len, 2);
    assert_eq!(st.replace(Side::S, 2).unwrap().len, 1);
    assert_eq!(st.bounded().answer().len, 1);
    assert!(matches!(st.replace(Side::S, 2), Err(Error::AlreadyReplaced(2))));

    let mut st = DecrementalLcs::new(&encode(b"caabaaa"), &encode(b"aaaaaab"), Some(7)).unwrap();
    assert_eq!(st.current().len, 3);
    assert_eq!(st.replace(Side::S, 3).unwrap().len, 3);

    let mut st = DecrementalLcs::new(&encode(b"abca"), &encode(b"bcab"), None).unwrap();
    let mut last = 0;
    for p in 0..4 {
        last = st.replace(Side::S, p).unwrap().len;
    }
    assert_eq!(last, 0);
}

/// Materialized strings: blocked characters become `blocked`, separators
/// become `sep`; neither symbol occurs in the other string.
fn materialize(base: &[u8], blocked: &[bool], seps: &[bool], blocked_sym: u8, sep: u8) -> Vec<u8> {
    let mut out = Vec::new();
    for (i, &c) in base.iter().enumerate() {
        if seps[i] {
            out.push(sep);
        }
        out.push(if blocked[i] { blocked_sym } else { c });
    }
    out
}

fn segments(m: &[u8], specials: &[u8]) -> Vec<Vec<u8>> {
    m.split(|c| specials.contains(c)).map(|s| s.to_vec()).collect()
}

fn check_answer(ans: &LcsAnswer, ms: &[u8], mt: &[u8], s: &[u8], t: &[u8], st: &DecrementalLcs) {
    let want = oracle::naive_lcs(ms, mt).unwrap().0;
    assert_eq!(ans.len, want, "{:?} {:?}", String::from_utf8_lossy(ms), String::from_utf8_lossy(mt));
    if ans.len > 0 {
        assert_eq!(&s[ans.pos_s..ans.pos_s + ans.len], &t[ans.pos_t..ans.pos_t + ans.len]);
        let (lo, hi) = st.bounded.valid_window(0, ans.pos_s);
        assert!(lo <= ans.pos_s && ans.pos_s + ans.len <= hi);
        let (lo, hi) = st.bounded.valid_window(1, ans.pos_t);
        assert!(lo <= ans.pos_t && ans.pos_t + ans.len <= hi);
    }
}

fn run_stream(seed: u64, n: usize, sigma: u8, d: Option<usize>, steps: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s: Vec<u8> = (0..n).map(|_| b'a' + rng.gen_range(0..sigma)).collect();
    let t: Vec<u8> = (0..rng.gen_range(1..=n)).map(|_| b'a' + rng.gen_range(0..sigma)).collect();
    let mut st = DecrementalLcs::new(&encode(&s), &encode(&t), d).unwrap();
    let d = st.d();
    let mut blocked = [vec![false; s.len()], vec![false; t.len()]];
    let mut seps = [vec![false; s.len()], vec![false; t.len()]];
    for _ in 0..steps {
        let side = if rng.gen_bool(0.5) { Side::S } else { Side::T };
        let c = side.index();
        let len = blocked[c].len();
        let ans = if rng.gen_bool(0.3) {
            let b = rng.gen_range(0..=len);
            if b > 0 && b < len {
                seps[c][b] = true;
            }
            st.separate(side, b).unwrap()
        } else {
            let p = rng.gen_range(0..len);
            if blocked[c][p] {
                assert!(st.replace(side, p).is_err());
                continue;
            }
            blocked[c][p] = true;
            st.replace(side, p).unwrap()
        };
        let ms = materialize(&s, &blocked[0], &seps[0], b'#', b'|');
        let mt = materialize(&t, &blocked[1], &seps[1], b'$', b'%');
        check_answer(&ans, &ms, &mt, &s, &t, &st);
        let a = st.bounded.counts_by_len();
        assert_eq!(a, &st.bounded.counts_from_paths()[..]);
        let ss = segments(&ms, b"#|");
        let tt = segments(&mt, b"$%");
        let sr: Vec<&[u8]> = ss.iter().map(|x| &x[..]).collect();
        let tr: Vec<&[u8]> = tt.iter().map(|x| &x[..]).collect();
        assert_eq!(a, &oracle::naive_common_counts(&sr, &tr, d).unwrap()[..]);
    }
}

#[test]
fn random_streams_small_bound() {
    for seed in 0..30 {
        run_stream(seed, 40, 2, Some(4), 40);
    }
}

#[test]
fn random_streams_default_bound() {
    for seed in 100..150 {
        run_stream(seed, 120, 2, None, 60);
    }
    for seed in 200..210 {
        run_stream(seed, 300, 3, None, 50);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn initial_counts_match_naive(s in "[ab]{0,40}", t in "[ab]{0,40}", d in 1usize..12) {
        let a = counts_of(s.as_bytes(), t.as_bytes(), d);
        prop_assert_eq!(&a, &oracle::naive_common_counts(&[s.as_bytes()], &[t.as_bytes()], d).unwrap());
        let st = BoundedState::new(&[&encode(s.as_bytes()), &encode(t.as_bytes())], &[1, 1], d).unwrap();
        prop_assert_eq!(a, st.counts_from_paths());
    }

    #[test]
    fn families_match_naive(
        p in proptest::collection::vec(("[ab]{0,6}", "[ab]{0,6}"), 0..8),
        q in proptest::collection::vec(("[ab]{0,6}", "[ab]{0,6}"), 0..8),
    ) {
        let pb: Vec<(&[u8], &[u8])> = p.iter().map(|(a, b)| (a.as_bytes(), b.as_bytes())).collect();
        let qb: Vec<(&[u8], &[u8])> = q.iter().map(|(a, b)| (a.as_bytes(), b.as_bytes())).collect();
        let got = families(&pb, &qb);
        let pv: Vec<(Vec<u8>, Vec<u8>)> = pb.iter().map(|(a, b)| (a.to_vec(), b.to_vec())).collect();
        let qv: Vec<(Vec<u8>, Vec<u8>)> = qb.iter().map(|(a, b)| (a.to_vec(), b.to_vec())).collect();
        let want = oracle::naive_max_pair_lcp(&pv, &qv).unwrap();
        prop_assert_eq!(got.map(|g| g.value), want.map(|w| w.0));
        if let Some(g) = got {
            let l = |x: &[u8], y: &[u8]| x.iter().zip(y).take_while(|(a, b)| a == b).count();
            prop_assert_eq!(l(pb[g.p].0, qb[g.q].0), g.first);
            prop_assert_eq!(l(pb[g.p].1, qb[g.q].1), g.second);
        }
    }
}
