use super::*;
use crate::core_index::encode;
use crate::oracle;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bytes(v: &[Sym]) -> Vec<u8> {
    v.iter().map(|&c| (c - 64) as u8).collect()
}

fn sym(b: u8) -> Sym {
    encode(&[b])[0]
}

fn check_witness(a: &RepeatAnswer, s: &[u8]) {
    if a.len > 0 {
        assert!(a.first < a.second && a.second + a.len <= s.len(), "{a:?}");
        assert_eq!(&s[a.first..a.first + a.len], &s[a.second..a.second + a.len], "{a:?}");
    }
}

fn random_string(rng: &mut ChaCha8Rng, len: std::ops::RangeInclusive<usize>, sigma: u8) -> Vec<u8> {
    let len = rng.gen_range(len);
    (0..len).map(|_| b'a' + rng.gen_range(0..sigma)).collect()
}

fn op(kind: EditKind, pos: usize, ch: u8) -> EditOp {
    EditOp { target: Target::S, kind, pos, ch }
}

#[test]
fn bit_split_separates_every_pair() {
    for n in [1usize, 2, 3, 7, 8, 100, 1024] {
        let levels = split_levels(n);
        assert!(levels <= (n as f64).log2().ceil() as u32 + 1);
        for r in 0..n {
            for t in r + 1..n {
                assert!((0..levels).any(|j| odd_block(r, j) != odd_block(t, j)), "{r} {t}");
            }
        }
    }
}

#[test]
fn decremental_examples() {
    let st = DecrementalRepeat::new(&encode(b"banana"), None).unwrap();
    let a = st.current();
    assert_eq!((a.len, a.first, a.second), (3, 1, 3));

    let mut st = DecrementalRepeat::new(&encode(b"abcab"), None).unwrap();
    assert_eq!(st.current().len, 2);
    let a = st.replace(3).unwrap();
    assert_eq!(a.len, 1);
    check_witness(&a, b"abc#b");
    assert!(matches!(st.replace(3), Err(Error::AlreadyReplaced(3))));
    assert!(st.replace(5).is_err());

    let mut st = DecrementalRepeat::new(&encode(b"aaaa"), Some(1)).unwrap();
    assert_eq!(st.current().len, 3);
    let mut last = 3;
    for p in [1, 0, 3, 2] {
        last = st.replace(p).unwrap().len;
    }
    assert_eq!(last, 0);
}

/// Blocked positions become distinct filler symbols, separators a fresh one
/// each, so neither can take part in a repeat.
fn materialize(base: &[u8], blocked: &[bool], seps: &[bool]) -> (Vec<Vec<u8>>, usize) {
    let mut segs = vec![Vec::new()];
    for (i, &c) in base.iter().enumerate() {
        if seps[i] || blocked[i] {
            segs.push(Vec::new());
        }
        if !blocked[i] {
            segs.last_mut().unwrap().push(c);
        }
    }
    let refs: Vec<&[u8]> = segs.iter().map(|s| &s[..]).collect();
    let counts = oracle::naive_repeat_counts(&refs, base.len()).unwrap();
    let best = (1..counts.len()).rev().find(|&l| counts[l] > 0).unwrap_or(0);
    (segs, best)
}

fn run_stream(seed: u64, n: usize, sigma: u8, d: Option<usize>, steps: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s: Vec<u8> = (0..n).map(|_| b'a' + rng.gen_range(0..sigma)).collect();
    let mut st = DecrementalRepeat::new(&encode(&s), d).unwrap();
    let d = st.d();
    let mut blocked = vec![false; n];
    let mut seps = vec![false; n];
    for _ in 0..steps {
        let ans = if rng.gen_bool(0.3) {
            let b = rng.gen_range(0..=n);
            if b > 0 && b < n {
                seps[b] = true;
            }
            st.separate(b).unwrap()
        } else {
            let p = rng.gen_range(0..n);
            if blocked[p] {
                assert!(st.replace(p).is_err());
                continue;
            }
            blocked[p] = true;
            st.replace(p).unwrap()
        };
        let (segs, want) = materialize(&s, &blocked, &seps);
        assert_eq!(ans.len, want, "seed {seed}");
        check_witness(&ans, &s);
        if ans.len > 0 {
            for p in [ans.first, ans.second] {
                let (lo, hi) = st.bounded().valid_window(0, p);
                assert!(lo <= p && p + ans.len <= hi);
            }
        }
        let refs: Vec<&[u8]> = segs.iter().map(|x| &x[..]).collect();
        let counts = st.bounded().counts_by_len();
        assert_eq!(&counts[1..], &oracle::naive_repeat_counts(&refs, d).unwrap()[1..]);
    }
}

#[test]
fn decremental_streams_small_bound() {
    for seed in 0..30 {
        run_stream(seed, 40, 2, Some(4), 40);
    }
}

#[test]
fn decremental_streams_default_bound() {
    for seed in 100..140 {
        run_stream(seed, 150, 2, None, 60);
    }
}

#[test]
fn dynamic_examples() {
    let mut r = DynamicRepeat::new(&encode(b"abcab")).unwrap();
    assert_eq!(r.answer().len, 2);
    let a = r.edit(&op(EditKind::Sub, 4, b'x')).unwrap();
    assert_eq!(a.len, 1);
    check_witness(&a, b"abcxb");
    assert_eq!(DynamicRepeat::new(&encode(b"aaaa")).unwrap().answer().len, 3);
    assert_eq!(DynamicRepeat::new(&encode(b"banana")).unwrap().answer().len, 3);
    assert_eq!(DynamicRepeat::new(&encode(b"abc")).unwrap().answer().len, 0);
    assert!(r.edit(&EditOp { target: Target::T, kind: EditKind::Sub, pos: 1, ch: b'a' }).is_err());
}

/// Longest repeat with an occurrence pair satisfying `keep(p, q, len)`.
fn filtered_repeat(s: &[u8], keep: impl Fn(usize, usize, usize) -> bool) -> usize {
    let mut best = 0;
    for p in 0..s.len() {
        for q in p + 1..s.len() {
            let mut l = 0;
            while q + l < s.len() && s[p + l] == s[q + l] {
                l += 1;
                if l > best && keep(p, q, l) {
                    best = l;
                }
            }
        }
    }
    best
}

#[test]
fn cross_cases_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for round in 0..80 {
        let sigma = [2, 3, 26][round % 3];
        let s = random_string(&mut rng, 1..=40, sigma);
        let ix = RepeatIndex::new(&encode(&s)).unwrap();
        for _ in 0..20 {
            let mut ks = ix.whole();
            for _ in 0..rng.gen_range(0..5) {
                let kind = [EditKind::Sub, EditKind::Ins, EditKind::Del][rng.gen_range(0..3)];
                let n = ks.len();
                if n == 0 && kind != EditKind::Ins {
                    continue;
                }
                let p = rng.gen_range(0..if kind == EditKind::Ins { n + 1 } else { n });
                ks = ks.edit(kind, p, sym(b'a' + rng.gen_range(0..sigma))).unwrap();
            }
            let m = bytes(&ks.materialize());
            let full = oracle::naive_repeat(&m).unwrap().0;
            let bounds: Vec<usize> = (1..ks.fragments().len()).map(|f| ks.frag_start(f)).collect();
            let crosses = |p: usize, len: usize| bounds.iter().any(|&b| p < b && b < p + len);
            let one = filtered_repeat(&m, |p, q, l| l >= 2 && crosses(p, l) != crosses(q, l));
            let both = filtered_repeat(&m, |p, q, l| crosses(p, l) && crosses(q, l));
            let got = |a: Option<RepeatAnswer>| {
                if let Some(a) = a {
                    check_witness(&a, &m);
                }
                a.map_or(0, |a| a.len)
            };
            let g1 = got(ix.cross_one(&ks));
            let g2 = got(ix.cross_both(&ks));
            assert!(one <= g1 && g1 <= full, "{m:?} {:?}", ks.fragments());
            assert!(both <= g2 && g2 <= full, "{m:?} {:?}", ks.fragments());
        }
    }
}

fn apply_plain(s: &mut Vec<u8>, e: &EditOp) {
    let p = e.pos - 1;
    match e.kind {
        EditKind::Sub => s[p] = e.ch,
        EditKind::Ins => s.insert(p, e.ch),
        EditKind::Del => {
            s.remove(p);
        }
    }
}

fn random_op(rng: &mut ChaCha8Rng, n: usize, sigma: u8) -> EditOp {
    loop {
        let kind = [EditKind::Sub, EditKind::Ins, EditKind::Del][rng.gen_range(0..3)];
        let limit = if kind == EditKind::Ins { n + 1 } else { n };
        if limit > 0 {
            return op(kind, rng.gen_range(1..=limit), b'a' + rng.gen_range(0..sigma));
        }
    }
}

fn run_script(seed: u64, max_len: usize, sigma: u8, edits: usize, kappa: Option<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut plain = random_string(&mut rng, 0..=max_len, sigma);
    let mut sess = RepeatSession::new(&encode(&plain), kappa, SliceMode::WorstCase).unwrap();
    for _ in 0..edits {
        let e = random_op(&mut rng, plain.len(), sigma);
        apply_plain(&mut plain, &e);
        let a = sess.edit(&e).unwrap();
        assert_eq!(a.len, oracle::naive_repeat(&plain).unwrap().0, "seed {seed}: {:?}", String::from_utf8_lossy(&plain));
        check_witness(&a, &plain);
        let live = sess.current();
        assert_eq!(bytes(&live.s().materialize()), plain);
        let sl = sess.slicing();
        assert!(sl.lag() <= 2 * sl.kappa());
        assert!(live.fragment_count() <= 2 * sl.lag() + 1);
        for c in live.case_answers() {
            check_witness(&c, &plain);
        }
    }
}

#[test]
fn random_scripts_small() {
    for seed in 0..60 {
        run_script(seed, 30, [2, 3, 26][seed as usize % 3], 30, None);
    }
}

#[test]
fn random_scripts_with_rebuilds() {
    for seed in 100..130 {
        run_script(seed, 80, [2, 3, 26][seed as usize % 3], 50, Some(1 + seed as usize % 4));
    }
}

#[test]
fn script_examples() {
    let mut sess = RepeatSession::new(&encode(b"abcab"), None, SliceMode::WorstCase).unwrap();
    assert_eq!(sess.answer().len, 2);
    assert_eq!(sess.edit(&op(EditKind::Sub, 4, b'x')).unwrap().len, 1);
    assert_eq!(sess.edit(&op(EditKind::Sub, 4, b'x')).unwrap().len, 1);
    assert_eq!(sess.edit(&op(EditKind::Ins, 6, b'c')).unwrap().len, 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn sessions_match_naive(s in "[ab]{0,30}", seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut plain = s.into_bytes();
        let mut sess = RepeatSession::new(&encode(&plain), Some(2), SliceMode::WorstCase).unwrap();
        for _ in 0..12 {
            let e = random_op(&mut rng, plain.len(), 2);
            apply_plain(&mut plain, &e);
            let a = sess.edit(&e).unwrap();
            prop_assert_eq!(a.len, oracle::naive_repeat(&plain).unwrap().0);
            check_witness(&a, &plain);
        }
    }
}

