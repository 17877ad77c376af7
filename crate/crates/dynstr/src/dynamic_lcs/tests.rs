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

fn index(s: &str, t: &str) -> LcsIndex {
    LcsIndex::new(&encode(s.as_bytes()), &encode(t.as_bytes())).unwrap()
}

fn check_witness(a: &CaseAnswer, s: &[u8], t: &[u8]) {
    if a.len > 0 {
        assert!(a.pos_s + a.len <= s.len() && a.pos_t + a.len <= t.len(), "{a:?}");
        assert_eq!(&s[a.pos_s..a.pos_s + a.len], &t[a.pos_t..a.pos_t + a.len], "{a:?}");
    }
}

fn random_string(rng: &mut ChaCha8Rng, len: std::ops::RangeInclusive<usize>, sigma: u8) -> Vec<u8> {
    let len = rng.gen_range(len);
    (0..len).map(|_| b'a' + rng.gen_range(0..sigma)).collect()
}

/// A random edited version of `base` with at most `k` fragments.
fn random_ksub(rng: &mut ChaCha8Rng, base: &Arc<BaseText>, k: usize, sigma: u8) -> KSubstring {
    let mut ks = KSubstring::whole(base.clone());
    while ks.fragments().len() + 2 <= k {
        let kind = [EditKind::Sub, EditKind::Ins, EditKind::Del][rng.gen_range(0..3)];
        let n = ks.len();
        if n == 0 && kind != EditKind::Ins {
            continue;
        }
        let p = rng.gen_range(0..if kind == EditKind::Ins { n + 1 } else { n });
        ks = ks.edit(kind, p, sym(b'a' + rng.gen_range(0..sigma))).unwrap();
    }
    ks
}

#[test]
fn one_substitution_per_string_example() {
    let ix = index("caabaaa", "aaaaaab");
    let a = ix.lcs_one_sub_per_string(3, sym(b'a'), 2, sym(b'b')).unwrap();
    assert_eq!(a.len, 3);
    check_witness(&a, b"caaaaaa", b"aabaaab");
}

#[test]
fn identity_substitutions_give_static_lcs() {
    let (s, t) = ("abracadabra", "cadabrab");
    let ix = index(s, t);
    let want = oracle::naive_lcs(s.as_bytes(), t.as_bytes()).unwrap().0;
    for i in 0..s.len() {
        for j in 0..t.len() {
            let a = ix.lcs_one_sub_per_string(i, sym(s.as_bytes()[i]), j, sym(t.as_bytes()[j])).unwrap();
            assert_eq!(a.len, want);
            check_witness(&a, s.as_bytes(), t.as_bytes());
        }
    }
}

#[test]
fn one_substitution_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for round in 0..100 {
        let sigma = [2, 3, 26][round % 3];
        let s = random_string(&mut rng, 1..=60, sigma);
        let t = random_string(&mut rng, 1..=60, sigma);
        let ix = LcsIndex::new(&encode(&s), &encode(&t)).unwrap();
        for _ in 0..100 {
            let (i, j) = (rng.gen_range(0..s.len()), rng.gen_range(0..t.len()));
            let (alpha, beta) = (b'a' + rng.gen_range(0..sigma), b'a' + rng.gen_range(0..sigma));
            let (mut s2, mut t2) = (s.clone(), t.clone());
            s2[i] = alpha;
            t2[j] = beta;
            let a = ix.lcs_one_sub_per_string(i, sym(alpha), j, sym(beta)).unwrap();
            assert_eq!(a.len, oracle::naive_lcs(&s2, &t2).unwrap().0, "{s2:?} {t2:?}");
            check_witness(&a, &s2, &t2);
        }
    }
}

#[test]
fn k_substring_examples() {
    let ix = index("caabaaa", "aaaaaab");
    assert_eq!(ix.k_substring_lcs(&ix.whole_s()).len, 3);
    let sp = KSubstring::from_fragments(
        ix.s_base().clone(),
        vec![Fragment::Ref { start: 0, len: 3 }, Fragment::Char(sym(b'a')), Fragment::Ref { start: 4, len: 3 }],
    );
    let a = ix.k_substring_lcs(&sp);
    assert_eq!(a.len, 6);
    assert_eq!(&bytes(&sp.materialize())[a.pos_s..a.pos_s + 6], b"aaaaaa");
}

#[test]
fn k_substring_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for round in 0..60 {
        let sigma = [2, 3, 26][round % 3];
        let s = random_string(&mut rng, 1..=80, sigma);
        let t = random_string(&mut rng, 1..=80, sigma);
        let ix = LcsIndex::new(&encode(&s), &encode(&t)).unwrap();
        for _ in 0..30 {
            let sp = random_ksub(&mut rng, ix.s_base(), 8, sigma);
            let sm = bytes(&sp.materialize());
            let a = ix.k_substring_lcs(&sp);
            assert_eq!(a.len, oracle::naive_lcs(&sm, &t).unwrap().0);
            check_witness(&CaseAnswer { len: a.len, pos_s: a.pos_s, pos_t: a.pos_t, case: CaseTag::NoBoundary }, &sm, &t);
        }
    }
}

/// Boundaries of a k-substring: positions `b` with a fragment starting at `b > 0`.
fn boundaries(ks: &KSubstring) -> Vec<usize> {
    (1..ks.fragments().len()).map(|f| ks.frag_start(f)).collect()
}

fn covers(p: usize, len: usize, b: usize) -> bool {
    p < b && b < p + len
}

/// Longest common occurrence pair satisfying `keep(p, q, len)`.
fn filtered_lcs(s: &[u8], t: &[u8], keep: impl Fn(usize, usize, usize) -> bool) -> usize {
    let mut best = 0;
    for p in 0..s.len() {
        for q in 0..t.len() {
            let mut l = 0;
            while p + l < s.len() && q + l < t.len() && s[p + l] == t[q + l] {
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
fn one_sided_example() {
    let ix = index("aba", "bab");
    let sp = KSubstring::from_fragments(ix.s_base().clone(), vec![Fragment::Ref { start: 0, len: 2 }, Fragment::Ref { start: 2, len: 1 }]);
    let a = ix.cross_one_sided(&sp, &ix.whole_t(), Target::S).unwrap();
    assert_eq!(a.len, 2);
    check_witness(&a, b"aba", b"bab");
    assert!(ix.cross_one_sided(&ix.whole_s(), &ix.whole_t(), Target::S).is_none());
}

#[test]
fn two_sided_example() {
    let ix = index("caab", "aaba");
    let frag = |start, len| Fragment::Ref { start, len };
    let sp = KSubstring::from_fragments(ix.s_base().clone(), vec![frag(0, 2), frag(2, 2)]);
    let tp = KSubstring::from_fragments(ix.t_base().clone(), vec![frag(0, 2), frag(2, 2)]);
    let a = ix.cross_two_sided(&sp, &tp).unwrap();
    let want = filtered_lcs(b"caab", b"aaba", |p, q, l| covers(p, l, 2) && covers(q, l, 2));
    assert_eq!(want, 3);
    assert_eq!(a.len, 3);
    check_witness(&a, b"caab", b"aaba");
}

#[test]
fn identical_fragmentations_reach_full_length() {
    let ix = index("abcabcab", "abcabcab");
    let frag = |start, len| Fragment::Ref { start, len };
    let f = vec![frag(0, 3), frag(3, 2), frag(5, 3)];
    let sp = KSubstring::from_fragments(ix.s_base().clone(), f.clone());
    let tp = KSubstring::from_fragments(ix.t_base().clone(), f);
    assert_eq!(ix.cross_two_sided(&sp, &tp).unwrap().len, 8);
}

/// Every reported case answer is a real common substring, and each case is at
/// least the brute force restricted to occurrences of its kind.
#[test]
fn cross_cases_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for round in 0..300 {
        let sigma = [2, 3, 26][round % 3];
        let s = random_string(&mut rng, 1..=40, sigma);
        let t = random_string(&mut rng, 1..=40, sigma);
        let ix = LcsIndex::new(&encode(&s), &encode(&t)).unwrap();
        for _ in 0..4 {
            let (k1, k2) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
            let sp = random_ksub(&mut rng, ix.s_base(), k1, sigma);
            let tp = random_ksub(&mut rng, ix.t_base(), k2, sigma);
            let (sm, tm) = (bytes(&sp.materialize()), bytes(&tp.materialize()));
            let (bs, bt) = (boundaries(&sp), boundaries(&tp));
            let full = oracle::naive_lcs(&sm, &tm).unwrap().0;
            let crosses = |b: &[usize], p: usize, l: usize| b.iter().any(|&x| covers(p, l, x));
            let two = filtered_lcs(&sm, &tm, |p, q, l| crosses(&bs, p, l) && crosses(&bt, q, l));
            let one_s = filtered_lcs(&sm, &tm, |p, q, l| crosses(&bs, p, l) && !crosses(&bt, q, l));
            let one_t = filtered_lcs(&sm, &tm, |p, q, l| !crosses(&bs, p, l) && crosses(&bt, q, l));
            let got = |c: Option<CaseAnswer>| {
                if let Some(a) = c {
                    check_witness(&a, &sm, &tm);
                    assert!(a.len <= full);
                }
                c.map_or(0, |a| a.len)
            };
            assert!(got(ix.cross_two_sided(&sp, &tp)) >= two, "{sm:?} {tm:?}");
            assert!(got(ix.cross_one_sided(&sp, &tp, Target::S)) >= one_s, "{sm:?} {tm:?}");
            assert!(got(ix.cross_one_sided(&sp, &tp, Target::T)) >= one_t, "{sm:?} {tm:?}");
        }
    }
}

fn op(target: Target, kind: EditKind, pos: usize, ch: u8) -> EditOp {
    EditOp { target, kind, pos, ch }
}

#[test]
fn example_script() {
    let mut sess = DynamicLcsSession::new(&encode(b"caabaaa"), &encode(b"aaaaaab"), None, SliceMode::WorstCase).unwrap();
    assert_eq!(sess.answer().len, 3);
    assert_eq!(sess.edit(&op(Target::S, EditKind::Sub, 4, b'a')).unwrap().len, 6);
    assert_eq!(sess.edit(&op(Target::T, EditKind::Sub, 3, b'b')).unwrap().len, 3);
}

#[test]
fn self_substitution_keeps_answer() {
    let mut sess = DynamicLcsSession::new(&encode(b"abcab"), &encode(b"bcabx"), None, SliceMode::WorstCase).unwrap();
    let before = sess.answer().len;
    assert_eq!(sess.edit(&op(Target::S, EditKind::Sub, 2, b'b')).unwrap().len, before);
}

fn random_op(rng: &mut ChaCha8Rng, lens: [usize; 2], sigma: u8) -> EditOp {
    loop {
        let side = rng.gen_range(0..2);
        let target = if side == 0 { Target::S } else { Target::T };
        let kind = [EditKind::Sub, EditKind::Ins, EditKind::Del][rng.gen_range(0..3)];
        let n = lens[side];
        let limit = if kind == EditKind::Ins { n + 1 } else { n };
        if limit == 0 {
            continue;
        }
        return op(target, kind, rng.gen_range(1..=limit), b'a' + rng.gen_range(0..sigma));
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

fn run_script(seed: u64, max_len: usize, sigma: u8, edits: usize, kappa: Option<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut plain = [random_string(&mut rng, 0..=max_len, sigma), random_string(&mut rng, 0..=max_len, sigma)];
    let mut sess = DynamicLcsSession::new(&encode(&plain[0]), &encode(&plain[1]), kappa, SliceMode::WorstCase).unwrap();
    for _ in 0..edits {
        let e = random_op(&mut rng, [plain[0].len(), plain[1].len()], sigma);
        apply_plain(&mut plain[if e.target == Target::S { 0 } else { 1 }], &e);
        let a = sess.edit(&e).unwrap();
        let want = oracle::naive_lcs(&plain[0], &plain[1]).unwrap().0;
        assert_eq!(a.len, want, "seed {seed}: {:?} {:?}", plain[0], plain[1]);
        check_witness(&a, &plain[0], &plain[1]);
        let live = sess.current();
        assert_eq!(bytes(&live.s().materialize()), plain[0]);
        let sl = sess.slicing();
        assert!(sl.lag() <= 2 * sl.kappa());
        assert!(live.fragment_count() <= 2 * sl.lag() + 1);
        for c in live.case_answers() {
            check_witness(&c, &plain[0], &plain[1]);
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
        run_script(seed, 60, [2, 3, 26][seed as usize % 3], 50, Some(1 + seed as usize % 4));
    }
}

#[test]
fn wrapped_matches_unwrapped() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let s = random_string(&mut rng, 40..=40, 2);
        let t = random_string(&mut rng, 40..=40, 2);
        let mut wrapped = DynamicLcsSession::new(&encode(&s), &encode(&t), Some(3), SliceMode::WorstCase).unwrap();
        let mut amortized = DynamicLcsSession::new(&encode(&s), &encode(&t), Some(3), SliceMode::Amortized).unwrap();
        let mut plain = DynamicLcs::new(&encode(&s), &encode(&t)).unwrap();
        let mut lens = [s.len(), t.len()];
        let mut crossed = false;
        for _ in 0..40 {
            let e = random_op(&mut rng, lens, 2);
            let side = if e.target == Target::S { 0 } else { 1 };
            lens[side] = match e.kind {
                EditKind::Ins => lens[side] + 1,
                EditKind::Del => lens[side] - 1,
                EditKind::Sub => lens[side],
            };
            let before = wrapped.slicing().stats().rebuilds;
            let x = wrapped.edit(&e).unwrap().len;
            crossed |= wrapped.slicing().stats().rebuilds > before;
            assert_eq!(x, amortized.edit(&e).unwrap().len);
            assert_eq!(x, plain.edit(&e).unwrap().len);
        }
        assert!(crossed);
    }
}

/// Cheap stand-in for a k-substring structure, to watch the schedule.
struct Counting {
    s: KSubstring,
}

struct CountingBuilder {
    s: Vec<Sym>,
    steps: usize,
}

impl StagedBuild for CountingBuilder {
    type Output = Counting;
    fn remaining(&self) -> usize {
        self.steps
    }
    fn step(&mut self) -> Result<()> {
        self.steps -= 1;
        Ok(())
    }
    fn finish(self) -> Result<Counting> {
        let h = Arc::new(Hasher::new(1, self.s.len()));
        Ok(Counting { s: KSubstring::whole(BaseText::new(self.s, h)) })
    }
}

impl Rebuild for Counting {
    type Builder = CountingBuilder;
    fn apply(&mut self, e: &EditOp) -> Result<()> {
        self.s = self.s.apply_edit(e)?;
        Ok(())
    }
    fn rebuild(&self) -> CountingBuilder {
        CountingBuilder { s: self.s.materialize(), steps: 8 }
    }
    fn fragment_count(&self) -> usize {
        self.s.fragments().len()
    }
}

#[test]
fn kappa_balances_costs() {
    let n = 1 << 16;
    for prof in [QueryProfile::Linear, QueryProfile::Quadratic] {
        let k = prof.kappa(n);
        let lhs = prof.query_cost(n, k) * k;
        let rhs = prof.build_cost(n) + n as f64;
        assert!((lhs - rhs).abs() / rhs < 1e-6);
    }
    let k = QueryProfile::Linear.kappa(n);
    assert!(k > 256.0 && k < 300.0, "{k}");
}

#[test]
fn schedule_bounds_at_two_to_sixteen() {
    let n = 1 << 16;
    let kappa = QueryProfile::Linear.kappa_int(n);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let s: Vec<Sym> = encode(&random_string(&mut rng, n..=n, 4));
    let h = Arc::new(Hasher::new(1, n));
    let live = Counting { s: KSubstring::whole(BaseText::new(s, h)) };
    let mut ts = TimeSliced::new(live, kappa, SliceMode::WorstCase).unwrap();
    let mut len = n;
    for _ in 0..5 * kappa {
        let e = random_op(&mut rng, [len, 0], 4);
        len = match e.kind {
            EditKind::Ins => len + 1,
            EditKind::Del => len - 1,
            EditKind::Sub => len,
        };
        ts.edit(&e).unwrap();
        assert!(ts.lag() <= 2 * kappa);
        assert!(ts.live().fragment_count() <= 2 * ts.lag() + 1);
        assert_eq!(ts.live().s.len(), len);
    }
    let st = ts.stats();
    assert_eq!(st.max_lag, 2 * kappa - 1);
    assert!(st.max_fragments <= 2 * (2 * kappa) + 1);
    assert!(st.rebuilds >= 3);
    assert!(st.max_work <= 3 + 8);
}

#[test]
fn one_sided_session_matches_naive() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for round in 0..20 {
        let sigma = [2, 3, 26][round % 3];
        let mut s = random_string(&mut rng, 50..=50, sigma);
        let t = random_string(&mut rng, 50..=50, sigma);
        let mut sess = OneSidedSession::new(&encode(&s), &encode(&t), Some(2), SliceMode::WorstCase).unwrap();
        for _ in 0..30 {
            let mut e = random_op(&mut rng, [s.len(), s.len()], sigma);
            e.target = Target::S;
            apply_plain(&mut s, &e);
            let a = sess.edit(&e).unwrap();
            assert_eq!(a.len, oracle::naive_lcs(&s, &t).unwrap().0);
        }
        assert!(sess.edit(&op(Target::T, EditKind::Sub, 1, b'a')).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sessions_match_naive(s in "[ab]{0,24}", t in "[abc]{0,24}", seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut plain = [s.into_bytes(), t.into_bytes()];
        let mut sess = DynamicLcsSession::new(&encode(&plain[0]), &encode(&plain[1]), Some(2), SliceMode::WorstCase).unwrap();
        for _ in 0..12 {
            let e = random_op(&mut rng, [plain[0].len(), plain[1].len()], 3);
            apply_plain(&mut plain[if e.target == Target::S { 0 } else { 1 }], &e);
            let a = sess.edit(&e).unwrap();
            prop_assert_eq!(a.len, oracle::naive_lcs(&plain[0], &plain[1]).unwrap().0);
        }
    }
}

