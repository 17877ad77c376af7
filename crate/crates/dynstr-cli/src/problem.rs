//! The four problems behind one interface, plus the naive cross-check.

use clap::ValueEnum;
use dynstr::core_index::encode;
use dynstr::dynamic_lcs::{DynamicLcsSession, SliceMode, TimeSliced, Rebuild};
use dynstr::ksub::{EditKind, EditOp, Target};
use dynstr::lyndon::LyndonSession;
use dynstr::oracle;
use dynstr::palindromes::PalindromeSession;
use dynstr::repeats::RepeatSession;
use dynstr::Result;
use rand::Rng;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Lcs,
    Repeat,
    Palindrome,
    Lyndon,
}

impl Problem {
    pub fn inputs(self) -> usize {
        if self == Problem::Lcs {
            2
        } else {
            1
        }
    }
}

/// One answer. Positions are 1-based, 0 when there is no witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Record {
    pub length: usize,
    pub pos_s: usize,
    /// occurrence in T for lcs, second occurrence for repeat
    pub pos_t: usize,
    /// number of Lyndon factors
    pub count: usize,
}

impl Record {
    fn new(length: usize, pos_s: usize, pos_t: usize, count: usize) -> Self {
        let one = |p: usize| if length == 0 { 0 } else { p + 1 };
        Record { length, pos_s: one(pos_s), pos_t: one(pos_t), count }
    }

    pub fn text(&self, problem: Problem) -> String {
        match problem {
            Problem::Lcs | Problem::Repeat => format!("{} {} {}", self.length, self.pos_s, self.pos_t),
            Problem::Palindrome => format!("{} {}", self.length, self.pos_s),
            Problem::Lyndon => format!("{} {} {}", self.length, self.pos_s, self.count),
        }
    }

    pub fn json(&self, problem: Problem, op: &str) -> Value {
        let mut v = json!({ "op": op, "length": self.length, "pos_s": self.pos_s });
        match problem {
            Problem::Lcs => v["pos_t"] = json!(self.pos_t),
            Problem::Repeat => v["extra"] = json!({ "second": self.pos_t }),
            Problem::Palindrome => {}
            Problem::Lyndon => v["extra"] = json!({ "count": self.count }),
        }
        v
    }
}

pub enum Session {
    Lcs(DynamicLcsSession),
    Repeat(RepeatSession),
    Palindrome(PalindromeSession),
    Lyndon(LyndonSession),
}

impl Session {
    pub fn new(problem: Problem, s: &[u8], t: &[u8], kappa: Option<usize>, mode: SliceMode, seed: u64) -> Result<Self> {
        let (s, t) = (encode(s), encode(t));
        Ok(match problem {
            Problem::Lcs => Session::Lcs(DynamicLcsSession::with_seed(&s, &t, kappa, mode, seed)?),
            Problem::Repeat => Session::Repeat(RepeatSession::with_seed(&s, kappa, mode, seed)?),
            Problem::Palindrome => Session::Palindrome(PalindromeSession::with_seed(&s, kappa, mode, seed)?),
            Problem::Lyndon => Session::Lyndon(LyndonSession::with_seed(&s, kappa, mode, seed)?),
        })
    }

    pub fn answer(&self) -> Record {
        match self {
            Session::Lcs(x) => {
                let a = x.answer();
                Record::new(a.len, a.pos_s, a.pos_t, 0)
            }
            Session::Repeat(x) => {
                let a = x.answer();
                Record::new(a.len, a.first, a.second, 0)
            }
            Session::Palindrome(x) => {
                let a = x.answer();
                Record::new(a.len, a.start, 0, 0)
            }
            Session::Lyndon(x) => {
                let a = x.answer();
                Record::new(a.longest, a.start, 0, a.count)
            }
        }
    }

    pub fn edit(&mut self, e: &EditOp) -> Result<Record> {
        match self {
            Session::Lcs(x) => x.edit(e).map(drop)?,
            Session::Repeat(x) => x.edit(e).map(drop)?,
            Session::Palindrome(x) => x.edit(e).map(drop)?,
            Session::Lyndon(x) => x.edit(e).map(drop)?,
        }
        Ok(self.answer())
    }

    /// Completed rebuilds so far.
    pub fn rebuilds(&self) -> usize {
        fn count<D: Rebuild>(t: &TimeSliced<D>) -> usize {
            t.stats().rebuilds
        }
        match self {
            Session::Lcs(x) => count(x.slicing()),
            Session::Repeat(x) => count(x.slicing()),
            Session::Palindrome(x) => count(x.slicing()),
            Session::Lyndon(x) => count(x.slicing()),
        }
    }

    /// The `i`-th Lyndon factor (1-based) as a 1-based (start, len).
    pub fn lyndon_select(&self, i: usize) -> Option<(usize, usize)> {
        match self {
            Session::Lyndon(x) => x.lfr().select(i).ok().map(|f| (f.start + 1, f.len)),
            _ => None,
        }
    }
}

/// Plain copies of the strings, edited independently of the session.
#[derive(Debug, Clone, Default)]
pub struct Plain {
    pub s: Vec<u8>,
    pub t: Vec<u8>,
}

impl Plain {
    pub fn len(&self, target: Target) -> usize {
        match target {
            Target::S => self.s.len(),
            Target::T => self.t.len(),
        }
    }

    /// Whether `e` fits the current length of its target.
    pub fn valid(&self, e: &EditOp) -> bool {
        let n = self.len(e.target);
        if e.kind == EditKind::Ins {
            e.pos <= n + 1
        } else {
            e.pos <= n
        }
    }

    pub fn apply(&mut self, e: &EditOp) {
        let w = match e.target {
            Target::S => &mut self.s,
            Target::T => &mut self.t,
        };
        let p = e.pos - 1;
        match e.kind {
            EditKind::Sub => w[p] = e.ch,
            EditKind::Ins => w.insert(p, e.ch),
            EditKind::Del => {
                w.remove(p);
            }
        }
    }
}

/// Recompute the answer naively and validate the reported witness.
/// Returns a description of the first disagreement.
pub fn cross_check(problem: Problem, plain: &Plain, rec: &Record, sess: &Session, rng: &mut impl Rng) -> std::result::Result<(), String> {
    let (s, t) = (&plain.s[..], &plain.t[..]);
    let at = |w: &[u8], p: usize, len: usize| -> Option<Vec<u8>> {
        (p >= 1 && p - 1 + len <= w.len()).then(|| w[p - 1..p - 1 + len].to_vec())
    };
    let fail = |what: String| Err(format!("{what}; reported {rec:?}"));
    let naive = |r: dynstr::Result<usize>| r.map_err(|e| e.to_string());
    match problem {
        Problem::Lcs => {
            let want = naive(oracle::naive_lcs(s, t).map(|x| x.0))?;
            if rec.length != want {
                return fail(format!("expected length {want}"));
            }
            if want > 0 && (at(s, rec.pos_s, want).is_none() || at(s, rec.pos_s, want) != at(t, rec.pos_t, want)) {
                return fail("witness substrings differ".into());
            }
        }
        Problem::Repeat => {
            let want = naive(oracle::naive_repeat(s).map(|x| x.0))?;
            if rec.length != want {
                return fail(format!("expected length {want}"));
            }
            if want > 0 && (rec.pos_s == rec.pos_t || at(s, rec.pos_s, want).is_none() || at(s, rec.pos_s, want) != at(s, rec.pos_t, want)) {
                return fail("witness occurrences differ".into());
            }
        }
        Problem::Palindrome => {
            let want = naive(oracle::naive_lspal(s).map(|x| x.0))?;
            if rec.length != want {
                return fail(format!("expected length {want}"));
            }
            let w = at(s, rec.pos_s, want);
            if want > 0 && !w.as_ref().is_some_and(|w| w.iter().eq(w.iter().rev())) {
                return fail("witness is not a palindrome".into());
            }
        }
        Problem::Lyndon => {
            let lf = oracle::naive_lf(s).map_err(|e| e.to_string())?;
            let want = lf.iter().map(|f| f.1).max().unwrap_or(0);
            if rec.length != want || rec.count != lf.len() {
                return fail(format!("expected longest {want}, count {}", lf.len()));
            }
            if want > 0 && !at(s, rec.pos_s, want).is_some_and(|w| oracle::is_lyndon(&w)) {
                return fail("witness is not a Lyndon word".into());
            }
            if !lf.is_empty() {
                let i = rng.gen_range(1..=lf.len());
                let f = lf[i - 1];
                if sess.lyndon_select(i) != Some((f.0 + 1, f.1)) {
                    return fail(format!("factor {i} should be {:?}", (f.0 + 1, f.1)));
                }
            }
        }
    }
    Ok(())
}
