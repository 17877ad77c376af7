//! Seeded benchmark workload with per-edit timing as CSV.

use crate::problem::{Plain, Problem, Session};
use dynstr::dynamic_lcs::SliceMode;
use dynstr::ksub::{EditKind, EditOp, Target};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::io::Write;
use std::time::Instant;

pub struct BenchConfig {
    pub problem: Problem,
    pub n: usize,
    pub edits: usize,
    pub alphabet: u8,
    pub seed: u64,
    pub kappa: Option<usize>,
    pub mode: SliceMode,
    pub timing: bool,
}

fn random_edit(rng: &mut ChaCha8Rng, plain: &Plain, two: bool, alphabet: u8) -> EditOp {
    loop {
        let target = if two && rng.gen_bool(0.5) { Target::T } else { Target::S };
        let kind = [EditKind::Sub, EditKind::Ins, EditKind::Del][rng.gen_range(0..3)];
        let n = plain.len(target);
        let limit = if kind == EditKind::Ins { n + 1 } else { n };
        if limit > 0 {
            let ch = b'a' + rng.gen_range(0..alphabet);
            return EditOp { target, kind, pos: rng.gen_range(1..=limit), ch };
        }
    }
}

/// Writes a header and `edits + 1` rows: the initial answer, then one per edit.
/// `rebuild_flag` is 1 when a rebuilt structure went live during that edit.
pub fn bench(cfg: &BenchConfig, out: &mut impl Write) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let word = |rng: &mut ChaCha8Rng| -> Vec<u8> { (0..cfg.n).map(|_| b'a' + rng.gen_range(0..cfg.alphabet)).collect() };
    let s = word(&mut rng);
    let t = if cfg.problem == Problem::Lcs { word(&mut rng) } else { Vec::new() };
    let mut plain = Plain { s, t };
    let micros = |start: Instant| if cfg.timing { start.elapsed().as_micros() } else { 0 };

    let io = |e: std::io::Error| e.to_string();
    writeln!(out, "edit_index,query_micros,answer_len,rebuild_flag").map_err(io)?;
    let start = Instant::now();
    let mut sess = Session::new(cfg.problem, &plain.s, &plain.t, cfg.kappa, cfg.mode, cfg.seed).map_err(|e| e.to_string())?;
    let rec = sess.answer();
    writeln!(out, "0,{},{},0", micros(start), rec.length).map_err(io)?;
    for i in 1..=cfg.edits {
        let e = random_edit(&mut rng, &plain, cfg.problem == Problem::Lcs, cfg.alphabet);
        plain.apply(&e);
        let before = sess.rebuilds();
        let start = Instant::now();
        let rec = sess.edit(&e).map_err(|e| e.to_string())?;
        let took = micros(start);
        let flag = u8::from(sess.rebuilds() > before);
        writeln!(out, "{i},{took},{},{flag}", rec.length).map_err(io)?;
    }
    Ok(())
}
