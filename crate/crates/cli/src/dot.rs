//! Graphviz export of the multiway system.
//!
//! Raw graphs are trees: one vertex per word, labeled by its subindex string.
//! Renormalized graphs have one vertex per distinct qubit term on each level;
//! a term's outgoing edges come from the successors of one representative
//! word, so the `K` identity rewrites of a term show up as one edge labeled
//! `×K` (or as `K` parallel edges on request).

use std::fmt::Write as _;

use renorm_core::{coarse_grain, enumerate_level, successors, ModelConfig, QubitTerm, Word};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DotOptions {
    pub renormalized: bool,
    pub parallel_edges: bool,
}

/// DOT text for levels `0..=depth`.
pub fn export_multiway_dot(
    cfg: &ModelConfig,
    depth: u64,
    opts: DotOptions,
) -> Result<String, CliError> {
    let levels = (0..=depth)
        .rev()
        .map(|k| enumerate_level(cfg, k).map(|l| l.into_words()))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .rev()
        .collect::<Vec<_>>();

    let mut out = String::new();
    let name = if opts.renormalized {
        "renormalized"
    } else {
        "multiway"
    };
    writeln!(out, "digraph {name} {{").unwrap();
    writeln!(out, "    rankdir=TB;").unwrap();
    writeln!(out, "    node [shape=box];").unwrap();
    if opts.renormalized {
        write_renormalized(&mut out, cfg, &levels, opts.parallel_edges);
    } else {
        write_raw(&mut out, cfg, &levels);
    }
    out.push_str("}\n");
    Ok(out)
}

fn write_raw(out: &mut String, cfg: &ModelConfig, levels: &[Vec<Word>]) {
    let k = cfg.max_symbol();
    let branching = cfg.branching() as usize;
    for (level, words) in levels.iter().enumerate() {
        for (i, w) in words.iter().enumerate() {
            writeln!(out, "    n{level}_{i} [label=\"{}\"];", w.encode(k)).unwrap();
        }
    }
    // canonical order puts the children of parent `p` at `p*(K+1) ..`
    for level in 1..levels.len() {
        for p in 0..levels[level - 1].len() {
            for c in p * branching..(p + 1) * branching {
                writeln!(out, "    n{}_{p} -> n{level}_{c};", level - 1).unwrap();
            }
        }
    }
}

/// Distinct terms of a level in order of first appearance, each with a
/// representative word.
fn distinct_terms(words: &[Word], k: u32) -> Vec<(QubitTerm, &Word)> {
    let mut seen: Vec<(QubitTerm, &Word)> = Vec::new();
    for w in words {
        let t = coarse_grain(w, k);
        if !seen.iter().any(|(s, _)| *s == t) {
            seen.push((t, w));
        }
    }
    seen
}

fn write_renormalized(out: &mut String, cfg: &ModelConfig, levels: &[Vec<Word>], parallel: bool) {
    let k = cfg.max_symbol();
    let per_level: Vec<_> = levels.iter().map(|ws| distinct_terms(ws, k)).collect();
    for (level, terms) in per_level.iter().enumerate() {
        for (i, (t, _)) in terms.iter().enumerate() {
            writeln!(out, "    n{level}_{i} [label=\"{t}\"];").unwrap();
        }
    }
    for level in 1..per_level.len() {
        let targets = &per_level[level];
        for (p, (_, rep)) in per_level[level - 1].iter().enumerate() {
            // (target index, multiplicity) in successor order
            let mut edges: Vec<(usize, u64)> = Vec::new();
            for child in successors(rep, cfg) {
                let t = coarse_grain(&child, k);
                let idx = targets
                    .iter()
                    .position(|(s, _)| *s == t)
                    .expect("child term appears on the next level");
                match edges.iter_mut().find(|(i, _)| *i == idx) {
                    Some((_, n)) => *n += 1,
                    None => edges.push((idx, 1)),
                }
            }
            let src = format!("n{}_{p}", level - 1);
            for (c, mult) in edges {
                if parallel {
                    for _ in 0..mult {
                        writeln!(out, "    {src} -> n{level}_{c};").unwrap();
                    }
                } else if mult > 1 {
                    writeln!(out, "    {src} -> n{level}_{c} [label=\"×{mult}\"];").unwrap();
                } else {
                    writeln!(out, "    {src} -> n{level}_{c};").unwrap();
                }
            }
        }
    }
}
