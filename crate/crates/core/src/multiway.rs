//! The append-rule multiway system.
//!
//! With alphabet `a_0 ..= a_K`, every word `w` rewrites nondeterministically to
//! `w a_0, w a_1, ..., w a_K`. Since rules only append, two distinct paths
//! never meet at the same word, so each level is a plain list of
//! `(K+1)^k` distinct words and no state deduplication is needed.
//!
//! Levels are returned in canonical order: lexicographic by the appended
//! suffix, which makes graph exports and tests reproducible.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest number of words materialized for one level unless configured otherwise.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// An alphabet symbol `a_i`, stored by its subindex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u32);

impl Symbol {
    /// Rejects indices beyond `a_K`.
    pub fn new(index: u32, max_symbol: u32) -> Result<Self> {
        if index > max_symbol {
            return Err(Error::SymbolOutOfRange { index, max_symbol });
        }
        Ok(Symbol(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

/// A state of the multiway system.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn from_indices(indices: &[u32], max_symbol: u32) -> Result<Self> {
        indices
            .iter()
            .map(|&i| Symbol::new(i, max_symbol))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().map(|s| s.0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<Symbol> {
        self.0.last().copied()
    }

    /// The word with its last symbol removed.
    pub fn parent(&self) -> Option<Word> {
        let (_, head) = self.0.split_last()?;
        Some(Word(head.to_vec()))
    }

    pub fn appended(&self, symbol: Symbol) -> Word {
        let mut symbols = Vec::with_capacity(self.0.len() + 1);
        symbols.extend_from_slice(&self.0);
        symbols.push(symbol);
        Word(symbols)
    }

    /// Subindex string: `"002"` when `K <= 9`, `"0-10-3"` otherwise.
    pub fn encode(&self, max_symbol: u32) -> String {
        if max_symbol <= 9 {
            self.0
                .iter()
                .map(|s| char::from_digit(s.0, 10).expect("single digit"))
                .collect()
        } else {
            let parts: Vec<String> = self.0.iter().map(|s| s.0.to_string()).collect();
            parts.join("-")
        }
    }

    /// Inverse of [`Word::encode`]. Hyphen-separated input is accepted for any `K`.
    pub fn parse(text: &str, max_symbol: u32) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::default());
        }
        let indices: Vec<u32> = if max_symbol > 9 || text.contains('-') {
            text.split('-')
                .map(|p| p.parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::MalformedWord(text.to_string()))?
        } else {
            text.chars()
                .map(|c| c.to_digit(10))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::MalformedWord(text.to_string()))?
        };
        Word::from_indices(&indices, max_symbol)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| format!("a_{}", s.0)).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Parameters of one multiway system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelConfig {
    max_symbol: u32,
    initial_word: Word,
    enumeration_cap: u64,
}

impl ModelConfig {
    /// `max_symbol` is `K`: the alphabet is `a_0 ..= a_K`.
    pub fn new(max_symbol: u32, initial_word: Word, enumeration_cap: u64) -> Result<Self> {
        if max_symbol < 1 {
            return Err(Error::InvalidConfig("K must be at least 1".into()));
        }
        if initial_word.is_empty() {
            return Err(Error::InvalidConfig("initial word must be nonempty".into()));
        }
        if enumeration_cap < 1 {
            return Err(Error::InvalidConfig(
                "enumeration cap must be at least 1".into(),
            ));
        }
        if let Some(bad) = initial_word.indices().find(|&i| i > max_symbol) {
            return Err(Error::SymbolOutOfRange {
                index: bad,
                max_symbol,
            });
        }
        Ok(ModelConfig {
            max_symbol,
            initial_word,
            enumeration_cap,
        })
    }

    /// Initial condition `a_0` and the default cap.
    pub fn with_default_init(max_symbol: u32) -> Result<Self> {
        let init = Word::from_indices(&[0], max_symbol.max(1))?;
        Self::new(max_symbol, init, DEFAULT_ENUMERATION_CAP)
    }

    pub fn with_cap(mut self, enumeration_cap: u64) -> Result<Self> {
        if enumeration_cap < 1 {
            return Err(Error::InvalidConfig(
                "enumeration cap must be at least 1".into(),
            ));
        }
        self.enumeration_cap = enumeration_cap;
        Ok(self)
    }

    pub fn max_symbol(&self) -> u32 {
        self.max_symbol
    }

    pub fn branching(&self) -> u64 {
        u64::from(self.max_symbol) + 1
    }

    pub fn initial_word(&self) -> &Word {
        &self.initial_word
    }

    pub fn enumeration_cap(&self) -> u64 {
        self.enumeration_cap
    }

    fn check_cap(&self, level: u64) -> Result<u64> {
        match level_size(self.max_symbol, level) {
            Some(n) if n <= self.enumeration_cap => Ok(n),
            _ => Err(Error::CapExceeded {
                max_symbol: self.max_symbol,
                branching: self.branching(),
                level,
                cap: self.enumeration_cap,
            }),
        }
    }
}

/// `(K+1)^level`, or `None` on `u64` overflow.
pub fn level_size(max_symbol: u32, level: u64) -> Option<u64> {
    let exp = u32::try_from(level).ok()?;
    (u64::from(max_symbol) + 1).checked_pow(exp)
}

/// One level of the multiway system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiwayLevel {
    level: u64,
    words: Vec<Word>,
}

impl MultiwayLevel {
    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn into_words(self) -> Vec<Word> {
        self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// All one-step rewrites of `word`, in symbol order `a_0 ..= a_K`.
pub fn successors(word: &Word, cfg: &ModelConfig) -> Vec<Word> {
    debug_assert!(word.indices().all(|i| i <= cfg.max_symbol));
    (0..=cfg.max_symbol)
        .map(|i| word.appended(Symbol(i)))
        .collect()
}

/// Every word reachable in exactly `level` steps, in canonical order.
pub fn enumerate_level(cfg: &ModelConfig, level: u64) -> Result<MultiwayLevel> {
    let count = cfg.check_cap(level)?;
    let base = cfg.branching();
    let depth = level as usize;
    let prefix = cfg.initial_word.symbols();

    // Word number `n` carries the base-(K+1) digits of `n` as its suffix,
    // most significant first; ascending `n` is therefore lexicographic order.
    let words = (0..count)
        .into_par_iter()
        .map(|n| {
            let mut symbols = Vec::with_capacity(prefix.len() + depth);
            symbols.extend_from_slice(prefix);
            symbols.resize(prefix.len() + depth, Symbol(0));
            let mut rest = n;
            for slot in symbols[prefix.len()..].iter_mut().rev() {
                *slot = Symbol((rest % base) as u32);
                rest /= base;
            }
            Word(symbols)
        })
        .collect();

    Ok(MultiwayLevel { level, words })
}

/// Edges from level `level` to level `level + 1`, grouped by parent in
/// canonical order.
pub fn level_edges(cfg: &ModelConfig, level: u64) -> Result<Vec<(Word, Word)>> {
    cfg.check_cap(level + 1)?;
    let parents = enumerate_level(cfg, level)?;
    Ok(parents
        .into_words()
        .into_iter()
        .flat_map(|parent| {
            successors(&parent, cfg)
                .into_iter()
                .map(move |child| (parent.clone(), child))
        })
        .collect())
}
