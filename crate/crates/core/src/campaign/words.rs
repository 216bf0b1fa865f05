//! Symbolic dynamics on top of a covering graph.

use serde::{Deserialize, Serialize};

use super::graph::CoveringGraph;
use crate::error::{Error, Result};

/// One step of a chain: `source → target` under `map^iterates`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub source: String,
    pub target: String,
    pub map: String,
    pub iterates: usize,
    pub back: bool,
    pub degree: i32,
}

/// Symbols joined by chains of exactly `steps` map iterates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockAlphabet {
    pub symbols: Vec<String>,
    pub steps: usize,
    /// `chains[a][b]`: a witnessing chain from symbol `a` to symbol `b`.
    pub chains: Vec<Vec<Option<Vec<ChainStep>>>>,
}

impl BlockAlphabet {
    /// Searches the graph for chains of exactly `steps` iterates between
    /// every ordered pair of symbols.
    pub fn from_graph(graph: &CoveringGraph, symbols: &[&str], steps: usize) -> Self {
        let chains = symbols
            .iter()
            .map(|a| symbols.iter().map(|b| find_chain(graph, a, b, steps)).collect())
            .collect();
        BlockAlphabet {
            symbols: symbols.iter().map(|s| (*s).to_owned()).collect(),
            steps,
            chains,
        }
    }

    pub fn allows(&self, a: usize, b: usize) -> bool {
        self.chains[a][b].is_some()
    }

    pub fn is_full_shift(&self) -> bool {
        self.chains.iter().flatten().all(Option::is_some)
    }
}

fn find_chain(graph: &CoveringGraph, a: &str, b: &str, steps: usize) -> Option<Vec<ChainStep>> {
    fn go(graph: &CoveringGraph, at: &str, b: &str, left: usize, path: &mut Vec<ChainStep>) -> bool {
        if left == 0 {
            return at == b;
        }
        for e in graph.successors(at) {
            let c = &e.certificate;
            if c.iterates == 0 || c.iterates > left {
                continue;
            }
            path.push(ChainStep {
                source: c.source.clone(),
                target: c.target.clone(),
                map: c.map.clone(),
                iterates: c.iterates,
                back: c.is_back(),
                degree: c.degree.expect("holding edges have a degree"),
            });
            if go(graph, &c.target, b, left - c.iterates, path) {
                return true;
            }
            path.pop();
        }
        false
    }
    let mut path = Vec::new();
    go(graph, a, b, steps, &mut path).then_some(path)
}

/// All admissible words of length `len` over the block alphabet, in
/// lexicographic order of symbol indices.
pub fn enumerate_words(alphabet: &BlockAlphabet, len: usize) -> Vec<Vec<String>> {
    let n = alphabet.symbols.len();
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(len);
    fn go(alphabet: &BlockAlphabet, n: usize, len: usize, word: &mut Vec<usize>, out: &mut Vec<Vec<String>>) {
        if word.len() == len {
            out.push(word.iter().map(|&i| alphabet.symbols[i].clone()).collect());
            return;
        }
        for next in 0..n {
            if word.last().is_none_or(|&prev| alphabet.allows(prev, next)) {
                word.push(next);
                go(alphabet, n, len, word, out);
                word.pop();
            }
        }
    }
    if len > 0 {
        go(alphabet, n, len, &mut word, &mut out);
    }
    out
}

/// Number of admissible words of length `len`, by dynamic programming.
pub fn count_words(alphabet: &BlockAlphabet, len: usize) -> u128 {
    if len == 0 {
        return 0;
    }
    let n = alphabet.symbols.len();
    let mut ends = vec![1u128; n];
    for _ in 1..len {
        ends = (0..n)
            .map(|b| (0..n).filter(|&a| alphabet.allows(a, b)).map(|a| ends[a]).sum())
            .collect();
    }
    ends.iter().sum()
}

/// The four-set automaton of the symmetric-orbit theorem: `0 → {0, 1}`,
/// `1 → 2`, `2 → 3`, `3 → 1`; words start and end in `{0, 2}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SymmetricAutomaton;

impl SymmetricAutomaton {
    pub const STATES: usize = 4;

    pub fn successors(self, state: u8) -> &'static [u8] {
        match state {
            0 => &[0, 1],
            1 => &[2],
            2 => &[3],
            3 => &[1],
            _ => &[],
        }
    }

    pub fn is_terminal(self, state: u8) -> bool {
        state == 0 || state == 2
    }

    /// Index of the first violated rule: `Some(0)` for a bad start, `Some(i)`
    /// for a bad step into position `i`, `Some(len)` for a bad end.
    pub fn first_violation(self, word: &[u8]) -> Option<usize> {
        let (&first, &last) = (word.first()?, word.last()?);
        if !self.is_terminal(first) {
            return Some(0);
        }
        if let Some(i) = word.windows(2).position(|w| !self.successors(w[0]).contains(&w[1])) {
            return Some(i + 1);
        }
        (!self.is_terminal(last)).then_some(word.len())
    }

    pub fn accepts(self, word: &[u8]) -> bool {
        !word.is_empty() && self.first_violation(word).is_none()
    }

    /// All accepted words with `len` symbols, lexicographically.
    pub fn words(self, len: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut w = Vec::with_capacity(len);
        fn go(a: SymmetricAutomaton, len: usize, w: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            if w.len() == len {
                if a.is_terminal(*w.last().expect("len > 0")) {
                    out.push(w.clone());
                }
                return;
            }
            let next: &[u8] = match w.last() {
                None => &[0, 2],
                Some(&s) => a.successors(s),
            };
            for &s in next {
                w.push(s);
                go(a, len, w, out);
                w.pop();
            }
        }
        if len > 0 {
            go(self, len, &mut w, &mut out);
        }
        out
    }
}

/// Existence statement for a symmetric periodic orbit along a chain that
/// starts and ends in sets with a disk in `Fix(S)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetricOrbitCertificate {
    pub word: Vec<String>,
    pub steps: Vec<ChainStep>,
    /// Map iterates from the first to the last set.
    pub half_period: usize,
    pub conclusion: String,
}

/// Checks that consecutive sets of `word` are joined by holding edges and
/// that both ends carry symmetric disks.
pub fn emit_symmetric_orbit_certificate(graph: &CoveringGraph, word: &[&str]) -> Result<SymmetricOrbitCertificate> {
    if word.len() < 2 {
        return Err(Error::Config("a chain needs at least two sets".into()));
    }
    let mut steps = Vec::with_capacity(word.len() - 1);
    for (i, pair) in word.windows(2).enumerate() {
        let Some(e) = graph.edge(pair[0], pair[1]) else {
            return Err(Error::InadmissibleWord {
                position: i,
                from: pair[0].to_owned(),
                to: pair[1].to_owned(),
            });
        };
        let c = &e.certificate;
        steps.push(ChainStep {
            source: c.source.clone(),
            target: c.target.clone(),
            map: c.map.clone(),
            iterates: c.iterates,
            back: c.is_back(),
            degree: c.degree.expect("holding edges have a degree"),
        });
    }
    for (pos, name) in [(0, word[0]), (word.len() - 1, word[word.len() - 1])] {
        if !graph.has_symmetric_disk(name) {
            return Err(Error::Config(format!(
                "set {name} at position {pos} carries no disk in Fix(S)"
            )));
        }
    }
    let half_period: usize = steps.iter().map(|s| s.iterates).sum();
    let conclusion = format!(
        "there is x0 in |{}| with S(x0) = x0 whose orbit visits {} in order, reaches Fix(S) in |{}| after {} iterates, is S-symmetric and satisfies F^{}(x0) = x0",
        word[0],
        word.join(", "),
        word[word.len() - 1],
        half_period,
        2 * half_period
    );
    Ok(SymmetricOrbitCertificate {
        word: word.iter().map(|s| (*s).to_owned()).collect(),
        steps,
        half_period,
        conclusion,
    })
}
