//! Exhaustive word enumeration and batch normalization, used for oracle
//! sweeps and benchmarks.

use num_bigint::BigInt;

use crate::graph::{GbsGraph, VertexId};
use crate::par;
use crate::word::Word;

/// Every sound word with at most `max_tokens` tokens, where a token is an
/// edge letter or a nonzero vertex power `z^k` with `|k| <= max_exp`. Each
/// word appears once (its syllable sequence is unique). With `closed_only`,
/// only words returning to their start vertex are kept.
pub fn enumerate_words(g: &GbsGraph, max_tokens: usize, max_exp: i64, closed_only: bool) -> Vec<Word> {
    let exps: Vec<BigInt> = (-max_exp..=max_exp).filter(|&k| k != 0).map(BigInt::from).collect();
    let mut out = Vec::new();
    for v in g.serre().vertices() {
        let mut state = Partial {
            start: v,
            exps: Vec::new(),
            edges: Vec::new(),
        };
        slot(g, &exps, max_tokens, closed_only, v, &mut state, &mut out);
    }
    out
}

struct Partial {
    start: VertexId,
    exps: Vec<BigInt>,
    edges: Vec<crate::graph::EdgeId>,
}

/// Fills the vertex syllable at `at`, then either stops or continues with
/// an edge.
fn slot(
    g: &GbsGraph,
    exps: &[BigInt],
    budget: usize,
    closed_only: bool,
    at: VertexId,
    state: &mut Partial,
    out: &mut Vec<Word>,
) {
    let zero = BigInt::from(0);
    let choices = std::iter::once(&zero).chain(if budget > 0 { exps } else { &[] });
    for k in choices {
        let left = if k == &zero { budget } else { budget - 1 };
        state.exps.push(k.clone());
        if !closed_only || at == state.start {
            out.push(Word::from_parts(state.start, state.exps.clone(), state.edges.clone()));
        }
        if left > 0 {
            let out_edges: Vec<_> = g.serre().out_edges(at).collect();
            for e in out_edges {
                state.edges.push(e);
                slot(g, exps, left - 1, closed_only, g.terminal(e), state, out);
                state.edges.pop();
            }
        }
        state.exps.pop();
    }
}

pub fn canonical_batch_sequential(g: &GbsGraph, words: &[Word]) -> Vec<Word> {
    par::map_sequential(words, |w| g.canonical_form(w).expect("enumerated words are sound"))
}

#[cfg(feature = "parallel")]
pub fn canonical_batch_parallel(g: &GbsGraph, words: &[Word]) -> Vec<Word> {
    par::map_parallel(words, |w| g.canonical_form(w).expect("enumerated words are sound"))
}

/// Canonical forms of `words`, in order.
pub fn canonical_batch(g: &GbsGraph, words: &[Word]) -> Vec<Word> {
    par::map(words, |w| g.canonical_form(w).expect("enumerated words are sound"))
}
