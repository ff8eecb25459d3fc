//! Sparse-table range maximum and maxima over non-neighbourhoods.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Static range-maximum index. Queries return the leftmost maximiser.
#[derive(Clone, Debug)]
pub struct RangeMaxIndex {
    values: Vec<f64>,
    // levels[k][i] = argmax of values[i .. i + 2^k]
    levels: Vec<Vec<u32>>,
}

impl RangeMaxIndex {
    pub fn build(values: &[f64]) -> Result<RangeMaxIndex> {
        if values.is_empty() {
            return Err(Error::invalid("range max over an empty sequence"));
        }
        let n = values.len();
        let mut levels = vec![(0..n as u32).collect::<Vec<u32>>()];
        let mut width = 1;
        while 2 * width <= n {
            let prev = levels.last().unwrap();
            let next: Vec<u32> = (0..=n - 2 * width)
                .map(|i| pick(values, prev[i], prev[i + width]))
                .collect();
            levels.push(next);
            width *= 2;
        }
        Ok(RangeMaxIndex { values: values.to_vec(), levels })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Leftmost index of the maximum over `[i, j]` (inclusive).
    #[inline]
    pub fn argmax(&self, i: usize, j: usize) -> usize {
        debug_assert!(i <= j && j < self.values.len());
        let k = (usize::BITS - 1 - (j - i + 1).leading_zeros()) as usize;
        let row = &self.levels[k];
        pick(&self.values, row[i], row[j + 1 - (1 << k)]) as usize
    }

    #[inline]
    pub fn max(&self, i: usize, j: usize) -> f64 {
        self.values[self.argmax(i, j)]
    }
}

#[inline]
fn pick(values: &[f64], a: u32, b: u32) -> u32 {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    if values[hi as usize] > values[lo as usize] {
        hi
    } else {
        lo
    }
}

/// For every `u`, the maximum of `kappa` over `V \ N(u)` (so `u` itself counts).
pub fn max_over_nonneighbors(g: &Graph, kappa: &[f64]) -> Vec<f64> {
    let table = RangeMaxIndex::build(kappa).expect("graphs are nonempty");
    (0..g.n())
        .map(|u| gap_argmax(&table, g.neighbors(u), None).map_or(f64::NEG_INFINITY, |w| kappa[w]))
        .collect()
}

/// Leftmost maximiser of `kappa` over `V \ N(u)`, or over `V \ N[u]` when
/// `exclude_self` is set. `None` when that set is empty.
pub fn argmax_over_nonneighbors(g: &Graph, kappa: &[f64], exclude_self: bool) -> Vec<Option<usize>> {
    let table = RangeMaxIndex::build(kappa).expect("graphs are nonempty");
    (0..g.n())
        .map(|u| gap_argmax(&table, g.neighbors(u), exclude_self.then_some(u)))
        .collect()
}

// Splits [0, n) at the sorted neighbour list (and optionally `skip`) and queries
// each gap.
fn gap_argmax(table: &RangeMaxIndex, sorted_nbrs: &[usize], skip: Option<usize>) -> Option<usize> {
    let n = table.len();
    let mut best: Option<usize> = None;
    let consider = |lo: usize, hi_excl: usize, best: &mut Option<usize>| {
        if lo < hi_excl {
            let a = table.argmax(lo, hi_excl - 1);
            match *best {
                Some(b) if table.values[b] >= table.values[a] => {}
                _ => *best = Some(a),
            }
        }
    };
    let mut start = 0;
    let mut cuts = sorted_nbrs.iter().copied().peekable();
    let mut skip = skip;
    loop {
        let next_nbr = cuts.peek().copied();
        let cut = match (next_nbr, skip) {
            (Some(a), Some(s)) if s < a => {
                skip = None;
                s
            }
            (Some(a), _) => {
                cuts.next();
                a
            }
            (None, Some(s)) => {
                skip = None;
                s
            }
            (None, None) => break,
        };
        consider(start, cut, &mut best);
        start = cut + 1;
    }
    consider(start, n, &mut best);
    best
}
