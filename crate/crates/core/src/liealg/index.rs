use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(n_1, ..., n_r)` with every part odd and at least 3. The derived order
/// is lexicographic on the parts, which is the canonical order for all rows,
/// columns and coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexTuple(Vec<u32>);

impl IndexTuple {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        match parts.iter().find(|&&n| n < 3 || n % 2 == 0) {
            Some(&bad) => Err(Error::InvalidGenerator(bad)),
            None => Ok(IndexTuple(parts)),
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Parses `n1,n2,...,nr`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse {
                what: "index tuple",
                input: s.to_string(),
            })?;
        Self::new(parts)
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&s.join(","))
    }
}

/// `S_{N,r}` in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexSet {
    weight: u32,
    depth: usize,
    tuples: Vec<IndexTuple>,
}

impl IndexSet {
    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn tuples(&self) -> &[IndexTuple] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn position(&self, t: &IndexTuple) -> Option<usize> {
        self.tuples.binary_search(t).ok()
    }

    pub fn raw(&self) -> Vec<Vec<u32>> {
        self.tuples.iter().map(|t| t.0.clone()).collect()
    }
}

/// Enumerates `S_{N,r}`; depth 0 yields the single empty tuple at weight 0.
pub fn enumerate_index_set(weight: u32, depth: usize) -> IndexSet {
    fn go(rest: u32, depth: usize, prefix: &mut Vec<u32>, out: &mut Vec<IndexTuple>) {
        if depth == 0 {
            if rest == 0 {
                out.push(IndexTuple(prefix.clone()));
            }
            return;
        }
        // remaining parts need at least 3 each
        let mut n = 3;
        while n + 3 * (depth as u32 - 1) <= rest {
            prefix.push(n);
            go(rest - n, depth - 1, prefix, out);
            prefix.pop();
            n += 2;
        }
    }
    let mut tuples = Vec::new();
    go(weight, depth, &mut Vec::with_capacity(depth), &mut tuples);
    IndexSet {
        weight,
        depth,
        tuples,
    }
}
