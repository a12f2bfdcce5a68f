use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// A permutation of the variable indices `[0, n-1]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidSpec(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation { images })
    }

    /// Transposition `(i j)`; `i == j` gives the identity.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(i, j);
        p
    }

    /// Builds a permutation from cycles in the usual notation, `(a b c)`
    /// meaning `a ↦ b ↦ c ↦ a`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= n || std::mem::replace(&mut touched[a], true) {
                    return Err(Error::InvalidSpec(format!("bad cycle element {a}")));
                }
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Smallest index not fixed, if any.
    pub fn min_moved(&self) -> Option<usize> {
        (0..self.n()).find(|&i| self.images[i] != i)
    }

    /// Largest index not fixed, if any.
    pub fn max_moved(&self) -> Option<usize> {
        (0..self.n()).rev().find(|&i| self.images[i] != i)
    }

    /// Variable relabeling `π(f) = ∏_{i ∈ ind(f)} x_{π(i)}`.
    pub fn apply_monomial(&self, f: Monomial) -> Monomial {
        f.relabel(&self.images)
    }

    /// Non-trivial cycles, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = self.images[start];
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    /// The interval disjoint decomposition `T(π)`: cycles whose intervals
    /// `[min, max]` overlap are merged (transitively) into one factor.
    /// Factors are returned in increasing interval order; their product is `π`.
    pub fn interval_disjoint_decomposition(&self) -> Vec<Permutation> {
        let mut cycles = self.cycles();
        cycles.sort_by_key(|c| c[0]);
        let mut groups: Vec<(usize, Vec<Vec<usize>>)> = Vec::new();
        for c in cycles {
            let hi = *c.iter().max().expect("non-empty cycle");
            match groups.last_mut() {
                Some((end, members)) if c[0] <= *end => {
                    *end = (*end).max(hi);
                    members.push(c);
                }
                _ => groups.push((hi, vec![c])),
            }
        }
        groups
            .into_iter()
            .map(|(_, members)| {
                let mut images: Vec<usize> = (0..self.n()).collect();
                for c in &members {
                    for &i in c {
                        images[i] = self.images[i];
                    }
                }
                Permutation { images }
            })
            .collect()
    }

    /// All permutations of `[0, n-1]` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let mut next = Some((0..n).collect::<Vec<_>>());
        std::iter::from_fn(move || {
            let current = next.take()?;
            let mut a = current.clone();
            if let Some(i) = (1..n).rev().find(|&i| a[i - 1] < a[i]) {
                let j = (i..n).rev().find(|&j| a[j] > a[i - 1]).expect("successor exists");
                a.swap(i - 1, j);
                a[i..].reverse();
                next = Some(a);
            }
            Some(Permutation { images: current })
        })
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let items: Vec<String> = c.iter().map(|i| i.to_string()).collect();
            write!(f, "({})", items.join(","))?;
        }
        Ok(())
    }
}
