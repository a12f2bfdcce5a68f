//! Concrete code designs: Reed–Muller codes, generator-defined codes,
//! BEC Bhattacharyya designs, and exhaustive enumeration of all decreasing
//! monomial codes of a given dimension.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{
    check_vars, closure_of_rows, decreasing_closure, lower_covers, monomial_to_row,
    row_to_monomial, upper_covers, Monomial, MonomialCode,
};

/// Largest `n` accepted by [`enumerate_decreasing_codes`].
pub const MAX_ENUMERATION_VARS: usize = 7;

/// Reed–Muller code `RM(r, n)`, generated by `x_{n-r} ⋯ x_{n-1}`.
pub fn rm_code(r: usize, n: usize) -> Result<MonomialCode> {
    check_vars(n)?;
    if r > n {
        return Err(Error::InvalidSpec(format!("RM order r = {r} exceeds n = {n}")));
    }
    let top: Vec<usize> = (n - r..n).collect();
    decreasing_closure(&[Monomial::from_indices(&top, n)?], n)
}

/// Bhattacharyya parameters of the `N` synthetic channels of a BEC(ε),
/// indexed by generator row.
#[derive(Clone, Debug, PartialEq)]
pub struct ReliabilitySequence {
    pub epsilon: f64,
    pub z: Vec<f64>,
}

impl ReliabilitySequence {
    /// Applies `Z⁻ = 2Z − Z²` (row bit 0) or `Z⁺ = Z²` (row bit 1), starting
    /// from the most significant row bit.
    pub fn bec(epsilon: f64, n: usize) -> Result<Self> {
        check_vars(n)?;
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidSpec(format!("erasure probability {epsilon} not in (0,1)")));
        }
        let mut z = vec![epsilon];
        for _ in 0..n {
            z = z.iter().flat_map(|&v| [2.0 * v - v * v, v * v]).collect();
        }
        Ok(ReliabilitySequence { epsilon, z })
    }
}

/// Result of a Bhattacharyya design.
#[derive(Clone, Debug)]
pub struct BecDesign {
    pub code: MonomialCode,
    pub reliability: ReliabilitySequence,
    /// The K-th selected channel has the same Z as the best frozen one.
    pub boundary_tie: bool,
}

/// Candidate ordering: smaller Z first, then the `≼`-smaller monomial
/// (degree, then index sum, is a linear extension of `≼`), then lower row.
#[derive(PartialEq)]
struct Candidate {
    z: f64,
    degree: usize,
    index_sum: usize,
    row: usize,
}

impl Eq for Candidate {}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        // reversed: BinaryHeap is a max-heap
        other
            .z
            .total_cmp(&self.z)
            .then(other.degree.cmp(&self.degree))
            .then(other.index_sum.cmp(&self.index_sum))
            .then(other.row.cmp(&self.row))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Selects the `K` channels with the smallest BEC Bhattacharyya parameter.
///
/// Channels become eligible only once all their lower covers are selected,
/// so the result is decreasing even if rounding disturbs the Z ordering.
pub fn bhattacharyya_bec_design(epsilon: f64, k: usize, n: usize) -> Result<BecDesign> {
    let reliability = ReliabilitySequence::bec(epsilon, n)?;
    let len = 1usize << n;
    if k == 0 || k > len {
        return Err(Error::InvalidSpec(format!("K = {k} not in 1..={len}")));
    }
    let candidate = |f: Monomial| {
        let row = monomial_to_row(f, n).expect("monomial within n");
        Candidate {
            z: reliability.z[row],
            degree: f.degree(),
            index_sum: f.indices().iter().sum(),
            row,
        }
    };
    let mut member = vec![false; len];
    let mut heap = BinaryHeap::from([candidate(Monomial::ONE)]);
    let mut queued = vec![false; len];
    queued[len - 1] = true;
    let mut selected = 0;
    let mut kth_z = 0.0;
    while selected < k {
        let c = heap.pop().expect("poset has K elements");
        member[c.row] = true;
        kth_z = c.z;
        selected += 1;
        let f = row_to_monomial(c.row, n)?;
        for g in upper_covers(f, n) {
            let gr = monomial_to_row(g, n)?;
            let ready = lower_covers(g).all(|h| member[monomial_to_row(h, n).expect("within n")]);
            if ready && !queued[gr] {
                queued[gr] = true;
                heap.push(candidate(g));
            }
        }
    }
    let boundary_tie = (0..len).any(|r| !member[r] && reliability.z[r] == kth_z);
    let code = MonomialCode::from_membership(n, member);
    debug_assert!(code.is_decreasing());
    Ok(BecDesign { code, reliability, boundary_tie })
}

/// Which family a [`ConstructionSpec`] describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionKind {
    BhattacharyyaBec,
    Generators,
    ReedMuller,
}

/// JSON code description:
/// `{"n", "kind", "epsilon"?, "K"?, "generators"?, "r"?}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructionSpec {
    pub n: usize,
    pub kind: ConstructionKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, rename = "K", skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
}

impl ConstructionSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    pub fn generators(n: usize, rows: Vec<usize>) -> Self {
        ConstructionSpec {
            n,
            kind: ConstructionKind::Generators,
            epsilon: None,
            k: None,
            generators: Some(rows),
            r: None,
        }
    }

    pub fn reed_muller(r: usize, n: usize) -> Self {
        ConstructionSpec { n, kind: ConstructionKind::ReedMuller, epsilon: None, k: None, generators: None, r: Some(r) }
    }

    pub fn bhattacharyya(epsilon: f64, k: usize, n: usize) -> Self {
        ConstructionSpec {
            n,
            kind: ConstructionKind::BhattacharyyaBec,
            epsilon: Some(epsilon),
            k: Some(k),
            generators: None,
            r: None,
        }
    }

    /// Builds the code; an explicit `K` must agree with the built dimension.
    pub fn build(&self) -> Result<MonomialCode> {
        check_vars(self.n)?;
        let code = match self.kind {
            ConstructionKind::ReedMuller => {
                let r = self.r.ok_or_else(|| Error::InvalidSpec("reed_muller needs \"r\"".into()))?;
                rm_code(r, self.n)?
            }
            ConstructionKind::Generators => {
                let rows = self
                    .generators
                    .as_ref()
                    .ok_or_else(|| Error::InvalidSpec("generators needs \"generators\"".into()))?;
                if rows.is_empty() {
                    return Err(Error::InvalidSpec("empty generator list".into()));
                }
                closure_of_rows(rows, self.n)?
            }
            ConstructionKind::BhattacharyyaBec => {
                let eps = self
                    .epsilon
                    .ok_or_else(|| Error::InvalidSpec("bhattacharyya_bec needs \"epsilon\"".into()))?;
                let k = self.k.ok_or_else(|| Error::InvalidSpec("bhattacharyya_bec needs \"K\"".into()))?;
                return Ok(bhattacharyya_bec_design(eps, k, self.n)?.code);
            }
        };
        if let Some(k) = self.k {
            if k != code.dimension() {
                return Err(Error::InvalidSpec(format!(
                    "declared K = {k} but the design has K = {}",
                    code.dimension()
                )));
            }
        }
        Ok(code)
    }
}

/// Depth-first enumeration of every down-set of `(M_n, ≼)` with exactly `K`
/// elements.
///
/// Monomials are visited along a linear extension of `≼`; each is either
/// taken (allowed only if no lower element was rejected) or rejected, which
/// rules out its whole up-set. Every down-set is reached by exactly one
/// include/exclude path.
pub struct DecreasingCodes {
    n: usize,
    k: usize,
    /// Row of the monomial at each linear-extension position.
    order: Vec<usize>,
    /// Positions of all elements `≽` the element at each position.
    up_set: Vec<u128>,
    stack: Vec<Frame>,
}

#[derive(Clone, Copy)]
struct Frame {
    pos: usize,
    taken: u128,
    blocked: u128,
    count: usize,
}

/// Streams all decreasing monomial codes with `n` variables and dimension `K`.
pub fn enumerate_decreasing_codes(n: usize, k: usize) -> Result<DecreasingCodes> {
    check_vars(n)?;
    if n > MAX_ENUMERATION_VARS {
        return Err(Error::Capability {
            what: "exhaustive enumeration",
            n,
            max: MAX_ENUMERATION_VARS,
        });
    }
    let len = 1usize << n;
    let mut monomials: Vec<Monomial> = (0..len as u32).map(Monomial::from_mask).collect();
    monomials.sort_by_key(|f| (f.degree(), f.indices().iter().sum::<usize>(), monomial_to_row(*f, n).ok()));
    let mut pos_of = vec![0usize; len];
    for (p, f) in monomials.iter().enumerate() {
        pos_of[f.mask() as usize] = p;
    }
    // up-sets by reverse topological accumulation over upper covers
    let mut up_set = vec![0u128; len];
    for p in (0..len).rev() {
        let mut set = 1u128 << p;
        for g in upper_covers(monomials[p], n) {
            set |= up_set[pos_of[g.mask() as usize]];
        }
        up_set[p] = set;
    }
    let order = monomials.iter().map(|&f| monomial_to_row(f, n)).collect::<Result<Vec<_>>>()?;
    let stack = if k <= len { vec![Frame { pos: 0, taken: 0, blocked: 0, count: 0 }] } else { Vec::new() };
    Ok(DecreasingCodes { n, k, order, up_set, stack })
}

impl DecreasingCodes {
    fn emit(&self, taken: u128) -> MonomialCode {
        let mut member = vec![false; self.order.len()];
        for (p, &row) in self.order.iter().enumerate() {
            if taken >> p & 1 == 1 {
                member[row] = true;
            }
        }
        MonomialCode::from_membership(self.n, member)
    }
}

impl Iterator for DecreasingCodes {
    type Item = MonomialCode;

    fn next(&mut self) -> Option<MonomialCode> {
        let len = self.order.len();
        while let Some(mut fr) = self.stack.pop() {
            if fr.count == self.k {
                return Some(self.emit(fr.taken));
            }
            // skip elements that can no longer be taken
            while fr.pos < len && fr.blocked >> fr.pos & 1 == 1 {
                fr.pos += 1;
            }
            if fr.pos == len {
                continue;
            }
            let remaining = if fr.pos == 0 { u128::MAX } else { !((1u128 << fr.pos) - 1) };
            let open = remaining & !fr.blocked & if len == 128 { u128::MAX } else { (1u128 << len) - 1 };
            if fr.count + (open.count_ones() as usize) < self.k {
                continue;
            }
            let p = fr.pos;
            self.stack.push(Frame { pos: p + 1, taken: fr.taken, blocked: fr.blocked | self.up_set[p], count: fr.count });
            self.stack.push(Frame { pos: p + 1, taken: fr.taken | 1u128 << p, blocked: fr.blocked, count: fr.count + 1 });
        }
        None
    }
}
