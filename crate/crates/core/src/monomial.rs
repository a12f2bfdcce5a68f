//! Square-free monomials over `F_2[x_0, ..., x_{n-1}]`, the reliability
//! partial order between them, and decreasing information sets.
//!
//! A monomial `f` is identified with generator row
//! `ℓ = Σ_{i ∉ ind(f)} 2^i`, i.e. the row index has zero bits exactly at the
//! variables of `f`. Variable `x_i` is bit `i` (least significant bit is `x_0`).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest number of variables accepted anywhere in the crate (`N = 65536`).
pub const MAX_VARS: usize = 16;

pub(crate) fn check_vars(n: usize) -> Result<()> {
    if n == 0 || n > MAX_VARS {
        return Err(Error::UnsupportedVariables { n, max: MAX_VARS });
    }
    Ok(())
}

/// A square-free monomial stored as a variable mask (bit `i` set ⇔ `x_i | f`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(u32);

impl Monomial {
    /// The constant monomial `1`.
    pub const ONE: Monomial = Monomial(0);

    pub fn from_mask(mask: u32) -> Self {
        Monomial(mask)
    }

    /// Builds `∏ x_i` over the given indices; every index must be below `n`.
    pub fn from_indices(indices: &[usize], n: usize) -> Result<Self> {
        let mut mask = 0u32;
        for &i in indices {
            if i >= n || i >= MAX_VARS {
                return Err(Error::InvalidMonomial { index: i, n });
            }
            mask |= 1 << i;
        }
        Ok(Monomial(mask))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 >> i & 1 == 1
    }

    /// Variable indices in increasing order, i.e. `ind(f)`.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|&i| self.contains(i)).collect()
    }

    /// Highest variable index plus one (0 for the constant monomial).
    pub fn support_bound(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    /// Relabels variables: `x_i ↦ x_{images[i]}`.
    pub fn relabel(self, images: &[usize]) -> Monomial {
        let mut out = 0u32;
        let mut m = self.0;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            out |= 1 << images[i];
            m &= m - 1;
        }
        Monomial(out)
    }

    /// Evaluates the monomial at the point whose coordinates are the bits of `point`.
    pub fn eval(self, point: usize) -> u8 {
        u8::from(point as u32 & self.0 == self.0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        for i in self.indices() {
            write!(f, "x{i}")?;
        }
        Ok(())
    }
}

/// Maps a monomial to its generator-matrix row.
pub fn monomial_to_row(f: Monomial, n: usize) -> Result<usize> {
    check_vars(n)?;
    if f.support_bound() > n {
        return Err(Error::InvalidMonomial { index: f.support_bound() - 1, n });
    }
    Ok((!f.0 as usize) & ((1usize << n) - 1))
}

/// Inverse of [`monomial_to_row`].
pub fn row_to_monomial(row: usize, n: usize) -> Result<Monomial> {
    check_vars(n)?;
    let len = 1usize << n;
    if row >= len {
        return Err(Error::RowOutOfRange { row, len });
    }
    Ok(Monomial((!row & (len - 1)) as u32))
}

/// `f ≼ g`: `f` is at least as reliable as `g`.
///
/// Equivalent to comparing `f` element-wise against the `deg(f)` largest
/// variables of `g`, which in turn is the tail-count condition
/// `|{i ∈ f : i ≥ t}| ≤ |{i ∈ g : i ≥ t}|` for every threshold `t`.
pub fn partial_order_leq(f: Monomial, g: Monomial) -> bool {
    if f.degree() > g.degree() {
        return false;
    }
    let top = f.support_bound().max(g.support_bound());
    (1..top).all(|t| {
        let tail = !((1u32 << t) - 1);
        (f.0 & tail).count_ones() <= (g.0 & tail).count_ones()
    })
}

/// Monomials directly above `f` in `M_n` (its upper covers).
pub(crate) fn upper_covers(f: Monomial, n: usize) -> impl Iterator<Item = Monomial> {
    let m = f.0;
    let add_x0 = (m & 1 == 0).then_some(Monomial(m | 1));
    let shifts = (0..n.saturating_sub(1))
        .filter(move |&i| m >> i & 1 == 1 && m >> (i + 1) & 1 == 0)
        .map(move |i| Monomial(m & !(1 << i) | 1 << (i + 1)));
    add_x0.into_iter().chain(shifts)
}

/// Monomials directly below `f` (its lower covers).
pub(crate) fn lower_covers(f: Monomial) -> impl Iterator<Item = Monomial> {
    let m = f.0;
    let drop_x0 = (m & 1 == 1).then_some(Monomial(m & !1));
    let shifts = (1..32)
        .filter(move |&i| m >> i & 1 == 1 && m >> (i - 1) & 1 == 0)
        .map(move |i| Monomial(m & !(1 << i) | 1 << (i - 1)));
    drop_x0.into_iter().chain(shifts)
}

/// An information set `I ⊆ M_n` together with its decreasingness status.
#[derive(Clone)]
pub struct MonomialCode {
    n: usize,
    /// Membership by row index.
    member: Vec<bool>,
    /// Information rows in increasing order.
    rows: Vec<usize>,
    decreasing: bool,
    generators: OnceLock<Vec<Monomial>>,
}

impl MonomialCode {
    /// Builds a code from an arbitrary monomial set (duplicates are ignored).
    pub fn from_monomials<I>(n: usize, monomials: I) -> Result<Self>
    where
        I: IntoIterator<Item = Monomial>,
    {
        check_vars(n)?;
        let len = 1usize << n;
        let mut member = vec![false; len];
        for f in monomials {
            member[monomial_to_row(f, n)?] = true;
        }
        Ok(Self::from_membership(n, member))
    }

    /// Builds a code from generator-matrix row indices.
    pub fn from_rows(n: usize, rows: &[usize]) -> Result<Self> {
        check_vars(n)?;
        let len = 1usize << n;
        let mut member = vec![false; len];
        for &r in rows {
            if r >= len {
                return Err(Error::RowOutOfRange { row: r, len });
            }
            member[r] = true;
        }
        Ok(Self::from_membership(n, member))
    }

    pub(crate) fn from_membership(n: usize, member: Vec<bool>) -> Self {
        let rows: Vec<usize> = (0..member.len()).filter(|&r| member[r]).collect();
        let mut code = MonomialCode {
            n,
            member,
            rows,
            decreasing: false,
            generators: OnceLock::new(),
        };
        code.decreasing = code.first_violation().is_none();
        code
    }

    /// Number of variables.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Block length `N = 2^n`.
    pub fn len(&self) -> usize {
        self.member.len()
    }

    /// Code dimension `K = |I|`.
    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn contains(&self, f: Monomial) -> bool {
        f.support_bound() <= self.n && self.member[(!f.0 as usize) & (self.len() - 1)]
    }

    pub fn contains_row(&self, row: usize) -> bool {
        self.member.get(row).copied().unwrap_or(false)
    }

    /// Information rows in increasing order.
    pub fn info_rows(&self) -> &[usize] {
        &self.rows
    }

    /// Membership mask indexed by row (`true` = information, `false` = frozen).
    pub fn info_mask(&self) -> &[bool] {
        &self.member
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        let full = (self.len() - 1) as u32;
        self.rows.iter().map(move |&r| Monomial(!(r as u32) & full))
    }

    /// Whether `I` is closed downward under `≼`.
    pub fn is_decreasing(&self) -> bool {
        self.decreasing
    }

    fn first_violation(&self) -> Option<(Monomial, Monomial)> {
        self.monomials()
            .find_map(|f| lower_covers(f).find(|&g| !self.contains(g)).map(|g| (f, g)))
    }

    /// Returns an error naming a witness pair when `I` is not decreasing.
    pub fn require_decreasing(&self) -> Result<()> {
        match self.first_violation() {
            None => Ok(()),
            Some((f, g)) => Err(Error::NotDecreasing(f.to_string(), g.to_string())),
        }
    }

    /// The `≼`-maximal elements of `I` (the generators `I_min`), sorted by row.
    pub fn minimal_generators(&self) -> Result<&[Monomial]> {
        self.require_decreasing()?;
        Ok(self.generators.get_or_init(|| {
            let n = self.n;
            let mut gens: Vec<Monomial> = self
                .monomials()
                .filter(|&f| upper_covers(f, n).all(|g| !self.contains(g)))
                .collect();
            gens.sort_by_key(|&f| monomial_to_row(f, n).unwrap_or(usize::MAX));
            gens
        }))
    }

    /// `I_min` as sorted row indices.
    pub fn generator_rows(&self) -> Result<Vec<usize>> {
        let n = self.n;
        let gens = self.minimal_generators()?;
        gens.iter().map(|&g| monomial_to_row(g, n)).collect()
    }
}

impl PartialEq for MonomialCode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.member == other.member
    }
}

impl Eq for MonomialCode {}

impl fmt::Debug for MonomialCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonomialCode")
            .field("n", &self.n)
            .field("K", &self.dimension())
            .field("rows", &self.rows)
            .finish()
    }
}

/// Downward closure of a generator set: `I = ⋃_g {f : f ≼ g}`.
pub fn decreasing_closure(generators: &[Monomial], n: usize) -> Result<MonomialCode> {
    check_vars(n)?;
    for &g in generators {
        monomial_to_row(g, n)?;
    }
    let len = 1usize << n;
    let full = (len - 1) as u32;
    let member: Vec<bool> = (0..len)
        .map(|row| {
            let f = Monomial(!(row as u32) & full);
            generators.iter().any(|&g| partial_order_leq(f, g))
        })
        .collect();
    Ok(MonomialCode::from_membership(n, member))
}

/// Closure of generators given as row indices.
pub fn closure_of_rows(rows: &[usize], n: usize) -> Result<MonomialCode> {
    let gens = rows
        .iter()
        .map(|&r| row_to_monomial(r, n))
        .collect::<Result<Vec<_>>>()?;
    decreasing_closure(&gens, n)
}

/// Message coefficients `u_f`, one per information monomial.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MessageWord {
    coeffs: BTreeMap<Monomial, u8>,
}

impl MessageWord {
    /// All-zero message for `code`.
    pub fn zeros(code: &MonomialCode) -> Self {
        MessageWord { coeffs: code.monomials().map(|f| (f, 0)).collect() }
    }

    pub fn from_map(coeffs: BTreeMap<Monomial, u8>) -> Self {
        MessageWord { coeffs: coeffs.into_iter().map(|(f, b)| (f, b & 1)).collect() }
    }

    /// Message from bits listed in increasing row order of the code.
    pub fn from_row_bits(code: &MonomialCode, bits: &[u8]) -> Result<Self> {
        if bits.len() != code.dimension() {
            return Err(Error::DimensionMismatch { expected: code.dimension(), got: bits.len() });
        }
        Ok(MessageWord { coeffs: code.monomials().zip(bits).map(|(f, &b)| (f, b & 1)).collect() })
    }

    pub fn get(&self, f: Monomial) -> Option<u8> {
        self.coeffs.get(&f).copied()
    }

    pub fn set(&mut self, f: Monomial, bit: u8) -> Option<u8> {
        self.coeffs.get_mut(&f).map(|v| std::mem::replace(v, bit & 1))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Monomial, u8)> + '_ {
        self.coeffs.iter().map(|(&f, &b)| (f, b))
    }

    /// Whether the key set is exactly the information set of `code`.
    pub fn matches(&self, code: &MonomialCode) -> bool {
        self.coeffs.len() == code.dimension() && self.coeffs.keys().all(|&f| code.contains(f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(idx: &[usize]) -> Monomial {
        Monomial::from_indices(idx, MAX_VARS).unwrap()
    }

    /// Definition-level order: element-wise for equal degree, divisor search otherwise.
    fn leq_by_divisors(f: Monomial, g: Monomial) -> bool {
        let (fi, gi) = (f.indices(), g.indices());
        if fi.len() > gi.len() {
            return false;
        }
        let d = fi.len();
        // every d-subset of ind(g)
        (0u32..1 << gi.len())
            .filter(|s| s.count_ones() as usize == d)
            .any(|s| {
                let sub: Vec<usize> = (0..gi.len()).filter(|&j| s >> j & 1 == 1).map(|j| gi[j]).collect();
                fi.iter().zip(&sub).all(|(a, b)| a <= b)
            })
    }

    #[test]
    fn row_mapping_examples() {
        assert_eq!(monomial_to_row(m(&[0, 1, 2]), 3).unwrap(), 0);
        assert_eq!(monomial_to_row(Monomial::ONE, 3).unwrap(), 7);
        assert_eq!(monomial_to_row(m(&[1]), 3).unwrap(), 5);
        assert_eq!(row_to_monomial(0, 3).unwrap(), m(&[0, 1, 2]));
        assert_eq!(row_to_monomial(7, 3).unwrap(), Monomial::ONE);
        assert_eq!(row_to_monomial(31, 8).unwrap(), m(&[5, 6, 7]));
    }

    #[test]
    fn row_mapping_errors() {
        assert_eq!(
            monomial_to_row(m(&[3]), 3),
            Err(Error::InvalidMonomial { index: 3, n: 3 })
        );
        assert_eq!(row_to_monomial(8, 3), Err(Error::RowOutOfRange { row: 8, len: 8 }));
        assert!(Monomial::from_indices(&[4], 3).is_err());
        assert!(row_to_monomial(0, 17).is_err());
    }

    #[test]
    fn row_mapping_is_bijective() {
        for n in 1..=10 {
            for row in 0..1usize << n {
                let f = row_to_monomial(row, n).unwrap();
                assert_eq!(monomial_to_row(f, n).unwrap(), row);
            }
        }
    }

    #[test]
    fn order_examples() {
        assert!(partial_order_leq(m(&[0]), m(&[2])));
        assert!(!partial_order_leq(m(&[0, 1]), m(&[2])));
        assert!(!partial_order_leq(m(&[2]), m(&[0, 1])));
        assert!(partial_order_leq(m(&[0, 2]), m(&[1, 2])));
        assert!(partial_order_leq(Monomial::ONE, m(&[3])));
        assert!(partial_order_leq(m(&[1, 3]), m(&[1, 3])));
    }

    #[test]
    fn order_matches_divisor_definition() {
        let n = 6;
        for a in 0..1u32 << n {
            for b in 0..1u32 << n {
                let (f, g) = (Monomial(a), Monomial(b));
                assert_eq!(partial_order_leq(f, g), leq_by_divisors(f, g), "{f} vs {g}");
            }
        }
    }

    #[test]
    fn order_is_a_partial_order() {
        let n = 5;
        let all: Vec<Monomial> = (0..1u32 << n).map(Monomial).collect();
        for &f in &all {
            assert!(partial_order_leq(f, f));
            for &g in &all {
                if f != g && partial_order_leq(f, g) {
                    assert!(!partial_order_leq(g, f));
                }
                for &h in &all {
                    if partial_order_leq(f, g) && partial_order_leq(g, h) {
                        assert!(partial_order_leq(f, h));
                    }
                }
            }
        }
    }

    #[test]
    fn covers_generate_the_order() {
        // f ≼ g iff g is reachable from f through upper covers
        let n = 5;
        for a in 0..1u32 << n {
            let f = Monomial(a);
            let mut reach = vec![false; 1 << n];
            let mut stack = vec![f];
            while let Some(g) = stack.pop() {
                if !std::mem::replace(&mut reach[g.0 as usize], true) {
                    stack.extend(upper_covers(g, n));
                }
            }
            for b in 0..1u32 << n {
                assert_eq!(reach[b as usize], partial_order_leq(f, Monomial(b)));
            }
            for g in upper_covers(f, n) {
                assert!(lower_covers(g).any(|h| h == f));
            }
        }
    }

    #[test]
    fn closure_examples() {
        // x5x6x7 is degree 3: the closure is all monomials of degree ≤ 3.
        let code = closure_of_rows(&[31], 8).unwrap();
        assert_eq!(code.dimension(), 1 + 8 + 28 + 56);
        let brute = (0..256u32).filter(|&a| partial_order_leq(Monomial(a), m(&[5, 6, 7]))).count();
        assert_eq!(brute, code.dimension());

        let one = decreasing_closure(&[Monomial::ONE], 5).unwrap();
        assert_eq!(one.dimension(), 1);
        assert_eq!(one.info_rows(), &[31]);

        let binom = |n: usize, k: usize| (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
        for n in 1..=8 {
            for r in 0..=n {
                let g = Monomial::from_indices(&(n - r..n).collect::<Vec<_>>(), n).unwrap();
                let code = decreasing_closure(&[g], n).unwrap();
                assert!(code.is_decreasing());
                assert_eq!(code.dimension(), (0..=r).map(|d| binom(n, d)).sum::<usize>());
            }
        }
    }

    #[test]
    fn decreasing_examples() {
        let bad = MonomialCode::from_monomials(2, [m(&[1])]).unwrap();
        assert!(!bad.is_decreasing());
        assert!(bad.minimal_generators().is_err());
        let full = MonomialCode::from_rows(3, &(0..8).collect::<Vec<_>>()).unwrap();
        assert!(full.is_decreasing());
        assert_eq!(full.generator_rows().unwrap(), vec![0]);
    }

    #[test]
    fn decreasing_flag_matches_definition() {
        // exhaustive over all subsets of M_3
        let n = 3;
        for subset in 0u32..1 << 8 {
            let rows: Vec<usize> = (0..8).filter(|&r| subset >> r & 1 == 1).collect();
            let code = MonomialCode::from_rows(n, &rows).unwrap();
            let by_def = code.monomials().all(|g| {
                (0..8u32).map(Monomial).all(|f| !partial_order_leq(f, g) || code.contains(f))
            });
            assert_eq!(code.is_decreasing(), by_def, "{rows:?}");
        }
    }

    #[test]
    fn rm_generator() {
        let code = closure_of_rows(&[15], 7).unwrap();
        assert_eq!(code.dimension(), 64);
        assert_eq!(code.minimal_generators().unwrap(), &[m(&[4, 5, 6])]);
        let one = MonomialCode::from_monomials(4, [Monomial::ONE]).unwrap();
        assert_eq!(one.minimal_generators().unwrap(), &[Monomial::ONE]);
    }

    #[test]
    fn message_word_keys() {
        let code = closure_of_rows(&[5], 3).unwrap();
        let mut msg = MessageWord::zeros(&code);
        assert!(msg.matches(&code));
        assert_eq!(msg.set(Monomial::ONE, 1), Some(0));
        assert_eq!(msg.set(m(&[0, 1, 2]), 1), None);
        assert!(MessageWord::from_row_bits(&code, &[1]).is_err());
    }
}
