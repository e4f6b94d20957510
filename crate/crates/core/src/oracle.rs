//! Brute-force dominating-set counting by subset enumeration.
//!
//! Subsets are bitmasks. The vertex set is split into a low block whose
//! subset unions are tabulated once, and a high block whose subsets are
//! partitioned into contiguous chunks and processed in parallel. Per-chunk
//! count vectors are merged by addition, so the result never depends on the
//! chunking.

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::Graph;
use crate::poly::IntPolynomial;

pub const DEFAULT_GUARD: usize = 24;

/// Masks are single machine words.
pub const HARD_LIMIT: usize = 63;

const LOW_BITS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph of order {order} exceeds the enumeration guard of {guard}; raise it with --guard-override")]
    GuardExceeded { order: usize, guard: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    /// Largest order enumerated without complaint.
    pub guard: usize,
    /// Number of contiguous chunks of the high-block range; `None` picks one
    /// from the rayon pool size.
    pub chunks: Option<usize>,
    /// Enumerate each connected component separately and multiply.
    pub split_components: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            guard: DEFAULT_GUARD,
            chunks: None,
            split_components: false,
        }
    }
}

impl OracleOptions {
    pub fn with_guard(guard: usize) -> Self {
        OracleOptions {
            guard,
            ..Default::default()
        }
    }

    fn check(&self, g: &Graph) -> Result<(), OracleError> {
        let guard = self.guard.min(HARD_LIMIT);
        if g.order() > guard {
            return Err(OracleError::GuardExceeded {
                order: g.order(),
                guard,
            });
        }
        Ok(())
    }
}

/// `counts[i - 1]` is the number of dominating sets of size `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationProfile {
    counts: Vec<u64>,
}

impl DominationProfile {
    pub fn order(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Number of dominating sets of size `i` (`1 <= i <= n`).
    pub fn count(&self, i: usize) -> u64 {
        self.counts[i - 1]
    }

    pub fn to_polynomial(&self) -> IntPolynomial {
        if self.counts.is_empty() {
            return IntPolynomial::one();
        }
        let mut coeffs = vec![BigInt::from(0)];
        coeffs.extend(self.counts.iter().map(|&c| BigInt::from(c)));
        IntPolynomial::from_coeffs(coeffs)
    }

    pub fn domination_number(&self) -> DominationNumber {
        match self.counts.iter().position(|&c| c > 0) {
            Some(i) => DominationNumber::Finite(i + 1),
            None => DominationNumber::Undominatable,
        }
    }

    /// Full set dominates, supersets of dominating sets dominate, and no
    /// count exceeds the binomial coefficient.
    pub fn is_consistent(&self) -> bool {
        let n = self.counts.len();
        if n == 0 {
            return true;
        }
        let mut binom: u128 = 1;
        for (k, &c) in self.counts.iter().enumerate() {
            let i = k as u128 + 1;
            binom = binom * (n as u128 - i + 1) / i;
            if u128::from(c) > binom {
                return false;
            }
            if c > 0 && k + 1 < n && self.counts[k + 1] == 0 {
                return false;
            }
        }
        self.counts[n - 1] == 1
    }

    fn from_polynomial(n: usize, p: &IntPolynomial) -> Self {
        let counts = (1..=n)
            .map(|i| u64::try_from(p.coeff(i)).expect("domination count fits in u64"))
            .collect();
        DominationProfile { counts }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominationNumber {
    Finite(usize),
    /// The null graph has no nonempty dominating set.
    Undominatable,
}

impl DominationNumber {
    pub fn value(self) -> Option<usize> {
        match self {
            DominationNumber::Finite(g) => Some(g),
            DominationNumber::Undominatable => None,
        }
    }
}

fn masks(g: &Graph) -> Vec<u64> {
    g.closed_neighborhoods()
        .iter()
        .map(|s| s.as_u64().expect("order checked against HARD_LIMIT"))
        .collect()
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Union of closed neighborhoods for every subset of `nb`, indexed by subset.
fn union_table(nb: &[u64]) -> Vec<u64> {
    let mut table = vec![0u64; 1 << nb.len()];
    for s in 1..table.len() {
        let low = s.trailing_zeros() as usize;
        table[s] = table[s & (s - 1)] | nb[low];
    }
    table
}

fn raw_profile(g: &Graph, chunks: Option<usize>) -> DominationProfile {
    let n = g.order();
    if n == 0 {
        return DominationProfile { counts: Vec::new() };
    }
    let nb = masks(g);
    let full = full_mask(n);
    let low_bits = n.min(LOW_BITS);
    let (low_nb, high_nb) = nb.split_at(low_bits);
    let low_union = union_table(low_nb);
    let low_pop: Vec<usize> = (0..low_union.len()).map(|s| s.count_ones() as usize).collect();

    let high_count: u64 = 1 << high_nb.len();
    let chunks = chunks
        .unwrap_or_else(|| rayon::current_num_threads() * 4)
        .clamp(1, high_count as usize) as u64;
    let step = high_count.div_ceil(chunks);

    let counts = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut local = vec![0u64; n + 1];
            let end = ((c + 1) * step).min(high_count);
            for hi in c * step..end {
                let mut hu = 0u64;
                let mut bits = hi;
                while bits != 0 {
                    hu |= high_nb[bits.trailing_zeros() as usize];
                    bits &= bits - 1;
                }
                let hp = hi.count_ones() as usize;
                let missing = full & !hu;
                for (s, &lu) in low_union.iter().enumerate() {
                    if missing & !lu == 0 {
                        local[hp + low_pop[s]] += 1;
                    }
                }
            }
            local
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    DominationProfile {
        counts: counts[1..].to_vec(),
    }
}

/// Dominating-set counts by size.
pub fn domination_profile(g: &Graph) -> Result<DominationProfile, OracleError> {
    domination_profile_with(g, &OracleOptions::default())
}

pub fn domination_profile_with(
    g: &Graph,
    opts: &OracleOptions,
) -> Result<DominationProfile, OracleError> {
    opts.check(g)?;
    if opts.split_components && !g.is_connected() {
        let p = domination_polynomial_with(g, opts)?;
        return Ok(DominationProfile::from_polynomial(g.order(), &p));
    }
    Ok(raw_profile(g, opts.chunks))
}

/// `D(G, x)`; the null graph gets the constant `1`.
pub fn domination_polynomial(g: &Graph) -> Result<IntPolynomial, OracleError> {
    domination_polynomial_with(g, &OracleOptions::default())
}

pub fn domination_polynomial_with(
    g: &Graph,
    opts: &OracleOptions,
) -> Result<IntPolynomial, OracleError> {
    opts.check(g)?;
    if opts.split_components {
        let comps = g.components();
        if comps.len() > 1 {
            return Ok(comps
                .iter()
                .map(|c| raw_profile(&g.induced_subgraph(c), opts.chunks).to_polynomial())
                .product());
        }
    }
    Ok(raw_profile(g, opts.chunks).to_polynomial())
}

/// Smallest dominating set size, searching sizes in ascending order and
/// stopping at the first hit.
pub fn domination_number(g: &Graph) -> Result<DominationNumber, OracleError> {
    domination_number_with(g, &OracleOptions::default())
}

pub fn domination_number_with(
    g: &Graph,
    opts: &OracleOptions,
) -> Result<DominationNumber, OracleError> {
    opts.check(g)?;
    let n = g.order();
    if n == 0 {
        return Ok(DominationNumber::Undominatable);
    }
    let nb = masks(g);
    let full = full_mask(n);
    let limit = 1u64 << n;
    for k in 1..=n {
        // Gosper's hack over k-subsets
        let mut s: u64 = (1u64 << k) - 1;
        while s < limit {
            let mut u = 0u64;
            let mut bits = s;
            while bits != 0 {
                u |= nb[bits.trailing_zeros() as usize];
                bits &= bits - 1;
            }
            if u == full {
                return Ok(DominationNumber::Finite(k));
            }
            let c = s & s.wrapping_neg();
            let r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    unreachable!("the full vertex set always dominates")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, disjoint_union, GraphFamily};

    fn fam(f: GraphFamily) -> Graph {
        build_family(f).unwrap()
    }

    /// Direct check over every subset, independent of the split/table path.
    fn naive_counts(g: &Graph) -> Vec<u64> {
        let n = g.order();
        let mut counts = vec![0u64; n];
        for s in 1u64..(1 << n) {
            let dominated = (0..n).all(|v| {
                (0..n).any(|u| s & (1 << u) != 0 && g.closed_neighborhood(u).contains(v))
            });
            if dominated {
                counts[s.count_ones() as usize - 1] += 1;
            }
        }
        counts
    }

    #[test]
    fn base_cycles() {
        assert_eq!(domination_profile(&fam(GraphFamily::Cycle(3))).unwrap().counts(), &[3, 3, 1]);
        assert_eq!(domination_profile(&fam(GraphFamily::Complete(2))).unwrap().counts(), &[2, 1]);
        assert_eq!(domination_profile(&fam(GraphFamily::Cycle(4))).unwrap().counts(), &[0, 6, 4, 1]);
        assert_eq!(
            domination_polynomial(&fam(GraphFamily::Complete(1))).unwrap(),
            IntPolynomial::x()
        );
    }

    #[test]
    fn union_of_triangles() {
        let c3 = fam(GraphFamily::Cycle(3));
        let u = disjoint_union(&c3, &c3);
        assert_eq!(
            domination_polynomial(&u).unwrap(),
            IntPolynomial::from_i64s(&[0, 0, 9, 18, 15, 6, 1])
        );
        assert_eq!(domination_number(&u).unwrap(), DominationNumber::Finite(2));
    }

    #[test]
    fn complete_graphs_have_binomial_counts() {
        assert_eq!(
            domination_polynomial(&fam(GraphFamily::Wheel(4))).unwrap(),
            IntPolynomial::from_i64s(&[0, 4, 6, 4, 1])
        );
        assert_eq!(
            domination_number(&fam(GraphFamily::Complete(5))).unwrap(),
            DominationNumber::Finite(1)
        );
    }

    #[test]
    fn null_graph() {
        let g = Graph::empty(0);
        assert_eq!(domination_polynomial(&g).unwrap(), IntPolynomial::one());
        assert_eq!(domination_number(&g).unwrap(), DominationNumber::Undominatable);
        assert!(domination_profile(&g).unwrap().counts().is_empty());
    }

    #[test]
    fn cycle_seven_gamma() {
        assert_eq!(
            domination_number(&fam(GraphFamily::Cycle(7))).unwrap(),
            DominationNumber::Finite(3)
        );
    }

    #[test]
    fn matches_naive_enumeration() {
        let graphs = [
            fam(GraphFamily::Cycle(14)),
            fam(GraphFamily::Path(13)),
            fam(GraphFamily::Wheel(9)),
            disjoint_union(&fam(GraphFamily::Path(5)), &fam(GraphFamily::Cycle(9))),
            Graph::empty(5),
        ];
        for g in &graphs {
            let p = domination_profile(g).unwrap();
            assert_eq!(p.counts(), naive_counts(g).as_slice(), "{g:?}");
            assert!(p.is_consistent());
        }
    }

    #[test]
    fn chunking_does_not_change_counts() {
        let g = disjoint_union(&fam(GraphFamily::Cycle(8)), &fam(GraphFamily::Wheel(8)));
        let reference = domination_profile_with(&g, &OracleOptions { chunks: Some(1), ..Default::default() }).unwrap();
        for chunks in [2, 3, 7, 16, 1000] {
            let opts = OracleOptions { chunks: Some(chunks), ..Default::default() };
            assert_eq!(domination_profile_with(&g, &opts).unwrap(), reference);
        }
        let split = OracleOptions { split_components: true, ..Default::default() };
        assert_eq!(domination_profile_with(&g, &split).unwrap(), reference);
    }

    #[test]
    fn guard_is_enforced() {
        let g = fam(GraphFamily::Cycle(25));
        let err = domination_profile(&g).unwrap_err();
        assert_eq!(err, OracleError::GuardExceeded { order: 25, guard: 24 });
        assert!(err.to_string().contains("--guard-override"));
        assert!(domination_number(&g).is_err());
        assert!(domination_number_with(&g, &OracleOptions::with_guard(25)).is_ok());
        let huge = fam(GraphFamily::Cycle(70));
        assert!(matches!(
            domination_profile_with(&huge, &OracleOptions::with_guard(100)),
            Err(OracleError::GuardExceeded { guard: HARD_LIMIT, .. })
        ));
    }

    #[test]
    fn inconsistent_profiles_are_detected() {
        let bad = DominationProfile { counts: vec![1, 0, 1] };
        assert!(!bad.is_consistent());
        let too_many = DominationProfile { counts: vec![4, 3, 1] };
        assert!(!too_many.is_consistent());
    }
}
