//! Minimum-weight certification.
//!
//! Two engines: an exhaustive message-space walk for codes with q^k within
//! budget, and an information-set search in the style of Brouwer-Zimmermann
//! that enumerates low-weight row combinations over a family of disjoint
//! systematizations, maintaining a certified lower bound alongside the best
//! weight seen.  Both support excluding a subcode, which is what CSS coset
//! distances need.

use rayon::prelude::*;

use crate::agcode::LinearCode;
use crate::error::{Error, Result};
use crate::fflinalg::{rowspace_contains, Matrix};

/// Weight reported for an empty enumeration (zero code or empty coset).
pub const INFINITE_WEIGHT: u64 = u64::MAX;

/// Default operation budget: roughly field operations spent enumerating.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A certified bracket on a minimum weight; `lower == upper` means exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightBound {
    pub lower: u64,
    pub upper: u64,
}

impl WeightBound {
    pub fn exact(v: u64) -> WeightBound {
        WeightBound { lower: v, upper: v }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    /// Bracket for the minimum over the union of two searched sets.
    pub fn union_min(self, other: WeightBound) -> WeightBound {
        WeightBound {
            lower: self.lower.min(other.lower),
            upper: self.upper.min(other.upper),
        }
    }
}

fn weight(word: &[u64]) -> u64 {
    word.iter().filter(|&&v| v != 0).count() as u64
}

/// q^k * n as a u128 cost proxy, saturating.
fn exhaustive_cost(q: u64, k: usize, n: usize) -> u128 {
    let mut c: u128 = n.max(1) as u128;
    for _ in 0..k {
        c = c.saturating_mul(q as u128);
    }
    c
}

/// Walks all codewords with message digits fixed up to `depth`, calling the
/// sink at every leaf reached with at least one nonzero digit.
fn walk_messages<F: FnMut(&[u64])>(
    gen: &Matrix,
    depth: usize,
    nonzero: bool,
    stack: &mut Vec<Vec<u64>>,
    sink: &mut F,
) {
    let k = gen.rows();
    if depth == k {
        if nonzero {
            sink(&stack[k]);
        }
        return;
    }
    let f = gen.field().clone();
    let q = f.order();
    // Digit 0 first: copy the partial sum forward.
    {
        let (lo, hi) = stack.split_at_mut(depth + 1);
        hi[0].copy_from_slice(&lo[depth]);
    }
    walk_messages(gen, depth + 1, nonzero, stack, sink);
    for lam in 1..q {
        // Forward slot = partial sum + lam * row; scalar multiplication, not
        // repeated addition, so extension-field digits are covered too.
        let (lo, hi) = stack.split_at_mut(depth + 1);
        for c in 0..gen.cols() {
            hi[0][c] = f.add(lo[depth][c], f.mul(lam, gen.get(depth, c)));
        }
        walk_messages(gen, depth + 1, true, stack, sink);
    }
}

/// Minimum weight over all codewords outside `exclude` (outside the zero
/// word when `exclude` is None), by full message enumeration.
fn exhaustive_excluding(c: &LinearCode, exclude: Option<&LinearCode>, budget: u64) -> Result<u64> {
    let k = c.k();
    let n = c.n();
    if k == 0 {
        return Ok(INFINITE_WEIGHT);
    }
    let q = c.field().order();
    let needed = exhaustive_cost(q, k, n).saturating_mul(if exclude.is_some() { 2 } else { 1 });
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget: budget as u128 });
    }
    let gen = c.generator();
    let f = c.field().clone();
    // Parallelize over the first message digit; each branch walks q^(k-1).
    let best = (0..q)
        .into_par_iter()
        .map(|d0| {
            let mut stack: Vec<Vec<u64>> = vec![vec![0u64; n]; k + 1];
            for col in 0..n {
                stack[1][col] = f.mul(d0, gen.get(0, col));
            }
            let mut local = INFINITE_WEIGHT;
            let mut sink = |word: &[u64]| {
                let w = weight(word);
                if w < local && exclude.is_none_or(|e| !e.contains_word(word)) {
                    local = w;
                }
            };
            if k == 1 {
                if d0 != 0 {
                    sink(&stack[1].clone());
                }
            } else {
                walk_messages(gen, 1, d0 != 0, &mut stack, &mut sink);
            }
            local
        })
        .min()
        .unwrap_or(INFINITE_WEIGHT);
    Ok(best)
}

/// Exact minimum weight by exhaustive enumeration; errors when q^k * n
/// exceeds the budget.
pub fn exhaustive_min_weight(c: &LinearCode, budget: u64) -> Result<u64> {
    exhaustive_excluding(c, None, budget)
}

/// Exact minimum weight over the coset complement C2 \ C1 (the X-side CSS
/// quantity); INFINITE_WEIGHT when C1 = C2.
pub fn coset_min_weight(c2: &LinearCode, c1: &LinearCode, budget: u64) -> Result<u64> {
    if c1.field() != c2.field() {
        return Err(Error::MixedFields);
    }
    if c1.n() != c2.n() {
        return Err(Error::ShapeMismatch("codes of different length".into()));
    }
    if !rowspace_contains(c2.generator(), c1.generator())? {
        return Err(Error::NotNested);
    }
    exhaustive_excluding(c2, Some(c1), budget)
}

/// Enumerates sum_{s in S} lambda_s row_s over all |S| = w index sets and
/// nonzero coefficient tuples.
fn enumerate_combinations<F: FnMut(&[u64])>(
    mat: &Matrix,
    w: usize,
    first: usize,
    stack: &mut Vec<Vec<u64>>,
    chosen: usize,
    sink: &mut F,
) {
    if chosen == w {
        sink(&stack[w]);
        return;
    }
    let f = mat.field().clone();
    let q = f.order();
    let k = mat.rows();
    // Leave room for the remaining w - chosen - 1 picks.
    for i in first..=(k - (w - chosen)) {
        for lam in 1..q {
            let (lo, hi) = stack.split_at_mut(chosen + 1);
            for c in 0..mat.cols() {
                hi[0][c] = f.add(lo[chosen][c], f.mul(lam, mat.get(i, c)));
            }
            enumerate_combinations(mat, w, i + 1, stack, chosen + 1, sink);
        }
    }
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    acc
}

/// Disjoint-information-set systematizations of the generator: pairs of a
/// row-equivalent k x n matrix and the rank it achieves on its pivot set.
fn information_sets(c: &LinearCode) -> Vec<(Matrix, usize)> {
    let n = c.n();
    let mut used = vec![false; n];
    let mut out = Vec::new();
    loop {
        let allowed: Vec<bool> = (0..n).map(|i| !used[i]).collect();
        let (r, rank, pivots) = c.generator().rref_restricted(&allowed);
        if rank == 0 {
            break;
        }
        for &p in &pivots {
            used[p] = true;
        }
        out.push((r, rank));
    }
    out
}

/// Information-set search for the minimum weight over codewords of `c` not
/// lying in `exclude`.  Returns a certified bracket; exactness is reached
/// either by the lower bound catching the best weight or by exhausting all
/// combination weights up to k.
pub fn search_min_weight_excluding(
    c: &LinearCode,
    exclude: Option<&LinearCode>,
    budget: u64,
) -> WeightBound {
    let k = c.k();
    let n = c.n();
    if k == 0 {
        return WeightBound::exact(INFINITE_WEIGHT);
    }
    let q = c.field().order();
    let sets = information_sets(c);
    let lower_after = |w: usize| -> u64 {
        sets.iter()
            .map(|&(_, rank)| (w as i64 + 1 - (k - rank) as i64).max(0) as u64)
            .sum()
    };
    let mut upper = INFINITE_WEIGHT;
    let mut spent: u128 = 0;
    let mut completed = 0usize;
    for w in 1..=k {
        let round: u128 = binom(k, w)
            .saturating_mul((q as u128 - 1).saturating_pow(w as u32))
            .saturating_mul(n as u128)
            .saturating_mul(sets.len() as u128);
        if spent.saturating_add(round) > budget as u128 {
            break;
        }
        spent += round;
        for (mat, _) in &sets {
            // Parallel over the first chosen row; the remaining w - 1 picks
            // run sequentially inside each branch.
            let branch_best = (0..=(k - w))
                .into_par_iter()
                .map(|i| {
                    let f = mat.field().clone();
                    let mut stack: Vec<Vec<u64>> = vec![vec![0u64; n]; w + 1];
                    let mut local = INFINITE_WEIGHT;
                    let mut sink = |word: &[u64]| {
                        let wt = weight(word);
                        if wt < local && exclude.is_none_or(|e| !e.contains_word(word)) {
                            local = wt;
                        }
                    };
                    for lam in 1..q {
                        for col in 0..n {
                            stack[1][col] = f.mul(lam, mat.get(i, col));
                        }
                        if w == 1 {
                            sink(&stack[1].clone());
                        } else {
                            enumerate_combinations(mat, w, i + 1, &mut stack, 1, &mut sink);
                        }
                    }
                    local
                })
                .min()
                .unwrap_or(INFINITE_WEIGHT);
            upper = upper.min(branch_best);
        }
        completed = w;
        if lower_after(w) >= upper {
            return WeightBound::exact(upper);
        }
    }
    if completed == k {
        // Every codeword was enumerated through the full-rank first set.
        return WeightBound::exact(upper);
    }
    let lower = if completed == 0 { 1 } else { lower_after(completed) };
    WeightBound {
        lower: lower.min(upper),
        upper,
    }
}

/// Information-set search bracket (lower, upper) on the minimum weight;
/// equal components certify exactness.  The zero code yields the infinite
/// sentinel in both slots.
pub fn bz_min_weight(c: &LinearCode, budget: u64) -> (u64, u64) {
    let b = search_min_weight_excluding(c, None, budget);
    (b.lower, b.upper)
}

/// Certified bracket on the minimum weight of a code: exhaustive when the
/// budget allows, otherwise the information-set search.
pub fn min_weight_bound(c: &LinearCode, budget: u64) -> WeightBound {
    match exhaustive_min_weight(c, budget) {
        Ok(v) => WeightBound::exact(v),
        Err(_) => search_min_weight_excluding(c, None, budget),
    }
}

/// Certified bracket on min weight over C2 \ C1.
pub fn coset_weight_bound(c2: &LinearCode, c1: &LinearCode, budget: u64) -> Result<WeightBound> {
    match coset_min_weight(c2, c1, budget) {
        Ok(v) => Ok(WeightBound::exact(v)),
        Err(Error::BudgetExceeded { .. }) => {
            if !rowspace_contains(c2.generator(), c1.generator())? {
                return Err(Error::NotNested);
            }
            Ok(search_min_weight_excluding(c2, Some(c1), budget))
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fflinalg::Matrix;
    use crate::gf::Field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn code_from_rows(f: &Field, rows: Vec<Vec<u64>>) -> LinearCode {
        LinearCode::from_generator(Matrix::from_rows(f.clone(), rows).unwrap())
    }

    #[test]
    fn repetition_code_weight() {
        let f = Field::new(3, 2).unwrap();
        let c = code_from_rows(&f, vec![vec![1; 7]]);
        assert_eq!(exhaustive_min_weight(&c, DEFAULT_BUDGET).unwrap(), 7);
        assert_eq!(min_weight_bound(&c, DEFAULT_BUDGET), WeightBound::exact(7));
    }

    #[test]
    fn zero_code_is_infinite() {
        let f = Field::new(3, 2).unwrap();
        let c = LinearCode::from_generator(Matrix::zero(f, 0, 5));
        assert_eq!(exhaustive_min_weight(&c, DEFAULT_BUDGET).unwrap(), INFINITE_WEIGHT);
        assert!(search_min_weight_excluding(&c, None, DEFAULT_BUDGET).is_exact());
    }

    #[test]
    fn budget_gate_fires() {
        let f = Field::new(3, 2).unwrap();
        let rows = (0..12)
            .map(|i| (0..24).map(|j| u64::from(i == j / 2)).collect())
            .collect();
        let c = code_from_rows(&f, rows);
        // 9^12 * 24 comfortably exceeds a tiny budget.
        assert!(matches!(
            exhaustive_min_weight(&c, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn coset_excludes_the_subcode() {
        // C2 = span{e1, e2+e3}, C1 = span{e1}: the coset minimum ignores
        // the weight-1 vector living in C1.
        let f = Field::new(3, 2).unwrap();
        let c2 = code_from_rows(&f, vec![vec![1, 0, 0], vec![0, 1, 1]]);
        let c1 = code_from_rows(&f, vec![vec![1, 0, 0]]);
        assert_eq!(exhaustive_min_weight(&c2, DEFAULT_BUDGET).unwrap(), 1);
        assert_eq!(coset_min_weight(&c2, &c1, DEFAULT_BUDGET).unwrap(), 2);
        // Equal codes leave an empty coset.
        assert_eq!(coset_min_weight(&c1, &c1, DEFAULT_BUDGET).unwrap(), INFINITE_WEIGHT);
        // Non-nested pairs are rejected.
        let other = code_from_rows(&f, vec![vec![0, 1, 0]]);
        assert!(matches!(
            coset_min_weight(&c1, &other, DEFAULT_BUDGET),
            Err(Error::NotNested)
        ));
    }

    #[test]
    fn search_agrees_with_exhaustive_on_random_codes() {
        let f = Field::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for trial in 0..40 {
            let k = rng.random_range(1..=4usize);
            let n = rng.random_range(k..=9usize);
            let rows: Vec<Vec<u64>> = (0..k)
                .map(|_| (0..n).map(|_| rng.random_range(0..9u64)).collect())
                .collect();
            let c = code_from_rows(&f, rows);
            if c.k() == 0 {
                continue;
            }
            let exact = exhaustive_min_weight(&c, DEFAULT_BUDGET).unwrap();
            let bound = search_min_weight_excluding(&c, None, DEFAULT_BUDGET);
            assert!(bound.is_exact(), "trial {trial} not exact");
            assert_eq!(bound.upper, exact, "trial {trial}");
        }
    }

    #[test]
    fn search_respects_exclusion() {
        let f = Field::new(3, 2).unwrap();
        let c2 = code_from_rows(&f, vec![vec![1, 0, 0, 0], vec![0, 1, 1, 1]]);
        let c1 = code_from_rows(&f, vec![vec![1, 0, 0, 0]]);
        let bound = search_min_weight_excluding(&c2, Some(&c1), DEFAULT_BUDGET);
        assert!(bound.is_exact());
        assert_eq!(bound.upper, 3);
    }

    #[test]
    fn truncated_search_returns_a_valid_bracket() {
        // A long random code with a small budget: the bracket must contain
        // the exhaustive answer.
        let f = Field::new(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (k, n) = (6usize, 14usize);
        let rows: Vec<Vec<u64>> = (0..k)
            .map(|_| (0..n).map(|_| rng.random_range(0..3u64)).collect())
            .collect();
        let c = code_from_rows(&f, rows);
        let exact = exhaustive_min_weight(&c, DEFAULT_BUDGET).unwrap();
        let bound = search_min_weight_excluding(&c, None, 2_000);
        assert!(bound.lower <= exact && exact <= bound.upper);
    }

    #[test]
    fn union_min_combines_brackets() {
        let a = WeightBound { lower: 3, upper: 5 };
        let b = WeightBound::exact(4);
        let u = a.union_min(b);
        assert_eq!(u, WeightBound { lower: 3, upper: 4 });
    }
}
