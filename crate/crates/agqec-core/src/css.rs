//! CSS quantum codes from nested classical pairs.
//!
//! A nested pair C1 ⊂ C2 of [n, k_i] codes over F yields an
//! [[n, k2 - k1, d]] quantum code with
//! d = min weight over (C2 \ C1) ∪ (C1^perp \ C2^perp).  Stabilizer
//! convention: X-type rows are a generator of C1, Z-type rows a generator of
//! C2^perp; commutation H_X H_Z^T = 0 is then equivalent to the nesting.

use crate::agcode::{evaluation_code, tail_divisor, tail_evaluation_places, LinearCode};
use crate::curve::{Curve, Divisor};
use crate::error::{Error, Result};
use crate::fflinalg::{rowspace_contains, Matrix};
use crate::minweight::{coset_weight_bound, WeightBound, INFINITE_WEIGHT};

/// Singleton defect bound n + 2 - k - 2d; zero for MDS parameters.
pub fn singleton_defect(n: usize, k: usize, d: u64) -> i64 {
    n as i64 + 2 - k as i64 - 2 * d as i64
}

/// Parameters of a quantum code: length, logical dimension, certified
/// distance knowledge, and alphabet size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumParams {
    pub n: usize,
    pub k: usize,
    /// Best proven lower bound on the distance, when one is known.
    pub d_lb: Option<u64>,
    /// Exact distance, once certified.
    pub d_exact: Option<u64>,
    pub alphabet: u64,
    /// Singleton-defect upper bound n + 2 - k - 2 d_lb.
    pub sd: Option<i64>,
}

impl QuantumParams {
    pub fn new(n: usize, k: usize, d_lb: Option<u64>, alphabet: u64) -> QuantumParams {
        QuantumParams {
            n,
            k,
            d_lb,
            d_exact: None,
            alphabet,
            sd: d_lb.map(|d| singleton_defect(n, k, d)),
        }
    }

    /// The strongest distance statement available (exact beats a bound).
    pub fn best_distance(&self) -> Option<u64> {
        self.d_exact.or(self.d_lb)
    }
}

impl std::fmt::Display for QuantumParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let d = match (self.d_exact, self.d_lb) {
            (Some(d), _) => format!("{d}"),
            (None, Some(d)) => format!(">={d}"),
            (None, None) => "?".into(),
        };
        write!(f, "[[{}, {}, {}]]_{}", self.n, self.k, d, self.alphabet)
    }
}

/// Stabilizer generators: X-type from C1, Z-type from C2's dual.
#[derive(Clone, Debug)]
pub struct StabilizerPair {
    pub h_x: Matrix,
    pub h_z: Matrix,
}

impl StabilizerPair {
    /// The commutation identity H_X H_Z^T = 0.
    pub fn commutes(&self) -> Result<bool> {
        Ok(self.h_x.mul(&self.h_z.transpose())?.is_zero())
    }
}

/// Certified distance information for the two CSS cosets.
#[derive(Clone, Copy, Debug)]
pub struct CssDistance {
    /// Bracket for min weight over C2 \ C1.
    pub x_side: WeightBound,
    /// Bracket for min weight over C1^perp \ C2^perp.
    pub z_side: WeightBound,
    /// Bracket for the quantum distance (min of the two sides).
    pub overall: WeightBound,
}

/// A nested pair with its derived quantum parameters.
#[derive(Clone, Debug)]
pub struct CssCode {
    pub c1: LinearCode,
    pub c2: LinearCode,
    pub params: QuantumParams,
}

impl CssCode {
    /// Validates nesting and assembles parameters; the distance bound is the
    /// designed min(d(C2), d(C1^perp)) when both construction bounds exist.
    pub fn new(c1: LinearCode, c2: LinearCode) -> Result<CssCode> {
        if c1.field() != c2.field() {
            return Err(Error::MixedFields);
        }
        if c1.n() != c2.n() {
            return Err(Error::ShapeMismatch("codes of different length".into()));
        }
        if !rowspace_contains(c2.generator(), c1.generator())? {
            return Err(Error::NotNested);
        }
        let n = c2.n();
        let k = c2.k() - c1.k();
        let d_lb = match (c2.designed_d, c1.dual_designed_d) {
            (Some(a), Some(b)) => Some(a.min(b)),
            _ => None,
        };
        let params = QuantumParams::new(n, k, d_lb, c2.field().order());
        if let Some(d) = d_lb {
            // The quantum Singleton bound applies to the true distance and
            // therefore to any valid lower bound for it.
            if k > 0 && params.k as u64 + 2 * d > n as u64 + 2 {
                return Err(Error::Internal(format!(
                    "distance bound {d} violates the Singleton bound for [[{n}, {k}]]"
                )));
            }
        }
        Ok(CssCode { c1, c2, params })
    }

    pub fn stabilizers(&self) -> StabilizerPair {
        StabilizerPair {
            h_x: self.c1.generator().clone(),
            h_z: self.c2.parity_check(),
        }
    }

    /// Certifies the quantum distance by bounding both cosets; records an
    /// exact distance or an improved bound on the stored parameters.
    pub fn certify_distance(&mut self, budget: u64) -> Result<CssDistance> {
        let x_side = coset_weight_bound(&self.c2, &self.c1, budget)?;
        let c1d = self.c1.dual();
        let c2d = self.c2.dual();
        let z_side = coset_weight_bound(&c1d, &c2d, budget)?;
        let overall = x_side.union_min(z_side);
        if overall.is_exact() && overall.upper != INFINITE_WEIGHT {
            self.params.d_exact = Some(overall.upper);
        }
        if overall.lower != INFINITE_WEIGHT
            && self.params.d_lb.is_none_or(|d| overall.lower > d)
        {
            self.params.d_lb = Some(overall.lower);
            self.params.sd = Some(singleton_defect(self.params.n, self.params.k, overall.lower));
        }
        Ok(CssDistance { x_side, z_side, overall })
    }
}

/// Assembles the quantum parameters and stabilizer pair for a nested pair,
/// verifying commutation.
pub fn css_assemble(c1: &LinearCode, c2: &LinearCode) -> Result<(QuantumParams, StabilizerPair)> {
    let css = CssCode::new(c1.clone(), c2.clone())?;
    let stab = css.stabilizers();
    if !stab.commutes()? {
        return Err(Error::Internal("stabilizers do not commute".into()));
    }
    Ok((css.params, stab))
}

fn check_window(two_g_minus_2: i64, deg_a: i64, deg_b: i64, n: usize) -> Result<()> {
    if deg_a > deg_b {
        return Err(Error::InvalidParameter(format!(
            "deg G1 = {deg_a} exceeds deg G2 = {deg_b}"
        )));
    }
    if deg_a <= two_g_minus_2 {
        return Err(Error::InvalidParameter(format!(
            "deg G1 = {deg_a} is not above 2g - 2 = {two_g_minus_2}"
        )));
    }
    if deg_b >= n as i64 {
        return Err(Error::InvalidParameter(format!(
            "deg G2 = {deg_b} is not below n = {n}"
        )));
    }
    Ok(())
}

/// Quantum parameters for the rational multi-point construction: divisors
/// sum a_i P_i <= sum b_i P_i on t rational places, evaluated at the other
/// n = N - t rational places.  Pure arithmetic, no matrices.
pub fn t_point_params(c: &Curve, a: &[i64], b: &[i64]) -> Result<QuantumParams> {
    let t = a.len();
    if t == 0 || t != b.len() {
        return Err(Error::InvalidParameter("coefficient sequences of unequal length".into()));
    }
    if (t as u64) >= c.n_rational_places() {
        return Err(Error::InvalidParameter("more divisor places than rational places".into()));
    }
    for (&ai, &bi) in a.iter().zip(b) {
        if ai > bi {
            return Err(Error::InvalidParameter(format!(
                "coefficient pair a = {ai}, b = {bi} is not nested"
            )));
        }
    }
    let n = (c.n_rational_places() as usize) - t;
    let deg_a: i64 = a.iter().sum();
    let deg_b: i64 = b.iter().sum();
    let two_g_minus_2 = 2 * c.genus() as i64 - 2;
    check_window(two_g_minus_2, deg_a, deg_b, n)?;
    let k = (deg_b - deg_a) as usize;
    let d_lb = (n as i64 - deg_b).min(deg_a - two_g_minus_2) as u64;
    Ok(QuantumParams::new(n, k, Some(d_lb), c.base_field().order()))
}

/// Explicit matrices for the rational multi-point construction; dimensions
/// are cross-checked against `t_point_params`.
pub fn t_point_build(c: &Curve, a: &[i64], b: &[i64]) -> Result<CssCode> {
    let expected = t_point_params(c, a, b)?;
    let g1 = tail_divisor(c, a)?;
    let g2 = tail_divisor(c, b)?;
    let places = tail_evaluation_places(c, a.len());
    let c1 = evaluation_code(c, &g1, &places)?;
    let c2 = evaluation_code(c, &g2, &places)?;
    let css = CssCode::new(c1, c2)?;
    if css.params != expected {
        return Err(Error::Internal(format!(
            "built parameters {} disagree with the formula {}",
            css.params, expected
        )));
    }
    Ok(css)
}

/// Quantum parameters for divisors supported on places of degree
/// `degrees[i]` >= 1 with coefficient windows a_i <= b_i, on a curve of the
/// given genus with n evaluation places.  Pure arithmetic.
pub fn non_rational_params(
    n: usize,
    genus: i64,
    alphabet: u64,
    a: &[i64],
    b: &[i64],
    degrees: &[i64],
) -> Result<QuantumParams> {
    let t = a.len();
    if t == 0 || t != b.len() || t != degrees.len() {
        return Err(Error::InvalidParameter("coefficient sequences of unequal length".into()));
    }
    if degrees.iter().any(|&d| d < 1) {
        return Err(Error::InvalidParameter("place degrees must be positive".into()));
    }
    for (&ai, &bi) in a.iter().zip(b) {
        if ai > bi {
            return Err(Error::InvalidParameter(format!(
                "coefficient pair a = {ai}, b = {bi} is not nested"
            )));
        }
    }
    let deg_a: i64 = a.iter().zip(degrees).map(|(&ai, &al)| ai * al).sum();
    let deg_b: i64 = b.iter().zip(degrees).map(|(&bi, &al)| bi * al).sum();
    let two_g_minus_2 = 2 * genus - 2;
    check_window(two_g_minus_2, deg_a, deg_b, n)?;
    let k = (deg_b - deg_a) as usize;
    let d_lb = (n as i64 - deg_b).min(deg_a - two_g_minus_2) as u64;
    Ok(QuantumParams::new(n, k, Some(d_lb), alphabet))
}

/// Explicit construction with both divisors supported on one degree-2 place:
/// G_i = t_i Q, evaluated at every rational place.  On the genus-2 member
/// (5,2) this is the length-46 family with k = 2(t2 - t1).
pub fn hyperelliptic_build(c: &Curve, t1: i64, t2: i64) -> Result<CssCode> {
    let n = c.n_rational_places() as usize;
    let expected = non_rational_params(
        n,
        c.genus() as i64,
        c.base_field().order(),
        &[t1],
        &[t2],
        &[2],
    )?;
    let place = c.find_degree2_place()?;
    let g1 = Divisor::single(place, t1);
    let g2 = Divisor::single(place, t2);
    let d_places = c.rational_places().to_vec();
    let c1 = evaluation_code(c, &g1, &d_places)?;
    let c2 = evaluation_code(c, &g2, &d_places)?;
    let css = CssCode::new(c1, c2)?;
    if css.params != expected {
        return Err(Error::Internal(format!(
            "built parameters {} disagree with the formula {}",
            css.params, expected
        )));
    }
    if css.params.k as i64 != 2 * (t2 - t1) {
        return Err(Error::Internal("dimension disagrees with 2(t2 - t1)".into()));
    }
    Ok(css)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agcode::default_evaluation_places;
    use crate::curve::Place;
    use crate::minweight::DEFAULT_BUDGET;

    #[test]
    fn one_point_pair_on_the_smallest_member() {
        // (3,2): C1 = eval(10 Pinf), C2 = eval(12 Pinf) on the 15 affine
        // places -> [[15, 2, >=3]]_9.
        let c = Curve::new(3, 2).unwrap();
        let d = tail_evaluation_places(&c, 1);
        let c1 = evaluation_code(&c, &Divisor::single(Place::Infinity, 10), &d).unwrap();
        let c2 = evaluation_code(&c, &Divisor::single(Place::Infinity, 12), &d).unwrap();
        let (params, stab) = css_assemble(&c1, &c2).unwrap();
        assert_eq!((params.n, params.k), (15, 2));
        assert_eq!(params.d_lb, Some(3));
        assert_eq!(params.alphabet, 9);
        assert!(stab.commutes().unwrap());
        // rank H_X + rank H_Z = n - k.
        assert_eq!(stab.h_x.rows() + stab.h_z.rows(), 15 - 2);
    }

    #[test]
    fn exact_distance_of_the_small_pair() {
        let c = Curve::new(3, 2).unwrap();
        let d = tail_evaluation_places(&c, 1);
        let c1 = evaluation_code(&c, &Divisor::single(Place::Infinity, 10), &d).unwrap();
        let c2 = evaluation_code(&c, &Divisor::single(Place::Infinity, 12), &d).unwrap();
        let mut css = CssCode::new(c1, c2).unwrap();
        let dist = css.certify_distance(DEFAULT_BUDGET).unwrap();
        assert!(dist.overall.is_exact());
        let d_exact = css.params.d_exact.unwrap();
        assert!(d_exact >= 3, "exact distance below the designed bound");
        // Quantum Singleton: k + 2d <= n + 2.
        assert!(2 + 2 * d_exact <= 15 + 2);
        // The Z side is protected by the dual designed bound deg G1 = 10.
        assert!(dist.z_side.lower >= 10);
    }

    #[test]
    fn equal_codes_give_zero_logicals() {
        let c = Curve::new(3, 2).unwrap();
        let d = tail_evaluation_places(&c, 1);
        let code = evaluation_code(&c, &Divisor::single(Place::Infinity, 7), &d).unwrap();
        let (params, _) = css_assemble(&code, &code).unwrap();
        assert_eq!(params.k, 0);
    }

    #[test]
    fn non_nested_pairs_are_rejected() {
        let c = Curve::new(3, 2).unwrap();
        let places = c.rational_places().to_vec();
        let d: Vec<Place> = places[..14].to_vec();
        // Vanishing at different points makes the spaces incomparable.
        let mut g1 = Divisor::single(Place::Infinity, 8);
        g1.add_place(places[14], -1);
        let mut g2 = Divisor::single(Place::Infinity, 8);
        g2.add_place(places[14], -2);
        let c1 = evaluation_code(&c, &g1, &d).unwrap();
        let c2 = evaluation_code(&c, &g2, &d).unwrap();
        assert!(matches!(CssCode::new(c1.clone(), c2).err(), Some(Error::NotNested)));
        // A pair that genuinely nests passes.
        let big = evaluation_code(&c, &Divisor::single(Place::Infinity, 9), &d).unwrap();
        assert!(CssCode::new(c1, big).is_ok());
    }

    #[test]
    fn two_point_formula_rows() {
        // (q, m) = (3, 4): windows around the published two-point rows.
        let c = Curve::new(3, 4).unwrap();
        for (a, b, n, k, d) in [
            (vec![3i64, 4], vec![7i64, 16], 26usize, 16usize, 3u64),
            (vec![3, 5], vec![7, 15], 26, 14, 4),
            (vec![3, 6], vec![7, 14], 26, 12, 5),
            (vec![3, 10], vec![7, 10], 26, 4, 9),
            (vec![4, 10], vec![6, 10], 26, 2, 10),
        ] {
            let p = t_point_params(&c, &a, &b).unwrap();
            assert_eq!((p.n, p.k, p.d_lb), (n, k, Some(d)), "a = {a:?}, b = {b:?}");
            assert_eq!(p.sd, Some(singleton_defect(n, k, d)));
        }
    }

    #[test]
    fn one_point_table_rows_via_t1() {
        let c = Curve::new(3, 4).unwrap();
        // [[27, 1, >=11]] and [[27, 17, >=3]].
        let p = t_point_params(&c, &[15], &[16]).unwrap();
        assert_eq!((p.n, p.k, p.d_lb), (27, 1, Some(11)));
        let p = t_point_params(&c, &[7], &[24]).unwrap();
        assert_eq!((p.n, p.k, p.d_lb), (27, 17, Some(3)));
        assert_eq!(p.sd, Some(6));
    }

    #[test]
    fn window_violations_name_the_inequality() {
        let c = Curve::new(3, 4).unwrap(); // g = 3, N = 28
        let msg = |r: Result<QuantumParams>| match r {
            Err(Error::InvalidParameter(m)) => m,
            other => panic!("expected a range error, got {other:?}"),
        };
        assert!(msg(t_point_params(&c, &[4], &[3])).contains("not nested"));
        assert!(msg(t_point_params(&c, &[2], &[5])).contains("2g - 2"));
        assert!(msg(t_point_params(&c, &[5], &[27])).contains("below n"));
    }

    #[test]
    fn formula_and_matrices_agree_on_a_two_point_row() {
        let c = Curve::new(3, 4).unwrap();
        let css = t_point_build(&c, &[3, 4], &[7, 16]).unwrap();
        assert_eq!((css.params.n, css.params.k), (26, 16));
        assert_eq!(css.params.d_lb, Some(3));
        let stab = css.stabilizers();
        assert!(stab.commutes().unwrap());
        assert_eq!(stab.h_x.rows() + stab.h_z.rows(), 26 - 16);
    }

    #[test]
    fn degree2_formula_rows() {
        for (t1, t2, k, d) in [(3i64, 21i64, 36usize, 4u64), (4, 20, 32, 6), (5, 19, 28, 8), (11, 13, 4, 20)] {
            let p = non_rational_params(46, 2, 25, &[t1], &[t2], &[2]).unwrap();
            assert_eq!((p.n, p.k, p.d_lb), (46, k, Some(d)), "t1 = {t1}, t2 = {t2}");
            assert_eq!(p.sd, Some(4), "defect at t1 = {t1}");
        }
    }

    #[test]
    fn degree2_build_matches_its_formula() {
        let c = Curve::new(5, 2).unwrap();
        let css = hyperelliptic_build(&c, 11, 13).unwrap();
        assert_eq!((css.params.n, css.params.k), (46, 4));
        assert_eq!(css.params.d_lb, Some(20));
        assert_eq!(css.params.sd, Some(4));
        let stab = css.stabilizers();
        assert!(stab.commutes().unwrap());
        assert_eq!(stab.h_x.rows() + stab.h_z.rows(), 46 - 4);
    }

    #[test]
    fn singleton_defect_examples() {
        assert_eq!(singleton_defect(46, 36, 4), 4);
        assert_eq!(singleton_defect(26, 16, 3), 6);
        // MDS parameters have defect zero.
        assert_eq!(singleton_defect(8, 2, 4), 0);
    }

    #[test]
    fn zero_divisor_subcode_has_no_dual_bound() {
        // C1 from the zero divisor: its dual designed bound 0 - (2g - 2)
        // vanishes on the genus-1 member, so the pair carries no distance
        // bound even though it assembles fine.
        let c = Curve::new(3, 2).unwrap();
        let g2 = Divisor::single(Place::Infinity, 5);
        let d = default_evaluation_places(&c, &g2);
        let c1 = evaluation_code(&c, &Divisor::zero(), &d).unwrap();
        let c2 = evaluation_code(&c, &g2, &d).unwrap();
        let css = CssCode::new(c1, c2).unwrap();
        assert_eq!(css.params.k, 4);
        assert_eq!(css.params.d_lb, None);
        assert_eq!(css.params.sd, None);
    }
}
