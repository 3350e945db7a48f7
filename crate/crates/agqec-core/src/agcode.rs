//! Evaluation (function) codes and their duals.
//!
//! `evaluation_code` sends a Riemann-Roch basis of L(G) to its value vectors
//! on a list of rational places D disjoint from supp G.  For
//! 2g - 2 < deg G < n this yields dimension deg G + 1 - g and minimum
//! distance at least n - deg G; the dual code has dimension n + g - 1 - deg G
//! and distance at least deg G - (2g - 2).  Dimensions are enforced as hard
//! internal checks, never taken on faith.

use crate::curve::{Curve, Divisor, Place};
use crate::error::{Error, Result};
use crate::fflinalg::Matrix;
use crate::gf::Field;
use crate::riemann_roch::{evaluate, rr_space};

/// Which side of the construction a code came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeSide {
    Evaluation,
    Dual,
}

/// Construction metadata carried along so downstream layers can recover
/// designed distance bounds without re-deriving the geometry.
#[derive(Clone, Debug)]
pub struct CodeProvenance {
    pub q: u64,
    pub m: u64,
    pub genus: u64,
    pub deg_g: i64,
    pub divisor: String,
    pub side: CodeSide,
}

impl CodeProvenance {
    /// Designed minimum-distance bound for this side, when positive.
    pub fn designed_distance(&self, n: usize) -> Option<u64> {
        let v = match self.side {
            CodeSide::Evaluation => n as i64 - self.deg_g,
            CodeSide::Dual => self.deg_g - (2 * self.genus as i64 - 2),
        };
        (v > 0).then_some(v as u64)
    }
}

/// A linear code with its generator held in reduced row-echelon form.
#[derive(Clone, Debug)]
pub struct LinearCode {
    field: Field,
    n: usize,
    k: usize,
    gen: Matrix,
    pivots: Vec<usize>,
    pub provenance: Option<CodeProvenance>,
    /// Designed (provable) lower bound on the minimum distance.
    pub designed_d: Option<u64>,
    /// Designed lower bound on the minimum distance of the dual code;
    /// carried separately so it survives transformations (such as subfield
    /// expansion) that preserve the bound but invalidate its formula.
    pub dual_designed_d: Option<u64>,
    /// Exact minimum distance, once certified.
    pub exact_d: Option<u64>,
}

impl LinearCode {
    /// Builds a code from spanning rows; the generator is row-reduced and
    /// zero rows are dropped, so `k` is the true dimension.
    pub fn from_generator(gen: Matrix) -> LinearCode {
        let (r, rank, pivots) = gen.rref();
        let reduced = r.nonzero_rows();
        debug_assert_eq!(reduced.rows(), rank);
        LinearCode {
            field: gen.field().clone(),
            n: gen.cols(),
            k: rank,
            gen: reduced,
            pivots,
            provenance: None,
            designed_d: None,
            dual_designed_d: None,
            exact_d: None,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The reduced row-echelon generator matrix (k x n).
    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    /// Parity-check matrix: a generator of the dual, in echelon form.
    pub fn parity_check(&self) -> Matrix {
        let (r, _, _) = self.gen.kernel().rref();
        r.nonzero_rows()
    }

    /// The Euclidean dual code, without provenance.
    pub fn dual(&self) -> LinearCode {
        LinearCode::from_generator(self.gen.kernel())
    }

    /// Whether a word (as encodings) belongs to the code: reduce against the
    /// echelon generator and test for a zero residue.
    pub fn contains_word(&self, word: &[u64]) -> bool {
        if word.len() != self.n {
            return false;
        }
        let f = &self.field;
        let mut w = word.to_vec();
        for (row, &col) in self.pivots.iter().enumerate() {
            let factor = w[col];
            if factor != 0 {
                for c2 in col..self.n {
                    w[c2] = f.sub(w[c2], f.mul(factor, self.gen.get(row, c2)));
                }
            }
        }
        w.iter().all(|&v| v == 0)
    }
}

/// All rational places of the curve not meeting supp G, in canonical order:
/// the default evaluation set.
pub fn default_evaluation_places(c: &Curve, g: &Divisor) -> Vec<Place> {
    c.rational_places()
        .iter()
        .copied()
        .filter(|p| g.coeff(p) == 0)
        .collect()
}

/// The evaluation code C_L(D, G) over F_{q^2}.
pub fn evaluation_code(c: &Curve, g: &Divisor, d_places: &[Place]) -> Result<LinearCode> {
    let n = d_places.len();
    {
        let mut seen = std::collections::BTreeSet::new();
        for p in d_places {
            if !matches!(p, Place::Affine { .. } | Place::Infinity) {
                return Err(Error::Unsupported("evaluation places must be rational".into()));
            }
            if !seen.insert(*p) {
                return Err(Error::InvalidParameter("repeated evaluation place".into()));
            }
            if g.coeff(p) != 0 {
                return Err(Error::SupportMeetsEvaluation);
            }
        }
    }
    let basis = rr_space(c, g)?;
    let rows: Vec<Vec<u64>> = basis
        .iter()
        .map(|f| {
            d_places
                .iter()
                .map(|p| evaluate(c, f, p).map(|e| e.enc()))
                .collect::<Result<Vec<u64>>>()
        })
        .collect::<Result<_>>()?;
    let gen = if rows.is_empty() {
        Matrix::zero(c.base_field().clone(), 0, n)
    } else {
        Matrix::from_rows(c.base_field().clone(), rows)?
    };
    let mut code = LinearCode::from_generator(gen);
    let deg_g = g.degree();
    let genus = c.genus() as i64;
    // Inside the regular window the dimension is pinned by the geometry.
    if deg_g > 2 * genus - 2 && deg_g < n as i64 && code.k as i64 != deg_g + 1 - genus {
        return Err(Error::Internal(format!(
            "evaluation code dimension {} disagrees with deg G + 1 - g = {}",
            code.k,
            deg_g + 1 - genus
        )));
    }
    let provenance = CodeProvenance {
        q: c.q(),
        m: c.m(),
        genus: c.genus(),
        deg_g,
        divisor: g.to_string(),
        side: CodeSide::Evaluation,
    };
    code.designed_d = provenance.designed_distance(n);
    code.dual_designed_d = CodeProvenance { side: CodeSide::Dual, ..provenance.clone() }
        .designed_distance(n);
    code.provenance = Some(provenance);
    Ok(code)
}

/// The dual construction C_Omega(D, G) = C_L(D, G)^perp, with its own
/// designed bound deg G - (2g - 2).
pub fn omega_code(c: &LinearCode) -> Result<LinearCode> {
    let Some(prov) = &c.provenance else {
        return Err(Error::InvalidParameter("dual bounds need construction provenance".into()));
    };
    if prov.side != CodeSide::Evaluation {
        return Err(Error::InvalidParameter("already a dual-side code".into()));
    }
    let mut dual = c.dual();
    let n = c.n;
    let genus = prov.genus as i64;
    if prov.deg_g > 2 * genus - 2 && prov.deg_g < n as i64 {
        let expected = n as i64 + genus - 1 - prov.deg_g;
        if dual.k as i64 != expected {
            return Err(Error::Internal(format!(
                "dual dimension {} disagrees with n + g - 1 - deg G = {expected}",
                dual.k
            )));
        }
    }
    let provenance = CodeProvenance {
        side: CodeSide::Dual,
        ..prov.clone()
    };
    dual.designed_d = provenance.designed_distance(n);
    dual.dual_designed_d = prov.designed_distance(n);
    dual.provenance = Some(provenance);
    Ok(dual)
}

/// Divisor `sum coeffs[i] * last-places[i]` where the last `coeffs.len()`
/// rational places in canonical order host the support; the final
/// coefficient always lands on the place at infinity.
pub fn tail_divisor(c: &Curve, coeffs: &[i64]) -> Result<Divisor> {
    let places = c.rational_places();
    let t = coeffs.len();
    if t == 0 || t > places.len() {
        return Err(Error::InvalidParameter("unsupported divisor size".into()));
    }
    let mut d = Divisor::zero();
    for (i, &a) in coeffs.iter().enumerate() {
        d.add_place(places[places.len() - t + i], a);
    }
    Ok(d)
}

/// Evaluation places for a `t`-point construction: everything except the
/// last `t` rational places, which are reserved for divisor support even
/// when their coefficient is zero.
pub fn tail_evaluation_places(c: &Curve, t: usize) -> Vec<Place> {
    let places = c.rational_places();
    places[..places.len() - t].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_point_code_parameters() {
        // (3,2), G = 5*Pinf, D = the 15 affine places: [15, 5, >= 10].
        let c = Curve::new(3, 2).unwrap();
        let g = Divisor::single(Place::Infinity, 5);
        let d = default_evaluation_places(&c, &g);
        assert_eq!(d.len(), 15);
        let code = evaluation_code(&c, &g, &d).unwrap();
        assert_eq!((code.n(), code.k()), (15, 5));
        assert_eq!(code.designed_d, Some(10));
        let dual = omega_code(&code).unwrap();
        assert_eq!((dual.n(), dual.k()), (15, 10));
        assert_eq!(dual.designed_d, Some(5));
    }

    #[test]
    fn zero_divisor_gives_repetition_code() {
        let c = Curve::new(3, 4).unwrap();
        let g = Divisor::zero();
        let d = default_evaluation_places(&c, &g);
        assert_eq!(d.len(), 28);
        let code = evaluation_code(&c, &g, &d).unwrap();
        assert_eq!(code.k(), 1);
        assert_eq!(code.designed_d, Some(28));
        assert!(code.generator().row(0).iter().all(|&e| e == 1));
    }

    #[test]
    fn support_meeting_d_is_rejected() {
        let c = Curve::new(3, 2).unwrap();
        let g = Divisor::single(Place::Infinity, 3);
        let all = c.rational_places().to_vec();
        assert!(matches!(
            evaluation_code(&c, &g, &all),
            Err(Error::SupportMeetsEvaluation)
        ));
    }

    #[test]
    fn nested_divisors_give_nested_codes() {
        let c = Curve::new(3, 4).unwrap();
        let d = tail_evaluation_places(&c, 1);
        let g1 = Divisor::single(Place::Infinity, 7);
        let g2 = Divisor::single(Place::Infinity, 12);
        let c1 = evaluation_code(&c, &g1, &d).unwrap();
        let c2 = evaluation_code(&c, &g2, &d).unwrap();
        assert!(crate::fflinalg::rowspace_contains(c2.generator(), c1.generator()).unwrap());
        // Duality reverses the nesting.
        let d1 = c1.dual();
        let d2 = c2.dual();
        assert!(crate::fflinalg::rowspace_contains(d1.generator(), d2.generator()).unwrap());
    }

    #[test]
    fn dual_of_dual_is_identity() {
        let c = Curve::new(3, 2).unwrap();
        let g = Divisor::single(Place::Infinity, 4);
        let code = evaluation_code(&c, &g, &tail_evaluation_places(&c, 1)).unwrap();
        let back = code.dual().dual();
        assert_eq!(back.k(), code.k());
        assert!(crate::fflinalg::rowspace_contains(code.generator(), back.generator()).unwrap());
    }

    #[test]
    fn membership_tracks_the_row_space() {
        let c = Curve::new(3, 2).unwrap();
        let g = Divisor::single(Place::Infinity, 4);
        let code = evaluation_code(&c, &g, &tail_evaluation_places(&c, 1)).unwrap();
        let f = code.field().clone();
        let gen = code.generator().clone();
        // Random-ish combination of rows is in the code.
        let mut word = vec![0u64; code.n()];
        for (r, scale) in [(0usize, 2u64), (1, 5), (3, 7)] {
            for i in 0..code.n() {
                word[i] = f.add(word[i], f.mul(scale, gen.get(r, i)));
            }
        }
        assert!(code.contains_word(&word));
        word[0] = f.add(word[0], 1);
        assert!(!code.contains_word(&word));
    }

    #[test]
    fn two_point_code_dimensions() {
        // (3,4): G = 3*P_last + 16*Pinf on the 26 remaining places.
        let c = Curve::new(3, 4).unwrap();
        let g = tail_divisor(&c, &[3, 16]).unwrap();
        let d = tail_evaluation_places(&c, 2);
        assert_eq!(d.len(), 26);
        let code = evaluation_code(&c, &g, &d).unwrap();
        assert_eq!(code.k() as i64, 19 + 1 - 3);
        assert_eq!(code.designed_d, Some(26 - 19));
    }

    #[test]
    fn degree2_divisor_code_on_hyperelliptic_member() {
        let c = Curve::new(5, 2).unwrap();
        let place = c.find_degree2_place().unwrap();
        let g = Divisor::single(place, 3);
        let d = default_evaluation_places(&c, &g);
        assert_eq!(d.len(), 46);
        let code = evaluation_code(&c, &g, &d).unwrap();
        assert_eq!(code.k(), 5); // deg G = 6 -> 6 + 1 - 2
        assert_eq!(code.designed_d, Some(40));
    }
}
