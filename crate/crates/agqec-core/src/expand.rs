//! Expansion of codes over F_{p^K} to the prime field F_p.
//!
//! A basis β of the field over F_p sends a length-n code to a length K·n
//! code over F_p by writing each symbol in β-coordinates (computed through
//! the trace-dual basis).  The blocked layout keeps per-symbol weights
//! intact, so minimum distance never drops, and duality interchanges β with
//! its dual basis: the dual of the β-expansion is the β-dual expansion of
//! the dual code.

use crate::agcode::LinearCode;
use crate::css::CssCode;
use crate::error::{Error, Result};
use crate::fflinalg::{rowspace_contains, Matrix};
use crate::gf::Field;

/// A basis of a field over its prime subfield, with its trace-dual basis.
#[derive(Clone, Debug)]
pub struct ExpansionBasis {
    field: Field,
    prime: Field,
    basis: Vec<u64>,
    dual: Vec<u64>,
}

impl ExpansionBasis {
    /// Validates the basis through Gram-matrix inversion (which also yields
    /// the dual basis).
    pub fn new(field: &Field, basis: &[u64]) -> Result<ExpansionBasis> {
        if basis.len() != field.k() as usize {
            return Err(Error::NotABasis);
        }
        let elems: Vec<_> = basis.iter().map(|&e| field.element(e)).collect();
        let dual = field.dual_basis(&elems)?;
        Ok(ExpansionBasis {
            field: field.clone(),
            prime: Field::new(field.p(), 1)?,
            basis: basis.to_vec(),
            dual: dual.into_iter().map(|e| e.enc()).collect(),
        })
    }

    /// The default basis {1, w, w^2, ...} in the field's own representation.
    pub fn polynomial(field: &Field) -> Result<ExpansionBasis> {
        let encs: Vec<u64> = field.polynomial_basis().iter().map(|e| e.enc()).collect();
        ExpansionBasis::new(field, &encs)
    }

    /// The dual expansion basis (an involution).
    pub fn dual(&self) -> ExpansionBasis {
        ExpansionBasis {
            field: self.field.clone(),
            prime: self.prime.clone(),
            basis: self.dual.clone(),
            dual: self.basis.clone(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn prime_field(&self) -> &Field {
        &self.prime
    }

    /// Symbols expand to this many prime-field coordinates.
    pub fn block_size(&self) -> usize {
        self.basis.len()
    }

    /// β-coordinates of a symbol: c_t = Tr(a · β'_t) with β' the dual basis.
    pub fn coords(&self, a: u64) -> Vec<u64> {
        self.dual
            .iter()
            .map(|&d| self.field.trace_to_prime(self.field.mul(a, d)))
            .collect()
    }
}

/// Expands a word symbol-by-symbol; block j of the output holds the
/// coordinates of symbol j.
pub fn expand_vector(eb: &ExpansionBasis, word: &[u64]) -> Vec<u64> {
    word.iter().flat_map(|&s| eb.coords(s)).collect()
}

/// The expansion of a whole code: an F_p-linear [K·n, K·k] code.  The rank
/// is checked, and designed distance bounds carry over because expansion
/// never decreases weights.
pub fn expand_code(eb: &ExpansionBasis, c: &LinearCode) -> Result<LinearCode> {
    if c.field() != &eb.field {
        return Err(Error::MixedFields);
    }
    let f = &eb.field;
    let kk = eb.block_size();
    let n = c.n();
    let mut rows = Vec::with_capacity(kk * c.k());
    for r in 0..c.k() {
        let row = c.generator().row(r);
        for &mu in &eb.basis {
            let scaled: Vec<u64> = row.iter().map(|&s| f.mul(mu, s)).collect();
            rows.push(expand_vector(eb, &scaled));
        }
    }
    let gen = if rows.is_empty() {
        Matrix::zero(eb.prime.clone(), 0, kk * n)
    } else {
        Matrix::from_rows(eb.prime.clone(), rows)?
    };
    let mut out = LinearCode::from_generator(gen);
    if out.k() != kk * c.k() {
        return Err(Error::Internal(format!(
            "expanded rank {} disagrees with {} * {}",
            out.k(),
            kk,
            c.k()
        )));
    }
    out.designed_d = c.designed_d;
    out.dual_designed_d = c.dual_designed_d;
    Ok(out)
}

/// Checks the duality identity: the dual of the β-expansion equals the
/// β-dual expansion of the dual code, as row spaces over F_p.
pub fn verify_expansion_duality(c: &LinearCode, eb: &ExpansionBasis) -> Result<bool> {
    let lhs = expand_code(eb, c)?.dual();
    let rhs = expand_code(&eb.dual(), &c.dual())?;
    Ok(lhs.k() == rhs.k() && rowspace_contains(lhs.generator(), rhs.generator())?)
}

/// Expands a nested pair to the prime field and reassembles the CSS code;
/// length and dimension scale by the block size and the distance bound is
/// inherited.
pub fn expanded_css(c1: &LinearCode, c2: &LinearCode, p: u64) -> Result<CssCode> {
    if c1.field() != c2.field() {
        return Err(Error::MixedFields);
    }
    if c1.field().p() != p {
        return Err(Error::InvalidParameter(format!(
            "alphabet {} is not a power of {p}",
            c1.field().order()
        )));
    }
    let eb = ExpansionBasis::polynomial(c1.field())?;
    let e1 = expand_code(&eb, c1)?;
    let e2 = expand_code(&eb, c2)?;
    CssCode::new(e1, e2)
}
