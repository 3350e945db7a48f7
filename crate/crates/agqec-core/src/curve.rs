//! The curve family y^q + y = x^m over F_{q^2} with m dividing q + 1.
//!
//! These curves are maximal: the genus is (q-1)(m-1)/2 and the number of
//! rational points is 1 + q(1 + (q-1)m), with a single point at infinity.
//! Every affine fiber {y : y^q + y = a^m} is a coset of the kernel of the
//! separable map y -> y^q + y and has exactly q points over F_{q^2}.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// A closed point of the curve, identified by coordinates.
///
/// `Affine` and `Infinity` are the rational (degree-1) places.  `Degree2`
/// carries coordinates in F_{q^4} for a place whose x-coordinate generates a
/// quadratic extension; the stored pair is one representative of the
/// conjugate orbit.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Place {
    Affine { x: u64, y: u64 },
    Degree2 { x: u64, y: u64 },
    Infinity,
}

impl Place {
    pub fn degree(&self) -> u64 {
        match self {
            Place::Degree2 { .. } => 2,
            _ => 1,
        }
    }
}

struct CurveRepr {
    q: u64,
    m: u64,
    p: u64,
    e: u32,
    base: Field,
    genus: u64,
    n_rational: u64,
    places: OnceLock<Vec<Place>>,
}

/// A member of the family, with its base field F_{q^2}.
#[derive(Clone)]
pub struct Curve(Arc<CurveRepr>);

impl PartialEq for Curve {
    fn eq(&self, other: &Self) -> bool {
        self.0.q == other.0.q && self.0.m == other.0.m
    }
}
impl Eq for Curve {}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^{} + y = x^{} over GF({})", self.0.q, self.0.m, self.0.q * self.0.q)
    }
}

impl Curve {
    pub fn new(q: u64, m: u64) -> Result<Curve> {
        let (p, e) = crate::gf::prime_power(q)
            .ok_or_else(|| Error::InvalidParameter(format!("q = {q} is not a prime power")))?;
        if m == 0 || (q + 1) % m != 0 {
            return Err(Error::InvalidParameter(format!("m = {m} does not divide q + 1 = {}", q + 1)));
        }
        let base = Field::new(p, 2 * e)?;
        let genus = (q - 1) * (m - 1) / 2;
        let n_rational = 1 + q * (1 + (q - 1) * m);
        Ok(Curve(Arc::new(CurveRepr {
            q,
            m,
            p,
            e,
            base,
            genus,
            n_rational,
            places: OnceLock::new(),
        })))
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    pub fn m(&self) -> u64 {
        self.0.m
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    /// q = p^e.
    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn genus(&self) -> u64 {
        self.0.genus
    }

    pub fn n_rational_places(&self) -> u64 {
        self.0.n_rational
    }

    /// The field of definition F_{q^2}.
    pub fn base_field(&self) -> &Field {
        &self.0.base
    }

    /// Pole order of x at infinity.
    pub fn x_pole_order(&self) -> u64 {
        self.0.q
    }

    /// Pole order of y at infinity.
    pub fn y_pole_order(&self) -> u64 {
        self.0.m
    }

    /// Checks that a field is the base field or an extension of it.
    fn check_extension(&self, f: &Field) -> Result<()> {
        if f.p() != self.0.p || f.k() % self.0.base.k() != 0 {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    /// All points (alpha, beta) of the affine curve over `ext` with the given
    /// x-coordinate, beta listed in canonical element order.
    pub fn fiber(&self, alpha: &FieldElement) -> Result<Vec<FieldElement>> {
        let ext = alpha.field().clone();
        self.check_extension(&ext)?;
        let target = ext.pow(alpha.enc(), self.0.m);
        let betas: Vec<FieldElement> = ext
            .elements_canonical()
            .into_iter()
            .filter(|&b| ext.add(ext.pow(b, self.0.q), b) == target)
            .map(|b| ext.element(b))
            .collect();
        Ok(betas)
    }

    /// The rational places in canonical order: affine points sorted by
    /// (x, y) in canonical element order, then the place at infinity.
    pub fn rational_places(&self) -> &[Place] {
        self.0.places.get_or_init(|| {
            let f = &self.0.base;
            // Bucket every beta by the value y^q + y; each fiber is then a
            // single lookup instead of a field scan.
            let mut buckets: HashMap<u64, Vec<u64>> = HashMap::new();
            for b in f.elements_canonical() {
                buckets.entry(f.add(f.pow(b, self.0.q), b)).or_default().push(b);
            }
            let mut out = Vec::with_capacity(self.0.n_rational as usize);
            for a in f.elements_canonical() {
                let target = f.pow(a, self.0.m);
                if let Some(betas) = buckets.get(&target) {
                    out.extend(betas.iter().map(|&b| Place::Affine { x: a, y: b }));
                }
            }
            out.push(Place::Infinity);
            assert_eq!(
                out.len() as u64,
                self.0.n_rational,
                "rational place count disagrees with the closed formula"
            );
            out
        })
    }

    /// F_{q^4}, the field where degree-2 places acquire coordinates.
    pub fn quartic_field(&self) -> Result<Field> {
        Field::new(self.0.p, 4 * self.0.e)
    }

    /// The first (in canonical coordinate order) place of degree 2: a point
    /// with x in F_{q^4} \ F_{q^2} whose fiber is defined over F_{q^4}.
    pub fn find_degree2_place(&self) -> Result<Place> {
        let ext = self.quartic_field()?;
        let half = 2 * self.0.e; // Frobenius power fixing exactly F_{q^2}
        for a in ext.elements_canonical() {
            if ext.frobenius(a, half) == a {
                continue;
            }
            // The q^2-Frobenius orbit of any point here has size exactly 2:
            // it is at least 2 because x moves, and the square of the map is
            // the identity on F_{q^4}.  Any point of the fiber therefore
            // represents a degree-2 place; fibers without F_{q^4}-points are
            // skipped (those x-values sit under places of higher degree).
            if let Some(b) = self.fiber(&ext.element(a))?.first() {
                return Ok(Place::Degree2 { x: a, y: b.enc() });
            }
        }
        Err(Error::NoDegreeTwoPlace)
    }

    /// Membership test for coordinates over any extension field.
    pub fn contains(&self, x: &FieldElement, y: &FieldElement) -> Result<bool> {
        if x.field() != y.field() {
            return Err(Error::MixedFields);
        }
        let ext = x.field();
        self.check_extension(ext)?;
        let lhs = ext.add(ext.pow(y.enc(), self.0.q), y.enc());
        Ok(lhs == ext.pow(x.enc(), self.0.m))
    }
}

/// A divisor with integer coefficients supported on stored places.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor(BTreeMap<Place, i64>);

impl Divisor {
    pub fn zero() -> Divisor {
        Divisor::default()
    }

    pub fn single(place: Place, coeff: i64) -> Divisor {
        let mut d = Divisor::zero();
        d.add_place(place, coeff);
        d
    }

    /// Adds `coeff` times a place, dropping the entry if it cancels.
    pub fn add_place(&mut self, place: Place, coeff: i64) {
        let e = self.0.entry(place).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.0.remove(&place);
        }
    }

    pub fn coeff(&self, place: &Place) -> i64 {
        self.0.get(place).copied().unwrap_or(0)
    }

    /// Support with coefficients, in place order.
    pub fn support(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.0.iter().map(|(p, &c)| (p, c))
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|(p, &c)| p.degree() as i64 * c).sum()
    }

    pub fn is_effective(&self) -> bool {
        self.0.values().all(|&c| c >= 0)
    }

    /// Coefficientwise comparison: self <= other everywhere.
    pub fn le(&self, other: &Divisor) -> bool {
        let places: std::collections::BTreeSet<&Place> =
            self.0.keys().chain(other.0.keys()).collect();
        places.into_iter().all(|p| self.coeff(p) <= other.coeff(p))
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, c) in other.support() {
            out.add_place(*p, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in self.support() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match p {
                Place::Affine { x, y } => write!(f, "{c}*P({x},{y})")?,
                Place::Degree2 { x, y } => write!(f, "{c}*Q({x},{y})")?,
                Place::Infinity => write!(f, "{c}*Pinf")?,
            }
        }
        Ok(())
    }
}
