use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::FourierCoefficients;
use crate::arith::{
    rational_to_f64, reduce_angle, ComplexRational, Cyclotomic, FloatAngle,
    RealValue, Rational, Scalar, TurnAngle,
};
use crate::error::{Error, Result};

/// Atom position: an exact rational fraction of a turn, or a float flagged approximate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Position {
    Exact(TurnAngle),
    Float(FloatAngle),
}

impl Position {
    pub fn turns(&self) -> f64 {
        match self {
            Position::Exact(a) => a.turns(),
            Position::Float(a) => a.turns(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Position::Exact(_))
    }

    pub fn add(&self, other: &Position) -> Position {
        match (self, other) {
            (Position::Exact(a), Position::Exact(b)) => Position::Exact(a.add(b)),
            _ => Position::Float(
                FloatAngle::from_turns(self.turns() + other.turns()).expect("finite turns"),
            ),
        }
    }

    pub fn neg(&self) -> Position {
        match self {
            Position::Exact(a) => Position::Exact(a.neg()),
            Position::Float(a) => Position::Float(a.neg()),
        }
    }

    /// `exp(−2πi·n·t)`: exact on quarter turns, error-tracked otherwise.
    pub fn character(&self, n: i64) -> Scalar {
        match self {
            Position::Exact(a) => match a.exact_character(n) {
                Some(c) => Scalar::Exact(c),
                None => Scalar::Approx(crate::arith::root_of_unity(*a, n)),
            },
            Position::Float(a) => Scalar::Approx(a.character(n)),
        }
    }

    fn same_point(&self, other: &Position) -> bool {
        match (self, other) {
            (Position::Exact(a), Position::Exact(b)) => a == b,
            _ => self.turns() == other.turns(),
        }
    }

    fn canonical_cmp(&self, other: &Position) -> Ordering {
        match (self, other) {
            (Position::Exact(a), Position::Exact(b)) => a.cmp(b),
            _ => self
                .turns()
                .total_cmp(&other.turns())
                .then_with(|| other.is_exact().cmp(&self.is_exact())),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Atom {
    pub position: Position,
    pub mass: Scalar,
}

/// A finite combination `Σ c_j δ_{t_j}` in canonical form: positions sorted and
/// pairwise distinct, no exactly-zero masses.
#[derive(Debug, Clone, Default)]
pub struct DiscreteMeasure {
    atoms: Vec<Atom>,
}

/// Closed interval `[lo, hi]` of reals.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Enclosure {
    pub lo: f64,
    pub hi: f64,
}

impl Enclosure {
    pub fn point(x: f64) -> Self {
        Enclosure { lo: x, hi: x }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

impl DiscreteMeasure {
    pub fn zero() -> Self {
        DiscreteMeasure::default()
    }

    /// Canonicalizes an arbitrary list of atoms: sorts, merges coincident positions and
    /// drops exactly-zero masses.
    pub fn from_atoms(atoms: impl IntoIterator<Item = Atom>) -> Self {
        let mut atoms: Vec<Atom> = atoms.into_iter().collect();
        atoms.sort_by(|a, b| a.position.canonical_cmp(&b.position));
        let mut out: Vec<Atom> = Vec::with_capacity(atoms.len());
        for atom in atoms {
            match out.last_mut() {
                Some(last) if last.position.same_point(&atom.position) => {
                    last.mass = last.mass.add(&atom.mass);
                }
                _ => out.push(atom),
            }
        }
        out.retain(|a| !a.mass.is_zero());
        DiscreteMeasure { atoms: out }
    }

    /// `c·δ_{p/q}` with a Gaussian-rational mass.
    pub fn point_mass(p: i64, q: i64, mass: ComplexRational) -> Result<Self> {
        Ok(Self::from_atoms([Atom {
            position: Position::Exact(reduce_angle(p, q)?),
            mass: Scalar::Exact(mass),
        }]))
    }

    /// Unit mass at angle zero, the convolution identity.
    pub fn dirac() -> Self {
        Self::point_mass(0, 1, ComplexRational::one()).expect("valid angle")
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// True iff every position is a rational turn and every mass is exact.
    pub fn is_exact(&self) -> bool {
        self.atoms
            .iter()
            .all(|a| a.position.is_exact() && a.mass.is_exact())
    }

    /// Exact equality of canonical forms; `None` when either measure is approximate.
    pub fn exact_eq(&self, other: &DiscreteMeasure) -> Option<bool> {
        if !self.is_exact() || !other.is_exact() {
            return None;
        }
        if self.atoms.len() != other.atoms.len() {
            return Some(false);
        }
        Some(self.atoms.iter().zip(&other.atoms).all(|(a, b)| {
            a.position == b.position && a.mass.exact_eq(&b.mass) == Some(true)
        }))
    }

    pub fn scale(&self, k: &Scalar) -> DiscreteMeasure {
        Self::from_atoms(self.atoms.iter().map(|a| Atom {
            position: a.position,
            mass: a.mass.mul(k),
        }))
    }

    pub fn add(&self, other: &DiscreteMeasure) -> DiscreteMeasure {
        Self::from_atoms(self.atoms.iter().chain(&other.atoms).cloned())
    }

    /// Convolution: positions add modulo one turn, masses multiply and aggregate.
    pub fn convolve(&self, other: &DiscreteMeasure) -> DiscreteMeasure {
        Self::from_atoms(self.atoms.iter().flat_map(|a| {
            other.atoms.iter().map(move |b| Atom {
                position: a.position.add(&b.position),
                mass: a.mass.mul(&b.mass),
            })
        }))
    }

    /// [`convolve`](Self::convolve) refusing to produce more than `max_atoms` atoms.
    pub fn convolve_capped(&self, other: &DiscreteMeasure, max_atoms: usize) -> Result<DiscreteMeasure> {
        let pairs = self.len() as u128 * other.len() as u128;
        // a merged result on a common grid can be far smaller than the pair count
        let grid = self.grid_size().zip(other.grid_size()).map(|(a, b)| {
            num_integer::lcm(a, b) as u128
        });
        let bound = grid.map_or(pairs, |g| g.min(pairs));
        if bound > max_atoms as u128 {
            return Err(Error::ResourceLimit {
                what: "atoms",
                requested: bound,
                limit: max_atoms as u128,
            });
        }
        Ok(self.convolve(other))
    }

    /// Common denominator of all positions, when all are exact.
    pub fn grid_size(&self) -> Option<i64> {
        self.atoms.iter().try_fold(1i64, |acc, a| match a.position {
            Position::Exact(t) => Some(num_integer::lcm(acc, t.denom())),
            Position::Float(_) => None,
        })
    }

    /// `μ̃(E) = conj(μ(−E))`: atoms reflect and masses conjugate.
    pub fn involution(&self) -> DiscreteMeasure {
        Self::from_atoms(self.atoms.iter().map(|a| Atom {
            position: a.position.neg(),
            mass: a.mass.conj(),
        }))
    }

    /// `μ̂(n)` evaluated in the exact tier regardless of the quarter-turn rule.
    ///
    /// Every character `exp(−2πi·n·p/q)` is the cyclotomic number `ζ_q^{−np}`, so exact
    /// measures have exact transforms. Returns `None` for approximate measures.
    pub fn exact_fourier_coefficient(&self, n: i64) -> Option<Scalar> {
        let mut acc = Scalar::zero();
        for atom in &self.atoms {
            let Position::Exact(t) = atom.position else {
                return None;
            };
            if !atom.mass.is_exact() {
                return None;
            }
            let chi = match t.exact_character(n) {
                Some(c) => Scalar::Exact(c),
                None => {
                    let (r, q) = t.character_exponent(n);
                    Scalar::Cyclotomic(Cyclotomic::zeta_power(q as u32, -r))
                }
            };
            acc = acc.add(&atom.mass.mul(&chi));
        }
        Some(acc.normalized())
    }

    /// Enclosure of the total variation `Σ_j |c_j|`.
    ///
    /// Gaussian-rational masses use an integer square root scaled by 2^50, so the width is
    /// at most 2^-50 per atom; other masses contribute their float modulus ± error.
    pub fn total_variation(&self) -> Enclosure {
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        let mut float_lo = 0.0f64;
        let mut float_hi = 0.0f64;
        for atom in &self.atoms {
            match &atom.mass {
                Scalar::Exact(c) => {
                    let (l, h) = sqrt_enclosure(&c.norm_sqr());
                    lo += l;
                    hi += h;
                }
                other => {
                    let (m, e) = other.modulus();
                    float_lo += (m - e).max(0.0);
                    float_hi += m + e;
                }
            }
        }
        let lo_f = round_down(&lo) + float_lo * (1.0 - 4.0 * f64::EPSILON);
        let hi_f = round_up(&hi) + float_hi * (1.0 + 4.0 * f64::EPSILON);
        Enclosure {
            lo: lo_f.max(0.0),
            hi: hi_f,
        }
    }

    /// `Σ_j |c_j|²`, exact whenever the masses are Gaussian rationals.
    pub fn atom_mass_sum(&self) -> crate::arith::RealValue {
        self.atoms
            .iter()
            .fold(crate::arith::RealValue::zero(), |acc, a| acc.add(&a.mass.norm_sqr()))
    }
}

const SQRT_SCALE_BITS: u64 = 50;

/// `[lo, hi]` rationals with `lo ≤ √r ≤ hi`, equal when `r` is a rational square.
fn sqrt_enclosure(r: &Rational) -> (Rational, Rational) {
    debug_assert!(!r.is_negative());
    let (a, b) = (r.numer(), r.denom());
    let (sa, sb) = (a.sqrt(), b.sqrt());
    if &(&sa * &sa) == a && &(&sb * &sb) == b {
        let exact = Rational::new(sa, sb);
        return (exact.clone(), exact);
    }
    // √(a/b) = √(a·b·S²) / (b·S)
    let scale = BigInt::one() << SQRT_SCALE_BITS;
    let radicand = a * b * &scale * &scale;
    let root = radicand.sqrt();
    let den = b * &scale;
    let lo = Rational::new(root.clone(), den.clone());
    let hi = if &root * &root == radicand {
        lo.clone()
    } else {
        Rational::new(root + 1, den)
    };
    (lo, hi)
}

fn round_down(r: &Rational) -> f64 {
    let f = rational_to_f64(r);
    if Rational::from_float(f).is_some_and(|x| &x > r) {
        f.next_down()
    } else {
        f
    }
}

fn round_up(r: &Rational) -> f64 {
    let f = rational_to_f64(r);
    if Rational::from_float(f).is_some_and(|x| &x < r) {
        f.next_up()
    } else {
        f
    }
}

impl FourierCoefficients for DiscreteMeasure {
    /// `Σ_j c_j·exp(−2πi·n·t_j)`: exact when every character is a quarter turn and every
    /// mass is exact, an error-tracked float otherwise.
    fn fourier_coefficient(&self, n: i64) -> Scalar {
        self.atoms
            .iter()
            .fold(Scalar::zero(), |acc, a| acc.add(&a.mass.mul(&a.position.character(n))))
            .normalized()
    }

    /// Rotating the measure leaves `|μ̂(n)|` unchanged, so characters are taken relative to
    /// the first atom; when all of them are quarter turns the result is exact.
    fn coefficient_norm_sqr(&self, n: i64) -> RealValue {
        let relative = self.atoms.first().and_then(|first| {
            let Position::Exact(base) = first.position else {
                return None;
            };
            self.atoms.iter().try_fold(ComplexRational::zero(), |acc, a| {
                let (Position::Exact(t), Scalar::Exact(c)) = (a.position, &a.mass) else {
                    return None;
                };
                let chi = t.add(&base.neg()).exact_character(n)?;
                Some(&acc + &(c * &chi))
            })
        });
        match relative {
            Some(z) => RealValue::Exact(z.norm_sqr()),
            None => self.fourier_coefficient(n).norm_sqr(),
        }
    }
}

impl PartialEq for DiscreteMeasure {
    /// Exact equality; approximate measures compare by identical representation only.
    fn eq(&self, other: &Self) -> bool {
        match self.exact_eq(other) {
            Some(b) => b,
            None => {
                self.atoms.len() == other.atoms.len()
                    && self.atoms.iter().zip(&other.atoms).all(|(a, b)| {
                        a.position == b.position && a.mass.to_approx() == b.mass.to_approx()
                    })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn c(re: (i64, i64), im: (i64, i64)) -> ComplexRational {
        ComplexRational::new(rat(re.0, re.1), rat(im.0, im.1))
    }

    fn half_sum() -> DiscreteMeasure {
        DiscreteMeasure::point_mass(0, 1, c((1, 2), (0, 1)))
            .unwrap()
            .add(&DiscreteMeasure::point_mass(1, 2, c((1, 2), (0, 1))).unwrap())
    }

    #[test]
    fn transform_examples() {
        assert_eq!(
            DiscreteMeasure::dirac().fourier_coefficient(17).as_exact(),
            Some(&ComplexRational::one())
        );
        assert!(half_sum().fourier_coefficient(3).is_zero());
        assert_eq!(
            half_sum().fourier_coefficient(4).as_exact(),
            Some(&ComplexRational::one())
        );
    }

    #[test]
    fn convolution_examples() {
        let q = DiscreteMeasure::point_mass(1, 4, ComplexRational::one()).unwrap();
        assert_eq!(
            q.convolve(&q),
            DiscreteMeasure::point_mass(1, 2, ComplexRational::one()).unwrap()
        );
        let mu = half_sum();
        assert_eq!(mu.convolve(&mu), mu);
    }

    #[test]
    fn cancelling_masses_vanish() {
        let a = DiscreteMeasure::point_mass(1, 3, ComplexRational::one()).unwrap();
        let b = DiscreteMeasure::point_mass(4, 3, -&ComplexRational::one()).unwrap();
        assert!(a.add(&b).is_empty());
    }

    #[test]
    fn involution_examples() {
        let q = DiscreteMeasure::point_mass(1, 4, ComplexRational::one()).unwrap();
        assert_eq!(
            q.involution(),
            DiscreteMeasure::point_mass(3, 4, ComplexRational::one()).unwrap()
        );
        let i = DiscreteMeasure::point_mass(0, 1, ComplexRational::i()).unwrap();
        assert_eq!(
            i.involution(),
            DiscreteMeasure::point_mass(0, 1, -&ComplexRational::i()).unwrap()
        );
        assert_eq!(half_sum().involution(), half_sum());
    }

    #[test]
    fn total_variation_examples() {
        assert_eq!(DiscreteMeasure::dirac().total_variation(), Enclosure::point(1.0));
        assert_eq!(half_sum().total_variation(), Enclosure::point(1.0));
        let m = DiscreteMeasure::point_mass(0, 1, c((3, 1), (4, 1))).unwrap();
        assert_eq!(m.total_variation(), Enclosure::point(5.0));
        let irrational = DiscreteMeasure::point_mass(0, 1, c((1, 1), (1, 1))).unwrap();
        let tv = irrational.total_variation();
        assert!(tv.contains(std::f64::consts::SQRT_2));
        assert!(tv.width() > 0.0 && tv.width() <= 1e-10);
    }

    #[test]
    fn atom_mass_sum_examples() {
        use crate::arith::RealValue;
        assert_eq!(DiscreteMeasure::dirac().atom_mass_sum(), RealValue::Exact(rat(1, 1)));
        assert_eq!(half_sum().atom_mass_sum(), RealValue::Exact(rat(1, 2)));
        let m = DiscreteMeasure::point_mass(1, 3, c((3, 1), (4, 1))).unwrap();
        assert_eq!(m.atom_mass_sum(), RealValue::Exact(rat(25, 1)));
    }

    #[test]
    fn exact_transform_on_thirds() {
        let third = DiscreteMeasure::point_mass(1, 3, ComplexRational::one()).unwrap();
        let mu = DiscreteMeasure::dirac().add(&third).add(&third.convolve(&third));
        // 1 + ω + ω² vanishes unless 3 | n
        assert!(mu.exact_fourier_coefficient(1).unwrap().is_zero());
        assert_eq!(
            mu.exact_fourier_coefficient(3).unwrap().as_exact(),
            Some(&ComplexRational::real(rat(3, 1)))
        );
        assert!(!mu.fourier_coefficient(1).is_exact());
    }

    #[test]
    fn capped_convolution() {
        let mu = half_sum();
        assert!(mu.convolve_capped(&mu, 2).is_ok());
        assert!(matches!(
            mu.convolve_capped(&mu, 1),
            Err(Error::ResourceLimit { .. })
        ));
    }
}
