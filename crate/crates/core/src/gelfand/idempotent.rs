use rayon::prelude::*;

use crate::arith::{rat, reduce_angle, Cyclotomic, Scalar};
use crate::error::{invalid, Error, Result};
use crate::measures::{Atom, DiscreteMeasure, FourierCoefficients, Position};

/// Largest modulus accepted by [`enumerate_idempotents`].
pub const MAX_IDEMPOTENT_MODULUS: u32 = 16;

/// The measure whose transform is the indicator of `{n : n mod q ∈ residues}`: atoms at
/// `j/q` with masses `(1/q)·Σ_r ζ_q^{jr}`.
pub fn idempotent_from_residues(q: u32, residues: &[i64]) -> Result<DiscreteMeasure> {
    if q == 0 {
        return invalid("modulus must be positive");
    }
    let qi = q as i64;
    let mut rs: Vec<i64> = residues.iter().map(|r| r.rem_euclid(qi)).collect();
    rs.sort_unstable();
    rs.dedup();
    let inv_q = rat(1, qi);
    let atoms = (0..qi)
        .map(|j| {
            let sum = rs.iter().fold(Cyclotomic::zero(q), |acc, r| {
                acc.add(&Cyclotomic::zeta_power(q, j * r))
            });
            Ok(Atom {
                position: Position::Exact(reduce_angle(j, qi)?),
                mass: Scalar::Cyclotomic(sum.scale(&inv_q)).normalized(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DiscreteMeasure::from_atoms(atoms))
}

/// Exact test of `μ∗μ = μ`.
pub fn is_idempotent(m: &DiscreteMeasure) -> Result<bool> {
    if !m.is_exact() {
        return Err(Error::NotDecidable(
            "idempotence of a measure with approximate atoms".into(),
        ));
    }
    Ok(m.convolve(m).exact_eq(m).expect("exact operands"))
}

/// All `2^q` idempotents built from subsets of `Z/q`, in subset-bitmask order, with
/// duplicates removed.
pub fn enumerate_idempotents(q: u32) -> Result<Vec<DiscreteMeasure>> {
    if q == 0 {
        return invalid("modulus must be positive");
    }
    if q > MAX_IDEMPOTENT_MODULUS {
        return Err(Error::ResourceLimit {
            what: "idempotent modulus",
            requested: q as u128,
            limit: MAX_IDEMPOTENT_MODULUS as u128,
        });
    }
    let all = (0u32..1 << q)
        .into_par_iter()
        .map(|mask| {
            let residues: Vec<i64> = (0..q as i64).filter(|r| mask >> r & 1 == 1).collect();
            idempotent_from_residues(q, &residues)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out: Vec<DiscreteMeasure> = Vec::with_capacity(all.len());
    for m in all {
        if !out.contains(&m) {
            out.push(m);
        }
    }
    Ok(out)
}

/// Checks `μ̂(n) = [n mod q ∈ residues]` for `|n| ≤ 4q`: exactly in the cyclotomic tier and
/// within `1e−12` for the floating evaluation.
pub fn transform_is_indicator(m: &DiscreteMeasure, q: u32, residues: &[i64]) -> bool {
    let qi = q as i64;
    let in_set = |n: i64| residues.iter().any(|r| r.rem_euclid(qi) == n.rem_euclid(qi));
    (-4 * qi..=4 * qi).all(|n| {
        let expect = if in_set(n) { Scalar::one() } else { Scalar::zero() };
        let exact_ok = m
            .exact_fourier_coefficient(n)
            .and_then(|c| c.exact_eq(&expect))
            .unwrap_or(false);
        let approx = m.fourier_coefficient(n);
        let float_ok = match approx.exact_eq(&expect) {
            Some(b) => b,
            None => {
                let a = approx.to_approx();
                let e = expect.to_approx();
                (a.re - e.re).hypot(a.im - e.im) <= 1e-12
            }
        };
        exact_ok && float_ok
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ComplexRational;

    #[test]
    fn examples() {
        assert_eq!(idempotent_from_residues(1, &[0]).unwrap(), DiscreteMeasure::dirac());
        let half = ComplexRational::real(rat(1, 2));
        let expect = DiscreteMeasure::point_mass(0, 1, half.clone())
            .unwrap()
            .add(&DiscreteMeasure::point_mass(1, 2, half).unwrap());
        assert_eq!(idempotent_from_residues(2, &[0]).unwrap(), expect);
        assert!(idempotent_from_residues(2, &[]).unwrap().is_empty());
        assert!(idempotent_from_residues(0, &[]).is_err());
    }

    #[test]
    fn idempotence_examples() {
        assert!(is_idempotent(&idempotent_from_residues(2, &[0]).unwrap()).unwrap());
        let d = DiscreteMeasure::point_mass(1, 2, ComplexRational::one()).unwrap();
        assert!(!is_idempotent(&d).unwrap());
        assert!(is_idempotent(&DiscreteMeasure::zero()).unwrap());
    }

    #[test]
    fn approximate_input_is_not_decidable() {
        let m = crate::measures::MeasureJson::parse(r#"{"atoms": [{"turns": 0.1, "re_num": 1}]}"#)
            .unwrap()
            .discrete;
        assert!(matches!(is_idempotent(&m), Err(Error::NotDecidable(_))));
    }

    #[test]
    fn enumeration_counts() {
        let one = enumerate_idempotents(1).unwrap();
        assert_eq!(one, vec![DiscreteMeasure::zero(), DiscreteMeasure::dirac()]);
        assert_eq!(enumerate_idempotents(2).unwrap().len(), 4);
        let three = enumerate_idempotents(3).unwrap();
        assert_eq!(three.len(), 8);
        assert!(three.iter().all(|m| is_idempotent(m).unwrap()));
        assert!(enumerate_idempotents(17).is_err());
    }

    #[test]
    fn non_gaussian_masses() {
        // q = 3 needs ζ_3, outside the Gaussian rationals
        let m = idempotent_from_residues(3, &[1]).unwrap();
        assert!(m.atoms().iter().any(|a| a.mass.as_exact().is_none()));
        assert!(is_idempotent(&m).unwrap());
        assert!(transform_is_indicator(&m, 3, &[1]));
        assert!(!transform_is_indicator(&m, 3, &[2]));
    }
}
