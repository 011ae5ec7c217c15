//! Tame Kummer coverings of the formal disk `Spec k[[t1..tm]]` and their
//! splitting over the Puiseux ring.
//!
//! A covering is presented by relations `s_i^{n_i} = a_i` where each `a_i`
//! is a unit times a product of distinct variables and the characteristic
//! divides no `n_i`. Over the Puiseux ring every relation has exactly `n_i`
//! solutions, so the homomorphisms from the covering ring are the
//! `prod n_i` choices of one solution per relation.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::puiseux::{PuiseuxSeries, Valuation};
use crate::scalars::{principal_nth_root, roots_of_unity, Field};
use crate::{Error, Result};

/// One relation `s^degree = radicand`.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub radicand: PuiseuxSeries,
    pub degree: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KummerData {
    pub field: Field,
    pub nvars: usize,
    /// Truncation order used for verification.
    pub order: Rational64,
    pub relations: Vec<Relation>,
}

/// A homomorphism into the Puiseux ring, given by the images of the
/// generators `s_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitHom {
    pub images: Vec<PuiseuxSeries>,
    /// `j_i` such that `images[i] = zeta_{n_i}^{j_i} * principal root`.
    pub root_indices: Vec<u64>,
}

impl Relation {
    pub fn new(radicand: PuiseuxSeries, degree: u64) -> Self {
        Relation { radicand, degree }
    }
}

impl KummerData {
    pub fn new(field: Field, nvars: usize, order: Rational64, relations: Vec<Relation>) -> Self {
        KummerData {
            field,
            nvars,
            order,
            relations,
        }
    }

    /// Checks tameness and the shape of every radicand.
    pub fn validate(&self) -> Result<()> {
        for (i, rel) in self.relations.iter().enumerate() {
            let bad = |detail: &str| Error::BadRadicandShape {
                relation: i,
                detail: detail.to_string(),
            };
            let a = &rel.radicand;
            if a.field() != self.field {
                return Err(Error::FieldMismatch(
                    self.field.characteristic(),
                    a.field().characteristic(),
                ));
            }
            if a.nvars() != self.nvars {
                return Err(Error::ArityMismatch {
                    expected: self.nvars,
                    found: a.nvars(),
                });
            }
            if rel.degree == 0 {
                return Err(Error::TameViolation {
                    characteristic: self.field.characteristic(),
                    n: 0,
                });
            }
            self.field.check_tame(rel.degree)?;
            if a.order() < self.order {
                return Err(Error::OrderExceedsTruncation {
                    order: self.order.to_string(),
                    truncation: a.order().to_string(),
                });
            }
            if a.terms().any(|(e, _)| e.iter().any(|x| !x.is_integer())) {
                return Err(bad("radicand has fractional exponents"));
            }
            let form = a
                .unit_monomial_form()
                .map_err(|_| bad("radicand is not a unit times a monomial"))?;
            if form
                .exponent
                .iter()
                .any(|e| !e.is_zero() && !e.is_one())
            {
                return Err(bad(&format!(
                    "monomial part {:?} is not a product of distinct variables",
                    form.exponent
                )));
            }
        }
        Ok(())
    }

    /// Checks `images[i]^{n_i} = a_i` up to the truncation order.
    pub fn verify(&self, hom: &SplitHom) -> Result<bool> {
        if hom.images.len() != self.relations.len() {
            return Err(Error::ArityMismatch {
                expected: self.relations.len(),
                found: hom.images.len(),
            });
        }
        for (image, rel) in hom.images.iter().zip(&self.relations) {
            if image.field() != self.field || image.nvars() != self.nvars {
                return Ok(false);
            }
            let power = image.pow(rel.degree);
            let order = self.order.min(power.order());
            if !power.equal_mod(&rel.radicand, order)? || order < self.order {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every homomorphism, lexicographic in the root-of-unity indices.
    pub fn split(&self) -> Result<Vec<SplitHom>> {
        self.validate()?;
        let choices = self
            .relations
            .iter()
            .enumerate()
            .map(|(i, rel)| {
                all_nth_roots(&rel.radicand, rel.degree).map_err(|e| match e {
                    Error::MissingRootsOfUnity { n, .. } => {
                        Error::MissingRootsOfUnity { relation: i, n }
                    }
                    Error::LeadingCoefficientHasNoRoot { coefficient, n, .. } => {
                        Error::LeadingCoefficientHasNoRoot {
                            relation: i,
                            coefficient,
                            n,
                        }
                    }
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let total: usize = choices.iter().map(Vec::len).product();
        let mut homs = Vec::with_capacity(total);
        let mut indices = alloc::vec![0usize; choices.len()];
        for _ in 0..total {
            homs.push(SplitHom {
                images: indices
                    .iter()
                    .zip(&choices)
                    .map(|(&j, roots)| roots[j].clone())
                    .collect(),
                root_indices: indices.iter().map(|&j| j as u64).collect(),
            });
            // odometer, last relation fastest
            for pos in (0..indices.len()).rev() {
                indices[pos] += 1;
                if indices[pos] < choices[pos].len() {
                    break;
                }
                indices[pos] = 0;
            }
        }
        Ok(homs)
    }
}

/// All `n` roots `zeta^j * r` (`j = 0..n`) of a unit-times-monomial series,
/// where `zeta` is the designated primitive `n`-th root of unity and `r` the
/// root whose leading coefficient is the principal scalar root.
///
/// Errors carry relation index `0`; [`KummerData::split`] rewrites it.
pub fn all_nth_roots(a: &PuiseuxSeries, n: u64) -> Result<Vec<PuiseuxSeries>> {
    let field = a.field();
    let units = roots_of_unity(field, n)?;
    let zeta = units
        .primitive
        .ok_or(Error::MissingRootsOfUnity { relation: 0, n })?;
    let coefficient = a.unit_monomial_form()?.coefficient;
    let lead = principal_nth_root(&coefficient, n)?.ok_or_else(|| {
        Error::LeadingCoefficientHasNoRoot {
            relation: 0,
            coefficient: coefficient.to_string(),
            n,
        }
    })?;
    let principal = a.nth_root(n, &lead)?;
    (0..n)
        .map(|j| principal.scale(&zeta.pow(j)))
        .collect()
}

pub fn validate_kummer(k: &KummerData) -> Result<()> {
    k.validate()
}

pub fn split_homs(k: &KummerData) -> Result<Vec<SplitHom>> {
    k.split()
}

pub fn verify_hom(k: &KummerData, hom: &SplitHom) -> Result<bool> {
    k.verify(hom)
}

/// True iff every two homomorphisms differ in some image already at order
/// `val(a_i) / n_i`.
pub fn pairwise_distinct(k: &KummerData, homs: &[SplitHom]) -> Result<bool> {
    let orders: Vec<Rational64> = k
        .relations
        .iter()
        .map(|rel| match rel.radicand.valuation() {
            Valuation::Finite(v) => v / Rational64::from_integer(rel.degree as i64),
            Valuation::Infinite => Rational64::zero(),
        })
        .collect();
    for (i, x) in homs.iter().enumerate() {
        for y in &homs[i + 1..] {
            let mut differ = false;
            for ((a, b), order) in x.images.iter().zip(&y.images).zip(&orders) {
                if !a.equal_mod(b, *order)? {
                    differ = true;
                    break;
                }
            }
            if !differ {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use alloc::string::String;
    use alloc::vec;

    use super::*;
    use crate::puiseux::parse_series;
    use crate::scalars::Scalar;

    fn kummer(p: u64, nvars: usize, order: i64, rels: &[(&str, u64)]) -> KummerData {
        let field = Field::from_characteristic(p).unwrap();
        let order = Rational64::from_integer(order);
        let relations = rels
            .iter()
            .map(|(a, n)| Relation::new(parse_series(a, nvars, field, 1, order).unwrap(), *n))
            .collect();
        KummerData::new(field, nvars, order, relations)
    }

    /// Substitutes each image into `s^n - a` and checks it vanishes to order
    /// `D`, term by term, without going through `verify`.
    fn substitution_oracle(k: &KummerData, hom: &SplitHom) -> bool {
        hom.images.iter().zip(&k.relations).all(|(s, rel)| {
            let mut power = PuiseuxSeries::constant(k.field.one(), k.nvars, 1, k.order);
            for _ in 0..rel.degree {
                power = power.mul(s).unwrap();
            }
            let diff = power.sub(&rel.radicand).unwrap();
            let vanishes = diff
                .terms()
                .all(|(e, _)| e.iter().fold(Rational64::zero(), |acc, x| acc + x) > k.order);
            vanishes
        })
    }

    fn rendered(homs: &[SplitHom]) -> Vec<String> {
        homs.iter().map(|h| h.images[0].to_string()).collect()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(kummer(5, 1, 3, &[("t1", 2)]).validate(), Ok(()));
        assert_eq!(
            kummer(5, 1, 3, &[("t1", 5)]).validate(),
            Err(Error::TameViolation { characteristic: 5, n: 5 })
        );
        assert!(matches!(
            kummer(0, 2, 3, &[("t1 + t2", 2)]).validate(),
            Err(Error::BadRadicandShape { relation: 0, .. })
        ));
        assert!(matches!(
            kummer(0, 1, 3, &[("t1", 2), ("t1^2", 2)]).validate(),
            Err(Error::BadRadicandShape { relation: 1, .. })
        ));
        assert_eq!(kummer(0, 2, 3, &[("3*t1*t2 + t1^2*t2", 2)]).validate(), Ok(()));
    }

    #[test]
    fn square_roots_in_f5() {
        let k = kummer(5, 1, 2, &[("t1", 2)]);
        let homs = k.split().unwrap();
        assert_eq!(rendered(&homs), ["t1^(1/2)", "4*t1^(1/2)"]);
        assert!(homs.iter().all(|h| substitution_oracle(&k, h)));
    }

    #[test]
    fn fourth_roots_in_f5() {
        let k = kummer(5, 1, 2, &[("t1", 4)]);
        let homs = k.split().unwrap();
        assert_eq!(
            rendered(&homs),
            ["t1^(1/4)", "2*t1^(1/4)", "4*t1^(1/4)", "3*t1^(1/4)"]
        );
        assert!(homs.iter().all(|h| substitution_oracle(&k, h)));
        assert!(pairwise_distinct(&k, &homs).unwrap());
    }

    #[test]
    fn two_relations_give_product_count() {
        let k = kummer(5, 2, 3, &[("t1", 2), ("t2", 2)]);
        let homs = k.split().unwrap();
        assert_eq!(homs.len(), 4);
        assert_eq!(
            homs.iter().map(|h| h.root_indices.clone()).collect::<Vec<_>>(),
            [vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        for h in &homs {
            assert!(substitution_oracle(&k, h));
            assert!(k.verify(h).unwrap());
        }
        assert!(pairwise_distinct(&k, &homs).unwrap());
    }

    #[test]
    fn unit_cofactor_radicand() {
        let k = kummer(13, 2, 3, &[("5*t1 + t1*t2 + 2*t1^2", 3)]);
        let homs = k.split().unwrap();
        assert_eq!(homs.len(), 3);
        assert!(homs.iter().all(|h| substitution_oracle(&k, h)));
        assert!(pairwise_distinct(&k, &homs).unwrap());
    }

    #[test]
    fn verify_rejects_bad_homs() {
        let k = kummer(5, 1, 2, &[("t1", 2)]);
        let mut hom = k.split().unwrap().remove(0);
        assert!(k.verify(&hom).unwrap());
        hom.images[0] = hom.images[0].scale(&Scalar::Residue { value: 2, modulus: 5 }).unwrap();
        assert!(!k.verify(&hom).unwrap());
        hom.images.push(hom.images[0].clone());
        assert_eq!(k.verify(&hom), Err(Error::ArityMismatch { expected: 1, found: 2 }));
    }

    #[test]
    fn missing_roots_are_reported_per_relation() {
        // F_7 has no primitive 4th root of unity
        let k = kummer(7, 2, 3, &[("t1", 2), ("t2", 4)]);
        assert_eq!(k.split(), Err(Error::MissingRootsOfUnity { relation: 1, n: 4 }));
        // 3 is not a square mod 5
        let k = kummer(5, 1, 3, &[("3*t1", 2)]);
        assert!(matches!(
            k.split(),
            Err(Error::LeadingCoefficientHasNoRoot { relation: 0, n: 2, .. })
        ));
    }

    #[test]
    fn rationals_split_square_roots() {
        let k = kummer(0, 1, 3, &[("4*t1 + 4*t1^2", 2)]);
        let homs = k.split().unwrap();
        assert_eq!(
            rendered(&homs),
            [
                "2*t1^(1/2) + t1^(3/2) - 1/4*t1^(5/2)",
                "-2*t1^(1/2) - t1^(3/2) + 1/4*t1^(5/2)"
            ]
        );
    }
}
