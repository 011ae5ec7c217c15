//! Möbius transformations of the projective line over a scalar field.

use core::fmt;

use crate::scalars::{Field, Scalar};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProjectivePoint {
    Finite(Scalar),
    Infinity,
}

/// `z -> (a z + b) / (c z + d)`, kept as a coefficient class: two
/// transformations are the same when their coefficients are proportional.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MobiusTransform {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
}

impl ProjectivePoint {
    fn homogeneous(&self, field: Field) -> (Scalar, Scalar) {
        match self {
            ProjectivePoint::Finite(z) => (z.clone(), field.one()),
            ProjectivePoint::Infinity => (field.one(), field.zero()),
        }
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectivePoint::Finite(z) => write!(f, "{z}"),
            ProjectivePoint::Infinity => f.write_str("inf"),
        }
    }
}

/// `x * y - z * w`
fn det(x: &Scalar, y: &Scalar, z: &Scalar, w: &Scalar) -> Scalar {
    x.mul_unchecked(y).add_unchecked(&z.mul_unchecked(w).neg())
}

impl MobiusTransform {
    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn identity(field: Field) -> Self {
        MobiusTransform {
            a: field.one(),
            b: field.zero(),
            c: field.zero(),
            d: field.one(),
        }
    }

    pub fn coefficients(&self) -> [&Scalar; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn determinant(&self) -> Scalar {
        det(&self.a, &self.d, &self.b, &self.c)
    }

    /// Image of `p`; `None` when the coefficients send `p` to `[0 : 0]`.
    pub fn apply(&self, p: &ProjectivePoint) -> Option<ProjectivePoint> {
        let (x, y) = p.homogeneous(self.field());
        let num = self.a.mul_unchecked(&x).add_unchecked(&self.b.mul_unchecked(&y));
        let den = self.c.mul_unchecked(&x).add_unchecked(&self.d.mul_unchecked(&y));
        match (num.is_zero(), den.is_zero()) {
            (true, true) => None,
            (_, true) => Some(ProjectivePoint::Infinity),
            _ => Some(ProjectivePoint::Finite(num.div(&den).expect("nonzero"))),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let dot = |x: &Scalar, y: &Scalar, z: &Scalar, w: &Scalar| {
            x.mul_unchecked(y).add_unchecked(&z.mul_unchecked(w))
        };
        MobiusTransform {
            a: dot(&self.a, &other.a, &self.b, &other.c),
            b: dot(&self.a, &other.b, &self.b, &other.d),
            c: dot(&self.c, &other.a, &self.d, &other.c),
            d: dot(&self.c, &other.b, &self.d, &other.d),
        }
    }

    /// Scales the coefficients so the first nonzero one is `1`.
    pub fn normalized(&self) -> Self {
        let lead = self
            .coefficients()
            .into_iter()
            .find(|x| !x.is_zero())
            .expect("not all coefficients vanish")
            .inv()
            .expect("nonzero");
        let [a, b, c, d] = self.coefficients().map(|x| x.mul_unchecked(&lead));
        MobiusTransform { a, b, c, d }
    }

    /// Proportional coefficient vectors.
    pub fn projectively_equal(&self, other: &Self) -> bool {
        let x = self.coefficients();
        let y = other.coefficients();
        (0..4).all(|i| (0..4).all(|j| det(x[i], y[j], x[j], y[i]).is_zero()))
    }
}

impl fmt::Display for MobiusTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z -> ({}*z + {}) / ({}*z + {})", self.a, self.b, self.c, self.d)
    }
}

/// The transformation sending `p0 -> 0`, `p1 -> +1`, `p2 -> -1`, with its
/// first nonzero coefficient equal to `1`.
///
/// It is the cross-ratio map `p0 -> 0, p1 -> 1, p2 -> inf` followed by
/// `w -> w / (2 - w)`, which fixes `0` and `1` and sends `inf` to `-1`.
pub fn mobius_normalize(
    p0: &ProjectivePoint,
    p1: &ProjectivePoint,
    p2: &ProjectivePoint,
) -> Result<MobiusTransform> {
    let field = [p0, p1, p2]
        .into_iter()
        .find_map(|p| match p {
            ProjectivePoint::Finite(z) => Some(z.field()),
            ProjectivePoint::Infinity => None,
        })
        .ok_or(Error::PointsNotDistinct)?;
    for p in [p0, p1, p2] {
        if let ProjectivePoint::Finite(z) = p {
            if z.field() != field {
                return Err(Error::FieldMismatch(
                    field.characteristic(),
                    z.field().characteristic(),
                ));
            }
        }
    }
    if field.characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    if p0 == p1 || p1 == p2 || p0 == p2 {
        return Err(Error::PointsNotDistinct);
    }
    let [(x0, y0), (x1, y1), (x2, y2)] = [p0, p1, p2].map(|p| p.homogeneous(field));
    // l_i(z) = det(z, p_i) vanishes exactly at p_i
    let l0_at_p1 = det(&x1, &y0, &y1, &x0);
    let l2_at_p1 = det(&x1, &y2, &y1, &x2);
    let cross_ratio = MobiusTransform {
        a: l2_at_p1.mul_unchecked(&y0),
        b: l2_at_p1.mul_unchecked(&x0).neg(),
        c: l0_at_p1.mul_unchecked(&y2),
        d: l0_at_p1.mul_unchecked(&x2).neg(),
    };
    let to_signs = MobiusTransform {
        a: field.one(),
        b: field.zero(),
        c: field.one().neg(),
        d: field.from_int(2),
    };
    Ok(to_signs.compose(&cross_ratio).normalized())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> ProjectivePoint {
        ProjectivePoint::Finite(Field::Rationals.from_int(n))
    }

    #[test]
    fn standard_triple_gives_identity() {
        let m = mobius_normalize(&q(0), &q(1), &q(-1)).unwrap();
        assert_eq!(m, MobiusTransform::identity(Field::Rationals));
    }

    #[test]
    fn triple_with_infinity() {
        let m = mobius_normalize(&ProjectivePoint::Infinity, &q(0), &q(1)).unwrap();
        let f = Field::Rationals;
        // z -> 1 / (1 - 2z)
        let expected = MobiusTransform {
            a: f.zero(),
            b: f.one(),
            c: f.from_int(-2),
            d: f.one(),
        };
        assert_eq!(m, expected);
        assert_eq!(m.apply(&ProjectivePoint::Infinity), Some(q(0)));
        assert_eq!(m.apply(&q(0)), Some(q(1)));
        assert_eq!(m.apply(&q(1)), Some(q(-1)));
    }

    #[test]
    fn errors() {
        assert_eq!(mobius_normalize(&q(0), &q(0), &q(1)), Err(Error::PointsNotDistinct));
        let f3 = Field::prime(3).unwrap();
        let f2 = Field::prime(2).unwrap();
        let p = |f: Field, n| ProjectivePoint::Finite(f.from_int(n));
        assert_eq!(
            mobius_normalize(&p(f2, 0), &p(f2, 1), &ProjectivePoint::Infinity),
            Err(Error::CharacteristicTwo)
        );
        assert_eq!(
            mobius_normalize(&p(f3, 0), &q(1), &q(2)),
            Err(Error::FieldMismatch(3, 0))
        );
    }

    #[test]
    fn unique_over_small_field() {
        // every invertible matrix over F_5 agreeing on the triple is
        // proportional to the output
        let f = Field::prime(5).unwrap();
        let points = [
            ProjectivePoint::Finite(f.from_int(3)),
            ProjectivePoint::Infinity,
            ProjectivePoint::Finite(f.from_int(1)),
        ];
        let m = mobius_normalize(&points[0], &points[1], &points[2]).unwrap();
        let targets = [0, 1, -1].map(|n| ProjectivePoint::Finite(f.from_int(n)));
        let mut agreeing = 0;
        for code in 0..5u64.pow(4) {
            let digit = |k: u32| f.from_int((code / 5u64.pow(k) % 5) as i64);
            let t = MobiusTransform {
                a: digit(0),
                b: digit(1),
                c: digit(2),
                d: digit(3),
            };
            if t.determinant().is_zero() {
                continue;
            }
            if points.iter().zip(&targets).all(|(p, y)| t.apply(p).as_ref() == Some(y)) {
                agreeing += 1;
                assert!(t.projectively_equal(&m));
            }
        }
        // the four nonzero scalings
        assert_eq!(agreeing, 4);
    }
}
