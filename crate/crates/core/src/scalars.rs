//! Exact coefficient fields.
//!
//! Two kinds of fields are supported: the rationals (arbitrary precision,
//! always in lowest terms) and prime fields `F_p` with `p < 2^32`, whose
//! elements are residues in `[0, p)`. Neither is algebraically closed, so the
//! operations that need roots ([`roots_of_unity`], [`scalar_nth_root`]) return
//! what the field actually contains and callers fail loudly when a root they
//! need is missing.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Which coefficient field a value lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    /// `F_p`; the modulus is a prime below `2^32`.
    Prime(u64),
}

/// An element of a [`Field`] in canonical form.
///
/// Ordering is numeric for rationals and by residue for prime fields; it is
/// only meaningful between elements of the same field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

/// The `n`-th roots of unity a field contains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootsOfUnity {
    /// All solutions of `x^n = 1`, in canonical order.
    pub roots: Vec<Scalar>,
    /// The smallest root of multiplicative order exactly `n`, if any.
    pub primitive: Option<Scalar>,
}

const PRIME_LIMIT: u64 = 1 << 32;

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if p >= PRIME_LIMIT || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// `0` selects the rationals, anything else must be a prime.
    pub fn from_characteristic(characteristic: u64) -> Result<Self> {
        match characteristic {
            0 => Ok(Field::Rationals),
            p => Field::prime(p),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub(crate) fn element_of_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Residue {
                    value: r.to_u64().expect("residue below modulus"),
                    modulus: p,
                }
            }
        }
    }

    /// Errors with `TameViolation` when the characteristic divides `n`.
    pub fn check_tame(&self, n: u64) -> Result<()> {
        match *self {
            Field::Prime(p) if n.is_multiple_of(p) => Err(Error::TameViolation {
                characteristic: p,
                n,
            }),
            _ => Ok(()),
        }
    }

    /// Parses `[-]a[/b]` into the field; in `F_p` the quotient is `a * b^-1`.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let syntax = |position: usize, message: &str| Error::SyntaxError {
            position,
            message: message.to_string(),
        };
        let text = text.trim();
        let (negative, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        let offset = text.len() - body.len();
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (body, None),
        };
        let parse_digits = |s: &str, at: usize| -> Result<BigInt> {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(syntax(at, "expected digits"));
            }
            Ok(s.parse::<BigInt>().expect("ascii digits"))
        };
        let mut value = self.element_of_bigint(&parse_digits(num, offset)?);
        if let Some(d) = den {
            let d = self.element_of_bigint(&parse_digits(d, offset + num.len() + 1)?);
            value = value.div(&d)?;
        }
        Ok(if negative { value.neg() } else { value })
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn rational(num: i64, den: i64) -> Scalar {
        Scalar::Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// True for rationals below zero; residues have no sign.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        let (a, b) = (self.field(), other.field());
        if a != b {
            return Err(Error::FieldMismatch(a.characteristic(), b.characteristic()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut exp: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            exp >>= 1;
        }
        acc
    }

    pub(crate) fn add_unchecked(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: (a + b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!("field checked by caller"),
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: mul_mod(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            _ => unreachable!("field checked by caller"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

/// All `n`-th roots of unity in `field`, with the designated primitive root.
pub fn roots_of_unity(field: Field, n: u64) -> Result<RootsOfUnity> {
    assert!(n >= 1, "roots of unity need n >= 1");
    field.check_tame(n)?;
    match field {
        Field::Rationals => {
            let one = field.one();
            let minus_one = one.neg();
            Ok(if n.is_multiple_of(2) {
                RootsOfUnity {
                    roots: alloc::vec![minus_one.clone(), one],
                    primitive: (n == 2).then_some(minus_one),
                }
            } else {
                RootsOfUnity {
                    primitive: (n == 1).then(|| one.clone()),
                    roots: alloc::vec![one],
                }
            })
        }
        Field::Prime(p) => {
            let order = p - 1;
            let d = n.gcd(&order);
            let g = generator(p);
            let step = pow_mod(g, order / d, p);
            let mut roots: Vec<u64> = core::iter::successors(Some(1u64), |x| {
                Some(mul_mod(*x, step, p))
            })
            .take(d as usize)
            .collect();
            roots.sort_unstable();
            let n_primes = prime_factors(n);
            let primitive = (d == n)
                .then(|| {
                    roots
                        .iter()
                        .copied()
                        .find(|&x| n_primes.iter().all(|q| pow_mod(x, n / q, p) != 1))
                })
                .flatten();
            let lift = |value| Scalar::Residue { value, modulus: p };
            Ok(RootsOfUnity {
                roots: roots.into_iter().map(lift).collect(),
                primitive: primitive.map(lift),
            })
        }
    }
}

/// Every `x` in the field with `x^n = c`, in canonical order.
pub fn scalar_nth_root(c: &Scalar, n: u64) -> Result<Vec<Scalar>> {
    assert!(n >= 1, "n-th roots need n >= 1");
    let field = c.field();
    field.check_tame(n)?;
    if c.is_zero() {
        return Ok(alloc::vec![c.clone()]);
    }
    match c {
        Scalar::Rational(q) => {
            if q.is_negative() && n.is_multiple_of(2) {
                return Ok(Vec::new());
            }
            let exact_root = |z: &BigInt| -> Option<BigInt> {
                let r = z.nth_root(n as u32);
                (num_traits::pow::pow(r.clone(), n as usize) == *z).then_some(r)
            };
            let (Some(num), Some(den)) = (exact_root(&q.numer().abs()), exact_root(q.denom()))
            else {
                return Ok(Vec::new());
            };
            let root = BigRational::new(num, den);
            Ok(if n.is_multiple_of(2) {
                alloc::vec![Scalar::Rational(-root.clone()), Scalar::Rational(root)]
            } else if q.is_negative() {
                alloc::vec![Scalar::Rational(-root)]
            } else {
                alloc::vec![Scalar::Rational(root)]
            })
        }
        Scalar::Residue { value, modulus: p } => {
            let (p, order) = (*p, *p - 1);
            let g = generator(p);
            let k = discrete_log(g, *value, p);
            let d = n.gcd(&order);
            if !k.is_multiple_of(d) {
                return Ok(Vec::new());
            }
            // g^y is a root iff n*y = k (mod p-1).
            let reduced = order / d;
            let y0 = if reduced == 1 {
                0
            } else {
                mul_mod((k / d) % reduced, inverse_mod((n / d) % reduced, reduced), reduced)
            };
            let mut roots: Vec<u64> = (0..d)
                .map(|j| pow_mod(g, y0 + j * reduced, p))
                .collect();
            roots.sort_unstable();
            Ok(roots
                .into_iter()
                .map(|value| Scalar::Residue { value, modulus: p })
                .collect())
        }
    }
}

/// The designated root among [`scalar_nth_root`]: the positive one over the
/// rationals (or the only one), the smallest residue in a prime field.
pub fn principal_nth_root(c: &Scalar, n: u64) -> Result<Option<Scalar>> {
    let roots = scalar_nth_root(c, n)?;
    Ok(match c.field() {
        Field::Rationals => roots.iter().next_back().cloned(),
        Field::Prime(_) => roots.into_iter().next(),
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn inverse_mod(a: u64, m: u64) -> u64 {
    let e = num_integer::Integer::extended_gcd(&(a as i128), &(m as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m as i128) as u64
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest generator of the multiplicative group of `F_p`.
fn generator(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let order = p - 1;
    let factors = prime_factors(order);
    (2..p)
        .find(|&g| factors.iter().all(|q| pow_mod(g, order / q, p) != 1))
        .expect("F_p^* is cyclic")
}

/// Baby-step giant-step: `k` in `[0, p-1)` with `g^k = h`.
fn discrete_log(g: u64, h: u64, p: u64) -> u64 {
    let order = p - 1;
    let m = order.sqrt() + 1;
    let mut baby = BTreeMap::new();
    let mut x = 1;
    for j in 0..m {
        baby.entry(x).or_insert(j);
        x = mul_mod(x, g, p);
    }
    let giant = pow_mod(inverse_mod(g, p), m, p);
    let mut y = h;
    for i in 0..=m {
        if let Some(j) = baby.get(&y) {
            return (i * m + j) % order;
        }
        y = mul_mod(y, giant, p);
    }
    unreachable!("{h} is a power of the generator {g} mod {p}")
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::Rational(q)
    }
}
