//! Truncated multivariate Puiseux series.
//!
//! A [`PuiseuxSeries`] in `t1..tm` has nonnegative rational exponents whose
//! denominators all divide a shared root denominator `N`, and is known up to
//! (and including) total degree `D`. Roots of the variables are rational
//! exponents, so `t^(1/kl)` raised to `l` is literally `t^(1/k)`: the system
//! of roots is coherent by construction. Raising `N` to a multiple never
//! changes the element, only the representation.
//!
//! Terms of total degree above `D` are dropped by every operation; the output
//! of a binary operation is truncated at the smaller of the two orders.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::scalars::{Field, Scalar};
use crate::{Error, Result};

mod parse;

pub use parse::parse_series;

/// Order of vanishing of a series; the zero series has [`Valuation::Infinite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(Rational64),
    Infinite,
}

/// Exponent vector stored as numerators over the series' root denominator.
///
/// Ordered by total degree, then with larger powers of earlier variables
/// first, which is the order terms are printed in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Monomial(Vec<u64>);

impl Monomial {
    fn degree(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone)]
pub struct PuiseuxSeries {
    field: Field,
    nvars: usize,
    denom: u64,
    order: Rational64,
    terms: BTreeMap<Monomial, Scalar>,
}

/// Ring operation selector for [`series_combine`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineOp {
    Add,
    Sub,
    Mul,
}

/// `c * t^e * u` with `u` a unit whose constant term is `1`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitMonomial {
    pub coefficient: Scalar,
    pub exponent: Vec<Rational64>,
    pub unit: PuiseuxSeries,
}

fn rat(num: u64, den: u64) -> Rational64 {
    Rational64::new(num as i64, den as i64)
}

fn total(exponent: &[Rational64]) -> Rational64 {
    exponent.iter().fold(Rational64::zero(), |acc, e| acc + e)
}

fn lcm_of_denominators(exponent: &[Rational64]) -> u64 {
    exponent.iter().fold(1u64, |acc, e| acc.lcm(&(*e.denom() as u64)))
}

impl PuiseuxSeries {
    /// The zero series.
    ///
    /// Panics if `nvars` or `denom` is zero or `order` is negative.
    pub fn zero(field: Field, nvars: usize, denom: u64, order: Rational64) -> Self {
        assert!(nvars >= 1 && denom >= 1, "need at least one variable and N >= 1");
        assert!(!order.is_negative(), "truncation order must be nonnegative");
        PuiseuxSeries {
            field,
            nvars,
            denom,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar, nvars: usize, denom: u64, order: Rational64) -> Self {
        let mut s = Self::zero(c.field(), nvars, denom, order);
        s.insert(Monomial(alloc::vec![0; nvars]), c);
        s
    }

    /// `c * t1^e1 * ... * tm^em`, validated against `denom` and truncated.
    pub fn monomial(
        c: Scalar,
        exponent: &[Rational64],
        denom: u64,
        order: Rational64,
    ) -> Result<Self> {
        let mut s = Self::zero(c.field(), exponent.len(), denom, order);
        let m = s.encode(exponent)?;
        s.insert(m, c);
        Ok(s)
    }

    /// Builds a series from `(exponent, coefficient)` pairs, merging like terms.
    pub fn from_terms<I>(
        field: Field,
        nvars: usize,
        denom: u64,
        order: Rational64,
        terms: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<Rational64>, Scalar)>,
    {
        let mut s = Self::zero(field, nvars, denom, order);
        for (exponent, c) in terms {
            if c.field() != field {
                return Err(Error::FieldMismatch(
                    field.characteristic(),
                    c.field().characteristic(),
                ));
            }
            if exponent.len() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: exponent.len(),
                });
            }
            let m = s.encode(&exponent)?;
            s.insert(m, c);
        }
        Ok(s)
    }

    fn encode(&self, exponent: &[Rational64]) -> Result<Monomial> {
        exponent
            .iter()
            .map(|e| {
                assert!(!e.is_negative(), "exponents in the Puiseux ring are nonnegative");
                let den = *e.denom() as u64;
                if !self.denom.is_multiple_of(den) {
                    return Err(Error::ExponentDenominatorExceedsN {
                        denominator: den,
                        root_denominator: self.denom,
                    });
                }
                Ok(*e.numer() as u64 * (self.denom / den))
            })
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    fn decode(&self, m: &Monomial) -> Vec<Rational64> {
        m.0.iter().map(|&k| rat(k, self.denom)).collect()
    }

    fn within_order(&self, m: &Monomial) -> bool {
        // degree / N <= order
        (m.degree() as i128) * (*self.order.denom() as i128)
            <= (*self.order.numer() as i128) * (self.denom as i128)
    }

    /// Adds `c * m` into the series, dropping zeros and truncated terms.
    fn insert(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() || !self.within_order(&m) {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add_unchecked(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// The shared denominator `N` of all exponents.
    pub fn root_denominator(&self) -> u64 {
        self.denom
    }

    /// The truncation order `D`.
    pub fn order(&self) -> Rational64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order: by total degree, then larger powers of
    /// earlier variables first.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<Rational64>, &Scalar)> + '_ {
        self.terms.iter().map(|(m, c)| (self.decode(m), c))
    }

    /// The term map keyed by rational exponents; independent of `N`.
    pub fn term_map(&self) -> BTreeMap<Vec<Rational64>, Scalar> {
        self.terms().map(|(e, c)| (e, c.clone())).collect()
    }

    pub fn coefficient(&self, exponent: &[Rational64]) -> Option<&Scalar> {
        let m = self.encode(exponent).ok()?;
        self.terms.get(&m)
    }

    /// Re-expresses the series over the root denominator `denom`, which must
    /// be a multiple of the current one.
    pub fn with_root_denominator(&self, denom: u64) -> Self {
        assert!(
            denom.is_multiple_of(self.denom),
            "root denominator {denom} is not a multiple of {}",
            self.denom
        );
        let scale = denom / self.denom;
        PuiseuxSeries {
            field: self.field,
            nvars: self.nvars,
            denom,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial(m.0.iter().map(|k| k * scale).collect()), c.clone()))
                .collect(),
        }
    }

    /// Lowers the truncation order; orders above the current one are ignored.
    pub fn truncated(&self, order: Rational64) -> Self {
        let mut out = self.clone();
        out.order = out.order.min(order);
        let keep: BTreeMap<_, _> = core::mem::take(&mut out.terms)
            .into_iter()
            .filter(|(m, _)| out.within_order(m))
            .collect();
        out.terms = keep;
        out
    }

    /// Same terms, with the truncation order set to `order` (possibly higher).
    ///
    /// The stored terms are then taken as exact up to the new order.
    pub fn with_order(&self, order: Rational64) -> Self {
        let mut out = self.clone();
        out.order = order;
        out.truncated(order)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.characteristic(),
                other.field.characteristic(),
            ));
        }
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    /// Both operands over a common root denominator and the output shell.
    fn align(&self, other: &Self) -> Result<(Self, Self, Self)> {
        self.compatible(other)?;
        let denom = self.denom.lcm(&other.denom);
        let order = self.order.min(other.order);
        Ok((
            self.with_root_denominator(denom),
            other.with_root_denominator(denom),
            Self::zero(self.field, self.nvars, denom, order),
        ))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (a, b, mut out) = self.align(other)?;
        for (m, c) in a.terms.into_iter().chain(b.terms) {
            out.insert(m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, b, mut out) = self.align(other)?;
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = Monomial(ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect());
                if !out.within_order(&m) {
                    // b's terms come in increasing degree
                    break;
                }
                out.insert(m, ca.mul_unchecked(cb));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Scalar) -> Result<Self> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch(
                self.field.characteristic(),
                c.field().characteristic(),
            ));
        }
        let mut out = Self::zero(self.field, self.nvars, self.denom, self.order);
        for (m, x) in &self.terms {
            out.insert(m.clone(), x.mul_unchecked(c));
        }
        Ok(out)
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.field.one(), self.nvars, self.denom, self.order);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Minimum total degree of a stored term.
    pub fn valuation(&self) -> Valuation {
        match self.terms.keys().next() {
            Some(m) => Valuation::Finite(rat(m.degree(), self.denom)),
            None => Valuation::Infinite,
        }
    }

    fn constant_term(&self) -> Option<&Scalar> {
        self.terms.get(&Monomial(alloc::vec![0; self.nvars]))
    }

    /// Inverse of a unit (nonzero constant term), by Newton iteration
    /// `y <- y + y(1 - a y)`.
    pub fn inv(&self) -> Result<Self> {
        let c0 = match (self.valuation(), self.constant_term()) {
            (Valuation::Infinite, _) => return Err(Error::DivisionByZero),
            (_, Some(c)) => c,
            (Valuation::Finite(v), None) => return Err(Error::NotAUnit(v.to_string())),
        };
        let one = Self::constant(self.field.one(), self.nvars, self.denom, self.order);
        let mut y = Self::constant(c0.inv()?, self.nvars, self.denom, self.order);
        loop {
            let residual = one.sub(&self.mul(&y)?)?;
            if residual.is_zero() {
                return Ok(y);
            }
            y = y.add(&y.mul(&residual)?)?;
        }
    }

    /// Splits the series as `c * t^e * u` with `u(0) = 1`.
    ///
    /// The unit is returned with truncation order `D - |e|`.
    pub fn unit_monomial_form(&self) -> Result<UnitMonomial> {
        let mut iter = self.terms.iter();
        let (lead, c) = iter.next().ok_or(Error::NotUnitTimesMonomial)?;
        let mut unit = Self::zero(
            self.field,
            self.nvars,
            self.denom,
            self.order - rat(lead.degree(), self.denom),
        );
        let c_inv = c.inv()?;
        unit.insert(Monomial(alloc::vec![0; self.nvars]), self.field.one());
        for (m, x) in iter {
            if m.degree() == lead.degree() || m.0.iter().zip(&lead.0).any(|(a, b)| a < b) {
                return Err(Error::NotUnitTimesMonomial);
            }
            let shifted = Monomial(m.0.iter().zip(&lead.0).map(|(a, b)| a - b).collect());
            unit.insert(shifted, x.mul_unchecked(&c_inv));
        }
        Ok(UnitMonomial {
            coefficient: c.clone(),
            exponent: self.decode(lead),
            unit,
        })
    }

    /// An `n`-th root of `c * t^e * (1 + h)`, with leading term
    /// `root_choice * t^(e/n)`.
    ///
    /// The stored terms of `self` are taken as exact, and the root is
    /// returned at the same truncation order `D` over the root denominator
    /// `lcm(N, n * den(e))`. The unit part is found by Newton iteration
    /// `y <- y - (y^n - u) / (n y^(n-1))`, which only divides by `n` and by
    /// units.
    pub fn nth_root(&self, n: u64, root_choice: &Scalar) -> Result<Self> {
        assert!(n >= 1, "n-th roots need n >= 1");
        self.field.check_tame(n)?;
        if root_choice.field() != self.field {
            return Err(Error::FieldMismatch(
                self.field.characteristic(),
                root_choice.field().characteristic(),
            ));
        }
        let form = self.unit_monomial_form()?;
        if root_choice.pow(n) != form.coefficient {
            return Err(Error::LeadingCoefficientRootInvalid(
                root_choice.to_string(),
                form.coefficient.to_string(),
            ));
        }
        let root_exponent: Vec<Rational64> = form
            .exponent
            .iter()
            .map(|e| e / Rational64::from_integer(n as i64))
            .collect();
        let lead_degree = total(&root_exponent);
        let unit_order = self.order - lead_degree;
        let target = form.unit.with_order(unit_order);
        let y = unit_nth_root(&target, n)?;

        let denom = self.denom.lcm(&(n * lcm_of_denominators(&form.exponent)));
        let lead = Self::monomial(root_choice.clone(), &root_exponent, denom, self.order)?;
        lead.mul(&y.with_root_denominator(denom).with_order(self.order))
    }

    /// True iff `self - other` has no term of total degree `<= order`.
    pub fn equal_mod(&self, other: &Self, order: Rational64) -> Result<bool> {
        self.compatible(other)?;
        let limit = self.order.min(other.order);
        if order > limit {
            return Err(Error::OrderExceedsTruncation {
                order: order.to_string(),
                truncation: limit.to_string(),
            });
        }
        let diff = self.sub(other)?;
        Ok(match diff.valuation() {
            Valuation::Infinite => true,
            Valuation::Finite(v) => v > order,
        })
    }
}

/// `y` with `y^n = u` and `y(0) = 1`, for a unit `u` with `u(0) = 1`.
fn unit_nth_root(u: &PuiseuxSeries, n: u64) -> Result<PuiseuxSeries> {
    let field = u.field;
    let n_inv = field.from_int(n as i64).inv()?;
    let mut y = PuiseuxSeries::constant(field.one(), u.nvars, u.denom, u.order);
    loop {
        let residual = y.pow(n).sub(u)?;
        if residual.is_zero() {
            return Ok(y);
        }
        let step = residual
            .mul(&y.pow(n - 1).inv()?)?
            .scale(&n_inv)?;
        y = y.sub(&step)?;
    }
}

/// Equality as elements: same ring, same order, same rational term map.
impl PartialEq for PuiseuxSeries {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.nvars == other.nvars
            && self.order == other.order
            && self.term_map() == other.term_map()
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = if negative { c.neg() } else { c.clone() };
            let factors = monomial_factors(&self.decode(m));
            if factors.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                f.write_str(&factors)?;
            } else {
                write!(f, "{magnitude}*{factors}")?;
            }
        }
        Ok(())
    }
}

fn monomial_factors(exponent: &[Rational64]) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    for (i, e) in exponent.iter().enumerate().filter(|(_, e)| !e.is_zero()) {
        if !out.is_empty() {
            out.push('*');
        }
        let var = i + 1;
        let _ = if *e == Rational64::from_integer(1) {
            write!(out, "t{var}")
        } else if e.is_integer() {
            write!(out, "t{var}^{e}")
        } else {
            write!(out, "t{var}^({e})")
        };
    }
    out
}

pub fn series_combine(
    op: CombineOp,
    a: &PuiseuxSeries,
    b: &PuiseuxSeries,
) -> Result<PuiseuxSeries> {
    match op {
        CombineOp::Add => a.add(b),
        CombineOp::Sub => a.sub(b),
        CombineOp::Mul => a.mul(b),
    }
}

pub fn valuation(a: &PuiseuxSeries) -> Valuation {
    a.valuation()
}

pub fn series_inv(a: &PuiseuxSeries) -> Result<PuiseuxSeries> {
    a.inv()
}

pub fn series_nth_root(a: &PuiseuxSeries, n: u64, root_choice: &Scalar) -> Result<PuiseuxSeries> {
    a.nth_root(n, root_choice)
}

pub fn series_equal_mod(a: &PuiseuxSeries, b: &PuiseuxSeries, order: Rational64) -> Result<bool> {
    a.equal_mod(b, order)
}

/// An element `c * t^e * u` of the fraction field, where `e` may have
/// negative entries and `u` is a unit with `u(0) = 1`.
///
/// Only products and inverses are supported; sums of such elements leave the
/// normal form.
#[derive(Debug, Clone, PartialEq)]
pub struct Fraction {
    pub coefficient: Scalar,
    pub exponent: Vec<Rational64>,
    pub unit: PuiseuxSeries,
}

impl Fraction {
    pub fn from_series(a: &PuiseuxSeries) -> Result<Self> {
        let UnitMonomial {
            coefficient,
            exponent,
            unit,
        } = a.unit_monomial_form()?;
        Ok(Fraction {
            coefficient,
            exponent,
            unit,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(Fraction {
            coefficient: self.coefficient.mul(&other.coefficient)?,
            exponent: self
                .exponent
                .iter()
                .zip(&other.exponent)
                .map(|(a, b)| a + b)
                .collect(),
            unit: self.unit.mul(&other.unit)?,
        })
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(Fraction {
            coefficient: self.coefficient.inv()?,
            exponent: self.exponent.iter().map(|e| -e).collect(),
            unit: self.unit.inv()?,
        })
    }

    /// Back into the Puiseux ring at order `order`, when every exponent is
    /// nonnegative; `None` otherwise.
    pub fn to_series(&self, order: Rational64) -> Option<PuiseuxSeries> {
        if self.exponent.iter().any(|e| e.is_negative()) {
            return None;
        }
        let denom = self
            .unit
            .root_denominator()
            .lcm(&lcm_of_denominators(&self.exponent));
        let lead =
            PuiseuxSeries::monomial(self.coefficient.clone(), &self.exponent, denom, order).ok()?;
        let unit = self
            .unit
            .with_root_denominator(denom)
            .with_order(order);
        lead.mul(&unit).ok().map(|s| s.truncated(order))
    }
}
