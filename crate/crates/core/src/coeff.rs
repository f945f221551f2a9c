//! Coefficients: the ring `R`, the ground-field data that decides whether
//! `{-1}` vanishes, and the part of the motivic base ring generated by `{-1}`.
//!
//! A coefficient is a finite sum `c_0 + c_1 {-1} + c_2 {-1}^2 + ...` where
//! `c_0` lives in `R` and every `c_k` with `k >= 1` lives in `R/2R`, because
//! `{-1}` is 2-torsion. The term `c_k {-1}^k` sits in bidegree `(k, k)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};

/// The coefficient ring `R`: either the integers or `Z/m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoeffRing {
    Integers,
    IntegersMod(u64),
}

impl CoeffRing {
    pub fn integers_mod(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(AlgebraError::InvalidPresentation(format!("modulus must be at least 2, got {m}")));
        }
        if m > i64::MAX as u64 {
            return Err(AlgebraError::InvalidPresentation(format!("modulus {m} is too large")));
        }
        Ok(CoeffRing::IntegersMod(m))
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            CoeffRing::Integers => None,
            CoeffRing::IntegersMod(m) => Some(m),
        }
    }

    /// Canonical representative of `value` in `R`.
    pub fn reduce(self, value: i64) -> i64 {
        match self {
            CoeffRing::Integers => value,
            CoeffRing::IntegersMod(m) => value.rem_euclid(m as i64),
        }
    }

    fn reduce_wide(self, value: i128) -> Result<i64> {
        match self {
            CoeffRing::Integers => i64::try_from(value).map_err(|_| AlgebraError::Overflow),
            CoeffRing::IntegersMod(m) => Ok(value.rem_euclid(m as i128) as i64),
        }
    }

    /// Whether `R/2R` is nonzero, i.e. whether `{-1}`-multiples can survive.
    pub fn has_two_torsion_quotient(self) -> bool {
        match self {
            CoeffRing::Integers => true,
            CoeffRing::IntegersMod(m) => m % 2 == 0,
        }
    }

    /// Additive order of a generator of `R` (`0` for infinite order).
    pub fn order(self) -> i64 {
        match self {
            CoeffRing::Integers => 0,
            CoeffRing::IntegersMod(m) => m as i64,
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Integers => f.write_str("Z"),
            CoeffRing::IntegersMod(m) => write!(f, "Z/{m}"),
        }
    }
}

impl FromStr for CoeffRing {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Z" {
            return Ok(CoeffRing::Integers);
        }
        let modulus = s
            .strip_prefix("Z/")
            .ok_or_else(|| AlgebraError::Parse(format!("expected \"Z\" or \"Z/<m>\", got {s:?}")))?;
        let m = modulus.parse::<u64>().map_err(|_| AlgebraError::Parse(format!("bad modulus in {s:?}")))?;
        CoeffRing::integers_mod(m)
    }
}

/// What we need to know about the ground field `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FieldProfile {
    /// When `-1` is a square in `k` the class `{-1}` is zero.
    pub minus_one_is_square: bool,
    /// `char(k)`, when known; used to reject operations at the characteristic.
    pub characteristic: Option<u64>,
}

impl FieldProfile {
    pub fn new(minus_one_is_square: bool, characteristic: Option<u64>) -> Self {
        FieldProfile { minus_one_is_square, characteristic }
    }
}

/// The modeled base ring: `R` together with the field data.
///
/// Two coefficients can only be combined when their bases agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MotivicBase {
    pub coeff: CoeffRing,
    pub profile: FieldProfile,
}

impl MotivicBase {
    pub fn new(coeff: CoeffRing, profile: FieldProfile) -> Self {
        MotivicBase { coeff, profile }
    }

    /// Whether basis lines `{-1}^k w` with `k >= 1` carry a nonzero group.
    pub fn minus_one_survives(&self) -> bool {
        !self.profile.minus_one_is_square && self.coeff.has_two_torsion_quotient()
    }

    /// Coefficient group of the basis line with `{-1}`-exponent `k`, or `None` if it is zero.
    pub fn line_group(&self, k: u32) -> Option<CoefficientGroup> {
        if k == 0 {
            Some(CoefficientGroup::Ring(self.coeff))
        } else if self.minus_one_survives() {
            Some(CoefficientGroup::TwoTorsion)
        } else {
            None
        }
    }
}

impl Default for MotivicBase {
    fn default() -> Self {
        MotivicBase { coeff: CoeffRing::IntegersMod(2), profile: FieldProfile::default() }
    }
}

/// The group carried by a single basis line of a graded piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoefficientGroup {
    /// A copy of `R`.
    Ring(CoeffRing),
    /// A copy of `R/2R` (always `Z/2` when nonzero).
    TwoTorsion,
}

impl CoefficientGroup {
    /// Additive order of the generator, `0` meaning infinite.
    pub fn order(self) -> i64 {
        match self {
            CoefficientGroup::Ring(r) => r.order(),
            CoefficientGroup::TwoTorsion => 2,
        }
    }
}

impl fmt::Display for CoefficientGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientGroup::Ring(_) => f.write_str("R"),
            CoefficientGroup::TwoTorsion => f.write_str("R/2R"),
        }
    }
}

/// Motivic bidegree `(p, q)`: cohomological degree and weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct Bidegree {
    pub p: i64,
    pub q: i64,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree { p: 0, q: 0 };

    pub const fn new(p: i64, q: i64) -> Self {
        Bidegree { p, q }
    }

    /// Bidegree of `{-1}^k`.
    pub const fn minus_one_power(k: u32) -> Self {
        Bidegree { p: k as i64, q: k as i64 }
    }
}

impl Add for Bidegree {
    type Output = Bidegree;

    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree { p: self.p + rhs.p, q: self.q + rhs.q }
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// An element `sum_k c_k {-1}^k` of the subring of the base ring generated by `{-1}`.
///
/// Stored in normal form: `c_0` reduced in `R`, `c_k` for `k >= 1` reduced
/// mod 2, and no zero entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MCoefficient {
    base: MotivicBase,
    terms: BTreeMap<u32, i64>,
}

impl MCoefficient {
    pub fn zero(base: MotivicBase) -> Self {
        MCoefficient { base, terms: BTreeMap::new() }
    }

    pub fn one(base: MotivicBase) -> Self {
        Self::constant(base, 1)
    }

    pub fn constant(base: MotivicBase, c: i64) -> Self {
        Self::from_terms(base, [(0, c)])
    }

    /// `{-1}^k`.
    pub fn minus_one_power(base: MotivicBase, k: u32) -> Self {
        Self::from_terms(base, [(k, 1)])
    }

    /// Builds a coefficient from `(k, c_k)` pairs, summing repeats and normalizing.
    pub fn from_terms(base: MotivicBase, terms: impl IntoIterator<Item = (u32, i64)>) -> Self {
        let mut acc: BTreeMap<u32, i128> = BTreeMap::new();
        for (k, c) in terms {
            *acc.entry(k).or_default() += c as i128;
        }
        MCoefficient::zero(base).collect(acc).expect("coefficient overflow")
    }

    pub fn base(&self) -> MotivicBase {
        self.base
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0) == Some(&1)
    }

    /// `c_k`, zero when absent.
    pub fn coefficient(&self, k: u32) -> i64 {
        self.terms.get(&k).copied().unwrap_or(0)
    }

    /// Nonzero `(k, c_k)` pairs in increasing `k`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    /// Largest `k` present.
    pub fn max_power(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    fn check_base(&self, other: &Self) -> Result<()> {
        if self.base != other.base {
            return Err(AlgebraError::ContextMismatch(format!(
                "coefficients over {:?} and {:?}",
                self.base, other.base
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        let mut acc: BTreeMap<u32, i128> = BTreeMap::new();
        for (k, c) in self.terms().chain(other.terms()) {
            *acc.entry(k).or_default() += c as i128;
        }
        self.collect(acc)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for (&k, c) in out.terms.iter_mut() {
            // Torsion entries are their own negatives.
            if k == 0 {
                *c = self.base.coeff.reduce(-*c);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        let mut acc: BTreeMap<u32, i128> = BTreeMap::new();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                let prod = (x as i128).checked_mul(y as i128).ok_or(AlgebraError::Overflow)?;
                let slot = acc.entry(a + b).or_default();
                *slot = slot.checked_add(prod).ok_or(AlgebraError::Overflow)?;
            }
        }
        self.collect(acc)
    }

    /// Multiplies by `±{-1}^k`.
    pub fn shift(&self, negative: bool, k: u32) -> Self {
        let unit = MCoefficient::from_terms(self.base, [(k, if negative { -1 } else { 1 })]);
        self.mul(&unit).expect("same base")
    }

    pub fn scale(&self, c: i64) -> Result<Self> {
        self.mul(&MCoefficient::constant(self.base, c))
    }

    fn collect(&self, acc: BTreeMap<u32, i128>) -> Result<Self> {
        let mut out = MCoefficient::zero(self.base);
        for (k, c) in acc {
            let c = if k == 0 {
                self.base.coeff.reduce_wide(c)?
            } else if self.base.minus_one_survives() {
                c.rem_euclid(2) as i64
            } else {
                0
            };
            if c != 0 {
                out.terms.insert(k, c);
            }
        }
        Ok(out)
    }
}

/// Trial division; the primes used here are small.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let modulus = p as u128;
    let mut b = (base % p) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % modulus;
        }
        b = b * b % modulus;
        exp >>= 1;
    }
    acc as u64
}

/// `C(a, b) mod p` for `a, b < p`.
fn small_binom(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let modulus = p as u128;
    let (mut num, mut den) = (1u128, 1u128);
    for t in 0..b {
        num = num * ((a - t) as u128 % modulus) % modulus;
        den = den * ((t + 1) as u128 % modulus) % modulus;
    }
    // den is a product of numbers below p, hence invertible.
    (num * pow_mod(den as u64, p - 2, p) as u128 % modulus) as u64
}

/// `C(a, b) mod p` via Lucas' theorem: multiply the digit-wise binomials in base `p`.
pub fn binom_mod(a: u64, b: u64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(AlgebraError::NotPrime(p));
    }
    if b > a {
        return Ok(0);
    }
    let (mut a, mut b) = (a, b);
    let mut acc = 1u64;
    while b > 0 {
        let digit = small_binom(a % p, b % p, p);
        if digit == 0 {
            return Ok(0);
        }
        acc = ((acc as u128 * digit as u128) % p as u128) as u64;
        a /= p;
        b /= p;
    }
    Ok(acc % p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> MotivicBase {
        MotivicBase::new(CoeffRing::Integers, FieldProfile::default())
    }

    fn l(base: MotivicBase) -> MCoefficient {
        MCoefficient::minus_one_power(base, 1)
    }

    #[test]
    fn minus_one_is_two_torsion() {
        let b = z();
        assert!(l(b).add(&l(b)).unwrap().is_zero());
        assert!(MCoefficient::constant(b, 2).mul(&l(b)).unwrap().is_zero());
    }

    #[test]
    fn add_examples() {
        let b = z();
        let x = MCoefficient::from_terms(b, [(0, 3), (1, 1)]);
        assert_eq!(MCoefficient::zero(b).add(&x).unwrap(), x);
        let sum = x.add(&MCoefficient::one(b)).unwrap();
        assert_eq!(sum, MCoefficient::from_terms(b, [(0, 4), (1, 1)]));
    }

    #[test]
    fn powers_of_minus_one_stay_distinct() {
        let b = z();
        let sq = l(b).mul(&l(b)).unwrap();
        assert_eq!(sq, MCoefficient::minus_one_power(b, 2));
        assert!(!sq.is_zero());
    }

    #[test]
    fn square_flag_kills_minus_one() {
        let b = MotivicBase::new(CoeffRing::Integers, FieldProfile::new(true, None));
        assert!(l(b).mul(&MCoefficient::one(b)).unwrap().is_zero());
        let x = MCoefficient::from_terms(b, [(0, 5), (2, 1), (3, 1)]);
        assert_eq!(x.terms().collect::<Vec<_>>(), vec![(0, 5)]);
    }

    #[test]
    fn odd_modulus_kills_minus_one() {
        let b = MotivicBase::new(CoeffRing::IntegersMod(3), FieldProfile::default());
        assert!(l(b).is_zero());
        assert_eq!(MCoefficient::constant(b, -1).coefficient(0), 2);
    }

    #[test]
    fn mismatched_bases_are_rejected() {
        let a = MCoefficient::one(z());
        let b = MCoefficient::one(MotivicBase::default());
        assert!(matches!(a.add(&b), Err(AlgebraError::ContextMismatch(_))));
        assert!(matches!(a.mul(&b), Err(AlgebraError::ContextMismatch(_))));
    }

    #[test]
    fn overflow_is_reported() {
        let b = z();
        let big = MCoefficient::constant(b, i64::MAX);
        assert_eq!(big.mul(&big), Err(AlgebraError::Overflow));
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom_mod(6, 2, 2).unwrap(), 1);
        assert_eq!(binom_mod(2, 1, 2).unwrap(), 0);
        assert_eq!(binom_mod(17, 0, 5).unwrap(), 1);
        assert_eq!(binom_mod(3, 5, 7).unwrap(), 0);
        assert_eq!(binom_mod(4, 2, 4), Err(AlgebraError::NotPrime(4)));
    }

    #[test]
    fn coeff_ring_parsing() {
        assert_eq!("Z".parse::<CoeffRing>().unwrap(), CoeffRing::Integers);
        assert_eq!("Z/6".parse::<CoeffRing>().unwrap(), CoeffRing::IntegersMod(6));
        assert!("Z/1".parse::<CoeffRing>().is_err());
        assert!("Q".parse::<CoeffRing>().is_err());
    }
}
