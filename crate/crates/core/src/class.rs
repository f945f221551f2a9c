//! Normal-form classes in a finitely presented algebra over the modeled base ring.
//!
//! A [`Presentation`] supplies a monomial basis (its `Key`s), the bidegree of
//! each key and the rule for multiplying two keys. [`Class`] is a finite sum
//! `sum c_w w` with nonzero [`MCoefficient`]s and is generic over the
//! presentation, so the Stiefel rings and the comparison target share all of
//! the additive and multiplicative plumbing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use crate::coeff::{Bidegree, CoefficientGroup, MCoefficient, MotivicBase};
use crate::error::{AlgebraError, Result};

/// Product of two basis keys: `±{-1}^k · key`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyProduct<K> {
    pub key: K,
    pub negative: bool,
    pub minus_one_power: u32,
}

/// One line `{-1}^k w` of a graded piece, with the group it carries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisLine<K> {
    pub key: K,
    pub minus_one_power: u32,
    pub group: CoefficientGroup,
}

pub trait Presentation: Copy + Eq + Debug {
    type Key: Ord + Clone + Debug;

    fn base(&self) -> MotivicBase;

    fn unit_key(&self) -> Self::Key;

    fn is_valid_key(&self, key: &Self::Key) -> bool;

    fn key_bidegree(&self, key: &Self::Key) -> Bidegree;

    /// `a · b` in normal form, `None` when it vanishes.
    fn multiply_keys(&self, a: &Self::Key, b: &Self::Key) -> Option<KeyProduct<Self::Key>>;

    /// Every key of exactly bidegree `bd`.
    fn keys_of_bidegree(&self, bd: Bidegree) -> Vec<Self::Key>;

    /// Short description for error messages.
    fn describe(&self) -> String;

    /// All lines `(w, k)` with `|w| + (k, k) = bd` whose coefficient group is nonzero.
    fn basis_in_bidegree(&self, bd: Bidegree) -> Vec<BasisLine<Self::Key>> {
        let base = self.base();
        let mut lines = Vec::new();
        if bd.q < 0 {
            return lines;
        }
        for k in 0..=bd.q as u32 {
            let Some(group) = base.line_group(k) else { break };
            let rest = Bidegree::new(bd.p - k as i64, bd.q - k as i64);
            for key in self.keys_of_bidegree(rest) {
                lines.push(BasisLine { key, minus_one_power: k, group });
            }
        }
        lines
    }
}

/// A class in normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Class<P: Presentation> {
    pres: P,
    terms: BTreeMap<P::Key, MCoefficient>,
}

impl<P: Presentation> Class<P> {
    pub fn zero(pres: P) -> Self {
        Class { pres, terms: BTreeMap::new() }
    }

    pub fn one(pres: P) -> Self {
        Self::monomial(pres, pres.unit_key())
    }

    /// A scalar multiple of the unit.
    pub fn scalar(pres: P, c: MCoefficient) -> Result<Self> {
        Self::from_terms(pres, [(pres.unit_key(), c)])
    }

    pub(crate) fn monomial(pres: P, key: P::Key) -> Self {
        let mut terms = BTreeMap::new();
        let c = MCoefficient::one(pres.base());
        if !c.is_zero() {
            terms.insert(key, c);
        }
        Class { pres, terms }
    }

    /// Builds a class from `(key, coefficient)` pairs, checking each key and summing repeats.
    pub fn from_terms(pres: P, terms: impl IntoIterator<Item = (P::Key, MCoefficient)>) -> Result<Self> {
        let mut out = Class::zero(pres);
        for (key, c) in terms {
            if !pres.is_valid_key(&key) {
                return Err(AlgebraError::InvalidMonomial(format!("{key:?} in {}", pres.describe())));
            }
            if c.base() != pres.base() {
                return Err(AlgebraError::ContextMismatch(format!(
                    "coefficient over {:?} used in {}",
                    c.base(),
                    pres.describe()
                )));
            }
            out.accumulate(key, &c)?;
        }
        Ok(out)
    }

    fn accumulate(&mut self, key: P::Key, c: &MCoefficient) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.get(&key) {
            Some(old) => {
                let sum = old.add(c)?;
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    self.terms.insert(key, sum);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
        Ok(())
    }

    pub fn presentation(&self) -> P {
        self.pres
    }

    pub fn base(&self) -> MotivicBase {
        self.pres.base()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&P::Key, &MCoefficient)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `key`, zero when absent.
    pub fn coefficient(&self, key: &P::Key) -> MCoefficient {
        self.terms.get(key).cloned().unwrap_or_else(|| MCoefficient::zero(self.base()))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.pres != other.pres {
            return Err(AlgebraError::ContextMismatch(format!(
                "{} vs {}",
                self.pres.describe(),
                other.pres.describe()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (key, c) in &other.terms {
            out.accumulate(key.clone(), c)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Class { pres: self.pres, terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Multiplies on the left by a base coefficient.
    pub fn scale(&self, c: &MCoefficient) -> Result<Self> {
        if c.base() != self.base() {
            return Err(AlgebraError::ContextMismatch("scalar over a different base".into()));
        }
        let mut out = Class::zero(self.pres);
        for (key, d) in &self.terms {
            out.accumulate(key.clone(), &c.mul(d)?)?;
        }
        Ok(out)
    }

    pub fn scale_int(&self, c: i64) -> Result<Self> {
        self.scale(&MCoefficient::constant(self.base(), c))
    }

    /// Distributive product in normal form.
    ///
    /// `{-1}` is treated as central: moving it past an odd class only changes
    /// a sign, and every `{-1}`-multiple is 2-torsion.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Class::zero(self.pres);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let Some(prod) = self.pres.multiply_keys(a, b) else { continue };
                let c = ca.mul(cb)?.shift(prod.negative, prod.minus_one_power);
                out.accumulate(prod.key, &c)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Class::one(self.pres);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Bidegrees of the homogeneous parts.
    pub fn bidegrees(&self) -> BTreeSet<Bidegree> {
        let mut out = BTreeSet::new();
        for (key, c) in &self.terms {
            let bd = self.pres.key_bidegree(key);
            for (k, _) in c.terms() {
                out.insert(bd + Bidegree::minus_one_power(k));
            }
        }
        out
    }

    /// The bidegree of a nonzero homogeneous class.
    pub fn homogeneous_bidegree(&self) -> Option<Bidegree> {
        let bds = self.bidegrees();
        if bds.len() == 1 {
            bds.into_iter().next()
        } else {
            None
        }
    }

    /// True for zero and for classes with a single bidegree.
    pub fn is_homogeneous(&self) -> bool {
        self.bidegrees().len() <= 1
    }

    /// The homogeneous component of bidegree `bd`.
    pub fn component(&self, bd: Bidegree) -> Self {
        let mut out = Class::zero(self.pres);
        for (key, c) in &self.terms {
            let kb = self.pres.key_bidegree(key);
            let part = MCoefficient::from_terms(
                self.base(),
                c.terms().filter(|&(k, _)| kb + Bidegree::minus_one_power(k) == bd),
            );
            if !part.is_zero() {
                out.terms.insert(key.clone(), part);
            }
        }
        out
    }

    /// Splits into `(bidegree, component)` pairs.
    pub fn homogeneous_parts(&self) -> Vec<(Bidegree, Self)> {
        self.bidegrees().into_iter().map(|bd| (bd, self.component(bd))).collect()
    }

    /// Coordinates against `basis_in_bidegree(bd)`: the `c_k` of each line.
    pub fn coordinates(&self, lines: &[BasisLine<P::Key>]) -> Vec<i64> {
        lines.iter().map(|line| self.terms.get(&line.key).map_or(0, |c| c.coefficient(line.minus_one_power))).collect()
    }

    /// Inverse of [`Class::coordinates`].
    pub fn from_coordinates(pres: P, lines: &[BasisLine<P::Key>], coords: &[i64]) -> Result<Self> {
        let base = pres.base();
        Self::from_terms(
            pres,
            lines
                .iter()
                .zip(coords)
                .map(|(line, &c)| (line.key.clone(), MCoefficient::from_terms(base, [(line.minus_one_power, c)]))),
        )
    }
}
