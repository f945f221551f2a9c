//! Motivic Steenrod squares and reduced powers on the Stiefel rings.
//!
//! On generators (char(k) != p):
//!
//! * `Sq^{2i}(rho_j) = C(j-1, i) rho_{j+i}` if `i + j <= n`, else `0`;
//! * `P^i(rho_j) = C(j-1, i) rho_{ip+j-i}` if `ip + j - i <= n`, else `0`;
//! * odd squares and the Bockstein vanish on every `rho_j`.
//!
//! The action on monomials uses the Cartan sum over even operations only,
//! `Sq^{2k}(xy) = sum_{a+b=k} Sq^{2a}(x) Sq^{2b}(y)`; with the odd operations
//! zero on `rho`-monomials the correction terms of the motivic Cartan formula
//! drop out. Powers of `{-1}` behave as scalars, so positive operations
//! annihilate the pure base classes.
//!
//! The same operations act on `H(G_m x P^{n-1})` by `Sq^{2i}(sigma^s eta^e) =
//! C(e, i) sigma^s eta^{e+i}` (and `P^i(eta^e) = C(e, i) eta^{e + i(p-1)}`),
//! which is what the comparison map has to be compatible with.

use std::fmt;

use crate::class::{Class, Presentation};
use crate::coeff::{binom_mod, is_prime, Bidegree, MotivicBase};
use crate::error::{AlgebraError, Result};
use crate::stiefel::{Element, Monomial, StiefelPresentation};
use crate::target::{require_characteristic, require_mod, PGmMonomial, PGmPresentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperationKind {
    /// `Sq^{2i}`.
    Square(u32),
    /// `Sq^{2i+1}`.
    OddSquare(u32),
    /// `P^i`.
    Power(u32),
    Bockstein,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OperationSpec {
    prime: u64,
    kind: OperationKind,
}

impl OperationSpec {
    /// `Sq^k`, even or odd.
    pub fn sq(k: u32) -> Self {
        let kind = if k.is_multiple_of(2) { OperationKind::Square(k / 2) } else { OperationKind::OddSquare(k / 2) };
        OperationSpec { prime: 2, kind }
    }

    /// `P^i` at an odd prime.
    pub fn power(i: u32, p: u64) -> Result<Self> {
        Self::new(p, OperationKind::Power(i))
    }

    pub fn bockstein(p: u64) -> Result<Self> {
        Self::new(p, OperationKind::Bockstein)
    }

    pub fn new(prime: u64, kind: OperationKind) -> Result<Self> {
        if !is_prime(prime) {
            return Err(AlgebraError::NotPrime(prime));
        }
        match kind {
            OperationKind::Square(_) | OperationKind::OddSquare(_) if prime != 2 => {
                Err(AlgebraError::InvalidOperation(format!("Steenrod squares live at p = 2, not p = {prime}")))
            }
            OperationKind::Power(_) | OperationKind::Bockstein if prime == 2 => Err(AlgebraError::InvalidOperation(
                "reduced powers and the Bockstein need an odd prime; use squares at p = 2".into(),
            )),
            _ => Ok(OperationSpec { prime, kind }),
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn kind(&self) -> OperationKind {
        self.kind
    }

    /// `Sq^0` or `P^0`.
    pub fn is_identity(&self) -> bool {
        matches!(self.kind, OperationKind::Square(0) | OperationKind::Power(0))
    }

    /// How the operation moves bidegrees.
    pub fn bidegree_shift(&self) -> Bidegree {
        let p = self.prime as i64;
        match self.kind {
            OperationKind::Square(i) => Bidegree::new(2 * i as i64, i as i64),
            OperationKind::OddSquare(i) => Bidegree::new(2 * i as i64 + 1, i as i64),
            OperationKind::Power(i) => Bidegree::new(2 * i as i64 * (p - 1), i as i64 * (p - 1)),
            OperationKind::Bockstein => Bidegree::new(1, 0),
        }
    }

    /// Same family, different index (only meaningful for the even families).
    fn with_index(&self, i: u32) -> Self {
        let kind = match self.kind {
            OperationKind::Square(_) => OperationKind::Square(i),
            OperationKind::Power(_) => OperationKind::Power(i),
            other => other,
        };
        OperationSpec { prime: self.prime, kind }
    }

    fn index(&self) -> Option<u32> {
        match self.kind {
            OperationKind::Square(i) | OperationKind::Power(i) => Some(i),
            OperationKind::OddSquare(_) | OperationKind::Bockstein => None,
        }
    }

    /// Checks coefficients `Z/p` and `char(k) != p`.
    pub fn check_admissible(&self, base: MotivicBase) -> Result<()> {
        require_mod(base.coeff, self.prime)?;
        require_characteristic(base.profile, self.prime)
    }
}

impl fmt::Display for OperationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            OperationKind::Square(i) => write!(f, "Sq^{}", 2 * i),
            OperationKind::OddSquare(i) => write!(f, "Sq^{}", 2 * i + 1),
            OperationKind::Power(i) => write!(f, "P^{}", i),
            OperationKind::Bockstein => f.write_str("beta"),
        }
    }
}

/// A presentation on whose basis keys the operations are known.
pub trait SteenrodAction: Presentation {
    /// The operation applied to the basis key with coefficient one.
    fn operate_on_key(&self, op: &OperationSpec, key: &Self::Key) -> Result<Class<Self>>;
}

fn generator_target(op: &OperationSpec, j: u32) -> Option<(u32, u64)> {
    // (binomial index i, target index)
    match op.kind {
        OperationKind::Square(i) => Some((i, j as u64 + i as u64)),
        OperationKind::Power(i) => Some((i, i as u64 * op.prime + j as u64 - i as u64)),
        OperationKind::OddSquare(_) | OperationKind::Bockstein => None,
    }
}

fn on_generator(op: &OperationSpec, j: u32, pres: &StiefelPresentation) -> Result<Element> {
    op.check_admissible(pres.base())?;
    if !pres.has_generator(j) {
        return Err(AlgebraError::InvalidGenerator(j, pres.describe()));
    }
    let Some((i, target)) = generator_target(op, j) else {
        return Ok(Element::zero(*pres));
    };
    if target > pres.n() as u64 {
        return Ok(Element::zero(*pres));
    }
    let c = binom_mod((j - 1) as u64, i as u64, op.prime)?;
    // target >= j >= n - m + 1, so rho_target is a generator.
    pres.generator(target as u32)?.scale_int(c as i64)
}

/// `Sq^{2i}(rho_j)`.
pub fn sq_on_generator(i: u32, j: u32, pres: &StiefelPresentation) -> Result<Element> {
    on_generator(&OperationSpec::sq(2 * i), j, pres)
}

/// `Sq^{2i+1}(rho_j)`, always zero.
pub fn odd_sq_on_generator(i: u32, j: u32, pres: &StiefelPresentation) -> Result<Element> {
    on_generator(&OperationSpec::sq(2 * i + 1), j, pres)
}

/// `P^i(rho_j)` at the odd prime `p`.
pub fn power_on_generator(i: u32, j: u32, p: u64, pres: &StiefelPresentation) -> Result<Element> {
    on_generator(&OperationSpec::power(i, p)?, j, pres)
}

/// `beta(rho_j)`, always zero.
pub fn bockstein_on_generator(j: u32, p: u64, pres: &StiefelPresentation) -> Result<Element> {
    on_generator(&OperationSpec::bockstein(p)?, j, pres)
}

impl SteenrodAction for StiefelPresentation {
    fn operate_on_key(&self, op: &OperationSpec, key: &Monomial) -> Result<Element> {
        if op.is_identity() {
            return Ok(Class::monomial(*self, key.clone()));
        }
        let Some(total) = op.index() else {
            return Ok(Element::zero(*self));
        };
        // Cartan: peel off the first factor and distribute the index.
        let Some((&first, rest)) = key.indices().split_first() else {
            return Ok(Element::zero(*self));
        };
        let rest = Monomial::new(rest.to_vec())?;
        let mut out = Element::zero(*self);
        for a in 0..=total {
            let left = on_generator(&op.with_index(a), first, self)?;
            if left.is_zero() {
                continue;
            }
            let right = self.operate_on_key(&op.with_index(total - a), &rest)?;
            out = out.add(&left.mul(&right)?)?;
        }
        Ok(out)
    }
}

impl SteenrodAction for PGmPresentation {
    fn operate_on_key(&self, op: &OperationSpec, key: &PGmMonomial) -> Result<Class<Self>> {
        let Some(i) = op.index() else {
            return Ok(Class::zero(*self));
        };
        let shift = match op.kind {
            OperationKind::Square(i) => i,
            _ => i * (op.prime as u32 - 1),
        };
        let c = binom_mod(key.eta as u64, i as u64, op.prime)?;
        self.term(key.sigma, key.eta + shift).scale_int(c as i64)
    }
}

/// Applies `op` to an arbitrary class, additively and part by part.
pub fn apply_operation<P: SteenrodAction>(op: &OperationSpec, x: &Class<P>) -> Result<Class<P>> {
    let pres = x.presentation();
    op.check_admissible(pres.base())?;
    let shift = op.bidegree_shift();
    let mut out = Class::zero(pres);
    for (key, c) in x.terms() {
        let image = pres.operate_on_key(op, key)?;
        if cfg!(debug_assertions) {
            let expected = pres.key_bidegree(key) + shift;
            assert!(
                image.bidegrees().iter().all(|&b| b == expected),
                "{op} moved {key:?} to {:?}, expected {expected}",
                image.bidegrees()
            );
        }
        out = out.add(&image.scale(c)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{CoeffRing, FieldProfile};
    use crate::stiefel::random_element;

    fn gl(n: u32, m: u64) -> StiefelPresentation {
        StiefelPresentation::general_linear(n, CoeffRing::IntegersMod(m), FieldProfile::default()).unwrap()
    }

    #[test]
    fn square_examples() {
        let g3 = gl(3, 2);
        assert_eq!(sq_on_generator(1, 2, &g3).unwrap(), g3.generator(3).unwrap());
        assert!(sq_on_generator(1, 3, &gl(5, 2)).unwrap().is_zero());
        assert!(sq_on_generator(2, 3, &gl(4, 2)).unwrap().is_zero());
    }

    #[test]
    fn odd_squares_vanish() {
        assert!(odd_sq_on_generator(0, 2, &gl(3, 2)).unwrap().is_zero());
        assert!(odd_sq_on_generator(1, 3, &gl(4, 2)).unwrap().is_zero());
        let g3 = gl(3, 2);
        assert!(apply_operation(&OperationSpec::sq(1), &Element::one(g3)).unwrap().is_zero());
    }

    #[test]
    fn power_examples() {
        let g4 = gl(4, 3);
        assert_eq!(power_on_generator(1, 2, 3, &g4).unwrap(), g4.generator(4).unwrap());
        let g5 = gl(5, 3);
        assert_eq!(power_on_generator(1, 3, 3, &g5).unwrap(), g5.generator(5).unwrap().scale_int(2).unwrap());
        for j in 1..=5 {
            assert_eq!(power_on_generator(0, j, 3, &g5).unwrap(), g5.generator(j).unwrap());
            assert!(bockstein_on_generator(j, 3, &g5).unwrap().is_zero());
        }
    }

    #[test]
    fn cartan_examples() {
        let g3 = gl(3, 2);
        let x = g3.word(&[1, 2]).unwrap();
        assert_eq!(apply_operation(&OperationSpec::sq(2), &x).unwrap(), g3.word(&[1, 3]).unwrap());

        let g5 = gl(5, 3);
        let x = g5.word(&[2, 3]).unwrap();
        let expected = g5
            .word(&[3, 4])
            .unwrap()
            .scale_int(2)
            .unwrap()
            .add(&g5.word(&[2, 5]).unwrap().scale_int(2).unwrap())
            .unwrap();
        assert_eq!(apply_operation(&OperationSpec::power(1, 3).unwrap(), &x).unwrap(), expected);
    }

    #[test]
    fn sq_zero_is_identity() {
        let g4 = gl(4, 2);
        for seed in 0..50 {
            let x = random_element(&g4, None, seed);
            assert_eq!(apply_operation(&OperationSpec::sq(0), &x).unwrap(), x);
        }
    }

    #[test]
    fn admissibility() {
        let z = StiefelPresentation::general_linear(3, CoeffRing::Integers, FieldProfile::default()).unwrap();
        assert!(matches!(sq_on_generator(1, 2, &z), Err(AlgebraError::WrongCoefficients { .. })));
        let char2 =
            StiefelPresentation::general_linear(3, CoeffRing::IntegersMod(2), FieldProfile::new(false, Some(2)))
                .unwrap();
        assert!(matches!(sq_on_generator(1, 2, &char2), Err(AlgebraError::InadmissibleCharacteristic { .. })));
        let char3 =
            StiefelPresentation::general_linear(4, CoeffRing::IntegersMod(3), FieldProfile::new(false, Some(3)))
                .unwrap();
        assert!(power_on_generator(1, 2, 3, &char3).is_err());
        assert!(OperationSpec::power(1, 2).is_err());
        assert!(OperationSpec::power(1, 9).is_err());
        assert!(matches!(sq_on_generator(1, 7, &gl(3, 2)), Err(AlgebraError::InvalidGenerator(7, _))));
    }

    #[test]
    fn minus_one_multiples_pass_through() {
        let g3 = gl(3, 2);
        let l = crate::coeff::MCoefficient::minus_one_power(g3.base(), 1);
        let x = g3.generator(2).unwrap().scale(&l).unwrap();
        let y = apply_operation(&OperationSpec::sq(2), &x).unwrap();
        assert_eq!(y, g3.generator(3).unwrap().scale(&l).unwrap());
        let pure = Element::scalar(g3, l).unwrap();
        assert!(apply_operation(&OperationSpec::sq(2), &pure).unwrap().is_zero());
    }
}
