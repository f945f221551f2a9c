//! The comparison target `H(G_m x P^{n-1}) = M[sigma, eta] / (sigma^2 - {-1} sigma, eta^n)`.
//!
//! `|sigma| = (1,1)` and `|eta| = (2,1)`. The reduced cohomology of the Tate
//! suspension of `P^{n-1}_+` is the ideal spanned by the `sigma`-multiples.

use std::fmt;

use crate::class::{Class, KeyProduct, Presentation};
use crate::coeff::{binom_mod, Bidegree, CoeffRing, FieldProfile, MotivicBase};
use crate::error::{AlgebraError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PGmPresentation {
    n: u32,
    coeff: CoeffRing,
    profile: FieldProfile,
}

impl PGmPresentation {
    /// The ring for `G_m x P^{n-1}`; `n >= 1`.
    pub fn new(n: u32, coeff: CoeffRing, profile: FieldProfile) -> Result<Self> {
        if n < 1 {
            return Err(AlgebraError::InvalidPresentation("n must be at least 1".into()));
        }
        Ok(PGmPresentation { n, coeff, profile })
    }

    /// `eta^n = 0`.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coeff(&self) -> CoeffRing {
        self.coeff
    }

    pub fn profile(&self) -> FieldProfile {
        self.profile
    }

    pub fn sigma(&self) -> PGmElement {
        Class::monomial(*self, PGmMonomial { sigma: true, eta: 0 })
    }

    /// `eta^e`, zero when `e >= n`.
    pub fn eta_power(&self, e: u32) -> PGmElement {
        self.term(false, e)
    }

    /// `sigma^s eta^e`, zero when `e >= n`.
    pub fn term(&self, sigma: bool, eta: u32) -> PGmElement {
        if eta >= self.n {
            Class::zero(*self)
        } else {
            Class::monomial(*self, PGmMonomial { sigma, eta })
        }
    }
}

/// `sigma^s eta^e` with `s` in `{0, 1}` and `e < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PGmMonomial {
    pub sigma: bool,
    pub eta: u32,
}

impl PGmMonomial {
    pub fn bidegree(&self) -> Bidegree {
        let s = self.sigma as i64;
        let e = self.eta as i64;
        Bidegree::new(s + 2 * e, s + e)
    }
}

impl fmt::Display for PGmMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.sigma, self.eta) {
            (false, 0) => f.write_str("1"),
            (true, 0) => f.write_str("s"),
            (false, 1) => f.write_str("e"),
            (true, 1) => f.write_str("s·e"),
            (false, e) => write!(f, "e^{e}"),
            (true, e) => write!(f, "s·e^{e}"),
        }
    }
}

impl Presentation for PGmPresentation {
    type Key = PGmMonomial;

    fn base(&self) -> MotivicBase {
        MotivicBase::new(self.coeff, self.profile)
    }

    fn unit_key(&self) -> PGmMonomial {
        PGmMonomial { sigma: false, eta: 0 }
    }

    fn is_valid_key(&self, key: &PGmMonomial) -> bool {
        key.eta < self.n
    }

    fn key_bidegree(&self, key: &PGmMonomial) -> Bidegree {
        key.bidegree()
    }

    fn multiply_keys(&self, a: &PGmMonomial, b: &PGmMonomial) -> Option<KeyProduct<PGmMonomial>> {
        let eta = a.eta + b.eta;
        if eta >= self.n {
            return None;
        }
        // eta is even, so no signs; sigma^2 = {-1} sigma.
        let both = a.sigma && b.sigma;
        Some(KeyProduct {
            key: PGmMonomial { sigma: a.sigma || b.sigma, eta },
            negative: false,
            minus_one_power: both as u32,
        })
    }

    fn keys_of_bidegree(&self, bd: Bidegree) -> Vec<PGmMonomial> {
        // p = s + 2e, q = s + e.
        let e = bd.p - bd.q;
        let s = 2 * bd.q - bd.p;
        if !(0..=1).contains(&s) || e < 0 || e >= self.n as i64 {
            return Vec::new();
        }
        vec![PGmMonomial { sigma: s == 1, eta: e as u32 }]
    }

    fn describe(&self) -> String {
        format!("G_m x P^{} over {}", self.n - 1, self.coeff)
    }
}

/// A class in `H(G_m x P^{n-1}; R)`.
pub type PGmElement = Class<PGmPresentation>;

/// True when every term is a `sigma`-multiple, i.e. the class lies in the reduced part.
pub fn is_reduced(x: &PGmElement) -> bool {
    x.terms().all(|(key, _)| key.sigma)
}

pub(crate) fn require_mod(coeff: CoeffRing, p: u64) -> Result<()> {
    if coeff != CoeffRing::IntegersMod(p) {
        return Err(AlgebraError::WrongCoefficients { expected: p, found: coeff.to_string() });
    }
    Ok(())
}

pub(crate) fn require_characteristic(profile: FieldProfile, p: u64) -> Result<()> {
    if profile.characteristic == Some(p) {
        return Err(AlgebraError::InadmissibleCharacteristic { prime: p, characteristic: p });
    }
    Ok(())
}

/// `Sq^{2i}(eta^j) = C(j, i) eta^{j+i}`.
pub fn sq_projective(i: u32, j: u32, pres: &PGmPresentation) -> Result<PGmElement> {
    require_mod(pres.coeff, 2)?;
    require_characteristic(pres.profile, 2)?;
    let c = binom_mod(j as u64, i as u64, 2)?;
    pres.eta_power(j + i).scale_int(c as i64)
}

/// Independent cross-check for [`sq_projective`]: the total square of `eta^j`,
/// computed by expanding `(eta + eta^2)^j` with polynomial arithmetic over `F_2`.
pub fn total_square_oracle(j: u32, pres: &PGmPresentation) -> Result<PGmElement> {
    require_mod(pres.coeff, 2)?;
    // Dense F_2 polynomial in eta, truncated at eta^n.
    let n = pres.n as usize;
    let mut poly = vec![0u8; n];
    poly[0] = 1;
    for _ in 0..j {
        let mut next = vec![0u8; n];
        for (e, &bit) in poly.iter().enumerate() {
            if bit == 0 {
                continue;
            }
            for shift in [1, 2] {
                if e + shift < n {
                    next[e + shift] ^= 1;
                }
            }
        }
        poly = next;
    }
    let mut out = PGmElement::zero(*pres);
    for (e, &bit) in poly.iter().enumerate() {
        if bit == 1 {
            out = out.add(&pres.eta_power(e as u32))?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::MCoefficient;

    fn pgm(n: u32, coeff: CoeffRing) -> PGmPresentation {
        PGmPresentation::new(n, coeff, FieldProfile::default()).unwrap()
    }

    #[test]
    fn sigma_squared() {
        let p = pgm(3, CoeffRing::Integers);
        let s = p.sigma();
        let l = MCoefficient::minus_one_power(p.base(), 1);
        assert_eq!(s.mul(&s).unwrap(), s.scale(&l).unwrap());
    }

    #[test]
    fn tate_product_rule() {
        let p = pgm(6, CoeffRing::Integers);
        let l = MCoefficient::minus_one_power(p.base(), 1);
        for a in 0..6 {
            for b in 0..6 {
                let lhs = p.term(true, a).mul(&p.term(true, b)).unwrap();
                let rhs = p.term(true, a + b).scale(&l).unwrap();
                assert_eq!(lhs, rhs, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn eta_truncates() {
        let p = pgm(3, CoeffRing::Integers);
        assert!(p.eta_power(1).mul(&p.eta_power(2)).unwrap().is_zero());
        assert_eq!(p.eta_power(1).mul(&p.eta_power(1)).unwrap(), p.eta_power(2));
    }

    #[test]
    fn projective_squares() {
        let p = pgm(3, CoeffRing::IntegersMod(2));
        assert_eq!(sq_projective(1, 1, &p).unwrap(), p.eta_power(2));
        let big = pgm(10, CoeffRing::IntegersMod(2));
        assert!(sq_projective(1, 2, &big).unwrap().is_zero());
        for j in 0..10 {
            assert_eq!(sq_projective(0, j, &big).unwrap(), big.eta_power(j));
        }
    }

    #[test]
    fn projective_squares_check_context() {
        let p = pgm(3, CoeffRing::Integers);
        assert!(matches!(sq_projective(1, 1, &p), Err(AlgebraError::WrongCoefficients { .. })));
        let p = PGmPresentation::new(3, CoeffRing::IntegersMod(2), FieldProfile::new(false, Some(2))).unwrap();
        assert!(matches!(sq_projective(1, 1, &p), Err(AlgebraError::InadmissibleCharacteristic { .. })));
    }

    #[test]
    fn oracle_examples() {
        let p = pgm(10, CoeffRing::IntegersMod(2));
        let x = total_square_oracle(1, &p).unwrap();
        assert_eq!(x, p.eta_power(1).add(&p.eta_power(2)).unwrap());
        let x = total_square_oracle(2, &p).unwrap();
        assert_eq!(x, p.eta_power(2).add(&p.eta_power(4)).unwrap());
        assert_eq!(total_square_oracle(0, &p).unwrap(), PGmElement::one(p));
    }

    #[test]
    fn reduced_part_is_an_ideal() {
        let p = pgm(4, CoeffRing::Integers);
        let reduced = p.term(true, 1).add(&p.term(true, 2)).unwrap();
        for s in [false, true] {
            for e in 0..4 {
                assert!(is_reduced(&p.term(s, e).mul(&reduced).unwrap()));
            }
        }
    }
}
