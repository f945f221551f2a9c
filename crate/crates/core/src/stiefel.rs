//! The rings `H(W(n,m); R) = M_R[rho_{n-m+1}, ..., rho_n] / I`.
//!
//! Every generator `rho_i` has bidegree `(2i-1, i)`, so all generators are
//! odd and anticommute. The ideal `I` is generated by
//! `rho_i^2 = {-1} rho_{2i-1}` when `2i-1 <= n` and `rho_i^2 = 0` otherwise.
//! A basis over the base ring is given by the squarefree monomials, stored
//! as strictly increasing index lists.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::class::{Class, KeyProduct, Presentation};
use crate::coeff::{Bidegree, CoeffRing, FieldProfile, MCoefficient, MotivicBase};
use crate::error::{AlgebraError, Result};

/// Presentation data for `W(n, m)`; `W(n, n)` is `GL(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StiefelPresentation {
    n: u32,
    m: u32,
    coeff: CoeffRing,
    profile: FieldProfile,
}

/// A relation `rho_i^2 = {-1} rho_target` (or `= 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareRelation {
    pub generator: u32,
    pub target: Option<u32>,
}

impl StiefelPresentation {
    pub fn new(n: u32, m: u32, coeff: CoeffRing, profile: FieldProfile) -> Result<Self> {
        if n < 1 {
            return Err(AlgebraError::InvalidPresentation("n must be at least 1".into()));
        }
        if m > n {
            return Err(AlgebraError::InvalidPresentation(format!("m > n (m = {m}, n = {n})")));
        }
        let pres = StiefelPresentation { n, m, coeff, profile };
        for rel in pres.relations() {
            if let Some(t) = rel.target {
                assert!(pres.has_generator(t), "rewrite target rho_{t} outside the generator range");
            }
        }
        Ok(pres)
    }

    /// `GL(n) = W(n, n)`.
    pub fn general_linear(n: u32, coeff: CoeffRing, profile: FieldProfile) -> Result<Self> {
        Self::new(n, n, coeff, profile)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn coeff(&self) -> CoeffRing {
        self.coeff
    }

    pub fn profile(&self) -> FieldProfile {
        self.profile
    }

    /// Smallest generator index, `n - m + 1`.
    pub fn lowest(&self) -> u32 {
        self.n - self.m + 1
    }

    pub fn generators(&self) -> RangeInclusive<u32> {
        self.lowest()..=self.n
    }

    pub fn has_generator(&self, i: u32) -> bool {
        self.m > 0 && self.generators().contains(&i)
    }

    pub fn generator_bidegree(i: u32) -> Bidegree {
        Bidegree::new(2 * i as i64 - 1, i as i64)
    }

    /// Target of the square of `rho_i`: `Some(2i-1)` if it survives.
    pub fn square_target(&self, i: u32) -> Option<u32> {
        let t = 2 * i - 1;
        (t <= self.n).then_some(t)
    }

    pub fn relations(&self) -> Vec<SquareRelation> {
        if self.m == 0 {
            return Vec::new();
        }
        self.generators().map(|generator| SquareRelation { generator, target: self.square_target(generator) }).collect()
    }

    /// `rho_i` as a class.
    pub fn generator(&self, i: u32) -> Result<Element> {
        if !self.has_generator(i) {
            return Err(AlgebraError::InvalidGenerator(i, self.describe()));
        }
        Ok(Class::monomial(*self, Monomial(vec![i])))
    }

    /// The class of an arbitrary word `rho_{w_1} ... rho_{w_r}`, rewritten to normal form.
    pub fn word(&self, word: &[u32]) -> Result<Element> {
        if let Some(&bad) = word.iter().find(|&&i| !self.has_generator(i)) {
            return Err(AlgebraError::InvalidGenerator(bad, self.describe()));
        }
        let mut out = Element::zero(*self);
        if let Some(prod) = self.normalize_word(word.to_vec()) {
            let c = MCoefficient::one(self.base()).shift(prod.negative, prod.minus_one_power);
            out = Element::from_terms(*self, [(prod.key, c)])?;
        }
        Ok(out)
    }

    /// Rewrites a word in the generators to `±{-1}^k w` with `w` squarefree.
    ///
    /// Sorting contributes the sign of the sorting permutation. The smallest
    /// repeated index is rewritten first; `{-1}` is moved to the front past
    /// the generators preceding it. Each rewrite removes one factor, so the
    /// loop terminates.
    pub fn normalize_word(&self, mut word: Vec<u32>) -> Option<KeyProduct<Monomial>> {
        let mut negative = false;
        let mut k = 0u32;
        loop {
            negative ^= sort_with_parity(&mut word);
            let Some(pos) = word.windows(2).position(|w| w[0] == w[1]) else { break };
            let i = word[pos];
            let target = self.square_target(i)?;
            negative ^= pos % 2 == 1;
            k += 1;
            word.splice(pos..pos + 2, [target]);
        }
        Some(KeyProduct { key: Monomial(word), negative, minus_one_power: k })
    }

    /// Bigraded Poincaré polynomial of the free basis: `prod_i (1 + T^{(2i-1, i)})`.
    pub fn poincare_polynomial(&self) -> PoincarePolynomial {
        let mut coeffs = BTreeMap::from([(Bidegree::ZERO, 1u64)]);
        if self.m > 0 {
            for i in self.generators() {
                let shift = Self::generator_bidegree(i);
                let mut next = coeffs.clone();
                for (&bd, &c) in &coeffs {
                    *next.entry(bd + shift).or_default() += c;
                }
                coeffs = next;
            }
        }
        PoincarePolynomial(coeffs)
    }

    /// Number of squarefree monomials, `2^m`.
    pub fn rank(&self) -> u64 {
        1u64 << self.m
    }

    /// Every basis monomial, in increasing order.
    pub fn monomials(&self) -> Vec<Monomial> {
        let gens: Vec<u32> = if self.m == 0 { Vec::new() } else { self.generators().collect() };
        let mut out: Vec<Monomial> = (0u64..1 << gens.len())
            .map(|mask| {
                Monomial(gens.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &g)| g).collect())
            })
            .collect();
        out.sort();
        out
    }
}

/// Sorts in place by adjacent swaps of strictly inverted pairs and reports the parity.
fn sort_with_parity(word: &mut [u32]) -> bool {
    let mut odd = false;
    for i in 1..word.len() {
        let mut j = i;
        while j > 0 && word[j - 1] > word[j] {
            word.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    odd
}

impl Presentation for StiefelPresentation {
    type Key = Monomial;

    fn base(&self) -> MotivicBase {
        MotivicBase::new(self.coeff, self.profile)
    }

    fn unit_key(&self) -> Monomial {
        Monomial::unit()
    }

    fn is_valid_key(&self, key: &Monomial) -> bool {
        key.0.iter().all(|&i| self.has_generator(i)) && key.0.windows(2).all(|w| w[0] < w[1])
    }

    fn key_bidegree(&self, key: &Monomial) -> Bidegree {
        key.bidegree()
    }

    fn multiply_keys(&self, a: &Monomial, b: &Monomial) -> Option<KeyProduct<Monomial>> {
        let mut word = Vec::with_capacity(a.0.len() + b.0.len());
        word.extend_from_slice(&a.0);
        word.extend_from_slice(&b.0);
        self.normalize_word(word)
    }

    fn keys_of_bidegree(&self, bd: Bidegree) -> Vec<Monomial> {
        // |w| = (2 sum - len, sum), so len = 2q - p and sum = q.
        let len = 2 * bd.q - bd.p;
        if self.m == 0 || bd.q < 0 || len < 0 || len > self.m as i64 {
            return if bd == Bidegree::ZERO { vec![Monomial::unit()] } else { Vec::new() };
        }
        let mut out = Vec::new();
        let mut current = Vec::new();
        subsets_with_sum(self.lowest(), self.n, len as u32, bd.q as u64, &mut current, &mut out);
        out.sort();
        out
    }

    fn describe(&self) -> String {
        format!("W({},{}) over {}", self.n, self.m, self.coeff)
    }
}

fn subsets_with_sum(lo: u32, hi: u32, len: u32, sum: u64, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if len == 0 {
        if sum == 0 {
            out.push(Monomial(current.clone()));
        }
        return;
    }
    if lo > hi || (hi - lo + 1) < len {
        return;
    }
    // Smallest and largest achievable sums of `len` distinct indices in [lo, hi].
    let l = len as u64;
    let min = l * lo as u64 + l * (l - 1) / 2;
    let max = l * hi as u64 - l * (l - 1) / 2;
    if sum < min || sum > max {
        return;
    }
    for i in lo..=hi {
        if i as u64 > sum {
            break;
        }
        current.push(i);
        subsets_with_sum(i + 1, hi, len - 1, sum - i as u64, current, out);
        current.pop();
    }
}

/// A squarefree monomial `rho_{i_1} ... rho_{i_r}` with `i_1 < ... < i_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    /// Fails unless the indices are strictly increasing and positive.
    pub fn new(indices: Vec<u32>) -> Result<Self> {
        if indices.contains(&0) || indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(AlgebraError::InvalidMonomial(format!(
                "{indices:?} is not a strictly increasing list of positive indices"
            )));
        }
        Ok(Monomial(indices))
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// Sum of `(2i-1, i)` over the indices.
    pub fn bidegree(&self) -> Bidegree {
        self.0.iter().fold(Bidegree::ZERO, |acc, &i| acc + StiefelPresentation::generator_bidegree(i))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (t, i) in self.0.iter().enumerate() {
            if t > 0 {
                f.write_str("·")?;
            }
            write!(f, "r{i}")?;
        }
        Ok(())
    }
}

/// A class in `H(W(n,m); R)`.
pub type Element = Class<StiefelPresentation>;

pub fn monomial_bidegree(mono: &Monomial) -> Bidegree {
    mono.bidegree()
}

/// Bigraded Poincaré polynomial: bidegree to number of basis monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincarePolynomial(pub BTreeMap<Bidegree, u64>);

impl PoincarePolynomial {
    pub fn coefficient(&self, bd: Bidegree) -> u64 {
        self.0.get(&bd).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, (bd, c)) in self.0.iter().enumerate() {
            if t > 0 {
                f.write_str(" + ")?;
            }
            match (*bd == Bidegree::ZERO, *c) {
                (true, c) => write!(f, "{c}")?,
                (false, 1) => write!(f, "T^{bd}")?,
                (false, c) => write!(f, "{c} T^{bd}")?,
            }
        }
        Ok(())
    }
}

fn random_coefficient(rng: &mut ChaCha8Rng, base: MotivicBase, k: u32) -> MCoefficient {
    let c = if k == 0 { rng.random_range(-4..=4) } else { rng.random_range(0..=1) };
    MCoefficient::from_terms(base, [(k, c)])
}

/// Deterministic pseudo-random class; homogeneous of bidegree `bd` when given.
pub fn random_element(pres: &StiefelPresentation, bd: Option<Bidegree>, seed: u64) -> Element {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = pres.base();
    let mut terms = Vec::new();
    match bd {
        Some(bd) => {
            for line in pres.basis_in_bidegree(bd) {
                terms.push((line.key, random_coefficient(&mut rng, base, line.minus_one_power)));
            }
        }
        None => {
            let gens: Vec<u32> = if pres.m() == 0 { Vec::new() } else { pres.generators().collect() };
            let count = rng.random_range(0..=4);
            for _ in 0..count {
                let mono = Monomial(gens.iter().copied().filter(|_| rng.random_bool(0.5)).collect());
                let mut c = random_coefficient(&mut rng, base, 0);
                if rng.random_bool(0.3) {
                    let k = rng.random_range(1..=2);
                    c = c.add(&random_coefficient(&mut rng, base, k)).expect("same base");
                }
                terms.push((mono, c));
            }
        }
    }
    Element::from_terms(*pres, terms).expect("random terms are valid")
}

/// A homogeneous random class in a random bidegree that carries at least one basis line.
pub fn random_homogeneous(pres: &StiefelPresentation, seed: u64) -> Element {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let monos = pres.monomials();
    let mono = &monos[rng.random_range(0..monos.len())];
    let k = if pres.base().minus_one_survives() { rng.random_range(0..=1) } else { 0 };
    let bd = mono.bidegree() + Bidegree::minus_one_power(k);
    random_element(pres, Some(bd), rng.random())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gl(n: u32, coeff: CoeffRing) -> StiefelPresentation {
        StiefelPresentation::general_linear(n, coeff, FieldProfile::default()).unwrap()
    }

    fn l(pres: &StiefelPresentation, k: u32) -> MCoefficient {
        MCoefficient::minus_one_power(pres.base(), k)
    }

    #[test]
    fn presentation_examples() {
        let p = StiefelPresentation::new(3, 1, CoeffRing::Integers, FieldProfile::default()).unwrap();
        assert_eq!(p.relations(), vec![SquareRelation { generator: 3, target: None }]);

        let g3 = gl(3, CoeffRing::Integers);
        assert_eq!(
            g3.relations(),
            vec![
                SquareRelation { generator: 1, target: Some(1) },
                SquareRelation { generator: 2, target: Some(3) },
                SquareRelation { generator: 3, target: None },
            ]
        );

        let trivial = StiefelPresentation::new(4, 0, CoeffRing::Integers, FieldProfile::default()).unwrap();
        assert!(trivial.relations().is_empty());
        assert_eq!(trivial.monomials(), vec![Monomial::unit()]);
    }

    #[test]
    fn presentation_rejects_bad_bounds() {
        let prof = FieldProfile::default();
        assert!(StiefelPresentation::new(2, 5, CoeffRing::Integers, prof).is_err());
        assert!(StiefelPresentation::new(0, 0, CoeffRing::Integers, prof).is_err());
    }

    #[test]
    fn monomial_bidegrees() {
        assert_eq!(Monomial::new(vec![3]).unwrap().bidegree(), Bidegree::new(5, 3));
        assert_eq!(Monomial::unit().bidegree(), Bidegree::ZERO);
        assert_eq!(Monomial::new(vec![2, 3]).unwrap().bidegree(), Bidegree::new(8, 5));
        assert!(Monomial::new(vec![3, 2]).is_err());
    }

    #[test]
    fn product_examples() {
        let g3 = gl(3, CoeffRing::Integers);
        let r2 = g3.generator(2).unwrap();
        let r3 = g3.generator(3).unwrap();
        assert_eq!(r2.mul(&r2).unwrap(), r3.scale(&l(&g3, 1)).unwrap());
        assert!(r3.mul(&r3).unwrap().is_zero());

        let g5 = gl(5, CoeffRing::Integers);
        let r23 = g5.word(&[2, 3]).unwrap();
        let lhs = r23.mul(&g5.generator(2).unwrap()).unwrap();
        assert_eq!(lhs, g5.generator(5).unwrap().scale(&l(&g5, 2)).unwrap());
    }

    #[test]
    fn generators_anticommute() {
        let g3 = gl(3, CoeffRing::Integers);
        let r1 = g3.generator(1).unwrap();
        let r2 = g3.generator(2).unwrap();
        assert_eq!(r2.mul(&r1).unwrap(), r1.mul(&r2).unwrap().neg());
    }

    #[test]
    fn square_flag_kills_squares() {
        let p = StiefelPresentation::general_linear(3, CoeffRing::Integers, FieldProfile::new(true, None)).unwrap();
        let r1 = p.generator(1).unwrap();
        assert!(r1.mul(&r1).unwrap().is_zero());
    }

    #[test]
    fn basis_examples() {
        let g2 = gl(2, CoeffRing::Integers);
        let lines = g2.basis_in_bidegree(Bidegree::new(3, 2));
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].key, Monomial::new(vec![2]).unwrap());
        assert_eq!(lines[0].minus_one_power, 0);

        let lines: Vec<_> = g2
            .basis_in_bidegree(Bidegree::new(4, 3))
            .into_iter()
            .map(|l| (l.key.indices().to_vec(), l.minus_one_power))
            .collect();
        assert_eq!(lines, vec![(vec![1, 2], 0), (vec![2], 1)]);

        assert!(g2.basis_in_bidegree(Bidegree::new(5, -1)).is_empty());
    }

    #[test]
    fn poincare_examples() {
        let w41 = StiefelPresentation::new(4, 1, CoeffRing::Integers, FieldProfile::default()).unwrap();
        assert_eq!(w41.poincare_polynomial().to_string(), "1 + T^(7,4)");
        assert_eq!(gl(2, CoeffRing::Integers).poincare_polynomial().to_string(), "1 + T^(1,1) + T^(3,2) + T^(4,3)");
        let w40 = StiefelPresentation::new(4, 0, CoeffRing::Integers, FieldProfile::default()).unwrap();
        assert_eq!(w40.poincare_polynomial().to_string(), "1");
    }

    #[test]
    fn random_elements_are_deterministic() {
        let g3 = gl(3, CoeffRing::Integers);
        assert_eq!(random_element(&g3, None, 0), random_element(&g3, None, 0));
        let bd = Bidegree::new(3, 2);
        let x = random_element(&g3, Some(bd), 1);
        let support: Vec<_> = g3.basis_in_bidegree(bd).into_iter().map(|l| l.key).collect();
        assert!(x.terms().all(|(w, _)| support.contains(w)));
        assert!(x.bidegrees().iter().all(|&b| b == bd));

        let w40 = StiefelPresentation::new(4, 0, CoeffRing::Integers, FieldProfile::default()).unwrap();
        for seed in 0..20 {
            assert!(random_element(&w40, None, seed).terms().all(|(w, _)| w.is_unit()));
        }
    }
}
