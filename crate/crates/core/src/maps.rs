//! Ring homomorphisms out of the Stiefel rings.
//!
//! A map is stored by the images of the generators and extended additively
//! and multiplicatively on demand. Construction checks that the images are
//! homogeneous of the right bidegree and compatible with the relations
//! `rho_i^2 = {-1} rho_{2i-1}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::class::{Class, Presentation};
use crate::coeff::{Bidegree, MCoefficient, MotivicBase};
use crate::error::{AlgebraError, Result};
use crate::linalg::kernel_generators;
use crate::stiefel::{Element, StiefelPresentation};
use crate::target::PGmPresentation;

/// Where a map comes from geometrically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapLabel {
    /// Pullback along `W(n, m_big) -> W(n, m_small)`, forgetting columns.
    Projection,
    /// Pullback along `W(n-1, m-1) -> W(n, m)`.
    Immersion,
    /// Permuting the columns; the permutation is 0-based.
    Permutation(Vec<usize>),
    /// Multiplying the first column by `-1`.
    NegateFirstColumn,
    /// `f_n^*: H(GL(n)) -> H(G_m x P^{n-1})`.
    Comparison,
    Composite(Box<MapLabel>, Box<MapLabel>),
    Custom(String),
}

impl fmt::Display for MapLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapLabel::Projection => f.write_str("proj"),
            MapLabel::Immersion => f.write_str("imm"),
            MapLabel::Permutation(_) => f.write_str("perm"),
            MapLabel::NegateFirstColumn => f.write_str("neg"),
            MapLabel::Comparison => f.write_str("cmp"),
            MapLabel::Composite(a, b) => write!(f, "{b}∘{a}"),
            MapLabel::Custom(s) => f.write_str(s),
        }
    }
}

/// Where `apply` is defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValiditySpan {
    /// A ring map on the whole source.
    Total,
    /// Only the span of the unit and single generators; the images fail the relation check.
    GeneratorLevel,
}

/// The two geometric symmetries whose pullbacks are the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Symmetry {
    /// A permutation of the `m` columns, 0-based.
    Permutation(Vec<usize>),
    NegateFirstColumn,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMap<T: Presentation> {
    source: StiefelPresentation,
    target: T,
    images: BTreeMap<u32, Class<T>>,
    label: MapLabel,
    span: ValiditySpan,
}

impl<T: Presentation> RingMap<T> {
    /// Builds a ring map from generator images, rejecting images that break a relation.
    pub fn from_images(
        source: StiefelPresentation,
        target: T,
        images: BTreeMap<u32, Class<T>>,
        label: MapLabel,
    ) -> Result<Self> {
        let map = Self::unchecked(source, target, images, label)?;
        if let Some(problem) = map.relation_failure()? {
            return Err(AlgebraError::IncompatibleImages(problem));
        }
        Ok(map)
    }

    /// Like [`RingMap::from_images`], but a relation failure downgrades the map
    /// to [`ValiditySpan::GeneratorLevel`] instead of failing.
    pub fn from_images_or_generator_level(
        source: StiefelPresentation,
        target: T,
        images: BTreeMap<u32, Class<T>>,
        label: MapLabel,
    ) -> Result<Self> {
        let mut map = Self::unchecked(source, target, images, label)?;
        if map.relation_failure()?.is_some() {
            map.span = ValiditySpan::GeneratorLevel;
        }
        Ok(map)
    }

    fn unchecked(
        source: StiefelPresentation,
        target: T,
        images: BTreeMap<u32, Class<T>>,
        label: MapLabel,
    ) -> Result<Self> {
        if source.base() != target.base() {
            return Err(AlgebraError::ContextMismatch(format!(
                "{} and {} have different coefficients",
                source.describe(),
                target.describe()
            )));
        }
        let generators: Vec<u32> = if source.m() == 0 { Vec::new() } else { source.generators().collect() };
        if images.keys().copied().ne(generators.iter().copied()) {
            return Err(AlgebraError::IncompatibleImages(format!(
                "images given for {:?}, generators are {:?}",
                images.keys().collect::<Vec<_>>(),
                generators
            )));
        }
        for (&i, image) in &images {
            if image.presentation() != target {
                return Err(AlgebraError::ContextMismatch(format!("image of rho_{i} lives elsewhere")));
            }
            let expected = StiefelPresentation::generator_bidegree(i);
            if image.bidegrees().iter().any(|&b| b != expected) {
                return Err(AlgebraError::IncompatibleImages(format!(
                    "image of rho_{i} has bidegrees {:?}, expected {expected}",
                    image.bidegrees()
                )));
            }
        }
        Ok(RingMap { source, target, images, label, span: ValiditySpan::Total })
    }

    /// First generator whose image violates `f(rho_i)^2 = {-1} f(rho_{2i-1})`.
    fn relation_failure(&self) -> Result<Option<String>> {
        let base = self.source.base();
        for (&i, image) in &self.images {
            let lhs = image.mul(image)?;
            let rhs = match self.source.square_target(i) {
                Some(t) => self.images[&t].scale(&MCoefficient::minus_one_power(base, 1))?,
                None => Class::zero(self.target),
            };
            if lhs != rhs {
                return Ok(Some(format!("rho_{i}^2 is not respected")));
            }
        }
        Ok(None)
    }

    pub fn source(&self) -> StiefelPresentation {
        self.source
    }

    pub fn target(&self) -> T {
        self.target
    }

    pub fn label(&self) -> &MapLabel {
        &self.label
    }

    pub fn span(&self) -> ValiditySpan {
        self.span
    }

    pub fn image_of_generator(&self, i: u32) -> Result<&Class<T>> {
        self.images.get(&i).ok_or_else(|| AlgebraError::InvalidGenerator(i, self.source.describe()))
    }

    pub fn images(&self) -> impl Iterator<Item = (u32, &Class<T>)> {
        self.images.iter().map(|(&i, x)| (i, x))
    }

    /// Extends the generator images additively and multiplicatively.
    pub fn apply(&self, x: &Element) -> Result<Class<T>> {
        if x.presentation() != self.source {
            return Err(AlgebraError::ContextMismatch(format!(
                "map out of {} applied to a class of {}",
                self.source.describe(),
                x.presentation().describe()
            )));
        }
        let mut out = Class::zero(self.target);
        for (mono, c) in x.terms() {
            if self.span == ValiditySpan::GeneratorLevel && mono.degree() > 1 {
                return Err(AlgebraError::OutsideValiditySpan(format!("{mono} is a product of generators")));
            }
            let mut image = Class::one(self.target);
            for i in mono.indices() {
                image = image.mul(&self.images[i])?;
            }
            out = out.add(&image.scale(c)?)?;
        }
        Ok(out)
    }

    /// Basis of the kernel in bidegree `bd`, by exact linear algebra on the graded piece.
    ///
    /// Each returned class is `sum_j v_j {-1}^{k_j} w_j` for a kernel vector `v`.
    pub fn kernel_basis(&self, bd: Bidegree) -> Result<Vec<Element>> {
        if self.span != ValiditySpan::Total {
            return Err(AlgebraError::OutsideValiditySpan(format!("{} is only defined on generators", self.label)));
        }
        let source_lines = self.source.basis_in_bidegree(bd);
        let target_lines = self.target.basis_in_bidegree(bd);
        let base = self.source.base();
        let mut columns = Vec::with_capacity(source_lines.len());
        for line in &source_lines {
            let x = Element::from_terms(
                self.source,
                [(line.key.clone(), MCoefficient::minus_one_power(base, line.minus_one_power))],
            )?;
            columns.push(self.apply(&x)?.coordinates(&target_lines));
        }
        let matrix: Vec<Vec<i64>> =
            (0..target_lines.len()).map(|r| columns.iter().map(|col| col[r]).collect()).collect();
        let src_orders: Vec<i64> = source_lines.iter().map(|l| l.group.order()).collect();
        let tgt_orders: Vec<i64> = target_lines.iter().map(|l| l.group.order()).collect();
        kernel_generators(&src_orders, &tgt_orders, &matrix)
            .into_iter()
            .map(|v| Element::from_coordinates(self.source, &source_lines, &v))
            .collect()
    }
}

impl RingMap<StiefelPresentation> {
    /// `g ∘ self`.
    pub fn then<U: Presentation>(&self, g: &RingMap<U>) -> Result<RingMap<U>> {
        if self.target != g.source {
            return Err(AlgebraError::ContextMismatch(format!(
                "cannot compose: {} vs {}",
                self.target.describe(),
                g.source.describe()
            )));
        }
        let images = self.images.iter().map(|(&i, x)| Ok((i, g.apply(x)?))).collect::<Result<BTreeMap<_, _>>>()?;
        let label = MapLabel::Composite(Box::new(self.label.clone()), Box::new(g.label.clone()));
        RingMap::from_images_or_generator_level(self.source, g.target, images, label)
    }

    /// Whether every generator is sent to itself.
    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.images.iter().all(|(&i, x)| self.source.generator(i).is_ok_and(|g| &g == x))
    }
}

fn stiefel(n: u32, m: u32, base: MotivicBase) -> Result<StiefelPresentation> {
    StiefelPresentation::new(n, m, base.coeff, base.profile)
}

fn generator_images(
    source: &StiefelPresentation,
    image: impl Fn(u32) -> Result<Element>,
) -> Result<BTreeMap<u32, Element>> {
    if source.m() == 0 {
        return Ok(BTreeMap::new());
    }
    source.generators().map(|i| Ok((i, image(i)?))).collect()
}

/// `H(W(n, m_small)) -> H(W(n, m_big))`, `rho_i -> rho_i`.
pub fn projection_pullback(
    n: u32,
    m_small: u32,
    m_big: u32,
    base: MotivicBase,
) -> Result<RingMap<StiefelPresentation>> {
    if m_small > m_big || m_big > n {
        return Err(AlgebraError::InvalidPresentation(format!(
            "projection needs m_small <= m_big <= n, got {m_small}, {m_big}, {n}"
        )));
    }
    let source = stiefel(n, m_small, base)?;
    let target = stiefel(n, m_big, base)?;
    let images = generator_images(&source, |i| target.generator(i))?;
    RingMap::from_images(source, target, images, MapLabel::Projection)
}

/// `H(W(n, m)) -> H(W(n-1, m-1))`, `rho_n -> 0` and `rho_j -> rho_j` otherwise.
pub fn immersion_pullback(n: u32, m: u32, base: MotivicBase) -> Result<RingMap<StiefelPresentation>> {
    if n < 2 || m < 1 || m > n {
        return Err(AlgebraError::InvalidPresentation(format!(
            "immersion needs n >= 2 and 1 <= m <= n, got n = {n}, m = {m}"
        )));
    }
    let source = stiefel(n, m, base)?;
    let target = stiefel(n - 1, m - 1, base)?;
    let images = generator_images(&source, |i| if i == n { Ok(Element::zero(target)) } else { target.generator(i) })?;
    RingMap::from_images(source, target, images, MapLabel::Immersion)
}

/// The pullback along a column symmetry of `W(n, m)`; it is the identity.
pub fn symmetry_pullback(n: u32, m: u32, kind: Symmetry, base: MotivicBase) -> Result<RingMap<StiefelPresentation>> {
    let pres = stiefel(n, m, base)?;
    let label = match kind {
        Symmetry::Permutation(perm) => {
            let mut seen = vec![false; m as usize];
            let valid = perm.len() == m as usize
                && perm.iter().all(|&v| v < m as usize && !std::mem::replace(&mut seen[v], true));
            if !valid {
                return Err(AlgebraError::InvalidPermutation(format!("{perm:?} is not a permutation of {m} letters")));
            }
            MapLabel::Permutation(perm)
        }
        Symmetry::NegateFirstColumn => {
            if m == 0 {
                return Err(AlgebraError::InvalidPermutation("W(n,0) has no first column".into()));
            }
            MapLabel::NegateFirstColumn
        }
    };
    let images = generator_images(&pres, |i| pres.generator(i))?;
    RingMap::from_images(pres, pres, images, label)
}

/// `f_n^*: H(GL(n)) -> H(G_m x P^{n-1})`, `rho_i -> sigma eta^{i-1}`.
///
/// The images satisfy every relation, so in practice the map is total; a
/// failed check would downgrade it to the generator span.
pub fn comparison_map(n: u32, base: MotivicBase) -> Result<RingMap<PGmPresentation>> {
    let source = StiefelPresentation::general_linear(n, base.coeff, base.profile)?;
    let target = PGmPresentation::new(n, base.coeff, base.profile)?;
    let images = source.generators().map(|i| (i, target.term(true, i - 1))).collect();
    RingMap::from_images_or_generator_level(source, target, images, MapLabel::Comparison)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{CoeffRing, FieldProfile};
    use crate::stiefel::random_element;

    fn z() -> MotivicBase {
        MotivicBase::new(CoeffRing::Integers, FieldProfile::default())
    }

    #[test]
    fn projection_examples() {
        let f = projection_pullback(4, 1, 3, z()).unwrap();
        assert_eq!(f.image_of_generator(4).unwrap(), &f.target().generator(4).unwrap());
        assert!(projection_pullback(3, 2, 2, z()).unwrap().is_identity());
        let f = projection_pullback(4, 2, 3, z()).unwrap();
        let x = f.source().word(&[3, 4]).unwrap();
        assert_eq!(f.apply(&x).unwrap(), f.target().word(&[3, 4]).unwrap());
        assert!(projection_pullback(4, 3, 2, z()).is_err());
    }

    #[test]
    fn immersion_examples() {
        let f = immersion_pullback(3, 3, z()).unwrap();
        assert!(f.image_of_generator(3).unwrap().is_zero());
        assert_eq!(f.image_of_generator(2).unwrap(), &f.target().generator(2).unwrap());
        assert_eq!(f.image_of_generator(1).unwrap(), &f.target().generator(1).unwrap());
        let src = f.source();
        assert!(f.apply(&src.word(&[2, 3]).unwrap()).unwrap().is_zero());
        // rho_2^2 = {-1} rho_3 maps to 0, and so does (image rho_2)^2 in GL(2).
        assert!(f.apply(&src.word(&[2, 2]).unwrap()).unwrap().is_zero());
        assert_eq!(f.apply(&src.word(&[1, 2]).unwrap()).unwrap(), f.target().word(&[1, 2]).unwrap());
        assert!(immersion_pullback(1, 1, z()).is_err());
    }

    #[test]
    fn symmetries_are_identities() {
        let f = symmetry_pullback(3, 3, Symmetry::Permutation(vec![2, 0, 1]), z()).unwrap();
        assert!(f.is_identity());
        let g = symmetry_pullback(4, 2, Symmetry::NegateFirstColumn, z()).unwrap();
        assert!(g.is_identity());
        let h = symmetry_pullback(3, 3, Symmetry::NegateFirstColumn, z()).unwrap();
        assert!(f.then(&h).unwrap().is_identity());
        assert!(symmetry_pullback(3, 3, Symmetry::Permutation(vec![0, 0, 1]), z()).is_err());
        assert!(symmetry_pullback(3, 3, Symmetry::Permutation(vec![0, 1]), z()).is_err());
    }

    #[test]
    fn composition_is_associative() {
        for n in 3..=6 {
            for m in 2..=n {
                let f = projection_pullback(n, m - 1, m, z()).unwrap();
                let g = immersion_pullback(n, m, z()).unwrap();
                let h = comparison_map(n - 1, z());
                let k = projection_pullback(n - 1, m - 1, n - 1, z()).unwrap();
                let left = f.then(&g).unwrap().then(&k).unwrap();
                let right = f.then(&g.then(&k).unwrap()).unwrap();
                assert!(left.images().eq(right.images()), "n = {n}, m = {m}");
                if m == n {
                    let h = h.unwrap();
                    let left = f.then(&g).unwrap().then(&h).unwrap();
                    let right = f.then(&g.then(&h).unwrap()).unwrap();
                    assert!(left.images().eq(right.images()));
                }
                for seed in 0..20 {
                    let x = random_element(&f.source(), None, seed);
                    assert_eq!(left.apply(&x).unwrap(), k.apply(&g.apply(&f.apply(&x).unwrap()).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn identity_fixes_random_elements() {
        let f = symmetry_pullback(4, 4, Symmetry::Permutation(vec![3, 2, 1, 0]), z()).unwrap();
        for seed in 0..50 {
            let x = random_element(&f.source(), None, seed);
            assert_eq!(f.apply(&x).unwrap(), x);
        }
    }

    #[test]
    fn comparison_examples() {
        let f = comparison_map(3, z()).unwrap();
        assert_eq!(f.span(), ValiditySpan::Total);
        let t = f.target();
        assert_eq!(f.image_of_generator(1).unwrap(), &t.sigma());
        assert_eq!(f.image_of_generator(2).unwrap(), &t.term(true, 1));
        assert_eq!(f.image_of_generator(3).unwrap(), &t.term(true, 2));
        assert!(f.apply(&f.source().word(&[2, 3]).unwrap()).unwrap().is_zero());

        let f1 = comparison_map(1, z()).unwrap();
        assert_eq!(f1.image_of_generator(1).unwrap(), &f1.target().sigma());
    }

    #[test]
    fn bad_images_are_rejected_or_downgraded() {
        let src = StiefelPresentation::general_linear(3, CoeffRing::Integers, FieldProfile::default()).unwrap();
        let tgt = PGmPresentation::new(5, CoeffRing::Integers, FieldProfile::default()).unwrap();
        // rho_3^2 = 0 in GL(3) but (sigma eta^2)^2 = {-1} sigma eta^4 != 0 when eta^4 survives.
        let images: BTreeMap<u32, _> = (1..=3).map(|i| (i, tgt.term(true, i - 1))).collect();
        assert!(matches!(
            RingMap::from_images(src, tgt, images.clone(), MapLabel::Custom("wide".into())),
            Err(AlgebraError::IncompatibleImages(_))
        ));
        let f = RingMap::from_images_or_generator_level(src, tgt, images, MapLabel::Custom("wide".into())).unwrap();
        assert_eq!(f.span(), ValiditySpan::GeneratorLevel);
        assert!(f.apply(&src.generator(3).unwrap()).is_ok());
        assert!(matches!(f.apply(&src.word(&[1, 2]).unwrap()), Err(AlgebraError::OutsideValiditySpan(_))));
        assert!(f.kernel_basis(Bidegree::new(1, 1)).is_err());

        let wrong_degree: BTreeMap<u32, _> = (1..=3).map(|i| (i, tgt.term(true, i))).collect();
        assert!(RingMap::from_images(src, tgt, wrong_degree, MapLabel::Custom("bad".into())).is_err());
    }

    #[test]
    fn kernel_examples() {
        let f = immersion_pullback(3, 3, z()).unwrap();
        let k = f.kernel_basis(Bidegree::new(5, 3)).unwrap();
        assert_eq!(k, vec![f.source().generator(3).unwrap()]);
        assert!(f.kernel_basis(Bidegree::new(1, 1)).unwrap().is_empty());
        let id = symmetry_pullback(3, 3, Symmetry::NegateFirstColumn, z()).unwrap();
        for p in 0..12 {
            for q in 0..8 {
                assert!(id.kernel_basis(Bidegree::new(p, q)).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn comparison_kernel_over_z() {
        // rho_1 rho_2 and {-1} rho_2 both map to {-1} sigma eta, a Z/2 class.
        let f = comparison_map(3, z()).unwrap();
        let src = f.source();
        let k = f.kernel_basis(Bidegree::new(4, 3)).unwrap();
        let l = MCoefficient::minus_one_power(src.base(), 1);
        let expected = src.word(&[1, 2]).unwrap().add(&src.generator(2).unwrap().scale(&l).unwrap()).unwrap();
        assert_eq!(k, vec![expected]);
        for x in &k {
            assert!(f.apply(x).unwrap().is_zero());
        }
    }
}
