//! Injective homomorphisms between subgroups of a common ambient group.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::bits::ElementSet;
use crate::group::{FiniteGroup, Subgroup};

/// An injective homomorphism `domain -> codomain`, stored as the image of
/// each domain member in ascending member order.
///
/// Equality and ordering ignore the codomain: two morphisms are the same
/// map when they agree elementwise on the same domain.
#[derive(Clone)]
pub struct GroupMorphism {
    domain: Subgroup,
    codomain: Subgroup,
    images: Vec<u32>,
}

impl GroupMorphism {
    /// Caller guarantees `images` is aligned with `domain` members.
    pub fn from_images(domain: Subgroup, codomain: Subgroup, images: Vec<u32>) -> Self {
        debug_assert_eq!(domain.order(), images.len());
        Self {
            domain,
            codomain,
            images,
        }
    }

    pub fn from_fn(domain: &Subgroup, codomain: &Subgroup, f: impl Fn(u32) -> u32) -> Self {
        let images = domain.iter().map(f).collect();
        Self::from_images(domain.clone(), codomain.clone(), images)
    }

    pub fn identity(domain: &Subgroup) -> Self {
        Self::from_fn(domain, domain, |x| x)
    }

    pub fn inclusion(domain: &Subgroup, codomain: &Subgroup) -> Self {
        Self::from_fn(domain, codomain, |x| x)
    }

    /// Conjugation `x -> g x g^-1` on `domain`.
    pub fn conjugation(g: &FiniteGroup, elem: u32, domain: &Subgroup, codomain: &Subgroup) -> Self {
        Self::from_fn(domain, codomain, |x| g.conj(elem, x))
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn codomain(&self) -> &Subgroup {
        &self.codomain
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        let r = self
            .domain
            .rank(x)
            .expect("element outside morphism domain");
        self.images[r]
    }

    pub fn try_apply(&self, x: u32) -> Option<u32> {
        self.domain.rank(x).map(|r| self.images[r])
    }

    /// Image of the whole domain.
    pub fn image(&self) -> Subgroup {
        self.image_of(&self.domain)
    }

    /// Image of a subgroup of the domain.
    pub fn image_of(&self, h: &Subgroup) -> Subgroup {
        let set = ElementSet::from_indices(h.parent_order(), h.iter().map(|x| self.apply(x)));
        subgroup_of_set(set)
    }

    pub fn with_codomain(mut self, codomain: &Subgroup) -> Self {
        self.codomain = codomain.clone();
        self
    }

    pub fn restrict(&self, h: &Subgroup) -> Self {
        debug_assert!(h.is_subgroup_of(&self.domain));
        Self::from_fn(h, &self.codomain, |x| self.apply(x))
    }

    /// `after . self`; `after` must be defined on the image of `self`.
    pub fn then(&self, after: &GroupMorphism) -> Self {
        let images = self.images.iter().map(|&y| after.apply(y)).collect();
        Self::from_images(self.domain.clone(), after.codomain.clone(), images)
    }

    /// Inverse of the induced isomorphism `domain -> image`.
    pub fn inverse(&self) -> Self {
        let image = self.image();
        let mut images = alloc::vec![0; image.order()];
        for (x, &y) in self.domain.iter().zip(&self.images) {
            images[image.rank(y).expect("image member")] = x;
        }
        Self::from_images(image, self.domain.clone(), images)
    }

    pub fn is_identity(&self) -> bool {
        self.domain.iter().zip(&self.images).all(|(x, &y)| x == y)
    }

    pub fn agrees_with(&self, other: &GroupMorphism, on: &Subgroup) -> bool {
        on.iter().all(|x| self.apply(x) == other.apply(x))
    }

    /// Checks the homomorphism and injectivity laws in the ambient group.
    pub fn is_injective_hom(&self, g: &FiniteGroup) -> bool {
        let members = self.domain.to_members();
        let mut seen = ElementSet::empty(g.order());
        for &y in &self.images {
            if !seen.insert(y) || !self.codomain.contains(y) {
                return false;
            }
        }
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                if self.apply(g.mul(a, b)) != g.mul(self.images[i], self.images[j]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Images of homomorphisms are subgroups; wrap without a closure check.
pub(crate) fn subgroup_of_set(set: ElementSet) -> Subgroup {
    crate::group::subgroup_unchecked(set)
}

impl PartialEq for GroupMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.images == other.images
    }
}

impl Eq for GroupMorphism {}

impl core::hash::Hash for GroupMorphism {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.domain.hash(state);
        self.images.hash(state);
    }
}

impl Ord for GroupMorphism {
    fn cmp(&self, other: &Self) -> Ordering {
        self.domain
            .cmp(&other.domain)
            .then_with(|| self.images.cmp(&other.images))
    }
}

impl PartialOrd for GroupMorphism {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GroupMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (x, y)) in self.domain.iter().zip(&self.images).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}->{y}")?;
        }
        f.write_str("}")
    }
}
