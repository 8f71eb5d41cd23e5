//! Isomorphism, involvement and automorphism search by generator-image
//! backtracking.

use alloc::vec;
use alloc::vec::Vec;

use crate::bits::ElementSet;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::morphism::GroupMorphism;

/// A section `B/A` with `A` normal in `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub upper: Subgroup,
    pub lower: Subgroup,
}

/// Cheap invariants compared before any backtracking.
fn invariants_match(g: &FiniteGroup, x: &Subgroup, h: &FiniteGroup, y: &Subgroup) -> bool {
    x.order() == y.order()
        && g.order_histogram(x) == h.order_histogram(y)
        && g.center(x).order() == h.center(y).order()
        && g.derived(x).order() == h.derived(y).order()
}

struct Search<'a> {
    src: &'a FiniteGroup,
    dst: &'a FiniteGroup,
    gens: Vec<u32>,
    candidates: Vec<Vec<u32>>,
    target: &'a Subgroup,
    domain: &'a Subgroup,
    find_all: bool,
    found: Vec<GroupMorphism>,
}

impl Search<'_> {
    /// Extends the assignment `gens[i] -> images[i]` over the subgroup the
    /// assigned generators span, failing on any inconsistency or collision.
    fn extend(&self, images: &[u32]) -> Option<Vec<u32>> {
        let n = self.src.order();
        let mut map = vec![u32::MAX; n];
        let mut used = ElementSet::empty(self.dst.order());
        map[0] = 0;
        used.insert(0);
        let mut queue = vec![0u32];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let fx = map[x as usize];
            for (i, &img) in images.iter().enumerate() {
                let x2 = self.src.mul(x, self.gens[i]);
                let y2 = self.dst.mul(fx, img);
                let cur = map[x2 as usize];
                if cur == u32::MAX {
                    if !used.insert(y2) {
                        return None;
                    }
                    map[x2 as usize] = y2;
                    queue.push(x2);
                } else if cur != y2 {
                    return None;
                }
            }
        }
        Some(map)
    }

    fn run(&mut self, images: &mut Vec<u32>) {
        if !self.find_all && !self.found.is_empty() {
            return;
        }
        let depth = images.len();
        if depth == self.gens.len() {
            let map = self.extend(images).expect("checked at previous depth");
            let imgs: Vec<u32> = self.domain.iter().map(|x| map[x as usize]).collect();
            self.found.push(GroupMorphism::from_images(
                self.domain.clone(),
                self.target.clone(),
                imgs,
            ));
            return;
        }
        for k in 0..self.candidates[depth].len() {
            let c = self.candidates[depth][k];
            images.push(c);
            if self.extend(images).is_some() {
                self.run(images);
            }
            images.pop();
            if !self.find_all && !self.found.is_empty() {
                return;
            }
        }
    }
}

/// Isomorphisms `x -> y` between subgroups of (possibly different) groups.
fn search_isomorphisms(
    g: &FiniteGroup,
    x: &Subgroup,
    h: &FiniteGroup,
    y: &Subgroup,
    find_all: bool,
) -> Vec<GroupMorphism> {
    if x.order() != y.order() {
        return Vec::new();
    }
    let gens = g.generating_set(x);
    let candidates = gens
        .iter()
        .map(|&s| {
            y.iter()
                .filter(|&t| h.elem_order(t) == g.elem_order(s))
                .collect()
        })
        .collect();
    let mut search = Search {
        src: g,
        dst: h,
        gens,
        candidates,
        target: y,
        domain: x,
        find_all,
        found: Vec::new(),
    };
    search.run(&mut Vec::new());
    // generated subgroups of equal order: a consistent injective map onto y
    search.found
}

fn check_cap(order: usize, cap: usize) -> Result<()> {
    if order > cap {
        Err(Error::OrderCapExceeded { order, cap })
    } else {
        Ok(())
    }
}

/// Returns an isomorphism `G -> H` when one exists.
pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<GroupMorphism>> {
    check_cap(g.order(), g.limits().order_cap)?;
    check_cap(h.order(), h.limits().order_cap)?;
    Ok(subgroups_isomorphic(g, &g.whole(), h, &h.whole()))
}

/// Isomorphism between two subgroups, each inside its own parent group.
pub fn subgroups_isomorphic(
    g: &FiniteGroup,
    x: &Subgroup,
    h: &FiniteGroup,
    y: &Subgroup,
) -> Option<GroupMorphism> {
    if !invariants_match(g, x, h, y) {
        return None;
    }
    search_isomorphisms(g, x, h, y, false).into_iter().next()
}

/// All automorphisms of the group.
pub fn automorphisms(s: &FiniteGroup) -> Result<Vec<GroupMorphism>> {
    automorphisms_of(s, &s.whole())
}

/// All automorphisms of a subgroup, as maps inside the parent's indexing.
pub fn automorphisms_of(g: &FiniteGroup, s: &Subgroup) -> Result<Vec<GroupMorphism>> {
    check_cap(s.order(), g.limits().aut_cap)?;
    Ok(search_isomorphisms(g, s, g, s, true))
}

/// Searches for a section `B/A` of `G` isomorphic to `H`.
pub fn is_involved(h: &FiniteGroup, g: &FiniteGroup) -> Result<Option<Section>> {
    let lattice = g.subgroup_lattice()?;
    let n = h.order();
    for b in lattice.iter().filter(|b| b.order() % n == 0) {
        let k = b.order() / n;
        for a in lattice
            .iter()
            .filter(|a| a.order() == k && a.is_subgroup_of(b))
        {
            if !g.is_normal_in(a, b) {
                continue;
            }
            if section_isomorphic(g, b, a, h) {
                return Ok(Some(Section {
                    upper: b.clone(),
                    lower: a.clone(),
                }));
            }
        }
    }
    Ok(None)
}

/// Whether `B/A` is isomorphic to `H`.
pub fn section_isomorphic(g: &FiniteGroup, b: &Subgroup, a: &Subgroup, h: &FiniteGroup) -> bool {
    let (bg, emb) = g.subgroup_as_group(b, "B");
    let a_in_b = bg.subgroup_unchecked(ElementSet::from_indices(
        bg.order(),
        a.iter()
            .map(|x| emb.binary_search(&x).expect("A <= B") as u32),
    ));
    let q = bg.quotient(&a_in_b).expect("A normal in B");
    subgroups_isomorphic(&q.group, &q.group.whole(), h, &h.whole()).is_some()
}

/// The section `B/A` as a standalone group.
pub fn section_group(g: &FiniteGroup, section: &Section) -> FiniteGroup {
    let (bg, emb) = g.subgroup_as_group(&section.upper, "B");
    let a_in_b = bg.subgroup_unchecked(ElementSet::from_indices(
        bg.order(),
        section
            .lower
            .iter()
            .map(|x| emb.binary_search(&x).expect("A <= B") as u32),
    ));
    bg.quotient(&a_in_b).expect("A normal in B").group
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testgroups::*;

    #[test]
    fn cyclic_and_klein_automorphisms() {
        let c4 = pg("g", 4, &[&[&[1, 2, 3, 4]]]);
        assert_eq!(automorphisms(&c4).unwrap().len(), 2);
        let v4 = pg("g", 4, &[&[&[1, 2], &[3, 4]], &[&[1, 3], &[2, 4]]]);
        assert_eq!(automorphisms(&v4).unwrap().len(), 6);
    }

    #[test]
    fn self_isomorphism_and_mismatch() {
        let s3 = s3();
        let c6 = pg("g", 5, &[&[&[1, 2, 3], &[4, 5]]]);
        let w = is_isomorphic(&s3, &s3).unwrap().unwrap();
        assert!(w.is_injective_hom(&s3));
        assert!(is_isomorphic(&s3, &c6).unwrap().is_none());
    }

    #[test]
    fn sigma3_in_sigma4_is_a_point_stabilizer() {
        let s4 = s4();
        let s3 = s3();
        let sec = is_involved(&s3, &s4).unwrap().unwrap();
        assert_eq!(sec.upper.order(), 6);
        assert!(sec.lower.is_trivial());
        let rep = s4.perm_rep().unwrap();
        let fixed = (0..4u32).filter(|&pt| {
            sec.upper
                .iter()
                .all(|x| rep.elements[x as usize].apply(pt) == pt)
        });
        assert_eq!(fixed.count(), 1);
    }

    #[test]
    fn quaternion_automorphisms_and_dihedral_mismatch() {
        let q8 = q8();
        assert_eq!(q8.order(), 8);
        assert_eq!(automorphisms(&q8).unwrap().len(), 24);
        assert!(is_isomorphic(&d8(), &q8).unwrap().is_none());
        let s = sl23().sylow(2).unwrap();
        let (sg, _) = sl23().subgroup_as_group(&s, "P");
        assert!(is_isomorphic(&sg, &q8).unwrap().is_some());
    }
}
