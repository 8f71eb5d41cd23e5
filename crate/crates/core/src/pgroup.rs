//! Thompson subgroup data for a finite p-group.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{is_p_power, FiniteGroup, Subgroup};
use crate::iso::automorphisms_of;
use crate::morphism::GroupMorphism;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThompsonData {
    pub s: Subgroup,
    pub max_abelian_order: usize,
    pub max_abelian_subgroups: Vec<Subgroup>,
    /// Join of the abelian subgroups of largest order.
    pub j: Subgroup,
    /// `Ω(Z(S))`.
    pub a: Subgroup,
    /// `Ω(Z(J(S)))`.
    pub b: Subgroup,
}

/// Computes `J(S)`, `A(S)` and `B(S)` for a p-subgroup `S` of `g`.
pub fn thompson_data(g: &FiniteGroup, s: &Subgroup, p: u32) -> Result<ThompsonData> {
    if !is_p_power(s.order(), p) {
        return Err(Error::NotAPGroup(p));
    }
    let lattice = g.lattice_within(s)?;
    let abelian: Vec<&Subgroup> = lattice.iter().filter(|h| g.is_abelian(h)).collect();
    let max_abelian_order = abelian.iter().map(|h| h.order()).max().unwrap_or(1);
    let max_abelian_subgroups: Vec<Subgroup> = abelian
        .into_iter()
        .filter(|h| h.order() == max_abelian_order)
        .cloned()
        .collect();
    let j = g.join_all(&max_abelian_subgroups);
    let a = g.omega1(&g.center(s), p)?;
    let b = g.omega1(&g.center(&j), p)?;
    Ok(ThompsonData {
        s: s.clone(),
        max_abelian_order,
        max_abelian_subgroups,
        j,
        a,
        b,
    })
}

/// `α(W) = W` for every automorphism `α` in the list.
pub fn invariant_under(w: &Subgroup, autos: &[GroupMorphism]) -> bool {
    autos
        .iter()
        .all(|alpha| w.iter().all(|x| w.contains(alpha.apply(x))))
}

/// Whether `W ≤ S` is characteristic in `S`, by full automorphism enumeration.
pub fn is_characteristic(g: &FiniteGroup, w: &Subgroup, s: &Subgroup) -> Result<bool> {
    if !w.is_subgroup_of(s) {
        return Err(Error::NotASubgroup("W is not contained in S".into()));
    }
    let autos = automorphisms_of(g, s)?;
    Ok(invariant_under(w, &autos))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testgroups::*;

    #[test]
    fn dihedral_thompson_data() {
        let d8 = d8();
        let t = thompson_data(&d8, &d8.whole(), 2).unwrap();
        assert_eq!(t.max_abelian_order, 4);
        assert_eq!(t.max_abelian_subgroups.len(), 3);
        assert_eq!(t.j.order(), 8);
        assert_eq!(t.a.order(), 2);
        assert_eq!(t.a, t.b);
        assert!(is_characteristic(&d8, &t.a, &d8.whole()).unwrap());
    }

    #[test]
    fn not_a_p_group() {
        let s3 = s3();
        assert_eq!(
            thompson_data(&s3, &s3.whole(), 2),
            Err(Error::NotAPGroup(2))
        );
    }

    #[test]
    fn quaternion_cyclic_subgroup_is_not_characteristic() {
        let q8 = q8();
        let t = thompson_data(&q8, &q8.whole(), 2).unwrap();
        assert_eq!(t.max_abelian_subgroups.len(), 3);
        assert_eq!(t.j.order(), 8);
        assert_eq!(t.a.order(), 2);
        let c4 = &t.max_abelian_subgroups[0];
        assert!(!is_characteristic(&q8, c4, &q8.whole()).unwrap());
        assert!(is_characteristic(&q8, &t.j, &q8.whole()).unwrap());
    }
}
