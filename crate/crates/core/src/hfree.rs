//! H-freeness of groups and of realized fusion systems, the groups `Σ3`,
//! `Σ4` and `Qd(p)`, and the involvement criteria for `Σ4`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fusion::FusionSystem;
use crate::group::{FiniteGroup, GroupSpec, Limits, Subgroup};
use crate::iso::{is_involved, section_group, Section};
use crate::perm::Perm;
use crate::subsystems::model_group;

/// Where a section isomorphic to `H` was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HFreeWitness {
    /// The centric, radical, fully normalized subgroup whose model contains
    /// the section; `None` when the target is a plain group.
    pub q: Option<Subgroup>,
    /// Order of the group containing the section.
    pub host_order: usize,
    /// Section of the host, indexed in the host.
    pub section: Section,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HFreeReport {
    pub h_name: String,
    pub free: bool,
    pub witness: Option<HFreeWitness>,
    /// Subgroups whose models were inspected (fusion targets only).
    pub checked: Vec<Subgroup>,
}

fn perm_group(name: &str, degree: usize, gens: Vec<Perm>) -> FiniteGroup {
    FiniteGroup::build(
        name,
        GroupSpec::Permutations {
            degree,
            generators: gens,
        },
        Limits::default(),
    )
    .expect("fixed generators")
}

fn cycles(degree: usize, cs: &[&[u32]]) -> Perm {
    let cs: Vec<Vec<u32>> = cs.iter().map(|c| c.to_vec()).collect();
    Perm::from_cycles(degree, &cs).expect("fixed cycles")
}

/// The symmetric group on three letters.
pub fn sigma3() -> FiniteGroup {
    perm_group(
        "Sigma3",
        3,
        alloc::vec![cycles(3, &[&[0, 1]]), cycles(3, &[&[0, 1, 2]])],
    )
}

/// The symmetric group on four letters.
pub fn sigma4() -> FiniteGroup {
    perm_group(
        "Sigma4",
        4,
        alloc::vec![cycles(4, &[&[0, 1]]), cycles(4, &[&[0, 1, 2, 3]])],
    )
}

/// `(Z_p × Z_p) : SL(2,p)` acting on the `p^2` vectors of `F_p^2`, the
/// vector `(x, y)` being point `x + p·y`.
pub fn qd_group(p: u32) -> Result<FiniteGroup> {
    if p != 2 && p != 3 {
        return Err(Error::UnsupportedPrime(p));
    }
    let n = (p * p) as usize;
    let affine = |f: &dyn Fn(u32, u32) -> (u32, u32)| {
        let images = (0..p * p)
            .map(|pt| {
                let (x, y) = f(pt % p, pt / p);
                x % p + p * (y % p)
            })
            .collect();
        Perm::from_images(images).expect("affine bijection")
    };
    let gens = alloc::vec![
        affine(&|x, y| (x + y, y)),
        affine(&|x, y| (x, x + y)),
        affine(&|x, y| (x + 1, y)),
    ];
    Ok(perm_group(&alloc::format!("Qd({p})"), n, gens))
}

/// `G` is H-free when no section of `G` is isomorphic to `H`.
pub fn is_group_h_free(g: &FiniteGroup, h: &FiniteGroup) -> Result<HFreeReport> {
    let section = is_involved(h, g)?;
    Ok(HFreeReport {
        h_name: h.name().to_string(),
        free: section.is_none(),
        witness: section.map(|section| HFreeWitness {
            q: None,
            host_order: g.order(),
            section,
        }),
        checked: Vec::new(),
    })
}

/// `F` is H-free when `H` is involved in no model `L_Q` with `Q` centric,
/// radical and fully normalized.
pub fn is_fusion_h_free(f: &FusionSystem, h: &FiniteGroup) -> Result<HFreeReport> {
    if f.realizer().is_none() {
        return Err(Error::NotRealized);
    }
    let mut checked = Vec::new();
    for q in f.objects() {
        let prof = f.classify_subgroup(q)?;
        if !(prof.centric && prof.radical && prof.fully_normalized) {
            continue;
        }
        checked.push(q.clone());
        let model = model_group(f, q)?;
        if let Some(section) = is_involved(h, &model.group)? {
            return Ok(HFreeReport {
                h_name: h.name().to_string(),
                free: false,
                witness: Some(HFreeWitness {
                    q: Some(q.clone()),
                    host_order: model.group.order(),
                    section,
                }),
                checked,
            });
        }
    }
    Ok(HFreeReport {
        h_name: h.name().to_string(),
        free: true,
        witness: None,
        checked,
    })
}

/// `(Σ4 involved in G, some nontrivial 2-subgroup Q has Σ3 involved in
/// N_G(Q)/C_G(Q))`. The two must agree.
pub fn sigma3_involvement_check(g: &FiniteGroup) -> Result<(bool, bool)> {
    let a = is_involved(&sigma4(), g)?.is_some();
    let s3 = sigma3();
    let whole = g.whole();
    let mut b = false;
    for q in g.subgroup_lattice()? {
        if q.is_trivial() || !q.order().is_power_of_two() {
            continue;
        }
        let n = g.normalizer(q, &whole);
        let c = g.centralizer(q, &n);
        if !(n.order() / c.order()).is_multiple_of(6) {
            continue;
        }
        if is_involved(&s3, &section_group(g, &Section { upper: n, lower: c }))?.is_some() {
            b = true;
            break;
        }
    }
    if a != b {
        return Err(Error::InternalInconsistency(alloc::format!(
            "Sigma4 involvement ({a}) disagrees with the 2-local Sigma3 criterion ({b}) in {}",
            g.name()
        )));
    }
    Ok((a, b))
}

/// `(G is Σ4-free, G/O_2(G) is Σ3-free)` for `C_G(O_2(G)) ≤ O_2(G)`. The two
/// must agree.
pub fn remark67_check(g: &FiniteGroup) -> Result<(bool, bool)> {
    let whole = g.whole();
    let o2 = g.o_p(&whole, 2);
    if !g.centralizer(&o2, &whole).is_subgroup_of(&o2) {
        return Err(Error::HypothesisViolated(
            "C_G(O_2(G)) is not contained in O_2(G)".into(),
        ));
    }
    let a = is_involved(&sigma4(), g)?.is_none();
    let quotient = g.quotient(&o2)?.group;
    let b = is_involved(&sigma3(), &quotient)?.is_none();
    if a != b {
        return Err(Error::InternalInconsistency(alloc::format!(
            "Sigma4-freeness ({a}) disagrees with Sigma3-freeness of G/O_2(G) ({b}) in {}",
            g.name()
        )));
    }
    Ok((a, b))
}

/// Whether the group is nonabelian and has no proper nontrivial normal subgroup.
pub fn is_nonabelian_simple(g: &FiniteGroup) -> bool {
    let whole = g.whole();
    !g.is_abelian(&whole)
        && g.elements()
            .skip(1)
            .all(|x| g.normal_closure(&[x], &whole).order() == g.order())
}

/// Every nonabelian simple section `B/A` of `G`, each paired with whether it
/// is Σ3-free. Solvable groups have none.
pub fn simple_sections_sigma3(g: &FiniteGroup) -> Result<Vec<(Section, bool)>> {
    let mut out = Vec::new();
    if g.is_solvable(&g.whole()) {
        return Ok(out);
    }
    let lattice = g.subgroup_lattice()?;
    let s3 = sigma3();
    for b in lattice {
        if g.is_solvable(b) {
            continue;
        }
        for a in lattice
            .iter()
            .filter(|a| a.is_subgroup_of(b) && a.order() < b.order())
        {
            if !g.is_normal_in(a, b) {
                continue;
            }
            let section = Section {
                upper: b.clone(),
                lower: a.clone(),
            };
            let q = section_group(g, &section);
            if is_nonabelian_simple(&q) {
                let free = is_involved(&s3, &q)?.is_none();
                out.push((section, free));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;
    use crate::testgroups::*;
    use alloc::sync::Arc;

    #[test]
    fn qd_orders() {
        let qd2 = qd_group(2).unwrap();
        assert_eq!(qd2.order(), 24);
        assert!(is_isomorphic(&qd2, &sigma4()).unwrap().is_some());
        let qd3 = qd_group(3).unwrap();
        assert_eq!(qd3.order(), 216);
        assert!(qd3.o_p(&qd3.whole(), 3).order() >= 9);
        assert_eq!(qd_group(5).unwrap_err(), Error::UnsupportedPrime(5));
    }

    #[test]
    fn group_freeness() {
        assert!(is_group_h_free(&sl23(), &sigma4()).unwrap().free);
        let r = is_group_h_free(&s4(), &sigma4()).unwrap();
        assert!(!r.free);
        assert_eq!(r.witness.unwrap().section.upper.order(), 24);
        assert!(is_group_h_free(&a4(), &sigma3()).unwrap().free);
    }

    #[test]
    fn fusion_freeness() {
        let f = FusionSystem::realize(Arc::new(sl23()), 2, None).unwrap();
        assert!(is_fusion_h_free(&f, &sigma4()).unwrap().free);
        let f = FusionSystem::realize(Arc::new(s4()), 2, None).unwrap();
        let r = is_fusion_h_free(&f, &sigma4()).unwrap();
        assert!(!r.free);
        let w = r.witness.unwrap();
        assert_eq!(w.q.unwrap().order(), 4);
        assert_eq!(w.host_order, 24);
    }

    #[test]
    fn appendix_criteria() {
        assert_eq!(sigma3_involvement_check(&s4()).unwrap(), (true, true));
        assert_eq!(sigma3_involvement_check(&sl23()).unwrap(), (false, false));
        assert_eq!(
            sigma3_involvement_check(&FiniteGroup::trivial()).unwrap(),
            (false, false)
        );
        assert_eq!(remark67_check(&sl23()).unwrap(), (true, true));
        assert_eq!(remark67_check(&s4()).unwrap(), (false, false));
        assert_eq!(remark67_check(&d8()).unwrap(), (true, true));
        assert!(matches!(
            remark67_check(&s3()),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn alternating_five_is_not_sigma3_free() {
        let a5 = pg("A5", 5, &[&[&[1, 2, 3]], &[&[1, 2, 3, 4, 5]]]);
        assert_eq!(a5.order(), 60);
        let sections = simple_sections_sigma3(&a5).unwrap();
        assert_eq!(sections.len(), 1);
        assert!(!sections[0].1);
        assert!(simple_sections_sigma3(&s4()).unwrap().is_empty());
    }
}
