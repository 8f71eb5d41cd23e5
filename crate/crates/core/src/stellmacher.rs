//! The characteristic subgroup `W(S)` relative to a finite family of fusion
//! systems on `S`.
//!
//! Every member lives in its own ambient group and is tied to the abstract
//! p-group `S` by a fixed isomorphism onto the member's carrier. Subgroups of
//! `S` are transported through that isomorphism for normality tests and pulled
//! back after each orbit closure.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::bits::ElementSet;
use crate::error::{Error, Result};
use crate::fusion::FusionSystem;
use crate::group::{FiniteGroup, Subgroup};
use crate::hfree::{is_fusion_h_free, qd_group};
use crate::iso::{automorphisms, subgroups_isomorphic};
use crate::morphism::GroupMorphism;
use crate::pgroup::{is_characteristic, thompson_data, ThompsonData};
use crate::subsystems::{is_normal_in_f, model_group};

/// Conditions for a member to count towards `W(S)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MembershipFlags {
    /// `J(S)` is normal in the member.
    pub j_normal: bool,
    /// The member is `Qd(p)`-free.
    pub qd_free: bool,
}

impl MembershipFlags {
    pub fn admitted(&self) -> bool {
        self.j_normal && self.qd_free
    }
}

/// A fusion system on `S`, given in its own ambient group.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub label: String,
    pub system: FusionSystem,
    /// `iota[x]` is the image in the ambient group of element `x` of `S`.
    pub iota: Vec<u32>,
    pub flags: MembershipFlags,
    /// Admitted regardless of its flags. Used for synthetic fixtures.
    pub forced: bool,
    /// Why the member is not admitted, when it is not.
    pub rejection: Option<String>,
}

impl FamilyMember {
    pub fn admitted(&self) -> bool {
        self.forced || self.flags.admitted()
    }

    /// Image of a subgroup of `S` inside the member's carrier.
    pub fn push(&self, w: &Subgroup) -> Subgroup {
        let g = self.system.ambient();
        g.subgroup_unchecked(ElementSet::from_indices(
            g.order(),
            w.iter().map(|x| self.iota[x as usize]),
        ))
    }

    /// Preimage in `S` of a subset of the carrier.
    fn pull(&self, s: &FiniteGroup, elems: impl IntoIterator<Item = u32>) -> Vec<u32> {
        let back: BTreeMap<u32, u32> = self
            .iota
            .iter()
            .enumerate()
            .map(|(x, &y)| (y, x as u32))
            .collect();
        let mut out: Vec<u32> = elems
            .into_iter()
            .map(|y| *back.get(&y).expect("inside the carrier"))
            .collect();
        out.sort_unstable();
        out.dedup();
        debug_assert!(out.iter().all(|&x| (x as usize) < s.order()));
        out
    }

    /// The same system with the identification precomposed by `alpha ∈ Aut(S)`.
    pub fn twisted(&self, alpha: &GroupMorphism) -> FamilyMember {
        let mut m = self.clone();
        m.iota = alpha
            .images()
            .iter()
            .map(|&y| self.iota[y as usize])
            .collect();
        m
    }
}

/// A finite family of fusion systems on a common abstract p-group `S`.
#[derive(Clone, Debug)]
pub struct CandidateFamily {
    pub s: Arc<FiniteGroup>,
    pub p: u32,
    pub members: Vec<FamilyMember>,
}

pub(crate) fn identification(
    s: &FiniteGroup,
    g: &FiniteGroup,
    carrier: &Subgroup,
) -> Result<Vec<u32>> {
    let (cg, emb) = g.subgroup_as_group(carrier, "S_G");
    let iso = subgroups_isomorphic(s, &s.whole(), &cg, &cg.whole()).ok_or(Error::SylowMismatch)?;
    Ok(iso.images().iter().map(|&y| emb[y as usize]).collect())
}

fn qd_free(f: &FusionSystem, p: u32) -> Result<bool> {
    match qd_group(p) {
        Ok(qd) => Ok(is_fusion_h_free(f, &qd)?.free),
        Err(_) => {
            // models are sections of the realizer
            let qd_order = (p as usize).pow(3) * ((p as usize).pow(2) - 1);
            let h = f.realizer().ok_or(Error::NotRealized)?;
            if h.order() < qd_order {
                Ok(true)
            } else {
                Err(Error::UnsupportedPrime(p))
            }
        }
    }
}

/// Realizes `F_{S_G}(G)` on a Sylow subgroup (the given one, or the first in
/// lattice order), identifies it with `S`, and computes the membership flags.
pub fn admit_member_on(
    s: &Arc<FiniteGroup>,
    g: Arc<FiniteGroup>,
    p: u32,
    sylow: Option<Subgroup>,
) -> Result<FamilyMember> {
    admit_system(s, FusionSystem::realize(g, p, sylow)?)
}

/// Identifies a realized system's carrier with `S` and computes its flags.
pub fn admit_system(s: &Arc<FiniteGroup>, f: FusionSystem) -> Result<FamilyMember> {
    let p = f.p();
    let g = f.ambient_arc().clone();
    let iota = identification(s, &g, f.carrier())?;
    let j = thompson_data(&g, f.carrier(), p)?.j;
    let j_normal = is_normal_in_f(&f, &j)?.normal;
    let qd_free = qd_free(&f, p)?;
    let flags = MembershipFlags { j_normal, qd_free };
    if flags.admitted() {
        if !f.is_centric(&j)? {
            return Err(Error::InternalInconsistency(format!(
                "J(S) is normal but not centric in F_S({})",
                g.name()
            )));
        }
        let model = model_group(&f, &j)?;
        let l = &model.group;
        let o = l.o_p(&l.whole(), p);
        if !l.centralizer(&o, &l.whole()).is_subgroup_of(&o) {
            return Err(Error::InternalInconsistency(format!(
                "model of F_S({}) is not p-constrained",
                g.name()
            )));
        }
    }
    let rejection = match (j_normal, qd_free) {
        (true, true) => None,
        (false, true) => Some("J(S) is not normal".to_string()),
        (true, false) => Some(format!("Qd({p}) is involved")),
        (false, false) => Some(format!("J(S) is not normal and Qd({p}) is involved")),
    };
    Ok(FamilyMember {
        label: format!("F_S({})", g.name()),
        system: f,
        iota,
        flags,
        forced: false,
        rejection,
    })
}

/// [`admit_member_on`] with the default Sylow subgroup.
pub fn admit_member(s: &Arc<FiniteGroup>, g: Arc<FiniteGroup>, p: u32) -> Result<FamilyMember> {
    admit_member_on(s, g, p, None)
}

impl CandidateFamily {
    /// The family `{F_S(S)}`. `S` must be a nontrivial p-group.
    pub fn new(s: Arc<FiniteGroup>, p: u32) -> Result<Self> {
        if s.order() == 1 {
            return Err(Error::TrivialGroup);
        }
        if !s.is_p_group(&s.whole(), p) {
            return Err(Error::NotAPGroup(p));
        }
        let inner = admit_member(&s, s.clone(), p)?;
        Ok(Self {
            s,
            p,
            members: alloc::vec![inner],
        })
    }

    /// Adds `F_S(G)` after the admission test; rejected members are kept
    /// with their flags but do not take part in the computation.
    pub fn add_group(&mut self, g: Arc<FiniteGroup>) -> Result<&FamilyMember> {
        let m = admit_member(&self.s, g, self.p)?;
        self.members.push(m);
        Ok(self.members.last().expect("just pushed"))
    }

    /// Adds a system that is admitted unconditionally. Flags are computed
    /// when the system is realized and otherwise recorded as satisfied.
    pub fn add_forced(&mut self, label: &str, system: FusionSystem) -> Result<()> {
        let iota = identification(&self.s, system.ambient(), system.carrier())?;
        let flags = if system.realizer().is_some() {
            let j = thompson_data(system.ambient(), system.carrier(), self.p)?.j;
            MembershipFlags {
                j_normal: is_normal_in_f(&system, &j)?.normal,
                qd_free: qd_free(&system, self.p)?,
            }
        } else {
            MembershipFlags {
                j_normal: true,
                qd_free: true,
            }
        };
        self.members.push(FamilyMember {
            label: label.to_string(),
            system,
            iota,
            flags,
            forced: true,
            rejection: None,
        });
        Ok(())
    }

    pub fn admitted(&self) -> impl Iterator<Item = (usize, &FamilyMember)> {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, m)| m.admitted())
    }

    pub fn thompson(&self) -> Result<ThompsonData> {
        thompson_data(&self.s, &self.s.whole(), self.p)
    }

    /// The family with its members in reverse order.
    pub fn reversed(&self) -> Self {
        let mut f = self.clone();
        f.members.reverse();
        f
    }

    /// Closes the family under precomposition with `Aut(S)`.
    pub fn aut_closed(&self) -> Result<Self> {
        let autos = automorphisms(&self.s)?;
        let mut f = self.clone();
        f.members = self
            .members
            .iter()
            .flat_map(|m| autos.iter().map(move |a| m.twisted(a)))
            .collect();
        Ok(f)
    }
}

/// One growth step of the chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WStep {
    /// Index of the member in which the previous term was not normal.
    pub member: usize,
    pub label: String,
    /// Distinct images `ψ(W_{i-1})` in `S`, for `ψ ∈ Hom_F(W_{i-1}, S)`.
    pub orbit: Vec<Subgroup>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WComputation {
    pub labels: Vec<String>,
    /// `W_0 < W_1 < … < W_n`.
    pub chain: Vec<Subgroup>,
    pub witnesses: Vec<WStep>,
    pub w_iter: Subgroup,
    pub w_oneshot: Subgroup,
    pub equal: bool,
}

impl WComputation {
    pub fn w(&self) -> &Subgroup {
        &self.w_iter
    }
}

/// Normality of transported subgroups, memoized per member.
struct NormalityCache<'a> {
    family: &'a CandidateFamily,
    seen: RefCell<BTreeMap<(usize, Subgroup), bool>>,
}

impl<'a> NormalityCache<'a> {
    fn new(family: &'a CandidateFamily) -> Self {
        Self {
            family,
            seen: RefCell::new(BTreeMap::new()),
        }
    }

    fn normal(&self, i: usize, w: &Subgroup) -> Result<bool> {
        let m = &self.family.members[i];
        let key = (i, m.push(w));
        if let Some(&v) = self.seen.borrow().get(&key) {
            return Ok(v);
        }
        let v = is_normal_in_f(&m.system, &key.1)?.normal;
        self.seen.borrow_mut().insert(key, v);
        Ok(v)
    }
}

fn orbit_in_s(family: &CandidateFamily, m: &FamilyMember, w: &Subgroup) -> Result<Vec<Subgroup>> {
    let pushed = m.push(w);
    let mut orbit: Vec<Subgroup> = Vec::new();
    for psi in m.system.homs_to_carrier(&pushed)? {
        let image = family
            .s
            .generate(&m.pull(&family.s, psi.images().iter().copied()));
        if !orbit.contains(&image) {
            orbit.push(image);
        }
    }
    orbit.sort();
    Ok(orbit)
}

/// `W_0 = Ω(Z(S))`, grown by orbit closure in the first admitted member (in
/// list order) where the current term is not normal, until it is normal in
/// every admitted member.
pub fn compute_w_iterative(family: &CandidateFamily) -> Result<WComputation> {
    let s = &family.s;
    let t = family.thompson()?;
    let cache = NormalityCache::new(family);
    let mut w = t.a.clone();
    let mut chain = alloc::vec![w.clone()];
    let mut witnesses = Vec::new();
    loop {
        let mut offender = None;
        for (i, _) in family.admitted() {
            if !cache.normal(i, &w)? {
                offender = Some(i);
                break;
            }
        }
        let Some(i) = offender else { break };
        let m = &family.members[i];
        let orbit = orbit_in_s(family, m, &w)?;
        let next = s.join_all(&orbit);
        let step = chain.len();
        if !next.is_subgroup_of(&t.b) {
            return Err(Error::SandwichViolated(step));
        }
        if next == w {
            return Err(Error::ChainStalled(step));
        }
        witnesses.push(WStep {
            member: i,
            label: m.label.clone(),
            orbit,
        });
        chain.push(next.clone());
        w = next;
    }
    let w_oneshot = compute_w_oneshot(family)?;
    if !w_oneshot.is_subgroup_of(&w) {
        return Err(Error::InternalInconsistency(format!(
            "one-shot W of order {} is not contained in iterative W of order {}",
            w_oneshot.order(),
            w.order()
        )));
    }
    Ok(WComputation {
        labels: family.members.iter().map(|m| m.label.clone()).collect(),
        equal: w_oneshot == w,
        chain,
        witnesses,
        w_iter: w,
        w_oneshot,
    })
}

/// `⟨ψ(W_0) : ψ ∈ Hom_F(J(S), S), F admitted⟩`.
pub fn compute_w_oneshot(family: &CandidateFamily) -> Result<Subgroup> {
    let s = &family.s;
    let t = family.thompson()?;
    let mut images = alloc::vec![t.a.clone()];
    for (_, m) in family.admitted() {
        let j = m.push(&t.j);
        let w0 = m.push(&t.a);
        for psi in m.system.homs_to_carrier(&j)? {
            let image = m.pull(s, w0.iter().map(|x| psi.apply(x)));
            images.push(s.generate(&image));
        }
    }
    Ok(s.join_all(&images))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorReport {
    pub w: Subgroup,
    pub iter_characteristic: bool,
    pub oneshot_characteristic: bool,
    pub nontrivial: bool,
    pub in_sandwich: bool,
    pub normal_in_members: bool,
    /// Same `W` with the member list reversed.
    pub permutation_independent: bool,
    /// Same `W` with each member replaced by a realization on another Sylow.
    pub realization_independent: bool,
    /// Same `W` over the `Aut(S)`-closure of the family.
    pub aut_closure_stable: bool,
    pub oneshot_equal: bool,
}

impl FunctorReport {
    pub fn all_hold(&self) -> bool {
        self.iter_characteristic
            && self.oneshot_characteristic
            && self.nontrivial
            && self.in_sandwich
            && self.normal_in_members
            && self.permutation_independent
            && self.realization_independent
            && self.aut_closure_stable
    }
}

/// The member re-realized on the first Sylow subgroup different from its own.
/// Members that are not realized in a proper overgroup are kept as they are.
fn rerealized(family: &CandidateFamily, m: &FamilyMember) -> Result<FamilyMember> {
    let f = &m.system;
    let Some(h) = f.realizer() else {
        return Ok(m.clone());
    };
    let g = f.ambient();
    let Some(x) = h
        .iter()
        .find(|&x| g.conjugate(f.carrier(), x) != *f.carrier())
    else {
        return Ok(m.clone());
    };
    if *h != g.whole() {
        return Ok(m.clone());
    }
    let other = g.conjugate(f.carrier(), x);
    let mut fresh = admit_member_on(&family.s, f.ambient_arc().clone(), family.p, Some(other))?;
    fresh.forced = m.forced;
    fresh.label = m.label.clone();
    Ok(fresh)
}

/// Characteristic, nontriviality and independence checks for the family's `W`.
pub fn functor_checks(family: &CandidateFamily) -> Result<FunctorReport> {
    let s = &family.s;
    let run = compute_w_iterative(family)?;
    let t = family.thompson()?;
    let w = run.w_iter.clone();
    let cache = NormalityCache::new(family);
    let mut normal_in_members = true;
    for (i, _) in family.admitted() {
        normal_in_members &= cache.normal(i, &w)?;
    }
    let reversed = compute_w_iterative(&family.reversed())?.w_iter;
    let mut relabeled = family.clone();
    relabeled.members = family
        .members
        .iter()
        .map(|m| rerealized(family, m))
        .collect::<Result<_>>()?;
    let relabeled = compute_w_iterative(&relabeled)?.w_iter;
    let closed = compute_w_iterative(&family.aut_closed()?)?.w_iter;
    Ok(FunctorReport {
        iter_characteristic: is_characteristic(s, &w, &s.whole())?,
        oneshot_characteristic: is_characteristic(s, &run.w_oneshot, &s.whole())?,
        nontrivial: !w.is_trivial(),
        in_sandwich: t.a.is_subgroup_of(&w) && w.is_subgroup_of(&t.b),
        normal_in_members,
        permutation_independent: reversed == w,
        realization_independent: relabeled == w,
        aut_closure_stable: closed == w,
        oneshot_equal: run.equal,
        w,
    })
}
