//! Subsystems and quotients of a fusion system, normality, `O_p(F)`,
//! model groups and chain straightening.
//!
//! Each construction has a by-definition route that reads only hom-sets of
//! the base system and produces an explicit system. Realized systems also
//! have a shortcut that realizes the subsystem by a subgroup of the ambient
//! group when the fully normalized or fully centralized hypothesis holds;
//! the two routes are compared in the tests.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::bits::ElementSet;
use crate::error::{Error, Result};
use crate::fusion::{FusionSystem, SaturationStatus};
use crate::group::{p_part, FiniteGroup, Subgroup};
use crate::iso::subgroups_isomorphic;
use crate::morphism::GroupMorphism;

/// The centralizer-type subsystems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CentralizerKind {
    /// `C_F(Q)` on `C_S(Q)`: extensions restricting to the identity on `Q`.
    Centralizer,
    /// `N_S(Q)C_F(Q)` on `N_S(Q)`: extensions restricting to some `c_x` on
    /// `Q`, `x ∈ N_S(Q)`.
    Mixed,
    /// `S·C_F(Q)` on `S` for `Q` normal in `F`.
    Product,
}

/// Outcome of a normality test, with a morphism that fails to extend.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityVerdict {
    pub normal: bool,
    pub counterexample: Option<GroupMorphism>,
}

impl NormalityVerdict {
    fn holds() -> Self {
        Self {
            normal: true,
            counterexample: None,
        }
    }

    fn fails(m: Option<GroupMorphism>) -> Self {
        Self {
            normal: false,
            counterexample: m,
        }
    }
}

/// `N_F(Q)`, realized by `N_H(Q)` when `F = F_S(H)` and `Q` is fully
/// normalized, otherwise by definition.
pub fn normalizer_system(f: &FusionSystem, q: &Subgroup) -> Result<FusionSystem> {
    f.object_index(q)?;
    let fully_normalized = f.is_fully_normalized(q)?;
    if let (Some(h), true) = (f.realizer(), fully_normalized) {
        let g = f.ambient();
        let realizer = g.normalizer(q, h);
        let carrier = g.normalizer(q, f.carrier());
        let sys =
            FusionSystem::realize_in(f.ambient_arc().clone(), realizer, f.p(), Some(carrier))?;
        return Ok(sys.verified());
    }
    let sys = normalizer_system_by_definition(f, q)?;
    Ok(if fully_normalized {
        sys.verified()
    } else {
        sys
    })
}

/// `N_F(Q)` read off the hom-sets: `φ: R → T` with `R, T ≤ N_S(Q)` is kept
/// when some `φ̂ ∈ Hom_F(QR, QT)` restricts to `φ` and maps `Q` onto `Q`.
pub fn normalizer_system_by_definition(f: &FusionSystem, q: &Subgroup) -> Result<FusionSystem> {
    let g = f.ambient();
    let carrier = g.normalizer(q, f.carrier());
    let maps = extension_restrictions(f, q, &carrier, |hat| hat.image_of(q) == *q)?;
    FusionSystem::explicit(f.p(), f.ambient_arc().clone(), carrier, maps)
}

/// Restrictions to each `R ≤ carrier` of morphisms `φ̂ ∈ Hom_F(QR, S)` that
/// pass `keep` and send `R` into `carrier`.
fn extension_restrictions(
    f: &FusionSystem,
    q: &Subgroup,
    carrier: &Subgroup,
    keep: impl Fn(&GroupMorphism) -> bool,
) -> Result<Vec<GroupMorphism>> {
    let g = f.ambient();
    let mut out = Vec::new();
    for r in g.lattice_within(carrier)? {
        let qr = g.join(q, &r);
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        for hat in f.homs_to_carrier(&qr)? {
            if !keep(hat) {
                continue;
            }
            let phi = hat.restrict(&r);
            if phi.images().iter().all(|&y| carrier.contains(y))
                && seen.insert(phi.images().to_vec())
            {
                out.push(phi.with_codomain(carrier));
            }
        }
    }
    Ok(out)
}

/// `C_F(Q)`, `N_S(Q)C_F(Q)` or `S·C_F(Q)`.
pub fn centralizer_like_system(
    f: &FusionSystem,
    q: &Subgroup,
    kind: CentralizerKind,
) -> Result<FusionSystem> {
    f.object_index(q)?;
    if kind == CentralizerKind::Product && !is_normal_in_f(f, q)?.normal {
        return Err(Error::NotNormalInF);
    }
    let fully_centralized = f.is_fully_centralized(q)?;
    if let (Some(h), true) = (f.realizer(), fully_centralized) {
        let g = f.ambient();
        let c_h = g.centralizer(q, h);
        let (realizer, carrier) = match kind {
            CentralizerKind::Centralizer => (c_h, g.centralizer(q, f.carrier())),
            CentralizerKind::Mixed | CentralizerKind::Product => {
                let n_s = g.normalizer(q, f.carrier());
                (g.join(&n_s, &c_h), n_s)
            }
        };
        let sys =
            FusionSystem::realize_in(f.ambient_arc().clone(), realizer, f.p(), Some(carrier))?;
        return Ok(sys.verified());
    }
    let sys = centralizer_like_by_definition(f, q, kind)?;
    Ok(if fully_centralized {
        sys.verified()
    } else {
        sys
    })
}

/// The centralizer-type subsystem read off the hom-sets.
pub fn centralizer_like_by_definition(
    f: &FusionSystem,
    q: &Subgroup,
    kind: CentralizerKind,
) -> Result<FusionSystem> {
    let g = f.ambient();
    let n_s = g.normalizer(q, f.carrier());
    let maps = match kind {
        CentralizerKind::Centralizer => {
            let carrier = g.centralizer(q, f.carrier());
            let maps =
                extension_restrictions(f, q, &carrier, |hat| q.iter().all(|u| hat.apply(u) == u))?;
            return FusionSystem::explicit(f.p(), f.ambient_arc().clone(), carrier, maps);
        }
        CentralizerKind::Mixed | CentralizerKind::Product => {
            let inner: BTreeSet<Vec<u32>> = n_s
                .iter()
                .map(|x| q.iter().map(|u| g.conj(x, u)).collect())
                .collect();
            extension_restrictions(f, q, &n_s, |hat| {
                let on_q: Vec<u32> = q.iter().map(|u| hat.apply(u)).collect();
                inner.contains(&on_q)
            })?
        }
    };
    FusionSystem::explicit(f.p(), f.ambient_arc().clone(), n_s, maps)
}

/// Whether `W` is normal in `F`: every `φ ∈ Hom_F(P, S)` extends to some
/// `φ̂ ∈ Hom_F(WP, S)` with `φ̂(W) = W`.
pub fn is_normal_in_f(f: &FusionSystem, w: &Subgroup) -> Result<NormalityVerdict> {
    if let Some(v) = not_normal_in_carrier(f, w)? {
        return Ok(v);
    }
    match f.realizer() {
        Some(h) => {
            let g = f.ambient();
            let n_w = g.normalizer(w, h);
            for p in f.objects() {
                let members = p.to_members();
                let induced: BTreeSet<Vec<u32>> = g
                    .transporter(p, f.carrier(), &n_w)
                    .into_iter()
                    .map(|x| members.iter().map(|&u| g.conj(x, u)).collect())
                    .collect();
                for phi in f.homs_to_carrier(p)? {
                    if !induced.contains(phi.images()) {
                        return Ok(NormalityVerdict::fails(Some(phi.clone())));
                    }
                }
            }
            Ok(NormalityVerdict::holds())
        }
        None => is_normal_in_f_by_definition(f, w),
    }
}

/// Normality checked against the definition only.
pub fn is_normal_in_f_by_definition(f: &FusionSystem, w: &Subgroup) -> Result<NormalityVerdict> {
    if let Some(v) = not_normal_in_carrier(f, w)? {
        return Ok(v);
    }
    let g = f.ambient();
    for p in f.objects() {
        let wp = g.join(w, p);
        let hats: Vec<&GroupMorphism> = f
            .homs_to_carrier(&wp)?
            .iter()
            .filter(|hat| hat.image_of(w) == *w)
            .collect();
        for phi in f.homs_to_carrier(p)? {
            if !hats.iter().any(|hat| hat.agrees_with(phi, p)) {
                return Ok(NormalityVerdict::fails(Some(phi.clone())));
            }
        }
    }
    Ok(NormalityVerdict::holds())
}

fn not_normal_in_carrier(f: &FusionSystem, w: &Subgroup) -> Result<Option<NormalityVerdict>> {
    f.object_index(w)?;
    let g = f.ambient();
    let s = f.carrier();
    Ok(s.iter()
        .find(|&x| g.conjugate(w, x) != *w)
        .map(|x| NormalityVerdict::fails(Some(GroupMorphism::conjugation(g, x, w, s)))))
}

/// The largest subgroup of `S` normal in `F`.
pub fn o_p_of_f(f: &FusionSystem) -> Result<Subgroup> {
    let g = f.ambient();
    let mut normal = Vec::new();
    for q in f.objects() {
        if g.is_normal_in(q, f.carrier()) && is_normal_in_f(f, q)?.normal {
            normal.push(q.clone());
        }
    }
    let join = g.join_all(&normal);
    if !is_normal_in_f(f, &join)?.normal {
        return Err(Error::JoinNotNormal);
    }
    Ok(join)
}

/// `F/Q` on `S/Q` for `Q` normal in `F`: `ψ` on `P/Q` is kept when
/// `ψ(xQ) = φ(x)Q` for some `φ ∈ Hom_F(P, S)`.
pub fn quotient_system(f: &FusionSystem, q: &Subgroup) -> Result<FusionSystem> {
    if !is_normal_in_f(f, q)?.normal {
        return Err(Error::NotNormalInF);
    }
    let g = f.ambient();
    let s = f.carrier();
    let (sg, _) = g.subgroup_as_group(s, "S");
    let rank = |x: u32| s.rank(x).expect("element of S") as u32;
    let q_in_s = sg.subgroup_unchecked(ElementSet::from_indices(sg.order(), q.iter().map(rank)));
    let quot = sg.quotient(&q_in_s)?;
    let bar = |x: u32| quot.projection[rank(x) as usize];
    let sbar = Arc::new(quot.group.clone().with_name(&format!("{}/Q", g.name())));
    let mut maps = Vec::new();
    for p in f.objects().iter().filter(|p| q.is_subgroup_of(p)) {
        let pbar =
            sbar.subgroup_unchecked(ElementSet::from_indices(sbar.order(), p.iter().map(bar)));
        // a representative in P of each coset
        let mut rep = alloc::vec![u32::MAX; sbar.order()];
        for x in p.iter() {
            let c = bar(x) as usize;
            if rep[c] == u32::MAX {
                rep[c] = x;
            }
        }
        for phi in f.homs_to_carrier(p)? {
            maps.push(GroupMorphism::from_fn(&pbar, &sbar.whole(), |c| {
                bar(phi.apply(rep[c as usize]))
            }));
        }
    }
    let whole = sbar.whole();
    FusionSystem::explicit(f.p(), sbar, whole, maps)
}

/// The smallest system on the common carrier containing every part, closed
/// under composition, restriction, inverses and inclusions.
pub fn generated_system(parts: &[&FusionSystem]) -> Result<FusionSystem> {
    let first = parts.first().ok_or(Error::CarrierMismatch)?;
    let p = first.p();
    let carrier = first.carrier().clone();
    for part in parts {
        if part.carrier() != &carrier
            || part.ambient().table() != first.ambient().table()
            || part.p() != p
        {
            return Err(Error::CarrierMismatch);
        }
    }
    let scratch =
        FusionSystem::explicit(p, first.ambient_arc().clone(), carrier.clone(), Vec::new())?;
    let objects = scratch.objects();
    let idx = |q: &Subgroup| scratch.object_index(q).expect("subgroup of the carrier");
    let n = objects.len();
    let mut by_domain: Vec<BTreeSet<GroupMorphism>> = (0..n).map(|_| BTreeSet::new()).collect();
    let mut by_image: Vec<Vec<GroupMorphism>> = (0..n).map(|_| Vec::new()).collect();
    let mut work: Vec<GroupMorphism> = Vec::new();
    let add = |m: GroupMorphism,
               by_domain: &mut Vec<BTreeSet<GroupMorphism>>,
               by_image: &mut Vec<Vec<GroupMorphism>>,
               work: &mut Vec<GroupMorphism>| {
        let m = m.with_codomain(&carrier);
        if by_domain[idx(m.domain())].insert(m.clone()) {
            by_image[idx(&m.image())].push(m.clone());
            work.push(m);
        }
    };
    for q in objects {
        add(
            GroupMorphism::identity(q),
            &mut by_domain,
            &mut by_image,
            &mut work,
        );
    }
    for part in parts {
        for q in objects {
            for m in part.homs_to_carrier(q)? {
                add(m.clone(), &mut by_domain, &mut by_image, &mut work);
            }
        }
    }
    while let Some(m) = work.pop() {
        let dom = m.domain().clone();
        let img = m.image();
        let mut fresh = alloc::vec![m.inverse()];
        for r in objects
            .iter()
            .filter(|r| r.is_subgroup_of(&dom) && **r != dom)
        {
            fresh.push(m.restrict(r));
        }
        for after in &by_domain[idx(&img)] {
            fresh.push(m.then(after));
        }
        for before in &by_image[idx(&dom)] {
            fresh.push(before.then(&m));
        }
        for x in fresh {
            add(x, &mut by_domain, &mut by_image, &mut work);
        }
    }
    let all: Vec<GroupMorphism> = by_domain.into_iter().flatten().collect();
    FusionSystem::explicit(p, first.ambient_arc().clone(), carrier, all)
}

/// `L_Q = N_H(Q) / O_{p'}(C_H(Q))` with its validation data.
#[derive(Clone, Debug)]
pub struct ModelGroup {
    pub group: FiniteGroup,
    /// Image of `Q`.
    pub q: Subgroup,
    /// Image of `N_S(Q)`.
    pub sylow: Subgroup,
    /// Image of `Z(Q)`.
    pub center_q: Subgroup,
    /// Order of `O_{p'}(C_H(Q))`.
    pub kernel_order: usize,
}

/// The model of `N_F(Q)` for a centric, fully normalized `Q` of a realized
/// system, validated against its defining properties.
pub fn model_group(f: &FusionSystem, q: &Subgroup) -> Result<ModelGroup> {
    let h = f.realizer().ok_or(Error::NotRealized)?;
    f.object_index(q)?;
    if !f.is_centric(q)? {
        return Err(Error::NotCentric);
    }
    let g = f.ambient();
    let p = f.p();
    let fail = |msg: &str| Error::ModelValidationFailed(msg.into());
    let n_h = g.normalizer(q, h);
    let c_h = g.centralizer(q, h);
    let k = g.o_p_prime(&c_h, p);
    let z = g.center(q);
    if c_h.order() != z.order() * k.order() || !z.is_subgroup_of(&c_h) {
        return Err(fail("C_H(Q) is not Z(Q) x O_p'(C_H(Q))"));
    }
    let (ng, emb) = g.subgroup_as_group(&n_h, "N_H(Q)");
    let local = |sub: &Subgroup| {
        ng.subgroup_unchecked(ElementSet::from_indices(
            ng.order(),
            sub.iter()
                .map(|x| n_h.rank(x).expect("inside N_H(Q)") as u32),
        ))
    };
    let quot = ng
        .quotient(&local(&k))
        .map_err(|_| fail("O_p'(C_H(Q)) is not normal in N_H(Q)"))?;
    let l = quot.group.with_name(&format!("L_Q({})", g.name()));
    let image = |sub: &Subgroup| {
        let loc = local(sub);
        l.subgroup_unchecked(ElementSet::from_indices(
            l.order(),
            loc.iter().map(|x| quot.projection[x as usize]),
        ))
    };
    debug_assert_eq!(emb.len(), n_h.order());
    let q_l = image(q);
    let sylow = image(&g.normalizer(q, f.carrier()));
    let center_q = image(&z);
    if !l.o_p_prime(&l.whole(), p).is_trivial() {
        return Err(fail("O_p'(L_Q) is nontrivial"));
    }
    if !l.is_normal_in(&q_l, &l.whole()) {
        return Err(fail("Q is not normal in L_Q"));
    }
    if sylow.order() != p_part(l.order(), p) {
        return Err(fail("image of N_S(Q) is not a Sylow subgroup of L_Q"));
    }
    let lz = l.quotient(&center_q)?.group;
    let auto = f.automizer(q)?;
    if subgroups_isomorphic(&lz, &lz.whole(), &auto.group, &auto.group.whole()).is_none() {
        return Err(fail("L_Q/Z(Q) is not isomorphic to Aut_F(Q)"));
    }
    Ok(ModelGroup {
        group: l,
        q: q_l,
        sylow,
        center_q,
        kernel_order: k.order(),
    })
}

/// A morphism moving a chain onto fully normalized subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StraightenedChain {
    /// Defined on `N_S(W_n)`.
    pub phi: GroupMorphism,
    pub images: Vec<Subgroup>,
}

/// For `W_1, …, W_n` with `W_{i+1}` characteristic in `N_S(W_i)` and `W_i`
/// fully normalized for `i < n`, finds `φ ∈ Hom_F(N_S(W_n), S)` with every
/// `φ(W_i)` fully normalized and `φ(N_S(W_i)) = N_S(φ(W_i))`.
pub fn straighten_chain(f: &FusionSystem, chain: &[Subgroup]) -> Result<StraightenedChain> {
    let g = f.ambient();
    let s = f.carrier();
    let violated = |msg: alloc::string::String| Error::ChainConditionViolated(msg);
    let last = chain.last().ok_or_else(|| violated("empty chain".into()))?;
    for (i, w) in chain.iter().enumerate() {
        f.object_index(w)?;
        if i + 1 < chain.len() {
            if !f.is_fully_normalized(w)? {
                return Err(violated(format!("W_{} is not fully normalized", i + 1)));
            }
            let n = g.normalizer(w, s);
            let next = &chain[i + 1];
            if !next.is_subgroup_of(&n) || !crate::pgroup::is_characteristic(g, next, &n)? {
                return Err(violated(format!(
                    "W_{} is not characteristic in N_S(W_{})",
                    i + 2,
                    i + 1
                )));
            }
        }
    }
    let n_last = g.normalizer(last, s);
    let internal = |msg: &str| Error::InternalInconsistency(msg.into());

    // a morphism onto a fully normalized conjugate of W_n
    let psi = f
        .homs_to_carrier(last)?
        .iter()
        .find(|m| f.is_fully_normalized(&m.image()).unwrap_or(false))
        .cloned()
        .ok_or_else(|| internal("no fully normalized conjugate"))?;
    let target = psi.image();
    let psi_inv = psi.inverse();
    // ψ Aut_S(W_n) ψ^-1 as maps on ψ(W_n)
    let transported: Vec<Vec<u32>> = f
        .aut_s(last)
        .iter()
        .map(|c| {
            target
                .iter()
                .map(|v| psi.apply(c.apply(psi_inv.apply(v))))
                .collect()
        })
        .collect();
    let aut_s_target: BTreeSet<Vec<u32>> = f
        .aut_s(&target)
        .into_iter()
        .map(|m| m.images().to_vec())
        .collect();
    let aut_f_target = f.aut(&target)?;
    // τ with τ (ψ Aut_S ψ^-1) τ^-1 inside Aut_S(ψ(W_n)), by Sylow conjugacy
    let tau = aut_f_target
        .iter()
        .find(|tau| {
            let tau_inv = tau.inverse();
            transported.iter().all(|a| {
                let conj: Vec<u32> = target
                    .iter()
                    .map(|v| {
                        let r = target.rank(tau_inv.apply(v)).expect("inside target");
                        tau.apply(a[r])
                    })
                    .collect();
                aut_s_target.contains(&conj)
            })
        })
        .ok_or_else(|| internal("no conjugating automorphism"))?;
    let alpha = psi.then(tau);
    let phi = f
        .homs_to_carrier(&n_last)?
        .iter()
        .find(|ext| ext.agrees_with(&alpha, last))
        .cloned()
        .ok_or_else(|| internal("extension to N_S(W_n) missing"))?;
    let images: Vec<Subgroup> = chain.iter().map(|w| phi.image_of(w)).collect();
    for (w, img) in chain.iter().zip(&images) {
        if !f.is_fully_normalized(img)? || phi.image_of(&g.normalizer(w, s)) != g.normalizer(img, s)
        {
            return Err(internal("straightened chain fails its post-condition"));
        }
    }
    Ok(StraightenedChain { phi, images })
}

/// Status label used by reports.
pub fn status_label(status: &SaturationStatus) -> &'static str {
    match status {
        SaturationStatus::Unchecked => "unchecked",
        SaturationStatus::Verified => "verified",
        SaturationStatus::Failed(_) => "failed",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testgroups::*;

    fn sys(g: FiniteGroup, p: u32) -> FusionSystem {
        FusionSystem::realize(Arc::new(g), p, None).unwrap()
    }

    #[test]
    fn normal_klein_four_in_sigma4() {
        let f = sys(s4(), 2);
        let g = f.ambient();
        let v = g.o_p(&g.whole(), 2);
        let n = normalizer_system(&f, &v).unwrap();
        assert!(n.same_morphisms(&f).unwrap());
        assert!(is_normal_in_f(&f, &v).unwrap().normal);
        let z = g.center(f.carrier());
        let verdict = is_normal_in_f(&f, &z).unwrap();
        assert!(!verdict.normal);
        assert!(verdict.counterexample.is_some());
        assert_eq!(o_p_of_f(&f).unwrap(), v);
        let nz = normalizer_system(&f, &z).unwrap();
        assert!(nz.is_inner().unwrap());
    }

    #[test]
    fn shortcuts_agree_with_definitions() {
        for (g, p) in [(s4(), 2), (sl23(), 2), (sl23(), 3), (s4(), 3), (a4(), 2)] {
            let f = sys(g, p);
            for q in f.objects() {
                if f.is_fully_normalized(q).unwrap() {
                    let a = normalizer_system(&f, q).unwrap();
                    let b = normalizer_system_by_definition(&f, q).unwrap();
                    assert!(a.same_morphisms(&b).unwrap());
                    assert_eq!(a.status(), &SaturationStatus::Verified);
                }
                if f.is_fully_centralized(q).unwrap() {
                    for kind in [CentralizerKind::Centralizer, CentralizerKind::Mixed] {
                        let a = centralizer_like_system(&f, q, kind).unwrap();
                        let b = centralizer_like_by_definition(&f, q, kind).unwrap();
                        assert!(a.same_morphisms(&b).unwrap(), "{kind:?} {q:?}");
                        assert_eq!(b.verify_axioms(), SaturationStatus::Verified);
                    }
                }
                assert_eq!(
                    is_normal_in_f(&f, q).unwrap().normal,
                    is_normal_in_f_by_definition(&f, q).unwrap().normal
                );
            }
        }
    }

    #[test]
    fn quotient_of_sl23_by_center() {
        let f = sys(sl23(), 2);
        let z = f.ambient().center(f.carrier());
        let fq = quotient_system(&f, &z).unwrap();
        assert_eq!(fq.carrier().order(), 4);
        assert_eq!(fq.aut(fq.carrier()).unwrap().len(), 3);
        assert_eq!(fq.verify_axioms(), SaturationStatus::Verified);
        assert_eq!(o_p_of_f(&f).unwrap().order(), 8);
    }

    #[test]
    fn product_requires_normality() {
        let f = sys(s4(), 2);
        let z = f.ambient().center(f.carrier());
        assert_eq!(
            centralizer_like_system(&f, &z, CentralizerKind::Product).unwrap_err(),
            Error::NotNormalInF
        );
    }

    #[test]
    fn generated_system_recovers_sigma4() {
        let f = sys(s4(), 2);
        let g = f.ambient();
        let q = o_p_of_f(&f).unwrap();
        let r = g.join(&q, &g.centralizer(&q, f.carrier()));
        let f1 = centralizer_like_system(&f, &q, CentralizerKind::Product).unwrap();
        let f2 = normalizer_system(&f, &r).unwrap();
        assert!(f1.is_inner().unwrap());
        let gen = generated_system(&[&f1, &f2]).unwrap();
        assert!(gen.same_morphisms(&f).unwrap());
        let again = generated_system(&[&f]).unwrap();
        assert!(again.same_morphisms(&f).unwrap());
    }

    #[test]
    fn models() {
        let f = sys(s4(), 2);
        let v = f.ambient().o_p(&f.ambient().whole(), 2);
        let m = model_group(&f, &v).unwrap();
        assert_eq!(m.group.order(), 24);
        let f = sys(sl23(), 2);
        let m = model_group(&f, f.carrier()).unwrap();
        assert_eq!(m.group.order(), 24);
        let z = f.ambient().center(f.carrier());
        assert_eq!(model_group(&f, &z).unwrap_err(), Error::NotCentric);
    }

    #[test]
    fn straighten_transposition() {
        let f = sys(s4(), 2);
        let g = f.ambient();
        let w = f
            .objects()
            .iter()
            .find(|q| {
                q.order() == 2
                    && g.normalizer(q, f.carrier()).order() == 4
                    && !g.is_normal_in(q, f.carrier())
                    && f.is_fully_normalized(q).unwrap()
            })
            .unwrap()
            .clone();
        let out = straighten_chain(&f, core::slice::from_ref(&w)).unwrap();
        assert!(f.is_fully_normalized(&out.images[0]).unwrap());
        assert_eq!(g.normalizer(&out.images[0], f.carrier()).order(), 4);
        assert!(straighten_chain(&f, &[]).is_err());
    }
}
