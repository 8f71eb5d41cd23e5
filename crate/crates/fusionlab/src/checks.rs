//! Per-instance checks run by the suite. Each returns a pass flag and a short
//! deterministic detail string.

use std::sync::Arc;

use fusionlab_core::fusion::{FusionSystem, SaturationStatus};
use fusionlab_core::hfree::{
    is_fusion_h_free, qd_group, remark67_check, sigma3_involvement_check, sigma4,
    simple_sections_sigma3,
};
use fusionlab_core::iso::subgroups_isomorphic;
use fusionlab_core::stellmacher::{admit_member, functor_checks, CandidateFamily};
use fusionlab_core::subsystems::{
    centralizer_like_system, generated_system, is_normal_in_f, model_group, normalizer_system,
    o_p_of_f, CentralizerKind,
};
use fusionlab_core::theorems::{
    frobenius_check, thompson_group_check, verify_theorem_1, verify_theorem_2, verify_theorem_3,
    TheoremReport,
};
use fusionlab_core::{Error, FiniteGroup};

pub type Outcome = Result<(bool, String), Error>;

pub fn axioms(f: &FusionSystem) -> Outcome {
    Ok(match f.verify_axioms() {
        SaturationStatus::Verified => (true, format!("{} objects", f.objects().len())),
        SaturationStatus::Failed(w) => (false, w.to_string()),
        SaturationStatus::Unchecked => (false, "unchecked".into()),
    })
}

/// Fully normalized iff fully centralized and `Aut_S(Q)` Sylow in `Aut_F(Q)`.
pub fn sylow_criterion(f: &FusionSystem) -> Outcome {
    let profiles = f.profile_all()?;
    let bad = profiles
        .iter()
        .filter(|p| !p.sylow_criterion_holds())
        .count();
    let fully = profiles.iter().filter(|p| p.fully_normalized).count();
    Ok((
        bad == 0,
        format!(
            "{} subgroups, {fully} fully normalized, {bad} violations",
            profiles.len()
        ),
    ))
}

/// Every morphism decomposes and recomposes exactly.
pub fn alperin_round_trip(f: &FusionSystem) -> Outcome {
    let mut count = 0;
    let mut longest = 0;
    for q in f.objects() {
        for phi in f.homs_to_carrier(q)? {
            let d = f.alperin_decompose(phi)?;
            if d.recompose().images() != phi.images() || !d.is_valid_for(f) {
                return Ok((
                    false,
                    format!("round trip failed on a subgroup of order {}", q.order()),
                ));
            }
            longest = longest.max(d.steps());
            count += 1;
        }
    }
    Ok((
        true,
        format!("{count} morphisms, at most {longest} essential step(s)"),
    ))
}

pub fn essentials(f: &FusionSystem) -> Outcome {
    let e = f.essential_subgroups()?;
    let orders: Vec<String> = e.all.iter().map(|q| q.order().to_string()).collect();
    Ok((
        true,
        format!(
            "{} essential ({} fully normalized), orders [{}]",
            e.all.len(),
            e.fully_normalized.len(),
            orders.join(",")
        ),
    ))
}

/// `L_Q` for every centric, fully normalized `Q`.
pub fn models(f: &FusionSystem) -> Outcome {
    let mut count = 0;
    for q in f.objects() {
        if !f.is_centric(q)? || !f.is_fully_normalized(q)? {
            continue;
        }
        let m = model_group(f, q)?;
        let l = &m.group;
        if !l.o_p_prime(&l.whole(), f.p()).is_trivial() {
            return Ok((
                false,
                format!("O_p'(L_Q) nontrivial for |Q| = {}", q.order()),
            ));
        }
        let lz = l.quotient(&m.center_q)?.group;
        let aut = f.automizer(q)?.group;
        if subgroups_isomorphic(&lz, &lz.whole(), &aut, &aut.whole()).is_none() {
            return Ok((
                false,
                format!("L_Q/Z(Q) differs from Aut_F(Q) for |Q| = {}", q.order()),
            ));
        }
        count += 1;
    }
    Ok((true, format!("{count} models")))
}

pub fn fusion_h_free(f: &FusionSystem) -> Outcome {
    let h = if f.p() == 2 {
        sigma4()
    } else {
        qd_group(f.p())?
    };
    let r = is_fusion_h_free(f, &h)?;
    let verdict = if r.free { "free" } else { "not free" };
    let witness = r
        .witness
        .map(|w| {
            format!(
                ", witness |Q| = {} in a model of order {}",
                w.q.map(|q| q.order()).unwrap_or(0),
                w.host_order
            )
        })
        .unwrap_or_default();
    Ok((true, format!("{} {verdict}{witness}", h.name())))
}

pub fn sigma3_criterion(g: &FiniteGroup) -> Outcome {
    let (a, _) = sigma3_involvement_check(g)?;
    Ok((true, format!("Sigma4 involved: {a}")))
}

/// `None` when the hypothesis `C_G(O_2(G)) ≤ O_2(G)` fails.
pub fn remark67(g: &FiniteGroup) -> Result<Option<(bool, String)>, Error> {
    match remark67_check(g) {
        Ok((a, _)) => Ok(Some((true, format!("Sigma4-free: {a}")))),
        Err(Error::HypothesisViolated(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn simple_sections(g: &FiniteGroup) -> Outcome {
    let sections = simple_sections_sigma3(g)?;
    let free = sections.iter().filter(|(_, f)| *f).count();
    Ok((
        free == 0,
        format!(
            "{} nonabelian simple sections, {free} Sigma3-free",
            sections.len()
        ),
    ))
}

/// `F_S(S)` plus `F_S(G)` for every pool group whose Sylow p-subgroup is
/// isomorphic to `S`, in pool order.
pub fn canonical_family(
    s: Arc<FiniteGroup>,
    p: u32,
    pool: &[Arc<FiniteGroup>],
) -> Result<CandidateFamily, Error> {
    let mut fam = CandidateFamily::new(s.clone(), p)?;
    for g in pool {
        let sy = g.sylow(p)?;
        if sy.order() != s.order() {
            continue;
        }
        match admit_member(&s, g.clone(), p) {
            Ok(m) => fam.members.push(m),
            Err(Error::SylowMismatch) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(fam)
}

pub fn sylow_group(f: &FusionSystem) -> Arc<FiniteGroup> {
    let (s, _) = f
        .ambient()
        .subgroup_as_group(f.carrier(), &format!("S_{}({})", f.p(), f.ambient().name()));
    Arc::new(s)
}

pub fn w_properties(family: &CandidateFamily) -> Outcome {
    let r = functor_checks(family)?;
    let admitted = family.admitted().count();
    Ok((
        r.all_hold(),
        format!(
            "|W| = {}, {admitted}/{} admitted, characteristic {}, sandwich {}, normal {}, reorder {}, relabel {}, Aut-closed {}, one-shot equal {}",
            r.w.order(),
            family.members.len(),
            r.iter_characteristic && r.oneshot_characteristic,
            r.in_sandwich,
            r.normal_in_members,
            r.permutation_independent,
            r.realization_independent,
            r.aut_closure_stable,
            r.oneshot_equal
        ),
    ))
}

pub fn theorem_outcome(r: Result<TheoremReport, Error>) -> Outcome {
    let r = r?;
    let hyps: Vec<String> = r
        .hypotheses
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    Ok((
        !r.is_contradiction(),
        format!(
            "hypotheses [{}] conclusion {}; {}",
            hyps.join(", "),
            r.conclusion_holds,
            r.detail.join("; ")
        ),
    ))
}

pub fn theorem_1(f: &FusionSystem, fam: &CandidateFamily) -> Outcome {
    theorem_outcome(verify_theorem_1(f, fam))
}

pub fn theorem_2(f: &FusionSystem, fam: &CandidateFamily) -> Outcome {
    theorem_outcome(verify_theorem_2(f, fam))
}

pub fn theorem_3(f: &FusionSystem, fam: &CandidateFamily) -> Outcome {
    theorem_outcome(verify_theorem_3(f, fam))
}

pub fn thompson(g: &Arc<FiniteGroup>, p: u32, fam: &CandidateFamily) -> Outcome {
    theorem_outcome(thompson_group_check(g, p, fam))
}

pub fn frobenius(g: &Arc<FiniteGroup>, p: u32) -> Outcome {
    theorem_outcome(frobenius_check(g, p))
}

/// `⟨S·C_F(Q), N_F(Q·C_S(Q))⟩ = F` for `Q = O_p(F)`, and normality of every
/// `W ⊴ S` normal in both parts. `None` when `O_p(F) = 1`.
pub fn generation(f: &FusionSystem) -> Result<Option<(bool, String)>, Error> {
    let g = f.ambient();
    let q = o_p_of_f(f)?;
    if q.is_trivial() {
        return Ok(None);
    }
    let r = g.join(&q, &g.centralizer(&q, f.carrier()));
    let f1 = centralizer_like_system(f, &q, CentralizerKind::Product)?;
    let f2 = normalizer_system(f, &r)?;
    let gen = generated_system(&[&f1, &f2])?;
    let equal = gen.same_morphisms(f)?;
    let mut propagated = 0;
    let mut failures = 0;
    for w in f.objects() {
        if !g.is_normal_in(w, f.carrier()) {
            continue;
        }
        if is_normal_in_f(&f1, w)?.normal && is_normal_in_f(&f2, w)?.normal {
            if is_normal_in_f(&gen, w)?.normal {
                propagated += 1;
            } else {
                failures += 1;
            }
        }
    }
    Ok(Some((
        equal && failures == 0,
        format!(
            "|O_p(F)| = {}, |R| = {}, generated = F: {equal}, {propagated} normal subgroups propagate, {failures} fail",
            q.order(),
            r.order()
        ),
    )))
}
