//! Verification harnesses for the normalizer theorems on `W(S)` and the
//! Frobenius and Thompson normal complement criteria.
//!
//! Each harness computes hypotheses and conclusion independently; nothing
//! is assumed from the theorem under test.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::fusion::FusionSystem;
use crate::group::{p_part, FiniteGroup, Subgroup};
use crate::hfree::{is_fusion_h_free, qd_group, sigma4};
use crate::stellmacher::{
    admit_system, compute_w_iterative, identification, CandidateFamily, WComputation,
};
use crate::subsystems::{is_normal_in_f, model_group, normalizer_system, o_p_of_f};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    /// `F = N_F(W(S))` for Σ4-free `F`, `p = 2`.
    T1,
    /// `F = N_F(W(S))` for `Qd(p)`-free `F`.
    T2,
    /// `F = F_S(S)` iff `N_F(W(S)) = F_S(S)`, `p` odd.
    T3,
    Frobenius,
    Thompson,
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremId::T1 => "T1",
            TheoremId::T2 => "T2",
            TheoremId::T3 => "T3",
            TheoremId::Frobenius => "Frobenius",
            TheoremId::Thompson => "Thompson",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub id: TheoremId,
    pub instance: String,
    pub hypotheses: Vec<(String, bool)>,
    pub hypotheses_hold: bool,
    pub conclusion_holds: bool,
    pub detail: Vec<String>,
}

impl TheoremReport {
    fn new(id: TheoremId, instance: String) -> Self {
        Self {
            id,
            instance,
            hypotheses: Vec::new(),
            hypotheses_hold: true,
            conclusion_holds: true,
            detail: Vec::new(),
        }
    }

    fn hypothesis(&mut self, name: &str, holds: bool) {
        self.hypotheses.push((name.to_string(), holds));
        self.hypotheses_hold &= holds;
    }

    /// Hypotheses hold and the conclusion fails.
    pub fn is_contradiction(&self) -> bool {
        self.hypotheses_hold && !self.conclusion_holds
    }
}

fn instance_name(f: &FusionSystem) -> String {
    format!("F_S({}), p = {}", f.ambient().name(), f.p())
}

/// `W(S)` over the family, with `F` added when it is admitted; returns the
/// computation and the image of `W` in the carrier of `F`.
pub fn w_for(f: &FusionSystem, family: &CandidateFamily) -> Result<(WComputation, Subgroup)> {
    let member = admit_system(&family.s, f.clone())?;
    let mut fam = family.clone();
    if member.admitted() {
        fam.members.push(member.clone());
    }
    let run = compute_w_iterative(&fam)?;
    let w = member.push(&run.w_iter);
    Ok((run, w))
}

fn normalizer_conclusion(
    report: &mut TheoremReport,
    f: &FusionSystem,
    family: &CandidateFamily,
) -> Result<Subgroup> {
    let (run, w) = w_for(f, family)?;
    let normal = is_normal_in_f(f, &w)?;
    report.conclusion_holds = normal.normal;
    report.detail.push(format!(
        "W of order {} after {} growth step(s)",
        w.order(),
        run.chain.len() - 1
    ));
    if let Some(phi) = normal.counterexample {
        report.detail.push(format!(
            "no W-preserving extension of a map on a subgroup of order {}",
            phi.domain().order()
        ));
    }
    Ok(w)
}

/// At `p = 2`: a Σ4-free `F` has `W(S)` normal in `F`. When `O_2(F)` is
/// centric the check is repeated in the model.
pub fn verify_theorem_1(f: &FusionSystem, family: &CandidateFamily) -> Result<TheoremReport> {
    if f.p() != 2 {
        return Err(Error::UnsupportedPrime(f.p()));
    }
    let mut report = TheoremReport::new(TheoremId::T1, instance_name(f));
    let free = is_fusion_h_free(f, &sigma4())?;
    report.hypothesis("Sigma4-free", free.free);
    let w = normalizer_conclusion(&mut report, f, family)?;

    let q = o_p_of_f(f)?;
    let constrained = f.is_centric(&q)?;
    report.detail.push(format!(
        "O_2(F) of order {}, constrained: {constrained}",
        q.order()
    ));
    if free.free && constrained {
        // the model route: W transported into L_Q must be normal in F_S(L_Q)
        let model = model_group(f, &q)?;
        let l = Arc::new(model.group);
        let fl = FusionSystem::realize(l.clone(), 2, Some(model.sylow))?;
        let iota = identification(&family.s, &l, fl.carrier())?;
        let back = family_member_view(f, family)?;
        let w_s: Vec<u32> = w.iter().map(|x| back[x as usize]).collect();
        let w_l = l.generate(&w_s.iter().map(|&x| iota[x as usize]).collect::<Vec<_>>());
        let via_model = is_normal_in_f(&fl, &w_l)?.normal;
        report
            .detail
            .push(format!("W normal in the model's system: {via_model}"));
        report.conclusion_holds &= via_model;
    }
    Ok(report)
}

/// For each element of the ambient group of `F`, its preimage in `S` (only
/// meaningful on the carrier).
fn family_member_view(f: &FusionSystem, family: &CandidateFamily) -> Result<Vec<u32>> {
    let iota = identification(&family.s, f.ambient(), f.carrier())?;
    let mut back = alloc::vec![u32::MAX; f.ambient().order()];
    for (x, &y) in iota.iter().enumerate() {
        back[y as usize] = x as u32;
    }
    Ok(back)
}

/// `W(S)` normal in a Qd(p)-free `F`; delegates to
/// [`verify_theorem_1`] at `p = 2`.
pub fn verify_theorem_2(f: &FusionSystem, family: &CandidateFamily) -> Result<TheoremReport> {
    if f.p() == 2 {
        let mut r = verify_theorem_1(f, family)?;
        r.id = TheoremId::T2;
        return Ok(r);
    }
    let mut report = TheoremReport::new(TheoremId::T2, instance_name(f));
    let qd = qd_group(f.p())?;
    report.hypothesis(
        &format!("Qd({})-free", f.p()),
        is_fusion_h_free(f, &qd)?.free,
    );
    normalizer_conclusion(&mut report, f, family)?;
    Ok(report)
}

/// `|O_{p'}(H)|` equals the p'-part of `|H|`.
pub fn has_normal_p_complement_in(g: &FiniteGroup, h: &Subgroup, p: u32) -> bool {
    g.o_p_prime(h, p).order() * p_part(h.order(), p) == h.order()
}

pub fn has_normal_p_complement(g: &FiniteGroup, p: u32) -> bool {
    has_normal_p_complement_in(g, &g.whole(), p)
}

fn disagreement(what: &str, instance: &str, values: &[(&str, bool)]) -> Error {
    let listed: Vec<String> = values.iter().map(|(k, v)| format!("{k}={v}")).collect();
    Error::InternalInconsistency(format!(
        "{what} disagrees on {instance}: {}",
        listed.join(", ")
    ))
}

/// The four Frobenius conditions, which must agree.
pub fn frobenius_check(g: &Arc<FiniteGroup>, p: u32) -> Result<TheoremReport> {
    let whole = g.whole();
    let s = g.sylow(p)?;
    let instance = format!("{}, p = {p}", g.name());
    let mut report = TheoremReport::new(TheoremId::Frobenius, instance.clone());
    let a = has_normal_p_complement(g, p);
    let mut b = true;
    let mut c = true;
    for q in g.lattice_within(&s)?.iter().filter(|q| !q.is_trivial()) {
        let n = g.normalizer(q, &whole);
        let index = n.order() / g.centralizer(q, &n).order();
        b &= p_part(index, p) == index;
        c &= has_normal_p_complement_in(g, &n, p);
    }
    let f = FusionSystem::realize(g.clone(), p, Some(s.clone()))?;
    let d = match f.first_difference(&FusionSystem::inner(g.clone(), s, p)?)? {
        None => true,
        Some(q) => {
            report.detail.push(format!(
                "hom-sets differ first on a subgroup of order {}",
                q.order()
            ));
            false
        }
    };
    let values = [("(a)", a), ("(b)", b), ("(c)", c), ("(d)", d)];
    for (k, v) in values {
        report.detail.push(format!("{k} {v}"));
    }
    if !(a == b && b == c && c == d) {
        return Err(disagreement("Frobenius criterion", &instance, &values));
    }
    report.detail.insert(0, format!("all conditions {a}"));
    Ok(report)
}

/// For odd `p`: fusion-triviality of `F` against that of
/// `N_F(W(S))`.
pub fn verify_theorem_3(f: &FusionSystem, family: &CandidateFamily) -> Result<TheoremReport> {
    if f.p() == 2 {
        return Err(Error::UnsupportedPrime(2));
    }
    let instance = instance_name(f);
    let mut report = TheoremReport::new(TheoremId::T3, instance.clone());
    let (_, w) = w_for(f, family)?;
    let trivial = f.is_inner()?;
    let n = normalizer_system(f, &w)?;
    let n_trivial = n.carrier() == f.carrier() && n.is_inner()?;
    report.detail.push(format!(
        "W of order {}; F trivial: {trivial}; N_F(W) trivial: {n_trivial}",
        w.order()
    ));
    if trivial != n_trivial {
        return Err(disagreement(
            "F = F_S(S) iff N_F(W) = F_S(S)",
            &instance,
            &[("F trivial", trivial), ("N_F(W) trivial", n_trivial)],
        ));
    }
    Ok(report)
}

/// Normal p-complement in `G` against one in `N_G(W(S))`, `p` odd.
pub fn thompson_group_check(
    g: &Arc<FiniteGroup>,
    p: u32,
    family: &CandidateFamily,
) -> Result<TheoremReport> {
    if p == 2 {
        return Err(Error::UnsupportedPrime(2));
    }
    let instance = format!("{}, p = {p}", g.name());
    let mut report = TheoremReport::new(TheoremId::Thompson, instance.clone());
    let f = FusionSystem::realize(g.clone(), p, None)?;
    let (_, w) = w_for(&f, family)?;
    let n = g.normalizer(&w, &g.whole());
    let left = has_normal_p_complement(g, p);
    let right = has_normal_p_complement_in(g, &n, p);
    report.detail.push(format!(
        "W of order {}, N_G(W) of order {}; complements: G {left}, N_G(W) {right}",
        w.order(),
        n.order()
    ));
    if left != right {
        return Err(disagreement(
            "Thompson criterion",
            &instance,
            &[("G", left), ("N_G(W)", right)],
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testgroups::*;

    fn setup(g: FiniteGroup, p: u32) -> (FusionSystem, CandidateFamily) {
        let g = Arc::new(g);
        let f = FusionSystem::realize(g.clone(), p, None).unwrap();
        let (s, _) = g.subgroup_as_group(f.carrier(), "S");
        (f, CandidateFamily::new(Arc::new(s), p).unwrap())
    }

    #[test]
    fn theorem_1_instances() {
        let (f, fam) = setup(sl23(), 2);
        let r = verify_theorem_1(&f, &fam).unwrap();
        assert!(r.hypotheses_hold && r.conclusion_holds, "{r:?}");

        let (f, fam) = setup(s4(), 2);
        let r = verify_theorem_1(&f, &fam).unwrap();
        assert!(!r.hypotheses_hold);
        assert!(!r.conclusion_holds);

        let (f, fam) = setup(a4(), 2);
        let r = verify_theorem_1(&f, &fam).unwrap();
        assert!(r.hypotheses_hold && r.conclusion_holds, "{r:?}");
        assert!(r.detail[0].contains("order 4"));
    }

    #[test]
    fn theorem_2_odd_and_delegated() {
        let (f, fam) = setup(s3(), 3);
        let r = verify_theorem_2(&f, &fam).unwrap();
        assert!(r.hypotheses_hold && r.conclusion_holds);
        let (f, fam) = setup(sl23(), 2);
        let r2 = verify_theorem_2(&f, &fam).unwrap();
        let r1 = verify_theorem_1(&f, &fam).unwrap();
        assert_eq!(r2.conclusion_holds, r1.conclusion_holds);
        assert_eq!(r2.id, TheoremId::T2);
    }

    #[test]
    fn complements() {
        assert!(has_normal_p_complement(&s3(), 2));
        assert!(!has_normal_p_complement(&s3(), 3));
        assert!(has_normal_p_complement(&a4(), 3));
        assert!(!has_normal_p_complement(&a4(), 2));
    }

    #[test]
    fn frobenius_instances() {
        for (g, p) in [(s3(), 2), (s4(), 2), (a4(), 3), (sl23(), 3), (d8(), 2)] {
            frobenius_check(&Arc::new(g), p).unwrap();
        }
        let r = frobenius_check(&Arc::new(s4()), 2).unwrap();
        assert_eq!(r.detail[0], "all conditions false");
    }

    #[test]
    fn theorem_3_and_thompson() {
        for g in [a4(), s3(), sl23()] {
            let (f, fam) = setup(g, 3);
            verify_theorem_3(&f, &fam).unwrap();
            thompson_group_check(f.ambient_arc(), 3, &fam).unwrap();
        }
        let (f, fam) = setup(s3(), 3);
        assert!(verify_theorem_3(&f, &fam).unwrap().detail[0].contains("F trivial: false"));
    }
}
