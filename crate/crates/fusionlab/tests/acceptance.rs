//! One line per acceptance criterion, each with its time budget.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use fusionlab::catalog::CATALOG;
use fusionlab::checks;
use fusionlab::parse::parse_group_str;
use fusionlab::suite::{run_suite, RunConfig, Scope};
use fusionlab_core::fusion::{FusionSystem, SaturationStatus};
use fusionlab_core::hfree::{is_fusion_h_free, remark67_check, sigma3_involvement_check, sigma4};
use fusionlab_core::stellmacher::{compute_w_iterative, CandidateFamily};
use fusionlab_core::subsystems::o_p_of_f;
use fusionlab_core::theorems::{
    frobenius_check, thompson_group_check, verify_theorem_1, verify_theorem_2, verify_theorem_3,
};
use fusionlab_core::{Error, FiniteGroup, Limits};

type Verdict = Result<String, String>;

fn catalog() -> Vec<Arc<FiniteGroup>> {
    CATALOG.iter().map(|e| Arc::new(e.build())).collect()
}

fn systems() -> Vec<FusionSystem> {
    let mut out = Vec::new();
    for g in catalog() {
        for p in [2u32, 3] {
            if g.order() % p as usize == 0 {
                out.push(FusionSystem::realize(g.clone(), p, None).unwrap());
            }
        }
    }
    out
}

fn label(f: &FusionSystem) -> String {
    format!("{} at p = {}", f.ambient().name(), f.p())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Verdict {
    let sys = systems();
    ensure(sys.len() >= 12, || format!("only {} systems", sys.len()))?;
    for f in &sys {
        match f.verify_axioms() {
            SaturationStatus::Verified => {}
            other => return Err(format!("{}: {other:?}", label(f))),
        }
    }
    Ok(format!("{} systems verified", sys.len()))
}

fn criterion_2() -> Verdict {
    let mut n = 0;
    for f in systems() {
        for prof in f.profile_all().map_err(|e| e.to_string())? {
            ensure(prof.sylow_criterion_holds(), || {
                format!("{}: |Q| = {}", label(&f), prof.q.order())
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} subgroups"))
}

fn criterion_3() -> Verdict {
    let mut n = 0;
    for f in systems().iter().filter(|f| f.carrier().order() <= 16) {
        for q in f.objects() {
            for phi in f.homs_to_carrier(q).map_err(|e| e.to_string())? {
                let d = f
                    .alperin_decompose(phi)
                    .map_err(|e| format!("{}: {e}", label(f)))?;
                ensure(
                    d.recompose().images() == phi.images() && d.is_valid_for(f),
                    || format!("{}: round trip differs on |Q| = {}", label(f), q.order()),
                )?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} morphisms"))
}

fn essentials_of(
    name: &str,
    p: u32,
) -> Result<
    (
        Vec<fusionlab_core::Subgroup>,
        BTreeSet<common::Set>,
        Arc<FiniteGroup>,
    ),
    String,
> {
    let g = catalog().into_iter().find(|g| g.name() == name).unwrap();
    let f = FusionSystem::realize(g.clone(), p, None).map_err(|e| e.to_string())?;
    let ours = f.essential_subgroups().map_err(|e| e.to_string())?.all;
    let oracle = common::essential_oracle(&g, &common::to_set(f.carrier()), p as usize);
    Ok((ours, oracle, g))
}

fn criterion_4() -> Verdict {
    let (ours, oracle, g) = essentials_of("S4", 2)?;
    ensure(ours.len() == 1, || format!("S4: {} essentials", ours.len()))?;
    let v = &ours[0];
    ensure(
        v.order() == 4
            && g.is_normal_in(v, &g.whole())
            && g.elem_orders()
                .iter()
                .zip(0..)
                .all(|(&o, x)| !v.contains(x) || o <= 2),
        || "S4: essential is not the normal Klein four group".into(),
    )?;
    let ours_set: BTreeSet<common::Set> = ours.iter().map(common::to_set).collect();
    ensure(ours_set == oracle, || "S4: oracle disagrees".into())?;
    let (ours, oracle, _) = essentials_of("SL(2,3)", 2)?;
    ensure(ours.is_empty() && oracle.is_empty(), || {
        "SL(2,3): essentials found".into()
    })?;
    Ok("S4 -> {V4 normal}, SL(2,3) -> {}, oracle agrees".into())
}

fn criterion_5() -> Verdict {
    let mut n = 0;
    for f in systems() {
        let (ok, detail) = checks::models(&f).map_err(|e| format!("{}: {e}", label(&f)))?;
        ensure(ok, || format!("{}: {detail}", label(&f)))?;
        n += detail
            .split_whitespace()
            .next()
            .unwrap()
            .parse::<usize>()
            .unwrap();
    }
    Ok(format!("{n} models validated"))
}

fn criterion_6() -> Verdict {
    for g in catalog().iter().filter(|g| g.order() <= 216) {
        for r in [
            sigma3_involvement_check(g).map(|_| ()),
            remark67_check(g).map(|_| ()),
        ] {
            if let Err(e @ Error::InternalInconsistency(_)) = r {
                return Err(format!("{}: {e}", g.name()));
            }
        }
    }
    let h = sigma4();
    let find = |name: &str| catalog().into_iter().find(|g| g.name() == name).unwrap();
    let q8 = FusionSystem::realize(find("SL(2,3)"), 2, None).unwrap();
    let d8 = FusionSystem::realize(find("S4"), 2, None).unwrap();
    let a = is_fusion_h_free(&q8, &h).map_err(|e| e.to_string())?;
    let b = is_fusion_h_free(&d8, &h).map_err(|e| e.to_string())?;
    ensure(a.free, || "F_Q8(SL(2,3)) reported not Sigma4-free".into())?;
    ensure(!b.free && b.witness.is_some(), || {
        "F_D8(S4) reported Sigma4-free or without witness".into()
    })?;
    Ok("no inconsistencies; SL(2,3) free, S4 not free with witness".into())
}

fn criterion_7() -> Verdict {
    let pool = catalog();
    let mut n = 0;
    for f in systems() {
        let fam = checks::canonical_family(checks::sylow_group(&f), f.p(), &pool)
            .map_err(|e| e.to_string())?;
        let (ok, detail) = checks::w_properties(&fam).map_err(|e| format!("{}: {e}", label(&f)))?;
        ensure(ok, || format!("{}: {detail}", label(&f)))?;
        n += 1;
    }
    // Growth loop: a forced member that is not Qd(2)-free moves W from A to B.
    let text = "group (C4xC4):S3\nperm 16\n(1 2 3 4)(5 6 7 8)(9 10 11 12)(13 14 15 16)\n\
                (2 5)(3 9)(4 13)(7 10)(8 14)(12 15)\n(2 5 16)(3 9 11)(4 13 6)(7 8 12)(10 15 14)\n";
    let g = Arc::new(
        parse_group_str(text, Limits::default())
            .map_err(|e| e.to_string())?
            .group,
    );
    let f = FusionSystem::realize(g.clone(), 2, None).map_err(|e| e.to_string())?;
    let mut fam = CandidateFamily::new(checks::sylow_group(&f), 2).map_err(|e| e.to_string())?;
    let t = fam.thompson().map_err(|e| e.to_string())?;
    fam.add_forced("forced", f).map_err(|e| e.to_string())?;
    let run = compute_w_iterative(&fam).map_err(|e| e.to_string())?;
    ensure(
        run.chain.len() == 2 && run.w_iter == t.b && t.a != t.b,
        || "growth fixture did not reach B".into(),
    )?;
    let s4 = catalog().into_iter().find(|g| g.name() == "S4").unwrap();
    let f = FusionSystem::realize(s4, 2, None).unwrap();
    let mut fam = CandidateFamily::new(checks::sylow_group(&f), 2).unwrap();
    fam.add_forced("forced", f).unwrap();
    ensure(
        matches!(compute_w_iterative(&fam), Err(Error::SandwichViolated(1))),
        || "forced S4 not rejected".into(),
    )?;
    Ok(format!(
        "{n} Sylows; growth fixture reaches B; sandwich violation detected"
    ))
}

fn criterion_8() -> Verdict {
    let pool = catalog();
    let mut n = 0;
    for f in systems() {
        let g = f.ambient_arc().clone();
        let p = f.p();
        let fam = checks::canonical_family(checks::sylow_group(&f), p, &pool)
            .map_err(|e| e.to_string())?;
        let mut reports = vec![verify_theorem_2(&f, &fam), frobenius_check(&g, p)];
        if p == 2 {
            reports.push(verify_theorem_1(&f, &fam));
        } else {
            reports.push(verify_theorem_3(&f, &fam));
            reports.push(thompson_group_check(&g, p, &fam));
        }
        for r in reports {
            let r = r.map_err(|e| format!("{}: {e}", label(&f)))?;
            ensure(!r.is_contradiction(), || {
                format!("{}: {} contradicted", label(&f), r.id)
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} reports, no contradiction"))
}

fn criterion_9() -> Verdict {
    let mut n = 0;
    for f in systems() {
        if o_p_of_f(&f).map_err(|e| e.to_string())?.is_trivial() {
            continue;
        }
        match checks::generation(&f).map_err(|e| format!("{}: {e}", label(&f)))? {
            Some((true, _)) => n += 1,
            Some((false, d)) => return Err(format!("{}: {d}", label(&f))),
            None => return Err(format!("{}: O_p(F) reported trivial", label(&f))),
        }
    }
    Ok(format!("{n} systems with O_p(F) != 1"))
}

fn criterion_10() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = RunConfig {
        cache_dir: Some(dir.path().to_path_buf()),
        ..RunConfig::default()
    };
    let cold = run_suite(&config, &Scope::Catalog);
    let warm = run_suite(&config, &Scope::Catalog);
    ensure(
        cold.cache.hits == 0 && warm.cache.misses == 0 && warm.cache.hits > 0,
        || format!("cache stats cold {:?}, warm {:?}", cold.cache, warm.cache),
    )?;
    ensure(cold.to_tsv() == warm.to_tsv(), || {
        "TSV reports differ".into()
    })?;
    Ok(format!(
        "{} rows byte-identical, {} cache hits on the warm run",
        warm.rows.len(),
        warm.cache.hits
    ))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Verdict, u64); 10] = [
        ("axiom suite", criterion_1, 60),
        ("fully normalized criterion", criterion_2, 60),
        ("Alperin round trip", criterion_3, 120),
        ("essential subgroup golden values", criterion_4, 10),
        ("model validation", criterion_5, 60),
        ("H-free cross-checks", criterion_6, 120),
        ("W(S) properties", criterion_7, 120),
        ("theorem sweep", criterion_8, 300),
        ("generation and normality propagation", criterion_9, 60),
        ("determinism", criterion_10, 300),
    ];
    let mut failures = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let elapsed = start.elapsed();
        let verdict = match verdict {
            Ok(d) if elapsed <= Duration::from_secs(*budget) => Ok(d),
            Ok(d) => Err(format!("{d}, but took {elapsed:.1?} (budget {budget} s)")),
            Err(e) => Err(e),
        };
        match verdict {
            Ok(d) => println!("criterion {:>2} PASS  {name}: {d} ({elapsed:.2?})", i + 1),
            Err(e) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {e} ({elapsed:.2?})", i + 1);
            }
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}
