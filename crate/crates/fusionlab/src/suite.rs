//! The full invariant and theorem sweep over catalog groups or group files.

use std::path::PathBuf;
use std::sync::Arc;

use rayon::prelude::*;

use fusionlab_core::fusion::FusionSystem;
use fusionlab_core::{Error, FiniteGroup, Limits};

use crate::cache::{Cache, CacheStats};
use crate::catalog::CATALOG;
use crate::checks::{self, Outcome};
use crate::parse::{parse_group_file, LoadError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Tsv,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub order_cap: usize,
    pub aut_cap: usize,
    pub cache_dir: Option<PathBuf>,
    pub output_format: OutputFormat,
    pub primes: Vec<u32>,
    /// Alperin round trips are limited to carriers of at most this order.
    pub alperin_cap: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let limits = Limits::default();
        Self {
            order_cap: limits.order_cap,
            aut_cap: limits.aut_cap,
            cache_dir: std::env::var_os("FUSIONLAB_CACHE").map(PathBuf::from),
            output_format: OutputFormat::Tsv,
            primes: vec![2, 3],
            alperin_cap: 16,
        }
    }
}

impl RunConfig {
    pub fn limits(&self) -> Limits {
        Limits {
            order_cap: self.order_cap,
            aut_cap: self.aut_cap,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.order_cap == 0 || self.aut_cap == 0 {
            return Err("caps must be positive".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub enum Scope {
    Catalog,
    Files(Vec<PathBuf>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skip => "skip",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub group: String,
    /// `0` for group-level checks.
    pub p: u32,
    pub check: &'static str,
    pub status: Status,
    pub detail: String,
    /// A theorem contradiction or an internal inconsistency.
    pub hard: bool,
}

#[derive(Debug, Clone, Default)]
pub struct SuiteSummary {
    pub rows: Vec<Row>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub contradictions: usize,
    pub cap_exceeded: usize,
    pub cache: CacheStats,
}

impl SuiteSummary {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("group\tp\tcheck\tstatus\tdetail\n");
        for r in &self.rows {
            let p = if r.p == 0 {
                "-".to_string()
            } else {
                r.p.to_string()
            };
            out.push_str(&format!(
                "{}\t{p}\t{}\t{}\t{}\n",
                r.group,
                r.check,
                r.status.as_str(),
                r.detail.replace(['\t', '\n'], " ")
            ));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let p = if r.p == 0 {
                "-".to_string()
            } else {
                r.p.to_string()
            };
            out.push_str(&format!(
                "{:<12} {:>2}  {:<14} {:<4}  {}\n",
                r.group,
                p,
                r.check,
                r.status.as_str(),
                r.detail
            ));
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} skipped, {} contradictions\n",
            self.passed, self.failed, self.skipped, self.contradictions
        ));
        out
    }
}

fn row(group: &FiniteGroup, p: u32, check: &'static str, outcome: Outcome) -> Row {
    let (status, detail, hard) = match outcome {
        Ok((true, d)) => (Status::Pass, d, false),
        Ok((false, d)) => (
            Status::Fail,
            d,
            check.starts_with("theorem") || check == "frobenius" || check == "thompson",
        ),
        Err(e) => (
            Status::Fail,
            e.to_string(),
            matches!(e, Error::InternalInconsistency(_)),
        ),
    };
    Row {
        group: group.name().to_string(),
        p,
        check,
        status,
        detail,
        hard,
    }
}

fn skip(group: &FiniteGroup, p: u32, check: &'static str, why: &str) -> Row {
    Row {
        group: group.name().to_string(),
        p,
        check,
        status: Status::Skip,
        detail: why.to_string(),
        hard: false,
    }
}

/// Group-level checks: the 2-local Σ4 criterion, the O_2 criterion and the
/// simple-section check.
pub fn group_rows(g: &FiniteGroup) -> Vec<Row> {
    let mut rows = vec![row(g, 0, "sigma3-local", checks::sigma3_criterion(g))];
    rows.push(match checks::remark67(g) {
        Ok(Some(v)) => row(g, 0, "o2-criterion", Ok(v)),
        Ok(None) => skip(g, 0, "o2-criterion", "C_G(O_2(G)) not contained in O_2(G)"),
        Err(e) => row(g, 0, "o2-criterion", Err(e)),
    });
    rows.push(row(g, 0, "simple-sections", checks::simple_sections(g)));
    rows
}

/// Every per-prime check for `F_S(G)`.
pub fn instance_rows(
    g: &Arc<FiniteGroup>,
    p: u32,
    pool: &[Arc<FiniteGroup>],
    config: &RunConfig,
    cache: &Cache,
    stats: &mut CacheStats,
) -> Vec<Row> {
    let f = match FusionSystem::realize(g.clone(), p, None) {
        Ok(f) => f,
        Err(e) => return vec![row(g, p, "realize", Err(e))],
    };
    if let Err(e) = cache.ensure_homs(&f, stats) {
        return vec![row(g, p, "realize", Err(e))];
    }
    let mut rows = vec![
        row(g, p, "axioms", checks::axioms(&f)),
        row(g, p, "sylow-criterion", checks::sylow_criterion(&f)),
    ];
    rows.push(if f.carrier().order() <= config.alperin_cap {
        row(g, p, "alperin", checks::alperin_round_trip(&f))
    } else {
        skip(
            g,
            p,
            "alperin",
            &format!("|S| = {} above the round-trip cap", f.carrier().order()),
        )
    });
    rows.push(row(g, p, "essentials", checks::essentials(&f)));
    rows.push(row(g, p, "models", checks::models(&f)));
    rows.push(row(g, p, "h-free", checks::fusion_h_free(&f)));
    rows.push(match checks::generation(&f) {
        Ok(Some(v)) => row(g, p, "generation", Ok(v)),
        Ok(None) => skip(g, p, "generation", "O_p(F) = 1"),
        Err(e) => row(g, p, "generation", Err(e)),
    });
    let family = checks::canonical_family(checks::sylow_group(&f), p, pool);
    match family {
        Ok(fam) => {
            rows.push(row(g, p, "w-functor", checks::w_properties(&fam)));
            if p == 2 {
                rows.push(row(g, p, "theorem-1", checks::theorem_1(&f, &fam)));
            }
            rows.push(row(g, p, "theorem-2", checks::theorem_2(&f, &fam)));
            if p % 2 == 1 {
                rows.push(row(g, p, "theorem-3", checks::theorem_3(&f, &fam)));
                rows.push(row(g, p, "thompson", checks::thompson(g, p, &fam)));
            }
        }
        Err(e) => rows.push(row(g, p, "w-functor", Err(e))),
    }
    rows.push(row(g, p, "frobenius", checks::frobenius(g, p)));
    rows
}

/// Loads the scope's groups. Files that fail to load become failing or
/// skipped rows.
pub fn load_scope(scope: &Scope, config: &RunConfig) -> (Vec<Arc<FiniteGroup>>, Vec<Row>) {
    let limits = config.limits();
    match scope {
        Scope::Catalog => (
            CATALOG
                .iter()
                .map(|e| Arc::new(e.parsed(limits).group))
                .collect(),
            Vec::new(),
        ),
        Scope::Files(paths) => {
            let mut groups = Vec::new();
            let mut rows = Vec::new();
            for path in paths {
                let name = path.display().to_string();
                let status_row = |status, detail: String| Row {
                    group: name.clone(),
                    p: 0,
                    check: "load",
                    status,
                    detail,
                    hard: false,
                };
                match parse_group_file(path, limits) {
                    Ok(pg) => groups.push(Arc::new(pg.group)),
                    Err(LoadError::Group(e @ Error::OrderCapExceeded { .. })) => {
                        rows.push(status_row(Status::Skip, e.to_string()))
                    }
                    Err(e) => rows.push(status_row(Status::Fail, e.to_string())),
                }
            }
            (groups, rows)
        }
    }
}

/// Runs every check on every group of the scope and every configured prime
/// dividing its order. Rows come out in scope order, group checks first.
pub fn run_suite(config: &RunConfig, scope: &Scope) -> SuiteSummary {
    let cache = match &config.cache_dir {
        Some(d) => Cache::at(d),
        None => Cache::disabled(),
    };
    let (groups, mut load_rows) = load_scope(scope, config);
    let mut pool: Vec<Arc<FiniteGroup>> = groups.clone();
    if matches!(scope, Scope::Files(_)) {
        let limits = config.limits();
        pool.extend(CATALOG.iter().map(|e| Arc::new(e.parsed(limits).group)));
    }
    let mut pre_stats = CacheStats::default();
    for g in &groups {
        if let Err(e) = cache.ensure_lattice(g, &mut pre_stats) {
            eprintln!("warning: lattice of {}: {e}", g.name());
        }
    }
    let mut tasks: Vec<(usize, u32)> = Vec::new();
    for (i, g) in groups.iter().enumerate() {
        tasks.push((i, 0));
        for &p in &config.primes {
            if g.order() % p as usize == 0 {
                tasks.push((i, p));
            }
        }
    }
    let results: Vec<(Vec<Row>, CacheStats)> = tasks
        .par_iter()
        .map(|&(i, p)| {
            let g = &groups[i];
            let mut stats = CacheStats::default();
            let rows = if p == 0 {
                group_rows(g)
            } else {
                instance_rows(g, p, &pool, config, &cache, &mut stats)
            };
            (rows, stats)
        })
        .collect();
    let mut summary = SuiteSummary {
        cache: pre_stats,
        ..Default::default()
    };
    summary.rows.append(&mut load_rows);
    for (rows, stats) in results {
        summary.cache.hits += stats.hits;
        summary.cache.misses += stats.misses;
        summary.cache.corrupt += stats.corrupt;
        summary.rows.extend(rows);
    }
    for r in &summary.rows {
        match r.status {
            Status::Pass => summary.passed += 1,
            Status::Fail => summary.failed += 1,
            Status::Skip => summary.skipped += 1,
        }
        if r.hard {
            summary.contradictions += 1;
        }
        if r.detail.contains("exceeds the configured cap") {
            summary.cap_exceeded += 1;
        }
    }
    summary
}
