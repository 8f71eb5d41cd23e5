use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use fusionlab::catalog::{lookup, validate, CATALOG};
use fusionlab::checks::canonical_family;
use fusionlab::parse::{
    format_group, parse_group_file, parse_group_str, parse_subgroup_spec, LoadError, ParsedGroup,
};
use fusionlab::suite::{run_suite, OutputFormat, RunConfig, Scope};
use fusionlab_core::fusion::FusionSystem;
use fusionlab_core::hfree::{is_fusion_h_free, is_group_h_free, qd_group, sigma4};
use fusionlab_core::pgroup::thompson_data;
use fusionlab_core::stellmacher::{
    admit_member, compute_w_iterative, functor_checks, CandidateFamily,
};
use fusionlab_core::subsystems::{
    centralizer_like_system, normalizer_system, quotient_system, status_label, CentralizerKind,
};
use fusionlab_core::theorems::{
    frobenius_check, thompson_group_check, verify_theorem_1, verify_theorem_2, verify_theorem_3,
    TheoremReport,
};
use fusionlab_core::{Error, FiniteGroup, GroupMorphism, Limits, Subgroup};

#[derive(Parser)]
#[command(
    name = "fusionlab",
    version,
    about = "Fusion systems of finite groups at desk scale"
)]
struct Cli {
    /// Largest group order accepted.
    #[arg(long, global = true, default_value_t = 1000)]
    order_cap: usize,
    /// Largest order of a group whose automorphisms are enumerated.
    #[arg(long, global = true, default_value_t = 256)]
    aut_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Normalizer,
    Centralizer,
    Mixed,
    Product,
    Quotient,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    Frobenius,
    Thompson,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Order statistics, center, derived subgroup, Sylow and O_p orders.
    Analyze { group: String },
    /// J(S), A(S) = Ω(Z(S)) and B(S) = Ω(Z(J(S))) for a Sylow p-subgroup.
    Jthompson { group: String, p: u32 },
    /// Subgroup classification of F_S(G).
    Fusion {
        group: String,
        p: u32,
        #[arg(long)]
        profile_all: bool,
        #[arg(long)]
        essentials: bool,
        /// Two subgroup specs P and R.
        #[arg(long, num_args = 2, value_names = ["P", "R"])]
        dump_homs: Option<Vec<String>>,
    },
    /// A normalizer, centralizer, mixed, product or quotient subsystem.
    Subsystem {
        group: String,
        p: u32,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Comma-separated generator words.
        #[arg(long)]
        q: String,
    },
    /// Whether G and F_S(G) are H-free.
    Hfree {
        group: String,
        p: u32,
        /// `sigma4`, `qd3`, a catalog name or a group file.
        #[arg(long, default_value = "sigma4")]
        h: String,
    },
    /// W(S) over a family of groups with Sylow p-subgroup isomorphic to S.
    Wcompute {
        sylow: String,
        p: u32,
        #[arg(long, num_args = 1..)]
        family: Vec<String>,
        /// Add every catalog group with a matching Sylow subgroup.
        #[arg(long)]
        catalog: bool,
    },
    /// Checks one theorem on one group.
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: u32,
        #[arg(long, num_args = 1..)]
        family: Vec<String>,
        /// Where a contradiction witness is written.
        #[arg(long, default_value = "fusionlab-witness.txt")]
        witness: PathBuf,
    },
    /// The full invariant and theorem sweep.
    Suite {
        /// Group files; the catalog when empty.
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides FUSIONLAB_CACHE.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        no_cache: bool,
    },
    /// Lists the catalog, or prints one entry as a group file.
    Catalog {
        #[arg(long)]
        emit: Option<String>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Cap(String),
    Contradiction(String),
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Group(e) => e.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OrderCapExceeded { .. } => Failure::Cap(e.to_string()),
            Error::InternalInconsistency(_) => Failure::Contradiction(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Out = Result<(), Failure>;

/// A group file path, or a catalog name.
fn load(arg: &str, limits: Limits) -> Result<ParsedGroup, Failure> {
    let path = Path::new(arg);
    if path.exists() {
        return Ok(parse_group_file(path, limits)?);
    }
    match lookup(arg.trim_start_matches("catalog:")) {
        Some(e) => Ok(parse_group_str(&e.file_text(), limits)?),
        None => Err(Failure::Usage(format!(
            "{arg}: no such file or catalog entry"
        ))),
    }
}

fn gens(g: &FiniteGroup, h: &Subgroup) -> String {
    let labels: Vec<String> = g
        .generating_set(h)
        .iter()
        .map(|&x| g.element_label(x))
        .collect();
    format!("<{}>", labels.join(", "))
}

fn describe(g: &FiniteGroup, h: &Subgroup) -> String {
    format!("order {} {}", h.order(), gens(g, h))
}

fn analyze(pg: &ParsedGroup) -> Out {
    let g = &pg.group;
    let whole = g.whole();
    println!("group {} of order {}", g.name(), g.order());
    let hist: Vec<String> = g
        .order_histogram(&whole)
        .iter()
        .map(|(o, c)| format!("{o}:{c}"))
        .collect();
    println!("element orders {}", hist.join(" "));
    println!("center {}", describe(g, &g.center(&whole)));
    println!("derived {}", describe(g, &g.derived(&whole)));
    println!(
        "abelian {}, solvable {}",
        g.is_abelian(&whole),
        g.is_solvable(&whole)
    );
    println!("subgroups {}", g.subgroup_lattice()?.len());
    let mut n = g.order();
    let mut p = 2;
    while n > 1 {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            let s = g.sylow(p as u32)?;
            println!(
                "p = {p}: Sylow {}, O_p {}, O_p' order {}",
                describe(g, &s),
                g.o_p(&whole, p as u32).order(),
                g.o_p_prime(&whole, p as u32).order()
            );
        }
        p += 1;
    }
    Ok(())
}

fn jthompson(pg: &ParsedGroup, p: u32) -> Out {
    let g = &pg.group;
    let s = g.sylow(p)?;
    let t = thompson_data(g, &s, p)?;
    println!("S {}", describe(g, &s));
    println!(
        "largest abelian order {} ({} subgroups)",
        t.max_abelian_order,
        t.max_abelian_subgroups.len()
    );
    println!("J {}", describe(g, &t.j));
    println!("A {}", describe(g, &t.a));
    println!("B {}", describe(g, &t.b));
    Ok(())
}

fn print_homs(maps: &[GroupMorphism]) {
    for m in maps {
        let images: Vec<String> = m.images().iter().map(|x| x.to_string()).collect();
        println!("  {} -> [{}]", m.domain().order(), images.join(" "));
    }
}

fn fusion(
    pg: &ParsedGroup,
    p: u32,
    profile_all: bool,
    essentials: bool,
    dump: Option<Vec<String>>,
) -> Out {
    let g = Arc::new(pg.group.clone());
    let f = FusionSystem::realize(g.clone(), p, None)?;
    println!(
        "F_S({}) on S of order {}, {} subgroups",
        g.name(),
        f.carrier().order(),
        f.objects().len()
    );
    println!("axioms {}", status_label(&f.verify_axioms()));
    if profile_all || !essentials && dump.is_none() {
        println!("order\tfull-norm\tfull-cent\tcentric\tradical\tessential\t|Aut_F|\t|Aut_S|\t|Out_F|\tgenerators");
        for prof in f.profile_all()? {
            println!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                prof.q.order(),
                prof.fully_normalized,
                prof.fully_centralized,
                prof.centric,
                prof.radical,
                prof.essential,
                prof.aut_f_order,
                prof.aut_s_order,
                prof.out_f_order,
                gens(&g, &prof.q)
            );
        }
    }
    if essentials {
        let e = f.essential_subgroups()?;
        println!("essential subgroups: {}", e.all.len());
        for q in &e.all {
            println!(
                "  {} fully normalized {}",
                describe(&g, q),
                e.fully_normalized.contains(q)
            );
        }
    }
    if let Some(specs) = dump {
        let p_sub =
            parse_subgroup_spec(pg, &specs[0]).map_err(|e| Failure::Usage(e.to_string()))?;
        let r_sub =
            parse_subgroup_spec(pg, &specs[1]).map_err(|e| Failure::Usage(e.to_string()))?;
        let maps = f.hom_set(&p_sub, &r_sub)?;
        println!(
            "Hom_F(P, R): {} maps; domain members [{}]",
            maps.len(),
            p_sub
                .to_members()
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        );
        print_homs(&maps);
    }
    Ok(())
}

fn subsystem(pg: &ParsedGroup, p: u32, kind: Kind, q: &str) -> Out {
    let g = Arc::new(pg.group.clone());
    let f = FusionSystem::realize(g.clone(), p, None)?;
    let q = parse_subgroup_spec(pg, q).map_err(|e| Failure::Usage(e.to_string()))?;
    let sub = match kind {
        Kind::Normalizer => normalizer_system(&f, &q)?,
        Kind::Centralizer => centralizer_like_system(&f, &q, CentralizerKind::Centralizer)?,
        Kind::Mixed => centralizer_like_system(&f, &q, CentralizerKind::Mixed)?,
        Kind::Product => centralizer_like_system(&f, &q, CentralizerKind::Product)?,
        Kind::Quotient => quotient_system(&f, &q)?,
    };
    println!("Q {}", describe(&g, &q));
    println!(
        "carrier of order {}, {} subgroups, status {}",
        sub.carrier().order(),
        sub.objects().len(),
        status_label(sub.status())
    );
    let mut total = 0;
    for obj in sub.objects() {
        total += sub.homs_to_carrier(obj)?.len();
    }
    println!(
        "{total} morphisms into the carrier; inner: {}",
        sub.is_inner()?
    );
    Ok(())
}

fn hfree(pg: &ParsedGroup, p: u32, h: &str, limits: Limits) -> Out {
    let hg = match h {
        "sigma4" => sigma4(),
        "qd3" => qd_group(3)?,
        other => load(other, limits)?.group,
    };
    let g = Arc::new(pg.group.clone());
    let gr = is_group_h_free(&g, &hg)?;
    println!("{} is {}-free: {}", g.name(), hg.name(), gr.free);
    if let Some(w) = gr.witness {
        println!(
            "  section {} / {}",
            describe(&g, &w.section.upper),
            describe(&g, &w.section.lower)
        );
    }
    let f = FusionSystem::realize(g.clone(), p, None)?;
    let fr = is_fusion_h_free(&f, &hg)?;
    println!(
        "F_S({}) is {}-free: {} ({} models inspected)",
        g.name(),
        hg.name(),
        fr.free,
        fr.checked.len()
    );
    if let Some(w) = fr.witness {
        let q = w.q.expect("fusion witness names Q");
        println!(
            "  Q {} with a model of order {}",
            describe(&g, &q),
            w.host_order
        );
    }
    Ok(())
}

fn build_family(
    s_arg: &str,
    p: u32,
    family: &[String],
    catalog: bool,
    limits: Limits,
) -> Result<CandidateFamily, Failure> {
    let sg = load(s_arg, limits)?.group;
    let s_whole = sg.whole();
    let s = if sg.is_p_group(&s_whole, p) {
        Arc::new(sg)
    } else {
        let sy = sg.sylow(p)?;
        Arc::new(
            sg.subgroup_as_group(&sy, &format!("S_{p}({})", sg.name()))
                .0,
        )
    };
    let mut pool: Vec<Arc<FiniteGroup>> = Vec::new();
    for f in family {
        pool.push(Arc::new(load(f, limits)?.group));
    }
    if catalog {
        let mut fam = canonical_family(s.clone(), p, &[])?;
        for g in &pool {
            fam.members.push(admit_member(&s, g.clone(), p)?);
        }
        let cat: Vec<Arc<FiniteGroup>> = CATALOG
            .iter()
            .map(|e| Arc::new(e.parsed(limits).group))
            .collect();
        let extra = canonical_family(s, p, &cat)?;
        fam.members.extend(extra.members.into_iter().skip(1));
        Ok(fam)
    } else {
        let mut fam = CandidateFamily::new(s.clone(), p)?;
        for g in &pool {
            fam.members.push(admit_member(&s, g.clone(), p)?);
        }
        Ok(fam)
    }
}

fn wcompute(s_arg: &str, p: u32, family: &[String], catalog: bool, limits: Limits) -> Out {
    let fam = build_family(s_arg, p, family, catalog, limits)?;
    let s = &fam.s;
    println!("S of order {}", s.order());
    for (i, m) in fam.members.iter().enumerate() {
        let verdict = if m.admitted() {
            "admitted".to_string()
        } else {
            format!("rejected: {}", m.rejection.as_deref().unwrap_or(""))
        };
        println!(
            "  [{i}] {} J normal {}, Qd-free {}, {verdict}",
            m.label, m.flags.j_normal, m.flags.qd_free
        );
    }
    let run = compute_w_iterative(&fam)?;
    for (i, w) in run.chain.iter().enumerate() {
        println!("W_{i} {}", describe(s, w));
        if let Some(step) = run.witnesses.get(i) {
            println!(
                "  not normal in [{}] {}; orbit of {} subgroup(s)",
                step.member,
                step.label,
                step.orbit.len()
            );
        }
    }
    println!("W {}", describe(s, &run.w_iter));
    println!(
        "one-shot W {} (equal: {})",
        describe(s, &run.w_oneshot),
        run.equal
    );
    let r = functor_checks(&fam)?;
    println!(
        "characteristic {} / {}, nontrivial {}, sandwich {}, normal in members {}, reorder {}, relabel {}, Aut-closed {}",
        r.iter_characteristic, r.oneshot_characteristic, r.nontrivial, r.in_sandwich, r.normal_in_members,
        r.permutation_independent, r.realization_independent, r.aut_closure_stable
    );
    Ok(())
}

fn print_report(r: &TheoremReport) {
    println!("{} on {}", r.id, r.instance);
    for (k, v) in &r.hypotheses {
        println!("  hypothesis {k}: {v}");
    }
    println!(
        "  hypotheses hold: {}, conclusion holds: {}",
        r.hypotheses_hold, r.conclusion_holds
    );
    for d in &r.detail {
        println!("  {d}");
    }
}

fn verify(
    theorem: Theorem,
    group: &str,
    p: u32,
    family: &[String],
    witness: &Path,
    limits: Limits,
) -> Out {
    let g = Arc::new(load(group, limits)?.group);
    let dump = |msg: &str| {
        let _ = std::fs::write(witness, format!("{msg}\n"));
        Failure::Contradiction(format!("{msg} (witness written to {})", witness.display()))
    };
    let result = match theorem {
        Theorem::Frobenius => frobenius_check(&g, p),
        _ => {
            let f = FusionSystem::realize(g.clone(), p, None)?;
            let (s, _) = g.subgroup_as_group(f.carrier(), "S");
            let mut fam = CandidateFamily::new(Arc::new(s), p)?;
            for name in family {
                fam.members.push(admit_member(
                    &fam.s,
                    Arc::new(load(name, limits)?.group),
                    p,
                )?);
            }
            match theorem {
                Theorem::One => verify_theorem_1(&f, &fam),
                Theorem::Two => verify_theorem_2(&f, &fam),
                Theorem::Three => verify_theorem_3(&f, &fam),
                Theorem::Thompson => thompson_group_check(&g, p, &fam),
                Theorem::Frobenius => unreachable!(),
            }
        }
    };
    match result {
        Ok(r) => {
            print_report(&r);
            if r.is_contradiction() {
                return Err(dump(&format!("{r:#?}")));
            }
            Ok(())
        }
        Err(e @ Error::InternalInconsistency(_)) => Err(dump(&e.to_string())),
        Err(e) => Err(e.into()),
    }
}

fn suite(
    cli: &Cli,
    files: &[PathBuf],
    format: Format,
    out: Option<&Path>,
    cache_dir: Option<&Path>,
    no_cache: bool,
) -> Out {
    validate().map_err(|e| Failure::Contradiction(format!("catalog self-check failed: {e}")))?;
    let mut config = RunConfig {
        order_cap: cli.order_cap,
        aut_cap: cli.aut_cap,
        output_format: match format {
            Format::Text => OutputFormat::Text,
            Format::Tsv => OutputFormat::Tsv,
        },
        ..RunConfig::default()
    };
    if let Some(d) = cache_dir {
        config.cache_dir = Some(d.to_path_buf());
    }
    if no_cache {
        config.cache_dir = None;
    }
    config.validate().map_err(Failure::Usage)?;
    let scope = if files.is_empty() {
        Scope::Catalog
    } else {
        Scope::Files(files.to_vec())
    };
    let summary = run_suite(&config, &scope);
    let text = match config.output_format {
        OutputFormat::Text => summary.to_text(),
        OutputFormat::Tsv => summary.to_tsv(),
    };
    match out {
        Some(path) => {
            let tmp = path.with_extension("tmp");
            std::fs::write(&tmp, &text)
                .and_then(|_| std::fs::rename(&tmp, path))
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            eprintln!(
                "{} passed, {} failed, {} skipped, {} contradictions",
                summary.passed, summary.failed, summary.skipped, summary.contradictions
            );
        }
        None => print!("{text}"),
    }
    if summary.contradictions > 0 || summary.failed > summary.cap_exceeded {
        return Err(Failure::Contradiction(format!(
            "{} failing rows",
            summary.failed
        )));
    }
    if summary.cap_exceeded > 0 {
        return Err(Failure::Cap(format!(
            "{} rows exceeded a cap",
            summary.cap_exceeded
        )));
    }
    Ok(())
}

fn catalog(emit: Option<&str>) -> Out {
    match emit {
        Some(name) => {
            let e = lookup(name)
                .ok_or_else(|| Failure::Usage(format!("{name}: not in the catalog")))?;
            print!("{}", format_group(&e.build()));
        }
        None => {
            for e in CATALOG {
                println!("{:<12} {:>4}  {}", e.name, e.order, e.note);
            }
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Out {
    let limits = Limits {
        order_cap: cli.order_cap,
        aut_cap: cli.aut_cap,
    };
    match &cli.command {
        Command::Analyze { group } => analyze(&load(group, limits)?),
        Command::Jthompson { group, p } => jthompson(&load(group, limits)?, *p),
        Command::Fusion {
            group,
            p,
            profile_all,
            essentials,
            dump_homs,
        } => fusion(
            &load(group, limits)?,
            *p,
            *profile_all,
            *essentials,
            dump_homs.clone(),
        ),
        Command::Subsystem { group, p, kind, q } => subsystem(&load(group, limits)?, *p, *kind, q),
        Command::Hfree { group, p, h } => hfree(&load(group, limits)?, *p, h, limits),
        Command::Wcompute {
            sylow,
            p,
            family,
            catalog,
        } => wcompute(sylow, *p, family, *catalog, limits),
        Command::Verify {
            theorem,
            group,
            p,
            family,
            witness,
        } => verify(*theorem, group, *p, family, witness, limits),
        Command::Suite {
            files,
            format,
            out,
            cache_dir,
            no_cache,
        } => suite(
            cli,
            files,
            *format,
            out.as_deref(),
            cache_dir.as_deref(),
            *no_cache,
        ),
        Command::Catalog { emit } => catalog(emit.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Contradiction(m)) => {
            eprintln!("contradiction: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("cap exceeded: {m}");
            ExitCode::from(3)
        }
    }
}
