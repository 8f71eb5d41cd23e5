use std::fs;

use fusionlab::cache::{table_hash, Cache, CacheStats};
use fusionlab::catalog::{lookup, CATALOG};
use fusionlab::parse::{
    format_group, parse_group_file, parse_group_str, parse_subgroup_spec, LoadError,
};
use fusionlab::suite::{run_suite, RunConfig, Scope, Status};
use fusionlab_core::{Error, Limits};

#[test]
fn every_catalog_entry_round_trips_through_the_file_format() {
    for e in CATALOG {
        let g = e.build();
        let again = parse_group_str(&format_group(&g), Limits::default())
            .unwrap()
            .group;
        assert_eq!(g.table(), again.table(), "{}", e.name);
    }
}

#[test]
fn parse_errors_carry_positions() {
    let err = parse_group_str("group X\nperm 4\n(1 2)(3 5)\n", Limits::default()).unwrap_err();
    match err {
        LoadError::Parse(e) => assert_eq!(e.line, 3),
        other => panic!("unexpected {other:?}"),
    }
    let err = parse_group_str("group X\nperm 4\n(1 2\n", Limits::default()).unwrap_err();
    assert!(err.to_string().contains("unterminated"), "{err}");
}

#[test]
fn order_cap_is_enforced() {
    let text = lookup("S4").unwrap().file_text();
    let limits = Limits {
        order_cap: 10,
        aut_cap: 10,
    };
    match parse_group_str(&text, limits) {
        Err(LoadError::Group(Error::OrderCapExceeded { order, cap })) => {
            assert!(order > cap && cap == 10)
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn subgroup_specs_use_generator_letters() {
    let pg = lookup("S4").unwrap().parsed(Limits::default());
    assert_eq!(parse_subgroup_spec(&pg, "a").unwrap().order(), 2);
    assert_eq!(parse_subgroup_spec(&pg, "b").unwrap().order(), 4);
    assert_eq!(parse_subgroup_spec(&pg, "a,b").unwrap().order(), 24);
    assert!(parse_subgroup_spec(&pg, "z").is_err());
}

#[test]
fn missing_file_is_an_io_error() {
    let err = parse_group_file(
        std::path::Path::new("/nonexistent/g.txt"),
        Limits::default(),
    )
    .unwrap_err();
    assert!(matches!(err, LoadError::Io { .. }));
}

#[test]
fn corrupt_cache_entries_are_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::at(dir.path());
    let g = lookup("A4").unwrap().build();
    let mut stats = CacheStats::default();
    cache.ensure_lattice(&g, &mut stats).unwrap();
    assert_eq!(stats.misses, 1);

    let path = dir.path().join(format!("lattice-{}.txt", table_hash(&g)));
    let text = fs::read_to_string(&path).unwrap();
    fs::write(
        &path,
        text.replacen("\n0 ", "\n0 1 ", 1).replace("1 1 ", "1 "),
    )
    .unwrap();
    let fresh = lookup("A4").unwrap().build();
    let mut stats = CacheStats::default();
    cache.ensure_lattice(&fresh, &mut stats).unwrap();
    assert_eq!(stats.corrupt, 1);
    assert_eq!(fresh.subgroup_lattice().unwrap().len(), 10);

    let fresh = lookup("A4").unwrap().build();
    let mut stats = CacheStats::default();
    cache.ensure_lattice(&fresh, &mut stats).unwrap();
    assert_eq!(stats.hits, 1);
}

#[test]
fn suite_over_files_reports_load_failures() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("s3.txt");
    let bad = dir.path().join("bad.txt");
    fs::write(&good, lookup("S3").unwrap().file_text()).unwrap();
    fs::write(&bad, "group B\nperm 3\n(1 2\n").unwrap();
    let config = RunConfig {
        cache_dir: None,
        ..RunConfig::default()
    };
    let summary = run_suite(&config, &Scope::Files(vec![good, bad]));
    let load: Vec<_> = summary.rows.iter().filter(|r| r.check == "load").collect();
    assert_eq!(load.len(), 1);
    assert_eq!(load[0].status, Status::Fail);
    assert!(summary
        .rows
        .iter()
        .any(|r| r.group == "S3" && r.check == "axioms" && r.status == Status::Pass));
    assert_eq!(summary.failed, 1);
    assert_eq!(summary.contradictions, 0);
}
