//! Replays the fuzz seed corpora through the parsers the fuzz targets exercise.
//! Seeds named `ok_*` must be accepted and seeds named `bad_*` rejected.

use std::fs;
use std::path::PathBuf;

use bunpic::{load_family, load_group, RunConfig};
use bunpic_core::family::{parse_family, validate_family, CurveFamily};
use bunpic_core::root_datum::{build_group, parse_group_spec, ReductiveGroupData};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(out.len() >= 4, "corpus for {target} is too small");
    out
}

fn check(target: &str, accept: impl Fn(&str) -> bool) {
    for (name, text) in seeds(target) {
        let ok = accept(&text);
        if name.starts_with("ok_") {
            assert!(ok, "{target}/{name} was rejected");
        } else if name.starts_with("bad_") {
            assert!(!ok, "{target}/{name} was accepted");
        }
    }
}

#[test]
fn group_spec_seeds() {
    check("group_spec", |t| match parse_group_spec(t) {
        Ok(spec) => {
            assert_eq!(parse_group_spec(&spec.to_string()).unwrap(), spec);
            build_group(&spec).is_ok()
        }
        Err(_) => false,
    });
}

#[test]
fn raw_datum_seeds() {
    check("raw_datum", |t| match ReductiveGroupData::from_json(t) {
        Ok(g) => {
            let again = ReductiveGroupData::from_json(&g.to_json().to_string()).unwrap();
            assert_eq!(again.coroots(), g.coroots());
            true
        }
        Err(_) => false,
    });
}

#[test]
fn family_seeds() {
    check("family", |t| match parse_family(t) {
        Ok(f) => {
            let json = serde_json::to_string(&f).unwrap();
            assert_eq!(CurveFamily::from_json(&json).unwrap(), f);
            validate_family(&f).is_empty()
        }
        Err(_) => false,
    });
}

#[test]
fn run_config_seeds() {
    check("run_config", |t| {
        t.lines().all(|line| {
            let Ok(cfg) = RunConfig::from_json_line(line) else { return false };
            load_group(&cfg.group).is_ok() && cfg.family.as_ref().is_none_or(|f| load_family(f).is_ok())
        })
    });
}
