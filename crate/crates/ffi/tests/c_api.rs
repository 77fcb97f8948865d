use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use reslin_ffi::*;

fn last_error() -> String {
    let p = reslin_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn parse_and_query() {
    let text = CString::new("p xlcnf 2 2\n1=1 | a\n1+2=0\n").unwrap();
    let mut f = ptr::null_mut();
    unsafe {
        assert_eq!(reslin_formula_parse(text.as_ptr(), &mut f), ReslinStatus::Ok);
        assert_eq!(reslin_formula_nvars(f), 2);
        assert_eq!(reslin_formula_clauses(f), 2);
        let mut out = ptr::null_mut();
        assert_eq!(reslin_formula_to_text(f, &mut out), ReslinStatus::Ok);
        assert_eq!(CStr::from_ptr(out).to_str().unwrap(), "p xlcnf 2 2\n1=1 | a\n1+2=0\n");
        reslin_string_free(out);
        reslin_formula_free(f);
    }
}

#[test]
fn parse_errors_carry_positions() {
    let text = CString::new("p xlcnf 2 1\n3=1\n").unwrap();
    let mut f = ptr::null_mut();
    let status = unsafe { reslin_formula_parse(text.as_ptr(), &mut f) };
    assert_eq!(status, ReslinStatus::Parse);
    assert!(f.is_null());
    assert!(last_error().starts_with("line 2, column 1"), "{}", last_error());
}

#[test]
fn null_handles_are_rejected() {
    let mut w = 0;
    assert_eq!(unsafe { reslin_exact_width(ptr::null(), 2, &mut w) }, ReslinStatus::NullPointer);
    assert_eq!(last_error(), "formula handle is null");
    assert_eq!(unsafe { reslin_formula_php(3, 2, ptr::null_mut()) }, ReslinStatus::NullPointer);
    unsafe { reslin_formula_free(ptr::null_mut()) };
}

#[test]
fn checks_through_the_c_abi() {
    let mut f = ptr::null_mut();
    unsafe {
        assert_eq!(reslin_formula_php(3, 2, &mut f), ReslinStatus::Ok);
        let hole = CString::new("hole").unwrap();
        let mut checked = 0u64;
        assert_eq!(reslin_check_extensibility(f, hole.as_ptr(), 1, &mut checked), ReslinStatus::Ok);
        assert_eq!(checked, 1);
        let mut coins = 0;
        assert_eq!(reslin_random_games(f, hole.as_ptr(), 0, 20, &mut coins), ReslinStatus::Ok);
        assert!(coins >= 1);
        let mut size = 0;
        assert_eq!(reslin_min_split_tree(f, 1_000_000, &mut size), ReslinStatus::Ok);
        assert!(size >= 2);
        let nope = CString::new("nope").unwrap();
        assert_eq!(reslin_check_extensibility(f, nope.as_ptr(), 1, ptr::null_mut()), ReslinStatus::InvalidArgument);
        reslin_formula_free(f);
    }
}

#[test]
fn rejected_proof_names_the_node() {
    let cnf = CString::new("p xlcnf 1 2\n1=1\n1=0\n").unwrap();
    let good = CString::new("p xlp tree 3\n1 input 1\n2 input 2\n3 res 1 2 1\n").unwrap();
    let bad = CString::new("p xlp tree 3\n1 input 1\n2 input 2\n3 res 1 1 1\n").unwrap();
    let mut f = ptr::null_mut();
    unsafe {
        assert_eq!(reslin_formula_parse(cnf.as_ptr(), &mut f), ReslinStatus::Ok);
        let (mut size, mut width) = (0, 0);
        assert_eq!(reslin_verify_tree_proof(f, good.as_ptr(), &mut size, &mut width), ReslinStatus::Ok);
        assert_eq!((size, width), (3, 1));
        assert_eq!(reslin_verify_tree_proof(f, bad.as_ptr(), ptr::null_mut(), ptr::null_mut()), ReslinStatus::Fails);
        assert!(last_error().starts_with("node 3"), "{}", last_error());
        let mut w = 0;
        assert_eq!(reslin_exact_width(f, 3, &mut w), ReslinStatus::Ok);
        assert_eq!(w, 1);
        reslin_formula_free(f);
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/reslin.h")).unwrap();
    for name in [
        "typedef struct ReslinFormula ReslinFormula;",
        "RESLIN_STATUS_OK = 0",
        "reslin_formula_parse(",
        "reslin_check_extensibility(",
        "reslin_verify_tree_proof(",
        "reslin_last_error(void)",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

/// Compiles and runs a small C program against the static library, when a C
/// compiler is available.
#[test]
fn c_program_links_and_runs() {
    let Ok(exe) = std::env::current_exe() else { return };
    let Some(profile_dir) = exe.parent().and_then(|d| d.parent()).map(PathBuf::from) else {
        return;
    };
    let lib = profile_dir.join("libreslin_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "reslin.h"
int main(void) {
    ReslinFormula *f = NULL;
    if (reslin_formula_ordering(3, &f) != RESLIN_STATUS_OK) return 1;
    uint64_t checked = 0;
    ReslinStatus s = reslin_check_extensibility(f, "order", 1, &checked);
    size_t size = 0;
    ReslinStatus t = reslin_min_split_tree(f, 1000000, &size);
    printf("%d %llu %d %zu\n", (int)s, (unsigned long long)checked, (int)t, size);
    reslin_formula_free(f);
    return s == RESLIN_STATUS_OK ? 0 : 2;
}
"#,
    )
    .unwrap();
    let bin = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("0 1 0 "), "{text}");
}
