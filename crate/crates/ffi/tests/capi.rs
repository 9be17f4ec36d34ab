use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use pathdp_ffi::*;

fn path_edges() -> Vec<PathdpEdge> {
    // 0 - 1 - 2 - 3, plus a heavy shortcut 0 - 3
    vec![
        PathdpEdge { u: 0, v: 1, weight: 1.0, attribute: 0.5 },
        PathdpEdge { u: 1, v: 2, weight: 1.0, attribute: 0.25 },
        PathdpEdge { u: 2, v: 3, weight: 1.0, attribute: 2.0 },
        PathdpEdge { u: 0, v: 3, weight: 5.0, attribute: 9.0 },
    ]
}

fn graph() -> *mut PathdpGraph {
    let edges = path_edges();
    let mut g = ptr::null_mut();
    let status = unsafe { pathdp_graph_from_edges(4, edges.as_ptr(), edges.len(), &mut g) };
    assert_eq!(status, PathdpStatus::Ok);
    g
}

fn last_error() -> String {
    let p = pathdp_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn exact_queries() {
    let g = graph();
    let (mut n, mut m) = (0, 0);
    let mut x = 0.0;
    unsafe {
        assert_eq!(pathdp_graph_counts(g, &mut n, &mut m), PathdpStatus::Ok);
        assert_eq!((n, m), (4, 4));
        assert_eq!(pathdp_exact_count(g, 0, 3, &mut x), PathdpStatus::Ok);
        assert_eq!(x, 2.75);
        assert_eq!(pathdp_exact_bottleneck(g, 3, 0, &mut x), PathdpStatus::Ok);
        assert_eq!(x, 0.25);
        assert_eq!(pathdp_exact_count(g, 0, 4, &mut x), PathdpStatus::InvalidArgument);
        pathdp_graph_free(g);
    }
    assert!(last_error().contains("vertex 4"));
}

#[test]
fn quiet_releases_match_exact_values() {
    let g = graph();
    let cases = [
        (PathdpAlgorithm::Canon, 0.0),
        (PathdpAlgorithm::Sssp, 0.01),
        (PathdpAlgorithm::BottleneckPure, 0.0),
        (PathdpAlgorithm::BottleneckGauss, 0.01),
    ];
    for (algo, delta) in cases {
        let mut r = ptr::null_mut();
        unsafe {
            assert_eq!(pathdp_release(g, algo, f64::INFINITY, delta, 1, 0.0, &mut r), PathdpStatus::Ok);
            let mut n = 0;
            assert_eq!(pathdp_release_size(r, &mut n), PathdpStatus::Ok);
            assert_eq!(n, 4);
            for u in 0..4 {
                for v in 0..4 {
                    let (mut got, mut want) = (0.0, 0.0);
                    assert_eq!(pathdp_release_get(r, u, v, &mut got), PathdpStatus::Ok);
                    let status = match algo {
                        PathdpAlgorithm::Canon | PathdpAlgorithm::Sssp => pathdp_exact_count(g, u, v, &mut want),
                        _ => pathdp_exact_bottleneck(g, u, v, &mut want),
                    };
                    assert_eq!(status, PathdpStatus::Ok);
                    assert_eq!(got, want, "{algo:?} ({u}, {v})");
                }
            }
            pathdp_release_free(r);
        }
    }
    unsafe { pathdp_graph_free(g) };
}

#[test]
fn noisy_release_is_seeded() {
    let g = graph();
    let get = |seed| unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(pathdp_release(g, PathdpAlgorithm::Canon, 1.0, 0.0, seed, 0.0, &mut r), PathdpStatus::Ok);
        let mut x = 0.0;
        assert_eq!(pathdp_release_get(r, 0, 3, &mut x), PathdpStatus::Ok);
        pathdp_release_free(r);
        x
    };
    assert_eq!(get(7), get(7));
    assert_ne!(get(7), get(8));
    unsafe { pathdp_graph_free(g) };
}

#[test]
fn error_codes() {
    let mut g = ptr::null_mut();
    let mut r = ptr::null_mut();
    let mut x = 0.0;
    unsafe {
        assert_eq!(pathdp_graph_from_edges(4, ptr::null(), 3, &mut g), PathdpStatus::NullPointer);
        assert_eq!(pathdp_exact_count(ptr::null(), 0, 1, &mut x), PathdpStatus::NullPointer);
        assert!(last_error().contains("graph is null"));

        let looped = [PathdpEdge { u: 1, v: 1, weight: 1.0, attribute: 1.0 }];
        assert_eq!(pathdp_graph_from_edges(2, looped.as_ptr(), 1, &mut g), PathdpStatus::InvalidGraph);
        assert!(last_error().contains("self-loop"));
        assert!(g.is_null());

        let h = graph();
        assert_eq!(pathdp_release(h, PathdpAlgorithm::Sssp, 1.0, 0.0, 1, 0.0, &mut r), PathdpStatus::InvalidArgument);
        assert!(last_error().contains("delta"));
        assert_eq!(pathdp_release(h, PathdpAlgorithm::Canon, -1.0, 0.0, 1, 0.0, &mut r), PathdpStatus::InvalidArgument);
        assert!(r.is_null());
        pathdp_graph_free(h);

        let missing = CString::new("/nonexistent/graph.txt").unwrap();
        assert_eq!(pathdp_graph_load(missing.as_ptr(), &mut g), PathdpStatus::Io);
        pathdp_graph_free(ptr::null_mut());
        pathdp_release_free(ptr::null_mut());
    }
}

#[test]
fn load_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.txt");
    std::fs::write(&file, "0 1 1 3\n1 2 1 4\n").unwrap();
    let path = CString::new(file.to_str().unwrap()).unwrap();
    let mut g = ptr::null_mut();
    let mut x = 0.0;
    unsafe {
        assert_eq!(pathdp_graph_load(path.as_ptr(), &mut g), PathdpStatus::Ok);
        assert_eq!(pathdp_exact_count(g, 0, 2, &mut x), PathdpStatus::Ok);
        assert_eq!(x, 7.0);
        pathdp_graph_free(g);
    }
    std::fs::write(&file, "0 1 1\n").unwrap();
    unsafe {
        assert_eq!(pathdp_graph_load(path.as_ptr(), &mut g), PathdpStatus::InvalidGraph);
    }
}

#[test]
fn version_matches_package() {
    let v = unsafe { CStr::from_ptr(pathdp_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/pathdp.h")
}

#[test]
fn header_declares_the_api() {
    let text = std::fs::read_to_string(header()).unwrap();
    for symbol in [
        "typedef struct PathdpGraph PathdpGraph;",
        "typedef struct PathdpRelease PathdpRelease;",
        "PATHDP_STATUS_OK = 0",
        "PATHDP_STATUS_NULL_POINTER = -1",
        "PATHDP_STATUS_INVALID_ARGUMENT = -2",
        "PATHDP_STATUS_INVALID_GRAPH = -3",
        "PATHDP_STATUS_IO = -4",
        "PATHDP_STATUS_PANIC = -99",
        "PATHDP_ALGORITHM_BOTTLENECK_GAUSS = 3",
        "pathdp_graph_from_edges(",
        "pathdp_graph_load(",
        "pathdp_graph_free(",
        "pathdp_graph_counts(",
        "pathdp_exact_count(",
        "pathdp_exact_bottleneck(",
        "pathdp_release(",
        "pathdp_release_get(",
        "pathdp_release_size(",
        "pathdp_release_free(",
        "pathdp_last_error_message(void)",
        "pathdp_version(void)",
    ] {
        assert!(text.contains(symbol), "header lacks {symbol}");
    }
}

const C_PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "pathdp.h"

int main(void) {
    PathdpEdge edges[3] = {{0, 1, 1.0, 0.5}, {1, 2, 1.0, 0.25}, {2, 3, 1.0, 2.0}};
    PathdpGraph *g = NULL;
    PathdpRelease *r = NULL;
    double x = 0.0;
    if (pathdp_graph_from_edges(4, edges, 3, &g) != PATHDP_STATUS_OK) return 1;
    if (pathdp_release(g, PATHDP_ALGORITHM_CANON, INFINITY, 0.0, 1, 0.0, &r) != PATHDP_STATUS_OK) return 2;
    if (pathdp_release_get(r, 0, 3, &x) != PATHDP_STATUS_OK || x != 2.75) return 3;
    if (pathdp_release(g, PATHDP_ALGORITHM_SSSP, 1.0, 0.0, 1, 0.0, &r) != PATHDP_STATUS_INVALID_ARGUMENT) return 4;
    printf("%s %s\n", pathdp_version(), pathdp_last_error_message());
    pathdp_release_free(r);
    pathdp_graph_free(g);
    return 0;
}
"#;

fn have_cc() -> bool {
    Command::new("cc").arg("--version").output().is_ok_and(|o| o.status.success())
}

#[test]
fn c_program_compiles_and_runs_against_the_static_library() {
    if !have_cc() {
        eprintln!("no C compiler found, skipping");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let include = header().parent().unwrap().to_path_buf();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success(), "header does not compile as C99");

    // target/<profile>/deps/<test> -> target/<profile>/libpathdp_ffi.a
    let exe = std::env::current_exe().unwrap();
    let archive = exe.parent().and_then(|d| d.parent()).unwrap().join("libpathdp_ffi.a");
    if !archive.exists() {
        eprintln!("{} not built, skipping link step", archive.display());
        return;
    }
    let bin = dir.path().join("main");
    let status = Command::new("cc")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "link failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.starts_with(env!("CARGO_PKG_VERSION")) && stdout.contains("delta"), "{stdout}");
}
