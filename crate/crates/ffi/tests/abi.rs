use agc_ffi::*;
use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

fn last_error() -> String {
    unsafe { CStr::from_ptr(agc_last_error_message()) }.to_string_lossy().into_owned()
}

fn build(ell: u32, m: u32, r: u32, q: u32) -> *mut AgcCode {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { agc_build_affine_grassmann(ell, m, r, q, &mut h) }, AGC_OK, "{}", last_error());
    h
}

#[test]
fn builds_and_measures_a_code() {
    let h = build(2, 4, 2, 2);
    unsafe {
        assert_eq!((agc_code_length(h), agc_code_dimension(h), agc_code_field_size(h)), (16, 6, 2));
        let (mut d, mut count) = (0u64, 0u64);
        assert_eq!(agc_min_distance(h, &mut d, &mut count), AGC_OK);
        assert_eq!((d, count), (6, 16));
        let mut counts = [u64::MAX; 5];
        assert_eq!(agc_dual_low_weight_counts(h, 4, counts.as_mut_ptr()), AGC_OK);
        assert_eq!(counts, [1, 0, 0, 0, 60]);

        let mut row = [9u8; 16];
        assert_eq!(agc_code_row(h, 0, row.as_mut_ptr(), row.len()), AGC_OK);
        assert_eq!(row, [1; 16]);
        assert_eq!(agc_code_row(h, 0, row.as_mut_ptr(), 4), AGC_ERR_BUFFER_TOO_SMALL);
        assert_eq!(agc_code_row(h, 6, row.as_mut_ptr(), 16), AGC_ERR_DIMENSION_MISMATCH);

        let mut dual = ptr::null_mut();
        assert_eq!(agc_build_dual(h, &mut dual), AGC_OK);
        assert_eq!(agc_code_dimension(dual), 10);
        agc_code_free(dual);
        agc_code_free(h);
    }
}

#[test]
fn theoretical_parameters() {
    let mut p = AgcParams::default();
    unsafe {
        assert_eq!(agc_theoretical_params(3, 6, 3, 2, &mut p), AGC_OK);
        assert_eq!(p, AgcParams { n: 512, k: 20, d: 168, min_weight_count: p.min_weight_count, has_min_weight_count: 1 });
        assert_eq!(agc_theoretical_params(3, 6, 2, 2, &mut p), AGC_OK);
        assert_eq!((p.k, p.d, p.has_min_weight_count), (19, 192, 0));
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(agc_build_affine_grassmann(1, 2, 1, 6, &mut h), AGC_ERR_NOT_PRIME_POWER);
        assert!(h.is_null());
        assert!(last_error().contains("not a prime power"));
        assert_eq!(agc_build_affine_grassmann(2, 4, 3, 2, &mut h), AGC_ERR_SIZE_OUT_OF_RANGE);
        assert_eq!(agc_build_reed_muller(9, 2, 2, &mut h), AGC_ERR_ORDER_OUT_OF_RANGE);
        assert_eq!(agc_build_affine_grassmann(1, 2, 1, 2, ptr::null_mut()), AGC_ERR_NULL_POINTER);
        assert_eq!(agc_build_dual(ptr::null(), &mut h), AGC_ERR_NULL_POINTER);
        assert_eq!(agc_code_length(ptr::null()), 0);
        agc_code_free(ptr::null_mut());

        let rm = {
            assert_eq!(agc_build_reed_muller(1, 2, 3, &mut h), AGC_OK);
            h
        };
        let mut dual = ptr::null_mut();
        assert_eq!(agc_build_dual(rm, &mut dual), AGC_ERR_INVALID_PARAMS);
        let mut counts = [0u64; 6];
        assert_eq!(agc_dual_low_weight_counts(rm, 5, counts.as_mut_ptr()), AGC_ERR_W_MAX_UNSUPPORTED);
        agc_code_free(rm);
    }
}

#[test]
fn writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let h = build(1, 3, 1, 3);
    let gen = CString::new(dir.path().join("g.txt").to_str().unwrap()).unwrap();
    let stem = CString::new(dir.path().join("g").to_str().unwrap()).unwrap();
    unsafe {
        assert_eq!(agc_write_generator(h, gen.as_ptr()), AGC_OK);
        assert_eq!(agc_write_alist(h, stem.as_ptr()), AGC_OK);
        let bad = CString::new("/nonexistent/dir/x").unwrap();
        assert_eq!(agc_write_generator(h, bad.as_ptr()), AGC_ERR_IO);
        agc_code_free(h);
    }
    let text = std::fs::read_to_string(dir.path().join("g.txt")).unwrap();
    assert!(text.starts_with("3 9 3\n"));
    assert!(dir.path().join("g.alist").exists() && dir.path().join("g.qval").exists());
}

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/agc.h")
}

#[test]
fn header_declares_the_abi() {
    let h = std::fs::read_to_string(header()).unwrap();
    for name in [
        "typedef struct AgcCode AgcCode",
        "agc_build_affine_grassmann",
        "agc_build_reed_muller",
        "agc_build_dual",
        "agc_code_free",
        "agc_code_row",
        "agc_min_distance",
        "agc_dual_low_weight_counts",
        "agc_theoretical_params",
        "agc_write_alist",
        "agc_last_error_message",
        "AGC_ERR_VERIFICATION_FAILED 29",
    ] {
        assert!(h.contains(name), "header lacks {name}");
    }
}

/// Compiles a small C program against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    // test binaries live next to the library artifacts in target/<profile>/deps
    let deps = std::env::current_exe().unwrap().parent().unwrap().to_path_buf();
    let lib = [deps.join("libagc_ffi.a"), deps.parent().unwrap().join("libagc_ffi.a")]
        .into_iter()
        .find(|p| p.exists())
        .expect("static library next to the test binary");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "agc.h"
int main(void) {
    AgcCode *c = NULL;
    if (agc_build_affine_grassmann(2, 4, 2, 2, &c) != AGC_OK) return 1;
    uint64_t d = 0, count = 0;
    if (agc_min_distance(c, &d, &count) != AGC_OK) return 2;
    AgcCode *bad = NULL;
    int status = agc_build_affine_grassmann(1, 2, 1, 6, &bad);
    printf("%zu %zu %llu %llu %d %s\n", agc_code_length(c), agc_code_dimension(c),
           (unsigned long long)d, (unsigned long long)count, status, agc_last_error_message());
    agc_code_free(c);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("smoke");
    let cc = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .expect("a C compiler on PATH");
    assert!(cc.status.success(), "{}", String::from_utf8_lossy(&cc.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success());
    assert_eq!(String::from_utf8_lossy(&run.stdout), "16 6 6 16 10 6 is not a prime power\n");
}
