//! Every example runs and reports what it claims.

macro_rules! example {
    ($m:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $m {
            include!($file);
        }
    };
}

example!(ar_quiver, "../examples/ar_quiver.rs");
example!(zigzag_decomposition, "../examples/zigzag_decomposition.rs");
example!(cl2f_catalog, "../examples/cl2f_catalog.rs");
example!(cl3fb_trace, "../examples/cl3fb_trace.rs");
example!(cl4fff_erasable_identity, "../examples/cl4fff_erasable_identity.rs");
example!(transcript_verification, "../examples/transcript_verification.rs");
example!(ingest_two_filtrations, "../examples/ingest_two_filtrations.rs");
example!(indecomposable_checks, "../examples/indecomposable_checks.rs");
example!(rational_coefficients, "../examples/rational_coefficients.rs");

#[test]
fn ar_quiver_lists_the_order() {
    let out = ar_quiver::run_example().unwrap();
    assert!(out.contains("[2,2] < [2,3] < [1,2] < [1,3] < [3,3] < [1,1]"));
    assert!(out.contains("digraph"));
}

#[test]
fn zigzag_reaches_canonical_form() {
    let out = zigzag_decomposition::run_example().unwrap();
    assert!(out.contains("conjugate equals canonical form: true"));
    assert!(out.contains("hom counts agree: true"));
}

#[test]
fn cl2f_recovers_plant() {
    let out = cl2f_catalog::run_example().unwrap();
    assert!(out.contains("matches the planted multiset: true"));
}

#[test]
fn cl3fb_trace_has_grids() {
    let out = cl3fb_trace::run_example().unwrap();
    assert!(out.starts_with("input grid:"));
    assert!(out.contains("4. v_* = (<3,3>, <1,3>)"));
    assert!(out.contains("extracted:"));
}

#[test]
fn cl4fff_shows_identity_erasure() {
    let out = cl4fff_erasable_identity::run_example().unwrap();
    assert!(out.contains("erasable identity"));
    assert!(out.contains("equal to the plant: true"));
}

#[test]
fn tampered_transcript_is_caught() {
    let out = transcript_verification::run_example().unwrap();
    assert!(out.contains("round trip exact: true"));
    assert!(out.contains("verified: true"));
    assert!(out.contains("verified false"));
}

#[test]
fn two_arcs_give_a_full_top_row() {
    let out = ingest_two_filtrations::run_example().unwrap();
    assert!(out.contains("H_1 ladder module 111/010"));
    assert!(out.contains("111/010  x1"));
}

#[test]
fn oracles_agree_on_dimension_two() {
    let out = indecomposable_checks::run_example().unwrap();
    assert!(out.contains("dim Hom(A, B) = 3, dim Hom(B, A) = 0"));
    assert!(out.contains("A + A: End local? Decomposable"));
}

#[test]
fn rationals_work() {
    let out = rational_coefficients::run_example().unwrap();
    assert!(out.contains("transcript verifies: true"));
}
