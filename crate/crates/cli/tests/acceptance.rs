//! The nine headline guarantees, one test each. Every test prints a single
//! pass/fail line (visible with `--nocapture`) before asserting.

use std::time::Instant;

use geomodels_cli::checks::{
    census_tightness, chamber_census, exclusion_region_upward, hirzebruch_base_locus,
    mmp_determinism_sweep, region_component_sweep, steep_curve_base_locus, valuation_counts,
    vertex_denominator_sweep,
};

const SEED: u64 = 0;

fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

#[test]
fn criterion_1_window_vertex_denominators() {
    let start = Instant::now();
    let o = vertex_denominator_sweep(SEED);
    let elapsed = start.elapsed();
    let w = &o.witness;
    println!(
        "criterion 1 window-vertex denominators: {} ({} instances, {} window vertices, max lcm {}, {:.2?})",
        status(o.pass),
        w["instances"],
        w["window_vertices"],
        w["max_window_lcm"],
        elapsed
    );
    assert!(o.pass, "witness: {}", o.witness);
    assert!(elapsed.as_secs() < 60, "sweep took {elapsed:.2?}");
}

#[test]
fn criterion_2_region_component_bounds() {
    let o = region_component_sweep(SEED);
    let w = &o.witness;
    println!(
        "criterion 2 region component bounds: {} ({} instances, max components {})",
        status(o.pass),
        w["instances"],
        w["max_components"]
    );
    assert!(o.pass, "witness: {}", o.witness);
}

#[test]
fn criterion_3_steep_curve_base_locus() {
    let o = steep_curve_base_locus();
    println!(
        "criterion 3 steep-curve base locus thresholds: {} ({} coefficients checked)",
        status(o.pass),
        o.witness["samples"].as_array().map_or(0, Vec::len)
    );
    assert!(o.pass, "witness: {}", o.witness);
}

#[test]
fn criterion_4_hirzebruch_base_locus() {
    let o = hirzebruch_base_locus();
    println!(
        "criterion 4 Hirzebruch base locus thresholds: {} ({} coefficients checked)",
        status(o.pass),
        o.witness["samples"].as_array().map_or(0, Vec::len)
    );
    assert!(o.pass, "witness: {}", o.witness);
}

#[test]
fn criterion_5_census_tightness() {
    let o = census_tightness();
    println!(
        "criterion 5 (-1)-curve census tightness: {} (ruled r=1..3 tight, general type dominated)",
        status(o.pass)
    );
    assert!(o.pass, "witness: {}", o.witness);
}

#[test]
fn criterion_6_chamber_census() {
    let start = Instant::now();
    let o = chamber_census(SEED);
    let elapsed = start.elapsed();
    let w = &o.witness;
    println!(
        "criterion 6 chamber census vs base loci: {} ({} chambers, convex {}, {} samples, {:.2?})",
        status(o.pass),
        w["chambers"],
        w["all_convex"],
        w["samples"],
        elapsed
    );
    assert!(o.pass, "witness: {}", o.witness);
    assert!(elapsed.as_secs() < 30, "census took {elapsed:.2?}");
}

#[test]
fn criterion_7_valuation_enumeration() {
    let o = valuation_counts();
    println!(
        "criterion 7 low-discrepancy valuation chains: {} (two-curve and triple-point configs match the monomial oracle)",
        status(o.pass)
    );
    assert!(o.pass, "witness: {}", o.witness);
}

#[test]
fn criterion_8_mmp_determinism() {
    let o = mmp_determinism_sweep(SEED);
    let w = &o.witness;
    println!(
        "criterion 8 contraction and decomposition determinism: {} ({} instances, {} subset-oracle checks)",
        status(o.pass),
        w["instances"],
        w["oracle_checked"]
    );
    assert!(o.pass, "witness: {}", o.witness);
}

#[test]
fn criterion_9_exclusion_region_upward_closure() {
    let o = exclusion_region_upward();
    println!(
        "criterion 9 exclusion-region upward closure: {}",
        status(o.pass)
    );
    assert!(o.pass, "witness: {}", o.witness);
}
