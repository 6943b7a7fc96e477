//! Acceptance suite: each test runs one criterion end to end at full size
//! and prints an explicit pass/fail line. All arithmetic is exact, so
//! every comparison is zero-tolerance.

use std::process::Command;
use std::time::Instant;

use chi_core::character::{all_permutations, verify_multiplicativity, verify_shuffle_relation};
use chi_core::cones::{enumerate_oracle, transform_closed_form, verify_brion, PrefixCone};
use chi_core::forms::{verify_theta_ez, verify_theta_pullback};
use chi_core::maps::{verify_co_leibniz, verify_coassoc, verify_ez_diagram};
use chi_core::perm::binomial;
use chi_core::poly::{Monomial, Var};
use chi_core::total;

fn report(name: &str, pass: bool, detail: &str, started: Instant) {
    println!(
        "[{}] {name}: {detail} ({:.2?})",
        if pass { "PASS" } else { "FAIL" },
        started.elapsed()
    );
    assert!(pass, "{name} failed: {detail}");
}

/// Criterion 1: shuffle relations for all m + n <= 8.
#[test]
fn criterion_01_shuffle_relations() {
    let t = Instant::now();
    let mut checked = 0usize;
    let mut pass = true;
    let mut largest_terms = 0u64;
    for total in 0..=8usize {
        for m in 0..=total {
            let n = total - m;
            let r = verify_shuffle_relation(m, n);
            pass &= r.pass;
            checked += 1;
            largest_terms = largest_terms.max(binomial(total, m));
        }
    }
    report(
        "criterion 1 shuffle relations (m+n <= 8)",
        pass && largest_terms == 70,
        &format!("{checked} instances, largest sum {largest_terms} terms"),
        t,
    );
}

/// Criterion 2: character multiplicativity, exhaustive over permutation
/// pairs with m + n <= 5.
#[test]
fn criterion_02_character_multiplicativity() {
    let t = Instant::now();
    let mut checked = 0usize;
    let mut pass = true;
    for total in 0..=5usize {
        for m in 0..=total {
            let n = total - m;
            for sigma in all_permutations(m) {
                for tau in all_permutations(n) {
                    let r = verify_multiplicativity(&sigma, &tau, 1);
                    pass &= r.pass;
                    checked += 1;
                }
            }
        }
    }
    report(
        "criterion 2 character multiplicativity (m+n <= 5, exhaustive)",
        pass,
        &format!("{checked} permutation pairs"),
        t,
    );
}

/// Criterion 3: subdivision identity for all m + n <= 8, plus the
/// transform/character bridging identity for N <= 8.
#[test]
fn criterion_03_brion_subdivision() {
    let t = Instant::now();
    let mut pass = true;
    let mut checked = 0usize;
    for total in 0..=8usize {
        for m in 0..=total {
            let r = verify_brion(m, total - m);
            pass &= r.pass;
            checked += 1;
        }
    }
    // bridging identity at every N <= 8
    for n in 0..=8usize {
        let lhs = transform_closed_form(&PrefixCone::standard(n));
        let monomial =
            Monomial::from_pairs(&(1..=n as Var).map(|v| (v, 1)).collect::<Vec<_>>());
        let rhs = chi_core::character::chi(n, &(1..=n as Var).collect::<Vec<_>>())
            .unwrap()
            .value
            .mul_monomial(&monomial);
        pass &= lhs.equal(&rhs);
        checked += 1;
    }
    report(
        "criterion 3 cone subdivision + bridging (m+n <= 8, N <= 8)",
        pass,
        &format!("{checked} instances"),
        t,
    );
}

/// Criterion 4: enumeration oracle for N <= 4, B <= 5.
#[test]
fn criterion_04_lattice_oracle() {
    let t = Instant::now();
    let mut pass = true;
    let mut points = 0usize;
    for n in 0..=4usize {
        for b in 0..=5i64 {
            let o = enumerate_oracle(n, b);
            pass &= o.report.pass;
            points += o.points.len();
        }
    }
    report(
        "criterion 4 lattice enumeration oracle (N <= 4, B <= 5)",
        pass,
        &format!("{points} points enumerated"),
        t,
    );
}

/// Criterion 5: pullback closed form for 1 <= N <= 6 and the shuffle-sum
/// identity on the cube for all m + n <= 6.
#[test]
fn criterion_05_theta_identities() {
    let t = Instant::now();
    let mut pass = true;
    let mut checked = 0usize;
    for n in 1..=6u32 {
        pass &= verify_theta_pullback(n).pass;
        checked += 1;
    }
    for total in 0..=6u32 {
        for m in 0..=total {
            pass &= verify_theta_ez(m, total - m).pass;
            checked += 1;
        }
    }
    report(
        "criterion 5 logarithmic-form pullback + cube identity (N <= 6, m+n <= 6)",
        pass,
        &format!("{checked} instances"),
        t,
    );
}

/// Criterion 6: formal-map calculus — diagram compatibility and boundary
/// rule for m + n <= 6, coassociativity for m + n + r <= 6.
#[test]
fn criterion_06_ez_calculus() {
    let t = Instant::now();
    let mut pass = true;
    let mut checked = 0usize;
    for total in 0..=6usize {
        for m in 0..=total {
            let n = total - m;
            pass &= verify_ez_diagram(m, n).pass;
            checked += 1;
            if total >= 1 {
                pass &= verify_co_leibniz(m, n).pass;
                checked += 1;
            }
        }
    }
    for total in 0..=6usize {
        for m in 0..=total {
            for n in 0..=(total - m) {
                pass &= verify_coassoc(m, n, total - m - n).pass;
                checked += 1;
            }
        }
    }
    report(
        "criterion 6 shuffle-morphism calculus (m+n <= 6, m+n+r <= 6)",
        pass,
        &format!("{checked} instances"),
        t,
    );
}

/// Criterion 7: D^2 = 0 on >= 200 random elements over >= 20 random
/// models; Leibniz and associativity on >= 200 random pairs/triples.
#[test]
fn criterion_07_total_complex_properties() {
    let t = Instant::now();
    let dsq = total::verify_dsq(20, 10, 31337);
    let leibniz = total::verify_leibniz_and_assoc(200, 31338);
    report(
        "criterion 7 total-complex properties (200 elements / 20 models, 200 pairs)",
        dsq.pass && leibniz.pass,
        &format!(
            "dsq over {} samples, leibniz+assoc over {} pairs",
            dsq.lhs_terms, leibniz.lhs_terms
        ),
        t,
    );
}

/// Criterion 8: cone pairing — the correction identity for all four
/// parities with symbolic t (negative controls must fail), the chain-map
/// property, and the homotopy bounding element for symbolic t, t'.
#[test]
fn criterion_08_cone_pairing() {
    let t = Instant::now();
    let claim = total::dga::verify_cone_claim();
    let chain = total::dga::verify_hat_box_chain_map();
    let homotopy = total::dga::verify_homotopy();
    let controls_fail = claim
        .details
        .iter()
        .filter(|(k, _)| k.starts_with("negative_control"))
        .all(|(_, v)| v == "fails as expected");
    report(
        "criterion 8 cone pairing (claim, chain map, homotopy, negative controls)",
        claim.pass && chain.pass && homotopy.pass && controls_fail,
        &format!(
            "claim={} chain={} homotopy={} controls={}",
            claim.pass, chain.pass, homotopy.pass, controls_fail
        ),
        t,
    );
}

/// Criterion 9: first-page computation up to degree 20.
#[test]
fn criterion_09_e1_page() {
    let t = Instant::now();
    let page = chi_core::e1::e1_page(20);
    let mut pass = page.report.pass;
    for row in &page.rows {
        let r = row.p / 2;
        let expected = if row.p % 2 == 0 { r as usize + 1 } else { r as usize };
        pass &= row.kernel_dim == expected;
        pass &= row.image_equals_kernel;
        pass &= row.cohomology_dim == 0;
        if row.p % 2 == 0 {
            let expect_monomials: Vec<u32> = (0..=row.p).step_by(2).collect();
            pass &= row.kernel_monomials == expect_monomials;
        }
    }
    report(
        "criterion 9 first-page kernels/images (p <= 20)",
        pass,
        &format!("{} rows, cohomology concentrated in degree 0", page.rows.len()),
        t,
    );
}

/// Criterion 10: both recursions for the normalization constants.
#[test]
fn criterion_10_constants() {
    let t = Instant::now();
    let r = chi_core::constants::verify_constants(6, 12);
    report(
        "criterion 10 normalization-constant recursions (d <= 6, N <= 12)",
        r.pass,
        &format!("{} instances", r.lhs_terms),
        t,
    );
}

/// Criterion 11: two identical `all --max-size 5` runs produce
/// byte-identical reports.
#[test]
fn criterion_11_deterministic_reports() {
    let t = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("report1.json");
    let out2 = dir.path().join("report2.json");
    for out in [&out1, &out2] {
        let status = Command::new(env!("CARGO_BIN_EXE_chi-kit"))
            .args([
                "all",
                "--max-size",
                "5",
                "--format",
                "json",
                "--seed",
                "7",
                "--threads",
                "4",
                "--output",
            ])
            .arg(out)
            .status()
            .expect("spawn chi-kit");
        assert!(status.success(), "chi-kit all --max-size 5 must pass");
    }
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out2).unwrap();
    report(
        "criterion 11 byte-identical reports (all --max-size 5, two runs)",
        a == b && !a.is_empty(),
        &format!("{} bytes each", a.len()),
        t,
    );
}
