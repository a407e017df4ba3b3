//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Long items (classification at n = 32, the weight-6 coset census) run only
//! with `SDCODES_LONG=1`.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Rational64};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sdcodes::canonical::{automorphism_order, canonical_form};
use sdcodes::classify::{all_self_dual_codes, classify_via_neighbors, first_neighbor, generate};
use sdcodes::data;
use sdcodes::f4::{b_map, f4_equivalence_certificate};
use sdcodes::lattice::{
    construct_la, construct_lb, construct_lc, construct_lc_odd, lattice_shadow_counts, lb_vectors_by_codewords,
    shadow_cosets, spherical_design_moments,
};
use sdcodes::par::Execution;
use sdcodes::qseries::{extremal_odd_40, fit_theta, shadow_theta, theta_from_coefficients, Affine};
use sdcodes::selfdual::{
    check_extremal_profile, coset_weight_distribution, covering_radius, design_check, find_t_decomposition,
    shadow, verify_self_dual,
};
use sdcodes::z4::{z4_self_dual_check, Z4Type};
use sdcodes::Result;

/// Counts are exact: every comparison below uses zero tolerance.
const TOLERANCE: u64 = 0;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        pass,
        detail: detail.into(),
    })
}

fn show(r: Option<Rational64>) -> String {
    r.map_or("none".into(), |r| r.to_string())
}

type Criterion = (&'static str, fn() -> Result<Outcome>);

fn long_tier() -> bool {
    std::env::var("SDCODES_LONG").is_ok_and(|v| v == "1")
}

#[allow(clippy::absurd_extreme_comparisons)]
fn exact(a: u64, b: u64) -> bool {
    a.abs_diff(b) <= TOLERANCE
}

/// `v = c + s*alpha`.
fn affine_is(v: &Affine, c: i64, s: i64) -> bool {
    let at0 = v.at(0);
    let at1 = v.at(1);
    at0 == BigRational::from_integer(BigInt::from(c)) && &at1 - &at0 == BigRational::from_integer(BigInt::from(s))
}

fn criterion1() -> Result<Outcome> {
    let mut got = Vec::new();
    let mut want = vec![(8, 4, (1, 0)), (16, 4, (2, 1)), (24, 8, (1, 0))];
    if long_tier() {
        want.push((32, 8, (5, 3)));
    }
    let mut ok = true;
    for &(n, d, expect) in &want {
        let t = Instant::now();
        let counts = generate(n, d)?.counts();
        ok &= counts == expect;
        got.push(format!("n={n}: {counts:?} in {:.1?}", t.elapsed()));
    }
    if !long_tier() {
        got.push("n=32 not run (SDCODES_LONG=1)".into());
    }
    outcome(ok, got.join("; "))
}

fn criterion2() -> Result<Outcome> {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in (2..=12).step_by(2) {
        let generated: BTreeSet<Vec<u64>> = generate(n, 2)?
            .classes
            .into_iter()
            .map(|c| c.form.certificate)
            .collect();
        let mut brute = BTreeSet::new();
        for g in all_self_dual_codes(n)? {
            brute.insert(canonical_form(&g)?.certificate);
        }
        ok &= generated == brute;
        parts.push(format!("n={n}: {}", brute.len()));
    }
    outcome(ok, format!("classes per length {}", parts.join(", ")))
}

fn criterion3() -> Result<Outcome> {
    let c10 = data::c10();
    let aut = f4_equivalence_certificate(&c10)?.automorphisms.order;
    let b = b_map(&c10)?;
    let a4 = b.weight_distribution()?.count(4);
    let tdec = find_t_decomposition(&b, 10)?;
    let covered: BTreeSet<usize> = tdec.iter().flat_map(|t| t.tetrads.iter().flatten().copied()).collect();
    let t = Instant::now();
    let (codes, sweeps) = classify_via_neighbors(std::slice::from_ref(&b), 10)?;
    let sweep_time = t.elapsed();
    let s = &sweeps[0];
    let p = check_extremal_profile(&codes[0])?;
    let ok = b.is_doubly_even()
        && exact(a4, 10)
        && covered.len() == 40
        && s.subcodes == (1 << 19) - 1
        && s.qualifying == 1024
        && s.subcode_classes == 1
        && s.neighbor_classes == 1
        && codes.len() == 1
        && p.beta == 10
        && [(8, 285), (10, 1024), (12, 11040)].iter().all(|&(w, a)| exact(p.code.count(w), a))
        && [(4, 10), (8, 240)].iter().all(|&(w, a)| exact(p.shadow.count(w), a))
        && aut == BigUint::from(16u32);
    outcome(
        ok,
        format!(
            "A4={a4}, tetrads cover {} coords; {} subcodes through 1, {} avoid all tetrads, {} subcode class, \
             {} neighbor class in {sweep_time:.1?}; A8={} A10={} A12={} B4={} B8={}; #Aut(C10)={aut}",
            covered.len(),
            s.subcodes,
            s.qualifying,
            s.subcode_classes,
            s.neighbor_classes,
            p.code.count(8),
            p.code.count(10),
            p.code.count(12),
            p.shadow.count(4),
            p.shadow.count(8)
        ),
    )
}

fn criterion4() -> Result<Outcome> {
    let c = data::beta10_code()?;
    let design = design_check(&c, 8, 1)?;
    let d = data::extremal_doubly_even_40()?;
    let vectors = lb_vectors_by_codewords(d.generator(), 4)?;
    let t = Instant::now();
    let moments = spherical_design_moments(&vectors, 3)?;
    let ok = design.is_some_and(|x| (x.t, x.v, x.k, x.lambda) == (1, 40, 8, 57)) && exact(vectors.len() as u64, 39600) && moments;
    outcome(
        ok,
        format!(
            "weight-8 supports: {design:?}; {} norm-4 vectors of L_B, 3-design moments {moments} in {:.1?}",
            vectors.len(),
            t.elapsed()
        ),
    )
}

fn criterion5() -> Result<Outcome> {
    let a = extremal_odd_40()?;
    let th = theta_from_coefficients(&a, 40, 24)?;
    let sh = shadow_theta(&a, 40, 28)?;
    let a_ok = affine_is(&a[0], 1, 0)
        && affine_is(&a[1], -80, 0)
        && affine_is(&a[2], 1360, 0)
        && affine_is(&a[3], -2560, 0)
        && affine_is(&a[4], 0, 256)
        && affine_is(&a[5], 0, 0);
    let th_ok = affine_is(&th.at(4), 19120, 256) && affine_is(&th.at(5), 1376256, -4096);
    let sh_ok = affine_is(&sh.at(2), 0, 1) && affine_is(&sh.at(4), 40960, -56) && affine_is(&sh.at(6), 87818240, 1500);
    let i = |v: BigRational| v.to_integer();
    let special = [i(th.at(4).at(80)), i(th.at(5).at(80)), i(sh.at(2).at(80)), i(sh.at(4).at(80)), i(sh.at(6).at(80))];
    let want: Vec<BigInt> = [39600, 1048576, 80, 36480, 87938240].iter().map(|&x| BigInt::from(x)).collect();
    let ok = a_ok && th_ok && sh_ok && special.to_vec() == want;
    outcome(
        ok,
        format!(
            "theta q^4 {}, q^5 {}; shadow q^2 {}, q^4 {}, q^6 {}; alpha=80: {:?}",
            th.at(4),
            th.at(5),
            sh.at(2),
            sh.at(4),
            sh.at(6),
            special.iter().map(|x| x.to_string()).collect::<Vec<_>>()
        ),
    )
}

fn criterion6() -> Result<Outcome> {
    let d = data::extremal_doubly_even_40()?;
    let census = 4 * (40 * 39 / 2) + d.weight_distribution()?.count(8) * 128;
    let lb = construct_lb(d.generator())?;
    let th_b = lb.theta_by_codewords(4)?;
    let t = Instant::now();
    let en_b = lb.short_vectors(Rational64::from_integer(4), Execution::Auto)?;
    let en_time = t.elapsed();
    let lc = construct_lc(d.generator())?;
    let th_c = lc.theta_by_codewords(4)?;
    let e8 = construct_la(&data::hamming8())?;
    let k8 = e8.short_vectors(Rational64::from_integer(2), Execution::Auto)?.count_int(2);
    let four = Rational64::from_integer(4);
    let ok = th_b.min_norm() == Some(four)
        && exact(th_b.count_int(4), 39600)
        && exact(census, 39600)
        && en_b.nonzero() == th_b.nonzero()
        && lc.is_even()
        && lc.is_unimodular()
        && th_c.min_norm() == Some(four)
        && exact(th_c.count_int(4), 39600)
        && exact(k8, 240);
    outcome(
        ok,
        format!(
            "L_B: min {}, {} norm-4 by codewords, {} by enumeration ({en_time:.1?}), census {census}; \
             L_C: even unimodular {}, {} norm-4; L_A(Hamming) kissing {k8}",
            show(th_b.min_norm()),
            th_b.count_int(4),
            en_b.count_int(4),
            lc.is_even() && lc.is_unimodular(),
            th_c.count_int(4)
        ),
    )
}

fn criterion7() -> Result<Outcome> {
    let d1 = data::d1();
    let kind = z4_self_dual_check(&d1);
    let a = sdcodes::lattice::construct_a4(&d1)?;
    let th = a.theta_by_codewords(4)?;
    let t = Instant::now();
    let en = a.short_vectors(Rational64::from_integer(4), Execution::Auto)?;
    let en_time = t.elapsed();
    let sh = lattice_shadow_counts(&a, 2, Execution::Auto)?;
    let four = Rational64::from_integer(4);
    let ok = kind == Z4Type::TypeI
        && (d1.k1(), d1.k2()) == (10, 20)
        && a.is_unimodular()
        && !a.is_even()
        && en.min_norm() == Some(four)
        && exact(en.count_int(4), 19120)
        && en.nonzero() == th.nonzero()
        && exact(sh.count_int(2), 0);
    outcome(
        ok,
        format!(
            "D1 {kind:?} k1={} k2={}; A4(D1) unimodular {}, min {}, kissing {} by enumeration ({en_time:.1?}), \
             {} by codewords; norm-2 shadow {}",
            d1.k1(),
            d1.k2(),
            a.is_unimodular(),
            show(en.min_norm()),
            en.count_int(4),
            th.count_int(4),
            sh.count_int(2)
        ),
    )
}

fn criterion8() -> Result<Outcome> {
    let (aut_parent, parent) = data::extremal10().pop().expect("nonempty");
    let c = first_neighbor(&b_map(&parent)?, 10)?;
    let aut = automorphism_order(c.generator())?.order;
    let cr = covering_radius(c.generator())?;
    let mut ok = aut == BigUint::from(44236800u32) && cr.radius == 7;
    let mut detail = format!(
        "parent #Aut {aut_parent}; neighbor #Aut {aut}, R={}, cosets by weight {:?}",
        cr.radius, cr.cosets_by_weight
    );
    if long_tier() {
        let t = Instant::now();
        let census = coset_weight_distribution(c.generator(), 6)?;
        let prefix = |p: &[u64]| -> u64 {
            census
                .iter()
                .filter(|(e, _)| p.iter().enumerate().all(|(i, &x)| e[6 + 2 * i] == x))
                .map(|(_, &k)| k)
                .sum()
        };
        let first = prefix(&[4, 0, 152, 0, 1644, 0, 10608]);
        let second = prefix(&[4, 0, 168, 0, 1580, 0, 10640, 0, 44388, 0, 119768, 0, 216172, 0, 263136]);
        let four_sixes = prefix(&[4]);
        ok &= exact(first, 14400) && exact(second, 25600) && exact(four_sixes, 40000);
        detail.push_str(&format!(
            "; weight-6 cosets with 4y^6+152y^8+...: {first}, with 4y^6+168y^8+...: {second}, \
             all with 4y^6: {four_sixes} ({} enumerator classes, {:.1?})",
            census.len(),
            t.elapsed()
        ));
    } else {
        detail.push_str("; coset census not run (SDCODES_LONG=1)");
    }
    outcome(ok, detail)
}

fn criterion9() -> Result<Outcome> {
    let mut parts = Vec::new();
    // MacWilliams consistency
    let d = data::extremal_doubly_even_40()?;
    let w = d.weight_distribution()?;
    let mac = w.macwilliams()? == w;
    parts.push(format!("MacWilliams {mac}"));
    // shadow partition: C = C0 + C2 and the shadow cosets have the profile's enumerator
    let c = data::beta10_code()?;
    let sh = shadow(&c)?;
    let profile = check_extremal_profile(&c)?;
    let c0 = verify_self_dual(&sh.with_coset(&sh.c2_rep)).map(|x| x.generator().same_row_space(c.generator()));
    let partition = c0.unwrap_or(false) && profile.shadow.total() == 1 << 20;
    parts.push(format!("shadow partition {partition}"));
    // canonical form under 1000 random permutations
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    let base = canonical_form(d.generator())?;
    let mut perm: Vec<usize> = (0..40).collect();
    let mut invariant = true;
    for _ in 0..1000 {
        perm.shuffle(&mut rng);
        invariant &= canonical_form(&d.generator().permute_columns(&perm))?.certificate == base.certificate;
    }
    parts.push(format!("canonical invariance {invariant}"));
    // enumeration against the analytic form
    let odd = construct_lc_odd(d.generator())?;
    let th = odd.theta_by_codewords(6)?;
    let fit = fit_theta(&th, 40, true)?;
    let alpha = fit.alpha.as_ref().map(|a| a.at(0).to_integer());
    let [l1, l3] = shadow_cosets(&odd, 2)?;
    let disjoint = (l1.count_int(2) == 0) != (l3.count_int(2) == 0);
    let e8 = construct_la(&data::hamming8())?;
    let e8_fit = fit_theta(&e8.short_vectors(Rational64::from_integer(3), Execution::Auto)?, 8, false).is_ok();
    let analytic = alpha == Some(BigInt::from(80)) && disjoint && e8_fit;
    parts.push(format!("theta fit alpha {alpha:?}, norm-2 shadow split {}/{}", l1.count_int(2), l3.count_int(2)));
    let ok = mac && partition && invariant && analytic;
    outcome(
        ok,
        format!(
            "full censuses declared out of scope; substitutes: {}",
            parts.join(", ")
        ),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("extremal classification counts", criterion1),
        ("brute-force generation equivalence", criterion2),
        ("beta=10 pipeline", criterion3),
        ("design and moment checks", criterion4),
        ("theta algebra", criterion5),
        ("lattice constructions", criterion6),
        ("D1 verification", criterion7),
        ("covering radius and coset census", criterion8),
        ("desk-scale substitutes", criterion9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (pass, detail) = match f() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "{} criterion {}: {name} [{:.1?}] {detail}",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            t.elapsed()
        );
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
