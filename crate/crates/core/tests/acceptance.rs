//! Acceptance gate: one line per criterion.
//!
//! Runs without the libtest harness so the lines always print. The process
//! fails if any criterion regresses from its recorded status.

mod common;

use std::process::ExitCode;

use common::{cyclic_oracle, parse, sym_low_degree};
use moduli_coh::amalgam::{build_total_complex, sl2z_cohomology, sl2z_cohomology_module, sl2z_cohomology_row, CoefficientRing};
use moduli_coh::brute::{cyclic_oracle_agreement, linalg_oracle_agreement, random_small_complex};
use moduli_coh::cyclic::{cyclic_cohomology, periodic_complex, CyclicAction};
use moduli_coh::exterior::verify_square;
use moduli_coh::linalg::{smith_normal_form, BaseRing, CochainComplex, FgAbelianGroup, IntegerMatrix};
use moduli_coh::moduli::{dagger_group, fty_consistency, half_inverted_e2_sum, half_inverted_group, m11_group, p_torsion_scan};
use moduli_coh::modules::{CoefficientModule, GroupModule};
use moduli_coh::splitting::{verify_cup_primitive, verify_d_after_a, DualVector};
use moduli_coh::torsor::{build_canonical_torsor, h1_one_cocycles, torsor_nontriviality_witness, FiniteGroupData};
use num_bigint::BigInt;
use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0;

#[derive(PartialEq, Eq, Debug)]
enum Status {
    Pass,
    /// Not met; the deviation is the one recorded as expected.
    KnownDeviation,
    Fail,
}

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    status: Status,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { status: Status::Pass, detail: detail.into() }
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { status: if ok { Status::Pass } else { Status::Fail }, detail: detail.into() }
}

/// Stated `H^p(SL2(Z), M_k)` for `p = 0, 1`, even `p >= 2`, odd `p >= 3`.
const STATED_GRID: [[&str; 4]; 5] = [
    ["Z", "0", "Z/4 + Z/3", "0"],
    ["0", "0", "Z/2", "0"],
    ["0", "Z + Z/2", "0", "Z/2 + Z/2"],
    ["0", "Z/2", "Z/2", "Z/2"],
    ["0", "Z + Z/2 + Z/3", "Z/4", "Z/2 + Z/2 + Z/3"],
];

fn stated_cell(k: usize, p: usize) -> FgAbelianGroup {
    let column = match p {
        0 | 1 => p,
        p if p % 2 == 0 => 2,
        _ => 3,
    };
    parse(STATED_GRID[k][column])
}

fn criterion_1() -> Outcome {
    let mut deviations = Vec::new();
    let mut matched = 0;
    for k in 0..=4 {
        for p in 0..=7 {
            let got = sl2z_cohomology(k, p, &CoefficientRing::Integers).unwrap();
            if got == stated_cell(k, p) {
                matched += 1;
            } else {
                deviations.push((k, p, got));
            }
        }
    }
    let only_h1_m4 = deviations.len() == 1 && deviations[0].0 == 4 && deviations[0].1 == 1;
    if deviations.is_empty() {
        return pass(format!("{matched}/40 cells"));
    }
    let (k, p, got) = &deviations[0];
    // The deviating cell must equal the independent crossed-homomorphism
    // oracle, and the contragredient module must give the stated value.
    let oracle_agrees = *got == sym_low_degree(4).1;
    let dual = sl2z_cohomology_module(&CoefficientModule::SymKDual(4).build().unwrap(), 1).unwrap();
    let dual_matches = dual == stated_cell(4, 1);
    let status = if only_h1_m4 && oracle_agrees && dual_matches && *got == parse("Z + Z/12") {
        Status::KnownDeviation
    } else {
        Status::Fail
    };
    let detail = format!(
        "{matched}/40 cells match; H^{p}(G, M_{k}) = {} (oracle agrees: {oracle_agrees}), stated {}; \
         Hom(M_4, Z) gives {}",
        got.render_primary(),
        stated_cell(*k, *p).render_primary(),
        dual.render_primary()
    );
    Outcome { status, detail }
}

fn criterion_2() -> Outcome {
    let m11 = ["Z", "0", "Z/12", "0", "Z/12", "0"];
    let dagger = ["0", "0", "0", "0", "Z/2", "Z + Z/2", "Z/2", "Z/2 + Z/2 + Z/2", "Z/2 + Z/2", "Z + Z/2 + Z/2 + Z/2 + Z/2 + Z/3"];
    let m11_ok = m11.iter().enumerate().all(|(n, s)| m11_group(n).unwrap() == parse(s));
    let got: Vec<FgAbelianGroup> = (0..=9).map(|n| dagger_group(n).unwrap()).collect();
    let mismatched: Vec<usize> = (0..=9).filter(|&n| got[n] != parse(dagger[n])).collect();
    if m11_ok && mismatched.is_empty() {
        return pass("M_11 for n <= 5 and dagger part for n <= 9");
    }
    // Degree 9 collects H^(9-2k)(G, M_k) for k = 1..4; only the k = 4 term
    // is affected by the H^1 discrepancy.
    let expected_9 = parse("Z + Z/2 + Z/2 + Z/2 + Z/12");
    let h1_dual = sl2z_cohomology_module(&CoefficientModule::SymKDual(4).build().unwrap(), 1).unwrap();
    let dual_9 = (1..=3)
        .map(|k| sl2z_cohomology(k, 9 - 2 * k, &CoefficientRing::Integers).unwrap())
        .fold(h1_dual, |acc, g| acc.direct_sum(&g));
    let known = m11_ok && mismatched == [9] && got[9] == expected_9 && dual_9 == parse(dagger[9]);
    Outcome {
        status: if known { Status::KnownDeviation } else { Status::Fail },
        detail: format!(
            "M_11 ok: {m11_ok}; mismatches at n = {mismatched:?}; dagger(9) = {} vs stated {}; \
             with Hom(M_4, Z) in place of M_4 it is {}",
            got[9].render_primary(),
            parse(dagger[9]).render_primary(),
            dual_9.render_primary()
        ),
    }
}

fn criterion_3() -> Outcome {
    let report = fty_consistency(8).unwrap();
    let dims: Vec<usize> = report.rows.iter().map(|r| r.computed).collect();
    check(report.is_consistent() && dims == [0, 0, 0, 1, 2, 3, 4, 5, 6], format!("dims {dims:?}"))
}

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    for k in 0..=8 {
        let row = sl2z_cohomology_row(&GroupModule::sym_power(k, BaseRing::Integers).unwrap(), 8).unwrap();
        bad.extend((2..=6).filter(|&p| row[p] != row[p + 2]).map(|p| (k, p)));
    }
    check(bad.is_empty(), format!("k <= 8, 2 <= p <= 6; failures {bad:?}"))
}

fn criterion_5() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for q in [5u64, 7, 11, 13] {
        let w = p_torsion_scan(q).unwrap();
        ok &= w.passed();
        parts.push(format!("q={q}: {}", w.divisible_factor.map_or("none".into(), |d| format!("Z/{d}"))));
    }
    check(ok, parts.join(", "))
}

fn criterion_6() -> Outcome {
    let mut ok = true;
    for n in 0..=9 {
        let g = half_inverted_group(n).unwrap();
        let sum = half_inverted_e2_sum(n).unwrap();
        ok &= g == sum && g.mod_p_dims(2).unwrap().1 == 0;
    }
    check(ok, "n <= 9")
}

fn criterion_7() -> Outcome {
    let t = build_canonical_torsor();
    let size = t.t.len() == 4;
    let simply = (0..4).all(|i| t.translation_orbit(i).len() == 4 && t.translation_stabilizer(i).len() == 1);
    let w = torsor_nontriviality_witness();
    let cycle = w.permutation.cycle_type() == vec![4];
    let h1 = h1_one_cocycles(&FiniteGroupData::gl2_z4_on_f2_squared()).unwrap();
    let h1_sl2z = sl2z_cohomology_module(&CoefficientModule::F2Squared.build().unwrap(), 1).unwrap();
    let order_two = h1_sl2z.order() == Some(BigInt::from(2));
    check(
        size && simply && cycle && h1 == 1 && order_two,
        format!("|T| = {}, simply transitive {simply}, cycle type {:?}, dim H^1 = {h1}, H^1(SL2Z) = {h1_sl2z}", t.t.len(), w.permutation.cycle_type()),
    )
}

fn criterion_8() -> Outcome {
    let mut ok = true;
    let mut count = 0;
    for d in 1..=3 {
        for k in 1..=d {
            ok &= verify_d_after_a(k, d, 1000, SEED).unwrap().passed();
            count += 1;
        }
    }
    for d in 2..=3 {
        for i in 0..d {
            for j in 0..d {
                ok &= verify_cup_primitive(&DualVector::basis(d, i), &DualVector::basis(d, j), 1000, SEED).unwrap().passed();
                count += 1;
            }
        }
    }
    check(ok, format!("{count} identities, 1000 samples each"))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let cyclic = cyclic_oracle_agreement(&mut rng, 50).unwrap();
    let linalg = linalg_oracle_agreement(&mut rng, 100).unwrap();
    check(
        cyclic.passed() && linalg.passed(),
        format!("{} bar-complex groups, {} complex groups agree", cyclic.checked, linalg.checked),
    )
}

fn criterion_10() -> Outcome {
    let swap = CyclicAction::integral(2, IntegerMatrix::from_rows(&[[0, 1], [1, 0]])).unwrap();
    let refl = CyclicAction::integral(2, IntegerMatrix::diagonal(&[1, -1])).unwrap();
    let h_swap = cyclic_cohomology(&swap, 2).unwrap();
    let h_refl = cyclic_cohomology(&refl, 2).unwrap();
    let oracle_ok = h_swap == cyclic_oracle(&vec![vec![0, 1], vec![1, 0]], 2, 2)
        && h_refl == cyclic_oracle(&vec![vec![1, 0], vec![0, -1]], 2, 2);
    let mod2 = CyclicAction::new(2, IntegerMatrix::diagonal(&[1, -1]), BaseRing::prime_field(2).unwrap()).unwrap();
    let fixed = cyclic_cohomology(&mod2, 0).unwrap();
    check(
        h_swap.is_zero() && h_refl == parse("Z/2") && fixed == parse("Z/2 + Z/2") && oracle_ok,
        format!("swap {h_swap}, diag(1,-1) {h_refl}, mod-2 fixed {fixed}"),
    )
}

fn criterion_11() -> Outcome {
    let r1 = verify_square(1).unwrap();
    let r2 = verify_square(2).unwrap();
    check(r1.passed() && r2.passed(), format!("k = 1 sign {:?}, k = 2 sign {:?}", r1.sign, r2.sign))
}

fn is_complex(c: &CochainComplex) -> bool {
    c.differentials().windows(2).all(|w| (&w[1] * &w[0]).is_zero())
}

fn snf_ok(a: &IntegerMatrix) -> bool {
    let s = smith_normal_form(a);
    let unimodular = |m: &IntegerMatrix| m.determinant().unwrap().abs() == BigInt::from(1);
    &(&s.left * a) * &s.right == s.diagonal && s.diagonal.is_diagonal() && unimodular(&s.left) && unimodular(&s.right)
}

fn criterion_12() -> Outcome {
    let mut complexes: Vec<CochainComplex> = Vec::new();
    for k in 0..=8 {
        let m = GroupModule::sym_power(k, BaseRing::Integers).unwrap();
        complexes.push(build_total_complex(&m, 10).unwrap().complex().clone());
    }
    for (m, g) in [(4, [[0, -1], [1, 0]]), (6, [[0, -1], [1, 1]]), (2, [[0, 1], [1, 0]])] {
        complexes.push(periodic_complex(&CyclicAction::integral(m, IntegerMatrix::from_rows(&g)).unwrap(), 8).unwrap());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    complexes.extend((0..100).map(|_| random_small_complex(&mut rng)));
    let all_complexes = complexes.iter().all(is_complex);
    let matrices: Vec<&IntegerMatrix> = complexes.iter().flat_map(|c| c.differentials()).collect();
    let all_snf = matrices.iter().all(|a| snf_ok(a));
    check(
        all_complexes && all_snf,
        format!("{} complexes, {} Smith decompositions", complexes.len(), matrices.len()),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("SL2(Z) table, k <= 4, p <= 7", criterion_1),
        ("M_11 and dagger tables", criterion_2),
        ("FTY consistency", criterion_3),
        ("2-periodicity", criterion_4),
        ("p-torsion", criterion_5),
        ("Z[1/2] splitting", criterion_6),
        ("torsor suite", criterion_7),
        ("cochain splitting", criterion_8),
        ("oracle equivalence", criterion_9),
        ("real-place values", criterion_10),
        ("pullback square", criterion_11),
        ("structural", criterion_12),
    ];
    let mut regressions = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = f();
        let mark = match outcome.status {
            Status::Pass => "PASS",
            Status::KnownDeviation => "FAIL (known deviation)",
            Status::Fail => {
                regressions += 1;
                "FAIL"
            }
        };
        println!("criterion {:>2} {mark}: {name}: {}", i + 1, outcome.detail);
    }
    if regressions == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{regressions} criteria regressed");
        ExitCode::FAILURE
    }
}
