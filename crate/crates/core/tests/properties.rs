use moduli_coh::amalgam::{sl2z_cohomology, sl2z_cohomology_row, CoefficientRing};
use moduli_coh::brute::random_cyclic_action;
use moduli_coh::cyclic::{cyclic_cohomology, CyclicAction};
use moduli_coh::exterior::{pullback_on_h2, ExteriorElement, Layout};
use moduli_coh::linalg::{smith_normal_form, BaseRing, FgAbelianGroup, IntegerMatrix};
use moduli_coh::moduli::{e2_entry, half_inverted_group};
use moduli_coh::modules::{sym_power_matrix, GroupModule};
use moduli_coh::splitting::{cochain_differential, splitting_map, Cochain, DualVector};
use moduli_coh::torsor::{build_canonical_torsor, gl2_z4, h1_one_cocycles, FiniteGroupData};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

/// Words in `S` and `T`, giving arbitrary elements of `SL_2(Z)`.
fn sl2z_element() -> impl Strategy<Value = IntegerMatrix> {
    prop::collection::vec(0..4usize, 0..8).prop_map(|word| {
        let gens = [
            IntegerMatrix::from_rows(&[[0, -1], [1, 0]]),
            IntegerMatrix::from_rows(&[[1, 1], [0, 1]]),
            IntegerMatrix::from_rows(&[[1, -1], [0, 1]]),
            IntegerMatrix::from_rows(&[[1, 0], [1, 1]]),
        ];
        word.iter().fold(IntegerMatrix::identity(2), |acc, &i| &acc * &gens[i])
    })
}

fn small_matrix(max: usize) -> impl Strategy<Value = IntegerMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(-4i64..=4, r * c).prop_map(move |e| IntegerMatrix::from_i64(r, c, &e).unwrap())
    })
}

fn group_strategy() -> impl Strategy<Value = FgAbelianGroup> {
    (0usize..4, prop::collection::vec(1u64..40, 0..5))
        .prop_map(|(r, ds)| FgAbelianGroup::from_parts(r, ds.into_iter().map(BigInt::from)))
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn sym_power_is_multiplicative(g in sl2z_element(), h in sl2z_element(), k in 0usize..7) {
        let lhs = sym_power_matrix(&(&g * &h), k).unwrap();
        let rhs = &sym_power_matrix(&g, k).unwrap() * &sym_power_matrix(&h, k).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(sym_power_matrix(&g, k).unwrap().determinant().unwrap().abs().is_one());
    }

    #[test]
    fn sym_power_of_minus_identity(k in 0usize..10) {
        let m = sym_power_matrix(&IntegerMatrix::scalar(2, -1), k).unwrap();
        let sign = if k % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(m, IntegerMatrix::scalar(k + 1, sign));
    }

    #[test]
    fn cyclic_cohomology_is_two_periodic(seed in any::<u64>(), m in prop::sample::select(vec![2usize, 3, 4, 6])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_cyclic_action(&mut rng, m, 4).unwrap();
        for n in 1..=4 {
            prop_assert_eq!(cyclic_cohomology(&a, n).unwrap(), cyclic_cohomology(&a, n + 2).unwrap());
        }
    }

    #[test]
    fn cyclic_h1_matches_cocycle_count(seed in any::<u64>(), m in prop::sample::select(vec![2usize, 3, 4, 6]), p in prop::sample::select(vec![2u64, 3, 5])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_cyclic_action(&mut rng, m, 3).unwrap();
        let rows: Vec<Vec<u64>> = a
            .generator()
            .reduce_mod(p)
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|x| u64::try_from(x).unwrap()).collect())
            .collect();
        let group = FiniteGroupData::cyclic(m, &rows, p).unwrap();
        let over_fp = CyclicAction::new(m, a.generator().clone(), BaseRing::prime_field(p).unwrap()).unwrap();
        let dim = cyclic_cohomology(&over_fp, 1).unwrap().mod_p_dims(p).unwrap().0;
        prop_assert_eq!(h1_one_cocycles(&group).unwrap(), dim);
    }

    #[test]
    fn amalgam_is_two_periodic(k in 0usize..11, p in 2usize..7) {
        let row = sl2z_cohomology_row(&GroupModule::sym_power(k, BaseRing::Integers).unwrap(), p + 2).unwrap();
        prop_assert_eq!(&row[p], &row[p + 2]);
    }

    #[test]
    fn universal_coefficients(k in 0usize..7, n in 0usize..5, p in prop::sample::select(vec![2u64, 3, 5])) {
        let h_n = sl2z_cohomology(k, n, &CoefficientRing::Integers).unwrap();
        let h_next = sl2z_cohomology(k, n + 1, &CoefficientRing::Integers).unwrap();
        let reduced = sl2z_cohomology(k, n, &CoefficientRing::Mod(p)).unwrap();
        let expected = h_n.mod_p_dims(p).unwrap().0 + h_next.mod_p_dims(p).unwrap().1;
        prop_assert_eq!(reduced.mod_p_dims(p).unwrap().0, expected);
    }

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(a in small_matrix(5)) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(&(&s.left * &a) * &s.right, s.diagonal.clone());
        prop_assert!(s.left.determinant().unwrap().abs().is_one());
        prop_assert!(s.right.determinant().unwrap().abs().is_one());
        let d = s.diagonal_entries();
        for w in d.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
        }
    }

    #[test]
    fn groups_round_trip(g in group_strategy()) {
        prop_assert_eq!(g.to_string().parse::<FgAbelianGroup>().unwrap(), g.clone());
        let json = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(serde_json::from_str::<FgAbelianGroup>(&json).unwrap(), g.clone());
        prop_assert_eq!(g.render_primary().parse::<FgAbelianGroup>().unwrap(), g);
    }
}

fn gl2_pair() -> impl Strategy<Value = (usize, usize)> {
    (0usize..96, 0usize..96)
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn torsor_action_is_a_homomorphism((i, j) in gl2_pair()) {
        let t = build_canonical_torsor();
        let gs = gl2_z4();
        let (g, h) = (&gs[i], &gs[j]);
        let lhs = t.matrix_action(&g.mul(h)).unwrap();
        let rhs = t.matrix_action(g).unwrap().compose(&t.matrix_action(h).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn torsor_action_twists_translations(i in 0usize..96, m in 0usize..4) {
        let t = build_canonical_torsor();
        let g = &gl2_z4()[i];
        let shift = t.m2[m];
        let lhs = t.matrix_action(g).unwrap().compose(&t.translation(shift).unwrap());
        let rhs = t.translation(g.apply(shift)).unwrap().compose(&t.matrix_action(g).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

fn form(d: usize) -> impl Strategy<Value = DualVector> {
    prop::collection::vec(-4i64..=4, d).prop_map(|c| DualVector::from_integers(&c))
}

fn points(arity: usize, d: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, d), arity)
}

fn forms_and_points() -> impl Strategy<Value = (Vec<DualVector>, Vec<Vec<i64>>)> {
    (1usize..=3)
        .prop_flat_map(|d| (1..=d).prop_map(move |k| (k, d)))
        .prop_flat_map(|(k, d)| (prop::collection::vec(form(d), k), points(k, d)))
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn d_squared_vanishes(phis in prop::collection::vec(form(3), 2), x in points(4, 3)) {
        let f = phis[0].as_cochain().cup(&phis[1].as_cochain()).unwrap();
        let g = Cochain::new(2, 3, move |args| {
            let v = f.eval(args).unwrap();
            &v * &v
        });
        let dd = cochain_differential(&cochain_differential(&g));
        prop_assert!(dd.eval(&x).unwrap().is_zero());
    }

    #[test]
    fn splitting_map_is_alternating((phis, x) in forms_and_points()) {
        let a = splitting_map(&phis).unwrap().eval(&x).unwrap();
        if phis.len() >= 2 {
            let mut swapped = phis.clone();
            swapped.swap(0, 1);
            prop_assert_eq!(splitting_map(&swapped).unwrap().eval(&x).unwrap(), -a.clone());
            let mut repeated = phis.clone();
            repeated[1] = repeated[0].clone();
            prop_assert!(splitting_map(&repeated).unwrap().eval(&x).unwrap().is_zero());
        }
    }

    #[test]
    fn splitting_map_is_multilinear((phis, x) in forms_and_points(), extra in form(3), c in -3i64..=3) {
        let d = phis[0].rank();
        let extra = DualVector::new(extra.coeffs[..d].to_vec());
        let c = BigRational::from_integer(c.into());
        let mut combined = phis.clone();
        combined[0] = phis[0].add(&extra.scale(&c));
        let mut other = phis.clone();
        other[0] = extra;
        let lhs = splitting_map(&combined).unwrap().eval(&x).unwrap();
        let rhs = splitting_map(&phis).unwrap().eval(&x).unwrap() + c * splitting_map(&other).unwrap().eval(&x).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

fn exterior(layout: Layout) -> impl Strategy<Value = ExteriorElement> {
    let n = layout.generators();
    prop::collection::vec((prop::collection::btree_set(0..n, 0..=3), -3i64..=3), 0..4).prop_map(move |terms| {
        terms.into_iter().fold(ExteriorElement::zero(layout), |acc, (idx, c)| {
            let idx: Vec<usize> = idx.into_iter().collect();
            acc.add(&ExteriorElement::monomial(layout, &idx).scale(&BigInt::from(c)))
        })
    })
}

fn homogeneous(layout: Layout, degree: usize) -> impl Strategy<Value = ExteriorElement> {
    let n = layout.generators();
    prop::collection::vec((prop::sample::subsequence((0..n).collect::<Vec<_>>(), degree), -3i64..=3), 0..4)
        .prop_map(move |terms| {
            terms.into_iter().fold(ExteriorElement::zero(layout), |acc, (idx, c)| {
                acc.add(&ExteriorElement::monomial(layout, &idx).scale(&BigInt::from(c)))
            })
        })
}

fn graded_pair() -> impl Strategy<Value = (usize, usize, ExteriorElement, ExteriorElement)> {
    (0usize..4, 0usize..4)
        .prop_flat_map(|(p, q)| (Just(p), Just(q), homogeneous(LAYOUT, p), homogeneous(LAYOUT, q)))
}

const LAYOUT: Layout = Layout { torus_copies: 2, circles: 2 };

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn wedge_is_associative(a in exterior(LAYOUT), b in exterior(LAYOUT), c in exterior(LAYOUT)) {
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
    }

    #[test]
    fn wedge_is_graded_commutative((p, q, a, b) in graded_pair()) {
        let sign = BigInt::from(if p * q % 2 == 0 { 1 } else { -1 });
        prop_assert_eq!(a.wedge(&b), b.wedge(&a).scale(&sign));
    }

    #[test]
    fn pullback_is_linear(l in prop::collection::vec(-5i64..=5, 2), m in prop::collection::vec(-5i64..=5, 2)) {
        let (l, m) = (DualVector::from_integers(&l), DualVector::from_integers(&m));
        let sum = pullback_on_h2(&l.add(&m)).unwrap();
        prop_assert_eq!(sum, pullback_on_h2(&l).unwrap().add(&pullback_on_h2(&m).unwrap()));
    }
}

#[test]
fn no_invariants_in_positive_weight() {
    for k in 1..=10 {
        assert!(sl2z_cohomology(k, 0, &CoefficientRing::Integers).unwrap().is_zero(), "k = {k}");
    }
}

#[test]
fn odd_rows_vanish() {
    for p in 0..6 {
        for q in (1..10).step_by(2) {
            assert!(e2_entry(p, q).unwrap().is_zero(), "E_2^({p},{q})");
        }
    }
}

#[test]
fn half_inverted_has_no_two_torsion() {
    for n in 0..=9 {
        assert_eq!(half_inverted_group(n).unwrap().mod_p_dims(2).unwrap().1, 0, "n = {n}");
    }
}
