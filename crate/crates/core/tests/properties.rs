use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use sepcrit::bloch::{augmented_tensor, bases_for, correlation_tensor, pure_bloch, reconstruct};
use sepcrit::catalog::{self, chessboard_ancilla, FAMILIES};
use sepcrit::criteria::{
    augmented_cm_bipartite, battery, cm_bipartite, optimal_witness, ppt, theorem1_eval,
    theorem2_eval, CriterionId, Witness, WitnessKind, VERDICT_EPS,
};
use sepcrit::gellmann::GellMannBasis;
use sepcrit::matcore::{
    c, hermitian_eigenvalues, max_abs, random_pure_state, random_separable, trace_norm,
    ComplexMatrix, ComplexVector, DensityMatrix,
};
use sepcrit::tensor::{outer, RealTensor};

fn ginibre(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        c(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Full-rank random mixed state `G G† / Tr`.
fn random_state(dims: &[usize], rng: &mut ChaCha8Rng) -> DensityMatrix {
    let n: usize = dims.iter().product();
    let g = ginibre(n, n, rng);
    let m = &g * g.adjoint();
    let tr = m.trace();
    let mut m = m.map(|z| z / tr);
    let h = (&m + m.adjoint()).map(|z| z * 0.5);
    m.copy_from(&h);
    DensityMatrix::new(m, dims).unwrap()
}

fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ginibre(n, n, rng).qr().q()
}

fn random_tensor(shape: &[usize], rng: &mut ChaCha8Rng) -> RealTensor {
    let len = shape.iter().product();
    RealTensor::new(
        shape.to_vec(),
        (0..len).map(|_| rng.sample(StandardNormal)).collect(),
    )
    .unwrap()
}

const ROUND_TRIP_PROFILES: [&[usize]; 5] = [&[2, 2], &[3, 3], &[2, 3], &[2, 2, 2], &[3, 3, 3]];

#[test]
fn bloch_round_trip_general_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for dims in ROUND_TRIP_PROFILES {
        let bases = bases_for(dims).unwrap();
        for _ in 0..5 {
            let rho = random_state(dims, &mut rng);
            let back = reconstruct(&augmented_tensor(&rho), &bases).unwrap();
            assert!(max_abs(&(back.matrix() - rho.matrix())) < 1e-10, "{dims:?}");
        }
    }
}

#[test]
fn catalog_states_round_trip() {
    for e in catalog::ENTRIES {
        let rho = e.build(None).unwrap();
        let bases = bases_for(rho.dims()).unwrap();
        let back = reconstruct(&augmented_tensor(&rho), &bases).unwrap();
        assert!(
            max_abs(&(back.matrix() - rho.matrix())) < 1e-10,
            "{}",
            e.name
        );
    }
}

#[test]
fn augmented_corner_and_body() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for dims in ROUND_TRIP_PROFILES {
        let rho = random_state(dims, &mut rng);
        let t = augmented_tensor(&rho);
        let corner = t.tensor.get(&vec![0; dims.len()]);
        assert_eq!(corner, 1.0 / dims.iter().product::<usize>() as f64);
        assert_eq!(t.body(), correlation_tensor(&rho));
        assert!(correlation_tensor(&rho)
            .tensor
            .data()
            .iter()
            .all(|x| x.abs() <= 1.0));
    }
}

#[test]
fn separable_factorization_oracle() {
    for (seed, dims) in [[2, 2].as_slice(), &[3, 3], &[2, 3], &[2, 2, 2], &[3, 2, 2]]
        .into_iter()
        .enumerate()
    {
        let (rho, ens) = random_separable(dims, 4, seed as u64).unwrap();
        let bases = bases_for(dims).unwrap();
        let shape: Vec<usize> = dims.iter().map(|d| d * d).collect();
        let mut oracle = RealTensor::zeros(&shape);
        for (p, parts) in ens.weights.iter().zip(&ens.factors) {
            let vecs: Vec<Vec<f64>> = parts
                .iter()
                .zip(&bases)
                .map(|(psi, b)| pure_bloch(psi, b).unwrap().augmented())
                .collect();
            oracle = oracle.lin_comb(1.0, &outer(&vecs), *p).unwrap();
        }
        let t = augmented_tensor(&rho).tensor;
        let diff = t.lin_comb(1.0, &oracle, -1.0).unwrap();
        assert!(diff.data().iter().all(|x| x.abs() < 1e-10), "{dims:?}");
    }
}

#[test]
fn tensor_map_is_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for dims in ROUND_TRIP_PROFILES {
        let a = random_state(dims, &mut rng);
        let b = random_state(dims, &mut rng);
        let x = 0.3;
        let mixed = augmented_tensor(&a.mix(&b, x).unwrap()).tensor;
        let combo = augmented_tensor(&a)
            .tensor
            .lin_comb(x, &augmented_tensor(&b).tensor, 1.0 - x)
            .unwrap();
        let diff = mixed.lin_comb(1.0, &combo, -1.0).unwrap();
        assert!(diff.frobenius_norm() < 1e-12);
    }
}

#[test]
fn pure_local_bloch_norms() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for d in 2..6 {
        let basis = GellMannBasis::new(d).unwrap();
        for _ in 0..10 {
            let b = pure_bloch(&random_pure_state(d, &mut rng), &basis).unwrap();
            assert!((b.norm() - sepcrit::bloch::BlochVector::pure_norm(d)).abs() < 1e-10);
        }
    }
}

#[test]
fn generator_completeness() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for d in 2..6 {
        let basis = GellMannBasis::new(d).unwrap();
        let g = ginibre(d, d, &mut rng);
        let h = &g + g.adjoint();
        let mut rebuilt = ComplexMatrix::identity(d, d).map(|z| z * h.trace() / d as f64);
        for l in basis.generators() {
            rebuilt += l.map(|z| z * (&h * l).trace() / 2.0);
        }
        assert!(max_abs(&(rebuilt - &h)) < 1e-12);
    }
}

#[test]
fn soundness_with_random_witnesses() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (seed, dims) in [[2, 2].as_slice(), &[3, 3], &[2, 4], &[2, 2, 2], &[3, 3, 3]]
        .into_iter()
        .enumerate()
    {
        for trial in 0..20 {
            let terms = 1 + trial % 6;
            let (rho, _) =
                random_separable(dims, terms, 1000 * seed as u64 + trial as u64).unwrap();
            for kind in [WitnessKind::Correlation, WitnessKind::Augmented] {
                let w = Witness::new(kind, random_tensor(&kind.mode_sizes(dims), &mut rng));
                if dims.len() == 2 {
                    assert!(theorem1_eval(&rho, &w).unwrap().margin <= VERDICT_EPS);
                }
                for mode in 0..dims.len() {
                    assert!(
                        theorem2_eval(&rho, &w, mode).unwrap().margin <= VERDICT_EPS,
                        "{dims:?} mode {mode}"
                    );
                }
            }
        }
    }
}

#[test]
fn contraction_identity_on_ensembles() {
    // Contracting with a mixture of product tensors reduces to one bilinear
    // form per term on any chosen unfolding.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for dims in [[3, 3].as_slice(), &[2, 2, 2], &[2, 3, 2]] {
        let (_, ens) = random_separable(dims, 5, 77).unwrap();
        let bases = bases_for(dims).unwrap();
        let shape: Vec<usize> = dims.iter().map(|d| d * d).collect();
        let w = random_tensor(&shape, &mut rng);
        let mut t = RealTensor::zeros(&shape);
        let mut per_term = vec![0.0; dims.len()];
        for (p, parts) in ens.weights.iter().zip(&ens.factors) {
            let vecs: Vec<Vec<f64>> = parts
                .iter()
                .zip(&bases)
                .map(|(psi, b)| pure_bloch(psi, b).unwrap().augmented())
                .collect();
            t = t.lin_comb(1.0, &outer(&vecs), *p).unwrap();
            for (n, acc) in per_term.iter_mut().enumerate() {
                let rest: Vec<Vec<f64>> = vecs
                    .iter()
                    .enumerate()
                    .filter(|&(m, _)| m != n)
                    .map(|(_, v)| v.clone())
                    .collect();
                let x = nalgebra::DVector::from_vec(vecs[n].clone());
                let y = nalgebra::DVector::from_vec(outer(&rest).data().to_vec());
                *acc += p * (x.transpose() * w.unfold(n).unwrap() * y)[(0, 0)];
            }
        }
        let direct = w.contract(&t).unwrap();
        for acc in per_term {
            assert!((acc - direct).abs() < 1e-10);
        }
    }
}

#[test]
fn specialization_to_corollaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut states = vec![
        catalog::tiles_state(),
        catalog::bell(),
        catalog::werner2(0.6).unwrap(),
    ];
    states.extend((0..3).map(|_| random_state(&[3, 3], &mut rng)));
    states.push(random_state(&[2, 3], &mut rng));
    for rho in &states {
        let aug = augmented_cm_bipartite(rho).unwrap();
        let w = optimal_witness(&augmented_tensor(rho).tensor, WitnessKind::Augmented);
        let via = theorem1_eval(rho, &w).unwrap();
        assert!((aug.lhs - via.lhs).abs() < 1e-9 && (aug.bound - via.bound).abs() < 1e-9);

        let cm = cm_bipartite(rho).unwrap();
        let w = optimal_witness(&correlation_tensor(rho).tensor, WitnessKind::Correlation);
        let via = theorem1_eval(rho, &w).unwrap();
        assert!((cm.lhs - via.lhs).abs() < 1e-9 && (cm.bound - via.bound).abs() < 1e-9);
    }
}

#[test]
fn margins_non_decreasing_under_mixing() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let states = vec![
        catalog::tiles_state(),
        catalog::chessboard_state(),
        catalog::bell(),
        catalog::ghz(3, 2).unwrap(),
        catalog::chessboard_noise(1.0).unwrap(),
        random_state(&[3, 3], &mut rng),
        random_state(&[2, 2, 2], &mut rng),
    ];
    for rho in &states {
        let ids: Vec<CriterionId> = CriterionId::ALL
            .into_iter()
            .filter(|id| *id != CriterionId::WitnessM && id.applies_to(rho.dims()))
            .collect();
        let mut prev: Option<Vec<f64>> = None;
        for k in 0..50 {
            let noisy = rho.with_white_noise(k as f64 / 49.0).unwrap();
            let margins: Vec<f64> = ids
                .iter()
                .map(|id| id.evaluate(&noisy).unwrap().margin)
                .collect();
            if let Some(p) = &prev {
                for (a, b) in p.iter().zip(&margins) {
                    assert!(b >= &(a - 1e-12), "{:?} at step {k}", rho.dims());
                }
            }
            prev = Some(margins);
        }
    }
}

#[test]
fn chessboard_ancilla_choice_is_irrelevant() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let plus = ComplexVector::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)])
        .map(|z| z / 3f64.sqrt());
    let ancillas = [random_pure_state(3, &mut rng), plus];
    for p in [0.5, 0.9] {
        let base = CriterionId::AugmentedGcm
            .evaluate(&catalog::chessboard_noise(p).unwrap())
            .unwrap();
        for a in &ancillas {
            let other = CriterionId::AugmentedGcm
                .evaluate(&chessboard_ancilla(p, a).unwrap())
                .unwrap();
            assert!((base.margin - other.margin).abs() < 1e-9);
        }
    }
}

#[test]
fn separable_states_pass_every_ppt_cut() {
    for (seed, dims) in [[2, 2].as_slice(), &[3, 3], &[2, 4], &[2, 2, 2]]
        .into_iter()
        .enumerate()
    {
        let (rho, _) = random_separable(dims, 6, seed as u64).unwrap();
        for party in 0..dims.len() {
            assert!(hermitian_eigenvalues(&rho.partial_transpose(party).unwrap())[0] >= -1e-9);
        }
        assert!(ppt(&rho).iter().all(|r| !r.is_entangled()));
    }
}

#[test]
fn family_generators_are_valid_states() {
    for fam in FAMILIES {
        for k in 0..=100 {
            let x = fam.range.0 + (fam.range.1 - fam.range.0) * k as f64 / 100.0;
            let rho = fam.at(x).unwrap();
            assert_eq!(rho.dims(), fam.dims);
        }
    }
}

#[test]
fn ghz_single_entry_witness() {
    let rho = catalog::ghz(3, 2).unwrap();
    let mut w = RealTensor::zeros(&[3, 3, 3]);
    w.set(&[0, 0, 0], 1.0);
    let w = Witness::new(WitnessKind::Correlation, w);
    let t = correlation_tensor(&rho).tensor;
    for mode in 0..3 {
        let r = theorem2_eval(&rho, &w, mode).unwrap();
        assert!((r.lhs - t.get(&[0, 0, 0]).abs()).abs() < 1e-15);
        assert!((r.bound - sepcrit::criteria::body_constant(&[2, 2, 2])).abs() < 1e-15);
    }
}

#[test]
fn battery_order_is_fixed() {
    let names = |rho: &DensityMatrix| {
        battery(rho)
            .into_iter()
            .map(|r| r.criterion)
            .collect::<Vec<_>>()
    };
    assert_eq!(
        names(&catalog::tiles_state()),
        ["ppt", "realignment", "cm", "augmented-cm"]
    );
    assert_eq!(
        names(&catalog::ghz(3, 2).unwrap()),
        ["ppt", "ppt", "ppt", "gcm", "augmented-gcm"]
    );
}

#[test]
fn state_file_round_trip_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let rho = random_state(&[2, 3], &mut rng);
    let back = DensityMatrix::from_json_str(&rho.to_json_string()).unwrap();
    assert_eq!(back, rho);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn partial_transpose_is_an_involution(seed in any::<u64>(), profile in 0usize..4) {
        // Separable inputs keep the first transpose a valid state.
        let dims = [[2, 2].as_slice(), &[2, 3], &[3, 3], &[2, 2, 2]][profile];
        let (rho, _) = random_separable(dims, 3, seed).unwrap();
        for party in 0..dims.len() {
            let once = DensityMatrix::new(rho.partial_transpose(party).unwrap(), dims).unwrap();
            prop_assert_eq!(&once.partial_transpose(party).unwrap(), rho.matrix());
        }
    }

    #[test]
    fn realign_preserves_frobenius(seed in any::<u64>(), profile in 0usize..3) {
        let dims = [[2, 2].as_slice(), &[2, 3], &[3, 3]][profile];
        let rho = random_state(dims, &mut ChaCha8Rng::seed_from_u64(seed));
        let r = rho.realign().unwrap();
        prop_assert!((r.norm() - rho.matrix().norm()).abs() < 1e-12);
    }

    #[test]
    fn trace_norm_invariances(seed in any::<u64>(), rows in 1usize..7, cols in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = ginibre(rows, cols, &mut rng);
        let base = trace_norm(&a);
        prop_assert!((trace_norm(&a.transpose()) - base).abs() < 1e-9);
        let u = random_unitary(rows, &mut rng);
        let v = random_unitary(cols, &mut rng);
        prop_assert!((trace_norm(&(u * &a * v)) - base).abs() < 1e-9);
    }

    #[test]
    fn real_witness_sigma_cache_matches(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = Witness::new(WitnessKind::Augmented, random_tensor(&[4, 9, 4], &mut rng));
        prop_assert!((w.sigma_max() - w.recompute_sigma_max()).abs() < 1e-12);
        let t = DMatrix::<f64>::from_fn(3, 3, |_, _| rng.sample(StandardNormal));
        let w2 = Witness::from_matrix(WitnessKind::Correlation, &t);
        prop_assert!((w2.sigma_max() - sepcrit::matcore::real_spectral_norm(&t)).abs() < 1e-12);
    }
}
