//! Invariants checked on generated inputs.

use amplitudes::amplitude::{eval_barcode, eval_grid, shift_amplitude, AmplitudeSpec, Content, Norm};
use amplitudes::barcode::fmt_real;
use amplitudes::distance::{bottleneck, path_metric_1param, path_metric_exhaustive, wasserstein, CostFunction, Exactness, Ground};
use amplitudes::gridmod::random::{random_module_sample, random_ses_sample, random_ses_sample_1d};
use amplitudes::gridmod::{barcode_hilbert, from_barcode, image, kernel, refine_to, to_barcode, GridModule};
use amplitudes::linalg::{kernel_basis, rank};
use amplitudes::rips::{vr_barcodes, DistMatrix};
use amplitudes::stability::{random_barcode, sample_seed};
use amplitudes::{Barcode, Fp, GridGeometry, Matrix};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = Fp> {
    prop::sample::select(vec![2u32, 3, 5, 7]).prop_map(|p| Fp::new(p).unwrap())
}

fn matrix() -> impl Strategy<Value = Matrix> {
    (field(), 1usize..6, 1usize..6).prop_flat_map(|(f, r, c)| {
        prop::collection::vec(prop::collection::vec(0i64..7, c), r).prop_map(move |rows| Matrix::from_rows(f, &rows).unwrap())
    })
}

fn barcode(max_bars: usize, inf_rate: f64) -> impl Strategy<Value = Barcode> {
    any::<u64>().prop_map(move |s| random_barcode(s, max_bars, (0.0, 6.0), (0.25, 4.0), inf_rate).unwrap())
}

fn spec_text() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec![
        "p1", "p2", "p3", "pinf", "totpers", "trop:1", "trop:4", "magnitude", "support", "maxdim", "shift:1", "shift:1,2",
        "shift:0.5,1:l1", "shift:1,1:l2", "hilbert:1", "hilbert:2:counting",
    ])
}

fn close(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in matrix()) {
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.cols(), m.cols());
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(rank(&k), k.cols());
    }

    #[test]
    fn rref_idempotent(m in matrix()) {
        let (r, pivots) = m.rref();
        let (r2, pivots2) = r.rref();
        prop_assert_eq!(r.to_rows(), r2.to_rows());
        prop_assert_eq!(pivots, pivots2);
    }

    #[test]
    fn inverse_when_full_rank(m in matrix()) {
        let inv = m.inverse();
        if m.rows() == m.cols() && rank(&m) == m.rows() {
            let inv = inv.unwrap();
            prop_assert!(m.mul(&inv).is_identity());
            prop_assert!(inv.mul(&m).is_identity());
        } else {
            prop_assert!(inv.is_err());
        }
    }

    #[test]
    fn barcode_text_roundtrip(b in barcode(8, 0.2)) {
        let back = Barcode::parse(&b.to_text()).unwrap();
        prop_assert_eq!(back.canonical(), b.canonical());
    }

    #[test]
    fn fmt_real_stable(x in -1e6f64..1e6) {
        let once = fmt_real(x);
        let parsed: f64 = once.parse().unwrap();
        prop_assert_eq!(fmt_real(parsed), once);
    }

    #[test]
    fn spec_display_roundtrip(s in spec_text()) {
        let spec: AmplitudeSpec = s.parse().unwrap();
        let again: AmplitudeSpec = spec.to_string().parse().unwrap();
        prop_assert_eq!(again, spec);
    }

    #[test]
    fn wasserstein_is_a_metric(a in barcode(5, 0.2), b in barcode(5, 0.2), c in barcode(5, 0.2)) {
        for p in [1.0, 2.0, f64::INFINITY] {
            for g in [Ground::Linf, Ground::L1] {
                let ab = wasserstein(p, &a, &b, g).unwrap();
                prop_assert!(close(ab, wasserstein(p, &b, &a, g).unwrap()) || (ab.is_infinite()));
                prop_assert_eq!(wasserstein(p, &a, &a, g).unwrap(), 0.0);
                let (bc, ac) = (wasserstein(p, &b, &c, g).unwrap(), wasserstein(p, &a, &c, g).unwrap());
                prop_assert!(ac <= ab + bc + 1e-9 * (ab + bc).max(1.0), "p {} {:?}: {} > {} + {}", p, g, ac, ab, bc);
            }
        }
        let bn = bottleneck(&a, &b).unwrap();
        prop_assert!(bn <= wasserstein(1.0, &a, &b, Ground::Linf).unwrap() + 1e-9);
    }

    #[test]
    fn additive_path_metric_is_a_metric(a in barcode(5, 0.0), b in barcode(5, 0.0), c in barcode(5, 0.0)) {
        let spec = AmplitudeSpec::PNorm(1.0);
        let d = |x: &Barcode, y: &Barcode| path_metric_1param(&spec, x, y, CostFunction::Sum).unwrap();
        let ab = d(&a, &b);
        prop_assert_eq!(ab.exactness, Exactness::Exact);
        prop_assert!(close(ab.value, d(&b, &a).value));
        prop_assert_eq!(d(&a, &a).value, 0.0);
        prop_assert!(d(&a, &c).value <= ab.value + d(&b, &c).value + 1e-9);
    }

    #[test]
    fn fast_and_exhaustive_search_agree(a in barcode(4, 0.0), b in barcode(4, 0.0)) {
        for (spec, f) in [(AmplitudeSpec::PNorm(1.0), CostFunction::Sum), (AmplitudeSpec::TotPers, CostFunction::Sum), (AmplitudeSpec::PNorm(f64::INFINITY), CostFunction::Max)] {
            let fast = path_metric_1param(&spec, &a, &b, f).unwrap().value;
            let slow = path_metric_exhaustive(&spec, &a, &b, f).unwrap().value;
            prop_assert!(close(fast, slow), "{} {:?}: {} vs {}", spec, f, fast, slow);
        }
    }

    #[test]
    fn p_norms_decrease_in_p(b in barcode(8, 0.0)) {
        let vals: Vec<f64> = ["p1", "p2", "p3", "pinf"].iter().map(|s| eval_barcode(&s.parse().unwrap(), &b).unwrap()).collect();
        for w in vals.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-9);
        }
    }

    #[test]
    fn barcode_module_roundtrip(b in barcode(6, 0.2)) {
        let m = from_barcode(Fp::default(), &b).unwrap();
        prop_assert_eq!(to_barcode(&m).unwrap().canonical(), b.without_empty().canonical());
        let json = GridModule::from_json(&m.to_json()).unwrap();
        prop_assert_eq!(json, m.clone());
        let h = barcode_hilbert(&b).unwrap();
        prop_assert_eq!(m.hilbert(), h);
    }

    #[test]
    fn module_amplitudes_match_barcode_amplitudes(b in barcode(6, 0.0)) {
        let m = from_barcode(Fp::default(), &b).unwrap();
        for s in ["pinf", "hilbert:1", "maxdim"] {
            let spec: AmplitudeSpec = s.parse().unwrap();
            prop_assert!(close(eval_grid(&spec, &m).unwrap(), eval_barcode(&spec, &b).unwrap()), "{}", s);
        }
        prop_assert!(close(eval_grid(&"shift:1".parse().unwrap(), &m).unwrap(), eval_barcode(&"pinf".parse().unwrap(), &b).unwrap()));
    }

    #[test]
    fn ses_dimensions_add_up(seed in any::<u64>(), one_dim in any::<bool>()) {
        let ses = if one_dim { random_ses_sample_1d(seed, Fp::default()) } else { random_ses_sample(seed, Fp::default()) };
        ses.validate().unwrap();
        for i in 0..ses.b.dims().len() {
            prop_assert_eq!(ses.b.dim_at_index(i), ses.a.dim_at_index(i) + ses.c.dim_at_index(i));
        }
        let (k, _) = kernel(&ses.proj).unwrap();
        let (im, _) = image(&ses.incl).unwrap();
        prop_assert_eq!(k.dims(), im.dims());
    }

    #[test]
    fn kernel_plus_image_is_source(seed in any::<u64>()) {
        let ses = random_ses_sample(seed, Fp::default());
        let (k, _) = kernel(&ses.proj).unwrap();
        let (im, _) = image(&ses.proj).unwrap();
        for i in 0..ses.b.dims().len() {
            prop_assert_eq!(k.dim_at_index(i) + im.dim_at_index(i), ses.b.dim_at_index(i));
        }
    }

    #[test]
    fn refinement_preserves_amplitudes(seed in any::<u64>(), n in 1usize..3) {
        let m = random_module_sample(seed, Fp::default(), n);
        let g = m.geometry();
        let finer: Vec<Vec<f64>> = (0..n)
            .map(|a| {
                let bp = g.axis(a);
                let mut out: Vec<f64> = bp.windows(2).flat_map(|w| [w[0], (w[0] + w[1]) / 2.0]).collect();
                out.push(*bp.last().unwrap());
                out
            })
            .collect();
        let fine = refine_to(&m, &GridGeometry::new(finer).unwrap()).unwrap();
        fine.validate().unwrap();
        let v = vec![1.0; n];
        prop_assert_eq!(shift_amplitude(&m, &v, Norm::Linf).unwrap(), shift_amplitude(&fine, &v, Norm::Linf).unwrap());
        let spec = AmplitudeSpec::LpHilbert { p: 1.0, content: Content::Lebesgue };
        prop_assert!(close(eval_grid(&spec, &m).unwrap(), eval_grid(&spec, &fine).unwrap()));
        prop_assert_eq!(m.max_dim(), fine.max_dim());
    }

    #[test]
    fn shift_amplitude_of_sum_is_max(s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = random_module_sample(s1, Fp::default(), 1);
        let b = random_module_sample(s2, Fp::default(), 1);
        if a.geometry() == b.geometry() {
            let sum = a.direct_sum(&b).unwrap();
            let v = [1.0];
            let want = shift_amplitude(&a, &v, Norm::Linf).unwrap().max(shift_amplitude(&b, &v, Norm::Linf).unwrap());
            prop_assert_eq!(shift_amplitude(&sum, &v, Norm::Linf).unwrap(), want);
        }
    }

    #[test]
    fn rips_relabeling_invariance(pts in prop::collection::vec((0u8..6, 0u8..6), 2..7), rot in 0usize..7) {
        let pts: Vec<Vec<f64>> = pts.into_iter().map(|(x, y)| vec![x as f64, y as f64]).collect();
        let mut moved = pts.clone();
        moved.rotate_left(rot % pts.len());
        moved.reverse();
        let a = vr_barcodes(&DistMatrix::from_points(&pts).unwrap(), 1, f64::INFINITY).unwrap();
        let b = vr_barcodes(&DistMatrix::from_points(&moved).unwrap(), 1, f64::INFINITY).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn rips_h0_counts(pts in prop::collection::vec((0u8..10, 0u8..10), 1..8)) {
        let mut pts: Vec<Vec<f64>> = pts.into_iter().map(|(x, y)| vec![x as f64, y as f64]).collect();
        pts.sort_by(|p, q| p.partial_cmp(q).unwrap());
        pts.dedup();
        let h0 = &vr_barcodes(&DistMatrix::from_points(&pts).unwrap(), 0, f64::INFINITY).unwrap()[0];
        prop_assert_eq!(h0.hilbert_function(0.0), pts.len());
        prop_assert_eq!(h0.infinite_count(), 1);
    }

    #[test]
    fn sample_seeds_are_deterministic(seed in any::<u64>(), i in 0usize..1000) {
        prop_assert_eq!(sample_seed(seed, "LIP", i), sample_seed(seed, "LIP", i));
        prop_assert_ne!(sample_seed(seed, "LIP", i), sample_seed(seed, "LIP", i + 1));
        let b = random_barcode(sample_seed(seed, "LIP", i), 6, (0.0, 4.0), (0.5, 2.0), 0.0).unwrap();
        prop_assert!(b.len() <= 6);
        for bar in &b.bars {
            prop_assert!(bar.birth >= 0.0 && bar.birth <= 4.0);
            prop_assert!(bar.length() >= 0.5 && bar.length() <= 2.0);
        }
    }
}
