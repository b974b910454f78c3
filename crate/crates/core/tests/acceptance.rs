//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

mod common;

use std::process::ExitCode;

use amplitudes::amplitude::{c_tau_rank, eval_barcode, hilbert_invariance_check, lp_integral, AmplitudeSpec, Content};
use amplitudes::distance::{abs_distance, bottleneck, lp_hilbert_distance_barcodes, path_metric_1param, CostFunction};
use amplitudes::gridmod::random::{random_module_sample, rng_from_seed};
use amplitudes::gridmod::{barcode_hilbert, quotient_restriction};
use amplitudes::linalg::Matrix;
use amplitudes::rips::{vr_barcodes, DistMatrix};
use amplitudes::stability::{ctau_disc_module, random_barcode, run_catalog, run_counterexamples, CheckReport};
use amplitudes::{Barcode, Face, Fp, GridGeometry, GridModule};
use rand::Rng;

const SEED: u64 = 20240;

/// Collects the failed items of one criterion.
#[derive(Default)]
struct Tally {
    items: usize,
    failed: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.items += 1;
        if !ok {
            self.failed.push(what());
        }
    }
}

fn bc(p: &[(f64, f64)]) -> Barcode {
    Barcode::from_pairs(p)
}

fn spec(s: &str) -> AmplitudeSpec {
    s.parse().unwrap()
}

fn reference_values() -> Tally {
    let mut t = Tally::default();
    let (m, n) = (bc(&[(0.0, 3.0)]), bc(&[(4.0, 5.0)]));
    let v = bottleneck(&m, &n).unwrap();
    t.check(v == 1.5, || format!("bottleneck = {v}, want 1.5"));
    for k in 1..=3 {
        let v = path_metric_1param(&AmplitudeSpec::TropLen(k), &m, &n, CostFunction::Sum).unwrap().value;
        t.check(v == 4.0, || format!("d_T{k} = {v}, want 4"));
    }
    let (a, b) = (bc(&[(0.0, 1.0)]), bc(&[(3.0, 4.0)]));
    for p in ["p1", "p2", "pinf"] {
        let sum = path_metric_1param(&spec(p), &a, &b, CostFunction::Sum).unwrap().value;
        let max = path_metric_1param(&spec(p), &a, &b, CostFunction::Max).unwrap().value;
        let abs = abs_distance(&spec(p), &a, &b).unwrap();
        t.check(sum == 2.0, || format!("d_{p} sum = {sum}, want 2"));
        t.check(max == 1.0, || format!("d_{p} max = {max}, want 1"));
        t.check(abs == 0.0, || format!("abs_{p} = {abs}, want 0"));
    }
    let split = bc(&[(0.0, 1.0), (1.0, 2.0)]);
    let whole = bc(&[(0.0, 2.0)]);
    for p in [1.0, 2.0] {
        let v = lp_hilbert_distance_barcodes(p, &split, &whole, &Content::Lebesgue).unwrap();
        t.check(v == 0.0, || format!("L^{p} distance = {v}, want 0"));
    }
    let f = Fp::default();
    let tau = Face::new(vec![0], 2).unwrap();
    for k in [1, 2, 4] {
        let c = c_tau_rank(&ctau_disc_module(k).unwrap(), &tau, &Content::Lebesgue).unwrap();
        t.check(c == 1.0, || format!("c_tau(M_{k}) = {c}, want 1"));
    }
    let up = GridModule::upset(f, GridGeometry::unit(&[3, 3]).unwrap(), &[0, 0]).unwrap();
    for axes in [vec![0], vec![1], vec![0, 1]] {
        let c = c_tau_rank(&up, &Face::new(axes.clone(), 2).unwrap(), &Content::Lebesgue).unwrap();
        t.check(c == 0.0, || format!("c_tau(up-set), tau = {axes:?}: {c}, want 0"));
    }
    let stripe = GridModule::interval(f, GridGeometry::unit(&[5, 1]).unwrap(), &[2, 0], &[Some(3), None]).unwrap();
    let c = c_tau_rank(&stripe, &tau, &Content::Counting).unwrap();
    t.check(c == 2.0, || format!("c_tau(stripe) = {c}, want 2"));
    // (n e1 + R^t_{>=0}) x U along the first t axes restricts to U
    for shift in [1.0, 3.0] {
        for t_axes in [1usize, 2] {
            let mut bps: Vec<Vec<f64>> = (0..t_axes).map(|_| vec![0.0, shift]).collect();
            bps.push(vec![0.0, 1.0, 2.5, 4.0]);
            let g = GridGeometry::new(bps).unwrap();
            let mut lo = vec![0; t_axes];
            lo[0] = 1;
            lo.push(1);
            let mut hi: Vec<Option<usize>> = vec![None; t_axes];
            hi.push(Some(1));
            let u_n = GridModule::interval(f, g, &lo, &hi).unwrap();
            let q = quotient_restriction(&u_n, &Face::new((0..t_axes).collect(), t_axes + 1).unwrap()).unwrap();
            let u = GridModule::interval(f, GridGeometry::new(vec![vec![0.0, 1.0, 2.5, 4.0]]).unwrap(), &[1], &[Some(1)]).unwrap();
            t.check(q == u, || format!("quotient restriction of U_n (shift {shift}, t = {t_axes}) is not U"));
        }
    }
    t
}

fn report_failures(t: &mut Tally, reports: &[CheckReport]) {
    for r in reports {
        t.check(r.passed(), || {
            let first = r.failures.first().map(|w| format!("{}: {} > {}", w.variant, w.left, w.right)).unwrap_or_default();
            format!("{} failed {} of {} rows; first {first}", r.id, r.failures.len(), r.checks)
        });
    }
}

fn axiom_suite() -> Tally {
    let mut t = Tally::default();
    let reports = run_catalog(&["AXIOMS"], SEED, 1000).unwrap();
    report_failures(&mut t, &reports);
    let r = &reports[0];
    for prefix in ["maxdim", "trop:1", "shift:"] {
        let n = r.witnesses.iter().filter(|w| w.variant.starts_with(prefix)).count();
        t.check(n >= 1, || format!("no strict-subadditivity witness for {prefix}"));
    }
    t
}

fn additive_representation() -> Tally {
    let mut t = Tally::default();
    let mut rng = rng_from_seed(SEED);
    for i in 0..500 {
        let b = random_barcode(rng.gen(), 8, (0.0, 10.0), (0.25, 6.0), 0.1).unwrap();
        let rho = eval_barcode(&spec("p1"), &b).unwrap();
        let integral = lp_integral(&barcode_hilbert(&b).unwrap(), 1.0, &Content::Lebesgue).unwrap();
        let ok = rho == integral || ((rho - integral).abs() <= 1e-9 * rho.abs().max(1.0));
        t.check(ok, || format!("barcode {i}: rho_1 = {rho}, integral = {integral}"));
    }
    for i in 0..200 {
        let n = 1 + i % 2;
        let m = random_module_sample(rng.gen(), Fp::default(), n);
        let field = m.field();
        // same Hilbert function, all structure maps zero
        let flat = GridModule::from_fn(field, m.geometry().clone(), m.dims().to_vec(), |a, u| {
            let w = m.geometry().successor(u, a).unwrap();
            Matrix::zeros(field, m.dim(&w), m.dim(u))
        })
        .unwrap();
        for s in ["hilbert:1", "hilbert:1:counting"] {
            let ok = hilbert_invariance_check(&spec(s), &m, &flat).unwrap();
            t.check(ok, || format!("module pair {i}: {s} differs"));
        }
    }
    t
}

fn catalog() -> Tally {
    let mut t = Tally::default();
    let ids = ["LIP", "PNORM", "TROP", "MAG", "H0-AB", "QR-SHIFT", "HILB-INT", "WASS", "SHIFT-INT"];
    let reports = run_catalog(&ids, SEED, 500).unwrap();
    report_failures(&mut t, &reports);
    t
}

fn counterexamples() -> Tally {
    let mut t = Tally::default();
    let first = run_counterexamples().unwrap();
    let second = run_counterexamples().unwrap();
    report_failures(&mut t, &first);
    let (a, b) = (serde_json::to_string(&first).unwrap(), serde_json::to_string(&second).unwrap());
    t.check(a == b, || "reports differ between runs".into());
    let expected: &[(&str, &[(f64, f64)])] = &[
        ("RANK-SUB", &[(1.0, 0.0)]),
        ("SIGMA-MONO", &[(2.0, 1.0)]),
        ("CTAU-MONO", &[(2.0, 0.0)]),
        ("MIN-AMP", &[(1.0, 0.0)]),
        ("CTAU-DISC", &[(1.0, 0.5), (1.0, 0.25)]),
    ];
    for (id, want) in expected {
        let got: Vec<(f64, f64)> = first
            .iter()
            .find(|r| r.id == *id)
            .map(|r| r.witnesses.iter().map(|w| (w.left, w.right)).collect())
            .unwrap_or_default();
        t.check(got == *want, || format!("{id}: witness values {got:?}, want {want:?}"));
    }
    let ctau = first.iter().find(|r| r.id == "CTAU-MONO").unwrap();
    let values = ctau.witnesses[0].inputs.last().unwrap();
    t.check(values.contains("(0, 0, 2)"), || format!("CTAU-MONO values: {values}"));
    t
}

fn cross_oracles() -> Tally {
    let mut t = Tally::default();
    let mut rng = rng_from_seed(SEED + 6);
    for i in 0..200 {
        let a = random_barcode(rng.gen(), 10, (0.0, 8.0), (0.25, 4.0), 0.0).unwrap();
        let b = random_barcode(rng.gen(), 10, (0.0, 8.0), (0.25, 4.0), 0.0).unwrap();
        let got = path_metric_1param(&spec("p1"), &a, &b, CostFunction::Sum).unwrap().value;
        let want = common::w1_l1_dp(&a, &b);
        t.check((got - want).abs() <= 1e-9 * want.max(1.0), || format!("pair {i}: path {got}, oracle {want}"));
    }
    let square = DistMatrix::from_points(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
    let h1 = &vr_barcodes(&square, 1, f64::INFINITY).unwrap()[1];
    let ok = h1.len() == 1 && (h1.bars[0].birth - 1.0).abs() <= 1e-9 && (h1.bars[0].death - 2f64.sqrt()).abs() <= 1e-9;
    t.check(ok, || format!("square H1 = {h1:?}"));
    for i in 0..50 {
        let m = random_module_sample(rng.gen(), Fp::default(), 1 + i % 2);
        let got = amplitudes::amplitude::shift_amplitude(&m, &vec![1.0; m.n()], amplitudes::amplitude::Norm::Linf).unwrap();
        let want = common::shift_by_sampling(&m, 0.25, 25.0);
        let gap = common::max_gap(&m);
        let ok = (got.is_infinite() && want.is_infinite()) || (got - want).abs() <= gap;
        t.check(ok, || format!("module {i}: shift {got}, sampled {want}, gap {gap}"));
    }
    t
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Tally); 6] = [
        ("reference-value regressions", reference_values),
        ("axiom suite on 1000 short exact sequences", axiom_suite),
        ("additive representation and Hilbert invariance", additive_representation),
        ("inequality catalog, 500 samples per entry", catalog),
        ("counterexample suite", counterexamples),
        ("cross-oracle checks", cross_oracles),
    ];
    let mut all = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = run();
        let ok = t.failed.is_empty();
        all &= ok;
        println!("{} [{}] {name} ({} items, {} failed)", if ok { "PASS" } else { "FAIL" }, k + 1, t.items, t.failed.len());
        for f in &t.failed {
            println!("    {f}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
