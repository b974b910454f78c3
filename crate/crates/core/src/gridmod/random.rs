//! Seeded generators for modules and short exact sequences.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{Fp, Matrix};

use super::geometry::GridGeometry;
use super::module::{GridModule, ModuleMorphism};
use super::ops::{quotient, submodule_generated};

/// `0 -> A -> B -> C -> 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShortExactSequence {
    pub a: GridModule,
    pub b: GridModule,
    pub c: GridModule,
    pub incl: ModuleMorphism,
    pub proj: ModuleMorphism,
}

impl ShortExactSequence {
    /// `0 -> 0 -> M -> M -> 0`.
    pub fn trivial(m: &GridModule) -> Self {
        let z = GridModule::zero(m.field(), m.geometry().clone());
        ShortExactSequence {
            a: z.clone(),
            b: m.clone(),
            c: m.clone(),
            incl: ModuleMorphism::zero(&z, m).expect("same grid"),
            proj: ModuleMorphism::identity(m),
        }
    }

    /// Checks naturality, injectivity, surjectivity and exactness in the middle.
    pub fn validate(&self) -> Result<()> {
        self.incl.validate()?;
        self.proj.validate()?;
        if self.incl.source() != &self.a || self.incl.target() != &self.b {
            return Err(Error::Invalid("inclusion is not A -> B".into()));
        }
        if self.proj.source() != &self.b || self.proj.target() != &self.c {
            return Err(Error::Invalid("projection is not B -> C".into()));
        }
        let g = self.b.geometry();
        if !self.incl.is_injective() {
            let idx = self
                .incl
                .components()
                .iter()
                .position(|c| crate::linalg::rank(c) < c.cols())
                .unwrap_or(0);
            return Err(Error::NotInjective(g.vertex(idx)));
        }
        if !self.proj.is_surjective() {
            return Err(Error::Invalid("projection is not surjective".into()));
        }
        for idx in 0..g.num_vertices() {
            let (a, b, c) = (self.a.dim_at_index(idx), self.b.dim_at_index(idx), self.c.dim_at_index(idx));
            if a + c != b {
                return Err(Error::Invalid(format!("dims {a} + {c} != {b} at {:?}", g.vertex(idx))));
            }
            let comp = self.proj.components()[idx].mul(&self.incl.components()[idx]);
            if !comp.is_zero() {
                return Err(Error::Invalid(format!("proj . incl != 0 at {:?}", g.vertex(idx))));
            }
        }
        Ok(())
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random integer breakpoints in `0..10`, between 1 and `max_cells` per axis.
pub fn random_geometry<R: Rng>(rng: &mut R, n: usize, max_cells: usize) -> GridGeometry {
    let bps = (0..n)
        .map(|_| {
            let cells = rng.gen_range(1..=max_cells.clamp(1, 10));
            let mut pool: Vec<i32> = (0..10).collect();
            pool.shuffle(rng);
            let mut pick: Vec<f64> = pool[..cells].iter().map(|&x| x as f64).collect();
            pick.sort_by(f64::total_cmp);
            pick
        })
        .collect();
    GridGeometry::new(bps).expect("distinct sorted breakpoints")
}

/// Interval module on a random box (upper ends unbounded with probability 1/3).
pub fn random_box<R: Rng>(rng: &mut R, field: Fp, geo: &GridGeometry) -> GridModule {
    let mut lo = Vec::with_capacity(geo.n());
    let mut hi = Vec::with_capacity(geo.n());
    for a in 0..geo.n() {
        let last = geo.last(a);
        let l = rng.gen_range(0..=last);
        lo.push(l);
        hi.push(if rng.gen_bool(1.0 / 3.0) { None } else { Some(rng.gen_range(l..=last)) });
    }
    GridModule::interval(field, geo.clone(), &lo, &hi).expect("valid box")
}

fn random_vector<R: Rng>(rng: &mut R, field: Fp, dim: usize) -> Vec<i64> {
    let p = field.modulus() as i64;
    loop {
        let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..p)).collect();
        if dim == 0 || v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// Up to `count` random homogeneous elements at vertices of positive dimension.
pub fn random_generators<R: Rng>(rng: &mut R, m: &GridModule, count: usize) -> Vec<(Vec<usize>, Vec<i64>)> {
    let g = m.geometry();
    let support: Vec<usize> = (0..g.num_vertices()).filter(|&i| m.dim_at_index(i) > 0).collect();
    if support.is_empty() || count == 0 {
        return Vec::new();
    }
    let k = rng.gen_range(0..=count);
    (0..k)
        .map(|_| {
            let idx = *support.choose(rng).expect("nonempty");
            (g.vertex(idx), random_vector(rng, m.field(), m.dim_at_index(idx)))
        })
        .collect()
}

/// Direct sum of between 1 and `max_dim` random boxes, quotiented half of the
/// time by a random generated submodule.
pub fn random_module_with<R: Rng>(rng: &mut R, field: Fp, geo: &GridGeometry, max_dim: usize, gen_count: usize) -> GridModule {
    let mut m = GridModule::zero(field, geo.clone());
    if max_dim == 0 {
        return m;
    }
    let boxes = rng.gen_range(1..=max_dim);
    for _ in 0..boxes {
        m = m.direct_sum(&random_box(rng, field, geo)).expect("same grid");
    }
    if rng.gen_bool(0.5) {
        let gens = random_generators(rng, &m, gen_count);
        let (_, incl) = submodule_generated(&m, &gens).expect("valid generators");
        m = quotient(&m, &incl).expect("injective inclusion").0;
    }
    m
}

pub fn random_module(seed: u64, field: Fp, geo: &GridGeometry, max_dim: usize, gen_count: usize) -> GridModule {
    random_module_with(&mut rng_from_seed(seed), field, geo, max_dim, gen_count)
}

pub fn random_ses_with<R: Rng>(rng: &mut R, field: Fp, geo: &GridGeometry, max_dim: usize, gen_count: usize) -> ShortExactSequence {
    let b = random_module_with(rng, field, geo, max_dim, gen_count);
    let gens = random_generators(rng, &b, gen_count);
    let (a, incl) = submodule_generated(&b, &gens).expect("valid generators");
    let (c, proj) = quotient(&b, &incl).expect("injective inclusion");
    ShortExactSequence { a, b, c, incl, proj }
}

pub fn random_ses(seed: u64, field: Fp, geo: &GridGeometry, max_dim: usize, gen_count: usize) -> ShortExactSequence {
    random_ses_with(&mut rng_from_seed(seed), field, geo, max_dim, gen_count)
}

/// Sequence on a random grid: `n` in {1, 2}, at most 5 cells per axis,
/// dimensions at most 4.
pub fn random_ses_sample(seed: u64, field: Fp) -> ShortExactSequence {
    let mut rng = rng_from_seed(seed);
    let n = rng.gen_range(1..=2);
    let geo = random_geometry(&mut rng, n, 5);
    random_ses_with(&mut rng, field, &geo, 4, 3)
}

/// Like [`random_ses_sample`] but always one-parameter.
pub fn random_ses_sample_1d(seed: u64, field: Fp) -> ShortExactSequence {
    let mut rng = rng_from_seed(seed);
    let geo = random_geometry(&mut rng, 1, 5);
    random_ses_with(&mut rng, field, &geo, 4, 3)
}

/// Random module on a random grid with `n` axes.
pub fn random_module_sample(seed: u64, field: Fp, n: usize) -> GridModule {
    let mut rng = rng_from_seed(seed);
    let geo = random_geometry(&mut rng, n, 5);
    random_module_with(&mut rng, field, &geo, 4, 3)
}

/// Matrix with uniformly random entries; test helper.
pub fn random_matrix<R: Rng>(rng: &mut R, field: Fp, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, rng.gen_range(0..field.modulus()));
        }
    }
    m
}
