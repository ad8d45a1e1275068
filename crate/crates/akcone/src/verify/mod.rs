//! Property suites runnable from the command line.

pub mod acceptance;
pub mod lemmas;
pub mod oracle;

use akcone_core::enumerate::ClassTable;
use akcone_core::{IntClass, Model, RayClass};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cache::{Cache, CacheError, CacheEvent, TableKey};

/// One property with how often it was exercised and the first counterexample, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub checked: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    /// Not applicable to the requested model.
    pub skipped: bool,
}

impl Check {
    pub fn new(name: &'static str) -> Self {
        Self { name, checked: 0, failures: 0, counterexample: None, skipped: false }
    }

    pub fn skipped(name: &'static str) -> Self {
        Self { skipped: true, ..Self::new(name) }
    }

    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Tables for the suites, read through the cache when one is configured.
pub struct Tables<'a> {
    cache: Option<&'a Cache>,
    pub events: Vec<CacheEvent>,
}

impl<'a> Tables<'a> {
    pub fn new(cache: Option<&'a Cache>) -> Self {
        Self { cache, events: Vec::new() }
    }

    pub fn get(&mut self, key: TableKey) -> Result<ClassTable, CacheError> {
        match self.cache {
            Some(c) => {
                let (t, ev) = c.table(&key)?;
                self.events.push(ev);
                Ok(t)
            }
            None => Ok(key.build()?),
        }
    }
}

/// Seeded source of test classes; ChaCha keeps streams identical across platforms.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn int_vec(&mut self, n: usize, r: i64) -> Vec<i64> {
        (0..n).map(|_| self.range(-r, r)).collect()
    }

    /// Numerators over a denominator near the anticanonical direction `3H - sum Ei`, spread
    /// widely enough that a good share falls outside `P_K`.
    pub fn near_anticanonical(&mut self, k: usize) -> (Vec<i64>, i64) {
        let den = self.range(1, 5);
        let scale = self.range(1, 4) * den;
        let spread = self.range(0, 2 * scale);
        let mut v: Vec<i64> = (0..=k).map(|i| if i == 0 { 3 * scale } else { scale }).collect();
        for x in v.iter_mut() {
            *x += self.range(-spread, spread);
        }
        // the backward cone, which the spread alone never reaches
        if self.range(0, 7) == 0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        (v, den)
    }
}

pub fn int_class(model: Model, v: &[i64]) -> IntClass {
    IntClass::from_i64(model, v).expect("rank matches")
}

pub fn ray_class(model: Model, v: &[i64], den: i64) -> RayClass {
    let coeffs = v.iter().map(|&x| BigRational::new(BigInt::from(x), BigInt::from(den))).collect();
    RayClass::new(model, coeffs).expect("rank matches")
}

pub fn to_i64(c: &IntClass) -> Vec<i64> {
    c.to_i64().expect("coefficients fit in i64")
}
