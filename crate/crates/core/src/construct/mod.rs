//! Builders for optimal two-period groomings, and the stored small cases.

pub mod c1;
pub mod c2;
pub mod c3;
pub mod fixtures;
mod util;

pub use c1::build_c1;
pub use c2::build_c2;
pub use c3::{build_c3, general_prescription, HeadAssignment};
pub use fixtures::{fixture, fixture_names, parse_fixture, Fixture, FixtureMeta};

use crate::error::{Error, Result};
use crate::model::{verify, Decomposition, Instance};

/// What to build. `optimize_wavelengths` asks for a grooming that also uses
/// the fewest wavelengths among cost-optimal ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildRequest {
    pub instance: Instance,
    pub optimize_wavelengths: bool,
    pub seed: u64,
}

impl BuildRequest {
    pub fn new(n: u32, v: u32, cprime: u32) -> Result<Self> {
        Ok(BuildRequest { instance: Instance::new(n, v, cprime)?, optimize_wavelengths: false, seed: 0 })
    }

    pub fn mon(mut self, on: bool) -> Self {
        self.optimize_wavelengths = on;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Dispatches on `C'`. For `n = 4` the stored `ON(4,4)` is returned when it
/// meets the instance's capacity.
pub fn build(req: &BuildRequest) -> Result<Decomposition> {
    let inst = req.instance;
    if inst.n == 4 {
        let d = fixture("ON(4,4)")?.decomposition.with_instance(inst);
        return if verify(&d).violations.is_empty() {
            Ok(d)
        } else {
            Err(Error::Unsupported(format!("n = 4 with v = {} and C' = {}", inst.v, inst.cprime)))
        };
    }
    match inst.cprime {
        1 => build_c1(req),
        2 => build_c2(req),
        3 => build_c3(req),
        c => Err(Error::Unsupported(format!("C' = {c}"))),
    }
}
