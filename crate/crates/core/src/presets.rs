//! The three worked configurations: GRS codes with unit multipliers and the
//! whole field as support.

use crate::codes::GrsSpec;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::pir::{SchemeConfig, Variant};

/// A worked configuration: field, retrieval dimension and allowed storage
/// dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Preset {
    pub id: u8,
    pub q: u32,
    pub m: usize,
    pub retrieval_dim: usize,
    pub k_max: usize,
    pub default_k: usize,
}

/// GF(4), C = GRS_1, D = GRS_3.
pub const EXAMPLE_1: Preset = Preset {
    id: 1,
    q: 2,
    m: 2,
    retrieval_dim: 3,
    k_max: 1,
    default_k: 1,
};

/// GF(8), D = GRS_5 whose binary subcode is the extended Hamming code.
pub const EXAMPLE_2: Preset = Preset {
    id: 2,
    q: 2,
    m: 3,
    retrieval_dim: 5,
    k_max: 3,
    default_k: 3,
};

/// GF(9), D = GRS_4 whose ternary subcode is a [9,3,6] code.
pub const EXAMPLE_3: Preset = Preset {
    id: 3,
    q: 3,
    m: 2,
    retrieval_dim: 4,
    k_max: 5,
    default_k: 5,
};

pub const ALL: [Preset; 3] = [EXAMPLE_1, EXAMPLE_2, EXAMPLE_3];

impl Preset {
    pub fn by_id(id: u8) -> Option<Preset> {
        ALL.into_iter().find(|p| p.id == id)
    }

    pub fn field(&self) -> Field {
        Field::with_default_modulus(self.q, self.m).expect("preset fields have default moduli")
    }

    pub fn n(&self) -> usize {
        (self.q as usize).pow(self.m as u32)
    }

    pub fn storage(&self, k: usize) -> Result<GrsSpec> {
        if k == 0 || k > self.k_max {
            return Err(Error::IndexOutOfRange {
                what: "storage dimension",
                value: k,
                max: self.k_max,
            });
        }
        GrsSpec::over_whole_field(self.field(), k)
    }

    pub fn retrieval(&self) -> GrsSpec {
        GrsSpec::over_whole_field(self.field(), self.retrieval_dim).expect("valid dimension")
    }

    pub fn config(&self, k: usize, variant: Variant, mu: usize, seed: u64) -> Result<SchemeConfig> {
        SchemeConfig::new(self.storage(k)?, self.retrieval(), variant, mu, seed)
    }

    /// `(n - k - t + 1) / n` numerator for the plain GRS scheme.
    pub fn expected_retrieved(&self, k: usize) -> usize {
        self.n() + 1 - k - self.retrieval_dim
    }

    /// Collusion levels `(plain, subfield)`: `t` for a GRS_t retrieval code
    /// and the dual distance of its subfield subcode minus one.
    pub fn expected_collusion(&self) -> (usize, usize) {
        let sub = match self.id {
            1 | 2 => 3,
            _ => 2,
        };
        (self.retrieval_dim, sub)
    }
}
