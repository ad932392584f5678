//! Fixtures shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use subpir_core::pir::{
    encode_storage, generate_queries, query_rng, EncodedStorage, FileStore, QuerySet,
};
use subpir_core::presets::Preset;
use subpir_core::{Scheme, Variant};

pub struct Fixture {
    pub scheme: Scheme,
    pub storage: EncodedStorage,
    pub queries: QuerySet,
}

/// Scheme, random storage and first-iteration queries for file 1.
pub fn fixture(preset: Preset, k: usize, variant: Variant, mu: usize) -> Fixture {
    let scheme = Scheme::derive(preset.config(k, variant, mu, 0).expect("valid preset"))
        .expect("derivable preset");
    let mut rng = ChaCha20Rng::seed_from_u64(1);
    let files = FileStore::random(&scheme, &mut rng);
    let storage = encode_storage(&scheme, &files).expect("shapes match");
    let queries = generate_queries(&scheme, 1, 1, &mut query_rng(0, 1)).expect("file 1 exists");
    Fixture {
        scheme,
        storage,
        queries,
    }
}
