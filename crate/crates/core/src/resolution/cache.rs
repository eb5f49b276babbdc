use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::algebra::vector::FreeVector;

use super::Resolution;

type Key = (Vec<i32>, Vec<i32>, Vec<FreeVector>);

/// Resolutions computed in one ring context, keyed by presentation. Readers
/// share the lock; a longer resolution replaces a shorter one.
#[derive(Default)]
pub struct ResolutionCache {
    map: RwLock<HashMap<Key, Arc<Resolution>>>,
    pub(crate) gorenstein: OnceLock<bool>,
}

impl ResolutionCache {
    pub(crate) fn get(&self, key: &Key) -> Option<Arc<Resolution>> {
        self.map.read().unwrap_or_else(|e| e.into_inner()).get(key).cloned()
    }

    pub(crate) fn insert(&self, key: Key, res: Arc<Resolution>) -> Arc<Resolution> {
        let mut map = self.map.write().unwrap_or_else(|e| e.into_inner());
        match map.get(&key) {
            Some(old) if old.covers_as_much(&res) => old.clone(),
            _ => {
                map.insert(key, res.clone());
                res
            }
        }
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap_or_else(|e| e.into_inner()).len()
    }
}
