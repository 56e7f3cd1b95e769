use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Mutex;

use crate::error::Result;

/// Append-only cache. Values are computed outside the lock, so two threads
/// asking for the same key may both compute it; the first insert wins and
/// both see equal values.
pub(crate) struct Memo<K, V> {
    slots: Mutex<HashMap<K, V>>,
}

impl<K: Hash + Eq + Clone, V: Clone> Memo<K, V> {
    pub fn new() -> Self {
        Memo { slots: Mutex::new(HashMap::new()) }
    }

    pub fn get_or_try(&self, key: K, compute: impl FnOnce() -> Result<V>) -> Result<V> {
        if let Some(v) = self.slots.lock().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let v = compute()?;
        let mut slots = self.slots.lock().expect("cache lock");
        Ok(slots.entry(key).or_insert(v).clone())
    }
}

impl<K, V> std::fmt::Debug for Memo<K, V> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("Memo")
    }
}
