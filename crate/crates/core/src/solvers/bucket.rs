use std::collections::BTreeSet;

const ABSENT: u32 = u32::MAX;

/// Min-priority queue over items `0..n` keyed by small integer degrees.
///
/// Each bucket keeps its items ordered, so ties on the minimum key resolve to
/// the lowest item index.
#[derive(Clone, Debug)]
pub struct BucketQueue {
    buckets: Vec<BTreeSet<u32>>,
    key: Vec<u32>,
    min: usize,
    len: usize,
}

impl BucketQueue {
    pub fn new(n_items: usize) -> Self {
        BucketQueue {
            buckets: Vec::new(),
            key: vec![ABSENT; n_items],
            min: 0,
            len: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, item: u32) -> bool {
        self.key[item as usize] != ABSENT
    }

    pub fn key(&self, item: u32) -> Option<u32> {
        let k = self.key[item as usize];
        (k != ABSENT).then_some(k)
    }

    /// Inserts `item` or moves it to `key`.
    pub fn set(&mut self, item: u32, key: u32) {
        let old = self.key[item as usize];
        if old == key {
            return;
        }
        if old != ABSENT {
            self.buckets[old as usize].remove(&item);
        } else {
            self.len += 1;
        }
        if key as usize >= self.buckets.len() {
            self.buckets.resize_with(key as usize + 1, BTreeSet::new);
        }
        self.buckets[key as usize].insert(item);
        self.key[item as usize] = key;
        if (key as usize) < self.min {
            self.min = key as usize;
        }
    }

    pub fn remove(&mut self, item: u32) {
        let old = self.key[item as usize];
        if old != ABSENT {
            self.buckets[old as usize].remove(&item);
            self.key[item as usize] = ABSENT;
            self.len -= 1;
        }
    }

    /// Lowest-keyed item, lowest index among ties.
    pub fn peek_min(&mut self) -> Option<(u32, u32)> {
        if self.len == 0 {
            return None;
        }
        while self.buckets[self.min].is_empty() {
            self.min += 1;
        }
        let item = *self.buckets[self.min].first().expect("non-empty bucket");
        Some((self.min as u32, item))
    }

    pub fn pop_min(&mut self) -> Option<(u32, u32)> {
        let (key, item) = self.peek_min()?;
        self.remove(item);
        Some((key, item))
    }
}
