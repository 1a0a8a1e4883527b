//! Per-`n` context cache with a byte budget and least-recently-used eviction.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex};

use crate::{Error, WContext};

#[derive(Default)]
struct State {
    entries: HashMap<usize, (Arc<WContext>, usize)>,
    /// Most recently used at the back.
    order: VecDeque<usize>,
    bytes: usize,
}

pub struct ContextCache {
    budget: usize,
    state: Mutex<State>,
}

impl ContextCache {
    pub fn new(budget_bytes: usize) -> Self {
        ContextCache {
            budget: budget_bytes,
            state: Mutex::new(State::default()),
        }
    }

    /// Context for `n`, built on a miss. Contexts larger than the whole
    /// budget are returned without being cached.
    pub fn get(&self, n: usize) -> Result<Arc<WContext>, Error> {
        {
            let mut st = self.state.lock().expect("cache lock");
            if let Some((ctx, _)) = st.entries.get(&n) {
                let ctx = Arc::clone(ctx);
                st.order.retain(|&k| k != n);
                st.order.push_back(n);
                return Ok(ctx);
            }
        }
        // Built outside the lock so parallel callers do not serialize.
        let ctx = Arc::new(WContext::new(n)?);
        let size = ctx.grassmann().approx_bytes();
        if size > self.budget {
            return Ok(ctx);
        }
        let mut st = self.state.lock().expect("cache lock");
        if let Some((existing, _)) = st.entries.get(&n) {
            return Ok(Arc::clone(existing));
        }
        while st.bytes + size > self.budget {
            let Some(old) = st.order.pop_front() else { break };
            if let Some((_, s)) = st.entries.remove(&old) {
                st.bytes -= s;
            }
        }
        st.entries.insert(n, (Arc::clone(&ctx), size));
        st.order.push_back(n);
        st.bytes += size;
        Ok(ctx)
    }

    pub fn len(&self) -> usize {
        self.state.lock().expect("cache lock").entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn bytes(&self) -> usize {
        self.state.lock().expect("cache lock").bytes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hits_share_the_context() {
        let cache = ContextCache::new(usize::MAX);
        let a = cache.get(10).unwrap();
        let b = cache.get(10).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(cache.len(), 1);
        assert!(cache.get(1).is_err());
    }

    #[test]
    fn budget_evicts_oldest() {
        let one = WContext::new(30).unwrap().grassmann().approx_bytes();
        let cache = ContextCache::new(one * 2 + one / 2);
        cache.get(30).unwrap();
        cache.get(29).unwrap();
        cache.get(30).unwrap();
        cache.get(28).unwrap();
        assert!(cache.bytes() <= one * 2 + one / 2);
        let st = cache.state.lock().unwrap();
        assert!(st.entries.contains_key(&30));
        assert!(!st.entries.contains_key(&29));
    }

    #[test]
    fn oversized_contexts_are_not_cached() {
        let cache = ContextCache::new(16);
        cache.get(12).unwrap();
        assert!(cache.is_empty());
    }
}
