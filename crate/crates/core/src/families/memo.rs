use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Per-index cache for a two-term recursion. The map lock is held only to
/// fetch a slot; each slot is filled once, by whichever thread gets there
/// first.
pub(crate) struct Memo<T> {
    slots: Mutex<HashMap<i64, Arc<OnceLock<Arc<T>>>>>,
}

impl<T> Default for Memo<T> {
    fn default() -> Self {
        Memo {
            slots: Mutex::new(HashMap::new()),
        }
    }
}

impl<T> fmt::Debug for Memo<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.slots.lock().map(|m| m.len()).unwrap_or(0);
        write!(f, "Memo({n} entries)")
    }
}

impl<T: Clone> Memo<T> {
    fn slot(&self, n: i64) -> Arc<OnceLock<Arc<T>>> {
        let mut map = self.slots.lock().unwrap_or_else(|e| e.into_inner());
        map.entry(n).or_default().clone()
    }

    /// Term `n` of `P_{k+1} = step(P_k, P_{k-1})` (and the mirrored
    /// backward step for `n < 0`), filling the cache on the way.
    pub(crate) fn term<F>(&self, n: i64, seed0: &T, seed1: &T, step: F) -> Arc<T>
    where
        F: Fn(&T, &T) -> T,
    {
        let get = |k: i64| -> Arc<T> {
            match k {
                0 => self.slot(0).get_or_init(|| Arc::new(seed0.clone())).clone(),
                1 => self.slot(1).get_or_init(|| Arc::new(seed1.clone())).clone(),
                _ => self.slot(k).get().cloned().expect("filled in order"),
            }
        };
        if n == 0 || n == 1 {
            return get(n);
        }
        let dir = if n > 1 { 1 } else { -1 };
        let mut k = if dir == 1 { 2 } else { -1 };
        loop {
            let slot = self.slot(k);
            let v = slot
                .get_or_init(|| {
                    let cur = get(k - dir);
                    let prev = get(k - 2 * dir);
                    Arc::new(step(&cur, &prev))
                })
                .clone();
            if k == n {
                return v;
            }
            k += dir;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_like_recursion_both_directions() {
        // P_{k+1} = 3 P_k - P_{k-1}, P_0 = 0, P_1 = 1
        let memo: Memo<i64> = Memo::default();
        let step = |c: &i64, p: &i64| 3 * c - p;
        assert_eq!(*memo.term(5, &0, &1, step), 55);
        assert_eq!(*memo.term(-3, &0, &1, step), -8);
        assert_eq!(*memo.term(4, &0, &1, step), 21);
    }

    #[test]
    fn concurrent_fill_is_consistent() {
        let memo: Arc<Memo<i64>> = Arc::new(Memo::default());
        let handles: Vec<_> = (0..8)
            .map(|i| {
                let memo = memo.clone();
                std::thread::spawn(move || *memo.term(20 - i, &2, &1, |c, p| c + p))
            })
            .collect();
        let got: Vec<i64> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        let lucas = |n: i64| {
            let (mut a, mut b) = (2i64, 1i64);
            for _ in 0..n {
                (a, b) = (b, a + b);
            }
            a
        };
        for (i, v) in got.iter().enumerate() {
            assert_eq!(*v, lucas(20 - i as i64));
        }
    }
}
