/// Fixed-length bitset over `[0, len)`, stored as little-endian `u64` words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bitset {
    words: Vec<u64>,
    len: usize,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn set(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    pub fn zeros(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| !self.get(i))
    }

    fn word(&self, i: i64) -> u64 {
        usize::try_from(i)
            .ok()
            .and_then(|i| self.words.get(i))
            .copied()
            .unwrap_or(0)
    }

    /// Bits `[start, start + 64)` as one word; positions outside the set read 0.
    fn window(&self, start: i64) -> u64 {
        let q = start.div_euclid(64);
        let r = start.rem_euclid(64) as u32;
        if r == 0 {
            self.word(q)
        } else {
            self.word(q) >> r | self.word(q + 1) << (64 - r)
        }
    }

    fn clear_tail(&mut self) {
        let tail = self.len % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    /// The sumset `{a + v : a ∈ self, v ∈ shifts}` truncated to `[0, len)`.
    ///
    /// `shifts` must be ascending. Output words are independent, so they are
    /// split into `threads` contiguous blocks computed concurrently.
    pub fn sumset(&self, shifts: &[u64], threads: usize) -> Bitset {
        debug_assert!(shifts.windows(2).all(|w| w[0] <= w[1]));
        let mut out = Bitset::new(self.len);
        let fill = |first_word: usize, block: &mut [u64]| {
            for (offset, slot) in block.iter_mut().enumerate() {
                let base = ((first_word + offset) * 64) as i64;
                let mut acc = 0u64;
                for &v in shifts {
                    let v = v as i64;
                    if v > base + 63 {
                        break;
                    }
                    acc |= self.window(base - v);
                }
                *slot = acc;
            }
        };
        let threads = threads.max(1);
        if threads == 1 || out.words.len() < 2 * threads {
            fill(0, &mut out.words);
        } else {
            let per = out.words.len().div_ceil(threads);
            std::thread::scope(|scope| {
                for (i, block) in out.words.chunks_mut(per).enumerate() {
                    let fill = &fill;
                    scope.spawn(move || fill(i * per, block));
                }
            });
        }
        out.clear_tail();
        out
    }
}
