//! Permutations of `{0..m}` with Lehmer-code ranking.

use std::fmt;

use crate::{Error, Result};

/// A bijection on `{0, .., m-1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation {
            images: (0..m as u32).collect(),
        }
    }

    /// Validates that `images` is a bijection on `{0..images.len()}`.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in &images {
            let x = x as usize;
            if x >= m {
                return Err(Error::invalid(format!("image {x} out of range for length {m}")));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::invalid(format!("image {x} repeated; not a bijection")));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds from 1-indexed images as used in files.
    pub fn from_one_indexed(images: &[u32]) -> Result<Self> {
        let zero = images
            .iter()
            .map(|&x| {
                x.checked_sub(1)
                    .ok_or_else(|| Error::invalid("1-indexed image list contains 0"))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(zero)
    }

    pub fn to_one_indexed(&self) -> Vec<u32> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self` followed by `next`: `x -> next(self(x))`.
    pub fn then(&self, next: &Permutation) -> Self {
        assert_eq!(self.len(), next.len(), "composing permutations of different length");
        Permutation {
            images: self.images.iter().map(|&x| next.apply(x)).collect(),
        }
    }

    /// `pi ∘ self ∘ pi⁻¹`.
    pub fn conjugate_by(&self, pi: &Permutation) -> Self {
        pi.inverse().then(self).then(pi)
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i as u32 == x)
            .count()
    }

    /// Cycle lengths in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut lens = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// Lexicographic rank among all `m!` permutations (Lehmer code).
    pub fn rank(&self) -> u128 {
        let m = self.len();
        let mut rank: u128 = 0;
        for i in 0..m {
            let smaller_later = self.images[i + 1..]
                .iter()
                .filter(|&&y| y < self.images[i])
                .count() as u128;
            rank = rank * (m - i) as u128 + smaller_later;
        }
        rank
    }

    /// Inverse of [`Permutation::rank`].
    pub fn unrank(m: usize, rank: u128) -> Result<Self> {
        let total = factorial(m).ok_or_else(|| Error::overflow(format!("{m}!")))?;
        if rank >= total {
            return Err(Error::invalid(format!("rank {rank} out of range for m = {m}")));
        }
        let mut digits = vec![0usize; m];
        let mut r = rank;
        for i in (0..m).rev() {
            let radix = (m - i) as u128;
            digits[i] = (r % radix) as usize;
            r /= radix;
        }
        let mut pool: Vec<u32> = (0..m as u32).collect();
        let images = digits.into_iter().map(|d| pool.remove(d)).collect();
        Ok(Permutation { images })
    }
}

/// `m!` if it fits in 128 bits.
pub fn factorial(m: usize) -> Option<u128> {
    (1..=m as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

/// All permutations of `{0..m}` in lexicographic (rank) order.
pub fn all_permutations(m: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (0..m as u32).collect();
    loop {
        out.push(Permutation { images: cur.clone() });
        // next permutation in lexicographic order
        let Some(i) = (1..m).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..m).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Integer partitions of `m` with parts in non-increasing order, listed in
/// reverse lexicographic order starting from `[m]`.
pub fn partitions(m: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

/// The permutation whose cycles have the given lengths, laid over
/// consecutive integers: a part `k` starting at `s` is the cycle
/// `s -> s+1 -> .. -> s+k-1 -> s`.
pub fn from_cycle_type(parts: &[usize]) -> Permutation {
    let m: usize = parts.iter().sum();
    let mut images = vec![0u32; m];
    let mut start = 0;
    for &k in parts {
        for i in 0..k {
            images[start + i] = (start + (i + 1) % k) as u32;
        }
        start += k;
    }
    Permutation { images }
}
