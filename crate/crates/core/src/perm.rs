//! Index permutations.

use rand::seq::SliceRandom;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rng::Rng;

/// A bijection on `{0..n-1}`, stored as the image array `map[i] = σ(i)`.
///
/// Serialized as a 1-based index array so secret files read naturally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    /// Validate that `map` (0-based images) is a bijection.
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty index array".into()));
        }
        let mut seen = vec![false; n];
        for &image in &map {
            if image >= n || seen[image] {
                return Err(Error::InvalidPermutation(format!(
                    "index array of length {n} is not a bijection"
                )));
            }
            seen[image] = true;
        }
        Ok(Self { map })
    }

    pub fn identity(n: usize) -> Self {
        Self { map: (0..n).collect() }
    }

    /// Uniform random permutation via Fisher-Yates on the seeded generator.
    pub fn random(n: usize, rng: &mut Rng) -> Self {
        let mut map: Vec<usize> = (0..n).collect();
        map.shuffle(rng);
        Self { map }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// σ(i)
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j] = i;
        }
        Self { map: inv }
    }

    /// Gather a vector: `out[i] = v[σ(i)]`.
    pub fn gather<T: Copy>(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.map.len() {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} vs permutation length {}",
                v.len(),
                self.map.len()
            )));
        }
        Ok(self.map.iter().map(|&j| v[j]).collect())
    }

    /// Gather a square row-major matrix: `out[i][j] = m[σ(i)][σ(j)]`.
    pub fn gather_square<T: Copy>(&self, entries: &[T]) -> Result<Vec<T>> {
        let n = self.map.len();
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "matrix with {} entries vs permutation of order {n}",
                entries.len()
            )));
        }
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            let src_row = self.map[i] * n;
            for j in 0..n {
                out.push(entries[src_row + self.map[j]]);
            }
        }
        Ok(out)
    }

    /// 0-based image array.
    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let one_based: Vec<u64> = self.map.iter().map(|&i| i as u64 + 1).collect();
        one_based.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let one_based = Vec::<u64>::deserialize(deserializer)?;
        let map = one_based
            .iter()
            .map(|&i| {
                if i == 0 {
                    Err(serde::de::Error::custom("permutation indices are 1-based"))
                } else {
                    Ok(i as usize - 1)
                }
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Permutation::new(map).map_err(serde::de::Error::custom)
    }
}
