//! Model matrices and objective evaluation.

use rand::Rng as _;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::rng::rng_from_seed;

/// A QUBO model matrix: minimize `x^T Q x` over `x in {0,1}^n`.
///
/// Entries are stored row-major and must all be finite. The matrix is not
/// required to be symmetric; `symmetric_hint` records whether it happens
/// to be.
///
/// File format: `{"n": int, "entries": [[row-major floats]]}`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboMatrix {
    n: usize,
    entries: Vec<f64>,
    symmetric_hint: bool,
}

impl QuboMatrix {
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("matrix order must be >= 1".into()));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for order {n}, got {}",
                n * n,
                entries.len()
            )));
        }
        if !entries.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter(
                "matrix entries must be finite".into(),
            ));
        }
        let symmetric_hint = is_symmetric(n, &entries);
        Ok(Self { n, entries, symmetric_hint })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix of order {n}",
                    row.len()
                )));
            }
        }
        Self::new(n, rows.into_iter().flatten().collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn symmetric_hint(&self) -> bool {
        self.symmetric_hint
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// `out[i][j] = self[σ(i)][σ(j)]`.
    pub fn permuted(&self, sigma: &Permutation) -> Result<Self> {
        Self::new(self.n, sigma.gather_square(&self.entries)?)
    }

    /// The objective `x^T Q x = Σ_{i,j} x_i Q[i][j] x_j`.
    ///
    /// Plain double loop over the active support; this is the reference
    /// evaluation every solver result is checked against.
    pub fn objective(&self, bits: &[u8]) -> Result<f64> {
        if bits.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "solution of length {} for matrix of order {}",
                bits.len(),
                self.n
            )));
        }
        if let Some(bad) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidParameter(format!(
                "solution entries must be 0/1, got {bad}"
            )));
        }
        let mut total = 0.0;
        for i in 0..self.n {
            if bits[i] == 0 {
                continue;
            }
            let row = &self.entries[i * self.n..(i + 1) * self.n];
            for j in 0..self.n {
                if bits[j] == 1 {
                    total += row[j];
                }
            }
        }
        Ok(total)
    }
}

fn is_symmetric(n: usize, entries: &[f64]) -> bool {
    for i in 0..n {
        for j in (i + 1)..n {
            if entries[i * n + j] != entries[j * n + i] {
                return false;
            }
        }
    }
    true
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr<T> {
    n: usize,
    entries: Vec<Vec<T>>,
}

impl Serialize for QuboMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            n: self.n,
            entries: self.entries.chunks(self.n).map(|r| r.to_vec()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuboMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::<f64>::deserialize(d)?;
        if repr.entries.len() != repr.n {
            return Err(serde::de::Error::custom(format!(
                "matrix declares order {} but has {} rows",
                repr.n,
                repr.entries.len()
            )));
        }
        QuboMatrix::from_rows(repr.entries).map_err(serde::de::Error::custom)
    }
}

/// A square integer matrix, the shape that actually crosses the wire.
///
/// Serializes as `{"n": int, "entries": [[int]]}` and carries nothing else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<i32>,
}

impl IntMatrix {
    pub fn new(n: usize, entries: Vec<i32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("matrix order must be >= 1".into()));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for order {n}, got {}",
                n * n,
                entries.len()
            )));
        }
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i32 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    pub fn max_abs(&self) -> i32 {
        self.entries.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    pub fn permuted(&self, sigma: &Permutation) -> Result<Self> {
        Ok(Self { n: self.n, entries: sigma.gather_square(&self.entries)? })
    }

    /// Exact integer objective `x^T M x`.
    pub fn objective(&self, bits: &[u8]) -> Result<i64> {
        if bits.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "solution of length {} for matrix of order {}",
                bits.len(),
                self.n
            )));
        }
        let mut total: i64 = 0;
        for i in 0..self.n {
            if bits[i] == 0 {
                continue;
            }
            let row = &self.entries[i * self.n..(i + 1) * self.n];
            for j in 0..self.n {
                if bits[j] == 1 {
                    total += i64::from(row[j]);
                }
            }
        }
        Ok(total)
    }

    pub fn to_qubo(&self) -> QuboMatrix {
        QuboMatrix::new(self.n, self.entries.iter().map(|&v| f64::from(v)).collect())
            .expect("integer matrix is always a valid model matrix")
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            n: self.n,
            entries: self.entries.chunks(self.n).map(|r| r.to_vec()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::<i32>::deserialize(d)?;
        if repr.entries.len() != repr.n {
            return Err(serde::de::Error::custom(format!(
                "matrix declares order {} but has {} rows",
                repr.n,
                repr.entries.len()
            )));
        }
        for row in &repr.entries {
            if row.len() != repr.n {
                return Err(serde::de::Error::custom("ragged matrix rows"));
            }
        }
        IntMatrix::new(repr.n, repr.entries.into_iter().flatten().collect())
            .map_err(serde::de::Error::custom)
    }
}

/// Recipe for a random test instance with i.i.d. normal entries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatrixGenSpec {
    pub n: usize,
    pub mean: f64,
    pub stddev: f64,
    pub seed: u64,
}

impl MatrixGenSpec {
    pub fn new(n: usize, mean: f64, stddev: f64, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("matrix order must be >= 1".into()));
        }
        if !(stddev > 0.0) || !stddev.is_finite() || !mean.is_finite() {
            return Err(Error::InvalidParameter(
                "mean must be finite and stddev positive".into(),
            ));
        }
        Ok(Self { n, mean, stddev, seed })
    }
}

/// Generate a matrix with entries drawn i.i.d. from `Normal(mean, stddev)`.
///
/// Generator: ChaCha20 via `seed_from_u64(spec.seed)`; entries drawn
/// row-major through `rand_distr::Normal` (ziggurat). Same spec, same
/// matrix, always.
pub fn generate_matrix(spec: &MatrixGenSpec) -> Result<QuboMatrix> {
    let spec = MatrixGenSpec::new(spec.n, spec.mean, spec.stddev, spec.seed)?;
    let normal = Normal::new(spec.mean, spec.stddev)
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let mut rng = rng_from_seed(spec.seed);
    let entries: Vec<f64> = (0..spec.n * spec.n)
        .map(|_| normal.sample(&mut rng))
        .collect();
    QuboMatrix::new(spec.n, entries)
}

/// Generate a matrix whose signs follow `signs` and whose magnitudes are
/// i.i.d. `|Normal(0, stddev)|`; used to build instances with a prescribed
/// sign structure.
pub fn generate_with_signs(signs: &[i8], n: usize, stddev: f64, seed: u64) -> Result<QuboMatrix> {
    if signs.len() != n * n {
        return Err(Error::DimensionMismatch(format!(
            "{} signs for order {n}",
            signs.len()
        )));
    }
    let normal = Normal::new(0.0, stddev).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let mut rng = rng_from_seed(seed);
    let entries = signs
        .iter()
        .map(|&s| {
            let mag: f64 = normal.sample(&mut rng);
            f64::from(s) * mag.abs().max(f64::MIN_POSITIVE)
        })
        .collect();
    QuboMatrix::new(n, entries)
}

/// The 4x4 worked example used throughout the tests.
pub fn example_matrix() -> QuboMatrix {
    QuboMatrix::from_rows(vec![
        vec![6.0, 0.0, 5.0, -9.0],
        vec![0.0, 0.0, -3.0, 2.0],
        vec![5.0, -3.0, -18.0, 2.0],
        vec![-9.0, 2.0, 2.0, -2.0],
    ])
    .expect("example matrix is valid")
}

/// Uniform random bit vector, used by tests and the annealer.
pub fn random_bits(n: usize, rng: &mut crate::rng::Rng) -> Vec<u8> {
    (0..n).map(|_| rng.random_range(0..2u8)).collect()
}
