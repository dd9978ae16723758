//! Integer matrices for the action on `H1(N_g; ℝ)`, the rotation models `E_g`, and the genus
//! decomposition used to choose them.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::automorphism::Automorphism;
use crate::error::{McgError, Result};

/// Square matrix over ℤ; column `j` is the image of basis vector `j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> IntMatrix {
        IntMatrix {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_columns(columns: &[Vec<i64>]) -> IntMatrix {
        let n = columns.len();
        let mut m = IntMatrix::zero(n);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), n, "column length");
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = IntMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> IntMatrix {
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.n)
    }

    /// Fraction-free Gaussian elimination (Bareiss).
    pub fn det(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Action on `H1(N_g; ℝ)` in the basis `c1, ..., c_{g-1}` (crosscap cores, `c_g` eliminated).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomologyMatrix {
    pub genus: usize,
    pub matrix: IntMatrix,
}

impl HomologyMatrix {
    pub fn det(&self) -> BigInt {
        self.matrix.det()
    }

    pub fn mul(&self, other: &HomologyMatrix) -> HomologyMatrix {
        HomologyMatrix {
            genus: self.genus,
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn pow(&self, e: u64) -> HomologyMatrix {
        HomologyMatrix {
            genus: self.genus,
            matrix: self.matrix.pow(e),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

/// Column `i` is the class of `a(x_i)`, using `c_g = -(c1 + ... + c_{g-1})`.
pub fn abelianize(a: &Automorphism) -> HomologyMatrix {
    let g = a.genus();
    let cols: Vec<Vec<i64>> = (1..g)
        .map(|i| {
            let v = a.image(i).exponent_vector(g);
            (0..g - 1).map(|j| v[j] - v[g - 1]).collect()
        })
        .collect();
    HomologyMatrix {
        genus: g,
        matrix: IntMatrix::from_columns(&cols),
    }
}

/// Determinant criterion for the twist subgroup.
pub fn in_twist_subgroup(m: &HomologyMatrix) -> Result<bool> {
    let d = m.det();
    if d.abs() != BigInt::one() {
        return Err(McgError::DeterminantOutOfRange(d.to_string()));
    }
    Ok(d.is_positive())
}

/// Parameters of the rotation model `E_g`: `p` nonorientable pieces of genus `k`, `q` orientable
/// pieces of genus `k - 1`, and optionally one fixed crosscap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EgRotationSpec {
    pub k: usize,
    pub p: usize,
    pub q: usize,
    pub extra_crosscap: bool,
}

impl EgRotationSpec {
    pub fn new(k: usize, p: usize, q: usize, extra_crosscap: bool) -> Result<EgRotationSpec> {
        let s = EgRotationSpec {
            k,
            p,
            q,
            extra_crosscap,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(McgError::InvalidSpec(format!("k = {} < 2", self.k)));
        }
        if self.p < 1 {
            return Err(McgError::InvalidSpec("p must be at least 1".into()));
        }
        Ok(())
    }

    pub fn genus(&self) -> usize {
        self.p * self.k + 2 * self.q * (self.k - 1) + usize::from(self.extra_crosscap)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EgBasis {
    /// Labels of the reduced basis, in matrix order.
    pub labels: Vec<String>,
    /// The eliminated one-sided label.
    pub dropped: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EgRotation {
    pub spec: EgRotationSpec,
    pub basis: EgBasis,
    pub matrix: IntMatrix,
}

/// The rotation's action on `H1(E_g; ℝ)`.
///
/// Orientable piece: `a_i ↦ a_{i+1} - a_1`, `b_i ↦ b_{i+1}` (`i <= k-2`), `a_{k-1} ↦ -a_1`,
/// `b_{k-1} ↦ -(b_1 + ... + b_{k-1})`. Nonorientable piece: `c_i ↦ c_{i+1}` cyclically. The
/// extra crosscap `d` is fixed. One-sided classes sum to zero; the last `c` is eliminated.
pub fn build_eg_rotation(spec: &EgRotationSpec) -> Result<EgRotation> {
    spec.validate()?;
    let k = spec.k;
    let mut labels: Vec<String> = Vec::new();
    let mut one_sided: Vec<usize> = Vec::new();
    // Full-basis images as sparse columns.
    let mut images: Vec<Vec<(usize, i64)>> = Vec::new();

    for piece in 1..=spec.q {
        let a0 = labels.len();
        let b0 = a0 + (k - 1);
        for i in 1..k {
            labels.push(format!("T{piece}.a{i}"));
        }
        for i in 1..k {
            labels.push(format!("T{piece}.b{i}"));
        }
        for i in 0..k - 1 {
            images.push(if i + 1 < k - 1 {
                vec![(a0 + i + 1, 1), (a0, -1)]
            } else {
                vec![(a0, -1)]
            });
        }
        for i in 0..k - 1 {
            images.push(if i + 1 < k - 1 {
                vec![(b0 + i + 1, 1)]
            } else {
                (0..k - 1).map(|j| (b0 + j, -1)).collect()
            });
        }
    }
    for piece in 1..=spec.p {
        let c0 = labels.len();
        for i in 1..=k {
            labels.push(format!("N{piece}.c{i}"));
            one_sided.push(c0 + i - 1);
        }
        for i in 0..k {
            images.push(vec![(c0 + (i + 1) % k, 1)]);
        }
    }
    if spec.extra_crosscap {
        one_sided.push(labels.len());
        images.push(vec![(labels.len(), 1)]);
        labels.push("d".into());
    }
    debug_assert_eq!(labels.len(), spec.genus());

    let dropped = spec.p * k + 2 * spec.q * (k - 1) - 1;
    let n = labels.len() - 1;
    let reduced = |i: usize| if i < dropped { i } else { i - 1 };
    let mut m = IntMatrix::zero(n);
    for (j, img) in images.iter().enumerate() {
        if j == dropped {
            continue;
        }
        let mut col = vec![0i64; n];
        for &(i, v) in img {
            if i == dropped {
                for &s in one_sided.iter().filter(|&&s| s != dropped) {
                    col[reduced(s)] -= v;
                }
            } else {
                col[reduced(i)] += v;
            }
        }
        for (i, v) in col.into_iter().enumerate() {
            m.set(i, reduced(j), BigInt::from(v));
        }
    }
    let dropped_label = labels.remove(dropped);
    Ok(EgRotation {
        spec: *spec,
        basis: EgBasis {
            labels,
            dropped: dropped_label,
        },
        matrix: m,
    })
}

/// `build_eg_rotation(spec)^k` is the identity.
pub fn eg_matrix_power_identity(spec: &EgRotationSpec) -> Result<bool> {
    Ok(build_eg_rotation(spec)?.matrix.pow(spec.k as u64).is_identity())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenusDecomposition {
    pub p: u64,
    pub q: u64,
    pub plus_one: bool,
    /// Intermediate values `n = m (k - 1) + r`.
    pub n: u64,
    pub m: u64,
    pub r: u64,
}

impl GenusDecomposition {
    pub fn genus(&self, k: u64) -> u64 {
        self.p * k + 2 * self.q * (k - 1) + u64::from(self.plus_one)
    }
}

/// Smallest genus from which every genus of the given parity decomposes.
pub fn decomposition_threshold(k: u64, odd: bool) -> u64 {
    2 * (k - 1) * (k - 2) + k + u64::from(odd)
}

/// Writes `g = p k + 2 q (k - 1) (+ 1)` with `p` odd, via `n = m (k - 1) + r`, `p = 2r + 1`,
/// `q = m - r`. Fails when `q` would be negative, which cannot happen from the threshold on.
pub fn decompose_genus(g: u64, k: u64) -> Result<GenusDecomposition> {
    if k < 2 || k % 2 != 0 {
        return Err(McgError::InvalidSpec(format!("k = {k} must be even")));
    }
    let plus_one = (g - g.min(k)) % 2 == 1;
    let base = k + u64::from(plus_one);
    if g < base {
        return Err(McgError::OutOfRange { g, k });
    }
    let n = (g - base) / 2;
    let m = n / (k - 1);
    let r = n % (k - 1);
    if m < r {
        return Err(McgError::OutOfRange { g, k });
    }
    let d = GenusDecomposition {
        p: 2 * r + 1,
        q: m - r,
        plus_one,
        n,
        m,
        r,
    };
    debug_assert_eq!(d.genus(k), g);
    Ok(d)
}
