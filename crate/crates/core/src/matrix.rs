//! Exact square integer matrices.
//!
//! Entries live in `i64` while they fit and are promoted to [`BigInt`] as soon
//! as an operation would overflow. The representation is normalized after
//! every operation (big storage only when some entry needs it), so derived
//! equality and hashing agree with mathematical equality.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Entries {
    Small(Box<[i64]>),
    Big(Box<[BigInt]>),
}

/// A square integer matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    entries: Entries,
}

impl IntMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![0i64; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = 1;
        }
        Self { dim, entries: Entries::Small(data.into()) }
    }

    /// Builds a matrix from rows. Panics if the rows are not square.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            assert_eq!(row.len(), dim, "matrix must be square");
            data.extend_from_slice(row);
        }
        Self { dim, entries: Entries::Small(data.into()) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Whether the entries have outgrown `i64`.
    pub fn is_big(&self) -> bool {
        matches!(self.entries, Entries::Big(_))
    }

    pub fn get(&self, row: usize, col: usize) -> BigInt {
        match &self.entries {
            Entries::Small(d) => BigInt::from(d[row * self.dim + col]),
            Entries::Big(d) => d[row * self.dim + col].clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        match &self.entries {
            Entries::Small(d) => (0..self.dim).all(|r| {
                (0..self.dim).all(|c| d[r * self.dim + c] == i64::from(r == c))
            }),
            Entries::Big(_) => false,
        }
    }

    /// Column `col`, i.e. the image of the `col`-th basis vector.
    pub fn column(&self, col: usize) -> Vec<BigInt> {
        (0..self.dim).map(|r| self.get(r, col)).collect()
    }

    /// Sign of the first nonzero entry of column `col`.
    ///
    /// Columns of a Weyl group element are real roots, hence sign-coherent,
    /// so the first nonzero entry decides positivity of the whole column.
    pub fn column_sign(&self, col: usize) -> Ordering {
        match &self.entries {
            Entries::Small(d) => (0..self.dim)
                .map(|r| d[r * self.dim + col])
                .find(|&x| x != 0)
                .map_or(Ordering::Equal, |x| x.cmp(&0)),
            Entries::Big(d) => (0..self.dim)
                .map(|r| &d[r * self.dim + col])
                .find(|x| !x.is_zero())
                .map_or(Ordering::Equal, |x| if x.is_positive() { Ordering::Greater } else { Ordering::Less }),
        }
    }

    /// Rows as `i64`, if every entry fits.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        match &self.entries {
            Entries::Small(d) => Some(d.chunks(self.dim).map(<[i64]>::to_vec).collect()),
            Entries::Big(_) => None,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        if let (Entries::Small(a), Entries::Small(b)) = (&self.entries, &other.entries) {
            if let Some(out) = mul_small(n, a, b) {
                return Self { dim: n, entries: Entries::Small(out.into()) };
            }
        }
        let a = self.big_entries();
        let b = other.big_entries();
        let mut out = vec![BigInt::zero(); n * n];
        for r in 0..n {
            for k in 0..n {
                let x = &a[r * n + k];
                if x.is_zero() {
                    continue;
                }
                for c in 0..n {
                    out[r * n + c] += x * &b[k * n + c];
                }
            }
        }
        Self::from_big(n, out)
    }

    /// Left multiplication by the generator matrix of node `j` for the
    /// row-major Cartan matrix `cartan`: only row `j` changes, becoming
    /// `m[j][c] - sum_i cartan[i][j] * m[i][c]`.
    pub fn reflect_left(&self, j: usize, cartan: &[i64]) -> Self {
        let n = self.dim;
        if let Entries::Small(d) = &self.entries {
            let mut out = d.to_vec();
            let ok = (0..n).all(|c| {
                let mut acc = d[j * n + c];
                for i in 0..n {
                    let a = cartan[i * n + j];
                    if a != 0 {
                        match a.checked_mul(d[i * n + c]).and_then(|p| acc.checked_sub(p)) {
                            Some(v) => acc = v,
                            None => return false,
                        }
                    }
                }
                out[j * n + c] = acc;
                true
            });
            if ok {
                return Self { dim: n, entries: Entries::Small(out.into()) };
            }
        }
        let d = self.big_entries();
        let mut out = d.clone();
        for c in 0..n {
            let mut acc = d[j * n + c].clone();
            for i in 0..n {
                let a = cartan[i * n + j];
                if a != 0 {
                    acc -= &d[i * n + c] * a;
                }
            }
            out[j * n + c] = acc;
        }
        Self::from_big(n, out)
    }

    /// Right multiplication by the generator matrix of node `j`: column `c`
    /// becomes `col_c - cartan[c][j] * col_j`.
    pub fn reflect_right(&self, j: usize, cartan: &[i64]) -> Self {
        let n = self.dim;
        if let Entries::Small(d) = &self.entries {
            let mut out = d.to_vec();
            let ok = (0..n).all(|c| {
                let a = cartan[c * n + j];
                if a == 0 {
                    return true;
                }
                (0..n).all(|r| {
                    match a.checked_mul(d[r * n + j]).and_then(|p| d[r * n + c].checked_sub(p)) {
                        Some(v) => {
                            out[r * n + c] = v;
                            true
                        }
                        None => false,
                    }
                })
            });
            if ok {
                return Self { dim: n, entries: Entries::Small(out.into()) };
            }
        }
        let d = self.big_entries();
        let mut out = d.clone();
        for c in 0..n {
            let a = cartan[c * n + j];
            if a == 0 {
                continue;
            }
            for r in 0..n {
                out[r * n + c] = &d[r * n + c] - &d[r * n + j] * a;
            }
        }
        Self::from_big(n, out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        let n = self.dim;
        assert_eq!(v.len(), n, "dimension mismatch");
        (0..n)
            .map(|r| {
                let mut acc = BigInt::zero();
                for (c, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += self.get(r, c) * x;
                    }
                }
                acc
            })
            .collect()
    }

    fn big_entries(&self) -> Vec<BigInt> {
        match &self.entries {
            Entries::Small(d) => d.iter().map(|&x| BigInt::from(x)).collect(),
            Entries::Big(d) => d.to_vec(),
        }
    }

    fn from_big(dim: usize, data: Vec<BigInt>) -> Self {
        let small: Option<Vec<i64>> = data.iter().map(ToPrimitive::to_i64).collect();
        let entries = match small {
            Some(s) => Entries::Small(s.into()),
            None => Entries::Big(data.into()),
        };
        Self { dim, entries }
    }
}

fn mul_small(n: usize, a: &[i64], b: &[i64]) -> Option<Vec<i64>> {
    let mut out = vec![0i64; n * n];
    for r in 0..n {
        for k in 0..n {
            let x = a[r * n + k];
            if x == 0 {
                continue;
            }
            for c in 0..n {
                let p = x.checked_mul(b[k * n + c])?;
                out[r * n + c] = out[r * n + c].checked_add(p)?;
            }
        }
    }
    Some(out)
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.get(r, c).to_string()).collect())
            .collect();
        f.debug_list().entries(rows.iter().map(|r| format!("[{}]", r.join(", ")))).finish()
    }
}
