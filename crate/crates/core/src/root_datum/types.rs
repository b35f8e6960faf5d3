use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::IntMatrix;

/// Simple Dynkin types with Bourbaki numbering of the simple roots.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum SimpleType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl SimpleType {
    /// Checks the usual rank bounds (`A >= 1`, `B >= 2`, `C >= 2`, `D >= 3`).
    pub fn validated(self) -> Result<Self> {
        let ok = match self {
            SimpleType::A(n) => n >= 1,
            SimpleType::B(n) | SimpleType::C(n) => n >= 2,
            SimpleType::D(n) => n >= 3,
            _ => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::InvalidDatum(format!("type {self} is outside the supported rank range")))
        }
    }

    pub fn rank(self) -> usize {
        match self {
            SimpleType::A(n) | SimpleType::B(n) | SimpleType::C(n) | SimpleType::D(n) => n,
            SimpleType::E6 => 6,
            SimpleType::E7 => 7,
            SimpleType::E8 => 8,
            SimpleType::F4 => 4,
            SimpleType::G2 => 2,
        }
    }

    /// Simple roots in a Euclidean realization, scaled so that all coordinates are integers.
    fn simple_roots_euclidean(self) -> Vec<Vec<i64>> {
        let unit = |dim: usize, i: usize, c: i64| {
            let mut v = vec![0; dim];
            v[i] = c;
            v
        };
        let diff = |dim: usize, i: usize, j: usize| {
            let mut v = vec![0; dim];
            v[i] = 2;
            v[j] = -2;
            v
        };
        match self {
            SimpleType::A(n) => (0..n).map(|i| diff(n + 1, i, i + 1)).collect(),
            SimpleType::B(n) => {
                let mut r: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
                r.push(unit(n, n - 1, 2));
                r
            }
            SimpleType::C(n) => {
                let mut r: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
                r.push(unit(n, n - 1, 4));
                r
            }
            SimpleType::D(n) => {
                let mut r: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
                let mut last = vec![0; n];
                last[n - 2] = 2;
                last[n - 1] = 2;
                r.push(last);
                r
            }
            SimpleType::G2 => vec![vec![2, -2, 0], vec![-4, 2, 2]],
            SimpleType::F4 => vec![vec![0, 2, -2, 0], vec![0, 0, 2, -2], vec![0, 0, 0, 2], vec![1, -1, -1, -1]],
            SimpleType::E6 | SimpleType::E7 | SimpleType::E8 => {
                let mut r = vec![vec![1, -1, -1, -1, -1, -1, -1, 1]];
                let mut a2 = vec![0; 8];
                a2[0] = 2;
                a2[1] = 2;
                r.push(a2);
                r.push(diff(8, 1, 0));
                for i in 2..7 {
                    r.push(diff(8, i, i - 1));
                }
                r.truncate(self.rank());
                r
            }
        }
    }

    fn euclidean_gram(self) -> Vec<Vec<i64>> {
        let roots = self.simple_roots_euclidean();
        roots.iter().map(|a| roots.iter().map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum()).collect()).collect()
    }

    /// Cartan matrix with entries `c[i][j] = <alpha_i, alpha_j^vee>`.
    pub fn cartan_matrix(self) -> IntMatrix {
        let g = self.euclidean_gram();
        let r = g.len();
        let rows: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| 2 * g[i][j] / g[j][j]).collect()).collect();
        IntMatrix::from_i64_rows(&rows)
    }

    /// For each simple root, whether it is long. In simply laced types every root counts as long.
    pub fn long_roots(self) -> Vec<bool> {
        let g = self.euclidean_gram();
        let max = (0..g.len()).map(|i| g[i][i]).max().unwrap_or(0);
        (0..g.len()).map(|i| g[i][i] == max).collect()
    }

    /// Square length ratio of long to short roots (1 for simply laced types).
    pub fn length_ratio(self) -> i64 {
        match self {
            SimpleType::B(_) | SimpleType::C(_) | SimpleType::F4 => 2,
            SimpleType::G2 => 3,
            _ => 1,
        }
    }

    /// Gram matrix of the basic inner product on the simple coroots, computed from the Cartan
    /// matrix and the root lengths: short coroots have square length 2 and
    /// `b(a_i^vee, a_j^vee) = b(a_j^vee, a_j^vee)/2 * <alpha_j, alpha_i^vee>`.
    pub fn basic_gram(self) -> IntMatrix {
        let c = self.cartan_matrix();
        let long = self.long_roots();
        let ratio = self.length_ratio();
        let r = self.rank();
        let norm: Vec<i64> = (0..r).map(|j| if long[j] { 2 } else { 2 * ratio }).collect();
        let mut m = IntMatrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                m[(i, j)] = BigInt::from(norm[j] / 2) * &c[(j, i)];
            }
        }
        m
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::A(n) => write!(f, "A{n}"),
            SimpleType::B(n) => write!(f, "B{n}"),
            SimpleType::C(n) => write!(f, "C{n}"),
            SimpleType::D(n) => write!(f, "D{n}"),
            SimpleType::E6 => write!(f, "E6"),
            SimpleType::E7 => write!(f, "E7"),
            SimpleType::E8 => write!(f, "E8"),
            SimpleType::F4 => write!(f, "F4"),
            SimpleType::G2 => write!(f, "G2"),
        }
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let t = match s {
            "E6" => SimpleType::E6,
            "E7" => SimpleType::E7,
            "E8" => SimpleType::E8,
            "F4" => SimpleType::F4,
            "G2" => SimpleType::G2,
            _ => {
                let bad = || Error::InvalidDatum(format!("unknown simple type `{s}`"));
                let (head, tail) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
                let n: usize = tail.parse().map_err(|_| bad())?;
                match head {
                    "A" => SimpleType::A(n),
                    "B" => SimpleType::B(n),
                    "C" => SimpleType::C(n),
                    "D" => SimpleType::D(n),
                    _ => return Err(bad()),
                }
            }
        };
        t.validated()
    }
}

impl Serialize for SimpleType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SimpleType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
