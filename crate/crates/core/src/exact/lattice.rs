use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use super::matrix::{gcd_all, IntMatrix};
use super::normal_form::{hermite_normal_form, integer_kernel};
use crate::error::{Error, Result};

/// A sublattice of `Z^n`, stored by a column Hermite basis (canonical, so `==` is lattice equality).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lattice {
    ambient_rank: usize,
    basis: IntMatrix,
    pivot_rows: Vec<usize>,
}

/// A congruence condition `f(v) = 0 mod m`. A modulus of 0 asks for exact vanishing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    pub functional: Vec<BigInt>,
    pub modulus: BigInt,
}

impl Congruence {
    pub fn new(functional: Vec<BigInt>, modulus: BigInt) -> Self {
        Congruence { functional, modulus }
    }
}

impl Lattice {
    /// The lattice spanned by the columns of `generators` (an `ambient x k` matrix).
    pub fn from_generators(generators: &IntMatrix) -> Self {
        let herm = hermite_normal_form(generators);
        let idx: Vec<usize> = (0..herm.rank).collect();
        Lattice { ambient_rank: generators.rows(), basis: herm.h.select_columns(&idx), pivot_rows: herm.pivot_rows }
    }

    pub fn from_vectors(ambient_rank: usize, vectors: &[Vec<BigInt>]) -> Result<Self> {
        Ok(Self::from_generators(&IntMatrix::from_columns(ambient_rank, vectors)?))
    }

    pub fn full(n: usize) -> Self {
        Self::from_generators(&IntMatrix::identity(n))
    }

    pub fn zero(n: usize) -> Self {
        Self::from_generators(&IntMatrix::zeros(n, 0))
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Basis vectors as the columns of an `ambient x rank` matrix.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<BigInt>> {
        self.basis.columns()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient_rank && self.basis == IntMatrix::identity(self.ambient_rank)
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is not in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.ambient_rank {
            return None;
        }
        let mut r = v.to_vec();
        let mut x = Vec::with_capacity(self.rank());
        for (t, &p) in self.pivot_rows.iter().enumerate() {
            let piv = &self.basis[(p, t)];
            let (q, rem) = r[p].div_rem(piv);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for i in p..self.ambient_rank {
                    let d = &self.basis[(i, t)] * &q;
                    r[i] -= d;
                }
            }
            x.push(q);
        }
        if r.iter().all(Zero::is_zero) {
            Some(x)
        } else {
            None
        }
    }

    pub fn try_coordinates(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        self.coordinates(v).ok_or(Error::NotInLattice)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    /// The vector with the given coordinates.
    pub fn vector(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.basis.mul_vec(coords).expect("coordinate length matches rank")
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        Ok(Lattice::from_generators(&self.basis.hcat(&other.basis)?))
    }

    pub fn intersection(&self, other: &Lattice) -> Result<Lattice> {
        other.preimage_in(&IntMatrix::identity(self.ambient_rank), self)
    }

    /// `{v in domain : phi(v) in self}`, with `phi` given as a matrix acting on ambient coordinates.
    pub fn preimage_in(&self, phi: &IntMatrix, domain: &Lattice) -> Result<Lattice> {
        if phi.rows() != self.ambient_rank || phi.cols() != domain.ambient_rank {
            return Err(Error::DimensionMismatch("preimage map has the wrong shape".into()));
        }
        let k = domain.rank();
        let composed = phi.mul(&domain.basis)?;
        let system = composed.hcat(&self.basis.scale(&BigInt::from(-1)))?;
        let ker = integer_kernel(&system);
        let top: Vec<usize> = (0..k).collect();
        let coords = ker.select_rows(&top);
        Ok(Lattice::from_generators(&domain.basis.mul(&coords)?))
    }

    /// The image of this lattice under `phi`.
    pub fn image(&self, phi: &IntMatrix) -> Result<Lattice> {
        Ok(Lattice::from_generators(&phi.mul(&self.basis)?))
    }

    /// Sublattice cut out by congruences on ambient coordinates.
    pub fn restrict(&self, conditions: &[Congruence]) -> Result<Lattice> {
        let mut on_coords = Vec::with_capacity(conditions.len());
        for c in conditions {
            if c.functional.len() != self.ambient_rank {
                return Err(Error::DimensionMismatch("congruence functional has the wrong length".into()));
            }
            let f: Vec<BigInt> = (0..self.rank()).map(|t| (0..self.ambient_rank).map(|a| &c.functional[a] * &self.basis[(a, t)]).sum()).collect();
            on_coords.push(Congruence::new(f, c.modulus.clone()));
        }
        self.restrict_coords(&on_coords)
    }

    /// Sublattice cut out by congruences on the coordinates with respect to the stored basis.
    pub fn restrict_coords(&self, conditions: &[Congruence]) -> Result<Lattice> {
        let q = conditions.len();
        let k = self.rank();
        // Find (x, y) with F x + M y = 0; the lattice is B x.
        let mut system = IntMatrix::zeros(q, k + q);
        for (i, c) in conditions.iter().enumerate() {
            if c.functional.len() != k {
                return Err(Error::DimensionMismatch("congruence functional has the wrong length".into()));
            }
            for t in 0..k {
                system[(i, t)] = c.functional[t].clone();
            }
            system[(i, k + i)] = c.modulus.abs();
        }
        let ker = integer_kernel(&system);
        let top: Vec<usize> = (0..k).collect();
        Ok(Lattice::from_generators(&self.basis.mul(&ker.select_rows(&top))?))
    }

    /// `{B x : phi(x) in target}` where `phi` acts on coordinates with respect to the stored basis.
    pub fn preimage_coords(&self, phi: &IntMatrix, target: &Lattice) -> Result<Lattice> {
        if phi.cols() != self.rank() || phi.rows() != target.ambient_rank {
            return Err(Error::DimensionMismatch("coordinate map has the wrong shape".into()));
        }
        let system = phi.hcat(&target.basis.scale(&BigInt::from(-1)))?;
        let ker = integer_kernel(&system);
        let top: Vec<usize> = (0..self.rank()).collect();
        Ok(Lattice::from_generators(&self.basis.mul(&ker.select_rows(&top))?))
    }

    /// `Q-span(self) ∩ Z^n`.
    pub fn saturation(&self) -> Lattice {
        let annihilators = integer_kernel(&self.basis.transpose());
        let ker = integer_kernel(&annihilators.transpose());
        Lattice::from_generators(&ker)
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation() == *self
    }

    /// Index `[self : sub]` when `sub` is a full-rank sublattice; `None` when infinite.
    pub fn index_of(&self, sub: &Lattice) -> Result<Option<BigInt>> {
        let q = super::group::Quotient::new(self, sub)?;
        Ok(q.group().order())
    }

    /// Content of a vector with respect to this lattice: the largest `m` with `v in m*L`.
    /// The zero vector has divisibility 0.
    pub fn divisibility(&self, v: &[BigInt]) -> Result<BigInt> {
        let x = self.try_coordinates(v)?;
        Ok(gcd_all(x.iter()))
    }
}

/// Serialized as `{ambient_rank, basis}` with `basis` a list of basis vectors.
impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Lattice", 2)?;
        st.serialize_field("ambient_rank", &self.ambient_rank)?;
        st.serialize_field("basis", &self.basis.transpose())?;
        st.end()
    }
}

/// `{v in Z^n : f_i(v) = 0 mod m_i for all i}`.
pub fn solve_congruence_sublattice(ambient_rank: usize, conditions: &[Congruence]) -> Result<Lattice> {
    Lattice::full(ambient_rank).restrict(conditions)
}

pub fn saturation(l: &Lattice) -> Lattice {
    l.saturation()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::matrix::{int, ivec};

    #[test]
    fn congruence_index_two() {
        let l = solve_congruence_sublattice(2, &[Congruence::new(ivec(&[1, 1]), int(2))]).unwrap();
        assert_eq!(Lattice::full(2).index_of(&l).unwrap(), Some(int(2)));
        assert!(l.contains(&ivec(&[1, 1])));
        assert!(!l.contains(&ivec(&[1, 0])));
    }

    #[test]
    fn modulus_conventions() {
        let exact = solve_congruence_sublattice(2, &[Congruence::new(ivec(&[1, -1]), int(0))]).unwrap();
        assert_eq!(exact.rank(), 1);
        assert!(exact.contains(&ivec(&[3, 3])));
        let vacuous = solve_congruence_sublattice(2, &[Congruence::new(ivec(&[1, 5]), int(1))]).unwrap();
        assert_eq!(vacuous, Lattice::full(2));
    }

    #[test]
    fn saturation_and_divisibility() {
        let l = Lattice::from_vectors(2, &[ivec(&[2, 4])]).unwrap();
        let s = l.saturation();
        assert!(s.contains(&ivec(&[1, 2])));
        assert_eq!(s.rank(), 1);
        assert_eq!(Lattice::full(2).divisibility(&ivec(&[4, 6])).unwrap(), int(2));
        assert_eq!(Lattice::full(2).divisibility(&ivec(&[0, 0])).unwrap(), int(0));
        assert_eq!(l.divisibility(&ivec(&[1, 2])), Err(Error::NotInLattice));
    }

    #[test]
    fn intersection_of_lines() {
        let a = Lattice::from_vectors(2, &[ivec(&[2, 0]), ivec(&[0, 1])]).unwrap();
        let b = Lattice::from_vectors(2, &[ivec(&[1, 0]), ivec(&[0, 3])]).unwrap();
        let c = a.intersection(&b).unwrap();
        assert_eq!(c, Lattice::from_vectors(2, &[ivec(&[2, 0]), ivec(&[0, 3])]).unwrap());
    }
}
