use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use super::lattice::Lattice;
use super::matrix::{json_int_vec, IntMatrix};
use super::normal_form::smith_normal_form;
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z^r + Z/d1 + ... + Z/dk` with `2 <= d1 | d2 | ... | dk`.
///
/// Canonical generators are ordered free ones first, then the torsion ones.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Deserialize)]
pub struct FGAbelianGroup {
    free_rank: usize,
    #[serde(with = "json_int_vec")]
    torsion: Vec<BigInt>,
}

impl FGAbelianGroup {
    pub fn trivial() -> Self {
        FGAbelianGroup { free_rank: 0, torsion: vec![] }
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup { free_rank: rank, torsion: vec![] }
    }

    /// `Z/n`, with `Z/0 = Z` and `Z/1 = 0`.
    pub fn cyclic(n: &BigInt) -> Self {
        Self::from_cyclic_orders(std::slice::from_ref(n))
    }

    /// Direct sum of cyclic groups of the given orders, put into invariant factor form.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let s = smith_normal_form(&IntMatrix::diagonal(orders));
        let diag = s.diagonal();
        let free_rank = diag.iter().filter(|d| d.is_zero()).count();
        let torsion = diag.into_iter().filter(|d| d > &BigInt::one()).collect();
        FGAbelianGroup { free_rank, torsion }
    }

    /// Group with the given free rank and (not necessarily canonical) torsion orders.
    pub fn new(free_rank: usize, torsion: &[BigInt]) -> Self {
        let mut orders: Vec<BigInt> = torsion.iter().map(|d| d.abs()).collect();
        orders.extend(std::iter::repeat_n(BigInt::zero(), free_rank));
        Self::from_cyclic_orders(&orders)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Order of each canonical generator, 0 for the free ones.
    pub fn generator_orders(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.free_rank];
        v.extend(self.torsion.iter().cloned());
        v
    }

    pub fn num_generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            None
        } else {
            Some(self.torsion.iter().product())
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn direct_sum(&self, other: &FGAbelianGroup) -> Self {
        let mut orders = self.generator_orders();
        orders.extend(other.generator_orders());
        Self::from_cyclic_orders(&orders)
    }

    /// Reduces coordinates with respect to the canonical generators.
    pub fn reduce(&self, coords: &[BigInt]) -> Result<Vec<BigInt>> {
        if coords.len() != self.num_generators() {
            return Err(Error::DimensionMismatch(format!("{} coordinates for a group with {} generators", coords.len(), self.num_generators())));
        }
        Ok(coords.iter().zip(self.generator_orders()).map(|(c, o)| if o.is_zero() { c.clone() } else { c.mod_floor(&o) }).collect())
    }

    /// Relation lattice of the canonical presentation.
    pub fn relations(&self) -> Lattice {
        Lattice::from_generators(&IntMatrix::diagonal(&self.generator_orders()))
    }
}

impl Serialize for FGAbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct T<'a>(&'a [BigInt]);
        impl Serialize for T<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                json_int_vec::serialize(self.0, s)
            }
        }
        let mut st = s.serialize_struct("FGAbelianGroup", 2)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        st.serialize_field("torsion", &T(&self.torsion))?;
        st.end()
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// The quotient `top / sub` of two lattices in the same ambient space, with explicit generators.
#[derive(Clone, Debug)]
pub struct Quotient {
    group: FGAbelianGroup,
    top: Lattice,
    sub: Lattice,
    /// Maps `top`-coordinates to generator coordinates (before reduction).
    coords: IntMatrix,
    /// Ambient representatives of the canonical generators, one per column.
    lifts: IntMatrix,
}

impl Quotient {
    pub fn new(top: &Lattice, sub: &Lattice) -> Result<Self> {
        if top.ambient_rank() != sub.ambient_rank() {
            return Err(Error::DimensionMismatch("quotient of lattices in different ambient spaces".into()));
        }
        let cols: Vec<Vec<BigInt>> = sub.basis_vectors().iter().map(|v| top.try_coordinates(v)).collect::<Result<_>>()?;
        let x = IntMatrix::from_columns(top.rank(), &cols)?;
        let smith = smith_normal_form(&x);
        let diag = smith.diagonal();
        let n = top.rank();
        let order_of = |i: usize| if i < smith.rank { diag[i].clone() } else { BigInt::zero() };
        let mut rows: Vec<usize> = (smith.rank..n).collect();
        rows.extend((0..smith.rank).filter(|&i| diag[i] > BigInt::one()));
        let orders: Vec<BigInt> = rows.iter().map(|&i| order_of(i)).collect();
        let group = FGAbelianGroup { free_rank: n - smith.rank, torsion: orders[n - smith.rank..].to_vec() };
        let coords = smith.u.select_rows(&rows);
        let lifts = top.basis().mul(&smith.u_inv.select_columns(&rows))?;
        Ok(Quotient { group, top: top.clone(), sub: sub.clone(), coords, lifts })
    }

    pub fn group(&self) -> &FGAbelianGroup {
        &self.group
    }

    pub fn top(&self) -> &Lattice {
        &self.top
    }

    pub fn sub(&self) -> &Lattice {
        &self.sub
    }

    /// Canonical coordinates of the class of an ambient vector.
    pub fn class_of(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        let y = self.top.try_coordinates(v)?;
        self.group.reduce(&self.coords.mul_vec(&y)?)
    }

    pub fn is_zero_class(&self, v: &[BigInt]) -> Result<bool> {
        Ok(self.class_of(v)?.iter().all(Zero::is_zero))
    }

    /// An ambient representative of the element with the given coordinates.
    pub fn lift(&self, coords: &[BigInt]) -> Result<Vec<BigInt>> {
        if coords.len() != self.group.num_generators() {
            return Err(Error::DimensionMismatch("wrong number of generator coordinates".into()));
        }
        self.lifts.mul_vec(coords)
    }

    /// Representatives of the canonical generators.
    pub fn generator_lifts(&self) -> Vec<Vec<BigInt>> {
        self.lifts.columns()
    }

    /// Order of the class of `v` (0 when of infinite order).
    pub fn order_of(&self, v: &[BigInt]) -> Result<BigInt> {
        let c = self.class_of(v)?;
        let mut ord = BigInt::one();
        for (x, o) in c.iter().zip(self.group.generator_orders()) {
            if o.is_zero() {
                if !x.is_zero() {
                    return Ok(BigInt::zero());
                }
            } else {
                ord = ord.lcm(&(&o / x.gcd(&o)));
            }
        }
        Ok(ord)
    }
}

/// A homomorphism between groups in canonical form, given on canonical generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: FGAbelianGroup,
    target: FGAbelianGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Checks that the matrix respects the relations of the source.
    pub fn new(source: FGAbelianGroup, target: FGAbelianGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.num_generators() || matrix.cols() != source.num_generators() {
            return Err(Error::DimensionMismatch("homomorphism matrix has the wrong shape".into()));
        }
        let rel = target.relations();
        for (j, o) in source.generator_orders().iter().enumerate() {
            if o.is_zero() {
                continue;
            }
            let img: Vec<BigInt> = matrix.column(j).iter().map(|x| x * o).collect();
            if !rel.contains(&img) {
                return Err(Error::IllDefinedHom(format!("generator {j} of order {o} is not sent to an element of order dividing it")));
            }
        }
        Ok(GroupHom { source, target, matrix })
    }

    pub fn source(&self) -> &FGAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FGAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    fn image_lattice(&self) -> Result<Lattice> {
        Lattice::from_generators(&self.matrix).sum(&self.target.relations())
    }

    pub fn cokernel(&self) -> Result<FGAbelianGroup> {
        let t = self.target.num_generators();
        Ok(Quotient::new(&Lattice::full(t), &self.image_lattice()?)?.group().clone())
    }

    pub fn image(&self) -> Result<FGAbelianGroup> {
        Ok(Quotient::new(&self.image_lattice()?, &self.target.relations())?.group().clone())
    }

    pub fn kernel(&self) -> Result<FGAbelianGroup> {
        let s = self.source.num_generators();
        let pre = self.target.relations().preimage_in(&self.matrix, &Lattice::full(s))?;
        Ok(Quotient::new(&pre, &self.source.relations())?.group().clone())
    }
}

/// Cokernel of a homomorphism.
pub fn cokernel(f: &GroupHom) -> Result<FGAbelianGroup> {
    f.cokernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::matrix::{int, ivec};

    #[test]
    fn canonical_form() {
        let g = FGAbelianGroup::from_cyclic_orders(&ivec(&[6, 4, 1, 0]));
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.torsion(), &ivec(&[2, 12])[..]);
        assert_eq!(FGAbelianGroup::cyclic(&int(1)), FGAbelianGroup::trivial());
        assert_eq!(FGAbelianGroup::cyclic(&int(0)), FGAbelianGroup::free(1));
        assert_eq!(g.to_string(), "Z + Z/2 + Z/12");
    }

    #[test]
    fn cokernel_of_diagonal() {
        let f = GroupHom::new(FGAbelianGroup::free(2), FGAbelianGroup::free(2), IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]])).unwrap();
        assert_eq!(f.cokernel().unwrap(), FGAbelianGroup::cyclic(&int(6)));
        assert_eq!(f.kernel().unwrap(), FGAbelianGroup::trivial());
    }

    #[test]
    fn ill_defined_hom_is_rejected() {
        let z2 = FGAbelianGroup::cyclic(&int(2));
        let z = FGAbelianGroup::free(1);
        assert!(matches!(GroupHom::new(z2.clone(), z, IntMatrix::from_i64_rows(&[vec![1]])), Err(Error::IllDefinedHom(_))));
        let z4 = FGAbelianGroup::cyclic(&int(4));
        let f = GroupHom::new(z2, z4, IntMatrix::from_i64_rows(&[vec![2]])).unwrap();
        assert_eq!(f.cokernel().unwrap(), FGAbelianGroup::cyclic(&int(2)));
        assert_eq!(f.kernel().unwrap(), FGAbelianGroup::trivial());
    }

    #[test]
    fn quotient_coordinates() {
        let top = Lattice::full(2);
        let sub = Lattice::from_vectors(2, &[ivec(&[2, 0]), ivec(&[0, 3])]).unwrap();
        let q = Quotient::new(&top, &sub).unwrap();
        assert_eq!(q.group(), &FGAbelianGroup::cyclic(&int(6)));
        assert!(q.is_zero_class(&ivec(&[4, 9])).unwrap());
        assert_eq!(q.order_of(&ivec(&[1, 0])).unwrap(), int(2));
        assert_eq!(q.order_of(&ivec(&[1, 1])).unwrap(), int(6));
        let g = q.generator_lifts();
        assert_eq!(q.class_of(&g[0]).unwrap(), ivec(&[1]));
    }
}
