//! Root data of split reductive groups, named groups and their fundamental groups.

mod datum;
mod spec;
mod types;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use datum::{build_group, CrossDiagram, ReductiveGroupData, SimpleFactor, MAX_TORUS_RANK};
pub use spec::{parse_group_spec, Factor, GroupSpec};
pub use types::SimpleType;

use crate::error::{Error, Result};
use crate::exact::{json_int_vec, Lattice};

/// An element of `pi_1(G)` in coordinates with respect to the canonical generators
/// (free generators first, then torsion generators by increasing order).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Pi1Element {
    #[serde(with = "json_int_vec")]
    pub coords: Vec<BigInt>,
}

impl Pi1Element {
    pub fn new(coords: Vec<BigInt>) -> Self {
        Pi1Element { coords }
    }

    pub fn zero(g: &ReductiveGroupData) -> Self {
        Pi1Element { coords: vec![BigInt::zero(); g.cross().pi1.group().num_generators()] }
    }

    /// Checks the coordinate count and reduces torsion coordinates.
    pub fn normalized(&self, g: &ReductiveGroupData) -> Result<Self> {
        let grp = g.cross().pi1.group();
        if self.coords.len() != grp.num_generators() {
            return Err(Error::InvalidDelta(format!(
                "pi_1({}) = {} has {} generators but {} coordinates were given",
                g.name(),
                grp,
                grp.num_generators(),
                self.coords.len()
            )));
        }
        Ok(Pi1Element { coords: grp.reduce(&self.coords)? })
    }

    /// The class of a cocharacter.
    pub fn of_cocharacter(g: &ReductiveGroupData, d: &[BigInt]) -> Result<Self> {
        if d.len() != g.cochar_rank() {
            return Err(Error::DimensionMismatch("cocharacter has the wrong length".into()));
        }
        Ok(Pi1Element { coords: g.cross().pi1.class_of(d)? })
    }

    /// The canonical lift: the chosen generator representatives combined with these coordinates.
    pub fn canonical_lift(&self, g: &ReductiveGroupData) -> Result<Vec<BigInt>> {
        let e = self.normalized(g)?;
        g.cross().pi1.lift(&e.coords)
    }
}

/// Whether `d` is generic: its image in `Lambda(T_G^ad)` is nonzero on every simple factor.
pub fn is_generic(g: &ReductiveGroupData, d: &[BigInt]) -> Result<bool> {
    let ss = g.cross().ss_part(d)?;
    Ok(g.factors().iter().all(|f| f.range().any(|i| !ss[i].is_zero())))
}

/// A generic lift of `delta`, obtained from the canonical lift by adding a simple coroot of
/// each simple factor on which it vanishes.
pub fn generic_lift(g: &ReductiveGroupData, delta: &Pi1Element) -> Result<Vec<BigInt>> {
    let mut d = delta.canonical_lift(g)?;
    make_generic(g, &mut d)?;
    Ok(d)
}

/// Adds coroots to `d` until it is generic; the class in `pi_1` is unchanged.
pub fn make_generic(g: &ReductiveGroupData, d: &mut [BigInt]) -> Result<()> {
    let ss = g.cross().ss_part(d)?;
    for f in g.factors() {
        if f.range().all(|i| ss[i].is_zero()) {
            let col = g.coroots().column(f.start);
            for (x, c) in d.iter_mut().zip(col) {
                *x += c;
            }
        }
    }
    Ok(())
}

/// Divisibility of `d` in `l`: the largest `m` with `d in m*l`, and 0 for `d = 0`.
pub fn divisibility(d: &[BigInt], l: &Lattice) -> Result<BigInt> {
    l.divisibility(d)
}

/// The image of the coroot lattice element `sum c_i alpha_i^vee`.
pub fn coroot_combination(g: &ReductiveGroupData, c: &[BigInt]) -> Result<Vec<BigInt>> {
    g.coroots().mul_vec(c)
}

/// Whether the image of `d` in `Lambda(G^ab)` is divisible by 2.
pub fn ab_two_divisible(g: &ReductiveGroupData, d: &[BigInt]) -> Result<bool> {
    let two = BigInt::from(2);
    Ok(g.cross().abelianization.class_of(d)?.iter().all(|x| (x % &two).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ivec;

    fn g(s: &str) -> ReductiveGroupData {
        build_group(&parse_group_spec(s).unwrap()).unwrap()
    }

    #[test]
    fn genericity() {
        let grp = g("SL(2)*SL(2)");
        assert!(!is_generic(&grp, &ivec(&[1, 0])).unwrap());
        assert!(is_generic(&grp, &ivec(&[1, 1])).unwrap());
        let d = generic_lift(&grp, &Pi1Element::zero(&grp)).unwrap();
        assert!(is_generic(&grp, &d).unwrap());
        let t = g("T(2)");
        assert!(is_generic(&t, &ivec(&[0, 0])).unwrap());
    }

    #[test]
    fn lifts_have_the_right_class() {
        let grp = g("PGL(4)*GL(2)");
        let delta = Pi1Element::new(ivec(&[5, 3]));
        let d = generic_lift(&grp, &delta).unwrap();
        assert_eq!(Pi1Element::of_cocharacter(&grp, &d).unwrap(), delta.normalized(&grp).unwrap());
        assert!(matches!(Pi1Element::new(ivec(&[1])).normalized(&grp), Err(Error::InvalidDelta(_))));
    }

    #[test]
    fn divisibility_examples() {
        let l = Lattice::full(2);
        assert_eq!(divisibility(&ivec(&[2, 4]), &l).unwrap(), BigInt::from(2));
        assert_eq!(divisibility(&ivec(&[0, 0]), &l).unwrap(), BigInt::from(0));
    }
}
