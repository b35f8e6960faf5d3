//! Evaluation cokernels of groups with simply connected derived subgroup, checked against the
//! closed-form case table for every simple type and every class in `pi_1(G^ad)`.

mod common;

use bunpic_core::exact::{IntMatrix, Lattice, Quotient};
use bunpic_core::gerbe::{evaluation_cokernel, evaluation_cokernel_at};
use bunpic_core::root_datum::{Pi1Element, ReductiveGroupData, SimpleType};
use common::{adjoint_vector, classes, expected, lift, table};
use num_bigint::BigInt;

#[test]
fn case_table_for_every_simple_type() {
    for t in table() {
        let g = ReductiveGroupData::sc_derived_extension(&[t]).unwrap();
        for delta in classes(t) {
            let d = lift(&g, &delta);
            let got = evaluation_cokernel_at(&g, &d).unwrap();
            assert_eq!(got, expected(t, &delta), "type {t} class {delta:?}");
            // The same class through the fundamental group interface.
            let via_pi1 = evaluation_cokernel(&g, &Pi1Element::of_cocharacter(&g, &d).unwrap()).unwrap();
            assert_eq!(via_pi1, got, "type {t} class {delta:?} via pi_1");
        }
    }
}

#[test]
fn shifting_the_lift_by_coroots_changes_nothing() {
    for t in table() {
        let g = ReductiveGroupData::sc_derived_extension(&[t]).unwrap();
        for delta in classes(t) {
            let d = lift(&g, &delta);
            let mut shifted = d.clone();
            for (j, col) in g.coroots().columns().iter().enumerate() {
                for (x, y) in shifted.iter_mut().zip(col) {
                    *x += BigInt::from(j as i64 + 2) * y;
                }
            }
            assert_eq!(evaluation_cokernel_at(&g, &d).unwrap(), evaluation_cokernel_at(&g, &shifted).unwrap(), "type {t}");
        }
    }
}

#[test]
fn products_multiply() {
    let pairs = [(SimpleType::A(3), SimpleType::C(3)), (SimpleType::D(4), SimpleType::E6), (SimpleType::B(2), SimpleType::A(2))];
    for (s, t) in pairs {
        let g = ReductiveGroupData::sc_derived_extension(&[s, t]).unwrap();
        let gs = ReductiveGroupData::sc_derived_extension(&[s]).unwrap();
        let gt = ReductiveGroupData::sc_derived_extension(&[t]).unwrap();
        for a in classes(s) {
            for b in classes(t) {
                let mut v = adjoint_vector(s, &a);
                v.extend(adjoint_vector(t, &b));
                let c = IntMatrix::block_diagonal(&[s.cartan_matrix(), t.cartan_matrix()]);
                let q = Quotient::new(&Lattice::full(c.rows()), &Lattice::from_generators(&c)).unwrap();
                let delta = q.class_of(&v).unwrap();
                let got = evaluation_cokernel_at(&g, &lift(&g, &delta)).unwrap();
                let want = evaluation_cokernel_at(&gs, &lift(&gs, &a)).unwrap().direct_sum(&evaluation_cokernel_at(&gt, &lift(&gt, &b)).unwrap());
                assert_eq!(got, want, "{s} x {t} at {delta:?}");
            }
        }
    }
}
