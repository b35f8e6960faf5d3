//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use bunpic_core::exact::{gcd, int, rational_solve, FGAbelianGroup, IntMatrix, Lattice, Quotient};
use bunpic_core::root_datum::{ReductiveGroupData, SimpleType};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// The classes of `pi_1(G^ad)` as coefficient vectors on the generator lifts `w_j`.
pub fn classes(t: SimpleType) -> Vec<Vec<BigInt>> {
    let c = t.cartan_matrix();
    let q = Quotient::new(&Lattice::full(c.rows()), &Lattice::from_generators(&c)).unwrap();
    let orders: Vec<BigInt> = q.group().torsion().to_vec();
    let mut out = vec![vec![]];
    for o in orders {
        let mut next = Vec::new();
        for v in &out {
            let mut k = BigInt::zero();
            while k < o {
                let mut w: Vec<BigInt> = v.clone();
                w.push(k.clone());
                next.push(w);
                k += 1;
            }
        }
        out = next;
    }
    out
}

/// `sum delta_j w_j` in coweight coordinates.
pub fn adjoint_vector(t: SimpleType, delta: &[BigInt]) -> Vec<BigInt> {
    let c = t.cartan_matrix();
    let q = Quotient::new(&Lattice::full(c.rows()), &Lattice::from_generators(&c)).unwrap();
    let mut v = vec![BigInt::zero(); c.rows()];
    for (dj, wj) in delta.iter().zip(q.generator_lifts()) {
        for (x, y) in v.iter_mut().zip(&wj) {
            *x += dj * y;
        }
    }
    v
}

/// Order of `sum delta_j w_j` in `Lambda_ad / Lambda_sc`, from the denominators of `C^{-1} v`.
pub fn order_in_adjoint(t: SimpleType, delta: &[BigInt]) -> BigInt {
    let c = t.cartan_matrix();
    let v = adjoint_vector(t, delta);
    let sol = rational_solve(&c.transpose(), &IntMatrix::from_columns(c.rows(), &[v]).unwrap()).unwrap();
    sol[0].iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn expected(t: SimpleType, delta: &[BigInt]) -> FGAbelianGroup {
    let zero = delta.iter().all(|x| x.is_zero());
    let two = || FGAbelianGroup::cyclic(&int(2));
    match t {
        SimpleType::A(r) => FGAbelianGroup::cyclic(&gcd(&int(r as i64 + 1), &delta[0])),
        SimpleType::B(_) => two(),
        SimpleType::C(n) => {
            if zero || n % 2 == 0 {
                two()
            } else {
                FGAbelianGroup::trivial()
            }
        }
        SimpleType::D(n) => match (zero, order_in_adjoint(t, delta)) {
            (true, _) if n % 2 == 1 => FGAbelianGroup::cyclic(&int(4)),
            (true, _) => FGAbelianGroup::from_cyclic_orders(&[int(2), int(2)]),
            (false, o) if o == int(2) => two(),
            _ => FGAbelianGroup::trivial(),
        },
        SimpleType::E6 => {
            if zero {
                FGAbelianGroup::cyclic(&int(3))
            } else {
                FGAbelianGroup::trivial()
            }
        }
        SimpleType::E7 => {
            if zero {
                two()
            } else {
                FGAbelianGroup::trivial()
            }
        }
        SimpleType::E8 | SimpleType::F4 | SimpleType::G2 => FGAbelianGroup::trivial(),
    }
}

pub fn lift(g: &ReductiveGroupData, delta: &[BigInt]) -> Vec<BigInt> {
    let r = g.ss_rank();
    let mut d = vec![BigInt::zero(); g.cochar_rank()];
    d[r..].clone_from_slice(delta);
    d
}

pub fn table() -> Vec<SimpleType> {
    let mut ts = Vec::new();
    ts.extend((1..=7).map(SimpleType::A));
    ts.extend((2..=5).map(SimpleType::B));
    ts.extend((2..=5).map(SimpleType::C));
    ts.extend((3..=6).map(SimpleType::D));
    ts.extend([SimpleType::E6, SimpleType::E7, SimpleType::E8, SimpleType::F4, SimpleType::G2]);
    ts
}


/// `Z/gcd(delta, div + 1 - g) + (Z/gcd(delta, g - 1, div))^(n - 1)`, computed directly.
pub fn torus_weight_oracle(n: usize, genus: u64, delta: u64, div: u64) -> FGAbelianGroup {
    let (dl, g, dv) = (int(delta as i64), int(genus as i64), int(div as i64));
    let mut orders = vec![gcd(&dl, &(&dv + 1 - &g))];
    let rest = gcd(&gcd(&dl, &(&g - 1)), &dv);
    orders.extend(std::iter::repeat_n(rest, n - 1));
    FGAbelianGroup::from_cyclic_orders(&orders)
}

/// Positive divisors of `n`; for `n = 0` the values `1..=6`.
pub fn divisors(n: u64) -> Vec<u64> {
    if n == 0 {
        return (1..=6).collect();
    }
    (1..=n).filter(|k| n.is_multiple_of(*k)).collect()
}

/// The grid `(genus, delta, div, dim T)` shared by the torus checks.
pub fn torus_grid() -> Vec<(u64, u64, u64, usize)> {
    let mut out = Vec::new();
    for g in 1..=5u64 {
        let mut deltas = divisors(2 * g - 2);
        if g == 1 {
            deltas = vec![0, 1, 2, 3, 4, 5, 6];
        }
        for &delta in &deltas {
            for div in 0..=6 {
                for n in 1..=3 {
                    out.push((g, delta, div, n));
                }
            }
        }
    }
    out
}

/// `div` times a primitive vector of length `n`; `shape` picks among a few directions.
pub fn cocharacter_with_divisibility(n: usize, div: u64, shape: usize) -> Vec<BigInt> {
    let dirs: [&[i64]; 3] = [&[1, 0, 0], &[1, 2, 3], &[-1, 3, 5]];
    dirs[shape % 3][..n].iter().map(|x| int(x * div as i64)).collect()
}

/// A positive genus family with the given invariants satisfying every hypothesis flag that
/// is compatible with them.
pub fn flagged_family(genus: u64, delta: u64) -> bunpic_core::family::CurveFamily {
    bunpic_core::family::CurveFamily {
        genus,
        delta,
        has_section: delta == 1,
        zariski_locally_trivial: false,
        end_jacobian_trivial: true,
        rpic_surjective: true,
        rpic0_torsion_free: true,
        label: format!("test({genus},{delta})"),
    }
}

/// The basic inner product on the coroot basis, from the Cartan matrix alone: find the
/// smallest positive integers `l_j` making `l_j C_ji` symmetric, then `B_ij = l_j C_ji`.
pub fn basic_gram_oracle(c: &IntMatrix) -> IntMatrix {
    use num_rational::BigRational;
    let r = c.rows();
    let mut l: Vec<Option<BigRational>> = vec![None; r];
    l[0] = Some(BigRational::one());
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for j in 0..r {
            if j != i && !c[(i, j)].is_zero() && l[j].is_none() {
                // l_j C_ji = l_i C_ij
                let li = l[i].clone().unwrap();
                l[j] = Some(li * BigRational::new(c[(i, j)].clone(), c[(j, i)].clone()));
                stack.push(j);
            }
        }
    }
    let l: Vec<BigRational> = l.into_iter().map(|x| x.expect("connected Dynkin diagram")).collect();
    let den = l.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = l.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let ints: Vec<BigInt> = ints.into_iter().map(|x| x / &g).collect();
    let mut b = IntMatrix::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            b[(i, j)] = &ints[j] * &c[(j, i)];
        }
    }
    b
}
