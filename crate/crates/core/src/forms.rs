//! Weyl-invariant symmetric bilinear forms and the Neron-Severi groups built from them.
//!
//! A symmetric form on a lattice of rank `m` is stored by its Gram matrix. Lattices of forms
//! live in `Z^{m(m+1)/2}` through the coordinates `(b_00, b_01, ..., b_0m, b_11, ...)`, the
//! upper triangle of the Gram matrix read row by row.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{common_denominator, integer_kernel, rational_solve, Congruence, FGAbelianGroup, IntMatrix, Lattice, Quotient};
use crate::root_datum::{ReductiveGroupData, SimpleType};

/// A symmetric bilinear form given by its Gram matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct BilinearForm {
    pub gram: IntMatrix,
}

impl BilinearForm {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::DimensionMismatch("Gram matrix is not square and symmetric".into()));
        }
        Ok(BilinearForm { gram })
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn eval(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let gy = self.gram.mul_vec(y).expect("vector length matches form");
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    /// `b(x, -)` as a functional.
    pub fn partial(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.gram.mul_vec(x).expect("vector length matches form")
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| (&self.gram[(i, i)] % BigInt::from(2)).is_zero())
    }

    pub fn to_coords(&self) -> Vec<BigInt> {
        let n = self.rank();
        sym_pairs(n).into_iter().map(|(p, q)| self.gram[(p, q)].clone()).collect()
    }

    pub fn from_coords(n: usize, coords: &[BigInt]) -> Self {
        let mut gram = IntMatrix::zeros(n, n);
        for ((p, q), v) in sym_pairs(n).into_iter().zip(coords) {
            gram[(p, q)] = v.clone();
            gram[(q, p)] = v.clone();
        }
        BilinearForm { gram }
    }

    /// Pullback along the columns of `basis`: the Gram matrix `B^T G B`.
    pub fn restrict(&self, basis: &IntMatrix) -> BilinearForm {
        let g = basis.transpose().mul(&self.gram).and_then(|m| m.mul(basis)).expect("shapes match");
        BilinearForm { gram: g }
    }
}

/// Index pairs `(p, q)` with `p <= q`, in coordinate order.
pub fn sym_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|p| (p..n).map(move |q| (p, q))).collect()
}

/// Position of the unordered pair `{p, q}` among the symmetric coordinates.
pub fn sym_index(n: usize, p: usize, q: usize) -> usize {
    let (p, q) = if p <= q { (p, q) } else { (q, p) };
    p * n - p * p.saturating_sub(1) / 2 + (q - p)
}

/// The functional on symmetric coordinates computing `b(x, y)`.
pub fn pairing_functional(x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
    let n = x.len();
    sym_pairs(n)
        .into_iter()
        .map(|(p, q)| if p == q { &x[p] * &y[p] } else { &x[p] * &y[q] + &x[q] * &y[p] })
        .collect()
}

/// The matrix on symmetric coordinates computing the functional `b(d, -)`.
pub fn partial_matrix(d: &[BigInt]) -> IntMatrix {
    let n = d.len();
    let pairs = sym_pairs(n);
    let mut m = IntMatrix::zeros(n, pairs.len());
    for (k, (p, q)) in pairs.into_iter().enumerate() {
        m[(p, k)] += &d[q];
        if p != q {
            m[(q, k)] += &d[p];
        }
    }
    m
}

/// A lattice of symmetric forms on a lattice with the given basis.
///
/// `domain` holds the basis of the underlying lattice as columns, in the coordinates of the
/// cocharacter lattice the forms came from. Gram matrices are taken with respect to that basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormLattice {
    pub domain: IntMatrix,
    pub coords: Lattice,
}

impl FormLattice {
    pub fn domain_rank(&self) -> usize {
        self.domain.cols()
    }

    pub fn rank(&self) -> usize {
        self.coords.rank()
    }

    pub fn basis(&self) -> Vec<BilinearForm> {
        self.coords.basis_vectors().iter().map(|v| BilinearForm::from_coords(self.domain_rank(), v)).collect()
    }

    pub fn contains(&self, b: &BilinearForm) -> bool {
        b.rank() == self.domain_rank() && self.coords.contains(&b.to_coords())
    }

    /// The form with the given coordinates in the basis of this lattice.
    pub fn form(&self, coefficients: &[BigInt]) -> BilinearForm {
        BilinearForm::from_coords(self.domain_rank(), &self.coords.vector(coefficients))
    }

    pub fn group(&self) -> FGAbelianGroup {
        FGAbelianGroup::free(self.rank())
    }
}

impl Serialize for FormLattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FormLattice", 3)?;
        st.serialize_field("domain", &self.domain.transpose())?;
        st.serialize_field("rank", &self.rank())?;
        st.serialize_field("basis", &self.basis())?;
        st.end()
    }
}

/// Invariant symmetric forms on the Weyl-stable sublattice with basis `basis` (columns in
/// cocharacter coordinates). Invariance is imposed for the simple reflections only.
pub fn invariant_forms_on(g: &ReductiveGroupData, basis: &IntMatrix) -> Result<FormLattice> {
    let m = basis.cols();
    let sub = Lattice::from_generators(basis);
    if sub.rank() != m {
        return Err(Error::DimensionMismatch("basis vectors are dependent".into()));
    }
    let pairs = sym_pairs(m);
    let npairs = pairs.len();
    let index = |a: usize, b: usize| pairs.iter().position(|&(p, q)| (p, q) == (a.min(b), a.max(b))).unwrap_or_else(|| unreachable!());
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..g.ss_rank() {
        let s = g.reflection(i);
        let images = s.mul(basis)?;
        // Matrix of s_i in the given basis.
        let mut sm = IntMatrix::zeros(m, m);
        for k in 0..m {
            let col = images.column(k);
            let c = basis_coordinates(basis, &col).ok_or_else(|| Error::InvalidDatum("sublattice is not stable under the Weyl group".into()))?;
            for (a, v) in c.into_iter().enumerate() {
                sm[(a, k)] = v;
            }
        }
        for &(p, q) in &pairs {
            let mut row = vec![BigInt::zero(); npairs];
            for a in 0..m {
                if sm[(a, p)].is_zero() {
                    continue;
                }
                for b in 0..m {
                    if sm[(b, q)].is_zero() {
                        continue;
                    }
                    row[index(a, b)] += &sm[(a, p)] * &sm[(b, q)];
                }
            }
            row[index(p, q)] -= BigInt::one();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let coords = if rows.is_empty() {
        Lattice::full(npairs)
    } else {
        let mat = IntMatrix::from_rows(rows, npairs)?;
        Lattice::from_generators(&integer_kernel(&mat))
    };
    Ok(FormLattice { domain: basis.clone(), coords })
}

/// Coordinates of `v` with respect to the independent columns of `basis`.
fn basis_coordinates(basis: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let rhs = IntMatrix::from_columns(v.len(), &[v.to_vec()]).ok()?;
    let sol = rational_solve(basis, &rhs)?;
    let x = &sol[0];
    let back: Vec<BigRational> = (0..basis.rows())
        .map(|i| (0..basis.cols()).map(|k| BigRational::from_integer(basis[(i, k)].clone()) * &x[k]).sum())
        .collect();
    if back.iter().zip(v).any(|(a, b)| *a != BigRational::from_integer(b.clone())) {
        return None;
    }
    x.iter().map(|q| if q.is_integer() { Some(q.to_integer()) } else { None }).collect()
}

fn even_conditions(m: usize) -> Vec<Congruence> {
    let pairs = sym_pairs(m);
    (0..m)
        .map(|i| {
            let f = pairs.iter().map(|&(p, q)| if p == i && q == i { BigInt::one() } else { BigInt::zero() }).collect();
            Congruence::new(f, BigInt::from(2))
        })
        .collect()
}

/// `(Bil^s Lambda(T_G))^W`.
pub fn invariant_sym_forms(g: &ReductiveGroupData) -> Result<FormLattice> {
    invariant_forms_on(g, &IntMatrix::identity(g.cochar_rank()))
}

/// Even invariant forms on `Lambda(T_G)`, i.e. `(Sym^2 Lambda*(T_G))^W`.
pub fn even_invariant_forms(g: &ReductiveGroupData) -> Result<FormLattice> {
    let inv = invariant_sym_forms(g)?;
    let coords = inv.coords.restrict(&even_conditions(g.cochar_rank()))?;
    Ok(FormLattice { domain: inv.domain, coords })
}

/// The basic inner product of a simple type: the invariant form on the coroot lattice with
/// short coroots of square length 2, as a Gram matrix on the simple coroots. It is computed
/// from the Cartan data and cross-checked against the reflection solver.
pub fn basic_inner_product(t: SimpleType) -> Result<BilinearForm> {
    let t = t.validated()?;
    let from_cartan = BilinearForm::new(t.basic_gram())?;
    let sc = ReductiveGroupData::simply_connected(&[t])?;
    let solved = even_invariant_forms(&sc)?;
    let gens = solved.basis();
    if gens.len() != 1 || (gens[0] != from_cartan && gens[0].gram.scale(&BigInt::from(-1)) != from_cartan.gram) {
        return Err(Error::InvalidDatum(format!("basic inner product of {t} does not match the reflection solver")));
    }
    Ok(from_cartan)
}

/// Even invariant forms on the simply connected lattice `Lambda(T_sc)`, written on the simple
/// coroots: the lattice spanned by the basic inner products of the simple factors.
pub fn sc_even_forms(g: &ReductiveGroupData) -> Result<FormLattice> {
    let inv = invariant_forms_on(g, g.coroots())?;
    let coords = inv.coords.restrict(&even_conditions(g.ss_rank()))?;
    Ok(FormLattice { domain: inv.domain, coords })
}

/// Coordinates of the semisimple parts of the standard basis of `Lambda(T_G)` in the basis of
/// `Lambda(T_D(G))`: the rational `r x n` matrix `(R^T B_D)^{-1} R^T`.
pub(crate) fn ss_in_derived_coords(g: &ReductiveGroupData) -> Result<Vec<Vec<BigRational>>> {
    let cross = g.cross();
    let bd = cross.derived.basis();
    let a = cross.to_adjoint.mul(bd)?;
    let sol = rational_solve(&a, &cross.to_adjoint).ok_or_else(|| Error::InvalidDatum("derived lattice is degenerate".into()))?;
    Ok(sol)
}

/// Coordinates of the semisimple part of `d` in the basis of `Lambda(T_D(G))`.
pub(crate) fn ss_part_in_derived(g: &ReductiveGroupData, d: &[BigInt]) -> Result<Vec<BigRational>> {
    let cols = ss_in_derived_coords(g)?;
    let r = g.ss_rank();
    Ok((0..r).map(|k| cols.iter().zip(d).map(|(c, x)| &c[k] * BigRational::from_integer(x.clone())).sum()).collect())
}

/// `b^Q(d^ss, -)` on the basis of `Lambda(T_D(G))` for a form `b` on that basis.
pub fn derived_evaluation(g: &ReductiveGroupData, b: &BilinearForm, d: &[BigInt]) -> Result<Vec<BigRational>> {
    let u = ss_part_in_derived(g, d)?;
    let r = b.rank();
    Ok((0..r).map(|k| (0..r).map(|a| &u[a] * BigRational::from_integer(b.gram[(a, k)].clone())).sum()).collect())
}

/// For each basis form of [`sc_even_forms`], the values `b^Q(d^ss, y)` on the basis vectors
/// `y` of `Lambda(T_D(G))`, as the columns of `numerators / denominator`.
pub(crate) fn sc_evaluation(g: &ReductiveGroupData, d: &[BigInt]) -> Result<(FormLattice, IntMatrix, BigInt)> {
    check_len(g, d)?;
    let q = sc_even_forms(g)?;
    let bd = g.cross().derived.basis();
    // Coordinates of the derived basis in the basis of simple coroots.
    let z = rational_solve(g.coroots(), bd).ok_or_else(|| Error::InvalidDatum("coroots do not span the derived lattice".into()))?;
    let r = bd.cols();
    let mut values: Vec<Vec<BigRational>> = Vec::with_capacity(q.rank());
    for b in q.basis() {
        let v = sc_partial(g, &b, d)?;
        values.push(z.iter().map(|zk| zk.iter().zip(&v).map(|(a, x)| a * BigRational::from_integer(x.clone())).sum()).collect());
    }
    let den = common_denominator(values.iter().flatten());
    let mut num = IntMatrix::zeros(r, q.rank());
    for (t, col) in values.iter().enumerate() {
        for (k, x) in col.iter().enumerate() {
            num[(k, t)] = (x * BigRational::from_integer(den.clone())).to_integer();
        }
    }
    Ok((q, num, den))
}

/// Even invariant forms `b` on `Lambda(T_sc)` with `b^Q(d^ss, -)` integral on `Lambda(T_D(G))`.
pub fn integral_sc_forms(g: &ReductiveGroupData, d: &[BigInt]) -> Result<FormLattice> {
    let (q, num, den) = sc_evaluation(g, d)?;
    let conds: Vec<Congruence> = num.row_vectors().into_iter().map(|row| Congruence::new(row, den.clone())).collect();
    let coords = q.coords.restrict_coords(&conds)?;
    Ok(FormLattice { domain: q.domain, coords })
}

/// Even invariant forms on `Lambda(T_D(G))` whose rational extension is integral on
/// `Lambda(T_D(G)) x Lambda(T_G^ss)`. Its rank is the number of simple factors.
pub fn conditional_form_lattice(g: &ReductiveGroupData) -> Result<FormLattice> {
    let bd = g.cross().derived.basis().clone();
    let r = bd.cols();
    let inv = invariant_forms_on(g, &bd)?;
    let mut conds = even_conditions(r);
    let z = ss_in_derived_coords(g)?;
    let den = common_denominator(z.iter().flatten());
    if den > BigInt::one() {
        let pairs = sym_pairs(r);
        for col in &z {
            let zi: Vec<BigInt> = col.iter().map(|q| (q * BigRational::from_integer(den.clone())).to_integer()).collect();
            for p in 0..r {
                // (M z)_p = sum_a M_pa z_a
                let mut f = vec![BigInt::zero(); pairs.len()];
                for (a, za) in zi.iter().enumerate() {
                    let k = pairs.iter().position(|&x| x == (p.min(a), p.max(a))).unwrap_or_else(|| unreachable!());
                    f[k] += za;
                }
                conds.push(Congruence::new(f, den.clone()));
            }
        }
    }
    Ok(FormLattice { domain: bd, coords: inv.coords.restrict(&conds)? })
}

/// Invariant forms on `Lambda(T_G)` that are even on `Lambda(T_D(G))`.
pub fn d_even_forms(g: &ReductiveGroupData) -> Result<FormLattice> {
    let inv = invariant_sym_forms(g)?;
    let conds: Vec<Congruence> = g.cross().derived.basis_vectors().iter().map(|x| Congruence::new(pairing_functional(x, x), BigInt::from(2))).collect();
    Ok(FormLattice { domain: inv.domain, coords: inv.coords.restrict(&conds)? })
}

/// An element `([chi], b)` of a Neron-Severi group.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct NsElement {
    /// A representative character in `Lambda*(T_G)`.
    #[serde(with = "crate::exact::json_int_vec")]
    pub character: Vec<BigInt>,
    /// Coordinates of `[chi]` in `Lambda*(Z(G))`.
    #[serde(with = "crate::exact::json_int_vec")]
    pub center_class: Vec<BigInt>,
    pub form: BilinearForm,
}

/// A Neron-Severi group presented as a quotient `pairs / relations` of lattices in
/// `Z^n + Z^{N}` (a character and the symmetric coordinates of a form).
#[derive(Clone, Debug)]
pub struct NsGroup {
    pub presentation: FGAbelianGroup,
    pub generators: Vec<NsElement>,
    pub pairs: Lattice,
    pub relations: Lattice,
    /// Rank of the lattice the forms live on.
    pub form_rank: usize,
}

impl Serialize for NsGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("NsGroup", 2)?;
        st.serialize_field("presentation", &self.presentation)?;
        st.serialize_field("generators", &self.generators)?;
        st.end()
    }
}

impl NsGroup {
    fn build(g: &ReductiveGroupData, pairs: Lattice, relations: Lattice, form_rank: usize) -> Result<Self> {
        let n = g.cochar_rank();
        let q = Quotient::new(&pairs, &relations)?;
        let generators = q
            .generator_lifts()
            .into_iter()
            .map(|v| {
                let character = v[..n].to_vec();
                let center_class = g.cross().center_characters.class_of(&character)?;
                Ok(NsElement { center_class, form: BilinearForm::from_coords(form_rank, &v[n..]), character })
            })
            .collect::<Result<_>>()?;
        Ok(NsGroup { presentation: q.group().clone(), generators, pairs, relations, form_rank })
    }

    /// The lattice of pairs `(chi, b)` modulo nothing, enlarged by the relations; two
    /// presentations describe the same subgroup exactly when these agree.
    pub fn saturated_pairs(&self) -> Result<Lattice> {
        self.pairs.sum(&self.relations)
    }
}

fn block_lattice(a: &Lattice, b: &Lattice) -> Lattice {
    let basis = IntMatrix::block_diagonal(&[a.basis().clone(), b.basis().clone()]);
    Lattice::from_generators(&basis)
}

fn roots_relations(g: &ReductiveGroupData, extra: usize) -> Result<Lattice> {
    let roots = g.roots().vcat(&IntMatrix::zeros(extra, g.ss_rank()))?;
    Ok(Lattice::from_generators(&roots))
}

/// The restricted root lattice `Lambda*(T_G^ad)|_{Lambda(T_D(G))}` in derived-dual coordinates.
pub(crate) fn restricted_roots(g: &ReductiveGroupData) -> Result<Lattice> {
    Ok(Lattice::from_generators(&g.cross().derived.basis().transpose().mul(g.roots())?))
}

/// `NS(Bun_G^d)`: pairs `([chi], b)` with `b` invariant and even on `Lambda(T_D(G))` such that
/// `chi` and `b(d, -)` agree on `Lambda(T_D(G))` modulo the roots.
pub fn ns_bun(g: &ReductiveGroupData, d: &[BigInt]) -> Result<NsGroup> {
    let n = g.cochar_rank();
    check_len(g, d)?;
    let de = d_even_forms(g)?;
    let npairs = de.coords.ambient_rank();
    let bdt = g.cross().derived.basis().transpose();
    let phi = bdt.hcat(&bdt.mul(&partial_matrix(d))?.scale(&BigInt::from(-1)))?;
    let domain = block_lattice(&Lattice::full(n), &de.coords);
    let pairs = restricted_roots(g)?.preimage_in(&phi, &domain)?;
    NsGroup::build(g, pairs, roots_relations(g, npairs)?, n)
}

/// `NS(Bun_G^d)^rig`: forms `b` as in [`ns_bun`] with `b(d, -)` restricted to `Lambda(T_D(G))`
/// lying in the restricted root lattice.
pub fn ns_rigidified(g: &ReductiveGroupData, d: &[BigInt]) -> Result<FormLattice> {
    check_len(g, d)?;
    let de = d_even_forms(g)?;
    let bdt = g.cross().derived.basis().transpose();
    let phi = bdt.mul(&partial_matrix(d))?;
    let coords = restricted_roots(g)?.preimage_in(&phi, &de.coords)?;
    Ok(FormLattice { domain: de.domain, coords })
}

/// The integer vector `(b(d^ss, alpha_j^vee))_j` for an invariant even form `b` on the coroot
/// lattice, using `b(x, alpha_j^vee) = b(alpha_j^vee, alpha_j^vee)/2 * <alpha_j, x>`.
pub(crate) fn sc_partial(g: &ReductiveGroupData, b: &BilinearForm, d: &[BigInt]) -> Result<Vec<BigInt>> {
    let ss = g.cross().ss_part(d)?;
    Ok((0..g.ss_rank()).map(|j| (&b.gram[(j, j)] / BigInt::from(2)) * &ss[j]).collect())
}

/// The genus zero Neron-Severi group: pairs `(l, b)` with `l` in `Lambda*(Z(G))` and `b` an
/// even invariant form on `Lambda(T_sc)` such that `l + b(d^ss, -)` is a character of `T_G`.
///
/// The sum is read as the unique character `psi` of `T_G` in the class `l` that restricts to
/// `b(d^ss, -)` on the coroot lattice; pairs are stored as `(psi, b)`.
pub fn ns_bun_p1(g: &ReductiveGroupData, d: &[BigInt]) -> Result<NsGroup> {
    let n = g.cochar_rank();
    check_len(g, d)?;
    let q = sc_even_forms(g)?;
    let k = q.rank();
    let r = g.ss_rank();
    // Coordinates (psi, c): coroots^T psi - sum_k c_k v_k = 0.
    let mut phi = IntMatrix::zeros(r, n + k);
    let cvt = g.coroots().transpose();
    for j in 0..r {
        for a in 0..n {
            phi[(j, a)] = cvt[(j, a)].clone();
        }
    }
    for (t, b) in q.basis().iter().enumerate() {
        let v = sc_partial(g, b, d)?;
        for j in 0..r {
            phi[(j, n + t)] = -&v[j];
        }
    }
    let embed = IntMatrix::block_diagonal(&[IntMatrix::identity(n), q.coords.basis().clone()]);
    let pairs = Lattice::from_generators(&embed.mul(&integer_kernel(&phi))?);
    NsGroup::build(g, pairs, Lattice::zero(n + q.coords.ambient_rank()), r)
}

fn check_len(g: &ReductiveGroupData, d: &[BigInt]) -> Result<()> {
    if d.len() != g.cochar_rank() {
        return Err(Error::DimensionMismatch(format!("cocharacter of length {} for a torus of rank {}", d.len(), g.cochar_rank())));
    }
    Ok(())
}
