//! Picard groups of `Bun_G^d(C/S)`: tautological classes, tori, and reductive groups.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{dot, json_int, json_int_vec, rational_solve, to_integral, Congruence, FGAbelianGroup, IntMatrix, Lattice, Quotient};
use crate::family::{hypothesis_check, validate_family, CurveFamily, HypothesisCheck, Theorem};
use crate::forms::{conditional_form_lattice, even_invariant_forms, integral_sc_forms, ns_bun, ns_bun_p1, sym_pairs, BilinearForm, FormLattice};
use crate::root_datum::{generic_lift, Pi1Element, ReductiveGroupData};

/// The determinant class `d(L_chi(M))` with multiplicity.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DetTerm {
    #[serde(with = "json_int_vec")]
    pub character: Vec<BigInt>,
    #[serde(with = "json_int")]
    pub deg_m: BigInt,
    #[serde(with = "json_int")]
    pub multiplicity: BigInt,
}

/// The pairing class `<L_chi(M), L_mu(N)>` with multiplicity.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PairTerm {
    #[serde(with = "json_int_vec")]
    pub chi: Vec<BigInt>,
    #[serde(with = "json_int_vec")]
    pub mu: Vec<BigInt>,
    #[serde(with = "json_int")]
    pub deg_m: BigInt,
    #[serde(with = "json_int")]
    pub deg_n: BigInt,
    #[serde(with = "json_int")]
    pub multiplicity: BigInt,
}

/// A formal combination of tautological line bundles on `Bun_T^d(C/S)`. Line bundles on `C`
/// enter only through their relative degrees.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct TautClass {
    pub det_terms: Vec<DetTerm>,
    pub pair_terms: Vec<PairTerm>,
}

impl TautClass {
    pub fn det(character: Vec<BigInt>, deg_m: BigInt, multiplicity: BigInt) -> Self {
        TautClass { det_terms: vec![DetTerm { character, deg_m, multiplicity }], pair_terms: vec![] }
    }

    pub fn pair(chi: Vec<BigInt>, mu: Vec<BigInt>, deg_m: BigInt, deg_n: BigInt, multiplicity: BigInt) -> Self {
        TautClass { det_terms: vec![], pair_terms: vec![PairTerm { chi, mu, deg_m, deg_n, multiplicity }] }
    }

    pub fn plus(mut self, other: TautClass) -> Self {
        self.det_terms.extend(other.det_terms);
        self.pair_terms.extend(other.pair_terms);
        self
    }

    fn check_rank(&self, rank: usize) -> Result<()> {
        let ok = self.det_terms.iter().all(|t| t.character.len() == rank) && self.pair_terms.iter().all(|t| t.chi.len() == rank && t.mu.len() == rank);
        if ok {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!("tautological class has characters of the wrong length for rank {rank}")))
        }
    }
}

fn axpy(acc: &mut [BigInt], a: &BigInt, x: &[BigInt]) {
    for (s, v) in acc.iter_mut().zip(x) {
        *s += a * v;
    }
}

/// The weight of a tautological class: the character by which the generic automorphisms act.
pub fn taut_weight(d: &[BigInt], genus: u64, c: &TautClass) -> Result<Vec<BigInt>> {
    let n = d.len();
    c.check_rank(n)?;
    let one_minus_g = BigInt::one() - BigInt::from(genus);
    let mut w = vec![BigInt::zero(); n];
    for t in &c.det_terms {
        let k = &t.multiplicity * (dot(&t.character, d) + &t.deg_m + &one_minus_g);
        axpy(&mut w, &k, &t.character);
    }
    for t in &c.pair_terms {
        let a = &t.multiplicity * (dot(&t.mu, d) + &t.deg_n);
        let b = &t.multiplicity * (dot(&t.chi, d) + &t.deg_m);
        axpy(&mut w, &a, &t.chi);
        axpy(&mut w, &b, &t.mu);
    }
    Ok(w)
}

fn outer_add(gram: &mut IntMatrix, k: &BigInt, x: &[BigInt], y: &[BigInt]) {
    for i in 0..x.len() {
        for j in 0..y.len() {
            gram[(i, j)] += k * &x[i] * &y[j];
        }
    }
}

/// The symmetric form attached to a tautological class (defined in positive genus).
pub fn taut_gamma(rank: usize, genus: u64, c: &TautClass) -> Result<BilinearForm> {
    if genus == 0 {
        return Err(Error::GenusZero);
    }
    c.check_rank(rank)?;
    let mut gram = IntMatrix::zeros(rank, rank);
    for t in &c.det_terms {
        outer_add(&mut gram, &t.multiplicity, &t.character, &t.character);
    }
    for t in &c.pair_terms {
        outer_add(&mut gram, &t.multiplicity, &t.chi, &t.mu);
        outer_add(&mut gram, &t.multiplicity, &t.mu, &t.chi);
    }
    BilinearForm::new(gram)
}

/// The parity map `x -> sum mult * chi(x)^2 mod 2` on the standard basis; pair terms contribute
/// `2 chi(x) mu(x) = 0`.
pub fn taut_rho(rank: usize, genus: u64, c: &TautClass) -> Result<Vec<BigInt>> {
    if genus == 0 {
        return Err(Error::GenusZero);
    }
    c.check_rank(rank)?;
    let two = BigInt::from(2);
    Ok((0..rank)
        .map(|i| {
            let mut s = BigInt::zero();
            for t in &c.det_terms {
                s += &t.multiplicity * &t.character[i] * &t.character[i];
            }
            for t in &c.pair_terms {
                s += &t.multiplicity * &two * &t.chi[i] * &t.mu[i];
            }
            ((s % &two) + &two) % &two
        })
        .collect())
}

/// `(w, gamma, rho)`; the last two are absent in genus 0.
pub type TautInvariants = (Vec<BigInt>, Option<BilinearForm>, Option<Vec<BigInt>>);

/// The three invariants `(w, gamma, rho)` of a class; in genus 0 only the weight is defined.
pub fn taut_invariants(d: &[BigInt], genus: u64, c: &TautClass) -> Result<TautInvariants> {
    let w = taut_weight(d, genus, c)?;
    if genus == 0 {
        return Ok((w, None, None));
    }
    Ok((w, Some(taut_gamma(d.len(), genus, c)?), Some(taut_rho(d.len(), genus, c)?)))
}

/// The two sides of the pairing relation: `<L_chi(M), L_mu(N)>` and
/// `d(L_{chi+mu}(M+N)) - d(L_chi(M)) - d(L_mu(N)) + d(O)`.
pub fn relation_3_4_sides(chi: &[BigInt], mu: &[BigInt], deg_m: &BigInt, deg_n: &BigInt) -> (TautClass, TautClass) {
    let lhs = TautClass::pair(chi.to_vec(), mu.to_vec(), deg_m.clone(), deg_n.clone(), BigInt::one());
    let sum: Vec<BigInt> = chi.iter().zip(mu).map(|(a, b)| a + b).collect();
    let one = BigInt::one();
    let rhs = TautClass::det(sum, deg_m + deg_n, one.clone())
        .plus(TautClass::det(chi.to_vec(), deg_m.clone(), -one.clone()))
        .plus(TautClass::det(mu.to_vec(), deg_n.clone(), -one.clone()))
        .plus(TautClass::det(vec![BigInt::zero(); chi.len()], BigInt::zero(), one));
    (lhs, rhs)
}

/// Whether two classes have the same `(w, gamma, rho)`.
pub fn same_invariants(d: &[BigInt], genus: u64, a: &TautClass, b: &TautClass) -> bool {
    match (taut_invariants(d, genus, a), taut_invariants(d, genus, b)) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    }
}

/// Checks the pairing relation on the computable invariants.
pub fn relation_3_4_check(chi: &[BigInt], mu: &[BigInt], deg_m: &BigInt, deg_n: &BigInt, d: &[BigInt], genus: u64) -> bool {
    if chi.len() != d.len() || mu.len() != d.len() {
        return false;
    }
    let (lhs, rhs) = relation_3_4_sides(chi, mu, deg_m, deg_n);
    same_invariants(d, genus, &lhs, &rhs)
}

/// A formal summand `Lambda* (x) RPic(C/S)` that cannot be computed from numerical data.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct KernelSummand {
    pub symbol: String,
    /// Rank of the character lattice tensored with the relative Picard group.
    pub character_rank: usize,
    pub torsion_free: Option<bool>,
}

/// An image lattice with its ambient lattice and the quotient.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ImageSection {
    pub name: String,
    pub description: String,
    pub ambient: Lattice,
    pub lattice: Lattice,
    /// Elements of the ambient lattice that are zero in the group it presents.
    pub relations: Option<Lattice>,
    pub cokernel: FGAbelianGroup,
}

impl ImageSection {
    pub(crate) fn new(name: &str, description: &str, ambient: Lattice, lattice: Lattice, relations: Option<Lattice>) -> Result<Self> {
        let cokernel = Quotient::new(&ambient, &lattice)?.group().clone();
        Ok(ImageSection { name: name.into(), description: description.into(), ambient, lattice, relations, cokernel })
    }
}

/// One row `0 -> sub -> RPic^taut -> quotient (-> 0)` of the torus diagram.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ExtensionRow {
    pub sub: String,
    pub map: String,
    pub quotient: String,
    pub quotient_group: FGAbelianGroup,
    pub surjective: bool,
}

/// Result of a Picard group computation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PicardReport {
    pub theorem: String,
    pub kernel_summand: Option<KernelSummand>,
    pub images: Vec<ImageSection>,
    /// The discrete quotient computed by the theorem: `coker(ab_#^*)` for reductive groups in
    /// positive genus, `ambient / image` otherwise.
    pub cokernel: FGAbelianGroup,
    /// The group itself when it is determined by the numerical data.
    pub group: Option<FGAbelianGroup>,
    /// Generators of the form part.
    pub forms: Option<FormLattice>,
    pub splitting_known: bool,
    pub taut_complete: Option<bool>,
    pub extensions: Vec<ExtensionRow>,
    pub hypotheses: Vec<HypothesisCheck>,
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
}

impl PicardReport {
    pub(crate) fn new(theorem: &str, cokernel: FGAbelianGroup) -> Self {
        PicardReport {
            theorem: theorem.into(),
            kernel_summand: None,
            images: vec![],
            cokernel,
            group: None,
            forms: None,
            splitting_known: false,
            taut_complete: None,
            extensions: vec![],
            hypotheses: vec![],
            notes: vec![],
            warnings: vec![],
        }
    }

    pub fn image(&self, name: &str) -> Option<&ImageSection> {
        self.images.iter().find(|s| s.name == name)
    }
}

pub(crate) fn require_valid(f: &CurveFamily) -> Result<()> {
    let v = validate_family(f);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("inconsistent curve family: {}", v.iter().map(|x| x.message.clone()).collect::<Vec<_>>().join("; "))))
    }
}

fn require_torus(t: &ReductiveGroupData) -> Result<()> {
    if t.is_torus() {
        Ok(())
    } else {
        Err(Error::InvalidDatum(format!("{} is not a torus", t.name())))
    }
}

fn check_lift(g: &ReductiveGroupData, d: &[BigInt]) -> Result<()> {
    if d.len() != g.cochar_rank() {
        return Err(Error::DimensionMismatch(format!("cocharacter of length {} for a torus of rank {}", d.len(), g.cochar_rank())));
    }
    Ok(())
}

const DELTA_ZERO_WARNING: &str = "delta(C/S) = 0: the family is not locally projective and divisibility conditions are exact equalities";

/// Points at which a quadratic function on `Z^n` is tested: `e_i`, `2 e_i` and `e_i + e_j`.
pub(crate) fn congruence_points(n: usize) -> Vec<Vec<BigInt>> {
    let unit = |i: usize, k: i64| {
        let mut v = vec![BigInt::zero(); n];
        v[i] = BigInt::from(k);
        v
    };
    let mut pts = Vec::new();
    for i in 0..n {
        pts.push(unit(i, 1));
        pts.push(unit(i, 2));
        for j in i + 1..n {
            let mut v = unit(i, 1);
            v[j] = BigInt::one();
            pts.push(v);
        }
    }
    pts
}

/// The representative `chi + R c` of `[chi]` that agrees with `b(d, -)` on `Lambda(T_D(G))`,
/// for each pair in `elems`.
pub(crate) fn canonical_characters(g: &ReductiveGroupData, d: &[BigInt], elems: &[(Vec<BigInt>, BilinearForm)]) -> Result<Vec<Vec<BigInt>>> {
    if g.is_torus() || elems.is_empty() {
        return Ok(elems.iter().map(|(c, _)| c.clone()).collect());
    }
    let bdt = g.cross().derived.basis().transpose();
    let a = bdt.mul(g.roots())?;
    let rhs: Vec<Vec<BigInt>> = elems
        .iter()
        .map(|(chi, b)| {
            let diff: Vec<BigInt> = b.partial(d).iter().zip(chi).map(|(x, y)| x - y).collect();
            bdt.mul_vec(&diff)
        })
        .collect::<Result<_>>()?;
    let sols = rational_solve(&a, &IntMatrix::from_columns(a.rows(), &rhs)?).ok_or_else(|| Error::InvalidDatum("roots are degenerate on the derived lattice".into()))?;
    elems
        .iter()
        .zip(sols)
        .map(|((chi, _), c)| {
            let c = to_integral(&c).ok_or(Error::NotInLattice)?;
            let rc = g.roots().mul_vec(&c)?;
            Ok(chi.iter().zip(rc).map(|(x, y)| x + y).collect())
        })
        .collect()
}

/// `chi_0(x) - b(d, x) + (g - 1) b(x, x)`.
fn quadratic_value(chi0: &[BigInt], b: &BilinearForm, d: &[BigInt], gm1: &BigInt, x: &[BigInt]) -> BigInt {
    dot(chi0, x) - b.eval(d, x) + gm1 * b.eval(x, x)
}

/// Sublattice of `l` (vectors `(chi, b)` in `Z^n + Sym` when `with_character`, else forms only)
/// on which `chi_0(x) - b(d, x) + (g - 1) b(x, x)` is divisible by `delta` for all `x`.
pub(crate) fn image_condition(g: &ReductiveGroupData, l: &Lattice, with_character: bool, d: &[BigInt], genus: u64, delta: u64) -> Result<Lattice> {
    let n = g.cochar_rank();
    let offset = if with_character { n } else { 0 };
    let elems: Vec<(Vec<BigInt>, BilinearForm)> = l
        .basis_vectors()
        .into_iter()
        .map(|v| {
            let chi = if with_character { v[..n].to_vec() } else { vec![BigInt::zero(); n] };
            (chi, BilinearForm::from_coords(n, &v[offset..]))
        })
        .collect();
    let chis = canonical_characters(g, d, &elems)?;
    let gm1 = BigInt::from(genus) - BigInt::one();
    let modulus = BigInt::from(delta);
    let conds: Vec<Congruence> = congruence_points(n)
        .iter()
        .map(|x| Congruence::new(elems.iter().zip(&chis).map(|((_, b), c0)| quadratic_value(c0, b, d, &gm1, x)).collect(), modulus.clone()))
        .collect();
    l.restrict_coords(&conds)
}

/// Genus 0 tori: the weight map embeds `RPic` into `Lambda*(T)`; the image is everything for
/// Zariski-locally trivial families and `{chi : chi(d) even}` otherwise.
pub fn torus_picard_genus0(t: &ReductiveGroupData, d: &[BigInt], f: &CurveFamily) -> Result<PicardReport> {
    require_torus(t)?;
    check_lift(t, d)?;
    if f.genus != 0 {
        return Err(Error::WrongGenus(format!("expected a genus 0 family, got genus {}", f.genus)));
    }
    require_valid(f)?;
    let n = t.cochar_rank();
    let ambient = Lattice::full(n);
    let image = if f.zariski_locally_trivial { ambient.clone() } else { ambient.restrict(&[Congruence::new(d.to_vec(), BigInt::from(2))])? };
    let section = ImageSection::new("weight", "image of the weight map in the character lattice", ambient, image.clone(), None)?;
    let mut rep = PicardReport::new("Thm3.6", section.cokernel.clone());
    rep.group = Some(FGAbelianGroup::free(image.rank()));
    rep.images.push(section);
    rep.splitting_known = true;
    rep.taut_complete = Some(true);
    rep.notes.push("the weight map is injective in genus 0".into());
    Ok(rep)
}

fn sym_rank(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Positive genus tori: the image of `w + gamma` in `Lambda*(T) + Bil^s(Lambda(T))` and the
/// three presentations of the tautological Picard group.
pub fn torus_picard(t: &ReductiveGroupData, d: &[BigInt], f: &CurveFamily) -> Result<PicardReport> {
    require_torus(t)?;
    check_lift(t, d)?;
    if f.genus == 0 {
        return Err(Error::WrongGenus("expected a family of positive genus".into()));
    }
    require_valid(f)?;
    let n = t.cochar_rank();
    let ns = sym_rank(n);
    let ambient = Lattice::full(n + ns);
    let image = image_condition(t, &ambient, true, d, f.genus, f.delta)?;
    let section = ImageSection::new("w+gamma", "image of weight and form maps in characters plus symmetric forms", ambient, image, None)?;
    let mut rep = PicardReport::new("Thm3.8", section.cokernel.clone());
    rep.images.push(section);
    rep.kernel_summand = Some(KernelSummand { symbol: "Λ*(T)⊗RPic⁰(C/S)".into(), character_rank: n, torsion_free: Some(f.rpic0_torsion_free) });
    rep.extensions = vec![
        ExtensionRow { sub: "Λ*(T)⊗RPic⁰(C/S)".into(), map: "w+gamma".into(), quotient: "Λ*(T)⊕Bil^s(Λ(T))".into(), quotient_group: FGAbelianGroup::free(n + ns), surjective: false },
        ExtensionRow { sub: "Λ*(T)⊗RPic(C/S)".into(), map: "gamma".into(), quotient: "Bil^s(Λ(T))".into(), quotient_group: FGAbelianGroup::free(ns), surjective: true },
        ExtensionRow {
            sub: "Λ*(T)⊗RPic(C/S)⊕Sym²Λ*(T)".into(),
            map: "rho".into(),
            quotient: "Hom(Λ(T),Z/2)".into(),
            quotient_group: FGAbelianGroup::from_cyclic_orders(&vec![BigInt::from(2); n]),
            surjective: true,
        },
    ];
    let taut = hypothesis_check(f, t, Theorem::Thm3_9);
    rep.taut_complete = Some(taut.satisfied);
    rep.hypotheses.push(taut);
    rep.notes.push("the extension class of the middle row is not determined".into());
    if f.delta == 0 {
        rep.warnings.push(DELTA_ZERO_WARNING.into());
    }
    Ok(rep)
}

/// [`reductive_picard_at`] for the default lift of `delta`.
pub fn reductive_picard(g: &ReductiveGroupData, delta: &Pi1Element, f: &CurveFamily) -> Result<PicardReport> {
    let d = generic_lift(g, delta)?;
    reductive_picard_at(g, &d, f)
}

/// Picard group of `Bun_G^d(C/S)` for a lift `d` of `delta`.
pub fn reductive_picard_at(g: &ReductiveGroupData, d: &[BigInt], f: &CurveFamily) -> Result<PicardReport> {
    check_lift(g, d)?;
    require_valid(f)?;
    if f.genus == 0 {
        reductive_picard_genus0(g, d, f)
    } else {
        reductive_picard_positive(g, d, f)
    }
}

fn reductive_picard_positive(g: &ReductiveGroupData, d: &[BigInt], f: &CurveFamily) -> Result<PicardReport> {
    let thm = if g.is_semisimple() { Theorem::CorC } else { Theorem::ThmB };
    let check = hypothesis_check(f, g, thm);
    check.clone().into_result()?;
    let forms = conditional_form_lattice(g)?;
    let mut rep = PicardReport::new(thm.id(), forms.group());
    rep.hypotheses.push(check);
    let a = g.cochar_rank() - g.ss_rank();
    rep.kernel_summand = Some(KernelSummand { symbol: "Pic Bun_{G^ab}(C/S)".into(), character_rank: a, torsion_free: None });
    rep.splitting_known = g.derived_simply_connected();
    if g.is_semisimple() {
        let inv = even_invariant_forms(g)?;
        rep.group = Some(inv.group());
        rep.notes.push("the transgression map is an isomorphism onto the even invariant forms".into());
    }
    rep.forms = Some(forms);
    let ns_check = hypothesis_check(f, g, Theorem::Thm3_18);
    if ns_check.satisfied {
        let ns = ns_bun(g, d)?;
        let image = image_condition(g, &ns.pairs, true, d, f.genus, f.delta)?;
        rep.images.push(ImageSection::new("omega+gamma", "image in the Neron-Severi group, as pairs (character, form) modulo roots", ns.pairs.clone(), image, Some(ns.relations.clone()))?);
    } else {
        rep.notes.push("the Neron-Severi image is not computed: its hypotheses fail".into());
    }
    rep.hypotheses.push(ns_check);
    if f.delta == 0 {
        rep.warnings.push(DELTA_ZERO_WARNING.into());
    }
    Ok(rep)
}

fn reductive_picard_genus0(g: &ReductiveGroupData, d: &[BigInt], f: &CurveFamily) -> Result<PicardReport> {
    let check = hypothesis_check(f, g, Theorem::Thm3_20);
    check.clone().into_result()?;
    let ns = ns_bun_p1(g, d)?;
    let n = g.cochar_rank();
    let image = if f.zariski_locally_trivial {
        ns.pairs.clone()
    } else {
        let mut cond = d.to_vec();
        cond.extend(std::iter::repeat_n(BigInt::zero(), ns.pairs.ambient_rank() - n));
        ns.pairs.restrict(&[Congruence::new(cond, BigInt::from(2))])?
    };
    let c_section = ImageSection::new("c", "image in the genus 0 Neron-Severi group, as pairs (character, form on coroots)", ns.pairs.clone(), image.clone(), None)?;

    // Projection to the form part and comparison with the integral forms.
    let q = integral_sc_forms(g, d)?;
    let nsym = ns.pairs.ambient_rank() - n;
    let proj = IntMatrix::zeros(nsym, n).hcat(&IntMatrix::identity(nsym))?;
    let p_image = image.image(&proj)?;
    let p_ambient = ns.pairs.image(&proj)?;
    let p_section = ImageSection::new("p", "image of the projection to invariant even forms on coroots", q.coords.clone(), p_image.clone(), None)?;
    let mut rep = PicardReport::new("Thm3.20", FGAbelianGroup::free(p_image.rank()));
    if p_ambient != q.coords {
        rep.warnings.push("the form projection of the Neron-Severi group differs from the integral forms".into());
    }
    rep.group = Some(FGAbelianGroup::free(image.rank()));
    rep.images.push(c_section);
    rep.images.push(p_section);
    rep.kernel_summand = Some(KernelSummand { symbol: "Pic Bun_{G^ab}(C/S)".into(), character_rank: n - g.ss_rank(), torsion_free: Some(true) });
    rep.splitting_known = g.derived_simply_connected();
    rep.forms = Some(q);
    rep.hypotheses.push(check);
    Ok(rep)
}

/// Symmetric coordinate labels `(p, q)` of a rank `n` lattice, for display.
pub fn sym_labels(n: usize) -> Vec<String> {
    sym_pairs(n).into_iter().map(|(p, q)| format!("b{p}{q}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ivec};
    use crate::family::family_from_preset;
    use crate::root_datum::{build_group, parse_group_spec};

    fn grp(s: &str) -> ReductiveGroupData {
        build_group(&parse_group_spec(s).unwrap()).unwrap()
    }

    fn fam(genus: u64, delta: u64) -> CurveFamily {
        CurveFamily { genus, delta, has_section: delta == 1, zariski_locally_trivial: false, end_jacobian_trivial: true, rpic_surjective: true, rpic0_torsion_free: true, label: String::new() }
    }

    #[test]
    fn weight_examples() {
        let c = TautClass::det(ivec(&[1]), int(0), int(1));
        assert_eq!(taut_weight(&ivec(&[0]), 1, &c).unwrap(), ivec(&[0]));
        assert_eq!(taut_weight(&ivec(&[3]), 2, &c).unwrap(), ivec(&[2]));
        let p = TautClass::pair(ivec(&[1, 0]), ivec(&[0, 1]), int(2), int(0), int(1));
        assert_eq!(taut_weight(&ivec(&[0, 1]), 1, &p).unwrap(), ivec(&[1, 2]));
    }

    #[test]
    fn gamma_and_rho() {
        let c = TautClass::det(ivec(&[1, 0]), int(0), int(1));
        assert_eq!(taut_gamma(2, 1, &c).unwrap().gram, IntMatrix::from_i64_rows(&[vec![1, 0], vec![0, 0]]));
        assert_eq!(taut_rho(2, 1, &c).unwrap(), ivec(&[1, 0]));
        let p = TautClass::pair(ivec(&[1, 0]), ivec(&[0, 1]), int(0), int(0), int(1));
        assert_eq!(taut_gamma(2, 1, &p).unwrap().gram, IntMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]));
        let z = TautClass::det(ivec(&[1, 1]), int(0), int(-2)).plus(TautClass::pair(ivec(&[1, 1]), ivec(&[1, 1]), int(0), int(0), int(1)));
        assert!(taut_gamma(2, 2, &z).unwrap().gram.is_zero());
        assert_eq!(taut_gamma(1, 0, &c), Err(Error::GenusZero));
    }

    #[test]
    fn pairing_relation() {
        assert!(relation_3_4_check(&ivec(&[0]), &ivec(&[0]), &int(0), &int(0), &ivec(&[0]), 1));
        assert!(relation_3_4_check(&ivec(&[2, -1]), &ivec(&[1, 3]), &int(-2), &int(3), &ivec(&[1, 4]), 3));
    }

    #[test]
    fn torus_genus0_images() {
        let t1 = grp("T(1)");
        let nontrivial = family_from_preset("genus0_nontrivial", &[]).unwrap();
        let trivial = family_from_preset("genus0_trivial", &[]).unwrap();
        assert!(torus_picard_genus0(&t1, &ivec(&[0]), &nontrivial).unwrap().cokernel.is_trivial());
        assert_eq!(torus_picard_genus0(&t1, &ivec(&[1]), &nontrivial).unwrap().cokernel, FGAbelianGroup::cyclic(&int(2)));
        assert!(torus_picard_genus0(&grp("T(2)"), &ivec(&[1, 0]), &trivial).unwrap().cokernel.is_trivial());
    }

    #[test]
    fn torus_images() {
        let t1 = grp("T(1)");
        assert!(torus_picard(&t1, &ivec(&[5]), &fam(1, 1)).unwrap().cokernel.is_trivial());
        let r = torus_picard(&t1, &ivec(&[0]), &fam(2, 2)).unwrap();
        assert_eq!(r.cokernel, FGAbelianGroup::cyclic(&int(2)));
        assert!(r.images[0].lattice.contains(&ivec(&[1, 1])));
        let r = torus_picard(&t1, &ivec(&[2]), &fam(3, 4)).unwrap();
        assert_eq!(r.cokernel, FGAbelianGroup::cyclic(&int(4)));
        assert!(r.images[0].lattice.contains(&ivec(&[4, 1])));
        assert!(!r.images[0].lattice.contains(&ivec(&[2, 0])));
    }

    #[test]
    fn reductive_examples() {
        let u = family_from_preset("universal", &[2, 1]).unwrap();
        let e8 = grp("E8");
        let r = reductive_picard(&e8, &Pi1Element::zero(&e8), &u).unwrap();
        assert_eq!(r.cokernel, FGAbelianGroup::free(1));
        let gl2 = grp("GL(2)");
        let r = reductive_picard(&gl2, &Pi1Element::new(ivec(&[1])), &u).unwrap();
        assert_eq!(r.cokernel, FGAbelianGroup::free(1));
        let fixed = family_from_preset("fixed_curve", &[2]).unwrap();
        let pgl2 = grp("PGL(2)");
        assert!(matches!(reductive_picard(&pgl2, &Pi1Element::new(ivec(&[1])), &fixed), Err(Error::HypothesisNotSatisfied { .. })));
    }
}
