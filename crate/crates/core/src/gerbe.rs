//! The central gerbe: evaluation and weight cokernels, the rigidified Picard group and the
//! Poincare bundle criterion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{gcd, gcd_all, to_integral, FGAbelianGroup, IntMatrix, JsonInt, Lattice, Quotient};
use crate::family::{hypothesis_check, CurveFamily, Theorem};
use crate::forms::{conditional_form_lattice, derived_evaluation, ns_rigidified, restricted_roots, sc_evaluation, integral_sc_forms, FormLattice};
use crate::picard::{canonical_characters, image_condition, require_valid, ImageSection, KernelSummand, PicardReport};
use crate::root_datum::{ab_two_divisible, generic_lift, Pi1Element, ReductiveGroupData};

fn opt_int<S: Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => JsonInt(x).serialize(s),
        None => s.serialize_none(),
    }
}

/// An extension `0 -> sub -> ? -> quotient -> 0` whose class is not determined.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GradedPieces {
    pub sub: FGAbelianGroup,
    pub quotient: FGAbelianGroup,
    /// `|sub| * |quotient|`, absent when either piece is infinite.
    #[serde(serialize_with = "opt_int")]
    pub total_order: Option<BigInt>,
}

impl GradedPieces {
    pub fn new(sub: FGAbelianGroup, quotient: FGAbelianGroup) -> Self {
        let total_order = match (sub.order(), quotient.order()) {
            (Some(a), Some(b)) => Some(a * b),
            _ => None,
        };
        GradedPieces { sub, quotient, total_order }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightCokernel {
    Exact { group: FGAbelianGroup },
    Graded { pieces: GradedPieces },
}

impl WeightCokernel {
    pub fn exact_group(&self) -> Option<&FGAbelianGroup> {
        match self {
            WeightCokernel::Exact { group } => Some(group),
            WeightCokernel::Graded { .. } => None,
        }
    }

    pub fn order(&self) -> Option<BigInt> {
        match self {
            WeightCokernel::Exact { group } => group.order(),
            WeightCokernel::Graded { pieces } => pieces.total_order.clone(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == Some(BigInt::one())
    }
}

/// Order bookkeeping for `0 -> coker(gamma_bar) -> Hom(Lambda(G^ab), Z/delta) -> coker(wt) -> coker(ev) -> 0`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ExactnessCertificate {
    pub ab_rank: usize,
    #[serde(serialize_with = "opt_int")]
    pub hom_order: Option<BigInt>,
    #[serde(serialize_with = "opt_int")]
    pub coker_gamma_bar_order: Option<BigInt>,
    #[serde(serialize_with = "opt_int")]
    pub boundary_image_order: Option<BigInt>,
    #[serde(serialize_with = "opt_int")]
    pub ev_order: Option<BigInt>,
    #[serde(serialize_with = "opt_int")]
    pub coker_wt_order: Option<BigInt>,
    /// Whether every order relation forced by exactness holds; `None` when some group is infinite.
    pub holds: Option<bool>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GerbeReport {
    pub theorem: String,
    pub ev_cokernel: FGAbelianGroup,
    pub coker_gamma_bar: Option<FGAbelianGroup>,
    pub coker_wt: WeightCokernel,
    pub poincare_exists: Option<bool>,
    pub certificate: ExactnessCertificate,
    /// Disagreements between closed forms and the lattice computation.
    pub diagnostics: Vec<String>,
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
}

/// The matrix of `ev` on the basis of [`conditional_form_lattice`], in derived-dual coordinates.
pub fn evaluation_matrix(g: &ReductiveGroupData, d: &[BigInt]) -> Result<(FormLattice, IntMatrix)> {
    let forms = conditional_form_lattice(g)?;
    let cols = forms
        .basis()
        .iter()
        .map(|b| to_integral(&derived_evaluation(g, b, d)?).ok_or_else(|| Error::InvalidDatum("evaluation is not integral on the conditional form lattice".into())))
        .collect::<Result<Vec<_>>>()?;
    let m = IntMatrix::from_columns(g.ss_rank(), &cols)?;
    Ok((forms, m))
}

fn ev_cokernel_of(g: &ReductiveGroupData, m: &IntMatrix) -> Result<FGAbelianGroup> {
    let r = g.ss_rank();
    let sub = restricted_roots(g)?.sum(&Lattice::from_generators(m))?;
    Ok(Quotient::new(&Lattice::full(r), &sub)?.group().clone())
}

/// `coker(ev)` for the default lift of `delta`.
pub fn evaluation_cokernel(g: &ReductiveGroupData, delta: &Pi1Element) -> Result<FGAbelianGroup> {
    evaluation_cokernel_at(g, &generic_lift(g, delta)?)
}

/// `coker(ev)` where `ev(b)` is the class of `b(d^ss, -)` on `Lambda(T_D(G))` modulo the roots.
pub fn evaluation_cokernel_at(g: &ReductiveGroupData, d: &[BigInt]) -> Result<FGAbelianGroup> {
    check_len(g, d)?;
    let (_, m) = evaluation_matrix(g, d)?;
    ev_cokernel_of(g, &m)
}

/// The lattice `Q` of integral forms and the matrix of `ev-hat` on its basis.
pub fn genus0_evaluation_matrix(g: &ReductiveGroupData, d: &[BigInt]) -> Result<(FormLattice, IntMatrix)> {
    let (q, num, den) = sc_evaluation(g, d)?;
    let integral = integral_sc_forms(g, d)?;
    let mut cols = Vec::with_capacity(integral.rank());
    for v in integral.coords.basis_vectors() {
        let m = q.coords.coordinates(&v).ok_or(Error::NotInLattice)?;
        let vals = num.mul_vec(&m)?;
        cols.push(vals.iter().map(|x| if x.is_multiple_of(&den) { Ok(x / &den) } else { Err(Error::NotInLattice) }).collect::<Result<Vec<_>>>()?);
    }
    Ok((integral, IntMatrix::from_columns(g.ss_rank(), &cols)?))
}

/// `coker(ev-hat)` for genus 0 families.
pub fn genus0_evaluation_cokernel_at(g: &ReductiveGroupData, d: &[BigInt]) -> Result<FGAbelianGroup> {
    check_len(g, d)?;
    let (_, m) = genus0_evaluation_matrix(g, d)?;
    ev_cokernel_of(g, &m)
}

fn check_len(g: &ReductiveGroupData, d: &[BigInt]) -> Result<()> {
    if d.len() != g.cochar_rank() {
        return Err(Error::DimensionMismatch(format!("cocharacter of length {} for a group of rank {}", d.len(), g.cochar_rank())));
    }
    Ok(())
}

/// Whether a Poincare line bundle exists on `Pic^d(C/S) x C`: `gcd(delta(C/S), d + 1 - g) = 1`.
pub fn poincare_bundle_exists(d: &BigInt, f: &CurveFamily) -> bool {
    let m = d + BigInt::one() - BigInt::from(f.genus);
    gcd(&BigInt::from(f.delta), &m).is_one()
}

/// [`weight_cokernel_at`] for the default lift of `delta`.
pub fn weight_cokernel(g: &ReductiveGroupData, delta: &Pi1Element, f: &CurveFamily) -> Result<GerbeReport> {
    weight_cokernel_at(g, &generic_lift(g, delta)?, f)
}

/// `coker(wt)` for a lift `d` of `delta`.
pub fn weight_cokernel_at(g: &ReductiveGroupData, d: &[BigInt], f: &CurveFamily) -> Result<GerbeReport> {
    check_len(g, d)?;
    require_valid(f)?;
    let poincare_exists = if g.is_torus() && g.cochar_rank() == 1 { Some(poincare_bundle_exists(&d[0], f)) } else { None };
    let mut rep = if f.genus == 0 { weight_genus0(g, d, f)? } else { weight_positive(g, d, f)? };
    rep.poincare_exists = poincare_exists;
    Ok(rep)
}

fn orders_or_none(values: &[Option<BigInt>]) -> Option<Vec<BigInt>> {
    values.iter().cloned().collect()
}

/// Image of `gamma_bar` in the rigidified Neron-Severi group, positive genus.
fn gamma_bar_image(g: &ReductiveGroupData, d: &[BigInt], f: &CurveFamily) -> Result<(FormLattice, Lattice)> {
    let nsr = ns_rigidified(g, d)?;
    let image = image_condition(g, &nsr.coords, false, d, f.genus, f.delta)?;
    Ok((nsr, image))
}

/// Closed forms for tori: `Z/gcd(delta, div + 1 - g) + (Z/gcd(delta, g - 1, div))^(n-1)`.
pub fn torus_closed_form(rank: usize, genus: u64, delta: u64, div: &BigInt) -> FGAbelianGroup {
    if rank == 0 {
        return FGAbelianGroup::trivial();
    }
    let dl = BigInt::from(delta);
    let g = BigInt::from(genus);
    let first = gcd(&dl, &(div + BigInt::one() - &g));
    let rest = gcd_all([dl.clone(), &g - BigInt::one(), div.clone()].iter());
    let mut orders = vec![first];
    orders.extend(std::iter::repeat_n(rest, rank - 1));
    FGAbelianGroup::from_cyclic_orders(&orders)
}

fn weight_positive(g: &ReductiveGroupData, d: &[BigInt], f: &CurveFamily) -> Result<GerbeReport> {
    let check = hypothesis_check(f, g, Theorem::Thm4_4);
    check.into_result()?;
    let ev = evaluation_cokernel_at(g, d)?;
    let (nsr, image) = gamma_bar_image(g, d, f)?;
    let coker_gamma_bar = Quotient::new(&nsr.coords, &image)?.group().clone();

    // The boundary map on the basis of the rigidified forms, evaluated on lifts of a basis of
    // Lambda(G^ab).
    let lifts = g.cross().abelianization.generator_lifts();
    let a = lifts.len();
    let n = g.cochar_rank();
    let forms = nsr.basis();
    let zero = vec![BigInt::zero(); n];
    let rho = canonical_characters(g, d, &forms.iter().map(|b| (zero.clone(), b.clone())).collect::<Vec<_>>())?;
    let one_minus_g = BigInt::one() - BigInt::from(f.genus);
    let cols: Vec<Vec<BigInt>> = forms
        .iter()
        .zip(&rho)
        .map(|(b, rb)| lifts.iter().map(|x| b.eval(d, x) - crate::exact::dot(rb, x) + &one_minus_g * b.eval(x, x)).collect())
        .collect();
    let delta = BigInt::from(f.delta);
    let mut gens = IntMatrix::from_columns(a, &cols)?;
    if !delta.is_zero() {
        gens = gens.hcat(&IntMatrix::identity(a).scale(&delta))?;
    }
    let sub = Quotient::new(&Lattice::full(a), &Lattice::from_generators(&gens))?.group().clone();

    let mut diagnostics = Vec::new();
    let mut notes = Vec::new();
    let hom_order = if delta.is_zero() { None } else { Some(num_traits::pow(delta.clone(), a)) };
    let boundary_image_order = match (&hom_order, sub.order()) {
        (Some(h), Some(s)) => Some(h / s),
        _ => None,
    };

    let (coker_wt, theorem) = if f.delta == 1 {
        notes.push("delta(C/S) = 1: the weight cokernel equals the evaluation cokernel".into());
        (WeightCokernel::Exact { group: ev.clone() }, "Cor4.5")
    } else if g.is_torus() || ev.is_trivial() {
        (WeightCokernel::Exact { group: sub.clone() }, if g.is_torus() { "Cor4.5" } else { "Thm4.4" })
    } else if sub.is_trivial() {
        (WeightCokernel::Exact { group: ev.clone() }, "Thm4.4")
    } else {
        notes.push("the extension class of the weight cokernel is not determined".into());
        (WeightCokernel::Graded { pieces: GradedPieces::new(sub.clone(), ev.clone()) }, "Thm4.4")
    };

    if g.is_torus() {
        let div = gcd_all(d.iter());
        let printed = torus_closed_form(n, f.genus, f.delta, &div);
        if Some(&printed) != coker_wt.exact_group() {
            diagnostics.push(format!("closed form for coker(wt) gives {printed}, the lattice computation gives {sub}"));
        }
        let printed_gamma = if f.delta == 0 { FGAbelianGroup::trivial() } else { printed };
        if printed_gamma != coker_gamma_bar {
            diagnostics.push(format!("closed form for coker(gamma_bar) gives {printed_gamma}, the lattice computation gives {coker_gamma_bar}"));
        }
    }

    let coker_wt_order = coker_wt.order();
    let holds = orders_or_none(&[hom_order.clone(), coker_gamma_bar.order(), boundary_image_order.clone(), ev.order(), coker_wt_order.clone()]).map(|o| {
        let (h, cg, im, e, w) = (&o[0], &o[1], &o[2], &o[3], &o[4]);
        cg == im && im * w == h * e
    });
    if holds == Some(false) {
        diagnostics.push("order bookkeeping of the exact sequence fails".into());
    }
    let certificate = ExactnessCertificate { ab_rank: a, hom_order, coker_gamma_bar_order: coker_gamma_bar.order(), boundary_image_order, ev_order: ev.order(), coker_wt_order, holds };
    let mut warnings = Vec::new();
    if f.delta == 0 {
        warnings.push("delta(C/S) = 0: Hom(Lambda(G^ab), Z/0) is the full character lattice".into());
    }
    Ok(GerbeReport { theorem: theorem.into(), ev_cokernel: ev, coker_gamma_bar: Some(coker_gamma_bar), coker_wt, poincare_exists: None, certificate, diagnostics, notes, warnings })
}

fn weight_genus0(g: &ReductiveGroupData, d: &[BigInt], f: &CurveFamily) -> Result<GerbeReport> {
    let check = hypothesis_check(f, g, Theorem::Thm4_6);
    check.into_result()?;
    let ev = genus0_evaluation_cokernel_at(g, d)?;
    let sub = if f.delta == 2 && !ab_two_divisible(g, d)? { FGAbelianGroup::cyclic(&BigInt::from(2)) } else { FGAbelianGroup::trivial() };
    let mut notes = vec!["genus 0: the evaluation uses integral forms on the simply connected cover".to_string()];
    let coker_wt = if sub.is_trivial() {
        WeightCokernel::Exact { group: ev.clone() }
    } else if ev.is_trivial() {
        WeightCokernel::Exact { group: sub.clone() }
    } else {
        notes.push("the extension class of the weight cokernel is not determined".into());
        WeightCokernel::Graded { pieces: GradedPieces::new(sub.clone(), ev.clone()) }
    };
    let a = g.cross().abelianization.group().num_generators();
    let certificate = ExactnessCertificate {
        ab_rank: a,
        hom_order: None,
        coker_gamma_bar_order: None,
        boundary_image_order: sub.order(),
        ev_order: ev.order(),
        coker_wt_order: coker_wt.order(),
        holds: match (sub.order(), ev.order(), coker_wt.order()) {
            (Some(s), Some(e), Some(w)) => Some(s * e == w),
            _ => None,
        },
    };
    Ok(GerbeReport { theorem: "Thm4.6".into(), ev_cokernel: ev, coker_gamma_bar: None, coker_wt, poincare_exists: None, certificate, diagnostics: vec![], notes, warnings: vec![] })
}

/// [`rigidified_picard_at`] for the default lift of `delta`.
pub fn rigidified_picard(g: &ReductiveGroupData, delta: &Pi1Element, f: &CurveFamily) -> Result<PicardReport> {
    rigidified_picard_at(g, &generic_lift(g, delta)?, f)
}

/// Picard group of the rigidification by the center.
pub fn rigidified_picard_at(g: &ReductiveGroupData, d: &[BigInt], f: &CurveFamily) -> Result<PicardReport> {
    check_len(g, d)?;
    require_valid(f)?;
    let mut rep;
    if f.genus > 0 {
        let check = hypothesis_check(f, g, Theorem::Thm4_3);
        check.clone().into_result()?;
        let (nsr, image) = gamma_bar_image(g, d, f)?;
        let section = ImageSection::new("gamma_bar", "image of the form map in the rigidified Neron-Severi group", nsr.coords.clone(), image, None)?;
        rep = PicardReport::new("Thm4.3", section.cokernel.clone());
        rep.images.push(section);
        rep.kernel_summand = Some(KernelSummand { symbol: "Λ*(G^ab)⊗RPic⁰(C/S)".into(), character_rank: g.cochar_rank() - g.ss_rank(), torsion_free: Some(f.rpic0_torsion_free) });
        rep.forms = Some(nsr);
        rep.hypotheses.push(check);
    } else {
        let check = hypothesis_check(f, g, Theorem::Thm4_6);
        check.clone().into_result()?;
        let (q, m) = genus0_evaluation_matrix(g, d)?;
        let kernel = q.coords.preimage_coords(&m, &restricted_roots(g)?)?;
        let section = ImageSection::new("ker_ev", "kernel of the evaluation on integral forms", q.coords.clone(), kernel.clone(), None)?;
        rep = PicardReport::new("Thm4.6", section.cokernel.clone());
        rep.images.push(section);
        rep.group = Some(FGAbelianGroup::free(kernel.rank()));
        rep.forms = Some(FormLattice { domain: q.domain, coords: kernel });
        rep.hypotheses.push(check);
    }
    rep.splitting_known = g.derived_simply_connected();
    if f.delta == 0 {
        rep.warnings.push("delta(C/S) = 0: divisibility conditions are exact equalities".into());
    }
    Ok(rep)
}

/// `|coker(gamma_bar)| * |coker(wt)|`, used to check the torus bookkeeping; `None` if infinite.
pub fn torus_order_product(rep: &GerbeReport) -> Option<BigInt> {
    let a = rep.coker_gamma_bar.as_ref()?.order()?;
    let b = rep.coker_wt.order()?;
    Some((a * b).abs())
}
