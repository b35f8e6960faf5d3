use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::spec::{Factor, GroupSpec};
use super::types::SimpleType;
use crate::error::{Error, Result};
use crate::exact::{DeInt, FGAbelianGroup, IntMatrix, Lattice, Quotient};

/// Upper bound on the rank of the maximal torus accepted by the builders.
pub const MAX_TORUS_RANK: usize = 64;

/// A simple factor of the root system, owning the simple roots `start..start + rank`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct SimpleFactor {
    #[serde(rename = "type")]
    pub simple_type: SimpleType,
    pub start: usize,
}

impl SimpleFactor {
    pub fn range(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.simple_type.rank()
    }
}

/// A based root datum of a split reductive group.
///
/// The cocharacter lattice of the maximal torus is `Z^n`. Simple coroots are the columns of
/// `coroots`; simple roots are the columns of `roots`, written in the dual basis.
#[derive(Clone, Debug)]
pub struct ReductiveGroupData {
    name: String,
    coroots: IntMatrix,
    roots: IntMatrix,
    factors: Vec<SimpleFactor>,
    cross: CrossDiagram,
}

/// The lattices attached to `G`, its derived subgroup `D(G)`, radical, semisimplification
/// `G^ss`, adjoint group and simply connected cover.
///
/// Semisimple lattices live in `Z^r` with basis the fundamental coweights, so that the
/// adjoint lattice is all of `Z^r` and `to_adjoint` is the matrix of the simple roots.
#[derive(Clone, Debug)]
pub struct CrossDiagram {
    /// Lattice spanned by the simple coroots, inside `Lambda(T_G)`.
    pub coroot_lattice: Lattice,
    /// `Lambda(T_D(G))`: rational span of the coroots intersected with `Lambda(T_G)`.
    pub derived: Lattice,
    /// Cocharacters of the radical, the common kernel of the roots.
    pub radical: Lattice,
    /// Map `Lambda(T_G) -> Lambda(T_G^ad)` in fundamental coweight coordinates.
    pub to_adjoint: IntMatrix,
    pub sc: Lattice,
    pub derived_image: Lattice,
    pub ss: Lattice,
    pub adjoint: Lattice,
    /// `pi_1(G) = Lambda(T_G) / coroots`.
    pub pi1: Quotient,
    /// `pi_1(D(G))`.
    pub pi1_derived: FGAbelianGroup,
    /// `pi_1(G^ad)`.
    pub pi1_adjoint: Quotient,
    /// `Lambda(G^ab) = Lambda(T_G) / Lambda(T_D(G))`.
    pub abelianization: Quotient,
    /// `Lambda*(T_G^ad)`, the root lattice inside `Lambda*(T_G)`.
    pub root_lattice: Lattice,
    /// `Lambda*(Z(G)) = Lambda*(T_G) / Lambda*(T_G^ad)`.
    pub center_characters: Quotient,
    /// `Lambda*(G^ab)`: characters vanishing on the coroots.
    pub ab_characters: Lattice,
    /// `Lambda*(T_D(G)) / Lambda*(T_G^ad)` in coordinates dual to the basis of `derived`.
    pub derived_center_characters: Quotient,
}

impl ReductiveGroupData {
    /// Builds and validates a root datum. The pairing of roots and coroots must be the
    /// block diagonal Cartan matrix of `factor_types`, in order.
    pub fn new(name: impl Into<String>, cochar_rank: usize, coroots: IntMatrix, roots: IntMatrix, factor_types: &[SimpleType]) -> Result<Self> {
        if cochar_rank > MAX_TORUS_RANK {
            return Err(Error::InvalidDatum(format!("torus rank {cochar_rank} exceeds the supported maximum {MAX_TORUS_RANK}")));
        }
        if coroots.rows() != cochar_rank || roots.rows() != cochar_rank || coroots.cols() != roots.cols() {
            return Err(Error::InvalidDatum("root and coroot matrices do not match the cocharacter rank".into()));
        }
        let mut factors = Vec::new();
        let mut start = 0;
        for &t in factor_types {
            let t = t.validated()?;
            factors.push(SimpleFactor { simple_type: t, start });
            start += t.rank();
        }
        if start != coroots.cols() {
            return Err(Error::InvalidDatum(format!("factor types have total rank {start} but {} simple roots were given", coroots.cols())));
        }
        let expected = IntMatrix::block_diagonal(&factor_types.iter().map(|t| t.cartan_matrix()).collect::<Vec<_>>());
        let pairing = roots.transpose().mul(&coroots)?;
        if pairing != expected {
            return Err(Error::InvalidDatum("pairing of simple roots and coroots is not the Cartan matrix of the given types".into()));
        }
        let cross = CrossDiagram::compute(&coroots, &roots)?;
        Ok(ReductiveGroupData { name: name.into(), coroots, roots, factors, cross })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Rank of the maximal torus.
    pub fn cochar_rank(&self) -> usize {
        self.coroots.rows()
    }

    /// Semisimple rank.
    pub fn ss_rank(&self) -> usize {
        self.coroots.cols()
    }

    pub fn coroots(&self) -> &IntMatrix {
        &self.coroots
    }

    pub fn roots(&self) -> &IntMatrix {
        &self.roots
    }

    pub fn factors(&self) -> &[SimpleFactor] {
        &self.factors
    }

    pub fn factor_types(&self) -> Vec<SimpleType> {
        self.factors.iter().map(|f| f.simple_type).collect()
    }

    pub fn cross(&self) -> &CrossDiagram {
        &self.cross
    }

    pub fn is_torus(&self) -> bool {
        self.ss_rank() == 0
    }

    pub fn is_semisimple(&self) -> bool {
        self.ss_rank() == self.cochar_rank()
    }

    pub fn is_simply_connected(&self) -> bool {
        self.is_semisimple() && self.cross.pi1.group().is_trivial()
    }

    /// Whether `D(G)` is simply connected, i.e. `pi_1(G)` is torsion free.
    pub fn derived_simply_connected(&self) -> bool {
        self.cross.pi1_derived.is_trivial()
    }

    /// Cartan matrix `<alpha_i, alpha_j^vee>` recovered from the datum.
    pub fn cartan_matrix(&self) -> IntMatrix {
        self.roots.transpose().mul(&self.coroots).expect("shapes checked at construction")
    }

    /// Simple reflection `s_i` on `Lambda(T_G)`: `x -> x - <alpha_i, x> alpha_i^vee`.
    pub fn reflection(&self, i: usize) -> IntMatrix {
        let n = self.cochar_rank();
        let mut m = IntMatrix::identity(n);
        for a in 0..n {
            for b in 0..n {
                m[(a, b)] -= &self.coroots[(a, i)] * &self.roots[(b, i)];
            }
        }
        m
    }

    /// Direct product of root data.
    pub fn product(name: impl Into<String>, parts: &[ReductiveGroupData]) -> Result<Self> {
        let n: usize = parts.iter().map(|p| p.cochar_rank()).sum();
        if n > MAX_TORUS_RANK {
            return Err(Error::InvalidSpec(format!("torus rank {n} exceeds the supported maximum {MAX_TORUS_RANK}")));
        }
        let coroots = IntMatrix::block_diagonal(&parts.iter().map(|p| p.coroots.clone()).collect::<Vec<_>>());
        let roots = IntMatrix::block_diagonal(&parts.iter().map(|p| p.roots.clone()).collect::<Vec<_>>());
        let types: Vec<SimpleType> = parts.iter().flat_map(|p| p.factor_types()).collect();
        Self::new(name, n, coroots, roots, &types)
    }

    /// The simply connected group of the given types.
    pub fn simply_connected(types: &[SimpleType]) -> Result<Self> {
        let c = IntMatrix::block_diagonal(&types.iter().map(|t| t.cartan_matrix()).collect::<Vec<_>>());
        let name = types.iter().map(|t| format!("{t}sc")).collect::<Vec<_>>().join("*");
        Self::new(name, c.rows(), IntMatrix::identity(c.rows()), c.transpose(), types)
    }

    /// The adjoint group of the given types.
    pub fn adjoint(types: &[SimpleType]) -> Result<Self> {
        let c = IntMatrix::block_diagonal(&types.iter().map(|t| t.cartan_matrix()).collect::<Vec<_>>());
        let name = types.iter().map(|t| format!("{t}ad")).collect::<Vec<_>>().join("*");
        let n = c.rows();
        Self::new(name, n, c, IntMatrix::identity(n), types)
    }

    /// A reductive group with simply connected derived subgroup of the given types and
    /// adjoint semisimplification, generalizing `GL_n` for type `A`.
    ///
    /// The cocharacter lattice has basis the simple coroots followed by `(w_j, e_j)`, where
    /// the `w_j` lift generators of `pi_1(G^ad)` and the `e_j` span a torus. A cocharacter
    /// `(0, delta)` projects to `sum delta_j w_j` in `Lambda(T_G^ad)`.
    pub fn sc_derived_extension(types: &[SimpleType]) -> Result<Self> {
        let c = IntMatrix::block_diagonal(&types.iter().map(|t| t.cartan_matrix()).collect::<Vec<_>>());
        let r = c.rows();
        let q = Quotient::new(&Lattice::full(r), &Lattice::from_generators(&c))?;
        let w = q.generator_lifts();
        let k = w.len();
        let mut coroots = IntMatrix::zeros(r + k, r);
        let mut roots = IntMatrix::zeros(r + k, r);
        for i in 0..r {
            coroots[(i, i)] = BigInt::one();
            for l in 0..r {
                roots[(l, i)] = c[(i, l)].clone();
            }
            for (j, wj) in w.iter().enumerate() {
                roots[(r + j, i)] = wj[i].clone();
            }
        }
        let name = format!("ext({})", types.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("*"));
        Self::new(name, r + k, coroots, roots, types)
    }

    /// Parses a raw root datum in JSON form:
    /// `{"cochar_rank": n, "simple_coroots": [[..]..], "simple_roots": [[..]..], "factor_types": ["A3", ..]}`,
    /// each coroot and root given as a vector of length `n`.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            cochar_rank: usize,
            simple_coroots: Vec<Vec<DeInt>>,
            simple_roots: Vec<Vec<DeInt>>,
            factor_types: Vec<String>,
            #[serde(default)]
            name: Option<String>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::InvalidDatum(e.to_string()))?;
        if raw.cochar_rank > MAX_TORUS_RANK {
            return Err(Error::InvalidDatum(format!("torus rank {} exceeds the supported maximum {MAX_TORUS_RANK}", raw.cochar_rank)));
        }
        let cols = |v: Vec<Vec<DeInt>>| -> Result<IntMatrix> {
            let v: Vec<Vec<BigInt>> = v.into_iter().map(|c| c.into_iter().map(|x| x.0).collect()).collect();
            IntMatrix::from_columns(raw.cochar_rank, &v).map_err(|e| Error::InvalidDatum(e.to_string()))
        };
        let coroots = cols(raw.simple_coroots)?;
        let roots = cols(raw.simple_roots)?;
        let types: Vec<SimpleType> = raw.factor_types.iter().map(|s| s.parse()).collect::<Result<_>>()?;
        Self::new(raw.name.unwrap_or_else(|| "custom".into()), raw.cochar_rank, coroots, roots, &types)
    }

    /// Serializes the datum in the format read by [`ReductiveGroupData::from_json`].
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "cochar_rank": self.cochar_rank(),
            "simple_coroots": self.coroots.transpose(),
            "simple_roots": self.roots.transpose(),
            "factor_types": self.factor_types(),
        })
    }
}

fn standard_gl(n: usize) -> (IntMatrix, IntMatrix) {
    let mut c = IntMatrix::zeros(n, n - 1);
    for i in 0..n - 1 {
        c[(i, i)] = BigInt::one();
        c[(i + 1, i)] = -BigInt::one();
    }
    (c.clone(), c)
}

fn standard_so_odd(n: usize) -> (IntMatrix, IntMatrix) {
    let mut coroots = IntMatrix::zeros(n, n);
    let mut roots = IntMatrix::zeros(n, n);
    for i in 0..n - 1 {
        for m in [&mut coroots, &mut roots] {
            m[(i, i)] = BigInt::one();
            m[(i + 1, i)] = -BigInt::one();
        }
    }
    coroots[(n - 1, n - 1)] = BigInt::from(2);
    roots[(n - 1, n - 1)] = BigInt::one();
    (coroots, roots)
}

fn standard_so_even(n: usize) -> (IntMatrix, IntMatrix) {
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n - 1 {
        m[(i, i)] = BigInt::one();
        m[(i + 1, i)] = -BigInt::one();
    }
    m[(n - 2, n - 1)] = BigInt::one();
    m[(n - 1, n - 1)] = BigInt::one();
    (m.clone(), m)
}

fn build_factor(f: Factor) -> Result<ReductiveGroupData> {
    let name = f.to_string();
    let rename = |mut g: ReductiveGroupData| {
        g.name = name.clone();
        g
    };
    let odd_even = |n: usize| if n % 2 == 1 { SimpleType::B(n / 2) } else { SimpleType::D(n / 2) };
    Ok(match f {
        Factor::SL(n) => rename(ReductiveGroupData::simply_connected(&[SimpleType::A(n - 1)])?),
        Factor::PGL(n) => rename(ReductiveGroupData::adjoint(&[SimpleType::A(n - 1)])?),
        Factor::GL(n) => {
            let (c, r) = standard_gl(n);
            let types = if n >= 2 { vec![SimpleType::A(n - 1)] } else { vec![] };
            ReductiveGroupData::new(name.clone(), n, c, r, &types)?
        }
        Factor::Torus(n) => ReductiveGroupData::new(name.clone(), n, IntMatrix::zeros(n, 0), IntMatrix::zeros(n, 0), &[])?,
        Factor::Sp(n) => rename(ReductiveGroupData::simply_connected(&[SimpleType::C(n / 2)])?),
        Factor::PSp(n) => rename(ReductiveGroupData::adjoint(&[SimpleType::C(n / 2)])?),
        Factor::Spin(n) => rename(ReductiveGroupData::simply_connected(&[odd_even(n)])?),
        Factor::PSO(n) => rename(ReductiveGroupData::adjoint(&[odd_even(n)])?),
        Factor::SO(n) => {
            let m = n / 2;
            let (c, r) = if n % 2 == 1 { standard_so_odd(m) } else { standard_so_even(m) };
            ReductiveGroupData::new(name.clone(), m, c, r, &[odd_even(n)])?
        }
        Factor::E6sc => rename(ReductiveGroupData::simply_connected(&[SimpleType::E6])?),
        Factor::E6ad => rename(ReductiveGroupData::adjoint(&[SimpleType::E6])?),
        Factor::E7sc => rename(ReductiveGroupData::simply_connected(&[SimpleType::E7])?),
        Factor::E7ad => rename(ReductiveGroupData::adjoint(&[SimpleType::E7])?),
        Factor::E8 => rename(ReductiveGroupData::simply_connected(&[SimpleType::E8])?),
        Factor::F4 => rename(ReductiveGroupData::simply_connected(&[SimpleType::F4])?),
        Factor::G2 => rename(ReductiveGroupData::simply_connected(&[SimpleType::G2])?),
    })
}

fn factor_rank(f: Factor) -> usize {
    match f {
        Factor::SL(n) | Factor::PGL(n) => n - 1,
        Factor::GL(n) | Factor::Torus(n) => n,
        Factor::Sp(n) | Factor::PSp(n) | Factor::Spin(n) | Factor::SO(n) | Factor::PSO(n) => n / 2,
        Factor::E6sc | Factor::E6ad => 6,
        Factor::E7sc | Factor::E7ad => 7,
        Factor::E8 => 8,
        Factor::F4 => 4,
        Factor::G2 => 2,
    }
}

/// Builds the root datum of a product of named groups.
pub fn build_group(spec: &GroupSpec) -> Result<ReductiveGroupData> {
    if spec.factors.is_empty() {
        return Err(Error::InvalidSpec("empty product".into()));
    }
    let total: usize = spec.factors.iter().map(|&f| factor_rank(f)).sum();
    if total > MAX_TORUS_RANK {
        return Err(Error::InvalidSpec(format!("torus rank {total} exceeds the supported maximum {MAX_TORUS_RANK}")));
    }
    let parts: Vec<ReductiveGroupData> = spec.factors.iter().map(|&f| build_factor(f)).collect::<Result<_>>()?;
    if parts.len() == 1 {
        return Ok(parts.into_iter().next().unwrap_or_else(|| unreachable!()));
    }
    ReductiveGroupData::product(spec.to_string(), &parts)
}

impl CrossDiagram {
    fn compute(coroots: &IntMatrix, roots: &IntMatrix) -> Result<Self> {
        let n = coroots.rows();
        let r = coroots.cols();
        let coroot_lattice = Lattice::from_generators(coroots);
        let derived = coroot_lattice.saturation();
        let radical = Lattice::from_generators(&crate::exact::integer_kernel(&roots.transpose()));
        let to_adjoint = roots.transpose();
        let sc = Lattice::from_generators(&to_adjoint.mul(coroots)?);
        let derived_image = derived.image(&to_adjoint)?;
        let ss = Lattice::full(n).image(&to_adjoint)?;
        let adjoint = Lattice::full(r);
        let pi1 = Quotient::new(&Lattice::full(n), &coroot_lattice)?;
        let pi1_derived = Quotient::new(&derived, &coroot_lattice)?.group().clone();
        let pi1_adjoint = Quotient::new(&adjoint, &sc)?;
        let abelianization = Quotient::new(&Lattice::full(n), &derived)?;
        let root_lattice = Lattice::from_generators(roots);
        let center_characters = Quotient::new(&Lattice::full(n), &root_lattice)?;
        let ab_characters = Lattice::from_generators(&crate::exact::integer_kernel(&coroots.transpose()));
        let restricted_roots = derived.basis().transpose().mul(roots)?;
        let derived_center_characters = Quotient::new(&Lattice::full(derived.rank()), &Lattice::from_generators(&restricted_roots))?;
        Ok(CrossDiagram {
            coroot_lattice,
            derived,
            radical,
            to_adjoint,
            sc,
            derived_image,
            ss,
            adjoint,
            pi1,
            pi1_derived,
            pi1_adjoint,
            abelianization,
            root_lattice,
            center_characters,
            ab_characters,
            derived_center_characters,
        })
    }

    /// Checks `sc ⊆ D ⊆ ss ⊆ ad` and that `pi_1(D(G))` is the torsion of `pi_1(G)`.
    pub fn is_consistent(&self) -> bool {
        let chain = self.derived_image.contains_lattice(&self.sc) && self.ss.contains_lattice(&self.derived_image) && self.adjoint.contains_lattice(&self.ss);
        let pi1 = self.pi1.group();
        let torsion_ok = FGAbelianGroup::new(0, pi1.torsion()) == self.pi1_derived;
        let ab_rank = self.abelianization.group().free_rank() == pi1.free_rank() && self.abelianization.group().is_finite() == (pi1.free_rank() == 0);
        chain && torsion_ok && ab_rank
    }

    /// Image of a cocharacter in `Lambda(T_G^ad)`.
    pub fn ss_part(&self, d: &[BigInt]) -> Result<Vec<BigInt>> {
        self.to_adjoint.mul_vec(d)
    }

    /// Whether a cocharacter lies in the rational span of the coroots with zero radical part.
    pub fn is_zero_ss(&self, d: &[BigInt]) -> Result<bool> {
        Ok(self.ss_part(d)?.iter().all(Zero::is_zero))
    }
}
