//! Numerical invariants of a family of curves `C/S` and the hypotheses they satisfy.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_datum::ReductiveGroupData;

/// The discrete invariants of a family of curves.
///
/// `delta` is the minimal positive relative degree of a line bundle on `C`, or 0 when the
/// family is not locally projective. Flags that are not given when deserializing default to
/// `false`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFamily {
    pub genus: u64,
    pub delta: u64,
    #[serde(default)]
    pub has_section: bool,
    #[serde(default)]
    pub zariski_locally_trivial: bool,
    /// `End(J) = Z` for the Jacobian of the geometric generic fiber.
    #[serde(default)]
    pub end_jacobian_trivial: bool,
    /// `Pic(C) -> Pic_{C/S}(S)` is surjective.
    #[serde(default)]
    pub rpic_surjective: bool,
    #[serde(default)]
    pub rpic0_torsion_free: bool,
    #[serde(default)]
    pub label: String,
}

impl CurveFamily {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidConfig(format!("curve family: {e}")))
    }

    /// `2g - 2`.
    pub fn euler_degree(&self) -> i128 {
        2 * self.genus as i128 - 2
    }

    /// Parses `k=v,k=v,...` with keys the field names; omitted flags are false.
    pub fn from_raw(text: &str) -> Result<Self> {
        let mut f = CurveFamily { genus: 0, delta: 0, has_section: false, zariski_locally_trivial: false, end_jacobian_trivial: false, rpic_surjective: false, rpic0_torsion_free: false, label: "raw".into() };
        let mut seen_genus = false;
        let mut seen_delta = false;
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| Error::InvalidConfig(format!("expected key=value, got `{item}`")))?;
            let (k, v) = (k.trim(), v.trim());
            let num = || v.parse::<u64>().map_err(|_| Error::InvalidConfig(format!("`{k}` needs a nonnegative integer, got `{v}`")));
            let flag = || match v {
                "true" | "1" | "yes" => Ok(true),
                "false" | "0" | "no" => Ok(false),
                _ => Err(Error::InvalidConfig(format!("`{k}` needs a boolean, got `{v}`"))),
            };
            match k {
                "genus" | "g" => {
                    f.genus = num()?;
                    seen_genus = true;
                }
                "delta" => {
                    f.delta = num()?;
                    seen_delta = true;
                }
                "has_section" => f.has_section = flag()?,
                "zariski_locally_trivial" => f.zariski_locally_trivial = flag()?,
                "end_jacobian_trivial" => f.end_jacobian_trivial = flag()?,
                "rpic_surjective" => f.rpic_surjective = flag()?,
                "rpic0_torsion_free" => f.rpic0_torsion_free = flag()?,
                "label" => f.label = v.to_string(),
                _ => return Err(Error::InvalidConfig(format!("unknown family field `{k}`"))),
            }
        }
        if !seen_genus || !seen_delta {
            return Err(Error::InvalidConfig("raw family needs both genus and delta".into()));
        }
        Ok(f)
    }
}

/// Names of the built-in presets.
pub const PRESETS: [&str; 10] = ["universal", "plane_curve", "complete_intersection", "k3_hyperplane", "hyperelliptic", "hurwitz", "severi", "fixed_curve", "genus0_trivial", "genus0_nontrivial"];

fn base(genus: u64, delta: u64, label: String) -> CurveFamily {
    CurveFamily { genus, delta, has_section: false, zariski_locally_trivial: false, end_jacobian_trivial: false, rpic_surjective: delta == 1, rpic0_torsion_free: false, label }
}

/// Genus zero families are determined by whether they are Zariski-locally trivial.
fn genus0(trivial: bool, label: String) -> CurveFamily {
    CurveFamily {
        genus: 0,
        delta: if trivial { 1 } else { 2 },
        has_section: trivial,
        zariski_locally_trivial: trivial,
        end_jacobian_trivial: false,
        rpic_surjective: trivial,
        rpic0_torsion_free: true,
        label,
    }
}

fn arity(name: &str, params: &[i64], n: usize) -> Result<Vec<u64>> {
    if params.len() != n {
        return Err(Error::InvalidParams(format!("{name} takes {n} parameter(s), got {}", params.len())));
    }
    params.iter().map(|&p| u64::try_from(p).map_err(|_| Error::InvalidParams(format!("{name}: negative parameter {p}")))).collect()
}

const MAX_PARAM: u64 = 1 << 20;

fn bounded(name: &str, p: &[u64]) -> Result<()> {
    match p.iter().find(|&&x| x > MAX_PARAM) {
        Some(x) => Err(Error::InvalidParams(format!("{name}: parameter {x} is too large"))),
        None => Ok(()),
    }
}

/// Builds a family from the catalog of known values of `delta`.
pub fn family_from_preset(name: &str, params: &[i64]) -> Result<CurveFamily> {
    let label = format!("{name}({})", params.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","));
    let f = match name {
        "universal" => {
            let p = arity(name, params, 2)?;
            bounded(name, &p)?;
            let (g, n) = (p[0], p[1]);
            if g == 0 {
                genus0(n > 0, label)
            } else {
                let delta = if n == 0 { 2 * g - 2 } else { 1 };
                CurveFamily { has_section: n > 0, end_jacobian_trivial: true, rpic_surjective: n > 0 || g >= 2, rpic0_torsion_free: true, ..base(g, delta, label) }
            }
        }
        "plane_curve" => {
            let p = arity(name, params, 1)?;
            bounded(name, &p)?;
            let d = p[0];
            if d == 0 {
                return Err(Error::InvalidParams("plane_curve: degree must be positive".into()));
            }
            if d <= 2 {
                genus0(d == 1, label)
            } else {
                CurveFamily { end_jacobian_trivial: true, ..base((d - 1) * (d - 2) / 2, d, label) }
            }
        }
        "complete_intersection" => {
            if params.is_empty() {
                return Err(Error::InvalidParams("complete_intersection needs at least one degree".into()));
            }
            let p = arity(name, params, params.len())?;
            bounded(name, &p)?;
            if p.iter().any(|&d| d < 2) {
                return Err(Error::InvalidParams("complete_intersection: degrees must be at least 2".into()));
            }
            let too_large = || Error::InvalidParams("complete_intersection: degrees are too large".into());
            let r = p.len() as i128 + 1;
            let prod = p.iter().try_fold(1i128, |acc, &d| acc.checked_mul(d as i128).filter(|&x| x <= MAX_PARAM as i128)).ok_or_else(too_large)?;
            let sum: i128 = p.iter().map(|&d| d as i128).sum();
            let two_g_minus_two = prod * (sum - r - 1);
            let g = (two_g_minus_two + 2) / 2;
            if g == 0 {
                genus0(false, label)
            } else {
                base(g as u64, prod as u64, label)
            }
        }
        "k3_hyperplane" => {
            let p = arity(name, params, 1)?;
            bounded(name, &p)?;
            if p[0] < 3 {
                return Err(Error::InvalidParams("k3_hyperplane: genus must be at least 3".into()));
            }
            base(p[0], 2 * p[0] - 2, label)
        }
        "hyperelliptic" => {
            let p = arity(name, params, 1)?;
            bounded(name, &p)?;
            if p[0] < 2 {
                return Err(Error::InvalidParams("hyperelliptic: genus must be at least 2".into()));
            }
            let delta = if p[0] % 2 == 1 { 4 } else { 2 };
            CurveFamily { end_jacobian_trivial: true, ..base(p[0], delta, label) }
        }
        "hurwitz" | "severi" => {
            let p = arity(name, params, 2)?;
            bounded(name, &p)?;
            let (g, d) = (p[0] as i128, p[1] as i128);
            if g < 1 {
                return Err(Error::InvalidParams(format!("{name}: genus must be positive")));
            }
            let rho = if name == "hurwitz" { 2 * d - g - 2 } else { 3 * d - 2 * g - 6 };
            if rho < 2 {
                return Err(Error::InvalidParams(format!("{name}: Brill-Noether number {rho} is below 2")));
            }
            let delta = (2 * g - 2).gcd(&d);
            base(g as u64, delta as u64, label)
        }
        "fixed_curve" => {
            let p = arity(name, params, 1)?;
            bounded(name, &p)?;
            if p[0] == 0 {
                genus0(true, label)
            } else {
                CurveFamily { has_section: true, end_jacobian_trivial: true, rpic_surjective: true, rpic0_torsion_free: false, ..base(p[0], 1, label) }
            }
        }
        "genus0_trivial" => {
            arity(name, params, 0)?;
            genus0(true, label)
        }
        "genus0_nontrivial" => {
            arity(name, params, 0)?;
            genus0(false, label)
        }
        _ => return Err(Error::InvalidPreset(name.to_string())),
    };
    Ok(f)
}

/// Parses `name` or `name:p1,p2,...` (parentheses are also accepted: `name(p1,p2)`).
pub fn parse_preset(text: &str) -> Result<CurveFamily> {
    let text = text.trim();
    let (name, args) = if let Some((n, a)) = text.split_once(':') {
        (n, a)
    } else if let Some(open) = text.find('(') {
        let inner = text[open + 1..].strip_suffix(')').ok_or_else(|| Error::InvalidParams(format!("unbalanced parentheses in `{text}`")))?;
        (&text[..open], inner)
    } else {
        (text, "")
    };
    let params = args
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().map_err(|_| Error::InvalidParams(format!("`{s}` is not an integer"))))
        .collect::<Result<Vec<_>>>()?;
    family_from_preset(name.trim(), &params)
}

/// Parses a family given inline: JSON object, `raw:k=v,...`, or a preset.
pub fn parse_family(text: &str) -> Result<CurveFamily> {
    let t = text.trim();
    if t.starts_with('{') {
        CurveFamily::from_json(t)
    } else if let Some(rest) = t.strip_prefix("raw:") {
        CurveFamily::from_raw(rest)
    } else {
        parse_preset(t)
    }
}

/// A violated invariant of a family record.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Violation {
    pub invariant: String,
    pub message: String,
}

fn violation(invariant: &str, message: String) -> Violation {
    Violation { invariant: invariant.into(), message }
}

/// All invariants that `f` fails; empty when the record is consistent.
pub fn validate_family(f: &CurveFamily) -> Vec<Violation> {
    let mut out = Vec::new();
    let g = f.genus;
    if g >= 2 {
        let e = 2 * g as u128 - 2;
        if f.delta == 0 {
            out.push(violation("locally projective", format!("genus {g} families are locally projective, so delta cannot be 0")));
        } else if !e.is_multiple_of(f.delta as u128) {
            out.push(violation("delta divides 2g-2", format!("{} ∤ {e}", f.delta)));
        }
    }
    if g == 0 {
        if f.delta != 1 && f.delta != 2 {
            out.push(violation("genus zero delta", format!("genus 0 requires delta in {{1, 2}}, got {}", f.delta)));
        }
        if (f.delta == 1) != f.zariski_locally_trivial {
            out.push(violation("genus zero delta", format!("delta = {} but zariski_locally_trivial = {}", f.delta, f.zariski_locally_trivial)));
        }
        if f.zariski_locally_trivial != f.has_section {
            out.push(violation("genus zero section", "a genus 0 family is Zariski-locally trivial exactly when it has a section".into()));
        }
    }
    if f.has_section && f.delta != 1 {
        out.push(violation("section", format!("a section has relative degree 1, but delta = {}", f.delta)));
    }
    if f.has_section && !f.rpic_surjective {
        out.push(violation("section", "a family with a section has Pic(C) -> Pic_{C/S}(S) surjective".into()));
    }
    if f.delta == 1 && !f.rpic_surjective {
        out.push(violation("delta one", "delta = 1 forces Pic(C) -> Pic_{C/S}(S) to be surjective".into()));
    }
    out
}

/// Theorems whose hypotheses can be checked on a family and a group.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theorem {
    #[serde(rename = "Thm3.9")]
    Thm3_9,
    #[serde(rename = "ThmB")]
    ThmB,
    #[serde(rename = "CorC")]
    CorC,
    #[serde(rename = "Thm3.18")]
    Thm3_18,
    #[serde(rename = "Thm3.20")]
    Thm3_20,
    #[serde(rename = "Thm4.3")]
    Thm4_3,
    #[serde(rename = "Thm4.4")]
    Thm4_4,
    #[serde(rename = "Thm4.6")]
    Thm4_6,
}

impl Theorem {
    pub const ALL: [Theorem; 8] = [Theorem::Thm3_9, Theorem::ThmB, Theorem::CorC, Theorem::Thm3_18, Theorem::Thm3_20, Theorem::Thm4_3, Theorem::Thm4_4, Theorem::Thm4_6];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::Thm3_9 => "Thm3.9",
            Theorem::ThmB => "ThmB",
            Theorem::CorC => "CorC",
            Theorem::Thm3_18 => "Thm3.18",
            Theorem::Thm3_20 => "Thm3.20",
            Theorem::Thm4_3 => "Thm4.3",
            Theorem::Thm4_4 => "Thm4.4",
            Theorem::Thm4_6 => "Thm4.6",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        Theorem::ALL.into_iter().find(|t| t.id().eq_ignore_ascii_case(&key)).ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

/// Outcome of checking the hypotheses of a theorem.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HypothesisCheck {
    pub theorem: Theorem,
    pub satisfied: bool,
    pub missing: Vec<String>,
}

impl HypothesisCheck {
    pub fn into_result(self) -> Result<()> {
        if self.satisfied {
            Ok(())
        } else {
            Err(Error::HypothesisNotSatisfied { theorem: self.theorem.id().into(), missing: self.missing })
        }
    }
}

const POSITIVE_GENUS: &str = "the family has positive genus";
const GENUS_ZERO: &str = "the family has genus 0";
const END_J: &str = "End(J) = Z for the geometric generic fiber";
const SURJ: &str = "Pic(C) -> Pic_{C/S}(S) is surjective";

/// Evaluates the hypotheses of `theorem` for the family `f` and the group `g`.
pub fn hypothesis_check(f: &CurveFamily, g: &ReductiveGroupData, theorem: Theorem) -> HypothesisCheck {
    let mut missing: Vec<String> = Vec::new();
    let positive = f.genus > 0;
    let d_sc = g.derived_simply_connected();
    let mut need = |ok: bool, what: &str| {
        if !ok {
            missing.push(what.to_string());
        }
    };
    // Hypothesis (b) of the push-out theorem, as the list of its failed parts.
    let part_b = || {
        let mut m = Vec::new();
        if !f.end_jacobian_trivial {
            m.push(format!("hypothesis (b): {END_J}"));
        }
        if !f.rpic_surjective {
            m.push(format!("hypothesis (b): {SURJ}"));
        }
        if !f.rpic0_torsion_free {
            m.push("hypothesis (b): RPic^0(C/S) is torsion-free".to_string());
        }
        m
    };
    match theorem {
        Theorem::Thm3_9 => {
            need(positive, POSITIVE_GENUS);
            need(f.end_jacobian_trivial, END_J);
            need(f.rpic_surjective, SURJ);
        }
        Theorem::ThmB | Theorem::CorC => {
            need(positive, POSITIVE_GENUS);
            if theorem == Theorem::CorC {
                need(g.is_semisimple(), "the group is semisimple");
            }
            let b = part_b();
            if !d_sc && !b.is_empty() {
                let a = if theorem == Theorem::CorC { "hypothesis (a): the group is simply connected" } else { "hypothesis (a): the derived subgroup is simply connected" };
                missing.push(a.to_string());
                missing.extend(b);
            }
        }
        Theorem::Thm3_18 | Theorem::Thm4_3 | Theorem::Thm4_4 => {
            need(positive, POSITIVE_GENUS);
            need(f.end_jacobian_trivial, END_J);
            need(f.rpic_surjective, SURJ);
            need(f.rpic0_torsion_free || d_sc, "RPic^0(C/S) is torsion-free or the derived subgroup is simply connected");
        }
        Theorem::Thm3_20 => need(!positive, GENUS_ZERO),
        Theorem::Thm4_6 => {
            need(!positive, GENUS_ZERO);
            need(f.zariski_locally_trivial || d_sc, "the family is Zariski-locally trivial or the derived subgroup is simply connected");
        }
    }
    HypothesisCheck { theorem, satisfied: missing.is_empty(), missing }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{build_group, parse_group_spec};

    fn grp(s: &str) -> ReductiveGroupData {
        build_group(&parse_group_spec(s).unwrap()).unwrap()
    }

    #[test]
    fn catalog_values() {
        let u = family_from_preset("universal", &[3, 0]).unwrap();
        assert_eq!((u.genus, u.delta, u.rpic_surjective), (3, 4, true));
        let p = family_from_preset("plane_curve", &[5]).unwrap();
        assert_eq!((p.genus, p.delta), (6, 5));
        assert_eq!(family_from_preset("hyperelliptic", &[3]).unwrap().delta, 4);
        assert_eq!(family_from_preset("hyperelliptic", &[4]).unwrap().delta, 2);
        assert_eq!(family_from_preset("universal", &[1, 0]).unwrap().delta, 0);
        let ci = family_from_preset("complete_intersection", &[2, 3]).unwrap();
        assert_eq!((ci.genus, ci.delta), (4, 6));
    }

    #[test]
    fn preset_errors() {
        assert_eq!(family_from_preset("nope", &[]), Err(Error::InvalidPreset("nope".into())));
        assert!(matches!(family_from_preset("universal", &[-1, 0]), Err(Error::InvalidParams(_))));
        assert!(matches!(family_from_preset("hurwitz", &[5, 3]), Err(Error::InvalidParams(_))));
        assert!(matches!(family_from_preset("k3_hyperplane", &[2]), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn violations() {
        let mut f = base(3, 3, String::new());
        assert_eq!(validate_family(&f)[0].message, "3 ∤ 4");
        f = genus0(false, String::new());
        f.zariski_locally_trivial = true;
        assert!(!validate_family(&f).is_empty());
    }

    #[test]
    fn parsing_forms() {
        assert_eq!(parse_family("universal:2,1").unwrap(), family_from_preset("universal", &[2, 1]).unwrap());
        assert_eq!(parse_family("hurwitz(4, 5)").unwrap().delta, 1);
        let raw = parse_family("raw:genus=2,delta=2,end_jacobian_trivial=true").unwrap();
        assert!(raw.end_jacobian_trivial && !raw.rpic_surjective);
        let json = parse_family(r#"{"genus":1,"delta":0}"#).unwrap();
        assert_eq!(json.delta, 0);
        assert!(parse_family(r#"{"genus":1,"delta":0,"extra":1}"#).is_err());
    }

    #[test]
    fn hypothesis_examples() {
        let u = family_from_preset("universal", &[2, 1]).unwrap();
        assert!(hypothesis_check(&u, &grp("PGL(3)"), Theorem::Thm3_9).satisfied);
        let fixed = family_from_preset("fixed_curve", &[2]).unwrap();
        let chk = hypothesis_check(&fixed, &grp("PGL(2)"), Theorem::ThmB);
        assert!(!chk.satisfied);
        assert!(chk.missing.iter().any(|m| m.contains("torsion-free")));
        let p1 = family_from_preset("genus0_nontrivial", &[]).unwrap();
        assert!(hypothesis_check(&p1, &grp("GL(3)"), Theorem::Thm4_6).satisfied);
        assert!(!hypothesis_check(&p1, &grp("PGL(3)"), Theorem::Thm4_6).satisfied);
        assert_eq!("Cor C".parse::<Theorem>().unwrap(), Theorem::CorC);
        assert_eq!("Thm9".parse::<Theorem>(), Err(Error::UnknownTheorem("Thm9".into())));
    }
}
