//! Global invariants of an elliptic curve over `F_p(t)`: bad places,
//! Shioda-Tate rank, conductor, torsion certificates and the BSD order of
//! Sha at analytic rank zero.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::funcfield::Place;
use crate::gfpoly::{Field, Polynomial};
use crate::localred::{local_at_infinity, places_dividing, tate_algorithm, Kodaira, LocalReduction};
use crate::weierstrass::WeierstrassModel;

/// A number that was either established or deliberately left open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Value(u64),
    /// Rendered verbatim, e.g. `not-computed(isotrivial)`.
    Missing(String),
}

impl Outcome {
    pub fn value(&self) -> Option<u64> {
        match self {
            Outcome::Value(v) => Some(*v),
            Outcome::Missing(_) => None,
        }
    }

    fn not_computed(reason: &str) -> Self {
        Outcome::Missing(format!("not-computed({reason})"))
    }

    fn not_certified(reason: &str) -> Self {
        Outcome::Missing(format!("not-certified({reason})"))
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Value(v) => write!(f, "{v}"),
            Outcome::Missing(s) => f.write_str(s),
        }
    }
}

impl Serialize for Outcome {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Outcome::Value(v) => s.serialize_u64(*v),
            Outcome::Missing(m) => s.serialize_str(m),
        }
    }
}

/// A conclusion together with the result it rests on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub claim: String,
    pub lemma: String,
    /// Depends on a hypothesis that is not verified here.
    pub conditional: bool,
}

impl Certificate {
    fn new(claim: impl Into<String>, lemma: &str) -> Self {
        Self { claim: claim.into(), lemma: lemma.into(), conditional: false }
    }

    fn conditional(claim: impl Into<String>, lemma: &str) -> Self {
        Self { claim: claim.into(), lemma: lemma.into(), conditional: true }
    }
}

/// `Σ f_v (v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conductor {
    pub terms: Vec<(Place, u32)>,
    pub degree: u32,
}

impl fmt::Display for Conductor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{e}{v}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Serialize for Conductor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Conductor", 2)?;
        st.serialize_field("divisor", &self.to_string())?;
        st.serialize_field("degree", &self.degree)?;
        st.end()
    }
}

impl Serialize for LocalReduction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LocalReduction", 6)?;
        st.serialize_field("place", &self.place)?;
        st.serialize_field("kodaira", &self.kodaira)?;
        st.serialize_field("v_delta", &self.v_delta_min)?;
        st.serialize_field("m_geom", &self.m_geom)?;
        st.serialize_field("tamagawa", &self.tamagawa)?;
        st.serialize_field("f", &self.f_cond)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlobalReport {
    pub prime: u64,
    #[serde(skip)]
    pub model: WeierstrassModel,
    pub delta_factored: String,
    pub j: String,
    pub height: u32,
    pub isotrivial: bool,
    /// Bad places in canonical order, infinity last.
    pub places: Vec<LocalReduction>,
    pub conductor: Conductor,
    pub l_degree: i64,
    pub rank_geom: Outcome,
    pub torsion: Outcome,
    pub sha: Outcome,
    pub certificates: Vec<Certificate>,
    /// No place needed a rescaling.
    #[serde(skip)]
    pub globally_minimal: bool,
    /// Product of the Tamagawa numbers.
    #[serde(skip)]
    pub tamagawa_product: u64,
}

impl GlobalReport {
    pub fn reduction_at(&self, place: &Place) -> Option<&LocalReduction> {
        self.places.iter().find(|r| &r.place == place)
    }

    pub fn has_certificate(&self, lemma: &str) -> bool {
        self.certificates.iter().any(|c| c.lemma == lemma)
    }
}

/// Local data at every bad place, finite places first.
pub fn local_data(model: &WeierstrassModel) -> Result<Vec<LocalReduction>> {
    let height = model.height()?;
    let delta = model.discriminant();
    let delta = delta
        .as_polynomial()
        .ok_or_else(|| Error::Precondition("model must be polynomial".into()))?;
    let mut out = Vec::new();
    for (place, _) in places_dividing(delta)? {
        let red = tate_algorithm(model, &place)?;
        if !red.kodaira.is_good() {
            out.push(red);
        }
    }
    let inf = local_at_infinity(model, height)?;
    if !inf.kodaira.is_good() {
        out.push(inf);
    }
    Ok(out)
}

/// Places of bad reduction of a polynomial model.
pub fn bad_places(model: &WeierstrassModel) -> Result<Vec<Place>> {
    Ok(local_data(model)?.into_iter().map(|r| r.place).collect())
}

/// Geometric Mordell-Weil rank `8 - Σ (m_v - 1) deg v` of a nonisotrivial
/// rational elliptic surface.
pub fn shioda_tate_rank(height: u32, isotrivial: bool, minimal: bool, places: &[LocalReduction]) -> Result<Outcome> {
    if isotrivial {
        return Ok(Outcome::not_computed("isotrivial"));
    }
    if height != 1 {
        return Ok(Outcome::not_computed(&format!("height {height}")));
    }
    if !minimal {
        return Ok(Outcome::not_computed("model not globally minimal"));
    }
    let used: u64 = places.iter().map(|r| (r.m_geom as u64 - 1) * r.place.degree() as u64).sum();
    if used > 8 {
        return Err(Error::Inconsistency(format!("Shioda-Tate: component excess {used} > 8")));
    }
    Ok(Outcome::Value(8 - used))
}

/// Conductor divisor and `deg L = deg n - 4`.
pub fn conductor_and_l_degree(places: &[LocalReduction], isotrivial: bool) -> Result<(Conductor, i64)> {
    let terms: Vec<(Place, u32)> =
        places.iter().filter(|r| r.f_cond > 0).map(|r| (r.place.clone(), r.f_cond)).collect();
    let degree: u32 = terms.iter().map(|(v, f)| f * v.degree() as u32).sum();
    let l_degree = degree as i64 - 4;
    if l_degree < 0 && !isotrivial {
        return Err(Error::Inconsistency(format!("negative L-degree {l_degree}")));
    }
    Ok((Conductor { terms, degree }, l_degree))
}

/// Torsion order, certified trivial when both the `p`-part and the
/// prime-to-`p` part are ruled out.
pub fn torsion_certificate(model: &WeierstrassModel, places: &[LocalReduction]) -> (Outcome, Vec<Certificate>) {
    let p = model.p();
    let mut certs = Vec::new();
    let j = model.j_invariant();
    let p_part = if !model.is_pth_power_j() {
        certs.push(Certificate::new("no p-torsion: j is not a p-th power", "j-not-pth-power"));
        true
    } else if j.is_zero() && p % 3 == 2 {
        certs.push(Certificate::new(
            format!("no p-torsion: j = 0 and {p} = 2 mod 3, so E is supersingular"),
            "deuring",
        ));
        true
    } else {
        false
    };
    let witness = places.iter().find(|r| matches!(r.kodaira, Kodaira::II | Kodaira::IIStar));
    let prime_to_p = match witness {
        Some(r) => {
            certs.push(Certificate::new(
                format!("no prime-to-p torsion: type {} at {}", r.kodaira, r.place),
                "additive-II-or-II*",
            ));
            true
        }
        None => false,
    };
    let outcome = match (p_part, prime_to_p) {
        (true, true) => {
            certs.push(Certificate::new("E(F_p(t))[tors] = 0", "torsion"));
            Outcome::Value(1)
        }
        (false, _) => Outcome::not_certified("p-part"),
        (true, false) => Outcome::not_certified("prime-to-p part"),
    };
    (outcome, certs)
}

/// `#Sha = L(E,1) #tors^2 / (R τ)` at rank zero with `L(E,s) = 1`.
pub fn sha_order_bsd(height: u32, rank: Option<u64>, l_degree: i64, torsion: Option<u64>, tau: u64) -> Result<Outcome> {
    if height > 2 {
        return Ok(Outcome::not_certified(&format!("height {height}")));
    }
    match rank {
        Some(0) => {}
        Some(_) => return Ok(Outcome::not_certified("positive rank")),
        None => return Ok(Outcome::not_certified("rank unknown")),
    }
    if l_degree != 0 {
        return Ok(Outcome::not_certified(&format!("L-degree {l_degree}")));
    }
    let Some(tors) = torsion else {
        return Ok(Outcome::not_certified("torsion unknown"));
    };
    let num = tors * tors;
    if tau == 0 || num % tau != 0 {
        return Err(Error::Inconsistency(format!("BSD gives non-integral #Sha = {num}/{tau}")));
    }
    Ok(Outcome::Value(num / tau))
}

/// Mordell-Weil ranks established outside this crate.
struct KnownRank {
    p: u64,
    rank: u64,
    source: &'static str,
}

const REFERENCE_CURVE_RANKS: &[KnownRank] = &[KnownRank { p: 47, rank: 0, source: "Magma" }];

fn known_rank(model: &WeierstrassModel) -> Option<&'static KnownRank> {
    let p = model.p();
    let k = REFERENCE_CURVE_RANKS.iter().find(|k| k.p == p)?;
    (WeierstrassModel::reference_curve(p).ok()? == *model).then_some(k)
}

fn format_factored(f: &Polynomial) -> Result<String> {
    let fac = f.factorize()?;
    let mut parts = Vec::new();
    if fac.unit != 1 {
        parts.push(f.field().display_elem(&fac.unit));
    }
    let mut factors = fac.factors.clone();
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    for (g, e) in factors {
        let base = if g.is_monic() && g.coeffs().len() == 2 && g.coeff(0) == 0 {
            "t".to_string()
        } else {
            format!("({})", g.compact())
        };
        parts.push(if e == 1 { base } else { format!("{base}^{e}") });
    }
    Ok(if parts.is_empty() { "1".into() } else { parts.join(" * ") })
}

/// Runs the whole pipeline for one prime.
pub fn analyze(p: u64, model: &WeierstrassModel) -> Result<GlobalReport> {
    if model.p() != p {
        return Err(Error::InvalidArgument(format!("model is defined over F_{}, not F_{p}", model.p())));
    }
    let model = model.clear_denominators()?;
    let height = model.height()?;
    let places = local_data(&model)?;
    let isotrivial = model.is_isotrivial();
    let globally_minimal = places.iter().all(|r| r.restarts == 0)
        && local_at_infinity(&model, height)?.restarts == 0;
    let mut certs = Vec::new();

    for r in &places {
        let ogg = r.v_delta_min as i64 - r.m_geom as i64 + 1;
        if r.f_cond as i64 != ogg {
            return Err(Error::Inconsistency(format!("Ogg's formula fails at {}", r.place)));
        }
    }

    let mut delta = model.discriminant().as_polynomial().cloned().expect("polynomial model");
    for r in &places {
        if let Place::Finite(pi) = &r.place {
            for _ in 0..12 * r.restarts {
                delta = delta.div_exact(pi)?;
            }
        }
    }

    let rank = shioda_tate_rank(height, isotrivial, globally_minimal, &places)?;
    let mut rank_value = rank.value();
    match rank.value() {
        Some(0) => certs.push(Certificate::new(
            "rank E(F_p(t)) = 0: geometric rank 0 bounds it",
            "shioda-tate",
        )),
        Some(r) => certs.push(Certificate::new(format!("rank E(F_p(t)) <= {r}"), "shioda-tate")),
        None => {}
    }
    if rank_value.is_none() {
        if let Some(k) = known_rank(&model) {
            certs.push(Certificate::conditional(
                format!("rank E(F_p(t)) = {} (external, {})", k.rank, k.source),
                "external-rank",
            ));
            rank_value = Some(k.rank);
        }
    }

    let (conductor, l_degree) = conductor_and_l_degree(&places, isotrivial)?;
    if l_degree == 0 {
        let claim = "L(E,s) = 1: conductor degree 4";
        certs.push(if isotrivial {
            Certificate::conditional(claim, "l-degree")
        } else {
            Certificate::new(claim, "l-degree")
        });
    }

    let (torsion, tcerts) = torsion_certificate(&model, &places);
    certs.extend(tcerts);

    let tau: u64 = places.iter().map(|r| r.tamagawa as u64).product();
    let sha = sha_order_bsd(height, rank_value, l_degree, torsion.value(), tau)?;
    if let Some(s) = sha.value() {
        let conditional = certs.iter().any(|c| c.conditional);
        let claim = format!("#Sha = {s} (tau = {tau})");
        certs.push(if conditional {
            Certificate::conditional(claim, "bsd")
        } else {
            Certificate::new(claim, "bsd")
        });
    }

    Ok(GlobalReport {
        prime: p,
        delta_factored: format_factored(&delta)?,
        j: model.j_invariant().to_string(),
        height,
        isotrivial,
        places,
        conductor,
        l_degree,
        rank_geom: rank,
        torsion,
        sha,
        certificates: certs,
        globally_minimal,
        tamagawa_product: tau,
        model,
    })
}
