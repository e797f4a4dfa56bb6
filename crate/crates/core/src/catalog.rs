//! Case catalog: human-readable TOML files holding the input data of each case
//! and the expected values its checks are compared against.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::bb::{symplectic_completion, FixedComponent, GammaCharacter, WeightVector};
use crate::chow::{IntersectionInputs, RingSpec};
use crate::error::CatalogError;
use crate::graded::{FiltKind, FiltTable, LaurentPoly};

const BUILTIN: &[(&str, &str)] = &[
    ("og6-genus2-sl2.toml", include_str!("../catalog/og6-genus2-sl2.toml")),
    ("genus1.toml", include_str!("../catalog/genus1.toml")),
];

/// A polynomial as a coefficient list starting at exponent `low`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyRecord {
    #[serde(default)]
    pub low: i64,
    pub coeffs: Vec<i64>,
}

impl PolyRecord {
    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::from_coeffs(self.low, &self.coeffs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CharacterRecord {
    Trivial {
        #[serde(default)]
        dim: Option<u64>,
    },
    Regular {
        order: u64,
    },
    Custom {
        invariant: PolyRecord,
        variant: PolyRecord,
    },
}

impl Default for CharacterRecord {
    fn default() -> Self {
        CharacterRecord::Trivial { dim: None }
    }
}

impl CharacterRecord {
    pub fn to_character(&self) -> GammaCharacter {
        match self {
            CharacterRecord::Trivial { dim } => GammaCharacter::Trivial {
                dim: dim.map(BigUint::from),
            },
            CharacterRecord::Regular { order } => GammaCharacter::Regular { order: *order },
            CharacterRecord::Custom { invariant, variant } => GammaCharacter::Custom {
                invariant: invariant.to_poly(),
                variant: variant.to_poly(),
            },
        }
    }
}

/// A torus-fixed component. Either the full tangent weights or the weights
/// of a Lagrangian subspace may be given; the latter are completed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentRecord {
    pub name: String,
    pub poincare: PolyRecord,
    pub codim: u32,
    #[serde(default)]
    pub weights: Option<Vec<i64>>,
    #[serde(default)]
    pub lagrangian_weights: Option<Vec<i64>>,
    #[serde(default)]
    pub character: CharacterRecord,
}

impl ComponentRecord {
    pub fn to_component(&self) -> Result<FixedComponent, CatalogError> {
        let completed = self
            .lagrangian_weights
            .as_ref()
            .map(|w| symplectic_completion(&WeightVector(w.clone())));
        let weights = match (&self.weights, completed) {
            (Some(w), Some(c)) => {
                let w = WeightVector(w.clone());
                if w.sorted() != c.sorted() {
                    return Err(CatalogError::validation(
                        "weights agree with their Lagrangian completion",
                        format!("{}: {:?} vs {:?}", self.name, w.0, c.0),
                    ));
                }
                Some(w)
            }
            (Some(w), None) => Some(WeightVector(w.clone())),
            (None, c) => c,
        };
        let mut c = FixedComponent::new(self.name.clone(), self.poincare.to_poly(), self.codim)
            .with_gamma(self.character.to_character());
        if let Some(w) = weights {
            c = c.with_weights(w);
        }
        c.validate()
            .map_err(|e| CatalogError::validation("fixed component is consistent (codim_attr and character)", e))?;
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableRecord {
    pub kind: FiltKind,
    /// `(degree, level, dimension)` triples.
    pub entries: Vec<[i64; 3]>,
}

impl TableRecord {
    pub fn to_table(&self) -> Result<FiltTable, CatalogError> {
        let mut t = FiltTable::new(self.kind);
        for [d, k, n] in &self.entries {
            let n = u64::try_from(*n).map_err(|_| {
                CatalogError::validation("table dimensions are nonnegative", format!("({d}, {k}) = {n}"))
            })?;
            t.add(*d, *k, &BigUint::from(n));
        }
        Ok(t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorRecord {
    pub name: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeRecord {
    pub monomial: String,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingRecord {
    pub generators: Vec<GeneratorRecord>,
    #[serde(default)]
    pub relations: Vec<String>,
    pub top_degree: u32,
    pub degree_map: Vec<DegreeRecord>,
}

impl RingRecord {
    pub fn to_ring(&self) -> Result<Arc<RingSpec>, CatalogError> {
        let gens: Vec<(&str, u32)> = self.generators.iter().map(|g| (g.name.as_str(), g.degree)).collect();
        let rels: Vec<&str> = self.relations.iter().map(String::as_str).collect();
        let map: Vec<(&str, BigInt)> = self
            .degree_map
            .iter()
            .map(|d| (d.monomial.as_str(), BigInt::from(d.value)))
            .collect();
        RingSpec::new(&gens, &rels, self.top_degree, &map)
            .map_err(|e| CatalogError::validation("ring presentation is well posed", e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypersurfaceRecord {
    pub name: String,
    pub ambient_dim: u32,
    pub degree: u32,
    /// The Euler-characteristic constant this hypersurface should reproduce.
    pub matches: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChowRecord {
    pub khat_ring: RingRecord,
    pub pairing_ring: RingRecord,
    pub base_cotangent: String,
    pub hyperplane: String,
    pub normal_c1: String,
    pub twist_line: String,
    pub center_cotangent: String,
    pub tautological_dual: String,
    pub restricted_class: String,
    pub lagrangian_dim: u32,
    pub euler_lagrangian_n: i64,
    pub euler_center: i64,
    pub pencil_ambient_dim: u32,
    pub euler_quadric_surface: i64,
    pub quadric_nodes: u64,
    pub euler_quartic_surface: i64,
    pub quartic_nodes: u64,
    pub num_centers: u64,
    pub transverse_points: u64,
    /// Smooth hypersurfaces whose Euler characteristics cross-check the constants above.
    #[serde(default)]
    pub euler_cross_checks: Vec<HypersurfaceRecord>,
}

impl ChowRecord {
    /// Looks up an Euler-characteristic constant by field name.
    pub fn constant(&self, name: &str) -> Option<i64> {
        match name {
            "euler_lagrangian_n" => Some(self.euler_lagrangian_n),
            "euler_center" => Some(self.euler_center),
            "euler_quadric_surface" => Some(self.euler_quadric_surface),
            "euler_quartic_surface" => Some(self.euler_quartic_surface),
            _ => None,
        }
    }

    pub fn to_inputs(&self) -> Result<IntersectionInputs, CatalogError> {
        Ok(IntersectionInputs {
            khat_ring: self.khat_ring.to_ring()?,
            base_cotangent: self.base_cotangent.clone(),
            hyperplane: self.hyperplane.clone(),
            normal_c1: self.normal_c1.clone(),
            twist_line: self.twist_line.clone(),
            pairing_ring: self.pairing_ring.to_ring()?,
            center_cotangent: self.center_cotangent.clone(),
            tautological_dual: self.tautological_dual.clone(),
            restricted_class: self.restricted_class.clone(),
            lagrangian_dim: self.lagrangian_dim,
            euler_lagrangian_n: self.euler_lagrangian_n.into(),
            euler_center: self.euler_center.into(),
            pencil_ambient_dim: self.pencil_ambient_dim,
            euler_quadric_surface: self.euler_quadric_surface.into(),
            quadric_nodes: self.quadric_nodes,
            euler_quartic_surface: self.euler_quartic_surface.into(),
            quartic_nodes: self.quartic_nodes,
            num_centers: self.num_centers,
            transverse_points: self.transverse_points,
        })
    }
}

/// The two relevant strata of the resolution and the singular E-polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrataRecord {
    pub sigma: PolyRecord,
    #[serde(default)]
    pub sigma_character: CharacterRecord,
    pub omega: PolyRecord,
    #[serde(default)]
    pub omega_character: CharacterRecord,
    /// The Betti stratum is the invariant part of an exterior algebra on this many
    /// negated generators.
    pub sigma_exterior_generators: usize,
    /// E-polynomial of the singular Betti space.
    pub singular_e: PolyRecord,
    /// E-polynomials of the resolution fibres over each stratum.
    pub sigma_fibre: PolyRecord,
    pub omega_fibre: PolyRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Og6Tables {
    /// Perverse diamond of the resolution.
    pub resolution_perverse: TableRecord,
    /// Perverse levels of the Γ-variant intersection cohomology.
    pub ih_variant_perverse: TableRecord,
    pub singular_perverse: TableRecord,
    pub singular_weight: TableRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Og6Data {
    pub dimension: i64,
    pub rhl_center: i64,
    pub resolution_loci: Vec<ComponentRecord>,
    pub singular_loci: Vec<ComponentRecord>,
    pub strata: StrataRecord,
    pub tables: Og6Tables,
    /// Number of degree-one generators of the cohomology of the Jacobian.
    pub gl_jacobian_generators: usize,
    pub chow: ChowRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Genus1Data {
    pub pw_max_n: u32,
    pub poincare_n: u32,
    pub divisibility_max_n: u32,
    /// `p(1), p(2), ...`
    pub partition_counts: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Og6,
    Genus1,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ViolationRecord {
    pub low: [i64; 2],
    pub high: [i64; 2],
    pub low_dim: u64,
    pub high_dim: u64,
}

/// An expected value; exactly one of the value fields is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedRecord {
    pub check: String,
    pub provenance: String,
    #[serde(default)]
    pub integer: Option<i64>,
    #[serde(default)]
    pub holds: Option<bool>,
    #[serde(default)]
    pub poly: Option<PolyRecord>,
    #[serde(default)]
    pub var: Option<String>,
    #[serde(default)]
    pub table: Option<TableRecord>,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub class: Option<String>,
    #[serde(default)]
    pub violations: Option<Vec<ViolationRecord>>,
}

impl ExpectedRecord {
    fn value_count(&self) -> usize {
        [
            self.integer.is_some(),
            self.holds.is_some(),
            self.poly.is_some(),
            self.table.is_some(),
            self.matrix.is_some(),
            self.class.is_some(),
            self.violations.is_some(),
        ]
        .into_iter()
        .filter(|x| *x)
        .count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseFile {
    pub name: String,
    pub description: String,
    pub engine: Engine,
    #[serde(default)]
    pub og6: Option<Og6Data>,
    #[serde(default)]
    pub genus1: Option<Genus1Data>,
    #[serde(default)]
    pub expected: Vec<ExpectedRecord>,
}

impl CaseFile {
    pub fn parse(path: &str, text: &str) -> Result<Self, CatalogError> {
        toml::from_str(text).map_err(|e| CatalogError::Parse {
            path: path.to_string(),
            reason: e.to_string(),
        })
    }

    /// Runs every component-level invariant.
    pub fn validate(&self) -> Result<(), CatalogError> {
        let mut seen = BTreeSet::new();
        for e in &self.expected {
            if !seen.insert(e.check.as_str()) {
                return Err(CatalogError::validation(
                    "expected values have unique check names",
                    format!("{}: {}", self.name, e.check),
                ));
            }
            if e.value_count() != 1 {
                return Err(CatalogError::validation(
                    "each expected record carries exactly one value",
                    format!("{}: {}", self.name, e.check),
                ));
            }
            if e.provenance.trim().is_empty() {
                return Err(CatalogError::validation(
                    "each expected record has a provenance",
                    format!("{}: {}", self.name, e.check),
                ));
            }
            if let Some(t) = &e.table {
                t.to_table()?;
            }
        }
        match self.engine {
            Engine::Og6 => {
                let d = self
                    .og6
                    .as_ref()
                    .ok_or_else(|| CatalogError::validation("og6 cases carry an [og6] section", &self.name))?;
                for c in d.resolution_loci.iter().chain(&d.singular_loci) {
                    c.to_component()?;
                }
                let s = &d.strata;
                for (name, p, ch) in [
                    ("sigma", &s.sigma, &s.sigma_character),
                    ("omega", &s.omega, &s.omega_character),
                ] {
                    strata_component(name, p, ch)
                        .validate()
                        .map_err(|e| CatalogError::validation("stratum character is consistent", e))?;
                }
                let t = &d.tables;
                for (name, rec, kind) in [
                    ("resolution_perverse", &t.resolution_perverse, FiltKind::Perverse),
                    ("ih_variant_perverse", &t.ih_variant_perverse, FiltKind::Perverse),
                    ("singular_perverse", &t.singular_perverse, FiltKind::Perverse),
                    ("singular_weight", &t.singular_weight, FiltKind::Weight),
                ] {
                    if rec.kind != kind {
                        return Err(CatalogError::validation(
                            "tables have the expected filtration kind",
                            format!("{name} is {}, expected {kind}", rec.kind),
                        ));
                    }
                    rec.to_table()?;
                }
                d.chow.to_inputs()?;
                for h in &d.chow.euler_cross_checks {
                    if d.chow.constant(&h.matches).is_none() || h.ambient_dim < 2 || h.degree == 0 {
                        return Err(CatalogError::validation(
                            "Euler cross-checks name a known constant and a positive-dimensional hypersurface",
                            &h.name,
                        ));
                    }
                }
            }
            Engine::Genus1 => {
                self.genus1
                    .as_ref()
                    .ok_or_else(|| CatalogError::validation("genus1 cases carry a [genus1] section", &self.name))?;
            }
        }
        Ok(())
    }

    pub fn expected(&self, check: &str) -> Option<&ExpectedRecord> {
        self.expected.iter().find(|e| e.check == check)
    }
}

/// A stratum seen as a codimension-zero component, so its character can be split.
pub fn strata_component(name: &str, p: &PolyRecord, ch: &CharacterRecord) -> FixedComponent {
    FixedComponent::new(name, p.to_poly(), 0).with_gamma(ch.to_character())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CaseCatalog {
    cases: BTreeMap<String, CaseFile>,
}

impl CaseCatalog {
    /// The catalog shipped with the library.
    pub fn builtin() -> Result<Self, CatalogError> {
        Self::from_sources(BUILTIN.iter().map(|(p, t)| (format!("builtin:{p}"), t.to_string())))
    }

    /// Loads a single `.toml` file or every `.toml` file in a directory.
    pub fn load(path: &Path) -> Result<Self, CatalogError> {
        let io = |p: &Path, e: std::io::Error| CatalogError::Io {
            path: p.display().to_string(),
            reason: e.to_string(),
        };
        let mut files = Vec::new();
        if path.is_dir() {
            for entry in fs::read_dir(path).map_err(|e| io(path, e))? {
                let p = entry.map_err(|e| io(path, e))?.path();
                if p.extension().is_some_and(|x| x == "toml") {
                    files.push(p);
                }
            }
            files.sort();
        } else {
            files.push(path.to_path_buf());
        }
        let mut sources = Vec::new();
        for f in files {
            let text = fs::read_to_string(&f).map_err(|e| io(&f, e))?;
            sources.push((f.display().to_string(), text));
        }
        Self::from_sources(sources)
    }

    pub fn from_sources(sources: impl IntoIterator<Item = (String, String)>) -> Result<Self, CatalogError> {
        let mut cases = BTreeMap::new();
        for (path, text) in sources {
            let case = CaseFile::parse(&path, &text)?;
            case.validate()?;
            if cases.contains_key(&case.name) {
                return Err(CatalogError::validation("case names are unique", &case.name));
            }
            cases.insert(case.name.clone(), case);
        }
        Ok(Self { cases })
    }

    pub fn get(&self, name: &str) -> Option<&CaseFile> {
        self.cases.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.cases.keys().map(String::as_str)
    }
}
