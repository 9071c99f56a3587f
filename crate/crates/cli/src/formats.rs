//! JSON wire formats and their conversions to the core types.
//!
//! Integers serialize as JSON numbers while they fit in 64 bits and as
//! decimal strings beyond that; rationals always serialize as "num/den"
//! strings. Deserialization accepts either representation, so documents
//! round-trip losslessly.

use std::fmt;

use geomodels::linalg::{rational_string, QMatrix, QVector};
use geomodels::polytope::{Constraint, HPolytope, VPolytope};
use geomodels::snc::SncConfig;
use geomodels::surface::{Curve, PairConfig, SurfaceModel};
use geomodels::Rational;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Parse "p/q" or a plain integer string into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational `{text}`"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("invalid rational `{text}`"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in `{text}`"));
    }
    Ok(Rational::new(n, d))
}

/// Arbitrary-precision integer in JSON: a number when small, a string beyond.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(n) => s.serialize_i64(n),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }
            fn visit_i64<E: de::Error>(self, n: i64) -> Result<JsonInt, E> {
                Ok(JsonInt(BigInt::from(n)))
            }
            fn visit_u64<E: de::Error>(self, n: u64) -> Result<JsonInt, E> {
                Ok(JsonInt(BigInt::from(n)))
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<JsonInt, E> {
                s.trim()
                    .parse()
                    .map(JsonInt)
                    .map_err(|_| E::custom(format!("invalid integer `{s}`")))
            }
        }
        d.deserialize_any(V)
    }
}

/// Exact rational in JSON: always written "num/den".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonRat(pub Rational);

impl Serialize for JsonRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_string(&self.0))
    }
}

impl<'de> Deserialize<'de> for JsonRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonRat;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational \"num/den\" string or an integer")
            }
            fn visit_i64<E: de::Error>(self, n: i64) -> Result<JsonRat, E> {
                Ok(JsonRat(Rational::from_integer(BigInt::from(n))))
            }
            fn visit_u64<E: de::Error>(self, n: u64) -> Result<JsonRat, E> {
                Ok(JsonRat(Rational::from_integer(BigInt::from(n))))
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<JsonRat, E> {
                parse_rational(s).map(JsonRat).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

fn rats(values: &[JsonRat]) -> Vec<Rational> {
    values.iter().map(|r| r.0.clone()).collect()
}

fn json_rats(values: &[Rational]) -> Vec<JsonRat> {
    values.iter().map(|r| JsonRat(r.clone())).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintDto {
    pub normal: Vec<JsonInt>,
    pub bound: JsonInt,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HPolytopeDto {
    pub dim: usize,
    pub constraints: Vec<ConstraintDto>,
}

impl HPolytopeDto {
    pub fn to_polytope(&self) -> Result<HPolytope, String> {
        let constraints = self
            .constraints
            .iter()
            .map(|c| {
                Constraint::new(
                    c.normal.iter().map(|x| x.0.clone()).collect(),
                    c.bound.0.clone(),
                )
            })
            .collect();
        HPolytope::new(self.dim, constraints).map_err(|e| e.to_string())
    }

    pub fn from_polytope(h: &HPolytope) -> Self {
        HPolytopeDto {
            dim: h.dim(),
            constraints: h
                .constraints()
                .iter()
                .map(|c| ConstraintDto {
                    normal: c.normal.iter().map(|x| JsonInt(x.clone())).collect(),
                    bound: JsonInt(c.bound.clone()),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VPolytopeDto {
    pub dim: usize,
    pub vertices: Vec<Vec<JsonRat>>,
}

impl VPolytopeDto {
    pub fn to_polytope(&self) -> Result<VPolytope, String> {
        for v in &self.vertices {
            if v.len() != self.dim {
                return Err(format!(
                    "vertex has {} coordinates, expected {}",
                    v.len(),
                    self.dim
                ));
            }
        }
        let points: Vec<QVector> = self
            .vertices
            .iter()
            .map(|v| QVector::new(rats(v)))
            .collect();
        Ok(VPolytope::from_points(self.dim, &points))
    }

    pub fn from_polytope(v: &VPolytope) -> Self {
        VPolytopeDto {
            dim: v.dim(),
            vertices: v
                .vertices()
                .iter()
                .map(|x| json_rats(x.coords()))
                .collect(),
        }
    }
}

/// A cover of an ambient polytope together with marked regions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChamberDocDto {
    pub ambient: HPolytopeDto,
    pub cells: Vec<HPolytopeDto>,
    #[serde(default)]
    pub regions: Vec<HPolytopeDto>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveDto {
    pub name: String,
    pub class: Vec<JsonRat>,
    pub rational: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceDto {
    pub rank: usize,
    #[serde(rename = "G")]
    pub form: Vec<Vec<JsonRat>>,
    #[serde(rename = "K")]
    pub canonical: Vec<JsonRat>,
    pub chi: i64,
    pub rational_surface: bool,
    pub uniruled: bool,
    pub curves: Vec<CurveDto>,
}

impl SurfaceDto {
    pub fn to_surface(&self) -> Result<SurfaceModel, String> {
        if self.form.len() != self.rank
            || self.form.iter().any(|row| row.len() != self.rank)
        {
            return Err(format!("G must be a {0} x {0} matrix", self.rank));
        }
        if self.canonical.len() != self.rank {
            return Err(format!("K must have {} entries", self.rank));
        }
        for c in &self.curves {
            if c.class.len() != self.rank {
                return Err(format!(
                    "curve `{}` has {} coordinates, expected {}",
                    c.name,
                    c.class.len(),
                    self.rank
                ));
            }
        }
        let rows: Vec<QVector> = self
            .form
            .iter()
            .map(|row| QVector::new(rats(row)))
            .collect();
        let curves = self
            .curves
            .iter()
            .map(|c| Curve::new(&c.name, QVector::new(rats(&c.class)), c.rational))
            .collect();
        SurfaceModel::new(
            QMatrix::from_rows(&rows),
            QVector::new(rats(&self.canonical)),
            curves,
            self.chi,
            self.rational_surface,
            self.uniruled,
        )
        .map_err(|e| e.to_string())
    }

    pub fn from_surface(s: &SurfaceModel) -> Self {
        SurfaceDto {
            rank: s.rank(),
            form: (0..s.rank())
                .map(|i| json_rats(s.form().row(i)))
                .collect(),
            canonical: json_rats(s.canonical().coords()),
            chi: s.chi(),
            rational_surface: s.is_rational_surface(),
            uniruled: s.is_uniruled(),
            curves: s
                .curves()
                .iter()
                .map(|c| CurveDto {
                    name: c.name.clone(),
                    class: json_rats(c.class.coords()),
                    rational: c.rational,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryEntryDto {
    pub curve: String,
    pub coeff: JsonRat,
}

/// A surface plus a boundary divisor; the surface fields are inlined, so a
/// bare surface document parses as a pair with empty boundary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairDto {
    #[serde(flatten)]
    pub surface: SurfaceDto,
    #[serde(default)]
    pub boundary: Vec<BoundaryEntryDto>,
}

impl PairDto {
    pub fn to_pair(&self) -> Result<PairConfig, String> {
        let s = self.surface.to_surface()?;
        let boundary: Vec<(&str, Rational)> = self
            .boundary
            .iter()
            .map(|b| (b.curve.as_str(), b.coeff.0.clone()))
            .collect();
        PairConfig::new(s, &boundary).map_err(|e| e.to_string())
    }

    pub fn from_pair(p: &PairConfig) -> Self {
        PairDto {
            surface: SurfaceDto::from_surface(p.surface()),
            boundary: p
                .boundary()
                .iter()
                .map(|(i, coeff)| BoundaryEntryDto {
                    curve: p.surface().curves()[*i].name.clone(),
                    coeff: JsonRat(coeff.clone()),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SncDivisorDto {
    pub name: String,
    pub coeff: JsonRat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SncStratumDto {
    pub divisors: Vec<usize>,
    pub components: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SncConfigDto {
    pub dim: usize,
    pub divisors: Vec<SncDivisorDto>,
    #[serde(default)]
    pub pair_strata: Vec<SncStratumDto>,
    #[serde(default)]
    pub triple_strata: Vec<SncStratumDto>,
}

impl SncConfigDto {
    pub fn to_config(&self) -> Result<SncConfig, String> {
        let divisors: Vec<(&str, Rational)> = self
            .divisors
            .iter()
            .map(|d| (d.name.as_str(), d.coeff.0.clone()))
            .collect();
        let mut pairs = Vec::with_capacity(self.pair_strata.len());
        for st in &self.pair_strata {
            match st.divisors[..] {
                [i, j] => pairs.push((i, j, st.components)),
                _ => return Err(String::from("pair stratum must list 2 divisors")),
            }
        }
        let mut triples = Vec::with_capacity(self.triple_strata.len());
        for st in &self.triple_strata {
            match st.divisors[..] {
                [i, j, k] => triples.push((i, j, k, st.components)),
                _ => return Err(String::from("triple stratum must list 3 divisors")),
            }
        }
        SncConfig::new(self.dim, &divisors, &pairs, &triples).map_err(|e| e.to_string())
    }

    pub fn from_config(c: &SncConfig) -> Self {
        SncConfigDto {
            dim: c.dim(),
            divisors: c.divisors()[..c.boundary_count()]
                .iter()
                .map(|d| SncDivisorDto {
                    name: d.name.clone(),
                    coeff: JsonRat(d.coefficient.clone()),
                })
                .collect(),
            pair_strata: c
                .pair_strata()
                .iter()
                .map(|&(i, j, components)| SncStratumDto {
                    divisors: vec![i, j],
                    components,
                })
                .collect(),
            triple_strata: c
                .triple_strata()
                .iter()
                .map(|&(i, j, k, components)| SncStratumDto {
                    divisors: vec![i, j, k],
                    components,
                })
                .collect(),
        }
    }
}

/// Parse a JSON document into a DTO with a uniform error message.
pub fn parse_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, String> {
    serde_json::from_str(text).map_err(|e| format!("malformed JSON: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use geomodels::rat::rat;

    #[test]
    fn rational_strings_parse_and_render() {
        assert_eq!(parse_rational("3/5").unwrap(), rat(3, 5));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7, 1));
        assert_eq!(parse_rational(" 2 / 4 ").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        let r = JsonRat(rat(-1, 2));
        assert_eq!(serde_json::to_string(&r).unwrap(), "\"-1/2\"");
    }

    #[test]
    fn big_integers_fall_back_to_strings() {
        let small = JsonInt(BigInt::from(42));
        assert_eq!(serde_json::to_string(&small).unwrap(), "42");
        let big = JsonInt(BigInt::from(u64::MAX) * BigInt::from(3));
        let text = serde_json::to_string(&big).unwrap();
        assert!(text.starts_with('"'));
        let back: JsonInt = serde_json::from_str(&text).unwrap();
        assert_eq!(back, big);
    }

    #[test]
    fn polytope_documents_round_trip() {
        let doc = r#"{"dim": 2, "constraints": [
            {"normal": [1, 0], "bound": 0},
            {"normal": [-1, -1], "bound": -2}
        ]}"#;
        let dto: HPolytopeDto = parse_json(doc).unwrap();
        let h = dto.to_polytope().unwrap();
        let again = HPolytopeDto::from_polytope(&h);
        let h2 = again.to_polytope().unwrap();
        assert_eq!(h.constraints(), h2.constraints());
    }

    #[test]
    fn surface_documents_validate_shapes() {
        let doc = r#"{"rank": 2, "G": [["1"]], "K": ["0", "0"], "chi": 1,
                      "rational_surface": true, "uniruled": true, "curves": []}"#;
        let dto: SurfaceDto = parse_json(doc).unwrap();
        assert!(dto.to_surface().unwrap_err().contains("2 x 2"));
    }

    #[test]
    fn bare_surface_parses_as_pair_with_empty_boundary() {
        let pair = geomodels::fixtures::example_one_pair(5, rat(1, 10), rat(1, 5));
        let dto = PairDto::from_pair(&pair);
        let text = serde_json::to_string(&dto).unwrap();
        let back: PairDto = parse_json(&text).unwrap();
        let cfg = back.to_pair().unwrap();
        assert_eq!(cfg.coefficient_of("E"), Some(&rat(1, 5)));

        let surface_only = serde_json::to_string(&dto.surface).unwrap();
        let as_pair: PairDto = parse_json(&surface_only).unwrap();
        assert!(as_pair.to_pair().unwrap().boundary().is_empty());
    }

    #[test]
    fn snc_documents_round_trip() {
        let cfg = geomodels::fixtures::snc_triple_point(rat(3, 5), rat(3, 5), rat(3, 5));
        let dto = SncConfigDto::from_config(&cfg);
        let text = serde_json::to_string(&dto).unwrap();
        let back: SncConfigDto = parse_json(&text).unwrap();
        let cfg2 = back.to_config().unwrap();
        assert_eq!(cfg2.dim(), 3);
        assert_eq!(cfg2.pair_strata(), cfg.pair_strata());
        assert_eq!(cfg2.triple_strata(), cfg.triple_strata());
    }
}
