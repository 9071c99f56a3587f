//! Named reference inputs so the binary can be exercised without JSON files.

use geomodels::fixtures::{
    blown_projective_plane, example_one, general_type_blowups, hirzebruch, iterated_blowup_plane,
    ruled_census, snc_triple_point, snc_two_curves,
};
use geomodels::polytope::{Constraint, HPolytope};
use geomodels::rat::rat;
use geomodels::snc::SncConfig;
use geomodels::surface::PairConfig;
use num_bigint::BigInt;

pub enum FixtureData {
    Polytope(HPolytope),
    Pair(PairConfig),
    Snc(SncConfig),
}

/// Sorted list of everything `named` accepts, for error messages and docs.
pub const FIXTURE_NAMES: [&str; 9] = [
    "blown-plane",
    "example-1",
    "general-type",
    "hirzebruch",
    "interval",
    "iterated-plane",
    "ruled",
    "snc-triple-point",
    "snc-two-curves",
];

pub fn named(name: &str) -> Option<FixtureData> {
    let pair = |surface, boundary: &[(&str, _)]| {
        FixtureData::Pair(PairConfig::new(surface, boundary).expect("fixture pair is valid"))
    };
    Some(match name {
        "interval" => FixtureData::Polytope(unit_interval()),
        "blown-plane" => pair(blown_projective_plane(), &[("E", rat(1, 2))]),
        "example-1" => pair(example_one(5), &[("S", rat(1, 10)), ("E", rat(1, 10))]),
        "hirzebruch" => pair(hirzebruch(8), &[("H", rat(1, 2)), ("E", rat(1, 2))]),
        "ruled" => pair(ruled_census(3), &[]),
        "general-type" => pair(general_type_blowups(5), &[]),
        "iterated-plane" => pair(iterated_blowup_plane(3), &[]),
        "snc-two-curves" => FixtureData::Snc(snc_two_curves(rat(3, 5), rat(3, 5))),
        "snc-triple-point" => FixtureData::Snc(snc_triple_point(rat(3, 5), rat(3, 5), rat(3, 5))),
        _ => return None,
    })
}

/// The unit interval 0 <= x <= 1 as a half-space system.
fn unit_interval() -> HPolytope {
    HPolytope::new(
        1,
        vec![
            Constraint::new(vec![BigInt::from(1)], BigInt::from(0)),
            Constraint::new(vec![BigInt::from(-1)], BigInt::from(-1)),
        ],
    )
    .expect("interval is a valid system")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::{parse_json, HPolytopeDto, PairDto, SncConfigDto};

    #[test]
    fn every_name_resolves() {
        for name in FIXTURE_NAMES {
            assert!(named(name).is_some(), "missing fixture {name}");
        }
        assert!(named("no-such-fixture").is_none());
    }

    /// Each fixture survives a trip through its wire format unchanged.
    #[test]
    fn fixtures_round_trip_through_json() {
        for name in FIXTURE_NAMES {
            match named(name).unwrap() {
                FixtureData::Polytope(h) => {
                    let dto = HPolytopeDto::from_polytope(&h);
                    let text = serde_json::to_string(&dto).unwrap();
                    let back: HPolytopeDto = parse_json(&text).unwrap();
                    assert_eq!(back, dto, "{name} drifted");
                    back.to_polytope().unwrap();
                }
                FixtureData::Pair(p) => {
                    let dto = PairDto::from_pair(&p);
                    let text = serde_json::to_string(&dto).unwrap();
                    let back: PairDto = parse_json(&text).unwrap();
                    assert_eq!(back, dto, "{name} drifted");
                    assert_eq!(back.to_pair().unwrap(), p);
                }
                FixtureData::Snc(c) => {
                    let dto = SncConfigDto::from_config(&c);
                    let text = serde_json::to_string(&dto).unwrap();
                    let back: SncConfigDto = parse_json(&text).unwrap();
                    assert_eq!(back, dto, "{name} drifted");
                    back.to_config().unwrap();
                }
            }
        }
    }
}
