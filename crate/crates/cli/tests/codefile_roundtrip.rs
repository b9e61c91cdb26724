use proptest::prelude::*;
use veronese_cli::codefile::{parse, write, Format, CONSTRUCTION_TAG};
use veronese_codes::construction::{build_code, Code, Geometry};

#[test]
fn round_trip_q2_to_q5() {
    for q in [2, 3, 4, 5] {
        let geo = Geometry::new(q).unwrap();
        let code = build_code(&geo).unwrap();
        for fmt in [Format::Text, Format::Json] {
            let s = write(geo.f(), &code, CONSTRUCTION_TAG, fmt);
            let back = parse(&s).unwrap();
            assert_eq!(back.code.q, q);
            assert_eq!(back.code.spaces(), code.spaces());
            let tags: Vec<_> = back.code.planes.iter().map(|p| p.provenance).collect();
            let want: Vec<_> = code.planes.iter().map(|p| p.provenance).collect();
            assert_eq!(tags, want);
            assert_eq!(write(&back.field, &back.code, &back.construction, fmt), s);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Any sorted subset of the code, with or without tags, survives a round trip.
    #[test]
    fn subsets_round_trip(q in prop::sample::select(vec![2u32, 3, 4]), mask in any::<u64>(), tags in any::<bool>(), json in any::<bool>()) {
        let geo = Geometry::new(q).unwrap();
        let code = build_code(&geo).unwrap();
        let planes = code
            .planes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> (i % 64) & 1 == 1)
            .map(|(_, p)| {
                let mut p = p.clone();
                if !tags {
                    p.provenance = None;
                }
                p.params = None;
                p
            })
            .collect();
        let sub = Code { q, planes };
        let fmt = if json { Format::Json } else { Format::Text };
        let s = write(geo.f(), &sub, CONSTRUCTION_TAG, fmt);
        let back = parse(&s).unwrap();
        prop_assert_eq!(&back.code, &sub);
        prop_assert_eq!(write(&back.field, &back.code, &back.construction, fmt), s);
    }
}
