use proptest::prelude::*;
use veronese_codes::construction::{build_code, Geometry, Provenance};
use veronese_codes::groups::{lift, pgl_generators, GroupElement};
use veronese_codes::verify::{subspace_distance, verify_line_index};

#[test]
fn build_is_independent_of_worker_count() {
    for q in [2, 3, 4] {
        let geo = Geometry::new(q).unwrap();
        let reference = build_code(&geo).unwrap();
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| build_code(&geo).unwrap());
        assert_eq!(reference, single);
    }
}

#[test]
fn distances_four_and_six_both_occur() {
    for q in [2, 3, 4, 5] {
        let geo = Geometry::new(q).unwrap();
        let f = geo.f();
        let planes = build_code(&geo).unwrap().spaces();
        let mut seen = [false; 7];
        for (i, a) in planes.iter().enumerate().step_by(7) {
            for b in &planes[i + 1..] {
                seen[subspace_distance(f, a, b)] = true;
            }
        }
        assert!(seen[4] && seen[6], "q = {q}");
        assert!(!seen[0] && !seen[2], "q = {q}");
    }
}

#[test]
fn families_meet_each_other_in_at_most_a_point() {
    let geo = Geometry::new(3).unwrap();
    let f = geo.f();
    let code = build_code(&geo).unwrap();
    for a in Provenance::ALL {
        for b in Provenance::ALL {
            let pa: Vec<_> = code
                .planes
                .iter()
                .filter(|p| p.provenance == Some(a))
                .collect();
            let pb: Vec<_> = code
                .planes
                .iter()
                .filter(|p| p.provenance == Some(b))
                .collect();
            for x in &pa {
                for y in &pb {
                    if x.space != y.space {
                        assert!(x.space.meet(f, &y.space).rank() <= 1, "{a:?} vs {b:?}");
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The image of the code under any collineation is again a code with
    /// minimum distance 4.
    #[test]
    fn collineation_images_keep_the_distance(q in prop::sample::select(vec![2u32, 3, 4]), word in prop::collection::vec(0usize..3, 1..12)) {
        let geo = Geometry::new(q).unwrap();
        let f = geo.f();
        let gens = pgl_generators(&geo.fields);
        let g = word.iter().fold(GroupElement::identity(), |acc, &i| acc.mul(f, &gens[i % gens.len()]));
        let m = lift(f, &g);
        let moved: Vec<_> = build_code(&geo).unwrap().spaces().iter().map(|s| m.apply(f, s)).collect();
        prop_assert_eq!(verify_line_index(f, &moved).unwrap().min_distance, Some(4));
    }
}
