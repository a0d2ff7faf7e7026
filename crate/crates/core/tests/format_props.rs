use popmatch::format::{
    parse_instance, parse_matching, render_instance, render_matching, render_solution,
};
use popmatch::generate::{generate, GeneratorParams};
use popmatch::{solve, Solution};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = GeneratorParams> {
    (
        1usize..12,
        1usize..12,
        0usize..6,
        any::<bool>(),
        0.0..=1.0f64,
        1usize..4,
        any::<u64>(),
    )
        .prop_map(
            |(applicants, jobs, list_len, vary_list_len, tie_prob, categories, seed)| {
                GeneratorParams {
                    applicants,
                    jobs,
                    list_len,
                    vary_list_len,
                    tie_prob,
                    categories,
                    seed,
                    weights: None,
                }
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn instance_round_trips(p in params()) {
        let inst = generate(&p).unwrap();
        let text = render_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(render_instance(&back), text);
        prop_assert_eq!(back.num_applicants(), inst.num_applicants());
        prop_assert_eq!(back.num_edges(), inst.num_edges());
    }

    #[test]
    fn generator_is_deterministic(p in params()) {
        prop_assert_eq!(render_instance(&generate(&p).unwrap()), render_instance(&generate(&p).unwrap()));
    }

    #[test]
    fn solution_round_trips(p in params()) {
        let inst = generate(&p).unwrap();
        let solution = solve(&inst).unwrap();
        let text = render_solution(&solution, &inst);
        match solution {
            Solution::Popular(m) => {
                prop_assert_eq!(parse_matching(&text, &inst).unwrap(), m.clone());
                prop_assert_eq!(parse_matching(&render_matching(&m, &inst), &inst).unwrap(), m);
            }
            Solution::NoPopularMatching => prop_assert!(parse_matching(&text, &inst).is_err()),
        }
    }
}
