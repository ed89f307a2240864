use proptest::prelude::*;

use rmq_core::container::Container;
use rmq_core::model::{gen_random_matrix, oracle_rmq};
use rmq_core::{QueryRect, Scheme};

fn scheme_strategy() -> impl Strategy<Value = Scheme> {
    (0..Scheme::ALL.len()).prop_map(|k| Scheme::ALL[k])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn container_bytes_answer_like_the_oracle(
        scheme in scheme_strategy(),
        m in 1usize..7,
        n in 1usize..12,
        seed in any::<u64>(),
        picks in proptest::collection::vec((0usize..100, 0usize..100, 0usize..100, 0usize..100), 20),
    ) {
        let m = scheme.fixed_rows().unwrap_or(m);
        let a = gen_random_matrix(m, n, seed).unwrap();
        let c = Container::new(scheme, m, n, scheme.encode(&a).unwrap());
        let c = Container::from_bytes(&c.to_bytes()).unwrap();
        prop_assert_eq!((c.scheme, c.m, c.n), (scheme, m, n));
        let idx = c.scheme.decode(&c.payload, m, n).unwrap();
        for (a1, a2, b1, b2) in picks {
            let (i1, i2) = ((a1 % m).min(a2 % m) + 1, (a1 % m).max(a2 % m) + 1);
            let (j1, j2) = ((b1 % n).min(b2 % n) + 1, (b1 % n).max(b2 % n) + 1);
            let q = QueryRect::new(i1, i2, j1, j2);
            let q = match q.sidedness(m) {
                s if s <= scheme.sidedness() => q,
                _ => match scheme.sidedness() {
                    rmq_core::Sidedness::One => QueryRect::new(1, m, 1, j2),
                    rmq_core::Sidedness::Two => QueryRect::new(1, i2, 1, j2),
                    _ => QueryRect::new(1, i2, j1, j2),
                },
            };
            prop_assert_eq!(idx.query(&q).unwrap(), oracle_rmq(&a, &q).unwrap());
        }
    }
}

#[test]
fn truncated_payloads_are_rejected() {
    let mut accepted = Vec::new();
    for scheme in Scheme::ALL {
        let m = scheme.fixed_rows().unwrap_or(3);
        for seed in 0..20 {
            let a = gen_random_matrix(m, 10, seed).unwrap();
            let bits = scheme.encode(&a).unwrap();
            if scheme.decode(&bits[..bits.len() - 1], m, 10).is_ok() {
                accepted.push((scheme, seed));
            }
        }
    }
    assert!(accepted.is_empty(), "{accepted:?}");
}
