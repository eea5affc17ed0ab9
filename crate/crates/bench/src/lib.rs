//! Fixtures shared by the benchmarks.

use sgpvar_core::{build_named, Semigroup};

/// `A2^a x C2^c`, an AC2-variety member of order `5^a * 2^c`.
pub fn member_power(a2_factors: usize, c2_factors: usize) -> Semigroup {
    let a2 = build_named("A2").expect("builtin");
    let c2 = build_named("C2").expect("builtin");
    let mut s = build_named("E").expect("builtin");
    for _ in 0..a2_factors {
        s = s.direct_product(&a2);
    }
    for _ in 0..c2_factors {
        s = s.direct_product(&c2);
    }
    s
}
