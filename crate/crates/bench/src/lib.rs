//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use linkclose::{Ideal, RingContext};

pub fn fermat() -> Arc<RingContext> {
    RingContext::fermat2()
}

/// `(x^2, y^2, z^2)` and its link `a = (x^2, y^2)` in the Fermat cubic.
pub fn fermat_example() -> (Ideal, Ideal) {
    let r = fermat();
    (
        r.ideal_from_list("x^2,y^2,z^2").expect("valid ideal"),
        r.ideal_from_list("x^2,y^2").expect("valid ideal"),
    )
}

/// Cyclic-4 style generators over F_3, a harder Buchberger input.
pub fn cyclic_gens() -> Vec<&'static str> {
    vec![
        "a+b+c+d",
        "a*b+b*c+c*d+d*a",
        "a*b*c+b*c*d+c*d*a+d*a*b",
        "a*b*c*d-1",
    ]
}
