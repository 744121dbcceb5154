mod oracle;

use linkclose::frobenius::{bracket_power, frobenius_preimage, frobenius_root, FrobeniusExponent};
use linkclose::params::{find_parameter_ideal, seeded_rng, DEFAULT_MAX_TRIES};
use linkclose::{Ideal, RingContext};
use oracle::{random_ideal, Oracle};

fn q(p: u32, e: u32) -> FrobeniusExponent {
    FrobeniusExponent::new(p, e).unwrap()
}

#[test]
fn root_and_preimage_containments() {
    let mut rng = seeded_rng(21);
    for (k, p) in [2u32, 2, 3, 2, 3, 2, 2, 3].into_iter().cycle().take(24).enumerate() {
        let s = RingContext::polynomial(p, &["x", "y"]).unwrap();
        let gens = random_ideal(s.poly_ring(), &mut rng);
        let i = Ideal::new(&s, gens);
        let e = q(p, 1 + (k as u32 % 2));
        let pre = frobenius_preimage(&i, e).unwrap();
        let root = frobenius_root(&i, e).unwrap();
        assert!(bracket_power(&pre, e).unwrap().is_subset(&i).unwrap(), "{i:?}");
        assert!(i.is_subset(&bracket_power(&root, e).unwrap()).unwrap(), "{i:?}");
        assert!(pre.is_subset(&root).unwrap(), "{i:?}");
        assert!(i.is_subset(&frobenius_preimage(&bracket_power(&i, e).unwrap(), e).unwrap()).unwrap());
        // Dropping a minimal generator of the root loses the containment.
        let minimal = root.minimalized();
        if minimal.gens().len() > 1 && !root.is_unit() {
            for skip in 0..minimal.gens().len() {
                let rest: Vec<_> = minimal
                    .gens()
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != skip)
                    .map(|(_, g)| g.clone())
                    .collect();
                let smaller = Ideal::new(&s, rest);
                assert!(!i.is_subset(&bracket_power(&smaller, e).unwrap()).unwrap());
            }
        }
    }
}

#[test]
fn cube_separates_root_from_preimage() {
    let s = RingContext::poly2_2();
    let x3 = s.ideal_from_list("x^3").unwrap();
    let e = q(2, 1);
    let root = frobenius_root(&x3, e).unwrap();
    let pre = frobenius_preimage(&x3, e).unwrap();
    assert_eq!(root, s.ideal_from_list("x").unwrap());
    assert_eq!(pre, s.ideal_from_list("x^2").unwrap());
    assert!(root.is_subset(&pre).is_ok_and(|b| !b));
    assert!(pre.is_subset(&root).unwrap());
    // Brute force over principal candidates (x^k).
    let o = Oracle::for_ring(s.poly_ring());
    let smallest_root = (0..4)
        .rev()
        .filter(|&k| o.member(&[s.parse(&format!("x^{}", 2 * k)).unwrap()], &s.parse("x^3").unwrap()))
        .max();
    assert_eq!(smallest_root, Some(1));
    let least_pre = (0..4)
        .find(|&k| o.member(x3.gens(), &s.parse(&format!("x^{}", 2 * k)).unwrap()));
    assert_eq!(least_pre, Some(2));
}

#[test]
fn spec_roots_and_preimages() {
    let s = RingContext::poly2_2();
    let e = q(2, 1);
    let id = |t: &str| s.ideal_from_list(t).unwrap();
    assert_eq!(frobenius_root(&id("x^2*y^2"), e).unwrap(), id("x*y"));
    assert!(frobenius_root(&s.zero_ideal(), e).unwrap().is_zero());
    assert_eq!(frobenius_preimage(&id("x^2"), e).unwrap(), id("x"));
    assert!(frobenius_preimage(&s.unit_ideal(), e).unwrap().is_unit());
    assert_eq!(bracket_power(&id("x,y"), e).unwrap(), id("x^2,y^2"));
    assert_eq!(bracket_power(&id("x+y"), e).unwrap(), id("x^2+y^2"));
    assert_eq!(bracket_power(&id("x+y"), q(2, 0)).unwrap(), id("x+y"));
}

#[test]
fn root_of_fermat_chain_step_matches_brute_force() {
    // (f x^2)^[1/2] in F_2[x,y,z]: decompose over {x^a y^b z^c : a,b,c < 2}.
    let s = RingContext::poly2_3();
    let e = q(2, 1);
    let j = s.ideal_from_list("x^5+x^2*y^3+x^2*z^3").unwrap();
    let root = frobenius_root(&j, e).unwrap();
    assert_eq!(root, s.ideal_from_list("x^2,x*y,x*z").unwrap());
}

#[test]
fn flatness_on_parameter_pairs() {
    let mut rng = seeded_rng(22);
    let cases = [
        (RingContext::poly2_3(), "x,y"),
        (RingContext::poly2_3(), "x^2,y,z"),
        (RingContext::fermat2(), "x,y"),
        (RingContext::fermat2(), "x,y^2"),
    ];
    for (ring, gens) in cases {
        let b = ring.ideal_from_list(gens).unwrap();
        let sampled = find_parameter_ideal(&b, &mut rng, DEFAULT_MAX_TRIES).unwrap();
        let squares = sampled.gens().iter().map(|g| ring.poly_ring().pow(g, 2)).collect();
        let a = Ideal::new(&ring, squares);
        let ab = a.colon(&b).unwrap();
        for e in 1..=2 {
            let e = q(2, e);
            let lhs = bracket_power(&ab, e).unwrap();
            let rhs = bracket_power(&a, e).unwrap().colon(&bracket_power(&b, e).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{a:?} : {b:?}");
        }
    }
}
