mod oracle;

use linkclose::frobenius::{bracket_power, FrobeniusExponent};
use linkclose::lengths::hk_table;
use linkclose::linkage::{
    corner_power, corner_power_with, direct_link, link_delta, m_primary_link_lift, tilde_approx,
    LinkChain,
};
use linkclose::params::{extend_to_m_primary, is_unmixed, seeded_rng, unmixed_part};
use linkclose::singularity::{star_approx, star_colon, test_element, test_ideal};
use linkclose::{Ideal, RingContext};
use oracle::Oracle;

fn q(p: u32, e: u32) -> FrobeniusExponent {
    FrobeniusExponent::new(p, e).unwrap()
}

fn oracle_of(i: &Ideal) -> Oracle {
    Oracle::for_ring(i.ring().poly_ring())
}

/// `A : B` in the ring agrees with the linear-algebra kernel through `deg`.
fn check_colon(a: &Ideal, b: &Ideal, c: &Ideal, deg: u32) {
    let o = oracle_of(a);
    assert!(o.colon_matches(&a.lift_gens(), &b.lift_gens(), &c.lift_gens(), deg), "{a:?} : {b:?}");
}

#[test]
fn fermat_link_and_corner_values() {
    let r = RingContext::fermat2();
    let i = r.ideal_from_list("x^2,y^2,z^2").unwrap();
    let a = r.ideal_from_list("x^2,y^2").unwrap();
    let j = a.colon(&i).unwrap();
    assert_eq!(j, r.ideal_from_list("x^2,y^2,z").unwrap());
    check_colon(&a, &i, &j, 6);

    let w = corner_power_with(&i, &a, q(2, 1)).unwrap();
    let a2 = bracket_power(&a, q(2, 1)).unwrap();
    let j2 = bracket_power(&j, q(2, 1)).unwrap();
    check_colon(&a2, &j2, &w.value, 7);
    assert_eq!(w.value, r.ideal_from_list("x^4,y^4,z^4,x*y*z").unwrap());
    assert!(w.value.contains(&r.parse("x*y*z").unwrap()));
    assert!(!i.contains(&r.parse("x*y*z").unwrap()));
    // z^4 lies in the corner power but not in (x^4, y^4, xyz).
    let o = oracle_of(&i);
    let narrower = r.ideal_from_list("x^4,y^4,x*y*z").unwrap();
    assert!(o.member(&w.value.lift_gens(), &r.parse("z^4").unwrap()));
    assert!(!o.member(&narrower.lift_gens(), &r.parse("z^4").unwrap()));
    assert!(o.member(&a2.lift_gens(), &r.parse("z^6").unwrap()));
}

#[test]
fn intersection_colon_and_unmixed_examples() {
    let s = RingContext::poly2_2();
    let id = |t: &str| s.ideal_from_list(t).unwrap();
    let meet = id("x^2,y").intersect(&id("x")).unwrap();
    assert_eq!(meet, id("x^2,x*y"));
    assert!(oracle_of(&meet).same_ideal(meet.gens(), id("x^2,x*y").gens(), 4));
    assert_eq!(id("x*y").colon(&id("x")).unwrap(), id("y"));
    check_colon(&id("x^2"), &id("x^2,x*y"), &id("x"), 4);
    check_colon(&id("x^2"), &id("x"), &id("x"), 4);
    let mut rng = seeded_rng(1);
    assert_eq!(unmixed_part(&id("x^2,x*y"), &mut rng).unwrap(), id("x"));
    assert!(!is_unmixed(&id("x^2,x*y"), &mut rng).unwrap());
    assert!(is_unmixed(&RingContext::poly2_3().ideal_from_list("x,y").unwrap(), &mut rng).unwrap());
}

#[test]
fn extension_to_m_primary_in_three_variables() {
    let s = RingContext::poly2_3();
    let b = s.ideal_from_list("x").unwrap();
    let xs = extend_to_m_primary(&b, &mut seeded_rng(3)).unwrap();
    assert_eq!(xs.len(), 2);
    let o = oracle_of(&b);
    let gens = b.with(&xs).lift_gens();
    assert!(o.colength(&gens, 16).is_some());
}

#[test]
fn direct_links_in_the_plane() {
    let s = RingContext::poly2_2();
    let id = |t: &str| s.ideal_from_list(t).unwrap();
    let mut rng = seeded_rng(4);
    let (j, _) = direct_link(&id("x,y^2"), Some(&id("x,y^4")), &mut rng).unwrap();
    assert_eq!(j, id("x,y^2"));
    check_colon(&id("x,y^4"), &id("x,y^2"), &j, 6);
    let (j, _) = direct_link(&id("x,y"), Some(&id("x^2,y")), &mut rng).unwrap();
    assert_eq!(j, id("x,y"));
    check_colon(&id("x^2,y"), &id("x,y"), &j, 5);
}

#[test]
fn delta_examples() {
    let s = RingContext::poly2_2();
    let id = |t: &str| s.ideal_from_list(t).unwrap();
    for (a, b, expected) in [("x^4,y", "x^2,y", "x^2"), ("x^2,y^2", "x,y", "x*y"), ("x,y", "x,y", "1")] {
        let (a, b) = (id(a), id(b));
        let d = link_delta(&a, &b).unwrap();
        assert_eq!(a.with(std::slice::from_ref(&d)), a.with(&[s.parse(expected).unwrap()]));
        let delta = Ideal::new(&s, vec![d]);
        check_colon(&a, &b, &a.sum(&delta).unwrap(), 5);
        check_colon(&a, &delta, &b, 5);
    }
}

#[test]
fn link_lift_with_one_link() {
    let s = RingContext::poly2_2();
    let id = |t: &str| s.ideal_from_list(t).unwrap();
    let chain = LinkChain {
        links: vec![id("x^3")],
        nodes: vec![id("x"), id("x^2")],
    };
    let lift = m_primary_link_lift(&chain, &id("x^3"), &[s.parse("y").unwrap()], 2).unwrap();
    check_colon(&id("x^3,y^2"), &id("x,y^2"), &lift.j_t, 5);
    assert!(lift.j_contained && lift.i_t_m_primary);
    assert!(id("x^2").is_subset(&lift.j_t).unwrap());
}

#[test]
fn singularity_examples() {
    let r = RingContext::fermat2();
    assert_eq!(test_element(&r).unwrap().c, r.parse("x^2").unwrap());
    assert!(RingContext::hypersurface(2, &["x", "y"], "x^2+y^2").is_err());
    let s = RingContext::poly2_2();
    assert!(test_element(&s).unwrap().c.is_one());
    assert!(test_ideal(&s).unwrap().tau.is_unit());

    let tau = test_ideal(&r).unwrap().tau;
    assert_eq!(tau, r.maximal_ideal());
    let xy = r.ideal_from_list("x,y").unwrap();
    let sc = star_colon(&xy, &tau).unwrap();
    assert_eq!(sc, r.ideal_from_list("x,y,z^2").unwrap());
    check_colon(&xy, &tau, &sc, 5);

    let curve = RingContext::hypersurface(3, &["x", "y"], "x^2*y+x*y^2").unwrap();
    let t = test_ideal(&curve).unwrap();
    assert!(t.stable_at <= 5 && !t.tau.is_unit());
}

#[test]
fn star_approx_examples() {
    let r = RingContext::fermat2();
    let xy = r.ideal_from_list("x,y").unwrap();
    let st = star_approx(&xy, 3).unwrap();
    assert_eq!(st.lower, r.ideal_from_list("x,y,z^2").unwrap());
    assert_eq!(st.upper, st.lower);
    let m = star_approx(&r.maximal_ideal(), 3).unwrap();
    assert!(m.chain.iter().all(|c| *c == r.maximal_ideal()));
    let s = RingContext::poly2_2();
    let st = star_approx(&s.ideal_from_list("x,y").unwrap(), 1).unwrap();
    assert_eq!(st.lower, st.upper);
    assert_eq!(st.upper, s.ideal_from_list("x,y").unwrap());
}

#[test]
fn linkage_class_of_the_maximal_ideal() {
    let r = RingContext::fermat2();
    let m = r.maximal_ideal();
    let (sum, rec) = tilde_approx(&m, 2, 2, &mut seeded_rng(5)).unwrap();
    assert_eq!(sum, m);
    assert!(rec.flags.sum_in_root);
    assert!(rec.nodes.iter().all(|n| n.is_subset(&m).unwrap()));
    assert!(rec.edges.iter().all(|e| e.verified));
}

#[test]
fn length_table_agrees_with_staircase_oracle() {
    let r = RingContext::fermat2();
    let m = r.maximal_ideal();
    let t = hk_table(&m, 2, true, &mut seeded_rng(6)).unwrap();
    let o = oracle_of(&m);
    for row in &t.rows {
        let br = bracket_power(&m, q(2, row.e)).unwrap();
        assert_eq!(o.colength(&br.lift_gens(), 24), Some(row.len_bracket));
    }
    assert_eq!(t.rows[1].len_bracket, 8);
    let corner = corner_power(&m, q(2, 1), 2, &mut seeded_rng(7)).unwrap();
    assert_eq!(t.rows[1].len_corner, corner.value.colength().finite());
}
