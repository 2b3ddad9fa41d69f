mod common;

use common::*;
use hypsep::contractor::{
    act, forward_backward, identity, intersect_ctc, minimal_hyperbola, seed, union_ctc, FociFwdBwd,
};
use hypsep::{Box2, ConicParams, Contractor, Ctc, Interval, SymB2};
use rand::Rng;

fn grow(b: &Box2, r: f64) -> Box2 {
    Box2::from_bounds(b.x1().lo() - r, b.x1().hi() + r, b.x2().lo() - r, b.x2().hi() + r)
}

fn frame() -> Box2 {
    Box2::from_bounds(-4.0, 4.0, -4.0, 4.0)
}

/// Random hyperbolas the minimal contractor accepts, each with a few boxes.
fn cases(seed: u64, n: usize) -> Vec<(ConicParams, Ctc, Vec<Box2>)> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let q = random_hyperbola(&mut r);
        let Ok(c) = minimal_hyperbola(&q) else { continue };
        let boxes = (0..10).map(|_| random_box(&mut r, &frame())).collect();
        out.push((q, c, boxes));
    }
    out
}

#[test]
fn minimal_contractor_keeps_every_curve_point() {
    let mut checked = 0;
    for (q, c, boxes) in cases(21, 100) {
        for b in boxes {
            let res = c.contract(&b);
            assert!(res.is_subset(&b), "{q}: {res} not in {b}");
            for s in curve_samples(&q, &b, 2e-3) {
                checked += 1;
                assert!(!sample_lost(&q, &s, &b, &res), "{q}: {:?} lost from {b} -> {res}", s.p);
            }
        }
    }
    assert!(checked > 100_000, "{checked}");
}

#[test]
fn minimal_contractor_matches_the_sampled_hull() {
    let step = 1e-4;
    for (q, c, boxes) in cases(22, 100) {
        for b in boxes {
            let res = c.contract(&b);
            let s = curve_samples(&q, &b, step);
            let hull = hull_of_samples(&s);
            if hull.is_empty() {
                // a curve arc strictly inside a box would have been sampled
                assert!(res.is_empty() || res.width() <= step, "{q}: {b} -> {res}");
                continue;
            }
            let d = endpoint_distance(&res, &hull);
            assert!(d <= 1e-5 + step, "{q}: {b} -> {res}, sampled hull {hull}, distance {d}");
        }
    }
}

#[test]
fn forward_backward_is_sound_and_dominated() {
    for (q, c, boxes) in cases(23, 100) {
        let fb = forward_backward(&q);
        for b in boxes {
            let f = fb.contract(&b);
            let m = c.contract(&b);
            assert!(f.is_subset(&b));
            assert!(m.is_subset(&f), "{q}: minimal {m} not in forward-backward {f} for {b}");
            for s in curve_samples(&q, &b, 1e-2) {
                assert!(!sample_lost(&q, &s, &b, &f), "{q}: {:?} lost from {b} -> {f}", s.p);
            }
        }
    }
}

#[test]
fn contraction_is_monotone() {
    let mut r = rng(24);
    for (q, c, boxes) in cases(25, 50) {
        let fb = forward_backward(&q);
        for y in boxes {
            let x = random_box(&mut r, &y);
            for k in [&c, &fb] {
                let (cx, cy) = (k.contract(&x), k.contract(&y));
                if cx.is_empty() {
                    continue;
                }
                let slack = 1e-9 * (1.0 + cy.width());
                let grown = grow(&cy, slack);
                assert!(cx.is_subset(&grown), "{q}: C({x}) = {cx} not in C({y}) = {cy}");
            }
        }
    }
}

#[test]
fn empty_and_degenerate_boxes() {
    let q = ConicParams::new([-1.0, 5.0, 2.0, -2.0, 30.0, -2.0]);
    let c = minimal_hyperbola(&q).unwrap();
    assert!(c.contract(&Box2::EMPTY).is_empty());
    let mut r = rng(26);
    for _ in 0..200 {
        let x2 = r.gen_range(-3.0..3.0);
        for x1 in x1_on_curve(&q, x2) {
            let p = Box2::point([x1, x2]);
            let res = c.contract(&Box2::new(Interval::new(x1 - 1e-12, x1 + 1e-12), p.x2()));
            assert!(!res.is_empty(), "{q}: thin box on the curve at {x1}, {x2} emptied");
        }
    }
}

#[test]
fn combinators_behave_like_their_parts() {
    for (q, c, boxes) in cases(27, 30) {
        let single = union_ctc(vec![c.clone()]);
        let with_id = intersect_ctc(c.clone(), identity());
        for b in &boxes {
            let expect = c.contract(b);
            assert_eq!(single.contract(b), expect);
            assert_eq!(with_id.contract(b), expect);
            assert_eq!(act(SymB2::IDENTITY, c.clone()).contract(b), expect);
        }
        assert!(union_ctc(vec![]).contract(&boxes[0]).is_empty());
        // σ • (σ⁻¹ • C) is C
        for s in SymB2::elements() {
            let back = act(s, act(s.inverse(), c.clone()));
            for b in &boxes {
                assert_eq!(back.contract(b), c.contract(b), "{q} {s}");
            }
        }
    }
}

#[test]
fn acting_on_a_contractor_moves_its_set() {
    // ψ_{σ⁻¹}(q) describes σ(curve), so its minimal contractor is σ • C(q)
    for (q, c, boxes) in cases(28, 30) {
        for s in SymB2::elements() {
            let image = s.inverse().psi(&q);
            let Ok(moved) = minimal_hyperbola(&image) else { continue };
            let acted = act(s, c.clone());
            for b in &boxes {
                let d = endpoint_distance(&moved.contract(b), &acted.contract(b));
                assert!(d <= 1e-9 * (1.0 + b.width()), "{q} {s}: {d}");
            }
        }
    }
}

#[test]
fn seed_encloses_the_graph_of_phi1() {
    let mut r = rng(29);
    let mut hits = 0;
    for (q, _, boxes) in cases(30, 60) {
        let sd = seed(&q).unwrap();
        for b in boxes {
            let res = sd.contract(&b);
            for _ in 0..50 {
                let x2 = r.gen_range(b.x2().lo()..=b.x2().hi());
                let Some(top) = x1_on_curve(&q, x2).into_iter().reduce(f64::max) else { continue };
                if b.x1().contains(top) {
                    hits += 1;
                    let tol = 1e-9 * (1.0 + top.abs());
                    let near = grow(&res, tol);
                    assert!(near.contains([top, x2]), "{q}: ({top}, {x2}) lost from {b} -> {res}");
                }
            }
        }
    }
    assert!(hits > 1000, "{hits}");
}

#[test]
fn foci_forward_backward_keeps_locus_points() {
    let mut r = rng(31);
    for _ in 0..200 {
        let a: [f64; 2] = [r.gen_range(-10.0..10.0), r.gen_range(-10.0..10.0)];
        let b: [f64; 2] = [r.gen_range(-10.0..10.0), r.gen_range(-10.0..10.0)];
        let d = range_diff(a, a, b).abs();
        let ell = d * r.gen_range(0.05..0.95);
        let band = Interval::new(ell - 0.01 * d, ell + 0.01 * d);
        let c = FociFwdBwd::new(a, b, band);
        for _ in 0..20 {
            let th: f64 = r.gen_range(0.0..std::f64::consts::TAU);
            let Some(x) = locus_point_on_ray(a, b, [th.cos(), th.sin()], ell) else { continue };
            let w = r.gen_range(0.01..2.0);
            let bx = Box2::from_bounds(x[0] - w * r.gen::<f64>(), x[0] + w, x[1] - w, x[1] + w * r.gen::<f64>());
            let res = c.contract(&bx);
            assert!(res.contains(x), "{a:?} {b:?} {ell}: {x:?} lost from {bx} -> {res}");
        }
        // a box around a focus misses the band
        let far = Box2::from_bounds(a[0] - 1e-3, a[0] + 1e-3, a[1] - 1e-3, a[1] + 1e-3);
        assert!(c.contract(&far).is_empty(), "near a the difference is -|a - b|");
    }
}
