//! Reference values from an independent 50-digit evaluation (kneading
//! determinants for entropy, symbolic differentiation for jets).

use qlogistic::fixed_points::stability_code;
use qlogistic::{
    entropy_bisection, find_nonzero_fixed_points, kneading, solve_special_constants, DeformedMap,
    EntropyStatus, Stability, UnimodalMap,
};

#[test]
fn entropy_matches_kneading_determinant() {
    let cases: [(f64, &[f64], f64, &str); 6] = [
        (3.8, &[0.5], 0.43940781730867994, "RLRRLRLRLRRRRRRLRLRRRLRR"),
        (3.9, &[3.0], 0.60876156880539481, "RLLRRLLRRLLRLLRLRRRRRLRR"),
        (3.7, &[0.5, 3.0], 0.41401273739379182, "RLRRLRLRRLRLRRLRLRRLRLRR"),
        (3.7, &[3.0, 0.5], 0.41419098442396017, "RLRRLRLRRRRLRRRRLRRRRRLR"),
        (3.6, &[0.2], 0.23071219598260168, "RLRRRLRLRRRLRLRLRLRLRLRR"),
        (3.95, &[], 0.60014268447128398, "RLLRRLRRLLRLRLRLLRRRLRLR"),
    ];
    for (r, chain, h, prefix) in cases {
        let m = DeformedMap::new(r, chain).unwrap();
        let k = kneading(&m, 24).to_string();
        assert_eq!(k.trim_end_matches('…'), prefix, "r = {r}, chain {chain:?}");
        let got = entropy_bisection(&m, 1e-4, 10_000).unwrap();
        assert_eq!(got.status, EntropyStatus::Converged);
        assert!((got.value - h).abs() <= 2e-4, "r = {r}, chain {chain:?}: {} vs {h}", got.value);
        assert!(got.bracket_lo <= h + 1e-9 && h <= got.bracket_hi + 1e-9);
    }
}

#[test]
fn jets_match_symbolic_derivatives() {
    let cases: [(f64, &[f64], f64, [f64; 4], f64); 3] = [
        (
            3.7,
            &[0.5],
            0.3,
            [0.83284189818153253595, 1.1973382743638891401, -7.2149902124161689624, 19.684542588752958248],
            -38.026192140843214251,
        ),
        (
            2.9,
            &[3.0, 0.25],
            0.8,
            [0.49234807538297684786, -1.8552045765808048534, -6.730194962743717244, 2.2006864572079732699],
            -20.926940651441561968,
        ),
        (
            4.0,
            &[0.1, 10.0, 2.0],
            0.05,
            [0.12037292310314305958, 2.9251924779916942564, 16.943161925001165422, -259.15619612930588417],
            -138.9181308351427485,
        ),
    ];
    for (r, chain, x, d, s) in cases {
        let m = DeformedMap::new(r, chain).unwrap();
        let jet = m.jet(x).unwrap();
        let got = [jet.value, jet.d1, jet.d2, jet.d3];
        for k in 0..4 {
            assert!(
                (got[k] - d[k]).abs() <= 1e-12 * d[k].abs().max(1.0),
                "chain {chain:?}, order {k}: {} vs {}",
                got[k],
                d[k]
            );
        }
        let sg = m.schwarzian(x).unwrap();
        assert!((sg - s).abs() <= 1e-11 * s.abs(), "{sg} vs {s}");
    }
}

#[test]
fn special_constants_to_many_digits() {
    let (q0, q1) = solve_special_constants().unwrap();
    assert!((q0 - 10.3466519290522155247314).abs() <= 1e-10);
    assert!((q1 - 6.02572483450467870793095).abs() <= 1e-10);
}

#[test]
fn fixed_points_match_fine_grid() {
    let m = DeformedMap::new(3.0, &[0.5]).unwrap();
    let n = 1_000_000;
    let g = |x: f64| m.apply(x) - x;
    let mut roots = Vec::new();
    let mut prev = g(1e-6);
    for i in 1..=n {
        let x = 1e-6 + (1.0 - 1e-6) * i as f64 / n as f64;
        let v = g(x);
        if prev.signum() != v.signum() {
            roots.push(x);
        }
        prev = v;
    }
    let found = find_nonzero_fixed_points(&m).unwrap();
    assert_eq!(found.len(), roots.len());
    assert_eq!(found.len(), 1);
    let rec = found[0];
    assert!((rec.location - 0.70366512515149701573).abs() <= 1e-11);
    assert!((rec.location - roots[0]).abs() <= 2e-6);
    assert!((rec.multiplier - -1.0980208444949829012).abs() <= 1e-10);
    assert_eq!(rec.classification, Stability::Unstable);
    // 0 is unstable as well (multiplier 3 log 2 > 1)
    assert_eq!(stability_code(&m).unwrap(), 0);
}
