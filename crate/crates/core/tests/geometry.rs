use proptest::prelude::*;
use std::f64::consts::PI;

use terasim::constants::{wavelength, SPEED_OF_LIGHT};
use terasim::geometry::*;
use terasim::Complex64;

fn dist(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

fn centroid(p: &[[f64; 3]]) -> [f64; 3] {
    let n = p.len() as f64;
    let mut c = [0.0; 3];
    for v in p {
        for i in 0..3 {
            c[i] += v[i] / n;
        }
    }
    c
}

#[test]
fn single_element_sits_at_sa_center() {
    let cfg = ArrayConfig::new(3, 3, 1, 2e-3, 1e-3, 3e11).at([1.0, 2.0, 3.0], Orientation::identity());
    let p = cfg.ae_positions(SaIndex { row: 1, col: 1 }).unwrap();
    assert_eq!(p, vec![[1.0, 2.0, 3.0]]);
}

#[test]
fn two_by_two_elements_form_a_square() {
    let cfg = ArrayConfig::new(1, 1, 2, 5e-3, 1e-3, 1e11);
    let p = cfg.ae_positions(SaIndex { row: 0, col: 0 }).unwrap();
    assert_eq!(p.len(), 4);
    let mut d: Vec<f64> = (0..4)
        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
        .map(|(i, j)| dist(p[i], p[j]))
        .collect();
    d.sort_by(f64::total_cmp);
    for s in &d[..4] {
        assert!((s - 1e-3).abs() < 1e-15);
    }
    for s in &d[4..] {
        assert!((s - 2f64.sqrt() * 1e-3).abs() < 1e-15);
    }
    assert!(p.iter().all(|v| v[0] == 0.0));
}

#[test]
fn adjacent_sa_centroids_are_one_spacing_apart() {
    let o = Orientation::from_yaw_pitch_roll(0.4, -0.2, 1.1);
    let cfg = ArrayConfig::new(2, 3, 2, 7e-3, 1e-3, 3e11).at([0.5, -1.0, 2.0], o);
    let a = centroid(&cfg.ae_positions(SaIndex { row: 0, col: 1 }).unwrap());
    let b = centroid(&cfg.ae_positions(SaIndex { row: 0, col: 2 }).unwrap());
    let c = centroid(&cfg.ae_positions(SaIndex { row: 1, col: 1 }).unwrap());
    assert!((dist(a, b) - 7e-3).abs() < 1e-15);
    assert!((dist(a, c) - 7e-3).abs() < 1e-15);
}

#[test]
fn out_of_range_sa_is_an_error() {
    let cfg = ArrayConfig::new(2, 2, 1, 1e-3, 1e-3, 1e11);
    assert!(cfg.ae_positions(SaIndex { row: 0, col: 2 }).is_err());
}

#[test]
fn single_element_steering_entry() {
    let cfg = ArrayConfig::new(1, 1, 1, 1e-3, 1e-3, 3e11);
    let a = steering_vector(&cfg, Angles::new(0.7, 0.4)).unwrap();
    assert_eq!(a.len(), 1);
    assert!((a[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn steering_phase_follows_formula() {
    let (q, delta, f) = (3, 4e-4, 3e11);
    let cfg = ArrayConfig::new(1, 1, q, 1e-3, delta, f);
    let (phi, theta) = (0.3, 1.2);
    let a = steering_vector(&cfg, Angles::new(phi, theta)).unwrap();
    let k = 2.0 * PI * f / SPEED_OF_LIGHT;
    let c = (q as f64 - 1.0) / 2.0;
    for i in 0..q {
        for j in 0..q {
            let (py, pz) = ((i as f64 - c) * delta, (j as f64 - c) * delta);
            let phase = k * (py * phi.sin() * theta.sin() + pz * theta.cos());
            let want = Complex64::from_polar(1.0 / q as f64, phase);
            assert!((a[i * q + j] - want).norm() < 1e-14);
        }
    }
}

#[test]
fn doubling_frequency_doubles_phase() {
    let base = ArrayConfig::new(1, 1, 4, 1e-2, 5e-4, 2e11);
    let mut twice = base.clone();
    twice.carrier_frequency_hz *= 2.0;
    let ang = Angles::new(-0.5, 0.9);
    let a = steering_vector(&base, ang).unwrap();
    let b = steering_vector(&twice, ang).unwrap();
    for (x, y) in a.iter().zip(b.iter()) {
        let want = Complex64::from_polar(0.25, 2.0 * x.arg());
        assert!((y - want).norm() < 1e-12);
    }
}

#[test]
fn beamforming_vector_matches_steering_at_target() {
    let cfg = ArrayConfig::new(2, 2, 4, 4e-3, 5e-4, 3e11);
    let t = Angles::from_degrees(12.0, 80.0);
    assert_eq!(beamforming_vector(&cfg, t).unwrap(), steering_vector(&cfg, t).unwrap());
    assert!((beamforming_vector(&cfg, t).unwrap().norm() - 1.0).abs() < 1e-12);
}

#[test]
fn matched_gain_is_sqrt_mn() {
    let cfg = ArrayConfig::new(4, 4, 2, 3e-3, 5e-4, 3e11);
    let t = Angles::from_degrees(20.0, 70.0);
    let g = equivalent_array_gain(&cfg, t, t).unwrap();
    assert!((g.norm() - 4.0).abs() < 1e-12);
}

#[test]
fn single_sa_gain_is_unity() {
    let cfg = ArrayConfig::new(1, 1, 4, 1e-3, 5e-4, 3e11);
    for (a, b) in [(0.0, 0.3), (1.0, -1.0), (2.5, 0.2)] {
        let g = equivalent_array_gain(&cfg, Angles::new(a, 1.0), Angles::new(b, 2.0)).unwrap();
        assert!((g.norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn squint_never_beats_matched_gain() {
    let cfg = ArrayConfig::new(8, 8, 1, 5e-4, 5e-4, 3e11);
    let t = Angles::from_degrees(30.0, 60.0);
    let peak = (cfg.num_sas() as f64).sqrt();
    let mut lost = false;
    for i in 0..=40 {
        let f = 2.7e11 + i as f64 * 1.5e9;
        let g = equivalent_array_gain_at(&cfg, t, t, f).unwrap().norm();
        assert!(g <= peak + 1e-12);
        lost |= g < peak - 1e-3;
    }
    assert!(lost);
}

#[test]
fn beam_split_phase_examples() {
    assert_eq!(beam_split_phase(1.3, 3e11, 3e11), 1.3);
    assert_eq!(beam_split_phase(1.3, 6e11, 3e11), 2.6);
}

#[test]
fn scan_argmax_lands_nearest_truth() {
    let cfg = ArrayConfig::new(8, 8, 1, 5e-4, 5e-4, 3e11);
    let truth = Angles::from_degrees(17.2, 101.4);
    let mut best = (f64::MIN, 0, 0);
    for az in -40..=40 {
        for el in 60..=120 {
            let g = equivalent_array_gain(&cfg, truth, Angles::from_degrees(az as f64, el as f64))
                .unwrap()
                .norm();
            if g > best.0 {
                best = (g, az, el);
            }
        }
    }
    assert_eq!((best.1, best.2), (17, 101));
}

#[test]
fn gain_model_examples() {
    let w = 27.7f64.to_radians();
    let m = GainModel::Approximate {
        hpbw_azimuth: w,
        hpbw_elevation: w,
    };
    assert!((m.peak_gain_dbi() - 17.3).abs() < 0.05);
    assert!((antenna_gain(&m, Angles::BORESIGHT) - m.peak_gain().sqrt()).abs() < 1e-12);
    assert_eq!(antenna_gain(&m, Angles::new(w, PI / 2.0)), 0.0);

    let omni = GainModel::Approximate {
        hpbw_azimuth: 2.0 * PI,
        hpbw_elevation: 2.0,
    };
    assert!((omni.peak_gain() - 1.0).abs() < 1e-15);

    let s = GainModel::sector([-0.5, 0.5], [1.0, 2.0]);
    assert!(antenna_gain(&s, Angles::new(0.0, 1.5)) > 0.0);
    assert_eq!(antenna_gain(&s, Angles::new(0.6, 1.5)), 0.0);
    assert_eq!(antenna_gain(&s, Angles::new(0.0, 2.1)), 0.0);
    assert!(GainModel::Fixed { gain: -1.0 }.validate().is_err());
}

#[test]
fn rayleigh_examples() {
    let d = rayleigh_distance(4, 4, 1e-3, 1e-3, 1e-3).unwrap();
    assert!((d - 4e-3).abs() < 1e-15);
    let d2 = rayleigh_distance(4, 4, 1e-3, 1e-3, 2e-3).unwrap();
    assert!((d2 - d / 2.0).abs() < 1e-15);
    assert!(rayleigh_distance(0, 4, 1e-3, 1e-3, 1e-3).is_err());
}

#[test]
fn rayleigh_ordering_by_size_and_frequency() {
    for spacing in [1e-4, 1e-3, 1e-2, 1e-1] {
        let at = |n: usize, f: f64| rayleigh_distance(n, n, spacing, spacing, wavelength(f)).unwrap();
        assert!(at(128, 3e11) > at(2, 3e11));
        assert!(at(2, 1e12) > at(2, 3e11));
        assert!(at(128, 3e12) > at(128, 1e12));
    }
}

#[test]
fn optimal_spacing_examples() {
    let d = optimal_sa_spacing(1, 1.0, 1e-3, 100).unwrap();
    assert!((d - 3.1623e-3).abs() < 5e-8);
    assert!(optimal_sa_spacing(2, 1.0, 1e-3, 100).is_err());
    let d3 = optimal_sa_spacing(3, 1.0, 1e-3, 100).unwrap();
    assert!((d3 / d - 3f64.sqrt()).abs() < 1e-12);
}

#[test]
fn fresnel_boundaries() {
    let (aperture, f) = (0.1, 6e11);
    let (inner, outer) = fresnel_bounds(aperture, wavelength(f));
    assert_eq!(fresnel_region(aperture, f, outer).unwrap(), FieldRegion::FarField);
    assert_eq!(fresnel_region(aperture, f, inner).unwrap(), FieldRegion::Fresnel);
    assert_eq!(fresnel_region(aperture, f, inner * 0.999).unwrap(), FieldRegion::ReactiveNearField);
    assert!((outer - 40.0).abs() < 0.1, "{outer}");
}

#[test]
fn grating_lobe_warning() {
    let ok = ArrayConfig::new(2, 2, 4, 4e-3, 4.9e-4, 3e11);
    assert!(ok.validate().unwrap().is_empty());
    let wide = ArrayConfig::new(2, 2, 4, 4e-3, 1e-3, 3e11);
    assert_eq!(wide.validate().unwrap().len(), 1);
    let cramped = ArrayConfig::new(2, 2, 4, 1e-3, 5e-4, 3e11);
    assert!(cramped.validate().is_err());
}

fn arb_array() -> impl Strategy<Value = ArrayConfig> {
    (1usize..6, 1usize..6, 1usize..5, 1e10..3e12f64, 0.2..0.5f64, 1.0..3.0f64).prop_map(
        |(m, n, q, f, ae_frac, sa_mult)| {
            let delta = ae_frac * wavelength(f);
            ArrayConfig::new(m, n, q, delta * q as f64 * sa_mult, delta, f)
        },
    )
}

fn arb_angles() -> impl Strategy<Value = Angles> {
    (-PI..PI, 0.0..PI).prop_map(|(a, e)| Angles::new(a, e))
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn steering_vector_has_unit_norm(cfg in arb_array(), ang in arb_angles()) {
        let a = steering_vector(&cfg, ang).unwrap();
        prop_assert!((a.norm() - 1.0).abs() < 1e-12);
        let q = cfg.q as f64;
        prop_assert!(a.iter().all(|z| (z.norm() - 1.0 / q).abs() < 1e-12));
    }

    #[test]
    fn equivalent_gain_is_bounded(cfg in arb_array(), t in arb_angles(), s in arb_angles()) {
        let g = equivalent_array_gain(&cfg, t, s).unwrap();
        prop_assert!(g.norm() <= (cfg.num_sas() as f64).sqrt() * (1.0 + 1e-12));
    }

    #[test]
    fn swapping_truth_and_target_conjugates(cfg in arb_array(), t in arb_angles(), s in arb_angles()) {
        let a = equivalent_array_gain(&cfg, t, s).unwrap();
        let b = equivalent_array_gain(&cfg, s, t).unwrap();
        prop_assert!((a - b.conj()).norm() < 1e-9);
    }

    #[test]
    fn gain_ignores_array_translation(cfg in arb_array(), t in arb_angles(), s in arb_angles(),
                                     o in prop::array::uniform3(-10.0..10.0f64)) {
        let moved = cfg.clone().at(o, cfg.orientation);
        let a = equivalent_array_gain(&cfg, t, s).unwrap();
        let b = equivalent_array_gain(&moved, t, s).unwrap();
        prop_assert!((a.norm() - b.norm()).abs() < 1e-12);
    }

    #[test]
    fn fresnel_classification_is_monotone(aperture in 1e-3..1.0f64, f in 1e11..3e12f64) {
        let (_, outer) = fresnel_bounds(aperture, wavelength(f));
        let mut last = FieldRegion::ReactiveNearField;
        let rank = |r: FieldRegion| r as u8;
        for i in 0..=200 {
            let r = fresnel_region(aperture, f, outer * 1.5 * i as f64 / 200.0).unwrap();
            prop_assert!(rank(r) >= rank(last));
            last = r;
        }
        prop_assert_eq!(last, FieldRegion::FarField);
    }
}
