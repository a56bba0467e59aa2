use proptest::prelude::*;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::f64::consts::PI;

use terasim::modem::*;
use terasim::{CMatrix, CVector, Complex64, Error};

fn bits_of(mut v: u64, n: usize) -> Vec<bool> {
    (0..n)
        .map(|_| {
            let b = v & 1 == 1;
            v >>= 1;
            b
        })
        .collect()
}

/// Binomial by Pascal's triangle in u128.
fn pascal(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[k as usize]
}

fn floor_log2(v: u128) -> u32 {
    127 - v.leading_zeros()
}

fn gim(f: u64, fa: u64, s: u64, sa: u64, order: usize) -> GimConfig {
    GimConfig {
        total_bands: f,
        active_bands: fa,
        total_antennas: s,
        active_antennas: sa,
        constellation_order: order,
        antenna_reading: BinomialReading::Standard,
    }
}

#[test]
fn sm_bit_examples() {
    let sm = |num_sas, q, constellation_order| SmConfig {
        num_sas,
        q,
        constellation_order,
    };
    assert_eq!(sm_bit_count(&sm(4, 2, 16)).unwrap(), 8);
    assert_eq!(sm_bit_count(&sm(1, 1, 2)).unwrap(), 1);
    assert!(sm_bit_count(&sm(3, 2, 16)).is_err());
}

#[test]
fn gim_bit_examples() {
    assert_eq!(floor_log2_binomial(4, 2).unwrap(), 2);
    assert_eq!(floor_log2_binomial(7, 7).unwrap(), 0);
    assert_eq!(gim_bit_count(&gim(4, 2, 4, 1, 16)).unwrap(), 8);
    assert!(gim_bit_count(&gim(4, 5, 4, 1, 16)).is_err());
}

#[test]
fn exact_binomials_match_pascal() {
    for n in 0..=90u64 {
        for k in 0..=n {
            let lib = binomial(n, k);
            assert_eq!(lib.to_string(), pascal(n, k).to_string(), "C({n},{k})");
            if k > 0 && k < n {
                assert_eq!(floor_log2_binomial(n, k).unwrap(), floor_log2(pascal(n, k)));
            }
        }
    }
}

#[test]
fn sm_zero_bits_map_to_origin() {
    let cfg = SmConfig {
        num_sas: 4,
        q: 2,
        constellation_order: 16,
    };
    let s = sm_map(&cfg, &[false; 8]).unwrap();
    assert_eq!((s.sa_index, s.ae_index, s.label), (0, 0, 0));
    assert_eq!(s.point, Constellation::qam(16).unwrap().points()[0]);
    assert!(sm_map(&cfg, &[false; 7]).is_err());
}

#[test]
fn sm_round_trips_every_word() {
    let cfg = SmConfig {
        num_sas: 4,
        q: 2,
        constellation_order: 16,
    };
    let mut seen = std::collections::HashSet::new();
    for v in 0..256u64 {
        let b = bits_of(v, 8);
        let s = sm_map(&cfg, &b).unwrap();
        assert!(seen.insert((s.sa_index, s.ae_index, s.label)));
        assert_eq!(sm_demap(&cfg, &s).unwrap(), b);
    }
}

#[test]
fn gim_round_trips_every_word() {
    let cfg = gim(6, 3, 5, 2, 4);
    let n = gim_bit_count(&cfg).unwrap();
    assert_eq!(n, 4 + 3 + 2);
    for v in 0..1u64 << n {
        let b = bits_of(v, n as usize);
        let s = gim_map(&cfg, &b).unwrap();
        assert_eq!(s.bands.len(), 3);
        assert_eq!(s.antennas.len(), 2);
        assert_eq!(gim_demap(&cfg, &s).unwrap(), b);
    }
}

#[test]
fn combination_ranking_is_a_bijection() {
    let (n, k) = (8u64, 3u64);
    let total = pascal(n, k) as u64;
    let mut seen = std::collections::BTreeSet::new();
    for r in 0..total {
        let rank = BigUint::from(r);
        let set = unrank_combination(n, k, &rank).unwrap();
        assert!(set.windows(2).all(|w| w[0] < w[1]) && set.iter().all(|&i| i < n));
        assert_eq!(rank_combination(n, &set).unwrap(), rank);
        assert!(seen.insert(set));
    }
}

#[test]
fn gim_not_below_sm_when_it_contains_sm() {
    for sas in [1usize, 2, 4, 8, 16] {
        for q in [1usize, 2, 4] {
            for order in [2usize, 4, 16, 64] {
                let sm = sm_bit_count(&SmConfig {
                    num_sas: sas,
                    q,
                    constellation_order: order,
                })
                .unwrap();
                let antennas = (sas * q * q) as u64;
                for bands in 1..=6u64 {
                    for active in 1..=bands {
                        let g = gim_bit_count(&gim(bands, active, antennas, 1, order)).unwrap();
                        assert!(g >= sm, "sas {sas} q {q} order {order} bands {bands}/{active}");
                    }
                }
            }
        }
    }
}

#[test]
fn qam_has_unit_energy_and_zero_mean() {
    for order in [2, 4, 16, 64, 256] {
        let c = Constellation::qam(order).unwrap();
        let n = c.order() as f64;
        let energy: f64 = c.points().iter().map(|z| z.norm_sqr()).sum::<f64>() / n;
        let mean: Complex64 = c.points().iter().sum::<Complex64>() / n;
        assert!((energy - 1.0).abs() < 1e-12);
        assert!(mean.norm() < 1e-12);
    }
    assert!(Constellation::qam(8).is_err());
}

#[test]
fn qam_neighbours_differ_in_one_bit() {
    let c = Constellation::qam(16).unwrap();
    let d_min = 2.0 / 10f64.sqrt();
    for (i, a) in c.points().iter().enumerate() {
        for (j, b) in c.points().iter().enumerate() {
            if ((a - b).norm() - d_min).abs() < 1e-12 {
                assert_eq!((i ^ j).count_ones(), 1);
            }
        }
    }
}

#[test]
fn gaussian_pulse_peak_and_area() {
    let (a, b, w) = (1.7, 2e-12, 3e-13);
    let spec = PulseSpec::Gaussian {
        amplitude: a,
        center: b,
        width: w,
        period: 4e-12,
    };
    assert_eq!(pulse_sample(&spec, b).unwrap(), a);
    let n = 20_000;
    let (lo, hi) = (b - 12.0 * w, b + 12.0 * w);
    let h = (hi - lo) / n as f64;
    let mut area = 0.0;
    for i in 0..=n {
        let wgt = if i == 0 || i == n { 0.5 } else { 1.0 };
        area += wgt * pulse_sample(&spec, lo + i as f64 * h).unwrap();
    }
    area *= h;
    let want = a * w * (2.0 * PI).sqrt();
    assert!((area - want).abs() < 1e-9 * want);
}

#[test]
fn raised_cosine_values_and_limit() {
    let (t, alpha) = (1e-12, 0.35);
    let spec = PulseSpec::RaisedCosine {
        period: t,
        rolloff: alpha,
    };
    assert_eq!(pulse_sample(&spec, 0.0).unwrap(), 1.0);
    assert!(pulse_sample(&spec, 3.0 * t).unwrap().abs() < 1e-15);
    let ts = t / (2.0 * alpha);
    let limit = pulse_sample(&spec, ts).unwrap();
    let x = 1.0 / (2.0 * alpha);
    let want = PI / 4.0 * (PI * x).sin() / (PI * x);
    assert!((limit - want).abs() < 1e-12);
    for eps in [1e-4, 1e-5, 1e-6] {
        for side in [-1.0, 1.0] {
            let near = pulse_sample(&spec, ts * (1.0 + side * eps)).unwrap();
            assert!((near - limit).abs() < 10.0 * eps, "eps {eps}: {near} vs {limit}");
        }
    }
    assert!(pulse_sample(&PulseSpec::RaisedCosine { period: t, rolloff: 1.0 }, 0.0).is_err());
}

#[test]
fn ml_recovers_noiseless_candidate() {
    let alphabet = Constellation::qam(4).unwrap().points().to_vec();
    let set = CandidateSet::Product { alphabet, dim: 3 };
    let h = CMatrix::from_fn(3, 3, |i, j| Complex64::new(1.0 + i as f64, (j as f64 - i as f64) * 0.3));
    for idx in [0usize, 17, 63] {
        let x = set.candidate(idx);
        let d = ml_detect(&(&h * &x), &h, &set).unwrap();
        assert_eq!(d.index, idx);
        assert!(d.metric < 1e-24);
    }
}

#[test]
fn ml_tie_goes_to_lower_index() {
    let set = CandidateSet::Explicit(vec![
        CVector::from_element(1, Complex64::new(1.0, 0.0)),
        CVector::from_element(1, Complex64::new(-1.0, 0.0)),
    ]);
    let h = CMatrix::identity(1, 1);
    let d = ml_detect(&CVector::zeros(1), &h, &set).unwrap();
    assert_eq!(d.index, 0);
}

#[test]
fn ml_rejects_huge_lattice() {
    let set = CandidateSet::Product {
        alphabet: Constellation::qam(16).unwrap().points().to_vec(),
        dim: 6,
    };
    let h = CMatrix::identity(6, 6);
    assert!(matches!(ml_detect(&CVector::zeros(6), &h, &set), Err(Error::TooManyCandidates { .. })));
}

fn cn(r: &mut ChaCha8Rng, var: f64) -> Complex64 {
    let s = (var / 2.0).sqrt();
    let re: f64 = r.sample(StandardNormal);
    let im: f64 = r.sample(StandardNormal);
    Complex64::new(s * re, s * im)
}

/// Symbol errors over `trials` 2x2 4-QAM uses at 20 dB, detected by `detect`.
fn ser_run(seed: u64, trials: usize, detect: &dyn Fn(&CVector, &CMatrix) -> [usize; 2]) -> f64 {
    let pts = Constellation::qam(4).unwrap().points().to_vec();
    let noise_var = 0.01;
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut errors = 0;
    for _ in 0..trials {
        let h = CMatrix::from_fn(2, 2, |_, _| cn(&mut r, 1.0));
        let sent = [r.random_range(0..4), r.random_range(0..4)];
        let x = CVector::from_vec(vec![pts[sent[0]], pts[sent[1]]]);
        let n = CVector::from_fn(2, |_, _| cn(&mut r, noise_var));
        let got = detect(&(&h * x + n), &h);
        errors += (0..2).filter(|&i| got[i] != sent[i]).count();
    }
    errors as f64 / (2 * trials) as f64
}

#[test]
fn ml_error_rate_agrees_with_nested_loop_search() {
    let pts = Constellation::qam(4).unwrap().points().to_vec();
    let set = CandidateSet::Product {
        alphabet: pts.clone(),
        dim: 2,
    };
    let trials = 10_000;
    let lib = ser_run(1, trials, &|y, h| {
        let d = ml_detect(y, h, &set).unwrap();
        [d.index % 4, d.index / 4]
    });
    let nested = ser_run(2, trials, &|y, h| {
        let mut best = (f64::INFINITY, [0, 0]);
        for a in 0..4 {
            for b in 0..4 {
                let mut m = 0.0;
                for i in 0..2 {
                    m += (y[i] - h[(i, 0)] * pts[a] - h[(i, 1)] * pts[b]).norm_sqr();
                }
                if m < best.0 {
                    best = (m, [a, b]);
                }
            }
        }
        best.1
    });
    let p = 0.5 * (lib + nested);
    let sigma = (2.0 * p * (1.0 - p) / (2 * trials) as f64).sqrt();
    assert!(p > 0.0);
    assert!((lib - nested).abs() <= 3.0 * sigma, "{lib} vs {nested} (sigma {sigma})");
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn raised_cosine_is_even(t in -5e-12..5e-12f64, alpha in 0.0..0.99f64) {
        let spec = PulseSpec::RaisedCosine { period: 1e-12, rolloff: alpha };
        let a = pulse_sample(&spec, t).unwrap();
        let b = pulse_sample(&spec, -t).unwrap();
        prop_assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn sm_map_inverts(sa_log in 0u32..5, q_log in 0u32..3, m_log in prop::sample::select(vec![1u32, 2, 4, 6]), word in any::<u64>()) {
        let cfg = SmConfig { num_sas: 1 << sa_log, q: 1 << q_log, constellation_order: 1 << m_log };
        let n = sm_bit_count(&cfg).unwrap() as usize;
        let b = bits_of(word, n);
        prop_assert_eq!(sm_demap(&cfg, &sm_map(&cfg, &b).unwrap()).unwrap(), b);
    }

    #[test]
    fn gim_map_inverts(f in 1u64..12, fa_frac in 0.0..1.0f64, s in 1u64..12, sa_frac in 0.0..1.0f64, word in any::<u64>()) {
        let fa = 1 + ((f - 1) as f64 * fa_frac) as u64;
        let sa = 1 + ((s - 1) as f64 * sa_frac) as u64;
        let cfg = gim(f, fa, s, sa, 16);
        let n = gim_bit_count(&cfg).unwrap() as usize;
        let b = bits_of(word, n);
        prop_assert_eq!(gim_demap(&cfg, &gim_map(&cfg, &b).unwrap()).unwrap(), b);
    }
}
