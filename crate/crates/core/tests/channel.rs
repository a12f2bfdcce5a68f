use polar_aut::channel::{
    frame_rng, run_bler, transmit, transmit_symbols, wilson_interval, ChannelParams, DecoderSpec, Simulation,
    StopRule, WILSON_Z,
};
use polar_aut::monomial::closure_of_rows;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn awgn_moments() {
    let params = ChannelParams::from_noise_variance(1.0, 0.5).unwrap();
    let zeros = vec![0u8; 1_000_000];
    let mut y = vec![0.0; zeros.len()];
    transmit_symbols(&zeros, &params, &mut ChaCha8Rng::seed_from_u64(21), &mut y);
    let n = y.len() as f64;
    let mean = y.iter().sum::<f64>() / n;
    let var = y.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    assert!((mean - 1.0).abs() < 0.01, "mean {mean}");
    assert!((var - 1.0).abs() < 0.01, "variance {var}");
    // three standard errors
    assert!((mean - 1.0).abs() < 3.0 / n.sqrt());
}

#[test]
fn ones_map_to_minus_one() {
    let params = ChannelParams::from_noise_variance(0.25, 0.5).unwrap();
    let ones = vec![1u8; 200_000];
    let mut y = vec![0.0; ones.len()];
    transmit_symbols(&ones, &params, &mut ChaCha8Rng::seed_from_u64(22), &mut y);
    let mean = y.iter().sum::<f64>() / y.len() as f64;
    let se = (0.25 / y.len() as f64).sqrt();
    assert!((mean + 1.0).abs() < 3.0 * se, "mean {mean}");
}

#[test]
fn near_noiseless_llrs_carry_the_bits() {
    let params = ChannelParams::from_noise_variance(1e-6, 0.5).unwrap();
    let c: Vec<u8> = (0..256).map(|i| (i * 7 % 3 == 0) as u8).collect();
    let llr = transmit(&c, &params, &mut ChaCha8Rng::seed_from_u64(1));
    assert!(c.iter().zip(&llr).all(|(&b, &l)| (b == 1) == (l < 0.0)));
    assert!(llr.iter().all(|l| l.abs() > 1e5));
}

#[test]
fn frames_replay_from_their_index() {
    let params = ChannelParams::new(2.0, 0.5).unwrap();
    let c = vec![0u8; 64];
    let a = transmit(&c, &params, &mut frame_rng(77, 1234));
    let b = transmit(&c, &params, &mut frame_rng(77, 1234));
    let other = transmit(&c, &params, &mut frame_rng(77, 1235));
    assert_eq!(a, b);
    assert_ne!(a, other);
}

#[test]
fn worker_count_does_not_change_results() {
    let code = closure_of_rows(&[27, 56], 7).unwrap();
    for label in ["sc", "scl-4", "aut-4-sc"] {
        let mut sim = Simulation::new("c", label.parse().unwrap(), vec![1.5, 2.5]);
        sim.seed = 5;
        sim.stop = StopRule { max_frames: 3_000, target_errors: 60 };
        let one = run_bler(&code, &sim).unwrap();
        sim.workers = 8;
        let eight = run_bler(&code, &sim).unwrap();
        assert_eq!(one, eight, "{label}");
    }
}

#[test]
fn stop_rule_and_result_fields() {
    let code = closure_of_rows(&[27, 56], 7).unwrap();
    let mut sim = Simulation::new("c", DecoderSpec::Sc, vec![0.0, 6.0]);
    sim.stop = StopRule { max_frames: 1_000, target_errors: 25 };
    let r = sim.run(&code).unwrap();
    // low SNR stops on errors, high SNR on frames
    assert_eq!(r[0].block_errors, 25);
    assert!(r[0].frames < 1_000);
    assert_eq!(r[1].frames, 1_000);
    for x in &r {
        assert!(x.block_errors <= x.frames);
        assert_eq!(x.bler, x.block_errors as f64 / x.frames as f64);
        assert_eq!((x.ci_lo, x.ci_hi), wilson_interval(x.block_errors, x.frames, WILSON_Z));
        assert!(x.ci_lo <= x.bler && x.bler <= x.ci_hi);
    }
}

#[test]
fn degenerate_inputs_are_rejected() {
    let code = closure_of_rows(&[27, 56], 7).unwrap();
    let mut sim = Simulation::new("c", DecoderSpec::Sc, vec![1.0]);
    sim.stop.max_frames = 0;
    assert!(sim.run(&code).is_err());
    let mut sim = Simulation::new("c", DecoderSpec::Sc, vec![f64::NAN]);
    sim.stop.max_frames = 10;
    assert!(sim.run(&code).is_err());
    let mut sim = Simulation::new("c", DecoderSpec::Sc, vec![1.0]);
    sim.workers = 0;
    assert!(sim.run(&code).is_err());
}

#[test]
fn bler_falls_with_snr() {
    let code = closure_of_rows(&[27, 56], 7).unwrap();
    for label in ["sc", "scl-8", "aut-8-sc"] {
        let mut sim = Simulation::new("c", label.parse().unwrap(), vec![0.5, 1.5, 2.5]);
        sim.stop = StopRule { max_frames: 20_000, target_errors: 100 };
        let r = sim.run(&code).unwrap();
        for w in r.windows(2) {
            assert!(w[1].bler <= w[0].bler || !w[1].separated_from(&w[0]), "{label}: {w:?}");
        }
        assert!(r[2].separated_from(&r[0]));
    }
}

#[test]
fn decoders_share_channel_realizations() {
    // identical ensembles give identical counts; LTA-only Aut-SC equals SC frame by frame
    let code = closure_of_rows(&[31, 57], 8).unwrap();
    let stop = StopRule { max_frames: 1_500, target_errors: 1_500 };
    let run = |label: &str| {
        let mut sim = Simulation::new("c", label.parse().unwrap(), vec![2.0]);
        sim.stop = stop;
        sim.seed = 3;
        sim.run(&code).unwrap()[0].block_errors
    };
    assert_eq!(run("sc"), run("aut-4-sc-lta"));
    assert_eq!(run("aut-4-sc-fixed"), run("aut-4-sc-fixed"));
}
