use mcrank::complete::{gaussian_partial, lowrank_fit, FitOptions};
use mcrank::pattern::cube;
use mcrank::typical::{cube_discriminants, cube_typical_sample, trial_rng, typical_scan, CertificateKind};

#[test]
fn negative_discriminant_blocks_rank_two_fits() {
    let opts = FitOptions {
        restarts: 50,
        ..FitOptions::default()
    };
    let mut certified = 0;
    let mut t = 0;
    while certified < 100 {
        let x = gaussian_partial(cube(), &mut trial_rng(99, t));
        t += 1;
        if cube_discriminants(&x).unwrap()[0] >= 0.0 {
            continue;
        }
        certified += 1;
        let fit = lowrank_fit(&x, 2, &opts).unwrap();
        assert!(fit.residual >= 1e-8, "trial {t}: residual {:e}", fit.residual);
    }
}

#[test]
fn scan_agrees_with_certificates() {
    let opts = FitOptions::default();
    let sample = cube_typical_sample(300, 12, &opts).unwrap();
    let scan = typical_scan(&cube(), 3, 300, 12, &opts).unwrap();
    // both draw the same matrices from the same per-trial streams
    for (a, b) in sample.records.iter().zip(&scan.records) {
        if a.certificate == Some(CertificateKind::ExactCertificate) {
            assert_eq!(b.class, Some(3), "trial {}", a.trial);
        }
    }
    assert_eq!(scan.count(3), sample.count(3));
    assert!(scan.classes.iter().all(|c| c.certificate == CertificateKind::OptimizerEvidence));
}
