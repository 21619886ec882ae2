use nazeta_core::eis3::{sl3_eisenstein_direct, FlagTable, SL3Point};
use nazeta_core::{Complex, NumericsConfig};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn c(re: f64) -> Complex {
    Complex::new(re, 0.0)
}

#[test]
fn identity_heights_30_and_60_agree() {
    let cfg = NumericsConfig::default();
    let id = SL3Point::identity();
    let a = sl3_eisenstein_direct(&id, c(3.0), c(2.0), 30, &cfg).unwrap();
    let b = sl3_eisenstein_direct(&id, c(3.0), c(2.0), 60, &cfg).unwrap();
    let rel = (a.value - b.value).norm() / b.value.norm();
    assert!(rel < 1e-3, "{rel}");
    assert!(b.estimate < a.estimate);
}

fn random_gamma(rng: &mut StdRng) -> [[i64; 3]; 3] {
    let mut g = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..3 {
        let (i, j) = loop {
            let (i, j) = (rng.gen_range(0..3), rng.gen_range(0..3));
            if i != j {
                break (i, j);
            }
        };
        let e = if rng.gen_bool(0.5) { 1 } else { -1 };
        // g <- g * (1 + e E_ij)
        for row in g.iter_mut() {
            row[j] += e * row[i];
        }
    }
    g
}

#[test]
fn gamma_invariance_on_random_pairs() {
    let cfg = NumericsConfig::default();
    let table = FlagTable::build(30, &cfg).unwrap();
    let mut rng = StdRng::seed_from_u64(7);
    let (s, t) = (c(3.0), c(2.0));
    for _ in 0..10 {
        let y = SL3Point::new(
            rng.gen_range(0.7..1.4),
            rng.gen_range(0.7..1.4),
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.5..0.5),
        )
        .unwrap();
        let g = random_gamma(&mut rng);
        let a = table.sum(&y.to_matrix(), s, t, &cfg).unwrap();
        let b = table.sum(&y.act(&g).unwrap().to_matrix(), s, t, &cfg).unwrap();
        assert!((a.value - b.value).norm() <= 2.0 * a.estimate.max(b.estimate), "{g:?}");
    }
}
