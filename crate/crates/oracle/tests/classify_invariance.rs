use gzeta_oracle::{Classifier, Mat, Ring};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_matrix(rng: &mut StdRng, f: &Ring, n: usize) -> Mat {
    let mut m = Mat::zero(n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, rng.gen_range(0..f.size() as u8));
        }
    }
    m
}

#[test]
fn classify_is_conjugation_invariant() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for (q, n) in [(2u64, 2usize), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4), (4, 2), (4, 3), (5, 2), (9, 2), (9, 3)] {
        let f = Ring::galois_field(q).unwrap();
        let cls = Classifier::new(f.clone(), n);
        let mut done = 0;
        while done < 1000 {
            let p = random_matrix(&mut rng, &f, n);
            let Some(pi) = f.mat_inv(&p) else { continue };
            let a = random_matrix(&mut rng, &f, n);
            let b = f.mat_mul(&f.mat_mul(&pi, &a), &p);
            assert_eq!(cls.key(&a), cls.key(&b), "q={q} n={n}");
            done += 1;
        }
    }
}
