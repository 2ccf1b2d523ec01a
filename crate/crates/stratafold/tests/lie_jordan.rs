//! Axioms tying the bracket and the symmetrized product together on
//! random Hermitian triples: the bracket derives the product, the product
//! associator is the double bracket, and the two recombine into the
//! associative matrix product.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stratafold::qgeom::{jordan_product, lie_product, HermitianOperator};

fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> HermitianOperator {
    let m = DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let sym = (&m + m.adjoint()).map(|z| z * 0.5);
    HermitianOperator::new(sym).unwrap()
}

#[test]
fn bracket_is_a_derivation_of_the_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4c4a_0001);
    for n in 2..=5usize {
        for _ in 0..125 {
            let a = random_hermitian(&mut rng, n);
            let b = random_hermitian(&mut rng, n);
            let c = random_hermitian(&mut rng, n);
            let lhs = lie_product(&jordan_product(&a, &b).unwrap(), &c).unwrap();
            let rhs = jordan_product(&a, &lie_product(&b, &c).unwrap())
                .unwrap()
                .add(&jordan_product(&lie_product(&a, &c).unwrap(), &b).unwrap())
                .unwrap();
            assert!(lhs.sub(&rhs).unwrap().norm_inf() <= 1e-12, "n={n}");
        }
    }
}

#[test]
fn product_associator_is_the_double_bracket() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4c4a_0002);
    for n in 2..=5usize {
        for _ in 0..125 {
            let a = random_hermitian(&mut rng, n);
            let b = random_hermitian(&mut rng, n);
            let c = random_hermitian(&mut rng, n);
            let assoc = jordan_product(&jordan_product(&a, &b).unwrap(), &c)
                .unwrap()
                .sub(&jordan_product(&a, &jordan_product(&b, &c).unwrap()).unwrap())
                .unwrap();
            let double = lie_product(&lie_product(&a, &c).unwrap(), &b).unwrap();
            assert!(assoc.sub(&double).unwrap().norm_inf() <= 1e-12, "n={n}");
        }
    }
}

#[test]
fn products_recombine_into_the_matrix_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4c4a_0003);
    for n in 2..=5usize {
        for _ in 0..50 {
            let a = random_hermitian(&mut rng, n);
            let b = random_hermitian(&mut rng, n);
            let sym = jordan_product(&a, &b).unwrap();
            let anti = lie_product(&a, &b).unwrap();
            let rebuilt = sym.matrix()
                + anti.matrix().map(|z| z * Complex64::new(0.0, 1.0));
            let direct = a.matrix() * b.matrix();
            let gap = (rebuilt - direct).map(|z| z.norm()).max();
            assert!(gap <= 1e-13, "n={n}");
        }
    }
}

#[test]
fn jordan_identity_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4c4a_0004);
    for n in 2..=4usize {
        for _ in 0..40 {
            let a = random_hermitian(&mut rng, n);
            let b = random_hermitian(&mut rng, n);
            let a2 = jordan_product(&a, &a).unwrap();
            let lhs = jordan_product(&jordan_product(&a, &b).unwrap(), &a2).unwrap();
            let rhs = jordan_product(&a, &jordan_product(&b, &a2).unwrap()).unwrap();
            assert!(lhs.sub(&rhs).unwrap().norm_inf() <= 1e-12, "n={n}");
        }
    }
}
