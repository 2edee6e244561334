use proptest::prelude::*;

use tgrs::field::{Field, FieldCtx, Gf};
use tgrs::matrix::Matrix;
use tgrs::poly::{ESeq, LambdaSeq, Poly};
use tgrs::tgrs::TgrsSpec;

fn fields() -> Vec<Field> {
    vec![
        FieldCtx::prime(7).unwrap(),
        FieldCtx::prime(13).unwrap(),
        FieldCtx::new(3, 2, None).unwrap(),
        FieldCtx::new(13, 2, Some(&[2, 7, 1])).unwrap(),
        FieldCtx::new(5, 3, None).unwrap(),
    ]
}

fn field_and_values(count: usize) -> impl Strategy<Value = (Field, Vec<u64>)> {
    (0..fields().len()).prop_flat_map(move |i| {
        let f = fields()[i].clone();
        let q = f.order();
        (Just(f), prop::collection::vec(0..q, count))
    })
}

fn elems(f: &Field, xs: &[u64]) -> Vec<Gf> {
    xs.iter().map(|&x| f.elem(x).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((f, xs) in field_and_values(3)) {
        let e = elems(&f, &xs);
        let (a, b, c) = (&e[0], &e[1], &e[2]);
        prop_assert_eq!(&(a + b) + c, a + &(b + c));
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert_eq!(&(a - b) + b, a.clone());
        if !a.is_zero() {
            prop_assert!((a * &a.inv().unwrap()).is_one());
            prop_assert!(a.pow(f.order() - 1).is_one());
        }
    }

    #[test]
    fn sqrt_squares_back((f, xs) in field_and_values(1)) {
        let a = f.elem(xs[0]).unwrap();
        let sq = &a * &a;
        let r = sq.sqrt().unwrap();
        prop_assert_eq!(&r * &r, sq);
    }

    #[test]
    fn division_identity((f, xs) in field_and_values(9)) {
        let num = Poly::new(&f, &elems(&f, &xs[..6])).unwrap();
        let mut den_c = elems(&f, &xs[6..]);
        den_c.push(f.one());
        let den = Poly::new(&f, &den_c).unwrap();
        let (quo, rem) = num.div_rem(&den).unwrap();
        prop_assert_eq!(quo.mul(&den).unwrap().add(&rem).unwrap(), num);
        prop_assert!(rem.degree().is_none_or(|d| d < 3));
    }

    #[test]
    fn from_roots_vanishes_exactly_there((f, xs) in field_and_values(4)) {
        let mut pts = xs.clone();
        pts.sort_unstable();
        pts.dedup();
        let roots = elems(&f, &pts);
        let p = Poly::from_roots(&f, &roots).unwrap();
        prop_assert_eq!(p.degree(), Some(roots.len()));
        for x in f.elements() {
            prop_assert_eq!(p.eval(&x).is_zero(), pts.contains(&x.raw()));
        }
    }

    #[test]
    fn sequences_satisfy_their_recurrences((f, xs) in field_and_values(5)) {
        let mut c = elems(&f, &xs);
        c[0] = f.one();
        let e = ESeq::new(&f, &c).unwrap();
        prop_assert!(e.verify(&c));
        let lam = LambdaSeq::new(&f, &c).unwrap();
        prop_assert!(lam.verify(&c));
    }

    #[test]
    fn rank_nullity((f, xs) in field_and_values(12)) {
        let rows: Vec<Vec<u64>> = xs.chunks(4).map(<[u64]>::to_vec).collect();
        let m = Matrix::from_ints(&f, &rows).unwrap();
        let kernel = m.nullspace_matrix();
        prop_assert_eq!(m.rank() + kernel.rows(), 4);
        if kernel.rows() > 0 {
            prop_assert!(m.mul(&kernel.transpose()).unwrap().is_zero());
        }
    }

    #[test]
    fn determinant_is_multiplicative((f, xs) in field_and_values(18)) {
        let a = Matrix::from_ints(&f, &xs[..9].chunks(3).map(<[u64]>::to_vec).collect::<Vec<_>>()).unwrap();
        let b = Matrix::from_ints(&f, &xs[9..].chunks(3).map(<[u64]>::to_vec).collect::<Vec<_>>()).unwrap();
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.determinant().unwrap(), &a.determinant().unwrap() * &b.determinant().unwrap());
        prop_assert_eq!(a.determinant().unwrap().is_zero(), a.rank() < 3);
    }

    #[test]
    fn encoding_is_linear_and_matches_generator(
        seed in 0u64..u64::MAX,
        m1 in prop::collection::vec(0u64..13, 4),
        m2 in prop::collection::vec(0u64..13, 4),
        c in 0u64..13,
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let f = FieldCtx::prime(13).unwrap();
        let mut pts: Vec<u64> = (0..13).collect();
        rand::seq::SliceRandom::shuffle(pts.as_mut_slice(), &mut rng);
        let alpha = elems(&f, &pts[..9]);
        let v = (0..9).map(|_| f.elem(rng.gen_range(1..13)).unwrap()).collect();
        let eta = (0..2).map(|_| f.elem(rng.gen_range(1..13)).unwrap()).collect();
        let spec = TgrsSpec::new(&f, 4, alpha, v, eta).unwrap();
        let (a, b, c) = (elems(&f, &m1), elems(&f, &m2), f.elem(c).unwrap());
        let combo: Vec<Gf> = a.iter().zip(&b).map(|(x, y)| &(&c * x) + y).collect();
        let lhs = spec.encode(&combo).unwrap().to_ints();
        let ea = spec.encode(&a).unwrap();
        let eb = spec.encode(&b).unwrap();
        let rhs: Vec<u64> = ea.values().iter().zip(eb.values()).map(|(x, y)| (&(&c * x) + y).raw()).collect();
        prop_assert_eq!(&lhs, &rhs);
        let g = spec.generator_matrix();
        let row = Matrix::from_rows(&f, &[combo]).unwrap();
        prop_assert_eq!(row.mul(&g).unwrap().to_ints()[0].clone(), lhs);
    }
}
