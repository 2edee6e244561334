#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use tgrs::field::{sqrt_in_extension, Embedding, Field, FieldCtx, Gf};
use tgrs::poly::Poly;
use tgrs::tgrs::{u_weights, Regime, TgrsSpec};

pub const EX36_ALPHA: [u64; 8] = [1, 2, 3, 5, 6, 8, 9, 10];
pub const EX37_ALPHA: [u64; 10] = [0, 1, 2, 3, 4, 5, 6, 9, 10, 12];

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn ints(f: &Field, xs: &[u64]) -> Vec<Gf> {
    xs.iter().map(|&x| f.elem(x).unwrap()).collect()
}

pub fn raws(xs: &[Gf]) -> Vec<u64> {
    xs.iter().map(Gf::raw).collect()
}

pub fn ex36(k: usize, eta: &[u64]) -> TgrsSpec {
    let f = FieldCtx::prime(11).unwrap();
    TgrsSpec::from_ints(&f, k, &EX36_ALPHA, None, eta, Regime::Extended).unwrap()
}

pub fn ex37(k: usize, eta: &[u64]) -> TgrsSpec {
    let f = FieldCtx::prime(13).unwrap();
    TgrsSpec::from_ints(&f, k, &EX37_ALPHA, None, eta, Regime::Extended).unwrap()
}

/// `n` distinct random elements of `field`, drawn from the first `pool` raw values.
pub fn distinct_points(rng: &mut StdRng, field: &Field, n: usize, pool: u64) -> Vec<Gf> {
    let mut all: Vec<u64> = (0..pool.min(field.order())).collect();
    all.shuffle(rng);
    all.truncate(n);
    all.into_iter().map(|x| field.elem(x).unwrap()).collect()
}

pub fn nonzero(rng: &mut StdRng, field: &Field) -> Gf {
    field.elem(rng.gen_range(1..field.order())).unwrap()
}

pub fn any_elem(rng: &mut StdRng, field: &Field) -> Gf {
    field.elem(rng.gen_range(0..field.order())).unwrap()
}

/// Random valid spec in the standard range with every η nonzero.
pub fn random_standard_spec(rng: &mut StdRng, primes: &[u64], max_n: usize, max_ell: usize) -> TgrsSpec {
    loop {
        let p = *primes.choose(rng).unwrap();
        let f = FieldCtx::prime(p).unwrap();
        let n = rng.gen_range(5..=max_n.min(p as usize));
        let k = rng.gen_range(2..n - 1);
        let top = max_ell.min(k.min(n - k).saturating_sub(1));
        if top == 0 {
            continue;
        }
        let ell = rng.gen_range(1..=top);
        let alpha = distinct_points(rng, &f, n, p);
        let v = (0..n).map(|_| nonzero(rng, &f)).collect();
        let eta = (0..ell).map(|_| nonzero(rng, &f)).collect();
        return TgrsSpec::new(&f, k, alpha, v, eta).unwrap();
    }
}

/// GF(p) and GF(p^2) with the embedding between them.
pub fn prime_and_square(p: u64) -> (Field, Field, Embedding) {
    let small = FieldCtx::prime(p).unwrap();
    let big = FieldCtx::new(p, 2, None).unwrap();
    let emb = Embedding::new(&small, &big).unwrap();
    (small, big, emb)
}

/// `v_i = sqrt(λ u_i)` in GF(p^2) for points of GF(p).
pub fn self_dual_multipliers(alpha_small: &[Gf], lambda: &Gf, emb: &Embedding) -> Vec<Gf> {
    let w = u_weights(alpha_small).unwrap();
    w.u.iter()
        .map(|u| sqrt_in_extension(&(lambda * u), emb).unwrap())
        .collect()
}

/// Descending σ of `∏ (x - α_i)`.
pub fn sigma(field: &Field, alpha: &[Gf]) -> Vec<Gf> {
    Poly::from_roots(field, alpha).unwrap().descending()
}

/// How a self-dual candidate was altered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Perturb {
    None,
    Multiplier,
    Point,
    Eta,
}

/// A spec over GF(p^2) with `n = 2k`, points in GF(p), built to satisfy the
/// self-duality conditions for `ell ∈ {1, 2}` and then optionally perturbed.
pub fn self_dual_candidate(rng: &mut StdRng, p: u64, k: usize, ell: usize, perturb: Perturb) -> TgrsSpec {
    let (small, big, emb) = prime_and_square(p);
    let n = 2 * k;
    let (alpha, eta_small) = loop {
        let alpha = distinct_points(rng, &small, n, p);
        let s = sigma(&small, &alpha);
        let ok = match ell {
            1 => !s[1].is_zero(),
            2 => s[1].is_zero() && s[3].is_zero() && !s[2].is_zero(),
            _ => unimplemented!("candidates for ell <= 2"),
        };
        if !ok {
            continue;
        }
        let eta = match ell {
            1 => vec![&small.int(2) / &s[1]],
            _ => {
                let e1 = nonzero(rng, &small);
                let rest = &s[2] - &e1.inv().unwrap();
                if rest.is_zero() {
                    continue;
                }
                vec![e1, rest.inv().unwrap()]
            }
        };
        break (alpha, eta);
    };
    let lambda = nonzero(rng, &small);
    let mut alpha = alpha;
    let mut eta_small = eta_small;
    match perturb {
        Perturb::Point => {
            let unused: Vec<u64> = (0..p).filter(|x| !alpha.iter().any(|a| a.raw() == *x)).collect();
            let i = rng.gen_range(0..n);
            alpha[i] = small.elem(*unused.choose(rng).unwrap()).unwrap();
        }
        Perturb::Eta => {
            let i = rng.gen_range(0..ell);
            let bump = small.elem(rng.gen_range(1..p)).unwrap();
            eta_small[i] = &eta_small[i] + &bump;
            if eta_small[i].is_zero() {
                eta_small[i] = small.one();
            }
        }
        _ => {}
    }
    let mut v = self_dual_multipliers(&alpha, &lambda, &emb);
    if perturb == Perturb::Multiplier {
        let i = rng.gen_range(0..n);
        let c = loop {
            let c = nonzero(rng, &big);
            if !(&c * &c).is_one() {
                break c;
            }
        };
        v[i] = &v[i] * &c;
    }
    let lift = |xs: &[Gf]| xs.iter().map(|x| emb.apply(x).unwrap()).collect::<Vec<_>>();
    TgrsSpec::with_regime(&big, k, lift(&alpha), v, lift(&eta_small), Regime::Standard).unwrap()
}

pub fn gram_is_zero(spec: &TgrsSpec) -> bool {
    let g = spec.generator_matrix();
    g.mul(&g.transpose()).unwrap().is_zero()
}
