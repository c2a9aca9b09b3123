//! Seeded corpora of tame Jacobian maps and symplectic maps, each stored with
//! an exact inverse.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weyl_core::poisson::{rotation, shear, PoissonContext};
use weyl_core::{rat, Monomial, Poly, PolyEndo, WeylElement};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug)]
pub struct Case {
    pub map: PolyEndo,
    pub inverse: PolyEndo,
}

#[derive(Clone, Copy, Debug)]
pub struct TameParams {
    pub max_len: usize,
    pub max_degree: u32,
    pub shear_degree: u32,
    pub shear_terms: usize,
}

pub const CORPUS: TameParams = TameParams {
    max_len: 5,
    max_degree: 6,
    shear_degree: 3,
    shear_terms: 3,
};

fn nonzero_coeff(rng: &mut ChaCha8Rng) -> i64 {
    *[-2, -1, 1, 2].choose(rng).unwrap()
}

/// Random polynomial in the variables other than `skip`, no constant or linear part.
fn shear_term(rng: &mut ChaCha8Rng, n: usize, skip: usize, p: TameParams) -> Poly {
    let mut f = Poly::zero(n);
    for _ in 0..rng.gen_range(1..=p.shear_terms) {
        let deg = rng.gen_range(2..=p.shear_degree.max(2));
        let mut e = vec![0u32; n];
        for _ in 0..deg {
            let mut j = rng.gen_range(0..n - 1);
            if j >= skip {
                j += 1;
            }
            e[j] += 1;
        }
        f = &f + &Poly::monomial(n, Monomial::from_exponents(e), rat(nonzero_coeff(rng)));
    }
    f
}

fn with_image(n: usize, i: usize, p: Poly) -> PolyEndo {
    let mut images: Vec<Poly> = (0..n).map(|j| Poly::var(n, j)).collect();
    images[i] = p;
    PolyEndo::new(images).unwrap()
}

/// One elementary automorphism and its inverse; `force_shear` picks a nonlinear one.
fn elementary(rng: &mut ChaCha8Rng, n: usize, p: TameParams, force_shear: bool) -> Case {
    let i = rng.gen_range(0..n);
    let xi = Poly::var(n, i);
    let kind = if n == 1 {
        rng.gen_range(2..5)
    } else if force_shear {
        0
    } else {
        rng.gen_range(0..6)
    };
    match kind {
        0 | 1 => {
            let f = shear_term(rng, n, i, p);
            Case {
                map: with_image(n, i, &xi + &f),
                inverse: with_image(n, i, &xi - &f),
            }
        }
        2 => {
            let m = with_image(n, i, -xi);
            Case { map: m.clone(), inverse: m }
        }
        3 => {
            let c = Poly::constant(n, rat(nonzero_coeff(rng)));
            Case {
                map: with_image(n, i, &xi + &c),
                inverse: with_image(n, i, &xi - &c),
            }
        }
        4 if n > 1 => {
            let j = (i + rng.gen_range(1..n)) % n;
            let mut images: Vec<Poly> = (0..n).map(|k| Poly::var(n, k)).collect();
            images.swap(i, j);
            let m = PolyEndo::new(images).unwrap();
            Case { map: m.clone(), inverse: m }
        }
        4 => {
            let m = with_image(n, i, -xi);
            Case { map: m.clone(), inverse: m }
        }
        _ => {
            let j = (i + rng.gen_range(1..n)) % n;
            let c = rat(nonzero_coeff(rng));
            let xj = Poly::var(n, j);
            Case {
                map: with_image(n, i, &xi + &xj.scale(&c)),
                inverse: with_image(n, i, &xi - &xj.scale(&c)),
            }
        }
    }
}

/// A composition of up to `max_len` elementary automorphisms whose images stay
/// within `max_degree`. For `n >= 2` the first step is a shear; a step that
/// would exceed the degree cap is redrawn a few times, then dropped.
pub fn tame_case(rng: &mut ChaCha8Rng, n: usize, p: TameParams) -> Case {
    let mut case = Case {
        map: PolyEndo::identity(n),
        inverse: PolyEndo::identity(n),
    };
    let len = rng.gen_range(1..=p.max_len);
    for step_idx in 0..len {
        for _ in 0..4 {
            let step = elementary(rng, n, p, step_idx == 0);
            let map = case.map.compose(&step.map).unwrap();
            if map.degree() > p.max_degree {
                continue;
            }
            let inverse = step.inverse.compose(&case.inverse).unwrap();
            case = Case { map, inverse };
            break;
        }
    }
    case
}

/// `count` maps cycling through `n = 1, 2, 3`.
pub fn jacobian_corpus(seed: u64, count: usize) -> Vec<Case> {
    corpus_with(seed, count, CORPUS)
}

pub fn corpus_with(seed: u64, count: usize, p: TameParams) -> Vec<Case> {
    let mut r = rng(seed);
    (0..count).map(|k| tame_case(&mut r, 1 + k % 3, p)).collect()
}

pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_degree: u32, terms: usize) -> Poly {
    let mut f = Poly::zero(n);
    for _ in 0..terms {
        let deg = rng.gen_range(0..=max_degree);
        let mut e = vec![0u32; n];
        for _ in 0..deg {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = weyl_core::ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        f = &f + &Poly::monomial(n, Monomial::from_exponents(e), c);
    }
    f
}

/// Random operator `sum c x^alpha d^beta` with `|alpha| + |beta| <= max_degree`.
pub fn random_weyl(rng: &mut ChaCha8Rng, n: usize, max_degree: u32, terms: usize) -> WeylElement {
    let mut a = WeylElement::zero(n);
    for _ in 0..terms {
        let deg = rng.gen_range(0..=max_degree);
        let mut e = vec![0u32; 2 * n];
        for _ in 0..deg {
            e[rng.gen_range(0..2 * n)] += 1;
        }
        let c = weyl_core::ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        let x = Monomial::from_exponents(e[..n].to_vec());
        let d = Monomial::from_exponents(e[n..].to_vec());
        a = &a + &WeylElement::term(n, x, d, c);
    }
    a
}

/// Symplectic maps of `P_{2n}`: compositions of shears `x -> x + {h, x}` with
/// `h` in the positions or in the momenta alone, and the rotation.
pub fn poisson_case(rng: &mut ChaCha8Rng, n: usize) -> Case {
    let ctx = PoissonContext::new(n);
    let m = 2 * n;
    let mut case = Case {
        map: PolyEndo::identity(m),
        inverse: PolyEndo::identity(m),
    };
    for _ in 0..rng.gen_range(1..=4) {
        let step = if rng.gen_bool(0.25) {
            let rot = rotation(&ctx);
            let inv = rot.compose(&rot).unwrap().compose(&rot).unwrap();
            Case { map: rot, inverse: inv }
        } else {
            let offset = if rng.gen_bool(0.5) { 0 } else { n };
            let mut h = Poly::zero(n);
            for _ in 0..rng.gen_range(1..=2) {
                let deg = rng.gen_range(2..=3);
                let mut e = vec![0u32; n];
                for _ in 0..deg {
                    e[rng.gen_range(0..n)] += 1;
                }
                h = &h + &Poly::monomial(n, Monomial::from_exponents(e), rat(nonzero_coeff(rng)));
            }
            let h = h.embed(m, offset);
            Case {
                map: shear(&ctx, &h).unwrap(),
                inverse: shear(&ctx, &-&h).unwrap(),
            }
        };
        let map = case.map.compose(&step.map).unwrap();
        if map.degree() > 6 {
            continue;
        }
        let inverse = step.inverse.compose(&case.inverse).unwrap();
        case = Case { map, inverse };
    }
    case
}

/// `count` symplectic maps alternating `n = 1, 2`.
pub fn poisson_corpus(seed: u64, count: usize) -> Vec<(usize, Case)> {
    let mut r = rng(seed);
    (0..count)
        .map(|k| {
            let n = 1 + k % 2;
            (n, poisson_case(&mut r, n))
        })
        .collect()
}
