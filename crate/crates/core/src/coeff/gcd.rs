//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive scheme: pick a main variable shared by both operands, split
//! off the contents (gcds of the coefficients, computed recursively in the
//! remaining variables), and run a primitive pseudo-remainder sequence on
//! the primitive parts. Variables that cannot occur in the gcd are
//! detected first by evaluating the other variables at a point.

use num_rational::BigRational;
use num_traits::Zero;

use super::poly::Poly;
use super::Var;

/// Monic gcd. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }
    let (small, large) = if a.total_degree() <= b.total_degree() {
        (a, b)
    } else {
        (b, a)
    };
    if large.div_exact(small).is_some() {
        return small.monic();
    }
    gcd_rec(a, b).monic()
}

/// A gcd up to a nonzero rational factor.
fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let common = a.var_mask() & b.var_mask();
    if common == 0 {
        return Poly::one();
    }
    let present = a.var_mask() | b.var_mask();
    let mut x = None;
    let mut best = u32::MAX;
    for (i, v) in Var::ALL.into_iter().enumerate() {
        if present & (1 << i) == 0 {
            continue;
        }
        let bound = if common & (1 << i) == 0 {
            0
        } else {
            degree_bound(a, b, v)
        };
        if bound == 0 {
            return gcd_free_of(a, b, v);
        }
        if bound < best {
            best = bound;
            x = Some(v);
        }
    }
    let x = x.expect("common variable");

    let ca = content_in(a, x);
    let cb = content_in(b, x);
    let c = gcd_rec(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = primitive_prs(pa, pb, x);
    &c * &g
}

/// Gcd of `a` and `b` when it is known not to involve `x`: it divides
/// every coefficient of both operands in `x`.
fn gcd_free_of(a: &Poly, b: &Poly, x: Var) -> Poly {
    let mut parts: Vec<Poly> = a
        .coeffs_in(x)
        .into_iter()
        .chain(b.coeffs_in(x))
        .filter(|c| !c.is_zero())
        .collect();
    parts.sort_by_key(Poly::len);
    let mut parts = parts.into_iter();
    let mut g = parts.next().expect("nonzero operands");
    for c in parts {
        if g.is_constant() {
            return Poly::one();
        }
        g = gcd_rec(&g, &c);
    }
    g
}

/// Upper bound for the degree in `x` of `gcd(a, b)`: the degree of the
/// univariate gcd after evaluating the other variables at a point where
/// both leading coefficients in `x` survive.
fn degree_bound(a: &Poly, b: &Poly, x: Var) -> u32 {
    const VALUES: [i64; 12] = [3, 7, 2, 11, 5, 13, 17, 4, 19, 23, 6, 29];
    let fallback = a.degree_in(x).min(b.degree_in(x));
    let ca = a.coeffs_in(x);
    let cb = b.coeffs_in(x);
    for attempt in 0..4 {
        let point: [BigRational; 5] = std::array::from_fn(|i| {
            BigRational::from_integer(
                (VALUES[(attempt * 5 + i) % VALUES.len()] + attempt as i64).into(),
            )
        });
        let ea: Vec<BigRational> = ca.iter().map(|c| c.eval(&point)).collect();
        let eb: Vec<BigRational> = cb.iter().map(|c| c.eval(&point)).collect();
        if ea.last().is_some_and(Zero::is_zero) || eb.last().is_some_and(Zero::is_zero) {
            continue;
        }
        return univariate_gcd_degree(ea, eb);
    }
    fallback
}

/// Degree of the gcd of two dense univariate polynomials (low degree first)
/// with nonzero leading coefficients.
fn univariate_gcd_degree(mut f: Vec<BigRational>, mut g: Vec<BigRational>) -> u32 {
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        if g.len() == 1 {
            return 0;
        }
        let lead = g.last().expect("nonempty").clone();
        while f.len() >= g.len() {
            let q = f.last().expect("nonempty") / &lead;
            let s = f.len() - g.len();
            for (i, gi) in g.iter().enumerate() {
                f[s + i] -= &q * gi;
            }
            f.pop();
            while f.last().is_some_and(Zero::is_zero) {
                f.pop();
            }
        }
        if f.is_empty() {
            return (g.len() - 1) as u32;
        }
        std::mem::swap(&mut f, &mut g);
    }
}

/// Gcd of the coefficients of `p` as a polynomial in `x`, normalized to
/// integer-primitive form.
fn content_in(p: &Poly, x: Var) -> Poly {
    let mut coeffs = p.coeffs_in(x).into_iter().filter(|c| !c.is_zero());
    let mut g = match coeffs.next() {
        Some(c) => c,
        None => return Poly::one(),
    };
    for c in coeffs {
        if g.is_constant() {
            break;
        }
        g = gcd_rec(&g, &c);
    }
    if g.is_constant() {
        Poly::one()
    } else {
        g.integer_primitive()
    }
}

fn primitive_part(p: &Poly, x: Var) -> Poly {
    let c = content_in(p, x);
    p.div_exact(&c)
        .expect("content divides")
        .integer_primitive()
}

/// Both inputs primitive in `x`.
fn primitive_prs(a: Poly, b: Poly, x: Var) -> Poly {
    let (mut f, mut g) = if a.degree_in(x) >= b.degree_in(x) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        let r = pseudo_rem(&f, &g, x);
        if r.is_zero() {
            return g.integer_primitive();
        }
        if r.degree_in(x) == 0 {
            return Poly::one();
        }
        f = g;
        g = primitive_part(&r, x);
    }
}

/// Pseudo-remainder of `f` by `g` in `x`, up to a factor free of `x`.
fn pseudo_rem(f: &Poly, g: &Poly, x: Var) -> Poly {
    let gc = g.coeffs_in(x);
    let dg = gc.len() - 1;
    let lg = gc[dg].clone();
    let lg_const = lg.constant_value();
    let mut r = f.coeffs_in(x);
    trim(&mut r);
    while !r.is_empty() && r.len() > dg {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let s = dr - dg;
        match &lg_const {
            Some(c) => {
                let q = lr.scale(&c.recip());
                for (i, gi) in gc.iter().enumerate() {
                    r[s + i] = &r[s + i] - &(&q * gi);
                }
            }
            None => {
                for ri in r.iter_mut() {
                    *ri = &*ri * &lg;
                }
                for (i, gi) in gc.iter().enumerate() {
                    r[s + i] = &r[s + i] - &(&lr * gi);
                }
            }
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        trim(&mut r);
    }
    Poly::from_coeffs_in(x, &r)
}

fn trim(r: &mut Vec<Poly>) {
    while r.last().is_some_and(Poly::is_zero) {
        r.pop();
    }
}
