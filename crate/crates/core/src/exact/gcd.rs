//! Greatest common divisors in ℚ[beta, lambda, u].
//!
//! The general path is a recursive primitive polynomial remainder sequence.
//! Before falling back to it, cheap exits are tried: monomial content,
//! exact divisibility, and a coprimality test that specializes all but one
//! variable at integer points where both leading coefficients survive. The
//! specialized gcd degree bounds the true one from above, so a bound of zero
//! in every shared variable proves the inputs coprime.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::mpoly::{MPoly, Monomial, Var, NVARS};

/// Monic gcd (the zero polynomial only when both inputs are zero).
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }

    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mono = ma.meet(&mb);
    let mono_part = MPoly::monomial(mono, BigRational::one());
    let (a, b) = if ma != Monomial::ONE || mb != Monomial::ONE {
        (a.div_monomial(&ma), b.div_monomial(&mb))
    } else {
        (a.clone(), b.clone())
    };
    &mono_part * &gcd_no_monomial_content(&a, &b)
}

/// gcd of a list, stopping early at 1.
pub fn gcd_many<'a>(polys: impl IntoIterator<Item = &'a MPoly>) -> MPoly {
    let mut acc = MPoly::zero();
    for p in polys {
        acc = gcd(&acc, p);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn gcd_no_monomial_content(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if large.div_exact(small).is_some() {
        return small.monic();
    }

    let shared: Vec<Var> = Var::ALL
        .into_iter()
        .filter(|v| a.contains(*v) && b.contains(*v))
        .collect();
    if shared.is_empty() {
        // gcd must be free of every variable occurring in only one argument,
        // so it divides the respective contents.
        return gcd_via_contents(a, b);
    }

    let mut bounds = [0u32; NVARS];
    for &v in &shared {
        bounds[v.index()] = specialized_degree_bound(a, b, v);
    }
    if bounds.iter().all(|&d| d == 0) {
        return MPoly::one();
    }

    let main = shared
        .iter()
        .copied()
        .filter(|v| bounds[v.index()] > 0)
        .min_by_key(|v| a.degree_in(*v).max(b.degree_in(*v)))
        .expect("some shared variable has a positive bound");

    // Variables absent from the gcd can be eliminated through contents.
    let absent: Vec<Var> = Var::ALL
        .into_iter()
        .filter(|v| bounds[v.index()] == 0 && (a.contains(*v) || b.contains(*v)))
        .collect();
    if !absent.is_empty() {
        let mut ra = a.clone();
        let mut rb = b.clone();
        for v in absent {
            if ra.contains(v) {
                ra = content_wrt(&ra, v);
            }
            if rb.contains(v) {
                rb = content_wrt(&rb, v);
            }
        }
        return gcd(&ra, &rb);
    }

    prs_gcd(a, b, main, bounds[main.index()])
}

fn gcd_via_contents(a: &MPoly, b: &MPoly) -> MPoly {
    let mut ra = a.clone();
    let mut rb = b.clone();
    for v in Var::ALL {
        if ra.contains(v) && !rb.contains(v) {
            ra = content_wrt(&ra, v);
        } else if rb.contains(v) && !ra.contains(v) {
            rb = content_wrt(&rb, v);
        }
    }
    gcd(&ra, &rb)
}

/// gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_wrt(p: &MPoly, v: Var) -> MPoly {
    let coeffs = p.to_univariate(v);
    gcd_many(coeffs.iter().filter(|c| !c.is_zero()))
}

fn primitive_part(coeffs: &[MPoly]) -> Vec<MPoly> {
    let c = gcd_many(coeffs.iter().filter(|c| !c.is_zero()));
    let parts: Vec<MPoly> = if c.is_one() || c.is_zero() {
        coeffs.to_vec()
    } else {
        coeffs
            .iter()
            .map(|k| k.div_exact(&c).expect("content divides every coefficient"))
            .collect()
    };
    integer_primitive(parts)
}

/// Scales to integer coefficients with no common numeric factor, which
/// keeps remainder sequences from growing exponentially.
fn integer_primitive(coeffs: Vec<MPoly>) -> Vec<MPoly> {
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for (_, q) in coeffs.iter().flat_map(|c| c.terms()) {
        den = den.lcm(q.denom());
        num = num.gcd(q.numer());
    }
    if num.is_zero() {
        return coeffs;
    }
    let factor = BigRational::new(den, num);
    if factor.is_one() {
        return coeffs;
    }
    coeffs.iter().map(|c| c.scale(&factor)).collect()
}

fn trim(v: &mut Vec<MPoly>) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

/// A nonzero multiple of the pseudo-remainder of `a` by `b`.
fn pseudo_remainder(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    trim(&mut r);
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (j, bj) in b.iter().enumerate() {
            let t = &lr * bj;
            r[j + shift] = &r[j + shift] - &t;
        }
        trim(&mut r);
    }
    r
}

fn prs_gcd(a: &MPoly, b: &MPoly, v: Var, bound: u32) -> MPoly {
    let ua = a.to_univariate(v);
    let ub = b.to_univariate(v);
    let ca = gcd_many(ua.iter().filter(|c| !c.is_zero()));
    let cb = gcd_many(ub.iter().filter(|c| !c.is_zero()));
    let content = gcd(&ca, &cb);

    let pa0 = primitive_part(&ua);
    let pb0 = primitive_part(&ub);
    let pa_poly = MPoly::from_univariate(v, &pa0);
    let pb_poly = MPoly::from_univariate(v, &pb0);

    let (mut p, mut q) = if pa0.len() >= pb0.len() {
        (pa0, pb0)
    } else {
        (pb0, pa0)
    };
    let g = loop {
        if q.len() == 1 {
            break MPoly::one();
        }
        if (q.len() - 1) as u32 == bound {
            let cand = MPoly::from_univariate(v, &q);
            if pa_poly.div_exact(&cand).is_some() && pb_poly.div_exact(&cand).is_some() {
                break cand;
            }
        }
        let r = pseudo_remainder(&p, &q);
        if r.is_empty() {
            break MPoly::from_univariate(v, &primitive_part(&q));
        }
        p = q;
        q = primitive_part(&r);
    };
    (&content * &g).monic()
}

/// Upper bound for `deg_v gcd(a, b)` from a univariate specialization.
fn specialized_degree_bound(a: &MPoly, b: &MPoly, v: Var) -> u32 {
    let la = a.to_univariate(v);
    let lb = b.to_univariate(v);
    let lca = la.last().expect("nonzero");
    let lcb = lb.last().expect("nonzero");
    let mut best = a.degree_in(v).min(b.degree_in(v));
    let mut found = 0;
    for attempt in 0..12u32 {
        let point = specialization_point(attempt);
        if lca.eval(&point).is_zero() || lcb.eval(&point).is_zero() {
            continue;
        }
        let ea: Vec<BigRational> = la.iter().map(|c| c.eval(&point)).collect();
        let eb: Vec<BigRational> = lb.iter().map(|c| c.eval(&point)).collect();
        let d = univariate_gcd_degree(ea, eb);
        best = best.min(d);
        found += 1;
        if best == 0 || found == 2 {
            break;
        }
    }
    best
}

fn specialization_point(attempt: u32) -> [BigRational; NVARS] {
    const VALUES: [i64; 15] = [7, 13, -5, 23, 31, -17, 41, 59, -29, 67, 83, -43, 97, 101, -71];
    let k = attempt as usize;
    [
        BigRational::from_integer(VALUES[k % 15].into()),
        BigRational::from_integer(VALUES[(k + 5) % 15].into()),
        BigRational::from_integer(VALUES[(k + 10) % 15].into()),
    ]
}

/// Degree of gcd over ℚ of two dense univariate polynomials.
fn univariate_gcd_degree(a: Vec<BigRational>, b: Vec<BigRational>) -> u32 {
    let g = univariate_gcd(a, b);
    g.len().saturating_sub(1) as u32
}

pub(crate) fn univariate_gcd(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> Vec<BigRational> {
    trim_q(&mut a);
    trim_q(&mut b);
    while !b.is_empty() {
        let r = univariate_rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(lc) = a.last().cloned() {
        for c in a.iter_mut() {
            *c /= &lc;
        }
    }
    a
}

fn trim_q(v: &mut Vec<BigRational>) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

fn univariate_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = b[db].recip();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let f = &r[dr] * &inv;
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            r[j + shift] -= &f * bj;
        }
        r.pop();
        trim_q(&mut r);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> MPoly {
        MPoly::var(Var::Beta)
    }
    fn l() -> MPoly {
        MPoly::var(Var::Lambda)
    }
    fn u() -> MPoly {
        MPoly::var(Var::U)
    }
    fn c(n: i64) -> MPoly {
        MPoly::from_i64(n)
    }

    #[test]
    fn common_linear_factor() {
        let f = &b() - &l();
        let p = &f * &(&b() + &c(3));
        let q = &f * &(&l() + &u());
        assert_eq!(gcd(&p, &q), f);
    }

    #[test]
    fn coprime_inputs() {
        let p = &(&b() * &b()) + &c(1);
        let q = &l() + &u();
        assert!(gcd(&p, &q).is_one());
    }

    #[test]
    fn monomial_parts_combine() {
        let p = &(&u() * &u()) * &(&b() + &l());
        let q = &u() * &(&(&b() + &l()) * &(&b() - &c(2)));
        assert_eq!(gcd(&p, &q), &u() * &(&b() + &l()));
    }

    #[test]
    fn quadratic_common_factor_in_three_variables() {
        let common = &(&(&b() * &l()) + &(&u() * &u())) - &c(7);
        let p = &common * &(&(&b() * &b()) - &(&l() * &u()));
        let q = &common * &(&(&l() * &l()) + &(&b() * &u()) + c(5));
        let g = gcd(&p, &q);
        assert_eq!(g, common.monic());
    }

    #[test]
    fn gcd_with_repeated_factors() {
        let f = &(&b() * &c(2)) - &l();
        let g2 = &f * &f;
        let p = &g2 * &(&u() + &c(1));
        let q = &(&f * &f) * &(&f * &(&b() + &u()));
        assert_eq!(gcd(&p, &q), g2.monic());
    }
}
