//! Exact division, multivariate gcd and polynomial square roots.
//!
//! The gcd is the classic subresultant PRS with content recursion: pick a
//! main variable, reduce to univariate with polynomial coefficients, run
//! the pseudo-remainder sequence with subresultant divisors, and recurse
//! on contents. Results are normalized monic (leading graded-lex
//! coefficient 1), which makes `gcd` canonical over the field Q(i).
//!
//! Exponent vectors index a polynomial's own variable list, so the raw
//! `Term`-level loops below are careful to fix one variable space up
//! front and stay in it.

use std::collections::BTreeMap;

use super::mpoly::{MPoly, Term};
use super::GaussRat;

fn merge_add(map: &mut BTreeMap<Term, GaussRat>, key: Term, val: GaussRat) {
    if val.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(val);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get() + &val;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// Re-express a term of `from`'s variable space in `to`'s space.
/// `None` if some variable it uses is absent from `to`.
fn reindex_term(t: &Term, from: &[String], to: &[String]) -> Option<Term> {
    let mut out = Vec::with_capacity(t.0.len());
    for &(v, e) in &t.0 {
        let idx = to.binary_search(&from[v as usize]).ok()?;
        out.push((idx as u32, e));
    }
    out.sort_unstable();
    Some(Term(out))
}

/// Exact quotient `a / b`, or `None` if `b` does not divide `a`.
pub fn mpoly_exact_div(a: &MPoly, b: &MPoly) -> Option<MPoly> {
    if a.is_zero() {
        return Some(MPoly::zero());
    }
    if b.is_zero() {
        return None;
    }
    if let Some(c) = b.as_constant() {
        return Some(a.scale(&c.try_recip().ok()?));
    }
    let (vars, ra, rb) = MPoly::align(a, b);
    let vars_vec: Vec<String> = vars.to_vec();
    let mut r: BTreeMap<Term, GaussRat> =
        ra.terms().map(|(t, c)| (t.clone(), c.clone())).collect();
    let (bt, bc) = {
        let (t, c) = rb.leading().expect("nonzero divisor");
        (t.clone(), c.clone())
    };
    let bc_inv = bc.try_recip().ok()?;
    let btail: Vec<(Term, GaussRat)> = rb
        .terms()
        .filter(|(t, _)| **t != bt)
        .map(|(t, c)| (t.clone(), c.clone()))
        .collect();
    let mut q: Vec<(Term, GaussRat)> = Vec::new();
    while let Some((rt, rc)) = r.iter().next_back().map(|(t, c)| (t.clone(), c.clone())) {
        let t = rt.try_div(&bt)?;
        let c = &rc * &bc_inv;
        r.remove(&rt);
        for (tb, cb) in &btail {
            merge_add(&mut r, t.mul(tb), -&(&c * cb));
        }
        q.push((t, c));
    }
    Some(MPoly::from_terms(&vars_vec, q))
}

/// Monic multivariate gcd over Q(i).
pub fn mpoly_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return make_monic(b);
    }
    if b.is_zero() {
        return make_monic(a);
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    // Work in the union variable space so monomial contents compare.
    let (vars, a0, b0) = MPoly::align(a, b);
    let vars_vec: Vec<String> = vars.to_vec();
    let mono = monomial_content(&a0).gcd(&monomial_content(&b0));
    let a1 = divide_monomial(&a0, &mono, &vars_vec);
    let b1 = divide_monomial(&b0, &mono, &vars_vec);

    // Cheap trial divisions catch the common pipeline case of an exact
    // multiple (numerators sharing a power of the denominator).
    let core = if mpoly_exact_div(&a1, &b1).is_some() {
        make_monic(&b1)
    } else if mpoly_exact_div(&b1, &a1).is_some() {
        make_monic(&a1)
    } else {
        gcd_prs(&a1, &b1)
    };

    let mono_poly = MPoly::from_terms(&vars_vec, [(mono, GaussRat::one())]);
    make_monic(&(&core * &mono_poly))
}

fn monomial_content(p: &MPoly) -> Term {
    let mut it = p.terms();
    let first = it.next().map(|(t, _)| t.clone()).unwrap_or_default();
    it.fold(first, |acc, (t, _)| acc.gcd(t))
}

fn divide_monomial(p: &MPoly, m: &Term, vars: &[String]) -> MPoly {
    if m.0.is_empty() {
        return p.clone();
    }
    MPoly::from_terms(
        vars,
        p.terms()
            .map(|(t, c)| (t.try_div(m).expect("monomial content divides"), c.clone())),
    )
}

fn make_monic(p: &MPoly) -> MPoly {
    if p.is_zero() {
        return MPoly::zero();
    }
    let lc = p.leading_coeff();
    p.scale(&lc.try_recip().expect("nonzero leading coefficient"))
}

/// Pick the shared variable minimizing the larger of the two degrees.
fn choose_main_var(a: &MPoly, b: &MPoly) -> Option<String> {
    let mut best: Option<(u32, String)> = None;
    for v in a.vars() {
        let da = a.degree_in(v);
        let db = b.degree_in(v);
        if da == 0 || db == 0 {
            continue;
        }
        let key = da.max(db);
        if best.as_ref().map_or(true, |(k, _)| key < *k) {
            best = Some((key, v.clone()));
        }
    }
    best.map(|(_, v)| v)
}

fn gcd_prs(a: &MPoly, b: &MPoly) -> MPoly {
    let Some(main) = choose_main_var(a, b) else {
        // No shared variable: the primitive parts are coprime.
        return MPoly::one();
    };
    let ua = to_univar(a, &main);
    let ub = to_univar(b, &main);
    let cont_a = coeff_gcd(&ua);
    let cont_b = coeff_gcd(&ub);
    let cont = mpoly_gcd(&cont_a, &cont_b);
    let pa = divide_coeffs(&ua, &cont_a);
    let pb = divide_coeffs(&ub, &cont_b);

    let (mut r0, mut r1) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
    let mut g = MPoly::one();
    let mut h = MPoly::one();
    loop {
        let d = (r0.len() - r1.len()) as u32;
        let rem = pseudo_rem(&r0, &r1);
        if rem.is_empty() {
            let pp = divide_coeffs(&r1, &coeff_gcd(&r1));
            let core = from_univar(&pp, &main);
            return make_monic(&(&core * &cont));
        }
        if rem.len() == 1 {
            // Nonzero remainder of degree 0 in the main variable: coprime.
            return make_monic(&cont);
        }
        let lc0 = r1.last().unwrap().clone();
        let divisor = &g * &h.pow(d);
        r0 = r1;
        r1 = rem
            .iter()
            .map(|c| mpoly_exact_div(c, &divisor).expect("subresultant divisor is exact"))
            .collect();
        g = lc0;
        // h = g^d / h^(d-1), exact by the subresultant theory.
        if d > 0 {
            h = mpoly_exact_div(&g.pow(d), &h.pow(d - 1)).expect("subresultant h update is exact");
        }
    }
}

/// Dense coefficient list in the main variable, lowest degree first.
fn to_univar(p: &MPoly, main: &str) -> Vec<MPoly> {
    let coeffs = p.coeffs_in(main);
    let deg = *coeffs.keys().max().unwrap_or(&0) as usize;
    let mut out = vec![MPoly::zero(); deg + 1];
    for (e, c) in coeffs {
        out[e as usize] = c;
    }
    trim(out)
}

fn from_univar(coeffs: &[MPoly], main: &str) -> MPoly {
    let x = MPoly::var(main);
    let mut acc = MPoly::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * &x) + c;
    }
    acc
}

fn trim(mut v: Vec<MPoly>) -> Vec<MPoly> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn coeff_gcd(coeffs: &[MPoly]) -> MPoly {
    let mut acc = MPoly::zero();
    for c in coeffs {
        acc = mpoly_gcd(&acc, c);
        if acc.is_constant() && !acc.is_zero() {
            return MPoly::one();
        }
    }
    acc
}

fn divide_coeffs(coeffs: &[MPoly], d: &MPoly) -> Vec<MPoly> {
    coeffs
        .iter()
        .map(|c| mpoly_exact_div(c, d).expect("content divides"))
        .collect()
}

/// Pseudo-remainder `prem(a, b) = lc(b)^(deg a − deg b + 1) · a mod b` of
/// dense univariate polynomials over MPoly. The exact premultiplication
/// count is what makes the subresultant divisors divide exactly.
fn pseudo_rem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut rounds_left = (a.len() - 1) - db + 1;
    let mut r: Vec<MPoly> = a.to_vec();
    while r.len() >= b.len() {
        let dr = r.len() - 1;
        let lead = r.last().unwrap().clone();
        // r <- lb * r − lead * x^(dr−db) * b
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        rounds_left -= 1;
        let shift = dr - db;
        for (k, bc) in b.iter().enumerate() {
            let sub = &lead * bc;
            r[shift + k] = &r[shift + k] - &sub;
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    if rounds_left > 0 && !r.is_empty() {
        let factor = lb.pow(rounds_left as u32);
        for c in r.iter_mut() {
            *c = &*c * &factor;
        }
    }
    r
}

/// Exact polynomial square root, if `p` is a perfect square in Q(i)[x].
pub fn mpoly_sqrt(p: &MPoly) -> Option<MPoly> {
    if p.is_zero() {
        return Some(MPoly::zero());
    }
    let (lt, lc) = p.leading().map(|(t, c)| (t.clone(), c.clone()))?;
    if lt.0.iter().any(|&(_, e)| e % 2 != 0) {
        return None;
    }
    let half = Term(lt.0.iter().map(|&(v, e)| (v, e / 2)).collect());
    let root_c = super::gauss::gauss_sqrt(&lc)?;
    let p_vars = p.vars().to_vec();
    let mut s = MPoly::from_terms(&p_vars, [(half.clone(), root_c.clone())]);
    // Each round cancels the leading term of the defect, and the cancelled
    // monomials strictly decrease in the graded-lex well-order, so this
    // terminates; a failed monomial division certifies "not a square".
    loop {
        let r = p - &(&s * &s);
        if r.is_zero() {
            return Some(s);
        }
        let (rt, rc) = r.leading().map(|(t, c)| (t.clone(), c.clone()))?;
        // The defect lives in its own (possibly smaller) variable space.
        let half_r = reindex_term(&half, &p_vars, r.vars())?;
        let t = rt.try_div(&half_r)?;
        let c = &rc / &(&GaussRat::from_int(2) * &root_c);
        s = &s + &MPoly::from_terms(&r.vars().to_vec(), [(t, c)]);
    }
}

#[cfg(test)]
mod tests {
    use super::super::gauss::rat;
    use super::*;

    fn v(name: &str) -> MPoly {
        MPoly::var(name)
    }

    fn r2() -> MPoly {
        ["x1", "x2", "x3", "x4"]
            .iter()
            .fold(MPoly::zero(), |acc, n| &acc + &v(n).pow(2))
    }

    #[test]
    fn exact_div_round_trip() {
        let a = &(&v("u") + &v("w")).pow(3) * &(&v("u") - &MPoly::one());
        let b = &v("u") + &v("w");
        let q = mpoly_exact_div(&a, &b).unwrap();
        assert_eq!(&q * &b, a);
        assert!(mpoly_exact_div(&v("u"), &(&v("u") + &MPoly::one())).is_none());
    }

    #[test]
    fn exact_div_rejects_shrinking_support() {
        // u^2 + 1 is not divisible by u + w; the defect loses `u` on the
        // way, which must not be misread as divisibility.
        let a = &v("u").pow(2) + &MPoly::one();
        let b = &v("u") + &v("w");
        assert!(mpoly_exact_div(&a, &b).is_none());
    }

    #[test]
    fn gcd_of_shifted_powers() {
        let d = &MPoly::one() - &r2();
        let a = &d.pow(3) * &(&v("x1") + &v("x2"));
        let b = d.pow(2);
        let g = mpoly_gcd(&a, &b);
        assert_eq!(g, make_monic(&d.pow(2)));
        assert!(mpoly_exact_div(&a, &g).is_some());
        assert!(mpoly_exact_div(&b, &g).is_some());
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let a = &v("u").pow(2) + &MPoly::one();
        let b = &v("u") + &v("w");
        assert_eq!(mpoly_gcd(&a, &b), MPoly::one());
    }

    #[test]
    fn gcd_with_gaussian_coefficients() {
        // (u + i w) divides both.
        let f = &v("u") + &v("w").scale(&GaussRat::i());
        let a = &f * &(&v("u") - &MPoly::from_int(2));
        let b = &f * &v("w");
        let g = mpoly_gcd(&a, &b);
        assert_eq!(g, make_monic(&f));
    }

    #[test]
    fn gcd_disjoint_supports() {
        let a = v("u").pow(2);
        let b = &v("w").pow(3) + &v("w");
        assert_eq!(mpoly_gcd(&a, &b), MPoly::one());
    }

    #[test]
    fn sqrt_of_perfect_square() {
        let p = &(&v("u") + &v("w").scale(&GaussRat::from_rat(rat(1, 2)))).pow(2)
            * &MPoly::from_int(9);
        let s = mpoly_sqrt(&p).unwrap();
        assert_eq!(&s * &s, p);
        assert!(mpoly_sqrt(&(&v("u") + &MPoly::one())).is_none());
        // -(poly)^2 has the Gaussian square root i*poly.
        let q = -&(v("u").pow(2));
        let s2 = mpoly_sqrt(&q).unwrap();
        assert_eq!(&s2 * &s2, q);
    }

    #[test]
    fn sqrt_with_support_shrink() {
        // (u + w)^2 - 2uw = u^2 + w^2: defect drops `u` mid-run and the
        // division must fail cleanly.
        let p = &v("u").pow(2) + &v("w").pow(2);
        assert!(mpoly_sqrt(&p).is_none());
    }
}
