//! Dev scratch: pin the Riemann-Roch bookkeeping conventions.
//!
//! 1. Weighted-projective-space calibration: h^0(nA) must equal monomial
//!    counts for the five terminal weighted projective 3-spaces.
//! 2. Character-sum cross-check: the periodic local term must agree with the
//!    exact root-of-unity sum, which distinguishes pairing weight `b` from
//!    `b^{-1}` at indices >= 7.
//! 3. Determine the index-13 weight for the catalog candidate 41478.

use num_traits::Zero;
use qfano::basket::Basket;
use qfano::rational::{q, qi, Q};
use qfano::rr;

fn monomial_count(weights: &[u32], degree: i64) -> u64 {
    // dp[d] = number of monomials of weighted degree d
    if degree < 0 {
        return 0;
    }
    let d = degree as usize;
    let mut dp = vec![0u64; d + 1];
    dp[0] = 1;
    for &w in weights {
        let w = w as usize;
        for t in w..=d {
            dp[t] += dp[t - w];
        }
    }
    dp[d]
}

/// Exact character sum S(m) = sum_{j=1}^{r-1} z^{jm} / prod_i (1 - z^{j w_i})
/// over nontrivial r-th roots of unity z = zeta^j, computed with integer
/// arithmetic via 1/(1-x) = -(1/r) sum_k k x^k for x^r = 1, x != 1:
/// S(m) = -(1/r^2) T(m) + (1/r^3) (r(r-1)/2)^3,
/// T(m) = sum over k1,k2,k3 in [0,r) with m + w.k = 0 (mod r) of k1 k2 k3.
fn character_sum(r: u32, weights: [u32; 3], m: i64) -> Q {
    let r_i = r as i64;
    let mut t: i128 = 0;
    for k1 in 0..r_i {
        for k2 in 0..r_i {
            // solve w3 k3 = -(m + w1 k1 + w2 k2) mod r
            let rhs = (-(m + weights[0] as i64 * k1 + weights[1] as i64 * k2)).rem_euclid(r_i);
            let inv = qfano::rational::mod_inverse(weights[2] as i64, r_i).unwrap();
            let k3 = (rhs * inv).rem_euclid(r_i);
            t += (k1 * k2 * k3) as i128;
        }
    }
    let p = (r_i as i128) * (r_i as i128 - 1) / 2;
    q(-t, (r_i as i128).pow(2)) + q(p.pow(3), (r_i as i128).pow(3))
}

/// Dedekind-type local term with an explicit pairing weight choice.
fn dedekind_term(r: u32, w: u32, i: u32) -> Q {
    if i == 0 {
        return Q::zero();
    }
    let (r_i, w_i, i_i) = (r as i128, w as i128, i as i128);
    let mut c = q(-i_i * (r_i * r_i - 1), 12 * r_i);
    for j in 1..i_i {
        let jw = (j * w_i).rem_euclid(r_i);
        c += q(jw * (r_i - jw), 2 * r_i);
    }
    c
}

fn modinv(a: u32, r: u32) -> u32 {
    qfano::rational::mod_inverse(a as i64, r as i64).unwrap() as u32
}

fn main() {
    // --- 1. WPS calibration ---------------------------------------------
    let spaces: Vec<(&str, Vec<u32>, u32, Vec<(u32, u32)>, Q)> = vec![
        ("P(1,1,1,1)", vec![1, 1, 1, 1], 4, vec![], qi(1)),
        ("P(1,1,1,2)", vec![1, 1, 1, 2], 5, vec![(2, 1)], q(1, 2)),
        ("P(1,1,2,3)", vec![1, 1, 2, 3], 7, vec![(2, 1), (3, 1)], q(1, 6)),
        (
            "P(1,2,3,5)",
            vec![1, 2, 3, 5],
            11,
            vec![(2, 1), (3, 1), (5, 2)],
            q(1, 30),
        ),
        (
            "P(1,3,4,5)",
            vec![1, 3, 4, 5],
            13,
            vec![(3, 1), (4, 1), (5, 2)],
            q(1, 60),
        ),
    ];
    for (name, weights, qq, pairs, a3) in &spaces {
        let cand =
            rr::FanoCandidate::new(*qq, Basket::from_pairs(pairs).unwrap(), *a3).unwrap();
        let profile = rr::hilbert_profile(&cand, 24).unwrap();
        let ok = (0..=24i64).all(|n| profile.h0(n as u32) == monomial_count(weights, n));
        println!("calibration {name}: {}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            for n in 0..=24i64 {
                let m = monomial_count(weights, n);
                let h = profile.h0(n as u32);
                if m != h {
                    println!("  n={n}: monomials={m} h0={h}");
                }
            }
        }
    }

    // --- 2. character-sum cross-check ------------------------------------
    // Presentation 1/r(1,-1,b); a divisor class of eps-weight mu has
    // canonical-multiple i = mu * b^{-1} (the K-coordinate carries weight b).
    // Hypothesis space: c(i) = u * (S(s * i * b) - S(0)) over scale
    // u in {1, -1, 1/r, -1/r} and sign s in {1,-1}.  Fit at r <= 5 against
    // the calibrated Dedekind values.
    let scales = |r: u32| {
        vec![
            ("1", qi(1)),
            ("-1", qi(-1)),
            ("1/r", q(1, r as i128)),
            ("-1/r", q(-1, r as i128)),
        ]
    };
    let mut fits: Vec<(usize, i32)> = vec![];
    for ui in 0..4usize {
        for s in [1i32, -1] {
            let mut ok = true;
            for r in [2u32, 3, 4, 5] {
                let u = scales(r)[ui].1;
                for b in (1..r).filter(|b| num_integer::gcd(*b, r) == 1) {
                    let weights = [1, r - 1, b];
                    let s0 = character_sum(r, weights, 0);
                    for i in 0..r {
                        let mu = (i * b % r) as i64;
                        let cs = (character_sum(r, weights, s as i64 * mu) - s0) * u;
                        // reference: calibrated term, pairing weight = b
                        let reference = dedekind_term(r, b.min(r - b), i);
                        if cs != reference {
                            ok = false;
                        }
                    }
                }
            }
            if ok {
                fits.push((ui, s));
            }
        }
    }
    println!("character-sum conventions matching r<=5 data: {fits:?}");

    // With each fitted convention, test pairing weight b vs b^{-1} at r >= 7.
    for (ui, s) in fits {
        let mut b_ok = true;
        let mut binv_ok = true;
        for r in [7u32, 9, 11, 13, 24] {
            let u = scales(r)[ui].1;
            for b in (1..r).filter(|b| num_integer::gcd(*b, r) == 1) {
                let weights = [1, r - 1, b];
                let s0 = character_sum(r, weights, 0);
                for i in 0..r {
                    let mu = (i * b % r) as i64;
                    let cs = (character_sum(r, weights, s as i64 * mu) - s0) * u;
                    if cs != dedekind_term(r, b, i) {
                        b_ok = false;
                    }
                    if cs != dedekind_term(r, modinv(b, r), i) {
                        binv_ok = false;
                    }
                }
            }
        }
        println!(
            "convention (u=#{ui}, s={s}): pairing weight b matches: {b_ok}, b^-1 matches: {binv_ok}"
        );
    }

    // --- 2b. hypersurface oracle ------------------------------------------
    // The general degree-66 hypersurface in P(1,5,6,22,33) is a quasi-smooth
    // terminal Fano threefold with -K = O(1):
    //   h^0(nA) = N(n) - N(n - 66)  (monomial counts in the five weights),
    //   A^3 = 66/(5*6*22*33) = 1/330,
    //   basket = one point each of the germs at the four singular strata:
    //     index 2 (on the (6,22)-line), index 3 (on the (6,33)-line),
    //     index 5 germ 1/5(6,22,33) = 1/5(1,2,3) -> (5,2),
    //     index 11 germ 1/11(1,5,6)  -> (11,2).
    // The index-11 weight-2 table differs between pairing conventions, so
    // this pins the choice.
    println!("hypersurface oracle X66 in P(1,5,6,22,33):");
    let hyp_weights = [1u32, 5, 6, 22, 33];
    let hyp_count = |n: i64| -> i64 {
        monomial_count(&hyp_weights, n) as i64 - monomial_count(&hyp_weights, n - 66) as i64
    };
    let x66 = rr::FanoCandidate::new(
        1,
        Basket::from_pairs(&[(2, 1), (3, 1), (5, 2), (11, 2)]).unwrap(),
        q(1, 330),
    )
    .unwrap();
    match rr::hilbert_profile(&x66, 60) {
        Ok(p) => {
            let mut fails = 0;
            for n in 0..=60i64 {
                let expect = hyp_count(n);
                if p.h0(n as u32) as i64 != expect {
                    if fails < 5 {
                        println!("  n={n}: formula={} oracle={expect}", p.h0(n as u32));
                    }
                    fails += 1;
                }
            }
            println!(
                "  pairing weight b: {} ({} mismatches)",
                if fails == 0 { "PASS" } else { "FAIL" },
                fails
            );
        }
        Err(e) => println!("  pairing weight b: INVALID ({e})"),
    }
    // Same oracle against the b^{-1} convention, emulated by storing the
    // inverse weights: (11,2) -> 11,inv(2)=6; (5,2) -> inv(2)=3 ~ (5,2).
    let x66_inv = rr::FanoCandidate::new(
        1,
        Basket::from_pairs(&[(2, 1), (3, 1), (5, 3), (11, 6)]).unwrap(),
        q(1, 330),
    )
    .unwrap();
    match rr::hilbert_profile(&x66_inv, 60) {
        Ok(p) => {
            let fails = (0..=60i64)
                .filter(|&n| p.h0(n as u32) as i64 != hyp_count(n))
                .count();
            println!(
                "  pairing weight b^-1 (emulated): {} ({} mismatches)",
                if fails == 0 { "PASS" } else { "FAIL" },
                fails
            );
        }
        Err(e) => println!("  pairing weight b^-1 (emulated): INVALID ({e})"),
    }

    // --- 3. candidate 41478: determine the index-13 weight ---------------
    println!("candidate 41478 weight scan (q=7, B=(2,3,13), A^3 = 1/78):");
    for b13 in 1..=6u32 {
        let cand = rr::FanoCandidate::new(
            7,
            Basket::from_pairs(&[(2, 1), (3, 1), (13, b13)]).unwrap(),
            q(1, 78),
        )
        .unwrap();
        match rr::hilbert_profile(&cand, 12) {
            Ok(p) => {
                let pins_ok = (1..=5).all(|k| p.h0(k) == 1) && p.h0(6) == 2;
                println!(
                    "  b13={b13}: valid, h0(0..8)={:?} pins={} df={}",
                    &p.h0[0..=8],
                    pins_ok,
                    p.df
                );
            }
            Err(e) => println!("  b13={b13}: invalid ({e})"),
        }
    }
}
