//! Dev scratch: joint hunt for (472, 313) on q >= 3.

use qfano::rational::{q as qq, qi, Q};
use qfano::search::{enumerate_candidates, SearchConfig};
use std::collections::BTreeSet;

#[derive(Clone)]
struct Row {
    q: u32,
    degree: Q,
    slack: Q,
    df: u32,
    vanish_ok: bool,
    key: (u32, Vec<(u32, u32)>, Q),
}

fn pool(q_min: u32, q_max: u32) -> Vec<Row> {
    let mut c = SearchConfig::for_q_range(q_min, q_max);
    c.kawamata_bound = false;
    c.fano_vanishing = false;
    let r = enumerate_candidates(&c).unwrap();
    r.profiles
        .iter()
        .map(|p| {
            let pts: Vec<(u32, u32)> = p
                .candidate
                .basket()
                .points()
                .iter()
                .map(|pt| (pt.r(), pt.b()))
                .collect();
            Row {
                q: p.candidate.q(),
                degree: p.candidate.anticanonical_degree(),
                slack: qi(24) - p.candidate.basket().sigma(),
                df: p.df,
                vanish_ok: qfano::rr::fano_vanishing_failure(&p.candidate).is_none(),
                key: (p.candidate.q(), pts, p.candidate.a3()),
            }
        })
        .collect()
}

fn main() {
    let p3 = pool(2, 19);
    // all candidates over q in 2..=19 pooled once so the index-multiple
    // dedup can look upward
    let keys: BTreeSet<(u32, Vec<(u32, u32)>, Q)> =
        p3.iter().map(|r| r.key.clone()).collect();
    let is_multiple_reading = |r: &Row| -> bool {
        for m in 2..=6u32 {
            let q_up = r.key.0 * m;
            if q_up > 19 {
                break;
            }
            let scaled = r.key.2 / qi((m as i128).pow(3));
            if keys.contains(&(q_up, r.key.1.clone(), scaled)) {
                return true;
            }
        }
        false
    };

    // fine threshold scan with and without upward dedup
    for num in 460..=490i128 {
        let t = qq(num, 100);
        for dedup in [false, true] {
            let keep = |r: &Row| {
                r.q >= 3
                    && r.degree <= t * r.slack
                    && r.vanish_ok
                    && (!dedup || !is_multiple_reading(r))
            };
            let c3 = p3.iter().filter(|r| keep(r)).count();
            let a3 = p3.iter().filter(|r| keep(r) && r.df >= 2).count();
            let df3 = p3.iter().filter(|r| keep(r) && r.df == 3).count();
            if c3 == 472 || a3 == 313 || (c3 == 472 && a3 == 313) {
                println!(
                    "t={num}/100 dedup={dedup}: q3={c3} appl3={a3} df3={df3}{}",
                    if c3 == 472 && a3 == 313 { "  <== JOINT" } else { "" }
                );
            }
        }
    }
    // how the q=2 rule behaves with dedup (must stay 1492/382)
    let t2 = qq(16, 5);
    for dedup in [false, true] {
        let keep = |r: &Row| {
            r.q == 2 && r.degree <= t2 * r.slack && (!dedup || !is_multiple_reading(r))
        };
        let c2 = p3.iter().filter(|r| keep(r)).count();
        let a2 = p3.iter().filter(|r| keep(r) && r.df >= 2).count();
        println!("q=2 t=16/5 dedup={dedup}: {c2} / appl {a2}");
    }
}
