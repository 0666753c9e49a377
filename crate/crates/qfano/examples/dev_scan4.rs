//! Dev scratch: fine 2D scan for the q>=3 counts (472, 313, 30).

use qfano::rational::{q as qq, qi, Q};
use qfano::search::{enumerate_candidates, SearchConfig};
use std::collections::BTreeSet;

struct Row {
    q: u32,
    degree: Q,
    slack: Q,
    df: u32,
    h0_k: u64,
    h0_a: u64,
    vanish_ok: bool,
    pencil: bool,
    merge_key: (u32, Vec<u32>, Q),
}

fn pool(q_min: u32, q_max: u32) -> Vec<Row> {
    let mut c = SearchConfig::for_q_range(q_min, q_max);
    c.kawamata_bound = false;
    c.fano_vanishing = false;
    let r = enumerate_candidates(&c).unwrap();
    r.profiles
        .iter()
        .map(|p| {
            let q_index = p.candidate.q();
            let pencil = (1..q_index)
                .filter(|k| 2 * k < q_index)
                .any(|k| p.h0(k) == 2 && p.h0(2 * k) == 3);
            let indices: Vec<u32> = p
                .candidate
                .basket()
                .points()
                .iter()
                .map(|pt| pt.r())
                .collect();
            Row {
                q: q_index,
                degree: p.candidate.anticanonical_degree(),
                slack: qi(24) - p.candidate.basket().sigma(),
                df: p.df,
                h0_k: p.h0(q_index),
                h0_a: p.h0(1),
                vanish_ok: qfano::rr::fano_vanishing_failure(&p.candidate).is_none(),
                pencil,
                merge_key: (q_index, indices, p.candidate.a3()),
            }
        })
        .collect()
}

fn main() {
    let p3 = pool(3, 19);
    let p2 = pool(2, 2);
    for tenths in 28..=60i128 {
        let t = qq(tenths, 10);
        for vanish in [true, false] {
            for h0k_min in [0u64, 1, 2] {
                for h0a_max in [None, Some(1u64)] {
                    let keep = |r: &Row| {
                        r.degree <= t * r.slack
                            && (!vanish || r.vanish_ok)
                            && r.h0_k >= h0k_min
                            && h0a_max.map_or(true, |m| r.h0_a <= m)
                    };
                    let c3 = p3.iter().filter(|r| keep(r)).count();
                    let a3 = p3.iter().filter(|r| keep(r) && r.df >= 2).count();
                    let df3 = p3.iter().filter(|r| keep(r) && r.df == 3).count();
                    let m3 = p3
                        .iter()
                        .filter(|r| keep(r))
                        .map(|r| r.merge_key.clone())
                        .collect::<BTreeSet<_>>()
                        .len();
                    let c2 = p2.iter().filter(|r| keep(r)).count();
                    let a2 = p2.iter().filter(|r| keep(r) && r.df >= 2).count();
                    let m2 = p2
                        .iter()
                        .filter(|r| keep(r))
                        .map(|r| r.merge_key.clone())
                        .collect::<BTreeSet<_>>()
                        .len();
                    let pencil = p3.iter().filter(|r| keep(r) && r.pencil).count();
                    let score = (c3 == 472) as u8
                        + (a3 == 313) as u8
                        + (df3 == 30) as u8
                        + (m3 == 472) as u8
                        + (c2 == 1492) as u8
                        + (a2 == 382) as u8
                        + (m2 == 1492) as u8;
                    if score >= 2 || (vanish && h0k_min == 0 && h0a_max.is_none() && (40..=52).contains(&tenths)) {
                        println!(
                            "t={tenths}/10 vanish={vanish} h0K>={h0k_min} h0A<={h0a_max:?}: q3={c3} (merged {m3}) appl3={a3} df3={df3} | q2={c2} (merged {m2}) appl2={a2} pencil={pencil} [score {score}]"
                        );
                    }
                }
            }
        }
    }
}
