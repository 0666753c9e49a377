//! Dev scratch: broader rule grid against published tallies.

use qfano::rational::{q as qq, qi, Q};
use qfano::search::{enumerate_candidates, SearchConfig};

struct Row {
    degree: Q, // q^3 A^3
    slack: Q,  // 24 - sigma
    df: u32,
    h0_a: u64,
    h0_k: u64,
    vanish_ok: bool,
    pencil: bool,
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
            Row {
                degree: p.candidate.anticanonical_degree(),
                slack: qi(24) - p.candidate.basket().sigma(),
                df: p.df,
                h0_a: p.h0(1),
                h0_k: p.h0(q_index),
                vanish_ok: qfano::rr::fano_vanishing_failure(&p.candidate).is_none(),
                pencil,
            }
        })
        .collect()
}

fn main() {
    let p3 = pool(3, 19);
    let p2 = pool(2, 2);
    println!("pool sizes: q>=3 {}, q=2 {}", p3.len(), p2.len());
    let ts: Vec<(String, Q)> = vec![
        ("3".into(), qi(3)),
        ("16/5".into(), qq(16, 5)),
        ("10/3".into(), qq(10, 3)),
        ("7/2".into(), qq(7, 2)),
        ("4".into(), qi(4)),
        ("9/2".into(), qq(9, 2)),
        ("5".into(), qi(5)),
        ("6".into(), qi(6)),
        ("inf".into(), qi(1000)),
    ];
    for vanish in [true, false] {
        for (tname, t) in &ts {
            for (fname, fsel) in [
                ("none", 0u8),
                ("h0A>=1", 1),
                ("h0K>=1", 2),
                ("h0K>=2", 3),
            ] {
                let keep = |r: &Row| {
                    r.degree <= *t * r.slack
                        && (!vanish || r.vanish_ok)
                        && match fsel {
                            1 => r.h0_a >= 1,
                            2 => r.h0_k >= 1,
                            3 => r.h0_k >= 2,
                            _ => true,
                        }
                };
                let c3 = p3.iter().filter(|r| keep(r)).count();
                let c2 = p2.iter().filter(|r| keep(r)).count();
                let df3 = p3.iter().filter(|r| keep(r) && r.df == 3).count();
                let a3 = p3.iter().filter(|r| keep(r) && r.df >= 2).count();
                let a2 = p2.iter().filter(|r| keep(r) && r.df >= 2).count();
                let pencil = p3.iter().filter(|r| keep(r) && r.pencil).count();
                let score = (c3 == 472) as u8
                    + (c2 == 1492) as u8
                    + (df3 == 30) as u8
                    + (a3 == 313) as u8
                    + (a2 == 382) as u8;
                if score >= 1 {
                    println!(
                        "t={tname:<5} vanish={vanish:<5} filter={fname:<7}: q3={c3:>4} q2={c2:>5} df3={df3:>3} appl3={a3:>4} appl2={a2:>4} pencil={pencil} [score {score}]"
                    );
                }
            }
        }
    }
}
