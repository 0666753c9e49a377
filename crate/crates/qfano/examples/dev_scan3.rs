//! Dev scratch: q-dependent degree rules against the q>=3 tallies.

use qfano::rational::{q as qq, qi, Q};
use qfano::search::{enumerate_candidates, SearchConfig};

struct Row {
    q: u32,
    degree: Q, // q^3 A^3
    slack: Q,  // 24 - sigma
    df: u32,
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
                q: q_index,
                degree: p.candidate.anticanonical_degree(),
                slack: qi(24) - p.candidate.basket().sigma(),
                df: p.df,
                vanish_ok: qfano::rr::fano_vanishing_failure(&p.candidate).is_none(),
                pencil,
            }
        })
        .collect()
}

fn main() {
    let p3 = pool(3, 19);
    let rules: Vec<(&str, Box<dyn Fn(u32) -> Q>)> = vec![
        ("t=16/5 flat", Box::new(|_| qq(16, 5))),
        ("t=(4/5)q^2", Box::new(|q| qq(4 * (q as i128).pow(2), 5))),
        ("t=(4/5)q", Box::new(|q| qq(4 * q as i128, 5))),
        ("t=(8/5)q", Box::new(|q| qq(8 * q as i128, 5))),
        ("t=q", Box::new(|q| qi(q as i128))),
        ("t=4 flat", Box::new(|_| qi(4))),
        ("t=16/5+q/2", Box::new(|q| qq(16, 5) + qq(q as i128, 2))),
    ];
    for vanish in [true, false] {
        for (name, t_of_q) in &rules {
            let keep =
                |r: &Row| r.degree <= t_of_q(r.q) * r.slack && (!vanish || r.vanish_ok);
            let c3 = p3.iter().filter(|r| keep(r)).count();
            let df3 = p3.iter().filter(|r| keep(r) && r.df == 3).count();
            let a3 = p3.iter().filter(|r| keep(r) && r.df >= 2).count();
            let pencil = p3.iter().filter(|r| keep(r) && r.pencil).count();
            let per_q: Vec<usize> = (3..=9)
                .map(|qv| p3.iter().filter(|r| keep(r) && r.q == qv).count())
                .collect();
            println!(
                "{name:<13} vanish={vanish:<5}: q3={c3:>4} df3={df3:>3} appl3={a3:>4} pencil={pencil} per-q(3..9)={per_q:?}"
            );
        }
    }
}
