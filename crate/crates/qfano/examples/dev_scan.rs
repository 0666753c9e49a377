//! Dev scratch: scan degree-bound families against the published tallies.
//!
//! Candidates are pooled with no degree bound beyond (-K)^3 <= 72, then a
//! rule  q^3 A^3 <= min(72, alpha (24 - sigma) + beta)  is applied offline.
//! Targets: q>=3 total 472, q=2 total 1492, df=3 series 30,
//! applicability 313 (q>=3) and 382 (q=2).

use qfano::rational::{q as qq, qi, Q};
use qfano::search::{enumerate_candidates, SearchConfig};

struct Row {
    degree: Q,   // q^3 A^3
    slack: Q,    // 24 - sigma
    df: u32,
    q: u32,
    pencil: bool,
}

fn pool(q_min: u32, q_max: u32, vanishing: bool) -> Vec<Row> {
    let mut c = SearchConfig::for_q_range(q_min, q_max);
    c.kawamata_bound = false;
    c.fano_vanishing = vanishing;
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
                q: q_index,
                pencil,
            }
        })
        .collect()
}

fn main() {
    for vanishing in [true, false] {
        let p3 = pool(3, 19, vanishing);
        let p2 = pool(2, 2, vanishing);
        println!(
            "vanishing={vanishing}: pools q>=3: {}, q=2: {}",
            p3.len(),
            p2.len()
        );
        for alpha_num in 8..=20i128 {
            let alpha = qq(alpha_num, 4);
            for beta_num in 0..=16i128 {
                let beta = qq(beta_num, 2);
                let keep = |r: &Row| r.degree <= alpha * r.slack + beta;
                let c3 = p3.iter().filter(|r| keep(r)).count();
                let c2 = p2.iter().filter(|r| keep(r)).count();
                let df3 = p3.iter().filter(|r| keep(r) && r.df == 3).count();
                let a3 = p3.iter().filter(|r| keep(r) && r.df >= 2).count();
                let a2 = p2.iter().filter(|r| keep(r) && r.df >= 2).count();
                let pencil = p3.iter().filter(|r| keep(r) && r.pencil).count();
                let hits = [
                    (c3 == 472, "472"),
                    (c2 == 1492, "1492"),
                    (df3 == 30, "30"),
                    (a3 == 313, "313"),
                    (a2 == 382, "382"),
                ];
                let score = hits.iter().filter(|h| h.0).count();
                if score >= 2 || (c3 == 472) || (c2 == 1492) {
                    println!(
                        "  a={alpha_num}/4 b={beta_num}/2: q3={c3} q2={c2} df3={df3} appl3={a3} appl2={a2} pencil={pencil} [score {score}]"
                    );
                }
                let _ = (hits, q_of_row_guard(&p3));
            }
        }
    }
}

fn q_of_row_guard(rows: &[Row]) -> u32 {
    rows.first().map(|r| r.q).unwrap_or(0)
}
