//! Dev scratch: inspect the 30-series df=3 list feeding the link scenarios.

use qfano::search::{enumerate_candidates, SearchConfig};

fn main() {
    let report = enumerate_candidates(&SearchConfig::df3_series_preset()).unwrap();
    for p in &report.profiles {
        let q = p.candidate.q();
        let h: Vec<u64> = (0..=q).map(|k| p.h0(k)).collect();
        println!(
            "q={} B={:<16} A3={:<7} h0(0..q)={:?} df-witnesses={:?}",
            q,
            p.candidate.basket().index_notation(),
            qfano::rational::q_to_string(&p.candidate.a3()),
            h,
            p.df_witnesses()
        );
    }
}
