//! Dev scratch: find the degree/c2 cutoff reproducing published counts.

use qfano::rational::{q_to_string, qi, Q};
use qfano::search::{enumerate_candidates, SearchConfig};

fn pool(q_min: u32, q_max: u32, vanishing: bool, df: Option<u32>) -> Vec<(Q, String, u32)> {
    let mut c = SearchConfig::for_q_range(q_min, q_max);
    c.kawamata_bound = false;
    c.fano_vanishing = vanishing;
    c.df_filter = df;
    let r = enumerate_candidates(&c).unwrap();
    r.profiles
        .iter()
        .map(|p| {
            let ratio = p.candidate.anticanonical_degree()
                / (qi(24) - p.candidate.basket().sigma());
            (ratio, p.candidate.to_string(), p.df)
        })
        .collect()
}

fn cutoff_report(label: &str, mut pool: Vec<(Q, String, u32)>, target: usize) {
    pool.sort_by(|a, b| a.0.cmp(&b.0));
    println!("{label}: pool size {}", pool.len());
    if pool.len() >= target && target > 0 {
        let at = &pool[target - 1];
        println!(
            "  ratio at #{}: {}  (candidate {})",
            target,
            q_to_string(&at.0),
            at.1
        );
        if pool.len() > target {
            let next = &pool[target];
            println!(
                "  ratio at #{}: {}  (candidate {})",
                target + 1,
                q_to_string(&next.0),
                next.1
            );
        }
        let le3 = pool.iter().filter(|x| x.0 <= qi(3)).count();
        let lt4 = pool.iter().filter(|x| x.0 < qi(4)).count();
        let le4 = pool.iter().filter(|x| x.0 <= qi(4)).count();
        println!("  counts: <=3: {le3}, <4: {lt4}, <=4: {le4}");
    }
}

fn main() {
    cutoff_report("q=2 (vanishing moot)", pool(2, 2, true, None), 1492);
    cutoff_report("q>=3, vanishing on", pool(3, 19, true, None), 472);
    cutoff_report("q>=3, vanishing off", pool(3, 19, false, None), 472);
    cutoff_report("df3 q>=3, vanishing on", pool(3, 19, true, Some(3)), 30);
    cutoff_report("df3 q>=3, vanishing off", pool(3, 19, false, Some(3)), 30);
}
