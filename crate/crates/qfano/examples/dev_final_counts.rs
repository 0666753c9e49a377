//! Dev scratch: final counts under default + presets.

use qfano::search::*;

fn main() {
    let q2 = enumerate_candidates(&SearchConfig::for_q_range(2, 2)).unwrap();
    let (a2, _) = applicability_count(&q2);
    println!("default q=2: {} candidates, appl {}", q2.candidate_count, a2);

    let df3 = enumerate_candidates(&SearchConfig::df3_series_preset()).unwrap();
    println!("df3 preset: {} candidates, {} series", df3.candidate_count, df3.distinct_series_count);
    for a in check_df3_assertions(&df3) {
        println!("  [{}] {}: {}", if a.passed { "PASS" } else { "FAIL" }, a.name, a.details);
    }

    let tot = enumerate_candidates(&SearchConfig::q3_total_preset()).unwrap();
    println!("q3 total preset: {} candidates", tot.candidate_count);
    println!("  pencil hits: {}", check_pencil_pattern(&tot).len());

    let appl = enumerate_candidates(&SearchConfig::q3_applicability_preset()).unwrap();
    let (a3, n3) = applicability_count(&appl);
    println!("q3 applicability preset: total {}, appl {} (narrow {})", appl.candidate_count, a3, n3);

    let def3 = enumerate_candidates(&SearchConfig::for_q_range(3, 19)).unwrap();
    let (ad, _) = applicability_count(&def3);
    println!("default q>=3: {} candidates, appl {}, pencil {}", def3.candidate_count, ad, check_pencil_pattern(&def3).len());
}
