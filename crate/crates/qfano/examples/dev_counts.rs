//! Dev scratch: raw search counts vs published tallies.

use qfano::search::{applicability_count, check_df3_assertions, check_pencil_pattern, enumerate_candidates, SearchConfig};

fn main() {
    let t0 = std::time::Instant::now();
    let q3plus = enumerate_candidates(&SearchConfig::for_q_range(3, 19)).unwrap();
    println!("q>=3: {} candidates, {} distinct series ({:?})",
        q3plus.candidate_count, q3plus.distinct_series_count, t0.elapsed());
    let (wide, narrow) = applicability_count(&q3plus);
    println!("  df>=2: {wide}, 2<=df<=3: {narrow}");
    let per_q: Vec<(u32, usize)> = (3..=19)
        .map(|q| (q, q3plus.profiles.iter().filter(|p| p.candidate.q() == q).count()))
        .collect();
    println!("  per q: {per_q:?}");
    println!("  pencil-pattern hits: {}", check_pencil_pattern(&q3plus).len());

    let mut df3 = SearchConfig::for_q_range(3, 19);
    df3.df_filter = Some(3);
    let df3_report = enumerate_candidates(&df3).unwrap();
    println!("df=3, q>=3: {} candidates, {} distinct series",
        df3_report.candidate_count, df3_report.distinct_series_count);
    for a in check_df3_assertions(&df3_report) {
        println!("  [{}] {}: {}", if a.passed { "PASS" } else { "FAIL" }, a.name, a.details);
    }
    let qs: std::collections::BTreeSet<u32> =
        df3_report.profiles.iter().map(|p| p.candidate.q()).collect();
    println!("  q values present: {qs:?}");

    let t1 = std::time::Instant::now();
    let q2 = enumerate_candidates(&SearchConfig::for_q_range(2, 2)).unwrap();
    println!("q=2: {} candidates, {} distinct series ({:?})",
        q2.candidate_count, q2.distinct_series_count, t1.elapsed());
    let (wide2, narrow2) = applicability_count(&q2);
    println!("  df>=2: {wide2}, 2<=df<=3: {narrow2}");
}
