//! Dev scratch: constraint sweep hunting the published tallies
//! (472 candidates q>=3, 1492 at q=2, 30 series at df=3, 313/382 applicable).

use qfano::search::{applicability_count, check_pencil_pattern, enumerate_candidates, SearchConfig};

fn run(label: &str, tweak: impl Fn(&mut SearchConfig)) {
    let mut c3 = SearchConfig::for_q_range(3, 19);
    tweak(&mut c3);
    let r3 = enumerate_candidates(&c3).unwrap();
    let (a3w, a3n) = applicability_count(&r3);
    let mut c2 = SearchConfig::for_q_range(2, 2);
    tweak(&mut c2);
    let r2 = enumerate_candidates(&c2).unwrap();
    let (a2w, a2n) = applicability_count(&r2);
    let mut cdf = SearchConfig::for_q_range(3, 19);
    tweak(&mut cdf);
    cdf.df_filter = Some(3);
    let rdf = enumerate_candidates(&cdf).unwrap();
    println!(
        "{label:<36} q>=3: {:>4} (appl {a3w:>4}/{a3n:>4})  q=2: {:>5} (appl {a2w:>4}/{a2n:>4})  df3: {:>3} cand / {:>3} series  pencil: {}",
        r3.candidate_count,
        r2.candidate_count,
        rdf.candidate_count,
        rdf.distinct_series_count,
        check_pencil_pattern(&r3).len()
    );
}

fn main() {
    run("baseline (kawamata+vanish+deep)", |_| {});
    run("no positivity", |c| c.check_positivity = false);
    run("no vanish, no positivity", |c| {
        c.fano_vanishing = false;
        c.check_positivity = false;
    });
    run("no vanishing", |c| c.fano_vanishing = false);
}
