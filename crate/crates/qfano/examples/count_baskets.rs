// dev scratch: basket family sizes
fn main() {
    for (label, cop) in [("all", None), ("odd (q=2)", Some(2u32)), ("q=3", Some(3)), ("q=5", Some(5)), ("q=7", Some(7))] {
        let t0 = std::time::Instant::now();
        let n = qfano::basket::enumerate_baskets(qfano::rational::qi(24), cop).len();
        println!("{label:10} -> {n} baskets ({:?})", t0.elapsed());
    }
}
