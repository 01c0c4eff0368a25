use std::time::Instant;
use etale_core::rational::int;
use etale_core::search::{EtaleSearch, SearchSpace};
use etale_core::wright::WrightAlgebra;

#[test]
#[ignore]
fn probe_full_search_scale() {
    let space = SearchSpace::new(
        WrightAlgebra::new(3, vec![int(0), int(1)]).unwrap(),
        2,
        vec![int(-1), int(0), int(1)],
    )
    .unwrap();
    let search = EtaleSearch::new(space).unwrap();
    let n = search.vector_count();
    for start in [0u128, 7_000_000, 14_000_000] {
        let t = Instant::now();
        let probe = 200_000u128;
        let summary = search.run_range(start, start + probe, &mut |_| {});
        let dt = t.elapsed();
        println!(
            "[{}..+200k] {:?} => est full {:?} | {}",
            start,
            dt,
            dt * (n as u32 / probe as u32),
            summary
        );
    }
}
