use qvdomain::harness::suite::SUITES;
use qvdomain::{run_suite, GenConfig, SuiteStatus};

#[test]
fn every_suite_passes_on_defaults() {
    for name in SUITES {
        let cfg = GenConfig {
            instances: 30,
            workers: 4,
            ..GenConfig::default()
        };
        let t = std::time::Instant::now();
        let r = run_suite(name, &cfg).unwrap();
        eprintln!("{}  [{:?}]", r.to_text(), t.elapsed());
        assert_ne!(r.status, SuiteStatus::Fail, "{}", r.to_text());
    }
}
