use germinv::corpus::{corpus, run_corpus};
use germinv::invariants::ReportOptions;

#[test]
fn builtin_corpus_passes() {
    let results = run_corpus(&corpus(), &ReportOptions::default());
    let failed: Vec<_> = results.iter().filter(|r| !r.pass).collect();
    assert!(failed.is_empty(), "{failed:#?}");
    let labels: Vec<&str> = results.iter().map(|r| r.label.as_str()).collect();
    let mut sorted = labels.clone();
    sorted.sort_unstable();
    assert_eq!(labels, sorted);
}
