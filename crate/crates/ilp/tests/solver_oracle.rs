#[path = "support/oracle.rs"]
mod oracle;

#[test]
fn solver_agrees_with_brute_force() {
    let feasible = oracle::check_agreement(0x5eed, 200).unwrap();
    eprintln!("{feasible} of 200 instances feasible");
    assert!((20..=180).contains(&feasible));
}
