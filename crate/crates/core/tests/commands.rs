use superkoszul::coeff::{FieldSpec, RingSpec};
use superkoszul::commands::*;

fn cfg(p: usize, q: usize) -> RunConfig {
    RunConfig {
        p,
        q,
        ..RunConfig::default()
    }
}

fn check<'a>(r: &'a CommandReport, name: &str) -> &'a Check {
    r.checks.iter().find(|c| c.name == name).unwrap()
}

#[test]
fn koszul_verify_examples() {
    let r = cmd_koszul_verify(&RunConfig {
        window: 5,
        ..cfg(1, 1)
    });
    assert!(r.passed);
    assert_eq!(r.detail["nonzero"].as_array().unwrap().len(), 1);
    assert_eq!(r.exit_code(), 0);

    let trivial = cmd_koszul_verify(&cfg(0, 0));
    assert!(trivial.passed);
    assert_eq!(trivial.detail["nonzero"][0]["generators"][0], "1");

    let f3 = RingSpec::field(FieldSpec::prime(3).unwrap());
    let r = cmd_koszul_verify(&RunConfig {
        ring: f3,
        ..cfg(1, 1)
    });
    assert!(!r.passed);
    assert!(r.expected_failure);
    assert_eq!(r.exit_code(), 0);
    assert!(check(&r, "vanishing_elsewhere")
        .message
        .contains("H_2 at (0,3) has dim 1 [l1^2*th1]"));
}

#[test]
fn char_p_outside_window_is_not_excused() {
    let f7 = RingSpec::field(FieldSpec::prime(7).unwrap());
    let r = cmd_koszul_verify(&RunConfig {
        ring: f7,
        window: 8,
        ..cfg(1, 1)
    });
    assert!(!r.passed && r.expected_failure);
    let r = cmd_koszul_verify(&RunConfig {
        ring: f7,
        window: 6,
        ..cfg(1, 1)
    });
    assert!(r.passed);
}

#[test]
fn dual_verify_examples() {
    let r = cmd_dual_verify(&cfg(1, 1));
    assert!(r.passed, "{}", r.to_text());
    assert_eq!(r.detail["generator"], "th1*dch1");
    assert_eq!(r.detail["parity"], "even");

    let r = cmd_dual_verify(&cfg(1, 0));
    assert!(r.passed);
    assert_eq!(r.detail["generator"], "dch1");
    assert_eq!(r.detail["parity"], "odd");

    let r = cmd_dual_verify(&cfg(0, 0));
    assert!(r.passed);
    assert_eq!(r.detail["generator"], "1");

    let narrow = cmd_dual_verify(&RunConfig {
        window: 1,
        ..cfg(1, 1)
    });
    assert!(!narrow.passed);
    assert!(!check(&narrow, "window_contains_generator").passed);
    assert_eq!(narrow.exit_code(), 1);
}

#[test]
fn classical_example() {
    let r = cmd_classical(&RunConfig {
        n: 2,
        ..RunConfig::default()
    });
    assert!(r.passed, "{}", r.to_text());
    assert_eq!(r.detail["nonzero"][0]["generators"][0], "y1*y2");
    assert_eq!(r.detail["nonzero"][0]["i"], 2);
}

#[test]
fn ber_verify_example() {
    let ring = RingSpec::grassmann(FieldSpec::Rationals, 4).unwrap();
    let r = cmd_ber_verify(&RunConfig { ring, ..cfg(1, 1) });
    assert!(r.passed);
    assert_eq!(r.detail["matches"], 100);
    let again = cmd_ber_verify(&RunConfig { ring, ..cfg(1, 1) });
    assert_eq!(r.to_json(), again.to_json());
}

#[test]
fn charp_demo_example() {
    let f3 = RingSpec::field(FieldSpec::prime(3).unwrap());
    let r = cmd_charp_demo(&RunConfig {
        ring: f3,
        ..cfg(1, 1)
    });
    assert!(r.passed, "{}", r.to_text());
    assert_eq!(r.detail["cycle"], "l1^2*th1");
    let f5 = RingSpec::field(FieldSpec::prime(5).unwrap());
    assert!(
        cmd_charp_demo(&RunConfig {
            ring: f5,
            ..cfg(1, 1)
        })
        .passed
    );
    let bad = cmd_charp_demo(&cfg(1, 1));
    assert!(!bad.passed);
    assert_eq!(bad.checks[0].name, "run");
}

#[test]
fn reports_are_versioned() {
    let r = cmd_dual_verify(&cfg(2, 1));
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "dual-verify");
}
