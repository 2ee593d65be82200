use std::process::{Command, Output};

fn dixon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dixon"))
        .args(args)
        .env_remove("DIXON_ORDER")
        .env_remove("DIXON_FORMAT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn series_tables() {
    let o = dixon(&["series", "sm", "--order", "13"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let last: Vec<&str> = out.lines().last().unwrap().split_whitespace().collect();
    assert_eq!(last[0], "13");
    assert_eq!(last[2], "6476800");
    let o = dixon(&["series", "cm", "--order", "0", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,coefficient,scaled\n0,1,1\n");
    let o = dixon(&["series", "P", "--order", "7", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows[7]["scaled"], "720");
    assert_eq!(rows[4]["scaled"], "12");
}

#[test]
fn every_verify_target_passes() {
    for target in [
        "family-j",
        "family-s",
        "parity",
        "r-repeated",
        "urn",
        "yule",
        "valent",
        "width",
        "andre",
    ] {
        let o = dixon(&["verify", target]);
        assert_eq!(o.status.code(), Some(0), "{target}: {}", stdout(&o));
        assert!(stdout(&o).starts_with("PASS"));
    }
    let o = dixon(&["verify", "valent", "--max-n", "4"]);
    assert!(stdout(&o).contains("z^4 + 2420*z^3 + 963600*z^2 + 49755200*z + 68992000"));
}

#[test]
fn injected_faults_fail() {
    for (target, index) in [
        ("family-j", "5"),
        ("family-s", "3"),
        ("parity", "4"),
        ("r-repeated", "4"),
        ("urn", "7"),
        ("yule", "0"),
        ("valent", "2"),
        ("width", "3"),
        ("andre", "2"),
    ] {
        let o = dixon(&["verify", target, "--inject-fault", index]);
        assert_eq!(o.status.code(), Some(1), "{target}: {}", stdout(&o));
        assert!(stdout(&o).starts_with("FAIL"));
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(dixon(&["verify", "nothing"]).status.code(), Some(2));
    assert_eq!(
        dixon(&["verify", "family-j", "--family", "tan"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        dixon(&["eval", "pi3", "--precision", "5"]).status.code(),
        Some(2)
    );
    assert_eq!(
        dixon(&["verify", "parity", "--order", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(dixon(&[]).status.code(), Some(2));
}

#[test]
fn enumeration_listings() {
    assert_eq!(
        stdout(&dixon(&["enumerate", "perms", "--class", "Y", "--n", "3"])),
        "2 1 3\n3 1 2\n"
    );
    assert_eq!(
        stdout(&dixon(&["enumerate", "perms", "--class", "X", "--n", "1"])),
        "1\n"
    );
    assert_eq!(
        stdout(&dixon(&["enumerate", "histories", "--n", "2"])),
        "x yy xxy\nx yy yxx\n"
    );
    let o = dixon(&["enumerate", "perms", "--class", "X", "--n", "11"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn evaluation() {
    let o = dixon(&["eval", "pi3", "--digits", "10"]);
    assert_eq!(stdout(&o).lines().next(), Some("5.2999162508"));
    let o = dixon(&["eval", "smh", "0"]);
    assert!(
        stdout(&o)
            .lines()
            .next()
            .unwrap()
            .trim_end_matches('0')
            .trim_end_matches('.')
            == "0"
    );
    let o = dixon(&["eval", "yuleX", "1.0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let x: f64 = v["value"].as_str().unwrap().parse().unwrap();
    let (ode, _) = dixon::urn::yule::yule_rk4(1.0, 1e-3);
    assert!((x - ode).abs() < 1e-9);
    assert_eq!(dixon(&["eval", "smh", "2"]).status.code(), Some(1));
}

#[test]
fn environment_and_output_file() {
    let o = Command::new(env!("CARGO_BIN_EXE_dixon"))
        .args(["series", "cm"])
        .env("DIXON_ORDER", "3")
        .env("DIXON_FORMAT", "csv")
        .output()
        .unwrap();
    assert_eq!(
        stdout(&o),
        "n,coefficient,scaled\n0,1,1\n1,0,0\n2,0,0\n3,-1/3,-2\n"
    );
    let dir = std::env::temp_dir().join(format!("dixon-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.txt");
    let o = dixon(&[
        "series",
        "sm",
        "--order",
        "4",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success() && o.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("-1/6"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "parity", "--format", "json"][..],
        &["enumerate", "perms", "--r", "3", "--n", "7"][..],
    ] {
        assert_eq!(dixon(args).stdout, dixon(args).stdout);
    }
}
