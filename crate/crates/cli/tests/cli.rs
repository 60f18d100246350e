use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mpacm::lab::{generate, GenSpec, Pattern};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn fields(&self) -> Vec<(String, String)> {
        self.stdout
            .lines()
            .filter(|l| !l.starts_with('#'))
            .filter_map(|l| l.split_once('='))
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }

    fn get(&self, key: &str) -> String {
        self.fields()
            .into_iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v)
            .unwrap_or_else(|| panic!("no key {key} in\n{}", self.stdout))
    }
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn mpacm_with_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mpacm"));
    cmd.args(args).env_remove("MPACM_PRIME");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let Output { status, stdout, stderr } = cmd.output().expect("binary runs");
    Run {
        code: status.code().expect("exit code"),
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn mpacm(args: &[&str]) -> Run {
    mpacm_with_env(args, &[])
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn check_four_points() {
    let r = mpacm(&["check", data("four_points.toml").to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.get("star"), "false");
    assert_eq!(r.get("acm-fast-path"), "thm-4.8");
    assert_eq!(r.get("n0"), "2");
    assert_eq!(r.get("n1"), "1");
    assert_eq!(r.get("d_member"), "true");
    assert_eq!(r.get("inclusion"), "false");
}

#[test]
fn check_full_grid() {
    let r = mpacm(&["check", data("grid.toml").to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert_eq!(r.get("star"), "true");
    assert_eq!(r.get("inclusion"), "true");
    assert_eq!(r.get("corners"), "(2,3)");
}

#[test]
fn malformed_tuple_length_exits_3_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_temp(
        &dir,
        "bad.toml",
        "factors = [1, 2]\npoints = [\n    [[1, 1], [1, 0, 0]],\n    [[1, 2], [0, 1]],\n]\n",
    );
    let r = mpacm(&["check", &f]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("line 4"), "{}", r.stderr);
    assert!(r.stdout.is_empty());
}

#[test]
fn invalid_configurations_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    // duplicates only after reduction mod 7
    let dup = write_temp(&dir, "dup.toml", "factors = [1]\npoints = [\n  [[1, 1]],\n  [[1, 8]],\n]\n");
    assert_eq!(mpacm(&["check", &dup]).code, 0);
    let r = mpacm(&["check", &dup, "--prime", "7"]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("line 4") && r.stderr.contains("duplicates"), "{}", r.stderr);

    let zero = write_temp(&dir, "zero.toml", "factors = [1]\npoints = [[[0, 0]]]\n");
    assert_eq!(mpacm(&["check", &zero]).code, 3);
    let empty = write_temp(&dir, "empty.toml", "factors = [1, 1]\npoints = []\n");
    assert_eq!(mpacm(&["check", &empty]).code, 3);
    let labels = write_temp(&dir, "labels.toml", "factors = [1]\nlabels = [\"a\"]\npoints = [[[1, 0]], [[0, 1]]]\n");
    let r = mpacm(&["check", &labels]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let syntax = write_temp(&dir, "syntax.toml", "factors = [1, 2\npoints = []\n");
    assert_eq!(mpacm(&["check", &syntax]).code, 2);
    let unknown = write_temp(&dir, "unknown.toml", "factors = [1]\npoints = [[[1, 0]]]\ncolour = 1\n");
    assert_eq!(mpacm(&["check", &unknown]).code, 2);
    assert_eq!(mpacm(&["check", "/nonexistent/config.toml"]).code, 2);
    assert_eq!(mpacm(&["check"]).code, 2);
    assert_eq!(mpacm(&["frobnicate"]).code, 2);
    assert_eq!(mpacm(&["verify", "no-such-suite"]).code, 2);
    assert_eq!(mpacm(&["scan", "conj-0.0"]).code, 2);
    assert_eq!(mpacm(&["check", data("grid.toml").to_str().unwrap(), "--prime", "12"]).code, 2);
    let r = mpacm(&["ideal", data("grid.toml").to_str().unwrap(), "--hilbert", "1", "2", "3"]);
    assert_eq!(r.code, 2);
    assert_eq!(mpacm_with_env(&["check", data("grid.toml").to_str().unwrap()], &[("MPACM_PRIME", "x")]).code, 2);
}

#[test]
fn minimal_generators_of_a_coordinate_point() {
    let r = mpacm(&["ideal", data("coordinate_point.toml").to_str().unwrap(), "--min-gens"]);
    assert_eq!(r.code, 0);
    let gens: Vec<_> = r.fields().into_iter().filter(|(k, _)| k.starts_with("mingens.")).collect();
    assert_eq!(gens, vec![("mingens.0.1".into(), "2".into()), ("mingens.1.0".into(), "1".into())]);
    assert_eq!(r.get("mingens"), "3");
}

#[test]
fn hilbert_function_stabilizes_at_the_number_of_points() {
    let r = mpacm(&["ideal", data("four_points.toml").to_str().unwrap(), "--hilbert", "5", "5", "0", "0", "1", "0"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.get("hilbert.5.5"), "4");
    assert_eq!(r.get("hilbert.0.0"), "1");
    // two distinct first coordinates
    assert_eq!(r.get("hilbert.1.0"), "2");
}

#[test]
fn grid_basis_is_row_form_plus_column_form() {
    let r = mpacm(&["ideal", data("grid.toml").to_str().unwrap(), "--groebner", "--min-gens"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.get("gb.size"), "2");
    assert_eq!(r.get("mingens.2.0"), "1");
    assert_eq!(r.get("mingens.0.3"), "1");
    assert_eq!(r.get("mingens"), "2");
    // rows [1,0], [1,1]: x1 * (x0 - x1)
    assert_eq!(r.get("gb.1"), "x0*x1 - x1^2");
}

#[test]
fn acm_decisions_for_worked_examples() {
    let four = mpacm(&["acm", data("four_points.toml").to_str().unwrap()]);
    assert_eq!(four.code, 0);
    assert_eq!(four.get("acm"), "true");
    assert_eq!(four.get("certificate"), "regular-sequence");
    assert!(four.fields().iter().any(|(k, _)| k == "witness.2"));

    let six = mpacm(&["acm", data("six_points.toml").to_str().unwrap()]);
    assert_eq!(six.code, 0);
    assert_eq!(six.get("acm"), "false");
    assert_eq!(six.get("certificate"), "monte-carlo");
    assert_eq!(six.get("acm-fast-path"), "thm-4.7");
    assert_eq!(six.get("fast_path_agrees"), "true");
    assert!(six.get("error_bound").parse::<f64>().unwrap() < 1e-6);

    let eight = mpacm(&["acm", data("eight_points.toml").to_str().unwrap()]);
    assert_eq!(eight.get("acm"), "true");
    assert_eq!(eight.get("acm-fast-path"), "thm-4.8");
}

#[test]
fn trusted_theorems_skip_the_algebra() {
    let r = mpacm(&["acm", data("six_points.toml").to_str().unwrap(), "--trust-theorems"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.get("acm"), "false");
    assert_eq!(r.get("certificate"), "combinatorial");
    assert_eq!(r.get("fast_path_agrees"), "na");
}

#[test]
fn rational_field_agrees() {
    for (file, expected) in [("four_points.toml", "true"), ("six_points.toml", "false")] {
        let r = mpacm(&["acm", data(file).to_str().unwrap(), "--field", "rational", "--trials", "1"]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert_eq!(r.get("field"), "rational");
        assert_eq!(r.get("acm"), expected);
    }
}

#[test]
fn tiny_field_is_undecidable() {
    let r = mpacm(&["acm", data("four_points.toml").to_str().unwrap(), "--prime", "7"]);
    assert_eq!(r.code, 4);
    assert_eq!(r.get("acm"), "undecided");
    assert_eq!(r.get("error_bound"), "1e0");
}

#[test]
fn prime_precedence_flag_file_env() {
    let dir = tempfile::tempdir().unwrap();
    let plain = data("four_points.toml");
    let plain = plain.to_str().unwrap();
    let with_prime = write_temp(
        &dir,
        "p.toml",
        &std::fs::read_to_string(plain).unwrap().replace("factors", "prime = 1009\nfactors"),
    );
    let env = [("MPACM_PRIME", "101")];
    assert_eq!(mpacm(&["check", plain]).get("field"), "gf(32003)");
    assert_eq!(mpacm_with_env(&["check", plain], &env).get("field"), "gf(101)");
    assert_eq!(mpacm_with_env(&["check", &with_prime], &env).get("field"), "gf(1009)");
    assert_eq!(
        mpacm_with_env(&["check", &with_prime, "--prime", "10007"], &env).get("field"),
        "gf(10007)"
    );
}

#[test]
fn seed_precedence_flag_file_default() {
    let dir = tempfile::tempdir().unwrap();
    let plain = data("four_points.toml");
    let seeded = write_temp(
        &dir,
        "s.toml",
        &std::fs::read_to_string(&plain).unwrap().replace("factors", "seed = 9\nfactors"),
    );
    assert_eq!(mpacm(&["acm", plain.to_str().unwrap()]).get("seed"), "0");
    assert_eq!(mpacm(&["acm", &seeded]).get("seed"), "9");
    assert_eq!(mpacm(&["acm", &seeded, "--seed", "4"]).get("seed"), "4");
}

#[test]
fn verify_examples() {
    let r = mpacm(&["verify", "examples"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.get("pass"), "3");
    assert_eq!(r.get("fail"), "0");
    assert_eq!(r.get("suite"), "examples");
    assert_eq!(r.get("seed"), "0");
}

#[test]
fn scan_outcomes() {
    let r = mpacm(&["scan", "conj-4.10", "--budget", "20"]);
    assert_eq!(r.code, 0);
    assert_eq!((r.get("pass"), r.get("fail")), ("20".into(), "0".into()));
    // candidates found by the scan fail the run
    let r = mpacm(&["scan", "conj-4.10", "--budget", "30", "--seed", "1"]);
    assert_eq!(r.code, 3);
    assert_eq!(r.get("fail"), "2");
    assert!(r.get("failure.1").starts_with("conj-4.10 case "));
}

#[test]
fn machine_lines_are_stable() {
    for args in [
        vec!["check", "four_points.toml"],
        vec!["acm", "six_points.toml"],
        vec!["ideal", "grid.toml", "--groebner", "--min-gens", "--hilbert", "2", "2"],
    ] {
        let path = data(args[1]);
        let mut full = args.clone();
        full[1] = path.to_str().unwrap();
        let a = mpacm(&full);
        let b = mpacm(&full);
        assert_eq!(a.code, 0);
        assert_eq!(a.fields(), b.fields());
        let keys: BTreeSet<_> = a.fields().into_iter().map(|(k, _)| k).collect();
        assert_eq!(keys.len(), a.fields().len(), "keys repeat");
    }
    let a = mpacm(&["verify", "lemma-3.4", "--cases", "5", "--seed", "3"]);
    let b = mpacm(&["verify", "lemma-3.4", "--cases", "5", "--seed", "3"]);
    assert_eq!(a.fields(), b.fields());
}

fn point_set(points: &[Vec<Vec<i64>>]) -> BTreeSet<Vec<Vec<i64>>> {
    points.iter().cloned().collect()
}

#[test]
fn generated_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("gen.toml");
    let r = mpacm(&[
        "generate", "--pattern", "ab", "--n0", "2", "--n1", "1", "--levels", "2", "--seed", "5", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.get("points"), "4");

    let expected = generate(&GenSpec::new(
        &[1, 2],
        Pattern::Ab {
            n0: 2,
            n1: 1,
            levels: 2,
            intersect_allowed: false,
        },
        5,
    ))
    .unwrap();
    let text = std::fs::read_to_string(&out).unwrap();
    let value: toml::Table = toml::from_str(&text).unwrap();
    let points: Vec<Vec<Vec<i64>>> = value["points"].clone().try_into().unwrap();
    assert_eq!(point_set(&points), point_set(&expected.points));
    assert_eq!(value["seed"].as_integer(), Some(5));

    let check = mpacm(&["check", out.to_str().unwrap()]);
    assert_eq!(check.code, 0);
    assert_eq!((check.get("n0"), check.get("n1")), ("2".into(), "1".into()));
    assert_eq!(check.get("star"), "false");
    assert_eq!(check.get("d_member"), "true");
    assert_eq!(check.get("acm-fast-path"), "thm-4.8");
}

#[test]
fn generate_to_stdout_is_a_loadable_file() {
    let dir = tempfile::tempdir().unwrap();
    for pattern in ["random", "star", "inclusion", "ab"] {
        let r = mpacm(&["generate", "--pattern", pattern, "--dims", "1,1", "--levels", "3", "--n0", "3"]);
        assert_eq!(r.code, 0, "{pattern}: {}", r.stderr);
        let f = write_temp(&dir, &format!("{pattern}.toml"), &r.stdout);
        let check = mpacm(&["check", &f]);
        assert_eq!(check.code, 0, "{pattern}: {}", check.stderr);
        if pattern == "star" {
            assert_eq!(check.get("star"), "true");
        }
    }
    assert_eq!(mpacm(&["generate", "--pattern", "ab", "--dims", "2,2"]).code, 2);
}
