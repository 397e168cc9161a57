//! Runs the binary on fixed inputs and compares against `tests/golden/`.
//! Set `UPDATE_GOLDEN=1` to rewrite the expected files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn run(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_prop-calc"))
        .args(args)
        .current_dir(dir())
        .output()
        .expect("binary runs");
    let mut text = String::from_utf8(out.stdout).unwrap();
    let err = String::from_utf8(out.stderr).unwrap();
    if !err.is_empty() {
        text.push_str("--- stderr\n");
        text.push_str(&err);
    }
    (text, out.status.code().unwrap_or(-1))
}

fn golden(name: &str, args: &[&str], code: i32) {
    let (text, got_code) = run(args);
    assert_eq!(got_code, code, "exit code of {args:?}\n{text}");
    let path = dir().join("golden").join(format!("{name}.txt"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, &text).unwrap();
        return;
    }
    let want = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(text, want, "output of {args:?}");
}

#[test]
fn canonical_forms() {
    golden("canon_identity_chain", &["canon", "id^x_y id^y_z [x;z]"], 0);
    golden("canon_loop", &["canon", "id^x_x"], 0);
    golden("canon_repeated_input", &["--sig", "data/lie.sig", "canon", "L^{x,x}_y"], 2);
    golden("canon_generators", &["--sig", "data/lie.sig", "canon", "L^{b,a}_c [a,b;c] + L^{a,b}_c [a,b;c]"], 0);
    golden("canon_json", &["--json", "canon", "2*t*id^a_b [a;b]"], 0);
}

#[test]
fn evaluation() {
    golden("eval_loop", &["--dim", "3", "eval", "id^x_x"], 0);
    golden("eval_swap", &["eval", "id^a_b id^c_d [a,c;d,b]"], 0);
    golden("eval_trace_square", &["--sig", "data/matrix.sig", "eval", "--rep", "data/matrix_rep.json", "M^x_y M^y_x"], 0);
    golden("eval_product", &["--sig", "data/matrix.sig", "--json", "eval", "--rep", "data/matrix_rep.json", "M^x_y M^y_z [x;z]"], 0);
    golden("eval_missing_rep", &["--sig", "data/matrix.sig", "eval", "M^x_x"], 2);
    golden("pair_swap_identity", &["pair", "id^a_b id^c_d [a,c;d,b]", "id^a_b id^c_d [a,c;b,d]"], 0);
    golden("contract_swap", &["contract", "id^a_b id^c_d [a,c;d,b]", "2", "1"], 0);
}

#[test]
fn group_algebra() {
    golden("symmetrizer_12_3", &["symmetrizer", "12/3"], 0);
    golden("idempotent_21", &["idempotent", "2,1"], 0);
    golden("symmetrizer_bad", &["symmetrizer", "13/2x"], 2);
}

#[test]
fn ideals() {
    golden("ideal_classify_box", &["ideal", "classify", r#"{"f":"1","C":[[2,2]]}"#], 0);
    golden("ideal_classify_zero", &["ideal", "classify", r#"{"zero":true}"#], 0);
    golden("ideal_show", &["ideal", "show", r#"{"f":"1","C":[[1,1],[1,3],[4,2]]}"#], 0);
    golden("ideal_member_zero", &["ideal", "member", r#"{"f":"t-1","C":[]}"#, "0"], 0);
    golden("ideal_member_no", &["ideal", "member", r#"{"f":"t-1","C":[]}"#, "id^a_b [a;b]"], 0);
    golden("ideal_generate", &["ideal", "generate", "t*id^x_y [x;y] - id^x_y [x;y]"], 0);
    golden("ideal_sum", &["--json", "ideal", "sum", r#"{"f":"t-1","C":[]}"#, r#"{"f":"t^2-1","C":[]}"#], 0);
    golden("ideal_malformed", &["ideal", "show", r#"{"f":"t-"}"#], 2);
}

#[test]
fn checks() {
    golden("check_lie_sl2", &["check", "lie", "--algebra", "sl2"], 0);
    golden("check_lie_file", &["--json", "check", "lie", "--tensor", "data/so3.json"], 0);
    golden("check_lie_nonabelian", &["check", "lie", "--algebra", "nonabelian2"], 1);
    golden("check_alt", &["--dim", "2", "check", "alt"], 0);
    golden("check_ch_2", &["check", "ch", "[[1,2],[3,4]]"], 0);
    golden("check_ch_3", &["check", "ch", "--n", "2", r#"[[1,"1/2",0],[0,1,5],[2,0,3]]"#], 1);
    golden("kernel_dim1", &["--dim", "1", "kernel", "--p", "2", "--q", "2"], 0);
    golden("kernel_loops", &["--dim", "2", "kernel", "--p", "0", "--q", "0", "--loops", "2"], 0);
}

#[test]
fn verification_suites() {
    golden("verify_symmetrizer", &["verify", "symmetrizer", "--max-n", "4"], 0);
    golden("verify_div2", &["verify", "div2", "--max-n", "3"], 0);
    golden("verify_lie", &["verify", "lie", "--algebra", "sl2"], 0);
    golden("verify_lie_degenerate", &["verify", "lie", "--algebra", "nonabelian2"], 1);
    golden("verify_alt", &["--dim", "2", "verify", "alt"], 0);
    golden("verify_kernel", &["--dim", "2", "--json", "verify", "kernel"], 0);
    golden("verify_limit", &["verify", "symmetrizer", "--max-n", "12"], 3);
    let (text, code) = run(&["verify", "all"]);
    assert_eq!(code, 0, "{text}");
    assert!(text.ends_with("all checks passed\n"));
}

#[test]
fn deterministic_output() {
    let args = ["--sig", "data/lie.sig", "canon", "L^{a,d}_e L^{b,c}_d [a,b,c;e] + L^{b,d}_e L^{c,a}_d [a,b,c;e]"];
    assert_eq!(run(&args), run(&args));
}
