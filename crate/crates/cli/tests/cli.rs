use std::io::Write;
use std::process::{Command, Output, Stdio};

fn leveling(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_leveling"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim_end().to_string()
}

const CHAIN: &str = r#"{"p":[1,1,1],"c":[1,1,1],"L":2,"arcs":[[0,1],[1,2]]}"#;

#[test]
fn solve_chain() {
    let o = leveling(&["solve", "-i", "-", "--class", "l2-prec-uet", "--deadline", "3"], CHAIN);
    assert!(o.status.success());
    assert_eq!(stdout(&o), r#"{"x":[0,1,2],"F":3}"#);
}

#[test]
fn shallow_in_tree_exits_2() {
    let tree = r#"{"p":[1,1,1],"c":[1,1,1],"L":1,"arcs":[[0,2],[1,2]]}"#;
    let o = leveling(&["solve", "-i", "-", "--class", "in-tree", "--deadline", "1"], tree);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("infeasible deadline"));
}

#[test]
fn unit_pmtn_prints_rationals() {
    let three = r#"{"p":[1,1,1],"c":[1,1,1],"L":1,"r":[0,0,0],"d":[1,1,1]}"#;
    let o = leveling(&["solve", "-i", "-", "--pmtn"], three);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.starts_with(r#"{"intervals":[[[0,1,1,1]],"#), "{out}");
    assert!(out.ends_with(r#""F":[1,1]}"#), "{out}");
}

#[test]
fn input_errors_exit_1() {
    let o = leveling(&["solve", "-i", "-", "--deadline", "3"], "{\"p\":[1],\n\"c\":[1],\"L\":1,\n\"arcs\":[[0,0]]}");
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3") && err.contains("arcs"), "{err}");

    let o = leveling(&["solve", "-i", "-", "--class", "l2-dp", "--deadline", "3"], CHAIN);
    assert_eq!(o.status.code(), Some(1));
    let o = leveling(&["solve", "-i", "-", "--class", "l9"], CHAIN);
    assert_ne!(o.status.code(), Some(0));
    let o = leveling(&["solve", "-i", "-"], CHAIN);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn brute_fallback_warns() {
    let odd = r#"{"p":[2,1],"c":[3,1],"L":3,"arcs":[[0,1]],"M":4}"#;
    let o = leveling(&["solve", "-i", "-"], odd);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert_eq!(stdout(&o), r#"{"x":[0,2],"F":7}"#);
}

#[test]
fn profiles() {
    let o = leveling(&["profile", "-i", "-", "--to", "4"], CHAIN);
    assert_eq!(stdout(&o), "M,FStar\n3,3\n4,3");
    let anti = r#"{"p":[1,1,1,1],"c":[1,1,1,1],"L":2}"#;
    let o = leveling(&["profile", "-i", "-"], anti);
    assert_eq!(stdout(&o), "M,FStar\n1,2\n2,4\n3,4\n4,4");
    assert!(String::from_utf8_lossy(&o.stderr).contains("m*=2"));
    let wrong = r#"{"p":[2],"c":[1],"L":2}"#;
    assert_eq!(leveling(&["profile", "-i", "-"], wrong).status.code(), Some(1));
}

#[test]
fn generate_is_deterministic() {
    let a = leveling(&["generate", "--kind", "in-tree", "--n", "5", "--seed", "42"], "");
    let b = leveling(&["generate", "--kind", "in-tree", "--n", "5", "--seed", "42"], "");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let one = leveling(&["generate", "--kind", "dag", "--n", "1", "--seed", "9"], "");
    assert_eq!(stdout(&one), r#"{"p":[1],"c":[1],"L":2,"M":1}"#);
    assert_ne!(leveling(&["generate", "--kind", "cube", "--n", "3"], "").status.code(), Some(0));
}

#[test]
fn generated_instances_solve() {
    for kind in ["dag", "in-tree", "windows", "free"] {
        let g = leveling(&["generate", "--kind", kind, "--n", "6", "--seed", "3"], "");
        let o = leveling(&["solve", "-i", "-"], &String::from_utf8_lossy(&g.stdout));
        assert!(o.status.success(), "{kind}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn verify_l1() {
    let o = leveling(&["verify", "--suite", "l1", "--budget", "5"], "");
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("PASS") && out.contains("l1"), "{out}");
    assert_eq!(leveling(&["verify", "--suite", "everything"], "").status.code(), Some(1));
}

#[test]
fn verify_reductions() {
    let o = leveling(&["verify", "--suite", "reductions", "--budget", "10"], "");
    assert!(o.status.success());
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn reduce_p2cmax() {
    let o = leveling(&["reduce", "--from", "p2cmax", "-i", "-"], r#"{"p":[2,2,2],"M":3}"#);
    assert!(o.status.success());
    assert_eq!(stdout(&o), r#"{"p":[2,2,2],"c":[1,1,1],"L":2,"M":3}"#);
}

#[test]
fn reduce_windows() {
    let w = r#"{"p":[1],"c":[1],"L":1,"r":[1],"d":[2]}"#;
    let o = leveling(&["reduce", "--from", "windows", "-i", "-", "--deadline", "3"], w);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), r#"{"p":[1,1,1],"c":[1,0,0],"L":1,"arcs":[[1,0],[0,2]],"M":3}"#);
}
