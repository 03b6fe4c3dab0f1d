//! One PASS/FAIL line per acceptance criterion, each driven through the `picss` binary.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use serde_json::Value;

type Check = Result<String, String>;

fn picss(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_picss"))
        .args(args)
        .env_remove("PICSS_SEED")
        .output()
        .map_err(|e| format!("spawn: {e}"))?;
    let code = out.status.code().unwrap_or(-1);
    if code != 0 {
        let err = String::from_utf8_lossy(&out.stderr);
        return Err(format!("picss {} exited {code}: {}", args.join(" "), err.lines().last().unwrap_or("")));
    }
    Ok((code, String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn picss_json(args: &[&str]) -> Result<Value, String> {
    let (_, out) = picss(args)?;
    serde_json::from_str(&out).map_err(|e| format!("picss {}: bad JSON: {e}", args.join(" ")))
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<(), String> {
    ensure(t.elapsed() < limit, format!("{what} took {:.1?}, limit {limit:?}", t.elapsed()))
}

fn sweep(p: &str, kind: &str, expected: u64, limit: Duration) -> Result<String, String> {
    let t = Instant::now();
    let mut args = vec!["picard-order", "--p", p, "--group", "cp", "--emit", "json", "--sweep", kind];
    if kind == "sampled" {
        args.extend(["--samples", "500"]);
    }
    let v = picss_json(&args)?;
    within(t, limit, &format!("p={p} sweep"))?;
    let runs = v["runs"].as_u64().unwrap_or(0);
    ensure(v["orders"] == serde_json::json!([expected]), format!("p={p} orders {}", v["orders"]))?;
    ensure(v["all_cyclic"] == true, format!("p={p} not cyclic"))?;
    let (_, text) = picss(&["picard-order", "--p", p, "--group", "cp"])?;
    ensure(text.trim() == format!("Z/{expected} cyclic"), format!("p={p} prints {:?}", text.trim()))?;
    Ok(format!("p={p}: {runs} runs, Z/{expected} cyclic"))
}

fn criterion_main_theorem() -> Check {
    let three = sweep("3", "exhaustive", 18, Duration::from_secs(60))?;
    ensure(three.contains("144 runs"), format!("exhaustive sweep size: {three}"))?;
    let five = sweep("5", "sampled", 50, Duration::from_secs(600))?;
    ensure(five.contains("500 runs"), format!("sampled sweep size: {five}"))?;
    Ok(format!("{three}; {five}"))
}

fn criterion_maximal() -> Check {
    let t = Instant::now();
    let v = picss_json(&["picard-order", "--p", "3", "--group", "max", "--sweep", "none", "--emit", "json"])?;
    within(t, Duration::from_secs(60), "maximal group")?;
    let bounds: Vec<u64> = v["ledger"].as_array().ok_or("no ledger")?.iter().filter_map(|e| e["bound"].as_u64()).collect();
    ensure(v["order"] == 72 && v["cyclic"] == true, format!("order {} cyclic {}", v["order"], v["cyclic"]))?;
    ensure(bounds.len() == 3 && bounds[0] == 2 && bounds[1] == 12 && bounds[2] <= 3, format!("ledger {bounds:?}"))?;
    Ok(format!("Z/72 cyclic, ledger {bounds:?}"))
}

fn criterion_algebraic() -> Check {
    let t = Instant::now();
    let v = picss_json(&["algpic", "--p", "3", "--emit", "json"])?;
    within(t, Duration::from_secs(30), "algpic")?;
    ensure(v["pairs"] == 72, format!("pairs {}", v["pairs"]))?;
    ensure(v["results"] == serde_json::json!(["Z/3"]), format!("results {}", v["results"]))?;
    ensure(v["presentation_matches"] == true, "E_1 disagrees with the polynomial presentation")?;
    Ok("Z/3 for all 72 (xi, xi') pairs; E_1 matches the presentation".into())
}

fn criterion_trunclog() -> Check {
    let t = Instant::now();
    for p in ["2", "3", "5"] {
        let v = picss_json(&["trunclog", "verify", "--p", p, "--trials", "100", "--emit", "json"])?;
        for id in v["identities"].as_array().ok_or("no identities")? {
            ensure(id["failures"] == 0 && id["trials"] == 100, format!("p={p} {}: {}", id["identity"], id["counterexample"]))?;
        }
    }
    let rings = [
        (3, r#"{"kind":"monomial","p":3,"vars":["x"],"truncation":3}"#),
        (3, r#"{"kind":"monomial","p":3,"vars":["x","y"],"truncation":2}"#),
        (3, r#"{"kind":"monomial","p":3,"n":2,"vars":["x"],"truncation":2}"#),
        (3, r#"{"kind":"monomial","p":3,"vars":["x","y","z","w"],"truncation":2}"#),
        (3, r#"{"kind":"cyclotomic","p":3,"idealPower":2}"#),
        (3, r#"{"kind":"cyclotomic","p":3,"idealPower":3}"#),
        (2, r#"{"kind":"monomial","p":2,"vars":["x"],"truncation":2}"#),
        (2, r#"{"kind":"monomial","p":2,"vars":["x","y","z"],"truncation":2}"#),
        (2, r#"{"kind":"monomial","p":2,"n":3,"vars":["x"],"truncation":2}"#),
        (5, r#"{"kind":"monomial","p":5,"vars":["x"],"truncation":3}"#),
        (5, r#"{"kind":"monomial","p":5,"vars":["x","y"],"truncation":2}"#),
    ];
    let mut checked = 0;
    for (p, ring) in rings {
        let p = p.to_string();
        let v = picss_json(&["trunclog", "verify", "--p", &p, "--ring", ring, "--trials", "100", "--emit", "json"])?;
        let b = &v["bijection"];
        ensure(b.is_object(), format!("no bijection check for {ring}"))?;
        ensure(b["inverse_failures"] == 0 && b["homomorphism_failures"] == 0, format!("bijection fails for {ring}: {b}"))?;
        checked += 1;
    }
    within(t, Duration::from_secs(30), "trunclog suite")?;
    Ok(format!("3 identities x 100 inputs for p = 2, 3, 5; bijection on {checked} rings of order <= 243"))
}

fn first_unstable(example: &str) -> Result<Value, String> {
    picss_json(&["cosimp", "first-unstable", "--example", example, "--p", "3", "--max-degree", "3"])
}

fn nonzero(v: &Value) -> bool {
    v.as_array().is_some_and(|a| a.iter().any(|x| x != 0))
}

fn criterion_worked_examples() -> Check {
    let t = Instant::now();
    let a = first_unstable("truncated")?;
    ensure(a["unit_group"] == "Z/3+Z/9", format!("truncated: unit group {}", a["unit_group"]))?;
    ensure(a["all_additive_zero"] == true, "truncated: d_{p-1} is not zero")?;
    ensure(nonzero(&a["tautological"]["multiplicative_d"]), "truncated: multiplicative d_{p-1} vanishes")?;
    let b = first_unstable("cyclotomic")?;
    ensure(b["unit_group"] == "Z/3+Z/3+Z/3", format!("cyclotomic: unit group {}", b["unit_group"]))?;
    ensure(b["additive_group"] == "Z/3+Z/9", format!("cyclotomic: additive group {}", b["additive_group"]))?;
    ensure(nonzero(&b["tautological"]["additive_d"]), "cyclotomic: additive d_{p-1} vanishes")?;
    ensure(!nonzero(&b["tautological"]["multiplicative_d"]), "cyclotomic: multiplicative d_{p-1} is nonzero")?;
    within(t, Duration::from_secs(120), "worked examples")?;
    Ok("units [3,9]: d = 0, d_x != 0; units [3,3,3], additive [3,9]: d != 0, d_x = 0".into())
}

fn criterion_first_unstable_identity() -> Check {
    let t = Instant::now();
    let mut classes = 0;
    for ex in ["truncated", "cyclotomic"] {
        let v = first_unstable(ex)?;
        for c in v["classes"].as_array().ok_or("no classes")? {
            ensure(c["identity_holds"] == true, format!("{ex}: fails in degree {} on {}", c["degree"], c["class"]))?;
            ensure(c["degree"].as_u64().unwrap_or(99) <= 3, "degree out of range")?;
            classes += 1;
        }
        ensure(v["identity_holds"] == true, format!("{ex}: identity fails"))?;
    }
    within(t, Duration::from_secs(300), "first-unstable identity")?;
    Ok(format!("d_x = d + phi on {classes} classes in degrees <= 3"))
}

fn criterion_beta_p0() -> Check {
    let t = Instant::now();
    let v = picss_json(&["cosimp", "betap0", "--p", "3", "--k", "1", "--n", "2"])?;
    within(t, Duration::from_secs(60), "betap0")?;
    ensure(v["sym_cohomology"] == "Z/3", format!("H^2(Sym^3) = {}", v["sym_cohomology"]))?;
    ensure(v["beta_nonzero"] == true && v["phi_nonzero"] == true, "a class vanishes")?;
    ensure(v["phi_semilinear"] == true, "phi is not Frobenius-semilinear over F_9")?;
    Ok("H^2(Sym^3) = Z/3, [beta P^0 iota] and [phi(iota)] nonzero, phi(e iota) = e^3 phi(iota)".into())
}

fn criterion_jordan_types() -> Check {
    let t = Instant::now();
    let mut rows = 0;
    for (p, max_i) in [("3", "9"), ("5", "25")] {
        let v = picss_json(&["reps", "af-check", "--p", p, "--max-i", max_i, "--emit", "json"])?;
        for r in v.as_array().ok_or("no rows")? {
            ensure(r["ok"] == true, format!("p={p} i={}: {} vs {}", r["i"], r["computed"], r["expected"]))?;
            rows += 1;
        }
    }
    within(t, Duration::from_secs(120), "Jordan types")?;
    ensure(rows == 10 + 26, format!("{rows} rows"))?;
    Ok(format!("{rows} symmetric powers match the closed form"))
}

fn criterion_goldens() -> Check {
    let t = Instant::now();
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let charts = [
        ("additive-einf", "additive_einf_cp_p3"),
        ("picard-cp", "picard_cp_p3"),
        ("algebraic", "algebraic_p3"),
        ("picard-max", "picard_max_p3"),
    ];
    for (name, file) in charts {
        let golden = dir.join(format!("{file}.json"));
        picss(&["chart", "--name", name, "--p", "3", "--emit", "json", "--golden", golden.to_str().unwrap()])?;
    }
    within(t, Duration::from_secs(60), "charts")?;
    Ok("4 charts match their goldens".into())
}

fn criterion_e_c() -> Check {
    let t = Instant::now();
    for p in ["3", "5"] {
        let v = picss_json(&["hfpss", "--p", p, "--group", "cp", "--mode", "ec", "--cmax", "20", "--emit", "json"])?;
        let pn: u64 = p.parse().unwrap();
        ensure(v["ok"] == true, format!("p={p}: analysis not ok"))?;
        let classes = v["classes"].as_array().ok_or("no classes")?;
        ensure(classes.len() == 20, format!("p={p}: {} classes", classes.len()))?;
        for c in classes {
            let fate = c["fate"].as_str().unwrap_or("");
            if c["c"] == 1 {
                ensure(fate == "bounded-by-kernel" && c["bound"] == pn, format!("p={p} e_1: {fate} {}", c["bound"]))?;
            } else {
                ensure(
                    matches!(fate, "killed-as-target" | "supports-differential") && c["rule"].is_string() && c["citation"] != "",
                    format!("p={p} e_{}: {fate}", c["c"]),
                )?;
            }
        }
        let ks = &v["kernel_sweep"];
        ensure(ks["max_order"].as_u64().is_some_and(|m| m <= pn), format!("p={p} kernel sweep max {}", ks["max_order"]))?;
    }
    within(t, Duration::from_secs(60), "e_c sweep")?;
    Ok("e_c killed for 2 <= c <= 20, e_1 bounded by Z/p, kernel order <= p for all xi != 0".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("picard order C_p", criterion_main_theorem),
        ("maximal subgroup", criterion_maximal),
        ("algebraic Picard", criterion_algebraic),
        ("truncated log", criterion_trunclog),
        ("worked examples", criterion_worked_examples),
        ("first unstable identity", criterion_first_unstable_identity),
        ("beta P^0", criterion_beta_p0),
        ("Jordan types", criterion_jordan_types),
        ("chart goldens", criterion_goldens),
        ("e_c sweep", criterion_e_c),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({:.1?})", i + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({:.1?})", i + 1, t.elapsed());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
