use std::process::Command;

use wyhom::*;
use wythoff_homology::polytope::RationalPoint;

fn wyhom(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_wyhom")).args(args).env_remove(CACHE_ENV).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn group(name: &str) -> GroupSpec {
    GroupSpec::resolve(name).unwrap()
}

fn torsion(r: &Report<HomologyReport>, i: usize) -> Vec<u64> {
    r.result.degrees[i].invariants.torsion.clone()
}

#[test]
fn degree_lists() {
    assert_eq!(parse_list("1..4").unwrap(), vec![1, 2, 3, 4]);
    assert_eq!(parse_list("0..=2,7").unwrap(), vec![0, 1, 2, 7]);
    assert!(parse_list("3..1").is_err());
    assert!(parse_list("").is_err());
    assert!(parse_list("a").is_err());
}

#[test]
fn m24_seven_part_vanishes_in_degree_three() {
    let cfg = JobConfig { primes: PrimeFilter::Only(vec![7]), ..JobConfig::default() };
    let r = cmd_group_homology(&cfg, &group("M24"), &[3], None).unwrap();
    assert!(torsion(&r, 0).is_empty());
    assert_eq!(r.result.degrees[0].parts[0].weyl_exponent, Some(3));
}

#[test]
fn m23_degree_five_large_primes() {
    let cfg = JobConfig { primes: PrimeFilter::AtLeast(5), ..JobConfig::default() };
    let r = cmd_group_homology(&cfg, &group("M23"), &[5], None).unwrap();
    assert_eq!(torsion(&r, 0), vec![7]);
    assert_eq!(r.method, "auto(sylow)");
}

#[test]
fn cyclic_formatting() {
    let r = cmd_group_homology(&JobConfig::default(), &group("Z12"), &[3], None).unwrap();
    assert_eq!(torsion(&r, 0), vec![4, 3]);
    let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(json["result"]["degrees"][0]["invariants"]["torsion"], serde_json::json!([4, 3]));
    for key in ["tool", "version", "seed", "method", "convention"] {
        assert!(json.get(key).is_some(), "{key}");
    }
}

#[test]
fn methods_agree_on_small_groups() {
    for name in ["S3", "D4", "Z2xZ2", "A4"] {
        let mut answers = Vec::new();
        for m in [Method::Bar, Method::Small, Method::Auto, Method::Sylow] {
            let cfg = JobConfig { method: m, ..JobConfig::default() };
            let r = cmd_group_homology(&cfg, &group(name), &[1, 2, 3], None).unwrap();
            answers.push(r.result.degrees.iter().map(|d| d.invariants.clone()).collect::<Vec<_>>());
        }
        assert!(answers.windows(2).all(|w| w[0] == w[1]), "{name}: {answers:?}");
    }
    let cfg = JobConfig { method: Method::Wall, ..JobConfig::default() };
    let r = cmd_group_homology(&cfg, &group("S4"), &[1, 2, 3], None).unwrap();
    let texts: Vec<&str> = r.result.degrees.iter().map(|d| d.text.as_str()).collect();
    assert_eq!(texts, ["Z_2", "Z_2", "Z_2 + Z_4 + Z_3"]);
}

#[test]
fn wall_route_for_m12() {
    // trivial stabilizers on flags of five points
    assert_eq!(default_types(&group("M12").group).unwrap(), vec![0, 1, 2, 3, 4]);
    let cfg = JobConfig { method: Method::Wall, ..JobConfig::default() };
    let r = cmd_group_homology(&cfg, &group("M12"), &[2, 3], None).unwrap();
    assert_eq!(torsion(&r, 0), vec![2]);
    assert_eq!(torsion(&r, 1), vec![2, 8, 3]);
}

#[test]
fn ppart_grid() {
    let specs = vec![group("M11"), group("M21")];
    let t = cmd_ppart_table(&JobConfig::default(), &specs, &[5, 7]).unwrap();
    let patterns: Vec<&str> = t.result.cells.iter().map(|c| c.pattern.as_str()).collect();
    assert_eq!(patterns, ["8k-1", "-", "4k-1", "6k-1"]);
    assert_eq!(t.result.cells[2].first_degrees, vec![3, 7]);
    assert_eq!(t.result.grid[1], "p=5     8k-1    4k-1");
}

#[test]
fn m24_wythoff_report() {
    let r = cmd_wythoff_report(&JobConfig::default(), &group("M24"), None, &[0, 1, 2, 3, 4], 1).unwrap().result;
    assert_eq!(r.cell_counts, ["5100480", "58655520"]);
    assert_eq!(r.vertex_degree.as_deref(), Some("23"));
    assert_eq!(r.stabilizer_orders[0], ["48"]);
    assert_eq!(r.stabilizer_orders[1], ["96", "96", "96", "96", "32", "6"]);
}

#[test]
fn edge_degree_of_permutahedron() {
    let p = RationalPoint::from_ints(&[1, 2, 3, 4]);
    let cfg = JobConfig { threads: 2, ..JobConfig::default() };
    let r = cmd_edge_degree(&cfg, &group("S4"), &p, 5, true).unwrap();
    assert_eq!((r.result.points, r.result.degree, r.result.edges.as_str()), (24, 3, "36"));
    let single = cmd_edge_degree(&JobConfig::default(), &group("S4"), &p, 5, true).unwrap();
    assert_eq!(single.to_json(), r.to_json());
    let csv = r.to_csv().unwrap();
    assert_eq!(csv.lines().count(), 4);
    assert!(cmd_edge_degree(&cfg, &group("S4"), &p, 24, false).is_err());
}

#[test]
fn resolution_checks() {
    for m in [Method::Small, Method::Bar, Method::Wall] {
        let cfg = JobConfig { method: m, ..JobConfig::default() };
        let r = cmd_resolution(&cfg, &group("S3"), 3, None).unwrap().result;
        assert!(r.boundaries_ok);
        let texts: Vec<&str> = r.homology.iter().map(|d| d.text.as_str()).collect();
        assert_eq!(texts, ["Z_2", "0", "Z_2 + Z_3"], "{m:?}");
    }
}

#[test]
fn selftest_passes() {
    let r = cmd_selftest(&JobConfig::default()).unwrap();
    assert!(r.result.passed);
    assert_eq!(r.result.oracle.len(), 24);
}

#[test]
fn binary_output_is_deterministic() {
    let args = ["homology", "--group", "A5", "--degrees", "1..3", "--seed", "7"];
    let (c1, a, _) = wyhom(&args);
    let (c2, b, _) = wyhom(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    assert!(a.contains("\"seed\": 7"));
}

#[test]
fn cache_does_not_change_output() {
    let dir = std::env::temp_dir().join(format!("wyhom-cache-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let d = dir.to_str().unwrap();
    let args = ["resolution", "--group", "D4", "--degree", "3", "--method", "small"];
    let (_, plain, _) = wyhom(&args);
    let cached: Vec<_> = (0..2).map(|_| wyhom(&[&args[..], &["--cache-dir", d]].concat()).1).collect();
    assert!(std::fs::read_dir(&dir).unwrap().count() > 0);
    assert_eq!(cached[0], plain);
    assert_eq!(cached[1], plain);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    let (code, _, err) = wyhom(&["homology", "--group", "M11", "--degrees", "4", "--method", "bar"]);
    assert_eq!(code, 2);
    assert!(err.contains("cap"), "{err}");
    assert_eq!(wyhom(&["homology", "--group", "nope"]).0, 1);
    assert_eq!(wyhom(&["frobnicate"]).0, 1);
    assert_eq!(wyhom(&["homology", "--group", "S3", "--primes", "4"]).0, 1);
    assert_eq!(wyhom(&["--version"]).0, 0);
}

#[test]
fn group_files_and_csv() {
    let path = std::env::temp_dir().join(format!("wyhom-group-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"degree": 4, "generators": [[2, 3, 4, 1]]}"#).unwrap();
    let (code, out, _) = wyhom(&["homology", "--group", path.to_str().unwrap(), "--degrees", "1..2", "--format", "csv"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "group,degree,torsion,free_rank,text");
    assert!(lines[1].ends_with(",1,4,0,Z_4"), "{}", lines[1]);
    assert!(lines[2].ends_with(",2,,0,0"), "{}", lines[2]);
}
