// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::process::Command;

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kcore-dp"))
}

fn code(args: &[&str]) -> (i32, String) {
    let out = cli().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn oracle_on_path_reports_exact_labels() {
    let (status, stdout) = code(&["--algorithm", "oracle", "--gen", "path", "--nodes", "5"]);
    assert_eq!(status, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["trials"][0]["output"]["value"], serde_json::json!([1, 1, 1, 1, 1]));
    assert_eq!(v["trials"][0]["metrics"]["max_additive_error"], 0.0);
    assert_eq!(v["environment"]["package"], "kcore-dp");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["--algorithm", "oracle", "--graph", "/no/such/file"]).0, 2);
    assert_eq!(code(&["--algorithm", "oracle", "--gen", "path", "--nodes", "4", "--trials", "0"]).0, 1);
    assert_eq!(code(&["--algorithm", "oracle", "--gen", "path", "--nodes", "4", "--epsilon", "-1"]).0, 1);
    assert_eq!(code(&["--algorithm", "oracle"]).0, 1);
    assert_eq!(code(&["--algorithm", "oracle", "--gen", "nonsense", "--nodes", "4"]).0, 1);
    // a zero-noise step-1 run on a clique is off by exactly one, which is
    // inside its bound
    let ok = [
        "--algorithm", "dp-kcore-additive", "--gen", "complete", "--nodes", "12", "--step", "1",
        "--zero-noise", "--assert-bounds",
    ];
    assert_eq!(code(&ok).0, 0);
    // with a tiny step constant the additive bound is far below the error
    // a single noisy run makes on a large clique
    let tight = [
        "--algorithm", "dp-kcore-additive", "--gen", "complete", "--nodes", "60",
        "--step-const", "0.001", "--trials", "3", "--assert-bounds",
    ];
    assert_eq!(code(&tight).0, 3);
}

#[test]
fn reruns_are_byte_identical_and_csv_has_one_row_per_trial() {
    let args = [
        "--algorithm", "ledp-kcore", "--gen", "gnp:0.1", "--nodes", "80", "--trials", "4",
        "--seed", "11",
    ];
    let (_, a) = code(&args);
    let (_, b) = code(&args);
    assert_eq!(a, b);
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let (status, csv) = code(&csv_args);
    assert_eq!(status, 0);
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn writes_report_to_file_from_edge_list() {
    let dir = std::env::temp_dir().join(format!("kcore-dp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let graph = dir.join("g.txt");
    std::fs::write(&graph, "# triangle with a tail\n10 20\n20 30\n30 10\n30 40\n").unwrap();
    let out = dir.join("report.json");
    let status = cli()
        .args(["--algorithm", "oracle", "--remap", "--out"])
        .arg(&out)
        .arg("--graph")
        .arg(&graph)
        .status()
        .unwrap();
    assert!(status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["truth"]["core_numbers"], serde_json::json!([2, 2, 2, 1]));
    assert_eq!(v["truth"]["original_ids"], serde_json::json!([10, 20, 30, 40]));
    std::fs::remove_dir_all(&dir).unwrap();
}
