use std::io::{BufRead, BufReader};
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn pommer(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pommer"));
    cmd.args(args);
    cmd
}

fn run(args: &[&str]) -> Output {
    pommer(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn replays(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut files: Vec<_> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).filter(|p| p.extension().is_some_and(|x| x == "jsonl")).collect();
    files.sort();
    files
}

#[test]
fn usage_errors_exit_with_1() {
    assert_eq!(code(&run(&[])), 1);
    assert_eq!(code(&run(&["run", "--preset", "chess"])), 1);
    assert_eq!(code(&run(&["run", "--agents", "simple,simple"])), 1);
    assert_eq!(code(&run(&["run", "--agents", "simple,simple,simple,ghost"])), 1);
    assert_eq!(code(&run(&["serve", "--agent", "ghost"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn record_verify_and_summarize() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = run(&["run", "--preset", "team", "--agents", "simple,random,simple,random", "--episodes", "3", "--seed", "5", "--record", d]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("episodes: 3"));
    let files = replays(dir.path());
    assert_eq!(files.len(), 3);
    assert!(dir.path().join("stats.json").exists());

    for f in &files {
        assert_eq!(code(&run(&["verify", "--replay", f.to_str().unwrap()])), 0);
    }

    let stats = run(&["stats", "--dir", d]);
    assert_eq!(code(&stats), 0);
    assert_eq!(stats.stdout, out.stdout);
}

#[test]
fn tampered_replay_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(code(&run(&["run", "--agents", "random,random,random,random", "--seed", "9", "--record", d])), 0);
    let file = &replays(dir.path())[0];
    let text = std::fs::read_to_string(file).unwrap();

    // seat 0 lays a bomb on the first step instead of what it recorded
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let at = lines[1].find(r#"[{"action":"#).unwrap() + r#"[{"action":"#.len();
    lines[1].replace_range(at..at + 1, "5");
    std::fs::write(file, lines.join("\n") + "\n").unwrap();
    assert_eq!(code(&run(&["verify", "--replay", file.to_str().unwrap()])), 2);

    let versioned = text.replacen(r#""format_version":1"#, r#""format_version":99"#, 1);
    std::fs::write(file, versioned).unwrap();
    assert_eq!(code(&run(&["verify", "--replay", file.to_str().unwrap()])), 2);

    assert_eq!(code(&run(&["verify", "--replay", "/nonexistent/replay.jsonl"])), 3);
}

#[test]
fn environment_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let out = pommer(&["run"])
        .env("POMMER_AGENTS", "random,random,random,random")
        .env("POMMER_EPISODES", "2")
        .env("POMMER_RECORD", dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(replays(dir.path()).len(), 2);
}

#[test]
fn empty_stats_directory_is_fine() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["stats", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("episodes: 0"));
}

#[test]
fn served_agent_plays_a_match() {
    let mut server = pommer(&["serve", "--agent", "simple", "--port", "0"]).stdout(Stdio::piped()).spawn().unwrap();
    let mut line = String::new();
    BufReader::new(server.stdout.take().unwrap()).read_line(&mut line).unwrap();
    let url = line.trim().rsplit(' ').next().unwrap().to_string();
    assert!(url.starts_with("http://127.0.0.1:"), "{line}");

    let agents = format!("simple,{url},simple,random");
    let out = run(&["run", "--agents", &agents, "--seed", "4", "--timeout-ms", "2000"]);
    server.kill().unwrap();
    let _ = server.wait();
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}
