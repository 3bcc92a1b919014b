use pommer::runner::{run_match, MatchConfig, Preset};

#[test]
fn simple_beats_random() {
    let mut config = MatchConfig::builtin(Preset::Ffa, ["random", "simple", "random", "random"]).unwrap();
    config.games = 200;
    config.seed = 11;
    let stats = run_match(&config).unwrap().stats();
    let rates: Vec<f64> = stats.seats.iter().map(|s| s.win_rate).collect();
    assert!((0..4).filter(|&i| i != 1).all(|i| rates[1] > rates[i]), "{rates:?}");
}

#[test]
fn identical_agents_win_equally_often_from_every_seat() {
    let mut config = MatchConfig::builtin(Preset::Ffa, ["simple"; 4]).unwrap();
    config.games = 2000;
    config.seed = 3;
    let stats = run_match(&config).unwrap().stats();
    let rates: Vec<f64> = stats.seats.iter().map(|s| s.win_rate).collect();
    let gap = rates.iter().cloned().fold(f64::MIN, f64::max) - rates.iter().cloned().fold(f64::MAX, f64::min);
    assert!(gap < 0.03, "per-seat win rates {rates:?}");
}
