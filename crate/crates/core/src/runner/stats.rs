use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::engine::ResultKind;
use crate::runner::replay::ReplayHeader;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SeatStats {
    pub wins: u32,
    pub ties: u32,
    pub losses: u32,
    pub win_rate: f64,
    pub tie_rate: f64,
    pub loss_rate: f64,
    pub substitutions: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StatsSummary {
    pub episodes: u32,
    pub ties: u32,
    pub tie_rate: f64,
    pub mean_length: f64,
    pub seats: [SeatStats; 4],
}

/// Aggregates per-seat outcomes. A seat wins when it is listed among the
/// winners, so both members of a winning team are credited.
pub fn stats_report<'a>(headers: impl IntoIterator<Item = &'a ReplayHeader>) -> StatsSummary {
    let mut s = StatsSummary::default();
    let mut total_steps = 0u64;
    for h in headers {
        s.episodes += 1;
        total_steps += u64::from(h.steps);
        let tie = h.result.kind == ResultKind::Tie;
        if tie {
            s.ties += 1;
        }
        for (seat, stats) in s.seats.iter_mut().enumerate() {
            if tie {
                stats.ties += 1;
            } else if h.result.winners.contains(&seat) {
                stats.wins += 1;
            } else {
                stats.losses += 1;
            }
            stats.substitutions += h.substitutions[seat];
        }
    }
    if s.episodes > 0 {
        let n = f64::from(s.episodes);
        s.tie_rate = f64::from(s.ties) / n;
        s.mean_length = total_steps as f64 / n;
        for stats in &mut s.seats {
            stats.win_rate = f64::from(stats.wins) / n;
            stats.tie_rate = f64::from(stats.ties) / n;
            stats.loss_rate = f64::from(stats.losses) / n;
        }
    }
    s
}

impl StatsSummary {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "episodes: {}  ties: {} ({:.1}%)  mean length: {:.1}", self.episodes, self.ties, 100.0 * self.tie_rate, self.mean_length);
        let _ = writeln!(out, "{:<6}{:>7}{:>7}{:>7}{:>9}{:>9}{:>7}", "seat", "wins", "ties", "losses", "win %", "tie %", "subs");
        for (seat, st) in self.seats.iter().enumerate() {
            let _ = writeln!(
                out,
                "{:<6}{:>7}{:>7}{:>7}{:>9.1}{:>9.1}{:>7}",
                seat,
                st.wins,
                st.ties,
                st.losses,
                100.0 * st.win_rate,
                100.0 * st.tie_rate,
                st.substitutions
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}
