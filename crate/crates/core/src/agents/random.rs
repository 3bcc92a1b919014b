use rand::Rng;

use crate::agents::{AgentBehavior, EpisodeInfo};
use crate::observe::Observation;
use crate::rng::{game_rng, GameRng};
use crate::types::{Action, Move};

/// Uniform over the six moves; with radio, also a uniform message in [1, 8]².
pub struct RandomAgent {
    rng: GameRng,
}

impl RandomAgent {
    pub fn new(seed: u64) -> Self {
        RandomAgent { rng: game_rng(seed) }
    }
}

impl AgentBehavior for RandomAgent {
    fn name(&self) -> &'static str {
        "random"
    }

    fn reset(&mut self, info: &EpisodeInfo) {
        self.rng = game_rng(info.seed);
    }

    fn act(&mut self, obs: &Observation) -> Action {
        let mv = Move::ALL[self.rng.gen_range(0..Move::ALL.len())];
        if obs.has_radio() {
            Action::with_message(mv, [self.rng.gen_range(1..=8), self.rng.gen_range(1..=8)])
        } else {
            Action::new(mv)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boardgen::generate;
    use crate::observe::observe;
    use crate::GameConfig;

    #[test]
    fn move_frequencies_are_uniform() {
        let s = generate(&GameConfig::default().with_seed(1)).unwrap();
        let obs = observe(&s, 0, &s.config);
        let mut agent = RandomAgent::new(42);
        let mut counts = [0usize; 6];
        let samples = 60_000;
        for _ in 0..samples {
            counts[agent.act(&obs).mv.code() as usize] += 1;
        }
        for c in counts {
            let freq = c as f64 / samples as f64;
            assert!((freq - 1.0 / 6.0).abs() <= 0.01, "{counts:?}");
        }
        // chi-square with 5 dof, 0.999 quantile ~20.5
        let expected = samples as f64 / 6.0;
        let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        assert!(chi2 < 20.5, "chi2 {chi2}");
    }

    #[test]
    fn seeded_sequences_repeat() {
        let s = generate(&GameConfig::default().with_seed(1)).unwrap();
        let obs = observe(&s, 0, &s.config);
        let run = |seed| {
            let mut a = RandomAgent::new(seed);
            (0..50).map(|_| a.act(&obs)).collect::<Vec<_>>()
        };
        assert_eq!(run(7), run(7));
        assert_ne!(run(7), run(8));
    }

    #[test]
    fn message_only_with_radio() {
        let ffa = generate(&GameConfig::ffa().with_seed(1)).unwrap();
        let radio = generate(&GameConfig::team_radio().with_seed(1)).unwrap();
        let mut a = RandomAgent::new(3);
        for _ in 0..100 {
            assert_eq!(a.act(&observe(&ffa, 0, &ffa.config)).message, None);
            let words = a.act(&observe(&radio, 0, &radio.config)).message.unwrap();
            assert!(words.iter().all(|w| (1..=8).contains(w)));
        }
    }
}
