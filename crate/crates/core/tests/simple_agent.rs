mod common;

use pommer::agents::{AgentBehavior, EpisodeInfo, SimpleAgent};
use pommer::engine::{Bomb, Flame, GameState};
use pommer::observe::observe;
use pommer::rng::game_rng;
use pommer::{Action, GameConfig, Mode, Move, Pos, PowerUp, Terrain};
use proptest::prelude::*;

use common::{oracle_blast, random_state};

/// Legend: `A` the agent under test (seat 0), `E` an enemy standing still,
/// `#` rigid, `w` wood, `e` extra-bomb power-up, `f` flame (life 2),
/// `B`/`C`/`D` bombs about to explode with strength 2/3/4, `b` a strength-3
/// bomb with five steps left. `k` marks the agent as able to kick.
const CORPUS: [&[&str]; 25] = [
    &["#######", "#######", "#######", "#BA...#", "#######", "#######", "#######"],
    &["#######", "#######", "#######", "#...AB#", "#######", "#######", "#######"],
    &["###.###", "###B###", "###A###", "###.###", "###.###", "###.###", "###.###"],
    &["###.###", "###.###", "###.###", "###A###", "###B###", "###.###", "#######"],
    &["#######", "#######", "###.###", "##CA..#", "#######", "#######", "#######"],
    &["#######", "#######", "#######", "##CA..#", "###.###", "#######", "#######"],
    &[".......", ".......", "..B....", "...A...", ".......", ".......", "......."],
    &["#######", "#######", "#######", "#BA.f.#", "#######", "#######", "#######"],
    &["#######", "#######", "#######", "#BAf..#", "#######", "#######", "#######"],
    &["#######", "#######", "#######", "#Bb.A.#", "#######", "#######", "#######"],
    &["###B###", "###b###", "###.###", "###A###", "###.###", "#######", "#######"],
    &["#######", "#######", "#######", "#BwA..#", "#######", "#######", "#######"],
    &[".......", "...B...", "...e...", "...A...", ".......", ".......", "......."],
    &[".......", ".......", "...e...", "...A...", ".......", ".......", "......."],
    &["#######", "#######", "#######", "#BA.E.#", "#######", "#######", "#######"],
    &["#######", "#######", "##.####", "#BAE..#", "#######", "#######", "#######"],
    &["#######", "#######", "#######", "#B.A.B#", "#######", "#######", "#######"],
    &[".......", "...B...", ".......", "..BA...", ".......", ".......", "......."],
    &[".......", ".......", ".......", "D..A...", ".......", ".......", "......."],
    &["k......", ".......", ".......", "...AB..", ".......", ".......", "......."],
    &["#######", "#######", "#######", "#..A###", "#.#####", "#######", "#######"],
    &["#######", "#######", "#######", "##.A.b#", "#######", "#######", "#######"],
    &[".......", ".......", ".......", "..BAf..", ".......", ".......", "......."],
    &["###.###", "###.###", "#######", "#C.A.##", "#######", "#######", "#######"],
    &["#.#####", "#.#####", "#w#####", "#A#####", "#B#####", "#######", "#######"],
];

fn build(map: &[&str]) -> GameState {
    let size = map.len();
    let config = GameConfig { board_size: size, num_rigid: 0, num_wood: 0, ..GameConfig::default() };
    let mut s = GameState::empty(config);
    for agent in s.agents.iter_mut().skip(1) {
        agent.alive = false;
    }
    let mut enemies = 1..4;
    for (r, row) in map.iter().enumerate() {
        for (c, ch) in row.chars().enumerate() {
            let p = Pos::new(r as i32, c as i32);
            let idx = p.index(size);
            let bomb = |life: u8, strength: u8| Bomb { position: p, owner: 1, life, blast_strength: strength, velocity: None };
            match ch {
                '#' => s.terrain[idx] = Terrain::Rigid,
                'w' => s.terrain[idx] = Terrain::Wood,
                'e' => s.terrain[idx] = Terrain::PowerUp(PowerUp::ExtraBomb),
                'f' => s.flames.push(Flame { position: p, life: 2, reveal: None }),
                'A' => s.agents[0].position = p,
                'E' => {
                    let id = enemies.next().expect("at most three enemies");
                    s.agents[id].alive = true;
                    s.agents[id].position = p;
                }
                'B' => s.bombs.push(bomb(1, 2)),
                'C' => s.bombs.push(bomb(1, 3)),
                'D' => s.bombs.push(bomb(1, 4)),
                'b' => s.bombs.push(bomb(5, 3)),
                'k' => s.agents[0].can_kick = true,
                _ => {}
            }
        }
    }
    // enemies parked on their corners are out of play
    for agent in s.agents.iter_mut().skip(1).filter(|a| !a.alive) {
        agent.position = Pos::new(0, 0);
    }
    // the owner's ammo accounting is irrelevant here; keep it consistent anyway
    s.agents[1].max_ammo += s.bombs.len() as u8;
    s.render();
    s
}

/// Ground truth for one step: does seat 0 survive playing `mv` while everyone else stands still?
fn survives(s: &GameState, mv: Move) -> bool {
    let mut inputs = vec![Some(Action::STOP); 4];
    inputs[0] = Some(Action::new(mv));
    s.step(&inputs).expect("corpus states are playable").agents[0].alive
}

fn simple_move(s: &GameState) -> Move {
    let mut agent = SimpleAgent::new(0);
    agent.reset(&EpisodeInfo::new(0, Mode::Ffa, 17));
    agent.act(&observe(s, 0, &s.config)).mv
}

#[test]
fn corpus_moves_survive_whenever_possible() {
    let mut doomed = 0;
    for (i, map) in CORPUS.iter().enumerate() {
        let s = build(map);
        let safe: Vec<Move> = Move::ALL.into_iter().filter(|m| survives(&s, *m)).collect();
        let chosen = simple_move(&s);
        if safe.is_empty() {
            doomed += 1;
            continue;
        }
        assert!(safe.contains(&chosen), "position {i}: chose {chosen:?}, survivable {safe:?}\n{}", map.join("\n"));
    }
    // positions 8 and 24 leave no way out
    assert_eq!(doomed, 2);
}

#[test]
fn corridor_escape_leaves_the_ray() {
    // bomb to the left on the only axis: the agent has to step right
    assert_eq!(simple_move(&build(CORPUS[0])), Move::Right);
    assert_eq!(simple_move(&build(CORPUS[1])), Move::Left);
    assert_eq!(simple_move(&build(CORPUS[2])), Move::Down);
    assert_eq!(simple_move(&build(CORPUS[3])), Move::Up);
    // strength 3 reaches two cells: the side opening is the only way out
    assert_eq!(simple_move(&build(CORPUS[4])), Move::Up);
    assert_eq!(simple_move(&build(CORPUS[5])), Move::Down);
    // chained bomb extends the danger along the corridor
    assert_eq!(simple_move(&build(CORPUS[9])), Move::Right);
}

#[test]
fn bombs_next_to_wood_when_a_retreat_exists() {
    let s = build(&[".......", ".......", ".......", "...Aw..", ".......", ".......", "......."]);
    assert_eq!(simple_move(&s), Move::Bomb);
}

#[test]
fn no_bomb_without_a_retreat() {
    // a one-cell pocket: laying here would be suicide
    let s = build(&["#######", "#######", "#######", "##wA###", "#######", "#######", "#######"]);
    assert_ne!(simple_move(&s), Move::Bomb);
}

#[test]
fn radio_messages_stay_in_range() {
    let s = pommer::boardgen::generate(&GameConfig::team_radio().with_seed(4)).unwrap();
    let mut agent = SimpleAgent::new(1);
    for id in 0..4 {
        agent.reset(&EpisodeInfo::new(id, Mode::TeamRadio, 5));
        let words = agent.act(&observe(&s, id, &s.config)).message.expect("radio on");
        assert!(words.iter().all(|w| (1..=8).contains(w)));
    }
}

/// Cells that will hold flame after the next step, from the observation's point
/// of view: flames on the board now, and everything a life-1 bomb reaches.
fn one_step_lethal(s: &GameState) -> Vec<Pos> {
    let imminent: Vec<usize> = (0..s.bombs.len()).filter(|&b| s.bombs[b].life == 1).collect();
    let (mut cells, _) = oracle_blast(s, &imminent);
    cells.extend(s.flames.iter().map(|f| f.position));
    cells.into_iter().collect()
}

fn destination(s: &GameState, id: usize, mv: Move) -> Pos {
    let me = s.agents[id].position;
    let Some(dir) = mv.direction() else { return me };
    let t = me.step(dir);
    // an occupied cell bounces the mover back when its occupant stays put
    let blocked = !t.in_bounds(s.size())
        || s.terrain_at(t).is_wall()
        || s.bombs.iter().any(|b| b.position == t)
        || s.agents.iter().any(|a| a.alive && a.position == t);
    if blocked {
        me
    } else {
        t
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn never_walks_into_known_fire(seed in any::<u64>(), seat in 0usize..4) {
        let mut rng = game_rng(seed);
        let mut s = random_state(&mut rng, 7, 8);
        for b in &mut s.bombs {
            b.life = b.life.max(1);
        }
        prop_assume!(s.agents[seat].alive);
        let lethal = one_step_lethal(&s);
        let safe_exists = Move::ALL.iter().any(|m| !lethal.contains(&destination(&s, seat, *m)));
        let mut agent = SimpleAgent::new(seed);
        agent.reset(&EpisodeInfo::new(seat, Mode::Ffa, seed));
        let obs = observe(&s, seat, &s.config);
        let before = obs.clone();
        let chosen = agent.act(&obs).mv;
        prop_assert_eq!(obs, before);
        if safe_exists {
            prop_assert!(!lethal.contains(&destination(&s, seat, chosen)), "chose {:?}", chosen);
        }
    }
}

