//! The heuristic baseline.
//!
//! Decisions follow a fixed priority, each stage only proposing actions that
//! pass the survival check:
//!
//! 1. if the current cell will be caught by a known blast, take the move with
//!    the shortest escape;
//! 2. walk toward the nearest reachable power-up;
//! 3. lay a bomb next to wood, or with an enemy inside the blast, when a
//!    retreat exists afterwards;
//! 4. walk toward the nearest enemy within [`ENEMY_RADIUS`] steps;
//! 5. with ammo in hand, walk toward wood within [`WOOD_RADIUS`] steps;
//! 6. otherwise pick a random survivable move, preferring cells not visited recently.
//!
//! The survival check is a search over (cell, time) that asks whether some
//! walk starting with the action reaches a cell no pending bomb can reach,
//! without standing in flame on the way. Only bombs within
//! [`THREAT_LOOKAHEAD`] steps of detonating count, which is what lets the
//! agent get cornered by bombs it noticed too late.

use std::collections::VecDeque;

use rand::seq::SliceRandom;

use crate::agents::{AgentBehavior, EpisodeInfo};
use crate::engine::cast_rays;
use crate::observe::Observation;
use crate::rng::{game_rng, GameRng};
use crate::types::{Action, Direction, Item, Move, Pos, Terrain};

pub const POWER_UP_RADIUS: u32 = 10;
pub const ENEMY_RADIUS: u32 = 8;
pub const WOOD_RADIUS: u32 = 4;
/// Bombs further than this many steps from going off are ignored while
/// moving. Laying a bomb still checks the full fuse.
pub const THREAT_LOOKAHEAD: u32 = 3;
const RECENT: usize = 6;
const MAX_HORIZON: u32 = 31;

/// Parsed observation.
struct View<'a> {
    obs: &'a Observation,
    size: usize,
    me: Pos,
    terrain: Vec<Terrain>,
    /// (position, life, strength)
    bombs: Vec<(Pos, u8, u8)>,
    enemies: Vec<Pos>,
    /// Tie-break order: Up, Left, Down, Right as seen from the agent's own
    /// corner, so the four seats behave alike on rotated boards.
    dirs: [Direction; 4],
}

impl<'a> View<'a> {
    fn new(obs: &'a Observation) -> Self {
        let size = obs.board_size();
        let terrain = obs
            .board
            .iter()
            .map(|&code| match Item::from_code(code) {
                Some(Item::Rigid) => Terrain::Rigid,
                Some(Item::Wood) => Terrain::Wood,
                Some(Item::ExtraBomb) => Terrain::PowerUp(crate::types::PowerUp::ExtraBomb),
                Some(Item::IncreaseRange) => Terrain::PowerUp(crate::types::PowerUp::IncreaseRange),
                Some(Item::CanKick) => Terrain::PowerUp(crate::types::PowerUp::CanKick),
                _ => Terrain::Passage,
            })
            .collect();
        let bombs = (0..obs.board.len())
            .filter(|&i| obs.bomb_life[i] > 0)
            .map(|i| (Pos::from_index(i, size), obs.bomb_life[i], obs.bomb_blast_strength[i]))
            .collect();
        let enemy_codes: Vec<u8> = obs.enemy_ids().map(|e| Item::agent(e).code()).collect();
        let enemies = (0..obs.board.len())
            .filter(|&i| enemy_codes.contains(&obs.board[i]))
            .map(|i| Pos::from_index(i, size))
            .collect();
        let me = obs.pos();
        let seat = obs.item(me).agent_id().unwrap_or(0);
        let dirs = [0, 1, 2, 3].map(|i| Direction::ALL[(seat + i) % 4]);
        View { obs, size, me, terrain, bombs, enemies, dirs }
    }

    fn code(&self, pos: Pos) -> u8 {
        self.obs.board[pos.index(self.size)]
    }

    fn has_bomb(&self, pos: Pos) -> bool {
        self.obs.bomb_life[pos.index(self.size)] > 0
    }

    /// Cells an agent can step into: open floor, power-ups, and flames (which may be lethal).
    fn walkable(&self, pos: Pos) -> bool {
        if !pos.in_bounds(self.size) || self.has_bomb(pos) {
            return false;
        }
        matches!(
            Item::from_code(self.code(pos)),
            Some(Item::Passage | Item::Flame | Item::ExtraBomb | Item::IncreaseRange | Item::CanKick)
        )
    }

    fn is_power_up(&self, pos: Pos) -> bool {
        Item::from_code(self.code(pos)).is_some_and(Item::is_power_up)
    }
}

/// For every cell, the future transitions after which it will hold flame.
///
/// Bit `k` of a cell's mask is set when an agent standing there after `k`
/// more steps would burn. Visible bombs explode after `life` steps (earlier
/// when chained) and their flames last `flame_life` steps. Flames already on
/// the board are assumed to survive one more step.
#[derive(Clone, Debug)]
pub struct ThreatMap {
    size: usize,
    masks: Vec<u32>,
    horizon: u32,
}

impl ThreatMap {
    fn build(view: &View, extra: Option<(Pos, u8, u8)>, flame_life: u8, lookahead: u32) -> Self {
        let n = view.size;
        let mut bombs = view.bombs.clone();
        bombs.extend(extra);
        let reach: Vec<Vec<Pos>> = bombs
            .iter()
            .map(|&(pos, _, strength)| {
                let mut cells = Vec::new();
                cast_rays(&view.terrain, n, pos, strength, |c| cells.push(c));
                cells
            })
            .collect();
        let mut fuse: Vec<u32> = bombs.iter().map(|b| b.1 as u32).collect();
        loop {
            let mut changed = false;
            for i in 0..bombs.len() {
                for j in 0..bombs.len() {
                    if fuse[i] < fuse[j] && reach[i].contains(&bombs[j].0) {
                        fuse[j] = fuse[i];
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }

        let mut masks = vec![0u32; n * n];
        let mut horizon = 1;
        for (cells, &t) in reach.iter().zip(&fuse) {
            if t > lookahead {
                continue;
            }
            let last = (t + flame_life as u32 - 1).min(MAX_HORIZON);
            horizon = horizon.max(last);
            let window = (t..=last).fold(0u32, |m, k| m | (1 << k));
            for c in cells {
                masks[c.index(n)] |= window;
            }
        }
        for (idx, &code) in view.obs.board.iter().enumerate() {
            if code == Item::Flame.code() {
                masks[idx] |= 1 << 1;
            }
        }
        ThreatMap { size: n, masks, horizon }
    }

    /// Threats visible in `obs`, assuming the default flame duration.
    pub fn from_observation(obs: &Observation) -> Self {
        ThreatMap::build(&View::new(obs), None, 2, u32::MAX)
    }

    pub fn lethal_at(&self, pos: Pos, k: u32) -> bool {
        k <= MAX_HORIZON && self.masks[pos.index(self.size)] & (1 << k) != 0
    }

    /// True if the cell burns after any step `k` or later.
    pub fn threatened_from(&self, pos: Pos, k: u32) -> bool {
        k <= MAX_HORIZON && self.masks[pos.index(self.size)] >> k != 0
    }
}

/// Earliest step at which a walk that starts by ending up on `start` reaches
/// a permanently safe cell, or `None` if every such walk burns.
fn escape_depth(view: &View, threat: &ThreatMap, start: Pos) -> Option<u32> {
    if threat.lethal_at(start, 1) {
        return None;
    }
    let n = view.size;
    let mut frontier = vec![start];
    let mut seen = vec![u32::MAX; n * n];
    for t in 1..=threat.horizon + 1 {
        if frontier.iter().any(|c| !threat.threatened_from(*c, t + 1)) {
            return Some(t);
        }
        let mut next = Vec::new();
        for &cell in &frontier {
            let stay = std::iter::once(cell);
            let moves = Direction::ALL.iter().map(|d| cell.step(*d)).filter(|c| view.walkable(*c));
            for c in stay.chain(moves) {
                if !threat.lethal_at(c, t + 1) && seen[c.index(n)] != t + 1 {
                    seen[c.index(n)] = t + 1;
                    next.push(c);
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        frontier = next;
    }
    Some(threat.horizon + 1)
}

/// First move of a shortest path over unthreatened cells to a cell satisfying `goal`.
fn first_step(view: &View, threat: &ThreatMap, radius: u32, goal: impl Fn(Pos) -> bool) -> Option<Direction> {
    let n = view.size;
    let mut first: Vec<Option<Direction>> = vec![None; n * n];
    let mut dist = vec![u32::MAX; n * n];
    dist[view.me.index(n)] = 0;
    let mut queue = VecDeque::from([view.me]);
    while let Some(cur) = queue.pop_front() {
        let d = dist[cur.index(n)];
        if d >= radius {
            continue;
        }
        for dir in view.dirs {
            let next = cur.step(dir);
            if !view.walkable(next) || dist[next.index(n)] != u32::MAX || threat.threatened_from(next, 1) {
                continue;
            }
            dist[next.index(n)] = d + 1;
            first[next.index(n)] = if cur == view.me { Some(dir) } else { first[cur.index(n)] };
            if goal(next) {
                return first[next.index(n)];
            }
            queue.push_back(next);
        }
    }
    None
}

pub struct SimpleAgent {
    rng: GameRng,
    bomb_life: u8,
    flame_life: u8,
    recent: VecDeque<Pos>,
}

impl SimpleAgent {
    pub fn new(seed: u64) -> Self {
        SimpleAgent { rng: game_rng(seed), bomb_life: 10, flame_life: 2, recent: VecDeque::with_capacity(RECENT) }
    }

    fn decide(&mut self, obs: &Observation) -> Move {
        let view = View::new(obs);
        let me = view.me;
        let threat = ThreatMap::build(&view, None, self.flame_life, THREAT_LOOKAHEAD);

        let mut safe: Vec<(Move, Pos, u32)> = Vec::with_capacity(5);
        for dir in view.dirs {
            let target = me.step(dir);
            if view.walkable(target) {
                if let Some(depth) = escape_depth(&view, &threat, target) {
                    safe.push((dir.to_move(), target, depth));
                }
            }
        }
        if let Some(depth) = escape_depth(&view, &threat, me) {
            safe.push((Move::Stop, me, depth));
        }

        let can_bomb = obs.ammo > 0 && !view.has_bomb(me);
        let bomb_safe = can_bomb && {
            // A bomb laid now is not ticked on the step it appears.
            let laid = (me, self.bomb_life.saturating_add(1), obs.blast_strength);
            let with_bomb = ThreatMap::build(&view, Some(laid), self.flame_life, u32::MAX);
            escape_depth(&view, &with_bomb, me).is_some()
        };

        if safe.is_empty() {
            // No full escape: at least survive the next step if possible.
            if bomb_safe {
                return Move::Bomb;
            }
            let stay = std::iter::once((Move::Stop, me));
            let steps = view.dirs.iter().map(|d| (d.to_move(), me.step(*d))).filter(|(_, c)| view.walkable(*c));
            return stay
                .chain(steps)
                .find(|(_, c)| !threat.lethal_at(*c, 1))
                .map_or(Move::Stop, |(m, _)| m);
        }

        if threat.threatened_from(me, 1) {
            let best = safe.iter().min_by_key(|(_, _, depth)| *depth).expect("non-empty");
            return best.0;
        }

        let is_safe = |dir: Direction| safe.iter().any(|(m, _, _)| *m == dir.to_move());

        if let Some(dir) = first_step(&view, &threat, POWER_UP_RADIUS, |c| view.is_power_up(c)) {
            if is_safe(dir) {
                return dir.to_move();
            }
        }

        if bomb_safe {
            let wood_adjacent = Direction::ALL
                .iter()
                .map(|d| me.step(*d))
                .any(|c| c.in_bounds(view.size) && view.code(c) == Item::Wood.code());
            let mut enemy_in_range = false;
            cast_rays(&view.terrain, view.size, me, obs.blast_strength, |c| {
                enemy_in_range |= view.enemies.contains(&c);
            });
            if wood_adjacent || enemy_in_range {
                return Move::Bomb;
            }
        }

        let near_enemy = |c: Pos| view.enemies.iter().any(|e| e.manhattan(c) == 1);
        if !near_enemy(me) {
            if let Some(dir) = first_step(&view, &threat, ENEMY_RADIUS, near_enemy) {
                if is_safe(dir) {
                    return dir.to_move();
                }
            }
        }

        if obs.ammo > 0 {
            let by_wood = |c: Pos| {
                !view.has_bomb(c)
                    && Direction::ALL.iter().map(|d| c.step(*d)).any(|w| w.in_bounds(view.size) && view.code(w) == Item::Wood.code())
            };
            if let Some(dir) = first_step(&view, &threat, WOOD_RADIUS, by_wood) {
                if is_safe(dir) && !self.recent.contains(&me.step(dir)) {
                    return dir.to_move();
                }
            }
        }

        let fresh: Vec<Move> = safe
            .iter()
            .filter(|(m, pos, _)| *m != Move::Stop && !self.recent.contains(pos))
            .map(|(m, _, _)| *m)
            .collect();
        let pool: Vec<Move> = if fresh.is_empty() { safe.iter().map(|(m, _, _)| *m).collect() } else { fresh };
        *pool.choose(&mut self.rng).expect("non-empty")
    }
}

impl AgentBehavior for SimpleAgent {
    fn name(&self) -> &'static str {
        "simple"
    }

    fn reset(&mut self, info: &EpisodeInfo) {
        self.rng = game_rng(info.seed);
        self.bomb_life = info.bomb_life;
        self.flame_life = info.flame_life;
        self.recent.clear();
    }

    fn act(&mut self, obs: &Observation) -> Action {
        let mv = self.decide(obs);
        if self.recent.len() == RECENT {
            self.recent.pop_front();
        }
        self.recent.push_back(obs.pos());
        if obs.has_radio() {
            // Broadcast own position, folded into the word range.
            let [row, col] = obs.position;
            Action::with_message(mv, [row % 8 + 1, col % 8 + 1])
        } else {
            Action::new(mv)
        }
    }
}
