//! Reference implementations the engine is checked against. They are written
//! for clarity over speed and share no code with the engine beyond plain types.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};
use std::time::Duration;

use axum::routing::post;
use axum::Router;

use pommer::engine::{Bomb, Flame, GameState};
use pommer::{GameConfig, Item, Move, Pos, PowerUp, Terrain};
use rand::Rng;

pub const DIRS: [(i32, i32); 4] = [(-1, 0), (0, -1), (1, 0), (0, 1)];

pub fn in_board(size: usize, r: i32, c: i32) -> bool {
    r >= 0 && c >= 0 && (r as usize) < size && (c as usize) < size
}

/// Cells one bomb covers, straight from the rules: the bomb cell, then up to
/// `strength - 1` cells per direction, halting before rigid walls and the
/// edge, and halting on wood or a power-up after covering it.
pub fn oracle_rays(state: &GameState, at: Pos, strength: u8) -> BTreeSet<Pos> {
    let n = state.size();
    let mut out = BTreeSet::from([at]);
    for (dr, dc) in DIRS {
        for k in 1..strength as i32 {
            let (r, c) = (at.row + dr * k, at.col + dc * k);
            if !in_board(n, r, c) {
                break;
            }
            let cell = Pos::new(r, c);
            match state.terrain[(r as usize) * n + c as usize] {
                Terrain::Rigid => break,
                Terrain::Wood | Terrain::PowerUp(_) => {
                    out.insert(cell);
                    break;
                }
                Terrain::Passage => {
                    out.insert(cell);
                }
            }
        }
    }
    out
}

/// Brute-force chaining: keep recomputing the union of rays until no new
/// bomb is caught.
pub fn oracle_blast(state: &GameState, detonating: &[usize]) -> (BTreeSet<Pos>, BTreeSet<usize>) {
    let mut exploding: BTreeSet<usize> = detonating.iter().copied().collect();
    loop {
        let mut cells = BTreeSet::new();
        for &b in &exploding {
            let bomb = &state.bombs[b];
            cells.extend(oracle_rays(state, bomb.position, bomb.blast_strength));
        }
        let caught: BTreeSet<usize> =
            (0..state.bombs.len()).filter(|&b| cells.contains(&state.bombs[b].position)).collect();
        if caught.is_subset(&exploding) {
            return (cells, exploding);
        }
        exploding.extend(caught);
    }
}

pub fn direction_of(mv: Move) -> Option<(i32, i32)> {
    match mv {
        Move::Up => Some(DIRS[0]),
        Move::Left => Some(DIRS[1]),
        Move::Down => Some(DIRS[2]),
        Move::Right => Some(DIRS[3]),
        _ => None,
    }
}

/// Final positions and kicked bomb indices.
///
/// The set of agents that stay is the least set that contains every
/// non-mover and every statically conflicting mover, and that contains any
/// mover whose target is occupied by a member. Computed literally as the
/// intersection of all such closed sets.
pub fn oracle_movement(state: &GameState, moves: &[Move; 4]) -> ([Pos; 4], BTreeSet<usize>) {
    let n = state.size();
    let bomb_at = |p: Pos| state.bombs.iter().position(|b| b.position == p);
    let agent_at = |p: Pos| state.agents.iter().any(|a| a.alive && a.position == p);
    let alive: Vec<usize> = (0..4).filter(|&i| state.agents[i].alive).collect();

    // (target, kick: Option<(bomb, beyond)>) for valid movers
    let mut intent: [Option<(Pos, Option<(usize, Pos)>)>; 4] = [None; 4];
    for &i in &alive {
        let Some((dr, dc)) = direction_of(moves[i]) else { continue };
        let p = state.agents[i].position;
        let (r, c) = (p.row + dr, p.col + dc);
        if !in_board(n, r, c) {
            continue;
        }
        let t = Pos::new(r, c);
        if matches!(state.terrain[t.index(n)], Terrain::Rigid | Terrain::Wood) {
            continue;
        }
        let kick = match bomb_at(t) {
            None => None,
            Some(b) => {
                let (br, bc) = (r + dr, c + dc);
                let ok = state.agents[i].can_kick
                    && in_board(n, br, bc)
                    && state.terrain[Pos::new(br, bc).index(n)] == Terrain::Passage
                    && bomb_at(Pos::new(br, bc)).is_none()
                    && !agent_at(Pos::new(br, bc));
                if !ok {
                    continue;
                }
                Some((b, Pos::new(br, bc)))
            }
        };
        intent[i] = Some((t, kick));
    }

    let mut base: BTreeSet<usize> = alive.iter().copied().filter(|&i| intent[i].is_none()).collect();
    for &i in &alive {
        for &j in &alive {
            if i == j {
                continue;
            }
            let (Some((ti, ki)), Some((tj, kj))) = (intent[i], intent[j]) else { continue };
            let pi = state.agents[i].position;
            let pj = state.agents[j].position;
            let kick_clash = matches!((ki, kj), (Some((_, x)), Some((_, y))) if x == y);
            if ti == tj || (ti == pj && tj == pi) || kick_clash {
                base.insert(i);
            }
        }
    }

    let closed = |x: &BTreeSet<usize>| {
        base.is_subset(x)
            && alive.iter().filter(|i| !x.contains(i)).all(|&i| {
                let (t, _) = intent[i].expect("outside base means a mover");
                x.iter().all(|&j| state.agents[j].position != t)
            })
    };
    let mut stayers: BTreeSet<usize> = alive.iter().copied().collect();
    for mask in 0u32..(1 << alive.len()) {
        let x: BTreeSet<usize> = alive.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, &i)| i).collect();
        if closed(&x) {
            stayers = stayers.intersection(&x).copied().collect();
        }
    }

    let mut positions = [Pos::new(0, 0); 4];
    let mut kicked = BTreeSet::new();
    for i in 0..4 {
        positions[i] = state.agents[i].position;
        if state.agents[i].alive && !stayers.contains(&i) {
            let (t, kick) = intent[i].expect("mover");
            positions[i] = t;
            if let Some((b, _)) = kick {
                kicked.insert(b);
            }
        }
    }
    (positions, kicked)
}

/// A random mid-game state on a `size` board: random terrain, up to
/// `max_bombs` bombs with random lives and strengths, a few flames, and four
/// agents on distinct cells (some possibly dead).
pub fn random_state(rng: &mut impl Rng, size: usize, max_bombs: usize) -> GameState {
    let config = GameConfig { board_size: size, num_rigid: 0, num_wood: 0, ..GameConfig::default() };
    let mut s = GameState::empty(config);
    let n = size;
    for idx in 0..n * n {
        s.terrain[idx] = match rng.gen_range(0..10) {
            0 | 1 => Terrain::Rigid,
            2 | 3 => Terrain::Wood,
            4 => Terrain::PowerUp(PowerUp::ALL[rng.gen_range(0..3)]),
            _ => Terrain::Passage,
        };
    }
    let mut free: Vec<Pos> = (0..n * n).map(|i| Pos::from_index(i, n)).collect();
    shuffle(rng, &mut free);
    for agent in s.agents.iter_mut() {
        let p = free.pop().expect("board has room");
        s.terrain[p.index(n)] = Terrain::Passage;
        agent.position = p;
        agent.alive = rng.gen_bool(0.85);
        agent.can_kick = rng.gen_bool(0.5);
        agent.blast_strength = rng.gen_range(2..=4);
        agent.max_ammo = rng.gen_range(1..=3);
        agent.ammo = agent.max_ammo;
    }
    let bombs = rng.gen_range(0..=max_bombs);
    for _ in 0..bombs {
        // bombs may share a cell with an agent (a freshly laid bomb)
        let p = if rng.gen_bool(0.2) {
            s.agents[rng.gen_range(0..4)].position
        } else {
            match free.pop() {
                Some(p) => p,
                None => break,
            }
        };
        if s.bombs.iter().any(|b| b.position == p) {
            continue;
        }
        s.terrain[p.index(n)] = Terrain::Passage;
        let owner = rng.gen_range(0..4);
        if s.agents[owner].ammo == 0 {
            s.agents[owner].max_ammo += 1;
        } else {
            s.agents[owner].ammo -= 1;
        }
        s.bombs.push(Bomb { position: p, owner, life: rng.gen_range(0..=9), blast_strength: rng.gen_range(2..=5), velocity: None });
    }
    for _ in 0..rng.gen_range(0..3) {
        if let Some(p) = free.pop() {
            s.terrain[p.index(n)] = Terrain::Passage;
            s.flames.push(Flame { position: p, life: rng.gen_range(1..=2), reveal: None });
        }
    }
    // agents standing in flame would already be dead
    for agent in s.agents.iter_mut() {
        if s.flames.iter().any(|f| f.position == agent.position) {
            agent.alive = false;
        }
    }
    s.render();
    s
}

pub fn shuffle<T>(rng: &mut impl Rng, v: &mut [T]) {
    for i in (1..v.len()).rev() {
        v.swap(i, rng.gen_range(0..=i));
    }
}

/// Independent restatement of the state invariants. Returns the first violation.
pub fn conservation_violation(before: Option<&GameState>, s: &GameState) -> Option<String> {
    let n = s.size();
    for a in &s.agents {
        let owned = s.bombs.iter().filter(|b| b.owner == a.id).count() as u32;
        if u32::from(a.ammo) + owned != u32::from(a.max_ammo) {
            return Some(format!("agent {} ammo {} + bombs {} != max {}", a.id, a.ammo, owned, a.max_ammo));
        }
    }
    let mut cells = BTreeSet::new();
    for b in &s.bombs {
        if !cells.insert(b.position) {
            return Some(format!("two bombs on {:?}", b.position));
        }
    }
    if s.grid.len() != n * n {
        return Some("grid size".into());
    }
    for (idx, item) in s.grid.iter().enumerate() {
        if Item::from_code(item.code()) != Some(*item) || *item == Item::Fog {
            return Some(format!("cell {idx} holds invalid code {}", item.code()));
        }
        let p = Pos::from_index(idx, n);
        let expected = if let Some(a) = s.agents.iter().find(|a| a.alive && a.position == p) {
            Item::agent(a.id)
        } else if s.flames.iter().any(|f| f.position == p) {
            Item::Flame
        } else if s.bombs.iter().any(|b| b.position == p) {
            Item::Bomb
        } else {
            s.terrain[idx].item()
        };
        if *item != expected {
            return Some(format!("cell {p:?} renders {:?}, expected {:?}", item, expected));
        }
    }
    if let Some(prev) = before {
        for (a, b) in prev.agents.iter().zip(&s.agents) {
            if !a.alive && b.alive {
                return Some(format!("agent {} came back to life", a.id));
            }
        }
    }
    None
}

pub fn corners(n: usize) -> [Pos; 4] {
    let far = n as i32 - 1;
    [Pos::new(0, 0), Pos::new(far, 0), Pos::new(far, far), Pos::new(0, far)]
}

/// Every failed board property, checked from first principles.
pub fn board_problems(s: &GameState) -> Vec<String> {
    let n = s.size();
    let cfg = &s.config;
    let at = |r: i32, c: i32| s.terrain[r as usize * n + c as usize];
    let mut problems = Vec::new();

    for r in 0..n as i32 {
        for c in 0..n as i32 {
            let (rr, rc) = (c, n as i32 - 1 - r);
            let same = matches!(
                (at(r, c), at(rr, rc)),
                (Terrain::Rigid, Terrain::Rigid) | (Terrain::Wood, Terrain::Wood) | (Terrain::Passage, Terrain::Passage)
            );
            if !same {
                problems.push(format!("asymmetric at ({r},{c})"));
            }
        }
    }

    for (id, corner) in corners(n).into_iter().enumerate() {
        if s.agents[id].position != corner || !s.agents[id].alive {
            problems.push(format!("agent {id} not on its corner"));
        }
        let pocket = [corner, Pos::new(corner.row, if corner.col == 0 { 1 } else { corner.col - 1 }), Pos::new(if corner.row == 0 { 1 } else { corner.row - 1 }, corner.col)];
        if pocket.iter().any(|p| at(p.row, p.col) != Terrain::Passage) {
            problems.push(format!("pocket of corner {id} obstructed"));
        }
    }

    let rigid = s.terrain.iter().filter(|t| **t == Terrain::Rigid).count();
    let wood = s.terrain.iter().filter(|t| **t == Terrain::Wood).count();
    if rigid != cfg.num_rigid || wood != cfg.num_wood {
        problems.push(format!("{rigid} rigid / {wood} wood"));
    }
    if s.hidden_items.len() != cfg.num_wood / 2 {
        problems.push(format!("{} hidden items", s.hidden_items.len()));
    }
    if s.hidden_items.keys().any(|p| at(p.row, p.col) != Terrain::Wood) {
        problems.push("hidden item outside wood".into());
    }

    let mut seen = vec![false; n * n];
    let mut queue = VecDeque::from([Pos::new(0, 0)]);
    seen[0] = true;
    while let Some(p) = queue.pop_front() {
        for (dr, dc) in DIRS {
            let (r, c) = (p.row + dr, p.col + dc);
            if in_board(n, r, c) && !seen[r as usize * n + c as usize] && at(r, c) != Terrain::Rigid {
                seen[r as usize * n + c as usize] = true;
                queue.push_back(Pos::new(r, c));
            }
        }
    }
    if corners(n).iter().any(|p| !seen[p.index(n)]) {
        problems.push("corners disconnected".into());
    }
    problems
}

/// Starts an HTTP agent that answers `/act` with `body` after `delay`.
pub fn mock_agent(delay: Duration, body: &'static str) -> String {
    let listener = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    listener.set_nonblocking(true).unwrap();
    let addr = listener.local_addr().unwrap();
    std::thread::spawn(move || {
        let rt = tokio::runtime::Builder::new_current_thread().enable_all().build().unwrap();
        rt.block_on(async move {
            let app = Router::new()
                .route(
                    "/act",
                    post(move || async move {
                        tokio::time::sleep(delay).await;
                        ([("content-type", "application/json")], body)
                    }),
                )
                .route("/init", post(|| async { "" }))
                .route("/episode_end", post(|| async { "" }));
            let listener = tokio::net::TcpListener::from_std(listener).unwrap();
            axum::serve(listener, app).await.unwrap();
        });
    });
    format!("http://{addr}")
}

