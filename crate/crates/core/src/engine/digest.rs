//! Stable 64-bit content hash of a [`GameState`].
//!
//! The digest is the first eight bytes (big-endian) of SHA-256 over this byte
//! string, so other implementations can cross-check replays:
//!
//! ```text
//! "pommer-digest/1"
//! u32le board_size, u32le step, u32le collapse_ring
//! board_size² bytes   rendered grid codes, row-major
//! board_size² bytes   terrain codes (0 passage, 1 rigid, 2 wood, 6/7/8 power-up)
//! 4 × 9 bytes         per agent: alive, row, col, ammo, max_ammo, blast, can_kick, word1, word2
//! u32le count, then   per bomb sorted by (row, col): row, col, owner, life, blast, velocity (0 none, 1..4)
//! u32le count, then   per flame sorted by (row, col): row, col, life, reveal (0 none, 6/7/8)
//! u32le count, then   per hidden item sorted by (row, col): row, col, code
//! ```
//!
//! Entities are sorted before hashing, so the digest does not depend on the
//! order of the bomb or flame lists. The game config is not hashed.

use sha2::{Digest, Sha256};

use crate::engine::state::GameState;
use crate::types::Pos;

pub fn state_digest(state: &GameState) -> u64 {
    let mut h = Sha256::new();
    h.update(b"pommer-digest/1");
    h.update((state.size() as u32).to_le_bytes());
    h.update(state.step.to_le_bytes());
    h.update(state.collapse_ring.to_le_bytes());
    h.update(state.grid.iter().map(|c| c.code()).collect::<Vec<u8>>());
    h.update(state.terrain.iter().map(|t| t.item().code()).collect::<Vec<u8>>());
    for a in &state.agents {
        let [w1, w2] = a.outbox.unwrap_or([0, 0]);
        h.update([
            a.alive as u8,
            a.position.row as u8,
            a.position.col as u8,
            a.ammo,
            a.max_ammo,
            a.blast_strength,
            a.can_kick as u8,
            w1,
            w2,
        ]);
    }

    let pos_bytes = |p: Pos| [p.row as u8, p.col as u8];

    let mut bombs: Vec<[u8; 6]> = state
        .bombs
        .iter()
        .map(|b| {
            let [r, c] = pos_bytes(b.position);
            [r, c, b.owner as u8, b.life, b.blast_strength, b.velocity.map_or(0, |d| d.code())]
        })
        .collect();
    bombs.sort_unstable();
    h.update((bombs.len() as u32).to_le_bytes());
    bombs.iter().for_each(|b| h.update(b));

    let mut flames: Vec<[u8; 4]> = state
        .flames
        .iter()
        .map(|f| {
            let [r, c] = pos_bytes(f.position);
            [r, c, f.life, f.reveal.map_or(0, |p| p.item().code())]
        })
        .collect();
    flames.sort_unstable();
    h.update((flames.len() as u32).to_le_bytes());
    flames.iter().for_each(|f| h.update(f));

    // BTreeMap iteration is already sorted by position.
    h.update((state.hidden_items.len() as u32).to_le_bytes());
    for (pos, item) in &state.hidden_items {
        let [r, c] = pos_bytes(*pos);
        h.update([r, c, item.item().code()]);
    }

    let out = h.finalize();
    u64::from_be_bytes(out[..8].try_into().expect("sha256 output is 32 bytes"))
}

/// Lower-case hex rendering used in replay files.
pub fn digest_hex(digest: u64) -> String {
    format!("{digest:016x}")
}
