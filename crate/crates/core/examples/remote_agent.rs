//! Serve SimpleAgent over HTTP, then play the same episode twice: once with
//! every seat in-process and once with seat 2 behind the loopback server.
//! The two replays are identical.
//!
//! ```bash
//! cargo run --example remote_agent
//! ```

use std::time::Duration;

use pommer::agents::by_name;
use pommer::protocol::{serve_agent, AgentEndpoint};
use pommer::runner::{run_episode, Seats};
use pommer::GameConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let server = serve_agent(by_name("simple", 0).expect("registered"), "127.0.0.1:0".parse()?)?;
    println!("SimpleAgent listening on {}", server.url());

    let config = GameConfig::ffa().with_seed(12);
    let local = run_episode(&config, &mut Seats::builtin(["simple"; 4])?)?;

    let endpoints = [
        AgentEndpoint::in_process(by_name("simple", 0).expect("registered")),
        AgentEndpoint::in_process(by_name("simple", 0).expect("registered")),
        AgentEndpoint::remote(server.url(), Duration::from_millis(100)),
        AgentEndpoint::in_process(by_name("simple", 0).expect("registered")),
    ];
    let mut seats = Seats::from_endpoints(endpoints);
    let remote = run_episode(&config, &mut seats)?;

    println!("in-process: {} steps, digest {}", local.header.steps, local.header.final_digest);
    println!("loopback:   {} steps, digest {}, substitutions {:?}", remote.header.steps, remote.header.final_digest, remote.header.substitutions);
    println!("identical: {}", local.steps == remote.steps && local.header.final_digest == remote.header.final_digest);
    Ok(())
}
