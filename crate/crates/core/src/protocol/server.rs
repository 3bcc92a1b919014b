use std::net::{SocketAddr, TcpListener as StdListener};
use std::sync::{Arc, Mutex};
use std::thread::JoinHandle;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::{HeaderName, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use log::{debug, warn};
use tokio::sync::oneshot;

use crate::agents::{AgentBehavior, EpisodeInfo};
use crate::observe::decode_observation;
use crate::protocol::{ActResponse, PROTO_HEADER, PROTO_VERSION};

type Shared = Arc<Mutex<Box<dyn AgentBehavior>>>;

/// A running agent server. Dropping it shuts the server down and waits for it.
pub struct ServerHandle {
    addr: SocketAddr,
    shutdown: Option<oneshot::Sender<()>>,
    thread: Option<JoinHandle<()>>,
}

impl ServerHandle {
    pub fn local_addr(&self) -> SocketAddr {
        self.addr
    }

    /// `http://host:port`, suitable as a remote endpoint base URL.
    pub fn url(&self) -> String {
        format!("http://{}", self.addr)
    }

    /// Blocks until the server stops (it only stops when the handle is dropped elsewhere).
    pub fn wait(mut self) {
        if let Some(thread) = self.thread.take() {
            let _ = thread.join();
        }
    }
}

impl Drop for ServerHandle {
    fn drop(&mut self) {
        if let Some(tx) = self.shutdown.take() {
            let _ = tx.send(());
        }
        if let Some(thread) = self.thread.take() {
            let _ = thread.join();
        }
    }
}

fn with_version(status: StatusCode, body: impl IntoResponse) -> Response {
    let mut resp = (status, body).into_response();
    resp.headers_mut().insert(
        HeaderName::from_static("x-pommer-proto"),
        HeaderValue::from_str(&PROTO_VERSION.to_string()).expect("ascii"),
    );
    resp
}

fn bad_request(msg: String) -> Response {
    warn!("rejecting request: {msg}");
    with_version(StatusCode::BAD_REQUEST, Json(serde_json::json!({ "error": msg })))
}

async fn ping(State(agent): State<Shared>) -> Response {
    let name = agent.lock().expect("behavior lock").name();
    with_version(StatusCode::OK, Json(serde_json::json!({ "protocol": PROTO_VERSION, "agent": name })))
}

async fn act(State(agent): State<Shared>, body: Bytes) -> Response {
    let obs = match decode_observation(&body) {
        Ok(obs) => obs,
        Err(e) => return bad_request(e.to_string()),
    };
    let action = agent.lock().expect("behavior lock").act(&obs);
    debug!("step {}: {:?}", obs.step, action);
    with_version(StatusCode::OK, Json(ActResponse::from(action)))
}

async fn init(State(agent): State<Shared>, body: Bytes) -> Response {
    match serde_json::from_slice::<EpisodeInfo>(&body) {
        Ok(info) => {
            agent.lock().expect("behavior lock").reset(&info);
            with_version(StatusCode::OK, ())
        }
        Err(e) => bad_request(format!("episode info: {e}")),
    }
}

async fn episode_end() -> Response {
    with_version(StatusCode::OK, ())
}

/// Serves `behavior` over HTTP on `addr` from a dedicated thread.
///
/// Binding happens before this returns, so address errors surface here.
/// Requests are handled one at a time.
pub fn serve_agent(behavior: Box<dyn AgentBehavior>, addr: SocketAddr) -> std::io::Result<ServerHandle> {
    let listener = StdListener::bind(addr)?;
    listener.set_nonblocking(true)?;
    let local = listener.local_addr()?;
    let (tx, rx) = oneshot::channel::<()>();
    let state: Shared = Arc::new(Mutex::new(behavior));
    debug_assert_eq!(PROTO_HEADER.to_ascii_lowercase(), "x-pommer-proto");

    let runtime = tokio::runtime::Builder::new_current_thread().enable_all().build()?;
    let thread = std::thread::Builder::new().name(format!("agent-server-{}", local.port())).spawn(move || {
        runtime.block_on(async move {
            let listener = match tokio::net::TcpListener::from_std(listener) {
                Ok(l) => l,
                Err(e) => {
                    warn!("agent server could not adopt listener: {e}");
                    return;
                }
            };
            let app = Router::new()
                .route("/ping", get(ping))
                .route("/act", post(act))
                .route("/init", post(init))
                .route("/episode_end", post(episode_end))
                .with_state(state);
            let shutdown = async {
                let _ = rx.await;
            };
            if let Err(e) = axum::serve(listener, app).with_graceful_shutdown(shutdown).await {
                warn!("agent server stopped: {e}");
            }
        });
    })?;
    Ok(ServerHandle { addr: local, shutdown: Some(tx), thread: Some(thread) })
}
