//! Loopback JSON service backing the console.
//!
//! Sessions are keyed by the `x-session` header (default `"default"`); each
//! session sits behind its own mutex so mutations are serialized per session
//! while different sessions proceed independently.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use arbiter_core::io::fmt_real;
use arbiter_core::market::Chain;
use arbiter_core::semigroup;
use arbiter_core::synthesis::{self, formulas, TargetExponents};
use arbiter_core::{Error, GeneratorBasis, RateEnsemble};
use axum::extract::{Query, State};
use axum::http::{HeaderMap, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::value::RawValue;
use serde_json::{json, Value};

pub const HISTORY_LIMIT: usize = 100_000;
const SESSION_HEADER: &str = "x-session";

#[derive(Clone, Debug)]
pub struct SessionState {
    pub initial: RateEnsemble,
    pub current: RateEnsemble,
    /// (arbitrage, ensemble before it fired)
    pub history: Vec<(usize, RateEnsemble)>,
    pub target: Option<TargetExponents>,
    /// Which standard start (1..6) the session began from, if any.
    pub start: Option<usize>,
}

impl SessionState {
    pub fn standard(which: usize, alpha: f64) -> arbiter_core::Result<Self> {
        let r = synthesis::standard_start(which, alpha)?;
        Ok(Self::from_ensemble(r, Some(which)))
    }

    fn from_ensemble(r: RateEnsemble, start: Option<usize>) -> Self {
        Self { initial: r.clone(), current: r, history: Vec::new(), target: None, start }
    }

    /// Replays the history from the initial ensemble.
    pub fn replay(&self) -> arbiter_core::Result<RateEnsemble> {
        let mut r = self.initial.clone();
        for (k, _) in &self.history {
            r = r.apply_arbitrage(*k)?.0;
        }
        Ok(r)
    }
}

impl Default for SessionState {
    fn default() -> Self {
        Self::standard(1, synthesis::DEFAULT_ALPHA).expect("standard start")
    }
}

#[derive(Clone, Default)]
pub struct AppState {
    sessions: Arc<Mutex<HashMap<String, Arc<Mutex<SessionState>>>>>,
}

impl AppState {
    fn session(&self, headers: &HeaderMap) -> Arc<Mutex<SessionState>> {
        let id = headers
            .get(SESSION_HEADER)
            .and_then(|v| v.to_str().ok())
            .unwrap_or("default")
            .to_string();
        let mut map = self.sessions.lock().expect("session map poisoned");
        map.entry(id).or_default().clone()
    }
}

pub fn router() -> Router {
    Router::new()
        .route("/api/state", get(state))
        .route("/api/reset", post(reset))
        .route("/api/apply", post(apply))
        .route("/api/undo", post(undo))
        .route("/api/synthesize", post(synthesize))
        .route("/api/graph", get(graph))
        .route("/api/playback", post(playback))
        .with_state(AppState::default())
}

pub struct ApiError(StatusCode, String);

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Internal(_) => StatusCode::INTERNAL_SERVER_ERROR,
            Error::Resource(_) => StatusCode::CONFLICT,
            _ => StatusCode::UNPROCESSABLE_ENTITY,
        };
        ApiError(code, e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({ "error": self.1 }))).into_response()
    }
}

type ApiResult = Result<Json<Value>, ApiError>;

fn raw_reals(xs: &[f64]) -> Value {
    let s = format!("[{}]", xs.iter().map(|x| fmt_real(*x)).collect::<Vec<_>>().join(","));
    let raw: Box<RawValue> = RawValue::from_string(s).expect("valid JSON");
    serde_json::to_value(raw).expect("raw value")
}

/// The state document; reals keep 17 significant digits and lattice
/// coefficients are given exactly alongside.
pub fn state_view(s: &SessionState) -> Value {
    let r = &s.current;
    let d = r.discrepancies();
    let mut v = json!({
        "log_rates": raw_reals(&r.log_rates()),
        "discrepancies": raw_reals(&d.values),
        "active": r.active_flags().to_vec(),
        "balanced": d.is_zero(),
        "history_len": s.history.len(),
    });
    if let (Some(c), Some(e), Some(basis)) = (r.coeffs(), d.exact, r.basis()) {
        let rank = basis.rank();
        v["coeffs"] = json!(c.iter().map(|x| &x.0[..rank]).collect::<Vec<_>>());
        v["exact_discrepancies"] = json!(e.iter().map(|x| &x.0[..rank]).collect::<Vec<_>>());
    }
    if let Some(t) = s.target {
        v["target"] = json!(t.0);
    }
    v
}

async fn state(State(app): State<AppState>, headers: HeaderMap) -> ApiResult {
    let s = app.session(&headers);
    let s = s.lock().expect("session poisoned");
    Ok(Json(state_view(&s)))
}

#[derive(Deserialize)]
struct ResetBody {
    base: Option<[f64; 3]>,
    alpha: Option<f64>,
    perturb: Option<usize>,
    log_rates: Option<[f64; 6]>,
}

async fn reset(State(app): State<AppState>, headers: HeaderMap, Json(body): Json<ResetBody>) -> ApiResult {
    let fresh = if let Some(l) = body.log_rates {
        if body.perturb.is_some() || body.alpha.is_some() {
            return Err(ApiError(StatusCode::UNPROCESSABLE_ENTITY, "give either log_rates or perturb/alpha".into()));
        }
        SessionState::from_ensemble(RateEnsemble::numeric(l)?, None)
    } else {
        let alpha = body.alpha.unwrap_or(synthesis::DEFAULT_ALPHA);
        if !(alpha > 0.0) || alpha == 1.0 {
            return Err(Error::Domain("α must be positive and ≠ 1".into()).into());
        }
        let basis = GeneratorBasis::single(alpha.ln(), body.base.unwrap_or([0.0; 3]))?;
        match body.perturb.unwrap_or(1) {
            0 => SessionState::from_ensemble(RateEnsemble::lattice(basis, Default::default()), None),
            w => {
                let r = RateEnsemble::perturbed(&basis, w)?;
                let standard = body.base.is_none_or(|b| b == [0.0; 3]);
                SessionState::from_ensemble(r, standard.then_some(w))
            }
        }
    };
    let s = app.session(&headers);
    let mut s = s.lock().expect("session poisoned");
    *s = fresh;
    Ok(Json(state_view(&s)))
}

#[derive(Deserialize)]
struct ApplyBody {
    arbitrage: usize,
}

async fn apply(State(app): State<AppState>, headers: HeaderMap, Json(body): Json<ApplyBody>) -> ApiResult {
    let s = app.session(&headers);
    let mut s = s.lock().expect("session poisoned");
    let (next, fired) = s.current.apply_arbitrage(body.arbitrage)?;
    if fired {
        if s.history.len() >= HISTORY_LIMIT {
            return Err(Error::Resource(format!("history limit {HISTORY_LIMIT} reached")).into());
        }
        let prior = std::mem::replace(&mut s.current, next);
        s.history.push((body.arbitrage, prior));
    }
    log::debug!("apply {} fired={fired}", body.arbitrage);
    let mut v = state_view(&s);
    v["applied"] = json!(fired);
    Ok(Json(v))
}

async fn undo(State(app): State<AppState>, headers: HeaderMap) -> ApiResult {
    let s = app.session(&headers);
    let mut s = s.lock().expect("session poisoned");
    let undone = match s.history.pop() {
        Some((_, prior)) => {
            s.current = prior;
            true
        }
        None => false,
    };
    let mut v = state_view(&s);
    v["undone"] = json!(undone);
    Ok(Json(v))
}

#[derive(Deserialize)]
struct SynthBody {
    n1: i64,
    n2: i64,
    n3: i64,
    method: Option<String>,
}

async fn synthesize(State(app): State<AppState>, headers: HeaderMap, Json(body): Json<SynthBody>) -> ApiResult {
    let s = app.session(&headers);
    let mut s = s.lock().expect("session poisoned");
    let Some(start) = s.start else {
        return Err(Error::WrongCase("synthesis needs a session reset to a standard start (base zero, perturb 1..6)".into()).into());
    };
    let alpha_ok = s.initial == synthesis::standard_start(start, synthesis::DEFAULT_ALPHA)?;
    if !alpha_ok {
        return Err(Error::WrongCase(format!("synthesis runs from the α = {} starts", synthesis::DEFAULT_ALPHA)).into());
    }
    let target = TargetExponents::new(body.n1, body.n2, body.n3);
    let res = formulas::synthesize(start, target, body.method.as_deref().unwrap_or("bfs"))?;
    s.target = Some(target);
    Ok(Json(serde_json::to_value(&res).expect("serializable")))
}

#[derive(Deserialize)]
struct GraphQuery {
    a: Option<f64>,
    b: Option<f64>,
}

async fn graph(Query(q): Query<GraphQuery>) -> ApiResult {
    let a = q.a.unwrap_or(1.0);
    let orbit = match q.b {
        None => semigroup::disc12_orbit(a)?,
        Some(b) => semigroup::orbit_polyhedron(a, b)?,
    };
    let mut v = serde_json::to_value(&orbit).expect("serializable");
    v["dot"] = json!(orbit.to_dot());
    Ok(Json(v))
}

#[derive(Deserialize)]
struct PlaybackBody {
    chain: Vec<usize>,
    cursor: usize,
    #[serde(default = "yes")]
    periodic: bool,
}

fn yes() -> bool {
    true
}

/// Runs `chain` from the session's initial ensemble up to `cursor` steps
/// without touching the session.
async fn playback(State(app): State<AppState>, headers: HeaderMap, Json(body): Json<PlaybackBody>) -> ApiResult {
    if body.cursor > HISTORY_LIMIT {
        return Err(Error::Resource(format!("cursor beyond {HISTORY_LIMIT}")).into());
    }
    let initial = {
        let s = app.session(&headers);
        let s = s.lock().expect("session poisoned");
        s.initial.clone()
    };
    let chain = if body.periodic { Chain::periodic(body.chain) } else { Chain::finite(body.chain) };
    chain.validate()?;
    let steps = if body.periodic { body.cursor } else { body.cursor.min(chain.len()) };
    let (traj, fired) = initial.run_chain(&chain, steps)?;
    let end = traj.last().expect("trajectory has the start").clone();
    let view = SessionState { current: end.clone(), ..SessionState::from_ensemble(initial.clone(), None) };
    let mut v = state_view(&view);
    v["cursor"] = json!(traj.len() - 1);
    v["fired"] = json!(fired);
    v["closes_loop"] = json!(traj.len() > 1 && end == initial);
    v["next_arbitrage"] = json!(chain.iter_steps(steps + 1).nth(steps));
    Ok(Json(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replay_reproduces_current() {
        let mut s = SessionState::default();
        for k in [15, 3, 21, 9, 15, 2] {
            let (next, fired) = s.current.apply_arbitrage(k).unwrap();
            if fired {
                let prior = std::mem::replace(&mut s.current, next);
                s.history.push((k, prior));
            }
        }
        assert!(!s.history.is_empty());
        assert_eq!(s.replay().unwrap(), s.current);
    }
}
