use arbiter_cli::server::router;
use arbiter_core::market::Chain;
use arbiter_core::synthesis::{self, star, TargetExponents};
use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call(app: &Router, method: &str, uri: &str, session: &str, body: Option<Value>) -> (StatusCode, Value) {
    let mut req = Request::builder().method(method).uri(uri).header("x-session", session);
    let body = match body {
        Some(b) => {
            req = req.header("content-type", "application/json");
            Body::from(b.to_string())
        }
        None => Body::empty(),
    };
    let resp = app.clone().oneshot(req.body(body).unwrap()).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap())
}

fn without(mut v: Value, keys: &[&str]) -> Value {
    for k in keys {
        v.as_object_mut().unwrap().remove(*k);
    }
    v
}

#[tokio::test]
async fn state_schema() {
    let app = router();
    let (st, v) = call(&app, "GET", "/api/state", "s", None).await;
    assert_eq!(st, StatusCode::OK);
    assert_eq!(v["log_rates"].as_array().unwrap().len(), 6);
    assert_eq!(v["discrepancies"].as_array().unwrap().len(), 3);
    assert_eq!(v["active"].as_array().unwrap().len(), 24);
    assert_eq!(v["balanced"], json!(false));
    assert_eq!(v["history_len"], json!(0));
    // First perturbed start: only the $€ rate carries α.
    assert_eq!(v["coeffs"][0], json!([1]));
    assert!((v["log_rates"][0].as_f64().unwrap() - 2f64.ln()).abs() < 1e-15);
}

#[tokio::test]
async fn apply_fifteen_moves_discrepancy_to_second_slot() {
    let app = router();
    let (_, v) = call(&app, "POST", "/api/apply", "s", Some(json!({"arbitrage": 15}))).await;
    assert_eq!(v["applied"], json!(true));
    assert_eq!(v["exact_discrepancies"], json!([[0], [1], [0]]));
    let a = 2f64.ln();
    let d: Vec<f64> = v["discrepancies"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert!(d[0].abs() < 1e-15 && (d[1] - a).abs() < 1e-15 && d[2].abs() < 1e-15);
    assert_eq!(v["history_len"], json!(1));
}

#[tokio::test]
async fn inactive_arbitrage_is_a_no_op() {
    let app = router();
    let (_, before) = call(&app, "GET", "/api/state", "s", None).await;
    let k = before["active"].as_array().unwrap().iter().position(|x| x == &json!(false)).unwrap() + 1;
    let (_, after) = call(&app, "POST", "/api/apply", "s", Some(json!({ "arbitrage": k }))).await;
    assert_eq!(after["applied"], json!(false));
    assert_eq!(without(after, &["applied"]), before);
}

#[tokio::test]
async fn undo_then_reapply_is_identical() {
    let app = router();
    let (_, mid) = call(&app, "POST", "/api/apply", "s", Some(json!({"arbitrage": 15}))).await;
    let k = mid["active"].as_array().unwrap().iter().position(|x| x == &json!(true)).unwrap() + 1;
    call(&app, "POST", "/api/apply", "s", Some(json!({ "arbitrage": k }))).await;
    let (_, before) = call(&app, "GET", "/api/state", "s", None).await;
    assert_eq!(before["history_len"], json!(2));
    let (_, undone) = call(&app, "POST", "/api/undo", "s", None).await;
    assert_eq!(undone["undone"], json!(true));
    let (_, redone) = call(&app, "POST", "/api/apply", "s", Some(json!({ "arbitrage": k }))).await;
    assert_eq!(redone["applied"], json!(true));
    assert_eq!(without(redone, &["applied"]), before);
}

#[tokio::test]
async fn undo_on_empty_history() {
    let app = router();
    let (_, v) = call(&app, "POST", "/api/undo", "s", None).await;
    assert_eq!(v["undone"], json!(false));
}

#[tokio::test]
async fn sessions_are_isolated() {
    let app = router();
    call(&app, "POST", "/api/apply", "one", Some(json!({"arbitrage": 15}))).await;
    let (_, other) = call(&app, "GET", "/api/state", "two", None).await;
    assert_eq!(other["history_len"], json!(0));
    let (_, one) = call(&app, "GET", "/api/state", "one", None).await;
    assert_eq!(one["history_len"], json!(1));
}

#[tokio::test]
async fn active_flags_track_the_core_over_scripted_steps() {
    let app = router();
    let mut r = synthesis::standard_start(1, synthesis::DEFAULT_ALPHA).unwrap();
    for step in 0..50usize {
        let k = (step * 7) % 24 + 1;
        let (_, v) = call(&app, "POST", "/api/apply", "s", Some(json!({ "arbitrage": k }))).await;
        r = r.apply_arbitrage(k).unwrap().0;
        assert_eq!(v["active"], json!(r.active_flags().to_vec()), "step {step}");
    }
}

#[tokio::test]
async fn reset_variants() {
    let app = router();
    let (st, v) = call(&app, "POST", "/api/reset", "s", Some(json!({"log_rates": [0.1, 0.2, 0.3, 0.0, 0.0, 0.0]}))).await;
    assert_eq!(st, StatusCode::OK);
    assert!(v.get("coeffs").is_none());
    assert_eq!(v["balanced"], json!(false));
    let (_, v) = call(&app, "POST", "/api/reset", "s", Some(json!({"perturb": 4, "alpha": 3.0}))).await;
    assert_eq!(v["exact_discrepancies"], json!([[1], [0], [0]]));
    let (_, v) = call(&app, "POST", "/api/reset", "s", Some(json!({"perturb": 0}))).await;
    assert_eq!(v["balanced"], json!(true));
    let (st, _) = call(&app, "POST", "/api/reset", "s", Some(json!({"alpha": 1.0}))).await;
    assert_eq!(st, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn out_of_range_arbitrage_is_rejected() {
    let app = router();
    let (st, v) = call(&app, "POST", "/api/apply", "s", Some(json!({"arbitrage": 25}))).await;
    assert_eq!(st, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(v["error"].as_str().unwrap().contains("25"));
}

#[tokio::test]
async fn synthesized_chain_reaches_target() {
    let app = router();
    call(&app, "POST", "/api/reset", "s", Some(json!({"perturb": 2}))).await;
    let (st, v) = call(&app, "POST", "/api/synthesize", "s", Some(json!({"n1": 1, "n2": -1, "n3": 2, "method": "bfs"}))).await;
    assert_eq!(st, StatusCode::OK);
    let chain: Vec<usize> = serde_json::from_value(v["chain"].clone()).unwrap();
    let r0 = synthesis::standard_start(2, synthesis::DEFAULT_ALPHA).unwrap();
    assert!(synthesis::reaches(&r0, &chain, &TargetExponents::new(1, -1, 2).coeffs()).unwrap());
    let (_, s) = call(&app, "GET", "/api/state", "s", None).await;
    assert_eq!(s["target"], json!([1, -1, 2]));
}

#[tokio::test]
async fn synthesis_needs_a_standard_start() {
    let app = router();
    call(&app, "POST", "/api/reset", "s", Some(json!({"log_rates": [0.1, 0.2, 0.3, 0.0, 0.0, 0.0]}))).await;
    let (st, _) = call(&app, "POST", "/api/synthesize", "s", Some(json!({"n1": 0, "n2": 0, "n3": 0}))).await;
    assert_eq!(st, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn graph_sizes() {
    let app = router();
    let (_, v) = call(&app, "GET", "/api/graph?a=1", "s", None).await;
    assert_eq!(v["vertices"].as_array().unwrap().len(), 12);
    assert!(v["dot"].as_str().unwrap().starts_with("digraph"));
    let (_, v) = call(&app, "GET", "/api/graph?a=1&b=0.37", "s", None).await;
    assert_eq!(v["vertices"].as_array().unwrap().len(), 24);
    let (st, _) = call(&app, "GET", "/api/graph?a=0", "s", None).await;
    assert_eq!(st, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn star_playback_closes_at_step_24() {
    let app = router();
    let chain = star::STAR_CHAIN.to_vec();
    for cursor in [1, 12, 23] {
        let (_, v) = call(&app, "POST", "/api/playback", "s", Some(json!({"chain": chain, "cursor": cursor}))).await;
        assert_eq!(v["closes_loop"], json!(false), "cursor {cursor}");
    }
    let (_, v) = call(&app, "POST", "/api/playback", "s", Some(json!({"chain": chain, "cursor": 24}))).await;
    assert_eq!(v["closes_loop"], json!(true));
    assert!(v["fired"].as_array().unwrap().iter().all(|f| f == &json!(true)));
    assert_eq!(v["next_arbitrage"], json!(chain[0]));
    // Playback leaves the session alone.
    let (_, s) = call(&app, "GET", "/api/state", "s", None).await;
    assert_eq!(s["history_len"], json!(0));
    let r0 = synthesis::standard_start(1, synthesis::DEFAULT_ALPHA).unwrap();
    assert_eq!(r0.apply_chain(&Chain::periodic(chain), 24).unwrap()[24], r0);
}
