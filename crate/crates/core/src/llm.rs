//! Minimal blocking chat-completions client.
//!
//! Two backends implement [`ChatBackend`]: a remote HTTP backend for a
//! chat-completions-compatible endpoint, and a scripted backend that replays
//! canned responses keyed by a digest of the prompt (used by tests and
//! offline evaluation). Neither alters response text.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::{Condvar, Mutex};
use std::time::{Duration, Instant};

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ChatRequest {
    pub model: String,
    pub system: Option<String>,
    pub user: String,
    pub temperature: f64,
    pub max_output: Option<u32>,
}

impl ChatRequest {
    /// Temperature 0, no system prompt, no output cap.
    pub fn new(model: impl Into<String>, user: impl Into<String>) -> Self {
        ChatRequest {
            model: model.into(),
            system: None,
            user: user.into(),
            temperature: 0.0,
            max_output: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.user.is_empty() {
            return Err(Error::Contract(
                "chat request has an empty user message".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChatResponse {
    /// Raw assistant text, unmodified.
    pub text: String,
    pub latency: Duration,
    /// Which backend produced this ("remote" or "scripted").
    pub backend: &'static str,
}

pub trait ChatBackend: Send + Sync {
    fn complete(&self, req: &ChatRequest) -> Result<ChatResponse>;
}

/// Hex SHA-256 of a prompt; the key scripted fixtures are stored under.
pub fn prompt_digest(user: &str) -> String {
    let digest = Sha256::digest(user.as_bytes());
    let mut out = String::with_capacity(64);
    for b in digest {
        write!(out, "{b:02x}").expect("writing to a String cannot fail");
    }
    out
}

/// Counting gate bounding concurrent in-flight requests.
struct Gate {
    free: Mutex<usize>,
    cv: Condvar,
}

impl Gate {
    fn new(slots: usize) -> Self {
        Gate {
            free: Mutex::new(slots.max(1)),
            cv: Condvar::new(),
        }
    }

    fn acquire(&self) -> GateGuard<'_> {
        let mut free = self.free.lock().expect("gate lock");
        while *free == 0 {
            free = self.cv.wait(free).expect("gate lock");
        }
        *free -= 1;
        GateGuard { gate: self }
    }
}

struct GateGuard<'a> {
    gate: &'a Gate,
}

impl Drop for GateGuard<'_> {
    fn drop(&mut self) {
        *self.gate.free.lock().expect("gate lock") += 1;
        self.gate.cv.notify_one();
    }
}

/// Blocking client for `POST {base_url}/chat/completions`.
///
/// Transient failures (HTTP 429, any 5xx, connect/timeout errors) are
/// retried up to `max_retries` times with exponential backoff; anything
/// else fails immediately.
pub struct RemoteBackend {
    client: reqwest::blocking::Client,
    base_url: String,
    api_key: Option<String>,
    max_retries: u32,
    backoff: Duration,
    gate: Gate,
}

impl RemoteBackend {
    /// Defaults: 60 s request timeout, 4 concurrent requests, 500 ms initial
    /// backoff, 3 retries. The API key is read from `LLM_API_KEY` if set.
    pub fn new(base_url: impl Into<String>) -> Result<Self> {
        let client = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs(60))
            .build()
            .map_err(|e| Error::Backend(format!("building HTTP client: {e}")))?;
        Ok(RemoteBackend {
            client,
            base_url: base_url.into(),
            api_key: std::env::var("LLM_API_KEY").ok(),
            max_retries: 3,
            backoff: Duration::from_millis(500),
            gate: Gate::new(4),
        })
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Result<Self> {
        self.client = reqwest::blocking::Client::builder()
            .timeout(timeout)
            .build()
            .map_err(|e| Error::Backend(format!("building HTTP client: {e}")))?;
        Ok(self)
    }

    pub fn with_concurrency(mut self, slots: usize) -> Self {
        self.gate = Gate::new(slots);
        self
    }

    pub fn with_backoff(mut self, backoff: Duration) -> Self {
        self.backoff = backoff;
        self
    }

    pub fn with_api_key(mut self, key: Option<String>) -> Self {
        self.api_key = key;
        self
    }

    fn wire_body(req: &ChatRequest) -> serde_json::Value {
        let mut messages = Vec::new();
        if let Some(system) = &req.system {
            messages.push(serde_json::json!({ "role": "system", "content": system }));
        }
        messages.push(serde_json::json!({ "role": "user", "content": req.user }));
        let mut body = serde_json::json!({
            "model": req.model,
            "messages": messages,
            "temperature": req.temperature,
        });
        if let Some(cap) = req.max_output {
            body["max_tokens"] = cap.into();
        }
        body
    }
}

impl ChatBackend for RemoteBackend {
    fn complete(&self, req: &ChatRequest) -> Result<ChatResponse> {
        req.validate()?;
        let _slot = self.gate.acquire();
        let clock = Instant::now();
        let url = format!("{}/chat/completions", self.base_url.trim_end_matches('/'));
        let body = Self::wire_body(req);

        let mut attempt = 0u32;
        loop {
            let mut call = self.client.post(&url).json(&body);
            if let Some(key) = &self.api_key {
                call = call.bearer_auth(key);
            }
            let failure = match call.send() {
                Ok(resp) if resp.status().is_success() => {
                    let parsed: serde_json::Value = resp
                        .json()
                        .map_err(|e| Error::Backend(format!("reading completion body: {e}")))?;
                    let text = parsed["choices"][0]["message"]["content"]
                        .as_str()
                        .ok_or_else(|| {
                            Error::Backend(
                                "completion body lacks choices[0].message.content".into(),
                            )
                        })?;
                    return Ok(ChatResponse {
                        text: text.to_string(),
                        latency: clock.elapsed(),
                        backend: "remote",
                    });
                }
                Ok(resp) => {
                    let status = resp.status();
                    let transient = status.as_u16() == 429 || status.is_server_error();
                    (transient, format!("chat endpoint returned {status}"))
                }
                Err(e) => (
                    e.is_connect() || e.is_timeout(),
                    format!("chat request failed: {e}"),
                ),
            };
            let (transient, message) = failure;
            if !transient || attempt >= self.max_retries {
                return Err(Error::Backend(message));
            }
            std::thread::sleep(self.backoff * 2u32.pow(attempt));
            attempt += 1;
        }
    }
}

#[derive(Deserialize)]
struct FixtureEntry {
    prompt_sha256: String,
    response: String,
}

/// Replays canned responses keyed by [`prompt_digest`] of the user prompt.
/// An unknown prompt is a fixture error, unless a constant fallback is set.
#[derive(Debug, Default, Clone)]
pub struct ScriptedBackend {
    responses: HashMap<String, String>,
    fallback: Option<String>,
}

impl ScriptedBackend {
    pub fn new() -> Self {
        Self::default()
    }

    /// Answers every prompt with the same text.
    pub fn constant(text: impl Into<String>) -> Self {
        ScriptedBackend {
            responses: HashMap::new(),
            fallback: Some(text.into()),
        }
    }

    pub fn register(&mut self, prompt: &str, response: impl Into<String>) {
        self.responses
            .insert(prompt_digest(prompt), response.into());
    }

    pub fn register_digest(&mut self, digest: impl Into<String>, response: impl Into<String>) {
        self.responses.insert(digest.into(), response.into());
    }

    /// Loads a JSON list of `{ "prompt_sha256": hex, "response": str }`.
    pub fn from_fixture_path(path: &Path) -> Result<Self> {
        let entries: Vec<FixtureEntry> = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        let mut backend = ScriptedBackend::new();
        for e in entries {
            backend.responses.insert(e.prompt_sha256, e.response);
        }
        Ok(backend)
    }
}

impl ChatBackend for ScriptedBackend {
    fn complete(&self, req: &ChatRequest) -> Result<ChatResponse> {
        req.validate()?;
        let digest = prompt_digest(&req.user);
        let text = match self.responses.get(&digest).or(self.fallback.as_ref()) {
            Some(t) => t.clone(),
            None => return Err(Error::FixtureMissing { digest }),
        };
        Ok(ChatResponse {
            text,
            latency: Duration::ZERO,
            backend: "scripted",
        })
    }
}
