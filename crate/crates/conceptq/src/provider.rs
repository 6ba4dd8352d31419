//! Phrase counts from a remote HTTP endpoint.
//!
//! One `GET <endpoint>?<param>=<phrase>` per phrase; the response body is a
//! JSON object with an integer `count`.

use std::time::Duration;

use url::Url;

use crate::error::{Error, Result};

/// Environment variable holding the default endpoint.
pub const ENDPOINT_ENV: &str = "CONCEPTQ_PROVIDER";

#[derive(Debug, Clone, PartialEq)]
pub struct ProviderConfig {
    pub endpoint: Url,
    pub param: String,
    pub timeout: Duration,
    pub retries: u32,
}

impl ProviderConfig {
    pub fn new(endpoint: &str) -> Result<Self> {
        let endpoint = Url::parse(endpoint)
            .map_err(|e| Error::Usage(format!("invalid provider URL {endpoint:?}: {e}")))?;
        Ok(Self {
            endpoint,
            param: "q".into(),
            timeout: Duration::from_secs(10),
            retries: 2,
        })
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Result<Self> {
        if timeout.is_zero() {
            return Err(Error::Usage("provider timeout must be positive".into()));
        }
        self.timeout = timeout;
        Ok(self)
    }

    pub fn request_url(&self, phrase: &str) -> Url {
        let mut url = self.endpoint.clone();
        url.query_pairs_mut().append_pair(&self.param, phrase);
        url
    }
}

enum Attempt {
    Done(u64),
    Retry(String),
    Fail(String),
}

fn parse_count(body: &str) -> std::result::Result<u64, String> {
    let value: serde_json::Value =
        serde_json::from_str(body).map_err(|e| format!("malformed body: {e}"))?;
    value
        .get("count")
        .and_then(serde_json::Value::as_u64)
        .ok_or_else(|| format!("no nonnegative integer `count` in {body:?}"))
}

fn attempt(agent: &ureq::Agent, url: &Url) -> Attempt {
    let mut response = match agent.get(url.as_str()).call() {
        Ok(r) => r,
        Err(e) => return Attempt::Retry(e.to_string()),
    };
    let status = response.status().as_u16();
    let body = match response.body_mut().read_to_string() {
        Ok(b) => b,
        Err(e) => return Attempt::Retry(e.to_string()),
    };
    match status {
        200..=299 => match parse_count(&body) {
            Ok(n) => Attempt::Done(n),
            Err(e) => Attempt::Fail(e),
        },
        429 | 500..=599 => Attempt::Retry(format!("HTTP {status}")),
        _ => Attempt::Fail(format!("HTTP {status}")),
    }
}

/// Count for one phrase, retrying transport failures, 429 and 5xx up to
/// `config.retries` times.
pub fn provider_count(config: &ProviderConfig, phrase: &str) -> Result<u64> {
    let agent: ureq::Agent = ureq::Agent::config_builder()
        .timeout_global(Some(config.timeout))
        .http_status_as_error(false)
        .build()
        .into();
    let url = config.request_url(phrase);
    let mut last = String::new();
    for _ in 0..=config.retries {
        match attempt(&agent, &url) {
            Attempt::Done(n) => return Ok(n),
            Attempt::Retry(reason) => last = reason,
            Attempt::Fail(reason) => {
                last = reason;
                break;
            }
        }
    }
    Err(Error::Provider {
        phrase: phrase.into(),
        endpoint: config.endpoint.to_string(),
        reason: last,
    })
}
