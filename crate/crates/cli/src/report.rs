use std::fmt;
use std::time::Duration;

use coverlink::Error;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
    InputError,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
            Status::InputError => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
            Status::InputError => "input-error",
        }
    }

    /// Status for a library error: limits are inconclusive, answers that
    /// settle a check negatively are failures, the rest is bad input.
    pub fn of_error(e: &Error) -> Status {
        match e {
            _ if e.is_inconclusive() => Status::Inconclusive,
            Error::NotEven
            | Error::NotUnimodular
            | Error::Degenerate
            | Error::SignatureObstructed { .. }
            | Error::NonzeroSignature(_)
            | Error::RankTooSmall(_)
            | Error::Overflow(_) => Status::Fail,
            _ => Status::InputError,
        }
    }
}

/// A failure that ends a command early.
#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { status: Status::InputError, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { status: Status::of_error(&e), message: e.to_string() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: Vec<String>,
    pub status: Status,
    pub payload: Value,
    /// Human-readable lines, one result per line.
    pub lines: Vec<String>,
    pub timing: Duration,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report { command, status: Status::Pass, payload: json!({}), lines: Vec::new(), timing: Duration::ZERO }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.payload[key] = value.into();
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    /// Records a named check; the report fails if any check fails.
    pub fn check(&mut self, name: &str, ok: bool) {
        if !ok && self.status < Status::Fail {
            self.status = Status::Fail;
        }
        let checks = self.payload.as_object_mut().expect("payload is an object").entry("checks").or_insert(json!({}));
        checks[name] = Value::from(ok);
        self.lines.push(format!("{} {name}", if ok { "ok  " } else { "FAIL" }));
    }

    pub fn fail_with(&mut self, failure: &Failure) {
        self.status = failure.status;
        self.set("error", failure.message.clone());
        self.lines.push(format!("{}: {}", failure.status.name(), failure.message));
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "status": self.status.name(),
            "payload": stringify_numbers(&self.payload),
            "timing": { "seconds": format!("{:.6}", self.timing.as_secs_f64()) },
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out.push_str(&format!("status: {}\n", self.status.name()));
        out
    }
}

/// Replaces every JSON number by its decimal string.
pub fn stringify_numbers(v: &Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(items) => Value::Array(items.iter().map(stringify_numbers).collect()),
        Value::Object(map) => {
            Value::Object(map.iter().map(|(k, x)| (k.clone(), stringify_numbers(x))).collect::<Map<_, _>>())
        }
        other => other.clone(),
    }
}
