//! Buffered stdout with a run manifest on stderr.
//!
//! The manifest carries the subcommand, the raw arguments, the crate
//! version, the elapsed time, the exit code, and an FNV-1a digest of
//! everything written to stdout, so identical deterministic runs can be
//! compared by digest alone.

use std::io::Write;
use std::time::Duration;

use serde::Serialize;

pub struct Output {
    json: bool,
    buffer: String,
}

#[derive(Serialize)]
struct RunManifest<'a> {
    subcommand: String,
    parameters: Vec<String>,
    seed: Option<u64>,
    version: &'a str,
    elapsed_ms: u128,
    exit_code: u8,
    result_digest: String,
}

impl Output {
    pub fn new(json: bool) -> Self {
        Output {
            json,
            buffer: String::new(),
        }
    }

    /// Queues the machine-readable or human-readable form of a result.
    pub fn emit(&mut self, json: &serde_json::Value, text: &str) {
        if self.json {
            self.buffer
                .push_str(&serde_json::to_string_pretty(json).unwrap());
        } else {
            self.buffer.push_str(text);
        }
        self.buffer.push('\n');
    }

    pub fn flush_with_manifest(self, elapsed: Duration, exit_code: u8) {
        let mut stdout = std::io::stdout().lock();
        let _ = stdout.write_all(self.buffer.as_bytes());
        let _ = stdout.flush();
        let argv: Vec<String> = std::env::args().skip(1).collect();
        let manifest = RunManifest {
            subcommand: argv.first().cloned().unwrap_or_default(),
            seed: seed_from_args(&argv),
            parameters: argv,
            version: env!("CARGO_PKG_VERSION"),
            elapsed_ms: elapsed.as_millis(),
            exit_code,
            result_digest: format!("fnv1a64:{:016x}", fnv1a64(self.buffer.as_bytes())),
        };
        eprintln!("{}", serde_json::to_string(&manifest).unwrap());
    }
}

fn seed_from_args(argv: &[String]) -> Option<u64> {
    argv.iter()
        .position(|a| a == "--seed")
        .and_then(|i| argv.get(i + 1))
        .and_then(|v| v.parse().ok())
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}
