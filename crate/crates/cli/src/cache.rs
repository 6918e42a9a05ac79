//! Append-only JSON-lines result cache.
//!
//! One record per line, keyed by the SHA-256 of the command name and the
//! compact canonical input. A record is written with a single `write` call,
//! so an interrupted run leaves at most one truncated final line, which
//! lookups skip.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Read, Seek, SeekFrom, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::commands::{Outcome, Request};

#[derive(Debug, Serialize, Deserialize)]
struct Record {
    key: String,
    command: String,
    input: Value,
    result: Value,
    warnings: Vec<String>,
}

pub fn key(request: &Request) -> String {
    let mut h = Sha256::new();
    h.update(request.command.as_bytes());
    h.update(b"\n");
    h.update(request.input.to_string().as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

pub fn lookup(path: &Path, request: &Request) -> std::io::Result<Option<Outcome>> {
    let file = match std::fs::File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e),
    };
    let k = key(request);
    for line in BufReader::new(file).lines() {
        let Ok(rec) = serde_json::from_str::<Record>(&line?) else {
            continue;
        };
        if rec.key == k && rec.command == request.command && rec.input == request.input {
            return Ok(Some((rec.result, rec.warnings)));
        }
    }
    Ok(None)
}

pub fn store(
    path: &Path,
    request: &Request,
    result: &Value,
    warnings: &[String],
) -> std::io::Result<()> {
    let rec = Record {
        key: key(request),
        command: request.command.to_string(),
        input: request.input.clone(),
        result: result.clone(),
        warnings: warnings.to_vec(),
    };
    let mut line = serde_json::to_string(&rec).map_err(std::io::Error::other)?;
    line.push('\n');
    let mut f = OpenOptions::new()
        .create(true)
        .read(true)
        .append(true)
        .open(path)?;
    // start a fresh line after a torn final record
    let len = f.metadata()?.len();
    if len > 0 {
        let mut last = [0u8; 1];
        f.seek(SeekFrom::Start(len - 1))?;
        f.read_exact(&mut last)?;
        if last[0] != b'\n' {
            line.insert(0, '\n');
        }
    }
    f.write_all(line.as_bytes())
}
