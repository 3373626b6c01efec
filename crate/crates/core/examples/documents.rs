//! Reading and writing JSON documents.

use std::sync::Arc;

use schreier_lab::correspondence::sigma;
use schreier_lab::fixtures;
use schreier_lab::io::{parse, serialize, Object};
use schreier_lab::Error;

pub fn run_example() -> Vec<String> {
    let mut lines = Vec::new();
    let s = fixtures::system("z2-const-z2-twisted");
    let text = serialize(&Object::System(Arc::new(s.clone())));
    lines.push(format!("system document: {} lines", text.lines().count()));
    lines.push(format!(
        "parses back to the same system: {}",
        parse(&text).ok() == Some(Object::System(Arc::new(s.clone())))
    ));

    let g = serialize(&Object::Groupoid(Arc::new(sigma(&s))));
    lines.push(format!("groupoid document: {} bytes", g.len()));

    let bad = "{\"version\": \"1\", \"kind\": \"group\",\n \"payload\": {\"table\": [[0, 1], [1, 1]], \"unit\": 0}}";
    match parse(bad) {
        Err(Error::Parse {
            line,
            column,
            message,
        }) => lines.push(format!("parse error at {line}:{column}: {message}")),
        Err(e) => lines.push(format!("rejected: {e}")),
        Ok(_) => lines.push("accepted".into()),
    }
    lines
}

fn main() {
    for line in run_example() {
        println!("{line}");
    }
}
