use dccasp::analysis::CheckProgram;
use dccasp::ast::AtomTable;
use dccasp::engine::Via;
use dccasp::{Event, PartialAnswerSet};
use serde_json::{json, Value};

use crate::Format;

/// `{"answers": [{"positives": [...], "negatives": [...]}, ...]}`, names
/// sorted within each array.
pub fn answers_json(answers: &[PartialAnswerSet], atoms: &AtomTable, positives_only: bool) -> Value {
    let answers: Vec<Value> = answers
        .iter()
        .map(|a| {
            let (pos, mut neg) = a.sorted_names(atoms);
            if positives_only {
                neg.clear();
            }
            json!({ "positives": pos, "negatives": neg })
        })
        .collect();
    json!({ "answers": answers })
}

fn via(v: Via) -> &'static str {
    match v {
        Via::Proved => "proved",
        Via::Memo => "memo",
        Via::Coinduction => "coinduction",
        Via::NoRules => "no-rules",
    }
}

/// One trace line per event, with atom and check names resolved.
pub fn trace_line(event: &Event, atoms: &AtomTable, checks: &CheckProgram, format: Format) -> String {
    let lit = |l: dccasp::Literal| l.display(atoms).to_string();
    let chk = |c: dccasp::CheckId| checks.subcheck(c).name.clone();
    if format == Format::Json {
        let v = match *event {
            Event::Call { literal, depth } => json!({ "event": "call", "literal": lit(literal), "depth": depth }),
            Event::Succeed { literal, via: v } => json!({ "event": "succeed", "literal": lit(literal), "via": via(v) }),
            Event::Fail { literal } => json!({ "event": "fail", "literal": lit(literal) }),
            Event::Activate { check } => json!({ "event": "activate", "check": chk(check) }),
            Event::Check { check } => json!({ "event": "check", "check": chk(check) }),
            Event::Answer => json!({ "event": "answer" }),
        };
        return v.to_string();
    }
    match *event {
        Event::Call { literal, depth } => format!("call {} [{depth}]", lit(literal)),
        Event::Succeed { literal, via: v } => format!("succeed {} ({})", lit(literal), via(v)),
        Event::Fail { literal } => format!("fail {}", lit(literal)),
        Event::Activate { check } => format!("activate {}", chk(check)),
        Event::Check { check } => format!("check {}", chk(check)),
        Event::Answer => "answer".to_owned(),
    }
}
