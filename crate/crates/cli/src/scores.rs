//! `label,score` CSV ingestion. Labels are `pos` or `neg`.

use synergy_core::roc::ScoreSample;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScoreFileError {
    #[error("line {line}: {message}")]
    Malformed { line: u64, message: String },

    #[error("no rows labeled {0:?}")]
    MissingClass(&'static str),
}

fn malformed(line: u64, message: impl Into<String>) -> ScoreFileError {
    ScoreFileError::Malformed {
        line,
        message: message.into(),
    }
}

pub fn parse(text: &str) -> Result<ScoreSample, ScoreFileError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());

    let headers = reader.headers().map_err(|e| malformed(1, e.to_string()))?;
    if headers.len() != 2 || &headers[0] != "label" || &headers[1] != "score" {
        return Err(malformed(1, "expected header `label,score`"));
    }

    let mut positives = Vec::new();
    let mut negatives = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            malformed(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != 2 {
            return Err(malformed(line, format!("expected 2 fields, found {}", record.len())));
        }
        let score: f64 = record[1]
            .parse()
            .map_err(|_| malformed(line, format!("cannot parse score {:?}", &record[1])))?;
        if !score.is_finite() {
            return Err(malformed(line, format!("score {:?} is not finite", &record[1])));
        }
        match &record[0] {
            "pos" => positives.push(score),
            "neg" => negatives.push(score),
            other => return Err(malformed(line, format!("unknown label {other:?}"))),
        }
    }
    if positives.is_empty() {
        return Err(ScoreFileError::MissingClass("pos"));
    }
    if negatives.is_empty() {
        return Err(ScoreFileError::MissingClass("neg"));
    }
    Ok(ScoreSample::new(positives, negatives).expect("classes non-empty and scores finite"))
}
