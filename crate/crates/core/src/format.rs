//! Line-oriented text format for instances and matchings.
//!
//! ```text
//! popmatch v1
//! # id weight : groups, best first; ( ... ) is a tie group
//! x1 7 : A B C
//! x2 3 : ( A B ) C
//! ```
//!
//! Matchings list one `applicant job` pair per line, `-` for the last
//! resort, optionally preceded by a `POPULAR` verdict line.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::instance::{Instance, Matching, Weight};
use crate::Solution;

pub const HEADER: &str = "popmatch v1";

const RESERVED: [&str; 4] = ["-", ":", "(", ")"];

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn tokenize(line: &str) -> Vec<String> {
    line.replace('(', " ( ")
        .replace(')', " ) ")
        .split_whitespace()
        .map(str::to_string)
        .collect()
}

fn check_name(name: &str, line: usize, what: &str) -> Result<()> {
    if RESERVED.contains(&name) {
        return Err(parse_err(
            line,
            format!("`{name}` is reserved and cannot name {what}"),
        ));
    }
    Ok(())
}

fn parse_groups(tokens: &[String], line: usize) -> Result<Vec<Vec<String>>> {
    let mut groups = Vec::new();
    let mut open: Option<Vec<String>> = None;
    for tok in tokens {
        match (tok.as_str(), open.as_mut()) {
            ("(", None) => open = Some(Vec::new()),
            ("(", Some(_)) => return Err(parse_err(line, "nested `(`")),
            (")", None) => return Err(parse_err(line, "unmatched `)`")),
            (")", Some(group)) => {
                if group.is_empty() {
                    return Err(parse_err(line, "empty tie group"));
                }
                groups.push(std::mem::take(group));
                open = None;
            }
            (name, Some(group)) => {
                check_name(name, line, "a job")?;
                group.push(name.to_string());
            }
            (name, None) => {
                check_name(name, line, "a job")?;
                groups.push(vec![name.to_string()]);
            }
        }
    }
    if open.is_some() {
        return Err(parse_err(line, "unclosed `(`"));
    }
    let mut seen = HashSet::new();
    for job in groups.iter().flatten() {
        if !seen.insert(job.as_str()) {
            return Err(parse_err(line, format!("job `{job}` listed twice")));
        }
    }
    Ok(groups)
}

/// Parses an instance file. Jobs are declared by first use.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, HEADER)) => {}
        Some((line, other)) => {
            return Err(parse_err(
                line,
                format!("expected `{HEADER}`, found `{other}`"),
            ))
        }
        None => return Err(parse_err(1, format!("missing `{HEADER}` header"))),
    }
    let mut builder = Instance::builder();
    let mut names = HashSet::new();
    for (line, content) in lines {
        let tokens = tokenize(content);
        let colon = tokens
            .iter()
            .position(|t| t == ":")
            .ok_or_else(|| parse_err(line, "expected `<applicant> <weight> : <groups>`"))?;
        let [name, weight] = &tokens[..colon] else {
            return Err(parse_err(
                line,
                "expected `<applicant> <weight>` before `:`",
            ));
        };
        check_name(name, line, "an applicant")?;
        let weight: Weight = weight
            .parse()
            .map_err(|_| parse_err(line, format!("invalid weight `{weight}`")))?;
        if weight == 0 {
            return Err(parse_err(line, "weight must be at least 1"));
        }
        if !names.insert(name.clone()) {
            return Err(parse_err(
                line,
                format!("applicant `{name}` declared twice"),
            ));
        }
        let groups = parse_groups(&tokens[colon + 1..], line)?;
        builder = builder.applicant(name, weight, groups);
    }
    builder.build()
}

/// Renders an instance in the file format. Last-resort jobs are omitted.
pub fn render_instance(instance: &Instance) -> String {
    let mut out = format!("{HEADER}\n");
    for a in 0..instance.num_applicants() {
        let applicant = instance.applicant(a);
        write!(out, "{} {} :", applicant.name(), applicant.weight()).unwrap();
        for group in applicant.groups() {
            let jobs: Vec<&str> = group
                .iter()
                .filter(|&&q| !instance.is_last_resort(q))
                .map(|&q| instance.job(q).name())
                .collect();
            match jobs.as_slice() {
                [] => {}
                [one] => write!(out, " {one}").unwrap(),
                many => write!(out, " ( {} )", many.join(" ")).unwrap(),
            }
        }
        out.push('\n');
    }
    out
}

/// Parses a matching against `instance`. Applicants not listed hold their
/// last resort.
pub fn parse_matching(text: &str, instance: &Instance) -> Result<Matching> {
    let mut matching = Matching::empty(instance.num_applicants());
    let mut seen = HashSet::new();
    for (index, (line, content)) in content_lines(text).enumerate() {
        if index == 0 && content == "POPULAR" {
            continue;
        }
        if content == "NONE" {
            return Err(parse_err(line, "file holds no matching"));
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let [name, job] = tokens.as_slice() else {
            return Err(parse_err(line, "expected `<applicant> <job>`"));
        };
        let a = instance
            .applicant_id(name)
            .ok_or_else(|| parse_err(line, format!("unknown applicant `{name}`")))?;
        if !seen.insert(a) {
            return Err(parse_err(
                line,
                format!("applicant `{name}` assigned twice"),
            ));
        }
        if *job != "-" {
            let q = instance
                .job_id(job)
                .ok_or_else(|| parse_err(line, format!("unknown job `{job}`")))?;
            matching.set(a, Some(q));
        }
    }
    matching.validate(instance)?;
    Ok(matching)
}

/// Applicant-job lines sorted by applicant name, `-` for the last resort.
pub fn render_matching(matching: &Matching, instance: &Instance) -> String {
    let mut lines: Vec<(&str, &str)> = (0..instance.num_applicants())
        .map(|a| {
            let job = match matching.get(a) {
                Some(q) if !instance.is_last_resort(q) => instance.job(q).name(),
                _ => "-",
            };
            (instance.applicant(a).name(), job)
        })
        .collect();
    lines.sort_unstable();
    lines
        .into_iter()
        .map(|(a, j)| format!("{a} {j}\n"))
        .collect()
}

/// Verdict line (`POPULAR` or `NONE`) followed by the matching, if any.
pub fn render_solution(solution: &Solution, instance: &Instance) -> String {
    match solution {
        Solution::Popular(m) => format!("POPULAR\n{}", render_matching(m, instance)),
        Solution::NoPopularMatching => "NONE\n".to_string(),
    }
}
