//! Job files: one JSON document naming a field, groups, algebras, bimodules
//! and (optionally) a single command. Parsing collects every problem it
//! finds, each tagged with its JSON path, instead of stopping at the first.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{Map, Value};

pub const COMMANDS: [&str; 7] = ["simples", "pims", "cartan", "symmetric-form", "reciprocity", "robinson", "proof-chain"];

#[derive(Debug)]
pub struct ParseError {
    pub diagnostics: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.diagnostics.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<String>,
    /// Label of an ambient group the generators must lie in.
    pub subgroup_of: Option<String>,
}

/// Matrix entries as integer field codes, or a `[a,b;c,d]` literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixSpec {
    Rows(Vec<Vec<i64>>),
    Literal(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSpec {
    Group { group: String },
    Constants { unit: Vec<i64>, products: Vec<Vec<Vec<i64>>> },
    Matrix { n: usize },
    UpperTriangular { n: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BimoduleSpec {
    Restriction { group: String, subgroup: String },
    Regular { algebra: String },
    Explicit { alg_a: String, alg_b: String, dim: usize, left_action: Vec<MatrixSpec>, right_action: Vec<MatrixSpec> },
    /// `⊕ P(S)* ⊗_k P(T)` over the listed simple-index pairs.
    ProjectiveAtoms { alg_a: String, alg_b: String, pairs: Vec<(usize, usize)> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandArgs {
    pub algebra: Option<String>,
    pub group: Option<String>,
    pub subgroup: Option<String>,
    pub bimodule: Option<String>,
    pub s: Option<usize>,
    pub t: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub name: String,
    pub args: CommandArgs,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JobSpec {
    pub field: Option<String>,
    pub seed: Option<u64>,
    pub cap: Option<usize>,
    pub format: Option<String>,
    pub out: Option<String>,
    pub groups: BTreeMap<String, GroupSpec>,
    pub algebras: BTreeMap<String, AlgebraSpec>,
    pub bimodules: BTreeMap<String, BimoduleSpec>,
    pub command: Option<Command>,
}

struct Collector {
    errors: Vec<String>,
}

impl Collector {
    fn err(&mut self, path: &str, msg: impl fmt::Display) {
        self.errors.push(format!("{path}: {msg}"));
    }

    fn object<'a>(&mut self, v: &'a Value, path: &str) -> Option<&'a Map<String, Value>> {
        let o = v.as_object();
        if o.is_none() {
            self.err(path, "expected an object");
        }
        o
    }

    fn string(&mut self, o: &Map<String, Value>, key: &str, path: &str) -> Option<String> {
        match o.get(key) {
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => {
                self.err(&format!("{path}.{key}"), "expected a string");
                None
            }
            None => {
                self.err(path, format!("missing field `{key}`"));
                None
            }
        }
    }

    fn opt_string(&mut self, o: &Map<String, Value>, key: &str, path: &str) -> Option<String> {
        o.get(key)?;
        self.string(o, key, path)
    }

    fn uint(&mut self, v: &Value, path: &str) -> Option<u64> {
        let x = v.as_u64();
        if x.is_none() {
            self.err(path, "expected a non-negative integer");
        }
        x
    }

    fn int_list(&mut self, v: &Value, path: &str) -> Option<Vec<i64>> {
        let Some(arr) = v.as_array() else {
            self.err(path, "expected an array of integers");
            return None;
        };
        let mut out = Vec::with_capacity(arr.len());
        let mut ok = true;
        for (i, x) in arr.iter().enumerate() {
            match x.as_i64() {
                Some(n) => out.push(n),
                None => {
                    self.err(&format!("{path}[{i}]"), "expected an integer");
                    ok = false;
                }
            }
        }
        ok.then_some(out)
    }

    fn matrix(&mut self, v: &Value, path: &str) -> Option<MatrixSpec> {
        match v {
            Value::String(s) => Some(MatrixSpec::Literal(s.clone())),
            Value::Array(rows) => {
                let mut out = Vec::with_capacity(rows.len());
                for (i, r) in rows.iter().enumerate() {
                    out.push(self.int_list(r, &format!("{path}[{i}]"))?);
                }
                Some(MatrixSpec::Rows(out))
            }
            _ => {
                self.err(path, "expected a matrix literal string or an array of rows");
                None
            }
        }
    }

    fn matrices(&mut self, o: &Map<String, Value>, key: &str, path: &str) -> Option<Vec<MatrixSpec>> {
        let Some(v) = o.get(key) else {
            self.err(path, format!("missing field `{key}`"));
            return None;
        };
        let Some(arr) = v.as_array() else {
            self.err(&format!("{path}.{key}"), "expected an array of matrices");
            return None;
        };
        let mut out = Vec::new();
        let mut ok = true;
        for (i, m) in arr.iter().enumerate() {
            match self.matrix(m, &format!("{path}.{key}[{i}]")) {
                Some(m) => out.push(m),
                None => ok = false,
            }
        }
        ok.then_some(out)
    }

    fn unknown_keys(&mut self, o: &Map<String, Value>, allowed: &[&str], path: &str) {
        for k in o.keys() {
            if !allowed.contains(&k.as_str()) {
                self.err(path, format!("unknown field `{k}`"));
            }
        }
    }
}

/// Parse and validate a job document.
pub fn parse_jobspec(text: &str) -> Result<JobSpec, ParseError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ParseError {
        diagnostics: vec![format!("line {}, column {}: {e}", e.line(), e.column())],
    })?;
    let mut c = Collector { errors: Vec::new() };
    let job = parse_value(&value, &mut c);
    if let Some(job) = &job {
        check_references(job, &mut c);
    }
    match job {
        Some(job) if c.errors.is_empty() => Ok(job),
        _ => Err(ParseError { diagnostics: c.errors }),
    }
}

fn parse_value(value: &Value, c: &mut Collector) -> Option<JobSpec> {
    let root = c.object(value, "$")?;
    c.unknown_keys(root, &["field", "seed", "cap", "format", "out", "groups", "algebras", "bimodules", "command", "commands"], "$");
    let mut job = JobSpec {
        field: c.opt_string(root, "field", "$"),
        seed: root.get("seed").and_then(|v| c.uint(v, "$.seed")),
        cap: root.get("cap").and_then(|v| c.uint(v, "$.cap")).map(|x| x as usize),
        format: c.opt_string(root, "format", "$"),
        out: c.opt_string(root, "out", "$"),
        ..JobSpec::default()
    };
    if let Some(f) = &job.format {
        if f != "json" && f != "table" {
            c.err("$.format", format!("expected `json` or `table`, got `{f}`"));
        }
    }
    if let Some(groups) = root.get("groups").and_then(|v| c.object(v, "$.groups")) {
        for (label, v) in groups {
            let path = format!("$.groups.{label}");
            if let Some(g) = parse_group(v, &path, c) {
                job.groups.insert(label.clone(), g);
            }
        }
    }
    if let Some(algebras) = root.get("algebras").and_then(|v| c.object(v, "$.algebras")) {
        for (label, v) in algebras {
            let path = format!("$.algebras.{label}");
            if let Some(a) = parse_algebra(v, &path, c) {
                job.algebras.insert(label.clone(), a);
            }
        }
    }
    if let Some(bimodules) = root.get("bimodules").and_then(|v| c.object(v, "$.bimodules")) {
        for (label, v) in bimodules {
            let path = format!("$.bimodules.{label}");
            if let Some(b) = parse_bimodule(v, &path, c) {
                job.bimodules.insert(label.clone(), b);
            }
        }
    }
    if root.contains_key("commands") {
        c.err("$.commands", "a job runs exactly one command; use a single `command` object");
    }
    if let Some(v) = root.get("command") {
        job.command = parse_command(v, "$.command", c);
    }
    Some(job)
}

fn parse_group(v: &Value, path: &str, c: &mut Collector) -> Option<GroupSpec> {
    let o = c.object(v, path)?;
    c.unknown_keys(o, &["degree", "generators", "subgroup_of"], path);
    let degree = match o.get("degree") {
        Some(d) => c.uint(d, &format!("{path}.degree")),
        None => {
            c.err(path, "missing field `degree`");
            None
        }
    };
    let generators = match o.get("generators").map(|g| (g, g.as_array())) {
        Some((_, Some(arr))) => {
            let mut out = Vec::new();
            for (i, g) in arr.iter().enumerate() {
                match g.as_str() {
                    Some(s) => out.push(s.to_string()),
                    None => c.err(&format!("{path}.generators[{i}]"), "expected a permutation in cycle notation"),
                }
            }
            Some(out)
        }
        Some((_, None)) => {
            c.err(&format!("{path}.generators"), "expected an array of permutations");
            None
        }
        None => {
            c.err(path, "missing field `generators`");
            None
        }
    };
    let subgroup_of = c.opt_string(o, "subgroup_of", path);
    Some(GroupSpec { degree: degree? as usize, generators: generators?, subgroup_of })
}

fn parse_algebra(v: &Value, path: &str, c: &mut Collector) -> Option<AlgebraSpec> {
    let o = c.object(v, path)?;
    if o.contains_key("group") {
        c.unknown_keys(o, &["group"], path);
        return Some(AlgebraSpec::Group { group: c.string(o, "group", path)? });
    }
    if let Some(n) = o.get("matrix_algebra") {
        c.unknown_keys(o, &["matrix_algebra"], path);
        return Some(AlgebraSpec::Matrix { n: c.uint(n, &format!("{path}.matrix_algebra"))? as usize });
    }
    if let Some(n) = o.get("upper_triangular") {
        c.unknown_keys(o, &["upper_triangular"], path);
        return Some(AlgebraSpec::UpperTriangular { n: c.uint(n, &format!("{path}.upper_triangular"))? as usize });
    }
    if o.contains_key("structure_constants") || o.contains_key("unit") {
        c.unknown_keys(o, &["unit", "structure_constants"], path);
        let unit = match o.get("unit") {
            Some(u) => c.int_list(u, &format!("{path}.unit")),
            None => {
                c.err(path, "missing field `unit`");
                None
            }
        };
        let sc_path = format!("{path}.structure_constants");
        let products = match o.get("structure_constants").and_then(Value::as_array) {
            Some(rows) => {
                let mut out = Vec::new();
                let mut ok = true;
                for (i, row) in rows.iter().enumerate() {
                    match row.as_array() {
                        Some(cells) => {
                            let mut r = Vec::new();
                            for (j, cell) in cells.iter().enumerate() {
                                match c.int_list(cell, &format!("{sc_path}[{i}][{j}]")) {
                                    Some(v) => r.push(v),
                                    None => ok = false,
                                }
                            }
                            out.push(r);
                        }
                        None => {
                            c.err(&format!("{sc_path}[{i}]"), "expected an array of products");
                            ok = false;
                        }
                    }
                }
                ok.then_some(out)
            }
            None => {
                c.err(&sc_path, "expected a d x d x d array");
                None
            }
        };
        return Some(AlgebraSpec::Constants { unit: unit?, products: products? });
    }
    c.err(path, "expected one of `group`, `structure_constants`, `matrix_algebra`, `upper_triangular`");
    None
}

fn parse_bimodule(v: &Value, path: &str, c: &mut Collector) -> Option<BimoduleSpec> {
    let o = c.object(v, path)?;
    if let Some(r) = o.get("restriction_of") {
        c.unknown_keys(o, &["restriction_of"], path);
        let rp = format!("{path}.restriction_of");
        let ro = c.object(r, &rp)?;
        c.unknown_keys(ro, &["group", "subgroup"], &rp);
        let group = c.string(ro, "group", &rp);
        let subgroup = c.string(ro, "subgroup", &rp);
        return Some(BimoduleSpec::Restriction { group: group?, subgroup: subgroup? });
    }
    if o.contains_key("regular") {
        c.unknown_keys(o, &["regular"], path);
        return Some(BimoduleSpec::Regular { algebra: c.string(o, "regular", path)? });
    }
    if o.contains_key("projective_atoms") {
        c.unknown_keys(o, &["algA", "algB", "projective_atoms"], path);
        let alg_a = c.string(o, "algA", path);
        let alg_b = c.string(o, "algB", path);
        let ap = format!("{path}.projective_atoms");
        let mut pairs = Vec::new();
        match o["projective_atoms"].as_array() {
            Some(arr) => {
                for (i, p) in arr.iter().enumerate() {
                    match c.int_list(p, &format!("{ap}[{i}]")).as_deref() {
                        Some(&[s, t]) if s >= 0 && t >= 0 => pairs.push((s as usize, t as usize)),
                        Some(_) => c.err(&format!("{ap}[{i}]"), "expected a pair [s, t] of simple indices"),
                        None => {}
                    }
                }
            }
            None => c.err(&ap, "expected an array of [s, t] pairs"),
        }
        return Some(BimoduleSpec::ProjectiveAtoms { alg_a: alg_a?, alg_b: alg_b?, pairs });
    }
    c.unknown_keys(o, &["algA", "algB", "dim", "left_action", "right_action"], path);
    let alg_a = c.string(o, "algA", path);
    let alg_b = c.string(o, "algB", path);
    let dim = match o.get("dim") {
        Some(d) => c.uint(d, &format!("{path}.dim")),
        None => {
            c.err(path, "missing field `dim`");
            None
        }
    };
    let left = c.matrices(o, "left_action", path);
    let right = c.matrices(o, "right_action", path);
    Some(BimoduleSpec::Explicit {
        alg_a: alg_a?,
        alg_b: alg_b?,
        dim: dim? as usize,
        left_action: left?,
        right_action: right?,
    })
}

fn parse_command(v: &Value, path: &str, c: &mut Collector) -> Option<Command> {
    let o = c.object(v, path)?;
    if o.len() != 1 {
        c.err(path, format!("exactly one command is allowed, found {}", o.len()));
        return None;
    }
    let (name, args) = o.iter().next().expect("one entry");
    if !COMMANDS.contains(&name.as_str()) {
        c.err(path, format!("unknown command `{name}` (expected one of {})", COMMANDS.join(", ")));
        return None;
    }
    let ap = format!("{path}.{name}");
    let ao = c.object(args, &ap)?;
    c.unknown_keys(ao, &["algebra", "group", "subgroup", "bimodule", "s", "t"], &ap);
    let args = CommandArgs {
        algebra: c.opt_string(ao, "algebra", &ap),
        group: c.opt_string(ao, "group", &ap),
        subgroup: c.opt_string(ao, "subgroup", &ap),
        bimodule: c.opt_string(ao, "bimodule", &ap),
        s: ao.get("s").and_then(|x| c.uint(x, &format!("{ap}.s"))).map(|x| x as usize),
        t: ao.get("t").and_then(|x| c.uint(x, &format!("{ap}.t"))).map(|x| x as usize),
    };
    Some(Command { name: name.clone(), args })
}

/// Every label reference must resolve.
fn check_references(job: &JobSpec, c: &mut Collector) {
    let group = |c: &mut Collector, label: &str, path: &str| {
        if !job.groups.contains_key(label) {
            c.err(path, format!("unknown group `{label}`"));
        }
    };
    let algebra = |c: &mut Collector, label: &str, path: &str| {
        if !job.algebras.contains_key(label) {
            c.err(path, format!("unknown algebra `{label}`"));
        }
    };
    for (label, g) in &job.groups {
        if let Some(parent) = &g.subgroup_of {
            group(c, parent, &format!("$.groups.{label}.subgroup_of"));
        }
    }
    for (label, a) in &job.algebras {
        if let AlgebraSpec::Group { group: g } = a {
            group(c, g, &format!("$.algebras.{label}.group"));
        }
    }
    for (label, b) in &job.bimodules {
        let path = format!("$.bimodules.{label}");
        match b {
            BimoduleSpec::Restriction { group: g, subgroup: h } => {
                group(c, g, &format!("{path}.restriction_of.group"));
                group(c, h, &format!("{path}.restriction_of.subgroup"));
            }
            BimoduleSpec::Regular { algebra: a } => algebra(c, a, &format!("{path}.regular")),
            BimoduleSpec::Explicit { alg_a, alg_b, .. } | BimoduleSpec::ProjectiveAtoms { alg_a, alg_b, .. } => {
                algebra(c, alg_a, &format!("{path}.algA"));
                algebra(c, alg_b, &format!("{path}.algB"));
            }
        }
    }
    if let Some(cmd) = &job.command {
        let path = format!("$.command.{}", cmd.name);
        let a = &cmd.args;
        if let Some(x) = &a.algebra {
            algebra(c, x, &format!("{path}.algebra"));
        }
        if let Some(x) = &a.group {
            group(c, x, &format!("{path}.group"));
        }
        if let Some(x) = &a.subgroup {
            group(c, x, &format!("{path}.subgroup"));
        }
        if let Some(x) = &a.bimodule {
            if !job.bimodules.contains_key(x) {
                c.err(&format!("{path}.bimodule"), format!("unknown bimodule `{x}`"));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_robinson_job_is_valid() {
        let job = parse_jobspec(
            r#"{"field": "GF(3)",
                "groups": {"S3": {"degree": 3, "generators": ["(0 1)", "(0 1 2)"]},
                           "C3": {"degree": 3, "generators": ["(0 1 2)"], "subgroup_of": "S3"}},
                "command": {"robinson": {"group": "S3", "subgroup": "C3"}}}"#,
        )
        .unwrap();
        assert_eq!(job.command.unwrap().name, "robinson");
        assert_eq!(job.groups["C3"].subgroup_of.as_deref(), Some("S3"));
    }

    #[test]
    fn dangling_label_is_named() {
        let err = parse_jobspec(
            r#"{"groups": {"S3": {"degree": 3, "generators": ["(0 1)"]}},
                "command": {"robinson": {"group": "S3", "subgroup": "C7"}}}"#,
        )
        .unwrap_err();
        assert_eq!(err.diagnostics.len(), 1);
        assert!(err.diagnostics[0].contains("C7"), "{err}");
    }

    #[test]
    fn two_commands_are_rejected() {
        let err = parse_jobspec(r#"{"command": {"simples": {"algebra": "A"}, "cartan": {"algebra": "A"}}}"#).unwrap_err();
        assert!(err.diagnostics.iter().any(|d| d.contains("exactly one command")), "{err}");
    }

    #[test]
    fn all_errors_are_collected_with_paths() {
        let err = parse_jobspec(
            r#"{"groups": {"G": {"degree": "three", "generators": [1]}},
                "algebras": {"A": {"group": "H"}, "B": {"colour": 1}},
                "format": "xml"}"#,
        )
        .unwrap_err();
        let d = err.diagnostics.join("\n");
        for needle in ["$.groups.G.degree", "$.groups.G.generators[0]", "$.algebras.B", "$.format"] {
            assert!(d.contains(needle), "missing {needle} in\n{d}");
        }
    }

    #[test]
    fn syntax_errors_report_a_line() {
        let err = parse_jobspec("{\n  \"field\": \"GF(3)\",\n  oops\n}").unwrap_err();
        assert!(err.diagnostics[0].starts_with("line 3"), "{err}");
    }
}
