use std::path::{Path, PathBuf};

use assert_cmd::Command;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn posets() -> Command {
    Command::cargo_bin("posets").unwrap()
}

fn stdout_of(args: &[&str], file: &Path) -> String {
    let out = posets().args(args).arg(file).output().unwrap();
    assert!(
        out.status.success(),
        "posets {args:?} failed:\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json_of(args: &[&str], file: &Path) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let doc: Value = serde_json::from_str(&stdout_of(&full, file)).unwrap();
    assert_eq!(doc["schema_version"], 1);
    doc["result"].clone()
}

fn golden(name: &str, args: &[&str], input: &str) {
    let expected = std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/{name}.txt")),
    )
    .unwrap();
    let got = stdout_of(args, &fixture(input));
    assert_eq!(
        got.lines().collect::<Vec<_>>(),
        expected.lines().collect::<Vec<_>>(),
        "\noutput:\n{got}\nexpected:\n{expected}"
    );
}

#[test]
fn arrangement_goldens() {
    golden("arr-regions", &["arr", "regions"], "four-lines.txt");
    golden("arr-bounded", &["arr", "bounded"], "four-lines.txt");
    golden("arr-lattice", &["arr", "lattice"], "four-lines.txt");
    golden("arr-betti", &["arr", "betti"], "four-lines.txt");
    golden("arr-central", &["arr", "central"], "four-lines.txt");
}

#[test]
fn arrangement_numbers() {
    let a = fixture("four-lines.txt");
    assert_eq!(stdout_of(&["arr", "regions"], &a).trim(), "10");
    assert_eq!(stdout_of(&["arr", "bounded"], &a).trim(), "2");
    assert_eq!(stdout_of(&["arr", "betti"], &a).trim(), "1 4 5");
    let lattice = json_of(&["arr", "lattice"], &a);
    assert_eq!(lattice["rank_sizes"], serde_json::json!([1, 4, 4]));
    assert_eq!(lattice["elements"], 9);
    assert_eq!(lattice["covers"], 13);
    assert_eq!(
        stdout_of(&["arr", "central"], &fixture("axes.txt")).trim(),
        "true"
    );
}

#[test]
fn lcm_goldens() {
    golden("lcm-lattice", &["lcm", "lattice"], "five-gens.ideal");
    golden("lcm-betti", &["lcm", "betti"], "five-gens.ideal");
    golden(
        "lcm-betti-zero-multidegree",
        &["lcm", "betti", "--multidegree", "a^2*b^2*c^2*d"],
        "five-gens.ideal",
    );
    golden(
        "lcm-betti-index",
        &[
            "lcm",
            "betti",
            "--multidegree",
            "a^3*b^2*c*d",
            "--index",
            "2",
        ],
        "five-gens.ideal",
    );
}

#[test]
fn lcm_multigraded_values() {
    let m = fixture("five-gens.ideal");
    for i in ["1", "2", "3"] {
        let v = json_of(
            &[
                "lcm",
                "betti",
                "--multidegree",
                "a^2*b^2*c^2*d",
                "--index",
                i,
            ],
            &m,
        );
        assert_eq!(v["betti"], 0, "index {i}");
    }
    // β_{2,b} is the reduced H_0 of the open interval (1, b)
    let v = json_of(
        &[
            "lcm",
            "betti",
            "--multidegree",
            "a^3*b^2*c*d",
            "--index",
            "2",
        ],
        &m,
    );
    assert_eq!(v["betti"], 2);
    let l = json_of(&["lcm", "lattice"], &m);
    assert_eq!(l["elements"], 11);
    assert_eq!(l["covers"], 16);
    assert_eq!(l["top"], "a^3*b^2*c^2*d");
}

#[test]
fn hibi_goldens() {
    golden("hibi-gens", &["hibi", "gens"], "divisor12.poset");
    golden("hibi-betti", &["hibi", "betti"], "divisor12.poset");
    golden(
        "hibi-betti-json",
        &["--json", "hibi", "betti"],
        "divisor12.poset",
    );
}

#[test]
fn hibi_numbers() {
    let p = fixture("divisor12.poset");
    let gens = json_of(&["hibi", "gens"], &p);
    let degrees = gens["degrees"].as_array().unwrap();
    assert_eq!(degrees.len(), 10);
    assert!(degrees.iter().all(|d| d == 6));
    assert_eq!(stdout_of(&["hibi", "betti"], &p).trim(), "1 10 12 3");
    let betti = json_of(&["hibi", "betti"], &p);
    assert_eq!(
        betti["cover_tally"],
        serde_json::json!({"0": 1, "1": 6, "2": 3})
    );
    assert_eq!(betti["pdim"], 2);
    assert_eq!(betti["dilworth"], 2);
    assert_eq!(betti["pdim_equals_dilworth"], true);
}

#[test]
fn poset_goldens() {
    golden("poset-info", &["poset", "info"], "divisor12.poset");
    golden("poset-covers", &["poset", "covers"], "divisor12.poset");
    golden("poset-moebius", &["poset", "moebius"], "divisor12.poset");
    golden("poset-dilworth", &["poset", "dilworth"], "divisor12.poset");
    golden(
        "poset-distributive",
        &["poset", "distributive"],
        "divisor12.poset",
    );
}

#[test]
fn export_goldens() {
    golden(
        "export-dot",
        &["export", "--format", "dot"],
        "divisor12.poset",
    );
    golden(
        "export-tikz",
        &["export", "--format", "tikz"],
        "divisor12.poset",
    );
}

#[test]
fn input_errors_exit_one() {
    let out = posets()
        .args(["poset", "info"])
        .arg(fixture("cyclic.poset"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cycle"));

    let dir = tempdir();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "2\n1 1 0\n1 x 0\n").unwrap();
    let out = posets()
        .args(["arr", "regions"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");

    let bad = dir.join("bad.poset");
    std::fs::write(&bad, "{\"elements\": [\"a\",\n  \"b\" \"c\"]}").unwrap();
    let out = posets().args(["poset", "info"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    posets()
        .args(["arr", "regions", "/nonexistent/file"])
        .assert()
        .code(1);
    posets().args(["poset", "bogus", "x"]).assert().code(1);
    posets().args(["--help"]).assert().success();
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("posets-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

/// Lattice documents emitted with `--json` parse back as poset files.
#[test]
fn lattice_documents_round_trip() {
    let dir = tempdir();
    let cases = [
        (
            json_of(&["lcm", "lattice"], &fixture("five-gens.ideal")),
            11,
            16,
        ),
        (json_of(&["arr", "lattice"], &fixture("four-lines.txt")), 9, 13),
        (
            json_of(&["poset", "distributive"], &fixture("divisor12.poset")),
            10,
            12,
        ),
    ];
    for (k, (doc, n, covers)) in cases.into_iter().enumerate() {
        let path = dir.join(format!("lattice{k}.poset"));
        std::fs::write(&path, doc["lattice"].to_string()).unwrap();
        let info = json_of(&["poset", "info"], &path);
        assert_eq!(info["elements"], n);
        assert_eq!(info["covers"], covers);
        let relations = doc["lattice"]["relations"].as_array().unwrap();
        let covers_again = json_of(&["poset", "covers"], &path);
        assert_eq!(covers_again["covers"].as_array().unwrap(), relations);
    }
}

fn tikz_counts(text: &str) -> (usize, usize, usize) {
    let mut rows = Vec::new();
    let mut nodes = 0;
    for line in text.lines().filter(|l| l.contains("\\node")) {
        nodes += 1;
        let y = line.rsplit_once(',').unwrap().1;
        let y = y.split(')').next().unwrap().to_string();
        if !rows.contains(&y) {
            rows.push(y);
        }
    }
    let edges = text
        .lines()
        .find(|l| l.contains("\\foreach"))
        .map_or(0, |l| {
            let inner = l.split_once("in {").unwrap().1.split_once('}').unwrap().0;
            inner.split(',').count()
        });
    (nodes, rows.len(), edges)
}

#[test]
fn tikz_diagrams_have_the_expected_shape() {
    let dir = tempdir();
    let cases = [
        (
            json_of(&["arr", "lattice"], &fixture("four-lines.txt")),
            (9, 3, 13),
        ),
        (
            json_of(&["lcm", "lattice"], &fixture("five-gens.ideal")),
            (11, 5, 16),
        ),
    ];
    for (k, (doc, expected)) in cases.into_iter().enumerate() {
        let path = dir.join(format!("diagram{k}.poset"));
        std::fs::write(&path, doc["lattice"].to_string()).unwrap();
        let tikz = stdout_of(&["export", "--format", "tikz"], &path);
        assert_eq!(tikz_counts(&tikz), expected, "\n{tikz}");
    }
}

#[derive(Debug, PartialEq)]
enum Tok {
    Id(String),
    Punct(&'static str),
}

fn tokenize(text: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '"' {
            let mut s = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => return Err("unterminated string".into()),
                    Some('\\') => {
                        s.push(*chars.get(i + 1).ok_or("dangling escape")?);
                        i += 2;
                    }
                    Some('"') => {
                        i += 1;
                        break;
                    }
                    Some(&ch) => {
                        s.push(ch);
                        i += 1;
                    }
                }
            }
            out.push(Tok::Id(s));
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Tok::Punct("->"));
            i += 2;
        } else if let Some(p) = ["{", "}", "[", "]", ";", ",", "="]
            .iter()
            .find(|p| p.starts_with(c))
        {
            out.push(Tok::Punct(p));
            i += 1;
        } else if c.is_alphanumeric() || c == '_' || c == '.' || c == '-' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '.')
            {
                i += 1;
            }
            if i == start {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let numeral = word.trim_start_matches('-');
            let is_number =
                !numeral.is_empty() && numeral.chars().all(|ch| ch.is_ascii_digit() || ch == '.');
            let is_ident = !word.starts_with(|ch: char| ch.is_ascii_digit() || ch == '-');
            if !(is_number || is_ident) {
                return Err(format!("bad identifier {word}"));
            }
            out.push(Tok::Id(word));
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

/// Recursive-descent check of the DOT grammar: graph, stmt_list, node,
/// edge, attribute and subgraph statements, attribute lists.
struct DotParser {
    toks: Vec<Tok>,
    pos: usize,
}

impl DotParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn punct(&mut self, p: &str) -> Result<(), String> {
        match self.peek() {
            Some(Tok::Punct(q)) if *q == p => {
                self.pos += 1;
                Ok(())
            }
            other => Err(format!("expected {p}, found {other:?}")),
        }
    }

    fn at_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Some(Tok::Punct(q)) if *q == p)
    }

    fn id(&mut self) -> Result<String, String> {
        match self.peek() {
            Some(Tok::Id(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            other => Err(format!("expected identifier, found {other:?}")),
        }
    }

    fn graph(&mut self) -> Result<(), String> {
        if self.id()? != "digraph" {
            return Err("expected digraph".into());
        }
        if matches!(self.peek(), Some(Tok::Id(_))) {
            self.id()?;
        }
        self.punct("{")?;
        self.stmt_list()?;
        self.punct("}")?;
        if self.pos != self.toks.len() {
            return Err("trailing tokens".into());
        }
        Ok(())
    }

    fn stmt_list(&mut self) -> Result<(), String> {
        while !self.at_punct("}") {
            self.stmt()?;
            if self.at_punct(";") {
                self.pos += 1;
            }
        }
        Ok(())
    }

    fn stmt(&mut self) -> Result<(), String> {
        if self.at_punct("{") {
            return self.subgraph_body();
        }
        let head = self.id()?;
        if head == "subgraph" {
            if matches!(self.peek(), Some(Tok::Id(_))) {
                self.id()?;
            }
            return self.subgraph_body();
        }
        if ["graph", "node", "edge"].contains(&head.as_str()) {
            return self.attr_list();
        }
        if self.at_punct("=") {
            self.pos += 1;
            self.id()?;
            return Ok(());
        }
        while self.at_punct("->") {
            self.pos += 1;
            self.id()?;
        }
        if self.at_punct("[") {
            self.attr_list()?;
        }
        Ok(())
    }

    fn subgraph_body(&mut self) -> Result<(), String> {
        self.punct("{")?;
        self.stmt_list()?;
        self.punct("}")
    }

    fn attr_list(&mut self) -> Result<(), String> {
        self.punct("[")?;
        while !self.at_punct("]") {
            self.id()?;
            self.punct("=")?;
            self.id()?;
            if self.at_punct(",") || self.at_punct(";") {
                self.pos += 1;
            }
        }
        self.punct("]")
    }
}

fn check_dot(text: &str) -> Result<(usize, usize), String> {
    let toks = tokenize(text)?;
    let edges = toks.iter().filter(|t| **t == Tok::Punct("->")).count();
    let mut parser = DotParser { toks, pos: 0 };
    parser.graph()?;
    let nodes = text.lines().filter(|l| l.contains("[label=")).count();
    Ok((nodes, edges))
}

#[test]
fn dot_parser_rejects_malformed_graphs() {
    assert!(check_dot("digraph g { a -> b; }").is_ok());
    assert!(check_dot("digraph g { a -> ; }").is_err());
    assert!(check_dot("digraph g { a [label=\"x] }").is_err());
    assert!(check_dot("digraph g { a -> b;").is_err());
    assert!(check_dot("graph g { }").is_err());
}

#[test]
fn dot_exports_parse() {
    let dir = tempdir();
    let mut inputs = vec![(fixture("divisor12.poset"), 6, 7)];
    for (k, (doc, n, e)) in [
        (
            json_of(&["lcm", "lattice"], &fixture("five-gens.ideal")),
            11,
            16,
        ),
        (json_of(&["arr", "lattice"], &fixture("four-lines.txt")), 9, 13),
        (
            json_of(&["poset", "distributive"], &fixture("divisor12.poset")),
            10,
            12,
        ),
    ]
    .into_iter()
    .enumerate()
    {
        let path = dir.join(format!("dot{k}.poset"));
        std::fs::write(&path, doc["lattice"].to_string()).unwrap();
        inputs.push((path, n, e));
    }
    let chain = dir.join("chain.poset");
    std::fs::write(
        &chain,
        r#"{"elements": ["lo", "hi"], "relations": [["lo", "hi"]]}"#,
    )
    .unwrap();
    inputs.push((chain, 2, 1));
    for (path, n, e) in inputs {
        let dot = stdout_of(&["export", "--format", "dot"], &path);
        assert_eq!(check_dot(&dot), Ok((n, e)), "{}\n{dot}", path.display());
    }
}
