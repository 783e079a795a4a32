//! Line-oriented UTF-8 corpus and concept files.
//!
//! Every format shares the same header block:
//!
//! ```text
//! #vocab sensors=<n> actuators=<m>
//! #symbols <name>:<s|a|t> ...      (optional; t = transmittable actuator)
//! ```
//!
//! Without `#symbols` the vocabulary is sensors `s0..` then actuators
//! `r0..`. Headers precede the body; a line that is just `#` or starts with
//! `# ` is a comment and blank lines are ignored. An empty bit string (a
//! channel with no symbols) is written `_`.
//!
//! | kind | body line |
//! |------|-----------|
//! | `.odc` | `<s-bits> <r-bits> <+\|->` |
//! | `.cpt` | `name=bit & name=bit`, or `TRUE`; no lines means FALSE |
//! | `.dlg` | `<s-bits> <r-bits> tokens=<a,b,...\|->` |
//! | `.nrm` | `#labelers <k>` header, then `<s-bits> <r-bits> <votes>` |
//! | `.obj` | `w <name> <int>`, `bias <int>`, `theta <int>` |

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::agency::ObjectiveFunction;
use crate::bits::Bits;
use crate::concept::{canonicalize, Concept, Implicant, Literal};
use crate::error::{Error, Result};
use crate::induction::OstensiveDefinition;
use crate::norms::{NormCorpus, Vote};
use crate::pss::{Channel, DecisionState, Vocabulary};
use crate::semiosis::{DialogueRecord, Lexicon, SymbolTriad};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusKind {
    Odc,
    Dlg,
    Nrm,
    Obj,
    Cpt,
}

impl CorpusKind {
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()? {
            "odc" => Some(CorpusKind::Odc),
            "dlg" => Some(CorpusKind::Dlg),
            "nrm" => Some(CorpusKind::Nrm),
            "obj" => Some(CorpusKind::Obj),
            "cpt" => Some(CorpusKind::Cpt),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    /// Reject non-canonical concept files.
    #[default]
    Strict,
    /// Re-canonicalize concept files.
    Lenient,
}

#[derive(Debug, Clone)]
pub struct LoadOptions {
    /// Closed-world reading of `.odc` files.
    pub closed_world: bool,
    pub mode: ParseMode,
    /// Vocabulary for formats whose header is optional (`.dlg`, `.obj`).
    pub vocab: Option<Arc<Vocabulary>>,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            closed_world: true,
            mode: ParseMode::Strict,
            vocab: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Corpus {
    Ostensive(OstensiveDefinition),
    Dialogue(Vec<DialogueRecord>),
    Norms(NormCorpus),
    Objective(ObjectiveFunction),
    Concept(Concept),
}

pub fn load_corpus(path: &Path, kind: CorpusKind, opts: &LoadOptions) -> Result<Corpus> {
    let text = read(path)?;
    Ok(match kind {
        CorpusKind::Odc => Corpus::Ostensive(parse_odc(&text, opts.closed_world)?),
        CorpusKind::Cpt => Corpus::Concept(parse_cpt(&text, opts.mode)?),
        CorpusKind::Nrm => Corpus::Norms(parse_nrm(&text)?),
        CorpusKind::Dlg => Corpus::Dialogue(parse_dlg(&text, opts.vocab.as_ref())?),
        CorpusKind::Obj => Corpus::Objective(parse_obj(&text, opts.vocab.as_ref())?.1),
    })
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn error(&self, column: usize, message: impl Into<String>) -> Error {
        Error::parse(self.number, column, message)
    }

    /// Whitespace-separated fields with their 1-based columns.
    fn fields(&self) -> Vec<(usize, &str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in self.text.char_indices() {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    out.push((s, &self.text[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s, &self.text[s..]));
        }
        out.into_iter()
            .map(|(byte, f)| (self.text[..byte].chars().count() + 1, f))
            .collect()
    }
}

/// Parsed header block plus the remaining body lines.
struct Document<'a> {
    vocab: Option<Arc<Vocabulary>>,
    extra: BTreeMap<String, (usize, String)>,
    body: Vec<Line<'a>>,
}

fn split_document<'a>(text: &'a str, extra_keys: &[&str]) -> Result<Document<'a>> {
    let mut counts: Option<(usize, usize, usize)> = None;
    let mut symbols: Option<(usize, Vec<(usize, String)>)> = None;
    let mut extra = BTreeMap::new();
    let mut body = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = Line {
            number: i + 1,
            text: raw.trim_end(),
        };
        let trimmed = line.text.trim_start();
        if trimmed.is_empty() || trimmed == "#" || trimmed.starts_with("# ") {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            if !body.is_empty() {
                return Err(line.error(1, "header after body lines"));
            }
            let fields = line.fields();
            let key = rest.split_whitespace().next().unwrap_or("");
            match key {
                "vocab" => counts = Some(parse_vocab_header(&line, &fields)?),
                "symbols" => {
                    symbols = Some((
                        line.number,
                        fields[1..].iter().map(|(c, f)| (*c, f.to_string())).collect(),
                    ))
                }
                k if extra_keys.contains(&k) => {
                    let value = fields[1..].iter().map(|(_, f)| *f).collect::<Vec<_>>().join(" ");
                    extra.insert(k.to_string(), (line.number, value));
                }
                other => return Err(line.error(1, format!("unknown header `#{other}`"))),
            }
            continue;
        }
        body.push(line);
    }
    let vocab = match (counts, symbols) {
        (None, None) => None,
        (None, Some((line, _))) => {
            return Err(Error::HeaderMismatch {
                line,
                message: "#symbols without #vocab".into(),
            })
        }
        (Some((_, s, a)), None) => Some(Arc::new(Vocabulary::with_default_names(s, a)?)),
        (Some((vline, s, a)), Some((line, syms))) => {
            Some(Arc::new(vocabulary_from_symbols(vline, s, a, line, &syms)?))
        }
    };
    Ok(Document { vocab, extra, body })
}

fn parse_vocab_header(line: &Line, fields: &[(usize, &str)]) -> Result<(usize, usize, usize)> {
    let mut sensors = None;
    let mut actuators = None;
    for &(col, f) in &fields[1..] {
        let (k, v) = f
            .split_once('=')
            .ok_or_else(|| line.error(col, format!("expected key=value, found `{f}`")))?;
        let n: usize = v
            .parse()
            .map_err(|_| line.error(col + k.len() + 1, format!("invalid count `{v}`")))?;
        match k {
            "sensors" => sensors = Some(n),
            "actuators" => actuators = Some(n),
            _ => return Err(line.error(col, format!("unknown key `{k}`"))),
        }
    }
    match (sensors, actuators) {
        (Some(s), Some(a)) => Ok((line.number, s, a)),
        _ => Err(line.error(1, "#vocab needs sensors= and actuators=")),
    }
}

fn vocabulary_from_symbols(
    vline: usize,
    sensors: usize,
    actuators: usize,
    line: usize,
    syms: &[(usize, String)],
) -> Result<Vocabulary> {
    let mut layout = Vec::new();
    for (col, f) in syms {
        let (name, kind) = f
            .rsplit_once(':')
            .ok_or_else(|| Error::parse(line, *col, format!("expected name:kind, found `{f}`")))?;
        let (channel, tx) = match kind {
            "s" => (Channel::Sensor, false),
            "a" => (Channel::Actuator, false),
            "t" => (Channel::Actuator, true),
            _ => return Err(Error::parse(line, *col, format!("unknown symbol kind `{kind}`"))),
        };
        layout.push((name, channel, tx));
    }
    let s = layout.iter().filter(|l| l.1 == Channel::Sensor).count();
    if s != sensors || layout.len() - s != actuators {
        return Err(Error::HeaderMismatch {
            line,
            message: format!(
                "#symbols lists {s} sensors and {} actuators but line {vline} declares {sensors} and {actuators}",
                layout.len() - s
            ),
        });
    }
    Vocabulary::from_layout(layout.iter().map(|(n, c, t)| (*n, *c, *t))).map_err(|e| Error::HeaderMismatch {
        line,
        message: e.to_string(),
    })
}

/// `#vocab` line, plus `#symbols` when the layout is not the default.
pub fn render_header(vocab: &Vocabulary) -> String {
    let mut out = format!(
        "#vocab sensors={} actuators={}\n",
        vocab.sensor_count(),
        vocab.actuator_count()
    );
    if !vocab.is_default_layout() {
        out.push_str("#symbols");
        for s in vocab.symbols() {
            let kind = match (s.channel, s.transmittable) {
                (Channel::Sensor, _) => "s",
                (Channel::Actuator, false) => "a",
                (Channel::Actuator, true) => "t",
            };
            let _ = write!(out, " {}:{kind}", s.name);
        }
        out.push('\n');
    }
    out
}

fn require_vocab(doc: &Document, supplied: Option<&Arc<Vocabulary>>) -> Result<Arc<Vocabulary>> {
    match (&doc.vocab, supplied) {
        (Some(own), Some(given)) if **own != **given => Err(Error::HeaderMismatch {
            line: 1,
            message: "file vocabulary differs from the expected vocabulary".into(),
        }),
        (_, Some(given)) => Ok(Arc::clone(given)),
        (Some(own), None) => Ok(Arc::clone(own)),
        (None, None) => Err(Error::parse(1, 1, "missing #vocab header")),
    }
}

fn bit_field(line: &Line, col: usize, field: &str, expected: usize, what: &str) -> Result<Bits> {
    let bits = if field == "_" {
        Bits::EMPTY
    } else {
        field.parse::<Bits>().map_err(|e| match e {
            Error::Parse { column, message, .. } => line.error(col + column - 1, message),
            other => other,
        })?
    };
    if bits.len() != expected {
        return Err(line.error(
            col,
            format!("{what} `{field}` has {} bits, expected {expected}", bits.len()),
        ));
    }
    Ok(bits)
}

fn bits_text(b: Bits) -> String {
    if b.is_empty() {
        "_".into()
    } else {
        b.to_string()
    }
}

/// The situation and response fields every state line starts with.
fn state_fields(line: &Line, vocab: &Vocabulary, arity: usize) -> Result<(Bits, Vec<(usize, String)>)> {
    let fields = line.fields();
    if fields.len() != arity {
        return Err(line.error(
            fields.get(arity).map_or(line.text.chars().count() + 1, |f| f.0),
            format!("expected {arity} fields, found {}", fields.len()),
        ));
    }
    let s = bit_field(line, fields[0].0, fields[0].1, vocab.sensor_count(), "situation")?;
    let r = bit_field(line, fields[1].0, fields[1].1, vocab.actuator_count(), "response")?;
    let d = vocab.compose_bits(s, r)?;
    Ok((d, fields[2..].iter().map(|(c, f)| (*c, f.to_string())).collect()))
}

pub fn parse_odc(text: &str, closed_world: bool) -> Result<OstensiveDefinition> {
    let doc = split_document(text, &[])?;
    let vocab = require_vocab(&doc, None)?;
    let mut labels: BTreeMap<Bits, bool> = BTreeMap::new();
    let mut covered = BTreeSet::new();
    for line in &doc.body {
        let (d, rest) = state_fields(line, &vocab, 3)?;
        let (col, label) = &rest[0];
        let positive = match label.as_str() {
            "+" => true,
            "-" => false,
            other => return Err(line.error(*col, format!("expected + or -, found `{other}`"))),
        };
        if labels.insert(d, positive).is_some_and(|prev| prev != positive) {
            return Err(Error::DuplicateState {
                line: line.number,
                state: d.to_string(),
            });
        }
        covered.insert(vocab.project_bits(d, Channel::Sensor));
    }
    let positives = labels.iter().filter(|(_, p)| **p).map(|(d, _)| *d);
    let negatives = labels.iter().filter(|(_, p)| !**p).map(|(d, _)| *d);
    OstensiveDefinition::new(vocab, covered, positives, negatives, closed_world)
}

/// Positives as `+` lines and, in explicit mode, negatives as `-` lines. A
/// closed-world situation with no positive is kept covered by listing its
/// responses as `-`.
pub fn render_odc(o: &OstensiveDefinition) -> String {
    let vocab = o.vocabulary();
    let mut out = render_header(vocab);
    let mut lines: Vec<(Bits, char)> = o.positive_assignments().iter().map(|d| (*d, '+')).collect();
    lines.extend(o.explicit_negative_assignments().iter().map(|d| (*d, '-')));
    if o.is_closed_world() {
        let with_positive: BTreeSet<Bits> = o
            .positive_assignments()
            .iter()
            .map(|d| vocab.project_bits(*d, Channel::Sensor))
            .collect();
        for s in o.covered_situations().difference(&with_positive) {
            for r in Bits::all(vocab.actuator_count()) {
                lines.push((vocab.compose_bits(*s, r).expect("lengths validated"), '-'));
            }
        }
    }
    lines.sort();
    for (d, label) in lines {
        let _ = writeln!(
            out,
            "{} {} {label}",
            bits_text(vocab.project_bits(d, Channel::Sensor)),
            bits_text(vocab.project_bits(d, Channel::Actuator))
        );
    }
    out
}

pub fn parse_cpt(text: &str, mode: ParseMode) -> Result<Concept> {
    let doc = split_document(text, &[])?;
    let vocab = require_vocab(&doc, None)?;
    let mut implicants = Vec::new();
    for line in &doc.body {
        let trimmed = line.text.trim();
        if trimmed == "TRUE" {
            implicants.push(Implicant::TRUE);
            continue;
        }
        let mut literals = Vec::new();
        let mut col = line.text.len() - line.text.trim_start().len() + 1;
        for part in line.text.trim_start().split('&') {
            let lead = part.len() - part.trim_start().len();
            let lit = part.trim();
            let at = col + lead;
            let (name, bit) = lit
                .split_once('=')
                .ok_or_else(|| line.error(at, format!("expected name=bit, found `{lit}`")))?;
            let index = vocab
                .index_of(name.trim())
                .ok_or_else(|| line.error(at, format!("unknown symbol `{}`", name.trim())))?;
            let polarity = match bit.trim() {
                "0" => false,
                "1" => true,
                other => return Err(line.error(at, format!("expected 0 or 1, found `{other}`"))),
            };
            literals.push((at, Literal::new(index, polarity)));
            col += part.chars().count() + 1;
        }
        if mode == ParseMode::Strict {
            if let Some(w) = literals.windows(2).find(|w| w[0].1.index >= w[1].1.index) {
                return Err(line.error(w[1].0, "literals not in ascending symbol order"));
            }
        }
        let imp = Implicant::from_literals(literals.iter().map(|l| l.1)).map_err(|e| line.error(1, e.to_string()))?;
        implicants.push(imp);
    }
    let raw = Concept::raw(vocab, implicants)?;
    match mode {
        ParseMode::Lenient => Ok(canonicalize(&raw)),
        ParseMode::Strict => {
            let canon = canonicalize(&raw);
            if let Some(pos) = raw
                .implicants()
                .iter()
                .zip(canon.implicants())
                .position(|(a, b)| a != b)
                .or_else(|| (raw.implicants().len() != canon.implicants().len()).then(|| canon.implicants().len()))
            {
                let line = doc.body.get(pos).map_or(1, |l| l.number);
                return Err(Error::parse(line, 1, "implicants not in canonical form"));
            }
            Ok(raw)
        }
    }
}

/// Header plus one canonical implicant per line.
pub fn render_concept(c: &Concept) -> String {
    let c = canonicalize(c);
    let mut out = render_header(c.vocabulary());
    for imp in c.implicants() {
        out.push_str(&imp.render(c.vocabulary()));
        out.push('\n');
    }
    out
}

pub fn save_concept(c: &Concept, path: &Path) -> Result<()> {
    write(path, &render_concept(c))
}

pub fn parse_dlg(text: &str, vocab: Option<&Arc<Vocabulary>>) -> Result<Vec<DialogueRecord>> {
    let doc = split_document(text, &[])?;
    let vocab = require_vocab(&doc, vocab)?;
    doc.body
        .iter()
        .map(|line| {
            let (d, rest) = state_fields(line, &vocab, 3)?;
            let (col, field) = &rest[0];
            let list = field
                .strip_prefix("tokens=")
                .ok_or_else(|| line.error(*col, format!("expected tokens=..., found `{field}`")))?;
            let tokens = if list == "-" {
                BTreeSet::new()
            } else {
                list.split(',')
                    .map(|t| {
                        if t.is_empty() {
                            Err(line.error(*col, "empty token"))
                        } else {
                            Ok(t.to_string())
                        }
                    })
                    .collect::<Result<_>>()?
            };
            Ok(DialogueRecord {
                state: DecisionState::new(Arc::clone(&vocab), d)?,
                tokens,
            })
        })
        .collect()
}

pub fn render_dlg(records: &[DialogueRecord]) -> String {
    let mut out = String::new();
    if let Some(first) = records.first() {
        out.push_str(&render_header(first.state.vocabulary()));
    }
    for r in records {
        let tokens = if r.tokens.is_empty() {
            "-".to_string()
        } else {
            r.tokens.iter().cloned().collect::<Vec<_>>().join(",")
        };
        let _ = writeln!(
            out,
            "{} {} tokens={tokens}",
            bits_text(r.state.situation()),
            bits_text(r.state.response())
        );
    }
    out
}

pub fn parse_nrm(text: &str) -> Result<NormCorpus> {
    let doc = split_document(text, &["labelers"])?;
    let vocab = require_vocab(&doc, None)?;
    let (kline, k) = doc
        .extra
        .get("labelers")
        .ok_or_else(|| Error::parse(1, 1, "missing #labelers header"))?;
    let k: usize = k
        .parse()
        .map_err(|_| Error::parse(*kline, 11, format!("invalid labeller count `{k}`")))?;
    let mut corpus = NormCorpus::new(vocab.clone(), k);
    for line in &doc.body {
        let (d, rest) = state_fields(line, &vocab, 3)?;
        let (col, field) = &rest[0];
        let votes = field
            .chars()
            .enumerate()
            .map(|(i, c)| Vote::from_char(c).ok_or_else(|| line.error(col + i, format!("invalid vote `{c}`"))))
            .collect::<Result<Vec<_>>>()?;
        if votes.len() != k {
            return Err(line.error(*col, format!("{} votes, expected {k}", votes.len())));
        }
        if corpus.votes().contains_key(&d) {
            return Err(Error::DuplicateState {
                line: line.number,
                state: d.to_string(),
            });
        }
        corpus.insert(d, votes)?;
    }
    Ok(corpus)
}

pub fn render_nrm(n: &NormCorpus) -> String {
    let vocab = n.vocabulary();
    let mut out = render_header(vocab);
    let _ = writeln!(out, "#labelers {}", n.labelers());
    for (d, votes) in n.votes() {
        let v: String = votes.iter().map(|v| v.as_char()).collect();
        let _ = writeln!(
            out,
            "{} {} {v}",
            bits_text(vocab.project_bits(*d, Channel::Sensor)),
            bits_text(vocab.project_bits(*d, Channel::Actuator))
        );
    }
    out
}

/// Returns the vocabulary the names were resolved against with the function.
pub fn parse_obj(text: &str, vocab: Option<&Arc<Vocabulary>>) -> Result<(Arc<Vocabulary>, ObjectiveFunction)> {
    let doc = split_document(text, &[])?;
    let vocab = require_vocab(&doc, vocab)?;
    let mut f = ObjectiveFunction::default();
    for line in &doc.body {
        let fields = line.fields();
        let int = |(col, s): (usize, &str)| -> Result<i64> {
            s.parse().map_err(|_| line.error(col, format!("invalid integer `{s}`")))
        };
        match fields.as_slice() {
            [(_, "w"), (ncol, name), value] => {
                let i = vocab
                    .index_of(name)
                    .ok_or_else(|| line.error(*ncol, format!("unknown symbol `{name}`")))?;
                if f.weights.insert(i, int(*value)?).is_some() {
                    return Err(line.error(*ncol, format!("weight for `{name}` given twice")));
                }
            }
            [(_, "bias"), value] => f.bias = int(*value)?,
            [(_, "theta"), value] => f.threshold = int(*value)?,
            _ => return Err(line.error(1, "expected `w <name> <int>`, `bias <int>` or `theta <int>`")),
        }
    }
    Ok((vocab, f))
}

pub fn render_obj(f: &ObjectiveFunction, vocab: &Vocabulary) -> String {
    let mut out = render_header(vocab);
    for (i, w) in &f.weights {
        let _ = writeln!(out, "w {} {w}", vocab.symbols()[*i].name);
    }
    let _ = writeln!(out, "bias {}", f.bias);
    let _ = writeln!(out, "theta {}", f.threshold);
    out
}

pub const LEXICON_VOCAB_FILE: &str = "lexicon.voc";

/// Writes `lexicon.voc`, `<token>.cpt` and `memory/<token>.odc` for every
/// symbol. Existing files for other tokens are left alone.
pub fn save_lexicon(lex: &Lexicon, dir: &Path) -> Result<()> {
    let memory = dir.join("memory");
    fs::create_dir_all(&memory).map_err(|e| Error::io(&memory, e))?;
    write(&dir.join(LEXICON_VOCAB_FILE), &render_header(lex.vocabulary()))?;
    for t in lex.triads() {
        save_triad(t, dir)?;
    }
    Ok(())
}

pub fn save_triad(t: &SymbolTriad, dir: &Path) -> Result<()> {
    let memory = dir.join("memory");
    fs::create_dir_all(&memory).map_err(|e| Error::io(&memory, e))?;
    write(&dir.join(format!("{}.cpt", t.token())), &render_concept(t.interpretant()))?;
    let vocab = t.interpretant().vocabulary();
    let o = OstensiveDefinition::explicit(Arc::clone(vocab), t.memory_assignments().iter().copied(), [])?;
    write(&memory.join(format!("{}.odc", t.token())), &render_odc(&o))
}

pub fn load_lexicon(dir: &Path) -> Result<Lexicon> {
    let voc_path = dir.join(LEXICON_VOCAB_FILE);
    let doc_text = read(&voc_path)?;
    let vocab = require_vocab(&split_document(&doc_text, &[])?, None)?;
    let mut lex = Lexicon::new(Arc::clone(&vocab));
    let mut cpts: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "cpt"))
        .collect();
    cpts.sort();
    for path in cpts {
        let token = path
            .file_stem()
            .and_then(|s| s.to_str())
            .ok_or_else(|| Error::InvalidToken(path.display().to_string()))?
            .to_string();
        let c = parse_cpt(&read(&path)?, ParseMode::Strict)?;
        if *c.vocabulary() != vocab {
            return Err(Error::HeaderMismatch {
                line: 1,
                message: format!("{} uses a different vocabulary", path.display()),
            });
        }
        let c = Concept::raw(Arc::clone(&vocab), c.implicants().to_vec())?;
        let mem_path = dir.join("memory").join(format!("{token}.odc"));
        let memory = if mem_path.exists() {
            parse_odc(&read(&mem_path)?, false)?.positive_assignments().clone()
        } else {
            BTreeSet::new()
        };
        lex.insert(SymbolTriad::from_parts(&token, c, memory)?)?;
    }
    Ok(lex)
}
