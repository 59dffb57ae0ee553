//! Binding signatures: a set of constructor names, each with an arity
//! listing how many variables every argument binds.
//!
//! Besides finitely many plain constructors a signature may declare
//! *families*: one constructor per natural parameter `i >= min`, whose arity
//! is given by a template that is affine in `i`. This covers syntaxes with
//! infinitely many constructors such as finite types `N_i` or universes
//! `U_i`, and finite constant sets such as `cons_a` for `a` in an alphabet.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("duplicate constructor name `{0}`")]
    DuplicateName(String),
    #[error("ill-formed template for family `{family}`: {reason}")]
    BadTemplate { family: String, reason: String },
    #[error("invalid identifier `{0}`")]
    InvalidName(String),
    #[error("cannot sum signature `{left}` with `{right}`: variable modes differ")]
    ModeMismatch { left: String, right: String },
    #[error("unknown constructor `{0}`")]
    UnknownCtor(String),
    #[error("parameter {param} out of range for family `{family}`")]
    ParamOutOfRange { family: String, param: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Number of extra bound variables for each argument of a constructor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Arity(Vec<usize>);

impl Arity {
    pub fn new(entries: Vec<usize>) -> Self {
        Arity(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_entry(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl From<Vec<usize>> for Arity {
    fn from(entries: Vec<usize>) -> Self {
        Arity(entries)
    }
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CtorSpec {
    pub name: String,
    pub arity: Arity,
}

impl CtorSpec {
    pub fn new(name: impl Into<String>, arity: impl Into<Arity>) -> Self {
        CtorSpec { name: name.into(), arity: arity.into() }
    }
}

/// `coeff * i + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Affine {
    pub coeff: usize,
    pub offset: usize,
}

impl Affine {
    pub fn eval(self, i: usize) -> usize {
        self.coeff * i + self.offset
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*i+{}", self.coeff, self.offset)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TemplatePiece {
    /// Literal arity entries copied verbatim.
    Lit(Vec<usize>),
    /// `count(i)` copies of `entry`.
    Repeat { entry: usize, count: Affine },
}

impl fmt::Display for TemplatePiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TemplatePiece::Lit(entries) => {
                write!(f, "lit(")?;
                for (i, a) in entries.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            TemplatePiece::Repeat { entry, count } => write!(f, "rep({entry}, {count})"),
        }
    }
}

/// A parameter-indexed constructor family.
///
/// Instances exist for `param_min <= i` and, when `param_max` is set,
/// `i <= param_max`. A bounded family is how a finite constant set (the
/// elements of a list alphabet, say) is expressed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: String,
    pub param_min: usize,
    pub param_max: Option<usize>,
    pub template: Vec<TemplatePiece>,
}

impl FamilySpec {
    pub fn new(name: impl Into<String>, param_min: usize, template: Vec<TemplatePiece>) -> Self {
        FamilySpec { name: name.into(), param_min, param_max: None, template }
    }

    pub fn bounded(mut self, param_max: usize) -> Self {
        self.param_max = Some(param_max);
        self
    }

    pub fn contains(&self, param: usize) -> bool {
        param >= self.param_min && self.param_max.is_none_or(|max| param <= max)
    }

    pub fn instantiate(&self, param: usize) -> Arity {
        let mut entries = Vec::new();
        for piece in &self.template {
            match piece {
                TemplatePiece::Lit(lit) => entries.extend_from_slice(lit),
                TemplatePiece::Repeat { entry, count } => {
                    entries.extend(std::iter::repeat_n(*entry, count.eval(param)))
                }
            }
        }
        Arity(entries)
    }

    pub fn template_text(&self) -> String {
        if self.template.is_empty() {
            return "lit()".to_string();
        }
        self.template.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(";")
    }
}

/// A constructor of a signature: a plain constructor name, or a family name
/// together with its parameter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CtorId {
    pub name: Arc<str>,
    pub param: Option<usize>,
}

impl CtorId {
    pub fn plain(name: &str) -> Self {
        CtorId { name: Arc::from(name), param: None }
    }

    pub fn family(name: &str, param: usize) -> Self {
        CtorId { name: Arc::from(name), param: Some(param) }
    }
}

impl fmt::Display for CtorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.param {
            Some(p) => write!(f, "{} {}", self.name, p),
            None => write!(f, "{}", self.name),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BindingSignature {
    name: String,
    ctors: Vec<CtorSpec>,
    families: Vec<FamilySpec>,
    with_variables: bool,
}

/// Constructor and family names: a letter or `_` followed by letters,
/// digits, `_`, `.` or `'`. The word `var` is reserved by the term syntax.
pub fn is_valid_ident(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    name != "var" && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '\''))
}

impl BindingSignature {
    pub fn new(
        name: impl Into<String>,
        ctors: Vec<CtorSpec>,
        families: Vec<FamilySpec>,
        with_variables: bool,
    ) -> Result<Self, SignatureError> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(SignatureError::InvalidName(name));
        }
        let mut seen = BTreeSet::new();
        let names = ctors.iter().map(|c| &c.name).chain(families.iter().map(|f| &f.name));
        for n in names {
            if !is_valid_ident(n) {
                return Err(SignatureError::InvalidName(n.clone()));
            }
            if !seen.insert(n.as_str()) {
                return Err(SignatureError::DuplicateName(n.clone()));
            }
        }
        for fam in &families {
            if let Some(max) = fam.param_max {
                if max < fam.param_min {
                    return Err(SignatureError::BadTemplate {
                        family: fam.name.clone(),
                        reason: format!("max={max} is below min={}", fam.param_min),
                    });
                }
            }
        }
        Ok(BindingSignature { name, ctors, families, with_variables })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ctors(&self) -> &[CtorSpec] {
        &self.ctors
    }

    pub fn families(&self) -> &[FamilySpec] {
        &self.families
    }

    pub fn with_variables(&self) -> bool {
        self.with_variables
    }

    pub fn family(&self, name: &str) -> Option<&FamilySpec> {
        self.families.iter().find(|f| f.name == name)
    }

    pub fn ctor(&self, name: &str) -> Option<&CtorSpec> {
        self.ctors.iter().find(|c| c.name == name)
    }

    pub fn arity_of(&self, c: &CtorId) -> Result<Arity, SignatureError> {
        match c.param {
            None => self
                .ctor(&c.name)
                .map(|spec| spec.arity.clone())
                .ok_or_else(|| SignatureError::UnknownCtor(c.name.to_string())),
            Some(param) => {
                let fam = self
                    .family(&c.name)
                    .ok_or_else(|| SignatureError::UnknownCtor(c.to_string()))?;
                if !fam.contains(param) {
                    return Err(SignatureError::ParamOutOfRange { family: fam.name.clone(), param });
                }
                Ok(fam.instantiate(param))
            }
        }
    }

    /// The finite part of the constructor set visible under `param_bound`.
    ///
    /// Plain constructors come first in declaration order, followed by
    /// family instances ordered by parameter and then by family declaration
    /// order. Raising `param_bound` therefore only appends to the list.
    pub fn enumerate_ctors(&self, param_bound: usize) -> Vec<CtorId> {
        let mut out: Vec<CtorId> = self.ctors.iter().map(|c| CtorId::plain(&c.name)).collect();
        for p in 0..=param_bound {
            for fam in &self.families {
                if fam.contains(p) {
                    out.push(CtorId::family(&fam.name, p));
                }
            }
        }
        out
    }

    /// Constructors with their arities, in `enumerate_ctors` order.
    pub fn ctor_table(&self, param_bound: usize) -> Vec<(CtorId, Arity)> {
        self.enumerate_ctors(param_bound)
            .into_iter()
            .map(|c| {
                let arity = self.arity_of(&c).expect("enumerated constructor has an arity");
                (c, arity)
            })
            .collect()
    }

    /// Largest arity entry among constructors visible under `param_bound`.
    pub fn max_arity_entry(&self, param_bound: usize) -> usize {
        self.ctor_table(param_bound).iter().map(|(_, a)| a.max_entry()).max().unwrap_or(0)
    }

    /// Disjoint union of the constructor sets.
    ///
    /// Names occurring on both sides are renamed to `left.<name>` and
    /// `right.<name>`; all other names are kept.
    pub fn sum(&self, other: &BindingSignature) -> Result<BindingSignature, SignatureError> {
        if self.with_variables != other.with_variables {
            return Err(SignatureError::ModeMismatch {
                left: self.name.clone(),
                right: other.name.clone(),
            });
        }
        let left_names: BTreeSet<&str> = self.all_names().collect();
        let right_names: BTreeSet<&str> = other.all_names().collect();
        let rename = |n: &str, prefix: &str, theirs: &BTreeSet<&str>| {
            if theirs.contains(n) {
                format!("{prefix}.{n}")
            } else {
                n.to_string()
            }
        };
        let mut ctors = Vec::new();
        let mut families = Vec::new();
        for (sig, prefix, theirs) in [(self, "left", &right_names), (other, "right", &left_names)] {
            for c in &sig.ctors {
                ctors.push(CtorSpec { name: rename(&c.name, prefix, theirs), arity: c.arity.clone() });
            }
            for f in &sig.families {
                families.push(FamilySpec { name: rename(&f.name, prefix, theirs), ..f.clone() });
            }
        }
        BindingSignature::new(
            format!("{}+{}", self.name, other.name),
            ctors,
            families,
            self.with_variables,
        )
    }

    fn all_names(&self) -> impl Iterator<Item = &str> {
        self.ctors.iter().map(|c| c.name.as_str()).chain(self.families.iter().map(|f| f.name.as_str()))
    }

    /// Parses the line-based signature file format.
    pub fn parse(text: &str) -> Result<BindingSignature, SignatureError> {
        crate::sigfile::parse_signature(text)
    }

    /// Renders the signature in the file format accepted by [`BindingSignature::parse`].
    pub fn to_file_text(&self) -> String {
        crate::sigfile::render_signature(self)
    }
}

/// Builds and validates a signature.
pub fn make_signature(
    name: &str,
    ctors: Vec<CtorSpec>,
    families: Vec<FamilySpec>,
    with_variables: bool,
) -> Result<BindingSignature, SignatureError> {
    BindingSignature::new(name, ctors, families, with_variables)
}

pub fn sum_signatures(
    left: &BindingSignature,
    right: &BindingSignature,
) -> Result<BindingSignature, SignatureError> {
    left.sum(right)
}

/// Untyped lambda calculus: `app : [0,0]`, `abs : [1]`.
pub fn lambda_calculus() -> BindingSignature {
    make_signature(
        "LC",
        vec![CtorSpec::new("app", vec![0, 0]), CtorSpec::new("abs", vec![1])],
        vec![],
        true,
    )
    .expect("LC signature is valid")
}

/// Lists over an alphabet of `alphabet` letters, without variables:
/// `nil : []` and the bounded family `cons a : [0]` for `a < alphabet`.
pub fn list_signature(alphabet: usize) -> BindingSignature {
    assert!(alphabet > 0, "alphabet must be nonempty");
    make_signature(
        &format!("List{alphabet}"),
        vec![CtorSpec::new("nil", vec![])],
        vec![FamilySpec::new("cons", 0, vec![TemplatePiece::Lit(vec![0])]).bounded(alphabet - 1)],
        false,
    )
    .expect("list signature is valid")
}

/// Binary trees with labelled nodes: `leaf : []`, `node a : [0,0]`.
pub fn bintree_signature(alphabet: usize) -> BindingSignature {
    assert!(alphabet > 0, "alphabet must be nonempty");
    make_signature(
        &format!("BinTree{alphabet}"),
        vec![CtorSpec::new("leaf", vec![])],
        vec![FamilySpec::new("node", 0, vec![TemplatePiece::Lit(vec![0, 0])]).bounded(alphabet - 1)],
        false,
    )
    .expect("binary tree signature is valid")
}

/// The signature whose only terms are variables.
pub fn empty_signature() -> BindingSignature {
    make_signature("Empty", vec![], vec![], true).expect("empty signature is valid")
}

fn plain(name: &str, ctors: &[(&str, &[usize])]) -> BindingSignature {
    make_signature(
        name,
        ctors.iter().map(|(n, a)| CtorSpec::new(*n, a.to_vec())).collect(),
        vec![],
        true,
    )
    .expect("builtin signature is valid")
}

pub fn pi_signature() -> BindingSignature {
    plain("Pi", &[("Pi", &[0, 1]), ("lam", &[1]), ("app", &[0, 0])])
}

pub fn sigma_signature() -> BindingSignature {
    plain("Sigma", &[("Sigma", &[0, 1]), ("pair", &[0, 0]), ("split", &[0, 2])])
}

pub fn sum_type_signature() -> BindingSignature {
    plain("Sum", &[("Plus", &[0, 0]), ("inl", &[0]), ("inr", &[0]), ("case", &[0, 1, 1])])
}

pub fn id_signature() -> BindingSignature {
    plain("Id", &[("Id", &[0, 0, 0]), ("refl", &[]), ("J", &[0, 0])])
}

/// Finite types. `Fin i : []`, `finrec i : (i+1) x 0`, and the elements
/// `j_i` for `j < i`, all nullary, as the family `fin_elem p` where
/// `p = i(i-1)/2 + j` enumerates the pairs `(i, j)` row by row.
pub fn fin_signature() -> BindingSignature {
    make_signature(
        "Fin",
        vec![],
        vec![
            FamilySpec::new("Fin", 0, vec![]),
            FamilySpec::new("fin_elem", 0, vec![]),
            FamilySpec::new(
                "finrec",
                0,
                vec![TemplatePiece::Repeat { entry: 0, count: Affine { coeff: 1, offset: 1 } }],
            ),
        ],
        true,
    )
    .expect("Fin signature is valid")
}

/// Decodes a `fin_elem` parameter into `(i, j)` with `j < i`.
pub fn fin_elem_pair(p: usize) -> (usize, usize) {
    let mut i = 1;
    let mut start = 0;
    while start + i <= p {
        start += i;
        i += 1;
    }
    (i, p - start)
}

pub fn nat_signature() -> BindingSignature {
    plain("Nat", &[("Nat", &[]), ("zero", &[]), ("succ", &[0]), ("natrec", &[0, 0, 2])])
}

pub fn w_signature() -> BindingSignature {
    plain("W", &[("W", &[0, 1]), ("sup", &[0, 0]), ("wrec", &[0, 3])])
}

pub fn universe_signature() -> BindingSignature {
    make_signature("U", vec![], vec![FamilySpec::new("U", 0, vec![])], true)
        .expect("universe signature is valid")
}

/// Raw syntax of Martin-Löf type theory: the sum of the Pi, Sigma, Sum, Id,
/// Fin, Nat, W and universe signatures.
pub fn mltt79() -> BindingSignature {
    let parts = [
        pi_signature(),
        sigma_signature(),
        sum_type_signature(),
        id_signature(),
        fin_signature(),
        nat_signature(),
        w_signature(),
        universe_signature(),
    ];
    let mut acc = parts[0].clone();
    for p in &parts[1..] {
        acc = acc.sum(p).expect("MLTT79 parts have disjoint names");
    }
    BindingSignature { name: "MLTT79".into(), ..acc }
}
