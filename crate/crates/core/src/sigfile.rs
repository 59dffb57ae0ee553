//! Line-based signature files.
//!
//! ```text
//! signature <name> [novars]
//! ctor <name> [a1,a2,...]
//! family <name> min=<k> [max=<k>] arity=<piece>(;<piece>)*
//! ```
//!
//! A piece is `lit(a1,...)` or `rep(<entry>, <a>*i+<b>)`. `#` starts a
//! comment. The `signature` line must come first.

use crate::signature::{
    Affine, Arity, BindingSignature, CtorSpec, FamilySpec, SignatureError, TemplatePiece,
};

fn err(line: usize, message: impl Into<String>) -> SignatureError {
    SignatureError::Parse { line, message: message.into() }
}

fn parse_nat(line: usize, s: &str) -> Result<usize, SignatureError> {
    let s = s.trim();
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(line, format!("expected a natural number, found `{s}`")));
    }
    s.parse().map_err(|_| err(line, format!("number `{s}` is too large")))
}

fn parse_nat_list(line: usize, s: &str) -> Result<Vec<usize>, SignatureError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| parse_nat(line, x)).collect()
}

fn parse_affine(line: usize, s: &str) -> Result<Affine, SignatureError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (lhs, offset) = compact
        .split_once('+')
        .ok_or_else(|| err(line, format!("expected `<a>*i+<b>`, found `{s}`")))?;
    let coeff = lhs
        .strip_suffix("*i")
        .ok_or_else(|| err(line, format!("expected `<a>*i+<b>`, found `{s}`")))?;
    Ok(Affine { coeff: parse_nat(line, coeff)?, offset: parse_nat(line, offset)? })
}

fn parse_piece(line: usize, s: &str) -> Result<TemplatePiece, SignatureError> {
    let s = s.trim();
    let body = |prefix: &str| {
        s.strip_prefix(prefix)
            .and_then(|rest| rest.trim_start().strip_prefix('('))
            .and_then(|rest| rest.strip_suffix(')'))
    };
    if let Some(inner) = body("lit") {
        return Ok(TemplatePiece::Lit(parse_nat_list(line, inner)?));
    }
    if let Some(inner) = body("rep") {
        let (entry, count) = inner
            .split_once(',')
            .ok_or_else(|| err(line, format!("expected `rep(<entry>, <a>*i+<b>)`, found `{s}`")))?;
        return Ok(TemplatePiece::Repeat {
            entry: parse_nat(line, entry)?,
            count: parse_affine(line, count)?,
        });
    }
    Err(err(line, format!("unknown template piece `{s}`")))
}

fn parse_family(line: usize, rest: &str) -> Result<FamilySpec, SignatureError> {
    let rest = rest.trim();
    let (name, mut rest) = rest
        .split_once(char::is_whitespace)
        .ok_or_else(|| err(line, "family needs min= and arity="))?;
    let mut min = None;
    let mut max = None;
    loop {
        rest = rest.trim_start();
        if let Some(v) = rest.strip_prefix("arity=") {
            let min = min.ok_or_else(|| err(line, "family is missing min="))?;
            let mut template: Vec<TemplatePiece> =
                v.split(';').map(|p| parse_piece(line, p)).collect::<Result<_, _>>()?;
            template.retain(|p| *p != TemplatePiece::Lit(Vec::new()));
            return Ok(FamilySpec { name: name.to_string(), param_min: min, param_max: max, template });
        }
        let (word, tail) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
        if let Some(v) = word.strip_prefix("min=") {
            min = Some(parse_nat(line, v)?);
        } else if let Some(v) = word.strip_prefix("max=") {
            max = Some(parse_nat(line, v)?);
        } else if word.is_empty() {
            return Err(err(line, "family is missing arity="));
        } else {
            return Err(err(line, format!("unexpected family attribute `{word}`")));
        }
        rest = tail;
    }
}

pub(crate) fn parse_signature(text: &str) -> Result<BindingSignature, SignatureError> {
    let mut header: Option<(String, bool)> = None;
    let mut ctors = Vec::new();
    let mut families = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (directive, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        match directive {
            "signature" => {
                if header.is_some() {
                    return Err(err(line, "duplicate signature line"));
                }
                let words: Vec<&str> = rest.split_whitespace().collect();
                header = match words.as_slice() {
                    [name] => Some((name.to_string(), true)),
                    [name, "novars"] => Some((name.to_string(), false)),
                    _ => return Err(err(line, "expected `signature <name> [novars]`")),
                };
            }
            "ctor" | "family" if header.is_none() => {
                return Err(err(line, "`signature` line must come first"));
            }
            "ctor" => {
                let rest = rest.trim();
                let (name, arity) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| err(line, "expected `ctor <name> [a1,...]`"))?;
                let inner = arity
                    .trim()
                    .strip_prefix('[')
                    .and_then(|a| a.strip_suffix(']'))
                    .ok_or_else(|| err(line, format!("expected an arity list, found `{}`", arity.trim())))?;
                ctors.push(CtorSpec { name: name.to_string(), arity: Arity::new(parse_nat_list(line, inner)?) });
            }
            "family" => families.push(parse_family(line, rest)?),
            other => return Err(err(line, format!("unknown directive `{other}`"))),
        }
    }
    let (name, with_variables) = header.ok_or_else(|| err(1, "missing `signature` line"))?;
    BindingSignature::new(name, ctors, families, with_variables)
}

pub(crate) fn render_signature(sig: &BindingSignature) -> String {
    let mut out = format!("signature {}{}\n", sig.name(), if sig.with_variables() { "" } else { " novars" });
    for c in sig.ctors() {
        out.push_str(&format!("ctor {} {}\n", c.name, c.arity));
    }
    for f in sig.families() {
        out.push_str(&format!("family {} min={}", f.name, f.param_min));
        if let Some(max) = f.param_max {
            out.push_str(&format!(" max={max}"));
        }
        out.push_str(&format!(" arity={}\n", f.template_text()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::{mltt79, CtorId};

    #[test]
    fn parses_lc() {
        let sig = BindingSignature::parse("signature LC\nctor app [0,0]\nctor abs [1] # binder\n").unwrap();
        assert_eq!(sig, crate::signature::lambda_calculus());
    }

    #[test]
    fn parses_families() {
        let text = "signature F novars\nctor nil []\nfamily cons min=0 max=2 arity=lit(0)\n\
                    family R min=1 arity=lit(2);rep(0, 1*i+1)\n";
        let sig = BindingSignature::parse(text).unwrap();
        assert!(!sig.with_variables());
        assert_eq!(sig.arity_of(&CtorId::family("R", 2)).unwrap().entries(), &[2, 0, 0, 0]);
        assert_eq!(sig.family("cons").unwrap().param_max, Some(2));
        assert_eq!(sig.arity_of(&CtorId::plain("nil")).unwrap().entries(), &[] as &[usize]);
    }

    #[test]
    fn render_round_trips() {
        let m = mltt79();
        assert_eq!(BindingSignature::parse(&m.to_file_text()).unwrap(), m);
    }

    #[test]
    fn rejects_malformed() {
        let bad = [
            "",
            "ctor app [0,0]",
            "signature X\nconstructor app [0]",
            "signature X\nctor app 0,0",
            "signature X\nctor app [0,x]",
            "signature X\nfamily R arity=lit()",
            "signature X\nfamily R min=0",
            "signature X\nfamily R min=0 arity=rep(0, i+1)",
            "signature X\nfamily R min=0 arity=foo(1)",
            "signature X\nfamily R min=0 colour=red arity=lit()",
            "signature X extra words",
            "signature X\nsignature Y",
        ];
        for text in bad {
            assert!(
                matches!(BindingSignature::parse(text), Err(SignatureError::Parse { .. })),
                "accepted {text:?}"
            );
        }
    }

    #[test]
    fn reports_line_numbers() {
        let e = BindingSignature::parse("signature X\n\n# c\nbogus").unwrap_err();
        assert_eq!(e, SignatureError::Parse { line: 4, message: "unknown directive `bogus`".into() });
    }
}
