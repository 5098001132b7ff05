use thiserror::Error;

use super::formula::{Formula, Sym};
use super::meta::{is_metavariable_word, Metaformula};
use super::signature::Signature;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Notation {
    Prefix,
    Infix,
}

impl std::str::FromStr for Notation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "prefix" => Ok(Notation::Prefix),
            "infix" => Ok(Notation::Infix),
            other => Err(format!("unknown notation `{other}`")),
        }
    }
}

/// Positions are character offsets into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unreadable word `{word}` at {position}")]
    UnreadableWord { position: usize, word: String },
    #[error("arity mismatch at {position}: {detail}")]
    ArityMismatch { position: usize, detail: String },
    #[error("unbalanced parentheses at {position}")]
    UnbalancedParentheses { position: usize },
    #[error("unexpected `{found}` at {position}")]
    UnexpectedToken { position: usize, found: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Comma,
    Symbol(Sym),
    Var(String),
    Meta(String),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
    text: String,
}

fn word_len(chars: &[char], start: usize, head: impl Fn(char) -> bool) -> usize {
    if start < chars.len() && head(chars[start]) {
        1 + chars[start + 1..].iter().take_while(|c| c.is_ascii_digit()).count()
    } else {
        0
    }
}

fn tokenize(
    text: &str,
    sig: &Signature,
    notation: Notation,
    allow_meta: bool,
) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let spellings: Vec<(Vec<char>, Sym)> =
        sig.spellings().into_iter().map(|(s, c)| (s.chars().collect(), c)).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if notation == Notation::Infix {
            let punct = match c {
                '(' => Some(Tok::Open),
                ')' => Some(Tok::Close),
                ',' => Some(Tok::Comma),
                _ => None,
            };
            if let Some(tok) = punct {
                out.push(Token { tok, pos: i, text: c.to_string() });
                i += 1;
                continue;
            }
        }
        let sym = spellings
            .iter()
            .find(|(s, _)| chars[i..].starts_with(s))
            .map(|(s, c)| (s.len(), c.clone()));
        let var_len = {
            let n = word_len(&chars, i, |c| c.is_ascii_lowercase());
            let w: String = chars[i..i + n].iter().collect();
            if n > 0 && sig.is_variable(&w) {
                n
            } else {
                0
            }
        };
        let meta_len = if allow_meta {
            word_len(&chars, i, |c| is_metavariable_word(&c.to_string()))
        } else {
            0
        };
        let sym_len = sym.as_ref().map_or(0, |(n, _)| *n);
        let best = sym_len.max(var_len).max(meta_len);
        if best == 0 {
            let n = word_len(&chars, i, |c| c.is_alphabetic()).max(1);
            return Err(ParseError::UnreadableWord {
                position: i,
                word: chars[i..i + n].iter().collect(),
            });
        }
        let text: String = chars[i..i + best].iter().collect();
        let tok = if sym_len == best {
            Tok::Symbol(sym.expect("symbol match").1)
        } else if var_len == best {
            Tok::Var(text.clone())
        } else {
            Tok::Meta(text.clone())
        };
        out.push(Token { tok, pos: i, text });
        i += best;
    }
    Ok(out)
}

/// Shared parse tree before committing to object or meta language.
enum Node {
    Var(String),
    Meta(String),
    Const(Sym),
    App(Sym, Vec<Node>),
}

struct Parser<'a> {
    toks: Vec<Token>,
    at: usize,
    sig: &'a Signature,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.at)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn leaf(&self, t: &Token) -> Option<Node> {
        match &t.tok {
            Tok::Var(v) => Some(Node::Var(v.clone())),
            Tok::Meta(m) => Some(Node::Meta(m.clone())),
            Tok::Symbol(s) if self.sig.has_constant(s) => Some(Node::Const(s.clone())),
            _ => None,
        }
    }

    fn prefix(&mut self) -> Result<Node, ParseError> {
        let t = self.next().ok_or(ParseError::ArityMismatch {
            position: self.end,
            detail: "expected a formula, found end of input".into(),
        })?;
        if let Some(leaf) = self.leaf(&t) {
            return Ok(leaf);
        }
        let Tok::Symbol(op) = &t.tok else {
            return Err(ParseError::UnexpectedToken { position: t.pos, found: t.text });
        };
        let arity = self.sig.arity(op).expect("declared connective");
        let mut args = Vec::with_capacity(arity);
        for k in 0..arity {
            if self.peek().is_none() {
                return Err(ParseError::ArityMismatch {
                    position: t.pos,
                    detail: format!("`{op}` expects {arity} arguments, found {k}"),
                });
            }
            args.push(self.prefix()?);
        }
        Ok(Node::App(op.clone(), args))
    }

    fn infix(&mut self) -> Result<Node, ParseError> {
        let t = self.next().ok_or(ParseError::UnexpectedToken {
            position: self.end,
            found: "end of input".into(),
        })?;
        if let Some(leaf) = self.leaf(&t) {
            return Ok(leaf);
        }
        match &t.tok {
            Tok::Open => {
                let left = self.infix()?;
                let op = self.binary_op()?;
                let right = self.infix()?;
                match self.next() {
                    Some(Token { tok: Tok::Close, .. }) => Ok(Node::App(op, vec![left, right])),
                    None => Err(ParseError::UnbalancedParentheses { position: t.pos }),
                    Some(other) => {
                        Err(ParseError::UnexpectedToken { position: other.pos, found: other.text })
                    }
                }
            }
            Tok::Close => Err(ParseError::UnbalancedParentheses { position: t.pos }),
            Tok::Comma => Err(ParseError::UnexpectedToken { position: t.pos, found: t.text.clone() }),
            Tok::Symbol(op) => {
                let arity = self.sig.arity(op).expect("declared connective");
                match arity {
                    1 => Ok(Node::App(op.clone(), vec![self.infix()?])),
                    2 => Err(ParseError::ArityMismatch {
                        position: t.pos,
                        detail: format!("binary `{op}` must stand between parenthesized operands"),
                    }),
                    n => {
                        match self.next() {
                            Some(Token { tok: Tok::Open, .. }) => {}
                            _ => {
                                return Err(ParseError::ArityMismatch {
                                    position: t.pos,
                                    detail: format!("`{op}` expects a parenthesized argument list"),
                                })
                            }
                        }
                        let mut args = vec![self.infix()?];
                        loop {
                            match self.next() {
                                Some(Token { tok: Tok::Comma, .. }) => args.push(self.infix()?),
                                Some(Token { tok: Tok::Close, .. }) => break,
                                None => return Err(ParseError::UnbalancedParentheses { position: t.pos }),
                                Some(other) => {
                                    return Err(ParseError::UnexpectedToken {
                                        position: other.pos,
                                        found: other.text,
                                    })
                                }
                            }
                        }
                        if args.len() != n {
                            return Err(ParseError::ArityMismatch {
                                position: t.pos,
                                detail: format!("`{op}` expects {n} arguments, found {}", args.len()),
                            });
                        }
                        Ok(Node::App(op.clone(), args))
                    }
                }
            }
            Tok::Var(_) | Tok::Meta(_) => unreachable!("leaves handled above"),
        }
    }

    fn binary_op(&mut self) -> Result<Sym, ParseError> {
        match self.next() {
            Some(Token { tok: Tok::Symbol(op), pos, .. }) => {
                if self.sig.arity(&op) == Some(2) {
                    Ok(op)
                } else {
                    Err(ParseError::ArityMismatch {
                        position: pos,
                        detail: format!("`{op}` is not a binary connective"),
                    })
                }
            }
            Some(Token { tok: Tok::Close, pos, .. }) => Err(ParseError::UnexpectedToken {
                position: pos,
                found: ")".into(),
            }),
            Some(t) => Err(ParseError::UnexpectedToken { position: t.pos, found: t.text }),
            None => Err(ParseError::UnbalancedParentheses { position: self.end }),
        }
    }

    fn top(&mut self, notation: Notation) -> Result<Node, ParseError> {
        let node = match notation {
            Notation::Prefix => {
                let n = self.prefix()?;
                if let Some(t) = self.peek() {
                    return Err(ParseError::ArityMismatch {
                        position: t.pos,
                        detail: "extra argument after a complete formula".into(),
                    });
                }
                n
            }
            Notation::Infix => {
                let mut n = self.infix()?;
                // Outermost parentheses of a binary formula may be omitted.
                if let Some(Token { tok: Tok::Symbol(op), .. }) = self.peek() {
                    if self.sig.arity(op) == Some(2) {
                        let op = op.clone();
                        self.at += 1;
                        let right = self.infix()?;
                        n = Node::App(op, vec![n, right]);
                    }
                }
                if let Some(t) = self.peek() {
                    return Err(match t.tok {
                        Tok::Close => ParseError::UnbalancedParentheses { position: t.pos },
                        _ => ParseError::UnexpectedToken { position: t.pos, found: t.text.clone() },
                    });
                }
                n
            }
        };
        Ok(node)
    }
}

fn parse_node(
    text: &str,
    sig: &Signature,
    notation: Notation,
    allow_meta: bool,
) -> Result<Node, ParseError> {
    let toks = tokenize(text, sig, notation, allow_meta)?;
    let end = text.chars().count();
    Parser { toks, at: 0, sig, end }.top(notation)
}

fn to_formula(n: Node) -> Formula {
    match n {
        Node::Var(v) => Formula::var(&v),
        Node::Const(c) => Formula::Const(c),
        Node::App(op, args) => Formula::App(op, args.into_iter().map(to_formula).collect::<Vec<_>>().into()),
        Node::Meta(_) => unreachable!("metavariables are not tokenized in object mode"),
    }
}

fn to_meta(n: Node) -> Result<Metaformula, String> {
    Ok(match n {
        Node::Meta(m) => Metaformula::meta(&m),
        Node::Const(c) => Metaformula::Const(c),
        Node::App(op, args) => Metaformula::App(
            op,
            args.into_iter().map(to_meta).collect::<Result<Vec<_>, _>>()?.into(),
        ),
        Node::Var(v) => return Err(v),
    })
}

pub fn parse(text: &str, sig: &Signature, notation: Notation) -> Result<Formula, ParseError> {
    parse_node(text, sig, notation, false).map(to_formula)
}

/// Infix parse over `sig`; convenience for tests and built-ins.
pub fn parse_infix(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    parse(text, sig, Notation::Infix)
}

pub fn parse_meta(text: &str, sig: &Signature, notation: Notation) -> Result<Metaformula, ParseError> {
    let node = parse_node(text, sig, notation, true)?;
    to_meta(node).map_err(|word| {
        let position = text.find(&word).map_or(0, |b| text[..b].chars().count());
        ParseError::UnreadableWord { position, word }
    })
}

/// Prints `f`; prefix output is unspaced when that still tokenizes back
/// to the same words, otherwise words are separated by single spaces.
pub fn print(f: &Formula, notation: Notation, sig: &Signature) -> String {
    match notation {
        Notation::Infix => f.to_infix(),
        Notation::Prefix => {
            let words: Vec<Sym> = f.prefix_tokens();
            let tight: String = words.iter().map(|w| &**w).collect();
            let ok = tokenize(&tight, sig, Notation::Prefix, false)
                .map(|ts| ts.len() == words.len() && ts.iter().zip(&words).all(|(t, w)| t.text == **w))
                .unwrap_or(false);
            if ok {
                tight
            } else {
                words.iter().map(|w| &**w).collect::<Vec<_>>().join(" ")
            }
        }
    }
}
