//! Declaration-level parser for Java source files.
//!
//! Only package, import and type declarations are understood. Member bodies
//! and initializers are skipped by balanced-bracket scanning, nested types are
//! skipped entirely, annotations are discarded and generic arguments are
//! erased. References to type variables are replaced by their erasure (the
//! first bound, or `Object`).

mod lexer;

use alloc::borrow::ToOwned;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::corpus::{ClassSummary, Constructor, Field, Import, Method, SourceUnit, TypeKind};
use lexer::{Tok, Token};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub file: String,
    pub line: u32,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: malformed source: {}",
            self.file, self.line, self.message
        )
    }
}

impl core::error::Error for ParseError {}

/// Parses one compilation unit into its top-level type summaries together
/// with the package and imports needed for name resolution.
pub fn parse_source(source: &str, file_name: &str) -> Result<SourceUnit, ParseError> {
    let tokens = lexer::tokenize(source).map_err(|e| ParseError {
        file: file_name.to_owned(),
        line: e.line,
        message: e.message.to_owned(),
    })?;
    let mut p = Parser {
        toks: &tokens,
        pos: 0,
        scopes: Vec::new(),
    };
    p.compilation_unit(file_name).map_err(|e| ParseError {
        file: file_name.to_owned(),
        line: e.line,
        message: e.message,
    })
}

#[derive(Debug)]
struct Error {
    line: u32,
    message: String,
}

type PResult<T> = Result<T, Error>;

const MODIFIERS: &[&str] = &[
    "public",
    "protected",
    "private",
    "static",
    "abstract",
    "final",
    "native",
    "synchronized",
    "transient",
    "volatile",
    "strictfp",
    "default",
    "sealed",
];

#[derive(Clone, Copy, PartialEq, Eq)]
enum DeclKind {
    Class,
    Interface,
    Enum,
    Record,
    Annotation,
}

struct Parser<'t, 'a> {
    toks: &'t [Token<'a>],
    pos: usize,
    /// Type-variable erasures, innermost scope last.
    scopes: Vec<Vec<(&'a str, String)>>,
}

impl<'t, 'a> Parser<'t, 'a> {
    fn peek(&self) -> Option<Tok<'a>> {
        self.toks.get(self.pos).map(|t| t.tok)
    }

    fn peek_at(&self, n: usize) -> Option<Tok<'a>> {
        self.toks.get(self.pos + n).map(|t| t.tok)
    }

    fn line(&self) -> u32 {
        self.toks
            .get(self.pos)
            .or(self.toks.last())
            .map_or(1, |t| t.line)
    }

    fn err<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(Error {
            line: self.line(),
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Option<Tok<'a>> {
        let t = self.peek();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn at_punct(&self, c: char) -> bool {
        self.peek() == Some(Tok::Punct(c))
    }

    fn at_ident(&self, s: &str) -> bool {
        self.peek() == Some(Tok::Ident(s))
    }

    fn eat_punct(&mut self, c: char) -> bool {
        let hit = self.at_punct(c);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn eat_ident(&mut self, s: &str) -> bool {
        let hit = self.at_ident(s);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn expect_punct(&mut self, c: char) -> PResult<()> {
        if self.eat_punct(c) {
            Ok(())
        } else {
            self.err(alloc::format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> PResult<&'a str> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected identifier"),
        }
    }

    fn qualified_name(&mut self) -> PResult<String> {
        let mut name = self.ident()?.to_owned();
        while self.at_punct('.') && matches!(self.peek_at(1), Some(Tok::Ident(_))) {
            self.pos += 1;
            name.push('.');
            name.push_str(self.ident()?);
        }
        Ok(name)
    }

    /// Skips from an opening bracket to just past its partner. Only the
    /// given pair is counted, so `(`/`)` inside braces do not interfere.
    fn skip_balanced(&mut self, open: char, close: char) -> PResult<()> {
        let start = self.line();
        self.expect_punct(open)?;
        let mut depth = 1usize;
        while depth > 0 {
            match self.bump() {
                Some(Tok::Punct(c)) if c == open => depth += 1,
                Some(Tok::Punct(c)) if c == close => depth -= 1,
                Some(_) => {}
                None => {
                    return Err(Error {
                        line: start,
                        message: alloc::format!("unbalanced `{open}`"),
                    })
                }
            }
        }
        Ok(())
    }

    fn skip_annotation(&mut self) -> PResult<()> {
        self.expect_punct('@')?;
        self.qualified_name()?;
        if self.at_punct('(') {
            self.skip_balanced('(', ')')?;
        }
        Ok(())
    }

    fn at_annotation(&self) -> bool {
        self.at_punct('@') && !matches!(self.peek_at(1), Some(Tok::Ident("interface")))
    }

    fn skip_modifiers(&mut self) -> PResult<()> {
        loop {
            if self.at_annotation() {
                self.skip_annotation()?;
            } else if matches!(self.peek(), Some(Tok::Ident(s)) if MODIFIERS.contains(&s)) {
                // `default` as a modifier only; `default` in an annotation
                // element is handled by the method parser.
                self.pos += 1;
            } else if self.at_ident("non")
                && self.peek_at(1) == Some(Tok::Punct('-'))
                && self.peek_at(2) == Some(Tok::Ident("sealed"))
            {
                self.pos += 3;
            } else {
                return Ok(());
            }
        }
    }

    /// Recognizes the keyword that starts a type declaration without
    /// consuming it.
    fn at_type_decl(&self) -> Option<DeclKind> {
        match self.peek()? {
            Tok::Ident("class") => Some(DeclKind::Class),
            Tok::Ident("interface") => Some(DeclKind::Interface),
            Tok::Ident("enum") if matches!(self.peek_at(1), Some(Tok::Ident(_))) => {
                Some(DeclKind::Enum)
            }
            Tok::Ident("record")
                if matches!(self.peek_at(1), Some(Tok::Ident(_)))
                    && matches!(self.peek_at(2), Some(Tok::Punct('(' | '<'))) =>
            {
                Some(DeclKind::Record)
            }
            Tok::Punct('@') if self.peek_at(1) == Some(Tok::Ident("interface")) => {
                Some(DeclKind::Annotation)
            }
            _ => None,
        }
    }

    fn compilation_unit(&mut self, file_name: &str) -> PResult<SourceUnit> {
        let mut unit = SourceUnit {
            file_name: file_name.to_owned(),
            package: None,
            imports: Vec::new(),
            classes: Vec::new(),
        };

        // Package annotations live in package-info.java.
        while self.at_annotation() {
            self.skip_annotation()?;
        }
        if self.eat_ident("package") {
            unit.package = Some(self.qualified_name()?);
            self.expect_punct(';')?;
        }
        if self.at_ident("module") || self.at_ident("open") {
            return Ok(unit);
        }
        while self.eat_ident("import") {
            let is_static = self.eat_ident("static");
            let path = self.qualified_name()?;
            let on_demand = if self.at_punct('.') && self.peek_at(1) == Some(Tok::Punct('*')) {
                self.pos += 2;
                true
            } else {
                false
            };
            self.expect_punct(';')?;
            if !is_static {
                unit.imports.push(if on_demand {
                    Import::OnDemand(path)
                } else {
                    Import::Single(path)
                });
            }
        }

        loop {
            while self.eat_punct(';') {}
            if self.peek().is_none() {
                break;
            }
            self.skip_modifiers()?;
            let Some(kind) = self.at_type_decl() else {
                return self.err("expected a type declaration");
            };
            let class = self.type_declaration(kind, unit.package.as_deref())?;
            unit.classes.push(class);
        }
        Ok(unit)
    }

    fn type_declaration(&mut self, kind: DeclKind, package: Option<&str>) -> PResult<ClassSummary> {
        if kind == DeclKind::Annotation {
            self.pos += 1;
        }
        self.pos += 1;
        let name = self.ident()?;
        let qualified = match package {
            Some(p) => alloc::format!("{p}.{name}"),
            None => name.to_owned(),
        };
        let summary_kind = match kind {
            DeclKind::Interface | DeclKind::Annotation => TypeKind::Interface,
            DeclKind::Class | DeclKind::Enum | DeclKind::Record => TypeKind::Class,
        };
        let mut summary = ClassSummary::new(qualified, summary_kind);

        self.scopes.push(Vec::new());
        if self.at_punct('<') {
            self.type_parameters()?;
        }
        if kind == DeclKind::Record {
            self.record_components(&mut summary)?;
        }

        loop {
            if self.eat_ident("extends") {
                let types = self.type_list()?;
                if summary_kind == TypeKind::Interface {
                    summary.interfaces.extend(types);
                } else if types.len() == 1 {
                    summary.superclass = types.into_iter().next();
                } else {
                    return self.err("class extends more than one type");
                }
            } else if self.eat_ident("implements") {
                summary.interfaces.extend(self.type_list()?);
            } else if self.eat_ident("permits") {
                self.type_list()?;
            } else {
                break;
            }
        }
        summary.interfaces.sort();

        if !self.at_punct('{') {
            return self.err("expected `{` after type header");
        }
        self.pos += 1;
        if kind == DeclKind::Enum && self.skip_enum_constants()? {
            self.scopes.pop();
            return Ok(summary);
        }
        self.members(name, &mut summary)?;
        self.scopes.pop();
        Ok(summary)
    }

    /// Consumes `<T extends A & B, U>` and records the erasure of each
    /// variable in the innermost scope.
    fn type_parameters(&mut self) -> PResult<()> {
        self.expect_punct('<')?;
        loop {
            while self.at_annotation() {
                self.skip_annotation()?;
            }
            let var = self.ident()?;
            let erasure = if self.eat_ident("extends") {
                let first = self.raw_type()?;
                while self.eat_punct('&') {
                    self.raw_type()?;
                }
                first
            } else {
                "Object".to_string()
            };
            self.scopes.last_mut().unwrap().push((var, erasure));
            if self.eat_punct('>') {
                return Ok(());
            }
            self.expect_punct(',')?;
        }
    }

    fn record_components(&mut self, summary: &mut ClassSummary) -> PResult<()> {
        self.expect_punct('(')?;
        if self.eat_punct(')') {
            return Ok(());
        }
        loop {
            self.skip_modifiers()?;
            let ty = self.raw_type()?;
            self.eat_varargs();
            let name = self.ident()?;
            summary.fields.push(Field {
                name: name.to_owned(),
                declared_type: ty,
            });
            if self.eat_punct(')') {
                return Ok(());
            }
            self.expect_punct(',')?;
        }
    }

    fn type_list(&mut self) -> PResult<Vec<String>> {
        let mut out = alloc::vec![self.raw_type()?];
        while self.eat_punct(',') {
            out.push(self.raw_type()?);
        }
        Ok(out)
    }

    /// Skips `<...>`, counting only angle brackets.
    fn skip_type_arguments(&mut self) -> PResult<()> {
        self.skip_balanced('<', '>')
    }

    /// Parses a type and returns its raw name: annotations dropped, generic
    /// arguments and array dimensions removed, type variables erased.
    fn raw_type(&mut self) -> PResult<String> {
        while self.at_annotation() {
            self.skip_annotation()?;
        }
        let mut name = self.ident()?.to_owned();
        loop {
            if self.at_punct('<') {
                self.skip_type_arguments()?;
            }
            if self.at_punct('.') && matches!(self.peek_at(1), Some(Tok::Ident(_))) {
                self.pos += 1;
                while self.at_annotation() {
                    self.skip_annotation()?;
                }
                name.push('.');
                name.push_str(self.ident()?);
            } else {
                break;
            }
        }
        self.skip_dims()?;
        if !name.contains('.') {
            if let Some(erasure) = self.erasure_of(&name) {
                return Ok(erasure);
            }
        }
        Ok(name)
    }

    fn erasure_of(&self, name: &str) -> Option<String> {
        self.scopes
            .iter()
            .rev()
            .flat_map(|s| s.iter().rev())
            .find(|(v, _)| *v == name)
            .map(|(_, e)| e.clone())
    }

    fn skip_dims(&mut self) -> PResult<()> {
        loop {
            while self.at_annotation() {
                self.skip_annotation()?;
            }
            if self.at_punct('[') && self.peek_at(1) == Some(Tok::Punct(']')) {
                self.pos += 2;
            } else {
                return Ok(());
            }
        }
    }

    fn eat_varargs(&mut self) -> bool {
        if self.at_punct('.')
            && self.peek_at(1) == Some(Tok::Punct('.'))
            && self.peek_at(2) == Some(Tok::Punct('.'))
        {
            self.pos += 3;
            true
        } else {
            false
        }
    }

    /// Skips enum constants. Returns true if the body closed before any
    /// member declarations.
    fn skip_enum_constants(&mut self) -> PResult<bool> {
        loop {
            match self.peek() {
                Some(Tok::Punct(';')) => {
                    self.pos += 1;
                    return Ok(false);
                }
                Some(Tok::Punct('}')) => {
                    self.pos += 1;
                    return Ok(true);
                }
                Some(Tok::Punct('(')) => self.skip_balanced('(', ')')?,
                Some(Tok::Punct('{')) => self.skip_balanced('{', '}')?,
                Some(_) => self.pos += 1,
                None => return self.err("unterminated enum body"),
            }
        }
    }

    /// Skips a nested type declaration: header up to its body, then the body.
    fn skip_nested_type(&mut self) -> PResult<()> {
        loop {
            match self.peek() {
                Some(Tok::Punct('{')) => return self.skip_balanced('{', '}'),
                Some(Tok::Punct('(')) => self.skip_balanced('(', ')')?,
                Some(_) => self.pos += 1,
                None => return self.err("unterminated nested type"),
            }
        }
    }

    fn members(&mut self, class_name: &str, summary: &mut ClassSummary) -> PResult<()> {
        loop {
            match self.peek() {
                None => return self.err("unterminated type body"),
                Some(Tok::Punct('}')) => {
                    self.pos += 1;
                    return Ok(());
                }
                Some(Tok::Punct(';')) => {
                    self.pos += 1;
                    continue;
                }
                Some(Tok::Punct('{')) => {
                    self.skip_balanced('{', '}')?;
                    continue;
                }
                Some(Tok::Ident("static")) if self.peek_at(1) == Some(Tok::Punct('{')) => {
                    self.pos += 1;
                    self.skip_balanced('{', '}')?;
                    continue;
                }
                _ => {}
            }

            self.skip_modifiers()?;
            if self.at_type_decl().is_some() {
                self.skip_nested_type()?;
                continue;
            }

            self.scopes.push(Vec::new());
            let result = self.member(class_name, summary);
            self.scopes.pop();
            result?;
        }
    }

    fn member(&mut self, class_name: &str, summary: &mut ClassSummary) -> PResult<()> {
        if self.at_punct('<') {
            self.type_parameters()?;
            self.skip_modifiers()?;
        }

        if self.at_ident(class_name) {
            match self.peek_at(1) {
                Some(Tok::Punct('(')) => {
                    self.pos += 1;
                    let params = self.parameters()?;
                    self.skip_throws()?;
                    self.skip_balanced('{', '}')?;
                    if summary.kind == TypeKind::Interface {
                        return self.err("constructor in interface");
                    }
                    summary.constructors.push(Constructor {
                        param_types: params,
                    });
                    return Ok(());
                }
                // compact canonical record constructor
                Some(Tok::Punct('{')) => {
                    self.pos += 1;
                    return self.skip_balanced('{', '}');
                }
                _ => {}
            }
        }

        let ty = self.raw_type()?;
        let name = self.ident()?;
        if self.at_punct('(') {
            let params = self.parameters()?;
            self.skip_dims()?;
            self.skip_throws()?;
            if self.eat_ident("default") {
                self.skip_until_semicolon()?;
            } else if self.at_punct('{') {
                self.skip_balanced('{', '}')?;
            } else {
                self.expect_punct(';')?;
            }
            summary.methods.push(Method {
                name: name.to_owned(),
                return_type: ty,
                param_types: params,
            });
            return Ok(());
        }

        let mut name = name;
        loop {
            self.skip_dims()?;
            summary.fields.push(Field {
                name: name.to_owned(),
                declared_type: ty.clone(),
            });
            if self.eat_punct('=') {
                self.skip_initializer()?;
            }
            if self.eat_punct(';') {
                return Ok(());
            }
            self.expect_punct(',')?;
            name = self.ident()?;
        }
    }

    fn parameters(&mut self) -> PResult<Vec<String>> {
        self.expect_punct('(')?;
        let mut out = Vec::new();
        if self.eat_punct(')') {
            return Ok(out);
        }
        loop {
            self.skip_modifiers()?;
            let ty = self.raw_type()?;
            self.eat_varargs();
            if self.eat_ident("this") {
                // receiver parameter
            } else {
                self.ident()?;
                // `Outer.this` receiver form
                if self.at_punct('.') && self.peek_at(1) == Some(Tok::Ident("this")) {
                    self.pos += 2;
                } else {
                    self.skip_dims()?;
                    out.push(ty);
                }
            }
            if self.eat_punct(')') {
                return Ok(out);
            }
            self.expect_punct(',')?;
        }
    }

    fn skip_throws(&mut self) -> PResult<()> {
        if self.eat_ident("throws") {
            self.type_list()?;
        }
        Ok(())
    }

    fn skip_until_semicolon(&mut self) -> PResult<()> {
        loop {
            match self.peek() {
                Some(Tok::Punct(';')) => {
                    self.pos += 1;
                    return Ok(());
                }
                Some(Tok::Punct('(')) => self.skip_balanced('(', ')')?,
                Some(Tok::Punct('{')) => self.skip_balanced('{', '}')?,
                Some(_) => self.pos += 1,
                None => return self.err("expected `;`"),
            }
        }
    }

    /// Skips a field initializer, stopping before the `,` or `;` that ends
    /// the declarator. Generic arguments after `new` and in explicit method
    /// type arguments are consumed so their commas are not mistaken for
    /// declarator separators.
    fn skip_initializer(&mut self) -> PResult<()> {
        loop {
            match self.peek() {
                Some(Tok::Punct(',' | ';')) => return Ok(()),
                Some(Tok::Punct('(')) => self.skip_balanced('(', ')')?,
                Some(Tok::Punct('{')) => self.skip_balanced('{', '}')?,
                Some(Tok::Punct('[')) => self.skip_balanced('[', ']')?,
                Some(Tok::Ident("new")) => {
                    self.pos += 1;
                    while self.at_annotation() {
                        self.skip_annotation()?;
                    }
                    if self.at_punct('<') {
                        self.skip_type_arguments()?;
                    }
                    if matches!(self.peek(), Some(Tok::Ident(_))) {
                        self.qualified_name()?;
                        if self.at_punct('<') {
                            self.skip_type_arguments()?;
                        }
                    }
                }
                Some(Tok::Punct('.')) if self.peek_at(1) == Some(Tok::Punct('<')) => {
                    self.pos += 1;
                    self.skip_type_arguments()?;
                }
                Some(_) => self.pos += 1,
                None => return self.err("unterminated field initializer"),
            }
        }
    }
}
