//! Construction scripts: parser, pretty-printer, interpreter and SVG output.
//!
//! ```text
//! script := stmt*
//! stmt   := "point" NAME expr ","? expr ";"
//!         | "let" NAME ("," NAME)* "=" call ";"
//!         | "assert" call ";"
//!         | "render" STRING ";"
//! call   := NAME "(" (NAME ("," NAME)*)? ")"
//! ```
//!
//! Expressions follow the field grammar of [`crate::field::text`]. `#` starts
//! a comment. The optional comma in `point` separates coordinates whose
//! second expression begins with `-`.

mod interp;
mod svg;

use std::fmt;

use crate::field::text::{lex, Cursor, SyntaxError, Tok};
use crate::field::Expr;

pub use interp::{run_script, run_script_mode, Binding, CallRecord, Env, PointRole, RunOutput, Status, StmtResult};
pub use svg::{render_svg, RenderError, RenderOptions};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Call {
    pub op: String,
    pub args: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Point { name: String, x: Expr, y: Expr },
    Let { names: Vec<String>, call: Call },
    Assert(Call),
    Render(String),
}

/// A parsed script. Equality compares statements only, not positions.
#[derive(Clone, Debug, Default)]
pub struct Script {
    pub stmts: Vec<Stmt>,
    /// 1-based (line, column) of each statement.
    pub positions: Vec<(usize, usize)>,
}

impl PartialEq for Script {
    fn eq(&self, o: &Self) -> bool {
        self.stmts == o.stmts
    }
}

impl Eq for Script {}

impl fmt::Display for Call {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.op, self.args.join(", "))
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Point { name, x, y } => {
                let y = y.to_string();
                let sep = if y.starts_with('-') { ", " } else { " " };
                write!(f, "point {name} {x}{sep}{y};")
            }
            Stmt::Let { names, call } => write!(f, "let {} = {call};", names.join(", ")),
            Stmt::Assert(call) => write!(f, "assert {call};"),
            Stmt::Render(s) => write!(f, "render \"{s}\";"),
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

const KEYWORDS: &[&str] = &["point", "let", "assert", "render"];

fn name(c: &mut Cursor) -> Result<String, SyntaxError> {
    match &c.peek().tok {
        Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => c.expect_ident("name"),
        _ => Err(c.error(&["name"])),
    }
}

fn call(c: &mut Cursor) -> Result<Call, SyntaxError> {
    let op = c.expect_ident("operation name")?;
    c.expect_sym('(')?;
    let mut args = Vec::new();
    if !c.at_sym(')') {
        args.push(name(c)?);
        while c.at_sym(',') {
            c.bump();
            args.push(name(c)?);
        }
    }
    if !c.at_sym(')') {
        return Err(c.error(&["','", "')'"]));
    }
    c.bump();
    Ok(Call { op, args })
}

fn stmt(c: &mut Cursor) -> Result<Stmt, SyntaxError> {
    let kw = match &c.peek().tok {
        Tok::Ident(s) if KEYWORDS.contains(&s.as_str()) => s.clone(),
        _ => return Err(c.error(KEYWORDS)),
    };
    c.bump();
    let s = match kw.as_str() {
        "point" => {
            let name = name(c)?;
            let x = c.expr()?;
            if c.at_sym(',') {
                c.bump();
            }
            let y = c.expr()?;
            Stmt::Point { name, x, y }
        }
        "let" => {
            let mut names = vec![name(c)?];
            while c.at_sym(',') {
                c.bump();
                names.push(name(c)?);
            }
            if !c.at_sym('=') {
                return Err(c.error(&["','", "'='"]));
            }
            c.bump();
            Stmt::Let { names, call: call(c)? }
        }
        "assert" => Stmt::Assert(call(c)?),
        _ => match c.peek().tok.clone() {
            Tok::Str(s) => {
                c.bump();
                Stmt::Render(s)
            }
            _ => return Err(c.error(&["string"])),
        },
    };
    c.expect_sym(';')?;
    Ok(s)
}

pub fn parse_script(src: &str) -> Result<Script, SyntaxError> {
    let mut c = Cursor::new(lex(src)?);
    let mut script = Script::default();
    while !c.at_eof() {
        let t = c.peek();
        script.positions.push((t.line, t.column));
        script.stmts.push(stmt(&mut c)?);
    }
    Ok(script)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_four_statements() {
        let s = parse_script("point a 0 0; point b 1 0; let c = equilateral(a,b); assert distinct(a,c);").unwrap();
        assert_eq!(s.stmts.len(), 4);
        assert_eq!(s.positions[2], (1, 27));
        assert_eq!(
            s.stmts[2],
            Stmt::Let { names: vec!["c".into()], call: Call { op: "equilateral".into(), args: vec!["a".into(), "b".into()] } }
        );
    }

    #[test]
    fn missing_call_is_located() {
        let e = parse_script("let x = ").unwrap_err();
        assert_eq!((e.line, e.column), (1, 9));
        assert_eq!(e.expected, vec!["operation name"]);
        let e = parse_script("point p 1\n  ;").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.expected.contains(&"integer".to_string()));
    }

    #[test]
    fn tower_coordinates() {
        let s = parse_script("point p 1/2 sqrt(3)/2;").unwrap();
        assert!(matches!(&s.stmts[0], Stmt::Point { y: Expr::Bin(..), .. }));
    }

    #[test]
    fn negative_second_coordinate() {
        let s = parse_script("point p 1, -1; point q 1 -1, 2;").unwrap();
        let Stmt::Point { y, .. } = &s.stmts[0] else { panic!() };
        assert_eq!(y.to_string(), "-1");
        let Stmt::Point { x, .. } = &s.stmts[1] else { panic!() };
        assert_eq!(x.to_string(), "1-1");
        assert_eq!(parse_script(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn pretty_print_roundtrip() {
        let src = "# c\npoint a 0 0;\npoint b (1+2)*3, -eps;\nlet p, q = line_circle(a, b, a, a, b, a, b);\nassert between(a,p,b);\nrender \"fig\";";
        let s = parse_script(src).unwrap();
        let printed = s.to_string();
        assert_eq!(parse_script(&printed).unwrap(), s);
        assert_eq!(parse_script(&printed).unwrap().to_string(), printed);
    }

    #[test]
    fn keyword_is_not_a_name() {
        let e = parse_script("point let 0 0;").unwrap_err();
        assert_eq!(e.column, 7);
    }
}
