//! The model file format: one `class` per set of arrow constants declared
//! equal, separated by `;`.
//!
//! ```text
//! model { class f g ; class h k }
//! ```

use std::sync::Arc;

use crate::syntax::{Parser, Signature, Tok};
use crate::theoria::Theory;

use super::{CompTable, Model, SlashError};

pub fn parse_model(theory: Arc<Theory>, table: CompTable, text: &str) -> Result<Model, SlashError> {
    let empty = Signature::new();
    let mut p = Parser::new(&empty, text)?;
    p.expect_keyword("model")?;
    p.expect(&Tok::LBrace)?;
    let mut classes = Vec::new();
    while !p.eat(&Tok::RBrace) {
        p.expect_keyword("class")?;
        let mut class = Vec::new();
        while let Some(Tok::Ident(s)) = p.peek() {
            if s == "class" {
                break;
            }
            let name = p.word()?;
            if !theory.signature.arrows.contains_key(&name) {
                return Err(SlashError::UnknownConstant(name));
            }
            class.push(name);
        }
        if class.is_empty() {
            return Err(p.error("empty class").into());
        }
        p.eat(&Tok::Semi);
        if class.len() > 1 {
            classes.push(class);
        }
    }
    p.finish()?;
    Ok(Model::with_classes(theory, table, classes))
}

pub fn print_model(m: &Model) -> String {
    let body: Vec<String> = m.classes.iter().map(|c| format!("class {}", c.join(" "))).collect();
    if body.is_empty() {
        "model { }\n".to_string()
    } else {
        format!("model {{ {} }}\n", body.join(" ; "))
    }
}
