use serde::{Deserialize, Serialize};

use super::syntax::{Term, Word};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenDecl {
    pub name: String,
    pub dom: Word,
    pub cod: Word,
}

/// Object generators and morphism generators typed by words.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    objects: Vec<String>,
    generators: Vec<GenDecl>,
}

const RESERVED: [&str; 2] = ["id", "sym"];

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn generators(&self) -> &[GenDecl] {
        &self.generators
    }

    fn name_taken(&self, name: &str) -> bool {
        RESERVED.contains(&name)
            || self.objects.iter().any(|o| o == name)
            || self.generators.iter().any(|g| g.name == name)
    }

    pub fn add_object(&mut self, name: &str) -> Result<()> {
        if self.name_taken(name) {
            return Err(Error::Invalid(format!("name `{name}` is already declared")));
        }
        self.objects.push(name.to_string());
        Ok(())
    }

    pub fn add_generator(&mut self, name: &str, dom: Word, cod: Word) -> Result<()> {
        if self.name_taken(name) {
            return Err(Error::Invalid(format!("name `{name}` is already declared")));
        }
        self.check_word(&dom)?;
        self.check_word(&cod)?;
        self.generators.push(GenDecl {
            name: name.to_string(),
            dom,
            cod,
        });
        Ok(())
    }

    pub fn has_object(&self, name: &str) -> bool {
        self.objects.iter().any(|o| o == name)
    }

    pub fn generator(&self, name: &str) -> Result<&GenDecl> {
        self.generators
            .iter()
            .find(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn check_word(&self, w: &[String]) -> Result<()> {
        match w.iter().find(|o| !self.has_object(o)) {
            Some(o) => Err(Error::UnknownObject(o.clone())),
            None => Ok(()),
        }
    }

    /// Domain and codomain words of `t`.
    pub fn typecheck(&self, t: &Term) -> Result<(Word, Word)> {
        match t {
            Term::Id(w) => {
                self.check_word(w)?;
                Ok((w.clone(), w.clone()))
            }
            Term::Gen(g) => {
                let d = self.generator(g)?;
                Ok((d.dom.clone(), d.cod.clone()))
            }
            Term::Sym(a, b) => {
                self.check_word(a)?;
                self.check_word(b)?;
                Ok((concat(a, b), concat(b, a)))
            }
            Term::Seq(s, t) => {
                let (d1, c1) = self.typecheck(s)?;
                let (d2, c2) = self.typecheck(t)?;
                if c1 != d2 {
                    return Err(Error::TypeMismatch {
                        left: c1.join(" "),
                        right: d2.join(" "),
                    });
                }
                Ok((d1, c2))
            }
            Term::Par(s, t) => {
                let (d1, c1) = self.typecheck(s)?;
                let (d2, c2) = self.typecheck(t)?;
                Ok((concat(&d1, &d2), concat(&c1, &c2)))
            }
        }
    }
}

pub(crate) fn concat(a: &[String], b: &[String]) -> Word {
    a.iter().chain(b).cloned().collect()
}
