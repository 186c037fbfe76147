//! JSON form of a presentation.

use super::{Generator, NcError, Presentation};
use crate::scalars::Field;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub name: String,
    #[serde(default = "one")]
    pub weight: u32,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub field: String,
    pub generators: Vec<GeneratorJson>,
    pub relations: Vec<String>,
}

impl Presentation {
    /// Generators in id order (which is the letter order of the monomial
    /// order) and relations in canonical order.
    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            field: self.field().to_string(),
            generators: self.generators().iter().map(|g| GeneratorJson { name: g.name.clone(), weight: g.weight }).collect(),
            relations: self.relation_strings(),
        }
    }

    pub fn from_json(j: &PresentationJson) -> Result<Presentation, NcError> {
        let field: Field = j.field.parse()?;
        let gens = j.generators.iter().map(|g| Generator::weighted(g.name.clone(), g.weight)).collect();
        let free = Presentation::free(field, gens)?;
        let rels = j.relations.iter().map(|s| free.parse_poly(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(free.with_relations(rels))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Presentation, NcError> {
        let j: PresentationJson = serde_json::from_str(s).map_err(|e| NcError::Json(e.to_string()))?;
        Self::from_json(&j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let p = Presentation::free(Field::RationalQ, vec![Generator::new("a"), Generator::weighted("s_(1,1)", 2)]).unwrap();
        let r = p.parse_poly("q*a*s_(1,1)-s_(1,1)*a+(1-q)/(1+q)*a*a*a").unwrap();
        let p = p.with_relations([r]);
        let back = Presentation::from_json_str(&p.to_json_string()).unwrap();
        assert_eq!(p, back);
    }
}
