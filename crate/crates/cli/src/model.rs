//! Reading covers and bundles from text: plane models in polynomial syntax,
//! or JSON for plane models, cover algebras and bundle lattices.

use std::fmt;

use scrollar_core::arith::{parse_bipoly, Field, ParseError};
use scrollar_core::bundle::{BundleError, BundleJson, BundleLattice};
use scrollar_core::cover::{CoverAlgebra, CoverError, CoverJson, PlaneJson, PlaneModel};
use serde_json::Value;

#[derive(Clone, Debug)]
pub enum Model {
    Plane(PlaneModel),
    Cover(CoverAlgebra),
    Bundle(BundleLattice),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelError {
    Syntax(ParseError),
    Json(String),
    Cover(CoverError),
    Bundle(BundleError),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::Syntax(e) => write!(f, "syntax error: {e}"),
            ModelError::Json(e) => write!(f, "invalid JSON model: {e}"),
            ModelError::Cover(e) => write!(f, "invalid cover: {e}"),
            ModelError::Bundle(e) => write!(f, "invalid bundle: {e}"),
        }
    }
}

impl From<CoverError> for ModelError {
    fn from(e: CoverError) -> Self {
        match e {
            CoverError::Parse(p) => ModelError::Syntax(p),
            e => ModelError::Cover(e),
        }
    }
}

impl From<BundleError> for ModelError {
    fn from(e: BundleError) -> Self {
        match e {
            BundleError::Parse(p) => ModelError::Syntax(p),
            e => ModelError::Bundle(e),
        }
    }
}

/// Text starting with `{` is JSON, told apart by its keys: `f` for a plane
/// model, `mult` for a cover, `finite` for a bundle. Anything else is a
/// plane model `f(x, y)`. Cover JSON carries its own characteristic; bundle
/// entries are read in `field`.
pub fn parse_model(text: &str, field: Field) -> Result<Model, ModelError> {
    let trimmed = text.trim();
    if !trimmed.starts_with('{') {
        return Ok(Model::Plane(PlaneModel::new(
            parse_bipoly(trimmed).map_err(ModelError::Syntax)?,
        )?));
    }
    let v: Value = serde_json::from_str(trimmed).map_err(|e| ModelError::Json(e.to_string()))?;
    let has = |k: &str| v.get(k).is_some();
    let json = |e: serde_json::Error| ModelError::Json(e.to_string());
    if has("mult") {
        let j: CoverJson = serde_json::from_value(v).map_err(json)?;
        Ok(Model::Cover(CoverAlgebra::from_json(&j)?))
    } else if has("finite") {
        let j: BundleJson = serde_json::from_value(v).map_err(json)?;
        Ok(Model::Bundle(BundleLattice::from_json(&j, field)?))
    } else if has("f") {
        let j: PlaneJson = serde_json::from_value(v).map_err(json)?;
        Ok(Model::Plane(PlaneModel::parse(&j.f)?))
    } else {
        Err(ModelError::Json(
            "expected one of the keys `f`, `mult` or `finite`".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use scrollar_core::arith::Poly;
    use scrollar_core::bundle::Chart;
    use scrollar_core::cover::kummer_cover;

    #[test]
    fn plane_text() {
        match parse_model("y^2 - (x^3 - x)", Field::Rational).unwrap() {
            Model::Plane(m) => assert_eq!(m.degree(), 2),
            other => panic!("expected a plane model, got {other:?}"),
        }
    }

    #[test]
    fn truncated_model() {
        match parse_model("y^2 -", Field::Rational) {
            Err(ModelError::Syntax(e)) => assert_eq!(e.offset, 5),
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn singular_finite_basis() {
        let text = r#"{"rank": 2, "finite": [["1", "x"], ["1", "x"]], "infinity": [["1", "0"], ["0", "1"]]}"#;
        let err = parse_model(text, Field::Rational).unwrap_err();
        assert_eq!(
            err,
            ModelError::Bundle(BundleError::Singular(Chart::Finite))
        );
        assert!(err.to_string().contains("finite chart basis singular"));
    }

    #[test]
    fn non_monic_model() {
        let err = parse_model("2*y^2 - x", Field::Rational).unwrap_err();
        assert_eq!(err, ModelError::Cover(CoverError::NotMonic));
    }

    #[test]
    fn json_plane_model() {
        match parse_model(r#"{"f": "y^3 - x*y - 1"}"#, Field::Rational).unwrap() {
            Model::Plane(m) => assert_eq!(m.degree(), 3),
            other => panic!("expected a plane model, got {other:?}"),
        }
    }

    #[test]
    fn cover_json_round_trip() {
        let a = kummer_cover(3, &Poly::from_ints(&[1, 1, 0, 0, 1]), Field::Prime(101)).unwrap();
        let text = serde_json::to_string(&a.to_json()).unwrap();
        match parse_model(&text, Field::Rational).unwrap() {
            Model::Cover(b) => {
                assert_eq!(b, a);
                assert_eq!(serde_json::to_string(&b.to_json()).unwrap(), text);
            }
            other => panic!("expected a cover, got {other:?}"),
        }
    }

    #[test]
    fn bundle_json_round_trip() {
        let b = BundleLattice::standard(&[-1, 0, 3]);
        let text = serde_json::to_string(&b.to_json()).unwrap();
        match parse_model(&text, Field::Rational).unwrap() {
            Model::Bundle(c) => assert_eq!(serde_json::to_string(&c.to_json()).unwrap(), text),
            other => panic!("expected a bundle, got {other:?}"),
        }
    }

    #[test]
    fn plane_text_round_trip() {
        let Model::Plane(m) = parse_model("y^3 - x*y - 1", Field::Rational).unwrap() else {
            panic!("expected a plane model");
        };
        let text = m.f().to_text();
        let Model::Plane(n) = parse_model(&text, Field::Rational).unwrap() else {
            panic!("expected a plane model");
        };
        assert_eq!(n.f().to_text(), text);
    }

    #[test]
    fn unknown_json_shape() {
        assert!(matches!(
            parse_model(r#"{"g": 1}"#, Field::Rational),
            Err(ModelError::Json(_))
        ));
    }
}
