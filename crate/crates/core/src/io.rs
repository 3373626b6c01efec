//! JSON documents `{"version", "kind", "payload"}` for every table type.
//!
//! Serialization is canonical: keys are sorted and tables are written in
//! index order, so equal values give byte-identical text. Loading checks
//! shapes always and the full axioms unless validation is switched off.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::coefficients::{BundleMode, GroupBundle};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};
use crate::groupoid::{FinMonoidalGroupoid, GroupoidParts, MonoidalFunctor};
use crate::monoid::{validate_monoid_hom, FiniteMonoid, MonoidHom};
use crate::schreier::{SchreierMorphism, SchreierSystem};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Monoid,
    Group,
    Module,
    System,
    Morphism,
    Groupoid,
    Functor,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Monoid => "monoid",
            Kind::Group => "group",
            Kind::Module => "module",
            Kind::System => "system",
            Kind::Morphism => "morphism",
            Kind::Groupoid => "groupoid",
            Kind::Functor => "functor",
        }
    }
}

/// A loaded document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Monoid(Arc<FiniteMonoid>),
    Group(FiniteGroup),
    Module(GroupBundle),
    System(Arc<SchreierSystem>),
    Morphism(SchreierMorphism),
    Groupoid(Arc<FinMonoidalGroupoid>),
    Functor(MonoidalFunctor),
}

impl Object {
    pub fn kind(&self) -> Kind {
        match self {
            Object::Monoid(_) => Kind::Monoid,
            Object::Group(_) => Kind::Group,
            Object::Module(_) => Kind::Module,
            Object::System(_) => Kind::System,
            Object::Morphism(_) => Kind::Morphism,
            Object::Groupoid(_) => Kind::Groupoid,
            Object::Functor(_) => Kind::Functor,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct LoadOptions {
    /// Skip axiom checks; shapes and index ranges are still checked.
    pub no_validate: bool,
    /// Base monoid for module documents that omit theirs.
    pub base: Option<Arc<FiniteMonoid>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument<'a> {
    version: String,
    kind: Kind,
    #[serde(borrow)]
    payload: &'a RawValue,
}

#[derive(Serialize)]
struct DocumentOut<'a, T> {
    version: &'a str,
    kind: Kind,
    payload: T,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDoc {
    pub table: Vec<Vec<usize>>,
    pub unit: usize,
}

/// `lstar[a][b]` lists `a_*: A_b -> A_ab` elementwise, `rstar[a][b]` lists `b^*: A_a -> A_ab`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<TableDoc>,
    pub groups: Vec<TableDoc>,
    pub lstar: Vec<Vec<Vec<usize>>>,
    pub rstar: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDoc {
    pub module: ModuleDoc,
    pub lambda: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub source: SystemDoc,
    pub target: SystemDoc,
    pub p: Vec<usize>,
    pub q: Vec<Vec<usize>>,
    pub phi: Vec<Vec<usize>>,
}

/// Morphisms are global ids; `compose[g][f]` is `g . f` or null.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidDoc {
    pub objects: usize,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub identity: Vec<usize>,
    pub inverse: Vec<usize>,
    pub compose: Vec<Vec<Option<usize>>>,
    pub tensor_obj: Vec<Vec<usize>>,
    pub tensor_mor: Vec<Vec<usize>>,
    pub unit: usize,
    pub assoc: Vec<Vec<Vec<usize>>>,
    pub lunit: Vec<usize>,
    pub runit: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDoc {
    pub source: GroupoidDoc,
    pub target: GroupoidDoc,
    pub obj: Vec<usize>,
    pub mor: Vec<usize>,
    pub phi: Vec<Vec<usize>>,
    pub phi0: usize,
}

fn chunks<T: Clone>(flat: &[T], width: usize) -> Vec<Vec<T>> {
    if width == 0 {
        return Vec::new();
    }
    flat.chunks(width).map(<[T]>::to_vec).collect()
}

fn cube(flat: &[usize], n: usize) -> Vec<Vec<Vec<usize>>> {
    chunks(flat, n * n)
        .iter()
        .map(|plane| chunks(plane, n))
        .collect()
}

fn monoid_doc(m: &FiniteMonoid) -> TableDoc {
    TableDoc {
        table: m.rows(),
        unit: m.unit(),
    }
}

fn group_doc(g: &FiniteGroup) -> TableDoc {
    TableDoc {
        table: g.rows(),
        unit: g.unit(),
    }
}

fn module_doc(b: &GroupBundle) -> ModuleDoc {
    let n = b.base().size();
    let maps = |f: &dyn Fn(usize, usize) -> Vec<usize>| -> Vec<Vec<Vec<usize>>> {
        (0..n).map(|a| (0..n).map(|c| f(a, c)).collect()).collect()
    };
    ModuleDoc {
        base: Some(monoid_doc(b.base())),
        groups: b.groups().iter().map(group_doc).collect(),
        lstar: maps(&|a, c| b.lstar(a, c).map.clone()),
        rstar: maps(&|a, c| b.rstar(a, c).map.clone()),
    }
}

fn system_doc(s: &SchreierSystem) -> SystemDoc {
    SystemDoc {
        module: module_doc(s.bundle()),
        lambda: cube(s.lambda_table(), s.base().size()),
    }
}

fn morphism_doc(m: &SchreierMorphism) -> MorphismDoc {
    MorphismDoc {
        source: system_doc(&m.source),
        target: system_doc(&m.target),
        p: m.p.map.clone(),
        q: m.q.iter().map(|h| h.map.clone()).collect(),
        phi: chunks(&m.phi, m.source.base().size()),
    }
}

fn groupoid_doc(g: &FinMonoidalGroupoid) -> GroupoidDoc {
    let p = g.parts();
    let (n, m) = (p.objects, p.source.len());
    GroupoidDoc {
        objects: n,
        source: p.source.clone(),
        target: p.target.clone(),
        identity: p.identity.clone(),
        inverse: p.inverse.clone(),
        compose: chunks(&p.compose, m),
        tensor_obj: chunks(&p.tensor_obj, n),
        tensor_mor: chunks(&p.tensor_mor, m),
        unit: p.unit,
        assoc: cube(&p.assoc, n),
        lunit: p.lunit.clone(),
        runit: p.runit.clone(),
    }
}

fn functor_doc(f: &MonoidalFunctor) -> FunctorDoc {
    FunctorDoc {
        source: groupoid_doc(&f.source),
        target: groupoid_doc(&f.target),
        obj: f.obj.clone(),
        mor: f.mor.clone(),
        phi: chunks(&f.phi, f.source.objects()),
        phi0: f.phi0,
    }
}

fn to_canonical<T: Serialize>(kind: Kind, payload: T) -> String {
    let doc = DocumentOut {
        version: FORMAT_VERSION,
        kind,
        payload,
    };
    // Routing through `Value` sorts every object's keys.
    let value = serde_json::to_value(&doc).expect("documents serialize");
    let mut text = serde_json::to_string_pretty(&value).expect("values serialize");
    text.push('\n');
    text
}

pub fn serialize(x: &Object) -> String {
    match x {
        Object::Monoid(m) => to_canonical(Kind::Monoid, monoid_doc(m)),
        Object::Group(g) => to_canonical(Kind::Group, group_doc(g)),
        Object::Module(b) => to_canonical(Kind::Module, module_doc(b)),
        Object::System(s) => to_canonical(Kind::System, system_doc(s)),
        Object::Morphism(m) => to_canonical(Kind::Morphism, morphism_doc(m)),
        Object::Groupoid(g) => to_canonical(Kind::Groupoid, groupoid_doc(g)),
        Object::Functor(f) => to_canonical(Kind::Functor, functor_doc(f)),
    }
}

/// Line and column (both from 1) of a byte offset.
fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = offset - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

fn json_error(e: &serde_json::Error, origin: (usize, usize)) -> Error {
    let (line, column) = if e.line() <= 1 {
        (origin.0, origin.1 + e.column().saturating_sub(1))
    } else {
        (origin.0 + e.line() - 1, e.column())
    };
    Error::Parse {
        line,
        column,
        message: e
            .to_string()
            .split(" at line ")
            .next()
            .unwrap_or_default()
            .to_string(),
    }
}

/// Shape problems found while building typed values are reported at the
/// start of the payload; axiom failures keep their validation report.
fn shape_error(e: Error, origin: (usize, usize)) -> Error {
    match e {
        Error::Invalid { .. } | Error::Parse { .. } => e,
        other => Error::Parse {
            line: origin.0,
            column: origin.1,
            message: other.to_string(),
        },
    }
}

fn flatten<T: Clone>(rows: &[Vec<T>], width: usize, what: &str) -> Result<Vec<T>> {
    if rows.iter().any(|r| r.len() != width) {
        return Err(Error::ShapeMismatch(format!(
            "every row of {what} needs {width} entries"
        )));
    }
    Ok(rows.concat())
}

fn flatten_cube(planes: &[Vec<Vec<usize>>], n: usize, what: &str) -> Result<Vec<usize>> {
    if planes.len() != n {
        return Err(Error::ShapeMismatch(format!("{what} needs {n} planes")));
    }
    let rows: Vec<Vec<usize>> = planes
        .iter()
        .map(|p| {
            if p.len() != n {
                return Err(Error::ShapeMismatch(format!(
                    "every plane of {what} needs {n} rows"
                )));
            }
            flatten(p, n, what)
        })
        .collect::<Result<_>>()?;
    Ok(rows.concat())
}

fn build_monoid(d: &TableDoc) -> Result<FiniteMonoid> {
    FiniteMonoid::new(d.table.clone(), d.unit)
}

fn build_group(d: &TableDoc) -> Result<FiniteGroup> {
    FiniteGroup::new(d.table.clone(), d.unit).map_err(|e| match e {
        Error::NotAGroup(report) => Error::Invalid {
            what: "group",
            report,
        },
        other => other,
    })
}

fn build_module(d: &ModuleDoc, opts: &LoadOptions) -> Result<GroupBundle> {
    let base = match (&d.base, &opts.base) {
        (Some(b), None) => Arc::new(build_monoid(b)?),
        (None, Some(b)) => b.clone(),
        (Some(b), Some(given)) => {
            let m = build_monoid(b)?;
            if m != **given {
                return Err(Error::ShapeMismatch(
                    "the module's base differs from the given base".into(),
                ));
            }
            given.clone()
        }
        (None, None) => return Err(Error::ShapeMismatch("module without a base monoid".into())),
    };
    let n = base.size();
    let groups = d
        .groups
        .iter()
        .map(build_group)
        .collect::<Result<Vec<_>>>()?;
    let maps = |planes: &[Vec<Vec<usize>>], what: &str| -> Result<Vec<GroupHom>> {
        if planes.len() != n || planes.iter().any(|p| p.len() != n) {
            return Err(Error::ShapeMismatch(format!("{what} needs {n} x {n} maps")));
        }
        Ok(planes
            .concat()
            .into_iter()
            .map(|map| GroupHom { map })
            .collect())
    };
    let bundle = GroupBundle::new(
        base,
        groups,
        maps(&d.lstar, "lstar")?,
        maps(&d.rstar, "rstar")?,
    )?;
    if !opts.no_validate {
        let report = bundle.validate(BundleMode::General);
        if !report.is_valid() {
            return Err(Error::invalid("coefficient bundle", &report));
        }
    }
    Ok(bundle)
}

fn build_system(d: &SystemDoc, opts: &LoadOptions) -> Result<SchreierSystem> {
    let bundle = build_module(&d.module, opts)?;
    let lambda = flatten_cube(&d.lambda, bundle.base().size(), "lambda")?;
    if opts.no_validate {
        SchreierSystem::from_parts(bundle, lambda)
    } else {
        SchreierSystem::new(bundle, lambda)
    }
}

fn build_morphism(d: &MorphismDoc, opts: &LoadOptions) -> Result<SchreierMorphism> {
    // Each side carries its own base.
    let inner = LoadOptions {
        no_validate: opts.no_validate,
        base: None,
    };
    let source = Arc::new(build_system(&d.source, &inner)?);
    let target = Arc::new(build_system(&d.target, &inner)?);
    let (ms, mt) = (
        source.bundle().base().clone(),
        target.bundle().base().clone(),
    );
    let report = validate_monoid_hom(&ms, &mt, &d.p)?;
    if !opts.no_validate && !report.is_valid() {
        return Err(Error::invalid("monoid homomorphism", &report));
    }
    let p = MonoidHom {
        source: ms,
        target: mt,
        map: d.p.clone(),
    };
    let q =
        d.q.iter()
            .map(|map| GroupHom { map: map.clone() })
            .collect();
    let phi = flatten(&d.phi, source.base().size(), "phi")?;
    if d.phi.len() != source.base().size() {
        return Err(Error::ShapeMismatch("phi needs one row per element".into()));
    }
    if opts.no_validate {
        SchreierMorphism::from_parts(source, target, p, q, phi)
    } else {
        SchreierMorphism::new(source, target, p, q, phi)
    }
}

fn build_groupoid(d: &GroupoidDoc, opts: &LoadOptions) -> Result<FinMonoidalGroupoid> {
    let (n, m) = (d.objects, d.source.len());
    if d.compose.len() != m || d.tensor_obj.len() != n || d.tensor_mor.len() != m {
        return Err(Error::ShapeMismatch(
            "groupoid tables have the wrong number of rows".into(),
        ));
    }
    let parts = GroupoidParts {
        objects: n,
        source: d.source.clone(),
        target: d.target.clone(),
        identity: d.identity.clone(),
        inverse: d.inverse.clone(),
        compose: flatten(&d.compose, m, "compose")?,
        tensor_obj: flatten(&d.tensor_obj, n, "tensor_obj")?,
        tensor_mor: flatten(&d.tensor_mor, m, "tensor_mor")?,
        unit: d.unit,
        assoc: flatten_cube(&d.assoc, n, "assoc")?,
        lunit: d.lunit.clone(),
        runit: d.runit.clone(),
    };
    if opts.no_validate {
        FinMonoidalGroupoid::from_parts(parts)
    } else {
        FinMonoidalGroupoid::new(parts)
    }
}

fn build_functor(d: &FunctorDoc, opts: &LoadOptions) -> Result<MonoidalFunctor> {
    let source = Arc::new(build_groupoid(&d.source, opts)?);
    let target = Arc::new(build_groupoid(&d.target, opts)?);
    let n = source.objects();
    if d.phi.len() != n {
        return Err(Error::ShapeMismatch("phi needs one row per object".into()));
    }
    let phi = flatten(&d.phi, n, "phi")?;
    if opts.no_validate {
        MonoidalFunctor::from_parts(source, target, d.obj.clone(), d.mor.clone(), phi, d.phi0)
    } else {
        MonoidalFunctor::new(source, target, d.obj.clone(), d.mor.clone(), phi, d.phi0)
    }
}

fn payload<'a, T: Deserialize<'a>>(raw: &'a RawValue, origin: (usize, usize)) -> Result<T> {
    serde_json::from_str(raw.get()).map_err(|e| json_error(&e, origin))
}

pub fn parse_with(text: &str, opts: &LoadOptions) -> Result<Object> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| json_error(&e, (1, 1)))?;
    let origin = position(
        text,
        raw.payload.get().as_ptr() as usize - text.as_ptr() as usize,
    );
    if raw.version != FORMAT_VERSION {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: format!("unsupported format version {:?}", raw.version),
        });
    }
    let p = raw.payload;
    let object = match raw.kind {
        Kind::Monoid => build_monoid(&payload(p, origin)?).map(|m| Object::Monoid(Arc::new(m))),
        Kind::Group => build_group(&payload(p, origin)?).map(Object::Group),
        Kind::Module => build_module(&payload(p, origin)?, opts).map(Object::Module),
        Kind::System => {
            build_system(&payload(p, origin)?, opts).map(|s| Object::System(Arc::new(s)))
        }
        Kind::Morphism => build_morphism(&payload(p, origin)?, opts).map(Object::Morphism),
        Kind::Groupoid => {
            build_groupoid(&payload(p, origin)?, opts).map(|g| Object::Groupoid(Arc::new(g)))
        }
        Kind::Functor => build_functor(&payload(p, origin)?, opts).map(Object::Functor),
    };
    object.map_err(|e| shape_error(e, origin))
}

pub fn parse(text: &str) -> Result<Object> {
    parse_with(text, &LoadOptions::default())
}

pub fn load(path: &Path, opts: &LoadOptions) -> Result<Object> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        column: 0,
        message: format!("{}: {e}", path.display()),
    })?;
    parse_with(&text, opts)
}

pub fn save(path: &Path, x: &Object) -> std::io::Result<()> {
    std::fs::write(path, serialize(x))
}

/// Checks the document's kind and unwraps it.
macro_rules! expect_kind {
    ($name:ident, $variant:ident, $ty:ty) => {
        pub fn $name(x: Object) -> Result<$ty> {
            match x {
                Object::$variant(v) => Ok(v),
                other => Err(Error::ShapeMismatch(format!(
                    "expected a {} document, found {}",
                    Kind::$variant.name(),
                    other.kind().name()
                ))),
            }
        }
    };
}

expect_kind!(into_monoid, Monoid, Arc<FiniteMonoid>);
expect_kind!(into_module, Module, GroupBundle);
expect_kind!(into_system, System, Arc<SchreierSystem>);
expect_kind!(into_morphism, Morphism, SchreierMorphism);
expect_kind!(into_groupoid, Groupoid, Arc<FinMonoidalGroupoid>);
expect_kind!(into_functor, Functor, MonoidalFunctor);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::schreier::SchreierCondition;

    fn corpus_objects() -> Vec<Object> {
        let mut out = Vec::new();
        for (_, s) in fixtures::corpus() {
            out.push(Object::Monoid(s.bundle().base().clone()));
            out.push(Object::Module(s.bundle().clone()));
            out.push(Object::System(Arc::new(s)));
        }
        out.push(Object::Group(FiniteGroup::symmetric3()));
        for (_, m) in fixtures::morphisms() {
            out.push(Object::Morphism(m));
        }
        for (_, g) in fixtures::groupoids().unwrap() {
            out.push(Object::Groupoid(g));
        }
        for (_, f, _) in fixtures::non_unitary_functors().unwrap() {
            out.push(Object::Functor(f));
        }
        out
    }

    #[test]
    fn round_trip_on_corpus() {
        let objects = corpus_objects();
        assert!(objects.len() > 40);
        for x in objects {
            let text = serialize(&x);
            let back = parse(&text).unwrap_or_else(|e| panic!("{:?}: {e}", x.kind()));
            assert_eq!(back, x);
            assert_eq!(serialize(&back), text);
        }
    }

    #[test]
    fn keys_are_sorted() {
        let text = serialize(&Object::System(Arc::new(fixtures::system("z2-const-z2"))));
        let kind = text.find("\"kind\"").unwrap();
        let payload = text.find("\"payload\"").unwrap();
        let version = text.find("\"version\"").unwrap();
        assert!(kind < payload && payload < version);
        assert!(text.find("\"groups\"").unwrap() < text.find("\"lstar\"").unwrap());
    }

    #[test]
    fn malformed_tables_are_parse_errors() {
        let ragged = r#"{"version": "1", "kind": "monoid",
  "payload": {"table": [[0, 1], [1]], "unit": 0}}"#;
        match parse(ragged) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 14)),
            other => panic!("{other:?}"),
        }
        let typed = r#"{"version": "1", "kind": "monoid",
  "payload": {"table": [[0, "x"]], "unit": 0}}"#;
        match parse(typed) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse("{\"version\": \"1\""),
            Err(Error::Parse { line: 1, .. })
        ));
        let unknown = r#"{"version": "1", "kind": "monoid", "payload": {"table": [[0]], "unit": 0, "extra": 1}}"#;
        assert!(matches!(parse(unknown), Err(Error::Parse { .. })));
        let top =
            r#"{"version": "1", "kind": "monoid", "payload": {"table": [[0]], "unit": 0}, "x": 0}"#;
        assert!(matches!(parse(top), Err(Error::Parse { .. })));
        let version =
            r#"{"version": "2", "kind": "monoid", "payload": {"table": [[0]], "unit": 0}}"#;
        assert!(matches!(parse(version), Err(Error::Parse { .. })));
        let missing = r#"{"kind": "monoid", "payload": {"table": [[0]], "unit": 0}}"#;
        assert!(matches!(parse(missing), Err(Error::Parse { .. })));
    }

    #[test]
    fn invalid_systems_are_validation_errors() {
        let s = fixtures::system("z2-const-z2");
        let bad = SchreierSystem::from_parts(s.bundle().clone(), {
            let mut l = s.lambda_table().to_vec();
            l[6] = 1;
            l
        })
        .unwrap();
        assert!(crate::schreier::validate_system(&bad).cites(&SchreierCondition::Normalized));
        let text = serialize(&Object::System(Arc::new(bad.clone())));
        match parse(&text) {
            Err(Error::Invalid { what, report }) => {
                assert_eq!(what, "Schreier system");
                assert!(report.contains("Normalized"), "{report}");
            }
            other => panic!("{other:?}"),
        }
        let loaded = parse_with(
            &text,
            &LoadOptions {
                no_validate: true,
                base: None,
            },
        )
        .unwrap();
        assert_eq!(loaded, Object::System(Arc::new(bad)));
    }

    #[test]
    fn modules_may_take_their_base_separately() {
        let bundle = fixtures::cyclic_constant(2, 2);
        let mut doc = module_doc(&bundle);
        doc.base = None;
        let text = to_canonical(Kind::Module, doc);
        assert!(matches!(parse(&text), Err(Error::Parse { .. })));
        let opts = LoadOptions {
            no_validate: false,
            base: Some(bundle.base().clone()),
        };
        assert_eq!(
            parse_with(&text, &opts).unwrap(),
            Object::Module(bundle.clone())
        );
        let other = LoadOptions {
            no_validate: false,
            base: Some(Arc::new(FiniteMonoid::idempotent())),
        };
        let full = serialize(&Object::Module(bundle));
        assert!(matches!(
            parse_with(&full, &other),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn kind_mismatch_is_reported() {
        let x = parse(&serialize(&Object::Group(FiniteGroup::cyclic(2)))).unwrap();
        assert!(into_system(x).is_err());
    }
}
