//! Library side of the `ainfty` command: job files, building the objects
//! they describe, running a command and producing its report.

pub mod job;
pub mod report;

use std::collections::BTreeMap;

use ainfty::ainf_core::{deform, AInfAlgebra, MultiOp};
use ainfty::barcobar::{
    bar, bar_homology, cobar, is_twisting_cochain, koszul_acyclicity, koszul_dual,
    universal_twisting_cochain, TwistingCochain,
};
use ainfty::ext::{ext_ainf, path_algebra, Arrow, FDAlgebra, QuiverPresentation, RightModule};
use ainfty::grlin::{homology_dimensions, word_index, ChainComplex, Field, GradedMap, GradedSpace, Vector};
use ainfty::hochschild::{hochschild_bar_bialgebra, hochschild_differential, Cochain, HochschildComplex};
use ainfty::transfer::minimal_model;
use ainfty::{random, Error};

use job::{Combination, JobSpec, Object, QuiverSpec, TableSpec};
pub use report::Report;

pub const COMMANDS: [&str; 9] = [
    "check",
    "minimal-model",
    "ext",
    "bar-homology",
    "cobar",
    "koszul",
    "deform-check",
    "braces",
    "tw-check",
];

/// Why a job did not produce a report.
#[derive(Debug)]
pub enum Failure {
    /// Malformed input or options; exit status 2.
    Usage(String),
    /// The computation rejected the input as violating an identity;
    /// exit status 1.
    Identity(String),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Identity(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotDga(_)
            | Error::NotAComplex(_)
            | Error::BarNotDifferential { .. }
            | Error::NotTwisting(_)
            | Error::ContractionFailed(_) => Failure::Identity(e.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<job::ParseError> for Failure {
    fn from(e: job::ParseError) -> Self {
        Failure::Usage(format!("parse error at {e}"))
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn usage<T>(m: impl Into<String>) -> Run<T> {
    Err(Failure::Usage(m.into()))
}

/// Flags that override or complete the job file.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub arity_max: Option<usize>,
    pub length: Option<usize>,
    pub resolution: Option<usize>,
    pub module: Option<String>,
    pub seed: Option<u64>,
    pub random: Option<usize>,
}

fn field_of(job: &JobSpec) -> Run<Field> {
    Ok(Field::from_characteristic(job.field)?)
}

fn scalar(field: Field, s: &str) -> Run<ainfty::grlin::Scalar> {
    Ok(field.parse(s)?)
}

fn vector(field: Field, space: &GradedSpace, c: &Combination<String>) -> Run<Vector> {
    let mut v = Vector::new();
    for (coeff, name) in c {
        v.add_term(space.require(name)?, &scalar(field, coeff)?);
    }
    Ok(v)
}

fn table_of(job: &JobSpec) -> Run<&TableSpec> {
    match &job.object {
        Some(Object::Table(t)) => Ok(t),
        _ => usage("this command needs a `table` block"),
    }
}

/// The algebra of a `table` block. `d` and `product` lines give a dg
/// algebra in the usual conventions; `op` lines add suspended structure
/// constants of `b_n` on top.
pub fn algebra_of(job: &JobSpec, arity_max: usize) -> Run<AInfAlgebra> {
    let field = field_of(job)?;
    let t = table_of(job)?;
    let space = GradedSpace::new(field, t.basis.iter().cloned())?;
    let mut a = if t.ops.is_empty() || !t.differential.is_empty() || !t.products.is_empty() {
        let mut cols = vec![Vector::new(); space.dim()];
        for (x, c) in &t.differential {
            cols[space.require(x)?].add_assign(&vector(field, &space, c)?);
        }
        let m1 = GradedMap::new(space.clone(), space.clone(), 1, cols)?;
        let mut m2 = MultiOp::new(2, 0);
        for (x, y, c) in &t.products {
            m2.add(vec![space.require(x)?, space.require(y)?], &vector(field, &space, c)?);
        }
        AInfAlgebra::from_dga_table(&m1, &m2, arity_max.max(2))?
    } else {
        AInfAlgebra::new(space.clone(), arity_max, [])?
    };
    let mut extra: BTreeMap<usize, MultiOp> = BTreeMap::new();
    for (ins, c) in &t.ops {
        let w = ins.iter().map(|x| space.require(x)).collect::<Result<Vec<_>, _>>()?;
        extra
            .entry(w.len())
            .or_insert_with(|| MultiOp::new(w.len(), 1))
            .add(w, &vector(field, &space, c)?);
    }
    for (n, op) in extra {
        let mut b = a.b(n);
        b.add_op(&op);
        a = a.with_op(b)?;
    }
    if let Some(u) = &t.unit {
        a = a.with_unit(space.require(u)?)?;
    }
    if let Some(e) = &t.augmentation {
        a = a.with_augmentation(Vector::basis(space.require(e)?, field.one()))?;
    }
    Ok(a.with_arity_max(arity_max))
}

/// The path algebra of a `quiver` block.
pub fn quiver_of(field: Field, q: &QuiverSpec) -> Run<FDAlgebra> {
    let vertex = |v: &str| -> Run<usize> {
        match q.vertices.iter().position(|x| x == v) {
            Some(i) => Ok(i),
            None => usage(format!("unknown vertex `{v}`")),
        }
    };
    let mut arrows = Vec::new();
    for (name, s, t) in &q.arrows {
        arrows.push(Arrow {
            name: name.clone(),
            source: vertex(s)?,
            target: vertex(t)?,
            degree: 0,
        });
    }
    let arrow = |a: &str| -> Run<usize> {
        match arrows.iter().position(|x| x.name == a) {
            Some(i) => Ok(i),
            None => usage(format!("unknown arrow `{a}`")),
        }
    };
    let mut relations = Vec::new();
    for r in &q.relations {
        let mut rel = Vec::new();
        for (c, p) in r {
            rel.push((scalar(field, c)?, p.iter().map(|a| arrow(a)).collect::<Run<Vec<_>>>()?));
        }
        relations.push(rel);
    }
    let Some(bound) = q.bound else {
        return usage("a quiver needs `bound`");
    };
    Ok(path_algebra(&QuiverPresentation {
        field,
        vertices: q.vertices.clone(),
        arrows,
        relations,
        bound,
    })?)
}

fn modules_of(b: &FDAlgebra, spec: &str) -> Run<Vec<RightModule>> {
    let q = b.presentation();
    if spec == "simples" {
        return Ok((0..q.vertices.len()).map(|v| RightModule::simple(b, v)).collect());
    }
    let mut out = Vec::new();
    for part in spec.split(',') {
        let (kind, v) = part.split_once(':').unwrap_or(("simple", part));
        let v = q.vertex(v)?;
        out.push(match kind {
            "simple" => RightModule::simple(b, v),
            "projective" => RightModule::projective(b, v),
            _ => return usage(format!("unknown module `{part}`; use simples, simple:v or projective:v")),
        });
    }
    Ok(out)
}

fn cochain_of(job: &JobSpec, a: &AInfAlgebra) -> Run<MultiOp> {
    let Some(c) = &job.cochain else {
        return usage("this command needs a `cochain` block");
    };
    let space = a.space();
    let mut op = MultiOp::new(c.arity, c.degree);
    for (ins, v) in &c.entries {
        let w = ins.iter().map(|x| space.require(x)).collect::<Result<Vec<_>, _>>()?;
        op.add(w, &vector(a.field(), space, v)?);
    }
    Ok(op)
}

fn describe(space: &GradedSpace, w: &[usize]) -> String {
    let names: Vec<&str> = w.iter().map(|&x| space.name(x)).collect();
    format!("({})", names.join(","))
}

/// Runs `command` on a parsed job.
pub fn run(command: &str, job: &JobSpec, opts: &Options) -> Run<Report> {
    let field = field_of(job)?;
    let arity_max = opts.arity_max.or(job.bounds.arity_max);
    let length = opts.length.or(job.bounds.length);
    let flag = |k: &str| job.flags.get(k).cloned();
    let mut r = Report::new(command, field.to_string());
    match command {
        "check" => {
            let n = arity_max.unwrap_or(4);
            r.value("arity_max", n);
            let a = match algebra_of(job, n) {
                Ok(a) => a,
                Err(Failure::Identity(m)) => {
                    r.verdict("stasheff", false, None, m);
                    return Ok(r);
                }
                Err(e) => return Err(e),
            };
            match a.first_stasheff_failure() {
                None => r.verdict("stasheff", true, None, "all Stasheff identities hold up to arity_max"),
                Some((k, w)) => r.verdict(
                    "stasheff",
                    false,
                    Some(describe(a.space(), &w)),
                    format!("Stasheff identity of arity {k} fails"),
                ),
            }
            if let Some(u) = a.strict_unit() {
                let c = a.strict_unit_check(u);
                let w = c.witness.map(|(k, w)| format!("b{k}{}", describe(a.space(), &w)));
                r.verdict("unit", c.holds, w, "strict unit");
            }
            r.ops("structure", &a);
        }
        "minimal-model" => {
            let n = arity_max.unwrap_or(4);
            let a = algebra_of(job, n)?;
            let (m, f) = minimal_model(&a, n)?;
            r.verdict("stasheff", m.satisfies_stasheff(), m.first_stasheff_failure().map(|(k, w)| format!("b{k}{}", describe(m.space(), &w))), "minimal model satisfies Stasheff up to arity_max");
            r.verdict("minimal", m.is_minimal(), None, "b1 = 0");
            r.verdict("morphism", f.is_valid(), f.first_failure().map(|(k, w)| format!("f{k}{}", describe(m.space(), &w))), "transfer map is an A∞-morphism");
            r.dims("homology", m.space().dimensions());
            r.ops("minimal model", &m);
        }
        "ext" => {
            let n = arity_max.unwrap_or(4);
            let Some(Object::Quiver(q)) = &job.object else {
                return usage("ext needs a `quiver` block");
            };
            let b = quiver_of(field, q)?;
            let spec = opts.module.clone().or(flag("module")).unwrap_or_else(|| "simples".into());
            let modules = modules_of(&b, &spec)?;
            let e = ext_ainf(&b, &modules, n, opts.resolution.or(job.bounds.resolution))?;
            r.value("modules", spec);
            r.value("arity_max", n);
            r.value("resolution_length", e.length);
            r.dims("Ext", e.dimensions());
            r.ops("Ext", &e.algebra);
        }
        "bar-homology" => {
            let l = length.unwrap_or(4);
            let a = algebra_of(job, arity_max.unwrap_or(l + 1))?;
            let h = bar_homology(&a, l)?;
            if a.space().basis().iter().all(|e| e.degree == 0) {
                let v: Vec<String> = (0..=l as i64).map(|k| h.get(&-k).copied().unwrap_or(0).to_string()).collect();
                r.value("by_length", format!("[{}]", v.join(",")));
            }
            r.value("length", l);
            r.dims("H(BA)", h);
        }
        "cobar" => {
            let l = length.unwrap_or(3);
            let (c, name) = match &job.object {
                Some(Object::Quadratic(_)) => (koszul_of(job, l)?.coalgebra, "Koszul dual coalgebra"),
                _ => (bar(&algebra_of(job, arity_max.unwrap_or(l + 1))?, l)?, "bar construction"),
            };
            let o = cobar(&c, l)?;
            r.value("coalgebra", name);
            r.value("length", l);
            r.dims("coalgebra", c.space().dimensions());
            r.dims("cobar", o.space().dimensions());
            r.dims("H(cobar)", homology_dimensions(&ChainComplex::new(o.m1())?));
        }
        "koszul" => {
            let l = length.unwrap_or(3);
            let data = koszul_of(job, l)?;
            r.value("dual_dimensions", format!("{:?}", data.dims()));
            let t = is_twisting_cochain(&data.tau);
            r.verdict("twisting", t.holds, t.witness_name, "τ: C → A is a twisting cochain");
            let acyc = koszul_acyclicity(&data, l)?;
            r.verdict("d_squared", true, None, "A ⊗_τ C ⊗_τ A is a complex");
            r.verdict(
                "acyclic",
                acyc.quasi_isomorphism,
                None,
                "A ⊗_τ C ⊗_τ A → A is a quasi-isomorphism in the window",
            );
            r.dims("A", acyc.algebra);
            r.dims("H(A ⊗_τ C ⊗_τ A)", acyc.homology);
        }
        "deform-check" => {
            let b = algebra_of(job, 2)?;
            let c = cochain_of(job, &b)?;
            let n = c.arity();
            let delta: Cochain = hochschild_differential(&b, &c)?;
            let cocycle = delta.is_zero();
            let a = deform(&b, &c, n)?.with_arity_max(n + 2);
            let stasheff = a.satisfies_stasheff();
            r.value("cocycle", cocycle);
            r.value("stasheff", stasheff);
            r.verdict(
                "deformation",
                cocycle == stasheff,
                None,
                format!("Stasheff up to arity {} iff δc = 0", n + 2),
            );
            let hc = HochschildComplex::new(&b)?;
            let entries = delta
                .iter()
                .map(|((w, o), x)| report::Entry {
                    arity: w.len(),
                    inputs: w.iter().map(|&i| b.space().name(i).to_string()).collect(),
                    output: hc.space().name(*o).to_string(),
                    coefficient: x.to_string(),
                })
                .collect();
            r.tables.push(report::Table {
                name: "δc".into(),
                entries,
            });
        }
        "braces" => {
            let l = length.unwrap_or(2);
            let n = arity_max.unwrap_or(2);
            let a = algebra_of(job, 2)?;
            let (hc, rep) = hochschild_bar_bialgebra(&a, l, n)?;
            r.value("words", rep.words);
            r.value("pairs", rep.pairs);
            r.value("triples", rep.triples);
            for (name, w) in [
                ("associativity", &rep.associativity),
                ("unit", &rep.unit),
                ("coassociativity", &rep.coassociativity),
                ("multiplicativity", &rep.multiplicativity),
                ("derivation", &rep.derivation),
                ("coderivation", &rep.coderivation),
                ("d_squared", &rep.d_squared),
            ] {
                r.verdict(name, w.is_none(), w.clone(), format!("{name} on the window"));
            }
            let letters: Vec<_> = (0..=n.min(2)).flat_map(|k| hc.basis(k)).collect();
            let one = field.one();
            let mut entries = Vec::new();
            for f in &letters {
                for g in &letters {
                    let fg = hc.brace(&Cochain::basis(f.clone(), one.clone()), &[Cochain::basis(g.clone(), one.clone())]);
                    for (l, c) in &fg {
                        entries.push(report::Entry {
                            arity: 2,
                            inputs: vec![hc.describe_letter(f), hc.describe_letter(g)],
                            output: hc.describe_letter(l),
                            coefficient: c.to_string(),
                        });
                    }
                }
            }
            r.tables.push(report::Table {
                name: "braces f{g}".into(),
                entries,
            });
        }
        "tw-check" => {
            let l = length.unwrap_or(3);
            let a = algebra_of(job, arity_max.unwrap_or(l + 1))?;
            let u = universal_twisting_cochain(&a, l)?;
            let t = is_twisting_cochain(&u);
            r.verdict("universal", t.holds, t.witness_name, "BA → A is a twisting cochain");
            let seed = opts.seed.or(flag_number(job, "seed")?).unwrap_or(0);
            let count = opts.random.or(flag_number(job, "random")?).unwrap_or(20);
            let mut rng = random::rng(seed);
            let (mut rejected, mut accepted) = (0, 0);
            let mut witnesses = Vec::new();
            for _ in 0..count {
                let tau = into_ideal(&a, random::map(&mut rng, u.source().space(), a.space(), 1, 0.5))?;
                let c = TwistingCochain::new(u.source().clone(), a.clone(), tau)?;
                let check = is_twisting_cochain(&c);
                if check.holds {
                    accepted += 1;
                } else {
                    rejected += 1;
                    witnesses.push(check.witness_name.unwrap_or_default());
                }
            }
            r.value("seed", seed);
            r.value("random_rejected", rejected);
            r.value("random_accepted", accepted);
            r.value("random_witnesses", witnesses.join(" "));
        }
        other => return usage(format!("unknown command `{other}`")),
    }
    Ok(r)
}

/// Pushes a map into `ker ε` by removing its component along one basis
/// element on which `ε` is nonzero.
fn into_ideal(a: &AInfAlgebra, f: GradedMap) -> Run<GradedMap> {
    let Some(eps) = a.augmentation() else {
        return Ok(f);
    };
    let Some((&j, ej)) = eps.iter().next() else {
        return Ok(f);
    };
    let cols = f
        .columns()
        .iter()
        .map(|v| {
            let mut v = v.clone();
            let mut e = a.field().zero();
            for (i, c) in eps {
                if let Some(x) = v.get(i) {
                    e = &e + &(x * c);
                }
            }
            v.add_term(j, &-&(&e * &ej.inv()));
            v
        })
        .collect();
    Ok(GradedMap::new(f.source().clone(), f.target().clone(), f.degree(), cols)?)
}

fn flag_number<T: std::str::FromStr>(job: &JobSpec, k: &str) -> Run<Option<T>> {
    match job.flags.get(k) {
        None => Ok(None),
        Some(v) => match v.parse() {
            Ok(n) => Ok(Some(n)),
            Err(_) => usage(format!("flag `{k}` expects a number, found `{v}`")),
        },
    }
}

fn koszul_of(job: &JobSpec, l: usize) -> Run<ainfty::barcobar::KoszulData> {
    let field = field_of(job)?;
    let Some(Object::Quadratic(q)) = &job.object else {
        return usage("this command needs a `quadratic` block");
    };
    let v = GradedSpace::new(field, q.generators.iter().cloned())?;
    let mut rels = Vec::new();
    for r in &q.relations {
        let mut vec = Vector::new();
        for (c, w) in r {
            let w = w.iter().map(|x| v.require(x)).collect::<Result<Vec<_>, _>>()?;
            vec.add_term(word_index(&w, v.dim()), &scalar(field, c)?);
        }
        rels.push(vec);
    }
    Ok(koszul_dual(&v, &rels, l)?)
}
