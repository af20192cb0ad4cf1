//! Proof scripts: a finite derivation tree with rule annotations and, for
//! cyclic proofs, a bud → companion map.
//!
//! ```text
//! (system N)
//! (axiom zero (all x (imp (N x) (not (= (s x) 0)))))
//! (root 0)
//! (node 0 (seq (ante (N x)) (succ (N x))) (rule axiom) (children))
//! (bud 7 (seq (ante (N x)) (succ (p x x))) (companion 0))
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use thiserror::Error;

use super::parse::{is_ident, FormulaReader};
use super::sexp::{self, Sexp};
use super::{Formula, InductiveSystem, Production, Sequent, Subst, SyntaxError, Term};

/// The induction hypothesis `F_i` over induction variables `z_i` for one
/// inductive predicate `P_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub pred: String,
    pub vars: Vec<String>,
    pub formula: Formula,
}

/// Target predicate `P_j` of an induction together with the hypotheses
/// for the predicates it depends on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionAnnotation {
    pub target: String,
    pub hyps: Vec<Hypothesis>,
}

impl InductionAnnotation {
    pub fn hyp(&self, pred: &str) -> Option<&Hypothesis> {
        self.hyps.iter().find(|h| h.pred == pred)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Axiom,
    Wk,
    Cut(Formula),
    Subst(Subst),
    NotL,
    NotR,
    OrL,
    OrR,
    AndL,
    AndR,
    ImpL,
    ImpR,
    /// Eigenvariable; defaults to the bound variable.
    ExL(Option<String>),
    ExR(Term),
    AllL(Term),
    AllR(Option<String>),
    /// `(=L)` with its template `Γ ⊢ Δ` over the swapped variables.
    EqL {
        x: String,
        y: String,
        template: Sequent,
    },
    EqR,
    /// Right introduction by the `index`-th production of `pred`, with the
    /// production variables instantiated by `args`.
    Intro {
        pred: String,
        index: usize,
        args: Vec<Term>,
    },
    /// Induction; `fresh` holds one vector per minor premise.
    Ind {
        ann: InductionAnnotation,
        fresh: Option<Vec<Vec<String>>>,
    },
    /// Case split; `fresh` holds one vector per production of `pred`.
    Case {
        pred: String,
        fresh: Option<Vec<Vec<String>>>,
    },
    /// Leaf closed by a named extra axiom.
    Use(String),
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Axiom => "axiom",
            Rule::Wk => "wk",
            Rule::Cut(_) => "cut",
            Rule::Subst(_) => "subst",
            Rule::NotL => "not-l",
            Rule::NotR => "not-r",
            Rule::OrL => "or-l",
            Rule::OrR => "or-r",
            Rule::AndL => "and-l",
            Rule::AndR => "and-r",
            Rule::ImpL => "imp-l",
            Rule::ImpR => "imp-r",
            Rule::ExL(_) => "ex-l",
            Rule::ExR(_) => "ex-r",
            Rule::AllL(_) => "all-l",
            Rule::AllR(_) => "all-r",
            Rule::EqL { .. } => "eq-l",
            Rule::EqR => "eq-r",
            Rule::Intro { .. } => "intro",
            Rule::Ind { .. } => "ind",
            Rule::Case { .. } => "case",
            Rule::Use(_) => "use",
        }
    }
}

fn write_fresh(out: &mut String, fresh: &Option<Vec<Vec<String>>>) {
    for vs in fresh.iter().flatten() {
        out.push_str(" (fresh");
        for v in vs {
            let _ = write!(out, " {v}");
        }
        out.push(')');
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = format!("(rule {}", self.name());
        match self {
            Rule::Cut(g) => write!(out, " {g}")?,
            Rule::Subst(s) => {
                for (v, t) in s {
                    write!(out, " ({v} {t})")?;
                }
            }
            Rule::ExL(Some(y)) | Rule::AllR(Some(y)) => write!(out, " {y}")?,
            Rule::ExR(t) | Rule::AllL(t) => write!(out, " {t}")?,
            Rule::EqL { x, y, template } => write!(out, " {x} {y} {template}")?,
            Rule::Intro { pred, index, args } => {
                write!(out, " {pred} {index}")?;
                for a in args {
                    write!(out, " {a}")?;
                }
            }
            Rule::Ind { ann, fresh } => {
                write!(out, " {}", ann.target)?;
                for h in &ann.hyps {
                    write!(out, " (hyp {} ({}) {})", h.pred, h.vars.join(" "), h.formula)?;
                }
                write_fresh(&mut out, fresh);
            }
            Rule::Case { pred, fresh } => {
                write!(out, " {pred}")?;
                write_fresh(&mut out, fresh);
            }
            Rule::Use(name) => write!(out, " {name}")?,
            _ => {}
        }
        out.push(')');
        f.write_str(&out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofNode {
    pub sequent: Sequent,
    /// `None` for buds.
    pub rule: Option<Rule>,
    pub children: Vec<String>,
}

/// Header declarations, kept so a script prints back as written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    System(Vec<String>),
    Inductive(String, usize),
    Ordinary(String, usize),
    Production(Production),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofScript {
    pub decls: Vec<Decl>,
    pub system: InductiveSystem,
    pub axioms: Vec<(String, Formula)>,
    pub root: String,
    pub nodes: BTreeMap<String, ProofNode>,
    pub buds: BTreeMap<String, String>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProofError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("duplicate node id `{0}`")]
    DuplicateId(String),
    #[error("node `{node}` lists dangling child `{child}`")]
    DanglingChild { node: String, child: String },
    #[error("bud `{bud}` names missing companion `{companion}`")]
    MissingCompanion { bud: String, companion: String },
    #[error("companion `{companion}` of bud `{bud}` is itself a bud")]
    CompanionIsBud { bud: String, companion: String },
    #[error("node `{0}` has more than one parent")]
    MultipleParents(String),
    #[error("cycle in child relation through node `{0}`")]
    Cycle(String),
    #[error("node `{0}` is not reachable from the root")]
    Unreachable(String),
    #[error("{0}")]
    Root(String),
}

impl ProofScript {
    /// An empty script over `sys`; fill `nodes`, `buds` and `root`, then
    /// call [`ProofScript::validate`].
    pub fn new(decls: Vec<Decl>, system: InductiveSystem) -> ProofScript {
        ProofScript {
            decls,
            system,
            axioms: Vec::new(),
            root: String::new(),
            nodes: BTreeMap::new(),
            buds: BTreeMap::new(),
        }
    }

    pub fn node(&self, id: &str) -> &ProofNode {
        &self.nodes[id]
    }

    pub fn is_bud(&self, id: &str) -> bool {
        self.buds.contains_key(id)
    }

    pub fn axiom(&self, name: &str) -> Option<&Formula> {
        self.axioms.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    /// Node ids in depth-first pre-order from the root.
    pub fn preorder(&self) -> Vec<&str> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root.as_str()];
        while let Some(id) = stack.pop() {
            out.push(id);
            if let Some(n) = self.nodes.get(id) {
                for c in n.children.iter().rev() {
                    stack.push(c);
                }
            }
        }
        out
    }

    /// Map from child id to parent id.
    pub fn parents(&self) -> BTreeMap<&str, &str> {
        let mut out = BTreeMap::new();
        for (id, n) in &self.nodes {
            for c in &n.children {
                out.insert(c.as_str(), id.as_str());
            }
        }
        out
    }

    /// Ids on the tree path from the root down to `id`, inclusive.
    pub fn path_from_root(&self, id: &str) -> Vec<String> {
        let parents = self.parents();
        let mut path = vec![id.to_string()];
        let mut cur = id;
        while let Some(p) = parents.get(cur) {
            path.push(p.to_string());
            cur = p;
        }
        path.reverse();
        path
    }

    /// Checks tree shape, child references and the bud map.
    pub fn validate(&self) -> Result<(), ProofError> {
        let mut parent: BTreeMap<&str, &str> = BTreeMap::new();
        for (id, n) in &self.nodes {
            for c in &n.children {
                if !self.nodes.contains_key(c) {
                    return Err(ProofError::DanglingChild {
                        node: id.clone(),
                        child: c.clone(),
                    });
                }
                if parent.insert(c, id).is_some() {
                    return Err(ProofError::MultipleParents(c.clone()));
                }
            }
        }
        for (bud, comp) in &self.buds {
            match self.nodes.get(comp) {
                None => {
                    return Err(ProofError::MissingCompanion {
                        bud: bud.clone(),
                        companion: comp.clone(),
                    })
                }
                Some(_) if self.buds.contains_key(comp) => {
                    return Err(ProofError::CompanionIsBud {
                        bud: bud.clone(),
                        companion: comp.clone(),
                    })
                }
                Some(_) => {}
            }
        }
        if !self.nodes.contains_key(&self.root) {
            return Err(ProofError::Root(format!("root `{}` is not a node", self.root)));
        }
        if parent.contains_key(self.root.as_str()) {
            return Err(ProofError::Cycle(self.root.clone()));
        }
        let reachable: BTreeSet<&str> = self.preorder().into_iter().collect();
        for id in self.nodes.keys() {
            if !reachable.contains(id.as_str()) {
                // Follow parents upward; revisiting a node means a cycle.
                let mut seen = BTreeSet::new();
                let mut cur = id.as_str();
                while let Some(p) = parent.get(cur) {
                    if !seen.insert(cur) {
                        return Err(ProofError::Cycle(cur.to_string()));
                    }
                    cur = p;
                }
                return Err(ProofError::Unreachable(id.clone()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for ProofScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            match d {
                Decl::System(names) => writeln!(f, "(system {})", names.join(" "))?,
                Decl::Inductive(n, k) => writeln!(f, "(inductive {n} {k})")?,
                Decl::Ordinary(n, k) => writeln!(f, "(ordinary {n} {k})")?,
                Decl::Production(p) => {
                    write!(f, "(production {}", p.conclusion_atom())?;
                    for a in p.premise_atoms() {
                        write!(f, " {a}")?;
                    }
                    writeln!(f, ")")?;
                }
            }
        }
        for (name, ax) in &self.axioms {
            writeln!(f, "(axiom {name} {ax})")?;
        }
        writeln!(f, "(root {})", self.root)?;
        for id in self.preorder() {
            let n = &self.nodes[id];
            match (&n.rule, self.buds.get(id)) {
                (_, Some(comp)) => {
                    writeln!(f, "(bud {id}\n  {}\n  (companion {comp}))", n.sequent)?
                }
                (Some(rule), None) => writeln!(
                    f,
                    "(node {id}\n  {}\n  {rule}\n  (children{}))",
                    n.sequent,
                    n.children.iter().map(|c| format!(" {c}")).collect::<String>()
                )?,
                (None, None) => writeln!(f, "(bud {id}\n  {})", n.sequent)?,
            }
        }
        Ok(())
    }
}

struct ScriptReader {
    system: InductiveSystem,
}

impl ScriptReader {
    fn reader(&self) -> FormulaReader<'_> {
        FormulaReader {
            signature: &self.system.signature,
        }
    }

    fn atom<'s>(&self, s: &'s Sexp, what: &str) -> Result<&'s str, SyntaxError> {
        s.as_atom()
            .ok_or_else(|| SyntaxError::at(s.pos(), format!("expected {what}, got `{s}`")))
    }

    fn var(&self, s: &Sexp) -> Result<String, SyntaxError> {
        match s.as_atom() {
            Some(a) if is_ident(a) => Ok(a.to_string()),
            _ => Err(SyntaxError::at(s.pos(), format!("expected a variable, got `{s}`"))),
        }
    }

    fn usize(&self, s: &Sexp) -> Result<usize, SyntaxError> {
        self.atom(s, "a number")?
            .parse()
            .map_err(|_| SyntaxError::at(s.pos(), format!("expected a number, got `{s}`")))
    }

    fn tagged<'s>(&self, s: &'s Sexp, tag: &str) -> Result<&'s [Sexp], SyntaxError> {
        match s.as_list() {
            Some(items) if s.head() == Some(tag) => Ok(&items[1..]),
            _ => Err(SyntaxError::at(s.pos(), format!("expected `({tag} ...)`, got `{s}`"))),
        }
    }

    fn sequent(&self, s: &Sexp) -> Result<Sequent, SyntaxError> {
        let parts = self.tagged(s, "seq")?;
        if parts.len() != 2 {
            return Err(SyntaxError::at(s.pos(), "expected `(seq (ante ...) (succ ...))`"));
        }
        let r = self.reader();
        let ante = self.tagged(&parts[0], "ante")?;
        let succ = self.tagged(&parts[1], "succ")?;
        Ok(Sequent {
            ante: ante.iter().map(|f| r.formula(f)).collect::<Result<_, _>>()?,
            succ: succ.iter().map(|f| r.formula(f)).collect::<Result<_, _>>()?,
        })
    }

    fn fresh_lists(&self, items: &[Sexp]) -> Result<Option<Vec<Vec<String>>>, SyntaxError> {
        if items.is_empty() {
            return Ok(None);
        }
        items
            .iter()
            .map(|it| self.tagged(it, "fresh")?.iter().map(|v| self.var(v)).collect())
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }

    fn opt_var(&self, args: &[Sexp], pos: sexp::Pos) -> Result<Option<String>, SyntaxError> {
        match args {
            [] => Ok(None),
            [v] => Ok(Some(self.var(v)?)),
            _ => Err(SyntaxError::at(pos, "expected at most one eigenvariable")),
        }
    }

    fn rule(&self, s: &Sexp) -> Result<Rule, SyntaxError> {
        let items = self.tagged(s, "rule")?;
        let pos = s.pos();
        let Some((name, args)) = items.split_first() else {
            return Err(SyntaxError::at(pos, "missing rule name"));
        };
        let name = self.atom(name, "a rule name")?;
        let r = self.reader();
        let arity = |n: usize| -> Result<(), SyntaxError> {
            if args.len() == n {
                Ok(())
            } else {
                Err(SyntaxError::at(
                    pos,
                    format!("rule `{name}` takes {n} arguments, got {}", args.len()),
                ))
            }
        };
        Ok(match name {
            "axiom" | "wk" | "not-l" | "not-r" | "or-l" | "or-r" | "and-l" | "and-r" | "imp-l"
            | "imp-r" | "eq-r" => {
                arity(0)?;
                match name {
                    "axiom" => Rule::Axiom,
                    "wk" => Rule::Wk,
                    "not-l" => Rule::NotL,
                    "not-r" => Rule::NotR,
                    "or-l" => Rule::OrL,
                    "or-r" => Rule::OrR,
                    "and-l" => Rule::AndL,
                    "and-r" => Rule::AndR,
                    "imp-l" => Rule::ImpL,
                    "imp-r" => Rule::ImpR,
                    _ => Rule::EqR,
                }
            }
            "cut" => {
                arity(1)?;
                Rule::Cut(r.formula(&args[0])?)
            }
            "subst" => {
                let mut theta = Subst::new();
                for pair in args {
                    match pair.as_list() {
                        Some([v, t]) => {
                            let v = self.var(v)?;
                            if theta.insert(v.clone(), r.term(t)?).is_some() {
                                return Err(SyntaxError::at(
                                    pair.pos(),
                                    format!("variable `{v}` substituted twice"),
                                ));
                            }
                        }
                        _ => {
                            return Err(SyntaxError::at(pair.pos(), "expected `(VAR TERM)`"));
                        }
                    }
                }
                Rule::Subst(theta)
            }
            "ex-l" => Rule::ExL(self.opt_var(args, pos)?),
            "all-r" => Rule::AllR(self.opt_var(args, pos)?),
            "ex-r" | "all-l" => {
                arity(1)?;
                let t = r.term(&args[0])?;
                if name == "ex-r" {
                    Rule::ExR(t)
                } else {
                    Rule::AllL(t)
                }
            }
            "eq-l" => {
                arity(3)?;
                Rule::EqL {
                    x: self.var(&args[0])?,
                    y: self.var(&args[1])?,
                    template: self.sequent(&args[2])?,
                }
            }
            "intro" => {
                if args.len() < 2 {
                    return Err(SyntaxError::at(pos, "rule `intro` needs a predicate and an index"));
                }
                Rule::Intro {
                    pred: self.atom(&args[0], "a predicate")?.to_string(),
                    index: self.usize(&args[1])?,
                    args: args[2..].iter().map(|t| r.term(t)).collect::<Result<_, _>>()?,
                }
            }
            "ind" => {
                let Some((target, rest)) = args.split_first() else {
                    return Err(SyntaxError::at(pos, "rule `ind` needs a predicate"));
                };
                let split = rest.iter().position(|a| a.head() == Some("fresh")).unwrap_or(rest.len());
                let mut hyps = Vec::new();
                for h in &rest[..split] {
                    let parts = self.tagged(h, "hyp")?;
                    let [pred, vars, formula] = parts else {
                        return Err(SyntaxError::at(h.pos(), "expected `(hyp PRED (VARS) F)`"));
                    };
                    let vars = vars
                        .as_list()
                        .ok_or_else(|| SyntaxError::at(vars.pos(), "expected a variable list"))?
                        .iter()
                        .map(|v| self.var(v))
                        .collect::<Result<_, _>>()?;
                    hyps.push(Hypothesis {
                        pred: self.atom(pred, "a predicate")?.to_string(),
                        vars,
                        formula: r.formula(formula)?,
                    });
                }
                Rule::Ind {
                    ann: InductionAnnotation {
                        target: self.atom(target, "a predicate")?.to_string(),
                        hyps,
                    },
                    fresh: self.fresh_lists(&rest[split..])?,
                }
            }
            "case" => {
                let Some((pred, rest)) = args.split_first() else {
                    return Err(SyntaxError::at(pos, "rule `case` needs a predicate"));
                };
                Rule::Case {
                    pred: self.atom(pred, "a predicate")?.to_string(),
                    fresh: self.fresh_lists(rest)?,
                }
            }
            "use" => {
                arity(1)?;
                Rule::Use(self.atom(&args[0], "an axiom name")?.to_string())
            }
            other => return Err(SyntaxError::at(pos, format!("unknown rule `{other}`"))),
        })
    }

    fn production(&self, args: &[Sexp], pos: sexp::Pos) -> Result<Production, SyntaxError> {
        let r = self.reader();
        let mut atoms = Vec::new();
        for a in args {
            match r.formula(a)? {
                Formula::Pred(p, ts) => atoms.push((p, ts, a.pos())),
                _ => return Err(SyntaxError::at(a.pos(), "productions relate predicate atoms")),
            }
        }
        let Some(((cp, cargs, cpos), premises)) = atoms.split_first() else {
            return Err(SyntaxError::at(pos, "production needs a conclusion"));
        };
        if !self.system.is_inductive(cp) {
            return Err(SyntaxError::at(*cpos, format!("`{cp}` is not inductive")));
        }
        let mut prod = Production {
            conclusion: (cp.clone(), cargs.clone()),
            ordinary: vec![],
            inductive: vec![],
        };
        for (p, ts, _) in premises {
            if self.system.is_inductive(p) {
                prod.inductive.push((p.clone(), ts.clone()));
            } else {
                prod.ordinary.push((p.clone(), ts.clone()));
            }
        }
        Ok(prod)
    }
}

/// Parses and validates a proof script.
pub fn parse_proof(text: &str) -> Result<ProofScript, ProofError> {
    let items = sexp::read_all(text)?;
    let mut rd = ScriptReader {
        system: InductiveSystem::empty(),
    };
    let mut decls = Vec::new();
    let mut axioms = Vec::new();
    let mut root = None;
    let mut body = Vec::new();
    let mut saw_system = false;
    for it in &items {
        let pos = it.pos();
        let args = it.as_list().map(|l| &l[1..]).unwrap_or(&[]);
        match it.head() {
            Some("system") => {
                let mut names = Vec::new();
                for a in args {
                    let n = rd.atom(a, "a system name")?;
                    rd.system
                        .add_builtin(n)
                        .ok_or_else(|| SyntaxError::at(a.pos(), format!("unknown system `{n}`")))?;
                    names.push(n.to_string());
                }
                saw_system = true;
                decls.push(Decl::System(names));
            }
            Some(kind @ ("inductive" | "ordinary")) => {
                let [name, arity] = args else {
                    return Err(SyntaxError::at(pos, format!("expected `({kind} NAME ARITY)`")).into());
                };
                let name = rd.atom(name, "a predicate name")?.to_string();
                let arity = rd.usize(arity)?;
                let inductive = kind == "inductive";
                rd.system.signature.declare(&name, arity, inductive);
                saw_system = true;
                decls.push(if inductive {
                    Decl::Inductive(name, arity)
                } else {
                    Decl::Ordinary(name, arity)
                });
            }
            Some("production") => {
                let p = rd.production(args, pos)?;
                rd.system.productions.push(p.clone());
                decls.push(Decl::Production(p));
            }
            Some("axiom") => {
                let [name, f] = args else {
                    return Err(SyntaxError::at(pos, "expected `(axiom NAME F)`").into());
                };
                let name = rd.atom(name, "an axiom name")?.to_string();
                if !saw_system {
                    rd.system = InductiveSystem::default();
                    saw_system = true;
                }
                axioms.push((name, rd.reader().formula(f)?));
            }
            Some("root") => {
                let [id] = args else {
                    return Err(SyntaxError::at(pos, "expected `(root ID)`").into());
                };
                root = Some(rd.atom(id, "a node id")?.to_string());
            }
            Some("node") | Some("bud") => body.push(it),
            _ => return Err(SyntaxError::at(pos, format!("unexpected top-level form `{it}`")).into()),
        }
    }
    if !saw_system {
        rd.system = InductiveSystem::default();
    }

    let mut script = ProofScript::new(decls, rd.system.clone());
    script.axioms = axioms;
    for it in body {
        let items = it.as_list().expect("node forms are lists");
        let pos = it.pos();
        let id = items
            .get(1)
            .ok_or_else(|| SyntaxError::at(pos, "missing node id"))?;
        let id = rd.atom(id, "a node id")?.to_string();
        let sequent = rd.sequent(items.get(2).ok_or_else(|| SyntaxError::at(pos, "missing sequent"))?)?;
        let node = if it.head() == Some("node") {
            let [_, _, _, rule, children] = items else {
                return Err(SyntaxError::at(pos, "expected `(node ID SEQ (rule ...) (children ...))`").into());
            };
            let children = rd
                .tagged(children, "children")?
                .iter()
                .map(|c| rd.atom(c, "a node id").map(str::to_string))
                .collect::<Result<_, _>>()?;
            ProofNode {
                sequent,
                rule: Some(rd.rule(rule)?),
                children,
            }
        } else {
            let companion = match items {
                [_, _, _, comp] => rd.tagged(comp, "companion")?,
                _ => return Err(SyntaxError::at(pos, format!("bud `{id}` without companion")).into()),
            };
            let [comp] = companion else {
                return Err(SyntaxError::at(pos, format!("bud `{id}` without companion")).into());
            };
            script
                .buds
                .insert(id.clone(), rd.atom(comp, "a node id")?.to_string());
            ProofNode {
                sequent,
                rule: None,
                children: vec![],
            }
        };
        if script.nodes.insert(id.clone(), node).is_some() {
            return Err(ProofError::DuplicateId(id));
        }
    }
    script.root = match root {
        Some(r) => r,
        None => {
            let parents = script.parents();
            let mut roots = script.nodes.keys().filter(|k| !parents.contains_key(k.as_str()));
            match (roots.next(), roots.next()) {
                (Some(r), None) => r.clone(),
                (None, _) if script.nodes.is_empty() => {
                    return Err(ProofError::Root("script has no nodes".into()))
                }
                (None, _) => return Err(ProofError::Cycle(script.nodes.keys().next().unwrap().clone())),
                (Some(_), Some(_)) => {
                    return Err(ProofError::Root("several parentless nodes; add `(root ID)`".into()))
                }
            }
        }
    };
    script.validate()?;
    Ok(script)
}
