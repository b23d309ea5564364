use crate::cache::{Cache, Loaded};
use crate::config::{Format, RunConfig};
use crate::render;
use crate::Failure;
use kflag::casselman::{bnn_scan, gindikin_karpelevich, holomorphy_check, TransitionTable};
use kflag::heckeops::verify_relations;
use kflag::json;
use kflag::kclass::{LocalizedClass, SchubertExpansion};
use kflag::motivic::{divisibility_check, positivity_scan, verify_motivic, Family, PositivityMode};
use kflag::report::Report;
use kflag::stable::verify_stable;
use kflag::weyl::{Elem, Flag};
use serde_json::{json, Value};
use std::sync::Arc;

pub const SUITES: [&str; 9] = ["relations", "duality", "bnn", "divisibility", "holomorphy", "stable", "gk", "positivity", "all"];

pub struct Context {
    cfg: RunConfig,
    fv: Arc<Flag>,
    cache: Option<Cache>,
}

fn print_json(v: &Value) {
    out!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

impl Context {
    pub fn new(cfg: RunConfig) -> Result<Context, Failure> {
        let fv = Flag::new(cfg.lie_type, cfg.rank)?;
        let cache = match &cfg.cache_dir {
            Some(d) => Some(Cache::new(d).map_err(|e| Failure::resource(format!("cache directory {}: {e}", d.display())))?),
            None => None,
        };
        Ok(Context { cfg, fv, cache })
    }

    /// Classes and expansions of a family, from the cache when valid.
    fn family_data(&self, family: Family) -> Result<(Vec<LocalizedClass>, Vec<SchubertExpansion>), Failure> {
        let fv = &self.fv;
        if let Some(c) = &self.cache {
            match c.load(fv, family) {
                Loaded::Hit(classes, exps) => {
                    fv.seed_family(family, classes.clone())?;
                    if !exps.is_empty() {
                        fv.seed_expansions(family, exps.clone());
                        return Ok((classes, exps));
                    }
                }
                Loaded::Stale(why) => eprintln!("kflag: warning: ignoring cache entry ({why}); recomputing"),
                Loaded::Miss => {}
            }
        }
        let classes = fv.motivic_family(family)?.classes.clone();
        let exps = fv.expand_family(family)?.to_vec();
        self.store(family, &classes, &exps);
        Ok((classes, exps))
    }

    fn store(&self, family: Family, classes: &[LocalizedClass], exps: &[SchubertExpansion]) {
        if let Some(c) = &self.cache {
            if let Err(e) = c.store(&self.fv, family, classes, exps) {
                eprintln!("kflag: warning: could not write cache: {e}");
            }
        }
    }

    /// Seeds the base cell families before a suite run and stores them after.
    fn with_cached_cells<T>(&self, f: impl FnOnce() -> T) -> T {
        let Some(c) = &self.cache else { return f() };
        let base = [Family::XCell, Family::YCell, Family::DualCell];
        let mut missing = Vec::new();
        for fam in base {
            match c.load(&self.fv, fam) {
                Loaded::Hit(classes, exps) => {
                    let _ = self.fv.seed_family(fam, classes);
                    if !exps.is_empty() {
                        self.fv.seed_expansions(fam, exps);
                    }
                }
                Loaded::Stale(why) => {
                    eprintln!("kflag: warning: ignoring cache entry ({why}); recomputing");
                    missing.push(fam);
                }
                Loaded::Miss => missing.push(fam),
            }
        }
        let out = f();
        for fam in missing {
            if let Ok(set) = self.fv.motivic_family(fam) {
                self.store(fam, &set.classes, &[]);
            }
        }
        out
    }

    pub fn expand(&self, family: &str, w: Option<&str>) -> Result<(), Failure> {
        let fv = &self.fv;
        let family = Family::parse(family)?;
        let only: Option<Elem> = w.map(|s| fv.w.parse_word(s)).transpose()?;
        let (mut classes, mut exps) = self.family_data(family)?;
        if let Some(u) = only {
            classes = vec![classes[u.idx()].clone()];
            exps = vec![exps[u.idx()].clone()];
        }
        if let Some(s) = self.cfg.substitution() {
            exps = exps.iter().map(|e| e.substitute(&s)).collect::<kflag::Result<_>>()?;
            classes = classes.iter().map(|c| c.substitute(&s)).collect::<kflag::Result<_>>()?;
        }
        match self.cfg.format {
            Format::Json => print_json(&json::family_to_json(fv, family.name(), &classes, &exps)),
            Format::Tsv => {
                out!("class\tbasis\tcoefficient");
                for e in &exps {
                    for u in fv.w.elements().rev() {
                        if !e.get(u).is_zero() {
                            out!("{}\t{}\t{}", e.tag, render::basis_symbol(fv, e.basis, u), json::pretty_rational(fv, e.get(u)));
                        }
                    }
                }
            }
            Format::Pretty => {
                for e in &exps {
                    out!("{}", render::expansion_line(fv, &e.tag, e));
                }
            }
        }
        Ok(())
    }

    fn run_suite(&self, suite: &str) -> Result<Vec<Report>, Failure> {
        let fv = &self.fv;
        let caught = |name: &str, r: kflag::Result<Report>| -> Result<Report, Failure> {
            match r {
                Ok(r) => Ok(r),
                Err(kflag::Error::Resource(m)) => Err(Failure::resource(m)),
                Err(e) => {
                    let mut rep = Report::new(name);
                    rep.record("suite ran to completion", false, || e.to_string());
                    Ok(rep)
                }
            }
        };
        let one = |s: &str| -> Result<Vec<Report>, Failure> {
            Ok(match s {
                "relations" => vec![verify_relations(fv)],
                "duality" => vec![caught("duality", verify_motivic(fv))?],
                "bnn" => vec![caught("bnn", bnn_scan(fv))?],
                "divisibility" => vec![caught("divisibility", divisibility_check(fv))?],
                "holomorphy" => vec![caught("holomorphy", holomorphy_check(fv))?],
                "stable" => vec![caught("stable", verify_stable(fv))?],
                "gk" => vec![caught("gk", gindikin_karpelevich(fv))?],
                "positivity" => {
                    let mode = if self.cfg.non_equivariant { PositivityMode::NonEquivariant } else { PositivityMode::Equivariant };
                    vec![caught("positivity", positivity_scan(fv, mode))?]
                }
                _ => return Err(Failure::usage(format!("unknown suite '{s}'; expected one of {}", SUITES.join(", ")))),
            })
        };
        if suite == "all" {
            let mut out = Vec::new();
            for s in &SUITES[..7] {
                out.extend(one(s)?);
            }
            out.push(caught("positivity", positivity_scan(fv, PositivityMode::Equivariant))?);
            out.push(caught("positivity", positivity_scan(fv, PositivityMode::NonEquivariant))?);
            Ok(out)
        } else {
            one(suite)
        }
    }

    pub fn verify(&self, suite: &str) -> Result<(), Failure> {
        if !SUITES.contains(&suite) {
            return Err(Failure::usage(format!("unknown suite '{suite}'; expected one of {}", SUITES.join(", "))));
        }
        let reports = self.with_cached_cells(|| self.run_suite(suite))?;
        let fv = &self.fv;
        let ok = reports.iter().all(Report::passed);
        match self.cfg.format {
            Format::Json => print_json(&json!({
                "root_system": json::root_system_json(fv),
                "suite": suite,
                "status": if ok { "pass" } else { "fail" },
                "reports": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
            })),
            Format::Tsv => {
                out!("suite\trelation\tstatus\tcounterexample");
                for r in &reports {
                    for c in &r.checks {
                        out!("{}\t{}\t{}\t{}", r.name, c.relation, if c.passed { "pass" } else { "fail" }, c.counterexample.as_deref().unwrap_or(""));
                    }
                }
            }
            Format::Pretty => {
                for r in &reports {
                    let adv = if r.advisory { " (report only)" } else { "" };
                    out!("== {} on {}{adv}", r.name, fv.rs.label());
                    for c in &r.checks {
                        match &c.counterexample {
                            None => out!("  PASS  {}", c.relation),
                            Some(w) => out!("  FAIL  {}: {w}", c.relation),
                        }
                    }
                    for n in &r.notes {
                        out!("  note: {n}");
                    }
                }
                out!("overall: {}", if ok { "PASS" } else { "FAIL" });
            }
        }
        if ok {
            return Ok(());
        }
        let (r, c) = reports
            .iter()
            .filter(|r| !r.passed())
            .find_map(|r| r.first_failure().map(|c| (r, c)))
            .expect("a failing report has a failing check");
        Err(Failure::invariant(format!("{}: {} failed: {}", r.name, c.relation, c.counterexample.as_deref().unwrap_or(""))))
    }

    pub fn casselman(&self) -> Result<(), Failure> {
        let fv = &self.fv;
        let table = fv.transition_table()?;
        let table: TransitionTable = match self.cfg.substitution() {
            None => (*table).clone(),
            Some(s) => {
                eprintln!("kflag: note: numeric values assume a sufficiently general character (1 - q' e^a(tau) nonzero for all roots a)");
                let mut rows = table.rows.clone();
                for r in &mut rows {
                    let at = |e: kflag::Error| match e {
                        kflag::Error::Pole(m) => Failure::usage(format!(
                            "pole at (u, w) = ({}, {}): {m}",
                            fv.w.word_string(r.u),
                            fv.w.word_string(r.w)
                        )),
                        e => e.into(),
                    };
                    r.m = r.m.substitute(&s).map_err(at)?;
                    r.r = r.r.substitute(&s).map_err(at)?;
                }
                TransitionTable { rows }
            }
        };
        match self.cfg.format {
            Format::Json => print_json(&json::transition_table_to_json(fv, &table)),
            Format::Tsv => {
                out!("{}", render::TSV_HEADER);
                for r in &table.rows {
                    out!("{}", render::tsv_row(fv, r));
                }
            }
            Format::Pretty => {
                for r in &table.rows {
                    out!("{}", render::pretty_row(fv, r));
                }
            }
        }
        Ok(())
    }

    pub fn stab(&self, chamber: &str) -> Result<(), Failure> {
        let fv = &self.fv;
        let m = match chamber {
            "plus" => fv.stab_plus_matrix()?,
            "minus" => fv.stab_minus_matrix()?,
            _ => return Err(Failure::usage(format!("unknown chamber '{chamber}'; expected plus or minus"))),
        };
        match self.cfg.format {
            Format::Json => print_json(&json::stab_to_json(fv, &m)),
            Format::Tsv => {
                out!("w\tu\tvalue");
                for w in fv.w.elements() {
                    for u in fv.w.elements() {
                        out!("{}\t{}\t{}", fv.w.word_string(w), fv.w.word_string(u), json::pretty_rational(fv, m.entry(w, u)));
                    }
                }
            }
            Format::Pretty => {
                out!("# {}", m.convention());
                for w in fv.w.elements() {
                    for u in fv.w.elements() {
                        let v = m.entry(w, u);
                        if !v.is_zero() {
                            out!("stab_{}({})|_{} = {}", chamber, fv.w.word_string(w), fv.w.word_string(u), json::pretty_rational(fv, v));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
