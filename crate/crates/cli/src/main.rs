//! `ordercalc`: batch front end. Every command prints one JSON document
//! `{status, payload, summary}`; exit code 0 on ok, 1 on property failure,
//! 2 on usage error.

mod json;
mod svg;
mod universe;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ordercalc::affine::{eps_threshold, fit_epsilon, separating_conjugate, smirnov_sign, EpsFit, SmirnovParam, BS};
use ordercalc::dynreal::{
    action_from_prefix, build_tmap, orbit_enumeration, pullback_check, realization_sign_check, PLAction,
};
use ordercalc::exact::Rational;
use ordercalc::free::{build_glued, verify_density, GluedAction};
use ordercalc::order::{
    agreement_radius, conradian_check, crossing_from_witness, crossing_search, left_invariance_check,
    semigroup_check, sign_table, soul_bound_check, totality_check, verify_crossing, Agreement, Ball,
    ConradianResult, CondStatus, Element, Oracle, SoulResult,
};
use ordercalc::thompson::{
    breakpoint_stats, classification_checks, default_conjugators, default_sample, in_derived,
    isolation_certificate, verify_certificate, FElement, FOrdering, IsoKind,
};
use ordercalc::z2::Side;
use ordercalc::Sign;

use universe::{universe, AnyUniverse, Universe};

#[derive(Parser)]
#[command(name = "ordercalc", version, about = "Exact computations with orderings of groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Target {
    /// tararin:N, cn:N, heisenberg, bs:L, z2, f2 or thompson
    #[arg(long)]
    group: String,
    #[arg(long)]
    ordering: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sign of an element.
    Sign {
        #[command(flatten)]
        t: Target,
        #[arg(long)]
        element: String,
    },
    /// Compare two elements: `<` means lhs precedes rhs.
    Cmp {
        #[command(flatten)]
        t: Target,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// List the finite catalog of a group with a distinguishing sign table.
    Enumerate {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        /// Also run totality, left-invariance, semigroup and Conradian checks.
        #[arg(long)]
        suites: bool,
    },
    /// Smallest radius on which two orderings disagree.
    Agree {
        #[arg(long)]
        group: String,
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
        #[arg(long, default_value_t = 4)]
        max_radius: usize,
    },
    /// Conradian condition on a ball.
    Conradian {
        #[command(flatten)]
        t: Target,
        #[arg(long, default_value_t = 3)]
        radius: usize,
        #[arg(long)]
        bound: Option<u32>,
    },
    #[command(subcommand)]
    Crossing(CrossingCmd),
    /// Certify that an element lies outside the Conradian soul.
    Soul {
        #[command(flatten)]
        t: Target,
        #[arg(long)]
        element: String,
        #[arg(long, default_value_t = 3)]
        radius: usize,
        #[arg(long)]
        bound: Option<u32>,
    },
    #[command(subcommand)]
    Dynreal(DynCmd),
    #[command(subcommand)]
    Fdense(FdenseCmd),
    #[command(subcommand)]
    Thompson(ThompsonCmd),
    /// Recover the basepoint interval of a Smirnov ordering from a sign table.
    FitEpsilon {
        #[command(flatten)]
        t: Target,
        #[arg(long, default_value_t = 3)]
        radius: usize,
    },
    /// Largest basepoint bound making a C1-positive set positive.
    Threshold {
        #[arg(long)]
        group: String,
        #[arg(long = "positive", required = true)]
        positives: Vec<String>,
        #[arg(long, default_value_t = 8)]
        max_n: i64,
    },
}

#[derive(Subcommand)]
enum CrossingCmd {
    /// Exhaustive search for a crossing on a ball; finding one is a failure.
    Find {
        #[command(flatten)]
        t: Target,
        #[arg(long, default_value_t = 3)]
        radius: usize,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Check a crossing read from a JSON file.
    Verify {
        #[command(flatten)]
        t: Target,
        #[arg(long)]
        witness: PathBuf,
        #[arg(long)]
        bound: Option<u32>,
    },
}

#[derive(Args)]
struct DynArgs {
    #[command(flatten)]
    t: Target,
    #[arg(long, default_value_t = 3)]
    radius: usize,
    #[arg(long, default_value_t = 2)]
    word_radius: usize,
    #[arg(long)]
    bound: Option<u32>,
}

#[derive(Subcommand)]
enum DynCmd {
    /// Realization map and generator PL maps on an orbit-closed prefix.
    Build {
        #[command(flatten)]
        a: DynArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sign soundness and crossing/Conradian coherence.
    Check {
        #[command(flatten)]
        a: DynArgs,
    },
    Plot {
        #[command(flatten)]
        a: DynArgs,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum FdenseCmd {
    /// Glue one box per seed into a single action of F2.
    Build {
        #[arg(long)]
        seeds: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the glued action against its seeds.
    Verify {
        #[arg(long)]
        action: PathBuf,
        #[arg(long)]
        seeds: PathBuf,
    },
    Plot {
        #[arg(long)]
        action: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum ThompsonCmd {
    Sign {
        #[arg(long)]
        ordering: String,
        #[arg(long)]
        element: String,
    },
    /// Classification identities and isolation certificates on the default sample.
    Classify,
}

struct Outcome {
    ok: bool,
    payload: Value,
    summary: Vec<String>,
}

impl Outcome {
    fn new(ok: bool, payload: Value, summary: impl Into<String>) -> Outcome {
        Outcome { ok, payload, summary: vec![summary.into()] }
    }
}

type Res = Result<Outcome, String>;

fn default_bound() -> u32 {
    std::env::var("ORDERCALC_BOUND").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(6)
}

fn read_json(path: &Path) -> Result<Value, String> {
    let s = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&s).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_json(path: &Path, v: &Value) -> Result<(), String> {
    let s = serde_json::to_string_pretty(v).map_err(|e| e.to_string())?;
    std::fs::write(path, s + "\n").map_err(|e| format!("{}: {e}", path.display()))
}

fn sign_str(s: Sign) -> String {
    s.to_string()
}

fn sign(u: &Universe<impl Element>, t: &Target, element: &str) -> Res {
    let o = u.ordering(&t.ordering)?;
    let x = u.element(element)?;
    let s = o.sign(&x);
    let p = json!({"group": u.group.tag(), "ordering": o.descriptor(), "element": u.format(&x), "sign": sign_str(s)});
    Ok(Outcome::new(true, p, format!("sign({}) = {s}", u.format(&x))))
}

fn cmp(u: &Universe<impl Element>, t: &Target, lhs: &str, rhs: &str) -> Res {
    let o = u.ordering(&t.ordering)?;
    let (g, h) = (u.element(lhs)?, u.element(rhs)?);
    let s = o.cmp(&g, &h).map_err(|e| e.to_string())?;
    let rel = match s {
        Sign::Positive => "<",
        Sign::Zero => "=",
        Sign::Negative => ">",
    };
    let p = json!({"ordering": o.descriptor(), "lhs": u.format(&g), "rhs": u.format(&h), "relation": rel, "sign": sign_str(s)});
    Ok(Outcome::new(true, p, format!("{} {rel} {}", u.format(&g), u.format(&h))))
}

fn suite_report<E: Element>(o: &Oracle<E>, ball: &Ball<E>) -> Value {
    let u = o.group();
    let fail = |r: Result<(), ordercalc::order::SuiteFailure<E>>| match r {
        Ok(()) => Value::Null,
        Err(f) => Value::String(format!("{f:?}")),
    };
    let conr = match conradian_check(o, ball) {
        ConradianResult::Pass => Value::Null,
        ConradianResult::Witness { f, g } => json!({"f": u.format(&f), "g": u.format(&g)}),
    };
    json!({
        "totality": fail(totality_check(o, ball)),
        "left_invariance": fail(left_invariance_check(o, ball, ball.within(1))),
        "semigroup": fail(semigroup_check(o, ball)),
        "conradian": conr,
    })
}

fn enumerate<E: Element>(u: &Universe<E>, radius: usize, suites: bool) -> Res {
    let cat = u.catalog()?;
    let ball = Ball::new(u.group.as_ref(), radius);
    let rows: Vec<String> = cat
        .iter()
        .map(|o| ball.elems.iter().map(|x| o.sign(x).symbol()).collect())
        .collect();
    let mut witnesses = Vec::new();
    let mut distinct = true;
    for i in 0..cat.len() {
        for j in i + 1..cat.len() {
            match ball.elems.iter().find(|x| cat[i].sign(x) != cat[j].sign(x)) {
                Some(x) => witnesses.push(json!({"first": i, "second": j, "element": u.format(x)})),
                None => distinct = false,
            }
        }
    }
    let mut ok = distinct;
    let orderings: Vec<Value> = cat
        .iter()
        .zip(&rows)
        .map(|(o, r)| {
            let mut v = json!({"descriptor": o.descriptor(), "signs": r});
            if suites {
                let rep = suite_report(o, &ball);
                ok &= rep.as_object().unwrap().values().all(Value::is_null);
                v["suites"] = rep;
            }
            v
        })
        .collect();
    let p = json!({
        "group": u.group.tag(),
        "radius": radius,
        "count": cat.len(),
        "ball": ball.elems.iter().map(|x| u.format(x)).collect::<Vec<_>>(),
        "orderings": orderings,
        "pairwise_distinct": distinct,
        "witnesses": witnesses,
    });
    let s = format!("{} orderings of {}, pairwise distinct on radius {radius}: {distinct}", cat.len(), u.group.tag());
    Ok(Outcome::new(ok, p, s))
}

fn agree<E: Element>(u: &Universe<E>, first: &str, second: &str, max_r: usize) -> Res {
    let (a, b) = (u.ordering(first)?, u.ordering(second)?);
    Ok(match agreement_radius(&a, &b, max_r) {
        Agreement::AgreeUpToBound => Outcome::new(
            true,
            json!({"agree": true, "max_radius": max_r}),
            format!("agree on the radius-{max_r} ball"),
        ),
        Agreement::DisagreeAt { radius, witness } => Outcome::new(
            false,
            json!({"agree": false, "radius": radius, "element": u.format(&witness),
                   "signs": [sign_str(a.sign(&witness)), sign_str(b.sign(&witness))]}),
            format!("disagree at {} (radius {radius})", u.format(&witness)),
        ),
    })
}

fn conradian<E: Element>(u: &Universe<E>, t: &Target, radius: usize, bound: u32) -> Res {
    let o = u.ordering(&t.ordering)?;
    let ball = Ball::new(u.group.as_ref(), radius);
    Ok(match conradian_check(&o, &ball) {
        ConradianResult::Pass => {
            Outcome::new(true, json!({"conradian": true, "radius": radius}), "Conradian on the ball")
        }
        ConradianResult::Witness { f, g } => {
            let mut p = json!({"conradian": false, "f": u.format(&f), "g": u.format(&g)});
            if let Ok(c) = crossing_from_witness(&o, &f, &g, bound) {
                p["crossing"] = json::crossing(u, &c);
            }
            Outcome::new(false, p, format!("f g^2 < g for f = {}, g = {}", u.format(&f), u.format(&g)))
        }
    })
}

fn crossing_find<E: Element>(u: &Universe<E>, t: &Target, radius: usize, bound: u32) -> Res {
    let o = u.ordering(&t.ordering)?;
    let ball = Ball::new(u.group.as_ref(), radius);
    Ok(match crossing_search(&o, &ball, bound) {
        None => Outcome::new(
            true,
            json!({"found": false, "radius": radius, "bound": bound}),
            format!("no crossing on radius {radius} with exponents up to {bound}"),
        ),
        Some(c) => {
            Outcome::new(false, json!({"found": true, "crossing": json::crossing(u, &c)}), "crossing found")
        }
    })
}

fn status(c: &CondStatus) -> Value {
    match c {
        CondStatus::Pass => Value::String("pass".into()),
        CondStatus::Fail(r) => Value::String(format!("fail: {r}")),
    }
}

fn crossing_verify<E: Element>(u: &Universe<E>, t: &Target, path: &Path, bound: u32) -> Res {
    let o = u.ordering(&t.ordering)?;
    let c = json::parse_crossing(u, &read_json(path)?)?;
    let r = verify_crossing(&c, &o, bound).map_err(|e| e.to_string())?;
    let p = json!({
        "order": status(&r.order),
        "g_orbit": status(&r.g_orbit),
        "f_orbit": status(&r.f_orbit),
        "sandwich": status(&r.sandwich),
        "exactness": format!("{:?}", r.exactness),
        "checked_bound": r.checked_bound,
    });
    let ok = r.all_pass();
    Ok(Outcome::new(ok, p, format!("crossing {} ({:?})", if ok { "verified" } else { "rejected" }, r.exactness)))
}

fn soul<E: Element>(u: &Universe<E>, t: &Target, element: &str, radius: usize, bound: u32) -> Res {
    let o = u.ordering(&t.ordering)?;
    let h = u.element(element)?;
    let ball = Ball::new(u.group.as_ref(), radius);
    Ok(match soul_bound_check(&o, &h, &ball, bound) {
        Err(_) => Outcome::new(true, json!({"in_soul": true}), "the identity lies in the soul"),
        Ok(SoulResult::Unknown) => {
            Outcome::new(true, json!({"outside_soul": Value::Null}), "no certificate at these bounds")
        }
        Ok(SoulResult::OutsideSoul(c)) => Outcome::new(
            true,
            json!({"outside_soul": true, "crossing": json::crossing(u, &c)}),
            format!("{} lies outside the Conradian soul", u.format(&h)),
        ),
    })
}

struct Realization<E> {
    tmap: ordercalc::dynreal::TMap<E>,
    action: PLAction,
    ball: Ball<E>,
    sign_witness: Option<E>,
}

fn realize<E: Element>(u: &Universe<E>, a: &DynArgs) -> Result<Realization<E>, String> {
    let o = u.ordering(&a.t.ordering)?;
    let g = u.group.as_ref();
    let ball = Ball::new(g, a.radius.max(a.word_radius));
    let en = orbit_enumeration(g, &ball, a.word_radius, a.bound.unwrap_or_else(default_bound));
    let tmap = build_tmap(&o, &en).map_err(|e| e.to_string())?;
    let sign_witness = realization_sign_check(&o, &tmap, ball.within(a.radius)).map_err(|e| e.to_string())?;
    let action = action_from_prefix(&tmap, g, &g.generators()).map_err(|e| e.to_string())?;
    Ok(Realization { tmap, action, ball, sign_witness })
}

fn dyn_build<E: Element>(u: &Universe<E>, a: &DynArgs, out: Option<&Path>) -> Res {
    let r = realize(u, a)?;
    let doc = json!({
        "ordering": a.t.ordering,
        "prefix_len": r.tmap.len(),
        "tmap": r.tmap.entries().iter().map(|(x, t)| json!([u.format(x), json::rat(t)])).collect::<Vec<_>>(),
        "maps": r.action.maps().iter().map(json::plmap).collect::<Vec<_>>(),
    });
    let ok = r.sign_witness.is_none();
    let mut p = json!({"prefix_len": r.tmap.len(), "sign_witness": r.sign_witness.as_ref().map(|x| u.format(x))});
    match out {
        Some(path) => {
            write_json(path, &doc)?;
            p["out"] = Value::String(path.display().to_string());
        }
        None => p["realization"] = doc,
    }
    Ok(Outcome::new(ok, p, format!("realization on {} points", r.tmap.len())))
}

fn dyn_check<E: Element>(u: &Universe<E>, a: &DynArgs) -> Res {
    let o = u.ordering(&a.t.ordering)?;
    let bound = a.bound.unwrap_or_else(default_bound);
    let r = pullback_check(&o, a.radius, a.word_radius, bound).map_err(|e| e.to_string())?;
    let crossing = r.crossing.as_ref().map(|c| {
        json!({"f": c.f.to_string(), "g": c.g.to_string(), "u": json::rat(&c.u), "v": json::rat(&c.v),
               "w": json::rat(&c.w), "n": c.n, "m": c.m, "checked_bound": c.checked_bound})
    });
    let conr = match &r.conradian {
        ConradianResult::Pass => Value::Null,
        ConradianResult::Witness { f, g } => json!({"f": u.format(f), "g": u.format(g)}),
    };
    let p = json!({
        "prefix_len": r.prefix_len,
        "sound": r.sound(),
        "coherent": r.coherent(),
        "sign_witness": r.sign_witness.as_ref().map(|x| u.format(x)),
        "equivariance": r.equivariance.as_ref().map(|(i, x)| json!([i, u.format(x)])),
        "action_crossing": crossing,
        "conradian_witness": conr,
    });
    let ok = r.sound() && r.coherent();
    Ok(Outcome::new(ok, p, format!("sound: {}, coherent: {}", r.sound(), r.coherent())))
}

fn dyn_plot<E: Element>(u: &Universe<E>, a: &DynArgs, out: &Path) -> Res {
    let r = realize(u, a)?;
    let inner = r.ball.within(a.radius);
    let ts: Vec<&Rational> = inner.iter().filter_map(|x| r.tmap.get(x)).collect();
    let lo = ts.iter().min().map(|x| (*x).clone()).ok_or("empty ball")?;
    let hi = ts.iter().max().map(|x| (*x).clone()).ok_or("empty ball")?;
    let scene = svg::Scene { maps: r.action.maps(), boxes: vec![], window: (lo, hi) };
    svg::emit_svg(&scene, out)?;
    Ok(Outcome::new(true, json!({"out": out.display().to_string()}), format!("wrote {}", out.display())))
}

fn f2_universe() -> Result<Universe<ordercalc::free::ReducedWord>, String> {
    match universe("f2")? {
        AnyUniverse::F2(u) => Ok(u),
        _ => unreachable!("f2 tag"),
    }
}

fn seeds(path: &Path) -> Result<Vec<(usize, Oracle<ordercalc::free::ReducedWord>)>, String> {
    let u = f2_universe()?;
    json::parse_seeds(&read_json(path)?)?
        .into_iter()
        .map(|(r, d)| Ok((r, u.ordering(&d)?)))
        .collect()
}

fn fdense_build(seed_path: &Path, out: &Path) -> Res {
    let s = seeds(seed_path)?;
    if s.is_empty() {
        return Err("no seeds".into());
    }
    let ga = build_glued(&s).map_err(|e| e.to_string())?;
    write_json(out, &json::glued(&ga))?;
    let cons: Vec<Value> =
        ga.connectors.iter().map(|c| json!({"k": c.k, "case": c.case, "word": c.word.to_string()})).collect();
    let p = json!({"boxes": ga.boxes.len(), "connectors": cons, "out": out.display().to_string()});
    Ok(Outcome::new(true, p, format!("glued {} boxes into {}", ga.boxes.len(), out.display())))
}

fn load_glued(path: &Path) -> Result<GluedAction, String> {
    json::parse_glued(&read_json(path)?)
}

fn fdense_verify(action: &Path, seed_path: &Path) -> Res {
    let ga = load_glued(action)?;
    let s = seeds(seed_path)?;
    let boxes = ga.check_boxes().err().map(|e| e.to_string());
    let connectors: Vec<String> =
        ga.connectors.iter().filter_map(|c| ga.check_connector(c).err().map(|e| e.to_string())).collect();
    let checks = verify_density(&ga, &s);
    let rows: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({"k": c.k, "ordering": c.descriptor, "radius": c.radius, "word": c.word.to_string(),
                   "reaches": c.reaches, "witness": c.witness, "escapes": c.escapes, "passed": c.passed()})
        })
        .collect();
    let passed = checks.iter().filter(|c| c.passed()).count();
    let ok = boxes.is_none() && connectors.is_empty() && passed == checks.len();
    let p = json!({"boxes_error": boxes, "connector_errors": connectors, "seeds": rows, "all_passed": ok});
    Ok(Outcome::new(ok, p, format!("{passed}/{} seeds passed", checks.len())))
}

fn fdense_plot(action: &Path, out: &Path) -> Res {
    let ga = load_glued(action)?;
    let boxes = ga.boxes.iter().map(|b| (b.lo(), b.hi())).collect();
    let scene = svg::Scene { maps: &ga.maps, boxes, window: ga.range() };
    svg::emit_svg(&scene, out)?;
    Ok(Outcome::new(true, json!({"out": out.display().to_string()}), format!("wrote {}", out.display())))
}

fn thompson_sign(ordering: &str, element: &str) -> Res {
    let o = FOrdering::parse(ordering).map_err(|e| e.to_string())?;
    let f = FElement::parse(element).map_err(|e| e.to_string())?;
    let s = o.sign(&f);
    let (m, n) = f.log_slopes();
    let mut p = json!({"ordering": o.descriptor(), "element": f.to_string(), "sign": sign_str(s),
                       "in_derived": in_derived(&f), "log_slopes": [m, n]});
    if let Ok(st) = breakpoint_stats(&f) {
        p["x_minus"] = json::rat(&st.x_minus);
        p["x_plus"] = json::rat(&st.x_plus);
    }
    Ok(Outcome::new(true, p, format!("sign = {s}")))
}

fn thompson_classify() -> Res {
    let sample = default_sample();
    let r = classification_checks(&sample, &default_conjugators());
    let clauses: Vec<Value> = r
        .clauses
        .iter()
        .map(|c| json!({"name": c.name, "checked": c.checked, "failures": c.failures}))
        .collect();
    let mut certs = Vec::new();
    let mut certs_ok = true;
    for k in IsoKind::ALL {
        let c = isolation_certificate(k, &sample);
        let ok = c.as_ref().is_some_and(verify_certificate);
        certs_ok &= ok;
        certs.push(json!({
            "ordering": k.tag(),
            "verified": ok,
            "positives": c.map(|c| c.positives.iter().map(|f| f.to_string()).collect::<Vec<_>>()),
        }));
    }
    let ok = r.all_pass() && !r.vacuous && certs_ok;
    let p = json!({"sample_size": sample.len(), "vacuous": r.vacuous, "clauses": clauses,
                   "distinct_pairs": r.distinct.len(), "certificates": certs});
    let passed = r.clauses.iter().filter(|c| c.passed()).count();
    Ok(Outcome::new(ok, p, format!("{passed}/{} clause groups pass; certificates: {certs_ok}", r.clauses.len())))
}

fn bs_universe(tag: &str) -> Result<Universe<ordercalc::affine::BSElement>, String> {
    match universe(tag)? {
        AnyUniverse::Bs(u) => Ok(u),
        _ => Err(format!("{tag} is not a bs:L tag")),
    }
}

fn fit(t: &Target, radius: usize) -> Res {
    let u = bs_universe(&t.group)?;
    let o = u.ordering(&t.ordering)?;
    let ball = Ball::new(u.group.as_ref(), radius);
    let base = BS::new(t.group.trim_start_matches("bs:").parse::<i64>().map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?
        .base();
    let fitted = fit_epsilon(&sign_table(&o, &ball), base).map_err(|e| e.to_string())?;
    Ok(match fitted {
        EpsFit::Interval(i) => {
            let p = json!({"kind": "interval", "lo": i.lo.as_ref().map(json::rat), "hi": i.hi.as_ref().map(json::rat)});
            Outcome::new(true, p, format!("epsilon in {i}"))
        }
        EpsFit::ConradianTag(k) => {
            Outcome::new(true, json!({"kind": "conradian", "ordering": format!("bsconrad:{k}")}), format!("bsconrad:{k}"))
        }
        EpsFit::Inconsistent => {
            Outcome::new(false, json!({"kind": "inconsistent"}), "no basepoint fits the table")
        }
    })
}

fn threshold(group: &str, positives: &[String], max_n: i64) -> Res {
    let u = bs_universe(group)?;
    let xs = positives.iter().map(|s| u.element(s)).collect::<Result<Vec<_>, _>>()?;
    let t = eps_threshold(&xs).map_err(|e| e.to_string())?;
    let mut p = json!({"threshold": t.as_ref().map(json::rat)});
    if let Some(t) = &t {
        let g = BS::new(u.group.tag().trim_start_matches("bs:").parse::<i64>().unwrap()).map_err(|e| e.to_string())?;
        let param = SmirnovParam::rational(t + Rational::from_integer(1.into()), Side::Plus);
        let all_pos = xs.iter().all(|x| smirnov_sign(&param, x) == Sign::Positive);
        p["positive_at_threshold_plus_one"] = Value::Bool(all_pos);
        p["separating_conjugate"] = match separating_conjugate(g, &param, max_n) {
            Some((h, n, x)) => json!({"g": u.format(&h), "n": n, "element": u.format(&x)}),
            None => Value::Null,
        };
    }
    let s = match &t {
        Some(t) => format!("threshold = {t}"),
        None => "no finite threshold".to_string(),
    };
    Ok(Outcome::new(true, p, s))
}

fn run(cli: Cli) -> Res {
    match cli.cmd {
        Cmd::Sign { t, element } => with_universe!(&universe(&t.group)?, u => sign(u, &t, &element)),
        Cmd::Cmp { t, lhs, rhs } => with_universe!(&universe(&t.group)?, u => cmp(u, &t, &lhs, &rhs)),
        Cmd::Enumerate { group, radius, suites } => {
            with_universe!(&universe(&group)?, u => enumerate(u, radius, suites))
        }
        Cmd::Agree { group, first, second, max_radius } => {
            with_universe!(&universe(&group)?, u => agree(u, &first, &second, max_radius))
        }
        Cmd::Conradian { t, radius, bound } => {
            let b = bound.unwrap_or_else(default_bound);
            with_universe!(&universe(&t.group)?, u => conradian(u, &t, radius, b))
        }
        Cmd::Crossing(CrossingCmd::Find { t, radius, bound }) => {
            let b = bound.unwrap_or_else(default_bound);
            with_universe!(&universe(&t.group)?, u => crossing_find(u, &t, radius, b))
        }
        Cmd::Crossing(CrossingCmd::Verify { t, witness, bound }) => {
            let b = bound.unwrap_or_else(default_bound);
            with_universe!(&universe(&t.group)?, u => crossing_verify(u, &t, &witness, b))
        }
        Cmd::Soul { t, element, radius, bound } => {
            let b = bound.unwrap_or_else(default_bound);
            with_universe!(&universe(&t.group)?, u => soul(u, &t, &element, radius, b))
        }
        Cmd::Dynreal(DynCmd::Build { a, out }) => {
            with_universe!(&universe(&a.t.group)?, u => dyn_build(u, &a, out.as_deref()))
        }
        Cmd::Dynreal(DynCmd::Check { a }) => with_universe!(&universe(&a.t.group)?, u => dyn_check(u, &a)),
        Cmd::Dynreal(DynCmd::Plot { a, out }) => {
            with_universe!(&universe(&a.t.group)?, u => dyn_plot(u, &a, &out))
        }
        Cmd::Fdense(FdenseCmd::Build { seeds, out }) => fdense_build(&seeds, &out),
        Cmd::Fdense(FdenseCmd::Verify { action, seeds }) => fdense_verify(&action, &seeds),
        Cmd::Fdense(FdenseCmd::Plot { action, out }) => fdense_plot(&action, &out),
        Cmd::Thompson(ThompsonCmd::Sign { ordering, element }) => thompson_sign(&ordering, &element),
        Cmd::Thompson(ThompsonCmd::Classify) => thompson_classify(),
        Cmd::FitEpsilon { t, radius } => fit(&t, radius),
        Cmd::Threshold { group, positives, max_n } => threshold(&group, &positives, max_n),
    }
}

fn emit(status: &str, payload: Value, summary: &[String]) {
    let doc = json!({"status": status, "payload": payload, "summary": summary});
    println!("{}", serde_json::to_string_pretty(&doc).expect("JSON values serialize"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(o) => {
            emit(if o.ok { "ok" } else { "fail" }, o.payload, &o.summary);
            ExitCode::from(if o.ok { 0 } else { 1 })
        }
        Err(e) => {
            emit("fail", json!({"error": e}), &[format!("error: {e}")]);
            ExitCode::from(2)
        }
    }
}
