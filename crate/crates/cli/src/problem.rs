//! Problem files: JSON with exact rationals as `"p/q"` strings.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use rtmp_core::rational::{PoleSpec, RationalMoments};
use rtmp_core::solver::{PoleSet, SolverConfig};
use rtmp_core::special::{strong_hamburger_spec, BivariateSequence};
use rtmp_core::{parse_rat, rat_int, ClosedSet, Interval, KSetError, MomentSequence, Rat};
use serde_json::Value;

/// A diagnostic located by a JSON pointer into the offending document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pointer: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = if self.pointer.is_empty() { "/" } else { &self.pointer };
        write!(f, "{at}: {}", self.message)
    }
}

impl std::error::Error for ParseError {}

type Parsed<T> = Result<T, ParseError>;

#[derive(Clone, Debug, PartialEq)]
pub enum Problem {
    PowerTmp {
        gamma: MomentSequence,
        k: ClosedSet,
        avoid: PoleSet,
    },
    Rtmp {
        spec: PoleSpec,
        data: RationalMoments,
        k: ClosedSet,
    },
    StrongHamburger {
        spec: PoleSpec,
        data: RationalMoments,
    },
    Circle {
        beta: BivariateSequence,
    },
}

impl Problem {
    pub fn kind(&self) -> &'static str {
        match self {
            Problem::PowerTmp { .. } => "power_tmp",
            Problem::Rtmp { .. } => "rtmp",
            Problem::StrongHamburger { .. } => "strong_hamburger",
            Problem::Circle { .. } => "circle",
        }
    }
}

/// Solver settings a problem file may pin.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigOverrides {
    pub tol: Option<f64>,
    pub density_floor: Option<f64>,
    pub max_retries: Option<usize>,
    pub max_extension_steps: Option<usize>,
    pub seed: Option<u64>,
    pub fixed_extension: Vec<(Rat, Rat)>,
}

impl ConfigOverrides {
    pub fn apply(&self, cfg: &mut SolverConfig) {
        if let Some(t) = self.tol {
            cfg.tol = t;
        }
        if let Some(f) = self.density_floor {
            cfg.density_floor = f;
        }
        if let Some(r) = self.max_retries {
            cfg.max_retries = r;
        }
        if self.max_extension_steps.is_some() {
            cfg.max_extension_steps = self.max_extension_steps;
        }
        if let Some(s) = self.seed {
            cfg.rng_seed = s;
        }
        if !self.fixed_extension.is_empty() {
            cfg.fixed_extension = self.fixed_extension.clone();
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProblemFile {
    pub problem: Problem,
    pub config: ConfigOverrides,
}

pub fn parse_problem(path: &Path) -> Result<ProblemFile, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_problem_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn parse_problem_str(text: &str) -> Parsed<ProblemFile> {
    let v: Value = serde_json::from_str(text).map_err(|e| ParseError {
        pointer: String::new(),
        message: format!("invalid JSON: {e}"),
    })?;
    parse_problem_value(&v)
}

pub fn parse_problem_value(v: &Value) -> Parsed<ProblemFile> {
    let root = Node::root(v);
    root.object()?;
    let kind = root.field("kind")?;
    let problem = match kind.str()? {
        "power_tmp" => Problem::PowerTmp {
            gamma: moment_sequence(&root.field("gamma")?)?,
            k: closed_set(&root.field("K")?)?,
            avoid: match root.opt_field("avoid") {
                Some(n) => PoleSet::new(n.items()?.iter().map(Node::rat).collect::<Parsed<_>>()?),
                None => PoleSet::empty(),
            },
        },
        "rtmp" => {
            let spec = pole_spec(&root.field("poles")?)?;
            let moments = root.field("moments")?;
            let data = rational_moments(&moments, &spec)?;
            Problem::Rtmp {
                spec,
                data,
                k: closed_set(&root.field("K")?)?,
            }
        }
        "strong_hamburger" => {
            let k = root.field("k")?.usize()?;
            let k1n = root.field("k1")?;
            let k1 = k1n.usize()?;
            if k1 == 0 || k1 > k {
                return Err(k1n.error(format!("k1 must satisfy 1 <= k1 <= k = {k}")));
            }
            let spec = strong_hamburger_spec(k, k1).map_err(|e| k1n.error(e.to_string()))?;
            let data = rational_moments(&root.field("moments")?, &spec)?;
            Problem::StrongHamburger { spec, data }
        }
        "circle" => Problem::Circle {
            beta: bivariate(&root)?,
        },
        other => {
            return Err(kind.error(format!(
                "unknown kind {other:?}; expected power_tmp, rtmp, strong_hamburger or circle"
            )))
        }
    };
    let config = match root.opt_field("config") {
        Some(c) => config_overrides(&c)?,
        None => ConfigOverrides::default(),
    };
    Ok(ProblemFile { problem, config })
}

struct Node<'a> {
    v: &'a Value,
    ptr: String,
}

fn escape(token: &str) -> String {
    token.replace('~', "~0").replace('/', "~1")
}

impl<'a> Node<'a> {
    fn root(v: &'a Value) -> Self {
        Self { v, ptr: String::new() }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            pointer: self.ptr.clone(),
            message: message.into(),
        }
    }

    fn object(&self) -> Parsed<&'a serde_json::Map<String, Value>> {
        self.v.as_object().ok_or_else(|| self.error("expected an object"))
    }

    fn opt_field(&self, name: &str) -> Option<Node<'a>> {
        self.v.get(name).filter(|v| !v.is_null()).map(|v| Node {
            v,
            ptr: format!("{}/{}", self.ptr, escape(name)),
        })
    }

    fn field(&self, name: &str) -> Parsed<Node<'a>> {
        self.object()?;
        self.opt_field(name)
            .ok_or_else(|| self.error(format!("missing field {name:?}")))
    }

    fn items(&self) -> Parsed<Vec<Node<'a>>> {
        let arr = self.v.as_array().ok_or_else(|| self.error("expected an array"))?;
        Ok(arr
            .iter()
            .enumerate()
            .map(|(i, v)| Node {
                v,
                ptr: format!("{}/{i}", self.ptr),
            })
            .collect())
    }

    fn str(&self) -> Parsed<&'a str> {
        self.v.as_str().ok_or_else(|| self.error("expected a string"))
    }

    fn usize(&self) -> Parsed<usize> {
        self.v
            .as_u64()
            .and_then(|n| usize::try_from(n).ok())
            .ok_or_else(|| self.error("expected a nonnegative integer"))
    }

    fn f64(&self) -> Parsed<f64> {
        let x = match self.v {
            Value::Number(n) => n.as_f64(),
            Value::String(s) => s.trim().parse().ok(),
            _ => None,
        };
        x.filter(|x: &f64| x.is_finite())
            .ok_or_else(|| self.error("expected a finite number"))
    }

    fn rat(&self) -> Parsed<Rat> {
        let text = match self.v {
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            _ => return Err(self.error("expected an exact rational such as \"3/4\"")),
        };
        parse_rat(&text).map_err(|_| self.error(format!("malformed rational {text:?}")))
    }

    /// A rational or one of the sentinels `"-inf"`, `"inf"`; the flag is the
    /// sign of the infinity.
    fn extended_rat(&self) -> Parsed<Result<Rat, i8>> {
        match self.v.as_str().map(str::trim) {
            Some("-inf") => Ok(Err(-1)),
            Some("inf" | "+inf") => Ok(Err(1)),
            _ => self.rat().map(Ok),
        }
    }

    fn rats(&self) -> Parsed<Vec<Rat>> {
        self.items()?.iter().map(Node::rat).collect()
    }
}

fn moment_sequence(n: &Node) -> Parsed<MomentSequence> {
    let values = n.rats()?;
    MomentSequence::new(values).map_err(|e| n.error(e.to_string()))
}

fn closed_set(n: &Node) -> Parsed<ClosedSet> {
    let items = n.items()?;
    if items.is_empty() {
        return Err(n.error("K must contain at least one interval"));
    }
    let mut intervals = Vec::with_capacity(items.len());
    for it in &items {
        let ends = it.items()?;
        if ends.len() != 2 {
            return Err(it.error("an interval is a pair [lo, hi]"));
        }
        let lo = match ends[0].extended_rat()? {
            Ok(r) => Some(r),
            Err(-1) => None,
            Err(_) => return Err(ends[0].error("lower end cannot be +inf")),
        };
        let hi = match ends[1].extended_rat()? {
            Ok(r) => Some(r),
            Err(1) => None,
            Err(_) => return Err(ends[1].error("upper end cannot be -inf")),
        };
        intervals.push(Interval::new(lo, hi));
    }
    ClosedSet::new(intervals).map_err(|e| {
        let at = match e {
            KSetError::InnerInfinity { index } | KSetError::Reversed { index } => Some(index),
            KSetError::NotDisjoint { next, .. } => Some(next),
            _ => None,
        };
        match at {
            Some(i) => items[i].error(e.to_string()),
            None => n.error(e.to_string()),
        }
    })
}

fn pole_spec(n: &Node) -> Parsed<PoleSpec> {
    let k0 = match n.opt_field("k0") {
        Some(k) => k.usize()?,
        None => 0,
    };
    let mut real = Vec::new();
    if let Some(r) = n.opt_field("real") {
        for p in r.items()? {
            let order = p.field("k")?;
            if order.usize()? == 0 {
                return Err(order.error("pole order must be at least 1"));
            }
            let lambda = p.field("lambda")?;
            let l = lambda.rat()?;
            if real.iter().any(|(m, _)| *m == l) {
                return Err(lambda.error(format!("real pole {l} listed twice")));
            }
            real.push((l, order.usize()?));
        }
    }
    let mut complex = Vec::new();
    if let Some(c) = n.opt_field("complex") {
        for p in c.items()? {
            let order = p.field("l")?;
            if order.usize()? == 0 {
                return Err(order.error("pole order must be at least 1"));
            }
            let eta = p.field("eta")?;
            let e = eta.rat()?;
            if e <= rat_int(0) {
                return Err(eta.error("eta must be positive"));
            }
            if complex.iter().any(|(m, _)| *m == e) {
                return Err(eta.error(format!("complex pole parameter {e} listed twice")));
            }
            complex.push((e, order.usize()?));
        }
    }
    PoleSpec::new(k0, real, complex).map_err(|e| n.error(e.to_string()))
}

fn expect_len(n: &Node, values: Vec<Rat>, want: usize, what: &str) -> Parsed<Vec<Rat>> {
    if values.len() != want {
        return Err(n.error(format!("{what}: expected {want} values, got {}", values.len())));
    }
    Ok(values)
}

fn rational_moments(n: &Node, spec: &PoleSpec) -> Parsed<RationalMoments> {
    let gamma0 = match n.opt_field("gamma0") {
        Some(g) => expect_len(&g, g.rats()?, 2 * spec.k0 + 1, "gamma0")?,
        None => return Err(n.error("missing field \"gamma0\"")),
    };
    let real_nodes = match n.opt_field("real") {
        Some(r) => r.items()?,
        None => Vec::new(),
    };
    if real_nodes.len() != spec.real_poles.len() {
        let at = n.opt_field("real").unwrap_or(Node { v: n.v, ptr: n.ptr.clone() });
        return Err(at.error(format!(
            "expected one moment list per real pole ({}), got {}",
            spec.real_poles.len(),
            real_nodes.len()
        )));
    }
    let real = real_nodes
        .iter()
        .zip(&spec.real_poles)
        .map(|(r, (l, k))| expect_len(r, r.rats()?, 2 * k, &format!("moments at pole {l}")))
        .collect::<Parsed<Vec<_>>>()?;
    let complex_nodes = match n.opt_field("complex") {
        Some(c) => c.items()?,
        None => Vec::new(),
    };
    if complex_nodes.len() != spec.complex_poles.len() {
        let at = n.opt_field("complex").unwrap_or(Node { v: n.v, ptr: n.ptr.clone() });
        return Err(at.error(format!(
            "expected one entry per complex pole ({}), got {}",
            spec.complex_poles.len(),
            complex_nodes.len()
        )));
    }
    let complex = complex_nodes
        .iter()
        .zip(&spec.complex_poles)
        .map(|(c, (_, l))| {
            let s0 = c.field("s0")?;
            let s1 = c.field("s1")?;
            Ok((
                expect_len(&s0, s0.rats()?, *l, "s0")?,
                expect_len(&s1, s1.rats()?, *l, "s1")?,
            ))
        })
        .collect::<Parsed<Vec<_>>>()?;
    Ok(RationalMoments { gamma0, real, complex })
}

fn bivariate(root: &Node) -> Parsed<BivariateSequence> {
    let kn = root.field("k")?;
    let k = kn.usize()?;
    if k < 2 {
        return Err(kn.error(format!("circle moment problems need k >= 2, got k = {k}")));
    }
    let bn = root.field("beta")?;
    let mut beta = BTreeMap::new();
    for entry in bn.items()? {
        let parts = entry.items()?;
        if parts.len() != 3 {
            return Err(entry.error("an entry is [i, j, \"p/q\"]"));
        }
        let (i, j) = (parts[0].usize()?, parts[1].usize()?);
        if i + j > 2 * k {
            return Err(entry.error(format!("index ({i},{j}) exceeds total degree {}", 2 * k)));
        }
        if beta.insert((i, j), parts[2].rat()?).is_some() {
            return Err(entry.error(format!("index ({i},{j}) listed twice")));
        }
    }
    BivariateSequence::new(k, beta).map_err(|e| bn.error(e.to_string()))
}

fn config_overrides(n: &Node) -> Parsed<ConfigOverrides> {
    n.object()?;
    let mut out = ConfigOverrides::default();
    if let Some(t) = n.opt_field("tol") {
        out.tol = Some(positive(&t)?);
    }
    if let Some(t) = n.opt_field("density_floor") {
        out.density_floor = Some(positive(&t)?);
    }
    if let Some(t) = n.opt_field("max_retries") {
        out.max_retries = Some(t.usize()?);
    }
    if let Some(t) = n.opt_field("max_extension_steps") {
        out.max_extension_steps = Some(t.usize()?);
    }
    if let Some(t) = n.opt_field("seed") {
        out.seed = Some(t.v.as_u64().ok_or_else(|| t.error("expected a nonnegative integer"))?);
    }
    if let Some(fx) = n.opt_field("fixed_extension") {
        for pair in fx.items()? {
            let xy = pair.items()?;
            if xy.len() != 2 {
                return Err(pair.error("an extension step is a pair [x, y]"));
            }
            out.fixed_extension.push((xy[0].rat()?, xy[1].rat()?));
        }
    }
    Ok(out)
}

fn positive(n: &Node) -> Parsed<f64> {
    let x = n.f64()?;
    if x <= 0.0 {
        return Err(n.error("expected a positive number"));
    }
    Ok(x)
}
