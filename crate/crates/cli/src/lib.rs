//! Batch commands behind the `wyhom` binary. Every command returns a [`Report`]
//! whose JSON is a pure function of the configuration.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;

use wythoff_homology::catalog::{self, MATHIEU};
use wythoff_homology::complex::{Base, DComplex};
use wythoff_homology::engine::{ce_self_test, cyclic_pattern, sylow_homology, Convention, PrimePart};
use wythoff_homology::equivariant::{orbit_decompose, EquivariantCellComplex};
use wythoff_homology::finite::FiniteGroup;
use wythoff_homology::polytope::{check_convex_position, neighbours, orbit_points, RationalPoint};
use wythoff_homology::sylow::{is_prime, prime_divisors, valuation, weyl_exponent, SearchConfig};
use wythoff_homology::wall::{default_resolver, twisted_tensor, wall_assemble, NonFreeComplex};
use wythoff_homology::zg::{bar_resolution, resolution_small, resolution_small_cached, FreeResolution, SMALL_GROUP_CAP};
use wythoff_homology::{AbelianInvariants, Error, GenGroup, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable naming the resolution cache directory.
pub const CACHE_ENV: &str = "WYHOM_CACHE_DIR";

/// Largest Z-rank of a bar resolution term the `bar` method will build.
pub const BAR_RANK_CAP: u128 = 200_000;

/// Largest point orbit for `edge-degree`.
pub const POINT_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Sylow,
    Wall,
    Bar,
    Small,
    Auto,
}

impl Method {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "sylow" => Method::Sylow,
            "wall" => Method::Wall,
            "bar" => Method::Bar,
            "small" => Method::Small,
            "auto" => Method::Auto,
            _ => return Err(Error::invalid(format!("unknown method {s:?}"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Sylow => "sylow",
            Method::Wall => "wall",
            Method::Bar => "bar",
            Method::Small => "small",
            Method::Auto => "auto",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Which primes a homology report keeps.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum PrimeFilter {
    #[default]
    All,
    Only(Vec<u64>),
    AtLeast(u64),
}

impl PrimeFilter {
    fn primes(&self, order: u128) -> Vec<u64> {
        match self {
            PrimeFilter::All => prime_divisors(order),
            PrimeFilter::Only(ps) => ps.clone(),
            PrimeFilter::AtLeast(p) => prime_divisors(order).into_iter().filter(|q| q >= p).collect(),
        }
    }

    fn restricts(&self) -> bool {
        *self != PrimeFilter::All
    }

    fn describe(&self) -> String {
        match self {
            PrimeFilter::All => "all".into(),
            PrimeFilter::Only(ps) => ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","),
            PrimeFilter::AtLeast(p) => format!(">={p}"),
        }
    }
}

/// A group together with the name it is reported under.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub name: String,
    pub group: GenGroup,
}

impl GroupSpec {
    /// Catalog name (`M24`, `S4`, `Z2xZ2`, ...) or a path to a JSON file
    /// `{"degree": n, "generators": [[...], ...]}` with 1-based images.
    pub fn resolve(spec: &str) -> Result<Self> {
        let path = Path::new(spec);
        if spec.ends_with(".json") || path.is_file() {
            let text = std::fs::read_to_string(path)?;
            let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| spec.into());
            return Ok(GroupSpec { name, group: GenGroup::from_json(&text)? });
        }
        Ok(GroupSpec { name: spec.to_string(), group: catalog::by_name(spec)? })
    }
}

/// Settings shared by all commands.
#[derive(Clone, Debug)]
pub struct JobConfig {
    pub method: Method,
    pub primes: PrimeFilter,
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
    pub threads: usize,
    pub convention: Convention,
}

impl Default for JobConfig {
    fn default() -> Self {
        JobConfig {
            method: Method::Auto,
            primes: PrimeFilter::All,
            seed: 0,
            cache_dir: None,
            format: Format::Json,
            threads: 1,
            convention: Convention::ConjX,
        }
    }
}

impl JobConfig {
    fn search(&self) -> SearchConfig {
        SearchConfig { seed: self.seed, ..SearchConfig::default() }
    }

    fn report<T: Serialize>(&self, command: &str, method: &str, result: T) -> Report<T> {
        Report {
            tool: "wyhom",
            version: VERSION,
            command: command.to_string(),
            seed: self.seed,
            method: method.to_string(),
            convention: self.convention.name(),
            result,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub method: String,
    pub convention: &'static str,
    pub result: T,
}

/// Tabular rendering of a report.
pub trait Tabular {
    fn header(&self) -> Vec<&'static str>;
    fn rows(&self) -> Vec<Vec<String>>;
}

impl<T: Serialize + Tabular> Report<T> {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let map = |e: csv::Error| Error::invalid(e.to_string());
        w.write_record(self.result.header()).map_err(map)?;
        for row in self.result.rows() {
            w.write_record(&row).map_err(map)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::invalid(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(self.to_json()),
            Format::Csv => self.to_csv(),
        }
    }
}

/// Parses `0,1,2`, `0..4` or a mix such as `0..2,5`.
pub fn parse_list(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad number {t:?}")));
        if let Some((a, b)) = part.split_once("..") {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(Error::Parse(format!("empty range {part:?}")));
            }
            out.extend(a..=b);
        } else {
            out.push(num(part)?);
        }
    }
    if out.is_empty() {
        return Err(Error::Parse("empty list".into()));
    }
    Ok(out)
}

fn mask(nodes: &[usize]) -> Result<u64> {
    nodes.iter().try_fold(0u64, |m, &i| {
        if i >= 63 {
            Err(Error::invalid(format!("type index {i} too large")))
        } else {
            Ok(m | (1 << i))
        }
    })
}

fn finite(g: &GenGroup) -> Result<Arc<FiniteGroup>> {
    Ok(Arc::new(FiniteGroup::new(g)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeResult {
    pub degree: usize,
    pub invariants: AbelianInvariants,
    pub text: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<PrimePart>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyReport {
    pub group: String,
    pub order: String,
    pub permutation_degree: usize,
    pub primes: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub types: Option<Vec<usize>>,
    pub degrees: Vec<DegreeResult>,
}

impl Tabular for HomologyReport {
    fn header(&self) -> Vec<&'static str> {
        vec!["group", "degree", "torsion", "free_rank", "text"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.degrees
            .iter()
            .map(|d| {
                let t: Vec<String> = d.invariants.torsion.iter().map(|q| q.to_string()).collect();
                vec![self.group.clone(), d.degree.to_string(), t.join(" "), d.invariants.free_rank.to_string(), d.text.clone()]
            })
            .collect()
    }
}

/// Vertex types for the Wall route on the simplex: the shortest prefix `{0..j}`
/// whose vertex stabilizers are all trivial, or the longest one available.
pub fn default_types(group: &GenGroup) -> Result<Vec<usize>> {
    let base = Base::simplex(group.degree())?;
    let top = base.dim();
    for j in 0..top {
        let v = (1u64 << (j + 1)) - 1;
        let e = orbit_decompose(&base, v, group, 0)?;
        if (0..e.orbit_counts()[0]).all(|i| e.cell(0, i).stabilizer.order() == 1) {
            return Ok((0..=j).collect());
        }
    }
    Ok((0..top).collect())
}

fn wall_resolution(group: &GenGroup, types: &[usize], n: usize) -> Result<FreeResolution> {
    let base = Base::simplex(group.degree())?;
    let e = orbit_decompose(&base, mask(types)?, group, n + 1)?;
    let c = NonFreeComplex::from_cells(&e, finite(group)?)?;
    Ok(wall_assemble(&c, n, &default_resolver)?.resolution)
}

fn bar_checked(group: &GenGroup, n: usize) -> Result<FreeResolution> {
    let size = (group.order().saturating_sub(1)).saturating_pow(n as u32).saturating_mul(group.order());
    if size > BAR_RANK_CAP {
        return Err(Error::cap(format!("bar resolution Z-rank in degree {n}"), BAR_RANK_CAP as usize));
    }
    bar_resolution(finite(group)?, n)
}

fn whole_group_resolution(cfg: &JobConfig, group: &GenGroup, method: Method, types: &[usize], n: usize) -> Result<FreeResolution> {
    match method {
        Method::Bar => bar_checked(group, n + 1),
        Method::Small => resolution_small_cached(finite(group)?, n + 1, cfg.cache_dir.as_deref()),
        _ => wall_resolution(group, types, n),
    }
}

fn restrict(h: &AbelianInvariants, primes: &[u64]) -> AbelianInvariants {
    primes.iter().fold(AbelianInvariants::trivial(), |acc, &p| acc.direct_sum(&h.ppart(p)))
}

/// `H_k(G)` for `k` in `degrees`.
pub fn cmd_group_homology(
    cfg: &JobConfig,
    spec: &GroupSpec,
    degrees: &[usize],
    types: Option<Vec<usize>>,
) -> Result<Report<HomologyReport>> {
    let g = &spec.group;
    let order = g.order();
    let top = *degrees.iter().max().ok_or_else(|| Error::invalid("no degrees requested"))?;
    if degrees.contains(&0) {
        return Err(Error::invalid("degrees start at 1"));
    }
    if let PrimeFilter::Only(ps) = &cfg.primes {
        if let Some(p) = ps.iter().find(|p| !is_prime(**p)) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
    }
    let primes = cfg.primes.primes(order);
    let needs_whole = |p: u64| valuation(order, p as u128) > 1;
    let uses_whole = match cfg.method {
        Method::Bar | Method::Small | Method::Wall => true,
        Method::Auto => primes.iter().any(|&p| needs_whole(p)),
        Method::Sylow => false,
    };
    let whole_method = match cfg.method {
        Method::Auto if order <= SMALL_GROUP_CAP as u128 => Method::Small,
        Method::Auto => Method::Wall,
        m => m,
    };
    let types = if uses_whole && whole_method == Method::Wall {
        Some(match types {
            Some(t) => t,
            None => default_types(g)?,
        })
    } else {
        None
    };
    let whole = if uses_whole {
        Some(whole_group_resolution(cfg, g, whole_method, types.as_deref().unwrap_or(&[]), top)?)
    } else {
        None
    };
    let mut out = Vec::new();
    for &n in degrees {
        let (invariants, parts) = match cfg.method {
            Method::Sylow => sylow_homology(g, n, Some(&primes), cfg.convention, cfg.search())?,
            Method::Auto => {
                let mut total = AbelianInvariants::trivial();
                let mut parts = Vec::new();
                for &p in &primes {
                    let part = if needs_whole(p) {
                        let h = whole.as_ref().expect("built").homology(n)?.ppart(p);
                        PrimePart { prime: p, invariants: h, method: whole_method.name(), weyl_exponent: None }
                    } else {
                        sylow_homology(g, n, Some(&[p]), cfg.convention, cfg.search())?.1.remove(0)
                    };
                    total = total.direct_sum(&part.invariants);
                    parts.push(part);
                }
                if !cfg.primes.restricts() {
                    total.free_rank = 0;
                }
                (total, parts)
            }
            _ => {
                let h = whole.as_ref().expect("built").homology(n)?;
                let h = if cfg.primes.restricts() { restrict(&h, &primes) } else { h };
                (h, Vec::new())
            }
        };
        out.push(DegreeResult { degree: n, text: invariants.to_string(), invariants, parts });
    }
    let method = match cfg.method {
        Method::Auto if uses_whole => format!("auto({})", whole_method.name()),
        Method::Auto => "auto(sylow)".to_string(),
        m => m.name().to_string(),
    };
    Ok(cfg.report(
        "homology",
        &method,
        HomologyReport {
            group: spec.name.clone(),
            order: order.to_string(),
            permutation_degree: g.degree(),
            primes: cfg.primes.describe(),
            types,
            degrees: out,
        },
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct PatternCell {
    pub group: String,
    pub prime: u64,
    pub divides: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<u64>,
    /// `2e·k − 1` as text, `-` when the p-part vanishes in every degree.
    pub pattern: String,
    /// `H_n(G)_(p)` for `n = 1..=check_degrees`, from the closed form.
    pub first_degrees: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PatternTable {
    pub primes: Vec<u64>,
    pub groups: Vec<String>,
    pub cells: Vec<PatternCell>,
    pub grid: Vec<String>,
}

impl Tabular for PatternTable {
    fn header(&self) -> Vec<&'static str> {
        vec!["group", "prime", "exponent", "pattern"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.cells
            .iter()
            .map(|c| {
                vec![
                    c.group.clone(),
                    c.prime.to_string(),
                    c.exponent.map(|e| e.to_string()).unwrap_or_default(),
                    c.pattern.clone(),
                ]
            })
            .collect()
    }
}

/// The degrees `n = 2ek − 1` carrying `Z_p`, for primes dividing `|G|` once.
pub fn cmd_ppart_table(cfg: &JobConfig, groups: &[GroupSpec], primes: &[u64]) -> Result<Report<PatternTable>> {
    let mut cells = Vec::new();
    for spec in groups {
        for &p in primes {
            if !is_prime(p) {
                return Err(Error::invalid(format!("{p} is not prime")));
            }
            let w = weyl_exponent(&spec.group, p, cfg.search())?;
            let exponent = w.map(|w| w.exponent);
            let pattern = match exponent {
                Some(e) => format!("{}k-1", 2 * e),
                None => "-".into(),
            };
            let first_degrees = match exponent {
                Some(e) => (1..=4 * e as usize).filter(|&n| !cyclic_pattern(p, e, n).is_trivial()).collect(),
                None => Vec::new(),
            };
            cells.push(PatternCell { group: spec.name.clone(), prime: p, divides: exponent.is_some(), exponent, pattern, first_degrees });
        }
    }
    let names: Vec<String> = groups.iter().map(|g| g.name.clone()).collect();
    let width = 8;
    let mut grid = vec![format!("{:<width$}", "p") + &names.iter().map(|n| format!("{n:<width$}")).collect::<String>()];
    for &p in primes {
        let mut line = format!("{:<width$}", format!("p={p}"));
        for n in &names {
            let c = cells.iter().find(|c| &c.group == n && c.prime == p).expect("cell");
            line += &format!("{:<width$}", c.pattern);
        }
        grid.push(line.trim_end().to_string());
    }
    let grid = grid.into_iter().map(|l| l.trim_end().to_string()).collect();
    Ok(cfg.report("ppart-table", "sylow", PatternTable { primes: primes.to_vec(), groups: names, cells, grid }))
}

/// M11, M12, M21, M22, M23 and M24.
pub fn mathieu_specs() -> Result<Vec<GroupSpec>> {
    MATHIEU.iter().map(|n| GroupSpec::resolve(n)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct WythoffReport {
    pub group: String,
    pub order: String,
    pub base: String,
    pub types: Vec<usize>,
    pub dimension: usize,
    pub orbit_counts: Vec<usize>,
    pub cell_counts: Vec<String>,
    /// Stabilizer orders of the orbit representatives, descending, per dimension.
    pub stabilizer_orders: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex_degree: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler_characteristic: Option<i128>,
}

impl Tabular for WythoffReport {
    fn header(&self) -> Vec<&'static str> {
        vec!["dim", "orbits", "cells", "stabilizer_orders"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        (0..self.orbit_counts.len())
            .map(|d| {
                vec![
                    d.to_string(),
                    self.orbit_counts[d].to_string(),
                    self.cell_counts[d].clone(),
                    self.stabilizer_orders[d].join(" "),
                ]
            })
            .collect()
    }
}

pub fn parse_base(spec: Option<&str>, group: &GenGroup) -> Result<(Base, String)> {
    match spec {
        None | Some("simplex") => Ok((Base::simplex(group.degree())?, format!("simplex({})", group.degree()))),
        Some(path) => {
            let c = DComplex::from_json(&std::fs::read_to_string(path)?)?;
            Ok((Base::Complex(c), path.to_string()))
        }
    }
}

pub fn decompose(spec: &GroupSpec, base: &Base, types: &[usize], max_dim: usize) -> Result<EquivariantCellComplex> {
    base.check_action(&spec.group)?;
    orbit_decompose(base, mask(types)?, &spec.group, max_dim)
}

/// Orbit structure of the Wythoff complex through dimension `max_dim`.
pub fn cmd_wythoff_report(
    cfg: &JobConfig,
    spec: &GroupSpec,
    base: Option<&str>,
    types: &[usize],
    max_dim: usize,
) -> Result<Report<WythoffReport>> {
    let (base, base_name) = parse_base(base, &spec.group)?;
    let e = decompose(spec, &base, types, max_dim)?;
    let counts = e.cell_counts();
    let orbit_counts = e.orbit_counts();
    let stabilizer_orders = (0..orbit_counts.len())
        .map(|d| {
            let mut s: Vec<u128> = (0..orbit_counts[d]).map(|i| e.cell(d, i).stabilizer.order()).collect();
            s.sort_unstable_by(|a, b| b.cmp(a));
            s.into_iter().map(|x| x.to_string()).collect()
        })
        .collect();
    let vertex_degree = (counts.len() > 1 && orbit_counts[0] == 1).then(|| (2 * counts[1] / counts[0]).to_string());
    let full = e.top() == e.poset.max_height();
    Ok(cfg.report(
        "wythoff",
        "wythoff",
        WythoffReport {
            group: spec.name.clone(),
            order: spec.group.order().to_string(),
            base: base_name,
            types: types.to_vec(),
            dimension: e.poset.max_height(),
            orbit_counts,
            cell_counts: counts.iter().map(|c| c.to_string()).collect(),
            stabilizer_orders,
            vertex_degree,
            euler_characteristic: full.then(|| e.euler_characteristic()),
        },
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeDegreeReport {
    pub group: String,
    pub point: String,
    pub points: usize,
    pub vertex: usize,
    pub degree: usize,
    pub edges: String,
    pub neighbours: Vec<usize>,
    /// Orbit points as `p/q` coordinate lists, when requested.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub point_list: Vec<String>,
}

impl Tabular for EdgeDegreeReport {
    fn header(&self) -> Vec<&'static str> {
        vec!["u", "v"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.neighbours.iter().map(|w| vec![self.vertex.to_string(), w.to_string()]).collect()
    }
}

/// Degree of vertex `vertex` of the orbit polytope of `point`; the polytope is
/// vertex-transitive, so the edge count is `|orbit|·degree/2`.
pub fn cmd_edge_degree(
    cfg: &JobConfig,
    spec: &GroupSpec,
    point: &RationalPoint,
    vertex: usize,
    list_points: bool,
) -> Result<Report<EdgeDegreeReport>> {
    let pts = orbit_points(&spec.group, point, POINT_CAP)?;
    check_convex_position(&pts)?;
    if vertex >= pts.len() {
        return Err(Error::invalid(format!("vertex {vertex} out of range for {} points", pts.len())));
    }
    let nb = neighbours(vertex, &pts, cfg.threads)?;
    let edges = (pts.len() as u128 * nb.len() as u128 / 2).to_string();
    Ok(cfg.report(
        "edge-degree",
        "exact-lp",
        EdgeDegreeReport {
            group: spec.name.clone(),
            point: point.to_string(),
            points: pts.len(),
            vertex,
            degree: nb.len(),
            edges,
            neighbours: nb,
            point_list: if list_points { pts.iter().map(|p| p.to_string()).collect() } else { Vec::new() },
        },
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionReport {
    pub group: String,
    pub order: String,
    pub ranks: Vec<usize>,
    pub homology: Vec<DegreeResult>,
    pub boundaries_ok: bool,
    /// `None` when the resolution carries no contracting homotopy.
    pub homotopy_ok: Option<bool>,
}

impl Tabular for ResolutionReport {
    fn header(&self) -> Vec<&'static str> {
        vec!["degree", "rank", "homology"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.ranks
            .iter()
            .enumerate()
            .map(|(k, r)| {
                let h = self.homology.iter().find(|d| d.degree == k).map(|d| d.text.clone()).unwrap_or_default();
                vec![k.to_string(), r.to_string(), h]
            })
            .collect()
    }
}

/// A free resolution through degree `n + 1`, its checks and `H_1..H_n`.
pub fn cmd_resolution(cfg: &JobConfig, spec: &GroupSpec, n: usize, types: Option<Vec<usize>>) -> Result<Report<ResolutionReport>> {
    let g = &spec.group;
    let method = match cfg.method {
        Method::Auto if g.order() <= SMALL_GROUP_CAP as u128 => Method::Small,
        Method::Auto => Method::Wall,
        Method::Sylow => return Err(Error::invalid("the sylow method builds no resolution")),
        m => m,
    };
    let types = match (method, types) {
        (Method::Wall, Some(t)) => t,
        (Method::Wall, None) => default_types(g)?,
        _ => Vec::new(),
    };
    let r = whole_group_resolution(cfg, g, method, &types, n)?;
    r.check_boundaries()?;
    let homotopy_ok = match r.homotopy_depth() {
        None => None,
        Some(_) => {
            r.check_homotopy(1)?;
            Some(true)
        }
    };
    let homology = (1..=n)
        .map(|k| {
            let h = r.homology(k)?;
            Ok(DegreeResult { degree: k, text: h.to_string(), invariants: h, parts: Vec::new() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(cfg.report(
        "resolution",
        method.name(),
        ResolutionReport {
            group: spec.name.clone(),
            order: g.order().to_string(),
            ranks: r.ranks().to_vec(),
            homology,
            boundaries_ok: true,
            homotopy_ok,
        },
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleCase {
    pub group: String,
    pub degree: usize,
    pub bar: String,
    pub small: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall: Option<String>,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelfTestReport {
    pub conj_x: bool,
    pub conj_x_inverse: bool,
    pub selected_convention: Option<&'static str>,
    pub oracle: Vec<OracleCase>,
    pub twisted_z4: bool,
    pub passed: bool,
}

impl Tabular for SelfTestReport {
    fn header(&self) -> Vec<&'static str> {
        vec!["check", "passed"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let mut rows = vec![
            vec!["conj_x".into(), self.conj_x.to_string()],
            vec!["conj_x_inverse".into(), self.conj_x_inverse.to_string()],
            vec!["twisted_z4".into(), self.twisted_z4.to_string()],
        ];
        for c in &self.oracle {
            rows.push(vec![format!("{} H_{}", c.group, c.degree), c.agree.to_string()]);
        }
        rows
    }
}

/// Groups of the oracle comparison, with the vertex types used for the Wall route
/// on the simplex when the action makes sense.
pub fn oracle_groups() -> Vec<(&'static str, GenGroup, Option<u64>)> {
    use wythoff_homology::catalog::{abelian_group, alternating_group, dihedral_group};
    use wythoff_homology::group::{cyclic_group, symmetric_group};
    vec![
        ("Z2", cyclic_group(2), None),
        ("Z3", cyclic_group(3), Some(0b1)),
        ("Z4", cyclic_group(4), Some(0b11)),
        ("Z6", cyclic_group(6), Some(0b111)),
        ("Z2xZ2", abelian_group(&[2, 2]), Some(0b1)),
        ("S3", symmetric_group(3), Some(0b1)),
        ("D4", dihedral_group(4), Some(0b11)),
        ("A4", alternating_group(4), Some(0b11)),
    ]
}

/// CE conventions against kernel resolutions, and the bar / small / Wall oracles.
pub fn cmd_selftest(cfg: &JobConfig) -> Result<Report<SelfTestReport>> {
    let ce = ce_self_test(cfg.search())?;
    let mut oracle = Vec::new();
    for (name, g, v) in oracle_groups() {
        let f = finite(&g)?;
        let bar = bar_resolution(f.clone(), 4)?;
        let small = resolution_small(f.clone(), 4)?;
        let wall = match v {
            Some(v) => {
                let e = orbit_decompose(&Base::simplex(g.degree())?, v, &g, 4)?;
                let c = NonFreeComplex::from_cells(&e, f.clone())?;
                Some(wall_assemble(&c, 3, &default_resolver)?.resolution)
            }
            None => None,
        };
        for n in 1..=3 {
            let (b, s) = (bar.homology(n)?, small.homology(n)?);
            let w = wall.as_ref().map(|w| w.homology(n)).transpose()?;
            let agree = b == s && w.as_ref().map_or(true, |w| *w == b);
            oracle.push(OracleCase {
                group: name.into(),
                degree: n,
                bar: b.to_string(),
                small: s.to_string(),
                wall: w.map(|w| w.to_string()),
                agree,
            });
        }
    }
    let z4 = wythoff_homology::group::cyclic_group(4);
    let half = GenGroup::new(4, vec![z4.generators()[0].pow(2)])?;
    let t = twisted_tensor(finite(&z4)?, &half, 3, &default_resolver)?;
    let four = AbelianInvariants::from_torsion(&[4], 0);
    let twisted_z4 = t.resolution.homology(1)? == four && t.resolution.homology(3)? == four;
    let passed = (ce.conj_x || ce.conj_x_inverse) && oracle.iter().all(|c| c.agree) && twisted_z4;
    Ok(cfg.report(
        "selftest",
        "oracle",
        SelfTestReport {
            conj_x: ce.conj_x,
            conj_x_inverse: ce.conj_x_inverse,
            selected_convention: ce.selected().ok().map(|c| c.name()),
            oracle,
            twisted_z4,
            passed,
        },
    ))
}
