use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use invlat::bounds::{bound_relations, compute, BoundRelations, DegreeBoundReport, SearchOptions, Witnesses};
use invlat::constructions::{
    conjecture_bound, counterexample_check, dicyclic_dspan, dihedral_dspan, is_prime, sharp_case_check,
    sharp_case_lattice, Construction, CounterexampleReport, SharpCaseReport, SharpCaseSpec,
};
use invlat::geomnum::{dual_pair_lift, gen_deg_basis, mahler_basis, minkowski_check, successive_minima};
use invlat::rank2::{
    analyze_sublattice, bite_sweep, blob_check, is_excluded, sublattice, sublattices_of_index, HrdMode, HrdReport,
    HrdRow,
};
use invlat::sample::{random_distinct_characters, random_systems, rng, SampleConfig};
use invlat::{BoundKind, CongruenceSystem, SearchError};

use crate::input::{parse_pairs, NumList};
use crate::output::{csv, json, matrix_cell, table, uvec_cell, vec_cell, vectors_cell, Format};
use crate::{Command, Failure, Suite};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Sharp,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    All,
    Excluded,
    Nonexcluded,
}

impl From<ModeArg> for HrdMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::All => HrdMode::All,
            ModeArg::Excluded => HrdMode::Excluded,
            ModeArg::Nonexcluded => HrdMode::Nonexcluded,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct SampleArgs {
    /// Number of random single-congruence lattices.
    #[arg(long, default_value_t = 200)]
    pub random: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Dimension range.
    #[arg(long, default_value = "2..4")]
    pub m: NumList,
    /// Largest modulus.
    #[arg(long, default_value_t = 50)]
    pub nmax: u64,
}

impl SampleArgs {
    fn systems(&self) -> Result<Vec<CongruenceSystem>, Failure> {
        let lo = *self.m.0.iter().min().ok_or_else(|| Failure::input("empty --m"))? as usize;
        let hi = *self.m.0.iter().max().expect("nonempty") as usize;
        if lo == 0 || self.nmax < 2 {
            return Err(Failure::input("need m >= 1 and nmax >= 2"));
        }
        Ok(random_systems(&SampleConfig {
            seed: self.seed,
            count: self.random,
            m_min: lo,
            m_max: hi,
            nmax: self.nmax,
            primes_only: false,
        }))
    }
}

pub fn dispatch(cmd: Command, fmt: Format) -> Result<String, Failure> {
    match cmd {
        Command::Bounds { lattice, which, cap } => bounds(&lattice.resolve()?.lattice, &which, cap, fmt),
        Command::Verify { suite } => verify(suite, fmt),
        Command::Scan { primes, m, family, samples, seed, cap } => {
            scan(&primes.0, &m.0, family, samples, seed, cap, fmt)
        }
        Command::Minima { lattice } => minima(&lattice.resolve()?.lattice, fmt),
        Command::Basis { lattice, pairs } => basis(&lattice.resolve()?.lattice, pairs.as_deref(), fmt),
        Command::Construct { spec } => construct(&spec, fmt),
    }
}

#[derive(Serialize)]
struct BoundsCsv {
    which: BoundKind,
    value: u64,
    index: String,
    search_cap_used: u64,
    witnesses: String,
}

fn witness_cell(w: &Witnesses) -> String {
    match w {
        Witnesses::CosetRepresentatives(map) => {
            map.iter().map(|(k, v)| format!("{k}:{}", vec_cell(v.coords()))).collect::<Vec<_>>().join(";")
        }
        Witnesses::Generators(g) => vectors_cell(g),
    }
}

fn bounds(l: &invlat::LatticeBasis, which: &[BoundKind], cap: Option<u64>, fmt: Format) -> Result<String, Failure> {
    let opts = SearchOptions { cap, cancel: None };
    let reports: Vec<DegreeBoundReport> =
        which.iter().map(|&w| compute(l, w, &opts)).collect::<Result<_, SearchError>>()?;
    match fmt {
        Format::Json => json(&reports),
        Format::Csv => csv(&reports
            .iter()
            .map(|r| BoundsCsv {
                which: r.which,
                value: r.value,
                index: r.index.to_string(),
                search_cap_used: r.search_cap_used,
                witnesses: witness_cell(&r.witnesses),
            })
            .collect::<Vec<_>>()),
        Format::Pretty => {
            let mut s = format!("lattice of index {} in dimension {}\n", l.index(), l.dimension());
            for r in &reports {
                s += &format!("{} = {} (cap {})\n", r.which, r.value, r.search_cap_used);
                match &r.witnesses {
                    Witnesses::CosetRepresentatives(map) => {
                        for (k, v) in map {
                            s += &format!("  [{k}] {v}\n");
                        }
                    }
                    Witnesses::Generators(g) => {
                        for v in g {
                            s += &format!("  {v}\n");
                        }
                    }
                }
            }
            Ok(s)
        }
    }
}

/// Renders a suite result and turns a failed suite into exit code 1.
fn finish<R: Serialize>(
    suite: &str,
    passed: bool,
    payload: Value,
    rows: &[R],
    pretty: String,
    violators: Vec<String>,
    fmt: Format,
) -> Result<String, Failure> {
    let out = match fmt {
        Format::Json => json(&json!({ "suite": suite, "passed": passed, "reports": payload }))?,
        Format::Csv => csv(rows)?,
        Format::Pretty => format!("{pretty}{suite}: {}\n", if passed { "ok" } else { "FAILED" }),
    };
    if passed {
        Ok(out)
    } else {
        let mut msg = format!("{suite}: {} violation(s)", violators.len());
        for v in violators.iter().take(20) {
            msg += &format!("\n  {v}");
        }
        Err(Failure::violation(msg, out))
    }
}

fn verify(suite: Suite, fmt: Format) -> Result<String, Failure> {
    match suite {
        Suite::Hrd { n, mode } => verify_hrd(&n.0, mode.into(), fmt),
        Suite::Counterexample { n } => verify_counterexample(&n.0, fmt),
        Suite::Minkowski { sample } => verify_minkowski(&sample, fmt),
        Suite::Relations { sample } => verify_relations(&sample, fmt),
        Suite::Sharp { primes, m, all_missing } => verify_sharp(&primes.0, &m.0, all_missing, fmt),
        Suite::Blob { n } => verify_blob(&n.0, fmt),
        Suite::Bite { random, seed, nmax } => verify_bite(random, seed, nmax, fmt),
    }
}

fn verify_hrd(ns: &[u64], mode: HrdMode, fmt: Format) -> Result<String, Failure> {
    if ns.contains(&0) {
        return Err(Failure::input("index must be positive"));
    }
    let cells: Vec<(u64, u64, u64)> = ns.iter().flat_map(|&n| sublattices_of_index(n)).collect();
    let analyses = cells.par_iter().map(|&(a, b, d)| analyze_sublattice(a, b, d)).collect::<Result<Vec<_>, _>>()?;
    let reports: Vec<HrdReport> = ns
        .iter()
        .map(|&n| {
            let mine = analyses.iter().filter(|x| x.row.n == n).cloned().collect();
            HrdReport::from_analyses(n, mode, mine)
        })
        .collect();
    let passed = reports.iter().all(|r| r.passed());
    let rows: Vec<HrdRow> = reports.iter().flat_map(|r| r.rows.clone()).collect();
    let violators = reports
        .iter()
        .flat_map(|r| {
            let v = r
                .violations
                .iter()
                .map(|x| format!("n={} basis (({},{}),(0,{})) dspan {}", x.n, x.a, x.b, x.d, x.dspan));
            let h = r
                .he_failures
                .iter()
                .map(move |x| format!("n={} basis (({},{}),(0,{})) H/E checks {:?}", r.n, x.a, x.b, x.d, x.he.checks));
            v.chain(h).collect::<Vec<_>>()
        })
        .collect();
    let pretty = table(
        &["n", "sublattices", "excluded", "max dspan", "n/2", "ok"],
        &reports
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    r.sublattices.to_string(),
                    r.excluded.to_string(),
                    r.max_dspan_nonexcluded.map_or("-".into(), |x| x.to_string()),
                    (r.n / 2).to_string(),
                    r.passed().to_string(),
                ]
            })
            .collect::<Vec<_>>(),
    );
    finish("hrd", passed, json!(reports), &rows, pretty, violators, fmt)
}

#[derive(Serialize)]
struct CounterexampleCsv {
    n: u64,
    coefficients: String,
    bfieldr: u64,
    half: u64,
    conjecture_bound: u64,
    d_vector: String,
    vectors_in_lattice: bool,
    passed: bool,
}

fn verify_counterexample(ns: &[u64], fmt: Format) -> Result<String, Failure> {
    for &n in ns {
        if n < 6 || n % 2 == 1 {
            return Err(Failure::input(format!("n = {n}: need an even n >= 6")));
        }
    }
    let reports = ns.par_iter().map(|&n| counterexample_check(n)).collect::<Result<Vec<CounterexampleReport>, _>>()?;
    let rows: Vec<CounterexampleCsv> = reports
        .iter()
        .map(|r| CounterexampleCsv {
            n: r.n,
            coefficients: uvec_cell(&r.coefficients),
            bfieldr: r.bfieldr,
            half: r.half,
            conjecture_bound: r.conjecture_bound,
            d_vector: vec_cell(&r.d_vector),
            vectors_in_lattice: r.vectors_in_lattice,
            passed: r.passed,
        })
        .collect();
    let passed = reports.iter().all(|r| r.passed);
    let violators = reports.iter().filter(|r| !r.passed).map(|r| format!("n={} {:?}", r.n, r)).collect();
    let pretty = table(
        &["n", "bfieldr", "n/2", "ceil(n/3)", "D", "ok"],
        &reports
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    r.bfieldr.to_string(),
                    r.half.to_string(),
                    r.conjecture_bound.to_string(),
                    format!("({})", vec_cell(&r.d_vector).replace(' ', ",")),
                    r.passed.to_string(),
                ]
            })
            .collect::<Vec<_>>(),
    );
    finish("counterexample", passed, json!(reports), &rows, pretty, violators, fmt)
}

#[derive(Serialize, Clone)]
struct MinkowskiRow {
    moduli: String,
    coefficients: String,
    lambdas: String,
    mahler_norms: String,
    minkowski: bool,
    mahler: bool,
}

fn verify_minkowski(sample: &SampleArgs, fmt: Format) -> Result<String, Failure> {
    let systems = sample.systems()?;
    let results = systems
        .par_iter()
        .map(|s| -> Result<(Value, MinkowskiRow), Failure> {
            let l = s.lattice();
            let mb = mahler_basis(&l)?;
            let mink = minkowski_check(&l, &mb.minima);
            let det_ok =
                invlat::linalg::det_columns(&mb.basis.iter().map(|b| b.to_big()).collect::<Vec<_>>()) == l.index();
            let mahler = mb.satisfies_norm_bound() && det_ok;
            let row = MinkowskiRow {
                moduli: uvec_cell(s.moduli()),
                coefficients: matrix_cell(s.coefficients()),
                lambdas: uvec_cell(&mb.minima.lambdas),
                mahler_norms: uvec_cell(&mb.norms),
                minkowski: mink,
                mahler,
            };
            Ok((json!({"system": s, "mahler": mb, "minkowski": mink, "mahler_ok": mahler}), row))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let rows: Vec<MinkowskiRow> = results.iter().map(|r| r.1.clone()).collect();
    let passed = rows.iter().all(|r| r.minkowski && r.mahler);
    let violators = rows
        .iter()
        .filter(|r| !(r.minkowski && r.mahler))
        .map(|r| format!("mod {} coefficients {}", r.moduli, r.coefficients))
        .collect();
    let pretty = table(
        &["modulus", "coefficients", "lambdas", "mahler norms", "ok"],
        &rows
            .iter()
            .map(|r| {
                vec![
                    r.moduli.clone(),
                    r.coefficients.clone(),
                    r.lambdas.clone(),
                    r.mahler_norms.clone(),
                    (r.minkowski && r.mahler).to_string(),
                ]
            })
            .collect::<Vec<_>>(),
    );
    let payload = Value::Array(results.into_iter().map(|r| r.0).collect());
    finish("minkowski", passed, payload, &rows, pretty, violators, fmt)
}

#[derive(Serialize)]
struct RelationsRow {
    moduli: String,
    coefficients: String,
    index: u64,
    dspan: u64,
    bfield: u64,
    bfieldr: u64,
    holds: bool,
}

fn verify_relations(sample: &SampleArgs, fmt: Format) -> Result<String, Failure> {
    let systems = sample.systems()?;
    let rels = systems.par_iter().map(|s| bound_relations(&s.lattice())).collect::<Result<Vec<BoundRelations>, _>>()?;
    let rows: Vec<RelationsRow> = systems
        .iter()
        .zip(&rels)
        .map(|(s, r)| RelationsRow {
            moduli: uvec_cell(s.moduli()),
            coefficients: matrix_cell(s.coefficients()),
            index: r.index,
            dspan: r.dspan,
            bfield: r.bfield,
            bfieldr: r.bfieldr,
            holds: r.holds,
        })
        .collect();
    let passed = rows.iter().all(|r| r.holds);
    let violators =
        rows.iter().filter(|r| !r.holds).map(|r| format!("mod {} coefficients {}", r.moduli, r.coefficients)).collect();
    let payload: Vec<Value> = systems.iter().zip(&rels).map(|(s, r)| json!({"system": s, "relations": r})).collect();
    let pretty = table(
        &["modulus", "coefficients", "dspan", "bfield", "bfieldr", "ok"],
        &rows
            .iter()
            .map(|r| {
                vec![
                    r.moduli.clone(),
                    r.coefficients.clone(),
                    r.dspan.to_string(),
                    r.bfield.to_string(),
                    r.bfieldr.to_string(),
                    r.holds.to_string(),
                ]
            })
            .collect::<Vec<_>>(),
    );
    finish("relations", passed, json!(payload), &rows, pretty, violators, fmt)
}

#[derive(Serialize)]
struct SharpRow {
    p: u64,
    m: usize,
    missing: Option<i64>,
    coefficients: String,
    bfield: u64,
    bfieldr: u64,
    bound: u64,
    equal: bool,
}

fn sharp_specs(primes: &[u64], ms: &[u64], all_missing: bool) -> Result<Vec<SharpCaseSpec>, Failure> {
    let mut specs = Vec::new();
    for &p in primes.iter().filter(|&&p| p >= 3 && is_prime(p)) {
        for &m in ms.iter().filter(|&&m| m >= 1 && m < p) {
            let m = m as usize;
            if m % 2 == 1 && all_missing {
                let k = m.div_ceil(2) as i64;
                for x in (1..=k).flat_map(|j| [j, -j]) {
                    specs.push(SharpCaseSpec::new(p, m, Some(x))?);
                }
            } else {
                specs.push(SharpCaseSpec::new(p, m, None)?);
            }
        }
    }
    Ok(specs)
}

fn verify_sharp(primes: &[u64], ms: &[u64], all_missing: bool, fmt: Format) -> Result<String, Failure> {
    let specs = sharp_specs(primes, ms, all_missing)?;
    if specs.is_empty() {
        return Err(Failure::input("no prime p >= 3 with some m < p in the given ranges"));
    }
    let reports = specs.par_iter().map(sharp_case_check).collect::<Result<Vec<SharpCaseReport>, _>>()?;
    let rows: Vec<SharpRow> = reports
        .iter()
        .map(|r| SharpRow {
            p: r.spec.p,
            m: r.spec.m,
            missing: r.spec.missing,
            coefficients: uvec_cell(&r.coefficients),
            bfield: r.bfield,
            bfieldr: r.bfieldr,
            bound: r.bound,
            equal: r.equal,
        })
        .collect();
    let passed = rows.iter().all(|r| r.equal);
    let violators =
        rows.iter().filter(|r| !r.equal).map(|r| format!("p={} m={} missing={:?}", r.p, r.m, r.missing)).collect();
    let pretty = table(
        &["p", "m", "missing", "bfield", "bfieldr", "bound", "ok"],
        &rows
            .iter()
            .map(|r| {
                vec![
                    r.p.to_string(),
                    r.m.to_string(),
                    r.missing.map_or("-".into(), |x| x.to_string()),
                    r.bfield.to_string(),
                    r.bfieldr.to_string(),
                    r.bound.to_string(),
                    r.equal.to_string(),
                ]
            })
            .collect::<Vec<_>>(),
    );
    finish("sharp", passed, json!(reports), &rows, pretty, violators, fmt)
}

#[derive(Serialize, Clone)]
struct BlobRow {
    n: u64,
    a: u64,
    b: u64,
    d: u64,
    passed: bool,
    witness: String,
    point: String,
}

fn verify_blob(ns: &[u64], fmt: Format) -> Result<String, Failure> {
    let cells: Vec<(u64, u64, u64)> = ns
        .iter()
        .flat_map(|&n| sublattices_of_index(n))
        .filter(|&(a, b, d)| !is_excluded(&sublattice(a, b, d)))
        .collect();
    let rows = cells
        .par_iter()
        .map(|&(a, b, d)| -> Result<BlobRow, Failure> {
            let v = blob_check(&sublattice(a, b, d))?;
            Ok(BlobRow {
                n: a * d,
                a,
                b,
                d,
                passed: v.is_none(),
                witness: v.as_ref().map_or(String::new(), |x| vec_cell(x.witness.coords())),
                point: v.as_ref().map_or(String::new(), |x| vec_cell(x.point.coords())),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let passed = rows.iter().all(|r| r.passed);
    let violators = rows
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("basis (({},{}),(0,{})): ({}) below witness ({})", r.a, r.b, r.d, r.point, r.witness))
        .collect();
    let pretty = format!("{} lattices checked\n", rows.len());
    finish("blob", passed, json!(rows), &rows, pretty, violators, fmt)
}

#[derive(Serialize)]
struct BiteRow {
    a: String,
    b: String,
    c: String,
    holds: bool,
}

fn verify_bite(count: usize, seed: u64, nmax: u64, fmt: Format) -> Result<String, Failure> {
    if nmax < 2 {
        return Err(Failure::input("nmax must be at least 2"));
    }
    let cases = bite_sweep(seed, count, nmax)?;
    let rows: Vec<BiteRow> = cases
        .iter()
        .map(|c| BiteRow {
            a: vec_cell(c.a.coords()),
            b: vec_cell(c.b.coords()),
            c: vec_cell(c.c.coords()),
            holds: c.holds,
        })
        .collect();
    let passed = rows.iter().all(|r| r.holds);
    let violators = rows.iter().filter(|r| !r.holds).map(|r| format!("a=({}) b=({})", r.a, r.b)).collect();
    let pretty = format!("{} cases checked\n", rows.len());
    finish("bite", passed, json!(cases), &rows, pretty, violators, fmt)
}

#[derive(Serialize, Clone)]
pub struct ScanRow {
    p: u64,
    m: usize,
    family: &'static str,
    coefficients: String,
    bfieldr: Option<u64>,
    bfield: Option<u64>,
    dspan: Option<u64>,
    conjecture_bound: u64,
    meets_bound: Option<bool>,
    status: &'static str,
}

fn scan_row(
    p: u64,
    m: usize,
    family: &'static str,
    sys: &CongruenceSystem,
    cap: Option<u64>,
) -> Result<ScanRow, Failure> {
    let l = sys.lattice();
    let opts = SearchOptions { cap, cancel: None };
    let mut vals = [None; 3];
    let mut status = "ok";
    for (slot, kind) in vals.iter_mut().zip([BoundKind::Bfieldr, BoundKind::Bfield, BoundKind::Dspan]) {
        match compute(&l, kind, &opts) {
            Ok(r) => *slot = Some(r.value),
            Err(SearchError::CapExceeded { .. }) => status = "cap-exceeded",
            Err(e) => return Err(e.into()),
        }
    }
    let bound = conjecture_bound(p, m as u64);
    Ok(ScanRow {
        p,
        m,
        family,
        coefficients: uvec_cell(&sys.coefficients()[0]),
        bfieldr: vals[0],
        bfield: vals[1],
        dspan: vals[2],
        conjecture_bound: bound,
        meets_bound: vals[1].map(|b| b <= bound),
        status,
    })
}

fn scan(
    primes: &[u64],
    ms: &[u64],
    family: Family,
    samples: usize,
    seed: u64,
    cap: Option<u64>,
    fmt: Format,
) -> Result<String, Failure> {
    let mut work: Vec<(u64, usize, &'static str, CongruenceSystem)> = Vec::new();
    match family {
        Family::Sharp => {
            for spec in sharp_specs(primes, ms, false)? {
                let sys = sharp_case_lattice(&spec);
                work.push((spec.p, spec.m, "sharp", sys));
            }
        }
        Family::Random => {
            let mut r = rng(seed);
            for &p in primes.iter().filter(|&&p| is_prime(p)) {
                for &m in ms.iter().filter(|&&m| m >= 1 && m < p) {
                    for _ in 0..samples {
                        let sys = random_distinct_characters(&mut r, p, m as usize).expect("m < p");
                        work.push((p, m as usize, "random", sys));
                    }
                }
            }
        }
    }
    if work.is_empty() {
        return Err(Failure::input("no (p, m) cells: need a prime p and some m with 1 <= m < p"));
    }
    let rows =
        work.par_iter().map(|(p, m, fam, sys)| scan_row(*p, *m, fam, sys, cap)).collect::<Result<Vec<_>, _>>()?;
    match fmt {
        Format::Json => json(&rows),
        Format::Csv => csv(&rows),
        Format::Pretty => {
            let opt = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
            Ok(table(
                &["p", "m", "family", "coefficients", "bfieldr", "bfield", "dspan", "bound", "meets", "status"],
                &rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.p.to_string(),
                            r.m.to_string(),
                            r.family.to_string(),
                            r.coefficients.clone(),
                            opt(r.bfieldr),
                            opt(r.bfield),
                            opt(r.dspan),
                            r.conjecture_bound.to_string(),
                            r.meets_bound.map_or("-".into(), |b| b.to_string()),
                            r.status.to_string(),
                        ]
                    })
                    .collect::<Vec<_>>(),
            ))
        }
    }
}

#[derive(Serialize)]
struct MinimaRow {
    i: usize,
    lambda: u64,
    witness: String,
}

fn minima(l: &invlat::LatticeBasis, fmt: Format) -> Result<String, Failure> {
    let sm = successive_minima(l);
    let mink = minkowski_check(l, &sm);
    match fmt {
        Format::Json => json(&json!({"index": l.index().to_string(), "minima": sm, "minkowski": mink})),
        Format::Csv => csv(&sm
            .lambdas
            .iter()
            .zip(&sm.witnesses)
            .enumerate()
            .map(|(i, (&lambda, w))| MinimaRow { i: i + 1, lambda, witness: vec_cell(w.coords()) })
            .collect::<Vec<_>>()),
        Format::Pretty => {
            let mut s = String::new();
            for (i, (lam, w)) in sm.lambdas.iter().zip(&sm.witnesses).enumerate() {
                s += &format!("lambda_{} = {lam}  {w}\n", i + 1);
            }
            s += &format!("minkowski product bound: {}\n", if mink { "holds" } else { "FAILS" });
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct BasisRow {
    role: &'static str,
    vector: String,
    norm: u64,
}

fn basis(l: &invlat::LatticeBasis, pairs: Option<&str>, fmt: Format) -> Result<String, Failure> {
    let g = gen_deg_basis(l)?;
    let lift = match pairs {
        Some(p) => {
            let pairs = parse_pairs(p).map_err(Failure::input)?;
            Some(dual_pair_lift(l, &pairs, &g.basis)?)
        }
        None => None,
    };
    match fmt {
        Format::Json => json(&json!({"gen_deg": g, "lift": lift})),
        Format::Csv => {
            let mut rows: Vec<BasisRow> = g
                .basis
                .iter()
                .map(|v| BasisRow { role: "basis", vector: vec_cell(v.coords()), norm: v.l1norm() })
                .collect();
            if let Some(lf) = &lift {
                rows.extend(lf.lifted.iter().map(|v| BasisRow {
                    role: "lifted",
                    vector: vec_cell(v.coords()),
                    norm: v.l1norm(),
                }));
                rows.extend(lf.pair_vectors.iter().map(|v| BasisRow {
                    role: "pair",
                    vector: vec_cell(v.coords()),
                    norm: v.l1norm(),
                }));
            }
            csv(&rows)
        }
        Format::Pretty => {
            let mut s = String::new();
            for v in &g.basis {
                s += &format!("{v}  norm {}\n", v.l1norm());
            }
            s += &format!("max norm {} vs ceil(index/ceil(m/2)) = {}\n", g.max_norm, g.target);
            if let Some(lf) = &lift {
                s += "lifted:\n";
                for v in lf.all() {
                    s += &format!("{v}  norm {}\n", v.l1norm());
                }
            }
            Ok(s)
        }
    }
}

fn construct(spec: &str, fmt: Format) -> Result<String, Failure> {
    let c: Construction = spec.parse()?;
    let value = match &c {
        Construction::Sharp(s) => json!({
            "construction": c,
            "exponents": s.exponents(),
            "system": sharp_case_lattice(s),
            "conjecture_bound": conjecture_bound(s.p, s.m as u64),
        }),
        Construction::Counterexample { n } => json!({
            "construction": c,
            "system": c.system()?,
            "half": n / 2,
            "conjecture_bound": conjecture_bound(*n, 5),
        }),
        Construction::Dihedral { n } => json!({"construction": c, "dspan": dihedral_dspan(*n)?}),
        Construction::Dicyclic { n } => json!({
            "construction": c,
            "dspan": dicyclic_dspan(*n)?,
            "restriction": c.system()?,
        }),
    };
    match fmt {
        Format::Json | Format::Csv => json(&value),
        Format::Pretty => {
            let mut s = format!("{c}\n");
            if let Some(sys) = value.get("system").or_else(|| value.get("restriction")) {
                s += &format!("system: {sys}\n");
            }
            for k in ["dspan", "conjecture_bound"] {
                if let Some(v) = value.get(k) {
                    s += &format!("{k}: {v}\n");
                }
            }
            Ok(s)
        }
    }
}
