use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use gorenstein::classify::{self, ENGINE_VERSION};
use gorenstein::construct::{self, ci_degrees, theorem_family};
use gorenstein::ehrhart::{hstar, is_normal};
use gorenstein::polytope::io::read_polytope;
use gorenstein::stringy::{dual_pair_of, hodge_table, stringy_pair, BivariateLaurent};
use gorenstein::{fixtures, Int, LatticePolytope};

use crate::db::{self, FamilyMeta, Manifest, StoredPolytope};
use crate::{ClassifyArgs, CmdResult, ConstructArgs, Failure};

fn load(path: &Path) -> Result<LatticePolytope, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    read_polytope(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn tuple(xs: &[Int]) -> String {
    let parts: Vec<String> = xs.iter().map(Int::to_string).collect();
    format!("({})", parts.join(","))
}

#[derive(Serialize)]
struct Analysis {
    dim: usize,
    vertices: usize,
    facets: usize,
    simple: bool,
    smooth: bool,
    reflexive: bool,
    gorenstein_index: Option<usize>,
    cy_dim: Option<i64>,
    hstar: Vec<Int>,
    degree: usize,
    codegree: usize,
    normal: bool,
    digest: String,
}

fn analysis(p: &LatticePolytope) -> Result<Analysis, Failure> {
    let h = hstar(p)?;
    let g = p.gorenstein_index();
    Ok(Analysis {
        dim: p.dim(),
        vertices: p.num_vertices(),
        facets: p.num_facets(),
        simple: p.is_simple(),
        smooth: p.is_smooth(),
        reflexive: p.is_reflexive()?,
        gorenstein_index: g.as_ref().map(|g| g.index),
        cy_dim: g.as_ref().map(|g| g.cy_dim(p.dim())),
        degree: h.degree(),
        codegree: h.codegree(),
        hstar: h.coeffs,
        normal: is_normal(p)?,
        digest: p.canonical_form().digest_hex(),
    })
}

pub fn analyze(file: &Path, json: bool) -> CmdResult {
    let a = analysis(&load(file)?)?;
    if json {
        print!("{}", db::pretty(&a));
        return Ok(());
    }
    println!("dimension: {}", a.dim);
    println!("vertices: {}, facets: {}", a.vertices, a.facets);
    println!("simple: {}", a.simple);
    println!("smooth: {}", a.smooth);
    println!("reflexive: {}", a.reflexive);
    match (a.gorenstein_index, a.cy_dim) {
        (Some(r), Some(n)) => println!("Gorenstein index {r} (Calabi-Yau dimension {n})"),
        _ => println!("not Gorenstein"),
    }
    println!("h* = {}", tuple(&a.hstar));
    println!("degree: {}, codegree: {}", a.degree, a.codegree);
    println!("normal: {}", a.normal);
    println!("digest: {}", a.digest);
    Ok(())
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// Prints one line per cell and returns the anchors of mismatching cells.
fn check_counts(d: usize, r_min: usize, counts: &BTreeMap<usize, usize>) -> Vec<String> {
    let known = fixtures::count_row(d);
    let indices: BTreeSet<usize> = counts.keys().copied().chain(known.keys().copied()).filter(|&r| r >= r_min).collect();
    let mut bad = Vec::new();
    println!("{:>5} {:>8}  fixture", "index", "count");
    for r in indices {
        let got = counts.get(&r).copied().unwrap_or(0);
        let status = match fixtures::count(d, r) {
            Some(want) if want == got as u64 => "OK".to_string(),
            Some(want) => {
                let cell = fixtures::CountCell { d, r, count: want };
                bad.push(format!("{}: expected {want}, got {got}", cell.anchor()));
                format!("FAIL (expected {want})")
            }
            None => "-".to_string(),
        };
        println!("{r:>5} {got:>8}  {status}");
    }
    bad
}

pub fn classify(args: &ClassifyArgs) -> CmdResult {
    let run = classify::enumerate(args.d, args.r_min, args.b)?;
    let root = &args.out;
    fs::create_dir_all(root)?;
    let mut digests: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for c in &run.results {
        let mut stored = StoredPolytope::new(&c.polytope);
        stored.index = Some(c.index);
        let dir = db::index_dir(root, c.index);
        fs::create_dir_all(&dir)?;
        db::write_if_changed(&dir.join(format!("{}.json", stored.digest)), &stored.to_json())?;
        digests.entry(c.index).or_default().push(stored.digest);
    }
    // files from earlier runs with other parameters would break the count invariant
    for r in db::index_dirs(root)? {
        let keep: BTreeSet<&String> = digests.get(&r).into_iter().flatten().collect();
        for f in db::polytope_files(root, r)? {
            let stem = f.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
            if !keep.contains(&stem) {
                fs::remove_file(&f)?;
            }
        }
    }
    let counts: BTreeMap<usize, usize> = digests.iter().map(|(&r, v)| (r, v.len())).collect();
    let mut manifest = Manifest {
        engine_version: ENGINE_VERSION.to_string(),
        d: run.d,
        r_min: run.r_min,
        box_bound: run.box_bound,
        boxes_tried: run.boxes_tried.clone(),
        box_warning: run.box_warning,
        counts: counts.clone(),
        digests,
        timestamp: now(),
    };
    if let Ok(old) = db::read_manifest(root) {
        // an unchanged run keeps its manifest byte for byte
        if (Manifest { timestamp: old.timestamp, ..manifest.clone() }) == old {
            manifest.timestamp = old.timestamp;
        }
    }
    db::write_manifest(root, &manifest)?;
    println!("d = {}, minimal index {}, box {} ({} nodes)", run.d, run.r_min, run.box_bound, run.stats.nodes);
    if run.box_warning {
        eprintln!("warning: results touch the coordinate box {}; counts may be incomplete", run.box_bound);
    }
    let bad = check_counts(run.d, run.r_min, &counts);
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Fixture(bad.join("; ")))
    }
}

fn emit(out: Option<&Path>, items: Vec<StoredPolytope>) -> CmdResult {
    match out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            for s in &items {
                let path = dir.join(format!("{}.json", s.digest));
                db::write_if_changed(&path, &s.to_json())?;
                println!("{}", path.display());
            }
        }
        None if items.len() == 1 => print!("{}", items[0].to_json()),
        None => print!("{}", db::pretty(&items)),
    }
    Ok(())
}

pub fn construct(args: &ConstructArgs) -> CmdResult {
    if let Some(fr) = &args.family {
        let (d, r) = (fr[0], fr[1]);
        let members = theorem_family(d, r)?;
        let items = members
            .iter()
            .map(|(spec, p)| {
                let mut s = StoredPolytope::new(p);
                s.index = Some(r);
                s.family = Some(FamilyMeta {
                    label: spec.label(),
                    spec: spec.clone(),
                    predicted_index: spec.r,
                    ci_degrees: ci_degrees(spec).ok(),
                });
                s
            })
            .collect();
        return emit(args.out.as_deref(), items);
    }
    let mut p = if let Some(files) = &args.cayley {
        let ps = files.iter().map(|f| load(f)).collect::<Result<Vec<_>, _>>()?;
        construct::cayley(&ps)?
    } else if let Some(files) = &args.product {
        let ps = files.iter().map(|f| load(f)).collect::<Result<Vec<_>, _>>()?;
        let (first, rest) = ps.split_first().ok_or_else(|| Failure::Input("--product needs a file".into()))?;
        rest.iter().fold(first.clone(), |acc, q| construct::product(&acc, q))
    } else if let Some(d) = args.simplex {
        construct::simplex(d)
    } else if let Some(f) = &args.input {
        load(f)?
    } else {
        return Err(Failure::Input("give --family, --simplex, --input, --cayley or --product".into()));
    };
    if let Some(k) = args.dilate {
        if k == 0 {
            return Err(Failure::Input("dilation factor must be positive".into()));
        }
        p = construct::dilate(&p, k);
    }
    let mut s = StoredPolytope::new(&p);
    s.index = p.gorenstein_index().map(|g| g.index);
    emit(args.out.as_deref(), vec![s])
}

#[derive(Serialize)]
struct StringyReport<'a> {
    dual: bool,
    index: usize,
    cy_dim: i64,
    /// `(p, q, coefficient)` terms
    e: &'a BivariateLaurent,
    hodge: Option<Vec<Vec<Int>>>,
    hodge_pair: Option<(Int, Int)>,
    negative_entries: bool,
}

pub fn stringy(file: &Path, dual: bool, json: bool) -> CmdResult {
    let p = load(file)?;
    let pair = dual_pair_of(&p)?;
    let s = stringy_pair(&pair)?;
    let e = if dual { &s.e_dual } else { &s.e };
    let table = if s.cy_dim >= 0 { Some(hodge_table(e, s.cy_dim)?) } else { None };
    let report = StringyReport {
        dual,
        index: pair.index,
        cy_dim: s.cy_dim,
        e,
        hodge: table.as_ref().map(|t| t.entries.clone()),
        hodge_pair: table.as_ref().and_then(|t| t.pair()),
        negative_entries: table.as_ref().is_some_and(|t| t.has_negative_entries()),
    };
    if json {
        print!("{}", db::pretty(&report));
        return Ok(());
    }
    println!("{} polytope: index {}, Calabi-Yau dimension {}", if dual { "dual" } else { "input" }, pair.index, s.cy_dim);
    println!("E = {e}");
    if let Some(t) = &table {
        println!("h^(p,q):");
        print!("{}", t.to_text());
        if let Some((a, b)) = t.pair() {
            println!("Hodge pair: ({a},{b})");
        }
        if t.has_negative_entries() {
            println!("note: negative entries");
        }
    }
    Ok(())
}

/// Recomputes the invariants of one stored polytope against its location.
fn verify_file(path: &Path, r: usize) -> Result<String, String> {
    let (stored, p) = db::read_stored(path)?;
    let digest = p.canonical_form().digest_hex();
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
    if digest != stored.digest || digest != stem {
        return Err(format!("canonical digest {digest} does not match file name or stored digest"));
    }
    if !p.is_smooth() {
        return Err("not smooth".into());
    }
    let index = p.gorenstein_index().map(|g| g.index);
    if index != Some(r) || stored.index.is_some_and(|i| i != r) {
        return Err(format!("Gorenstein index {index:?}, expected {r}"));
    }
    let h = hstar(&p).map_err(|e| e.to_string())?;
    if !h.is_palindromic() || h.codegree() != r {
        return Err(format!("h* = {} is not palindromic of codegree {r}", tuple(&h.coeffs)));
    }
    if !is_normal(&p).map_err(|e| e.to_string())? {
        return Err("not normal".into());
    }
    Ok(digest)
}

pub fn db_verify(dir: &Path) -> CmdResult {
    let manifest = db::read_manifest(dir)?;
    let mut problems = Vec::new();
    let mut seen: BTreeMap<String, String> = BTreeMap::new();
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for r in db::index_dirs(dir)? {
        for f in db::polytope_files(dir, r)? {
            match verify_file(&f, r) {
                Ok(digest) => {
                    if let Some(other) = seen.insert(digest.clone(), f.display().to_string()) {
                        problems.push(format!("{}: same class as {other}", f.display()));
                    }
                    *counts.entry(r).or_insert(0) += 1;
                }
                Err(e) => problems.push(format!("{}: {e}", f.display())),
            }
        }
    }
    for (&r, list) in &manifest.digests {
        let unique: BTreeSet<&String> = list.iter().collect();
        if unique.len() != list.len() {
            problems.push(format!("manifest lists a digest twice at index {r}"));
        }
        for h in list {
            if !db::index_dir(dir, r).join(format!("{h}.json")).exists() {
                problems.push(format!("manifest digest {h} at index {r} has no file"));
            }
        }
    }
    let listed: BTreeMap<usize, usize> = manifest.counts.iter().filter(|(_, &n)| n > 0).map(|(&r, &n)| (r, n)).collect();
    if listed != counts {
        problems.push(format!("manifest counts {listed:?} differ from verified files {counts:?}"));
    }
    for p in &problems {
        eprintln!("{p}");
    }
    if !problems.is_empty() {
        return Err(Failure::Internal(format!("{} problem(s) in {}", problems.len(), dir.display())));
    }
    println!("{} polytopes verified", counts.values().sum::<usize>());
    let bad = check_counts(manifest.d, manifest.r_min, &manifest.counts);
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Fixture(bad.join("; ")))
    }
}

pub fn fano_table(d: usize, dir: &Path) -> CmdResult {
    let manifest = db::read_manifest(dir)?;
    if manifest.d != d || manifest.r_min != 1 {
        return Err(Failure::Input(format!(
            "{} holds a run with d = {}, minimal index {}; need d = {d}, minimal index 1",
            dir.display(),
            manifest.d,
            manifest.r_min
        )));
    }
    let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
    for f in db::polytope_files(dir, 1)? {
        let (_, p) = db::read_stored(&f).map_err(|e| Failure::Input(format!("{}: {e}", f.display())))?;
        let m = p.max_divisibility().to_i64().ok_or_else(|| Failure::Internal("divisibility overflow".into()))?;
        *hist.entry(m as u64).or_insert(0) += 1;
    }
    let known = fixtures::fano_row(d);
    let mut bad = Vec::new();
    println!("{:>5} {:>8}  fixture", "i_X", "count");
    let keys: BTreeSet<u64> = hist.keys().chain(known.keys()).copied().collect();
    for i in keys.into_iter().rev() {
        let got = hist.get(&i).copied().unwrap_or(0);
        let status = match known.get(&i) {
            Some(&want) if want == got => "OK".to_string(),
            Some(&want) => {
                let cell = fixtures::FanoCell { d, index: i, count: want };
                bad.push(format!("{}: expected {want}, got {got}", cell.anchor()));
                format!("FAIL (expected {want})")
            }
            None => "-".to_string(),
        };
        println!("{i:>5} {got:>8}  {status}");
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Fixture(bad.join("; ")))
    }
}
