use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Value};

use super::{Command, Common, Failure, GroupArgs, Output, TypeArgs};
use crate::cuspidal::{self, DIAGNOSTIC_BOUND};
use crate::field::GaloisField;
use crate::flags::{self, BrauerMode, Flag, GroupType, SymplecticForm, FLAG_BOUND};
use crate::group::{self, FiniteGroup, MData};
use crate::hecke::{CellKind, HeckeAlgebra};
use crate::weyl::{CoxeterSpec, ElementTable, WeylGroup, DEFAULT_ENUMERATION_BOUND};

type Handled = std::result::Result<Output, Failure>;

/// Group samples and kernel vectors used by `brauer-dim --stability`.
const STABILITY_GROUP_SAMPLES: usize = 20;
const STABILITY_VECTOR_SAMPLES: usize = 5;

pub(super) fn dispatch(command: &Command, common: &Common) -> Handled {
    let elements = common.max_size.unwrap_or(DEFAULT_ENUMERATION_BOUND);
    let flag_bound = common.max_size.unwrap_or(FLAG_BOUND);
    match command {
        Command::Kl { ty, all, y, w } => kl(ty, *all, y.as_deref().zip(w.as_deref()), elements),
        Command::Cells { ty, kind } => cells(ty, kind, elements),
        Command::Palindrome { ty, w } => palindrome(ty, w.as_deref(), elements),
        Command::Fourier { group, matrix, check } => fourier(group, *matrix, *check, common),
        Command::Triples { group, classes, orders, verify } => {
            triples(group, classes.as_deref(), orders.as_deref(), *verify, common)
        }
        Command::Dl { group_type, n, q, m, coxeter_check } => dl(group_type, *n, *q, *m, *coxeter_check, flag_bound),
        Command::Drinfeld { q, m } => drinfeld(*q, *m, common.seed),
        Command::BrauerDim { n, p, mode, stability } => brauer_dim(*n, *p, mode, *stability, common.seed),
        Command::BrauerChar { q, matrix } => brauer_char(*q, matrix),
        Command::Cuspidal { ty, q1, check } => cuspidal(ty, *q1, *check, common.max_size.unwrap_or(DIAGNOSTIC_BOUND)),
        Command::Charpoly { ty, w } => charpoly(ty, w.as_deref(), elements),
        Command::Relpos { q, flag1, flag2, symplectic } => relpos(*q, flag1, flag2, *symplectic),
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_spec(ty: &TypeArgs) -> Result<CoxeterSpec, Failure> {
    let text = match ty.rank {
        Some(rank) => format!("{}{rank}", ty.cartan.trim()),
        None => ty.cartan.clone(),
    };
    Ok(text.parse()?)
}

fn type_params(spec: CoxeterSpec) -> Value {
    json!({ "type": spec.to_string(), "family": spec.family.to_string(), "rank": spec.rank })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn algebra(spec: CoxeterSpec, bound: u64) -> Result<Arc<HeckeAlgebra>, Failure> {
    let group = WeylGroup::new(spec)?;
    Ok(HeckeAlgebra::new(&group, bound)?)
}

fn kl(ty: &TypeArgs, all: bool, pair: Option<(&str, &str)>, bound: u64) -> Handled {
    let spec = parse_spec(ty)?;
    let h = algebra(spec, bound)?;
    let mut params = type_params(spec);
    if let (Some((y, w)), false) = (pair, all) {
        let group = h.group();
        let y = group.parse_element(y)?;
        let w = group.parse_element(w)?;
        let p = h.kl_polynomial(&y, &w)?;
        let mu = h.mu(&y, &w)?;
        params["y"] = json!(y.word_string());
        params["w"] = json!(w.word_string());
        let result = json!({
            "y": y.word_string(),
            "w": w.word_string(),
            "bruhat_leq": y.bruhat_leq(&w)?,
            "coeffs": to_value(&p),
            "polynomial": p.to_string(),
            "mu": crate::json::big_int(&mu),
        });
        let text = format!("P_{{{}, {}}} = {p}\nmu = {mu}\n", y.word_string(), w.word_string());
        let csv = format!("y,w,polynomial,mu\n{},{},{},{mu}\n", csv_field(&y.word_string()), csv_field(&w.word_string()), csv_field(&p.to_string()));
        return Ok(Output { params, result, text, csv: Some(csv) });
    }
    params["all"] = json!(true);
    let table = h.kl_table();
    let t = h.table();
    let mut text = format!("{spec}: {} elements, {} pairs y <= w\n", t.len(), table.len());
    let mut csv = String::from("y,w,polynomial\n");
    let mut nontrivial = 0usize;
    for ((y, w), p) in table.iter() {
        let (ys, ws) = (t.word_string(y), t.word_string(w));
        if p.degree() != Some(0) {
            nontrivial += 1;
        }
        let _ = writeln!(text, "P({ys}, {ws}) = {p}");
        let _ = writeln!(csv, "{},{},{}", csv_field(&ys), csv_field(&ws), csv_field(&p.to_string()));
    }
    let result = json!({
        "elements": t.len(),
        "pairs": table.len(),
        "nontrivial": nontrivial,
        "entries": to_value(&table),
    });
    Ok(Output { params, result, text, csv: Some(csv) })
}

fn cells(ty: &TypeArgs, kind: &str, bound: u64) -> Handled {
    let spec = parse_spec(ty)?;
    let kind: CellKind = kind.parse().map_err(|e: crate::Error| usage(e.to_string()))?;
    let h = algebra(spec, bound)?;
    let partition = h.cells(kind);
    let mut params = type_params(spec);
    params["kind"] = json!(kind.to_string());
    let mut text = format!("{spec}: {} {kind} cells, sizes {:?}\n", partition.len(), partition.block_sizes());
    let mut csv = String::from("cell,element\n");
    for (i, block) in partition.blocks.iter().enumerate() {
        let words: Vec<String> = block.iter().map(|w| w.word_string()).collect();
        let _ = writeln!(text, "{i}: {}", words.join(" | "));
        for word in &words {
            let _ = writeln!(csv, "{i},{}", csv_field(word));
        }
    }
    let result = json!({ "count": partition.len(), "sizes": partition.block_sizes(), "cells": to_value(&partition) });
    Ok(Output { params, result, text, csv: Some(csv) })
}

fn palindrome(ty: &TypeArgs, w: Option<&str>, bound: u64) -> Handled {
    let spec = parse_spec(ty)?;
    let h = algebra(spec, bound)?;
    let mut params = type_params(spec);
    let reports = match w {
        Some(w) => {
            let w = h.group().parse_element(w)?;
            params["w"] = json!(w.word_string());
            vec![h.palindrome_check(&w)?]
        }
        None => (0..h.table().len()).map(|x| h.palindrome_check_at(x)).collect(),
    };
    let all = reports.iter().all(|r| r.palindromic);
    let mut text = String::new();
    let mut csv = String::from("w,length,palindromic,polynomial\n");
    for r in &reports {
        let verdict = if r.palindromic { "palindromic" } else { "NOT palindromic" };
        let _ = writeln!(text, "{} (length {}): {} {verdict}", r.w, r.length, r.polynomial);
        let _ = writeln!(csv, "{},{},{},{}", csv_field(&r.w), r.length, r.palindromic, csv_field(&r.polynomial.to_string()));
    }
    let _ = writeln!(text, "all palindromic: {all}");
    let result = json!({ "all_palindromic": all, "checked": reports.len(), "reports": to_value(&reports) });
    Ok(Output { params, result, text, csv: Some(csv) })
}

fn load_group(args: &GroupArgs, common: &Common) -> Result<(Arc<FiniteGroup>, Value), Failure> {
    let bound = common.max_size.unwrap_or(DEFAULT_ENUMERATION_BOUND);
    match (&args.group, &args.perm_file) {
        (Some(name), _) => {
            let gens = group::builtin_generators(name)?;
            Ok((FiniteGroup::from_permutations(&gens, bound)?, json!({ "group": name })))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let gens = group::parse_generator_file(&text)?;
            Ok((FiniteGroup::from_permutations(&gens, bound)?, json!({ "perm_file": path.display().to_string() })))
        }
        (None, None) => Err(usage("one of --group or --perm-file is required")),
    }
}

fn fourier(args: &GroupArgs, with_matrix: bool, check: bool, common: &Common) -> Handled {
    let (g, mut params) = load_group(args, common)?;
    params["matrix"] = json!(with_matrix);
    params["check"] = json!(check);
    let data = MData::new(&g)?;
    let pairs = data.pairs();
    let mut text = format!("|G| = {}, |M(G)| = {}\n", g.order(), pairs.len());
    let mut result = json!({ "group_order": g.order(), "size": pairs.len(), "labels": to_value(&pairs) });
    for (i, p) in pairs.iter().enumerate() {
        let _ = writeln!(text, "{i}: class {} ({}), character {} of degree {}", p.class, p.representative, p.character, p.degree);
    }
    let mut csv = String::from("index,class,representative,character,degree\n");
    for (i, p) in pairs.iter().enumerate() {
        let _ = writeln!(csv, "{i},{},{},{},{}", p.class, csv_field(&p.representative), p.character, p.degree);
    }
    if with_matrix || check {
        let m = data.pairing_matrix();
        if with_matrix {
            result["matrix"] = to_value(&m.entries);
            text.push_str("matrix:\n");
            csv = String::from("row,col,value\n");
            for (i, row) in m.entries.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                let _ = writeln!(text, "[{}]", cells.join(", "));
                for (j, c) in cells.iter().enumerate() {
                    let _ = writeln!(csv, "{i},{j},{}", csv_field(c));
                }
            }
        }
        if check {
            let verdict = |b: bool| if b { "pass" } else { "fail" };
            let (u, inv, herm) = (m.is_unitary(), m.is_involutive(), m.is_hermitian());
            result["checks"] = json!({ "unitary": verdict(u), "involutive": verdict(inv), "hermitian": verdict(herm) });
            let _ = writeln!(text, "unitary: {}\ninvolutive: {}\nhermitian: {}", verdict(u), verdict(inv), verdict(herm));
        }
    }
    Ok(Output { params, result, text, csv: Some(csv) })
}

fn parse_triple(text: &str, what: &str) -> Result<[u64; 3], Failure> {
    let parts: Vec<u64> = text
        .split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| usage(format!("--{what} expects three comma separated integers, got {text:?}")))?;
    <[u64; 3]>::try_from(parts).map_err(|_| usage(format!("--{what} expects exactly three values, got {text:?}")))
}

fn triples(args: &GroupArgs, classes: Option<&str>, orders: Option<&str>, verify: bool, common: &Common) -> Handled {
    let (g, mut params) = load_group(args, common)?;
    let n_classes = g.classes().len();
    let order_of = |c: usize| g.element_order(g.classes()[c].representative);
    let triples: Vec<[usize; 3]> = match (classes, orders) {
        (Some(text), _) => {
            let t = parse_triple(text, "classes")?.map(|c| c as usize);
            params["classes"] = json!(t);
            vec![t]
        }
        (None, Some(text)) => {
            let o = parse_triple(text, "orders")?;
            params["orders"] = json!(o);
            let with = |k: u64| (0..n_classes).filter(|&c| order_of(c) == k).collect::<Vec<_>>();
            let (a, b, c) = (with(o[0]), with(o[1]), with(o[2]));
            let mut out = Vec::new();
            for &i in &a {
                for &j in &b {
                    out.extend(c.iter().map(|&k| [i, j, k]));
                }
            }
            out
        }
        (None, None) => {
            (0..n_classes).flat_map(|i| (0..n_classes).flat_map(move |j| (0..n_classes).map(move |k| [i, j, k]))).collect()
        }
    };
    params["verify"] = json!(verify);
    let mut rows = Vec::new();
    let mut text = format!("|G| = {}, {n_classes} classes\n", g.order());
    let mut csv = String::from(if verify { "c1,c2,c3,orders,count,brute_force\n" } else { "c1,c2,c3,orders,count\n" });
    let mut all_match = true;
    for t in triples {
        let count = group::burnside_triple_count(&g, t)?;
        let orders = t.map(order_of);
        let mut row = json!({ "classes": t, "orders": orders, "count": crate::json::big_int(&count) });
        let _ = write!(text, "classes {t:?} (orders {orders:?}): {count}");
        let _ = write!(csv, "{},{},{},\"{orders:?}\",{count}", t[0], t[1], t[2]);
        if verify {
            let brute = group::brute_force_triple_count(&g, t)?;
            let agrees = count == brute.into();
            all_match &= agrees;
            row["brute_force"] = json!(brute);
            row["agrees"] = json!(agrees);
            let _ = write!(text, " brute force {brute} {}", if agrees { "agrees" } else { "DISAGREES" });
            let _ = write!(csv, ",{brute}");
        }
        text.push('\n');
        csv.push('\n');
        rows.push(row);
    }
    let mut result = json!({ "group_order": g.order(), "classes": n_classes, "triples": rows });
    if verify {
        result["all_agree"] = json!(all_match);
    }
    Ok(Output { params, result, text, csv: Some(csv) })
}

fn dl(group_type: &str, n: usize, q: u64, m: u32, coxeter_check: bool, bound: u64) -> Handled {
    let ty: GroupType = group_type.parse().map_err(|e: crate::Error| usage(e.to_string()))?;
    let params = json!({ "group": ty.to_string(), "n": n, "q": q, "m": m, "coxeter_check": coxeter_check });
    if coxeter_check && ty != GroupType::Gl {
        return Err(usage("--coxeter-check is only available for GL"));
    }
    let report = flags::dl_piece_counts_bounded(ty, n, q, m, bound)?;
    let rows: Vec<Value> = report.counts.iter().map(|(w, c)| json!({ "w": w.images(), "count": c })).collect();
    let sum: u64 = report.counts.iter().map(|(_, c)| c).sum();
    let mut text = format!("{ty}_{n} over GF({q}^{m}): {} flags\n", report.total_flags);
    for (w, c) in &report.counts {
        let _ = writeln!(text, "{w}: {c}");
    }
    let _ = writeln!(text, "sum of pieces: {sum}");
    let mut result = json!({ "total_flags": report.total_flags, "sum": sum, "partition": sum == report.total_flags, "counts": rows });
    if coxeter_check {
        let check = flags::coxeter_condition_check_bounded(n, q, m, bound)?;
        let _ = writeln!(
            text,
            "coxeter piece {}: chain condition {}, relative position {}, {}",
            flags::coxeter_element(n),
            check.chain_condition,
            check.coxeter_position,
            if check.equal { "equal" } else { "DIFFERENT" }
        );
        result["coxeter_check"] = to_value(&check);
    }
    Ok(Output { params, result, text, csv: Some(report.to_csv()) })
}

fn drinfeld(q: u64, m: u32, seed: u64) -> Handled {
    let report = flags::drinfeld_count(q, m, seed)?;
    let params = json!({ "q": q, "m": m, "seed": seed });
    let mut text = format!(
        "points over GF({q}^{m}): {}\nSL2(F_{q}) sample of {} preserves the curve: {}\n",
        report.count,
        report.sl2_sample.len(),
        report.sl2_preserves
    );
    match (report.torus_orbits_free, report.torus_orbits) {
        (Some(free), Some(orbits)) => {
            let _ = writeln!(text, "mu_{} acts freely: {free} ({orbits} orbits)", q + 1);
        }
        _ => {
            let _ = writeln!(text, "mu_{} is not contained in GF({q}^{m})", q + 1);
        }
    }
    Ok(Output { params, result: to_value(&report), text, csv: None })
}

fn brauer_dim(n: usize, p: u64, mode: &str, stability: bool, seed: u64) -> Handled {
    let mode: BrauerMode = mode.parse().map_err(|e: crate::Error| usage(e.to_string()))?;
    let params = json!({ "n": n, "p": p, "mode": mode.to_string(), "stability": stability, "seed": seed });
    let space = flags::brauer_space_dim(n, p, mode)?;
    let mut text = format!(
        "GL_{n}(F_{p}), {mode}: {} flags, {} constraints, rank {}, dimension {} (expected {}: {})\n",
        space.flags,
        space.constraints,
        space.rank,
        space.dimension,
        space.expected,
        if space.matches_expected() { "match" } else { "MISMATCH" }
    );
    let mut result = to_value(&space);
    result["matches_expected"] = json!(space.matches_expected());
    if stability {
        let stable = flags::kernel_stability_check(n, p, mode, STABILITY_GROUP_SAMPLES, STABILITY_VECTOR_SAMPLES, seed)?;
        result["stable"] = json!(stable);
        let _ = writeln!(
            text,
            "kernel stable under {STABILITY_GROUP_SAMPLES} random elements on {STABILITY_VECTOR_SAMPLES} vectors: {stable}"
        );
    }
    let csv = format!(
        "n,p,mode,flags,constraints,rank,dimension,expected\n{n},{p},{mode},{},{},{},{},{}\n",
        space.flags, space.constraints, space.rank, space.dimension, space.expected
    );
    Ok(Output { params, result, text, csv: Some(csv) })
}

fn parse_matrix(text: &str, what: &str) -> Result<Vec<Vec<u32>>, Failure> {
    serde_json::from_str(text).map_err(|e| usage(format!("--{what} must be a JSON array of rows of field codes: {e}")))
}

fn brauer_char(q: u64, matrix: &str) -> Handled {
    let field = GaloisField::with_order(q)?;
    let m = parse_matrix(matrix, "matrix")?;
    let params = json!({ "q": q, "matrix": m });
    let value = flags::brauer_character(&field, &m)?;
    let mut text = format!("Brauer character value: {}\nsplitting field: GF({})\n", value.value, value.splitting_field);
    for e in &value.eigenvalues {
        let _ = writeln!(text, "eigenvalue {} (log {}) with multiplicity {}", e.element, e.log, e.multiplicity);
    }
    Ok(Output { params, result: to_value(&value), text, csv: None })
}

fn cuspidal(ty: &TypeArgs, q1: bool, check: bool, bound: u64) -> Handled {
    let spec = parse_spec(ty)?;
    let data = cuspidal::cuspidal_data(spec)?;
    let mut params = type_params(spec);
    params["q1"] = json!(q1);
    params["check"] = json!(check);
    let mut text = format!("{spec}: {} unipotent cuspidal data\n", data.len());
    let mut csv = String::from("class,root,q_exponent,eigenvalue\n");
    for d in &data {
        let _ = writeln!(text, "{} | {}", d.class, d.eigenvalue);
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            csv_field(&d.class.to_string()),
            d.eigenvalue.root,
            d.eigenvalue.exponent(),
            csv_field(&d.eigenvalue.to_string())
        );
    }
    let mut result = json!({ "count": data.len(), "data": to_value(&data) });
    if q1 {
        let special = cuspidal::specialize_q1(&data);
        text.push_str("at q = 1:\n");
        csv = String::from("class,root,depends_on_sqrt_q\n");
        for s in &special {
            let note = if s.depends_on_sqrt_q { " (depends on the choice of sqrt q)" } else { "" };
            let _ = writeln!(text, "{} | {}{note}", s.class, s.root);
            let _ = writeln!(csv, "{},{},{}", csv_field(&s.class.to_string()), s.root, s.depends_on_sqrt_q);
        }
        result["q1"] = to_value(&special);
    }
    if check {
        let report = cuspidal::validate(spec, bound)?;
        text.push_str("checks:\n");
        for c in &report.checks {
            let _ = writeln!(text, "{c}");
        }
        let _ = writeln!(text, "required checks passed: {}", report.passed());
        result["checks"] = to_value(&report.checks);
        result["passed"] = json!(report.passed());
    }
    Ok(Output { params, result, text, csv: Some(csv) })
}

fn charpoly(ty: &TypeArgs, w: Option<&str>, bound: u64) -> Handled {
    let spec = parse_spec(ty)?;
    let group = WeylGroup::new(spec)?;
    let mut params = type_params(spec);
    if let Some(w) = w {
        let w = group.parse_element(w)?;
        params["w"] = json!(w.word_string());
        let cp = w.char_poly();
        let elliptic = w.is_elliptic();
        let text = format!("{}: {} ({})\n", w.word_string(), cp.factor_string(), if elliptic { "elliptic" } else { "not elliptic" });
        let csv = format!("w,length,char_poly,elliptic\n{},{},{},{elliptic}\n", csv_field(&w.word_string()), w.length(), csv_field(&cp.factor_string()));
        let result = json!({
            "w": w.word_string(),
            "length": w.length(),
            "coeffs": cp.coeffs,
            "char_poly": cp.factor_string(),
            "cyclotomic_factors": cp.cyclotomic_factors,
            "elliptic": elliptic,
        });
        return Ok(Output { params, result, text, csv: Some(csv) });
    }
    let table = ElementTable::new(&group, bound)?;
    let classes = table.conjugacy_classes();
    let mut rows = Vec::with_capacity(classes.len());
    let mut text = format!("{spec}: {} classes\n", classes.len());
    let mut csv = String::from("representative,size,min_length,char_poly,elliptic,elliptic_by_parabolics\n");
    for c in &classes {
        let rep = &c.representative;
        let cp = c.char_poly();
        let elliptic = rep.is_elliptic();
        let by_parabolics = rep.is_elliptic_by_parabolics(bound)?;
        let word = rep.word_string();
        let _ = writeln!(
            text,
            "{word}: size {}, min length {}, {}{}",
            c.size(),
            c.min_length(),
            cp.factor_string(),
            if elliptic { ", elliptic" } else { "" }
        );
        let _ = writeln!(csv, "{},{},{},{},{elliptic},{by_parabolics}", csv_field(&word), c.size(), c.min_length(), csv_field(&cp.factor_string()));
        rows.push(json!({
            "representative": word,
            "size": c.size(),
            "min_length": c.min_length(),
            "char_poly": cp.factor_string(),
            "coeffs": cp.coeffs,
            "elliptic": elliptic,
            "elliptic_by_parabolics": by_parabolics,
        }));
    }
    let result = json!({ "order": table.len(), "classes": rows });
    Ok(Output { params, result, text, csv: Some(csv) })
}

fn relpos(q: u64, flag1: &str, flag2: &str, symplectic: bool) -> Handled {
    let field = GaloisField::with_order(q)?;
    let b1 = parse_matrix(flag1, "flag1")?;
    let b2 = parse_matrix(flag2, "flag2")?;
    let params = json!({ "q": q, "flag1": b1, "flag2": b2, "symplectic": symplectic });
    let f1 = Flag::from_basis(&field, &b1)?;
    let f2 = Flag::from_basis(&field, &b2)?;
    let form = if symplectic { Some(SymplecticForm::new(f1.dimension())?) } else { None };
    let w = flags::relative_position(&field, &f1, &f2, form.as_ref())?;
    let dims = flags::intersection_dimensions(&field, &f1, &f2);
    let mut text = format!("relative position: {w} (length {})\n", w.inversions());
    if symplectic {
        let _ = writeln!(text, "commutes with the involution: {}", w.commutes_with_involution());
    }
    let result = json!({
        "w": w.images(),
        "length": w.inversions(),
        "intersection_dimensions": dims,
        "commutes_with_involution": w.commutes_with_involution(),
    });
    Ok(Output { params, result, text, csv: None })
}
