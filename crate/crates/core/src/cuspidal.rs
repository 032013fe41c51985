//! Unipotent cuspidal data `(C, mu)` for every Cartan type: an elliptic
//! conjugacy class `C` of the Weyl group and an eigenvalue
//! `mu = (root of unity) * q^e`, together with their `q = 1` specialization
//! and consistency diagnostics computed in the Weyl group.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::weyl::{BigPermutation, ConjugacyClass, CoxeterSpec, ElementTable, Family, WeylElement, WeylGroup};

/// Default bound on group or class sizes enumerated by the diagnostics.
pub const DIAGNOSTIC_BOUND: u64 = 1_000_000;

/// The root of unity `exp(2 pi i num/den)`, with `0 <= num < den` reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Turn {
    num: u32,
    den: u32,
}

impl Turn {
    pub fn new(num: u32, den: u32) -> Self {
        assert!(den > 0, "denominator must be positive");
        let num = num % den;
        let g = num_integer::gcd(num, den);
        Turn { num: num / g, den: den / g }
    }

    pub fn one() -> Self {
        Turn { num: 0, den: 1 }
    }

    pub fn minus_one() -> Self {
        Turn { num: 1, den: 2 }
    }

    /// `(-1)^k`.
    pub fn sign(k: u64) -> Self {
        if k % 2 == 0 {
            Self::one()
        } else {
            Self::minus_one()
        }
    }

    pub fn numerator(&self) -> u32 {
        self.num
    }

    pub fn denominator(&self) -> u32 {
        self.den
    }

    /// Multiplicative order of the root of unity.
    pub fn order(&self) -> u32 {
        self.den
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.den, self.num as i64)
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (0, _) => f.write_str("1"),
            (1, 2) => f.write_str("-1"),
            (a, b) => write!(f, "e({a}/{b})"),
        }
    }
}

impl Serialize for Turn {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", self.num, self.den))
    }
}

/// `mu = root * q^exponent` with `exponent` an integer or half-integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EigenvalueSpec {
    pub root: Turn,
    /// Twice the `q`-exponent.
    pub twice_exponent: u32,
}

impl EigenvalueSpec {
    pub fn new(root: Turn, exponent: u32) -> Self {
        EigenvalueSpec { root, twice_exponent: 2 * exponent }
    }

    pub fn half_integral(root: Turn, twice_exponent: u32) -> Self {
        EigenvalueSpec { root, twice_exponent }
    }

    pub fn exponent(&self) -> BigRational {
        BigRational::new(BigInt::from(self.twice_exponent), BigInt::from(2))
    }

    pub fn has_half_integral_exponent(&self) -> bool {
        self.twice_exponent % 2 == 1
    }
}

impl fmt::Display for EigenvalueSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.exponent();
        let power = if e.is_one() { "q".to_string() } else { format!("q^{e}") };
        match (self.root.num, self.root.den) {
            (0, _) => f.write_str(&power),
            (1, 2) => write!(f, "-{power}"),
            _ => write!(f, "{} {power}", self.root),
        }
    }
}

impl Serialize for EigenvalueSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("EigenvalueSpec", 3)?;
        st.serialize_field("root", &self.root)?;
        st.serialize_field("q_exponent", &crate::json::rational(&self.exponent()))?;
        st.serialize_field("display", &self.to_string())?;
        st.end()
    }
}

/// How a conjugacy class of the Weyl group is specified.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassSpec {
    /// Cycle lengths of the permutation of `{1, ..., 2n}`, increasing.
    CycleType(Vec<u32>),
    /// `(d, m)` meaning `Phi_d^m` in the characteristic polynomial on the
    /// reflection representation, increasing in `d`.
    CharPoly(Vec<(u64, u32)>),
}

impl ClassSpec {
    fn charpoly(factors: &[(u64, u32)]) -> Self {
        let mut f = factors.to_vec();
        f.sort_unstable();
        ClassSpec::CharPoly(f)
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSpec::CycleType(c) => {
                let parts: Vec<String> = c.iter().map(u32::to_string).collect();
                write!(f, "cycles {{{}}}", parts.join(","))
            }
            ClassSpec::CharPoly(factors) => {
                let parts: Vec<String> = factors
                    .iter()
                    .rev()
                    .map(|&(d, m)| if m == 1 { format!("Phi_{d}") } else { format!("Phi_{d}^{m}") })
                    .collect();
                f.write_str(&parts.join(" "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CuspidalDatum {
    #[serde(serialize_with = "serialize_spec")]
    pub spec: CoxeterSpec,
    pub class: ClassSpec,
    pub eigenvalue: EigenvalueSpec,
}

fn serialize_spec<S: Serializer>(spec: &CoxeterSpec, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&spec.to_string())
}

impl fmt::Display for CuspidalDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ({}, {})", self.spec, self.class, self.eigenvalue)
    }
}

/// The `k` with `n = k^2 + k` (types B, C) or `n = k^2`, `k` even (type D),
/// if there is one. Type A never has one.
pub fn has_cuspidal(spec: CoxeterSpec) -> Result<Option<u64>> {
    let n = spec.rank as u64;
    let k = match spec.family {
        Family::A => None,
        Family::B | Family::C => (1..=n).take_while(|k| k * k + k <= n).find(|k| k * k + k == n),
        Family::D => (2..=n).take_while(|k| k * k <= n).find(|k| k * k == n && k % 2 == 0),
        _ => return Err(Error::UnsupportedFamily(spec.to_string())),
    };
    Ok(k)
}

fn datum(spec: CoxeterSpec, class: ClassSpec, root: Turn, exponent: u32) -> CuspidalDatum {
    CuspidalDatum { spec, class, eigenvalue: EigenvalueSpec::new(root, exponent) }
}

/// The unipotent cuspidal data of the given type.
pub fn cuspidal_data(spec: CoxeterSpec) -> Result<Vec<CuspidalDatum>> {
    let spec = CoxeterSpec::new(spec.family, spec.rank)?;
    let cp = ClassSpec::charpoly;
    let t = Turn::new;
    let data = match (spec.family, spec.rank) {
        (Family::A, _) => Vec::new(),
        (Family::B | Family::C, n) => match has_cuspidal(spec)? {
            // cycles of lengths 4, 8, ..., 4k; mu = (-1)^(n/2) q^(k(k+1)(2k+1)/3)
            Some(k) => {
                let cycles = (1..=k as u32).map(|i| 4 * i).collect();
                let e = k * (k + 1) * (2 * k + 1) / 3;
                vec![datum(spec, ClassSpec::CycleType(cycles), Turn::sign(n as u64 / 2), e as u32)]
            }
            None => Vec::new(),
        },
        (Family::D, n) => match has_cuspidal(spec)? {
            // cycles of lengths 2, 6, ..., 4k-2; mu = (-1)^(n/4) q^(2k(k^2-1)/3)
            Some(k) => {
                let cycles = (1..=k as u32).map(|i| 4 * i - 2).collect();
                let e = 2 * k * (k * k - 1) / 3;
                vec![datum(spec, ClassSpec::CycleType(cycles), Turn::sign(n as u64 / 4), e as u32)]
            }
            None => Vec::new(),
        },
        (Family::E, 6) => {
            let c = cp(&[(12, 1), (3, 1)]);
            vec![datum(spec, c.clone(), t(1, 3), 3), datum(spec, c, t(2, 3), 3)]
        }
        (Family::E, 7) => {
            let c = cp(&[(18, 1), (2, 1)]);
            vec![
                CuspidalDatum { spec, class: c.clone(), eigenvalue: EigenvalueSpec::half_integral(t(1, 4), 7) },
                CuspidalDatum { spec, class: c, eigenvalue: EigenvalueSpec::half_integral(t(3, 4), 7) },
            ]
        }
        (Family::E, _) => {
            let c30 = cp(&[(30, 1)]);
            let c24 = cp(&[(24, 1)]);
            let c18 = cp(&[(18, 1), (6, 1)]);
            vec![
                datum(spec, c30.clone(), t(5, 6), 4),
                datum(spec, c30.clone(), t(1, 6), 4),
                datum(spec, c30.clone(), t(1, 5), 4),
                datum(spec, c30.clone(), t(2, 5), 4),
                datum(spec, c30.clone(), t(3, 5), 4),
                datum(spec, c30, t(4, 5), 4),
                datum(spec, c24.clone(), t(1, 4), 5),
                datum(spec, c24, t(3, 4), 5),
                datum(spec, c18.clone(), t(1, 3), 7),
                datum(spec, c18, t(2, 3), 7),
                datum(spec, cp(&[(12, 2)]), Turn::one(), 10),
                datum(spec, cp(&[(12, 1), (6, 2)]), Turn::minus_one(), 11),
                datum(spec, cp(&[(6, 4)]), Turn::one(), 20),
            ]
        }
        (Family::F, _) => {
            let c12 = cp(&[(12, 1)]);
            vec![
                datum(spec, c12.clone(), t(1, 4), 2),
                datum(spec, c12.clone(), t(3, 4), 2),
                datum(spec, c12.clone(), t(1, 3), 2),
                datum(spec, c12, t(2, 3), 2),
                datum(spec, cp(&[(8, 1)]), Turn::minus_one(), 3),
                datum(spec, cp(&[(6, 2)]), Turn::one(), 4),
                datum(spec, cp(&[(4, 2)]), Turn::one(), 6),
            ]
        }
        (Family::G, _) => {
            let c6 = cp(&[(6, 1)]);
            vec![
                datum(spec, c6.clone(), t(1, 3), 1),
                datum(spec, c6.clone(), t(2, 3), 1),
                datum(spec, c6, Turn::minus_one(), 1),
                datum(spec, cp(&[(3, 1)]), Turn::one(), 2),
            ]
        }
    };
    Ok(data)
}

/// A datum with the `q`-power dropped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecializedDatum {
    #[serde(serialize_with = "serialize_spec")]
    pub spec: CoxeterSpec,
    pub class: ClassSpec,
    pub root: Turn,
    /// The original exponent was a half-integer, so the correspondence with
    /// the specialized datum depends on a chosen square root of `q`.
    pub depends_on_sqrt_q: bool,
}

/// `(C, mu)` to `(C, mu at q = 1)`, keeping the root of unity.
pub fn specialize_q1(data: &[CuspidalDatum]) -> Vec<SpecializedDatum> {
    data.iter()
        .map(|d| SpecializedDatum {
            spec: d.spec,
            class: d.class.clone(),
            root: d.eigenvalue.root,
            depends_on_sqrt_q: d.eigenvalue.has_half_integral_exponent(),
        })
        .collect()
}

/// A Weyl group conjugacy class matching a [`ClassSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchedClass {
    pub representative: String,
    pub size: usize,
    pub min_length: usize,
    pub char_poly: String,
    pub cycle_type: Option<Vec<u32>>,
}

/// All classes matching a class specification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassMatch {
    pub class: ClassSpec,
    pub classes: Vec<MatchedClass>,
}

impl ClassMatch {
    pub fn multiplicity(&self) -> usize {
        self.classes.len()
    }
}

fn class_matches(spec: &ClassSpec, rep: &WeylElement) -> bool {
    match spec {
        ClassSpec::CycleType(c) => rep.to_big_permutation().is_ok_and(|p| p.cycle_type() == *c),
        ClassSpec::CharPoly(f) => rep.char_poly().cyclotomic_factors.is_some_and(|g| g == *f),
    }
}

/// Enumerates the Weyl group (up to `bound` elements) and returns every
/// conjugacy class matching `class`.
pub fn match_classes(spec: CoxeterSpec, class: &ClassSpec, bound: u64) -> Result<ClassMatch> {
    let group = WeylGroup::new(spec)?;
    if matches!(class, ClassSpec::CycleType(_)) && !spec.family.is_classical() {
        return Err(Error::UnsupportedFamily(spec.to_string()));
    }
    let table = ElementTable::new(&group, bound)?;
    let classes = table
        .conjugacy_classes()
        .into_iter()
        .filter(|c| class_matches(class, &c.representative))
        .map(|c| MatchedClass {
            representative: c.representative.word_string(),
            size: c.size(),
            min_length: c.min_length(),
            char_poly: c.char_poly().factor_string(),
            cycle_type: c.cycle_type(),
        })
        .collect();
    Ok(ClassMatch { class: class.clone(), classes })
}

/// Outcome of one diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "SKIP",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
    /// Whether a failure indicates a defect. The length comparison for
    /// classical types is informational only.
    pub required: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.required { "" } else { " (informational)" };
        write!(f, "{} {}{tag}: {}", self.status, self.name, self.detail)
    }
}

/// Diagnostics for the data of one type.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    #[serde(serialize_with = "serialize_spec")]
    pub spec: CoxeterSpec,
    pub data: Vec<CuspidalDatum>,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    /// No required check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail || !c.required)
    }

    pub fn check(&self, name_prefix: &str) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.name.starts_with(name_prefix)).collect()
    }
}

fn check(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
    let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
    Check { name: name.into(), status, detail: detail.into(), required: true }
}

fn skipped(name: impl Into<String>, detail: impl Into<String>, required: bool) -> Check {
    Check { name: name.into(), status: CheckStatus::Skipped, detail: detail.into(), required }
}

/// Expected number of data for a type.
pub fn expected_cardinality(spec: CoxeterSpec) -> Result<usize> {
    Ok(match spec.family {
        Family::A | Family::B | Family::C | Family::D => has_cuspidal(spec)?.map_or(0, |_| 1),
        Family::E => match spec.rank {
            6 | 7 => 2,
            _ => 13,
        },
        Family::F => 7,
        Family::G => 4,
    })
}

/// The signed permutation of `{1, ..., 2n}` whose cycles are the given
/// lengths, each cycle stable under `i -> 2n + 1 - i`.
fn stable_cycles_permutation(n: usize, cycles: &[u32]) -> Option<BigPermutation> {
    let m = 2 * n as u32;
    let iota = |x: u32| m + 1 - x;
    let mut images: Vec<u32> = (1..=m).collect();
    let mut next = 1u32;
    for &len in cycles {
        if len % 2 != 0 {
            return None;
        }
        let half = len / 2;
        let points: Vec<u32> = (next..next + half).collect();
        next += half;
        for (t, &a) in points.iter().enumerate() {
            let image = if t + 1 < points.len() { points[t + 1] } else { iota(points[0]) };
            images[a as usize - 1] = image;
            images[iota(a) as usize - 1] = iota(image);
        }
    }
    (next == n as u32 + 1).then(|| BigPermutation::new(images).ok()).flatten()
}

/// Finds a representative of a class specification without enumerating the
/// group: the stable-cycle permutation for classical types, and the Coxeter
/// element or its powers for exceptional types.
fn direct_representative(group: &std::sync::Arc<WeylGroup>, class: &ClassSpec) -> Option<WeylElement> {
    match class {
        ClassSpec::CycleType(c) => {
            let p = stable_cycles_permutation(group.rank(), c)?;
            group.from_big_permutation(&p).ok()
        }
        ClassSpec::CharPoly(_) => {
            let c = group.coxeter_element();
            let mut power = c.clone();
            for _ in 0..64 {
                if class_matches(class, &power) {
                    return Some(power);
                }
                power = power.multiply(&c).ok()?;
                if power.is_identity() {
                    break;
                }
            }
            None
        }
    }
}

/// Minimal length in the class of `class`, if it can be determined within
/// `bound`, with a note on how.
fn minimal_length(
    group: &std::sync::Arc<WeylGroup>,
    classes: Option<&[ConjugacyClass]>,
    class: &ClassSpec,
    bound: u64,
) -> std::result::Result<(usize, String), String> {
    if let Some(classes) = classes {
        let found: Vec<_> = classes.iter().filter(|c| class_matches(class, &c.representative)).collect();
        return match found.as_slice() {
            [one] => Ok((one.min_length(), format!("class of size {} by enumeration", one.size()))),
            [] => Err("no matching class".into()),
            many => Err(format!("{} matching classes", many.len())),
        };
    }
    let rep = direct_representative(group, class).ok_or_else(|| "no representative found".to_string())?;
    // an elliptic element involves every generator, so rank bounds the length below
    if rep.length() == group.rank() && rep.is_elliptic() {
        return Ok((rep.length(), "element of length equal to the rank".into()));
    }
    match rep.conjugacy_class(bound) {
        Ok(c) => Ok((c.min_length(), format!("class of size {} by conjugation closure", c.size()))),
        Err(e) => Err(e.to_string()),
    }
}

/// Runs the structural and length diagnostics for one type. Failed checks
/// are reported in the result, never raised.
pub fn validate(spec: CoxeterSpec, bound: u64) -> Result<ValidationReport> {
    let data = cuspidal_data(spec)?;
    let mut checks = Vec::new();
    let expected = expected_cardinality(spec)?;
    checks.push(check("cardinality", data.len() == expected, format!("{} data, expected {expected}", data.len())));

    let n = spec.rank;
    for (i, d) in data.iter().enumerate() {
        let tag = format!("datum {i} {}", d);
        match &d.class {
            ClassSpec::CycleType(c) => {
                let total: u32 = c.iter().sum();
                checks.push(check(
                    format!("cycle lengths sum [{tag}]"),
                    total as usize == 2 * n,
                    format!("sum {total}, 2n = {}", 2 * n),
                ));
                checks.push(check(
                    format!("no fixed points [{tag}]"),
                    c.iter().all(|&l| l > 1),
                    format!("cycle lengths {c:?}"),
                ));
                let k = has_cuspidal(spec)?.unwrap_or(0);
                let (num, den, sign_num, sign_den) = match spec.family {
                    Family::D => (2 * k * (k * k - 1), 3, n as u64, 4),
                    _ => (k * (k + 1) * (2 * k + 1), 3, n as u64, 2),
                };
                checks.push(check(
                    format!("integral exponents [{tag}]"),
                    num % den == 0 && sign_num % sign_den == 0 && num / den == d.eigenvalue.twice_exponent as u64 / 2,
                    format!("q-exponent {num}/{den}, sign exponent {sign_num}/{sign_den}"),
                ));
            }
            ClassSpec::CharPoly(f) => {
                let degree: u64 = f.iter().map(|&(dd, m)| crate::poly::euler_phi(dd) * m as u64).sum();
                checks.push(check(
                    format!("char poly degree [{tag}]"),
                    degree as usize == n,
                    format!("degree {degree}, rank {n}"),
                ));
                checks.push(check(
                    format!("no Phi_1 factor [{tag}]"),
                    f.iter().all(|&(dd, _)| dd != 1),
                    d.class.to_string(),
                ));
            }
        }
        let root = d.eigenvalue.root;
        checks.push(check(
            format!("root of unity [{tag}]"),
            root.num < root.den && num_integer::gcd(root.num, root.den) == 1 && (1..=6).contains(&root.den),
            format!("{}/{}", root.num, root.den),
        ));
    }

    let specialized = specialize_q1(&data);
    checks.push(check(
        "specialization preserves cardinality",
        specialized.len() == data.len(),
        format!("{} specialized data", specialized.len()),
    ));

    length_checks(spec, &data, bound, &mut checks)?;
    Ok(ValidationReport { spec, data, checks })
}

fn length_checks(spec: CoxeterSpec, data: &[CuspidalDatum], bound: u64, checks: &mut Vec<Check>) -> Result<()> {
    if data.is_empty() {
        return Ok(());
    }
    let group = WeylGroup::new(spec)?;
    let classes = ElementTable::new(&group, bound).ok().map(|t| t.conjugacy_classes());
    let required = !spec.family.is_classical();
    let mut seen: Vec<&ClassSpec> = Vec::new();
    for d in data {
        if seen.contains(&&d.class) {
            continue;
        }
        seen.push(&d.class);
        if let Some(classes) = &classes {
            let count = classes
                .iter().filter(|c| class_matches(&d.class, &c.representative)).count();
            checks.push(check(
                format!("unique class [{}]", d.class),
                count == 1,
                format!("{count} matching classes"),
            ));
        } else {
            checks.push(skipped(format!("unique class [{}]", d.class), format!("W({spec}) exceeds {bound} elements"), true));
        }
        let name = format!("exponent = min length / 2 [{}]", d.class);
        let exponents: Vec<u32> =
            data.iter().filter(|e| e.class == d.class).map(|e| e.eigenvalue.twice_exponent).collect();
        match minimal_length(&group, classes.as_deref(), &d.class, bound) {
            Ok((len, how)) => {
                let ok = exponents.iter().all(|&t| t as usize == len);
                let e = BigRational::new(BigInt::from(exponents[0]), BigInt::from(2));
                let mut c = check(name, ok, format!("min length {len} ({how}), q-exponent {e}"));
                c.required = required;
                checks.push(c);
            }
            Err(why) => checks.push(skipped(name, why, required)),
        }
    }
    Ok(())
}
