//! Symbolic equivalence classes of tuples in the discrete model.
//!
//! A [`TupleClass`] is a finite-support multiplicity function from prime labels to
//! [`ExtScalar`]s. Direct sum, scalar multiplication and both orders act pointwise,
//! which makes every operation here exact.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalars::ExtScalar;

/// Dimension tag of an atom label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomDim {
    Finite(u32),
    Omega,
}

/// The four kinds of prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LabelKind {
    Atom(AtomDim),
    SemiprimeII1,
    SemiprimeIIInf,
    FractalIII,
}

impl LabelKind {
    pub fn is_atom(&self) -> bool {
        matches!(self, LabelKind::Atom(_))
    }

    pub fn is_semiprime(&self) -> bool {
        matches!(self, LabelKind::SemiprimeII1 | LabelKind::SemiprimeIIInf)
    }

    pub fn is_fractal(&self) -> bool {
        matches!(self, LabelKind::FractalIII)
    }

    pub fn class_type(&self) -> ClassType {
        match self {
            LabelKind::Atom(_) => ClassType::I,
            LabelKind::SemiprimeII1 | LabelKind::SemiprimeIIInf => ClassType::II,
            LabelKind::FractalIII => ClassType::III,
        }
    }

    /// Dimension of the underlying Hilbert space of one copy of the prime.
    pub fn dim(&self) -> ExtScalar {
        match self {
            LabelKind::Atom(AtomDim::Finite(n)) => ExtScalar::int(*n as i128),
            _ => ExtScalar::ALEPH0,
        }
    }

    /// Whether `v` may be stored on a label of this kind.
    pub fn admits(&self, v: ExtScalar) -> bool {
        match self {
            LabelKind::Atom(_) => v.is_cardinal(),
            LabelKind::FractalIII => v.is_zero() || v.is_infinite(),
            LabelKind::SemiprimeII1 | LabelKind::SemiprimeIIInf => true,
        }
    }

    fn json_name(&self) -> &'static str {
        match self {
            LabelKind::Atom(_) => "atom",
            LabelKind::SemiprimeII1 => "semiprime-ii1",
            LabelKind::SemiprimeIIInf => "semiprime-ii-inf",
            LabelKind::FractalIII => "fractal",
        }
    }
}

/// The three von Neumann types used to index level sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassType {
    I,
    II,
    III,
}

impl fmt::Display for ClassType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassType::I => "I",
            ClassType::II => "II",
            ClassType::III => "III",
        })
    }
}

/// An abstract prime: an opaque id plus its kind. Cheap to clone.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeLabel {
    id: Arc<str>,
    kind: LabelKind,
}

impl PrimeLabel {
    pub fn new(id: impl AsRef<str>, kind: LabelKind) -> Self {
        PrimeLabel { id: Arc::from(id.as_ref()), kind }
    }

    pub fn atom(id: impl AsRef<str>, n: u32) -> Self {
        Self::new(id, LabelKind::Atom(AtomDim::Finite(n)))
    }

    pub fn semiprime(id: impl AsRef<str>) -> Self {
        Self::new(id, LabelKind::SemiprimeII1)
    }

    pub fn fractal(id: impl AsRef<str>) -> Self {
        Self::new(id, LabelKind::FractalIII)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn kind(&self) -> LabelKind {
        self.kind
    }
}

impl fmt::Display for PrimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)
    }
}

/// A finite-support multiplicity function. Entries are sorted by label and never zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TupleClass {
    entries: Vec<(PrimeLabel, ExtScalar)>,
}

impl TupleClass {
    pub fn zero() -> Self {
        TupleClass { entries: Vec::new() }
    }

    /// Build a class, rejecting inadmissible values and repeated labels. Zeros are dropped.
    pub fn new(entries: impl IntoIterator<Item = (PrimeLabel, ExtScalar)>) -> Result<Self> {
        let mut v: Vec<_> = entries.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        for w in v.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::input(format!("label {} appears twice", w[0].0)));
            }
        }
        for (l, m) in &v {
            if !l.kind.admits(*m) {
                return Err(Error::admissibility(format!("{m} is not admissible on {} label {l}", l.kind.json_name())));
            }
        }
        Ok(TupleClass { entries: v })
    }

    pub fn single(label: PrimeLabel, mult: ExtScalar) -> Result<Self> {
        Self::new([(label, mult)])
    }

    /// Caller guarantees sortedness, admissibility and absence of zeros.
    fn from_sorted(entries: Vec<(PrimeLabel, ExtScalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, m)| !m.is_zero()));
        TupleClass { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(PrimeLabel, ExtScalar)] {
        &self.entries
    }

    pub fn support(&self) -> impl Iterator<Item = &PrimeLabel> {
        self.entries.iter().map(|(l, _)| l)
    }

    pub fn get(&self, label: &PrimeLabel) -> ExtScalar {
        self.entries
            .binary_search_by(|(l, _)| l.cmp(label))
            .map(|i| self.entries[i].1)
            .unwrap_or(ExtScalar::ZERO)
    }

    /// Walk the union of both supports in label order.
    fn merge<F>(&self, other: &Self, mut f: F) -> Vec<(PrimeLabel, ExtScalar)>
    where
        F: FnMut(&PrimeLabel, ExtScalar, ExtScalar) -> ExtScalar,
    {
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (label, x, y) = if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                i += 1;
                (&a[i - 1].0, a[i - 1].1, ExtScalar::ZERO)
            } else if i == a.len() || b[j].0 < a[i].0 {
                j += 1;
                (&b[j - 1].0, ExtScalar::ZERO, b[j - 1].1)
            } else {
                i += 1;
                j += 1;
                (&a[i - 1].0, a[i - 1].1, b[j - 1].1)
            };
            let v = f(label, x, y);
            if !v.is_zero() {
                out.push((label.clone(), v));
            }
        }
        out
    }

    /// True when `pred` holds at every label of the union of supports.
    fn all_pointwise(&self, other: &Self, mut pred: impl FnMut(ExtScalar, ExtScalar) -> bool) -> bool {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ok = if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                i += 1;
                pred(a[i - 1].1, ExtScalar::ZERO)
            } else if i == a.len() || b[j].0 < a[i].0 {
                j += 1;
                pred(ExtScalar::ZERO, b[j - 1].1)
            } else {
                i += 1;
                j += 1;
                pred(a[i - 1].1, b[j - 1].1)
            };
            if !ok {
                return false;
            }
        }
        true
    }

    /// Binary direct sum.
    pub fn oplus(&self, other: &Self) -> Self {
        Self::from_sorted(self.merge(other, |_, x, y| x + y))
    }

    /// Pointwise maximum.
    pub fn join(&self, other: &Self) -> Self {
        Self::from_sorted(self.merge(other, |_, x, y| x.max(y)))
    }

    /// Pointwise minimum.
    pub fn meet(&self, other: &Self) -> Self {
        Self::from_sorted(self.merge(other, |_, x, y| x.min(y)))
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.all_pointwise(other, |x, y| x <= y)
    }

    /// `self` is `other` restricted to a sub-support.
    pub fn leq_s(&self, other: &Self) -> bool {
        self.entries.iter().all(|(l, m)| other.get(l) == *m)
    }

    pub fn disjoint(&self, other: &Self) -> bool {
        self.all_pointwise(other, |x, y| x.is_zero() || y.is_zero())
    }

    /// Support inclusion, written `A << B`.
    pub fn covers(&self, other: &Self) -> bool {
        self.all_pointwise(other, |x, y| x.is_zero() || !y.is_zero())
    }

    /// Restriction of `self` to the labels satisfying `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(&PrimeLabel, ExtScalar) -> bool) -> Self {
        Self::from_sorted(self.entries.iter().filter(|(l, m)| keep(l, *m)).cloned().collect())
    }

    pub fn to_json(&self) -> Value {
        let labels: Vec<Value> = self
            .entries
            .iter()
            .map(|(l, m)| {
                let dim = match l.kind {
                    LabelKind::Atom(AtomDim::Finite(n)) => json!(n),
                    _ => json!("omega"),
                };
                json!({"id": l.id(), "kind": l.kind.json_name(), "dim": dim, "mult": m.to_json()})
            })
            .collect();
        json!({ "labels": labels })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let labels = v
            .get("labels")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::input("class JSON needs a \"labels\" array"))?;
        let mut entries = Vec::with_capacity(labels.len());
        for item in labels {
            let id = item
                .get("id")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::input("label needs a string id"))?;
            let dim = item.get("dim");
            let kind = match item.get("kind").and_then(Value::as_str) {
                Some("atom") => LabelKind::Atom(match dim {
                    Some(Value::String(s)) if s == "omega" => AtomDim::Omega,
                    Some(d) => AtomDim::Finite(
                        d.as_u64()
                            .filter(|&n| n >= 1 && n <= u32::MAX as u64)
                            .ok_or_else(|| Error::input(format!("bad atom dim for {id}")))?
                            as u32,
                    ),
                    None => return Err(Error::input(format!("atom {id} needs a dim"))),
                }),
                Some("semiprime-ii1") => LabelKind::SemiprimeII1,
                Some("semiprime-ii-inf") => LabelKind::SemiprimeIIInf,
                Some("fractal") => LabelKind::FractalIII,
                other => return Err(Error::input(format!("unknown label kind {other:?}"))),
            };
            let mult = ExtScalar::from_json(item.get("mult").ok_or_else(|| Error::input("label needs mult"))?)?;
            entries.push((PrimeLabel::new(id, kind), mult));
        }
        Self::new(entries)
    }

    /// Reject alephs above the configured tower.
    pub fn check_tower(&self, k: u8) -> Result<()> {
        self.entries.iter().try_for_each(|(_, m)| m.check_tower(k))
    }
}

impl fmt::Display for TupleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (l, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}:{m}")?;
        }
        f.write_str("}")
    }
}

/// Direct sum of any number of classes; the empty sum is the zero class.
pub fn oplus(classes: &[TupleClass]) -> TupleClass {
    classes.iter().fold(TupleClass::zero(), |acc, c| acc.oplus(c))
}

/// `alpha ⊙ A`. A non-integer rational may only act on semiprime support.
pub fn scalar_mul(alpha: ExtScalar, a: &TupleClass) -> Result<TupleClass> {
    if !alpha.is_cardinal() {
        if let Some((l, _)) = a.entries.iter().find(|(l, _)| !l.kind.is_semiprime()) {
            return Err(Error::admissibility(format!(
                "non-integer scalar {alpha} cannot act on {} label {l}",
                l.kind.json_name()
            )));
        }
    }
    Ok(TupleClass::from_sorted(
        a.entries
            .iter()
            .map(|(l, m)| (l.clone(), alpha * *m))
            .filter(|(_, m)| !m.is_zero())
            .collect(),
    ))
}

pub fn leq(a: &TupleClass, b: &TupleClass) -> bool {
    a.leq(b)
}

pub fn leq_s(a: &TupleClass, b: &TupleClass) -> bool {
    a.leq_s(b)
}

pub fn disjoint(a: &TupleClass, b: &TupleClass) -> bool {
    a.disjoint(b)
}

pub fn covers(a: &TupleClass, b: &TupleClass) -> bool {
    a.covers(b)
}

/// Least upper bound of a nonempty family.
pub fn sup(classes: &[TupleClass]) -> Result<TupleClass> {
    let (first, rest) = classes.split_first().ok_or_else(|| Error::input("sup of an empty family"))?;
    Ok(rest.iter().fold(first.clone(), |acc, c| acc.join(c)))
}

/// Greatest lower bound of a nonempty family.
pub fn inf(classes: &[TupleClass]) -> Result<TupleClass> {
    let (first, rest) = classes.split_first().ok_or_else(|| Error::input("inf of an empty family"))?;
    Ok(rest.iter().fold(first.clone(), |acc, c| acc.meet(c)))
}

/// The least `X` with `A ⊕ X = B`.
pub fn minus_delta(b: &TupleClass, a: &TupleClass) -> Result<TupleClass> {
    if !a.leq(b) {
        return Err(Error::input(format!("minus requires {a} <= {b}")));
    }
    Ok(TupleClass::from_sorted(b.merge(a, |_, y, x| ExtScalar::sub_delta(y, x).expect("checked above"))))
}

/// The greatest `X` with `A ⊕ X = B`: the minimal complement plus every level where
/// `A` and `B` agree on an infinite value.
pub fn minus_nabla(b: &TupleClass, a: &TupleClass) -> Result<TupleClass> {
    let delta = minus_delta(b, a)?;
    let tied = b.restrict(|l, m| m.is_infinite() && a.get(l) == m);
    Ok(delta.oplus(&tied))
}

/// Level sets of a class.
///
/// `levels[(t, alpha)]` is `E^t_alpha`; the semiminimal part is kept separately in `e_sm`.
/// Atom labels appear with value 1, fractal and semiprime labels with `aleph0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Partition {
    pub levels: BTreeMap<(ClassType, ExtScalar), TupleClass>,
    pub e_sm: TupleClass,
}

impl Partition {
    pub fn level(&self, t: ClassType, alpha: ExtScalar) -> TupleClass {
        self.levels.get(&(t, alpha)).cloned().unwrap_or_default()
    }

    pub fn to_json(&self) -> Value {
        let levels: Vec<Value> = self
            .levels
            .iter()
            .map(|((t, alpha), e)| json!({"type": t.to_string(), "alpha": alpha.to_json(), "class": e.to_json()}))
            .collect();
        json!({ "levels": levels, "e_sm": self.e_sm.to_json() })
    }

    /// `E_sm ⊞ ⊞ alpha ⊙ E^t_alpha` over every level except `(II, 1)`.
    pub fn reconstruct(&self) -> TupleClass {
        let mut acc = self.e_sm.clone();
        for (&(t, alpha), e) in &self.levels {
            if t == ClassType::II && alpha == ExtScalar::ONE {
                continue;
            }
            acc = acc.oplus(&scalar_mul(alpha, e).expect("level sets take cardinal scalars"));
        }
        acc
    }
}

fn add_to_level(levels: &mut BTreeMap<(ClassType, ExtScalar), Vec<(PrimeLabel, ExtScalar)>>, key: (ClassType, ExtScalar), l: &PrimeLabel, v: ExtScalar) {
    levels.entry(key).or_default().push((l.clone(), v));
}

fn unity_value(kind: LabelKind) -> ExtScalar {
    if kind.is_atom() {
        ExtScalar::ONE
    } else {
        ExtScalar::ALEPH0
    }
}

fn partition_entries(a: &TupleClass, zeros: &[PrimeLabel]) -> Partition {
    let mut levels: BTreeMap<(ClassType, ExtScalar), Vec<(PrimeLabel, ExtScalar)>> = BTreeMap::new();
    let mut e_sm = Vec::new();
    for (l, m) in &a.entries {
        let t = l.kind.class_type();
        if t == ClassType::II && m.is_finite() {
            e_sm.push((l.clone(), *m));
            add_to_level(&mut levels, (t, ExtScalar::ONE), l, ExtScalar::ALEPH0);
        } else {
            add_to_level(&mut levels, (t, *m), l, unity_value(l.kind));
        }
    }
    for l in zeros {
        add_to_level(&mut levels, (l.kind.class_type(), ExtScalar::ZERO), l, unity_value(l.kind));
    }
    Partition {
        levels: levels
            .into_iter()
            .map(|(k, mut v)| {
                v.sort_by(|x, y| x.0.cmp(&y.0));
                (k, TupleClass::from_sorted(v))
            })
            .collect(),
        e_sm: TupleClass::from_sorted(e_sm),
    }
}

/// Level-set partition of `A` over its own support.
pub fn partition_of_unity(a: &TupleClass) -> Partition {
    partition_entries(a, &[])
}

/// A fixed, ordered set of labels standing in for the whole prime spectrum.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UnityView {
    labels: Vec<PrimeLabel>,
}

impl UnityView {
    pub fn new(labels: impl IntoIterator<Item = PrimeLabel>) -> Result<Self> {
        let mut labels: Vec<_> = labels.into_iter().collect();
        labels.sort();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input("repeated label in unity view"));
        }
        Ok(UnityView { labels })
    }

    pub fn labels(&self) -> &[PrimeLabel] {
        &self.labels
    }

    /// The unity `J`: 1 on atoms, `aleph0` on semiprimes and fractals.
    pub fn unity(&self) -> TupleClass {
        TupleClass::from_sorted(self.labels.iter().map(|l| (l.clone(), unity_value(l.kind))).collect())
    }

    /// `J_t`, the part of the unity of type `t`.
    pub fn unity_of_type(&self, t: ClassType) -> TupleClass {
        self.unity().restrict(|l, _| l.kind.class_type() == t)
    }

    /// Partition of `A` including the zero levels `E^t_0`, so that every `J_t` is the
    /// disjoint sum of its levels.
    pub fn partition(&self, a: &TupleClass) -> Result<Partition> {
        if let Some(l) = a.support().find(|l| self.labels.binary_search(l).is_err()) {
            return Err(Error::input(format!("label {l} is outside the unity view")));
        }
        let zeros: Vec<_> = self.labels.iter().filter(|l| a.get(l).is_zero()).cloned().collect();
        Ok(partition_entries(a, &zeros))
    }
}

/// Type and structure predicates reported by [`type_flags`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeFlag {
    I,
    In(AtomDim),
    II,
    II1,
    IIInf,
    III,
    Minimal,
    MultiplicityFree,
    HereditaryIdempotent,
    Semiminimal,
    Factor,
    Atom,
    Fractal,
    Semiprime,
    Finite,
}

impl fmt::Display for TypeFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeFlag::I => f.write_str("I"),
            TypeFlag::In(AtomDim::Finite(n)) => write!(f, "I^{n}"),
            TypeFlag::In(AtomDim::Omega) => f.write_str("I^omega"),
            TypeFlag::II => f.write_str("II"),
            TypeFlag::II1 => f.write_str("II^1"),
            TypeFlag::IIInf => f.write_str("II^inf"),
            TypeFlag::III => f.write_str("III"),
            TypeFlag::Minimal => f.write_str("minimal"),
            TypeFlag::MultiplicityFree => f.write_str("multiplicity_free"),
            TypeFlag::HereditaryIdempotent => f.write_str("hereditary_idempotent"),
            TypeFlag::Semiminimal => f.write_str("semiminimal"),
            TypeFlag::Factor => f.write_str("factor"),
            TypeFlag::Atom => f.write_str("atom"),
            TypeFlag::Fractal => f.write_str("fractal"),
            TypeFlag::Semiprime => f.write_str("semiprime"),
            TypeFlag::Finite => f.write_str("finite"),
        }
    }
}

/// Every predicate that holds for `A`.
///
/// The zero class counts as being of every type (but of no particular `I^n`) and is
/// not a factor.
pub fn type_flags(a: &TupleClass) -> BTreeSet<TypeFlag> {
    let e = a.entries();
    let all = |p: &dyn Fn(&PrimeLabel, ExtScalar) -> bool| e.iter().all(|(l, m)| p(l, *m));
    let mut flags = BTreeSet::new();
    let mut set = |cond: bool, flag: TypeFlag| {
        if cond {
            flags.insert(flag);
        }
    };
    set(all(&|l, _| l.kind.is_atom()), TypeFlag::I);
    set(all(&|l, _| l.kind.is_semiprime()), TypeFlag::II);
    set(all(&|l, _| l.kind == LabelKind::SemiprimeII1), TypeFlag::II1);
    set(all(&|l, _| l.kind == LabelKind::SemiprimeIIInf), TypeFlag::IIInf);
    set(all(&|l, _| l.kind.is_fractal()), TypeFlag::III);
    if let Some((first, _)) = e.first() {
        if let LabelKind::Atom(n) = first.kind {
            set(all(&|l, _| l.kind == LabelKind::Atom(n)), TypeFlag::In(n));
        }
    }
    set(
        all(&|l, m| match l.kind {
            LabelKind::Atom(_) => m <= ExtScalar::ONE,
            LabelKind::FractalIII => m == ExtScalar::ALEPH0,
            _ => false,
        }),
        TypeFlag::Minimal,
    );
    set(all(&|l, m| l.kind.is_atom() && m <= ExtScalar::ONE), TypeFlag::MultiplicityFree);
    set(all(&|l, _| l.kind.is_fractal()), TypeFlag::HereditaryIdempotent);
    set(all(&|l, m| l.kind.is_semiprime() && m.is_finite()), TypeFlag::Semiminimal);
    set(
        all(&|l, m| m.is_finite() && !l.kind.is_fractal() && l.kind != LabelKind::SemiprimeIIInf),
        TypeFlag::Finite,
    );
    if let [(l, m)] = e {
        flags.insert(TypeFlag::Factor);
        match l.kind {
            LabelKind::Atom(_) if *m == ExtScalar::ONE => {
                flags.insert(TypeFlag::Atom);
            }
            LabelKind::FractalIII if *m == ExtScalar::ALEPH0 => {
                flags.insert(TypeFlag::Fractal);
            }
            LabelKind::SemiprimeII1 | LabelKind::SemiprimeIIInf if m.is_finite() => {
                flags.insert(TypeFlag::Semiprime);
            }
            _ => {}
        }
    }
    flags
}

/// The scalar `q` with `A = q ⊙ B`, for classes carried by one common label.
///
/// Equal infinite values give 1; an infinite `A` over a finite `B` gives `A`'s value.
pub fn ratio(a: &TupleClass, b: &TupleClass) -> Result<ExtScalar> {
    let [(lb, vb)] = b.entries() else {
        return Err(Error::input("ratio needs B supported on exactly one label"));
    };
    let va = match a.entries() {
        [] => return Ok(ExtScalar::ZERO),
        [(la, va)] if la == lb => *va,
        _ => return Err(Error::input("ratio needs A and B on the same single label")),
    };
    use ExtScalar::*;
    let q = match (va, *vb) {
        (Finite(x), Finite(y)) => Finite(x / y),
        (Aleph(_), Finite(_)) => va,
        (Aleph(i), Aleph(j)) if i == j => ExtScalar::ONE,
        (Aleph(i), Aleph(j)) if i > j => va,
        _ => return Err(Error::input(format!("{a} is not a scalar multiple of {b}"))),
    };
    debug_assert_eq!(q * *vb, va);
    Ok(q)
}

/// `Σ mult(l) · dim(l)` in extended arithmetic.
pub fn symbolic_dim(a: &TupleClass) -> ExtScalar {
    a.entries().iter().fold(ExtScalar::ZERO, |acc, (l, m)| acc + *m * l.kind.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(x: &str) -> ExtScalar {
        x.parse().unwrap()
    }

    fn p() -> PrimeLabel {
        PrimeLabel::atom("P", 1)
    }
    fn q() -> PrimeLabel {
        PrimeLabel::atom("Q", 1)
    }
    fn f() -> PrimeLabel {
        PrimeLabel::fractal("F")
    }
    fn sp() -> PrimeLabel {
        PrimeLabel::semiprime("S")
    }

    fn c(items: &[(PrimeLabel, &str)]) -> TupleClass {
        TupleClass::new(items.iter().map(|(l, m)| (l.clone(), s(m)))).unwrap()
    }

    #[test]
    fn oplus_examples() {
        assert_eq!(c(&[(p(), "2")]).oplus(&c(&[(p(), "1"), (q(), "aleph0")])), c(&[(p(), "3"), (q(), "aleph0")]));
        assert_eq!(oplus(&[TupleClass::zero(), c(&[(p(), "1")])]), c(&[(p(), "1")]));
        assert_eq!(oplus(&[c(&[(sp(), "1/2")]), c(&[(sp(), "1/2")])]), c(&[(sp(), "1")]));
    }

    #[test]
    fn scalar_mul_examples() {
        assert_eq!(scalar_mul(s("aleph0"), &c(&[(p(), "2")])).unwrap(), c(&[(p(), "aleph0")]));
        assert_eq!(scalar_mul(s("2"), &c(&[(p(), "1"), (f(), "aleph1")])).unwrap(), c(&[(p(), "2"), (f(), "aleph1")]));
        assert_eq!(scalar_mul(s("1/3"), &c(&[(sp(), "1")])).unwrap(), c(&[(sp(), "1/3")]));
        assert!(matches!(scalar_mul(s("1/2"), &c(&[(p(), "2")])), Err(Error::Admissibility(_))));
        assert!(matches!(scalar_mul(s("1/2"), &c(&[(f(), "aleph0")])), Err(Error::Admissibility(_))));
        assert_eq!(scalar_mul(ExtScalar::ZERO, &c(&[(f(), "aleph0")])).unwrap(), TupleClass::zero());
    }

    #[test]
    fn admissibility_on_construction() {
        assert!(matches!(TupleClass::new([(p(), s("1/2"))]), Err(Error::Admissibility(_))));
        assert!(matches!(TupleClass::new([(f(), s("3"))]), Err(Error::Admissibility(_))));
        assert!(TupleClass::new([(sp(), s("5/7"))]).is_ok());
        assert!(TupleClass::new([(p(), s("1")), (p(), s("2"))]).is_err());
        assert!(TupleClass::new([(p(), s("0"))]).unwrap().is_zero());
    }

    #[test]
    fn order_examples() {
        assert!(c(&[(p(), "1")]).leq(&c(&[(p(), "2"), (q(), "1")])));
        assert!(!c(&[(p(), "aleph1")]).leq(&c(&[(p(), "aleph0")])));
        let a = c(&[(p(), "2")]);
        assert!(a.leq(&a.clone()));

        assert!(c(&[(p(), "2")]).leq_s(&c(&[(p(), "2"), (q(), "5")])));
        assert!(!c(&[(p(), "1")]).leq_s(&c(&[(p(), "2")])));
        assert!(TupleClass::zero().leq_s(&c(&[(q(), "3")])));

        assert!(c(&[(p(), "1")]).disjoint(&c(&[(q(), "aleph0")])));
        assert!(!c(&[(p(), "1")]).disjoint(&c(&[(p(), "3")])));
        assert!(TupleClass::zero().disjoint(&TupleClass::zero()));

        assert!(c(&[(p(), "aleph2")]).covers(&c(&[(p(), "1")])));
        assert!(!c(&[(p(), "1"), (q(), "1")]).covers(&c(&[(p(), "5")])));
        assert!(TupleClass::zero().covers(&TupleClass::zero()));
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(sup(&[c(&[(p(), "1")]), c(&[(p(), "3"), (q(), "2")])]).unwrap(), c(&[(p(), "3"), (q(), "2")]));
        assert_eq!(inf(&[c(&[(p(), "1")]), c(&[(q(), "1")])]).unwrap(), TupleClass::zero());
        assert_eq!(inf(&[c(&[(p(), "aleph1")]), c(&[(p(), "2")])]).unwrap(), c(&[(p(), "2")]));
        assert!(sup(&[]).is_err());
    }

    #[test]
    fn minus_examples() {
        let (b, a) = (c(&[(p(), "3")]), c(&[(p(), "1")]));
        assert_eq!(minus_delta(&b, &a).unwrap(), c(&[(p(), "2")]));
        assert_eq!(minus_nabla(&b, &a).unwrap(), c(&[(p(), "2")]));
        assert_eq!(minus_delta(&c(&[(p(), "aleph1")]), &c(&[(p(), "aleph0")])).unwrap(), c(&[(p(), "aleph1")]));
        let e = c(&[(p(), "aleph0")]);
        assert_eq!(minus_delta(&e, &e).unwrap(), TupleClass::zero());
        assert_eq!(minus_nabla(&e, &e).unwrap(), e);
        assert!(minus_delta(&a, &b).is_err());
    }

    #[test]
    fn partition_examples() {
        let q2 = PrimeLabel::atom("Q", 2);
        let a = c(&[(p(), "1"), (q2.clone(), "2"), (f(), "aleph0")]);
        let part = partition_of_unity(&a);
        assert_eq!(part.level(ClassType::I, s("1")), c(&[(p(), "1")]));
        assert_eq!(part.level(ClassType::I, s("2")), c(&[(q2, "1")]));
        assert_eq!(part.level(ClassType::III, s("aleph0")), c(&[(f(), "aleph0")]));
        assert!(part.e_sm.is_zero());
        assert_eq!(part.reconstruct(), a);

        let b = c(&[(sp(), "3/2")]);
        let part = partition_of_unity(&b);
        assert_eq!(part.e_sm, b);
        assert_eq!(part.level(ClassType::II, s("1")), c(&[(sp(), "aleph0")]));
        assert_eq!(part.level(ClassType::II, s("1")), scalar_mul(s("aleph0"), &part.e_sm).unwrap());
        assert_eq!(part.reconstruct(), b);

        let part = partition_of_unity(&TupleClass::zero());
        assert!(part.levels.is_empty() && part.e_sm.is_zero());
    }

    #[test]
    fn unity_view_levels_fill_each_type() {
        let labels = vec![p(), q(), f(), sp(), PrimeLabel::new("T", LabelKind::SemiprimeIIInf)];
        let view = UnityView::new(labels).unwrap();
        let a = c(&[(p(), "2"), (f(), "aleph1"), (sp(), "1/2")]);
        let part = view.partition(&a).unwrap();
        for t in [ClassType::I, ClassType::II, ClassType::III] {
            let sum = oplus(&part.levels.iter().filter(|((u, _), _)| *u == t).map(|(_, e)| e.clone()).collect::<Vec<_>>());
            assert_eq!(sum, view.unity_of_type(t), "type {t}");
        }
        assert_eq!(part.reconstruct(), a);
        assert!(view.partition(&c(&[(PrimeLabel::atom("Z", 1), "1")])).is_err());
    }

    #[test]
    fn flags_examples() {
        let fl = type_flags(&c(&[(p(), "1"), (q(), "1")]));
        for flag in [TypeFlag::MultiplicityFree, TypeFlag::Minimal, TypeFlag::I, TypeFlag::Finite] {
            assert!(fl.contains(&flag), "{flag}");
        }
        assert!(!fl.contains(&TypeFlag::Factor));

        let fl = type_flags(&c(&[(sp(), "2/3")]));
        for flag in [TypeFlag::Semiminimal, TypeFlag::II, TypeFlag::II1, TypeFlag::Factor, TypeFlag::Semiprime] {
            assert!(fl.contains(&flag), "{flag}");
        }
        assert!(!fl.contains(&TypeFlag::Minimal));

        let fl = type_flags(&c(&[(f(), "aleph0")]));
        for flag in [TypeFlag::HereditaryIdempotent, TypeFlag::Minimal, TypeFlag::III, TypeFlag::Fractal, TypeFlag::Factor] {
            assert!(fl.contains(&flag), "{flag}");
        }
        assert!(!fl.contains(&TypeFlag::Finite));

        let fl = type_flags(&c(&[(f(), "aleph1")]));
        assert!(fl.contains(&TypeFlag::Factor) && !fl.contains(&TypeFlag::Fractal) && !fl.contains(&TypeFlag::Minimal));
        let fl = type_flags(&c(&[(PrimeLabel::atom("R", 3), "1")]));
        assert!(fl.contains(&TypeFlag::Atom) && fl.contains(&TypeFlag::In(AtomDim::Finite(3))));
        let fl = type_flags(&TupleClass::zero());
        assert!(fl.contains(&TypeFlag::I) && fl.contains(&TypeFlag::III) && !fl.contains(&TypeFlag::Factor));
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(ratio(&c(&[(p(), "6")]), &c(&[(p(), "2")])).unwrap(), s("3"));
        assert_eq!(ratio(&c(&[(sp(), "3/2")]), &c(&[(sp(), "1/2")])).unwrap(), s("3"));
        assert_eq!(ratio(&c(&[(f(), "aleph1")]), &c(&[(f(), "aleph0")])).unwrap(), s("aleph1"));
        assert_eq!(ratio(&c(&[(f(), "aleph1")]), &c(&[(f(), "aleph1")])).unwrap(), ExtScalar::ONE);
        assert!(ratio(&c(&[(p(), "2")]), &c(&[(p(), "aleph0")])).is_err());
        assert!(ratio(&c(&[(p(), "2")]), &c(&[(q(), "1")])).is_err());
    }

    #[test]
    fn dim_examples() {
        assert_eq!(symbolic_dim(&c(&[(PrimeLabel::atom("P", 2), "2")])), s("4"));
        assert_eq!(symbolic_dim(&c(&[(sp(), "1/2")])), s("aleph0"));
        assert_eq!(symbolic_dim(&TupleClass::zero()), ExtScalar::ZERO);
    }

    #[test]
    fn json_round_trip() {
        let a = c(&[(PrimeLabel::atom("P", 2), "2"), (f(), "aleph1"), (sp(), "1/2"), (PrimeLabel::new("W", LabelKind::Atom(AtomDim::Omega)), "1")]);
        assert_eq!(TupleClass::from_json(&a.to_json()).unwrap(), a);
        assert!(TupleClass::from_json(&json!({"labels":[{"id":"x","kind":"atom","dim":1,"mult":{"type":"rational","num":1,"den":2}}]})).is_err());
    }

    fn arb_class() -> impl Strategy<Value = TupleClass> {
        let vals = |kind: LabelKind| -> BoxedStrategy<ExtScalar> {
            match kind {
                LabelKind::Atom(_) => prop_oneof![(0i128..4).prop_map(ExtScalar::int), (0u8..3).prop_map(ExtScalar::Aleph)].boxed(),
                LabelKind::FractalIII => prop_oneof![Just(ExtScalar::ZERO), (0u8..3).prop_map(ExtScalar::Aleph)].boxed(),
                _ => prop_oneof![(0i128..6, 1i128..4).prop_map(|(n, d)| ExtScalar::frac(n, d)), (0u8..3).prop_map(ExtScalar::Aleph)].boxed(),
            }
        };
        (vals(p().kind()), vals(q().kind()), vals(f().kind()), vals(sp().kind()))
            .prop_map(|(a, b, x, y)| TupleClass::new([(p(), a), (q(), b), (f(), x), (sp(), y)]).unwrap())
    }

    proptest! {
        #[test]
        fn prop_semigroup(a in arb_class(), b in arb_class(), x in arb_class()) {
            prop_assert_eq!(a.oplus(&b), b.oplus(&a));
            prop_assert_eq!(a.oplus(&b).oplus(&x), a.oplus(&b.oplus(&x)));
            prop_assert!(a.leq(&a.oplus(&b)));
        }

        #[test]
        fn prop_lattice(a in arb_class(), b in arb_class()) {
            let (j, m) = (a.join(&b), a.meet(&b));
            prop_assert!(a.leq(&j) && b.leq(&j) && m.leq(&a) && m.leq(&b));
            prop_assert_eq!(a.leq(&b), a.meet(&b) == a);
            prop_assert_eq!(a.disjoint(&b), m.is_zero());
        }

        #[test]
        fn prop_minus_contract(a in arb_class(), b in arb_class()) {
            let (lo, hi) = (a.meet(&b), a.join(&b));
            let d = minus_delta(&hi, &lo).unwrap();
            let n = minus_nabla(&hi, &lo).unwrap();
            prop_assert_eq!(lo.oplus(&d), hi.clone());
            prop_assert_eq!(lo.oplus(&n), hi);
            prop_assert!(d.leq_s(&n));
        }

        #[test]
        fn prop_partition_reconstructs(a in arb_class()) {
            let part = partition_of_unity(&a);
            prop_assert_eq!(part.reconstruct(), a.clone());
            prop_assert_eq!(part.e_sm.clone(), a.meet(&part.level(ClassType::II, ExtScalar::ONE)));
        }
    }
}
