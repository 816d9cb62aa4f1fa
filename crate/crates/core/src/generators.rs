//! Lattice sources: ideal lattices of `Z/nZ`, chains, products, a few named
//! lattices, explicit JSON documents, exhaustive enumeration of small lattices
//! and seeded random lattices.

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::{FiniteLattice, LatticeDocument, RelationKind, ValidationError};

/// Largest `n` accepted by [`ideal_lattice_zn`].
pub const MAX_ZN: u64 = 1_000_000;
/// Largest size accepted by [`enumerate_lattices`].
pub const MAX_EXHAUSTIVE: usize = 7;
/// Largest size accepted by [`random_lattice`].
pub const MAX_RANDOM: usize = 64;
const RANDOM_ROUNDS: usize = 100_000;

#[derive(Debug, thiserror::Error)]
pub enum GeneratorError {
    #[error("zn requires 2 <= n <= {MAX_ZN}, got {0}")]
    ZnOutOfRange(u64),
    #[error("chain requires at least one element")]
    EmptyChain,
    #[error("product requires at least two factors")]
    ProductArity,
    #[error("cannot parse lattice spec {input:?}: {reason}")]
    SpecParse { input: String, reason: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed lattice document {path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("exhaustive enumeration is limited to {MAX_EXHAUSTIVE} elements, requested {0}")]
    BoundExceeded(usize),
    #[error("random lattices must have between 1 and {MAX_RANDOM} elements, requested {0}")]
    RandomSize(usize),
    #[error("no {size}-element lattice found for seed {seed} after {rounds} rounds")]
    RandomExhausted {
        size: usize,
        seed: u64,
        rounds: usize,
    },
}

impl GeneratorError {
    fn parse(input: &str, reason: impl Into<String>) -> Self {
        GeneratorError::SpecParse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedLattice {
    /// The diamond: bottom, three pairwise incomparable atoms, top.
    M3,
    /// The pentagon `0 < a < c < 1`, `0 < b < 1`.
    N5,
    /// The Boolean square.
    B2,
}

/// A description of a lattice that [`LatticeSpec::build`] can realize.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeSpec {
    Zn(u64),
    Chain(usize),
    Product(Vec<LatticeSpec>),
    Named(NamedLattice),
    File(PathBuf),
    Document(LatticeDocument),
}

impl LatticeSpec {
    pub fn build(&self) -> Result<FiniteLattice, GeneratorError> {
        match self {
            LatticeSpec::Zn(n) => ideal_lattice_zn(*n),
            LatticeSpec::Chain(k) => chain(*k),
            LatticeSpec::Product(factors) => {
                if factors.len() < 2 {
                    return Err(GeneratorError::ProductArity);
                }
                let built = factors
                    .iter()
                    .map(LatticeSpec::build)
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(product(&built))
            }
            LatticeSpec::Named(which) => Ok(named(*which)),
            LatticeSpec::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| GeneratorError::Io {
                    path: path.clone(),
                    source,
                })?;
                let doc: LatticeDocument =
                    serde_json::from_str(&text).map_err(|source| GeneratorError::Json {
                        path: path.clone(),
                        source,
                    })?;
                Ok(FiniteLattice::from_document(&doc)?)
            }
            LatticeSpec::Document(doc) => Ok(FiniteLattice::from_document(doc)?),
        }
    }
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeSpec::Zn(n) => write!(f, "zn:{n}"),
            LatticeSpec::Chain(k) => write!(f, "chain:{k}"),
            LatticeSpec::Product(factors) => {
                write!(f, "prod(")?;
                for (i, x) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            LatticeSpec::Named(NamedLattice::M3) => write!(f, "m3"),
            LatticeSpec::Named(NamedLattice::N5) => write!(f, "n5"),
            LatticeSpec::Named(NamedLattice::B2) => write!(f, "b2"),
            LatticeSpec::File(p) => write!(f, "file:{}", p.display()),
            LatticeSpec::Document(doc) => write!(f, "document(n={})", doc.n),
        }
    }
}

impl FromStr for LatticeSpec {
    type Err = GeneratorError;

    fn from_str(input: &str) -> Result<Self, GeneratorError> {
        let s = input.trim();
        if let Some(path) = s.strip_prefix("file:") {
            if path.is_empty() {
                return Err(GeneratorError::parse(input, "empty path"));
            }
            return Ok(LatticeSpec::File(PathBuf::from(path)));
        }
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "m3" => return Ok(LatticeSpec::Named(NamedLattice::M3)),
            "n5" => return Ok(LatticeSpec::Named(NamedLattice::N5)),
            "b2" => return Ok(LatticeSpec::Named(NamedLattice::B2)),
            _ => {}
        }
        if lower.starts_with("prod(") && lower.ends_with(')') {
            let inner = &s[5..s.len() - 1];
            let factors = split_top_level(inner)
                .map_err(|reason| GeneratorError::parse(input, reason))?
                .into_iter()
                .map(LatticeSpec::from_str)
                .collect::<Result<Vec<_>, _>>()?;
            if factors.len() < 2 {
                return Err(GeneratorError::parse(
                    input,
                    "product needs at least two factors",
                ));
            }
            return Ok(LatticeSpec::Product(factors));
        }
        if let Some(n) = lower.strip_prefix("zn:") {
            let n: u64 = n
                .parse()
                .map_err(|_| GeneratorError::parse(input, "expected an integer after zn:"))?;
            if !(2..=MAX_ZN).contains(&n) {
                return Err(GeneratorError::parse(
                    input,
                    format!("n must lie in 2..={MAX_ZN}"),
                ));
            }
            return Ok(LatticeSpec::Zn(n));
        }
        if let Some(k) = lower.strip_prefix("chain:") {
            let k: usize = k
                .parse()
                .map_err(|_| GeneratorError::parse(input, "expected an integer after chain:"))?;
            if k == 0 {
                return Err(GeneratorError::parse(
                    input,
                    "chain needs at least one element",
                ));
            }
            return Ok(LatticeSpec::Chain(k));
        }
        Err(GeneratorError::parse(input, "unknown lattice kind"))
    }
}

/// Parses a comma-separated list of specs. Entries of the form `zn:a..b` or
/// `chain:a..b` expand to one spec per value in the inclusive range.
pub fn parse_spec_list(input: &str) -> Result<Vec<LatticeSpec>, GeneratorError> {
    let mut out = Vec::new();
    for item in split_top_level(input).map_err(|reason| GeneratorError::parse(input, reason))? {
        let lower = item.to_ascii_lowercase();
        let range = ["zn:", "chain:"].iter().find_map(|prefix| {
            let rest = lower.strip_prefix(prefix)?;
            let (a, b) = rest.split_once("..")?;
            Some((*prefix, a.to_string(), b.to_string()))
        });
        match range {
            Some((prefix, a, b)) => {
                let (a, b): (u64, u64) = match (a.parse(), b.parse()) {
                    (Ok(a), Ok(b)) if a <= b => (a, b),
                    _ => return Err(GeneratorError::parse(item, "malformed range")),
                };
                for v in a..=b {
                    out.push(format!("{prefix}{v}").parse()?);
                }
            }
            None => out.push(item.parse()?),
        }
    }
    Ok(out)
}

fn split_top_level(s: &str) -> Result<Vec<&str>, String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err("unbalanced parentheses".into());
                }
            }
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err("unbalanced parentheses".into());
    }
    parts.push(s[start..].trim());
    if parts.iter().any(|p| p.is_empty()) {
        return Err("empty list entry".into());
    }
    Ok(parts)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The lattice of ideals of `Z/nZ`. Element `(d)` is the ideal generated by the
/// divisor `d`; `(d1) <= (d2)` iff `d2 | d1`. Elements are indexed by
/// decreasing divisor, so the zero ideal `(n)` is index 0 and `(1)` is last.
pub fn ideal_lattice_zn(n: u64) -> Result<FiniteLattice, GeneratorError> {
    if !(2..=MAX_ZN).contains(&n) {
        return Err(GeneratorError::ZnOutOfRange(n));
    }
    let mut divs = divisors(n);
    divs.reverse();
    let m = divs.len();
    let mut le = vec![false; m * m];
    for (i, &a) in divs.iter().enumerate() {
        for (j, &b) in divs.iter().enumerate() {
            le[i * m + j] = a % b == 0;
        }
    }
    let labels = divs.iter().map(|d| format!("({d})")).collect();
    Ok(FiniteLattice::from_le_matrix(m, le, Some(labels))?)
}

pub fn chain(k: usize) -> Result<FiniteLattice, GeneratorError> {
    if k == 0 {
        return Err(GeneratorError::EmptyChain);
    }
    let le = (0..k * k).map(|x| x / k <= x % k).collect();
    Ok(FiniteLattice::from_le_matrix(k, le, None)?)
}

pub fn named(which: NamedLattice) -> FiniteLattice {
    let (labels, covers): (&[&str], &[[usize; 2]]) = match which {
        NamedLattice::M3 => (
            &["0", "a", "b", "c", "1"],
            &[[0, 1], [0, 2], [0, 3], [1, 4], [2, 4], [3, 4]],
        ),
        NamedLattice::N5 => (
            &["0", "a", "b", "c", "1"],
            &[[0, 1], [1, 3], [3, 4], [0, 2], [2, 4]],
        ),
        NamedLattice::B2 => (&["0", "a", "b", "1"], &[[0, 1], [0, 2], [1, 3], [2, 3]]),
    };
    let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
    FiniteLattice::from_pairs(labels.len(), RelationKind::Covers, covers, Some(labels))
        .expect("named lattices are valid")
}

/// Cartesian product with the componentwise order. The first factor varies
/// slowest in the element numbering.
pub fn product(factors: &[FiniteLattice]) -> FiniteLattice {
    assert!(!factors.is_empty(), "product of an empty family");
    let sizes: Vec<usize> = factors.iter().map(FiniteLattice::size).collect();
    let n: usize = sizes.iter().product();
    let decode = |mut x: usize| {
        let mut coords = vec![0; sizes.len()];
        for (c, &s) in coords.iter_mut().zip(&sizes).rev() {
            *c = x % s;
            x /= s;
        }
        coords
    };
    let coords: Vec<Vec<usize>> = (0..n).map(decode).collect();
    let mut le = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            le[a * n + b] = factors
                .iter()
                .enumerate()
                .all(|(k, f)| f.le(coords[a][k], coords[b][k]));
        }
    }
    let labels = coords
        .iter()
        .map(|c| {
            let parts: Vec<String> = c.iter().zip(factors).map(|(&i, f)| f.label(i)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    FiniteLattice::from_le_matrix(n, le, Some(labels)).expect("products of lattices are lattices")
}

/// Whether exhaustive enumeration keeps every labeling or one representative
/// per isomorphism class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Enumeration {
    Labeled,
    Unlabeled,
}

/// Every lattice with `1..=max_size` elements, in a deterministic order: by
/// size, then by isomorphism class (ordered by canonical code), then, for
/// [`Enumeration::Labeled`], by order matrix.
pub fn enumerate_lattices(
    max_size: usize,
    mode: Enumeration,
) -> Result<impl Iterator<Item = FiniteLattice>, GeneratorError> {
    if max_size > MAX_EXHAUSTIVE {
        return Err(GeneratorError::BoundExceeded(max_size));
    }
    let iter = (1..=max_size).flat_map(move |n| {
        lattice_classes(n)
            .into_iter()
            .flat_map(move |rep| match mode {
                Enumeration::Unlabeled => vec![rep],
                Enumeration::Labeled => all_labelings(&rep),
            })
    });
    Ok(iter)
}

/// One canonically numbered representative per isomorphism class of
/// `n`-element lattices.
pub fn lattice_classes(n: usize) -> Vec<FiniteLattice> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for lat in natural_lattices(n) {
        let (code, perm) = canonical_form(&lat);
        if seen.insert(code.clone()) {
            out.push((code, lat.permuted(&perm)));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, l)| l).collect()
}

/// Lattices on `n` elements numbered along a linear extension, with bottom 0
/// and top `n - 1`. Built by choosing, for each interior element in turn, its
/// strict down-set among the earlier interior elements; candidates that are
/// not down-closed are pruned immediately.
fn natural_lattices(n: usize) -> Vec<FiniteLattice> {
    if n <= 2 {
        return vec![chain(n.max(1)).expect("nonempty chain")];
    }
    let interior = n - 2;
    let mut below: Vec<u32> = vec![0; interior];
    let mut out = Vec::new();
    natural_rec(n, 0, &mut below, &mut out);
    out
}

fn natural_rec(n: usize, j: usize, below: &mut Vec<u32>, out: &mut Vec<FiniteLattice>) {
    let interior = n - 2;
    if j == interior {
        let mut le = vec![false; n * n];
        for a in 0..n {
            le[a] = true;
            le[a * n + n - 1] = true;
            le[a * n + a] = true;
        }
        for (jj, &mask) in below.iter().enumerate() {
            for i in 0..interior {
                if mask >> i & 1 == 1 {
                    le[(i + 1) * n + jj + 1] = true;
                }
            }
        }
        if let Ok(l) = FiniteLattice::from_le_matrix(n, le, None) {
            out.push(l);
        }
        return;
    }
    for mask in 0u32..(1 << j) {
        let closed = (0..j)
            .filter(|&i| mask >> i & 1 == 1)
            .all(|i| below[i] & !mask == 0);
        if closed {
            below[j] = mask;
            natural_rec(n, j + 1, below, out);
        }
    }
    below[j] = 0;
}

/// Canonical code of a lattice together with the renumbering that realizes
/// it: the lexicographically least strict-order matrix over all renumberings
/// along linear extensions. Two lattices are isomorphic iff their codes agree.
/// Exponential; intended for small lattices.
pub fn canonical_form(lat: &FiniteLattice) -> (Vec<bool>, Vec<usize>) {
    let n = lat.size();
    let mut best: Option<(Vec<bool>, Vec<usize>)> = None;
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    extensions(lat, &mut order, &mut placed, &mut |order| {
        // order[k] is the element placed at position k
        let mut code = Vec::with_capacity(n * (n - 1) / 2);
        for a in 0..n {
            for b in a + 1..n {
                code.push(lat.le(order[a], order[b]));
            }
        }
        if best.as_ref().is_none_or(|(c, _)| code < *c) {
            let mut perm = vec![0; n];
            for (pos, &e) in order.iter().enumerate() {
                perm[e] = pos;
            }
            best = Some((code, perm));
        }
    });
    best.expect("every finite poset has a linear extension")
}

fn extensions(
    lat: &FiniteLattice,
    order: &mut Vec<usize>,
    placed: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[usize]),
) {
    let n = lat.size();
    if order.len() == n {
        visit(order);
        return;
    }
    for x in 0..n {
        if !placed[x] && (0..n).all(|y| placed[y] || !lat.lt(y, x)) {
            placed[x] = true;
            order.push(x);
            extensions(lat, order, placed, visit);
            order.pop();
            placed[x] = false;
        }
    }
}

pub fn is_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    a.size() == b.size() && canonical_form(a).0 == canonical_form(b).0
}

/// Every distinct renumbering of `rep`, sorted by order matrix.
fn all_labelings(rep: &FiniteLattice) -> Vec<FiniteLattice> {
    let n = rep.size();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut seen = BTreeSet::new();
    loop {
        let l = rep.permuted(&perm);
        let m = l.order_matrix();
        if !seen.contains(&m) {
            seen.insert(m);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    seen.into_iter()
        .map(|m| FiniteLattice::from_le_matrix(n, m, None).expect("relabeling preserves validity"))
        .collect()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// A seeded pseudo-random lattice with exactly `size` elements.
///
/// The lattice is realized as a family of subsets of a small ground set that
/// contains the ground set and is closed under intersection, ordered by
/// inclusion. Random subsets are inserted together with their intersections
/// with the current family; insertions that would overshoot `size` are
/// rejected. The resulting distribution over lattices is not uniform.
pub fn random_lattice(size: usize, seed: u64) -> Result<FiniteLattice, GeneratorError> {
    if size == 0 || size > MAX_RANDOM {
        return Err(GeneratorError::RandomSize(size));
    }
    let ground = (size - 1).clamp(1, 63);
    let universe: u64 = (1u64 << ground) - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut family: BTreeSet<u64> = BTreeSet::from([universe]);
    let mut rounds = 0;
    while family.len() < size {
        rounds += 1;
        if rounds > RANDOM_ROUNDS {
            return Err(GeneratorError::RandomExhausted {
                size,
                seed,
                rounds: RANDOM_ROUNDS,
            });
        }
        let candidate = if rng.gen_bool(0.5) {
            let density: f64 = rng.gen();
            (0..ground).fold(0u64, |acc, b| {
                if rng.gen_bool(density) {
                    acc | 1 << b
                } else {
                    acc
                }
            })
        } else {
            let members: Vec<u64> = family.iter().copied().collect();
            let base = members[rng.gen_range(0..members.len())];
            if base == 0 {
                continue;
            }
            let bits: Vec<u32> = (0..64).filter(|b| base >> b & 1 == 1).collect();
            base & !(1u64 << bits[rng.gen_range(0..bits.len())])
        };
        let fresh: BTreeSet<u64> = std::iter::once(candidate)
            .chain(family.iter().map(|&c| c & candidate))
            .filter(|s| !family.contains(s))
            .collect();
        if family.len() + fresh.len() <= size {
            family.extend(fresh);
        }
    }
    let mut sets: Vec<u64> = family.into_iter().collect();
    sets.sort_by_key(|&s| (s.count_ones(), s));
    let n = sets.len();
    let mut le = vec![false; n * n];
    for (i, &a) in sets.iter().enumerate() {
        for (j, &b) in sets.iter().enumerate() {
            le[i * n + j] = a & !b == 0;
        }
    }
    Ok(FiniteLattice::from_le_matrix(n, le, None)?)
}
