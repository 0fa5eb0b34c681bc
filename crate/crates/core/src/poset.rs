//! Finite preorder and forcing-poset combinatorics.
//!
//! Everything here is exact: compatibility by search for a common extension,
//! maximum antichains by branch-and-bound over the incompatibility graph,
//! density and filter checks by definition. Preorders rather than posets,
//! since order by provable implication is not antisymmetric; quotients are
//! taken where a caller wants them.

use serde::Serialize;

pub const DEFAULT_ANTICHAIN_CAP: usize = 24;

/// Hard limit of the antichain search; candidate sets are 64-bit masks.
const ANTICHAIN_HARD_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PosetError {
    #[error("relation is not reflexive: `{0}` is not below itself")]
    NotReflexive(String),
    #[error("relation is not transitive: `{a}` <= `{b}` <= `{c}` but not `{a}` <= `{c}`")]
    NotTransitive { a: String, b: String, c: String },
    #[error("element count {n} exceeds the cap {cap}")]
    CapExceeded { n: u128, cap: usize },
    #[error("element index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
}

/// A finite preorder: labeled elements with a reflexive transitive `<=`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePreorder {
    labels: Vec<String>,
    leq: Vec<bool>,
    n: usize,
}

impl FinitePreorder {
    /// Builds from explicit `<=` pairs and validates reflexivity and
    /// transitivity; violations are errors, not repairs.
    pub fn new(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for &(a, b) in pairs {
            if a >= n {
                return Err(PosetError::IndexOutOfRange(a));
            }
            if b >= n {
                return Err(PosetError::IndexOutOfRange(b));
            }
            leq[a * n + b] = true;
        }
        Self::from_leq_matrix(labels, leq)
    }

    pub fn from_leq_matrix(labels: Vec<String>, leq: Vec<bool>) -> Result<Self, PosetError> {
        let n = labels.len();
        assert_eq!(leq.len(), n * n, "matrix size mismatch");
        {
            let mut seen = std::collections::BTreeSet::new();
            for l in &labels {
                if !seen.insert(l.clone()) {
                    return Err(PosetError::DuplicateLabel(l.clone()));
                }
            }
        }
        let p = FinitePreorder { labels, leq, n };
        for i in 0..n {
            if !p.leq(i, i) {
                return Err(PosetError::NotReflexive(p.labels[i].clone()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !p.leq(a, b) {
                    continue;
                }
                for c in 0..n {
                    if p.leq(b, c) && !p.leq(a, c) {
                        return Err(PosetError::NotTransitive {
                            a: p.labels[a].clone(),
                            b: p.labels[b].clone(),
                            c: p.labels[c].clone(),
                        });
                    }
                }
            }
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    fn check_index(&self, i: usize) -> Result<(), PosetError> {
        if i >= self.n {
            return Err(PosetError::IndexOutOfRange(i));
        }
        Ok(())
    }

    /// Do `p` and `q` have a common extension?
    pub fn compatible(&self, p: usize, q: usize) -> Result<bool, PosetError> {
        self.check_index(p)?;
        self.check_index(q)?;
        Ok((0..self.n).any(|r| self.leq(r, p) && self.leq(r, q)))
    }

    /// Elements with nothing strictly below them.
    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| (0..self.n).all(|j| !self.leq(j, i) || self.leq(i, j)))
            .collect()
    }

    /// `{q : p <= q}`.
    pub fn up_set(&self, p: usize) -> Vec<usize> {
        (0..self.n).filter(|&q| self.leq(p, q)).collect()
    }

    /// Does every element have something from `d` below it?
    pub fn is_dense(&self, d: &[usize]) -> Result<bool, PosetError> {
        for &i in d {
            self.check_index(i)?;
        }
        Ok((0..self.n).all(|p| d.iter().any(|&x| self.leq(x, p))))
    }

    /// Nonempty, upward closed, and directed: each two members have a common
    /// lower bound inside the set.
    pub fn is_filter(&self, f: &[usize]) -> Result<bool, PosetError> {
        for &i in f {
            self.check_index(i)?;
        }
        if f.is_empty() {
            return Ok(false);
        }
        let member = |x: usize| f.contains(&x);
        for &a in f {
            for b in 0..self.n {
                if self.leq(a, b) && !member(b) {
                    return Ok(false);
                }
            }
        }
        for &a in f {
            for &b in f {
                if !f.iter().any(|&h| self.leq(h, a) && self.leq(h, b)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Which of the given families does `f` fail to intersect?
    pub fn meets_all(&self, f: &[usize], families: &[Vec<usize>]) -> MeetsReport {
        let missed = families
            .iter()
            .enumerate()
            .filter(|(_, fam)| !fam.iter().any(|x| f.contains(x)))
            .map(|(k, _)| k)
            .collect::<Vec<_>>();
        MeetsReport { all_met: missed.is_empty(), missed }
    }

    /// Exact maximum antichain (pairwise incompatible set), with the
    /// index-lexicographically least witness. Branch and bound over the
    /// incompatibility graph; `cap` bounds the element count.
    pub fn max_antichain(&self, cap: usize) -> Result<AntichainReport, PosetError> {
        let cap = cap.min(ANTICHAIN_HARD_LIMIT);
        if self.n > cap {
            return Err(PosetError::CapExceeded { n: self.n as u128, cap });
        }
        if self.n == 0 {
            return Ok(AntichainReport { size: 0, witness: vec![], witness_labels: vec![] });
        }
        let mut adj = vec![0u64; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && !self.compatible(i, j).expect("index in range") {
                    adj[i] |= 1 << j;
                }
            }
        }
        let mut best = 0usize;
        let all = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        bb_max_clique(&adj, 0, all, &mut best);

        let mut chosen = Vec::new();
        let found = lex_first_clique(&adj, best, all, &mut chosen);
        debug_assert!(found);
        let witness_labels = chosen.iter().map(|&i| self.labels[i].clone()).collect();
        Ok(AntichainReport { size: best, witness: chosen, witness_labels })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeetsReport {
    pub all_met: bool,
    pub missed: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AntichainReport {
    pub size: usize,
    pub witness: Vec<usize>,
    pub witness_labels: Vec<String>,
}

fn bb_max_clique(adj: &[u64], size: usize, mut cand: u64, best: &mut usize) {
    if size > *best {
        *best = size;
    }
    while cand != 0 {
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        bb_max_clique(adj, size + 1, cand & adj[v], best);
    }
}

fn lex_first_clique(adj: &[u64], target: usize, cand: u64, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == target {
        return true;
    }
    let mut rest = cand;
    while rest != 0 {
        if chosen.len() + (rest.count_ones() as usize) < target {
            return false;
        }
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        chosen.push(v);
        if lex_first_clique(adj, target, rest & adj[v], chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// A partial function from `{0..kappa-1}` to `{0..lambda-1}`, as a sorted
/// graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFn(pub Vec<(u32, u32)>);

impl PartialFn {
    pub fn label(&self) -> String {
        if self.0.is_empty() {
            return "{}".to_string();
        }
        let body: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        format!("{{{}}}", body.join(","))
    }

    /// Is the union of the two graphs still a function?
    pub fn union_is_function(&self, other: &PartialFn) -> bool {
        let mut i = 0;
        let mut j = 0;
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if self.0[i].1 != other.0[j].1 {
                        return false;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        true
    }

    pub fn extends(&self, other: &PartialFn) -> bool {
        other.0.iter().all(|kv| self.0.contains(kv))
    }
}

/// All partial functions from `kappa` to `lambda` with domain size `< mu`,
/// ordered by reverse inclusion.
#[derive(Debug, Clone)]
pub struct PartialFunctionPoset {
    pub kappa: usize,
    pub lambda: usize,
    pub mu: usize,
    pub elements: Vec<PartialFn>,
}

/// `sum over k < mu of C(kappa, k) * lambda^k`.
pub fn fn_poset_element_count(kappa: usize, lambda: usize, mu: usize) -> u128 {
    let mut total: u128 = 0;
    for k in 0..mu {
        if k > kappa {
            break;
        }
        if k > 0 && lambda == 0 {
            continue;
        }
        let mut binom: u128 = 1;
        for i in 0..k {
            binom = binom * (kappa - i) as u128 / (i + 1) as u128;
        }
        total += binom * (lambda as u128).pow(k as u32);
    }
    total
}

/// Enumerates the poset deterministically: domain size ascending, domains in
/// lexicographic order, then value rows in lexicographic order.
pub fn fn_poset(
    kappa: usize,
    lambda: usize,
    mu: usize,
    cap: usize,
) -> Result<PartialFunctionPoset, PosetError> {
    let count = fn_poset_element_count(kappa, lambda, mu);
    if count > cap as u128 {
        return Err(PosetError::CapExceeded { n: count, cap });
    }
    let mut elements = Vec::with_capacity(count as usize);
    for k in 0..mu.min(kappa + 1) {
        if k == 0 {
            elements.push(PartialFn(Vec::new()));
            continue;
        }
        if lambda == 0 {
            break;
        }
        let mut domain: Vec<usize> = (0..k).collect();
        loop {
            let mut values = vec![0u32; k];
            loop {
                let graph: Vec<(u32, u32)> =
                    domain.iter().zip(&values).map(|(&d, &v)| (d as u32, v)).collect();
                elements.push(PartialFn(graph));
                // odometer over value rows, last position fastest
                let mut pos = k;
                let mut wrapped = false;
                loop {
                    if pos == 0 {
                        wrapped = true;
                        break;
                    }
                    pos -= 1;
                    values[pos] += 1;
                    if (values[pos] as usize) < lambda {
                        break;
                    }
                    values[pos] = 0;
                }
                if wrapped {
                    break;
                }
            }
            // next domain combination
            let mut advanced = false;
            let mut i = k;
            while i > 0 {
                i -= 1;
                if domain[i] < i + kappa - k {
                    domain[i] += 1;
                    for j in i + 1..k {
                        domain[j] = domain[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    debug_assert_eq!(elements.len() as u128, count);
    Ok(PartialFunctionPoset { kappa, lambda, mu, elements })
}

impl PartialFunctionPoset {
    /// The reverse-inclusion preorder (in fact a partial order).
    pub fn to_preorder(&self) -> FinitePreorder {
        let n = self.elements.len();
        let labels: Vec<String> = self.elements.iter().map(|e| e.label()).collect();
        let mut leq = vec![false; n * n];
        for (i, p) in self.elements.iter().enumerate() {
            for (j, q) in self.elements.iter().enumerate() {
                if p.extends(q) {
                    leq[i * n + j] = true;
                }
            }
        }
        FinitePreorder::from_leq_matrix(labels, leq).expect("reverse inclusion is a preorder")
    }

    /// The poset's native compatibility: the union of the two conditions is
    /// a function. At finite mu this can be strictly weaker than having a
    /// common extension inside the poset, whose domain bound may not have
    /// room for the union; the chain-condition arithmetic is about this
    /// notion.
    pub fn compatible(&self, i: usize, j: usize) -> Result<bool, PosetError> {
        let get = |k: usize| self.elements.get(k).ok_or(PosetError::IndexOutOfRange(k));
        Ok(get(i)?.union_is_function(get(j)?))
    }

    /// Exact maximum antichain under the union-is-function compatibility,
    /// with the index-lexicographically least witness.
    pub fn max_antichain(&self, cap: usize) -> Result<AntichainReport, PosetError> {
        let n = self.elements.len();
        let cap = cap.min(ANTICHAIN_HARD_LIMIT);
        if n > cap {
            return Err(PosetError::CapExceeded { n: n as u128, cap });
        }
        if n == 0 {
            return Ok(AntichainReport { size: 0, witness: vec![], witness_labels: vec![] });
        }
        let mut adj = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                if i != j && !self.elements[i].union_is_function(&self.elements[j]) {
                    adj[i] |= 1 << j;
                }
            }
        }
        let mut best = 0usize;
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        bb_max_clique(&adj, 0, all, &mut best);
        let mut chosen = Vec::new();
        let found = lex_first_clique(&adj, best, all, &mut chosen);
        debug_assert!(found);
        let witness_labels = chosen.iter().map(|&i| self.elements[i].label()).collect();
        Ok(AntichainReport { size: best, witness: chosen, witness_labels })
    }
}

/// Full-support product: tuples, coordinatewise order, lexicographic
/// enumeration with the last factor fastest. The empty product is the
/// one-element preorder.
pub fn product(factors: &[FinitePreorder], cap: usize) -> Result<FinitePreorder, PosetError> {
    let mut size: u128 = 1;
    for f in factors {
        size = size.saturating_mul(f.n() as u128);
    }
    if size > cap as u128 {
        return Err(PosetError::CapExceeded { n: size, cap });
    }
    let size = size as usize;
    let k = factors.len();
    let mut tuples: Vec<Vec<usize>> = Vec::with_capacity(size);
    if size > 0 {
        let mut cur = vec![0usize; k];
        loop {
            tuples.push(cur.clone());
            let mut pos = k;
            let mut wrapped = false;
            loop {
                if pos == 0 {
                    wrapped = true;
                    break;
                }
                pos -= 1;
                cur[pos] += 1;
                if cur[pos] < factors[pos].n() {
                    break;
                }
                cur[pos] = 0;
            }
            if wrapped || k == 0 {
                break;
            }
        }
    }
    debug_assert_eq!(tuples.len(), size);

    let labels: Vec<String> = tuples
        .iter()
        .map(|t| {
            let inner: Vec<&str> = t.iter().zip(factors).map(|(&i, f)| f.label(i)).collect();
            format!("({})", inner.join(","))
        })
        .collect();
    let mut leq = vec![false; size * size];
    for (i, a) in tuples.iter().enumerate() {
        for (j, b) in tuples.iter().enumerate() {
            if a.iter().zip(b).enumerate().all(|(c, (&x, &y))| factors[c].leq(x, y)) {
                leq[i * size + j] = true;
            }
        }
    }
    FinitePreorder::from_leq_matrix(labels, leq)
}

/// Parses a poset file: `elem LABEL` and `le LABEL LABEL` lines, `#`
/// comments. The relation must be given in full, self-pairs included.
pub fn parse_poset_file(text: &str) -> Result<FinitePreorder, PosetError> {
    let mut labels: Vec<String> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let find = |labels: &[String], name: &str| -> Result<usize, PosetError> {
        labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| PosetError::UnknownLabel(name.to_string()))
    };
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut words = line.split_whitespace();
        let head = words.next().unwrap();
        let rest: Vec<&str> = words.collect();
        match head {
            "elem" => {
                if rest.len() != 1 {
                    return Err(PosetError::Parse {
                        line: lineno + 1,
                        msg: "expected `elem LABEL`".into(),
                    });
                }
                labels.push(rest[0].to_string());
            }
            "le" => {
                if rest.len() != 2 {
                    return Err(PosetError::Parse {
                        line: lineno + 1,
                        msg: "expected `le LABEL LABEL`".into(),
                    });
                }
                pairs.push((find(&labels, rest[0])?, find(&labels, rest[1])?));
            }
            other => {
                return Err(PosetError::Parse {
                    line: lineno + 1,
                    msg: format!("unknown directive `{other}`"),
                });
            }
        }
    }
    FinitePreorder::new(labels, &pairs)
}

pub fn render_poset_file(p: &FinitePreorder) -> String {
    let mut out = String::new();
    for l in p.labels() {
        out.push_str(&format!("elem {l}\n"));
    }
    for a in 0..p.n() {
        for b in 0..p.n() {
            if p.leq(a, b) {
                out.push_str(&format!("le {} {}\n", p.label(a), p.label(b)));
            }
        }
    }
    out
}
