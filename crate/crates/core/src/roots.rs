//! Root systems of types A, B, C, D and G2: positive roots, strings,
//! Cartan integers, the nested subsystem chain and its maximal roots.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupType {
    A,
    B,
    C,
    D,
    G2,
}

impl GroupType {
    pub const ALL: [GroupType; 5] = [GroupType::A, GroupType::B, GroupType::C, GroupType::D, GroupType::G2];
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupType::A => "A",
            GroupType::B => "B",
            GroupType::C => "C",
            GroupType::D => "D",
            GroupType::G2 => "G2",
        };
        f.write_str(s)
    }
}

impl FromStr for GroupType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(GroupType::A),
            "B" => Ok(GroupType::B),
            "C" => Ok(GroupType::C),
            "D" => Ok(GroupType::D),
            "G2" | "G" => Ok(GroupType::G2),
            other => Err(Error::Parse(format!("unknown group type '{}'", other))),
        }
    }
}

/// A root as an integer vector over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Root {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c >= 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i64) -> Root {
        Root(self.0.iter().map(|c| c * k).collect())
    }

    /// True when one root is a rational multiple of the other.
    pub fn proportional(&self, other: &Root) -> bool {
        let n = self.0.len();
        (0..n).all(|i| (0..n).all(|j| self.0[i] * other.0[j] == self.0[j] * other.0[i]))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{}a{}", sign, i + 1)?;
            } else {
                write!(f, "{}{}a{}", sign, mag, i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A root addressed by its position in the positive-root list plus a sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedRoot {
    pub index: usize,
    pub negative: bool,
}

impl SignedRoot {
    pub fn pos(index: usize) -> SignedRoot {
        SignedRoot { index, negative: false }
    }

    pub fn neg(index: usize) -> SignedRoot {
        SignedRoot { index, negative: true }
    }

    pub fn opposite(self) -> SignedRoot {
        SignedRoot {
            index: self.index,
            negative: !self.negative,
        }
    }
}

/// Maximal roots `γ_{k+1}, ..., γ_l` (stored positive).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaSet {
    pub k: usize,
    pub roots: Vec<Root>,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    group_type: GroupType,
    rank: usize,
    positive_roots: Vec<Root>,
    cartan: Vec<Vec<i64>>,
    /// Squared lengths of the simple roots.
    sq_len: Vec<i64>,
    rep_dim: usize,
    index: HashMap<Root, usize>,
}

pub fn cartan_matrix(group_type: GroupType, rank: usize) -> Result<Vec<Vec<i64>>> {
    let l = rank;
    let min = match group_type {
        GroupType::A => 1,
        GroupType::B | GroupType::C | GroupType::D => 2,
        GroupType::G2 => 2,
    };
    if l < min || (group_type == GroupType::G2 && l != 2) {
        return Err(Error::InvalidRank(format!("{}{} is not supported", group_type, l)));
    }
    let mut c = vec![vec![0i64; l]; l];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    match group_type {
        GroupType::G2 => {
            c[0][1] = -1;
            c[1][0] = -3;
        }
        GroupType::D => {
            for i in 0..l.saturating_sub(3) {
                c[i][i + 1] = -1;
                c[i + 1][i] = -1;
            }
            if l >= 3 {
                for leaf in [l - 2, l - 1] {
                    c[l - 3][leaf] = -1;
                    c[leaf][l - 3] = -1;
                }
            }
        }
        _ => {
            for i in 0..l - 1 {
                c[i][i + 1] = -1;
                c[i + 1][i] = -1;
            }
            if group_type == GroupType::B {
                c[l - 2][l - 1] = -2;
            } else if group_type == GroupType::C {
                c[l - 1][l - 2] = -2;
            }
        }
    }
    Ok(c)
}

fn simple_lengths(group_type: GroupType, l: usize) -> Vec<i64> {
    match group_type {
        GroupType::A | GroupType::D => vec![2; l],
        GroupType::B => {
            let mut v = vec![4; l];
            v[l - 1] = 2;
            v
        }
        GroupType::C => {
            let mut v = vec![2; l];
            v[l - 1] = 4;
            v
        }
        GroupType::G2 => vec![2, 6],
    }
}

pub fn build_root_system(group_type: GroupType, rank: usize) -> Result<RootSystem> {
    let cartan = cartan_matrix(group_type, rank)?;
    let l = rank;
    let rep_dim = match group_type {
        GroupType::A => l + 1,
        GroupType::B => 2 * l + 1,
        GroupType::C | GroupType::D => 2 * l,
        GroupType::G2 => 7,
    };

    // String closure: grow roots level by level. For a positive root β and a
    // simple α_i, β + α_i is a root iff q = r - <β, α_i> > 0 where r is the
    // length of the α_i-string below β.
    let mut known: HashSet<Root> = HashSet::new();
    let mut level: Vec<Root> = (0..l).map(|i| Root::simple(l, i)).collect();
    let mut all = Vec::new();
    while !level.is_empty() {
        for r in &level {
            known.insert(r.clone());
        }
        let mut next = Vec::new();
        for beta in &level {
            for i in 0..l {
                let ai = Root::simple(l, i);
                let mut r = 0;
                let mut probe = beta.sub(&ai);
                while known.contains(&probe) {
                    r += 1;
                    probe = probe.sub(&ai);
                }
                let pairing: i64 = (0..l).map(|j| beta.0[j] * cartan[j][i]).sum();
                if r - pairing > 0 {
                    let up = beta.add(&ai);
                    if !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        all.append(&mut level);
        level = next;
    }

    let stratum = |r: &Root| l - r.0.iter().position(|&c| c != 0).expect("nonzero root");
    if group_type == GroupType::A {
        all.sort_by_key(|r| (stratum(r), r.height()));
    } else {
        all.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    }
    let index = all.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();
    Ok(RootSystem {
        group_type,
        rank,
        positive_roots: all,
        cartan,
        sq_len: simple_lengths(group_type, l),
        rep_dim,
        index,
    })
}

impl RootSystem {
    pub fn group_type(&self) -> GroupType {
        self.group_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rep_dim(&self) -> usize {
        self.rep_dim
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple(&self, i: usize) -> Root {
        Root::simple(self.rank, i)
    }

    /// Position of the simple root `α_{i+1}` in the positive-root list.
    pub fn simple_index(&self, i: usize) -> usize {
        self.index[&self.simple(i)]
    }

    pub fn root(&self, s: SignedRoot) -> Root {
        let r = &self.positive_roots[s.index];
        if s.negative {
            r.neg()
        } else {
            r.clone()
        }
    }

    pub fn find(&self, r: &Root) -> Option<SignedRoot> {
        if r.0.len() != self.rank || r.is_zero() {
            return None;
        }
        if r.is_positive() {
            self.index.get(r).map(|&i| SignedRoot::pos(i))
        } else {
            self.index.get(&r.neg()).map(|&i| SignedRoot::neg(i))
        }
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.find(r).is_some()
    }

    /// All roots, positive first then negative, each in list order.
    pub fn all_signed(&self) -> impl Iterator<Item = SignedRoot> + '_ {
        let n = self.num_positive();
        (0..n).map(SignedRoot::pos).chain((0..n).map(SignedRoot::neg))
    }

    /// Invariant form with squared root lengths as stored.
    pub fn inner(&self, a: &Root, b: &Root) -> i64 {
        let l = self.rank;
        let mut acc = 0;
        for i in 0..l {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..l {
                // (α_i, α_j) = <α_i, α_j> |α_j|^2 / 2
                acc += a.0[i] * b.0[j] * self.cartan[i][j] * self.sq_len[j] / 2;
            }
        }
        acc
    }

    pub fn squared_length(&self, a: &Root) -> i64 {
        self.inner(a, a)
    }

    /// `<α, β> = 2(α, β) / (β, β)`.
    pub fn cartan_integer(&self, alpha: &Root, beta: &Root) -> i64 {
        2 * self.inner(alpha, beta) / self.inner(beta, beta)
    }

    /// The β-string through α: largest `r`, `q` with `α - rβ ... α + qβ`
    /// all roots.
    pub fn root_string(&self, alpha: &Root, beta: &Root) -> Result<(i64, i64)> {
        if !self.is_root(alpha) || !self.is_root(beta) {
            return Err(Error::DegenerateInput("root_string needs two roots".into()));
        }
        if alpha.proportional(beta) {
            return Err(Error::DegenerateInput(format!(
                "{} and {} are proportional",
                alpha, beta
            )));
        }
        let mut r = 0;
        while self.is_root(&alpha.sub(&beta.scaled(r + 1))) {
            r += 1;
        }
        let mut q = 0;
        while self.is_root(&alpha.add(&beta.scaled(q + 1))) {
            q += 1;
        }
        Ok((r, q))
    }

    /// Positive roots supported on the last `k` simple roots.
    pub fn subsystem(&self, k: usize) -> Vec<&Root> {
        let cut = self.rank - k;
        self.positive_roots
            .iter()
            .filter(|r| r.0[..cut].iter().all(|&c| c == 0))
            .collect()
    }

    pub fn highest_root(&self) -> &Root {
        self.positive_roots
            .iter()
            .max_by_key(|r| r.height())
            .expect("nonempty root system")
    }

    /// `γ_1, ..., γ_l`: `γ_k` is the unique maximal-height root of the
    /// subsystem on the last `k` nodes among roots not already chosen.
    pub fn gammas(&self) -> Vec<Root> {
        let mut chosen: Vec<Root> = Vec::with_capacity(self.rank);
        for k in 1..=self.rank {
            let sub: Vec<&Root> = self
                .subsystem(k)
                .into_iter()
                .filter(|r| !chosen.contains(r))
                .collect();
            let top = sub.iter().map(|r| r.height()).max().expect("nonempty subsystem");
            let maxima: Vec<&&Root> = sub.iter().filter(|r| r.height() == top).collect();
            assert_eq!(maxima.len(), 1, "maximal root of subsystem {} is not unique", k);
            chosen.push((*maxima[0]).clone());
        }
        chosen
    }

    /// `Γ_0, ..., Γ_l` with `Γ_k = {γ_{k+1}, ..., γ_l}`.
    pub fn gamma_chain(&self) -> Vec<GammaSet> {
        let g = self.gammas();
        (0..=self.rank)
            .map(|k| GammaSet {
                k,
                roots: g[k..].to_vec(),
            })
            .collect()
    }

    /// Roots `γ` carrying the parameters: `t_i` multiplies `X_{-γ}` for the
    /// i-th entry.
    pub fn parameter_roots(&self) -> Vec<Root> {
        let mut g = self.gammas();
        match self.group_type {
            GroupType::A | GroupType::G2 => {
                g.reverse();
                g
            }
            _ => g,
        }
    }

    /// The two admissible parameter-root choices for G2, in parameter order
    /// (highest root first).
    pub fn g2_gamma_candidates(&self) -> Result<Vec<Vec<Root>>> {
        if self.group_type != GroupType::G2 {
            return Err(Error::OutOfScope("candidate search is specific to G2".into()));
        }
        let theta = self.highest_root().clone();
        Ok(vec![
            vec![theta.clone(), self.simple(0)],
            vec![theta, self.simple(1)],
        ])
    }

    fn check_stratum(&self, k: usize, m: usize) -> Result<()> {
        if self.group_type != GroupType::A {
            return Err(Error::OutOfScope("strata are defined for type A".into()));
        }
        if m < 1 || m > k || k > self.rank {
            return Err(Error::DegenerateInput(format!(
                "need 1 <= m <= k <= {}, got k={}, m={}",
                self.rank, k, m
            )));
        }
        Ok(())
    }

    /// Roots of `Φ_k⁺ \ Φ_{k-1}⁺`.
    pub fn stratum(&self, k: usize) -> Vec<&Root> {
        let prev = if k > 0 { self.subsystem(k - 1) } else { Vec::new() };
        self.subsystem(k)
            .into_iter()
            .filter(|r| !prev.contains(r))
            .collect()
    }

    /// The unique root of height `m` in `Φ_k⁺ \ Φ_{k-1}⁺` (type A).
    pub fn stratum_root(&self, k: usize, m: usize) -> Result<Root> {
        self.check_stratum(k, m)?;
        let found: Vec<&Root> = self
            .stratum(k)
            .into_iter()
            .filter(|r| r.height() == m as i64)
            .collect();
        match found.as_slice() {
            [r] => Ok((*r).clone()),
            _ => Err(Error::VerificationFailed(format!(
                "stratum {} has {} roots of height {}",
                k,
                found.len(),
                m
            ))),
        }
    }

    /// Index `s` of the unique simple root with `α + α_s` in the same
    /// stratum as the height-`m` root `α` of stratum `k`.
    pub fn next_simple(&self, k: usize, m: usize) -> Result<usize> {
        self.check_stratum(k, m)?;
        if m == k {
            return Err(Error::MaximalRoot(format!(
                "height {} is the top of stratum {}",
                m, k
            )));
        }
        let alpha = self.stratum_root(k, m)?;
        let stratum = self.stratum(k);
        let hits: Vec<usize> = (0..self.rank)
            .filter(|&s| stratum.contains(&&alpha.add(&self.simple(s))))
            .collect();
        match hits.as_slice() {
            [s] => Ok(*s),
            _ => Err(Error::VerificationFailed(format!(
                "expected one successor of {} in stratum {}, found {}",
                alpha,
                k,
                hits.len()
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;


    /// Independent oracle: close the simple roots under simple reflections
    /// `s_i(β) = β - <β, α_i> α_i`.
    fn reflection_closure(group_type: GroupType, rank: usize) -> HashSet<Root> {
        let c = cartan_matrix(group_type, rank).unwrap();
        let mut seen: HashSet<Root> = (0..rank).map(|i| Root::simple(rank, i)).collect();
        let mut stack: Vec<Root> = seen.iter().cloned().collect();
        while let Some(b) = stack.pop() {
            for i in 0..rank {
                let p: i64 = (0..rank).map(|j| b.0[j] * c[j][i]).sum();
                let mut v = b.clone();
                v.0[i] -= p;
                if seen.insert(v.clone()) {
                    stack.push(v);
                }
            }
        }
        seen
    }

    fn cases() -> Vec<(GroupType, usize)> {
        let mut v = vec![(GroupType::G2, 2)];
        for l in 1..=5 {
            v.push((GroupType::A, l));
        }
        for l in 2..=4 {
            v.push((GroupType::B, l));
            v.push((GroupType::C, l));
            v.push((GroupType::D, l));
        }
        v
    }

    #[test]
    fn closure_matches_reflection_oracle() {
        for (t, l) in cases() {
            let rs = build_root_system(t, l).unwrap();
            let oracle = reflection_closure(t, l);
            let pos: HashSet<Root> = oracle.iter().filter(|r| r.is_positive()).cloned().collect();
            let ours: HashSet<Root> = rs.positive_roots().iter().cloned().collect();
            assert_eq!(ours, pos, "{}{}", t, l);
            assert_eq!(oracle.len(), 2 * ours.len(), "{}{}", t, l);
        }
    }

    #[test]
    fn positive_root_counts() {
        for (t, l) in cases() {
            let n = build_root_system(t, l).unwrap().num_positive();
            let expected = match t {
                GroupType::A => l * (l + 1) / 2,
                GroupType::B | GroupType::C => l * l,
                GroupType::D => l * (l - 1),
                GroupType::G2 => 6,
            };
            assert_eq!(n, expected, "{}{}", t, l);
        }
    }

    #[test]
    fn a2_roots() {
        let rs = build_root_system(GroupType::A, 2).unwrap();
        let got: HashSet<Root> = rs.positive_roots().iter().cloned().collect();
        let want: HashSet<Root> = [Root(vec![1, 0]), Root(vec![0, 1]), Root(vec![1, 1])].into();
        assert_eq!(got, want);
    }

    #[test]
    fn type_a_reproduces_interval_description() {
        for l in 1..=5 {
            let rs = build_root_system(GroupType::A, l).unwrap();
            let mut want = HashSet::new();
            for s in 0..l {
                for t in s..l {
                    let mut v = vec![0; l];
                    for c in v.iter_mut().take(t + 1).skip(s) {
                        *c = 1;
                    }
                    want.insert(Root(v));
                }
            }
            let got: HashSet<Root> = rs.positive_roots().iter().cloned().collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn invalid_ranks() {
        assert!(matches!(build_root_system(GroupType::A, 0), Err(Error::InvalidRank(_))));
        assert!(matches!(build_root_system(GroupType::B, 1), Err(Error::InvalidRank(_))));
        assert!(matches!(build_root_system(GroupType::G2, 3), Err(Error::InvalidRank(_))));
    }

    #[test]
    fn strings_in_a2_and_g2() {
        let rs = build_root_system(GroupType::A, 2).unwrap();
        let a1 = rs.simple(0);
        let a2 = rs.simple(1);
        assert_eq!(rs.root_string(&a1, &a2).unwrap(), (0, 1));
        assert_eq!(rs.root_string(&a1.add(&a2), &a2).unwrap(), (1, 0));
        assert!(matches!(rs.root_string(&a1, &a1.neg()), Err(Error::DegenerateInput(_))));

        let g = build_root_system(GroupType::G2, 2).unwrap();
        let (r, q) = g.root_string(&g.simple(0), &g.simple(1)).unwrap();
        assert_eq!((r, q), (0, 1));
        let (r, q) = g.root_string(&g.simple(1), &g.simple(0)).unwrap();
        assert_eq!((r, q), (0, 3));
    }

    #[test]
    fn cartan_integer_equals_string_difference() {
        for (t, l) in cases().into_iter().filter(|&(_, l)| l <= 4) {
            let rs = build_root_system(t, l).unwrap();
            let roots: Vec<Root> = rs.all_signed().map(|s| rs.root(s)).collect();
            for a in &roots {
                assert_eq!(rs.cartan_integer(a, a), 2);
                assert_eq!(rs.cartan_integer(a, &a.neg()), -2);
                for b in &roots {
                    if a.proportional(b) {
                        continue;
                    }
                    let (r, q) = rs.root_string(a, b).unwrap();
                    assert_eq!(rs.cartan_integer(a, b), r - q, "{}{} {} {}", t, l, a, b);
                }
            }
        }
    }

    #[test]
    fn a3_gamma_chain() {
        let rs = build_root_system(GroupType::A, 3).unwrap();
        let chain = rs.gamma_chain();
        assert_eq!(
            chain[0].roots,
            vec![Root(vec![0, 0, 1]), Root(vec![0, 1, 1]), Root(vec![1, 1, 1])]
        );
        assert!(chain[3].roots.is_empty());
    }

    #[test]
    fn gammas_are_maximal_in_their_subsystem() {
        for (t, l) in cases() {
            let rs = build_root_system(t, l).unwrap();
            let g = rs.gammas();
            assert_eq!(g.len(), l);
            for (i, gamma) in g.iter().enumerate() {
                let sub = rs.subsystem(i + 1);
                assert!(sub.contains(&gamma));
                for a in sub {
                    let s = gamma.add(a);
                    assert!(!(rs.is_root(&s) && rs.subsystem(i + 1).contains(&&s)));
                }
            }
            if t == GroupType::A {
                assert_eq!(g[l - 1].height(), l as i64);
            }
        }
    }

    #[test]
    fn strata_partition_type_a() {
        for l in 1..=5 {
            let rs = build_root_system(GroupType::A, l).unwrap();
            let mut seen = HashSet::new();
            for k in 1..=l {
                let st = rs.stratum(k);
                let heights: HashSet<i64> = st.iter().map(|r| r.height()).collect();
                assert_eq!(st.len(), k);
                assert_eq!(heights, (1..=k as i64).collect());
                for r in st {
                    assert!(seen.insert(r.clone()));
                }
            }
            assert_eq!(seen.len(), rs.num_positive());
        }
    }

    #[test]
    fn stratum_queries_follow_interval_formula() {
        for l in 1..=5 {
            let rs = build_root_system(GroupType::A, l).unwrap();
            for k in 1..=l {
                for m in 1..=k {
                    let mut v = vec![0; l];
                    for c in v.iter_mut().skip(l - k).take(m) {
                        *c = 1;
                    }
                    assert_eq!(rs.stratum_root(k, m).unwrap(), Root(v));
                    if m < k {
                        assert_eq!(rs.next_simple(k, m).unwrap(), l - k + m);
                    } else {
                        assert!(matches!(rs.next_simple(k, m), Err(Error::MaximalRoot(_))));
                    }
                }
            }
        }
        let rs = build_root_system(GroupType::A, 3).unwrap();
        assert_eq!(rs.stratum_root(2, 1).unwrap(), Root(vec![0, 1, 0]));
        assert_eq!(rs.stratum_root(3, 3).unwrap(), Root(vec![1, 1, 1]));
        assert_eq!(rs.next_simple(2, 1).unwrap(), 2);
    }

    #[test]
    fn lowering_a_stratum_successor() {
        for l in 2..=5 {
            let rs = build_root_system(GroupType::A, l).unwrap();
            for k in 1..=l {
                for m in 1..k {
                    let a = rs.stratum_root(k, m).unwrap();
                    let beta = a.add(&rs.simple(rs.next_simple(k, m).unwrap()));
                    for s in 0..l {
                        let b = beta.sub(&rs.simple(s));
                        if rs.is_root(&b) {
                            assert!(b == a || rs.subsystem(k - 1).contains(&&b));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parameter_roots_for_type_a_follow_companion_layout() {
        let rs = build_root_system(GroupType::A, 2).unwrap();
        assert_eq!(rs.parameter_roots(), vec![Root(vec![1, 1]), Root(vec![0, 1])]);
    }

    #[test]
    fn d_and_g2_gammas() {
        let rs = build_root_system(GroupType::D, 4).unwrap();
        let g = rs.gammas();
        assert_eq!(g[0], Root(vec![0, 0, 0, 1]));
        assert_eq!(g[1], Root(vec![0, 0, 1, 0]));
        assert_eq!(g[2], Root(vec![0, 1, 1, 1]));
        assert_eq!(g[3], Root(vec![1, 2, 1, 1]));
        let g2 = build_root_system(GroupType::G2, 2).unwrap();
        assert_eq!(g2.gammas(), vec![Root(vec![0, 1]), Root(vec![3, 2])]);
        assert_eq!(g2.g2_gamma_candidates().unwrap().len(), 2);
    }
}
