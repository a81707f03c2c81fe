//! Permutation subgroups of S_n and their linear (degree-one) characters.
//!
//! Groups are built by closure from generators. Elements are kept in BFS
//! order from the generators with the identity first, and characters are
//! stored as one complex value per element aligned with that order.

use std::collections::{HashMap, HashSet, VecDeque};
use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::C64;

/// Default cap on group order (8!).
pub const DEFAULT_GROUP_CAP: usize = 40320;

const CHARACTER_TOL: f64 = 1e-12;

/// A bijection of {0, …, n−1}, stored as its images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection on 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// The cycle (c_0 c_1 … c_k) acting on degree `n`.
    pub fn cycle(n: usize, cycle: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = HashSet::new();
        for (idx, &c) in cycle.iter().enumerate() {
            if c >= n || !seen.insert(c) {
                return Err(Error::InvalidPermutation(format!(
                    "cycle {cycle:?} is not valid for degree {n}"
                )));
            }
            images[c] = cycle[(idx + 1) % cycle.len()];
        }
        Ok(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`, i.e. i ↦ self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// +1 for even permutations, −1 for odd.
    pub fn parity(&self) -> i8 {
        let n = self.images.len();
        let mut visited = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if visited[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                i = self.images[i];
            }
        }
        if (n - cycles).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// A finite subgroup of S_n.
#[derive(Debug, Clone, PartialEq)]
pub struct PermutationGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generator_indices: Vec<usize>,
    index: HashMap<Permutation, usize>,
}

impl PermutationGroup {
    /// Smallest subgroup of S_n containing `generators`.
    pub fn closure(degree: usize, generators: &[Permutation], cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::InvalidArgument(
                "group cap must be at least 1".into(),
            ));
        }
        for g in generators {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {:?} has degree {}, expected {degree}",
                    g.images,
                    g.degree()
                )));
            }
        }
        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = elements[x].compose(g);
                if index.contains_key(&y) {
                    continue;
                }
                if elements.len() == cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                index.insert(y.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(y);
            }
        }
        let mut generator_indices: Vec<usize> = generators.iter().map(|g| index[g]).collect();
        generator_indices.dedup();
        Ok(Self {
            degree,
            elements,
            generator_indices,
            index,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::closure(degree, &[], 1).expect("trivial group")
    }

    /// S_n generated by the n-cycle and the transposition (0 1).
    pub fn symmetric(degree: usize) -> Result<Self> {
        if degree <= 1 {
            return Ok(Self::trivial(degree));
        }
        let cycle = Permutation::cycle(degree, &(0..degree).collect::<Vec<_>>())?;
        let swap = Permutation::cycle(degree, &[0, 1])?;
        Self::closure(degree, &[cycle, swap], DEFAULT_GROUP_CAP)
    }

    /// C_n generated by the full n-cycle (0 1 … n−1).
    pub fn cyclic(degree: usize) -> Result<Self> {
        if degree <= 1 {
            return Ok(Self::trivial(degree));
        }
        let cycle = Permutation::cycle(degree, &(0..degree).collect::<Vec<_>>())?;
        Self::closure(degree, &[cycle], DEFAULT_GROUP_CAP)
    }

    /// The order-two group generated by the transposition (0 1).
    pub fn transposition(degree: usize) -> Result<Self> {
        let swap = Permutation::cycle(degree, &[0, 1])?;
        Self::closure(degree, &[swap], DEFAULT_GROUP_CAP)
    }

    /// Validates an explicit element list. The first element need not be the
    /// identity, but the list must be duplicate-free and closed.
    pub fn from_elements(degree: usize, elements: Vec<Permutation>) -> Result<Self> {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if e.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "element {i} has degree {}, expected {degree}",
                    e.degree()
                )));
            }
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::InvalidArgument(format!(
                    "duplicate group element at index {i}"
                )));
            }
        }
        if !index.contains_key(&Permutation::identity(degree)) {
            return Err(Error::InvalidArgument("group lacks the identity".into()));
        }
        // Greedy generating set; also proves closure since the span must
        // reproduce exactly the listed set.
        let mut generator_indices = Vec::new();
        let mut span: HashSet<Permutation> = HashSet::from([Permutation::identity(degree)]);
        for (i, e) in elements.iter().enumerate() {
            if span.contains(e) {
                continue;
            }
            generator_indices.push(i);
            let gens: Vec<Permutation> = generator_indices
                .iter()
                .map(|&g| elements[g].clone())
                .collect();
            let sub = Self::closure(degree, &gens, elements.len())
                .map_err(|_| Error::InvalidArgument("element list is not closed".into()))?;
            span = sub.elements.into_iter().collect();
            if let Some(outside) = span.iter().find(|p| !index.contains_key(*p)) {
                return Err(Error::InvalidArgument(format!(
                    "element list is not closed: product {:?} is missing",
                    outside.images
                )));
            }
        }
        if span.len() != elements.len() {
            return Err(Error::InvalidArgument("element list is not closed".into()));
        }
        Ok(Self {
            degree,
            elements,
            generator_indices,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn position(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn identity_index(&self) -> usize {
        self.index[&Permutation::identity(self.degree)]
    }
}

/// A degree-one character χ: G → U(1), one value per group element.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearCharacter {
    values: Vec<C64>,
}

impl LinearCharacter {
    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn value(&self, element: usize) -> C64 {
        self.values[element]
    }

    /// χ ≡ 1 on G.
    pub fn trivial(group: &PermutationGroup) -> Self {
        Self {
            values: vec![C64::new(1.0, 0.0); group.len()],
        }
    }

    /// χ(σ) = sgn(σ).
    pub fn sign(group: &PermutationGroup) -> Self {
        Self {
            values: group
                .elements()
                .iter()
                .map(|p| C64::new(f64::from(p.parity()), 0.0))
                .collect(),
        }
    }

    /// χ(g^j) = exp(2πi·jk/m) on a cyclic group of order m generated by `generator`.
    pub fn cyclic(group: &PermutationGroup, generator: &Permutation, k: usize) -> Result<Self> {
        let m = group.len();
        if k >= m {
            return Err(Error::InvalidArgument(format!(
                "cyclic character index {k} must be below the group order {m}"
            )));
        }
        let mut values = vec![None; m];
        let mut power = Permutation::identity(group.degree());
        let mut order = 0;
        loop {
            let Some(pos) = group.position(&power) else {
                return Err(Error::NotCyclic { order, size: m });
            };
            if values[pos].is_some() {
                break;
            }
            let angle = 2.0 * PI * ((order * k) % m) as f64 / m as f64;
            values[pos] = Some(C64::from_polar(1.0, angle));
            order += 1;
            power = power.compose(generator);
        }
        if order != m {
            return Err(Error::NotCyclic { order, size: m });
        }
        Ok(Self {
            values: values.into_iter().map(|v| v.expect("filled")).collect(),
        })
    }

    /// Cyclic character using the group's single designated generator.
    pub fn cyclic_default(group: &PermutationGroup, k: usize) -> Result<Self> {
        let generator = match group.generator_indices() {
            [] => Permutation::identity(group.degree()),
            [g] => group.elements()[*g].clone(),
            gens => {
                return Err(Error::NotCyclic {
                    order: gens.len(),
                    size: group.len(),
                })
            }
        };
        Self::cyclic(group, &generator, k)
    }

    /// Accepts `values` iff they form a linear character of `group`.
    pub fn validate(group: &PermutationGroup, values: Vec<C64>) -> Result<Self> {
        if values.len() != group.len() {
            return Err(Error::CharacterLength {
                expected: group.len(),
                got: values.len(),
            });
        }
        for (i, v) in values.iter().enumerate() {
            if !v.re.is_finite() || !v.im.is_finite() || (v.norm() - 1.0).abs() > CHARACTER_TOL {
                return Err(Error::NotUnitModulus(i));
            }
        }
        let id = group.identity_index();
        if (values[id] - C64::new(1.0, 0.0)).norm() > CHARACTER_TOL {
            return Err(Error::NotAHomomorphism(id, id));
        }
        // Checking χ(xg) = χ(x)χ(g) over a generating set covers all pairs.
        let elements = group.elements();
        for (x, px) in elements.iter().enumerate() {
            for &g in group.generator_indices() {
                let xg = group
                    .position(&px.compose(&elements[g]))
                    .expect("group is closed");
                if (values[xg] - values[x] * values[g]).norm() > CHARACTER_TOL {
                    return Err(Error::NotAHomomorphism(x, g));
                }
            }
        }
        Ok(Self { values })
    }
}

/// A group together with a linear character on it.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupCharacter {
    pub group: Arc<PermutationGroup>,
    pub character: Arc<LinearCharacter>,
}

impl GroupCharacter {
    pub fn new(group: PermutationGroup, character: LinearCharacter) -> Result<Self> {
        if character.values.len() != group.len() {
            return Err(Error::CharacterLength {
                expected: group.len(),
                got: character.values.len(),
            });
        }
        Ok(Self {
            group: Arc::new(group),
            character: Arc::new(character),
        })
    }

    /// C_n with the character g^j ↦ exp(2πi·jk/n).
    pub fn cyclic(n: usize, k: usize) -> Result<Self> {
        let group = PermutationGroup::cyclic(n)?;
        let character = LinearCharacter::cyclic_default(&group, k)?;
        Self::new(group, character)
    }

    /// ⟨(0 1)⟩ with χ((0 1)) = −1.
    pub fn transposition_sign(n: usize) -> Result<Self> {
        let group = PermutationGroup::transposition(n)?;
        let character = LinearCharacter::sign(&group);
        Self::new(group, character)
    }

    pub fn to_json(&self) -> GroupCharacterJson {
        GroupCharacterJson {
            n: self.group.degree(),
            elements: self
                .group
                .elements()
                .iter()
                .map(|p| p.images().to_vec())
                .collect(),
            character: self
                .character
                .values()
                .iter()
                .map(|z| ComplexJson { re: z.re, im: z.im })
                .collect(),
        }
    }

    pub fn from_json(json: GroupCharacterJson) -> Result<Self> {
        let elements = json
            .elements
            .into_iter()
            .map(Permutation::new)
            .collect::<Result<Vec<_>>>()?;
        let group = PermutationGroup::from_elements(json.n, elements)?;
        let values = json
            .character
            .iter()
            .map(|z| C64::new(z.re, z.im))
            .collect();
        let character = LinearCharacter::validate(&group, values)?;
        Self::new(group, character)
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct ComplexJson {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

/// `{"n": int, "elements": [[images]...], "character": [{"re":…, "im":…}...]}`
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GroupCharacterJson {
    pub n: usize,
    pub elements: Vec<Vec<usize>>,
    pub character: Vec<ComplexJson>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    /// Every permutation of 0..n, by brute force.
    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn empty_generators_give_identity_group() {
        let g = PermutationGroup::closure(3, &[], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.len(), 1);
        assert!(g.elements()[0].is_identity());
    }

    #[test]
    fn cycle_and_transposition_generate_s3() {
        let g = PermutationGroup::closure(3, &[perm(&[1, 2, 0]), perm(&[1, 0, 2])], 100).unwrap();
        assert_eq!(g.len(), 6);
        let mut got: Vec<Vec<usize>> = g.elements().iter().map(|p| p.images().to_vec()).collect();
        got.sort();
        let mut expected = all_perms(3);
        expected.sort();
        assert_eq!(got, expected);
        assert!(g.elements()[0].is_identity());
    }

    #[test]
    fn three_cycle_gives_c3() {
        let g = PermutationGroup::closure(3, &[perm(&[1, 2, 0])], 100).unwrap();
        assert_eq!(g.len(), 3);
    }

    #[test]
    fn closure_respects_cap() {
        let err = PermutationGroup::closure(4, &[perm(&[1, 2, 3, 0]), perm(&[1, 0, 2, 3])], 23);
        assert!(matches!(err, Err(Error::GroupTooLarge { cap: 23 })));
        assert_eq!(PermutationGroup::symmetric(4).unwrap().len(), 24);
    }

    #[test]
    fn invalid_generator_rejected() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        let err = PermutationGroup::closure(3, &[perm(&[1, 0])], 10);
        assert!(matches!(err, Err(Error::InvalidPermutation(_))));
    }

    #[test]
    fn symmetric_group_orders() {
        let mut fact = 1;
        for n in 1..=7 {
            fact *= n;
            assert_eq!(PermutationGroup::symmetric(n).unwrap().len(), fact);
        }
    }

    #[test]
    fn group_closed_and_inverse_closed() {
        for g in [
            PermutationGroup::symmetric(4).unwrap(),
            PermutationGroup::cyclic(5).unwrap(),
            PermutationGroup::transposition(3).unwrap(),
        ] {
            for a in g.elements() {
                assert!(g.position(&a.inverse()).is_some());
                for b in g.elements() {
                    assert!(g.position(&a.compose(b)).is_some());
                }
            }
        }
    }

    #[test]
    fn closure_is_idempotent() {
        let g = PermutationGroup::symmetric(4).unwrap();
        let again = PermutationGroup::closure(4, g.elements(), DEFAULT_GROUP_CAP).unwrap();
        let a: HashSet<_> = g.elements().iter().cloned().collect();
        let b: HashSet<_> = again.elements().iter().cloned().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn sign_values() {
        let s2 = PermutationGroup::symmetric(2).unwrap();
        let chi = LinearCharacter::sign(&s2);
        assert_eq!(chi.values(), &[C64::new(1.0, 0.0), C64::new(-1.0, 0.0)]);
        assert_eq!(perm(&[1, 2, 0]).parity(), 1);
        let c3 = PermutationGroup::cyclic(3).unwrap();
        assert!(LinearCharacter::sign(&c3)
            .values()
            .iter()
            .all(|z| *z == C64::new(1.0, 0.0)));
    }

    #[test]
    fn trivial_values() {
        for g in [
            PermutationGroup::symmetric(2).unwrap(),
            PermutationGroup::symmetric(3).unwrap(),
            PermutationGroup::trivial(3),
        ] {
            let chi = LinearCharacter::trivial(&g);
            assert_eq!(chi.values().len(), g.len());
            assert!(chi.values().iter().all(|z| *z == C64::new(1.0, 0.0)));
        }
    }

    #[test]
    fn cyclic_characters() {
        let c3 = PermutationGroup::cyclic(3).unwrap();
        let k0 = LinearCharacter::cyclic_default(&c3, 0).unwrap();
        assert_eq!(k0, LinearCharacter::trivial(&c3));

        let c2 = PermutationGroup::cyclic(2).unwrap();
        let k1 = LinearCharacter::cyclic_default(&c2, 1).unwrap();
        assert!((k1.value(0) - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((k1.value(1) - C64::new(-1.0, 0.0)).norm() < 1e-15);

        // BFS order of C_3 from g is (id, g, g²).
        let w = C64::from_polar(1.0, 2.0 * PI / 3.0);
        let chi = LinearCharacter::cyclic_default(&c3, 1).unwrap();
        assert!((chi.value(1) - w).norm() < 1e-15);
        assert!((chi.value(2) - w * w).norm() < 1e-15);
    }

    #[test]
    fn cyclic_character_rejects_non_cyclic() {
        let s3 = PermutationGroup::symmetric(3).unwrap();
        let err = LinearCharacter::cyclic(&s3, &perm(&[1, 2, 0]), 1);
        assert!(matches!(err, Err(Error::NotCyclic { order: 3, size: 6 })));
        assert!(LinearCharacter::cyclic_default(&s3, 0).is_err());
    }

    #[test]
    fn validate_character_cases() {
        let s2 = PermutationGroup::symmetric(2).unwrap();
        let ok = LinearCharacter::validate(&s2, vec![C64::new(1.0, 0.0), C64::new(-1.0, 0.0)]);
        assert!(ok.is_ok());
        let bad = LinearCharacter::validate(&s2, vec![C64::new(1.0, 0.0), C64::new(2.0, 0.0)]);
        assert!(matches!(bad, Err(Error::NotUnitModulus(1))));

        let s3 = PermutationGroup::symmetric(3).unwrap();
        let values: Vec<C64> = s3
            .elements()
            .iter()
            .map(|p| {
                let three_cycle = p.parity() == 1 && !p.is_identity();
                C64::new(
                    if three_cycle {
                        -1.0
                    } else {
                        f64::from(p.parity())
                    },
                    0.0,
                )
            })
            .collect();
        assert!(matches!(
            LinearCharacter::validate(&s3, values),
            Err(Error::NotAHomomorphism(_, _))
        ));
    }

    #[test]
    fn presets_conjugate_on_inverse() {
        let cases = [
            GroupCharacter::cyclic(5, 2).unwrap(),
            GroupCharacter::cyclic(4, 1).unwrap(),
            GroupCharacter::transposition_sign(3).unwrap(),
        ];
        for gc in cases {
            for (i, p) in gc.group.elements().iter().enumerate() {
                let inv = gc.group.position(&p.inverse()).unwrap();
                let d = gc.character.value(inv) - gc.character.value(i).conj();
                assert!(d.norm() < 1e-12);
            }
        }
        let s4 = PermutationGroup::symmetric(4).unwrap();
        let sign = LinearCharacter::sign(&s4);
        for (i, p) in s4.elements().iter().enumerate() {
            let inv = s4.position(&p.inverse()).unwrap();
            assert_eq!(sign.value(inv), sign.value(i).conj());
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let gc = GroupCharacter::cyclic(3, 1).unwrap();
        let text = serde_json::to_string(&gc.to_json()).unwrap();
        let back = GroupCharacter::from_json(serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.group.elements(), gc.group.elements());
        for (a, b) in back.character.values().iter().zip(gc.character.values()) {
            assert!((a - b).norm() < 1e-15);
        }

        let not_closed = r#"{"n":3,"elements":[[0,1,2],[1,2,0]],"character":[{"re":1},{"re":1}]}"#;
        let json: GroupCharacterJson = serde_json::from_str(not_closed).unwrap();
        assert!(GroupCharacter::from_json(json).is_err());

        let no_identity = r#"{"n":2,"elements":[[1,0]],"character":[{"re":1}]}"#;
        let json: GroupCharacterJson = serde_json::from_str(no_identity).unwrap();
        assert!(GroupCharacter::from_json(json).is_err());
    }
}
