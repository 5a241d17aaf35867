//! Permutation groups enumerated by breadth-first closure.
//!
//! Elements are stored in a frozen canonical order: the identity first, then
//! layer by layer by generator word length, each layer sorted
//! lexicographically by image tuple. Group algebra bases are indexed by this
//! order, so it must never change.
//!
//! Products compose left to right: `(x * y)(i) = y(x(i))`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 5000;

/// A permutation of `{0, ..., n-1}` as an image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i as usize >= n || seen[i as usize] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i as usize] = true;
        }
        Ok(Perm(images))
    }

    /// Parse cycle notation such as `(0 1)(2 3)`; `()` is the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        let t = text.trim();
        let mut rest = t;
        while !rest.is_empty() {
            let r = rest.strip_prefix('(').ok_or_else(|| Error::InvalidPermutation(format!("`{t}`: expected `(`")))?;
            let end = r.find(')').ok_or_else(|| Error::InvalidPermutation(format!("`{t}`: unclosed cycle")))?;
            let pts = r[..end]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>().map_err(|_| Error::InvalidPermutation(format!("`{t}`: bad point `{s}`")))
                })
                .collect::<Result<Vec<usize>>>()?;
            for &pt in &pts {
                if pt >= degree {
                    return Err(Error::InvalidPermutation(format!("`{t}`: point {pt} outside 0..{degree}")));
                }
                if seen[pt] {
                    return Err(Error::InvalidPermutation(format!("`{t}`: point {pt} repeated")));
                }
                seen[pt] = true;
            }
            for (k, &pt) in pts.iter().enumerate() {
                images[pt] = pts[(k + 1) % pts.len()] as u32;
            }
            rest = r[end + 1..].trim_start();
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut any = false;
        for start in 0..n {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            any = true;
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.0[start] as usize;
            while j != start {
                cycle.push(j);
                seen[j] = true;
                j = self.0[j] as usize;
            }
            let parts: Vec<String> = cycle.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite permutation group with its canonically ordered elements.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    /// For element `k > 0`: `(parent, generator)` with `elements[k] = elements[parent] * generators[generator]`.
    words: Vec<Option<(usize, usize)>>,
}

impl PermGroup {
    /// Enumerate the group generated by `generators`, failing once more than `cap` elements appear.
    pub fn enumerate(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!("{g} has degree {} not {degree}", g.degree())));
            }
        }
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut words = vec![None];
        let mut index = HashMap::new();
        index.insert(id, 0);
        let mut layer = vec![0usize];
        while !layer.is_empty() {
            let mut fresh: Vec<(Perm, (usize, usize))> = Vec::new();
            let mut fresh_seen: HashMap<Perm, ()> = HashMap::new();
            for &x in &layer {
                for (gi, g) in generators.iter().enumerate() {
                    let y = elements[x].compose(g);
                    if !index.contains_key(&y) && !fresh_seen.contains_key(&y) {
                        fresh_seen.insert(y.clone(), ());
                        fresh.push((y, (x, gi)));
                    }
                }
            }
            fresh.sort_by(|a, b| a.0.cmp(&b.0));
            layer = Vec::with_capacity(fresh.len());
            for (y, w) in fresh {
                if elements.len() >= cap {
                    return Err(Error::OrderExceedsCap { reached: elements.len(), cap });
                }
                index.insert(y.clone(), elements.len());
                layer.push(elements.len());
                elements.push(y);
                words.push(Some(w));
            }
        }
        Ok(PermGroup { degree, generators, elements, index, words })
    }

    /// Parse generators in cycle notation and enumerate.
    pub fn from_cycles(degree: usize, generators: &[&str], cap: usize) -> Result<Self> {
        let gens = generators.iter().map(|g| Perm::parse_cycles(degree, g)).collect::<Result<Vec<_>>>()?;
        Self::enumerate(degree, gens, cap)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    /// Index of `elements[i] * elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].compose(&self.elements[j])]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.index[&self.elements[i].inverse()]
    }

    /// Breadth-first word data: `Some((parent, generator))` for non-identity elements.
    pub fn word(&self, i: usize) -> Option<(usize, usize)> {
        self.words[i]
    }

    /// Index of each generator among the elements.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    /// Full multiplication table, row-major `|G| x |G|`.
    pub fn multiplication_table(&self) -> Vec<u32> {
        let n = self.order();
        let mut t = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                t.push(self.mul(i, j) as u32);
            }
        }
        t
    }

    /// The subgroup generated by `generators`, each of which must lie in `self`.
    pub fn subgroup(&self, generators: Vec<Perm>) -> Result<PermGroup> {
        for g in &generators {
            if g.degree() != self.degree || !self.contains(g) {
                return Err(Error::NotASubgroupElement(g.to_string()));
            }
        }
        PermGroup::enumerate(self.degree, generators, self.order() + 1)
    }

    /// Whether every element of `h` lies in `self`.
    pub fn has_subgroup(&self, h: &PermGroup) -> bool {
        h.degree == self.degree && h.elements.iter().all(|x| self.contains(x))
    }

    /// Index in `self` of each element of the subgroup `h`.
    pub fn embedding(&self, h: &PermGroup) -> Result<Vec<usize>> {
        if h.degree != self.degree {
            return Err(Error::NotSubgroup);
        }
        h.elements.iter().map(|x| self.index_of(x).ok_or(Error::NotSubgroup)).collect()
    }
}

/// Right coset representatives of `H` in `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    /// Indices into `G`'s elements; `reps[0]` is the identity.
    pub reps: Vec<usize>,
    /// For each element of `G`, the index of its coset `H g` in `reps`.
    pub coset_of: Vec<usize>,
}

impl Transversal {
    pub fn index(&self) -> usize {
        self.reps.len()
    }
}

/// Right transversal: each coset `H g` is represented by its first element in
/// `G`'s canonical order.
pub fn right_transversal(g: &PermGroup, h: &PermGroup) -> Result<Transversal> {
    let emb = g.embedding(h)?;
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &hi in &emb {
            let y = g.mul(hi, x);
            coset_of[y] = c;
        }
    }
    Ok(Transversal { reps, coset_of })
}
