//! Word-metric balls in finitely generated special linear groups.
//!
//! A [`GeneratorSet`] is symmetrized on construction (closed under inverse,
//! identity excluded, all generators checked to have determinant one and a
//! single field family). [`word_ball`] enumerates all distinct group
//! elements of word length at most `R` by breadth-first search with exact
//! canonical-form deduplication, so every element carries its exact word
//! length and one shortest word.

use crate::elem::FieldElem;
use crate::error::{Error, Result};
use crate::matrix::{EMat, Mat};
use std::collections::HashMap;

/// Default growth guard: enumeration aborts with [`Error::BallTooLarge`]
/// beyond this many distinct elements (free subgroups blow up fast).
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

#[derive(Debug, Clone)]
pub struct GeneratorSet {
    gens: Vec<EMat>,
    labels: Vec<String>,
    n: usize,
}

impl GeneratorSet {
    /// Builds a symmetrized generator set from labeled matrices. Inverses
    /// are appended as `label^-1` when missing; duplicates and identity
    /// matrices are dropped; all matrices must share one dimension and
    /// field family and have determinant one.
    pub fn new(labeled: Vec<(String, EMat)>) -> Result<Self> {
        let n = labeled
            .first()
            .map(|(_, g)| g.n())
            .unwrap_or(1);
        if labeled.iter().any(|(_, g)| g.n() != n) {
            return Err(Error::Validation(
                "generators must share one dimension".into(),
            ));
        }
        // One field family for the whole set: promote everything to the
        // first non-rational exemplar found (plain rationals embed).
        let exemplar = labeled
            .iter()
            .find_map(|(_, g)| g.family_exemplar().cloned());
        let mut gens: Vec<EMat> = Vec::new();
        let mut labels: Vec<String> = Vec::new();
        let mut seen: HashMap<String, usize> = HashMap::new();
        let push = |g: EMat, label: String, gens: &mut Vec<EMat>, labels: &mut Vec<String>, seen: &mut HashMap<String, usize>| {
            if g.is_identity() {
                return;
            }
            let key = g.canonical_string();
            if seen.contains_key(&key) {
                return;
            }
            seen.insert(key, gens.len());
            gens.push(g);
            labels.push(label);
        };
        for (label, g) in labeled {
            let g = match &exemplar {
                Some(e) => g.promoted_like(e)?,
                None => g,
            };
            g.require_special_linear()?;
            let inv = g.inverse()?;
            push(g, label.clone(), &mut gens, &mut labels, &mut seen);
            push(inv, format!("{label}^-1"), &mut gens, &mut labels, &mut seen);
        }
        Ok(GeneratorSet { gens, labels, n })
    }

    pub fn gens(&self) -> &[EMat] {
        &self.gens
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// An identity matrix promoted into the set's field family — the BFS
    /// seed, guaranteed family-consistent with all products.
    pub fn seed_identity(&self) -> EMat {
        let id = Mat::identity(self.n);
        match self.gens.iter().find_map(|g| g.family_exemplar()) {
            Some(e) => id.promoted_like(e).expect("identity embeds anywhere"),
            None => id,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BallElement {
    pub mat: EMat,
    /// Exact word length (0 for the identity).
    pub len: usize,
    /// One shortest word as generator indices into the set.
    pub word: Vec<usize>,
}

/// A word ball: all distinct elements of word length ≤ R.
#[derive(Debug, Clone)]
pub struct Ball {
    elements: Vec<BallElement>, // discovery (breadth-first) order
    index: HashMap<String, usize>,
    sorted: Vec<usize>, // indices ordered by canonical printed form
    radius: usize,
}

impl Ball {
    /// Elements in deterministic lexicographic order of their canonical
    /// printed form.
    pub fn iter(&self) -> impl Iterator<Item = &BallElement> {
        self.sorted.iter().map(move |&i| &self.elements[i])
    }

    /// Elements in breadth-first discovery order (word length
    /// nondecreasing) — the fixed word order used by greedy basis searches.
    pub fn iter_discovery(&self) -> impl Iterator<Item = &BallElement> {
        self.elements.iter()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Exact word length of a matrix, or `None` if it is not in the ball.
    pub fn word_length(&self, g: &EMat) -> Option<usize> {
        self.index
            .get(&g.canonical_string())
            .map(|&i| self.elements[i].len)
    }

    pub fn contains(&self, g: &EMat) -> bool {
        self.word_length(g).is_some()
    }
}

/// Renders a generator-index word through the set's labels, `"1"` for the
/// empty word.
pub fn word_label(s: &GeneratorSet, word: &[usize]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter()
        .map(|&i| s.labels()[i].as_str())
        .collect::<Vec<_>>()
        .join("*")
}

/// All distinct group elements of word length ≤ `radius`, with the default
/// growth guard of [`DEFAULT_ELEMENT_CAP`].
pub fn word_ball(s: &GeneratorSet, radius: usize) -> Result<Ball> {
    word_ball_capped(s, radius, DEFAULT_ELEMENT_CAP)
}

/// As [`word_ball`] with an explicit element cap.
pub fn word_ball_capped(s: &GeneratorSet, radius: usize, cap: usize) -> Result<Ball> {
    let identity = s.seed_identity();
    let mut elements = vec![BallElement {
        mat: identity.clone(),
        len: 0,
        word: vec![],
    }];
    let mut index = HashMap::new();
    index.insert(identity.canonical_string(), 0);
    let mut frontier = vec![0usize];
    for len in 1..=radius {
        let mut next = Vec::new();
        for &ei in &frontier {
            for (gi, g) in s.gens().iter().enumerate() {
                let product = &elements[ei].mat * g;
                let key = product.canonical_string();
                if index.contains_key(&key) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::BallTooLarge { cap, radius });
                }
                index.insert(key, elements.len());
                let mut word = elements[ei].word.clone();
                word.push(gi);
                next.push(elements.len());
                elements.push(BallElement {
                    mat: product,
                    len,
                    word,
                });
            }
        }
        if next.is_empty() {
            break; // group exhausted below the radius
        }
        frontier = next;
    }
    let mut sorted: Vec<usize> = (0..elements.len()).collect();
    sorted.sort_by(|&a, &b| {
        elements[a]
            .mat
            .canonical_string()
            .cmp(&elements[b].mat.canonical_string())
    });
    Ok(Ball {
        elements,
        index,
        sorted,
        radius,
    })
}

/// Elementary matrix with a single off-diagonal entry: `E_ij(z)`.
pub fn elementary(n: usize, i: usize, j: usize, z: FieldElem) -> EMat {
    assert!(i != j && i < n && j < n, "off-diagonal position required");
    let mut m = Mat::identity(n);
    m.set(i, j, z);
    m
}
