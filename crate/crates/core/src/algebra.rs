//! Finite-dimensional algebras given by a basis of paths and structure
//! constants, plus the opposite and enveloping constructions.
//!
//! Every algebra here is a bound quiver algebra: each basis element carries a
//! word in the arrows of its quiver, and the element equals the product of
//! those arrows. Opposite and enveloping algebras get their own quivers, so
//! modules over all three are quiver representations.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock, Weak};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::quiver::{opposite_name, Quiver};
use crate::resolution::ResolutionCache;

pub type Algebra = Arc<FDAlgebra>;

/// Sparse algebra element: `(basis index, coefficient)` pairs.
pub type Element = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub source: usize,
    pub target: usize,
    /// Arrow indices; the element is the left-to-right product of these arrows.
    pub word: Vec<usize>,
    pub label: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Presentation,
    Opposite,
    Enveloping,
}

/// Default refusal threshold for [`FDAlgebra::enveloping`].
pub const DEFAULT_ENVELOPING_CAP: usize = 30;

/// Algebras up to this dimension get a full associativity check.
const FULL_ASSOCIATIVITY_LIMIT: usize = 100;

pub struct FDAlgebra {
    name: String,
    field: Field,
    quiver: Quiver,
    basis: Vec<BasisElement>,
    products: Vec<Element>,
    idempotents: Vec<usize>,
    arrow_elems: Vec<usize>,
    radical: Vec<usize>,
    provenance: Provenance,
    fingerprint: u64,
    opposite: OnceLock<Algebra>,
    opposite_of: OnceLock<Weak<FDAlgebra>>,
    enveloping: OnceLock<Algebra>,
    envelope_of: OnceLock<Weak<FDAlgebra>>,
    pub(crate) resolutions: Mutex<ResolutionCache>,
    pub(crate) memo: Mutex<HashMap<&'static str, Vec<bool>>>,
}

impl std::fmt::Debug for FDAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FDAlgebra")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .field("field", &self.field)
            .field("provenance", &self.provenance)
            .finish()
    }
}

impl FDAlgebra {
    /// Assembles and validates an algebra.
    ///
    /// `products[i * dim + j]` is the expansion of `b_i · b_j`.
    pub fn from_parts(
        name: &str,
        field: Field,
        quiver: Quiver,
        basis: Vec<BasisElement>,
        products: Vec<Element>,
        provenance: Provenance,
    ) -> Result<Algebra> {
        let dim = basis.len();
        if products.len() != dim * dim {
            return Err(Error::Precondition("structure constant table has wrong size".into()));
        }
        let mut idempotents = vec![usize::MAX; quiver.vertex_count];
        let mut arrow_elems = vec![usize::MAX; quiver.arrows.len()];
        for (i, b) in basis.iter().enumerate() {
            match b.word.len() {
                0 => idempotents[b.source] = i,
                1 => arrow_elems[b.word[0]] = i,
                _ => {}
            }
        }
        if idempotents.contains(&usize::MAX) {
            return Err(Error::Precondition("missing vertex idempotent".into()));
        }
        if arrow_elems.contains(&usize::MAX) {
            return Err(Error::Precondition("an arrow vanishes in the algebra".into()));
        }
        let radical = (0..dim).filter(|i| !idempotents.contains(i)).collect();
        let mut h = DefaultHasher::new();
        field.hash(&mut h);
        quiver.vertex_count.hash(&mut h);
        for a in &quiver.arrows {
            (a.source, a.target).hash(&mut h);
        }
        for b in &basis {
            (b.source, b.target, &b.word).hash(&mut h);
        }
        products.hash(&mut h);
        let alg = FDAlgebra {
            name: name.to_string(),
            field,
            quiver,
            basis,
            products,
            idempotents,
            arrow_elems,
            radical,
            provenance,
            fingerprint: h.finish(),
            opposite: OnceLock::new(),
            opposite_of: OnceLock::new(),
            enveloping: OnceLock::new(),
            envelope_of: OnceLock::new(),
            resolutions: Mutex::new(ResolutionCache::default()),
            memo: Mutex::new(HashMap::new()),
        };
        alg.validate()?;
        Ok(Arc::new(alg))
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim();
        let bad = |m: &str| Err(Error::Precondition(m.to_string()));
        for (i, b) in self.basis.iter().enumerate() {
            let es = self.idempotents[b.source];
            let et = self.idempotents[b.target];
            if self.mul_basis(es, i) != [(i, self.field.one())] {
                return bad("basis element not fixed by its source idempotent");
            }
            if self.mul_basis(i, et) != [(i, self.field.one())] {
                return bad("basis element not fixed by its target idempotent");
            }
        }
        let gens: Vec<usize> = self.idempotents.iter().chain(&self.arrow_elems).copied().collect();
        let thirds: Vec<usize> = if d <= FULL_ASSOCIATIVITY_LIMIT {
            (0..d).collect()
        } else {
            gens
        };
        for i in 0..d {
            for j in 0..d {
                if self.basis[i].target != self.basis[j].source {
                    continue;
                }
                let ij = self.mul_basis(i, j).to_vec();
                for &k in &thirds {
                    if self.basis[j].target != self.basis[k].source {
                        continue;
                    }
                    let left = self.mul(&ij, &[(k, self.field.one())]);
                    let jk = self.mul_basis(j, k).to_vec();
                    let right = self.mul(&[(i, self.field.one())], &jk);
                    if left != right {
                        return bad("structure constants are not associative");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }
    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count
    }
    pub fn arrow_count(&self) -> usize {
        self.quiver.arrows.len()
    }
    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }
    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }
    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }
    /// Basis index of the arrow `a`.
    pub fn arrow_element(&self, a: usize) -> usize {
        self.arrow_elems[a]
    }
    pub fn radical(&self) -> &[usize] {
        &self.radical
    }
    pub fn provenance(&self) -> Provenance {
        self.provenance
    }
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Same algebra up to labels: identical handle or identical fingerprint.
    pub fn same_as(&self, o: &FDAlgebra) -> bool {
        std::ptr::eq(self, o) || self.fingerprint == o.fingerprint
    }

    /// Expansion of `b_i · b_j`.
    #[inline]
    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.dim() + j]
    }

    /// Structure constant `c_{ij}^k`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.mul_basis(i, j)
            .iter()
            .find(|(x, _)| *x == k)
            .map_or(self.field.zero(), |(_, c)| c.clone())
    }

    /// Product of two sparse elements.
    pub fn mul(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> Element {
        let mut acc: Vec<Scalar> = Vec::new();
        let mut touched = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                for (k, c) in self.mul_basis(*i, *j) {
                    if acc.is_empty() {
                        acc = vec![self.field.zero(); self.dim()];
                    }
                    if acc[*k].is_zero() {
                        touched.push(*k);
                    }
                    acc[*k] = acc[*k].add(&a.mul(b).mul(c));
                }
            }
        }
        touched.sort_unstable();
        touched.dedup();
        touched
            .into_iter()
            .filter(|&k| !acc[k].is_zero())
            .map(|k| (k, acc[k].clone()))
            .collect()
    }

    /// Basis elements in `e_s · A · e_t`.
    pub fn paths_between(&self, s: usize, t: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis[i].source == s && self.basis[i].target == t)
            .collect()
    }

    /// `dim e_s A e_t` for all vertex pairs.
    pub fn grid(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut g = vec![vec![0; n]; n];
        for b in &self.basis {
            g[b.source][b.target] += 1;
        }
        g
    }

    /// The opposite algebra; cached, and `opposite(opposite(a))` is `a` itself
    /// while `a` is alive.
    pub fn opposite(self: &Arc<Self>) -> Algebra {
        if let Some(orig) = self.opposite_of.get().and_then(Weak::upgrade) {
            return orig;
        }
        self.opposite
            .get_or_init(|| {
                let op = self.build_opposite();
                op.opposite_of.set(Arc::downgrade(self)).ok();
                op
            })
            .clone()
    }

    fn build_opposite(&self) -> Algebra {
        let d = self.dim();
        let quiver = self.quiver.opposite();
        let basis: Vec<BasisElement> = self
            .basis
            .iter()
            .map(|b| {
                let word: Vec<usize> = b.word.iter().rev().copied().collect();
                let label = if word.is_empty() {
                    b.label.clone()
                } else {
                    word.iter()
                        .map(|&a| quiver.arrows[a].name.as_str())
                        .collect::<Vec<_>>()
                        .join("*")
                };
                BasisElement {
                    source: b.target,
                    target: b.source,
                    word,
                    label,
                }
            })
            .collect();
        let mut products = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in 0..d {
                products[i * d + j] = self.products[j * d + i].clone();
            }
        }
        let name = opposite_name(&self.name);
        let prov = match self.provenance {
            Provenance::Opposite => Provenance::Presentation,
            _ => Provenance::Opposite,
        };
        FDAlgebra::from_parts(&name, self.field, quiver, basis, products, prov)
            .expect("opposite of a valid algebra is valid")
    }

    /// The enveloping algebra `A ⊗ A^op` with the default size cap.
    pub fn enveloping(self: &Arc<Self>) -> Result<Algebra> {
        self.enveloping_with_cap(DEFAULT_ENVELOPING_CAP)
    }

    /// The enveloping algebra, refusing when `dim A > cap` unless already built.
    ///
    /// Basis pair `(p, q)` has index `p * dim + q` and multiplies as
    /// `(p, q)(p', q') = (p p', q' q)`. Vertex `(i, k)` has index `i * n + k`.
    /// Arrow `(α, e_k)` has index `α * n + k` and runs `(s α, k) → (t α, k)`;
    /// arrow `(e_k, β)` has index `m * n + k * m + β` and runs
    /// `(k, t β) → (k, s β)`, where `m` is the arrow count.
    pub fn enveloping_with_cap(self: &Arc<Self>, cap: usize) -> Result<Algebra> {
        if let Some(e) = self.enveloping.get() {
            return Ok(e.clone());
        }
        if self.dim() > cap {
            return Err(Error::ResourceCap(format!(
                "enveloping algebra of a {}-dimensional algebra (cap {cap})",
                self.dim()
            )));
        }
        let env = self.enveloping.get_or_init(|| {
            let e = self.build_enveloping();
            e.envelope_of.set(Arc::downgrade(self)).ok();
            e
        });
        Ok(env.clone())
    }

    fn build_enveloping(&self) -> Algebra {
        let d = self.dim();
        let n = self.vertex_count();
        let m = self.arrow_count();
        let mut quiver = Quiver::new(n * n);
        for (ai, a) in self.quiver.arrows.iter().enumerate() {
            for k in 0..n {
                let idx = quiver.add_arrow(
                    &format!("({},e{})", a.name, k + 1),
                    a.source * n + k,
                    a.target * n + k,
                );
                debug_assert_eq!(idx, ai * n + k);
            }
        }
        for k in 0..n {
            for a in &self.quiver.arrows {
                quiver.add_arrow(&format!("(e{},{})", k + 1, a.name), k * n + a.target, k * n + a.source);
            }
        }
        let mut basis = Vec::with_capacity(d * d);
        for p in &self.basis {
            for q in &self.basis {
                let mut word: Vec<usize> = p.word.iter().map(|&a| a * n + q.target).collect();
                word.extend(q.word.iter().rev().map(|&b| m * n + p.target * m + b));
                basis.push(BasisElement {
                    source: p.source * n + q.target,
                    target: p.target * n + q.source,
                    word,
                    label: format!("({}|{})", p.label, q.label),
                });
            }
        }
        let mut products = vec![Vec::new(); d * d * d * d];
        for p in 0..d {
            for q in 0..d {
                for p2 in 0..d {
                    let pp = self.mul_basis(p, p2);
                    if pp.is_empty() {
                        continue;
                    }
                    for q2 in 0..d {
                        let qq = self.mul_basis(q2, q);
                        if qq.is_empty() {
                            continue;
                        }
                        let mut out = Vec::with_capacity(pp.len() * qq.len());
                        for (r, c) in pp {
                            for (s, e) in qq {
                                out.push((r * d + s, c.mul(e)));
                            }
                        }
                        out.sort_by_key(|x| x.0);
                        products[(p * d + q) * d * d + p2 * d + q2] = out;
                    }
                }
            }
        }
        let name = format!("{}^e", self.name);
        FDAlgebra::from_parts(&name, self.field, quiver, basis, products, Provenance::Enveloping)
            .expect("enveloping of a valid algebra is valid")
    }

    /// For an enveloping algebra, the algebra it was built from.
    pub fn envelope_base(&self) -> Option<Algebra> {
        self.envelope_of.get().and_then(Weak::upgrade)
    }

    /// For `A^e` or its opposite, the underlying `A`.
    pub fn bimodule_base(self: &Arc<Self>) -> Option<Algebra> {
        match self.envelope_base() {
            Some(a) => Some(a),
            None => self.opposite_of.get().and_then(Weak::upgrade).and_then(|e| e.envelope_base()),
        }
    }
}

/// Index maps of the isomorphism `(A^e)^op → A^e`, `(p, q) ↦ (q, p)`.
///
/// Vertices `(i, k) ↦ (k, i)`; arrows `(α, e_k) ↦ (e_k, α)` and back. The maps
/// are involutions on indices and apply in both directions.
pub(crate) struct EnvelopeSwap {
    pub vertex: Vec<usize>,
    pub arrow: Vec<usize>,
}

impl EnvelopeSwap {
    pub fn new(base: &FDAlgebra) -> EnvelopeSwap {
        let n = base.vertex_count();
        let m = base.arrow_count();
        let vertex = (0..n * n).map(|v| (v % n) * n + v / n).collect();
        let mut arrow = vec![0; 2 * n * m];
        for a in 0..m {
            for k in 0..n {
                arrow[a * n + k] = m * n + k * m + a;
                arrow[m * n + k * m + a] = a * n + k;
            }
        }
        EnvelopeSwap { vertex, arrow }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{build_algebra, parse_presentation, BuildOptions};

    fn build(t: &str) -> Algebra {
        build_algebra(&parse_presentation("t", t).unwrap(), BuildOptions::default()).unwrap()
    }

    const CYC3: &str = "vertices 3\narrow a 1 3\narrow b 3 2\narrow c 2 1\nrelation c*a\nrelation b*c\n";

    #[test]
    fn opposite_is_involution() {
        let a = build(CYC3);
        let op = a.opposite();
        assert_eq!(op.dim(), 7);
        assert!(Arc::ptr_eq(&op.opposite(), &a));
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(op.mul_basis(i, j), a.mul_basis(j, i));
            }
        }
    }

    #[test]
    fn opposite_matches_reversed_presentation() {
        let a = build(CYC3);
        let rev = build("vertices 3\narrow a 3 1\narrow b 2 3\narrow c 1 2\nrelation a*c\nrelation c*b\n");
        let op = a.opposite();
        assert_eq!(op.dim(), rev.dim());
        assert_eq!(op.grid(), rev.grid());
    }

    #[test]
    fn loop_is_commutative() {
        let a = build("vertices 1\narrow x 1 1\nrelation x*x*x\n");
        let op = a.opposite();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(op.mul_basis(i, j), a.mul_basis(i, j));
            }
        }
    }

    #[test]
    fn enveloping_dimensions() {
        let a = build(CYC3);
        let e = a.enveloping().unwrap();
        assert_eq!(e.dim(), 49);
        assert_eq!(e.idempotents().len(), 9);
        assert_eq!(e.radical().len(), 49 - 9);
        let s2 = build("vertices 2\narrow a1 1 2\narrow b1 2 1\nrelation a1*b1\n");
        assert_eq!(s2.enveloping().unwrap().dim(), 25);
        let k = build("vertices 1\n");
        assert_eq!(k.enveloping().unwrap().dim(), 1);
    }

    #[test]
    fn enveloping_cap_refuses() {
        let a = build(CYC3);
        assert!(matches!(a.enveloping_with_cap(5), Err(Error::ResourceCap(_))));
    }

    #[test]
    fn enveloping_radical_is_nilpotent() {
        let a = build(CYC3);
        let e = a.enveloping().unwrap();
        // rad^k = 0 for k = 2 * (Loewy length of A) at most
        let mut power: Vec<Element> = e.radical().iter().map(|&r| vec![(r, e.field().one())]).collect();
        for _ in 0..6 {
            let mut next = Vec::new();
            for x in &power {
                for &r in e.radical() {
                    let y = e.mul(x, &[(r, e.field().one())]);
                    if !y.is_empty() {
                        next.push(y);
                    }
                }
            }
            power = next;
        }
        assert!(power.is_empty());
    }
}
