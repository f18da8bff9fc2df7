//! Minimal projective resolutions, Ext and Tor.
//!
//! A sum of indecomposable projectives is recorded by its list of vertices; a
//! map between two such sums is a matrix of algebra elements (`ProjMap`).
//! Resolutions are cached on the algebra handle and extended on demand.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::ExactMatrix;
use crate::module::{homology, FDModule, ModuleMorphism};

/// `⊕_s e_{v_s} A` with its coordinate layout.
#[derive(Clone, Debug)]
pub struct ProjSum {
    pub vertices: Vec<usize>,
    pub module: FDModule,
    /// Per vertex `x`, the `(summand, basis index)` behind each coordinate.
    pub layout: Vec<Vec<(usize, usize)>>,
    offsets: Vec<Vec<usize>>,
    local: Vec<usize>,
}

impl ProjSum {
    pub fn new(algebra: &Algebra, vertices: Vec<usize>) -> ProjSum {
        let n = algebra.vertex_count();
        let f = algebra.field();
        let basis = algebra.basis();
        let mut local = vec![0; basis.len()];
        let mut count = vec![vec![0usize; n]; n];
        for (b, be) in basis.iter().enumerate() {
            local[b] = count[be.source][be.target];
            count[be.source][be.target] += 1;
        }
        let mut layout = vec![Vec::new(); n];
        let mut offsets = vec![vec![0; vertices.len()]; n];
        for x in 0..n {
            for (s, &v) in vertices.iter().enumerate() {
                offsets[x][s] = layout[x].len();
                for (b, be) in basis.iter().enumerate() {
                    if be.source == v && be.target == x {
                        layout[x].push((s, b));
                    }
                }
            }
        }
        let dims: Vec<usize> = layout.iter().map(Vec::len).collect();
        let maps = algebra
            .quiver()
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let ae = algebra.arrow_element(a);
                let mut m = ExactMatrix::zeros(f, dims[arrow.source], dims[arrow.target]);
                for (r, &(s, b)) in layout[arrow.source].iter().enumerate() {
                    for (x, c) in algebra.mul_basis(b, ae) {
                        m.set(r, offsets[arrow.target][s] + local[*x], c.clone());
                    }
                }
                m
            })
            .collect();
        let module = FDModule::new_unchecked(algebra, dims, maps);
        ProjSum {
            vertices,
            module,
            layout,
            offsets,
            local,
        }
    }

    /// Coordinate of basis element `b` inside summand `s`.
    pub fn position(&self, s: usize, b: usize) -> usize {
        let t = self.module.algebra().basis()[b].target;
        self.offsets[t][s] + self.local[b]
    }

    /// Element of summand `s` read off a vector in the block at vertex `x`.
    pub fn element_at(&self, x: usize, v: &[Scalar], s: usize) -> Element {
        self.layout[x]
            .iter()
            .zip(v)
            .filter(|((t, _), c)| *t == s && !c.is_zero())
            .map(|((_, b), c)| (*b, c.clone()))
            .collect()
    }
}

/// Map `⊕_s P(source_s) → ⊕_t P(target_t)` sending generator `s` to
/// `Σ_t entries[t][s]` in summand `t`; entry `(t, s)` lies in
/// `e_{target_t} A e_{source_s}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjMap {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub entries: Vec<Vec<Element>>,
}

impl ProjMap {
    /// `Hom(-, A)` of the map, as a map of projectives over the opposite.
    pub fn star_dual(&self) -> ProjMap {
        let entries = (0..self.source.len())
            .map(|s| (0..self.target.len()).map(|t| self.entries[t][s].clone()).collect())
            .collect();
        ProjMap {
            source: self.target.clone(),
            target: self.source.clone(),
            entries,
        }
    }

    pub fn to_morphism(&self, src: &ProjSum, tgt: &ProjSum) -> ModuleMorphism {
        let alg = src.module.algebra();
        let f = alg.field();
        let blocks = (0..alg.vertex_count())
            .map(|x| {
                let mut m = ExactMatrix::zeros(f, src.layout[x].len(), tgt.layout[x].len());
                for (r, &(s, b)) in src.layout[x].iter().enumerate() {
                    for (t, a) in self.entries.iter().map(|row| &row[s]).enumerate() {
                        if a.is_empty() {
                            continue;
                        }
                        for (y, c) in alg.mul(a, &[(b, f.one())]) {
                            let p = tgt.position(t, y);
                            let cur = m.get(r, p).add(&c);
                            m.set(r, p, cur);
                        }
                    }
                }
                m
            })
            .collect();
        ModuleMorphism::new_unchecked(&src.module, &tgt.module, blocks)
    }

    /// Matrix of `Hom(-, N)` applied to the map: rows over `⊕_t N e_{target_t}`,
    /// columns over `⊕_s N e_{source_s}`.
    fn hom_matrix(&self, n: &FDModule) -> ExactMatrix {
        let d = n.dims();
        let rows: usize = self.target.iter().map(|&v| d[v]).sum();
        let cols: usize = self.source.iter().map(|&v| d[v]).sum();
        let mut m = ExactMatrix::zeros(n.field(), rows, cols);
        let mut r0 = 0;
        for (t, &w) in self.target.iter().enumerate() {
            let mut c0 = 0;
            for (s, &v) in self.source.iter().enumerate() {
                let a = &self.entries[t][s];
                if !a.is_empty() {
                    m.set_block(r0, c0, &n.element_action_between(a, w, v));
                }
                c0 += d[v];
            }
            r0 += d[w];
        }
        m
    }

    /// Matrix of `- ⊗ N` applied to the map, `N` over the opposite: rows over
    /// `⊕_s N e_{source_s}`, columns over `⊕_t N e_{target_t}`.
    fn tensor_matrix(&self, n: &FDModule) -> ExactMatrix {
        self.star_dual().hom_matrix(n)
    }
}

/// Largest projective term a resolution may build; wild algebras grow
/// exponentially over `A^e`.
pub const TERM_DIM_CAP: usize = 1500;

/// A minimal projective resolution computed up to some length.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: FDModule,
    /// Vertex lists of `P_0, P_1, …`.
    pub terms: Vec<Vec<usize>>,
    /// `diffs[k]: P_{k+1} → P_k`.
    pub diffs: Vec<ProjMap>,
    /// `syzygies[k] = Ω^k M`; one more entry than `terms`.
    pub syzygies: Vec<FDModule>,
    /// Inclusion `Ω^{k+1} M → P_k`.
    incls: Vec<ModuleMorphism>,
    /// Cover `P_k → Ω^k M`.
    covers: Vec<ModuleMorphism>,
}

impl Resolution {
    fn start(m: &FDModule) -> Resolution {
        Resolution {
            module: m.clone(),
            terms: Vec::new(),
            diffs: Vec::new(),
            syzygies: vec![m.clone()],
            incls: Vec::new(),
            covers: Vec::new(),
        }
    }

    /// Degree of the last computed term, or `None` before the first step.
    pub fn computed(&self) -> Option<usize> {
        self.terms.len().checked_sub(1)
    }

    /// True once a syzygy vanished: the resolution is complete.
    pub fn finished(&self) -> bool {
        self.syzygies.last().is_some_and(FDModule::is_zero)
    }

    /// Projective dimension when finished.
    pub fn length(&self) -> Option<usize> {
        if !self.finished() {
            return None;
        }
        Some(self.terms.iter().rposition(|t| !t.is_empty()).unwrap_or(0))
    }

    pub fn term(&self, k: usize) -> &[usize] {
        self.terms.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn syzygy(&self, k: usize) -> Option<&FDModule> {
        if self.finished() && k >= self.syzygies.len() {
            return self.syzygies.last();
        }
        self.syzygies.get(k)
    }

    /// The map `P_{k+1} → P_k`, zero past the end.
    pub fn diff(&self, k: usize) -> ProjMap {
        self.diffs.get(k).cloned().unwrap_or_else(|| ProjMap {
            source: self.term(k + 1).to_vec(),
            target: self.term(k).to_vec(),
            entries: vec![vec![Vec::new(); self.term(k + 1).len()]; self.term(k).len()],
        })
    }

    fn step(&mut self) -> Result<()> {
        let k = self.terms.len();
        let n = self.syzygies[k].clone();
        let alg = n.algebra().clone();
        let f = alg.field();
        // top generators: unit vectors off the radical pivots
        let rad = n.radical_bases();
        let mut vertices = Vec::new();
        let mut gens = Vec::new();
        for (v, basis) in rad.iter().enumerate() {
            let mut is_key = vec![false; n.dims()[v]];
            for &c in &basis.keys {
                is_key[c] = true;
            }
            for c in (0..n.dims()[v]).filter(|&c| !is_key[c]) {
                vertices.push(v);
                gens.push(c);
            }
        }
        let p = ProjSum::new(&alg, vertices.clone());
        if p.module.dim() > TERM_DIM_CAP {
            return Err(Error::ResourceCap(format!(
                "term {k} of a resolution has dimension {} (cap {TERM_DIM_CAP})",
                p.module.dim()
            )));
        }
        let blocks = (0..alg.vertex_count())
            .map(|x| {
                let mut m = ExactMatrix::zeros(f, p.layout[x].len(), n.dims()[x]);
                for (r, &(s, b)) in p.layout[x].iter().enumerate() {
                    let row = n.block_action(b).row(gens[s]);
                    for (c, e) in row.iter().enumerate() {
                        if !e.is_zero() {
                            m.set(r, c, e.clone());
                        }
                    }
                }
                m
            })
            .collect();
        let cover = ModuleMorphism::new_unchecked(&p.module, &n, blocks);
        if !cover.is_surjective() {
            return Err(Error::Precondition("projective cover is not surjective".into()));
        }
        if k > 0 {
            let prev = ProjSum::new(&alg, self.terms[k - 1].clone());
            let incl = &self.incls[k - 1];
            let mut entries = vec![vec![Vec::new(); vertices.len()]; prev.vertices.len()];
            for (s, (&v, &c)) in vertices.iter().zip(&gens).enumerate() {
                let row = incl.block(v).row(c);
                for (t, slot) in entries.iter_mut().enumerate() {
                    let el = prev.element_at(v, row, t);
                    assert!(
                        el.iter().all(|(b, _)| !alg.idempotents().contains(b)),
                        "syzygy not contained in the radical"
                    );
                    slot[s] = el;
                }
            }
            self.diffs.push(ProjMap {
                source: vertices.clone(),
                target: prev.vertices.clone(),
                entries,
            });
        }
        let (ker, incl) = cover.kernel();
        self.terms.push(vertices);
        self.syzygies.push(ker);
        self.incls.push(incl);
        self.covers.push(cover);
        Ok(())
    }

    fn extend_to(&mut self, len: usize) -> Result<()> {
        while !self.finished() && self.terms.len() <= len {
            self.step()?;
        }
        Ok(())
    }
}

/// Per-algebra cache of resolutions keyed by module fingerprint.
#[derive(Default)]
pub(crate) struct ResolutionCache {
    entries: HashMap<u64, Vec<Arc<Resolution>>>,
}

/// Minimal projective resolution of `m` with terms `P_0..P_len` (fewer when it
/// terminates).
pub fn resolve(m: &FDModule, len: usize) -> Result<Arc<Resolution>> {
    let alg = m.algebra().clone();
    let key = m.fingerprint();
    let mut start = None;
    {
        let cache = alg.resolutions.lock().expect("resolution cache poisoned");
        if let Some(r) = cache.entries.get(&key).and_then(|v| v.iter().find(|r| &r.module == m)) {
            if r.finished() || r.terms.len() > len {
                return Ok(r.clone());
            }
            start = Some((**r).clone());
        }
    }
    let mut r = start.unwrap_or_else(|| Resolution::start(m));
    r.extend_to(len)?;
    let r = Arc::new(r);
    let mut cache = alg.resolutions.lock().expect("resolution cache poisoned");
    let slot = cache.entries.entry(key).or_default();
    slot.retain(|x| &x.module != m);
    slot.push(r.clone());
    Ok(r)
}

/// Projective cover `P → M` with `ΩM`.
pub fn projective_cover(m: &FDModule) -> Result<(FDModule, ModuleMorphism, FDModule)> {
    let r = resolve(m, 0)?;
    match r.covers.first() {
        Some(c) => Ok((c.source().clone(), c.clone(), r.syzygies[1].clone())),
        None => {
            let z = FDModule::zero(m.algebra());
            Ok((z.clone(), ModuleMorphism::zero(&z, m), z))
        }
    }
}

/// `Ω^k M` from the minimal resolution.
pub fn syzygy(m: &FDModule, k: usize) -> Result<FDModule> {
    if k == 0 {
        return Ok(m.clone());
    }
    let r = resolve(m, k - 1)?;
    Ok(r.syzygy(k).cloned().unwrap_or_else(|| FDModule::zero(m.algebra())))
}

/// `Ω^{-k} M = D Ω^k D M`.
pub fn cosyzygy(m: &FDModule, k: usize) -> Result<FDModule> {
    syzygy(&m.dual(), k)?.dual().over(m.algebra())
}

/// Vertex lists of the minimal injective coresolution `I^0, I^1, …, I^len`;
/// `I^k = ⊕ I(v)`.
pub fn injective_terms(m: &FDModule, len: usize) -> Result<Vec<Vec<usize>>> {
    let r = resolve(&m.dual(), len)?;
    Ok((0..=len).map(|k| r.term(k).to_vec()).collect())
}

fn check_same(m: &FDModule, n: &FDModule) -> Result<()> {
    if m.algebra().same_as(n.algebra()) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

fn dim_sum(n: &FDModule, vs: &[usize]) -> usize {
    vs.iter().map(|&v| n.dims()[v]).sum()
}

/// `dim Ext^i_A(M, N)` from `Hom(P_•, N)`.
pub fn ext_dim(m: &FDModule, n: &FDModule, i: usize) -> Result<usize> {
    check_same(m, n)?;
    let r = resolve(m, i + 1)?;
    let c = dim_sum(n, r.term(i));
    if c == 0 {
        return Ok(0);
    }
    let out = r.diff(i).hom_matrix(n).rank();
    let inc = if i == 0 { 0 } else { r.diff(i - 1).hom_matrix(n).rank() };
    Ok(c - out - inc)
}

/// `dim Ext^i_A(M, N)` from `Hom(M, I^•)`, resolving `D N` instead of `M`.
pub fn ext_dim_injective(m: &FDModule, n: &FDModule, i: usize) -> Result<usize> {
    check_same(m, n)?;
    tor_from_resolution(&*resolve(&n.dual(), i + 1)?, m, i)
}

fn tor_from_resolution(r: &Resolution, coeff: &FDModule, i: usize) -> Result<usize> {
    let c = dim_sum(coeff, r.term(i));
    if c == 0 {
        return Ok(0);
    }
    let out = if i == 0 { 0 } else { r.diff(i - 1).tensor_matrix(coeff).rank() };
    let inc = r.diff(i).tensor_matrix(coeff).rank();
    Ok(c - out - inc)
}

fn check_opposite(m: &FDModule, n: &FDModule) -> Result<()> {
    if n.algebra().same_as(&m.algebra().opposite()) {
        Ok(())
    } else {
        Err(Error::Precondition("Tor needs a right module and a left module".into()))
    }
}

/// `dim Tor_i^A(M, N)`; `N` is a left module (right over `A^op`). Resolves `M`
/// and tensors with `N`.
pub fn tor_dim(m: &FDModule, n: &FDModule, i: usize) -> Result<usize> {
    check_opposite(m, n)?;
    tor_from_resolution(&*resolve(m, i + 1)?, n, i)
}

/// `dim Tor_i^A(M, N)` resolving `N` instead.
pub fn tor_dim_balanced(m: &FDModule, n: &FDModule, i: usize) -> Result<usize> {
    check_opposite(m, n)?;
    tor_from_resolution(&*resolve(n, i + 1)?, m, i)
}

/// `dim Tor_i^A(M, N)` as `dim D Ext^i_A(M, D N)`.
pub fn tor_dim_duality(m: &FDModule, n: &FDModule, i: usize) -> Result<usize> {
    check_opposite(m, n)?;
    ext_dim(m, &n.dual().over(m.algebra())?, i)
}

/// `Ext^i_A(M, A)` as a right `A^op`-module.
pub fn ext_module_regular(m: &FDModule, i: usize) -> Result<FDModule> {
    let r = resolve(m, i + 1)?;
    let op = m.algebra().opposite();
    let mid = ProjSum::new(&op, r.term(i).to_vec());
    let next = ProjSum::new(&op, r.term(i + 1).to_vec());
    let g = r.diff(i).star_dual().to_morphism(&mid, &next);
    let f = if i == 0 {
        ModuleMorphism::zero(&FDModule::zero(&op), &mid.module)
    } else {
        let prev = ProjSum::new(&op, r.term(i - 1).to_vec());
        r.diff(i - 1).star_dual().to_morphism(&prev, &mid)
    };
    homology(&f, &g)
}

/// Transpose `Tr M = coker(P_0^* → P_1^*)` over the opposite algebra.
pub fn transpose(m: &FDModule) -> Result<FDModule> {
    let r = resolve(m, 1)?;
    let op = m.algebra().opposite();
    let p0 = ProjSum::new(&op, r.term(0).to_vec());
    let p1 = ProjSum::new(&op, r.term(1).to_vec());
    Ok(r.diff(0).star_dual().to_morphism(&p0, &p1).cokernel().0)
}

/// The complex `P_{k+1} → P_k` as module morphisms, for tests and tools.
pub fn differential(m: &FDModule, k: usize) -> Result<ModuleMorphism> {
    let r = resolve(m, k + 1)?;
    let alg = m.algebra();
    let src = ProjSum::new(alg, r.term(k + 1).to_vec());
    let tgt = ProjSum::new(alg, r.term(k).to_vec());
    Ok(r.diff(k).to_morphism(&src, &tgt))
}

/// Checks that consecutive differentials compose to zero up to degree `len`.
pub fn check_complex(m: &FDModule, len: usize) -> Result<bool> {
    for k in 0..len {
        let a = differential(m, k + 1)?;
        let b = differential(m, k)?;
        if !a.then(&b)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Inclusion `Ω^{k+1} M → P_k`.
pub fn syzygy_inclusion(m: &FDModule, k: usize) -> Result<ModuleMorphism> {
    let r = resolve(m, k)?;
    r.incls
        .get(k)
        .cloned()
        .ok_or_else(|| Error::Precondition("resolution terminated earlier".into()))
}
