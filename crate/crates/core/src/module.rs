//! Right modules over a bound quiver algebra, stored as quiver representations.
//!
//! A module keeps one space per vertex (`M e_v`) and one matrix per arrow. The
//! action of any basis element is the product of the arrow matrices along its
//! word; [`FDModule::action`] assembles it on demand.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::algebra::{Algebra, EnvelopeSwap, Provenance};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{Basis, ExactMatrix};

#[derive(Clone)]
pub struct FDModule(Arc<ModuleData>);

struct ModuleData {
    algebra: Algebra,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    maps: Vec<ExactMatrix>,
    fingerprint: u64,
    actions: OnceLock<Vec<ExactMatrix>>,
}

impl std::fmt::Debug for FDModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FDModule({} over {}, dims {:?})", self.dim(), self.0.algebra.name(), self.0.dims)
    }
}

impl PartialEq for FDModule {
    fn eq(&self, o: &FDModule) -> bool {
        Arc::ptr_eq(&self.0, &o.0)
            || (self.0.fingerprint == o.0.fingerprint
                && self.0.algebra.same_as(&o.0.algebra)
                && self.0.dims == o.0.dims
                && self.0.maps == o.0.maps)
    }
}

impl Eq for FDModule {}

impl FDModule {
    /// Builds a representation and checks every relation of the algebra.
    ///
    /// `maps[a]` is `dims[source a] × dims[target a]`.
    pub fn new(algebra: &Algebra, dims: Vec<usize>, maps: Vec<ExactMatrix>) -> Result<FDModule> {
        if dims.len() != algebra.vertex_count() || maps.len() != algebra.arrow_count() {
            return Err(Error::InvalidModule("wrong number of vertex spaces or arrow maps".into()));
        }
        for (a, arrow) in algebra.quiver().arrows.iter().enumerate() {
            let m = &maps[a];
            if m.rows() != dims[arrow.source] || m.cols() != dims[arrow.target] {
                return Err(Error::InvalidModule(format!("arrow {} has the wrong shape", arrow.name)));
            }
            if m.field() != algebra.field() {
                return Err(Error::Linalg(crate::error::LinalgError::FieldMismatch(algebra.field(), m.field())));
            }
            m.check_field()?;
        }
        let m = FDModule::new_unchecked(algebra, dims, maps);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(algebra: &Algebra, dims: Vec<usize>, maps: Vec<ExactMatrix>) -> FDModule {
        let mut offsets = Vec::with_capacity(dims.len() + 1);
        let mut acc = 0;
        for &d in &dims {
            offsets.push(acc);
            acc += d;
        }
        offsets.push(acc);
        let mut h = DefaultHasher::new();
        algebra.fingerprint().hash(&mut h);
        dims.hash(&mut h);
        maps.hash(&mut h);
        FDModule(Arc::new(ModuleData {
            algebra: algebra.clone(),
            dims,
            offsets,
            maps,
            fingerprint: h.finish(),
            actions: OnceLock::new(),
        }))
    }

    /// Checks `ρ(b)·ρ(α) = ρ(b·α)` for every basis element `b` and arrow `α`.
    fn validate(&self) -> Result<()> {
        let alg = self.algebra();
        for b in 0..alg.dim() {
            let t = alg.basis()[b].target;
            let rb = self.block_action(b);
            for (a, arrow) in alg.quiver().arrows.iter().enumerate() {
                if arrow.source != t {
                    continue;
                }
                let lhs = rb.mul(&self.0.maps[a]);
                let prod = alg.mul_basis(b, alg.arrow_element(a));
                let rhs = self.element_action_between(prod, alg.basis()[b].source, arrow.target);
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "relation violated at {}·{}",
                        alg.basis()[b].label,
                        arrow.name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Builds a module from the action matrix of every basis element on `K^d`.
    ///
    /// The module axioms are checked in full, then the basis is changed to one
    /// adapted to the vertex idempotents.
    pub fn from_action_matrices(algebra: &Algebra, rho: &[ExactMatrix]) -> Result<FDModule> {
        let dimb = algebra.dim();
        if rho.len() != dimb {
            return Err(Error::InvalidModule("one action matrix per basis element expected".into()));
        }
        let d = rho.first().map_or(0, |m| m.rows());
        let field = algebra.field();
        for m in rho {
            if m.rows() != d || m.cols() != d {
                return Err(Error::InvalidModule("action matrices must be square of equal size".into()));
            }
            if m.field() != field {
                return Err(Error::Linalg(crate::error::LinalgError::FieldMismatch(field, m.field())));
            }
        }
        let mut sum = ExactMatrix::zeros(field, d, d);
        for &e in algebra.idempotents() {
            sum = sum.add(&rho[e]);
        }
        if sum != ExactMatrix::identity(field, d) {
            return Err(Error::InvalidModule("idempotents do not sum to the identity".into()));
        }
        for i in 0..dimb {
            for j in 0..dimb {
                let mut rhs = ExactMatrix::zeros(field, d, d);
                for (k, c) in algebra.mul_basis(i, j) {
                    rhs.add_scaled(c, &rho[*k]);
                }
                if rho[i].mul(&rho[j]) != rhs {
                    return Err(Error::InvalidModule(format!("ρ(b{i})ρ(b{j}) ≠ ρ(b{i}b{j})")));
                }
            }
        }
        let bases: Vec<Basis> = algebra.idempotents().iter().map(|&e| rho[e].row_space()).collect();
        let dims: Vec<usize> = bases.iter().map(Basis::dim).collect();
        let maps = algebra
            .quiver()
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let img = bases[arrow.source].rows.mul(&rho[algebra.arrow_element(a)]);
                bases[arrow.target].coords_matrix(&img)
            })
            .collect();
        FDModule::new(algebra, dims, maps)
    }

    pub fn zero(algebra: &Algebra) -> FDModule {
        let f = algebra.field();
        let maps = algebra.quiver().arrows.iter().map(|_| ExactMatrix::zeros(f, 0, 0)).collect();
        FDModule::new_unchecked(algebra, vec![0; algebra.vertex_count()], maps)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.0.algebra
    }
    pub fn field(&self) -> Field {
        self.0.algebra.field()
    }
    pub fn dim(&self) -> usize {
        *self.0.offsets.last().unwrap()
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    /// `dim M e_v` per vertex.
    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }
    pub fn dimension_vector(&self) -> Vec<usize> {
        self.0.dims.clone()
    }
    pub fn offset(&self, v: usize) -> usize {
        self.0.offsets[v]
    }
    pub fn arrow_map(&self, a: usize) -> &ExactMatrix {
        &self.0.maps[a]
    }
    pub fn arrow_maps(&self) -> &[ExactMatrix] {
        &self.0.maps
    }
    pub fn fingerprint(&self) -> u64 {
        self.0.fingerprint
    }

    /// Action of basis element `b` as a map `M e_source → M e_target`.
    pub fn block_action(&self, b: usize) -> &ExactMatrix {
        &self.0.actions.get_or_init(|| {
            let alg = self.algebra();
            alg.basis()
                .iter()
                .map(|be| {
                    let mut m = ExactMatrix::identity(self.field(), self.0.dims[be.source]);
                    for &a in &be.word {
                        m = m.mul(&self.0.maps[a]);
                    }
                    m
                })
                .collect()
        })[b]
    }

    /// Action of a sparse element supported in `e_s A e_t`, as a block.
    pub fn element_action_between(&self, x: &[(usize, Scalar)], s: usize, t: usize) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.field(), self.0.dims[s], self.0.dims[t]);
        for (b, c) in x {
            let be = &self.algebra().basis()[*b];
            debug_assert!(be.source == s && be.target == t);
            out.add_scaled(c, self.block_action(*b));
        }
        out
    }

    /// Full `dim × dim` action matrix of basis element `b`.
    pub fn action(&self, b: usize) -> ExactMatrix {
        let be = &self.algebra().basis()[b];
        let mut out = ExactMatrix::zeros(self.field(), self.dim(), self.dim());
        out.set_block(self.offset(be.source), self.offset(be.target), self.block_action(b));
        out
    }

    /// Action of the whole basis, one matrix per basis element.
    pub fn action_matrices(&self) -> Vec<ExactMatrix> {
        (0..self.algebra().dim()).map(|b| self.action(b)).collect()
    }

    /// Standard duality `D = Hom_K(-, K)`, landing over the opposite algebra.
    pub fn dual(&self) -> FDModule {
        let op = self.algebra().opposite();
        let maps = self.0.maps.iter().map(ExactMatrix::transpose).collect();
        FDModule::new_unchecked(&op, self.0.dims.clone(), maps)
    }

    pub fn direct_sum(parts: &[&FDModule]) -> Result<FDModule> {
        let alg = parts.first().ok_or_else(|| Error::Precondition("empty direct sum".into()))?.algebra().clone();
        if parts.iter().any(|p| !p.algebra().same_as(&alg)) {
            return Err(Error::AlgebraMismatch);
        }
        let n = alg.vertex_count();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims()[v]).sum()).collect();
        let maps = alg
            .quiver()
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let mut m = ExactMatrix::zeros(alg.field(), dims[arrow.source], dims[arrow.target]);
                let (mut r, mut c) = (0, 0);
                for p in parts {
                    m.set_block(r, c, p.arrow_map(a));
                    r += p.dims()[arrow.source];
                    c += p.dims()[arrow.target];
                }
                m
            })
            .collect();
        Ok(FDModule::new_unchecked(&alg, dims, maps))
    }

    /// Moves a module between `A^e` and `(A^e)^op` along `(p, q) ↦ (q, p)`.
    ///
    /// A right `A^e`-module becomes the same bimodule packaged as a left one,
    /// and back.
    pub fn swap_sides(&self) -> Result<FDModule> {
        let alg = self.algebra();
        let base = alg
            .bimodule_base()
            .ok_or_else(|| Error::Precondition("module is not over an enveloping algebra".into()))?;
        let env = base.enveloping_with_cap(usize::MAX)?;
        let target = if alg.provenance() == Provenance::Enveloping && Arc::ptr_eq(alg, &env) {
            env.opposite()
        } else {
            env
        };
        let sw = EnvelopeSwap::new(&base);
        let mut dims = vec![0; self.0.dims.len()];
        for (v, &d) in self.0.dims.iter().enumerate() {
            dims[sw.vertex[v]] = d;
        }
        let mut maps = vec![ExactMatrix::zeros(self.field(), 0, 0); self.0.maps.len()];
        for (a, m) in self.0.maps.iter().enumerate() {
            maps[sw.arrow[a]] = m.clone();
        }
        Ok(FDModule::new_unchecked(&target, dims, maps))
    }

    /// Re-reads the same representation over an algebra with an identical
    /// quiver and structure constants.
    pub fn over(&self, algebra: &Algebra) -> Result<FDModule> {
        if !self.algebra().same_as(algebra) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(FDModule::new_unchecked(algebra, self.0.dims.clone(), self.0.maps.clone()))
    }

    /// Per-vertex bases of `M · rad`.
    pub fn radical_bases(&self) -> Vec<Basis> {
        let alg = self.algebra();
        (0..alg.vertex_count())
            .map(|w| {
                let mut stack = ExactMatrix::zeros(self.field(), 0, self.0.dims[w]);
                for (a, arrow) in alg.quiver().arrows.iter().enumerate() {
                    if arrow.target == w {
                        stack = stack.vstack(&self.0.maps[a]);
                    }
                }
                stack.row_space()
            })
            .collect()
    }

    /// Per-vertex bases of the socle (vectors killed by every arrow).
    pub fn socle_bases(&self) -> Vec<Basis> {
        let alg = self.algebra();
        (0..alg.vertex_count())
            .map(|v| {
                let mut m = ExactMatrix::zeros(self.field(), self.0.dims[v], 0);
                for (a, arrow) in alg.quiver().arrows.iter().enumerate() {
                    if arrow.source == v {
                        m = m.hstack(&self.0.maps[a]);
                    }
                }
                m.kernel()
            })
            .collect()
    }

    pub fn radical_sub(&self) -> FDModule {
        submodule(self, &self.radical_bases()).0
    }

    pub fn top(&self) -> FDModule {
        quotient(self, &self.radical_bases()).0
    }

    pub fn socle(&self) -> FDModule {
        submodule(self, &self.socle_bases()).0
    }

    pub fn is_semisimple(&self) -> bool {
        self.0.maps.iter().all(ExactMatrix::is_zero)
    }
}

/// Indecomposable projective `e_v A`.
pub fn projective(algebra: &Algebra, v: usize) -> FDModule {
    crate::resolution::ProjSum::new(algebra, vec![v]).module
}

pub fn simple(algebra: &Algebra, v: usize) -> FDModule {
    let f = algebra.field();
    let dims = (0..algebra.vertex_count()).map(|w| usize::from(w == v)).collect::<Vec<_>>();
    let maps = algebra
        .quiver()
        .arrows
        .iter()
        .map(|a| ExactMatrix::zeros(f, dims[a.source], dims[a.target]))
        .collect();
    FDModule::new_unchecked(algebra, dims, maps)
}

/// Indecomposable injective `I(v) = D(A e_v)`.
pub fn injective(algebra: &Algebra, v: usize) -> FDModule {
    projective(&algebra.opposite(), v).dual().over(algebra).expect("opposite of opposite")
}

pub fn simples(algebra: &Algebra) -> Vec<FDModule> {
    (0..algebra.vertex_count()).map(|v| simple(algebra, v)).collect()
}

pub fn proj_indecomposables(algebra: &Algebra) -> Vec<FDModule> {
    (0..algebra.vertex_count()).map(|v| projective(algebra, v)).collect()
}

pub fn inj_indecomposables(algebra: &Algebra) -> Vec<FDModule> {
    (0..algebra.vertex_count()).map(|v| injective(algebra, v)).collect()
}

/// The right regular module `A_A`.
pub fn regular_module(algebra: &Algebra) -> FDModule {
    crate::resolution::ProjSum::new(algebra, (0..algebra.vertex_count()).collect()).module
}

/// `A` as a right `A^e`-module: `x · (a, b) = b x a`.
///
/// The space at vertex `(i, k)` is `e_k A e_i`.
pub fn regular_bimodule(algebra: &Algebra) -> Result<FDModule> {
    let env = algebra.enveloping()?;
    let n = algebra.vertex_count();
    let m = algebra.arrow_count();
    let f = algebra.field();
    let mut blocks = vec![Vec::new(); n * n];
    let mut local = vec![0; algebra.dim()];
    for (b, be) in algebra.basis().iter().enumerate() {
        let v = be.target * n + be.source;
        local[b] = blocks[v].len();
        blocks[v].push(b);
    }
    let dims: Vec<usize> = blocks.iter().map(Vec::len).collect();
    let mut maps = vec![ExactMatrix::zeros(f, 0, 0); env.arrow_count()];
    for (ai, a) in algebra.quiver().arrows.iter().enumerate() {
        let ae = algebra.arrow_element(ai);
        for k in 0..n {
            // right multiplication by a on e_k A e_{s a}
            let (src, tgt) = (a.source * n + k, a.target * n + k);
            let mut mat = ExactMatrix::zeros(f, dims[src], dims[tgt]);
            for (r, &b) in blocks[src].iter().enumerate() {
                for (x, c) in algebra.mul_basis(b, ae) {
                    mat.set(r, local[*x], c.clone());
                }
            }
            maps[ai * n + k] = mat;
            // left multiplication by a on e_{t a} A e_k
            let (src, tgt) = (k * n + a.target, k * n + a.source);
            let mut mat = ExactMatrix::zeros(f, dims[src], dims[tgt]);
            for (r, &b) in blocks[src].iter().enumerate() {
                for (x, c) in algebra.mul_basis(ae, b) {
                    mat.set(r, local[*x], c.clone());
                }
            }
            maps[m * n + k * m + ai] = mat;
        }
    }
    Ok(FDModule::new_unchecked(&env, dims, maps))
}

/// `A` as a left `A^e`-module, i.e. a right module over `(A^e)^op`.
pub fn regular_bimodule_left(algebra: &Algebra) -> Result<FDModule> {
    regular_bimodule(algebra)?.swap_sides()
}

/// Checks that `x` is a right `A^e`-module for some `A`; returns `A`.
pub(crate) fn bimodule_base(x: &FDModule) -> Result<Algebra> {
    let alg = x.algebra();
    if alg.provenance() != Provenance::Enveloping {
        return Err(Error::Precondition("expected a right module over an enveloping algebra".into()));
    }
    alg.envelope_base()
        .ok_or_else(|| Error::Precondition("enveloping algebra without a live base".into()))
}

/// `X` as a right `A`-module: the space at `i` is `⊕_k X_(i,k)`.
pub fn restrict_right(x: &FDModule) -> Result<FDModule> {
    let a = bimodule_base(x)?;
    let n = a.vertex_count();
    let f = a.field();
    let dims: Vec<usize> = (0..n).map(|i| (0..n).map(|k| x.dims()[i * n + k]).sum()).collect();
    let maps = a
        .quiver()
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, arrow)| {
            let mut m = ExactMatrix::zeros(f, dims[arrow.source], dims[arrow.target]);
            let (mut r, mut c) = (0, 0);
            for k in 0..n {
                m.set_block(r, c, x.arrow_map(ai * n + k));
                r += x.dims()[arrow.source * n + k];
                c += x.dims()[arrow.target * n + k];
            }
            m
        })
        .collect();
    Ok(FDModule::new_unchecked(&a, dims, maps))
}

/// `X` as a left `A`-module (right `A^op`): the space at `k` is `⊕_i X_(i,k)`.
pub fn restrict_left(x: &FDModule) -> Result<FDModule> {
    let a = bimodule_base(x)?;
    let op = a.opposite();
    let n = a.vertex_count();
    let m = a.arrow_count();
    let f = a.field();
    let dims: Vec<usize> = (0..n).map(|k| (0..n).map(|i| x.dims()[i * n + k]).sum()).collect();
    let maps = op
        .quiver()
        .arrows
        .iter()
        .enumerate()
        .map(|(bi, arrow)| {
            let mut mat = ExactMatrix::zeros(f, dims[arrow.source], dims[arrow.target]);
            let (mut r, mut c) = (0, 0);
            for i in 0..n {
                mat.set_block(r, c, x.arrow_map(m * n + i * m + bi));
                r += x.dims()[i * n + arrow.source];
                c += x.dims()[i * n + arrow.target];
            }
            mat
        })
        .collect();
    Ok(FDModule::new_unchecked(&op, dims, maps))
}

/// `e_k X` as a right `A`-module: the space at `j` is `X_(j,k)`.
pub(crate) fn left_corner(x: &FDModule, k: usize) -> Result<FDModule> {
    let a = bimodule_base(x)?;
    let n = a.vertex_count();
    let dims: Vec<usize> = (0..n).map(|j| x.dims()[j * n + k]).collect();
    let maps = (0..a.arrow_count()).map(|ai| x.arrow_map(ai * n + k).clone()).collect();
    Ok(FDModule::new_unchecked(&a, dims, maps))
}

/// `X e_i` as a right `A^op`-module: the space at `j` is `X_(i,j)`.
pub(crate) fn right_corner(x: &FDModule, i: usize) -> Result<FDModule> {
    let a = bimodule_base(x)?;
    let op = a.opposite();
    let n = a.vertex_count();
    let m = a.arrow_count();
    let dims: Vec<usize> = (0..n).map(|j| x.dims()[i * n + j]).collect();
    let maps = (0..m).map(|bi| x.arrow_map(m * n + i * m + bi).clone()).collect();
    Ok(FDModule::new_unchecked(&op, dims, maps))
}

/// Left multiplication by arrow `β: x → y` as a morphism `e_y X → e_x X`.
pub(crate) fn left_mult_corner(x: &FDModule, beta: usize) -> Result<ModuleMorphism> {
    let a = bimodule_base(x)?;
    let n = a.vertex_count();
    let m = a.arrow_count();
    let arrow = &a.quiver().arrows[beta];
    let src = left_corner(x, arrow.target)?;
    let tgt = left_corner(x, arrow.source)?;
    let blocks = (0..n).map(|j| x.arrow_map(m * n + j * m + beta).clone()).collect();
    Ok(ModuleMorphism::new_unchecked(&src, &tgt, blocks))
}

/// Right multiplication by arrow `α: i → j` as a morphism `X e_i → X e_j` of
/// left modules.
pub(crate) fn right_mult_corner(x: &FDModule, alpha: usize) -> Result<ModuleMorphism> {
    let a = bimodule_base(x)?;
    let n = a.vertex_count();
    let arrow = &a.quiver().arrows[alpha];
    let src = right_corner(x, arrow.source)?;
    let tgt = right_corner(x, arrow.target)?;
    let blocks = (0..n).map(|v| x.arrow_map(alpha * n + v).clone()).collect();
    Ok(ModuleMorphism::new_unchecked(&src, &tgt, blocks))
}

/// Module homomorphism stored as one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMorphism {
    source: FDModule,
    target: FDModule,
    blocks: Vec<ExactMatrix>,
}

impl ModuleMorphism {
    /// Checks shapes and `M_α f_t = f_s N_α` for every arrow `α: s → t`.
    pub fn new(source: &FDModule, target: &FDModule, blocks: Vec<ExactMatrix>) -> Result<ModuleMorphism> {
        if !source.algebra().same_as(target.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        if blocks.len() != source.dims().len() {
            return Err(Error::InvalidMorphism("one block per vertex expected".into()));
        }
        for (v, b) in blocks.iter().enumerate() {
            if b.rows() != source.dims()[v] || b.cols() != target.dims()[v] {
                return Err(Error::InvalidMorphism(format!("block {v} has the wrong shape")));
            }
        }
        let f = ModuleMorphism::new_unchecked(source, target, blocks);
        if !f.intertwines() {
            return Err(Error::InvalidMorphism("does not commute with the action".into()));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: &FDModule, target: &FDModule, blocks: Vec<ExactMatrix>) -> ModuleMorphism {
        let f = ModuleMorphism {
            source: source.clone(),
            target: target.clone(),
            blocks,
        };
        debug_assert!(f.intertwines(), "morphism does not intertwine");
        f
    }

    fn intertwines(&self) -> bool {
        let alg = self.source.algebra();
        alg.quiver().arrows.iter().enumerate().all(|(a, arrow)| {
            self.source.arrow_map(a).mul(&self.blocks[arrow.target])
                == self.blocks[arrow.source].mul(self.target.arrow_map(a))
        })
    }

    pub fn zero(source: &FDModule, target: &FDModule) -> ModuleMorphism {
        let f = source.field();
        let blocks = source
            .dims()
            .iter()
            .zip(target.dims())
            .map(|(&r, &c)| ExactMatrix::zeros(f, r, c))
            .collect();
        ModuleMorphism::new_unchecked(source, target, blocks)
    }

    pub fn identity(m: &FDModule) -> ModuleMorphism {
        let blocks = m.dims().iter().map(|&d| ExactMatrix::identity(m.field(), d)).collect();
        ModuleMorphism::new_unchecked(m, m, blocks)
    }

    pub fn source(&self) -> &FDModule {
        &self.source
    }
    pub fn target(&self) -> &FDModule {
        &self.target
    }
    pub fn blocks(&self) -> &[ExactMatrix] {
        &self.blocks
    }
    pub fn block(&self, v: usize) -> &ExactMatrix {
        &self.blocks[v]
    }

    /// Full `dim M × dim N` matrix.
    pub fn matrix(&self) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.source.field(), self.source.dim(), self.target.dim());
        for (v, b) in self.blocks.iter().enumerate() {
            out.set_block(self.source.offset(v), self.target.offset(v), b);
        }
        out
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &ModuleMorphism) -> Result<ModuleMorphism> {
        if self.target != g.source {
            return Err(Error::InvalidMorphism("composition of non-composable maps".into()));
        }
        let blocks = self.blocks.iter().zip(&g.blocks).map(|(a, b)| a.mul(b)).collect();
        Ok(ModuleMorphism::new_unchecked(&self.source, &g.target, blocks))
    }

    pub fn add(&self, g: &ModuleMorphism) -> ModuleMorphism {
        let blocks = self.blocks.iter().zip(&g.blocks).map(|(a, b)| a.add(b)).collect();
        ModuleMorphism::new_unchecked(&self.source, &self.target, blocks)
    }

    pub fn scale(&self, s: &Scalar) -> ModuleMorphism {
        let blocks = self.blocks.iter().map(|a| a.scale(s)).collect();
        ModuleMorphism::new_unchecked(&self.source, &self.target, blocks)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(ExactMatrix::rank).sum()
    }
    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(ExactMatrix::is_zero)
    }
    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }
    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }
    pub fn is_iso(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }

    /// `D f: D N → D M` over the opposite algebra.
    pub fn dual(&self) -> ModuleMorphism {
        let blocks = self.blocks.iter().map(ExactMatrix::transpose).collect();
        ModuleMorphism::new_unchecked(&self.target.dual(), &self.source.dual(), blocks)
    }

    pub fn kernel(&self) -> (FDModule, ModuleMorphism) {
        let bases: Vec<Basis> = self.blocks.iter().map(ExactMatrix::kernel).collect();
        submodule(&self.source, &bases)
    }

    pub(crate) fn image_bases(&self) -> Vec<Basis> {
        self.blocks.iter().map(ExactMatrix::row_space).collect()
    }

    /// Image with its inclusion into the target.
    pub fn image(&self) -> (FDModule, ModuleMorphism) {
        submodule(&self.target, &self.image_bases())
    }

    pub fn cokernel(&self) -> (FDModule, ModuleMorphism) {
        quotient(&self.target, &self.image_bases())
    }

    /// Corestriction onto the image: `f = coimage · inclusion`.
    pub fn coimage(&self) -> ModuleMorphism {
        let bases = self.image_bases();
        let (img, _) = submodule(&self.target, &bases);
        let blocks = self.blocks.iter().zip(&bases).map(|(b, basis)| basis.coords_matrix(b)).collect();
        ModuleMorphism::new_unchecked(&self.source, &img, blocks)
    }
}

/// Submodule spanned by per-vertex bases (closed under the action), with its
/// inclusion.
pub fn submodule(m: &FDModule, bases: &[Basis]) -> (FDModule, ModuleMorphism) {
    let alg = m.algebra();
    let dims: Vec<usize> = bases.iter().map(Basis::dim).collect();
    let maps = alg
        .quiver()
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            let img = bases[arrow.source].rows.mul(m.arrow_map(a));
            debug_assert!(img.row_vecs().iter().all(|r| bases[arrow.target].contains(r)));
            bases[arrow.target].coords_matrix(&img)
        })
        .collect();
    let sub = FDModule::new_unchecked(alg, dims, maps);
    let incl = ModuleMorphism::new_unchecked(&sub, m, bases.iter().map(|b| b.rows.clone()).collect());
    (sub, incl)
}

/// Projection of `M e_v` onto the complement of `sub` spanned by the unit
/// vectors off `sub.keys`.
fn complement_projection(sub: &Basis, d: usize, field: Field) -> (Vec<usize>, ExactMatrix) {
    let mut is_key = vec![false; d];
    for &k in &sub.keys {
        is_key[k] = true;
    }
    let free: Vec<usize> = (0..d).filter(|&c| !is_key[c]).collect();
    let mut col = vec![usize::MAX; d];
    for (i, &c) in free.iter().enumerate() {
        col[c] = i;
    }
    let mut p = ExactMatrix::zeros(field, d, free.len());
    for (i, &c) in free.iter().enumerate() {
        p.set(c, i, field.one());
    }
    for (r, &k) in sub.keys.iter().enumerate() {
        for &c in &free {
            let x = sub.rows.get(r, c);
            if !x.is_zero() {
                p.set(k, col[c], x.neg());
            }
        }
    }
    (free, p)
}

/// Quotient by a submodule given by per-vertex bases, with the projection.
pub fn quotient(m: &FDModule, sub: &[Basis]) -> (FDModule, ModuleMorphism) {
    let alg = m.algebra();
    let f = m.field();
    let parts: Vec<(Vec<usize>, ExactMatrix)> = sub
        .iter()
        .enumerate()
        .map(|(v, b)| complement_projection(b, m.dims()[v], f))
        .collect();
    let dims: Vec<usize> = parts.iter().map(|p| p.0.len()).collect();
    let maps = alg
        .quiver()
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            m.arrow_map(a)
                .select_rows(&parts[arrow.source].0)
                .mul(&parts[arrow.target].1)
        })
        .collect();
    let q = FDModule::new_unchecked(alg, dims, maps);
    let proj = ModuleMorphism::new_unchecked(m, &q, parts.into_iter().map(|p| p.1).collect());
    (q, proj)
}

/// Homology `ker g / im f` of `X --f--> Y --g--> Z` with `f g = 0`.
pub fn homology(f: &ModuleMorphism, g: &ModuleMorphism) -> Result<FDModule> {
    if f.target() != g.source() {
        return Err(Error::InvalidMorphism("homology of non-composable maps".into()));
    }
    if !f.then(g)?.is_zero() {
        return Err(Error::InvalidMorphism("maps do not compose to zero".into()));
    }
    let kb: Vec<Basis> = g.blocks().iter().map(ExactMatrix::kernel).collect();
    let (k, _) = submodule(g.source(), &kb);
    let inside: Vec<Basis> = f
        .blocks()
        .iter()
        .zip(&kb)
        .map(|(b, basis)| basis.coords_matrix(b).row_space())
        .collect();
    Ok(quotient(&k, &inside).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{build_algebra, parse_presentation, BuildOptions};

    fn build(t: &str) -> Algebra {
        build_algebra(&parse_presentation("t", t).unwrap(), BuildOptions::default()).unwrap()
    }

    const CYC3: &str = "vertices 3\narrow a 1 3\narrow b 3 2\narrow c 2 1\nrelation c*a\nrelation b*c\n";
    const LIN4: &str = "vertices 4\narrow a 1 2\narrow b 2 3\narrow c 3 4\nrelation a*b*c\n";

    #[test]
    fn projective_dims_cyc3() {
        let a = build(CYC3);
        let dims: Vec<usize> = proj_indecomposables(&a).iter().map(FDModule::dim).collect();
        assert_eq!(dims, vec![3, 2, 2]);
        assert_eq!(regular_module(&a).dim(), 7);
    }

    #[test]
    fn regular_module_acts_by_right_multiplication() {
        let a = build(CYC3);
        let r = regular_module(&a);
        let rho = r.action_matrices();
        let back = FDModule::from_action_matrices(&a, &rho).unwrap();
        assert_eq!(back.dims(), r.dims());
        let one: ExactMatrix = a.idempotents().iter().fold(ExactMatrix::zeros(a.field(), 7, 7), |s, &e| s.add(&r.action(e)));
        assert_eq!(one, ExactMatrix::identity(a.field(), 7));
    }

    #[test]
    fn bad_action_rejected() {
        let a = build(LIN4);
        let r = regular_module(&a);
        let mut rho = r.action_matrices();
        rho[a.arrow_element(0)] = rho[a.arrow_element(0)].scale(&a.field().from_i64(2)).add(&r.action(a.arrow_element(1)));
        assert!(FDModule::from_action_matrices(&a, &rho).is_err());
    }

    #[test]
    fn injectives_and_simples() {
        let a = build(LIN4);
        for v in 0..4 {
            let s = simple(&a, v);
            assert_eq!(s.dim(), 1);
            assert_eq!(projective(&a, v).top().dims(), s.dims());
            assert_eq!(injective(&a, v).socle().dims(), s.dims());
        }
        let total: usize = inj_indecomposables(&a).iter().map(FDModule::dim).sum();
        assert_eq!(total, 9);
    }

    #[test]
    fn bimodule_grid_and_restrictions() {
        let a = build(CYC3);
        let x = regular_bimodule(&a).unwrap();
        assert_eq!(x.dim(), 7);
        let grid = a.grid();
        let n = 3;
        for i in 0..n {
            for k in 0..n {
                assert_eq!(x.dims()[i * n + k], grid[k][i]);
            }
        }
        let r = restrict_right(&x).unwrap();
        assert_eq!(r.dims(), regular_module(&a).dims());
        let l = restrict_left(&x).unwrap();
        assert_eq!(l.dims(), regular_module(&a.opposite()).dims());
        let back = x.swap_sides().unwrap().swap_sides().unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn kernel_image_cokernel() {
        let a = build(LIN4);
        let p = projective(&a, 0);
        let id = ModuleMorphism::identity(&p);
        assert!(id.kernel().0.is_zero());
        let z = ModuleMorphism::zero(&p, &p);
        assert_eq!(z.cokernel().0.dims(), p.dims());
        let (top, proj) = quotient(&p, &p.radical_bases());
        assert_eq!(top.dim(), 1);
        let composed = proj.coimage().then(&proj.image().1).unwrap();
        assert_eq!(composed, proj);
    }

    #[test]
    fn dual_is_involutive() {
        let a = build(CYC3);
        let r = regular_module(&a);
        let dd = r.dual().dual();
        assert_eq!(dd.over(&a).unwrap(), r);
    }
}
