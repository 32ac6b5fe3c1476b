//! Hochschild cochains at the suspended level, braces, and the bialgebra
//! structure on the bar construction of the Hochschild complex.
//!
//! A cochain is a map `(SV)^{⊗n} → SV`, stored as a sparse combination of
//! basis letters `(input word, output)`. Its degree is the suspended one,
//! so the Gerstenhaber bracket has degree 0 and `[μ, μ] = 0` is the
//! Stasheff identity. The bar construction `B(C)` is the tensor coalgebra
//! on these letters with their own degrees.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::ainf_core::{words, AInfAlgebra, MultiOp};
use crate::barcobar::{reduced_algebra, DgCoalgebra};
use crate::error::{Error, Result};
use crate::grlin::{Field, GradedMap, GradedSpace, Scalar, Sparse, Vector, Word};

/// A basis cochain: the input word goes to the output basis element, all
/// other words to zero.
pub type Letter = (Word, usize);

pub type Cochain = Sparse<Letter>;

/// A basis element of `B(C)`: a word of basis cochains.
pub type BarWord = Vec<Letter>;

pub type BarElement = Sparse<BarWord>;

/// Cochains on the underlying space of an A∞-algebra, with its structure
/// `μ = Σ b_n` as a distinguished cochain of degree 1.
#[derive(Clone, Debug)]
pub struct HochschildComplex {
    space: GradedSpace,
    mu: Cochain,
}

impl HochschildComplex {
    /// Cochains on all of `A`.
    pub fn new(a: &AInfAlgebra) -> Result<Self> {
        if a.is_weak() {
            return Err(Error::WeakStructure);
        }
        let mut mu = Cochain::new();
        for (_, op) in a.ops() {
            mu.add_assign(&cochain_of_op(op));
        }
        Ok(HochschildComplex {
            space: a.space().clone(),
            mu,
        })
    }

    /// Reduced cochains: maps on `Ā` for an augmented, strictly unital `A`.
    pub fn reduced(a: &AInfAlgebra) -> Result<Self> {
        if a.augmentation().is_none() {
            return Err(Error::MissingAugmentation("reduced cochains need an augmentation".into()));
        }
        let (abar, _) = reduced_algebra(a)?;
        Self::new(&abar)
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn field(&self) -> Field {
        self.space.field()
    }

    pub fn mu(&self) -> &Cochain {
        &self.mu
    }

    fn sdeg(&self, x: usize) -> i64 {
        self.space.degree(x) - 1
    }

    pub fn letter_degree(&self, l: &Letter) -> i64 {
        self.sdeg(l.1) - l.0.iter().map(|&x| self.sdeg(x)).sum::<i64>()
    }

    pub fn word_degree(&self, w: &[Letter]) -> i64 {
        w.iter().map(|l| self.letter_degree(l)).sum()
    }

    /// Basis cochains of arity `n`.
    pub fn basis(&self, n: usize) -> Vec<Letter> {
        let dim = self.space.dim();
        words(dim, n, |_| 0, None)
            .into_iter()
            .flat_map(|w| (0..dim).map(move |o| (w.clone(), o)))
            .collect()
    }

    /// Splits a cochain into homogeneous parts, keyed by degree.
    pub fn homogeneous_parts(&self, c: &Cochain) -> Vec<(i64, Cochain)> {
        let mut parts: std::collections::BTreeMap<i64, Cochain> = Default::default();
        for (l, x) in c {
            parts.entry(self.letter_degree(l)).or_default().add_term(l.clone(), x);
        }
        parts.into_iter().collect()
    }

    /// `c(x_1, …, x_n)` on a basis word.
    pub fn evaluate(&self, c: &Cochain, w: &[usize]) -> Vector {
        let mut out = Vector::new();
        for ((u, o), x) in c {
            if u == w {
                out.add_term(*o, x);
            }
        }
        out
    }

    /// `f{g_1, …, g_k}`: the `g_i` inserted in order into distinct inputs of
    /// `f`, with the Koszul sign `(−1)^{|g_i|·(sdeg of the inputs before g_i)}`.
    pub fn brace(&self, f: &Cochain, gs: &[Cochain]) -> Cochain {
        let field = self.field();
        let mut out = Cochain::new();
        if gs.is_empty() {
            return f.clone();
        }
        let g_terms: Vec<Vec<(&Letter, &crate::grlin::Scalar, i64)>> = gs
            .iter()
            .map(|g| g.iter().map(|(l, c)| (l, c, self.letter_degree(l))).collect())
            .collect();
        for ((wf, of), cf) in f {
            // choose slots i_1 < ⋯ < i_k and a letter of each g_j
            let mut stack: Vec<(usize, usize, Word, i64, crate::grlin::Scalar, i64)> =
                vec![(0, 0, Vec::new(), 0, cf.clone(), 0)];
            // (next g, next slot of f, input word so far, sdeg of it, coefficient, sign exponent)
            while let Some((j, slot, word, sd, coef, sign)) = stack.pop() {
                if j == gs.len() {
                    let mut word = word;
                    word.extend_from_slice(&wf[slot..]);
                    out.add_term((word, *of), &(&coef * &field.sign(sign)));
                    continue;
                }
                for i in slot..wf.len() {
                    let mut pre = word.clone();
                    pre.extend_from_slice(&wf[slot..i]);
                    let pre_sd = sd + wf[slot..i].iter().map(|&x| self.sdeg(x)).sum::<i64>();
                    for &((wg, og), cg, dg) in &g_terms[j] {
                        if *og != wf[i] {
                            continue;
                        }
                        let mut next = pre.clone();
                        next.extend_from_slice(wg);
                        let next_sd = pre_sd + wg.iter().map(|&x| self.sdeg(x)).sum::<i64>();
                        stack.push((j + 1, i + 1, next, next_sd, &coef * cg, sign + dg * pre_sd));
                    }
                }
            }
        }
        out
    }

    /// The Gerstenhaber bracket `[f, g] = f{g} − (−1)^{|f||g|} g{f}`, on
    /// homogeneous parts.
    pub fn bracket(&self, f: &Cochain, g: &Cochain) -> Cochain {
        let mut out = Cochain::new();
        for (df, fh) in self.homogeneous_parts(f) {
            for (dg, gh) in self.homogeneous_parts(g) {
                out.add_assign(&self.brace(&fh, &[gh.clone()]));
                out.add_scaled(&self.brace(&gh, &[fh.clone()]), &-self.field().sign(df * dg));
            }
        }
        out
    }

    /// The Hochschild differential `δc = [μ, c]`.
    pub fn differential(&self, c: &Cochain) -> Cochain {
        self.bracket(&self.mu, c)
    }

    /// The bar construction on these cochains.
    pub fn bar(&self) -> HochschildBar<'_> {
        HochschildBar {
            hc: self,
            letters: RefCell::new(Letters::default()),
            braces: RefCell::new(HashMap::new()),
            blocks: RefCell::new(HashMap::new()),
            products: RefCell::new(HashMap::new()),
        }
    }
}

/// The letters of a multilinear operation.
pub fn cochain_of_op(op: &MultiOp) -> Cochain {
    let mut c = Cochain::new();
    for (w, v) in op.entries() {
        for (&o, x) in v {
            c.add_term((w.clone(), o), x);
        }
    }
    c
}

/// The arity-`n` part of a cochain as an operation of the given degree.
pub fn op_of_cochain(c: &Cochain, n: usize, degree: i64) -> MultiOp {
    let mut op = MultiOp::new(n, degree);
    for ((w, o), x) in c {
        if w.len() == n {
            op.add(w.clone(), &Vector::basis(*o, x.clone()));
        }
    }
    op
}

/// `δc` for a cochain `c : A^{⊗N} → A` given by its structure constants at
/// the suspended level (the convention of [`crate::ainf_core::deform`]).
pub fn hochschild_differential(a: &AInfAlgebra, c: &MultiOp) -> Result<Cochain> {
    let dim = a.dim();
    if c.entries().any(|(w, v)| w.iter().chain(v.keys()).any(|&x| x >= dim)) {
        return Err(Error::ShapeMismatch("cochain index out of range".into()));
    }
    let hc = HochschildComplex::new(a)?;
    Ok(hc.differential(&cochain_of_op(c)))
}

/// Whether `Δ∘D = (f ⊗ D + D ⊗ g)∘Δ` on every basis element, with the
/// name of the first failure.
pub fn coderivation_check(
    c: &DgCoalgebra,
    d: &GradedMap,
    f: &GradedMap,
    g: &GradedMap,
) -> Result<(bool, Option<String>)> {
    Ok(match c.coderivation_failure(d, f, g)? {
        None => (true, None),
        Some(j) => (false, Some(c.space().name(j).to_string())),
    })
}

/// `B(C) = T^c(C)` with deconcatenation, the brace product and the bar
/// differential of the dg algebra `(C, δ, cup)`.
///
/// Letters are interned; braces of letters and products of words are
/// memoized.
pub struct HochschildBar<'a> {
    hc: &'a HochschildComplex,
    letters: RefCell<Letters>,
    braces: RefCell<HashMap<Ids, Rc<Vec<(u32, Scalar)>>>>,
    blocks: RefCell<HashMap<Ids, Rc<Vec<(u32, Scalar)>>>>,
    products: RefCell<HashMap<(Ids, Ids), Rc<IdElement>>>,
}

type Ids = Vec<u32>;
type IdElement = Sparse<Ids>;

#[derive(Default)]
struct Letters {
    list: Vec<Letter>,
    index: HashMap<Letter, u32>,
    degree: Vec<i64>,
}

fn prepend(c: &[(u32, Scalar)], rest: &IdElement, scale: &Scalar, out: &mut IdElement) {
    for (l, x) in c {
        let xs = x * scale;
        for (w, y) in rest {
            let mut v = Vec::with_capacity(w.len() + 1);
            v.push(*l);
            v.extend_from_slice(w);
            out.add_term(v, &(&xs * y));
        }
    }
}

impl HochschildBar<'_> {
    pub fn complex(&self) -> &HochschildComplex {
        self.hc
    }

    fn sign(&self, k: i64) -> Scalar {
        self.hc.field().sign(k)
    }

    fn intern(&self, l: &Letter) -> u32 {
        if let Some(&i) = self.letters.borrow().index.get(l) {
            return i;
        }
        let mut ls = self.letters.borrow_mut();
        let i = ls.list.len() as u32;
        ls.list.push(l.clone());
        ls.index.insert(l.clone(), i);
        ls.degree.push(self.hc.letter_degree(l));
        i
    }

    fn ids(&self, w: &[Letter]) -> Ids {
        w.iter().map(|l| self.intern(l)).collect()
    }

    fn word(&self, w: &[u32]) -> BarWord {
        let ls = self.letters.borrow();
        w.iter().map(|&i| ls.list[i as usize].clone()).collect()
    }

    fn element(&self, x: &IdElement) -> BarElement {
        x.iter().map(|(w, c)| (self.word(w), c.clone())).collect()
    }

    fn degree(&self, w: &[u32]) -> i64 {
        let ls = self.letters.borrow();
        w.iter().map(|&i| ls.degree[i as usize]).sum()
    }

    fn to_ids(&self, c: &Cochain) -> Vec<(u32, Scalar)> {
        c.iter().map(|(l, x)| (self.intern(l), x.clone())).collect()
    }

    fn cochain(&self, i: u32) -> Cochain {
        Cochain::basis(self.letters.borrow().list[i as usize].clone(), self.hc.field().one())
    }

    /// `f{g_1, …, g_k}` on letters, keyed by `[f, g_1, …, g_k]`.
    fn brace_ids(&self, key: &[u32]) -> Rc<Vec<(u32, Scalar)>> {
        if let Some(v) = self.braces.borrow().get(key) {
            return v.clone();
        }
        let gs: Vec<Cochain> = key[1..].iter().map(|&g| self.cochain(g)).collect();
        let v = Rc::new(self.to_ids(&self.hc.brace(&self.cochain(key[0]), &gs)));
        self.braces.borrow_mut().insert(key.to_vec(), v.clone());
        v
    }

    /// `δf` for one letter, `μ{f_1, …, f_k}` for several.
    fn block(&self, fs: &[u32]) -> Rc<Vec<(u32, Scalar)>> {
        if let Some(v) = self.blocks.borrow().get(fs) {
            return v.clone();
        }
        let cs: Vec<Cochain> = fs.iter().map(|&f| self.cochain(f)).collect();
        let c = if cs.len() == 1 {
            self.hc.differential(&cs[0])
        } else {
            self.hc.brace(&self.hc.mu, &cs)
        };
        let v = Rc::new(self.to_ids(&c));
        self.blocks.borrow_mut().insert(fs.to_vec(), v.clone());
        v
    }

    fn product_ids(&self, x: &[u32], y: &[u32]) -> Rc<IdElement> {
        let key = (x.to_vec(), y.to_vec());
        if let Some(v) = self.products.borrow().get(&key) {
            return v.clone();
        }
        let one = self.hc.field().one();
        let mut out = IdElement::new();
        if x.is_empty() && y.is_empty() {
            out.add_term(Vec::new(), &one);
        } else {
            if let Some(&g1) = y.first() {
                let s = self.sign(self.degree(x) * self.degree(&[g1]));
                let rest = self.product_ids(x, &y[1..]);
                prepend(&[(g1, one.clone())], &rest, &s, &mut out);
            }
            if let Some(&f1) = x.first() {
                let dx_rest = self.degree(&x[1..]);
                let mut key = vec![f1];
                for k in 0..=y.len() {
                    if k > 0 {
                        key.push(y[k - 1]);
                    }
                    let b = if k == 0 { Rc::new(vec![(f1, one.clone())]) } else { self.brace_ids(&key) };
                    if b.is_empty() {
                        continue;
                    }
                    let s = self.sign(dx_rest * self.degree(&y[..k]));
                    let rest = self.product_ids(&x[1..], &y[k..]);
                    prepend(&b, &rest, &s, &mut out);
                }
            }
        }
        let out = Rc::new(out);
        self.products.borrow_mut().insert(key, out.clone());
        out
    }

    /// The part of `x·y` of length at most one.
    fn projection(&self, x: &[u32], y: &[u32]) -> IdElement {
        let one = self.hc.field().one();
        match x {
            [] if y.len() <= 1 => IdElement::basis(y.to_vec(), one),
            [f] => {
                let mut key = vec![*f];
                key.extend_from_slice(y);
                let b = if y.is_empty() { Rc::new(vec![(*f, one)]) } else { self.brace_ids(&key) };
                b.iter().map(|(l, c)| (vec![*l], c.clone())).collect()
            }
            _ => IdElement::new(),
        }
    }

    fn product_of_ids(&self, x: &IdElement, y: &IdElement) -> IdElement {
        let mut out = IdElement::new();
        for (u, a) in x {
            for (v, b) in y {
                out.add_scaled(&self.product_ids(u, v), &(a * b));
            }
        }
        out
    }

    fn differential_ids(&self, x: &[u32]) -> IdElement {
        let mut out = IdElement::new();
        let mut before = 0;
        for i in 0..x.len() {
            let s = self.sign(before);
            for k in 1..=x.len() - i {
                for (l, a) in self.block(&x[i..i + k]).iter() {
                    let mut w = x[..i].to_vec();
                    w.push(*l);
                    w.extend_from_slice(&x[i + k..]);
                    out.add_term(w, &(a * &s));
                }
            }
            before += self.degree(&x[i..=i]);
        }
        out
    }

    fn differential_of_ids(&self, x: &IdElement) -> IdElement {
        let mut out = IdElement::new();
        for (w, a) in x {
            out.add_scaled(&self.differential_ids(w), a);
        }
        out
    }

    /// The product of two basis words: the coalgebra map whose only
    /// nonzero components are `[f] ⊗ [g_1…g_k] ↦ f{g_1, …, g_k}` and
    /// `[] ⊗ [g] ↦ g`.
    pub fn product(&self, x: &[Letter], y: &[Letter]) -> BarElement {
        let p = self.product_ids(&self.ids(x), &self.ids(y));
        self.element(&p)
    }

    pub fn product_of(&self, x: &BarElement, y: &BarElement) -> BarElement {
        let mut out = BarElement::new();
        for (u, a) in x {
            for (v, b) in y {
                out.add_scaled(&self.product(u, v), &(a * b));
            }
        }
        out
    }

    /// Deconcatenation.
    pub fn coproduct(&self, x: &[Letter]) -> Sparse<(BarWord, BarWord)> {
        let one = self.hc.field().one();
        (0..=x.len())
            .map(|i| ((x[..i].to_vec(), x[i..].to_vec()), one.clone()))
            .collect()
    }

    /// The coderivation with components `D_1 = δ` and
    /// `D_k(f_1, …, f_k) = μ{f_1, …, f_k}` for `k ≥ 2`.
    pub fn differential(&self, x: &[Letter]) -> BarElement {
        let d = self.differential_ids(&self.ids(x));
        self.element(&d)
    }

    pub fn differential_of(&self, x: &BarElement) -> BarElement {
        let mut out = BarElement::new();
        for (w, a) in x {
            out.add_scaled(&self.differential(w), a);
        }
        out
    }

    /// All words of length at most `max_length` in the basis cochains of
    /// arity at most `max_arity`.
    pub fn window(&self, max_length: usize, max_arity: usize) -> Vec<BarWord> {
        self.window_ids(max_length, max_arity).iter().map(|w| self.word(w)).collect()
    }

    fn window_ids(&self, max_length: usize, max_arity: usize) -> Vec<Ids> {
        let letters: Vec<u32> = (0..=max_arity)
            .flat_map(|n| self.hc.basis(n))
            .map(|l| self.intern(&l))
            .collect();
        let mut out = vec![Vec::new()];
        let mut layer: Vec<Ids> = vec![Vec::new()];
        for _ in 0..max_length {
            let mut next = Vec::new();
            for w in &layer {
                for &l in &letters {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    fn describe(&self, ws: &[&Ids]) -> String {
        let names: Vec<String> = ws.iter().map(|w| self.hc.describe_word(&self.word(w))).collect();
        names.join(" ⊗ ")
    }

    /// Checks the bialgebra identities on every word (pair, triple) of the
    /// window.
    ///
    /// Both `(xy)z` and `x(yz)` are coalgebra maps into the cofree `T^c(C)`,
    /// so associativity is compared on their parts of length at most one for
    /// every triple, and in full when `|x| + |y| + |z| ≤ max_length`.
    pub fn verify(&self, max_length: usize, max_arity: usize) -> Result<BialgebraReport> {
        if max_length == 0 {
            return Err(Error::TruncationTooSmall("words of length 0 only".into()));
        }
        let one = self.hc.field().one();
        let ws = self.window_ids(max_length, max_arity);
        let mut report = BialgebraReport {
            words: ws.len(),
            ..Default::default()
        };
        let empty: Ids = Vec::new();
        let splits = |x: &Ids| -> Vec<(Ids, Ids)> { (0..=x.len()).map(|i| (x[..i].to_vec(), x[i..].to_vec())).collect() };
        for x in &ws {
            let xe = IdElement::basis(x.clone(), one.clone());
            if report.unit.is_none()
                && (*self.product_ids(&empty, x) != xe || *self.product_ids(x, &empty) != xe)
            {
                report.unit = Some(self.describe(&[x]));
            }
            // coassociativity of deconcatenation
            if report.coassociativity.is_none() {
                let mut l = Sparse::<(Ids, Ids, Ids)>::new();
                let mut r = Sparse::<(Ids, Ids, Ids)>::new();
                for (a, b) in splits(x) {
                    for (a1, a2) in splits(&a) {
                        l.add_term((a1, a2, b.clone()), &one);
                    }
                    for (b1, b2) in splits(&b) {
                        r.add_term((a.clone(), b1, b2), &one);
                    }
                }
                if l != r {
                    report.coassociativity = Some(self.describe(&[x]));
                }
            }
            // D² = 0 and D a coderivation
            let dx = self.differential_ids(x);
            if report.d_squared.is_none() && !self.differential_of_ids(&dx).is_zero() {
                report.d_squared = Some(self.describe(&[x]));
            }
            if report.coderivation.is_none() {
                let mut left = Sparse::<(Ids, Ids)>::new();
                for (w, c) in &dx {
                    for split in splits(w) {
                        left.add_term(split, c);
                    }
                }
                let mut right = Sparse::new();
                for (a, b) in splits(x) {
                    for (da, e) in &self.differential_ids(&a) {
                        right.add_term((da.clone(), b.clone()), e);
                    }
                    let s = self.sign(self.degree(&a));
                    for (db, e) in &self.differential_ids(&b) {
                        right.add_term((a.clone(), db.clone()), &(e * &s));
                    }
                }
                if left != right {
                    report.coderivation = Some(self.describe(&[x]));
                }
            }
        }
        for x in &ws {
            let dxw = self.degree(x);
            let dx = self.differential_ids(x);
            let xe = IdElement::basis(x.clone(), one.clone());
            for y in &ws {
                let xy = self.product_ids(x, y);
                report.pairs += 1;
                if report.multiplicativity.is_none() {
                    let mut left = Sparse::<(Ids, Ids)>::new();
                    for (w, c) in xy.iter() {
                        for split in splits(w) {
                            left.add_term(split, c);
                        }
                    }
                    let mut right = Sparse::new();
                    for (x1, x2) in splits(x) {
                        for (y1, y2) in splits(y) {
                            let s = self.sign(self.degree(&x2) * self.degree(&y1));
                            let p = self.product_ids(&x1, &y1);
                            let q = self.product_ids(&x2, &y2);
                            for (u, c) in p.iter() {
                                let cs = c * &s;
                                for (v, d) in q.iter() {
                                    right.add_term((u.clone(), v.clone()), &(&cs * d));
                                }
                            }
                        }
                    }
                    if left != right {
                        report.multiplicativity = Some(self.describe(&[x, y]));
                    }
                }
                if report.derivation.is_none() {
                    let ye = IdElement::basis(y.clone(), one.clone());
                    let left = self.differential_of_ids(&xy);
                    let mut right = self.product_of_ids(&dx, &ye);
                    let dy = self.differential_ids(y);
                    right.add_scaled(&self.product_of_ids(&xe, &dy), &self.sign(dxw));
                    if left != right {
                        report.derivation = Some(self.describe(&[x, y]));
                    }
                }
                if report.associativity.is_none() {
                    for z in &ws {
                        report.triples += 1;
                        let mut left = IdElement::new();
                        for (u, a) in xy.iter().filter(|(u, _)| u.len() <= 1) {
                            left.add_scaled(&self.projection(u, z), a);
                        }
                        let yz = self.product_ids(y, z);
                        let mut right = IdElement::new();
                        for (v, b) in yz.iter() {
                            right.add_scaled(&self.projection(x, v), b);
                        }
                        if left == right && x.len() + y.len() + z.len() <= max_length {
                            left = IdElement::new();
                            for (u, a) in xy.iter() {
                                left.add_scaled(&self.product_ids(u, z), a);
                            }
                            right = IdElement::new();
                            for (v, b) in yz.iter() {
                                right.add_scaled(&self.product_ids(x, v), b);
                            }
                        }
                        if left != right {
                            report.associativity = Some(self.describe(&[x, y, z]));
                            break;
                        }
                    }
                }
            }
        }
        Ok(report)
    }
}

/// Outcome of [`HochschildBar::verify`]; each field names the first
/// failing input, if any.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BialgebraReport {
    pub words: usize,
    pub pairs: usize,
    pub triples: usize,
    pub associativity: Option<String>,
    pub unit: Option<String>,
    pub coassociativity: Option<String>,
    pub multiplicativity: Option<String>,
    pub derivation: Option<String>,
    pub coderivation: Option<String>,
    pub d_squared: Option<String>,
}

impl BialgebraReport {
    pub fn holds(&self) -> bool {
        [
            &self.associativity,
            &self.unit,
            &self.coassociativity,
            &self.multiplicativity,
            &self.derivation,
            &self.coderivation,
            &self.d_squared,
        ]
        .iter()
        .all(|w| w.is_none())
    }
}

impl HochschildComplex {
    /// `x_1x_2↦y` style name of a letter.
    pub fn describe_letter(&self, l: &Letter) -> String {
        let ins: Vec<&str> = l.0.iter().map(|&x| self.space.name(x)).collect();
        format!("({})↦{}", ins.join(","), self.space.name(l.1))
    }

    pub fn describe_word(&self, w: &[Letter]) -> String {
        let ls: Vec<String> = w.iter().map(|l| self.describe_letter(l)).collect();
        format!("[{}]", ls.join("|"))
    }
}

/// Builds `B(C(A, A))` for the reduced cochains of `a` and verifies the
/// bialgebra identities on words of length `≤ max_length` in cochains of
/// arity `≤ max_arity`.
pub fn hochschild_bar_bialgebra(
    a: &AInfAlgebra,
    max_length: usize,
    max_arity: usize,
) -> Result<(HochschildComplex, BialgebraReport)> {
    let hc = HochschildComplex::reduced(a)?;
    let report = hc.bar().verify(max_length, max_arity)?;
    Ok((hc, report))
}
