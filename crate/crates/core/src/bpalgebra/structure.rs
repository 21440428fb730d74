use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_traits::One;

use super::monomial::{is_t, is_v, Generator, Monomial};
use super::poly::Poly;
use super::series::PowerSeries;
use super::tensor::Tensor;
use crate::error::{Error, Result};
use crate::exactlin::ExactRational;

/// Prime, degree bound, and the generator ranges they admit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorTable {
    pub p: u64,
    pub degree_bound: u32,
}

impl GeneratorTable {
    pub fn new(p: u64, degree_bound: u32) -> Result<Self> {
        if p < 2 || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if degree_bound % 2 != 0 {
            return Err(Error::Invalid(format!("degree bound {degree_bound} is odd")));
        }
        Ok(GeneratorTable { p, degree_bound })
    }

    /// Largest `n` with `2(p^n - 1) <= degree_bound`.
    pub fn max_vt_index(&self) -> u16 {
        let mut n = 0u16;
        while Generator::V(n + 1).degree(self.p) <= self.degree_bound {
            n += 1;
        }
        n
    }

    pub fn max_b_index(&self) -> u16 {
        (self.degree_bound / 2) as u16
    }

    pub fn degree(&self, g: Generator) -> u32 {
        g.degree(self.p)
    }
}

/// Structure maps of the Hopf algebroid `(BP_*, BP_*BP)` up to a degree bound,
/// with Hazewinkel generators.
///
/// Tensors over `Γ` are stored as words of monomials. `Δ` values are kept in left form
/// (coefficients in the first slot); `right_normalize` moves coefficients to the last slot.
pub struct BpAlgebra {
    table: GeneratorTable,
    n: u16,
    m_in_v: Vec<Poly>,
    v_in_m: Vec<Poly>,
    eta_m: Vec<Poly>,
    eta_v: Vec<Poly>,
    delta_t: Vec<Tensor>,
    eta_cache: RwLock<HashMap<Monomial, Arc<Poly>>>,
    delta_cache: RwLock<HashMap<Monomial, Arc<Tensor>>>,
}

impl std::fmt::Debug for BpAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BpAlgebra").field("table", &self.table).finish()
    }
}

fn v(i: u16) -> Poly {
    Poly::generator(Generator::V(i))
}

fn t_pow(i: u16, e: u32) -> Monomial {
    if i == 0 {
        Monomial::one()
    } else {
        Monomial::power(Generator::T(i), e as u16)
    }
}

fn rat(n: u64) -> ExactRational {
    ExactRational::from_integer(n.into())
}

fn check_p_integral(p: u64, context: &str, x: &Poly) -> Result<()> {
    match x.non_p_integral(p) {
        None => Ok(()),
        Some((m, c)) => Err(Error::Integrality {
            context: format!("{context} at {m}"),
            value: c.to_string(),
            p,
        }),
    }
}

fn check_tensor_p_integral(p: u64, context: &str, x: &Tensor) -> Result<()> {
    for (w, c) in x.terms() {
        if !crate::exactlin::is_p_integral(c, p) {
            let word: Vec<String> = w.iter().map(|m| m.to_string()).collect();
            return Err(Error::Integrality {
                context: format!("{context} at {}", word.join(" (x) ")),
                value: c.to_string(),
                p,
            });
        }
    }
    Ok(())
}

/// `(m_in_v, v_in_m)` from `p m_n = Σ_{i<n} m_i v_{n-i}^{p^i}`, indices `0..=n`.
pub fn build_m_v_tables(table: &GeneratorTable) -> (Vec<Poly>, Vec<Poly>) {
    let p = table.p;
    let n = table.max_vt_index();
    let inv_p = ExactRational::new(1.into(), p.into());
    let mut m_in_v = vec![Poly::one()];
    for k in 1..=n {
        let mut acc = Poly::zero();
        for i in 0..k {
            acc = acc.add(&m_in_v[i as usize].mul(&v(k - i).pow(p.pow(i as u32) as u32)));
        }
        m_in_v.push(acc.scale(&inv_p));
    }
    // v_k = p m_k - Σ_{0<i<k} m_i v_{k-i}^{p^i}, with v_{k-i} already written in m's.
    let mut v_in_m = vec![Poly::one()];
    for k in 1..=n {
        let mut acc = Poly::generator(Generator::M(k)).scale(&rat(p));
        for i in 1..k {
            let term = Poly::generator(Generator::M(i)).mul(&v_in_m[(k - i) as usize].pow(p.pow(i as u32) as u32));
            acc = acc.sub(&term);
        }
        v_in_m.push(acc);
    }
    (m_in_v, v_in_m)
}

impl BpAlgebra {
    pub fn new(table: GeneratorTable) -> Result<Self> {
        let p = table.p;
        let n = table.max_vt_index();
        let (m_in_v, v_in_m) = build_m_v_tables(&table);

        let mut eta_m = vec![Poly::one()];
        for k in 1..=n {
            let mut acc = Poly::zero();
            for j in 0..=k {
                let t = Poly::monomial(t_pow(k - j, p.pow(j as u32) as u32), ExactRational::one());
                acc = acc.add(&m_in_v[j as usize].mul(&t));
            }
            eta_m.push(acc);
        }

        let mut eta_v = vec![Poly::one()];
        for k in 1..=n {
            let mut acc = eta_m[k as usize].scale(&rat(p));
            for i in 1..k {
                let term = eta_m[i as usize].mul(&eta_v[(k - i) as usize].pow(p.pow(i as u32) as u32));
                acc = acc.sub(&term);
            }
            check_p_integral(p, &format!("eta_R(v{k})"), &acc)?;
            eta_v.push(acc);
        }

        // Δ(t_k) = Σ_{i+j+l=k} m_i t_j^{p^i} ⊗ t_l^{p^{i+j}} - Σ_{i≥1} m_i Δ(t_{k-i})^{p^i}
        let mut delta_t: Vec<Tensor> = vec![Tensor::unit(2)];
        for k in 1..=n {
            let mut acc = Tensor::zero(2);
            for i in 0..=k {
                for j in 0..=(k - i) {
                    let l = k - i - j;
                    let left = t_pow(j, p.pow(i as u32) as u32);
                    let right = t_pow(l, p.pow((i + j) as u32) as u32);
                    let w = Tensor::word(vec![left, right], ExactRational::one());
                    acc = acc.add(&w.mul_slot(0, &m_in_v[i as usize]));
                }
            }
            for i in 1..=k {
                let pw = delta_t[(k - i) as usize].pow(p.pow(i as u32) as u32);
                acc = acc.sub(&pw.mul_slot(0, &m_in_v[i as usize]));
            }
            check_tensor_p_integral(p, &format!("Delta(t{k})"), &acc)?;
            delta_t.push(acc);
        }

        Ok(BpAlgebra {
            table,
            n,
            m_in_v,
            v_in_m,
            eta_m,
            eta_v,
            delta_t,
            eta_cache: RwLock::new(HashMap::new()),
            delta_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn with_bound(p: u64, degree_bound: u32) -> Result<Self> {
        BpAlgebra::new(GeneratorTable::new(p, degree_bound)?)
    }

    pub fn table(&self) -> &GeneratorTable {
        &self.table
    }

    pub fn p(&self) -> u64 {
        self.table.p
    }

    pub fn degree_bound(&self) -> u32 {
        self.table.degree_bound
    }

    pub fn max_index(&self) -> u16 {
        self.n
    }

    /// `m_k` as a rational polynomial in the `v`'s.
    pub fn m_in_v(&self, k: u16) -> &Poly {
        &self.m_in_v[k as usize]
    }

    /// `v_k` as a polynomial in the `m`'s.
    pub fn v_in_m(&self, k: u16) -> &Poly {
        &self.v_in_m[k as usize]
    }

    /// `η_R(m_k)` in `v`'s and `t`'s.
    pub fn eta_r_m(&self, k: u16) -> &Poly {
        &self.eta_m[k as usize]
    }

    fn check_index(&self, k: u16) -> Result<()> {
        if k > self.n {
            return Err(Error::DegreeBound {
                degree: Generator::V(k).degree(self.p()),
                bound: self.degree_bound(),
            });
        }
        Ok(())
    }

    /// Right unit on a polynomial in the `v`'s; other generators pass through unchanged.
    pub fn eta_r(&self, x: &Poly) -> Result<Poly> {
        for (m, _) in x.terms() {
            for (g, _) in m.factors() {
                if let Generator::V(k) = g {
                    self.check_index(k)?;
                }
            }
        }
        let out = x.substitute(&|g| match g {
            Generator::V(k) => Some(self.eta_v[k as usize].clone()),
            _ => None,
        });
        check_p_integral(self.p(), "eta_R", &out)?;
        Ok(out)
    }

    /// `η_R` of a monomial in the `v`'s, cached.
    pub fn eta_r_monomial(&self, m: &Monomial) -> Arc<Poly> {
        if let Some(x) = self.eta_cache.read().unwrap().get(m) {
            return x.clone();
        }
        let mut acc = Poly::one();
        for (g, e) in m.factors() {
            match g {
                Generator::V(k) => acc = acc.mul(&self.eta_v[k as usize].pow(e as u32)),
                _ => panic!("eta_r_monomial on a non-v generator {g}"),
            }
        }
        let acc = Arc::new(acc);
        self.eta_cache.write().unwrap().insert(m.clone(), acc.clone());
        acc
    }

    /// `Δ(t_k)` in left form.
    pub fn delta_t(&self, k: u16) -> Result<Tensor> {
        self.check_index(k)?;
        Ok(self.delta_t[k as usize].clone())
    }

    /// `Δ` of a monomial `v^β t^α` of `Γ`, in left form.
    pub fn delta_left(&self, m: &Monomial) -> Arc<Tensor> {
        if let Some(x) = self.delta_cache.read().unwrap().get(m) {
            return x.clone();
        }
        let (vpart, tpart) = m.split(is_v);
        let mut acc = Tensor::word(vec![vpart, Monomial::one()], ExactRational::one());
        for (g, e) in tpart.factors() {
            match g {
                Generator::T(k) => acc = acc.mul(&self.delta_t[k as usize].pow(e as u32)),
                _ => panic!("delta on a non-Gamma generator {g}"),
            }
        }
        let acc = Arc::new(acc);
        self.delta_cache.write().unwrap().insert(m.clone(), acc.clone());
        acc
    }

    /// Moves every `v` out of all slots but the last, using `a γ ⊗ x = γ ⊗ a x - γ(η_R(a) - a) ⊗ x`.
    /// The result has pure `t`-monomials in the leading slots.
    pub fn right_normalize(&self, x: &Tensor) -> Tensor {
        let k = x.slots();
        let mut cur = x.clone();
        for i in 0..k.saturating_sub(1) {
            cur = self.push_slot(cur, i);
        }
        cur
    }

    fn push_slot(&self, x: Tensor, i: usize) -> Tensor {
        let k = x.slots();
        let mut done = Tensor::zero(k);
        let mut pending = x;
        while !pending.is_zero() {
            let mut next = Tensor::zero(k);
            for (w, c) in pending.into_terms() {
                let (vpart, rest) = w[i].split(is_v);
                if vpart.is_one() {
                    done.add_term(w, c);
                    continue;
                }
                let mut moved = w.clone();
                moved[i] = rest.clone();
                moved[i + 1] = moved[i + 1].mul(&vpart);
                next.add_term(moved, c.clone());
                let eta = self.eta_r_monomial(&vpart);
                for (m, y) in eta.terms() {
                    if *m == vpart {
                        continue;
                    }
                    let mut w2 = w.clone();
                    w2[i] = rest.mul(m);
                    next.add_term(w2, -(&c * y));
                }
            }
            pending = next;
        }
        done
    }

    /// Left form: folds coefficients leftwards via `γ ⊗ a x = γ η_R(a) ⊗ x`
    /// until only the first slot carries `v`'s.
    pub fn left_normalize(&self, x: &Tensor) -> Tensor {
        let k = x.slots();
        let mut cur = x.clone();
        for i in (1..k).rev() {
            let mut out = Tensor::zero(k);
            for (w, c) in cur.into_terms() {
                let (vpart, rest) = w[i].split(is_v);
                if vpart.is_one() {
                    out.add_term(w, c);
                    continue;
                }
                let eta = self.eta_r_monomial(&vpart);
                for (m, y) in eta.terms() {
                    let mut w2 = w.clone();
                    w2[i] = rest.clone();
                    w2[i - 1] = w2[i - 1].mul(m);
                    out.add_term(w2, &c * y);
                }
            }
            cur = out;
        }
        cur
    }

    /// `Δ` applied to slot `i` of a tensor whose slot `i` lies in `Γ`, in left form at that slot.
    pub fn delta_at(&self, x: &Tensor, i: usize) -> Tensor {
        x.expand_slot(i, &mut |m| (*self.delta_left(m)).clone())
    }

    /// Counit on slot `i`: kills positive `t`-degree; `v`'s move to the next slot.
    pub fn counit_at(&self, x: &Tensor, i: usize) -> Tensor {
        let k = x.slots();
        let mut out = Tensor::zero(k - 1);
        for (w, c) in x.terms() {
            if w[i].has_any(is_t) {
                continue;
            }
            let mut w2: Vec<Monomial> = Vec::with_capacity(k - 1);
            w2.extend_from_slice(&w[..i]);
            if i + 1 < k {
                w2.push(w[i].mul(&w[i + 1]));
                w2.extend_from_slice(&w[i + 2..]);
            } else {
                let last = w2.pop().expect("counit on a rank-1 tensor");
                w2.push(last.mul(&w[i]));
            }
            out.add_term(w2, c.clone());
        }
        out
    }

    /// `g(B_i)` for `i = 0..=max_i`: coefficients of `x^{i+1}` in `Σ^F t_j x^{p^j}`,
    /// computed as `exp(Σ_n η_R(m_n) x^{p^n})` with `exp` inverse to `Σ m_n x^{p^n}`.
    pub fn typicalize_b_series(&self, max_i: u16) -> Result<Vec<Poly>> {
        if max_i > self.table.max_b_index() {
            return Err(Error::DegreeBound {
                degree: 2 * max_i as u32,
                bound: self.degree_bound(),
            });
        }
        let p = self.p();
        let order = max_i as usize + 1;
        let mut log_l = PowerSeries::zero(order);
        let mut log_r = PowerSeries::zero(order);
        for k in 0..=self.n {
            let e = p.pow(k as u32) as usize;
            if e <= order {
                log_l.set_coeff(e, self.m_in_v[k as usize].clone());
                log_r.set_coeff(e, self.eta_m[k as usize].clone());
            }
        }
        let g = log_l.reversion().compose(&log_r);
        let mut out = Vec::with_capacity(order);
        for i in 0..=max_i {
            let c = g.coeff(i as usize + 1).clone();
            check_p_integral(p, &format!("g(B{i})"), &c)?;
            out.push(c);
        }
        Ok(out)
    }
}

impl BpAlgebra {
    /// Series `h` with `ψ(b)(x) = b(h(x))` on `BP_*(MU)`, for `i = 0..=max_i`.
    ///
    /// `h(x) = -g^{-1}(-x)` where `g` is the typicalized series: the inverse makes the
    /// coaction coassociative for the powers-on-the-left coproduct of `MU_*MU`, and the sign
    /// twist rescales `B_i` by `(-1)^i` so that `ψ(B_1) = 1 ⊗ B_1 + t_1 ⊗ 1`.
    pub fn coaction_series(&self, max_i: u16) -> Result<Vec<Poly>> {
        let g = self.typicalize_b_series(max_i)?;
        let order = max_i as usize + 1;
        let series = PowerSeries::from_coeffs(order, g.iter().enumerate().map(|(k, c)| (k + 1, c.clone())));
        let inv = series.reversion();
        let out: Vec<Poly> = (0..=max_i as usize)
            .map(|k| {
                let c = inv.coeff(k + 1);
                if k % 2 == 1 { c.neg() } else { c.clone() }
            })
            .collect();
        for (k, c) in out.iter().enumerate() {
            check_p_integral(self.p(), &format!("h(B{k})"), c)?;
        }
        Ok(out)
    }
}

/// `Σ_j [x^{i+1}] b(x)^{j+1} ⊗ B_j` for `b(x) = Σ_k images[k] x^{k+1}`, `images[0] = 1`.
/// With `images[k] = B_k` this is the coproduct of `B_i` in `MU_*MU`.
pub fn b_series_coproduct(i: u16, images: &[Poly]) -> Tensor {
    let order = i as usize + 1;
    let b = PowerSeries::from_coeffs(
        order,
        images.iter().enumerate().take(order).map(|(k, c)| (k + 1, c.clone())),
    );
    let mut out = Tensor::zero(2);
    let mut power = b.clone();
    for j in 0..=i {
        let right = if j == 0 { Monomial::one() } else { Monomial::generator(Generator::B(j)) };
        let coeff = power.coeff(order);
        let w = Tensor::word(vec![Monomial::one(), right], ExactRational::one());
        out = out.add(&w.mul_slot(0, coeff));
        power = power.mul(&b);
    }
    out
}

/// Coproduct of `B_i` in `MU_*MU`, left slot in the `B`'s.
pub fn mu_coproduct_b(i: u16) -> Tensor {
    let images: Vec<Poly> = (0..=i)
        .map(|k| if k == 0 { Poly::one() } else { Poly::generator(Generator::B(k)) })
        .collect();
    b_series_coproduct(i, &images)
}
