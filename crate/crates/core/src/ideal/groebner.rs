//! Buchberger's algorithm with the Gebauer–Möller pair criteria and the sugar
//! selection strategy, generic over the coefficient field.

use std::cmp::Ordering;

use crate::field::Coeffs;
use crate::poly::{Monomial, TermOrder};

/// Terms sorted strictly descending under the engine's order.
pub(crate) type DPoly<E> = Vec<(Monomial, E)>;

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

pub(crate) struct Engine<'a, C: Coeffs> {
    field: &'a C,
    order: TermOrder,
    polys: Vec<DPoly<C::E>>,
    masks: Vec<u64>,
    sugar: Vec<u32>,
    active: Vec<usize>,
}

pub(crate) enum Outcome<E> {
    Unit,
    Basis(Vec<DPoly<E>>),
}

pub(crate) fn sort_poly<E>(order: TermOrder, p: &mut DPoly<E>) {
    p.sort_by(|a, b| order.compare(&b.0, &a.0));
}

impl<'a, C: Coeffs> Engine<'a, C> {
    pub(crate) fn new(field: &'a C, order: TermOrder) -> Self {
        Engine {
            field,
            order,
            polys: Vec::new(),
            masks: Vec::new(),
            sugar: Vec::new(),
            active: Vec::new(),
        }
    }

    /// Reduced Gröbner basis of `gens`; inputs must be sorted under the order.
    pub(crate) fn run(mut self, gens: Vec<DPoly<C::E>>) -> Outcome<C::E> {
        let mut pairs: Vec<Pair> = Vec::new();
        let mut gens: Vec<_> = gens.into_iter().filter(|g| !g.is_empty()).collect();
        // Small leading terms first keeps early reductions cheap.
        gens.sort_by(|a, b| self.order.compare(&a[0].0, &b[0].0));
        for g in gens {
            let sugar = g.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
            let h = self.reduce(g);
            if h.is_empty() {
                continue;
            }
            if h[0].0.is_one() {
                return Outcome::Unit;
            }
            self.insert(h, sugar, &mut pairs);
        }
        while !pairs.is_empty() {
            let k = self.select(&pairs);
            let pair = pairs.swap_remove(k);
            let s = self.spoly(pair.i, pair.j, &pair.lcm);
            let h = self.reduce(s);
            if h.is_empty() {
                continue;
            }
            if h[0].0.is_one() {
                return Outcome::Unit;
            }
            self.insert(h, pair.sugar, &mut pairs);
        }
        Outcome::Basis(self.finish())
    }

    fn select(&self, pairs: &[Pair]) -> usize {
        let mut best = 0;
        for (k, p) in pairs.iter().enumerate().skip(1) {
            let b = &pairs[best];
            let better = p
                .sugar
                .cmp(&b.sugar)
                .then_with(|| self.order.compare(&p.lcm, &b.lcm))
                .then_with(|| (p.i, p.j).cmp(&(b.i, b.j)));
            if better == Ordering::Less {
                best = k;
            }
        }
        best
    }

    fn lm(&self, i: usize) -> &Monomial {
        &self.polys[i][0].0
    }

    /// Gebauer–Möller update with the new monic element `h`.
    fn insert(&mut self, h: DPoly<C::E>, sugar: u32, pairs: &mut Vec<Pair>) {
        let h = self.make_monic(h);
        let hi = self.polys.len();
        self.masks.push(h[0].0.support_mask());
        self.polys.push(h);
        self.sugar.push(sugar);
        let lm_h = self.lm(hi).clone();

        let mut candidates: Vec<(usize, Monomial)> = self
            .active
            .iter()
            .map(|&g| (g, lm_h.lcm(self.lm(g))))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g, lcm)) = candidates.pop() {
            let coprime = lm_h.coprime(self.lm(g));
            let dominated = candidates.iter().chain(kept.iter()).any(|(_, l)| l.divides(&lcm));
            if coprime || !dominated {
                kept.push((g, lcm));
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !lm_h.coprime(self.lm(*g)))
            .map(|(g, lcm)| {
                let s = self.pair_sugar(g, hi, &lcm);
                Pair { i: g, j: hi, lcm, sugar: s }
            })
            .collect();

        pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && lm_h.lcm(self.lm(p.i)) != p.lcm
                && lm_h.lcm(self.lm(p.j)) != p.lcm)
        });
        pairs.extend(new_pairs);

        let polys = &self.polys;
        self.active.retain(|&g| !lm_h.divides(&polys[g][0].0));
        self.active.push(hi);
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let d = lcm.degree();
        let si = self.sugar[i] + d - self.lm(i).degree();
        let sj = self.sugar[j] + d - self.lm(j).degree();
        si.max(sj)
    }

    fn spoly(&self, i: usize, j: usize, lcm: &Monomial) -> DPoly<C::E> {
        // Both are monic.
        let mi = self.lm(i).quotient_of(lcm);
        let mj = self.lm(j).quotient_of(lcm);
        let a = &self.polys[i][1..];
        let b = &self.polys[j][1..];
        let one = self.field.one();
        let minus_one = self.field.neg(&one);
        merge_scaled(self.field, self.order, a, &mi, &one, b, &mj, &minus_one)
    }

    fn find_reducer(&self, m: &Monomial) -> Option<usize> {
        let mask = m.support_mask();
        let mut best: Option<usize> = None;
        for &g in &self.active {
            if self.masks[g] & !mask != 0 {
                continue;
            }
            if self.lm(g).divides(m) && best.map_or(true, |b| self.polys[g].len() < self.polys[b].len()) {
                best = Some(g);
            }
        }
        best
    }

    /// Full reduction of `f` by the active set.
    fn reduce(&self, f: DPoly<C::E>) -> DPoly<C::E> {
        reduce_with(self.field, self.order, f, |m| {
            self.find_reducer(m).map(|g| &self.polys[g])
        })
    }

    fn make_monic(&self, mut h: DPoly<C::E>) -> DPoly<C::E> {
        if !self.field.is_one(&h[0].1) {
            let inv = self.field.inv(&h[0].1);
            for t in h.iter_mut() {
                t.1 = self.field.mul(&t.1, &inv);
            }
        }
        h
    }

    fn finish(self) -> Vec<DPoly<C::E>> {
        let active: Vec<usize> = self.active.clone();
        let mut out: Vec<DPoly<C::E>> = Vec::with_capacity(active.len());
        for &g in &active {
            let others: Vec<&DPoly<C::E>> = active
                .iter()
                .filter(|&&o| o != g)
                .map(|&o| &self.polys[o])
                .collect();
            // Leading term is irreducible by minimality; reduce the tail only.
            let head = self.polys[g][0].clone();
            let tail = self.polys[g][1..].to_vec();
            let tail = reduce_with(self.field, self.order, tail, |m| {
                others.iter().copied().find(|o| o[0].0.divides(m))
            });
            let mut p = Vec::with_capacity(tail.len() + 1);
            p.push(head);
            p.extend(tail);
            out.push(p);
        }
        out.sort_by(|a, b| self.order.compare(&b[0].0, &a[0].0));
        out
    }
}

/// `a·(ma, ca) + b·(mb, cb)` for sorted `a`, `b`.
#[allow(clippy::too_many_arguments)]
fn merge_scaled<C: Coeffs>(
    field: &C,
    order: TermOrder,
    a: &[(Monomial, C::E)],
    ma: &Monomial,
    ca: &C::E,
    b: &[(Monomial, C::E)],
    mb: &Monomial,
    cb: &C::E,
) -> DPoly<C::E> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut next_a = a.first().map(|t| t.0.mul(ma));
    let mut next_b = b.first().map(|t| t.0.mul(mb));
    loop {
        match (next_a.take(), next_b.take()) {
            (None, None) => break,
            (Some(x), None) => {
                out.push((x, field.mul(&a[i].1, ca)));
                i += 1;
                next_a = a.get(i).map(|t| t.0.mul(ma));
            }
            (None, Some(y)) => {
                out.push((y, field.mul(&b[j].1, cb)));
                j += 1;
                next_b = b.get(j).map(|t| t.0.mul(mb));
            }
            (Some(x), Some(y)) => match order.compare(&x, &y) {
                Ordering::Greater => {
                    out.push((x, field.mul(&a[i].1, ca)));
                    i += 1;
                    next_a = a.get(i).map(|t| t.0.mul(ma));
                    next_b = Some(y);
                }
                Ordering::Less => {
                    out.push((y, field.mul(&b[j].1, cb)));
                    j += 1;
                    next_b = b.get(j).map(|t| t.0.mul(mb));
                    next_a = Some(x);
                }
                Ordering::Equal => {
                    let c = field.add(&field.mul(&a[i].1, ca), &field.mul(&b[j].1, cb));
                    if !field.is_zero(&c) {
                        out.push((x, c));
                    }
                    i += 1;
                    j += 1;
                    next_a = a.get(i).map(|t| t.0.mul(ma));
                    next_b = b.get(j).map(|t| t.0.mul(mb));
                }
            },
        }
    }
    out
}

/// Fully reduces `f`; `reducer` returns a monic polynomial whose leading
/// monomial divides the argument, if any.
pub(crate) fn reduce_with<'p, C: Coeffs>(
    field: &C,
    order: TermOrder,
    f: DPoly<C::E>,
    reducer: impl Fn(&Monomial) -> Option<&'p DPoly<C::E>>,
) -> DPoly<C::E>
where
    C::E: 'p,
{
    let mut rem: DPoly<C::E> = Vec::new();
    let mut cur = f;
    let mut start = 0;
    let one = field.one();
    while start < cur.len() {
        let (m, c) = &cur[start];
        match reducer(m) {
            Some(g) => {
                debug_assert!(field.is_one(&g[0].1));
                let q = g[0].0.quotient_of(m);
                let neg_c = field.neg(c);
                cur = merge_scaled(field, order, &cur[start + 1..], &Monomial::one(m.arity()), &one, &g[1..], &q, &neg_c);
                start = 0;
            }
            None => {
                rem.push(cur[start].clone());
                start += 1;
            }
        }
    }
    rem
}
