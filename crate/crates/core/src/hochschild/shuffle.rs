use super::{HWord, HochschildComplex};
use crate::algebra::{is_graded_commutative, GradedAlgebra};
use crate::chain::Chain;
use crate::error::{Error, Result};

/// View a word of 𝔠A as a word of 𝔠(A^{⊗1}).
pub fn wrap_tensor<E: Clone>(w: &HWord<E>) -> HWord<Vec<E>> {
    HWord::new(
        vec![w.a0.clone()],
        w.letters.iter().map(|a| vec![a.clone()]).collect(),
    )
}

fn tensor_degree<A: GradedAlgebra>(base: &A, v: &[A::Elem]) -> i64 {
    v.iter().map(|e| base.degree(e) as i64).sum()
}

/// The shuffle map 𝔠(A^{⊗m}) ⊗ 𝔠(A^{⊗n}) → 𝔠(A^{⊗(m+n)}):
/// `x0[x1|...|xk] ⊗ y0[y1|...|yl] ↦ ± (x0 ⊗ y0) Σ ± [shuffles of xi ⊗ 1 and 1 ⊗ yj]`,
/// with Koszul signs for the suspended letters.
pub fn shuffle_pair<A: GradedAlgebra>(
    base: &A,
    x: &HWord<Vec<A::Elem>>,
    y: &HWord<Vec<A::Elem>>,
) -> Chain<HWord<Vec<A::Elem>>> {
    let f = base.field();
    let m = x.a0.len();
    let n = y.a0.len();
    let pad_right = |v: &Vec<A::Elem>| {
        let mut w = v.clone();
        w.extend(std::iter::repeat_n(base.unit(), n));
        w
    };
    let pad_left = |v: &Vec<A::Elem>| {
        let mut w: Vec<A::Elem> = std::iter::repeat_n(base.unit(), m).collect();
        w.extend(v.iter().cloned());
        w
    };
    let xs: Vec<(Vec<A::Elem>, i64)> = x
        .letters
        .iter()
        .map(|v| (pad_right(v), tensor_degree(base, v) - 1))
        .collect();
    let ys: Vec<(Vec<A::Elem>, i64)> = y
        .letters
        .iter()
        .map(|v| (pad_left(v), tensor_degree(base, v) - 1))
        .collect();
    let x_letters_degree: i64 = xs.iter().map(|t| t.1).sum();
    let mut a0 = x.a0.clone();
    a0.extend(y.a0.iter().cloned());
    let base_sign = tensor_degree(base, &y.a0) * x_letters_degree;

    let mut out = Chain::zero();
    let mut stack = Vec::with_capacity(xs.len() + ys.len());
    fn rec<E: Clone + Ord>(
        xs: &[(Vec<E>, i64)],
        ys: &[(Vec<E>, i64)],
        rest_x_degree: i64,
        sign: i64,
        stack: &mut Vec<Vec<E>>,
        emit: &mut dyn FnMut(&[Vec<E>], i64),
    ) {
        if xs.is_empty() && ys.is_empty() {
            emit(stack, sign);
            return;
        }
        if let Some((head, tail)) = xs.split_first() {
            stack.push(head.0.clone());
            rec(tail, ys, rest_x_degree - head.1, sign, stack, emit);
            stack.pop();
        }
        if let Some((head, tail)) = ys.split_first() {
            stack.push(head.0.clone());
            rec(
                xs,
                tail,
                rest_x_degree,
                sign + head.1 * rest_x_degree,
                stack,
                emit,
            );
            stack.pop();
        }
    }
    rec(
        &xs,
        &ys,
        x_letters_degree,
        base_sign,
        &mut stack,
        &mut |letters, sign| {
            out.add_term(f, HWord::new(a0.clone(), letters.to_vec()), f.sign(sign));
        },
    );
    out
}

/// Left-iterated binary shuffles `sh(sh(sh(x1, x2), x3), ...)` into 𝔠(A^{⊗k}).
pub fn iterated_shuffle<A: GradedAlgebra>(
    base: &A,
    xs: &[HWord<A::Elem>],
) -> Chain<HWord<Vec<A::Elem>>> {
    let f = base.field();
    let Some((first, rest)) = xs.split_first() else {
        return Chain::from_key(HWord::new(Vec::new(), Vec::new()));
    };
    let mut acc = Chain::from_key(wrap_tensor(first));
    for y in rest {
        let y = wrap_tensor(y);
        let mut next = Chain::zero();
        for (w, c) in acc.iter() {
            next.add_scaled(f, &shuffle_pair(base, w, &y), *c);
        }
        acc = next;
    }
    acc
}

/// The k-ary shuffle formula evaluated directly: the sign is the Koszul sign of moving the
/// factors `x1_0, ..., xk_0` to the front and interleaving the suspended letters.
pub fn shuffle_explicit<A: GradedAlgebra>(
    base: &A,
    xs: &[HWord<A::Elem>],
) -> Chain<HWord<Vec<A::Elem>>> {
    let f = base.field();
    let k = xs.len();
    // symbols in original order: (factor, position) with position 0 for the a0's
    let mut symbols: Vec<(usize, usize, i64)> = Vec::new();
    for (j, x) in xs.iter().enumerate() {
        symbols.push((j, 0, base.degree(&x.a0) as i64));
        for (i, a) in x.letters.iter().enumerate() {
            symbols.push((j, i + 1, base.degree(a) as i64 - 1));
        }
    }
    let rank_of = |j: usize, i: usize| {
        symbols
            .iter()
            .position(|s| s.0 == j && s.1 == i)
            .expect("symbol")
    };
    let a0: Vec<A::Elem> = xs.iter().map(|x| x.a0.clone()).collect();
    let mut out = Chain::zero();
    let mut next = vec![0usize; k];
    let total: usize = xs.iter().map(|x| x.letters.len()).sum();
    let mut order: Vec<(usize, usize)> = Vec::with_capacity(total);
    fn rec<E: Clone>(
        xs: &[HWord<E>],
        next: &mut [usize],
        order: &mut Vec<(usize, usize)>,
        total: usize,
        emit: &mut dyn FnMut(&[(usize, usize)]),
    ) {
        if order.len() == total {
            emit(order);
            return;
        }
        for j in 0..xs.len() {
            if next[j] < xs[j].letters.len() {
                next[j] += 1;
                order.push((j, next[j]));
                rec(xs, next, order, total, emit);
                order.pop();
                next[j] -= 1;
            }
        }
    }
    rec(xs, &mut next, &mut order, total, &mut |order| {
        let mut perm: Vec<usize> = (0..k).map(|j| rank_of(j, 0)).collect();
        perm.extend(order.iter().map(|&(j, i)| rank_of(j, i)));
        let mut sign = 0i64;
        for a in 0..perm.len() {
            for b in a + 1..perm.len() {
                if perm[a] > perm[b] {
                    sign += symbols[perm[a]].2 * symbols[perm[b]].2;
                }
            }
        }
        let letters: Vec<Vec<A::Elem>> = order
            .iter()
            .map(|&(j, i)| {
                let mut v = vec![base.unit(); k];
                v[j] = xs[j].letters[i - 1].clone();
                v
            })
            .collect();
        out.add_term(f, HWord::new(a0.clone(), letters), f.sign(sign));
    });
    out
}

/// The shuffle product on 𝔠A for graded commutative A: multiply the two tensor factors of
/// the shuffle.
pub fn shuffle_product<A: GradedAlgebra>(
    complex: &HochschildComplex<A>,
    x: &Chain<HWord<A::Elem>>,
    y: &Chain<HWord<A::Elem>>,
    commutativity_checked_to: i32,
) -> Result<Chain<HWord<A::Elem>>> {
    let base = &**complex.algebra();
    if !is_graded_commutative(base, commutativity_checked_to)? {
        return Err(Error::NotCommutative(
            "shuffle product needs a graded commutative algebra".into(),
        ));
    }
    let f = base.field();
    let mut out = Chain::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            let sh = shuffle_pair(base, &wrap_tensor(a), &wrap_tensor(b));
            for (w, c) in sh.iter() {
                let a0 = base.multiply_basis(&w.a0[0], &w.a0[1])?;
                let letters: Vec<Chain<A::Elem>> = w
                    .letters
                    .iter()
                    .map(|v| base.multiply_basis(&v[0], &v[1]))
                    .collect::<Result<_>>()?;
                out.add_scaled(
                    f,
                    &complex.from_chains(&a0, &letters),
                    f.mul(*c, f.mul(*ca, *cb)),
                );
            }
        }
    }
    Ok(out)
}
