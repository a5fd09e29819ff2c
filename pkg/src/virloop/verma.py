"""Truncated highest-weight (Verma-type) modules over the loop-Virasoro algebra.

M(φ) is induced from a one-dimensional representation φ of the degree-zero
part: the highest weight vector ṽ satisfies

    (d_n⊗b).ṽ = 0 for n > 0,   (d_0⊗b).ṽ = φ(d_0⊗b) ṽ,   (C⊗b).ṽ = φ(C⊗b) ṽ,

and M(φ) is free over the negative part, with PBW monomial basis per level.
The unique maximal proper submodule N(φ) is obtained per level as the
radical of the contravariant form ⟨u.ṽ, u'.ṽ⟩ built from the
anti-involution ω(d_n⊗b) = d_{-n}⊗b, ω(C⊗b) = C⊗b, which reverses
products.  Since every proper submodule of a weight-graded highest-weight
module avoids the highest-weight line, it pairs to zero against everything
and lies in the radical; the radical is itself proper and invariant, so it
equals N(φ).  V(φ) = M(φ)/N(φ) is realized by the complement monomials of
the radical's pivot set.

The engine normal-orders enveloping-algebra words by a worklist rewrite:
strip central factors, kill words whose rightmost factor raises, evaluate
rightmost degree-zero factors, and swap out-of-order adjacent pairs with a
bracket correction.  Each step shortens the word or strictly reduces its
inversion count, so the rewrite terminates.

A monomial is a tuple of (depth, bindex) pairs sorted by (-depth, bindex);
vectors are sparse dicts {monomial: scalar}.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor

from .coeff_algebra import AlgebraB, BElem
from .linalg import SpanBasis, nullspace
from .scalars import GaussianRational, ONE, ZERO, scalar
from .virasoro import Generator, KIND_C, KIND_D, WordSum, central_charge_term

Monomial = tuple
PbwVector = dict


class DepthExceededError(Exception):
    """Raised when an action needs a level beyond the computed depth.

    Callers can recover with extend_depth and retry.
    """


class HighestWeight:
    """The functional φ on the degree-zero part, stored by B-basis values."""

    def __init__(self, algebra: AlgebraB, d0_values, c_values):
        self.algebra = algebra
        self.d0_values = tuple(scalar(v) for v in d0_values)
        self.c_values = tuple(scalar(v) for v in c_values)
        if len(self.d0_values) != algebra.dim or len(self.c_values) != algebra.dim:
            raise ValueError(f"expected {algebra.dim} values for d_0 and for C")

    def of_d0(self, belem: BElem) -> GaussianRational:
        return sum((c * v for c, v in zip(belem, self.d0_values)), ZERO)

    def of_c(self, belem: BElem) -> GaussianRational:
        return sum((c * v for c, v in zip(belem, self.c_values)), ZERO)


def _partitions(k: int, largest: int | None = None):
    if k == 0:
        yield ()
        return
    if largest is None:
        largest = k
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions(k - first, first):
            yield (first,) + rest


def pbw_monomials(dim_b: int, k: int) -> list[Monomial]:
    """Canonical depth-k monomials, sorted; count is the B-colored partition number."""
    if k < 0:
        raise ValueError("level must be non-negative")
    out = []
    for part in _partitions(k):
        groups = [(depth, len(list(g))) for depth, g in itertools.groupby(part)]
        pools = [
            list(itertools.combinations_with_replacement(range(dim_b), count))
            for _, count in groups
        ]
        for pick in itertools.product(*pools):
            mono = []
            for (depth, _), colors in zip(groups, pick):
                mono.extend((depth, j) for j in colors)
            out.append(tuple(mono))
    return sorted(out)


def monomial_word(algebra: AlgebraB, mono: Monomial) -> tuple[Generator, ...]:
    """The monomial as a factor sequence (deepest leftmost, rightmost acts first)."""
    return tuple(Generator(KIND_D, -depth, algebra.basis_elem(j)) for depth, j in mono)


def omega_word(algebra: AlgebraB, mono: Monomial) -> tuple[Generator, ...]:
    """ω of the monomial: degrees flipped positive, factor order reversed."""
    return tuple(
        Generator(KIND_D, depth, algebra.basis_elem(j)) for depth, j in reversed(mono)
    )


def normal_order(words: WordSum, hw: HighestWeight) -> PbwVector:
    """Value of the word sum on ṽ, as a sparse monomial vector.

    Worklist rewrite; see the module docstring for the rule set and the
    termination measure (word length, then inversion count).
    """
    algebra = words.algebra
    out: PbwVector = {}
    work = [(factors, coeff) for factors, coeff in words.words.items()]
    while work:
        factors, coeff = work.pop()
        if not coeff:
            continue
        # strip central factors anywhere; C⊗b acts as φ(C⊗b) on all of M(φ)
        if any(g.kind == KIND_C for g in factors):
            for g in factors:
                if g.kind == KIND_C:
                    coeff = coeff * hw.of_c(g.bcoef)
            factors = tuple(g for g in factors if g.kind != KIND_C)
            if not coeff:
                continue
        if not factors:
            _deposit(out, (), coeff)
            continue
        last = factors[-1]
        if last.degree > 0:
            continue
        if last.degree == 0:
            work.append((factors[:-1], coeff * hw.of_d0(last.bcoef)))
            continue
        swap_at = None
        for i in range(len(factors) - 2, -1, -1):
            if factors[i].degree > factors[i + 1].degree:
                swap_at = i
                break
        if swap_at is None:
            _deposit_negative_word(out, algebra, factors, coeff)
            continue
        i = swap_at
        x, y = factors[i], factors[i + 1]
        work.append((factors[:i] + (y, x) + factors[i + 2 :], coeff))
        bb = algebra.mult(x.bcoef, y.bcoef)
        if any(bb):
            lie_coeff = scalar(y.degree - x.degree)
            mid = Generator(KIND_D, x.degree + y.degree, bb)
            work.append((factors[:i] + (mid,) + factors[i + 2 :], coeff * lie_coeff))
            if x.degree == -y.degree:
                cterm = central_charge_term(x.degree)
                if cterm:
                    midc = Generator(KIND_C, 0, bb)
                    work.append(
                        (factors[:i] + (midc,) + factors[i + 2 :], coeff * cterm)
                    )
    return out


def _deposit(out: PbwVector, mono: Monomial, coeff: GaussianRational):
    s = out.get(mono, ZERO) + coeff
    if s:
        out[mono] = s
    else:
        out.pop(mono, None)


def _deposit_negative_word(out, algebra, factors, coeff):
    """Expand B-coefficients over the basis and file under canonical monomials."""
    pools = []
    for g in factors:
        entries = [(j, c) for j, c in enumerate(g.bcoef) if c]
        if not entries:
            return
        pools.append(entries)
    depths = [-g.degree for g in factors]
    for pick in itertools.product(*pools):
        c = coeff
        for _, bc in pick:
            c = c * bc
        mono = tuple(
            sorted(((d, j) for d, (j, _) in zip(depths, pick)), key=lambda p: (-p[0], p[1]))
        )
        _deposit(out, mono, c)


class _LevelData:
    __slots__ = ("monomials", "index", "gram", "radical", "quotient_monomials")

    def __init__(self, monomials, index, gram, radical, quotient_monomials):
        self.monomials = monomials
        self.index = index
        self.gram = gram
        self.radical = radical
        self.quotient_monomials = quotient_monomials


class VermaModule:
    """M(φ) and V(φ) = M(φ)/N(φ), computed level by level up to a depth bound.

    Level data (Gram matrix, radical, quotient basis) is immutable once
    built and independent across levels, so construction may fan out over
    threads.  extend_depth mutates and must be called from one thread.
    """

    def __init__(self, algebra: AlgebraB, hw: HighestWeight, depth: int, threads: int = 1):
        if depth < 0:
            raise ValueError("depth must be non-negative")
        self.algebra = algebra
        self.hw = hw
        self.depth = -1
        self._levels: list[_LevelData] = []
        self._threads = max(1, int(threads))
        self.extend_depth(depth)

    # -- level construction -------------------------------------------------------

    def _compute_level(self, k: int) -> _LevelData:
        monos = pbw_monomials(self.algebra.dim, k)
        index = {m: i for i, m in enumerate(monos)}
        gram = []
        for u in monos:
            raising = omega_word(self.algebra, u)
            row = []
            for v in monos:
                word = raising + monomial_word(self.algebra, v)
                res = normal_order(WordSum(self.algebra, {word: ONE}), self.hw)
                row.append(res.get((), ZERO))
            gram.append(row)
        radical = SpanBasis()
        for ker in nullspace(gram):
            radical.add({monos[i]: c for i, c in enumerate(ker) if c})
        pivots = radical.pivots()
        quotient = [m for m in monos if m not in pivots]
        return _LevelData(monos, index, gram, radical, quotient)

    def extend_depth(self, new_depth: int):
        if new_depth <= self.depth:
            return
        targets = range(self.depth + 1, new_depth + 1)
        if self._threads > 1:
            with ThreadPoolExecutor(max_workers=self._threads) as pool:
                computed = list(pool.map(self._compute_level, targets))
        else:
            computed = [self._compute_level(k) for k in targets]
        self._levels.extend(computed)
        self.depth = new_depth

    def _level(self, k: int) -> _LevelData:
        if k < 0:
            raise ValueError("level must be non-negative")
        if k > self.depth:
            raise DepthExceededError(
                f"level {k} not computed (depth {self.depth}); extend depth to proceed"
            )
        return self._levels[k]

    # -- level queries -------------------------------------------------------------

    def pbw_basis(self, k: int) -> list[Monomial]:
        return list(self._level(k).monomials)

    def monomial_index(self, k: int) -> dict:
        return self._level(k).index

    def gram(self, k: int):
        return [list(row) for row in self._level(k).gram]

    def gram_rank(self, k: int) -> int:
        lv = self._level(k)
        return len(lv.monomials) - len(lv.radical)

    def radical_basis(self, k: int) -> list[PbwVector]:
        return self._level(k).radical.vectors()

    def radical_dim(self, k: int) -> int:
        return len(self._level(k).radical)

    def quotient_monomials(self, k: int) -> list[Monomial]:
        return list(self._level(k).quotient_monomials)

    def vphi_dim(self, k: int) -> int:
        return len(self._level(k).quotient_monomials)

    def is_radical(self, k: int, vec: PbwVector) -> bool:
        return self._level(k).radical.contains(vec)

    # -- quotient structure -----------------------------------------------------------

    def vphi_reduce(self, k: int, vec: PbwVector) -> PbwVector:
        """Canonical representative of vec + N(φ)_k, supported off radical pivots."""
        return self._level(k).radical.reduce(vec)

    def form_value(self, k: int, u: PbwVector, v: PbwVector) -> GaussianRational:
        lv = self._level(k)
        acc = ZERO
        for mu, cu in u.items():
            row = lv.gram[lv.index[mu]]
            for mv, cv in v.items():
                acc = acc + cu * row[lv.index[mv]] * cv
        return acc

    def act_words_on_vphi(self, words: WordSum, k: int, vec: PbwVector) -> dict[int, PbwVector]:
        """Apply a word sum to a level-k quotient vector; results keyed by level.

        The input is lifted to PBW monomials, each word is prepended and
        normal-ordered, and each homogeneous piece is reduced at its level.
        """
        raw: PbwVector = {}
        for mono, c in vec.items():
            word_tail = monomial_word(self.algebra, mono)
            shifted = WordSum(self.algebra)
            for factors, wc in words.words.items():
                shifted.add_word(factors + word_tail, wc * c)
            for mono2, c2 in normal_order(shifted, self.hw).items():
                _deposit(raw, mono2, c2)
        by_level: dict[int, PbwVector] = {}
        for mono2, c2 in raw.items():
            lvl = sum(d for d, _ in mono2)
            _deposit(by_level.setdefault(lvl, {}), mono2, c2)
        return {
            lvl: red
            for lvl, vec2 in by_level.items()
            if (red := self.vphi_reduce(lvl, vec2))
        }

    def act_on_vphi(self, gen: Generator, k: int, vec: PbwVector) -> tuple[int, PbwVector]:
        """Apply one generator to a level-k quotient vector.

        Returns (target level, reduced vector); the target is k - degree.
        Raising past the top gives the zero vector at level 0.  Lowering
        below the computed depth raises DepthExceededError.
        """
        target = k - gen.degree if gen.kind == KIND_D else k
        if target < 0:
            return 0, {}
        if target > self.depth:
            raise DepthExceededError(
                f"action lands at level {target} beyond depth {self.depth}; extend depth"
            )
        res = self.act_words_on_vphi(WordSum.single(self.algebra, gen), k, vec)
        return target, res.get(target, {})

    # -- truncated irreducibility oracle --------------------------------------------------

    def cyclic_closure_contains_top(self, k: int, vec: PbwVector) -> bool:
        """Does the truncated submodule generated by vec reach the highest weight line?

        Closes span{vec} under all generators d_n⊗e_j with |n| ≤ depth whose
        action stays within the truncation, then looks for a component on
        the empty monomial.  For the irreducible quotient this must succeed
        for every nonzero vec.
        """
        span = SpanBasis(key=lambda key: (key[0], key[1]))
        start = {(k, mono): c for mono, c in self.vphi_reduce(k, vec).items()}
        if not start:
            return False
        queue = [start]
        span.add(dict(start))
        gens = [
            Generator(KIND_D, n, self.algebra.basis_elem(j))
            for n in range(-self.depth, self.depth + 1)
            for j in range(self.algebra.dim)
        ]
        while queue:
            cur = queue.pop()
            by_level: dict[int, PbwVector] = {}
            for (lvl, mono), c in cur.items():
                _deposit(by_level.setdefault(lvl, {}), mono, c)
            for gen in gens:
                img: dict = {}
                for lvl, vec_l in by_level.items():
                    target = lvl - gen.degree
                    if target < 0 or target > self.depth:
                        continue
                    _, res = self.act_on_vphi(gen, lvl, vec_l)
                    for mono, c in res.items():
                        key = (target, mono)
                        s = img.get(key, ZERO) + c
                        if s:
                            img[key] = s
                        else:
                            img.pop(key, None)
                if img and span.add(img):
                    queue.append(img)
        return any(key == (0, ()) for key in span.support())

    def quotient_irreducibility_check(self) -> bool:
        """Every quotient-basis vector at every level generates down to the top."""
        for k in range(self.depth + 1):
            for mono in self.quotient_monomials(k):
                if not self.cyclic_closure_contains_top(k, {mono: ONE}):
                    return False
        return True
