"""Tensor modules: a highest-weight quotient tensored with an intermediate module.

Vectors live in V(φ)⊗V', encoded sparsely by keys (i, mono, k): level i of
V(φ), a quotient-basis monomial at that level, and the intermediate index
k.  A generator acts by the Leibniz rule,

    g.(x⊗v) = (g.x)⊗v + x⊗(g.v),

with central generators acting by φ(C⊗b) on the first factor and by zero
on the second.  The action is exact: each generator maps a basis pair to
finitely many basis pairs, and the only resource bound is the computed
depth of V(φ).  Exceeding it raises DepthExceededError rather than
truncating, because downstream probe certificates rely on exactness.

Weight bookkeeping: the summand (i, mono, k) has weight φ(d_0)+α+(k-i),
so homogeneous vectors of offset n are supported on pairs with k-i = n.
"""

from __future__ import annotations

from .intermediate import IntModule
from .linalg import SpanBasis
from .scalars import GaussianRational, ONE, ZERO, scalar
from .verma import DepthExceededError, VermaModule
from .virasoro import Generator, KIND_C, KIND_D, LieElement, WordSum

TensorVector = dict


def _add_entry(acc: TensorVector, key, coeff):
    if not coeff:
        return
    s = acc.get(key, ZERO) + coeff
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


class TensorModule:
    """V(φ)⊗V'_{α,β,ψ} with exact generator action on sparse vectors."""

    def __init__(self, verma: VermaModule, intermediate: IntModule):
        if intermediate.params.psi is None:
            raise ValueError("tensor factor needs a concrete character psi")
        if intermediate.params.psi.algebra.table != verma.algebra.table:
            raise ValueError("both factors must share one coefficient algebra")
        self.verma = verma
        self.intermediate = intermediate
        self.algebra = verma.algebra

    # -- vectors ---------------------------------------------------------------

    def seed(self, m: int) -> TensorVector:
        """The generator candidate v_φ⊗v_m."""
        if not self.intermediate.allowed_index(m):
            raise ValueError(f"index {m} is outside the intermediate module's basis")
        return {(0, (), m): ONE}

    def vector(self, entries) -> TensorVector:
        """Validate and canonicalize: reduce each level piece modulo the radical."""
        grouped: dict = {}
        for (i, mono, k), c in dict(entries).items():
            c = scalar(c)
            if not c:
                continue
            if not self.intermediate.allowed_index(k):
                raise ValueError(f"index {k} outside the intermediate basis")
            if i > self.verma.depth:
                raise DepthExceededError(
                    f"level {i} beyond depth {self.verma.depth}; extend depth"
                )
            mono = tuple(mono)
            if mono not in self.verma.monomial_index(i):
                raise ValueError(f"unknown level-{i} monomial {mono!r}")
            cell = grouped.setdefault((i, int(k)), {})
            cell[mono] = cell.get(mono, ZERO) + c
        out: TensorVector = {}
        for (i, k), vec in grouped.items():
            for mono, c in self.verma.vphi_reduce(i, vec).items():
                _add_entry(out, (i, mono, k), c)
        return out

    def is_zero(self, x: TensorVector) -> bool:
        return not x

    # -- action ------------------------------------------------------------------

    def act(self, gen: Generator, x: TensorVector) -> TensorVector:
        psi = self.intermediate.params.psi
        out: TensorVector = {}
        by_level_k: dict = {}
        for (i, mono, k), c in x.items():
            by_level_k.setdefault((i, k), {})[mono] = c
        for (i, k), vec in by_level_k.items():
            # first Leibniz term: act on the highest-weight factor
            target, res = self.verma.act_on_vphi(gen, i, vec)
            for mono2, c2 in res.items():
                _add_entry(out, (target, mono2, k), c2)
            # second Leibniz term: act on the intermediate factor
            if gen.kind == KIND_D:
                moved = self.intermediate.act_d(
                    gen.degree, psi.of(gen.bcoef), {k: ONE}
                )
                for k2, c2 in moved.items():
                    for mono, c in vec.items():
                        _add_entry(out, (i, mono, k2), c * c2)
        return out

    def act_lie(self, x: LieElement, vec: TensorVector) -> TensorVector:
        out: TensorVector = {}
        for (degree, kind, j), coeff in x.terms.items():
            gen = Generator(kind, degree, self.algebra.basis_elem(j))
            for key, c in self.act(gen, vec).items():
                _add_entry(out, key, coeff * c)
        return out

    def act_word(self, factors, vec: TensorVector) -> TensorVector:
        """Apply a factor sequence, rightmost first."""
        for gen in reversed(tuple(factors)):
            vec = self.act(gen, vec)
        return vec

    def act_words(self, words: WordSum, vec: TensorVector) -> TensorVector:
        out: TensorVector = {}
        for factors, coeff in words.words.items():
            part = self.act_word(factors, vec)
            for key, c in part.items():
                _add_entry(out, key, coeff * c)
        return out

    # -- weights ----------------------------------------------------------------------

    def weight_split(self, x: TensorVector) -> dict[int, TensorVector]:
        """Group by weight offset n = k - i; the pieces sum back to x."""
        out: dict[int, TensorVector] = {}
        for (i, mono, k), c in x.items():
            out.setdefault(k - i, {})[(i, mono, k)] = c
        return out

    def weight_of_offset(self, n: int) -> GaussianRational:
        """The weight φ(d_0) + α + n shared by all offset-n summands."""
        return (
            self.verma.hw.of_d0(self.algebra.unit)
            + self.intermediate.params.alpha
            + scalar(n)
        )

    def weight_space_dim(self, n: int, depth: int | None = None) -> int:
        """Truncated dimension of the offset-n weight space."""
        depth = self.verma.depth if depth is None else depth
        total = 0
        for i in range(depth + 1):
            if self.intermediate.allowed_index(n + i):
                total += self.verma.vphi_dim(i)
        return total

    # -- generation oracle -------------------------------------------------------------

    def generation_check(self, depth: int, kmin: int, kmax: int) -> bool:
        """Span-generation test on the truncation.

        Verifies that every basis vector (i ≤ depth, monomial, k in the
        window) lies in the span of negative-degree words of total depth
        ≤ depth applied to the seeds v_φ⊗v_m.  A depth-D' word applied to
        the seed v_φ⊗v_m has components (i, k) with k = m - (D' - i), so
        isolating a target at index k needs companion pure tensors with
        indices down to k - depth; seeds with m in [kmin-depth, kmax+depth]
        cover every such chain.
        """
        if depth > self.verma.depth:
            raise DepthExceededError(
                f"generation check at depth {depth} needs Verma depth ≥ {depth}"
            )
        span = SpanBasis()
        queue: list[tuple[TensorVector, int]] = []
        for m in range(kmin - depth, kmax + depth + 1):
            if not self.intermediate.allowed_index(m):
                continue
            vec = self.seed(m)
            if span.add(dict(vec)):
                queue.append((vec, 0))
        gens = [
            Generator(KIND_D, -n, self.algebra.basis_elem(j))
            for n in range(1, depth + 1)
            for j in range(self.algebra.dim)
        ]
        while queue:
            vec, used = queue.pop()
            for gen in gens:
                if used + (-gen.degree) > depth:
                    continue
                img = self.act(gen, vec)
                if img and span.add(dict(img)):
                    queue.append((img, used + (-gen.degree)))
        for i in range(depth + 1):
            for mono in self.verma.quotient_monomials(i):
                for k in range(kmin, kmax + 1):
                    if not self.intermediate.allowed_index(k):
                        continue
                    if not span.contains({(i, mono, k): ONE}):
                        return False
        return True
