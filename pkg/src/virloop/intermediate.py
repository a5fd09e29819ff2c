"""Intermediate-series modules over the loop-Virasoro algebra.

V_{α,β,ψ} has basis {v_k : k ∈ Z} with the action

    d_n⊗b . v_k = ψ(b) (α + k + nβ) v_{k+n},      C⊗b . v_k = 0.

The reducible locus among these is exactly α ∈ Z together with β ∈ {0,1}.
Each isomorphism class of the irreducible versions V' has one canonical
realization here: α is shifted into 0 ≤ Re α < 1, β = 1 is re-expressed
as β = 0 (the two irreducible quotients are isomorphic), and for the
remaining degenerate pair (α,β) = (0,0) the module keeps index set
Z - {0}, discarding any v_0 component an action produces.

Vectors are sparse dicts {k: coefficient}.  Actions are exact and
unwindowed; finite windows appear only in the submodule-closure oracle,
which truncates to keep iteration monotone.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coeff_algebra import CharacterPsi
from .linalg import SpanBasis
from .scalars import GaussianRational, ONE, ZERO, normalize_alpha, scalar
from .virasoro import Generator, KIND_C, KIND_D, LieElement

IntVector = dict


@dataclass(frozen=True)
class IntParams:
    """Parameters (α, β, ψ) of an intermediate-series module.

    psi may be None for abstract-coefficient mode, where callers supply the
    scalar ψ(b) per generator instead of a finite-dimensional algebra.
    """

    alpha: GaussianRational
    beta: GaussianRational
    psi: CharacterPsi | None = None

    @property
    def normalized(self) -> bool:
        a0, shift = normalize_alpha(self.alpha)
        return shift == 0 and self.beta != ONE


INDEX_ALL = "Z"
INDEX_NONZERO = "Z-0"


def is_irreducible_int(alpha, beta) -> bool:
    """Irreducibility of V_{α,β}: fails exactly when α ∈ Z and β ∈ {0,1}.

    Cross-validated against the submodule-closure oracle on finite windows.
    """
    alpha, beta = scalar(alpha), scalar(beta)
    return not (alpha.is_integer() and (beta == ZERO or beta == ONE))


class IntModule:
    """One intermediate-series module with a fixed index set.

    index_set INDEX_NONZERO realizes the irreducible version at the
    degenerate pair (0,0): v_0 spans a submodule there (d_n.v_0 has
    coefficient 0), so excluding index 0 and dropping any v_0 component an
    action produces is exactly the quotient by C·v_0.
    """

    def __init__(self, params: IntParams, index_set: str = INDEX_ALL):
        if index_set not in (INDEX_ALL, INDEX_NONZERO):
            raise ValueError(f"unknown index set {index_set!r}")
        self.params = params
        self.index_set = index_set

    # -- vectors ----------------------------------------------------------------

    def vector(self, entries) -> IntVector:
        out = {}
        for k, c in dict(entries).items():
            c = scalar(c)
            if not c:
                continue
            if self.index_set == INDEX_NONZERO and k == 0:
                raise ValueError("index 0 is not part of this module's basis")
            out[int(k)] = c
        return out

    def basis_vector(self, k: int) -> IntVector:
        return self.vector({k: 1})

    def allowed_index(self, k: int) -> bool:
        return self.index_set == INDEX_ALL or k != 0

    # -- actions -----------------------------------------------------------------

    def act_d(self, n: int, psi_b: GaussianRational, vec: IntVector) -> IntVector:
        """Apply d_n⊗b given the scalar ψ(b); exact, no window."""
        p = self.params
        out: IntVector = {}
        if not psi_b:
            return out
        for k, c in vec.items():
            coeff = psi_b * (p.alpha + scalar(k) + scalar(n) * p.beta) * c
            if not coeff:
                continue
            k2 = k + n
            if not self.allowed_index(k2):
                continue
            s = out.get(k2, ZERO) + coeff
            if s:
                out[k2] = s
            else:
                out.pop(k2, None)
        return out

    def act(self, gen: Generator, vec: IntVector) -> IntVector:
        if gen.kind == KIND_C:
            return {}
        if self.params.psi is None:
            raise ValueError("module has abstract coefficients; use act_d with psi(b)")
        return self.act_d(gen.degree, self.params.psi.of(gen.bcoef), vec)

    def act_lie(self, x: LieElement, vec: IntVector) -> IntVector:
        if self.params.psi is None:
            raise ValueError("module has abstract coefficients; use act_d with psi(b)")
        psi = self.params.psi
        out: IntVector = {}
        for (degree, kind, j), coeff in x.terms.items():
            if kind == KIND_C:
                continue
            part = self.act_d(degree, psi.values[j], vec)
            for k, c in part.items():
                s = out.get(k, ZERO) + coeff * c
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    # -- finite oracle -------------------------------------------------------------

    def window_indices(self, kmin: int, kmax: int) -> list[int]:
        return [k for k in range(kmin, kmax + 1) if self.allowed_index(k)]

    def submodule_closure(
        self, seeds, kmin: int, kmax: int, max_degree: int
    ) -> tuple[list[IntVector], set[int]]:
        """Close span(seeds) under d_n for |n| ≤ max_degree inside a window.

        Components pushed outside [kmin, kmax] are discarded, so the result
        is the invariant span of the window-truncated action.  Returns the
        echelonized basis and the set of reachable indices.
        """
        span = SpanBasis()
        queue = []
        for seed in seeds:
            vec = {k: c for k, c in seed.items() if kmin <= k <= kmax}
            if span.add(vec):
                queue.append(vec)
        while queue:
            vec = queue.pop()
            for n in range(-max_degree, max_degree + 1):
                img = self.act_d(n, ONE, vec)
                img = {k: c for k, c in img.items() if kmin <= k <= kmax}
                if img and span.add(img):
                    queue.append(img)
        return span.vectors(), {k for k in span.support()}

    def closure_is_full(self, kmin: int, kmax: int, max_degree: int) -> bool:
        """True iff the closure of every single v_k fills the whole window."""
        full = len(self.window_indices(kmin, kmax))
        for k in self.window_indices(kmin, kmax):
            basis, _ = self.submodule_closure([self.basis_vector(k)], kmin, kmax, max_degree)
            if len(basis) < full:
                return False
        return True


def prime_module(alpha, beta, psi: CharacterPsi | None = None) -> IntModule:
    """Canonical realization of the irreducible version V'_{α,β,ψ}.

    Shifts α into 0 ≤ Re α < 1, replaces β = 1 by the isomorphic β = 0
    realization, and excludes index 0 exactly at the remaining degenerate
    pair (0,0).
    """
    alpha, beta = scalar(alpha), scalar(beta)
    a0, _ = normalize_alpha(alpha)
    if beta == ONE:
        beta = ZERO
    index_set = INDEX_NONZERO if (a0 == ZERO and beta == ZERO) else INDEX_ALL
    return IntModule(IntParams(a0, beta, psi), index_set)
