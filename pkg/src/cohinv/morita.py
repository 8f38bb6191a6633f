"""Adjoint involutions and the Morita star product.

A form over (End_B(W), ad_f) with W = B^s is stored through its reference
form f over (B, gamma) and an r x r array of s x s blocks H_ij over B (so the
module is E^r with E = M_s(B)).  The star product f * h lives on W^r = B^{rs}
with Gram matrix (G_f H_ij).
"""

from __future__ import annotations

from . import algebras as alg
from . import linalg
from .errors import (
    Degenerate,
    DimensionMismatch,
    InvariantViolation,
    InvolutionMismatch,
    MissingReferenceForm,
)
from .hermitian import HermForm
from .pairs import HermPair


class AdjointData:
    """ad_f(alpha) = G_f^-1 gamma(alpha)^T G_f on End_B(W) = M_s(B)."""

    def __init__(self, f: HermForm):
        self.f = f
        self._G = f.matrix()
        self._Ginv = alg.mat_inverse(self._G)

    @property
    def size(self) -> int:
        return self.f.rank

    def __call__(self, alpha):
        return alg.mat_mul(alg.mat_mul(self._Ginv, alg.mat_conj_transpose(alpha)), self._G)

    def check_identity(self) -> bool:
        """f(x, alpha y) = f(ad_f(alpha) x, y) on basis vectors and matrix units."""
        f = self.f
        A = f.algebra
        s = self.size
        units = []
        for i in range(s):
            for j in range(s):
                for u in A.basis():
                    M = alg.mat_zeros(A, s)
                    M[i][j] = u
                    units.append(M)
        vecs = []
        for i in range(s):
            for u in A.basis():
                v = [A.zero] * s
                v[i] = u
                vecs.append(v)
        for M in units:
            adM = self(M)
            if not alg.mat_equal(self(adM), M):
                return False
            for x in vecs:
                ax = [c[0] for c in alg.mat_mul(adM, [[t] for t in x])]
                for y in vecs:
                    my = [c[0] for c in alg.mat_mul(M, [[t] for t in y])]
                    if f.h(x, my) != f.h(ax, y):
                        return False
        return True

    def symmetric_dimension(self) -> int:
        """dim_F of the elements fixed by ad_f."""
        f = self.f
        A = f.algebra
        F = A.field
        s = self.size
        units = []
        for i in range(s):
            for j in range(s):
                for u in A.basis():
                    M = alg.mat_zeros(A, s)
                    M[i][j] = u
                    units.append(M)
        cols = []
        for M in units:
            D = alg.mat_add(M, alg.mat_scale(self(M), -1))
            cols.append([c for row in D for x in row for c in x.coords])
        return len(units) - linalg.rank(linalg.transpose(cols), F)

    def type(self) -> str:
        """orthogonal, symplectic or unitary, read off dim Sym(E, ad_f)."""
        A = self.f.algebra
        if A.involution_kind == 2:
            return "unitary"
        n = self.size * A.degree
        dim = self.symmetric_dimension()
        if dim == n * (n + 1) // 2:
            return "orthogonal"
        if dim == n * (n - 1) // 2:
            return "symplectic"
        raise InvariantViolation(f"unexpected dimension {dim} of symmetric elements")


def adjoint_involution(f: HermForm) -> AdjointData:
    if f.rank == 0:
        raise Degenerate("empty reference form")
    return AdjointData(f)


class AdjointForm:
    """epsilon-hermitian form over (M_s(B), ad_f) on E^r."""

    def __init__(self, reference: HermForm, blocks, epsilon: int = 1):
        self.reference = reference
        self.epsilon = epsilon
        self.blocks = [[[list(row) for row in blk] for blk in brow] for brow in blocks]
        if reference is not None:
            _check_blocks(reference, self.blocks, epsilon)

    @property
    def rank(self) -> int:
        return len(self.blocks)

    @property
    def algebra(self):
        return self.reference.algebra

    def __repr__(self):
        return f"AdjointForm(rank={self.rank}, eps={self.epsilon}, reference={self.reference!r})"


def _check_blocks(f: HermForm, blocks, epsilon):
    s = f.rank
    r = len(blocks)
    for brow in blocks:
        if len(brow) != r:
            raise DimensionMismatch("block array must be square")
        for blk in brow:
            if len(blk) != s or any(len(row) != s for row in blk):
                raise DimensionMismatch(f"blocks must be {s} x {s} to match the reference form")
    ad = adjoint_involution(f)
    for i in range(r):
        for j in range(r):
            if not alg.mat_equal(ad(blocks[i][j]), alg.mat_scale(blocks[j][i], epsilon)):
                raise InvolutionMismatch(f"block ({i},{j}) is not hermitian for ad_f")


def star_product(f: HermForm, h: AdjointForm) -> HermForm:
    """f * h(v1 (x) w1, v2 (x) w2) = f(w1, h(v1, v2) w2)."""
    if h.blocks and len(h.blocks[0][0]) != f.rank:
        raise DimensionMismatch("block size differs from the rank of the reference form")
    if f.algebra != (h.reference.algebra if h.reference is not None else f.algebra):
        raise InvolutionMismatch("reference forms over different algebras")
    _check_blocks(f, h.blocks, h.epsilon)
    A = f.algebra
    s, r = f.rank, h.rank
    Gf = f.matrix()
    G = alg.mat_zeros(A, r * s)
    for i in range(r):
        for j in range(r):
            blk = alg.mat_mul(Gf, h.blocks[i][j])
            for a in range(s):
                for b in range(s):
                    G[i * s + a][j * s + b] = blk[a][b]
    return HermForm(A, G, f.epsilon * h.epsilon)


def morita_reduce(h: AdjointForm) -> HermForm:
    if h.reference is None:
        raise MissingReferenceForm("the matrix model has no recorded reference form")
    return star_product(h.reference, h)


def morita_lift(f: HermForm, g: HermForm) -> AdjointForm:
    """The form h over (End_B(W), ad_f) with f * h = g."""
    if f.algebra != g.algebra:
        raise InvolutionMismatch("forms over different algebras")
    s = f.rank
    if g.rank % s:
        raise DimensionMismatch(f"rank {g.rank} is not a multiple of {s}")
    r = g.rank // s
    Ginv = alg.mat_inverse(f.matrix())
    G = g.matrix()
    blocks = []
    for i in range(r):
        brow = []
        for j in range(r):
            sub = [G[i * s + a][j * s : (j + 1) * s] for a in range(s)]
            brow.append(alg.mat_mul(Ginv, sub))
        blocks.append(brow)
    return AdjointForm(f, blocks, g.epsilon * f.epsilon)


def compose_references(f1: HermForm, f2: AdjointForm) -> HermForm:
    """f1 * f2: a reference form over B realizing the composite Morita step."""
    return star_product(f1, f2)


def reduce_pair(h: AdjointForm, l) -> HermPair:
    """Transport a pair (h, l) over (M_s(F), ad_f) to (F, id); the semi-trace
    element of End_E(E^r) = M_{rs}(F) is carried over unchanged."""
    g = morita_reduce(h)
    return HermPair(g, l)
