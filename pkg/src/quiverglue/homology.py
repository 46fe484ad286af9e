"""Resolutions, syzygies, Ext groups, extension realization and dimensions.

Minimal projective resolutions are built from projective covers
(radical-superfluous kernels); the injective side is routed through the
opposite algebra via duality, never by separate formulas.

``ext`` returns both a dimension and an explicit cocycle basis: classes
in Ext^i(M, N) are represented by morphisms from the i-th syzygy of M
to N, normalized by row reduction of their coordinate vectors so the
basis is deterministic.  Resolutions are cached per module object; the
cache is fill-once and safe for concurrent readers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .modcat import (
    QModule,
    QMorphism,
    cokernel,
    direct_sum_with_maps,
    dualize,
    dualize_morphism,
    hom_basis,
    kernel,
    projective,
    simple,
    top_quotient,
    zero_module,
    zero_morphism,
)

DEFAULT_DIM_CAP = 8


@dataclass(frozen=True)
class ShortExactSequence:
    """0 -> sub -> mid -> quot -> 0 with verification on demand."""

    incl: QMorphism
    proj: QMorphism

    @property
    def sub(self) -> QModule:
        return self.incl.source

    @property
    def mid(self) -> QModule:
        return self.incl.target

    @property
    def quot(self) -> QModule:
        return self.proj.target

    def verify(self) -> None:
        field = self.mid.algebra.field
        if not self.incl.is_injective():
            raise ValueError("left map is not injective")
        if not self.proj.is_surjective():
            raise ValueError("right map is not surjective")
        if not self.proj.compose(self.incl).is_zero():
            raise ValueError("composite is nonzero")
        for v in self.mid.dims:
            rank_incl = field.rank(self.incl.blocks[v])
            nullity = self.proj.blocks[v].shape[1] - field.rank(self.proj.blocks[v])
            if rank_incl != nullity:
                raise ValueError(f"not exact at the middle, vertex {v}")


@dataclass(frozen=True)
class Resolution:
    """A finite initial segment of a minimal resolution.

    ``terms[i]`` covers the i-th syzygy; ``differentials[i]`` maps
    terms[i] -> terms[i-1] for i >= 1; ``augmentation`` maps terms[0]
    onto the target (projective case; arrows dualize for injective).
    ``syzygies[i]`` is the i-th syzygy with its inclusion into terms[i-1].
    """

    target: QModule
    kind: str  # "projective" | "injective"
    terms: tuple[QModule, ...]
    differentials: tuple[QMorphism, ...]
    augmentation: QMorphism
    syzygies: tuple[tuple[QModule, QMorphism], ...]
    minimal: bool = True

    def length_computed(self) -> int:
        return len(self.terms) - 1


def projective_cover(m: QModule) -> QMorphism:
    """The minimal surjection P(top m) ->> m."""
    algebra = m.algebra
    field = algebra.field
    if m.total_dim == 0:
        return zero_morphism(zero_module(algebra), m)
    top, proj_to_top = top_quotient(m)
    pieces = []
    generators = []  # one lift in m per top basis vector
    for v in algebra.quiver.vertices:
        for col in range(top.dims[v]):
            pieces.append(projective(algebra, v))
            generators.append((v, col))

    cover, injections, _ = direct_sum_with_maps(algebra, pieces)
    # section of the top projection: pick preimages of top basis vectors
    sections = {v: field.solve_matrix(proj_to_top.blocks[v], field.identity(top.dims[v])) for v in m.dims}
    blocks = {v: field.zeros(m.dims[v], cover.dims[v]) for v in m.dims}
    for piece, inj, (v, col) in zip(pieces, injections, generators):
        gen = sections[v][:, col]
        # send the trivial-path basis vector of P(v) to gen, then extend
        # along every residue path by the module action
        for u in algebra.quiver.vertices:
            for k, bi in enumerate(_paths_by_vertex(algebra, v)[u]):
                path = algebra.basis[bi]
                vec = field.matmul(m.path_action(path), gen.reshape(-1, 1))[:, 0]
                col_in_cover = np.nonzero(inj.blocks[u][:, k])[0]
                blocks[u][:, int(col_in_cover[0])] = vec
    morphism = QMorphism(cover, m, blocks)
    if not morphism.is_surjective():
        raise RuntimeError("projective cover failed to surject")
    return morphism


def _paths_by_vertex(algebra, v: str) -> dict[str, list[int]]:
    cache = algebra.__dict__.setdefault("_paths_by_vertex_cache", {})
    if v not in cache:
        per_vertex: dict[str, list[int]] = {u: [] for u in algebra.quiver.vertices}
        for bi in algebra.basis_paths_from(v):
            per_vertex[algebra.basis[bi].target].append(bi)
        cache[v] = per_vertex
    return cache[v]


def injective_envelope(m: QModule) -> QMorphism:
    """The minimal injection m -> I(soc m), via the opposite algebra."""
    cover = projective_cover(dualize(m))
    env = dualize_morphism(cover)
    # dualize twice gives an equal presentation of m; rebuild on m itself
    return QMorphism(m, env.target, env.blocks)


def projective_resolution(m: QModule, length: int) -> Resolution:
    """Minimal projective resolution computed out to the given degree."""
    cache = m.algebra.__dict__.setdefault("_resolution_cache", {})
    cached: Resolution | None = cache.get(m)
    if cached is not None and cached.length_computed() >= length:
        return cached

    augmentation = projective_cover(m)
    terms = [augmentation.source]
    differentials: list[QMorphism] = []
    syzygies: list[tuple[QModule, QMorphism]] = []
    prev_cover = augmentation
    for _ in range(length):
        syz, incl = kernel(prev_cover)
        syzygies.append((syz, incl))
        next_cover = projective_cover(syz)
        differentials.append(incl.compose(next_cover))
        terms.append(next_cover.source)
        prev_cover = next_cover
    res = Resolution(
        target=m,
        kind="projective",
        terms=tuple(terms),
        differentials=tuple(differentials),
        augmentation=augmentation,
        syzygies=tuple(syzygies),
    )
    cache[m] = res
    return res


def injective_resolution(m: QModule, length: int) -> Resolution:
    """Minimal injective resolution (dual route).

    For the injective kind the arrows reverse: ``augmentation`` is the
    coaugmentation m -> terms[0] and ``differentials[i]`` maps
    terms[i-1] -> terms[i]; ``syzygies[i]`` holds the i-th cosyzygy with
    the projection of terms[i-1] onto it.
    """
    res = projective_resolution(dualize(m), length)
    return Resolution(
        target=m,
        kind="injective",
        terms=tuple(dualize(t) for t in res.terms),
        differentials=tuple(dualize_morphism(d) for d in res.differentials),
        augmentation=QMorphism(m, dualize(res.terms[0]), dualize_morphism(res.augmentation).blocks),
        syzygies=tuple(
            (dualize(syz), dualize_morphism(incl)) for syz, incl in res.syzygies
        ),
    )


def syzygy(m: QModule, i: int) -> QModule:
    """The i-th syzygy along the minimal projective resolution."""
    if i < 0:
        raise ValueError("syzygy degree must be >= 0")
    if i == 0:
        return m
    res = projective_resolution(m, i)
    return res.syzygies[i - 1][0]


def syzygy_with_inclusion(m: QModule, i: int) -> tuple[QModule, QMorphism]:
    """(Omega^i m, inclusion into the (i-1)-st projective term), i >= 1."""
    if i < 1:
        raise ValueError("inclusion exists for degree >= 1")
    res = projective_resolution(m, i)
    return res.syzygies[i - 1]


def cosyzygy(m: QModule, i: int) -> QModule:
    """The i-th cosyzygy, through the opposite algebra."""
    if i < 0:
        raise ValueError("cosyzygy degree must be >= 0")
    if i == 0:
        return m
    return dualize(syzygy(dualize(m), i))


@dataclass(frozen=True)
class ExtGroup:
    """Ext^degree(source, target) with an explicit cocycle basis."""

    degree: int
    source: QModule
    target: QModule
    dimension: int
    cocycles: tuple[QMorphism, ...]  # morphisms Omega^degree(source) -> target


def ext(m: QModule, n: QModule, i: int) -> ExtGroup:
    """Ext^i(m, n) for i >= 1, with cocycles on the i-th syzygy.

    The dimension is computed twice: as Hom(Omega^i m, n) modulo maps
    factoring through the enclosing projective, and as the cohomology of
    the Hom complex of the minimal resolution.  Both must agree.
    """
    if i < 1:
        raise ValueError("ext is defined here for degree >= 1")
    field = m.algebra.field
    if m.total_dim == 0 or n.total_dim == 0:
        return ExtGroup(i, m, n, 0, ())
    cache = m.algebra.__dict__.setdefault("_ext_cache", {})
    key = (m, n, i)
    if key in cache:
        return cache[key]
    res = projective_resolution(m, i + 1)
    syz, incl = res.syzygies[i - 1]
    if syz.total_dim == 0:
        cache[key] = ExtGroup(i, m, n, 0, ())
        return cache[key]

    full = hom_basis(syz, n)
    if not full:
        cache[key] = ExtGroup(i, m, n, 0, ())
        return cache[key]
    factoring = [g.compose(incl) for g in hom_basis(res.terms[i - 1], n)]
    full_vecs = np.stack([f.to_vector() for f in full], axis=1)
    if factoring:
        fac_vecs = np.stack([f.to_vector() for f in factoring], axis=1)
        fac_coords = field.solve_matrix(full_vecs, fac_vecs)
        if fac_coords is None:
            raise RuntimeError("factoring maps escaped the hom space")
    else:
        fac_coords = field.zeros(len(full), 0)

    # quotient representatives: unit vectors on the non-pivot coordinates
    # of the factoring subspace (rref-normalized, hence deterministic)
    _, fac_pivots, fac_rank = field.rref(fac_coords.T)
    dimension = len(full) - fac_rank
    free_rows = [r for r in range(len(full)) if r not in set(fac_pivots)]
    cocycles = [full[r] for r in free_rows]

    # cross-check against the Hom-complex cohomology
    complex_dim = _ext_dim_from_complex(m, n, i)
    if complex_dim != dimension:
        raise RuntimeError(
            f"Ext^{i} dimension mismatch: syzygy route {dimension}, complex route {complex_dim}"
        )
    cache[key] = ExtGroup(i, m, n, dimension, tuple(cocycles))
    return cache[key]


def _hom_matrix_postcompose(fs: list[QMorphism], gs: list[QMorphism], d: QMorphism, field) -> np.ndarray:
    """Matrix of Hom(d, N): f -> f o d from span(fs) to span(gs) coordinates."""
    if not fs or not gs:
        return field.zeros(len(gs), len(fs))
    g_vecs = np.stack([g.to_vector() for g in gs], axis=1)
    cols = []
    for f in fs:
        comp = f.compose(d)
        sol = field.solve_matrix(g_vecs, comp.to_vector().reshape(-1, 1))
        if sol is None:
            raise RuntimeError("composition escaped the hom space")
        cols.append(sol[:, 0])
    return np.stack(cols, axis=1)


def _ext_dim_from_complex(m: QModule, n: QModule, i: int) -> int:
    field = m.algebra.field
    res = projective_resolution(m, i + 1)
    homs = [hom_basis(res.terms[k], n) for k in range(i + 2)]
    d_in = (
        _hom_matrix_postcompose(homs[i - 1], homs[i], res.differentials[i - 1], field)
        if homs[i - 1]
        else field.zeros(len(homs[i]), 0)
    )
    d_out = (
        _hom_matrix_postcompose(homs[i], homs[i + 1], res.differentials[i], field)
        if homs[i]
        else field.zeros(len(homs[i + 1]), 0)
    )
    if not homs[i]:
        return 0
    kernel_dim = len(homs[i]) - field.rank(d_out)
    image_dim = field.rank(d_in)
    return kernel_dim - image_dim


def ext_dim_via_cosyzygy(m: QModule, n: QModule, i: int) -> int:
    """dim Ext^i(m, n) computed as dim Ext^1(m, Sigma^{i-1} n)."""
    if i < 1:
        raise ValueError("degree must be >= 1")
    target = cosyzygy(n, i - 1)
    if target.total_dim == 0 or m.total_dim == 0:
        return 0
    return ext(m, target, 1).dimension


def realize_extension(cocycle: QMorphism, u: QModule) -> ShortExactSequence:
    """The extension 0 -> A -> E -> U -> 0 classified by a 1-cocycle.

    The cocycle is a morphism Omega^1(u) -> A; E is the pushout of the
    syzygy inclusion along it.
    """
    a = cocycle.target
    syz, incl = syzygy_with_inclusion(u, 1)
    if not cocycle.source.equal_presentation(syz):
        raise ValueError("cocycle must start at the first syzygy of u")
    cocycle = QMorphism(syz, a, cocycle.blocks)
    e, leg_p0, leg_a = pushout(incl, cocycle)
    res = projective_resolution(u, 1)
    # E -> U by the universal property: agree with the augmentation on the
    # P0 leg and vanish on the A leg
    proj = _induced_from_pushout(e, leg_p0, leg_a, res.augmentation, zero_morphism(a, u))
    ses = ShortExactSequence(incl=leg_a, proj=proj)
    ses.verify()
    return ses


def _induced_from_pushout(
    e: QModule, leg_b: QMorphism, leg_c: QMorphism, f_b: QMorphism, f_c: QMorphism
) -> QMorphism:
    """The unique map e -> X with (map o leg_b, map o leg_c) = (f_b, f_c)."""
    field = e.algebra.field
    target = f_b.target
    blocks = {}
    for v in e.dims:
        gen = np.hstack([leg_b.blocks[v], leg_c.blocks[v]])
        rhs = np.hstack([f_b.blocks[v], f_c.blocks[v]])
        # solve X @ gen = rhs  <=>  gen^T @ X^T = rhs^T
        sol = field.solve_matrix(gen.T, rhs.T)
        if sol is None:
            raise RuntimeError("legs do not generate the pushout")
        blocks[v] = sol.T
    return QMorphism(e, target, blocks)


def pushout(f: QMorphism, g: QMorphism) -> tuple[QModule, QMorphism, QMorphism]:
    """Pushout of f: A -> B, g: A -> C; returns (P, leg_B, leg_C)."""
    if f.source is not g.source and not f.source.equal_presentation(g.source):
        raise ValueError("pushout needs a common source")
    algebra = f.source.algebra
    s, injections, _ = direct_sum_with_maps(algebra, [f.target, g.target])
    h = injections[0].compose(f).add(injections[1].compose(g).negate())
    quot, proj = cokernel(h)
    return quot, proj.compose(injections[0]), proj.compose(injections[1])


def pullback(f: QMorphism, g: QMorphism) -> tuple[QModule, QMorphism, QMorphism]:
    """Pullback of f: B -> A, g: C -> A; returns (P, leg_B, leg_C)."""
    if f.target is not g.target and not f.target.equal_presentation(g.target):
        raise ValueError("pullback needs a common target")
    algebra = f.source.algebra
    s, _, projections = direct_sum_with_maps(algebra, [f.source, g.source])
    h = f.compose(projections[0]).add(g.compose(projections[1]).negate())
    sub, incl = kernel(h)
    return sub, projections[0].compose(incl), projections[1].compose(incl)


def extension_class(ses: ShortExactSequence) -> QMorphism:
    """The connecting 1-cocycle Omega^1(quot) -> sub of a short exact sequence."""
    field = ses.mid.algebra.field
    u = ses.quot
    syz, incl = syzygy_with_inclusion(u, 1)
    res = projective_resolution(u, 1)
    p0 = res.terms[0]
    # an honest lift lam: p0 -> mid with proj o lam = augmentation
    lam = _solve_lift(p0, ses.mid, ses.proj, res.augmentation)
    composite = lam.compose(incl)
    # composite lands in ker(proj) = im(incl of sub); divide by the inclusion
    blocks = {}
    for v in p0.dims:
        sol = field.solve_matrix(ses.incl.blocks[v], composite.blocks[v])
        if sol is None:
            raise RuntimeError("lift does not land in the submodule")
        blocks[v] = sol
    return QMorphism(syz, ses.sub, blocks)


def _solve_lift(p: QModule, mid: QModule, proj: QMorphism, through: QMorphism) -> QMorphism:
    """Some lift h: p -> mid with proj o h = through (p projective)."""
    field = p.algebra.field
    basis = hom_basis(p, mid)
    if not basis:
        if through.is_zero():
            return zero_morphism(p, mid)
        raise RuntimeError("no lift exists")
    stacked = np.stack([proj.compose(h).to_vector() for h in basis], axis=1)
    sol = field.solve_matrix(stacked, through.to_vector().reshape(-1, 1))
    if sol is None:
        raise RuntimeError("no lift exists")
    lift = zero_morphism(p, mid)
    for k in range(len(basis)):
        c = int(sol[k, 0])
        if c % field.p:
            lift = lift.add(basis[k].scale(c))
    return lift


def pd(m: QModule, cap: int = DEFAULT_DIM_CAP) -> int | None:
    """Projective dimension, or None when it exceeds the cap."""
    if m.total_dim == 0:
        return 0
    current = m
    for i in range(cap + 1):
        cover = projective_cover(current)
        syz, _ = kernel(cover)
        if syz.total_dim == 0:
            return i
        current = syz
    return None


def injdim(m: QModule, cap: int = DEFAULT_DIM_CAP) -> int | None:
    """Injective dimension, computed over the opposite algebra."""
    return pd(dualize(m), cap)


def global_dimension(algebra, cap: int = DEFAULT_DIM_CAP) -> int | None:
    """Max projective dimension over the simple modules; None beyond cap."""
    worst = 0
    for v in algebra.quiver.vertices:
        d = pd(simple(algebra, v), cap)
        if d is None:
            return None
        worst = max(worst, d)
    return worst
