"""Finite-dimensional modules over a bound quiver algebra.

A left module is a representation: a space dimension per vertex and a
matrix per arrow (target-dim x source-dim) such that every relation of
the algebra evaluates to zero.  Morphisms are vertex-indexed blocks
making every arrow square commute.

Modules and morphisms are immutable once constructed and validate
themselves eagerly, so any construction bug fails loudly at the point
where an invalid object would first exist.

Decomposition into indecomposables works through the endomorphism
algebra: the radical is the kernel of the trace form (valid because the
field characteristic exceeds the total dimension), the semisimple
quotient is split along its center deterministically, and only isotypic
blocks fall back to a seeded search for a splitting element.  The
multiset of summands is seed-independent by Krull-Schmidt.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from .algebra import BoundQuiverAlgebra, Path
from .errors import (
    AlgebraMismatch,
    FieldTooSmall,
    ShapeMismatch,
    UniverseInconsistent,
    UnknownVertex,
)

DEFAULT_SEED = 0xC0FFEE


class QModule:
    """A quiver representation over a fixed bound quiver algebra."""

    def __init__(self, algebra: BoundQuiverAlgebra, dims: dict[str, int], maps: dict[str, np.ndarray]):
        self.algebra = algebra
        field = algebra.field
        quiver = algebra.quiver
        self.dims = {v: int(dims.get(v, 0)) for v in quiver.vertices}
        for v, d in self.dims.items():
            if d < 0:
                raise ValueError(f"negative dimension at vertex {v}")
        self.total_dim = sum(self.dims.values())
        if self.total_dim >= field.p:
            raise FieldTooSmall(
                f"total dimension {self.total_dim} needs a prime above it, have p={field.p}"
            )
        self.maps = {}
        for a in quiver.arrows:
            t, s = self.dims[a.target], self.dims[a.source]
            m = maps.get(a.name)
            if m is None:
                m = field.zeros(t, s)
            else:
                m = field.mat(m) if not isinstance(m, np.ndarray) else np.mod(m.astype(np.int64), field.p)
            if m.shape != (t, s):
                raise ShapeMismatch(f"map for arrow {a.name} has shape {m.shape}, expected {(t, s)}")
            self.maps[a.name] = m
        self._check_relations()

    def _check_relations(self) -> None:
        for rel in self.algebra.relations:
            acc = None
            for coeff, path in rel.terms:
                term = self.algebra.field.scale(coeff, self.path_action(path))
                acc = term if acc is None else self.algebra.field.add(acc, term)
            if acc is not None and np.any(acc):
                raise ValueError(f"relation {[(c, p.label()) for c, p in rel.terms]} violated")

    # -- basic queries --------------------------------------------------

    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.algebra.quiver.vertices)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path_action(self, path: Path) -> np.ndarray:
        """The matrix by which a path acts: dims[source] -> dims[target]."""
        field = self.algebra.field
        m = field.identity(self.dims[path.source])
        for name in path.arrows:
            m = field.matmul(self.maps[name], m)
        return m

    def __repr__(self) -> str:
        return f"QModule({self.algebra.name}, dims={self.dim_vector()})"

    def equal_presentation(self, other: QModule) -> bool:
        """Exact equality of dims and matrices (not isomorphism)."""
        if other.algebra is not self.algebra or other.dims != self.dims:
            return False
        return all(np.array_equal(self.maps[a], other.maps[a]) for a in self.maps)


class QMorphism:
    """A module morphism given by one block per vertex."""

    def __init__(self, source: QModule, target: QModule, blocks: dict[str, np.ndarray]):
        if source.algebra is not target.algebra:
            raise AlgebraMismatch("morphism endpoints live over different algebras")
        self.source = source
        self.target = target
        field = source.algebra.field
        self.blocks = {}
        for v in source.algebra.quiver.vertices:
            t, s = target.dims[v], source.dims[v]
            b = blocks.get(v)
            if b is None:
                b = field.zeros(t, s)
            else:
                b = np.mod(np.asarray(b, dtype=np.int64), field.p)
            if b.shape != (t, s):
                raise ShapeMismatch(f"block at {v} has shape {b.shape}, expected {(t, s)}")
            self.blocks[v] = b
        self._check_squares()

    def _check_squares(self) -> None:
        field = self.source.algebra.field
        for a in self.source.algebra.quiver.arrows:
            lhs = field.matmul(self.target.maps[a.name], self.blocks[a.source])
            rhs = field.matmul(self.blocks[a.target], self.source.maps[a.name])
            if not np.array_equal(lhs, rhs):
                raise ValueError(f"square for arrow {a.name} does not commute")

    # -- algebra of morphisms -------------------------------------------

    def compose(self, first: QMorphism) -> QMorphism:
        """self after first."""
        if first.target is not self.source and not first.target.equal_presentation(self.source):
            raise ShapeMismatch("composition endpoints do not match")
        field = self.source.algebra.field
        blocks = {v: field.matmul(self.blocks[v], first.blocks[v]) for v in self.blocks}
        return QMorphism(first.source, self.target, blocks)

    def add(self, other: QMorphism) -> QMorphism:
        field = self.source.algebra.field
        blocks = {v: field.add(self.blocks[v], other.blocks[v]) for v in self.blocks}
        return QMorphism(self.source, self.target, blocks)

    def scale(self, c: int) -> QMorphism:
        field = self.source.algebra.field
        blocks = {v: field.scale(c, self.blocks[v]) for v in self.blocks}
        return QMorphism(self.source, self.target, blocks)

    def negate(self) -> QMorphism:
        return self.scale(-1)

    def is_zero(self) -> bool:
        return all(not np.any(b) for b in self.blocks.values())

    def is_injective(self) -> bool:
        field = self.source.algebra.field
        return all(field.rank(b) == b.shape[1] for b in self.blocks.values())

    def is_surjective(self) -> bool:
        field = self.source.algebra.field
        return all(field.rank(b) == b.shape[0] for b in self.blocks.values())

    def is_isomorphism(self) -> bool:
        return all(b.shape[0] == b.shape[1] for b in self.blocks.values()) and self.is_injective()

    def inverse(self) -> QMorphism:
        field = self.source.algebra.field
        blocks = {}
        for v, b in self.blocks.items():
            inv = field.inverse(b)
            if inv is None:
                raise ValueError("morphism is not invertible")
            blocks[v] = inv
        return QMorphism(self.target, self.source, blocks)

    def trace(self) -> int:
        field = self.source.algebra.field
        return int(sum(int(np.trace(b)) for b in self.blocks.values()) % field.p)

    def to_vector(self) -> np.ndarray:
        """Row-major flattening of all blocks in vertex order."""
        parts = [self.blocks[v].reshape(-1) for v in self.source.algebra.quiver.vertices]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    def __repr__(self) -> str:
        return f"QMorphism({self.source.dim_vector()} -> {self.target.dim_vector()})"


def identity_morphism(m: QModule) -> QMorphism:
    field = m.algebra.field
    return QMorphism(m, m, {v: field.identity(m.dims[v]) for v in m.dims})


def zero_morphism(source: QModule, target: QModule) -> QMorphism:
    return QMorphism(source, target, {})


def morphism_from_vector(source: QModule, target: QModule, vec: np.ndarray) -> QMorphism:
    blocks = {}
    offset = 0
    for v in source.algebra.quiver.vertices:
        t, s = target.dims[v], source.dims[v]
        blocks[v] = vec[offset : offset + t * s].reshape(t, s)
        offset += t * s
    return QMorphism(source, target, blocks)


# -- hom spaces -----------------------------------------------------------


def hom_basis(source: QModule, target: QModule) -> list[QMorphism]:
    """A basis of Hom(source, target) as the kernel of all square equations.

    Cached per (source, target) object pair; the returned list is fresh,
    the morphisms are shared.
    """
    if source.algebra is not target.algebra:
        raise AlgebraMismatch("hom requires a common algebra")
    cache = source.algebra.__dict__.setdefault("_hom_cache", {})
    key = (source, target)
    if key in cache:
        return list(cache[key])
    result = _hom_basis_compute(source, target)
    cache[key] = tuple(result)
    return result


def _hom_basis_compute(source: QModule, target: QModule) -> list[QMorphism]:
    field = source.algebra.field
    quiver = source.algebra.quiver

    sizes = {v: target.dims[v] * source.dims[v] for v in quiver.vertices}
    offsets = {}
    total = 0
    for v in quiver.vertices:
        offsets[v] = total
        total += sizes[v]
    if total == 0:
        return []

    rows = []
    for a in quiver.arrows:
        u, w = a.source, a.target
        n_rows = target.dims[w] * source.dims[u]
        if n_rows == 0:
            continue
        block = field.zeros(n_rows, total)
        # vec(N_a @ X_u) = (N_a kron I) vec(X_u)   (row-major vec)
        if sizes[u]:
            block[:, offsets[u] : offsets[u] + sizes[u]] = np.kron(
                target.maps[a.name], field.identity(source.dims[u])
            )
        # vec(X_w @ M_a) = (I kron M_a^T) vec(X_w)
        if sizes[w]:
            block[:, offsets[w] : offsets[w] + sizes[w]] = field.sub(
                block[:, offsets[w] : offsets[w] + sizes[w]],
                np.kron(field.identity(target.dims[w]), source.maps[a.name].T),
            )
        rows.append(np.mod(block, field.p))

    if rows:
        system = np.vstack(rows)
        kernel = field.kernel_basis(system)
    else:
        kernel = field.identity(total)
    return [morphism_from_vector(source, target, kernel[:, k]) for k in range(kernel.shape[1])]


def hom_dim(source: QModule, target: QModule) -> int:
    return len(hom_basis(source, target))


# -- sub/quotient machinery ----------------------------------------------


def submodule_from_bases(m: QModule, bases: dict[str, np.ndarray]) -> tuple[QModule, QMorphism]:
    """The submodule spanned vertex-wise by given independent columns.

    The spans must be arrow-stable; if not, coordinate solving fails and
    this raises, which is the desired loud failure.
    """
    field = m.algebra.field
    dims = {v: bases[v].shape[1] for v in bases}
    maps = {}
    for a in m.algebra.quiver.arrows:
        u, w = a.source, a.target
        mapped = field.matmul(m.maps[a.name], bases[u])
        coords = field.solve_matrix(bases[w], mapped)
        if coords is None:
            raise ValueError(f"spans are not stable under arrow {a.name}")
        maps[a.name] = coords
    sub = QModule(m.algebra, dims, maps)
    incl = QMorphism(sub, m, dict(bases))
    return sub, incl


def quotient_by_images(m: QModule, image_bases: dict[str, np.ndarray]) -> tuple[QModule, QMorphism]:
    """The quotient of m by the arrow-stable span of given image columns."""
    field = m.algebra.field
    proj_blocks = {}
    sections = {}
    dims = {}
    for v in m.algebra.quiver.vertices:
        n = m.dims[v]
        img = image_bases[v]
        full = field.image_basis(np.hstack([img, field.identity(n)])) if n else field.zeros(0, 0)
        r = img.shape[1]
        inv = field.inverse(full)
        proj_blocks[v] = inv[r:, :] if n else field.zeros(0, 0)
        sections[v] = full[:, r:] if n else field.zeros(0, 0)
        dims[v] = n - r
    maps = {}
    for a in m.algebra.quiver.arrows:
        u, w = a.source, a.target
        induced = field.matmul(field.matmul(proj_blocks[w], m.maps[a.name]), sections[u])
        # well-definedness: induced @ proj_u must equal proj_w @ map_a
        lhs = field.matmul(induced, proj_blocks[u])
        rhs = field.matmul(proj_blocks[w], m.maps[a.name])
        if not np.array_equal(lhs, rhs):
            raise ValueError(f"image spans are not stable under arrow {a.name}")
        maps[a.name] = induced
    quot = QModule(m.algebra, dims, maps)
    proj = QMorphism(m, quot, proj_blocks)
    return quot, proj


def kernel(f: QMorphism) -> tuple[QModule, QMorphism]:
    """(K, inclusion K -> source) with K the vertex-wise kernel."""
    field = f.source.algebra.field
    bases = {v: field.kernel_basis(f.blocks[v]) for v in f.blocks}
    return submodule_from_bases(f.source, bases)


def image(f: QMorphism) -> tuple[QModule, QMorphism]:
    """(I, inclusion I -> target) with I the vertex-wise image."""
    field = f.source.algebra.field
    bases = {v: field.image_basis(f.blocks[v]) for v in f.blocks}
    return submodule_from_bases(f.target, bases)


def cokernel(f: QMorphism) -> tuple[QModule, QMorphism]:
    """(C, projection target -> C) with C the vertex-wise cokernel."""
    field = f.source.algebra.field
    bases = {v: field.image_basis(f.blocks[v]) for v in f.blocks}
    return quotient_by_images(f.target, bases)


def corestriction(f: QMorphism) -> tuple[QModule, QMorphism, QMorphism]:
    """Factor f as (I, incl: I -> target, f0: source -> I)."""
    field = f.source.algebra.field
    img, incl = image(f)
    blocks = {}
    for v in f.blocks:
        coords = field.solve_matrix(incl.blocks[v], f.blocks[v])
        if coords is None:
            raise ValueError("image computation is inconsistent")
        blocks[v] = coords
    return img, incl, QMorphism(f.source, img, blocks)


# -- standard modules ------------------------------------------------------


def zero_module(algebra: BoundQuiverAlgebra) -> QModule:
    return QModule(algebra, {}, {})


def _std_cache(algebra: BoundQuiverAlgebra) -> dict:
    return algebra.__dict__.setdefault("_std_module_cache", {})


def simple(algebra: BoundQuiverAlgebra, v: str) -> QModule:
    algebra.quiver.check_vertex(v)
    cache = _std_cache(algebra)
    if ("S", v) not in cache:
        cache[("S", v)] = QModule(algebra, {v: 1}, {})
    return cache[("S", v)]


def projective(algebra: BoundQuiverAlgebra, v: str) -> QModule:
    """P(v): basis are the residue paths with source v, arrows act by composition."""
    algebra.quiver.check_vertex(v)
    cache = _std_cache(algebra)
    if ("P", v) in cache:
        return cache[("P", v)]
    field = algebra.field
    indices = algebra.basis_paths_from(v)
    local = {bi: k for k, bi in enumerate(indices)}
    per_vertex: dict[str, list[int]] = {u: [] for u in algebra.quiver.vertices}
    for bi in indices:
        per_vertex[algebra.basis[bi].target].append(bi)
    pos_in_vertex = {bi: per_vertex[algebra.basis[bi].target].index(bi) for bi in indices}
    dims = {u: len(per_vertex[u]) for u in algebra.quiver.vertices}
    maps = {}
    for a in algebra.quiver.arrows:
        u, w = a.source, a.target
        mat = field.zeros(dims[w], dims[u])
        for bi in per_vertex[u]:
            p = algebra.basis[bi]
            extended = Path(p.source, a.target, p.arrows + (a.name,))
            for bj, coeff in algebra.reduce_path(extended).items():
                mat[pos_in_vertex[bj], pos_in_vertex[bi]] = coeff
        maps[a.name] = mat
    cache[("P", v)] = QModule(algebra, dims, maps)
    return cache[("P", v)]


def injective(algebra: BoundQuiverAlgebra, v: str) -> QModule:
    """I(v): the dual of the projective at v over the opposite algebra."""
    algebra.quiver.check_vertex(v)
    cache = _std_cache(algebra)
    if ("I", v) not in cache:
        cache[("I", v)] = dualize(projective(algebra.opposite(), v))
    return cache[("I", v)]


def dualize(m: QModule) -> QModule:
    """The k-dual as a module over the opposite algebra.

    Cached per object, so dualize(dualize(m)) is m itself and downstream
    per-object caches (resolutions, hom spaces) stay warm.
    """
    cached = m.__dict__.get("_dual_cache")
    if cached is not None:
        return cached
    op = m.algebra.opposite()
    maps = {a.name: m.maps[a.name].T.copy() for a in m.algebra.quiver.arrows}
    dual = QModule(op, dict(m.dims), maps)
    m.__dict__["_dual_cache"] = dual
    dual.__dict__["_dual_cache"] = m
    return dual


def transport_module(m: QModule, algebra: BoundQuiverAlgebra) -> QModule:
    """Rebuild m over a structurally equal algebra object.

    Useful when two construction routes (restriction of an opposite vs
    opposite of a restriction) produce equal algebras as distinct
    objects.  Vertex and arrow names must match; the relation check of
    the constructor certifies compatibility.
    """
    if m.algebra.quiver.vertices != algebra.quiver.vertices or set(
        m.algebra.quiver.arrows
    ) != set(algebra.quiver.arrows):
        raise AlgebraMismatch("algebras are not structurally compatible")
    return QModule(algebra, dict(m.dims), dict(m.maps))


def dualize_morphism(f: QMorphism) -> QMorphism:
    """Contravariant dual: a morphism D(target) -> D(source)."""
    return QMorphism(dualize(f.target), dualize(f.source), {v: b.T.copy() for v, b in f.blocks.items()})


def direct_sum(algebra: BoundQuiverAlgebra, modules: list[QModule]) -> QModule:
    return direct_sum_with_maps(algebra, modules)[0]


def direct_sum_with_maps(
    algebra: BoundQuiverAlgebra, modules: list[QModule]
) -> tuple[QModule, list[QMorphism], list[QMorphism]]:
    """(sum, injections, projections) with block-diagonal arrow maps."""
    field = algebra.field
    for m in modules:
        if m.algebra is not algebra:
            raise AlgebraMismatch("direct sum over mixed algebras")
    dims = {v: sum(m.dims[v] for m in modules) for v in algebra.quiver.vertices}
    maps = {}
    for a in algebra.quiver.arrows:
        mat = field.zeros(dims[a.target], dims[a.source])
        ro = co = 0
        for m in modules:
            t, s = m.dims[a.target], m.dims[a.source]
            mat[ro : ro + t, co : co + s] = m.maps[a.name]
            ro += t
            co += s
        maps[a.name] = mat
    total = QModule(algebra, dims, maps)
    injections, projections = [], []
    offsets = {v: 0 for v in algebra.quiver.vertices}
    for m in modules:
        inj_blocks, proj_blocks = {}, {}
        for v in algebra.quiver.vertices:
            o, d = offsets[v], m.dims[v]
            inj = field.zeros(dims[v], d)
            inj[o : o + d, :] = field.identity(d)
            inj_blocks[v] = inj
            proj_blocks[v] = inj.T.copy()
            offsets[v] = o + d
        injections.append(QMorphism(m, total, inj_blocks))
        projections.append(QMorphism(total, m, proj_blocks))
    return total, injections, projections


def radical_submodule(m: QModule) -> tuple[QModule, QMorphism]:
    """rad M = sum of arrow images, as a submodule with inclusion."""
    field = m.algebra.field
    bases = {}
    for v in m.algebra.quiver.vertices:
        incoming = [m.maps[a.name] for a in m.algebra.quiver.arrows_to[v]]
        stacked = np.hstack(incoming) if incoming else field.zeros(m.dims[v], 0)
        bases[v] = field.image_basis(stacked)
    return submodule_from_bases(m, bases)


def top_quotient(m: QModule) -> tuple[QModule, QMorphism]:
    """top M = M / rad M with its projection."""
    field = m.algebra.field
    bases = {}
    for v in m.algebra.quiver.vertices:
        incoming = [m.maps[a.name] for a in m.algebra.quiver.arrows_to[v]]
        stacked = np.hstack(incoming) if incoming else field.zeros(m.dims[v], 0)
        bases[v] = field.image_basis(stacked)
    return quotient_by_images(m, bases)


def socle_submodule(m: QModule) -> tuple[QModule, QMorphism]:
    """soc M = vertex-wise kernel of all outgoing maps."""
    field = m.algebra.field
    bases = {}
    for v in m.algebra.quiver.vertices:
        outgoing = [m.maps[a.name] for a in m.algebra.quiver.arrows_from[v]]
        stacked = np.vstack(outgoing) if outgoing else field.zeros(0, m.dims[v])
        bases[v] = field.kernel_basis(stacked)
    return submodule_from_bases(m, bases)


# -- decomposition ---------------------------------------------------------


def _min_poly(field, blocks: list[np.ndarray]) -> list[int]:
    """Minimal polynomial (ascending coeffs, monic) of a block-diagonal matrix."""
    dim = sum(b.shape[0] for b in blocks)
    if dim == 0:
        return [0, 1]
    big = field.zeros(dim, dim)
    o = 0
    for b in blocks:
        n = b.shape[0]
        big[o : o + n, o : o + n] = b
        o += n
    power = field.identity(dim)
    vecs = [power.reshape(-1)]
    while True:
        power = field.matmul(big, power)
        stack = np.stack(vecs, axis=1)
        sol = field.solve_matrix(stack, power.reshape(-1, 1))
        if sol is not None:
            coeffs = [int(-sol[i, 0]) % field.p for i in range(len(vecs))]
            coeffs.append(1)
            return coeffs
        vecs.append(power.reshape(-1))


def _poly_eval_matrix(field, coeffs: list[int], block: np.ndarray) -> np.ndarray:
    n = block.shape[0]
    acc = field.zeros(n, n)
    for c in reversed(coeffs):
        acc = field.add(field.matmul(acc, block), field.scale(c, field.identity(n)))
    return acc


def _poly_roots(field, coeffs: list[int]) -> list[int]:
    xs = np.arange(field.p, dtype=np.int64)
    acc = np.zeros(field.p, dtype=np.int64)
    for c in reversed(coeffs):
        acc = np.mod(acc * xs + c, field.p)
    return [int(t) for t in np.nonzero(acc == 0)[0]]


def _poly_divmod(field, num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    num = [c % field.p for c in num]
    den = [c % field.p for c in den]
    while den and den[-1] == 0:
        den.pop()
    quot = [0] * max(0, len(num) - len(den) + 1)
    rem = list(num)
    inv_lead = field.inv_scalar(den[-1])
    for k in range(len(num) - len(den), -1, -1):
        if len(rem) < len(den) + k:
            continue
        c = (rem[len(den) - 1 + k] * inv_lead) % field.p
        quot[k] = c
        for i, d in enumerate(den):
            rem[i + k] = (rem[i + k] - c * d) % field.p
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


def _primary_parts(field, minpoly: list[int]) -> list[list[int]]:
    """Coprime factors: one (t-r)^e per root r, plus the rootless remainder."""
    parts = []
    g = list(minpoly)
    for r in _poly_roots(field, minpoly):
        factor = [(-r) % field.p, 1]
        part = [1]
        while True:
            quot, rem = _poly_divmod(field, g, factor)
            if rem:
                break
            g = quot
            part = _poly_mul(field, part, factor)
        parts.append(part)
    if len(g) > 1:
        parts.append(g)
    return parts


def _poly_mul(field, a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] = (out[i + j] + ca * cb) % field.p
    return out


def _endo_poly(field, f: QMorphism, coeffs: list[int]) -> QMorphism:
    blocks = {v: _poly_eval_matrix(field, coeffs, b) for v, b in f.blocks.items()}
    return QMorphism(f.source, f.target, blocks)


def _split_along(m: QModule, f: QMorphism) -> list[tuple[QModule, QMorphism, QMorphism]] | None:
    """Primary decomposition of m under the endomorphism f, if nontrivial."""
    field = m.algebra.field
    minpoly = _min_poly(field, [f.blocks[v] for v in m.algebra.quiver.vertices])
    parts = _primary_parts(field, minpoly)
    if len(parts) < 2:
        return None
    pieces = []
    for part in parts:
        k, incl = kernel(_endo_poly(field, f, part))
        pieces.append((k, incl))
    if sum(k.total_dim for k, _ in pieces) != m.total_dim:
        raise RuntimeError("primary decomposition does not fill the module")
    # projections: invert the vertex-wise change of basis
    projections = []
    inverses = {}
    for v in m.algebra.quiver.vertices:
        stacked = np.hstack([incl.blocks[v] for _, incl in pieces])
        inv = field.inverse(stacked) if m.dims[v] else field.zeros(0, 0)
        if inv is None:
            raise RuntimeError("piece inclusions do not span")
        inverses[v] = inv
    offset = {v: 0 for v in m.algebra.quiver.vertices}
    for k, incl in pieces:
        blocks = {}
        for v in m.algebra.quiver.vertices:
            d = k.dims[v]
            blocks[v] = inverses[v][offset[v] : offset[v] + d, :]
            offset[v] += d
        projections.append(QMorphism(m, k, blocks))
    return [(k, incl, proj) for (k, incl), proj in zip(pieces, projections)]


class _EndData:
    """Coordinates for End(M): radical, semisimple quotient, center."""

    def __init__(self, m: QModule):
        self.module = m
        self.field = m.algebra.field
        self.basis = hom_basis(m, m)
        self.vecs = np.stack([f.to_vector() for f in self.basis], axis=1)

    def coords(self, f: QMorphism) -> np.ndarray:
        sol = self.field.solve_matrix(self.vecs, f.to_vector().reshape(-1, 1))
        if sol is None:
            raise RuntimeError("endomorphism outside End basis span")
        return sol[:, 0]

    def from_coords(self, c: np.ndarray) -> QMorphism:
        f = zero_morphism(self.module, self.module)
        for i, b in enumerate(self.basis):
            if int(c[i]) % self.field.p:
                f = f.add(b.scale(int(c[i])))
        return f

    def radical_coords(self) -> np.ndarray:
        n = len(self.basis)
        gram = self.field.zeros(n, n)
        for i, bi in enumerate(self.basis):
            for j, bj in enumerate(self.basis):
                gram[i, j] = bi.compose(bj).trace()
        return self.field.kernel_basis(gram)


def split_summands(
    m: QModule, seed: int = DEFAULT_SEED
) -> list[tuple[QModule, QMorphism, QMorphism]]:
    """All indecomposable summands of m with inclusions and projections.

    Indecomposability of each returned piece is certified through the
    endomorphism algebra (local ring test), never assumed.  Results are
    cached per (module object, seed).
    """
    if m.total_dim == 0:
        return []
    if m.algebra.field.p <= m.total_dim:
        raise FieldTooSmall(f"decomposition needs p > {m.total_dim}, have {m.algebra.field.p}")
    cache = m.algebra.__dict__.setdefault("_split_cache", {})
    key = (m, seed)
    if key in cache:
        return list(cache[key])
    result = []
    stack = [(m, identity_morphism(m), identity_morphism(m))]
    while stack:
        cur, incl, proj = stack.pop()
        if cur.total_dim == 0:
            continue
        split = _split_module_once(cur, seed)
        if split is None:
            result.append((cur, incl, proj))
            continue
        for piece, p_incl, p_proj in split:
            stack.append((piece, incl.compose(p_incl), p_proj.compose(proj)))
    result.sort(key=lambda t: (-t[0].total_dim, t[0].dim_vector()))
    cache[key] = tuple(result)
    return result


def _split_module_once(m: QModule, seed: int) -> list[tuple[QModule, QMorphism, QMorphism]] | None:
    """One splitting step; None certifies that m is indecomposable."""
    field = m.algebra.field
    end = _EndData(m)
    n_end = len(end.basis)
    if n_end == 1:
        return None
    rad = end.radical_coords()
    s_dim = n_end - rad.shape[1]
    if s_dim == 1:
        return None

    # coordinates on S = End/rad: complete rad to a basis of End-coords
    full = field.image_basis(np.hstack([rad, field.identity(n_end)]))
    inv = field.inverse(full)
    r = rad.shape[1]
    to_s = inv[r:, :]
    section = full[:, r:]

    def mul_s(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        fx = end.from_coords(field.matmul(section, x.reshape(-1, 1))[:, 0])
        fy = end.from_coords(field.matmul(section, y.reshape(-1, 1))[:, 0])
        return field.matmul(to_s, end.coords(fx.compose(fy)).reshape(-1, 1))[:, 0]

    s_basis = [field.identity(s_dim)[:, i] for i in range(s_dim)]
    # center of S: [z, b] = 0 for all basis b
    constraint_rows = []
    for b in s_basis:
        left = np.stack([mul_s(e, b) for e in s_basis], axis=1)
        right = np.stack([mul_s(b, e) for e in s_basis], axis=1)
        constraint_rows.append(field.sub(left, right))
    center = field.kernel_basis(np.vstack(constraint_rows))
    z_dim = center.shape[1]

    # Frobenius on the center: z -> z^p, F_p-linear on a commutative algebra
    frob_cols = []
    for i in range(z_dim):
        z = center[:, i]
        endo = end.from_coords(field.matmul(section, z.reshape(-1, 1))[:, 0])
        powered = _endo_power(field, endo, field.p)
        s_coords = field.matmul(to_s, end.coords(powered).reshape(-1, 1))
        w = field.solve_matrix(center, s_coords)
        if w is None:
            raise RuntimeError("center is not Frobenius-stable")
        frob_cols.append(w[:, 0])
    frob = np.stack(frob_cols, axis=1)
    berlekamp = field.kernel_basis(field.sub(frob, field.identity(z_dim)))

    if berlekamp.shape[1] >= 2:
        # deterministic split along a non-scalar element of the fixed field
        id_s = field.matmul(to_s, end.coords(identity_morphism(m)).reshape(-1, 1))
        id_z = field.solve_matrix(center, id_s)[:, 0]
        chosen = None
        for i in range(berlekamp.shape[1]):
            cand = berlekamp[:, i]
            if field.rank(np.stack([id_z, cand], axis=1)) == 2:
                chosen = cand
                break
        if chosen is None:
            raise RuntimeError("Berlekamp subalgebra collapsed onto scalars")
        lift = end.from_coords(field.matmul(section, field.matmul(center, chosen.reshape(-1, 1)))[:, 0])
        split = _split_along(m, lift)
        if split is None:
            raise RuntimeError("central element with split spectrum failed to split")
        return split

    # single simple block M_n(F_q); n == 1 certifies indecomposability
    if s_dim % z_dim:
        raise RuntimeError("simple block dimension is not a multiple of its center")
    n_sq = s_dim // z_dim
    n = int(round(n_sq ** 0.5))
    if n * n != n_sq:
        raise RuntimeError("simple block dimension is not a square over its center")
    if n == 1:
        return None

    # isotypic block: seeded search for an endomorphism with split spectrum
    rng = np.random.default_rng(seed)
    for _ in range(4096):
        coeffs = rng.integers(0, field.p, size=n_end)
        cand = end.from_coords(np.mod(coeffs, field.p))
        split = _split_along(m, cand)
        if split is not None:
            return split
    raise RuntimeError("isotypic split not found; raise the trial bound")


def _endo_power(field, f: QMorphism, exponent: int) -> QMorphism:
    result = identity_morphism(f.source)
    base = f
    e = exponent
    while e:
        if e & 1:
            result = result.compose(base)
        base = base.compose(base)
        e >>= 1
    return result


def decompose(m: QModule, seed: int = DEFAULT_SEED) -> list[tuple[QModule, int]]:
    """Indecomposable summands with multiplicities, canonically ordered."""
    parts = split_summands(m, seed)
    groups: list[tuple[QModule, int]] = []
    for piece, _, _ in parts:
        for i, (rep, count) in enumerate(groups):
            if indecomposable_iso(rep, piece) is not None:
                groups[i] = (rep, count + 1)
                break
        else:
            groups.append((piece, 1))
    return groups


def indecomposable_iso(m: QModule, n: QModule) -> QMorphism | None:
    """Isomorphism witness between indecomposables, or None.

    Sound for indecomposables: if m and n are isomorphic, some pair of
    hom-basis elements composes to a unit in the local ring End(m).
    """
    if m.dim_vector() != n.dim_vector():
        return None
    fwd = hom_basis(m, n)
    back = hom_basis(n, m)
    for f in fwd:
        for g in back:
            h = g.compose(f)
            if h.is_isomorphism():
                return f
    return None


def is_isomorphic(m: QModule, n: QModule, seed: int = DEFAULT_SEED) -> QMorphism | None:
    """Exact isomorphism test with witness, via Krull-Schmidt matching."""
    if m.algebra is not n.algebra:
        raise AlgebraMismatch("isomorphism test requires a common algebra")
    if m.dim_vector() != n.dim_vector():
        return None
    if m.total_dim == 0:
        return identity_morphism(m) if n.total_dim == 0 else None
    parts_m = split_summands(m, seed)
    parts_n = split_summands(n, seed)
    if len(parts_m) != len(parts_n):
        return None
    used = [False] * len(parts_n)
    witness = zero_morphism(m, n)
    for piece, _, proj in parts_m:
        found = False
        for j, (other, incl_n, _) in enumerate(parts_n):
            if used[j]:
                continue
            phi = indecomposable_iso(piece, other)
            if phi is not None:
                used[j] = True
                witness = witness.add(incl_n.compose(phi).compose(proj))
                found = True
                break
        if not found:
            return None
    if not witness.is_isomorphism():
        raise RuntimeError("assembled summand matching is not invertible")
    return witness


# -- universes -------------------------------------------------------------


class Universe:
    """A named, finite list of pairwise non-isomorphic indecomposables."""

    def __init__(self, algebra: BoundQuiverAlgebra, members: list[tuple[str, QModule]]):
        self.algebra = algebra
        names = [n for n, _ in members]
        if len(set(names)) != len(names):
            raise UniverseInconsistent("duplicate member names")
        for _, mod in members:
            if mod.algebra is not algebra:
                raise AlgebraMismatch("universe member over a different algebra")
        self.members = list(members)
        self._by_name = dict(members)

    def __len__(self) -> int:
        return len(self.members)

    def names(self) -> list[str]:
        return [n for n, _ in self.members]

    def modules(self) -> list[QModule]:
        return [m for _, m in self.members]

    def module(self, name: str) -> QModule:
        if name not in self._by_name:
            raise UnknownVertex(f"no universe member named {name!r}")
        return self._by_name[name]

    def validate(self, seed: int = DEFAULT_SEED) -> None:
        """Certify members are indecomposable and pairwise non-isomorphic."""
        for name, mod in self.members:
            if mod.total_dim == 0:
                raise UniverseInconsistent(f"member {name} is the zero module")
            parts = split_summands(mod, seed)
            if len(parts) != 1:
                raise UniverseInconsistent(f"member {name} decomposes into {len(parts)} summands")
        for i, (name_a, a) in enumerate(self.members):
            for name_b, b in self.members[i + 1 :]:
                if indecomposable_iso(a, b) is not None:
                    raise UniverseInconsistent(f"members {name_a} and {name_b} are isomorphic")

    def find_member(self, m: QModule) -> str | None:
        """Name of the member isomorphic to an indecomposable m, if any."""
        for name, member in self.members:
            if indecomposable_iso(member, m) is not None:
                return name
        return None

    def decompose_names(self, m: QModule, seed: int = DEFAULT_SEED) -> Counter:
        """Summands of m as a multiset of member names."""
        counts: Counter = Counter()
        for rep, mult in decompose(m, seed):
            name = self.find_member(rep)
            if name is None:
                raise UniverseInconsistent(
                    f"summand with dims {rep.dim_vector()} matches no universe member"
                )
            counts[name] += mult
        return counts

    def dualized(self) -> Universe:
        """The universe of duals over the opposite algebra."""
        return Universe(self.algebra.opposite(), [(n, dualize(m)) for n, m in self.members])

    def transported(self, algebra: BoundQuiverAlgebra) -> Universe:
        """The same members rebuilt over a structurally equal algebra."""
        return Universe(algebra, [(n, transport_module(m, algebra)) for n, m in self.members])
