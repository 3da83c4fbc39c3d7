"""Joint spectral radius of finite matrix sets and its norm machinery.

The central identity is that the joint spectral radius of a set equals the
maximal cycle geometric mean of the entrywise maximum of its members.  That
aggregate matrix also supplies, through its left principal eigenvector, a
weighted max norm that is extremal and Barabanov for the set whenever the
aggregate is irreducible; walking the induced transition graph on the unit
sphere regions extracts a product of length at most n attaining the radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    BudgetError,
    DegenerateSpectrumError,
    DimensionMismatchError,
    InvalidEntryError,
    ToleranceError,
)
from .maxcore import MaxMatrix, MaxVector, as_max_matrix, as_max_vector
from .spectral import (
    FrobeniusForm,
    cycle_mean,
    frobenius_form,
    principal_eigenpair,
    strongly_connected_components,
    _successors,
)
from .tolerance import allclose, close, leq, resolve_tolerance

DEFAULT_PRODUCT_BUDGET = 10**6
DEFAULT_VERIFY_SAMPLES = 256
DEFAULT_SEED = 0

_SAMPLE_LOG_RANGE = (math.log(1e-3), math.log(1e3))


class MatrixSet:
    """Finite named collection of same-dimension matrices."""

    __slots__ = ("_members",)

    def __init__(self, members):
        members = [(str(name), as_max_matrix(mat)) for name, mat in members]
        if not members:
            raise InvalidEntryError("matrix set must be nonempty")
        n = members[0][1].n
        for name, mat in members:
            if mat.n != n:
                raise DimensionMismatchError(
                    f"member {name!r} has dimension {mat.n}, expected {n}"
                )
        names = [name for name, _ in members]
        if len(set(names)) != len(names):
            raise InvalidEntryError("member names must be unique")
        self._members = tuple(members)

    @classmethod
    def from_matrices(cls, matrices, names=None) -> "MatrixSet":
        matrices = list(matrices)
        if names is None:
            names = [f"A{k + 1}" for k in range(len(matrices))]
        return cls(list(zip(names, matrices)))

    @property
    def members(self) -> tuple[tuple[str, MaxMatrix], ...]:
        return self._members

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self._members)

    @property
    def matrices(self) -> tuple[MaxMatrix, ...]:
        return tuple(mat for _, mat in self._members)

    @property
    def n(self) -> int:
        return self._members[0][1].n

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self):
        return iter(self._members)

    def member(self, name: str) -> MaxMatrix:
        for mname, mat in self._members:
            if mname == name:
                return mat
        raise KeyError(f"no member named {name!r}")

    def extended(self, name: str, matrix) -> "MatrixSet":
        return MatrixSet(list(self._members) + [(name, as_max_matrix(matrix))])

    def restricted(self, nodes) -> "MatrixSet":
        """Same names, every member restricted to the given node subset."""
        idx = np.asarray(nodes, dtype=np.intp)
        return MatrixSet(
            [(name, MaxMatrix(mat.data[np.ix_(idx, idx)])) for name, mat in self._members]
        )

    def __repr__(self) -> str:
        return f"MatrixSet(n={self.n}, names={list(self.names)!r})"


@dataclass(frozen=True)
class WeightedMaxNorm:
    """Norm x -> max_i weights[i] * |x[i]| with strictly positive weights."""

    weights: MaxVector

    def __post_init__(self):
        w = as_max_vector(self.weights)
        object.__setattr__(self, "weights", w)
        if not w.is_positive():
            raise InvalidEntryError("norm weights must be strictly positive")

    @property
    def n(self) -> int:
        return self.weights.n

    def __call__(self, x) -> float:
        arr = np.asarray(x, dtype=np.float64) if not isinstance(x, MaxVector) else x.data
        if arr.shape != (self.n,):
            raise DimensionMismatchError(f"expected a vector of length {self.n}")
        return float((self.weights.data * np.abs(arr)).max())

    @classmethod
    def uniform(cls, n: int) -> "WeightedMaxNorm":
        return cls(MaxVector(np.ones(n)))


@dataclass(frozen=True)
class JsrBounds:
    """Depth-m bracket around the joint spectral radius."""

    m: int
    lower: float
    upper: float


@dataclass(frozen=True)
class FinitenessCertificate:
    """Product of length k <= n attaining the joint spectral radius.

    ``product`` equals the fold of the named members, last name applied
    leftmost, and its cycle mean equals the radius to the k-th power.
    ``region_cycle`` records the unit-sphere regions the factors traverse.
    """

    region_cycle: tuple[int, ...]
    matrix_names: tuple[str, ...]
    product: MaxMatrix
    k: int


@dataclass(frozen=True)
class VerificationResult:
    """Boolean verdict with an attached counterexample when it fails."""

    ok: bool
    counterexample: np.ndarray | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class NonexistenceCertificate:
    """Outcome of the Barabanov-norm obstruction test.

    When ``obstructed`` is true, ``witness`` is a nonzero nonnegative vector
    with aggregate (x) witness = eigenvalue * witness and eigenvalue strictly
    below the joint spectral radius, which rules out any Barabanov norm.
    """

    obstructed: bool
    witness: MaxVector | None = None
    eigenvalue: float | None = None
    class_nodes: tuple[int, ...] | None = None
    form: FrobeniusForm | None = None

    def __bool__(self) -> bool:
        return self.obstructed


def aggregate(psi: MatrixSet) -> MaxMatrix:
    """Entrywise maximum of the members."""
    out = np.zeros((psi.n, psi.n))
    for _, mat in psi:
        np.maximum(out, mat.data, out=out)
    return MaxMatrix(out)


def jsr(psi: MatrixSet, tol: float | None = None) -> float:
    """Joint spectral radius: the cycle mean of the aggregate matrix."""
    return cycle_mean(aggregate(psi), tol=tol).mu


def induced_norm(a, nu: WeightedMaxNorm) -> float:
    """Operator norm of ``a`` induced by a weighted max norm (closed form)."""
    am = as_max_matrix(a)
    v = nu.weights.data
    if am.n != nu.n:
        raise DimensionMismatchError(f"dimension mismatch: {am.n} vs {nu.n}")
    return float((v[:, None] * am.data / v[None, :]).max())


def iter_products(psi: MatrixSet, m: int, budget: int = DEFAULT_PRODUCT_BUDGET):
    """Yield (index tuple, product array) over all length-m member products.

    Products are built left to right with shared prefixes, so the total work
    is near one multiplication per yielded product.
    """
    if m < 1:
        raise ValueError(f"product length must be positive, got {m}")
    count = len(psi) ** m
    if count > budget:
        raise BudgetError(f"{len(psi)}^{m} = {count} products exceed the budget {budget}")
    mats = [mat.data for _, mat in psi]
    idx = [0] * m

    def rec(depth: int, prefix):
        for c, factor in enumerate(mats):
            idx[depth] = c
            current = factor if prefix is None else kernels.max_mul(prefix, factor)
            if depth == m - 1:
                yield tuple(idx), current
            else:
                yield from rec(depth + 1, current)

    yield from rec(0, None)


def jsr_bounds(
    psi: MatrixSet,
    m: int,
    nu: WeightedMaxNorm,
    tol: float | None = None,
    budget: int = DEFAULT_PRODUCT_BUDGET,
) -> JsrBounds:
    """Bracket the radius by enumerating every product of length m.

    The lower side takes the best cycle mean, the upper side the best induced
    norm, both to the power 1/m; the true radius always lies in between.
    """
    best_mu = 0.0
    best_eta = 0.0
    for _, prod in iter_products(psi, m, budget=budget):
        best_mu = max(best_mu, cycle_mean(prod, tol=tol).mu)
        best_eta = max(best_eta, induced_norm(prod, nu))
    return JsrBounds(m=m, lower=best_mu ** (1.0 / m), upper=best_eta ** (1.0 / m))


def barabanov_norm(psi: MatrixSet, tol: float | None = None) -> WeightedMaxNorm:
    """Weighted max norm that is Barabanov for the set.

    The weights are the left principal eigenvector of the aggregate matrix;
    requires the aggregate to be irreducible.
    """
    pair = principal_eigenpair(aggregate(psi), side="left", tol=tol)
    return WeightedMaxNorm(pair.vector)


def _positive_samples(n: int, samples: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return np.exp(rng.uniform(*_SAMPLE_LOG_RANGE, size=(samples, n)))


def verify_extremal(
    psi: MatrixSet,
    nu: WeightedMaxNorm,
    samples: int = DEFAULT_VERIFY_SAMPLES,
    seed: int = DEFAULT_SEED,
    tol: float | None = None,
) -> VerificationResult:
    """Check that no member expands the norm beyond the radius.

    The closed form (induced norm of every member at most the radius) decides
    the property; random positive vectors re-exercise it pointwise.
    """
    t = resolve_tolerance(tol)
    mu = jsr(psi, tol=t)
    v = nu.weights.data
    for name, mat in psi:
        eta = induced_norm(mat, nu)
        if not leq(eta, mu, t):
            _, j = np.unravel_index(
                int(np.argmax(v[:, None] * mat.data / v[None, :])), mat.data.shape
            )
            x = np.zeros(psi.n)
            x[j] = 1.0
            return VerificationResult(
                False, x, f"member {name!r} has induced norm {eta} > radius {mu}"
            )
    xs = _positive_samples(psi.n, samples, seed)
    nx = (xs * v[None, :]).max(axis=1)
    for name, mat in psi:
        ys = (mat.data[None, :, :] * xs[:, None, :]).max(axis=2)
        ny = (ys * v[None, :]).max(axis=1)
        bad = ny > mu * nx + t * np.maximum(1.0, np.maximum(ny, mu * nx))
        if bad.any():
            i = int(np.argmax(bad))
            return VerificationResult(
                False, xs[i], f"member {name!r} expands a sampled vector beyond the radius"
            )
    return VerificationResult(True)


def verify_barabanov(
    psi: MatrixSet,
    nu: WeightedMaxNorm,
    samples: int = DEFAULT_VERIFY_SAMPLES,
    seed: int = DEFAULT_SEED,
    tol: float | None = None,
    level: float | None = None,
) -> VerificationResult:
    """Check the exact-attainment property of a Barabanov norm.

    Closed form: the weights solve the left eigenproblem of the aggregate at
    ``level`` (the radius when not given).  Each sampled positive vector must
    then admit some member realizing equality.
    """
    t = resolve_tolerance(tol)
    mu = jsr(psi, tol=t) if level is None else float(level)
    v = nu.weights.data
    s = aggregate(psi).data
    columns = (v[:, None] * s).max(axis=0)
    if not allclose(columns, mu * v, t):
        j = int(np.argmax(np.abs(columns - mu * v)))
        x = np.zeros(psi.n)
        x[j] = 1.0
        return VerificationResult(
            False, x, f"weights fail the eigen equation at column {j}"
        )

    xs = _positive_samples(psi.n, samples, seed)
    nx = (xs * v[None, :]).max(axis=1)
    attained = np.zeros(len(xs), dtype=bool)
    for _, mat in psi:
        ys = (mat.data[None, :, :] * xs[:, None, :]).max(axis=2)
        ny = (ys * v[None, :]).max(axis=1)
        attained |= np.abs(ny - mu * nx) <= t * np.maximum(1.0, np.maximum(ny, mu * nx))
    if not attained.all():
        i = int(np.argmin(attained))
        return VerificationResult(
            False, xs[i], "no member attains equality on a sampled vector"
        )
    return VerificationResult(True)


def barabanov_nonexistence(psi: MatrixSet, tol: float | None = None) -> NonexistenceCertificate:
    """Detect the reducible obstruction to any Barabanov norm.

    The obstruction is a communicating class whose cycle mean is below the
    radius and which no class of different cycle mean can reach; such a class
    yields a nonzero eigenvector of the aggregate with eigenvalue below the
    radius, and along it every member contracts every monotone norm.
    """
    t = resolve_tolerance(tol)
    s = aggregate(psi).data
    form = frobenius_form(s, tol=t)
    mu = max(form.block_mus) if form.block_mus else 0.0

    for ci in range(form.class_count):
        lam = form.block_mus[ci]
        if close(lam, mu, t) or lam > mu:
            continue
        blockers = [
            cj
            for cj in range(form.class_count)
            if cj != ci and form.access[cj, ci] and not close(form.block_mus[cj], lam, t)
        ]
        if blockers:
            continue
        witness = _class_eigenvector(s, form, ci, lam, t)
        return NonexistenceCertificate(
            obstructed=True,
            witness=MaxVector(witness),
            eigenvalue=lam,
            class_nodes=form.classes[ci],
            form=form,
        )
    return NonexistenceCertificate(obstructed=False, form=form)


def _class_eigenvector(
    s: np.ndarray, form: FrobeniusForm, ci: int, lam: float, tol: float
) -> np.ndarray:
    """Nonzero eigenvector of ``s`` at ``lam`` supported near class ``ci``.

    For positive ``lam`` the support is the ancestor closure of the class and
    the vector is a critical column of the Kleene star of the normalized
    restriction.  For ``lam`` zero an ancestor class with an all-zero column
    exists and its indicator is an exact eigenvector.
    """
    from .maxcore import _star_raw

    n = s.shape[0]
    ancestors = [cj for cj in range(form.class_count) if form.access[cj, ci]]
    nodes = sorted(node for cj in ancestors for node in form.classes[cj])

    if lam <= 0.0:
        for g in nodes:  # smallest zero-column node inside the closure
            if not (s[:, g] > 0).any():
                x = np.zeros(n)
                x[g] = 1.0
                return x
        raise ToleranceError("no zero-column witness found for a zero eigenvalue class")

    sub = s[np.ix_(nodes, nodes)] / lam
    star = _star_raw(sub)
    plus = kernels.max_mul(sub, star)
    local = {node: k for k, node in enumerate(nodes)}
    class_first = [local[node] for node in form.classes[ci]]
    diag = np.diagonal(plus)
    crit = [g for g in class_first if close(diag[g], 1.0, tol)]
    g = min(crit) if crit else class_first[int(np.argmax(diag[class_first]))]
    x = np.zeros(n)
    x[nodes] = star[:, g]
    return x


def finiteness_product(psi: MatrixSet, tol: float | None = None) -> FinitenessCertificate:
    """Extract a product of length k <= n attaining the radius.

    Irreducible aggregate: build the transition graph on sphere regions
    (an edge i -> l whenever some member carries region i into region l at
    full speed), walk it from region 0 and cut out the cycle it must enter.
    Reducible aggregate: recurse on the first class of the communicating
    decomposition that attains the radius and reuse the member names, whose
    full-size product attains the radius as well.
    """
    t = resolve_tolerance(tol)
    mu = jsr(psi, tol=t)
    if mu <= 0.0:
        raise DegenerateSpectrumError("radius is zero, nothing to certify")

    s = aggregate(psi)
    if len(strongly_connected_components(_successors(s.data))) == 1:
        region_cycle, names = _region_cycle_irreducible(psi, tol=t)
    else:
        form = frobenius_form(s, tol=t)
        target = None
        for ci, block_mu in enumerate(form.block_mus):
            if close(block_mu, mu, t):
                target = ci
                break
        if target is None:  # the radius is the max of the block means
            raise ToleranceError("no communicating class attains the radius")
        nodes = list(form.classes[target])
        sub_cycle, names = _region_cycle_irreducible(psi.restricted(nodes), tol=t)
        region_cycle = tuple(nodes[r] for r in sub_cycle)

    prod = psi.member(names[0]).data
    for name in names[1:]:
        prod = kernels.max_mul(psi.member(name).data, prod)
    k = len(names)
    achieved = cycle_mean(prod, tol=t).mu
    if not close(achieved ** (1.0 / k), mu, t):
        raise ToleranceError(
            f"certificate re-verification failed: mu(product)^(1/{k}) = "
            f"{achieved ** (1.0 / k)} vs radius {mu}; a looser tolerance may help"
        )
    return FinitenessCertificate(
        region_cycle=region_cycle,
        matrix_names=tuple(names),
        product=MaxMatrix(prod),
        k=k,
    )


def _region_cycle_irreducible(psi: MatrixSet, tol: float) -> tuple[tuple[int, ...], list[str]]:
    """Region cycle and edge members for a set with irreducible aggregate."""
    mu = jsr(psi, tol=tol)
    v = barabanov_norm(psi, tol=tol).weights.data
    n = psi.n

    out_edges: list[list[int]] = [[] for _ in range(n)]
    edge_member: dict[tuple[int, int], str] = {}
    for i in range(n):
        for ell in range(n):
            target = mu * v[i] / v[ell]
            for name, mat in psi:  # member order fixes the tie break
                if close(mat.data[ell, i], target, tol):
                    out_edges[i].append(ell)
                    edge_member[(i, ell)] = name
                    break

    walk = [0]
    position = {0: 0}
    while True:
        cur = walk[-1]
        if not out_edges[cur]:
            raise ToleranceError(
                f"region {cur} has no admissible transition; a looser tolerance may help"
            )
        nxt = out_edges[cur][0]
        if nxt in position:
            cycle = walk[position[nxt] :]
            break
        position[nxt] = len(walk)
        walk.append(nxt)

    k = len(cycle)
    names = [edge_member[(cycle[idx], cycle[(idx + 1) % k])] for idx in range(k)]
    return tuple(cycle), names


def conv_invariance_check(
    psi: MatrixSet,
    trials: int,
    seed: int = DEFAULT_SEED,
    tol: float | None = None,
) -> bool:
    """Adjoining random max-convex combinations must not move the radius.

    Each trial draws coefficients with maximum one, forms the combination by
    entrywise scaled maxima and re-evaluates the radius of the enlarged set.
    """
    t = resolve_tolerance(tol)
    base = jsr(psi, tol=t)
    rng = np.random.default_rng(seed)
    for trial in range(trials):
        alpha = rng.random(len(psi))
        while alpha.max() <= 0.0:  # vanishing draw, essentially impossible
            alpha = rng.random(len(psi))
        alpha /= alpha.max()
        combo = np.zeros((psi.n, psi.n))
        for coeff, (_, mat) in zip(alpha, psi):
            np.maximum(combo, coeff * mat.data, out=combo)
        enlarged = psi.extended(f"combo{trial}", MaxMatrix(combo))
        if not close(jsr(enlarged, tol=t), base, t):
            return False
    return True
