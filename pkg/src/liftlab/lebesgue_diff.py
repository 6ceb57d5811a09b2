"""Mean-value transforms, filter-kernel limit operators, and the two-way
bridge between differentiating kernels and liftings.

The mean-value transform of an integrable function records its average
over every set of positive measure.  A filter kernel (one filter on those
sets per point) turns such a transform back into a partial function by
taking limits; a kernel "differentiates" when this recovers every
function almost everywhere.  Both directions of the equivalence with
liftings are implemented and re-checked on concrete spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import random

from .filter_calculus import (Filter, direct_image, is_directed, limit_along,
                              tail_filter, trivial_filter)
from .measure_space import (MeasureSpace, PartialFn, averageable_sets, bits,
                            indicator, is_null, measure, total_fn)
from .measure_algebra import (SetTransform, enumerate_liftings, is_lifting,
                              is_boolean_homomorphism, is_lower_density,
                              is_right_inverse, lifting_retraction,
                              lifting_to_right_inverse, lower_density_to_lifting)
from .verdict import InternalCheckError, Verdict


@dataclass(frozen=True)
class LebesgueTransform:
    """All mean values of one function, indexed by the averageable sets."""

    space: MeasureSpace
    values: dict  # averageable set mask -> Fraction

    def __call__(self, q: int) -> Fraction:
        return self.values[q]

    def as_tuple(self) -> tuple:
        return tuple(self.values[q] for q in averageable_sets(self.space))


@dataclass(frozen=True)
class FilterKernel:
    """One filter on the averageable sets per atom of the space."""

    space: MeasureSpace
    filters: tuple[Filter, ...]

    def __post_init__(self):
        if len(self.filters) != self.space.n:
            raise ValueError("need one filter per atom")
        ground = averageable_sets(self.space)
        for f in self.filters:
            if f.ground != ground:
                raise ValueError("kernel filters must live on the averageable sets")


@dataclass(frozen=True)
class DifferentiationBasis:
    """A family of averageable sets with directed per-point subfamilies
    covering almost every point."""

    space: MeasureSpace
    collection: tuple[int, ...]
    families: tuple[tuple[int, ...], ...]  # per atom: members containing it
    support: int


def lebesgue_transform(space: MeasureSpace, f: PartialFn) -> LebesgueTransform:
    """Mean values of an a.e.-defined function over every averageable set.

    Undefined atoms are null, so they carry no mass: the transform only
    sees the a.e. class of ``f``.
    """
    if f.space != space:
        raise ValueError("function lives on a different space")
    if not f.defined_ae():
        raise ValueError("function must be defined almost everywhere")
    values = {}
    for q in averageable_sets(space):
        integral = sum((f(i) * space.weights[i] for i in bits(q & f.domain)),
                       Fraction(0))
        values[q] = integral / measure(space, q)
    return LebesgueTransform(space, values)


def limiting_operator(space: MeasureSpace, kernel: FilterKernel, lam) -> PartialFn:
    """Pointwise limits of ``lam`` along the kernel's filters.

    The domain is exactly the set of points where the limit exists; an
    empty domain is legal.
    """
    domain = 0
    values: list[Fraction | None] = [None] * space.n
    for x in range(space.n):
        v = limit_along(kernel.filters[x], lam)
        if v is not None:
            domain |= 1 << x
            values[x] = v
    return PartialFn(space, domain, tuple(values))


def recovers(space: MeasureSpace, kernel: FilterKernel, f: PartialFn) -> Verdict:
    """Exact a.e. recovery of one function from its mean values."""
    g = limiting_operator(space, kernel, lebesgue_transform(space, f))
    for x in bits(space.pos_mask):
        if not g.defined_at(x):
            return Verdict.fail(x, "limit undefined at a positive atom")
        if g(x) != f(x):
            return Verdict.fail(x, f"recovered {g(x)} instead of {f(x)}")
    return Verdict.ok()


def separating_function(space: MeasureSpace) -> PartialFn:
    """A total function with pairwise distinct values on the atoms."""
    return total_fn(space, [Fraction(i + 1) for i in range(space.n)])


def differentiates(space: MeasureSpace, kernel: FilterKernel) -> Verdict:
    """Does the kernel's limit operator invert the mean-value map?

    Checked on every indicator plus one separating function.  On a finite
    space this family suffices for all rational functions; the reduction
    itself is validated against randomized functions in the tests.
    """
    for q in range(space.full_mask + 1):
        v = recovers(space, kernel, indicator(space, q))
        if not v:
            return Verdict.fail((q, v.witness), f"indicator of {q:#b}: {v.reason}")
    v = recovers(space, kernel, separating_function(space))
    if not v:
        return Verdict.fail(("separating", v.witness), v.reason)
    return Verdict.ok()


def lower_density_from_kernel(space: MeasureSpace, kernel: FilterKernel) -> SetTransform:
    """The set transform picking the points where a set's indicator
    averages to 1 in the limit."""
    d = differentiates(space, kernel)
    if not d:
        raise ValueError(f"kernel does not differentiate: {d.reason}")
    one = Fraction(1)
    table = []
    for q in range(space.full_mask + 1):
        lam = lebesgue_transform(space, indicator(space, q))
        table.append(sum(1 << x for x in range(space.n)
                         if limit_along(kernel.filters[x], lam) == one))
    result = SetTransform(space, tuple(table))
    v = is_lower_density(result)
    if not v:
        raise InternalCheckError(
            f"differentiating kernel gave a non-density: {v.reason}")
    return result


def basis_from_lifting(space: MeasureSpace, lifting: SetTransform) -> DifferentiationBasis:
    """Averageable fixed points of a lifting, with both basis axioms
    verified: directed per-point families and full-measure support."""
    v = is_lifting(lifting)
    if not v:
        raise ValueError(f"not a lifting: {v.reason} (witness {v.witness})")
    fixed = tuple(q for q in averageable_sets(space) if lifting.table[q] == q)
    families = []
    support = 0
    for x in range(space.n):
        fam = tuple(q for q in fixed if (q >> x) & 1)
        families.append(fam)
        if fam:
            support |= 1 << x
            ok, witness = is_directed(fam)
            if not ok:
                raise InternalCheckError(
                    f"family at point {x} is not directed: {witness}")
    if not is_null(space, space.full_mask ^ support):
        raise InternalCheckError("basis support misses a non-null set")
    return DifferentiationBasis(space, fixed, tuple(families), support)


def kernel_from_lifting(space: MeasureSpace, lifting: SetTransform) -> FilterKernel:
    """Tail filters of the lifting's basis, pushed onto the averageable
    sets; points outside the support get the trivial filter."""
    basis = basis_from_lifting(space, lifting)
    ground = averageable_sets(space)
    filters = []
    for x in range(space.n):
        fam = basis.families[x]
        if fam:
            filters.append(direct_image(lambda q: q, tail_filter(fam), ground))
        else:
            filters.append(trivial_filter(ground))
    kernel = FilterKernel(space, tuple(filters))
    if not differentiates(space, kernel):
        raise InternalCheckError("kernel of a lifting fails to differentiate")
    return kernel


@dataclass(frozen=True)
class TheoremOneEntry:
    retraction: tuple[int, ...]
    differentiates: Verdict
    density_ok: Verdict
    lifting_ok: Verdict
    hom_ok: Verdict
    right_inverse_ok: Verdict
    round_trip_identity: bool

    @property
    def passed(self) -> bool:
        return (bool(self.differentiates) and bool(self.density_ok)
                and bool(self.lifting_ok) and bool(self.hom_ok)
                and bool(self.right_inverse_ok))

    def to_dict(self) -> dict:
        return {
            "retraction": list(self.retraction),
            "differentiates": self.differentiates.to_dict(),
            "lower_density": self.density_ok.to_dict(),
            "lifting": self.lifting_ok.to_dict(),
            "boolean_homomorphism": self.hom_ok.to_dict(),
            "right_inverse": self.right_inverse_ok.to_dict(),
            "round_trip_identity": self.round_trip_identity,
        }


@dataclass(frozen=True)
class TheoremOneReport:
    space: MeasureSpace
    entries: tuple[TheoremOneEntry, ...]

    @property
    def all_pass(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def round_trips_identical(self) -> bool:
        return all(e.round_trip_identity for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "weights": [str(w) for w in self.space.weights],
            "lifting_count": len(self.entries),
            "entries": [e.to_dict() for e in self.entries],
            "all_pass": self.all_pass,
            "round_trips_identical": self.round_trips_identical,
        }


def verify_theorem1(space: MeasureSpace) -> TheoremOneReport:
    """Both directions of the lifting/limit-operator equivalence.

    For every lifting: its kernel differentiates (one direction); from
    that kernel, rebuild a density, extend it to a lifting, and read off a
    Boolean-algebra section of the projection (the other direction).  Also
    records whether the round trip lands on the starting lifting.
    """
    entries = []
    for lifting in enumerate_liftings(space):
        kernel = kernel_from_lifting(space, lifting)
        diff_v = differentiates(space, kernel)
        density = lower_density_from_kernel(space, kernel)
        density_v = is_lower_density(density)
        rebuilt = lower_density_to_lifting(space, density)
        lifting_v = is_lifting(rebuilt)
        rho = lifting_to_right_inverse(space, rebuilt)
        hom_v = is_boolean_homomorphism(space, rho)
        ri_v = is_right_inverse(space, rho)
        entries.append(TheoremOneEntry(
            retraction=lifting_retraction(lifting),
            differentiates=diff_v,
            density_ok=density_v,
            lifting_ok=lifting_v,
            hom_ok=hom_v,
            right_inverse_ok=ri_v,
            round_trip_identity=rebuilt.table == lifting.table,
        ))
    return TheoremOneReport(space, tuple(entries))


def random_total_fn(space: MeasureSpace, rng: random.Random,
                    magnitude: int = 50, max_denominator: int = 12) -> PartialFn:
    vals = [Fraction(rng.randint(-magnitude, magnitude),
                     rng.randint(1, max_denominator)) for _ in range(space.n)]
    return total_fn(space, vals)
