"""L-infinity algebras, modules and module morphisms through their Taylor coefficients.

Coefficients are evaluators on graded inputs. Residuals of `Q^2 = 0`, of the module
relations and of the morphism relations are assembled from unshuffles with Koszul
signs on shifted degrees, so they vanish exactly when the structures are compatible.

Conventions:

* `Q_1(x) = dx`, `Q_2(x1, x2) = -(-1)^|x1| [x1, x2]` for a dgla.
* `Q~_0(m) = delta m`, `Q~_1(x; m) = -(-1)^|x| L_x m` for a dgla module.
* `Q_k` has degree `sum |x| - k + 2`, `Q~_k(x; m)` has degree
  `|m| + sum (|x| - 1) + 1` and a morphism coefficient `phi_k(x; m)` has degree
  `|m| + sum (|x| - 1)`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations, product
from math import factorial
from typing import TYPE_CHECKING, Any, Callable

from cychains.cartan import (
    DiffForm,
    MultiVector,
    VolumeForm,
    VTop,
    contract,
    contract_basis,
    contract_volume,
    de_rham,
    integrate,
    pair_vt_form_series,
    schouten,
)
from cychains.core import LaurentPoly, USeries, koszul_sign, sign, useries_div_u
from cychains.exceptions import ArityMismatch, WindowTooSmall
from cychains.hochschild import (
    HochChain,
    cochain_action,
    cochain_differential,
    gerstenhaber,
    hkr_chains,
    hkr_cochain,
    negative_cyclic_differential,
)
from cychains.uactions import (
    H1_SIGN,
    H1_taylor,
    action_Lt,
    action_Lt_dual,
    dual_differential,
    u_de_rham,
    u_divergence,
)

if TYPE_CHECKING:  # pragma: no cover
    from typing import Iterable, Mapping, Optional, Sequence

    Evaluator = Callable[[tuple["Graded", ...], Optional["Graded"]], Any]

LOGGER = logging.getLogger(__name__)

HKR_ADJOINT_SIGN = 1
"""`<hkr*(x), c> = HKR_ADJOINT_SIGN <hkr_vt(x), c> / n!` for chains `c` of length `n`."""


@dataclass(frozen=True)
class Graded:
    """A homogeneous input: a value together with its degree."""

    value: Any
    degree: int

    @property
    def shifted_parity(self) -> int:
        """Parity in the shifted (`+1`) grading."""
        return (self.degree + 1) % 2


class FamilyKind(Enum):
    """What a Taylor family encodes."""

    ALGEBRA = "Q"
    MODULE = "Q~"
    MORPHISM = "phi"


class TaylorFamily:
    """Arity-indexed Taylor coefficients.

    Module and morphism coefficients take the algebra inputs and one module input.
    Missing arities are zero, signalled by `None`.
    """

    def __init__(
        self, kind: FamilyKind, coefficients: Mapping[int, Evaluator], name: str = ""
    ) -> None:
        self.kind = kind
        self.coefficients = dict(coefficients)
        self.name = name

    @classmethod
    def zero(cls, kind: FamilyKind, name: str = "zero") -> TaylorFamily:
        return cls(kind, {}, name)

    def arities(self) -> list[int]:
        return sorted(self.coefficients)

    def __call__(self, xs: Sequence[Graded], m: Graded | None = None) -> Any:
        evaluator = self.coefficients.get(len(xs))
        if evaluator is None:
            return None
        if self.kind is FamilyKind.ALGEBRA:
            if m is not None:
                raise ArityMismatch("Algebra coefficients take no module input")
        elif m is None:
            raise ArityMismatch(f"{self.kind.name.lower()} coefficients need a module input")
        return evaluator(tuple(xs), m)

    def output_degree(self, xs: Sequence[Graded], m: Graded | None = None) -> int:
        shifted = sum(x.degree - 1 for x in xs)
        if self.kind is FamilyKind.ALGEBRA:
            return sum(x.degree for x in xs) - len(xs) + 2
        assert m is not None
        if self.kind is FamilyKind.MODULE:
            return m.degree + shifted + 1
        return m.degree + shifted

    def graded(self, xs: Sequence[Graded], m: Graded | None = None) -> Graded | None:
        value = self(xs, m)
        if value is None:
            return None
        return Graded(value, self.output_degree(xs, m))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.kind.value}, {self.name!r}, arities={self.arities()})"


class Residual:
    """An accumulated signed sum; `None` stands for an empty sum."""

    def __init__(self) -> None:
        self.value: Any = None
        self.terms = 0

    def add(self, value: Any, factor: int | Fraction = 1) -> None:
        if value is None:
            return
        term = value * factor
        self.value = term if self.value is None else self.value + term
        self.terms += 1

    def is_zero(self, chains: Iterable[Any] = ()) -> bool:
        """Exact zero test; chain functionals are tested on `chains`."""
        if self.value is None:
            return True
        if isinstance(self.value, ChainFunctional):
            return all(self.value(c).is_zero() for c in chains)
        return self.value.is_zero()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.value!r}, terms={self.terms})"


def _unshuffles(n: int, include_empty: bool) -> Iterable[tuple[tuple[int, ...], tuple[int, ...]]]:
    for size in range(0 if include_empty else 1, n + 1):
        for chosen in combinations(range(n), size):
            yield chosen, tuple(i for i in range(n) if i not in chosen)


def _unshuffle_sign(xs: Sequence[Graded], first: Sequence[int], second: Sequence[int]) -> int:
    return koszul_sign([*first, *second], [x.degree + 1 for x in xs])


def coderivation_square_residual(q: TaylorFamily, xs: Sequence[Graded]) -> Residual:
    """Arity-n coefficient of `Q o Q` on `xs`."""
    residual = Residual()
    for chosen, rest in _unshuffles(len(xs), include_empty=False):
        inner = q.graded([xs[i] for i in chosen])
        if inner is None:
            continue
        outer = q([inner, *(xs[i] for i in rest)])
        residual.add(outer, _unshuffle_sign(xs, chosen, rest))
    return residual


def module_axiom_residual(
    q: TaylorFamily, qt: TaylorFamily, xs: Sequence[Graded], m: Graded
) -> Residual:
    """Arity-n coefficient of `Q~ o Q~`, with `Q` acting on the algebra inputs."""
    residual = Residual()
    for first, second in _unshuffles(len(xs), include_empty=True):
        inner = qt.graded([xs[i] for i in second], m)
        if inner is None:
            continue
        outer = qt([xs[i] for i in first], inner)
        factor = _unshuffle_sign(xs, first, second) * sign(
            sum(xs[i].degree - 1 for i in first)
        )
        residual.add(outer, factor)
    for chosen, rest in _unshuffles(len(xs), include_empty=False):
        inner = q.graded([xs[i] for i in chosen])
        if inner is None:
            continue
        residual.add(
            qt([inner, *(xs[i] for i in rest)], m), _unshuffle_sign(xs, chosen, rest)
        )
    return residual


def morphism_residual(
    phi: TaylorFamily,
    q: TaylorFamily,
    source: TaylorFamily,
    target: TaylorFamily,
    xs: Sequence[Graded],
    m: Graded,
) -> Residual:
    """Arity-n coefficient of `phi o Q~_source - Q~_target o phi`."""
    residual = Residual()
    for first, second in _unshuffles(len(xs), include_empty=True):
        epsilon = _unshuffle_sign(xs, first, second)
        inner = source.graded([xs[i] for i in second], m)
        if inner is not None:
            residual.add(
                phi([xs[i] for i in first], inner),
                epsilon * sign(sum(xs[i].degree + 1 for i in first)),
            )
        mapped = phi.graded([xs[i] for i in second], m)
        if mapped is not None:
            residual.add(target([xs[i] for i in first], mapped), -epsilon)
    for chosen, rest in _unshuffles(len(xs), include_empty=False):
        inner = q.graded([xs[i] for i in chosen])
        if inner is None:
            continue
        residual.add(
            phi([inner, *(xs[i] for i in rest)], m), _unshuffle_sign(xs, chosen, rest)
        )
    return residual


def symmetry_residual(
    family: TaylorFamily,
    xs: Sequence[Graded],
    permutation: Sequence[int],
    m: Graded | None = None,
) -> Residual:
    """`F(x_perm) - koszul * F(x)`: graded symmetry in the shifted grading."""
    residual = Residual()
    permuted = [xs[i] for i in permutation]
    residual.add(family(permuted, m))
    residual.add(family(xs, m), -koszul_sign(permutation, [x.degree + 1 for x in xs]))
    return residual


def dgla_to_linfty(
    differential: Callable[[Any], Any] | None,
    bracket: Callable[[Any, Any], Any] | None,
    name: str = "",
) -> TaylorFamily:
    """`Q_1 = d`, `Q_2(x1, x2) = -(-1)^|x1| [x1, x2]`."""
    coefficients: dict[int, Evaluator] = {}
    if differential is not None:
        coefficients[1] = lambda xs, m: differential(xs[0].value)
    if bracket is not None:
        coefficients[2] = lambda xs, m: bracket(xs[0].value, xs[1].value) * -sign(
            xs[0].degree
        )
    return TaylorFamily(FamilyKind.ALGEBRA, coefficients, name)


def module_to_linfty(
    delta: Callable[[Any], Any] | None,
    action: Callable[[Any, Any], Any] | None,
    name: str = "",
) -> TaylorFamily:
    """`Q~_0(m) = delta m`, `Q~_1(x; m) = -(-1)^|x| L_x m`."""
    coefficients: dict[int, Evaluator] = {}
    if delta is not None:
        coefficients[0] = lambda xs, m: delta(m.value)
    if action is not None:
        coefficients[1] = lambda xs, m: action(xs[0].value, m.value) * -sign(xs[0].degree)
    return TaylorFamily(FamilyKind.MODULE, coefficients, name)


def adjoint_action_module(q: TaylorFamily) -> TaylorFamily:
    """`Q~_n(x1, .., xn; x) = Q_(n+1)(x1, .., xn, x)`."""
    return TaylorFamily(
        FamilyKind.MODULE,
        {n - 1: (lambda xs, m: q([*xs, m])) for n in q.arities() if n >= 1},
        f"adjoint({q.name})",
    )


def pullback_module(psi: Callable[[Any], Any], qt: TaylorFamily) -> TaylorFamily:
    """Precompose the algebra inputs of `qt` with a strict dgla morphism `psi`."""
    return TaylorFamily(
        FamilyKind.MODULE,
        {
            n: (
                lambda xs, m, n=n: qt.coefficients[n](
                    tuple(Graded(psi(x.value), x.degree) for x in xs), m
                )
            )
            for n in qt.arities()
        },
        f"pullback({qt.name})",
    )


def identity_morphism() -> TaylorFamily:
    return TaylorFamily(FamilyKind.MORPHISM, {0: lambda xs, m: m.value}, "identity")


# Structures on the torus model


def polyvector_dgla(volume: VolumeForm) -> TaylorFamily:
    """`(T[[u]], u div, [,]_S)`."""
    return dgla_to_linfty(
        lambda x: u_divergence(volume, x), schouten, f"polyvectors({volume})"
    )


def cochain_dgla() -> TaylorFamily:
    """`(C(A), b^H, [,]_G)` on multidifferential cochains."""
    return dgla_to_linfty(cochain_differential, gerstenhaber, "cochains")


def forms_module(t: Fraction | int, volume: VolumeForm) -> TaylorFamily:
    """`(Omega[[u]], u d, L^(t))`."""
    return module_to_linfty(
        u_de_rham, lambda x, m: action_Lt(t, x, m, volume), f"forms(t={t})"
    )


def vt_module(t: Fraction | int, volume: VolumeForm) -> TaylorFamily:
    """The dual structure `(VT[[u]], u div, dual L^(t))`."""
    return module_to_linfty(
        dual_differential, lambda x, m: action_Lt_dual(t, x, m, volume), f"vt(t={t})"
    )


def trivial_module(volume: VolumeForm) -> TaylorFamily:
    """`T[[u]]` with its differential and the zero action."""
    return module_to_linfty(lambda x: u_divergence(volume, x), None, "trivial")


def vt_adjoint_action_module(q: TaylorFamily, volume: VolumeForm) -> TaylorFamily:
    """Adjoint action transported to `VT[[u]]` through `gamma -> gamma Omega`."""

    def _wrap(n: int) -> Evaluator:
        def evaluate(xs: tuple[Graded, ...], m: Graded | None) -> Any:
            assert m is not None
            value = q([*xs, Graded(m.value.map(lambda c: c.mv), m.degree)])
            if value is None:
                return None
            return value.map(lambda c: VTop(c, volume))

        return evaluate

    return TaylorFamily(
        FamilyKind.MODULE,
        {n - 1: _wrap(n - 1) for n in q.arities() if n >= 1},
        "vt-adjoint",
    )


def chains_module() -> TaylorFamily:
    """`(C(A)[[u]], b_H + u B)` with the action of cochains on chains."""
    return module_to_linfty(
        negative_cyclic_differential,
        lambda operator, c: c.map(lambda chain: cochain_action(operator, chain)),
        "chains",
    )


def chains_over_polyvectors() -> TaylorFamily:
    """Chains as a module over `T[[u]]`: evaluate at `u = 0`, then act by the HKR cochain.

    A stand-in for the module structure induced by a formality morphism.
    """
    return pullback_module(lambda x: hkr_cochain(x.coefficient(0)), chains_module())


def hkr_morphism() -> TaylorFamily:
    """The HKR map `C(A)[[u]] -> Omega[[u]]` as an arity-zero morphism."""
    return TaylorFamily(
        FamilyKind.MORPHISM, {0: lambda xs, m: m.value.map(hkr_chains)}, "hkr"
    )


def h1_morphism(s: int = H1_SIGN, max_arity: int = 2) -> TaylorFamily:
    """Taylor coefficients of `H^(1)` as a morphism from the `L^(0)` to the `L^(1)` module.

    `phi_n(x; m) = prod_j (-(-1)^|x_j|) n! H1_taylor(n, x, m)`.
    """

    def _coefficient(n: int) -> Evaluator:
        def evaluate(xs: tuple[Graded, ...], m: Graded | None) -> Any:
            assert m is not None
            factor = factorial(n)
            for x in xs:
                factor *= -sign(x.degree)
            return H1_taylor(n, [x.value for x in xs], m.value, s) * factor

        return evaluate

    return TaylorFamily(
        FamilyKind.MORPHISM,
        {n: _coefficient(n) for n in range(max_arity + 1)},
        f"H1(s={s})",
    )


# Adjoints through pairings


@dataclass(frozen=True)
class PairingHandle:
    """A pairing `<hat, plain>` of u-series spaces with a dual pair of window bases.

    `pair` returns the u-series coefficients of the pairing. `basis` spans the plain
    side inside a window, `dual_basis` holds the hat elements with
    `<dual_i, basis_j> = delta_ij`. Both consist of constant u-series.
    """

    pair: Callable[[Any, Any], tuple[Fraction, ...]]
    basis: tuple[Graded, ...]
    dual_basis: tuple[Graded, ...]
    name: str = field(default="")

    def __post_init__(self) -> None:
        if not self.basis or len(self.basis) != len(self.dual_basis):
            raise WindowTooSmall(
                f"Pairing {self.name!r} needs matching non-empty window bases"
            )

    def transposed(self) -> PairingHandle:
        return PairingHandle(
            lambda plain, hat: self.pair(hat, plain),
            self.dual_basis,
            self.basis,
            f"{self.name}^T",
        )

    def expand(self, rows: Sequence[tuple[Fraction, ...] | None], factor: int) -> Any:
        """`sum_k u^k sum_i factor * rows[i][k] * dual_i`."""
        present = [r for r in rows if r is not None]
        length = min((len(r) for r in present), default=1)
        zero = self.dual_basis[0].value.coefficient(0) * 0
        coeffs = []
        for power in range(length):
            total = zero
            for row, dual in zip(rows, self.dual_basis):
                if row is not None and row[power]:
                    total = total + dual.value.coefficient(0) * (row[power] * factor)
            coeffs.append(total)
        return USeries(coeffs)

    def restrict(self, hat: Any) -> Any:
        """The part of `hat` seen by the window: `sum_i <hat, basis_i> dual_i`."""
        return self.expand([self.pair(hat, b.value) for b in self.basis], 1)


def forms_window_pairing(
    volume: VolumeForm, lo: int, hi: int, ucap: int
) -> PairingHandle:
    """`<nu Omega, alpha>` with the monomial forms `t^b dt_J`, `b` in `[lo, hi]^d`.

    The dual of `t^b dt_J` is `(e_J / c) t^(-b-k) d_J Omega` for `Omega = c t^k omega_std`,
    with `e_J = iota_(d_J) dt_J`.
    """
    dim = volume.dim
    basis, dual_basis = [], []
    for rank in range(dim + 1):
        for indices in combinations(range(1, dim + 1), rank):
            epsilon, _ = contract_basis(indices, indices)
            for exponent in product(range(lo, hi + 1), repeat=dim):
                form = DiffForm({indices: LaurentPoly.monomial(exponent)}, dim)
                dual_exponent = [-b - k for b, k in zip(exponent, volume.exponent)]
                dual = VTop(
                    MultiVector(
                        {indices: LaurentPoly.monomial(dual_exponent, epsilon / volume.unit)},
                        dim,
                    ),
                    volume,
                )
                basis.append(Graded(USeries.constant(form, ucap), -rank))
                dual_basis.append(Graded(USeries.constant(dual, ucap), rank - 1))
    LOGGER.debug("Window pairing with %d basis forms on %s", len(basis), volume)
    return PairingHandle(
        pair_vt_form_series, tuple(basis), tuple(dual_basis), f"forms[{lo}..{hi}]"
    )


def pair_chain_functional(hat: Any, c: HochChain) -> Fraction:
    """`<hat, c>` for a functional on chains.

    An element of the extended complex pairs as `int hat(c)`. A chain on the hat side
    holds window coordinates: monomial chains are dual to themselves under
    `<sum f_i c_i, c_j> = f_j`.
    """
    if isinstance(hat, HochChain):
        terms = c.terms
        return sum(
            (coefficient * terms.get(tensor, 0) for tensor, coefficient in hat.items()),
            Fraction(0),
        )
    return integrate(hat.evaluate_chain(c))


def pair_chain_functional_series(hat: USeries[Any], c: USeries[HochChain]) -> tuple[Fraction, ...]:
    """u-bilinear extension of `pair_chain_functional`."""
    ucap = min(hat.ucap, c.ucap)
    return tuple(
        sum(
            (
                pair_chain_functional(hat.coeffs[i], c.coeffs[power - i])
                for i in range(power + 1)
            ),
            Fraction(0),
        )
        for power in range(ucap + 1)
    )


def chains_window_pairing(
    dim: int, lo: int, hi: int, max_length: int, ucap: int
) -> PairingHandle:
    """Functionals against the normalized monomial chains `t^a0 (x) .. (x) t^an`.

    Exponents lie in `[lo, hi]^d`, lengths go up to `max_length`. The dual basis holds
    the same chains read as window coordinates.
    """
    exponents = list(product(range(lo, hi + 1), repeat=dim))
    nonconstant = [exponent for exponent in exponents if any(exponent)]
    basis, dual_basis = [], []
    for length in range(max_length + 1):
        for a0 in exponents:
            for rest in product(nonconstant, repeat=length):
                chain = HochChain({(a0, *rest): 1}, dim)
                basis.append(Graded(USeries.constant(chain, ucap), -length))
                dual_basis.append(Graded(USeries.constant(chain, ucap), length - 1))
    LOGGER.debug("Window pairing with %d basis chains on the %d-torus", len(basis), dim)
    return PairingHandle(
        pair_chain_functional_series,
        tuple(basis),
        tuple(dual_basis),
        f"chains[{lo}..{hi}, n<={max_length}]",
    )


def adjoint_module(qt: TaylorFamily, pairing: PairingHandle) -> TaylorFamily:
    """The dual module on the hat side.

    `<Q~*_n(x; m^), m> = -(-1)^(|m^| (n + 1 + sum |x_j|)) <m^, Q~_n(x; m)>`, solved on
    the window basis of `pairing`.
    """

    def _coefficient(n: int) -> Evaluator:
        def evaluate(xs: tuple[Graded, ...], m_hat: Graded | None) -> Any:
            assert m_hat is not None
            factor = -sign(m_hat.degree * (n + 1 + sum(x.degree for x in xs)))
            rows = []
            for element in pairing.basis:
                value = qt(xs, element)
                rows.append(None if value is None else pairing.pair(m_hat.value, value))
            return pairing.expand(rows, factor)

        return evaluate

    return TaylorFamily(
        FamilyKind.MODULE,
        {n: _coefficient(n) for n in qt.arities()},
        f"adjoint({qt.name})",
    )


def adjoint_morphism(
    phi: TaylorFamily,
    source: PairingHandle,
    target_pair: Callable[[Any, Any], tuple[Fraction, ...]],
) -> TaylorFamily:
    """`<phi*_n(x; n^), m> = (-1)^(|phi*_n(x; n^)| (n + sum |x_j|)) <n^, phi_n(x; m)>`.

    `source` pairs the source of `phi` with its dual, `target_pair` is the pairing on
    the target side.
    """

    def _coefficient(n: int) -> Evaluator:
        def evaluate(xs: tuple[Graded, ...], n_hat: Graded | None) -> Any:
            assert n_hat is not None
            degree = n_hat.degree + sum(x.degree - 1 for x in xs)
            factor = sign(degree * (n + sum(x.degree for x in xs)))
            rows = []
            for element in source.basis:
                value = phi(xs, element)
                rows.append(None if value is None else target_pair(n_hat.value, value))
            return source.expand(rows, factor)

        return evaluate

    return TaylorFamily(
        FamilyKind.MORPHISM,
        {n: _coefficient(n) for n in phi.arities()},
        f"adjoint({phi.name})",
    )


# Reinterpretation of morphisms out of chains


class ChainFunctional:
    """An element of the extended complex seen as a functional on chains.

    It maps a chain (or a u-series of chains) to the u-series of forms
    `iota_(lambda(c)) Omega`. Linear combinations are formed lazily.
    """

    def __init__(self, function: Callable[[HochChain], USeries[DiffForm]]) -> None:
        self._function = function

    def __call__(self, c: HochChain | USeries[HochChain]) -> USeries[DiffForm]:
        if isinstance(c, USeries):
            total = None
            for power, chain in enumerate(c.coeffs):
                term = self._function(chain).times_u(power)
                total = term if total is None else total + term
            assert total is not None
            return total.truncate(min(total.ucap, c.ucap))
        return self._function(c)

    def __add__(self, other: ChainFunctional) -> ChainFunctional:
        return ChainFunctional(lambda c: self(c) + other(c))

    def __mul__(self, factor: int | Fraction) -> ChainFunctional:
        return ChainFunctional(lambda c: self(c) * factor)

    __rmul__ = __mul__

    def __neg__(self) -> ChainFunctional:
        return self * -1

    def __sub__(self, other: ChainFunctional) -> ChainFunctional:
        return self + (-other)

    def map(self, operator: Callable[[USeries[DiffForm]], USeries[DiffForm]]) -> ChainFunctional:
        return ChainFunctional(lambda c: operator(self(c)))


def _homogeneous_chains(c: HochChain) -> list[Graded]:
    """Split a chain by length; `a0 (x) .. (x) an` has degree `-n`."""
    return [Graded(c.homogeneous(n), -n) for n in sorted(c.lengths())]


def reinterpret_psm(v: TaylorFamily, volume: VolumeForm) -> TaylorFamily:
    """Turn a morphism `V` from chains to `T[[u]]` into one from `VT[[u]]` to functionals.

    `V*_m(x1, .., xm; gamma Omega)(c) = iota_(V_(m+1)(x1, .., xm, u gamma; c)) Omega`.
    """

    def _coefficient(m: int) -> Evaluator:
        def evaluate(xs: tuple[Graded, ...], element: Graded | None) -> Any:
            assert element is not None
            gamma = element.value.map(lambda c: c.mv).times_u()
            lifted = Graded(gamma, element.degree + 2)

            def function(c: HochChain) -> USeries[DiffForm]:
                total = None
                for chain in _homogeneous_chains(c):
                    value = v(
                        [*xs, lifted],
                        Graded(USeries.constant(chain.value, gamma.ucap), chain.degree),
                    )
                    if value is None:
                        continue
                    form = value.map(lambda mv: contract_volume(mv, volume))
                    total = form if total is None else total + form
                if total is None:
                    return USeries.constant(DiffForm.zero(volume.dim), gamma.ucap)
                return total

            return ChainFunctional(function)

        return evaluate

    return TaylorFamily(
        FamilyKind.MORPHISM,
        {n - 1: _coefficient(n - 1) for n in v.arities() if n >= 1},
        f"reinterpreted({v.name})",
    )


def reinterpreted_target(chains: TaylorFamily, ucap: int) -> TaylorFamily:
    """The structure `O~` on chain functionals induced by a chains module `P~`.

    `O~_n(x; L)(c) = -(-1)^(|L| (n + 1 + sum |x_j|)) L(P~_n(x; c)) + [n == 0] d L(c)`.
    Chains enter `P~` as constant series up to `ucap`.
    """

    def _coefficient(n: int) -> Evaluator:
        def evaluate(xs: tuple[Graded, ...], element: Graded | None) -> Any:
            assert element is not None
            functional: ChainFunctional = element.value
            factor = -sign(element.degree * (n + 1 + sum(x.degree for x in xs)))

            def function(c: HochChain) -> USeries[DiffForm]:
                total = functional(c) * 0
                for chain in _homogeneous_chains(c):
                    image = chains(
                        xs, Graded(USeries.constant(chain.value, ucap), chain.degree)
                    )
                    if image is not None:
                        total = total + functional(image) * factor
                if n == 0:
                    total = total + functional(c).map(de_rham)
                return total

            return ChainFunctional(function)

        return evaluate

    arities = sorted(set(chains.arities()) | {0})
    return TaylorFamily(FamilyKind.MODULE, {n: _coefficient(n) for n in arities}, "O~")


def toy_hkr_psm() -> TaylorFamily:
    """A one-coefficient stand-in for `V`: `V_1(x; c) = k! (1/u) iota_x hkr(c)`, rank 0 part.

    Not a module morphism. It pins the zeroth reinterpreted coefficient to
    `gamma Omega -> ((a0, .., ak) -> a0 iota_gamma(da1 ^ .. ^ dak) Omega)`.
    """

    def evaluate(xs: tuple[Graded, ...], m: Graded | None) -> Any:
        assert m is not None
        forms = m.value.map(_scaled_hkr)
        return useries_div_u(xs[0].value.bilinear(forms, _contract_function))

    return TaylorFamily(FamilyKind.MORPHISM, {1: evaluate}, "toy-hkr")


def _scaled_hkr(c: HochChain) -> DiffForm:
    result = DiffForm.zero(c.dim)
    for length in sorted(c.lengths()):
        result = result + hkr_chains(c.homogeneous(length)) * factorial(length)
    return result


def _contract_function(gamma: MultiVector, alpha: DiffForm) -> MultiVector:
    return MultiVector.function(contract(gamma, alpha).coefficient(()))
