"""Laws on the unit circle and their multiplicative convolutions.

A law enters every computation through its moment sequence, so the measure
types are thin: finitely many atoms at rational turns, the uniform law, the
Poisson kernel law with parameter alpha, or a bare stored moment list.
Atoms keep exact rational angles; quarter-turn atoms evaluate in exact
rational arithmetic, everything else in double precision.

Three convolutions act at this level.  The boolean one multiplies b-series,
the free multiplicative one multiplies t-series, and the pair-level one
multiplies t- and ct-series simultaneously.  Their infinitely divisible
laws are parametrized by a unit scalar gamma and a finite positive atomic
measure sigma through exponentials of the circular kernel
(1 + zeta z)/(1 - zeta z); the same generators drive the pair semigroup and
the triangular-array limit experiment.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy

from .errors import ArgumentError, DomainError, UnsupportedDomainError
from .series import ComplexRational, TruncatedSeries, _coerce, _one
from .transforms import (
    TransformBundle,
    b_series,
    eta,
    moments_from_t,
    sigma_series,
    t_transform,
)

_QUARTER = {
    Fraction(0): ComplexRational(1),
    Fraction(1, 4): ComplexRational(0, 1),
    Fraction(1, 2): ComplexRational(-1),
    Fraction(3, 4): ComplexRational(0, -1),
}


def _as_complex(value):
    if isinstance(value, ComplexRational):
        return value.to_complex()
    return complex(value)


def _unit(turn, mode):
    """The point exp(2 pi i turn) in the requested arithmetic."""
    if mode == "exact":
        try:
            return _QUARTER[turn]
        except KeyError:
            raise DomainError(
                f"turn {turn} has no exact rational value; use approx mode"
            ) from None
    return cmath.exp(1j * math.tau * float(turn))


class CircleMeasure:
    """A law on the unit circle, known through its moments."""

    __slots__ = ("kind", "atoms", "alpha", "values")

    def __init__(self, kind, atoms=None, alpha=None, values=None):
        self.kind = kind
        self.atoms = atoms
        self.alpha = alpha
        self.values = values

    # -- constructors -------------------------------------------------------

    @classmethod
    def atomic(cls, atoms, probability=True):
        """Finitely many atoms given as (turns, weight) pairs.

        Angles are stored as exact rational turns reduced mod 1; equal
        angles merge and zero weights drop.  With ``probability`` the
        weights must sum to 1; without it any nonnegative weights are
        allowed (the unnormalized generator measures).
        """
        merged = {}
        for turn, weight in atoms:
            turn = Fraction(turn) % 1
            weight = Fraction(weight)
            if weight < 0:
                raise ArgumentError("atom weights must be nonnegative")
            merged[turn] = merged.get(turn, Fraction(0)) + weight
        cleaned = tuple(sorted((t, w) for t, w in merged.items() if w))
        if probability and sum(w for _, w in cleaned) != 1:
            raise ArgumentError("atom weights of a law must sum to 1")
        return cls("atomic", atoms=cleaned)

    @classmethod
    def point_mass(cls, turns):
        return cls.atomic([(turns, 1)])

    @classmethod
    def haar(cls):
        return cls("haar")

    @classmethod
    def poisson(cls, alpha):
        if abs(_as_complex(alpha)) >= 1:
            raise ArgumentError("the kernel parameter needs |alpha| < 1")
        return cls("poisson", alpha=alpha)

    @classmethod
    def moment_seq(cls, values):
        vals = tuple(values)
        for v in vals:
            if abs(_as_complex(v)) > 1 + 1e-7:
                raise ArgumentError("moments of a law on the circle are bounded by 1")
        return cls("moments", values=vals)

    # -- basics --------------------------------------------------------------

    def supports_exact(self):
        if self.kind == "atomic":
            return all(turn.denominator in (1, 2, 4) for turn, _ in self.atoms)
        if self.kind == "haar":
            return True
        if self.kind == "poisson":
            return isinstance(self.alpha, ComplexRational)
        return all(isinstance(v, ComplexRational) for v in self.values)

    def moment_series(self, order, mode=None):
        """Moments 1..order as a truncated series with vanishing constant."""
        if order < 1:
            raise ArgumentError("at least one moment must be requested")
        if mode is None:
            mode = "exact" if self.supports_exact() else "approx"
        if mode == "exact" and not self.supports_exact():
            raise DomainError("this law's data is not exactly representable")
        if self.kind == "haar":
            return TruncatedSeries.zero(order, mode)
        coeffs = [_coerce(0, mode)]
        if self.kind == "atomic":
            state = [(_coerce(w, mode), _unit(t, mode)) for t, w in self.atoms]
            running = [unit for _, unit in state]
            for _ in range(order):
                total = _coerce(0, mode)
                for (weight, unit), power in zip(state, running):
                    total = total + weight * power
                coeffs.append(total)
                running = [p * unit for (_, unit), p in zip(state, running)]
        elif self.kind == "poisson":
            alpha = _coerce(self.alpha, mode)
            power = _one(mode)
            for _ in range(order):
                power = power * alpha
                coeffs.append(power)
        else:
            if len(self.values) < order:
                raise ArgumentError("the stored moment list is shorter than the order")
            coeffs += [_coerce(v, mode) for v in self.values[:order]]
        return TruncatedSeries(coeffs, mode)

    def __eq__(self, other):
        if not isinstance(other, CircleMeasure):
            return NotImplemented
        return (self.kind, self.atoms, self.alpha, self.values) == (
            other.kind,
            other.atoms,
            other.alpha,
            other.values,
        )

    def __repr__(self):
        payload = {
            "atomic": lambda: f"atoms={list(self.atoms)!r}",
            "haar": lambda: "",
            "poisson": lambda: f"alpha={self.alpha!r}",
            "moments": lambda: f"values={list(self.values)!r}",
        }[self.kind]()
        return f"CircleMeasure({self.kind}{', ' + payload if payload else ''})"

    # -- serialization -------------------------------------------------------

    def to_json(self):
        if self.kind == "atomic":
            return {
                "type": "atomic",
                "atoms": [
                    {"turns": str(t), "weight": str(w)} for t, w in self.atoms
                ],
            }
        if self.kind == "haar":
            return {"type": "haar"}
        if self.kind == "poisson":
            alpha = _as_complex(self.alpha)
            return {"type": "poisson", "alpha": [alpha.real, alpha.imag]}
        values = []
        for v in self.values:
            if isinstance(v, ComplexRational):
                values.append([str(v.re), str(v.im)])
            else:
                values.append([v.real, v.imag])
        return {"type": "moments", "values": values}

    @classmethod
    def from_json(cls, data, probability=True):
        kind = data.get("type")
        if kind == "atomic":
            return cls.atomic(
                [(Fraction(a["turns"]), Fraction(a["weight"])) for a in data["atoms"]],
                probability=probability,
            )
        if kind == "haar":
            return cls.haar()
        if kind == "poisson":
            re, im = data["alpha"]
            return cls.poisson(complex(re, im))
        if kind == "moments":
            values = []
            for re, im in data["values"]:
                if isinstance(re, str) or isinstance(im, str):
                    values.append(ComplexRational(Fraction(re), Fraction(im)))
                else:
                    values.append(complex(re, im))
            return cls.moment_seq(values)
        raise ArgumentError(f"unknown measure type {kind!r}")


class MeasurePair:
    """A pair of laws: mu observed by the phi-state, nu by the psi-state."""

    __slots__ = ("mu", "nu")

    def __init__(self, mu, nu):
        self.mu = mu
        self.nu = nu

    def __repr__(self):
        return f"MeasurePair(mu={self.mu!r}, nu={self.nu!r})"


class IdGenerator:
    """A unit rotation gamma and a finite positive atomic measure sigma.

    Each such pair generates an infinitely divisible law for the boolean and
    for the free multiplicative convolution, and through them the pair-level
    semigroups.
    """

    __slots__ = ("gamma", "sigma")

    def __init__(self, gamma, sigma=None):
        if abs(abs(_as_complex(gamma)) - 1) > 1e-9:
            raise ArgumentError("gamma must sit on the unit circle")
        if sigma is None:
            sigma = CircleMeasure.atomic([], probability=False)
        if sigma.kind != "atomic":
            raise ArgumentError("sigma must be an atomic measure")
        self.gamma = gamma
        self.sigma = sigma

    def scaled(self, factor):
        """Generator of the factor-th convolution power (principal root)."""
        if factor < 0:
            raise ArgumentError("generator scaling needs a nonnegative factor")
        gamma = cmath.exp(factor * cmath.log(_as_complex(self.gamma)))
        atoms = [(t, w * Fraction(factor)) for t, w in self.sigma.atoms]
        return IdGenerator(gamma, CircleMeasure.atomic(atoms, probability=False))

    def __repr__(self):
        return f"IdGenerator(gamma={self.gamma!r}, sigma={self.sigma!r})"


class CenteredArrayRow:
    """Rotation constants, recentered laws, and kernel series for one row."""

    __slots__ = ("b", "centered", "h")

    def __init__(self, b, centered, h):
        self.b = b
        self.centered = centered
        self.h = h


# ---------------------------------------------------------------------------
# Series exponentials (double precision only)
# ---------------------------------------------------------------------------


def series_exp(f):
    """exp of a truncated series, via n e_n = sum k f_k e_{n-k}."""
    if f.mode != "approx":
        raise ArgumentError("series exponentials run in approx mode only")
    out = [cmath.exp(f.coeffs[0])] + [0j] * f.order
    for n in range(1, f.order + 1):
        acc = 0j
        for k in range(1, n + 1):
            acc += k * f.coeffs[k] * out[n - k]
        out[n] = acc / n
    return TruncatedSeries.approx(out)


def series_log(f):
    """Principal log of a truncated series; the constant must avoid (-inf, 0]."""
    if f.mode != "approx":
        raise ArgumentError("series logarithms run in approx mode only")
    c0 = f.coeffs[0]
    if c0.imag == 0 and c0.real <= 0:
        raise DomainError("series log needs a constant term off (-inf, 0]")
    out = [cmath.log(c0)] + [0j] * f.order
    for n in range(1, f.order + 1):
        acc = n * f.coeffs[n]
        for k in range(1, n):
            acc -= k * out[k] * f.coeffs[n - k]
        out[n] = acc / (n * c0)
    return TruncatedSeries.approx(out)


def series_pow(f, exponent):
    """Principal branch f**exponent for a real exponent."""
    return series_exp(series_log(f).scale(exponent))


# ---------------------------------------------------------------------------
# Convolutions
# ---------------------------------------------------------------------------


def _pick_mode(mode, *measures):
    if mode is not None:
        return mode
    if all(m.supports_exact() for m in measures):
        return "exact"
    return "approx"


def _measure_from_eta(e):
    """Law with the given eta-series, through m = eta/(1 - eta)."""
    one = TruncatedSeries.constant(_one(e.mode), e.order, e.mode)
    m = e * (one - e).reciprocal()
    return CircleMeasure.moment_seq(m.coeffs[1:])


def moments_of(m, order):
    """Moments 1..order of a law, exact whenever the data allows it."""
    return list(m.moment_series(order).coeffs[1:])


def boolean_convolve(mu1, mu2, order=8, mode=None):
    """The law whose b-series is the product of the two given b-series."""
    mode = _pick_mode(mode, mu1, mu2)
    b = b_series(mu1.moment_series(order, mode)) * b_series(
        mu2.moment_series(order, mode)
    )
    return _measure_from_eta(b.shift_up())


def free_multiplicative_convolve(nu1, nu2, order=8, mode=None):
    """The law whose t-series is the product of the two given t-series."""
    mode = _pick_mode(mode, nu1, nu2)
    t = t_transform(nu1.moment_series(order, mode)) * t_transform(
        nu2.moment_series(order, mode)
    )
    return CircleMeasure.moment_seq(moments_from_t(t).coeffs[1:])


def cfree_multiplicative_convolve(p1, p2, order=8, mode=None):
    """Pair product: t- and ct-series multiply simultaneously.

    Both psi-laws need an invertible first moment.  The one escape hatch
    is the fully uniform case: when both psi-laws are the uniform law the
    phi-moments collapse to powers of the product of the two first
    phi-moments.  A uniform psi-law meeting a non-uniform one has no
    moment-level product formula and is rejected.
    """
    uniform1 = p1.nu.kind == "haar"
    uniform2 = p2.nu.kind == "haar"
    if uniform1 and uniform2:
        mode = _pick_mode(mode, p1.mu, p2.mu)
        c = (
            p1.mu.moment_series(1, mode).coeffs[1]
            * p2.mu.moment_series(1, mode).coeffs[1]
        )
        power = _one(mode)
        values = []
        for _ in range(order):
            power = power * c
            values.append(power)
        return MeasurePair(CircleMeasure.moment_seq(values), CircleMeasure.haar())
    if uniform1 or uniform2:
        raise UnsupportedDomainError(
            "a uniform psi-law only convolves with another uniform psi-law"
        )
    mode = _pick_mode(mode, p1.mu, p1.nu, p2.mu, p2.nu)
    bundles = []
    for p in (p1, p2):
        m = p.nu.moment_series(order, mode)
        if not m.coeffs[1]:
            raise UnsupportedDomainError(
                "psi-laws need an invertible first moment for the transform route"
            )
        bundles.append(TransformBundle.from_moments(p.mu.moment_series(order, mode), m))
    product = bundles[0].multiply(bundles[1])
    return MeasurePair(
        CircleMeasure.moment_seq(product.M.coeffs[1:]),
        CircleMeasure.moment_seq(product.m.coeffs[1:]),
    )


# ---------------------------------------------------------------------------
# Infinitely divisible laws and semigroups
# ---------------------------------------------------------------------------


def herglotz_exp(g, sign, order=8):
    """gamma times exp(sign * integral of (1 + zeta z)/(1 - zeta z) d sigma).

    The kernel expands as 1 + 2 sum_k zeta^k z^k, so the exponent is read
    off sigma's mass and moments; the result is its series exponential.
    """
    if sign not in (1, -1):
        raise ArgumentError("sign must be +1 or -1")
    mass = float(sum(w for _, w in g.sigma.atoms))
    if order >= 1:
        sig = g.sigma.moment_series(order, "approx")
        exponent = TruncatedSeries.approx([mass] + [2 * c for c in sig.coeffs[1:]])
    else:
        exponent = TruncatedSeries.approx([mass])
    return series_exp(exponent.scale(sign)).scale(_as_complex(g.gamma))


def idiv_boolean_measure(g, order=8):
    """The boolean-convolution infinitely divisible law generated by g."""
    return _measure_from_eta(herglotz_exp(g, -1, order - 1).shift_up())


def idiv_free_measure(g, order=8):
    """The free-convolution infinitely divisible law generated by g.

    The generator exponential here is the compositional inverse of the
    eta-series, so one series reversion recovers the moments.
    """
    inverse = herglotz_exp(g, 1, order - 1).shift_up()
    return _measure_from_eta(inverse.invert_composition())


def semigroup_pair(gen_nu, sigma_target, t, order=8):
    """The time-t member of the pair semigroup driven by two generators.

    The psi-law comes from the t-scaled free generator; the phi-law is
    pinned by raising the target sigma-series, evaluated along the psi-law's
    eta-series, to the t-th principal power.  Time zero is the unit pair of
    point masses at 1.
    """
    if t < 0:
        raise ArgumentError("the semigroup parameter must be nonnegative")
    if t == 0:
        return MeasurePair(CircleMeasure.point_mass(0), CircleMeasure.point_mass(0))
    st = sigma_target.to_approx()
    if abs(st.coeffs[0]) > 1 + 1e-9:
        raise ArgumentError("a sigma-series has its constant term in the closed disk")
    if st.order < order - 1:
        raise ArgumentError("the sigma-series target is too short for the order")
    nu_t = idiv_free_measure(gen_nu.scaled(t), order)
    composed = st.compose(eta(nu_t.moment_series(order, "approx")))
    b = series_pow(composed, t).truncate(order - 1)
    return MeasurePair(_measure_from_eta(b.shift_up()), nu_t)


# ---------------------------------------------------------------------------
# Centering and the limit experiment
# ---------------------------------------------------------------------------

_ARG_WINDOW = 1.0  # radians; atoms with |arg| beyond this stay out of the average


def _signed_turn(turn):
    return turn - 1 if turn > Fraction(1, 2) else turn


def _center_one(measure, order):
    """Rotation (in turns), recentered law, and kernel series of one law.

    The rotation averages the principal argument over atoms within the
    window, so it is an exact rational number of turns; whether an atom
    falls inside the window is decided in floats, which is safe because a
    rational turn never sits exactly on the window edge.
    """
    if measure.kind != "atomic":
        raise ArgumentError("centering is defined for atomic laws")
    rotation = Fraction(0)
    for turn, weight in measure.atoms:
        signed = _signed_turn(turn)
        if abs(float(signed)) * math.tau < _ARG_WINDOW:
            rotation += weight * signed
    centered = CircleMeasure.atomic(
        [(turn - rotation, weight) for turn, weight in measure.atoms]
    )
    h = [0j] * (order + 1)
    imag_part = 0.0
    for turn, weight in centered.atoms:
        zeta = cmath.exp(1j * math.tau * float(turn))
        deficit = float(weight) * (1 - zeta.real)
        imag_part += float(weight) * zeta.imag
        h[0] += deficit
        power = 1 + 0j
        for k in range(1, order + 1):
            power *= zeta
            h[k] += 2 * deficit * power
    h[0] += -1j * imag_part
    return rotation, centered, TruncatedSeries.approx(h)


def center_array(row, order=8):
    """Center each law in a row: rotations b, pulled-back laws, h-series."""
    rotations, centered, kernels = [], [], []
    for measure in row:
        rotation, recentered, h = _center_one(measure, order)
        rotations.append(cmath.exp(1j * math.tau * float(rotation)))
        centered.append(recentered)
        kernels.append(h)
    return CenteredArrayRow(rotations, centered, kernels)


def limit_experiment(s, omega_turns, n_list=(4, 8, 16, 32), order=4):
    """Compare pair products with boolean products along a triangular array.

    Row n carries n identical factors (1 - s/n) delta_1 + (s/n) delta_omega,
    used as both laws of each pair.  For every row the report holds the
    coefficientwise gap between the sigma-series of the n-fold pair product
    and the b-series of the n-fold boolean product, the rotation constant
    gamma_n, the spread moments sigma_n, and a generator fitted from the
    last row's boolean product.
    """
    s = Fraction(s)
    omega_turns = Fraction(omega_turns)
    if not n_list or any(n < 1 for n in n_list):
        raise ArgumentError("row sizes must be positive")
    if not 0 <= s <= min(n_list):
        raise ArgumentError("s must satisfy 0 <= s <= min(n)")
    rows = []
    gamma_n = {}
    sigma_n_moments = {}
    last_boolean = None
    for n in n_list:
        weight = s / Fraction(n)
        factor = CircleMeasure.atomic([(0, 1 - weight), (omega_turns, weight)])
        pair = MeasurePair(factor, factor)
        pair_product = pair
        boolean_product = factor
        for _ in range(n - 1):
            pair_product = cfree_multiplicative_convolve(
                pair_product, pair, order + 1, mode="approx"
            )
            boolean_product = boolean_convolve(
                boolean_product, factor, order + 1, mode="approx"
            )
        pair_sigma = sigma_series(
            pair_product.mu.moment_series(order + 1, "approx"),
            pair_product.nu.moment_series(order + 1, "approx"),
        )
        boolean_b = b_series(boolean_product.moment_series(order + 1, "approx"))
        for j in range(order + 1):
            rows.append(
                {"n": n, "j": j, "gap": abs(pair_sigma.coeffs[j] - boolean_b.coeffs[j])}
            )
        rotation, centered, _ = _center_one(factor, order)
        arg_b = math.tau * float(rotation)
        imag_part = 0.0
        spread = [0j, 0j, 0j]
        for turn, w in centered.atoms:
            zeta = cmath.exp(1j * math.tau * float(turn))
            imag_part += float(w) * zeta.imag
            for j in range(3):
                spread[j] += n * float(w) * (1 - zeta.real) * zeta ** j
        gamma_n[n] = cmath.exp(1j * n * (arg_b + imag_part))
        sigma_n_moments[n] = spread
        last_boolean = boolean_b
    log_b = series_log(last_boolean)
    fit = {
        "gamma": cmath.exp(1j * log_b.coeffs[0].imag),
        "sigma_moments": [-log_b.coeffs[0].real + 0j]
        + [-c / 2 for c in log_b.coeffs[1:3]],
    }
    return {
        "rows": rows,
        "summary": {
            "gamma_n": gamma_n,
            "sigma_n_moments": sigma_n_moments,
            "fit": fit,
        },
    }


# ---------------------------------------------------------------------------
# Sanity gate
# ---------------------------------------------------------------------------


def toeplitz_psd_check(moments, tolerance=1e-9):
    """Positive-semidefiniteness gate on a moment list (m_0 = 1 implied).

    Builds the square Toeplitz matrix [m_{j-k}] of size len(moments)//2 + 1
    with m_{-n} the conjugate of m_n, and reports whether its smallest
    eigenvalue clears -tolerance, together with that eigenvalue.
    """
    values = [1 + 0j] + [_as_complex(v) for v in moments]
    size = len(moments) // 2 + 1
    matrix = numpy.empty((size, size), dtype=complex)
    for j in range(size):
        for k in range(size):
            d = j - k
            matrix[j, k] = values[d] if d >= 0 else values[-d].conjugate()
    smallest = float(numpy.linalg.eigvalsh(matrix)[0])
    return smallest >= -tolerance, smallest
