"""Moment/cumulant conversions for one- and two-state laws.

The one-state (psi) cumulants r_1, r_2, ... of a moment sequence m_1, m_2,
... are tied together by the functional identity

    R(z (1 + m(z))) = m(z),

and the two-state (phi-side) cumulants cr_1, cr_2, ... by

    cR(z (1 + m(z))) (1 + M(z)) = M(z) (1 + m(z)),

where m collects the psi-moments and M the phi-moments.  Both identities
are triangular in the unknowns, so each direction is a short recurrence on
truncated series.  The equivalent summation formulas over non-crossing
partitions -- moments as partition-indexed cumulant products, with the
phi-side reading exterior blocks in the phi family and interior blocks in
the psi family -- are kept alongside as oracles; production code uses the
recurrences, the test-suite insists the two routes agree.
"""
from __future__ import annotations

from .errors import ArgumentError, DomainError
from .partitions import enumerate_nc, enumerate_nc_0
from .series import TruncatedSeries, _one, _zero, boxed_convolution_checked


def _moment_series(x):
    if isinstance(x, TruncatedSeries):
        return x
    if isinstance(x, OneStateData):
        return x.moments
    raise ArgumentError("expected a moment series or OneStateData")


def _check_vanishing(s, what):
    if s.coeffs[0]:
        raise ArgumentError(f"{what} must have a vanishing constant term")


def free_cumulants_from_moments(m):
    """Solve R(z(1+m)) = m for the cumulant series R, order by order."""
    _check_vanishing(m, "a moment series")
    n = m.order
    w = TruncatedSeries.identity(n, m.mode) * (
        TruncatedSeries.constant(_one(m.mode), n, m.mode) + m
    )
    r = [_zero(m.mode)] * (n + 1)
    residue = m
    wpow = TruncatedSeries.constant(_one(m.mode), n, m.mode)
    for k in range(1, n + 1):
        wpow = wpow * w
        r[k] = residue.coeffs[k]
        residue = residue - wpow.scale(r[k])
    return TruncatedSeries(r, m.mode)


def moments_from_free_cumulants(r):
    """Invert :func:`free_cumulants_from_moments`: rebuild m_1..m_N from R."""
    _check_vanishing(r, "a cumulant series")
    n = r.order
    m = [_zero(r.mode)] * (n + 1)
    for k in range(1, n + 1):
        partial = TruncatedSeries(m[:k], r.mode, n)
        w = TruncatedSeries.identity(n, r.mode) * (
            TruncatedSeries.constant(_one(r.mode), n, r.mode) + partial
        )
        m[k] = r.compose(w).coeffs[k]
    return TruncatedSeries(m, r.mode)


def cfree_cumulants_from_moments(M, psi):
    """Solve cR(z(1+m))(1+M) = M(1+m) for the phi-side cumulant series."""
    m = _moment_series(psi)
    _check_vanishing(M, "a moment series")
    _check_vanishing(m, "a moment series")
    if M.order != m.order or M.mode != m.mode:
        raise ArgumentError("phi and psi series must share order and mode")
    n = m.order
    one = TruncatedSeries.constant(_one(m.mode), n, m.mode)
    w = TruncatedSeries.identity(n, m.mode) * (one + m)
    target = M * (one + m)
    residue = target
    cr = [_zero(m.mode)] * (n + 1)
    wpow = one
    one_plus_M = one + M
    for k in range(1, n + 1):
        wpow = wpow * w
        cr[k] = residue.coeffs[k]
        residue = residue - (wpow * one_plus_M).scale(cr[k])
    return TruncatedSeries(cr, m.mode)


def phi_moments_from_cfree_cumulants(cr, psi):
    """Invert :func:`cfree_cumulants_from_moments`: rebuild M_1..M_N."""
    m = _moment_series(psi)
    _check_vanishing(cr, "a cumulant series")
    if cr.order != m.order or cr.mode != m.mode:
        raise ArgumentError("cumulant and psi series must share order and mode")
    n = m.order
    one = TruncatedSeries.constant(_one(m.mode), n, m.mode)
    w = TruncatedSeries.identity(n, m.mode) * (one + m)
    crw = cr.compose(w)
    M = [_zero(m.mode)] * (n + 1)
    for k in range(1, n + 1):
        partial = TruncatedSeries(M[:k], m.mode, n)
        val = (crw * (one + partial)).coeffs[k]
        for j in range(1, k):
            val = val - M[j] * m.coeffs[k - j]
        M[k] = val
    return TruncatedSeries(M, m.mode)


# -- partition-sum oracles ---------------------------------------------------

def moments_from_free_cumulants_nc_sum(r):
    """Moment n as the sum over NC(n) of blockwise cumulant products."""
    from .series import cf_weight

    out = [_zero(r.mode)]
    for n in range(1, r.order + 1):
        acc = _zero(r.mode)
        for p in enumerate_nc(n):
            acc = acc + cf_weight(p, r)
        out.append(acc)
    return TruncatedSeries(out, r.mode)


def phi_moments_nc_sum(cr, r):
    """Phi-moment n summed over NC(n): cr on exterior blocks, r on interior."""
    out = [_zero(r.mode)]
    for n in range(1, r.order + 1):
        acc = _zero(r.mode)
        for p in enumerate_nc(n):
            term = _one(r.mode)
            for b in p.exterior_blocks():
                term = term * cr.coefficient(len(b))
            for b in p.interior_blocks():
                term = term * r.coefficient(len(b))
            acc = acc + term
        out.append(acc)
    return TruncatedSeries(out, r.mode)


# -- bundled laws -------------------------------------------------------------

class OneStateData:
    """A single law kept as consistent moment and free-cumulant series."""

    def __init__(self, moments, free_cumulants):
        if moments.order != free_cumulants.order or moments.mode != free_cumulants.mode:
            raise ArgumentError("moments and cumulants must share order and mode")
        self.moments = moments
        self.free_cumulants = free_cumulants

    @classmethod
    def from_moments(cls, m):
        return cls(m, free_cumulants_from_moments(m))

    @classmethod
    def from_cumulants(cls, r):
        return cls(moments_from_free_cumulants(r), r)

    @property
    def order(self):
        return self.moments.order

    @property
    def mode(self):
        return self.moments.mode

    def moment(self, k):
        return self.moments.coefficient(k)

    def cumulant(self, k):
        return self.free_cumulants.coefficient(k)

    def __repr__(self):
        return f"OneStateData(order={self.order}, mode={self.mode!r})"


class TwoStateData:
    """A law under two states: psi data plus phi moments and phi-side cumulants."""

    def __init__(self, psi, phi_moments, cfree_cumulants):
        if (
            phi_moments.order != psi.order
            or cfree_cumulants.order != psi.order
            or phi_moments.mode != psi.mode
            or cfree_cumulants.mode != psi.mode
        ):
            raise ArgumentError("two-state series must share order and mode")
        self.psi = psi
        self.phi_moments = phi_moments
        self.cfree_cumulants = cfree_cumulants

    @classmethod
    def from_moments(cls, M, m):
        psi = OneStateData.from_moments(m)
        return cls(psi, M, cfree_cumulants_from_moments(M, psi))

    @classmethod
    def from_cumulants(cls, cr, r):
        psi = OneStateData.from_cumulants(r)
        return cls(psi, phi_moments_from_cfree_cumulants(cr, psi), cr)

    @property
    def order(self):
        return self.psi.order

    @property
    def mode(self):
        return self.psi.mode

    def phi_moment(self, k):
        return self.phi_moments.coefficient(k)

    def cfree_cumulant(self, k):
        return self.cfree_cumulants.coefficient(k)

    def __repr__(self):
        return f"TwoStateData(order={self.order}, mode={self.mode!r})"


# -- partition-indexed cumulant products --------------------------------------

def kappa(p, letters):
    """Blockwise free-cumulant product; zero unless each block is one letter.

    ``letters`` assigns a OneStateData to each ground-set element; lookup is
    by object identity, so distinct objects are distinct letters even if
    their series coincide.
    """
    if len(letters) != p.n:
        raise ArgumentError("need one letter per element")
    out = None
    for b in p.blocks:
        owner = letters[b[0] - 1]
        if any(letters[e - 1] is not owner for e in b):
            return _zero(owner.mode)
        w = owner.cumulant(len(b))
        out = w if out is None else out * w
    return out


def Kappa(p, letters):
    """Like :func:`kappa` with phi-side cumulants on exterior blocks.

    ``letters`` holds TwoStateData; interior blocks read the psi cumulants.
    """
    if len(letters) != p.n:
        raise ArgumentError("need one letter per element")
    ext = set(p.ext_blocks)
    out = None
    for idx, b in enumerate(p.blocks):
        owner = letters[b[0] - 1]
        if any(letters[e - 1] is not owner for e in b):
            return _zero(owner.mode)
        if idx in ext:
            w = owner.cfree_cumulant(len(b))
        else:
            w = owner.psi.cumulant(len(b))
        out = w if out is None else out * w
    return out


def product_psi_cumulants(r_x, r_y, n):
    """Cumulant n of a product of psi-free factors, via the coupled family.

    Sums blockwise cumulant products over the parity-constant partitions of
    {1..2n} whose even side complements the odd side; odd blocks read
    ``r_x``, even blocks ``r_y``.
    """
    acc = _zero(r_x.mode)
    for sigma in enumerate_nc_0(2 * n):
        term = _one(r_x.mode)
        for b in sigma.blocks:
            fam = r_x if b[0] % 2 == 1 else r_y
            term = term * fam.coefficient(len(b))
        acc = acc + term
    return acc


def product_phi_cumulants(x, y, n):
    """Phi-side cumulant n of the product of two-state laws x and y.

    Same coupled-family sum as :func:`product_psi_cumulants`, with the two
    exterior blocks (containing 1 and 2n) read in the phi families.
    """
    acc = _zero(x.mode)
    for sigma in enumerate_nc_0(2 * n):
        ext = set(sigma.ext_blocks)
        term = _one(x.mode)
        for idx, b in enumerate(sigma.blocks):
            owner = x if b[0] % 2 == 1 else y
            if idx in ext:
                term = term * owner.cfree_cumulant(len(b))
            else:
                term = term * owner.psi.cumulant(len(b))
        acc = acc + term
    return acc


def cfree_product_cumulant_series(x, y, order=None):
    """The shifted phi-cumulant series of a product, in closed form.

    Returns the series whose coefficient at z^{n-1} is the n-th phi-side
    cumulant of the product: writing A for the checked boxed convolution of
    the psi-cumulant series of x against y (scaled by the inverse first
    cumulant of x) and B for the mirror image, the result is

        [(cR_x / z) o A] * [(cR_y / z) o B].

    Needs both first psi-cumulants invertible.
    """
    r_x, r_y = x.psi.free_cumulants, y.psi.free_cumulants
    if not r_x.coeffs[1] or not r_y.coeffs[1]:
        raise DomainError("product formula needs nonzero first psi-cumulants")
    if order is None:
        order = x.order - 1
    if order > x.order - 1:
        raise ArgumentError("order exceeds what the input data determines")
    inner_x = boxed_convolution_checked(r_x, r_y).scale(
        _one(x.mode) / r_x.coeffs[1]
    )
    inner_y = boxed_convolution_checked(r_y, r_x).scale(
        _one(x.mode) / r_y.coeffs[1]
    )
    lhs = x.cfree_cumulants.shift_down().compose(inner_x.truncate(x.order - 1))
    rhs = y.cfree_cumulants.shift_down().compose(inner_y.truncate(y.order - 1))
    return (lhs * rhs).truncate(order)


# -- multi-letter cumulants via the splitting recurrence ----------------------

def word_cumulant(moment_oracle, word, state="psi"):
    """Cumulant of a word of letters, from the defining splitting recurrence.

    ``moment_oracle(word, state)`` must return the moment of a word under
    the named state ("psi" or "phi") with the empty word mapping to 1.  The
    recurrence peels off the subsets of positions containing the first
    letter: the moment of a word is the sum, over position subsets
    1 = i_1 < ... < i_p, of the cumulant of the picked subword times the
    psi-moments of the gaps between picked positions times the moment of
    the tail after i_p under the computing state.  Solving for the full
    subset gives the cumulant.
    """
    if state not in ("psi", "phi"):
        raise ArgumentError("state must be 'psi' or 'phi'")
    word = tuple(word)
    if not word:
        raise ArgumentError("words must be nonempty")
    cache = {}

    def cum(w, st):
        key = (w, st)
        if key not in cache:
            total = moment_oracle(w, st)
            n = len(w)
            for picked in _proper_position_subsets(n):
                sub = tuple(w[i - 1] for i in picked)
                term = cum(sub, st)
                for a, b in zip(picked, picked[1:]):
                    gap = w[a : b - 1]
                    if gap:
                        term = term * moment_oracle(gap, "psi")
                tail = w[picked[-1] :]
                if tail:
                    term = term * moment_oracle(tail, st)
                total = total - term
            cache[key] = total
        return cache[key]

    return cum(word, state)


def _proper_position_subsets(n):
    """Nonempty proper subsets of 1..n containing 1, as ascending tuples."""
    from itertools import combinations

    for r in range(0, n - 1):
        for rest in combinations(range(2, n + 1), r):
            yield (1,) + rest
