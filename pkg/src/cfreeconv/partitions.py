"""Set partitions, non-crossing partitions and non-crossing linked partitions.

Ground set is {1, ..., n}.  Partitions are stored canonically: each block is
an ascending tuple and blocks are ordered by their minima.  ``0_n`` denotes
the all-singletons partition, ``1_n`` the one-block partition.

Linked partitions relax disjointness: two blocks may share at most one
element, and a shared element must be the minimum of exactly one of the two
blocks (both of which then have at least two elements).  Ordinary
non-crossing partitions embed as the linked partitions with no shared
elements.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .errors import ArgumentError, ResourceLimitError

# Enumeration guards.  Exhaustive suites are expected to run in seconds at
# sizes well below these; the guards only keep runaway requests bounded.
NC_MAX = 14
NCS_MAX = 14
NC0_MAX = 12
NCL_MAX = 10

_CACHE_MAX = 10  # enumerations up to this ground-set size are memoized


def blocks_cross(a, b):
    """True if two blocks cross: i < k < p < q with i, p in one and k, q in the other.

    The quadruple is strict, so blocks sharing an element (as linked blocks
    may) are compared on their remaining elements as well as the shared one.
    """
    for first, second in ((a, b), (b, a)):
        for i, p in combinations(first, 2):
            if any(i < k < p for k in second) and any(q > p for q in second):
                return True
    return False


class SetPartition:
    """A partition of {1..n} into disjoint nonempty blocks."""

    __slots__ = ("n", "blocks")

    def __init__(self, n, blocks):
        if n < 1:
            raise ArgumentError("ground-set size must be at least 1")
        canon = []
        for b in blocks:
            bb = tuple(sorted(b))
            if not bb or len(set(bb)) != len(bb):
                raise ArgumentError("blocks must be nonempty with distinct elements")
            canon.append(bb)
        canon.sort(key=lambda b: b[0])
        covered = sorted(e for b in canon for e in b)
        if covered != list(range(1, n + 1)):
            raise ArgumentError(f"blocks must partition 1..{n} into disjoint sets")
        self.n = n
        self.blocks = tuple(canon)

    def block_containing(self, e):
        for b in self.blocks:
            if e in b:
                return b
        raise ArgumentError(f"{e} is not in the ground set")

    def __len__(self):
        return len(self.blocks)

    def __eq__(self, other):
        return (
            isinstance(other, SetPartition)
            and self.n == other.n
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.n, self.blocks))

    def __repr__(self):
        body = "".join(repr(list(b)) for b in self.blocks)
        return f"{type(self).__name__}({self.n}, {body})"

    def to_json(self):
        return {"n": self.n, "blocks": [list(b) for b in self.blocks]}


def is_noncrossing(p):
    """Whether a SetPartition (or raw block list) has no crossing pair of blocks."""
    blocks = p.blocks if isinstance(p, SetPartition) else [tuple(sorted(b)) for b in p]
    return not any(
        blocks_cross(a, b) for a, b in combinations(blocks, 2)
    )


class NCPartition(SetPartition):
    """Non-crossing partition, with its exterior/interior block split.

    A block is interior when some other block has elements on both sides of
    it (strictly below its minimum and strictly above its maximum); the rest
    are exterior.
    """

    __slots__ = ("ext_blocks", "int_blocks")

    def __init__(self, n, blocks):
        super().__init__(n, blocks)
        if not is_noncrossing(self):
            raise ArgumentError("blocks cross")
        self._classify()

    @classmethod
    def _from_canonical(cls, n, blocks):
        # Fast path for enumeration output: blocks already canonical and
        # known to be non-crossing.
        self = object.__new__(cls)
        self.n = n
        self.blocks = blocks
        self._classify()
        return self

    def _classify(self):
        ext, intr = [], []
        for idx, b in enumerate(self.blocks):
            lo, hi = b[0], b[-1]
            if any(d[0] < lo and hi < d[-1] for d in self.blocks if d is not b):
                intr.append(idx)
            else:
                ext.append(idx)
        self.ext_blocks = tuple(ext)
        self.int_blocks = tuple(intr)

    def exterior_blocks(self):
        return tuple(self.blocks[i] for i in self.ext_blocks)

    def interior_blocks(self):
        return tuple(self.blocks[i] for i in self.int_blocks)


def has_single_exterior_block(p):
    return len(p.ext_blocks) == 1


def has_two_exterior_blocks(p):
    return len(p.ext_blocks) == 2


def singletons(n):
    """The all-singletons partition 0_n."""
    return NCPartition(n, [(k,) for k in range(1, n + 1)])


def one_block(n):
    """The one-block partition 1_n."""
    return NCPartition(n, [tuple(range(1, n + 1))])


# ---------------------------------------------------------------------------
# Enumeration of NC(n)
# ---------------------------------------------------------------------------

def _shift(blocks, off):
    return tuple(tuple(e + off for e in b) for b in blocks)


@lru_cache(maxsize=None)
def _nc_small(n):
    return tuple(_iter_nc_uncached(n))


def _iter_nc(n):
    if n <= _CACHE_MAX:
        return iter(_nc_small(n))
    return _iter_nc_uncached(n)


def _iter_nc_uncached(n):
    """Yield the blocks of every non-crossing partition of {1..n}.

    Recursive on the block containing 1: once that block is fixed, the runs
    of elements between its consecutive members (and after its maximum) must
    be partitioned independently, each without crossings.
    """
    if n == 0:
        yield ()
        return
    for rest in _subsets(range(2, n + 1)):
        first = (1,) + rest
        segs = []
        prev = None
        for e in first:
            if prev is not None and e - prev > 1:
                segs.append((prev, e - prev - 1))  # (offset, length)
            prev = e
        if first[-1] < n:
            segs.append((first[-1], n - first[-1]))
        for tail_blocks in _segment_product(tuple(segs)):
            yield tuple(sorted((first,) + tail_blocks, key=lambda b: b[0]))


def _subsets(pool):
    pool = tuple(pool)
    for r in range(len(pool) + 1):
        yield from combinations(pool, r)


def _segment_product(segs):
    if not segs:
        yield ()
        return
    (off, size) = segs[0]
    for part in _iter_nc(size):
        shifted = _shift(part, off)
        for rest in _segment_product(segs[1:]):
            yield shifted + rest


def enumerate_nc(n):
    """All non-crossing partitions of {1..n}, in canonical order."""
    if not 1 <= n <= NC_MAX:
        raise ResourceLimitError(f"enumerate_nc supports 1 <= n <= {NC_MAX}")
    out = [NCPartition._from_canonical(n, blocks) for blocks in _iter_nc(n)]
    out.sort(key=lambda p: p.blocks)
    return out


# ---------------------------------------------------------------------------
# Kreweras complement, join, doubling, juxtaposition
# ---------------------------------------------------------------------------

def kreweras(p):
    """Kreweras complement, by the planar-face construction.

    Gap k sits between elements k and k+1 (gap n after n).  Draw each block
    as a comb joining its elements; the combs cut the upper half-plane into
    faces.  Two gaps belong to the same complement block exactly when they
    lie in the same face: same innermost enclosing block and same cell
    between consecutive elements of it, with all gaps outside every comb
    sharing the outer face.  Validated in the tests against the defining
    maximality property.
    """
    n = p.n
    where = {}
    for b in p.blocks:
        for e in b:
            where[e] = b
    stack = []
    face_of = {}
    for k in range(1, n + 1):
        b = where[k]
        if len(b) > 1 and b[0] == k:
            stack.append(b)
        if stack and stack[-1][-1] == k:
            stack.pop()
        if stack:
            top = stack[-1]
            cell = sum(1 for e in top if e <= k)
            face_of[k] = (top, cell)
        else:
            face_of[k] = None
    groups = {}
    for k in range(1, n + 1):
        groups.setdefault(face_of[k], []).append(k)
    blocks = tuple(sorted((tuple(g) for g in groups.values()), key=lambda b: b[0]))
    return NCPartition._from_canonical(n, blocks)


def nc_join(p, q):
    """Smallest non-crossing partition coarser than both arguments.

    The set-partition lattice join is taken first; crossing blocks are then
    merged to closure, which lands on the non-crossing join.
    """
    if p.n != q.n:
        raise ArgumentError("join needs a common ground set")
    n = p.n
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for part in (p, q):
        for b in part.blocks:
            for e in b[1:]:
                union(b[0], e)
    while True:
        groups = {}
        for e in range(1, n + 1):
            groups.setdefault(find(e), []).append(e)
        blocks = sorted((tuple(g) for g in groups.values()), key=lambda b: b[0])
        merged = False
        for a, b in combinations(blocks, 2):
            if blocks_cross(a, b):
                union(a[0], b[0])
                merged = True
                break
        if not merged:
            return NCPartition._from_canonical(n, tuple(blocks))


def double(p):
    """Send each element k to the pair 2k-1, 2k, blockwise."""
    blocks = tuple(
        tuple(sorted(x for e in b for x in (2 * e - 1, 2 * e))) for b in p.blocks
    )
    return NCPartition(2 * p.n, blocks)


def undouble(p):
    """Inverse of :func:`double`; raises if blocks do not pair up 2k-1, 2k."""
    blocks = []
    for b in p.blocks:
        elems = set(b)
        halves = set()
        for e in b:
            k = (e + 1) // 2
            if not {2 * k - 1, 2 * k} <= elems:
                raise ArgumentError("partition is not a doubled partition")
            halves.add(k)
        blocks.append(tuple(sorted(halves)))
    return NCPartition(p.n // 2, tuple(blocks))


def juxtapose(p, q):
    """Place q to the right of p on a ground set of combined size."""
    blocks = p.blocks + _shift(q.blocks, p.n)
    if isinstance(p, NCLinkedPartition) or isinstance(q, NCLinkedPartition):
        return NCLinkedPartition(p.n + q.n, blocks)
    return NCPartition(p.n + q.n, blocks)


# ---------------------------------------------------------------------------
# Parity-constant partitions, and the coupled subfamily
# ---------------------------------------------------------------------------

def _is_parity_constant(blocks):
    return all(len({e % 2 for e in b}) == 1 for b in blocks)


def odd_part(p):
    """Restriction of a parity-constant partition to odd elements, relabeled."""
    blocks = tuple(
        sorted(
            (tuple((e + 1) // 2 for e in b) for b in p.blocks if b[0] % 2 == 1),
            key=lambda b: b[0],
        )
    )
    return NCPartition(p.n // 2, blocks)


def even_part(p):
    """Restriction of a parity-constant partition to even elements, relabeled."""
    blocks = tuple(
        sorted(
            (tuple(e // 2 for e in b) for b in p.blocks if b[0] % 2 == 0),
            key=lambda b: b[0],
        )
    )
    return NCPartition(p.n // 2, blocks)


@lru_cache(maxsize=None)
def _nc_s_cached(two_n):
    return tuple(
        NCPartition._from_canonical(two_n, blocks)
        for blocks in _iter_nc(two_n)
        if _is_parity_constant(blocks)
    )


def enumerate_nc_s(two_n):
    """Non-crossing partitions of {1..2n} whose blocks have constant parity."""
    if two_n % 2 != 0 or not 2 <= two_n <= NCS_MAX:
        raise ResourceLimitError(
            f"enumerate_nc_s needs an even ground set of size <= {NCS_MAX}"
        )
    if two_n <= _CACHE_MAX:
        return list(_nc_s_cached(two_n))
    return [
        NCPartition._from_canonical(two_n, blocks)
        for blocks in _iter_nc(two_n)
        if _is_parity_constant(blocks)
    ]


def pair_singletons_doubled(n):
    """The doubled all-singletons partition (1,2)(3,4)...(2n-1,2n)."""
    return NCPartition(2 * n, [(2 * k - 1, 2 * k) for k in range(1, n + 1)])


@lru_cache(maxsize=None)
def _nc_0_cached(two_n):
    n = two_n // 2
    zero_hat = pair_singletons_doubled(n)
    top = one_block(two_n)
    out = []
    for sigma in enumerate_nc_s(two_n):
        by_complement = even_part(sigma) == kreweras(odd_part(sigma))
        by_join = nc_join(sigma, zero_hat) == top
        if by_complement != by_join:
            raise AssertionError(
                f"complement and join criteria disagree on {sigma!r}; this is a bug"
            )
        if by_complement:
            out.append(sigma)
    return tuple(out)


def enumerate_nc_0(two_n):
    """Parity-constant partitions whose even side complements the odd side.

    These are the parity-constant non-crossing partitions sigma for which the
    even restriction equals the Kreweras complement of the odd restriction.
    Each call cross-checks that criterion against the lattice one -- joining
    sigma with the doubled singletons must give the one-block partition --
    and fails loudly if the two ever disagree.
    """
    if two_n % 2 != 0 or not 2 <= two_n <= NC0_MAX:
        raise ResourceLimitError(
            f"enumerate_nc_0 needs an even ground set of size <= {NC0_MAX}"
        )
    return list(_nc_0_cached(two_n))


def group_nc_s_by_join(two_n):
    """Fiber the parity-constant partitions over their join with the doubled singletons.

    Returns a dict keyed by partitions p of {1..n}: the fiber of p holds the
    sigma whose join with (1,2)(3,4)... equals the doubling of p.
    """
    if two_n % 2 != 0 or not 2 <= two_n <= NC0_MAX:
        raise ResourceLimitError(
            f"group_nc_s_by_join needs an even ground set of size <= {NC0_MAX}"
        )
    n = two_n // 2
    zero_hat = pair_singletons_doubled(n)
    fibers = {}
    for sigma in enumerate_nc_s(two_n):
        joined = nc_join(sigma, zero_hat)
        fibers.setdefault(undouble(joined), []).append(sigma)
    return fibers


# ---------------------------------------------------------------------------
# Non-crossing linked partitions
# ---------------------------------------------------------------------------

class NCLinkedPartition:
    """Blocks covering {1..n}, non-crossing, pairwise sharing at most one element.

    A shared element must be the minimum of exactly one of the two blocks
    sharing it, and both of those blocks must have at least two elements.
    Every element is therefore covered once or twice, and block minima are
    pairwise distinct.
    """

    __slots__ = ("n", "blocks", "cover_count")

    def __init__(self, n, blocks):
        if n < 1:
            raise ArgumentError("ground-set size must be at least 1")
        canon = []
        for b in blocks:
            bb = tuple(sorted(b))
            if not bb or len(set(bb)) != len(bb):
                raise ArgumentError("blocks must be nonempty with distinct elements")
            canon.append(bb)
        canon.sort(key=lambda b: (b[0], b))
        count = {}
        for b in canon:
            for e in b:
                count[e] = count.get(e, 0) + 1
        if sorted(count) != list(range(1, n + 1)):
            raise ArgumentError(f"blocks must cover 1..{n}")
        for a, b in combinations(canon, 2):
            shared = set(a) & set(b)
            if len(shared) > 1:
                raise ArgumentError("two blocks share more than one element")
            if len(shared) == 1:
                (j,) = shared
                if len(a) < 2 or len(b) < 2:
                    raise ArgumentError("blocks sharing an element must have size >= 2")
                if (j == a[0]) == (j == b[0]):
                    raise ArgumentError(
                        "a shared element must be the minimum of exactly one block"
                    )
            if blocks_cross(a, b):
                raise ArgumentError("blocks cross")
        if any(c > 2 for c in count.values()):
            raise ArgumentError("an element may lie in at most two blocks")
        self.n = n
        self.blocks = tuple(canon)
        self.cover_count = count

    @classmethod
    def _from_canonical(cls, n, blocks):
        self = object.__new__(cls)
        self.n = n
        self.blocks = blocks
        count = {}
        for b in blocks:
            for e in b:
                count[e] = count.get(e, 0) + 1
        self.cover_count = count
        return self

    def __len__(self):
        return len(self.blocks)

    def __eq__(self, other):
        return (
            isinstance(other, NCLinkedPartition)
            and self.n == other.n
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash(("ncl", self.n, self.blocks))

    def __repr__(self):
        body = "".join(repr(list(b)) for b in self.blocks)
        return f"NCLinkedPartition({self.n}, {body})"

    def to_json(self):
        return {"n": self.n, "blocks": [list(b) for b in self.blocks]}


def _iter_ncl(n):
    """Generate linked partitions by a left-to-right stack walk.

    Open blocks are nested, innermost on top.  Element j either opens a
    fresh block, or joins an open block B -- closing every block nested
    inside B -- and may at that moment also open a linked block with
    minimum j on top of B.  A linked block must reach size two before it
    closes.
    """

    def ok_to_close(entry):
        elems, linked = entry
        return not linked or len(elems) >= 2

    def rec(j, stack, closed):
        if j > n:
            if all(ok_to_close(entry) for entry in stack):
                yield closed + tuple(elems for elems, _ in stack)
            return
        yield from rec(j + 1, stack + (((j,), False),), closed)
        for d in range(len(stack)):
            above = stack[d + 1:]
            if not all(ok_to_close(entry) for entry in above):
                continue
            elems, linked = stack[d]
            base = stack[:d] + ((elems + (j,), linked),)
            newly_closed = closed + tuple(e for e, _ in above)
            yield from rec(j + 1, base, newly_closed)
            yield from rec(j + 1, base + (((j,), True),), newly_closed)

    for blocks in rec(1, (), ()):
        yield tuple(sorted(blocks, key=lambda b: (b[0], b)))


@lru_cache(maxsize=None)
def _ncl_cached(n):
    out = [
        NCLinkedPartition._from_canonical(n, blocks) for blocks in _iter_ncl(n)
    ]
    out.sort(key=lambda g: g.blocks)
    return tuple(out)


def enumerate_ncl(n):
    """All non-crossing linked partitions of {1..n}, in canonical order."""
    if not 1 <= n <= NCL_MAX:
        raise ResourceLimitError(f"enumerate_ncl supports 1 <= n <= {NCL_MAX}")
    return list(_ncl_cached(n))


def ncl_classify(g):
    """Split a linked partition into exterior/interior blocks and cover classes.

    Returns ``(exterior, interior, singly, doubly)``.  A block is interior
    when its minimum is doubly covered (it hangs off a host block) or when
    some other block has elements weakly left of its minimum and strictly
    right of its maximum; exterior blocks are the rest.  ``singly`` and
    ``doubly`` are the sets of elements covered once resp. twice.
    """
    ext, intr = [], []
    for b in g.blocks:
        lo, hi = b[0], b[-1]
        # b hangs off a host when its minimum is shared; the host covers the
        # minimum as a non-minimal element, so b sits inside the host's arc.
        hangs = g.cover_count[lo] == 2
        spanned = any(d is not b and d[0] < lo and hi < d[-1] for d in g.blocks)
        if hangs or spanned:
            intr.append(b)
        else:
            ext.append(b)
    singly = frozenset(e for e, c in g.cover_count.items() if c == 1)
    doubly = frozenset(e for e, c in g.cover_count.items() if c == 2)
    return tuple(ext), tuple(intr), singly, doubly


def restrict(g, members):
    """Restrict a linked partition to a subset and relabel order-preservingly.

    Blocks are intersected with ``members``; empty intersections and blocks
    swallowed by a larger surviving block are dropped.  Raises if the result
    is not a valid linked partition of the relabeled ground set.
    """
    members = sorted(set(members))
    if not members or members[0] < 1 or members[-1] > g.n:
        raise ArgumentError("members must be a nonempty subset of the ground set")
    pos = {e: i + 1 for i, e in enumerate(members)}
    cut = []
    for b in g.blocks:
        bb = tuple(pos[e] for e in b if e in pos)
        if bb:
            cut.append(bb)
    unique = list(dict.fromkeys(cut))
    blocks = [
        b for b in unique if not any(d != b and set(b) <= set(d) for d in unique)
    ]
    return NCLinkedPartition(len(members), blocks)


def partition_from_json(data, kind="nc"):
    """Rebuild a partition from its JSON form; ``kind`` is nc|ncl|set."""
    n, blocks = data["n"], data["blocks"]
    if kind == "ncl":
        return NCLinkedPartition(n, blocks)
    if kind == "nc":
        return NCPartition(n, blocks)
    if kind == "set":
        return SetPartition(n, blocks)
    raise ArgumentError(f"unknown partition kind {kind!r}")
