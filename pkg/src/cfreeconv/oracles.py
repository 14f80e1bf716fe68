"""Independent brute-force references for the combinatorial machinery.

Everything here is deliberately written from the raw definitions -- filter
all set partitions on the crossing quadruple, maximize over candidates for
the complement, search block families directly -- so the fast constructions
in :mod:`partitions` and the partition-sum formulas elsewhere have something
honest to be checked against.  Sizes are small; clarity beats speed.
"""
from __future__ import annotations

from itertools import combinations

from .partitions import NCPartition, SetPartition


def catalan_numbers(count):
    """The first ``count`` Catalan numbers C_1..C_count via the convolution recurrence."""
    c = [1]  # C_0
    for n in range(count):
        c.append(sum(c[i] * c[n - i] for i in range(n + 1)))
    return c[1:]


def iter_set_partitions(n):
    """All set partitions of {1..n}, one per restricted-growth assignment."""

    def rec(k, labels, used):
        if k > n:
            blocks = [[] for _ in range(used)]
            for e, lab in enumerate(labels, start=1):
                blocks[lab].append(e)
            yield tuple(tuple(b) for b in blocks)
            return
        for lab in range(used + 1):
            yield from rec(k + 1, labels + [lab], max(used, lab + 1))

    yield from rec(1, [], 0)


def has_crossing_quadruple(blocks):
    """Literal test: some i < j < k < l with i,k in one block and j,l in another."""
    where = {}
    for idx, b in enumerate(blocks):
        for e in b:
            where[e] = idx
    elems = sorted(where)
    for i, j, k, l in combinations(elems, 4):
        if where[i] == where[k] and where[j] == where[l] and where[i] != where[j]:
            return True
    return False


def nc_by_filtering(n):
    """Non-crossing partitions of {1..n} as block tuples, by filtering everything."""
    return [
        tuple(sorted(blocks, key=lambda b: b[0]))
        for blocks in iter_set_partitions(n)
        if not has_crossing_quadruple(blocks)
    ]


def _interleaved_noncrossing(p_blocks, s_blocks, n):
    """Whether p on {1..n} and s on barred copies interleave without crossing.

    Element k sits at position 2k-1, its barred copy at position 2k.
    """
    combined = [tuple(2 * e - 1 for e in b) for b in p_blocks]
    combined += [tuple(2 * e for e in b) for b in s_blocks]
    return not has_crossing_quadruple(combined)


def kreweras_by_maximality(p):
    """The complement by its defining property: the coarsest partner.

    Scans every non-crossing candidate on the barred copies, keeps those
    whose interleaving with ``p`` stays non-crossing, and returns the unique
    one that every other candidate refines.
    """
    n = p.n
    valid = [
        s for s in nc_by_filtering(n) if _interleaved_noncrossing(p.blocks, s, n)
    ]

    def refines(a, b):
        return all(any(set(x) <= set(y) for y in b) for x in a)

    best = [s for s in valid if all(refines(t, s) for t in valid)]
    assert len(best) == 1, "complement is not unique; definition violated"
    return NCPartition(n, best[0])


def join_by_search(p, q):
    """Minimal non-crossing coarsening of both, found by scanning NC(n)."""

    def refines(a, b):
        return all(any(set(x) <= set(y) for y in b.blocks) for x in a.blocks)

    candidates = [
        NCPartition(p.n, blocks)
        for blocks in nc_by_filtering(p.n)
    ]
    uppers = [c for c in candidates if refines(p, c) and refines(q, c)]
    best = min(uppers, key=lambda c: -len(c.blocks))
    assert all(refines(best, c) for c in uppers), "upper bounds have no minimum"
    return best


def ncl_block_families(n):
    """Exhaustive search for linked block families on {1..n}.

    Builds families block by block in increasing order of block minima
    (minima are necessarily distinct), pruning on the defining conditions:
    blocks pairwise share at most one element, a shared element is the
    minimum of exactly one of its two blocks and both must have size two or
    more, no two blocks have a strict crossing quadruple, and every element
    ends up in one or two blocks.
    """
    out = []

    def strict_cross(a, b):
        for first, second in ((a, b), (b, a)):
            for i, p in combinations(first, 2):
                if any(i < k < p for k in second) and any(q > p for q in second):
                    return True
        return False

    def extend(blocks, cover, last_min):
        uncovered = [e for e in range(1, n + 1) if cover[e] == 0]
        if not uncovered:
            out.append(tuple(sorted(blocks, key=lambda b: b[0])))
        limit = uncovered[0] if uncovered else n
        for m in range(last_min + 1, limit + 1):
            if cover[m] == 0:
                hang = False
            elif cover[m] == 1:
                host = next(b for b in blocks if m in b)
                if m == host[0]:
                    continue  # would be the minimum of both sharing blocks
                hang = True
            else:
                continue
            # candidate further members: to the right of m, coverable again
            pool = []
            for e in range(m + 1, n + 1):
                if cover[e] == 0:
                    pool.append(e)
                elif cover[e] == 1:
                    owner = next(b for b in blocks if e in b)
                    if e == owner[0] and len(owner) >= 2:
                        pool.append(e)
            for r in range(0, len(pool) + 1):
                for tail in combinations(pool, r):
                    if hang and not tail:
                        continue  # a linked block needs size >= 2
                    new = (m,) + tail
                    if not _family_ok(new, blocks, strict_cross):
                        continue
                    for e in new:
                        cover[e] += 1
                    extend(blocks + [new], cover, m)
                    for e in new:
                        cover[e] -= 1

    def _family_ok(new, blocks, strict_cross):
        new_set = set(new)
        for b in blocks:
            shared = new_set & set(b)
            if len(shared) > 1:
                return False
            if shared and (len(new) < 2 or len(b) < 2):
                return False
            if strict_cross(new, b):
                return False
        return True

    extend([], {e: 0 for e in range(1, n + 1)}, 0)
    return out
