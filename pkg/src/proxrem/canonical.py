"""Isomorphism via permutation-minimal adjacency matrices.

The canonical form of a digraph is the lexicographically smallest row-major
adjacency bit matrix over vertex relabelings, packed into bytes; two
digraphs are isomorphic exactly when their canonical forms agree.  The
search is brute force over permutations (cost n! * n^2 bit tests), which is
why it is capped at a small order; part-respecting variants permute within
given parts only, swapping equal-size parts.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator, Optional, Sequence, Tuple

from .digraph import Digraph

#: Largest order accepted by the all-permutations path.
CANONICAL_CEILING = 10


@dataclass(frozen=True)
class CanonicalForm:
    n: int
    bytes: bytes


def _position_perms(
    n: int, parts: Optional[Sequence[Sequence[int]]]
) -> Iterator[Tuple[int, ...]]:
    if parts is None:
        yield from permutations(range(n))
        return
    if sum(len(p) for p in parts) != n:
        raise ValueError("parts must cover every vertex exactly once")
    if len(parts) != 2:
        raise ValueError("part-respecting canonical form supports two parts")
    a, b = tuple(parts[0]), tuple(parts[1])
    assignments = [(a, b)]
    if len(a) == len(b) and a != b:
        assignments.append((b, a))
    for first, second in assignments:
        for p1 in permutations(first):
            for p2 in permutations(second):
                yield p1 + p2


def canonical_form(
    D: Digraph, parts: Optional[Sequence[Sequence[int]]] = None
) -> CanonicalForm:
    """Minimal adjacency matrix over all (part-respecting) relabelings."""
    n = D.n
    if n > CANONICAL_CEILING:
        raise ValueError(
            f"canonical form is capped at order {CANONICAL_CEILING} "
            f"(all-permutations search); got {n}"
        )
    rows = D.rows
    rng = range(n)
    best: Optional[Tuple[int, ...]] = None
    for p in _position_perms(n, parts):
        r = rows[p[0]]
        r0 = 0
        for j in rng:
            r0 = (r0 << 1) | ((r >> p[j]) & 1)
        if best is not None and r0 > best[0]:
            continue
        key = [r0]
        for i in range(1, n):
            r = rows[p[i]]
            ri = 0
            for j in rng:
                ri = (ri << 1) | ((r >> p[j]) & 1)
            key.append(ri)
        tkey = tuple(key)
        if best is None or tkey < best:
            best = tkey
    assert best is not None
    acc = 0
    for ri in best:
        acc = (acc << n) | ri
    nbits = n * n
    nbytes = (nbits + 7) // 8
    acc <<= nbytes * 8 - nbits
    return CanonicalForm(n=n, bytes=acc.to_bytes(nbytes, "big"))


def are_isomorphic(A: Digraph, B: Digraph) -> bool:
    """Backtracking isomorphism test with degree-class pruning.

    Unlike canonical_form this has no hard order ceiling; the degree-class
    screen keeps the search shallow on the sizes this project handles.
    """
    if A.n != B.n:
        return False
    n = A.n
    inv_a = [(A.rows[v].bit_count(), A.reverse_rows[v].bit_count()) for v in range(n)]
    inv_b = [(B.rows[v].bit_count(), B.reverse_rows[v].bit_count()) for v in range(n)]
    if sorted(inv_a) != sorted(inv_b):
        return False
    class_size = {inv: inv_a.count(inv) for inv in set(inv_a)}
    order = sorted(range(n), key=lambda v: (class_size[inv_a[v]], inv_a[v], v))
    candidates = {v: [w for w in range(n) if inv_b[w] == inv_a[v]] for v in range(n)}
    mapping = [-1] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        av = A.rows[v]
        for w in candidates[v]:
            if used[w]:
                continue
            bw = B.rows[w]
            ok = True
            for j in range(k):
                u = order[j]
                x = mapping[u]
                if ((av >> u) & 1) != ((bw >> x) & 1):
                    ok = False
                    break
                if ((A.rows[u] >> v) & 1) != ((B.rows[x] >> w) & 1):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used[w] = True
                if extend(k + 1):
                    return True
                used[w] = False
        return False

    return extend(0)
