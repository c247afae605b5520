"""Canonical enumeration of list assignments up to symmetry.

List assignments are enumerated as flat rows of integers.  A row lays out,
vertex by vertex, the sorted color choice of every color group: with group
sizes (k_1 >= k_2 >= ... >= k_t), vertex v occupies positions
v*k .. (v+1)*k - 1 where k = k_1 + ... + k_t, group 1 first.  Group i draws
from its own disjoint color window of size n * k_i, so groups can never
collide and n fresh colors per vertex are always available.

Enumerating every assignment over the windows would be hopeless and mostly
redundant: the properties we care about (does some proper coloring exist)
are invariant under renaming colors within a group, permuting vertices
inside a part of a complete multipartite graph, and swapping whole groups
of equal size.  The stream therefore imposes three canonical constraints:

1. Within each group, colors appear in first-use order.  Scanning vertices
   in index order, when a vertex introduces f colors not seen before in the
   group's window, those colors are exactly the next f unused window
   values.
2. Within each graph part, the combined per-vertex rows are lexicographically
   non-decreasing from one vertex to the next.
3. For adjacent groups of equal size, the vertex-major sequence of
   window-relative choices of the earlier group is lexicographically no
   larger than that of the later group.

Every orbit of assignments under the symmetries above contains a
lexicographically least member, and that member satisfies all three
constraints: violating (1) lets a color transposition produce a smaller
row, violating (2) lets a vertex swap inside a part do the same, and
violating (3) a swap of the two groups.  The stream therefore covers every
orbit at least once.  It may cover an orbit more than once (the constraints
are necessary for minimality, not sufficient), which is harmless for
exhaustive verification and is counted rather than hidden.

Ordinary k-assignments are the single-group case: group_sizes = (k,).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterator, Sequence

from .errors import BoundExceeded

GROUPED_BOUND = 30


def group_offsets(n: int, group_sizes: Sequence[int]) -> tuple[int, ...]:
    """Start of each group's color window for an n-vertex enumeration."""
    offs = []
    base = 0
    for size in group_sizes:
        offs.append(base)
        base += n * size
    return tuple(offs)


def enumerate_grouped(n: int, group_sizes: Sequence[int],
                      parts: Sequence[Sequence[int]] | None = None,
                      bound: int = GROUPED_BOUND,
                      caps: Sequence[int] | None = None
                      ) -> Iterator[tuple[int, ...]]:
    """Yield canonical assignment rows in lexicographic order.

    ``parts`` marks runs of interchangeable vertices (consecutive vertex
    ranges, as produced by complete multipartite construction); constraint 2
    applies inside each part.  Without it every vertex is its own part and
    only constraints 1 and 3 apply.

    ``caps`` filters the stream to rows whose group-i colors stay within
    the first caps[i] values of that group's window.  Assignments hostile
    to coloring reuse few colors, so small caps concentrate them; the
    filtered stream makes no completeness promise of its own and is exempt
    from ``bound``, since the caller is expected to truncate it.
    """
    sizes = tuple(group_sizes)
    if any(not isinstance(s, int) or s < 1 for s in sizes) or not sizes:
        raise ValueError(f"group sizes must be positive integers, got {sizes}")
    if list(sizes) != sorted(sizes, reverse=True):
        raise ValueError(f"group sizes must be non-increasing, got {sizes}")
    if n < 0:
        raise ValueError("vertex count must be >= 0")
    if caps is None:
        total = n * sum(sizes)
        if total > bound:
            raise BoundExceeded(f"assignment enumeration is bounded at "
                                f"{bound} total colors per row, got {total}")
    else:
        caps = tuple(int(c) for c in caps)
        if len(caps) != len(sizes):
            raise ValueError("caps must give one limit per group")
        if any(c < s for c, s in zip(caps, sizes)):
            raise ValueError(f"caps {caps} leave some vertex short of its "
                             f"group size {sizes}")
        caps = tuple(min(c, n * s) for c, s in zip(caps, sizes))
    if n == 0:
        yield ()
        return

    if parts is None:
        samepart = [False] * n
    else:
        flat = [v for part in parts for v in part]
        if flat != list(range(n)):
            raise ValueError("parts must be consecutive ranges covering 0..n-1")
        samepart = [False] * n
        for part in parts:
            for v in list(part)[1:]:
                samepart[v] = True

    t = len(sizes)
    offs = group_offsets(n, sizes)
    eqpair = tuple(g > 0 and sizes[g] == sizes[g - 1] for g in range(t))

    @lru_cache(maxsize=None)
    def options(g: int, seen: int):
        """All canonical choices for one vertex in group g, sorted."""
        size, off = sizes[g], offs[g]
        room = size if caps is None else min(size, caps[g] - seen)
        out = []
        for fresh in range(max(room, -1) + 1):
            for old in combinations(range(seen), size - fresh):
                rel = old + tuple(range(seen, seen + fresh))
                out.append((rel, tuple(c + off for c in rel), seen + fresh))
        out.sort(key=lambda o: o[0])
        return tuple(out)

    def vertex_rows(seen: tuple[int, ...], r3eq: tuple[bool, ...],
                    lower: tuple[tuple[int, ...], ...] | None):
        """All admissible rows for one vertex given the running state."""
        results: list[tuple] = []

        def grec(g, tight, abs_acc, rel_acc, seen_acc, r3_acc):
            if g == t:
                results.append((abs_acc, rel_acc, seen_acc, r3_acc))
                return
            floor_r2 = lower[g] if (lower is not None and tight) else None
            floor_r3 = rel_acc[g - 1] if (eqpair[g] and r3eq[g]) else None
            for rel, abs_, nseen in options(g, seen[g]):
                if floor_r2 is not None and rel < floor_r2:
                    continue
                if floor_r3 is not None and rel < floor_r3:
                    continue
                grec(g + 1,
                     tight and floor_r2 is not None and rel == floor_r2,
                     abs_acc + abs_,
                     rel_acc + (rel,),
                     seen_acc + (nseen,),
                     r3_acc + (r3eq[g] and rel == floor_r3,))

        grec(0, lower is not None, (), (), (), ())
        return results

    def vrec(v: int, seen, r3eq, prev_rel, prefix) -> Iterator[tuple[int, ...]]:
        lower = prev_rel if samepart[v] else None
        if v == n - 1:
            for abs_row, _rels, _nseen, _nr3 in vertex_rows(seen, r3eq, lower):
                yield prefix + abs_row
        else:
            for abs_row, rels, nseen, nr3 in vertex_rows(seen, r3eq, lower):
                yield from vrec(v + 1, nseen, nr3, rels, prefix + abs_row)

    yield from vrec(0, (0,) * t, eqpair, None, ())


def enumerate_k_lists(n: int, k: int,
                      parts: Sequence[Sequence[int]] | None = None,
                      bound: int = GROUPED_BOUND) -> Iterator[tuple[int, ...]]:
    """Canonical k-assignment rows: the single-group stream."""
    return enumerate_grouped(n, (k,), parts=parts, bound=bound)


def row_lists(row: tuple[int, ...], n: int) -> list[tuple[int, ...]]:
    """Split a flat row back into per-vertex sorted color lists."""
    if n == 0:
        return []
    k, rem = divmod(len(row), n)
    if rem:
        raise ValueError(f"row of length {len(row)} does not split into {n} lists")
    return [tuple(sorted(row[v * k:(v + 1) * k])) for v in range(n)]


def _min_renaming(ordered_lists: list[tuple[int, ...]]) -> tuple[int, ...]:
    """Lexicographically least flat row over all injective color renamings.

    Greedy per vertex, branching on the order in which a vertex's fresh
    colors take the next free ids; only branches still achieving the
    minimal prefix survive to the next vertex.
    """
    candidates: list[dict[int, int]] = [{}]
    out: list[int] = []
    for lst in ordered_lists:
        scored = []
        for m in candidates:
            known = sorted(m[c] for c in lst if c in m)
            fresh = len(lst) - len(known)
            base = len(m)
            row = tuple(sorted(known + list(range(base, base + fresh))))
            scored.append((row, m))
        best = min(row for row, _ in scored)
        out.extend(best)
        nxt: list[dict[int, int]] = []
        seen = set()
        for row, m in scored:
            if row != best:
                continue
            fresh_colors = [c for c in lst if c not in m]
            base = len(m)
            for pm in permutations(fresh_colors):
                m2 = dict(m)
                for i, c in enumerate(pm):
                    m2[c] = base + i
                key = tuple(sorted(m2.items()))
                if key not in seen:
                    seen.add(key)
                    nxt.append(m2)
        candidates = nxt
    return tuple(out)


def canonical_class(lists: Sequence[Sequence[int]],
                    parts: Sequence[Sequence[int]] | None = None
                    ) -> tuple[int, ...]:
    """Canonical representative of an assignment's symmetry class.

    Two single-group assignments get the same value exactly when one maps
    to the other by renaming colors, permuting vertices inside a part, and
    swapping whole parts of equal size.  With parts None every vertex is
    fixed and only color renaming is quotiented out.  Exponential in the
    part sizes; meant for deduplicating small witness sets, not streams.
    """
    lists = [tuple(sorted(l)) for l in lists]
    n = len(lists)
    sizes = {len(l) for l in lists}
    if len(sizes) > 1:
        raise ValueError("all lists must have the same length")
    if parts is None:
        return _min_renaming(lists)
    flat = sorted(v for part in parts for v in part)
    if flat != list(range(n)):
        raise ValueError("parts must cover each vertex exactly once")
    blocks = [tuple(p) for p in parts]
    best: tuple[int, ...] | None = None
    # Parts of equal size are interchangeable; order them every possible way.
    for block_order in permutations(range(len(blocks))):
        if [len(blocks[i]) for i in block_order] != [len(b) for b in blocks]:
            continue
        for pieces in _product_perms([blocks[i] for i in block_order]):
            cand = _min_renaming([lists[v] for v in pieces])
            if best is None or cand < best:
                best = cand
    assert best is not None
    return best


def _product_perms(blocks: list[tuple[int, ...]]) -> Iterator[list[int]]:
    """Concatenated vertex orders from all within-block permutations."""
    if not blocks:
        yield []
        return
    for head in permutations(blocks[0]):
        for tail in _product_perms(blocks[1:]):
            yield list(head) + tail
