"""Independent oracles used by the test suite.

Nothing here shares search code with the package: Bell numbers come from
the triangle recurrence, set partitions from restricted growth strings, and
isomorphism enumeration from raw bijection filtering with local checks.
"""

import itertools


def bell_triangle(n):
    """Bell number via the Bell triangle."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def count_set_partitions(n):
    """Count partitions of an n-set by enumerating restricted growth strings."""
    if n == 0:
        return 1
    count = 0
    stack = [(1, [0])]
    while stack:
        maxv, prefix = stack.pop()
        if len(prefix) == n:
            count += 1
            continue
        for v in range(maxv + 1):
            stack.append((max(maxv, v + 1), prefix + [v]))
    return count


def _is_order_iso(left, right, mapping):
    for x in left.elements:
        for y in left.elements:
            if left.leq(x, y) != right.leq(mapping[x], mapping[y]):
                return False
    return True


def _is_oml_iso(left, right, mapping):
    if not _is_order_iso(left, right, mapping):
        return False
    for x in left.elements:
        if mapping[left.complement(x)] != right.complement(mapping[x]):
            return False
    return mapping[left.bottom] == right.bottom


def brute_oml_isos(left, right):
    """Filter all |L|! bijections; only usable for small lattices."""
    if len(left.elements) != len(right.elements):
        return []
    out = []
    for perm in itertools.permutations(right.elements):
        mapping = dict(zip(left.elements, perm))
        if _is_oml_iso(left, right, mapping):
            out.append(mapping)
    return out


def atom_extension_oml_isos(left, right):
    """All OML isomorphisms of atomistic OMLs, by extending atom bijections.

    Every order-isomorphism of an atomistic lattice is determined by its
    restriction to atoms (images are joins of image atoms), so enumerating
    atom bijections and filtering the extensions is exhaustive.
    """
    latoms = left.atoms()
    ratoms = right.atoms()
    if len(latoms) != len(ratoms) or len(left.elements) != len(right.elements):
        return []
    out = []
    for perm in itertools.permutations(ratoms):
        atom_map = dict(zip(latoms, perm))
        mapping = {}
        ok = True
        for x in left.elements:
            below = [atom_map[a] for a in latoms if left.leq(a, x)]
            img = right.join_of(below)
            if img is None:
                ok = False
                break
            mapping[x] = img
        if not ok or len(set(mapping.values())) != len(mapping):
            continue
        if _is_oml_iso(left, right, mapping):
            out.append(mapping)
    return out


def filter_by_bsub_constraint(left, right, isos, apply_members):
    """Keep the isomorphisms k with k[D] = j(D) for every Boolean subalgebra D,
    where j is given through apply_members (member set -> member set)."""
    from omljordan.oml import boolean_subalgebras, members_of_label

    labels = boolean_subalgebras(left).elements
    kept = []
    for mapping in isos:
        if all(
            frozenset(mapping[x] for x in members_of_label(label))
            == apply_members(members_of_label(label))
            for label in labels
        ):
            kept.append(mapping)
    return kept
