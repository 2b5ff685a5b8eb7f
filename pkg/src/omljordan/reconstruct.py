"""Recover OML isomorphisms from Boolean-subalgebra-poset isomorphisms.

Given an order-isomorphism j between BSub(L) and BSub(M) (with labels
resolving to member sets), every element x of L sits in the 4-element
subalgebra {0, x, x', 1}, so j determines where each complementary pair
{x, x'} must land as a pair; what remains open is one orientation bit per
pair.  Reconstruction is therefore a finite constraint search over those
bits: an assignment is consistent iff the induced bijection preserves
order.  The uniqueness guarantee (no 4-element blocks implies a unique
solution) is treated as a testable property, not as an algorithm.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from .oml import (
    Oml,
    blocks,
    boolean_subalgebras,
    members_of_label,
    subalgebra_label,
)
from .poset import NotOrderIso, OrderIso, ParseError, order_iso


class InconsistentLevels(Exception):
    """j does not respect the structure of the subalgebra posets."""


class NoSolution(Exception):
    """No OML isomorphism induces the given subalgebra-poset isomorphism."""


class HypothesisViolated(Exception):
    """A 4-element block is present, so uniqueness is not guaranteed."""


class UniquenessFailed(Exception):
    """Multiple solutions where the no-4-element-block guarantee promises one."""


@dataclass(frozen=True, eq=False)
class BsubIso:
    """An order-isomorphism between the Boolean-subalgebra posets of two OMLs."""

    left: Oml
    right: Oml
    j: OrderIso

    def apply_members(self, members: frozenset[str]) -> frozenset[str]:
        return members_of_label(self.j.apply(subalgebra_label(members)))


def bsub_iso(left: Oml, right: Oml, mapping: Mapping[str, str]) -> BsubIso:
    """Validate a label-level mapping as a BsubIso.

    Checks: the mapping is an order-isomorphism of the two BSub posets, the
    trivial subalgebra maps to the trivial subalgebra, and the 4-element
    level is preserved setwise.
    """
    bsub_l = boolean_subalgebras(left)
    bsub_r = boolean_subalgebras(right)
    try:
        j = order_iso(bsub_l, bsub_r, mapping)
    except NotOrderIso as exc:
        raise InconsistentLevels(f"not an order-isomorphism of BSub posets: {exc}")
    trivial_l = subalgebra_label({left.bottom, left.top})
    trivial_r = subalgebra_label({right.bottom, right.top})
    if j.apply(trivial_l) != trivial_r:
        raise InconsistentLevels("trivial subalgebra does not map to trivial")
    for label in bsub_l.elements:
        size = len(members_of_label(label))
        target_size = len(members_of_label(j.apply(label)))
        if (size == 4) != (target_size == 4):
            raise InconsistentLevels(
                f"4-element level not preserved at {label}"
            )
    return BsubIso(left, right, j)


def identity_bsub_iso(lattice: Oml) -> BsubIso:
    bsub = boolean_subalgebras(lattice)
    return bsub_iso(lattice, lattice, {x: x for x in bsub.elements})


@dataclass(frozen=True, eq=False)
class OmlIso:
    """A bijection between OMLs preserving order (both ways) and ortho."""

    source: Oml
    target: Oml
    mapping: Mapping[str, str]

    def apply(self, x: str) -> str:
        return self.mapping[x]

    def mapping_items(self) -> tuple[tuple[str, str], ...]:
        return tuple(sorted(self.mapping.items()))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OmlIso)
            and self.source.elements == other.source.elements
            and self.target.elements == other.target.elements
            and dict(self.mapping) == dict(other.mapping)
        )


def verify_oml_iso(source: Oml, target: Oml, mapping: Mapping[str, str]) -> OmlIso:
    order_iso(source.order, target.order, mapping)
    for x in source.elements:
        if mapping[source.complement(x)] != target.complement(mapping[x]):
            raise NotOrderIso(f"ortho not preserved at {x}")
    if mapping[source.bottom] != target.bottom:
        raise NotOrderIso("bottom not preserved")
    return OmlIso(source, target, dict(mapping))


def induced_bsub_iso(k: OmlIso) -> BsubIso:
    """The BSub-poset isomorphism D -> k[D] induced by an OML isomorphism."""
    bsub_l = boolean_subalgebras(k.source)
    mapping = {}
    for label in bsub_l.elements:
        image = frozenset(k.apply(x) for x in members_of_label(label))
        mapping[label] = subalgebra_label(image)
    return bsub_iso(k.source, k.target, mapping)


def has_4element_block(lattice: Oml) -> bool:
    return any(len(b.members) == 4 for b in blocks(lattice))


def _complementary_pairs(lattice: Oml) -> list[tuple[str, str]]:
    """Pairs {x, x'} over the non-bound elements, canonical member first."""
    done = set()
    pairs = []
    for x in sorted(lattice.elements):
        if x in (lattice.bottom, lattice.top) or x in done:
            continue
        y = lattice.complement(x)
        pairs.append((min(x, y), max(x, y)))
        done.update((x, y))
    return pairs


def reconstruct_oml_isos(iso: BsubIso) -> list[OmlIso]:
    """All OML isomorphisms k with k[D] = j(D) for every Boolean subalgebra D.

    Search: one orientation variable per complementary pair, pairs most
    shared between blocks first, with partial order-consistency pruning;
    every complete assignment is verified exhaustively (full OmlIso axioms
    plus k[D] = j(D) for all D) before being emitted.  Raises NoSolution
    when nothing survives.
    """
    left, right = iso.left, iso.right
    pairs = _complementary_pairs(left)
    targets: list[tuple[str, str]] = []
    for x, xc in pairs:
        image = iso.apply_members(frozenset({left.bottom, x, xc, left.top}))
        rest = sorted(image - {right.bottom, right.top})
        if len(rest) != 2 or right.complement(rest[0]) != rest[1]:
            raise InconsistentLevels(
                f"image of pair subalgebra {{{x},{xc}}} is not a pair subalgebra"
            )
        targets.append((rest[0], rest[1]))
    # Defensive pair-level check on every subalgebra image.
    bsub_l = boolean_subalgebras(left)
    pair_target = {p: t for p, t in zip(pairs, targets)}
    pair_of = {}
    for x, xc in pairs:
        pair_of[x] = (x, xc)
        pair_of[xc] = (x, xc)
    for label in bsub_l.elements:
        members = members_of_label(label)
        expected = {right.bottom, right.top}
        for m in members:
            if m in pair_of:
                expected.update(pair_target[pair_of[m]])
        if frozenset(expected) != iso.apply_members(members):
            raise InconsistentLevels(
                f"subalgebra image of {label} is not the union of pair images"
            )

    block_count = {p: 0 for p in pairs}
    for blk in blocks(left):
        for p in pairs:
            if p[0] in blk.members:
                block_count[p] += 1
    search_order = sorted(pairs, key=lambda p: (-block_count[p], p))

    solutions: list[dict[str, str]] = []
    assignment: dict[str, str] = {
        left.bottom: right.bottom,
        left.top: right.top,
    }

    def consistent(x: str, y: str) -> bool:
        return all(
            left.leq(a, x) == right.leq(b, y) and left.leq(x, a) == right.leq(y, b)
            for a, b in assignment.items()
        )

    def assign(i: int) -> None:
        if i == len(search_order):
            solutions.append(dict(assignment))
            return
        x, xc = search_order[i]
        c, cc = pair_target[(x, xc)]
        for img, img_c in ((c, cc), (cc, c)):
            if consistent(x, img) and consistent(xc, img_c):
                assignment[x] = img
                assignment[xc] = img_c
                assign(i + 1)
                del assignment[x]
                del assignment[xc]

    assign(0)

    result = []
    for mapping in solutions:
        try:
            k = verify_oml_iso(left, right, mapping)
        except NotOrderIso:
            continue
        if all(
            iso.apply_members(members_of_label(label))
            == frozenset(k.apply(x) for x in members_of_label(label))
            for label in bsub_l.elements
        ):
            result.append(k)
    if not result:
        raise NoSolution("no OML isomorphism induces this BSub isomorphism")
    result.sort(key=lambda k: k.mapping_items())
    return result


def certify_unique(iso: BsubIso) -> OmlIso:
    """Reconstruct and certify the unique solution.

    Requires that neither OML has a 4-element block; under that hypothesis
    reconstruction is guaranteed to have exactly one solution, so
    more than one is reported as an internal-consistency failure with full
    witnesses.
    """
    if has_4element_block(iso.left) or has_4element_block(iso.right):
        raise HypothesisViolated(
            "a 4-element block is present; uniqueness requires OMLs "
            "without any 4-element blocks"
        )
    sols = reconstruct_oml_isos(iso)
    if len(sols) != 1:
        witness = "; ".join(str(dict(s.mapping)) for s in sols)
        raise UniquenessFailed(
            f"{len(sols)} solutions where the uniqueness guarantee "
            f"promises one: {witness}"
        )
    return sols[0]


# ---------------------------------------------------------------------------
# Exchange format: `sub <id> = {x,y,...}` lines plus `map <idL> <idR>` lines.
# ---------------------------------------------------------------------------


def parse_bsub_iso_text(left: Oml, right: Oml, text: str) -> BsubIso:
    subs: dict[str, frozenset[str]] = {}
    map_pairs: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split(None, 1)
        if tokens[0] == "sub":
            try:
                head, body = tokens[1].split("=", 1)
            except ValueError:
                raise ParseError(f"line {lineno}: 'sub' needs '<id> = {{...}}'")
            name = head.strip()
            if name in subs:
                raise ParseError(f"line {lineno}: duplicate sub id {name!r}")
            body = body.strip()
            if not (body.startswith("{") and body.endswith("}")):
                raise ParseError(f"line {lineno}: member set must be braced")
            subs[name] = frozenset(
                x.strip() for x in body[1:-1].split(",") if x.strip()
            )
        elif tokens[0] == "map":
            parts = tokens[1].split()
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: 'map' needs two sub ids")
            map_pairs.append((parts[0], parts[1]))
        else:
            raise ParseError(f"line {lineno}: unknown directive {tokens[0]!r}")
    mapping = {}
    for src, dst in map_pairs:
        if src not in subs or dst not in subs:
            raise ParseError(f"map uses undeclared sub id ({src}, {dst})")
        mapping[subalgebra_label(subs[src])] = subalgebra_label(subs[dst])
    return bsub_iso(left, right, mapping)


def serialize_bsub_iso(iso: BsubIso) -> str:
    lines = []
    left_labels = list(iso.j.source.elements)
    right_labels = list(iso.j.target.elements)
    left_ids = {label: f"L{i}" for i, label in enumerate(left_labels)}
    right_ids = {label: f"R{i}" for i, label in enumerate(right_labels)}
    for label, short in left_ids.items():
        lines.append(f"sub {short} = {label}")
    for label, short in right_ids.items():
        lines.append(f"sub {short} = {label}")
    for label in left_labels:
        lines.append(f"map {left_ids[label]} {right_ids[iso.j.apply(label)]}")
    return "\n".join(lines) + "\n"


def brute_force_isos_small(left: Oml, right: Oml) -> list[OmlIso]:
    """Literal brute force: filter all |L|! bijections.  Only for tiny OMLs."""
    if len(left) > 10:
        raise ValueError("literal bijection filtering is capped at 10 elements")
    if len(left) != len(right):
        return []
    out = []
    for perm in itertools.permutations(right.elements):
        mapping = dict(zip(left.elements, perm))
        try:
            out.append(verify_oml_iso(left, right, mapping))
        except NotOrderIso:
            continue
    return out
