"""Independent brute-force oracles used by the tests.

These deliberately do not share code with the package: syllogism validity
is checked over bitmask models, existence degree by explicit enumeration
of all chains, and abduction by a naive scan of every (set, property)
pair.  They stay independent of the evaluators they check.
"""

from __future__ import annotations

import itertools

from exigraph.logic3 import FALSE, TRUE, UNKNOWN, Value3, all3

# -- syllogism validity over bitmask models -------------------------------

_FIGURE_TERMS = {
    1: (("M", "P"), ("S", "M")),
    2: (("P", "M"), ("S", "M")),
    3: (("M", "P"), ("M", "S")),
    4: (("P", "M"), ("M", "S")),
}


def _form_holds(form: str, s: int, p: int) -> bool:
    if form == "A":
        return (s & ~p) == 0
    if form == "E":
        return (s & p) == 0
    if form == "I":
        return (s & p) != 0
    return (s & ~p) != 0


def oracle_countermodel(figure: int, forms: tuple[str, str, str],
                        existential_import: bool,
                        max_universe: int = 4):
    """Smallest countermodel (n, s, m, p) as bitmasks, or None if valid."""
    for n in range(max_universe + 1):
        size = 1 << n
        for s in range(size):
            for m in range(size):
                for p in range(size):
                    if existential_import and 0 in (s, m, p):
                        continue
                    terms = {"S": s, "M": m, "P": p}
                    (a1, a2), (b1, b2) = _FIGURE_TERMS[figure]
                    if not _form_holds(forms[0], terms[a1], terms[a2]):
                        continue
                    if not _form_holds(forms[1], terms[b1], terms[b2]):
                        continue
                    if not _form_holds(forms[2], s, p):
                        return (n, s, m, p)
    return None


def oracle_mood_names(existential_import: bool, max_universe: int = 4) -> set[str]:
    out = set()
    for figure in (1, 2, 3, 4):
        for forms in itertools.product("AEIO", repeat=3):
            if oracle_countermodel(figure, forms, existential_import,
                                   max_universe) is None:
                out.add(f"{''.join(forms)}-{figure}")
    return out


# -- existence degree by chain enumeration --------------------------------

def oracle_existence_degree(memberships: dict[tuple[str, str], Value3],
                            start: str, root: str) -> Value3:
    """or3 over every chain start -> ... -> root (and3 of values along it);
    a chain hitting a repeated node contributes its prefix and3 UNKNOWN;
    dead ends contribute nothing."""
    contribs: list[Value3] = []
    if start == root:
        return TRUE
    stack: list[tuple[str, tuple[str, ...], list[Value3]]] = [(start, (start,), [])]
    while stack:
        node, path, values = stack.pop()
        for (elem, set_), value in sorted(memberships.items()):
            if elem != node:
                continue
            chain = values + [value]
            if set_ == root:
                contribs.append(all3(chain))
            elif set_ in path:
                contribs.append(all3(chain + [UNKNOWN]))
            else:
                stack.append((set_, path + (set_,), chain))
    if not contribs:
        return UNKNOWN
    out = contribs[0]
    for v in contribs[1:]:
        if TRUE in (out, v):
            out = TRUE
        elif out is FALSE and v is FALSE:
            out = FALSE
        else:
            out = UNKNOWN
    return out


# -- abduction by naive scan ----------------------------------------------

def oracle_abduce(kb, x) -> list[tuple[str, tuple[int, int]]]:
    """(set label, score) list a naive scan produces for abduce_membership."""
    from exigraph.logic3 import TRUE as T

    def props(ent_id):
        tags = set()
        for e in kb.edges():
            if e.from_ == ent_id and e.value is T:
                tags.add(("rel", e.name, e.to))
        for m in kb.memberships():
            if m.element == ent_id and m.value is T:
                tags.add(("mem", m.set_))
        return tags

    results = []
    for set_ in kb.entities():
        if set_.id == x.id:
            continue
        members = [m.element for m in kb.memberships()
                   if m.set_ == set_.id and m.value is T]
        if not members:
            continue
        if any(m.element == x.id and m.set_ == set_.id and m.value is T
               for m in kb.memberships()):
            continue
        shared = props(x.id)
        for mid in members:
            shared &= props(mid)
        shared.discard(("mem", set_.id))
        if shared:
            results.append((set_.label, (len(shared), len(members))))
    results.sort(key=lambda r: (-r[1][0], -r[1][1], r[0]))
    return results
