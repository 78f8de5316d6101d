"""Contact surgery diagrams and their first-homology bookkeeping.

A diagram is a list of components (Thurston-Bennequin invariant, rotation
number, contact surgery coefficient) with a symmetric linking matrix.  The
module converts negative rational coefficients into chains of (-1)-surgeries
on stabilized push-offs, maps decorations to stabilization signs, presents
the first homology of the surgered manifold from the generalized linking
matrix via Smith normal form, and evaluates the meridian formula for the
Poincare dual of the Euler class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction

from .decor import Decoration
from .farey import Slope, cf_expand, neighbor_cw, slope_from_fraction
from .paths import BlockSequence, PathSide, block_sequence


class SurgeryError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Diagram model


@dataclass(frozen=True)
class SurgeryComponent:
    id: str
    tb: int
    rot: int
    contact_coeff: Fraction
    stab_plus: int = 0
    stab_minus: int = 0
    # Pending stabilization slots: the count is fixed by the expansion, the
    # signs are chosen later by a decoration.
    slots: int = 0
    # Chain parent for push-offs; rotation numbers accumulate along chains.
    parent: str | None = None

    @property
    def topological_coeff(self) -> Fraction:
        return self.contact_coeff + self.tb


@dataclass(frozen=True)
class SurgeryDiagram:
    components: tuple[SurgeryComponent, ...]
    linking: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.components)
        if len(self.linking) != n or any(len(row) != n for row in self.linking):
            raise SurgeryError("linking matrix shape does not match components")
        for i in range(n):
            if self.linking[i][i] != 0:
                raise SurgeryError("linking matrix must have zero diagonal")
            for j in range(n):
                if self.linking[i][j] != self.linking[j][i]:
                    raise SurgeryError("linking matrix must be symmetric")
        ids = [c.id for c in self.components]
        if len(set(ids)) != len(ids):
            raise SurgeryError("component ids must be unique")

    def index_of(self, comp_id: str) -> int:
        for i, c in enumerate(self.components):
            if c.id == comp_id:
                return i
        raise SurgeryError(f"no component {comp_id!r}")

    @property
    def has_pending_slots(self) -> bool:
        return any(c.slots for c in self.components)


def stabilize(comp: SurgeryComponent, plus: int, minus: int) -> SurgeryComponent:
    """Apply stabilizations: each drops tb by 1; rot moves by +1 per positive
    stabilization and -1 per negative one."""
    if plus < 0 or minus < 0:
        raise SurgeryError("stabilization counts must be >= 0")
    return replace(
        comp,
        tb=comp.tb - plus - minus,
        rot=comp.rot + plus - minus,
        stab_plus=comp.stab_plus + plus,
        stab_minus=comp.stab_minus + minus,
    )


def linking_matrix(d: SurgeryDiagram) -> list[list[int]]:
    """Generalized linking matrix: Q_ii = p_i, Q_ij = q_j * l_ij.

    Topological coefficients p_i/q_i are the contact coefficient plus tb,
    reduced with q_i >= 1.
    """
    if d.has_pending_slots:
        raise SurgeryError("fill stabilization slots before building the matrix")
    n = len(d.components)
    tops = [c.topological_coeff for c in d.components]
    Q = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                Q[i][j] = tops[i].numerator
            else:
                Q[i][j] = tops[j].denominator * d.linking[i][j]
    return Q


# ---------------------------------------------------------------------------
# Smith normal form over the integers, with unimodular transforms


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(A: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (U, D, V) with U*A*V = D, U and V unimodular.

    D is diagonal with nonnegative entries forming a divisibility chain.
    U and V are built purely from row/column swaps, transvections and
    negations, so they are unimodular by construction.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(row) for row in A]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):  # row_i += c * row_j
        D[i] = [a + c * b for a, b in zip(D[i], D[j])]
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]

    def add_col(i, j, c):  # col_i += c * col_j
        for row in D:
            row[i] += c * row[j]
        for row in V:
            row[i] += c * row[j]

    def negate_row(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]

    for t in range(min(m, n)):
        while True:
            pivot = None
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    a = abs(D[i][j])
                    if a and (best is None or a < best):
                        best, pivot = a, (i, j)
            if pivot is None:
                break
            pi, pj = pivot
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    c = D[i][t] // D[t][t]
                    if c:
                        add_row(i, t, -c)
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j]:
                    c = D[t][j] // D[t][t]
                    if c:
                        add_col(j, t, -c)
                    if D[t][j]:
                        dirty = True
            if dirty:
                continue
            # Pivot divides its row and column; enforce divisibility of the
            # remaining block by folding a bad row into row t.
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % D[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        if t < m and t < n and D[t][t] < 0:
            negate_row(t)
    return U, D, V


def invariant_factors(D: list[list[int]]) -> list[int]:
    k = min(len(D), len(D[0]) if D else 0)
    return [D[i][i] for i in range(k)]


@dataclass(frozen=True)
class HomologyPresentation:
    """Cokernel of the relation rows Q: the group <mu_i | Q mu = 0>.

    invariant_factors lists the Smith diagonal (0 marks a free factor);
    meridian_classes[i] gives the coordinates of mu_i in the diagonalized
    basis, with the k-th coordinate read modulo the k-th factor.
    """

    invariant_factors: tuple[int, ...]
    meridian_classes: tuple[tuple[int, ...], ...]

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d == 0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d not in (0, 1))

    def scalar_classes(self, reference: int = -1) -> list[int]:
        """Express every meridian as an integer multiple of one generator.

        Requires free rank 1.  The generator is fixed by sending the
        reference meridian (by convention the last-listed component, the
        topmost one in the diagram) to +1.
        """
        if self.free_rank != 1:
            raise SurgeryError(f"free rank is {self.free_rank}, not 1")
        k0 = list(self.invariant_factors).index(0)
        coeffs = [cls[k0] for cls in self.meridian_classes]
        ref = coeffs[reference]
        if abs(ref) != 1:
            raise SurgeryError("reference meridian is not a generator")
        return [c * ref for c in coeffs]

    def serialize(self) -> dict:
        return {
            "invariant_factors": list(self.invariant_factors),
            "free_rank": self.free_rank,
            "torsion": list(self.torsion),
            "meridian_classes": [list(c) for c in self.meridian_classes],
        }


def homology(Q: list[list[int]]) -> HomologyPresentation:
    """Present the abelian group generated by meridians subject to Q mu = 0.

    The rows of Q are the relations, so the group is coker(Q^T); the class
    of mu_i is the i-th column of U where U * Q^T * V is the Smith form.
    """
    n = len(Q)
    if any(len(row) != n for row in Q):
        raise SurgeryError("relation matrix must be square")
    A = [[Q[j][i] for j in range(n)] for i in range(n)]  # transpose
    U, D, _V = smith_normal_form(A)
    factors = invariant_factors(D)
    classes = []
    for i in range(n):
        col = [U[k][i] for k in range(n)]
        canon = [c % d if d > 0 else c for c, d in zip(col, factors)]
        classes.append(tuple(canon))
    return HomologyPresentation(tuple(factors), tuple(classes))


# ---------------------------------------------------------------------------
# Ding-Geiges expansion


def _is_reciprocal(c: Fraction) -> bool:
    return abs(c.numerator) == 1


def dg_expand(d: SurgeryDiagram) -> SurgeryDiagram:
    """Convert every negative rational coefficient into a (-1)-surgery chain.

    A coefficient r < -1 expands through [d_1, ..., d_u] (entries <= -2) into
    x_1 = d_1 - 1, x_i = d_i: chain component i is a push-off of component
    i-1 carrying |x_i + 2| stabilization slots and coefficient -1.  Runs of
    slotless push-offs are folded into their predecessor as a single
    (-1/k)-surgery.  A push-off links its parent by tb(parent), taken after
    the parent's stabilizations, and inherits the parent's linking with
    every other component.

    Chains are listed original knot first, push-offs after, so when the
    topmost component of a diagram expands, the new topmost component (and
    reference meridian) is its deepest push-off.  Coefficients +1, +-1/n
    and -1 pass through unchanged.
    """
    new_comps: list[SurgeryComponent] = []
    # per emitted component: (origin index, chain position or None, final tb)
    meta: list[tuple[int, int | None, int]] = []

    for idx, comp in enumerate(d.components):
        c = comp.contact_coeff
        if c > 0 and not _is_reciprocal(c):
            raise SurgeryError(f"unsupported contact coefficient {c} on {comp.id}")
        if _is_reciprocal(c) or c == -1:
            new_comps.append(comp)
            meta.append((idx, None, comp.tb))
            continue
        if c > -1:
            raise SurgeryError(f"unsupported contact coefficient {c} on {comp.id}")
        entries = cf_expand(slope_from_fraction(c))
        xs = [entries[0] - 1] + entries[1:]
        slot_counts = [abs(x + 2) for x in xs]
        assert slot_counts[0] >= 1
        chain: list[SurgeryComponent] = []
        multiplicities: list[int] = []
        tb_cur = comp.tb
        parent_id = None
        for pos, slots in enumerate(slot_counts):
            if pos == 0 or slots > 0:
                cid = f"{comp.id}.{len(chain) + 1}"
                chain.append(
                    SurgeryComponent(
                        id=cid,
                        tb=tb_cur,
                        rot=comp.rot,
                        contact_coeff=Fraction(-1),
                        slots=slots,
                        parent=parent_id,
                    )
                )
                multiplicities.append(1)
                parent_id = cid
                tb_cur -= slots
            else:
                # unstabilized push-off: fold into the previous component
                multiplicities[-1] += 1
        for k, mult in enumerate(multiplicities):
            if mult > 1:
                chain[k] = replace(chain[k], contact_coeff=Fraction(-1, mult))
        for k, link_comp in enumerate(chain):
            new_comps.append(link_comp)
            meta.append((idx, k, link_comp.tb - link_comp.slots))

    n = len(new_comps)
    linking = [[0] * n for _ in range(n)]
    for a in range(n):
        ia, pa, ta = meta[a]
        for b in range(a + 1, n):
            ib, pb, tb_final = meta[b]
            if ia == ib and pa is not None:
                lk = ta if pa < pb else tb_final
            else:
                lk = d.linking[ia][ib]
            linking[a][b] = linking[b][a] = lk
    return SurgeryDiagram(tuple(new_comps), tuple(tuple(row) for row in linking))


def fill_slots(d: SurgeryDiagram, assignments: dict[str, tuple[int, int]]) -> SurgeryDiagram:
    """Apply (plus, minus) stabilizations to every slotted component.

    Chains are resolved root-first so that a push-off starts from the
    accumulated rotation number of its parent.
    """
    by_id = {c.id: c for c in d.components}
    resolved: dict[str, SurgeryComponent] = {}

    def resolve(comp: SurgeryComponent) -> SurgeryComponent:
        if comp.id in resolved:
            return resolved[comp.id]
        rot = comp.rot
        if comp.parent is not None:
            rot = resolve(by_id[comp.parent]).rot
        out = replace(comp, rot=rot)
        if comp.slots:
            if comp.id not in assignments:
                raise SurgeryError(f"no stabilization assignment for {comp.id}")
            plus, minus = assignments[comp.id]
            if plus + minus != comp.slots:
                raise SurgeryError(
                    f"{comp.id}: {plus}+{minus} stabilizations != {comp.slots} slots"
                )
            out = replace(out, slots=0)
            out = stabilize(out, plus, minus)
        elif comp.id in assignments and assignments[comp.id] != (0, 0):
            raise SurgeryError(f"{comp.id} has no slots to fill")
        resolved[comp.id] = out
        return out

    comps = tuple(resolve(c) for c in d.components)
    return SurgeryDiagram(comps, d.linking)


# ---------------------------------------------------------------------------
# The standard diagram for a (p, q)-torus knot divide


def standard_diagram(p: int, q: int) -> SurgeryDiagram:
    """Four-component diagram presenting the contact structures for q/p.

    Two contact (+1)-surgeries on tb = -1 unknots plus two negative rational
    coefficients -q/(q-q') and -q/q'; all pairwise linking numbers are -1.
    The -q/q' component is the topmost one and is listed last so that its
    meridian is the reference generator.
    """
    if p < 1 or math.gcd(p, abs(q)) != 1 or q >= -p:
        raise SurgeryError(f"({p}, {q}) must be coprime with -q > p > 0")
    s = Slope(q, p)
    qc = neighbor_cw(s).num
    comps = (
        SurgeryComponent("U1", -1, 0, Fraction(1)),
        SurgeryComponent("U2", -1, 0, Fraction(1)),
        SurgeryComponent("B", -1, 0, Fraction(-q, q - qc)),
        SurgeryComponent("A", -1, 0, Fraction(-q, qc)),
    )
    linking = tuple(
        tuple(0 if i == j else -1 for j in range(4)) for i in range(4)
    )
    return SurgeryDiagram(comps, linking)


def _chain_in_order(d: SurgeryDiagram, prefix: str) -> list[SurgeryComponent]:
    chain = [c for c in d.components if c.id == prefix or c.id.startswith(prefix + ".")]
    chain.sort(key=lambda c: int(c.id.split(".")[1]) if "." in c.id else 0)
    return chain


def decoration_to_stabilizations(
    seq: BlockSequence, dec: Decoration, expanded: SurgeryDiagram
) -> dict[str, tuple[int, int]]:
    """Map a decoration to per-slot stabilization signs.

    A-chain slot i takes as many positive stabilizations as there are
    positive basic slices in the i-th A-block; B-chain slot j takes as many
    positive stabilizations as there are negative basic slices in the j-th
    B-block.  Slot counts must equal the block lengths.
    """
    a_blocks = seq.side_blocks(PathSide.P1)
    b_blocks = seq.side_blocks(PathSide.P2)
    a_chain = _chain_in_order(expanded, "A")
    b_chain = _chain_in_order(expanded, "B")
    positives = dict(zip([b.index for b in seq.blocks], dec))

    out: dict[str, tuple[int, int]] = {}
    for blocks, chain, is_a in ((a_blocks, a_chain, True), (b_blocks, b_chain, False)):
        if len(blocks) != len(chain):
            raise SurgeryError(
                f"{len(chain)} slotted components for {len(blocks)} blocks"
            )
        for block, comp in zip(blocks, chain):
            if comp.slots != block.length:
                raise SurgeryError(
                    f"{comp.id}: {comp.slots} slots != block length {block.length}"
                )
            pos = positives[block.index]
            plus = pos if is_a else block.length - pos
            out[comp.id] = (plus, block.length - plus)
    return out


def decorated_diagram(p: int, q: int, dec: Decoration, seq: BlockSequence | None = None) -> SurgeryDiagram:
    """Expand the standard diagram for (p, q) and fill in a decoration."""
    if seq is None:
        seq = block_sequence(p, q)
    expanded = dg_expand(standard_diagram(p, q))
    assignments = decoration_to_stabilizations(seq, dec, expanded)
    return fill_slots(expanded, assignments)


# ---------------------------------------------------------------------------
# Euler class from a diagram


def pd_euler(d: SurgeryDiagram) -> int:
    """Coefficient of the Poincare dual of the Euler class on the generator.

    Every component must carry a +-(1/n) contact coefficient; the value is
    sum n_i rot_i [mu_i] expressed in the meridian of the last-listed
    component, which is mapped to +1.
    """
    if d.has_pending_slots:
        raise SurgeryError("fill stabilization slots before computing the Euler class")
    weights = []
    for c in d.components:
        if not _is_reciprocal(c.contact_coeff):
            raise SurgeryError(f"{c.id}: coefficient {c.contact_coeff} is not +-1/n")
        weights.append(c.contact_coeff.denominator)
    pres = homology(linking_matrix(d))
    scalars = pres.scalar_classes(reference=-1)
    return sum(w * c.rot * s for w, c, s in zip(weights, d.components, scalars))


def euler_cross_check(p: int, q: int) -> list[dict]:
    """Compare the path formula against the diagram formula, per decoration.

    Returns one entry per mismatch; agreement for every decoration of the
    p = 1 family is guaranteed, the general case is checked empirically.
    """
    from .decor import enumerate_decorations
    from .euler import euler_class

    seq = block_sequence(p, q)
    expanded = dg_expand(standard_diagram(p, q))
    mismatches = []
    for dec in enumerate_decorations(seq):
        filled = fill_slots(expanded, decoration_to_stabilizations(seq, dec, expanded))
        from_diagram = pd_euler(filled)
        from_paths = euler_class(seq, dec)
        if from_diagram != from_paths:
            mismatches.append(
                {"decoration": list(dec), "path": from_paths, "diagram": from_diagram}
            )
    return mismatches


# ---------------------------------------------------------------------------
# Lutz twists


class LutzKind(Enum):
    HALF_ON_PLUS_SIDE = "half-plus"
    HALF_ON_MINUS_SIDE = "half-minus"
    FULL = "full"


def lutz(e: int, q: int, kind: LutzKind) -> int:
    """Euler class after a Lutz twist along a transverse (p, q)-torus knot.

    A half twist on the minus side adds 2q, on the plus side subtracts 2q; a
    full twist preserves the Euler class.  Each half twist raises the convex
    torsion by 1/2.
    """
    if kind is LutzKind.HALF_ON_MINUS_SIDE:
        return e + 2 * q
    if kind is LutzKind.HALF_ON_PLUS_SIDE:
        return e - 2 * q
    return e


# ---------------------------------------------------------------------------
# JSON (de)serialization of filled diagrams


def serialize_diagram(d: SurgeryDiagram) -> dict:
    if d.has_pending_slots:
        raise SurgeryError("cannot serialize a diagram with pending slots")
    return {
        "components": [
            {
                "id": c.id,
                "tb": c.tb,
                "rot": c.rot,
                "contact_coeff": f"{c.contact_coeff.numerator}/{c.contact_coeff.denominator}",
                "stab_plus": c.stab_plus,
                "stab_minus": c.stab_minus,
            }
            for c in d.components
        ],
        "linking": [list(row) for row in d.linking],
    }


def parse_diagram(data: dict) -> SurgeryDiagram:
    try:
        comps = []
        for entry in data["components"]:
            num, _, den = str(entry["contact_coeff"]).partition("/")
            coeff = Fraction(int(num), int(den) if den else 1)
            comps.append(
                SurgeryComponent(
                    id=str(entry["id"]),
                    tb=int(entry["tb"]),
                    rot=int(entry["rot"]),
                    contact_coeff=coeff,
                    stab_plus=int(entry.get("stab_plus", 0)),
                    stab_minus=int(entry.get("stab_minus", 0)),
                )
            )
        linking = tuple(tuple(int(x) for x in row) for row in data["linking"])
        return SurgeryDiagram(tuple(comps), linking)
    except (KeyError, TypeError, ValueError) as exc:
        raise SurgeryError(f"malformed diagram: {exc}") from exc
