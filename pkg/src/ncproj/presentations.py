"""Graded algebra presentations, twists, and the dimension-3 regularity shapes.

A presentation is generators-with-weights plus homogeneous relations.  The
twist of a presentation by a graded automorphism is recovered by exact
kernel computation against the twisted product, degree by degree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import linalg
from .rewriting import complete_truncated_over, normal_form, normal_words
from .words import Alphabet, GradedEndomorphism, MonomialOrder, NcPoly

NOT_APPLICABLE = "NOT_APPLICABLE"
AMBIGUOUS = "AMBIGUOUS"
ABSENT = "ABSENT"


@dataclass
class AlgebraPresentation:
    name: str
    field: object
    alphabet: Alphabet
    relations: list
    order: MonomialOrder = None

    def __post_init__(self):
        if self.order is None:
            self.order = MonomialOrder(self.alphabet)
        for rel in self.relations:
            if rel.is_zero():
                raise ValueError("zero relation in presentation")
            if not rel.is_homogeneous():
                raise ValueError("relations must be homogeneous")

    def generators(self):
        return list(zip(self.alphabet.symbols, self.alphabet.weights))

    def gen_poly(self, i):
        return NcPoly.gen(self.alphabet, self.field, i)

    def max_relation_degree(self):
        return max((r.degree() for r in self.relations), default=0)

    def render(self):
        gens = ", ".join(f"{s}:{w}" for s, w in self.generators())
        rels = " ".join(f"{r.render(self.order)};" for r in self.relations)
        body = f"gens: {gens}; rels: {rels}".rstrip()
        return f"algebra {self.name} over {self.field.name} {{ {body} }}"

    def __eq__(self, other):
        return isinstance(other, AlgebraPresentation) and \
            self.name == other.name and self.field == other.field and \
            self.alphabet == other.alphabet and self.relations == other.relations

    def __repr__(self):
        return self.render()


def build(p, cutoff):
    """Completed truncated rewrite system for the relation ideal."""
    return complete_truncated_over(p.relations, cutoff, p.order, p.field)


def check_automorphism(p, sigma, N):
    """Does sigma descend to the quotient algebra (checked in degrees <= N)?"""
    if not p.alphabet.all_unit_weight():
        raise ValueError("automorphism support requires weight-1 generators")
    if not sigma.is_invertible():
        raise ValueError("matrix is singular")
    R = build(p, N)
    return all(normal_form(sigma.apply(rel), R).is_zero() for rel in p.relations)


def _words_of_degree(alphabet, d):
    out = []

    def extend(w, deg):
        if deg == d:
            out.append(w)
            return
        for i in range(len(alphabet)):
            if deg + alphabet.weights[i] <= d:
                extend(w + (i,), deg + alphabet.weights[i])

    extend((), 0)
    return out


def _twisted_eval(word, R, sigma_powers):
    """Evaluate a free word in the twisted algebra, left to right.

    The star product is a * b = a . sigma^deg(a)(b), computed via normal
    forms in the untwisted algebra.
    """
    alphabet, fld = R.alphabet, R.field
    acc = NcPoly.one(alphabet, fld)
    deg = 0
    for letter in word:
        factor = sigma_powers[deg].image_of_gen(letter)
        acc = normal_form(acc * factor, R)
        deg += 1
    return acc


def _coeff_vector(p, basis_words, fld):
    index = {w: i for i, w in enumerate(basis_words)}
    v = [fld.zero] * len(basis_words)
    for w, c in p.terms.items():
        v[index[w]] = c
    return v


def twist(p, sigma, N, s_max=None):
    """Presentation of the twisted algebra A^sigma on the same generators.

    Relations are minimal generators of the kernel of the twisted evaluation
    map in each degree <= s_max: kernel elements already generated by
    lower-degree twisted relations are dropped.
    """
    if s_max is None:
        s_max = p.max_relation_degree() + 1
    if not check_automorphism(p, sigma, N):
        raise ValueError("matrix does not define an automorphism of the algebra")
    R = build(p, N)
    fld = p.field
    sigma_powers = [sigma.power(k) for k in range(s_max)]

    relations = []
    for s in range(2, s_max + 1):
        free_words = _words_of_degree(p.alphabet, s)
        target = normal_words(R, s)
        rows = [_coeff_vector(_twisted_eval(w, R, sigma_powers), target, fld)
                for w in free_words]
        # kernel of eval, as combinations of free words
        kernel = linalg.kernel_basis(_transpose(rows, fld), len(free_words), fld)
        # span of lower-degree relations inside this degree slice of the ideal
        span = linalg.SpanTracker(len(free_words), fld)
        windex = {w: i for i, w in enumerate(free_words)}
        for rel in relations:
            rdeg = rel.degree()
            for a in _words_of_degree(p.alphabet, s - rdeg):
                for cut in range(len(a) + 1):
                    left = NcPoly.word(p.alphabet, fld, a[:cut])
                    right = NcPoly.word(p.alphabet, fld, a[cut:])
                    prod = left * rel * right
                    v = [fld.zero] * len(free_words)
                    for w, c in prod.terms.items():
                        v[windex[w]] = v[windex[w]] + c
                    span.add(v)
        for v in kernel:
            if not span.contains(v):
                span.add(v)
                relations.append(NcPoly(p.alphabet, fld,
                                        [(free_words[i], v[i])
                                         for i in range(len(v)) if v[i]]))
    return AlgebraPresentation(f"{p.name}_twist", fld, p.alphabet, relations, p.order)


def _transpose(rows, fld):
    if not rows:
        return []
    return [[rows[i][j] for i in range(len(rows))] for j in range(len(rows[0]))]


@dataclass
class StandardCheckReport:
    status: str                    # "OK" | NOT_APPLICABLE | AMBIGUOUS
    r: int = 0
    s: int = 0
    M: list = None                 # r x r matrix of NcPoly entries
    Q: object = ABSENT             # r x r scalar matrix when determined
    is_standard: bool = False
    relation_order: list = None
    reason: str = ""

    def to_dict(self, order=None):
        d = {"status": self.status, "is_standard": self.is_standard,
             "r": self.r, "s": self.s, "reason": self.reason}
        if self.M is not None:
            d["M"] = [[e.render(order) for e in row] for row in self.M]
        d["Q"] = self.Q if self.Q == ABSENT else \
            [[str(x) for x in row] for row in self.Q]
        if self.relation_order is not None:
            d["relation_order"] = self.relation_order
        return d


def right_generator_decomposition(f, alphabet, fld):
    """Unique decomposition f = sum_k m_k . x_k by rightmost letters."""
    n = len(alphabet)
    parts = [NcPoly.zero(alphabet, fld) for _ in range(n)]
    for w, c in f.terms.items():
        if not w:
            raise ValueError("constant term has no rightmost generator")
        parts[w[-1]] = parts[w[-1]] + NcPoly.word(alphabet, fld, w[:-1], c)
    return parts


def standard_check(p):
    """Solve (x^t M)^t = Q f exactly; decide the standard-algebra condition."""
    fld = p.field
    r = len(p.alphabet)
    if not p.alphabet.all_unit_weight():
        return StandardCheckReport(NOT_APPLICABLE, reason="generators must have weight 1")
    if len(p.relations) != r:
        return StandardCheckReport(
            NOT_APPLICABLE, reason=f"{r} generators but {len(p.relations)} relations")
    degs = {rel.degree() for rel in p.relations}
    if len(degs) != 1:
        return StandardCheckReport(NOT_APPLICABLE, reason="relations of mixed degree")
    s = degs.pop()
    if (r, s) not in {(2, 3), (3, 2)}:
        return StandardCheckReport(
            NOT_APPLICABLE, r=r, s=s, reason=f"(r, s) = ({r}, {s}) not in {{(2,3), (3,2)}}")

    # M: row j holds the decomposition of relation f_j by rightmost letters
    M = [right_generator_decomposition(f, p.alphabet, fld) for f in p.relations]
    # g_j = sum_i x_i m_ij  (transpose of x^t M)
    gens = [p.gen_poly(i) for i in range(r)]
    g = []
    for j in range(r):
        acc = NcPoly.zero(p.alphabet, fld)
        for i in range(r):
            acc = acc + gens[i] * M[i][j]
        g.append(acc)

    words = _words_of_degree(p.alphabet, s)
    fvecs = [_coeff_vector(f, words, fld) for f in p.relations]
    fmat = _transpose(fvecs, fld)          # columns are the f_l
    frank = linalg.rank(fvecs, fld)
    report = StandardCheckReport(
        "OK", r=r, s=s, M=M,
        relation_order=[rel.render(p.order) for rel in p.relations])

    Q = []
    for j in range(r):
        gv = _coeff_vector(g[j], words, fld)
        sol = linalg.solve(fmat, gv, fld)
        if sol is None:
            report.is_standard = False
            report.reason = f"g_{j + 1} is not a combination of the relations"
            return report
        Q.append(sol)

    if frank < r:
        # solution space is positive-dimensional; sample for invertible points
        report.status = AMBIGUOUS
        report.reason = "Q is underdetermined (relations linearly dependent)"
        report.is_standard = _det_nonzero(Q, fld)
        if report.is_standard:
            report.Q = Q
        return report

    if _det_nonzero(Q, fld):
        report.is_standard = True
        report.Q = Q
    else:
        report.reason = "unique Q exists but is singular"
    return report


def _det_nonzero(Q, fld):
    return linalg.invert_matrix(Q, fld) is not None


def resolution_shape_check(p, r, s, N):
    """Euler-characteristic test H(t) (1 - r t + r t^s - t^(s+1)) = 1 mod t^(N+1)."""
    from .rewriting import RewriteSystem, hilbert_function
    R = build(p, N) if p.relations else RewriteSystem([], N, p.order, p.field)
    dims = hilbert_function(R, N)
    factor = [0] * (N + 1)
    factor[0] = 1
    if 1 <= N:
        factor[1] -= r
    if s <= N:
        factor[s] += r
    if s + 1 <= N:
        factor[s + 1] -= 1
    prod = [0] * (N + 1)
    for i, h in enumerate(dims):
        for j, f in enumerate(factor):
            if i + j <= N and f:
                prod[i + j] += h * f
    return prod == [1] + [0] * N
