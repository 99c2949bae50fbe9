"""Independent reference implementations used to freeze expected values.

These deliberately avoid the engine's kernel code paths: the differential
is computed by binary recursion on words, the generalized t-morphism by a
direct double loop over the printed definition, and path enumeration by
exhaustive search.
"""

from __future__ import annotations

from semifree.core import DgCategory, Term, compose
from semifree.functors import apply


def oracle_diff(cat: DgCategory, term: Term) -> Term:
    """d extended as a derivation, via d(g∘f) = dg∘f + (−1)^{|g|} g∘df with
    g a single trailing letter."""
    ring = cat.ring
    total = Term.zero(ring, term.source, term.target, term.degree + 1)

    def d_word(word, source):
        if not word:
            return Term.zero(ring, source, source, 1)
        if len(word) == 1:
            return cat.generator(word[0]).differential
        head = word[:-1]  # applied first
        last = cat.generator(word[-1])
        _, mid, head_deg = cat.word_profile(head, source)
        head_term = Term(ring, source, mid, head_deg, {head: ring.one()})
        last_term = cat.gen(word[-1])
        left = compose(last.differential, head_term)
        right = compose(last_term, d_word(head, source))
        if last.degree % 2:
            right = -right
        return left + right

    for word, coeff in term.support.items():
        total = total + d_word(word, term.source).scale(coeff)
    return total


def oracle_t_of(ext, term: Term) -> Term:
    """Definition-level t_θ: for each word f_n∘…∘f_1 sum
    (−1)^{|f_{j-1}|+…+|f_1|} β(f_n…f_{j+1}) ∘ t_{f_j} ∘ α(f_{j-1}…f_1)."""
    ring = ext.ring
    middle = ext.middle
    total = Term.zero(
        ring, ext.alpha.obj(term.source), ext.beta.obj(term.target), term.degree - 1
    )
    for word, coeff in term.support.items():
        for j in range(len(word)):
            prefix = word[:j]
            suffix = word[j + 1 :]
            src, mid1, pre_deg = middle.word_profile(prefix, term.source)
            pre_term = Term(ring, src, mid1, pre_deg, {prefix: ring.one()})
            mid2 = middle.generator(word[j]).target
            _, tgt, suf_deg = middle.word_profile(suffix, mid2)
            suf_term = Term(ring, mid2, tgt, suf_deg, {suffix: ring.one()})
            piece = compose(
                compose(apply(ext.beta, suf_term), ext.t_gen[word[j]]),
                apply(ext.alpha, pre_term),
            )
            sign = -1 if pre_deg % 2 else 1
            total = total + piece.scale(ring.mul(ring.coerce(sign), coeff))
    return total


def oracle_paths(cat: DgCategory, source, target, degree, max_len):
    """Exhaustive enumeration of composable words source→target of the
    given degree and length ≤ max_len."""
    results = []

    def walk(word, cursor, deg):
        if cursor == target and deg == degree:
            results.append(tuple(word))
        if len(word) >= max_len:
            return
        for gen in cat.generators:
            if gen.source == cursor:
                word.append(gen.name)
                walk(word, gen.target, deg + gen.degree)
                word.pop()

    walk([], source, 0)
    return sorted(results, key=lambda w: (len(w), w))
