"""Pure-Python term kernel.

Operations on raw term supports: dicts mapping a word (tuple of generator
names, in application order, so ``(f, g)`` is the composite g∘f) to a
nonzero ring element.  Zero coefficients are dropped eagerly, so two
supports are equal iff the dicts are equal.

The compiled twin of this module is semifree._termops_c; semifree.kernel
selects between them at import time.  Keep the two implementations in
lockstep.

Rings with ``native=True`` store coefficients as ints/Fractions whose +, *
and ``== 0`` agree with ring arithmetic; those paths avoid method dispatch.
"""

from __future__ import annotations

from fractions import Fraction

IMPLEMENTATION = "python"


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def add_into(acc: dict, support: dict, ring) -> None:
    """acc += support, dropping cancellations."""
    if ring.native:
        for word, c in support.items():
            prev = acc.get(word)
            if prev is None:
                acc[word] = c
            else:
                s = _norm(prev + c)
                if s == 0:
                    del acc[word]
                else:
                    acc[word] = s
    else:
        for word, c in support.items():
            prev = acc.get(word)
            if prev is None:
                acc[word] = c
            else:
                s = ring.add(prev, c)
                if ring.is_zero(s):
                    del acc[word]
                else:
                    acc[word] = s


def scaled_into(acc: dict, coeff, support: dict, ring) -> None:
    """acc += coeff * support."""
    if ring.native:
        if coeff == 0:
            return
        for word, c in support.items():
            prev = acc.get(word)
            cc = c * coeff
            if prev is None:
                acc[word] = _norm(cc)
            else:
                s = _norm(prev + cc)
                if s == 0:
                    del acc[word]
                else:
                    acc[word] = s
    else:
        if ring.is_zero(coeff):
            return
        for word, c in support.items():
            prev = acc.get(word)
            cc = ring.mul(c, coeff)
            if prev is None:
                if not ring.is_zero(cc):
                    acc[word] = cc
            else:
                s = ring.add(prev, cc)
                if ring.is_zero(s):
                    del acc[word]
                else:
                    acc[word] = s


def neg(support: dict, ring) -> dict:
    if ring.native:
        return {word: -c for word, c in support.items()}
    return {word: ring.neg(c) for word, c in support.items()}


def scale(coeff, support: dict, ring) -> dict:
    out: dict = {}
    scaled_into(out, coeff, support, ring)
    return out


def concat_bilinear(first: dict, second: dict, ring) -> dict:
    """Bilinear concatenation: words of `first` are applied first.

    For Terms f then g this computes the support of g∘f.
    """
    out: dict = {}
    if ring.native:
        for w1, c1 in first.items():
            for w2, c2 in second.items():
                word = w1 + w2
                c = c1 * c2
                prev = out.get(word)
                if prev is None:
                    out[word] = _norm(c)
                else:
                    s = _norm(prev + c)
                    if s == 0:
                        del out[word]
                    else:
                        out[word] = s
    else:
        for w1, c1 in first.items():
            for w2, c2 in second.items():
                word = w1 + w2
                c = ring.mul(c1, c2)
                if ring.is_zero(c):
                    continue
                prev = out.get(word)
                if prev is None:
                    out[word] = c
                else:
                    s = ring.add(prev, c)
                    if ring.is_zero(s):
                        del out[word]
                    else:
                        out[word] = s
    return out


def leibniz(support: dict, gen_diff: dict, gen_deg: dict, ring) -> dict:
    """Extend d from generators to the span of words as a derivation.

    d(f_n∘…∘f_1) = Σ_j (−1)^(|f_n|+…+|f_{j+1}|) f_n∘…∘f_{j+1}∘df_j∘f_{j-1}∘…∘f_1,
    matching d(g∘f) = dg∘f + (−1)^{|g|} g∘df.  Words are stored in
    application order, so position j's "later" letters are the tail slice.

    gen_diff maps a generator name to its differential's raw support;
    gen_deg maps a name to its degree.  Identity components in a
    differential (empty word) splice in as letter removal.
    """
    out: dict = {}
    for word, c in support.items():
        n = len(word)
        # suffix_deg[i] = sum of degrees of word[i+1:]
        tail_deg = 0
        tail_degs = [0] * n
        for i in range(n - 1, -1, -1):
            tail_degs[i] = tail_deg
            tail_deg += gen_deg[word[i]]
        for i in range(n):
            dsup = gen_diff[word[i]]
            if not dsup:
                continue
            coeff = c if tail_degs[i] % 2 == 0 else ring.neg(c)
            head = word[:i]
            tail = word[i + 1 :]
            piece = {head + dw + tail: dc for dw, dc in dsup.items()}
            scaled_into(out, coeff, piece, ring)
    return out


def apply_words(support: dict, images: dict, ring) -> dict:
    """Monoidal extension of a generator substitution to a support.

    images maps generator names to raw supports; each word maps to the
    concatenation-product of its letters' images, with coefficients carried
    through bilinearly.
    """
    out: dict = {}
    for word, c in support.items():
        acc = {(): ring.one()}
        dead = False
        for name in word:
            img = images[name]
            if not img:
                dead = True
                break
            acc = concat_bilinear(acc, img, ring)
            if not acc:
                dead = True
                break
        if dead:
            continue
        scaled_into(out, c, acc, ring)
    return out
