# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term kernel: drop-in twin of semifree._termops.

Same contracts, same semantics; see the pure-Python module for the
reference documentation.  Coefficients stay generic PyObjects (exact ints
and Fractions), the win comes from removing interpreter dispatch in the
inner loops.
"""

from fractions import Fraction

IMPLEMENTATION = "c"

cdef object _Fraction = Fraction


cdef inline object _norm(object c):
    if type(c) is _Fraction and c.denominator == 1:
        return int(c)
    return c


def add_into(dict acc, dict support, ring):
    cdef bint native = ring.native
    cdef object word, c, prev, s
    if native:
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


def scaled_into(dict acc, coeff, dict support, ring):
    cdef bint native = ring.native
    cdef object word, c, cc, prev, s
    if native:
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


def neg(dict support, ring):
    cdef dict out = {}
    cdef object word, c
    if ring.native:
        for word, c in support.items():
            out[word] = -c
    else:
        for word, c in support.items():
            out[word] = ring.neg(c)
    return out


def scale(coeff, dict support, ring):
    cdef dict out = {}
    scaled_into(out, coeff, support, ring)
    return out


def concat_bilinear(dict first, dict second, ring):
    cdef dict out = {}
    cdef bint native = ring.native
    cdef object w1, c1, w2, c2, word, c, prev, s
    if native:
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


def leibniz(dict support, dict gen_diff, dict gen_deg, ring):
    cdef dict out = {}
    cdef dict piece
    cdef object word, c, coeff, dsup, dw, dc, head, tail
    cdef Py_ssize_t n, i
    cdef long tail_deg
    cdef list tail_degs
    for word, c in support.items():
        n = len(<tuple>word)
        tail_deg = 0
        tail_degs = [0] * n
        for i in range(n - 1, -1, -1):
            tail_degs[i] = tail_deg
            tail_deg += <long>gen_deg[(<tuple>word)[i]]
        for i in range(n):
            dsup = gen_diff[(<tuple>word)[i]]
            if not dsup:
                continue
            if (<long>tail_degs[i]) % 2 == 0:
                coeff = c
            else:
                coeff = ring.neg(c)
            head = (<tuple>word)[:i]
            tail = (<tuple>word)[i + 1:]
            piece = {}
            for dw, dc in (<dict>dsup).items():
                piece[(<tuple>head) + (<tuple>dw) + (<tuple>tail)] = dc
            scaled_into(out, coeff, piece, ring)
    return out


def apply_words(dict support, dict images, ring):
    cdef dict out = {}
    cdef dict acc
    cdef object word, c, name, img
    cdef bint dead
    for word, c in support.items():
        acc = {(): ring.one()}
        dead = False
        for name in <tuple>word:
            img = images[name]
            if not img:
                dead = True
                break
            acc = concat_bilinear(acc, <dict>img, ring)
            if not acc:
                dead = True
                break
        if dead:
            continue
        scaled_into(out, c, acc, ring)
    return out
