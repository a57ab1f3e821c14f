"""Pure-Python term kernels.

A term map is a ``dict`` from packed monomial key to a nonzero integer
numerator. Keys multiply by integer addition (see ``cubicinv.poly``), so
none of these functions need to know the dimension. ``_ckernels`` is a
compiled twin of this module and must stay bit-identical to it.
"""


def mul_terms(a, b):
    """Product of two term maps."""
    if len(a) < len(b):
        a, b = b, a
    b_items = list(b.items())
    out = {}
    get = out.get
    for ka, ca in a.items():
        for kb, cb in b_items:
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def lincomb_terms(a, ca, b, cb):
    """``ca*a + cb*b`` for integer scalars ``ca``, ``cb``."""
    out = {k: ca * v for k, v in a.items()}
    get = out.get
    for k, v in b.items():
        out[k] = get(k, 0) + cb * v
    return {k: v for k, v in out.items() if v}


def axpy_into(out, a, c):
    """In-place ``out += c*a``. May leave zero entries in ``out``."""
    get = out.get
    for k, v in a.items():
        out[k] = get(k, 0) + c * v


def scale_terms(a, c):
    return {k: c * v for k, v in a.items()}


def diff_terms(a, shift, step):
    """Formal derivative in the variable whose exponent field sits at ``shift``.

    ``step`` is the packed key of the monomial being divided out (one unit
    of the variable plus one unit of total degree).
    """
    out = {}
    mask = 0xFFFF
    for k, v in a.items():
        e = (k >> shift) & mask
        if e:
            out[k - step] = v * e
    return out
