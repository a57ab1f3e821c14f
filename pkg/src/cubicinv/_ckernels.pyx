# cython: boundscheck=False, wraparound=False
"""Compiled term kernels; same contract as ``cubicinv._pykernels``."""

from cpython.dict cimport PyDict_GetItem, PyDict_SetItem
from cpython.object cimport PyObject


def mul_terms(dict a, dict b):
    cdef dict out = {}
    cdef list bk, bv
    cdef Py_ssize_t j, n
    cdef object ka, ca, k, prod
    cdef PyObject* cur
    if len(a) < len(b):
        a, b = b, a
    bk = list(b.keys())
    bv = list(b.values())
    n = len(bk)
    for ka, ca in a.items():
        for j in range(n):
            k = ka + bk[j]
            prod = ca * bv[j]
            cur = PyDict_GetItem(out, k)
            if cur is NULL:
                PyDict_SetItem(out, k, prod)
            else:
                PyDict_SetItem(out, k, <object>cur + prod)
    return {k: prod for k, prod in out.items() if prod}


def lincomb_terms(dict a, object ca, dict b, object cb):
    cdef dict out = {}
    cdef object k, v
    cdef PyObject* cur
    for k, v in a.items():
        PyDict_SetItem(out, k, ca * v)
    for k, v in b.items():
        cur = PyDict_GetItem(out, k)
        if cur is NULL:
            PyDict_SetItem(out, k, cb * v)
        else:
            PyDict_SetItem(out, k, <object>cur + cb * v)
    return {k: v for k, v in out.items() if v}


def axpy_into(dict out, dict a, object c):
    cdef object k, v
    cdef PyObject* cur
    for k, v in a.items():
        cur = PyDict_GetItem(out, k)
        if cur is NULL:
            PyDict_SetItem(out, k, c * v)
        else:
            PyDict_SetItem(out, k, <object>cur + c * v)


def scale_terms(dict a, object c):
    cdef object k, v
    return {k: c * v for k, v in a.items()}


def diff_terms(dict a, int shift, object step):
    cdef dict out = {}
    cdef object k, v, e
    for k, v in a.items():
        e = (k >> shift) & 0xFFFF
        if e:
            PyDict_SetItem(out, k - step, v * e)
    return out
