# cython: boundscheck=False, wraparound=False, language_level=3
"""Cython bindings for the C j0 kernels.

Inputs must be C-contiguous float64 arrays with ``k`` sorted ascending and
``inv_k[j] == 1/k[j]`` (callers in :mod:`lcdisc._kernels` prepare these).
"""

cdef extern from "j0kernel.h":
    void lcdisc_j0_sum(const double *r, Py_ssize_t nr,
                       const double *k, const double *inv_k, Py_ssize_t nk,
                       const double *c_re, const double *c_im,
                       double *out_re, double *out_im) nogil
    void lcdisc_j0_table(const double *r, Py_ssize_t nr,
                         const double *k, const double *inv_k, Py_ssize_t nk,
                         double *out) nogil


def j0_sum(double[::1] r, double[::1] k, double[::1] inv_k,
           double[::1] c_re, double[::1] c_im,
           double[::1] out_re, double[::1] out_im):
    """Accumulate out[i] = sum_j c[j] * j0(k[j] * r[i]) in place."""
    cdef Py_ssize_t nr = r.shape[0]
    cdef Py_ssize_t nk = k.shape[0]
    if inv_k.shape[0] != nk or c_re.shape[0] != nk or c_im.shape[0] != nk:
        raise ValueError("k, inv_k and coefficient arrays must share a length")
    if out_re.shape[0] != nr or out_im.shape[0] != nr:
        raise ValueError("output arrays must match the length of r")
    if nr == 0:
        return
    if nk == 0:
        out_re[:] = 0.0
        out_im[:] = 0.0
        return
    with nogil:
        lcdisc_j0_sum(&r[0], nr, &k[0], &inv_k[0], nk,
                      &c_re[0], &c_im[0], &out_re[0], &out_im[0])


def j0_table(double[::1] r, double[::1] k, double[::1] inv_k,
             double[:, ::1] out):
    """Fill out[i, j] = j0(k[j] * r[i]) in place."""
    cdef Py_ssize_t nr = r.shape[0]
    cdef Py_ssize_t nk = k.shape[0]
    if inv_k.shape[0] != nk:
        raise ValueError("k and inv_k must share a length")
    if out.shape[0] != nr or out.shape[1] != nk:
        raise ValueError("output shape must be (len(r), len(k))")
    if nr == 0 or nk == 0:
        return
    with nogil:
        lcdisc_j0_table(&r[0], nr, &k[0], &inv_k[0], nk, &out[0, 0])
