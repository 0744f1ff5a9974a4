#ifndef LCDISC_J0KERNEL_H
#define LCDISC_J0KERNEL_H

#include <stddef.h>

/* out_re/out_im[i] = sum_j c[j] * j0(k[j] * r[i]), j0(z) = sin(z)/z. */
void lcdisc_j0_sum(const double *r, ptrdiff_t nr,
                   const double *k, const double *inv_k, ptrdiff_t nk,
                   const double *c_re, const double *c_im,
                   double *out_re, double *out_im);

/* out[i*nk + j] = j0(k[j] * r[i]), row-major. */
void lcdisc_j0_table(const double *r, ptrdiff_t nr,
                     const double *k, const double *inv_k, ptrdiff_t nk,
                     double *out);

#endif
