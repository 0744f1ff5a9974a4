/* Vectorizable spherical Bessel j0 kernels.
 *
 * j0(z) = sin(z)/z is evaluated with a Cody-Waite reduction z = q*pi + red,
 * |red| <= pi/2, followed by an odd Taylor polynomial for sin(red).  The
 * three-part split of pi keeps the reduction exact to ~105 bits, so the
 * result stays within ~1 ulp of libm for the argument ranges used here
 * (z up to ~1e5).  Everything is branch-free inside the hot loops and the
 * summation order is fixed, so results are bit-reproducible across runs.
 *
 * Callers must pass k sorted ascending with inv_k[j] = 1/k[j] (any value
 * is accepted where k[j]*r[i] < SMALL_Z, since that range uses a series).
 */

#include <math.h>
#include <stddef.h>

#include "j0kernel.h"

/* pi = PI_HI + PI_MID + PI_LO, each piece exact in 27 bits */
#define INV_PI 3.18309886183790691216e-01
#define PI_HI 3.14159265160560607910e+00
#define PI_MID 1.98418714791870343106e-09
#define PI_LO 1.14423774522196635935e-17
#define SMALL_Z 1e-4

#define BLK 256

/* sin(x)/x - 1 Taylor coefficients in x^2, degree 19 in x */
static const double S[9] = {
    -1.66666666666666666667e-01, 8.33333333333333333333e-03,
    -1.98412698412698412698e-04, 2.75573192239858906526e-06,
    -2.50521083854417187751e-08, 1.60590438368216145994e-10,
    -7.64716373181981647590e-13, 2.81145725434552076320e-15,
    -8.22063524662432971696e-18};

/* The reduced-sine body is duplicated in both kernels on purpose: keeping
 * the loops monolithic is what lets the compiler vectorize them. */
#define J0_REDUCED(z, inv_z, dest)                                \
    do {                                                          \
        double q = floor((z)*INV_PI + 0.5);                       \
        double red = (((z)-q * PI_HI) - q * PI_MID) - q * PI_LO;  \
        double half = q * 0.5;                                    \
        double sign = 1.0 - 4.0 * (half - floor(half));           \
        double r2 = red * red;                                    \
        double p = S[8];                                          \
        p = p * r2 + S[7];                                        \
        p = p * r2 + S[6];                                        \
        p = p * r2 + S[5];                                        \
        p = p * r2 + S[4];                                        \
        p = p * r2 + S[3];                                        \
        p = p * r2 + S[2];                                        \
        p = p * r2 + S[1];                                        \
        p = p * r2 + S[0];                                        \
        p = red + red * r2 * p;                                   \
        (dest) = sign * p * (inv_z);                              \
    } while (0)

void lcdisc_j0_sum(const double *restrict r, ptrdiff_t nr,
                   const double *restrict k, const double *restrict inv_k,
                   ptrdiff_t nk,
                   const double *restrict c_re, const double *restrict c_im,
                   double *restrict out_re, double *restrict out_im)
{
    double sbuf[BLK];

    for (ptrdiff_t i = 0; i < nr; i++) {
        double ri = r[i];
        double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
        double b0 = 0.0, b1 = 0.0, b2 = 0.0, b3 = 0.0;
        if (ri <= 0.0) {
            for (ptrdiff_t j = 0; j < nk; j++) {
                a0 += c_re[j];
                b0 += c_im[j];
            }
            out_re[i] = a0;
            out_im[i] = b0;
            continue;
        }
        double inv_ri = 1.0 / ri;
        ptrdiff_t j0i = 0;
        while (j0i < nk && k[j0i] * ri < SMALL_Z) {
            double z = k[j0i] * ri;
            double s = 1.0 - z * z / 6.0;
            a0 += c_re[j0i] * s;
            b0 += c_im[j0i] * s;
            j0i++;
        }
        for (ptrdiff_t jb = j0i; jb < nk; jb += BLK) {
            ptrdiff_t je = jb + BLK < nk ? jb + BLK : nk;
            ptrdiff_t m = je - jb;
            for (ptrdiff_t t = 0; t < m; t++) {
                double z = k[jb + t] * ri;
                J0_REDUCED(z, inv_k[jb + t] * inv_ri, sbuf[t]);
            }
            ptrdiff_t t = 0;
            for (; t + 4 <= m; t += 4) {
                a0 += c_re[jb + t] * sbuf[t];
                b0 += c_im[jb + t] * sbuf[t];
                a1 += c_re[jb + t + 1] * sbuf[t + 1];
                b1 += c_im[jb + t + 1] * sbuf[t + 1];
                a2 += c_re[jb + t + 2] * sbuf[t + 2];
                b2 += c_im[jb + t + 2] * sbuf[t + 2];
                a3 += c_re[jb + t + 3] * sbuf[t + 3];
                b3 += c_im[jb + t + 3] * sbuf[t + 3];
            }
            for (; t < m; t++) {
                a0 += c_re[jb + t] * sbuf[t];
                b0 += c_im[jb + t] * sbuf[t];
            }
        }
        out_re[i] = (a0 + a1) + (a2 + a3);
        out_im[i] = (b0 + b1) + (b2 + b3);
    }
}

void lcdisc_j0_table(const double *restrict r, ptrdiff_t nr,
                     const double *restrict k, const double *restrict inv_k,
                     ptrdiff_t nk,
                     double *restrict out)
{
    for (ptrdiff_t i = 0; i < nr; i++) {
        double ri = r[i];
        double *restrict row = out + i * nk;
        if (ri <= 0.0) {
            for (ptrdiff_t j = 0; j < nk; j++)
                row[j] = 1.0;
            continue;
        }
        double inv_ri = 1.0 / ri;
        ptrdiff_t j0i = 0;
        while (j0i < nk && k[j0i] * ri < SMALL_Z) {
            double z = k[j0i] * ri;
            row[j0i] = 1.0 - z * z / 6.0;
            j0i++;
        }
        for (ptrdiff_t j = j0i; j < nk; j++) {
            double z = k[j] * ri;
            J0_REDUCED(z, inv_k[j] * inv_ri, row[j]);
        }
    }
}
