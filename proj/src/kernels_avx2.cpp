#include "ioncav/kernels.hpp"

#if defined(IONCAV_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>

namespace ioncav::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

} // namespace

// Row-wise pair sums: for each i accumulate over all j with the j == i lane
// masked out. Does 2x the flops of the triangular loop but vectorizes clean;
// the energy double-counts every pair and is halved at the end.
double coulomb_energy_gradient(const double* x, const double* y, std::size_t n,
                               double* gx, double* gy) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d e_acc = _mm256_setzero_pd();
    double e_tail = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const __m256d xi = _mm256_set1_pd(x[i]);
        const __m256d yi = _mm256_set1_pd(y[i]);
        __m256d ax = zero, ay = zero;
        std::size_t j = 0;
        for (; j + 4 <= n; j += 4) {
            const __m256d dx = _mm256_sub_pd(xi, _mm256_loadu_pd(x + j));
            const __m256d dy = _mm256_sub_pd(yi, _mm256_loadu_pd(y + j));
            const __m256d r2 = _mm256_fmadd_pd(dx, dx, _mm256_mul_pd(dy, dy));
            // mask out the self pair (r2 == 0)
            const __m256d valid = _mm256_cmp_pd(r2, zero, _CMP_NEQ_OQ);
            const __m256d r2s = _mm256_blendv_pd(one, r2, valid);
            const __m256d inv_r = _mm256_and_pd(_mm256_div_pd(one, _mm256_sqrt_pd(r2s)), valid);
            const __m256d inv_r3 = _mm256_div_pd(inv_r, r2s);
            e_acc = _mm256_add_pd(e_acc, inv_r);
            ax = _mm256_fmadd_pd(dx, inv_r3, ax);
            ay = _mm256_fmadd_pd(dy, inv_r3, ay);
        }
        double axs = hsum(ax), ays = hsum(ay);
        for (; j < n; ++j) {
            if (j == i) continue;
            const double dx = x[i] - x[j];
            const double dy = y[i] - y[j];
            const double r2 = dx * dx + dy * dy;
            const double inv_r = 1.0 / std::sqrt(r2);
            e_tail += inv_r;
            axs += dx * inv_r / r2;
            ays += dy * inv_r / r2;
        }
        gx[i] -= axs;
        gy[i] -= ays;
    }
    return 0.5 * (hsum(e_acc) + e_tail);
}

void spectrum_grid(const SpectrumInputs& in, const double* nu, std::size_t n_nu,
                   double* s_out) {
    const __m256d kap = _mm256_set1_pd(in.kappa);
    const __m256d deff = _mm256_set1_pd(in.delta_eff);
    const __m256d na = _mm256_set1_pd(in.photons);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d four = _mm256_set1_pd(4.0);
    const __m256d kap2 = _mm256_mul_pd(kap, kap);
    std::size_t iv = 0;
    for (; iv + 4 <= n_nu; iv += 4) {
        const __m256d v = _mm256_loadu_pd(nu + iv);
        const __m256d v2 = _mm256_mul_pd(v, v);
        __m256d th_re = _mm256_setzero_pd(), th_im = _mm256_setzero_pd();
        __m256d t2 = _mm256_setzero_pd();
        for (std::size_t m = 0; m < in.n_modes; ++m) {
            const __m256d w = _mm256_set1_pd(in.omega[m]);
            const __m256d g = _mm256_set1_pd(in.gamma[m]);
            const __m256d c2 = _mm256_set1_pd(in.c2[m]);
            const __m256d nb = _mm256_set1_pd(in.nbar[m]);
            const __m256d g2 = _mm256_mul_pd(g, g);
            const __m256d dr = _mm256_sub_pd(_mm256_fmadd_pd(w, w, g2), v2);
            const __m256d di = _mm256_mul_pd(_mm256_mul_pd(_mm256_sub_pd(_mm256_setzero_pd(), two), g), v);
            const __m256d den = _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di));
            const __m256d c2w = _mm256_mul_pd(c2, w);
            th_re = _mm256_add_pd(th_re, _mm256_div_pd(_mm256_mul_pd(c2w, dr), den));
            th_im = _mm256_sub_pd(th_im, _mm256_div_pd(_mm256_mul_pd(c2w, di), den));
            const __m256d wm = _mm256_sub_pd(w, v);
            const __m256d wp = _mm256_add_pd(w, v);
            const __m256d lm = _mm256_div_pd(nb, _mm256_fmadd_pd(wm, wm, g2));
            const __m256d lp = _mm256_div_pd(_mm256_add_pd(nb, one), _mm256_fmadd_pd(wp, wp, g2));
            t2 = _mm256_add_pd(t2, _mm256_mul_pd(_mm256_mul_pd(c2, g), _mm256_add_pd(lm, lp)));
        }
        const __m256d deff2 = _mm256_mul_pd(deff, deff);
        const __m256d Dr = _mm256_add_pd(_mm256_sub_pd(kap2, v2), deff2);
        const __m256d Di = _mm256_mul_pd(_mm256_mul_pd(_mm256_sub_pd(_mm256_setzero_pd(), two), kap), v);
        const __m256d Dden = _mm256_fmadd_pd(Dr, Dr, _mm256_mul_pd(Di, Di));
        const __m256d f = _mm256_mul_pd(_mm256_mul_pd(four, deff), na);
        const __m256d w_re = _mm256_div_pd(
            _mm256_mul_pd(f, _mm256_fmadd_pd(th_re, Dr, _mm256_mul_pd(th_im, Di))), Dden);
        const __m256d w_im = _mm256_div_pd(
            _mm256_mul_pd(f, _mm256_fmsub_pd(th_im, Dr, _mm256_mul_pd(th_re, Di))), Dden);
        const __m256d opw = _mm256_add_pd(one, w_re);
        const __m256d one_w2 = _mm256_fmadd_pd(opw, opw, _mm256_mul_pd(w_im, w_im));
        const __m256d vp = _mm256_add_pd(v, deff);
        const __m256d vm = _mm256_sub_pd(v, deff);
        const __m256d s0 = _mm256_div_pd(
            two, _mm256_mul_pd(_mm256_fmadd_pd(vp, vp, kap2), one_w2));
        const __m256d th2 = _mm256_fmadd_pd(th_re, th_re, _mm256_mul_pd(th_im, th_im));
        const __m256d t1 = _mm256_div_pd(
            _mm256_mul_pd(_mm256_mul_pd(four, kap), _mm256_mul_pd(na, th2)),
            _mm256_fmadd_pd(vm, vm, kap2));
        _mm256_storeu_pd(s_out + iv, _mm256_mul_pd(s0, _mm256_add_pd(t1, t2)));
    }
    if (iv < n_nu) scalar::spectrum_grid(in, nu + iv, n_nu - iv, s_out + iv);
}

} // namespace ioncav::kernels::avx2

#endif // IONCAV_HAVE_AVX2
