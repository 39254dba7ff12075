#pragma once
#include <cmath>
#include <cstdint>

#if defined(__AVX2__)
#include <immintrin.h>
#endif
#if defined(__ARM_NEON) || defined(__aarch64__)
#include <arm_neon.h>
#endif

// Lane-width abstraction for the batched kernels. `double` itself is the
// width-1 reference pack; the wide packs mirror its arithmetic lane by lane
// using only correctly-rounded IEEE ops (+,-,*,/,sqrt), so a wide kernel and
// the scalar kernel produce bit-identical lanes as long as the surrounding
// code performs the same operation sequence. Transcendentals never appear
// here; they are evaluated lane-scalar by the coefficient providers.

namespace finfront::kern {

template <class P> struct pack_traits;

template <> struct pack_traits<double> {
    static constexpr int width = 1;
    using mask = bool;
    static double splat(double v) { return v; }
    static double load(const double* p) { return *p; }
    static void store(double* p, double v) { *p = v; }
    static mask mask_false() { return false; }
};

inline double sqrt_(double v) { return std::sqrt(v); }
inline double abs_(double v) { return std::fabs(v); }
// Mirrors the SIMD max/min semantics (second operand wins on unordered).
inline double max_(double a, double b) { return a > b ? a : b; }
inline double min_(double a, double b) { return a < b ? a : b; }
inline bool less_(double a, double b) { return a < b; }
inline bool less_eq_(double a, double b) { return a <= b; }
inline bool mask_or_(bool a, bool b) { return a || b; }
inline bool mask_any(bool m) { return m; }
inline std::uint32_t mask_bits(bool m) { return m ? 1u : 0u; }

#if defined(__AVX2__)

struct pack4 {
    __m256d v;
};

template <> struct pack_traits<pack4> {
    static constexpr int width = 4;
    using mask = __m256d;
    static pack4 splat(double v) { return {_mm256_set1_pd(v)}; }
    static pack4 load(const double* p) { return {_mm256_loadu_pd(p)}; }
    static void store(double* p, pack4 v) { _mm256_storeu_pd(p, v.v); }
    static mask mask_false() { return _mm256_setzero_pd(); }
};

inline pack4 operator+(pack4 a, pack4 b) { return {_mm256_add_pd(a.v, b.v)}; }
inline pack4 operator-(pack4 a, pack4 b) { return {_mm256_sub_pd(a.v, b.v)}; }
inline pack4 operator*(pack4 a, pack4 b) { return {_mm256_mul_pd(a.v, b.v)}; }
inline pack4 operator/(pack4 a, pack4 b) { return {_mm256_div_pd(a.v, b.v)}; }
inline pack4 operator-(pack4 a) { return {_mm256_xor_pd(a.v, _mm256_set1_pd(-0.0))}; }
inline pack4 sqrt_(pack4 a) { return {_mm256_sqrt_pd(a.v)}; }
inline pack4 abs_(pack4 a) { return {_mm256_andnot_pd(_mm256_set1_pd(-0.0), a.v)}; }
inline pack4 max_(pack4 a, pack4 b) { return {_mm256_max_pd(a.v, b.v)}; }
inline pack4 min_(pack4 a, pack4 b) { return {_mm256_min_pd(a.v, b.v)}; }
inline __m256d less_(pack4 a, pack4 b) { return _mm256_cmp_pd(a.v, b.v, _CMP_LT_OQ); }
inline __m256d less_eq_(pack4 a, pack4 b) { return _mm256_cmp_pd(a.v, b.v, _CMP_LE_OQ); }
inline __m256d mask_or_(__m256d a, __m256d b) { return _mm256_or_pd(a, b); }
inline bool mask_any(__m256d m) { return _mm256_movemask_pd(m) != 0; }
inline std::uint32_t mask_bits(__m256d m) { return static_cast<std::uint32_t>(_mm256_movemask_pd(m)); }

#endif // __AVX2__

#if defined(__ARM_NEON) || defined(__aarch64__)

struct pack2 {
    float64x2_t v;
};

template <> struct pack_traits<pack2> {
    static constexpr int width = 2;
    using mask = uint64x2_t;
    static pack2 splat(double v) { return {vdupq_n_f64(v)}; }
    static pack2 load(const double* p) { return {vld1q_f64(p)}; }
    static void store(double* p, pack2 v) { vst1q_f64(p, v.v); }
    static mask mask_false() { return vdupq_n_u64(0); }
};

inline pack2 operator+(pack2 a, pack2 b) { return {vaddq_f64(a.v, b.v)}; }
inline pack2 operator-(pack2 a, pack2 b) { return {vsubq_f64(a.v, b.v)}; }
inline pack2 operator*(pack2 a, pack2 b) { return {vmulq_f64(a.v, b.v)}; }
inline pack2 operator/(pack2 a, pack2 b) { return {vdivq_f64(a.v, b.v)}; }
inline pack2 operator-(pack2 a) { return {vnegq_f64(a.v)}; }
inline pack2 sqrt_(pack2 a) { return {vsqrtq_f64(a.v)}; }
inline pack2 abs_(pack2 a) { return {vabsq_f64(a.v)}; }
// Compare+select rather than vmaxq so NaN handling matches the scalar ternary.
inline pack2 max_(pack2 a, pack2 b) { return {vbslq_f64(vcgtq_f64(a.v, b.v), a.v, b.v)}; }
inline pack2 min_(pack2 a, pack2 b) { return {vbslq_f64(vcltq_f64(a.v, b.v), a.v, b.v)}; }
inline uint64x2_t less_(pack2 a, pack2 b) { return vcltq_f64(a.v, b.v); }
inline uint64x2_t less_eq_(pack2 a, pack2 b) { return vcleq_f64(a.v, b.v); }
inline uint64x2_t mask_or_(uint64x2_t a, uint64x2_t b) { return vorrq_u64(a, b); }
inline bool mask_any(uint64x2_t m) {
    return (vgetq_lane_u64(m, 0) | vgetq_lane_u64(m, 1)) != 0;
}
inline std::uint32_t mask_bits(uint64x2_t m) {
    return (vgetq_lane_u64(m, 0) ? 1u : 0u) | (vgetq_lane_u64(m, 1) ? 2u : 0u);
}

#endif // __ARM_NEON

} // namespace finfront::kern
