#include "searchmkt/hypergeom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "searchmkt/errors.hpp"

namespace searchmkt {

namespace {

struct binom_table {
    std::array<std::array<std::uint64_t, max_firms + 1>, max_firms + 1> c{};

    binom_table() {
        for (int a = 0; a <= max_firms; ++a) {
            c[a][0] = 1;
            for (int b = 1; b <= a; ++b)
                c[a][b] = c[a - 1][b - 1] + (b <= a - 1 ? c[a - 1][b] : 0);
        }
    }
};

const binom_table tbl;

// C(N-n, k-m) C(n, m); bounded by C(N, k) via Vandermonde, so the product
// never overflows.
std::uint64_t term(const sample_frame& f, int m) {
    return binom(f.N - f.n, f.k - m) * binom(f.n, m);
}

}  // namespace

std::uint64_t binom(int a, int b) {
    if (b < 0 || a < 0 || b > a) return 0;
    if (a > max_firms) fail(errc::internal, "binom", "argument exceeds the 64-firm cap");
    return tbl.c[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

void validate_frame(const sample_frame& f) {
    if (f.N < 3 || f.N > max_firms)
        fail(errc::validation, "frame", "N must lie in [3, 64], got " + std::to_string(f.N));
    if (f.n < 0 || f.n > f.N)
        fail(errc::validation, "frame", "n must lie in [0, N], got " + std::to_string(f.n));
    if (f.k < 1 || f.k > f.N)
        fail(errc::validation, "frame", "k must lie in [1, N], got " + std::to_string(f.k));
}

double pmf(const sample_frame& f, int m) {
    validate_frame(f);
    if (m < 0 || m > f.k)
        fail(errc::validation, "frame", "m must lie in [0, k], got " + std::to_string(m));
    return static_cast<double>(term(f, m)) / static_cast<double>(binom(f.N, f.k));
}

double gen(const sample_frame& f, double x) {
    validate_frame(f);
    double acc = 0.0;
    for (int m = f.k; m >= 0; --m) acc = acc * x + static_cast<double>(term(f, m));
    return acc / static_cast<double>(binom(f.N, f.k));
}

double gen_prime(const sample_frame& f, double x) {
    validate_frame(f);
    double acc = 0.0;
    for (int m = f.k; m >= 1; --m) acc = acc * x + m * static_cast<double>(term(f, m));
    return acc / static_cast<double>(binom(f.N, f.k));
}

double gen_dd(const sample_frame& f, double x) {
    validate_frame(f);
    double acc = 0.0;
    for (int m = f.k; m >= 2; --m)
        acc = acc * x + static_cast<double>(m) * (m - 1) * static_cast<double>(term(f, m));
    return acc / static_cast<double>(binom(f.N, f.k));
}

int mode(const sample_frame& f) {
    validate_frame(f);
    const int lo = std::max(0, f.k - (f.N - f.n));
    const int hi = std::min(f.n, f.k);
    int best = lo;
    std::uint64_t best_num = term(f, lo);
    for (int m = lo + 1; m <= hi; ++m) {
        const std::uint64_t num = term(f, m);
        if (num > best_num) {  // exact comparison; ties keep the smaller index
            best = m;
            best_num = num;
        }
    }
    return best;
}

double dominance_gap(int N, int n, int k, int l) {
    const sample_frame fk{N, n, k};
    const sample_frame fk1{N, n, k + 1};
    validate_frame(fk);
    validate_frame(fk1);
    if (l < 0 || l > k)
        fail(errc::validation, "frame", "l must lie in [0, k], got " + std::to_string(l));
    std::uint64_t a = 0, b = 0;
    for (int m = 0; m <= l; ++m) {
        a += term(fk, m);
        b += term(fk1, m);
    }
    const std::uint64_t ck = binom(N, k);
    const std::uint64_t ck1 = binom(N, k + 1);
    // a/ck - b/ck1 with the numerator formed exactly; a ck1 and b ck both
    // fit in 128 bits because a <= ck and b <= ck1.
    const __int128 num = static_cast<__int128>(static_cast<unsigned __int128>(a) * ck1) -
                         static_cast<__int128>(static_cast<unsigned __int128>(b) * ck);
    const long double den = static_cast<long double>(ck) * static_cast<long double>(ck1);
    return static_cast<double>(static_cast<long double>(num) / den);
}

double psi(int N, int n, int k, double x) {
    const sample_frame fk{N, n, k};
    const sample_frame fk1{N, n, k + 1};
    validate_frame(fk);
    validate_frame(fk1);
    return pmf(fk, 1) * gen_prime(fk1, x) - pmf(fk1, 1) * gen_prime(fk, x);
}

gauss_identity gauss_identity_residual(const sample_frame& f, double x) {
    validate_frame(f);
    const int c0 = f.N - f.n - f.k + 1;
    if (c0 < 1) return {false, 0.0};
    // 2F1(-n, -k; c0; x) terminates after min(n, k) + 1 terms.
    double sum = 1.0;
    double t = 1.0;
    const int imax = std::min(f.n, f.k);
    for (int i = 0; i < imax; ++i) {
        t *= static_cast<double>(f.n - i) * static_cast<double>(f.k - i) /
             (static_cast<double>(c0 + i) * static_cast<double>(i + 1)) * x;
        sum += t;
    }
    const double pref = static_cast<double>(binom(f.N - f.n, f.k)) /
                        static_cast<double>(binom(f.N, f.k));
    return {true, std::fabs(gen(f, x) - pref * sum)};
}

}  // namespace searchmkt
