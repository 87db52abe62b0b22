#pragma once

#include <cstdint>

// Observation-count kernel.
//
// A buyer samples k of N firms without replacement while n of them carry the
// product.  The number m of stocked firms in the sample is hypergeometric,
//
//     a_{nk,m} = C(N-n, k-m) C(n, m) / C(N, k),
//
// with C(i, j) = 0 whenever j < 0 or j > i.  gen is the probability
// generating function sum_m a_{nk,m} x^m and gen_prime / gen_dd are its
// first two derivatives in x.

namespace searchmkt {

inline constexpr int max_firms = 64;  // keeps every C(N, k) exact in 64 bits

struct sample_frame {
    int N = 0;
    int n = 0;
    int k = 0;
};

void validate_frame(const sample_frame& f);

// Exact binomial coefficient; zero outside the admissible range.
std::uint64_t binom(int a, int b);

double pmf(const sample_frame& f, int m);
double gen(const sample_frame& f, double x);
double gen_prime(const sample_frame& f, double x);
double gen_dd(const sample_frame& f, double x);

// Smallest maximizer of m -> pmf(f, m).
int mode(const sample_frame& f);

// sum_{m<=l} a_{nk,m} - sum_{m<=l} a_{nk+1,m}.  The difference is assembled
// in exact integer arithmetic before conversion, so the sign is never a
// rounding artifact; it is nonnegative for every admissible frame.
double dominance_gap(int N, int n, int k, int l);

// psi(x) = a_{nk,1} gen'_{nk+1}(x) - a_{nk+1,1} gen'_{nk}(x).
// Vanishes at x = 0 and is positive on (0, 1].
double psi(int N, int n, int k, double x);

struct gauss_identity {
    bool applicable = false;  // requires N - n - k + 1 >= 1
    double residual = 0.0;
};

// Compares gen(f, x) against C(N-n, k)/C(N, k) * 2F1(-n, -k; N-n-k+1; x).
gauss_identity gauss_identity_residual(const sample_frame& f, double x);

}  // namespace searchmkt
