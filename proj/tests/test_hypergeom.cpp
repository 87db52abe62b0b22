#include <doctest.h>

#include <cmath>
#include <vector>

#include "searchmkt/errors.hpp"
#include "searchmkt/hypergeom.hpp"

using namespace searchmkt;

TEST_CASE("binomials are exact") {
    CHECK(binom(0, 0) == 1);
    CHECK(binom(5, 2) == 10);
    CHECK(binom(64, 32) == 1832624140942590534ULL);
    CHECK(binom(5, 7) == 0);
    CHECK(binom(5, -1) == 0);
}

TEST_CASE("observation pmf matches hand values") {
    CHECK(pmf({3, 2, 2}, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(pmf({10, 9, 3}, 1) == 0.0);
    CHECK(gen({3, 2, 2}, 0.5) == doctest::Approx(5.0 / 12.0).epsilon(1e-15));
    CHECK(gen_prime({3, 2, 2}, 1.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("frame validation") {
    CHECK_THROWS_AS(pmf({2, 1, 1}, 0), solver_error);
    CHECK_THROWS_AS(pmf({65, 1, 1}, 0), solver_error);
    CHECK_THROWS_AS(pmf({5, 6, 1}, 0), solver_error);
    CHECK_THROWS_AS(pmf({5, 2, 0}, 0), solver_error);
    CHECK_THROWS_AS(pmf({5, 2, 2}, 3), solver_error);
}

TEST_CASE("mode handles ties and edge cases") {
    CHECK(mode({10, 5, 3}) == 1);  // integer tie; smaller maximizer wins
    CHECK(mode({10, 1, 3}) == 0);
    CHECK(mode({3, 2, 2}) == 1);
}

TEST_CASE("dominance gap and psi hand values") {
    CHECK(dominance_gap(3, 2, 1, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(psi(3, 2, 1, 1.0) == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("series identity examples") {
    const gauss_identity ok = gauss_identity_residual({5, 2, 2}, 0.3);
    CHECK(ok.applicable);
    CHECK(std::fabs(ok.residual) < 1e-14);
    const gauss_identity no = gauss_identity_residual({3, 2, 2}, 1.0);
    CHECK_FALSE(no.applicable);
}

TEST_CASE("exhaustive identities for small N") {
    for (int N = 3; N <= 12; ++N) {
        for (int n = 0; n <= N; ++n) {
            for (int k = 1; k <= N; ++k) {
                const sample_frame f{N, n, k};

                double sum = 0.0;
                for (int m = 0; m <= k; ++m) sum += pmf(f, m);
                CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
                CHECK(gen(f, 1.0) == doctest::Approx(1.0).epsilon(1e-12));

                // single-peaked in m: no rise after the first fall
                bool fell = false;
                bool peaked = true;
                for (int m = 1; m <= k; ++m) {
                    const double d = pmf(f, m) - pmf(f, m - 1);
                    if (d > 1e-15 && fell) peaked = false;
                    if (d < -1e-15) fell = true;
                }
                CHECK(peaked);

                // mode agrees with direct enumeration
                int arg = 0;
                double best = pmf(f, 0);
                for (int m = 1; m <= k; ++m) {
                    if (pmf(f, m) > best) {
                        best = pmf(f, m);
                        arg = m;
                    }
                }
                CHECK(mode(f) == arg);

                if (k + 1 <= N) {
                    for (int l = 0; l <= k; ++l) CHECK(dominance_gap(N, n, k, l) >= 0.0);
                    for (int i = 0; i <= 10; ++i) {
                        const double x = 0.1 * i;
                        CHECK(psi(N, n, k, x) >= -1e-15);
                    }
                }

                for (int i = 0; i <= 10; ++i) {
                    const double x = 0.1 * i;
                    const gauss_identity g = gauss_identity_residual(f, x);
                    CHECK(g.applicable == (N - n - k + 1 >= 1));
                    if (g.applicable) CHECK(std::fabs(g.residual) < 1e-12);
                }
            }
        }
    }
}
