#include <doctest.h>

#include <random>

#include "apwen/gf2.hpp"
#include "apwen/oracle.hpp"
#include "apwen/pattern.hpp"

using namespace apwen;

TEST_CASE("exact Hankel determinants for +--") {
    Pattern p = Pattern::parse("+--");
    std::vector<long> want = {1, -2, -4, 8, 16, -32, -64, 128, 4864, -9728};
    for (int n = 1; n <= 10; ++n) CHECK(oracle::hankel_exact(p, n) == want[n - 1]);
}

TEST_CASE("Hankel determinants modulo a prime match the exact values") {
    Pattern p = Pattern::parse("+--");
    for (uint64_t q : {2ull, 3ull, 5ull, 1000003ull}) {
        for (int n = 1; n <= 64; ++n) {
            mpz_class r = oracle::hankel_exact(p, n) % mpz_class(q);
            if (r < 0) r += q;
            CHECK(oracle::hankel_mod(p, n, q) == r.get_ui());
        }
    }
}

TEST_CASE("residue patterns of the +-- determinants") {
    Pattern p = Pattern::parse("+--");
    for (int n = 1; n <= 40; ++n) {
        uint64_t m3 = oracle::hankel_mod(p, n, 3);
        CHECK(m3 == ((n % 4 == 1 || n % 4 == 2) ? 1 : 2));
        mpz_class ratio = oracle::hankel_ratio_exact(p, n);
        mpz_class m6 = ratio % 6;
        if (m6 < 0) m6 += 6;
        CHECK(m6 == ((n % 4 == 0 || n % 4 == 1) ? 1 : 5));
    }
}

TEST_CASE("permanent and determinant agree modulo 2") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        int m = 1 + int(rng() % 8);
        std::vector<std::vector<int>> a(m, std::vector<int>(m));
        Gf2Matrix g(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                a[i][j] = int(rng() & 1);
                g.set(i, j, a[i][j]);
            }
        // brute permanent mod 2
        std::vector<int> perm(m);
        for (int i = 0; i < m; ++i) perm[i] = i;
        int per = 0;
        do {
            int prod = 1;
            for (int i = 0; i < m; ++i) prod &= a[i][perm[i]];
            per ^= prod;
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(g.det() == per);
    }
}

TEST_CASE("difference-matrix bit equals the exact normalized determinant parity") {
    for (const char* s : {"+--", "+---+", "+-", "+-+"}) {
        Pattern p = Pattern::parse(s);
        for (int m = 1; m <= 48; ++m) {
            mpz_class h = oracle::hankel_exact(p, m);
            mpz_class pow2 = mpz_class(1) << (m - 1);
            REQUIRE(h % pow2 == 0);
            mpz_class ratio = h / pow2;
            CHECK(oracle::apwenian_bit(p, m) == int(mpz_odd_p(ratio.get_mpz_t()) != 0));
        }
    }
}

TEST_CASE("counting oracle parities match brute-force counts") {
    for (const char* s : {"+--", "+---+", "+--+-++++--"}) {
        Pattern p = Pattern::parse(s);
        for (Family fam : {Family::J, Family::K}) {
            if (fam == Family::K && p.last_sign() == 1) continue;
            for (int m = 1; m <= 9; ++m)
                for (int l = 0; l <= m; ++l)
                    CHECK(oracle::count_parity(p, fam, m, l) ==
                          int(oracle::count_exact(p, fam, m, l) & 1));
        }
    }
}

TEST_CASE("small aggregate counts for +-- and +---+") {
    Pattern p3 = Pattern::parse("+--");
    auto j1 = oracle::exact_aggregates(p3, Family::J, 1);
    CHECK(j1.at_l_m1 == 1);                                          // Z_1
    CHECK(j1.sum_all_l + j1.sum_all_l * j1.at_l_m + j1.at_l_m == 3);  // T_1
    auto k1 = oracle::exact_aggregates(p3, Family::K, 1);
    CHECK(k1.at_l_m1 == 1);                                          // W_1
    CHECK(k1.sum_all_l + k1.sum_all_l * k1.at_l_m + k1.at_l_m == 1);  // R_1
    auto j2 = oracle::exact_aggregates(p3, Family::J, 2);
    CHECK(j2.at_l_m1 == 1);
    CHECK(j2.sum_all_l + j2.sum_all_l * j2.at_l_m + j2.at_l_m == 1);
    auto k2 = oracle::exact_aggregates(p3, Family::K, 2);
    CHECK(k2.at_l_m1 == 1);
    CHECK(k2.sum_all_l + k2.sum_all_l * k2.at_l_m + k2.at_l_m == 7);

    Pattern p5 = Pattern::parse("+---+");
    auto j4 = oracle::exact_aggregates(p5, Family::J, 4);
    CHECK(j4.at_l_m1 == 5);                                            // Z_4
    CHECK(j4.sum_all_l + j4.sum_all_l * j4.at_l_m + j4.at_l_m == 129);  // T_4
    auto j3 = oracle::exact_aggregates(p5, Family::J, 3);
    CHECK(j3.sum_all_l + j3.sum_all_l * j3.at_l_m + j3.at_l_m == 9);   // T_3
}

TEST_CASE("aggregate count tables for the length-11 pattern") {
    Pattern p = Pattern::parse("+--+-++++--");
    std::vector<uint64_t> zs = {1, 1, 3, 11, 13, 25, 39, 117, 739, 4431};
    std::vector<uint64_t> ts = {3, 5, 47, 237, 487, 419, 3503, 66905, 3527039};
    std::vector<uint64_t> ws = {1, 1, 1, 1, 5, 25, 177, 1091, 3839};
    std::vector<uint64_t> rs = {1, 5, 1, 11, 107, 5151, 198769, 4802755};
    for (int m = 1; m <= 10; ++m)
        CHECK(oracle::count_exact(p, Family::J, m, m - 1) == zs[m - 1]);
    for (int m = 1; m <= 9; ++m) {
        auto a = oracle::exact_aggregates(p, Family::J, m);
        CHECK(a.sum_all_l + a.sum_all_l * a.at_l_m + a.at_l_m == ts[m - 1]);
        CHECK(oracle::count_exact(p, Family::K, m, m - 1) == ws[m - 1]);
    }
    for (int m = 1; m <= 8; ++m) {
        auto a = oracle::exact_aggregates(p, Family::K, m);
        CHECK(a.sum_all_l + a.sum_all_l * a.at_l_m + a.at_l_m == rs[m - 1]);
    }
}

TEST_CASE("state parity vector is consistent with the aggregates") {
    for (const char* s : {"+--", "+---+", "++", "+-"}) {
        Pattern p = Pattern::parse(s);
        for (int n = 1; n <= 8; ++n) {
            StateVec sv = oracle::state_parity(p, n);
            auto j = oracle::exact_aggregates(p, Family::J, n);
            CHECK(sv.x() == int(j.sum_all_l & 1));
            CHECK(sv.y() == int(j.at_l_m & 1));
            CHECK(sv.z() == int(j.at_l_m1 & 1));
            if (p.last_sign() == -1) {
                auto k = oracle::exact_aggregates(p, Family::K, n);
                CHECK(sv.u() == int(k.sum_all_l & 1));
                CHECK(sv.v() == int(k.at_l_m & 1));
                CHECK(sv.w() == int(k.at_l_m1 & 1));
            }
        }
    }
}
