#include <doctest.h>

#include <set>
#include <vector>

#include "apwen/pattern.hpp"

using namespace apwen;

TEST_CASE("sign change sets for small patterns") {
    Pattern p3 = Pattern::parse("+--");
    CHECK(p3.d() == 3);
    CHECK(p3.P() == std::vector<int>{1});
    CHECK(p3.Q() == std::vector<int>{2});

    Pattern p5 = Pattern::parse("+---+");
    CHECK(p5.P() == std::vector<int>{1, 4});
    CHECK(p5.Q() == std::vector<int>{2, 3});

    Pattern pp = Pattern::parse("++");
    CHECK(pp.P().empty());
    CHECK(pp.Q() == std::vector<int>{1});

    CHECK(Pattern::parse("1,-1,-1").text() == "+--");
}

TEST_CASE("parse rejects malformed input") {
    CHECK_THROWS(Pattern::parse("-+"));   // must start with +
    CHECK_THROWS(Pattern::parse("+"));    // too short
    CHECK_THROWS(Pattern::parse("+0-"));
}

TEST_CASE("sequence values for the +- pattern") {
    Pattern tm = Pattern::parse("+-");
    std::vector<int> want = {1, -1, -1, 1, -1, 1, 1, -1};
    for (int k = 0; k < 8; ++k) CHECK(tm.sign_at(k) == want[k]);
}

TEST_CASE("sequence values for +--") {
    Pattern p = Pattern::parse("+--");
    std::vector<int> want = {1, -1, -1, -1, 1, 1, -1, 1, 1};
    for (int k = 0; k < 9; ++k) CHECK(p.sign_at(k) == want[k]);
}

TEST_CASE("membership prefixes of the unsociable sets") {
    Pattern p3 = Pattern::parse("+--");
    std::vector<uint64_t> j3 = {0, 3, 5, 6, 8, 9, 12, 14, 15, 18};
    std::vector<uint64_t> got;
    for (uint64_t t = 0; got.size() < j3.size(); ++t)
        if (p3.in_J(t)) got.push_back(t);
    CHECK(got == j3);

    Pattern p5 = Pattern::parse("+---+");
    std::vector<uint64_t> j5 = {0, 3, 4, 5, 8, 10, 13, 15, 18, 19, 20};
    got.clear();
    for (uint64_t t = 0; got.size() < j5.size(); ++t)
        if (p5.in_J(t)) got.push_back(t);
    CHECK(got == j5);

    Pattern p11 = Pattern::parse("+--+-++++--");
    std::vector<uint64_t> k11 = {1, 5, 6, 7, 9, 10, 12, 16};
    got.clear();
    for (uint64_t t = 0; got.size() < k11.size(); ++t)
        if (p11.in_K(t)) got.push_back(t);
    CHECK(got == k11);
}

TEST_CASE("arithmetic membership rule matches the direct definition") {
    for (const char* s : {"+--", "+---+", "+--+-++++--", "+-", "++", "+-+",
                          "+--+-----+--+"}) {
        Pattern p = Pattern::parse(s);
        for (uint64_t t = 0; t <= 100000; ++t) {
            if (p.in_J(t) != p.in_J_arith(t)) {
                CAPTURE(s);
                CAPTURE(t);
                CHECK(p.in_J(t) == p.in_J_arith(t));
                return;
            }
        }
    }
    CHECK(true);
}

TEST_CASE("J and K partition the naturals when the last sign is negative") {
    Pattern p = Pattern::parse("+--+-++++--");
    REQUIRE(p.last_sign() == -1);
    for (uint64_t t = 0; t <= 20000; ++t) {
        CHECK(p.in_J(t) != p.in_K(t));
    }
    Pattern pos = Pattern::parse("+---+");
    REQUIRE(pos.last_sign() == 1);
    for (uint64_t t = 0; t <= 20000; ++t) CHECK(pos.in_K(t) == !pos.in_J(t));
}

TEST_CASE("digit-product signs are multiplicative over blocks") {
    // f(dn+i) = v_i f(n) is the defining self-similarity
    for (const char* s : {"+--", "+---+", "+--+-++++--"}) {
        Pattern p = Pattern::parse(s);
        for (uint64_t n = 0; n <= 300; ++n)
            for (int i = 0; i < p.d(); ++i)
                CHECK(p.sign_at(p.d() * n + i) == p.coeff(i) * p.sign_at(n));
    }
}
