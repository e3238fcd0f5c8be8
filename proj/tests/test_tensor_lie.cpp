#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracle_word_algebra.hpp"
#include "roughflow/errors.hpp"
#include "roughflow/tensor_lie.hpp"

using namespace roughflow;

namespace {

TensorElement random_lie(TensorShape shape, const LyndonBasis& basis, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    TensorElement lie(shape);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        TensorElement term = basis.expansion(k);
        term *= dist(gen);
        lie += term;
    }
    return lie;
}

TensorElement random_tensor(TensorShape shape, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    TensorElement t(shape);
    for (double& c : t.coeffs()) c = dist(gen);
    return t;
}

oracle::Series to_oracle(const TensorElement& t) {
    oracle::Series s(t.depth());
    const int ell = t.alphabet_size();
    for (int n = 0; n <= t.depth(); ++n) {
        auto ln = t.level(n);
        for (std::size_t idx = 0; idx < ln.size(); ++idx) {
            if (ln[idx] == 0.0) continue;
            oracle::Word w(n);
            std::size_t rem = idx;
            for (int j = n - 1; j >= 0; --j) {
                w[j] = static_cast<int>(rem % ell) + 1;
                rem /= ell;
            }
            s.terms[w] = ln[idx];
        }
    }
    return s;
}

double max_diff_vs_oracle(const TensorElement& t, const oracle::Series& s) {
    oracle::Series mine = to_oracle(t);
    double m = 0.0;
    for (const auto& [w, c] : s.terms) m = std::max(m, std::abs(c - oracle::coeff(mine, w)));
    for (const auto& [w, c] : mine.terms) m = std::max(m, std::abs(c - oracle::coeff(s, w)));
    return m;
}

}  // namespace

TEST_CASE("shape bookkeeping") {
    TensorShape sh(2, 3);
    CHECK(sh.level_size(0) == 1);
    CHECK(sh.level_size(3) == 8);
    CHECK(sh.total_size() == 1 + 2 + 4 + 8);
    CHECK_THROWS_AS(TensorShape(2, 6), std::invalid_argument);
    CHECK_THROWS_AS(TensorShape(0, 2), std::invalid_argument);
}

TEST_CASE("product of 1+e1 and 1+e2 at depth 2") {
    TensorShape sh(2, 2);
    TensorElement a = TensorElement::unit(sh);
    a += TensorElement::letter(sh, 1);
    TensorElement b = TensorElement::unit(sh);
    b += TensorElement::letter(sh, 2);
    TensorElement c = tensor_mul(a, b);
    CHECK(c.scalar() == doctest::Approx(1.0));
    CHECK(c.coeff({1}) == doctest::Approx(1.0));
    CHECK(c.coeff({2}) == doctest::Approx(1.0));
    CHECK(c.coeff({1, 2}) == doctest::Approx(1.0));
    CHECK(c.coeff({2, 1}) == doctest::Approx(0.0));
    CHECK(c.coeff({1, 1}) == doctest::Approx(0.0));
}

TEST_CASE("unit is the multiplicative identity") {
    std::mt19937_64 gen(7);
    TensorShape sh(3, 3);
    TensorElement a = random_tensor(sh, gen);
    TensorElement u = TensorElement::unit(sh);
    TensorElement au = tensor_mul(a, u);
    TensorElement ua = tensor_mul(u, a);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        CHECK(au.coeffs()[i] == doctest::Approx(a.coeffs()[i]).epsilon(1e-14));
        CHECK(ua.coeffs()[i] == doctest::Approx(a.coeffs()[i]).epsilon(1e-14));
    }
}

TEST_CASE("one-letter exponentials compose additively") {
    TensorShape sh(2, 3);
    const double s = 0.35, t = -1.2;
    TensorElement es = TensorElement::letter(sh, 1);
    es *= s;
    TensorElement et = TensorElement::letter(sh, 1);
    et *= t;
    TensorElement est = TensorElement::letter(sh, 1);
    est *= s + t;
    TensorElement lhs = tensor_mul(tensor_exp(es), tensor_exp(et));
    TensorElement rhs = tensor_exp(est);
    lhs -= rhs;
    CHECK(lhs.max_norm() <= 1e-12);
}

TEST_CASE("tensor_mul associative on random triples") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 50; ++trial) {
        TensorShape sh(trial % 2 ? 2 : 3, 1 + trial % 4);
        TensorElement a = random_tensor(sh, gen);
        TensorElement b = random_tensor(sh, gen);
        TensorElement c = random_tensor(sh, gen);
        TensorElement lhs = tensor_mul(tensor_mul(a, b), c);
        TensorElement rhs = tensor_mul(a, tensor_mul(b, c));
        lhs -= rhs;
        CHECK(lhs.max_norm() <= 1e-12);
    }
}

TEST_CASE("exp of a letter at depth 2") {
    TensorShape sh(2, 2);
    TensorElement e = tensor_exp(TensorElement::letter(sh, 1));
    CHECK(e.scalar() == doctest::Approx(1.0));
    CHECK(e.coeff({1}) == doctest::Approx(1.0));
    CHECK(e.coeff({1, 1}) == doctest::Approx(0.5));
    CHECK(e.coeff({1, 2}) == doctest::Approx(0.0));
}

TEST_CASE("exp(0) is the unit, log(unit) is zero") {
    TensorShape sh(3, 4);
    TensorElement z(sh);
    TensorElement e = tensor_exp(z);
    CHECK(e.scalar() == doctest::Approx(1.0));
    CHECK(e.max_norm_positive_levels() == doctest::Approx(0.0));
    TensorElement l = tensor_log(TensorElement::unit(sh));
    CHECK(l.max_norm() == doctest::Approx(0.0));
}

TEST_CASE("exp matches the sparse word-algebra oracle") {
    TensorShape sh(2, 3);
    // a = e1 + [e1, e2]
    TensorElement a = TensorElement::letter(sh, 1);
    std::vector<int> w{1, 2};
    a += bracket_word_expansion(sh, w);
    oracle::Series oa = to_oracle(a);
    CHECK(max_diff_vs_oracle(tensor_exp(a), oracle::exp(oa)) <= 1e-12);
}

TEST_CASE("mul matches the oracle on random dense elements") {
    std::mt19937_64 gen(23);
    for (int trial = 0; trial < 10; ++trial) {
        TensorShape sh(2, 4);
        TensorElement a = random_tensor(sh, gen);
        TensorElement b = random_tensor(sh, gen);
        CHECK(max_diff_vs_oracle(tensor_mul(a, b), oracle::mul(to_oracle(a), to_oracle(b))) <= 1e-12);
    }
}

TEST_CASE("exp/log round trips on random Lie and group elements") {
    std::mt19937_64 gen(5);
    for (int depth = 1; depth <= 4; ++depth) {
        for (int ell = 1; ell <= 3; ++ell) {
            TensorShape sh(ell, depth);
            LyndonBasis basis(sh);
            for (int trial = 0; trial < 20; ++trial) {
                TensorElement lie = random_lie(sh, basis, gen);
                TensorElement back = tensor_log(tensor_exp(lie));
                back -= lie;
                CHECK(back.max_norm() <= 1e-12);

                TensorElement grp = random_tensor(sh, gen);
                grp.scalar() = 1.0;
                TensorElement back2 = tensor_exp(tensor_log(grp));
                back2 -= grp;
                CHECK(back2.max_norm() <= 1e-12);
            }
        }
    }
}

TEST_CASE("errors on bad scalar parts") {
    TensorShape sh(2, 2);
    TensorElement a = TensorElement::unit(sh);
    CHECK_THROWS_AS(tensor_exp(a), std::invalid_argument);
    TensorElement b(sh);
    CHECK_THROWS_AS(tensor_log(b), std::invalid_argument);
}

TEST_CASE("group inverse") {
    std::mt19937_64 gen(31);
    TensorShape sh(2, 4);
    TensorElement g = random_tensor(sh, gen);
    g.scalar() = 1.0;
    TensorElement prod = tensor_mul(g, tensor_inverse(g));
    prod -= TensorElement::unit(sh);
    CHECK(prod.max_norm() <= 1e-12);
}

TEST_CASE("level-2 log of a weak geometric element is the antisymmetric part") {
    TensorShape sh(2, 2);
    // group element (1, X, XX) with Sym(XX) = X (x) X / 2
    const double x1 = 0.7, x2 = -0.4, area = 0.3;
    TensorElement g = TensorElement::unit(sh);
    g.coeff({1}) = x1;
    g.coeff({2}) = x2;
    g.coeff({1, 1}) = 0.5 * x1 * x1;
    g.coeff({2, 2}) = 0.5 * x2 * x2;
    g.coeff({1, 2}) = 0.5 * x1 * x2 + area;
    g.coeff({2, 1}) = 0.5 * x1 * x2 - area;
    TensorElement lg = tensor_log(g);
    CHECK(lg.coeff({1, 2}) == doctest::Approx(area).epsilon(1e-12));
    CHECK(lg.coeff({2, 1}) == doctest::Approx(-area).epsilon(1e-12));
    CHECK(lg.coeff({1, 1}) == doctest::Approx(0.0));
    CHECK(lg.coeff({2, 2}) == doctest::Approx(0.0));
}

TEST_CASE("bracket word expansions") {
    TensorShape sh(3, 3);
    std::vector<int> w1{1};
    TensorElement b1 = bracket_word_expansion(sh, w1);
    CHECK(b1.coeff({1}) == doctest::Approx(1.0));

    std::vector<int> w12{1, 2};
    TensorElement b12 = bracket_word_expansion(sh, w12);
    CHECK(b12.coeff({1, 2}) == doctest::Approx(1.0));
    CHECK(b12.coeff({2, 1}) == doctest::Approx(-1.0));

    std::vector<int> w123{1, 2, 3};
    TensorElement b123 = bracket_word_expansion(sh, w123);
    int nonzero = 0;
    for (double c : b123.level(3))
        if (c != 0.0) {
            ++nonzero;
            CHECK(std::abs(c) == doctest::Approx(1.0));
        }
    CHECK(nonzero == 4);
    // against the oracle
    oracle::Series s = oracle::bracket(
        oracle::Series::letter(3, 1),
        oracle::bracket(oracle::Series::letter(3, 2), oracle::Series::letter(3, 3)));
    CHECK(max_diff_vs_oracle(b123, s) <= 1e-12);

    std::vector<int> bad{1, 4};
    CHECK_THROWS_AS(bracket_word_expansion(sh, bad), std::invalid_argument);
}

TEST_CASE("Jacobi identity for expanded brackets") {
    std::mt19937_64 gen(17);
    std::uniform_int_distribution<int> letters(1, 3);
    TensorShape sh(3, 3);
    for (int trial = 0; trial < 25; ++trial) {
        int i = letters(gen), j = letters(gen), k = letters(gen);
        std::vector<int> a{i, j, k}, b{j, k, i}, c{k, i, j};
        TensorElement sum = bracket_word_expansion(sh, a);
        sum += bracket_word_expansion(sh, b);
        sum += bracket_word_expansion(sh, c);
        CHECK(sum.max_norm() <= 1e-12);
    }
}

TEST_CASE("Lyndon word counts match necklace dimensions") {
    // ell=2: 2,1,2,3,6 ; ell=3: 3,3,8,18,48
    LyndonBasis b2(TensorShape(2, 5));
    CHECK(b2.words_at_level(1) == 2);
    CHECK(b2.words_at_level(2) == 1);
    CHECK(b2.words_at_level(3) == 2);
    CHECK(b2.words_at_level(4) == 3);
    CHECK(b2.words_at_level(5) == 6);
    LyndonBasis b3(TensorShape(3, 4));
    CHECK(b3.words_at_level(1) == 3);
    CHECK(b3.words_at_level(2) == 3);
    CHECK(b3.words_at_level(3) == 8);
    CHECK(b3.words_at_level(4) == 18);
}

TEST_CASE("Lyndon expansions are unitriangular in lex order") {
    LyndonBasis basis(TensorShape(2, 5));
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const auto& w = basis.word(k);
        const TensorElement& ex = basis.expansion(k);
        CHECK(ex.coeff(std::span<const int>(w.data(), w.size())) == doctest::Approx(1.0));
        // nonzero coefficients only at the word's own level
        for (int n = 0; n <= ex.depth(); ++n) {
            if (n == static_cast<int>(w.size())) continue;
            for (double c : ex.level(n)) CHECK(c == 0.0);
        }
    }
}

TEST_CASE("lyndon_coords on simple elements") {
    TensorShape sh(2, 2);
    LyndonBasis basis(sh);
    SUBCASE("single letter") {
        TensorElement e1 = TensorElement::letter(sh, 1);
        LyndonCoords lc = lyndon_coords(e1, basis);
        CHECK(lc.residual <= 1e-15);
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const double expect = basis.word(k) == std::vector<int>{1} ? 1.0 : 0.0;
            CHECK(lc.coeffs[k] == doctest::Approx(expect));
        }
    }
    SUBCASE("antisymmetric level-2 element") {
        const double area = -0.8;
        TensorElement a(sh);
        a.coeff({1, 2}) = area;
        a.coeff({2, 1}) = -area;
        LyndonCoords lc = lyndon_coords(a, basis);
        CHECK(lc.residual <= 1e-15);
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const double expect = basis.word(k) == std::vector<int>{1, 2} ? area : 0.0;
            CHECK(lc.coeffs[k] == doctest::Approx(expect));
        }
    }
}

TEST_CASE("lyndon_coords round trip on random Lie elements") {
    std::mt19937_64 gen(41);
    TensorShape sh(3, 4);
    LyndonBasis basis(sh);
    for (int trial = 0; trial < 20; ++trial) {
        TensorElement lie = random_lie(sh, basis, gen);
        LyndonCoords lc = lyndon_coords(lie, basis);
        CHECK(lc.residual <= 1e-10);
        TensorElement rebuilt(sh);
        for (std::size_t k = 0; k < basis.size(); ++k) {
            TensorElement term = basis.expansion(k);
            term *= lc.coeffs[k];
            rebuilt += term;
        }
        rebuilt -= lie;
        CHECK(rebuilt.max_norm() <= 1e-10);
    }
}

TEST_CASE("lyndon_coords rejects non-Lie elements") {
    TensorShape sh(2, 2);
    LyndonBasis basis(sh);
    TensorElement t(sh);
    t.coeff({1, 1}) = 1.0;  // symmetric level-2 parts are not Lie
    CHECK_THROWS_AS(lyndon_coords(t, basis), NotLieElementError);
    try {
        lyndon_coords(t, basis);
    } catch (const NotLieElementError& e) {
        CHECK(e.residual == doctest::Approx(1.0));
    }
}

TEST_CASE("bracket expansions lie in the Lie subspace") {
    TensorShape sh(2, 4);
    LyndonBasis basis(sh);
    std::vector<int> w{1, 2, 2, 1};
    TensorElement b = bracket_word_expansion(sh, w);
    LyndonCoords lc = lyndon_coords(b, basis, 1e-12);
    CHECK(lc.residual <= 1e-12);
}

TEST_CASE("textual dump format") {
    TensorShape sh(2, 2);
    TensorElement t = TensorElement::unit(sh);
    t.coeff({2}) = 0.5;
    t.coeff({1, 2}) = -1.0;
    std::string s = dump_tensor(t);
    CHECK(s == "I= value=1\nI=2 value=0.5\nI=1.2 value=-1\n");
}
