#include <doctest.h>

#include <cmath>
#include <random>

#include "berscan/mat2.hpp"

using namespace berscan;

namespace {

Mat2c random_sl2(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    while (true) {
        const Complex a{u(rng), u(rng)};
        if (std::abs(a) < 0.2) continue;
        const Complex b{u(rng), u(rng)};
        const Complex c{u(rng), u(rng)};
        return Mat2c{a, b, c, (1.0 + b * c) / a};
    }
}

}  // namespace

TEST_CASE("identity composes trivially") {
    const Mat2c i = Mat2c::identity();
    CHECK(max_entry_distance(compose(i, i), i) == 0.0);
}

TEST_CASE("shear composition") {
    const Mat2c upper{1, 1, 0, 1};
    const Mat2c lower{1, 0, 1, 1};
    const Mat2c p = compose(upper, lower);
    CHECK(max_entry_distance(p, Mat2c{2, 1, 1, 1}) == 0.0);
}

TEST_CASE("inverse via adjugate") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        const Mat2c m = random_sl2(rng);
        CHECK(max_entry_distance(compose(m, m.inverse()), Mat2c::identity()) <
              1e-12);
    }
}

TEST_CASE("determinant is multiplicative and trace is cyclic") {
    std::mt19937 rng(8);
    for (int i = 0; i < 500; ++i) {
        const Mat2c m1 = random_sl2(rng);
        const Mat2c m2 = random_sl2(rng);
        CHECK(std::abs(compose(m1, m2).det() - m1.det() * m2.det()) < 1e-12);
        CHECK(std::abs(compose(m1, m2).trace() - compose(m2, m1).trace()) <
              1e-12);
    }
}

TEST_CASE("classification by trace") {
    CHECK(classify(Mat2c{1, 1, 0, 1}).tag == IsometryTag::Parabolic);
    CHECK(classify(Mat2c{2, 0, 0, 0.5}).tag == IsometryTag::Loxodromic);
    CHECK(classify(Mat2c{Complex{0, 1}, 0, 0, Complex{0, -1}}).tag ==
          IsometryTag::Elliptic);
    CHECK(classify(Mat2c::identity()).tag == IsometryTag::IdentityLike);
    CHECK(classify(-Mat2c::identity()).tag == IsometryTag::IdentityLike);
    // Margin reports the distance to the parabolic boundary.
    CHECK(classify(Mat2c{2, 0, 0, 0.5}).margin == doctest::Approx(0.5));
}

TEST_CASE("translation length") {
    const Mat2c m{3, -1, 1, 0};
    CHECK(translation_length(m) ==
          doctest::Approx(2.0 * std::acosh(1.5)).epsilon(1e-12));
    CHECK(translation_length(m) == doctest::Approx(1.9248473002384139));
    CHECK(translation_length(m.inverse()) ==
          doctest::Approx(translation_length(m)));
    const Mat2c neg{-3, -1, 1, 0};
    CHECK(translation_length(neg) == doctest::Approx(translation_length(m)));
    CHECK_THROWS_AS(translation_length(Mat2c{1, 1, 0, 1}), NotHyperbolicError);
    const Mat2c rot{Complex{0, 1}, 0, 0, Complex{0, -1}};
    CHECK_THROWS_AS(translation_length(rot), NotHyperbolicError);
    // Loxodromic with genuinely complex trace is rejected too.
    const Mat2c lox{Complex{3, 0.5}, 0, 0, 1.0 / Complex{3, 0.5}};
    CHECK_THROWS_AS(translation_length(lox), NotHyperbolicError);
}

TEST_CASE("unit normalization picks the hinted square root") {
    const Mat2c scaled{Complex{2, 0}, 0, 0, Complex{2, 0}};
    const Mat2c n = unit_normalized(scaled);
    CHECK(std::abs(n.det() - 1.0) < 1e-14);
    const Mat2c near_minus{-1.01, 0, 0, -1.01};
    const Mat2c hint = -Mat2c::identity();
    const Mat2c m = unit_normalized(near_minus, &hint);
    CHECK(m.a.real() < 0.0);
    CHECK(std::abs(m.det() - 1.0) < 1e-14);
}
