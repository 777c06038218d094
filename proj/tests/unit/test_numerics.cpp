#include <doctest.h>

#include <random>

#include "tightload/rational.hpp"
#include "tightload/sparse_vector.hpp"

using namespace tightload;

TEST_CASE("rational: canonical form and parsing") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6).to_string() == "-1/2");
  CHECK(Rational(6, 3).to_string() == "2");
  CHECK(Rational(6, 3).is_integer());
  CHECK(Rational::parse("-10/4") == Rational(-5, 2));
  CHECK(Rational::parse("0").is_zero());
  CHECK(Rational::parse("0/7").to_string() == "0");
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1.5"), ParseError);
  CHECK_THROWS_AS(Rational::parse(""), ParseError);
  CHECK_THROWS_AS(Rational::parse("+3"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1/-2"), ParseError);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational: arithmetic is exact") {
  const Rational a(1, 3);
  const Rational b(-2, 7);
  CHECK(a + b == Rational(1, 21));
  CHECK(a - b == Rational(13, 21));
  CHECK(a * b == Rational(-2, 21));
  CHECK(a / b == Rational(-7, 6));
  CHECK(-a == Rational(-1, 3));
  CHECK(b < a);
  CHECK_THROWS_AS(a / Rational(0), std::domain_error);
  // 1/3 summed three times is exactly 1; no drift.
  CHECK(a + a + a == Rational(1));
}

TEST_CASE("rational: big values survive") {
  Rational r(1);
  for (int i = 0; i < 40; ++i) r *= Rational(1000003, 999983);
  for (int i = 0; i < 40; ++i) r /= Rational(1000003, 999983);
  CHECK(r == Rational(1));
  CHECK(Rational::parse(Rational(123456789, 1000).to_string()) == Rational(123456789, 1000));
}

TEST_CASE("sparse vector: add_scaled") {
  CHECK(add_scaled(SparseVector{{1, 1}}, 1, SparseVector{{1, -1}}).empty());
  const SparseVector u{{2, 5}, {7, Rational(1, 2)}};
  CHECK(add_scaled(u, 0, SparseVector{{3, 1}}) == u);
  const auto w = add_scaled(SparseVector{{1, 1}, {2, 1}}, -1, SparseVector{{2, 1}, {3, 1}});
  CHECK(w == SparseVector{{1, 1}, {3, -1}});
  CHECK(w.support() == std::vector<Index>{1, 3});
}

TEST_CASE("sparse vector: zeros never stored") {
  SparseVector v{{1, 0}, {2, 3}};
  CHECK(v.size() == 1);
  v.set(2, 0);
  CHECK(v.empty());
  v.set(4, Rational(-1, 2));
  CHECK(v.min_index() == 4);
  CHECK(v.max_index() == 4);
  CHECK(v.to_string() == "{4:-1/2}");
}

TEST_CASE("sparse vector: add_scaled matches a dense oracle") {
  std::mt19937_64 rng(17);
  auto small = [&]() { return Rational(static_cast<std::int64_t>(rng() % 7) - 3, 1 + static_cast<std::int64_t>(rng() % 4)); };
  for (int round = 0; round < 200; ++round) {
    std::vector<Rational> du(9), dv(9);
    SparseVector u, v;
    for (Index j = 1; j <= 8; ++j) {
      du[j] = small();
      dv[j] = small();
      u.set(j, du[j]);
      v.set(j, dv[j]);
    }
    const Rational c = small();
    const auto w = add_scaled(u, c, v);
    for (Index j = 1; j <= 8; ++j) {
      CHECK(w.get(j) == du[j] + c * dv[j]);
      CHECK(w.contains(j) == !(du[j] + c * dv[j]).is_zero());
    }
  }
}

TEST_CASE("dot") {
  CHECK(dot(SparseVector{{1, 1}, {2, -1}}, Assignment::constant(1)).is_zero());
  CHECK(dot(SparseVector{}, Assignment::sparse({})).is_zero());
  const auto x = Assignment::sparse({{1, 1}, {3, 4}});
  CHECK(dot(SparseVector{{1, 2}, {3, Rational(1, 2)}}, x) == Rational(4));
  CHECK_THROWS_AS(dot(SparseVector{{2, 1}}, x), UnderSpecifiedAssignment);
  CHECK_THROWS_AS(dot(SparseVector{{4, 1}}, Assignment::dense({1, 2, 3})), UnderSpecifiedAssignment);
}

TEST_CASE("unit vector: delta property") {
  CHECK(unit_vector(1) == SparseVector{{1, 1}});
  CHECK(unit_vector(5) == SparseVector{{5, 1}});
  const auto x = Assignment::dense({Rational(3), Rational(-1, 2), Rational(9, 4)});
  for (Index j = 1; j <= 3; ++j) CHECK(dot(unit_vector(j), x) == *x.at(j));
}
