#include <doctest.h>

#include "helpers.hpp"
#include "tightload/corpus.hpp"
#include "tightload/loader.hpp"
#include "tightload/tightness.hpp"

using namespace tightload;
using tl_test::dense;

TEST_CASE("construct_injection_finite") {
  const auto id = construct_injection_finite(FiniteMatrix::identity(2));
  REQUIRE(std::holds_alternative<Injection>(id));
  CHECK(std::get<Injection>(id).phi == std::map<Index, Index>{{1, 1}, {2, 2}});

  const auto a = dense({{0, 1}, {1, 1}});
  const auto r = construct_injection_finite(a);
  REQUIRE(std::holds_alternative<Injection>(r));
  CHECK(std::get<Injection>(r).phi == std::map<Index, Index>{{1, 2}, {2, 1}});
  CHECK(verify_injection(a, std::get<Injection>(r)));

  const auto bad = construct_injection_finite(dense({{1, 1}, {1, 1}}));
  REQUIRE(std::holds_alternative<KernelWitness>(bad));
  CHECK(std::get<KernelWitness>(bad).x == SparseVector{{1, 1}, {2, -1}});
}

TEST_CASE("construct_injection_lazy") {
  const auto id = construct_injection_lazy(family_identity(), 10, 10);
  REQUIRE(std::holds_alternative<PartialInjection>(id));
  for (Index j = 1; j <= 10; ++j) CHECK(std::get<PartialInjection>(id).injection.phi.at(j) == j);

  const auto chain = construct_injection_lazy(family_impediment_chain(), 4, 10);
  REQUIRE(std::holds_alternative<PartialInjection>(chain));
  const auto& p = std::get<PartialInjection>(chain);
  CHECK(p.injection.phi == std::map<Index, Index>{{1, 1}, {2, 2}, {3, 3}, {4, 4}});
  CHECK(verify_injection(family_impediment_chain(), p.injection));

  const auto dj = construct_injection_lazy(family_donjuan(), 1, 1000);
  REQUIRE(std::holds_alternative<InjectionExhausted>(dj));
  CHECK(std::get<InjectionExhausted>(dj).step == 1);
  CHECK(std::get<InjectionExhausted>(dj).rows_consumed == 1000);
}

TEST_CASE("lazy injection is prefix-stable") {
  // phi restricted to columns 1..k never changes as k grows.
  const auto big = construct_injection_lazy(family_impediment_chain(), 30, 200);
  REQUIRE(std::holds_alternative<PartialInjection>(big));
  const auto& full = std::get<PartialInjection>(big).injection.phi;
  for (std::size_t k = 1; k < 30; k += 3) {
    const auto small = construct_injection_lazy(family_impediment_chain(), k, 200);
    REQUIRE(std::holds_alternative<PartialInjection>(small));
    for (const auto& [j, i] : std::get<PartialInjection>(small).injection.phi) CHECK(full.at(j) == i);
  }
}

TEST_CASE("finite and lazy loaders agree on finite input") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto a = family_random_tight(seed, 1 + seed % 7, seed % 4);
    const auto fin = construct_injection_finite(a);
    REQUIRE(std::holds_alternative<Injection>(fin));
    const auto lazy = construct_injection_lazy(LazyMatrix::from_finite(a), a.n_cols(), a.n_rows());
    REQUIRE(std::holds_alternative<PartialInjection>(lazy));
    CHECK(std::get<PartialInjection>(lazy).injection == std::get<Injection>(fin));
  }
}

TEST_CASE("verify_injection") {
  const auto id = FiniteMatrix::identity(2);
  CHECK(verify_injection(id, Injection{{{1, 1}, {2, 2}}}));
  CHECK_FALSE(verify_injection(id, Injection{{{1, 1}, {2, 1}}}));
  CHECK_FALSE(verify_injection(id, Injection{{{1, 2}}}));
  const auto dj = family_donjuan().prefix(3, 4);
  CHECK_FALSE(verify_injection(dj, Injection{{{1, 1}, {2, 1}}}));
  CHECK(verify_injection(dj, Injection{{{2, 1}, {3, 2}, {4, 3}}}));
  CHECK_FALSE(oracle_loaded(dj));
}

TEST_CASE("proudly_diagonalize: examples") {
  const auto empty = proudly_diagonalize(FiniteMatrix::identity(3), 3);
  REQUIRE(std::holds_alternative<DiagonalizationTrace>(empty));
  CHECK(std::get<DiagonalizationTrace>(empty).operation_count() == 0);

  const auto a = dense({{0, 1}, {1, 1}});
  const auto r = proudly_diagonalize(a, 2);
  REQUIRE(std::holds_alternative<DiagonalizationTrace>(r));
  const auto& t = std::get<DiagonalizationTrace>(r);
  REQUIRE(t.steps.size() == 2);
  REQUIRE(t.steps[0].ops.size() == 2);
  CHECK(t.steps[0].ops[0] == RowOperation{ReplaceRow{2, SparseVector{{1, -1}, {2, 1}}}});
  CHECK(t.steps[0].ops[1] == RowOperation{SwapRows{2, 1}});
  CHECK(t.steps[1].ops.empty());
  CHECK(*t.final_checkpoint() == FiniteMatrix::identity(2));
  CHECK(verify_trace(a, t));

  CHECK(std::holds_alternative<KernelWitness>(proudly_diagonalize(dense({{1, 1}, {1, 1}}), 2)));
  CHECK_THROWS_AS(proudly_diagonalize(a, 3), std::invalid_argument);
}

TEST_CASE("verify_trace rejects illegal or inconsistent traces") {
  const auto id = FiniteMatrix::identity(2);
  CHECK(verify_trace(id, DiagonalizationTrace{}));

  DiagonalizationTrace bad;
  bad.steps.push_back(TraceStep{1, {ReplaceRow{1, SparseVector{{2, 1}}}}, FiniteMatrix::from_dense({{0, 1}, {0, 1}})});
  const auto verdict = verify_trace(id, bad);
  CHECK_FALSE(verdict);
  CHECK_FALSE(verdict.diagnostic.empty());

  const auto a = dense({{0, 1}, {1, 1}});
  auto good = std::get<DiagonalizationTrace>(proudly_diagonalize(a, 2));
  auto tampered = good;
  tampered.steps[1].checkpoint.set_entry(2, 2, 5);
  CHECK_FALSE(verify_trace(a, tampered));
  auto reordered = good;
  std::swap(reordered.steps[0], reordered.steps[1]);
  CHECK_FALSE(verify_trace(a, reordered));
}

TEST_CASE("diagonalization over the corpus") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto a = family_random_tight(seed, 1 + seed % 6, seed % 3);
    const auto r = proudly_diagonalize(a, a.n_cols());
    REQUIRE(std::holds_alternative<DiagonalizationTrace>(r));
    const auto& t = std::get<DiagonalizationTrace>(r);
    CHECK(verify_trace(a, t));
    CHECK(is_proudly_diagonal(*t.final_checkpoint()));
    // Prefix stability: row j of every later checkpoint equals row j at step j.
    for (const auto& s : t.steps) {
      for (const auto& later : t.steps) {
        if (later.step < s.step) continue;
        for (Index j = 1; j <= s.step; ++j) CHECK(later.checkpoint.row(j) == s.checkpoint.row(j));
      }
    }
  }
}

TEST_CASE("partial diagonalization stops after k steps") {
  const auto a = family_random_tight(9, 5, 1);
  const auto r = proudly_diagonalize(a, 2);
  REQUIRE(std::holds_alternative<DiagonalizationTrace>(r));
  const auto& t = std::get<DiagonalizationTrace>(r);
  CHECK(t.steps.size() == 2);
  CHECK(verify_trace(a, t));
  CHECK(t.final_checkpoint()->row(1) == SparseVector{{1, 1}});
  CHECK(t.final_checkpoint()->row(2) == SparseVector{{2, 1}});
}

TEST_CASE("is_proudly_diagonal") {
  CHECK(is_proudly_diagonal(FiniteMatrix::identity(3)));
  CHECK(is_proudly_diagonal(dense({{2, 0}, {0, -1}})));
  CHECK_FALSE(is_proudly_diagonal(dense({{1, 1}, {0, 1}})));
  CHECK_FALSE(is_proudly_diagonal(dense({{1, 0}, {0, 0}})));
}
