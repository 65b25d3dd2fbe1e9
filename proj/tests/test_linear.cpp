#include <bondcat/linear.hpp>
#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace bondcat;

TEST_CASE("two by two elimination") {
  // x + y = 2, x - y = 0  =>  x = 1, y = 1
  auto sol = solve_affine<Rational>({{Rational(1), Rational(1)}, {Rational(1), Rational(-1)}},
                                    {Rational(2), Rational(0)}, 2);
  REQUIRE(sol);
  CHECK((*sol)[0] == Rational(1));
  CHECK((*sol)[1] == Rational(1));
}

TEST_CASE("contradictory row is infeasible") {
  auto sol = solve_affine<Rational>({{Rational(0)}}, {Rational(1)}, 1);
  CHECK(!sol);
}

TEST_CASE("empty system accepts the zero assignment") {
  auto sol = solve_affine<Rational>({}, {}, 3);
  REQUIRE(sol);
  for (const auto& x : *sol) CHECK(is_zero(x));
}

TEST_CASE("random consistent systems are solved exactly") {
  Gf::set_modulus(5);
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 1 + rng() % 6, m = 1 + rng() % 8;
    std::vector<std::vector<Gf>> rows(m, std::vector<Gf>(n));
    std::vector<Gf> x0(n), rhs(m, Gf(0));
    for (auto& x : x0) x = Gf(static_cast<long long>(rng() % 5));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        rows[i][j] = Gf(static_cast<long long>(rng() % 5));
        rhs[i] += rows[i][j] * x0[j];
      }
    auto sol = solve_affine<Gf>(rows, rhs, n);
    REQUIRE(sol);
    for (std::size_t i = 0; i < m; ++i) {
      Gf acc(0);
      for (std::size_t j = 0; j < n; ++j) acc += rows[i][j] * (*sol)[j];
      CHECK(acc == rhs[i]);
    }
  }
}

TEST_CASE("rational and GF(p) backends agree on feasibility") {
  // systems with small integer entries whose rational solutions have
  // denominators coprime to 5
  Gf::set_modulus(5);
  std::mt19937_64 rng(777);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 60; ++trial) {
    std::size_t n = 1 + rng() % 4, m = 1 + rng() % 5;
    std::vector<std::vector<Rational>> rq(m, std::vector<Rational>(n));
    std::vector<std::vector<Gf>> rg(m, std::vector<Gf>(n));
    std::vector<Rational> bq(m);
    std::vector<Gf> bg(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        long long v = static_cast<long long>(rng() % 7) - 3;
        rq[i][j] = Rational(v);
        rg[i][j] = Gf(v);
      }
      long long v = static_cast<long long>(rng() % 7) - 3;
      bq[i] = Rational(v);
      bg[i] = Gf(v);
    }
    auto sq = solve_affine<Rational>(rq, bq, n);
    auto sg = solve_affine<Gf>(rg, bg, n);
    if (sq) {
      bool coprime = true;
      for (const auto& x : *sq)
        if (denominator(x) % 5 == 0) coprime = false;
      if (!coprime) continue;  // reduction mod 5 may lose the solution
      CHECK(sg.has_value());
    } else {
      // an infeasible rational system can become feasible mod 5, but not on
      // these instances' certificates; just require: feasible mod p when the
      // rational one is (checked above).  Count only decided trials.
    }
    ++checked;
  }
  CHECK(checked >= 60);
}
