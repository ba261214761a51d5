#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "sobtrace/divdiff.hpp"
#include "sobtrace/errors.hpp"
#include "support.hpp"

using namespace sobtrace;

TEST_CASE("squares on [0,1,3]") {
  const auto t = divided_differences(make_nodes({0, 1, 3}), std::vector<double>{0, 1, 9}, 2);
  CHECK(t.order() == 2);
  CHECK(t.row(1).size() == 2);
  CHECK(t.at(1, 0) == 1);
  CHECK(t.at(1, 1) == 4);
  CHECK(t.at(2, 0) == 1);
}

TEST_CASE("constants are annihilated") {
  const auto x = make_nodes({0, 0.5, 2, 2.25, 7});
  const auto t = divided_differences(x, std::vector<double>(5, -3.5), 4);
  for (std::size_t k = 1; k <= 4; ++k) {
    for (double e : t.row(k)) CHECK(e == 0.0);
  }
  for (std::size_t n = 0; n < 5; ++n) CHECK(t.at(0, n) == -3.5);
}

TEST_CASE("hat data has second difference -1") {
  const auto t = divided_differences(make_nodes({0, 1, 2}), std::vector<double>{0, 1, 0}, 2);
  CHECK(t.at(2, 0) == -1);
}

TEST_CASE("errors") {
  const auto x = make_nodes({0, 1, 2});
  CHECK_THROWS_AS(divided_differences(x, std::vector<double>{0, 1}, 1), ValidationError);
  CHECK_THROWS_AS(divided_differences(x, std::vector<double>{0, 1, 2}, 3), ValidationError);
  CHECK_THROWS_AS(divided_difference(std::vector<double>{0, 0}, std::vector<double>{1, 2}), ValidationError);
}

// Order-d differences of a degree-d polynomial equal its leading coefficient.
TEST_CASE("polynomial exactness") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coef(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = trial % 4;
    std::vector<double> c(d + 1);
    for (auto& v : c) v = coef(rng);
    const auto x = testing::random_nodes(rng, 8, 0.3, 1.2, -2.0);
    std::vector<double> f;
    for (double t : x) {
      double y = 0.0;
      for (std::size_t k = d + 1; k-- > 0;) y = y * t + c[k];
      f.push_back(y);
    }
    const auto table = divided_differences(make_nodes(x), f, 7);
    for (double e : table.row(d)) CHECK(e == doctest::Approx(c[d]).epsilon(1e-9).scale(1.0));
    for (std::size_t k = d + 1; k <= 7; ++k) {
      for (double e : table.row(k)) CHECK(std::abs(e) <= 1e-9);
    }
  }
}

TEST_CASE("shuffling and re-sorting leaves the table unchanged") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t count = 2 + trial % 4;
    const auto x = testing::random_nodes(rng, count, 0.1, 1.0);
    const auto f = testing::random_values(rng, count);
    const auto ref = divided_differences(make_nodes(x), f, count - 1);

    std::vector<std::size_t> perm(count);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::pair<double, double>> pairs;
    for (auto i : perm) pairs.emplace_back(x[i], f[i]);
    std::vector<double> xs, fs;
    for (const auto& [a, b] : pairs) {
      xs.push_back(a);
      fs.push_back(b);
    }
    // the unsorted evaluation agrees up to rounding
    CHECK(divided_difference(xs, fs) == doctest::Approx(ref.at(count - 1, 0)).epsilon(1e-10).scale(1.0));

    std::sort(pairs.begin(), pairs.end());
    xs.clear();
    fs.clear();
    for (const auto& [a, b] : pairs) {
      xs.push_back(a);
      fs.push_back(b);
    }
    const auto again = divided_differences(make_nodes(xs), fs, count - 1);
    for (std::size_t k = 0; k < count; ++k) {
      for (std::size_t n = 0; n + k < count; ++n) CHECK(again.at(k, n) == ref.at(k, n));
    }
  }
}

TEST_CASE("single difference matches the table") {
  const std::vector<double> x{0, 1, 3, 4};
  const std::vector<double> f{1, -2, 0.5, 3};
  const auto t = divided_differences(make_nodes(x), f, 3);
  CHECK(divided_difference(std::span(x).subspan(1, 3), std::span(f).subspan(1, 3)) ==
        doctest::Approx(t.at(2, 1)));
  CHECK(divided_difference(x, f) == doctest::Approx(t.at(3, 0)));
}
