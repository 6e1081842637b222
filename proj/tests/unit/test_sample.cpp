#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "doctest.h"

#include "cubelab/rng.hpp"
#include "cubelab/sample.hpp"

using namespace cubelab;

namespace {

std::string temp_path(const char* name) {
  return std::string("/tmp/cubelab_test_") + std::to_string(::getpid()) + "_" +
         name;
}

}  // namespace

TEST_CASE("p = 0 and p = 1 are the empty and full edge sets") {
  const Dimension dim(6);
  CHECK(sample(dim, 0.0, 5).retained_count() == 0);
  CHECK(sample(dim, 1.0, 5).retained_count() == dim.edge_count());
}

TEST_CASE("p outside [0, 1] is rejected") {
  const Dimension dim(4);
  CHECK_THROWS_AS(sample(dim, -0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample(dim, 1.1, 1), std::invalid_argument);
}

TEST_CASE("same seed reproduces, different seed differs") {
  const Dimension dim(8);
  const auto a = sample(dim, 0.3, 42);
  const auto b = sample(dim, 0.3, 42);
  const auto c = sample(dim, 0.3, 43);
  CHECK(a.edges == b.edges);
  CHECK(a.edges != c.edges);
}

TEST_CASE("edge count concentrates near m p") {
  const Dimension dim(14);  // m = 114688
  const double p = 0.25;
  const auto s = sample(dim, p, 7);
  const double m = double(dim.edge_count());
  const double dev = (double(s.retained_count()) - m * p) /
                     std::sqrt(m * p * (1 - p));
  CHECK(std::fabs(dev) < 4.0);  // 4 sigma on a pinned seed
}

TEST_CASE("has_edge agrees with the bitset through both endpoints") {
  const Dimension dim(5);
  const auto s = sample(dim, 0.5, 9);
  for (uint32_t v = 0; v < dim.vertex_count(); ++v) {
    for (uint32_t i = 0; i < dim.d(); ++i) {
      const uint32_t w = v ^ (1u << i);
      CHECK(s.has_edge(v, i) == s.has_edge(w, i));
      CHECK(s.has_edge(v, i) ==
            s.has_edge_id(edge_index(canonical_edge(v, i, dim), dim)));
    }
  }
}

TEST_CASE("residual probability composes exactly") {
  const double p = 0.4, q1 = 0.25;
  const double q2 = residual_probability(p, q1);
  CHECK((1 - q1) * (1 - q2) == doctest::Approx(1 - p).epsilon(1e-12));
  CHECK(residual_probability(0.3, 0.3) == doctest::Approx(0.0));
  CHECK_THROWS_AS(residual_probability(0.2, 0.3), std::invalid_argument);
}

TEST_CASE("sprinkle contains the base draw and composes the marginal") {
  const Dimension dim(10);
  const auto base = sample(dim, 0.1, 77);
  const auto grown = sprinkle(base, 0.15, round_seed(77, 1));
  CHECK(grown.edges.contains(base.edges));
  CHECK(grown.retained_count() >= base.retained_count());
  CHECK(grown.p == doctest::Approx(1 - 0.9 * 0.85).epsilon(1e-12));

  // a zero round is a no-op on the edge set
  const auto same = sprinkle(base, 0.0, round_seed(77, 2));
  CHECK(same.edges == base.edges);
}

TEST_CASE("sprinkled union matches a direct draw statistically") {
  const Dimension dim(12);
  const double p = 0.2;
  const double q1 = 0.08;
  const auto s1 = sample(dim, q1, 123);
  const auto s2 = sprinkle(s1, residual_probability(p, q1), round_seed(123, 1));
  const double m = double(dim.edge_count());
  const double dev =
      (double(s2.retained_count()) - m * p) / std::sqrt(m * p * (1 - p));
  CHECK(std::fabs(dev) < 4.0);
}

TEST_CASE("save and load round-trip bit for bit") {
  const Dimension dim(9);
  const auto s = sample(dim, 0.37, 2024);
  const std::string path = temp_path("roundtrip.bin");
  save_sample(s, path);
  const auto back = load_sample(path);
  CHECK(back.dim == s.dim);
  CHECK(back.p == s.p);
  CHECK(back.seed == s.seed);
  CHECK(back.edges == s.edges);
  std::remove(path.c_str());
}

TEST_CASE("load rejects a truncated file") {
  const Dimension dim(5);
  const auto s = sample(dim, 0.5, 3);
  const std::string path = temp_path("truncated.bin");
  save_sample(s, path);
  // chop the file short
  FILE* f = std::fopen(path.c_str(), "rb+");
  REQUIRE(f);
  REQUIRE(::ftruncate(fileno(f), 16) == 0);
  std::fclose(f);
  CHECK_THROWS_AS(load_sample(path), std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("sprinkle plan composes marginals") {
  SprinklePlan plan{{0.1, 0.1, 0.1}};
  CHECK(plan.composed_probability() ==
        doctest::Approx(1 - 0.9 * 0.9 * 0.9).epsilon(1e-12));
}
