#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cubelab/components.hpp"
#include "cubelab/genus.hpp"
#include "cubelab/sample.hpp"
#include "doctest.h"

using namespace cubelab;

namespace {

PercolationSample sample_with_edges(uint32_t d, std::vector<uint64_t> ids) {
  Dimension dim(d);
  PercolationSample s{dim, 0.5, 0, Bitset(dim.edge_count())};
  for (uint64_t id : ids) s.edges.set(id);
  return s;
}

PercolationSample full_cube(uint32_t d) {
  Dimension dim(d);
  PercolationSample s{dim, 1.0, 0, Bitset(dim.edge_count())};
  for (uint64_t e = 0; e < dim.edge_count(); ++e) s.edges.set(e);
  return s;
}

uint64_t eid(uint32_t v, uint32_t dir, uint32_t d) {
  Dimension dim(d);
  return edge_index(canonical_edge(v, dir, dim), dim);
}

}  // namespace

TEST_CASE("genus bound on the full 4-cube: sound against genus 1") {
  auto s = full_cube(4);
  auto g = genus_lower_bound(s, 0, 4);
  CHECK(g.vertices == 16);
  CHECK(g.edges == 32);
  CHECK(g.excess == 16);
  CHECK(g.threshold == 4);
  CHECK(g.short_cycle_count == 24);
  CHECK(g.long_face_bound == doctest::Approx(16.0));
  CHECK(g.face_bound == doctest::Approx(64.0));
  CHECK(g.kappa == 1);
  // the squares swamp the excess; the clamp holds the bound at zero,
  // comfortably below the true genus of 1
  CHECK(g.lower_bound == 0);

  auto deep = genus_lower_bound(s, 0, 12);
  CHECK(deep.lower_bound <= 1);
}

TEST_CASE("genus bound on the full 6-cube: sound against genus 17") {
  auto s = full_cube(6);
  auto g = genus_lower_bound(s, 0, 6);
  CHECK(g.vertices == 64);
  CHECK(g.edges == 192);
  CHECK(g.excess == 128);
  // (d - 4) * 2^(d-3) + 1 = 17 at d = 6; the bound must stay under it
  CHECK(g.lower_bound <= 17);
  CHECK(g.lower_bound >= 0);
}

TEST_CASE("genus bound is zero on trees and isolated vertices") {
  // star at 0 plus a pendant path: acyclic component
  auto star = sample_with_edges(3, {eid(0, 0, 3), eid(0, 1, 3), eid(0, 2, 3),
                                    eid(4, 1, 3)});
  auto g = genus_lower_bound(star, 0, 4);
  CHECK(g.vertices == 5);
  CHECK(g.edges == 4);
  CHECK(g.excess == -1);
  CHECK(g.lower_bound == 0);
  // the face floor of 1 keeps acyclic components at zero even when the
  // long-face term drops below one
  auto deep = genus_lower_bound(star, 0, 12);
  CHECK(deep.lower_bound == 0);

  auto lone = genus_lower_bound(star, 7, 4);  // isolated vertex 7
  CHECK(lone.vertices == 1);
  CHECK(lone.edges == 0);
  CHECK(lone.lower_bound == 0);
}

TEST_CASE("genus bound is zero on a lone square, with exact face terms") {
  auto square = sample_with_edges(3, {eid(0, 0, 3), eid(0, 1, 3),
                                      eid(1, 1, 3), eid(2, 0, 3)});
  auto g = genus_lower_bound(square, 0, 4);
  CHECK(g.vertices == 4);
  CHECK(g.edges == 4);
  CHECK(g.excess == 0);
  CHECK(g.short_cycle_count == 1);
  CHECK(g.long_face_bound == doctest::Approx(2.0));
  CHECK(g.face_bound == doctest::Approx(4.0));
  CHECK(g.lower_bound == 0);

  // hang a pendant edge off the square: excess unchanged, faces 4.5
  auto pendant = sample_with_edges(3, {eid(0, 0, 3), eid(0, 1, 3),
                                       eid(1, 1, 3), eid(2, 0, 3),
                                       eid(2, 2, 3)});
  auto h = genus_lower_bound(pendant, 0, 4);
  CHECK(h.vertices == 5);
  CHECK(h.edges == 5);
  CHECK(h.face_bound == doctest::Approx(4.5));
  CHECK(h.lower_bound == 0);
}

TEST_CASE("whole-sample genus bound counts all components") {
  // two disjoint squares at d = 4, plus 8 isolated vertices
  auto s = sample_with_edges(4, {eid(0, 0, 4), eid(0, 1, 4), eid(1, 1, 4),
                                 eid(2, 0, 4), eid(12, 0, 4), eid(12, 1, 4),
                                 eid(13, 1, 4), eid(14, 0, 4)});
  auto g = genus_lower_bound_multi(s, 4);
  CHECK(g.vertices == 16);
  CHECK(g.edges == 8);
  CHECK(g.excess == -8);
  CHECK(g.kappa == 10);
  CHECK(g.short_cycle_count == 2);
  CHECK(g.face_bound == doctest::Approx(8.0));
  CHECK(g.lower_bound == 0);

  auto full = genus_lower_bound_multi(full_cube(3), 4);
  CHECK(full.kappa == 1);
  CHECK(full.lower_bound == 0);
}

TEST_CASE("genus bound guards: threshold window and unknown representative") {
  auto s = full_cube(3);
  CHECK_THROWS_AS(genus_lower_bound(s, 0, 3), std::invalid_argument);
  CHECK_THROWS_AS(genus_lower_bound(s, 0, 5), std::invalid_argument);
  CHECK_THROWS_AS(genus_lower_bound(s, 0, 14), std::invalid_argument);
  CHECK_THROWS_AS(genus_lower_bound_multi(s, 2), std::invalid_argument);
  // vertex 1 is in the cube but is not a component representative
  CHECK_THROWS_AS(genus_lower_bound(s, 1, 4), std::invalid_argument);
}

TEST_CASE("default face threshold stays at 4 for desk dimensions") {
  CHECK(default_face_threshold(Dimension(4)) == 4);
  CHECK(default_face_threshold(Dimension(8)) == 4);
  CHECK(default_face_threshold(Dimension(16)) == 4);
  CHECK(default_face_threshold(Dimension(20)) == 4);
}

TEST_CASE("excess experiment: shape, echo, determinism") {
  auto a = excess_experiment(8, 1.0, 10, 5);
  CHECK(a.d == 8);
  CHECK(a.epsilon == 1.0);
  CHECK(a.trials == 10);
  CHECK(a.seed == 5);
  CHECK(a.fractions.size() == 10);
  CHECK(a.summary.min <= a.summary.mean);
  CHECK(a.summary.mean <= a.summary.max);

  auto b = excess_experiment(8, 1.0, 10, 5);
  CHECK(a.fractions == b.fractions);

  // supercritical excess is positive in the mean at epsilon = 1
  CHECK(a.summary.mean > 0.0);

  // subcritical largest components are nearly trees
  auto sub = excess_experiment(8, -0.5, 5, 9);
  CHECK(sub.summary.mean < 0.005);
}

TEST_CASE("excess experiment rejects out-of-range parameters") {
  CHECK_THROWS_AS(excess_experiment(8, 1.0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(excess_experiment(2, 1.5, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(excess_experiment(8, -2.0, 3, 1), std::invalid_argument);
}
