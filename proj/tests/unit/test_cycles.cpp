#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubelab/components.hpp"
#include "cubelab/cycles.hpp"
#include "cubelab/sample.hpp"
#include "cubelab/tree_decomp.hpp"
#include "cycle_oracle.hpp"
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

// the face spanned by directions 0 and 1 through vertex 0
PercolationSample one_square(uint32_t d) {
  return sample_with_edges(d, {eid(0, 0, d), eid(0, 1, d), eid(1, 1, d),
                               eid(2, 0, d)});
}

}  // namespace

TEST_CASE("check_cycle accepts a genuine square and rejects corruptions") {
  auto s = one_square(3);
  CHECK_NOTHROW(check_cycle({{0, 1, 3, 2}}, s));
  CHECK_NOTHROW(check_cycle({{3, 2, 0, 1}}, s));  // rotation is immaterial

  CHECK_THROWS_AS(check_cycle({{0, 1, 3}}, s), std::invalid_argument);
  CHECK_THROWS_AS(check_cycle({{0, 1, 3, 1}}, s), std::invalid_argument);
  CHECK_THROWS_AS(check_cycle({{0, 1, 3, 7}}, s), std::invalid_argument);
  CHECK_THROWS_AS(check_cycle({{0, 1, 3, 8}}, s), std::out_of_range);
  // host square whose edges are not all retained
  CHECK_THROWS_AS(check_cycle({{0, 1, 5, 4}}, s), std::invalid_argument);
  // wrap edge 2-0 must be retained too: drop it and recheck
  auto broken = sample_with_edges(3, {eid(0, 0, 3), eid(0, 1, 3), eid(1, 1, 3)});
  CHECK_THROWS_AS(check_cycle({{0, 1, 3, 2}}, broken), std::invalid_argument);
}

TEST_CASE("census on the full 3-cube: 6 squares, 16 hexagons, 6 octagons") {
  auto s = full_cube(3);
  auto census = census_short_cycles(s, 8);
  CHECK(census.counts[4] == 6);
  CHECK(census.counts[6] == 16);
  CHECK(census.counts[8] == 6);  // its Hamiltonian cycles
  CHECK(census.total() == 28);
  CHECK(census.total_up_to(6) == 22);
  for (uint32_t odd : {5u, 7u}) CHECK(census.counts[odd] == 0);

  auto oracle = cubelab_testing::census_by_edge_subsets(s, 8);
  CHECK(oracle.counts == census.counts);
}

TEST_CASE("census equals the edge-subset enumerator on random samples") {
  for (uint64_t seed : {1, 2, 3, 4, 5}) {
    auto s = sample(Dimension(3), 0.6, seed);
    auto walker = census_short_cycles(s, 8);
    auto oracle = cubelab_testing::census_by_edge_subsets(s, 8);
    CHECK(walker.counts == oracle.counts);
  }
  for (uint64_t seed : {7, 8, 9}) {
    auto s = sample(Dimension(4), 0.4, seed);
    auto walker = census_short_cycles(s, 8);
    auto oracle = cubelab_testing::census_by_edge_subsets(s, 8);
    CHECK(walker.counts == oracle.counts);
  }
}

TEST_CASE("census respects an induced-subgraph filter") {
  auto s = full_cube(3);
  Bitset face(8);
  for (uint32_t v : {0, 1, 2, 3}) face.set(v);
  auto census = census_short_cycles(s, 8, face);
  CHECK(census.counts[4] == 1);
  CHECK(census.total() == 1);
}

TEST_CASE("census guards its length window") {
  auto s = full_cube(3);
  CHECK_THROWS_AS(census_short_cycles(s, 3), std::invalid_argument);
  CHECK_THROWS_AS(census_short_cycles(s, 14), std::invalid_argument);
}

TEST_CASE("host cycle counts match a census of the complete sample") {
  CHECK(host_four_cycles(Dimension(2)) == 1);
  CHECK(host_four_cycles(Dimension(3)) == 6);
  CHECK(host_four_cycles(Dimension(4)) == 24);
  CHECK(host_four_cycles(Dimension(5)) == 80);
  for (uint32_t d = 2; d <= 5; ++d) {
    auto census = census_short_cycles(full_cube(d), 4);
    CHECK(census.counts[4] == host_four_cycles(Dimension(d)));
  }
  CHECK(host_six_cycles(Dimension(3)) == 16);
  CHECK(host_six_cycles(Dimension(4)) == 128);
  auto c4 = census_short_cycles(full_cube(4), 6);
  CHECK(c4.counts[6] == host_six_cycles(Dimension(4)));
}

TEST_CASE("long_cycle_search on the full 3-cube") {
  auto s = full_cube(3);
  auto best = long_cycle_search(s, 10);
  REQUIRE(best.has_value());
  CHECK(best->length() >= 6);
  CHECK_NOTHROW(check_cycle(*best, s));
}

TEST_CASE("long_cycle_search: acyclic samples yield nothing") {
  // a star at vertex 0 plus a hanging path: connected, zero cycles
  auto s = sample_with_edges(3, {eid(0, 0, 3), eid(0, 1, 3), eid(0, 2, 3),
                                 eid(4, 1, 3)});
  CHECK_FALSE(long_cycle_search(s, 20).has_value());
}

TEST_CASE("long_cycle_search: a lone square is found exactly") {
  auto s = one_square(4);
  auto best = long_cycle_search(s, 5);
  REQUIRE(best.has_value());
  CHECK(best->length() == 4);
  CHECK_NOTHROW(check_cycle(*best, s));
}

TEST_CASE("long_cycle_search is deterministic for a fixed seed") {
  auto s = sample(Dimension(8), 1.8 / 8.0, 44);
  auto a = long_cycle_search(s, 6, 17);
  auto b = long_cycle_search(s, 6, 17);
  REQUIRE(a.has_value() == b.has_value());
  if (a) CHECK(a->vertices == b->vertices);
}

TEST_CASE("validate_minor: pass and every failure mode is named") {
  auto s = full_cube(2);
  MinorCertificate ok{2, {{0}, {1}}};
  CHECK(validate_minor(ok, s).pass);
  CHECK(validate_minor(ok, s).violation.empty());

  auto fail = [&](MinorCertificate cert, const PercolationSample& smp) {
    auto v = validate_minor(cert, smp);
    CHECK_FALSE(v.pass);
    CHECK_FALSE(v.violation.empty());
    return v.violation;
  };

  CHECK(fail({3, {{0}, {1}}}, s).find("branch sets") != std::string::npos);
  fail({0, {}}, s);
  fail({2, {{0}, {}}}, s);                       // empty set
  fail({2, {{0}, {9}}}, s);                      // out of range
  fail({2, {{0, 1}, {1}}}, s);                   // overlap
  fail({2, {{0, 0}, {1}}}, s);                   // repeat
  fail({2, {{0}, {3}}}, s);                      // 0-3 is no host edge
  // {0,3} induces no retained edge: not connected in the sample
  auto chain = sample_with_edges(2, {0, 1});     // edges 00-01 and 00-10
  fail({2, {{0, 3}, {1}}}, chain);
  // adjacency must use retained edges; host adjacency is not enough
  fail({2, {{0}, {1}}}, sample_with_edges(2, {1}));
}

TEST_CASE("build_minor: fallbacks on degenerate samples") {
  auto edgeless = sample(Dimension(3), 0.0, 1);
  auto k1 = build_minor(edgeless, {}, 0);
  CHECK(k1.t == 1);
  CHECK(k1.branch_sets == std::vector<std::vector<uint32_t>>{{0}});
  CHECK(validate_minor(k1, edgeless).pass);

  auto one_edge = sample_with_edges(3, {eid(0, 1, 3)});
  auto k2 = build_minor(one_edge, {}, 0);
  CHECK(k2.t == 2);
  CHECK(validate_minor(k2, one_edge).pass);
}

TEST_CASE("build_minor: dominoes of the full 3-cube assemble a K4") {
  auto s = full_cube(3);
  std::vector<PieceDecomposition> pieces(1);
  pieces[0].pieces = {{0, 1}, {2, 3}, {4, 6}, {5, 7}};
  auto cert = build_minor(s, pieces, 4);
  CHECK(cert.t == 4);
  CHECK(validate_minor(cert, s).pass);
}

TEST_CASE("build_minor: supercritical sample with covered pieces") {
  auto s = sample(Dimension(8), 1.5 / 8.0, 3);
  auto cover = piece_cover(s, 16, 4);
  auto cert = build_minor(s, cover, 3);
  CHECK(cert.t >= 2);
  CHECK(validate_minor(cert, s).pass);
}

TEST_CASE("default_minor_target stays at the floor for desk dimensions") {
  CHECK(default_minor_target(Dimension(4)) == 2);
  CHECK(default_minor_target(Dimension(16)) == 2);
}

TEST_CASE("separator_refutation: degenerate and supercritical reports") {
  auto empty = sample(Dimension(4), 0.0, 1);
  auto rep = separator_refutation(empty, 3, 4);
  CHECK(rep.largest_component == 1);
  CHECK(rep.min_vertex_boundary == 0);
  CHECK(rep.implied_t == 0);

  auto s = sample(Dimension(8), 2.0 / 8.0, 11);
  auto r = separator_refutation(s, 3, 4);
  CHECK(r.requested_t == 3);
  CHECK(r.runs == 4);
  CHECK(r.largest_component == label_components(s).largest().size);
  CHECK(r.min_vertex_boundary > 0);
  CHECK(r.constant_c == 1.0);
  CHECK(r.implied_t ==
        doctest::Approx(double(r.min_vertex_boundary) / 16.0));  // sqrt(256)
}

TEST_CASE("certificate JSON round-trips") {
  CycleCertificate cyc{{0, 1, 3, 2}};
  auto text = cycle_to_json(cyc);
  CHECK(text.find("\"kind\":\"cycle\"") != std::string::npos);
  CHECK(text.find("\"length\":4") != std::string::npos);
  CHECK(cycle_from_json(text).vertices == cyc.vertices);

  MinorCertificate minor{2, {{0, 1}, {2}}};
  auto mtext = minor_to_json(minor);
  CHECK(mtext.find("\"kind\":\"minor\"") != std::string::npos);
  auto back = minor_from_json(mtext);
  CHECK(back.t == 2);
  CHECK(back.branch_sets == minor.branch_sets);
}

TEST_CASE("certificate JSON rejects malformed input") {
  CHECK_THROWS_AS(cycle_from_json("{}"), std::invalid_argument);
  CHECK_THROWS_AS(cycle_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(cycle_from_json(minor_to_json({1, {{0}}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(minor_from_json(cycle_to_json({{0, 1, 3, 2}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(minor_from_json("{\"kind\":\"minor\",\"t\":1}"),
                  std::invalid_argument);
}
