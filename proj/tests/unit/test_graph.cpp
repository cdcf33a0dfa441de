#include <doctest.h>

#include <sstream>

#include "atc/errors.hpp"
#include "atc/graph.hpp"
#include "fixtures.hpp"

using namespace atc;

TEST_CASE("edge list parsing remaps ids and drops loops and duplicates") {
  std::istringstream in("# comment\n10 20\n20 10\n\n30\t10\n30 30\n");
  LoadStats stats;
  Graph g = parse_edge_list(in, &stats);
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_edges() == 2);
  CHECK(stats.duplicate_edges == 1);
  CHECK(stats.self_loops == 1);
  CHECK(g.external_id(0) == 10);
  CHECK(g.external_id(2) == 30);
  CHECK(g.internal_id(20) == VertexId{1});
  CHECK_FALSE(g.internal_id(15).has_value());
  CHECK(g.find_edge(0, 2).has_value());
  CHECK_FALSE(g.find_edge(1, 2).has_value());
  CHECK(g.degree(0) == 2);
}

TEST_CASE("edge list errors carry line numbers") {
  std::istringstream bad("1 2\n3 x\n");
  try {
    parse_edge_list(bad);
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream three("1 2 3\n");
  CHECK_THROWS_AS(parse_edge_list(three), InputError);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(parse_edge_list(empty), InputError);
}

TEST_CASE("attribute parsing merges lines and validates input") {
  std::istringstream edges("1 2\n2 3\n1 3\n");
  Graph g = parse_edge_list(edges);
  std::istringstream attrs("1\tDB\tDM\n2\tDB\n1\tML\n");
  Graph a = parse_attributes(attrs, g);
  CHECK(a.num_attributes() == 3);
  const auto db = *a.find_attribute("DB");
  CHECK(a.attribute_label(db) == "DB");
  CHECK(a.attributes(0).size() == 3);
  CHECK(a.holders(db).size() == 2);
  CHECK(a.has_attribute(1, db));
  CHECK_FALSE(a.has_attribute(2, db));
  CHECK(a.total_attribute_count() == 4);

  std::istringstream unknown("9\tDB\n");
  CHECK_THROWS_AS(parse_attributes(unknown, g), InputError);
  std::istringstream blank("1\t\tDB\n");
  CHECK_THROWS_AS(parse_attributes(blank, g), InputError);
  std::istringstream malformed("x\tDB\n");
  CHECK_THROWS_AS(parse_attributes(malformed, g), InputError);
}

TEST_CASE("edge list and attribute files round-trip") {
  std::mt19937_64 rng(3);
  auto edges = fixture::random_edges(rng, 15, 1, 3);
  auto attrs = fixture::random_attrs(rng, 15, 4, 1, 2);
  Graph g = fixture::make_graph(15, edges, attrs);
  std::ostringstream e, a;
  write_edge_list(e, g);
  write_attributes(a, g);
  std::istringstream ein(e.str()), ain(a.str());
  Graph h = parse_attributes(ain, parse_edge_list(ein));
  REQUIRE(h.num_edges() == g.num_edges());
  CHECK(std::equal(h.edges().begin(), h.edges().end(), g.edges().begin(),
                   [&](auto x, auto y) {
                     return h.external_id(x.first) == g.external_id(y.first) &&
                            h.external_id(x.second) == g.external_id(y.second);
                   }));
  CHECK(h.total_attribute_count() == g.total_attribute_count());
}

TEST_CASE("from_parts keeps isolated vertices") {
  Graph g = Graph::from_parts({5, 7, 9}, {{0, 1}});
  CHECK(g.num_vertices() == 3);
  CHECK(g.degree(2) == 0);
  CHECK_THROWS_AS(Graph::from_parts({7, 5}, {}), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_parts({1, 2}, {{0, 4}}), std::invalid_argument);
}
